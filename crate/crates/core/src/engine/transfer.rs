use super::cells::{cell_containment, CellCertificate, CellOptions, CellStatus};
use super::model::HessenbergModel;
use crate::error::{Error, Result};
use crate::hessenberg::lift_c_to_a;
use crate::roots::System;
use crate::weyl::Permutation;

/// The type C containment and the type A containment it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferCertificate {
    pub hypothesis: CellCertificate,
    pub conclusion: CellCertificate,
}

impl TransferCertificate {
    pub fn holds(&self) -> bool {
        self.conclusion.status == CellStatus::Contained
    }
}

/// Given `B_C ẇ B_C ⊆ B_C(x, H_C)`, checks `B ẇ B ⊆ B(x, lift(H_C))` in `SL_{2n}`.
pub fn prop68_certificates(m: &HessenbergModel, w: &Permutation, opts: &CellOptions) -> Result<TransferCertificate> {
    if m.system() != System::C {
        return Err(Error::Precondition("transfer starts from a type C model".into()));
    }
    if !w.is_signed()? {
        return Err(Error::NotSigned(w.to_string()));
    }
    let hypothesis = cell_containment(w, m, opts)?;
    if hypothesis.status != CellStatus::Contained {
        return Err(Error::Precondition(format!("type C cell of {w} is not certified CONTAINED")));
    }
    let lifted = HessenbergModel::new(m.x.clone(), lift_c_to_a(&m.h)?)?;
    let conclusion = cell_containment(w, &lifted, opts)?;
    Ok(TransferCertificate { hypothesis, conclusion })
}

pub fn prop68_transfer(m: &HessenbergModel, w: &Permutation, opts: &CellOptions) -> Result<bool> {
    Ok(prop68_certificates(m, w, opts)?.holds())
}
