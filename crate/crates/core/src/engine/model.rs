use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hessenberg::HessenbergSpace;
use crate::linalg::{is_sigma_fixed, q, Rational, RationalMatrix};
use crate::roots::System;
use crate::weyl::{all_permutations, signed_permutations, Permutation};

/// An element `x` of the ambient algebra together with a Hessenberg space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelJson")]
pub struct HessenbergModel {
    pub x: RationalMatrix,
    #[serde(rename = "H")]
    pub h: HessenbergSpace,
}

#[derive(Deserialize)]
struct ModelJson {
    x: RationalMatrix,
    #[serde(rename = "H")]
    h: HessenbergSpace,
}

impl TryFrom<ModelJson> for HessenbergModel {
    type Error = Error;

    fn try_from(j: ModelJson) -> Result<Self> {
        HessenbergModel::new(j.x, j.h)
    }
}

impl HessenbergModel {
    /// Requires `tr x = 0` in type A and `σ(x) = x` in type C.
    pub fn new(x: RationalMatrix, h: HessenbergSpace) -> Result<Self> {
        let m = h.matrix_size();
        if x.rank() != m {
            return Err(Error::SizeMismatch(x.rank(), m));
        }
        match h.system {
            System::A => {
                if x.trace() != q(0) {
                    return Err(Error::Precondition("x must be trace zero".into()));
                }
            }
            System::C => {
                if !is_sigma_fixed(&x)? {
                    return Err(Error::Precondition("x must be sigma-fixed".into()));
                }
            }
        }
        if let Some(w) = h.validate().witness {
            return Err(Error::InvalidSpace(format!("[{}, {}] is not in H", w.generator, w.vector)));
        }
        Ok(HessenbergModel { x, h })
    }

    /// Type A only: replaces `x` by its traceless part `x − (tr x / n) I`,
    /// which has the same Hessenberg variety.
    pub fn projected(x: RationalMatrix, h: HessenbergSpace) -> Result<Self> {
        if h.system != System::A {
            return Err(Error::Precondition("projection applies to type A".into()));
        }
        let n = x.rank();
        let shift: Rational = x.trace() / q(n as i64);
        let x0 = x.sub(&RationalMatrix::identity(n).scale(&shift))?;
        Self::new(x0, h)
    }

    pub fn system(&self) -> System {
        self.h.system
    }

    pub fn rank(&self) -> usize {
        self.h.rank
    }

    pub fn matrix_size(&self) -> usize {
        self.h.matrix_size()
    }

    /// The Weyl group: `S_n` in type A, signed permutations of `[2n]` in type C.
    pub fn weyl_group(&self) -> Vec<Permutation> {
        weyl_group(self.system(), self.rank())
    }
}

pub fn weyl_group(system: System, rank: usize) -> Vec<Permutation> {
    match system {
        System::A => all_permutations(rank).collect(),
        System::C => signed_permutations(rank).into_iter().map(|w| w.into_permutation()).collect(),
    }
}
