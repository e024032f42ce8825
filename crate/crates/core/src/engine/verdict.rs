use std::collections::BTreeSet;

use rayon::prelude::*;

use super::cells::{cell_certificate, cell_containment, CellCertificate, CellOptions, CellStatus};
use super::model::HessenbergModel;
use super::profile::fixed_point_profile;
use crate::error::{Error, Result};
use crate::roots::System;
use crate::weyl::{bruhat_leq_windows, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotEqualReason {
    /// Fixed points of `X_w` are `[e, w]`; these differ from the profile.
    ProfileMismatch { missing: Vec<Permutation>, extra: Vec<Permutation> },
    /// A cell `C_v` with `v <= w` has a point outside `B(x, H)`.
    NotContained { v: Permutation },
    /// A cell `C_v` with `v ≰ w` meets `B(x, H)`.
    Meets { v: Permutation },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual(NotEqualReason),
    Indeterminate(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Equal => "EQUAL",
            Verdict::NotEqual(_) => "NOT_EQUAL",
            Verdict::Indeterminate(_) => "INDETERMINATE",
        }
    }

    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityVerdict {
    pub target: Permutation,
    pub system: System,
    pub verdict: Verdict,
    pub profile: BTreeSet<Permutation>,
    pub certificates: Vec<CellCertificate>,
}

/// Decides `B(x, H) = X_w`: profile pre-screen, CONTAINED for every `v <= w`,
/// DISJOINT for every other `v`.
pub fn equality_verdict(m: &HessenbergModel, w: &Permutation, opts: &CellOptions) -> Result<EqualityVerdict> {
    let group = m.weyl_group();
    if w.size() != m.matrix_size() {
        return Err(Error::SizeMismatch(w.size(), m.matrix_size()));
    }
    if m.system() == System::C && !w.is_signed()? {
        return Err(Error::NotSigned(w.to_string()));
    }
    let profile = fixed_point_profile(m);
    let (below, above): (Vec<Permutation>, Vec<Permutation>) =
        group.into_iter().partition(|v| bruhat_leq_windows(v.window(), w.window()));
    let interval: BTreeSet<Permutation> = below.iter().cloned().collect();
    let mut out = EqualityVerdict {
        target: w.clone(),
        system: m.system(),
        verdict: Verdict::Equal,
        profile: profile.clone(),
        certificates: Vec::new(),
    };
    if interval != profile {
        out.verdict = Verdict::NotEqual(NotEqualReason::ProfileMismatch {
            missing: interval.difference(&profile).cloned().collect(),
            extra: profile.difference(&interval).cloned().collect(),
        });
        return Ok(out);
    }

    let contained: Vec<CellCertificate> = below
        .par_iter()
        .map(|v| cell_containment(v, m, opts))
        .collect::<Result<Vec<_>>>()?;
    let failed = contained.iter().find(|c| c.status != CellStatus::Contained).map(|c| c.v.clone());
    out.certificates = contained;
    if let Some(v) = failed {
        out.verdict = Verdict::NotEqual(NotEqualReason::NotContained { v });
        return Ok(out);
    }

    let outside: Vec<CellCertificate> = above
        .par_iter()
        .map(|v| cell_certificate(v, m, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut indeterminate = None;
    let mut meets = None;
    for c in &outside {
        match &c.status {
            CellStatus::Disjoint => {}
            CellStatus::Indeterminate { reason } => {
                indeterminate.get_or_insert_with(|| format!("cell {}: {reason}", c.v));
            }
            _ => {
                meets.get_or_insert_with(|| c.v.clone());
            }
        }
    }
    out.certificates.extend(outside);
    out.verdict = match (meets, indeterminate) {
        (Some(v), _) => Verdict::NotEqual(NotEqualReason::Meets { v }),
        (None, Some(r)) => Verdict::Indeterminate(r),
        (None, None) => Verdict::Equal,
    };
    Ok(out)
}
