use std::collections::BTreeSet;

use rayon::prelude::*;

use super::model::HessenbergModel;
use crate::linalg::rep_matrix;
use crate::weyl::Permutation;

/// Whether `Ad(ẇ^{-1}) x ∈ H`, i.e. the fixed point `ẇB` lies in `B(x, H)`.
pub fn fixed_point_in(m: &HessenbergModel, w: &Permutation) -> bool {
    let rep = rep_matrix(w, m.system()).expect("Weyl group element");
    m.h.contains(&rep.conjugate_inverse(&m.x))
}

/// `{w ∈ W : Ad(ẇ^{-1}) x ∈ H}`.
pub fn fixed_point_profile(m: &HessenbergModel) -> BTreeSet<Permutation> {
    m.weyl_group()
        .into_par_iter()
        .filter(|w| fixed_point_in(m, w))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}
