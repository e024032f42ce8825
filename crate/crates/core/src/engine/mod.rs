//! Fixed-point profiles, cell certificates and equality verdicts.

mod cells;
mod formulas;
mod model;
mod profile;
mod raise;
mod transfer;
mod verdict;

pub use cells::{
    cell_certificate, cell_containment, cell_membership_polys, chart_basis, generic_unipotent, slice_basis,
    specialized_conjugate, unipotent_basis, verify_cell_certificate, CellCertificate, CellOptions, CellStatus, Chart,
    MembershipSystem,
};
pub use formulas::{
    codim1_component_fixed_points, euler_profile_count, extratau, hw_adjoint, q_factorial, q_int, s_i_w0,
    schubert_poincare, Codim1Split, HighestWeightResult, QPoly,
};
pub use model::{weyl_group, HessenbergModel};
pub use profile::{fixed_point_in, fixed_point_profile};
pub use raise::{type_a_raise, type_c_raise, verify_raise, Factor, RaiseWitness};
pub use transfer::{prop68_certificates, prop68_transfer, TransferCertificate};
pub use verdict::{equality_verdict, EqualityVerdict, NotEqualReason, Verdict};
