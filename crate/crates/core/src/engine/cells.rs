//! Symbolic cell membership: with `u` a generic element of the unipotent
//! radical, `C_v ⊆ B(x, H)` iff the coordinates of `(u v̇)^{-1} x (u v̇)`
//! off `H` vanish identically, and `C_v ∩ B(x, H) = ∅` iff they have no
//! common complex zero.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::model::HessenbergModel;
use crate::error::{Error, Result};
use crate::hessenberg::root_vector;
use crate::linalg::{q, rep_matrix, Rational, RationalMatrix};
use crate::poly::{
    groebner, groebner_with_cofactors, nilpotent_exp, unipotent_inverse, var_names, Budget,
    GroebnerCertificate, MultiPoly, PolyMatrix,
};
use crate::roots::{all_roots, Root, System};
use crate::weyl::Permutation;

/// Which parametrization of the cell `C_v = U v̇ B / B` to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// All of `U`; redundant parameters, no slice bookkeeping.
    #[default]
    FullRadical,
    /// `U_v = U ∩ v̇ U^- v̇^{-1}`, one parameter per inversion of `v`.
    Slice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellOptions {
    pub chart: Chart,
    pub budget: Budget,
    pub cofactors: bool,
    pub seed: u64,
}

impl Default for CellOptions {
    fn default() -> Self {
        CellOptions { chart: Chart::FullRadical, budget: Budget::default(), cofactors: true, seed: 0 }
    }
}

/// Membership polynomials of one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipSystem {
    pub vars: Arc<[String]>,
    /// Unipotent directions, one per variable.
    pub directions: Vec<RationalMatrix>,
    pub labels: Vec<String>,
    pub polys: Vec<MultiPoly>,
}

impl MembershipSystem {
    pub fn all_zero(&self) -> bool {
        self.polys.iter().all(MultiPoly::is_zero)
    }

    pub fn nonzero(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = Vec::new();
        for p in &self.polys {
            if p.is_zero() {
                continue;
            }
            let monic = p.monic();
            if !out.contains(&monic) {
                out.push(monic);
            }
        }
        out
    }
}

fn positive_class_roots(system: System, rank: usize) -> Vec<Root> {
    all_roots(system, rank).into_iter().filter(Root::is_positive).collect()
}

fn var_name(r: &Root) -> String {
    format!("t{}_{}", r.i, r.j)
}

/// Root vectors spanning the nilradical: `E_ij` (type A) or `σ̄(E_ij)`.
pub fn unipotent_basis(system: System, rank: usize) -> Vec<(String, RationalMatrix)> {
    positive_class_roots(system, rank)
        .iter()
        .map(|r| (var_name(r), root_vector(r)))
        .collect()
}

/// The directions of `U_v`: positive roots `(i, j)` with `v^{-1}(i) > v^{-1}(j)`.
pub fn slice_basis(system: System, rank: usize, v: &Permutation) -> Vec<(String, RationalMatrix)> {
    let vinv = v.inverse();
    positive_class_roots(system, rank)
        .iter()
        .filter(|r| vinv.apply(r.i) > vinv.apply(r.j))
        .map(|r| (var_name(r), root_vector(r)))
        .collect()
}

pub fn chart_basis(chart: Chart, system: System, rank: usize, v: &Permutation) -> Vec<(String, RationalMatrix)> {
    match chart {
        Chart::FullRadical => unipotent_basis(system, rank),
        Chart::Slice => slice_basis(system, rank, v),
    }
}

/// The generic unipotent element: `I + Σ t_g g` in type A, `exp(Σ t_g g)` in type C.
pub fn generic_unipotent(system: System, vars: &Arc<[String]>, basis: &[RationalMatrix], m: usize) -> Result<PolyMatrix> {
    for b in basis {
        if b.rank() != m || !b.is_strictly_upper() {
            return Err(Error::NotUnipotent);
        }
    }
    let nil = PolyMatrix::linear_combination(m, vars.clone(), basis)?;
    match system {
        System::A => Ok(PolyMatrix::identity(m, vars.clone()).add(&nil)),
        System::C => nilpotent_exp(&nil),
    }
}

/// Coordinates of `(u v̇)^{-1} x (u v̇)` along a complement of `H`.
pub fn cell_membership_polys(
    v: &Permutation,
    m: &HessenbergModel,
    unipotent: &[(String, RationalMatrix)],
) -> Result<MembershipSystem> {
    let size = m.matrix_size();
    if v.size() != size {
        return Err(Error::SizeMismatch(v.size(), size));
    }
    let vars = var_names(unipotent.iter().map(|(s, _)| s.clone()));
    let directions: Vec<RationalMatrix> = unipotent.iter().map(|(_, b)| b.clone()).collect();
    let u = generic_unipotent(m.system(), &vars, &directions, size)?;
    let uinv = unipotent_inverse(&u)?;
    let rep = rep_matrix(v, m.system())?;
    let z = uinv.mul_rational(&m.x).mul(&u);
    let y = z.conjugate_by_rep_inverse(&rep);
    let mut labels = Vec::new();
    let mut polys = Vec::new();
    for r in all_roots(m.system(), m.rank()) {
        if !m.h.contains_root(&r) {
            labels.push(format!("c({},{})", r.i, r.j));
            polys.push(y.get(r.i, r.j).clone());
        }
    }
    for (k, f) in m.h.cartan_annihilator().iter().enumerate() {
        let mut p = MultiPoly::zero(vars.clone());
        for (i, fi) in f.iter().enumerate() {
            if !fi.is_zero() {
                p = p.add(&y.get(i + 1, i + 1).scale(fi));
            }
        }
        labels.push(format!("cartan[{k}]"));
        polys.push(p);
    }
    Ok(MembershipSystem { vars, directions, labels, polys })
}

/// The point `u v̇ B` for parameter values `point`, as the conjugate
/// `(u v̇)^{-1} x (u v̇)`.
pub fn specialized_conjugate(
    v: &Permutation,
    m: &HessenbergModel,
    sys: &MembershipSystem,
    point: &[Rational],
) -> Result<RationalMatrix> {
    let size = m.matrix_size();
    let u = generic_unipotent(m.system(), &sys.vars, &sys.directions, size)?.specialize(point)?;
    let rep = rep_matrix(v, m.system())?;
    let g = u.mul(&rep.matrix)?;
    crate::linalg::adjoint(&g.inverse()?, &m.x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Contained,
    NotContained { point: Vec<Rational> },
    Disjoint,
    Meets { point: Option<Vec<Rational>> },
    Indeterminate { reason: String },
}

impl CellStatus {
    pub fn name(&self) -> &'static str {
        match self {
            CellStatus::Contained => "CONTAINED",
            CellStatus::NotContained { .. } => "NOT_CONTAINED",
            CellStatus::Disjoint => "DISJOINT",
            CellStatus::Meets { .. } => "MEETS",
            CellStatus::Indeterminate { .. } => "INDETERMINATE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCertificate {
    pub v: Permutation,
    pub chart: Chart,
    pub system: MembershipSystem,
    pub status: CellStatus,
    pub groebner: Option<GroebnerCertificate>,
}

fn cell_rng(seed: u64, v: &Permutation) -> ChaCha8Rng {
    let mut s = seed;
    for &x in v.window() {
        s = s.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(x as u64);
    }
    ChaCha8Rng::seed_from_u64(s)
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| q(rng.gen_range(-bound..=bound))).collect()
}

/// A parameter point where some polynomial is nonzero.
fn nonvanishing_point(sys: &MembershipSystem, rng: &mut ChaCha8Rng) -> Option<Vec<Rational>> {
    let n = sys.vars.len();
    let zero = vec![q(0); n];
    let candidates = std::iter::once(zero).chain((0..200).map(|_| random_point(rng, n, 1000)));
    for point in candidates {
        if sys.polys.iter().any(|p| !p.eval(&point).expect("arity").is_zero()) {
            return Some(point);
        }
    }
    None
}

fn common_zero(polys: &[MultiPoly], nvars: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Rational>> {
    let zero = vec![q(0); nvars];
    let candidates = std::iter::once(zero).chain((0..64).map(|_| random_point(rng, nvars, 2)));
    candidates
        .into_iter()
        .find(|pt| polys.iter().all(|p| p.eval(pt).expect("arity").is_zero()))
}

fn build_system(v: &Permutation, m: &HessenbergModel, opts: &CellOptions) -> Result<MembershipSystem> {
    let basis = chart_basis(opts.chart, m.system(), m.rank(), v);
    cell_membership_polys(v, m, &basis)
}

/// CONTAINED, or NOT_CONTAINED with a rational point of the cell outside `B(x, H)`.
pub fn cell_containment(v: &Permutation, m: &HessenbergModel, opts: &CellOptions) -> Result<CellCertificate> {
    let system = build_system(v, m, opts)?;
    let status = if system.all_zero() {
        CellStatus::Contained
    } else {
        let mut rng = cell_rng(opts.seed, v);
        let point = nonvanishing_point(&system, &mut rng)
            .ok_or_else(|| Error::Precondition("no nonvanishing point found".into()))?;
        CellStatus::NotContained { point }
    };
    Ok(CellCertificate { v: v.clone(), chart: opts.chart, system, status, groebner: None })
}

/// Full classification of `C_v` against `B(x, H)`.
pub fn cell_certificate(v: &Permutation, m: &HessenbergModel, opts: &CellOptions) -> Result<CellCertificate> {
    let system = build_system(v, m, opts)?;
    if system.all_zero() {
        return Ok(CellCertificate { v: v.clone(), chart: opts.chart, system, status: CellStatus::Contained, groebner: None });
    }
    let gens = system.nonzero();
    let run = if opts.cofactors {
        groebner_with_cofactors(&system.vars, &gens, opts.budget)
    } else {
        groebner(&system.vars, &gens, opts.budget)
    };
    let (status, cert) = match run {
        Err(e) => (CellStatus::Indeterminate { reason: e.to_string() }, None),
        Ok(c) if c.inconsistent => (CellStatus::Disjoint, Some(c)),
        Ok(c) => {
            let mut rng = cell_rng(opts.seed, v);
            let point = common_zero(&gens, system.vars.len(), &mut rng);
            (CellStatus::Meets { point }, Some(c))
        }
    };
    Ok(CellCertificate { v: v.clone(), chart: opts.chart, system, status, groebner: cert })
}

/// Re-derives the membership polynomials and re-checks the evidence.
pub fn verify_cell_certificate(m: &HessenbergModel, cert: &CellCertificate, budget: Budget) -> Result<bool> {
    let basis = chart_basis(cert.chart, m.system(), m.rank(), &cert.v);
    let fresh = cell_membership_polys(&cert.v, m, &basis)?;
    if fresh.polys != cert.system.polys {
        return Ok(false);
    }
    Ok(match &cert.status {
        CellStatus::Contained => fresh.all_zero(),
        CellStatus::NotContained { point } => {
            let y = specialized_conjugate(&cert.v, m, &fresh, point)?;
            !m.h.contains(&y)
        }
        CellStatus::Disjoint => match &cert.groebner {
            Some(g) => g.inconsistent && g.generators == fresh.nonzero() && g.verify(budget),
            None => false,
        },
        CellStatus::Meets { point } => match point {
            Some(pt) => {
                let y = specialized_conjugate(&cert.v, m, &fresh, pt)?;
                m.h.contains(&y)
            }
            None => match &cert.groebner {
                Some(g) => !g.inconsistent && g.generators == fresh.nonzero() && g.verify(budget),
                None => false,
            },
        },
        CellStatus::Indeterminate { .. } => true,
    })
}
