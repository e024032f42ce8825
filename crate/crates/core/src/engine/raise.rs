//! Explicit Borel elements moving a nonzero coefficient of `x` to a higher
//! root position.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{adjoint, form_matrix, is_sigma_fixed, qq, rational_serde, sigma_bar, Rational, RationalMatrix};
use crate::roots::{fiber, leq_demazure, prime, Root, System};

/// One elementary factor `I + α N_{pq}` (`N = E_pq` in type A, `σ̄(E_pq)` in type C).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub p: usize,
    pub q: usize,
    #[serde(with = "rational_serde")]
    pub alpha: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaiseWitness {
    pub system: System,
    /// Applied right to left: `b = f_last ⋯ f_1`.
    pub factors: Vec<Factor>,
    pub b: RationalMatrix,
    /// Matrix position whose coefficient in `b·x` is nonzero.
    pub target: (usize, usize),
}

// Small rationals tried in order; any nonzero polynomial of degree <= 4 in α
// is nonzero at one of the first five.
const ALPHAS: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-3, 1)];

fn nilpotent(system: System, m: usize, p: usize, q: usize) -> Result<RationalMatrix> {
    let e = RationalMatrix::unit(m, p, q);
    match system {
        System::A => Ok(e),
        System::C => sigma_bar(&e),
    }
}

fn factor_matrix(system: System, m: usize, f: &Factor) -> Result<RationalMatrix> {
    RationalMatrix::identity(m).add(&nilpotent(system, m, f.p, f.q)?.scale(&f.alpha))
}

/// Applies `I + α N_{pq}` for the first α keeping entry `target` nonzero.
fn step(
    system: System,
    x: &RationalMatrix,
    p: usize,
    q: usize,
    target: (usize, usize),
) -> Result<Option<(Factor, RationalMatrix)>> {
    let m = x.rank();
    for (a, d) in ALPHAS {
        let f = Factor { p, q, alpha: qq(a, d) };
        let y = adjoint(&factor_matrix(system, m, &f)?, x)?;
        if !y.get(target.0, target.1).is_zero() {
            return Ok(Some((f, y)));
        }
    }
    Ok(None)
}

/// The moves of the proof: a row jump `(a,b) → (k,b)`, a column jump
/// `(a,b) → (a,ℓ)`, or the transpose jump `(i,j) → (j,i)`.
fn plan(from: (usize, usize), to: (usize, usize)) -> Vec<((usize, usize), (usize, usize))> {
    let (i, j) = from;
    let (k, l) = to;
    let mut moves = Vec::new();
    if from == to {
        return moves;
    }
    if k != j {
        if k < i {
            moves.push(((k, i), (k, j)));
        }
        if l > j {
            moves.push(((j, l), (k, l)));
        }
    } else if i != l {
        if l > j {
            moves.push(((j, l), (i, l)));
        }
        if k < i {
            moves.push(((k, i), (k, l)));
        }
    } else {
        moves.push(((j, i), (j, i)));
    }
    moves
}

fn chain(system: System, x: &RationalMatrix, from: (usize, usize), to: (usize, usize)) -> Result<Option<Vec<Factor>>> {
    let mut cur = x.clone();
    let mut factors = Vec::new();
    for ((p, q), target) in plan(from, to) {
        match step(system, &cur, p, q, target)? {
            Some((f, y)) => {
                factors.push(f);
                cur = y;
            }
            None => return Ok(None),
        }
    }
    Ok(Some(factors))
}

fn assemble(system: System, m: usize, factors: Vec<Factor>, target: (usize, usize)) -> Result<RaiseWitness> {
    let mut b = RationalMatrix::identity(m);
    for f in &factors {
        b = factor_matrix(system, m, f)?.mul(&b)?;
    }
    Ok(RaiseWitness { system, factors, b, target })
}

/// Checks `b` upper triangular unipotent-times-nothing (so `b ∈ B`), symplectic
/// in type C, and `c_target(b·x) ≠ 0`.
pub fn verify_raise(x: &RationalMatrix, w: &RaiseWitness) -> Result<bool> {
    let m = x.rank();
    let upper = w.b.entries().all(|(i, j, v)| i < j || (i == j && *v == crate::linalg::q(1)));
    if !upper || w.b.rank() != m {
        return Ok(false);
    }
    if w.system == System::C {
        let e = form_matrix(m / 2);
        if w.b.transpose().mul(&e)?.mul(&w.b)? != e {
            return Ok(false);
        }
    }
    let y = adjoint(&w.b, x)?;
    Ok(!y.get(w.target.0, w.target.1).is_zero())
}

/// `b ∈ B` with `c_{kℓ}(b·x) ≠ 0`, given `c_{ij}(x) ≠ 0`, `k <= i`, `ℓ >= j`.
pub fn type_a_raise(x: &RationalMatrix, from: (usize, usize), to: (usize, usize)) -> Result<RaiseWitness> {
    let n = x.rank();
    let ((i, j), (k, l)) = (from, to);
    if [i, j, k, l].iter().any(|&a| a == 0 || a > n) || i == j || k == l || k > i || l < j {
        return Err(Error::Precondition(format!("cannot raise {from:?} to {to:?}")));
    }
    if x.get(i, j).is_zero() {
        return Err(Error::Precondition(format!("c_{i}{j}(x) = 0")));
    }
    let factors = chain(System::A, x, from, to)?
        .ok_or_else(|| Error::Precondition("elementary factors exhausted".into()))?;
    let w = assemble(System::A, n, factors, to)?;
    debug_assert!(verify_raise(x, &w)?);
    Ok(w)
}

/// Positions of `γ ≤ β` in a common fiber pair `(i,j) ↦ (k,ℓ)` with `k <= i`, `ℓ >= j`.
fn fiber_positions(gamma: &Root, beta: &Root) -> Result<Option<((usize, usize), (usize, usize))>> {
    for g in fiber(gamma)? {
        for b in fiber(beta)? {
            let ((i, j), (k, l)) = (g.pair(), b.pair());
            if k <= i && l >= j {
                return Ok(Some(((i, j), (k, l))));
            }
        }
    }
    Ok(None)
}

/// Bounded search over products of up to three σ-symmetrized factors.
fn search(x: &RationalMatrix, target: (usize, usize)) -> Result<Option<Vec<Factor>>> {
    let m = x.rank();
    let mut moves = Vec::new();
    for p in 1..=m {
        for q in p + 1..=m {
            if p <= prime(q, m) {
                moves.push((p, q));
            }
        }
    }
    let mut frontier = vec![(Vec::<Factor>::new(), x.clone())];
    for _ in 0..3 {
        let mut next = Vec::new();
        for (fs, y) in &frontier {
            for &(p, q) in &moves {
                for (a, d) in ALPHAS.iter().take(3) {
                    let f = Factor { p, q, alpha: qq(*a, *d) };
                    let z = adjoint(&factor_matrix(System::C, m, &f)?, y)?;
                    let mut g = fs.clone();
                    g.push(f);
                    if !z.get(target.0, target.1).is_zero() {
                        return Ok(Some(g));
                    }
                    next.push((g, z));
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// `b ∈ B_C` with `c_β(b·x) ≠ 0`, given `c_γ(x) ≠ 0` and `γ ≤ β`.
pub fn type_c_raise(x: &RationalMatrix, gamma: &Root, beta: &Root) -> Result<RaiseWitness> {
    if gamma.system != System::C || beta.system != System::C || gamma.rank != beta.rank {
        return Err(Error::Precondition("type C roots of equal rank required".into()));
    }
    let m = 2 * gamma.rank;
    if x.rank() != m || !is_sigma_fixed(x)? {
        return Err(Error::Precondition("x must be a sigma-fixed matrix of size 2n".into()));
    }
    if !leq_demazure(gamma, beta)? {
        return Err(Error::Precondition(format!("{beta:?} is not above {gamma:?}")));
    }
    let (gi, gj) = gamma.pair();
    if x.get(gi, gj).is_zero() {
        return Err(Error::Precondition("c_gamma(x) = 0".into()));
    }
    let (from, to) = fiber_positions(gamma, beta)?
        .ok_or_else(|| Error::Precondition("no comparable fiber representatives".into()))?;
    let factors = match chain(System::C, x, from, to)? {
        Some(f) => f,
        None => search(x, to)?.ok_or_else(|| Error::Precondition("no witness within search depth".into()))?,
    };
    let w = assemble(System::C, m, factors, to)?;
    debug_assert!(verify_raise(x, &w)?);
    Ok(w)
}
