use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::linalg::{q, Rational, RationalMatrix, WeylRep};

/// A dense square matrix of polynomials, 1-based accessors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    vars: Arc<[String]>,
    cells: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zero(n: usize, vars: Arc<[String]>) -> Self {
        PolyMatrix { n, cells: vec![MultiPoly::zero(vars.clone()); n * n], vars }
    }

    pub fn identity(n: usize, vars: Arc<[String]>) -> Self {
        let mut m = Self::zero(n, vars.clone());
        for i in 1..=n {
            m.set(i, i, MultiPoly::one(vars.clone()));
        }
        m
    }

    pub fn from_rational(x: &RationalMatrix, vars: Arc<[String]>) -> Self {
        let mut m = Self::zero(x.rank(), vars.clone());
        for (i, j, v) in x.entries() {
            m.set(i, j, MultiPoly::constant(vars.clone(), v.clone()));
        }
        m
    }

    /// `Σ_k t_k · basis_k` with `t_k` the k-th variable.
    pub fn linear_combination(n: usize, vars: Arc<[String]>, basis: &[RationalMatrix]) -> Result<Self> {
        if basis.len() != vars.len() {
            return Err(Error::SizeMismatch(basis.len(), vars.len()));
        }
        let mut m = Self::zero(n, vars.clone());
        for (k, b) in basis.iter().enumerate() {
            if b.rank() != n {
                return Err(Error::SizeMismatch(b.rank(), n));
            }
            let t = MultiPoly::var(vars.clone(), k);
            for (i, j, v) in b.entries() {
                let cur = m.get(i, j).add(&t.scale(v));
                m.set(i, j, cur);
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.cells[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        let n = self.n;
        self.cells[(i - 1) * n + (j - 1)] = p;
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            vars: self.vars.clone(),
            cells: self.cells.iter().zip(&other.cells).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            vars: self.vars.clone(),
            cells: self.cells.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.n;
        let mut out = Self::zero(n, self.vars.clone());
        for i in 1..=n {
            for k in 1..=n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = (i - 1) * n + (j - 1);
                    out.cells[idx] = out.cells[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// `self · x` for a constant matrix `x`.
    pub fn mul_rational(&self, x: &RationalMatrix) -> PolyMatrix {
        let n = self.n;
        let mut out = Self::zero(n, self.vars.clone());
        for (k, j, v) in x.entries() {
            for i in 1..=n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let idx = (i - 1) * n + (j - 1);
                out.cells[idx] = out.cells[idx].add(&a.scale(v));
            }
        }
        out
    }

    /// `x · self` for a constant matrix `x`.
    pub fn rational_mul(x: &RationalMatrix, m: &PolyMatrix) -> PolyMatrix {
        let n = m.n;
        let mut out = Self::zero(n, m.vars.clone());
        for (i, k, v) in x.entries() {
            for j in 1..=n {
                let b = m.get(k, j);
                if b.is_zero() {
                    continue;
                }
                let idx = (i - 1) * n + (j - 1);
                out.cells[idx] = out.cells[idx].add(&b.scale(v));
            }
        }
        out
    }

    /// `ẇ^{-1} M ẇ`, entrywise `d_a d_b M_{w(a), w(b)}`.
    pub fn conjugate_by_rep_inverse(&self, rep: &WeylRep) -> PolyMatrix {
        let n = self.n;
        let mut out = Self::zero(n, self.vars.clone());
        for a in 1..=n {
            for b in 1..=n {
                let p = self.get(rep.w.apply(a), rep.w.apply(b));
                if p.is_zero() {
                    continue;
                }
                let s = rep.signs[a - 1] * rep.signs[b - 1];
                out.set(a, b, if s > 0 { p.clone() } else { p.neg() });
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (1..=self.n).all(|i| {
            (1..=self.n).all(|j| {
                let p = self.get(i, j);
                if i == j {
                    p.is_constant() && !p.is_zero() && p.leading().map(|(_, c)| c.is_one()) == Some(true)
                } else {
                    p.is_zero()
                }
            })
        })
    }

    fn strictly_upper_part(&self) -> Result<PolyMatrix> {
        let n = self.n;
        let mut nil = Self::zero(n, self.vars.clone());
        for i in 1..=n {
            for j in 1..=n {
                let p = self.get(i, j);
                if i == j {
                    let one = MultiPoly::one(self.vars.clone());
                    if *p != one {
                        return Err(Error::NotUnipotent);
                    }
                } else if i > j {
                    if !p.is_zero() {
                        return Err(Error::NotUnipotent);
                    }
                } else {
                    nil.set(i, j, p.clone());
                }
            }
        }
        Ok(nil)
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(MultiPoly::is_zero)
    }

    pub fn specialize(&self, point: &[Rational]) -> Result<RationalMatrix> {
        let mut entries = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let v = self.get(i, j).eval(point)?;
                if !v.is_zero() {
                    entries.push((i, j, v));
                }
            }
        }
        RationalMatrix::from_entries(self.n, entries)
    }
}

/// `(I + N)^{-1} = I − N + N² − …`, finite since `N` is strictly upper.
pub fn unipotent_inverse(u: &PolyMatrix) -> Result<PolyMatrix> {
    let nil = u.strictly_upper_part()?;
    let n = u.size();
    let mut out = PolyMatrix::identity(n, u.vars.clone());
    let mut power = PolyMatrix::identity(n, u.vars.clone());
    let minus_one = -Rational::one();
    for _ in 1..n {
        power = power.mul(&nil).scale(&minus_one);
        if power.is_zero() {
            break;
        }
        out = out.add(&power);
    }
    Ok(out)
}

/// `exp(N) = Σ N^k / k!` for strictly upper triangular `N`.
pub fn nilpotent_exp(nil: &PolyMatrix) -> Result<PolyMatrix> {
    let n = nil.size();
    for i in 1..=n {
        for j in 1..=i {
            if !nil.get(i, j).is_zero() {
                return Err(Error::NotUnipotent);
            }
        }
    }
    let mut out = PolyMatrix::identity(n, nil.vars.clone());
    let mut power = PolyMatrix::identity(n, nil.vars.clone());
    for k in 1..n {
        power = power.mul(nil).scale(&q(k as i64).recip());
        if power.is_zero() {
            break;
        }
        out = out.add(&power);
    }
    Ok(out)
}
