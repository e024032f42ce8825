//! Exact linear algebra over ℚ: sparse square matrices, the adjoint action,
//! brackets, span membership, Weyl group representatives and the involution σ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::roots::{prime, System};
use crate::weyl::Permutation;

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("rational {s:?}: {e}")))
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

/// Serde adaptor storing a rational as a `"p/q"` string.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rational_vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(|r| r.to_string()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A square matrix over ℚ stored sparsely by 1-based `(row, col)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix { n, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 1..=n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    /// The matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, Rational::one());
        m
    }

    pub fn diag(d: &[Rational]) -> Self {
        let mut m = Self::zero(d.len());
        for (k, v) in d.iter().enumerate() {
            m.set(k + 1, k + 1, v.clone());
        }
        m
    }

    pub fn from_entries(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut m = Self::zero(n);
        for (i, j, v) in entries {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::IndexOutOfRange(format!("entry ({i},{j}) in rank {n}")));
            }
            let cur = m.get(i, j);
            m.set(i, j, cur + v);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i + 1, j + 1, q(v));
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&Rational> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i == j)
    }

    pub fn is_strictly_upper(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i < j)
    }

    pub fn trace(&self) -> Rational {
        (1..=self.n).map(|i| self.get(i, i)).sum()
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            let cur = out.get(i, j);
            out.set(i, j, cur + v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut rows: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (&(k, j), v) in &other.entries {
            rows.entry(k).or_default().push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rows.get(&k) {
                for &(j, b) in row {
                    *acc.entry((i, j)).or_insert_with(Rational::zero) += a * b;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(RationalMatrix { n: self.n, entries: acc })
    }

    pub fn transpose(&self) -> Self {
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    fn dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.n]; self.n];
        for (&(i, j), v) in &self.entries {
            d[i - 1][j - 1] = v.clone();
        }
        d
    }

    pub fn determinant(&self) -> Rational {
        let n = self.n;
        let mut a = self.dense();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &pivot;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.dense();
        let mut inv = Self::identity(n).dense();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::Singular)?;
            a.swap(p, c);
            inv.swap(p, c);
            let pivot = a[c][c].clone();
            for k in 0..n {
                a[c][k] = &a[c][k] / &pivot;
                inv[c][k] = &inv[c][k] / &pivot;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                    let t = &f * &inv[c][k];
                    inv[r][k] -= t;
                }
            }
        }
        let mut out = Self::zero(n);
        for (i, row) in inv.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                out.set(i + 1, j + 1, v);
            }
        }
        Ok(out)
    }

    /// Flattened index of `(i, j)`, row-major, 0-based.
    pub fn flat_index(n: usize, i: usize, j: usize) -> usize {
        (i - 1) * n + (j - 1)
    }

    pub fn to_sparse_vec(&self) -> SparseVec {
        self.entries
            .iter()
            .map(|(&(i, j), v)| (Self::flat_index(self.n, i, j), v.clone()))
            .collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}[", self.n)?;
        let mut first = true;
        for (&(i, j), v) in &self.entries {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "({i},{j})={v}")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rank: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rank: self.n,
            entries: self.entries.iter().map(|(&(i, j), v)| (i, j, v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        let entries = j
            .entries
            .into_iter()
            .map(|(a, b, s)| parse_rational(&s).map(|v| (a, b, v)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RationalMatrix::from_entries(j.rank, entries).map_err(serde::de::Error::custom)
    }
}

/// `Ad(g)(x) = g x g^{-1}`.
pub fn adjoint(g: &RationalMatrix, x: &RationalMatrix) -> Result<RationalMatrix> {
    let ginv = g.inverse()?;
    g.mul(x)?.mul(&ginv)
}

/// `[x, y] = xy − yx`.
pub fn bracket(x: &RationalMatrix, y: &RationalMatrix) -> Result<RationalMatrix> {
    x.mul(y)?.sub(&y.mul(x)?)
}

pub type SparseVec = BTreeMap<usize, Rational>;

fn axpy(target: &mut SparseVec, c: &Rational, v: &SparseVec) {
    for (k, x) in v {
        let e = target.entry(*k).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

/// A subspace in reduced row-echelon form. Each stored row remembers its
/// expression in the vectors that were inserted.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, SparseVec, SparseVec)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` and the combination of inserted vectors removed from it.
    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut r = v.clone();
        let mut combo = SparseVec::new();
        for (pivot, row, rc) in &self.rows {
            if let Some(c) = r.get(pivot).cloned() {
                axpy(&mut r, &-c.clone(), row);
                axpy(&mut combo, &c, rc);
            }
        }
        (r, combo)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (pivot, row, _) in &self.rows {
            if let Some(c) = r.get(pivot).cloned() {
                axpy(&mut r, &-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (mut r, combo) = self.reduce_tracked(v);
        if r.is_empty() {
            return false;
        }
        let mut rc = SparseVec::new();
        axpy(&mut rc, &-Rational::one(), &combo);
        rc.insert(idx, Rational::one());
        let (&pivot, pv) = r.iter().next().expect("nonempty");
        let inv = pv.recip();
        for x in r.values_mut() {
            *x *= &inv;
        }
        for x in rc.values_mut() {
            *x *= &inv;
        }
        // keep rows fully reduced against the new pivot
        for (_, row, c) in self.rows.iter_mut() {
            if let Some(f) = row.get(&pivot).cloned() {
                axpy(row, &-f.clone(), &r);
                axpy(c, &-f, &rc);
            }
        }
        self.rows.push((pivot, r, rc));
        true
    }

    /// Coordinates of `v` in the inserted vectors (dependent ones get 0).
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        let (r, combo) = self.reduce_tracked(v);
        if !r.is_empty() {
            return None;
        }
        let mut out = vec![Rational::zero(); self.inserted];
        for (k, c) in combo {
            out[k] = c;
        }
        Some(out)
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.iter().map(|(_, r, _)| r)
    }
}

/// Exact membership of `x` in `span(basis)`, with coordinates on success.
pub fn in_span(x: &RationalMatrix, basis: &[RationalMatrix]) -> Option<Vec<Rational>> {
    let mut ech = Echelon::new();
    for b in basis {
        ech.insert(&b.to_sparse_vec());
    }
    ech.coordinates(&x.to_sparse_vec())
}

pub fn rank_of(vectors: &[RationalMatrix]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(&v.to_sparse_vec());
    }
    ech.dim()
}

/// A determinant-one signed permutation matrix representing `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylRep {
    pub w: Permutation,
    pub matrix: RationalMatrix,
    /// `ẇ e_j = signs[j-1] · e_{w(j)}`.
    pub signs: Vec<i8>,
}

impl WeylRep {
    /// `(ẇ^{-1} z ẇ)_{ab} = d_a d_b z_{w(a), w(b)}`.
    pub fn conjugate_inverse(&self, z: &RationalMatrix) -> RationalMatrix {
        let winv = self.w.inverse();
        let mut out = RationalMatrix::zero(z.rank());
        for (i, j, v) in z.entries() {
            let (a, b) = (winv.apply(i), winv.apply(j));
            let s = self.signs[a - 1] * self.signs[b - 1];
            out.set(a, b, if s > 0 { v.clone() } else { -v.clone() });
        }
        out
    }
}

/// Type A: negate the last column when `w` is odd. Type C: `d_a = 1` for
/// `a <= n` and `d_{a'} = ⟨e_{w(a)}, e_{w(a)'}⟩`, which makes the matrix
/// symplectic and hence σ-fixed.
pub fn rep_matrix(w: &Permutation, system: System) -> Result<WeylRep> {
    let m = w.size();
    let signs: Vec<i8> = match system {
        System::A => {
            let mut s = vec![1i8; m];
            if w.sign() < 0 && m > 0 {
                s[m - 1] = -1;
            }
            s
        }
        System::C => {
            if !w.is_signed()? {
                return Err(Error::NotSigned(w.to_string()));
            }
            let n = m / 2;
            let mut s = vec![1i8; m];
            for a in 1..=n {
                s[prime(a, m) - 1] = form_sign(w.apply(a), m);
            }
            s
        }
    };
    let mut matrix = RationalMatrix::zero(m);
    for j in 1..=m {
        matrix.set(w.apply(j), j, q(signs[j - 1] as i64));
    }
    Ok(WeylRep { w: w.clone(), matrix, signs })
}

/// `E_{i,i'}`: `+1` for `i <= n`, `−1` otherwise.
#[inline]
pub fn form_sign(i: usize, m: usize) -> i8 {
    if i <= m / 2 {
        1
    } else {
        -1
    }
}

/// The form matrix `E = [[0, J], [−J, 0]]`.
pub fn form_matrix(n: usize) -> RationalMatrix {
    let m = 2 * n;
    let mut e = RationalMatrix::zero(m);
    for i in 1..=m {
        e.set(i, prime(i, m), q(form_sign(i, m) as i64));
    }
    e
}

/// `σ(x) = E xᵗ E`, entrywise: `σ(E_pq) = E_{q'q} E_{pp'} E_{q'p'}`.
pub fn sigma_matrix(x: &RationalMatrix) -> Result<RationalMatrix> {
    let m = x.rank();
    if m % 2 == 1 {
        return Err(Error::OddSize(m));
    }
    let mut out = RationalMatrix::zero(m);
    for (p, qi, v) in x.entries() {
        let s = form_sign(prime(qi, m), m) * form_sign(p, m);
        out.set(prime(qi, m), prime(p, m), if s > 0 { v.clone() } else { -v.clone() });
    }
    Ok(out)
}

/// `σ̄(x) = x + σ(x)`.
pub fn sigma_bar(x: &RationalMatrix) -> Result<RationalMatrix> {
    x.add(&sigma_matrix(x)?)
}

pub fn is_sigma_fixed(x: &RationalMatrix) -> Result<bool> {
    Ok(&sigma_matrix(x)? == x)
}

/// Numerator-size bound used when choosing "small" rationals.
pub fn height(r: &Rational) -> BigInt {
    r.numer().abs().max(r.denom().clone())
}
