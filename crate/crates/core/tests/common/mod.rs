//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hesslab::engine::HessenbergModel;
use hesslab::hessenberg::{ambient_cartan_basis, root_vector, HessenbergSpace};
use hesslab::linalg::{bracket, q, Rational, RationalMatrix};
use hesslab::roots::{positive_roots, Root, System};
use num_traits::Zero;
use hesslab::weyl::Permutation;
use rand::Rng;

/// All permutations of `[n]` by recursive insertion (order irrelevant).
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n);
            out.push(v);
        }
    }
    out
}

pub fn perm(w: &[usize]) -> Permutation {
    Permutation::new(w.to_vec()).unwrap()
}

pub fn inversions(w: &[usize]) -> usize {
    let mut c = 0;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            c += usize::from(w[a] > w[b]);
        }
    }
    c
}

/// Rank-matrix criterion: `v <= w` iff `#{i <= p : v(i) >= q} <= #{i <= p : w(i) >= q}`.
pub fn bruhat_rank(v: &[usize], w: &[usize]) -> bool {
    let n = v.len();
    (1..=n).all(|p| {
        (1..=n).all(|qq| {
            let cv = v[..p].iter().filter(|&&x| x >= qq).count();
            let cw = w[..p].iter().filter(|&&x| x >= qq).count();
            cv <= cw
        })
    })
}

pub fn lower_interval_brute(w: &[usize]) -> BTreeSet<Vec<usize>> {
    perms(w.len()).into_iter().filter(|v| bruhat_rank(v, w)).collect()
}

/// Any `k`-subset of positions order-isomorphic to `pattern`.
pub fn contains_brute(w: &[usize], pattern: &[usize]) -> bool {
    let n = w.len();
    let k = pattern.len();
    fn rec(w: &[usize], pattern: &[usize], start: usize, chosen: &mut Vec<usize>, n: usize, k: usize) -> bool {
        if chosen.len() == k {
            return (0..k).all(|a| (0..k).all(|b| (w[chosen[a]] < w[chosen[b]]) == (pattern[a] < pattern[b])));
        }
        for i in start..n {
            chosen.push(i);
            if rec(w, pattern, i + 1, chosen, n, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(w, pattern, 0, &mut Vec::new(), n, k)
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i - 1]).collect()
}

pub fn invert(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x - 1] = i + 1;
    }
    out
}

/// `y = P^{-1} x P` for the plain permutation matrix `P e_j = e_{w(j)}`, so
/// `y_{ab} = x_{w(a), w(b)}`.
pub fn conjugate_plain(x: &RationalMatrix, w: &[usize]) -> RationalMatrix {
    let m = w.len();
    let mut y = RationalMatrix::zero(m);
    for a in 1..=m {
        for b in 1..=m {
            y.set(a, b, x.get(w[a - 1], w[b - 1]));
        }
    }
    y
}

/// Membership in `H` up to torus conjugation, decided from supports: the
/// off-diagonal support lies inside the root positions of `H` and the diagonal
/// inside its Cartan part. Plain permutation matrices differ from the signed
/// representatives by a diagonal sign matrix, which this ignores.
pub fn in_space_up_to_torus(h: &HessenbergSpace, y: &RationalMatrix) -> bool {
    let mut allowed = BTreeSet::new();
    for r in h.roots() {
        for p in r.positions() {
            allowed.insert(p);
        }
    }
    let mut diag = RationalMatrix::zero(y.rank());
    for (i, j, v) in y.entries() {
        if i == j {
            diag.set(i, i, v.clone());
        } else if !allowed.contains(&(i, j)) {
            return false;
        }
    }
    h.contains(&diag)
}

pub fn fixed_point_brute(m: &HessenbergModel, w: &[usize]) -> bool {
    in_space_up_to_torus(&m.h, &conjugate_plain(&m.x, w))
}

pub fn profile_brute(m: &HessenbergModel, group: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    group.iter().filter(|w| fixed_point_brute(m, w)).cloned().collect()
}

/// Signed permutations of `[2n]` by brute-force filtering `S_{2n}`.
pub fn signed_brute(n: usize) -> Vec<Vec<usize>> {
    let m = 2 * n;
    perms(m)
        .into_iter()
        .filter(|w| (1..=m).all(|i| w[m - i] == m + 1 - w[i - 1]))
        .collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn rand_small<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let mut v = 0;
    while v == 0 {
        v = rng.gen_range(-bound..=bound);
    }
    q(v)
}

/// Sparse random matrix with `k` off-diagonal entries; optionally a
/// traceless diagonal.
pub fn random_sparse<R: Rng>(rng: &mut R, n: usize, k: usize, diagonal: bool) -> RationalMatrix {
    let mut x = RationalMatrix::zero(n);
    for _ in 0..k {
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..=n);
        while j == i {
            j = rng.gen_range(1..=n);
        }
        x.set(i, j, rand_small(rng, 3));
    }
    if diagonal {
        let mut total = q(0);
        for i in 1..n {
            let d = q(rng.gen_range(-2..=2));
            total += d.clone();
            x.set(i, i, d);
        }
        x.set(n, n, -total);
    }
    x
}

pub fn e(n: usize, pairs: &[(usize, usize)]) -> RationalMatrix {
    let mut x = RationalMatrix::zero(n);
    for &(i, j) in pairs {
        x.set(i, j, q(1));
    }
    x
}

pub fn root_a(n: usize, i: usize, j: usize) -> Root {
    Root::new(System::A, n, i, j).unwrap()
}

/// Dense product, independent of the library's sparse multiplication.
pub fn dense_mul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let n = a.rank();
    let mut out = RationalMatrix::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            let mut s = q(0);
            for k in 1..=n {
                s += a.get(i, k) * b.get(k, j);
            }
            out.set(i, j, s);
        }
    }
    out
}

/// Inverse of an upper unipotent matrix by back substitution.
pub fn unipotent_inv(u: &RationalMatrix) -> RationalMatrix {
    let n = u.rank();
    let mut inv = RationalMatrix::identity(n);
    for j in 1..=n {
        for i in (1..j).rev() {
            let mut s = q(0);
            for k in i + 1..=j {
                s += u.get(i, k) * inv.get(k, j);
            }
            inv.set(i, j, -s);
        }
    }
    inv
}

pub fn is_upper_unipotent(u: &RationalMatrix) -> bool {
    let n = u.rank();
    (1..=n).all(|i| (1..=i).all(|j| u.get(i, j) == if i == j { q(1) } else { q(0) }))
}

/// `σ̄(E_pq) = E_pq + σ(E_pq)` written out by hand: `σ(E_pq) = ±E_{q'p'}`.
pub fn sigma_bar_unit(m: usize, p: usize, qq: usize) -> RationalMatrix {
    let prime = |i: usize| m + 1 - i;
    let sign = |i: usize| if i <= m / 2 { 1 } else { -1 };
    let mut x = RationalMatrix::zero(m);
    x.set(p, qq, q(1));
    let s = sign(prime(qq)) * sign(p);
    let cur = x.get(prime(qq), prime(p));
    x.set(prime(qq), prime(p), cur + q(s));
    x
}

pub fn symplectic_form(m: usize) -> RationalMatrix {
    let mut e = RationalMatrix::zero(m);
    for i in 1..=m {
        e.set(i, m + 1 - i, q(if i <= m / 2 { 1 } else { -1 }));
    }
    e
}

/// A random element of the unipotent radical: any upper unipotent matrix in
/// type A, a random product of root subgroup elements in type C.
pub fn random_unipotent<R: Rng>(rng: &mut R, system: System, m: usize, bound: i64) -> RationalMatrix {
    match system {
        System::A => {
            let mut u = RationalMatrix::identity(m);
            for i in 1..=m {
                for j in i + 1..=m {
                    u.set(i, j, q(rng.gen_range(-bound..=bound)));
                }
            }
            u
        }
        System::C => {
            let mut u = RationalMatrix::identity(m);
            for _ in 0..2 {
                for p in 1..=m {
                    for qq in p + 1..=m {
                        if p + qq > m + 1 {
                            continue;
                        }
                        let f = RationalMatrix::identity(m)
                            .add(&sigma_bar_unit(m, p, qq).scale(&q(rng.gen_range(-bound..=bound))))
                            .unwrap();
                        u = dense_mul(&f, &u);
                    }
                }
            }
            u
        }
    }
}

/// Is the point `u v̇ B` of the cell `C_v` in `B(x, H)`?
pub fn cell_point_in(m: &HessenbergModel, v: &[usize], u: &RationalMatrix) -> bool {
    let z = dense_mul(&dense_mul(&unipotent_inv(u), &m.x), u);
    in_space_up_to_torus(&m.h, &conjugate_plain(&z, v))
}

/// Dense row-echelon span of flattened matrices.
pub struct Span {
    pub rows: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    pub fn new() -> Self {
        Span { rows: Vec::new() }
    }

    pub fn flat(x: &RationalMatrix) -> Vec<Rational> {
        let m = x.rank();
        let mut v = vec![Rational::zero(); m * m];
        for (i, j, c) in x.entries() {
            v[(i - 1) * m + (j - 1)] = c.clone();
        }
        v
    }

    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone() / r[*p].clone();
                for (a, b) in v.iter_mut().zip(r) {
                    *a -= c.clone() * b;
                }
            }
        }
        v
    }

    pub fn insert(&mut self, x: &RationalMatrix) -> bool {
        let v = self.reduce(Self::flat(x));
        match v.iter().position(|c| !c.is_zero()) {
            None => false,
            Some(p) => {
                // keep earlier rows reduced against the new pivot
                for (_, r) in self.rows.iter_mut() {
                    if !r[p].is_zero() {
                        let c = r[p].clone() / v[p].clone();
                        for (a, b) in r.iter_mut().zip(&v) {
                            *a -= c.clone() * b;
                        }
                    }
                }
                self.rows.push((p, v));
                true
            }
        }
    }

    pub fn contains(&self, x: &RationalMatrix) -> bool {
        self.reduce(Self::flat(x)).iter().all(Zero::is_zero)
    }
}

pub fn diag(v: &[Rational]) -> RationalMatrix {
    RationalMatrix::diag(v)
}

pub fn borel_generators(system: System, rank: usize) -> Vec<RationalMatrix> {
    let mut g: Vec<RationalMatrix> = positive_roots(system, rank).iter().map(root_vector).collect();
    g.extend(ambient_cartan_basis(system, rank).iter().map(|v| diag(v)));
    g
}

/// The `b`-module generated by `start`, by brute-force bracketing.
pub fn b_module(system: System, rank: usize, start: &[RationalMatrix]) -> Span {
    let gens = borel_generators(system, rank);
    let mut span = Span::new();
    let mut queue: Vec<RationalMatrix> = Vec::new();
    for s in start {
        if span.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in &gens {
            let b = bracket(g, &v).unwrap();
            if span.insert(&b) {
                queue.push(b);
            }
        }
    }
    span
}
