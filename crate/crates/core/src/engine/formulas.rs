//! Counting formulas: Poincaré polynomials, Euler characteristics via
//! fixed-point counts, highest-weight adjoint varieties, and the τ swap.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::model::HessenbergModel;
use super::profile::fixed_point_profile;
use crate::error::{Error, Result};
use crate::hessenberg::{demazure_space, HessenbergSpace};
use crate::linalg::{Rational, RationalMatrix};
use crate::roots::{highest_root, Root, System};
use crate::weyl::{all_permutations, bruhat_leq_windows, lower_interval_iter, Permutation};

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct QPoly(pub Vec<i64>);

impl QPoly {
    pub fn monomial(d: usize) -> QPoly {
        let mut v = vec![0; d + 1];
        v[d] = 1;
        QPoly(v)
    }

    fn trim(mut self) -> QPoly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let mut v = vec![0; self.0.len().max(o.0.len())];
        for (k, c) in self.0.iter().enumerate() {
            v[k] += c;
        }
        for (k, c) in o.0.iter().enumerate() {
            v[k] += c;
        }
        QPoly(v).trim()
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&QPoly(o.0.iter().map(|c| -c).collect()))
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return QPoly::default();
        }
        let mut v = vec![0; self.0.len() + o.0.len() - 1];
        for (a, x) in self.0.iter().enumerate() {
            for (b, y) in o.0.iter().enumerate() {
                v[a + b] += x * y;
            }
        }
        QPoly(v).trim()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(d, c)| match d {
                0 => c.to_string(),
                1 if *c == 1 => "q".to_string(),
                1 => format!("{c}q"),
                _ if *c == 1 => format!("q^{d}"),
                _ => format!("{c}q^{d}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `[n]_q = 1 + q + … + q^{n−1}`.
pub fn q_int(n: usize) -> QPoly {
    QPoly(vec![1; n])
}

/// `[n]_q! = [1]_q [2]_q … [n]_q`.
pub fn q_factorial(n: usize) -> QPoly {
    (1..=n).fold(QPoly(vec![1]), |acc, k| acc.mul(&q_int(k)))
}

/// `Σ_{v <= w} q^{ℓ(v)}`.
pub fn schubert_poincare(w: &Permutation) -> QPoly {
    let mut coeffs = vec![0i64; w.length() + 1];
    for v in lower_interval_iter(w) {
        coeffs[v.length()] += 1;
    }
    QPoly(coeffs).trim()
}

/// `s_i w_0`: the window of `w_0` with the values `i` and `i+1` exchanged.
pub fn s_i_w0(i: usize, n: usize) -> Result<Permutation> {
    let si = Permutation::simple_reflection(i, n)?;
    si.multiply(&Permutation::longest_element(n))
}

/// Counts `w` with `ε_{w^{-1}(j)} − ε_{w^{-1}(k)} ∈ Φ_H` for every `(j, k)` in
/// the support: the indices touched by the support are assigned by a
/// depth-first search, the rest contribute a factorial.
pub fn euler_profile_count(support: &[(usize, usize)], h: &HessenbergSpace) -> Result<u64> {
    if h.system != System::A {
        return Err(Error::Precondition("fixed-point counts are computed in type A".into()));
    }
    let n = h.rank;
    for &(j, k) in support {
        if j >= k || k > n || j == 0 {
            return Err(Error::Precondition(format!("support pair ({j},{k}) is not strictly upper")));
        }
    }
    let mut touched: Vec<usize> = support.iter().flat_map(|&(j, k)| [j, k]).collect();
    touched.sort_unstable();
    touched.dedup();
    let allowed = |a: usize, b: usize| h.contains_root(&Root::a(n, a, b).expect("distinct"));
    let mut assign = vec![0usize; n + 1];
    let mut used = vec![false; n + 1];
    fn rec(
        k: usize,
        touched: &[usize],
        support: &[(usize, usize)],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        allowed: &dyn Fn(usize, usize) -> bool,
        n: usize,
    ) -> u64 {
        if k == touched.len() {
            return 1;
        }
        let idx = touched[k];
        let mut total = 0;
        for val in 1..=n {
            if used[val] {
                continue;
            }
            assign[idx] = val;
            // check every support pair whose endpoints are now both assigned
            let ok = support.iter().all(|&(j, kk)| {
                let (a, b) = (assign[j], assign[kk]);
                a == 0 || b == 0 || (idx != j && idx != kk) || allowed(a, b)
            });
            if ok {
                used[val] = true;
                total += rec(k + 1, touched, support, assign, used, allowed, n);
                used[val] = false;
            }
            assign[idx] = 0;
        }
        total
    }
    let partial = rec(0, &touched, support, &mut assign, &mut used, &allowed, n);
    let free: u64 = (1..=(n - touched.len()) as u64).product();
    Ok(partial * free)
}

/// The fixed-point profile of `(diag(c,…,c,d), H(−θ̄))` split into the part
/// `[e, s_{n−1} w_0]` and the part `w_0 · [e, s_1 w_0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codim1Split {
    pub profile: BTreeSet<Permutation>,
    pub first: BTreeSet<Permutation>,
    pub second: BTreeSet<Permutation>,
}

impl Codim1Split {
    pub fn union_matches(&self) -> bool {
        self.first.union(&self.second).cloned().collect::<BTreeSet<_>>() == self.profile
    }
}

pub fn codim1_component_fixed_points(n: usize, c: &Rational, d: &Rational) -> Result<Codim1Split> {
    if c == d {
        return Err(Error::Precondition("c and d must differ".into()));
    }
    if n < 2 {
        return Err(Error::RankTooSmall(format!("n = {n}")));
    }
    let mut diag = vec![c.clone(); n];
    diag[n - 1] = d.clone();
    let h = crate::hessenberg::special_space(crate::hessenberg::SpecialKind::MinusTheta, n)?;
    let m = HessenbergModel::projected(RationalMatrix::diag(&diag), h)?;
    let profile = fixed_point_profile(&m);
    let w0 = Permutation::longest_element(n);
    let top1 = s_i_w0(n - 1, n)?;
    let top2 = s_i_w0(1, n)?;
    let first = lower_interval_iter(&top1).collect();
    let second = lower_interval_iter(&top2)
        .map(|v| w0.multiply(&v).expect("same size"))
        .collect();
    Ok(Codim1Split { profile, first, second })
}

/// Result of the highest-weight adjoint construction for one root γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightResult {
    pub gamma: Root,
    /// The longest `w` with `w^{-1}(θ) = γ`.
    pub w: Permutation,
    pub profile: BTreeSet<Permutation>,
    pub certified: bool,
    pub reasoning: String,
}

/// `B(E_θ, H_γ) = X_w` for the longest `w` with `w^{-1}(θ) = γ`, certified by
/// comparing the fixed-point profile with `[e, w]`: `Ad(B) E_θ = ℂ^* E_θ`, so
/// the variety is `B`-stable and closed, hence a union of Schubert cells
/// determined by its fixed points.
pub fn hw_adjoint(gamma: &Root) -> Result<HighestWeightResult> {
    if gamma.system != System::A {
        return Err(Error::Precondition("highest-weight construction is type A".into()));
    }
    let n = gamma.rank;
    let theta = highest_root(System::A, n)?;
    let w = all_permutations(n)
        .filter(|w| {
            let winv = w.inverse();
            winv.apply(theta.i) == gamma.i && winv.apply(theta.j) == gamma.j
        })
        .max_by_key(Permutation::length)
        .expect("every root is in the orbit of θ");
    let h = demazure_space(gamma)?;
    let x = RationalMatrix::unit(n, theta.i, theta.j);
    let m = HessenbergModel::new(x, h)?;
    let profile = fixed_point_profile(&m);
    let certified = profile.len() == lower_interval_iter(&w).count()
        && profile.iter().all(|v| bruhat_leq_windows(v.window(), w.window()));
    let reasoning = if certified {
        format!(
            "Ad(B)E_theta = C*E_theta makes B(E_theta, H_gamma) B-stable and closed; its fixed points are exactly [e, {w}], so it equals X_{w}"
        )
    } else {
        format!("fixed-point profile differs from [e, {w}]")
    };
    Ok(HighestWeightResult { gamma: *gamma, w, profile, certified, reasoning })
}

/// `τ`: `w` with the entries at positions `j` and `k` exchanged, for an
/// occurrence `w_ℓ < w_j < w_k < w_i` of `[4231]` at `i < j < k < ℓ`.
pub fn extratau(w: &Permutation, positions: (usize, usize, usize, usize)) -> Result<Permutation> {
    let (i, j, k, l) = positions;
    let n = w.size();
    if !(1 <= i && i < j && j < k && k < l && l <= n) {
        return Err(Error::Precondition(format!("positions {positions:?} are not increasing in [{n}]")));
    }
    let (wi, wj, wk, wl) = (w.apply(i), w.apply(j), w.apply(k), w.apply(l));
    if !(wl < wj && wj < wk && wk < wi) {
        return Err(Error::Precondition(format!("{w} has no [4231] at {positions:?}")));
    }
    Ok(w.swap_positions(j, k))
}
