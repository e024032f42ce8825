//! Permutations of `[n]` in one-line notation, signed permutations inside
//! `S_2n`, the Bruhat order (tableau criterion) and permutation patterns.
//!
//! All windows are 1-based: `window[i - 1] = w(i)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    window: Vec<usize>,
}

impl Permutation {
    pub fn new(window: Vec<usize>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation(format!("{window:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { window })
    }

    pub(crate) fn from_window_unchecked(window: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(window.clone()).is_ok());
        Permutation { window }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { window: (1..=n).collect() }
    }

    /// The Bruhat-maximal element `[n n-1 ... 1]`.
    pub fn longest_element(n: usize) -> Self {
        Permutation { window: (1..=n).rev().collect() }
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple_reflection(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange(format!("s_{i} in S_{n}")));
        }
        Self::transposition(i, i + 1, n)
    }

    pub fn transposition(a: usize, b: usize, n: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::IndexOutOfRange(format!("({a},{b}) in S_{n}")));
        }
        let mut w = Self::identity(n);
        w.window.swap(a - 1, b - 1);
        Ok(w)
    }

    pub fn size(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// `w(i)` for 1-based `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.window[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Composition `(self * other)(i) = self(other(i))`.
    pub fn multiply(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(Permutation {
            window: other.window.iter().map(|&i| self.window[i - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.window.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { window: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn sign(&self) -> i32 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `I_{j,k}(w)`: the `j`-th smallest element of `{w_1, ..., w_k}`.
    pub fn tableau_entry(&self, j: usize, k: usize) -> Result<usize> {
        if j == 0 || j > k || k > self.size() {
            return Err(Error::IndexOutOfRange(format!(
                "I_{{{j},{k}}} for a permutation of size {}",
                self.size()
            )));
        }
        let mut prefix = self.window[..k].to_vec();
        prefix.sort_unstable();
        Ok(prefix[j - 1])
    }

    /// Bruhat order by the tableau criterion: `v <= w` iff
    /// `I_{j,k}(v) <= I_{j,k}(w)` for all `1 <= j <= k <= n`.
    pub fn bruhat_leq(&self, w: &Permutation) -> Result<bool> {
        if self.size() != w.size() {
            return Err(Error::SizeMismatch(self.size(), w.size()));
        }
        Ok(bruhat_leq_windows(&self.window, &w.window))
    }

    /// Positions (1-based, increasing) of an occurrence of `pattern`, if any.
    pub fn contains_pattern(&self, pattern: &Permutation) -> Option<Vec<usize>> {
        let m = pattern.size();
        if m > self.size() {
            return None;
        }
        if m == 0 {
            return Some(Vec::new());
        }
        let mut chosen = Vec::with_capacity(m);
        if find_occurrence(&self.window, &pattern.window, 0, &mut chosen) {
            Some(chosen.into_iter().map(|p| p + 1).collect())
        } else {
            None
        }
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        self.contains_pattern(pattern).is_none()
    }

    /// `r_{p,q}(w) = |{i <= p : w_i <= q}|`.
    pub fn rank_count(&self, p: usize, q: usize) -> usize {
        self.window[..p].iter().filter(|&&v| v <= q).count()
    }

    /// True iff `w(i)' = w(i')` with `i' = 2n + 1 - i`.
    pub fn is_signed(&self) -> Result<bool> {
        let m = self.size();
        if m % 2 == 1 {
            return Err(Error::OddSize(m));
        }
        Ok((1..=m).all(|i| m + 1 - self.apply(i) == self.apply(m + 1 - i)))
    }

    /// The permutation with the values at positions `j` and `k` exchanged.
    pub fn swap_positions(&self, j: usize, k: usize) -> Permutation {
        let mut window = self.window.clone();
        window.swap(j - 1, k - 1);
        Permutation { window }
    }

    /// The left product `(a b) * w`, exchanging the values `a` and `b`.
    pub fn swap_values(&self, a: usize, b: usize) -> Permutation {
        let window = self
            .window
            .iter()
            .map(|&v| if v == a { b } else if v == b { a } else { v })
            .collect();
        Permutation { window }
    }

    pub fn parse(text: &str) -> Result<Permutation> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']');
        let window: Vec<usize> = if t.contains(',') || t.contains(' ') {
            t.split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("{text}: {e}")))?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("{text}: bad digit {c}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(window)
    }
}

pub(crate) fn bruhat_leq_windows(v: &[usize], w: &[usize]) -> bool {
    let n = v.len();
    let mut pv: Vec<usize> = Vec::with_capacity(n);
    let mut pw: Vec<usize> = Vec::with_capacity(n);
    for k in 0..n {
        let pos = pv.partition_point(|&a| a < v[k]);
        pv.insert(pos, v[k]);
        let pos = pw.partition_point(|&a| a < w[k]);
        pw.insert(pos, w[k]);
        if pv.iter().zip(&pw).any(|(a, b)| a > b) {
            return false;
        }
    }
    true
}

fn find_occurrence(w: &[usize], p: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
    let m = p.len();
    let depth = chosen.len();
    if depth == m {
        return true;
    }
    let remaining = m - depth;
    for pos in start..=w.len() - remaining {
        let val = w[pos];
        let consistent = chosen
            .iter()
            .enumerate()
            .all(|(t, &q)| (w[q] < val) == (p[t] < p[depth]));
        if consistent {
            chosen.push(pos);
            if find_occurrence(w, p, pos + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 9 {
            write!(f, "[")?;
            for v in &self.window {
                write!(f, "{v}")?;
            }
            write!(f, "]")
        } else {
            let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.window.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let window = Vec::<usize>::deserialize(d)?;
        Permutation::new(window).map_err(serde::de::Error::custom)
    }
}

/// Lexicographic enumeration of `S_n`.
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let n = next.len();
        if n > 1 {
            let mut i = n - 1;
            while i > 0 && next[i - 1] > next[i] {
                i -= 1;
            }
            if i > 0 {
                let mut j = n - 1;
                while next[j] < next[i - 1] {
                    j -= 1;
                }
                next.swap(i - 1, j);
                next[i..].reverse();
                self.current = Some(next);
            }
        }
        Some(Permutation { window: cur })
    }
}

pub fn all_permutations(n: usize) -> Permutations {
    Permutations { current: Some((1..=n).collect()) }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `|S_n(pattern)|` by a depth-first scan of prefixes; a prefix containing the
/// pattern is never extended.
pub fn count_avoiders(n: usize, pattern: &Permutation) -> u64 {
    let m = pattern.size();
    if m == 0 {
        return 0;
    }
    if m > n {
        return factorial(n);
    }
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    let mut count = 0;
    extend_avoiding(n, &pattern.window, &mut prefix, &mut used, &mut count);
    count
}

fn extend_avoiding(
    n: usize,
    p: &[usize],
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    count: &mut u64,
) {
    if prefix.len() == n {
        *count += 1;
        return;
    }
    for v in 1..=n {
        if used[v] {
            continue;
        }
        prefix.push(v);
        if !occurrence_ending_at_last(prefix, p) {
            used[v] = true;
            extend_avoiding(n, p, prefix, used, count);
            used[v] = false;
        }
        prefix.pop();
    }
}

fn occurrence_ending_at_last(w: &[usize], p: &[usize]) -> bool {
    let m = p.len();
    let last = w.len() - 1;
    if m == 1 {
        return true;
    }
    if w.len() < m {
        return false;
    }
    // pattern position m-1 is pinned to `last`; search the first m-1 among w[..last]
    let mut chosen = Vec::with_capacity(m);
    fn rec(w: &[usize], p: &[usize], last: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        let m = p.len();
        let depth = chosen.len();
        if depth == m - 1 {
            let val = w[last];
            return chosen
                .iter()
                .enumerate()
                .all(|(t, &q)| (w[q] < val) == (p[t] < p[m - 1]));
        }
        let remaining = m - 1 - depth;
        if last < remaining {
            return false;
        }
        for pos in start..=last - remaining {
            let val = w[pos];
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(t, &q)| (w[q] < val) == (p[t] < p[depth]));
            if consistent {
                chosen.push(pos);
                if rec(w, p, last, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(w, p, last, 0, &mut chosen)
}

/// The lower Bruhat interval `[e, top]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatInterval {
    pub top: Permutation,
    pub members: BTreeSet<Permutation>,
}

impl BruhatInterval {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &Permutation) -> bool {
        self.members.contains(v)
    }
}

/// Largest `n` for which [`lower_interval`] materializes the member set.
pub const MAX_MATERIALIZED_RANK: usize = 8;

/// Materializes `{v : v <= w}`. Refuses `n > 8`; use [`lower_interval_iter`].
pub fn lower_interval(w: &Permutation) -> Result<BruhatInterval> {
    if w.size() > MAX_MATERIALIZED_RANK {
        return Err(Error::Precondition(format!(
            "lower_interval materializes only for n <= {MAX_MATERIALIZED_RANK}; use lower_interval_iter"
        )));
    }
    Ok(BruhatInterval {
        top: w.clone(),
        members: lower_interval_iter(w).collect(),
    })
}

pub fn lower_interval_iter(w: &Permutation) -> impl Iterator<Item = Permutation> + '_ {
    all_permutations(w.size()).filter(move |v| bruhat_leq_windows(&v.window, &w.window))
}

/// A signed permutation: an element of `S_2n` commuting with `i -> 2n + 1 - i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedPermutation(Permutation);

impl SignedPermutation {
    pub fn new(w: Permutation) -> Result<Self> {
        if w.is_signed()? {
            Ok(SignedPermutation(w))
        } else {
            Err(Error::NotSigned(w.to_string()))
        }
    }

    /// Half-size `n` (the window has `2n` entries).
    pub fn rank(&self) -> usize {
        self.0.size() / 2
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn into_permutation(self) -> Permutation {
        self.0
    }

    pub fn multiply(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        Ok(SignedPermutation(self.0.multiply(&other.0)?))
    }

    pub fn inverse(&self) -> SignedPermutation {
        SignedPermutation(self.0.inverse())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// All `2^n n!` signed permutations in `S_2n`, in lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<SignedPermutation> {
    let m = 2 * n;
    let mut out = Vec::new();
    let mut window = vec![0usize; m];
    let mut used = vec![false; m + 1];
    fn rec(
        pos: usize,
        n: usize,
        window: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<SignedPermutation>,
    ) {
        let m = 2 * n;
        if pos == n {
            out.push(SignedPermutation(Permutation::from_window_unchecked(window.clone())));
            return;
        }
        for v in 1..=m {
            let vp = m + 1 - v;
            if used[v] || used[vp] {
                continue;
            }
            window[pos] = v;
            window[m - 1 - pos] = vp;
            used[v] = true;
            used[vp] = true;
            rec(pos + 1, n, window, used, out);
            used[v] = false;
            used[vp] = false;
        }
    }
    rec(0, n, &mut window, &mut used, &mut out);
    out.sort();
    out
}
