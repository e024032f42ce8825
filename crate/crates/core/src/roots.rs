//! Root systems of types A_{n-1} (inside `sl_n`) and C_n (inside `sp_2n`).
//!
//! A type A root ε_i − ε_j is the index pair `(i, j)` in `[n]`. A type C root
//! is stored as a folded class `{(i,j), (j',i')}` of pairs in `[2n]`, with
//! `i' = 2n + 1 - i`; the lexicographically least member is the stored pair.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weyl::{all_permutations, factorial, Permutation, SignedPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum System {
    A,
    C,
}

impl System {
    /// Size of the defining matrices for the given rank (`n` or `2n`).
    pub fn matrix_size(self, rank: usize) -> usize {
        match self {
            System::A => rank,
            System::C => 2 * rank,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::A => write!(f, "A"),
            System::C => write!(f, "C"),
        }
    }
}

/// `i' = m + 1 - i` for matrix size `m`.
#[inline]
pub fn prime(i: usize, m: usize) -> usize {
    m + 1 - i
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub system: System,
    /// `n` for `sl_n`, `n` for `sp_2n`.
    pub rank: usize,
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn a(n: usize, i: usize, j: usize) -> Result<Root> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::IndexOutOfRange(format!("root ({i},{j}) in A with n={n}")));
        }
        Ok(Root { system: System::A, rank: n, i, j })
    }

    /// The type C class of the pair `(i, j)` of `[2n]`.
    pub fn c(n: usize, i: usize, j: usize) -> Result<Root> {
        let m = 2 * n;
        if i == 0 || j == 0 || i > m || j > m || i == j {
            return Err(Error::IndexOutOfRange(format!("root ({i},{j}) in C with n={n}")));
        }
        let (pi, pj) = (prime(j, m), prime(i, m));
        let (i, j) = if (i, j) <= (pi, pj) { (i, j) } else { (pi, pj) };
        Ok(Root { system: System::C, rank: n, i, j })
    }

    pub fn new(system: System, rank: usize, i: usize, j: usize) -> Result<Root> {
        match system {
            System::A => Root::a(rank, i, j),
            System::C => Root::c(rank, i, j),
        }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn matrix_size(&self) -> usize {
        self.system.matrix_size(self.rank)
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn negate(&self) -> Root {
        Root::new(self.system, self.rank, self.j, self.i).expect("negation of a root")
    }

    /// Long type C roots are the singleton classes `(i, i')`.
    pub fn is_long(&self) -> bool {
        self.system == System::C && self.j == prime(self.i, self.matrix_size())
    }

    /// Coordinates: `e_i - e_j` in `Z^n` for type A; for type C the doubled
    /// vector `2φ(ε_i − ε_j)` in `Z^n`, so short roots are `±e_a ± e_b` and
    /// long roots `±2e_a`.
    pub fn coords(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        match self.system {
            System::A => {
                v[self.i - 1] += 1;
                v[self.j - 1] -= 1;
            }
            System::C => {
                let m = self.matrix_size();
                let mut put = |idx: usize, s: i64| {
                    if idx <= self.rank {
                        v[idx - 1] += s;
                    } else {
                        v[prime(idx, m) - 1] -= s;
                    }
                };
                put(self.i, 1);
                put(self.j, -1);
            }
        }
        v
    }

    /// The matrix positions whose root space is this root: one pair in type
    /// A, the whole class in type C.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        match self.system {
            System::A => vec![(self.i, self.j)],
            System::C => fiber_pairs(self),
        }
    }
}

fn fiber_pairs(r: &Root) -> Vec<(usize, usize)> {
    let m = r.matrix_size();
    let other = (prime(r.j, m), prime(r.i, m));
    if other == (r.i, r.j) {
        vec![(r.i, r.j)]
    } else {
        vec![(r.i, r.j), other]
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.system, self.i, self.j)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct RootJson {
    system: System,
    rank: usize,
    pair: [usize; 2],
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootJson { system: self.system, rank: self.rank, pair: [self.i, self.j] }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RootJson::deserialize(d)?;
        Root::new(j.system, j.rank, j.pair[0], j.pair[1]).map_err(serde::de::Error::custom)
    }
}

/// All roots, sorted.
pub fn all_roots(system: System, rank: usize) -> Vec<Root> {
    let m = system.matrix_size(rank);
    let mut set = BTreeSet::new();
    for i in 1..=m {
        for j in 1..=m {
            if i != j {
                set.insert(Root::new(system, rank, i, j).expect("in range"));
            }
        }
    }
    set.into_iter().collect()
}

pub fn positive_roots(system: System, rank: usize) -> Vec<Root> {
    all_roots(system, rank).into_iter().filter(Root::is_positive).collect()
}

/// θ: `ε_1 − ε_n` in type A, the long class of `(1, 2n)` in type C.
pub fn highest_root(system: System, rank: usize) -> Result<Root> {
    if rank < 1 || (system == System::A && rank < 2) {
        return Err(Error::RankTooSmall(format!("{system} rank {rank}")));
    }
    Root::new(system, rank, 1, system.matrix_size(rank))
}

fn check_same(a: &Root, b: &Root) -> Result<()> {
    if a.system != b.system || a.rank != b.rank {
        return Err(Error::Precondition(format!("roots {a} and {b} live in different systems")));
    }
    Ok(())
}

/// Coefficients of a root-lattice vector in the simple-root basis.
fn simple_coords(system: System, v: &[i64]) -> Vec<i64> {
    let n = v.len();
    let mut out = Vec::with_capacity(n);
    let mut acc = 0;
    for &x in &v[..n.saturating_sub(1)] {
        acc += x;
        out.push(acc);
    }
    if system == System::C {
        // simple roots e_a - e_{a+1} and 2e_n in doubled coordinates
        let total: i64 = v.iter().sum();
        out.push(total / 2);
    }
    out
}

/// `γ ≼ β`: β − γ is a nonnegative combination of simple roots.
pub fn preceq(gamma: &Root, beta: &Root) -> Result<bool> {
    check_same(gamma, beta)?;
    let (g, b) = (gamma.coords(), beta.coords());
    let diff: Vec<i64> = b.iter().zip(&g).map(|(x, y)| x - y).collect();
    Ok(simple_coords(gamma.system, &diff).iter().all(|&c| c >= 0))
}

/// Per-rank tables of the Demazure order, built once.
pub struct RootTable {
    pub system: System,
    pub rank: usize,
    pub roots: Vec<Root>,
    index: HashMap<Root, usize>,
    reach: Vec<Vec<bool>>,
}

impl RootTable {
    fn build(system: System, rank: usize) -> RootTable {
        let roots = all_roots(system, rank);
        let index: HashMap<Root, usize> = roots.iter().enumerate().map(|(k, r)| (*r, k)).collect();
        let reach = match system {
            System::A => roots
                .iter()
                .map(|g| roots.iter().map(|b| b.i <= g.i && b.j >= g.j).collect())
                .collect(),
            System::C => proctor_reachability(&roots),
        };
        RootTable { system, rank, roots, index, reach }
    }

    pub fn index_of(&self, r: &Root) -> usize {
        self.index[r]
    }

    pub fn leq(&self, gamma: &Root, beta: &Root) -> bool {
        self.reach[self.index[gamma]][self.index[beta]]
    }
}

/// Reachability under steps `γ ↦ γ + m·α` (α positive, m ≥ 1) staying in Φ.
pub fn proctor_reachability(roots: &[Root]) -> Vec<Vec<bool>> {
    let coords: Vec<Vec<i64>> = roots.iter().map(Root::coords).collect();
    let by_coords: HashMap<Vec<i64>, usize> =
        coords.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
    let positives: Vec<&Vec<i64>> = roots
        .iter()
        .zip(&coords)
        .filter(|(r, _)| r.is_positive())
        .map(|(_, c)| c)
        .collect();
    let bound = coords
        .iter()
        .flat_map(|c| c.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0)
        * 2;
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); roots.len()];
    for (k, c) in coords.iter().enumerate() {
        for a in &positives {
            for m in 1..=bound.max(1) {
                let next: Vec<i64> = c.iter().zip(a.iter()).map(|(x, y)| x + m * y).collect();
                if let Some(&t) = by_coords.get(&next) {
                    succ[k].push(t);
                }
            }
        }
    }
    (0..roots.len())
        .map(|s| {
            let mut seen = vec![false; roots.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &t in &succ[u] {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
            seen
        })
        .collect()
}

pub fn root_table(system: System, rank: usize) -> Arc<RootTable> {
    static CACHE: OnceLock<Mutex<HashMap<(System, usize), Arc<RootTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("root table cache poisoned");
    guard
        .entry((system, rank))
        .or_insert_with(|| Arc::new(RootTable::build(system, rank)))
        .clone()
}

/// The Demazure order `γ ≤ β`.
pub fn leq_demazure(gamma: &Root, beta: &Root) -> Result<bool> {
    check_same(gamma, beta)?;
    Ok(match gamma.system {
        System::A => beta.i <= gamma.i && beta.j >= gamma.j,
        System::C => root_table(System::C, gamma.rank).leq(gamma, beta),
    })
}

/// An upward-closed (for `≤`) set of roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootIdeal {
    pub system: System,
    pub rank: usize,
    pub roots: BTreeSet<Root>,
}

impl RootIdeal {
    /// Validates upward closure.
    pub fn new(system: System, rank: usize, roots: BTreeSet<Root>) -> Result<RootIdeal> {
        let ideal = RootIdeal { system, rank, roots };
        if let Some((g, b)) = ideal.closure_violation() {
            return Err(Error::InvalidSpace(format!("{g} in set but {b} >= {g} missing")));
        }
        Ok(ideal)
    }

    /// A pair `(γ, β)` with `γ` in the set, `γ ≤ β` and `β` missing.
    pub fn closure_violation(&self) -> Option<(Root, Root)> {
        let table = root_table(self.system, self.rank);
        for g in &self.roots {
            for b in &table.roots {
                if !self.roots.contains(b) && table.leq(g, b) {
                    return Some((*g, *b));
                }
            }
        }
        None
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

pub fn demazure_upset(gamma: &Root) -> RootIdeal {
    let table = root_table(gamma.system, gamma.rank);
    let roots = table.roots.iter().filter(|b| table.leq(gamma, b)).copied().collect();
    RootIdeal { system: gamma.system, rank: gamma.rank, roots }
}

/// `w(ε_i − ε_j) = ε_{w(i)} − ε_{w(j)}`; type C needs a signed `w` in `S_2n`.
pub fn weyl_action(w: &Permutation, gamma: &Root) -> Result<Root> {
    let m = gamma.matrix_size();
    if w.size() != m {
        return Err(Error::SizeMismatch(w.size(), m));
    }
    if gamma.system == System::C && !w.is_signed()? {
        return Err(Error::NotSigned(w.to_string()));
    }
    Root::new(gamma.system, gamma.rank, w.apply(gamma.i), w.apply(gamma.j))
}

pub fn weyl_action_signed(w: &SignedPermutation, gamma: &Root) -> Result<Root> {
    weyl_action(w.as_permutation(), gamma)
}

/// The folding map from type A roots in `[2n]` to type C classes.
pub fn fold(gamma: &Root) -> Result<Root> {
    if gamma.system != System::A || gamma.rank % 2 == 1 {
        return Err(Error::OddSize(gamma.rank));
    }
    Root::c(gamma.rank / 2, gamma.i, gamma.j)
}

/// The type A roots folding onto a type C class (a σ-orbit of size 1 or 2).
pub fn fiber(gamma: &Root) -> Result<Vec<Root>> {
    if gamma.system != System::C {
        return Err(Error::Precondition(format!("{gamma} is not a type C root")));
    }
    fiber_pairs(gamma)
        .into_iter()
        .map(|(i, j)| Root::a(2 * gamma.rank, i, j))
        .collect()
}

/// The stabilizer `W_θ = {w : w(θ) = θ} = <s_2, ..., s_{n-2}>` in `S_n`.
#[derive(Clone, Debug)]
pub struct ThetaStabilizer {
    pub n: usize,
    pub generators: Vec<Permutation>,
    /// The reflection `(1, n)`.
    pub s_theta: Permutation,
}

impl ThetaStabilizer {
    pub fn contains(&self, w: &Permutation) -> bool {
        w.size() == self.n && w.apply(1) == 1 && w.apply(self.n) == self.n
    }

    pub fn order(&self) -> u64 {
        factorial(self.n - 2)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        all_permutations(self.n).filter(|w| self.contains(w)).collect()
    }

    /// The coset `w_0 W_θ`.
    pub fn w0_coset(&self) -> Vec<Permutation> {
        let w0 = Permutation::longest_element(self.n);
        self.elements()
            .iter()
            .map(|u| w0.multiply(u).expect("same size"))
            .collect()
    }
}

pub fn theta_stabilizer(n: usize) -> Result<ThetaStabilizer> {
    if n < 2 {
        return Err(Error::RankTooSmall(format!("theta stabilizer needs n >= 2, got {n}")));
    }
    let generators = (2..n.saturating_sub(1))
        .map(|i| Permutation::simple_reflection(i, n))
        .collect::<Result<_>>()?;
    Ok(ThetaStabilizer { n, generators, s_theta: Permutation::transposition(1, n, n)? })
}
