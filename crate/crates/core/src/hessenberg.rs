//! Hessenberg spaces in `sl_n` and `sp_2n`: a root ideal plus an explicit
//! Cartan part, validated by `[b, H] ⊆ H`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{
    bracket, q, rational_string, sigma_bar, sigma_matrix, Echelon, Rational, RationalMatrix,
    SparseVec,
};
use crate::roots::{all_roots, demazure_upset, fiber, prime, root_table, Root, RootIdeal, System};

/// How the Cartan part of a space is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CartanPolicy {
    /// The largest admissible part: `{h : α(h) = 0 for positive α ∉ R}`.
    Full,
    /// The smallest admissible part: spanned by `h_α` for `−α ∈ R`, α positive.
    Generated,
    /// Caller-supplied diagonal vectors (length `n` or `2n`).
    Explicit(Vec<Vec<Rational>>),
}

#[derive(Clone, Debug)]
pub struct HessenbergSpace {
    pub system: System,
    pub rank: usize,
    pub ideal: RootIdeal,
    policy: CartanPolicy,
    /// Reduced echelon basis of the Cartan part, as diagonal vectors.
    cartan: Vec<Vec<Rational>>,
    /// Functionals on diagonals vanishing exactly on the Cartan part.
    annihilator: Vec<Vec<Rational>>,
}

impl PartialEq for HessenbergSpace {
    fn eq(&self, other: &Self) -> bool {
        self.system == other.system
            && self.rank == other.rank
            && self.ideal == other.ideal
            && self.cartan == other.cartan
    }
}

impl Eq for HessenbergSpace {}

/// A failing bracket `[g, v] ∉ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketWitness {
    pub generator: String,
    pub vector: String,
    pub bracket: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub ok: bool,
    pub witness: Option<BracketWitness>,
}

fn diag_of(v: &[Rational]) -> RationalMatrix {
    RationalMatrix::diag(v)
}

fn vec_string(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rational_string).collect();
    format!("diag({})", parts.join(","))
}

fn echelon_rows(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let m = vectors.first().map(Vec::len).unwrap_or(0);
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(&to_sparse(v));
    }
    let mut rows: Vec<Vec<Rational>> = ech.basis().map(|r| from_sparse(r, m)).collect();
    rows.sort_by(|a, b| b.cmp(a));
    rows
}

fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

fn from_sparse(v: &SparseVec, m: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); m];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

/// Basis of `{f ∈ ℚ^m : Σ f_k v_k = 0 for all v in vectors}`.
pub fn nullspace(vectors: &[Vec<Rational>], m: usize) -> Vec<Vec<Rational>> {
    // reduced row echelon form, then read off free columns
    let mut rows: Vec<Vec<Rational>> = vectors.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = rows[k][c].clone();
                for col in 0..m {
                    let t = &f * &rows[r][col];
                    rows[k][col] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..m).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); m];
        v[free] = Rational::one();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[k][free].clone();
        }
        out.push(v);
    }
    out
}

/// A basis of the ambient Cartan subalgebra as diagonal vectors.
pub fn ambient_cartan_basis(system: System, rank: usize) -> Vec<Vec<Rational>> {
    let m = system.matrix_size(rank);
    match system {
        System::A => (1..m)
            .map(|i| {
                let mut v = vec![Rational::zero(); m];
                v[i - 1] = q(1);
                v[i] = q(-1);
                v
            })
            .collect(),
        System::C => (1..=rank)
            .map(|a| {
                let mut v = vec![Rational::zero(); m];
                v[a - 1] = q(1);
                v[prime(a, m) - 1] = q(-1);
                v
            })
            .collect(),
    }
}

pub fn in_ambient_cartan(system: System, rank: usize, v: &[Rational]) -> bool {
    let m = system.matrix_size(rank);
    if v.len() != m {
        return false;
    }
    match system {
        System::A => v.iter().sum::<Rational>().is_zero(),
        System::C => (1..=m).all(|i| v[i - 1] == -v[prime(i, m) - 1].clone()),
    }
}

/// The root vector spanning `g_α`: `E_ij` in type A, `σ̄(E_ij)` in type C.
pub fn root_vector(r: &Root) -> RationalMatrix {
    let m = r.matrix_size();
    let e = RationalMatrix::unit(m, r.i, r.j);
    match r.system {
        System::A => e,
        System::C => sigma_bar(&e).expect("even size"),
    }
}

/// The diagonal of `[E_α, E_{−α}]`.
pub fn coroot_vector(r: &Root) -> Vec<Rational> {
    let h = bracket(&root_vector(r), &root_vector(&r.negate())).expect("same size");
    (1..=r.matrix_size()).map(|i| h.get(i, i)).collect()
}

/// `α(h)` for a diagonal `h`.
pub fn root_value(r: &Root, h: &[Rational]) -> Rational {
    &h[r.i - 1] - &h[r.j - 1]
}

fn generated_cartan(roots: &BTreeSet<Root>) -> Vec<Vec<Rational>> {
    roots
        .iter()
        .filter(|r| !r.is_positive())
        .map(|r| coroot_vector(&r.negate()))
        .collect()
}

fn full_cartan(system: System, rank: usize, roots: &BTreeSet<Root>) -> Vec<Vec<Rational>> {
    let basis = ambient_cartan_basis(system, rank);
    let missing: Vec<Root> = all_roots(system, rank)
        .into_iter()
        .filter(|r| r.is_positive() && !roots.contains(r))
        .collect();
    // coefficients c with α(Σ c_k b_k) = 0 for every missing positive α
    let constraints: Vec<Vec<Rational>> = missing
        .iter()
        .map(|a| basis.iter().map(|b| root_value(a, b)).collect())
        .collect();
    let m = system.matrix_size(rank);
    nullspace(&constraints, basis.len())
        .into_iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); m];
            for (ck, bk) in c.iter().zip(&basis) {
                for (x, y) in v.iter_mut().zip(bk) {
                    *x += ck * y;
                }
            }
            v
        })
        .collect()
}

impl HessenbergSpace {
    /// Builds a candidate space without checking `[b, H] ⊆ H`.
    pub fn candidate(
        system: System,
        rank: usize,
        roots: BTreeSet<Root>,
        policy: CartanPolicy,
    ) -> Result<HessenbergSpace> {
        for r in &roots {
            if r.system != system || r.rank != rank {
                return Err(Error::InvalidSpace(format!("root {r} outside {system}{rank}")));
            }
        }
        let m = system.matrix_size(rank);
        let raw = match &policy {
            CartanPolicy::Full => full_cartan(system, rank, &roots),
            CartanPolicy::Generated => generated_cartan(&roots),
            CartanPolicy::Explicit(vs) => {
                for v in vs {
                    if !in_ambient_cartan(system, rank, v) {
                        return Err(Error::InvalidSpace(format!(
                            "{} is not in the Cartan subalgebra",
                            vec_string(v)
                        )));
                    }
                }
                vs.clone()
            }
        };
        let cartan = if raw.is_empty() { Vec::new() } else { echelon_rows(&raw) };
        let annihilator = nullspace(&cartan, m);
        Ok(HessenbergSpace {
            system,
            rank,
            ideal: RootIdeal { system, rank, roots },
            policy,
            cartan,
            annihilator,
        })
    }

    /// Builds and validates.
    pub fn new(
        system: System,
        rank: usize,
        roots: BTreeSet<Root>,
        policy: CartanPolicy,
    ) -> Result<HessenbergSpace> {
        let h = Self::candidate(system, rank, roots, policy)?;
        let v = h.validate();
        match v.witness {
            None => Ok(h),
            Some(w) => Err(Error::InvalidSpace(format!(
                "[{}, {}] is not in H",
                w.generator, w.vector
            ))),
        }
    }

    pub fn from_pairs(
        system: System,
        rank: usize,
        pairs: &[(usize, usize)],
        policy: CartanPolicy,
    ) -> Result<HessenbergSpace> {
        let roots = pairs
            .iter()
            .map(|&(i, j)| Root::new(system, rank, i, j))
            .collect::<Result<BTreeSet<_>>>()?;
        Self::new(system, rank, roots, policy)
    }

    /// The whole algebra.
    pub fn full(system: System, rank: usize) -> HessenbergSpace {
        Self::new(system, rank, all_roots(system, rank).into_iter().collect(), CartanPolicy::Full)
            .expect("g is a Hessenberg space")
    }

    /// The Borel subalgebra.
    pub fn borel(system: System, rank: usize) -> HessenbergSpace {
        let roots = all_roots(system, rank).into_iter().filter(Root::is_positive).collect();
        Self::new(system, rank, roots, CartanPolicy::Full).expect("b is a Hessenberg space")
    }

    pub fn matrix_size(&self) -> usize {
        self.system.matrix_size(self.rank)
    }

    pub fn roots(&self) -> &BTreeSet<Root> {
        &self.ideal.roots
    }

    pub fn contains_root(&self, r: &Root) -> bool {
        self.ideal.roots.contains(r)
    }

    pub fn policy(&self) -> &CartanPolicy {
        &self.policy
    }

    pub fn cartan_basis(&self) -> &[Vec<Rational>] {
        &self.cartan
    }

    pub fn cartan_annihilator(&self) -> &[Vec<Rational>] {
        &self.annihilator
    }

    pub fn cartan_dim(&self) -> usize {
        self.cartan.len()
    }

    pub fn dim(&self) -> usize {
        self.ideal.roots.len() + self.cartan.len()
    }

    pub fn ambient_dim(&self) -> usize {
        let m = self.matrix_size();
        match self.system {
            System::A => m * m - 1,
            System::C => self.rank * (2 * self.rank + 1),
        }
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    /// Root vectors followed by the Cartan diagonals.
    pub fn basis_matrices(&self) -> Vec<RationalMatrix> {
        self.ideal
            .roots
            .iter()
            .map(root_vector)
            .chain(self.cartan.iter().map(|v| diag_of(v)))
            .collect()
    }

    /// Exact membership of `y` (σ-fixedness is required in type C).
    pub fn contains(&self, y: &RationalMatrix) -> bool {
        let m = self.matrix_size();
        if y.rank() != m {
            return false;
        }
        if self.system == System::C && sigma_matrix(y).map(|s| &s != y).unwrap_or(true) {
            return false;
        }
        for (i, j, _) in y.entries() {
            if i != j {
                let r = Root::new(self.system, self.rank, i, j).expect("off-diagonal");
                if !self.ideal.roots.contains(&r) {
                    return false;
                }
            }
        }
        self.diagonal_in_cartan(|i| y.get(i, i))
    }

    pub(crate) fn diagonal_in_cartan(&self, diag: impl Fn(usize) -> Rational) -> bool {
        let m = self.matrix_size();
        let d: Vec<Rational> = (1..=m).map(diag).collect();
        self.annihilator
            .iter()
            .all(|f| f.iter().zip(&d).map(|(a, b)| a * b).sum::<Rational>().is_zero())
    }

    /// Checks `[g, v] ∈ H` for the generators `g` of `b` (a Cartan basis and
    /// the simple root vectors) and every basis vector `v` of `H`.
    pub fn validate(&self) -> Validation {
        let mut generators: Vec<(String, RationalMatrix)> = ambient_cartan_basis(self.system, self.rank)
            .into_iter()
            .map(|v| (vec_string(&v), diag_of(&v)))
            .collect();
        for r in simple_roots(self.system, self.rank) {
            generators.push((format!("E{r}"), root_vector(&r)));
        }
        let vectors: Vec<(String, RationalMatrix)> = self
            .ideal
            .roots
            .iter()
            .map(|r| (format!("E{r}"), root_vector(r)))
            .chain(self.cartan.iter().map(|v| (vec_string(v), diag_of(v))))
            .collect();
        for (gname, g) in &generators {
            for (vname, v) in &vectors {
                let b = bracket(g, v).expect("same size");
                if !self.contains(&b) {
                    return Validation {
                        ok: false,
                        witness: Some(BracketWitness {
                            generator: gname.clone(),
                            vector: vname.clone(),
                            bracket: b,
                        }),
                    };
                }
            }
        }
        Validation { ok: true, witness: None }
    }

    /// Span comparison with another space of the same system.
    pub fn same_subspace(&self, other: &HessenbergSpace) -> bool {
        self.system == other.system
            && self.rank == other.rank
            && self.ideal == other.ideal
            && self.cartan == other.cartan
    }

    pub fn is_subspace_of(&self, other: &HessenbergSpace) -> bool {
        self.basis_matrices().iter().all(|b| other.contains(b))
    }

    /// Hessenberg vector of a type A space containing `b`.
    pub fn to_vector(&self) -> Option<HessenbergVector> {
        if self.system != System::A || !HessenbergSpace::borel(System::A, self.rank).is_subspace_of(self) {
            return None;
        }
        let n = self.rank;
        let h = (1..=n)
            .map(|j| {
                (1..=n)
                    .filter(|&i| i == j || self.contains_root(&Root::a(n, i, j).expect("valid")))
                    .max()
                    .expect("diagonal")
            })
            .collect();
        HessenbergVector::new(h).ok()
    }
}

pub fn simple_roots(system: System, rank: usize) -> Vec<Root> {
    let m = system.matrix_size(rank);
    match system {
        System::A => (1..m).map(|i| Root::a(rank, i, i + 1).expect("valid")).collect(),
        System::C => (1..=rank).map(|i| Root::c(rank, i, i + 1).expect("valid")).collect(),
    }
}

impl fmt::Display for HessenbergSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.ideal.roots.iter().map(|r| format!("({},{})", r.i, r.j)).collect();
        write!(
            f,
            "H[{}{}; roots {}; cartan dim {}]",
            self.system,
            self.rank,
            pairs.join(" "),
            self.cartan.len()
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CartanJson {
    Named(String),
    List(Vec<Vec<String>>),
}

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    system: System,
    rank: usize,
    roots: Vec<[usize; 2]>,
    cartan: CartanJson,
}

impl Serialize for HessenbergSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let cartan = match &self.policy {
            CartanPolicy::Full => CartanJson::Named("full".into()),
            CartanPolicy::Generated => CartanJson::Named("generated".into()),
            CartanPolicy::Explicit(vs) => CartanJson::List(
                vs.iter().map(|v| v.iter().map(rational_string).collect()).collect(),
            ),
        };
        SpaceJson {
            system: self.system,
            rank: self.rank,
            roots: self.ideal.roots.iter().map(|r| [r.i, r.j]).collect(),
            cartan,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HessenbergSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SpaceJson::deserialize(d)?;
        let policy = match j.cartan {
            CartanJson::Named(s) if s == "full" => CartanPolicy::Full,
            CartanJson::Named(s) if s == "generated" => CartanPolicy::Generated,
            CartanJson::Named(s) => return Err(D::Error::custom(format!("unknown cartan policy {s}"))),
            CartanJson::List(vs) => CartanPolicy::Explicit(
                vs.iter()
                    .map(|v| v.iter().map(|x| crate::linalg::parse_rational(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(D::Error::custom)?,
            ),
        };
        let pairs: Vec<(usize, usize)> = j.roots.iter().map(|p| (p[0], p[1])).collect();
        HessenbergSpace::from_pairs(j.system, j.rank, &pairs, policy).map_err(D::Error::custom)
    }
}

/// Weakly increasing `h` with `h_j >= j` and `h_n = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HessenbergVector {
    pub h: Vec<usize>,
}

impl HessenbergVector {
    pub fn new(h: Vec<usize>) -> Result<Self> {
        let n = h.len();
        for (k, &v) in h.iter().enumerate() {
            if v < k + 1 || v > n {
                return Err(Error::InvalidVector(format!("{h:?}: entry {} out of range", k + 1)));
            }
            if k > 0 && h[k - 1] > v {
                return Err(Error::InvalidVector(format!("{h:?} is not weakly increasing")));
            }
        }
        Ok(HessenbergVector { h })
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }
}

/// All Hessenberg vectors of length `n`.
pub fn all_vectors(n: usize) -> Vec<HessenbergVector> {
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<HessenbergVector>) {
        let k = cur.len();
        if k == n {
            out.push(HessenbergVector { h: cur.clone() });
            return;
        }
        let lo = (k + 1).max(cur.last().copied().unwrap_or(0));
        for v in lo..=n {
            cur.push(v);
            rec(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// The space `{x : x V_i ⊆ V_{h_i}}` ∩ `sl_n`, i.e. roots `(i,j)` with `i <= h_j`.
pub fn from_vector(h: &HessenbergVector) -> Result<HessenbergSpace> {
    let h = HessenbergVector::new(h.h.clone())?;
    let n = h.n();
    let mut roots = BTreeSet::new();
    for j in 1..=n {
        for i in 1..=h.h[j - 1] {
            if i != j {
                roots.insert(Root::a(n, i, j)?);
            }
        }
    }
    HessenbergSpace::new(System::A, n, roots, CartanPolicy::Full)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    MinusTheta,
    Beta1,
    Beta2,
}

/// `H(−θ̄)` omits `g_{−θ}`; `H(β̄_1)` also omits `ε_{n−1} − ε_1`;
/// `H(β̄_2)` also omits `ε_n − ε_2`. All with the full Cartan part.
pub fn special_space(kind: SpecialKind, n: usize) -> Result<HessenbergSpace> {
    let min = if kind == SpecialKind::MinusTheta { 2 } else { 3 };
    if n < min {
        return Err(Error::RankTooSmall(format!("{kind:?} needs n >= {min}, got {n}")));
    }
    let mut omit = vec![(n, 1)];
    match kind {
        SpecialKind::MinusTheta => {}
        SpecialKind::Beta1 => omit.push((n - 1, 1)),
        SpecialKind::Beta2 => omit.push((n, 2)),
    }
    let roots = all_roots(System::A, n)
        .into_iter()
        .filter(|r| !omit.contains(&(r.i, r.j)))
        .collect();
    HessenbergSpace::new(System::A, n, roots, CartanPolicy::Full)
}

/// The B-submodule generated by `E_γ`: the Demazure up-set of γ with the
/// Cartan part spanned by `h_pq` for the negative roots `(q, p)` it contains.
pub fn demazure_space(gamma: &Root) -> Result<HessenbergSpace> {
    if gamma.system != System::A {
        return Err(Error::Precondition("Demazure spaces are built in type A".into()));
    }
    let up = demazure_upset(gamma);
    HessenbergSpace::new(System::A, gamma.rank, up.roots, CartanPolicy::Generated)
}

/// All upper ideals of Φ under the Demazure order, in a canonical order.
pub fn upper_ideals(system: System, rank: usize, max_missing: Option<usize>) -> Vec<BTreeSet<Root>> {
    let table = root_table(system, rank);
    let mut order: Vec<Root> = table.roots.clone();
    let upsize = |r: &Root| table.roots.iter().filter(|b| table.leq(r, b)).count();
    order.sort_by_key(|r| (upsize(r), *r));
    let above: Vec<Vec<Root>> = order
        .iter()
        .map(|r| table.roots.iter().filter(|b| *b != r && table.leq(r, b)).copied().collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = BTreeSet::new();
    fn rec(
        k: usize,
        order: &[Root],
        above: &[Vec<Root>],
        chosen: &mut BTreeSet<Root>,
        missing: usize,
        max_missing: Option<usize>,
        out: &mut Vec<BTreeSet<Root>>,
    ) {
        if k == order.len() {
            out.push(chosen.clone());
            return;
        }
        let r = order[k];
        if above[k].iter().all(|b| chosen.contains(b)) {
            chosen.insert(r);
            rec(k + 1, order, above, chosen, missing, max_missing, out);
            chosen.remove(&r);
        }
        if max_missing.map_or(true, |m| missing < m) {
            rec(k + 1, order, above, chosen, missing + 1, max_missing, out);
        }
    }
    rec(0, &order, &above, &mut chosen, 0, max_missing, &mut out);
    out.sort();
    out
}

/// Every validated space whose codimension lies in `codim`, one per
/// (ideal, Cartan part) combination allowed by the policy.
pub fn enumerate_spaces(
    system: System,
    rank: usize,
    codim: std::ops::RangeInclusive<usize>,
    policies: &[CartanPolicy],
) -> Vec<HessenbergSpace> {
    let mut out: Vec<HessenbergSpace> = Vec::new();
    for roots in upper_ideals(system, rank, Some(*codim.end())) {
        for policy in policies {
            let Ok(h) = HessenbergSpace::new(system, rank, roots.clone(), policy.clone()) else {
                continue;
            };
            if codim.contains(&h.codim()) && !out.iter().any(|o| o.same_subspace(&h)) {
                out.push(h);
            }
        }
    }
    out
}

/// The type A space with roots `fold⁻¹(R_C)` and Cartan part
/// `(H_C ∩ h^σ) + span{h_ij : ±(ε_i − ε_j) ∈ Φ_H}`.
pub fn lift_c_to_a(hc: &HessenbergSpace) -> Result<HessenbergSpace> {
    if hc.system != System::C {
        return Err(Error::Precondition("lift expects a type C space".into()));
    }
    if let Some(w) = hc.validate().witness {
        return Err(Error::InvalidSpace(format!("[{}, {}] is not in H_C", w.generator, w.vector)));
    }
    let n = hc.rank;
    let m = 2 * n;
    let mut roots = BTreeSet::new();
    for r in hc.roots() {
        roots.extend(fiber(r)?);
    }
    let mut cartan: Vec<Vec<Rational>> = hc.cartan_basis().to_vec();
    for r in &roots {
        if r.i < r.j && roots.contains(&r.negate()) {
            let mut v = vec![Rational::zero(); m];
            v[r.i - 1] = q(1);
            v[r.j - 1] = q(-1);
            cartan.push(v);
        }
    }
    HessenbergSpace::new(System::A, m, roots, CartanPolicy::Explicit(cartan))
}

/// `σ(H) = H`.
pub fn is_sigma_stable(h: &HessenbergSpace) -> Result<bool> {
    if h.system != System::A || h.rank % 2 == 1 {
        return Err(Error::OddSize(h.rank));
    }
    for b in h.basis_matrices() {
        if !h.contains(&sigma_matrix(&b)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A basis of `H^σ`, computed as `σ̄(basis of H)` reduced to an independent set.
pub fn sigma_fixed_subspace(h: &HessenbergSpace) -> Result<Vec<RationalMatrix>> {
    if !is_sigma_stable(h)? {
        return Err(Error::NotSigmaStable);
    }
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for b in h.basis_matrices() {
        let s = sigma_bar(&b)?;
        if ech.insert(&s.to_sparse_vec()) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Exact equality `H^σ = H_C` of subspaces of `sl_2n`.
pub fn sigma_fixed_matches(h: &HessenbergSpace, hc: &HessenbergSpace) -> Result<bool> {
    let fixed = sigma_fixed_subspace(h)?;
    let hc_basis = hc.basis_matrices();
    if fixed.len() != hc_basis.len() {
        return Ok(false);
    }
    Ok(fixed.iter().all(|x| hc.contains(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_borel_validate() {
        for n in 2..=4 {
            assert!(HessenbergSpace::full(System::A, n).validate().ok);
            assert_eq!(HessenbergSpace::full(System::A, n).codim(), 0);
            assert!(HessenbergSpace::borel(System::A, n).validate().ok);
        }
        assert_eq!(HessenbergSpace::full(System::C, 2).dim(), 10);
    }

    #[test]
    fn single_root_fails_with_witness() {
        let h = HessenbergSpace::candidate(
            System::A,
            3,
            [Root::a(3, 1, 2).unwrap()].into_iter().collect(),
            CartanPolicy::Explicit(vec![]),
        )
        .unwrap();
        let v = h.validate();
        assert!(!v.ok);
        let w = v.witness.unwrap();
        assert_eq!(w.bracket.nnz(), 1);
        assert_eq!(w.bracket.entries().next().map(|(i, j, _)| (i, j)), Some((1, 3)));
    }

    #[test]
    fn vectors() {
        let n = 4;
        let full = from_vector(&HessenbergVector::new(vec![4, 4, 4, 4]).unwrap()).unwrap();
        assert!(full.same_subspace(&HessenbergSpace::full(System::A, n)));
        let b = from_vector(&HessenbergVector::new(vec![1, 2, 3, 4]).unwrap()).unwrap();
        assert!(b.same_subspace(&HessenbergSpace::borel(System::A, n)));
        let mt = special_space(SpecialKind::MinusTheta, n).unwrap();
        assert_eq!(mt.to_vector().unwrap().h, vec![3, 4, 4, 4]);
        let b1 = special_space(SpecialKind::Beta1, n).unwrap();
        assert_eq!(b1.to_vector().unwrap().h, vec![2, 4, 4, 4]);
        assert!(HessenbergVector::new(vec![2, 1, 3]).is_err());
        assert!(HessenbergVector::new(vec![1, 1, 3]).is_err());
    }

    #[test]
    fn special_codims() {
        assert_eq!(special_space(SpecialKind::MinusTheta, 4).unwrap().codim(), 1);
        assert_eq!(special_space(SpecialKind::Beta1, 4).unwrap().codim(), 2);
        assert_eq!(special_space(SpecialKind::Beta2, 4).unwrap().codim(), 2);
        assert!(special_space(SpecialKind::Beta1, 2).is_err());
    }

    #[test]
    fn nullspace_basic() {
        let ns = nullspace(&[vec![q(1), q(1), q(0)]], 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&v[0] + &v[1]).is_zero());
        }
    }

    #[test]
    fn json_roundtrip() {
        let h = special_space(SpecialKind::MinusTheta, 3).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.contains(r#""cartan":"full""#));
        let back: HessenbergSpace = serde_json::from_str(&s).unwrap();
        assert!(back.same_subspace(&h));
        let explicit = r#"{"system":"A","rank":2,"roots":[[1,2]],"cartan":[["1","-1"]]}"#;
        let b: HessenbergSpace = serde_json::from_str(explicit).unwrap();
        assert!(b.same_subspace(&HessenbergSpace::borel(System::A, 2)));
    }
}
