use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{
    codim1_component_fixed_points, equality_verdict, euler_profile_count, hw_adjoint, s_i_w0, schubert_poincare,
    q_factorial, q_int, CellOptions, HessenbergModel, QPoly, Verdict,
};
use crate::error::{Error, Result};
use crate::hessenberg::{
    enumerate_spaces, is_sigma_stable, lift_c_to_a, sigma_fixed_matches, special_space, CartanPolicy, SpecialKind,
};
use crate::linalg::parse_rational;
use crate::roots::{all_roots, fiber, fold, leq_demazure, positive_roots, weyl_action, Root, RootIdeal, System};
use crate::weyl::{factorial, lower_interval_iter, signed_permutations, Permutation};

const TABLE1: &str = include_str!("../../corpus/table1.json");
const EXAMPLES: &str = include_str!("../../corpus/examples.json");
const FOLDING: &str = include_str!("../../corpus/folding.json");
const FORMULAS: &str = include_str!("../../corpus/formulas.json");

pub const CORPORA: [&str; 4] = ["table1", "examples", "folding", "formulas"];

pub fn corpus_text(name: &str) -> Result<&'static str> {
    match name {
        "table1" => Ok(TABLE1),
        "examples" => Ok(EXAMPLES),
        "folding" => Ok(FOLDING),
        "formulas" => Ok(FORMULAS),
        other => Err(Error::Schema(format!("no corpus named {other}; expected one of {CORPORA:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusLine {
    pub id: String,
    pub comment: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub corpus: String,
    pub lines: Vec<CorpusLine>,
}

impl CorpusSummary {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
}

#[derive(Deserialize)]
struct Table1 {
    rows: Vec<Table1Row>,
}

#[derive(Deserialize)]
struct Table1Row {
    id: String,
    kind: String,
    w: Permutation,
    comment: String,
    #[serde(default)]
    model: Option<HessenbergModel>,
    #[serde(default)]
    gamma: Option<Root>,
}

#[derive(Deserialize)]
struct Entries {
    entries: Vec<Entry>,
}

#[derive(Deserialize)]
struct Entry {
    id: String,
    kind: String,
    comment: String,
    #[serde(default)]
    w: Option<Permutation>,
    #[serde(default)]
    expect: Option<String>,
    #[serde(default)]
    model: Option<HessenbergModel>,
    #[serde(default)]
    support: Option<String>,
    #[serde(default)]
    n: Option<serde_json::Value>,
    #[serde(default)]
    policies: Vec<String>,
    #[serde(default)]
    sample: Option<usize>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    max_support: Option<usize>,
    #[serde(default)]
    c: Option<String>,
    #[serde(default)]
    d: Option<String>,
}

impl Entry {
    fn range(&self) -> Result<std::ops::RangeInclusive<usize>> {
        let bad = || Error::Schema(format!("{}: n must be an integer or [lo, hi]", self.id));
        match &self.n {
            Some(serde_json::Value::Number(k)) => {
                let k = k.as_u64().ok_or_else(bad)? as usize;
                Ok(k..=k)
            }
            Some(serde_json::Value::Array(v)) if v.len() == 2 => {
                let lo = v[0].as_u64().ok_or_else(bad)? as usize;
                let hi = v[1].as_u64().ok_or_else(bad)? as usize;
                Ok(lo..=hi)
            }
            _ => Err(bad()),
        }
    }
}

fn line(id: &str, comment: &str, result: Result<(bool, String)>) -> CorpusLine {
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CorpusLine { id: id.into(), comment: comment.into(), passed, detail }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Runs every fixture of a shipped corpus; lines are sorted by fixture id.
pub fn verify_corpus(name: &str, opts: &CellOptions) -> Result<CorpusSummary> {
    let text = corpus_text(name)?;
    let mut lines = match name {
        "table1" => run_table1(parse(text)?, opts),
        _ => {
            let e: Entries = parse(text)?;
            e.entries.par_iter().map(|entry| run_entry(entry, opts)).collect()
        }
    };
    lines.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(CorpusSummary { corpus: name.into(), lines })
}

fn run_table1(t: Table1, opts: &CellOptions) -> Vec<CorpusLine> {
    let models: Vec<&HessenbergModel> = t.rows.iter().filter_map(|r| r.model.as_ref()).collect();
    t.rows
        .par_iter()
        .map(|row| {
            let target = row.w.inverse();
            let result = match row.kind.as_str() {
                "model" => row
                    .model
                    .as_ref()
                    .ok_or_else(|| Error::Schema("model row without model".into()))
                    .and_then(|m| equality_verdict(m, &target, opts))
                    .map(|v| (v.verdict.is_equal(), format!("{} against X_{target}", v.verdict.name()))),
                "highest_weight" => row
                    .gamma
                    .as_ref()
                    .ok_or_else(|| Error::Schema("highest-weight row without gamma".into()))
                    .and_then(hw_adjoint)
                    .map(|r| {
                        (r.certified && r.w == target, format!("gamma {} gives X_{}, certified {}", r.gamma, r.w, r.certified))
                    }),
                "obstruction" => models
                    .iter()
                    .map(|m| equality_verdict(m, &target, opts).map(|v| v.verdict))
                    .collect::<Result<Vec<Verdict>>>()
                    .map(|vs| {
                        let not_equal = vs.iter().filter(|v| matches!(v, Verdict::NotEqual(_))).count();
                        (not_equal == vs.len(), format!("NOT_EQUAL for {not_equal}/{} stored models", vs.len()))
                    }),
                k => Err(Error::Schema(format!("unknown row kind {k}"))),
            };
            line(&row.id, &row.comment, result)
        })
        .collect()
}

fn run_entry(e: &Entry, opts: &CellOptions) -> CorpusLine {
    let result = match e.kind.as_str() {
        "equality" => check_equality(e, opts),
        "euler_shadow" => check_euler_shadow(e),
        "folding" => e.range().and_then(|r| check_folding(*r.start())),
        "lift" => e.range().and_then(|r| check_lift(*r.start(), &e.policies, e.sample, e.seed)),
        "interval_size" => e.range().and_then(check_interval_sizes),
        "poincare" => e.range().and_then(check_poincare),
        "euler" => e.range().and_then(|r| check_euler(r, e.max_support.unwrap_or(4))),
        "codim1" => e.range().and_then(|r| check_codim1(r, e.c.as_deref(), e.d.as_deref())),
        "highest_weight" => e.range().and_then(check_highest_weight),
        k => Err(Error::Schema(format!("unknown entry kind {k}"))),
    };
    line(&e.id, &e.comment, result)
}

fn check_equality(e: &Entry, opts: &CellOptions) -> Result<(bool, String)> {
    let (Some(m), Some(w), Some(expect)) = (&e.model, &e.w, &e.expect) else {
        return Err(Error::Schema(format!("{}: equality needs model, w and expect", e.id)));
    };
    let v = equality_verdict(m, &w.inverse(), opts)?;
    Ok((v.verdict.name() == expect, format!("{} (expected {expect})", v.verdict.name())))
}

/// `n! − 2(n−2)!` fixed points for two-entry nilpotent `x` in `H(−θ̄)`,
/// the Euler characteristic of `X_{s_2 w_0}` and `X_{s_{n−2} w_0}`.
fn check_euler_shadow(e: &Entry) -> Result<(bool, String)> {
    let mut ok = true;
    for n in e.range()? {
        let support = match e.support.as_deref() {
            Some("first") => vec![(1, n - 1), (2, n)],
            Some("second") => vec![(1, 2), (2, n)],
            _ => return Err(Error::Schema(format!("{}: support must be first or second", e.id))),
        };
        let h = special_space(SpecialKind::MinusTheta, n)?;
        let count = euler_profile_count(&support, &h)? as i64;
        let a = schubert_poincare(&s_i_w0(2, n)?).eval_at_one();
        let b = schubert_poincare(&s_i_w0(n - 2, n)?).eval_at_one();
        ok &= count == a && count == b;
    }
    Ok((ok, format!("n in {:?}", e.range()?)))
}

pub fn check_folding(n: usize) -> Result<(bool, String)> {
    let m = 2 * n;
    let a_roots = all_roots(System::A, m);
    let pos_a: BTreeSet<Root> = positive_roots(System::A, m).iter().map(fold).collect::<Result<_>>()?;
    let pos_c: BTreeSet<Root> = positive_roots(System::C, n).into_iter().collect();
    let positive = pos_a == pos_c;
    let mut fibers = true;
    for g in all_roots(System::C, n) {
        for a in fiber(&g)? {
            let s = Root::a(m, crate::roots::prime(a.j, m), crate::roots::prime(a.i, m))?;
            let f: BTreeSet<Root> = fiber(&g)?.into_iter().collect();
            fibers &= fold(&a)? == g && f.contains(&s) && f.len() == if s == a { 1 } else { 2 };
        }
    }
    let mut order = true;
    for a in &a_roots {
        for b in &a_roots {
            if leq_demazure(a, b)? {
                order &= leq_demazure(&fold(a)?, &fold(b)?)?;
            }
        }
    }
    let mut equivariant = true;
    for w in signed_permutations(n) {
        let w = w.into_permutation();
        for a in &a_roots {
            equivariant &= fold(&weyl_action(&w, a)?)? == weyl_action(&w, &fold(a)?)?;
        }
    }
    Ok((
        positive && fibers && order && equivariant,
        format!("positive {positive}, fibers {fibers}, order {order}, equivariance {equivariant}"),
    ))
}

fn policy(name: &str) -> Result<CartanPolicy> {
    match name {
        "full" => Ok(CartanPolicy::Full),
        "generated" => Ok(CartanPolicy::Generated),
        p => Err(Error::Schema(format!("unknown policy {p}"))),
    }
}

pub fn check_lift(n: usize, policies: &[String], sample: Option<usize>, seed: u64) -> Result<(bool, String)> {
    let policies = policies.iter().map(|p| policy(p)).collect::<Result<Vec<_>>>()?;
    let total = all_roots(System::C, n).len() + n;
    let mut spaces = enumerate_spaces(System::C, n, 0..=total, &policies);
    if let Some(k) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        spaces.shuffle(&mut rng);
        spaces.truncate(k);
    }
    let mut failures = 0;
    for hc in &spaces {
        let ok = match lift_c_to_a(hc) {
            Ok(h) => {
                is_sigma_stable(&h)?
                    && RootIdeal::new(System::A, h.rank, h.roots().clone()).is_ok()
                    && sigma_fixed_matches(&h, hc)?
            }
            Err(_) => false,
        };
        failures += usize::from(!ok);
    }
    Ok((failures == 0, format!("{} spaces, {failures} failures", spaces.len())))
}

pub fn check_interval_sizes(ns: std::ops::RangeInclusive<usize>) -> Result<(bool, String)> {
    let mut ok = true;
    for n in ns.clone() {
        for i in 1..n {
            let size = lower_interval_iter(&s_i_w0(i, n)?).count() as u64;
            ok &= size == factorial(n) - factorial(i) * factorial(n - i);
        }
    }
    Ok((ok, format!("n in {ns:?}, all i")))
}

/// `[n−2]_q! ([n]_q [n−1]_q − q^{2n−3} − q^{2n−4})`.
pub fn s2w0_poincare_formula(n: usize) -> QPoly {
    let inner = q_int(n)
        .mul(&q_int(n - 1))
        .sub(&QPoly::monomial(2 * n - 3))
        .sub(&QPoly::monomial(2 * n - 4));
    q_factorial(n - 2).mul(&inner)
}

pub fn check_poincare(ns: std::ops::RangeInclusive<usize>) -> Result<(bool, String)> {
    let mut ok = true;
    for n in ns.clone() {
        let f = s2w0_poincare_formula(n);
        ok &= schubert_poincare(&s_i_w0(2, n)?) == f && schubert_poincare(&s_i_w0(n - 2, n)?) == f;
    }
    Ok((ok, format!("n in {ns:?}")))
}

/// All supports of size at most `k` among the positive roots.
pub fn supports_up_to(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = positive_roots(System::A, n).iter().map(Root::pair).collect();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<(usize, usize)>)> = vec![(0, Vec::new())];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, s) in &frontier {
            for (idx, p) in pairs.iter().enumerate().skip(*start) {
                let mut t = s.clone();
                t.push(*p);
                out.push(t.clone());
                next.push((idx + 1, t));
            }
        }
        frontier = next;
    }
    out
}

pub fn check_euler(ns: std::ops::RangeInclusive<usize>, k: usize) -> Result<(bool, String)> {
    let mut checked = 0usize;
    let mut ok = true;
    for n in ns.clone() {
        let h = special_space(SpecialKind::MinusTheta, n)?;
        let f = factorial(n - 2);
        for s in supports_up_to(n, k) {
            let c = euler_profile_count(&s, &h)?;
            ok &= c == factorial(n) - f * s.len() as u64 && c % f == 0;
            checked += 1;
        }
    }
    Ok((ok, format!("{checked} supports, n in {ns:?}")))
}

pub fn check_codim1(ns: std::ops::RangeInclusive<usize>, c: Option<&str>, d: Option<&str>) -> Result<(bool, String)> {
    let c = parse_rational(c.unwrap_or("1"))?;
    let d = parse_rational(d.unwrap_or("0"))?;
    let mut ok = true;
    for n in ns.clone() {
        ok &= codim1_component_fixed_points(n, &c, &d)?.union_matches();
    }
    Ok((ok, format!("n in {ns:?}")))
}

pub fn check_highest_weight(ns: std::ops::RangeInclusive<usize>) -> Result<(bool, String)> {
    let mut total = 0;
    let mut certified = 0;
    for n in ns.clone() {
        for g in all_roots(System::A, n) {
            total += 1;
            certified += usize::from(hw_adjoint(&g)?.certified);
        }
    }
    Ok((total == certified, format!("{certified}/{total} roots certified")))
}
