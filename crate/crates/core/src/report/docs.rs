use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::certs::CellCertificateDoc;
use crate::engine::{
    equality_verdict, euler_profile_count, fixed_point_profile, hw_adjoint, schubert_poincare, CellOptions, Chart,
    HessenbergModel, NotEqualReason, Verdict,
};
use crate::error::{Error, Result};
use crate::hessenberg::{is_sigma_stable, lift_c_to_a, sigma_fixed_matches};
use crate::poly::Budget;
use crate::roots::{Root, RootIdeal, System};
use crate::weyl::{bruhat_leq_windows, count_avoiders, Permutation};

pub const TOOL: &str = "hesslab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Query {
    Equality {
        w: Permutation,
        #[serde(default)]
        chart: Chart,
    },
    Profile,
    /// Support pairs default to the strictly upper entries of `x`.
    Euler {
        #[serde(default)]
        support: Option<Vec<(usize, usize)>>,
    },
    Poincare { w: Permutation },
    Lift,
    Hw { gamma: Root },
    CountAvoiders {
        n: usize,
        #[serde(default = "default_pattern")]
        pattern: Permutation,
    },
}

fn default_pattern() -> Permutation {
    Permutation::parse("4231").expect("valid")
}

impl Query {
    fn needs_model(&self) -> bool {
        matches!(self, Query::Equality { .. } | Query::Profile | Query::Euler { .. } | Query::Lift)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<HessenbergModel>,
    pub query: Query,
    #[serde(default)]
    pub budget: Budget,
    #[serde(default)]
    pub seed: u64,
}

impl QueryDocument {
    pub fn parse(text: &str) -> Result<QueryDocument> {
        let doc: QueryDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget.max_degree == 0 || self.budget.max_terms == 0 {
            return Err(Error::Schema("budgets must be positive".into()));
        }
        if self.query.needs_model() && self.model.is_none() {
            return Err(Error::Schema("this query requires a model".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Equal,
    NotEqual,
    Indeterminate,
    True,
    False,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Equal | Outcome::True => 0,
            Outcome::NotEqual | Outcome::False => 1,
            Outcome::Indeterminate => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub input: QueryDocument,
    pub outcome: Outcome,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

impl ReportDocument {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Wall-clock timings make reports non-reproducible; off by default.
    pub timings: bool,
}

fn sorted<T: Ord + Clone>(s: &BTreeSet<T>) -> Vec<T> {
    s.iter().cloned().collect()
}

fn maximal(profile: &BTreeSet<Permutation>) -> Vec<Permutation> {
    profile
        .iter()
        .filter(|v| !profile.iter().any(|u| u != *v && bruhat_leq_windows(v.window(), u.window())))
        .cloned()
        .collect()
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Equal => json!({ "verdict": "EQUAL" }),
        Verdict::Indeterminate(r) => json!({ "verdict": "INDETERMINATE", "reason": r }),
        Verdict::NotEqual(NotEqualReason::ProfileMismatch { missing, extra }) => json!({
            "verdict": "NOT_EQUAL",
            "reason": { "kind": "profile_mismatch", "missing": missing, "extra": extra }
        }),
        Verdict::NotEqual(NotEqualReason::NotContained { v }) => json!({
            "verdict": "NOT_EQUAL",
            "reason": { "kind": "not_contained", "v": v }
        }),
        Verdict::NotEqual(NotEqualReason::Meets { v }) => json!({
            "verdict": "NOT_EQUAL",
            "reason": { "kind": "meets", "v": v }
        }),
    }
}

fn model_of(doc: &QueryDocument) -> Result<&HessenbergModel> {
    doc.model.as_ref().ok_or_else(|| Error::Schema("this query requires a model".into()))
}

fn upper_support(x: &crate::linalg::RationalMatrix) -> Result<Vec<(usize, usize)>> {
    if !x.is_strictly_upper() {
        return Err(Error::Precondition(
            "support can only be read off a strictly upper triangular x; pass it explicitly".into(),
        ));
    }
    Ok(x.entries().map(|(i, j, _)| (i, j)).collect())
}

/// Dispatches one query.
pub fn run(doc: &QueryDocument, opts: RunOptions) -> Result<ReportDocument> {
    doc.validate()?;
    let start = Instant::now();
    let (outcome, result) = match &doc.query {
        Query::Equality { w, chart } => {
            let m = model_of(doc)?;
            let cell_opts = CellOptions { chart: *chart, budget: doc.budget, cofactors: true, seed: doc.seed };
            let v = equality_verdict(m, w, &cell_opts)?;
            let outcome = match v.verdict {
                Verdict::Equal => Outcome::Equal,
                Verdict::NotEqual(_) => Outcome::NotEqual,
                Verdict::Indeterminate(_) => Outcome::Indeterminate,
            };
            let mut r = verdict_json(&v.verdict);
            r["target"] = json!(v.target);
            r["chart"] = json!(chart);
            r["profile"] = json!(sorted(&v.profile));
            r["certificates"] =
                json!(v.certificates.iter().map(CellCertificateDoc::from_certificate).collect::<Vec<_>>());
            (outcome, r)
        }
        Query::Profile => {
            let m = model_of(doc)?;
            let p = fixed_point_profile(m);
            (Outcome::True, json!({ "size": p.len(), "maximal": maximal(&p), "profile": sorted(&p) }))
        }
        Query::Euler { support } => {
            let m = model_of(doc)?;
            let support = match support {
                Some(s) => s.clone(),
                None => upper_support(&m.x)?,
            };
            let count = euler_profile_count(&support, &m.h)?;
            let n = m.rank();
            let f: u64 = (1..=(n.saturating_sub(2)) as u64).product();
            (
                Outcome::True,
                json!({ "support": support, "count": count, "divisible_by_n_minus_2_factorial": count % f == 0 }),
            )
        }
        Query::Poincare { w } => {
            let p = schubert_poincare(w);
            (Outcome::True, json!({ "w": w, "coefficients": p.0, "polynomial": p.to_string(), "at_one": p.eval_at_one() }))
        }
        Query::Lift => {
            let m = model_of(doc)?;
            if m.system() != System::C {
                return Err(Error::Precondition("lift expects a type C model".into()));
            }
            let lifted = lift_c_to_a(&m.h)?;
            let validates = lifted.validate().ok;
            let stable = is_sigma_stable(&lifted)?;
            let upper_ideal = RootIdeal::new(System::A, lifted.rank, lifted.roots().clone()).is_ok();
            let fixed = sigma_fixed_matches(&lifted, &m.h)?;
            let ok = validates && stable && upper_ideal && fixed;
            (
                if ok { Outcome::True } else { Outcome::False },
                json!({
                    "lifted": lifted,
                    "validates": validates,
                    "sigma_stable": stable,
                    "upper_ideal": upper_ideal,
                    "sigma_fixed_matches": fixed,
                }),
            )
        }
        Query::Hw { gamma } => {
            let r = hw_adjoint(gamma)?;
            (
                if r.certified { Outcome::True } else { Outcome::False },
                json!({
                    "gamma": r.gamma,
                    "w": r.w,
                    "certified": r.certified,
                    "profile_size": r.profile.len(),
                    "reasoning": r.reasoning,
                }),
            )
        }
        Query::CountAvoiders { n, pattern } => {
            let c = count_avoiders(*n, pattern);
            (Outcome::True, json!({ "n": n, "pattern": pattern, "count": c }))
        }
    };
    Ok(ReportDocument {
        tool: TOOL.into(),
        version: VERSION.into(),
        input: doc.clone(),
        outcome,
        result,
        timings: opts.timings.then(|| Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 }),
    })
}
