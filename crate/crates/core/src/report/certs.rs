use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::docs::{Outcome, Query, ReportDocument};
use crate::engine::{
    chart_basis, fixed_point_profile, verify_cell_certificate, CellCertificate, CellStatus, Chart, MembershipSystem,
};
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, rational_string, Rational};
use crate::poly::{var_names, Budget, GroebnerCertificate, MultiPoly};
use crate::weyl::{bruhat_leq_windows, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerDoc {
    pub generators: Vec<String>,
    pub basis: Vec<String>,
    pub inconsistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cofactors: Option<Vec<String>>,
}

/// A self-contained cell certificate: membership polynomials in normal form,
/// Gröbner evidence and witness points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCertificateDoc {
    pub v: Permutation,
    pub chart: Chart,
    pub status: String,
    pub vars: Vec<String>,
    pub labels: Vec<String>,
    pub polys: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner: Option<GroebnerDoc>,
}

fn strings(ps: &[MultiPoly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn parse_polys(ps: &[String], vars: &Arc<[String]>) -> Result<Vec<MultiPoly>> {
    ps.iter().map(|p| MultiPoly::parse(p, vars.clone())).collect()
}

fn parse_point(p: &[String]) -> Result<Vec<Rational>> {
    p.iter().map(|s| parse_rational(s)).collect()
}

impl CellCertificateDoc {
    pub fn from_certificate(c: &CellCertificate) -> CellCertificateDoc {
        let (point, reason) = match &c.status {
            CellStatus::NotContained { point } => (Some(point.iter().map(rational_string).collect()), None),
            CellStatus::Meets { point: Some(p) } => (Some(p.iter().map(rational_string).collect()), None),
            CellStatus::Indeterminate { reason } => (None, Some(reason.clone())),
            _ => (None, None),
        };
        CellCertificateDoc {
            v: c.v.clone(),
            chart: c.chart,
            status: c.status.name().into(),
            vars: c.system.vars.to_vec(),
            labels: c.system.labels.clone(),
            polys: strings(&c.system.polys),
            point,
            reason,
            groebner: c.groebner.as_ref().map(|g| GroebnerDoc {
                generators: strings(&g.generators),
                basis: strings(&g.basis),
                inconsistent: g.inconsistent,
                cofactors: g.cofactors.as_ref().map(|c| strings(c)),
            }),
        }
    }

    /// Rebuilds the in-memory certificate; the chart directions are
    /// re-derived from `(chart, v)`.
    pub fn to_certificate(&self, system: crate::roots::System, rank: usize) -> Result<CellCertificate> {
        let vars = var_names(self.vars.iter().cloned());
        let basis = chart_basis(self.chart, system, rank, &self.v);
        if basis.iter().map(|(s, _)| s.as_str()).ne(self.vars.iter().map(String::as_str)) {
            return Err(Error::Schema(format!("variables of cell {} do not match its chart", self.v)));
        }
        let polys = parse_polys(&self.polys, &vars)?;
        let point = self.point.as_deref().map(parse_point).transpose()?;
        let status = match self.status.as_str() {
            "CONTAINED" => CellStatus::Contained,
            "NOT_CONTAINED" => CellStatus::NotContained {
                point: point.ok_or_else(|| Error::Schema("NOT_CONTAINED needs a point".into()))?,
            },
            "DISJOINT" => CellStatus::Disjoint,
            "MEETS" => CellStatus::Meets { point },
            "INDETERMINATE" => CellStatus::Indeterminate { reason: self.reason.clone().unwrap_or_default() },
            s => return Err(Error::Schema(format!("unknown cell status {s}"))),
        };
        let groebner = match &self.groebner {
            None => None,
            Some(g) => Some(GroebnerCertificate {
                vars: vars.clone(),
                generators: parse_polys(&g.generators, &vars)?,
                basis: parse_polys(&g.basis, &vars)?,
                inconsistent: g.inconsistent,
                cofactors: g.cofactors.as_deref().map(|c| parse_polys(c, &vars)).transpose()?,
            }),
        };
        Ok(CellCertificate {
            v: self.v.clone(),
            chart: self.chart,
            system: MembershipSystem {
                vars,
                directions: basis.into_iter().map(|(_, b)| b).collect(),
                labels: self.labels.clone(),
                polys,
            },
            status,
            groebner,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub certificates: usize,
    pub verified: usize,
    pub failures: Vec<String>,
}

impl CheckSummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-verifies an equality report: the profile, every cell certificate
/// (Gröbner refutations via their cofactors), and the verdict they support.
pub fn check_report(report: &ReportDocument, budget: Budget) -> Result<CheckSummary> {
    let Query::Equality { w, .. } = &report.input.query else {
        return Err(Error::Schema("only equality reports carry certificates".into()));
    };
    let m = report
        .input
        .model
        .as_ref()
        .ok_or_else(|| Error::Schema("report has no model".into()))?;
    let mut summary = CheckSummary::default();
    let profile: BTreeSet<Permutation> = fixed_point_profile(m);
    let claimed: Vec<Permutation> = serde_json::from_value(report.result["profile"].clone())
        .map_err(|e| Error::Schema(format!("profile: {e}")))?;
    if claimed.iter().cloned().collect::<BTreeSet<_>>() != profile {
        summary.failures.push("fixed-point profile differs".into());
    }
    let docs: Vec<CellCertificateDoc> = serde_json::from_value(report.result["certificates"].clone())
        .map_err(|e| Error::Schema(format!("certificates: {e}")))?;
    let mut statuses = Vec::new();
    for d in &docs {
        summary.certificates += 1;
        let cert = d.to_certificate(m.system(), m.rank())?;
        if verify_cell_certificate(m, &cert, budget)? {
            summary.verified += 1;
        } else {
            summary.failures.push(format!("cell {} ({}) does not verify", d.v, d.status));
        }
        statuses.push((d.v.clone(), d.status.clone()));
    }
    if report.outcome == Outcome::Equal {
        let group = m.weyl_group();
        if statuses.len() != group.len() {
            summary.failures.push(format!("EQUAL needs {} cells, report has {}", group.len(), statuses.len()));
        }
        for (v, s) in &statuses {
            let expected = if bruhat_leq_windows(v.window(), w.window()) { "CONTAINED" } else { "DISJOINT" };
            if s != expected {
                summary.failures.push(format!("cell {v} is {s}, EQUAL needs {expected}"));
            }
        }
    }
    Ok(summary)
}
