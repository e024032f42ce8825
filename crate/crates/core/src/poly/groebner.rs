//! Buchberger's algorithm over ℚ with grevlex, the coprime and chain
//! criteria, the normal selection strategy and a hard resource budget.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::poly::MultiPoly;
use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: 40, max_terms: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("groebner budget exceeded: {0}")]
pub struct BudgetExceeded(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerCertificate {
    pub vars: Arc<[String]>,
    pub generators: Vec<MultiPoly>,
    /// The reduced Gröbner basis, sorted by leading monomial.
    pub basis: Vec<MultiPoly>,
    pub inconsistent: bool,
    /// For inconsistent systems, `Σ cofactors[i] · generators[i] = 1`.
    pub cofactors: Option<Vec<MultiPoly>>,
}

impl GroebnerCertificate {
    /// Checks `Σ c_i g_i = 1` when cofactors are present, otherwise recomputes.
    pub fn verify(&self, budget: Budget) -> bool {
        if let Some(cof) = &self.cofactors {
            if !self.inconsistent || cof.len() != self.generators.len() {
                return false;
            }
            let mut total = MultiPoly::zero(self.vars.clone());
            for (c, g) in cof.iter().zip(&self.generators) {
                total = total.add(&c.mul(g));
            }
            return total == MultiPoly::one(self.vars.clone());
        }
        match groebner(&self.vars, &self.generators, budget) {
            Ok(again) => again.inconsistent == self.inconsistent && again.basis == self.basis,
            Err(_) => false,
        }
    }
}

struct Elem {
    poly: MultiPoly,
    lm: Monomial,
    cof: Option<Vec<MultiPoly>>,
}

struct Tracker {
    enabled: bool,
    ngens: usize,
}

/// Runs Buchberger without cofactor tracking.
pub fn groebner(
    vars: &Arc<[String]>,
    gens: &[MultiPoly],
    budget: Budget,
) -> Result<GroebnerCertificate, BudgetExceeded> {
    run(vars, gens, budget, false)
}

/// Like [`groebner`], and additionally records a certificate `Σ c_i g_i = 1`
/// for inconsistent systems while the cofactors stay within the term budget.
pub fn groebner_with_cofactors(
    vars: &Arc<[String]>,
    gens: &[MultiPoly],
    budget: Budget,
) -> Result<GroebnerCertificate, BudgetExceeded> {
    run(vars, gens, budget, true)
}

fn run(
    vars: &Arc<[String]>,
    gens: &[MultiPoly],
    budget: Budget,
    track: bool,
) -> Result<GroebnerCertificate, BudgetExceeded> {
    let mut tracker = Tracker { enabled: track, ngens: gens.len() };
    let mut basis: Vec<Elem> = Vec::new();
    let unit = |cof: Option<Vec<MultiPoly>>| GroebnerCertificate {
        vars: vars.clone(),
        generators: gens.to_vec(),
        basis: vec![MultiPoly::one(vars.clone())],
        inconsistent: true,
        cofactors: cof,
    };

    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if g.total_degree() > budget.max_degree {
            return Err(BudgetExceeded(format!("generator degree {}", g.total_degree())));
        }
        let (lm, lc) = g.leading().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let inv = lc.recip();
        let cof = tracker.enabled.then(|| {
            let mut v = vec![MultiPoly::zero(vars.clone()); tracker.ngens];
            v[k] = MultiPoly::constant(vars.clone(), inv.clone());
            v
        });
        if lm.is_one() {
            return Ok(unit(cof));
        }
        basis.push(Elem { poly: g.scale(&inv), lm, cof });
    }

    let mut pending: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut pending_idx: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((basis[i].lm.lcm(&basis[j].lm), i, j));
            pending_idx.insert((i, j));
        }
    }

    while let Some((lcm, i, j)) = pending.pop_first() {
        pending_idx.remove(&(i, j));
        if basis[i].lm.coprime(&basis[j].lm) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm.divides(&lcm)
                && !pending_idx.contains(&(i.min(k), i.max(k)))
                && !pending_idx.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if lcm.degree() > budget.max_degree {
            return Err(BudgetExceeded(format!("pair degree {}", lcm.degree())));
        }
        let (s, s_cof) = spoly(&basis[i], &basis[j], &lcm, &mut tracker, budget);
        let (r, r_cof) = reduce(s, s_cof, &basis, None, &mut tracker, budget)?;
        if r.is_zero() {
            continue;
        }
        let (lm, lc) = r.leading().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let inv = lc.recip();
        let cof = scale_cof(r_cof, &inv, &tracker);
        if lm.is_one() {
            return Ok(unit(cof));
        }
        let new = basis.len();
        basis.push(Elem { poly: r.scale(&inv), lm, cof });
        for i in 0..new {
            pending.insert((basis[i].lm.lcm(&basis[new].lm), i, new));
            pending_idx.insert((i, new));
        }
    }

    let reduced = interreduce(basis, &mut tracker, budget)?;
    Ok(GroebnerCertificate {
        vars: vars.clone(),
        generators: gens.to_vec(),
        basis: reduced,
        inconsistent: false,
        cofactors: None,
    })
}

fn scale_cof(cof: Option<Vec<MultiPoly>>, c: &Rational, tracker: &Tracker) -> Option<Vec<MultiPoly>> {
    if !tracker.enabled {
        return None;
    }
    cof.map(|v| v.iter().map(|p| p.scale(c)).collect())
}

fn spoly(
    a: &Elem,
    b: &Elem,
    lcm: &Monomial,
    tracker: &mut Tracker,
    budget: Budget,
) -> (MultiPoly, Option<Vec<MultiPoly>>) {
    let ma = a.lm.quotient_of(lcm);
    let mb = b.lm.quotient_of(lcm);
    let one = Rational::one();
    let mut s = MultiPoly::zero(a.poly.vars().clone());
    s.add_scaled(&one, &ma, &a.poly);
    s.add_scaled(&-one.clone(), &mb, &b.poly);
    let cof = if tracker.enabled {
        match (&a.cof, &b.cof) {
            (Some(ca), Some(cb)) => {
                let v: Vec<MultiPoly> = ca
                    .iter()
                    .zip(cb)
                    .map(|(x, y)| {
                        let mut p = MultiPoly::zero(x.vars().clone());
                        p.add_scaled(&one, &ma, x);
                        p.add_scaled(&-one.clone(), &mb, y);
                        p
                    })
                    .collect();
                check_cof(v, tracker, budget)
            }
            _ => None,
        }
    } else {
        None
    };
    (s, cof)
}

fn check_cof(v: Vec<MultiPoly>, tracker: &mut Tracker, budget: Budget) -> Option<Vec<MultiPoly>> {
    if v.iter().map(MultiPoly::num_terms).sum::<usize>() > budget.max_terms {
        tracker.enabled = false;
        None
    } else {
        Some(v)
    }
}

/// Full reduction of `p` modulo the basis, skipping index `skip`.
fn reduce(
    mut p: MultiPoly,
    mut cof: Option<Vec<MultiPoly>>,
    basis: &[Elem],
    skip: Option<usize>,
    tracker: &mut Tracker,
    budget: Budget,
) -> Result<(MultiPoly, Option<Vec<MultiPoly>>), BudgetExceeded> {
    let mut rem = MultiPoly::zero(p.vars().clone());
    while let Some((m, c)) = p.pop_leading() {
        let divisor = basis
            .iter()
            .enumerate()
            .find(|(k, e)| Some(*k) != skip && e.lm.divides(&m));
        match divisor {
            Some((_, e)) => {
                let qm = e.lm.quotient_of(&m);
                let neg = -c;
                // the leading terms cancel; subtract the tail only
                for (om, oc) in e.poly.terms().rev().skip(1) {
                    p.add_term(qm.mul(om), &neg * oc);
                }
                if p.num_terms() > budget.max_terms {
                    return Err(BudgetExceeded(format!("{} terms in reduction", p.num_terms())));
                }
                if tracker.enabled {
                    if let (Some(cv), Some(ec)) = (cof.as_mut(), e.cof.as_ref()) {
                        for (x, y) in cv.iter_mut().zip(ec) {
                            x.add_scaled(&neg, &qm, y);
                        }
                    }
                    if let Some(cv) = cof.take() {
                        cof = check_cof(cv, tracker, budget);
                    }
                } else {
                    cof = None;
                }
            }
            None => rem.add_term(m, c),
        }
    }
    Ok((rem, if tracker.enabled { cof } else { None }))
}

fn interreduce(
    mut basis: Vec<Elem>,
    tracker: &mut Tracker,
    budget: Budget,
) -> Result<Vec<MultiPoly>, BudgetExceeded> {
    tracker.enabled = false;
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !(0..basis.len()).any(|j| {
                j != i
                    && basis[j].lm.divides(&basis[i].lm)
                    && (basis[j].lm != basis[i].lm || j < i)
            })
        })
        .collect();
    let mut idx = 0;
    basis.retain(|_| {
        let k = keep[idx];
        idx += 1;
        k
    });
    for i in 0..basis.len() {
        let p = basis[i].poly.clone();
        let (r, _) = reduce(p, None, &basis, Some(i), tracker, budget)?;
        basis[i].poly = r.monic();
    }
    let mut out: Vec<MultiPoly> = basis.into_iter().map(|e| e.poly).collect();
    out.sort_by(|a, b| a.leading().map(|x| x.0).cmp(&b.leading().map(|x| x.0)));
    Ok(out)
}

/// True when the ideal is the unit ideal (no common complex zero).
pub fn is_inconsistent(
    vars: &Arc<[String]>,
    gens: &[MultiPoly],
    budget: Budget,
) -> Result<bool, BudgetExceeded> {
    Ok(groebner(vars, gens, budget)?.inconsistent)
}
