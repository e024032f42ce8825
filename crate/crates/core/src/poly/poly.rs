use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// A sparse polynomial over ℚ in named variables; terms sorted by grevlex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            let n = p.nvars();
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn one(vars: Arc<[String]>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: Arc<[String]>, k: usize) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(n, k), Rational::one());
        p
    }

    pub fn from_terms(
        vars: Arc<[String]>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled(&mut self, c: &Rational, m: &Monomial, other: &MultiPoly) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(m.mul(om), c * oc);
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = Self::zero(self.vars.clone());
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            for (om, oc) in &other.terms {
                out.add_term(m.mul(om), c * oc);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::one(self.vars.clone());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::SizeMismatch(point.len(), self.nvars()));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Re-expresses the polynomial over a different variable list containing
    /// all variables used here.
    pub fn rename(&self, vars: Arc<[String]>) -> Result<MultiPoly> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::Parse(format!("variable {v} missing")))
            })
            .collect::<Result<_>>()?;
        let n = vars.len();
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut exps = vec![0u8; n];
            for (k, &e) in m.exps().iter().enumerate() {
                exps[map[k]] = e;
            }
            out.add_term(Monomial::from_exps(&exps), c.clone());
        }
        Ok(out)
    }

    /// Parses the normal form printed by `Display`.
    pub fn parse(text: &str, vars: Arc<[String]>) -> Result<MultiPoly> {
        let n = vars.len();
        let mut out = Self::zero(vars.clone());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" || s.is_empty() {
            return Ok(out);
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') && prev != Some('*') {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            let mut coef = Rational::one();
            let mut exps = vec![0u8; n];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {text:?}")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coef *= crate::linalg::parse_rational(factor)?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((a, b)) => (
                        a,
                        b.parse::<u8>().map_err(|e| Error::Parse(format!("{factor}: {e}")))?,
                    ),
                    None => (factor, 1),
                };
                let k = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                exps[k] += e;
            }
            if neg {
                coef = -coef;
            }
            out.add_term(Monomial::from_exps(&exps), coef);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[v].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn var_names(names: impl IntoIterator<Item = String>) -> Arc<[String]> {
    names.into_iter().collect::<Vec<_>>().into()
}
