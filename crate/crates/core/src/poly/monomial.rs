use std::cmp::Ordering;

use smallvec::SmallVec;

/// An exponent vector with cached total degree, ordered by grevlex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u8; 16]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), deg: 0 }
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[k] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg: exps.iter().map(|&e| e as u32).sum(),
        }
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps, deg: self.deg + other.deg }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { exps, deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u8; 16]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_examples() {
        // x > y > z; x*z vs y^2 in grevlex: y^2 > x*z
        let xz = Monomial::from_exps(&[1, 0, 1]);
        let y2 = Monomial::from_exps(&[0, 2, 0]);
        assert!(y2 > xz);
        let x = Monomial::from_exps(&[1, 0, 0]);
        let y = Monomial::from_exps(&[0, 1, 0]);
        assert!(x > y);
        assert!(xz > x);
    }

    #[test]
    fn division() {
        let a = Monomial::from_exps(&[1, 2]);
        let b = Monomial::from_exps(&[2, 3]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Monomial::from_exps(&[1, 1]));
        assert!(!b.divides(&a));
        assert_eq!(a.lcm(&Monomial::from_exps(&[3, 0])), Monomial::from_exps(&[3, 2]));
    }
}
