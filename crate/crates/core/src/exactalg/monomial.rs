use super::registry::MAX_VARS;
use std::cmp::Ordering;

/// Exponent vector over the registry. Negative exponents are allowed.
///
/// The derived ordering compares total degree first, then exponents in registry
/// order, which is graded-lex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: i32,
    exps: [i16; MAX_VARS],
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Self::ONE
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, exps: [0; MAX_VARS] };

    pub fn var(idx: usize, e: i32) -> Self {
        let mut m = Self::ONE;
        m.exps[idx] = e as i16;
        m.deg = e;
        m
    }

    pub fn from_exps(exps: &[i32]) -> Self {
        let mut m = Self::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = e as i16;
            m.deg += e;
        }
        m
    }

    pub fn exp(&self, idx: usize) -> i32 {
        self.exps[idx] as i32
    }

    pub fn exps(&self) -> &[i16; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> i32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.exps.iter().all(|&e| e >= 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e += *f;
        }
        Monomial { deg: self.deg + o.deg, exps }
    }

    /// Quotient as a Laurent monomial.
    pub fn div(&self, o: &Self) -> Self {
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e -= *f;
        }
        Monomial { deg: self.deg - o.deg, exps }
    }

    pub fn pow(&self, k: i32) -> Self {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e = (*e as i32 * k) as i16;
        }
        Monomial { deg: self.deg * k, exps }
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(o.exps[i]);
            m.deg += m.exps[i] as i32;
        }
        m
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(o.exps[i]);
            m.deg += m.exps[i] as i32;
        }
        m
    }

    /// The same monomial with variable `idx` removed, and its exponent.
    pub fn split_var(&self, idx: usize) -> (Self, i32) {
        let e = self.exps[idx] as i32;
        let mut m = *self;
        m.exps[idx] = 0;
        m.deg -= e;
        (m, e)
    }

    pub fn with_exp(&self, idx: usize, e: i32) -> Self {
        let mut m = *self;
        m.deg += e - m.exps[idx] as i32;
        m.exps[idx] = e as i16;
        m
    }

    /// Bitmask of variables with nonzero exponent.
    pub fn support(&self) -> u32 {
        let mut s = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                s |= 1 << i;
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_degree_first() {
        let a = Monomial::var(0, 1);
        let b = Monomial::var(1, 2);
        assert!(b > a);
        let ab = a.mul(&Monomial::var(1, 1));
        let vv = Monomial::var(12, 2);
        assert!(ab > vv);
        assert!(Monomial::var(0, 1) > Monomial::var(1, 1));
    }

    #[test]
    fn div_mul_roundtrip() {
        let a = Monomial::from_exps(&[2, -1, 3]);
        let b = Monomial::from_exps(&[1, 1, 0, 4]);
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.degree(), 4);
        assert!(!a.is_nonneg());
    }
}
