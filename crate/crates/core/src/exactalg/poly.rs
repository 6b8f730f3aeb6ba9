use super::monomial::Monomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Debug;

/// Coefficient ring for sparse polynomials.
pub trait Coeff: Clone + PartialEq + Eq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `Some(q)` with `q * o == self`, if such `q` exists in the ring.
    fn exact_div(&self, o: &Self) -> Option<Self>;
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
}

/// Sparse polynomial with terms sorted by descending graded-lex monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    terms: Vec<(Monomial, C)>,
}

pub type IntPoly = Poly<BigInt>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(idx: usize) -> Self {
        Self::term(Monomial::var(idx, 1), C::one())
    }

    /// Builds from unsorted terms, combining duplicates and dropping zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, C)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add_ref(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, C)>) -> Self {
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> C {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    pub fn constant_coeff(&self) -> C {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(),
        }
    }

    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |s, (m, _)| s | m.support())
    }

    pub fn is_nonneg(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_nonneg())
    }

    pub fn degree_in(&self, idx: usize) -> i32 {
        self.terms.iter().map(|(m, _)| m.exp(idx)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, idx: usize) -> i32 {
        self.terms.iter().map(|(m, _)| m.exp(idx)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    /// Componentwise minimum exponent vector over all terms.
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some(t) => t.0,
            None => return Monomial::ONE,
        };
        it.fold(first, |acc, (m, _)| acc.gcd(m))
    }

    /// Componentwise maximum exponent vector over all terms.
    pub fn max_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some(t) => t.0,
            None => return Monomial::ONE,
        };
        it.fold(first, |acc, (m, _)| acc.lcm(m))
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (*m, d.mul_ref(c))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul_ref(c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.clone())).collect() }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Self {
        Poly { terms: self.terms.iter().map(|(n, d)| (n.div(m), d.clone())).collect() }
    }

    fn merge(a: &[(Monomial, C)], b: &[(Monomial, C)], negate_b: bool) -> Vec<(Monomial, C)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate_b { b[j].1.neg_ref() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_b { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_b { t.1.neg_ref() } else { t.1.clone() };
            out.push((t.0, c));
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Poly { terms: Self::merge(&self.terms, &o.terms, false) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Poly { terms: Self::merge(&self.terms, &o.terms, true) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        // Each row big*t is already sorted; merge rows pairwise.
        let mut rows: Vec<Vec<(Monomial, C)>> =
            small.terms.iter().map(|(m, c)| big.mul_term(m, c).terms).collect();
        while rows.len() > 1 {
            let mut next = Vec::with_capacity(rows.len().div_ceil(2));
            let mut it = rows.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(Self::merge(&a, &b, false)),
                    None => next.push(a),
                }
            }
            rows = next;
        }
        Poly { terms: rows.pop().unwrap_or_default() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / d` for polynomials with nonnegative exponents.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.terms.first()?.clone();
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.len() == 1 {
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                terms.push((m.div(&lm), c.exact_div(&lc)?));
            }
            return Some(Poly { terms });
        }
        if !lm.divides(&self.terms[0].0) || !d.min_monomial().divides(&self.min_monomial()) {
            return None;
        }
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c.exact_div(&lc)?;
            for (dm, dc) in &d.terms[1..] {
                let key = qm.mul(dm);
                let val = qc.mul_ref(dc);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let nv = e.get().sub_ref(&val);
                        if nv.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = nv;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(val.neg_ref());
                    }
                }
            }
            q.push((qm, qc));
        }
        Some(Poly { terms: q })
    }

    /// Coefficients of `x^0, x^1, ...` with `x = var`, each free of `var`.
    /// Requires nonnegative exponents in `var`.
    pub fn split_var(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).max(0) as usize;
        let mut parts: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(var);
            parts[e as usize].push((rest, c.clone()));
        }
        // Removing a variable can reorder terms of equal total degree.
        parts
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect()
    }

    pub fn join_var(parts: &[Self], var: usize) -> Self {
        let mut terms = Vec::new();
        for (e, p) in parts.iter().enumerate() {
            for (m, c) in &p.terms {
                terms.push((m.with_exp(var, e as i32), c.clone()));
            }
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_sorted_unchecked(
            self.terms.iter().map(|(m, c)| (*m, f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        )
    }
}

impl IntPoly {
    /// Positive gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = <BigInt as Zero>::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if One::is_one(&g) {
                break;
            }
        }
        g
    }

    /// `(c, p)` with `self = c * p`, `p` primitive with positive leading coefficient.
    pub fn primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (<BigInt as Zero>::zero(), IntPoly::zero());
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        if One::is_one(&c) {
            return (c, self.clone());
        }
        let terms = self.terms.iter().map(|(m, d)| (*m, d / &c)).collect();
        (c, Poly { terms })
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }
}

impl Poly<BigRational> {
    /// `(c, p)` with `self = c * p`, `p` an integer primitive polynomial with
    /// positive leading coefficient.
    pub fn integer_primitive(&self) -> (BigRational, IntPoly) {
        if self.is_zero() {
            return (<BigRational as Zero>::zero(), IntPoly::zero());
        }
        let mut l = <BigInt as One>::one();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
        }
        let ip: IntPoly = self.map_coeffs(|c| (c * BigRational::from_integer(l.clone())).to_integer());
        let (c, p) = ip.primitive();
        (BigRational::new(c, l), p)
    }

    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        let mut total = <BigRational as Zero>::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e != 0 {
                    t *= num_traits::pow::Pow::pow(&values[i], e as i32);
                }
            }
            total += t;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(terms: &[(&[i32], i64)]) -> IntPoly {
        Poly::from_terms(terms.iter().map(|(e, c)| (Monomial::from_exps(e), BigInt::from(*c))).collect())
    }

    #[test]
    fn mul_and_divide() {
        let a = ip(&[(&[1], 1), (&[0, 1], -1)]);
        let b = ip(&[(&[1], 1), (&[0, 1], 1)]);
        let p = a.mul(&b);
        assert_eq!(p, ip(&[(&[2], 1), (&[0, 2], -1)]));
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&ip(&[(&[1], 1), (&[0, 0, 1], 1)])), None);
    }

    #[test]
    fn split_and_join() {
        let p = ip(&[(&[2, 1], 3), (&[1, 0, 1], -1), (&[0, 2], 5), (&[], 7)]);
        let parts = p.split_var(0);
        assert_eq!(parts.len(), 3);
        assert_eq!(Poly::join_var(&parts, 0), p);
    }

    #[test]
    fn primitive_sign() {
        let p = ip(&[(&[1], -4), (&[], 6)]);
        let (c, q) = p.primitive();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(q, ip(&[(&[1], 2), (&[], -3)]));
    }
}
