use super::gcd::{div_exact, gcd};
use super::monomial::Monomial;
use super::poly::IntPoly;
use super::registry::{VarRegistry, MAX_VARS};
use super::{LaurentPoly, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational function over ℚ in the registry variables.
///
/// Stored as `scale * num / den` with `num`, `den` primitive integer polynomials
/// with positive leading coefficients, nonnegative exponents and `gcd = 1`.
/// Zero is `scale = 0, num = den = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    scale: Rational,
    num: IntPoly,
    den: IntPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { scale: Rational::zero(), num: IntPoly::one(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RatFunc { scale: r, num: IntPoly::one(), den: IntPoly::one() }
    }

    pub fn var(idx: usize) -> Self {
        RatFunc { scale: Rational::one(), num: IntPoly::var(idx), den: IntPoly::one() }
    }

    pub fn named(name: &str) -> Result<Self> {
        VarRegistry::standard()
            .index(name)
            .map(Self::var)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Laurent monomial `c * m`.
    pub fn monomial(m: Monomial, c: Rational) -> Self {
        Self::from_laurent(&LaurentPoly::term(m, c), &LaurentPoly::one()).expect("nonzero denominator")
    }

    /// Normalizes `num / den` given as Laurent polynomials.
    pub fn from_laurent(num: &LaurentPoly, den: &LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // Clear negative exponents on both sides with one monomial.
        let lo = num.min_monomial().gcd(&den.min_monomial());
        let mut shift = Monomial::ONE;
        for i in 0..MAX_VARS {
            let e = lo.exp(i);
            if e < 0 {
                shift = shift.with_exp(i, -e);
            }
        }
        let (n, d) = if shift.is_one() {
            (num.clone(), den.clone())
        } else {
            (num.mul_monomial(&shift), den.mul_monomial(&shift))
        };
        let (cn, pn) = n.integer_primitive();
        let (cd, pd) = d.integer_primitive();
        Ok(Self::reduce(cn / cd, pn, pd))
    }

    /// Internal constructor from primitive parts; cancels the gcd.
    fn reduce(scale: Rational, num: IntPoly, den: IntPoly) -> Self {
        if scale.is_zero() || num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            return RatFunc { scale, num, den };
        }
        let (sg, g) = g.primitive();
        debug_assert!(sg.is_one());
        RatFunc { scale, num: div_exact(&num, &g), den: div_exact(&den, &g) }
    }

    fn from_parts_primitive(scale: Rational, num: &IntPoly, den: &IntPoly) -> Self {
        let (cn, pn) = num.primitive();
        let (cd, pd) = den.primitive();
        if cn.is_zero() {
            return Self::zero();
        }
        RatFunc { scale: scale * Rational::new(cn, cd), num: pn, den: pd }
    }

    /// Canonical numerator (rational coefficients).
    pub fn numerator(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        self.num.to_rational().scale(&self.scale)
    }

    /// Canonical denominator: primitive, positive leading coefficient.
    pub fn denominator(&self) -> LaurentPoly {
        self.den.to_rational()
    }

    pub(crate) fn parts(&self) -> (&Rational, &IntPoly, &IntPoly) {
        (&self.scale, &self.num, &self.den)
    }

    /// Larger of the total degrees of numerator and denominator.
    pub fn total_degree(&self) -> i32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        self.is_constant().then_some(&self.scale)
    }

    /// Variables occurring in numerator or denominator.
    pub fn support(&self) -> u32 {
        if self.is_zero() {
            0
        } else {
            self.num.support() | self.den.support()
        }
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.scale = -r.scale;
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (p1, q1) = (self.scale.numer(), self.scale.denom());
        let (p2, q2) = (o.scale.numer(), o.scale.denom());
        let k1 = p1 * q2;
        let k2 = p2 * q1;
        let base = Rational::new(BigInt::one(), q1 * q2);
        if self.den == o.den {
            let s = self.num.scale(&k1).add(&o.num.scale(&k2));
            if s.is_zero() {
                return Self::zero();
            }
            let (cs, ps) = s.primitive();
            return Self::reduce(base * Rational::from_integer(cs), ps, self.den.clone());
        }
        let d = gcd(&self.den, &o.den);
        if d.is_one() {
            let s = self.num.mul(&o.den).scale(&k1).add(&o.num.mul(&self.den).scale(&k2));
            if s.is_zero() {
                return Self::zero();
            }
            let (cs, ps) = s.primitive();
            return RatFunc {
                scale: base * Rational::from_integer(cs),
                num: ps,
                den: self.den.mul(&o.den),
            };
        }
        let e1 = div_exact(&self.den, &d);
        let e2 = div_exact(&o.den, &d);
        let s = self.num.mul(&e2).scale(&k1).add(&o.num.mul(&e1).scale(&k2));
        if s.is_zero() {
            return Self::zero();
        }
        let (cs, ps) = s.primitive();
        let h = gcd(&ps, &d);
        let (num, dh) = if h.is_one() { (ps, d) } else { (div_exact(&ps, &h), div_exact(&d, &h)) };
        RatFunc { scale: base * Rational::from_integer(cs), num, den: dh.mul(&e1).mul(&e2) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let g1 = if o.den.is_one() || self.num.is_one() { IntPoly::one() } else { gcd(&self.num, &o.den) };
        let g2 = if self.den.is_one() || o.num.is_one() { IntPoly::one() } else { gcd(&o.num, &self.den) };
        let n1 = div_exact(&self.num, &g1);
        let d2 = div_exact(&o.den, &g1);
        let n2 = div_exact(&o.num, &g2);
        let d1 = div_exact(&self.den, &g2);
        RatFunc { scale: &self.scale * &o.scale, num: n1.mul(&n2), den: d1.mul(&d2) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { scale: self.scale.recip(), num: self.den.clone(), den: self.num.clone() })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale_by(&self, r: &Rational) -> Self {
        if r.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.scale *= r;
        out
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if self.is_zero() {
            return Ok(if k == 0 { Self::one() } else { Self::zero() });
        }
        let k = k as u32;
        Ok(RatFunc {
            scale: num_traits::pow::Pow::pow(&self.scale, k),
            num: self.num.pow(k),
            den: self.den.pow(k),
        })
    }

    /// Cross-multiplication test `num(f)·den(g) = num(g)·den(f)`.
    pub fn rf_equal(&self, o: &Self) -> bool {
        let l = self.numerator().mul(&o.denominator());
        let r = o.numerator().mul(&self.denominator());
        l == r
    }

    /// Value at a rational point (indexed by registry slot).
    pub fn eval(&self, values: &[Rational]) -> Result<Rational> {
        let d = self.den.to_rational().eval(values);
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator of {self} vanishes at the point")));
        }
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        Ok(&self.scale * self.num.to_rational().eval(values) / d)
    }

    /// Exact composition with the given bindings; unbound variables are kept.
    pub fn substitute(&self, bindings: &[(usize, RatFunc)]) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut table: [Option<&RatFunc>; MAX_VARS] = [None; MAX_VARS];
        for (v, f) in bindings {
            table[*v] = Some(f);
        }
        let mut powers: HashMap<(usize, i32), RatFunc> = HashMap::new();
        let mut eval = |p: &IntPoly| -> Result<RatFunc> {
            let mut acc = RatFunc::zero();
            for (m, c) in p.terms() {
                let mut rest = Monomial::ONE;
                let mut t = RatFunc::from_rational(Rational::from_integer(c.clone()));
                for (i, &e) in m.exps().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    match table[i] {
                        Some(f) => {
                            let key = (i, e as i32);
                            if !powers.contains_key(&key) {
                                powers.insert(key, f.pow(e as i32)?);
                            }
                            t = t.mul(&powers[&key]);
                        }
                        None => rest = rest.with_exp(i, e as i32),
                    }
                }
                if !rest.is_one() {
                    t = t.mul(&RatFunc::monomial(rest, Rational::one()));
                }
                acc = acc.add(&t);
            }
            Ok(acc)
        };
        let n = eval(&self.num)?;
        let d = eval(&self.den)?;
        if d.is_zero() {
            return Err(Error::Pole(format!("substitution makes the denominator of {self} vanish")));
        }
        Ok(n.div(&d)?.scale_by(&self.scale))
    }

    /// Multiplication by an integer polynomial followed by renormalization.
    pub(crate) fn from_int_polys(scale: Rational, num: &IntPoly, den: &IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let base = Self::from_parts_primitive(scale, num, den);
        if base.is_zero() {
            return Ok(base);
        }
        Ok(Self::reduce(base.scale, base.num, base.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", fmt_poly(&self.numerator()), fmt_poly(&self.denominator()))
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let reg = VarRegistry::standard();
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(reg.name(i).to_string()),
            e if e < 0 => parts.push(format!("{}^({})", reg.name(i), e)),
            e => parts.push(format!("{}^{}", reg.name(i), e)),
        }
    }
    parts.join("*")
}

/// Text form of a Laurent polynomial, terms in descending graded-lex order.
pub fn fmt_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let body = if m.is_one() {
            fmt_rational(&a)
        } else if a.is_one() {
            fmt_monomial(m)
        } else {
            format!("{}*{}", fmt_rational(&a), fmt_monomial(m))
        };
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body)
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body)
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body)
            }
        }
    }
    out
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        RatFunc::add(self, o)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        RatFunc::sub(self, o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::mul(self, o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::zero(), |a, b| a.add(&b))
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::one(), |a, b| a.mul(&b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, rf, rf_substitute};

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rf("a1/(1 - a1)").add(&RatFunc::one()), rf("1/(1 - a1)"));
        let f = rf("(v^2 - a1)/(a1*a2)");
        assert!(f.mul(&f.inv().unwrap()).is_one());
        assert_eq!(rf("1 - a1^2").div(&rf("1 - a1")).unwrap(), rf("1 + a1"));
        assert_eq!(RatFunc::one().div(&RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn normalize_examples() {
        let two = |s: &str| rf(s).numerator();
        let f = RatFunc::from_laurent(&two("2*a1 - 2*a2"), &two("4*a1 - 4*a2")).unwrap();
        assert_eq!(f, RatFunc::from_ratio(1, 2));
        let g = RatFunc::from_laurent(&two("a1^2 - a2^2"), &two("a1 - a2")).unwrap();
        assert_eq!(g.to_string(), "(a1 + a2)/(1)");
        let h = RatFunc::from_laurent(&rf("a1").numerator().div_monomial(&Monomial::var(12, 2)), &two("1")).unwrap();
        assert_eq!(h.to_string(), "(a1)/(v^2)");
        assert_eq!(RatFunc::from_laurent(&two("1"), &LaurentPoly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn denominator_sign_convention() {
        let f = rf("1/(a2 - a1)");
        assert_eq!(f.to_string(), "(-1)/(a1 - a2)");
        assert_eq!(rf("(-a1*a2 + v^2)/(a1 - a2)").to_string(), "(-a1*a2 + v^2)/(a1 - a2)");
    }

    #[test]
    fn equality_examples() {
        let c12 = rf("(1 - a1/(a2*q))/(1 - a1/a2)");
        let lit = rf("(1 - v^-2*a1/a2)/(1 - a1/a2)");
        assert!(c12.rf_equal(&lit));
        assert!(!rf("a1").rf_equal(&rf("a2")));
    }

    #[test]
    fn substitution_examples() {
        // q is kept as the free slot z here so that q = 3 stays rational.
        let d12 = rf("(1 - 1/z)/(1 - a1/a2)");
        let r = rf_substitute(&d12, &[("a1", rf("2")), ("a2", rf("1")), ("z", rf("3"))]).unwrap();
        assert_eq!(r, rf("-2/3"));
        let c12 = rf("(1 - a1/(a2*q))/(1 - a1/a2)");
        assert!(matches!(c12.substitute(&[(0, rf("a2"))]), Err(Error::Pole(_))));
        let cx = rf("(1 - x1/q)/(1 - x1)");
        assert_eq!(cx.substitute(&[(crate::exactalg::registry::slot(1), q())]).unwrap(), RatFunc::zero());
        let partial = rf_substitute(&rf("a1*v + a2"), &[("a1", rf("v"))]).unwrap();
        assert_eq!(partial, rf("v^2 + a2"));
    }

    #[test]
    fn pow_negative_and_zero() {
        assert_eq!(rf("a1").pow(-2).unwrap(), rf("1/a1^2"));
        assert!(RatFunc::zero().pow(-1).is_err());
        assert!(RatFunc::zero().pow(0).unwrap().is_one());
    }
}
