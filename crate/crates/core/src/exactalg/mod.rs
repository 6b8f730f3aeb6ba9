//! Exact arithmetic over ℚ and over rational functions in the registry
//! variables.

mod gcd;
pub mod monomial;
mod parse;
pub mod poly;
pub mod random;
mod ratfunc;
pub mod registry;
mod series;

pub use monomial::Monomial;
pub use parse::parse_ratfunc;
pub use poly::{Coeff, IntPoly, Poly};
pub use ratfunc::{fmt_poly, RatFunc};
pub use registry::VarRegistry;
pub use series::{laurent_expand, series_expand, LaurentSeries};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Sparse Laurent polynomial with rational coefficients.
pub type LaurentPoly = Poly<Rational>;

/// Operation selector for [`rf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rf_arith(op: ArithOp, f: &RatFunc, g: &RatFunc) -> crate::Result<RatFunc> {
    Ok(match op {
        ArithOp::Add => f.add(g),
        ArithOp::Sub => f.sub(g),
        ArithOp::Mul => f.mul(g),
        ArithOp::Div => f.div(g)?,
    })
}

/// Canonical form of `num / den`.
pub fn rf_normalize(num: &LaurentPoly, den: &LaurentPoly) -> crate::Result<RatFunc> {
    RatFunc::from_laurent(num, den)
}

pub fn rf_equal(f: &RatFunc, g: &RatFunc) -> bool {
    f.rf_equal(g)
}

/// Exact composition; `bindings` maps registry names to values.
pub fn rf_substitute(f: &RatFunc, bindings: &[(&str, RatFunc)]) -> crate::Result<RatFunc> {
    let reg = VarRegistry::standard();
    let idx: Vec<(usize, RatFunc)> = bindings
        .iter()
        .map(|(n, v)| {
            reg.index(n).map(|i| (i, v.clone())).ok_or_else(|| crate::Error::UnknownVariable(n.to_string()))
        })
        .collect::<crate::Result<_>>()?;
    f.substitute(&idx)
}

/// Shorthand for building values in code: `rf("a1/(1 - a1)")`.
///
/// Panics on malformed input; use [`parse_ratfunc`] for untrusted text.
pub fn rf(text: &str) -> RatFunc {
    parse_ratfunc(text).unwrap_or_else(|e| panic!("bad rational function literal {text:?}: {e}"))
}

/// The generator `v` with `v² = q`.
pub fn v() -> RatFunc {
    RatFunc::var(registry::V)
}

/// `q = v²`.
pub fn q() -> RatFunc {
    v().mul(&v())
}

#[cfg(test)]
mod props;
