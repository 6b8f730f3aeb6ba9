use super::poly::IntPoly;
use super::ratfunc::RatFunc;
use super::registry::VarRegistry;
use super::Rational;
use crate::error::{Error, Result};
use num_traits::One;

/// Coefficients of `var^0 .. var^order` of the power-series expansion of `f`.
pub fn series_expand(f: &RatFunc, var: usize, order: usize) -> Result<Vec<RatFunc>> {
    let (scale, num, den) = f.parts();
    expand_parts(scale, num, den, var, order, f)
}

fn expand_parts(
    scale: &Rational,
    num: &IntPoly,
    den: &IntPoly,
    var: usize,
    order: usize,
    f: &RatFunc,
) -> Result<Vec<RatFunc>> {
    if f.is_zero() {
        return Ok(vec![RatFunc::zero(); order + 1]);
    }
    let ns = num.split_var(var);
    let ds = den.split_var(var);
    if ds[0].is_zero() {
        return Err(Error::NonUnitConstantTerm(VarRegistry::standard().name(var).to_string()));
    }
    let lift = |p: &IntPoly| RatFunc::from_int_polys(Rational::one(), p, &IntPoly::one());
    let d0_inv = lift(&ds[0])?.inv()?;
    let dk: Vec<RatFunc> = ds.iter().map(lift).collect::<Result<_>>()?;
    let mut out: Vec<RatFunc> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = match ns.get(k) {
            Some(p) if !p.is_zero() => lift(p)?.scale_by(scale),
            _ => RatFunc::zero(),
        };
        for j in 1..=k.min(dk.len() - 1) {
            if !dk[j].is_zero() {
                acc = acc.sub(&dk[j].mul(&out[k - j]));
            }
        }
        out.push(acc.mul(&d0_inv));
    }
    Ok(out)
}

/// Truncated Laurent series `Σ_{k ≥ start} coeffs[k - start] · var^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    pub start: i32,
    pub coeffs: Vec<RatFunc>,
}

impl LaurentSeries {
    /// Coefficient of `var^k`, zero outside the stored window.
    pub fn coeff(&self, k: i32) -> RatFunc {
        if k < self.start {
            return RatFunc::zero();
        }
        self.coeffs.get((k - self.start) as usize).cloned().unwrap_or_default()
    }

    pub fn end(&self) -> i32 {
        self.start + self.coeffs.len() as i32 - 1
    }
}

/// Laurent expansion in `var` through `var^upto`, pulling powers of `var`
/// out of the denominator first.
pub fn laurent_expand(f: &RatFunc, var: usize, upto: i32) -> Result<LaurentSeries> {
    let (scale, num, den) = f.parts();
    let shift = den.min_degree_in(var);
    let m = super::monomial::Monomial::var(var, shift);
    let den = den.div_monomial(&m);
    let start = -shift;
    if upto < start {
        return Ok(LaurentSeries { start, coeffs: Vec::new() });
    }
    let coeffs = expand_parts(scale, num, &den, var, (upto - start) as usize, f)?;
    Ok(LaurentSeries { start, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_ratfunc;
    use crate::exactalg::registry::X;

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn geometric() {
        let c = series_expand(&p("1/(1 - a1*X)"), X, 3).unwrap();
        assert_eq!(c, vec![p("1"), p("a1"), p("a1^2"), p("a1^3")]);
    }

    #[test]
    fn long_division() {
        assert_eq!(series_expand(&p("(1+X)/(1-X)"), X, 2).unwrap(), vec![p("1"), p("2"), p("2")]);
        assert_eq!(series_expand(&p("1/(1-X^2)"), X, 3).unwrap(), vec![p("1"), p("0"), p("1"), p("0")]);
    }

    #[test]
    fn non_unit_constant_term() {
        assert!(matches!(series_expand(&p("1/X"), X, 2), Err(Error::NonUnitConstantTerm(_))));
    }

    #[test]
    fn laurent_window() {
        let s = laurent_expand(&p("1/(X*(1 - a2*X))"), X, 2).unwrap();
        assert_eq!(s.start, -1);
        assert_eq!(s.coeff(-1), p("1"));
        assert_eq!(s.coeff(2), p("a2^3"));
        assert_eq!(s.coeff(-2), p("0"));
    }
}
