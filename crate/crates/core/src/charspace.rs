//! Unramified characters of the diagonal torus of GL(2n) and the scalar
//! factors built from them.

use crate::error::{parse_err, Error, Result};
use crate::exactalg::registry::{eta, satake, V};
use crate::exactalg::{parse_ratfunc, RatFunc};
use crate::weylcomb::Perm;
use std::collections::BTreeSet;
use std::fmt;

/// Values `θ_1(ϖ), …, θ_{2n}(ϖ)` together with the value used for `v = q^{1/2}`.
///
/// `v` is the registry variable unless the character was specialized to
/// numbers for randomized checking.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnramChar {
    values: Vec<RatFunc>,
    v: RatFunc,
}

impl UnramChar {
    pub fn new(values: Vec<RatFunc>) -> Result<Self> {
        Self::with_v(values, RatFunc::var(V))
    }

    pub fn with_v(values: Vec<RatFunc>, v: RatFunc) -> Result<Self> {
        if values.is_empty() || values.len() % 2 != 0 {
            return Err(Error::Precondition(format!("a character of GL(2n) needs 2n values, got {}", values.len())));
        }
        if let Some(i) = values.iter().position(|x| x.is_zero()) {
            return Err(Error::Precondition(format!("θ_{} vanishes", i + 1)));
        }
        if v.is_zero() {
            return Err(Error::Precondition("v must be nonzero".into()));
        }
        Ok(UnramChar { values, v })
    }

    pub fn n(&self) -> usize {
        self.values.len() / 2
    }

    pub fn values(&self) -> &[RatFunc] {
        &self.values
    }

    /// `θ_i(ϖ)`, 1-based.
    pub fn value(&self, i: usize) -> &RatFunc {
        &self.values[i - 1]
    }

    pub fn v(&self) -> &RatFunc {
        &self.v
    }

    pub fn q(&self) -> RatFunc {
        self.v.mul(&self.v)
    }

    /// `θ^w` with `(θ^w)_i = θ_{w(i)}`; a right action.
    pub fn act(&self, w: &Perm) -> UnramChar {
        assert_eq!(w.size(), self.values.len(), "permutation and character sizes differ");
        UnramChar { values: (1..=w.size()).map(|i| self.value(w.apply(i)).clone()).collect(), v: self.v.clone() }
    }

    /// First pair `(i, j)`, `i < j`, with `θ_i = θ_j`.
    pub fn regularity_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.values.len() {
            for j in i + 1..self.values.len() {
                if self.values[i] == self.values[j] {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn is_regular(&self) -> bool {
        self.regularity_violation().is_none()
    }

    /// `θ_i θ_{n+i} = 1` for all `i ≤ n`.
    pub fn is_ag_ordered(&self) -> bool {
        let n = self.n();
        (1..=n).all(|i| self.value(i).mul(self.value(n + i)).is_one())
    }

    /// Applies `f` to every value and to `v`.
    pub fn map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<UnramChar> {
        let values = self.values.iter().map(&f).collect::<Result<Vec<_>>>()?;
        UnramChar::with_v(values, f(&self.v)?)
    }
}

impl fmt::Display for UnramChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `(a1, …, a_{2n})`.
pub fn generic_char(n: usize) -> UnramChar {
    UnramChar::new((1..=2 * n).map(|i| RatFunc::var(satake(i))).collect()).expect("nonzero generators")
}

/// `(a1, …, an, a1⁻¹, …, an⁻¹)`.
pub fn ag_generic_char(n: usize) -> UnramChar {
    let head: Vec<RatFunc> = (1..=n).map(|i| RatFunc::var(satake(i))).collect();
    let tail: Vec<RatFunc> = head.iter().map(|x| x.inv().expect("nonzero")).collect();
    UnramChar::new(head.into_iter().chain(tail).collect()).expect("nonzero generators")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharReport {
    pub regular: bool,
    pub ag_ordered: bool,
}

pub fn validate_char(theta: &UnramChar) -> CharReport {
    CharReport { regular: theta.is_regular(), ag_ordered: theta.is_ag_ordered() }
}

/// `c(x) = (1 − q⁻¹x)/(1 − x)`.
pub fn c_of(x: &RatFunc, v: &RatFunc) -> Result<RatFunc> {
    let one = RatFunc::one();
    let den = one.sub(x);
    if den.is_zero() {
        return Err(Error::Pole("c(x) at x = 1".into()));
    }
    let q = v.mul(v);
    one.sub(&x.div(&q)?).div(&den)
}

/// `d(x) = (1 − q⁻¹)/(1 − x)`.
pub fn d_of(x: &RatFunc, v: &RatFunc) -> Result<RatFunc> {
    let one = RatFunc::one();
    let den = one.sub(x);
    if den.is_zero() {
        return Err(Error::Pole("d(x) at x = 1".into()));
    }
    let q = v.mul(v);
    one.sub(&q.inv()?).div(&den)
}

fn ratio(theta: &UnramChar, i: usize, j: usize) -> Result<RatFunc> {
    let n2 = theta.values.len();
    if i == 0 || j == 0 || i > n2 || j > n2 || i == j {
        return Err(Error::Precondition(format!("bad index pair ({i}, {j}) for GL({n2})")));
    }
    if theta.value(i) == theta.value(j) {
        return Err(Error::Pole(format!("θ_{i} = θ_{j}")));
    }
    theta.value(i).div(theta.value(j))
}

/// `c_{i,j}(θ) = (1 − q⁻¹θ_i/θ_j)/(1 − θ_i/θ_j)`.
pub fn c_factor(theta: &UnramChar, i: usize, j: usize) -> Result<RatFunc> {
    c_of(&ratio(theta, i, j)?, theta.v())
}

/// `d_{i,j}(θ) = (1 − q⁻¹)/(1 − θ_i/θ_j) = 1 − c_{j,i}(θ)`.
pub fn d_factor(theta: &UnramChar, i: usize, j: usize) -> Result<RatFunc> {
    d_of(&ratio(theta, i, j)?, theta.v())
}

pub fn char_act(w: &Perm, theta: &UnramChar) -> UnramChar {
    theta.act(w)
}

/// Block data `a + b + 2c = n` of a regular parahoric-spherical
/// representation with a Shalika model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentData {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub theta: Vec<RatFunc>,
    pub eps: Vec<i8>,
    pub eta: Vec<RatFunc>,
}

impl SegmentData {
    /// Fresh variables: `a1..aa` for the character pairs, `h1..hc` for the
    /// Steinberg pairs.
    pub fn generic(a: usize, b: usize, c: usize, eps: Vec<i8>) -> Result<Self> {
        if c > crate::exactalg::registry::H_SLOTS {
            return Err(Error::Precondition(format!("at most {} Steinberg pairs", crate::exactalg::registry::H_SLOTS)));
        }
        let d = SegmentData {
            a,
            b,
            c,
            theta: (1..=a).map(|i| RatFunc::var(satake(i))).collect(),
            eps,
            eta: (1..=c).map(|i| RatFunc::var(eta(i))).collect(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.a + self.b + 2 * self.c
    }

    pub fn validate(&self) -> Result<()> {
        if self.b > 2 {
            return Err(Error::Precondition(format!("b = {} > 2 contradicts regularity", self.b)));
        }
        if self.n() == 0 {
            return Err(Error::Precondition("a + b + 2c must be positive".into()));
        }
        if self.theta.len() != self.a || self.eps.len() != self.b || self.eta.len() != self.c {
            return Err(Error::Precondition("value lists do not match a, b, c".into()));
        }
        if self.eps.iter().any(|e| *e != 1 && *e != -1) {
            return Err(Error::Precondition("ε_i must be ±1".into()));
        }
        Ok(())
    }

    /// Every block shape with `n ≤ max_n` and every sign choice giving a
    /// regular character; remaining values generic.
    pub fn enumerate(max_n: usize) -> Vec<SegmentData> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for c in 0..=n / 2 {
                for b in 0..=2.min(n - 2 * c) {
                    let a = n - b - 2 * c;
                    for signs in 0..(1u32 << b) {
                        let eps = (0..b).map(|k| if signs & (1 << k) == 0 { 1 } else { -1 }).collect();
                        if let Ok(d) = SegmentData::generic(a, b, c, eps) {
                            if segment_char(&d).is_ok() {
                                out.push(d);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// The character attached to the block data and the Weyl element `τ` swapping
/// each Steinberg position `j` with `n + j`.
pub fn segment_char(data: &SegmentData) -> Result<(UnramChar, Perm)> {
    data.validate()?;
    let n = data.n();
    let v = RatFunc::var(V);
    let vinv = v.inv()?;
    let mut head: Vec<RatFunc> = data.theta.clone();
    for e in &data.eps {
        head.push(vinv.scale_by(&crate::exactalg::Rational::from_integer((*e as i64).into())));
    }
    for h in &data.eta {
        head.push(h.mul(&vinv));
        head.push(h.inv()?.mul(&vinv));
    }
    let tail = head.iter().map(|x| x.inv()).collect::<Result<Vec<_>>>()?;
    let theta = UnramChar::new(head.into_iter().chain(tail).collect())?;
    if let Some((i, j)) = theta.regularity_violation() {
        return Err(Error::Irregular(i, j));
    }
    let mut tau = Perm::identity(2 * n);
    for j in data.a + 1..=n {
        tau = tau.compose(&Perm::transposition(2 * n, j, n + j));
    }
    Ok((theta, tau))
}

/// Subset of `{1..2n}` with one index from each pair `{i, n+i}` when spin.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Refinement {
    n: usize,
    set: BTreeSet<usize>,
}

impl Refinement {
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if set.len() != n || set.iter().any(|&i| i == 0 || i > 2 * n) {
            return Err(Error::Precondition(format!("{set:?} is not an n-subset of 1..{}", 2 * n)));
        }
        Ok(Refinement { n, set })
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.set
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(&i)
    }

    pub fn is_spin(&self) -> bool {
        (1..=self.n).all(|i| self.set.contains(&i) != self.set.contains(&(self.n + i)))
    }

    pub fn complement(&self) -> Refinement {
        Refinement { n: self.n, set: (1..=2 * self.n).filter(|i| !self.set.contains(i)).collect() }
    }
}

impl fmt::Display for Refinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.set.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `2ⁿ` spin refinements, ordered lexicographically as sorted index lists.
pub fn all_spin_refinements(n: usize) -> Vec<Refinement> {
    let mut out: Vec<Refinement> = (0u32..1 << n)
        .map(|bits| {
            let set = (1..=n).map(|i| if bits & (1 << (i - 1)) == 0 { i } else { n + i }).collect();
            Refinement { n, set }
        })
        .collect();
    out.sort_by(|a, b| a.set.iter().cmp(b.set.iter()));
    out
}

/// `v^{n²}·∏_{i∈I} θ_i(ϖ)`.
pub fn refinement_eigenvalue(theta: &UnramChar, r: &Refinement) -> Result<RatFunc> {
    if r.n != theta.n() || !r.is_spin() {
        return Err(Error::Precondition(format!("{r} is not a spin refinement for n = {}", theta.n())));
    }
    let mut acc = theta.v().pow((r.n * r.n) as i32)?;
    for &i in &r.set {
        acc = acc.mul(theta.value(i));
    }
    Ok(acc)
}

/// Parses `generic`, `ag-generic`, `segments a=..,b=..,c=..[,eps=..][,eta=..]`
/// or a comma-separated list of `2n` rational functions.
pub fn parse_char_spec(text: &str, n: usize) -> Result<UnramChar> {
    let t = text.trim();
    match t {
        "generic" => return Ok(generic_char(n)),
        "ag-generic" => return Ok(ag_generic_char(n)),
        _ => {}
    }
    if t.starts_with("segments") {
        let data = parse_segment_spec(t)?;
        if data.n() != n {
            return Err(parse_err(0, format!("segments describe n = {}, expected {n}", data.n())));
        }
        return segment_char(&data).map(|(theta, _)| theta);
    }
    let values = split_top_level(t)
        .into_iter()
        .map(|(pos, s)| parse_ratfunc(s).map_err(|e| shift_err(e, pos)))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != 2 * n {
        return Err(parse_err(0, format!("expected {} values, found {}", 2 * n, values.len())));
    }
    UnramChar::new(values).map_err(|e| parse_err(0, e.to_string()))
}

fn shift_err(e: Error, pos: usize) -> Error {
    match e {
        Error::Parse { pos: p, msg } => Error::Parse { pos: p + pos, msg },
        other => other,
    }
}

/// Splits at commas outside parentheses, keeping byte offsets.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// `segments a=1,b=1,c=0,eps=-1` or with explicit values
/// `segments a=1,b=0,c=1,theta=2,eta=h1`; list entries are separated by `:`.
pub fn parse_segment_spec(text: &str) -> Result<SegmentData> {
    let t = text.trim();
    let body = t.strip_prefix("segments").ok_or_else(|| parse_err(0, "expected `segments`"))?;
    let offset = t.len() - body.len();
    let (mut a, mut b, mut c) = (None, None, None);
    let mut eps: Option<Vec<i8>> = None;
    let mut theta: Option<Vec<RatFunc>> = None;
    let mut etas: Option<Vec<RatFunc>> = None;
    for (pos, item) in split_top_level(body) {
        let pos = pos + offset;
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (key, val) = item.split_once('=').ok_or_else(|| parse_err(pos, format!("expected key=value, got `{item}`")))?;
        let count = |v: &str| -> Result<usize> {
            v.trim().parse::<usize>().ok().filter(|x| *x <= 12).ok_or_else(|| parse_err(pos, format!("bad count `{v}`")))
        };
        let list = |v: &str| -> Result<Vec<RatFunc>> {
            v.split(':').map(|s| parse_ratfunc(s).map_err(|e| shift_err(e, pos))).collect()
        };
        match key.trim() {
            "a" => a = Some(count(val)?),
            "b" => b = Some(count(val)?),
            "c" => c = Some(count(val)?),
            "eps" => {
                eps = Some(
                    val.split(':')
                        .map(|s| match s.trim() {
                            "1" | "+1" | "+" => Ok(1),
                            "-1" | "-" => Ok(-1),
                            other => Err(parse_err(pos, format!("ε must be ±1, got `{other}`"))),
                        })
                        .collect::<Result<_>>()?,
                )
            }
            "theta" => theta = Some(list(val)?),
            "eta" => etas = Some(list(val)?),
            other => return Err(parse_err(pos, format!("unknown key `{other}`"))),
        }
    }
    let (a, b, c) = match (a, b, c) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(parse_err(offset, "a, b and c are required")),
    };
    let eps = eps.unwrap_or_else(|| vec![1; b]);
    let mut data = SegmentData::generic(a, b, c, eps).map_err(|e| parse_err(offset, e.to_string()))?;
    if let Some(th) = theta {
        data.theta = th;
    }
    if let Some(et) = etas {
        data.eta = et;
    }
    data.validate().map_err(|e| parse_err(offset, e.to_string()))?;
    Ok(data)
}
