//! Local zeta integrals in the variable `X = χ(ϖ)q^{−s}`, test-vector
//! constants, interpolation factors and the unit-group mass.

use crate::charspace::{all_spin_refinements, Refinement, UnramChar};
use crate::error::{Error, Result};
use crate::exactalg::registry::{CHI, X};
use crate::exactalg::{laurent_expand, LaurentSeries, RatFunc};

fn x() -> RatFunc {
    RatFunc::var(X)
}

/// `1/(1 − u·X)`.
pub fn l_factor(u: &RatFunc) -> RatFunc {
    RatFunc::one().sub(&u.mul(&x())).inv().expect("1 − uX is a nonzero polynomial")
}

/// Character after the Weyl twist, plus the conductor exponent of the
/// additive character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaParams {
    pub theta: UnramChar,
    pub delta: u32,
}

impl ZetaParams {
    pub fn new(theta: UnramChar, delta: u32) -> Result<Self> {
        if let Some((i, j)) = theta.regularity_violation() {
            return Err(Error::Irregular(i, j));
        }
        Ok(ZetaParams { theta, delta })
    }

    pub fn n(&self) -> usize {
        self.theta.n()
    }
}

/// `X^{−δn}·v^{−δn²}·(1 − q⁻¹)ⁿ·∏_{i>n} 1/(1 − θ_i X)`.
pub fn zeta_refined(p: &ZetaParams) -> Result<RatFunc> {
    let n = p.n() as i32;
    let d = p.delta as i32;
    let th = &p.theta;
    let mut acc = x().pow(-d * n)?.mul(&th.v().pow(-d * n * n)?);
    acc = acc.mul(&RatFunc::one().sub(&th.q().inv()?).pow(n)?);
    for i in p.n() + 1..=2 * p.n() {
        acc = acc.mul(&l_factor(th.value(i)));
    }
    Ok(acc)
}

/// `(χ²/X)^{nδ}·∏_{i=1}^{2n} 1/(1 − θ_i v⁻¹ X)`.
pub fn zeta_spherical(theta: &UnramChar, delta: u32) -> Result<RatFunc> {
    let chi = RatFunc::var(CHI);
    let e = (theta.n() as i32) * delta as i32;
    let mut acc = chi.mul(&chi).div(&x())?.pow(e)?;
    let vinv = theta.v().inv()?;
    for u in theta.values() {
        acc = acc.mul(&l_factor(&u.mul(&vinv)));
    }
    Ok(acc)
}

/// Largest `n` for which the series oracle is run.
pub const ORACLE_MAX_N: usize = 3;

/// Product of the `n` torus integrals
/// `(1 − q⁻¹)Σ_{m ≥ −δ}(θ_{n+i}X)^m`, times `v^{−δn²}∏θ_{n+i}^δ`, through
/// `X^order`. Each factor is carried far enough that every returned
/// coefficient is exact.
pub fn zeta_oracle(p: &ZetaParams, order: i32) -> Result<LaurentSeries> {
    let n = p.n();
    if n > ORACLE_MAX_N {
        return Err(Error::BoundExceeded(format!("oracle runs for n ≤ {ORACLE_MAX_N}, got {n}")));
    }
    let d = p.delta as i32;
    let th = &p.theta;
    let mass = RatFunc::one().sub(&th.q().inv()?);
    let start = -d * n as i32;
    if order < start {
        return Ok(LaurentSeries { start, coeffs: Vec::new() });
    }
    let reach = order + (n as i32 - 1) * d;
    // running product, coefficient k stored at index k − lo
    let mut lo = 0i32;
    let mut acc = vec![RatFunc::one()];
    let mut pre = th.v().pow(-d * (n * n) as i32)?;
    for i in n + 1..=2 * n {
        let u = th.value(i);
        pre = pre.mul(&u.pow(d)?);
        let factor: Vec<RatFunc> = (-d..=reach).map(|m| u.pow(m).map(|p| p.mul(&mass))).collect::<Result<_>>()?;
        let new_lo = lo - d;
        let mut next = vec![RatFunc::zero(); (reach - new_lo + 1).max(0) as usize];
        for (a, ca) in acc.iter().enumerate() {
            for (b, cb) in factor.iter().enumerate() {
                let k = lo + a as i32 + (b as i32 - d);
                if k > reach {
                    break;
                }
                let slot = (k - new_lo) as usize;
                next[slot] = next[slot].add(&ca.mul(cb));
            }
        }
        acc = next;
        lo = new_lo;
    }
    let coeffs = (start..=order).map(|k| acc.get((k - lo) as usize).cloned().unwrap_or_default().mul(&pre)).collect();
    Ok(LaurentSeries { start, coeffs })
}

/// Coefficient-wise comparison of the closed form against the oracle from
/// `X^{−δn}` through `X^order`.
pub fn zeta_matches_oracle(p: &ZetaParams, order: i32) -> Result<bool> {
    let closed = laurent_expand(&zeta_refined(p)?, X, order)?;
    let oracle = zeta_oracle(p, order)?;
    Ok((oracle.start.min(closed.start)..=order).all(|k| closed.coeff(k) == oracle.coeff(k)))
}

/// Constants `κ_α` with `Σ_α κ_α·∏_{i∉I_α}(1 − θ_i X) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaSolution {
    pub entries: Vec<(Refinement, RatFunc)>,
    pub verified: bool,
}

impl KappaSolution {
    pub fn get(&self, r: &Refinement) -> Option<&RatFunc> {
        self.entries.iter().find(|(s, _)| s == r).map(|(_, k)| k)
    }

    /// `Σ_α κ_α·∏_{i∉I_α}(1 − θ_i X)`.
    pub fn reconstruct(&self, theta: &UnramChar) -> RatFunc {
        self.entries.iter().fold(RatFunc::zero(), |acc, (r, k)| acc.add(&k.mul(&complement_product(theta, r))))
    }
}

fn complement_product(theta: &UnramChar, r: &Refinement) -> RatFunc {
    r.complement().indices().iter().fold(RatFunc::one(), |acc, &i| acc.mul(&RatFunc::one().sub(&theta.value(i).mul(&x()))))
}

/// `e_k` of `vals`, `k = 0..=vals.len()`.
fn elementary(vals: &[&RatFunc]) -> Vec<RatFunc> {
    let mut e = vec![RatFunc::one()];
    for u in vals {
        let mut next = e.clone();
        next.push(RatFunc::zero());
        for k in 1..next.len() {
            next[k] = next[k].add(&e[k - 1].mul(u));
        }
        e = next;
    }
    e
}

/// Solves for `κ` on the first `n+1` spin refinements in lexicographic
/// order, letting any other refinement enter as a pivot only if that square
/// system is singular. Pivots are chosen by least total degree.
pub fn kappa_solve(theta: &UnramChar) -> Result<KappaSolution> {
    if !theta.is_ag_ordered() {
        return Err(Error::Precondition("κ needs an AG-ordered character".into()));
    }
    if let Some((i, j)) = theta.regularity_violation() {
        return Err(Error::Irregular(i, j));
    }
    let n = theta.n();
    let refs = all_spin_refinements(n);
    // row k: coefficient of X^k, (−1)^k e_k over the complement
    let mut m: Vec<Vec<RatFunc>> = vec![Vec::with_capacity(refs.len() + 1); n + 1];
    for r in &refs {
        let comp = r.complement();
        let vals: Vec<&RatFunc> = comp.indices().iter().map(|&i| theta.value(i)).collect();
        for (k, e) in elementary(&vals).into_iter().enumerate() {
            m[k].push(if k % 2 == 0 { e } else { e.neg() });
        }
    }
    for (k, row) in m.iter_mut().enumerate() {
        row.push(if k == 0 { RatFunc::one() } else { RatFunc::zero() });
    }
    let cols = refs.len();
    let sol = solve(&mut m, cols, n + 1).or_else(|_| {
        let mut m2 = m.clone();
        solve(&mut m2, cols, cols)
    })?;
    let entries: Vec<(Refinement, RatFunc)> = refs.into_iter().zip(sol).collect();
    let mut out = KappaSolution { entries, verified: false };
    out.verified = out.reconstruct(theta).is_one();
    Ok(out)
}

/// Gauss–Jordan on the augmented matrix `m`, pivoting only within the
/// first `allowed` columns; free unknowns are zero.
fn solve(m: &mut [Vec<RatFunc>], cols: usize, allowed: usize) -> Result<Vec<RatFunc>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    for r in 0..rows {
        let mut best: Option<(i32, usize, usize)> = None;
        for rr in r..rows {
            for c in 0..allowed.min(cols) {
                if pivots.iter().any(|&(_, pc)| pc == c) || m[rr][c].is_zero() {
                    continue;
                }
                let deg = m[rr][c].total_degree();
                if best.map_or(true, |(d, _, _)| deg < d) {
                    best = Some((deg, rr, c));
                }
            }
        }
        let (_, pr, pc) = best.ok_or(Error::SingularSystem)?;
        m.swap(r, pr);
        let inv = m[r][pc].inv()?;
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for rr in 0..rows {
            if rr != r && !m[rr][pc].is_zero() {
                let f = m[rr][pc].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[rr].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push((r, pc));
    }
    let mut sol = vec![RatFunc::zero(); cols];
    for (r, c) in pivots {
        sol[c] = m[r][cols].clone();
    }
    Ok(sol)
}

/// Which branch of the interpolation factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpBranch {
    Unramified,
    Ramified { alpha: RatFunc, beta: u32 },
}

/// Ramified: `(q^{nj + n(n−1)/2}/α)^β`.
/// Unramified: `∏_{i>n}(1 − θ_i⁻¹q^{j−1/2})/(1 − θ_i q^{−j−1/2})`.
pub fn e_p_factor(theta: &UnramChar, j: i32, branch: &EpBranch) -> Result<RatFunc> {
    let n = theta.n() as i32;
    let v = theta.v();
    match branch {
        EpBranch::Ramified { alpha, beta } => {
            if alpha.is_zero() {
                return Err(Error::Precondition("alpha must be nonzero".into()));
            }
            v.pow(2 * (n * j + n * (n - 1) / 2))?.div(alpha)?.pow(*beta as i32)
        }
        EpBranch::Unramified => {
            let mut acc = RatFunc::one();
            for i in theta.n() + 1..=2 * theta.n() {
                let u = theta.value(i);
                let num = RatFunc::one().sub(&u.inv()?.mul(&v.pow(2 * j - 1)?));
                let den = RatFunc::one().sub(&u.mul(&v.pow(-2 * j - 1)?));
                acc = acc.mul(&num.div(&den).map_err(|_| Error::Pole(format!("e_p denominator at index {i}")))?);
            }
            Ok(acc)
        }
    }
}

/// `∏_{i=1}^n (1 − q^{−i})`.
pub fn unit_mass(n: usize) -> Result<RatFunc> {
    if n == 0 {
        return Err(Error::Precondition("unit mass needs n ≥ 1".into()));
    }
    let q = crate::exactalg::q();
    (1..=n as i32).try_fold(RatFunc::one(), |acc, i| Ok(acc.mul(&RatFunc::one().sub(&q.pow(-i)?))))
}
