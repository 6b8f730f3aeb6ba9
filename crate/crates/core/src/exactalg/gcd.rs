//! Multivariate polynomial gcd over the integers.
//!
//! Recursive primitive PRS on the cheapest main variable, with monomial and
//! integer content split off first. A univariate image modulo a Mersenne prime
//! detects the common coprime case without running the PRS.

use super::poly::{IntPoly, Poly};
use super::registry::MAX_VARS;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use std::sync::atomic::{AtomicU64, Ordering};

const P: u64 = (1u64 << 61) - 1;

/// Gcd with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_sign();
    }
    if b.is_zero() {
        return a.primitive_sign();
    }
    let ma = a.min_monomial();
    let mb = b.min_monomial();
    let m = ma.gcd(&mb);
    let a1 = if ma.is_one() { a.clone() } else { a.div_monomial(&ma) };
    let b1 = if mb.is_one() { b.clone() } else { b.div_monomial(&mb) };
    let g = gcd_no_monomial(&a1, &b1);
    if m.is_one() {
        g
    } else {
        g.mul_monomial(&m)
    }
}

trait SignNorm {
    fn primitive_sign(&self) -> IntPoly;
}

impl SignNorm for IntPoly {
    fn primitive_sign(&self) -> IntPoly {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

fn int_gcd_poly(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let g = a.content().gcd(&b.content());
    IntPoly::constant(g)
}

fn gcd_no_monomial(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_constant() || b.is_constant() {
        return int_gcd_poly(a, b);
    }
    if a == b {
        return a.primitive_sign();
    }
    let sa = a.support();
    let sb = b.support();
    if sa != sb {
        // A variable missing from one side: the gcd divides every coefficient
        // of the other side with respect to that variable.
        let (p, other, x) = if sa & !sb != 0 {
            (a, b, (sa & !sb).trailing_zeros() as usize)
        } else {
            (b, a, (sb & !sa).trailing_zeros() as usize)
        };
        let mut parts = p.split_var(x);
        parts.retain(|c| !c.is_zero());
        parts.sort_by_key(|c| c.len());
        let mut g = other.clone();
        for c in &parts {
            g = gcd(&g, c);
            if g.is_constant() {
                return int_gcd_poly(a, b);
            }
        }
        return g;
    }
    let x = choose_main_var(a, b, sa);
    let pa = a.split_var(x);
    let pb = b.split_var(x);
    let ca = coeff_content(&pa);
    let cb = coeff_content(&pb);
    let c = gcd(&ca, &cb);
    let ppa = div_parts(&pa, &ca);
    let ppb = div_parts(&pb, &cb);
    let (big, small) = if ppa.len() >= ppb.len() { (ppa, ppb) } else { (ppb, ppa) };
    if small.len() == 1 {
        return c;
    }
    match modular_gcd_degree(&big, &small) {
        Some(0) => return c,
        Some(d) if d + 1 == small.len() => {
            let bigp = Poly::join_var(&big, x);
            let smallp = Poly::join_var(&small, x);
            if bigp.exact_div(&smallp).is_some() {
                return c.mul(&smallp).primitive_sign();
            }
        }
        _ => {}
    }
    let g = prs(big, small);
    if g.len() == 1 {
        return c;
    }
    let g = Poly::join_var(&g, x);
    c.mul(&g).primitive_sign()
}

fn choose_main_var(a: &IntPoly, b: &IntPoly, support: u32) -> usize {
    let mut best = (i32::MAX, usize::MAX);
    for x in 0..MAX_VARS {
        if support & (1 << x) != 0 {
            let d = a.degree_in(x).max(b.degree_in(x));
            if d < best.0 {
                best = (d, x);
            }
        }
    }
    best.1
}

fn coeff_content(parts: &[IntPoly]) -> IntPoly {
    let mut nz: Vec<&IntPoly> = parts.iter().filter(|p| !p.is_zero()).collect();
    nz.sort_by_key(|p| p.len());
    let mut g = IntPoly::zero();
    for p in nz {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_parts(parts: &[IntPoly], c: &IntPoly) -> Vec<IntPoly> {
    if c.is_one() {
        return parts.to_vec();
    }
    parts.iter().map(|p| p.exact_div(c).expect("content divides every coefficient")).collect()
}

/// Primitive PRS on coefficient vectors in the main variable. Returns the
/// primitive gcd as a coefficient vector.
fn prs(mut a: Vec<IntPoly>, mut b: Vec<IntPoly>) -> Vec<IntPoly> {
    loop {
        let r = prem(a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![IntPoly::one()];
        }
        let cr = coeff_content(&r);
        let mut r = div_parts(&r, &cr);
        if r.last().is_some_and(|l| l.leading_coeff().is_negative()) {
            r = r.iter().map(|p| p.neg()).collect();
        }
        a = b;
        b = r;
    }
}

fn prem(mut a: Vec<IntPoly>, b: &[IntPoly]) -> Vec<IntPoly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    while a.len() > db {
        let da = a.len() - 1;
        let lca = a[da].clone();
        let shift = da - db;
        for (k, ak) in a.iter_mut().enumerate().take(da) {
            let mut t = ak.mul(lcb);
            if k >= shift {
                t = t.sub(&lca.mul(&b[k - shift]));
            }
            *ak = t;
        }
        a.pop();
        while a.last().is_some_and(|p| p.is_zero()) {
            a.pop();
        }
    }
    a
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

static SEED: AtomicU64 = AtomicU64::new(0x5EED);

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn reduce(c: &BigInt, p_big: &BigInt) -> u64 {
    c.mod_floor(p_big).to_u64().expect("reduced below the modulus")
}

fn image(parts: &[IntPoly], point: &[u64; MAX_VARS], p_big: &BigInt) -> Vec<u64> {
    parts
        .iter()
        .map(|part| {
            let mut acc = 0u64;
            for (m, c) in part.terms() {
                let mut t = reduce(c, p_big);
                for (i, &e) in m.exps().iter().enumerate() {
                    if e != 0 {
                        t = mulmod(t, powmod(point[i], e as u64));
                    }
                }
                acc = (acc + t) % P;
            }
            acc
        })
        .collect()
}

fn uni_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), P - 2);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                let s = mulmod(f, *bk);
                a[k + shift] = (a[k + shift] + P - s) % P;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Degree of the gcd of a univariate modular image, or `None` when the
/// evaluation point drops a leading coefficient. The returned degree bounds the
/// true gcd degree from above.
fn modular_gcd_degree(a: &[IntPoly], b: &[IntPoly]) -> Option<usize> {
    let p_big = BigInt::from(P);
    let mut state = SEED.fetch_add(1, Ordering::Relaxed);
    for _ in 0..3 {
        let mut point = [0u64; MAX_VARS];
        for slot in point.iter_mut() {
            *slot = splitmix(&mut state) % (P - 2) + 2;
        }
        let ia = image(a, &point, &p_big);
        let ib = image(b, &point, &p_big);
        if ia.last() != Some(&0) && ib.last() != Some(&0) {
            return Some(uni_gcd_degree(ia, ib));
        }
    }
    None
}

/// Exact quotient by a gcd computed above. Panics if the division is inexact.
pub(crate) fn div_exact(a: &IntPoly, g: &IntPoly) -> IntPoly {
    if g.is_one() {
        return a.clone();
    }
    a.exact_div(g).expect("gcd divides its argument")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::monomial::Monomial;

    fn ip(terms: &[(&[i32], i64)]) -> IntPoly {
        Poly::from_terms(terms.iter().map(|(e, c)| (Monomial::from_exps(e), BigInt::from(*c))).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (x - y)(x + 2z) and (x - y)(y^2 + 1)
        let f = ip(&[(&[1], 1), (&[0, 1], -1)]);
        let g = ip(&[(&[1], 1), (&[0, 0, 1], 2)]);
        let h = ip(&[(&[0, 2], 1), (&[], 1)]);
        let d = gcd(&f.mul(&g), &f.mul(&h));
        assert_eq!(d, f);
    }

    #[test]
    fn gcd_monomial_and_integer_content() {
        let a = ip(&[(&[2, 1], 6), (&[1, 1], 4)]);
        let b = ip(&[(&[1, 2], 4)]);
        assert_eq!(gcd(&a, &b), ip(&[(&[1, 1], 2)]));
    }

    #[test]
    fn coprime_and_zero() {
        let a = ip(&[(&[1], 1), (&[], 1)]);
        let b = ip(&[(&[1], 1), (&[], -1)]);
        assert!(gcd(&a, &b).is_one());
        assert_eq!(gcd(&IntPoly::zero(), &b.neg()), b);
    }

    #[test]
    fn disjoint_variable_sets() {
        let common = ip(&[(&[0, 1], 1), (&[], 3)]);
        let a = common.mul(&ip(&[(&[1], 1), (&[], 1)]));
        let b = common.mul(&ip(&[(&[0, 0, 1], 1), (&[0, 1], 1)]));
        assert_eq!(gcd(&a, &b), common);
    }

    #[test]
    fn higher_degree_common_factor() {
        let f = ip(&[(&[2, 1], 1), (&[0, 0, 3], -2), (&[1], 1), (&[], 5)]);
        let g = ip(&[(&[3], 1), (&[1, 1, 1], 1), (&[], -1)]);
        let h = ip(&[(&[1, 2], 3), (&[0, 0, 1], 1), (&[], 1)]);
        let d = gcd(&f.mul(&g).mul(&f), &f.mul(&h));
        assert_eq!(d, f);
    }
}
