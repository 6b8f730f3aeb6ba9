//! Vectors in the Siegel-parahoric fixed space of an unramified principal
//! series and the action of intertwining operators on them.

use crate::charspace::{c_factor, d_factor, UnramChar};
use crate::error::{Error, Result};
use crate::exactalg::registry::V;
use crate::exactalg::{parse_ratfunc, RatFunc};
use crate::weylcomb::{coset_min_rep, Perm};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Linear combination of the coset functions `f_{BwJ}`, keyed by minimal
/// coset representatives, over the character `theta`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParahoricVec {
    theta: UnramChar,
    coeffs: BTreeMap<Perm, RatFunc>,
}

impl ParahoricVec {
    pub fn zero(theta: UnramChar) -> Self {
        ParahoricVec { theta, coeffs: BTreeMap::new() }
    }

    pub fn theta(&self) -> &UnramChar {
        &self.theta
    }

    pub fn n(&self) -> usize {
        self.theta.n()
    }

    pub fn coeffs(&self) -> &BTreeMap<Perm, RatFunc> {
        &self.coeffs
    }

    /// Coefficient at the coset of `w`.
    pub fn coeff(&self, w: &Perm) -> RatFunc {
        self.coeffs.get(&coset_min_rep(w)).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Perm> {
        self.coeffs.keys()
    }

    /// Adds `c·f_{BwJ}`, canonicalizing `w` and dropping zeros.
    pub fn add_term(&mut self, w: &Perm, c: RatFunc) {
        assert_eq!(w.size(), 2 * self.n(), "coset key has the wrong size");
        let key = coset_min_rep(w);
        let sum = match self.coeffs.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(key, sum);
        }
    }

    pub fn scale(&self, c: &RatFunc) -> ParahoricVec {
        let mut out = ParahoricVec::zero(self.theta.clone());
        for (w, x) in &self.coeffs {
            out.add_term(w, x.mul(c));
        }
        out
    }

    pub fn add(&self, other: &ParahoricVec) -> Result<ParahoricVec> {
        if self.theta != other.theta {
            return Err(Error::Precondition("adding vectors over different characters".into()));
        }
        let mut out = self.clone();
        for (w, x) in &other.coeffs {
            out.add_term(w, x.clone());
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient and to the character.
    pub fn map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<ParahoricVec> {
        let mut out = ParahoricVec::zero(self.theta.map(&f)?);
        for (w, x) in &self.coeffs {
            out.add_term(w, f(x)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = VecJson {
            theta: self.theta.values().iter().map(|x| x.to_string()).collect(),
            v: (*self.theta.v() != RatFunc::var(V)).then(|| self.theta.v().to_string()),
            coeffs: self.coeffs.iter().map(|(w, x)| EntryJson { w: w.to_string(), value: x.to_string() }).collect(),
        };
        serde_json::to_value(doc).expect("plain strings serialize")
    }

    /// Reads the JSON form; a missing `v` means the registry variable.
    pub fn from_json(text: &str) -> Result<ParahoricVec> {
        let doc: VecJson = serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        let values = doc.theta.iter().map(|s| parse_ratfunc(s)).collect::<Result<Vec<_>>>()?;
        let v = match &doc.v {
            Some(s) => parse_ratfunc(s)?,
            None => RatFunc::var(V),
        };
        let theta = UnramChar::with_v(values, v)?;
        let mut out = ParahoricVec::zero(theta);
        for e in &doc.coeffs {
            let w = Perm::parse(&e.w, 2 * out.n())?;
            out.add_term(&w, parse_ratfunc(&e.value)?);
        }
        Ok(out)
    }
}

impl fmt::Display for ParahoricVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(w, x)| format!("[{x}]·f{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct VecJson {
    theta: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<String>,
    coeffs: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    w: String,
    value: String,
}

pub fn basis_vector(theta: &UnramChar, w: &Perm) -> ParahoricVec {
    let mut out = ParahoricVec::zero(theta.clone());
    out.add_term(w, RatFunc::one());
    out
}

/// Coset key of the cell `B·(n+k, n+k−1, …, n)·w₀·J`, `0 ≤ k ≤ n`.
pub fn cell(n: usize, k: usize) -> Perm {
    assert!(k <= n, "cell index {k} exceeds n = {n}");
    let labels: Vec<usize> = (n..=n + k).rev().collect();
    let cyc = Perm::cycle(2 * n, &labels).expect("labels in range");
    coset_min_rep(&cyc.compose(&Perm::longest(2 * n)))
}

/// `F_k` over `theta`.
pub fn cell_vector(theta: &UnramChar, k: usize) -> ParahoricVec {
    basis_vector(theta, &cell(theta.n(), k))
}

/// Index `k` with `cell(n, k)` equal to the coset of `w`.
pub fn cell_index(n: usize, w: &Perm) -> Option<usize> {
    let key = coset_min_rep(w);
    (0..=n).find(|&k| cell(n, k) == key)
}

/// The simple operator for `α = (i, i+1)`: a vector over `θ` goes to one over `θ^α`.
pub fn apply_simple(i: usize, vec: &ParahoricVec) -> Result<ParahoricVec> {
    let theta = vec.theta();
    let size = 2 * vec.n();
    if i == 0 || i >= size {
        return Err(Error::Precondition(format!("simple index {i} out of range for GL({size})")));
    }
    let alpha = Perm::simple(size, i);
    let n = vec.n();
    let same = c_factor(theta, i, i + 1).map_err(|e| stage_pole(e, i))?;
    let mut out = ParahoricVec::zero(theta.act(&alpha));
    // the other two coefficients are only needed when some key crosses halves
    let mut cross: Option<(RatFunc, RatFunc, RatFunc)> = None;
    for (w, x) in &vec.coeffs {
        let wi = w.inverse();
        let (p, r) = (wi.apply(i), wi.apply(i + 1));
        if (p <= n) == (r <= n) {
            out.add_term(w, same.mul(x));
            continue;
        }
        if cross.is_none() {
            let up = d_factor(theta, i + 1, i)?.neg();
            let down = d_factor(theta, i, i + 1)?;
            cross = Some((up, down, theta.q().inv()?));
        }
        let (up, down, qinv) = cross.as_ref().expect("set above");
        let aw = alpha.compose(w);
        if p < r {
            out.add_term(w, up.mul(x));
            out.add_term(&aw, qinv.mul(x));
        } else {
            out.add_term(w, down.mul(x));
            out.add_term(&aw, x.clone());
        }
    }
    Ok(out)
}

fn stage_pole(e: Error, i: usize) -> Error {
    match e {
        Error::Pole(m) => Error::Pole(format!("simple step {i}: {m}")),
        other => other,
    }
}

/// Applies the letters of `word` left to right.
pub fn apply_word(word: &[usize], vec: &ParahoricVec) -> Result<ParahoricVec> {
    let mut cur = vec.clone();
    for &i in word {
        cur = apply_simple(i, &cur)?;
    }
    Ok(cur)
}

/// `M_τ` on a vector over `θ^{τ⁻¹}`; the result lives over `θ`.
pub fn apply_intertwiner(tau: &Perm, vec: &ParahoricVec) -> Result<ParahoricVec> {
    if tau.size() != 2 * vec.n() {
        return Err(Error::Precondition("permutation and vector sizes differ".into()));
    }
    apply_word(&tau.reduced_word(), vec)
}

/// The two operator images with closed forms on `F₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImageKind {
    /// `(i, n)(n+i, 2n)`, `1 ≤ i < n`.
    Pair(usize),
    /// `(n, 2n)`.
    Swap,
}

impl ImageKind {
    pub fn perm(&self, n: usize) -> Result<Perm> {
        match *self {
            ImageKind::Pair(i) if i >= 1 && i < n => {
                Ok(Perm::transposition(2 * n, i, n).compose(&Perm::transposition(2 * n, n + i, 2 * n)))
            }
            ImageKind::Pair(i) => Err(Error::Precondition(format!("pair index {i} needs 1 ≤ i < n = {n}"))),
            ImageKind::Swap => Ok(Perm::transposition(2 * n, n, 2 * n)),
        }
    }
}

/// Closed form of `M_τ F₀` for the input character `theta`, as a vector over `θ^τ`.
pub fn image_closed_form(theta: &UnramChar, kind: ImageKind) -> Result<ParahoricVec> {
    let n = theta.n();
    let tau = kind.perm(n)?;
    let c = |i, j| c_factor(theta, i, j);
    let d = |i, j| d_factor(theta, i, j);
    let mut out = ParahoricVec::zero(theta.act(&tau));
    match kind {
        ImageKind::Pair(i) => {
            let mut acc = c(i, n)?.mul(&c(n + i, 2 * n)?);
            for j in i + 1..n {
                acc = acc.mul(&c(i, j)?).mul(&c(n + i, n + j)?).mul(&c(j, n)?).mul(&c(n + j, 2 * n)?);
            }
            out.add_term(&cell(n, 0), acc);
        }
        ImageKind::Swap => {
            let mut pre = RatFunc::one();
            for i in 1..n {
                pre = pre.mul(&c(n + i, 2 * n)?);
            }
            // tail[k] = ∏_{i=k+1}^{n−1} c_{n,n+i}
            let mut tail = vec![RatFunc::one(); n];
            for k in (0..n.saturating_sub(1)).rev() {
                tail[k] = tail[k + 1].mul(&c(n, n + k + 1)?);
            }
            out.add_term(&cell(n, 0), pre.mul(&tail[0]).mul(&d(n, 2 * n)?));
            for k in 1..n {
                out.add_term(&cell(n, k), pre.mul(&tail[k]).mul(&d(n, n + k)?));
            }
            out.add_term(&cell(n, n), pre);
        }
    }
    Ok(out)
}

/// Outcome of comparing operator images across all reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordTally {
    pub perms: usize,
    pub words: usize,
    pub mismatches: Vec<(Perm, Vec<usize>)>,
}

/// For every `τ` with `ℓ(τ) ≤ max_len` and every basis vector over `theta`,
/// applies all reduced words of `τ` and compares the results with the first.
/// Words are walked as a prefix tree, one walk per basis vector.
pub fn reduced_word_independence(theta: &UnramChar, max_len: usize) -> Result<WordTally> {
    use rayon::prelude::*;
    let size = 2 * theta.n();
    let bases: Vec<Perm> = crate::weylcomb::all_perms(size)
        .into_iter()
        .map(|w| coset_min_rep(&w))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let per_base = bases
        .par_iter()
        .map(|b| {
            let mut seen: BTreeMap<Perm, ParahoricVec> = BTreeMap::new();
            let mut tally = WordTally::default();
            let mut word = Vec::new();
            walk(&Perm::identity(size), &basis_vector(theta, b), max_len, &mut word, &mut seen, &mut tally)?;
            tally.perms = seen.len();
            Ok(tally)
        })
        .collect::<Result<Vec<WordTally>>>()?;
    let mut total = WordTally::default();
    for t in per_base {
        total.perms = total.perms.max(t.perms);
        total.words += t.words;
        for m in t.mismatches {
            if !total.mismatches.contains(&m) {
                total.mismatches.push(m);
            }
        }
    }
    Ok(total)
}

fn walk(
    w: &Perm,
    vec: &ParahoricVec,
    max_len: usize,
    word: &mut Vec<usize>,
    seen: &mut BTreeMap<Perm, ParahoricVec>,
    tally: &mut WordTally,
) -> Result<()> {
    tally.words += 1;
    match seen.get(w) {
        Some(first) if first != vec => tally.mismatches.push((w.clone(), word.clone())),
        Some(_) => {}
        None => {
            seen.insert(w.clone(), vec.clone());
        }
    }
    if word.len() == max_len {
        return Ok(());
    }
    for i in 1..w.size() {
        if w.apply(i) < w.apply(i + 1) {
            let next = apply_simple(i, vec)?;
            word.push(i);
            walk(&w.compose(&Perm::simple(w.size(), i)), &next, max_len, word, seen, tally)?;
            word.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charspace::{ag_generic_char, generic_char};
    use crate::exactalg::random::{random_rational, rng_from_seed};
    use crate::exactalg::{q, rf};

    fn f0(theta: &UnramChar) -> ParahoricVec {
        basis_vector(theta, &Perm::longest(theta.values().len()))
    }

    #[test]
    fn cells_are_distinct_cosets() {
        for n in 1..=4 {
            let keys: std::collections::BTreeSet<Perm> = (0..=n).map(|k| cell(n, k)).collect();
            assert_eq!(keys.len(), n + 1);
            assert_eq!(cell(n, 0), coset_min_rep(&Perm::longest(2 * n)));
        }
        assert_eq!(cell(1, 1), Perm::identity(2));
    }

    #[test]
    fn basis_canonicalizes() {
        let th = generic_char(2);
        let w0 = Perm::longest(4);
        let h = Perm::simple(4, 1).compose(&Perm::simple(4, 3));
        assert_eq!(basis_vector(&th, &w0.compose(&h)), basis_vector(&th, &w0));
        assert_eq!(basis_vector(&th, &Perm::identity(4)).coeff(&Perm::identity(4)), RatFunc::one());
    }

    #[test]
    fn simple_on_f0_inside_levi() {
        // α = (3,4) with n = 2 keeps F₀ and scales by c_{3,4}
        let th = generic_char(2);
        let out = apply_simple(3, &f0(&th)).unwrap();
        assert_eq!(out.theta(), &th.act(&Perm::simple(4, 3)));
        assert_eq!(out.coeffs().len(), 1);
        assert_eq!(out.coeff(&Perm::longest(4)), c_factor(&th, 3, 4).unwrap());
        // letters 5 then 4 move position 6 down to 4
        let nu = Perm::simple(6, 5).compose(&Perm::simple(6, 4));
        let th3 = generic_char(3);
        let out = apply_intertwiner(&nu, &f0(&th3.act(&nu.inverse()))).unwrap();
        assert_eq!(out.theta(), &th3);
        let expect = c_factor(&th3.act(&nu.inverse()), 4, 6).unwrap().mul(&c_factor(&th3.act(&nu.inverse()), 5, 6).unwrap());
        assert_eq!(out.coeff(&Perm::longest(6)), expect);
        assert_eq!(out.coeffs().len(), 1);
    }

    #[test]
    fn double_application_is_scalar_on_f0() {
        let th = ag_generic_char(1);
        let once = apply_simple(1, &f0(&th)).unwrap();
        let twice = apply_simple(1, &once).unwrap();
        assert_eq!(twice.theta(), &th);
        let expect = c_factor(&th, 1, 2).unwrap().mul(&c_factor(&th, 2, 1).unwrap());
        assert_eq!(twice.coeff(&Perm::longest(2)), expect);
        assert!(twice.coeff(&Perm::identity(2)).is_zero());
    }

    #[test]
    fn swap_n1() {
        let th = generic_char(1);
        let img = image_closed_form(&th, ImageKind::Swap).unwrap();
        assert_eq!(img.coeff(&cell(1, 0)), d_factor(&th, 1, 2).unwrap());
        assert_eq!(img.coeff(&cell(1, 1)), RatFunc::one());
        let direct = apply_intertwiner(&Perm::simple(2, 1), &f0(&th)).unwrap();
        assert_eq!(direct, img);
    }

    #[test]
    fn closed_forms_match_operator() {
        for n in 2..=3 {
            let th = generic_char(n);
            let mut kinds: Vec<ImageKind> = (1..n).map(ImageKind::Pair).collect();
            kinds.push(ImageKind::Swap);
            for kind in kinds {
                let tau = kind.perm(n).unwrap();
                let op = apply_intertwiner(&tau, &f0(&th)).unwrap();
                assert_eq!(op, image_closed_form(&th, kind).unwrap(), "n={n} {kind:?}");
            }
        }
        let th = generic_char(3);
        assert_eq!(image_closed_form(&th, ImageKind::Pair(2)).unwrap().coeff(&cell(3, 0)),
            c_factor(&th, 2, 3).unwrap().mul(&c_factor(&th, 5, 6).unwrap()));
    }

    #[test]
    fn swap_support_is_all_cells() {
        for n in 1..=3 {
            let th = ag_generic_char(n);
            let tau = Perm::transposition(2 * n, n, 2 * n);
            let out = apply_intertwiner(&tau, &f0(&th.act(&tau))).unwrap();
            let cells: Vec<Perm> = (0..=n).map(|k| cell(n, k)).collect();
            let mut support: Vec<Perm> = out.support().cloned().collect();
            support.sort();
            let mut cs = cells.clone();
            cs.sort();
            assert_eq!(support, cs);
        }
    }

    #[test]
    fn reduced_words_agree_at_a_point() {
        let mut rng = rng_from_seed(7);
        let vals: Vec<RatFunc> = (0..4).map(|_| RatFunc::from_rational(random_rational(&mut rng))).collect();
        let th = UnramChar::with_v(vals, rf("5/3")).unwrap();
        for w in crate::weylcomb::all_perms(4) {
            let words = w.all_reduced_words();
            for b in crate::weylcomb::all_perms(4).iter().step_by(3) {
                let base = apply_word(&words[0], &basis_vector(&th, b));
                for word in &words[1..] {
                    assert_eq!(apply_word(word, &basis_vector(&th, b)).ok(), base.clone().ok(), "{w} {word:?}");
                }
            }
        }
    }

    #[test]
    fn word_independence_small() {
        let t = reduced_word_independence(&generic_char(1), 6).unwrap();
        assert_eq!((t.perms, t.words, t.mismatches.len()), (2, 4, 0));
        let t = reduced_word_independence(&generic_char(2), 6).unwrap();
        assert_eq!(t.perms, 24);
        assert!(t.mismatches.is_empty());
    }

    #[test]
    fn pole_is_reported() {
        let th = UnramChar::new(vec![rf("a1"), rf("a1"), rf("a2"), rf("a3")]).unwrap();
        assert!(matches!(apply_simple(1, &f0(&th)), Err(Error::Pole(_))));
    }

    #[test]
    fn json_roundtrip() {
        let th = ag_generic_char(2);
        let vec = image_closed_form(&th, ImageKind::Swap).unwrap();
        let text = vec.to_json().to_string();
        assert_eq!(ParahoricVec::from_json(&text).unwrap(), vec);
        assert!(ParahoricVec::from_json("{\"theta\":[\"a1\"],\"coeffs\":[]}").is_err());
        let v = ParahoricVec::from_json("{\"theta\":[\"a1\",\"a2\"],\"coeffs\":[{\"w\":\"(1 2)\",\"value\":\"q\"}]}").unwrap();
        assert_eq!(v.coeff(&Perm::simple(2, 1)), q());
    }
}
