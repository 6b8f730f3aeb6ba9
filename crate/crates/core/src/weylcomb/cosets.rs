use super::perm::{all_perms, Perm};
use super::roots::{root_cone, Root, SimpleSet};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap};

/// Default limit on `2n` for exhaustive enumeration over `S_{2n}`.
pub const EXHAUSTIVE_BOUND: usize = 8;

fn check_bound(size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(Error::BoundExceeded(format!("2n = {size} exceeds the exhaustive bound {bound}")));
    }
    Ok(())
}

/// `w(k) < w(k+1)` for every `k ∈ T`.
pub fn acts_positively(w: &Perm, t: &SimpleSet) -> bool {
    t.iter().all(|k| w.apply(k) < w.apply(k + 1))
}

/// `{w : wT > 0, w⁻¹S > 0}`, one representative per `(W_S, W_T)` double coset.
pub fn double_coset_reps(s: &SimpleSet, t: &SimpleSet, n: usize) -> Result<BTreeSet<Perm>> {
    double_coset_reps_within(s, t, n, EXHAUSTIVE_BOUND)
}

pub fn double_coset_reps_within(s: &SimpleSet, t: &SimpleSet, n: usize, bound: usize) -> Result<BTreeSet<Perm>> {
    check_bound(2 * n, bound)?;
    Ok(all_perms(2 * n)
        .into_iter()
        .filter(|w| acts_positively(w, t) && acts_positively(&w.inverse(), s))
        .collect())
}

/// Number of `W_S \ W / W_T` double cosets, by union-find over the whole group.
pub fn double_coset_count(s: &SimpleSet, t: &SimpleSet, n: usize) -> Result<usize> {
    let size = 2 * n;
    check_bound(size, EXHAUSTIVE_BOUND)?;
    let elems = all_perms(size);
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let left: Vec<Perm> = s.iter().map(|k| Perm::simple(size, k)).collect();
    let right: Vec<Perm> = t.iter().map(|k| Perm::simple(size, k)).collect();
    for (i, w) in elems.iter().enumerate() {
        let moves = left.iter().map(|g| g.compose(w)).chain(right.iter().map(|g| w.compose(g)));
        for m in moves {
            let j = index[&m];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    Ok((0..elems.len()).filter(|&i| find(&mut parent, i) == i).count())
}

/// Minimal-length element of `w·W_H`, `W_H` the Siegel Weyl group: sort the
/// images within each half of the positions.
pub fn coset_min_rep(w: &Perm) -> Perm {
    let n = w.n();
    let mut img = w.images0().to_vec();
    img[..n].sort_unstable();
    img[n..].sort_unstable();
    Perm::from_images0(img)
}

/// `w⁻¹S` as a set of roots.
fn inverse_image(w: &Perm, s: &SimpleSet) -> BTreeSet<Root> {
    let wi = w.inverse();
    s.iter().map(|k| Root::simple(k).act(&wi)).collect()
}

/// `T ∩ w⁻¹S`: simple roots of `T` that lie in `w⁻¹S`.
pub fn t_meet_inverse_image(w: &Perm, s: &SimpleSet, t: &SimpleSet) -> SimpleSet {
    let img = inverse_image(w, s);
    SimpleSet::from_indices(t.iter().filter(|&k| img.contains(&Root::simple(k))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCondition {
    pub exists: bool,
    pub witnesses: BTreeSet<Perm>,
}

/// Double-coset representatives `w` with `T ∩ w⁻¹S = ∅`.
pub fn shalika_coset_condition(s: &SimpleSet, t: &SimpleSet, n: usize) -> Result<CosetCondition> {
    let witnesses: BTreeSet<Perm> =
        double_coset_reps(s, t, n)?.into_iter().filter(|w| t_meet_inverse_image(w, s, t).is_empty()).collect();
    Ok(CosetCondition { exists: !witnesses.is_empty(), witnesses })
}

fn check_admissible(s: &SimpleSet, t: &SimpleSet, w: &Perm) -> Result<()> {
    if !acts_positively(w, t) || !acts_positively(&w.inverse(), s) {
        return Err(Error::Precondition(format!("need wT > 0 and w⁻¹S > 0 for w = {w}, S = {s}, T = {t}")));
    }
    Ok(())
}

/// Levi-part identity `w⁻¹·𝔩_S ∩ 𝔭_{Δ,T} = 𝔭_{w⁻¹S, T ∩ w⁻¹S}`, where
/// `𝔩_S = 𝔭_{S,S}` is the Levi of `P_{Δ,S}`.
pub fn levi_intersection_check(s: &SimpleSet, t: &SimpleSet, w: &Perm, n: usize) -> Result<bool> {
    check_admissible(s, t, w)?;
    let size = 2 * n;
    let wi = w.inverse();
    let levi: BTreeSet<Root> = root_cone(&s.roots(), &s.roots(), size).iter().map(|r| r.act(&wi)).collect();
    let jt = root_cone(&SimpleSet::full(size).roots(), &t.roots(), size);
    let lhs: BTreeSet<Root> = levi.intersection(&jt).copied().collect();
    let winv_s: Vec<Root> = inverse_image(w, s).into_iter().collect();
    let meet = t_meet_inverse_image(w, s, t);
    let rhs = root_cone(&winv_s, &meet.roots(), size);
    Ok(lhs == rhs)
}

/// The whole-parabolic variant `w⁻¹·𝔭_{Δ,S} ∩ 𝔭_{Δ,T} = 𝔭_{Δ∩w⁻¹Δ, T∩w⁻¹S}`.
/// It fails in general (e.g. `2n = 4`, `S = T = ∅`, `w = (3 4)`); kept so the
/// counterexamples stay reproducible.
pub fn parabolic_intersection_identity(s: &SimpleSet, t: &SimpleSet, w: &Perm, n: usize) -> Result<bool> {
    check_admissible(s, t, w)?;
    let size = 2 * n;
    let full = SimpleSet::full(size);
    let wi = w.inverse();
    let ps: BTreeSet<Root> = root_cone(&full.roots(), &s.roots(), size).iter().map(|r| r.act(&wi)).collect();
    let pt = root_cone(&full.roots(), &t.roots(), size);
    let lhs: BTreeSet<Root> = ps.intersection(&pt).copied().collect();
    let winv_delta = inverse_image(w, &full);
    let a: Vec<Root> = full.roots().into_iter().filter(|r| winv_delta.contains(r)).collect();
    let b = t_meet_inverse_image(w, s, t);
    Ok(lhs == root_cone(&a, &b.roots(), size))
}

/// Outcome of an exhaustive run over all admissible `(S, T, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveTally {
    pub checked: usize,
    pub failures: Vec<(SimpleSet, SimpleSet, Perm)>,
}

pub fn levi_check_exhaustive(n: usize) -> Result<ExhaustiveTally> {
    tally(n, levi_intersection_check)
}

pub fn parabolic_identity_exhaustive(n: usize) -> Result<ExhaustiveTally> {
    tally(n, parabolic_intersection_identity)
}

fn tally(n: usize, f: fn(&SimpleSet, &SimpleSet, &Perm, usize) -> Result<bool>) -> Result<ExhaustiveTally> {
    let size = 2 * n;
    check_bound(size, EXHAUSTIVE_BOUND)?;
    let perms = all_perms(size);
    let mut out = ExhaustiveTally { checked: 0, failures: Vec::new() };
    for s in SimpleSet::all(size) {
        for t in SimpleSet::all(size) {
            for w in &perms {
                if !acts_positively(w, &t) || !acts_positively(&w.inverse(), &s) {
                    continue;
                }
                out.checked += 1;
                if !f(&s, &t, w, n)? {
                    out.failures.push((s, t, w.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// One row of the block-size census for a fixed `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCensusRow {
    pub s: SimpleSet,
    pub max_block: usize,
    pub witnesses: usize,
}

/// For `T` the Siegel set, every `S` with the number of `T ∩ w⁻¹S = ∅`
/// witnesses and its largest block. The monodromy bound says no witness
/// exists once a block is longer than the number of Levi blocks of `T` (2).
pub fn siegel_block_census(n: usize) -> Result<Vec<BlockCensusRow>> {
    let size = 2 * n;
    let t = SimpleSet::siegel(n);
    SimpleSet::all(size)
        .into_iter()
        .map(|s| {
            let c = shalika_coset_condition(&s, &t, n)?;
            let max_block = s.block_sizes(size).into_iter().max().unwrap_or(1);
            Ok(BlockCensusRow { s, max_block, witnesses: c.witnesses.len() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ss(k: &[usize]) -> SimpleSet {
        SimpleSet::from_indices(k.iter().copied())
    }

    #[test]
    fn acts_positively_examples() {
        assert!(acts_positively(&Perm::identity(4), &SimpleSet::full(4)));
        assert!(!acts_positively(&Perm::longest(4), &ss(&[2])));
        assert!(acts_positively(&Perm::transposition(4, 2, 3), &ss(&[1])));
    }

    #[test]
    fn double_coset_examples() {
        assert_eq!(double_coset_reps(&SimpleSet::empty(), &SimpleSet::empty(), 2).unwrap().len(), 24);
        for n in 1..=3 {
            let d = SimpleSet::full(2 * n);
            let reps = double_coset_reps(&d, &d, n).unwrap();
            assert_eq!(reps.into_iter().collect::<Vec<_>>(), vec![Perm::identity(2 * n)]);
        }
        let siegel = ss(&[1, 3]);
        // Two-sided Siegel cosets in S_4: 3; one-sided ones: C(4,2) = 6.
        assert_eq!(double_coset_reps(&siegel, &siegel, 2).unwrap().len(), 3);
        assert_eq!(double_coset_count(&siegel, &siegel, 2).unwrap(), 3);
        assert_eq!(double_coset_reps(&SimpleSet::empty(), &siegel, 2).unwrap().len(), 6);
        assert!(matches!(double_coset_reps(&siegel, &siegel, 5), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn rep_counts_match_orbits_exhaustively() {
        for n in 1..=3 {
            for s in SimpleSet::all(2 * n) {
                for t in SimpleSet::all(2 * n) {
                    let reps = double_coset_reps(&s, &t, n).unwrap().len();
                    assert_eq!(reps, double_coset_count(&s, &t, n).unwrap(), "S={s} T={t}");
                }
            }
        }
    }

    #[test]
    fn min_rep_examples() {
        assert_eq!(coset_min_rep(&Perm::identity(4)), Perm::identity(4));
        let h = Perm::parse("(1 2)(3 4)", 4).unwrap();
        assert_eq!(coset_min_rep(&h), Perm::identity(4));
        for n in 1..=3 {
            let reps: BTreeSet<Perm> = all_perms(2 * n).iter().map(coset_min_rep).collect();
            let binom = [1, 2, 6, 20][n];
            assert_eq!(reps.len(), binom);
        }
    }

    #[test]
    fn min_rep_constant_on_cosets_and_idempotent() {
        let size = 6;
        let hs: Vec<Perm> = SimpleSet::siegel(3).iter().map(|k| Perm::simple(size, k)).collect();
        for w in all_perms(size) {
            let r = coset_min_rep(&w);
            assert_eq!(coset_min_rep(&r), r);
            assert!(r.length() <= w.length());
            for h in &hs {
                assert_eq!(coset_min_rep(&w.compose(h)), r);
            }
        }
    }

    #[test]
    fn coset_condition_examples() {
        let t = ss(&[1, 3]);
        let c = shalika_coset_condition(&SimpleSet::empty(), &t, 2).unwrap();
        assert_eq!(c.witnesses, double_coset_reps(&SimpleSet::empty(), &t, 2).unwrap());
        let full = SimpleSet::full(4);
        assert!(!shalika_coset_condition(&ss(&[2]), &full, 2).unwrap().exists);
        let c = shalika_coset_condition(&ss(&[1, 2]), &SimpleSet::siegel(3), 3).unwrap();
        assert!(!c.exists);
    }

    #[test]
    fn levi_identity_small() {
        let t = levi_check_exhaustive(1).unwrap();
        assert_eq!((t.checked, t.failures.len()), (5, 0));
        let t = levi_check_exhaustive(2).unwrap();
        assert_eq!((t.checked, t.failures.len()), (281, 0));
        assert!(levi_intersection_check(&ss(&[1]), &ss(&[2]), &Perm::identity(4), 2).unwrap());
        assert!(levi_intersection_check(&ss(&[1]), &ss(&[1]), &Perm::longest(4), 2).is_err());
    }

    #[test]
    fn whole_parabolic_variant_counterexample() {
        let w = Perm::from_one_line(&[1, 2, 4, 3]).unwrap();
        assert!(!parabolic_intersection_identity(&SimpleSet::empty(), &SimpleSet::empty(), &w, 2).unwrap());
        let t = parabolic_identity_exhaustive(2).unwrap();
        assert_eq!((t.checked, t.failures.len()), (281, 156));
    }

    #[test]
    fn census_rank_three() {
        let rows = siegel_block_census(3).unwrap();
        for r in &rows {
            if r.max_block > 2 {
                assert_eq!(r.witnesses, 0, "S = {}", r.s);
            } else {
                assert!(r.witnesses > 0, "S = {}", r.s);
            }
        }
        let find = |k: &[usize]| rows.iter().find(|r| r.s == ss(k)).unwrap().witnesses;
        assert_eq!(find(&[]), 20);
        assert_eq!(find(&[2]), 6);
        assert_eq!(find(&[1, 3]), 2);
        assert_eq!(find(&[1, 3, 5]), 1);
    }
}
