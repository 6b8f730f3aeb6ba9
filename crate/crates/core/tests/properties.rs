use proptest::prelude::*;
use shalika_core::charspace::{generic_char, UnramChar};
use shalika_core::exactalg::{RatFunc, Rational};
use shalika_core::intertwine::{apply_intertwiner, apply_simple, basis_vector, image_closed_form, ImageKind, ParahoricVec};
use shalika_core::shalikaeval::{closed_coefficient, fact_b_sides, local_coefficient, Generator};
use shalika_core::weylcomb::{all_perms, coset_min_rep, Perm};

fn rational() -> impl Strategy<Value = RatFunc> {
    (-40i64..=40, 1i64..=9)
        .prop_filter("nonzero, not ±1", |(n, d)| *n != 0 && n.abs() != *d)
        .prop_map(|(n, d)| RatFunc::from_rational(Rational::new(n.into(), d.into())))
}

/// A regular character at a rational point, with a rational `v`.
fn point_char(n: usize) -> impl Strategy<Value = UnramChar> {
    (prop::collection::vec(rational(), 2 * n), rational())
        .prop_filter_map("regular", |(vals, v)| UnramChar::with_v(vals, v).ok().filter(|t| t.is_regular()))
}

/// An AG-ordered regular character at a rational point.
fn point_ag_char(n: usize) -> impl Strategy<Value = UnramChar> {
    (prop::collection::vec(rational(), n), rational()).prop_filter_map("regular", move |(head, v)| {
        let mut vals = head.clone();
        vals.extend(head.iter().map(|a| a.inv().unwrap()));
        UnramChar::with_v(vals, v).ok().filter(|t| t.is_regular())
    })
}

fn perm(size: usize) -> impl Strategy<Value = Perm> {
    Just(all_perms(size)).prop_flat_map(|ps| prop::sample::select(ps))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn character_action_is_a_right_action(a in perm(6), b in perm(6)) {
        let th = generic_char(3);
        prop_assert_eq!(th.act(&a).act(&b), th.act(&a.compose(&b)));
    }

    #[test]
    fn operators_compose_on_length_additive_pairs(th in point_char(2), a in perm(4), b in perm(4), w in perm(4)) {
        let prod = a.compose(&b);
        prop_assume!(prod.length() == a.length() + b.length());
        let f = basis_vector(&th.act(&prod.inverse()), &coset_min_rep(&w));
        let whole = apply_intertwiner(&prod, &f);
        let staged = apply_intertwiner(&a, &f).and_then(|g| apply_intertwiner(&b, &g));
        prop_assume!(whole.is_ok() && staged.is_ok());
        prop_assert_eq!(whole.unwrap(), staged.unwrap());
    }

    #[test]
    fn simple_operator_is_linear(th in point_char(2), i in 1usize..4, c in rational(), w1 in perm(4), w2 in perm(4)) {
        let src = th.act(&Perm::simple(4, i));
        let f = basis_vector(&src, &coset_min_rep(&w1));
        let g = basis_vector(&src, &coset_min_rep(&w2));
        let combo = f.scale(&c).add(&g).unwrap();
        let lhs = apply_simple(i, &combo);
        let rhs = apply_simple(i, &f).and_then(|x| x.scale(&c).add(&apply_simple(i, &g)?));
        prop_assume!(lhs.is_ok() && rhs.is_ok());
        prop_assert_eq!(lhs.unwrap(), rhs.unwrap());
    }

    #[test]
    fn image_closed_forms_at_points(th in point_char(3), kind in prop::sample::select(vec![ImageKind::Pair(1), ImageKind::Pair(2), ImageKind::Swap])) {
        let op = kind.perm(3).and_then(|p| apply_intertwiner(&p, &basis_vector(&th, &Perm::longest(6))));
        let closed = image_closed_form(&th, kind);
        prop_assume!(op.is_ok() && closed.is_ok());
        prop_assert_eq!(op.unwrap(), closed.unwrap());
    }

    #[test]
    fn coefficient_closed_forms_at_points(th in point_ag_char(3), g in prop::sample::select(Generator::all(3))) {
        let lhs = g.perm(3).and_then(|p| local_coefficient(&th, &p));
        let rhs = closed_coefficient(&th, g);
        prop_assume!(lhs.is_ok() && rhs.is_ok());
        prop_assert_eq!(lhs.unwrap(), rhs.unwrap());
    }

    #[test]
    fn summed_identity_at_points(xs in prop::collection::vec(rational(), 1..=6), v in rational()) {
        let sides = fact_b_sides(&xs, &v);
        prop_assume!(sides.is_ok());
        let (l, r) = sides.unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn vector_json_roundtrip(th in point_char(2), tau in perm(4), w in perm(4)) {
        let f = basis_vector(&th.act(&tau.inverse()), &coset_min_rep(&w));
        let img = apply_intertwiner(&tau, &f);
        prop_assume!(img.is_ok());
        let img = img.unwrap();
        prop_assert_eq!(ParahoricVec::from_json(&img.to_json().to_string()).unwrap(), img);
    }
}
