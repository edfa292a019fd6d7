use latcover::enumerate::{forcing_points, CoveringTuple};
use latcover::lattice::{density_sum, is_cover, Subgroup, Vec2Z};
use latcover::ratmat::{rat, Rat, RatMat2};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Rank-2 subgroup of index at most `max_index`, uniform over Hermite bases.
fn lattice(max_index: i64) -> impl Strategy<Value = Subgroup> {
    let mut bases = Vec::new();
    for a in 1..=max_index {
        for b in 1..=max_index / a {
            for c in 0..a {
                bases.push((a, c, b));
            }
        }
    }
    proptest::sample::select(bases).prop_map(|(a, c, b)| Subgroup::from_hermite(a, c, b))
}

fn proper_lattice(max_index: i64) -> impl Strategy<Value = Subgroup> {
    lattice(max_index).prop_filter("proper", |l| !l.is_full())
}

/// Membership from the column form alone: `Z(p, q) + Z(0, r)`.
fn column_member(l: &Subgroup, x: i64, y: i64) -> bool {
    let (p, q, r) = l.columns().unwrap();
    x % p == 0 && (y - (x / p) * q) % r == 0
}

/// Exhaustive search over one full period of the union.
fn oracle_cover(ls: &[Subgroup]) -> bool {
    let period = ls
        .iter()
        .map(|l| l.index().finite().unwrap())
        .fold(1i64, |acc, n| acc.lcm(&n));
    (-period..=period)
        .all(|x| (-period..=period).all(|y| ls.iter().any(|l| column_member(l, x, y))))
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn gamma() -> impl Strategy<Value = RatMat2> {
    (small_rat(), small_rat(), small_rat(), small_rat())
        .prop_map(|(a, b, c, d)| RatMat2::new(a, b, c, d))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

fn generators() -> impl Strategy<Value = Vec<Vec2Z>> {
    proptest::collection::vec(
        (-30i64..=30, -30i64..=30).prop_map(|(x, y)| Vec2Z::new(x, y)),
        0..5,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn is_cover_agrees_with_box_search(ls in proptest::collection::vec(lattice(6), 1..=6)) {
        prop_assert_eq!(is_cover(&ls), oracle_cover(&ls));
        if is_cover(&ls) {
            prop_assert!(density_sum(&ls).unwrap() >= Rat::from_integer(1.into()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lattice_of_index_is_a_multiple_of_inverse_det(g in gamma()) {
        let l = Subgroup::lattice_of(&g).unwrap();
        let scaled = Rat::from_integer(l.index().finite().unwrap().into()) * g.det().abs();
        prop_assert!(scaled.is_integer());
        prop_assert_eq!(l, Subgroup::lattice_of(&-&g).unwrap());
        prop_assert_eq!(l.is_full(), g.is_integral());
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                let image_integral = [(&g.a, &g.b), (&g.c, &g.d)]
                    .iter()
                    .all(|(s, t)| (*s * Rat::from_integer(x.into()) + *t * Rat::from_integer(y.into())).is_integer());
                prop_assert_eq!(l.contains(Vec2Z::new(x, y)), image_integral);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn forcing_points_force_a_cover(ls in proptest::collection::vec(proper_lattice(8), 6)) {
        let p = forcing_points();
        if p.iter().all(|&v| ls.iter().any(|l| l.contains(v))) {
            prop_assert!(is_cover(&ls));
        }
    }

    #[test]
    fn forcing_points_force_a_cover_small_indices(ls in proptest::collection::vec(proper_lattice(4), 6)) {
        let p = forcing_points();
        if p.iter().all(|&v| ls.iter().any(|l| l.contains(v))) {
            prop_assert!(CoveringTuple::from_slice(&ls).is_cover());
        }
    }

    #[test]
    fn canonicalize_is_idempotent(gens in generators()) {
        let s = Subgroup::canonicalize(&gens);
        prop_assert_eq!(Subgroup::canonicalize(&s.basis()), s);
        for g in &gens {
            prop_assert!(s.contains(*g));
        }
    }

    #[test]
    fn intersection_laws(a in lattice(12), b in lattice(12), c in lattice(12)) {
        let ab = a.intersect(&b);
        prop_assert_eq!(ab, b.intersect(&a));
        prop_assert_eq!(ab.intersect(&c), a.intersect(&b.intersect(&c)));
        prop_assert!(ab.is_subgroup_of(&a) && ab.is_subgroup_of(&b));
        for x in -12i64..=12 {
            for y in -12i64..=12 {
                let v = Vec2Z::new(x, y);
                prop_assert_eq!(ab.contains(v), a.contains(v) && b.contains(v));
            }
        }
    }

    #[test]
    fn fundamental_domain_represents_the_quotient(l in lattice(24)) {
        let dom = l.fundamental_domain().unwrap();
        prop_assert_eq!(dom.len() as i64, l.index().finite().unwrap());
        for (i, u) in dom.iter().enumerate() {
            for w in &dom[i + 1..] {
                prop_assert!(!l.contains(Vec2Z::new(u.x - w.x, u.y - w.y)));
            }
        }
    }
}
