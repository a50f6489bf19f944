//! Property tests for the algebraic invariants: exact ring axioms,
//! q-integer identities, form symmetry, and twist composition.

use num::rational::BigRational;
use num::BigInt;
use proptest::prelude::*;
use qflag::cartan::{RootSystem, Weight};
use qflag::coordring::{sigma_twist, CoordElement};
use qflag::repbuild::fundamental_sln;
use qflag::scalar::{RationalScalar, Scalar};
use std::sync::Arc;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    proptest::collection::vec(((-6i64..=6, 1i64..=3), -5i64..=5), 0..4).prop_map(|terms| {
        let mut s = Scalar::zero();
        for ((en, ed), c) in terms {
            s += &Scalar::term(rat(c, 1), rat(en, ed));
        }
        s
    })
}

fn weight_strategy(rank: usize) -> impl Strategy<Value = Weight> {
    proptest::collection::vec(-4i64..=4, rank).prop_map(Weight)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_ring_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
    }

    #[test]
    fn exponents_add(e1n in -8i64..=8, e1d in 1i64..=4, e2n in -8i64..=8, e2d in 1i64..=4) {
        let p = &Scalar::q_pow(rat(e1n, e1d)) * &Scalar::q_pow(rat(e2n, e2d));
        prop_assert_eq!(p, Scalar::q_pow(rat(e1n, e1d) + rat(e2n, e2d)));
    }

    #[test]
    fn qnum_at_one_is_n(n in -12i64..=12, d in 1i64..=3) {
        prop_assert_eq!(Scalar::qnum(n, d).eval_at_one(), rat(n, 1));
    }

    #[test]
    fn exact_division_roundtrip(a in scalar_strategy(), b in scalar_strategy()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn rational_equality_matches_scalar(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assume!(!c.is_zero());
        let ra = RationalScalar::new(a.clone(), c.clone()).unwrap();
        let rb = RationalScalar::new(b.clone(), c).unwrap();
        prop_assert_eq!(ra == rb, a == b);
    }

    #[test]
    fn display_parse_roundtrip(a in scalar_strategy()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn bilinear_symmetric_and_linear(
        name in prop::sample::select(vec!["A2", "A3", "B3", "C3", "G2", "A4"]),
        coords in proptest::collection::vec(-4i64..=4, 4),
        coords2 in proptest::collection::vec(-4i64..=4, 4),
        coords3 in proptest::collection::vec(-4i64..=4, 4),
    ) {
        let rs = RootSystem::parse(name).unwrap();
        let r = rs.rank();
        let w1 = Weight(coords[..r.min(4)].iter().cloned().chain(std::iter::repeat(0)).take(r).collect());
        let w2 = Weight(coords2[..r.min(4)].iter().cloned().chain(std::iter::repeat(0)).take(r).collect());
        let w3 = Weight(coords3[..r.min(4)].iter().cloned().chain(std::iter::repeat(0)).take(r).collect());
        prop_assert_eq!(rs.bilinear(&w1, &w2), rs.bilinear(&w2, &w1));
        prop_assert_eq!(
            rs.bilinear(&(&w1 + &w3), &w2),
            rs.bilinear(&w1, &w2) + rs.bilinear(&w3, &w2)
        );
    }

    #[test]
    fn sigma_twist_composes(
        l1 in weight_strategy(1), l2 in weight_strategy(1),
        m1 in weight_strategy(1), m2 in weight_strategy(1),
        i in 0usize..2, j in 0usize..2, star in any::<bool>(),
    ) {
        let rep = fundamental_sln(2);
        let e = CoordElement::atom(&rep, i, j, star)
            .mul(&CoordElement::atom(&rep, j, i, !star));
        let nested = sigma_twist(&l1, &l2, &sigma_twist(&m1, &m2, &e));
        let flat = sigma_twist(&(&l1 + &m1), &(&l2 + &m2), &e);
        prop_assert_eq!(nested, flat);
        let zero = Weight::zero(1);
        prop_assert_eq!(sigma_twist(&zero, &zero, &e), e);
    }
}

#[test]
fn qnum_addition_identity_exhaustive() {
    // [m+n]_d (q^d - q^-d) = q^{dn} [m]_d (q^d - q^-d) + q^{-dm} [n]_d (q^d - q^-d)
    for d in 1..=3i64 {
        let unit = &Scalar::q_pow(rat(d, 1)) - &Scalar::q_pow(rat(-d, 1));
        for m in -6..=6i64 {
            for n in -6..=6i64 {
                let lhs = &Scalar::qnum(m + n, d) * &unit;
                let rhs = &(&(&Scalar::q_pow(rat(d * n, 1)) * &Scalar::qnum(m, d)) * &unit)
                    + &(&(&Scalar::q_pow(rat(-d * m, 1)) * &Scalar::qnum(n, d)) * &unit);
                assert_eq!(lhs, rhs, "m={m} n={n} d={d}");
            }
        }
    }
}

#[test]
fn positive_roots_closed_under_reflection_count() {
    // reflections permute the positive roots other than the simple one
    for name in ["A2", "B2", "G2", "A3"] {
        let rs = Arc::new(RootSystem::parse(name).unwrap());
        let pos = rs.positive_roots().to_vec();
        for a in 0..rs.rank() {
            let alpha = rs.simple_root(a);
            for beta in &pos {
                if beta == &alpha {
                    continue;
                }
                let refl = beta - &alpha.scaled(beta.coroot_coord(a));
                assert!(pos.contains(&refl), "{name}: s_{a}({beta}) not positive");
            }
        }
    }
}
