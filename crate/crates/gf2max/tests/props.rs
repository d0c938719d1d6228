//! Randomized property suites: algebraic laws for polynomials and matrices,
//! codec round-trips, and the Cayley-Hamilton / divisibility facts that hold
//! for every matrix.

mod common;

use gf2max::{Gf2Mat, Gf2Poly, MatCode};
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = Gf2Poly> {
    // Degree <= 16.
    (0u128..1 << 17).prop_map(Gf2Poly::from_bits)
}

fn arb_modulus() -> impl Strategy<Value = Gf2Poly> {
    // Degree 1..=16: any bit pattern with a forced bit above it.
    (1u32..=16, 0u128..1 << 16)
        .prop_map(|(d, low)| Gf2Poly::from_bits((1 << d) | (low & ((1 << d) - 1))))
}

fn arb_mat() -> impl Strategy<Value = Gf2Mat> {
    (1usize..=8)
        .prop_flat_map(|n| prop::collection::vec(0u64..1 << n, n))
        .prop_map(|rows| {
            let n = rows.len();
            Gf2Mat::from_rows(n, rows).unwrap()
        })
}

fn arb_square_pair() -> impl Strategy<Value = (Gf2Mat, Gf2Mat)> {
    (1usize..=8).prop_flat_map(|n| {
        let rows = prop::collection::vec(0u64..1 << n, n);
        (rows.clone(), rows).prop_map(move |(a, b)| {
            (
                Gf2Mat::from_rows(n, a).unwrap(),
                Gf2Mat::from_rows(n, b).unwrap(),
            )
        })
    })
}

fn arb_square_triple() -> impl Strategy<Value = (Gf2Mat, Gf2Mat, Gf2Mat)> {
    (1usize..=8).prop_flat_map(|n| {
        let rows = prop::collection::vec(0u64..1 << n, n);
        (rows.clone(), rows.clone(), rows).prop_map(move |(a, b, c)| {
            (
                Gf2Mat::from_rows(n, a).unwrap(),
                Gf2Mat::from_rows(n, b).unwrap(),
                Gf2Mat::from_rows(n, c).unwrap(),
            )
        })
    })
}

proptest! {
    #[test]
    fn poly_add_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a + b, b + a);
    }

    #[test]
    fn poly_add_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!((a + b) + c, a + (b + c));
    }

    #[test]
    fn poly_add_self_cancels(a in arb_poly()) {
        prop_assert!((a + a).is_zero());
        prop_assert_eq!(a + Gf2Poly::ZERO, a);
    }

    #[test]
    fn mulmod_distributes_over_add(
        a in arb_poly(), b in arb_poly(), c in arb_poly(), m in arb_modulus()
    ) {
        let lhs = a.mul_mod(b + c, m).unwrap();
        let rhs = a.mul_mod(b, m).unwrap() + a.mul_mod(c, m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mulmod_commutes(a in arb_poly(), b in arb_poly(), m in arb_modulus()) {
        prop_assert_eq!(a.mul_mod(b, m).unwrap(), b.mul_mod(a, m).unwrap());
    }

    #[test]
    fn poly_text_round_trips(a in arb_poly()) {
        let shown = a.to_string();
        prop_assert_eq!(shown.parse::<Gf2Poly>().unwrap(), a);
    }

    #[test]
    fn codec_round_trips(m in arb_mat()) {
        prop_assert_eq!(m.code().decode(), m);
    }

    #[test]
    fn codec_is_injective(
        (a, b) in arb_square_pair()
    ) {
        prop_assert_eq!(a.code() == b.code(), a == b);
    }

    #[test]
    fn code_range_is_respected(m in arb_mat()) {
        let n = m.dim();
        let code = m.code();
        prop_assert!(MatCode::new(n, code.value().clone()).is_ok());
        prop_assert!(code.value().bits() <= (n * n) as u64);
    }

    #[test]
    fn mat_mul_associates((a, b, c) in arb_square_triple()) {
        let lhs = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let rhs = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mat_mul_identity_laws(m in arb_mat()) {
        let i = Gf2Mat::identity(m.dim()).unwrap();
        prop_assert_eq!(i.try_mul(&m).unwrap(), m.clone());
        prop_assert_eq!(m.try_mul(&i).unwrap(), m);
    }

    #[test]
    fn mat_mul_matches_naive_oracle((a, b) in arb_square_pair()) {
        prop_assert_eq!(a.try_mul(&b).unwrap(), common::naive_mat_mul(&a, &b));
    }

    #[test]
    fn inverse_is_two_sided(m in arb_mat()) {
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(m.is_invertible());
                prop_assert!(inv.try_mul(&m).unwrap().is_identity());
                prop_assert!(m.try_mul(&inv).unwrap().is_identity());
            }
            Err(_) => prop_assert!(m.rank() < m.dim()),
        }
    }

    #[test]
    fn cayley_hamilton(m in arb_mat()) {
        prop_assert!(m.eval_poly(m.char_poly()).is_zero());
    }

    #[test]
    fn min_poly_divides_char_poly(m in arb_mat()) {
        let rem = m.char_poly().rem(m.min_poly()).unwrap();
        prop_assert!(rem.is_zero());
    }

    #[test]
    fn transpose_is_involution(m in arb_mat()) {
        prop_assert_eq!(m.transpose().transpose(), m);
    }
}
