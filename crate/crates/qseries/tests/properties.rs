//! Property-based invariants of the series core.
//!
//! These cover the algebra the rest of the workspace silently relies on:
//! ring axioms under truncation, inversion against multiplication,
//! substitution as an exponent-transport map, and the rule that widening a
//! computation never rewrites already-known coefficients.

use proptest::prelude::*;

use qseries::products::{j_theta, poch_infinite};
use qseries::{exp, EqOutcome, Monomial, QSeries, Symbol, Trunc};

const ORDER: i64 = 24;

/// Random sparse Laurent polynomial: exponents in [−6, 12], small integer
/// coefficients, and (optionally) a power of the formal symbol `z`.
fn laurent(with_symbol: bool) -> impl Strategy<Value = QSeries> {
    proptest::collection::vec((-6i64..=12, -9i64..=9, 0i32..=2), 0..8).prop_map(move |terms| {
        let mut acc = QSeries::zero();
        for (e, c, zpow) in terms {
            if c == 0 {
                continue;
            }
            let mut m = Monomial::from_int(c).mul_q_pow(exp(e));
            if with_symbol && zpow > 0 {
                m = m.mul(&Monomial::sym(Symbol::new("z")).pow(zpow).unwrap());
            }
            acc = acc.add(&QSeries::from_monomial(&m));
        }
        acc
    })
}

/// Largest order both sides actually know: negative-valuation factors
/// legitimately shrink a product's certified window, so comparisons must not
/// ask past it.
fn common_order(a: &QSeries, b: &QSeries, cap: i64) -> qseries::Exp {
    let mut n = exp(cap);
    for s in [a, b] {
        if let Trunc::UpTo(t) = s.trunc() {
            if t < n {
                n = t;
            }
        }
    }
    n
}

fn assert_same(a: &QSeries, b: &QSeries, cap: i64) {
    let n = common_order(a, b, cap);
    match a.eq_up_to(b, n).unwrap() {
        EqOutcome::Equal => {}
        EqOutcome::MismatchAt { exp: e, lhs, rhs } => {
            panic!("series differ at q^({e}): {lhs} vs {rhs}")
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold_under_truncation(
        a in laurent(true),
        b in laurent(true),
        c in laurent(true),
    ) {
        let ord = exp(ORDER);
        let (a, b, c) = (a.truncated(ord), b.truncated(ord), c.truncated(ord));
        assert_same(&a.add(&b), &b.add(&a), ORDER);
        assert_same(&a.mul(&b), &b.mul(&a), ORDER);
        assert_same(&a.add(&b).add(&c), &a.add(&b.add(&c)), ORDER);
        assert_same(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)), ORDER);
        assert_same(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c)), ORDER);
        assert_same(&a.sub(&a), &QSeries::zero(), ORDER);
        assert_same(&a.mul(&QSeries::one()), &a, ORDER);
    }

    #[test]
    fn inversion_is_a_two_sided_inverse(s in laurent(false), lead in 1i64..=4) {
        // Make the series invertible by planting a unit below its support.
        let unit = QSeries::from_monomial(&Monomial::from_int(lead).mul_q_pow(exp(-7)));
        let s = unit.add(&s.truncated(exp(ORDER)));
        let inv = s.invert_to(exp(ORDER)).unwrap();
        assert_same(&s.mul(&inv), &QSeries::one(), ORDER);
        assert_same(&inv.mul(&s), &QSeries::one(), ORDER);
    }

    #[test]
    fn substitution_transports_exponents(s in laurent(true), k in 1i64..=4) {
        let image = s.substitute(1, k).unwrap();
        for (e, c) in s.terms_iter() {
            let hit = image.terms_iter().find(|(ie, _)| *ie == e * exp(k));
            prop_assert_eq!(hit.map(|(_, ic)| ic.clone()), Some(c.clone()));
        }
        // Nothing appears off the k-grid.
        for (ie, _) in image.terms_iter() {
            prop_assert!((ie / exp(k)).is_integer());
        }
    }

    #[test]
    fn sign_twist_is_an_involution(s in laurent(true)) {
        let twice = s.substitute(-1, 1).unwrap().substitute(-1, 1).unwrap();
        assert_same(&twice, &s, ORDER + 20);
    }

    #[test]
    fn widening_never_rewrites_known_coefficients(ae in 0i64..=3, m in 1i64..=3, wide in 25i64..=60) {
        // Classic products computed at two orders must agree below the
        // narrower one — both through the memo caches and around them.
        let a = if ae == 0 { Monomial::from_int(-1) } else { Monomial::q_pow(exp(ae)) };
        let narrow = poch_infinite(&a, exp(m), exp(ORDER)).unwrap();
        let wide_s = poch_infinite(&a, exp(m), exp(wide)).unwrap();
        assert_same(&narrow, &wide_s.truncated(exp(ORDER)), ORDER);

        let x = Monomial::q_pow(exp(ae + 1));
        let narrow = j_theta(&x, exp(m), exp(ORDER)).unwrap();
        let wide_s = j_theta(&x, exp(m), exp(wide)).unwrap();
        assert_same(&narrow, &wide_s.truncated(exp(ORDER)), ORDER);
    }

    #[test]
    fn truncation_state_is_sticky(s in laurent(false), t in 1i64..=10) {
        let cut = s.truncated(exp(t));
        prop_assert_eq!(cut.trunc(), Trunc::UpTo(exp(t)));
        // Arithmetic cannot resurrect forgotten coefficients.
        let via_sum = cut.add(&QSeries::one());
        prop_assert_eq!(via_sum.trunc(), Trunc::UpTo(exp(t)));
        for (e, _) in via_sum.terms_iter() {
            prop_assert!(e < exp(t));
        }
    }
}
