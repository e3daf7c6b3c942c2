//! q-Pochhammer symbols and theta functions.
//!
//! All products live on the base `q^m` for a positive rational modulus `m`:
//!
//! * `poch_finite(a, m, n)` — `(a; q^m)_n = ∏_{k<n} (1 − a·q^{km})`, exact;
//! * `poch_infinite(a, m, N)` — `(a; q^m)_∞` through order `N`;
//! * `j_theta(x, m, N)` — `j(x, q^m) = (q^m; q^m)_∞ (x; q^m)_∞ (q^m/x; q^m)_∞`,
//!   normalized by the quasi-periodicity law
//!   `j(q^{mn}·x̃, q^m) = (−1)^n q^{−m·n(n−1)/2} x̃^{−n} j(x̃, q^m)`
//!   so the three product arguments always carry exponents in `[0, m]`.
//!
//! The shorthands `jam`, `jam_bar` and `jm` are `j(q^a, q^m)`, `j(−q^a, q^m)`
//! and `j(q^m, q^{3m})`. Infinite products are memoized process-wide.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exp::{binom2, exp, Exp};
use crate::monomial::Monomial;
use crate::series::QSeries;

fn check_modulus(m: Exp) -> Result<()> {
    if m <= exp(0) {
        return Err(Error::InvalidParameter(format!(
            "modulus must be positive, got {m}"
        )));
    }
    Ok(())
}

/// `1 − a` as an exact series.
pub fn one_minus(a: &Monomial) -> QSeries {
    QSeries::one().sub(&QSeries::from_monomial(a))
}

/// Finite Pochhammer symbol `(a; q^m)_n`, an exact Laurent polynomial.
pub fn poch_finite(a: &Monomial, m: Exp, n: u32) -> Result<QSeries> {
    check_modulus(m)?;
    let key = (a.clone(), m, n);
    {
        let cache = pfin_cache().lock().unwrap();
        if let Some(s) = cache.get(&key) {
            return Ok(s.clone());
        }
    }
    let mut acc = QSeries::one();
    for k in 0..n {
        acc = acc.mul(&one_minus(&a.mul_q_pow(m * exp(k as i64))));
    }
    pfin_cache().lock().unwrap().insert(key, acc.clone());
    Ok(acc)
}

/// Infinite Pochhammer symbol `(a; q^m)_∞` through order `order`.
///
/// The factors `1 − a·q^{km}` tend to 1 only when `a` carries a nonnegative
/// power of q; otherwise the product has no coefficientwise limit and the
/// call fails with [`Error::DivergentProduct`].
pub fn poch_infinite(a: &Monomial, m: Exp, order: Exp) -> Result<QSeries> {
    check_modulus(m)?;
    if a.is_zero() {
        return Ok(QSeries::one());
    }
    if a.q_exp() < exp(0) {
        return Err(Error::DivergentProduct(format!(
            "({a}; q^{m})_inf has factors that do not tend to 1"
        )));
    }
    if a.is_one() {
        // The k = 0 factor vanishes identically.
        return Ok(QSeries::zero());
    }
    let key = (a.clone(), m);
    {
        let cache = pinf_cache().lock().unwrap();
        if let Some(s) = cache.get(&key) {
            if s.trunc().covers(order) {
                return Ok(s.clone());
            }
        }
    }
    let mut acc = QSeries::one().truncated(order);
    let mut k = 0i64;
    while a.q_exp() + m * exp(k) < order {
        acc = acc.mul(&one_minus(&a.mul_q_pow(m * exp(k))));
        k += 1;
    }
    pinf_cache().lock().unwrap().insert(key, acc.clone());
    Ok(acc)
}

fn pinf_cache() -> &'static Mutex<HashMap<(Monomial, Exp), QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<(Monomial, Exp), QSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

#[allow(clippy::type_complexity)]
fn pfin_cache() -> &'static Mutex<HashMap<(Monomial, Exp, u32), QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<(Monomial, Exp, u32), QSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Theta function `j(x, q^m)` through order `order`.
///
/// `x` may be any nonzero monomial (scalars, q-powers of either sign,
/// fractional exponents, formal symbols). `j(x, q^m)` vanishes identically
/// exactly when `x` is an integral power `q^{mn}`.
pub fn j_theta(x: &Monomial, m: Exp, order: Exp) -> Result<QSeries> {
    check_modulus(m)?;
    if x.is_zero() {
        return Err(Error::InvalidParameter(
            "theta argument must be a nonzero monomial".into(),
        ));
    }
    // Shift the exponent of x into [0, m) and compensate with the
    // quasi-periodicity prefactor.
    let n = (x.q_exp() / m).floor().to_integer();
    let xt = x.mul_q_pow(-m * exp(n));
    if xt.is_one() {
        return Ok(QSeries::zero());
    }
    // Prefactor (−1)^n q^{−m·C(n,2)} xt^{−n}; its q-exponent is ≤ 0, so the
    // inner products must be computed correspondingly further.
    let mut pref = Monomial::q_pow(-m * exp(binom2(n))).mul(&xt.pow(-(n as i32))?);
    if n % 2 != 0 {
        pref = pref.neg();
    }
    let inner_order = order - pref.q_exp();
    let qm = Monomial::q_pow(m);
    let qm_over_xt = qm.div(&xt)?;
    let prod = poch_infinite(&qm, m, inner_order)?
        .mul(&poch_infinite(&xt, m, inner_order)?)
        .mul(&poch_infinite(&qm_over_xt, m, inner_order)?);
    Ok(prod.mul_monomial(&pref))
}

/// `J_{a,m} = j(q^a, q^m)`.
pub fn jam(a: Exp, m: Exp, order: Exp) -> Result<QSeries> {
    j_theta(&Monomial::q_pow(a), m, order)
}

/// `J̄_{a,m} = j(−q^a, q^m)`.
pub fn jam_bar(a: Exp, m: Exp, order: Exp) -> Result<QSeries> {
    j_theta(&Monomial::q_pow(a).neg(), m, order)
}

/// `J_m = J_{m,3m} = (q^m; q^m)_∞`.
pub fn jm(m: Exp, order: Exp) -> Result<QSeries> {
    jam(m, m * exp(3), order)
}

/// Scaled binomial exponent `m·C(n,2)` for bilateral theta expansions.
pub fn theta_exponent(m: Exp, n: i64) -> Exp {
    m * exp(binom2(n))
}

/// Bilateral triple-product expansion `Σ_n (−1)^n q^{m·C(n,2)} x^n`,
/// used as an independent cross-check of [`j_theta`] in tests.
pub fn j_theta_sum(x: &Monomial, m: Exp, order: Exp) -> Result<QSeries> {
    check_modulus(m)?;
    if x.is_zero() {
        return Err(Error::InvalidParameter(
            "theta argument must be a nonzero monomial".into(),
        ));
    }
    let mut acc = QSeries::zero().truncated(order);
    for dir in [1i64, -1] {
        let mut n = if dir == 1 { 0 } else { -1 };
        loop {
            let e = theta_exponent(m, n) + x.q_exp() * exp(n);
            // The quadratic term dominates once the per-step increment
            // m·(|n|−1) exceeds |q_exp(x)|; past that point exponents only
            // grow, so the tail cannot reach back below the order.
            if e >= order && m * exp(n.abs() - 1) >= x.q_exp().abs() {
                break;
            }
            if e < order {
                let mut t = x.pow(n as i32)?.mul_q_pow(theta_exponent(m, n));
                if n % 2 != 0 {
                    t = t.neg();
                }
                acc = acc.add(&QSeries::from_monomial(&t).truncated(order));
            }
            n += dir;
        }
    }
    Ok(acc)
}

/// True when the scalar part of every coefficient of `s` is an integer
/// (handy for sanity checks on combinatorial series).
pub fn has_integer_coefficients(s: &QSeries) -> bool {
    s.terms_iter().all(|(_, c)| {
        c.terms()
            .all(|(_, r)| r.denom() == &num_bigint::BigInt::from(1))
    })
}

/// Valuation-aware equality helper for tests: both sides through `order`.
pub fn assert_eq_series(a: &QSeries, b: &QSeries, order: Exp) {
    match a.eq_up_to(b, order) {
        Ok(crate::series::EqOutcome::Equal) => {}
        Ok(crate::series::EqOutcome::MismatchAt { exp, lhs, rhs }) => {
            panic!("series differ at q^{exp}: {lhs} vs {rhs}")
        }
        Err(e) => panic!("comparison failed: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::exp_frac;
    use crate::series::{EqOutcome, Trunc};
    use crate::symbol::Symbol;

    #[test]
    fn euler_product_matches_pentagonal_numbers() {
        // (q; q)_inf = sum over all integers n of (-1)^n q^{n(3n-1)/2}.
        let order = exp(80);
        let prod = poch_infinite(&Monomial::q(), exp(1), order).unwrap();
        let mut sum = QSeries::zero().truncated(order);
        for n in -10i64..=10 {
            let e = exp(n * (3 * n - 1) / 2);
            if e < order {
                let mut t = Monomial::q_pow(e);
                if n % 2 != 0 {
                    t = t.neg();
                }
                sum = sum.add(&QSeries::from_monomial(&t).truncated(order));
            }
        }
        assert_eq_series(&prod, &sum, order);
    }

    #[test]
    fn theta_matches_bilateral_sum() {
        let order = exp(40);
        let x_sym = Monomial::sym(Symbol::new("x"));
        for (x, m) in [
            (x_sym.clone(), exp(1)),
            (x_sym.clone(), exp(3)),
            (Monomial::q_pow(exp(2)).neg(), exp(5)),
            (Monomial::q_pow(exp_frac(1, 2)), exp(1)),
            (Monomial::from_int(2).mul(&Monomial::q()), exp(2)),
            (Monomial::q_pow(exp(-3)).mul(&x_sym), exp(2)),
        ] {
            let lhs = j_theta(&x, m, order).unwrap();
            let rhs = j_theta_sum(&x, m, order).unwrap();
            assert_eq_series(&lhs, &rhs, order);
        }
    }

    #[test]
    fn theta_quasi_periodicity() {
        // j(q^{mn}·x, q^m) = (-1)^n q^{-m n(n-1)/2} x^{-n} j(x, q^m)
        let order = exp(30);
        let x = Monomial::sym(Symbol::new("x"));
        let m = exp(3);
        let base = j_theta(&x, m, exp(80)).unwrap();
        for n in -2i64..=2 {
            let lhs = j_theta(&x.mul_q_pow(m * exp(n)), m, order).unwrap();
            let mut pref = Monomial::q_pow(-m * exp(binom2(n))).mul(&x.pow(-(n as i32)).unwrap());
            if n % 2 != 0 {
                pref = pref.neg();
            }
            let rhs = base.mul_monomial(&pref);
            assert_eq_series(&lhs, &rhs, order);
        }
    }

    #[test]
    fn theta_inversion_laws() {
        let order = exp(30);
        let x = Monomial::sym(Symbol::new("x"));
        let m = exp(2);
        let j = j_theta(&x, m, order).unwrap();
        // j(q^m/x, q^m) = j(x, q^m)
        let refl = j_theta(&Monomial::q_pow(m).div(&x).unwrap(), m, order).unwrap();
        assert_eq_series(&refl, &j, order);
        // j(1/x, q^m) = -x^{-1} j(x, q^m)
        let invx = j_theta(&x.inv().unwrap(), m, order).unwrap();
        let rhs = j_theta(&x, m, exp(40))
            .unwrap()
            .mul_monomial(&x.inv().unwrap().neg());
        assert_eq_series(&invx, &rhs, order);
    }

    #[test]
    fn theta_vanishes_exactly_at_integral_powers() {
        let z = j_theta(&Monomial::q_pow(exp(3)), exp(3), exp(20)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.trunc(), Trunc::Exact);
        let z2 = j_theta(&Monomial::q_pow(exp(-6)), exp(3), exp(20)).unwrap();
        assert!(z2.is_zero());
        // Nearby non-multiples do not vanish.
        let nz = j_theta(&Monomial::q_pow(exp(2)), exp(3), exp(20)).unwrap();
        assert!(!nz.is_zero());
    }

    #[test]
    fn overline_theta_at_minus_one() {
        // j(-1, q) = 2 + 2q + 2q^3 + 2q^6 + ... (exponents C(n,2), doubled)
        let s = jam_bar(exp(0), exp(1), exp(12)).unwrap();
        let expect = [
            (0, 2),
            (1, 2),
            (2, 0),
            (3, 2),
            (4, 0),
            (5, 0),
            (6, 2),
            (7, 0),
            (8, 0),
            (9, 0),
            (10, 2),
        ];
        for (e, c) in expect {
            assert_eq!(
                s.coeff(exp(e)).unwrap(),
                crate::coeff::Coeff::from_int(c),
                "at q^{e}"
            );
        }
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            poch_infinite(&Monomial::q_pow(exp(-1)), exp(1), exp(10)),
            Err(Error::DivergentProduct(_))
        ));
        assert!(matches!(
            poch_infinite(&Monomial::q(), exp(0), exp(10)),
            Err(Error::InvalidParameter(_))
        ));
        let zero = poch_infinite(&Monomial::one(), exp(1), exp(10)).unwrap();
        assert!(zero.is_zero());
        let unit = poch_finite(&Monomial::q(), exp(1), 0).unwrap();
        assert_eq!(
            unit.eq_up_to(&QSeries::one(), exp(5)).unwrap(),
            EqOutcome::Equal
        );
    }

    #[test]
    fn pochhammer_cache_is_order_monotone() {
        let a = Monomial::q_pow(exp(2)).neg();
        let s1 = poch_infinite(&a, exp(7), exp(10)).unwrap();
        let s2 = poch_infinite(&a, exp(7), exp(50)).unwrap();
        assert!(s2.trunc().covers(exp(50)));
        assert_eq_series(&s1, &s2.truncated(exp(10)), exp(10));
    }
}
