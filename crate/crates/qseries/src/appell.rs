//! Appell-Lerch sums.
//!
//! * [`expand_reciprocal`] — the geometric kernel `1/(1 − μ)` for a monomial
//!   `μ`, with the three valuation cases handled exactly;
//! * [`appell_unnormalized`] — the level-`ℓ` bilateral sum
//!   `A_ℓ(a, b) = Σ_n (−1)^{ℓn} q^{ℓ·n(n+1)/2} b^n / (1 − a q^n)`
//!   (no normalizing prefactor);
//! * [`m_sum`] — the normalized sum
//!   `m(x, q^M, z) = j(z, q^M)^{-1} Σ_r (−1)^r q^{M·r(r−1)/2} z^r / (1 − q^{M(r−1)} x z)`;
//! * [`delta_correction`] — the theta quotient measuring how `m(x, q^M, z)`
//!   changes when `z` moves:
//!   `Δ = z₀ J³ j(z₁/z₀) j(x z₀ z₁) / (j(z₀) j(z₁) j(x z₀) j(x z₁))`
//!   with `J = (q^M; q^M)_∞`, all thetas on base `q^M`.
//!
//! Bilateral tails are driven by monomial valuation bounds: a tail stops
//! after 16 consecutive terms whose valuation clears the working order, and
//! a sum whose term valuations stop improving for 16 consecutive terms is
//! rejected as divergent.

use num_traits::One;

use crate::coeff::Rat;
use crate::error::{Error, Result};
use crate::exp::{binom2, exp, Exp};
use crate::monomial::Monomial;
use crate::products::{j_theta, jm};
use crate::series::{compute_to, QSeries};

/// `1/(1 − μ)` through `order` for a monomial `μ`.
///
/// * positive q-valuation: the geometric series `Σ μ^k`;
/// * negative q-valuation: `−μ^{-1}/(1 − μ^{-1})`, again geometric;
/// * zero q-valuation: only a pure scalar `c ≠ 1` is meaningful (`1/(1−c)`);
///   symbol content makes the expression a formal pole, and `c = 1` is a
///   genuine zero of the denominator.
pub fn expand_reciprocal(mu: &Monomial, order: Exp) -> Result<QSeries> {
    if mu.is_zero() {
        return Ok(QSeries::one());
    }
    let v = mu.q_exp();
    if v == exp(0) {
        if mu.uses_symbols() {
            return Err(Error::FormalPole(format!(
                "1/(1 - {mu}) is not a Laurent series in the symbols"
            )));
        }
        if mu.coeff().is_one() {
            return Err(Error::NonGenericParameters(
                "denominator 1 - 1 vanishes".into(),
            ));
        }
        let c = (Rat::one() - mu.coeff()).recip();
        return Ok(QSeries::one().scale(&c));
    }
    let (base, sign) = if v > exp(0) {
        (mu.clone(), 1)
    } else {
        (mu.inv()?, -1)
    };
    let step = base.q_exp();
    let mut acc = QSeries::zero().truncated(order);
    let mut k: i64 = if sign == 1 { 0 } else { 1 };
    loop {
        let e = step * exp(k);
        if e >= order {
            break;
        }
        let mut t = base.pow(k as i32)?;
        if sign == -1 {
            t = t.neg();
        }
        acc = acc.add(&QSeries::from_monomial(&t).truncated(order));
        k += 1;
    }
    Ok(acc)
}

/// Valuation lower bound for `pref / (1 − μ)` read off the monomials.
fn term_val(pref: &Monomial, mu: &Monomial) -> Exp {
    let mut v = pref.q_exp();
    if mu.q_exp() < exp(0) {
        v -= mu.q_exp();
    }
    v
}

/// Expand `pref / (1 − μ)` with truncation at least `order`.
fn expand_term(pref: &Monomial, mu: &Monomial, order: Exp) -> Result<QSeries> {
    let inner = expand_reciprocal(mu, order - pref.q_exp())?;
    Ok(inner.mul_monomial(pref))
}

/// Sum `term(r)` over all integers `r`, where each term is described by the
/// pair of monomials `(prefactor, μ)` meaning `prefactor/(1 − μ)`.
pub(crate) fn sum_bilateral(
    order: Exp,
    term: impl Fn(i64) -> Result<(Monomial, Monomial)>,
) -> Result<QSeries> {
    let mut acc = QSeries::zero().truncated(order);
    for dir in [1i64, -1] {
        let mut r = if dir == 1 { 0 } else { -1 };
        let mut done_streak = 0u32;
        let mut best: Option<Exp> = None;
        let mut stall = 0u32;
        loop {
            let (pref, mu) = term(r)?;
            let v = if pref.is_zero() {
                order
            } else {
                term_val(&pref, &mu)
            };
            if v >= order {
                done_streak += 1;
                if done_streak >= 16 {
                    break;
                }
            } else {
                done_streak = 0;
                if best.map(|b| v > b).unwrap_or(true) {
                    best = Some(v);
                    stall = 0;
                } else {
                    stall += 1;
                    if stall >= 16 {
                        return Err(Error::DivergentSum(format!(
                            "term valuations stopped improving near index {r}"
                        )));
                    }
                }
                acc = acc.add(&expand_term(&pref, &mu, order)?.truncated(order));
            }
            r += dir;
        }
    }
    Ok(acc)
}

/// Unnormalized level-`l` Appell-Lerch sum
/// `A_l(a, b) = Σ_{n∈ℤ} (−1)^{ln} q^{l·n(n+1)/2} b^n / (1 − a q^n)`.
pub fn appell_unnormalized(l: u32, a: &Monomial, b: &Monomial, order: Exp) -> Result<QSeries> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidParameter(
            "Appell-Lerch arguments must be nonzero monomials".into(),
        ));
    }
    compute_to(order, |ord| {
        sum_bilateral(ord, |n| {
            let mut pref = b
                .pow(n as i32)?
                .mul_q_pow(exp(l as i64) * exp(binom2(n + 1)));
            if (l as i64 * n) % 2 != 0 {
                pref = pref.neg();
            }
            let mu = a.mul_q_pow(exp(n));
            Ok((pref, mu))
        })
    })
}

/// Normalized Appell-Lerch sum `m(x, q^M, z)`.
pub fn m_sum(x: &Monomial, m: Exp, z: &Monomial, order: Exp) -> Result<QSeries> {
    if x.is_zero() || z.is_zero() {
        return Err(Error::InvalidParameter(
            "m(x, q^M, z) needs nonzero monomials x and z".into(),
        ));
    }
    compute_to(order, |ord| {
        let theta = j_theta(z, m, ord)?;
        if theta.is_zero() {
            return Err(Error::NonGenericParameters(format!(
                "j({z}, q^{m}) vanishes identically"
            )));
        }
        let sum = sum_bilateral(ord, |r| {
            let mut pref = z.pow(r as i32)?.mul_q_pow(m * exp(binom2(r)));
            if r % 2 != 0 {
                pref = pref.neg();
            }
            let mu = x.mul(z).mul_q_pow(m * exp(r - 1));
            Ok((pref, mu))
        })?;
        Ok(sum.mul(&theta.invert_to(ord)?))
    })
}

/// The change-of-`z` correction
/// `Δ(x, q^M; z₁, z₀) = z₀ J³ j(z₁/z₀) j(x z₀ z₁) / (j(z₀) j(z₁) j(x z₀) j(x z₁))`
/// satisfying `m(x, q^M, z₁) − m(x, q^M, z₀) = Δ(x, q^M; z₁, z₀)`.
pub fn delta_correction(
    x: &Monomial,
    m: Exp,
    z1: &Monomial,
    z0: &Monomial,
    order: Exp,
) -> Result<QSeries> {
    if x.is_zero() || z1.is_zero() || z0.is_zero() {
        return Err(Error::InvalidParameter(
            "delta correction needs nonzero monomials".into(),
        ));
    }
    compute_to(order, |ord| {
        let num_j1 = j_theta(&z1.div(z0)?, m, ord)?;
        if num_j1.is_zero() {
            // z1/z0 a power of q^M: the two m-values agree, the correction
            // vanishes identically.
            return Ok(QSeries::zero());
        }
        let num = jm(m, ord)?
            .pow(3)
            .mul(&num_j1)
            .mul(&j_theta(&x.mul(z0).mul(z1), m, ord)?)
            .mul_monomial(z0);
        let mut den = QSeries::one();
        for arg in [z0.clone(), z1.clone(), x.mul(z0), x.mul(z1)] {
            let t = j_theta(&arg, m, ord)?;
            if t.is_zero() {
                return Err(Error::NonGenericParameters(format!(
                    "j({arg}, q^{m}) vanishes identically"
                )));
            }
            den = den.mul(&t);
        }
        Ok(num.mul(&den.invert_to(ord)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coeff;
    use crate::exp::exp_frac;
    use crate::products::assert_eq_series;
    use crate::symbol::Symbol;

    fn series_from(pairs: &[(Exp, i64, i64)], order: Exp) -> QSeries {
        let terms: Vec<(Exp, Coeff)> = pairs
            .iter()
            .map(|&(e, n, d)| (e, Coeff::from_rat(Rat::new(n.into(), d.into()))))
            .collect();
        QSeries::from_terms(&terms, crate::series::Trunc::UpTo(order))
    }

    #[test]
    fn reciprocal_cases() {
        // Positive valuation: geometric series.
        let g = expand_reciprocal(&Monomial::q_pow(exp(2)), exp(7)).unwrap();
        assert_eq_series(
            &g,
            &series_from(
                &[
                    (exp(0), 1, 1),
                    (exp(2), 1, 1),
                    (exp(4), 1, 1),
                    (exp(6), 1, 1),
                ],
                exp(7),
            ),
            exp(7),
        );
        // Negative valuation: 1/(1 - q^{-1}) = -q - q^2 - ...
        let h = expand_reciprocal(&Monomial::q_pow(exp(-1)), exp(4)).unwrap();
        assert_eq_series(
            &h,
            &series_from(&[(exp(1), -1, 1), (exp(2), -1, 1), (exp(3), -1, 1)], exp(4)),
            exp(4),
        );
        // Scalar: 1/(1-(-1)) = 1/2.
        let s = expand_reciprocal(&Monomial::from_int(-1), exp(4)).unwrap();
        assert_eq!(
            s.coeff(exp(0)).unwrap(),
            Coeff::from_rat(Rat::new(1.into(), 2.into()))
        );
        // Errors.
        assert!(matches!(
            expand_reciprocal(&Monomial::sym(Symbol::new("x")), exp(4)),
            Err(Error::FormalPole(_))
        ));
        assert!(matches!(
            expand_reciprocal(&Monomial::one(), exp(4)),
            Err(Error::NonGenericParameters(_))
        ));
    }

    #[test]
    fn level_three_bilateral_values() {
        let s = appell_unnormalized(
            3,
            &Monomial::from_int(-1),
            &Monomial::q_pow(exp(-1)),
            exp(13),
        )
        .unwrap();
        let expect = series_from(
            &[
                (exp(0), 1, 2),
                (exp(2), -2, 1),
                (exp(3), 2, 1),
                (exp(4), -2, 1),
                (exp(5), 2, 1),
                (exp(6), -2, 1),
                (exp(7), 4, 1),
                (exp(8), -2, 1),
                (exp(10), -2, 1),
                (exp(11), 4, 1),
                (exp(12), -2, 1),
            ],
            exp(13),
        );
        assert_eq_series(&s, &expect, exp(13));
    }

    #[test]
    fn level_two_fractional_b_values() {
        // A_2(-1, -q^{-1/2}) lives on the half-integer grid.
        let s = appell_unnormalized(
            2,
            &Monomial::from_int(-1),
            &Monomial::q_pow(exp_frac(-1, 2)).neg(),
            exp(7),
        )
        .unwrap();
        let expect = series_from(
            &[
                (exp(0), 1, 2),
                (exp_frac(3, 2), -2, 1),
                (exp_frac(5, 2), 2, 1),
                (exp_frac(7, 2), -2, 1),
                (exp_frac(9, 2), 2, 1),
                (exp(5), 2, 1),
                (exp_frac(11, 2), -2, 1),
                (exp_frac(13, 2), 2, 1),
            ],
            exp(7),
        );
        assert_eq_series(&s, &expect, exp(7));
    }

    #[test]
    fn normalized_sum_values_and_shift_law() {
        let x = Monomial::q_pow(exp(2)).neg();
        let m5 = exp(5);
        let z3 = Monomial::q_pow(exp(3));
        let z4 = Monomial::q_pow(exp(4));
        let s = m_sum(&x, m5, &z3, exp(13)).unwrap();
        let expect = series_from(
            &[
                (exp(0), 1, 2),
                (exp(2), 1, 2),
                (exp(3), -1, 2),
                (exp(4), 1, 2),
                (exp(7), -1, 2),
                (exp(8), 1, 1),
                (exp(9), -1, 1),
                (exp(10), 1, 2),
                (exp(12), 1, 1),
            ],
            exp(13),
        );
        assert_eq_series(&s, &expect, exp(13));

        // Moving z across the correction term.
        let order = exp(30);
        let lhs = m_sum(&x, m5, &z4, order).unwrap();
        let rhs = m_sum(&x, m5, &z3, order)
            .unwrap()
            .add(&delta_correction(&x, m5, &z4, &z3, order).unwrap());
        assert_eq_series(&lhs, &rhs, order);
    }

    #[test]
    fn delta_values_and_degenerate_cases() {
        let x = Monomial::q_pow(exp(2)).neg();
        let d = delta_correction(
            &x,
            exp(5),
            &Monomial::q_pow(exp(4)),
            &Monomial::q_pow(exp(3)),
            exp(9),
        )
        .unwrap();
        let expect = series_from(
            &[
                (exp(0), 1, 2),
                (exp(2), 1, 2),
                (exp(3), 1, 2),
                (exp(4), 1, 2),
                (exp(5), -1, 1),
                (exp(6), 1, 1),
                (exp(7), -1, 2),
            ],
            exp(9),
        );
        assert_eq_series(&d, &expect, exp(9));

        // Same z twice: the correction vanishes identically.
        let z = Monomial::q_pow(exp(3));
        let zero = delta_correction(&x, exp(5), &z, &z, exp(10)).unwrap();
        assert!(zero.is_zero());

        // z a power of the base is a pole of m.
        assert!(matches!(
            m_sum(&x, exp(5), &Monomial::q_pow(exp(10)), exp(10)),
            Err(Error::NonGenericParameters(_))
        ));
    }

    #[test]
    fn divergent_tail_is_rejected() {
        // Level 0 with scalar b: term valuations never improve.
        let err = appell_unnormalized(0, &Monomial::q().neg(), &Monomial::from_int(2), exp(10));
        assert!(matches!(err, Err(Error::DivergentSum(_))));
    }

    #[test]
    fn formal_arguments_are_poles_for_normalized_sums() {
        // Appell-Lerch denominators 1 - (stuff)·q^0 and the 1/j(z, q^M)
        // normalization both leave the Laurent-polynomial coefficient ring
        // when fed a formal symbol; the engine reports that instead of
        // silently truncating a rational function.
        let z = Monomial::sym(Symbol::new("z"));
        assert!(matches!(
            m_sum(&Monomial::q().neg(), exp(1), &z, exp(8)),
            Err(Error::FormalPole(_))
        ));
        assert!(matches!(
            m_sum(&Monomial::q_pow(exp(2)).neg(), exp(5), &z, exp(8)),
            Err(Error::NotInvertible(_))
        ));
        assert!(matches!(
            appell_unnormalized(1, &z, &Monomial::q(), exp(8)),
            Err(Error::FormalPole(_))
        ));
    }
}
