//! Indefinite binary theta series and their Appell-Lerch decomposition.
//!
//! * [`f_indef`] / [`f_indef_base`] — the quadrant difference
//!   `f_{a,b,c}(x, y) = (Σ_{r,s ≥ 0} − Σ_{r,s < 0}) (−x)^r (−y)^s
//!    q^{a·C(r,2) + b·r·s + c·C(s,2)}`
//!   (with `C(n,2) = n(n−1)/2`), optionally on base `q^M`;
//! * [`g_hm`] — the Appell-Lerch part of the decomposition, a sum of
//!   `j × m` products controlled by the discriminant `b² − ac`;
//! * [`theta_np`] — the two-parameter family of theta quotients that closes
//!   the decomposition for `f_{n, n+p, n}`;
//! * [`hm_decomposition`] — both sides of
//!   `f_{n,n+p,n}(x, y) = g_{n,n+p,n}(x, y, −1, −1) + θ_{n,p}(x, y)`.

use num_integer::Integer;

use crate::appell::m_sum;
use crate::error::{Error, Result};
use crate::exp::{binom2, exp, exp_frac, Exp};
use crate::monomial::Monomial;
use crate::products::{j_theta, jam_bar, jm};
use crate::series::{compute_to, QSeries};

/// Quadratic-form exponent `a·C(r,2) + b·r·s + c·C(s,2)`.
fn form_exponent(a: i64, b: i64, c: i64, r: i64, s: i64) -> i64 {
    a * binom2(r) + b * r * s + c * binom2(s)
}

/// `f_{a,b,c}(x, y)` on base `q`.
pub fn f_indef(a: i64, b: i64, c: i64, x: &Monomial, y: &Monomial, order: Exp) -> Result<QSeries> {
    f_indef_base(a, b, c, x, y, exp(1), order)
}

/// `f_{a,b,c}(x, y)` with `q` replaced by `q^m` in the quadratic exponent
/// (the monomials `x`, `y` are taken as given).
pub fn f_indef_base(
    a: i64,
    b: i64,
    c: i64,
    x: &Monomial,
    y: &Monomial,
    m: Exp,
    order: Exp,
) -> Result<QSeries> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::InvalidParameter(
            "indefinite theta arguments must be nonzero monomials".into(),
        ));
    }
    if m <= exp(0) {
        return Err(Error::InvalidParameter(format!(
            "base exponent must be positive, got {m}"
        )));
    }
    let negx = x.neg();
    let negy = y.neg();
    let mut acc = QSeries::zero().truncated(order);
    // The two quadrants are enumerated along antidiagonals; each diagonal's
    // minimal term valuation gates the streak/stall logic.
    for quadrant in [0u8, 1] {
        let mut diag: i64 = 0;
        let mut done_streak = 0u32;
        let mut best: Option<Exp> = None;
        let mut stall = 0u32;
        loop {
            let mut diag_min: Option<Exp> = None;
            let mut terms: Vec<(i64, i64)> = Vec::new();
            for i in 0..=diag {
                let (r, s) = if quadrant == 0 {
                    (i, diag - i)
                } else {
                    (-1 - i, -1 - (diag - i))
                };
                let e =
                    m * exp(form_exponent(a, b, c, r, s)) + x.q_exp() * exp(r) + y.q_exp() * exp(s);
                if diag_min.map(|v| e < v).unwrap_or(true) {
                    diag_min = Some(e);
                }
                if e < order {
                    terms.push((r, s));
                }
            }
            let dv = diag_min.unwrap();
            if terms.is_empty() {
                done_streak += 1;
                if done_streak >= 16 {
                    break;
                }
            } else {
                done_streak = 0;
            }
            if dv < order {
                if best.map(|bv| dv > bv).unwrap_or(true) {
                    best = Some(dv);
                    stall = 0;
                } else {
                    stall += 1;
                    if stall >= 16 {
                        return Err(Error::DivergentSum(format!(
                            "indefinite theta f_({a},{b},{c}) does not converge coefficientwise"
                        )));
                    }
                }
            }
            for (r, s) in terms {
                let mut t = negx
                    .pow(r as i32)?
                    .mul(&negy.pow(s as i32)?)
                    .mul_q_pow(m * exp(form_exponent(a, b, c, r, s)));
                if quadrant == 1 {
                    t = t.neg();
                }
                acc = acc.add(&QSeries::from_monomial(&t).truncated(order));
            }
            diag += 1;
        }
    }
    Ok(acc)
}

/// The Appell-Lerch part `g_{a,b,c}(x, y, z₁, z₀)` of the decomposition,
/// defined for positive `a`, `c` and positive discriminant `D = b² − ac`:
///
/// ```text
/// g = Σ_{t=0}^{a−1} (−y)^t q^{c·C(t,2)} j(q^{bt} x, q^a)
///         · m(−q^{a·C(b+1,2) − c·C(a+1,2) − tD} (−y)^a/(−x)^b, q^{aD}, z₀)
///   + Σ_{t=0}^{c−1} (−x)^t q^{a·C(t,2)} j(q^{bt} y, q^c)
///         · m(−q^{c·C(b+1,2) − a·C(c+1,2) − tD} (−x)^c/(−y)^b, q^{cD}, z₁)
/// ```
#[allow(clippy::too_many_arguments)] // mirrors the notation g_{a,b,c}(x, y, z₁, z₀)
pub fn g_hm(
    a: i64,
    b: i64,
    c: i64,
    x: &Monomial,
    y: &Monomial,
    z1: &Monomial,
    z0: &Monomial,
    order: Exp,
) -> Result<QSeries> {
    if a < 1 || c < 1 {
        return Err(Error::InvalidParameter(format!(
            "g needs positive diagonal coefficients, got a = {a}, c = {c}"
        )));
    }
    let d = b * b - a * c;
    if d <= 0 {
        return Err(Error::InvalidParameter(format!(
            "g needs positive discriminant b^2 - ac, got {d}"
        )));
    }
    if x.is_zero() || y.is_zero() || z1.is_zero() || z0.is_zero() {
        return Err(Error::InvalidParameter(
            "g arguments must be nonzero monomials".into(),
        ));
    }
    compute_to(order, |ord| {
        let mut acc = QSeries::zero().truncated(ord);
        let halves = [(a, c, x, y, z0), (c, a, y, x, z1)];
        for &(u, w, xx, yy, zz) in &halves {
            let negx = xx.neg();
            let negy = yy.neg();
            for t in 0..u {
                let pref = negy.pow(t as i32)?.mul_q_pow(exp(w * binom2(t)));
                let jarg = xx.mul_q_pow(exp(b * t));
                let e0 = u * binom2(b + 1) - w * binom2(u + 1) - t * d;
                let marg = negy
                    .pow(u as i32)?
                    .mul(&negx.pow(-b as i32)?)
                    .mul_q_pow(exp(e0))
                    .neg();
                let term = j_theta(&jarg, exp(u), ord)?
                    .mul(&m_sum(&marg, exp(u * d), zz, ord)?)
                    .mul_monomial(&pref);
                acc = acc.add(&term.truncated(ord));
            }
        }
        Ok(acc)
    })
}

/// The theta quotient `θ_{n,p}(x, y)` closing the decomposition of
/// `f_{n, n+p, n}` (requires `gcd(n, p) = 1`).
pub fn theta_np(n: i64, p: i64, x: &Monomial, y: &Monomial, order: Exp) -> Result<QSeries> {
    if n < 1 || p < 1 {
        return Err(Error::InvalidParameter(format!(
            "theta family needs positive parameters, got n = {n}, p = {p}"
        )));
    }
    if n.gcd(&p) != 1 {
        return Err(Error::InvalidParameter(format!(
            "theta family needs coprime parameters, got gcd({n}, {p}) != 1"
        )));
    }
    if x.is_zero() || y.is_zero() {
        return Err(Error::InvalidParameter(
            "theta family arguments must be nonzero monomials".into(),
        ));
    }
    let m_small = exp(n * p * (2 * n + p));
    let m_mid = exp(n * p * p);
    let m_big = exp(p * p * (2 * n + p));
    let negx = x.neg();
    let negy = y.neg();
    // Offsets: with r = r* + {(n−1)/2} and s = s* + {(n−1)/2}, the shifted
    // indices ρ = r − (n−1)/2 and σ = s + (n+1)/2 are integers for every n.
    let fl = (n - 1).div_euclid(2);
    let even = i64::from(n % 2 == 0);
    compute_to(order, |ord| {
        let jbar0 = jam_bar(exp(0), m_small, ord)?;
        let mut acc = QSeries::zero().truncated(ord);
        for rs in 0..p {
            for ss in 0..p {
                let rho = rs - fl;
                let sig = ss + n - fl;
                let mono = negx
                    .pow(rho as i32)?
                    .mul(&negy.pow(sig as i32)?)
                    .mul_q_pow(exp(n * binom2(rho) + (n + p) * rho * sig + n * binom2(sig)));
                let j1_arg = x
                    .pow(n as i32)?
                    .mul(&y.pow(-n as i32)?)
                    .mul_q_pow(exp(n * p * (ss - rs)))
                    .neg();
                let j2_arg = x
                    .pow(p as i32)?
                    .mul(&y.pow(p as i32)?)
                    .mul_q_pow(exp(p * (2 * n + p) * (rs + ss + even) + p * (n + p)));
                let er = exp(p * (2 * n + p) * rs)
                    + exp(p * (2 * n + p)) * exp_frac(even, 2)
                    + exp_frac(p * (n + p), 2);
                let es = exp(p * (2 * n + p) * ss)
                    + exp(p * (2 * n + p)) * exp_frac(even, 2)
                    + exp_frac(p * (n + p), 2);
                let d1_arg = negy
                    .pow((n + p) as i32)?
                    .mul(&negx.pow(-n as i32)?)
                    .mul_q_pow(er);
                let d2_arg = negx
                    .pow((n + p) as i32)?
                    .mul(&negy.pow(-n as i32)?)
                    .mul_q_pow(es);
                let num = jm(m_big, ord)?
                    .pow(3)
                    .mul(&j_theta(&j1_arg, m_mid, ord)?)
                    .mul(&j_theta(&j2_arg, m_big, ord)?)
                    .mul_monomial(&mono);
                let mut den = QSeries::one();
                for darg in [&d1_arg, &d2_arg] {
                    let t = j_theta(darg, m_big, ord)?;
                    if t.is_zero() {
                        return Err(Error::NonGenericParameters(format!(
                            "theta denominator j({darg}, q^{m_big}) vanishes identically"
                        )));
                    }
                    den = den.mul(&t);
                }
                acc = acc.add(&num.mul(&den.invert_to(ord)?).truncated(ord));
            }
        }
        Ok(acc.mul(&jbar0.invert_to(ord)?))
    })
}

/// Both sides of the decomposition
/// `f_{n,n+p,n}(x, y) = g_{n,n+p,n}(x, y, −1, −1) + θ_{n,p}(x, y)`.
pub fn hm_decomposition(
    n: i64,
    p: i64,
    x: &Monomial,
    y: &Monomial,
    order: Exp,
) -> Result<(QSeries, QSeries)> {
    let lhs = f_indef(n, n + p, n, x, y, order)?;
    let minus_one = Monomial::from_int(-1);
    let g = g_hm(n, n + p, n, x, y, &minus_one, &minus_one, order)?;
    let theta = theta_np(n, p, x, y, order)?;
    Ok((lhs, g.add(&theta).truncated(order)))
}
