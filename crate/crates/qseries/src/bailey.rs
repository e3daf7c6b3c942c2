//! Bailey pairs and the Bailey chain.
//!
//! A Bailey pair relative to `a` (on base `q^M`) is a pair of sequences
//! `(α_n, β_n)` with
//!
//! ```text
//! β_n = Σ_{k=0}^{n} α_k / ( (q^M; q^M)_{n−k} · (a q^M; q^M)_{n+k} )
//! ```
//!
//! [`BaileyPair::verify`] checks that relation coefficientwise. The chain
//! step produces a new pair from parameters `ρ₁`, `ρ₂`, each either a finite
//! monomial or the limit `ρ → ∞`, in which case the standard rewrite
//! `(ρ)_k (X/ρ)^k → (−1)^k q^{M·C(k,2)} X^k` is applied and `(aq/ρ)_n → 1`.
//! [`limit_identity`] performs the `n → ∞` limit of the defining relation,
//! returning both sides of the resulting q-series identity, and
//! [`partial_theta_fine`] / [`partial_theta_basic`] implement two residual
//! partial-theta lemmas:
//!
//! ```text
//! Σ_{n≥0} (aq)_{2n} q^n β_n = (q)_∞^{-1}   Σ_{n,r≥0} (−a)^n q^{3n(n+1)/2+(2n+1)r} α_r
//! Σ_{n≥0}          q^n β_n = (q,aq)_∞^{-1} Σ_{n,r≥0} (−a)^n q^{n(n+1)/2+(2n+1)r}  α_r
//! ```
//!
//! (all Pochhammer symbols on the pair's base).

use std::sync::Arc;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exp::{binom2, exp, Exp};
use crate::monomial::Monomial;
use crate::products::{poch_finite, poch_infinite};
use crate::series::{compute_to, sum_until_stable, EqOutcome, QSeries};
use crate::symbol::Symbol;

/// A chain parameter: a finite monomial or the `ρ → ∞` limit.
#[derive(Clone, Debug)]
pub enum Rho {
    Finite(Monomial),
    Infinite,
}

type Seq = Arc<dyn Fn(u32, Exp) -> Result<QSeries> + Send + Sync>;

#[derive(Clone)]
pub struct BaileyPair {
    name: String,
    /// Base exponent `M`: the pair lives on `q^M`.
    base: Exp,
    /// The parameter `a`, expressed in actual q-powers (so "relative to q"
    /// on base `q^2` stores `q^2`).
    rel: Monomial,
    alpha: Seq,
    beta: Seq,
}

/// First coefficientwise failure found while checking a pair.
#[derive(Clone, Debug)]
pub struct PairFailure {
    pub index: u32,
    pub exp: Exp,
    pub lhs: Coeff,
    pub rhs: Coeff,
}

/// Outcome of [`BaileyPair::verify`].
#[derive(Clone, Debug)]
pub struct PairCheck {
    pub checked_through: u32,
    pub first_failure: Option<PairFailure>,
}

impl PairCheck {
    pub fn is_ok(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl BaileyPair {
    pub fn new(
        name: impl Into<String>,
        base: Exp,
        rel: Monomial,
        alpha: Seq,
        beta: Seq,
    ) -> BaileyPair {
        BaileyPair {
            name: name.into(),
            base,
            rel,
            alpha,
            beta,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> Exp {
        self.base
    }

    pub fn rel(&self) -> &Monomial {
        &self.rel
    }

    pub fn alpha(&self, n: u32, order: Exp) -> Result<QSeries> {
        (self.alpha)(n, order)
    }

    pub fn beta(&self, n: u32, order: Exp) -> Result<QSeries> {
        (self.beta)(n, order)
    }

    /// `q^M` as a monomial.
    fn qm(&self) -> Monomial {
        Monomial::q_pow(self.base)
    }

    /// `a·q^M` as a monomial.
    fn aq(&self) -> Monomial {
        self.rel.mul_q_pow(self.base)
    }

    /// Check the defining relation for `n = 0 ..= n_max` through `order`.
    pub fn verify(&self, n_max: u32, order: Exp) -> Result<PairCheck> {
        for n in 0..=n_max {
            let lhs = self.beta(n, order)?;
            let rhs = compute_to(order, |ord| {
                let mut acc = QSeries::zero().truncated(ord);
                for k in 0..=n {
                    let den = poch_finite(&self.qm(), self.base, n - k)?.mul(&poch_finite(
                        &self.aq(),
                        self.base,
                        n + k,
                    )?);
                    let term = self.alpha(k, ord)?.mul(&den.invert_to(ord)?);
                    acc = acc.add(&term.truncated(ord));
                }
                Ok(acc)
            })?;
            match lhs.eq_up_to(&rhs, order)? {
                EqOutcome::Equal => {}
                EqOutcome::MismatchAt { exp, lhs, rhs } => {
                    return Ok(PairCheck {
                        checked_through: n_max,
                        first_failure: Some(PairFailure {
                            index: n,
                            exp,
                            lhs,
                            rhs,
                        }),
                    })
                }
            }
        }
        Ok(PairCheck {
            checked_through: n_max,
            first_failure: None,
        })
    }

    /// Replace `q` by `q^k` throughout (indices unchanged).
    pub fn rebased(&self, k: i64) -> Result<BaileyPair> {
        if k < 1 {
            return Err(Error::InvalidParameter(format!(
                "rebase power must be a positive integer, got {k}"
            )));
        }
        let alpha = self.alpha.clone();
        let beta = self.beta.clone();
        let wrap = |seq: Seq| -> Seq {
            Arc::new(move |n, ord| {
                let inner = seq(n, ord / exp(k))?;
                inner.substitute(1, k)
            })
        };
        Ok(BaileyPair {
            name: format!("{}^({k})", self.name),
            base: self.base * exp(k),
            rel: self.rel.substitute(1, k)?,
            alpha: wrap(alpha),
            beta: wrap(beta),
        })
    }
}

/// `(−1)^n q^{M·C(n,2)} X^n`: the `ρ → ∞` limit of `(ρ)_n (X/ρ)^n`.
fn infinity_rewrite(base: Exp, x: &Monomial, n: u32) -> Result<Monomial> {
    let mut m = x.pow(n as i32)?.mul_q_pow(base * exp(binom2(n as i64)));
    if !n.is_multiple_of(2) {
        m = m.neg();
    }
    Ok(m)
}

/// Numerator weight `(ρ₁)_n (ρ₂)_n (aq/ρ₁ρ₂)^n` with `∞`-rewrites applied.
fn chain_numerator(pair: &BaileyPair, rho1: &Rho, rho2: &Rho, n: u32) -> Result<QSeries> {
    let m = pair.base;
    let aq = pair.aq();
    match (rho1, rho2) {
        (Rho::Finite(p1), Rho::Finite(p2)) => {
            let x = aq.div(p1)?.div(p2)?;
            Ok(poch_finite(p1, m, n)?
                .mul(&poch_finite(p2, m, n)?)
                .mul_monomial(&x.pow(n as i32)?))
        }
        (Rho::Finite(p1), Rho::Infinite) | (Rho::Infinite, Rho::Finite(p1)) => {
            let x = aq.div(p1)?;
            Ok(poch_finite(p1, m, n)?.mul_monomial(&infinity_rewrite(m, &x, n)?))
        }
        (Rho::Infinite, Rho::Infinite) => {
            // Two rewrites compose to q^{M·n²} a^n.
            let w = pair
                .rel
                .pow(n as i32)?
                .mul_q_pow(m * exp((n as i64) * (n as i64)));
            Ok(QSeries::from_monomial(&w))
        }
    }
}

/// Denominator `(aq/ρ₁)_n (aq/ρ₂)_n` with `(aq/ρ)_n → 1` for infinite `ρ`.
fn chain_denominator(pair: &BaileyPair, rho1: &Rho, rho2: &Rho, n: u32) -> Result<QSeries> {
    let m = pair.base;
    let aq = pair.aq();
    let mut den = QSeries::one();
    for rho in [rho1, rho2] {
        if let Rho::Finite(p) = rho {
            den = den.mul(&poch_finite(&aq.div(p)?, m, n)?);
        }
    }
    Ok(den)
}

/// `aq/ρ₁ρ₂` kept as a monomial, or `None` if any `ρ` is infinite (the
/// corresponding Pochhammer factors degenerate to 1).
fn chain_x(pair: &BaileyPair, rho1: &Rho, rho2: &Rho) -> Result<Option<Monomial>> {
    match (rho1, rho2) {
        (Rho::Finite(p1), Rho::Finite(p2)) => Ok(Some(pair.aq().div(p1)?.div(p2)?)),
        _ => Ok(None),
    }
}

/// One step along the Bailey chain.
pub fn chain_step(pair: &BaileyPair, rho1: &Rho, rho2: &Rho) -> Result<BaileyPair> {
    let p = pair.clone();
    let (r1, r2) = (rho1.clone(), rho2.clone());
    let alpha: Seq = {
        let p = p.clone();
        let (r1, r2) = (r1.clone(), r2.clone());
        Arc::new(move |n, order| {
            compute_to(order, |ord| {
                let num = chain_numerator(&p, &r1, &r2, n)?;
                let den = chain_denominator(&p, &r1, &r2, n)?;
                Ok(num.mul(&den.invert_to(ord)?).mul(&p.alpha(n, ord)?))
            })
        })
    };
    let beta: Seq = {
        let p = p.clone();
        let (r1, r2) = (r1.clone(), r2.clone());
        Arc::new(move |n, order| {
            compute_to(order, |ord| {
                let den_n = chain_denominator(&p, &r1, &r2, n)?.invert_to(ord)?;
                let x = chain_x(&p, &r1, &r2)?;
                let mut acc = QSeries::zero().truncated(ord);
                for k in 0..=n {
                    // (ρ₁)_k (ρ₂)_k (X)^k with rewrites, times (X)_{n−k}
                    // (which is 1 when some ρ is infinite).
                    let mut t = match (&r1, &r2) {
                        (Rho::Finite(p1), Rho::Finite(p2)) => {
                            let xm = x.as_ref().unwrap();
                            poch_finite(p1, p.base, k)?
                                .mul(&poch_finite(p2, p.base, k)?)
                                .mul(&poch_finite(xm, p.base, n - k)?)
                                .mul_monomial(&xm.pow(k as i32)?)
                        }
                        (Rho::Finite(p1), Rho::Infinite) | (Rho::Infinite, Rho::Finite(p1)) => {
                            let xr = p.aq().div(p1)?;
                            poch_finite(p1, p.base, k)?
                                .mul_monomial(&infinity_rewrite(p.base, &xr, k)?)
                        }
                        (Rho::Infinite, Rho::Infinite) => QSeries::from_monomial(
                            &p.rel
                                .pow(k as i32)?
                                .mul_q_pow(p.base * exp((k as i64) * (k as i64))),
                        ),
                    };
                    t = t
                        .mul(&poch_finite(&p.qm(), p.base, n - k)?.invert_to(ord)?)
                        .mul(&p.beta(k, ord)?);
                    acc = acc.add(&t.truncated(ord));
                }
                Ok(acc.mul(&den_n))
            })
        })
    };
    Ok(BaileyPair {
        name: format!("{}'", pair.name),
        base: pair.base,
        rel: pair.rel.clone(),
        alpha,
        beta,
    })
}

/// The `n → ∞` limit of the pair relation under `(ρ₁, ρ₂)`:
///
/// ```text
/// Σ_n (ρ₁)_n (ρ₂)_n (aq/ρ₁ρ₂)^n β_n
///   = (aq/ρ₁)_∞ (aq/ρ₂)_∞ / ( (aq)_∞ (aq/ρ₁ρ₂)_∞ )
///     · Σ_n (ρ₁)_n (ρ₂)_n (aq/ρ₁ρ₂)^n / ( (aq/ρ₁)_n (aq/ρ₂)_n ) α_n
/// ```
///
/// with `∞`-rewrites on every `ρ`-factor. Returns `(lhs, rhs)`.
pub fn limit_identity(
    pair: &BaileyPair,
    rho1: &Rho,
    rho2: &Rho,
    order: Exp,
) -> Result<(QSeries, QSeries)> {
    let lhs = compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            Ok(chain_numerator(pair, rho1, rho2, n)?.mul(&pair.beta(n, ord)?))
        })
    })?;
    let rhs = compute_to(order, |ord| {
        let m = pair.base;
        let aq = pair.aq();
        let mut pref = poch_infinite(&aq, m, ord)?.invert_to(ord)?;
        for rho in [rho1, rho2] {
            if let Rho::Finite(p) = rho {
                pref = pref.mul(&poch_infinite(&aq.div(p)?, m, ord)?);
            }
        }
        if let Some(x) = chain_x(pair, rho1, rho2)? {
            let px = poch_infinite(&x, m, ord)?;
            if px.is_zero() {
                return Err(Error::NonGenericParameters(
                    "(aq/rho1 rho2)_inf vanishes".into(),
                ));
            }
            pref = pref.mul(&px.invert_to(ord)?);
        }
        let sum = sum_until_stable(ord, |n| {
            let num = chain_numerator(pair, rho1, rho2, n)?;
            let den = chain_denominator(pair, rho1, rho2, n)?;
            Ok(num.mul(&den.invert_to(ord)?).mul(&pair.alpha(n, ord)?))
        })?;
        Ok(pref.mul(&sum))
    })?;
    Ok((lhs, rhs))
}

/// Shared core of the two partial-theta lemmas: `triple = 3` for the `fine`
/// variant, `1` for the basic one.
fn partial_theta(
    pair: &BaileyPair,
    triple: i64,
    with_aq_poch: bool,
    order: Exp,
) -> Result<(QSeries, QSeries)> {
    let m = pair.base;
    let aq = pair.aq();
    let lhs = compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let mut t = pair
                .beta(n, ord)?
                .mul_monomial(&Monomial::q_pow(m * exp(n as i64)));
            if with_aq_poch {
                t = t.mul(&poch_finite(&aq, m, 2 * n)?);
            }
            Ok(t)
        })
    })?;
    let rhs = compute_to(order, |ord| {
        let mut pref = poch_infinite(&pair.qm(), m, ord)?.invert_to(ord)?;
        if !with_aq_poch {
            pref = pref.mul(&poch_infinite(&aq, m, ord)?.invert_to(ord)?);
        }
        let sum = sum_until_stable(ord, |r| {
            // Inner theta-like sum over n for a fixed α_r; the exponent is
            // strictly increasing in n, so stop at the first one past `ord`.
            let alpha_r = pair.alpha(r, ord)?;
            let mut inner = QSeries::zero().truncated(ord);
            let mut n: i64 = 0;
            loop {
                let e = m * exp(triple * binom2(n + 1) + (2 * n + 1) * (r as i64));
                if e >= ord {
                    break;
                }
                let w = pair.rel.neg().pow(n as i32)?.mul_q_pow(e);
                inner = inner.add(&QSeries::from_monomial(&w).truncated(ord));
                n += 1;
            }
            Ok(inner.mul(&alpha_r))
        })?;
        Ok(pref.mul(&sum))
    })?;
    Ok((lhs, rhs))
}

/// `Σ (aq)_{2n} q^n β_n = (q)_∞^{-1} Σ_{n,r≥0} (−a)^n q^{3n(n+1)/2+(2n+1)r} α_r`.
pub fn partial_theta_fine(pair: &BaileyPair, order: Exp) -> Result<(QSeries, QSeries)> {
    partial_theta(pair, 3, true, order)
}

/// `Σ q^n β_n = (q, aq)_∞^{-1} Σ_{n,r≥0} (−a)^n q^{n(n+1)/2+(2n+1)r} α_r`.
pub fn partial_theta_basic(pair: &BaileyPair, order: Exp) -> Result<(QSeries, QSeries)> {
    partial_theta(pair, 1, false, order)
}

/// Finite geometric factor `(1 − q^{k}) / (1 − q) = 1 + q + … + q^{k−1}`.
fn geometric_poly(k: i64) -> QSeries {
    let mut acc = QSeries::zero();
    for i in 0..k {
        acc = acc.add(&QSeries::from_monomial(&Monomial::q_pow(exp(i))));
    }
    acc
}

/// Built-in Bailey pairs by name. All are stated on base `q`; use
/// [`BaileyPair::rebased`] for `q → q^k` versions.
///
/// * `"fifth_order"` (relative to `q`):
///   `α_n = (1−q^{2n+1})/(1−q) · q^{n(3n+1)/2} Σ_{|j|≤n} (−1)^j q^{−j²}`,
///   `β_n = 1/(−q)_n`;
/// * `"early_conditions"` (relative to `q`):
///   `α_n = (1−q^{2n+1})/(1−q) · q^{n²} Σ_{|2j|≤n} (−1)^j q^{−j(3j+1)}`,
///   `β_n = q^{C(n,2)} / ((q)_n (q;q²)_n)`;
/// * `"unit_z"` (relative to `1`, with a formal symbol `z`):
///   `α_0 = 1`, `α_n = (−1)^n (z^n q^{C(n,2)} + z^{−n} q^{C(n+1,2)})`,
///   `β_n = (z)_n (q/z)_n / (q)_{2n}`;
/// * `"slater_L6"` (relative to `1`):
///   `α_{2r} = (−1)^r q^{3r²−r} (1+q^{2r})` for `r > 0`, `α_0 = 1`, odd
///   indices vanish; `β_n = 1 / ((q;q²)_n (q)_n)`.
pub fn builtin_pair(name: &str) -> Result<BaileyPair> {
    match name {
        "fifth_order" => Ok(BaileyPair::new(
            "fifth_order",
            exp(1),
            Monomial::q(),
            Arc::new(|n, _ord| {
                let n = n as i64;
                let mut theta = QSeries::zero();
                for j in -n..=n {
                    let mut t = Monomial::q_pow(exp(-j * j));
                    if j % 2 != 0 {
                        t = t.neg();
                    }
                    theta = theta.add(&QSeries::from_monomial(&t));
                }
                Ok(geometric_poly(2 * n + 1)
                    .mul(&theta)
                    .mul_monomial(&Monomial::q_pow(exp(n * (3 * n + 1) / 2))))
            }),
            Arc::new(|n, ord| poch_finite(&Monomial::q().neg(), exp(1), n)?.invert_to(ord)),
        )),
        "early_conditions" => Ok(BaileyPair::new(
            "early_conditions",
            exp(1),
            Monomial::q(),
            Arc::new(|n, _ord| {
                let n = n as i64;
                let mut theta = QSeries::zero();
                let mut j = -(n / 2);
                while 2 * j <= n {
                    let mut t = Monomial::q_pow(exp(-j * (3 * j + 1)));
                    if j % 2 != 0 {
                        t = t.neg();
                    }
                    theta = theta.add(&QSeries::from_monomial(&t));
                    j += 1;
                }
                Ok(geometric_poly(2 * n + 1)
                    .mul(&theta)
                    .mul_monomial(&Monomial::q_pow(exp(n * n))))
            }),
            Arc::new(|n, ord| {
                let den = poch_finite(&Monomial::q(), exp(1), n)?
                    .truncated(ord)
                    .mul(&poch_finite(&Monomial::q(), exp(2), n)?.truncated(ord));
                Ok(den
                    .invert_to(ord)?
                    .mul_monomial(&Monomial::q_pow(exp(binom2(n as i64)))))
            }),
        )),
        "unit_z" => {
            let z = Monomial::sym(Symbol::new("z"));
            let za = z.clone();
            let zb = z.clone();
            Ok(BaileyPair::new(
                "unit_z",
                exp(1),
                Monomial::one(),
                Arc::new(move |n, _ord| {
                    if n == 0 {
                        return Ok(QSeries::one());
                    }
                    let n = n as i64;
                    let up = za.pow(n as i32)?.mul_q_pow(exp(binom2(n)));
                    let down = za.pow(-n as i32)?.mul_q_pow(exp(binom2(n + 1)));
                    let mut s = QSeries::from_monomial(&up).add(&QSeries::from_monomial(&down));
                    if n % 2 != 0 {
                        s = s.neg();
                    }
                    Ok(s)
                }),
                Arc::new(move |n, ord| {
                    let num = poch_finite(&zb, exp(1), n)?
                        .truncated(ord)
                        .mul(&poch_finite(&Monomial::q().div(&zb)?, exp(1), n)?.truncated(ord));
                    Ok(num.mul(&poch_finite(&Monomial::q(), exp(1), 2 * n)?.invert_to(ord)?))
                }),
            ))
        }
        "slater_L6" => Ok(BaileyPair::new(
            "slater_L6",
            exp(1),
            Monomial::one(),
            Arc::new(|n, _ord| {
                if n == 0 {
                    return Ok(QSeries::one());
                }
                if n % 2 != 0 {
                    return Ok(QSeries::zero());
                }
                let r = (n / 2) as i64;
                let mut t = QSeries::from_monomial(&Monomial::q_pow(exp(3 * r * r - r))).add(
                    &QSeries::from_monomial(&Monomial::q_pow(exp(3 * r * r + r))),
                );
                if r % 2 != 0 {
                    t = t.neg();
                }
                Ok(t)
            }),
            Arc::new(|n, ord| {
                let den = poch_finite(&Monomial::q(), exp(2), n)?
                    .truncated(ord)
                    .mul(&poch_finite(&Monomial::q(), exp(1), n)?.truncated(ord));
                den.invert_to(ord)
            }),
        )),
        other => Err(Error::UnknownPair(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{assert_eq_series, poch_finite};

    fn check(pair: &BaileyPair, n_max: u32, order: Exp) {
        let res = pair.verify(n_max, order).unwrap();
        if let Some(f) = res.first_failure {
            panic!(
                "pair {} fails at n = {}: q^{} has {} vs {}",
                pair.name(),
                f.index,
                f.exp,
                f.lhs,
                f.rhs
            );
        }
    }

    #[test]
    fn builtin_pairs_satisfy_the_relation() {
        for name in ["fifth_order", "early_conditions", "unit_z", "slater_L6"] {
            let pair = builtin_pair(name).unwrap();
            check(&pair, 8, exp(30));
        }
        assert!(matches!(builtin_pair("nope"), Err(Error::UnknownPair(_))));
    }

    #[test]
    fn rebase_preserves_the_relation() {
        let pair = builtin_pair("early_conditions")
            .unwrap()
            .rebased(2)
            .unwrap();
        check(&pair, 6, exp(30));
        assert_eq!(pair.base(), exp(2));
    }

    #[test]
    fn chain_step_yields_new_pairs() {
        let fifth = builtin_pair("fifth_order").unwrap();
        let stepped = chain_step(&fifth, &Rho::Infinite, &Rho::Infinite).unwrap();
        check(&stepped, 5, exp(25));

        let mixed =
            chain_step(&fifth, &Rho::Finite(Monomial::from_int(-1)), &Rho::Infinite).unwrap();
        check(&mixed, 5, exp(25));

        let unit = builtin_pair("unit_z").unwrap();
        let both = chain_step(
            &unit,
            &Rho::Finite(Monomial::from_int(-1)),
            &Rho::Finite(Monomial::from_int(-1)),
        )
        .unwrap();
        check(&both, 4, exp(18));
    }

    #[test]
    fn fifth_order_limit_gives_the_mock_theta_series() {
        let fifth = builtin_pair("fifth_order").unwrap();
        let order = exp(40);
        let (lhs, rhs) = limit_identity(&fifth, &Rho::Infinite, &Rho::Infinite, order).unwrap();
        assert_eq_series(&lhs, &rhs, order);
        // The left side is the fifth-order sum Σ q^{n²+n}/(−q)_n.
        let direct = compute_to(order, |ord| {
            sum_until_stable(ord, |n| {
                let n64 = n as i64;
                Ok(poch_finite(&Monomial::q().neg(), exp(1), n)?
                    .invert_to(ord)?
                    .mul_monomial(&Monomial::q_pow(exp(n64 * n64 + n64))))
            })
        })
        .unwrap();
        assert_eq_series(&lhs, &direct, order);
    }

    #[test]
    fn partial_theta_lemmas_hold_for_unit_pairs() {
        let order = exp(30);
        let unit = builtin_pair("unit_z").unwrap();
        let (lhs, rhs) = partial_theta_fine(&unit, order).unwrap();
        assert_eq_series(&lhs, &rhs, order);
        let (lhs2, rhs2) = partial_theta_basic(&unit, order).unwrap();
        assert_eq_series(&lhs2, &rhs2, order);
        let slater = builtin_pair("slater_L6").unwrap();
        let (lhs3, rhs3) = partial_theta_basic(&slater, order).unwrap();
        assert_eq_series(&lhs3, &rhs3, order);
    }

    #[test]
    fn finite_rho_limit_identity() {
        // Both ρ finite on the fifth-order pair: aq/ρ₁ρ₂ must carry a
        // positive q-power for the sums to converge.
        let fifth = builtin_pair("fifth_order").unwrap();
        let order = exp(25);
        let (lhs, rhs) = limit_identity(
            &fifth,
            &Rho::Finite(Monomial::from_int(-1)),
            &Rho::Finite(Monomial::q().neg()),
            order,
        )
        .unwrap();
        assert_eq_series(&lhs, &rhs, order);
    }
}
