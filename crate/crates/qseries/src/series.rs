//! Truncated q-series with exact coefficients.
//!
//! A [`QSeries`] is a finite map from exponents to [`Coeff`]s together with a
//! truncation marker. Exponents are rationals `k/D` for a per-series
//! denominator `D ≥ 1` (so eta-like objects with exponents in `(1/2)ℤ` are
//! first-class), and every operation tracks how far the result is reliable:
//!
//! * `Trunc::Exact` — the series is a finite sum, known completely;
//! * `Trunc::UpTo(t)` — every coefficient of `q^e` with `e < t` is known.
//!
//! Multiplication by a series of negative valuation *loses* truncation order,
//! and the tracking makes that loss visible instead of silently wrong. The
//! [`compute_to`] helper re-runs a builder with a widened working order until
//! the requested order is actually covered.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

pub use crate::exp::{exp, exp_frac, Exp};

use crate::coeff::{pow_pows, Coeff, Rat, SymPows};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

fn lead_inv_of(pows: &SymPows, c: &Rat) -> Coeff {
    Coeff::from_term(pow_pows(pows, -1), c.recip())
}

/// Truncation marker.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Trunc {
    /// The series is exact: all nonzero coefficients are stored.
    Exact,
    /// Coefficients of `q^e` are known for all `e < t`.
    UpTo(Exp),
}

impl Trunc {
    pub fn min(self, other: Trunc) -> Trunc {
        match (self, other) {
            (Trunc::Exact, o) => o,
            (s, Trunc::Exact) => s,
            (Trunc::UpTo(a), Trunc::UpTo(b)) => Trunc::UpTo(a.min(b)),
        }
    }

    pub fn covers(self, order: Exp) -> bool {
        match self {
            Trunc::Exact => true,
            Trunc::UpTo(t) => t >= order,
        }
    }
}

/// Outcome of comparing two series through a given order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EqOutcome {
    Equal,
    MismatchAt { exp: Exp, lhs: Coeff, rhs: Coeff },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    /// Exponent denominator: stored keys `k` mean exponent `k/denom`.
    denom: i64,
    trunc: Trunc,
    /// Nonzero coefficients only; all keys satisfy `k/denom < trunc`.
    terms: BTreeMap<i64, Coeff>,
}

/// Largest grid key `k` with `k/denom < bound`.
fn last_key_below(bound: Exp, denom: i64) -> i64 {
    let scaled = bound * exp(denom);
    if scaled.is_integer() {
        scaled.to_integer() - 1
    } else {
        scaled.floor().to_integer()
    }
}

impl QSeries {
    pub fn zero() -> QSeries {
        QSeries {
            denom: 1,
            trunc: Trunc::Exact,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> QSeries {
        QSeries::from_monomial(&Monomial::one())
    }

    pub fn from_monomial(m: &Monomial) -> QSeries {
        let mut s = QSeries::zero();
        if !m.is_zero() {
            s.denom = *m.q_exp().denom();
            s.terms.insert(*m.q_exp().numer(), m.coeff_part());
        }
        s
    }

    /// Build from explicit `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: &[(Exp, Coeff)], trunc: Trunc) -> QSeries {
        let mut s = QSeries::zero();
        s.trunc = trunc;
        for (e, c) in terms {
            s.add_term_mut(*e, c.clone());
        }
        s.normalized()
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact valuation: the lowest exponent carrying a nonzero coefficient,
    /// or `None` if no term is known (zero, or zero through the truncation).
    pub fn val(&self) -> Option<Exp> {
        self.terms.keys().next().map(|&k| exp_frac(k, self.denom))
    }

    /// Lower bound for the valuation usable in truncation bookkeeping:
    /// the actual valuation, the truncation order for a series with no known
    /// terms, or `None` meaning +∞ (exactly zero).
    fn val_bound(&self) -> Option<Exp> {
        match self.val() {
            Some(v) => Some(v),
            None => match self.trunc {
                Trunc::Exact => None,
                Trunc::UpTo(t) => Some(t),
            },
        }
    }

    pub fn terms_iter(&self) -> impl Iterator<Item = (Exp, &Coeff)> {
        let d = self.denom;
        self.terms.iter().map(move |(&k, c)| (exp_frac(k, d), c))
    }

    /// The coefficient of `q^e`. Errors if `e` is not below the truncation.
    pub fn coeff(&self, e: Exp) -> Result<Coeff> {
        if !self.trunc.covers_strict(e) {
            let t = match self.trunc {
                Trunc::UpTo(t) => t,
                Trunc::Exact => unreachable!(),
            };
            return Err(Error::OrderBeyondTruncation {
                requested: e,
                truncated_at: t,
            });
        }
        let scaled = e * exp(self.denom);
        if !scaled.is_integer() {
            return Ok(Coeff::zero());
        }
        Ok(self
            .terms
            .get(&scaled.to_integer())
            .cloned()
            .unwrap_or_else(Coeff::zero))
    }

    fn add_term_mut(&mut self, e: Exp, c: Coeff) {
        if c.is_zero() {
            return;
        }
        if let Trunc::UpTo(t) = self.trunc {
            if e >= t {
                return;
            }
        }
        let d = e.denom().lcm(&self.denom);
        if d != self.denom {
            self.lift_denom(d);
        }
        let key = *(e * exp(self.denom)).numer();
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn lift_denom(&mut self, d: i64) {
        debug_assert!(d % self.denom == 0);
        let f = d / self.denom;
        if f == 1 {
            return;
        }
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(k, c)| (k * f, c))
            .collect();
        self.denom = d;
    }

    /// Reduce the exponent denominator to the smallest compatible grid.
    fn normalized(mut self) -> QSeries {
        if self.denom == 1 {
            return self;
        }
        let mut g = self.denom;
        for &k in self.terms.keys() {
            g = g.gcd(&k);
            if g == 1 {
                return self;
            }
        }
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(k, c)| (k / g, c))
            .collect();
        self.denom /= g;
        self
    }

    fn unify_denoms(mut a: QSeries, mut b: QSeries) -> (QSeries, QSeries) {
        let d = a.denom.lcm(&b.denom);
        a.lift_denom(d);
        b.lift_denom(d);
        (a, b)
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            denom: self.denom,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(&k, c)| (k, c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let (mut a, b) = QSeries::unify_denoms(self.clone(), other.clone());
        a.trunc = a.trunc.min(b.trunc);
        if let Trunc::UpTo(t) = a.trunc {
            let cut = last_key_below(t, a.denom);
            a.terms.retain(|&k, _| k <= cut);
        }
        let bd = b.denom;
        for (k, c) in b.terms {
            a.add_term_mut(exp_frac(k, bd), c);
        }
        a.normalized()
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        if c.is_zero() {
            return QSeries {
                denom: 1,
                trunc: self.trunc,
                terms: BTreeMap::new(),
            };
        }
        QSeries {
            denom: self.denom,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(&k, v)| (k, v.scale(c))).collect(),
        }
    }

    /// Multiply by a monomial: an exact operation that shifts the truncation
    /// along with the exponents.
    pub fn mul_monomial(&self, m: &Monomial) -> QSeries {
        if m.is_zero() {
            return QSeries::zero();
        }
        let mut s = self.clone();
        let d = s.denom.lcm(m.q_exp().denom());
        s.lift_denom(d);
        let shift = *(m.q_exp() * exp(d)).numer();
        let cpart = m.coeff_part();
        s.terms = s
            .terms
            .into_iter()
            .map(|(k, c)| (k + shift, c.mul(&cpart)))
            .collect();
        if let Trunc::UpTo(t) = s.trunc {
            s.trunc = Trunc::UpTo(t + m.q_exp());
        }
        s.normalized()
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let (a, b) = QSeries::unify_denoms(self.clone(), other.clone());
        let d = a.denom;
        // Result truncation: q^T1 errors in `a` enter scaled by val(b), and
        // vice versa. A side that is exactly zero silences the other side's
        // truncation entirely.
        let mut trunc = Trunc::Exact;
        if let (Trunc::UpTo(t), Some(v)) = (a.trunc, b.val_bound()) {
            trunc = trunc.min(Trunc::UpTo(t + v));
        }
        if let (Trunc::UpTo(t), Some(v)) = (b.trunc, a.val_bound()) {
            trunc = trunc.min(Trunc::UpTo(t + v));
        }
        let cut = match trunc {
            Trunc::Exact => None,
            Trunc::UpTo(t) => Some(last_key_below(t, d)),
        };
        let (outer, inner) = if a.terms.len() <= b.terms.len() {
            (&a, &b)
        } else {
            (&b, &a)
        };
        let mut terms: BTreeMap<i64, Coeff> = BTreeMap::new();
        for (&ka, ca) in &outer.terms {
            for (&kb, cb) in &inner.terms {
                let k = ka + kb;
                if let Some(cut) = cut {
                    if k > cut {
                        // Keys ascend, so every later kb overshoots too.
                        break;
                    }
                }
                let prod = ca.mul(cb);
                if prod.is_zero() {
                    continue;
                }
                use std::collections::btree_map::Entry;
                match terms.entry(k) {
                    Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    Entry::Occupied(mut o) => {
                        o.get_mut().add_assign(&prod);
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
        }
        (QSeries {
            denom: d,
            trunc,
            terms,
        })
        .normalized()
    }

    pub fn pow(&self, n: u32) -> QSeries {
        let mut acc = QSeries::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse as a Laurent series, computed through `want`.
    ///
    /// Requires the lowest known coefficient to be a single invertible
    /// monomial in the symbols. The result's truncation accounts for the
    /// input's own truncation: inverting `s = c·q^v(1 + r)` known below `T`
    /// yields a series known below `min(want, T − 2v)`.
    pub fn invert_to(&self, want: Exp) -> Result<QSeries> {
        let (&k0, lead) = match self.terms.iter().next() {
            Some(kv) => kv,
            None => {
                return Err(Error::NotInvertible(match self.trunc {
                    Trunc::Exact => "the zero series".to_string(),
                    Trunc::UpTo(t) => {
                        format!("a series with no nonzero coefficient below q^{t}")
                    }
                }))
            }
        };
        let (lead_pows, lead_rat) = match lead.as_single_term() {
            Some(t) => t,
            None => {
                return Err(Error::NotInvertible(format!(
                    "leading coefficient ({lead}) is not a single monomial"
                )))
            }
        };
        let d = self.denom;
        let v = exp_frac(k0, d);
        if self.terms.len() == 1 && self.trunc == Trunc::Exact {
            // Inverting a monomial is exact.
            let mut terms = BTreeMap::new();
            terms.insert(-k0, lead_inv_of(lead_pows, lead_rat));
            return Ok(QSeries {
                denom: d,
                trunc: Trunc::Exact,
                terms,
            }
            .normalized());
        }
        let res_trunc = match self.trunc {
            Trunc::Exact => want,
            Trunc::UpTo(t) => want.min(t - v - v),
        };
        let lead_inv = lead_inv_of(lead_pows, lead_rat);
        // Long division on the grid: result exponents start at −v.
        let hi = last_key_below(res_trunc, d) + k0; // highest offset index, scaled
        if hi < 0 {
            return Ok(QSeries {
                denom: d,
                trunc: Trunc::UpTo(res_trunc),
                terms: BTreeMap::new(),
            }
            .normalized());
        }
        let offsets: Vec<(i64, Coeff)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(&k, c)| (k - k0, c.clone()))
            .collect();
        let mut out: Vec<Option<Coeff>> = vec![None; hi as usize + 1];
        out[0] = Some(lead_inv.clone());
        for t in 1..out.len() {
            let mut acc = Coeff::zero();
            for (off, c) in &offsets {
                if *off > t as i64 {
                    break;
                }
                if let Some(prev) = &out[t - *off as usize] {
                    acc.add_assign(&c.mul(prev));
                }
            }
            if !acc.is_zero() {
                out[t] = Some(acc.neg().mul(&lead_inv));
            }
        }
        let mut terms = BTreeMap::new();
        for (t, c) in out.into_iter().enumerate() {
            if let Some(c) = c {
                if !c.is_zero() {
                    terms.insert(t as i64 - k0, c);
                }
            }
        }
        Ok(QSeries {
            denom: d,
            trunc: Trunc::UpTo(res_trunc),
            terms,
        }
        .normalized())
    }

    /// Apply `q ↦ sign·q^k` with `sign ∈ {+1,−1}` and `k ≥ 1`. The sign twist
    /// requires integer exponents throughout.
    pub fn substitute(&self, sign: i64, k: i64) -> Result<QSeries> {
        if !(sign == 1 || sign == -1) {
            return Err(Error::InvalidParameter(format!(
                "substitute sign must be +1 or -1, got {sign}"
            )));
        }
        if k < 1 {
            return Err(Error::InvalidParameter(format!(
                "substitute power must be a positive integer, got {k}"
            )));
        }
        if sign == -1 && self.denom != 1 {
            return Err(Error::FractionalSignSubstitution { denom: self.denom });
        }
        let terms = self
            .terms
            .iter()
            .map(|(&key, c)| {
                let c = if sign == -1 && key % 2 != 0 {
                    c.neg()
                } else {
                    c.clone()
                };
                (key * k, c)
            })
            .collect();
        let trunc = match self.trunc {
            Trunc::Exact => Trunc::Exact,
            Trunc::UpTo(t) => Trunc::UpTo(t * exp(k)),
        };
        Ok(QSeries {
            denom: self.denom,
            trunc,
            terms,
        }
        .normalized())
    }

    /// Forget everything at or above `n` (and record the tighter truncation).
    pub fn truncated(&self, n: Exp) -> QSeries {
        let mut s = self.clone();
        s.trunc = s.trunc.min(Trunc::UpTo(n));
        if let Trunc::UpTo(t) = s.trunc {
            let cut = last_key_below(t, s.denom);
            s.terms.retain(|&k, _| k <= cut);
        }
        s.normalized()
    }

    /// Coefficientwise comparison for all exponents `< n`.
    pub fn eq_up_to(&self, other: &QSeries, n: Exp) -> Result<EqOutcome> {
        for s in [self, other] {
            if !s.trunc.covers(n) {
                let t = match s.trunc {
                    Trunc::UpTo(t) => t,
                    Trunc::Exact => unreachable!(),
                };
                return Err(Error::OrderBeyondTruncation {
                    requested: n,
                    truncated_at: t,
                });
            }
        }
        let (a, b) = QSeries::unify_denoms(self.clone(), other.clone());
        let cut = last_key_below(n, a.denom);
        let mut keys: Vec<i64> = a
            .terms
            .keys()
            .chain(b.terms.keys())
            .copied()
            .filter(|&k| k <= cut)
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let ca = a.terms.get(&k).cloned().unwrap_or_else(Coeff::zero);
            let cb = b.terms.get(&k).cloned().unwrap_or_else(Coeff::zero);
            if ca != cb {
                return Ok(EqOutcome::MismatchAt {
                    exp: exp_frac(k, a.denom),
                    lhs: ca,
                    rhs: cb,
                });
            }
        }
        Ok(EqOutcome::Equal)
    }
}

impl Trunc {
    /// Does the truncation cover the single exponent `e` (strictly below)?
    fn covers_strict(self, e: Exp) -> bool {
        match self {
            Trunc::Exact => true,
            Trunc::UpTo(t) => e < t,
        }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (e, c) in self.terms_iter() {
            let (body, neg) = match c.as_single_term() {
                Some(_) => {
                    let s = c.to_string();
                    match s.strip_prefix('-') {
                        Some(rest) => (rest.to_string(), true),
                        None => (s, false),
                    }
                }
                None => (format!("({c})"), false),
            };
            if wrote {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            wrote = true;
            if e.is_zero() {
                f.write_str(&body)?;
            } else {
                let q = if e.is_one() {
                    "q".to_string()
                } else if e.is_integer() {
                    format!("q^{}", e.numer())
                } else {
                    format!("q^({}/{})", e.numer(), e.denom())
                };
                if body == "1" {
                    f.write_str(&q)?;
                } else {
                    write!(f, "{body}*{q}")?;
                }
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        if let Trunc::UpTo(t) = self.trunc {
            if t.is_integer() {
                write!(f, " + O(q^{})", t.numer())?;
            } else {
                write!(f, " + O(q^({}/{}))", t.numer(), t.denom())?;
            }
        }
        Ok(())
    }
}

/// Run `build` with a working order at least `order`, widening and retrying
/// until the result's truncation actually covers `order`, then truncate to
/// exactly `order`. Negative-valuation factors inside `build` eat truncation
/// order; this loop pays the deficit.
pub fn compute_to(order: Exp, mut build: impl FnMut(Exp) -> Result<QSeries>) -> Result<QSeries> {
    let mut target = order;
    for _ in 0..24 {
        let s = build(target)?;
        match s.trunc() {
            Trunc::Exact => return Ok(s),
            Trunc::UpTo(t) if t >= order => return Ok(s.truncated(order)),
            Trunc::UpTo(t) => {
                let deficit = order - t;
                target = target + deficit + exp(1);
            }
        }
    }
    Err(Error::DivergentSum(
        "requested order not reachable by widening the working window".into(),
    ))
}

/// Sum `term(n)` for `n = 0, 1, 2, …` until 8 consecutive terms vanish below
/// `order`. Suitable for unilateral q-hypergeometric sums whose term
/// valuation eventually increases without bound; a generous iteration cap
/// turns a non-stabilizing sum into [`Error::DivergentSum`].
pub fn sum_until_stable(
    order: Exp,
    mut term: impl FnMut(u32) -> Result<QSeries>,
) -> Result<QSeries> {
    let mut acc = QSeries::zero().truncated(order);
    let mut clear = 0u32;
    let mut n = 0u32;
    let cap = 512 + 16 * order.ceil().to_integer().max(0) as u32;
    loop {
        let t = term(n)?.truncated(order);
        if t.is_zero() {
            clear += 1;
            if clear >= 8 {
                break;
            }
        } else {
            clear = 0;
            acc = acc.add(&t);
        }
        n += 1;
        if n > cap {
            return Err(Error::DivergentSum(
                "series of terms did not stabilize below the working order".into(),
            ));
        }
    }
    Ok(acc)
}
