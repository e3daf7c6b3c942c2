//! Named classical q-series: mock theta functions, multisums, and
//! transformation sides, each evaluated as an exact truncated series.
//!
//! Every entry is defined by its classical *sum* representation; closed
//! forms and product sides live in the verifier's identity registry, so an
//! identity check never compares a definition against itself. Entries carry
//! a non-empty `reference` string anchoring the series in the literature.

use crate::error::{Error, Result};
use crate::exp::{binom2, exp, Exp};
use crate::monomial::Monomial;
use crate::products::{poch_finite, poch_infinite};
use crate::series::{compute_to, sum_until_stable, QSeries};

/// Argument accepted by a catalog evaluator: an integer parameter, a
/// monomial (possibly carrying formal symbols), or an `∞` placeholder used
/// by the transformation entries for limiting parameter choices.
#[derive(Clone, Debug)]
pub enum CatArg {
    Int(i64),
    Mono(Monomial),
    Inf,
}

/// A registered named series.
pub struct CatalogEntry {
    pub name: &'static str,
    /// Human-readable parameter list, e.g. `"(k)"` or `"(x)"`.
    pub params: &'static str,
    /// Literature anchor; never empty.
    pub reference: &'static str,
    eval: fn(&[CatArg], Exp) -> Result<QSeries>,
}

impl CatalogEntry {
    pub fn eval(&self, args: &[CatArg], order: Exp) -> Result<QSeries> {
        (self.eval)(args, order)
    }
}

fn arity(name: &'static str, args: &[CatArg], expected: usize) -> Result<()> {
    if args.len() != expected {
        return Err(Error::BadArity {
            name: name.to_string(),
            expected: format!("{expected} argument(s)"),
            got: args.len(),
        });
    }
    Ok(())
}

fn want_int(name: &'static str, args: &[CatArg], i: usize) -> Result<i64> {
    match &args[i] {
        CatArg::Int(k) => Ok(*k),
        other => Err(Error::InvalidParameter(format!(
            "{name}: argument {} must be an integer, got {other:?}",
            i + 1
        ))),
    }
}

fn want_mono(name: &'static str, args: &[CatArg], i: usize) -> Result<Monomial> {
    match &args[i] {
        CatArg::Mono(m) => Ok(m.clone()),
        CatArg::Int(k) => Ok(Monomial::from_int(*k)),
        CatArg::Inf => Err(Error::InvalidParameter(format!(
            "{name}: argument {} must be finite",
            i + 1
        ))),
    }
}

fn want_mono_or_inf(args: &[CatArg], i: usize) -> Result<Option<Monomial>> {
    match &args[i] {
        CatArg::Mono(m) => Ok(Some(m.clone())),
        CatArg::Int(k) => Ok(Some(Monomial::from_int(*k))),
        CatArg::Inf => Ok(None),
    }
}

fn q() -> Monomial {
    Monomial::q()
}

fn qp(e: i64) -> Monomial {
    Monomial::q_pow(exp(e))
}

fn pf(a: &Monomial, m: i64, n: u32) -> Result<QSeries> {
    poch_finite(a, exp(m), n)
}

fn pinf(a: &Monomial, m: i64, ord: Exp) -> Result<QSeries> {
    poch_infinite(a, exp(m), ord)
}

fn mono(m: Monomial) -> QSeries {
    QSeries::from_monomial(&m)
}

/// `(ρ)_cnt · ρ^{−cnt}` on base `q^m`, with the standard `ρ → ∞` rewrite
/// `(−1)^cnt q^{m·C(cnt,2)}` when the parameter is infinite.
fn poch_over_pow(x: &Option<Monomial>, m: i64, cnt: u32) -> Result<QSeries> {
    match x {
        Some(p) => Ok(pf(p, m, cnt)?.mul_monomial(&p.pow(-(cnt as i32))?)),
        None => {
            let mut w = Monomial::q_pow(exp(m) * exp(binom2(cnt as i64)));
            if !cnt.is_multiple_of(2) {
                w = w.neg();
            }
            Ok(mono(w))
        }
    }
}

/// `(x)_cnt` on base `q^m`, degenerating to 1 when the underlying parameter
/// was infinite (so `x → 0`).
fn poch_or_one(x: &Option<Monomial>, m: i64, cnt: u32) -> Result<QSeries> {
    match x {
        Some(p) => pf(p, m, cnt),
        None => Ok(QSeries::one()),
    }
}

/// `(x; q^m)_∞`, degenerating to 1 for an infinite parameter.
fn pinf_or_one(x: &Option<Monomial>, m: i64, ord: Exp) -> Result<QSeries> {
    match x {
        Some(p) => pinf(p, m, ord),
        None => Ok(QSeries::one()),
    }
}

/// `x/y` for `y` possibly infinite (then the quotient is "0" i.e. absent).
fn div_opt(x: &Monomial, y: &Option<Monomial>) -> Result<Option<Monomial>> {
    match y {
        Some(p) => Ok(Some(x.div(p)?)),
        None => Ok(None),
    }
}

/// Bilateral sum of monomials `term(n)`, `n ∈ ℤ`, stopping each direction
/// after 8 consecutive terms at or above `order`.
fn bilateral_monomials(
    order: Exp,
    mut term: impl FnMut(i64) -> Result<Monomial>,
) -> Result<QSeries> {
    let mut acc = QSeries::zero().truncated(order);
    for dir in [1i64, -1] {
        let mut n = if dir == 1 { 0 } else { -1 };
        let mut clear = 0u32;
        let mut steps = 0u32;
        loop {
            let t = term(n)?;
            if t.q_exp() >= order {
                clear += 1;
                if clear >= 8 {
                    break;
                }
            } else {
                clear = 0;
                acc = acc.add(&mono(t).truncated(order));
            }
            n += dir;
            steps += 1;
            if steps > 100_000 {
                return Err(Error::DivergentSum(
                    "bilateral monomial sum did not stabilize".into(),
                ));
            }
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Mock theta functions and friends
// ---------------------------------------------------------------------------

/// χ(q), tenth order: Σ (−1)^n q^{(n+1)²} / (−q)_{2n+1}.
fn chi10(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("chi10", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let mut t = pf(&q().neg(), 1, 2 * n + 1)?
                .invert_to(ord)?
                .mul_monomial(&qp((nn + 1) * (nn + 1)));
            if n % 2 != 0 {
                t = t.neg();
            }
            Ok(t)
        })
    })
}

/// X(q), tenth order: Σ (−1)^n q^{n²} / (−q)_{2n}.
fn x10(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("X10", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let mut t = pf(&q().neg(), 1, 2 * n)?
                .invert_to(ord)?
                .mul_monomial(&qp(nn * nn));
            if n % 2 != 0 {
                t = t.neg();
            }
            Ok(t)
        })
    })
}

/// f(q), third order: Σ q^{n²} / (−q)_n².
fn f3(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("f3", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let d = pf(&q().neg(), 1, n)?.truncated(ord);
            Ok(d.mul(&d).invert_to(ord)?.mul_monomial(&qp(nn * nn)))
        })
    })
}

/// χ(q), third order: Σ q^{n²} (−q)_n / (−q³;q³)_n.
fn chi3(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("chi3", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            Ok(pf(&q().neg(), 1, n)?
                .truncated(ord)
                .mul(&pf(&qp(3).neg(), 3, n)?.invert_to(ord)?)
                .mul_monomial(&qp(nn * nn)))
        })
    })
}

/// μ(q), second order: Σ (q;q²)_n (−1)^n q^{n²} / (−q²;q²)_n².
fn mu2(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("mu", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let d = pf(&qp(2).neg(), 2, n)?;
            let mut t = pf(&q(), 2, n)?
                .truncated(ord)
                .mul(&d.mul(&d).invert_to(ord)?)
                .mul_monomial(&qp(nn * nn));
            if n % 2 != 0 {
                t = t.neg();
            }
            Ok(t)
        })
    })
}

/// f₁(q), fifth order: Σ q^{n²+n} / (−q)_n.
fn f1(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("f1", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            Ok(pf(&q().neg(), 1, n)?
                .invert_to(ord)?
                .mul_monomial(&qp(nn * nn + nn)))
        })
    })
}

/// φ(q), tenth order: Σ q^{C(n+1,2)} / (q;q²)_{n+1}.
fn phi10(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("phi10", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            Ok(pf(&q(), 2, n + 1)?
                .invert_to(ord)?
                .mul_monomial(&Monomial::q_pow(exp(binom2(nn + 1)))))
        })
    })
}

// ---------------------------------------------------------------------------
// Multisums
// ---------------------------------------------------------------------------

fn isqrt_ceil(order: Exp) -> u32 {
    let n = order.ceil().to_integer().max(0);
    let mut r = 0i64;
    while r * r < n {
        r += 1;
    }
    (r + 2) as u32
}

/// B(k): Σ_{n_k ≥ … ≥ n₁ ≥ 0} q^{n_k²+…+n₁²} / ((q)_{n_k−n_{k−1}} ⋯ (q)_{n₂−n₁} (−q)_{n₁}²).
fn b_multisum(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("B", args, 1)?;
    let k = want_int("B", args, 0)?;
    if k < 1 {
        return Err(Error::InvalidParameter(format!(
            "B(k) needs k >= 1, got {k}"
        )));
    }
    compute_to(order, |ord| {
        let top = isqrt_ceil(ord);
        // level[m] starts as the innermost summand at n₁ = m.
        let mut level: Vec<QSeries> = Vec::new();
        for m in 0..=top {
            let mm = m as i64;
            let d = pf(&q().neg(), 1, m)?;
            level.push(
                d.mul(&d)
                    .invert_to(ord)?
                    .mul_monomial(&qp(mm * mm))
                    .truncated(ord),
            );
        }
        for _ in 2..=k {
            let mut next: Vec<QSeries> = Vec::new();
            for n in 0..=top {
                let mut acc = QSeries::zero().truncated(ord);
                for m in 0..=n {
                    let link = pf(&q(), 1, n - m)?.invert_to(ord)?;
                    acc = acc.add(&level[m as usize].mul(&link).truncated(ord));
                }
                let nn = n as i64;
                next.push(acc.mul_monomial(&qp(nn * nn)).truncated(ord));
            }
            level = next;
        }
        let mut total = QSeries::zero().truncated(ord);
        for s in &level {
            total = total.add(s);
        }
        Ok(total)
    })
}

/// M(k): Σ_{n_k ≥ … ≥ n₁ ≥ 0} (−q)_{n_k} q^{C(n_k+1,2)+n_{k−1}²+n_{k−1}+…+n₁²+n₁}
/// / ((q)_{n_k−n_{k−1}} ⋯ (q)_{n₂−n₁} (q^{n₁+1})_{n₁+1}).
fn m_multisum(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("M", args, 1)?;
    let k = want_int("M", args, 0)?;
    if k < 1 {
        return Err(Error::InvalidParameter(format!(
            "M(k) needs k >= 1, got {k}"
        )));
    }
    compute_to(order, |ord| {
        let top_outer = {
            // C(n+1,2) ≥ ord bound.
            let mut n = 0i64;
            while exp(binom2(n + 1)) < ord {
                n += 1;
            }
            (n + 2) as u32
        };
        if k == 1 {
            let mut total = QSeries::zero().truncated(ord);
            for n in 0..=top_outer {
                let nn = n as i64;
                let t = pf(&q().neg(), 1, n)?
                    .truncated(ord)
                    .mul(&pf(&qp(nn + 1), 1, n + 1)?.invert_to(ord)?)
                    .mul_monomial(&Monomial::q_pow(exp(binom2(nn + 1))));
                total = total.add(&t.truncated(ord));
            }
            return Ok(total);
        }
        let top = isqrt_ceil(ord);
        let mut level: Vec<QSeries> = Vec::new();
        for m in 0..=top {
            let mm = m as i64;
            level.push(
                pf(&qp(mm + 1), 1, m + 1)?
                    .invert_to(ord)?
                    .mul_monomial(&qp(mm * mm + mm))
                    .truncated(ord),
            );
        }
        for _ in 2..k {
            let mut next: Vec<QSeries> = Vec::new();
            for n in 0..=top {
                let mut acc = QSeries::zero().truncated(ord);
                for m in 0..=n {
                    let link = pf(&q(), 1, n - m)?.invert_to(ord)?;
                    acc = acc.add(&level[m as usize].mul(&link).truncated(ord));
                }
                let nn = n as i64;
                next.push(acc.mul_monomial(&qp(nn * nn + nn)).truncated(ord));
            }
            level = next;
        }
        let mut total = QSeries::zero().truncated(ord);
        for n in 0..=top_outer {
            let mut acc = QSeries::zero().truncated(ord);
            for m in 0..=n.min(top) {
                let link = pf(&q(), 1, n - m)?.invert_to(ord)?;
                acc = acc.add(&level[m as usize].mul(&link).truncated(ord));
            }
            let nn = n as i64;
            let t = pf(&q().neg(), 1, n)?
                .truncated(ord)
                .mul(&acc)
                .mul_monomial(&Monomial::q_pow(exp(binom2(nn + 1))));
            total = total.add(&t.truncated(ord));
        }
        Ok(total)
    })
}

// ---------------------------------------------------------------------------
// Transformation sides
// ---------------------------------------------------------------------------

/// T₁(q): Σ (−1)_n² qⁿ / ((q)_n (q;q²)_n).
fn t1(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("T1", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let num = pf(&Monomial::from_int(-1), 1, n)?.truncated(ord);
            let den = pf(&q(), 1, n)?
                .truncated(ord)
                .mul(&pf(&q(), 2, n)?.truncated(ord));
            Ok(num
                .mul(&num)
                .mul(&den.invert_to(ord)?)
                .mul_monomial(&qp(n as i64)))
        })
    })
}

/// T₂(q): Σ (−1;q²)_n (q;q²)_n q^{n²+n} / ((q²;q²)_n (−q)_{2n}).
fn t2(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("T2", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let num = pf(&Monomial::from_int(-1), 2, n)?
                .truncated(ord)
                .mul(&pf(&q(), 2, n)?.truncated(ord));
            let den = pf(&qp(2), 2, n)?
                .truncated(ord)
                .mul(&pf(&q().neg(), 1, 2 * n)?.truncated(ord));
            Ok(num
                .mul(&den.invert_to(ord)?)
                .mul_monomial(&qp(nn * nn + nn)))
        })
    })
}

/// S(x,q): Σ (x,1/x)_n qⁿ / (q)_n (formal or monomial x).
fn s_series(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("S", args, 1)?;
    let x = want_mono("S", args, 0)?;
    let xi = x.inv()?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let num = pf(&x, 1, n)?
                .truncated(ord)
                .mul(&pf(&xi, 1, n)?.truncated(ord));
            Ok(num
                .mul(&pf(&q(), 1, n)?.invert_to(ord)?)
                .mul_monomial(&qp(n as i64)))
        })
    })
}

/// U(x,q): Σ (x,1/x)_n qⁿ (monomial x).
fn u_series(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("U", args, 1)?;
    let x = want_mono("U", args, 0)?;
    let xi = x.inv()?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            Ok(pf(&x, 1, n)?
                .truncated(ord)
                .mul(&pf(&xi, 1, n)?.truncated(ord))
                .mul_monomial(&qp(n as i64)))
        })
    })
}

/// V(z,q): Σ qⁿ (z,q/z)_n (formal z).
fn v_series(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("V", args, 1)?;
    let z = want_mono("V", args, 0)?;
    let qz = q().div(&z)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            Ok(pf(&z, 1, n)?
                .truncated(ord)
                .mul(&pf(&qz, 1, n)?.truncated(ord))
                .mul_monomial(&qp(n as i64)))
        })
    })
}

/// W(z,q): Σ (z,q/z)_n qⁿ / (q)_{2n} (formal z).
fn w_series(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("W", args, 1)?;
    let z = want_mono("W", args, 0)?;
    let qz = q().div(&z)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            Ok(pf(&z, 1, n)?
                .truncated(ord)
                .mul(&pf(&qz, 1, n)?.truncated(ord))
                .mul(&pf(&q(), 1, 2 * n)?.invert_to(ord)?)
                .mul_monomial(&qp(n as i64)))
        })
    })
}

/// Y(q): Σ qⁿ / ((q;q²)_n (q)_n).
fn y_series(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("Y", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let den = pf(&q(), 2, n)?
                .truncated(ord)
                .mul(&pf(&q(), 1, n)?.truncated(ord));
            Ok(den.invert_to(ord)?.mul_monomial(&qp(n as i64)))
        })
    })
}

/// The generating function Σ J₁(n) qⁿ = (−q;q²)_∞ Σ q^{3n²+n} / ((q²;q²)_n (q²;q⁴)_n).
fn j1_series(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("J1", args, 0)?;
    compute_to(order, |ord| {
        let s = sum_until_stable(ord, |n| {
            let nn = n as i64;
            let den = pf(&qp(2), 2, n)?
                .truncated(ord)
                .mul(&pf(&qp(2), 4, n)?.truncated(ord));
            Ok(den.invert_to(ord)?.mul_monomial(&qp(3 * nn * nn + nn)))
        })?;
        Ok(pinf(&q().neg(), 2, ord)?.mul(&s))
    })
}

/// Double sum Σ_{n≥0} Σ_{|2j|≤n} (−1)^j q^{4n²+2n−j(6j+2)} (1 − q^{4n+2}).
fn j1ds(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("J1ds", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let mut theta = QSeries::zero();
            let mut j = -(nn / 2);
            while 2 * j <= nn {
                let mut t = qp(-j * (6 * j + 2));
                if j % 2 != 0 {
                    t = t.neg();
                }
                theta = theta.add(&mono(t));
                j += 1;
            }
            let envelope = QSeries::one().sub(&mono(qp(4 * nn + 2)));
            Ok(theta
                .mul(&envelope)
                .mul_monomial(&qp(4 * nn * nn + 2 * nn))
                .truncated(ord))
        })
    })
}

/// Double sum Σ_{n≥0} Σ_{|j|≤n} (−1)^j q^{n(5n+3)/2−j²} (1 − q^{2n+1}).
fn f1ds(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("f1ds", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let mut theta = QSeries::zero();
            for j in -nn..=nn {
                let mut t = qp(-j * j);
                if j % 2 != 0 {
                    t = t.neg();
                }
                theta = theta.add(&mono(t));
            }
            let envelope = QSeries::one().sub(&mono(qp(2 * nn + 1)));
            Ok(theta
                .mul(&envelope)
                .mul_monomial(&Monomial::q_pow(exp(nn * (5 * nn + 3)) / exp(2)))
                .truncated(ord))
        })
    })
}

/// Hikami's sum: Σ (q;q²)_n² q^{2n}.
fn hikami(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("hikami", args, 0)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let p = pf(&q(), 2, n)?.truncated(ord);
            Ok(p.mul(&p).mul_monomial(&qp(2 * n as i64)))
        })
    })
}

/// Gleissberg-type sum: Σ (y,q/y)_n qⁿ / (q)_n (formal y).
fn gb(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("gb", args, 1)?;
    let y = want_mono("gb", args, 0)?;
    let qy = q().div(&y)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            Ok(pf(&y, 1, n)?
                .truncated(ord)
                .mul(&pf(&qy, 1, n)?.truncated(ord))
                .mul(&pf(&q(), 1, n)?.invert_to(ord)?)
                .mul_monomial(&qp(n as i64)))
        })
    })
}

/// Product side of the Gleissberg transformation, written termwise-entire:
/// (q)_∞^{-1} Σ q^{n²+n} (yq^{n+1})_∞ (q^{n+2}/y)_∞ (formal y).
fn gleissberg_rhs(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("gleissberg_rhs", args, 1)?;
    let y = want_mono("gleissberg_rhs", args, 0)?;
    compute_to(order, |ord| {
        let s = sum_until_stable(ord, |n| {
            let nn = n as i64;
            let a = y.mul_q_pow(exp(nn + 1));
            let b = qp(nn + 2).div(&y)?;
            Ok(pinf(&a, 1, ord)?
                .mul(&pinf(&b, 1, ord)?)
                .mul_monomial(&qp(nn * nn + nn)))
        })?;
        Ok(s.mul(&pinf(&q(), 1, ord)?.invert_to(ord)?))
    })
}

/// Universal mock theta sum: Σ q^{n²+n} / (y,q/y)_{n+1} (monomial y).
fn guniv(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("guniv", args, 1)?;
    let y = want_mono("guniv", args, 0)?;
    let qy = q().div(&y)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let den = pf(&y, 1, n + 1)?
                .truncated(ord)
                .mul(&pf(&qy, 1, n + 1)?.truncated(ord));
            Ok(den.invert_to(ord)?.mul_monomial(&qp(nn * nn + nn)))
        })
    })
}

/// Σ q^{n²} / ((xq)_n (q/x)_n): the mock-theta side of the S-transformation.
fn smock(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("smock", args, 1)?;
    let x = want_mono("smock", args, 0)?;
    let xq = x.mul_q_pow(exp(1));
    let qx = q().div(&x)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let den = pf(&xq, 1, n)?
                .truncated(ord)
                .mul(&pf(&qx, 1, n)?.truncated(ord));
            Ok(den.invert_to(ord)?.mul_monomial(&qp(nn * nn)))
        })
    })
}

/// 1 + Σ_{n≥1} (−q³;q³)_{n−1} qⁿ / ((−q)_{n−1} (q)_n): the sequence-free
/// partition generating function.
fn sspec_sum(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("sspec_sum", args, 0)?;
    compute_to(order, |ord| {
        let tail = sum_until_stable(ord, |k| {
            let n = k + 1;
            let num = pf(&qp(3).neg(), 3, n - 1)?.truncated(ord);
            let den = pf(&q().neg(), 1, n - 1)?
                .truncated(ord)
                .mul(&pf(&q(), 1, n)?.truncated(ord));
            Ok(num.mul(&den.invert_to(ord)?).mul_monomial(&qp(n as i64)))
        })?;
        Ok(QSeries::one().truncated(ord).add(&tail))
    })
}

/// Three-term transformation, left side: Σ_{n≥1} (−a)_n (−b)_n qⁿ.
fn lhs3t(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("lhs3t", args, 2)?;
    let a = want_mono("lhs3t", args, 0)?.neg();
    let b = want_mono("lhs3t", args, 1)?.neg();
    compute_to(order, |ord| {
        sum_until_stable(ord, |k| {
            let n = k + 1;
            Ok(pf(&a, 1, n)?
                .truncated(ord)
                .mul(&pf(&b, 1, n)?.truncated(ord))
                .mul_monomial(&qp(n as i64)))
        })
    })
}

/// Three-term transformation, trailing series: Σ_{n≥0} (ab)^{−n} q^{n²} / ((−q/a)_n (−q/b)_n).
fn t3tail(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("t3tail", args, 2)?;
    let a = want_mono("t3tail", args, 0)?;
    let b = want_mono("t3tail", args, 1)?;
    let qa = q().div(&a)?.neg();
    let qb = q().div(&b)?.neg();
    let ab_inv = a.mul(&b).inv()?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let nn = n as i64;
            let den = pf(&qa, 1, n)?
                .truncated(ord)
                .mul(&pf(&qb, 1, n)?.truncated(ord));
            Ok(den
                .invert_to(ord)?
                .mul_monomial(&ab_inv.pow(n as i32)?.mul_q_pow(exp(nn * nn))))
        })
    })
}

// ---------------------------------------------------------------------------
// Watson-Whipple-type and Bailey-type transformations (cancelled forms)
// ---------------------------------------------------------------------------

/// `(a)_n (1 − a q^{s·n}) / (1 − a)` in cancelled form: `1` at `n = 0`, else
/// `(aq)_{n−1} (1 − a q^{s·n})` — legal even at `a = 1`.
fn cancelled_core(a: &Monomial, m: i64, s: i64, n: u32) -> Result<QSeries> {
    if n == 0 {
        return Ok(QSeries::one());
    }
    let aq = a.mul_q_pow(exp(m));
    let head = pf(&aq, m, n - 1)?;
    let tail = QSeries::one().sub(&mono(a.mul_q_pow(exp(m) * exp(s * n as i64))));
    Ok(head.mul(&tail))
}

/// Left side of the Watson-Whipple transformation:
/// Σ (aq/bc, d, e)_n (aq/de)^n / ((q, aq/b, aq/c)_n).
fn ww_lhs(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("ww_lhs", args, 5)?;
    let a = want_mono("ww_lhs", args, 0)?;
    let b = want_mono_or_inf(args, 1)?;
    let c = want_mono_or_inf(args, 2)?;
    let d = want_mono_or_inf(args, 3)?;
    let e = want_mono_or_inf(args, 4)?;
    let aq = a.mul_q_pow(exp(1));
    // aq/(bc) — absent if either parameter is infinite.
    let aq_bc = match (&b, &c) {
        (Some(bb), Some(cc)) => Some(aq.div(bb)?.div(cc)?),
        _ => None,
    };
    let aq_b = div_opt(&aq, &b)?;
    let aq_c = div_opt(&aq, &c)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let num = poch_or_one(&aq_bc, 1, n)?
                .truncated(ord)
                .mul(&poch_over_pow(&d, 1, n)?.truncated(ord))
                .mul(&poch_over_pow(&e, 1, n)?.truncated(ord))
                .mul_monomial(&aq.pow(n as i32)?);
            let den = pf(&q(), 1, n)?
                .truncated(ord)
                .mul(&poch_or_one(&aq_b, 1, n)?.truncated(ord))
                .mul(&poch_or_one(&aq_c, 1, n)?.truncated(ord));
            Ok(num.mul(&den.invert_to(ord)?))
        })
    })
}

/// Right side of the Watson-Whipple transformation:
/// (aq/d, aq/e)_∞ / ((aq, aq/de)_∞) · Σ (a)_n (1−aq^{2n}) (b,c,d,e)_n (−1)^n q^{C(n,2)} (aq)^{2n}
///   / ((q)_n (1−a) (aq/b, aq/c, aq/d, aq/e)_n (bcde)^n).
fn ww_rhs(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("ww_rhs", args, 5)?;
    let a = want_mono("ww_rhs", args, 0)?;
    let b = want_mono_or_inf(args, 1)?;
    let c = want_mono_or_inf(args, 2)?;
    let d = want_mono_or_inf(args, 3)?;
    let e = want_mono_or_inf(args, 4)?;
    let aq = a.mul_q_pow(exp(1));
    let aq_de = match (&d, &e) {
        (Some(dd), Some(ee)) => Some(aq.div(dd)?.div(ee)?),
        _ => None,
    };
    let quotients: Vec<Option<Monomial>> = [&b, &c, &d, &e]
        .iter()
        .map(|p| div_opt(&aq, p))
        .collect::<Result<_>>()?;
    compute_to(order, |ord| {
        let mut pref =
            pinf_or_one(&div_opt(&aq, &d)?, 1, ord)?.mul(&pinf_or_one(&div_opt(&aq, &e)?, 1, ord)?);
        pref = pref.mul(
            &pinf(&aq, 1, ord)?
                .mul(&pinf_or_one(&aq_de, 1, ord)?)
                .invert_to(ord)?,
        );
        let sum = sum_until_stable(ord, |n| {
            let nn = n as i64;
            let mut num = cancelled_core(&a, 1, 2, n)?.truncated(ord);
            for p in [&b, &c, &d, &e] {
                num = num.mul(&poch_over_pow(p, 1, n)?.truncated(ord));
            }
            let mut w = aq.pow(2 * n as i32)?.mul_q_pow(exp(binom2(nn)));
            if n % 2 != 0 {
                w = w.neg();
            }
            num = num.mul_monomial(&w);
            let mut den = pf(&q(), 1, n)?.truncated(ord);
            for quot in &quotients {
                den = den.mul(&poch_or_one(quot, 1, n)?.truncated(ord));
            }
            Ok(num.mul(&den.invert_to(ord)?))
        })?;
        Ok(pref.mul(&sum))
    })
}

/// Left side of Bailey's first transformation:
/// Σ (ρ₁,ρ₂)_n (aq/f;q²)_n (aq/ρ₁ρ₂)^n / ((q, aq/f)_n (aq;q²)_n).
fn bt_lhs(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("bt_lhs", args, 4)?;
    let a = want_mono("bt_lhs", args, 0)?;
    let r1 = want_mono_or_inf(args, 1)?;
    let r2 = want_mono_or_inf(args, 2)?;
    let f = want_mono_or_inf(args, 3)?;
    let aq = a.mul_q_pow(exp(1));
    let aq_f = div_opt(&aq, &f)?;
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let num = poch_over_pow(&r1, 1, n)?
                .truncated(ord)
                .mul(&poch_over_pow(&r2, 1, n)?.truncated(ord))
                .mul(&poch_or_one(&aq_f, 2, n)?.truncated(ord))
                .mul_monomial(&aq.pow(n as i32)?);
            let den = pf(&q(), 1, n)?
                .truncated(ord)
                .mul(&poch_or_one(&aq_f, 1, n)?.truncated(ord))
                .mul(&pf(&aq, 2, n)?.truncated(ord));
            Ok(num.mul(&den.invert_to(ord)?))
        })
    })
}

/// Right side of Bailey's first transformation:
/// (aq/ρ₁, aq/ρ₂)_∞ / ((aq, aq/ρ₁ρ₂)_∞) · Σ (1−aq^{4n}) (a,f;q²)_n (ρ₁,ρ₂)_{2n}
///   (a³/ρ₁²ρ₂²f)^n q^{2n²+2n} / ((1−a) (q², aq²/f;q²)_n (aq/ρ₁, aq/ρ₂)_{2n}).
fn bt_rhs(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("bt_rhs", args, 4)?;
    let a = want_mono("bt_rhs", args, 0)?;
    let r1 = want_mono_or_inf(args, 1)?;
    let r2 = want_mono_or_inf(args, 2)?;
    let f = want_mono_or_inf(args, 3)?;
    let aq = a.mul_q_pow(exp(1));
    let aq_r1 = div_opt(&aq, &r1)?;
    let aq_r2 = div_opt(&aq, &r2)?;
    let aq_r1r2 = match (&r1, &r2) {
        (Some(p1), Some(p2)) => Some(aq.div(p1)?.div(p2)?),
        _ => None,
    };
    let aq2_f = div_opt(&a.mul_q_pow(exp(2)), &f)?;
    compute_to(order, |ord| {
        let pref = pinf_or_one(&aq_r1, 1, ord)?
            .mul(&pinf_or_one(&aq_r2, 1, ord)?)
            .mul(
                &pinf(&aq, 1, ord)?
                    .mul(&pinf_or_one(&aq_r1r2, 1, ord)?)
                    .invert_to(ord)?,
            );
        let sum = sum_until_stable(ord, |n| {
            let nn = n as i64;
            let num = cancelled_core(&a, 2, 2, n)?
                .truncated(ord)
                .mul(&poch_over_pow(&f, 2, n)?.truncated(ord))
                .mul(&poch_over_pow(&r1, 1, 2 * n)?.truncated(ord))
                .mul(&poch_over_pow(&r2, 1, 2 * n)?.truncated(ord))
                .mul_monomial(&a.pow(3 * n as i32)?.mul_q_pow(exp(2 * nn * nn + 2 * nn)));
            let den = pf(&qp(2), 2, n)?
                .truncated(ord)
                .mul(&poch_or_one(&aq2_f, 2, n)?.truncated(ord))
                .mul(&poch_or_one(&aq_r1, 1, 2 * n)?.truncated(ord))
                .mul(&poch_or_one(&aq_r2, 1, 2 * n)?.truncated(ord));
            Ok(num.mul(&den.invert_to(ord)?))
        })?;
        Ok(pref.mul(&sum))
    })
}

/// Left side of Bailey's second transformation:
/// Σ (r₁,r₂;q²)_n (−aq/b)_{2n} (a²q²/r₁r₂)^n / ((q², a²q²/b²;q²)_n (−aq)_{2n}).
fn btbis_lhs(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("btbis_lhs", args, 4)?;
    let a = want_mono("btbis_lhs", args, 0)?;
    let b = want_mono_or_inf(args, 1)?;
    let r1 = want_mono_or_inf(args, 2)?;
    let r2 = want_mono_or_inf(args, 3)?;
    let a2q2 = a.mul(&a).mul_q_pow(exp(2));
    let naq = a.mul_q_pow(exp(1)).neg();
    let naq_b = div_opt(&naq, &b)?;
    let a2q2_b2 = match &b {
        Some(bb) => Some(a2q2.div(bb)?.div(bb)?),
        None => None,
    };
    compute_to(order, |ord| {
        sum_until_stable(ord, |n| {
            let num = poch_over_pow(&r1, 2, n)?
                .truncated(ord)
                .mul(&poch_over_pow(&r2, 2, n)?.truncated(ord))
                .mul(&poch_or_one(&naq_b, 1, 2 * n)?.truncated(ord))
                .mul_monomial(&a2q2.pow(n as i32)?);
            let den = pf(&qp(2), 2, n)?
                .truncated(ord)
                .mul(&poch_or_one(&a2q2_b2, 2, n)?.truncated(ord))
                .mul(&pf(&naq, 1, 2 * n)?.truncated(ord));
            Ok(num.mul(&den.invert_to(ord)?))
        })
    })
}

/// Right side of Bailey's second transformation:
/// (a²q²/r₁, a²q²/r₂;q²)_∞ / ((a²q², a²q²/r₁r₂;q²)_∞) · Σ (1−aq^{2n}) (a,b)_n
///   (r₁,r₂;q²)_n (a³/br₁r₂)^n q^{n²+2n} / ((1−a) (q, aq/b)_n (a²q²/r₁, a²q²/r₂;q²)_n).
fn btbis_rhs(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("btbis_rhs", args, 4)?;
    let a = want_mono("btbis_rhs", args, 0)?;
    let b = want_mono_or_inf(args, 1)?;
    let r1 = want_mono_or_inf(args, 2)?;
    let r2 = want_mono_or_inf(args, 3)?;
    let a2q2 = a.mul(&a).mul_q_pow(exp(2));
    let aq = a.mul_q_pow(exp(1));
    let aq_b = div_opt(&aq, &b)?;
    let a2_r1 = div_opt(&a2q2, &r1)?;
    let a2_r2 = div_opt(&a2q2, &r2)?;
    let a2_r1r2 = match (&r1, &r2) {
        (Some(p1), Some(p2)) => Some(a2q2.div(p1)?.div(p2)?),
        _ => None,
    };
    compute_to(order, |ord| {
        let pref = pinf_or_one(&a2_r1, 2, ord)?
            .mul(&pinf_or_one(&a2_r2, 2, ord)?)
            .mul(
                &pinf(&a2q2, 2, ord)?
                    .mul(&pinf_or_one(&a2_r1r2, 2, ord)?)
                    .invert_to(ord)?,
            );
        let sum = sum_until_stable(ord, |n| {
            let nn = n as i64;
            let num = cancelled_core(&a, 1, 2, n)?
                .truncated(ord)
                .mul(&poch_over_pow(&b, 1, n)?.truncated(ord))
                .mul(&poch_over_pow(&r1, 2, n)?.truncated(ord))
                .mul(&poch_over_pow(&r2, 2, n)?.truncated(ord))
                .mul_monomial(&a.pow(3 * n as i32)?.mul_q_pow(exp(nn * nn + 2 * nn)));
            let den = pf(&q(), 1, n)?
                .truncated(ord)
                .mul(&poch_or_one(&aq_b, 1, n)?.truncated(ord))
                .mul(&poch_or_one(&a2_r1, 2, n)?.truncated(ord))
                .mul(&poch_or_one(&a2_r2, 2, n)?.truncated(ord));
            Ok(num.mul(&den.invert_to(ord)?))
        })?;
        Ok(pref.mul(&sum))
    })
}

// ---------------------------------------------------------------------------
// Classical bilateral oracles
// ---------------------------------------------------------------------------

/// Euler's pentagonal sum Σ_{n∈ℤ} (−1)^n q^{n(3n−1)/2}.
fn pent(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("pent", args, 0)?;
    bilateral_monomials(order, |n| {
        let mut t = Monomial::q_pow(exp(n * (3 * n - 1)) / exp(2));
        if n % 2 != 0 {
            t = t.neg();
        }
        Ok(t)
    })
}

/// Bilateral theta sum Σ_{n∈ℤ} (−1)^n q^{M·C(n,2)} xⁿ (formal or monomial x).
fn jtpsum(args: &[CatArg], order: Exp) -> Result<QSeries> {
    arity("jtpsum", args, 2)?;
    let x = want_mono("jtpsum", args, 0)?;
    let m = want_int("jtpsum", args, 1)?;
    if m < 1 {
        return Err(Error::InvalidParameter(format!(
            "jtpsum modulus must be positive, got {m}"
        )));
    }
    bilateral_monomials(order, |n| {
        let mut t = x.pow(n as i32)?.mul_q_pow(exp(m) * exp(binom2(n)));
        if n % 2 != 0 {
            t = t.neg();
        }
        Ok(t)
    })
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry { name: "chi10", params: "()", reference: "Ramanujan, lost notebook p. 9 (tenth order)", eval: chi10 },
    CatalogEntry { name: "X10", params: "()", reference: "Ramanujan, lost notebook p. 9 (tenth order)", eval: x10 },
    CatalogEntry { name: "f3", params: "()", reference: "Ramanujan's third order f(q); Watson, J. London Math. Soc. 11 (1936)", eval: f3 },
    CatalogEntry { name: "chi3", params: "()", reference: "Ramanujan's third order chi(q); Watson (1936)", eval: chi3 },
    CatalogEntry { name: "mu", params: "()", reference: "Second order mu(q); Ramanujan's lost notebook, Entry 12.2.1 in Andrews-Berndt I", eval: mu2 },
    CatalogEntry { name: "f1", params: "()", reference: "Ramanujan's fifth order f1(q)", eval: f1 },
    CatalogEntry { name: "phi10", params: "()", reference: "Ramanujan, lost notebook p. 9 (tenth order phi)", eval: phi10 },
    CatalogEntry { name: "B", params: "(k)", reference: "Multisum over q^{n_k^2+...+n_1^2} with (-q)_{n_1}^2 base factor; k=1 case is Watson's f(q)", eval: b_multisum },
    CatalogEntry { name: "M", params: "(k)", reference: "Andrews, Amer. J. Math. 88 (1966), (7.15)/(7.20)/(7.21); k=1 case is the tenth order phi(q)", eval: m_multisum },
    CatalogEntry { name: "T1", params: "()", reference: "Specialization of Bailey's 1947 transformation list", eval: t1 },
    CatalogEntry { name: "T2", params: "()", reference: "Specialization of Bailey's 1947 transformation list", eval: t2 },
    CatalogEntry { name: "S", params: "(x)", reference: "Gasper-Rahman, Basic Hypergeometric Series, Appendix III.10 specialization; partitions without sequences", eval: s_series },
    CatalogEntry { name: "U", params: "(x)", reference: "Ramanujan, lost notebook Entry 3.4.7 specialization; x=-1 counts strongly unimodal sequences", eval: u_series },
    CatalogEntry { name: "V", params: "(z)", reference: "Partial-theta image of Andrews' unit Bailey pair (Lemma 3.3, Pacific J. Math. 114)", eval: v_series },
    CatalogEntry { name: "W", params: "(z)", reference: "Partial-theta image of Andrews' unit Bailey pair (Lemma 3.3, Pacific J. Math. 114)", eval: w_series },
    CatalogEntry { name: "Y", params: "()", reference: "Partial-theta image of Slater's pair L(6)", eval: y_series },
    CatalogEntry { name: "J1", params: "()", reference: "Andrews, Partitions with early conditions, Advances in Combinatorics, Springer (2013)", eval: j1_series },
    CatalogEntry { name: "J1ds", params: "()", reference: "Bailey-limit double sum for the early-conditions pair", eval: j1ds },
    CatalogEntry { name: "f1ds", params: "()", reference: "Andrews, Trans. Amer. Math. Soc. 293 (1986): fifth order Bailey-limit double sum", eval: f1ds },
    CatalogEntry { name: "hikami", params: "()", reference: "Hikami, J. Math. Phys. 47 (2006): quantum-invariant series", eval: hikami },
    CatalogEntry { name: "gb", params: "(y)", reference: "Gleissberg-type partition sum; Schur's theorem extension", eval: gb },
    CatalogEntry { name: "gleissberg_rhs", params: "(y)", reference: "Universal mock theta side of the Gleissberg transformation (Gordon-McIntosh g2)", eval: gleissberg_rhs },
    CatalogEntry { name: "guniv", params: "(y)", reference: "Gordon-McIntosh universal mock theta sum g2(y,q)", eval: guniv },
    CatalogEntry { name: "smock", params: "(x)", reference: "Bringmann-Ono family: Σ q^{n²}/((xq)_n(q/x)_n), mock theta at roots of unity", eval: smock },
    CatalogEntry { name: "sspec_sum", params: "()", reference: "Generating function for partitions without sequences (Andrews)", eval: sspec_sum },
    CatalogEntry { name: "lhs3t", params: "(a,b)", reference: "Ramanujan, lost notebook Entry 3.4.7, left side", eval: lhs3t },
    CatalogEntry { name: "t3tail", params: "(a,b)", reference: "Ramanujan, lost notebook Entry 3.4.7, trailing series", eval: t3tail },
    CatalogEntry { name: "ww_lhs", params: "(a,b,c,d,e)", reference: "Watson's 8phi7 transformation (Gasper-Rahman III.18 limiting case), left side", eval: ww_lhs },
    CatalogEntry { name: "ww_rhs", params: "(a,b,c,d,e)", reference: "Watson's 8phi7 transformation (Gasper-Rahman III.18 limiting case), right side", eval: ww_rhs },
    CatalogEntry { name: "bt_lhs", params: "(a,rho1,rho2,f)", reference: "Bailey, Proc. London Math. Soc. 1947 transformation, left side", eval: bt_lhs },
    CatalogEntry { name: "bt_rhs", params: "(a,rho1,rho2,f)", reference: "Bailey, Proc. London Math. Soc. 1947 transformation, right side", eval: bt_rhs },
    CatalogEntry { name: "btbis_lhs", params: "(a,b,r1,r2)", reference: "Bailey's companion transformation, left side", eval: btbis_lhs },
    CatalogEntry { name: "btbis_rhs", params: "(a,b,r1,r2)", reference: "Bailey's companion transformation, right side", eval: btbis_rhs },
    CatalogEntry { name: "pent", params: "()", reference: "Euler's pentagonal number theorem (1750)", eval: pent },
    CatalogEntry { name: "jtpsum", params: "(x,M)", reference: "Jacobi triple product, bilateral sum side (Jacobi 1829)", eval: jtpsum },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn eval_named(name: &str, args: &[CatArg], order: Exp) -> Result<QSeries> {
    entry(name)?.eval(args, order)
}
