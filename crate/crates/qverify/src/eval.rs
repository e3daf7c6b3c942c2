//! Evaluation of expression ASTs to exact truncated series.
//!
//! Atoms evaluate to monomials where possible so that scalar arithmetic and
//! function arguments stay exact; anything built from a series-valued call
//! is carried as a [`QSeries`]. The `inf` placeholder survives only as a
//! direct call argument.

use crate::ast::Expr;
use qseries::catalog::{self, CatArg};
use qseries::{appell, indefinite, products};
use qseries::{compute_to, exp, Error, Exp, Monomial, QSeries, Result};

#[derive(Clone, Debug)]
pub enum Value {
    Mono(Monomial),
    Series(QSeries),
    Inf,
}

impl Value {
    fn into_series(self, what: &str) -> Result<QSeries> {
        match self {
            Value::Mono(m) => Ok(QSeries::from_monomial(&m)),
            Value::Series(s) => Ok(s),
            Value::Inf => Err(Error::InvalidParameter(format!(
                "'inf' is only meaningful as a function argument (in {what})"
            ))),
        }
    }

    fn into_mono(self, what: &str) -> Result<Monomial> {
        match self {
            Value::Mono(m) => Ok(m),
            Value::Series(_) => Err(Error::InvalidParameter(format!(
                "{what} needs a monomial argument, got a series"
            ))),
            Value::Inf => Err(Error::InvalidParameter(format!(
                "{what} needs a finite monomial argument"
            ))),
        }
    }

    fn into_int(self, what: &str) -> Result<i64> {
        let m = self.into_mono(what)?;
        if m.uses_symbols() || m.q_exp() != exp(0) || !m.coeff().is_integer() {
            return Err(Error::InvalidParameter(format!(
                "{what} needs an integer argument, got {m}"
            )));
        }
        i64::try_from(m.coeff().to_integer())
            .map_err(|_| Error::InvalidParameter(format!("{what}: integer argument out of range")))
    }
}

/// Evaluate `e` as a series whose coefficients are correct through `order`.
pub fn eval_series(e: &Expr, order: Exp) -> Result<QSeries> {
    qseries::symbol::seed_standard_symbols();
    compute_to(order, |ord| {
        eval(e, ord)?.into_series("the top-level expression")
    })
}

fn eval(e: &Expr, ord: Exp) -> Result<Value> {
    match e {
        Expr::Int(n) => Ok(Value::Mono(Monomial::from_int(*n))),
        Expr::Sym(s) => Ok(Value::Mono(Monomial::sym(qseries::Symbol::new(s)))),
        Expr::QPow(e) => Ok(Value::Mono(Monomial::q_pow(*e))),
        Expr::Inf => Ok(Value::Inf),
        Expr::Neg(inner) => match eval(inner, ord)? {
            Value::Mono(m) => Ok(Value::Mono(m.neg())),
            Value::Series(s) => Ok(Value::Series(s.neg())),
            Value::Inf => Err(Error::InvalidParameter("cannot negate 'inf'".into())),
        },
        Expr::Add(l, r) => {
            let a = eval(l, ord)?.into_series("'+'")?;
            let b = eval(r, ord)?.into_series("'+'")?;
            Ok(Value::Series(a.add(&b)))
        }
        Expr::Sub(l, r) => {
            let a = eval(l, ord)?.into_series("'-'")?;
            let b = eval(r, ord)?.into_series("'-'")?;
            Ok(Value::Series(a.sub(&b)))
        }
        Expr::Mul(l, r) => match (eval(l, ord)?, eval(r, ord)?) {
            (Value::Mono(a), Value::Mono(b)) => Ok(Value::Mono(a.mul(&b))),
            (Value::Mono(a), Value::Series(b)) => Ok(Value::Series(b.mul_monomial(&a))),
            (Value::Series(a), Value::Mono(b)) => Ok(Value::Series(a.mul_monomial(&b))),
            (a, b) => Ok(Value::Series(
                a.into_series("'*'")?.mul(&b.into_series("'*'")?),
            )),
        },
        Expr::Div(l, r) => match (eval(l, ord)?, eval(r, ord)?) {
            (Value::Mono(a), Value::Mono(b)) => Ok(Value::Mono(a.div(&b)?)),
            (Value::Series(a), Value::Mono(b)) => Ok(Value::Series(a.mul_monomial(&b.inv()?))),
            (a, b) => {
                let den = b.into_series("'/'")?;
                Ok(Value::Series(
                    a.into_series("'/'")?.mul(&den.invert_to(ord)?),
                ))
            }
        },
        Expr::Pow(b, k) => match eval(b, ord)? {
            Value::Mono(m) => {
                let k32 = i32::try_from(*k)
                    .map_err(|_| Error::InvalidParameter(format!("power {k} out of range")))?;
                Ok(Value::Mono(m.pow(k32)?))
            }
            Value::Series(s) => {
                if *k >= 0 {
                    Ok(Value::Series(s.pow(*k as u32)))
                } else {
                    Ok(Value::Series(s.invert_to(ord)?.pow((-*k) as u32)))
                }
            }
            Value::Inf => Err(Error::InvalidParameter(
                "cannot raise 'inf' to a power".into(),
            )),
        },
        Expr::Call(name, args) => {
            let vals: Vec<Value> = args.iter().map(|a| eval(a, ord)).collect::<Result<_>>()?;
            call(name, vals, ord)
        }
    }
}

fn need(name: &str, vals: &[Value], n: usize) -> Result<()> {
    if vals.len() != n {
        return Err(Error::BadArity {
            name: name.to_string(),
            expected: format!("{n} argument(s)"),
            got: vals.len(),
        });
    }
    Ok(())
}

fn call(name: &str, mut vals: Vec<Value>, ord: Exp) -> Result<Value> {
    let series = |s: QSeries| Ok(Value::Series(s));
    match name {
        "pfin" => {
            need(name, &vals, 3)?;
            let n = vals.pop().unwrap().into_int("pfin count")?;
            let m = vals.pop().unwrap().into_int("pfin modulus")?;
            let a = vals.pop().unwrap().into_mono("pfin")?;
            if n < 0 {
                return Err(Error::InvalidParameter(format!(
                    "pfin count must be nonnegative, got {n}"
                )));
            }
            series(products::poch_finite(&a, exp(m), n as u32)?)
        }
        "pinf" => {
            need(name, &vals, 2)?;
            let m = vals.pop().unwrap().into_int("pinf modulus")?;
            let a = vals.pop().unwrap().into_mono("pinf")?;
            series(products::poch_infinite(&a, exp(m), ord)?)
        }
        "pinf2" => {
            need(name, &vals, 3)?;
            let m = vals.pop().unwrap().into_int("pinf2 modulus")?;
            let b = vals.pop().unwrap().into_mono("pinf2")?;
            let a = vals.pop().unwrap().into_mono("pinf2")?;
            let pa = products::poch_infinite(&a, exp(m), ord)?;
            let pb = products::poch_infinite(&b, exp(m), ord)?;
            series(pa.mul(&pb))
        }
        "j" => {
            need(name, &vals, 2)?;
            let m = vals.pop().unwrap().into_int("j modulus")?;
            let x = vals.pop().unwrap().into_mono("j")?;
            series(products::j_theta(&x, exp(m), ord)?)
        }
        "J" => match vals.len() {
            1 => {
                let m = vals.pop().unwrap().into_int("J modulus")?;
                series(products::jm(exp(m), ord)?)
            }
            2 => {
                let m = vals.pop().unwrap().into_int("J modulus")?;
                let a = vals.pop().unwrap().into_int("J index")?;
                series(products::jam(exp(a), exp(m), ord)?)
            }
            got => Err(Error::BadArity {
                name: name.to_string(),
                expected: "1 or 2 argument(s)".to_string(),
                got,
            }),
        },
        "Jb" => {
            need(name, &vals, 2)?;
            let m = vals.pop().unwrap().into_int("Jb modulus")?;
            let a = vals.pop().unwrap().into_int("Jb index")?;
            series(products::jam_bar(exp(a), exp(m), ord)?)
        }
        "m" => {
            need(name, &vals, 3)?;
            let z = vals.pop().unwrap().into_mono("m")?;
            let modulus = vals.pop().unwrap().into_int("m modulus")?;
            let x = vals.pop().unwrap().into_mono("m")?;
            series(appell::m_sum(&x, exp(modulus), &z, ord)?)
        }
        "delta" => {
            need(name, &vals, 4)?;
            let z0 = vals.pop().unwrap().into_mono("delta")?;
            let z1 = vals.pop().unwrap().into_mono("delta")?;
            let modulus = vals.pop().unwrap().into_int("delta modulus")?;
            let x = vals.pop().unwrap().into_mono("delta")?;
            series(appell::delta_correction(&x, exp(modulus), &z1, &z0, ord)?)
        }
        "A" => {
            need(name, &vals, 3)?;
            let b = vals.pop().unwrap().into_mono("A")?;
            let a = vals.pop().unwrap().into_mono("A")?;
            let level = vals.pop().unwrap().into_int("A level")?;
            if level < 1 {
                return Err(Error::InvalidParameter(format!(
                    "A level must be positive, got {level}"
                )));
            }
            series(appell::appell_unnormalized(level as u32, &a, &b, ord)?)
        }
        "f" => {
            let base = match vals.len() {
                5 => 1,
                6 => vals.pop().unwrap().into_int("f base")?,
                got => {
                    return Err(Error::BadArity {
                        name: name.to_string(),
                        expected: "5 or 6 argument(s)".to_string(),
                        got,
                    })
                }
            };
            let y = vals.pop().unwrap().into_mono("f")?;
            let x = vals.pop().unwrap().into_mono("f")?;
            let c = vals.pop().unwrap().into_int("f")?;
            let b = vals.pop().unwrap().into_int("f")?;
            let a = vals.pop().unwrap().into_int("f")?;
            series(indefinite::f_indef_base(a, b, c, &x, &y, exp(base), ord)?)
        }
        "g" => {
            need(name, &vals, 7)?;
            let z0 = vals.pop().unwrap().into_mono("g")?;
            let z1 = vals.pop().unwrap().into_mono("g")?;
            let y = vals.pop().unwrap().into_mono("g")?;
            let x = vals.pop().unwrap().into_mono("g")?;
            let c = vals.pop().unwrap().into_int("g")?;
            let b = vals.pop().unwrap().into_int("g")?;
            let a = vals.pop().unwrap().into_int("g")?;
            series(indefinite::g_hm(a, b, c, &x, &y, &z1, &z0, ord)?)
        }
        "theta_np" => {
            need(name, &vals, 4)?;
            let y = vals.pop().unwrap().into_mono("theta_np")?;
            let x = vals.pop().unwrap().into_mono("theta_np")?;
            let p = vals.pop().unwrap().into_int("theta_np")?;
            let n = vals.pop().unwrap().into_int("theta_np")?;
            series(indefinite::theta_np(n, p, &x, &y, ord)?)
        }
        "sub" => {
            need(name, &vals, 2)?;
            let k = vals.pop().unwrap().into_int("sub")?;
            let s = vals.pop().unwrap().into_series("sub")?;
            if k == 0 {
                return Err(Error::InvalidParameter(
                    "sub needs a nonzero substitution power".into(),
                ));
            }
            if k > 0 {
                series(s.substitute(1, k)?)
            } else {
                series(s.substitute(-1, -k)?)
            }
        }
        _ => {
            let cargs: Vec<CatArg> = vals
                .into_iter()
                .map(|v| to_catarg(name, v))
                .collect::<Result<_>>()?;
            series(catalog::eval_named(name, &cargs, ord)?)
        }
    }
}

fn to_catarg(name: &str, v: Value) -> Result<CatArg> {
    match v {
        Value::Inf => Ok(CatArg::Inf),
        Value::Mono(m) => {
            if !m.uses_symbols() && m.q_exp() == exp(0) && m.coeff().is_integer() {
                if let Ok(n) = i64::try_from(m.coeff().to_integer()) {
                    return Ok(CatArg::Int(n));
                }
            }
            Ok(CatArg::Mono(m))
        }
        Value::Series(_) => Err(Error::InvalidParameter(format!(
            "{name} needs monomial or integer arguments, got a series"
        ))),
    }
}
