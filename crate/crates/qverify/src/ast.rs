//! Expression AST for the identity language, with a canonical printer.
//!
//! The printer emits the minimal-parenthesis canonical form; parsing the
//! printed text yields the identical AST (`parse ∘ print ∘ parse = parse`).

use qseries::Exp;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    /// Nonnegative integer literal (negative numbers parse as [`Expr::Neg`]).
    Int(i64),
    /// A declared formal symbol (`x`, `y`, `z`).
    Sym(String),
    /// `q^e` with a rational exponent; `q` itself is `QPow(1)`.
    QPow(Exp),
    /// The `inf` placeholder, legal only as a call argument.
    Inf,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power of an atom (for `q` the exponent lives in [`Expr::QPow`]).
    Pow(Box<Expr>, i64),
    Call(String, Vec<Expr>),
}

/// Binding strength used by the canonical printer: `+`/`-` bind loosest,
/// then `*`/`/`, then unary minus, then `^`, then atoms.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::QPow(e) => {
            if *e == qseries::exp(1) {
                5
            } else {
                4
            }
        }
        Expr::Int(..) | Expr::Sym(..) | Expr::Inf | Expr::Call(..) => 5,
    }
}

fn write_prec(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "(")?;
        write_prec(f, e, 0)?;
        return write!(f, ")");
    }
    match e {
        Expr::Int(n) => write!(f, "{n}"),
        Expr::Sym(s) => write!(f, "{s}"),
        Expr::Inf => write!(f, "inf"),
        Expr::QPow(e) => {
            if *e == qseries::exp(1) {
                write!(f, "q")
            } else if e.is_integer() {
                let n = e.to_integer();
                if n >= 0 {
                    write!(f, "q^{n}")
                } else {
                    write!(f, "q^({n})")
                }
            } else {
                write!(f, "q^({}/{})", e.numer(), e.denom())
            }
        }
        Expr::Neg(inner) => {
            write!(f, "-")?;
            write_prec(f, inner, 3)
        }
        Expr::Add(l, r) => {
            write_prec(f, l, 1)?;
            write!(f, " + ")?;
            write_prec(f, r, 2)
        }
        Expr::Sub(l, r) => {
            write_prec(f, l, 1)?;
            write!(f, " - ")?;
            write_prec(f, r, 2)
        }
        Expr::Mul(l, r) => {
            write_prec(f, l, 2)?;
            write!(f, "*")?;
            write_prec(f, r, 3)
        }
        Expr::Div(l, r) => {
            write_prec(f, l, 2)?;
            write!(f, "/")?;
            write_prec(f, r, 3)
        }
        Expr::Pow(b, k) => {
            write_prec(f, b, 5)?;
            if *k >= 0 {
                write!(f, "^{k}")
            } else {
                write!(f, "^({k})")
            }
        }
        Expr::Call(name, args) => {
            write!(f, "{name}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write_prec(f, a, 0)?;
            }
            write!(f, ")")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(f, self, 0)
    }
}

impl Expr {
    /// Every function name called anywhere in this expression.
    pub fn called_names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Call(name, args) => {
                out.push(name.clone());
                for a in args {
                    a.called_names(out);
                }
            }
            Expr::Neg(e) | Expr::Pow(e, _) => e.called_names(out),
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                l.called_names(out);
                r.called_names(out);
            }
            Expr::Int(..) | Expr::Sym(..) | Expr::QPow(..) | Expr::Inf => {}
        }
    }
}
