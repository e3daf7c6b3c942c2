//! Monomials `c · q^e · x₁^{a₁} ⋯ x_k^{a_k}`: the exactly-invertible scalars
//! of the engine. Product arguments, Appell-Lerch arguments and catalog
//! parameters are all monomials, so valuations can be read off without
//! expanding anything.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{mul_pows, pow_pows, Coeff, Rat, SymPows};
use crate::error::{Error, Result};
use crate::exp::{exp, Exp};
use crate::symbol::Symbol;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    coeff: Rat,
    q_exp: Exp,
    pows: SymPows,
}

impl Monomial {
    pub fn new(coeff: Rat, q_exp: Exp, pows: SymPows) -> Monomial {
        if coeff.is_zero() {
            Monomial {
                coeff,
                q_exp: exp(0),
                pows: Vec::new(),
            }
        } else {
            Monomial { coeff, q_exp, pows }
        }
    }

    pub fn one() -> Monomial {
        Monomial::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Monomial {
        Monomial::new(c, exp(0), Vec::new())
    }

    pub fn from_int(n: i64) -> Monomial {
        Monomial::from_rat(Rat::from_integer(n.into()))
    }

    pub fn q() -> Monomial {
        Monomial::q_pow(exp(1))
    }

    pub fn q_pow(e: Exp) -> Monomial {
        Monomial::new(Rat::one(), e, Vec::new())
    }

    pub fn sym(s: Symbol) -> Monomial {
        Monomial::new(Rat::one(), exp(0), vec![(s, 1)])
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn q_exp(&self) -> Exp {
        self.q_exp
    }

    pub fn pows(&self) -> &SymPows {
        &self.pows
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.q_exp.is_zero() && self.pows.is_empty()
    }

    pub fn uses_symbols(&self) -> bool {
        !self.pows.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            &self.coeff * &other.coeff,
            self.q_exp + other.q_exp,
            mul_pows(&self.pows, &other.pows),
        )
    }

    pub fn neg(&self) -> Monomial {
        Monomial::new(-&self.coeff, self.q_exp, self.pows.clone())
    }

    pub fn inv(&self) -> Result<Monomial> {
        if self.coeff.is_zero() {
            return Err(Error::NotInvertible("the zero monomial".into()));
        }
        Ok(Monomial::new(
            self.coeff.recip(),
            -self.q_exp,
            pow_pows(&self.pows, -1),
        ))
    }

    pub fn div(&self, other: &Monomial) -> Result<Monomial> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i32) -> Result<Monomial> {
        if n == 0 {
            return Ok(Monomial::one());
        }
        if self.coeff.is_zero() {
            if n < 0 {
                return Err(Error::NotInvertible("the zero monomial".into()));
            }
            return Ok(self.clone());
        }
        let mag = if n < 0 {
            self.coeff.recip()
        } else {
            self.coeff.clone()
        };
        let mut c = Rat::one();
        for _ in 0..n.unsigned_abs() {
            c *= &mag;
        }
        Ok(Monomial::new(
            c,
            self.q_exp * exp(n as i64),
            pow_pows(&self.pows, n),
        ))
    }

    /// Multiply by `q^e`.
    pub fn mul_q_pow(&self, e: Exp) -> Monomial {
        Monomial::new(self.coeff.clone(), self.q_exp + e, self.pows.clone())
    }

    /// Apply `q ↦ sign·q^k`. For `sign = −1` the q-exponent must be an
    /// integer so the sign twist `(−1)^e` is defined.
    pub fn substitute(&self, sign: i64, k: i64) -> Result<Monomial> {
        let mut c = self.coeff.clone();
        if sign == -1 {
            if !self.q_exp.is_integer() {
                return Err(Error::FractionalSignSubstitution {
                    denom: *self.q_exp.denom(),
                });
            }
            if self.q_exp.to_integer() % 2 != 0 {
                c = -c;
            }
        }
        Ok(Monomial::new(c, self.q_exp * exp(k), self.pows.clone()))
    }

    /// The coefficient part (scalar and symbol powers), as a [`Coeff`].
    pub fn coeff_part(&self) -> Coeff {
        Coeff::from_term(self.pows.clone(), self.coeff.clone())
    }

    /// Strict comparison with 1 of the scalar part, used by genericity checks.
    pub fn scalar_is(&self, v: i64) -> bool {
        self.pows.is_empty() && self.q_exp.is_zero() && self.coeff == Rat::from_integer(v.into())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return f.write_str("0");
        }
        let neg = self.coeff.is_negative();
        let mag: BigRational = if neg {
            -&self.coeff
        } else {
            self.coeff.clone()
        };
        if neg {
            f.write_str("-")?;
        }
        let mut wrote = false;
        if !mag.is_one() {
            write!(f, "{mag}")?;
            wrote = true;
        }
        if !self.q_exp.is_zero() {
            if wrote {
                f.write_str("*")?;
            }
            if self.q_exp.is_one() {
                f.write_str("q")?;
            } else if self.q_exp.is_integer() {
                write!(f, "q^{}", self.q_exp.numer())?;
            } else {
                write!(f, "q^({}/{})", self.q_exp.numer(), self.q_exp.denom())?;
            }
            wrote = true;
        }
        for (s, e) in &self.pows {
            if wrote {
                f.write_str("*")?;
            }
            wrote = true;
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}
