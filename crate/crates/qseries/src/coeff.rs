//! Coefficients: exact Laurent polynomials in the declared symbols.
//!
//! A [`Coeff`] is a finite sum of monomials `c · x₁^{e₁} ⋯ x_k^{e_k}` with
//! `c` a big rational and integer exponents of either sign. The zero
//! polynomial is the empty sum. All arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::symbol::Symbol;

/// Exact scalar.
pub type Rat = BigRational;

/// Exponent vector over symbols: sorted by symbol, no zero exponents.
pub type SymPows = Vec<(Symbol, i32)>;

/// Multiply two exponent vectors (add exponents), dropping cancellations.
pub fn mul_pows(a: &SymPows, b: &SymPows) -> SymPows {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Raise an exponent vector to an integer power (possibly negative).
pub fn pow_pows(a: &SymPows, n: i32) -> SymPows {
    if n == 0 {
        return Vec::new();
    }
    a.iter().map(|&(s, e)| (s, e * n)).collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Coeff {
    terms: BTreeMap<SymPows, Rat>,
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::default()
    }

    pub fn one() -> Coeff {
        Coeff::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Coeff {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Coeff { terms }
    }

    pub fn from_int(n: i64) -> Coeff {
        Coeff::from_rat(Rat::from_integer(n.into()))
    }

    pub fn from_term(pows: SymPows, c: Rat) -> Coeff {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(pows, c);
        }
        Coeff { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rat().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The scalar value, if this coefficient has no symbol content.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.terms.len() == 1 {
            let (pows, c) = self.terms.iter().next().unwrap();
            if pows.is_empty() {
                return Some(c);
            }
        }
        if self.terms.is_empty() {
            return None; // zero is handled by is_zero
        }
        None
    }

    /// The single `(pows, scalar)` term, if this is a monomial coefficient.
    pub fn as_single_term(&self) -> Option<(&SymPows, &Rat)> {
        if self.terms.len() == 1 {
            let (p, c) = self.terms.iter().next().unwrap();
            Some((p, c))
        } else {
            None
        }
    }

    pub fn uses_symbols(&self) -> bool {
        self.terms.keys().any(|p| !p.is_empty())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymPows, &Rat)> {
        self.terms.iter()
    }

    pub fn add_assign(&mut self, other: &Coeff) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone());
        }
    }

    pub fn add_term(&mut self, pows: SymPows, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(pows) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn neg(&self) -> Coeff {
        Coeff {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                out.add_term(mul_pows(pa, pb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, pows: &SymPows, c: &Rat) -> Coeff {
        if c.is_zero() {
            return Coeff::zero();
        }
        Coeff {
            terms: self
                .terms
                .iter()
                .map(|(p, k)| (mul_pows(p, pows), k * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Coeff {
        self.mul_term(&Vec::new(), c)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (pows, c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag_is_one = mag.is_one();
            if !mag_is_one || pows.is_empty() {
                write!(f, "{mag}")?;
                if !pows.is_empty() {
                    f.write_str("*")?;
                }
            }
            let mut first_pow = true;
            for (s, e) in pows {
                if !first_pow {
                    f.write_str("*")?;
                }
                first_pow = false;
                if *e == 1 {
                    write!(f, "{s}")?;
                } else {
                    write!(f, "{s}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: &str) -> Symbol {
        Symbol::new(n)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let x = sym("x");
        let mut a = Coeff::from_term(vec![(x, 1)], Rat::from_integer(2.into()));
        a.add_assign(&Coeff::one());
        // (1 + 2x) - 2x = 1
        let b = a.sub(&Coeff::from_term(vec![(x, 1)], Rat::from_integer(2.into())));
        assert!(b.is_one());
        // (1 + 2x)(1 - 2x) = 1 - 4x^2
        let c = a.mul(&{
            let mut m = Coeff::one();
            m.add_term(vec![(x, 1)], Rat::from_integer((-2).into()));
            m
        });
        let mut expect = Coeff::one();
        expect.add_term(vec![(x, 2)], Rat::from_integer((-4).into()));
        assert_eq!(c, expect);
    }

    #[test]
    fn display_is_deterministic() {
        let x = sym("x");
        let y = sym("y");
        let mut a = Coeff::from_int(-1);
        a.add_term(vec![(x, 2), (y, -1)], Rat::new(3.into(), 2.into()));
        a.add_term(vec![(y, 1)], Rat::from_integer(1.into()));
        assert_eq!(a.to_string(), "-1 + 3/2*x^2*y^-1 + y");
    }
}
