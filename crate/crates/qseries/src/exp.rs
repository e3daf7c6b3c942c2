//! Exponents of q: exact rationals with small denominators.

use num_rational::Ratio;

/// A q-exponent. Series exponents are rationals `n/D` with a fixed per-series
/// denominator `D`; truncation orders and moduli use the same type.
pub type Exp = Ratio<i64>;

/// Integer exponent.
pub fn exp(n: i64) -> Exp {
    Ratio::from_integer(n)
}

/// Rational exponent `n/d`.
pub fn exp_frac(n: i64, d: i64) -> Exp {
    Ratio::new(n, d)
}

/// Falling binomial `C(n,2) = n(n−1)/2`, valid for any integer `n`.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}
