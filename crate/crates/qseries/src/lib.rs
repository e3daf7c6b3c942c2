//! Exact arithmetic for truncated q-series.
//!
//! The crate provides, in layers:
//!
//! 1. [`series`] — sparse Laurent series in `q^(1/D)` with exact rational
//!    coefficients that may involve declared formal symbols, and truncation
//!    bookkeeping that survives multiplication and inversion;
//! 2. [`products`] — q-Pochhammer symbols and theta functions with the
//!    standard quasi-periodicity normalization;
//! 3. [`appell`] — Appell-Lerch sums: the unnormalized level-ℓ bilateral
//!    series, the normalized `m(x, q^M, z)`, and the change-of-`z` correction
//!    term;
//! 4. [`indefinite`] — indefinite binary theta series `f_{a,b,c}` and the
//!    Hickerson-Mortenson decomposition into Appell-Lerch parts plus a theta
//!    quotient;
//! 5. [`bailey`] — Bailey pairs, chain steps with optional `ρ → ∞`
//!    specializations, the resulting limiting identities, and two
//!    partial-theta lemmas;
//! 6. [`catalog`] — named classical series (mock theta functions, false theta
//!    sums, transformation sides) used by the verifier suite.

pub mod appell;
pub mod bailey;
pub mod catalog;
pub mod coeff;
pub mod error;
pub mod exp;
pub mod indefinite;
pub mod monomial;
pub mod products;
pub mod series;
pub mod symbol;

pub use coeff::{Coeff, Rat};
pub use error::{Error, Result};
pub use exp::{exp, exp_frac, Exp};
pub use monomial::Monomial;
pub use series::{compute_to, sum_until_stable, EqOutcome, QSeries, Trunc};
pub use symbol::Symbol;

// Replay the guide's and README's code blocks as doc-tests so neither can
// drift from the API.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub struct $name;
        };
    }
    chapter!(Readme, "../../../README.md");
    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(Series, "../../../book/src/series.md");
    chapter!(Products, "../../../book/src/products.md");
    chapter!(Appell, "../../../book/src/appell.md");
    chapter!(Indefinite, "../../../book/src/indefinite.md");
    chapter!(Bailey, "../../../book/src/bailey.md");
    chapter!(Catalog, "../../../book/src/catalog.md");
}
