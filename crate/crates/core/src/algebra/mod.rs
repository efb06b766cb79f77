//! Graded-commutative polynomial superalgebra over exact rationals.

mod element;
mod generator;
mod monomial;
mod parse;
mod subst;
mod tpoly;

pub use element::{Degrees, Element, FiltrationIndex, Side};
pub use generator::{Family, Gen, Roster};
pub use monomial::Monomial;
pub use parse::parse_element;
pub use subst::{SubstTarget, Substitution};
pub use tpoly::TPoly;

/// Exact coefficient field.
pub type Rational = num_rational::BigRational;

/// `p/q` as a [`Rational`].
pub fn q(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
