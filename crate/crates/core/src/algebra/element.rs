use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::generator::{Gen, Roster};
use super::monomial::Monomial;
use super::Rational;
use crate::error::{Error, Result};

/// Which side a graded derivative acts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Degree report for an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degrees {
    Zero,
    Homogeneous { total: i32, ghost: i32, momentum: i32 },
    Inhomogeneous,
}

impl Degrees {
    /// `total - (ghost - momentum)`; nonzero only when daggered generators
    /// contribute (each `cd` and `bd` adds one).
    pub fn residual(&self) -> Option<i32> {
        match *self {
            Degrees::Homogeneous { total, ghost, momentum } => Some(total - (ghost - momentum)),
            _ => None,
        }
    }
}

/// Componentwise minimum of ghost and momentum shifts over all monomials.
///
/// `None` components stand for +infinity (the zero element).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationIndex {
    pub ghost: Option<i32>,
    pub momentum: Option<i32>,
}

impl FiltrationIndex {
    pub const INFINITE: FiltrationIndex = FiltrationIndex {
        ghost: None,
        momentum: None,
    };

    pub fn new(ghost: i32, momentum: i32) -> Self {
        FiltrationIndex {
            ghost: Some(ghost),
            momentum: Some(momentum),
        }
    }

    /// Membership in `V^(r,s)`.
    pub fn at_least(&self, r: i32, s: i32) -> bool {
        self.ghost.is_none_or(|g| g >= r) && self.momentum.is_none_or(|m| m >= s)
    }
}

impl fmt::Display for FiltrationIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<i32>| v.map_or_else(|| "inf".to_string(), |v| v.to_string());
        write!(f, "({},{})", show(self.ghost), show(self.momentum))
    }
}

/// Graded-commutative polynomial over exact rationals in a fixed roster.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    roster: Roster,
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero(roster: Roster) -> Self {
        Element {
            roster,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(roster: Roster) -> Self {
        Element::constant(roster, Rational::one())
    }

    pub fn constant(roster: Roster, c: Rational) -> Self {
        Element::monomial(roster, Monomial::one(), c)
    }

    pub fn integer(roster: Roster, n: i64) -> Self {
        Element::constant(roster, Rational::from_integer(BigInt::from(n)))
    }

    /// A single generator. Panics if `g` is outside the roster.
    pub fn gen(roster: Roster, g: Gen) -> Self {
        assert!(roster.contains(g), "generator {g} outside roster {roster}");
        Element::monomial(roster, Monomial::generator(g), Rational::one())
    }

    /// `c * m`
    pub fn from_term(roster: Roster, m: Monomial, c: Rational) -> Self {
        Element::monomial(roster, m, c)
    }

    pub(crate) fn monomial(roster: Roster, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { roster, terms }
    }

    /// Normalize a coefficient times a word of generators.
    pub fn normalize(roster: Roster, coeff: Rational, word: &[Gen]) -> Result<Self> {
        for &g in word {
            if !roster.contains(g) {
                return Err(Error::UnknownGenerator(g.to_string(), roster));
            }
        }
        Ok(match Monomial::from_word(word) {
            None => Element::zero(roster),
            Some((neg, m)) => Element::monomial(roster, m, if neg { -coeff } else { coeff }),
        })
    }

    /// Product of generators with coefficient one. Panics outside the roster.
    pub fn word(roster: Roster, word: &[Gen]) -> Self {
        Element::normalize(roster, Rational::one(), word).expect("generator outside roster")
    }

    pub fn roster(&self) -> Roster {
        self.roster
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn check_roster(&self, other: &Element) -> Result<()> {
        if self.roster != other.roster {
            return Err(Error::RosterMismatch {
                left: self.roster,
                right: other.roster,
            });
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add_assign_ref(&mut self, other: &Element) {
        assert_eq!(self.roster, other.roster, "roster mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Element) {
        assert_eq!(self.roster, other.roster, "roster mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(self.roster);
        }
        Element {
            roster: self.roster,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Element {
        self.scale(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_roster(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    /// Graded-commutative product.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_roster(other)?;
        let mut out = Element::zero(self.roster);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn degrees(&self) -> Degrees {
        let mut it = self.terms.keys().map(|m| m.degrees());
        let Some(first) = it.next() else {
            return Degrees::Zero;
        };
        if it.all(|d| d == first) {
            Degrees::Homogeneous {
                total: first.0,
                ghost: first.1,
                momentum: first.2,
            }
        } else {
            Degrees::Inhomogeneous
        }
    }

    /// Total degree if all monomials share it; `None` for zero or mixed.
    pub fn total_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| m.total_degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.total_degree().is_some()
    }

    pub fn filtration_index(&self) -> FiltrationIndex {
        let mut idx = FiltrationIndex::INFINITE;
        for m in self.terms.keys() {
            let (g, mo) = m.shifts();
            idx.ghost = Some(idx.ghost.map_or(g, |v| v.min(g)));
            idx.momentum = Some(idx.momentum.map_or(mo, |v| v.min(mo)));
        }
        idx
    }

    /// Largest ghost shift over all monomials.
    pub fn max_ghost_shift(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.shifts().0).max()
    }

    pub fn has_dagger(&self) -> bool {
        self.terms.keys().any(|m| m.contains_any(|g| g.family.is_dagger()))
    }

    pub fn contains_generator(&self, pred: impl Fn(Gen) -> bool + Copy) -> bool {
        self.terms.keys().any(|m| m.contains_any(pred))
    }

    /// Keep the monomials satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            roster: self.roster,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Component of ghost bidegree `(#c, #b)`.
    pub fn bidegree_component(&self, p: u32, q: u32) -> Element {
        use super::generator::Family;
        self.filter(|m| {
            let mut nc = 0;
            let mut nb = 0;
            for &(g, e) in m.factors() {
                match g.family {
                    Family::C => nc += e,
                    Family::B => nb += e,
                    _ => {}
                }
            }
            nc == p && nb == q
        })
    }

    /// Signed graded partial derivative.
    pub fn graded_derivative(&self, g: Gen, side: Side) -> Element {
        let mut out = Element::zero(self.roster);
        for (m, c) in &self.terms {
            let d = match side {
                Side::Left => m.left_derivative(g),
                Side::Right => m.right_derivative(g),
            };
            if let Some((neg, mult, rest)) = d {
                let v = c * Rational::from_integer(BigInt::from(mult));
                out.add_term(rest, if neg { -v } else { v });
            }
        }
        out
    }

    /// Apply `f` to every (monomial, coefficient) and sum the results.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Rational) -> Element) -> Element {
        let mut out = Element::zero(self.roster);
        for (m, c) in &self.terms {
            out.add_assign_ref(&f(m, c));
        }
        out
    }

    /// Set every generator matching `kill` to zero.
    pub fn set_to_zero(&self, kill: impl Fn(Gen) -> bool + Copy) -> Element {
        self.filter(|m| !m.contains_any(kill))
    }

    /// Largest absolute numerator or denominator, a crude size measure.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .flat_map(|c| [c.numer().abs(), c.denom().abs()])
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({})", self.roster, self)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("roster mismatch")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            roster: self.roster,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// Panics on roster mismatch; use [`Element::try_mul`] for the fallible form.
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("roster mismatch")
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> Roster {
        Roster::new(1, 2)
    }

    fn g(g: Gen) -> Element {
        Element::gen(r(), g)
    }

    #[test]
    fn normalize_examples() {
        let one = Rational::one();
        assert!(Element::normalize(r(), one.clone(), &[Gen::c(1), Gen::c(1)])
            .unwrap()
            .is_zero());
        let bc = Element::normalize(r(), one.clone(), &[Gen::b(1), Gen::c(1)]).unwrap();
        let cb = Element::normalize(r(), one.clone(), &[Gen::c(1), Gen::b(1)]).unwrap();
        assert_eq!(bc, -cb);
        let xy = Element::normalize(r(), one.clone(), &[Gen::x(1), Gen::y(1)]).unwrap();
        let yx = Element::normalize(r(), one, &[Gen::y(1), Gen::x(1)]).unwrap();
        assert_eq!(xy, yx);
        assert_eq!(xy.to_string(), "x1 y1");
    }

    #[test]
    fn normalize_rejects_foreign_generator() {
        let err = Element::normalize(r(), Rational::one(), &[Gen::x(3)]).unwrap_err();
        assert!(matches!(err, Error::UnknownGenerator(..)));
    }

    #[test]
    fn mul_examples() {
        let cb = &g(Gen::c(1)) * &g(Gen::b(1));
        assert_eq!(cb.to_string(), "c1 b1");
        let a = &g(Gen::x(1)) + &cb;
        assert_eq!(&a * &Element::one(r()), a);
        assert!((&cb * &g(Gen::c(1))).is_zero());
    }

    #[test]
    fn mul_rejects_roster_mismatch() {
        let a = Element::one(Roster::new(0, 1));
        let b = Element::one(Roster::new(1, 1));
        assert!(matches!(a.try_mul(&b), Err(Error::RosterMismatch { .. })));
    }

    #[test]
    fn degree_examples() {
        let a = Element::word(r(), &[Gen::c(1), Gen::c(2), Gen::b(1)]);
        assert_eq!(
            a.degrees(),
            Degrees::Homogeneous {
                total: 1,
                ghost: 2,
                momentum: 1
            }
        );
        let a = Element::word(r(), &[Gen::cd(1), Gen::bd(1)]);
        assert_eq!(
            a.degrees(),
            Degrees::Homogeneous {
                total: 2,
                ghost: -1,
                momentum: -1
            }
        );
        assert_eq!(a.degrees().residual(), Some(2));
        let a = Element::word(r(), &[Gen::y(1), Gen::c(1)]);
        assert_eq!(
            a.degrees(),
            Degrees::Homogeneous {
                total: 1,
                ghost: 1,
                momentum: 0
            }
        );
        let mixed = &g(Gen::x(1)) + &g(Gen::c(1));
        assert_eq!(mixed.degrees(), Degrees::Inhomogeneous);
        assert_eq!(Element::zero(r()).degrees(), Degrees::Zero);
    }

    #[test]
    fn derivative_examples() {
        let cb = Element::word(r(), &[Gen::c(1), Gen::b(1)]);
        assert_eq!(cb.graded_derivative(Gen::c(1), Side::Left), g(Gen::b(1)));
        let bc = Element::word(r(), &[Gen::b(1), Gen::c(1)]);
        assert_eq!(bc.graded_derivative(Gen::c(1), Side::Left), -g(Gen::b(1)));
        let y2 = &g(Gen::y(1)) * &g(Gen::y(1));
        assert_eq!(y2.graded_derivative(Gen::y(1), Side::Left), g(Gen::y(1)).scale_int(2));
    }

    #[test]
    fn filtration_examples() {
        let a = Element::word(r(), &[Gen::c(1), Gen::b(1), Gen::y(1)]);
        assert_eq!(a.filtration_index(), FiltrationIndex::new(1, 1));
        let a = &Element::word(r(), &[Gen::y(1), Gen::c(1)]) + &Element::word(r(), &[Gen::c(1), Gen::c(2), Gen::b(1)]);
        assert_eq!(a.filtration_index(), FiltrationIndex::new(1, 0));
        assert_eq!(Element::zero(r()).filtration_index(), FiltrationIndex::INFINITE);
    }
}
