use std::collections::BTreeMap;

use super::element::Element;
use super::generator::{Gen, Roster};
use super::monomial::Monomial;
use super::tpoly::TPoly;
use crate::error::{Error, Result};

/// Target of a substitution: anything that behaves like a graded algebra
/// containing the Elements as scalars.
pub trait SubstTarget: Clone {
    fn one_like(roster: Roster) -> Self;
    fn zero_like(roster: Roster) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn plus_assign(&mut self, other: &Self);
    fn scaled(&self, c: &super::Rational) -> Self;
    fn from_generator(roster: Roster, g: Gen) -> Self;
    fn from_monomial(roster: Roster, m: &Monomial, c: &super::Rational) -> Self;
}

impl SubstTarget for Element {
    fn one_like(roster: Roster) -> Self {
        Element::one(roster)
    }
    fn zero_like(roster: Roster) -> Self {
        Element::zero(roster)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn plus_assign(&mut self, other: &Self) {
        self.add_assign_ref(other)
    }
    fn scaled(&self, c: &super::Rational) -> Self {
        self.scale(c)
    }
    fn from_generator(roster: Roster, g: Gen) -> Self {
        Element::gen(roster, g)
    }
    fn from_monomial(roster: Roster, m: &Monomial, c: &super::Rational) -> Self {
        Element::monomial(roster, m.clone(), c.clone())
    }
}

impl SubstTarget for TPoly {
    fn one_like(roster: Roster) -> Self {
        TPoly::constant(Element::one(roster))
    }
    fn zero_like(roster: Roster) -> Self {
        TPoly::zero(roster)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn plus_assign(&mut self, other: &Self) {
        *self = self.add(other)
    }
    fn scaled(&self, c: &super::Rational) -> Self {
        self.scale(c)
    }
    fn from_generator(roster: Roster, g: Gen) -> Self {
        TPoly::constant(Element::gen(roster, g))
    }
    fn from_monomial(roster: Roster, m: &Monomial, c: &super::Rational) -> Self {
        TPoly::constant(Element::monomial(roster, m.clone(), c.clone()))
    }
}

/// Algebra morphism given by images of generators; unlisted generators are
/// fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution<T: SubstTarget = Element> {
    roster: Roster,
    images: BTreeMap<Gen, T>,
}

fn check_image(roster: Roster, g: Gen, image: &Element) -> Result<()> {
    if image.roster() != roster {
        return Err(Error::RosterMismatch {
            left: roster,
            right: image.roster(),
        });
    }
    if !roster.contains(g) {
        return Err(Error::UnknownGenerator(g.to_string(), roster));
    }
    if image.is_zero() {
        return Ok(());
    }
    match image.total_degree() {
        Some(d) if d == g.total_degree() => Ok(()),
        Some(d) => Err(Error::InvalidSubstitution {
            generator: g.to_string(),
            reason: format!("image {image} has degree {d}, expected {}", g.total_degree()),
        }),
        None => Err(Error::InvalidSubstitution {
            generator: g.to_string(),
            reason: format!("image {image} is inhomogeneous"),
        }),
    }
}

impl Substitution<Element> {
    /// Validates that every image is homogeneous of its generator's degree.
    pub fn new(roster: Roster, images: impl IntoIterator<Item = (Gen, Element)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (g, img) in images {
            check_image(roster, g, &img)?;
            if img != Element::gen(roster, g) {
                map.insert(g, img);
            }
        }
        Ok(Substitution { roster, images: map })
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Substitution) -> Substitution {
        assert_eq!(self.roster, first.roster);
        let mut images = BTreeMap::new();
        for g in self.roster.generators() {
            let img = self.apply(&first.image(g));
            if img != Element::gen(self.roster, g) {
                images.insert(g, img);
            }
        }
        Substitution {
            roster: self.roster,
            images,
        }
    }

    /// Identity on every generator in the roster.
    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }
}

impl Substitution<TPoly> {
    /// Substitution with `t`-dependent images; every coefficient of `t^k`
    /// must have the generator's degree.
    pub fn new_t(roster: Roster, images: impl IntoIterator<Item = (Gen, TPoly)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (g, img) in images {
            for c in img.coeffs() {
                check_image(roster, g, c)?;
            }
            map.insert(g, img);
        }
        Ok(Substitution { roster, images: map })
    }

    /// Evaluate the family at `t = s`.
    pub fn eval(&self, s: &super::Rational) -> Substitution<Element> {
        let images = self
            .images
            .iter()
            .map(|(g, img)| (*g, img.eval(s)))
            .filter(|(g, img)| *img != Element::gen(self.roster, *g))
            .collect();
        Substitution {
            roster: self.roster,
            images,
        }
    }

    /// Apply to every `t`-coefficient of `p` and multiply out.
    pub fn apply_t(&self, p: &TPoly) -> TPoly {
        let mut out = TPoly::zero(self.roster);
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = self.apply(c);
            let tk = TPoly::monomial(Element::one(self.roster), k);
            out = out.add(&img.mul(&tk));
        }
        out
    }
}

impl<T: SubstTarget> Substitution<T> {
    pub fn identity(roster: Roster) -> Self {
        Substitution {
            roster,
            images: BTreeMap::new(),
        }
    }

    pub fn roster(&self) -> Roster {
        self.roster
    }

    pub fn image(&self, g: Gen) -> T {
        self.images
            .get(&g)
            .cloned()
            .unwrap_or_else(|| T::from_generator(self.roster, g))
    }

    /// Generators whose image differs from themselves.
    pub fn moved(&self) -> impl Iterator<Item = (&Gen, &T)> {
        self.images.iter()
    }

    fn apply_monomial(&self, m: &Monomial, cache: &mut BTreeMap<(Gen, u32), T>) -> T {
        let mut acc = T::one_like(self.roster);
        for &(g, e) in m.factors() {
            let p = cache
                .entry((g, e))
                .or_insert_with(|| {
                    let base = self.image(g);
                    let mut p = base.clone();
                    for _ in 1..e {
                        p = p.times(&base);
                    }
                    p
                })
                .clone();
            acc = acc.times(&p);
        }
        acc
    }

    /// The unique algebra morphism extending the generator images.
    pub fn apply(&self, a: &Element) -> T {
        assert_eq!(a.roster(), self.roster, "roster mismatch");
        let mut out = T::zero_like(self.roster);
        let mut cache = BTreeMap::new();
        for (m, c) in a.terms() {
            if self.images.is_empty() || !m.contains_any(|g| self.images.contains_key(&g)) {
                out.plus_assign(&T::from_monomial(self.roster, m, c));
                continue;
            }
            out.plus_assign(&self.apply_monomial(m, &mut cache).scaled(c));
        }
        out
    }
}

impl Element {
    /// Convenience wrapper around [`Substitution::new`] and `apply`.
    pub fn substitute(&self, images: impl IntoIterator<Item = (Gen, Element)>) -> Result<Element> {
        let s = Substitution::new(self.roster(), images)?;
        Ok(s.apply(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    fn p(s: &str) -> Element {
        parse_element(Roster::new(1, 1), s).unwrap()
    }

    #[test]
    fn scaling() {
        let a = p("y1 c1").substitute([(Gen::y(1), p("2 y1"))]).unwrap();
        assert_eq!(a, p("2 y1 c1"));
    }

    #[test]
    fn identity_is_identity() {
        let a = p("x1^2 y1 xd1 c1 - cd1 bd1 + 3");
        assert_eq!(Substitution::<Element>::identity(a.roster()).apply(&a), a);
    }

    #[test]
    fn lifted_generator() {
        let img = p("xd1 - x1 c1 cd1 + x1 b1 bd1");
        let a = p("xd1").substitute([(Gen::xd(1), img.clone())]).unwrap();
        assert_eq!(a, img);
        assert_eq!(a.total_degree(), Some(1));
    }

    #[test]
    fn rejects_wrong_degree() {
        let err = p("y1").substitute([(Gen::c(1), p("y1"))]).unwrap_err();
        assert!(matches!(err, Error::InvalidSubstitution { .. }));
        let err = p("y1").substitute([(Gen::y(1), p("y1 + c1 b1 + xd1"))]).unwrap_err();
        assert!(matches!(err, Error::InvalidSubstitution { .. }));
        // zero images are allowed: evaluation maps
        assert!(p("y1 c1").substitute([(Gen::y(1), p("0"))]).unwrap().is_zero());
    }

    #[test]
    fn odd_images_keep_signs() {
        // swapping c1 -> -c1 flips c1 b1
        let a = p("c1 b1").substitute([(Gen::c(1), p("-c1"))]).unwrap();
        assert_eq!(a, p("-c1 b1"));
    }
}
