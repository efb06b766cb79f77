use crate::algebra::{Element, Family, Gen, Monomial, Rational, Roster, Side, Substitution};
use crate::bracket::{bracket, derived_poisson, omega0, pairing_g};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::sampling::{Sampler, Shape};

/// Contraction data `(i, pr, h)` for a differential `d` on a subalgebra of
/// the full generator algebra. The cohomology carrier is represented inside
/// the same roster.
pub trait Contraction {
    fn roster(&self) -> Roster;
    fn d(&self, a: &Element) -> Element;
    fn h(&self, a: &Element) -> Element;
    fn i(&self, a: &Element) -> Element;
    fn pr(&self, a: &Element) -> Element;
    /// Generators spanning the complex the contraction lives on.
    fn domain(&self) -> Vec<Gen>;
    /// When `h` raises the `V^(r,s)` filtration by `(1,1)`: the largest
    /// number of `h` applications that can give a non-zero value.
    fn homotopy_bound(&self) -> Option<usize> {
        None
    }
}

/// Defects of the contraction identities on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionDefects {
    /// `dh + hd − id + i∘pr`
    pub homotopy: Element,
    pub hh: Element,
    pub pr_h: Element,
    /// `h∘i∘pr` (`h∘i` on carrier elements)
    pub h_i: Element,
    /// `pr∘i∘pr − pr`
    pub pr_i: Element,
}

impl ContractionDefects {
    pub fn is_zero(&self) -> bool {
        self.homotopy.is_zero() && self.hh.is_zero() && self.pr_h.is_zero() && self.h_i.is_zero() && self.pr_i.is_zero()
    }
}

pub fn contraction_defects<C: Contraction + ?Sized>(c: &C, a: &Element) -> ContractionDefects {
    let ha = c.h(a);
    let pa = c.pr(a);
    let ipa = c.i(&pa);
    let homotopy = &(&(&c.d(&ha) + &c.h(&c.d(a))) - a) + &ipa;
    ContractionDefects {
        homotopy,
        hh: c.h(&ha),
        pr_h: c.pr(&ha),
        h_i: c.h(&ipa),
        pr_i: &c.pr(&ipa) - &pa,
    }
}

/// Check all identities on `samples` random monomials over the domain.
pub fn certify<C: Contraction + ?Sized>(c: &C, samples: usize, seed: u64) -> Result<()> {
    let mut s = Sampler::new(seed);
    let gens = c.domain();
    let shape = Shape {
        max_factors: 5,
        max_poly_degree: 3,
        max_terms: 1,
    };
    for _ in 0..samples {
        let a = s.monomial(c.roster(), &gens, shape);
        let defects = contraction_defects(c, &a);
        if !defects.is_zero() {
            return Err(Error::invariant(format!(
                "contraction identities fail on {a}: {defects:?}"
            )));
        }
    }
    Ok(())
}

fn euler_weight(m: &Monomial, legs: &[Family]) -> u32 {
    m.factors()
        .iter()
        .filter(|(g, _)| legs.contains(&g.family))
        .map(|&(_, e)| e)
        .sum()
}

/// Apply `op` and divide each resulting monomial's contribution by the Euler
/// weight of the monomial it came from.
fn euler_normalized(a: &Element, legs: &[Family], op: impl Fn(&Element) -> Element) -> Element {
    a.map_terms(|m, c| {
        let n = euler_weight(m, legs);
        if n == 0 {
            return Element::zero(a.roster());
        }
        let term = Element::from_term(a.roster(), m.clone(), c.clone());
        op(&term).scale(&Rational::new(1.into(), n.into()))
    })
}

/// Contraction of `(full algebra, [G,·])` onto the multivector fields on
/// `E`, i.e. the `(x, y, xd, yd)`-subalgebra.
///
/// `h = K/N` with `K = Σ c^μ ∂/∂bd_μ − b_μ ∂/∂cd_μ` and `N` the number of
/// `c, b, cd, bd` legs.
#[derive(Clone, Debug)]
pub struct KoszulG {
    roster: Roster,
    g: Element,
}

const GHOST_LEGS: [Family; 4] = [Family::C, Family::B, Family::CDag, Family::BDag];

impl KoszulG {
    pub fn new(roster: Roster) -> Self {
        KoszulG {
            roster,
            g: pairing_g(roster),
        }
    }

    /// Construct and certify on `samples` random monomials.
    pub fn certified(roster: Roster, samples: usize) -> Result<Self> {
        let c = KoszulG::new(roster);
        certify(&c, samples, 0x6b6f737a)?;
        Ok(c)
    }

    /// The unnormalized operator `K`.
    pub fn k(&self, a: &Element) -> Element {
        let r = self.roster;
        let mut out = Element::zero(r);
        for mu in 1..=r.k_fiber() as u16 {
            let dbd = a.graded_derivative(Gen::bd(mu), Side::Left);
            if !dbd.is_zero() {
                out.add_assign_ref(&(&Element::gen(r, Gen::c(mu)) * &dbd));
            }
            let dcd = a.graded_derivative(Gen::cd(mu), Side::Left);
            if !dcd.is_zero() {
                out.sub_assign_ref(&(&Element::gen(r, Gen::b(mu)) * &dcd));
            }
        }
        out
    }
}

impl Contraction for KoszulG {
    fn roster(&self) -> Roster {
        self.roster
    }
    fn d(&self, a: &Element) -> Element {
        bracket(&self.g, a)
    }
    fn h(&self, a: &Element) -> Element {
        euler_normalized(a, &GHOST_LEGS, |t| self.k(t))
    }
    fn i(&self, a: &Element) -> Element {
        a.clone()
    }
    fn pr(&self, a: &Element) -> Element {
        a.set_to_zero(|g| GHOST_LEGS.contains(&g.family))
    }
    fn domain(&self) -> Vec<Gen> {
        self.roster.generators()
    }
    fn homotopy_bound(&self) -> Option<usize> {
        Some(self.roster.k_fiber())
    }
}

/// The `G`-contraction transported by the horizontal lift of a connection:
/// `i = φ∘ι`, `h = φ∘H∘φ⁻¹`, `pr = Pr∘φ⁻¹`.
#[derive(Clone, Debug)]
pub struct LiftedKoszulG {
    base: KoszulG,
    phi: Substitution,
    phi_inv: Substitution,
}

impl LiftedKoszulG {
    pub fn new(connection: &Connection) -> Self {
        LiftedKoszulG {
            base: KoszulG::new(connection.roster()),
            phi: connection.lift(),
            phi_inv: connection.lift_inverse(),
        }
    }

    pub fn certified(connection: &Connection, samples: usize) -> Result<Self> {
        let c = LiftedKoszulG::new(connection);
        certify(&c, samples, 0x6c696674)?;
        Ok(c)
    }

    pub fn phi(&self) -> &Substitution {
        &self.phi
    }

    pub fn phi_inv(&self) -> &Substitution {
        &self.phi_inv
    }

    pub fn untwisted(&self) -> &KoszulG {
        &self.base
    }
}

impl Contraction for LiftedKoszulG {
    fn roster(&self) -> Roster {
        self.base.roster
    }
    fn d(&self, a: &Element) -> Element {
        self.base.d(a)
    }
    fn h(&self, a: &Element) -> Element {
        self.phi.apply(&self.base.h(&self.phi_inv.apply(a)))
    }
    fn i(&self, a: &Element) -> Element {
        self.phi.apply(a)
    }
    fn pr(&self, a: &Element) -> Element {
        self.base.pr(&self.phi_inv.apply(a))
    }
    fn domain(&self) -> Vec<Gen> {
        self.base.domain()
    }
    fn homotopy_bound(&self) -> Option<usize> {
        self.base.homotopy_bound()
    }
}

/// Contraction of the daggered-free algebra with the Koszul differential
/// `δ = {Ω₀,·}_G` (`b_μ ↦ y_μ`) onto polynomials in `x, c`.
///
/// `h = (Σ b_μ ∂/∂y_μ)/(deg_y + deg_b)`.
#[derive(Clone, Debug)]
pub struct KoszulDelta {
    roster: Roster,
    g: Element,
    omega0: Element,
}

const DELTA_LEGS: [Family; 2] = [Family::Y, Family::B];

impl KoszulDelta {
    pub fn new(roster: Roster) -> Self {
        KoszulDelta {
            roster,
            g: pairing_g(roster),
            omega0: omega0(roster),
        }
    }

    pub fn certified(roster: Roster, samples: usize) -> Result<Self> {
        let c = KoszulDelta::new(roster);
        certify(&c, samples, 0x64656c74)?;
        Ok(c)
    }

    /// The unnormalized operator `Σ b_μ ∂/∂y_μ`.
    pub fn k(&self, a: &Element) -> Element {
        let r = self.roster;
        let mut out = Element::zero(r);
        for mu in 1..=r.k_fiber() as u16 {
            let dy = a.graded_derivative(Gen::y(mu), Side::Left);
            if !dy.is_zero() {
                out.add_assign_ref(&(&Element::gen(r, Gen::b(mu)) * &dy));
            }
        }
        out
    }
}

impl Contraction for KoszulDelta {
    fn roster(&self) -> Roster {
        self.roster
    }
    fn d(&self, a: &Element) -> Element {
        derived_poisson(&self.g, &self.omega0, a).expect("δ acts on functions")
    }
    fn h(&self, a: &Element) -> Element {
        euler_normalized(a, &DELTA_LEGS, |t| self.k(t))
    }
    fn i(&self, a: &Element) -> Element {
        a.clone()
    }
    fn pr(&self, a: &Element) -> Element {
        a.set_to_zero(|g| DELTA_LEGS.contains(&g.family))
    }
    fn domain(&self) -> Vec<Gen> {
        self.roster.function_generators()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    #[test]
    fn delta_examples() {
        let r = Roster::new(1, 2);
        let c = KoszulDelta::new(r);
        let p = |s: &str| parse_element(r, s).unwrap();
        assert_eq!(c.d(&p("b1")), p("y1"));
        assert_eq!(c.h(&p("y1")), p("b1"));
        let a = p("y1 b2");
        assert_eq!(&c.d(&c.h(&a)) + &c.h(&c.d(&a)), a);
        assert!(c.pr(&a).is_zero());
        assert!(c.h(&p("x1 c1")).is_zero());
    }

    #[test]
    fn g_examples() {
        let r = Roster::new(1, 2);
        let c = KoszulG::new(r);
        let p = |s: &str| parse_element(r, s).unwrap();
        assert_eq!(c.pr(&c.i(&p("yd1 yd2"))), p("yd1 yd2"));
        assert_eq!(c.d(&p("c1")), p("bd1"));
        assert_eq!(c.h(&p("bd1")), p("c1"));
        assert_eq!(c.h(&p("cd1")), p("-b1"));
    }

    #[test]
    fn certification() {
        KoszulG::certified(Roster::new(1, 2), 100).unwrap();
        KoszulDelta::certified(Roster::new(1, 2), 100).unwrap();
        let r = Roster::new(1, 1);
        let conn = Connection::new(r, [((1, 1, 1), parse_element(r, "x1").unwrap())]).unwrap();
        LiftedKoszulG::certified(&conn, 100).unwrap();
    }
}
