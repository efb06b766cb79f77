use crate::algebra::{Element, Rational, Roster, Substitution, TPoly};
use crate::bracket::pairing_g;
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::linfty::{ev, Carrier, DgLa, IntervalElement, IntervalStructure, LInfty, LInftyMorphism};

use super::contraction::{Contraction, KoszulG, LiftedKoszulG};
use super::homotopy::{HomotopyTransfer, CERTIFICATION_SAMPLES};
use super::tree::{DecoratedTree, Root, TreeAlgebra};

/// Interval-valued transfer for the affine family of connections
/// `Γ_t = Γ₀ + t(Γ₁ − Γ₀)`: an L∞ quasi-isomorphism from multivector fields
/// on `E` into `(full algebra) ⊗ Ω(I)` whose evaluations at `t = 0, 1` are
/// the quasi-isomorphisms for `Γ₀` and `Γ₁`.
///
/// Decorations: leaves `φ_t`, edges `−h_t` with `h_t = φ_t∘H∘φ_t⁻¹`, and at
/// most one bivalent vertex carrying the de Rham differential.
#[derive(Clone, Debug)]
pub struct IntervalTransfer {
    roster: Roster,
    base: KoszulG,
    phi: Substitution<TPoly>,
    phi_inv: Substitution<TPoly>,
    target: IntervalStructure,
    ends: [HomotopyTransfer<LiftedKoszulG>; 2],
}

impl IntervalTransfer {
    pub fn new(g0: &Connection, g1: &Connection) -> Result<Self> {
        let r = g0.roster();
        if g1.roster() != r {
            return Err(Error::RosterMismatch {
                left: r,
                right: g1.roster(),
            });
        }
        let base = KoszulG::certified(r, CERTIFICATION_SAMPLES)?;
        Ok(IntervalTransfer {
            roster: r,
            base,
            phi: Connection::lift_family(g0, g1, false),
            phi_inv: Connection::lift_family(g0, g1, true),
            target: IntervalStructure::new(DgLa::big(r, Some(pairing_g(r)))),
            ends: [
                HomotopyTransfer::for_connection(g0)?,
                HomotopyTransfer::for_connection(g1)?,
            ],
        })
    }

    pub fn roster(&self) -> Roster {
        self.roster
    }

    /// The target L∞[1] structure on interval forms.
    pub fn target(&self) -> &IntervalStructure {
        &self.target
    }

    /// Transfer at `t = 0` (`end = 0`) or `t = 1` (`end = 1`).
    pub fn endpoint(&self, end: usize) -> &HomotopyTransfer<LiftedKoszulG> {
        &self.ends[end]
    }

    fn h_t(&self, a: &TPoly) -> TPoly {
        if a.is_zero() {
            return a.clone();
        }
        let pulled = self.phi_inv.apply_t(a);
        self.phi.apply_t(&pulled.map(|c| self.base.h(c)))
    }

    /// `h_t` applied to both parts of an interval form.
    pub fn homotopy_t(&self, a: &IntervalElement) -> IntervalElement {
        IntervalElement::new(self.h_t(&a.p), self.h_t(&a.q))
    }

    /// `φ_t(x)` as an interval form.
    pub fn include(&self, x: &Element) -> IntervalElement {
        IntervalElement::new(self.phi.apply_t(&TPoly::constant(x.clone())), TPoly::zero(self.roster))
    }

    fn check_args(&self, args: &[Element]) -> Result<()> {
        if args.is_empty() || args.len() > self.target.arity_bound() {
            return Err(Error::ArityBound {
                arity: args.len(),
                bound: self.target.arity_bound(),
            });
        }
        for a in args {
            a.check_roster(&Element::zero(self.roster))?;
            if self.base.pr(a) != *a {
                return Err(Error::Degree(format!("{a} is not a multivector field on E")));
            }
        }
        Ok(())
    }

    fn tree_sum(&self, args: &[Element]) -> Result<IntervalElement> {
        let idx: Vec<usize> = (0..args.len()).collect();
        let mut out = IntervalElement::zero(self.roster);
        for t in DecoratedTree::enumerate(&idx, 1) {
            out.add_assign_ref(&t.evaluate(self, args, Root::Homotopy)?);
        }
        Ok(out)
    }

    /// Taylor component `F̂_k(args)`.
    pub fn component(&self, args: &[Element]) -> Result<IntervalElement> {
        self.check_args(args)?;
        self.tree_sum(args)
    }

    /// Check `ev₀ ∘ F̂ = F⁽⁰⁾` and `ev₁ ∘ F̂ = F⁽¹⁾` on `args`.
    pub fn certify_endpoints(&self, args: &[Element]) -> Result<()> {
        let value = self.component(args)?;
        for (s, end) in [(0, &self.ends[0]), (1, &self.ends[1])] {
            let at = ev(&Rational::from_integer(s.into()), &value);
            let expect = end.quasi_iso_component(args)?;
            if at != expect {
                return Err(Error::invariant(format!(
                    "interval transfer at t = {s}: {at} differs from the endpoint transfer {expect}"
                )));
            }
        }
        Ok(())
    }

    /// `Σ_n (1/n!) F̂_n(v,…,v)` split by arity for degree-zero `v`:
    /// `a_n = A_n − h_t d(A_n)` with `A_1 = φ_t(v)` and
    /// `A_n = −h_t(½ Σ_k μ̃²(a_k, a_{n−k}))`.
    pub fn diagonal_terms(&self, v: &Element) -> Result<Vec<IntervalElement>> {
        self.check_args(std::slice::from_ref(v))?;
        if self.degree(v)? != 0 {
            return Err(Error::Degree(format!("{v} does not have shifted degree 0")));
        }
        let half = Rational::new(1.into(), 2.into());
        let mut terms: Vec<IntervalElement> = Vec::new();
        for n in 1..=self.top_arity() {
            let a = if n == 1 {
                self.include(v)
            } else {
                let mut sum = IntervalElement::zero(self.roster);
                for k in 1..n {
                    sum.add_assign_ref(&self.target.mu(&[terms[k - 1].clone(), terms[n - k - 1].clone()])?);
                }
                self.homotopy_t(&sum.scale(&half)).scale(&minus_one())
            };
            let mut term = a.clone();
            term.add_assign_ref(&self.homotopy_t(&self.de_rham(&a)).scale(&minus_one()));
            terms.push(term);
        }
        Ok(terms)
    }

    fn de_rham(&self, a: &IntervalElement) -> IntervalElement {
        let dgla = self.target.base();
        IntervalElement::new(TPoly::zero(self.roster), a.p.derivative().map(|c| dgla.twist(c)))
    }

    fn top_arity(&self) -> usize {
        (self.roster.k_fiber() + 1).min(self.target.arity_bound())
    }
}

fn minus_one() -> Rational {
    Rational::from_integer((-1).into())
}

impl TreeAlgebra for IntervalTransfer {
    type Src = Element;
    type Tgt = IntervalElement;

    fn degree(&self, x: &Element) -> Result<i32> {
        self.target.base().degree(x)
    }
    fn leaf(&self, x: &Element) -> Result<IntervalElement> {
        Ok(self.include(x))
    }
    fn bracket(&self, a: &IntervalElement, b: &IntervalElement) -> Result<IntervalElement> {
        self.target.mu(&[a.clone(), b.clone()])
    }
    fn homotopy(&self, a: &IntervalElement) -> IntervalElement {
        self.homotopy_t(a)
    }
    fn bivalent(&self, a: &IntervalElement) -> Result<IntervalElement> {
        Ok(self.de_rham(a))
    }
    fn filtration_holds(&self, value: &IntervalElement, e: usize) -> bool {
        let e = e as i32;
        value
            .p
            .coeffs()
            .iter()
            .chain(value.q.coeffs())
            .all(|c| c.filtration_index().at_least(e, e))
    }
    fn homotopy_bound(&self) -> Option<usize> {
        Some(self.roster.k_fiber())
    }
}

impl LInftyMorphism for IntervalTransfer {
    type Src = Element;
    type Tgt = IntervalElement;

    fn component(&self, args: &[Element]) -> Result<IntervalElement> {
        IntervalTransfer::component(self, args)
    }
    fn arity_bound(&self) -> usize {
        self.target.arity_bound()
    }
    fn top_arity(&self) -> usize {
        IntervalTransfer::top_arity(self)
    }
    fn target_zero(&self, _like: &Element) -> IntervalElement {
        IntervalElement::zero(self.roster)
    }
    fn diagonal(&self, v: &Element) -> Result<Vec<IntervalElement>> {
        self.diagonal_terms(v)
    }
}
