use crate::algebra::{Element, Family, Roster};
use crate::bracket::omega0;
use crate::error::{Error, Result};
use crate::transfer::{Contraction, KoszulDelta};

use super::structure::BfvStructure;

/// A BFV charge `Ω = Σ_{p≥1} Ω_p`, `Ω_p` of ghost bidegree `(p, p−1)`,
/// with `Ω₁ = Ω₀ = Σ y_μ c^μ` and `{Ω,Ω}_BFV = 0`.
///
/// A charge remembers the structure it was certified against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charge {
    omega: Element,
    structure: String,
}

/// Failure of the inductive construction: `pr(R_p) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub stage: usize,
    pub element: Element,
}

/// Outcome of the charge construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChargeOutcome {
    Charge(Charge),
    Obstruction(Obstruction),
}

impl ChargeOutcome {
    pub fn charge(self) -> Option<Charge> {
        match self {
            ChargeOutcome::Charge(c) => Some(c),
            ChargeOutcome::Obstruction(_) => None,
        }
    }
}

fn ghost_counts(m: &crate::algebra::Monomial) -> (u32, u32) {
    let mut nc = 0;
    let mut nb = 0;
    for &(g, e) in m.factors() {
        match g.family {
            Family::C => nc += e,
            Family::B => nb += e,
            _ => {}
        }
    }
    (nc, nb)
}

/// Build a charge stage by stage: `Ω_{p+1} = −h(R_p)` where `R_p` is the
/// `(p+1, p−1)` component of `½{Ω⁽ᵖ⁾,Ω⁽ᵖ⁾}_BFV` and `h` the Koszul
/// homotopy.
pub fn build_charge(s: &BfvStructure) -> Result<ChargeOutcome> {
    build_charge_with(s, &[])
}

/// As [`build_charge`], adding `δ(β_p)` to `Ω_p` for each supplied
/// `β_p` (`shifts[i]` is used for `Ω_{i+2}`; each `β_p` has degree 0 and
/// bidegree `(p, p)`). Different choices give gauge-equivalent charges.
pub fn build_charge_with(s: &BfvStructure, shifts: &[Element]) -> Result<ChargeOutcome> {
    let r = s.roster();
    let k = r.k_fiber();
    let delta = KoszulDelta::new(r);
    for (i, beta) in shifts.iter().enumerate() {
        let p = (i + 2) as u32;
        if beta.has_dagger() || beta.terms().any(|(m, _)| ghost_counts(m) != (p, p)) {
            return Err(Error::Degree(format!(
                "stage shift {beta} must be a function of ghost bidegree ({p},{p})"
            )));
        }
    }
    let half = crate::algebra::q(1, 2);
    let mut omega = omega0(r);
    for p in 1..=k {
        let square = s.bracket(&omega, &omega)?.scale(&half);
        let residual = square.bidegree_component(p as u32 + 1, p as u32 - 1);
        let on_s = delta.pr(&residual);
        if !on_s.is_zero() {
            return Ok(ChargeOutcome::Obstruction(Obstruction {
                stage: p,
                element: on_s,
            }));
        }
        let mut next = -delta.h(&residual);
        if let Some(beta) = shifts.get(p - 1) {
            next.add_assign_ref(&delta.d(beta));
        }
        omega.add_assign_ref(&next);
    }
    let charge = Charge::certified(s, omega)?;
    Ok(ChargeOutcome::Charge(charge))
}

impl Charge {
    /// Check the charge conditions against `s`.
    pub fn certified(s: &BfvStructure, omega: Element) -> Result<Self> {
        let r = s.roster();
        if omega.has_dagger() || omega.total_degree().is_some_and(|d| d != 1) || !omega.is_homogeneous() {
            return Err(Error::Degree(format!(
                "a charge is a function of degree 1, got {omega}"
            )));
        }
        let k = r.k_fiber() as u32;
        for (m, _) in omega.terms() {
            let (nc, nb) = ghost_counts(m);
            if nc == 0 || nc != nb + 1 || nc > k {
                return Err(Error::invariant(format!("charge term {m} has bidegree ({nc},{nb})")));
            }
        }
        let linear = omega.bidegree_component(1, 0);
        if linear != omega0(r) {
            return Err(Error::invariant(format!(
                "the (1,0) part of the charge is {linear}, not the tautological section"
            )));
        }
        let residual = s.bracket(&omega, &omega)?;
        if !residual.is_zero() {
            return Err(Error::invariant(format!("{{Ω,Ω}}_BFV = {residual}")));
        }
        Ok(Charge {
            omega,
            structure: structure_key(s),
        })
    }

    pub fn omega(&self) -> &Element {
        &self.omega
    }

    pub fn roster(&self) -> Roster {
        self.omega.roster()
    }

    /// `Ω_p`.
    pub fn component(&self, p: u32) -> Element {
        self.omega.bidegree_component(p, p.saturating_sub(1))
    }

    /// Whether this charge was certified against `s`.
    pub fn belongs_to(&self, s: &BfvStructure) -> bool {
        self.structure == structure_key(s)
    }

    pub fn ensure_belongs_to(&self, s: &BfvStructure) -> Result<()> {
        if self.belongs_to(s) {
            Ok(())
        } else {
            Err(Error::ChargeMismatch(format!(
                "Ω = {} was certified against a different P̂",
                self.omega
            )))
        }
    }
}

fn structure_key(s: &BfvStructure) -> String {
    crate::serial::digest(&s.p_hat().to_string())
}

/// `D(f) = {Ω, f}_BFV`.
pub fn bfv_differential(s: &BfvStructure, omega: &Charge, f: &Element) -> Result<Element> {
    omega.ensure_belongs_to(s)?;
    s.bracket(omega.omega(), f)
}
