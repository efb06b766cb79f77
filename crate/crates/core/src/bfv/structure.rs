use crate::algebra::{Element, Family, Gen, Roster, Substitution};
use crate::bracket::{bracket, derived_poisson, ensure_function, pairing_g};
use crate::error::{Error, Result};
use crate::linfty::push_mc;
use crate::transfer::{Contraction, HomotopyTransfer};

use super::instance::Instance;

/// Result of the coisotropy test: the first pair `{y_μ, y_ν}` whose
/// bracket does not vanish on `S`, with its restriction to `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coisotropy {
    pub witness: Option<(u16, u16, Element)>,
}

impl Coisotropy {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// `S = {y = 0}` is coisotropic iff `{y_μ, y_ν}_Π` lies in the ideal
/// `(y₁,…,y_k)` for all `μ < ν`.
pub fn check_coisotropic(inst: &Instance) -> Result<Coisotropy> {
    let r = inst.roster();
    let k = r.k_fiber() as u16;
    for mu in 1..=k {
        for nu in mu + 1..=k {
            let yb = derived_poisson(inst.pi(), &Element::gen(r, Gen::y(mu)), &Element::gen(r, Gen::y(nu)))?;
            let on_s = yb.set_to_zero(|g| g.family == Family::Y);
            if !on_s.is_zero() {
                return Ok(Coisotropy {
                    witness: Some((mu, nu, on_s)),
                });
            }
        }
    }
    Ok(Coisotropy { witness: None })
}

/// The horizontal lift of the instance's connection.
pub fn lift_phi(inst: &Instance) -> Substitution {
    inst.connection().lift()
}

/// The corrected Poisson structure `P̂ = G + φ(Π) + Δ` on the full
/// algebra, certified by `[P̂,P̂] = 0` and `Δ ∈ V^(1,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfvStructure {
    instance: Instance,
    p_hat: Element,
    phi: Substitution,
    delta: Element,
}

/// Construct `P̂` by pushing `Π` through the transfer quasi-isomorphism.
pub fn build_poisson(inst: &Instance) -> Result<BfvStructure> {
    let r = inst.roster();
    let transfer = HomotopyTransfer::for_connection(inst.connection())?;
    let w = push_mc(&transfer.quasi_iso(), &transfer.induced(), transfer.dgla(), inst.pi())?;
    let phi = lift_phi(inst);
    let phi_pi = transfer.contraction().i(inst.pi());
    let delta = &w - &phi_pi;
    let p_hat = &pairing_g(r) + &w;
    let s = BfvStructure {
        instance: inst.clone(),
        p_hat,
        phi,
        delta,
    };
    s.certify()?;
    Ok(s)
}

impl BfvStructure {
    /// Re-run the defining checks.
    pub fn certify(&self) -> Result<()> {
        let residual = bracket(&self.p_hat, &self.p_hat);
        if !residual.is_zero() {
            return Err(Error::invariant(format!("[P̂,P̂] = {residual}")));
        }
        if !self.delta.filtration_index().at_least(1, 1) {
            return Err(Error::invariant(format!(
                "Δ = {} has filtration {} below (1,1)",
                self.delta,
                self.delta.filtration_index()
            )));
        }
        if self.instance.connection().is_flat() && !self.delta.is_zero() {
            return Err(Error::invariant(format!("flat connection with Δ = {}", self.delta)));
        }
        let decomposed = &(&pairing_g(self.roster()) + &self.phi.apply(self.instance.pi())) + &self.delta;
        if decomposed != self.p_hat {
            return Err(Error::invariant("P̂ ≠ G + φ(Π) + Δ".to_string()));
        }
        Ok(())
    }

    pub fn roster(&self) -> Roster {
        self.instance.roster()
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn p_hat(&self) -> &Element {
        &self.p_hat
    }

    pub fn phi(&self) -> &Substitution {
        &self.phi
    }

    pub fn delta(&self) -> &Element {
        &self.delta
    }

    /// Rebuild from stored parts (e.g. after deserialization) and certify.
    pub fn from_parts(instance: Instance, p_hat: Element, delta: Element) -> Result<Self> {
        let phi = lift_phi(&instance);
        let s = BfvStructure {
            instance,
            p_hat,
            phi,
            delta,
        };
        s.certify()?;
        Ok(s)
    }

    /// `{f,g}_BFV = −[[P̂,f],g]` on functions.
    pub fn bracket(&self, f: &Element, g: &Element) -> Result<Element> {
        ensure_function(f)?;
        ensure_function(g)?;
        derived_poisson(&self.p_hat, f, g)
    }
}

/// `{f,g}_BFV`.
pub fn bfv_bracket(s: &BfvStructure, f: &Element, g: &Element) -> Result<Element> {
    s.bracket(f, g)
}
