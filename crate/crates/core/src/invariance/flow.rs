use crate::algebra::{q, Element, Roster, Substitution, TPoly};
use crate::error::{Error, Result};
use crate::linfty::bracket_t;

use super::automorphism::{Automorphism, Domain};

/// Picard iterations allowed before a flow is declared non-terminating.
/// Each iteration raises the ghost shift by at least one, and ghost shifts
/// range over `[−k, k]`.
pub(crate) fn iteration_bound(roster: Roster) -> usize {
    2 * roster.k_fiber() + 3
}

/// Solve `X′(t) = [u(t), X(t)]`, `X(0) = x0`, by exact Picard iteration.
/// Returns `None` if the iteration does not stabilize within `bound` steps.
pub(crate) fn picard(u: &TPoly, x0: &Element, bound: usize) -> Option<TPoly> {
    let start = TPoly::constant(x0.clone());
    let mut x = start.clone();
    for _ in 0..=bound {
        let next = start.add(&bracket_t(u, &x).integral());
        if next == x {
            return Some(x);
        }
        x = next;
    }
    None
}

/// Automorphism `U(1)` of the flow of `u(t)` on the full algebra; the
/// inverse is the flow of `−u(1−t)`.
pub(crate) fn flow_automorphism(u: &TPoly, bound: usize, label: String) -> Result<Option<Automorphism>> {
    let r = u.roster();
    let back = u.reflect().neg();
    let mut forward = Vec::new();
    let mut inverse = Vec::new();
    for g in r.generators() {
        let z = Element::gen(r, g);
        let (Some(f), Some(b)) = (picard(u, &z, bound), picard(&back, &z, bound)) else {
            return Ok(None);
        };
        forward.push((g, f.eval(&q(1, 1))));
        inverse.push((g, b.eval(&q(1, 1))));
    }
    let aut = Automorphism::new(
        Substitution::new(r, forward)?,
        Substitution::new(r, inverse)?,
        Domain::Full,
        vec![label],
    )?;
    Ok(Some(aut))
}

/// Integrate the adjoint action of `u(t) ∈ V^(1,1)`: returns `X(1)` for
/// `X′ = [u, X]`, `X(0) = x0`, and the automorphism `U(1)` with
/// `U(1)(x0) = X(1)`.
pub fn integrate_flow(u: &TPoly, x0: &Element) -> Result<(Element, Automorphism)> {
    let r = u.roster();
    x0.check_roster(&Element::zero(r))?;
    for (k, c) in u.coeffs().iter().enumerate() {
        if !c.filtration_index().at_least(1, 1) {
            return Err(Error::Nilpotency(format!(
                "the t^{k} coefficient {c} of u has filtration {} below (1,1)",
                c.filtration_index()
            )));
        }
    }
    let bound = iteration_bound(r);
    let never = || Error::Termination(format!("flow of u(t) = {u} did not stabilize in {bound} iterations"));
    let x = picard(u, x0, bound).ok_or_else(never)?;
    let aut = flow_automorphism(u, bound, format!("flow of u(t) = {u}"))?.ok_or_else(never)?;
    let x1 = x.eval(&q(1, 1));
    let image = aut.apply(x0)?;
    if image != x1 {
        return Err(Error::invariant(format!("U(1)(X₀) = {image} but X(1) = {x1}")));
    }
    Ok((x1, aut))
}
