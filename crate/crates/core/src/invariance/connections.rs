use crate::algebra::{q, Element, Family, Gen, TPoly};
use crate::bfv::{build_poisson, BfvStructure, Instance};
use crate::bracket::pairing_g;
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::linfty::{ev, mc_split_check, push_mc, DgLa, IntervalElement};
use crate::transfer::IntervalTransfer;

use super::automorphism::Automorphism;
use super::flow::integrate_flow;

/// Result of comparing the BFV structures of two connections.
#[derive(Clone, Debug)]
pub struct ConnectionComparison {
    pub source: BfvStructure,
    pub target: BfvStructure,
    /// `w(t) + u(t)dt`, the pushed MC element on the interval.
    pub path: IntervalElement,
    /// `U(1)` on the full algebra, with `U(1)(P̂₀) = P̂₁`; it is the
    /// identity on `x, y` modulo ghosts.
    pub automorphism: Automorphism,
}

impl ConnectionComparison {
    pub fn flow(&self) -> &TPoly {
        &self.path.q
    }
}

/// Connect `P̂₀` and `P̂₁` (built from `Π` with `∇₀`, `∇₁`) by the flow of
/// the `dt`-part of the interval-transferred MC element.
pub fn compare_connections(inst: &Instance, g0: &Connection, g1: &Connection) -> Result<ConnectionComparison> {
    let r = inst.roster();
    let source = build_poisson(&inst.with_connection(g0.clone())?)?;
    let target = build_poisson(&inst.with_connection(g1.clone())?)?;

    let transfer = IntervalTransfer::new(g0, g1)?;
    let path = push_mc(&transfer, &DgLa::big(r, None), transfer.target(), inst.pi())?;
    let split = mc_split_check(&pairing_g(r), &path);
    if !split.holds() {
        return Err(Error::invariant(format!(
            "interval MC element does not split: curvature {}, flow defect {}",
            split.curvature, split.flow
        )));
    }
    for (s, end) in [(q(0, 1), &source), (q(1, 1), &target)] {
        let at = &pairing_g(r) + &ev(&s, &path);
        if &at != end.p_hat() {
            return Err(Error::invariant(format!("interval endpoint at t = {s} is {at}, not P̂")));
        }
    }

    let (moved, automorphism) = integrate_flow(&path.q, source.p_hat())?;
    if &moved != target.p_hat() {
        return Err(Error::invariant(format!("U(1)(P̂₀) − P̂₁ = {}", &moved - target.p_hat())));
    }
    if let Some((g, image)) = moved_body_coordinate(&automorphism) {
        return Err(Error::invariant(format!(
            "U(1) moves the base coordinate {g} to {image} modulo ghosts"
        )));
    }
    Ok(ConnectionComparison {
        source,
        target,
        path,
        automorphism,
    })
}

/// The first coordinate `x_a` or `y_μ` that `u` does not fix.
pub fn moved_coordinate(u: &Automorphism) -> Option<(Gen, Element)> {
    let r = u.roster();
    r.function_generators()
        .into_iter()
        .filter(|g| matches!(g.family, Family::X | Family::Y))
        .map(|g| (g, u.forward().image(g)))
        .find(|(g, image)| *image != Element::gen(r, *g))
}

/// The first coordinate `x_a` or `y_μ` whose image differs from itself
/// after setting the ghosts `c, b` to zero: the induced map on the body `E`.
pub fn moved_body_coordinate(u: &Automorphism) -> Option<(Gen, Element)> {
    let r = u.roster();
    r.function_generators()
        .into_iter()
        .filter(|g| matches!(g.family, Family::X | Family::Y))
        .map(|g| (g, u.forward().image(g)))
        .find(|(g, image)| image.set_to_zero(|h| matches!(h.family, Family::C | Family::B)) != Element::gen(r, *g))
}
