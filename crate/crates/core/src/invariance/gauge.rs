use crate::algebra::{q, Element, Substitution};
use crate::bfv::{BfvStructure, Charge};
use crate::error::{Error, Result};
use crate::sampling::{Sampler, Shape};
use crate::transfer::{Contraction, KoszulDelta};

use super::automorphism::{Automorphism, Domain};
use super::flow::iteration_bound;

/// `exp(ad η)(f) = Σ_n (1/n!) {η, ·}_BFV^n (f)`, required to terminate.
pub fn exp_ad(s: &BfvStructure, eta: &Element, f: &Element) -> Result<Element> {
    let bound = iteration_bound(s.roster());
    let mut term = f.clone();
    let mut out = f.clone();
    for n in 1..=bound {
        term = s.bracket(eta, &term)?.scale(&q(1, n as i64));
        if term.is_zero() {
            return Ok(out);
        }
        out.add_assign_ref(&term);
    }
    Err(Error::Termination(format!("exp(ad {eta}) does not terminate on {f}")))
}

/// The Hamiltonian automorphism `exp(ad η)` of the BFV bracket, on
/// functions.
pub fn hamiltonian_automorphism(s: &BfvStructure, eta: &Element) -> Result<Automorphism> {
    let r = s.roster();
    if eta.has_dagger() || eta.total_degree().is_some_and(|d| d != 0) || !eta.is_homogeneous() {
        return Err(Error::Degree(format!(
            "a gauge generator is a function of degree 0, got {eta}"
        )));
    }
    let minus = -eta.clone();
    let mut forward = Vec::new();
    let mut inverse = Vec::new();
    for g in r.function_generators() {
        let z = Element::gen(r, g);
        forward.push((g, exp_ad(s, eta, &z)?));
        inverse.push((g, exp_ad(s, &minus, &z)?));
    }
    Automorphism::new(
        Substitution::new(r, forward)?,
        Substitution::new(r, inverse)?,
        Domain::Functions,
        vec![format!("exp(ad {eta})")],
    )
}

/// An automorphism of `(BFV(E), {·,·}_BFV)` mapping `Ω` to `Ω′`, built
/// stage by stage: at momentum degree `p ≥ 2` the discrepancy `D_p` is
/// `δ`-closed and `exp(ad η_p)` with `η_p = h(D_p)` removes it, since
/// `{η, Ω₀} = δ(η)` for `η` of degree 0.
pub fn gauge_charges(s: &BfvStructure, omega: &Charge, omega_prime: &Charge) -> Result<Automorphism> {
    omega.ensure_belongs_to(s)?;
    omega_prime.ensure_belongs_to(s)?;
    let r = s.roster();
    let delta = KoszulDelta::new(r);
    let target = omega_prime.omega();
    let mut current = omega.omega().clone();
    let mut total = Automorphism::identity(r, Domain::Functions);
    for p in 2..=r.k_fiber() as u32 {
        let d = (target - &current).bidegree_component(p, p - 1);
        if d.is_zero() {
            continue;
        }
        let closed = delta.d(&d);
        if !closed.is_zero() {
            return Err(Error::invariant(format!("stage {p} discrepancy {d} has δ = {closed}")));
        }
        let eta = delta.h(&d);
        let stage = hamiltonian_automorphism(s, &eta)?;
        current = stage.apply(&current)?;
        if current.bidegree_component(p, p - 1) != target.bidegree_component(p, p - 1) {
            return Err(Error::invariant(format!("stage {p} was not matched by exp(ad {eta})")));
        }
        total = total.then(&stage)?;
    }
    if &current != target {
        return Err(Error::invariant(format!(
            "gauged charge differs from Ω′ by {}",
            &current - target
        )));
    }
    let image = total.apply(omega.omega())?;
    if &image != target {
        return Err(Error::invariant(format!("composite automorphism sends Ω to {image}")));
    }
    Ok(total)
}

/// First nonzero `U{f,g}₀ − {Uf,Ug}₁` over random function pairs, or zero.
pub fn bracket_defect(
    source: &BfvStructure,
    target: &BfvStructure,
    u: &Automorphism,
    samples: usize,
    seed: u64,
) -> Result<Element> {
    let r = source.roster();
    let gens = r.function_generators();
    let mut sm = Sampler::new(seed);
    for _ in 0..samples {
        let f = sm.any_homogeneous(r, &gens, -2..=2, Shape::default());
        let g = sm.any_homogeneous(r, &gens, -2..=2, Shape::default());
        let lhs = u.apply(&source.bracket(&f, &g)?)?;
        let rhs = target.bracket(&u.apply(&f)?, &u.apply(&g)?)?;
        if lhs != rhs {
            return Ok(&lhs - &rhs);
        }
    }
    Ok(Element::zero(r))
}
