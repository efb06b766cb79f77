use crate::algebra::{Element, Family, Gen, Roster, Side, Substitution};
use crate::bfv::{build_charge, build_poisson, BfvStructure, Charge, Instance};
use crate::bracket::{bracket, omega0};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::linalg::PolyMatrix;
use crate::sampling::{Sampler, Shape};
use crate::transfer::HomotopyTransfer;

use super::automorphism::{Automorphism, Domain};

/// Random argument tuples per arity in the Taylor-relation spot check.
const TAYLOR_SAMPLES: usize = 3;

/// A fibrewise-linear bundle automorphism `g` and everything it was
/// certified against.
#[derive(Clone, Debug)]
pub struct LinearAutomorphism {
    pub matrix: PolyMatrix,
    /// `ĝ` on the full algebra.
    pub hat: Automorphism,
    /// `g_*` on multivector fields of `E`.
    pub bundle: Automorphism,
    /// `(g_*Π, ∇^g)`.
    pub instance: Instance,
    pub source: BfvStructure,
    pub target: BfvStructure,
    /// A charge of the source and its image, when the source has one.
    pub charges: Option<(Charge, Charge)>,
}

fn multivector_generators(r: Roster) -> Vec<Gen> {
    r.generators()
        .into_iter()
        .filter(|g| matches!(g.family, Family::X | Family::Y | Family::XDag | Family::YDag))
        .collect()
}

fn row_image(r: Roster, m: &PolyMatrix, mu: usize, family: Family) -> Element {
    let mut out = Element::zero(r);
    for nu in 0..m.size() {
        out.add_assign_ref(&(m.entry(mu, nu) * &Element::gen(r, Gen::new(family, nu as u16 + 1))));
    }
    out
}

/// `(ĝ, g_*)` as substitutions for an invertible `g` with polynomial inverse
/// `gi`: `y ↦ g y`, `y† ↦ g⁻ᵀ y†`, `c ↦ g⁻ᵀ c`, `c† ↦ g c†`, `b ↦ g b`,
/// `b† ↦ g⁻ᵀ b†`, and `x†_a` corrected so that `[ĝ x†_a, ĝ z] = 0` for
/// every fibre generator `z`.
fn lift_substitutions(r: Roster, g: &PolyMatrix, gi: &PolyMatrix) -> Result<(Substitution, Substitution)> {
    let k = g.size();
    let p = gi.transpose();
    let p_inv = g.transpose();
    let mut fibre = Vec::new();
    for mu in 0..k {
        let i = mu as u16 + 1;
        fibre.push((Gen::y(i), row_image(r, g, mu, Family::Y)));
        fibre.push((Gen::yd(i), row_image(r, &p, mu, Family::YDag)));
        fibre.push((Gen::c(i), row_image(r, &p, mu, Family::C)));
        fibre.push((Gen::cd(i), row_image(r, g, mu, Family::CDag)));
        fibre.push((Gen::b(i), row_image(r, g, mu, Family::B)));
        fibre.push((Gen::bd(i), row_image(r, &p, mu, Family::BDag)));
    }
    let fib = Substitution::new(r, fibre.clone())?;
    let mut hat = fibre.clone();
    let mut bundle: Vec<(Gen, Element)> = fibre
        .into_iter()
        .filter(|(z, _)| matches!(z.family, Family::Y | Family::YDag))
        .collect();
    for a in 1..=r.n_base() as u16 {
        let d = |m: &PolyMatrix| m.map(|e| e.graded_derivative(Gen::x(a), Side::Left));
        // [Y, y] = −(∂g)g⁻¹ y and [E, c] = −(∂P)P⁻¹ c in the new frame
        let ct = d(g).mul(gi).map(|e| -e.clone());
        let b = d(&p).mul(&p_inv).map(|e| -e.clone());
        let mut y_part = Element::zero(r);
        let mut e_part = Element::zero(r);
        for mu in 0..k {
            for nu in 0..k {
                let (m, n) = (mu as u16 + 1, nu as u16 + 1);
                y_part.add_assign_ref(&(ct.entry(mu, nu) * &Element::word(r, &[Gen::y(n), Gen::yd(m)])));
                let legs = &Element::word(r, &[Gen::c(n), Gen::cd(m)]) + &Element::word(r, &[Gen::b(m), Gen::bd(n)]);
                e_part.add_assign_ref(&(b.entry(mu, nu) * &legs));
            }
        }
        let xd = Element::gen(r, Gen::xd(a));
        let y_corr = fib.apply(&y_part);
        hat.push((Gen::xd(a), &(&xd + &y_corr) + &fib.apply(&e_part)));
        bundle.push((Gen::xd(a), &xd + &y_corr));
    }
    Ok((Substitution::new(r, hat)?, Substitution::new(r, bundle)?))
}

/// First generator pair with `[U z, U w] ≠ U [z, w]`, with the defect.
pub fn generator_bracket_defect(u: &Automorphism, gens: &[Gen]) -> Option<(Gen, Gen, Element)> {
    let r = u.roster();
    let f = u.forward();
    for (i, &z) in gens.iter().enumerate() {
        for &w in &gens[i..] {
            let (ez, ew) = (Element::gen(r, z), Element::gen(r, w));
            let defect = &bracket(&f.apply(&ez), &f.apply(&ew)) - &f.apply(&bracket(&ez, &ew));
            if !defect.is_zero() {
                return Some((z, w, defect));
            }
        }
    }
    None
}

/// `ĝ` and `g_*` for a matrix `g` over polynomials in `x`, certified as
/// automorphisms of the big bracket.
pub fn lift_matrix(roster: Roster, g: &PolyMatrix) -> Result<(Automorphism, Automorphism)> {
    if g.roster() != roster {
        return Err(Error::RosterMismatch {
            left: roster,
            right: g.roster(),
        });
    }
    if g.size() != roster.k_fiber() {
        return Err(Error::InvalidAutomorphism(format!(
            "matrix has size {}, the fibre has rank {}",
            g.size(),
            roster.k_fiber()
        )));
    }
    if let Some(e) = g
        .rows()
        .iter()
        .flatten()
        .find(|e| e.contains_generator(|h| h.family != Family::X))
    {
        return Err(Error::InvalidAutomorphism(format!(
            "matrix entry {e} must depend on x only"
        )));
    }
    let gi = g.inverse()?;
    let (hat, bundle) = lift_substitutions(roster, g, &gi)?;
    let (hat_inv, bundle_inv) = lift_substitutions(roster, &gi, g)?;
    let hat = Automorphism::new(hat, hat_inv, Domain::Full, vec![format!("linear lift of {}", show(g))])?;
    let bundle = Automorphism::new(
        bundle,
        bundle_inv,
        Domain::Full,
        vec![format!("bundle map {}", show(g))],
    )?;
    for (u, gens) in [(&hat, roster.generators()), (&bundle, multivector_generators(roster))] {
        if let Some((z, w, d)) = generator_bracket_defect(u, &gens) {
            return Err(Error::invariant(format!(
                "lift does not preserve [{z},{w}]: defect {d}"
            )));
        }
    }
    Ok((hat, bundle))
}

fn show(g: &PolyMatrix) -> String {
    let rows: Vec<String> = g
        .rows()
        .iter()
        .map(|row| format!("[{}]", row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// The connection `∇^g` with `ĝ ∘ φ_∇ = φ_{∇^g} ∘ g_*` on multivector fields.
fn pushed_connection(inst: &Instance, hat: &Automorphism, bundle: &Automorphism) -> Result<Connection> {
    let r = inst.roster();
    let phi = inst.connection().lift();
    let mut entries = Vec::new();
    for a in 1..=r.n_base() as u16 {
        let lifted = hat.apply(&phi.image(Gen::xd(a)))?;
        let vertical = &bundle.apply(&Element::gen(r, Gen::xd(a)))? - &lifted;
        for mu in 1..=r.k_fiber() as u16 {
            for nu in 1..=r.k_fiber() as u16 {
                let coeff = vertical
                    .graded_derivative(Gen::c(mu), Side::Left)
                    .graded_derivative(Gen::cd(nu), Side::Left);
                entries.push(((a, mu, nu), coeff));
            }
        }
    }
    let pushed = Connection::new(r, entries)?;
    let lift_g = pushed.lift();
    for z in multivector_generators(r) {
        let lhs = lift_g.apply(&bundle.forward().image(z));
        let rhs = hat.apply(&phi.image(z))?;
        if lhs != rhs {
            return Err(Error::invariant(format!(
                "ĝ∘φ ≠ φ^g∘g_* on {z}: defect {}",
                &lhs - &rhs
            )));
        }
    }
    Ok(pushed)
}

/// Lemma-2 style certification for a linear automorphism `g`: `ĝ(Ω₀) = Ω₀`,
/// `ĝ(P̂) = P̂^g` for the structure of `(g_*Π, ∇^g)`, charges map to
/// charges, and the transfer quasi-isomorphisms are intertwined in arity
/// `≤ 2`.
pub fn linear_automorphism(inst: &Instance, g: &PolyMatrix) -> Result<LinearAutomorphism> {
    let r = inst.roster();
    let (hat, bundle) = lift_matrix(r, g)?;
    let o = omega0(r);
    let moved = hat.apply(&o)?;
    if moved != o {
        return Err(Error::invariant(format!("ĝ(Ω₀) − Ω₀ = {}", &moved - &o)));
    }
    let connection = pushed_connection(inst, &hat, &bundle)?;
    let instance = Instance::new(bundle.apply(inst.pi())?, connection)?;
    let source = build_poisson(inst)?;
    let target = build_poisson(&instance)?;
    let pushed = hat.apply(source.p_hat())?;
    if &pushed != target.p_hat() {
        return Err(Error::invariant(format!("ĝ(P̂) − P̂^g = {}", &pushed - target.p_hat())));
    }
    let charges = match build_charge(&source)?.charge() {
        Some(c) => {
            let image = Charge::certified(&target, hat.apply(c.omega())?)?;
            Some((c, image))
        }
        None => None,
    };
    check_taylor(inst, &instance, &hat, &bundle)?;
    Ok(LinearAutomorphism {
        matrix: g.clone(),
        hat,
        bundle,
        instance,
        source,
        target,
        charges,
    })
}

/// `(L^g)_k(g_* a_1,…,g_* a_k) = ĝ L_k(a_1,…,a_k)` for `k ≤ 2`.
fn check_taylor(inst: &Instance, pushed: &Instance, hat: &Automorphism, bundle: &Automorphism) -> Result<()> {
    let r = inst.roster();
    let before = HomotopyTransfer::for_connection(inst.connection())?;
    let after = HomotopyTransfer::for_connection(pushed.connection())?;
    let gens = multivector_generators(r);
    let shape = Shape {
        max_factors: 3,
        max_poly_degree: 2,
        max_terms: 2,
    };
    let mut s = Sampler::new(0x7a11);
    for k in 1..=2 {
        for _ in 0..TAYLOR_SAMPLES {
            let args: Vec<Element> = (0..k).map(|_| s.any_homogeneous(r, &gens, 0..=3, shape)).collect();
            let moved = args.iter().map(|a| bundle.apply(a)).collect::<Result<Vec<_>>>()?;
            let lhs = after.quasi_iso_component(&moved)?;
            let rhs = hat.apply(&before.quasi_iso_component(&args)?)?;
            if lhs != rhs {
                return Err(Error::invariant(format!(
                    "Taylor relation fails in arity {k}: defect {}",
                    &lhs - &rhs
                )));
            }
        }
    }
    Ok(())
}
