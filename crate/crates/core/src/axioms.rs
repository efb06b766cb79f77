//! Exact defect computations for the algebraic identities the engine relies
//! on. Every function returns the difference of the two sides; zero means
//! the identity holds.

use crate::algebra::{Element, Gen, Side, Substitution};
use crate::bracket::bracket;
use crate::sampling::{Sampler, Shape};

fn deg(a: &Element) -> i32 {
    a.total_degree().unwrap_or(0)
}

fn sign(exp: i32) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `ab − (−1)^{|a||b|} ba`
pub fn commutativity(a: &Element, b: &Element) -> Element {
    &(a * b) - &(b * a).scale_int(sign(deg(a) * deg(b)))
}

/// `a(bc) − (ab)c`
pub fn associativity(a: &Element, b: &Element, c: &Element) -> Element {
    &(a * &(b * c)) - &(&(a * b) * c)
}

/// Graded Leibniz rule for a one-sided derivative by `g`.
pub fn derivative_leibniz(a: &Element, b: &Element, g: Gen, side: Side) -> Element {
    let gd = g.total_degree();
    let lhs = (a * b).graded_derivative(g, side);
    let rhs = match side {
        Side::Left => {
            &(&a.graded_derivative(g, side) * b) + &(a * &b.graded_derivative(g, side)).scale_int(sign(gd * deg(a)))
        }
        Side::Right => {
            &(a * &b.graded_derivative(g, side)) + &(&a.graded_derivative(g, side) * b).scale_int(sign(gd * deg(b)))
        }
    };
    &lhs - &rhs
}

/// `[a,b] + (−1)^{(|a|−1)(|b|−1)} [b,a]`
pub fn antisymmetry(a: &Element, b: &Element) -> Element {
    &bracket(a, b) + &bracket(b, a).scale_int(sign((deg(a) - 1) * (deg(b) - 1)))
}

/// `[a,[b,c]] − [[a,b],c] − (−1)^{(|a|−1)(|b|−1)} [b,[a,c]]`
pub fn jacobi(a: &Element, b: &Element, c: &Element) -> Element {
    let lhs = bracket(a, &bracket(b, c));
    let r1 = bracket(&bracket(a, b), c);
    let r2 = bracket(b, &bracket(a, c)).scale_int(sign((deg(a) - 1) * (deg(b) - 1)));
    &(&lhs - &r1) - &r2
}

/// `[a,bc] − [a,b]c − (−1)^{(|a|−1)|b|} b[a,c]`
pub fn bracket_leibniz(a: &Element, b: &Element, c: &Element) -> Element {
    let lhs = bracket(a, &(b * c));
    let r1 = &bracket(a, b) * c;
    let r2 = (b * &bracket(a, c)).scale_int(sign((deg(a) - 1) * deg(b)));
    &(&lhs - &r1) - &r2
}

/// Composition law `τ(σ(a)) = (τ∘σ)(a)`.
pub fn substitution_composition(a: &Element, sigma: &Substitution, tau: &Substitution) -> Element {
    &tau.apply(&sigma.apply(a)) - &tau.after(sigma).apply(a)
}

/// Outcome of a randomized identity sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub samples: usize,
    /// First failing sample, rendered.
    pub failure: Option<String>,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Check antisymmetry, Jacobi and Leibniz for the big bracket on `samples`
/// random homogeneous triples.
pub fn bracket_sweep(roster: crate::algebra::Roster, samples: usize, seed: u64) -> Sweep {
    let mut s = Sampler::new(seed);
    let gens = roster.generators();
    let shape = Shape {
        max_factors: 4,
        max_poly_degree: 3,
        max_terms: 2,
    };
    for n in 0..samples {
        let a = s.any_homogeneous(roster, &gens, -1..=3, shape);
        let b = s.any_homogeneous(roster, &gens, -1..=3, shape);
        let c = s.any_homogeneous(roster, &gens, -1..=3, shape);
        for (name, d) in [
            ("antisymmetry", antisymmetry(&a, &b)),
            ("jacobi", jacobi(&a, &b, &c)),
            ("leibniz", bracket_leibniz(&a, &b, &c)),
        ] {
            if !d.is_zero() {
                return Sweep {
                    samples: n + 1,
                    failure: Some(format!("{name} on a={a}, b={b}, c={c}: defect {d}")),
                };
            }
        }
    }
    Sweep { samples, failure: None }
}
