//! Seeded random generation of homogeneous test elements.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{Element, Gen, Rational, Roster};

/// Shape limits for random elements.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    /// Maximum number of generator factors in a monomial.
    pub max_factors: usize,
    /// Maximum polynomial degree in the even coordinates `x`, `y`.
    pub max_poly_degree: u32,
    /// Maximum number of monomials.
    pub max_terms: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_factors: 4,
            max_poly_degree: 3,
            max_terms: 3,
        }
    }
}

/// Deterministic sampler; equal seeds give equal streams.
pub struct Sampler {
    rng: StdRng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    /// Small nonzero rational.
    pub fn coefficient(&mut self) -> Rational {
        let mut n: i64 = self.rng.gen_range(1..=4);
        if self.rng.gen_bool(0.5) {
            n = -n;
        }
        let d: i64 = if self.rng.gen_bool(0.25) { 2 } else { 1 };
        Rational::new(n.into(), d.into())
    }

    /// A random nonzero monomial (with coefficient) over `gens`.
    pub fn monomial(&mut self, roster: Roster, gens: &[Gen], shape: Shape) -> Element {
        loop {
            let n = self.rng.gen_range(0..=shape.max_factors);
            let word: Vec<Gen> = (0..n).map(|_| gens[self.rng.gen_range(0..gens.len())]).collect();
            let c = self.coefficient();
            let e = Element::normalize(roster, c, &word).expect("generators from roster");
            if !e.is_zero() && e.terms().all(|(m, _)| m.coordinate_degree() <= shape.max_poly_degree) {
                return e;
            }
        }
    }

    /// A random element over `gens` whose monomials all have total degree
    /// `degree`. Returns zero if no such monomial turns up quickly.
    pub fn homogeneous(&mut self, roster: Roster, gens: &[Gen], degree: i32, shape: Shape) -> Element {
        let mut out = Element::zero(roster);
        let terms = self.rng.gen_range(1..=shape.max_terms.max(1));
        let mut found = 0;
        for _ in 0..400 {
            if found == terms {
                break;
            }
            let m = self.monomial(roster, gens, shape);
            if m.total_degree() == Some(degree) {
                out.add_assign_ref(&m);
                found += 1;
            }
        }
        out
    }

    /// A random homogeneous element of random degree in `degrees`.
    pub fn any_homogeneous(
        &mut self,
        roster: Roster,
        gens: &[Gen],
        degrees: std::ops::RangeInclusive<i32>,
        shape: Shape,
    ) -> Element {
        loop {
            let d = self.rng.gen_range(degrees.clone());
            let e = self.homogeneous(roster, gens, d, shape);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Uniform integer in `lo..=hi`.
    pub fn rng_range(&mut self, lo: i32, hi: i32) -> i32 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.gen_range(0..items.len())]
    }
}
