use crate::algebra::{Element, Gen, Roster, Substitution};
use crate::bracket::ensure_function;
use crate::error::{Error, Result};
use crate::sampling::{Sampler, Shape};

/// Number of random elements every automorphism is checked on.
pub const AUTOMORPHISM_SAMPLES: usize = 50;

/// Which algebra an automorphism acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// The full generator algebra (multivector fields, big bracket).
    Full,
    /// Daggered-free elements (functions, BFV bracket).
    Functions,
}

impl Domain {
    pub fn generators(self, roster: Roster) -> Vec<Gen> {
        match self {
            Domain::Full => roster.generators(),
            Domain::Functions => roster.function_generators(),
        }
    }
}

/// An invertible degree-preserving algebra substitution together with its
/// inverse and a log of how it was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    forward: Substitution,
    inverse: Substitution,
    domain: Domain,
    provenance: Vec<String>,
}

impl Automorphism {
    /// Check `inverse ∘ forward = id` and `forward ∘ inverse = id` on the
    /// domain generators and on random elements.
    pub fn new(forward: Substitution, inverse: Substitution, domain: Domain, provenance: Vec<String>) -> Result<Self> {
        let r = forward.roster();
        if inverse.roster() != r {
            return Err(Error::RosterMismatch {
                left: r,
                right: inverse.roster(),
            });
        }
        let gens = domain.generators(r);
        if domain == Domain::Functions {
            for &g in &gens {
                for s in [&forward, &inverse] {
                    let img = s.image(g);
                    if img.has_dagger() {
                        return Err(Error::InvalidAutomorphism(format!(
                            "image of {g} leaves the function algebra: {img}"
                        )));
                    }
                }
            }
        }
        for &g in &gens {
            let z = Element::gen(r, g);
            for (a, b) in [(&forward, &inverse), (&inverse, &forward)] {
                let back = b.apply(&a.apply(&z));
                if back != z {
                    return Err(Error::InvalidAutomorphism(format!(
                        "inverse fails on {g}: round trip gives {back}"
                    )));
                }
            }
        }
        let aut = Automorphism {
            forward,
            inverse,
            domain,
            provenance,
        };
        aut.check_samples(AUTOMORPHISM_SAMPLES, 0x5eed)?;
        Ok(aut)
    }

    pub fn identity(roster: Roster, domain: Domain) -> Self {
        Automorphism {
            forward: Substitution::identity(roster),
            inverse: Substitution::identity(roster),
            domain,
            provenance: vec!["identity".into()],
        }
    }

    /// Round trip on `samples` random homogeneous elements of the domain.
    pub fn check_samples(&self, samples: usize, seed: u64) -> Result<()> {
        let r = self.roster();
        let gens = self.domain.generators(r);
        let mut s = Sampler::new(seed);
        for _ in 0..samples {
            let a = s.any_homogeneous(r, &gens, -2..=3, Shape::default());
            let image = self.forward.apply(&a);
            if image.total_degree() != a.total_degree() {
                return Err(Error::InvalidAutomorphism(format!("{a} ↦ {image} changes the degree")));
            }
            let back = self.inverse.apply(&image);
            if back != a {
                return Err(Error::InvalidAutomorphism(format!("round trip of {a} gives {back}")));
            }
        }
        Ok(())
    }

    pub fn roster(&self) -> Roster {
        self.forward.roster()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn forward(&self) -> &Substitution {
        &self.forward
    }

    pub fn inverse_map(&self) -> &Substitution {
        &self.inverse
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn is_identity(&self) -> bool {
        let r = self.roster();
        self.domain
            .generators(r)
            .into_iter()
            .all(|g| self.forward.image(g) == Element::gen(r, g))
    }

    fn check_input(&self, a: &Element) -> Result<()> {
        if self.domain == Domain::Functions {
            ensure_function(a)?;
        }
        Ok(())
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        self.check_input(a)?;
        a.check_roster(&Element::zero(self.roster()))?;
        Ok(self.forward.apply(a))
    }

    pub fn apply_inverse(&self, a: &Element) -> Result<Element> {
        self.check_input(a)?;
        a.check_roster(&Element::zero(self.roster()))?;
        Ok(self.inverse.apply(a))
    }

    /// The inverse automorphism.
    pub fn inverse(&self) -> Automorphism {
        let mut provenance = self.provenance.clone();
        provenance.push("inverse".into());
        Automorphism {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            domain: self.domain,
            provenance,
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Automorphism) -> Result<Automorphism> {
        if next.roster() != self.roster() {
            return Err(Error::RosterMismatch {
                left: self.roster(),
                right: next.roster(),
            });
        }
        let domain = if self.domain == Domain::Full && next.domain == Domain::Full {
            Domain::Full
        } else {
            Domain::Functions
        };
        let mut provenance = self.provenance.clone();
        provenance.extend(next.provenance.iter().cloned());
        let (forward, inverse) = match domain {
            Domain::Full => (next.forward.after(&self.forward), self.inverse.after(&next.inverse)),
            Domain::Functions => (
                compose_on_functions(&next.forward, &self.forward)?,
                compose_on_functions(&self.inverse, &next.inverse)?,
            ),
        };
        Automorphism::new(forward, inverse, domain, provenance)
    }

    /// The restriction to functions; fails if a function generator is sent
    /// outside the function algebra.
    pub fn restrict_to_functions(&self) -> Result<Automorphism> {
        let r = self.roster();
        let only =
            |s: &Substitution| Substitution::new(r, r.function_generators().into_iter().map(|g| (g, s.image(g))));
        let mut provenance = self.provenance.clone();
        provenance.push("restricted to functions".into());
        Automorphism::new(
            only(&self.forward)?,
            only(&self.inverse)?,
            Domain::Functions,
            provenance,
        )
    }
}

/// `second ∘ first` on function generators only.
fn compose_on_functions(second: &Substitution, first: &Substitution) -> Result<Substitution> {
    let r = first.roster();
    Substitution::new(
        r,
        r.function_generators()
            .into_iter()
            .map(|g| (g, second.apply(&first.image(g)))),
    )
}
