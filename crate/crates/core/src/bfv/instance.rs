use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_element, Element, Family, Gen, Roster, Side};
use crate::bracket::is_poisson;
use crate::connection::{Connection, ConnectionEntry};
use crate::error::{Error, Result};

/// One coefficient `Π^{ij}` of the bivector, `i`, `j` coordinate names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoissonEntry {
    pub i: String,
    pub j: String,
    pub coeff: String,
}

/// On-disk form of an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub base_dim: u16,
    pub fiber_dim: u16,
    pub poisson: Vec<PoissonEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<Vec<ConnectionEntry>>,
}

/// A certified Poisson structure on the trivial bundle `E = ℝⁿ × ℝᵏ`
/// (coordinates `x`, `y`), together with a connection.
///
/// The bivector is stored as `Π = Σ Π^{ij} z†_i z†_j` over ordered pairs
/// `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    roster: Roster,
    pi: Element,
    connection: Connection,
}

fn coordinate(roster: Roster, name: &str) -> Result<Gen> {
    let g: Gen = name.trim().parse().map_err(Error::Instance)?;
    if !matches!(g.family, Family::X | Family::Y) || !roster.contains(g) {
        return Err(Error::Instance(format!("{name} is not a coordinate of {roster}")));
    }
    Ok(g)
}

impl Instance {
    /// Validate and certify: `Π` must be a bivector on `E` with `[Π,Π] = 0`.
    pub fn new(pi: Element, connection: Connection) -> Result<Self> {
        let roster = pi.roster();
        if connection.roster() != roster {
            return Err(Error::RosterMismatch {
                left: roster,
                right: connection.roster(),
            });
        }
        let bivector = pi.terms().all(|(m, _)| {
            m.dagger_count() == 2
                && m.factors()
                    .iter()
                    .all(|(g, _)| matches!(g.family, Family::X | Family::Y | Family::XDag | Family::YDag))
        });
        if !bivector {
            return Err(Error::Instance(format!("{pi} is not a bivector field on E")));
        }
        let (ok, residual) = is_poisson(&pi)?;
        if !ok {
            return Err(Error::NotPoisson {
                residual: residual.to_string(),
            });
        }
        Ok(Instance { roster, pi, connection })
    }

    pub fn from_file(file: &InstanceFile) -> Result<Self> {
        if file.fiber_dim == 0 {
            return Err(Error::Instance("fiber_dim must be at least 1".into()));
        }
        let roster = Roster::new(file.base_dim, file.fiber_dim);
        let mut seen = BTreeSet::new();
        let mut pi = Element::zero(roster);
        for e in &file.poisson {
            let gi = coordinate(roster, &e.i)?;
            let gj = coordinate(roster, &e.j)?;
            if gi == gj {
                return Err(Error::Instance(format!("repeated index in Π^{{{},{}}}", e.i, e.j)));
            }
            if !seen.insert((gi.min(gj), gi.max(gj))) {
                return Err(Error::Instance(format!(
                    "duplicate entry for the pair {{{},{}}}",
                    e.i, e.j
                )));
            }
            let coeff = parse_element(roster, &e.coeff)?;
            if coeff.contains_generator(|g| !matches!(g.family, Family::X | Family::Y)) {
                return Err(Error::Instance(format!(
                    "coefficient {coeff} must be a function of x, y"
                )));
            }
            let legs = Element::word(roster, &[gi.conjugate(), gj.conjugate()]);
            pi.add_assign_ref(&(&coeff * &legs));
        }
        let connection = match &file.connection {
            Some(entries) => Connection::from_entries(roster, entries)?,
            None => Connection::flat(roster),
        };
        Instance::new(pi, connection)
    }

    /// Parse a JSON instance file.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Instance::from_file(&file)
    }

    /// The canonical file form: pairs in generator order, coefficients in
    /// canonical rendering.
    pub fn to_file(&self) -> InstanceFile {
        let r = self.roster;
        let coords: Vec<Gen> = r
            .generators()
            .into_iter()
            .filter(|g| matches!(g.family, Family::X | Family::Y))
            .collect();
        let mut poisson = Vec::new();
        for (a, &gi) in coords.iter().enumerate() {
            for &gj in &coords[a + 1..] {
                let coeff = self.coefficient(gi, gj);
                if !coeff.is_zero() {
                    poisson.push(PoissonEntry {
                        i: gi.to_string(),
                        j: gj.to_string(),
                        coeff: coeff.to_string(),
                    });
                }
            }
        }
        let connection = (!self.connection.is_flat()).then(|| {
            self.connection
                .entries()
                .map(|(&(a, mu, nu), c)| ConnectionEntry {
                    a,
                    mu,
                    nu,
                    coeff: c.to_string(),
                })
                .collect()
        });
        InstanceFile {
            base_dim: r.n_base() as u16,
            fiber_dim: r.k_fiber() as u16,
            poisson,
            connection,
        }
    }

    /// `Π^{ij}` for coordinates `gi ≠ gj`, read off as the coefficient
    /// function of `z†_i z†_j`.
    pub fn coefficient(&self, gi: Gen, gj: Gen) -> Element {
        let di = self.pi.graded_derivative(gi.conjugate(), Side::Left);
        di.graded_derivative(gj.conjugate(), Side::Left)
    }

    pub fn roster(&self) -> Roster {
        self.roster
    }

    pub fn pi(&self) -> &Element {
        &self.pi
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    /// The same bivector with another connection.
    pub fn with_connection(&self, connection: Connection) -> Result<Self> {
        Instance::new(self.pi.clone(), connection)
    }
}
