use std::fmt;

use serde::{Deserialize, Serialize};

/// The eight generator families of the full algebra.
///
/// The declaration order is the canonical monomial order and must never
/// change: serialized elements and digests depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Base coordinate `x_a`.
    X,
    /// Fiber coordinate `y_mu`.
    Y,
    /// Ghost `c^mu`.
    C,
    /// Ghost momentum `b_mu`.
    B,
    /// Conjugate of `x_a`.
    XDag,
    /// Conjugate of `y_mu`.
    YDag,
    /// Conjugate of `c^mu`.
    CDag,
    /// Conjugate of `b_mu`.
    BDag,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::X,
        Family::Y,
        Family::C,
        Family::B,
        Family::XDag,
        Family::YDag,
        Family::CDag,
        Family::BDag,
    ];

    /// (total, ghost, momentum) degree of a single generator.
    pub fn degrees(self) -> (i32, i32, i32) {
        match self {
            Family::X | Family::Y => (0, 0, 0),
            Family::C => (1, 1, 0),
            Family::B => (-1, 0, 1),
            Family::XDag | Family::YDag => (1, 0, 0),
            Family::CDag => (0, -1, 0),
            Family::BDag => (2, 0, -1),
        }
    }

    pub fn total_degree(self) -> i32 {
        self.degrees().0
    }

    pub fn is_odd(self) -> bool {
        self.total_degree().rem_euclid(2) == 1
    }

    pub fn is_dagger(self) -> bool {
        matches!(self, Family::XDag | Family::YDag | Family::CDag | Family::BDag)
    }

    pub fn is_base(self) -> bool {
        matches!(self, Family::X | Family::XDag)
    }

    /// The conjugate family under the canonical pairing.
    pub fn conjugate(self) -> Family {
        match self {
            Family::X => Family::XDag,
            Family::Y => Family::YDag,
            Family::C => Family::CDag,
            Family::B => Family::BDag,
            Family::XDag => Family::X,
            Family::YDag => Family::Y,
            Family::CDag => Family::C,
            Family::BDag => Family::B,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::Y => "y",
            Family::C => "c",
            Family::B => "b",
            Family::XDag => "xd",
            Family::YDag => "yd",
            Family::CDag => "cd",
            Family::BDag => "bd",
        }
    }
}

/// A single generator: family plus a 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gen {
    pub family: Family,
    pub index: u16,
}

impl Gen {
    pub const fn new(family: Family, index: u16) -> Self {
        Gen { family, index }
    }

    pub const fn x(i: u16) -> Self {
        Gen::new(Family::X, i)
    }
    pub const fn y(i: u16) -> Self {
        Gen::new(Family::Y, i)
    }
    pub const fn c(i: u16) -> Self {
        Gen::new(Family::C, i)
    }
    pub const fn b(i: u16) -> Self {
        Gen::new(Family::B, i)
    }
    pub const fn xd(i: u16) -> Self {
        Gen::new(Family::XDag, i)
    }
    pub const fn yd(i: u16) -> Self {
        Gen::new(Family::YDag, i)
    }
    pub const fn cd(i: u16) -> Self {
        Gen::new(Family::CDag, i)
    }
    pub const fn bd(i: u16) -> Self {
        Gen::new(Family::BDag, i)
    }

    pub fn is_odd(self) -> bool {
        self.family.is_odd()
    }

    pub fn total_degree(self) -> i32 {
        self.family.total_degree()
    }

    pub fn conjugate(self) -> Gen {
        Gen::new(self.family.conjugate(), self.index)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.token(), self.index)
    }
}

/// Fixed generator roster: `n_base` base coordinates and `k_fiber` fiber
/// coordinates, each carrying the full set of ghost and dagger partners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Roster {
    n_base: u16,
    k_fiber: u16,
}

impl Roster {
    pub const fn new(n_base: u16, k_fiber: u16) -> Self {
        Roster { n_base, k_fiber }
    }

    pub fn n_base(&self) -> usize {
        self.n_base as usize
    }

    pub fn k_fiber(&self) -> usize {
        self.k_fiber as usize
    }

    pub fn family_size(&self, family: Family) -> u16 {
        if family.is_base() {
            self.n_base
        } else {
            self.k_fiber
        }
    }

    pub fn contains(&self, g: Gen) -> bool {
        g.index >= 1 && g.index <= self.family_size(g.family)
    }

    /// All generators in canonical order.
    pub fn generators(&self) -> Vec<Gen> {
        Family::ALL
            .iter()
            .flat_map(|&f| (1..=self.family_size(f)).map(move |i| Gen::new(f, i)))
            .collect()
    }

    /// The daggered-free generators `x, y, c, b` (the BFV function algebra).
    pub fn function_generators(&self) -> Vec<Gen> {
        self.generators()
            .into_iter()
            .filter(|g| !g.family.is_dagger())
            .collect()
    }
}

impl fmt::Display for Roster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={})", self.n_base, self.k_fiber)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_matches_total_degree() {
        for f in Family::ALL {
            let (t, g, m) = f.degrees();
            assert_eq!(f.is_odd(), t.rem_euclid(2) == 1);
            // conjugate pairs have total degrees summing to one
            assert_eq!(t + f.conjugate().total_degree(), 1, "{f:?}");
            let _ = (g, m);
        }
    }

    #[test]
    fn roster_lists_generators_in_canonical_order() {
        let r = Roster::new(1, 2);
        let gens = r.generators();
        assert_eq!(gens.len(), 2 + 6 * 2);
        let mut sorted = gens.clone();
        sorted.sort();
        assert_eq!(gens, sorted);
        assert!(r.contains(Gen::x(1)));
        assert!(!r.contains(Gen::x(2)));
        assert!(!r.contains(Gen::c(0)));
    }
}
