//! Connection coefficients `Γ^ν_{aμ}(x)` and the horizontal lift they induce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Family, Gen, Rational, Roster, Substitution, TPoly};
use crate::error::{Error, Result};

/// Polynomial connection coefficients, keyed by `(a, μ, ν)` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    roster: Roster,
    entries: BTreeMap<(u16, u16, u16), Element>,
}

/// One coefficient in a connection table, as stored in files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionEntry {
    pub a: u16,
    pub mu: u16,
    pub nu: u16,
    pub coeff: String,
}

impl Connection {
    /// The trivial connection.
    pub fn flat(roster: Roster) -> Self {
        Connection {
            roster,
            entries: BTreeMap::new(),
        }
    }

    pub fn new(roster: Roster, entries: impl IntoIterator<Item = ((u16, u16, u16), Element)>) -> Result<Self> {
        let mut map: BTreeMap<(u16, u16, u16), Element> = BTreeMap::new();
        for ((a, mu, nu), coeff) in entries {
            coeff.check_roster(&Element::zero(roster))?;
            if !roster.contains(Gen::x(a)) || !roster.contains(Gen::y(mu)) || !roster.contains(Gen::y(nu)) {
                return Err(Error::Instance(format!(
                    "connection index ({a},{mu},{nu}) outside roster {roster}"
                )));
            }
            if coeff.contains_generator(|g| g.family != Family::X) {
                return Err(Error::Instance(format!(
                    "connection coefficient Γ^{nu}_{a}{mu} = {coeff} must depend on x only"
                )));
            }
            let slot = map.entry((a, mu, nu)).or_insert_with(|| Element::zero(roster));
            slot.add_assign_ref(&coeff);
        }
        map.retain(|_, v| !v.is_zero());
        Ok(Connection { roster, entries: map })
    }

    /// Parse file entries against `roster`.
    pub fn from_entries(roster: Roster, entries: &[ConnectionEntry]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|e| Ok(((e.a, e.mu, e.nu), crate::algebra::parse_element(roster, &e.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Connection::new(roster, parsed)
    }

    pub fn roster(&self) -> Roster {
        self.roster
    }

    pub fn is_flat(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coefficient(&self, a: u16, mu: u16, nu: u16) -> Element {
        self.entries
            .get(&(a, mu, nu))
            .cloned()
            .unwrap_or_else(|| Element::zero(self.roster))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u16, u16, u16), &Element)> {
        self.entries.iter()
    }

    /// `Γ₁ − Γ₀` style difference.
    pub fn difference(&self, other: &Connection) -> Connection {
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let slot = entries.entry(*k).or_insert_with(|| Element::zero(self.roster));
            slot.sub_assign_ref(v);
        }
        entries.retain(|_, v| !v.is_zero());
        Connection {
            roster: self.roster,
            entries,
        }
    }

    pub fn scaled(&self, r: &Rational) -> Connection {
        let mut entries: BTreeMap<_, _> = self.entries.iter().map(|(k, v)| (*k, v.scale(r))).collect();
        entries.retain(|_, v: &mut Element| !v.is_zero());
        Connection {
            roster: self.roster,
            entries,
        }
    }

    /// `Σ_{μν} Γ^ν_{aμ}(c^μ cd_ν + b_ν bd_μ)`, the vertical correction to
    /// `xd_a`.
    pub fn correction(&self, a: u16) -> Element {
        let r = self.roster;
        let mut out = Element::zero(r);
        for (&(b, mu, nu), coeff) in &self.entries {
            if b != a {
                continue;
            }
            let legs = &Element::word(r, &[Gen::c(mu), Gen::cd(nu)]) + &Element::word(r, &[Gen::b(nu), Gen::bd(mu)]);
            out.add_assign_ref(&(coeff * &legs));
        }
        out
    }

    /// Horizontal lift `φ`: `xd_a ↦ xd_a − correction(a)`, all other
    /// generators fixed.
    pub fn lift(&self) -> Substitution {
        self.lift_signed(-1)
    }

    /// `φ⁻¹`: the lift of `−Γ`.
    pub fn lift_inverse(&self) -> Substitution {
        self.lift_signed(1)
    }

    fn lift_signed(&self, sign: i64) -> Substitution {
        let r = self.roster;
        let images = (1..=r.n_base() as u16).map(|a| {
            let xd = Element::gen(r, Gen::xd(a));
            (Gen::xd(a), &xd + &self.correction(a).scale_int(sign))
        });
        Substitution::new(r, images).expect("lift images have degree one")
    }

    /// Lift of the affine family `Γ_t = Γ₀ + t(Γ₁ − Γ₀)` (`sign = −1`) or of
    /// its negative (`sign = +1`, the inverse family).
    pub fn lift_family(g0: &Connection, g1: &Connection, inverse: bool) -> Substitution<TPoly> {
        let r = g0.roster;
        let sign = if inverse { 1 } else { -1 };
        let delta = g1.difference(g0);
        let images = (1..=r.n_base() as u16).map(|a| {
            let c0 = &Element::gen(r, Gen::xd(a)) + &g0.correction(a).scale_int(sign);
            let c1 = delta.correction(a).scale_int(sign);
            (Gen::xd(a), TPoly::from_coeffs(r, vec![c0, c1]))
        });
        Substitution::new_t(r, images).expect("lift images have degree one")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::bracket::{bracket, pairing_g};

    #[test]
    fn rank_one_lift() {
        let r = Roster::new(1, 1);
        let gamma = Connection::new(r, [((1, 1, 1), parse_element(r, "x1").unwrap())]).unwrap();
        let phi = gamma.lift();
        assert_eq!(
            phi.image(Gen::xd(1)),
            parse_element(r, "xd1 - x1 c1 cd1 - x1 b1 bd1").unwrap()
        );
        assert_eq!(phi.image(Gen::xd(1)).total_degree(), Some(1));
        // chain map for [G,·]
        let g = pairing_g(r);
        assert!(bracket(&g, &phi.image(Gen::xd(1))).is_zero());
        let id = gamma.lift_inverse().after(&phi);
        assert!(id.is_identity());
    }

    #[test]
    fn flat_lift_is_identity() {
        assert!(Connection::flat(Roster::new(2, 2)).lift().is_identity());
    }

    #[test]
    fn rejects_non_base_coefficients() {
        let r = Roster::new(1, 1);
        assert!(Connection::new(r, [((1, 1, 1), parse_element(r, "y1").unwrap())]).is_err());
        assert!(Connection::new(r, [((2, 1, 1), parse_element(r, "x1").unwrap())]).is_err());
    }

    #[test]
    fn family_endpoints() {
        let r = Roster::new(1, 2);
        let g0 = Connection::flat(r);
        let g1 = Connection::new(r, [((1, 1, 2), parse_element(r, "x1^2").unwrap())]).unwrap();
        let fam = Connection::lift_family(&g0, &g1, false);
        assert!(fam.eval(&Rational::from_integer(0.into())).is_identity());
        assert_eq!(fam.eval(&Rational::from_integer(1.into())), g1.lift());
        let inv = Connection::lift_family(&g0, &g1, true);
        assert_eq!(inv.eval(&Rational::from_integer(1.into())), g1.lift_inverse());
    }
}
