//! The canonical (big) bracket on the full generator algebra.
//!
//! Each coordinate `q ∈ {x, y, c, b}` is paired with its dagger `p`:
//!
//! `[F,H] = Σ ε_q ( (F ∂⃖_p)(∂⃗_q H) − (F ∂⃖_q)(∂⃗_p H) )`
//!
//! with `ε = +1` for the `x`, `y`, `c` pairs and `ε = −1` for `b`. The
//! bracket has degree −1, `[xd, x] = 1`, and the derived bracket of
//! `G = Σ cd_μ bd_μ` pairs `c^μ` with `b_μ` to `+δ`.

use crate::algebra::{Element, Family, Gen, Roster, Side};
use crate::error::{Error, Result};

fn pair_sign(q: Family) -> i64 {
    if q == Family::B {
        -1
    } else {
        1
    }
}

/// Coordinate generators paired with their daggers.
fn pairs(roster: Roster) -> impl Iterator<Item = (Gen, Gen, i64)> {
    roster
        .function_generators()
        .into_iter()
        .map(|q| (q, q.conjugate(), pair_sign(q.family)))
}

/// `[a, b]`; fails only on roster mismatch.
pub fn try_bracket(a: &Element, b: &Element) -> Result<Element> {
    a.check_roster(b)?;
    let roster = a.roster();
    let mut out = Element::zero(roster);
    if a.is_zero() || b.is_zero() {
        return Ok(out);
    }
    for (q, p, eps) in pairs(roster) {
        let ap = a.graded_derivative(p, Side::Right);
        if !ap.is_zero() {
            let bq = b.graded_derivative(q, Side::Left);
            if !bq.is_zero() {
                let t = &ap * &bq;
                if eps > 0 {
                    out.add_assign_ref(&t);
                } else {
                    out.sub_assign_ref(&t);
                }
            }
        }
        let aq = a.graded_derivative(q, Side::Right);
        if !aq.is_zero() {
            let bp = b.graded_derivative(p, Side::Left);
            if !bp.is_zero() {
                let t = &aq * &bp;
                if eps > 0 {
                    out.sub_assign_ref(&t);
                } else {
                    out.add_assign_ref(&t);
                }
            }
        }
    }
    Ok(out)
}

/// `[a, b]`. Panics on roster mismatch.
pub fn bracket(a: &Element, b: &Element) -> Element {
    try_bracket(a, b).expect("roster mismatch")
}

/// `G = Σ_μ cd_μ bd_μ`, the fibre pairing between the ghosts.
pub fn pairing_g(roster: Roster) -> Element {
    let mut g = Element::zero(roster);
    for mu in 1..=roster.k_fiber() as u16 {
        g.add_assign_ref(&Element::word(roster, &[Gen::cd(mu), Gen::bd(mu)]));
    }
    g
}

/// Tautological section `Ω₀ = Σ_μ y_μ c^μ`.
pub fn omega0(roster: Roster) -> Element {
    let mut o = Element::zero(roster);
    for mu in 1..=roster.k_fiber() as u16 {
        o.add_assign_ref(&Element::word(roster, &[Gen::y(mu), Gen::c(mu)]));
    }
    o
}

pub(crate) fn ensure_function(f: &Element) -> Result<()> {
    if f.has_dagger() {
        return Err(Error::NotAFunction(f.to_string()));
    }
    Ok(())
}

/// Derived bracket `{f,g}_P = −[[P,f],g]` on daggered-free elements.
pub fn derived_poisson(p: &Element, f: &Element, g: &Element) -> Result<Element> {
    ensure_function(f)?;
    ensure_function(g)?;
    let pf = try_bracket(p, f)?;
    Ok(-try_bracket(&pf, g)?)
}

/// Whether `[P,P] = 0`; the residual is returned either way.
pub fn is_poisson(p: &Element) -> Result<(bool, Element)> {
    if !p.is_zero() && p.total_degree() != Some(2) {
        return Err(Error::Degree(format!(
            "a Poisson candidate must be homogeneous of total degree 2, got {p}"
        )));
    }
    let r = bracket(p, p);
    Ok((r.is_zero(), r))
}

/// Lie degree of a homogeneous element for the big bracket: `|a| − 1`.
pub fn lie_degree(a: &Element) -> Option<i32> {
    a.total_degree().map(|d| d - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    fn p(r: Roster, s: &str) -> Element {
        parse_element(r, s).unwrap()
    }

    #[test]
    fn canonical_pairing() {
        let r = Roster::new(1, 1);
        assert_eq!(bracket(&p(r, "xd1"), &p(r, "x1")), p(r, "1"));
        assert_eq!(bracket(&p(r, "x1"), &p(r, "xd1")), p(r, "-1"));
        assert_eq!(bracket(&p(r, "yd1"), &p(r, "y1")), p(r, "1"));
    }

    #[test]
    fn g_is_poisson() {
        let r = Roster::new(1, 2);
        let g = pairing_g(r);
        assert_eq!(is_poisson(&g).unwrap(), (true, Element::zero(r)));
        assert_eq!(g.filtration_index(), crate::algebra::FiltrationIndex::new(-1, -1));
    }

    #[test]
    fn so3_is_poisson() {
        let r = Roster::new(0, 3);
        let pi = p(r, "y3 yd1 yd2 + y1 yd2 yd3 + y2 yd3 yd1");
        assert!(is_poisson(&pi).unwrap().0);
        assert_eq!(derived_poisson(&pi, &p(r, "y1"), &p(r, "y2")).unwrap(), p(r, "y3"));
        assert_eq!(derived_poisson(&pi, &p(r, "y2"), &p(r, "y3")).unwrap(), p(r, "y1"));
    }

    #[test]
    fn g_derived_examples() {
        let r = Roster::new(1, 1);
        let g = pairing_g(r);
        assert_eq!(derived_poisson(&g, &p(r, "c1"), &p(r, "b1")).unwrap(), p(r, "1"));
        assert_eq!(derived_poisson(&g, &p(r, "b1"), &p(r, "c1")).unwrap(), p(r, "1"));
        assert!(derived_poisson(&g, &p(r, "x1"), &p(r, "y1")).unwrap().is_zero());
        assert!(matches!(
            derived_poisson(&g, &p(r, "xd1"), &p(r, "y1")),
            Err(Error::NotAFunction(_))
        ));
    }

    #[test]
    fn constant_bivector() {
        let r = Roster::new(0, 2);
        assert!(is_poisson(&p(r, "yd1 yd2")).unwrap().0);
        assert_eq!(
            derived_poisson(&p(r, "yd1 yd2"), &p(r, "y1"), &p(r, "y2")).unwrap(),
            p(r, "1")
        );
    }

    #[test]
    fn poisson_rejects_wrong_degree() {
        let r = Roster::new(1, 1);
        assert!(matches!(is_poisson(&p(r, "x1 xd1")), Err(Error::Degree(_))));
        // yd1 yd1 collapses to zero during parsing, so only a degree-3
        // remainder survives
        assert!(matches!(
            is_poisson(&p(r, "x1 xd1 yd1 yd1 + y1 xd1 yd1 xd1 c1")),
            Ok((true, _))
        ));
        assert!(matches!(
            is_poisson(&p(r, "x1 xd1 yd1 yd1 + y1 xd1 yd1 c1")),
            Err(Error::Degree(_))
        ));
        assert!(matches!(is_poisson(&p(r, "x1 xd1 yd1 + c1")), Err(Error::Degree(_))));
    }

    #[test]
    fn g_differential_on_ghosts() {
        let r = Roster::new(0, 1);
        let g = pairing_g(r);
        assert_eq!(bracket(&g, &p(r, "c1")), p(r, "bd1"));
        assert_eq!(bracket(&g, &p(r, "b1")), p(r, "-cd1"));
    }
}
