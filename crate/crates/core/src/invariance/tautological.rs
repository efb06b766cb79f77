use crate::algebra::{q, Element, Family, Gen, Rational, Roster, Side, TPoly};
use crate::bfv::BfvStructure;
use crate::bracket::omega0;
use crate::error::{Error, Result};
use crate::linalg::PolyMatrix;
use crate::transfer::{Contraction, KoszulDelta};

use super::automorphism::Automorphism;
use super::connections::moved_coordinate;
use super::flow::{flow_automorphism, iteration_bound};

/// Square matrix with entries polynomial in `x` and `t`.
type TMatrix = Vec<Vec<TPoly>>;

/// Gauging of a deformed tautological section back to `Ω₀`.
#[derive(Clone, Debug)]
pub struct TautologicalGauge {
    /// `Ω₀(s) = Σ_μ (g_s y)_μ c^μ`.
    pub section: TPoly,
    /// `M_s = −h(Ω₀(s))`, a section of `ℰ ⊗ ℰ*`.
    pub frame: TPoly,
    /// The parameter values at which `δ(h(Ω₀(s))) = Ω₀(s)` was checked
    /// pointwise (it is also checked as a polynomial identity).
    pub checked_at: Vec<Rational>,
    /// Maps `Ω₀(1)` to `Ω₀`.
    pub automorphism: Automorphism,
}

fn out_of_slice(what: String) -> Error {
    Error::OutOfSlice(format!(
        "{what}; the neighbourhood-shrinking remedy for non-polynomial inverses is not implemented"
    ))
}

fn section_of(r: Roster, g: &PolyMatrix) -> Element {
    let mut out = Element::zero(r);
    for mu in 0..g.size() {
        for nu in 0..g.size() {
            let (m, n) = (mu as u16 + 1, nu as u16 + 1);
            out.add_assign_ref(&(g.entry(mu, nu) * &Element::word(r, &[Gen::y(n), Gen::c(m)])));
        }
    }
    out
}

fn tmul(a: &TMatrix, b: &TMatrix, r: Roster) -> TMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(TPoly::zero(r), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

fn tminor(a: &TMatrix, row: usize, col: usize) -> TMatrix {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

fn tdet(a: &TMatrix, r: Roster) -> TPoly {
    match a.len() {
        0 => TPoly::constant(Element::one(r)),
        1 => a[0][0].clone(),
        n => (0..n).fold(TPoly::zero(r), |acc, j| {
            let term = a[0][j].mul(&tdet(&tminor(a, 0, j), r));
            if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
        }),
    }
}

/// Inverse over polynomials in `x, t`; exists iff the determinant is a
/// nonzero rational constant.
fn tinverse(a: &TMatrix, r: Roster) -> Result<TMatrix> {
    let det = tdet(a, r);
    let c = det.coeff(0);
    let constant = det.t_degree().unwrap_or(0) == 0 && c.terms().all(|(m, _)| m.is_one());
    if det.is_zero() || !constant {
        return Err(out_of_slice(format!("det M_t = {det} is not a nonzero constant")));
    }
    let inv = c.constant_term().recip();
    let n = a.len();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let cof = tdet(&tminor(a, j, i), r).scale(&inv);
                    if (i + j) % 2 == 0 {
                        cof
                    } else {
                        cof.neg()
                    }
                })
                .collect()
        })
        .collect())
}

/// Read the matrix `M^μ_ν` off `Σ M^μ_ν c^μ b_ν`.
fn frame_matrix(r: Roster, m: &TPoly) -> TMatrix {
    let k = r.k_fiber() as u16;
    (1..=k)
        .map(|mu| {
            (1..=k)
                .map(|nu| {
                    m.map(|e| {
                        e.graded_derivative(Gen::c(mu), Side::Left)
                            .graded_derivative(Gen::b(nu), Side::Left)
                    })
                })
                .collect()
        })
        .collect()
}

/// Gauge the deformed tautological section `Ω₀(s) = Σ_μ (g_s y)_μ c^μ`,
/// `g_s = Σ_j s^j family[j]`, back to `Ω₀`: `M_s = −h(Ω₀(s))`,
/// `m_t = −M_t⁻¹ Ṁ_t`, and the flow of `m_t` acting on the ghosts.
pub fn gauge_tautological(s: &BfvStructure, family: &[PolyMatrix]) -> Result<TautologicalGauge> {
    let r = s.roster();
    let k = r.k_fiber();
    for g in family {
        if g.roster() != r || g.size() != k {
            return Err(Error::InvalidAutomorphism(format!(
                "family matrices must be {k}×{k} over {r}"
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
    }
    let section = TPoly::from_coeffs(r, family.iter().map(|g| section_of(r, g)).collect());
    if section
        .coeffs()
        .iter()
        .any(|c| !c.set_to_zero(|g| g.family == Family::Y).is_zero())
    {
        return Err(Error::invariant("Ω₀(s) does not vanish on S".to_string()));
    }

    let delta = KoszulDelta::new(r);
    let hs = section.map(|e| delta.h(e));
    if hs.map(|e| delta.d(e)) != section {
        return Err(Error::invariant(format!("δ(h(Ω₀(s))) ≠ Ω₀(s) for Ω₀(s) = {section}")));
    }
    let checked_at = vec![q(0, 1), q(1, 2), q(1, 1)];
    for t in &checked_at {
        let at = section.eval(t);
        if delta.d(&delta.h(&at)) != at {
            return Err(Error::invariant(format!("δ(h(Ω₀(s))) ≠ Ω₀(s) at s = {t}")));
        }
    }
    let frame = hs.neg();
    let m = frame_matrix(r, &frame);

    let at = |t: &Rational| -> Result<PolyMatrix> {
        PolyMatrix::new(r, m.iter().map(|row| row.iter().map(|e| e.eval(t)).collect()).collect())
    };
    let m0 = at(&q(0, 1))?;
    if !m0.is_identity() {
        return Err(out_of_slice("M₀ is not the identity section".to_string()));
    }
    at(&q(1, 1))?
        .inverse()
        .map_err(|e| out_of_slice(format!("M₁ has no polynomial inverse ({e})")))?;

    // m_t = −M_t⁻¹ Ṁ_t generates c ↦ M_t^{-T} c
    let minv = tinverse(&m, r)?;
    let mdot: TMatrix = m
        .iter()
        .map(|row| row.iter().map(|e| e.derivative()).collect())
        .collect();
    let gen_m = tmul(&minv, &mdot, r);
    let mut u = TPoly::zero(r);
    for mu in 0..k {
        for nu in 0..k {
            let (a, b) = (mu as u16 + 1, nu as u16 + 1);
            let legs = &Element::word(r, &[Gen::c(a), Gen::cd(b)]) + &Element::word(r, &[Gen::b(b), Gen::bd(a)]);
            u = u.sub(&gen_m[mu][nu].map(|e| e * &legs));
        }
    }
    let automorphism = flow_automorphism(&u, 2 * iteration_bound(r), format!("flow of m_t = {u}"))?
        .ok_or_else(|| out_of_slice(format!("the flow of {u} does not terminate")))?;

    let image = automorphism.apply(&section.eval(&q(1, 1)))?;
    if image != omega0(r) {
        return Err(Error::invariant(format!("U(Ω₀(1)) − Ω₀ = {}", &image - &omega0(r))));
    }
    if let Some((g, img)) = moved_coordinate(&automorphism) {
        return Err(Error::invariant(format!("gauge moves {g} to {img}")));
    }
    Ok(TautologicalGauge {
        section,
        frame,
        checked_at,
        automorphism,
    })
}
