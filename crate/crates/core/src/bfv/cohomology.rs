use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Family, Gen, Monomial, Rational, Roster};
use crate::error::Result;
use crate::linalg::rank;

use super::charge::{bfv_differential, Charge};
use super::structure::BfvStructure;

/// Truncated cohomology in one total degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub degree: i32,
    /// Dimension of the truncated cochain space.
    pub cochains: usize,
    /// `dim ker D` on the truncation.
    pub cycles: usize,
    /// `dim (D(C^{d−1}) ∩ C^d)` on the truncations.
    pub boundaries: usize,
    pub dimension: usize,
}

/// Monomials in `x, y` of coordinate degree `≤ max_poly_degree`, times
/// ghost monomials, of total degree `degree`.
pub fn truncated_basis(roster: Roster, max_poly_degree: u32, degree: i32) -> Vec<Monomial> {
    let coords: Vec<Gen> = roster
        .function_generators()
        .into_iter()
        .filter(|g| matches!(g.family, Family::X | Family::Y))
        .collect();
    let ghosts: Vec<Gen> = roster
        .function_generators()
        .into_iter()
        .filter(|g| matches!(g.family, Family::C | Family::B))
        .collect();
    let mut polys = vec![Monomial::one()];
    for &g in &coords {
        let mut next = Vec::new();
        for m in &polys {
            let used = m.coordinate_degree();
            for e in 0..=max_poly_degree - used {
                let mut word: Vec<Gen> = m
                    .factors()
                    .iter()
                    .flat_map(|&(h, k)| std::iter::repeat_n(h, k as usize))
                    .collect();
                word.extend(std::iter::repeat_n(g, e as usize));
                next.push(Monomial::from_word(&word).expect("even generators").1);
            }
        }
        polys = next;
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << ghosts.len() {
        let word: Vec<Gen> = ghosts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &g)| g)
            .collect();
        let ghost = Monomial::from_word(&word).expect("distinct odd generators").1;
        if ghost.total_degree() != degree {
            continue;
        }
        for p in &polys {
            out.push(p.mul(&ghost).expect("disjoint factors").1);
        }
    }
    out.sort();
    out
}

/// Dimensions of the truncated `D`-cohomology for each degree in `window`.
pub fn cohomology_dims(
    s: &BfvStructure,
    omega: &Charge,
    max_poly_degree: u32,
    window: RangeInclusive<i32>,
) -> Result<Vec<CohomologyRow>> {
    let r = s.roster();
    let mut rows = Vec::new();
    for d in window {
        let basis = truncated_basis(r, max_poly_degree, d);
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();

        // kernel of D on C^d
        let images = images_of(s, omega, &basis)?;
        let cycles = basis.len() - rank_of(&images);

        // boundaries landing inside the truncation: rank(U) − rank(U off the truncation)
        let lower = truncated_basis(r, max_poly_degree, d - 1);
        let bimages = images_of(s, omega, &lower)?;
        let all = rank_of(&bimages);
        let outside: Vec<Element> = bimages.iter().map(|e| e.filter(|m| !index.contains_key(m))).collect();
        let boundaries = all - rank_of(&outside);
        rows.push(CohomologyRow {
            degree: d,
            cochains: basis.len(),
            cycles,
            boundaries,
            dimension: cycles - boundaries,
        });
    }
    Ok(rows)
}

fn images_of(s: &BfvStructure, omega: &Charge, basis: &[Monomial]) -> Result<Vec<Element>> {
    basis
        .iter()
        .map(|m| {
            bfv_differential(
                s,
                omega,
                &Element::from_term(s.roster(), m.clone(), Rational::from_integer(1.into())),
            )
        })
        .collect()
}

/// Rank of a family of elements as vectors over the monomial basis.
fn rank_of(elems: &[Element]) -> usize {
    let mut cols: BTreeMap<Monomial, usize> = BTreeMap::new();
    for e in elems {
        for (m, _) in e.terms() {
            let n = cols.len();
            cols.entry(m.clone()).or_insert(n);
        }
    }
    let zero = Rational::from_integer(0.into());
    let rows: Vec<Vec<Rational>> = elems
        .iter()
        .map(|e| {
            let mut row = vec![zero.clone(); cols.len()];
            for (m, c) in e.terms() {
                row[cols[m]] = c.clone();
            }
            row
        })
        .collect();
    rank(&rows)
}
