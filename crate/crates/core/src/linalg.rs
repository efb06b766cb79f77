//! Exact linear algebra over ℚ and over polynomials.

use num_traits::Zero;

use crate::algebra::{Element, Rational, Roster};
use crate::error::{Error, Result};

/// Rank of a dense rational matrix given as rows (Gaussian elimination).
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        let pivot_row: Vec<Rational> = m[rank].iter().map(|v| v * &inv).collect();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for (c, p) in pivot_row.iter().enumerate().skip(col) {
                    let delta = &f * p;
                    m[r][c] -= delta;
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Square matrix with polynomial entries (functions of `x`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    roster: Roster,
    entries: Vec<Vec<Element>>,
}

impl PolyMatrix {
    pub fn new(roster: Roster, entries: Vec<Vec<Element>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidAutomorphism("matrix must be square".into()));
        }
        for e in entries.iter().flatten() {
            e.check_roster(&Element::zero(roster))?;
        }
        Ok(PolyMatrix { roster, entries })
    }

    pub fn identity(roster: Roster, n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Element::one(roster)
                        } else {
                            Element::zero(roster)
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { roster, entries }
    }

    /// Parse rows of polynomial strings.
    pub fn parse(roster: Roster, rows: &[Vec<String>]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|s| crate::algebra::parse_element(roster, s)).collect())
            .collect::<Result<Vec<Vec<Element>>>>()?;
        PolyMatrix::new(roster, entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn roster(&self) -> Roster {
        self.roster
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Element>] {
        &self.entries
    }

    pub fn transpose(&self) -> PolyMatrix {
        let n = self.size();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| self.entries[j][i].clone()).collect())
            .collect();
        PolyMatrix {
            roster: self.roster,
            entries,
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = Element::zero(self.roster);
                        for k in 0..n {
                            s.add_assign_ref(&(&self.entries[i][k] * &other.entries[k][j]));
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        PolyMatrix {
            roster: self.roster,
            entries,
        }
    }

    pub fn map(&self, f: impl Fn(&Element) -> Element) -> PolyMatrix {
        PolyMatrix {
            roster: self.roster,
            entries: self.entries.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMatrix::identity(self.roster, self.size())
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip_row)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip_col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        PolyMatrix {
            roster: self.roster,
            entries,
        }
    }

    /// Determinant by cofactor expansion (sizes are small).
    pub fn determinant(&self) -> Element {
        let n = self.size();
        match n {
            0 => Element::one(self.roster),
            1 => self.entries[0][0].clone(),
            _ => {
                let mut det = Element::zero(self.roster);
                for j in 0..n {
                    if self.entries[0][j].is_zero() {
                        continue;
                    }
                    let term = &self.entries[0][j] * &self.minor(0, j).determinant();
                    if j % 2 == 0 {
                        det.add_assign_ref(&term);
                    } else {
                        det.sub_assign_ref(&term);
                    }
                }
                det
            }
        }
    }

    /// Polynomial inverse; exists iff the determinant is a non-zero constant.
    pub fn inverse(&self) -> Result<PolyMatrix> {
        let det = self.determinant();
        let constant = det.terms().all(|(m, _)| m.is_one());
        if det.is_zero() || !constant {
            return Err(Error::InvalidAutomorphism(format!(
                "determinant {det} is not a non-zero constant, no polynomial inverse"
            )));
        }
        let inv_det = det.constant_term().recip();
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = self.minor(j, i).determinant().scale(&inv_det);
                        if (i + j) % 2 == 0 {
                            c
                        } else {
                            -c
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(PolyMatrix {
            roster: self.roster,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_element, q};

    #[test]
    fn rational_rank() {
        let m = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)], vec![q(0, 1), q(1, 3)]];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[vec![q(0, 1)]]), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn unipotent_inverse() {
        let r = Roster::new(1, 2);
        let p = |s: &str| parse_element(r, s).unwrap();
        let g = PolyMatrix::new(r, vec![vec![p("1"), p("x1")], vec![p("0"), p("1")]]).unwrap();
        let gi = g.inverse().unwrap();
        assert_eq!(gi.entry(0, 1), &p("-x1"));
        assert!(g.mul(&gi).is_identity());
        let bad = PolyMatrix::new(r, vec![vec![p("x1"), p("0")], vec![p("0"), p("1")]]).unwrap();
        assert!(matches!(bad.inverse(), Err(Error::InvalidAutomorphism(_))));
    }
}
