use std::fmt;

use super::generator::Gen;

/// A canonical monomial: strictly increasing generators with positive
/// exponents; odd generators carry exponent 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Gen, u32)>);

/// Sign of a reordering, tracked as a boolean "negate" flag.
#[inline]
fn flip(neg: bool, cond: bool) -> bool {
    neg ^ cond
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(g: Gen) -> Self {
        Monomial(vec![(g, 1)])
    }

    /// Normalize a word of generators into canonical order.
    ///
    /// Returns `None` when an odd generator repeats; otherwise the Koszul
    /// sign (`true` = negative) and the canonical monomial.
    pub fn from_word(word: &[Gen]) -> Option<(bool, Monomial)> {
        let mut acc = (false, Monomial::one());
        for &g in word {
            let (neg, m) = acc;
            let (s, next) = m.mul(&Monomial::generator(g))?;
            acc = (neg ^ s, next);
        }
        Some(acc)
    }

    pub fn factors(&self) -> &[(Gen, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: Gen) -> u32 {
        self.0.iter().find(|(h, _)| *h == g).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&(g, e)| g.total_degree() * e as i32).sum()
    }

    /// (total, ghost, momentum)
    pub fn degrees(&self) -> (i32, i32, i32) {
        self.0.iter().fold((0, 0, 0), |(t, gh, mo), &(g, e)| {
            let (a, b, c) = g.family.degrees();
            let e = e as i32;
            (t + a * e, gh + b * e, mo + c * e)
        })
    }

    /// Ghost shift `#c - #cd` and momentum shift `#b - #bd`.
    pub fn shifts(&self) -> (i32, i32) {
        use super::generator::Family;
        let mut gh = 0;
        let mut mo = 0;
        for &(g, e) in &self.0 {
            let e = e as i32;
            match g.family {
                Family::C => gh += e,
                Family::CDag => gh -= e,
                Family::B => mo += e,
                Family::BDag => mo -= e,
                _ => {}
            }
        }
        (gh, mo)
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|(g, _)| g.is_odd()).count() % 2 == 1
    }

    /// Number of daggered generators counted with multiplicity.
    pub fn dagger_count(&self) -> u32 {
        self.0
            .iter()
            .filter(|(g, _)| g.family.is_dagger())
            .map(|&(_, e)| e)
            .sum()
    }

    /// Polynomial degree in the even coordinates `x` and `y`.
    pub fn coordinate_degree(&self) -> u32 {
        use super::generator::Family;
        self.0
            .iter()
            .filter(|(g, _)| matches!(g.family, Family::X | Family::Y))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn contains_any(&self, pred: impl Fn(Gen) -> bool) -> bool {
        self.0.iter().any(|&(g, _)| pred(g))
    }

    /// Graded product `self * other`, reordered into canonical form.
    ///
    /// Returns `None` when an odd generator would appear twice.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let a = &self.0;
        let b = &other.0;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut neg = false;
        // odd generators of `a` not yet emitted, i.e. those a factor of `b`
        // must move past when it is placed
        let mut odd_remaining_a = a.iter().filter(|(g, _)| g.is_odd()).count();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                if a[i].0.is_odd() {
                    odd_remaining_a -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let (g, e) = b[j];
                if g.is_odd() {
                    neg = flip(neg, odd_remaining_a % 2 == 1);
                }
                out.push((g, e));
                j += 1;
            } else {
                let (g, e1) = a[i];
                let (_, e2) = b[j];
                if g.is_odd() {
                    return None;
                }
                out.push((g, e1 + e2));
                i += 1;
                j += 1;
            }
        }
        Some((neg, Monomial(out)))
    }

    /// Left derivative by `g`: returns (sign, multiplicity, remaining monomial).
    pub fn left_derivative(&self, g: Gen) -> Option<(bool, u32, Monomial)> {
        let pos = self.0.iter().position(|&(h, _)| h == g)?;
        let mut neg = false;
        if g.is_odd() {
            let odd_before = self.0[..pos].iter().filter(|(h, _)| h.is_odd()).count();
            neg = odd_before % 2 == 1;
        }
        Some((neg, self.0[pos].1, self.lower(pos)))
    }

    /// Right derivative by `g`.
    pub fn right_derivative(&self, g: Gen) -> Option<(bool, u32, Monomial)> {
        let pos = self.0.iter().position(|&(h, _)| h == g)?;
        let mut neg = false;
        if g.is_odd() {
            let odd_after = self.0[pos + 1..].iter().filter(|(h, _)| h.is_odd()).count();
            neg = odd_after % 2 == 1;
        }
        Some((neg, self.0[pos].1, self.lower(pos)))
    }

    fn lower(&self, pos: usize) -> Monomial {
        let mut f = self.0.clone();
        if f[pos].1 == 1 {
            f.remove(pos);
        } else {
            f[pos].1 -= 1;
        }
        Monomial(f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (g, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_square_vanishes() {
        assert!(Monomial::from_word(&[Gen::c(1), Gen::c(1)]).is_none());
    }

    #[test]
    fn odd_swap_is_negative() {
        let (neg, m) = Monomial::from_word(&[Gen::b(1), Gen::c(1)]).unwrap();
        assert!(neg);
        assert_eq!(m.factors(), &[(Gen::c(1), 1), (Gen::b(1), 1)]);
    }

    #[test]
    fn even_generators_commute() {
        let (neg, m) = Monomial::from_word(&[Gen::y(1), Gen::x(1)]).unwrap();
        assert!(!neg);
        assert_eq!(m.factors(), &[(Gen::x(1), 1), (Gen::y(1), 1)]);
    }

    #[test]
    fn derivative_signs() {
        let (_, bc) = Monomial::from_word(&[Gen::c(1), Gen::b(1)]).unwrap();
        let (neg, mult, rest) = bc.left_derivative(Gen::b(1)).unwrap();
        assert!(neg);
        assert_eq!(mult, 1);
        assert_eq!(rest, Monomial::generator(Gen::c(1)));
        let (neg, _, _) = bc.right_derivative(Gen::c(1)).unwrap();
        assert!(neg);
        let (neg, _, _) = bc.right_derivative(Gen::b(1)).unwrap();
        assert!(!neg);
    }
}
