use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::element::Element;
use super::generator::Roster;
use super::Rational;

/// An element with polynomial dependence on the interval parameter `t`:
/// `coeffs[k]` is the coefficient of `t^k`. Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct TPoly {
    roster: Roster,
    coeffs: Vec<Element>,
}

impl TPoly {
    pub fn zero(roster: Roster) -> Self {
        TPoly {
            roster,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(e: Element) -> Self {
        TPoly::from_coeffs(e.roster(), vec![e])
    }

    /// `e * t^k`
    pub fn monomial(e: Element, k: usize) -> Self {
        let roster = e.roster();
        let mut coeffs = vec![Element::zero(roster); k];
        coeffs.push(e);
        TPoly::from_coeffs(roster, coeffs)
    }

    pub fn from_coeffs(roster: Roster, mut coeffs: Vec<Element>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        assert!(coeffs.iter().all(|c| c.roster() == roster), "roster mismatch");
        TPoly { roster, coeffs }
    }

    pub fn roster(&self) -> Roster {
        self.roster
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Element {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Element::zero(self.roster))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for zero.
    pub fn t_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn map(&self, f: impl FnMut(&Element) -> Element) -> TPoly {
        TPoly::from_coeffs(self.roster, self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<E>(&self, f: impl FnMut(&Element) -> Result<Element, E>) -> Result<TPoly, E> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<_, _>>()?;
        Ok(TPoly::from_coeffs(self.roster, coeffs))
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        TPoly::from_coeffs(self.roster, (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TPoly {
        self.map(|c| -c)
    }

    pub fn scale(&self, r: &Rational) -> TPoly {
        self.map(|c| c.scale(r))
    }

    /// Product with an arbitrary bilinear operation on coefficients.
    pub fn convolve(&self, other: &TPoly, mut op: impl FnMut(&Element, &Element) -> Element) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero(self.roster);
        }
        let mut out = vec![Element::zero(self.roster); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j].add_assign_ref(&op(a, b));
            }
        }
        TPoly::from_coeffs(self.roster, out)
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        self.convolve(other, |a, b| a * b)
    }

    /// `d/dt`
    pub fn derivative(&self) -> TPoly {
        TPoly::from_coeffs(
            self.roster,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale_int(k as i64))
                .collect(),
        )
    }

    /// `∫_0^t`
    pub fn integral(&self) -> TPoly {
        let mut coeffs = vec![Element::zero(self.roster)];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&Rational::new(BigInt::one(), BigInt::from(k + 1))));
        }
        TPoly::from_coeffs(self.roster, coeffs)
    }

    /// Substitute `t = s`.
    pub fn eval(&self, s: &Rational) -> Element {
        let mut out = Element::zero(self.roster);
        let mut power = Rational::one();
        for c in &self.coeffs {
            out.add_assign_ref(&c.scale(&power));
            power *= s;
        }
        out
    }

    /// Replace `t` by `1 - t`.
    pub fn reflect(&self) -> TPoly {
        let one_minus_t = TPoly::from_coeffs(self.roster, vec![Element::one(self.roster), -Element::one(self.roster)]);
        let mut out = TPoly::zero(self.roster);
        let mut power = TPoly::constant(Element::one(self.roster));
        for c in &self.coeffs {
            out = out.add(&power.map(|p| p * c));
            power = power.mul(&one_minus_t);
        }
        out
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c}) t")?,
                _ => write!(f, "({c}) t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Gen;
    use num_traits::Zero;

    #[test]
    fn calculus() {
        let r = Roster::new(0, 1);
        let y = Element::gen(r, Gen::y(1));
        let p = TPoly::monomial(y.clone(), 2);
        assert_eq!(
            p.eval(&Rational::new(1.into(), 2.into())),
            y.scale(&Rational::new(1.into(), 4.into()))
        );
        assert_eq!(p.derivative(), TPoly::monomial(y.scale_int(2), 1));
        assert_eq!(p.derivative().integral(), p);
        assert_eq!(p.reflect().eval(&Rational::zero()), y);
        assert!(TPoly::zero(r).eval(&Rational::one()).is_zero());
    }
}
