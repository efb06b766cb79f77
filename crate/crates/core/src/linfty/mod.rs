//! L∞[1]-algebras given by evaluable structure maps.
//!
//! Degrees here are the shifted degrees of the L∞[1] picture: the structure
//! maps `μ^k` are graded symmetric of degree +1 and MC elements live in
//! degree 0.

mod dgla;
mod interval;
mod morphism;
pub mod signs;

pub use dgla::{BracketKind, DgLa};
pub use interval::{bracket_t, ev, mc_split_check, IntervalElement, IntervalStructure, SplitCheck};
pub use morphism::{morphism_defect, push_mc, Inclusion, LInftyMorphism};

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Element, Rational};
use crate::error::{Error, Result};
use signs::{koszul_sign, unshuffles};

/// Vector-space operations the generic L∞ machinery needs.
pub trait Carrier: Clone + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn scale(&self, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
}

impl Carrier for Element {
    fn zero_like(&self) -> Self {
        Element::zero(self.roster())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        Element::add_assign_ref(self, other)
    }
    fn scale(&self, r: &Rational) -> Self {
        Element::scale(self, r)
    }
    fn is_zero(&self) -> bool {
        Element::is_zero(self)
    }
}

/// A flat L∞[1]-algebra.
pub trait LInfty {
    type Elem: Carrier;

    /// Shifted degree of a homogeneous element (zero reports 0).
    fn degree(&self, a: &Self::Elem) -> Result<i32>;

    /// Largest arity that can be evaluated.
    fn arity_bound(&self) -> usize;

    /// Declared bound: `μ^k` vanishes on admissible inputs for `k` above it.
    fn top_arity(&self) -> usize;

    fn mu(&self, args: &[Self::Elem]) -> Result<Self::Elem>;

    fn zero(&self) -> Self::Elem;

    fn check_arity(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.arity_bound() {
            return Err(Error::ArityBound {
                arity: k,
                bound: self.arity_bound(),
            });
        }
        Ok(())
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `1/k!`
pub fn inv_factorial(k: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(k))
}

/// `J^n(x_1,…,x_n) = Σ_{r+s=n} Σ_σ ε(σ) μ^{s+1}(μ^r(x_σ(1..r)), x_σ(r+1..n))`
/// over `(r,s)`-unshuffles with Koszul signs.
pub fn jacobiator<L: LInfty + ?Sized>(l: &L, args: &[L::Elem]) -> Result<L::Elem> {
    let n = args.len();
    l.check_arity(n)?;
    let degrees = args.iter().map(|a| l.degree(a)).collect::<Result<Vec<_>>>()?;
    let mut out = l.zero();
    for r in 1..=n {
        for (i, j) in unshuffles(n, r) {
            let order: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
            let eps = koszul_sign(&degrees, &order);
            let inner_args: Vec<L::Elem> = i.iter().map(|&k| args[k].clone()).collect();
            let inner = l.mu(&inner_args)?;
            if inner.is_zero() {
                continue;
            }
            let mut outer_args = vec![inner];
            outer_args.extend(j.iter().map(|&k| args[k].clone()));
            let term = l.mu(&outer_args)?;
            out.add_assign_ref(&term.scale(&Rational::from_integer(eps.into())));
        }
    }
    Ok(out)
}

/// Curvature series `Σ_{k≥1} (1/k!) μ^k(v,…,v)` up to the declared bound.
///
/// The first term beyond the bound is evaluated as a guard; a nonzero value
/// means the declared bound is wrong.
pub fn mc_residual<L: LInfty + ?Sized>(l: &L, v: &L::Elem) -> Result<L::Elem> {
    let mut out = l.zero();
    if v.is_zero() {
        return Ok(out);
    }
    let d = l.degree(v)?;
    if d != 0 {
        return Err(Error::Degree(format!(
            "MC candidates have shifted degree 0, got {d} for {v}"
        )));
    }
    let top = l.top_arity();
    for k in 1..=top {
        let args = vec![v.clone(); k];
        out.add_assign_ref(&l.mu(&args)?.scale(&inv_factorial(k)));
    }
    if top < l.arity_bound() {
        let guard = l.mu(&vec![v.clone(); top + 1])?;
        if !guard.is_zero() {
            return Err(Error::Termination(format!(
                "μ^{} does not vanish on the MC candidate: {guard}",
                top + 1
            )));
        }
    }
    Ok(out)
}
