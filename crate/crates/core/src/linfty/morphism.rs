use std::marker::PhantomData;

use crate::algebra::Rational;
use crate::error::{Error, Result};

use super::signs::{koszul_sign, ordered_partitions, unshuffles};
use super::{inv_factorial, mc_residual, Carrier, LInfty};

/// An L∞ morphism given by its Taylor components.
pub trait LInftyMorphism {
    type Src: Carrier;
    type Tgt: Carrier;

    /// `F_k(args)` with `k = args.len()`.
    fn component(&self, args: &[Self::Src]) -> Result<Self::Tgt>;

    /// Largest arity that can be evaluated.
    fn arity_bound(&self) -> usize;

    /// Declared bound: components above this arity vanish on the inputs the
    /// morphism is used with.
    fn top_arity(&self) -> usize;

    fn target_zero(&self, like: &Self::Src) -> Self::Tgt;

    /// `(1/k!) F_k(v,…,v)` for `k = 1..=top_arity()`.
    fn diagonal(&self, v: &Self::Src) -> Result<Vec<Self::Tgt>> {
        (1..=self.top_arity())
            .map(|k| Ok(self.component(&vec![v.clone(); k])?.scale(&inv_factorial(k))))
            .collect()
    }
}

/// Push an MC element forward: `Σ_k (1/k!) F_k(v,…,v)`, re-certified in
/// the target.
pub fn push_mc<S, T, F>(f: &F, source: &S, target: &T, v: &S::Elem) -> Result<T::Elem>
where
    S: LInfty,
    T: LInfty,
    F: LInftyMorphism<Src = S::Elem, Tgt = T::Elem>,
{
    let r = mc_residual(source, v)?;
    if !r.is_zero() {
        return Err(Error::NotMaurerCartan {
            residual: r.to_string(),
        });
    }
    let mut w = target.zero();
    for term in f.diagonal(v)? {
        w.add_assign_ref(&term);
    }
    let top = f.top_arity();
    if top < f.arity_bound() {
        let guard = f.component(&vec![v.clone(); top + 1])?;
        if !guard.is_zero() {
            return Err(Error::Termination(format!(
                "F_{} does not vanish on the MC element: {guard}",
                top + 1
            )));
        }
    }
    let defect = mc_residual(target, &w)?;
    if !defect.is_zero() {
        return Err(Error::MorphismDefect(defect.to_string()));
    }
    Ok(w)
}

/// Defect of the L∞-morphism equation at `args`:
///
/// `Σ_m (1/m!) Σ ε μ_T^m(F(x_{B_1}),…,F(x_{B_m})) − Σ ε F(μ_S^r(x_I), x_J)`.
pub fn morphism_defect<S, T, F>(f: &F, source: &S, target: &T, args: &[S::Elem]) -> Result<T::Elem>
where
    S: LInfty,
    T: LInfty,
    F: LInftyMorphism<Src = S::Elem, Tgt = T::Elem>,
{
    let n = args.len();
    let degrees = args.iter().map(|a| source.degree(a)).collect::<Result<Vec<_>>>()?;
    let sign = |order: &[usize]| Rational::from_integer(koszul_sign(&degrees, order).into());
    let pick = |idx: &[usize]| idx.iter().map(|&k| args[k].clone()).collect::<Vec<_>>();

    let mut out = target.zero();
    for m in 1..=target.top_arity().min(n) {
        let weight = inv_factorial(m);
        for blocks in ordered_partitions(n, m) {
            let order: Vec<usize> = blocks.concat();
            let images = blocks
                .iter()
                .map(|b| f.component(&pick(b)))
                .collect::<Result<Vec<_>>>()?;
            if images.iter().any(|x| x.is_zero()) {
                continue;
            }
            let v = target.mu(&images)?;
            out.add_assign_ref(&v.scale(&(sign(&order) * &weight)));
        }
    }
    for r in 1..=n.min(source.top_arity()) {
        for (i, j) in unshuffles(n, r) {
            let order: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
            let inner = source.mu(&pick(&i))?;
            if inner.is_zero() {
                continue;
            }
            let mut outer = vec![inner];
            outer.extend(pick(&j));
            let v = f.component(&outer)?;
            out.add_assign_ref(&v.scale(&(-sign(&order))));
        }
    }
    Ok(out)
}

/// Strict morphism whose only component is the identity.
pub struct Inclusion<E>(PhantomData<E>);

impl<E> Default for Inclusion<E> {
    fn default() -> Self {
        Inclusion(PhantomData)
    }
}

impl<E: Carrier> LInftyMorphism for Inclusion<E> {
    type Src = E;
    type Tgt = E;

    fn component(&self, args: &[E]) -> Result<E> {
        match args {
            [a] => Ok(a.clone()),
            [a, ..] => Ok(a.zero_like()),
            [] => Err(Error::ArityBound { arity: 0, bound: 1 }),
        }
    }

    fn arity_bound(&self) -> usize {
        8
    }

    fn top_arity(&self) -> usize {
        1
    }

    fn target_zero(&self, like: &E) -> E {
        like.zero_like()
    }
}
