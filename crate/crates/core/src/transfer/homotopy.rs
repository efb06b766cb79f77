use crate::algebra::{Element, Rational, Roster};
use crate::bracket::pairing_g;
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::linfty::{Carrier, DgLa, LInfty, LInftyMorphism};

use super::contraction::{Contraction, LiftedKoszulG};
use super::tree::{DecoratedTree, Root, TreeAlgebra};

/// Homotopy transfer of a dgLa along a contraction of its differential.
#[derive(Clone, Debug)]
pub struct HomotopyTransfer<C> {
    contraction: C,
    dgla: DgLa,
}

/// Number of random monomials each contraction is certified on.
pub const CERTIFICATION_SAMPLES: usize = 200;

impl HomotopyTransfer<LiftedKoszulG> {
    /// Transfer of `(full algebra, [G,·], [·,·])` onto multivector fields on
    /// `E`, along the contraction transported by the horizontal lift of
    /// `connection`.
    pub fn for_connection(connection: &Connection) -> Result<Self> {
        let r = connection.roster();
        let c = LiftedKoszulG::certified(connection, CERTIFICATION_SAMPLES)?;
        Ok(HomotopyTransfer::new(c, DgLa::big(r, Some(pairing_g(r)))))
    }
}

impl<C: Contraction> HomotopyTransfer<C> {
    /// The dgLa differential must be the contracted `d`.
    pub fn new(contraction: C, dgla: DgLa) -> Self {
        HomotopyTransfer { contraction, dgla }
    }

    pub fn contraction(&self) -> &C {
        &self.contraction
    }

    pub fn dgla(&self) -> &DgLa {
        &self.dgla
    }

    pub fn roster(&self) -> Roster {
        self.dgla.roster()
    }

    /// Largest arity whose trees can be non-zero for the quasi-isomorphism.
    pub fn quasi_iso_top(&self) -> usize {
        self.contraction.homotopy_bound().map_or(self.arity_bound(), |b| b + 1)
    }

    pub fn arity_bound(&self) -> usize {
        self.dgla.arity_bound()
    }

    fn check_args(&self, args: &[Element]) -> Result<()> {
        if args.is_empty() || args.len() > self.arity_bound() {
            return Err(Error::ArityBound {
                arity: args.len(),
                bound: self.arity_bound(),
            });
        }
        for a in args {
            a.check_roster(&Element::zero(self.roster()))?;
            if self.contraction.pr(&self.contraction.i(a)) != *a {
                return Err(Error::Degree(format!("{a} is not in the contracted carrier")));
            }
        }
        Ok(())
    }

    fn tree_sum(&self, args: &[Element], root: Root) -> Result<Element> {
        let idx: Vec<usize> = (0..args.len()).collect();
        let mut out = Element::zero(self.roster());
        for t in DecoratedTree::enumerate(&idx, 0) {
            out.add_assign_ref(&t.evaluate(self, args, root)?);
        }
        Ok(out)
    }

    /// `μ'^k` of the induced structure: `pr d i` for `k = 1`, otherwise the
    /// sum over trees with root decoration `pr`.
    pub fn transferred_map(&self, args: &[Element]) -> Result<Element> {
        self.check_args(args)?;
        if let [a] = args {
            return Ok(self.contraction.pr(&self.dgla.d(&self.contraction.i(a))?));
        }
        Ok(self.contraction.pr(&self.tree_sum(args, Root::Open)?))
    }

    /// `F_k` of the quasi-isomorphism from the induced structure into the
    /// dgLa: `i` for `k = 1`, otherwise the sum over trees with root `−h`.
    pub fn quasi_iso_component(&self, args: &[Element]) -> Result<Element> {
        self.check_args(args)?;
        self.tree_sum(args, Root::Homotopy)
    }

    /// `Σ_n (1/n!) F_n(v,…,v)`, split by arity, via the recursion
    /// `a_1 = i(v)`, `a_n = −h(½ Σ_{k} μ²(a_k, a_{n−k}))`. Valid for
    /// degree-zero `v`.
    pub fn diagonal_terms(&self, v: &Element) -> Result<Vec<Element>> {
        self.check_args(std::slice::from_ref(v))?;
        if self.dgla.degree(v)? != 0 && !v.is_zero() {
            return Err(Error::Degree(format!("{v} does not have shifted degree 0")));
        }
        let half = Rational::new(1.into(), 2.into());
        let mut terms = vec![self.contraction.i(v)];
        for n in 2..=self.quasi_iso_top() {
            let mut sum = Element::zero(self.roster());
            for k in 1..n {
                sum.add_assign_ref(&self.dgla.l2(&terms[k - 1], &terms[n - k - 1])?);
            }
            terms.push(-self.contraction.h(&sum.scale(&half)));
        }
        Ok(terms)
    }

    pub fn induced(&self) -> TransferredStructure<'_, C> {
        TransferredStructure { transfer: self }
    }

    pub fn quasi_iso(&self) -> QuasiIso<'_, C> {
        QuasiIso { transfer: self }
    }
}

impl<C: Contraction> TreeAlgebra for HomotopyTransfer<C> {
    type Src = Element;
    type Tgt = Element;

    fn degree(&self, x: &Element) -> Result<i32> {
        self.dgla.degree(x)
    }
    fn leaf(&self, x: &Element) -> Result<Element> {
        Ok(self.contraction.i(x))
    }
    fn bracket(&self, a: &Element, b: &Element) -> Result<Element> {
        self.dgla.l2(a, b)
    }
    fn homotopy(&self, a: &Element) -> Element {
        self.contraction.h(a)
    }
    fn filtration_holds(&self, value: &Element, e: usize) -> bool {
        self.contraction.homotopy_bound().is_none() || value.filtration_index().at_least(e as i32, e as i32)
    }
    fn homotopy_bound(&self) -> Option<usize> {
        self.contraction.homotopy_bound()
    }
}

/// The induced L∞[1] structure on the contracted carrier.
pub struct TransferredStructure<'a, C> {
    transfer: &'a HomotopyTransfer<C>,
}

impl<C: Contraction> LInfty for TransferredStructure<'_, C> {
    type Elem = Element;

    fn degree(&self, a: &Element) -> Result<i32> {
        self.transfer.dgla.degree(a)
    }
    fn arity_bound(&self) -> usize {
        self.transfer.arity_bound()
    }
    fn top_arity(&self) -> usize {
        // trees with k leaves carry k − 2 homotopies below the projection
        self.transfer
            .contraction
            .homotopy_bound()
            .map_or(self.arity_bound(), |b| (b + 2).min(self.arity_bound()))
    }
    fn mu(&self, args: &[Element]) -> Result<Element> {
        self.transfer.transferred_map(args)
    }
    fn zero(&self) -> Element {
        Element::zero(self.transfer.roster())
    }
}

/// The quasi-isomorphism from the induced structure into the dgLa.
pub struct QuasiIso<'a, C> {
    transfer: &'a HomotopyTransfer<C>,
}

impl<C: Contraction> LInftyMorphism for QuasiIso<'_, C> {
    type Src = Element;
    type Tgt = Element;

    fn component(&self, args: &[Element]) -> Result<Element> {
        self.transfer.quasi_iso_component(args)
    }
    fn arity_bound(&self) -> usize {
        self.transfer.arity_bound()
    }
    fn top_arity(&self) -> usize {
        self.transfer.quasi_iso_top().min(self.arity_bound())
    }
    fn target_zero(&self, like: &Element) -> Element {
        like.zero_like()
    }
    fn diagonal(&self, v: &Element) -> Result<Vec<Element>> {
        self.transfer.diagonal_terms(v)
    }
}
