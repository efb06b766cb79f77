use crate::algebra::{Element, Roster};
use crate::bracket::{bracket, derived_poisson, ensure_function};
use crate::error::{Error, Result};

use super::LInfty;

/// Which Lie bracket a dgLa uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketKind {
    /// The big bracket on the full algebra; Lie degree `|a| − 1`.
    Big,
    /// The derived bracket `{f,g} = −[[P,f],g]` on daggered-free elements;
    /// Lie degree `|a|`.
    Derived(Element),
}

/// Differential graded Lie algebra in L∞[1] form:
/// `μ¹ = [Γ,·]`, `μ²(a,b) = (−1)^{|a|'}[a,b]` with `|a|' = Lie degree − 1`.
#[derive(Clone, Debug)]
pub struct DgLa {
    roster: Roster,
    kind: BracketKind,
    differential: Option<Element>,
}

impl DgLa {
    /// Big-bracket dgLa with differential `[gamma, ·]` (e.g. `gamma = G`).
    pub fn big(roster: Roster, gamma: Option<Element>) -> Self {
        DgLa {
            roster,
            kind: BracketKind::Big,
            differential: gamma.filter(|g| !g.is_zero()),
        }
    }

    /// Derived-bracket dgLa of the Poisson element `p`, with differential
    /// `{omega, ·}`.
    pub fn derived(p: Element, omega: Option<Element>) -> Self {
        DgLa {
            roster: p.roster(),
            kind: BracketKind::Derived(p),
            differential: omega.filter(|g| !g.is_zero()),
        }
    }

    pub fn roster(&self) -> Roster {
        self.roster
    }

    pub fn kind(&self) -> &BracketKind {
        &self.kind
    }

    pub fn differential(&self) -> Option<&Element> {
        self.differential.as_ref()
    }

    fn shift(&self) -> i32 {
        match self.kind {
            BracketKind::Big => 2,
            BracketKind::Derived(_) => 1,
        }
    }

    /// The graded Lie bracket.
    pub fn lie(&self, a: &Element, b: &Element) -> Result<Element> {
        match &self.kind {
            BracketKind::Big => Ok(bracket(a, b)),
            BracketKind::Derived(p) => derived_poisson(p, a, b),
        }
    }

    /// `Σ (−1)^{|m|'} m` over the monomials of `a`.
    pub fn twist(&self, a: &Element) -> Element {
        let shift = self.shift();
        a.map_terms(|m, c| {
            let e = Element::from_term(a.roster(), m.clone(), c.clone());
            if (m.total_degree() - shift).rem_euclid(2) == 0 {
                e
            } else {
                -e
            }
        })
    }

    /// `μ¹`
    pub fn d(&self, a: &Element) -> Result<Element> {
        match &self.differential {
            None => Ok(Element::zero(self.roster)),
            Some(g) => self.lie(g, a),
        }
    }

    /// `μ²`
    pub fn l2(&self, a: &Element, b: &Element) -> Result<Element> {
        self.lie(&self.twist(a), b)
    }
}

impl LInfty for DgLa {
    type Elem = Element;

    fn degree(&self, a: &Element) -> Result<i32> {
        if let BracketKind::Derived(_) = self.kind {
            ensure_function(a)?;
        }
        if a.is_zero() {
            return Ok(0);
        }
        a.total_degree()
            .map(|d| d - self.shift())
            .ok_or_else(|| Error::Degree(format!("inhomogeneous argument {a}")))
    }

    fn arity_bound(&self) -> usize {
        8
    }

    fn top_arity(&self) -> usize {
        2
    }

    fn mu(&self, args: &[Element]) -> Result<Element> {
        self.check_arity(args.len())?;
        for a in args {
            a.check_roster(&Element::zero(self.roster))?;
        }
        match args {
            [a] => self.d(a),
            [a, b] => self.l2(a, b),
            _ => Ok(Element::zero(self.roster)),
        }
    }

    fn zero(&self) -> Element {
        Element::zero(self.roster)
    }
}
