use std::fmt;

use crate::algebra::{Element, Rational, TPoly};
use crate::bracket::bracket;
use crate::error::{Error, Result};

use super::{Carrier, DgLa, LInfty};

/// Polynomial form on the interval: `p(t) + q(t) dt`, with `dt` written to
/// the right of the algebra factor.
#[derive(Clone, PartialEq, Eq)]
pub struct IntervalElement {
    pub p: TPoly,
    pub q: TPoly,
}

impl IntervalElement {
    pub fn new(p: TPoly, q: TPoly) -> Self {
        assert_eq!(p.roster(), q.roster(), "roster mismatch");
        IntervalElement { p, q }
    }

    /// `v ⊗ 1`
    pub fn constant(v: Element) -> Self {
        let r = v.roster();
        IntervalElement::new(TPoly::constant(v), TPoly::zero(r))
    }

    /// `v ⊗ t^k`
    pub fn t_power(v: Element, k: usize) -> Self {
        let r = v.roster();
        IntervalElement::new(TPoly::monomial(v, k), TPoly::zero(r))
    }

    /// `v ⊗ t^k dt`
    pub fn dt_power(v: Element, k: usize) -> Self {
        let r = v.roster();
        IntervalElement::new(TPoly::zero(r), TPoly::monomial(v, k))
    }

    pub fn zero(roster: crate::algebra::Roster) -> Self {
        IntervalElement::new(TPoly::zero(roster), TPoly::zero(roster))
    }
}

impl fmt::Display for IntervalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.p),
            (true, false) => write!(f, "[{}] dt", self.q),
            (false, false) => write!(f, "{} + [{}] dt", self.p, self.q),
        }
    }
}

impl fmt::Debug for IntervalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntervalElement({self})")
    }
}

impl Carrier for IntervalElement {
    fn zero_like(&self) -> Self {
        IntervalElement::zero(self.p.roster())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.p = self.p.add(&other.p);
        self.q = self.q.add(&other.q);
    }
    fn scale(&self, r: &Rational) -> Self {
        IntervalElement::new(self.p.scale(r), self.q.scale(r))
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

/// `ev_s`: substitute `t = s` and drop the `dt` part.
pub fn ev(s: &Rational, a: &IntervalElement) -> Element {
    a.p.eval(s)
}

/// Multilinear extension of `f` to `t`-polynomial arguments.
pub(crate) fn multilinear_t(args: &[TPoly], f: &mut dyn FnMut(&[Element]) -> Result<Element>) -> Result<TPoly> {
    let roster = args[0].roster();
    if args.iter().any(|a| a.is_zero()) {
        return Ok(TPoly::zero(roster));
    }
    let lens: Vec<usize> = args.iter().map(|a| a.coeffs().len()).collect();
    let total_deg: usize = lens.iter().map(|l| l - 1).sum();
    let mut out = vec![Element::zero(roster); total_deg + 1];
    let mut idx = vec![0usize; args.len()];
    loop {
        let picked: Vec<Element> = idx.iter().zip(args).map(|(&i, a)| a.coeffs()[i].clone()).collect();
        if picked.iter().all(|e| !e.is_zero()) {
            let v = f(&picked)?;
            out[idx.iter().sum::<usize>()].add_assign_ref(&v);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(TPoly::from_coeffs(roster, out));
            }
            idx[k] += 1;
            if idx[k] < lens[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// The L∞[1] structure on `V ⊗ Ω(I)` induced by a dgLa `V`:
/// `μ̃¹(v⊗α) = μ¹(v)⊗α + (−1)^{|v|} v⊗dα` and
/// `μ̃^k = (−1)^# μ^k(v_1,…,v_k) ⊗ α_1⋯α_k`.
#[derive(Clone, Debug)]
pub struct IntervalStructure {
    base: DgLa,
}

impl IntervalStructure {
    pub fn new(base: DgLa) -> Self {
        IntervalStructure { base }
    }

    pub fn base(&self) -> &DgLa {
        &self.base
    }

    fn twist_t(&self, a: &TPoly) -> TPoly {
        a.map(|c| self.base.twist(c))
    }

    fn mu_t(&self, args: &[TPoly]) -> Result<TPoly> {
        multilinear_t(args, &mut |xs| self.base.mu(xs))
    }
}

impl LInfty for IntervalStructure {
    type Elem = IntervalElement;

    fn degree(&self, a: &IntervalElement) -> Result<i32> {
        let mut deg = None;
        for (part, extra) in [(&a.p, 0), (&a.q, 1)] {
            for c in part.coeffs() {
                if c.is_zero() {
                    continue;
                }
                let d = self.base.degree(c)? + extra;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e == d => {}
                    Some(_) => return Err(Error::Degree(format!("inhomogeneous argument {a}"))),
                }
            }
        }
        Ok(deg.unwrap_or(0))
    }

    fn arity_bound(&self) -> usize {
        self.base.arity_bound()
    }

    fn top_arity(&self) -> usize {
        self.base.top_arity()
    }

    fn mu(&self, args: &[IntervalElement]) -> Result<IntervalElement> {
        self.check_arity(args.len())?;
        let roster = self.base.roster();
        let ps: Vec<TPoly> = args.iter().map(|a| a.p.clone()).collect();
        let p = self.mu_t(&ps)?;
        let mut q = TPoly::zero(roster);
        for j in 0..args.len() {
            if args[j].q.is_zero() {
                continue;
            }
            let mut xs: Vec<TPoly> = ps[..j].to_vec();
            xs.push(args[j].q.clone());
            xs.extend(ps[j + 1..].iter().map(|x| self.twist_t(x)));
            q = q.add(&self.mu_t(&xs)?);
        }
        if args.len() == 1 {
            q = q.add(&self.twist_t(&args[0].p.derivative()));
        }
        Ok(IntervalElement::new(p, q))
    }

    fn zero(&self) -> IntervalElement {
        IntervalElement::zero(self.base.roster())
    }
}

/// Big bracket extended `t`-bilinearly.
pub fn bracket_t(a: &TPoly, b: &TPoly) -> TPoly {
    a.convolve(b, bracket)
}

/// Defects of the two equations an MC element `w(t) + u(t)dt` of
/// `(V⊗Ω(I), [Γ,·] + d, [·,·])` splits into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    /// `[Γ + w(t), Γ + w(t)]`
    pub curvature: TPoly,
    /// `w'(t) − [u(t), Γ + w(t)]`
    pub flow: TPoly,
}

impl SplitCheck {
    pub fn holds(&self) -> bool {
        self.curvature.is_zero() && self.flow.is_zero()
    }
}

pub fn mc_split_check(gamma: &Element, m: &IntervalElement) -> SplitCheck {
    let gw = TPoly::constant(gamma.clone()).add(&m.p);
    SplitCheck {
        curvature: bracket_t(&gw, &gw),
        flow: m.p.derivative().sub(&bracket_t(&m.q, &gw)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_element, q, Roster};
    use crate::bracket::pairing_g;

    fn setup() -> (Roster, IntervalStructure) {
        let r = Roster::new(1, 1);
        (r, IntervalStructure::new(DgLa::big(r, Some(pairing_g(r)))))
    }

    #[test]
    fn differential_on_constant_and_linear_forms() {
        let (r, l) = setup();
        let v = parse_element(r, "c1 xd1").unwrap();
        let dv = l.base().d(&v).unwrap();
        let a = l.mu(&[IntervalElement::constant(v.clone())]).unwrap();
        assert_eq!(a, IntervalElement::constant(dv.clone()));
        // |v|' = |c1 xd1| − 2 = 0, so the dt term carries +v
        let b = l.mu(&[IntervalElement::t_power(v.clone(), 1)]).unwrap();
        let expect = IntervalElement::new(TPoly::monomial(dv, 1), TPoly::constant(v.clone()));
        assert_eq!(b, expect);
        // odd shifted degree flips the sign
        let w = parse_element(r, "c1").unwrap();
        let b = l.mu(&[IntervalElement::t_power(w.clone(), 1)]).unwrap();
        assert_eq!(b.q, TPoly::constant(-w));
    }

    #[test]
    fn dt_squared_vanishes() {
        let (r, l) = setup();
        let v = parse_element(r, "xd1").unwrap();
        let w = parse_element(r, "x1 c1 bd1").unwrap();
        let a = l
            .mu(&[IntervalElement::dt_power(v, 0), IntervalElement::dt_power(w, 2)])
            .unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn evaluation() {
        let (r, _) = setup();
        let v = parse_element(r, "y1 c1").unwrap();
        let w = parse_element(r, "xd1").unwrap();
        let mut a = IntervalElement::t_power(v.clone(), 1);
        a.add_assign_ref(&IntervalElement::dt_power(w, 0));
        assert!(ev(&q(0, 1), &a).is_zero());
        assert_eq!(ev(&q(1, 1), &IntervalElement::t_power(v.clone(), 1)), v);
        assert_eq!(ev(&q(1, 2), &IntervalElement::t_power(v.clone(), 2)), v.scale(&q(1, 4)));
    }

    #[test]
    fn split_check_trivial_cases() {
        let (r, _) = setup();
        let g = pairing_g(r);
        assert!(mc_split_check(&g, &IntervalElement::zero(r)).holds());
        let pi = parse_element(r, "y1 yd1 xd1").unwrap();
        assert!(mc_split_check(&g, &IntervalElement::constant(pi)).holds());
    }
}
