//! One function per command; each fills a [`Report`].

use std::ops::RangeInclusive;

use bfv_core::algebra::{Element, Gen, Roster};
use bfv_core::bfv::{
    bfv_differential, build_charge, build_charge_with, build_poisson, check_coisotropic, cohomology_dims, BfvStructure,
    Charge, ChargeOutcome, Instance,
};
use bfv_core::bracket::{bracket, is_poisson, omega0};
use bfv_core::connection::Connection;
use bfv_core::invariance::{
    bracket_defect, compare_connections, gauge_charges, generator_bracket_defect, linear_automorphism,
    moved_body_coordinate, Automorphism,
};
use bfv_core::linalg::PolyMatrix;
use bfv_core::sampling::{Sampler, Shape};
use bfv_core::serial::{deserialize, deserialize_charge, digest, serialize, serialize_charge};
use bfv_core::Result;

use crate::report::Report;

/// Random products checked for `D² = 0`.
pub const PRODUCT_SAMPLES: usize = 50;
/// Random function pairs checked for bracket preservation.
pub const BRACKET_SAMPLES: usize = 20;
const SEED: u64 = 0xb5f0;

/// Everything a command may consume, already loaded and validated.
pub struct Job {
    pub instance: Instance,
    pub connection: Option<Connection>,
    pub connection2: Option<Connection>,
    pub matrix: Option<PolyMatrix>,
    pub expect_obstruction: bool,
    pub max_degree: u32,
    pub window: RangeInclusive<i32>,
}

impl Job {
    /// The instance with `--connection` applied, if given.
    fn effective(&self, report: &mut Report) -> Option<Instance> {
        match &self.connection {
            None => Some(self.instance.clone()),
            Some(c) => report.attempt("connection override", self.instance.with_connection(c.clone())),
        }
    }
}

fn structure(report: &mut Report, inst: &Instance) -> Option<BfvStructure> {
    let s = report.attempt("structure", build_poisson(inst))?;
    report.defect("structure: [P,P] = 0", &bracket(s.p_hat(), s.p_hat()));
    let delta = s.delta();
    report.condition(
        "structure: Delta in V(1,1)",
        delta.filtration_index().at_least(1, 1),
        || format!("{delta} (filtration index {})", delta.filtration_index()),
    );
    Some(s)
}

/// The first nonzero `D²` on generators and on random products.
fn d_squared(s: &BfvStructure, c: &Charge) -> Result<(Element, Element)> {
    let r = s.roster();
    let d = |f: &Element| bfv_differential(s, c, f);
    let mut on_gens = Element::zero(r);
    for g in r.function_generators() {
        let dd = d(&d(&Element::gen(r, g))?)?;
        if !dd.is_zero() {
            on_gens = dd;
            break;
        }
    }
    let mut on_products = Element::zero(r);
    let mut sm = Sampler::new(SEED);
    let gens = r.function_generators();
    for _ in 0..PRODUCT_SAMPLES {
        let a = sm.any_homogeneous(r, &gens, -2..=2, Shape::default());
        let b = sm.any_homogeneous(r, &gens, -2..=2, Shape::default());
        let dd = d(&d(&(&a * &b))?)?;
        if !dd.is_zero() {
            on_products = dd;
            break;
        }
    }
    Ok((on_gens, on_products))
}

fn charge_checks(report: &mut Report, s: &BfvStructure, c: &Charge) {
    let r = s.roster();
    if let Some(square) = report.attempt("charge: [Omega,Omega] = 0", s.bracket(c.omega(), c.omega())) {
        report.defect("charge: [Omega,Omega] = 0", &square);
    }
    report.defect("charge: Omega_1 = Omega_0", &(&c.component(1) - &omega0(r)));
    if let Some((gens, products)) = report.attempt("D^2 = 0", d_squared(s, c)) {
        report.defect("D^2 = 0 on generators", &gens);
        report.defect(&format!("D^2 = 0 on {PRODUCT_SAMPLES} products"), &products);
    }
}

fn charge_outputs(report: &mut Report, c: &Charge) {
    report.output("omega", c.omega());
    for p in 1..=c.roster().k_fiber() as u32 {
        report.output(&format!("omega_{p}"), c.component(p));
    }
}

pub fn check_coisotropic_cmd(job: &Job, report: &mut Report) {
    let Some(inst) = job.effective(report) else { return };
    let Some(c) = report.attempt("coisotropic", check_coisotropic(&inst)) else {
        return;
    };
    match c.witness {
        None => report.condition("coisotropic", true, String::new),
        Some((mu, nu, w)) => {
            report.defect("coisotropic", &w);
            report.output("witness", format!("{{y{mu}, y{nu}}} on S = {w}"));
        }
    }
}

pub fn build_bracket_cmd(job: &Job, report: &mut Report) {
    let Some(inst) = job.effective(report) else { return };
    let Some(s) = structure(report, &inst) else { return };
    report.output("p_hat", s.p_hat());
    report.output("delta", s.delta());
    report.output("structure_digest", digest(&serialize(&s)));
}

pub fn build_charge_cmd(job: &Job, report: &mut Report) {
    let Some(inst) = job.effective(report) else { return };
    let Some(s) = structure(report, &inst) else { return };
    let Some(outcome) = report.attempt("charge", build_charge(&s)) else {
        return;
    };
    match (outcome, job.expect_obstruction) {
        (ChargeOutcome::Charge(c), false) => {
            report.condition("charge", true, String::new);
            charge_checks(report, &s, &c);
            charge_outputs(report, &c);
        }
        (ChargeOutcome::Charge(c), true) => {
            report.condition("obstruction expected", false, || {
                format!("found the charge {}", c.omega())
            });
            charge_outputs(report, &c);
        }
        (ChargeOutcome::Obstruction(o), expected) => {
            if expected {
                report.condition("obstruction expected", true, String::new);
            } else {
                report.defect("charge", &o.element);
            }
            report.output("obstruction_stage", o.stage);
            report.output("obstruction", &o.element);
        }
    }
}

fn round_trip(report: &mut Report, s: &BfvStructure, c: Option<&Charge>) {
    let inst_text = serialize(s.instance());
    match deserialize::<Instance>(&inst_text) {
        Ok(back) => report.condition("round trip: instance", &back == s.instance(), || serialize(&back)),
        Err(e) => report.error("round trip: instance", &e),
    }
    let text = serialize(s);
    match deserialize::<BfvStructure>(&text) {
        Ok(back) => {
            let same = &back == s && serialize(&back) == text;
            report.condition("round trip: structure", same, || (back.p_hat() - s.p_hat()).to_string());
        }
        Err(e) => report.error("round trip: structure", &e),
    }
    let p = s.p_hat().clone();
    match deserialize::<Element>(&serialize(&p)) {
        Ok(back) => report.defect("round trip: P", &(&back - &p)),
        Err(e) => report.error("round trip: P", &e),
    }
    if let Some(c) = c {
        match serialize_charge(c, s).and_then(|t| deserialize_charge(&t, s)) {
            Ok(back) => report.defect("round trip: charge", &(back.omega() - c.omega())),
            Err(e) => report.error("round trip: charge", &e),
        }
    }
}

pub fn verify_all_cmd(job: &Job, report: &mut Report) {
    let Some(inst) = job.effective(report) else { return };
    let r = inst.roster();
    if let Some((_, residual)) = report.attempt("instance: [Pi,Pi] = 0", is_poisson(inst.pi())) {
        report.defect("instance: [Pi,Pi] = 0", &residual);
    }
    let Some(s) = structure(report, &inst) else { return };
    if let Some(flat) = report.attempt(
        "structure: flat connection gives Delta = 0",
        inst.with_connection(Connection::flat(r))
            .and_then(|i| build_poisson(&i)),
    ) {
        report.defect("structure: flat connection gives Delta = 0", flat.delta());
    }
    let Some(cois) = report.attempt("coisotropic", check_coisotropic(&inst)) else {
        return;
    };
    report.output("coisotropic", cois.holds());
    let Some(outcome) = report.attempt("charge exists iff coisotropic", build_charge(&s)) else {
        return;
    };
    let charge = match outcome {
        ChargeOutcome::Charge(c) => {
            report.condition("charge exists iff coisotropic", cois.holds(), || {
                format!("charge {} on a non-coisotropic instance", c.omega())
            });
            charge_checks(report, &s, &c);
            charge_outputs(report, &c);
            report.output("omega_is_tautological", c.omega() == &omega0(r));
            Some(c)
        }
        ChargeOutcome::Obstruction(o) => {
            report.condition("charge exists iff coisotropic", !cois.holds(), || o.element.to_string());
            report.output("obstruction_stage", o.stage);
            report.output("obstruction", &o.element);
            None
        }
    };
    round_trip(report, &s, charge.as_ref());
    report.output("structure_digest", digest(&serialize(&s)));
}

fn describe(u: &Automorphism) -> String {
    let moved: Vec<String> = u.forward().moved().map(|(g, img)| format!("{g} -> {img}")).collect();
    if moved.is_empty() {
        "identity".into()
    } else {
        moved.join("; ")
    }
}

pub fn compare_connections_cmd(job: &Job, report: &mut Report) {
    let inst = &job.instance;
    let r = inst.roster();
    let g0 = job.connection.clone().unwrap_or_else(|| Connection::flat(r));
    let g1 = job.connection2.clone().unwrap_or_else(|| inst.connection().clone());
    let Some(cmp) = report.attempt("connection comparison", compare_connections(inst, &g0, &g1)) else {
        return;
    };
    let u = &cmp.automorphism;
    match u.apply(cmp.source.p_hat()) {
        Ok(moved) => report.defect("U(P_0) = P_1", &(&moved - cmp.target.p_hat())),
        Err(e) => report.error("U(P_0) = P_1", &e),
    }
    let body = moved_body_coordinate(u);
    report.condition("U = id on x, y modulo ghosts", body.is_none(), || {
        let (g, img) = body.clone().unwrap();
        format!("{g} -> {img}")
    });
    report.output("flow", cmp.flow());
    report.output("automorphism", describe(u));

    let Some(cois) = report.attempt("charges", check_coisotropic(inst)) else {
        return;
    };
    if !cois.holds() {
        report.output("charges", "none: the instance is not coisotropic");
        return;
    }
    let result = (|| -> Result<(Element, Element)> {
        let u = u.restrict_to_functions()?;
        let omega0 = build_charge(&cmp.source)?.charge().expect("coisotropic");
        let omega1 = build_charge(&cmp.target)?.charge().expect("coisotropic");
        let carried = Charge::certified(&cmp.target, u.apply(omega0.omega())?)?;
        let v = gauge_charges(&cmp.target, &carried, &omega1)?;
        let full = u.then(&v)?;
        let maps = &full.apply(omega0.omega())? - omega1.omega();
        let bracket = bracket_defect(&cmp.source, &cmp.target, &full, BRACKET_SAMPLES, SEED)?;
        Ok((maps, bracket))
    })();
    if let Some((maps, bracket)) = report.attempt("charge gauging", result) {
        report.defect("full isomorphism maps Omega_0 to Omega_1", &maps);
        report.defect("full isomorphism preserves the bracket", &bracket);
    }
}

pub fn apply_automorphism_cmd(job: &Job, report: &mut Report) {
    let Some(inst) = job.effective(report) else { return };
    let r = inst.roster();
    let g = job.matrix.as_ref().expect("the matrix is required for this command");
    let Some(lin) = report.attempt("linear automorphism", linear_automorphism(&inst, g)) else {
        return;
    };
    let result = (|| -> Result<(Element, Element, Option<Element>)> {
        let taut = &lin.hat.apply(&omega0(r))? - &omega0(r);
        let p = &lin.hat.apply(lin.source.p_hat())? - lin.target.p_hat();
        let c = match &lin.charges {
            Some((om, image)) => Some(&lin.hat.apply(om.omega())? - image.omega()),
            None => None,
        };
        Ok((taut, p, c))
    })();
    let Some((taut, p, c)) = report.attempt("lift", result) else {
        return;
    };
    report.defect("g(Omega_0) = Omega_0", &taut);
    report.defect("g(P) = P^g", &p);
    let gens = r.generators();
    let brackets = generator_bracket_defect(&lin.hat, &gens);
    report.condition("g preserves the big bracket on generators", brackets.is_none(), || {
        let (a, b, d) = brackets.clone().unwrap();
        format!("[{a},{b}]: {d}")
    });
    match c {
        Some(c) => {
            report.defect("g(Omega) = Omega^g", &c);
            let (_, image) = lin.charges.as_ref().unwrap();
            report.output("omega_g", image.omega());
        }
        None => report.output("charges", "none: the instance is not coisotropic"),
    }
    report.output("pushed_poisson", lin.instance.pi());
    for (&(a, mu, nu), coeff) in lin.instance.connection().entries() {
        report.output(&format!("pushed_connection {a} {mu} {nu}"), coeff);
    }
    report.output("lift", describe(&lin.hat));
}

/// `β_p = y₁ c¹⋯cᵖ b₁⋯b_p`, one per stage `p = 2..=k`.
pub fn canonical_shifts(r: Roster) -> Vec<Element> {
    (2..=r.k_fiber() as u16)
        .map(|p| {
            let mut word = vec![Gen::y(1)];
            word.extend((1..=p).map(Gen::c));
            word.extend((1..=p).map(Gen::b));
            Element::word(r, &word)
        })
        .collect()
}

fn charge_or_report(report: &mut Report, s: &BfvStructure) -> Option<Charge> {
    match report.attempt("charge", build_charge(s))? {
        ChargeOutcome::Charge(c) => Some(c),
        ChargeOutcome::Obstruction(o) => {
            report.defect("charge", &o.element);
            None
        }
    }
}

pub fn gauge_charges_cmd(job: &Job, report: &mut Report) {
    let Some(inst) = job.effective(report) else { return };
    let Some(s) = structure(report, &inst) else { return };
    let Some(omega) = charge_or_report(report, &s) else {
        return;
    };
    let shifts = canonical_shifts(s.roster());
    let Some(alt) = report.attempt("alternative charge", build_charge_with(&s, &shifts)) else {
        return;
    };
    let Some(alt) = alt.charge() else {
        report.condition("alternative charge", false, || {
            "stage shifts produced an obstruction".into()
        });
        return;
    };
    report.output("omega", omega.omega());
    report.output("omega_prime", alt.omega());
    let result = (|| -> Result<(Automorphism, Element, Element)> {
        let v = gauge_charges(&s, &omega, &alt)?;
        let maps = &v.apply(omega.omega())? - alt.omega();
        let bracket = bracket_defect(&s, &s, &v, BRACKET_SAMPLES, SEED)?;
        Ok((v, maps, bracket))
    })();
    if let Some((v, maps, bracket)) = report.attempt("gauge", result) {
        report.defect("V(Omega) = Omega'", &maps);
        report.defect("V preserves the BFV bracket", &bracket);
        report.output("automorphism", describe(&v));
    }
}

pub fn cohomology_cmd(job: &Job, report: &mut Report) {
    let Some(inst) = job.effective(report) else { return };
    let Some(s) = structure(report, &inst) else { return };
    let Some(c) = charge_or_report(report, &s) else { return };
    if let Some((gens, _)) = report.attempt("D^2 = 0", d_squared(&s, &c)) {
        report.defect("D^2 = 0 on generators", &gens);
    }
    let Some(rows) = report.attempt(
        "truncated cohomology",
        cohomology_dims(&s, &c, job.max_degree, job.window.clone()),
    ) else {
        return;
    };
    let bad = rows
        .iter()
        .find(|row| row.boundaries > row.cycles || row.cycles > row.cochains);
    report.condition("boundaries <= cycles <= cochains", bad.is_none(), || {
        format!("{:?}", bad.unwrap())
    });
    report.output("max_degree", job.max_degree);
    for row in rows {
        report.output(
            &format!("H^{}", row.degree),
            format!(
                "{} (cochains {}, cycles {}, boundaries {})",
                row.dimension, row.cochains, row.cycles, row.boundaries
            ),
        );
    }
}
