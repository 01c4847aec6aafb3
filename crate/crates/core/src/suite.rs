//! Seeded randomized law suites over the groupoid and 2-groupoid of maps.
//!
//! A run draws `samples` configurations. Configuration `i` uses scenario
//! `i mod len` and its own sampler seeded from `(seed, i)`, so reports do not
//! depend on how configurations are spread over threads.

use std::fmt;
use std::str::FromStr;
use std::thread;

use crate::action::Action;
use crate::algebra::{Algebra, Element};
use crate::crossed::{Sweep, TwoCrossedMap, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::homotopy::{filler, FillerFn, Homotopy, QuadraticDerivation};
use crate::homotopy2::{
    check_omega, horizontal_compose, vertical_compose, vertical_inverse, whisker_interchange_check, whisker_left,
    whisker_left_by_extension, whisker_right, whisker_right_by_extension, TwoDerivation,
};
use crate::maps::{AlgebraMorphism, LinearMap};
use crate::random::Sampler;
use crate::report::CheckReport;
use crate::scalar::Field;
use crate::structure::must;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub degree: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 100,
            degree: 4,
        }
    }
}

impl SuiteConfig {
    fn sweep(&self, salt: u64) -> Sweep {
        Sweep {
            seed: self.seed ^ salt,
            samples: 4,
            degree: self.degree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Groupoid,
    TwoGroupoid,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "axioms" => Ok(Suite::Axioms),
            "groupoid" => Ok(Suite::Groupoid),
            "two-groupoid" => Ok(Suite::TwoGroupoid),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Axioms => "axioms",
            Suite::Groupoid => "groupoid",
            Suite::TwoGroupoid => "two-groupoid",
            Suite::All => "all",
        })
    }
}

/// A map out of a domain whose bottom algebra is free; random homotopy
/// chains start here.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub base: TwoCrossedMap,
}

impl Scenario {
    pub fn new(name: impl Into<String>, base: TwoCrossedMap) -> Result<Scenario> {
        let r = base.source().r();
        if !r.is_free() {
            return Err(Error::DomainNotFree(r.name().to_string()));
        }
        Ok(Scenario {
            name: name.into(),
            base,
        })
    }
}

/// The configurations with codomain `F3`: `x ↦ n1` out of `FreeDom`, a two
/// generator variant, and the map `D3 → F3` that is the identity on `E`, `L`.
pub fn f3_scenarios(field: Field) -> Vec<Scenario> {
    let cod = fixtures::f3(field);
    let n = cod.r().clone();
    let mut out = Vec::new();

    let dom = fixtures::free_dom(field);
    out.push(must(Scenario::new(
        "FreeDom -> F3",
        from_free(&dom, &cod, vec![n.gen(0)]),
    )));

    let dom2 = free_domain(field, &["x", "y"]);
    out.push(must(Scenario::new(
        "FreeDom(x, y) -> F3",
        from_free(&dom2, &cod, vec![n.gen(0), n.element(&[1, 1, 0])]),
    )));

    let d3 = fixtures::d3(field);
    let map = must(TwoCrossedMap::new(
        &d3,
        &cod,
        must(AlgebraMorphism::new(d3.r(), &n, vec![n.gen(0)])),
        must(AlgebraMorphism::new(d3.e(), cod.e(), cod.e().gens())),
        must(AlgebraMorphism::new(d3.l(), cod.l(), cod.l().gens())),
    ));
    out.push(must(Scenario::new("D3 -> F3", map)));
    out
}

/// Configurations with codomain `FK`, where the bottom boundary and the
/// asymmetry of the lifting both contribute.
pub fn fk_scenarios(field: Field) -> Vec<Scenario> {
    let cod = fixtures::fk(field);
    let n = cod.r().clone();
    let dom = fixtures::free_dom(field);
    let dom2 = free_domain(field, &["x", "y"]);
    vec![
        must(Scenario::new("FreeDom -> FK", from_free(&dom, &cod, vec![n.gen(0)]))),
        must(Scenario::new(
            "FreeDom(x, y) -> FK",
            from_free(&dom2, &cod, vec![n.gen(1), n.element(&[1, 0, 2])]),
        )),
    ]
}

/// `0 → 0 → κ[names]⁺`.
pub fn free_domain(field: Field, names: &[&str]) -> TwoCrossedModule {
    let l = Algebra::zero("L", field);
    let e = Algebra::zero("E", field);
    let r = Algebra::free("R", field, names);
    must(TwoCrossedModule::new(
        format!("FreeDom({})", names.join(", ")),
        AlgebraMorphism::zero(&l, &e),
        AlgebraMorphism::zero(&e, &r),
        must(Action::zero(&r, &e)),
        must(Action::zero(&r, &l)),
        must(crate::maps::BilinearMap::zero(&e, &e, &l)),
    ))
}

/// The map out of a module with `E = L = 0` determined by `f₀` on generators.
pub fn from_free(dom: &TwoCrossedModule, cod: &TwoCrossedModule, f0: Vec<Element>) -> TwoCrossedMap {
    must(TwoCrossedMap::new(
        dom,
        cod,
        must(AlgebraMorphism::new(dom.r(), cod.r(), f0)),
        AlgebraMorphism::zero(dom.e(), cod.e()),
        AlgebraMorphism::zero(dom.l(), cod.l()),
    ))
}

fn random_images(rng: &mut Sampler, n: usize, target: &Algebra) -> Vec<Element> {
    (0..n).map(|_| rng.element(target, 1)).collect()
}

/// A random valid homotopy starting at `f`. `s` is random on `B`; `t` is the
/// first of zero and two random maps that passes the checker, with `s`
/// resampled a few times before falling back to the zero homotopy.
pub fn random_homotopy(rng: &mut Sampler, f: &TwoCrossedMap) -> Homotopy {
    let (dom, cod) = (f.source(), f.target());
    let sweep = Sweep {
        seed: rng.below(1 << 30) as u64,
        samples: 3,
        degree: 3,
    };
    for _ in 0..4 {
        let s = random_images(rng, dom.r().rank(), cod.e());
        let mut candidates = vec![must(LinearMap::zero(dom.e(), cod.l()))];
        if dom.e().dim() != Some(0) {
            for _ in 0..2 {
                let cols = random_images(rng, dom.e().rank(), cod.l());
                candidates.push(must(LinearMap::new(dom.e(), cod.l(), cols)));
            }
        }
        for t in candidates {
            let d = must(QuadraticDerivation::from_generators(f, &s, t));
            if d.check_with(&sweep).is_ok() {
                return Homotopy::new_unchecked(d);
            }
        }
    }
    must(Homotopy::zero(f))
}

pub fn random_two_derivation(rng: &mut Sampler, h: &Homotopy) -> TwoDerivation {
    let q = random_images(rng, h.domain().r().rank(), h.codomain().l());
    must(TwoDerivation::from_generators(h, &q))
}

/// Generators, two random polynomials and one random monomial.
fn sample_elements(rng: &mut Sampler, r: &Algebra, degree: u32) -> Vec<Element> {
    let mut out = r.gens();
    out.push(rng.polynomial(r, degree, 3));
    out.push(rng.polynomial(r, degree, 3));
    out.push(rng.monomial(r, degree));
    out
}

fn config_sampler(seed: u64, i: usize) -> Sampler {
    Sampler::new(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (i as u64))
}

/// Runs `body` on every configuration, in parallel, and merges the reports
/// in configuration order.
fn run_configs<F>(name: &str, scenarios: &[Scenario], cfg: &SuiteConfig, body: F) -> CheckReport
where
    F: Fn(&mut CheckReport, &Scenario, &mut Sampler, usize) + Sync,
{
    let mut report = CheckReport::new(name).with_seed(cfg.seed);
    if scenarios.is_empty() || cfg.samples == 0 {
        return report;
    }
    let threads = thread::available_parallelism().map_or(1, |n| n.get()).min(cfg.samples);
    let chunk = cfg.samples.div_ceil(threads);
    let parts: Vec<CheckReport> = thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|k| {
                let body = &body;
                scope.spawn(move || {
                    let mut part = CheckReport::new(name);
                    for i in (k * chunk)..((k + 1) * chunk).min(cfg.samples) {
                        let mut rng = config_sampler(cfg.seed, i);
                        body(&mut part, &scenarios[i % scenarios.len()], &mut rng, i);
                    }
                    part
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite worker")).collect()
    });
    for part in parts {
        report.merge(part);
    }
    report.canonicalize();
    report
}

fn tag(i: usize, sc: &Scenario) -> String {
    format!("config {i} ({})", sc.name)
}

/// Records `law` as passed when `res` is `Ok` and satisfies `ok`.
fn expect_ok<T>(
    rep: &mut CheckReport,
    law: &str,
    res: Result<T>,
    ok: impl FnOnce(&T) -> bool,
    witness: impl FnOnce() -> String,
) {
    match res {
        Ok(v) => {
            let good = ok(&v);
            rep.expect(law, good, witness);
        }
        Err(e) => {
            rep.expect(law, false, || format!("{}: {e}", witness()));
        }
    }
}

/// Exhaustive checks of every given algebra, action, module and map.
pub fn axioms_suite(
    algebras: &[Algebra],
    actions: &[(String, Action)],
    modules: &[TwoCrossedModule],
    maps: &[(String, TwoCrossedMap)],
    cfg: &SuiteConfig,
) -> CheckReport {
    let mut report = CheckReport::new("axioms").with_seed(cfg.seed);
    let sweep = Sweep {
        seed: cfg.seed,
        samples: 16,
        degree: cfg.degree,
    };
    for a in algebras {
        report.merge_prefixed(&format!("algebra {}", a.name()), a.law_report());
    }
    for (name, act) in actions {
        report.merge_prefixed(&format!("action {name}"), act.check());
    }
    for m in modules {
        report.merge_prefixed(&format!("module {}", m.name()), m.check_axioms_with(&sweep));
    }
    for (name, f) in maps {
        report.merge_prefixed(&format!("map {name}"), f.check_with(&sweep));
    }
    report.canonicalize();
    report
}

/// Checks of the given homotopies followed by the random groupoid laws.
pub fn groupoid_suite(
    homotopies: &[(String, QuadraticDerivation)],
    scenarios: &[Scenario],
    cfg: &SuiteConfig,
) -> CheckReport {
    groupoid_suite_with(homotopies, scenarios, cfg, &filler)
}

/// [`groupoid_suite`] with every concatenation, inverse and cocycle built
/// from the given filler.
pub fn groupoid_suite_with(
    homotopies: &[(String, QuadraticDerivation)],
    scenarios: &[Scenario],
    cfg: &SuiteConfig,
    w: &FillerFn,
) -> CheckReport {
    let mut report = run_configs("groupoid", scenarios, cfg, |rep, sc, rng, i| {
        groupoid_config(rep, sc, rng, cfg, w, i)
    });
    for (name, d) in homotopies {
        let sweep = Sweep {
            seed: cfg.seed,
            samples: 16,
            degree: cfg.degree,
        };
        report.merge_prefixed(&format!("homotopy {name}"), d.check_with(&sweep));
        let target = d.target_unchecked();
        report.merge_prefixed(&format!("homotopy {name}/target"), target.check_with(&sweep));
    }
    report.canonicalize();
    report
}

fn groupoid_config(
    rep: &mut CheckReport,
    sc: &Scenario,
    rng: &mut Sampler,
    cfg: &SuiteConfig,
    w: &FillerFn,
    i: usize,
) {
    let f = &sc.base;
    let (dom, cod) = (f.source(), f.target());
    let d = random_homotopy(rng, f);
    let d2 = random_homotopy(rng, d.target());
    let d3 = random_homotopy(rng, d2.target());
    let rs = sample_elements(rng, dom.r(), cfg.degree);
    let at = |r: &Element| format!("{}, r = {r}", tag(i, sc));
    let s = d.s().on_generators();
    let s2 = d2.s().on_generators();
    let s3 = d3.s().on_generators();

    let sweep = cfg.sweep(i as u64);
    rep.expect("derivation rule", d.derivation().check_with(&sweep).is_ok(), || tag(i, sc));
    rep.expect("target is a map", d.target().check_with(&sweep).is_ok(), || tag(i, sc));

    let wmap = match w(cod, f.f0(), &s, &s2) {
        Ok(m) => m,
        Err(e) => {
            rep.fail("filler", format!("{}: {e}", tag(i, sc)), "", "");
            return;
        }
    };
    for b in dom.r().gens() {
        let v = must(wmap.apply(&b));
        rep.expect("filler vanishes on B", v.is_zero(), || at(&b));
    }
    let sum = d.concat_using(&d2, w);
    if let Ok(c) = &sum {
        for r in &rs {
            let lhs = must(c.s().apply(r));
            let rhs = &(&must(d.s().apply(r)) + &must(d2.s().apply(r))) - &cod.d2(&must(wmap.apply(r)));
            rep.expect_eq("concatenation through the filler", &lhs, &rhs, || at(r));
        }
    }
    expect_ok(
        rep,
        "concatenation is a homotopy to h",
        sum,
        |c| c.derivation().check_with(&sweep).is_ok() && c.target() == d2.target(),
        || tag(i, sc),
    );

    let zero_f = must(Homotopy::zero(f));
    let zero_g = must(Homotopy::zero(d.target()));
    expect_ok(rep, "left identity", zero_f.concat_using(&d, w), |c| c.agrees_with(&d), || tag(i, sc));
    expect_ok(rep, "right identity", d.concat_using(&zero_g, w), |c| c.agrees_with(&d), || tag(i, sc));

    match d.inverse_using(w) {
        Ok(inv) => {
            expect_ok(rep, "right inverse", d.concat_using(&inv, w), |c| c.agrees_with(&zero_f), || tag(i, sc));
            expect_ok(rep, "left inverse", inv.concat_using(&d, w), |c| c.agrees_with(&zero_g), || tag(i, sc));
            expect_ok(rep, "double inverse", inv.inverse_using(w), |c| c.agrees_with(&d), || tag(i, sc));
        }
        Err(e) => rep.fail("right inverse", format!("{}: {e}", tag(i, sc)), "", ""),
    }

    let left = d.concat_using(&d2, w).and_then(|c| c.concat_using(&d3, w));
    let right = d2.concat_using(&d3, w).and_then(|c| d.concat_using(&c, w));
    match (left, right) {
        (Ok(a), Ok(b)) => {
            rep.expect("associativity", a.agrees_with(&b), || tag(i, sc));
            for r in &rs {
                rep.expect_eq("associativity", &must(a.s().apply(r)), &must(b.s().apply(r)), || at(r));
            }
        }
        (Err(e), _) | (_, Err(e)) => rep.fail("associativity", format!("{}: {e}", tag(i, sc)), "", ""),
    }

    let g0 = crate::homotopy::shifted_base(cod, f.f0(), &s);
    let add = |a: &[Element], b: &[Element]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let sides = (|| -> Result<Vec<(Element, Element)>> {
        let w12 = w(cod, f.f0(), &s, &s2)?;
        let w12_3 = w(cod, f.f0(), &add(&s, &s2), &s3)?;
        let w1_23 = w(cod, f.f0(), &s, &add(&s2, &s3))?;
        let w23 = w(cod, &g0, &s2, &s3)?;
        rs.iter()
            .map(|r| Ok((&w12.apply(r)? + &w12_3.apply(r)?, &w1_23.apply(r)? + &w23.apply(r)?)))
            .collect()
    })();
    match sides {
        Ok(pairs) => {
            for (r, (lhs, rhs)) in rs.iter().zip(pairs) {
                rep.expect_eq("cocycle", &lhs, &rhs, || at(r));
            }
        }
        Err(e) => rep.fail("cocycle", format!("{}: {e}", tag(i, sc)), "", ""),
    }
}

/// Checks of the given 2-derivations followed by the random 2-groupoid laws.
pub fn two_groupoid_suite(
    two_derivations: &[(String, TwoDerivation)],
    scenarios: &[Scenario],
    cfg: &SuiteConfig,
) -> CheckReport {
    let mut report = run_configs("two-groupoid", scenarios, cfg, |rep, sc, rng, i| {
        two_groupoid_config(rep, sc, rng, cfg, i)
    });
    for (name, q) in two_derivations {
        let sweep = Sweep {
            seed: cfg.seed,
            samples: 16,
            degree: cfg.degree,
        };
        report.merge_prefixed(&format!("2-derivation {name}"), q.check_with(&sweep));
    }
    report.canonicalize();
    report
}

fn two_groupoid_config(rep: &mut CheckReport, sc: &Scenario, rng: &mut Sampler, cfg: &SuiteConfig, i: usize) {
    let f = &sc.base;
    let dom = f.source();
    let t = || tag(i, sc);
    let sweep = cfg.sweep(i as u64);

    let d = random_homotopy(rng, f);
    let u = random_homotopy(rng, d.target());
    let m = random_homotopy(rng, u.target());
    let x = must(random_homotopy(rng, f).inverse());
    let q = random_two_derivation(rng, &d);
    let q2 = random_two_derivation(rng, &q.target_unchecked());
    let q3 = random_two_derivation(rng, &q2.target_unchecked());
    let p = random_two_derivation(rng, &u);
    let p2 = random_two_derivation(rng, &p.target_unchecked());
    let rs = sample_elements(rng, dom.r(), cfg.degree);

    rep.expect("2-derivation and its target", q.check_with(&sweep).is_ok(), t);
    expect_ok(rep, "target keeps g", q.two_fold_target(), |h| h.target() == d.target(), t);
    for (a, b) in rs.iter().zip(rs.iter().skip(1)) {
        expect_ok(rep, "omega", check_omega(&q, a, b), |ok| *ok, || format!("{}, ({a}, {b})", t()));
    }

    let left = vertical_compose(&q, &q2).and_then(|a| vertical_compose(&a, &q3));
    let right = vertical_compose(&q2, &q3).and_then(|b| vertical_compose(&q, &b));
    match (left, right) {
        (Ok(a), Ok(b)) => {
            rep.expect("vertical associativity", a.agrees_on(&b, &rs), t);
        }
        (Err(e), _) | (_, Err(e)) => rep.fail("vertical associativity", format!("{}: {e}", t()), "", ""),
    }
    let unit = must(TwoDerivation::zero(&q.target_unchecked()));
    expect_ok(rep, "vertical identity", vertical_compose(&q, &unit), |c| c.agrees_on(&q, &rs), t);
    let zero_d = must(TwoDerivation::zero(&d));
    match vertical_inverse(&q) {
        Ok(inv) => {
            rep.expect("vertical inverse is a 2-derivation", inv.check_with(&sweep).is_ok(), t);
            expect_ok(rep, "vertical inverse", vertical_compose(&q, &inv), |c| c.agrees_on(&zero_d, &rs), t);
            let zero_t = must(TwoDerivation::zero(&q.target_unchecked()));
            expect_ok(rep, "vertical inverse", vertical_compose(&inv, &q), |c| c.agrees_on(&zero_t, &rs), t);
        }
        Err(e) => rep.fail("vertical inverse", format!("{}: {e}", t()), "", ""),
    }

    let wr = whisker_right(&q, &u);
    expect_ok(
        rep,
        "right whisker routes",
        wr.as_ref().map_err(Error::clone).and_then(|a| Ok((a.clone(), whisker_right_by_extension(&q, &u)?))),
        |(a, b)| a.agrees_on(b, &rs),
        t,
    );
    expect_ok(
        rep,
        "right whisker target",
        wr.as_ref().map_err(Error::clone).and_then(|a| Ok((a.target_unchecked(), q.target_unchecked().concat(&u)?))),
        |(a, b)| a.agrees_with(b),
        t,
    );
    expect_ok(
        rep,
        "right whisker is a 2-derivation",
        wr.as_ref().map_err(Error::clone),
        |a| a.check_with(&sweep).is_ok(),
        t,
    );
    let wl = whisker_left(&d, &p);
    expect_ok(
        rep,
        "left whisker routes",
        wl.as_ref().map_err(Error::clone).and_then(|a| Ok((a.clone(), whisker_left_by_extension(&d, &p)?))),
        |(a, b)| a.agrees_on(b, &rs),
        t,
    );
    expect_ok(
        rep,
        "left whisker target",
        wl.as_ref().map_err(Error::clone).and_then(|a| Ok((a.target_unchecked(), d.concat(&p.target_unchecked())?))),
        |(a, b)| a.agrees_with(b),
        t,
    );

    expect_ok(
        rep,
        "right action by vertical composition",
        (|| {
            let lhs = whisker_right(&vertical_compose(&q, &q2)?, &u)?;
            let rhs = vertical_compose(&whisker_right(&q, &u)?, &whisker_right(&q2, &u)?)?;
            Ok((lhs, rhs))
        })(),
        |(a, b)| a.agrees_on(b, &rs),
        t,
    );
    expect_ok(
        rep,
        "right action by concatenation",
        (|| Ok((whisker_right(&q, &u.concat(&m)?)?, whisker_right(&whisker_right(&q, &u)?, &m)?)))(),
        |(a, b)| a.agrees_on(b, &rs),
        t,
    );
    expect_ok(
        rep,
        "left action by vertical composition",
        (|| {
            let lhs = whisker_left(&d, &vertical_compose(&p, &p2)?)?;
            let rhs = vertical_compose(&whisker_left(&d, &p)?, &whisker_left(&d, &p2)?)?;
            Ok((lhs, rhs))
        })(),
        |(a, b)| a.agrees_on(b, &rs),
        t,
    );
    expect_ok(
        rep,
        "left action by concatenation",
        (|| Ok((whisker_left(&x.concat(&d)?, &p)?, whisker_left(&x, &whisker_left(&d, &p)?)?)))(),
        |(a, b)| a.agrees_on(b, &rs),
        t,
    );
    expect_ok(
        rep,
        "whisker interchange",
        whisker_interchange_check(&d, &p, &m, &rs),
        |ok| *ok,
        t,
    );

    expect_ok(
        rep,
        "interchange law",
        (|| {
            let h = horizontal_compose(&q, &p)?;
            let a = vertical_compose(&whisker_right(&q, &u)?, &whisker_left(&q.target_unchecked(), &p)?)?;
            let b = vertical_compose(&whisker_left(&d, &p)?, &whisker_right(&q, &p.target_unchecked())?)?;
            Ok((h, a, b))
        })(),
        |(h, a, b)| h.agrees_on(a, &rs) && h.agrees_on(b, &rs),
        t,
    );
}
