//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use peiffer::homotopy::{extend_derivation, filler, verify_w_cocycle, Homotopy};
use peiffer::homotopy2::{check_omega, TwoDerivation};
use peiffer::random::Sampler;
use peiffer::simplex::{A1Element, A2Element, A3Element, Simplices};
use peiffer::suite::{self, f3_scenarios, random_homotopy, random_two_derivation, Scenario, Suite, SuiteConfig};
use peiffer::{fixtures, Algebra, Element, Field, LinearMap, TwoCrossedModule};
use peiffer_cli::commands::run_suite;
use peiffer_cli::Workspace;

const Q: Field = Field::Rational;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn within(v: Verdict, elapsed: Duration, bound: Option<Duration>) -> Verdict {
    match bound {
        Some(b) if elapsed >= b => verdict(false, format!("{}; took {elapsed:?}, bound {b:?}", v.detail)),
        _ => verdict(v.ok, format!("{}; {elapsed:.2?}", v.detail)),
    }
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn x_pow(r: &Algebra, n: u32) -> Element {
    let mut exps = vec![0; r.rank()];
    exps[0] = n;
    r.monomial(&exps, 1)
}

fn f3_map() -> Scenario {
    f3_scenarios(Q).into_iter().next().expect("an F3 scenario")
}

fn fixture_validity() -> Verdict {
    let mut failed = Vec::new();
    let mut checks = 0;
    for m in [fixtures::f2(Q), fixtures::f3(Q), fixtures::free_dom(Q)] {
        let rep = m.check_axioms();
        checks += rep.total_checks();
        if !rep.is_ok() {
            failed.push(format!("{}: {:?}", m.name(), rep.violated_laws()));
        }
    }
    verdict(failed.is_empty(), format!("{checks} checks, violations: {failed:?}"))
}

fn random_a2(rng: &mut Sampler, m: &TwoCrossedModule) -> A2Element {
    A2Element::new(
        rng.element(m.r(), 2),
        rng.element(m.e(), 2),
        rng.element(m.e(), 2),
        rng.element(m.l(), 2),
    )
}

fn random_a3(rng: &mut Sampler, m: &TwoCrossedModule) -> A3Element {
    let x = random_a2(rng, m);
    A3Element::from_nested((
        x.nest(),
        ((rng.element(m.e(), 2), rng.element(m.l(), 2)), rng.element(m.l(), 2)),
    ))
}

fn boundary_homomorphisms() -> Verdict {
    let m = fixtures::f3(Q);
    let s = Simplices::new(&m);
    let mut rng = Sampler::new(2);
    let mut bad = 0;
    let pairs = 500;
    let same = |a: &A1Element, b: &A1Element| a == b;
    for _ in 0..pairs {
        let (x, y) = (random_a2(&mut rng, &m), random_a2(&mut rng, &m));
        let xy = s.a2_mul(&x, &y).unwrap();
        let (bx, by, bxy) = (s.a2_boundaries(&x), s.a2_boundaries(&y), s.a2_boundaries(&xy));
        for (p, a, b) in [
            (&bxy.e01, &bx.e01, &by.e01),
            (&bxy.e12, &bx.e12, &by.e12),
            (&bxy.e02, &bx.e02, &by.e02),
        ] {
            if !same(p, &s.a1_mul(a, b).unwrap()) {
                bad += 1;
            }
        }
        let (x, y) = (random_a3(&mut rng, &m), random_a3(&mut rng, &m));
        let xy = s.a3_mul(&x, &y).unwrap();
        let ((px, qx), (py, qy), (pxy, qxy)) = (s.a3_boundaries(&x), s.a3_boundaries(&y), s.a3_boundaries(&xy));
        if pxy != s.a2_mul(&px, &py).unwrap() {
            bad += 1;
        }
        if qxy != s.a2_mul(&qx, &qy).unwrap() {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("{pairs} pairs, 5 maps each, {bad} failures"))
}

fn derivation_extension() -> Verdict {
    let mut rng = Sampler::new(3);
    let scenarios = f3_scenarios(Q);
    let mut bad = 0;
    let mut checks = 0;
    for i in 0..100 {
        let f = &scenarios[i % scenarios.len()].base;
        let (r, cod, f0) = (f.source().r(), f.target(), f.f0());
        let s_star: Vec<Element> = (0..r.rank()).map(|_| rng.element(cod.e(), 1)).collect();
        let s = extend_derivation(cod, f0, &s_star).unwrap();
        if s.on_generators() != s_star {
            bad += 1;
        }
        for _ in 0..10 {
            let (a, b) = (rng.monomial(r, 4), rng.monomial(r, 4));
            let (fa, fb) = (f0.apply(&a).unwrap(), f0.apply(&b).unwrap());
            let (sa, sb) = (s.apply(&a).unwrap(), s.apply(&b).unwrap());
            let lhs = s.apply(&a.try_mul(&b).unwrap()).unwrap();
            let rhs = &(&cod.act_e(&fa, &sb) + &cod.act_e(&fb, &sa)) + &sa.try_mul(&sb).unwrap();
            checks += 1;
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    verdict(bad == 0, format!("100 derivations, {checks} products, {bad} failures"))
}

fn concatenation_through_filler() -> Verdict {
    let mut rng = Sampler::new(4);
    let scenarios = f3_scenarios(Q);
    let mut bad = 0;
    for i in 0..500 {
        let f = &scenarios[i % scenarios.len()].base;
        let h = random_homotopy(&mut rng, f);
        let h2 = random_homotopy(&mut rng, h.target());
        let cod = f.target();
        let w = filler(cod, f.f0(), &h.s().on_generators(), &h2.s().on_generators()).unwrap();
        let sum = h.concat(&h2).unwrap();
        let r = rng.polynomial(f.source().r(), 4, 3);
        let lhs = sum.s().apply(&r).unwrap();
        let rhs = &(&h.s().apply(&r).unwrap() + &h2.s().apply(&r).unwrap()) - &cod.d2(&w.apply(&r).unwrap());
        if lhs != rhs {
            bad += 1;
        }
    }
    let f = f3_map().base;
    let n1 = f.target().e().gen(0);
    let n2 = f.target().l().gen(1);
    let w = filler(f.target(), f.f0(), &[n1.clone()], &[n1]).unwrap();
    let pinned = w.apply(&x_pow(f.source().r(), 2)).unwrap();
    let pinned_ok = pinned == n2.scale_int(-2);
    verdict(bad == 0 && pinned_ok, format!("500 triples, {bad} failures; w(x^2) = {pinned}"))
}

fn groupoid_laws() -> Verdict {
    let cfg = SuiteConfig {
        seed: 5,
        samples: 1000,
        degree: 4,
    };
    let scenarios = f3_scenarios(Q);
    let rep = suite::groupoid_suite(&[], &scenarios, &cfg);
    let mut rng = Sampler::new(55);
    let mut cocycle_bad = 0;
    for i in 0..200 {
        let f = &scenarios[i % scenarios.len()].base;
        let h = random_homotopy(&mut rng, f);
        let h2 = random_homotopy(&mut rng, h.target());
        let h3 = random_homotopy(&mut rng, h2.target());
        let r = rng.polynomial(f.source().r(), 4, 3);
        let gens = |h: &Homotopy| h.s().on_generators();
        if !verify_w_cocycle(f.target(), f.f0(), &gens(&h), &gens(&h2), &gens(&h3), &r) {
            cocycle_bad += 1;
        }
    }
    verdict(
        rep.is_ok() && cocycle_bad == 0,
        format!(
            "{} checks over 1000 configurations, violated {:?}; cocycle failures {cocycle_bad}",
            rep.total_checks(),
            rep.violated_laws()
        ),
    )
}

fn two_fold_homotopy() -> Verdict {
    let mut rng = Sampler::new(6);
    let scenarios = f3_scenarios(Q);
    let mut bad = 0;
    for i in 0..200 {
        let f = &scenarios[i % scenarios.len()].base;
        let h = random_homotopy(&mut rng, f);
        let q = random_two_derivation(&mut rng, &h);
        match q.two_fold_target() {
            Ok(d) if d.derivation().check().is_ok() && d.derivation().target_unchecked() == *h.target() => {}
            _ => bad += 1,
        }
    }
    let f = f3_map().base;
    let cod = f.target();
    let t = LinearMap::zero(f.source().e(), cod.l()).unwrap();
    let h = Homotopy::from_generators(&f, &[cod.e().gen(0)], t).unwrap();
    let q = TwoDerivation::from_generators(&h, &[cod.l().gen(0)]).unwrap();
    let value = q
        .two_fold_target()
        .unwrap()
        .s()
        .apply(&x_pow(f.source().r(), 2))
        .unwrap();
    let pinned_ok = value == cod.e().gen(1).scale_int(8);
    verdict(bad == 0 && pinned_ok, format!("200 2-derivations, {bad} failures; s'(x^2) = {value}"))
}

fn omega_multiplicative() -> Verdict {
    let mut rng = Sampler::new(7);
    let scenarios = f3_scenarios(Q);
    let mut bad = 0;
    for i in 0..1000 {
        let f = &scenarios[i % scenarios.len()].base;
        let h = random_homotopy(&mut rng, f);
        let q = random_two_derivation(&mut rng, &h);
        let r = f.source().r();
        let (a, b) = (rng.polynomial(r, 3, 2), rng.polynomial(r, 3, 2));
        if !check_omega(&q, &a, &b).unwrap_or(false) {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("1000 pairs, {bad} failures"))
}

fn two_groupoid_laws() -> Verdict {
    let cfg = SuiteConfig {
        seed: 8,
        samples: 500,
        degree: 4,
    };
    let rep = suite::two_groupoid_suite(&[], &f3_scenarios(Q), &cfg);

    let f = f3_map().base;
    let cod = f.target();
    let (n1, n2) = (cod.l().gen(0), cod.l().gen(1));
    let t = || LinearMap::zero(f.source().e(), cod.l()).unwrap();
    let h = Homotopy::from_generators(&f, &[n1.clone()], t()).unwrap();
    let q = TwoDerivation::from_generators(&h, &[n1.clone()]).unwrap();
    let u = Homotopy::from_generators(h.target(), &[n1], t()).unwrap();
    let x2 = x_pow(f.source().r(), 2);
    let closed = peiffer::homotopy2::whisker_right(&q, &u).unwrap();
    let ext = peiffer::homotopy2::whisker_right_by_extension(&q, &u).unwrap();
    let value = closed.q().apply(&x2).unwrap();
    let pinned_ok = value == n2.scale_int(7) && closed.agrees_on(&ext, &[x2.clone(), x_pow(f.source().r(), 3)]);
    verdict(
        rep.is_ok() && pinned_ok,
        format!(
            "{} checks over 500 configurations, violated {:?}; (q right-whiskered by u)(x^2) = {value}",
            rep.total_checks(),
            rep.violated_laws()
        ),
    )
}

fn mutation_sensitivity() -> Verdict {
    let cfg = SuiteConfig {
        seed: 9,
        samples: 20,
        degree: 4,
    };
    let cases = [
        ("lifting-sign", Suite::Axioms),
        ("action-entry", Suite::Axioms),
        ("boundary-entry", Suite::Axioms),
        ("structure-constant", Suite::Axioms),
        ("derivation-override", Suite::Groupoid),
    ];
    let mut caught = Vec::new();
    let mut missed = Vec::new();
    for (name, which) in cases {
        let path = root().join("fixtures/mutations").join(format!("{name}.json"));
        let found = Workspace::load_unvalidated(&path)
            .ok()
            .and_then(|ws| run_suite(&ws, which, &cfg).ok())
            .map(|rep| rep.violated_laws().len())
            .unwrap_or(0);
        if found > 0 {
            caught.push(format!("{name}: {found} laws"));
        } else {
            missed.push(name);
        }
    }
    verdict(missed.is_empty(), format!("caught {caught:?}, missed {missed:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict, Option<u64>); 9] = [
        ("1 fixture validity", fixture_validity, Some(1)),
        ("2 boundary homomorphisms", boundary_homomorphisms, Some(5)),
        ("3 derivation extension", derivation_extension, None),
        ("4 concatenation through the filler", concatenation_through_filler, None),
        ("5 groupoid laws", groupoid_laws, Some(30)),
        ("6 two-fold homotopy target", two_fold_homotopy, None),
        ("7 omega multiplicativity", omega_multiplicative, None),
        ("8 2-groupoid laws", two_groupoid_laws, Some(60)),
        ("9 mutation sensitivity", mutation_sensitivity, None),
    ];
    let mut all = true;
    for (name, run, bound) in criteria {
        let start = Instant::now();
        let v = within(run(), start.elapsed(), bound.map(Duration::from_secs));
        all &= v.ok;
        println!("{} criterion {name}: {}", if v.ok { "PASS" } else { "FAIL" }, v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
