//! The subcommands, as functions from parsed arguments to output and exit code.

use std::path::Path;

use peiffer::homotopy::{filler, Homotopy};
use peiffer::homotopy2::{
    horizontal_compose, vertical_compose, vertical_inverse, whisker_left, whisker_right, TwoDerivation,
};
use peiffer::suite::{self, Scenario, Suite, SuiteConfig};
use peiffer::{CheckReport, Element, TwoCrossedMap};
use serde::Serialize;
use serde_json::json;

use crate::workspace::{parse_monomial, LoadError, LoadResult, Workspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn report(report: &CheckReport, format: Format) -> Outcome {
        let stdout = match format {
            Format::Text => report.to_string(),
            Format::Json => serde_json::to_string_pretty(report).expect("serializable") + "\n",
        };
        let code = if report.is_ok() { EXIT_OK } else { EXIT_VIOLATIONS };
        Outcome { stdout, code }
    }
}

fn select<'a, T>(
    kind: &str,
    table: &'a std::collections::BTreeMap<String, T>,
    name: Option<&str>,
) -> LoadResult<Vec<(&'a String, &'a T)>> {
    match name {
        None => Ok(table.iter().collect()),
        Some(n) => table
            .get_key_value(n)
            .map(|e| vec![e])
            .ok_or_else(|| LoadError::UnresolvedReference(format!("{kind} {n:?}"))),
    }
}

pub fn check_module(path: &Path, name: Option<&str>, format: Format) -> LoadResult<Outcome> {
    let ws = Workspace::load_unvalidated(path)?;
    let mut report = CheckReport::new("check-module");
    for (n, entry) in select("module", &ws.modules, name)? {
        report.merge_prefixed(n, entry.module.check_axioms());
    }
    report.canonicalize();
    Ok(Outcome::report(&report, format))
}

pub fn check_map(path: &Path, name: Option<&str>, format: Format) -> LoadResult<Outcome> {
    let ws = Workspace::load_unvalidated(path)?;
    let mut report = CheckReport::new("check-map");
    for (n, entry) in select("map", &ws.maps, name)? {
        report.merge_prefixed(n, entry.map.check());
    }
    report.canonicalize();
    Ok(Outcome::report(&report, format))
}

/// Checks homotopies and their targets, then 2-derivations.
pub fn check_homotopy(path: &Path, name: Option<&str>, format: Format) -> LoadResult<Outcome> {
    let ws = Workspace::load_unvalidated(path)?;
    let mut report = CheckReport::new("check-homotopy");
    let homotopies = select("homotopy", &ws.homotopies, name);
    let two = select("2-derivation", &ws.two_derivations, name);
    if let (Err(e), Err(_)) = (&homotopies, &two) {
        return Err(LoadError::UnresolvedReference(e.to_string()));
    }
    for (n, entry) in homotopies.unwrap_or_default() {
        let d = entry.homotopy.derivation();
        report.merge_prefixed(n, d.check());
        report.merge_prefixed(&format!("{n}/target"), d.target_unchecked().check());
    }
    for (n, entry) in two.unwrap_or_default() {
        report.merge_prefixed(n, entry.derivation.check());
    }
    report.canonicalize();
    Ok(Outcome::report(&report, format))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Boxplus,
    Inverse,
    Star,
    Inverse2,
    WhiskerL,
    WhiskerR,
    Otimes,
}

impl Op {
    pub fn parse(s: &str) -> LoadResult<Op> {
        Ok(match s {
            "boxplus" => Op::Boxplus,
            "inverse" => Op::Inverse,
            "star" => Op::Star,
            "inverse2" => Op::Inverse2,
            "whisker-l" => Op::WhiskerL,
            "whisker-r" => Op::WhiskerR,
            "otimes" => Op::Otimes,
            other => return Err(LoadError::Parse(format!("unknown operation {other:?}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Boxplus => "boxplus",
            Op::Inverse => "inverse",
            Op::Star => "star",
            Op::Inverse2 => "inverse2",
            Op::WhiskerL => "whisker-l",
            Op::WhiskerR => "whisker-r",
            Op::Otimes => "otimes",
        }
    }

    fn arity(self) -> usize {
        match self {
            Op::Inverse | Op::Inverse2 => 1,
            _ => 2,
        }
    }
}

#[derive(Serialize)]
struct MapImages {
    f0: Vec<String>,
    f1: Vec<String>,
    f2: Vec<String>,
}

fn strings(xs: &[Element]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn map_images(f: &TwoCrossedMap) -> MapImages {
    MapImages {
        f0: strings(f.f0().images()),
        f1: strings(f.f1().images()),
        f2: strings(f.f2().images()),
    }
}

enum Composite {
    Homotopy(Homotopy, Option<(Vec<Element>, Vec<Element>)>),
    Two(TwoDerivation),
}

/// Runs one composition and reports the result on `B`, on the basis of
/// `E`, and at every queried monomial.
pub fn compose(path: &Path, op: Op, operands: &[String], queries: &[String], format: Format) -> LoadResult<Outcome> {
    let ws = Workspace::load(path)?;
    if operands.len() != op.arity() {
        return Err(LoadError::Parse(format!(
            "{} takes {} operands, got {}",
            op.name(),
            op.arity(),
            operands.len()
        )));
    }
    let a = operands[0].as_str();
    let b = operands.get(1).map(String::as_str).unwrap_or_default();
    let result = match op {
        Op::Boxplus => {
            let (x, y) = (ws.homotopy(a)?, ws.homotopy(b)?);
            let pair = (x.s().on_generators(), y.s().on_generators());
            Composite::Homotopy(x.concat(y)?, Some(pair))
        }
        Op::Inverse => Composite::Homotopy(ws.homotopy(a)?.inverse()?, None),
        Op::Star => Composite::Two(vertical_compose(ws.two_derivation(a)?, ws.two_derivation(b)?)?),
        Op::Inverse2 => Composite::Two(vertical_inverse(ws.two_derivation(a)?)?),
        Op::WhiskerL => Composite::Two(whisker_left(ws.homotopy(a)?, ws.two_derivation(b)?)?),
        Op::WhiskerR => Composite::Two(whisker_right(ws.two_derivation(a)?, ws.homotopy(b)?)?),
        Op::Otimes => Composite::Two(horizontal_compose(ws.two_derivation(a)?, ws.two_derivation(b)?)?),
    };

    let value = match &result {
        Composite::Homotopy(h, pair) => {
            let r = h.domain().r();
            let w = match pair {
                Some((s, s2)) => Some(filler(h.codomain(), h.source().f0(), s, s2)?),
                None => None,
            };
            let mut values = serde_json::Map::new();
            for q in queries {
                let x = monomial_element(r, q)?;
                let mut entry = serde_json::Map::new();
                entry.insert("s".into(), json!(h.s().apply(&x)?.to_string()));
                if let Some(w) = &w {
                    entry.insert("w".into(), json!(w.apply(&x)?.to_string()));
                }
                values.insert(q.clone(), entry.into());
            }
            json!({
                "op": op.name(),
                "kind": "homotopy",
                "s": strings(&h.s().on_generators()),
                "t": strings(h.t().columns()),
                "source": map_images(h.source()),
                "target": map_images(h.target()),
                "values": values,
            })
        }
        Composite::Two(q) => {
            let r = q.base().domain().r();
            let target = q.target_unchecked();
            let mut values = serde_json::Map::new();
            for s in queries {
                let x = monomial_element(r, s)?;
                values.insert(s.clone(), json!({ "q": q.q().apply(&x)?.to_string() }));
            }
            json!({
                "op": op.name(),
                "kind": "2-derivation",
                "q": strings(&q.q_generators()),
                "base s": strings(&q.base().s().on_generators()),
                "target s": strings(&target.s().on_generators()),
                "target t": strings(target.t().columns()),
                "values": values,
            })
        }
    };
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("serializable") + "\n",
        Format::Text => render_text(&value),
    };
    Ok(Outcome { stdout, code: EXIT_OK })
}

fn monomial_element(r: &peiffer::Algebra, s: &str) -> LoadResult<Element> {
    let m = parse_monomial(r, s)?;
    Ok(r.from_terms([(m, r.field().one())])?)
}

fn render_text(v: &serde_json::Value) -> String {
    let mut out = String::new();
    if let serde_json::Value::Object(map) = v {
        for (k, x) in map {
            match x {
                serde_json::Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                serde_json::Value::Object(inner) => {
                    for (k2, y) in inner {
                        out.push_str(&format!("{k} {k2}: {}\n", compact(y)));
                    }
                }
                other => out.push_str(&format!("{k}: {}\n", compact(other))),
            }
        }
    }
    out
}

fn compact(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(xs) => format!("[{}]", xs.iter().map(compact).collect::<Vec<_>>().join(", ")),
        serde_json::Value::Object(m) => m
            .iter()
            .map(|(k, x)| format!("{k} = {}", compact(x)))
            .collect::<Vec<_>>()
            .join(", "),
        other => other.to_string(),
    }
}

/// The maps of the workspace out of a domain with free bottom algebra.
pub fn scenarios(ws: &Workspace) -> Vec<Scenario> {
    ws.maps
        .iter()
        .filter_map(|(n, e)| Scenario::new(n.clone(), e.map.clone()).ok())
        .collect()
}

pub fn run_suite(ws: &Workspace, which: Suite, cfg: &SuiteConfig) -> LoadResult<CheckReport> {
    let scen = scenarios(ws);
    if which != Suite::Axioms && scen.is_empty() {
        return Err(LoadError::MissingFixture(
            "the workspace has no map out of a module with free bottom algebra".into(),
        ));
    }
    let axioms = || {
        let algebras: Vec<_> = ws.algebras.values().filter(|a| !a.is_free()).cloned().collect();
        let actions: Vec<_> = ws.actions.iter().map(|(n, a)| (n.clone(), a.clone())).collect();
        let modules: Vec<_> = ws.modules.values().map(|e| e.module.clone()).collect();
        let maps: Vec<_> = ws.maps.iter().map(|(n, e)| (n.clone(), e.map.clone())).collect();
        suite::axioms_suite(&algebras, &actions, &modules, &maps, cfg)
    };
    let groupoid = || {
        let hs: Vec<_> = ws
            .homotopies
            .iter()
            .map(|(n, e)| (n.clone(), e.homotopy.derivation().clone()))
            .collect();
        suite::groupoid_suite(&hs, &scen, cfg)
    };
    let two = || {
        let qs: Vec<_> = ws
            .two_derivations
            .iter()
            .map(|(n, e)| (n.clone(), e.derivation.clone()))
            .collect();
        suite::two_groupoid_suite(&qs, &scen, cfg)
    };
    Ok(match which {
        Suite::Axioms => axioms(),
        Suite::Groupoid => groupoid(),
        Suite::TwoGroupoid => two(),
        Suite::All => {
            let mut all = CheckReport::new("all").with_seed(cfg.seed);
            all.merge_prefixed("axioms", axioms());
            all.merge_prefixed("groupoid", groupoid());
            all.merge_prefixed("two-groupoid", two());
            all.canonicalize();
            all
        }
    })
}

pub fn verify(path: &Path, which: Suite, cfg: &SuiteConfig, format: Format) -> LoadResult<Outcome> {
    let ws = Workspace::load_unvalidated(path)?;
    Ok(Outcome::report(&run_suite(&ws, which, cfg)?, format))
}

/// A built-in module as a workspace document.
pub fn fixture(name: &str) -> LoadResult<Outcome> {
    use peiffer::{fixtures, Field};
    let f = Field::Rational;
    let (label, m) = match name {
        "f2" => ("F2", fixtures::f2(f)),
        "f3" => ("F3", fixtures::f3(f)),
        "free-dom" => ("FreeDom", fixtures::free_dom(f)),
        "d3" => ("D3", fixtures::d3(f)),
        "fk" => ("FK", fixtures::fk(f)),
        "incl" => ("Incl", fixtures::inclusion_2xm(f)),
        other => return Err(LoadError::MissingFixture(other.to_string())),
    };
    let mut ws = Workspace::empty(f);
    ws.add_module(label, &m);
    Ok(Outcome {
        stdout: ws.to_json(),
        code: EXIT_OK,
    })
}
