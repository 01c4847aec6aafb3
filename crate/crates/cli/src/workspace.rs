//! JSON workspaces: named algebras, actions, liftings, 2-crossed modules,
//! maps, homotopies and 2-derivations.
//!
//! Scalars are `"p/q"` strings or integers. Elements of finite algebras are
//! coefficient arrays or objects keyed by basis name; elements of free
//! algebras are objects keyed by exponent strings (`"2,0"` for `x²` in
//! `κ[x, y]⁺`) or generator names.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use peiffer::action::ActionData;
use peiffer::homotopy::{extend_derivation, Homotopy, QuadraticDerivation};
use peiffer::homotopy2::TwoDerivation;
use peiffer::{
    Action, Algebra, AlgebraMorphism, BilinearMap, CheckReport, Element, Field, LinearMap, Monomial, Scalar,
    TwoCrossedMap, TwoCrossedModule,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} failed validation: {}", .report.violated_laws().join(", "))]
    Validation { what: String, report: CheckReport },
    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),
    #[error("missing fixture: {0}")]
    MissingFixture(String),
    #[error("{0}")]
    Structure(#[from] peiffer::Error),
}

pub type LoadResult<T> = Result<T, LoadError>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Coords(Vec<ScalarJson>),
    Terms(BTreeMap<String, ScalarJson>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Free {
        basis: Vec<String>,
    },
    StructureConstants {
        basis: Vec<String>,
        table: Vec<Vec<Vec<ScalarJson>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ActionSpec {
    pub acting: String,
    pub module: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<ElementJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<Vec<Vec<ElementJson>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct LiftingSpec {
    pub source: String,
    pub target: String,
    pub table: Vec<Vec<ElementJson>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ModuleSpec {
    pub l: String,
    pub e: String,
    pub r: String,
    pub d2: Vec<ElementJson>,
    pub d1: Vec<ElementJson>,
    pub action_on_e: String,
    pub action_on_l: String,
    pub lifting: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    pub f0: Vec<ElementJson>,
    pub f1: Vec<ElementJson>,
    pub f2: Vec<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct HomotopySpec {
    pub base: String,
    pub s: Vec<ElementJson>,
    #[serde(default)]
    pub t: Vec<ElementJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub s_overrides: BTreeMap<String, ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct TwoDerivationSpec {
    pub base: String,
    pub q: Vec<ElementJson>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Document {
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub liftings: BTreeMap<String, LiftingSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homotopies: BTreeMap<String, HomotopySpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub two_derivations: BTreeMap<String, TwoDerivationSpec>,
}

fn default_field() -> String {
    "rational".to_string()
}

pub fn parse_field(s: &str) -> LoadResult<Field> {
    let s = s.trim();
    if s == "rational" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("mod")
        .map(str::trim)
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| LoadError::Parse(format!("field must be \"rational\" or \"mod <p>\", got {s:?}")))?;
    Ok(Field::prime(p)?)
}

pub fn field_name(field: Field) -> String {
    match field {
        Field::Rational => "rational".to_string(),
        Field::Prime(p) => format!("mod {p}"),
    }
}

pub fn parse_scalar(field: Field, x: &ScalarJson) -> LoadResult<Scalar> {
    match x {
        ScalarJson::Int(n) => Ok(field.from_i64(*n)),
        ScalarJson::Text(s) => Ok(field.parse(s)?),
    }
}

pub fn scalar_json(c: &Scalar) -> ScalarJson {
    match c.field() {
        Field::Rational => ScalarJson::Text(c.to_string()),
        Field::Prime(_) => ScalarJson::Int(c.to_string().parse().expect("residue")),
    }
}

pub fn parse_element(alg: &Algebra, x: &ElementJson) -> LoadResult<Element> {
    let f = alg.field();
    match (alg.dim(), x) {
        (Some(n), ElementJson::Coords(cs)) => {
            if cs.len() != n {
                return Err(LoadError::Parse(format!(
                    "element of {} needs {n} coordinates, got {}",
                    alg.name(),
                    cs.len()
                )));
            }
            let coords = cs.iter().map(|c| parse_scalar(f, c)).collect::<LoadResult<_>>()?;
            Ok(alg.from_coords(coords)?)
        }
        (Some(n), ElementJson::Terms(terms)) => {
            let mut coords = vec![f.zero(); n];
            for (k, c) in terms {
                let i = alg
                    .basis_names()
                    .iter()
                    .position(|b| b == k)
                    .ok_or_else(|| LoadError::Parse(format!("{k:?} is not a basis element of {}", alg.name())))?;
                coords[i] = &coords[i] + &parse_scalar(f, c)?;
            }
            Ok(alg.from_coords(coords)?)
        }
        (None, ElementJson::Terms(terms)) => {
            let list = terms
                .iter()
                .map(|(k, c)| Ok((parse_monomial(alg, k)?, parse_scalar(f, c)?)))
                .collect::<LoadResult<Vec<_>>>()?;
            Ok(alg.from_terms(list)?)
        }
        (None, ElementJson::Coords(_)) => Err(LoadError::Parse(format!(
            "elements of the free algebra {} are written as term objects",
            alg.name()
        ))),
    }
}

/// An exponent string, a generator name, or a product such as `x^2*y`.
pub fn parse_monomial(alg: &Algebra, s: &str) -> LoadResult<Monomial> {
    let names = alg.basis_names();
    if let Ok(m) = Monomial::parse_exponent_string(s) {
        if m.exponents().len() == names.len() && m.degree() > 0 {
            return Ok(m);
        }
    }
    let mut exps = vec![0u32; names.len()];
    for factor in s.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (
                n.trim(),
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| LoadError::Parse(format!("bad exponent in {s:?}")))?,
            ),
            None => (factor, 1),
        };
        let i = names
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| LoadError::Parse(format!("{s:?} is not a monomial of {}", alg.name())))?;
        exps[i] += power;
    }
    if exps.iter().all(|&e| e == 0) {
        return Err(LoadError::Parse(format!("{s:?} is not a monomial of {}", alg.name())));
    }
    Ok(Monomial::new(exps))
}

pub fn element_json(x: &Element) -> ElementJson {
    match x.coords() {
        Some(cs) => ElementJson::Coords(cs.iter().map(scalar_json).collect()),
        None => ElementJson::Terms(x.terms().map(|(m, c)| (m.exponent_string(), scalar_json(c))).collect()),
    }
}

fn elements_json(xs: &[Element]) -> Vec<ElementJson> {
    xs.iter().map(element_json).collect()
}

#[derive(Clone, Debug)]
pub struct ModuleEntry {
    pub module: TwoCrossedModule,
    pub spec: ModuleSpec,
}

#[derive(Clone, Debug)]
pub struct MapEntry {
    pub map: TwoCrossedMap,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug)]
pub struct HomotopyEntry {
    pub homotopy: Homotopy,
    pub base: String,
    pub s_star: Vec<Element>,
    pub overrides: BTreeMap<Monomial, Element>,
}

#[derive(Clone, Debug)]
pub struct TwoDerivationEntry {
    pub derivation: TwoDerivation,
    pub base: String,
}

/// A resolved workspace. Entries are kept by name in sorted order.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub field: Field,
    pub algebras: BTreeMap<String, Algebra>,
    pub actions: BTreeMap<String, Action>,
    pub liftings: BTreeMap<String, BilinearMap>,
    pub modules: BTreeMap<String, ModuleEntry>,
    pub maps: BTreeMap<String, MapEntry>,
    pub homotopies: BTreeMap<String, HomotopyEntry>,
    pub two_derivations: BTreeMap<String, TwoDerivationEntry>,
}

fn lookup<'a, T>(kind: &str, table: &'a BTreeMap<String, T>, name: &str) -> LoadResult<&'a T> {
    table
        .get(name)
        .ok_or_else(|| LoadError::UnresolvedReference(format!("{kind} {name:?}")))
}

fn require(strict: bool, what: String, report: CheckReport) -> LoadResult<()> {
    if strict && !report.is_ok() {
        Err(LoadError::Validation { what, report })
    } else {
        Ok(())
    }
}

fn parse_all(alg: &Algebra, xs: &[ElementJson]) -> LoadResult<Vec<Element>> {
    xs.iter().map(|x| parse_element(alg, x)).collect()
}

fn images(what: &str, source: &Algebra, target: &Algebra, xs: &[ElementJson]) -> LoadResult<AlgebraMorphism> {
    if xs.len() != source.rank() {
        return Err(LoadError::Parse(format!(
            "{what}: {} images for {} basis elements of {}",
            xs.len(),
            source.rank(),
            source.name()
        )));
    }
    Ok(AlgebraMorphism::new_unchecked(source, target, parse_all(target, xs)?)?)
}

impl Workspace {
    pub fn empty(field: Field) -> Workspace {
        Workspace {
            field,
            algebras: BTreeMap::new(),
            actions: BTreeMap::new(),
            liftings: BTreeMap::new(),
            modules: BTreeMap::new(),
            maps: BTreeMap::new(),
            homotopies: BTreeMap::new(),
            two_derivations: BTreeMap::new(),
        }
    }

    /// Parses and fully validates a workspace.
    pub fn load(path: &Path) -> LoadResult<Workspace> {
        Self::from_json(&read(path)?)
    }

    /// Parses a workspace, checking shapes and references but no laws.
    pub fn load_unvalidated(path: &Path) -> LoadResult<Workspace> {
        Self::from_json_unvalidated(&read(path)?)
    }

    pub fn from_json(text: &str) -> LoadResult<Workspace> {
        Self::from_document(&parse_document(text)?, true)
    }

    pub fn from_json_unvalidated(text: &str) -> LoadResult<Workspace> {
        Self::from_document(&parse_document(text)?, false)
    }

    pub fn from_document(doc: &Document, strict: bool) -> LoadResult<Workspace> {
        let field = parse_field(&doc.field)?;
        let mut ws = Workspace::empty(field);

        for (name, spec) in &doc.algebras {
            let alg = match spec {
                AlgebraSpec::Free { basis } => Algebra::free_named(name.clone(), field, basis.clone()),
                AlgebraSpec::StructureConstants { basis, table } => {
                    let table = table
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|v| v.iter().map(|c| parse_scalar(field, c)).collect())
                                .collect()
                        })
                        .collect::<LoadResult<_>>()?;
                    let alg = Algebra::structure_constants_with_basis(name.clone(), field, basis.clone(), table)?;
                    require(strict, format!("algebra {name}"), alg.law_report())?;
                    alg
                }
            };
            ws.algebras.insert(name.clone(), alg);
        }

        for (name, spec) in &doc.actions {
            let acting = lookup("algebra", &ws.algebras, &spec.acting)?;
            let module = lookup("algebra", &ws.algebras, &spec.module)?;
            let act = match (&spec.table, &spec.multipliers) {
                (Some(table), None) => {
                    let table = table
                        .iter()
                        .map(|row| parse_all(module, row))
                        .collect::<LoadResult<_>>()?;
                    Action::table(BilinearMap::new(acting, module, module, table)?)?
                }
                (None, Some(ms)) => {
                    let rho = ms
                        .iter()
                        .map(|cols| Ok(LinearMap::new(module, module, parse_all(module, cols)?)?))
                        .collect::<LoadResult<_>>()?;
                    Action::multipliers(acting, module, rho)?
                }
                _ => {
                    return Err(LoadError::Parse(format!(
                        "action {name} needs exactly one of \"table\" and \"multipliers\""
                    )))
                }
            };
            require(strict, format!("action {name}"), act.check())?;
            ws.actions.insert(name.clone(), act);
        }

        for (name, spec) in &doc.liftings {
            let e = lookup("algebra", &ws.algebras, &spec.source)?;
            let l = lookup("algebra", &ws.algebras, &spec.target)?;
            let table = spec
                .table
                .iter()
                .map(|row| parse_all(l, row))
                .collect::<LoadResult<_>>()?;
            ws.liftings.insert(name.clone(), BilinearMap::new(e, e, l, table)?);
        }

        for (name, spec) in &doc.modules {
            let l = lookup("algebra", &ws.algebras, &spec.l)?;
            let e = lookup("algebra", &ws.algebras, &spec.e)?;
            let r = lookup("algebra", &ws.algebras, &spec.r)?;
            let d2 = images(&format!("module {name}, d2"), l, e, &spec.d2)?;
            let d1 = images(&format!("module {name}, d1"), e, r, &spec.d1)?;
            let act_e = lookup("action", &ws.actions, &spec.action_on_e)?.clone();
            let act_l = lookup("action", &ws.actions, &spec.action_on_l)?.clone();
            let lifting = lookup("lifting", &ws.liftings, &spec.lifting)?.clone();
            let module = TwoCrossedModule::new_unchecked(name.clone(), d2, d1, act_e, act_l, lifting)?;
            require(strict, format!("module {name}"), module.check_axioms())?;
            ws.modules.insert(
                name.clone(),
                ModuleEntry {
                    module,
                    spec: spec.clone(),
                },
            );
        }

        for (name, spec) in &doc.maps {
            let src = &lookup("module", &ws.modules, &spec.source)?.module;
            let tgt = &lookup("module", &ws.modules, &spec.target)?.module;
            let what = format!("map {name}");
            let map = TwoCrossedMap::new(
                src,
                tgt,
                images(&format!("{what}, f0"), src.r(), tgt.r(), &spec.f0)?,
                images(&format!("{what}, f1"), src.e(), tgt.e(), &spec.f1)?,
                images(&format!("{what}, f2"), src.l(), tgt.l(), &spec.f2)?,
            )?;
            require(strict, what, map.check())?;
            ws.maps.insert(
                name.clone(),
                MapEntry {
                    map,
                    source: spec.source.clone(),
                    target: spec.target.clone(),
                },
            );
        }

        for (name, spec) in &doc.homotopies {
            let base = &lookup("map", &ws.maps, &spec.base)?.map;
            let (dom, cod) = (base.source(), base.target());
            if spec.s.len() != dom.r().rank() {
                return Err(LoadError::Parse(format!(
                    "homotopy {name}: {} values of s for {} generators",
                    spec.s.len(),
                    dom.r().rank()
                )));
            }
            let s_star = parse_all(cod.e(), &spec.s)?;
            let t_cols = if spec.t.is_empty() {
                vec![cod.l().zero_element(); dom.e().rank()]
            } else {
                parse_all(cod.l(), &spec.t)?
            };
            let t = LinearMap::new(dom.e(), cod.l(), t_cols)?;
            let mut s = extend_derivation(cod, base.f0(), &s_star)?;
            let mut overrides = BTreeMap::new();
            for (k, v) in &spec.s_overrides {
                let m = parse_monomial(dom.r(), k)?;
                let v = parse_element(cod.e(), v)?;
                s = s.with_override(m.clone(), v.clone())?;
                overrides.insert(m, v);
            }
            let d = QuadraticDerivation::new(base, s, t)?;
            require(strict, format!("homotopy {name}"), d.check())?;
            ws.homotopies.insert(
                name.clone(),
                HomotopyEntry {
                    homotopy: Homotopy::new_unchecked(d),
                    base: spec.base.clone(),
                    s_star,
                    overrides,
                },
            );
        }

        for (name, spec) in &doc.two_derivations {
            let base = &lookup("homotopy", &ws.homotopies, &spec.base)?.homotopy;
            let cod = base.codomain();
            if spec.q.len() != base.domain().r().rank() {
                return Err(LoadError::Parse(format!(
                    "2-derivation {name}: {} values of q for {} generators",
                    spec.q.len(),
                    base.domain().r().rank()
                )));
            }
            let q = parse_all(cod.l(), &spec.q)?;
            let derivation = TwoDerivation::from_generators(base, &q)?;
            require(strict, format!("2-derivation {name}"), derivation.check())?;
            ws.two_derivations.insert(
                name.clone(),
                TwoDerivationEntry {
                    derivation,
                    base: spec.base.clone(),
                },
            );
        }
        Ok(ws)
    }

    /// The normalized document describing this workspace.
    pub fn to_document(&self) -> Document {
        let mut doc = Document {
            field: field_name(self.field),
            ..Document::default()
        };
        for (name, alg) in &self.algebras {
            let spec = match alg.structure_table() {
                None => AlgebraSpec::Free {
                    basis: alg.basis_names().to_vec(),
                },
                Some(table) => AlgebraSpec::StructureConstants {
                    basis: alg.basis_names().to_vec(),
                    table: table
                        .iter()
                        .map(|row| row.iter().map(|v| v.iter().map(scalar_json).collect()).collect())
                        .collect(),
                },
            };
            doc.algebras.insert(name.clone(), spec);
        }
        for (name, act) in &self.actions {
            let (table, multipliers) = match act.data() {
                ActionData::Table(t) => (Some(t.table().iter().map(|row| elements_json(row)).collect()), None),
                ActionData::Multipliers(rho) => (None, Some(rho.iter().map(|m| elements_json(m.columns())).collect())),
            };
            doc.actions.insert(
                name.clone(),
                ActionSpec {
                    acting: self.algebra_name(act.acting()),
                    module: self.algebra_name(act.module()),
                    table,
                    multipliers,
                },
            );
        }
        for (name, b) in &self.liftings {
            doc.liftings.insert(
                name.clone(),
                LiftingSpec {
                    source: self.algebra_name(b.left()),
                    target: self.algebra_name(b.target()),
                    table: b.table().iter().map(|row| elements_json(row)).collect(),
                },
            );
        }
        for (name, entry) in &self.modules {
            let m = &entry.module;
            doc.modules.insert(
                name.clone(),
                ModuleSpec {
                    d2: elements_json(m.d2_map().images()),
                    d1: elements_json(m.d1_map().images()),
                    ..entry.spec.clone()
                },
            );
        }
        for (name, entry) in &self.maps {
            let f = &entry.map;
            doc.maps.insert(
                name.clone(),
                MapSpec {
                    source: entry.source.clone(),
                    target: entry.target.clone(),
                    f0: elements_json(f.f0().images()),
                    f1: elements_json(f.f1().images()),
                    f2: elements_json(f.f2().images()),
                },
            );
        }
        for (name, entry) in &self.homotopies {
            doc.homotopies.insert(
                name.clone(),
                HomotopySpec {
                    base: entry.base.clone(),
                    s: elements_json(&entry.s_star),
                    t: elements_json(entry.homotopy.t().columns()),
                    s_overrides: entry
                        .overrides
                        .iter()
                        .map(|(m, v)| (m.exponent_string(), element_json(v)))
                        .collect(),
                },
            );
        }
        for (name, entry) in &self.two_derivations {
            doc.two_derivations.insert(
                name.clone(),
                TwoDerivationSpec {
                    base: entry.base.clone(),
                    q: elements_json(&entry.derivation.q_generators()),
                },
            );
        }
        doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable") + "\n"
    }

    fn algebra_name(&self, alg: &Algebra) -> String {
        self.algebras
            .iter()
            .find(|(_, a)| *a == alg)
            .map(|(n, _)| n.clone())
            .unwrap_or_else(|| alg.name().to_string())
    }

    /// Adds a module together with its algebras, actions and lifting,
    /// reusing entries already present.
    pub fn add_module(&mut self, name: &str, m: &TwoCrossedModule) {
        let alg = |ws: &mut Workspace, a: &Algebra| -> String {
            if let Some((n, _)) = ws.algebras.iter().find(|(_, b)| *b == a) {
                return n.clone();
            }
            let mut n = a.name().to_string();
            while ws.algebras.contains_key(&n) {
                n = format!("{name}.{n}");
            }
            ws.algebras.insert(n.clone(), a.clone());
            n
        };
        let (l, e, r) = (alg(self, m.l()), alg(self, m.e()), alg(self, m.r()));
        let action = |ws: &mut Workspace, suffix: &str, act: &Action| -> String {
            if let Some((n, _)) = ws.actions.iter().find(|(_, b)| *b == act) {
                return n.clone();
            }
            let n = format!("{name} {suffix}");
            ws.actions.insert(n.clone(), act.clone());
            n
        };
        let action_on_e = action(self, "on E", m.action_on_e());
        let action_on_l = action(self, "on L", m.action_on_l());
        let lifting = format!("{name} lifting");
        self.liftings.insert(lifting.clone(), m.lifting().clone());
        let spec = ModuleSpec {
            l,
            e,
            r,
            d2: elements_json(m.d2_map().images()),
            d1: elements_json(m.d1_map().images()),
            action_on_e,
            action_on_l,
            lifting,
        };
        self.modules.insert(
            name.to_string(),
            ModuleEntry {
                module: m.clone(),
                spec,
            },
        );
    }

    pub fn module(&self, name: &str) -> LoadResult<&TwoCrossedModule> {
        Ok(&lookup("module", &self.modules, name)?.module)
    }

    pub fn map(&self, name: &str) -> LoadResult<&TwoCrossedMap> {
        Ok(&lookup("map", &self.maps, name)?.map)
    }

    pub fn homotopy(&self, name: &str) -> LoadResult<&Homotopy> {
        Ok(&lookup("homotopy", &self.homotopies, name)?.homotopy)
    }

    pub fn two_derivation(&self, name: &str) -> LoadResult<&TwoDerivation> {
        Ok(&lookup("2-derivation", &self.two_derivations, name)?.derivation)
    }
}

pub fn parse_document(text: &str) -> LoadResult<Document> {
    if text.trim().is_empty() {
        return Ok(Document {
            field: default_field(),
            ..Document::default()
        });
    }
    serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))
}

fn read(path: &Path) -> LoadResult<String> {
    fs::read_to_string(path).map_err(|e| LoadError::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use peiffer::fixtures;

    #[test]
    fn empty_documents_give_empty_workspaces() {
        for text in ["", "{}"] {
            let ws = Workspace::from_json(text).unwrap();
            assert_eq!(ws.field, Field::Rational);
            assert!(ws.modules.is_empty());
        }
    }

    #[test]
    fn module_round_trip() {
        let mut ws = Workspace::empty(Field::Rational);
        ws.add_module("F3", &fixtures::f3(Field::Rational));
        ws.add_module("FK", &fixtures::fk(Field::Rational));
        let text = ws.to_json();
        let back = Workspace::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.algebras.len(), ws.algebras.len());
    }

    #[test]
    fn scalars_and_elements() {
        let n = fixtures::nilpotent(Field::Rational);
        let x = parse_element(
            &n,
            &ElementJson::Terms([("n2".to_string(), ScalarJson::Text("3/2".into()))].into()),
        )
        .unwrap();
        assert_eq!(element_json(&x), ElementJson::Coords(vec![
            ScalarJson::Text("0".into()),
            ScalarJson::Text("3/2".into()),
            ScalarJson::Text("0".into()),
        ]));
        let r = Algebra::free("R", Field::Prime(5), &["x", "y"]);
        assert_eq!(parse_monomial(&r, "x^2*y").unwrap(), Monomial::new(vec![2, 1]));
        assert_eq!(parse_monomial(&r, "0,3").unwrap(), Monomial::new(vec![0, 3]));
        assert!(parse_monomial(&r, "z").is_err());
        assert!(parse_field("mod 4").is_err());
        assert_eq!(parse_field("mod 7").unwrap(), Field::Prime(7));
    }

    #[test]
    fn unresolved_references_are_named() {
        let text = r#"{"maps": {"f": {"source": "A", "target": "B", "f0": [], "f1": [], "f2": []}}}"#;
        match Workspace::from_json(text) {
            Err(LoadError::UnresolvedReference(s)) => assert!(s.contains("\"A\"")),
            other => panic!("{other:?}"),
        }
    }
}
