//! Pre-crossed, crossed and 2-crossed modules, their maps and axiom checkers.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::action::Action;
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg;
use crate::maps::{AlgebraMorphism, BilinearMap};
use crate::random::Sampler;
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::structure::must;

/// Parameters of the randomized monomial sweep that complements the
/// exhaustive basis checks when the bottom algebra is free.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub seed: u64,
    pub samples: usize,
    pub degree: u32,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            seed: 0,
            samples: 16,
            degree: 4,
        }
    }
}

/// Elements the identities linear in `r` are checked on: the generators or
/// basis, followed by random monomials when `alg` is free.
fn acting_samples(alg: &Algebra, sweep: &Sweep) -> Vec<Element> {
    let mut out = alg.gens();
    if alg.is_free() && alg.rank() > 0 {
        let mut rng = Sampler::new(sweep.seed);
        out.extend((0..sweep.samples).map(|_| rng.monomial(alg, sweep.degree)));
    }
    out
}

fn expect_same_algebra(what: &str, a: &Algebra, b: &Algebra) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch {
            left: format!("{what}: {a}"),
            right: b.name().to_string(),
        })
    }
}

fn require_finite(alg: &Algebra) -> Result<()> {
    match alg.dim() {
        Some(_) => Ok(()),
        None => Err(Error::NotFiniteDimensional(alg.name().to_string())),
    }
}

/// `∂: E → R` with an action of `R` on `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct PreCrossedModule {
    boundary: AlgebraMorphism,
    action: Action,
}

impl PreCrossedModule {
    /// Checks shapes only; see [`PreCrossedModule::check`].
    pub fn new(boundary: AlgebraMorphism, action: Action) -> Result<Self> {
        require_finite(boundary.source())?;
        expect_same_algebra("acting algebra", action.acting(), boundary.target())?;
        expect_same_algebra("module algebra", action.module(), boundary.source())?;
        Ok(PreCrossedModule { boundary, action })
    }

    pub fn e(&self) -> &Algebra {
        self.boundary.source()
    }

    pub fn r(&self) -> &Algebra {
        self.boundary.target()
    }

    pub fn boundary(&self) -> &AlgebraMorphism {
        &self.boundary
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    /// Multiplicativity of `∂`, the action laws and XM1.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("pre-crossed module");
        report.merge_prefixed("boundary", self.boundary.multiplicativity_report());
        report.merge_prefixed("action", self.action.check());
        let names = self.e().basis_names();
        for r in acting_samples(self.r(), &Sweep::default()) {
            for (j, e) in self.e().gens().iter().enumerate() {
                let lhs = must(self.boundary.apply(&must(self.action.apply(&r, e))));
                let rhs = &r * &must(self.boundary.apply(e));
                report.expect_eq("XM1", &lhs, &rhs, || format!("({r}, {})", names[j]));
            }
        }
        report
    }
}

/// A pre-crossed module that also satisfies XM2.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossedModule {
    pre: PreCrossedModule,
}

impl CrossedModule {
    /// Validating constructor.
    pub fn new(boundary: AlgebraMorphism, action: Action) -> Result<Self> {
        let xm = Self::new_unchecked(boundary, action)?;
        let report = xm.check();
        if report.is_ok() {
            Ok(xm)
        } else {
            Err(Error::AxiomViolation(report))
        }
    }

    pub fn new_unchecked(boundary: AlgebraMorphism, action: Action) -> Result<Self> {
        Ok(CrossedModule {
            pre: PreCrossedModule::new(boundary, action)?,
        })
    }

    pub fn as_pre(&self) -> &PreCrossedModule {
        &self.pre
    }

    pub fn e(&self) -> &Algebra {
        self.pre.e()
    }

    pub fn r(&self) -> &Algebra {
        self.pre.r()
    }

    pub fn boundary(&self) -> &AlgebraMorphism {
        self.pre.boundary()
    }

    pub fn action(&self) -> &Action {
        self.pre.action()
    }

    pub fn check(&self) -> CheckReport {
        let mut report = self.pre.check();
        report.suite = "crossed module".into();
        let names = self.e().basis_names();
        let basis = self.e().gens();
        for (i, e) in basis.iter().enumerate() {
            let de = must(self.boundary().apply(e));
            for (j, e2) in basis.iter().enumerate() {
                let lhs = must(self.action().apply(&de, e2));
                report.expect_eq("XM2", &lhs, &(e * e2), || {
                    format!("({}, {})", names[i], names[j])
                });
            }
        }
        report
    }
}

static NEXT_MODULE_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
struct Inner {
    id: u64,
    name: String,
    d2: AlgebraMorphism,
    d1: AlgebraMorphism,
    act_e: Action,
    act_l: Action,
    lifting: BilinearMap,
}

/// `L → E → R` with actions of `R` on `E` and `L` and a Peiffer lifting
/// `{-⊗-}: E × E → L`. Cloning shares the data; equality is identity.
#[derive(Clone, Debug)]
pub struct TwoCrossedModule(Arc<Inner>);

impl PartialEq for TwoCrossedModule {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for TwoCrossedModule {}

impl TwoCrossedModule {
    /// Validating constructor: every axiom must hold.
    pub fn new(
        name: impl Into<String>,
        d2: AlgebraMorphism,
        d1: AlgebraMorphism,
        act_e: Action,
        act_l: Action,
        lifting: BilinearMap,
    ) -> Result<Self> {
        let m = Self::new_unchecked(name, d2, d1, act_e, act_l, lifting)?;
        let report = m.check_axioms();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(Error::AxiomViolation(report))
        }
    }

    /// Checks that the pieces fit together; see [`TwoCrossedModule::check_axioms`].
    pub fn new_unchecked(
        name: impl Into<String>,
        d2: AlgebraMorphism,
        d1: AlgebraMorphism,
        act_e: Action,
        act_l: Action,
        lifting: BilinearMap,
    ) -> Result<Self> {
        let (l, e, r) = (d2.source(), d1.source(), d1.target());
        require_finite(l)?;
        require_finite(e)?;
        expect_same_algebra("target of d2", d2.target(), e)?;
        expect_same_algebra("action on E, acting", act_e.acting(), r)?;
        expect_same_algebra("action on E, module", act_e.module(), e)?;
        expect_same_algebra("action on L, acting", act_l.acting(), r)?;
        expect_same_algebra("action on L, module", act_l.module(), l)?;
        expect_same_algebra("lifting, left", lifting.left(), e)?;
        expect_same_algebra("lifting, right", lifting.right(), e)?;
        expect_same_algebra("lifting, target", lifting.target(), l)?;
        Ok(TwoCrossedModule(Arc::new(Inner {
            id: NEXT_MODULE_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            d2,
            d1,
            act_e,
            act_l,
            lifting,
        })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn l(&self) -> &Algebra {
        self.0.d2.source()
    }

    pub fn e(&self) -> &Algebra {
        self.0.d1.source()
    }

    pub fn r(&self) -> &Algebra {
        self.0.d1.target()
    }

    pub fn d1_map(&self) -> &AlgebraMorphism {
        &self.0.d1
    }

    pub fn d2_map(&self) -> &AlgebraMorphism {
        &self.0.d2
    }

    pub fn action_on_e(&self) -> &Action {
        &self.0.act_e
    }

    pub fn action_on_l(&self) -> &Action {
        &self.0.act_l
    }

    pub fn lifting(&self) -> &BilinearMap {
        &self.0.lifting
    }

    /// Free up to order one: the bottom algebra is free on its chosen basis.
    pub fn is_free_up_to_order_one(&self) -> bool {
        self.r().is_free()
    }

    // Panicking shorthands for internal use on already typed data.

    pub fn d1(&self, e: &Element) -> Element {
        must(self.0.d1.apply(e))
    }

    pub fn d2(&self, l: &Element) -> Element {
        must(self.0.d2.apply(l))
    }

    /// `r ▶ e`.
    pub fn act_e(&self, r: &Element, e: &Element) -> Element {
        must(self.0.act_e.apply(r, e))
    }

    /// `r ▶ l`.
    pub fn act_l(&self, r: &Element, l: &Element) -> Element {
        must(self.0.act_l.apply(r, l))
    }

    /// `{e ⊗ e'}`.
    pub fn lift(&self, e: &Element, e2: &Element) -> Element {
        must(self.0.lifting.apply(e, e2))
    }

    /// `e ▶' l = {e ⊗ ∂₂(l)}`.
    pub fn prime(&self, e: &Element, l: &Element) -> Element {
        self.lift(e, &self.d2(l))
    }

    /// The derived action of `E` on `L`.
    pub fn derived_action(&self, e: &Element, l: &Element) -> Result<Element> {
        e.belongs_to(self.e())?;
        l.belongs_to(self.l())?;
        Ok(self.prime(e, l))
    }

    /// `∂₂: L → E` with the derived action, which is a crossed module
    /// whenever the axioms hold.
    pub fn as_crossed_module_of_l(&self) -> Result<CrossedModule> {
        let table = BilinearMap::from_fn(self.e(), self.l(), self.l(), |e, l| self.prime(e, l))?;
        CrossedModule::new_unchecked(self.0.d2.clone(), Action::table(table)?)
    }

    /// `∂₁: E → R` with the action on `E`.
    pub fn bottom_pre_crossed(&self) -> Result<PreCrossedModule> {
        PreCrossedModule::new(self.0.d1.clone(), self.0.act_e.clone())
    }

    pub fn check_axioms(&self) -> CheckReport {
        self.check_axioms_with(&Sweep::default())
    }

    /// All structural conditions and 2XM1–2XM6, exhaustively on basis tuples,
    /// plus a random monomial sweep over `R` when `R` is free.
    pub fn check_axioms_with(&self, sweep: &Sweep) -> CheckReport {
        let mut report = CheckReport::new(format!("2-crossed module {}", self.name()));
        for alg in [self.l(), self.e(), self.r()] {
            report.merge_prefixed(&format!("algebra {}", alg.name()), alg.law_report());
        }
        report.merge_prefixed("d1", self.0.d1.multiplicativity_report());
        report.merge_prefixed("d2", self.0.d2.multiplicativity_report());
        report.merge_prefixed("action on E", self.0.act_e.check());
        report.merge_prefixed("action on L", self.0.act_l.check());

        let es = self.e().gens();
        let ls = self.l().gens();
        let en = self.e().basis_names();
        let ln = self.l().basis_names();
        let rs = acting_samples(self.r(), sweep);

        for (i, l) in ls.iter().enumerate() {
            let dd = self.d1(&self.d2(l));
            report.expect("d1 d2 = 0", dd.is_zero(), || ln[i].clone());
        }
        for r in &rs {
            for (j, e) in es.iter().enumerate() {
                let lhs = self.d1(&self.act_e(r, e));
                let rhs = r * &self.d1(e);
                report.expect_eq("d1 equivariance", &lhs, &rhs, || format!("({r}, {})", en[j]));
            }
            for (j, l) in ls.iter().enumerate() {
                let lhs = self.d2(&self.act_l(r, l));
                let rhs = self.act_e(r, &self.d2(l));
                report.expect_eq("d2 equivariance", &lhs, &rhs, || format!("({r}, {})", ln[j]));
            }
        }

        for (i, e) in es.iter().enumerate() {
            for (j, e2) in es.iter().enumerate() {
                let w = || format!("({}, {})", en[i], en[j]);
                let lhs = self.d2(&self.lift(e, e2));
                let rhs = &(e * e2) - &self.act_e(&self.d1(e2), e);
                report.expect_eq("2XM1", &lhs, &rhs, w);
                for (k, e3) in es.iter().enumerate() {
                    let lhs = self.lift(e, &(e2 * e3));
                    let rhs = &self.lift(&(e * e2), e3) + &self.act_l(&self.d1(e3), &self.lift(e, e2));
                    report.expect_eq("2XM3", &lhs, &rhs, || {
                        format!("({}, {}, {})", en[i], en[j], en[k])
                    });
                }
            }
        }
        for (i, l) in ls.iter().enumerate() {
            for (j, l2) in ls.iter().enumerate() {
                let lhs = self.lift(&self.d2(l), &self.d2(l2));
                report.expect_eq("2XM2", &lhs, &(l * l2), || format!("({}, {})", ln[i], ln[j]));
            }
            for (j, e) in es.iter().enumerate() {
                let w = || format!("({}, {})", ln[i], en[j]);
                let lhs = self.lift(&self.d2(l), e);
                let rhs = &self.prime(e, l) - &self.act_l(&self.d1(e), l);
                report.expect_eq("2XM4", &lhs, &rhs, w);
                let lhs = self.lift(e, &self.d2(l));
                report.expect_eq("2XM5", &lhs, &self.prime(e, l), w);
            }
        }
        for r in &rs {
            for (i, e) in es.iter().enumerate() {
                for (j, e2) in es.iter().enumerate() {
                    let a = self.act_l(r, &self.lift(e, e2));
                    let b = self.lift(&self.act_e(r, e), e2);
                    let c = self.lift(e, &self.act_e(r, e2));
                    let w = || format!("({r}, {}, {})", en[i], en[j]);
                    report.expect_eq("2XM6", &a, &b, w);
                    report.expect_eq("2XM6", &a, &c, w);
                }
            }
        }
        report
    }
}

/// A map `(f₂, f₁, f₀)` of 2-crossed modules.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCrossedMap {
    source: TwoCrossedModule,
    target: TwoCrossedModule,
    f0: AlgebraMorphism,
    f1: AlgebraMorphism,
    f2: AlgebraMorphism,
}

impl TwoCrossedMap {
    /// Checks shapes only; see [`TwoCrossedMap::check`].
    pub fn new(
        source: &TwoCrossedModule,
        target: &TwoCrossedModule,
        f0: AlgebraMorphism,
        f1: AlgebraMorphism,
        f2: AlgebraMorphism,
    ) -> Result<Self> {
        for (what, f, a, b) in [
            ("f0", &f0, source.r(), target.r()),
            ("f1", &f1, source.e(), target.e()),
            ("f2", &f2, source.l(), target.l()),
        ] {
            expect_same_algebra(&format!("source of {what}"), f.source(), a)?;
            expect_same_algebra(&format!("target of {what}"), f.target(), b)?;
        }
        Ok(TwoCrossedMap {
            source: source.clone(),
            target: target.clone(),
            f0,
            f1,
            f2,
        })
    }

    pub fn identity(m: &TwoCrossedModule) -> TwoCrossedMap {
        TwoCrossedMap {
            source: m.clone(),
            target: m.clone(),
            f0: AlgebraMorphism::identity(m.r()),
            f1: AlgebraMorphism::identity(m.e()),
            f2: AlgebraMorphism::identity(m.l()),
        }
    }

    pub fn zero(source: &TwoCrossedModule, target: &TwoCrossedModule) -> TwoCrossedMap {
        TwoCrossedMap {
            source: source.clone(),
            target: target.clone(),
            f0: AlgebraMorphism::zero(source.r(), target.r()),
            f1: AlgebraMorphism::zero(source.e(), target.e()),
            f2: AlgebraMorphism::zero(source.l(), target.l()),
        }
    }

    pub fn source(&self) -> &TwoCrossedModule {
        &self.source
    }

    pub fn target(&self) -> &TwoCrossedModule {
        &self.target
    }

    pub fn f0(&self) -> &AlgebraMorphism {
        &self.f0
    }

    pub fn f1(&self) -> &AlgebraMorphism {
        &self.f1
    }

    pub fn f2(&self) -> &AlgebraMorphism {
        &self.f2
    }

    pub fn check(&self) -> CheckReport {
        self.check_with(&Sweep::default())
    }

    /// Multiplicativity, commuting squares, equivariance and preservation of
    /// the lifting, on basis and generator data.
    pub fn check_with(&self, sweep: &Sweep) -> CheckReport {
        let (a, b) = (&self.source, &self.target);
        let mut report = CheckReport::new("2-crossed module map");
        report.merge_prefixed("f0", self.f0.multiplicativity_report());
        report.merge_prefixed("f1", self.f1.multiplicativity_report());
        report.merge_prefixed("f2", self.f2.multiplicativity_report());
        let f0 = |x: &Element| must(self.f0.apply(x));
        let f1 = |x: &Element| must(self.f1.apply(x));
        let f2 = |x: &Element| must(self.f2.apply(x));
        let es = a.e().gens();
        let ls = a.l().gens();
        let en = a.e().basis_names();
        let ln = a.l().basis_names();
        for (i, l) in ls.iter().enumerate() {
            report.expect_eq("d2 square", &b.d2(&f2(l)), &f1(&a.d2(l)), || ln[i].clone());
        }
        for (i, e) in es.iter().enumerate() {
            report.expect_eq("d1 square", &b.d1(&f1(e)), &f0(&a.d1(e)), || en[i].clone());
        }
        for r in acting_samples(a.r(), sweep) {
            let fr = f0(&r);
            for (i, e) in es.iter().enumerate() {
                let lhs = f1(&a.act_e(&r, e));
                let rhs = b.act_e(&fr, &f1(e));
                report.expect_eq("equivariance on E", &lhs, &rhs, || format!("({r}, {})", en[i]));
            }
            for (i, l) in ls.iter().enumerate() {
                let lhs = f2(&a.act_l(&r, l));
                let rhs = b.act_l(&fr, &f2(l));
                report.expect_eq("equivariance on L", &lhs, &rhs, || format!("({r}, {})", ln[i]));
            }
        }
        for (i, e) in es.iter().enumerate() {
            for (j, e2) in es.iter().enumerate() {
                let lhs = f2(&a.lift(e, e2));
                let rhs = b.lift(&f1(e), &f1(e2));
                report.expect_eq("lifting", &lhs, &rhs, || format!("({}, {})", en[i], en[j]));
            }
        }
        report
    }
}

/// Coordinates of `elems` in a common coordinate system: the basis of a
/// finite algebra, or the monomials occurring in them for a free one.
fn coordinate_columns(alg: &Algebra, elems: &[Element]) -> (Vec<Vec<Scalar>>, usize) {
    if let Some(n) = alg.dim() {
        return (elems.iter().map(|e| e.coords().unwrap().to_vec()).collect(), n);
    }
    let mut monos: Vec<_> = elems.iter().flat_map(|e| e.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let f = alg.field();
    let cols = elems
        .iter()
        .map(|e| {
            let mut col = vec![f.zero(); monos.len()];
            for (m, c) in e.terms() {
                col[monos.binary_search(m).unwrap()] = c.clone();
            }
            col
        })
        .collect();
    (cols, monos.len())
}

/// The subalgebra spanned by linearly independent `vecs` of a finite algebra.
struct Subspace {
    ambient: Algebra,
    vecs: Vec<Vec<Scalar>>,
}

impl Subspace {
    fn new(ambient: &Algebra, vecs: Vec<Vec<Scalar>>) -> Subspace {
        Subspace {
            ambient: ambient.clone(),
            vecs,
        }
    }

    fn coords_of(&self, v: &Element) -> Option<Vec<Scalar>> {
        linalg::solve_in_span(self.ambient.field(), &self.vecs, v.coords().expect("finite"))
    }

    fn element(&self, i: usize) -> Element {
        must(self.ambient.from_coords(self.vecs[i].clone()))
    }

    /// Structure constants of the span, or the first product leaving it.
    fn algebra(&self, name: &str, names: Vec<String>) -> std::result::Result<Algebra, String> {
        let k = self.vecs.len();
        let mut table = vec![vec![Vec::new(); k]; k];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let p = &self.element(i) * &self.element(j);
                *cell = self
                    .coords_of(&p)
                    .ok_or_else(|| format!("{} * {} = {p}", self.element(i), self.element(j)))?;
            }
        }
        Ok(must(Algebra::structure_constants_with_basis(
            name,
            self.ambient.field(),
            names,
            table,
        )))
    }
}

/// `E ⊆ R` an ideal, with the inclusion and the multiplication action.
pub fn construct_inclusion_xm(r: &Algebra, ideal_basis: &[Element]) -> Result<CrossedModule> {
    require_finite(r)?;
    for v in ideal_basis {
        v.belongs_to(r)?;
    }
    let (cols, _) = coordinate_columns(r, ideal_basis);
    if linalg::rank(cols.clone(), r.dim().unwrap()) != cols.len() {
        return Err(Error::DimensionMismatch("ideal generators are linearly dependent".into()));
    }
    let span = Subspace::new(r, cols);
    for a in r.gens() {
        for (i, v) in ideal_basis.iter().enumerate() {
            let p = &a * v;
            if span.coords_of(&p).is_none() {
                return Err(Error::NotAnIdeal(format!("{a} * {} = {p}", ideal_basis[i])));
            }
        }
    }
    let names = (1..=ideal_basis.len()).map(|i| format!("i{i}")).collect();
    let e = span.algebra("I", names).map_err(Error::NotAnIdeal)?;
    let inclusion = AlgebraMorphism::new(&e, r, ideal_basis.to_vec())?;
    let action = Action::from_fn(r, &e, |a, x| {
        let p = &a.clone() * &must(inclusion.apply(x));
        must(e.from_coords(span.coords_of(&p).expect("ideal")))
    })?;
    CrossedModule::new(inclusion, action)
}

/// Which factor carries the boundary in the kernel lifting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelLifting {
    /// `{e ⊗ e'} = ee' − ∂(e')▶e`, matching 2XM1.
    BoundaryOnSecond,
    /// `{e ⊗ e'} = ee' − ∂(e)▶e'`.
    BoundaryOnFirst,
}

/// `ker ∂ → E → R` for a pre-crossed module, with lifting `ee' − ∂(e')▶e`.
pub fn construct_kernel_2xm(p: &PreCrossedModule) -> Result<TwoCrossedModule> {
    construct_kernel_2xm_with(p, KernelLifting::BoundaryOnSecond)
}

/// As [`construct_kernel_2xm`] with a chosen lifting convention. The result
/// is not validated; run [`TwoCrossedModule::check_axioms`] on it.
pub fn construct_kernel_2xm_with(p: &PreCrossedModule, rule: KernelLifting) -> Result<TwoCrossedModule> {
    let e = p.e();
    let d = p.boundary();
    let images: Vec<Element> = e.gens().iter().map(|x| must(d.apply(x))).collect();
    let (cols, nrows) = coordinate_columns(p.r(), &images);
    let ker = linalg::kernel(e.field(), &cols, nrows);
    let span = Subspace::new(e, ker);
    let names = (1..=span.vecs.len()).map(|i| format!("k{i}")).collect();
    let l = span
        .algebra("ker", names)
        .map_err(|m| Error::KernelNotActionStable(format!("kernel not closed: {m}")))?;
    let incl_images = (0..span.vecs.len()).map(|i| span.element(i)).collect();
    let d2 = AlgebraMorphism::new(&l, e, incl_images)?;
    let back = |x: &Element| -> Option<Element> {
        span.coords_of(x).map(|c| must(l.from_coords(c)))
    };

    // restrict the action, failing if it leaves the kernel
    for r in p.r().gens() {
        for i in 0..span.vecs.len() {
            let x = must(p.action().apply(&r, &span.element(i)));
            if back(&x).is_none() {
                return Err(Error::KernelNotActionStable(format!(
                    "{r} ▶ {} = {x}",
                    span.element(i)
                )));
            }
        }
    }
    let act_l = Action::from_fn(p.r(), &l, |r, k| {
        back(&must(p.action().apply(r, &must(d2.apply(k))))).expect("checked above")
    })?;

    let lift_value = |x: &Element, y: &Element| -> Element {
        match rule {
            KernelLifting::BoundaryOnSecond => &(x * y) - &must(p.action().apply(&must(d.apply(y)), x)),
            KernelLifting::BoundaryOnFirst => &(x * y) - &must(p.action().apply(&must(d.apply(x)), y)),
        }
    };
    for x in e.gens() {
        for y in e.gens() {
            let v = lift_value(&x, &y);
            if back(&v).is_none() {
                return Err(Error::KernelNotActionStable(format!(
                    "lifting value {{{x} ⊗ {y}}} = {v} is not in the kernel"
                )));
            }
        }
    }
    let lifting = BilinearMap::from_fn(e, e, &l, |x, y| back(&lift_value(x, y)).unwrap())?;
    TwoCrossedModule::new_unchecked(
        "kernel",
        d2,
        d.clone(),
        p.action().clone(),
        act_l,
        lifting,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Field;

    #[test]
    fn fixtures_satisfy_axioms() {
        for field in [Field::Rational, Field::Prime(3)] {
            for m in [fixtures::f2(field), fixtures::f3(field), fixtures::free_dom(field)] {
                let report = m.check_axioms();
                assert!(report.is_ok(), "{report}");
            }
        }
    }

    #[test]
    fn derived_action_on_f3() {
        let f3 = fixtures::f3(Field::Rational);
        let n = f3.e().clone();
        assert_eq!(f3.derived_action(&n.gen(0), &f3.l().gen(0)).unwrap(), f3.l().gen(1));
        assert!(f3.derived_action(&n.gen(0), &f3.l().zero_element()).unwrap().is_zero());
        let f2 = fixtures::f2(Field::Rational);
        assert!(f2.derived_action(&f2.e().gen(0), &f2.l().gen(0)).unwrap().is_zero());
    }

    #[test]
    fn negated_lifting_breaks_2xm1_and_2xm2() {
        let f3 = fixtures::f3(Field::Rational);
        let m = TwoCrossedModule::new_unchecked(
            "negated",
            f3.d2_map().clone(),
            f3.d1_map().clone(),
            f3.action_on_e().clone(),
            f3.action_on_l().clone(),
            f3.lifting().neg(),
        )
        .unwrap();
        let report = m.check_axioms();
        assert!(report.failures("2XM1") > 0);
        assert!(report.failures("2XM2") > 0);
    }

    #[test]
    fn kernel_construction_reproduces_f3() {
        let q = Field::Rational;
        let n = fixtures::nilpotent(q);
        let p = PreCrossedModule::new(
            AlgebraMorphism::zero(&n, &n),
            Action::multiplication(&n).unwrap(),
        )
        .unwrap();
        assert!(p.check().is_ok());
        let k = construct_kernel_2xm(&p).unwrap();
        assert!(k.check_axioms().is_ok());
        assert_eq!(k.l().structure_table(), n.structure_table());
        // {n1 ⊗ n2} = n3
        assert_eq!(k.lift(&n.gen(0), &n.gen(1)), k.l().gen(2));
    }

    #[test]
    fn kernel_of_injective_boundary_is_zero() {
        let n = fixtures::nilpotent(Field::Rational);
        let xm = construct_inclusion_xm(&n, &n.gens()).unwrap();
        let k = construct_kernel_2xm(xm.as_pre()).unwrap();
        assert_eq!(k.l().dim(), Some(0));
        assert!(k.check_axioms().is_ok());
    }

    #[test]
    fn kernel_lifting_convention_is_arbitrated_by_the_checker() {
        let q = Field::Rational;
        let p = fixtures::product_pre_crossed(q);
        let good = construct_kernel_2xm(&p).unwrap();
        assert!(good.check_axioms().is_ok(), "{}", good.check_axioms());
        let other = construct_kernel_2xm_with(&p, KernelLifting::BoundaryOnFirst).unwrap();
        let report = other.check_axioms();
        assert!(report.failures("2XM1") > 0);
    }

    #[test]
    fn inclusion_crossed_modules() {
        let n = fixtures::nilpotent(Field::Rational);
        assert!(construct_inclusion_xm(&n, &n.gens()).unwrap().check().is_ok());
        let trivial = construct_inclusion_xm(&n, &[]).unwrap();
        assert_eq!(trivial.e().dim(), Some(0));
        assert!(matches!(
            construct_inclusion_xm(&n, &[n.gen(0)]),
            Err(Error::NotAnIdeal(_))
        ));
        // span{n2, n3} is an ideal
        assert!(construct_inclusion_xm(&n, &[n.gen(1), n.gen(2)]).is_ok());
    }

    #[test]
    fn top_of_a_valid_module_is_crossed() {
        for m in [
            fixtures::f3(Field::Rational),
            fixtures::fk(Field::Rational),
            fixtures::d3(Field::Prime(3)),
        ] {
            let xm = m.as_crossed_module_of_l().unwrap();
            assert!(xm.check().is_ok(), "{}", xm.check());
        }
    }

    #[test]
    fn map_checks() {
        let q = Field::Rational;
        let f3 = fixtures::f3(q);
        assert!(TwoCrossedMap::identity(&f3).check().is_ok());
        let f2 = fixtures::f2(q);
        let z = Algebra::zero("Z", q);
        let zero_mod = TwoCrossedModule::new(
            "zero",
            AlgebraMorphism::zero(&z, &z),
            AlgebraMorphism::zero(&z, &z),
            Action::zero(&z, &z).unwrap(),
            Action::zero(&z, &z).unwrap(),
            BilinearMap::zero(&z, &z, &z).unwrap(),
        )
        .unwrap();
        assert!(TwoCrossedMap::zero(&f2, &zero_mod).check().is_ok());

        // f1 sends n1 to 2 n1 while f2 stays the identity
        let n = f3.e();
        let mut imgs = n.gens();
        imgs[0] = n.gen(0).scale_int(2);
        let f1 = AlgebraMorphism::new_unchecked(n, n, imgs).unwrap();
        let bad = TwoCrossedMap::new(
            &f3,
            &f3,
            AlgebraMorphism::identity(f3.r()),
            f1,
            AlgebraMorphism::identity(f3.l()),
        )
        .unwrap();
        assert!(bad.check().failures("lifting") > 0);
    }
}
