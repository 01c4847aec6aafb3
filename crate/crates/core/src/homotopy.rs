//! Quadratic derivations, homotopies between 2-crossed module maps, their
//! concatenation and inverses.
//!
//! The domain's bottom algebra `R` is free on a chosen basis `B`. A map out
//! of `R` is represented by its values on monomials ([`PolyMap`]); maps
//! determined by their values on `B` are evaluated through the universal
//! property of `R` in one of the simplex algebras of the codomain.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::{Algebra, Element, Monomial};
use crate::crossed::{Sweep, TwoCrossedMap, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::maps::{AlgebraMorphism, LinearMap};
use crate::random::Sampler;
use crate::report::CheckReport;
use crate::simplex::{A2Element, Simplices};
use crate::structure::{eval_monomial, must};

type Eval = dyn Fn(&Monomial) -> Element + Send + Sync;

/// A linear map out of a free algebra, given by its values on monomials.
#[derive(Clone)]
pub struct PolyMap {
    source: Algebra,
    target: Algebra,
    eval: Arc<Eval>,
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap({} -> {}, on generators {:?})", self.source, self.target, {
            self.on_generators()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
        })
    }
}

fn require_free(alg: &Algebra) -> Result<()> {
    if alg.is_free() {
        Ok(())
    } else {
        Err(Error::DomainNotFree(alg.name().to_string()))
    }
}

fn mismatch(what: &str, a: &Algebra, b: &Algebra) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch {
            left: format!("{what}: {a}"),
            right: b.name().to_string(),
        })
    }
}

impl PolyMap {
    pub fn new(
        source: &Algebra,
        target: &Algebra,
        eval: impl Fn(&Monomial) -> Element + Send + Sync + 'static,
    ) -> Result<PolyMap> {
        require_free(source)?;
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            eval: Arc::new(eval),
        })
    }

    /// Like [`PolyMap::new`], caching the value of every monomial evaluated.
    pub fn memoized(
        source: &Algebra,
        target: &Algebra,
        eval: impl Fn(&Monomial) -> Element + Send + Sync + 'static,
    ) -> Result<PolyMap> {
        let cache: Mutex<HashMap<Monomial, Element>> = Mutex::new(HashMap::new());
        PolyMap::new(source, target, move |m| {
            if let Some(v) = cache.lock().unwrap().get(m) {
                return v.clone();
            }
            let v = eval(m);
            cache.lock().unwrap().insert(m.clone(), v.clone());
            v
        })
    }

    pub fn zero(source: &Algebra, target: &Algebra) -> Result<PolyMap> {
        let z = Element::zero(target);
        PolyMap::new(source, target, move |_| z.clone())
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn at(&self, m: &Monomial) -> Element {
        (self.eval)(m)
    }

    pub fn apply(&self, r: &Element) -> Result<Element> {
        r.belongs_to(&self.source)?;
        let mut acc = Element::zero(&self.target);
        for (m, c) in r.terms() {
            acc = &acc + &self.at(m).scale(c);
        }
        Ok(acc)
    }

    /// Values on the chosen basis `B` of the source.
    pub fn on_generators(&self) -> Vec<Element> {
        let n = self.source.rank();
        (0..n).map(|i| self.at(&Monomial::generator(n, i))).collect()
    }

    fn same_shape(&self, other: &PolyMap) -> Result<()> {
        mismatch("source", &self.source, &other.source)?;
        mismatch("target", &self.target, &other.target)
    }

    pub fn add(&self, other: &PolyMap) -> Result<PolyMap> {
        self.same_shape(other)?;
        let (a, b) = (self.eval.clone(), other.eval.clone());
        PolyMap::new(&self.source, &self.target, move |m| &a(m) + &b(m))
    }

    pub fn sub(&self, other: &PolyMap) -> Result<PolyMap> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyMap {
        let a = self.eval.clone();
        must(PolyMap::new(&self.source, &self.target, move |m| -a(m)))
    }

    /// `φ ∘ self` for an algebra map `φ` out of the target.
    pub fn then(&self, phi: &AlgebraMorphism) -> Result<PolyMap> {
        mismatch("composable", phi.source(), &self.target)?;
        let target = phi.target().clone();
        let (a, phi) = (self.eval.clone(), phi.clone());
        PolyMap::new(&self.source, &target, move |m| must(phi.apply(&a(m))))
    }

    /// The same map except at one monomial.
    pub fn with_override(&self, at: Monomial, value: Element) -> Result<PolyMap> {
        value.belongs_to(&self.target)?;
        let a = self.eval.clone();
        PolyMap::new(&self.source, &self.target, move |m| {
            if *m == at {
                value.clone()
            } else {
                a(m)
            }
        })
    }

    /// Equality on the given elements of the source.
    pub fn agrees_on(&self, other: &PolyMap, samples: &[Element]) -> bool {
        self.same_shape(other).is_ok()
            && samples
                .iter()
                .all(|r| must(self.apply(r)) == must(other.apply(r)))
    }
}

fn check_images(what: &str, images: &[Element], source: &Algebra, target: &Algebra) -> Result<()> {
    if images.len() != source.rank() {
        return Err(Error::DimensionMismatch(format!(
            "{what}: {} images for {} generators",
            images.len(),
            source.rank()
        )));
    }
    images.iter().try_for_each(|x| x.belongs_to(target))
}

/// The unique `f₀`-derivation `R → E'` with the given values on `B`.
///
/// It is the second component of the algebra map `R → R' ⋉ E'` sending
/// `b` to `(f₀(b), s*(b))`.
pub fn extend_derivation(cod: &TwoCrossedModule, f0: &AlgebraMorphism, s_star: &[Element]) -> Result<PolyMap> {
    require_free(f0.source())?;
    mismatch("target of f0", f0.target(), cod.r())?;
    check_images("s", s_star, f0.source(), cod.e())?;
    let simp = Simplices::new(cod);
    let images: Vec<_> = f0
        .images()
        .iter()
        .cloned()
        .zip(s_star.iter().cloned())
        .collect();
    PolyMap::memoized(f0.source(), cod.e(), move |m| eval_monomial(&simp.a1, &images, m).1)
}

/// The algebra map `X: R → A'₂` with `X(b) = (f₀(b), s(b), s'(b), 0)`.
pub fn filler_triangle(
    cod: &TwoCrossedModule,
    f0: &AlgebraMorphism,
    s: &[Element],
    s2: &[Element],
    r: &Element,
) -> Result<A2Element> {
    require_free(f0.source())?;
    check_images("s", s, f0.source(), cod.e())?;
    check_images("s'", s2, f0.source(), cod.e())?;
    r.belongs_to(f0.source())?;
    let simp = Simplices::new(cod);
    let images = triangle_images(cod, f0, s, s2);
    let mut acc = simp.a2_zero().nest();
    use crate::structure::CommutativeAlgebra;
    for (m, c) in r.terms() {
        let v = eval_monomial(&simp.a2, &images, m);
        acc = simp.a2.add(&acc, &simp.a2.scale(c, &v));
    }
    Ok(A2Element::from_nested(acc))
}

fn triangle_images(
    cod: &TwoCrossedModule,
    f0: &AlgebraMorphism,
    s: &[Element],
    s2: &[Element],
) -> Vec<crate::simplex::A2Nested> {
    let zero_l = cod.l().zero_element();
    f0.images()
        .iter()
        .zip(s.iter().zip(s2))
        .map(|(r, (a, b))| ((r.clone(), a.clone()), (b.clone(), zero_l.clone())))
        .collect()
}

/// The filler `w^(s,s')`: the `L'` component of `X^(s,s')`.
pub fn filler(cod: &TwoCrossedModule, f0: &AlgebraMorphism, s: &[Element], s2: &[Element]) -> Result<PolyMap> {
    require_free(f0.source())?;
    mismatch("target of f0", f0.target(), cod.r())?;
    check_images("s", s, f0.source(), cod.e())?;
    check_images("s'", s2, f0.source(), cod.e())?;
    let simp = Simplices::new(cod);
    let images = triangle_images(cod, f0, s, s2);
    PolyMap::memoized(f0.source(), cod.l(), move |m| eval_monomial(&simp.a2, &images, m).1 .1)
}

/// Signature of a filler implementation; [`filler`] is the real one.
pub type FillerFn =
    dyn Fn(&TwoCrossedModule, &AlgebraMorphism, &[Element], &[Element]) -> Result<PolyMap> + Send + Sync;

fn add_images(a: &[Element], b: &[Element]) -> Vec<Element> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A quadratic `f`-derivation `(s, t)` with `s: R → E'` and `t: E → L'`.
#[derive(Clone, Debug)]
pub struct QuadraticDerivation {
    base: TwoCrossedMap,
    s: PolyMap,
    t: LinearMap,
}

impl QuadraticDerivation {
    /// `s` extended from its values on `B`.
    pub fn from_generators(base: &TwoCrossedMap, s_star: &[Element], t: LinearMap) -> Result<Self> {
        let s = extend_derivation(base.target(), base.f0(), s_star)?;
        QuadraticDerivation::new(base, s, t)
    }

    /// Checks shapes only; see [`QuadraticDerivation::check`].
    pub fn new(base: &TwoCrossedMap, s: PolyMap, t: LinearMap) -> Result<Self> {
        let (dom, cod) = (base.source(), base.target());
        require_free(dom.r())?;
        mismatch("source of s", s.source(), dom.r())?;
        mismatch("target of s", s.target(), cod.e())?;
        mismatch("source of t", t.source(), dom.e())?;
        mismatch("target of t", t.target(), cod.l())?;
        Ok(QuadraticDerivation {
            base: base.clone(),
            s,
            t,
        })
    }

    pub fn zero(base: &TwoCrossedMap) -> Result<Self> {
        let (dom, cod) = (base.source(), base.target());
        QuadraticDerivation::new(
            base,
            PolyMap::zero(dom.r(), cod.e())?,
            LinearMap::zero(dom.e(), cod.l())?,
        )
    }

    pub fn base(&self) -> &TwoCrossedMap {
        &self.base
    }

    pub fn s(&self) -> &PolyMap {
        &self.s
    }

    pub fn t(&self) -> &LinearMap {
        &self.t
    }

    pub fn s_generators(&self) -> Vec<Element> {
        self.s.on_generators()
    }

    pub fn check(&self) -> CheckReport {
        self.check_with(&Sweep::default())
    }

    /// The three defining identities: the derivation rule for `s` on
    /// generator pairs and random monomial pairs, the product rule for `t`
    /// on all basis pairs of `E`, and the rule for `t(r ▶ e)` on generators
    /// and random monomials.
    pub fn check_with(&self, sweep: &Sweep) -> CheckReport {
        let mut report = CheckReport::new("quadratic derivation");
        let (dom, cod) = (self.base.source(), self.base.target());
        let f0 = |r: &Element| must(self.base.f0().apply(r));
        let f1 = |e: &Element| must(self.base.f1().apply(e));
        let s = |r: &Element| must(self.s.apply(r));
        let t = |e: &Element| must(self.t.apply(e));

        let mut rs = dom.r().gens();
        let gens = rs.len();
        if dom.r().rank() > 0 {
            let mut rng = Sampler::new(sweep.seed);
            rs.extend((0..sweep.samples).map(|_| rng.monomial(dom.r(), sweep.degree)));
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..gens {
            for j in i..gens {
                pairs.push((i, j));
            }
        }
        for k in 0..sweep.samples.min(rs.len().saturating_sub(gens)) {
            let i = gens + k;
            let j = gens + (k * 7 + 3) % (rs.len() - gens);
            pairs.push((i, j));
        }
        for (i, j) in pairs {
            let (r, r2) = (&rs[i], &rs[j]);
            let lhs = s(&(r * r2));
            let rhs = &(&cod.act_e(&f0(r), &s(r2)) + &cod.act_e(&f0(r2), &s(r))) + &(&s(r) * &s(r2));
            report.expect_eq("derivation rule for s", &lhs, &rhs, || format!("({r}, {r2})"));
        }

        let es = dom.e().gens();
        let en = dom.e().basis_names();
        for (i, e) in es.iter().enumerate() {
            let sde = s(&dom.d1(e));
            for (j, e2) in es.iter().enumerate() {
                let sde2 = s(&dom.d1(e2));
                let lhs = t(&(e * e2));
                let terms = [
                    cod.lift(&sde, &f1(e2)),
                    cod.lift(&sde2, &f1(e)),
                    cod.prime(&f1(e), &t(e2)),
                    cod.prime(&f1(e2), &t(e)),
                    cod.prime(&sde, &t(e2)),
                    cod.prime(&sde2, &t(e)),
                    &t(e) * &t(e2),
                ];
                let rhs = terms.iter().fold(cod.l().zero_element(), |acc, x| &acc + x);
                report.expect_eq("product rule for t", &lhs, &rhs, || {
                    format!("({}, {})", en[i], en[j])
                });
            }
        }
        for r in &rs {
            let (fr, sr) = (f0(r), s(r));
            let dsr = cod.d1(&sr);
            for (j, e) in es.iter().enumerate() {
                let te = t(e);
                let lhs = t(&dom.act_e(r, e));
                let rhs = &(&(&(&cod.act_l(&fr, &te) + &cod.act_l(&dsr, &te)) + &cod.lift(&sr, &f1(e)))
                    - &cod.lift(&f1(e), &sr))
                    - &cod.lift(&s(&dom.d1(e)), &sr);
                report.expect_eq("action rule for t", &lhs, &rhs, || format!("({r}, {})", en[j]));
            }
        }
        report
    }

    /// The map `g` this derivation connects `f` to. Fails if the
    /// derivation does not pass [`QuadraticDerivation::check`].
    pub fn homotopy_target(&self) -> Result<TwoCrossedMap> {
        let report = self.check();
        if !report.is_ok() {
            return Err(Error::InvalidDerivation(report));
        }
        Ok(self.target_unchecked())
    }

    /// `g₀ = f₀ + ∂₁'s`, `g₁ = f₁ + s∂₁ + ∂₂'t`, `g₂ = f₂ + t∂₂` on generators and bases.
    pub fn target_unchecked(&self) -> TwoCrossedMap {
        let (dom, cod) = (self.base.source(), self.base.target());
        let s = |r: &Element| must(self.s.apply(r));
        let t = |e: &Element| must(self.t.apply(e));
        let g0: Vec<Element> = self
            .base
            .f0()
            .images()
            .iter()
            .zip(self.s.on_generators())
            .map(|(f, sb)| f + &cod.d1(&sb))
            .collect();
        let g1: Vec<Element> = dom
            .e()
            .gens()
            .iter()
            .zip(self.base.f1().images())
            .map(|(e, f)| &(f + &s(&dom.d1(e))) + &cod.d2(&t(e)))
            .collect();
        let g2: Vec<Element> = dom
            .l()
            .gens()
            .iter()
            .zip(self.base.f2().images())
            .map(|(l, f)| f + &t(&dom.d2(l)))
            .collect();
        must(TwoCrossedMap::new(
            dom,
            cod,
            must(AlgebraMorphism::new_unchecked(dom.r(), cod.r(), g0)),
            must(AlgebraMorphism::new_unchecked(dom.e(), cod.e(), g1)),
            must(AlgebraMorphism::new_unchecked(dom.l(), cod.l(), g2)),
        ))
    }

    /// Same base map, same `s` on `B` and same `t` on the basis of `E`.
    pub fn agrees_with(&self, other: &QuadraticDerivation) -> bool {
        self.base == other.base
            && self.s.on_generators() == other.s.on_generators()
            && self.t == other.t
    }
}

/// A quadratic derivation together with the map it connects its base to.
#[derive(Clone, Debug)]
pub struct Homotopy {
    derivation: QuadraticDerivation,
    target: TwoCrossedMap,
}

impl Homotopy {
    /// Validating constructor.
    pub fn new(derivation: QuadraticDerivation) -> Result<Homotopy> {
        let target = derivation.homotopy_target()?;
        Ok(Homotopy { derivation, target })
    }

    pub fn new_unchecked(derivation: QuadraticDerivation) -> Homotopy {
        let target = derivation.target_unchecked();
        Homotopy { derivation, target }
    }

    /// The identity homotopy `f → f`.
    pub fn zero(f: &TwoCrossedMap) -> Result<Homotopy> {
        Ok(Homotopy::new_unchecked(QuadraticDerivation::zero(f)?))
    }

    pub fn from_generators(f: &TwoCrossedMap, s_star: &[Element], t: LinearMap) -> Result<Homotopy> {
        Homotopy::new(QuadraticDerivation::from_generators(f, s_star, t)?)
    }

    pub fn derivation(&self) -> &QuadraticDerivation {
        &self.derivation
    }

    pub fn source(&self) -> &TwoCrossedMap {
        self.derivation.base()
    }

    pub fn target(&self) -> &TwoCrossedMap {
        &self.target
    }

    pub fn s(&self) -> &PolyMap {
        self.derivation.s()
    }

    pub fn t(&self) -> &LinearMap {
        self.derivation.t()
    }

    pub fn codomain(&self) -> &TwoCrossedModule {
        self.source().target()
    }

    pub fn domain(&self) -> &TwoCrossedModule {
        self.source().source()
    }

    pub fn agrees_with(&self, other: &Homotopy) -> bool {
        self.derivation.agrees_with(&other.derivation) && self.target == other.target
    }

    /// `self ⊞ next`.
    pub fn concat(&self, next: &Homotopy) -> Result<Homotopy> {
        self.concat_using(next, &filler)
    }

    /// Concatenation with an arbitrary filler implementation.
    pub fn concat_using(&self, next: &Homotopy, w: &FillerFn) -> Result<Homotopy> {
        expect_composable(self.target(), next.source())?;
        let f = self.source();
        let cod = f.target();
        let s = self.s().on_generators();
        let s2 = next.s().on_generators();
        let sum = extend_derivation(cod, f.f0(), &add_images(&s, &s2))?;
        let w = w(cod, f.f0(), &s, &s2)?;
        let t = compose_t(self.domain(), self.t(), Some(next.t()), &w, 1)?;
        Ok(Homotopy::new_unchecked(QuadraticDerivation::new(f, sum, t)?))
    }

    /// The groupoid inverse `g → f`.
    pub fn inverse(&self) -> Result<Homotopy> {
        self.inverse_using(&filler)
    }

    pub fn inverse_using(&self, w: &FillerFn) -> Result<Homotopy> {
        let g = self.target();
        let cod = g.target();
        let s = self.s().on_generators();
        let neg: Vec<Element> = s.iter().map(|x| -x).collect();
        let s_bar = extend_derivation(cod, g.f0(), &neg)?;
        let w = w(cod, self.source().f0(), &s, &neg)?;
        let t = compose_t(self.domain(), &self.t().neg(), None, &w, -1)?;
        Ok(Homotopy::new_unchecked(QuadraticDerivation::new(g, s_bar, t)?))
    }
}

/// `t (+ t') + sign · w∘∂₁` on the basis of `E`.
fn compose_t(
    dom: &TwoCrossedModule,
    t: &LinearMap,
    t2: Option<&LinearMap>,
    w: &PolyMap,
    sign: i64,
) -> Result<LinearMap> {
    let mut out = match t2 {
        Some(t2) => t.add(t2)?,
        None => t.clone(),
    };
    let wd = LinearMap::from_fn(dom.e(), w.target(), |e| must(w.apply(&dom.d1(e))).scale_int(sign))?;
    out = out.add(&wd)?;
    Ok(out)
}

/// Exact equality of the end of one arrow and the start of the next,
/// reported with both sets of generator images on failure.
pub fn expect_composable(end: &TwoCrossedMap, start: &TwoCrossedMap) -> Result<()> {
    if end == start {
        return Ok(());
    }
    let show = |m: &TwoCrossedMap| {
        let part = |f: &AlgebraMorphism| {
            f.images()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("f0 [{}], f1 [{}], f2 [{}]", part(m.f0()), part(m.f1()), part(m.f2()))
    };
    Err(Error::SourceTargetMismatch(format!(
        "target {} does not match source {}",
        show(end),
        show(start)
    )))
}

/// `g₀ = f₀ + ∂₁'∘s` as an algebra map, from the values of `s` on `B`.
pub fn shifted_base(cod: &TwoCrossedModule, f0: &AlgebraMorphism, s: &[Element]) -> AlgebraMorphism {
    let images = f0.images().iter().zip(s).map(|(f, x)| f + &cod.d1(x)).collect();
    must(AlgebraMorphism::new_unchecked(f0.source(), f0.target(), images))
}

/// Both sides of `w^(s,s') + w^(s⊞s',s'') = w^(s,s'⊞s'') + w^(s',s'')` at `r`,
/// for derivations given by their values on `B`, the first based at `f₀`.
pub fn w_cocycle_sides(
    cod: &TwoCrossedModule,
    f0: &AlgebraMorphism,
    s: &[Element],
    s2: &[Element],
    s3: &[Element],
    r: &Element,
) -> Result<(Element, Element)> {
    let g0 = shifted_base(cod, f0, s);
    let s12 = add_images(s, s2);
    let s23 = add_images(s2, s3);
    let lhs = &filler(cod, f0, s, s2)?.apply(r)? + &filler(cod, f0, &s12, s3)?.apply(r)?;
    let rhs = &filler(cod, f0, s, &s23)?.apply(r)? + &filler(cod, &g0, s2, s3)?.apply(r)?;
    Ok((lhs, rhs))
}

pub fn verify_w_cocycle(
    cod: &TwoCrossedModule,
    f0: &AlgebraMorphism,
    s: &[Element],
    s2: &[Element],
    s3: &[Element],
    r: &Element,
) -> bool {
    match w_cocycle_sides(cod, f0, s, s2, s3, r) {
        Ok((a, b)) => a == b,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Field;

    /// FreeDom → F3 with f₀(x) = n1.
    fn canonical(field: Field) -> TwoCrossedMap {
        let dom = fixtures::free_dom(field);
        let cod = fixtures::f3(field);
        let n = cod.r();
        TwoCrossedMap::new(
            &dom,
            &cod,
            AlgebraMorphism::new(dom.r(), n, vec![n.gen(0)]).unwrap(),
            AlgebraMorphism::zero(dom.e(), cod.e()),
            AlgebraMorphism::zero(dom.l(), cod.l()),
        )
        .unwrap()
    }

    #[test]
    fn extension_of_n1() {
        let f = canonical(Field::Rational);
        let cod = f.target();
        let n = cod.e();
        let s = extend_derivation(cod, f.f0(), &[n.gen(0)]).unwrap();
        let x2 = f.source().r().monomial(&[2], 1);
        assert_eq!(s.apply(&x2).unwrap(), n.gen(1).scale_int(3));
        assert_eq!(s.on_generators(), vec![n.gen(0)]);
        let zero = extend_derivation(cod, f.f0(), &[n.zero_element()]).unwrap();
        assert!(zero.apply(&x2).unwrap().is_zero());
    }

    #[test]
    fn canonical_filler_and_concat() {
        let f = canonical(Field::Rational);
        let cod = f.target();
        let n = cod.e();
        let n1 = n.gen(0);
        let x2 = f.source().r().monomial(&[2], 1);
        let w = filler(cod, f.f0(), &[n1.clone()], &[n1.clone()]).unwrap();
        assert_eq!(w.apply(&x2).unwrap(), n.gen(1).scale_int(-2));
        assert!(w.apply(&f.source().r().gen(0)).unwrap().is_zero());

        let t = LinearMap::zero(f.source().e(), cod.l()).unwrap();
        let d = Homotopy::from_generators(&f, &[n1.clone()], t.clone()).unwrap();
        let d2 = Homotopy::from_generators(d.target(), &[n1.clone()], t).unwrap();
        let c = d.concat(&d2).unwrap();
        assert_eq!(c.s().apply(&x2).unwrap(), n.gen(1).scale_int(8));
        assert!(c.derivation().check().is_ok());
        assert_eq!(c.target(), d2.target());
    }

    #[test]
    fn override_is_detected() {
        let f = canonical(Field::Rational);
        let cod = f.target();
        let n = cod.e();
        let d = QuadraticDerivation::from_generators(
            &f,
            &[n.gen(0)],
            LinearMap::zero(f.source().e(), cod.l()).unwrap(),
        )
        .unwrap();
        assert!(d.check().is_ok());
        let bad_s = d
            .s()
            .with_override(Monomial::new(vec![2]), n.gen(1))
            .unwrap();
        let bad = QuadraticDerivation::new(&f, bad_s, d.t().clone()).unwrap();
        let report = bad.check();
        assert!(report.failures("derivation rule for s") > 0);
        assert!(matches!(bad.homotopy_target(), Err(Error::InvalidDerivation(_))));
    }

    #[test]
    fn zero_derivation_targets_its_base() {
        let f = canonical(Field::Rational);
        let z = QuadraticDerivation::zero(&f).unwrap();
        assert!(z.check().is_ok());
        assert_eq!(z.homotopy_target().unwrap(), f);
    }

    #[test]
    fn inverse_cancels() {
        let f = canonical(Field::Rational);
        let n = f.target().e();
        let t = LinearMap::zero(f.source().e(), f.target().l()).unwrap();
        let d = Homotopy::from_generators(&f, &[n.gen(0)], t).unwrap();
        let inv = d.inverse().unwrap();
        assert_eq!(inv.s().on_generators(), vec![-n.gen(0)]);
        let c = d.concat(&inv).unwrap();
        let x2 = f.source().r().monomial(&[2], 1);
        assert!(c.s().apply(&x2).unwrap().is_zero());
        assert!(c.agrees_with(&Homotopy::zero(&f).unwrap()));
    }

    #[test]
    fn mismatched_concat_is_rejected() {
        let f = canonical(Field::Rational);
        let z = Homotopy::zero(&f).unwrap();
        let dom = f.source();
        let other = TwoCrossedMap::zero(dom, f.target());
        let z2 = Homotopy::zero(&other).unwrap();
        assert!(matches!(z.concat(&z2), Err(Error::SourceTargetMismatch(_))));
    }
}
