//! Quadratic 2-derivations between homotopies: vertical composition,
//! whiskering and horizontal composition.

use crate::algebra::Element;
use crate::crossed::{Sweep, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::homotopy::{expect_composable, filler, Homotopy, PolyMap, QuadraticDerivation};
use crate::maps::{AlgebraMorphism, LinearMap};
use crate::random::Sampler;
use crate::report::CheckReport;
use crate::simplex::{A2Element, Simplices};
use crate::structure::{eval_monomial, must};

/// The unique `(f₀, s)`-quadratic 2-derivation `R → L'` with the given
/// values on `B`, read off from the algebra map `R → Q'`,
/// `b ↦ (f₀(b), s(b), q*(b))`.
pub fn extend_two_derivation(
    cod: &TwoCrossedModule,
    f0: &AlgebraMorphism,
    s: &[Element],
    q_star: &[Element],
) -> Result<PolyMap> {
    let r = f0.source();
    if !r.is_free() {
        return Err(Error::DomainNotFree(r.name().to_string()));
    }
    for (what, xs) in [("s", s), ("q", q_star)] {
        if xs.len() != r.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {} images for {} generators",
                xs.len(),
                r.rank()
            )));
        }
    }
    s.iter().try_for_each(|x| x.belongs_to(cod.e()))?;
    q_star.iter().try_for_each(|x| x.belongs_to(cod.l()))?;
    let simp = Simplices::new(cod);
    let images: Vec<_> = f0
        .images()
        .iter()
        .zip(s.iter().zip(q_star))
        .map(|(a, (b, c))| ((a.clone(), b.clone()), c.clone()))
        .collect();
    PolyMap::memoized(r, cod.l(), move |m| eval_monomial(&simp.q, &images, m).1)
}

/// A quadratic 2-derivation `q` from the homotopy `(s, t)` to the homotopy
/// `(s + ∂₂'q, t - q∂₁)`, both based at `f` and ending at `g`.
#[derive(Clone, Debug)]
pub struct TwoDerivation {
    base: Homotopy,
    q: PolyMap,
}

impl TwoDerivation {
    pub fn from_generators(base: &Homotopy, q_star: &[Element]) -> Result<Self> {
        let f = base.source();
        let q = extend_two_derivation(f.target(), f.f0(), &base.s().on_generators(), q_star)?;
        TwoDerivation::new(base, q)
    }

    /// Checks shapes only; see [`TwoDerivation::check`].
    pub fn new(base: &Homotopy, q: PolyMap) -> Result<Self> {
        let (dom, cod) = (base.domain(), base.codomain());
        if q.source() != dom.r() || q.target() != cod.l() {
            return Err(Error::AlgebraMismatch {
                left: format!("{} -> {}", q.source(), q.target()),
                right: format!("{} -> {}", dom.r(), cod.l()),
            });
        }
        Ok(TwoDerivation {
            base: base.clone(),
            q,
        })
    }

    /// The identity 2-derivation on a homotopy.
    pub fn zero(base: &Homotopy) -> Result<Self> {
        TwoDerivation::new(base, PolyMap::zero(base.domain().r(), base.codomain().l())?)
    }

    pub fn base(&self) -> &Homotopy {
        &self.base
    }

    pub fn q(&self) -> &PolyMap {
        &self.q
    }

    pub fn q_generators(&self) -> Vec<Element> {
        self.q.on_generators()
    }

    fn codomain(&self) -> &TwoCrossedModule {
        self.base.codomain()
    }

    fn f0(&self) -> &AlgebraMorphism {
        self.base.source().f0()
    }

    /// Samples of the free bottom algebra: generators, then random monomials.
    fn samples(&self, sweep: &Sweep) -> Vec<Element> {
        let r = self.base.domain().r();
        let mut out = r.gens();
        if r.rank() > 0 {
            let mut rng = Sampler::new(sweep.seed);
            out.extend((0..sweep.samples).map(|_| rng.monomial(r, sweep.degree)));
        }
        out
    }

    pub fn check(&self) -> CheckReport {
        self.check_with(&Sweep::default())
    }

    /// The defining product rule on generator pairs and random monomial
    /// pairs, validity of the target homotopy, and agreement of its end
    /// with the end of the base homotopy.
    pub fn check_with(&self, sweep: &Sweep) -> CheckReport {
        let mut report = self.product_rule_report(sweep);
        let target = self.target_unchecked();
        report.merge_prefixed("target", target.derivation().check_with(sweep));
        report.expect("same end", target.target() == self.base.target(), || {
            "target homotopy ends elsewhere".to_string()
        });
        report
    }

    fn product_rule_report(&self, sweep: &Sweep) -> CheckReport {
        let mut report = CheckReport::new("quadratic 2-derivation");
        let cod = self.codomain();
        let f0 = |r: &Element| must(self.f0().apply(r));
        let s = |r: &Element| must(self.base.s().apply(r));
        let q = |r: &Element| must(self.q.apply(r));
        let rs = self.samples(sweep);
        let mut pairs = Vec::new();
        for i in 0..rs.len() {
            for j in i..rs.len() {
                if i < self.base.domain().r().rank() || (j - i) % 5 == 1 || i == j {
                    pairs.push((i, j));
                }
            }
        }
        for (i, j) in pairs {
            let (r, r2) = (&rs[i], &rs[j]);
            let (qr, qr2) = (q(r), q(r2));
            let lhs = q(&(r * r2));
            let terms = [
                cod.act_l(&f0(r), &qr2),
                cod.act_l(&f0(r2), &qr),
                cod.prime(&s(r), &qr2),
                cod.prime(&s(r2), &qr),
                &qr * &qr2,
            ];
            let rhs = terms.iter().fold(cod.l().zero_element(), |acc, x| &acc + x);
            report.expect_eq("product rule for q", &lhs, &rhs, || format!("({r}, {r2})"));
        }
        report
    }

    /// The homotopy `(s', t')` this 2-derivation ends at. Fails when the
    /// product rule does not hold.
    pub fn two_fold_target(&self) -> Result<Homotopy> {
        let report = self.product_rule_report(&Sweep::default());
        if !report.is_ok() {
            return Err(Error::InvalidTwoDerivation(report));
        }
        Ok(self.target_unchecked())
    }

    /// `s' = s + ∂₂'q` and `t' = t - q∂₁`.
    pub fn target_unchecked(&self) -> Homotopy {
        let (dom, cod) = (self.base.domain(), self.codomain());
        let s2 = must(self.base.s().add(&must(self.q.then(cod.d2_map()))));
        let qd = must(LinearMap::from_fn(dom.e(), cod.l(), |e| must(self.q.apply(&dom.d1(e)))));
        let t2 = must(self.base.t().sub(&qd));
        Homotopy::new_unchecked(must(QuadraticDerivation::new(self.base.source(), s2, t2)))
    }

    /// Same base homotopy and same values on `B`.
    pub fn agrees_with(&self, other: &TwoDerivation) -> bool {
        self.base.agrees_with(&other.base) && self.q_generators() == other.q_generators()
    }

    /// Same base homotopy and same values on every sample.
    pub fn agrees_on(&self, other: &TwoDerivation, samples: &[Element]) -> bool {
        self.base.agrees_with(&other.base) && self.q.agrees_on(&other.q, samples)
    }
}

/// `Ω(r) = (f₀(r), s(r), ∂₂'q(r), -q(r))` in `A'₂`.
pub fn omega(d: &TwoDerivation, r: &Element) -> Result<A2Element> {
    let cod = d.codomain();
    let q = d.q.apply(r)?;
    Ok(A2Element::new(
        d.f0().apply(r)?,
        d.base.s().apply(r)?,
        cod.d2(&q),
        -q,
    ))
}

/// Whether `Ω(rr') = Ω(r)Ω(r')`.
pub fn check_omega(d: &TwoDerivation, r: &Element, r2: &Element) -> Result<bool> {
    let simp = Simplices::new(d.codomain());
    let lhs = omega(d, &(r * r2))?;
    let rhs = simp.a2_mul(&omega(d, r)?, &omega(d, r2)?)?;
    Ok(lhs == rhs)
}

fn expect_same_homotopy(end: &Homotopy, start: &Homotopy) -> Result<()> {
    if end.agrees_with(start) {
        return Ok(());
    }
    let show = |h: &Homotopy| {
        h.s()
            .on_generators()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    Err(Error::SourceTargetMismatch(format!(
        "2-derivation ends at s = [{}] but the next starts at s = [{}]",
        show(end),
        show(start)
    )))
}

/// `q ⋆ q' = q + q'`.
pub fn vertical_compose(a: &TwoDerivation, b: &TwoDerivation) -> Result<TwoDerivation> {
    expect_same_homotopy(&a.target_unchecked(), &b.base)?;
    TwoDerivation::new(&a.base, a.q.add(&b.q)?)
}

/// `-q`, running from the target of `q` back to its base.
pub fn vertical_inverse(a: &TwoDerivation) -> Result<TwoDerivation> {
    TwoDerivation::new(&a.target_unchecked(), a.q.neg())
}

fn w(h: &Homotopy, s: &[Element], u: &[Element]) -> Result<PolyMap> {
    filler(h.codomain(), h.source().f0(), s, u)
}

/// `q ⊚ u = q + w^(s,u) - w^(s',u)` for `q: s ⇒ s'` and `u: g → h`.
pub fn whisker_right(q: &TwoDerivation, u: &Homotopy) -> Result<TwoDerivation> {
    expect_composable(q.base.target(), u.source())?;
    let base = q.base.concat(u)?;
    let s = q.base.s().on_generators();
    let s2 = q.target_unchecked().s().on_generators();
    let ug = u.s().on_generators();
    let map = q.q.add(&w(&q.base, &s, &ug)?)?.sub(&w(&q.base, &s2, &ug)?)?;
    TwoDerivation::new(&base, map)
}

/// `q ⊚ u` as the extension of `q|B` over the base `s ⊞ u`.
pub fn whisker_right_by_extension(q: &TwoDerivation, u: &Homotopy) -> Result<TwoDerivation> {
    expect_composable(q.base.target(), u.source())?;
    TwoDerivation::from_generators(&q.base.concat(u)?, &q.q_generators())
}

/// `s ⊚ q' = q' + w^(s,u) - w^(s,u')` for `s: f → g` and `q': u ⇒ u'`.
pub fn whisker_left(s: &Homotopy, q: &TwoDerivation) -> Result<TwoDerivation> {
    expect_composable(s.target(), q.base.source())?;
    let base = s.concat(&q.base)?;
    let sg = s.s().on_generators();
    let u = q.base.s().on_generators();
    let u2 = q.target_unchecked().s().on_generators();
    let map = q.q.add(&w(s, &sg, &u)?)?.sub(&w(s, &sg, &u2)?)?;
    TwoDerivation::new(&base, map)
}

/// `s ⊚ q'` as the extension of `q'|B` over the base `s ⊞ u`.
pub fn whisker_left_by_extension(s: &Homotopy, q: &TwoDerivation) -> Result<TwoDerivation> {
    expect_composable(s.target(), q.base.source())?;
    TwoDerivation::from_generators(&s.concat(&q.base)?, &q.q_generators())
}

/// `q ⊗ q' = q + q' + w^(s,u) - w^(s',u')` for `q: s ⇒ s'` over `f → g`
/// and `q': u ⇒ u'` over `g → h`.
pub fn horizontal_compose(q: &TwoDerivation, q2: &TwoDerivation) -> Result<TwoDerivation> {
    expect_composable(q.base.target(), q2.base.source())?;
    let base = q.base.concat(&q2.base)?;
    let s = q.base.s().on_generators();
    let s2 = q.target_unchecked().s().on_generators();
    let u = q2.base.s().on_generators();
    let u2 = q2.target_unchecked().s().on_generators();
    let map = q
        .q
        .add(&q2.q)?
        .add(&w(&q.base, &s, &u)?)?
        .sub(&w(&q.base, &s2, &u2)?)?;
    TwoDerivation::new(&base, map)
}

/// Whether `(s ⊚ q) ⊚ s' = s ⊚ (q ⊚ s')` on the samples.
pub fn whisker_interchange_check(
    s: &Homotopy,
    q: &TwoDerivation,
    s2: &Homotopy,
    samples: &[Element],
) -> Result<bool> {
    let left = whisker_right(&whisker_left(s, q)?, s2)?;
    let right = whisker_left(s, &whisker_right(q, s2)?)?;
    Ok(left.agrees_on(&right, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::TwoCrossedMap;
    use crate::fixtures;
    use crate::scalar::Field;

    fn canonical() -> (TwoCrossedMap, Homotopy) {
        let dom = fixtures::free_dom(Field::Rational);
        let cod = fixtures::f3(Field::Rational);
        let n = cod.r();
        let f = TwoCrossedMap::new(
            &dom,
            &cod,
            AlgebraMorphism::new(dom.r(), n, vec![n.gen(0)]).unwrap(),
            AlgebraMorphism::zero(dom.e(), cod.e()),
            AlgebraMorphism::zero(dom.l(), cod.l()),
        )
        .unwrap();
        let t = LinearMap::zero(dom.e(), cod.l()).unwrap();
        let h = Homotopy::from_generators(&f, &[n.gen(0)], t).unwrap();
        (f, h)
    }

    #[test]
    fn pinned_two_derivation() {
        let (f, h) = canonical();
        let n = f.target().l();
        let x2 = f.source().r().monomial(&[2], 1);
        let q = TwoDerivation::from_generators(&h, &[n.gen(0)]).unwrap();
        assert_eq!(q.q().apply(&x2).unwrap(), n.gen(1).scale_int(5));
        assert!(q.check().is_ok(), "{}", q.check());
        let target = q.two_fold_target().unwrap();
        assert_eq!(target.s().apply(&x2).unwrap(), n.gen(1).scale_int(8));
        assert_eq!(target.target(), h.target());
        let x = f.source().r().gen(0);
        assert!(check_omega(&q, &x, &x2).unwrap());
    }

    #[test]
    fn pinned_right_whisker() {
        let (f, h) = canonical();
        let n = f.target().l();
        let x2 = f.source().r().monomial(&[2], 1);
        let q = TwoDerivation::from_generators(&h, &[n.gen(0)]).unwrap();
        let t = LinearMap::zero(f.source().e(), n).unwrap();
        let u = Homotopy::from_generators(h.target(), &[n.gen(0)], t).unwrap();
        let s2 = q.target_unchecked().s().on_generators();
        let w2 = filler(f.target(), f.f0(), &s2, &u.s().on_generators()).unwrap();
        assert_eq!(w2.apply(&x2).unwrap(), n.gen(1).scale_int(-4));
        let closed = whisker_right(&q, &u).unwrap();
        assert_eq!(closed.q().apply(&x2).unwrap(), n.gen(1).scale_int(7));
        let ext = whisker_right_by_extension(&q, &u).unwrap();
        let x3 = f.source().r().monomial(&[3], 1);
        assert!(closed.agrees_on(&ext, &[x2, x3]));
    }

    #[test]
    fn vertical_inverse_cancels() {
        let (f, h) = canonical();
        let n = f.target().l();
        let q = TwoDerivation::from_generators(&h, &[n.gen(0)]).unwrap();
        let inv = vertical_inverse(&q).unwrap();
        assert!(inv.check().is_ok());
        let c = vertical_compose(&q, &inv).unwrap();
        let x3 = f.source().r().monomial(&[3], 1);
        assert!(c.q().apply(&x3).unwrap().is_zero());
        assert!(vertical_compose(&q, &q).is_err());
    }
}
