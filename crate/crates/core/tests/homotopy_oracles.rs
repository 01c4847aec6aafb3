//! Homotopies and 2-fold homotopies against recursive evaluations on
//! monomials that never touch the simplex algebras.

use peiffer::homotopy::{extend_derivation, filler, verify_w_cocycle, Homotopy, QuadraticDerivation};
use peiffer::homotopy2::{
    check_omega, horizontal_compose, vertical_compose, vertical_inverse, whisker_left, whisker_left_by_extension,
    whisker_right, TwoDerivation,
};
use peiffer::random::Sampler;
use peiffer::suite::{self, Scenario, SuiteConfig};
use peiffer::{fixtures, Algebra, AlgebraMorphism, Element, Field, LinearMap, Monomial, TwoCrossedMap, TwoCrossedModule};
use proptest::prelude::*;

struct Oracle<'a> {
    cod: &'a TwoCrossedModule,
    f0: &'a AlgebraMorphism,
}

impl Oracle<'_> {
    /// Splits off the first variable occurring in `m`.
    fn split(m: &Monomial) -> (Monomial, Option<Monomial>) {
        let n = m.exponents().len();
        let i = m.exponents().iter().position(|&e| e > 0).unwrap();
        let mut rest = m.exponents().to_vec();
        rest[i] -= 1;
        let rest = Monomial::new(rest);
        (Monomial::generator(n, i), if rest.degree() == 0 { None } else { Some(rest) })
    }

    fn mono(&self, m: &Monomial) -> Element {
        let r = self.f0.source();
        r.from_terms([(m.clone(), r.field().one())]).unwrap()
    }

    fn f0(&self, m: &Monomial) -> Element {
        self.f0.apply(&self.mono(m)).unwrap()
    }

    /// `s(bm) = f₀(b)▶s(m) + f₀(m)▶s(b) + s(b)s(m)`.
    fn s(&self, gens: &[Element], m: &Monomial) -> Element {
        let (b, rest) = Self::split(m);
        let sb = gens[b.as_generator().unwrap()].clone();
        let Some(rest) = rest else { return sb };
        let sm = self.s(gens, &rest);
        let c = self.cod;
        &(&c.act_e(&self.f0(&b), &sm) + &c.act_e(&self.f0(&rest), &sb)) + &(&sb * &sm)
    }

    /// Third and fourth components of `X(m)` for `X(b) = (f₀(b), s(b), s'(b), 0)`,
    /// from the component formula of the product in `A₂`.
    fn x(&self, s: &[Element], s2: &[Element], m: &Monomial) -> (Element, Element) {
        let (b, rest) = Self::split(m);
        let i = b.as_generator().unwrap();
        let (e, e1, l) = (s[i].clone(), s2[i].clone(), self.cod.l().zero_element());
        let Some(rest) = rest else { return (e1, l) };
        let c = self.cod;
        let (r, r2) = (self.f0(&b), self.f0(&rest));
        let e2 = self.s(s, &rest);
        let (e21, l2) = self.x(s, s2, &rest);
        let third = [&e * &e21, c.act_e(&r, &e21), &e2 * &e1, c.act_e(&r2, &e1), &e1 * &e21]
            .into_iter()
            .fold(c.e().zero_element(), |a, t| &a + &t);
        let fourth = [
            c.act_l(&c.d1(&e), &l2),
            c.act_l(&r, &l2),
            -c.lift(&e21, &e),
            c.act_l(&c.d1(&e2), &l),
            c.act_l(&r2, &l),
            -c.lift(&e1, &e2),
            c.prime(&e1, &l2),
            c.prime(&e21, &l),
            &l * &l2,
        ]
        .into_iter()
        .fold(c.l().zero_element(), |a, t| &a + &t);
        (third, fourth)
    }

    /// `q(bm) = f₀(b)▶q(m) + f₀(m)▶q(b) + s(b)▶'q(m) + s(m)▶'q(b) + q(b)q(m)`.
    fn q(&self, s: &[Element], q: &[Element], m: &Monomial) -> Element {
        let (b, rest) = Self::split(m);
        let qb = q[b.as_generator().unwrap()].clone();
        let Some(rest) = rest else { return qb };
        let c = self.cod;
        let qm = self.q(s, q, &rest);
        let (sb, sm) = (self.s(s, &b), self.s(s, &rest));
        [
            c.act_l(&self.f0(&b), &qm),
            c.act_l(&self.f0(&rest), &qb),
            c.prime(&sb, &qm),
            c.prime(&sm, &qb),
            &qb * &qm,
        ]
        .into_iter()
        .fold(c.l().zero_element(), |a, t| &a + &t)
    }
}

fn scenarios() -> Vec<Scenario> {
    let mut out = suite::f3_scenarios(Field::Rational);
    out.extend(suite::fk_scenarios(Field::Rational));
    out.extend(suite::f3_scenarios(Field::Prime(3)));
    out
}

fn images(rng: &mut Sampler, n: usize, alg: &Algebra) -> Vec<Element> {
    (0..n).map(|_| rng.element(alg, 1)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extension_and_filler_match_recursions(k in 0usize..8, seed in any::<u64>()) {
        let sc = &scenarios()[k];
        let f = &sc.base;
        let (cod, r) = (f.target(), f.source().r());
        let o = Oracle { cod, f0: f.f0() };
        let mut rng = Sampler::new(seed);
        let s = images(&mut rng, r.rank(), cod.e());
        let s2 = images(&mut rng, r.rank(), cod.e());
        let q = images(&mut rng, r.rank(), cod.l());
        let ext = extend_derivation(cod, f.f0(), &s).unwrap();
        let w = filler(cod, f.f0(), &s, &s2).unwrap();
        let h = Homotopy::new_unchecked(QuadraticDerivation::new(
            f, ext.clone(), LinearMap::zero(f.source().e(), cod.l()).unwrap()).unwrap());
        let qmap = TwoDerivation::from_generators(&h, &q).unwrap();
        prop_assert_eq!(ext.on_generators(), s.clone());
        for _ in 0..3 {
            let m = rng.monomial_exponents(r, 5);
            prop_assert_eq!(ext.at(&m), o.s(&s, &m));
            prop_assert_eq!(w.at(&m), o.x(&s, &s2, &m).1);
            prop_assert_eq!(qmap.q().at(&m), o.q(&s, &q, &m));
        }
    }

    #[test]
    fn derivations_equal_on_b_are_equal(k in 0usize..8, seed in any::<u64>()) {
        let sc = &scenarios()[k];
        let f = &sc.base;
        let cod = f.target();
        let mut rng = Sampler::new(seed);
        let s = images(&mut rng, f.source().r().rank(), cod.e());
        let a = extend_derivation(cod, f.f0(), &s).unwrap();
        let b = extend_derivation(cod, f.f0(), &s).unwrap();
        let rs: Vec<Element> = (0..4).map(|_| rng.polynomial(f.source().r(), 5, 4)).collect();
        prop_assert!(a.agrees_on(&b, &rs));
    }

    #[test]
    fn homotopy_targets_are_maps(k in 0usize..8, seed in any::<u64>()) {
        let sc = &scenarios()[k];
        let mut rng = Sampler::new(seed);
        let d = suite::random_homotopy(&mut rng, &sc.base);
        prop_assert!(d.derivation().check().is_ok());
        let g = d.derivation().homotopy_target().unwrap();
        prop_assert!(g.check().is_ok());
        let inv = d.inverse().unwrap();
        prop_assert!(inv.inverse().unwrap().agrees_with(&d));
        prop_assert!(d.concat(&inv).unwrap().agrees_with(&Homotopy::zero(&sc.base).unwrap()));
    }
}

fn canonical() -> (TwoCrossedMap, Homotopy) {
    let sc = suite::f3_scenarios(Field::Rational).remove(0);
    let f = sc.base;
    let n1 = f.target().e().gen(0);
    let t = LinearMap::zero(f.source().e(), f.target().l()).unwrap();
    let h = Homotopy::from_generators(&f, &[n1], t).unwrap();
    (f, h)
}

fn x_pow(f: &TwoCrossedMap, k: u32) -> Element {
    f.source().r().monomial(&[k], 1)
}

#[test]
fn canonical_values() {
    let (f, h) = canonical();
    let cod = f.target();
    let n = cod.e();
    let n1 = n.gen(0);
    let n2 = n.gen(1);
    assert_eq!(h.s().apply(&x_pow(&f, 2)).unwrap(), n2.scale_int(3));
    assert_eq!(h.target(), &f);

    let w = filler(cod, f.f0(), &[n1.clone()], &[n1.clone()]).unwrap();
    assert_eq!(w.apply(&x_pow(&f, 2)).unwrap(), n2.scale_int(-2));
    let zero = filler(cod, f.f0(), &[n.zero_element()], &[n1.clone()]).unwrap();
    assert!(zero.apply(&x_pow(&f, 3)).unwrap().is_zero());

    let t = LinearMap::zero(f.source().e(), cod.l()).unwrap();
    let h2 = Homotopy::from_generators(h.target(), &[n1.clone()], t).unwrap();
    let c = h.concat(&h2).unwrap();
    assert_eq!(c.s().apply(&x_pow(&f, 2)).unwrap(), n2.scale_int(8));

    let inv = h.inverse().unwrap();
    assert_eq!(inv.s().on_generators(), vec![-n1.clone()]);
    let back = h.concat(&inv).unwrap();
    assert!(back.s().apply(&x_pow(&f, 1)).unwrap().is_zero());
    assert!(back.s().apply(&x_pow(&f, 2)).unwrap().is_zero());

    let same = h.concat(&Homotopy::zero(h.target()).unwrap()).unwrap();
    assert!(same.agrees_with(&h));

    let s = [n1.clone()];
    let s3 = [n.element(&[2, -1, 0])];
    assert!(verify_w_cocycle(cod, f.f0(), &s, &s, &s3, &x_pow(&f, 3)));
    let zero = [n.zero_element()];
    assert!(verify_w_cocycle(cod, f.f0(), &zero, &zero, &zero, &x_pow(&f, 3)));
}

#[test]
fn canonical_two_fold_values() {
    let (f, h) = canonical();
    let cod = f.target();
    let n = cod.l();
    let (n1, n2) = (n.gen(0), n.gen(1));
    let x2 = x_pow(&f, 2);
    let x3 = x_pow(&f, 3);

    let q = TwoDerivation::from_generators(&h, &[n1.clone()]).unwrap();
    assert_eq!(q.q().apply(&x2).unwrap(), n2.scale_int(5));
    let target = q.two_fold_target().unwrap();
    assert_eq!(target.s().on_generators(), vec![n1.scale_int(2)]);
    assert_eq!(target.s().apply(&x2).unwrap(), n2.scale_int(8));
    assert!(check_omega(&q, &x_pow(&f, 1), &x_pow(&f, 1)).unwrap());

    let inv = vertical_inverse(&q).unwrap();
    assert_eq!(inv.q().apply(&x2).unwrap(), n2.scale_int(-5));
    assert!(inv.check().is_ok());
    let zero = vertical_compose(&q, &inv).unwrap();
    assert!(zero.q().apply(&x3).unwrap().is_zero());

    let q2 = TwoDerivation::from_generators(&target, &[n2.clone()]).unwrap();
    let sum = vertical_compose(&q, &q2).unwrap();
    assert_eq!(sum.q_generators(), vec![&n1 + &n2]);
    assert!(sum.check().is_ok());

    let t = LinearMap::zero(f.source().e(), n).unwrap();
    let u = Homotopy::from_generators(h.target(), &[n1.clone()], t).unwrap();
    let right = whisker_right(&q, &u).unwrap();
    assert_eq!(right.q().apply(&x2).unwrap(), n2.scale_int(7));
    assert_eq!(right.q_generators(), q.q_generators());

    let unit = TwoDerivation::zero(&u).unwrap();
    let hc = horizontal_compose(&q, &unit).unwrap();
    assert_eq!(hc.q().apply(&x2).unwrap(), n2.scale_int(7));

    let zero_h = Homotopy::zero(&f).unwrap();
    let p = TwoDerivation::from_generators(&u, &[n2.clone()]).unwrap();
    let left = whisker_left(&zero_h, &p).unwrap();
    assert!(left.q().agrees_on(p.q(), &[x2.clone(), x3.clone()]));
    let left = whisker_left(&h, &p).unwrap();
    let ext = whisker_left_by_extension(&h, &p).unwrap();
    assert!(left.agrees_on(&ext, &[x2, x3]));
}

#[test]
fn mismatched_compositions_are_rejected() {
    let (f, h) = canonical();
    let n = f.target().l();
    let q = TwoDerivation::from_generators(&h, &[n.gen(0)]).unwrap();
    let err = vertical_compose(&q, &q).unwrap_err();
    assert!(err.to_string().contains("source/target mismatch"), "{err}");
    let other = peiffer::suite::from_free(f.source(), f.target(), vec![n.gen(1)]);
    let z = Homotopy::zero(&other).unwrap();
    assert!(whisker_right(&q, &z).is_err());
    assert!(h.concat(&z).is_err());
}

/// `κ[x, y]⁺` is also free on `{x, y + x²}`. Concatenation depends on the
/// chosen basis, while each choice satisfies the laws.
#[test]
fn concatenation_depends_on_the_basis() {
    let field = Field::Rational;
    let cod = fixtures::f3(field);
    let n = cod.r();
    let dom = suite::free_domain(field, &["x", "y"]);
    let r = dom.r();
    let (x, y) = (r.gen(0), r.gen(1));
    let f = suite::from_free(&dom, &cod, vec![n.gen(0), n.zero_element()]);

    let dom2 = suite::free_domain(field, &["u", "v"]);
    let change = AlgebraMorphism::new(dom2.r(), r, vec![x.clone(), &y + &(&x * &x)]).unwrap();
    let f2 = suite::from_free(&dom2, &cod, change.then(f.f0()).unwrap().images().to_vec());

    let s = [n.gen(0), n.zero_element()];
    let t = LinearMap::zero(dom.e(), cod.l()).unwrap();
    let d = Homotopy::from_generators(&f, &s, t.clone()).unwrap();
    let d_next = Homotopy::from_generators(d.target(), &s, t).unwrap();
    let sum = d.concat(&d_next).unwrap();

    let transported = |h: &Homotopy| -> Vec<Element> {
        dom2.r()
            .gens()
            .iter()
            .map(|g| h.s().apply(&change.apply(g).unwrap()).unwrap())
            .collect()
    };
    let t2 = LinearMap::zero(dom2.e(), cod.l()).unwrap();
    let e = Homotopy::from_generators(&f2, &transported(&d), t2.clone()).unwrap();
    let e_next = Homotopy::from_generators(e.target(), &transported(&d_next), t2).unwrap();
    let sum2 = e.concat(&e_next).unwrap();

    let v = dom2.r().gen(1);
    let via_b = sum.s().apply(&change.apply(&v).unwrap()).unwrap();
    let via_b2 = sum2.s().apply(&v).unwrap();
    assert_ne!(via_b, via_b2);

    let cfg = SuiteConfig {
        seed: 11,
        samples: 6,
        degree: 3,
    };
    let scenarios = [
        Scenario::new("basis {x, y}", f).unwrap(),
        Scenario::new("basis {x, y + x^2}", f2).unwrap(),
    ];
    assert!(suite::groupoid_suite(&[], &scenarios, &cfg).is_ok());
    assert!(suite::two_groupoid_suite(&[], &scenarios, &cfg).is_ok());
}
