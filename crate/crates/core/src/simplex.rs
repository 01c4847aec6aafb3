//! The algebras of 1-, 2- and 3-simplices of a 2-crossed module, the
//! auxiliary algebra `Q`, and their boundary maps.
//!
//! Products are computed by nesting [`Semidirect`]; the flat tuple types
//! are the public face:
//!
//! * `A₁ = R ⋉ E`, tuples `(r, e)`.
//! * `A₂ = (R ⋉ E) ⋉• (E ⋉' L)`, tuples `(r, e, e', l)`.
//! * `A₃ = A₂ ⋉† ((E ⋉' L) ⋉∗ L)`, tuples `(r, e, e', l, e'', l', l'')`.
//! * `Q = (R ⋉ E) ⋉▷ L`, tuples `(r, e, l)`.
//!
//! A triangle `(r, e, e', l)` has vertices `r`, `r + ∂₁e`, `r + ∂₁e + ∂₁e'`,
//! edges `(r, e)`, `(r + ∂₁e, e' + ∂₂l)` and the long edge `(r, e + e')`,
//! and filler `l`.

use crate::algebra::{Algebra, Element};
use crate::crossed::TwoCrossedModule;
use crate::error::Result;
use crate::structure::{ActsOn, CommutativeAlgebra, Semidirect};

/// `R` acting on `E`.
#[derive(Clone, Debug)]
pub struct OnE(pub TwoCrossedModule);

/// `E` acting on `L` by `e ▶' l = {e ⊗ ∂₂ l}`.
#[derive(Clone, Debug)]
pub struct Prime(pub TwoCrossedModule);

/// `A₁` acting on `E ⋉ L`.
#[derive(Clone, Debug)]
pub struct Bullet(pub TwoCrossedModule);

/// `E ⋉ L` acting on `L`.
#[derive(Clone, Debug)]
pub struct Star(pub TwoCrossedModule);

/// `A₁` acting on `(E ⋉ L) ⋉ L`.
#[derive(Clone, Debug)]
pub struct ActOne(pub TwoCrossedModule);

/// `E ⋉ L` acting on `(E ⋉ L) ⋉ L`.
#[derive(Clone, Debug)]
pub struct ActTwo(pub TwoCrossedModule);

/// `A₂` acting on `(E ⋉ L) ⋉ L`, as the sum of the two actions above.
#[derive(Clone, Debug)]
pub struct Dagger(pub TwoCrossedModule);

/// `A₁` acting on `L` by `(r, e) ▷ l = r ▶ l + e ▶' l`.
#[derive(Clone, Debug)]
pub struct Triangle(pub TwoCrossedModule);

pub type A1 = Semidirect<Algebra, Algebra, OnE>;
pub type EL = Semidirect<Algebra, Algebra, Prime>;
pub type A2 = Semidirect<A1, EL, Bullet>;
pub type ELL = Semidirect<EL, Algebra, Star>;
pub type A3 = Semidirect<A2, ELL, Dagger>;
pub type QAlg = Semidirect<A1, Algebra, Triangle>;

pub type Pair = (Element, Element);
pub type A2Nested = (Pair, Pair);
pub type EllNested = (Pair, Element);
pub type A3Nested = (A2Nested, EllNested);
pub type QNested = (Pair, Element);

impl ActsOn<Algebra, Algebra> for OnE {
    fn act(&self, r: &Element, e: &Element) -> Element {
        self.0.act_e(r, e)
    }
}

impl ActsOn<Algebra, Algebra> for Prime {
    fn act(&self, e: &Element, l: &Element) -> Element {
        self.0.prime(e, l)
    }
}

impl ActsOn<A1, EL> for Bullet {
    fn act(&self, a: &Pair, x: &Pair) -> Pair {
        bullet(&self.0, a, x)
    }
}

impl ActsOn<EL, Algebra> for Star {
    fn act(&self, a: &Pair, l: &Element) -> Element {
        star(&self.0, a, l)
    }
}

impl ActsOn<A1, ELL> for ActOne {
    fn act(&self, a: &Pair, x: &EllNested) -> EllNested {
        act_one(&self.0, a, x)
    }
}

impl ActsOn<EL, ELL> for ActTwo {
    fn act(&self, a: &Pair, x: &EllNested) -> EllNested {
        act_two(&self.0, a, x)
    }
}

impl ActsOn<A2, ELL> for Dagger {
    fn act(&self, a: &A2Nested, x: &EllNested) -> EllNested {
        dagger(&self.0, a, x)
    }
}

impl ActsOn<A1, Algebra> for Triangle {
    fn act(&self, a: &Pair, l: &Element) -> Element {
        triangle(&self.0, a, l)
    }
}

/// `(r,e) ▶• (e',l) = (ee' + r▶e', ∂₁(e)▶l + r▶l − {e' ⊗ e})`.
fn bullet(m: &TwoCrossedModule, (r, e): &Pair, (e2, l): &Pair) -> Pair {
    let first = &(e * e2) + &m.act_e(r, e2);
    let second = &(&m.act_l(&m.d1(e), l) + &m.act_l(r, l)) - &m.lift(e2, e);
    (first, second)
}

/// `(e,l) ▶∗ l' = e ▶' l' + l l'`.
fn star(m: &TwoCrossedModule, (e, l): &Pair, l2: &Element) -> Element {
    &m.prime(e, l2) + &(l * l2)
}

/// `(r,e) ▶¹ (e',l,l') = (r▶e' + ee', r▶l + ∂₁(e)▶l − {e'⊗e}, r▶l' + ∂₁(e)▶l')`.
fn act_one(m: &TwoCrossedModule, (r, e): &Pair, ((e2, l), l2): &EllNested) -> EllNested {
    let de = m.d1(e);
    let a = &m.act_e(r, e2) + &(e * e2);
    let b = &(&m.act_l(r, l) + &m.act_l(&de, l)) - &m.lift(e2, e);
    let c = &m.act_l(r, l2) + &m.act_l(&de, l2);
    ((a, b), c)
}

/// `(e,l'') ▶² (e',l,l') = (ee', e▶'l + e'▶'l'' + l''l, ∂₁(e)▶l' − {∂₂l + e' ⊗ ∂₂l'' + e})`.
fn act_two(m: &TwoCrossedModule, (e, l3): &Pair, ((e2, l), l2): &EllNested) -> EllNested {
    let a = e * e2;
    let b = &(&m.prime(e, l) + &m.prime(e2, l3)) + &(l3 * l);
    let left = &m.d2(l) + e2;
    let right = &m.d2(l3) + e;
    let c = &m.act_l(&m.d1(e), l2) - &m.lift(&left, &right);
    ((a, b), c)
}

fn dagger(m: &TwoCrossedModule, (first, second): &A2Nested, x: &EllNested) -> EllNested {
    let ((a1, b1), c1) = act_one(m, first, x);
    let ((a2, b2), c2) = act_two(m, second, x);
    ((&a1 + &a2, &b1 + &b2), &c1 + &c2)
}

/// `(r,e) ▷ l = r ▶ l + e ▶' l`.
fn triangle(m: &TwoCrossedModule, (r, e): &Pair, l: &Element) -> Element {
    &m.act_l(r, l) + &m.prime(e, l)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A1Element {
    pub r: Element,
    pub e: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A2Element {
    pub r: Element,
    pub e: Element,
    pub e2: Element,
    pub l: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A3Element {
    pub r: Element,
    pub e: Element,
    pub e2: Element,
    pub l: Element,
    pub e3: Element,
    pub l2: Element,
    pub l3: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QElement {
    pub r: Element,
    pub e: Element,
    pub l: Element,
}

impl A1Element {
    pub fn new(r: Element, e: Element) -> Self {
        A1Element { r, e }
    }
    pub fn nest(&self) -> Pair {
        (self.r.clone(), self.e.clone())
    }
    pub fn from_nested((r, e): Pair) -> Self {
        A1Element { r, e }
    }
}

impl A2Element {
    pub fn new(r: Element, e: Element, e2: Element, l: Element) -> Self {
        A2Element { r, e, e2, l }
    }
    pub fn nest(&self) -> A2Nested {
        ((self.r.clone(), self.e.clone()), (self.e2.clone(), self.l.clone()))
    }
    pub fn from_nested(((r, e), (e2, l)): A2Nested) -> Self {
        A2Element { r, e, e2, l }
    }
}

impl A3Element {
    pub fn nest(&self) -> A3Nested {
        (
            ((self.r.clone(), self.e.clone()), (self.e2.clone(), self.l.clone())),
            ((self.e3.clone(), self.l2.clone()), self.l3.clone()),
        )
    }
    pub fn from_nested((((r, e), (e2, l)), ((e3, l2), l3)): A3Nested) -> Self {
        A3Element {
            r,
            e,
            e2,
            l,
            e3,
            l2,
            l3,
        }
    }
}

impl QElement {
    pub fn new(r: Element, e: Element, l: Element) -> Self {
        QElement { r, e, l }
    }
    pub fn nest(&self) -> QNested {
        ((self.r.clone(), self.e.clone()), self.l.clone())
    }
    pub fn from_nested(((r, e), l): QNested) -> Self {
        QElement { r, e, l }
    }
}

/// The three edges of a triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edges {
    pub e01: A1Element,
    pub e12: A1Element,
    pub e02: A1Element,
}

/// The simplex algebras of one 2-crossed module.
#[derive(Clone, Debug)]
pub struct Simplices {
    module: TwoCrossedModule,
    pub a1: A1,
    pub el: EL,
    pub a2: A2,
    pub ell: ELL,
    pub a3: A3,
    pub q: QAlg,
}

impl Simplices {
    pub fn new(m: &TwoCrossedModule) -> Simplices {
        let a1 = Semidirect::new(m.r().clone(), m.e().clone(), OnE(m.clone()));
        let el = Semidirect::new(m.e().clone(), m.l().clone(), Prime(m.clone()));
        let a2 = Semidirect::new(a1.clone(), el.clone(), Bullet(m.clone()));
        let ell = Semidirect::new(el.clone(), m.l().clone(), Star(m.clone()));
        let a3 = Semidirect::new(a2.clone(), ell.clone(), Dagger(m.clone()));
        let q = Semidirect::new(a1.clone(), m.l().clone(), Triangle(m.clone()));
        Simplices {
            module: m.clone(),
            a1,
            el,
            a2,
            ell,
            a3,
            q,
        }
    }

    pub fn module(&self) -> &TwoCrossedModule {
        &self.module
    }

    fn check_r(&self, x: &Element) -> Result<()> {
        x.belongs_to(self.module.r())
    }
    fn check_e(&self, x: &Element) -> Result<()> {
        x.belongs_to(self.module.e())
    }
    fn check_l(&self, x: &Element) -> Result<()> {
        x.belongs_to(self.module.l())
    }

    fn check_a1(&self, x: &A1Element) -> Result<()> {
        self.check_r(&x.r)?;
        self.check_e(&x.e)
    }

    fn check_a2(&self, x: &A2Element) -> Result<()> {
        self.check_r(&x.r)?;
        self.check_e(&x.e)?;
        self.check_e(&x.e2)?;
        self.check_l(&x.l)
    }

    fn check_a3(&self, x: &A3Element) -> Result<()> {
        self.check_a2(&A2Element::new(x.r.clone(), x.e.clone(), x.e2.clone(), x.l.clone()))?;
        self.check_e(&x.e3)?;
        self.check_l(&x.l2)?;
        self.check_l(&x.l3)
    }

    fn check_el(&self, (e, l): &Pair) -> Result<()> {
        self.check_e(e)?;
        self.check_l(l)
    }

    pub fn a1_zero(&self) -> A1Element {
        A1Element::from_nested(self.a1.zero())
    }

    pub fn a2_zero(&self) -> A2Element {
        A2Element::from_nested(self.a2.zero())
    }

    pub fn a3_zero(&self) -> A3Element {
        A3Element::from_nested(self.a3.zero())
    }

    pub fn a1_mul(&self, x: &A1Element, y: &A1Element) -> Result<A1Element> {
        self.check_a1(x)?;
        self.check_a1(y)?;
        Ok(A1Element::from_nested(self.a1.mul(&x.nest(), &y.nest())))
    }

    pub fn a2_mul(&self, x: &A2Element, y: &A2Element) -> Result<A2Element> {
        self.check_a2(x)?;
        self.check_a2(y)?;
        Ok(A2Element::from_nested(self.a2.mul(&x.nest(), &y.nest())))
    }

    pub fn a3_mul(&self, x: &A3Element, y: &A3Element) -> Result<A3Element> {
        self.check_a3(x)?;
        self.check_a3(y)?;
        Ok(A3Element::from_nested(self.a3.mul(&x.nest(), &y.nest())))
    }

    /// Product in `E ⋉ L` with the action `▶'`.
    pub fn el_mul(&self, x: &Pair, y: &Pair) -> Result<Pair> {
        self.check_el(x)?;
        self.check_el(y)?;
        Ok(self.el.mul(x, y))
    }

    pub fn q_mul(&self, x: &QElement, y: &QElement) -> Result<QElement> {
        for z in [x, y] {
            self.check_r(&z.r)?;
            self.check_e(&z.e)?;
            self.check_l(&z.l)?;
        }
        Ok(QElement::from_nested(self.q.mul(&x.nest(), &y.nest())))
    }

    pub fn act_bullet(&self, a: &A1Element, x: &Pair) -> Result<Pair> {
        self.check_a1(a)?;
        self.check_el(x)?;
        Ok(bullet(&self.module, &a.nest(), x))
    }

    pub fn act_star(&self, a: &Pair, l: &Element) -> Result<Element> {
        self.check_el(a)?;
        self.check_l(l)?;
        Ok(star(&self.module, a, l))
    }

    pub fn act_one(&self, a: &A1Element, x: &EllNested) -> Result<EllNested> {
        self.check_a1(a)?;
        self.check_el(&x.0)?;
        self.check_l(&x.1)?;
        Ok(act_one(&self.module, &a.nest(), x))
    }

    pub fn act_two(&self, a: &Pair, x: &EllNested) -> Result<EllNested> {
        self.check_el(a)?;
        self.check_el(&x.0)?;
        self.check_l(&x.1)?;
        Ok(act_two(&self.module, a, x))
    }

    pub fn act_dagger(&self, a: &A2Element, x: &EllNested) -> Result<EllNested> {
        self.check_a2(a)?;
        self.check_el(&x.0)?;
        self.check_l(&x.1)?;
        Ok(dagger(&self.module, &a.nest(), x))
    }

    pub fn act_triangle(&self, a: &A1Element, l: &Element) -> Result<Element> {
        self.check_a1(a)?;
        self.check_l(l)?;
        Ok(triangle(&self.module, &a.nest(), l))
    }

    /// Source and target vertex of an edge: `r` and `r + ∂₁(e)`.
    pub fn a1_vertices(&self, x: &A1Element) -> (Element, Element) {
        (x.r.clone(), &x.r + &self.module.d1(&x.e))
    }

    pub fn a2_boundaries(&self, x: &A2Element) -> Edges {
        let m = &self.module;
        Edges {
            e01: A1Element::new(x.r.clone(), x.e.clone()),
            e12: A1Element::new(&x.r + &m.d1(&x.e), &x.e2 + &m.d2(&x.l)),
            e02: A1Element::new(x.r.clone(), &x.e + &x.e2),
        }
    }

    /// The projection face `(r, e, e', l)` and the back face `(r, e, e' + e'', l + l')`.
    pub fn a3_boundaries(&self, x: &A3Element) -> (A2Element, A2Element) {
        let proj = A2Element::new(x.r.clone(), x.e.clone(), x.e2.clone(), x.l.clone());
        let back = A2Element::new(x.r.clone(), x.e.clone(), &x.e2 + &x.e3, &x.l + &x.l2);
        (proj, back)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Field;

    #[test]
    fn f3_square_of_canonical_triangle() {
        let m = fixtures::f3(Field::Rational);
        let s = Simplices::new(&m);
        let n = m.e();
        let n1 = n.gen(0);
        let x = A2Element::new(n1.clone(), n1.clone(), n1.clone(), n.zero_element());
        let sq = s.a2_mul(&x, &x).unwrap();
        let n2 = n.gen(1);
        assert_eq!(
            sq,
            A2Element::new(n2.clone(), n2.scale_int(3), n2.scale_int(5), n2.scale_int(-2))
        );
        let edges = s.a2_boundaries(&sq);
        assert_eq!(edges.e02, A1Element::new(n2.clone(), n2.scale_int(8)));
    }

    #[test]
    fn bullet_examples() {
        let m = fixtures::f3(Field::Rational);
        let s = Simplices::new(&m);
        let n = m.e();
        let (n1, z) = (n.gen(0), n.zero_element());
        let a = A1Element::new(n1.clone(), n1.clone());
        let out = s.act_bullet(&a, &(n1.clone(), z.clone())).unwrap();
        assert_eq!(out, (n.gen(1).scale_int(2), -n.gen(1)));
        let zero = s.act_bullet(&s.a1_zero(), &(n1.clone(), n1.clone())).unwrap();
        assert!(zero.0.is_zero() && zero.1.is_zero());
        let r_only = A1Element::new(n1.clone(), z.clone());
        let l = n.gen(1);
        assert_eq!(
            s.act_bullet(&r_only, &(n1.clone(), l.clone())).unwrap(),
            (m.act_e(&n1, &n1), m.act_l(&n1, &l))
        );
    }

    #[test]
    fn star_and_dagger_examples() {
        let m = fixtures::f3(Field::Rational);
        let s = Simplices::new(&m);
        let n = m.e();
        let (n1, z) = (n.gen(0), n.zero_element());
        assert_eq!(s.act_star(&(n1.clone(), z.clone()), &n1).unwrap(), n.gen(1));
        assert!(s.act_star(&(z.clone(), z.clone()), &n1).unwrap().is_zero());
        let x = ((n1.clone(), n.gen(1)), n1.clone());
        let out = s.act_dagger(&s.a2_zero(), &x).unwrap();
        assert!(out.0 .0.is_zero() && out.0 .1.is_zero() && out.1.is_zero());
    }

    #[test]
    fn degenerate_faces() {
        let m = fixtures::f3(Field::Rational);
        let s = Simplices::new(&m);
        let n = m.e();
        let z = n.zero_element();
        let x = A3Element {
            r: n.gen(0),
            e: n.gen(1),
            e2: n.gen(0),
            l: n.gen(2),
            e3: z.clone(),
            l2: z.clone(),
            l3: z,
        };
        let (proj, back) = s.a3_boundaries(&x);
        assert_eq!(proj, back);
        let (p0, b0) = s.a3_boundaries(&s.a3_zero());
        assert_eq!(p0, s.a2_zero());
        assert_eq!(b0, s.a2_zero());
    }

    #[test]
    fn degenerate_triangle_edges() {
        let m = fixtures::fk(Field::Rational);
        let s = Simplices::new(&m);
        let r = m.r().gen(0);
        let e = m.e().gen(0);
        let x = A2Element::new(r.clone(), e.clone(), m.e().zero_element(), m.l().zero_element());
        let edges = s.a2_boundaries(&x);
        assert_eq!(edges.e01, A1Element::new(r.clone(), e.clone()));
        assert_eq!(edges.e12, A1Element::new(&r + &m.d1(&e), m.e().zero_element()));
        assert_eq!(edges.e02, A1Element::new(r, e));
    }

    #[test]
    fn mismatched_components_are_rejected() {
        let m = fixtures::fk(Field::Rational);
        let s = Simplices::new(&m);
        let wrong = A1Element::new(m.e().gen(0), m.e().gen(0));
        assert!(s.a1_mul(&wrong, &wrong).is_err());
    }
}
