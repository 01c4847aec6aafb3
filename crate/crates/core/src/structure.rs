//! Generic commutative algebra interface, actions, and the semidirect product.
//!
//! The simplex algebras are iterated semidirect products, so everything in
//! this module is generic over [`CommutativeAlgebra`]; the concrete
//! [`Algebra`] is one instance, [`Semidirect`] builds the others.

use std::fmt::Debug;

use crate::algebra::{Algebra, Element, Monomial};
use crate::error::Result;
use crate::report::CheckReport;
use crate::scalar::Scalar;

/// A commutative (not necessarily unital) algebra over an exact field.
pub trait CommutativeAlgebra {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        assert!(n >= 1);
        let mut acc = a.clone();
        for _ in 1..n {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

impl CommutativeAlgebra for Algebra {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element::zero(self)
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        a + b
    }
    fn neg(&self, a: &Element) -> Element {
        -a
    }
    fn scale(&self, c: &Scalar, a: &Element) -> Element {
        a.scale(c)
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        a * b
    }
}

/// A bilinear action `r ▶ m` of one algebra on another.
pub trait ActsOn<R: CommutativeAlgebra, M: CommutativeAlgebra> {
    fn act(&self, r: &R::Elem, m: &M::Elem) -> M::Elem;
}

impl<R, M, T> ActsOn<R, M> for &T
where
    R: CommutativeAlgebra,
    M: CommutativeAlgebra,
    T: ActsOn<R, M>,
{
    fn act(&self, r: &R::Elem, m: &M::Elem) -> M::Elem {
        (**self).act(r, m)
    }
}

/// `R ⋉ M` with `(r,m)(r',m') = (rr', r▶m' + r'▶m + mm')`.
#[derive(Clone, Debug)]
pub struct Semidirect<R, M, A> {
    pub base: R,
    pub module: M,
    pub action: A,
}

impl<R, M, A> Semidirect<R, M, A>
where
    R: CommutativeAlgebra,
    M: CommutativeAlgebra,
    A: ActsOn<R, M>,
{
    pub fn new(base: R, module: M, action: A) -> Self {
        Semidirect {
            base,
            module,
            action,
        }
    }

    /// `(r, 0)`.
    pub fn embed_base(&self, r: &R::Elem) -> (R::Elem, M::Elem) {
        (r.clone(), self.module.zero())
    }

    /// `(0, m)`.
    pub fn embed_module(&self, m: &M::Elem) -> (R::Elem, M::Elem) {
        (self.base.zero(), m.clone())
    }
}

impl<R, M, A> CommutativeAlgebra for Semidirect<R, M, A>
where
    R: CommutativeAlgebra,
    M: CommutativeAlgebra,
    A: ActsOn<R, M>,
{
    type Elem = (R::Elem, M::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.module.zero())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.module.add(&a.1, &b.1))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.base.neg(&a.0), self.module.neg(&a.1))
    }

    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem {
        (self.base.scale(c, &a.0), self.module.scale(c, &a.1))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (r, m) = a;
        let (r2, m2) = b;
        let left = self.action.act(r, m2);
        let right = self.action.act(r2, m);
        let prod = self.module.mul(m, m2);
        (
            self.base.mul(r, r2),
            self.module.add(&self.module.add(&left, &right), &prod),
        )
    }
}

/// Sums `coeff * images^exponents` over the terms of a polynomial `r`.
///
/// This is the unique algebra map out of a free algebra determined by the
/// images of its generators, evaluated at `r`. `r` must live in a free
/// algebra with `images.len()` generators.
pub fn eval_free<A: CommutativeAlgebra>(target: &A, images: &[A::Elem], r: &Element) -> A::Elem {
    assert!(r.algebra().is_free(), "universal property needs a free source");
    assert_eq!(images.len(), r.algebra().rank());
    let mut acc = target.zero();
    for (mono, c) in r.terms() {
        let term = eval_monomial(target, images, mono);
        acc = target.add(&acc, &target.scale(c, &term));
    }
    acc
}

/// The image of a single monomial under the algebra map sending the
/// `i`-th generator to `images[i]`.
pub fn eval_monomial<A: CommutativeAlgebra>(target: &A, images: &[A::Elem], mono: &Monomial) -> A::Elem {
    let mut prod: Option<A::Elem> = None;
    for (i, &e) in mono.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let p = target.pow(&images[i], e);
        prod = Some(match prod {
            None => p,
            Some(q) => target.mul(&q, &p),
        });
    }
    prod.expect("monomials have positive degree")
}

/// Checks A1 and A2 for an action on the given sample elements.
///
/// A1: `r▶(mm') = (r▶m)m' = m(r▶m')`; A2: `(rr')▶m = r▶(r'▶m)`.
pub fn action_law_report<R, M, A>(
    label: &str,
    acting: &R,
    module: &M,
    action: &A,
    rs: &[R::Elem],
    ms: &[M::Elem],
) -> CheckReport
where
    R: CommutativeAlgebra,
    M: CommutativeAlgebra,
    A: ActsOn<R, M>,
{
    let mut report = CheckReport::new(label);
    for (i, r) in rs.iter().enumerate() {
        for (j, m) in ms.iter().enumerate() {
            for (k, m2) in ms.iter().enumerate() {
                let lhs = action.act(r, &module.mul(m, m2));
                let mid = module.mul(&action.act(r, m), m2);
                let rhs = module.mul(m, &action.act(r, m2));
                let ok = lhs == mid && mid == rhs;
                report.expect("A1", ok, || format!("r#{i}, m#{j}, m'#{k}"));
            }
        }
    }
    for (i, r) in rs.iter().enumerate() {
        for (j, r2) in rs.iter().enumerate() {
            for (k, m) in ms.iter().enumerate() {
                let lhs = action.act(&acting.mul(r, r2), m);
                let rhs = action.act(r, &action.act(r2, m));
                report.expect("A2", lhs == rhs, || format!("r#{i}, r'#{j}, m#{k}"));
            }
        }
    }
    report
}

/// Commutativity and associativity on sample elements.
pub fn algebra_law_report<A: CommutativeAlgebra>(
    label: &str,
    alg: &A,
    xs: &[A::Elem],
) -> CheckReport {
    let mut report = CheckReport::new(label);
    for (i, a) in xs.iter().enumerate() {
        for (j, b) in xs.iter().enumerate() {
            report.expect(
                "commutativity",
                alg.mul(a, b) == alg.mul(b, a),
                || format!("#{i}, #{j}"),
            );
            for (k, c) in xs.iter().enumerate() {
                let l = alg.mul(&alg.mul(a, b), c);
                let r = alg.mul(a, &alg.mul(b, c));
                report.expect("associativity", l == r, || format!("#{i}, #{j}, #{k}"));
            }
        }
    }
    report
}

/// A map between generic algebras, checked for additivity and multiplicativity on samples.
pub fn homomorphism_report<S, T, F>(
    label: &str,
    source: &S,
    target: &T,
    map: F,
    xs: &[S::Elem],
) -> CheckReport
where
    S: CommutativeAlgebra,
    T: CommutativeAlgebra,
    F: Fn(&S::Elem) -> T::Elem,
{
    let mut report = CheckReport::new(label);
    for (i, a) in xs.iter().enumerate() {
        for (j, b) in xs.iter().enumerate() {
            let prod = map(&source.mul(a, b));
            let img = target.mul(&map(a), &map(b));
            report.expect("multiplicative", prod == img, || format!("#{i}, #{j}"));
            let sum = map(&source.add(a, b));
            let img = target.add(&map(a), &map(b));
            report.expect("additive", sum == img, || format!("#{i}, #{j}"));
        }
    }
    report
}

/// Runs a fallible closure, turning the error into a panic message.
pub(crate) fn must<T>(r: Result<T>) -> T {
    r.unwrap_or_else(|e| panic!("{e}"))
}
