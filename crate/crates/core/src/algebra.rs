//! Commutative algebras over an exact field and their elements.
//!
//! Two kinds are supported: the free non-unital polynomial algebra on a
//! finite set of generators (no constant terms), and finite dimensional
//! algebras given by a table of structure constants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::scalar::{Field, Scalar};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Debug)]
pub enum AlgebraKind {
    /// Polynomials without constant term on the named generators.
    Free { basis: Vec<String> },
    /// `table[i][j]` holds the coordinates of `b_i * b_j`.
    StructureConstants {
        basis: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
    },
}

#[derive(Debug)]
struct AlgebraData {
    id: u64,
    name: String,
    field: Field,
    kind: AlgebraKind,
}

/// Shared handle to an algebra. Cloning is cheap; equality is identity.
#[derive(Clone, Debug)]
pub struct Algebra(Arc<AlgebraData>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn free(name: impl Into<String>, field: Field, basis: &[&str]) -> Algebra {
        Self::free_named(name, field, basis.iter().map(|s| s.to_string()).collect())
    }

    pub fn free_named(name: impl Into<String>, field: Field, basis: Vec<String>) -> Algebra {
        Algebra(Arc::new(AlgebraData {
            id: fresh_id(),
            name: name.into(),
            field,
            kind: AlgebraKind::Free { basis },
        }))
    }

    /// Builds a finite dimensional algebra, rejecting tables that are not
    /// commutative and associative.
    pub fn structure_constants(
        name: impl Into<String>,
        field: Field,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Algebra> {
        let alg = Self::structure_constants_unchecked(name, field, table)?;
        let report = alg.law_report();
        if report.is_ok() {
            Ok(alg)
        } else {
            Err(Error::InvalidStructureConstants(report))
        }
    }

    /// Same as [`Algebra::structure_constants`] but only checks the shape of
    /// the table. Use [`Algebra::law_report`] to audit it.
    pub fn structure_constants_unchecked(
        name: impl Into<String>,
        field: Field,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Algebra> {
        let name = name.into();
        let prefix = name.to_lowercase();
        let basis = (1..=table.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::structure_constants_with_basis(name, field, basis, table)
    }

    pub fn structure_constants_with_basis(
        name: impl Into<String>,
        field: Field,
        basis: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Algebra> {
        let n = table.len();
        if basis.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} basis names for a {n}-dimensional table",
                basis.len()
            )));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|v| v.len() != n) {
                return Err(Error::DimensionMismatch(format!(
                    "structure constant table must be {n}x{n}x{n}"
                )));
            }
            for c in row.iter().flatten() {
                if c.field() != field {
                    return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
                }
            }
        }
        Ok(Algebra(Arc::new(AlgebraData {
            id: fresh_id(),
            name: name.into(),
            field,
            kind: AlgebraKind::StructureConstants { basis, table },
        })))
    }

    /// The zero algebra.
    pub fn zero(name: impl Into<String>, field: Field) -> Algebra {
        Self::structure_constants_unchecked(name, field, Vec::new()).expect("empty table")
    }

    /// `dim`-dimensional algebra with identically zero multiplication.
    pub fn square_zero(name: impl Into<String>, field: Field, dim: usize) -> Algebra {
        let table = vec![vec![vec![field.zero(); dim]; dim]; dim];
        Self::structure_constants_unchecked(name, field, table).expect("square table")
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.0.kind
    }

    pub fn is_free(&self) -> bool {
        matches!(self.0.kind, AlgebraKind::Free { .. })
    }

    /// Linear dimension, `None` for free algebras.
    pub fn dim(&self) -> Option<usize> {
        match &self.0.kind {
            AlgebraKind::Free { .. } => None,
            AlgebraKind::StructureConstants { table, .. } => Some(table.len()),
        }
    }

    /// Generator names of a free algebra, or basis names of a finite one.
    pub fn basis_names(&self) -> &[String] {
        match &self.0.kind {
            AlgebraKind::Free { basis } | AlgebraKind::StructureConstants { basis, .. } => basis,
        }
    }

    /// Number of algebra generators (free) or basis vectors (finite).
    pub fn rank(&self) -> usize {
        self.basis_names().len()
    }

    pub fn structure_table(&self) -> Option<&Vec<Vec<Vec<Scalar>>>> {
        match &self.0.kind {
            AlgebraKind::StructureConstants { table, .. } => Some(table),
            AlgebraKind::Free { .. } => None,
        }
    }

    /// The `i`-th generator (free) or `i`-th basis vector (finite).
    pub fn gen(&self, i: usize) -> Element {
        let n = self.rank();
        assert!(i < n, "index {i} out of range for {}", self.name());
        let one = self.field().one();
        match &self.0.kind {
            AlgebraKind::Free { .. } => {
                let mut map = BTreeMap::new();
                map.insert(Monomial::generator(n, i), one);
                Element::new(self.clone(), Repr::Sparse(map))
            }
            AlgebraKind::StructureConstants { .. } => {
                let mut v = vec![self.field().zero(); n];
                v[i] = one;
                Element::new(self.clone(), Repr::Dense(v))
            }
        }
    }

    /// All generators or basis vectors, in order.
    pub fn gens(&self) -> Vec<Element> {
        (0..self.rank()).map(|i| self.gen(i)).collect()
    }

    pub fn zero_element(&self) -> Element {
        Element::zero(self)
    }

    /// Element of a finite algebra from integer coordinates.
    pub fn element(&self, coords: &[i64]) -> Element {
        let f = self.field();
        self.from_coords(coords.iter().map(|&c| f.from_i64(c)).collect())
            .expect("coordinate vector of the right length")
    }

    pub fn from_coords(&self, coords: Vec<Scalar>) -> Result<Element> {
        match self.dim() {
            None => Err(Error::NotFiniteDimensional(self.name().to_string())),
            Some(n) if n != coords.len() => Err(Error::DimensionMismatch(format!(
                "{} coordinates for {}-dimensional {}",
                coords.len(),
                n,
                self.name()
            ))),
            Some(_) => {
                if let Some(c) = coords.iter().find(|c| c.field() != self.field()) {
                    return Err(Error::FieldMismatch(c.field().to_string(), self.field().to_string()));
                }
                Ok(Element::new(self.clone(), Repr::Dense(coords)))
            }
        }
    }

    /// Polynomial from `(exponents, coefficient)` terms. Constant terms are rejected.
    pub fn from_terms<I>(&self, terms: I) -> Result<Element>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let n = match &self.0.kind {
            AlgebraKind::Free { basis } => basis.len(),
            AlgebraKind::StructureConstants { .. } => {
                return Err(Error::DomainNotFree(self.name().to_string()))
            }
        };
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "monomial with {} exponents in {} generators",
                    m.0.len(),
                    n
                )));
            }
            if m.degree() == 0 {
                return Err(Error::DimensionMismatch(
                    "free algebras are non-unital: constant term".into(),
                ));
            }
            if c.field() != self.field() {
                return Err(Error::FieldMismatch(c.field().to_string(), self.field().to_string()));
            }
            add_term(&mut map, m, c);
        }
        Ok(Element::new(self.clone(), Repr::Sparse(map)))
    }

    /// `coeff * x^exps` in a free algebra.
    pub fn monomial(&self, exps: &[u32], coeff: i64) -> Element {
        self.from_terms([(Monomial::new(exps.to_vec()), self.field().from_i64(coeff))])
            .expect("well formed monomial")
    }

    /// Commutativity and associativity on all basis pairs and triples.
    pub fn law_report(&self) -> CheckReport {
        let mut report = CheckReport::new(format!("algebra {}", self.name()));
        if self.is_free() {
            return report;
        }
        let basis = self.gens();
        let names = self.basis_names();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                report.expect_eq("commutativity", &(a * b), &(b * a), || {
                    format!("({}, {})", names[i], names[j])
                });
                for (k, c) in basis.iter().enumerate() {
                    report.expect_eq("associativity", &(&(a * b) * c), &(a * &(b * c)), || {
                        format!("({}, {}, {})", names[i], names[j], names[k])
                    });
                }
            }
        }
        report
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector of a monomial in a free algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn generator(n: usize, i: usize) -> Monomial {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Index of the generator if this monomial is a single generator.
    pub fn as_generator(&self) -> Option<usize> {
        if self.degree() != 1 {
            return None;
        }
        self.0.iter().position(|&e| e == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Comma separated exponents, e.g. `"2,0,1"`.
    pub fn exponent_string(&self) -> String {
        self.0
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_exponent_string(s: &str) -> Result<Monomial> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid monomial exponent string {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        parts.join("*")
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = &*o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Sparse(BTreeMap<Monomial, Scalar>),
    Dense(Vec<Scalar>),
}

/// An element of an [`Algebra`]. Polynomials never store zero coefficients.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Algebra,
    repr: Repr,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.repr == other.repr
    }
}

impl Eq for Element {}

impl Element {
    fn new(algebra: Algebra, repr: Repr) -> Element {
        Element { algebra, repr }
    }

    pub fn zero(algebra: &Algebra) -> Element {
        let repr = match algebra.dim() {
            None => Repr::Sparse(BTreeMap::new()),
            Some(n) => Repr::Dense(vec![algebra.field().zero(); n]),
        };
        Element::new(algebra.clone(), repr)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Sparse(m) => m.is_empty(),
            Repr::Dense(v) => v.iter().all(Scalar::is_zero),
        }
    }

    /// Coordinates in a finite algebra.
    pub fn coords(&self) -> Option<&[Scalar]> {
        match &self.repr {
            Repr::Dense(v) => Some(v),
            Repr::Sparse(_) => None,
        }
    }

    /// Nonzero terms of a polynomial (empty for finite algebras).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        let map = match &self.repr {
            Repr::Sparse(m) => Some(m),
            Repr::Dense(_) => None,
        };
        map.into_iter().flat_map(|m| m.iter())
    }

    /// Largest total degree of a term, 0 for zero or finite algebra elements.
    pub fn degree(&self) -> u32 {
        self.terms().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra.name().to_string(),
                right: other.algebra.name().to_string(),
            })
        }
    }

    pub fn belongs_to(&self, algebra: &Algebra) -> Result<()> {
        if &self.algebra == algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra.name().to_string(),
                right: algebra.name().to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Sparse(a), Repr::Sparse(b)) => {
                let mut out = a.clone();
                for (m, c) in b {
                    add_term(&mut out, m.clone(), c.clone());
                }
                Repr::Sparse(out)
            }
            (Repr::Dense(a), Repr::Dense(b)) => {
                Repr::Dense(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!("same algebra, same representation"),
        };
        Ok(Element::new(self.algebra.clone(), repr))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Sparse(a), Repr::Sparse(b)) => {
                let mut out = BTreeMap::new();
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        add_term(&mut out, ma.mul(mb), ca * cb);
                    }
                }
                Repr::Sparse(out)
            }
            (Repr::Dense(a), Repr::Dense(b)) => {
                let table = self.algebra.structure_table().expect("finite algebra");
                let n = a.len();
                let mut out = vec![self.algebra.field().zero(); n];
                for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let ab = ai * bj;
                        for (k, c) in table[i][j].iter().enumerate() {
                            if !c.is_zero() {
                                out[k] = &out[k] + &(&ab * c);
                            }
                        }
                    }
                }
                Repr::Dense(out)
            }
            _ => unreachable!("same algebra, same representation"),
        };
        Ok(Element::new(self.algebra.clone(), repr))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let repr = match &self.repr {
            Repr::Sparse(a) => {
                if c.is_zero() {
                    Repr::Sparse(BTreeMap::new())
                } else {
                    Repr::Sparse(a.iter().map(|(m, x)| (m.clone(), c * x)).collect())
                }
            }
            Repr::Dense(a) => Repr::Dense(a.iter().map(|x| c * x).collect()),
        };
        Element::new(self.algebra.clone(), repr)
    }

    pub fn scale_int(&self, n: i64) -> Element {
        self.scale(&self.algebra.field().from_i64(n))
    }

    pub fn neg(&self) -> Element {
        self.scale(&-self.algebra.field().one())
    }

    /// `self^n` for `n >= 1`.
    pub fn pow(&self, n: u32) -> Element {
        assert!(n >= 1, "non-unital algebras have no zeroth power");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.algebra.basis_names();
        let terms: Vec<(String, &Scalar)> = match &self.repr {
            Repr::Sparse(m) => m.iter().map(|(m, c)| (m.display_with(names), c)).collect(),
            Repr::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (names[i].clone(), c))
                .collect(),
        };
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (name, c)) in terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{c}*{name}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

impl std::ops::Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn polynomial_square() {
        let r = Algebra::free("R", Field::Rational, &["x"]);
        let x = r.gen(0);
        assert_eq!(&x * &x, r.monomial(&[2], 1));
        assert_eq!((&x * &x).to_string(), "x^2");
    }

    #[test]
    fn nilpotent_table() {
        let n = fixtures::nilpotent(Field::Rational);
        let n1 = n.gen(0);
        assert_eq!(&n1 * &n1, n.gen(1));
        assert_eq!(&n1 * &n.gen(1), n.gen(2));
        assert!((&n1 * &n.gen(2)).is_zero());
    }

    #[test]
    fn additive_identity() {
        let r = Algebra::free("R", Field::Rational, &["x", "y"]);
        let a = &r.monomial(&[1, 2], 3) + &r.gen(0);
        assert_eq!(&a + &r.zero_element(), a);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).terms().count(), 0);
    }

    #[test]
    fn mixing_algebras_is_an_error() {
        let a = Algebra::free("A", Field::Rational, &["x"]);
        let b = Algebra::free("B", Field::Rational, &["x"]);
        assert!(matches!(
            a.gen(0).try_mul(&b.gen(0)),
            Err(Error::AlgebraMismatch { .. })
        ));
    }

    #[test]
    fn constant_terms_rejected() {
        let r = Algebra::free("R", Field::Rational, &["x"]);
        assert!(r.from_terms([(Monomial::new(vec![0]), Field::Rational.one())]).is_err());
    }

    #[test]
    fn non_associative_table_rejected() {
        let q = Field::Rational;
        // a*a = b, b*b = a, a*b = 0: (a*a)*b = a but a*(a*b) = 0
        let z = q.zero();
        let o = q.one();
        let table = vec![
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
            vec![vec![z.clone(), z.clone()], vec![o.clone(), z.clone()]],
        ];
        let err = Algebra::structure_constants("B", q, table).unwrap_err();
        assert!(err.report().unwrap().failures("associativity") > 0);
    }

    #[test]
    fn exponent_strings() {
        let m = Monomial::parse_exponent_string("2, 0,1").unwrap();
        assert_eq!(m.exponent_string(), "2,0,1");
        assert_eq!(m.degree(), 3);
        assert!(Monomial::parse_exponent_string("a").is_err());
    }
}
