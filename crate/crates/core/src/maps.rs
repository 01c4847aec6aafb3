//! Linear maps, bilinear maps and algebra morphisms given by tables.

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::structure::eval_free;

fn require_finite(alg: &Algebra) -> Result<usize> {
    alg.dim()
        .ok_or_else(|| Error::NotFiniteDimensional(alg.name().to_string()))
}

fn require_in(elems: &[Element], target: &Algebra) -> Result<()> {
    elems.iter().try_for_each(|e| e.belongs_to(target))
}

/// Linear map out of a finite dimensional algebra, stored by the images of
/// the basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    source: Algebra,
    target: Algebra,
    columns: Vec<Element>,
}

impl LinearMap {
    pub fn new(source: &Algebra, target: &Algebra, columns: Vec<Element>) -> Result<LinearMap> {
        let n = require_finite(source)?;
        if columns.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} images for the {n} basis vectors of {}",
                columns.len(),
                source.name()
            )));
        }
        require_in(&columns, target)?;
        Ok(LinearMap {
            source: source.clone(),
            target: target.clone(),
            columns,
        })
    }

    pub fn zero(source: &Algebra, target: &Algebra) -> Result<LinearMap> {
        let n = require_finite(source)?;
        Ok(LinearMap {
            source: source.clone(),
            target: target.clone(),
            columns: vec![Element::zero(target); n],
        })
    }

    /// Builds the map from a function evaluated on basis vectors.
    pub fn from_fn(
        source: &Algebra,
        target: &Algebra,
        f: impl Fn(&Element) -> Element,
    ) -> Result<LinearMap> {
        require_finite(source)?;
        let columns = source.gens().iter().map(f).collect();
        LinearMap::new(source, target, columns)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn columns(&self) -> &[Element] {
        &self.columns
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.belongs_to(&self.source)?;
        let mut acc = Element::zero(&self.target);
        for (c, col) in x.coords().expect("finite source").iter().zip(&self.columns) {
            if !c.is_zero() {
                acc = &acc + &col.scale(c);
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.same_shape(other)?;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a + b)
            .collect();
        Ok(LinearMap {
            columns,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> LinearMap {
        LinearMap {
            columns: self.columns.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.add(&other.neg())
    }

    fn same_shape(&self, other: &LinearMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::AlgebraMismatch {
                left: format!("{} -> {}", self.source, self.target),
                right: format!("{} -> {}", other.source, other.target),
            });
        }
        Ok(())
    }
}

/// Algebra homomorphism. For a free source the images are those of the
/// generators; for a finite source they are the images of the basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    images: Vec<Element>,
}

impl AlgebraMorphism {
    /// Checked constructor: finite sources must be multiplicative on all basis pairs.
    pub fn new(source: &Algebra, target: &Algebra, images: Vec<Element>) -> Result<Self> {
        let m = Self::new_unchecked(source, target, images)?;
        let report = m.multiplicativity_report();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(Error::NotMultiplicative(report))
        }
    }

    /// Checks only shapes and membership; see [`AlgebraMorphism::multiplicativity_report`].
    pub fn new_unchecked(source: &Algebra, target: &Algebra, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators of {}",
                images.len(),
                source.rank(),
                source.name()
            )));
        }
        require_in(&images, target)?;
        Ok(AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(alg: &Algebra) -> AlgebraMorphism {
        AlgebraMorphism {
            source: alg.clone(),
            target: alg.clone(),
            images: alg.gens(),
        }
    }

    pub fn zero(source: &Algebra, target: &Algebra) -> AlgebraMorphism {
        AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            images: vec![Element::zero(target); source.rank()],
        }
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.belongs_to(&self.source)?;
        if self.source.is_free() {
            return Ok(eval_free(&self.target, &self.images, x));
        }
        let mut acc = Element::zero(&self.target);
        for (c, img) in x.coords().expect("finite source").iter().zip(&self.images) {
            if !c.is_zero() {
                acc = &acc + &img.scale(c);
            }
        }
        Ok(acc)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if self.target != next.source {
            return Err(Error::AlgebraMismatch {
                left: self.target.name().to_string(),
                right: next.source.name().to_string(),
            });
        }
        let images = self
            .images
            .iter()
            .map(|x| next.apply(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            images,
        })
    }

    /// The same images viewed as a linear map (finite sources only).
    pub fn as_linear(&self) -> Result<LinearMap> {
        LinearMap::new(&self.source, &self.target, self.images.clone())
    }

    /// `φ(b_i b_j) = φ(b_i)φ(b_j)` on all basis pairs of a finite source.
    /// Free sources are multiplicative by construction.
    pub fn multiplicativity_report(&self) -> CheckReport {
        let mut report = CheckReport::new("morphism");
        if self.source.is_free() {
            return report;
        }
        let basis = self.source.gens();
        let names = self.source.basis_names();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate().skip(i) {
                let lhs = self.apply(&(a * b)).expect("own source");
                let rhs = &self.images[i] * &self.images[j];
                report.expect_eq("multiplicative", &lhs, &rhs, || {
                    format!("({}, {})", names[i], names[j])
                });
            }
        }
        report
    }
}

/// Bilinear map `left × right → target` between finite dimensional algebras.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearMap {
    left: Algebra,
    right: Algebra,
    target: Algebra,
    table: Vec<Vec<Element>>,
}

impl BilinearMap {
    pub fn new(
        left: &Algebra,
        right: &Algebra,
        target: &Algebra,
        table: Vec<Vec<Element>>,
    ) -> Result<BilinearMap> {
        let n = require_finite(left)?;
        let m = require_finite(right)?;
        if table.len() != n || table.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "bilinear table must be {n}x{m}"
            )));
        }
        for row in &table {
            require_in(row, target)?;
        }
        Ok(BilinearMap {
            left: left.clone(),
            right: right.clone(),
            target: target.clone(),
            table,
        })
    }

    pub fn zero(left: &Algebra, right: &Algebra, target: &Algebra) -> Result<BilinearMap> {
        let n = require_finite(left)?;
        let m = require_finite(right)?;
        Ok(BilinearMap {
            left: left.clone(),
            right: right.clone(),
            target: target.clone(),
            table: vec![vec![Element::zero(target); m]; n],
        })
    }

    pub fn from_fn(
        left: &Algebra,
        right: &Algebra,
        target: &Algebra,
        f: impl Fn(&Element, &Element) -> Element,
    ) -> Result<BilinearMap> {
        require_finite(left)?;
        require_finite(right)?;
        let rb = right.gens();
        let table = left
            .gens()
            .iter()
            .map(|a| rb.iter().map(|b| f(a, b)).collect())
            .collect();
        BilinearMap::new(left, right, target, table)
    }

    pub fn left(&self) -> &Algebra {
        &self.left
    }

    pub fn right(&self) -> &Algebra {
        &self.right
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn table(&self) -> &[Vec<Element>] {
        &self.table
    }

    pub fn apply(&self, a: &Element, b: &Element) -> Result<Element> {
        a.belongs_to(&self.left)?;
        b.belongs_to(&self.right)?;
        let mut acc = Element::zero(&self.target);
        let ac = a.coords().expect("finite");
        let bc = b.coords().expect("finite");
        for (i, x) in ac.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, y) in bc.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                acc = &acc + &self.table[i][j].scale(&(x * y));
            }
        }
        Ok(acc)
    }

    pub fn neg(&self) -> BilinearMap {
        BilinearMap {
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|e| -e).collect())
                .collect(),
            ..self.clone()
        }
    }
}
