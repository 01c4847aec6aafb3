//! Actions of one commutative algebra on another.
//!
//! A free acting algebra is described by one multiplier per generator;
//! a monomial then acts as the composite of the multipliers of its
//! factors. A finite acting algebra is described by a bilinear table.

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::maps::{AlgebraMorphism, BilinearMap, LinearMap};
use crate::report::CheckReport;
use crate::structure::{must, ActsOn};

#[derive(Clone, Debug, PartialEq)]
pub enum ActionData {
    /// `rho[i](m) = b_i ▶ m` for the generators `b_i` of a free algebra.
    Multipliers(Vec<LinearMap>),
    /// `table(r, m) = r ▶ m` for a finite acting algebra.
    Table(BilinearMap),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Action {
    acting: Algebra,
    module: Algebra,
    data: ActionData,
}

impl Action {
    /// Action of a free algebra by the given multipliers (endomorphisms of `module`).
    pub fn multipliers(acting: &Algebra, module: &Algebra, rho: Vec<LinearMap>) -> Result<Action> {
        if !acting.is_free() {
            return Err(Error::DomainNotFree(acting.name().to_string()));
        }
        if rho.len() != acting.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} multipliers for {} generators",
                rho.len(),
                acting.rank()
            )));
        }
        for m in &rho {
            if m.source() != module || m.target() != module {
                return Err(Error::AlgebraMismatch {
                    left: format!("{} -> {}", m.source(), m.target()),
                    right: module.name().to_string(),
                });
            }
        }
        Ok(Action {
            acting: acting.clone(),
            module: module.clone(),
            data: ActionData::Multipliers(rho),
        })
    }

    /// Action of a finite algebra given by its table.
    pub fn table(table: BilinearMap) -> Result<Action> {
        if table.right() != table.target() {
            return Err(Error::AlgebraMismatch {
                left: table.right().name().to_string(),
                right: table.target().name().to_string(),
            });
        }
        Ok(Action {
            acting: table.left().clone(),
            module: table.right().clone(),
            data: ActionData::Table(table),
        })
    }

    /// Builds an action from a rule evaluated on generators or basis vectors.
    pub fn from_fn(
        acting: &Algebra,
        module: &Algebra,
        f: impl Fn(&Element, &Element) -> Element,
    ) -> Result<Action> {
        if acting.is_free() {
            let rho = acting
                .gens()
                .iter()
                .map(|b| LinearMap::from_fn(module, module, |m| f(b, m)))
                .collect::<Result<Vec<_>>>()?;
            Action::multipliers(acting, module, rho)
        } else {
            Action::table(BilinearMap::from_fn(acting, module, module, f)?)
        }
    }

    pub fn zero(acting: &Algebra, module: &Algebra) -> Result<Action> {
        Action::from_fn(acting, module, |_, _| Element::zero(module))
    }

    /// A finite algebra acting on itself by multiplication.
    pub fn multiplication(alg: &Algebra) -> Result<Action> {
        Action::from_fn(alg, alg, |a, b| a * b)
    }

    /// `r ▶ m = φ(r) m` for an algebra map `φ` into the module.
    pub fn through(phi: &AlgebraMorphism) -> Result<Action> {
        let module = phi.target();
        Action::from_fn(phi.source(), module, |r, m| must(phi.apply(r)) * m.clone())
    }

    /// `r ▶ m = φ(r) ▶ m`: the action of `φ`'s target pulled back along `φ`.
    pub fn pullback(&self, phi: &AlgebraMorphism) -> Result<Action> {
        if phi.target() != &self.acting {
            return Err(Error::AlgebraMismatch {
                left: phi.target().name().to_string(),
                right: self.acting.name().to_string(),
            });
        }
        Action::from_fn(phi.source(), &self.module, |r, m| {
            must(self.apply(&must(phi.apply(r)), m))
        })
    }

    pub fn acting(&self) -> &Algebra {
        &self.acting
    }

    pub fn module(&self) -> &Algebra {
        &self.module
    }

    pub fn data(&self) -> &ActionData {
        &self.data
    }

    pub fn apply(&self, r: &Element, m: &Element) -> Result<Element> {
        r.belongs_to(&self.acting)?;
        m.belongs_to(&self.module)?;
        match &self.data {
            ActionData::Table(t) => t.apply(r, m),
            ActionData::Multipliers(rho) => {
                let mut acc = Element::zero(&self.module);
                if m.is_zero() {
                    return Ok(acc);
                }
                for (mono, c) in r.terms() {
                    let mut v = m.clone();
                    for (i, &e) in mono.exponents().iter().enumerate() {
                        for _ in 0..e {
                            v = rho[i].apply(&v)?;
                        }
                    }
                    acc = &acc + &v.scale(c);
                }
                Ok(acc)
            }
        }
    }

    /// A1 on all (generator or basis, basis, basis) triples. For a free acting
    /// algebra the multipliers must commute pairwise; otherwise A2 is checked
    /// on all basis triples.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new("action");
        let rs = self.acting.gens();
        let ms = self.module.gens();
        let rn = self.acting.basis_names();
        let mn = self.module.basis_names();
        for (i, r) in rs.iter().enumerate() {
            for (j, m) in ms.iter().enumerate() {
                let rm = must(self.apply(r, m));
                for (k, m2) in ms.iter().enumerate().skip(j) {
                    let rm2 = must(self.apply(r, m2));
                    let lhs = must(self.apply(r, &(m * m2)));
                    let w = || format!("({}, {}, {})", rn[i], mn[j], mn[k]);
                    report.expect_eq("A1", &lhs, &(&rm * m2), w);
                    report.expect_eq("A1", &lhs, &(m * &rm2), w);
                }
            }
        }
        match &self.data {
            ActionData::Multipliers(rho) => {
                for i in 0..rho.len() {
                    for j in i + 1..rho.len() {
                        for (k, m) in ms.iter().enumerate() {
                            let a = must(rho[i].apply(&must(rho[j].apply(m))));
                            let b = must(rho[j].apply(&must(rho[i].apply(m))));
                            report.expect_eq("A2", &a, &b, || {
                                format!("({}, {}, {})", rn[i], rn[j], mn[k])
                            });
                        }
                    }
                }
            }
            ActionData::Table(_) => {
                for (i, r) in rs.iter().enumerate() {
                    for (j, r2) in rs.iter().enumerate() {
                        for (k, m) in ms.iter().enumerate() {
                            let lhs = must(self.apply(&(r * r2), m));
                            let rhs = must(self.apply(r, &must(self.apply(r2, m))));
                            report.expect_eq("A2", &lhs, &rhs, || {
                                format!("({}, {}, {})", rn[i], rn[j], mn[k])
                            });
                        }
                    }
                }
            }
        }
        report
    }

    /// Like [`Action::check`] but turns violations into an error.
    pub fn validated(self) -> Result<Action> {
        let report = self.check();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::InvalidAction(report))
        }
    }
}

impl ActsOn<Algebra, Algebra> for Action {
    fn act(&self, r: &Element, m: &Element) -> Element {
        must(self.apply(r, m))
    }
}
