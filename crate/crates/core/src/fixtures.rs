//! Small 2-crossed modules used throughout the tests and the CLI.
//!
//! * `f2`: one dimensional algebras with zero multiplication, all structure zero.
//! * `f3`: `N →id→ N →0→ N` with multiplication actions and lifting `ee'`.
//! * `free_dom`: `0 → 0 → κ[x]⁺`.
//! * `d3`: `N →id→ N →0→ κ[x]⁺` with `x` acting as multiplication by `n1`.
//! * `fk`: the kernel module of `N × N → N`, `(a, b) ↦ a`, which has a
//!   nonzero bottom boundary and a non-symmetric lifting.
//! * `inclusion_2xm`: `0 → N →id→ N`.
//!
//! Here `N` is the three dimensional algebra with `nᵢnⱼ = nᵢ₊ⱼ` for
//! `i + j ≤ 3` and zero otherwise.

use crate::action::Action;
use crate::algebra::Algebra;
use crate::crossed::{construct_kernel_2xm, PreCrossedModule, TwoCrossedModule};
use crate::maps::{AlgebraMorphism, BilinearMap};
use crate::scalar::{Field, Scalar};
use crate::structure::must;

/// Structure constants of a truncated polynomial algebra `t κ[t] / t^(dim+1)`.
pub fn nilpotent_table(field: Field, dim: usize) -> Vec<Vec<Vec<Scalar>>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut v = vec![field.zero(); dim];
                    // basis index i stands for t^(i+1)
                    if i + j + 1 < dim {
                        v[i + j + 1] = field.one();
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// The algebra `N` with basis `n1, n2, n3`.
pub fn nilpotent(field: Field) -> Algebra {
    must(Algebra::structure_constants_with_basis(
        "N",
        field,
        vec!["n1".into(), "n2".into(), "n3".into()],
        nilpotent_table(field, 3),
    ))
}

pub fn f2(field: Field) -> TwoCrossedModule {
    let l = Algebra::square_zero("L", field, 1);
    let e = Algebra::square_zero("E", field, 1);
    let r = Algebra::square_zero("R", field, 1);
    must(TwoCrossedModule::new(
        "F2",
        AlgebraMorphism::zero(&l, &e),
        AlgebraMorphism::zero(&e, &r),
        must(Action::zero(&r, &e)),
        must(Action::zero(&r, &l)),
        must(BilinearMap::zero(&e, &e, &l)),
    ))
}

pub fn f3(field: Field) -> TwoCrossedModule {
    let n = nilpotent(field);
    let mult = must(Action::multiplication(&n));
    must(TwoCrossedModule::new(
        "F3",
        AlgebraMorphism::identity(&n),
        AlgebraMorphism::zero(&n, &n),
        mult.clone(),
        mult,
        must(BilinearMap::from_fn(&n, &n, &n, |a, b| a * b)),
    ))
}

pub fn free_dom(field: Field) -> TwoCrossedModule {
    let l = Algebra::zero("L", field);
    let e = Algebra::zero("E", field);
    let r = Algebra::free("R", field, &["x"]);
    must(TwoCrossedModule::new(
        "FreeDom",
        AlgebraMorphism::zero(&l, &e),
        AlgebraMorphism::zero(&e, &r),
        must(Action::zero(&r, &e)),
        must(Action::zero(&r, &l)),
        must(BilinearMap::zero(&e, &e, &l)),
    ))
}

pub fn d3(field: Field) -> TwoCrossedModule {
    let n = nilpotent(field);
    let r = Algebra::free("R", field, &["x"]);
    let x_to_n1 = must(AlgebraMorphism::new(&r, &n, vec![n.gen(0)]));
    let act = must(Action::through(&x_to_n1));
    must(TwoCrossedModule::new(
        "D3",
        AlgebraMorphism::identity(&n),
        AlgebraMorphism::zero(&n, &r),
        act.clone(),
        act,
        must(BilinearMap::from_fn(&n, &n, &n, |a, b| a * b)),
    ))
}

/// `N × N → N`, `(a, b) ↦ a`, acting componentwise. Pre-crossed, not crossed.
pub fn product_pre_crossed(field: Field) -> PreCrossedModule {
    let mut table = vec![vec![vec![field.zero(); 6]; 6]; 6];
    let small = nilpotent_table(field, 3);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                table[i][j][k] = small[i][j][k].clone();
                table[i + 3][j + 3][k + 3] = small[i][j][k].clone();
            }
        }
    }
    let names = ["a1", "a2", "a3", "b1", "b2", "b3"].map(String::from).to_vec();
    let e = must(Algebra::structure_constants_with_basis("NxN", field, names, table));
    let n = nilpotent(field);
    let mut images = n.gens();
    images.extend(vec![n.zero_element(); 3]);
    let d = must(AlgebraMorphism::new(&e, &n, images));
    let act = must(Action::from_fn(&n, &e, |r, x| {
        let c = x.coords().unwrap();
        let a = must(n.from_coords(c[..3].to_vec()));
        let b = must(n.from_coords(c[3..].to_vec()));
        let (ra, rb) = (r * &a, r * &b);
        let mut out = ra.coords().unwrap().to_vec();
        out.extend_from_slice(rb.coords().unwrap());
        must(e.from_coords(out))
    }));
    must(PreCrossedModule::new(d, act))
}

pub fn fk(field: Field) -> TwoCrossedModule {
    must(construct_kernel_2xm(&product_pre_crossed(field)))
}

pub fn inclusion_2xm(field: Field) -> TwoCrossedModule {
    let n = nilpotent(field);
    let z = Algebra::zero("L", field);
    must(TwoCrossedModule::new(
        "Incl",
        AlgebraMorphism::zero(&z, &n),
        AlgebraMorphism::identity(&n),
        must(Action::multiplication(&n)),
        must(Action::zero(&n, &z)),
        must(BilinearMap::zero(&n, &n, &z)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_are_valid() {
        for field in [Field::Rational, Field::Prime(3), Field::Prime(5)] {
            for m in [
                f2(field),
                f3(field),
                free_dom(field),
                d3(field),
                fk(field),
                inclusion_2xm(field),
            ] {
                let report = m.check_axioms();
                assert!(report.is_ok(), "{}: {report}", m.name());
            }
        }
    }

    #[test]
    fn product_is_not_crossed() {
        let p = product_pre_crossed(Field::Rational);
        assert!(p.check().is_ok());
        let fk = fk(Field::Rational);
        assert!(!fk.d1_map().images().iter().all(|x| x.is_zero()));
        // {b1 ⊗ a1} = -b2 while {a1 ⊗ b1} = 0
        let (a1, b1) = (fk.e().gen(0), fk.e().gen(3));
        assert!(fk.lift(&a1, &b1).is_zero());
        assert_eq!(fk.lift(&b1, &a1), -fk.l().gen(1));
    }
}
