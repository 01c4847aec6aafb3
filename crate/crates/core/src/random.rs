//! Seeded sampling of scalars, monomials and elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element, Monomial};
use crate::scalar::{Field, Scalar};

/// Deterministic sampler. The same seed always yields the same sequence.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent sampler derived from this one, for sub-tasks.
    pub fn fork(&mut self) -> Sampler {
        Sampler::new(self.rng.random())
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// Uniform residue over `F_p`; small numerators and denominators over `Q`.
    pub fn scalar(&mut self, field: Field) -> Scalar {
        match field {
            Field::Prime(p) => field.from_i64(self.rng.random_range(0..p as i64)),
            Field::Rational => {
                let num = self.rng.random_range(-4..=4i64);
                if self.rng.random_bool(0.25) {
                    let den = self.rng.random_range(2..=3i64);
                    let d = field.from_i64(den).inv().expect("nonzero");
                    &field.from_i64(num) * &d
                } else {
                    field.from_i64(num)
                }
            }
        }
    }

    pub fn nonzero_scalar(&mut self, field: Field) -> Scalar {
        loop {
            let c = self.scalar(field);
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Random exponent vector of total degree in `1..=max_degree`.
    pub fn monomial_exponents(&mut self, alg: &Algebra, max_degree: u32) -> Monomial {
        let n = alg.rank();
        assert!(n > 0 && max_degree > 0);
        let degree = self.rng.random_range(1..=max_degree);
        let mut exps = vec![0u32; n];
        for _ in 0..degree {
            exps[self.below(n)] += 1;
        }
        Monomial::new(exps)
    }

    /// Random monomial with coefficient one in a free algebra.
    pub fn monomial(&mut self, alg: &Algebra, max_degree: u32) -> Element {
        let m = self.monomial_exponents(alg, max_degree);
        alg.from_terms([(m, alg.field().one())])
            .expect("free algebra")
    }

    /// Sparse polynomial with up to `max_terms` terms of degree at most `max_degree`.
    pub fn polynomial(&mut self, alg: &Algebra, max_degree: u32, max_terms: usize) -> Element {
        let terms = self.rng.random_range(1..=max_terms);
        let f = alg.field();
        let list: Vec<_> = (0..terms)
            .map(|_| (self.monomial_exponents(alg, max_degree), self.scalar(f)))
            .collect();
        alg.from_terms(list).expect("free algebra")
    }

    /// Uniform element of a finite algebra, or a sparse polynomial of a free one.
    pub fn element(&mut self, alg: &Algebra, max_degree: u32) -> Element {
        match alg.dim() {
            Some(n) => {
                let f = alg.field();
                let coords = (0..n).map(|_| self.scalar(f)).collect();
                alg.from_coords(coords).expect("right length")
            }
            None if alg.rank() == 0 => alg.zero_element(),
            None => self.polynomial(alg, max_degree, 3),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let r = Algebra::free("R", Field::Prime(3), &["x", "y"]);
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..20 {
            assert_eq!(a.element(&r, 4), b.element(&r, 4));
        }
    }

    #[test]
    fn monomials_respect_degree_bound() {
        let r = Algebra::free("R", Field::Rational, &["x", "y", "z"]);
        let mut s = Sampler::new(1);
        for _ in 0..100 {
            let m = s.monomial(&r, 4);
            assert!((1..=4).contains(&m.degree()));
            assert_eq!(m.terms().count(), 1);
        }
    }
}
