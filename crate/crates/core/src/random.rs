//! Seeded generators of random test data. Every stream is a ChaCha8 generator
//! keyed by a seed and a label, so results do not depend on the order in
//! which suites run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Monomial};
use crate::dual::Functional;
use crate::error::Result;
use crate::hopf::HopfSchema;
use crate::ring::{Laurent, Rational};

pub struct Sampler {
    rng: ChaCha8Rng,
}

fn fnv1a(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

impl Sampler {
    pub fn new(seed: u64, label: &str) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed ^ fnv1a(label)),
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// `p/q` with `|p| <= 9` and `1 <= q <= 4`.
    pub fn rational(&mut self) -> Rational {
        let p: i64 = self.rng.random_range(-9..=9);
        let q: i64 = self.rng.random_range(1..=4);
        Rational::new(p.into(), q.into())
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }

    /// An infinitesimal character with a random value on every generator up
    /// to `max_degree`.
    pub fn infinitesimal(&mut self, schema: &HopfSchema, max_degree: u32) -> Result<Functional<Rational>> {
        let gens = schema.generators_up_to(max_degree)?;
        Ok(Functional::infinitesimal(
            gens.into_iter().map(|g| (g, self.rational())),
        ))
    }

    pub fn character(&mut self, schema: &HopfSchema, max_degree: u32) -> Result<Functional<Rational>> {
        let gens = schema.generators_up_to(max_degree)?;
        Ok(Functional::character(gens.into_iter().map(|g| (g, self.rational()))))
    }

    /// A table with random values on the basis up to `max_degree`.
    pub fn table(&mut self, schema: &HopfSchema, max_degree: u32) -> Result<Functional<Rational>> {
        let basis = schema.basis_up_to(max_degree)?;
        Ok(Functional::table(basis.into_iter().map(|m| (m, self.rational()))))
    }

    /// A Laurent polynomial with pole order at most `max_pole` and terms up
    /// to `eps^top`, exact or truncated at `truncation`.
    pub fn laurent(&mut self, max_pole: u32, top: i32, truncation: Option<i32>) -> Laurent<Rational> {
        let pole = self.rng.random_range(0..=max_pole) as i32;
        let coeffs: Vec<(i32, Rational)> = (-pole..=top).map(|e| (e, self.rational())).collect();
        match truncation {
            Some(n) => Laurent::truncated(coeffs, n),
            None => Laurent::exact(coeffs),
        }
    }

    /// A character with Laurent values of pole order at most `max_pole` on
    /// every generator up to `max_degree`.
    pub fn laurent_character(
        &mut self,
        schema: &HopfSchema,
        max_degree: u32,
        max_pole: u32,
        truncation: Option<i32>,
    ) -> Result<Functional<Laurent<Rational>>> {
        let gens = schema.generators_up_to(max_degree)?;
        let top = truncation.unwrap_or(2).min(2);
        Ok(Functional::character(
            gens.into_iter().map(|g| (g, self.laurent(max_pole, top, truncation))),
        ))
    }

    /// A random combination of up to `terms` basis monomials of degree at
    /// most `max_degree`.
    pub fn element(&mut self, schema: &HopfSchema, max_degree: u32, terms: usize) -> Result<Element<Rational>> {
        let basis: Vec<Monomial> = schema.basis_up_to(max_degree)?;
        let mut h = Element::zero();
        for _ in 0..terms {
            let m = basis[self.below(basis.len())].clone();
            h.add_term(m, self.rational());
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_labelled() {
        let s = HopfSchema::ladder();
        let a = Sampler::new(7, "x").character(&s, 4).unwrap();
        let b = Sampler::new(7, "x").character(&s, 4).unwrap();
        let c = Sampler::new(7, "y").character(&s, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn laurent_shape() {
        let mut r = Sampler::new(1, "l");
        for _ in 0..20 {
            let x = r.laurent(2, 1, Some(4));
            assert!(x.pole_order() <= 2);
            assert_eq!(x.truncation(), Some(4));
        }
    }
}
