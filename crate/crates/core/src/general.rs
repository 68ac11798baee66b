//! Seeded stand-ins for forms with generic coefficients.
//!
//! Coefficients come from SplitMix64 (Steele, Lea and Flood) so that the
//! same `(d, N, p, seed)` yields the same polynomial on every platform:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output z ^ (z >> 31)
//! ```
//!
//! Each coefficient draws outputs until one falls below the largest multiple
//! of `p − 1` representable in 64 bits, then maps it to `1 + z mod (p − 1)`.
//! Monomials `x_{i1}···x_{id}` with `i1 ≤ … ≤ id` are visited in
//! lexicographic order of the index tuple.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field;
use crate::poly::{Monomial, PolyMod, VarTable};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[1, p − 1]`.
    pub fn nonzero_residue(&mut self, p: u32) -> u32 {
        let span = p as u64 - 1;
        let zone = u64::MAX - (u64::MAX % span + 1) % span;
        loop {
            let z = self.next_u64();
            if z <= zone {
                return 1 + (z % span) as u32;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralTypePolynomial {
    pub d: usize,
    pub n: usize,
    pub p: u32,
    pub seed: u64,
    /// Nondecreasing 1-based index tuples with their coefficients.
    pub coefficients: Vec<(Vec<usize>, u32)>,
}

fn index_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![1usize; d];
    loop {
        out.push(cur.clone());
        // Rightmost position that can still grow.
        let Some(pos) = (0..d).rev().find(|&k| cur[k] < n) else {
            return out;
        };
        let v = cur[pos] + 1;
        for slot in &mut cur[pos..] {
            *slot = v;
        }
    }
}

pub fn gen_general_type(d: usize, n: usize, p: u32, seed: u64) -> Result<GeneralTypePolynomial> {
    if d == 0 || n == 0 {
        return Err(Error::Precondition("d and N must be positive".into()));
    }
    field::check_prime(p as u64)?;
    let mut rng = SplitMix64::new(seed);
    let coefficients = index_tuples(d, n)
        .into_iter()
        .map(|t| {
            let c = rng.nonzero_residue(p);
            (t, c)
        })
        .collect();
    Ok(GeneralTypePolynomial { d, n, p, seed, coefficients })
}

impl GeneralTypePolynomial {
    pub fn to_poly(&self) -> Result<PolyMod> {
        let table = VarTable::base(self.n)?;
        let terms = self.coefficients.iter().map(|(t, c)| {
            let mut m = Monomial::one(self.n);
            for &i in t {
                m.set(i - 1, (m.get(i - 1) + 1) as u8);
            }
            (m, *c)
        });
        Ok(PolyMod::from_terms(self.p, table, terms))
    }

    pub fn coefficient(&self, tuple: &[usize]) -> Option<u32> {
        self.coefficients.iter().find(|(t, _)| t == tuple).map(|(_, c)| *c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // First outputs for seed 1234567 from the reference implementation.
        let mut r = SplitMix64::new(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
    }

    #[test]
    fn quadric_in_four_variables() {
        let g = gen_general_type(2, 4, 7, 1).unwrap();
        assert_eq!(g.coefficients.len(), 10);
        assert!(g.coefficients.iter().all(|(_, c)| (1..=6).contains(c)));
        assert_eq!(g.coefficients[0].0, vec![1, 1]);
        assert_eq!(g.coefficients[9].0, vec![4, 4]);
        assert_eq!(g.to_poly().unwrap().len(), 10);
        assert_eq!(g, gen_general_type(2, 4, 7, 1).unwrap());
    }

    #[test]
    fn binary_field_has_unit_coefficients() {
        let g = gen_general_type(3, 3, 2, 9).unwrap();
        assert_eq!(g.coefficients.len(), 10);
        assert!(g.coefficients.iter().all(|(_, c)| *c == 1));
    }
}
