use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exclusive upper bound for a single packed exponent.
pub const EXPONENT_LIMIT: u32 = 256;

/// Layout of the jet variables `x_i^(j)`, `1 ≤ i ≤ n`, `0 ≤ j ≤ m`.
///
/// The flat index of `x_i^(j)` is `j·n + (i − 1)`, so level `j` occupies the
/// contiguous block `[j·n, (j+1)·n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarTable {
    pub n: usize,
    pub m: usize,
}

impl VarTable {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("at least one base variable is required".into()));
        }
        Ok(VarTable { n, m })
    }

    /// The base ring `k[x_1, …, x_n]` (jet level 0).
    pub fn base(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn nvars(&self) -> usize {
        (self.m + 1) * self.n
    }

    /// Flat index of `x_i^(j)` with `i` one-based.
    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.n && j <= self.m);
        j * self.n + (i - 1)
    }

    /// Inverse of [`VarTable::index`]: `(i, j)` with `i` one-based.
    pub fn var(&self, flat: usize) -> (usize, usize) {
        (flat % self.n + 1, flat / self.n)
    }

    pub fn weight_of(&self, flat: usize) -> usize {
        flat / self.n
    }

    pub fn with_level(&self, m: usize) -> Self {
        VarTable { n: self.n, m }
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, m={})", self.n, self.m)
    }
}

/// A monomial as a packed exponent vector, one byte per flat variable.
///
/// The derived ordering is lexicographic on flat indices and is the canonical
/// term order of [`super::PolyMod`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[u8; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn variable(nvars: usize, flat: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[flat] = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// Packs wide exponents, failing when one does not fit in a byte.
    pub fn try_from_wide(exps: &[u64]) -> Result<Self> {
        let mut out = SmallVec::with_capacity(exps.len());
        for &e in exps {
            if e >= EXPONENT_LIMIT as u64 {
                return Err(Error::Range(format!(
                    "exponent {e} does not fit the packed range [0, {EXPONENT_LIMIT})"
                )));
            }
            out.push(e as u8);
        }
        Ok(Monomial(out))
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn get(&self, flat: usize) -> u32 {
        self.0[flat] as u32
    }

    pub fn set(&mut self, flat: usize, e: u8) {
        self.0[flat] = e;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// `Σ j · exponent(x_i^(j))`.
    pub fn weight(&self, table: &VarTable) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &e)| table.weight_of(k) as u32 * e as u32)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0) as u32
    }

    /// True when the monomial lies outside the Frobenius bracket `m^[cap]`.
    pub fn below(&self, cap: u32) -> bool {
        self.0.iter().all(|&e| (e as u32) < cap)
    }

    /// Product, or `None` if some exponent reaches `cap`.
    #[inline]
    pub fn mul_capped(&self, other: &Monomial, cap: u32) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut out = self.0.clone();
        for (o, &b) in out.iter_mut().zip(other.0.iter()) {
            let s = *o as u32 + b as u32;
            if s >= cap {
                return None;
            }
            *o = s as u8;
        }
        Some(Monomial(out))
    }

    /// Product, or `None` if it does not divide `bound`.
    #[inline]
    pub fn mul_bounded(&self, other: &Monomial, bound: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for ((o, &b), &lim) in out.iter_mut().zip(other.0.iter()).zip(bound.0.iter()) {
            let s = *o as u32 + b as u32;
            if s > lim as u32 {
                return None;
            }
            *o = s as u8;
        }
        Some(Monomial(out))
    }

    /// Exponentwise `self ≤ other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| b - a).collect())
    }

    /// Exponents at the given flat positions.
    pub fn project(&self, vars: &[usize]) -> SmallVec<[u8; 16]> {
        vars.iter().map(|&v| self.0[v]).collect()
    }

    /// Renders in the polynomial text format (`x1_0^2 x2_1`), `1` for the unit.
    pub fn render(&self, table: &VarTable) -> String {
        let mut parts = Vec::new();
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let (i, j) = table.var(k);
            if e == 1 {
                parts.push(format!("x{i}_{j}"));
            } else {
                parts.push(format!("x{i}_{j}^{e}"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({:?})", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_index_is_a_bijection() {
        let t = VarTable::new(3, 2).unwrap();
        let mut seen = vec![false; t.nvars()];
        for j in 0..=2 {
            for i in 1..=3 {
                let k = t.index(i, j);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(t.var(k), (i, j));
                assert_eq!(t.weight_of(k), j);
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn capped_product() {
        let a = Monomial::from_exponents(&[1, 2]);
        let b = Monomial::from_exponents(&[1, 0]);
        assert_eq!(a.mul_capped(&b, 3), Some(Monomial::from_exponents(&[2, 2])));
        assert_eq!(a.mul_capped(&b, 2), None);
        let big = Monomial::from_exponents(&[200, 0]);
        assert_eq!(big.mul_capped(&big, 256), None);
    }

    #[test]
    fn degree_and_weight() {
        let t = VarTable::new(2, 1).unwrap();
        // x1_0^2 x2_1^3
        let m = Monomial::from_exponents(&[2, 0, 0, 3]);
        assert_eq!(m.degree(), 5);
        assert_eq!(m.weight(&t), 3);
        assert_eq!(m.render(&t), "x1_0^2 x2_1^3");
        assert_eq!(Monomial::one(4).render(&t), "1");
    }

    #[test]
    fn wide_packing_rejects_overflow() {
        assert!(Monomial::try_from_wide(&[255, 3]).is_ok());
        assert!(Monomial::try_from_wide(&[256]).is_err());
    }
}
