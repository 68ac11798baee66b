//! Sparse multivariate polynomials over F_p with Frobenius-bracket pruning.
//!
//! Pruning at `cap` means reduction modulo the monomial ideal
//! `m^[cap] = (x^cap : x a variable)`. Because exponents never decrease under
//! multiplication, discarding a partial product as soon as one exponent reaches
//! `cap` is exact.

mod extract;
mod monomial;
pub mod text;

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field;

pub use extract::{coefficient_of, Extraction, TermChoice};
pub use monomial::{Monomial, VarTable, EXPONENT_LIMIT};

/// Products with fewer term pairs than this run on the calling thread.
const PAR_THRESHOLD: usize = 1 << 15;

/// A polynomial over F_p: canonically ordered terms, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMod {
    p: u32,
    table: VarTable,
    terms: Vec<(Monomial, u32)>,
}

impl PolyMod {
    pub fn zero(p: u32, table: VarTable) -> Self {
        PolyMod { p, table, terms: Vec::new() }
    }

    pub fn constant(p: u32, table: VarTable, c: u32) -> Self {
        Self::from_terms(p, table, [(Monomial::one(table.nvars()), c)])
    }

    pub fn one(p: u32, table: VarTable) -> Self {
        Self::constant(p, table, 1)
    }

    pub fn variable(p: u32, table: VarTable, flat: usize) -> Self {
        Self::from_terms(p, table, [(Monomial::variable(table.nvars(), flat), 1)])
    }

    /// Builds a polynomial, merging repeated monomials and dropping zeros.
    pub fn from_terms<I>(p: u32, table: VarTable, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let mut map: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), table.nvars());
            let slot = map.entry(m).or_insert(0);
            *slot = field::add(*slot, c % p, p);
        }
        let terms = map.into_iter().filter(|&(_, c)| c != 0).collect();
        PolyMod { p, table, terms }
    }

    fn from_map(p: u32, table: VarTable, map: FxHashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        PolyMod { p, table, terms }
    }

    /// Wraps terms already in canonical order with nonzero coefficients.
    pub(crate) fn from_sorted(p: u32, table: VarTable, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|&(_, c)| c != 0 && c < p));
        PolyMod { p, table, terms }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn nvars(&self) -> usize {
        self.table.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least monomial in the canonical order.
    pub fn least_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(k, _)| k.cmp(m))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn check_compatible(&self, other: &PolyMod) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch(self.p, other.p));
        }
        if self.table != other.table {
            return Err(Error::TableMismatch(self.table.to_string(), other.table.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMod) -> Result<PolyMod> {
        self.check_compatible(other)?;
        let p = self.p;
        Ok(Self::from_terms(
            p,
            self.table,
            self.terms.iter().cloned().chain(other.terms.iter().cloned()),
        ))
    }

    pub fn sub(&self, other: &PolyMod) -> Result<PolyMod> {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> PolyMod {
        let c = c % self.p;
        if c == 0 {
            return Self::zero(self.p, self.table);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), field::mul(*a, c, self.p)))
            .collect();
        Self::from_sorted(self.p, self.table, terms)
    }

    /// `P·Q mod m^[cap]`.
    pub fn mul_pruned(&self, other: &PolyMod, cap: u32) -> Result<PolyMod> {
        self.check_compatible(other)?;
        if cap == 0 || cap > EXPONENT_LIMIT {
            return Err(Error::Range(format!("cap {cap} outside [1, {EXPONENT_LIMIT}]")));
        }
        Ok(self.product_with(other, |a, b| a.mul_capped(b, cap)))
    }

    /// Exact product; fails if an exponent leaves the packed range.
    pub fn mul(&self, other: &PolyMod) -> Result<PolyMod> {
        self.check_compatible(other)?;
        let overflow = self
            .terms
            .iter()
            .map(|(m, _)| m.exponents())
            .flat_map(|a| other.terms.iter().map(move |(n, _)| (a, n.exponents())))
            .any(|(a, b)| a.iter().zip(b).any(|(&x, &y)| x as u32 + y as u32 >= EXPONENT_LIMIT));
        if overflow {
            return Err(Error::Range("product exponent exceeds 255".into()));
        }
        Ok(self.product_with(other, |a, b| a.mul_capped(b, EXPONENT_LIMIT)))
    }

    /// Product restricted to monomials dividing `bound`.
    pub fn mul_bounded(&self, other: &PolyMod, bound: &Monomial) -> Result<PolyMod> {
        self.check_compatible(other)?;
        Ok(self.product_with(other, |a, b| a.mul_bounded(b, bound)))
    }

    /// Shared multiplication kernel. The left operand's terms are split into
    /// chunks that accumulate independently; chunk maps are merged in chunk
    /// order and the result is sorted, so the output does not depend on the
    /// number of worker threads.
    fn product_with<F>(&self, other: &PolyMod, combine: F) -> PolyMod
    where
        F: Fn(&Monomial, &Monomial) -> Option<Monomial> + Sync,
    {
        let p = self.p;
        let accumulate = |chunk: &[(Monomial, u32)]| {
            let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
            for (ma, ca) in chunk {
                for (mb, cb) in &other.terms {
                    if let Some(m) = combine(ma, mb) {
                        let c = field::mul(*ca, *cb, p);
                        let slot = acc.entry(m).or_insert(0);
                        *slot = field::add(*slot, c, p);
                    }
                }
            }
            acc
        };
        let pairs = self.terms.len().saturating_mul(other.terms.len());
        let workers = rayon::current_num_threads();
        let map = if pairs < PAR_THRESHOLD || workers == 1 || self.terms.len() < 2 {
            accumulate(&self.terms)
        } else {
            let chunk = self.terms.len().div_ceil(workers * 4).max(1);
            let partials: Vec<_> = self.terms.par_chunks(chunk).map(accumulate).collect();
            let mut iter = partials.into_iter();
            let mut merged = iter.next().unwrap_or_default();
            for part in iter {
                for (m, c) in part {
                    let slot = merged.entry(m).or_insert(0);
                    *slot = field::add(*slot, c, p);
                }
            }
            merged
        };
        Self::from_map(p, self.table, map)
    }

    /// `P^k mod m^[cap]` by square-and-multiply, pruning every intermediate.
    pub fn power_residue(&self, k: u64, cap: u32) -> Result<PolyMod> {
        if cap == 0 || cap > EXPONENT_LIMIT {
            return Err(Error::Range(format!("cap {cap} outside [1, {EXPONENT_LIMIT}]")));
        }
        let one = Self::one(self.p, self.table).prune(cap);
        self.power_with(k, one, |a, b| a.mul_pruned(b, cap))
    }

    /// `P^k` restricted to monomials dividing `bound`.
    pub fn power_bounded(&self, k: u64, bound: &Monomial) -> Result<PolyMod> {
        let one = Self::one(self.p, self.table);
        self.power_with(k, one, |a, b| a.mul_bounded(b, bound))
    }

    fn power_with<F>(&self, mut k: u64, one: PolyMod, mul: F) -> Result<PolyMod>
    where
        F: Fn(&PolyMod, &PolyMod) -> Result<PolyMod>,
    {
        let mut acc = one;
        let mut base: Option<PolyMod> = None;
        while k > 0 {
            let b = match base.take() {
                None => mul(&Self::one(self.p, self.table), self)?,
                Some(b) => mul(&b, &b)?,
            };
            if k & 1 == 1 {
                acc = mul(&acc, &b)?;
            }
            k >>= 1;
            if k > 0 {
                base = Some(b);
            }
        }
        Ok(acc)
    }

    /// Drops every term lying in `m^[cap]`.
    pub fn prune(&self, cap: u32) -> PolyMod {
        self.filter(|m| m.below(cap))
    }

    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> PolyMod {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect();
        Self::from_sorted(self.p, self.table, terms)
    }

    /// The p-th power map `Σ c x^u ↦ Σ c x^{p·u}`, which equals `P^p` over F_p.
    pub fn frobenius(&self) -> Result<PolyMod> {
        let p = self.p as u64;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let wide: Vec<u64> = m.exponents().iter().map(|&e| e as u64 * p).collect();
            terms.push((Monomial::try_from_wide(&wide)?, *c));
        }
        // Scaling exponents by p preserves the lexicographic order.
        Ok(Self::from_sorted(self.p, self.table, terms))
    }

    pub fn evaluate(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.nvars() {
            return Err(Error::Precondition(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.nvars()
            )));
        }
        let p = self.p;
        let mut total = 0;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (k, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v = field::mul(v, field::pow(point[k], e as u64, p), p);
                }
            }
            total = field::add(total, v, p);
        }
        Ok(total)
    }

    /// Total degree of the largest term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Order at the origin: the least total degree of a term.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    /// Largest exponent of any variable in any term.
    pub fn max_exponent(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.max_exponent()).max().unwrap_or(0)
    }

    /// Flat indices of the variables that occur in some term.
    pub fn support_variables(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&k| self.terms.iter().any(|(m, _)| m.get(k) > 0))
            .collect()
    }

    /// Moves every term into `table` through a variable map. Terms containing a
    /// variable mapped to `None` are dropped (the variable is set to zero).
    pub fn remap<F>(&self, table: VarTable, map: F) -> PolyMod
    where
        F: Fn(usize) -> Option<usize>,
    {
        let targets: Vec<Option<usize>> = (0..self.nvars()).map(&map).collect();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let mut out = Monomial::one(table.nvars());
            for (k, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let t = targets[k]?;
                out.set(t, out.get(t) as u8 + e);
            }
            Some((out, *c))
        });
        Self::from_terms(self.p, table, terms.collect::<Vec<_>>())
    }

    pub fn derivative(&self, flat: usize) -> PolyMod {
        let p = self.p;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.get(flat);
            if e == 0 {
                return None;
            }
            let mut out = m.clone();
            out.set(flat, (e - 1) as u8);
            Some((out, field::mul(*c, e % p, p)))
        });
        Self::from_terms(p, self.table, terms.collect::<Vec<_>>())
    }

    /// Whether `divisor` divides `self` exactly, by lex division with remainder.
    pub fn divisible_by(&self, divisor: &PolyMod) -> Result<bool> {
        self.check_compatible(divisor)?;
        let Some((lead_m, lead_c)) = divisor.terms.last() else {
            return Ok(self.is_zero());
        };
        let p = self.p;
        let lead_inv = field::inv(*lead_c, p);
        let mut rest: BTreeMap<Monomial, u32> = self.terms.iter().cloned().collect();
        while let Some((m, c)) = rest.iter().next_back().map(|(m, c)| (m.clone(), *c)) {
            if !lead_m.divides(&m) {
                return Ok(false);
            }
            let shift = lead_m.quotient_of(&m);
            let factor = field::mul(c, lead_inv, p);
            for (dm, dc) in &divisor.terms {
                let Some(t) = dm.mul_capped(&shift, EXPONENT_LIMIT) else {
                    return Err(Error::Range("division left the packed exponent range".into()));
                };
                let delta = field::mul(*dc, factor, p);
                let slot = rest.entry(t.clone()).or_insert(0);
                *slot = field::sub(*slot, delta, p);
                if *slot == 0 {
                    rest.remove(&t);
                }
            }
        }
        Ok(true)
    }

    /// Canonical text form; see [`text`].
    pub fn render(&self) -> String {
        text::render(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2() -> VarTable {
        VarTable::base(2).unwrap()
    }

    fn poly(p: u32, s: &str) -> PolyMod {
        text::parse(s, p, Some(t2())).unwrap()
    }

    #[test]
    fn binomial_square_pruned() {
        let f = poly(3, "x1 + x2");
        let sq = f.mul_pruned(&f, 2).unwrap();
        assert_eq!(sq, poly(3, "2 x1 x2"));
    }

    #[test]
    fn identity_product() {
        let f = poly(5, "3 x1^2 x2 + x2^3 + 4");
        let one = PolyMod::one(5, t2());
        assert_eq!(f.mul_pruned(&one, 4).unwrap(), f);
    }

    #[test]
    fn pruned_square_matches_hand_expansion() {
        // (x² + y³)² = x⁴ + 2x²y³ + y⁶: every term has an exponent ≥ 3, and at
        // cap 4 only the cross term survives.
        let f = poly(3, "x1^2 + x2^3");
        assert!(f.mul_pruned(&f, 3).unwrap().is_zero());
        assert_eq!(f.mul_pruned(&f, 4).unwrap(), poly(3, "2 x1^2 x2^3"));
    }

    #[test]
    fn power_residue_examples() {
        let x = poly(7, "x1");
        assert_eq!(x.power_residue(6, 7).unwrap(), poly(7, "x1^6"));
        let x2 = poly(7, "x1^2");
        assert!(x2.power_residue(2, 3).unwrap().is_zero());
        assert_eq!(x.power_residue(0, 1).unwrap(), PolyMod::one(7, t2()));
        assert_eq!(x.power_residue(0, 2).unwrap(), PolyMod::one(7, t2()));
        assert!(x.power_residue(3, 257).is_err());
    }

    #[test]
    fn mismatches_are_structural_errors() {
        let a = poly(3, "x1");
        let b = poly(5, "x1");
        assert_eq!(a.mul_pruned(&b, 3), Err(Error::FieldMismatch(3, 5)));
        let c = PolyMod::variable(3, VarTable::base(3).unwrap(), 0);
        assert!(matches!(a.mul_pruned(&c, 3), Err(Error::TableMismatch(..))));
    }

    #[test]
    fn evaluation() {
        assert_eq!(poly(5, "x1 + x2").evaluate(&[1, 2]).unwrap(), 3);
        assert_eq!(PolyMod::zero(5, t2()).evaluate(&[4, 4]).unwrap(), 0);
        let t3 = VarTable::base(3).unwrap();
        let fermat = text::parse("x1^3 + x2^3 + x3^3", 7, Some(t3)).unwrap();
        assert_eq!(fermat.evaluate(&[1, 1, 1]).unwrap(), 3);
        assert!(fermat.evaluate(&[1, 1]).is_err());
    }

    #[test]
    fn frobenius_is_pth_power() {
        let f = poly(3, "x1 + 2 x2 + 1");
        let cube = f.mul(&f).unwrap().mul(&f).unwrap();
        assert_eq!(f.frobenius().unwrap(), cube);
    }

    #[test]
    fn exact_division() {
        let f = poly(5, "x1 + x2");
        let g = poly(5, "x1^2 + 2 x1 x2 + x2^2 + 3 x1 + 3 x2");
        assert!(g.divisible_by(&f).unwrap());
        assert!(!poly(5, "x1^2 + x2").divisible_by(&f).unwrap());
        assert!(poly(5, "x1").divisible_by(&poly(5, "x1")).unwrap());
    }

    #[test]
    fn derivative_and_order() {
        let f = poly(7, "x1^3 + 2 x1 x2 + x2^5");
        assert_eq!(f.derivative(0), poly(7, "3 x1^2 + 2 x2"));
        assert_eq!(f.order(), Some(2));
        assert_eq!(f.degree(), Some(5));
        assert_eq!(f.homogeneous_degree(), None);
        assert_eq!(poly(7, "x1 x2 + x2^2").homogeneous_degree(), Some(2));
    }
}
