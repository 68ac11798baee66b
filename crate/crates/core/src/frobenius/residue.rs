//! `F^{q−1} mod m^[q]` for `F = ∏ F_l^(j)` and `q = p^e`.
//!
//! Over F_p the identity `F^{p^e − 1} = F^{p−1} · (F^{p^{e−1} − 1})^p` holds
//! and the p-th power is the exponent-scaling map. Since the scaled exponents
//! of anything outside `m^[p^{e−1}]` stay below `q`, the residue satisfies
//!
//! ```text
//! R_e = (F^{p−1} mod m^[q]) · Φ(R_{e−1})  mod m^[q],     R_0 = 1.
//! ```
//!
//! [`ResidueSlices`] evaluates this product one slice at a time, where a slice
//! collects the monomials sharing their exponents on a chosen variable set.
//! Searches over slices never hold the full residue in memory.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field;
use crate::jet::JetSystem;
use crate::poly::{Monomial, PolyMod, EXPONENT_LIMIT};

pub type SliceKey = SmallVec<[u8; 16]>;

/// Validates `q` against the system's characteristic and returns `e`.
pub fn check_frobenius_power(p: u32, q: u32) -> Result<u32> {
    if q > EXPONENT_LIMIT {
        return Err(Error::Range(format!("q = {q} exceeds the supported maximum {EXPONENT_LIMIT}")));
    }
    field::frobenius_exponent(q, p)
        .ok_or_else(|| Error::Range(format!("q = {q} is not a positive power of p = {p}")))
}

/// `∏_{l,j} F_l^(j) mod m^[cap]`.
pub fn system_product(system: &JetSystem, cap: u32) -> Result<PolyMod> {
    let mut acc = PolyMod::one(system.p(), *system.table()).prune(cap);
    for (_, f) in system.all_equations() {
        acc = acc.mul_pruned(f, cap)?;
    }
    Ok(acc)
}

/// The two factors of the Frobenius recursion at one power `q`.
#[derive(Debug, Clone)]
pub struct FrobeniusResidue {
    q: u32,
    /// `F^{p−1} mod m^[q]`.
    base: PolyMod,
    /// `Φ(R_{e−1})`.
    lifted: PolyMod,
}

impl FrobeniusResidue {
    pub fn new(system: &JetSystem, q: u32) -> Result<Self> {
        let p = system.p();
        let e = check_frobenius_power(p, q)?;
        let product = system_product(system, q)?;
        Self::from_product(&product, p, e)
    }

    /// Same recursion for an arbitrary `F` already reduced mod `m^[q]`.
    pub fn from_product(product: &PolyMod, p: u32, e: u32) -> Result<Self> {
        let q = p.pow(e);
        let base = product.prune(q).power_residue(p as u64 - 1, q)?;
        let lifted = if e == 1 {
            PolyMod::one(p, *product.table())
        } else {
            let q_prev = q / p;
            let prev = Self::from_product(&product.prune(q_prev), p, e - 1)?.materialize()?;
            prev.frobenius()?
        };
        Ok(FrobeniusResidue { q, base, lifted })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The full residue `F^{q−1} mod m^[q]`.
    pub fn materialize(&self) -> Result<PolyMod> {
        self.base.mul_pruned(&self.lifted, self.q)
    }

    /// Number of term pairs a full materialization would visit.
    pub fn work_estimate(&self) -> u64 {
        self.base.len() as u64 * self.lifted.len() as u64
    }

    pub fn slices(&self, vars: &[usize]) -> ResidueSlices<'_> {
        ResidueSlices::new(self, vars)
    }
}

fn group_by(poly: &PolyMod, vars: &[usize]) -> FxHashMap<SliceKey, Vec<(Monomial, u32)>> {
    let mut groups: FxHashMap<SliceKey, Vec<(Monomial, u32)>> = FxHashMap::default();
    for (m, c) in poly.terms() {
        groups.entry(m.project(vars)).or_default().push((m.clone(), *c));
    }
    groups
}

/// Slice access to a [`FrobeniusResidue`] keyed by the exponents on `vars`.
pub struct ResidueSlices<'a> {
    residue: &'a FrobeniusResidue,
    vars: Vec<usize>,
    base_groups: FxHashMap<SliceKey, PolyMod>,
    lifted_groups: Vec<(SliceKey, PolyMod)>,
}

impl<'a> ResidueSlices<'a> {
    fn new(residue: &'a FrobeniusResidue, vars: &[usize]) -> Self {
        let (p, table) = (residue.base.p(), *residue.base.table());
        let wrap = |terms: Vec<(Monomial, u32)>| PolyMod::from_sorted(p, table, terms);
        let base_groups =
            group_by(&residue.base, vars).into_iter().map(|(k, t)| (k, wrap(t))).collect();
        let mut lifted_groups: Vec<_> =
            group_by(&residue.lifted, vars).into_iter().map(|(k, t)| (k, wrap(t))).collect();
        lifted_groups.sort_by(|a, b| a.0.cmp(&b.0));
        ResidueSlices { residue, vars: vars.to_vec(), base_groups, lifted_groups }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    /// Every key that can carry a nonzero slice, in lexicographic order.
    pub fn keys(&self) -> Vec<SliceKey> {
        let q = self.residue.q;
        let mut keys = Vec::new();
        for u in self.base_groups.keys() {
            for (v, _) in &self.lifted_groups {
                let mut k = SliceKey::with_capacity(u.len());
                let mut ok = true;
                for (a, b) in u.iter().zip(v.iter()) {
                    let s = *a as u32 + *b as u32;
                    if s >= q {
                        ok = false;
                        break;
                    }
                    k.push(s as u8);
                }
                if ok {
                    keys.push(k);
                }
            }
        }
        keys.sort_unstable();
        keys.dedup();
        keys
    }

    /// The monomials of the residue whose exponents on `vars` equal `key`.
    pub fn slice(&self, key: &[u8]) -> Result<PolyMod> {
        let (p, table) = (self.residue.base.p(), *self.residue.base.table());
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        for (v, lifted) in &self.lifted_groups {
            let mut u = SliceKey::with_capacity(key.len());
            if v.iter().zip(key).any(|(b, k)| b > k) {
                continue;
            }
            u.extend(v.iter().zip(key).map(|(b, k)| k - b));
            let Some(base) = self.base_groups.get(&u) else {
                continue;
            };
            for (m, c) in base.mul_pruned(lifted, self.residue.q)?.terms() {
                let slot = acc.entry(m.clone()).or_insert(0);
                *slot = field::add(*slot, *c, p);
            }
        }
        Ok(PolyMod::from_terms(p, table, acc))
    }
}
