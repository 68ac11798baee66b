//! Finite-q approximants `r_q / q` of F-pure thresholds for centers generated
//! by a set of variables, and the comparison between jet levels.
//!
//! For a center `I = (x_v : v ∈ S)` and a residue `R = F^{q−1} mod m^[q]`,
//! multiplying by a monomial never cancels, so
//! `r_q = max_{x ∈ R} Σ_{v ∈ S} (q − 1 − exp_x(v))`.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{check_frobenius_power, FrobeniusResidue};
use crate::jet::{jet_equations, trivial_jet_variables, JetSystem};
use crate::poly::{Monomial, PolyMod};

/// Residues whose materialization visits more term pairs than this are
/// searched slice by slice instead.
pub const MATERIALIZE_LIMIT: u64 = 1 << 24;

fn check_center(system: &JetSystem, center: &[usize]) -> Result<Vec<usize>> {
    if center.is_empty() {
        return Err(Error::Precondition("the center must contain at least one variable".into()));
    }
    let nvars = system.table().nvars();
    if let Some(&v) = center.iter().find(|&&v| v >= nvars) {
        return Err(Error::Range(format!("center variable {v} outside {}", system.table())));
    }
    let mut s = center.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

fn load(m: &Monomial, center: &[usize]) -> u64 {
    center.iter().map(|&v| m.get(v) as u64).sum()
}

/// Least `Σ_{v ∈ center} exp(v)` over the monomials of the residue.
fn min_center_load(
    system: &JetSystem,
    residue: &FrobeniusResidue,
    center: &[usize],
    limit: u64,
) -> Result<Option<u64>> {
    if residue.work_estimate() <= limit {
        let r = residue.materialize()?;
        return Ok(r.terms().iter().map(|(m, _)| load(m, center)).min());
    }
    // Branch and bound over slices keyed by a subset of the center: the
    // key sum is a lower bound for the load of every monomial in the slice.
    let slice_vars: Vec<usize> = if center.len() < system.table().nvars() {
        center.to_vec()
    } else {
        center.iter().copied().filter(|&v| v < system.n()).collect()
    };
    let slices = residue.slices(&slice_vars);
    let mut keys = slices.keys();
    keys.sort_by_key(|k| (k.iter().map(|&a| a as u64).sum::<u64>(), k.clone()));
    let mut best: Option<u64> = None;
    for key in keys {
        let floor: u64 = key.iter().map(|&a| a as u64).sum();
        if best.is_some_and(|b| b <= floor) {
            break;
        }
        let slice = slices.slice(&key)?;
        if let Some(l) = slice.terms().iter().map(|(m, _)| load(m, center)).min() {
            best = Some(best.map_or(l, |b| b.min(l)));
        }
    }
    Ok(best)
}

/// `r_q` for the center generated by `center`, or `None` when the residue
/// vanishes and no power of the center works.
pub fn r_q(system: &JetSystem, center: &[usize], q: u32) -> Result<Option<u64>> {
    let center = check_center(system, center)?;
    let residue = FrobeniusResidue::new(system, q)?;
    let full = center.len() as u64 * (q as u64 - 1);
    Ok(min_center_load(system, &residue, &center, MATERIALIZE_LIMIT)?.map(|l| full - l))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FptRow {
    pub e: u32,
    pub q: u32,
    pub r_q: Option<u64>,
    /// `r_q / q` written unreduced, e.g. `"8/5"`.
    pub ratio: Option<String>,
}

impl FptRow {
    fn new(e: u32, q: u32, r_q: Option<u64>) -> Self {
        FptRow { e, q, r_q, ratio: r_q.map(|r| format!("{r}/{q}")) }
    }

    pub fn ratio_value(&self) -> Option<Ratio<u64>> {
        self.r_q.map(|r| Ratio::new(r, self.q as u64))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FptTable {
    pub center: Vec<usize>,
    pub rows: Vec<FptRow>,
}

fn powers(p: u32, e_max: u32) -> Result<Vec<(u32, u32)>> {
    if e_max == 0 {
        return Err(Error::Precondition("e_max must be at least 1".into()));
    }
    let q_max = (p as u64).checked_pow(e_max).unwrap_or(u64::MAX).min(u32::MAX as u64) as u32;
    check_frobenius_power(p, q_max)?;
    Ok((1..=e_max).map(|e| (e, p.pow(e))).collect())
}

/// Rows `e = 1..=e_max`.
pub fn fpt_sequence(system: &JetSystem, center: &[usize], e_max: u32) -> Result<FptTable> {
    let center = check_center(system, center)?;
    let rows = powers(system.p(), e_max)?
        .into_par_iter()
        .map(|(e, q)| Ok(FptRow::new(e, q, r_q(system, &center, q)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FptTable { center, rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    pub e: u32,
    pub q: u32,
    pub r_q: Option<u64>,
    pub r_prime_q: Option<u64>,
    /// `(q − 1) · Σ_l (ord f_l − 1)`.
    pub correction: u64,
    /// `r'_q + correction ≤ r_q`, when both sides are defined.
    pub inequality_holds: Option<bool>,
    /// `r_q/q − r'_q/q` written as `"(r_q − r'_q)/q"`.
    pub ratio_gap: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FptComparison {
    pub m: usize,
    pub m_prime: usize,
    pub orders: Vec<u32>,
    pub order_excess: u64,
    pub rows: Vec<CompareRow>,
}

/// Compares `r_q` at level `m` (center `0_m`) with `r'_q` at level `m′`
/// (center `ψ^{-1}(0_m)`).
pub fn jet_fpt_compare(f_list: &[PolyMod], m: usize, m_prime: usize, e_max: u32) -> Result<FptComparison> {
    if m >= m_prime {
        return Err(Error::Precondition(format!("need m < m′, got m = {m}, m′ = {m_prime}")));
    }
    let low = jet_equations(f_list, m)?;
    let high = jet_equations(f_list, m_prime)?;
    let low_center: Vec<usize> = (0..low.table().nvars()).collect();
    let high_center = trivial_jet_variables(&high, m)?;
    let orders = low.orders();
    let order_excess: u64 = orders.iter().map(|&d| d.saturating_sub(1) as u64).sum();
    let rows = powers(low.p(), e_max)?
        .into_par_iter()
        .map(|(e, q)| {
            let r = r_q(&low, &low_center, q)?;
            let r_prime = r_q(&high, &high_center, q)?;
            let correction = (q as u64 - 1) * order_excess;
            let (inequality_holds, ratio_gap) = match (r, r_prime) {
                (Some(r), Some(rp)) => (
                    Some(rp + correction <= r),
                    Some(format!("{}/{q}", r as i64 - rp as i64)),
                ),
                _ => (None, None),
            };
            Ok(CompareRow { e, q, r_q: r, r_prime_q: r_prime, correction, inequality_holds, ratio_gap })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FptComparison { m, m_prime, orders, order_excess, rows })
}
