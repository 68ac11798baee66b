//! Fibre dimensions and irreducibility verdicts for jet schemes of
//! homogeneous hypersurfaces with an isolated singularity at the origin.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::{restrict_to_fiber, shift_identity_check, JetSystem, ShiftCheck};
use crate::poly::PolyMod;

/// `dim π_m^{-1}(0)` for `d ≤ N − 1`.
pub fn fiber_dimension(d: u64, n: u64, m: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    if d >= n {
        return Err(Error::Range(format!(
            "the fibre formula needs d ≤ N − 1, got d = {d}, N = {n}"
        )));
    }
    Ok(if m < d { m * n } else { (m - d + 1) * (n - 1) + (d - 1) * n })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IrreducibleCompleteIntersection,
    NotIrreducible,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct HypothesisFlags {
    pub homogeneous: bool,
    pub isolated_singularity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JetGeometryReport {
    pub d: u64,
    pub n: u64,
    pub m: u64,
    /// Exact fibre dimension where it is known.
    pub fiber_dim: Option<u64>,
    /// `mN − max{0, m + 1 − d}` when `d ≥ N`.
    pub fiber_dim_lower_bound: Option<u64>,
    /// `(m + 1)(N − 1)`.
    pub threshold: u64,
    pub verdict: Verdict,
    pub flags: HypothesisFlags,
}

pub fn irreducibility_verdict(d: u64, n: u64, m: u64, flags: HypothesisFlags) -> Result<JetGeometryReport> {
    if d == 0 || n == 0 {
        return Err(Error::Precondition("d and N must be positive".into()));
    }
    let threshold = (m + 1) * (n - 1);
    let (fiber_dim, fiber_dim_lower_bound) = if d < n {
        (Some(fiber_dimension(d, n, m)?), None)
    } else {
        let exact = (m < d).then_some(m * n);
        (exact, Some(m * n - (m + 1).saturating_sub(d)))
    };
    let verdict = if !(flags.homogeneous && flags.isolated_singularity) {
        Verdict::Inconclusive
    } else if d < n {
        debug_assert!(fiber_dim.unwrap() < threshold);
        Verdict::IrreducibleCompleteIntersection
    } else if m + 1 >= n {
        Verdict::NotIrreducible
    } else {
        Verdict::Inconclusive
    };
    Ok(JetGeometryReport { d, n, m, fiber_dim, fiber_dim_lower_bound, threshold, verdict, flags })
}

/// Verdict for a concrete `f`; homogeneity is checked, the isolated
/// singularity is taken from the caller.
pub fn verdict_for_polynomial(f: &PolyMod, m: u64, isolated_singularity: bool) -> Result<JetGeometryReport> {
    let d = f.degree().unwrap_or(0) as u64;
    let flags = HypothesisFlags { homogeneous: f.homogeneous_degree().is_some(), isolated_singularity };
    irreducibility_verdict(d.max(1), f.table().n as u64, m, flags)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingCheck {
    pub equation: usize,
    pub j: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftFiberReport {
    /// `F^(j)|_{x^(0)=0} = 0` for `j < d`.
    pub vanishing: Vec<VanishingCheck>,
    /// `F^(j)|_{x^(0)=0} = F^(j−d)` after the weight shift, `j ≥ d`.
    pub shifted: Vec<ShiftCheck>,
}

impl ShiftFiberReport {
    pub fn passed(&self) -> bool {
        self.vanishing.iter().all(|c| c.passed) && self.shifted.iter().all(|c| c.passed)
    }
}

pub fn shift_fiber_check(system: &JetSystem) -> Result<ShiftFiberReport> {
    let shifted = shift_identity_check(system)?;
    let mut vanishing = Vec::new();
    for (l, f) in system.base().iter().enumerate() {
        let d = f.homogeneous_degree().expect("checked by the shift identity") as usize;
        for j in 0..d {
            let passed = restrict_to_fiber(system.equation(l, j)).is_zero();
            vanishing.push(VanishingCheck { equation: l, j, passed });
        }
    }
    Ok(ShiftFiberReport { vanishing, shifted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::jet_equations;
    use crate::poly::text;

    const FLAGS: HypothesisFlags = HypothesisFlags { homogeneous: true, isolated_singularity: true };

    #[test]
    fn fiber_examples() {
        assert_eq!(fiber_dimension(2, 3, 2).unwrap(), 5);
        assert_eq!(fiber_dimension(3, 4, 2).unwrap(), 8);
        assert_eq!(fiber_dimension(2, 3, 1).unwrap(), 3);
        assert!(fiber_dimension(3, 3, 2).is_err());
    }

    #[test]
    fn verdict_examples() {
        let r = irreducibility_verdict(3, 3, 2, FLAGS).unwrap();
        assert_eq!(r.verdict, Verdict::NotIrreducible);
        assert_eq!((r.fiber_dim_lower_bound, r.threshold), (Some(6), 6));
        for m in 0..6 {
            let r = irreducibility_verdict(2, 4, m, FLAGS).unwrap();
            assert_eq!(r.verdict, Verdict::IrreducibleCompleteIntersection);
        }
        let flags = HypothesisFlags { isolated_singularity: false, ..FLAGS };
        assert_eq!(irreducibility_verdict(2, 4, 1, flags).unwrap().verdict, Verdict::Inconclusive);
        assert_eq!(irreducibility_verdict(4, 4, 1, FLAGS).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn shift_fiber_examples() {
        let sys = jet_equations(&[text::parse("x1^2", 5, None).unwrap()], 3).unwrap();
        let r = shift_fiber_check(&sys).unwrap();
        assert!(r.passed());
        assert_eq!(r.shifted.len(), 2);
        let sys = jet_equations(&[text::parse("x1 x2 + x3 x4", 5, None).unwrap()], 2).unwrap();
        let r = shift_fiber_check(&sys).unwrap();
        assert_eq!(r.vanishing.len(), 2);
        assert!(r.passed());
        let sys = jet_equations(&[text::parse("x1^2 + x2", 5, None).unwrap()], 3).unwrap();
        assert!(shift_fiber_check(&sys).is_err());
    }

    #[test]
    fn polynomial_verdict_checks_homogeneity() {
        let f = text::parse("x1^2 + x2^3 + x3^2", 5, None).unwrap();
        assert_eq!(verdict_for_polynomial(&f, 1, true).unwrap().verdict, Verdict::Inconclusive);
    }
}
