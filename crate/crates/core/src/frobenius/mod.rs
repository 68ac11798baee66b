//! Fedder-type F-purity decisions, good-monomial certificates and one-sided
//! F-regularity probes for jet systems.
//!
//! For a complete intersection cut out by the equations `F_l^(j)` with product
//! `F`, the quotient is F-pure iff `F^{p−1} ∉ m^[p]`, and F-regular iff every
//! nonzero `g` outside the ideal has some `q = p^e` with `g·F^{q−1} ∉ m^[q]`.

mod certificate;
mod residue;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::JetSystem;
use crate::poly::{Monomial, PolyMod};

pub use certificate::{good_monomial, CertificateCheck, FactorChoice, GoodMonomialCertificate};
pub use residue::{
    check_frobenius_power, system_product, FrobeniusResidue, ResidueSlices, SliceKey,
};

/// `F^{q−1} mod m^[q]` over the product of all equations of the system.
/// The result is empty iff `F^{q−1} ∈ m^[q]`.
pub fn fedder_residue(system: &JetSystem, q: u32) -> Result<PolyMod> {
    FrobeniusResidue::new(system, q)?.materialize()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPurity {
    pub f_pure: bool,
    pub certificate: Option<GoodMonomialCertificate>,
}

/// Fedder's criterion at `q = p`. The caller is responsible for the system
/// being a complete intersection at the trivial jet.
pub fn is_f_pure(system: &JetSystem) -> Result<FPurity> {
    let certificate = good_monomial(system, system.p())?;
    Ok(FPurity { f_pure: certificate.is_some(), certificate })
}

/// Outcome of probing one test element `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ProbeVerdict {
    /// `g·F^{q−1} ∉ m^[q]` at `q = p^e`.
    CertifiedRegularForG {
        e: u32,
        q: u32,
        #[serde(skip)]
        witness: Monomial,
        witness_text: String,
        /// `q − (largest exponent in the witness)`.
        headroom: u32,
    },
    /// No witness for `e ≤ e_max`; this never certifies non-regularity.
    Inconclusive { e_max: u32 },
}

impl ProbeVerdict {
    pub fn is_witnessed(&self) -> bool {
        matches!(self, ProbeVerdict::CertifiedRegularForG { .. })
    }
}

/// Screens the test element: nonzero, and for a hypersurface not a multiple
/// of a single equation. Full ideal membership is not decided.
fn screen_test_element(system: &JetSystem, g: &PolyMod) -> Result<()> {
    if system.p() != g.p() {
        return Err(Error::FieldMismatch(system.p(), g.p()));
    }
    if g.table() != system.table() {
        return Err(Error::TableMismatch(g.table().to_string(), system.table().to_string()));
    }
    if g.is_zero() {
        return Err(Error::Precondition("the test element g must be nonzero".into()));
    }
    if system.codim() == 1 {
        for (_, f) in system.all_equations() {
            if g.divisible_by(f)? {
                return Err(Error::Precondition(format!(
                    "g = {} lies in the ideal of the system (divisible by {})",
                    g.render(),
                    f.render()
                )));
            }
        }
    }
    Ok(())
}

/// Least monomial of `g·R mod m^[q]` for the residue `R`, if nonzero.
fn product_witness(residue: &FrobeniusResidue, g: &PolyMod) -> Result<Option<Monomial>> {
    let q = residue.q();
    if q == g.p() {
        let r = residue.materialize()?;
        return Ok(g.mul_pruned(&r, q)?.least_term().map(|(m, _)| m.clone()));
    }
    // Slice by the variables of g: multiplying by a term of g only moves the
    // exponents on those variables, so each slice of g·R is a combination of
    // residue slices.
    let vars = g.support_variables();
    let slices = residue.slices(&vars);
    let residue_keys = slices.keys();
    let g_keys: Vec<(SliceKey, &Monomial, u32)> =
        g.terms().iter().map(|(m, c)| (m.project(&vars), m, *c)).collect();
    let mut candidates: Vec<SliceKey> = residue_keys
        .iter()
        .flat_map(|k| {
            g_keys.iter().filter_map(move |(t, _, _)| {
                k.iter()
                    .zip(t.iter())
                    .map(|(a, b)| {
                        let s = *a as u32 + *b as u32;
                        (s < q).then_some(s as u8)
                    })
                    .collect::<Option<SliceKey>>()
            })
        })
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    let key_set: rustc_hash::FxHashSet<&SliceKey> = residue_keys.iter().collect();
    for kappa in candidates {
        let mut acc = PolyMod::zero(g.p(), *g.table());
        for (t, tm, c) in &g_keys {
            if t.iter().zip(kappa.iter()).any(|(a, b)| a > b) {
                continue;
            }
            let lambda: SliceKey = kappa.iter().zip(t.iter()).map(|(k, a)| k - a).collect();
            if !key_set.contains(&lambda) {
                continue;
            }
            let piece = slices.slice(&lambda)?;
            let term = PolyMod::from_terms(g.p(), *g.table(), [((*tm).clone(), *c)]);
            acc = acc.add(&term.mul_pruned(&piece, q)?)?;
        }
        if let Some((m, _)) = acc.least_term() {
            return Ok(Some(m.clone()));
        }
    }
    Ok(None)
}

/// Tests `g·F^{q−1} ∉ m^[q]` for `q = p, p², …, p^{e_max}` and reports the
/// least witnessing power.
pub fn f_regular_probe(system: &JetSystem, g: &PolyMod, e_max: u32) -> Result<ProbeVerdict> {
    screen_test_element(system, g)?;
    let p = system.p();
    if e_max == 0 {
        return Err(Error::Precondition("e_max must be at least 1".into()));
    }
    let q_max = (p as u64).checked_pow(e_max).unwrap_or(u64::MAX);
    check_frobenius_power(p, q_max.min(u32::MAX as u64) as u32)?;
    for e in 1..=e_max {
        let q = p.pow(e);
        let residue = FrobeniusResidue::new(system, q)?;
        if let Some(witness) = product_witness(&residue, g)? {
            let headroom = q - witness.max_exponent();
            let witness_text = witness.render(system.table());
            return Ok(ProbeVerdict::CertifiedRegularForG { e, q, witness, witness_text, headroom });
        }
    }
    Ok(ProbeVerdict::Inconclusive { e_max })
}

/// Default test panel: every variable and every nonzero partial derivative
/// of every equation, in that order, without duplicates.
pub fn default_panel(system: &JetSystem) -> Vec<PolyMod> {
    let (p, table) = (system.p(), *system.table());
    let mut panel: Vec<PolyMod> =
        (0..table.nvars()).map(|k| PolyMod::variable(p, table, k)).collect();
    for (_, f) in system.all_equations() {
        for k in 0..table.nvars() {
            let df = f.derivative(k);
            if !df.is_zero() && !panel.contains(&df) {
                panel.push(df);
            }
        }
    }
    panel
}

/// Every variable of the system as a test element.
pub fn variable_panel(system: &JetSystem) -> Vec<PolyMod> {
    let (p, table) = (system.p(), *system.table());
    (0..table.nvars()).map(|k| PolyMod::variable(p, table, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::jet_equations;
    use crate::poly::{text, VarTable};

    fn system(src: &str, p: u32, n: usize, m: usize) -> JetSystem {
        let f = text::parse(src, p, Some(VarTable::base(n).unwrap())).unwrap();
        jet_equations(&[f], m).unwrap()
    }

    #[test]
    fn residue_examples() {
        let r = fedder_residue(&system("x1", 5, 1, 0), 5).unwrap();
        assert_eq!(r.render(), "1 x1_0^4");
        assert!(fedder_residue(&system("x1^2", 3, 1, 0), 3).unwrap().is_zero());
        assert!(fedder_residue(&system("x1^3 + x2^3 + x3^3", 5, 3, 0), 5).unwrap().is_zero());
        assert!(!fedder_residue(&system("x1^3 + x2^3 + x3^3", 7, 3, 0), 7).unwrap().is_zero());
        assert!(fedder_residue(&system("x1", 5, 1, 0), 10).is_err());
        assert!(fedder_residue(&system("x1", 5, 1, 0), 625).is_err());
    }

    #[test]
    fn smooth_coordinate_hyperplane_is_f_pure_at_every_level() {
        for m in 0..3 {
            let sys = system("x1", 5, 1, m);
            let res = is_f_pure(&sys).unwrap();
            assert!(res.f_pure);
            let cert = res.certificate.unwrap();
            assert!(cert.monomial.exponents().iter().all(|&e| e == 4));
        }
    }

    #[test]
    fn probe_examples() {
        let sys = system("x1", 3, 2, 0);
        let g = text::parse("x2", 3, Some(*sys.table())).unwrap();
        let v = f_regular_probe(&sys, &g, 1).unwrap();
        assert!(matches!(v, ProbeVerdict::CertifiedRegularForG { e: 1, q: 3, .. }));

        let g = text::parse("x1", 3, Some(*sys.table())).unwrap();
        assert!(matches!(f_regular_probe(&sys, &g, 1), Err(Error::Precondition(_))));
        let zero = PolyMod::zero(3, *sys.table());
        assert!(matches!(f_regular_probe(&sys, &zero, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn probe_is_inconclusive_for_non_f_pure_systems() {
        // x1^2 is not F-pure, so nothing survives at any q.
        let sys = system("x1^2", 3, 2, 0);
        let g = text::parse("x2", 3, Some(*sys.table())).unwrap();
        assert_eq!(f_regular_probe(&sys, &g, 2).unwrap(), ProbeVerdict::Inconclusive { e_max: 2 });
    }

    #[test]
    fn sliced_probe_agrees_with_materialized_product() {
        let sys = system("x1^2 + x2^2 + x3^2", 3, 3, 1);
        let residue = FrobeniusResidue::new(&sys, 9).unwrap();
        let full = residue.materialize().unwrap();
        for g in default_panel(&sys).into_iter().take(12) {
            let direct = g.mul_pruned(&full, 9).unwrap();
            let sliced = product_witness(&residue, &g).unwrap();
            assert_eq!(direct.is_zero(), sliced.is_none(), "g = {}", g.render());
            if let Some(w) = sliced {
                assert_ne!(direct.coefficient(&w), 0);
            }
        }
    }
}
