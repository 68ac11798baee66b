//! Coefficient extraction from products of powers without full expansion.

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{Monomial, PolyMod};
use crate::error::{Error, Result};
use crate::field;

/// The term picked from one factor copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermChoice {
    /// Position of the factor in the input list.
    pub factor: usize,
    /// Copy number within that factor's power, starting at 0.
    pub copy: u64,
    #[serde(skip)]
    pub monomial: Monomial,
    pub coefficient: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub coefficient: u32,
    /// One choice per factor copy whose product is the target, present when
    /// requested and the target is reachable at all.
    pub provenance: Option<Vec<TermChoice>>,
}

fn check_factors(target: &Monomial, factors: &[(&PolyMod, u64)]) -> Result<u32> {
    let Some((first, _)) = factors.first() else {
        return Ok(0);
    };
    for (f, _) in factors {
        first.check_compatible(f)?;
    }
    if target.nvars() != first.nvars() {
        return Err(Error::TableMismatch(
            format!("{} variables", target.nvars()),
            first.table().to_string(),
        ));
    }
    Ok(first.p())
}

/// Coefficient of `target` in `∏ P_i^{k_i}`.
///
/// Each factor is first restricted to the terms dividing `target`; the
/// product then only tracks partial monomials that still divide it. With
/// `provenance`, the copies are processed one at a time and every layer is
/// kept so that one explicit factorization can be read back.
pub fn coefficient_of(
    target: &Monomial,
    factors: &[(&PolyMod, u64)],
    provenance: bool,
) -> Result<Extraction> {
    let p = check_factors(target, factors)?;
    if factors.is_empty() {
        let coefficient = u32::from(target.is_one());
        return Ok(Extraction { coefficient, provenance: Some(Vec::new()) });
    }
    let restricted: Vec<PolyMod> =
        factors.iter().map(|(f, _)| f.filter(|m| m.divides(target))).collect();
    if !provenance {
        let mut acc = PolyMod::one(p, *restricted[0].table());
        for (r, (_, k)) in restricted.iter().zip(factors) {
            acc = acc.mul_bounded(&r.power_bounded(*k, target)?, target)?;
        }
        return Ok(Extraction { coefficient: acc.coefficient(target), provenance: None });
    }

    // Layered dynamic program. Entries are kept even when their coefficient
    // cancels to zero: they stay reachable for the read-back.
    let copies: Vec<(usize, u64)> = factors
        .iter()
        .enumerate()
        .flat_map(|(i, (_, k))| (0..*k).map(move |c| (i, c)))
        .collect();
    let mut layers: Vec<FxHashMap<Monomial, u32>> = Vec::with_capacity(copies.len() + 1);
    let mut start = FxHashMap::default();
    start.insert(Monomial::one(target.nvars()), 1);
    layers.push(start);
    for &(i, _) in &copies {
        let prev = layers.last().unwrap();
        let mut next: FxHashMap<Monomial, u32> = FxHashMap::default();
        for (state, c) in prev {
            for (m, a) in restricted[i].terms() {
                if let Some(s) = state.mul_bounded(m, target) {
                    let slot = next.entry(s).or_insert(0);
                    *slot = field::add(*slot, field::mul(*c, *a, p), p);
                }
            }
        }
        if next.is_empty() {
            return Ok(Extraction { coefficient: 0, provenance: None });
        }
        layers.push(next);
    }
    let coefficient = layers.last().unwrap().get(target).copied().unwrap_or(0);
    if coefficient == 0 {
        return Ok(Extraction { coefficient, provenance: None });
    }

    let mut choices = Vec::with_capacity(copies.len());
    let mut state = target.clone();
    for (layer, &(i, copy)) in copies.iter().enumerate().rev() {
        let before = &layers[layer];
        let (m, a) = restricted[i]
            .terms()
            .iter()
            .find(|(m, _)| m.divides(&state) && before.contains_key(&m.quotient_of(&state)))
            .expect("every reachable state has a predecessor");
        state = m.quotient_of(&state);
        choices.push(TermChoice { factor: i, copy, monomial: m.clone(), coefficient: *a });
    }
    choices.reverse();
    Ok(Extraction { coefficient, provenance: Some(choices) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{text, VarTable};

    fn t(n: usize) -> VarTable {
        VarTable::base(n).unwrap()
    }

    #[test]
    fn fermat_cubic_multinomial() {
        let f = text::parse("x1^3 + x2^3 + x3^3", 7, Some(t(3))).unwrap();
        let target = text::parse_monomial("x1^6 x2^6 x3^6", t(3)).unwrap();
        let ex = coefficient_of(&target, &[(&f, 6)], true).unwrap();
        // 6!/(2!2!2!) = 90 ≡ 6 (mod 7)
        assert_eq!(ex.coefficient, 6);
        let picks: Vec<String> = ex
            .provenance
            .unwrap()
            .iter()
            .map(|c| c.monomial.render(&t(3)))
            .collect();
        assert_eq!(picks, ["x1_0^3", "x1_0^3", "x2_0^3", "x2_0^3", "x3_0^3", "x3_0^3"]);
        let plain = coefficient_of(&target, &[(&f, 6)], false).unwrap();
        assert_eq!(plain.coefficient, 6);
    }

    #[test]
    fn empty_product_and_binomial() {
        let f = text::parse("x1 + x2", 5, Some(t(2))).unwrap();
        let one = Monomial::one(2);
        assert_eq!(coefficient_of(&one, &[(&f, 0)], true).unwrap().coefficient, 1);
        assert_eq!(coefficient_of(&one, &[], false).unwrap().coefficient, 1);
        let x2 = text::parse_monomial("x1^2", t(2)).unwrap();
        assert_eq!(coefficient_of(&x2, &[(&f, 2)], false).unwrap().coefficient, 1);
        assert_eq!(coefficient_of(&x2, &[], false).unwrap().coefficient, 0);
    }

    #[test]
    fn cancellation_keeps_reachability_but_reports_zero() {
        // (x + y)^3 over F_3: the x²y coefficient 3 vanishes.
        let f = text::parse("x1 + x2", 3, Some(t(2))).unwrap();
        let target = text::parse_monomial("x1^2 x2", t(2)).unwrap();
        let ex = coefficient_of(&target, &[(&f, 3)], true).unwrap();
        assert_eq!(ex.coefficient, 0);
        assert!(ex.provenance.is_none());
    }

    #[test]
    fn mixed_factors() {
        let f = text::parse("x1 + x2", 5, Some(t(2))).unwrap();
        let g = text::parse("x1 + 2 x2", 5, Some(t(2))).unwrap();
        // coefficient of x1 x2 in (x1+x2)(x1+2x2) = 3
        let target = text::parse_monomial("x1 x2", t(2)).unwrap();
        let ex = coefficient_of(&target, &[(&f, 1), (&g, 1)], true).unwrap();
        assert_eq!(ex.coefficient, 3);
        let prov = ex.provenance.unwrap();
        assert_eq!(prov.len(), 2);
        assert_eq!((prov[0].factor, prov[1].factor), (0, 1));
    }
}
