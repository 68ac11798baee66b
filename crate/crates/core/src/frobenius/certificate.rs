use crate::error::Result;
use crate::jet::JetSystem;
use crate::poly::{coefficient_of, Monomial, PolyMod};

use super::fedder_residue;

/// The terms taken from the `q − 1` copies of one equation `F_l^(j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorChoice {
    pub equation: usize,
    pub j: usize,
    pub terms: Vec<(Monomial, u32)>,
}

/// A monomial outside `m^[q]` with nonzero coefficient in `F^{q−1}`, together
/// with one expression of it as a product of terms of the factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodMonomialCertificate {
    pub p: u32,
    pub q: u32,
    pub monomial: Monomial,
    /// The full coefficient of `monomial` in `F^{q−1}`.
    pub coefficient: u32,
    pub provenance: Vec<FactorChoice>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateCheck {
    pub below_bracket: bool,
    pub provenance_complete: bool,
    pub provenance_terms_valid: bool,
    pub product_matches: bool,
    pub coefficient_matches: bool,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.below_bracket
            && self.provenance_complete
            && self.provenance_terms_valid
            && self.product_matches
            && self.coefficient_matches
    }
}

/// Certificate for the least surviving monomial of `F^{q−1} mod m^[q]`, or
/// `None` when the residue vanishes.
pub fn good_monomial(system: &JetSystem, q: u32) -> Result<Option<GoodMonomialCertificate>> {
    let residue = fedder_residue(system, q)?;
    let Some((monomial, coefficient)) = residue.least_term().cloned() else {
        return Ok(None);
    };
    let tags: Vec<(usize, usize)> = system.all_equations().map(|(t, _)| t).collect();
    let factors: Vec<(&PolyMod, u64)> =
        system.all_equations().map(|(_, f)| (f, q as u64 - 1)).collect();
    let extraction = coefficient_of(&monomial, &factors, true)?;
    assert_eq!(
        extraction.coefficient, coefficient,
        "targeted extraction disagrees with the residue"
    );
    let mut provenance: Vec<FactorChoice> = tags
        .iter()
        .map(|&(equation, j)| FactorChoice { equation, j, terms: Vec::new() })
        .collect();
    for choice in extraction.provenance.expect("nonzero coefficient has a factorization") {
        provenance[choice.factor].terms.push((choice.monomial, choice.coefficient));
    }
    Ok(Some(GoodMonomialCertificate { p: system.p(), q, monomial, coefficient, provenance }))
}

impl GoodMonomialCertificate {
    /// Re-derives every claim of the certificate from the system alone.
    pub fn revalidate(&self, system: &JetSystem) -> Result<CertificateCheck> {
        let below_bracket = self.monomial.below(self.q);
        let tags: Vec<(usize, usize)> = system.all_equations().map(|(t, _)| t).collect();
        let provenance_complete = self.provenance.len() == tags.len()
            && self.provenance.iter().zip(&tags).all(|(c, &(l, j))| {
                c.equation == l && c.j == j && c.terms.len() as u64 == self.q as u64 - 1
            });
        let provenance_terms_valid = self.provenance.iter().all(|c| {
            c.equation < system.codim()
                && c.j <= system.level()
                && c.terms.iter().all(|(m, a)| {
                    *a != 0 && system.equation(c.equation, c.j).coefficient(m) == *a
                })
        });
        let mut product = Monomial::one(system.table().nvars());
        let mut product_matches = true;
        for (m, _) in self.provenance.iter().flat_map(|c| c.terms.iter()) {
            match product.mul_bounded(m, &self.monomial) {
                Some(next) => product = next,
                None => {
                    product_matches = false;
                    break;
                }
            }
        }
        product_matches &= product == self.monomial;
        let factors: Vec<(&PolyMod, u64)> =
            system.all_equations().map(|(_, f)| (f, self.q as u64 - 1)).collect();
        let recomputed = coefficient_of(&self.monomial, &factors, false)?.coefficient;
        let coefficient_matches = recomputed == self.coefficient && recomputed != 0;
        Ok(CertificateCheck {
            below_bracket,
            provenance_complete,
            provenance_terms_valid,
            product_matches,
            coefficient_matches,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::jet_equations;
    use crate::poly::{text, VarTable};

    #[test]
    fn two_by_two_quadric() {
        let f = text::parse("x1 x2 + x3 x4", 3, Some(VarTable::base(4).unwrap())).unwrap();
        let sys = jet_equations(&[f], 0).unwrap();
        let cert = good_monomial(&sys, 3).unwrap().unwrap();
        assert_eq!(cert.monomial.render(sys.table()), "x3_0^2 x4_0^2");
        assert_eq!(cert.coefficient, 1);
        assert_eq!(cert.provenance[0].terms.len(), 2);
        assert!(cert.revalidate(&sys).unwrap().passed());
        let residue = crate::frobenius::fedder_residue(&sys, 3).unwrap();
        let mixed = text::parse_monomial("x1 x2 x3 x4", *sys.table()).unwrap();
        assert_eq!(residue.coefficient(&mixed), 2);
    }

    #[test]
    fn tampered_certificates_fail() {
        let f = text::parse("x1^3 + x2^3 + x3^3", 7, Some(VarTable::base(3).unwrap())).unwrap();
        let sys = jet_equations(&[f], 0).unwrap();
        let cert = good_monomial(&sys, 7).unwrap().unwrap();
        assert!(cert.revalidate(&sys).unwrap().passed());

        let mut bad = cert.clone();
        bad.coefficient = (bad.coefficient + 1) % 7;
        assert!(!bad.revalidate(&sys).unwrap().coefficient_matches);

        let mut bad = cert.clone();
        bad.provenance[0].terms.pop();
        let check = bad.revalidate(&sys).unwrap();
        assert!(!check.provenance_complete && !check.product_matches);
    }
}
