//! Exponent matrices: `A` read off a good-monomial certificate and the
//! reference matrix `C`.
//!
//! Rows index the weight `i`, columns the equation `F^(j)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::GoodMonomialCertificate;
use crate::jet::JetSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixRole {
    AExtracted,
    CReference,
    LpWitness,
    GridWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub role: MatrixRole,
    pub entries: Vec<Vec<BigRational>>,
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `"3"`, `"1/2"`, `"-4/3"`.
pub fn rational_text(r: &BigRational) -> String {
    r.to_string()
}

impl ExponentMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `α_i = Σ_j a_ij`.
    pub fn row_sums(&self) -> Vec<BigRational> {
        self.entries.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<BigRational> {
        (0..self.size()).map(|j| self.entries.iter().map(|row| &row[j]).sum()).collect()
    }

    /// `Σ_i i·a_ij`.
    pub fn weighted_column_sums(&self) -> Vec<BigRational> {
        (0..self.size())
            .map(|j| {
                self.entries
                    .iter()
                    .enumerate()
                    .map(|(i, row)| int(i as i64) * &row[j])
                    .sum()
            })
            .collect()
    }

    pub fn max_row_sum(&self) -> BigRational {
        self.row_sums().into_iter().max().unwrap_or_else(BigRational::zero)
    }

    pub fn text_rows(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(rational_text).collect()).collect()
    }

    /// Conditions (1)–(4); (2) needs `d` and (4) needs `N`.
    pub fn conditions(&self, d: Option<u32>, n: Option<usize>) -> MatrixConditions {
        let upper_triangular = self
            .entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().take(i).all(Zero::is_zero));
        let nonnegative = self.entries.iter().flatten().all(|x| !x.is_negative());
        let column_sums =
            d.map(|d| self.column_sums().iter().all(|s| *s == int(d as i64)));
        let weighted_column_sums = self
            .weighted_column_sums()
            .iter()
            .enumerate()
            .all(|(j, s)| *s == int(j as i64));
        let row_sums_within_n =
            n.map(|n| self.row_sums().iter().all(|s| *s <= int(n as i64)));
        MatrixConditions {
            nonnegative,
            upper_triangular,
            column_sums,
            weighted_column_sums,
            row_sums_within_n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatrixConditions {
    pub nonnegative: bool,
    /// (1) `a_ij = 0` for `i > j`.
    pub upper_triangular: bool,
    /// (2) `Σ_i a_ij = d`.
    pub column_sums: Option<bool>,
    /// (3) `Σ_i i·a_ij = j`.
    pub weighted_column_sums: bool,
    /// (4) `α_i ≤ N`.
    pub row_sums_within_n: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AExtraction {
    pub matrix: ExponentMatrix,
    /// `a_ijk`: power of `x_k^(i)` in the product `x(j)` of the terms taken
    /// from `F^(j)`, indexed `[i][j][k]`.
    pub raw: Vec<Vec<Vec<u64>>>,
    /// `α_i` summed directly from the raw powers.
    pub raw_row_sums: Vec<BigRational>,
    pub conditions: MatrixConditions,
}

impl AExtraction {
    pub fn row_sums_agree(&self) -> bool {
        self.raw_row_sums == self.matrix.row_sums()
    }
}

pub fn extract_matrix_a(cert: &GoodMonomialCertificate, system: &JetSystem) -> Result<AExtraction> {
    if system.codim() != 1 {
        return Err(Error::Precondition("matrix extraction is defined for hypersurfaces".into()));
    }
    let p = system.p();
    if cert.q != p {
        return Err(Error::Precondition(format!("matrix extraction needs q = p, got q = {}", cert.q)));
    }
    let (m, n) = (system.level(), system.n());
    if cert.provenance.len() != m + 1
        || cert.provenance.iter().any(|c| c.terms.len() as u32 != p - 1)
    {
        return Err(Error::Malformed("certificate provenance missing or incomplete".into()));
    }
    let table = system.table();
    let mut raw = vec![vec![vec![0u64; n]; m + 1]; m + 1];
    for choice in &cert.provenance {
        for (mono, _) in &choice.terms {
            for (flat, &e) in mono.exponents().iter().enumerate() {
                let (k, i) = table.var(flat);
                raw[i][choice.j][k - 1] += e as u64;
            }
        }
    }
    let denom = BigRational::from_integer(BigInt::from(p - 1));
    let entries: Vec<Vec<BigRational>> = raw
        .iter()
        .map(|row| row.iter().map(|ks| int(ks.iter().sum::<u64>() as i64) / &denom).collect())
        .collect();
    let raw_row_sums = raw
        .iter()
        .map(|row| {
            let total: u64 = row.iter().flatten().sum();
            int(total as i64) / &denom
        })
        .collect();
    let matrix = ExponentMatrix { role: MatrixRole::AExtracted, entries };
    let conditions = matrix.conditions(system.degree(), Some(n));
    Ok(AExtraction { matrix, raw, raw_row_sums, conditions })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CReport {
    pub d: u32,
    pub m: usize,
    pub matrix: ExponentMatrix,
    /// `γ_i = Σ_j c_ij`.
    pub gamma: Vec<BigRational>,
    pub conditions: MatrixConditions,
    /// Whether `γ` matches `d(d+1)/2, d², …, d², d(d+1)/2, 0, …` when `m = d·l`.
    pub gamma_formula: Option<bool>,
}

/// `c_ij = d − u` when `j = d·i ± u` for some `0 ≤ u ≤ d − 1`, else `0`.
pub fn matrix_c(d: u32, m: usize) -> Result<CReport> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let di = d as i64;
    let entries: Vec<Vec<BigRational>> = (0..=m as i64)
        .map(|i| {
            (0..=m as i64)
                .map(|j| {
                    let u = (j - di * i).abs();
                    if u < di { int(di - u) } else { int(0) }
                })
                .collect()
        })
        .collect();
    let matrix = ExponentMatrix { role: MatrixRole::CReference, entries };
    let gamma = matrix.row_sums();
    let conditions = matrix.conditions(Some(d), None);
    let gamma_formula = (m > 0 && m.is_multiple_of(d as usize)).then(|| {
        let l = m / d as usize;
        gamma.iter().enumerate().all(|(i, g)| {
            let expect = if i == 0 || i == l {
                di * (di + 1) / 2
            } else if i < l {
                di * di
            } else {
                0
            };
            *g == int(expect)
        })
    });
    Ok(CReport { d, m, matrix, gamma, conditions, gamma_formula })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::good_monomial;
    use crate::jet::jet_equations;
    use crate::poly::{text, VarTable};

    #[test]
    fn c_for_d2_m4() {
        let c = matrix_c(2, 4).unwrap();
        let rows = c.matrix.text_rows();
        assert_eq!(rows[0], ["2", "1", "0", "0", "0"]);
        assert_eq!(rows[1], ["0", "1", "2", "1", "0"]);
        assert_eq!(rows[2], ["0", "0", "0", "1", "2"]);
        assert!(rows[3].iter().chain(&rows[4]).all(|x| x == "0"));
        let gamma: Vec<String> = c.gamma.iter().map(rational_text).collect();
        assert_eq!(gamma, ["3", "4", "3", "0", "0"]);
        assert_eq!(c.gamma_formula, Some(true));
        assert!(c.conditions.upper_triangular);
        assert_eq!(c.conditions.column_sums, Some(true));
        assert!(c.conditions.weighted_column_sums);
    }

    #[test]
    fn c_for_d1_is_the_identity() {
        let c = matrix_c(1, 3).unwrap();
        for (i, row) in c.matrix.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, int(i64::from(i == j)));
            }
        }
        assert!(c.gamma.iter().all(|g| *g == int(1)));
    }

    #[test]
    fn a_for_the_split_quadric() {
        let f = text::parse("x1 x2 + x3 x4", 3, Some(VarTable::base(4).unwrap())).unwrap();
        let sys = jet_equations(&[f], 0).unwrap();
        let cert = good_monomial(&sys, 3).unwrap().unwrap();
        let a = extract_matrix_a(&cert, &sys).unwrap();
        assert_eq!(a.matrix.text_rows(), vec![vec!["2".to_string()]]);
        let c = a.conditions;
        assert!(c.upper_triangular && c.weighted_column_sums);
        assert_eq!((c.column_sums, c.row_sums_within_n), (Some(true), Some(true)));
        assert!(a.row_sums_agree());
    }

    #[test]
    fn a_requires_q_equal_p() {
        let f = text::parse("x1", 3, Some(VarTable::base(2).unwrap())).unwrap();
        let sys = jet_equations(&[f], 1).unwrap();
        let cert = good_monomial(&sys, 9).unwrap().unwrap();
        assert!(extract_matrix_a(&cert, &sys).is_err());
        let cert = good_monomial(&sys, 3).unwrap().unwrap();
        let a = extract_matrix_a(&cert, &sys).unwrap();
        assert_eq!(a.matrix.text_rows(), [["1", "0"], ["0", "1"]]);
    }
}
