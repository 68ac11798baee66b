//! The monomials `L_1, L_2, L_3` and `M = L_1^a L_2^b L_3^c` built from terms
//! of the jet equations of a general form of degree `d` in `N ≥ d²` variables.

use serde::Serialize;

use super::decomposition::{decompose_exponent, ExponentDecomposition};
use crate::error::{Error, Result};
use crate::field;
use crate::frobenius::check_frobenius_power;
use crate::jet::jet_equations;
use crate::poly::{coefficient_of, Monomial, PolyMod, VarTable};

/// One term `L_k(j)` picked from `F^(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LTerm {
    pub j: usize,
    /// Index tuple of the ξ coefficient, 1-based and nondecreasing.
    pub xi: Vec<usize>,
    /// Integer factor in front of ξ: the number of ways the term arises.
    pub multiplier: u32,
    #[serde(skip)]
    pub monomial: Monomial,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LMonomialSet {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    #[serde(skip)]
    pub table: VarTable,
    pub l1: Vec<LTerm>,
    pub l2: Vec<LTerm>,
    pub l3: Vec<LTerm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LInvariants {
    pub terms_have_degree_d: bool,
    pub terms_have_weight_j: bool,
    pub l1_variables_at_most_once: bool,
    pub l2_weight_zero_count: bool,
    pub l2_positive_weight_at_most_once: bool,
    pub l3_weight_zero_count: bool,
    pub l3_positive_weight_at_most_once: bool,
}

impl LInvariants {
    pub fn passed(&self) -> bool {
        self.terms_have_degree_d
            && self.terms_have_weight_j
            && self.l1_variables_at_most_once
            && self.l2_weight_zero_count
            && self.l2_positive_weight_at_most_once
            && self.l3_weight_zero_count
            && self.l3_positive_weight_at_most_once
    }
}

fn term(table: &VarTable, j: usize, xi: Vec<usize>, multiplier: u32, vars: &[(usize, usize)]) -> LTerm {
    let mut monomial = Monomial::one(table.nvars());
    for &(i, w) in vars {
        let k = table.index(i, w);
        monomial.set(k, (monomial.get(k) + 1) as u8);
    }
    let text = monomial.render(table);
    LTerm { j, xi, multiplier, monomial, text }
}

/// Term of `F^(j)` for the power `x_v^d`: `(x_v^(0))^d` at `j = 0` and
/// `d·(x_v^(0))^{d−1} x_v^(j)` above.
fn power_term(table: &VarTable, d: usize, v: usize, j: usize) -> LTerm {
    let mut vars = vec![(v, 0); d];
    let multiplier = if j == 0 {
        1
    } else {
        vars[d - 1] = (v, j);
        d as u32
    };
    term(table, j, vec![v; d], multiplier, &vars)
}

pub fn build_l_monomials(d: usize, n: usize, m: usize) -> Result<LMonomialSet> {
    if d < 2 {
        return Err(Error::Precondition(format!("the construction needs d ≥ 2, got d = {d}")));
    }
    if d * d > n {
        return Err(Error::Precondition(format!("the construction needs d² ≤ N, got d = {d}, N = {n}")));
    }
    let table = VarTable::new(n, m)?;
    // L1(d·s + k) uses block k, i.e. x_{kd+1..kd+d}: the first d − k at
    // weight s and the last k at weight s + 1.
    let l1 = (0..=m)
        .map(|j| {
            let (s, k) = (j / d, j % d);
            let block: Vec<usize> = (k * d + 1..=k * d + d).collect();
            let vars: Vec<(usize, usize)> = block
                .iter()
                .enumerate()
                .map(|(t, &i)| (i, if t < d - k { s } else { s + 1 }))
                .collect();
            term(&table, j, block, 1, &vars)
        })
        .collect();
    let l2 = (0..=m).map(|j| power_term(&table, d, 2 * d, j)).collect();
    let l3 = (0..=m).map(|j| power_term(&table, d, d, j)).collect();
    Ok(LMonomialSet { d, n, m, table, l1, l2, l3 })
}

fn product(terms: &[LTerm], nvars: usize) -> Vec<u64> {
    let mut out = vec![0u64; nvars];
    for t in terms {
        for (slot, &e) in out.iter_mut().zip(t.monomial.exponents()) {
            *slot += e as u64;
        }
    }
    out
}

impl LMonomialSet {
    /// Exponent vectors of `L_1, L_2, L_3`.
    pub fn products(&self) -> [Vec<u64>; 3] {
        let nv = self.table.nvars();
        [product(&self.l1, nv), product(&self.l2, nv), product(&self.l3, nv)]
    }

    pub fn check_invariants(&self) -> LInvariants {
        let all = || self.l1.iter().chain(&self.l2).chain(&self.l3);
        let [p1, p2, p3] = self.products();
        let n = self.n;
        let heavy = (self.m * (self.d - 1) + self.d) as u64;
        let single_power = |prod: &[u64], v: usize| {
            let zero_ok = prod[v - 1] == heavy
                && (0..n).filter(|&k| k != v - 1).all(|k| prod[k] == 0);
            let positive_ok = prod[n..].iter().all(|&e| e <= 1);
            (zero_ok, positive_ok)
        };
        let (l2z, l2p) = single_power(&p2, 2 * self.d);
        let (l3z, l3p) = single_power(&p3, self.d);
        LInvariants {
            terms_have_degree_d: all().all(|t| t.monomial.degree() as usize == self.d),
            terms_have_weight_j: all().all(|t| t.monomial.weight(&self.table) as usize == t.j),
            l1_variables_at_most_once: p1.iter().all(|&e| e <= 1),
            l2_weight_zero_count: l2z,
            l2_positive_weight_at_most_once: l2p,
            l3_weight_zero_count: l3z,
            l3_positive_weight_at_most_once: l3p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeadroomReport {
    pub q: u64,
    /// Multiplicity of `x_{2d}^(0)` in `M`.
    pub x2d_weight_zero: u64,
    /// Multiplicity of `x_d^(0)` in `M`.
    pub xd_weight_zero: u64,
    pub weight_zero_max: u64,
    /// `max{b(md − m + d), a + c(md − m + d)}`.
    pub weight_zero_bound: u64,
    pub positive_weight_max: u64,
    /// `a + b`.
    pub positive_weight_bound: u64,
    /// `q − 1 − weight_zero_max`.
    pub weight_zero_margin: i64,
    pub positive_weight_margin: i64,
    pub outside_bracket: bool,
}

/// `M = L_1^a L_2^b L_3^c` as a wide exponent vector over `VarTable(N, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MMonomial {
    pub decomposition: ExponentDecomposition,
    pub lset: LMonomialSet,
    pub exponents: Vec<u64>,
    pub headroom: HeadroomReport,
}

impl MMonomial {
    /// Packs `M` as a [`Monomial`]; fails when an exponent exceeds the
    /// packed range.
    pub fn to_monomial(&self) -> Result<Monomial> {
        Monomial::try_from_wide(&self.exponents)
    }

    pub fn render(&self) -> String {
        let table = &self.lset.table;
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let (i, j) = table.var(k);
                if e == 1 { format!("x{i}_{j}") } else { format!("x{i}_{j}^{e}") }
            })
            .collect();
        if parts.is_empty() { "1".into() } else { parts.join(" ") }
    }
}

pub fn build_m_monomial(d: usize, n: usize, m: usize, p: u64, e: u32) -> Result<MMonomial> {
    if !field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let bound = (m * (d.max(1) - 1) + d) as u64;
    if p <= bound {
        return Err(Error::Precondition(format!(
            "the construction needs p > m(d − 1) + d = {bound}, got p = {p}"
        )));
    }
    let dec = decompose_exponent(p, e)?;
    let lset = build_l_monomials(d, n, m)?;
    let [p1, p2, p3] = lset.products();
    let exponents: Vec<u64> = (0..p1.len())
        .map(|k| dec.a * p1[k] + dec.b * p2[k] + dec.c * p3[k])
        .collect();
    let q = dec.q();
    let heavy = bound;
    let weight_zero_max = exponents[..n].iter().copied().max().unwrap_or(0);
    let positive_weight_max = exponents[n..].iter().copied().max().unwrap_or(0);
    let weight_zero_bound = (dec.b * heavy).max(dec.a + dec.c * heavy);
    let positive_weight_bound = dec.a + dec.b;
    let outside_bracket = exponents.iter().all(|&x| x < q);
    if weight_zero_bound < q && positive_weight_bound < q {
        assert!(outside_bracket, "M must avoid m^[q] when both bounds are below q");
    }
    let headroom = HeadroomReport {
        q,
        x2d_weight_zero: exponents[2 * d - 1],
        xd_weight_zero: exponents[d - 1],
        weight_zero_max,
        weight_zero_bound,
        positive_weight_max,
        positive_weight_bound,
        weight_zero_margin: q as i64 - 1 - weight_zero_max as i64,
        positive_weight_margin: q as i64 - 1 - positive_weight_max as i64,
        outside_bracket,
    };
    Ok(MMonomial { decomposition: dec, lset, exponents, headroom })
}

/// Coefficient of `M` in `∏_j (F^(j))^{q−1}` for the concrete form `f`.
pub fn verify_m_membership(mmono: &MMonomial, f: &PolyMod) -> Result<u32> {
    let dec = &mmono.decomposition;
    if f.p() as u64 != dec.p {
        return Err(Error::FieldMismatch(dec.p as u32, f.p()));
    }
    if f.table().n != mmono.lset.n {
        return Err(Error::TableMismatch(
            format!("N = {}", mmono.lset.n),
            f.table().to_string(),
        ));
    }
    let q = u32::try_from(dec.q()).map_err(|_| Error::Range(format!("q = {} too large", dec.q())))?;
    check_frobenius_power(f.p(), q)?;
    let system = jet_equations(std::slice::from_ref(f), mmono.lset.m)?;
    let target = mmono.to_monomial()?;
    let factors: Vec<(&PolyMod, u64)> =
        system.all_equations().map(|(_, g)| (g, q as u64 - 1)).collect();
    Ok(coefficient_of(&target, &factors, false)?.coefficient)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(ts: &[LTerm]) -> Vec<&str> {
        ts.iter().map(|t| t.text.as_str()).collect()
    }

    #[test]
    fn quadric_in_four_variables() {
        let set = build_l_monomials(2, 4, 1).unwrap();
        assert_eq!(texts(&set.l1), ["x1_0 x2_0", "x3_0 x4_1"]);
        assert_eq!(texts(&set.l2), ["x4_0^2", "x4_0 x4_1"]);
        assert_eq!(texts(&set.l3), ["x2_0^2", "x2_0 x2_1"]);
        assert_eq!(set.l2[1].multiplier, 2);
        assert_eq!(set.products()[1], vec![0, 0, 0, 3, 0, 0, 0, 1]);
        assert!(set.check_invariants().passed());

        let set = build_l_monomials(2, 4, 0).unwrap();
        assert_eq!(texts(&set.l1), ["x1_0 x2_0"]);
    }

    #[test]
    fn cubic_sliding_window() {
        let set = build_l_monomials(3, 9, 2).unwrap();
        assert_eq!(set.l1[2].text, "x7_0 x8_1 x9_1");
        assert_eq!(set.l1[2].xi, vec![7, 8, 9]);
        assert!(set.check_invariants().passed());
        assert!(build_l_monomials(3, 8, 2).is_err());
        assert!(build_l_monomials(1, 4, 2).is_err());
    }

    #[test]
    fn headroom_for_the_reference_instance() {
        let mm = build_m_monomial(2, 4, 1, 5, 2).unwrap();
        let h = &mm.headroom;
        assert_eq!((mm.decomposition.a, mm.decomposition.b, mm.decomposition.c), (20, 4, 0));
        assert_eq!(h.x2d_weight_zero, 12);
        assert_eq!(h.positive_weight_max, 24);
        assert_eq!(h.positive_weight_bound, 24);
        assert_eq!(h.weight_zero_max, h.weight_zero_bound);
        assert!(h.outside_bracket);
        assert!(build_m_monomial(2, 4, 1, 5, 1).is_err());
        assert!(build_m_monomial(2, 4, 3, 5, 2).is_err());
    }
}
