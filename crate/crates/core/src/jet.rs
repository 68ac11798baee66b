//! Jet-scheme defining equations.
//!
//! For `f ∈ k[x_1..x_N]` the m-jet scheme is cut out by the coefficients `F^(j)`
//! of `t^j` in `f(Σ_j x^(j) t^j)` taken modulo `t^{m+1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{PolyMod, VarTable};

/// The equations `F_l^(j)`, `j = 0..=m`, of the m-jet scheme of `V(f_1..f_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetSystem {
    base: Vec<PolyMod>,
    level: usize,
    table: VarTable,
    equations: Vec<Vec<PolyMod>>,
}

/// Truncated power series in `t` with polynomial coefficients.
struct Series(Vec<PolyMod>);

impl Series {
    fn mul(&self, other: &Series, m: usize) -> Result<Series> {
        let zero = PolyMod::zero(self.0[0].p(), *self.0[0].table());
        let mut out = vec![zero; m + 1];
        for (a, pa) in self.0.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, pb) in other.0.iter().enumerate().take(m + 1 - a) {
                if pb.is_zero() {
                    continue;
                }
                out[a + b] = out[a + b].add(&pa.mul(pb)?)?;
            }
        }
        Ok(Series(out))
    }
}

impl JetSystem {
    pub fn base(&self) -> &[PolyMod] {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn p(&self) -> u32 {
        self.base[0].p()
    }

    pub fn n(&self) -> usize {
        self.table.n
    }

    /// Number of base equations `r`.
    pub fn codim(&self) -> usize {
        self.base.len()
    }

    /// `F_l^(j)`.
    pub fn equation(&self, l: usize, j: usize) -> &PolyMod {
        &self.equations[l][j]
    }

    pub fn equations(&self) -> &[Vec<PolyMod>] {
        &self.equations
    }

    /// All equations, ordered by `l` then `j`, tagged with `(l, j)`.
    pub fn all_equations(&self) -> impl Iterator<Item = ((usize, usize), &PolyMod)> {
        self.equations
            .iter()
            .enumerate()
            .flat_map(|(l, row)| row.iter().enumerate().map(move |(j, f)| ((l, j), f)))
    }

    /// Common degree when every `f_l` is homogeneous of the same degree.
    pub fn degree(&self) -> Option<u32> {
        let d = self.base[0].homogeneous_degree()?;
        self.base.iter().all(|f| f.homogeneous_degree() == Some(d)).then_some(d)
    }

    /// Orders `ord f_l` at the origin.
    pub fn orders(&self) -> Vec<u32> {
        self.base.iter().map(|f| f.order().unwrap_or(0)).collect()
    }
}

/// Generates `F_l^(j)` for every `f_l` by substituting truncated series with
/// fresh coefficient variables.
///
/// The inputs must live in the level-0 slice; a table with `m > 0` is accepted
/// as long as no positive-weight variable occurs.
pub fn jet_equations(f_list: &[PolyMod], m: usize) -> Result<JetSystem> {
    let Some(first) = f_list.first() else {
        return Err(Error::Malformed("at least one defining polynomial is required".into()));
    };
    let (p, n) = (first.p(), first.table().n);
    let base_table = VarTable::base(n)?;
    let mut base = Vec::with_capacity(f_list.len());
    for f in f_list {
        if f.p() != p {
            return Err(Error::FieldMismatch(p, f.p()));
        }
        if f.table().n != n {
            return Err(Error::TableMismatch(first.table().to_string(), f.table().to_string()));
        }
        if f.is_zero() {
            return Err(Error::Malformed("defining polynomial is zero".into()));
        }
        let from = *f.table();
        if f.terms().iter().any(|(mono, _)| {
            (n..from.nvars()).any(|k| mono.get(k) > 0)
        }) {
            return Err(Error::Malformed(format!(
                "{} involves positive-weight jet variables",
                f.render()
            )));
        }
        base.push(f.remap(base_table, |k| (k < n).then_some(k)));
    }

    let table = VarTable::new(n, m)?;
    let zero = PolyMod::zero(p, table);
    let series: Vec<Series> = (1..=n)
        .map(|i| Series((0..=m).map(|j| PolyMod::variable(p, table, table.index(i, j))).collect()))
        .collect();

    let mut equations = Vec::with_capacity(base.len());
    for f in &base {
        // Powers of each substituted series, computed on demand.
        let mut powers: Vec<Vec<Series>> = (0..n)
            .map(|_| vec![Series({
                let mut one = vec![zero.clone(); m + 1];
                one[0] = PolyMod::one(p, table);
                one
            })])
            .collect();
        let mut total = vec![zero.clone(); m + 1];
        for (mono, c) in f.terms() {
            let mut acc = Series({
                let mut s = vec![zero.clone(); m + 1];
                s[0] = PolyMod::constant(p, table, *c);
                s
            });
            for i in 0..n {
                let e = mono.get(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&series[i], m)?;
                    powers[i].push(next);
                }
                acc = acc.mul(&powers[i][e], m)?;
            }
            for (slot, piece) in total.iter_mut().zip(acc.0) {
                *slot = slot.add(&piece)?;
            }
        }
        equations.push(total);
    }
    Ok(JetSystem { base, level: m, table, equations })
}

/// Flat indices of every `x_i^(j)` with `j ≤ up_to`: generators of the ideal of
/// the trivial jet `0_{up_to}`, or of `ψ^{-1}(0_{up_to})` inside a higher level.
pub fn trivial_jet_variables(system: &JetSystem, up_to: usize) -> Result<Vec<usize>> {
    if up_to > system.level {
        return Err(Error::Precondition(format!(
            "level {up_to} exceeds the jet level {}",
            system.level
        )));
    }
    Ok((0..(up_to + 1) * system.n()).collect())
}

/// Sets `x^(0) = 0` and shifts `x_i^(s) ↦ x_i^(s−1)`.
pub fn restrict_to_fiber(f: &PolyMod) -> PolyMod {
    let n = f.table().n;
    f.remap(*f.table(), |k| k.checked_sub(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftCheck {
    pub equation: usize,
    pub j: usize,
    pub passed: bool,
}

/// Checks `F^(j)(0, x^(1), …) = F^(j−d)(x^(1), …, x^(j−d+1))` for `j ∈ [d..m]`.
pub fn shift_identity_check(system: &JetSystem) -> Result<Vec<ShiftCheck>> {
    let mut out = Vec::new();
    for (l, f) in system.base.iter().enumerate() {
        let Some(d) = f.homogeneous_degree() else {
            return Err(Error::Precondition(format!("{} is not homogeneous", f.render())));
        };
        let d = d as usize;
        if system.level < d {
            return Err(Error::Precondition(format!(
                "jet level {} is below the degree {d}",
                system.level
            )));
        }
        for j in d..=system.level {
            let shifted = restrict_to_fiber(&system.equations[l][j]);
            out.push(ShiftCheck { equation: l, j, passed: shifted == system.equations[l][j - d] });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::text;

    fn jets(src: &str, p: u32, m: usize) -> JetSystem {
        jet_equations(&[text::parse(src, p, None).unwrap()], m).unwrap()
    }

    fn in_table(sys: &JetSystem, src: &str) -> PolyMod {
        text::parse(src, sys.p(), Some(*sys.table())).unwrap()
    }

    #[test]
    fn product_of_two_variables() {
        let sys = jets("x1 x2", 7, 1);
        assert_eq!(sys.equation(0, 0), &in_table(&sys, "x1_0 x2_0"));
        assert_eq!(sys.equation(0, 1), &in_table(&sys, "x1_0 x2_1 + x1_1 x2_0"));
    }

    #[test]
    fn square() {
        let sys = jets("x1^2", 7, 2);
        assert_eq!(sys.equation(0, 0), &in_table(&sys, "x1_0^2"));
        assert_eq!(sys.equation(0, 1), &in_table(&sys, "2 x1_0 x1_1"));
        assert_eq!(sys.equation(0, 2), &in_table(&sys, "2 x1_0 x1_2 + x1_1^2"));
    }

    #[test]
    fn low_levels_contain_a_weight_zero_variable() {
        let sys = jets("x1^3 + 2 x1 x2 x3 + x3^3", 5, 4);
        let n = sys.n();
        for j in 0..3 {
            for (mono, _) in sys.equation(0, j).terms() {
                assert!((0..n).any(|k| mono.get(k) > 0));
            }
        }
    }

    #[test]
    fn positive_weight_input_rejected() {
        let t = VarTable::new(2, 1).unwrap();
        let f = text::parse("x1_0 x2_1", 5, Some(t)).unwrap();
        assert!(matches!(jet_equations(&[f], 2), Err(Error::Malformed(_))));
        // A level-1 table is fine when only x^(0) occurs.
        let g = text::parse("x1_0 x2_0", 5, Some(t)).unwrap();
        assert!(jet_equations(&[g], 2).is_ok());
    }

    #[test]
    fn shift_identity_examples() {
        let sys = jets("x1^2", 5, 2);
        let checks = shift_identity_check(&sys).unwrap();
        assert_eq!(checks, vec![ShiftCheck { equation: 0, j: 2, passed: true }]);
        assert_eq!(restrict_to_fiber(sys.equation(0, 2)), in_table(&sys, "x1_0^2"));

        let sys = jets("x1 x2", 5, 2);
        assert_eq!(restrict_to_fiber(sys.equation(0, 2)), in_table(&sys, "x1_0 x2_0"));
        assert!(shift_identity_check(&sys).unwrap().iter().all(|c| c.passed));

        let non_homogeneous = jets("x1^2 + x2^3", 5, 3);
        assert!(shift_identity_check(&non_homogeneous).is_err());
        assert!(shift_identity_check(&jets("x1^3", 5, 2)).is_err());
    }

    #[test]
    fn trivial_jets() {
        let sys = jets("x1 x2", 3, 1);
        assert_eq!(trivial_jet_variables(&sys, 1).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(trivial_jet_variables(&sys, 0).unwrap(), vec![0, 1]);
        let sys = jets("x1 x2 x3", 3, 2);
        assert_eq!(trivial_jet_variables(&sys, 1).unwrap().len(), 6);
        assert!(trivial_jet_variables(&sys, 3).is_err());
    }
}
