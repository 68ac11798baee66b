//! Exact two-phase simplex over the rationals with Bland's rule, and the
//! min-max-row-sum program over matrices satisfying conditions (1)–(3).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{int, matrix_c, ExponentMatrix, MatrixRole};
use crate::error::{Error, Result};

/// `min c·x` subject to `a_eq x = b_eq`, `a_le x ≤ b_le`, `x ≥ 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub c: Vec<BigRational>,
    pub a_eq: Vec<Vec<BigRational>>,
    pub b_eq: Vec<BigRational>,
    pub a_le: Vec<Vec<BigRational>>,
    pub b_le: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: BigRational, x: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize, cost: &mut [BigRational], obj: &mut BigRational) {
        let pv = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &pv;
        }
        self.rhs[r] /= &pv;
        let (prow, prhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !cost[col].is_zero() {
            let f = cost[col].clone();
            for (x, y) in cost.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            *obj -= &f * &prhs;
        }
        self.basis[r] = col;
    }

    /// Reduced costs of `c` for the current basis, and the objective value.
    fn price(&self, c: &[BigRational]) -> (Vec<BigRational>, BigRational) {
        let mut cost = c.to_vec();
        let mut obj = BigRational::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let f = c[b].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in cost.iter_mut().zip(&self.rows[r]) {
                *x -= &f * y;
            }
            obj -= &f * &self.rhs[r];
        }
        (cost, obj)
    }

    /// Runs Bland's rule over the allowed columns; false when unbounded.
    fn optimize(&mut self, cost: &mut [BigRational], obj: &mut BigRational, allowed: usize) -> bool {
        loop {
            let Some(col) = (0..allowed).find(|&j| cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, _, bb)) => ratio < *br || (ratio == *br && self.basis[r] < *bb),
                };
                if better {
                    best = Some((ratio, r, self.basis[r]));
                }
            }
            let Some((_, r, _)) = best else {
                return false;
            };
            self.pivot(r, col, cost, obj);
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.c.len();
    let n_le = lp.a_le.len();
    let rows_count = lp.a_eq.len() + n_le;
    let n_struct = n + n_le;
    let width = n_struct + rows_count;
    let mut rows = Vec::with_capacity(rows_count);
    let mut rhs = Vec::with_capacity(rows_count);
    let constraints = lp
        .a_eq
        .iter()
        .zip(&lp.b_eq)
        .map(|(a, b)| (a, b, None))
        .chain(lp.a_le.iter().zip(&lp.b_le).enumerate().map(|(s, (a, b))| (a, b, Some(s))));
    for (r, (a, b, slack)) in constraints.enumerate() {
        let mut row = vec![BigRational::zero(); width];
        row[..n].clone_from_slice(a);
        if let Some(s) = slack {
            row[n + s] = BigRational::one();
        }
        let mut b = b.clone();
        if b.is_negative() {
            row[..n_struct].iter_mut().for_each(|x| *x = -x.clone());
            b = -b;
        }
        row[n_struct + r] = BigRational::one();
        rows.push(row);
        rhs.push(b);
    }
    let basis = (n_struct..width).collect();
    let mut t = Tableau { rows, rhs, basis };

    // Phase 1: minimise the sum of the artificial variables.
    let mut c1 = vec![BigRational::zero(); width];
    c1[n_struct..].iter_mut().for_each(|x| *x = BigRational::one());
    let (mut cost, mut obj) = t.price(&c1);
    t.optimize(&mut cost, &mut obj, width);
    if !obj.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive artificials out of the basis, dropping redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n_struct {
            match (0..n_struct).find(|&j| !t.rows[r][j].is_zero()) {
                Some(col) => t.pivot(r, col, &mut cost, &mut obj),
                None => {
                    t.rows.remove(r);
                    t.rhs.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut c2 = vec![BigRational::zero(); width];
    c2[..n].clone_from_slice(&lp.c);
    let (mut cost, mut obj) = t.price(&c2);
    if !t.optimize(&mut cost, &mut obj, n_struct) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[r].clone();
        }
    }
    LpOutcome::Optimal { value: -obj, x }
}

/// Largest `m + 1` squared the min-max program accepts.
pub const LP_SIZE_LIMIT: usize = 2500;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMaxRowSum {
    pub d: u32,
    pub m: usize,
    pub optimum: BigRational,
    pub witness: ExponentMatrix,
    /// `d² − (d² − d)/(l + 1)` when `m = d·l` with `l ≥ 1`.
    pub lower_bound: Option<BigRational>,
    /// Largest row sum of the feasible matrix `C`.
    pub c_upper_bound: BigRational,
}

impl MinMaxRowSum {
    pub fn within_bracket(&self) -> Option<bool> {
        let d2 = int(self.d as i64 * self.d as i64);
        self.lower_bound.as_ref().map(|lb| *lb <= self.optimum && self.optimum <= d2)
    }
}

/// Index of `a_ij` (`i ≤ j`) in the LP variable vector.
fn var_index(i: usize, j: usize) -> usize {
    j * (j + 1) / 2 + i
}

/// `min_A max_i α_i` over real matrices satisfying conditions (1)–(3).
pub fn lp_min_max_rowsum(d: u32, m: usize) -> Result<MinMaxRowSum> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    if (m + 1) * (m + 1) > LP_SIZE_LIMIT {
        return Err(Error::SizeLimit(format!(
            "(m + 1)² = {} exceeds the LP limit {LP_SIZE_LIMIT}",
            (m + 1) * (m + 1)
        )));
    }
    let nv = var_index(0, m + 1);
    let t = nv;
    let zero = || vec![BigRational::zero(); nv + 1];
    let mut lp = LinearProgram { c: zero(), ..Default::default() };
    lp.c[t] = BigRational::one();
    for j in 0..=m {
        let mut count = zero();
        let mut weighted = zero();
        for i in 0..=j {
            count[var_index(i, j)] = BigRational::one();
            weighted[var_index(i, j)] = int(i as i64);
        }
        lp.a_eq.push(count);
        lp.b_eq.push(int(d as i64));
        lp.a_eq.push(weighted);
        lp.b_eq.push(int(j as i64));
    }
    for i in 0..=m {
        let mut row = zero();
        for j in i..=m {
            row[var_index(i, j)] = BigRational::one();
        }
        row[t] = -BigRational::one();
        lp.a_le.push(row);
        lp.b_le.push(BigRational::zero());
    }
    let LpOutcome::Optimal { value, x } = solve(&lp) else {
        unreachable!("C is feasible and the objective is bounded below by 0");
    };
    let entries = (0..=m)
        .map(|i| {
            (0..=m)
                .map(|j| if i <= j { x[var_index(i, j)].clone() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let di = d as i64;
    let lower_bound = (m > 0 && m.is_multiple_of(d as usize)).then(|| {
        let l = (m / d as usize) as i64;
        int(di * di) - BigRational::new(BigInt::from(di * di - di), BigInt::from(l + 1))
    });
    let c_upper_bound = matrix_c(d, m)?.matrix.max_row_sum();
    Ok(MinMaxRowSum {
        d,
        m,
        optimum: value,
        witness: ExponentMatrix { role: MatrixRole::LpWitness, entries },
        lower_bound,
        c_upper_bound,
    })
}

/// Compositions of `total` into `len` parts with `Σ_i i·part_i = weighted`.
fn columns(len: usize, total: u64, weighted: u64) -> Vec<Vec<u64>> {
    fn rec(i: usize, len: usize, total: u64, weighted: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i + 1 == len {
            if weighted == i as u64 * total {
                cur.push(total);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for v in 0..=total {
            let w = i as u64 * v;
            if w > weighted {
                break;
            }
            cur.push(v);
            rec(i + 1, len, total - v, weighted - w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, total, weighted, &mut Vec::new(), &mut out);
    out
}

/// Search budget for [`grid_min_max_rowsum`], in candidate columns visited.
pub const GRID_SEARCH_LIMIT: u64 = 5_000_000;

/// The min-max row sum over matrices with entries in `(1/(p−1))·ℤ_{≥0}`.
pub fn grid_min_max_rowsum(d: u32, m: usize, p: u32) -> Result<(BigRational, ExponentMatrix)> {
    if d == 0 || p < 2 {
        return Err(Error::Precondition("need d ≥ 1 and p ≥ 2".into()));
    }
    let s = (p - 1) as u64;
    let cols: Vec<Vec<Vec<u64>>> =
        (0..=m).map(|j| columns(j + 1, d as u64 * s, j as u64 * s)).collect();
    let space = cols.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    if space.is_none_or(|v| v > GRID_SEARCH_LIMIT) {
        return Err(Error::SizeLimit(format!(
            "grid search over denominator {} at m = {m} is too large",
            p - 1
        )));
    }
    struct Search<'a> {
        cols: &'a [Vec<Vec<u64>>],
        sums: Vec<u64>,
        pick: Vec<usize>,
        best: u64,
        best_pick: Vec<usize>,
    }
    fn go(s: &mut Search, j: usize) {
        if j == s.cols.len() {
            let worst = s.sums.iter().copied().max().unwrap_or(0);
            if worst < s.best {
                s.best = worst;
                s.best_pick = s.pick.clone();
            }
            return;
        }
        for k in 0..s.cols[j].len() {
            let col = &s.cols[j][k];
            for (x, v) in s.sums.iter_mut().zip(col) {
                *x += v;
            }
            if s.sums.iter().all(|&x| x < s.best) {
                s.pick.push(k);
                go(s, j + 1);
                s.pick.pop();
            }
            for (x, v) in s.sums.iter_mut().zip(col) {
                *x -= v;
            }
        }
    }
    let mut search = Search {
        cols: &cols,
        sums: vec![0; m + 1],
        pick: Vec::new(),
        best: u64::MAX,
        best_pick: Vec::new(),
    };
    go(&mut search, 0);
    let denom = BigInt::from(s);
    let mut entries = vec![vec![BigRational::zero(); m + 1]; m + 1];
    for (j, &k) in search.best_pick.iter().enumerate() {
        for (i, &v) in cols[j][k].iter().enumerate() {
            entries[i][j] = BigRational::new(BigInt::from(v), denom.clone());
        }
    }
    Ok((
        BigRational::new(BigInt::from(search.best), denom),
        ExponentMatrix { role: MatrixRole::GridWitness, entries },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn small_textbook_program() {
        // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6  →  optimum 14/5 at (8/5, 6/5).
        let lp = LinearProgram {
            c: vec![int(-1), int(-1)],
            a_le: vec![vec![int(1), int(2)], vec![int(3), int(1)]],
            b_le: vec![int(4), int(6)],
            ..Default::default()
        };
        let LpOutcome::Optimal { value, x } = solve(&lp) else { panic!() };
        assert_eq!(value, q(-14, 5));
        assert_eq!(x, vec![q(8, 5), q(6, 5)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram {
            c: vec![int(1)],
            a_eq: vec![vec![int(1)]],
            b_eq: vec![int(-1)],
            ..Default::default()
        };
        assert_eq!(solve(&lp), LpOutcome::Infeasible);
        let lp = LinearProgram { c: vec![int(-1)], a_le: vec![vec![int(-1)]], b_le: vec![int(0)], ..Default::default() };
        assert_eq!(solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn min_max_examples() {
        let r = lp_min_max_rowsum(2, 2).unwrap();
        assert_eq!(r.optimum, int(3));
        let cond = r.witness.conditions(Some(2), None);
        assert!(cond.upper_triangular && cond.weighted_column_sums && cond.nonnegative);
        assert_eq!(cond.column_sums, Some(true));
        assert_eq!(r.witness.max_row_sum(), r.optimum);

        let r = lp_min_max_rowsum(2, 4).unwrap();
        assert_eq!(r.lower_bound, Some(q(10, 3)));
        assert_eq!(r.within_bracket(), Some(true));
        for m in 0..5 {
            assert_eq!(lp_min_max_rowsum(1, m).unwrap().optimum, int(1));
        }
        assert!(lp_min_max_rowsum(2, 50).is_err());
    }

    #[test]
    fn grid_search_matches_lp_on_tiny_cases() {
        let (best, witness) = grid_min_max_rowsum(2, 2, 3).unwrap();
        assert_eq!(best, int(3));
        assert_eq!(witness.conditions(Some(2), None).column_sums, Some(true));
        assert_eq!(columns(3, 4, 4).len(), 3);
    }
}
