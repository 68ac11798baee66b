//! Combinatorial certificates: the exponent decomposition and the monomials
//! `L_1, L_2, L_3, M` for general forms, exponent matrices, and the linear
//! program behind the `d²` lower bound.

mod decomposition;
mod lmonomials;
mod lp;
mod matrix;

pub use decomposition::{decompose_exponent, multinomial_p_valuation, ExponentDecomposition};
pub use lmonomials::{
    build_l_monomials, build_m_monomial, verify_m_membership, HeadroomReport, LInvariants,
    LMonomialSet, LTerm, MMonomial,
};
pub use lp::{
    grid_min_max_rowsum, lp_min_max_rowsum, solve, LinearProgram, LpOutcome, MinMaxRowSum,
    GRID_SEARCH_LIMIT, LP_SIZE_LIMIT,
};
pub use matrix::{
    extract_matrix_a, matrix_c, rational_text, AExtraction, CReport, ExponentMatrix,
    MatrixConditions, MatrixRole,
};
