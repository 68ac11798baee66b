//! Polynomial text format.
//!
//! Terms are separated by `+`, `-` or newlines. A term is an optional integer
//! coefficient followed by variable tokens `x<i>_<j>^<e>`, where `_<j>` defaults
//! to level 0 and `^<e>` to exponent 1; `*` between factors is accepted. Spaces
//! and tabs are ignored. Coefficients are reduced mod p.
//!
//! ```text
//! 3 x1_0^2 x2_1 + x3 - 2
//! ```

use super::{Monomial, PolyMod, VarTable, EXPONENT_LIMIT};
use crate::error::{Error, Result};

struct RawTerm {
    coeff: u32,
    factors: Vec<(usize, usize, u32)>,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn peek(&mut self) -> Option<u8> {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b' ' || b == b'\t' || b == b'\r' {
                self.pos += 1;
            } else {
                return Some(b);
            }
        }
        None
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn number(&mut self) -> Result<Vec<u8>> {
        let mut digits = Vec::new();
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            digits.push(b - b'0');
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(self.err("expected a number"));
        }
        Ok(digits)
    }

    fn small(&mut self, what: &str) -> Result<usize> {
        let digits = self.number()?;
        let mut v: usize = 0;
        for d in digits {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as usize))
                .ok_or_else(|| self.err(format!("{what} too large")))?;
        }
        Ok(v)
    }
}

fn reduce_digits(digits: &[u8], p: u32) -> u32 {
    digits
        .iter()
        .fold(0u64, |acc, &d| (acc * 10 + d as u64) % p as u64) as u32
}

fn parse_terms(src: &str, p: u32) -> Result<Vec<RawTerm>> {
    let mut lx = Lexer { bytes: src.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut negative = false;
    let mut expect_term = true;
    let mut pending_op = false;
    loop {
        let Some(b) = lx.peek() else {
            if pending_op {
                return Err(lx.err("dangling operator"));
            }
            break;
        };
        match b {
            b'+' | b'-' => {
                if b == b'-' {
                    negative = !negative;
                }
                expect_term = true;
                pending_op = true;
                lx.pos += 1;
                continue;
            }
            b'\n' => {
                expect_term = true;
                lx.pos += 1;
                continue;
            }
            _ => {}
        }
        if !expect_term {
            return Err(lx.err("missing separator between terms"));
        }
        let mut coeff = 1 % p;
        let mut seen_coeff = false;
        if b.is_ascii_digit() {
            coeff = reduce_digits(&lx.number()?, p);
            seen_coeff = true;
        }
        let mut factors = Vec::new();
        loop {
            let star = lx.peek() == Some(b'*') && (seen_coeff || !factors.is_empty());
            if star {
                lx.pos += 1;
            }
            if lx.peek() != Some(b'x') {
                if star {
                    return Err(lx.err("expected a variable after '*'"));
                }
                break;
            }
            lx.pos += 1;
            let i = lx.small("variable index")?;
            if i == 0 {
                return Err(lx.err("variable indices start at 1"));
            }
            let mut j = 0;
            if lx.peek() == Some(b'_') {
                lx.pos += 1;
                j = lx.small("jet level")?;
            }
            let mut e = 1u32;
            if lx.peek() == Some(b'^') {
                lx.pos += 1;
                let v = lx.small("exponent")?;
                if v >= EXPONENT_LIMIT as usize {
                    return Err(Error::Range(format!(
                        "exponent {v} does not fit the packed range [0, {EXPONENT_LIMIT})"
                    )));
                }
                e = v as u32;
            }
            factors.push((i, j, e));
        }
        if !seen_coeff && factors.is_empty() {
            return Err(lx.err(format!("unexpected character {:?}", b as char)));
        }
        if negative {
            coeff = (p - coeff) % p;
        }
        terms.push(RawTerm { coeff, factors });
        negative = false;
        expect_term = false;
        pending_op = false;
    }
    Ok(terms)
}

/// Parses a polynomial over F_p. Without a table, `N` and `m` are the largest
/// variable index and jet level that occur (at least `N = 1`, `m = 0`).
pub fn parse(src: &str, p: u32, table: Option<VarTable>) -> Result<PolyMod> {
    let raw = parse_terms(src, p)?;
    let table = match table {
        Some(t) => t,
        None => {
            let n = raw.iter().flat_map(|t| t.factors.iter().map(|f| f.0)).max().unwrap_or(1);
            let m = raw.iter().flat_map(|t| t.factors.iter().map(|f| f.1)).max().unwrap_or(0);
            VarTable::new(n, m)?
        }
    };
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let mut exps = vec![0u64; table.nvars()];
        for (i, j, e) in t.factors {
            if i > table.n || j > table.m {
                return Err(Error::Malformed(format!(
                    "variable x{i}_{j} is outside the table {table}"
                )));
            }
            exps[table.index(i, j)] += e as u64;
        }
        terms.push((Monomial::try_from_wide(&exps)?, t.coeff));
    }
    Ok(PolyMod::from_terms(p, table, terms))
}

/// Parses a single monomial (no coefficient) in the given table.
pub fn parse_monomial(src: &str, table: VarTable) -> Result<Monomial> {
    // Any prime works here; the coefficient is discarded.
    let poly = parse(src, 2, Some(table))?;
    match poly.terms() {
        [(m, 1)] => Ok(m.clone()),
        _ => Err(Error::Malformed(format!("{src:?} is not a single monomial"))),
    }
}

/// Canonical rendering: terms in canonical order, every coefficient and jet
/// level written out, `0` for the zero polynomial.
pub fn render(poly: &PolyMod) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    poly.terms()
        .iter()
        .map(|(m, c)| {
            if m.is_one() {
                c.to_string()
            } else {
                format!("{c} {}", m.render(poly.table()))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_example() {
        let t = VarTable::new(2, 1).unwrap();
        let f = parse("3 x1_0^2 x2_1", 5, Some(t)).unwrap();
        let mut m = Monomial::one(4);
        m.set(t.index(1, 0), 2);
        m.set(t.index(2, 1), 1);
        assert_eq!(f.terms(), &[(m, 3)]);
        assert_eq!(render(&f), "3 x1_0^2 x2_1");
    }

    #[test]
    fn whitespace_and_separators() {
        let a = parse("3x1_0^2x2_1 + x1\n2 x2", 7, None).unwrap();
        let b = parse("  3 x1^2 * x2_1\n+ x1 + 2x2_0", 7, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.table(), &VarTable::new(2, 1).unwrap());
    }

    #[test]
    fn signs_and_reduction() {
        let f = parse("x1 - x2 - -3 + 12", 5, None).unwrap();
        let g = parse("x1 + 4 x2 + 0", 5, None).unwrap();
        assert_eq!(f, g);
        assert!(parse("0", 3, None).unwrap().is_zero());
        assert!(parse("3 x1 - 3 x1", 3, None).unwrap().is_zero());
        // 10^30 + 1 ≡ 2 (mod 3)
        let big = parse("1000000000000000000000000000001", 3, None).unwrap();
        assert_eq!(render(&big), "2");
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse("x0", 3, None), Err(Error::Parse { .. })));
        assert!(matches!(parse("x1 +", 3, None), Err(Error::Parse { .. })));
        for bad in ["x1 +* 2", "* x1", "x1 *", "x1 ** x2", "2 * 3"] {
            assert!(matches!(parse(bad, 3, None), Err(Error::Parse { .. })), "{bad}");
        }
        assert_eq!(parse("2*x1*x2", 3, None).unwrap(), parse("2 x1 x2", 3, None).unwrap());
        assert!(matches!(parse("y1", 3, None), Err(Error::Parse { .. })));
        assert!(matches!(parse("x1^300", 3, None), Err(Error::Range(_))));
        let t = VarTable::base(2).unwrap();
        assert!(matches!(parse("x3", 3, Some(t)), Err(Error::Malformed(_))));
        assert!(matches!(parse("x1_1", 3, Some(t)), Err(Error::Malformed(_))));
    }

    #[test]
    fn monomials() {
        let t = VarTable::new(2, 1).unwrap();
        let m = parse_monomial("x1_0 x2_1^3", t).unwrap();
        assert_eq!(m.render(&t), "x1_0 x2_1^3");
        assert!(parse_monomial("x1 + x2", t).is_err());
    }
}
