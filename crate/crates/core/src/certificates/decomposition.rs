use serde::Serialize;

use crate::error::{Error, Result};

/// `p^e − 1 = a + b + c` with `a = p^e − p^{e−1}`, `b = p^{e−1} − p^{e−2}`,
/// `c = p^{e−2} − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExponentDecomposition {
    pub p: u64,
    pub e: u32,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl ExponentDecomposition {
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }
}

pub fn decompose_exponent(p: u64, e: u32) -> Result<ExponentDecomposition> {
    if e < 2 {
        return Err(Error::Precondition(format!("the decomposition needs e ≥ 2, got e = {e}")));
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let pow = |k: u32| {
        p.checked_pow(k)
            .ok_or_else(|| Error::Range(format!("{p}^{k} overflows 64 bits")))
    };
    let (qe, q1, q2) = (pow(e)?, pow(e - 1)?, pow(e - 2)?);
    let d = ExponentDecomposition { p, e, a: qe - q1, b: q1 - q2, c: q2 - 1 };
    debug_assert_eq!(d.a + d.b + d.c, qe - 1);
    debug_assert!(d.a >= d.b && d.b > d.c);
    Ok(d)
}

/// `v_p((Σ parts)! / ∏ parts!)`, the number of carries when the parts are
/// added one after another in base `p`.
pub fn multinomial_p_valuation(parts: &[u64], p: u64) -> u64 {
    assert!(p >= 2, "base must be at least 2");
    let mut acc: u128 = 0;
    let mut carries = 0;
    let p = p as u128;
    for &part in parts {
        let (mut x, mut y, mut carry) = (acc, part as u128, 0u128);
        while x > 0 || y > 0 || carry > 0 {
            let s = x % p + y % p + carry;
            carry = u128::from(s >= p);
            carries += carry as u64;
            x /= p;
            y /= p;
        }
        acc += part as u128;
    }
    carries
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_examples() {
        let t = |p, e| {
            let d = decompose_exponent(p, e).unwrap();
            (d.a, d.b, d.c)
        };
        assert_eq!(t(3, 2), (6, 2, 0));
        assert_eq!(t(2, 3), (4, 2, 1));
        assert_eq!(t(5, 2), (20, 4, 0));
        assert!(decompose_exponent(5, 1).is_err());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(multinomial_p_valuation(&[2, 2], 2), 1);
        assert_eq!(multinomial_p_valuation(&[17], 3), 0);
        assert_eq!(multinomial_p_valuation(&[1, 1, 1], 3), 1);
        assert_eq!(multinomial_p_valuation(&[], 5), 0);
    }
}
