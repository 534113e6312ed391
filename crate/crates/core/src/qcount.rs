//! Exact point counts as integer polynomials in `q`.
//!
//! Every `φ_m(q^{-1})` or `φ_m(q^{-2})` factor is cleared against the
//! ambient power of `q` into a group order before any arithmetic, so no
//! negative exponent ever appears. With `|GL_m| = q^{m²} φ_m(q^{-1})` and
//! `|Sp_{2m}| = q^{m+2m²} φ_m(q^{-2})` each stabiliser becomes
//! `q^{dim U} · ∏ |Levi factor|`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{b_invariant, shape_data, Bipartition, Partition};
use crate::error::{Error, Result};

/// Dense polynomial in `q`, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        QPoly::from_coeffs(vec![BigInt::from(c)])
    }

    /// `c · q^e`
    pub fn monomial(c: i64, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::from(c);
        QPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_u64(&self, q: u64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Substitutes `q -> q^2`.
    pub fn substitute_square(&self) -> QPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() * 2];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn shift(&self, e: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Division that must be exact; the divisor's leading coefficient must be ±1.
    pub fn div_exact(&self, divisor: &QPoly, context: &str) -> Result<QPoly> {
        let inexact = || Error::InexactDivision(context.to_string());
        let dd = divisor.degree().ok_or_else(inexact)?;
        let lead = divisor.leading().unwrap();
        if !lead.abs().is_one() {
            return Err(inexact());
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Ok(QPoly::zero()) } else { Err(inexact()) };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(inexact());
        }
        Ok(QPoly::from_coeffs(quot))
    }

    pub fn pow(&self, e: usize) -> QPoly {
        (0..e).fold(QPoly::one(), |acc, _| &acc * self)
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = rhs.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |acc, p| &acc * &p)
    }
}

/// `|GL_n(F_q)| = ∏_{r=0}^{n-1} (q^n - q^r)`.
pub fn gl_order(n: usize) -> QPoly {
    (0..n).map(|r| &QPoly::monomial(1, n) - &QPoly::monomial(1, r)).product()
}

/// `|Sp_{2n}(F_q)| = q^{n²} ∏_{r=1}^{n} (q^{2r} - 1)`.
pub fn sp_order(n: usize) -> QPoly {
    let p: QPoly = (1..=n).map(|r| &QPoly::monomial(1, 2 * r) - &QPoly::one()).product();
    p.shift(n * n)
}

/// Dimension of the unipotent radical of the ordinary centraliser,
/// `|λ| + 2n(λ) - Σ_h n_{l_h}²`.
pub fn ordinary_unipotent_dim(lambda: &Partition) -> usize {
    let sq: usize = lambda.exponent_form().iter().map(|&(_, m)| m * m).sum();
    lambda.weight() + 2 * lambda.n_invariant() - sq
}

/// `|G^x(F_q)|` for `x` of Jordan type `λ`.
pub fn ordinary_stab_order(lambda: &Partition) -> QPoly {
    let levi: QPoly = lambda.exponent_form().iter().map(|&(_, m)| gl_order(m)).product();
    levi.shift(ordinary_unipotent_dim(lambda))
}

pub fn ordinary_orbit_size(lambda: &Partition) -> Result<QPoly> {
    gl_order(lambda.weight()).div_exact(&ordinary_stab_order(lambda), &format!("ordinary orbit {lambda}"))
}

/// `b(μ;ν) - Σ_{h∉J} n_{l_h}² - Σ_{h∈J} (n_{l_h}-1)²`.
pub fn enhanced_unipotent_dim(bp: &Bipartition) -> Result<usize> {
    let sd = shape_data(bp);
    let levi: usize = sd.levi_ranks().iter().map(|r| r * r).sum();
    b_invariant(bp).checked_sub(levi).ok_or_else(|| Error::NegativeDimension(bp.to_string()))
}

/// `|G^{(v,x)}(F_q)| = q^{b} ∏_{J} φ_{n-1}(q^{-1}) ∏_{∉J} φ_n(q^{-1})`.
pub fn enhanced_stab_order(bp: &Bipartition) -> Result<QPoly> {
    let levi: QPoly = shape_data(bp).levi_ranks().into_iter().map(gl_order).product();
    Ok(levi.shift(enhanced_unipotent_dim(bp)?))
}

pub fn enhanced_orbit_size(bp: &Bipartition) -> Result<QPoly> {
    gl_order(bp.size()).div_exact(&enhanced_stab_order(bp)?, &format!("enhanced orbit {bp}"))
}

/// `n + 2b - Σ_{h∈J} [2(n_{l_h}-1)² + (n_{l_h}-1)] - Σ_{h∉J} (2n_{l_h}² + n_{l_h})`.
pub fn exotic_unipotent_dim(bp: &Bipartition) -> Result<usize> {
    let sd = shape_data(bp);
    let levi: usize = sd.levi_ranks().iter().map(|r| 2 * r * r + r).sum();
    (bp.size() + 2 * b_invariant(bp))
        .checked_sub(levi)
        .ok_or_else(|| Error::NegativeDimension(bp.to_string()))
}

/// `|K^{(w,y)}(F_q)| = q^{n+2b} ∏_{J} φ_{n-1}(q^{-2}) ∏_{∉J} φ_n(q^{-2})`.
pub fn exotic_stab_order(bp: &Bipartition) -> Result<QPoly> {
    let levi: QPoly = shape_data(bp).levi_ranks().into_iter().map(sp_order).product();
    Ok(levi.shift(exotic_unipotent_dim(bp)?))
}

pub fn exotic_orbit_size(bp: &Bipartition) -> Result<QPoly> {
    sp_order(bp.size()).div_exact(&exotic_stab_order(bp)?, &format!("exotic orbit {bp}"))
}

/// Exotic count over `F_q` equals enhanced count over `F_{q²}`, coefficientwise.
pub fn fini_check(bp: &Bipartition) -> Result<bool> {
    Ok(exotic_orbit_size(bp)? == enhanced_orbit_size(bp)?.substitute_square())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_bipartitions, enumerate_partitions};

    fn bp(mu: &[usize], nu: &[usize]) -> Bipartition {
        Bipartition::from_parts(mu, nu).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(0), QPoly::one());
        assert_eq!(gl_order(1), QPoly::from_i64(&[-1, 1]));
        assert_eq!(gl_order(2), QPoly::from_i64(&[0, 1, -1, -1, 1]));
        assert_eq!(gl_order(2).eval_u64(2), BigInt::from(6));
        assert_eq!(sp_order(0), QPoly::one());
        assert_eq!(sp_order(1), QPoly::from_i64(&[0, -1, 0, 1]));
        assert_eq!(sp_order(1).eval_u64(2), BigInt::from(6));
        assert_eq!(sp_order(2).eval_u64(2), BigInt::from(720));
        assert_eq!(gl_order(5).degree(), Some(25));
        assert_eq!(sp_order(3).degree(), Some(21));
    }

    #[test]
    fn ordinary() {
        assert_eq!(ordinary_stab_order(&p(&[1, 1])), gl_order(2));
        assert_eq!(ordinary_stab_order(&p(&[2])), QPoly::from_i64(&[0, -1, 1]));
        assert_eq!(ordinary_stab_order(&p(&[2, 2, 1, 1])).degree(), Some(20));
        assert_eq!(ordinary_orbit_size(&p(&[1, 1, 1])).unwrap(), QPoly::one());
        assert_eq!(ordinary_orbit_size(&p(&[2])).unwrap(), QPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn enhanced_values() {
        assert_eq!(enhanced_stab_order(&bp(&[], &[])).unwrap(), QPoly::one());
        assert_eq!(enhanced_stab_order(&bp(&[1], &[1])).unwrap().eval_u64(2), BigInt::from(2));
        assert_eq!(
            enhanced_stab_order(&bp(&[1, 1, 1, 1], &[1, 1])).unwrap().eval_u64(2),
            BigInt::from(12288)
        );
        assert_eq!(enhanced_orbit_size(&bp(&[], &[1, 1, 1])).unwrap(), QPoly::one());
        assert_eq!(enhanced_orbit_size(&bp(&[2], &[])).unwrap().eval_u64(2), BigInt::from(6));
        let o = enhanced_orbit_size(&bp(&[1], &[1])).unwrap();
        assert_eq!(o, QPoly::from_i64(&[1, -1, -1, 1]));
        assert_eq!(o.eval_u64(2), BigInt::from(3));
    }

    #[test]
    fn exotic_values() {
        assert_eq!(exotic_stab_order(&bp(&[], &[])).unwrap(), QPoly::one());
        assert_eq!(exotic_stab_order(&bp(&[1], &[])).unwrap(), QPoly::monomial(1, 1));
        assert_eq!(exotic_stab_order(&bp(&[1, 1], &[1])).unwrap().eval_u64(2), BigInt::from(384));
        assert_eq!(exotic_orbit_size(&bp(&[], &[1])).unwrap(), QPoly::one());
        let o = exotic_orbit_size(&bp(&[1], &[])).unwrap();
        assert_eq!(o, QPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(o.eval_u64(3), BigInt::from(8));
        assert_eq!(exotic_orbit_size(&bp(&[1], &[1])).unwrap().eval_u64(2), BigInt::from(45));
        assert_eq!(exotic_unipotent_dim(&bp(&[1, 1], &[1])).unwrap(), 6);
        assert_eq!(exotic_unipotent_dim(&bp(&[1, 1, 1, 1], &[1, 1])).unwrap(), 25);
    }

    #[test]
    fn fini_small() {
        assert!(fini_check(&bp(&[], &[])).unwrap());
        assert_eq!(exotic_orbit_size(&bp(&[1], &[1])).unwrap(), QPoly::from_i64(&[1, 0, -1, 0, -1, 0, 1]));
        assert!(fini_check(&bp(&[1], &[1])).unwrap());
    }

    #[test]
    fn inexact_division_is_reported() {
        let err = QPoly::monomial(1, 2).div_exact(&QPoly::from_i64(&[1, 1]), "ctx").unwrap_err();
        assert_eq!(err, Error::InexactDivision("ctx".into()));
        assert_eq!(QPoly::zero().div_exact(&gl_order(2), "zero").unwrap(), QPoly::zero());
    }

    #[test]
    fn orbit_sums_small() {
        for n in 0..=4 {
            let total: QPoly = enumerate_bipartitions(n).iter().map(|b| enhanced_orbit_size(b).unwrap()).sum();
            assert_eq!(total, QPoly::monomial(1, n * n));
            let total: QPoly = enumerate_partitions(n).iter().map(|l| ordinary_orbit_size(l).unwrap()).sum();
            assert_eq!(total, QPoly::monomial(1, n * n - n));
        }
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_i64(&[1, -1, -1, 1]).to_string(), "q^3 - q^2 - q + 1");
        assert_eq!(QPoly::from_i64(&[0, 2]).to_string(), "2q");
        assert_eq!(QPoly::zero().to_string(), "0");
    }
}
