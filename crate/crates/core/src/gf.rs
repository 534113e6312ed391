//! Small finite fields `F_q` with table-driven arithmetic.
//!
//! An element is stored as its index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`,
//! where `c_0 + c_1 t + ...` is its residue modulo the field's defining
//! polynomial. Index 0 is zero and index 1 is one. The defining polynomial is
//! the least monic irreducible of degree `k` under that same encoding of its
//! lower coefficients.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on the field order.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// An element of some `F_q`, as a table index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(transparent)]
pub struct FqElem(pub u8);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared handle to a field description.
pub type Field = Arc<FieldDesc>;

pub struct FieldDesc {
    p: usize,
    k: usize,
    q: usize,
    /// Coefficients of the monic modulus, lowest degree first, length k+1.
    modulus: Vec<usize>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (p={}, k={}, modulus={:?})", self.q, self.p, self.k, self.modulus)
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldDesc {}

/// Builds `F_q` with the default order bound.
pub fn make_field(q: usize) -> Result<Field> {
    make_field_bounded(q, DEFAULT_MAX_ORDER)
}

pub fn make_field_bounded(q: usize, bound: usize) -> Result<Field> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > bound || q > 256 {
        return Err(Error::FieldTooLarge { q, bound: bound.min(256) });
    }
    let modulus = least_irreducible(p, k);
    let fd = FieldDesc::from_modulus(p, k, modulus);
    fd.check_axioms()?;
    Ok(Arc::new(fd))
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients mod p.
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
    }
    r
}

fn is_irreducible(m: &[usize], p: usize) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        for code in 0..p.pow(d as u32) {
            let mut f = digits(code, p, d);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: usize, k: usize) -> Vec<usize> {
    (0..p.pow(k as u32))
        .map(|code| {
            let mut m = digits(code, p, k);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial of every degree exists")
}

impl FieldDesc {
    fn from_modulus(p: usize, k: usize, modulus: Vec<usize>) -> Self {
        let q = p.pow(k as u32);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a, p, k);
            let na: Vec<usize> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a] = undigits(&na, p) as u8;
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u8;
                let mut prod = vec![0; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = poly_rem(&prod, &modulus, p);
                mul[a * q + b] = undigits(&r, p) as u8;
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u8;
        }
        FieldDesc { p, k, q, modulus, add, mul, neg, inv }
    }

    fn check_axioms(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::FieldAxiom { q: self.q, what: what.to_string() });
        for a in self.elements() {
            if !a.is_zero() && self.mul(a, self.inv(a)) != FqElem::ONE {
                return fail("missing inverse");
            }
        }
        if self.q <= 9 {
            for a in self.elements() {
                for b in self.elements() {
                    if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                        return fail("commutativity");
                    }
                    for c in self.elements() {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                            return fail("associativity");
                        }
                        if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                            return fail("associativity");
                        }
                        if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                            return fail("distributivity");
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Modulus coefficients, lowest degree first (monic, length `k+1`).
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    /// All elements in index order; `[0]` is zero and `[1]` is one.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + Clone {
        (0..self.q).map(|i| FqElem(i as u8))
    }

    pub fn units(&self) -> impl Iterator<Item = FqElem> + Clone {
        (1..self.q).map(|i| FqElem(i as u8))
    }

    pub fn elem(&self, index: usize) -> Option<FqElem> {
        (index < self.q).then_some(FqElem(index as u8))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, x: i64) -> FqElem {
        FqElem(x.rem_euclid(self.p as i64) as u8)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.index()])
    }

    /// Multiplicative inverse; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: FqElem) -> FqElem {
        FqElem(self.inv[a.index()])
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> FqElem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p as u64)
    }

    pub fn multiplicative_order(&self, a: FqElem) -> Option<usize> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != FqElem::ONE {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// The first unit (in index order) generating `F_q^*`.
    pub fn primitive_element(&self) -> FqElem {
        self.units()
            .find(|&a| self.multiplicative_order(a) == Some(self.q - 1))
            .expect("multiplicative group of a finite field is cyclic")
    }
}
