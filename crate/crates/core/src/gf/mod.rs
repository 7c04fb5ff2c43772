//! Exact arithmetic in finite fields GF(p^m) at desk scale (q <= 2^24).
//!
//! A [`Field`] owns its modulus and is cheap to clone (shared immutable
//! state); a [`FieldElement`] carries a handle to its owning field so that
//! cross-field arithmetic is rejected instead of silently miscomputing.
//! Elements are canonical reduced coefficient vectors over GF(p), packed as
//! the integer `sum c_i p^i` with the least significant coefficient in the
//! lowest digit — the same encoding used on the wire.
//!
//! For q <= 2^16 a log/antilog table pair built on the canonical primitive
//! element accelerates multiplication and inversion; the tables are a pure
//! optimisation with no semantic effect.

mod polyarith;
pub mod tower;

pub use tower::Extension;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {q} exceeds the supported limit {limit}")]
    OrderTooLarge { q: u128, limit: u64 },
    #[error("modulus must be monic of degree {expected} with coefficients in [0, {p})")]
    BadModulus { expected: u32, p: u64 },
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("element value {value} out of range for field of order {q}")]
    ValueOutOfRange { value: u64, q: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("{s} does not divide the multiplicative group order {group}")]
    OrderDoesNotDivide { s: u64, group: u64 },
    #[error("extension degree {0} is not supported here (expected 2 or 3)")]
    UnsupportedExtensionDegree(u32),
    #[error("invalid field descriptor '{0}'")]
    BadDescriptor(String),
}

struct Tables {
    /// exp[i] = g^i for i in 0..2(q-1), doubled to skip a reduction
    exp: Vec<u32>,
    /// log[v] = i with g^i = v, for v in 1..q
    log: Vec<u32>,
    generator: u64,
}

struct FieldRepr {
    p: u64,
    m: u32,
    q: u64,
    /// monic, most-significant coefficient first, length m+1
    modulus: Vec<u64>,
    /// x^m = sum reduction[j] x^j, least-significant first, length m
    reduction: Vec<u64>,
    tables: Option<Tables>,
    primitive: OnceLock<u64>,
    group_factors: OnceLock<Vec<u64>>,
}

/// A finite field GF(p^m) with a fixed irreducible modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.descriptor())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

impl Field {
    /// GF(p^m) with the canonical modulus: the lexicographically smallest
    /// monic irreducible of degree m over GF(p).
    pub fn new(p: u64, m: u32) -> Result<Field, GfError> {
        check_order(p, m)?;
        let modulus_lsb = polyarith::canonical_modulus(p, m);
        let mut msb: Vec<u64> = modulus_lsb.into_iter().rev().collect();
        msb[0] = 1;
        Self::build(p, m, msb)
    }

    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Field, GfError> {
        Field::new(p, 1)
    }

    /// The field of a given order q = p^m (canonical modulus), when q is a
    /// prime power.
    pub fn of_order(q: u64) -> Result<Field, GfError> {
        if q < 2 {
            return Err(GfError::NonPrime(q));
        }
        let p = polyarith::prime_factors(q)[0];
        let mut m = 0u32;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(GfError::NonPrime(q));
        }
        Field::new(p, m)
    }

    /// GF(p^m) with an explicit modulus, most-significant coefficient first.
    pub fn with_modulus(p: u64, m: u32, modulus_msb: &[u64]) -> Result<Field, GfError> {
        check_order(p, m)?;
        if modulus_msb.len() != m as usize + 1
            || modulus_msb[0] != 1
            || modulus_msb.iter().any(|&c| c >= p)
        {
            return Err(GfError::BadModulus { expected: m, p });
        }
        let lsb: Vec<u64> = modulus_msb.iter().rev().copied().collect();
        if !polyarith::is_irreducible(&lsb, p) {
            return Err(GfError::ReducibleModulus(p));
        }
        Self::build(p, m, modulus_msb.to_vec())
    }

    fn build(p: u64, m: u32, modulus_msb: Vec<u64>) -> Result<Field, GfError> {
        let q = pow_checked(p, m).expect("order checked");
        // x^m = -(c_{m-1} x^{m-1} + ... + c_0)
        let mut reduction = vec![0u64; m as usize];
        for j in 0..m as usize {
            let c = modulus_msb[m as usize - j];
            reduction[j] = if c == 0 { 0 } else { p - c };
        }
        let base = Field(Arc::new(FieldRepr {
            p,
            m,
            q,
            modulus: modulus_msb.clone(),
            reduction: reduction.clone(),
            tables: None,
            primitive: OnceLock::new(),
            group_factors: OnceLock::new(),
        }));
        if q > TABLE_LIMIT || q <= 2 {
            return Ok(base);
        }
        let g = base.find_primitive();
        let mut exp = Vec::with_capacity(2 * (q as usize - 1));
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u64;
        for i in 0..(q - 1) as usize {
            exp.push(acc as u32);
            log[acc as usize] = i as u32;
            acc = base.mul_slow(acc, g);
        }
        debug_assert_eq!(acc, 1);
        exp.extend_from_within(..);
        Ok(Field(Arc::new(FieldRepr {
            p,
            m,
            q,
            modulus: modulus_msb,
            reduction,
            tables: Some(Tables {
                exp,
                log,
                generator: g,
            }),
            primitive: OnceLock::from(g),
            group_factors: OnceLock::new(),
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Field order q = p^m.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Modulus coefficients, most-significant first (length m+1).
    pub fn modulus_msb(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Modulus packed as an integer in base p (value of the polynomial at p).
    pub fn modulus_packed(&self) -> u64 {
        self.0
            .modulus
            .iter()
            .fold(0u64, |acc, &c| acc * self.0.p + c)
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, GfError> {
        if value >= self.0.q {
            return Err(GfError::ValueOutOfRange {
                value,
                q: self.0.q,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// Element from its coefficient vector over GF(p), least-significant
    /// coefficient first. Shorter vectors are zero-padded.
    pub fn element_from_coeffs(&self, coeffs_lsb: &[u64]) -> Result<FieldElement, GfError> {
        if coeffs_lsb.len() > self.0.m as usize || coeffs_lsb.iter().any(|&c| c >= self.0.p) {
            return Err(GfError::ValueOutOfRange {
                value: u64::MAX,
                q: self.0.q,
            });
        }
        let value = coeffs_lsb
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.0.p + c);
        self.element(value)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 1 % self.0.q,
        }
    }

    /// All field elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |v| FieldElement {
            field: self.clone(),
            value: v,
        })
    }

    /// The canonically first element of multiplicative order q-1.
    pub fn primitive_element(&self) -> FieldElement {
        let v = *self.0.primitive.get_or_init(|| match &self.0.tables {
            Some(t) => t.generator,
            None => self.find_primitive(),
        });
        FieldElement {
            field: self.clone(),
            value: v,
        }
    }

    /// primitive^((q-1)/s); errors unless s divides q-1.
    pub fn element_of_order(&self, s: u64) -> Result<FieldElement, GfError> {
        let group = self.0.q - 1;
        if s == 0 || !group.is_multiple_of(s) {
            return Err(GfError::OrderDoesNotDivide { s, group });
        }
        let g = self.primitive_element().value;
        Ok(FieldElement {
            field: self.clone(),
            value: self.pow_raw(g, group / s),
        })
    }

    fn group_factors(&self) -> &[u64] {
        self.0
            .group_factors
            .get_or_init(|| polyarith::prime_factors(self.0.q - 1))
    }

    fn find_primitive(&self) -> u64 {
        let group = self.0.q - 1;
        let factors = self.group_factors().to_vec();
        'cand: for v in 1..self.0.q {
            for &l in &factors {
                if self.pow_raw(v, group / l) == 1 {
                    continue 'cand;
                }
            }
            debug_assert_eq!(self.pow_raw(v, group), 1);
            return v;
        }
        unreachable!("every finite field has a primitive element")
    }

    /// Multiplicative order of a nonzero value.
    pub(crate) fn order_raw(&self, v: u64) -> u64 {
        assert!(v != 0, "order of zero is undefined");
        let mut ord = self.0.q - 1;
        for &l in self.group_factors() {
            while ord.is_multiple_of(l) && self.pow_raw(v, ord / l) == 1 {
                ord /= l;
            }
        }
        ord
    }

    // ---- raw arithmetic on packed values -------------------------------

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let r = &self.0;
        if r.m == 1 {
            return (a + b) % r.p;
        }
        if r.p == 2 {
            return a ^ b;
        }
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        let r = &self.0;
        if r.m == 1 {
            return (a + r.p - b) % r.p;
        }
        if r.p == 2 {
            return a ^ b;
        }
        self.digitwise(a, b, |x, y, p| (x + p - y) % p)
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        self.sub_raw(0, a)
    }

    fn digitwise(&self, mut a: u64, mut b: u64, f: impl Fn(u64, u64, u64) -> u64) -> u64 {
        let p = self.0.p;
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.0.m {
            out += f(a % p, b % p, p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            let i = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[i] as u64;
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let r = &self.0;
        if r.m == 1 {
            return a * b % r.p;
        }
        let m = r.m as usize;
        let p = r.p;
        let av = self.unpack(a);
        let bv = self.unpack(b);
        let mut work = vec![0u64; 2 * m - 1];
        for (i, &ai) in av.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in bv.iter().enumerate() {
                work[i + j] = (work[i + j] + ai * bj) % p;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = work[i];
            if c != 0 {
                work[i] = 0;
                for (j, &red) in r.reduction.iter().enumerate() {
                    work[i - m + j] = (work[i - m + j] + c * red) % p;
                }
            }
        }
        self.pack(&work[..m])
    }

    pub(crate) fn inv_raw(&self, a: u64) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let l = t.log[a as usize] as usize;
            let group = (self.0.q - 1) as usize;
            return Ok(t.exp[(group - l) % group] as u64);
        }
        Ok(self.pow_raw(a, self.0.q - 2))
    }

    pub(crate) fn pow_raw(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0.q;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    fn unpack(&self, mut v: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.0.m as usize];
        for d in out.iter_mut() {
            *d = v % self.0.p;
            v /= self.0.p;
        }
        out
    }

    fn pack(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.0.p + c)
    }

    // ---- descriptors ----------------------------------------------------

    /// Compact text form: `p` for prime fields, `p^m:HEX` for extensions,
    /// where HEX is the modulus packed in base p, written in hexadecimal.
    pub fn descriptor(&self) -> String {
        if self.0.m == 1 {
            format!("{}", self.0.p)
        } else {
            format!("{}^{}:{:x}", self.0.p, self.0.m, self.modulus_packed())
        }
    }

    /// Parse `p`, `p^m` (canonical modulus) or `p^m:HEX`.
    pub fn from_descriptor(s: &str) -> Result<Field, GfError> {
        let bad = || GfError::BadDescriptor(s.to_string());
        let (pm, modpart) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let (p, m) = match pm.split_once('^') {
            Some((ps, ms)) => (
                ps.trim().parse::<u64>().map_err(|_| bad())?,
                ms.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (pm.trim().parse::<u64>().map_err(|_| bad())?, 1),
        };
        match modpart {
            None => Field::new(p, m),
            Some(hex) => {
                let packed = u64::from_str_radix(hex.trim(), 16).map_err(|_| bad())?;
                let mut digits = Vec::new();
                let mut v = packed;
                if p < 2 {
                    return Err(bad());
                }
                while v > 0 {
                    digits.push(v % p);
                    v /= p;
                }
                if digits.len() != m as usize + 1 {
                    return Err(GfError::BadModulus { expected: m, p });
                }
                digits.reverse();
                Field::with_modulus(p, m, &digits)
            }
        }
    }
}

fn check_order(p: u64, m: u32) -> Result<(), GfError> {
    if !polyarith::is_prime(p) {
        return Err(GfError::NonPrime(p));
    }
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    match pow_checked(p, m) {
        Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
        _ => Err(GfError::OrderTooLarge {
            q: (p as u128).pow(m),
            limit: MAX_FIELD_ORDER,
        }),
    }
}

fn pow_checked(p: u64, m: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q = q.checked_mul(p)?;
        if q > MAX_FIELD_ORDER {
            return None;
        }
    }
    Some(q)
}

/// Wire form of a field: `{p, m, modulus}` with the modulus coefficient
/// vector most-significant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
}

impl From<&Field> for FieldJson {
    fn from(f: &Field) -> Self {
        FieldJson {
            p: f.p(),
            m: f.m(),
            modulus: f.modulus_msb().to_vec(),
        }
    }
}

impl TryFrom<&FieldJson> for Field {
    type Error = GfError;
    fn try_from(j: &FieldJson) -> Result<Field, GfError> {
        Field::with_modulus(j.p, j.m, &j.modulus)
    }
}

/// An element of a specific [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u64,
}

/// Binary field operations accepted by [`FieldElement::checked_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical integer encoding in [0, q).
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Coefficient vector over GF(p), least-significant first, length m.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.unpack(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<FieldElement, GfError> {
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.inv_raw(self.value)?,
        })
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<FieldElement, GfError> {
        let value = if e >= 0 {
            self.field.pow_raw(self.value, e as u64)
        } else {
            let inv = self.field.inv_raw(self.value)?;
            self.field.pow_raw(inv, e.unsigned_abs())
        };
        Ok(FieldElement {
            field: self.field.clone(),
            value,
        })
    }

    /// Multiplicative order; panics on zero.
    pub fn order(&self) -> u64 {
        self.field.order_raw(self.value)
    }

    /// Field-checked binary operation, for boundary code that must reject
    /// cross-field operands without panicking.
    pub fn checked_arith(op: ArithOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        if a.field != b.field {
            return Err(GfError::FieldMismatch);
        }
        let value = match op {
            ArithOp::Add => a.field.add_raw(a.value, b.value),
            ArithOp::Sub => a.field.sub_raw(a.value, b.value),
            ArithOp::Mul => a.field.mul_raw(a.value, b.value),
        };
        Ok(FieldElement {
            field: a.field.clone(),
            value,
        })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field.descriptor())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(
                    self.field == rhs.field,
                    "field mismatch in {} ({} vs {})",
                    stringify!($method),
                    self.field.descriptor(),
                    rhs.field.descriptor()
                );
                FieldElement {
                    field: self.field.clone(),
                    value: self.field.$raw(self.value, rhs.value),
                }
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_raw);
binop!(Sub, sub, sub_raw);
binop!(Mul, mul, mul_raw);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value: self.field.neg_raw(self.value),
        }
    }
}
impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let f16 = Field::with_modulus(2, 4, &[1, 0, 0, 1, 1]).unwrap();
        assert_eq!(f16.q(), 16);

        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.q(), 7);
        assert_eq!(f7.modulus_msb(), &[1, 0]);

        // x^4 + x^2 + 1 = (x^2+x+1)^2
        match Field::with_modulus(2, 4, &[1, 0, 1, 0, 1]) {
            Err(GfError::ReducibleModulus(2)) => {}
            other => panic!("expected reducible-modulus error, got {other:?}"),
        }

        assert!(matches!(Field::prime(6), Err(GfError::NonPrime(6))));
        assert!(matches!(Field::new(2, 0), Err(GfError::ZeroDegree)));
        assert!(matches!(Field::new(2, 30), Err(GfError::OrderTooLarge { .. })));

        // canonical modulus for GF(16) is x^4 + x + 1
        let canon = Field::new(2, 4).unwrap();
        assert_eq!(canon.modulus_msb(), &[1, 0, 0, 1, 1]);
        assert_eq!(canon, f16);
    }

    #[test]
    fn arithmetic_examples() {
        let f16 = Field::new(2, 4).unwrap();
        let a = f16.element(0b0011).unwrap();
        let b = f16.element(0b0101).unwrap();
        assert_eq!((&a + &b).value(), 0b0110);

        // alpha * alpha^3 = alpha^4 = alpha + 1 under x^4 + x + 1
        let alpha = f16.element(0b0010).unwrap();
        let a3 = alpha.pow(3).unwrap();
        assert_eq!((&alpha * &a3).value(), 0b0011);
        assert_eq!(alpha.pow(15).unwrap().value(), 1);

        // inverse of zero
        assert!(matches!(f16.zero().inv(), Err(GfError::DivisionByZero)));
        // negative exponents
        let inv = alpha.pow(-1).unwrap();
        assert_eq!((&alpha * &inv).value(), 1);
    }

    #[test]
    fn cross_field_rejected() {
        let f7 = Field::prime(7).unwrap();
        let f11 = Field::prime(11).unwrap();
        let a = f7.element(3).unwrap();
        let b = f11.element(3).unwrap();
        assert!(matches!(
            FieldElement::checked_arith(ArithOp::Add, &a, &b),
            Err(GfError::FieldMismatch)
        ));
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn cross_field_operator_panics() {
        let f7 = Field::prime(7).unwrap();
        let f11 = Field::prime(11).unwrap();
        let _ = f7.element(1).unwrap() + f11.element(1).unwrap();
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::prime(7).unwrap().primitive_element().value(), 3);
        assert_eq!(Field::prime(2).unwrap().primitive_element().value(), 1);
        assert_eq!(Field::new(2, 4).unwrap().primitive_element().value(), 0b0010);
        // powers of 3 mod 7 are 3,2,6,4,5,1
        let f7 = Field::prime(7).unwrap();
        let g = f7.primitive_element();
        let powers: Vec<u64> = (1..=6).map(|e| g.pow(e).unwrap().value()).collect();
        assert_eq!(powers, vec![3, 2, 6, 4, 5, 1]);
    }

    #[test]
    fn elements_of_order() {
        let f7 = Field::prime(7).unwrap();
        let b = f7.element_of_order(3).unwrap();
        assert_eq!(b.value(), 2);
        assert_eq!(b.order(), 3);
        let f13 = Field::prime(13).unwrap();
        assert_eq!(f13.element_of_order(3).unwrap().value(), 3);
        assert!(matches!(
            f7.element_of_order(4),
            Err(GfError::OrderDoesNotDivide { s: 4, group: 6 })
        ));
    }

    #[test]
    fn primitive_has_exact_order() {
        for f in [
            Field::prime(7).unwrap(),
            Field::prime(13).unwrap(),
            Field::new(2, 4).unwrap(),
            Field::new(3, 2).unwrap(),
            Field::new(2, 6).unwrap(),
        ] {
            let g = f.primitive_element();
            assert_eq!(g.order(), f.q() - 1, "in {f}");
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for f in [
            Field::prime(11).unwrap(),
            Field::new(2, 4).unwrap(),
            Field::with_modulus(2, 4, &[1, 1, 0, 0, 1]).unwrap(),
            Field::new(7, 3).unwrap(),
        ] {
            let d = f.descriptor();
            let back = Field::from_descriptor(&d).unwrap();
            assert_eq!(f, back, "descriptor {d}");
        }
        let f = Field::from_descriptor("2^4:13").unwrap();
        assert_eq!(f.modulus_msb(), &[1, 0, 0, 1, 1]);
        assert!(Field::from_descriptor("2^4:12").is_err()); // reducible x^4+x
        assert!(Field::from_descriptor("nope").is_err());
    }

    #[test]
    fn element_encoding_round_trip() {
        let f = Field::new(3, 2).unwrap();
        for v in 0..f.q() {
            let e = f.element(v).unwrap();
            assert_eq!(f.element_from_coeffs(&e.coeffs()).unwrap(), e);
        }
        assert!(f.element(9).is_err());
    }

    #[test]
    fn frobenius_identity() {
        // (a+b)^p = a^p + b^p, exhaustive for small fields
        for f in [Field::new(2, 4).unwrap(), Field::new(3, 2).unwrap(), Field::prime(7).unwrap()] {
            let p = f.p() as i64;
            for a in f.elements() {
                for b in f.elements() {
                    let lhs = (&a + &b).pow(p).unwrap();
                    let rhs = a.pow(p).unwrap() + b.pow(p).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn tables_match_slow_path() {
        let f = Field::new(2, 8).unwrap();
        for a in (0..f.q()).step_by(7) {
            for b in (0..f.q()).step_by(11) {
                assert_eq!(f.mul_raw(a, b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn fields_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Field>();
        assert_send_sync::<FieldElement>();
        let f = Field::new(2, 4).unwrap();
        let handle = {
            let f = f.clone();
            std::thread::spawn(move || f.primitive_element().value())
        };
        assert_eq!(handle.join().unwrap(), f.primitive_element().value());
    }
}
