//! Arithmetic in GF(p) for a prime modulus p.

use crate::error::{Error, Result};

/// An element of GF(p), stored as the residue in `[0, p)` together with p.
///
/// All arithmetic is exact; combining elements of different fields panics,
/// since that is always a programming error rather than bad input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u64,
    prime: u64,
}

/// Deterministic trial-division primality test; moduli here are < 2^32.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Validate a modulus for use as a coefficient field.
pub fn check_prime(p: u64) -> Result<u64> {
    if p >= (1 << 32) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p)
}

impl FieldElem {
    pub fn new(value: i64, prime: u64) -> Self {
        let p = prime as i64;
        let v = value.rem_euclid(p) as u64;
        FieldElem { value: v, prime }
    }

    pub fn zero(prime: u64) -> Self {
        FieldElem { value: 0, prime }
    }

    pub fn one(prime: u64) -> Self {
        FieldElem { value: 1 % prime, prime }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn assert_same(&self, other: &FieldElem) {
        assert_eq!(
            self.prime, other.prime,
            "mixed coefficient fields GF({}) and GF({})",
            self.prime, other.prime
        );
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.assert_same(other);
        let mut v = self.value + other.value;
        if v >= self.prime {
            v -= self.prime;
        }
        FieldElem { value: v, prime: self.prime }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.assert_same(other);
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + self.prime - other.value
        };
        FieldElem { value: v, prime: self.prime }
    }

    pub fn neg(&self) -> FieldElem {
        let v = if self.value == 0 { 0 } else { self.prime - self.value };
        FieldElem { value: v, prime: self.prime }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.assert_same(other);
        let v = (self.value as u128 * other.value as u128 % self.prime as u128) as u64;
        FieldElem { value: v, prime: self.prime }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    ///
    /// Panics on zero: every nonzero element of GF(p) is invertible and
    /// callers divide only by leading coefficients, which are nonzero.
    pub fn inv(&self) -> FieldElem {
        assert!(self.value != 0, "inverse of zero in GF({})", self.prime);
        let (mut r0, mut r1) = (self.prime as i128, self.value as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        FieldElem::new(s0 as i64, self.prime)
    }

    pub fn div(&self, other: &FieldElem) -> FieldElem {
        self.mul(&other.inv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(32003));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(32001));
        assert!(check_prime(4).is_err());
    }

    #[test]
    fn field_ops() {
        let p = 32003;
        let a = FieldElem::new(-1, p);
        assert_eq!(a.value(), 32002);
        let b = FieldElem::new(2, p);
        assert_eq!(a.add(&b).value(), 1);
        assert_eq!(b.mul(&b).value(), 4);
        assert_eq!(b.sub(&a).value(), 3);
    }

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 101, 32003] {
            for v in 1..p.min(50) {
                let e = FieldElem::new(v as i64, p);
                assert!(e.mul(&e.inv()).is_one(), "p={p} v={v}");
            }
        }
    }

    #[test]
    #[should_panic]
    fn mixed_fields_panic() {
        let a = FieldElem::new(1, 5);
        let b = FieldElem::new(1, 7);
        let _ = a.add(&b);
    }
}
