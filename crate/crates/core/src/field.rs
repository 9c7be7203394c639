//! Arithmetic in the prime field F_p.
//!
//! Residues are bare `u8` values in `[0, p)`, reduced eagerly after every
//! operation. The moduli of interest are tiny (p = 2, 3, 5 in the shipped
//! tables), so plain `%` reduction beats any clever residue system, and the
//! multiplicative inverse can afford an exhaustive scan — it never sits on a
//! hot path.

use crate::error::{Error, Result};

/// A prime modulus and the field operations on its residues.
///
/// Primality is checked once in [`FieldSpec::new`]; every operation after
/// that assumes a valid modulus and arguments already reduced mod p
/// (enforced with `debug_assert!`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    p: u8,
}

impl FieldSpec {
    /// Validates `p` by trial division. This is the only primality check in
    /// the crate: shapes, group elements and tables all build on a
    /// `FieldSpec` constructed here.
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::NonPrimeModulus(p));
        }
        let mut d = 2;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NonPrimeModulus(p));
            }
            d += 1;
        }
        if p > u8::MAX as u64 {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(FieldSpec { p: p as u8 })
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        debug_assert!(a < self.p && b < self.p);
        let s = a as u16 + b as u16;
        let p = self.p as u16;
        (if s >= p { s - p } else { s }) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        debug_assert!(a < self.p && b < self.p);
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse by exhaustive search.
    pub fn inv(&self, a: u8) -> Result<u8> {
        debug_assert!(a < self.p);
        if a == 0 {
            return Err(Error::NonInvertible);
        }
        Ok((1..self.p)
            .find(|&b| self.mul(a, b) == 1)
            .expect("every non-zero residue of a prime modulus has an inverse"))
    }

    /// Determinant of a row-major n×n matrix of residues.
    ///
    /// Cofactor expansion for n ≤ 3 (the sizes the classifier enumerates by
    /// the million), Gaussian elimination for anything larger.
    pub fn det(&self, n: usize, m: &[u8]) -> u8 {
        assert_eq!(m.len(), n * n, "matrix entry count must be n^2");
        match n {
            0 => 1,
            1 => m[0],
            2 => self.sub(self.mul(m[0], m[3]), self.mul(m[1], m[2])),
            3 => {
                let term = |a: u8, b: u8, c: u8| self.mul(self.mul(a, b), c);
                let pos = self.add(
                    self.add(term(m[0], m[4], m[8]), term(m[1], m[5], m[6])),
                    term(m[2], m[3], m[7]),
                );
                let neg = self.add(
                    self.add(term(m[2], m[4], m[6]), term(m[1], m[3], m[8])),
                    term(m[0], m[5], m[7]),
                );
                self.sub(pos, neg)
            }
            _ => self.det_by_elimination(n, m),
        }
    }

    fn det_by_elimination(&self, n: usize, m: &[u8]) -> u8 {
        let mut a = m.to_vec();
        let mut det = 1u8;
        for col in 0..n {
            let pivot = match (col..n).find(|&r| a[r * n + col] != 0) {
                Some(r) => r,
                None => return 0,
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = self.neg(det);
            }
            let lead = a[col * n + col];
            det = self.mul(det, lead);
            let inv = self.inv(lead).expect("pivot is non-zero");
            for r in col + 1..n {
                let factor = self.mul(a[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    a[r * n + c] = self.sub(a[r * n + c], self.mul(factor, a[col * n + c]));
                }
            }
        }
        det
    }
}
