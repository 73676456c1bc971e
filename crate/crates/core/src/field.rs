//! Arithmetic in the prime field `F_p` for small primes.
//!
//! Elements are plain `u32` values kept in the canonical range `[0, p)`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported characteristic. Products of two residues fit in a `u32`.
pub const MAX_CHARACTERISTIC: u32 = 97;

/// A prime characteristic `p` together with a table of inverses.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    inverses: Vec<u32>,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=MAX_CHARACTERISTIC).contains(&p) {
            return Err(Error::InvalidRing(format!(
                "characteristic {p} outside supported range 2..={MAX_CHARACTERISTIC}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("characteristic {p} is not prime")));
        }
        let mut inverses = vec![0; p as usize];
        for a in 1..p {
            // a^(p-2) by Fermat
            inverses[a as usize] = pow_mod(a, p - 2, p);
        }
        Ok(Self { p, inverses })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.inverses[(a % self.p) as usize])
    }

    /// Inverse of a known nonzero element.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inverses[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut base = a % self.p;
        let mut e = e;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Applies a field operation; `b` is ignored by the unary operations.
    pub fn apply(&self, op: FieldOp, a: u32, b: u32) -> Result<u32> {
        let (a, b) = (a % self.p, b % self.p);
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Neg => self.neg(a),
            FieldOp::Inv => self.inv(a)?,
        })
    }

    /// Returns `e` with `q == p^e`, if `q` is a power of `p` (including `p^0 = 1`).
    pub fn log_q(&self, q: u64) -> Option<u32> {
        let p = self.p as u64;
        let (mut e, mut v) = (0, 1u64);
        while v < q {
            v = v.checked_mul(p)?;
            e += 1;
        }
        (v == q).then_some(e)
    }
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (a % p, 1u32);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}
