//! Exact field arithmetic: prime fields `F_p` and arbitrary-precision rationals.
//!
//! Every scalar is kept in canonical form (reduced mod `p`, or a reduced
//! fraction), so equality is structural and results are reproducible
//! bit-for-bit across runs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::KitError;

/// A field descriptor: characteristic `p` (prime) or `0` for the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    pub characteristic: u32,
}

/// An exact scalar. The container (matrix, category, ...) knows which field
/// it lives in; `Fp` values are canonical representatives in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

impl Field {
    pub fn new(characteristic: u32) -> Result<Field, KitError> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(Field { characteristic })
        } else {
            Err(KitError::BadField(characteristic))
        }
    }

    pub const GF2: Field = Field { characteristic: 2 };
    pub const QQ: Field = Field { characteristic: 0 };

    pub fn is_gf2(&self) -> bool {
        self.characteristic == 2
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::one()),
            _ => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            p => {
                let p = p as i64;
                Scalar::Fp(n.rem_euclid(p) as u64)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.characteristic, a, b) {
            (0, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (p, Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p as u64),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self.characteristic, a) {
            (0, Scalar::Rat(x)) => Scalar::Rat(-x),
            (p, Scalar::Fp(x)) => Scalar::Fp((p as u64 - x) % p as u64),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.characteristic, a, b) {
            (0, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (p, Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(x * y % p as u64),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self.characteristic, a) {
            (0, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            (p, Scalar::Fp(x)) => {
                if *x == 0 {
                    None
                } else {
                    // Fermat: x^(p-2) mod p
                    Some(Scalar::Fp(pow_mod(*x, p as u64 - 2, p as u64)))
                }
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 1,
            Scalar::Rat(x) => x.is_one(),
        }
    }

    /// `(-1)^e` as a scalar; exponents may be any integer.
    pub fn sign(&self, e: i64) -> Scalar {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }

    /// Parse a scalar from the text form used in category files:
    /// an integer like `-3` or a fraction like `2/5`.
    pub fn parse(&self, s: &str) -> Result<Scalar, KitError> {
        let s = s.trim();
        let mk_err = || KitError::BadScalar(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            if self.characteristic != 0 {
                let n: i64 = num.trim().parse().map_err(|_| mk_err())?;
                let d: i64 = den.trim().parse().map_err(|_| mk_err())?;
                let dv = self.from_i64(d);
                let inv = self.inv(&dv).ok_or_else(mk_err)?;
                return Ok(self.mul(&self.from_i64(n), &inv));
            }
            let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
            let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(mk_err());
            }
            Ok(Scalar::Rat(BigRational::new(n, d)))
        } else if self.characteristic == 0 {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Scalar::Rat(BigRational::from_integer(n)))
        } else {
            let n: i64 = s.parse().map_err(|_| mk_err())?;
            Ok(self.from_i64(n))
        }
    }

    /// Canonical text form, inverse to `parse`.
    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Scalar {
    pub fn abs_rat(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(x) => Some(x.abs()),
            _ => None,
        }
    }
}
