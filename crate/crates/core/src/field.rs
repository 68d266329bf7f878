//! Exact coefficient arithmetic over `Q` and over prime fields `F_p`.
//!
//! Every number that flows through the library is a [`Scalar`] interpreted
//! relative to a [`CoefficientField`].  There is deliberately no floating
//! point anywhere: ranks, kernels and cup products are all decided by exact
//! zero tests.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The coefficient field a complex, ring or matrix is computed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    /// The rationals, with arbitrary-precision arithmetic.
    Rationals,
    /// The prime field `F_p` for a (small) prime `p`.
    Prime(u64),
}

impl CoefficientField {
    /// Checks that a `Prime(p)` field really has prime characteristic small
    /// enough for overflow-free `u64` arithmetic.
    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            CoefficientField::Rationals => Ok(()),
            CoefficientField::Prime(p) => {
                if p < 2 || p >= (1 << 31) || !is_prime(p) {
                    Err(Error::Argument(format!(
                        "characteristic {p} is not a supported prime"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Parses the CLI spelling of a field: `q`, `f2`, `f3`, `f5`, ...
    pub fn parse(text: &str) -> Result<Self, Error> {
        let lowered = text.to_ascii_lowercase();
        let field = if lowered == "q" {
            CoefficientField::Rationals
        } else if let Some(rest) = lowered.strip_prefix('f') {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Argument(format!("unrecognised field `{text}`")))?;
            CoefficientField::Prime(p)
        } else {
            return Err(Error::Argument(format!("unrecognised field `{text}`")));
        };
        field.validate()?;
        Ok(field)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            CoefficientField::Rationals => Scalar::Rational(BigRational::zero()),
            CoefficientField::Prime(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            CoefficientField::Rationals => Scalar::Rational(BigRational::one()),
            CoefficientField::Prime(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, value: i64) -> Scalar {
        match *self {
            CoefficientField::Rationals => Scalar::Rational(BigRational::from(BigInt::from(value))),
            CoefficientField::Prime(p) => Scalar::Mod(value.rem_euclid(p as i64) as u64),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (*self, a, b) {
            (CoefficientField::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (CoefficientField::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod((x + y) % p)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (*self, a) {
            (CoefficientField::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (CoefficientField::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - x % p) % p),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (*self, a, b) {
            (CoefficientField::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (CoefficientField::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(x * y % p)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (*self, a) {
            (CoefficientField::Rationals, Scalar::Rational(x)) => {
                (!x.is_zero()).then(|| Scalar::Rational(x.recip()))
            }
            (CoefficientField::Prime(p), Scalar::Mod(x)) => {
                (*x % p != 0).then(|| Scalar::Mod(mod_pow(*x % p, p - 2, p)))
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Mod(x) => match *self {
                CoefficientField::Prime(p) => x % p == 0,
                CoefficientField::Rationals => panic!("scalar does not belong to field Q"),
            },
        }
    }

    /// Characteristic of the field: 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match *self {
            CoefficientField::Rationals => 0,
            CoefficientField::Prime(p) => p,
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "Q"),
            CoefficientField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of some [`CoefficientField`].  The scalar itself does not know
/// its field; all arithmetic is dispatched through the field value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod(u64),
}

impl Scalar {
    /// Renders the scalar the way reports and JSON serialise it:
    /// `-3`, `2/5` over the rationals, a canonical residue over `F_p`.
    pub fn render(&self) -> String {
        match self {
            Scalar::Rational(x) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Mod(x) => x.to_string(),
        }
    }

    /// Parses the `render` format back into a scalar of `field`.
    pub fn parse(text: &str, field: &CoefficientField) -> Result<Self, Error> {
        let bad = || Error::Argument(format!("unparseable scalar `{text}`"));
        match field {
            CoefficientField::Rationals => {
                let (numer, denom) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let numer: BigInt = numer.parse().map_err(|_| bad())?;
                let denom: BigInt = denom.parse().map_err(|_| bad())?;
                if denom.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(numer, denom)))
            }
            CoefficientField::Prime(p) => {
                let value: i64 = text.parse().map_err(|_| bad())?;
                Ok(Scalar::Mod(value.rem_euclid(*p as i64) as u64))
            }
        }
    }

    /// Sign-aware pretty form used when listing cocycles: integers keep their
    /// sign, residues are printed as-is.
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rational(x) if x.is_negative())
    }
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
