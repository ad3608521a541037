//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! Arithmetic goes through a context object implementing [`Field`] while the
//! elements themselves stay plain data. This lets a prime field carry its
//! modulus at runtime and keeps matrices generic over the chosen field.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Arithmetic context for an exact field.
///
/// Contexts are cheap to clone and are stored inside every matrix built
/// over them. Elements compare with `==`; all canonical forms are unique,
/// so equality of representations is equality in the field.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    // The receiver carries the field data (e.g. the modulus), so this is a
    // conversion method rather than an associated constructor.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Parses a scalar as printed by [`Field::render`]: an integer or `p/q`.
    fn parse(&self, s: &str) -> Result<Self::Elem, String>;

    /// Renders a scalar for the textual matrix format.
    fn render(&self, a: &Self::Elem) -> String;

    /// The name accepted by the CLI `--field` flag, e.g. `rational` or `fp:5`.
    fn name(&self) -> String;
}

/// The field of arbitrary-precision rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn parse(&self, s: &str) -> Result<BigRational, String> {
        BigRational::from_str(s).map_err(|e| format!("bad rational `{s}`: {e}"))
    }

    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn name(&self) -> String {
        "rational".to_string()
    }
}

/// The prime field `F_p` with elements stored as canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds `F_p`, rejecting non-primes and moduli too large for
    /// overflow-free multiplication via `u128`.
    pub fn new(p: u64) -> Result<Self, String> {
        if p < 2 {
            return Err(format!("{p} is not prime"));
        }
        if p >= 1 << 31 {
            return Err(format!("modulus {p} too large (must be < 2^31)"));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(format!("{p} is not prime"));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, n: i128) -> u64 {
        let p = self.p as i128;
        (n.rem_euclid(p)) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // Fermat: a^(p-2) mod p.
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn parse(&self, s: &str) -> Result<u64, String> {
        let n = i128::from_str(s).map_err(|e| format!("bad integer `{s}`: {e}"))?;
        Ok(self.reduce_i128(n))
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn name(&self) -> String {
        format!("fp:{}", self.p)
    }
}
