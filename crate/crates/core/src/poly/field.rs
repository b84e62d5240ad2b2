//! Coefficient fields: the rationals and prime fields GF(p).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// Exact field arithmetic, formulated on a context object so prime
/// fields can carry their modulus.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero; callers guarantee nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// A scalar `s` such that dividing every coefficient of the vector
    /// by `s` yields the canonical representative. `coeffs[0]` is the
    /// leading coefficient and is nonzero.
    fn canonical_scale(&self, coeffs: &[&Self::Elem]) -> Self::Elem;

    /// Render an element for display.
    fn format(&self, a: &Self::Elem) -> String;
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
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
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    /// Canonical form: integral coefficients with content 1 and a
    /// positive leading coefficient.
    fn canonical_scale(&self, coeffs: &[&BigRational]) -> BigRational {
        let mut denom_lcm = BigInt::one();
        for c in coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in coeffs {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            content = content.gcd(&scaled);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        if coeffs[0].is_negative() {
            content = -content;
        }
        BigRational::new(content, denom_lcm)
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            a.to_string()
        }
    }
}

/// The prime field GF(p) with elements stored as canonical residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds GF(p). Panics if `p` is not a prime below 2^31 (so that
    /// products of residues fit in u64).
    pub fn new(p: u64) -> Self {
        Self::try_new(p).unwrap_or_else(|| panic!("{p} is not a prime below 2^31"))
    }

    pub fn try_new(p: u64) -> Option<Self> {
        if is_prime(p) && p < (1 << 31) {
            Some(PrimeField { p })
        } else {
            None
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        (s0.rem_euclid(self.p as i128)) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        let digits = r.to_u64_digits().1;
        digits.first().copied().unwrap_or(0)
    }

    fn canonical_scale(&self, coeffs: &[&u64]) -> u64 {
        *coeffs[0]
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}
