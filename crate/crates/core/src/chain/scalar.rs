use std::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient ring of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Q,
    /// Prime field 𝔽_p.
    Fp(u32),
}

impl Ring {
    pub const F2: Ring = Ring::Fp(2);

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Z)
    }

    pub fn parse(s: &str) -> Option<Ring> {
        match s {
            "Z" | "z" => Some(Ring::Z),
            "Q" | "q" => Some(Ring::Q),
            _ => {
                let p: u32 = s.strip_prefix('F').or_else(|| s.strip_prefix('f'))?.parse().ok()?;
                is_prime(p).then_some(Ring::Fp(p))
            }
        }
    }
}

impl Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::Fp(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d * d <= p).all(|d| p % d != 0)
}

/// Ring element with fallible arithmetic, so that machine integers can report overflow.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn checked_add(&self, o: &Self) -> Option<Self>;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    /// Inverse of a unit.
    fn unit_inverse(&self) -> Self;

    fn checked_sub(&self, o: &Self) -> Option<Self> {
        self.checked_add(&o.neg())
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        i64::checked_add(*self, *o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        i64::checked_mul(*self, *o)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn unit_inverse(&self) -> Self {
        *self
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Self {
        self.clone()
    }
}

/// Exact rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_i64(v: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_unit(&self) -> bool {
        !self.0.is_zero()
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(Rat(&self.0 + &o.0))
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(Rat(&self.0 * &o.0))
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
    fn unit_inverse(&self) -> Self {
        Rat(self.0.recip())
    }
}

/// Element of 𝔽_p; the modulus travels with the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub v: u32,
    pub p: u32,
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Fp {
        Fp { v: v.rem_euclid(p as i64) as u32, p }
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        // modulus is fixed up by the first arithmetic operation with a real element
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_unit(&self) -> bool {
        self.v != 0
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        let p = self.p.max(o.p);
        if p == 0 {
            return Some(*self);
        }
        Some(Fp { v: ((self.v as u64 + o.v as u64) % p as u64) as u32, p })
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        let p = self.p.max(o.p);
        if p == 0 {
            return Some(*self);
        }
        Some(Fp { v: ((self.v as u64 * o.v as u64) % p as u64) as u32, p })
    }
    fn neg(&self) -> Self {
        if self.v == 0 {
            *self
        } else {
            Fp { v: self.p - self.v, p: self.p }
        }
    }
    fn unit_inverse(&self) -> Self {
        // Fermat: v^(p-2)
        let p = self.p as u64;
        let (mut base, mut e, mut acc) = (self.v as u64, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { v: acc as u32, p: self.p }
    }
}

/// A field whose elements are built from integers; the prime field carries its modulus.
pub trait Field: Scalar + Display {
    type Ctx: Copy + Send + Sync;
    fn from_i64(ctx: Self::Ctx, v: i64) -> Self;
    fn ring(ctx: Self::Ctx) -> Ring;
}

impl Field for Rat {
    type Ctx = ();
    fn from_i64(_: (), v: i64) -> Self {
        Rat::from_i64(v)
    }
    fn ring(_: ()) -> Ring {
        Ring::Q
    }
}

impl Field for Fp {
    type Ctx = u32;
    fn from_i64(p: u32, v: i64) -> Self {
        Fp::new(v, p)
    }
    fn ring(p: u32) -> Ring {
        Ring::Fp(p)
    }
}

pub(crate) fn bigint_to_u64(b: &BigInt) -> u64 {
    b.abs().to_u64().expect("torsion coefficient exceeds u64")
}
