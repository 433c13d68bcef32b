//! Arithmetic in GF(2^m) over the polynomial basis `[1, α, …, α^(m-1)]`.
//!
//! Elements are stored as `m`-bit coordinate vectors: bit `i` is the
//! coefficient of `α^i`. Multiplication goes through log/antilog tables
//! built from a primitive polynomial, which is verified at construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Supported extension degrees.
pub const MIN_DEGREE: u32 = 3;
pub const MAX_DEGREE: u32 = 10;

/// Primitive polynomials used by [`Field::new`], indexed by `m - 3`.
///
/// Bit `k` holds the coefficient of `x^k`. Among the primitive polynomials of
/// degree 7, `x^7 + x + 1` is the one whose u-vectors are `[6, 5, …, 0]` and
/// `[6, 69, 5, 68, …]`.
pub const PRIMITIVE_POLYS: [u32; 8] = [
    0b1011,          // x^3 + x + 1
    0b1_0011,        // x^4 + x + 1
    0b10_0101,       // x^5 + x^2 + 1
    0b100_0011,      // x^6 + x + 1
    0b1000_0011,     // x^7 + x + 1
    0b1_0001_1101,   // x^8 + x^4 + x^3 + x^2 + 1
    0b10_0001_0001,  // x^9 + x^4 + 1
    0b100_0000_1001, // x^10 + x^3 + 1
];

/// A field element as a coordinate vector over the canonical basis.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Gf(pub u16);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Characteristic 2: addition is XOR of coordinates.
impl std::ops::Add for Gf {
    type Output = Gf;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Gf {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

/// GF(2^m) with a fixed primitive element `α`, the residue of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    m: u32,
    n: usize,
    poly: u32,
    // exp has 2n entries so that exp[a + b] needs no reduction for a, b < n.
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl Field {
    /// Field of degree `m` built on the default primitive polynomial.
    pub fn new(m: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        Self::with_poly(m, PRIMITIVE_POLYS[(m - MIN_DEGREE) as usize])
    }

    /// Field of degree `m` defined by `poly`, which must be primitive.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let not_primitive = Error::NotPrimitive { m, poly };
        if poly >> m != 1 || poly & 1 == 0 {
            return Err(not_primitive);
        }
        let n = (1usize << m) - 1;
        let mut exp = vec![0u16; 2 * n];
        let mut log = vec![0u16; n + 1];
        let mut seen = vec![false; n + 1];
        let mut x: u32 = 1;
        for k in 0..n {
            if seen[x as usize] {
                // α has order < n, so f is not primitive.
                return Err(not_primitive);
            }
            seen[x as usize] = true;
            exp[k] = x as u16;
            exp[k + n] = x as u16;
            log[x as usize] = k as u16;
            x <<= 1;
            if x >> m != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(not_primitive);
        }
        Ok(Field {
            m,
            n,
            poly,
            exp,
            log,
        })
    }

    /// Extension degree.
    #[inline]
    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// Multiplicative group order, `2^m - 1`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Defining primitive polynomial, bit `k` = coefficient of `x^k`.
    #[inline]
    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// `α^k` for any integer exponent.
    #[inline]
    pub fn alpha_pow(&self, k: i64) -> Gf {
        Gf(self.exp[k.rem_euclid(self.n as i64) as usize])
    }

    /// Discrete log base `α`, `None` for zero.
    #[inline]
    pub fn log(&self, a: Gf) -> Option<usize> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize] as usize)
        }
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() || b.is_zero() {
            return Gf::ZERO;
        }
        Gf(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        match self.log(a) {
            None => Err(Error::ZeroInverse),
            Some(l) => Ok(Gf(self.exp[(self.n - l) % self.n])),
        }
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`; negative exponents require a nonzero base.
    pub fn pow(&self, a: Gf, k: i64) -> Result<Gf> {
        match self.log(a) {
            None if k > 0 => Ok(Gf::ZERO),
            None if k == 0 => Ok(Gf::ONE),
            None => Err(Error::ZeroInverse),
            Some(l) => Ok(self.alpha_pow(l as i64 * k)),
        }
    }

    /// Absolute trace `a + a^2 + … + a^(2^(m-1))`, which lies in GF(2).
    pub fn trace(&self, a: Gf) -> bool {
        let mut acc = Gf::ZERO;
        let mut x = a;
        for _ in 0..self.m {
            acc += x;
            x = self.mul(x, x);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    /// Trace of `α^k`.
    #[inline]
    pub fn trace_alpha_pow(&self, k: i64) -> bool {
        self.trace(self.alpha_pow(k))
    }

    /// Coordinates of `a` over `[1, α, …, α^(m-1)]`.
    pub fn to_bits(&self, a: Gf) -> Vec<u8> {
        (0..self.m).map(|i| ((a.0 >> i) & 1) as u8).collect()
    }

    /// Inverse of [`Field::to_bits`].
    pub fn from_bits(&self, bits: &[u8]) -> Result<Gf> {
        if bits.len() != self.m() {
            return Err(Error::LengthMismatch {
                expected: self.m(),
                got: bits.len(),
            });
        }
        Ok(Gf(bits
            .iter()
            .enumerate()
            .fold(0u16, |acc, (i, &b)| acc | (u16::from(b & 1) << i))))
    }

    /// Formal derivative of the defining polynomial, evaluated at `α`.
    pub fn poly_derivative_at_alpha(&self) -> Gf {
        // In characteristic 2 only odd powers survive: d/dx x^k = x^(k-1).
        (1..=self.m)
            .filter(|k| k % 2 == 1 && (self.poly >> k) & 1 == 1)
            .fold(Gf::ZERO, |acc, k| acc + self.alpha_pow(i64::from(k) - 1))
    }

    /// Iterator over all nonzero elements in log order `α^0, α^1, …`.
    pub fn nonzero(&self) -> impl Iterator<Item = Gf> + '_ {
        self.exp[..self.n].iter().map(|&e| Gf(e))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Gf) -> Result<usize> {
        let l = self.log(a).ok_or(Error::ZeroInverse)?;
        Ok(self.n / gcd(self.n, l))
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
