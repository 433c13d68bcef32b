//! Binary polynomials modulo `x^n - 1`.

use std::fmt;

use crate::bits::BitVec;
use crate::gf2m::{Field, Gf};

/// Element of `F2[x]/(x^n - 1)`; bit `j` is the coefficient of `x^j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingPoly {
    coeffs: BitVec,
}

impl RingPoly {
    pub fn zero(n: usize) -> Self {
        RingPoly {
            coeffs: BitVec::zeros(n),
        }
    }

    /// `x^k mod (x^n - 1)`.
    pub fn monomial(n: usize, k: i64) -> Self {
        let mut p = Self::zero(n);
        p.coeffs.set(k.rem_euclid(n as i64) as usize, true);
        p
    }

    /// `1 + x + … + x^(n-1)`.
    pub fn all_ones(n: usize) -> Self {
        RingPoly {
            coeffs: BitVec::from_indices(n, 0..n),
        }
    }

    pub fn from_coeffs(coeffs: BitVec) -> Self {
        RingPoly { coeffs }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        RingPoly {
            coeffs: BitVec::from_bits(bits),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeff(&self, j: usize) -> bool {
        self.coeffs.get(j)
    }

    pub fn coeffs(&self) -> &BitVec {
        &self.coeffs
    }

    pub fn weight(&self) -> usize {
        self.coeffs.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// `self · x^k`, a cyclic rotation of the coefficients.
    pub fn shift(&self, k: i64) -> Self {
        let n = self.n();
        let k = k.rem_euclid(n as i64) as usize;
        RingPoly {
            coeffs: BitVec::from_indices(n, self.coeffs.iter_ones().map(|j| (j + k) % n)),
        }
    }

    pub fn add(&self, other: &RingPoly) -> Self {
        let mut c = self.coeffs.clone();
        c.xor_assign(&other.coeffs);
        RingPoly { coeffs: c }
    }

    pub fn mul(&self, other: &RingPoly) -> Self {
        assert_eq!(self.n(), other.n());
        let mut acc = Self::zero(self.n());
        for k in self.coeffs.iter_ones() {
            acc = acc.add(&other.shift(k as i64));
        }
        acc
    }

    /// `p(x^e)`: the coefficient at `j` moves to `j·e mod n`.
    ///
    /// For `e` coprime to `n` this is a permutation of positions.
    pub fn substitute_power(&self, e: usize) -> Self {
        let n = self.n();
        let mut out = Self::zero(n);
        for j in self.coeffs.iter_ones() {
            out.coeffs.flip(j * e % n);
        }
        out
    }

    /// Evaluates the polynomial at `a` in GF(2^m), where `n` divides the
    /// multiplicative group order.
    pub fn eval(&self, field: &Field, a: Gf) -> Gf {
        let mut acc = Gf::ZERO;
        match field.log(a) {
            None => {
                if self.coeff(0) {
                    acc = Gf::ONE;
                }
            }
            Some(l) => {
                for j in self.coeffs.iter_ones() {
                    acc += field.alpha_pow((l * j) as i64);
                }
            }
        }
        acc
    }

    /// Smallest `k` with `self · x^k == target`.
    pub fn shift_to(&self, target: &RingPoly) -> Option<usize> {
        if self.weight() != target.weight() {
            return None;
        }
        (0..self.n()).find(|&k| &self.shift(k as i64) == target)
    }
}

impl fmt::Debug for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingPoly({:?})", self.coeffs)
    }
}
