use std::ops::Range;

use crate::bits::{BitMatrix, BitVec};
use crate::error::{Error, Result};
use crate::gf2m::{Field, Gf};

/// An `(n, n-p, p+1)` Reed-Solomon code with zeros `{1, α, …, α^(p-1)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    field: Field,
    parity: usize,
    generator: Vec<Gf>,
}

impl CodeSpec {
    /// Code over the default field of degree `m` with `parity` check symbols.
    pub fn new(m: u32, parity: usize) -> Result<Self> {
        Self::from_field(Field::new(m)?, parity)
    }

    pub fn from_field(field: Field, parity: usize) -> Result<Self> {
        if !(2..=3).contains(&parity) {
            return Err(Error::UnsupportedParity(parity));
        }
        // g(x) = prod (x - α^s), coefficients low to high.
        let mut generator = vec![Gf::ONE];
        for s in 0..parity {
            let z = field.alpha_pow(s as i64);
            let mut next = vec![Gf::ZERO; generator.len() + 1];
            for (k, &c) in generator.iter().enumerate() {
                next[k + 1] += c;
                next[k] += field.mul(c, z);
            }
            generator = next;
        }
        Ok(CodeSpec {
            field,
            parity,
            generator,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.field.m()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.field.n()
    }

    /// Number of parity symbols.
    #[inline]
    pub fn parity(&self) -> usize {
        self.parity
    }

    /// Message length in symbols.
    #[inline]
    pub fn k(&self) -> usize {
        self.n() - self.parity
    }

    pub fn d_min(&self) -> usize {
        self.parity + 1
    }

    /// Length of the binary image, `m·n`.
    #[inline]
    pub fn bit_len(&self) -> usize {
        self.m() * self.n()
    }

    /// Binary dimension, `m·(n-p)`.
    #[inline]
    pub fn info_bit_len(&self) -> usize {
        self.m() * self.k()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    /// The zeros `α^0, …, α^(p-1)`.
    pub fn zeros(&self) -> Vec<Gf> {
        (0..self.parity)
            .map(|s| self.field.alpha_pow(s as i64))
            .collect()
    }

    /// Generator polynomial coefficients, lowest degree first.
    pub fn generator_poly(&self) -> &[Gf] {
        &self.generator
    }

    /// Symbol positions that carry the message after systematic encoding.
    pub fn info_symbols(&self) -> Range<usize> {
        self.parity..self.n()
    }

    /// Flattened index of bit `i` (0-based basis index) of symbol `j`.
    #[inline]
    pub fn bit_index(&self, i: usize, j: usize) -> usize {
        j * self.m() + i
    }

    /// Systematic encoding: `c(x) = x^p·u(x) + (x^p·u(x) mod g(x))`.
    pub fn encode(&self, message: &[Gf]) -> Result<Vec<Gf>> {
        if message.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: message.len(),
            });
        }
        let p = self.parity;
        let n = self.n();
        let mut word = vec![Gf::ZERO; n];
        word[p..].copy_from_slice(message);
        // Long division by the monic g(x), highest degree first.
        let mut rem = word.clone();
        for top in (p..n).rev() {
            let coef = rem[top];
            if coef.is_zero() {
                continue;
            }
            for (k, &g) in self.generator.iter().enumerate() {
                rem[top - p + k] += self.field.mul(coef, g);
            }
        }
        word[..p].copy_from_slice(&rem[..p]);
        Ok(word)
    }

    /// `S_s = c(α^s)` for `s = 0..p`.
    pub fn syndromes(&self, word: &[Gf]) -> Vec<Gf> {
        (0..self.parity)
            .map(|s| {
                word.iter().enumerate().fold(Gf::ZERO, |acc, (j, &c)| {
                    acc + self.field.mul(c, self.field.alpha_pow((s * j) as i64))
                })
            })
            .collect()
    }

    pub fn is_codeword(&self, word: &[Gf]) -> bool {
        word.len() == self.n() && self.syndromes(word).iter().all(|s| s.is_zero())
    }

    pub fn to_binary_image(&self, codeword: &[Gf]) -> BinaryImage {
        BinaryImage::from_symbols(&self.field, codeword)
    }

    pub fn from_binary_image(&self, image: &BinaryImage) -> Vec<Gf> {
        image.to_symbols()
    }

    /// Binary expansion of `H_RS[s][j] = α^(s·j)`.
    ///
    /// Row `(s, b)` is the `b`-th coordinate of the syndrome `S_s`; its entry at
    /// bit `[i, j]` is coordinate `b` of `γ_i·α^(s·j)`. Rows are ordered
    /// `s`-major, giving a `p·m × m·n` matrix.
    pub fn standard_binary_parity(&self) -> BitMatrix {
        let m = self.m();
        let n = self.n();
        let mut h = BitMatrix::new(m * n);
        for s in 0..self.parity {
            for b in 0..m {
                let mut row = BitVec::zeros(m * n);
                for j in 0..n {
                    for i in 0..m {
                        let e = self.field.alpha_pow((i + s * j) as i64);
                        if (e.0 >> b) & 1 == 1 {
                            row.set(self.bit_index(i, j), true);
                        }
                    }
                }
                h.push_row(row);
            }
        }
        h
    }

    /// Basis of the binary image code: images of `γ_i` placed at each
    /// message position, pushed through the systematic encoder.
    pub fn generator_basis(&self) -> BitMatrix {
        let mut g = BitMatrix::new(self.bit_len());
        let mut msg = vec![Gf::ZERO; self.k()];
        for t in 0..self.k() {
            for i in 0..self.m() {
                msg[t] = self.field.alpha_pow(i as i64);
                let c = self.encode(&msg).expect("message length is k");
                g.push_row(self.to_binary_image(&c).into_bits());
            }
            msg[t] = Gf::ZERO;
        }
        g
    }
}

/// The `m × n` bit matrix of a word, flattened symbol-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    m: usize,
    n: usize,
    bits: BitVec,
}

impl BinaryImage {
    pub fn from_symbols(field: &Field, symbols: &[Gf]) -> Self {
        let m = field.m();
        let mut bits = BitVec::zeros(m * symbols.len());
        for (j, s) in symbols.iter().enumerate() {
            for i in 0..m {
                if (s.0 >> i) & 1 == 1 {
                    bits.set(j * m + i, true);
                }
            }
        }
        BinaryImage {
            m,
            n: symbols.len(),
            bits,
        }
    }

    pub fn from_bits(m: usize, bits: BitVec) -> Result<Self> {
        if !bits.len().is_multiple_of(m) {
            return Err(Error::LengthMismatch {
                expected: bits.len().next_multiple_of(m),
                got: bits.len(),
            });
        }
        Ok(BinaryImage {
            m,
            n: bits.len() / m,
            bits,
        })
    }

    pub fn to_symbols(&self) -> Vec<Gf> {
        (0..self.n)
            .map(|j| {
                Gf((0..self.m).fold(0u16, |acc, i| {
                    acc | (u16::from(self.bits.get(j * self.m + i)) << i)
                }))
            })
            .collect()
    }

    /// Entry `c_{i,j}` with 0-based basis index `i`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits.get(j * self.m + i)
    }

    /// Row `c^(i)` of the image.
    pub fn row(&self, i: usize) -> Vec<u8> {
        (0..self.n).map(|j| u8::from(self.get(i, j))).collect()
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn into_bits(self) -> BitVec {
        self.bits
    }
}
