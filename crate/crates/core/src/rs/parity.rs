//! Polynomial parity-check matrices built from shifts of `θ(x)`.
//!
//! The matrix has `p·m` rows and `m` columns of ring elements. The first `m`
//! rows carry `θ_1(x)` on the diagonal (the check `c(1) = 0`). Each further
//! block of `m` rows belongs to one zero `α^s` and has `θ(x)·x^(u_i + k)` in
//! column `i` of its row `k`.
//!
//! A ring row `(h_1, …, h_m)` stands for the binary check
//! `Σ_i Σ_j h_i[j]·c_{i,j} = 0` on the image.

use serde::{Deserialize, Serialize};

use super::code::CodeSpec;
use super::idempotent::{idempotent, theta_one, IdempotentConvention};
use crate::bits::{BitMatrix, BitVec};
use crate::error::{Error, Result};
use crate::gf2m::{Field, Gf};
use crate::ring::RingPoly;

/// Shift exponents `u^(1)` (zero `α`) and `u^(2)` (zero `α²`, triple parity only).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UVectors {
    pub u1: Vec<usize>,
    pub u2: Option<Vec<usize>>,
}

/// Weight `w` of the functional `y ↦ Tr(w·y)` that turns the zero-`α` syndrome
/// into the first check row.
///
/// Any nonzero weight gives a valid parity matrix; changing it shifts every
/// entry of both u-vectors by the same amount. `w = f'(α)·α^(2-m)`, with `f`
/// the defining polynomial, makes `u1` a descending run such as `[2, 1, 0, 14]`.
pub fn check_weight(field: &Field) -> Gf {
    let m = field.m() as i64;
    field.mul(field.poly_derivative_at_alpha(), field.alpha_pow(2 - m))
}

/// `Σ_j Tr(w·γ_i·α^(s·j)) x^j` for basis element `γ_i = α^i`.
fn block_polynomial(field: &Field, weight: Gf, i: usize, s: usize) -> RingPoly {
    let wi = field.mul(weight, field.alpha_pow(i as i64));
    let bits: Vec<u8> = (0..field.n())
        .map(|j| u8::from(field.trace(field.mul(wi, field.alpha_pow((s * j) as i64)))))
        .collect();
    RingPoly::from_bits(&bits)
}

/// Matches each column's check polynomial against the shifts of `theta`.
///
/// The zero-`α²` block uses the Frobenius image `w²` of the weight, so both
/// blocks agree in their first column.
pub fn derive_u_vectors_with(spec: &CodeSpec, theta: &RingPoly) -> Result<UVectors> {
    let field = spec.field();
    let mut weight = check_weight(field);
    let mut blocks = Vec::with_capacity(spec.parity() - 1);
    for s in 1..spec.parity() {
        let u = (0..spec.m())
            .map(|i| {
                let p = block_polynomial(field, weight, i, s);
                theta
                    .shift_to(&p)
                    .ok_or_else(|| Error::Convention(format!("column {} of zero α^{s}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(u);
        weight = field.mul(weight, weight);
    }
    let mut it = blocks.into_iter();
    Ok(UVectors {
        u1: it.next().expect("parity >= 2"),
        u2: it.next(),
    })
}

/// u-vectors under the first idempotent convention that admits them.
pub fn derive_u_vectors(spec: &CodeSpec) -> Result<UVectors> {
    let mut last = None;
    for conv in IdempotentConvention::ALL {
        let theta = idempotent(spec.field(), conv)?;
        match derive_u_vectors_with(spec, &theta) {
            Ok(u) => return Ok(u),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one convention tried"))
}

/// The `p·m × m` ring matrix together with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParityMatrix {
    m: usize,
    n: usize,
    parity: usize,
    convention: IdempotentConvention,
    theta: RingPoly,
    u: UVectors,
    grid: Vec<Vec<RingPoly>>,
}

impl PolyParityMatrix {
    /// Lays out the matrix without any consistency checks.
    pub fn from_u_vectors(
        spec: &CodeSpec,
        convention: IdempotentConvention,
        theta: RingPoly,
        u: UVectors,
    ) -> Self {
        let m = spec.m();
        let n = spec.n();
        let mut grid = Vec::with_capacity(spec.parity() * m);
        for r in 0..m {
            grid.push(
                (0..m)
                    .map(|i| {
                        if i == r {
                            theta_one(n)
                        } else {
                            RingPoly::zero(n)
                        }
                    })
                    .collect(),
            );
        }
        for uv in std::iter::once(&u.u1).chain(u.u2.as_ref()) {
            for k in 0..m {
                grid.push(uv.iter().map(|&ui| theta.shift((ui + k) as i64)).collect());
            }
        }
        PolyParityMatrix {
            m,
            n,
            parity: spec.parity(),
            convention,
            theta,
            u,
            grid,
        }
    }

    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &RingPoly {
        &self.grid[row][col]
    }

    pub fn theta(&self) -> &RingPoly {
        &self.theta
    }

    pub fn u_vectors(&self) -> &UVectors {
        &self.u
    }

    pub fn convention(&self) -> IdempotentConvention {
        self.convention
    }

    pub fn parity(&self) -> usize {
        self.parity
    }

    /// Binary row for one ring row, in the symbol-major bit layout.
    pub fn expand_row(&self, row: usize) -> BitVec {
        let m = self.m;
        let mut v = BitVec::zeros(m * self.n);
        for (i, h) in self.grid[row].iter().enumerate() {
            for j in h.coeffs().iter_ones() {
                v.set(j * m + i, true);
            }
        }
        v
    }

    /// One binary row per ring row: a `p·m × m·n` matrix.
    pub fn expand(&self) -> BitMatrix {
        BitMatrix::from_rows(
            self.m * self.n,
            (0..self.rows()).map(|r| self.expand_row(r)).collect(),
        )
    }

    /// Full rank and the same row space as the classical expansion.
    pub fn verify(&self, spec: &CodeSpec) -> Result<()> {
        let h = self.expand();
        let want = spec.parity() * spec.m();
        let rank = h.rank();
        if rank != want {
            return Err(Error::Consistency(format!("rank {rank}, expected {want}")));
        }
        if !h.same_rowspace(&spec.standard_binary_parity()) {
            return Err(Error::Consistency(
                "row space differs from the standard binary parity".into(),
            ));
        }
        Ok(())
    }
}

/// Builds and verifies the polynomial parity matrix, falling back to the
/// complementary idempotent convention if the first one fails.
pub fn build_poly_parity_matrix(spec: &CodeSpec) -> Result<PolyParityMatrix> {
    let mut last = None;
    for conv in IdempotentConvention::ALL {
        let attempt = idempotent(spec.field(), conv).and_then(|theta| {
            let u = derive_u_vectors_with(spec, &theta)?;
            let pm = PolyParityMatrix::from_u_vectors(spec, conv, theta, u);
            pm.verify(spec)?;
            Ok(pm)
        });
        match attempt {
            Ok(pm) => return Ok(pm),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one convention tried"))
}
