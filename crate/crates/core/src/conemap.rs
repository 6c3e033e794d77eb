//! Pauli coordinates of hermitian matrices and the Minkowski future cone.
//!
//! `phi` sends a hermitian matrix `A` to `[Tr(A), Tr(AX), Tr(AY), Tr(AZ)]`.
//! Positive matrices land exactly in the future cone `Γ`, rank-one ones on
//! its boundary, and each fixed-trace slice of `Γ` is a Bloch ball.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::HermMat2;

/// Diagonal of the Minkowski metric.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// A real four-vector; index 0 is the trace ("time") component.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self([t, x, y, z])
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn spatial_norm(&self) -> f64 {
        self.0[1].hypot(self.0[2]).hypot(self.0[3])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Euclidean dot product.
    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn minkowski(&self, other: &Self) -> f64 {
        minkowski(self, other)
    }

    /// Index lowering: time kept, space negated.
    pub fn lower(&self) -> Self {
        Self([self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for FourVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for FourVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for FourVector {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for FourVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }
}

/// Where a four-vector sits relative to the future cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeMembership {
    pub in_cone: bool,
    pub on_boundary: bool,
    pub minkowski_norm2: f64,
}

pub fn phi(h: &HermMat2) -> FourVector {
    FourVector(h.pauli_coords())
}

pub fn phi_inv(v: &FourVector) -> HermMat2 {
    HermMat2::from_pauli_coords(v.0)
}

pub fn minkowski(u: &FourVector, v: &FourVector) -> f64 {
    u.0[0] * v.0[0] - u.0[1] * v.0[1] - u.0[2] * v.0[2] - u.0[3] * v.0[3]
}

/// Hilbert-Schmidt inner product `Tr(ab)`, real for hermitian arguments.
pub fn hs_inner(a: &HermMat2, b: &HermMat2) -> f64 {
    (a.to_mat() * b.to_mat()).trace().re
}

/// Classifies `v` against the future cone.
///
/// `v` is in the cone when `|v⃗| ≤ v₀ + 2·tol`, which is exactly the
/// condition `λ₋ ≥ −tol` on the matrix `phi_inv(v)`. It is on the boundary
/// when additionally `|ηvv| ≤ tol·max(1, v₀²)`.
pub fn cone_membership(v: &FourVector, tol: f64) -> ConeMembership {
    let n2 = minkowski(v, v);
    let lmin = 0.5 * (v.0[0] - v.spatial_norm());
    let in_cone = lmin >= -tol;
    let on_boundary = in_cone && n2.abs() <= tol * v.0[0].powi(2).max(1.0);
    ConeMembership {
        in_cone,
        on_boundary,
        minkowski_norm2: n2,
    }
}

/// `ηvv = 2((Tr ρ)² − Tr ρ²)` for `ρ = phi_inv(v)`.
pub fn mixedness(v: &FourVector) -> f64 {
    minkowski(v, v)
}

/// `(Tr h)𝕀 − h`, the matrix whose coordinates are `η·phi(h)`.
pub fn eta_conjugate(h: &HermMat2) -> HermMat2 {
    HermMat2::identity().scale(h.trace()) - *h
}

/// Radius and Bloch vector of the trace slice through `v`.
pub fn bloch_section(v: &FourVector) -> Result<(f64, [f64; 3])> {
    if v.0[0] <= 0.0 {
        return Err(Error::NonPositiveTrace(v.0[0]));
    }
    Ok((v.0[0], v.spatial()))
}
