//! The map `ψ(A) = φ ∘ Ad_A ∘ φ⁻¹` as an explicit 4×4 real matrix.
//!
//! `ψ(A)` sends the coordinates of `ρ` to the coordinates of `AρA†`. It is
//! multiplicative, sends unitaries to rotations of the Bloch block and
//! positive roots to (rescaled) boosts.

use std::ops::{Index, Mul};

use serde::{Deserialize, Serialize};

use crate::conemap::FourVector;
use crate::error::{Error, Result};
use crate::qmat::{HermMat2, Mat2C, POSITIVITY_TOL, PAULI};

/// Tolerance on `‖u†u − 𝕀‖` accepted by [`psi_of_unitary`].
pub const UNITARY_TOL: f64 = 1e-9;

/// A 4×4 real matrix acting on four-vectors.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat4R(pub [[f64; 4]; 4]);

impl Mat4R {
    pub fn identity() -> Self {
        Self::diag([1.0; 4])
    }

    pub fn zero() -> Self {
        Self([[0.0; 4]; 4])
    }

    pub fn diag(d: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, di) in d.into_iter().enumerate() {
            m.0[i][i] = di;
        }
        m
    }

    /// `diag(1, r)` for a 3×3 block.
    pub fn block_rotation(r: [[f64; 3]; 3]) -> Self {
        let mut m = Self::identity();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i + 1][j + 1] = r[i][j];
            }
        }
        m
    }

    /// The lower-right 3×3 block.
    pub fn spatial_block(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[i + 1][j + 1]))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    pub fn column(&self, j: usize) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i][j]))
    }

    pub fn row(&self, i: usize) -> FourVector {
        FourVector(self.0[i])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|r| r.map(|x| s * x)))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn det(&self) -> f64 {
        // Laplace expansion over the 2×2 minors of the top two rows.
        let m = &self.0;
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        let s0 = minor(0, 1, 0, 1);
        let s1 = minor(0, 1, 0, 2);
        let s2 = minor(0, 1, 0, 3);
        let s3 = minor(0, 1, 1, 2);
        let s4 = minor(0, 1, 1, 3);
        let s5 = minor(0, 1, 2, 3);
        let c5 = minor(2, 3, 0, 1);
        let c4 = minor(2, 3, 0, 2);
        let c3 = minor(2, 3, 0, 3);
        let c2 = minor(2, 3, 1, 2);
        let c1 = minor(2, 3, 1, 3);
        let c0 = minor(2, 3, 2, 3);
        s0 * c0 - s1 * c1 + s2 * c2 + s3 * c3 - s4 * c4 + s5 * c5
    }

    /// `Lᵀ η L`, equal to `η` exactly when `L` preserves the Minkowski form.
    pub fn metric_pullback(&self) -> Self {
        let eta = Self::diag(crate::conemap::ETA);
        self.transpose() * eta * *self
    }
}

impl Index<(usize, usize)> for Mat4R {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl Mul for Mat4R {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
        }))
    }
}

impl Mul<FourVector> for Mat4R {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| {
            (0..4).map(|k| self.0[i][k] * v.0[k]).sum()
        }))
    }
}

impl Mul<f64> for Mat4R {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

/// Real part of `Tr(b σ_μ)` for each `μ`.
fn pauli_traces(b: &Mat2C) -> [f64; 4] {
    let e = b.entries();
    [
        (e[0][0] + e[1][1]).re,
        (e[0][1] + e[1][0]).re,
        // Tr(bY) = i(b01 − b10)
        -(e[0][1] - e[1][0]).im,
        (e[0][0] - e[1][1]).re,
    ]
}

/// `ψ(a)_{μν} = ½ Tr(a σ_ν a† σ_μ)`.
pub fn psi(a: &Mat2C) -> Mat4R {
    let adj = a.adjoint();
    let mut out = Mat4R::zero();
    for (nu, sigma) in PAULI.iter().enumerate() {
        let image = *a * sigma.to_mat() * adj;
        for (mu, t) in pauli_traces(&image).into_iter().enumerate() {
            out.0[mu][nu] = 0.5 * t;
        }
    }
    out
}

/// Rotation matrix of a unit quaternion `[w, x, y, z]`.
pub fn rotation_from_quaternion(q: [f64; 4]) -> [[f64; 3]; 3] {
    let [w, x, y, z] = q;
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

/// Unit quaternion `[cos θ/2, sin θ/2 · n⃗]` of a unitary, up to sign.
///
/// The global phase is removed by dividing by `√det u`, after which
/// `u = w𝕀 − i q⃗·σ⃗`.
pub fn unitary_quaternion(u: &Mat2C) -> [f64; 4] {
    let s = u.det().sqrt();
    let su = u.scale(s.inv());
    let e = su.entries();
    let q = [
        0.5 * (e[0][0] + e[1][1]).re,
        -0.5 * (e[0][1] + e[1][0]).im,
        0.5 * (e[1][0] - e[0][1]).re,
        0.5 * (e[1][1] - e[0][0]).im,
    ];
    let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    q.map(|c| c / n)
}

/// `ψ(u) = diag(1, R_θ(n⃗))` for unitary `u`.
pub fn psi_of_unitary(u: &Mat2C) -> Result<Mat4R> {
    let defect = u.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    Ok(Mat4R::block_rotation(rotation_from_quaternion(
        unitary_quaternion(u),
    )))
}

/// `ψ(√E)` in terms of the coordinates `[α, β, γ, δ]` of the root.
pub fn psi_sqrt_root_form(root: &HermMat2) -> Mat4R {
    let c = root.pauli_coords();
    let x = c[0] * c[0] - c[1] * c[1] - c[2] * c[2] - c[3] * c[3];
    let mut m = Mat4R::zero();
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = 0.5 * c[i] * c[j];
        }
        m.0[i][i] += if i == 0 { -0.25 * x } else { 0.25 * x };
    }
    m
}

/// `ψ(√E)` in terms of the coordinates `[a, x, y, z]` of `E` itself.
///
/// Requires `2a + X > 0`, i.e. `E ≠ 0`.
pub fn psi_sqrt_effect_form(e: &HermMat2) -> Result<Mat4R> {
    let (c, big_x) = effect_coords(e)?;
    let denom = 2.0 * c[0] + big_x;
    if denom <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let mut m = Mat4R::zero();
    for i in 0..4 {
        m.0[0][i] = 0.5 * c[i];
        m.0[i][0] = 0.5 * c[i];
    }
    for i in 1..4 {
        for j in 1..4 {
            m.0[i][j] = c[i] * c[j] / denom;
        }
        m.0[i][i] += 0.25 * big_x;
    }
    Ok(m)
}

/// Coordinates of a positive `e` and `X = 2√(ηEE)`.
fn effect_coords(e: &HermMat2) -> Result<([f64; 4], f64)> {
    let (_, lmin) = e.eigenvalues();
    if lmin < -POSITIVITY_TOL {
        return Err(Error::NotPositive(lmin));
    }
    let c = e.pauli_coords();
    let r = c[1].hypot(c[2]).hypot(c[3]);
    let big_x = 2.0 * ((c[0] - r) * (c[0] + r)).max(0.0).sqrt();
    Ok((c, big_x))
}

/// `ψ(√e)` from the closed forms, for positive nonzero `e`.
///
/// The effect-coordinate form is used unless `2a + X ≤ 1e-12·a`, where the
/// root-coordinate form takes over.
pub fn psi_of_sqrt(e: &HermMat2) -> Result<Mat4R> {
    let (c, big_x) = effect_coords(e)?;
    if c[0] <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    if 2.0 * c[0] + big_x > 1e-12 * c[0] {
        psi_sqrt_effect_form(e)
    } else {
        Ok(psi_sqrt_root_form(&e.sqrt_psd()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conemap::phi;
    use crate::qmat::{su2_rotation, Complex};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&Mat2C::identity()), Mat4R::identity());
        assert_eq!(
            psi(&HermMat2::pauli(1).to_mat()),
            Mat4R::diag([1.0, 1.0, -1.0, -1.0])
        );
        let c = 0.7;
        let m = psi(&Mat2C::identity().scale(Complex::from(c)));
        assert!(m.max_abs_diff(&Mat4R::identity().scale(c * c)) < 1e-15);
    }

    #[test]
    fn psi_acts_by_conjugation() {
        let a = Mat2C::from_parts([[[0.3, -0.2], [1.1, 0.4]], [[-0.5, 0.9], [0.2, 0.0]]]).unwrap();
        let rho = HermMat2::new(0.6, 0.4, Complex::new(0.1, -0.3)).unwrap();
        let lhs = psi(&a) * phi(&rho);
        let rhs = phi(&a.conjugate(&rho));
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn psi_of_unitary_examples() {
        let u = su2_rotation([0.0, 0.0, 1.0], FRAC_PI_2);
        let expected = Mat4R([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(psi_of_unitary(&u).unwrap().max_abs_diff(&expected) < 1e-15);
        assert!(psi(&u).max_abs_diff(&expected) < 1e-15);

        assert_eq!(psi_of_unitary(&Mat2C::identity()).unwrap(), Mat4R::identity());

        let u = su2_rotation([1.0, 0.0, 0.0], PI);
        let expected = Mat4R::diag([1.0, 1.0, -1.0, -1.0]);
        assert!(psi_of_unitary(&u).unwrap().max_abs_diff(&expected) < 1e-15);
        assert!(psi(&u).max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn psi_of_unitary_ignores_global_phase() {
        let u = su2_rotation([0.6, 0.0, 0.8], 1.3).scale(Complex::from_polar(1.0, 0.77));
        assert!(psi_of_unitary(&u).unwrap().max_abs_diff(&psi(&u)) < 1e-14);
        let iz = HermMat2::pauli(3).to_mat().scale(Complex::i());
        assert!(psi_of_unitary(&iz).unwrap().max_abs_diff(&psi(&iz)) < 1e-15);
    }

    #[test]
    fn psi_of_unitary_rejects_non_unitary() {
        assert!(matches!(
            psi_of_unitary(&Mat2C::diag(1.0, 0.5)),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn psi_of_sqrt_examples() {
        let half = HermMat2::identity().scale(0.5);
        let m = psi_of_sqrt(&half).unwrap();
        assert!(m.max_abs_diff(&Mat4R::identity().scale(0.5)) < 1e-15);

        let m = psi_of_sqrt(&HermMat2::diag(1.0, 0.0)).unwrap();
        let expected = Mat4R([
            [0.5, 0.0, 0.0, 0.5],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.5, 0.0, 0.0, 0.5],
        ]);
        assert!(m.max_abs_diff(&expected) < 1e-15);

        // √3/4 times the boost of velocity (0, 0, −½): γ = 2/√3, L_zz = γ.
        let q = 3f64.sqrt() / 4.0;
        let expected = Mat4R([
            [0.5, 0.0, 0.0, 0.25],
            [0.0, q, 0.0, 0.0],
            [0.0, 0.0, q, 0.0],
            [0.25, 0.0, 0.0, 0.5],
        ]);
        let e = HermMat2::diag(0.75, 0.25);
        assert!(psi_of_sqrt(&e).unwrap().max_abs_diff(&expected) < 1e-15);
        let root = e.sqrt_psd().unwrap();
        assert!(psi_sqrt_root_form(&root).max_abs_diff(&expected) < 1e-15);
        assert!(psi(&root.to_mat()).max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn psi_of_sqrt_errors() {
        assert!(matches!(
            psi_of_sqrt(&HermMat2::pauli(3)),
            Err(Error::NotPositive(_))
        ));
        assert!(matches!(psi_of_sqrt(&HermMat2::zero()), Err(Error::ZeroMatrix)));
    }

    #[test]
    fn det_of_scaled_identity_and_permutation() {
        assert_eq!(Mat4R::identity().scale(2.0).det(), 16.0);
        let p = Mat4R([
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(p.det(), -1.0);
        let m = Mat4R([
            [2.0, 1.0, 0.0, 3.0],
            [0.0, -1.0, 4.0, 1.0],
            [1.0, 0.0, 2.0, 0.0],
            [3.0, 2.0, 1.0, 1.0],
        ]);
        // numpy.linalg.det
        assert_eq!(m.det(), -12.0);
    }
}
