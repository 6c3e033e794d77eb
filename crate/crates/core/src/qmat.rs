//! 2×2 complex matrix kernel.
//!
//! [`Mat2C`] holds general matrices (measurement elements, spinor lifts) and
//! [`HermMat2`] holds hermitian ones (states, effects and their roots). The
//! hermitian type stores only its independent entries, so the lower-left
//! entry is the conjugate of the upper-right one by construction.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Default tolerance on the smallest eigenvalue when testing positivity.
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Largest `‖h − h†‖` accepted when reading a hermitian matrix.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Relative size of `|det m|` against `‖m‖²` below which `m` is treated as
/// rank deficient by [`polar_decompose`].
pub const SINGULAR_TOL: f64 = 1e-14;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

fn finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Wire form of a 2×2 complex matrix: rows of `[re, im]` pairs.
pub type MatParts = [[[f64; 2]; 2]; 2];

/// A general 2×2 complex matrix with finite entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatParts", into = "MatParts")]
pub struct Mat2C {
    m: [[Complex; 2]; 2],
}

impl Mat2C {
    pub fn new(m: [[Complex; 2]; 2]) -> Result<Self> {
        if m.iter().flatten().all(|z| finite(*z)) {
            Ok(Self { m })
        } else {
            Err(Error::NonFinite("2x2 matrix"))
        }
    }

    /// Builds a matrix from `[re, im]` pairs, row major.
    pub fn from_parts(parts: MatParts) -> Result<Self> {
        let c = |p: [f64; 2]| Complex::new(p[0], p[1]);
        Self::new([
            [c(parts[0][0]), c(parts[0][1])],
            [c(parts[1][0]), c(parts[1][1])],
        ])
    }

    /// Real diagonal matrix.
    pub fn diag(d0: f64, d1: f64) -> Self {
        Self::raw([[Complex::from(d0), ZERO], [ZERO, Complex::from(d1)]])
    }

    pub(crate) const fn raw(m: [[Complex; 2]; 2]) -> Self {
        Self { m }
    }

    pub const fn identity() -> Self {
        Self::raw([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn zero() -> Self {
        Self::raw([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub fn scalar(c: Complex) -> Self {
        Self::raw([[c, ZERO], [ZERO, c]])
    }

    pub fn entries(&self) -> [[Complex; 2]; 2] {
        self.m
    }

    pub fn to_parts(&self) -> MatParts {
        self.m.map(|row| row.map(|z| [z.re, z.im]))
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.m[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::raw([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn det(&self) -> Complex {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex {
        self.m[0][0] + self.m[1][1]
    }

    /// Classical adjoint, `adj(m)·m = det(m)·𝕀`.
    pub fn adjugate(&self) -> Self {
        let m = &self.m;
        Self::raw([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    pub fn scale(&self, c: Complex) -> Self {
        let m = &self.m;
        Self::raw([[c * m[0][0], c * m[0][1]], [c * m[1][0], c * m[1][1]]])
    }

    /// Squared Frobenius norm, `Tr(m†m)`.
    pub fn norm_sqr(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// `m†m`, the effect of a measurement element.
    pub fn gram(&self) -> HermMat2 {
        let m = &self.m;
        let d0 = m[0][0].norm_sqr() + m[1][0].norm_sqr();
        let d1 = m[0][1].norm_sqr() + m[1][1].norm_sqr();
        let off = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
        HermMat2::raw(d0, d1, off)
    }

    /// `m·h·m†`.
    pub fn conjugate(&self, h: &HermMat2) -> HermMat2 {
        HermMat2::hermitian_part(&(*self * h.to_mat() * self.adjoint()))
    }

    /// Deviation of `m†m` from the identity, max-abs entrywise.
    pub fn unitarity_defect(&self) -> f64 {
        self.gram().to_mat().max_abs_diff(&Self::identity())
    }
}

impl Add for Mat2C {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::raw([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2C {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Mat2C {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl Mul for Mat2C {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::raw([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Mul<f64> for Mat2C {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(Complex::from(rhs))
    }
}

impl Mul<Complex> for Mat2C {
    type Output = Self;
    fn mul(self, rhs: Complex) -> Self {
        self.scale(rhs)
    }
}

impl TryFrom<MatParts> for Mat2C {
    type Error = Error;
    fn try_from(p: MatParts) -> Result<Self> {
        Self::from_parts(p)
    }
}

impl From<Mat2C> for MatParts {
    fn from(m: Mat2C) -> Self {
        m.to_parts()
    }
}

impl From<HermMat2> for Mat2C {
    fn from(h: HermMat2) -> Self {
        h.to_mat()
    }
}

/// A 2×2 hermitian matrix.
///
/// Stored as the two real diagonal entries and the upper-right entry. On
/// the wire it has the same form as [`Mat2C`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Mat2C", into = "Mat2C")]
pub struct HermMat2 {
    d0: f64,
    d1: f64,
    off: Complex,
}

impl HermMat2 {
    /// `[[d0, off], [conj(off), d1]]`.
    pub fn new(d0: f64, d1: f64, off: Complex) -> Result<Self> {
        if d0.is_finite() && d1.is_finite() && finite(off) {
            Ok(Self::raw(d0, d1, off))
        } else {
            Err(Error::NonFinite("hermitian matrix"))
        }
    }

    pub(crate) const fn raw(d0: f64, d1: f64, off: Complex) -> Self {
        Self { d0, d1, off }
    }

    /// Accepts `m` when it is hermitian to within `tol` (max-abs) and
    /// returns its hermitian part.
    pub fn from_mat(m: &Mat2C, tol: f64) -> Result<Self> {
        let defect = m.max_abs_diff(&m.adjoint());
        if defect > tol {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self::hermitian_part(m))
    }

    /// `(m + m†)/2`.
    pub fn hermitian_part(m: &Mat2C) -> Self {
        let e = m.entries();
        Self::raw(e[0][0].re, e[1][1].re, (e[0][1] + e[1][0].conj()) * 0.5)
    }

    pub const fn identity() -> Self {
        Self::raw(1.0, 1.0, ZERO)
    }

    pub const fn zero() -> Self {
        Self::raw(0.0, 0.0, ZERO)
    }

    pub fn diag(d0: f64, d1: f64) -> Self {
        Self::raw(d0, d1, ZERO)
    }

    /// Pauli basis element `σ_μ` for `μ ∈ 0..4` (𝕀, X, Y, Z).
    pub fn pauli(mu: usize) -> Self {
        PAULI[mu]
    }

    /// Coordinates `Tr(h·σ_μ)` in the Pauli basis.
    pub fn pauli_coords(&self) -> [f64; 4] {
        [
            self.d0 + self.d1,
            2.0 * self.off.re,
            -2.0 * self.off.im,
            self.d0 - self.d1,
        ]
    }

    /// Inverse of [`HermMat2::pauli_coords`]: `½ Σ c_μ σ_μ`.
    pub fn from_pauli_coords(c: [f64; 4]) -> Self {
        Self::raw(
            0.5 * (c[0] + c[3]),
            0.5 * (c[0] - c[3]),
            Complex::new(0.5 * c[1], -0.5 * c[2]),
        )
    }

    pub fn to_mat(&self) -> Mat2C {
        Mat2C::raw([
            [Complex::from(self.d0), self.off],
            [self.off.conj(), Complex::from(self.d1)],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.d0 + self.d1
    }

    pub fn det(&self) -> f64 {
        self.d0 * self.d1 - self.off.norm_sqr()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::raw(s * self.d0, s * self.d1, self.off * s)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_mat().max_abs_diff(&other.to_mat())
    }

    /// `(λ₊, λ₋)` with `λ₊ ≥ λ₋`, from `λ± = ½(A₀ ± |A⃗|)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let tr = self.d0 + self.d1;
        let r = (self.d0 - self.d1).hypot(2.0 * self.off.norm());
        (0.5 * (tr + r), 0.5 * (tr - r))
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.eigenvalues().1 >= -tol
    }

    /// Positive square root via the closed form on Pauli coordinates.
    ///
    /// With coordinates `[a, x, y, z]` and `X = 2√(a² − x² − y² − z²)` the
    /// root has coordinates `[α, x/α, y/α, z/α]`, `α = √(a + X/2)`.
    pub fn sqrt_psd(&self) -> Result<Self> {
        self.sqrt_psd_tol(POSITIVITY_TOL)
    }

    pub fn sqrt_psd_tol(&self, tol: f64) -> Result<Self> {
        let (_, lmin) = self.eigenvalues();
        if lmin < -tol {
            return Err(Error::NotPositive(lmin));
        }
        let c = self.pauli_coords();
        let r = c[1].hypot(c[2]).hypot(c[3]);
        let minkowski = ((c[0] - r) * (c[0] + r)).max(0.0);
        Ok(Self::sqrt_from_coords(c, minkowski.sqrt()))
    }

    /// Root of the matrix with coordinates `c`, given `X/2 = √(ηcc)`.
    pub(crate) fn sqrt_from_coords(c: [f64; 4], half_x: f64) -> Self {
        let alpha2 = c[0] + half_x;
        if c[0] <= 0.0 || alpha2 <= 0.0 {
            return Self::zero();
        }
        let alpha = alpha2.sqrt();
        Self::from_pauli_coords([alpha, c[1] / alpha, c[2] / alpha, c[3] / alpha])
    }
}

impl TryFrom<Mat2C> for HermMat2 {
    type Error = Error;
    fn try_from(m: Mat2C) -> Result<Self> {
        Self::from_mat(&m, HERMITIAN_TOL)
    }
}

impl Add for HermMat2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::raw(self.d0 + rhs.d0, self.d1 + rhs.d1, self.off + rhs.off)
    }
}

impl Sub for HermMat2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::raw(self.d0 - rhs.d0, self.d1 - rhs.d1, self.off - rhs.off)
    }
}

/// 𝕀, X, Y, Z.
pub const PAULI: [HermMat2; 4] = [
    HermMat2::raw(1.0, 1.0, ZERO),
    HermMat2::raw(0.0, 0.0, ONE),
    HermMat2::raw(0.0, 0.0, Complex::new(0.0, -1.0)),
    HermMat2::raw(1.0, -1.0, ZERO),
];

pub fn mul(a: &Mat2C, b: &Mat2C) -> Mat2C {
    *a * *b
}

pub fn adjoint(a: &Mat2C) -> Mat2C {
    a.adjoint()
}

pub fn sqrt_psd(e: &HermMat2) -> Result<HermMat2> {
    e.sqrt_psd()
}

/// Polar decomposition `m = u·p` with `u` unitary and `p = √(m†m)`.
///
/// Uses the 2×2 identity `u = (m + ω·adj(m)†) / Tr(p)` where `ω = det(u)`.
/// For invertible `m`, `ω = det(m)/|det(m)|`. For rank-deficient `m` the
/// unitary factor is only fixed on the range of `p`; `ω = 1` completes it on
/// the null space so that `det(u) = 1`. `m = 0` gives `(𝕀, 0)`.
pub fn polar_decompose(m: &Mat2C) -> (Mat2C, HermMat2) {
    let norm2 = m.norm_sqr();
    if norm2 == 0.0 {
        return (Mat2C::identity(), HermMat2::zero());
    }
    let d = m.det();
    let abs_d = d.norm();
    let omega = if abs_d > SINGULAR_TOL * norm2 {
        d / abs_d
    } else {
        ONE
    };
    // √(ηEE) = 2|det m| for E = m†m.
    let p = HermMat2::sqrt_from_coords(m.gram().pauli_coords(), 2.0 * abs_d);
    let tr_p = (norm2 + 2.0 * abs_d).sqrt();
    let u = (*m + m.adjugate().adjoint().scale(omega)).scale(Complex::from(1.0 / tr_p));
    (u, p)
}

/// `exp(-i θ/2 n⃗·σ⃗) = cos(θ/2)𝕀 − i sin(θ/2) n⃗·σ⃗` for a unit axis.
pub fn su2_rotation(axis: [f64; 3], theta: f64) -> Mat2C {
    let (s, c) = (0.5 * theta).sin_cos();
    su2_from_quaternion([c, s * axis[0], s * axis[1], s * axis[2]])
}

/// `w𝕀 − i(q_x X + q_y Y + q_z Z)` for a unit quaternion `[w, q_x, q_y, q_z]`.
pub(crate) fn su2_from_quaternion(q: [f64; 4]) -> Mat2C {
    let [w, x, y, z] = q;
    Mat2C::raw([
        [Complex::new(w, -z), Complex::new(-y, -x)],
        [Complex::new(y, -x), Complex::new(w, z)],
    ])
}
