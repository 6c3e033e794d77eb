//! Measurement elements as rescaled Lorentz transforms, and back.
//!
//! An element `M = U√E` acts on state vectors through `ψ(M) = s·R·B` where
//! `R = ψ(U)` and `B` is the pure boost of velocity `v⃗ = −E⃗/E₀`, or the
//! rescaled null boost when `E` is rank one. Conversely every `s·R·B` comes
//! from a one-parameter family `M(λ) = U(R)·√E(λ)` of elements.

use serde::{Deserialize, Serialize};

use crate::adjoint::{psi_of_unitary, Mat4R};
use crate::conemap::{hs_inner, minkowski, phi, FourVector};
use crate::error::{Error, Result};
use crate::lorentz::{
    boost, is_block_rotation, su2_of_rotation, LorentzDecomposition, Velocity, VelocityKind,
    LORENTZ_TOL, TOL_V,
};
use crate::qmat::{polar_decompose, HermMat2, Mat2C, POSITIVITY_TOL};

/// Default bound on `‖Σ M†M − 𝕀‖_max`.
pub const COMPLETENESS_TOL: f64 = 1e-9;

/// Elements whose entries are all below this are dropped by
/// [`complete_to_measurement`].
pub const ZERO_ELEMENT_TOL: f64 = 1e-12;

/// A finite ordered list of measurement elements.
///
/// Construction only requires a non-empty list; completeness is checked by
/// [`Measurement::validate`] and by the operations that need it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasurementRepr")]
pub struct Measurement {
    elements: Vec<Mat2C>,
}

#[derive(Deserialize)]
struct MeasurementRepr {
    elements: Vec<Mat2C>,
}

impl TryFrom<MeasurementRepr> for Measurement {
    type Error = Error;
    fn try_from(r: MeasurementRepr) -> Result<Self> {
        Measurement::new(r.elements)
    }
}

impl Measurement {
    pub fn new(elements: Vec<Mat2C>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyMeasurement);
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[Mat2C] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `‖Σ M†M − 𝕀‖_max`.
    pub fn completeness_defect(&self) -> f64 {
        let sum = self
            .elements
            .iter()
            .fold(HermMat2::zero(), |acc, m| acc + m.gram());
        sum.max_abs_diff(&HermMat2::identity())
    }

    pub fn validate(&self, tol: f64) -> bool {
        self.completeness_defect() <= tol
    }

    pub fn ensure_valid(&self, tol: f64) -> Result<()> {
        let defect = self.completeness_defect();
        if defect <= tol {
            Ok(())
        } else {
            Err(Error::InvalidMeasurement(defect))
        }
    }
}

pub fn validate(meas: &Measurement, tol: f64) -> bool {
    meas.validate(tol)
}

/// Scaled Lorentz data of one measurement element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectGeometry {
    /// Coordinates of `E = M†M`.
    pub e_vec: FourVector,
    /// `½ η E`.
    pub v_vec: FourVector,
    pub velocity: Velocity,
    /// `√(ηVV)` when timelike, `E₀/2` when null.
    pub scale: f64,
    /// `ψ(U)` for the polar factor `U`.
    pub rotation: Mat4R,
    pub kind: VelocityKind,
}

impl EffectGeometry {
    /// `scale · rotation · boost(velocity)`, equal to `ψ(M)`.
    pub fn transform(&self) -> Mat4R {
        (self.rotation * boost(&self.velocity)).scale(self.scale)
    }

    pub fn decomposition(&self) -> LorentzDecomposition {
        LorentzDecomposition {
            rotation: self.rotation,
            velocity: self.velocity,
            scale: self.scale,
        }
    }
}

/// Polar-decomposes `m` and reads off rotation, velocity and scale.
///
/// The element is null when `1 − |v| ≤ TOL_V`; its velocity is then
/// normalized to unit length. For timelike elements the scale is computed
/// as `|det m|`, which equals `√(ηVV)` without the cancellation in
/// `E₀² − |E⃗|²`.
pub fn element_to_lorentz(m: &Mat2C) -> Result<EffectGeometry> {
    if m.norm_sqr() == 0.0 {
        return Err(Error::ZeroElement);
    }
    let (u, _) = polar_decompose(m);
    let rotation = psi_of_unitary(&u)?;
    let e_vec = phi(&m.gram());
    let v_vec = e_vec.lower() * 0.5;
    let a = e_vec[0];
    let v = [-e_vec[1] / a, -e_vec[2] / a, -e_vec[3] / a];
    let speed = v[0].hypot(v[1]).hypot(v[2]);
    let (velocity, scale) = if speed < 1.0 - TOL_V {
        (Velocity::timelike(v)?, m.det().norm())
    } else {
        (Velocity::null(v.map(|c| c / speed))?, 0.5 * a)
    };
    Ok(EffectGeometry {
        e_vec,
        v_vec,
        velocity,
        scale,
        rotation,
        kind: velocity.kind(),
    })
}

/// Largest admissible `λ`: `√(2/(1+|v|))` for timelike, 1 for null.
pub fn lambda_max(vel: &Velocity) -> f64 {
    match vel.kind() {
        VelocityKind::Timelike => (2.0 / (1.0 + vel.speed())).sqrt(),
        VelocityKind::Null => 1.0,
    }
}

/// `E(λ)` with coordinates `λ²[1, −v⃗]`. No range check on `λ`.
pub fn effect_family(vel: &Velocity, lambda: f64) -> HermMat2 {
    let l2 = lambda * lambda;
    let v = vel.components();
    HermMat2::from_pauli_coords([l2, -l2 * v[0], -l2 * v[1], -l2 * v[2]])
}

/// `√E(λ)`: coordinates `(1+√(1−v²))^{−1/2}[λ(1+√(1−v²)), −λv⃗]` for
/// timelike velocities and `[λ, −λv⃗]` for null ones. No range check on `λ`.
pub fn sqrt_effect_family(vel: &Velocity, lambda: f64) -> HermMat2 {
    let v = vel.components();
    match vel.kind() {
        VelocityKind::Timelike => {
            let speed = vel.speed();
            let root = ((1.0 - speed) * (1.0 + speed)).sqrt();
            let k = lambda / (1.0 + root).sqrt();
            HermMat2::from_pauli_coords([k * (1.0 + root), -k * v[0], -k * v[1], -k * v[2]])
        }
        VelocityKind::Null => {
            HermMat2::from_pauli_coords([lambda, -lambda * v[0], -lambda * v[1], -lambda * v[2]])
        }
    }
}

/// `M(λ) = U(R)·√E(λ)` for the rotation and velocity of `decomp`.
///
/// The scale of `decomp` is not used: every admissible `λ` realizes the
/// same transform up to the factor `λ²/2·√(1−v²)` (or `λ²/2` when null).
pub fn lorentz_to_element(decomp: &LorentzDecomposition, lambda: f64) -> Result<Mat2C> {
    let max = lambda_max(&decomp.velocity);
    if !(lambda > 0.0 && lambda <= max * (1.0 + 1e-12)) {
        return Err(Error::LambdaOutOfRange { lambda, max });
    }
    if !is_block_rotation(&decomp.rotation, LORENTZ_TOL) {
        return Err(Error::NotDecomposable);
    }
    let u = su2_of_rotation(&decomp.rotation);
    Ok(u * sqrt_effect_family(&decomp.velocity, lambda).to_mat())
}

/// Probability and unrescaled post-measurement state `mρm†`.
pub fn apply_element(m: &Mat2C, rho: &HermMat2) -> Result<(f64, HermMat2)> {
    ensure_positive(rho)?;
    Ok((hs_inner(&m.gram(), rho), m.conjugate(rho)))
}

pub(crate) fn ensure_positive(rho: &HermMat2) -> Result<()> {
    let (_, lmin) = rho.eigenvalues();
    if lmin < -POSITIVITY_TOL {
        Err(Error::NotPositive(lmin))
    } else {
        Ok(())
    }
}

/// `{m, √(𝕀 − m†m)}`, dropping the second element when it vanishes.
pub fn complete_to_measurement(m: &Mat2C) -> Result<Measurement> {
    let rest = HermMat2::identity() - m.gram();
    let (_, lmin) = rest.eigenvalues();
    if lmin < -POSITIVITY_TOL {
        return Err(Error::TooLarge(lmin));
    }
    let root = rest.sqrt_psd()?;
    let mut elements = vec![*m];
    if root.to_mat().max_abs() > ZERO_ELEMENT_TOL {
        elements.push(root.to_mat());
    }
    Measurement::new(elements)
}

/// Both sides of the mixedness transport law and of the invariant
/// probability law for one element and state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportInvariants {
    /// `η ρ_m ρ_m`.
    pub lhs_norm: f64,
    /// `(ηVV)(ηρρ)`.
    pub rhs_norm: f64,
    /// `η(V, ρ)`.
    pub p_from_minkowski: f64,
    /// `Tr(Eρ)`.
    pub p_direct: f64,
}

pub fn prop2_invariants(m: &Mat2C, rho: &HermMat2) -> Result<TransportInvariants> {
    ensure_positive(rho)?;
    let e = m.gram();
    let rho_vec = phi(rho);
    let post = phi(&m.conjugate(rho));
    let v_vec = phi(&e).lower() * 0.5;
    Ok(TransportInvariants {
        lhs_norm: minkowski(&post, &post),
        rhs_norm: minkowski(&v_vec, &v_vec) * minkowski(&rho_vec, &rho_vec),
        p_from_minkowski: minkowski(&v_vec, &rho_vec),
        p_direct: hs_inner(&e, rho),
    })
}

/// `log₂(ηvv)` for timelike `v`.
pub fn info_measure(v: &FourVector) -> Result<f64> {
    let n = minkowski(v, v);
    if n > 0.0 {
        Ok(n.log2())
    } else {
        Err(Error::NullOrSpacelike(n))
    }
}
