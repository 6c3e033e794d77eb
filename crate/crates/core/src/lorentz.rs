//! Restricted Lorentz transforms and their rescaled null limits.
//!
//! Every transform handled here has the shape `s·R·B` with `s > 0`, `R` a
//! spatial rotation and `B` either a pure timelike boost `L(v)` or the
//! rescaled null boost `[[1, −vᵀ], [−v, vvᵀ]]`.

use serde::{Deserialize, Serialize};

use crate::adjoint::Mat4R;
use crate::conemap::FourVector;
use crate::error::{Error, Result};
use crate::qmat::{su2_from_quaternion, HermMat2, Mat2C};

/// Width of the band around `|v| = 1` treated as the speed of light.
pub const TOL_V: f64 = 1e-9;

/// Default tolerance for [`classify`] and [`decompose`].
pub const LORENTZ_TOL: f64 = 1e-9;

const AXIS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VelocityKind {
    Timelike,
    Null,
}

/// A three-velocity, either strictly slower than light or null.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VelocityRepr")]
pub struct Velocity {
    v: [f64; 3],
    kind: VelocityKind,
}

#[derive(Deserialize)]
struct VelocityRepr {
    v: [f64; 3],
    kind: VelocityKind,
}

impl TryFrom<VelocityRepr> for Velocity {
    type Error = Error;
    fn try_from(r: VelocityRepr) -> Result<Self> {
        match r.kind {
            VelocityKind::Timelike => Velocity::timelike(r.v),
            VelocityKind::Null => Velocity::null(r.v),
        }
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    v[0].hypot(v[1]).hypot(v[2])
}

fn check_finite(v: [f64; 3]) -> Result<()> {
    if v.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("velocity"))
    }
}

impl Velocity {
    /// Requires `|v| < 1 − TOL_V`.
    pub fn timelike(v: [f64; 3]) -> Result<Self> {
        check_finite(v)?;
        let speed = norm3(v);
        if speed < 1.0 - TOL_V {
            Ok(Self {
                v,
                kind: VelocityKind::Timelike,
            })
        } else {
            Err(Error::NotTimelike(speed))
        }
    }

    /// Requires `||v| − 1| ≤ TOL_V`. The components are kept as given.
    pub fn null(v: [f64; 3]) -> Result<Self> {
        check_finite(v)?;
        let speed = norm3(v);
        if (speed - 1.0).abs() <= TOL_V {
            Ok(Self {
                v,
                kind: VelocityKind::Null,
            })
        } else {
            Err(Error::NotNull(speed))
        }
    }

    /// Timelike below `1 − TOL_V`, null within `TOL_V` of 1.
    pub fn classify(v: [f64; 3]) -> Result<Self> {
        check_finite(v)?;
        let speed = norm3(v);
        if speed < 1.0 - TOL_V {
            Self::timelike(v)
        } else if speed <= 1.0 + TOL_V {
            Self::null(v)
        } else {
            Err(Error::Superluminal(speed))
        }
    }

    pub fn zero() -> Self {
        Self {
            v: [0.0; 3],
            kind: VelocityKind::Timelike,
        }
    }

    pub fn components(&self) -> [f64; 3] {
        self.v
    }

    pub fn kind(&self) -> VelocityKind {
        self.kind
    }

    pub fn speed(&self) -> f64 {
        norm3(self.v)
    }

    /// `1/√(1 − v²)`; infinite for null velocities.
    pub fn gamma(&self) -> f64 {
        match self.kind {
            VelocityKind::Timelike => {
                let s = self.speed();
                1.0 / ((1.0 - s) * (1.0 + s)).sqrt()
            }
            VelocityKind::Null => f64::INFINITY,
        }
    }

    /// `[1, v⃗]`.
    pub fn four_velocity(&self) -> FourVector {
        FourVector::new(1.0, self.v[0], self.v[1], self.v[2])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..3)
            .map(|i| (self.v[i] - other.v[i]).abs())
            .fold(0.0, f64::max)
    }
}

/// `[[γ, −γvᵀ], [−γv, 𝕀 + γ²/(1+γ) vvᵀ]]`.
pub fn pure_boost(vel: &Velocity) -> Result<Mat4R> {
    if vel.kind != VelocityKind::Timelike {
        return Err(Error::NotTimelike(vel.speed()));
    }
    let v = vel.v;
    let g = vel.gamma();
    let k = g * g / (1.0 + g);
    let mut m = Mat4R::identity();
    m.0[0][0] = g;
    for i in 0..3 {
        m.0[0][i + 1] = -g * v[i];
        m.0[i + 1][0] = -g * v[i];
        for j in 0..3 {
            m.0[i + 1][j + 1] += k * v[i] * v[j];
        }
    }
    Ok(m)
}

/// `[[1, −vᵀ], [−v, vvᵀ]]`, the `γ⁻¹`-rescaled limit of `L(v)` as `|v| → 1`.
pub fn null_boost_rescaled(vel: &Velocity) -> Result<Mat4R> {
    if vel.kind != VelocityKind::Null {
        return Err(Error::NotNull(vel.speed()));
    }
    let n = FourVector::new(1.0, -vel.v[0], -vel.v[1], -vel.v[2]);
    Ok(Mat4R(std::array::from_fn(|i| {
        std::array::from_fn(|j| n[i] * n[j])
    })))
}

/// [`pure_boost`] or [`null_boost_rescaled`] according to the velocity kind.
pub fn boost(vel: &Velocity) -> Mat4R {
    match vel.kind {
        VelocityKind::Timelike => pure_boost(vel),
        VelocityKind::Null => null_boost_rescaled(vel),
    }
    .expect("kind checked")
}

fn rodrigues(axis: [f64; 3], theta: f64) -> [[f64; 3]; 3] {
    let (s, c) = theta.sin_cos();
    let [x, y, z] = axis;
    let t = 1.0 - c;
    [
        [c + t * x * x, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, c + t * y * y, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, c + t * z * z],
    ]
}

/// `diag(1, R_θ(n⃗))`, counter-clockwise about the unit axis `n⃗`.
pub fn rotation4(axis: [f64; 3], theta: f64) -> Result<Mat4R> {
    check_finite(axis)?;
    let n = norm3(axis);
    if (n - 1.0).abs() > AXIS_TOL || !theta.is_finite() {
        return Err(Error::BadAxis(n));
    }
    Ok(Mat4R::block_rotation(rodrigues(axis, theta)))
}

/// Unit quaternion of a 3×3 rotation, from the trace or from the dominant
/// diagonal entry when the rotation angle is near π.
pub fn rotation_quaternion(r: &[[f64; 3]; 3]) -> [f64; 4] {
    let tr = r[0][0] + r[1][1] + r[2][2];
    let q = if tr >= r[0][0] && tr >= r[1][1] && tr >= r[2][2] {
        let w = 0.5 * (1.0 + tr).sqrt();
        let f = 0.25 / w;
        [
            w,
            f * (r[2][1] - r[1][2]),
            f * (r[0][2] - r[2][0]),
            f * (r[1][0] - r[0][1]),
        ]
    } else if r[0][0] >= r[1][1] && r[0][0] >= r[2][2] {
        let x = 0.5 * (1.0 + r[0][0] - r[1][1] - r[2][2]).sqrt();
        let f = 0.25 / x;
        [
            f * (r[2][1] - r[1][2]),
            x,
            f * (r[0][1] + r[1][0]),
            f * (r[0][2] + r[2][0]),
        ]
    } else if r[1][1] >= r[2][2] {
        let y = 0.5 * (1.0 - r[0][0] + r[1][1] - r[2][2]).sqrt();
        let f = 0.25 / y;
        [
            f * (r[0][2] - r[2][0]),
            f * (r[0][1] + r[1][0]),
            y,
            f * (r[1][2] + r[2][1]),
        ]
    } else {
        let z = 0.5 * (1.0 - r[0][0] - r[1][1] + r[2][2]).sqrt();
        let f = 0.25 / z;
        [
            f * (r[1][0] - r[0][1]),
            f * (r[0][2] + r[2][0]),
            f * (r[1][2] + r[2][1]),
            z,
        ]
    };
    let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    q.map(|c| c / n)
}

/// Axis and angle `θ ∈ [0, π]` of a 3×3 rotation. The axis is `[0, 0, 1]`
/// for the identity.
pub fn rotation_axis_angle(r: &[[f64; 3]; 3]) -> ([f64; 3], f64) {
    let mut q = rotation_quaternion(r);
    if q[0] < 0.0 {
        q = q.map(|c| -c);
    }
    let s = norm3([q[1], q[2], q[3]]);
    if s == 0.0 {
        return ([0.0, 0.0, 1.0], 0.0);
    }
    ([q[1] / s, q[2] / s, q[3] / s], 2.0 * s.atan2(q[0]))
}

/// The special unitary `U(R) = cos(θ/2)𝕀 − i sin(θ/2) n⃗·σ⃗` with `ψ(U) = R`.
///
/// Of the two lifts `±U`, the one whose (0,0) entry has non-negative real
/// part is returned, ties broken by a non-negative imaginary part.
pub fn su2_of_rotation(rotation: &Mat4R) -> Mat2C {
    let mut q = rotation_quaternion(&rotation.spatial_block());
    // (0,0) = w − i z, (0,1) = −y − i x
    let key = [q[0], -q[3], -q[2], -q[1]];
    if key.iter().find(|c| **c != 0.0).is_some_and(|c| *c < 0.0) {
        q = q.map(|c| -c);
    }
    su2_from_quaternion(q)
}

/// The positive unimodular root `P` with `ψ(P) = L(v)`.
pub fn boost_spinor(vel: &Velocity) -> Result<HermMat2> {
    if vel.kind != VelocityKind::Timelike {
        return Err(Error::NotTimelike(vel.speed()));
    }
    let g = vel.gamma();
    let t = (2.0 * (g + 1.0)).sqrt();
    let k = -g * (2.0 / (g + 1.0)).sqrt();
    let v = vel.v;
    Ok(HermMat2::from_pauli_coords([t, k * v[0], k * v[1], k * v[2]]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformClass {
    Restricted,
    RescaledRestricted,
    RescaledNullBoostProduct,
    Other,
}

/// `L = scale · rotation · boost(velocity)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzDecomposition {
    pub rotation: Mat4R,
    pub velocity: Velocity,
    pub scale: f64,
}

impl LorentzDecomposition {
    /// Validates the rotation block and the scale.
    pub fn new(rotation: Mat4R, velocity: Velocity, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) || !is_block_rotation(&rotation, LORENTZ_TOL) {
            return Err(Error::NotDecomposable);
        }
        Ok(Self {
            rotation,
            velocity,
            scale,
        })
    }

    pub fn recompose(&self) -> Mat4R {
        (self.rotation * boost(&self.velocity)).scale(self.scale)
    }
}

/// `diag(1, R)` with `R` proper orthogonal, within `tol`.
pub fn is_block_rotation(m: &Mat4R, tol: f64) -> bool {
    let mut frame = true;
    for i in 1..4 {
        frame &= m.0[0][i].abs() <= tol && m.0[i][0].abs() <= tol;
    }
    frame &= (m.0[0][0] - 1.0).abs() <= tol;
    let r = Mat4R::block_rotation(m.spatial_block());
    let orth = (r.transpose() * r).max_abs_diff(&Mat4R::identity()) <= tol;
    frame && orth && (r.det() - 1.0).abs() <= tol
}

fn is_restricted(l: &Mat4R, tol: f64) -> bool {
    if !l.is_finite() {
        return false;
    }
    let size = l.max_abs().max(1.0);
    let eta = Mat4R::diag(crate::conemap::ETA);
    l.metric_pullback().max_abs_diff(&eta) <= tol * size * size
        && (l.det() - 1.0).abs() <= tol * size.powi(4)
        && l.0[0][0] > 0.0
}

pub fn classify(l: &Mat4R, tol: f64) -> TransformClass {
    if !l.is_finite() {
        return TransformClass::Other;
    }
    if is_restricted(l, tol) {
        return TransformClass::Restricted;
    }
    if scaled_restricted(l, tol).is_some() {
        return TransformClass::RescaledRestricted;
    }
    if null_product(l, tol).is_some() {
        return TransformClass::RescaledNullBoostProduct;
    }
    TransformClass::Other
}

/// `(s, L/s)` when `L/s` is restricted for `s = (det L)^{1/4}`.
fn scaled_restricted(l: &Mat4R, tol: f64) -> Option<(f64, Mat4R)> {
    let det = l.det();
    if !(det > 0.0) {
        return None;
    }
    let s = det.powf(0.25);
    let b = l.scale(1.0 / s);
    is_restricted(&b, tol).then_some((s, b))
}

fn decompose_restricted(b: &Mat4R, scale: f64) -> Option<LorentzDecomposition> {
    let g = b.0[0][0];
    let v = [-b.0[0][1] / g, -b.0[0][2] / g, -b.0[0][3] / g];
    let velocity = Velocity::timelike(v).ok()?;
    let inverse = pure_boost(&Velocity::timelike(v.map(|c| -c)).ok()?).ok()?;
    let rotation = *b * inverse;
    Some(LorentzDecomposition {
        rotation,
        velocity,
        scale,
    })
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// The rotation of smallest angle taking unit `from` to unit `to`.
fn minimal_rotation(from: [f64; 3], to: [f64; 3]) -> [[f64; 3]; 3] {
    let c = from[0] * to[0] + from[1] * to[1] + from[2] * to[2];
    let axis = cross(from, to);
    let s = norm3(axis);
    if s > 0.0 {
        return rodrigues(axis.map(|a| a / s), s.atan2(c));
    }
    if c > 0.0 {
        return rodrigues([0.0, 0.0, 1.0], 0.0);
    }
    // antipodal: half turn about an axis orthogonal to `from`
    let k = (0..3)
        .min_by(|&i, &j| from[i].abs().total_cmp(&from[j].abs()))
        .unwrap();
    let mut e = [0.0; 3];
    e[k] = 1.0;
    let perp = cross(from, e);
    let n = norm3(perp);
    rodrigues(perp.map(|a| a / n), std::f64::consts::PI)
}

/// `L = s·R·N(v)` with `N` the rescaled null boost.
///
/// `s` and `v` come from the first row `s[1, −vᵀ]`; the first column
/// `s[1, −Rv]` fixes `Rv`, and `R` is the smallest rotation achieving it.
fn null_product(l: &Mat4R, tol: f64) -> Option<LorentzDecomposition> {
    let s = l.0[0][0];
    if !(s > 0.0) {
        return None;
    }
    let v = [-l.0[0][1] / s, -l.0[0][2] / s, -l.0[0][3] / s];
    let w = [-l.0[1][0] / s, -l.0[2][0] / s, -l.0[3][0] / s];
    let (nv, nw) = (norm3(v), norm3(w));
    let loose = tol.max(TOL_V);
    if (nv - 1.0).abs() > loose || (nw - 1.0).abs() > loose {
        return None;
    }
    let v = v.map(|c| c / nv);
    let w = w.map(|c| c / nw);
    let velocity = Velocity::null(v).ok()?;
    let rotation = Mat4R::block_rotation(minimal_rotation(v, w));
    let d = LorentzDecomposition {
        rotation,
        velocity,
        scale: s,
    };
    let residual = d.recompose().max_abs_diff(l);
    (residual <= tol * l.max_abs().max(1.0)).then_some(d)
}

/// Splits `L` into scale, rotation and boost.
///
/// Restricted transforms (possibly rescaled by `s = (det L)^{1/4}`) are
/// split as `R·L(v)` with `v` read from the first row. Singular transforms
/// are split as `s·R·N(v)` with the smallest-angle rotation.
pub fn decompose(l: &Mat4R) -> Result<LorentzDecomposition> {
    decompose_tol(l, LORENTZ_TOL)
}

pub fn decompose_tol(l: &Mat4R, tol: f64) -> Result<LorentzDecomposition> {
    if !l.is_finite() {
        return Err(Error::NotDecomposable);
    }
    if is_restricted(l, tol) {
        if let Some(d) = decompose_restricted(l, 1.0) {
            return Ok(d);
        }
    }
    if let Some((s, b)) = scaled_restricted(l, tol) {
        if let Some(d) = decompose_restricted(&b, s) {
            return Ok(d);
        }
    }
    null_product(l, tol).ok_or(Error::NotDecomposable)
}

/// The unimodular `A` with `ψ(A) = L`, built as `U(R)·P(v)`.
pub fn spinor_lift(l: &Mat4R) -> Result<Mat2C> {
    if classify(l, LORENTZ_TOL) != TransformClass::Restricted {
        return Err(Error::NotRestricted);
    }
    let d = decompose_restricted(l, 1.0).ok_or(Error::NotRestricted)?;
    let a = su2_of_rotation(&d.rotation) * boost_spinor(&d.velocity)?.to_mat();
    Ok(a.scale(a.det().sqrt().inv()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::psi;
    use crate::qmat::{su2_rotation, Complex};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn tl(v: [f64; 3]) -> Velocity {
        Velocity::timelike(v).unwrap()
    }

    #[test]
    fn velocity_kinds() {
        assert!(Velocity::timelike([0.5, 0.0, 0.0]).is_ok());
        assert!(matches!(
            Velocity::timelike([1.0 - 1e-10, 0.0, 0.0]),
            Err(Error::NotTimelike(_))
        ));
        assert!(Velocity::null([0.6, 0.0, 0.8]).is_ok());
        assert!(matches!(
            Velocity::null([0.5, 0.0, 0.0]),
            Err(Error::NotNull(_))
        ));
        assert_eq!(
            Velocity::classify([0.0, 1.0, 0.0]).unwrap().kind(),
            VelocityKind::Null
        );
        assert!(matches!(
            Velocity::classify([0.0, 1.1, 0.0]),
            Err(Error::Superluminal(_))
        ));
        assert!(Velocity::timelike([f64::NAN, 0.0, 0.0]).is_err());
    }

    #[test]
    fn velocity_json_validates() {
        let v: Velocity = serde_json::from_str(r#"{"v":[0.0,0.0,-0.5],"kind":"timelike"}"#).unwrap();
        assert_eq!(v, tl([0.0, 0.0, -0.5]));
        assert!(serde_json::from_str::<Velocity>(r#"{"v":[0.0,0.0,2.0],"kind":"null"}"#).is_err());
        assert_eq!(
            serde_json::to_string(&Velocity::null([1.0, 0.0, 0.0]).unwrap()).unwrap(),
            r#"{"v":[1.0,0.0,0.0],"kind":"null"}"#
        );
    }

    #[test]
    fn pure_boost_examples() {
        assert_eq!(pure_boost(&Velocity::zero()).unwrap(), Mat4R::identity());

        let l = pure_boost(&tl([0.0, 0.0, -0.5])).unwrap();
        let g = 2.0 / 3f64.sqrt();
        let row = l.row(0);
        assert!(row.max_abs_diff(&FourVector::new(g, 0.0, 0.0, 1.0 / 3f64.sqrt())) < 1e-15);

        let v = [0.3, -0.4, 0.2];
        let prod = pure_boost(&tl(v)).unwrap() * pure_boost(&tl(v.map(|c| -c))).unwrap();
        assert!(prod.max_abs_diff(&Mat4R::identity()) < 1e-14);

        assert!(matches!(
            pure_boost(&Velocity::null([1.0, 0.0, 0.0]).unwrap()),
            Err(Error::NotTimelike(_))
        ));
    }

    #[test]
    fn null_boost_examples() {
        let n = null_boost_rescaled(&Velocity::null([0.0, 0.0, -1.0]).unwrap()).unwrap();
        let expected = Mat4R([
            [1.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(n, expected);

        let n = null_boost_rescaled(&Velocity::null([1.0, 0.0, 0.0]).unwrap()).unwrap();
        let expected = Mat4R([
            [1.0, -1.0, 0.0, 0.0],
            [-1.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(n, expected);

        let vel = Velocity::null([0.6, 0.0, 0.8]).unwrap();
        let image = null_boost_rescaled(&vel).unwrap() * FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(image, FourVector::new(1.0, -0.6, 0.0, -0.8));
        assert_eq!(null_boost_rescaled(&vel).unwrap().det(), 0.0);

        assert!(matches!(
            null_boost_rescaled(&Velocity::zero()),
            Err(Error::NotNull(_))
        ));
    }

    #[test]
    fn rotation4_examples() {
        assert_eq!(rotation4([0.0, 0.0, 1.0], 0.0).unwrap(), Mat4R::identity());
        let r = rotation4([0.0, 0.0, 1.0], FRAC_PI_2).unwrap();
        let image = r * FourVector::new(0.0, 1.0, 0.0, 0.0);
        assert!(image.max_abs_diff(&FourVector::new(0.0, 0.0, 1.0, 0.0)) < 1e-15);
        let r = rotation4([0.6, 0.0, 0.8], 2.0 * PI).unwrap();
        assert!(r.max_abs_diff(&Mat4R::identity()) < 1e-15);
        assert!(matches!(
            rotation4([1.0, 1.0, 0.0], 1.0),
            Err(Error::BadAxis(_))
        ));
    }

    #[test]
    fn rotation4_matches_psi_of_su2() {
        let axis = [0.48, 0.6, 0.64];
        let r = rotation4(axis, 2.1).unwrap();
        assert!(psi(&su2_rotation(axis, 2.1)).max_abs_diff(&r) < 1e-14);
    }

    #[test]
    fn axis_angle_round_trip() {
        for (axis, theta) in [([0.0, 0.0, 1.0], 0.3), ([0.6, 0.8, 0.0], PI), ([0.0, -1.0, 0.0], 3.0)] {
            let r = rodrigues(axis, theta);
            let (a, t) = rotation_axis_angle(&r);
            assert!((t - theta).abs() < 1e-12, "{t} vs {theta}");
            let back = rodrigues(a, t);
            assert!(Mat4R::block_rotation(back).max_abs_diff(&Mat4R::block_rotation(r)) < 1e-14);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&Mat4R::identity(), LORENTZ_TOL), TransformClass::Restricted);
        assert_eq!(
            classify(&Mat4R::identity().scale(2.0), LORENTZ_TOL),
            TransformClass::RescaledRestricted
        );
        let n = null_boost_rescaled(&Velocity::null([0.0, 0.0, -1.0]).unwrap()).unwrap();
        assert_eq!(classify(&n, LORENTZ_TOL), TransformClass::RescaledNullBoostProduct);
        // improper and non-orthochronous transforms are outside the correspondence
        assert_eq!(
            classify(&Mat4R::diag([1.0, -1.0, 1.0, 1.0]), LORENTZ_TOL),
            TransformClass::Other
        );
        assert_eq!(
            classify(&Mat4R::diag([-1.0, -1.0, 1.0, 1.0]), LORENTZ_TOL),
            TransformClass::Other
        );
        assert_eq!(classify(&Mat4R::diag([1.0, 2.0, 1.0, 1.0]), LORENTZ_TOL), TransformClass::Other);
    }

    #[test]
    fn decompose_examples() {
        let v = tl([0.1, 0.2, -0.3]);
        let d = decompose(&pure_boost(&v).unwrap()).unwrap();
        assert!(d.rotation.max_abs_diff(&Mat4R::identity()) < 1e-14);
        assert!(d.velocity.max_abs_diff(&v) < 1e-15);
        assert!((d.scale - 1.0).abs() < 1e-15);

        let r = rotation4([0.0, 0.0, 1.0], FRAC_PI_3).unwrap();
        let d = decompose(&r).unwrap();
        assert!(d.rotation.max_abs_diff(&r) < 1e-15);
        assert!(d.velocity.speed() < 1e-15);
        assert!((d.scale - 1.0).abs() < 1e-15);

        let q = 3f64.sqrt() / 4.0;
        let v = tl([0.0, 0.0, -0.5]);
        let d = decompose(&pure_boost(&v).unwrap().scale(q)).unwrap();
        assert!(d.rotation.max_abs_diff(&Mat4R::identity()) < 1e-14);
        assert!(d.velocity.max_abs_diff(&v) < 1e-14);
        assert!((d.scale - q).abs() < 1e-14);

        assert!(matches!(
            decompose(&Mat4R::diag([1.0, 2.0, 1.0, 1.0])),
            Err(Error::NotDecomposable)
        ));
    }

    #[test]
    fn decompose_null_product_picks_smallest_rotation() {
        let vel = Velocity::null([0.0, 0.0, 1.0]).unwrap();
        let r = rotation4([1.0, 0.0, 0.0], FRAC_PI_2).unwrap();
        let l = (r * null_boost_rescaled(&vel).unwrap()).scale(0.3);
        let d = decompose(&l).unwrap();
        assert_eq!(d.velocity.kind(), VelocityKind::Null);
        assert!((d.scale - 0.3).abs() < 1e-15);
        assert!(d.recompose().max_abs_diff(&l) < 1e-15);
        assert!(d.rotation.max_abs_diff(&r) < 1e-15);

        // an extra twist about v is invisible to the product and is dropped
        let twist = rotation4([0.0, 0.0, 1.0], 1.0).unwrap();
        let l = (r * twist * null_boost_rescaled(&vel).unwrap()).scale(0.3);
        let d = decompose(&l).unwrap();
        assert!(d.recompose().max_abs_diff(&l) < 1e-15);
        assert!(d.rotation.max_abs_diff(&r) < 1e-15);

        // antipodal image
        let flip = rotation4([0.0, 1.0, 0.0], PI).unwrap();
        let l = flip * null_boost_rescaled(&vel).unwrap();
        let d = decompose(&l).unwrap();
        assert!(d.recompose().max_abs_diff(&l) < 1e-15);
    }

    #[test]
    fn spinor_lift_examples() {
        let a = spinor_lift(&Mat4R::identity()).unwrap();
        assert_eq!(a, Mat2C::identity());

        let r = rotation4([0.0, 0.0, 1.0], FRAC_PI_2).unwrap();
        let a = spinor_lift(&r).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = Mat2C::new([
            [Complex::new(s, -s), Complex::new(0.0, 0.0)],
            [Complex::new(0.0, 0.0), Complex::new(s, s)],
        ])
        .unwrap();
        assert!(a.max_abs_diff(&expected) < 1e-15);

        let l = pure_boost(&tl([0.0, 0.0, -0.5])).unwrap();
        let a = spinor_lift(&l).unwrap();
        let h = crate::qmat::HermMat2::from_mat(&a, 1e-15).unwrap();
        assert!(h.is_positive(0.0));
        assert!((a.det() - Complex::new(1.0, 0.0)).norm() < 1e-15);
        let c = h.pauli_coords();
        assert!(c[1] == 0.0 && c[2] == 0.0 && c[3] > 0.0);
        assert!(psi(&a).max_abs_diff(&l) < 1e-14);

        assert!(matches!(
            spinor_lift(&Mat4R::identity().scale(2.0)),
            Err(Error::NotRestricted)
        ));
    }

    #[test]
    fn spinor_lift_sign_convention_at_half_turn() {
        // θ = π about x: U = −iX has a zero (0,0) entry; the (0,1) entry −i
        // is chosen over +i only through the tie-break chain.
        let r = rotation4([1.0, 0.0, 0.0], PI).unwrap();
        let a = spinor_lift(&r).unwrap();
        assert!(psi(&a).max_abs_diff(&r) < 1e-15);
        assert!(psi(&(-a)).max_abs_diff(&r) < 1e-15);
    }
}
