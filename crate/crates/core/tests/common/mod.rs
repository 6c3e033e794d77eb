#![allow(dead_code)]

use qubit_lorentz::qmat::{su2_rotation, Complex, HermMat2, Mat2C};
use rand::Rng;

pub fn unit_vector<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

pub fn complex<R: Rng>(rng: &mut R) -> Complex {
    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn mat2<R: Rng>(rng: &mut R) -> Mat2C {
    Mat2C::new(std::array::from_fn(|_| std::array::from_fn(|_| complex(rng)))).unwrap()
}

pub fn hermitian<R: Rng>(rng: &mut R) -> HermMat2 {
    HermMat2::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        complex(rng),
    )
    .unwrap()
}

/// Uniformly random element of SU(2).
pub fn su2<R: Rng>(rng: &mut R) -> Mat2C {
    su2_rotation(unit_vector(rng), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `V diag(l0, l1) V†` for a random `V ∈ SU(2)`.
pub fn with_eigenvalues<R: Rng>(rng: &mut R, l0: f64, l1: f64) -> HermMat2 {
    let v = su2(rng);
    v.conjugate(&HermMat2::diag(l0, l1))
}

/// Eigenvalues of a random effect `0 ≤ E ≤ 𝕀`; one in four is rank one.
pub fn effect_spectrum<R: Rng>(rng: &mut R) -> (f64, f64) {
    let l0 = rng.gen_range(0.05..1.0);
    let l1 = if rng.gen_bool(0.25) {
        0.0
    } else {
        rng.gen_range(0.05..1.0)
    };
    (l0, l1)
}

pub fn effect<R: Rng>(rng: &mut R) -> HermMat2 {
    let (l0, l1) = effect_spectrum(rng);
    with_eigenvalues(rng, l0, l1)
}

/// `U√E` with a random unitary `U` (including a global phase); the root is
/// built from the spectrum so rank-one elements stay rank one.
pub fn element<R: Rng>(rng: &mut R) -> Mat2C {
    let phase = Complex::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    let (l0, l1) = effect_spectrum(rng);
    let root = with_eigenvalues(rng, l0.sqrt(), l1.sqrt());
    su2(rng).scale(phase) * root.to_mat()
}

/// A random density matrix; one in five is pure.
pub fn density<R: Rng>(rng: &mut R) -> HermMat2 {
    let p = if rng.gen_bool(0.2) {
        1.0
    } else {
        rng.gen_range(0.5..0.98)
    };
    with_eigenvalues(rng, p, 1.0 - p)
}
