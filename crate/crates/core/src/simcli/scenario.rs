//! Measurement as a randomized boost, and probabilities seen by a boosted
//! observer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adjoint::{psi, Mat4R};
use crate::conemap::{minkowski, phi, FourVector};
use crate::correspond::{ensure_positive, info_measure, Measurement, COMPLETENESS_TOL};
use crate::error::{Error, Result};
use crate::lorentz::{pure_boost, Velocity, VelocityKind};
use crate::qmat::HermMat2;

/// Outcomes with probability at or below this are never sampled.
pub const ZERO_PROBABILITY: f64 = 1e-15;

/// Allowed deviation of `Tr ρ` from 1.
pub const TRACE_TOL: f64 = 1e-9;

/// Samples drawn from one sub-stream.
pub const BLOCK_SIZE: u64 = 1 << 16;

/// Seed of the ChaCha8 generator. Block `k` of a run draws from stream `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn block_rng(&self, block: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(block);
        rng
    }
}

/// One outcome of a measurement on a fixed state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioOutcome {
    pub index: usize,
    pub probability: f64,
    /// `ψ(M)·φ(ρ)`, or zero when the outcome cannot occur.
    pub post_vector: FourVector,
    /// `ψ(M)`.
    pub applied_transform: Mat4R,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeTally {
    #[serde(flatten)]
    pub outcome: ScenarioOutcome,
    pub count: u64,
    pub frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub seed: RngSeed,
    pub n: u64,
    pub outcomes: Vec<OutcomeTally>,
}

/// A pure timelike boost into the frame of a moving observer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Velocity", into = "Velocity")]
pub struct ObserverBoost {
    pub velocity: Velocity,
    pub transform: Mat4R,
}

impl ObserverBoost {
    pub fn new(velocity: Velocity) -> Result<Self> {
        Ok(Self {
            velocity,
            transform: pure_boost(&velocity)?,
        })
    }
}

impl TryFrom<Velocity> for ObserverBoost {
    type Error = Error;
    fn try_from(v: Velocity) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ObserverBoost> for Velocity {
    fn from(o: ObserverBoost) -> Self {
        o.velocity
    }
}

fn check_inputs(meas: &Measurement, rho: &HermMat2) -> Result<()> {
    meas.ensure_valid(COMPLETENESS_TOL)?;
    ensure_positive(rho)?;
    let tr = rho.trace();
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::NotNormalized(tr));
    }
    Ok(())
}

/// Probability, transform and image of every outcome, in listed order.
pub fn outcomes(meas: &Measurement, rho: &HermMat2) -> Result<Vec<ScenarioOutcome>> {
    check_inputs(meas, rho)?;
    let r = phi(rho);
    Ok(meas
        .elements()
        .iter()
        .enumerate()
        .map(|(index, m)| {
            let probability = crate::conemap::hs_inner(&m.gram(), rho);
            let applied_transform = psi(m);
            let post_vector = if probability > ZERO_PROBABILITY {
                applied_transform * r
            } else {
                FourVector::default()
            };
            ScenarioOutcome {
                index,
                probability,
                post_vector,
                applied_transform,
            }
        })
        .collect())
}

/// Draws `n` outcomes by inverse-CDF sampling over the listed order.
pub fn scenario1_sample(
    meas: &Measurement,
    rho: &HermMat2,
    seed: RngSeed,
    n: u64,
) -> Result<SimulationReport> {
    let outs = outcomes(meas, rho)?;
    let live: Vec<(usize, f64)> = outs
        .iter()
        .filter(|o| o.probability > ZERO_PROBABILITY)
        .map(|o| (o.index, o.probability))
        .collect();
    let total: f64 = live.iter().map(|(_, p)| p).sum();
    let mut counts = vec![0u64; outs.len()];
    let mut block = 0;
    let mut drawn = 0;
    while drawn < n {
        let len = BLOCK_SIZE.min(n - drawn);
        let mut rng = seed.block_rng(block);
        for _ in 0..len {
            let u = rng.gen::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = live[live.len() - 1].0;
            for &(i, p) in &live {
                acc += p;
                if u < acc {
                    pick = i;
                    break;
                }
            }
            counts[pick] += 1;
        }
        drawn += len;
        block += 1;
    }
    let outcomes = outs
        .into_iter()
        .zip(counts)
        .map(|(outcome, count)| OutcomeTally {
            outcome,
            count,
            frequency: if n == 0 { 0.0 } else { count as f64 / n as f64 },
        })
        .collect();
    Ok(SimulationReport {
        seed,
        n,
        outcomes,
    })
}

/// `p_Bob(n) = (p(n) − v⃗·ρ⃗ₙ)/(1 − v⃗·ρ⃗)`, with `ρ⃗ₙ` the spatial part of
/// `φ(MₙρMₙ†)`. The values need not sum to 1.
pub fn boosted_probabilities(
    meas: &Measurement,
    rho: &HermMat2,
    obs: &ObserverBoost,
) -> Result<Vec<f64>> {
    check_inputs(meas, rho)?;
    let v = obs.velocity.components();
    let dot = |x: [f64; 3]| v[0] * x[0] + v[1] * x[1] + v[2] * x[2];
    let denom = 1.0 - dot(phi(rho).spatial());
    Ok(meas
        .elements()
        .iter()
        .map(|m| {
            let post = phi(&m.conjugate(rho));
            (post.time() - dot(post.spatial())) / denom
        })
        .collect())
}

/// The same quantities as the ratio `(Λφ(ρₙ))₀ / (Λφ(ρ))₀`.
pub fn boosted_probabilities_direct(
    meas: &Measurement,
    rho: &HermMat2,
    obs: &ObserverBoost,
) -> Result<Vec<f64>> {
    check_inputs(meas, rho)?;
    let denom = (obs.transform * phi(rho)).time();
    Ok(meas
        .elements()
        .iter()
        .map(|m| (obs.transform * phi(&m.conjugate(rho))).time() / denom)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementInvariants {
    pub index: usize,
    pub p: f64,
    /// `η(V, φ(ρ))`.
    pub p_from_minkowski: f64,
    pub mixedness_before: f64,
    pub mixedness_after: f64,
    /// `ηVV = det E`.
    pub eta_vv: f64,
    /// `|ηρₘρₘ − (ηVV)(ηρρ)|`.
    pub transport_residual: f64,
    pub kind: VelocityKind,
    pub info_state: Option<f64>,
    pub info_effect: Option<f64>,
    pub info_post: Option<f64>,
    /// `|I(ρₘ) − I(Vₘ) − I(ρ)|` when all three are timelike.
    pub conservation_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub trace_state: f64,
    pub sum_p: f64,
    pub elements: Vec<ElementInvariants>,
}

pub fn report_invariants(meas: &Measurement, rho: &HermMat2) -> Result<InvariantReport> {
    meas.ensure_valid(COMPLETENESS_TOL)?;
    ensure_positive(rho)?;
    let r = phi(rho);
    let mix = minkowski(&r, &r);
    let info_state = info_measure(&r).ok();
    let elements: Vec<ElementInvariants> = meas
        .elements()
        .iter()
        .enumerate()
        .map(|(index, m)| {
            let e = phi(&m.gram());
            let v = e.lower() * 0.5;
            let post = phi(&m.conjugate(rho));
            let eta_vv = minkowski(&v, &v);
            let mixedness_after = minkowski(&post, &post);
            let info_effect = info_measure(&v).ok();
            let info_post = info_measure(&post).ok();
            let conservation_residual = match (info_post, info_effect, info_state) {
                (Some(a), Some(b), Some(c)) => Some((a - b - c).abs()),
                _ => None,
            };
            let speed = e.spatial_norm() / e.time();
            ElementInvariants {
                index,
                p: crate::conemap::hs_inner(&m.gram(), rho),
                p_from_minkowski: minkowski(&v, &r),
                mixedness_before: mix,
                mixedness_after,
                eta_vv,
                transport_residual: (mixedness_after - eta_vv * mix).abs(),
                kind: if speed < 1.0 - crate::lorentz::TOL_V {
                    VelocityKind::Timelike
                } else {
                    VelocityKind::Null
                },
                info_state,
                info_effect,
                info_post,
                conservation_residual,
            }
        })
        .collect();
    Ok(InvariantReport {
        trace_state: rho.trace(),
        sum_p: elements.iter().map(|e| e.p).sum(),
        elements,
    })
}
