//! Command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 success, 1 validation failure, 2 malformed input,
//! 3 numeric-domain error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::io::{
    read_json, to_json, AppliedOutcome, ApplyReport, BoostReport, InputError, ValidationReport,
};
use super::scenario::{
    boosted_probabilities, boosted_probabilities_direct, outcomes, report_invariants,
    scenario1_sample, ObserverBoost, RngSeed,
};
use crate::correspond::{
    apply_element, element_to_lorentz, lambda_max, lorentz_to_element, Measurement,
    COMPLETENESS_TOL,
};
use crate::error::Error;
use crate::lorentz::{rotation4, LorentzDecomposition, Velocity};
use crate::qmat::{HermMat2, Mat2C};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qubit-lorentz", version, about = "Qubit measurements as rescaled Lorentz transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a measurement sums to the identity.
    Validate {
        #[arg(long)]
        measurement: PathBuf,
        #[arg(long, default_value_t = COMPLETENESS_TOL)]
        tol: f64,
    },
    /// Rotation, velocity and scale of one element.
    ToLorentz {
        #[arg(long)]
        element: PathBuf,
    },
    /// Element realizing a rotation followed by a boost.
    ToElement {
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        rotation_axis: [f64; 3],
        #[arg(long, allow_hyphen_values = true)]
        rotation_angle: f64,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        velocity: [f64; 3],
        /// Defaults to the largest admissible value.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Outcome probabilities and post-measurement states.
    Apply {
        #[arg(long)]
        measurement: PathBuf,
        #[arg(long)]
        state: PathBuf,
    },
    /// Sample outcomes.
    Simulate {
        #[arg(long)]
        measurement: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: u64,
    },
    /// Outcome probabilities seen by a boosted observer.
    BoostObserver {
        #[arg(long)]
        measurement: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        velocity: [f64; 3],
    },
    /// Mixedness, probability and information invariants per element.
    Invariants {
        #[arg(long)]
        measurement: PathBuf,
        #[arg(long)]
        state: PathBuf,
    },
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected X,Y,Z, got {s:?}"));
    }
    let mut out = [0.0f64; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|e| format!("{p:?}: {e}"))?;
        if !o.is_finite() {
            return Err(format!("{p:?} is not finite"));
        }
    }
    Ok(out)
}

enum Failure {
    Input(InputError),
    Numeric(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidMeasurement(_) => EXIT_INVALID,
        _ => EXIT_DOMAIN,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok((json, code)) => {
            let _ = out.write_all(json.as_bytes());
            code
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MALFORMED
        }
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cmd: Command) -> Result<(String, i32), Failure> {
    let ok = |s: String| Ok((s, EXIT_OK));
    match cmd {
        Command::Validate { measurement, tol } => {
            let meas: Measurement = read_json(&measurement)?;
            let defect = meas.completeness_defect();
            let valid = defect <= tol;
            let report = ValidationReport {
                valid,
                defect,
                tol,
                elements: meas.len(),
            };
            Ok((to_json(&report), if valid { EXIT_OK } else { EXIT_INVALID }))
        }
        Command::ToLorentz { element } => {
            let m: Mat2C = read_json(&element)?;
            ok(to_json(&element_to_lorentz(&m)?))
        }
        Command::ToElement {
            rotation_axis,
            rotation_angle,
            velocity,
            lambda,
        } => {
            let n = rotation_axis[0].hypot(rotation_axis[1]).hypot(rotation_axis[2]);
            if n == 0.0 {
                return Err(Error::BadAxis(n).into());
            }
            let rotation = rotation4(rotation_axis.map(|c| c / n), rotation_angle)?;
            let velocity = Velocity::classify(velocity)?;
            let lambda = lambda.unwrap_or_else(|| lambda_max(&velocity));
            let decomp = LorentzDecomposition::new(rotation, velocity, 1.0)?;
            ok(to_json(&lorentz_to_element(&decomp, lambda)?))
        }
        Command::Apply { measurement, state } => {
            let meas: Measurement = read_json(&measurement)?;
            let rho: HermMat2 = read_json(&state)?;
            let outs = outcomes(&meas, &rho)?;
            let mut applied = Vec::with_capacity(outs.len());
            for (o, m) in outs.iter().zip(meas.elements()) {
                let (p, post_state) = apply_element(m, &rho)?;
                applied.push(AppliedOutcome {
                    index: o.index,
                    p,
                    post_state,
                    post_vector: o.post_vector,
                });
            }
            ok(to_json(&ApplyReport { outcomes: applied }))
        }
        Command::Simulate {
            measurement,
            state,
            seed,
            n,
        } => {
            let meas: Measurement = read_json(&measurement)?;
            let rho: HermMat2 = read_json(&state)?;
            ok(to_json(&scenario1_sample(&meas, &rho, RngSeed(seed), n)?))
        }
        Command::BoostObserver {
            measurement,
            state,
            velocity,
        } => {
            let meas: Measurement = read_json(&measurement)?;
            let rho: HermMat2 = read_json(&state)?;
            let obs = ObserverBoost::new(Velocity::classify(velocity)?)?;
            let p_rest = outcomes(&meas, &rho)?
                .iter()
                .map(|o| o.probability)
                .collect();
            let p_bob = boosted_probabilities(&meas, &rho, &obs)?;
            let p_bob_direct = boosted_probabilities_direct(&meas, &rho, &obs)?;
            let sum_bob = p_bob.iter().sum();
            ok(to_json(&BoostReport {
                velocity: obs.velocity,
                p_rest,
                p_bob,
                p_bob_direct,
                sum_bob,
            }))
        }
        Command::Invariants { measurement, state } => {
            let meas: Measurement = read_json(&measurement)?;
            let rho: HermMat2 = read_json(&state)?;
            ok(to_json(&report_invariants(&meas, &rho)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples() {
        assert_eq!(parse_triple("1,-2.5, 0").unwrap(), [1.0, -2.5, 0.0]);
        assert!(parse_triple("1,2").is_err());
        assert!(parse_triple("1,x,2").is_err());
        assert!(parse_triple("1,inf,2").is_err());
    }

    #[test]
    fn to_element_default_lambda() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            [
                "qubit-lorentz",
                "to-element",
                "--rotation-axis",
                "0,0,1",
                "--rotation-angle",
                "0",
                "--velocity",
                "0,0,-1",
            ],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_OK);
        let m: Mat2C = serde_json::from_slice(&out).unwrap();
        assert_eq!(m, Mat2C::diag(1.0, 0.0));
    }

    #[test]
    fn superluminal_is_domain_error() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let args = [
            "qubit-lorentz",
            "to-element",
            "--rotation-axis",
            "1,0,0",
            "--rotation-angle",
            "1",
            "--velocity",
            "0,2,0",
        ];
        assert_eq!(run(args, &mut out, &mut err), EXIT_DOMAIN);
        assert!(out.is_empty());
    }
}
