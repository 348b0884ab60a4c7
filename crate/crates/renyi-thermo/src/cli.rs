//! Command-line front end: parse a run configuration, execute one of the
//! experiment commands, emit CSV/plain-text reports.
//!
//! Operators are given on the command line either as `diag:a,b,...` or as a
//! path to a plain-text matrix file (one row per line, `re+imj` entries,
//! pure-real accepted).

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::channel::{clausius_csv, clausius_sweep, dpi_check, random_thermal_fixing_channel};
use crate::error::{Error, Result};
use crate::measures::{
    renyi_entropy, sandwiched_relative_entropy, trad_relative_entropy, EntropyVariant, RenyiOrder,
};
use crate::operator::{
    format_matrix_text, parse_matrix_text, DensityMatrix, HermitianOperator, PowerPolicy,
};
use crate::process::{run_carnot_cycle, HamiltonianFamily, StateFamily};
use crate::sample::{hs_random_density, seeded_rng};
use crate::thermal::solve_thermal_state;
use crate::verify::{self, default_probe_eta, reference_deforming_channel, Scale};

/// Rényi-α quantum thermodynamics toolbox.
#[derive(Parser, Debug)]
#[command(name = "renyi-thermo", version, about)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Traditional,
    Sandwiched,
}

impl From<VariantArg> for EntropyVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Traditional => EntropyVariant::Traditional,
            VariantArg::Sandwiched => EntropyVariant::Sandwiched,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the self-consistent thermal state for (H, beta, alpha) and
    /// print its summary.
    Thermal {
        /// Hamiltonian: `diag:e0,e1,...` or a matrix file path.
        #[arg(long = "H")]
        hamiltonian: String,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        alpha: f64,
        /// Write the state matrix to this file as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rényi entropy of a state; with --sigma also both relative entropies.
    Entropy {
        /// State: `diag:p0,p1,...` or a matrix file path.
        #[arg(long)]
        state: String,
        #[arg(long)]
        alpha: f64,
        /// Reference state for the relative entropies.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Four-stroke Carnot cycle on the qubit gap family H(γ) = γ|1⟩⟨1|;
    /// writes the stroke CSV.
    Carnot {
        #[arg(long = "Th")]
        t_hot: f64,
        #[arg(long = "Tc")]
        t_cold: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, default_value_t = 2.0)]
        gamma1: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma2: f64,
        /// Use the channel-deformed working-state family instead of the
        /// thermal one.
        #[arg(long)]
        deformed: bool,
        #[arg(long, value_enum, default_value = "traditional")]
        variant: VariantArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Near-equilibrium Clausius sweep on the qubit experiment; writes the
    /// per-α CSV.
    Clausius {
        #[arg(long)]
        dq: f64,
        #[arg(long, default_value_t = 0.7)]
        p0: f64,
        #[arg(long = "E1", default_value_t = 1.0)]
        e1: f64,
        /// α grid: min, max, step (defaults 0.1..5.0 step 0.1).
        #[arg(long, default_value_t = 0.1)]
        alpha_min: f64,
        #[arg(long, default_value_t = 5.0)]
        alpha_max: f64,
        #[arg(long, default_value_t = 0.1)]
        alpha_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded batches of data-processing-inequality checks; prints
    /// violation counts.
    Dpi {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        channels: usize,
        /// System dimension (2 or 4).
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Run the full invariant suite and report pass/fail counts.
    Selftest {
        /// Reduced workload for smoke testing.
        #[arg(long)]
        quick: bool,
    },
}

/// Execute a parsed configuration. Returns the process exit status.
pub fn run(config: RunConfig) -> Result<i32> {
    match config.command {
        Command::Thermal {
            hamiltonian,
            beta,
            alpha,
            out,
        } => {
            let h = parse_operator(&hamiltonian)?;
            let alpha = RenyiOrder::new(alpha)?;
            let th = solve_thermal_state(&h, beta, alpha)?;
            println!("alpha          = {}", th.alpha());
            println!("beta           = {}", th.beta());
            println!("Z              = {}", th.partition_function());
            println!("U              = {}", th.internal_energy());
            println!("S              = {}", th.entropy());
            println!("F              = {}", th.free_energy());
            println!("cutoff applied = {}", th.cutoff_applied());
            println!("state:");
            print!("{}", format_matrix_text(th.state().entries()));
            if let Some(path) = out {
                fs::write(&path, format_matrix_text(th.state().entries()))?;
            }
            Ok(0)
        }
        Command::Entropy {
            state,
            alpha,
            sigma,
        } => {
            let rho = parse_state(&state)?;
            let alpha = RenyiOrder::new(alpha)?;
            println!("S_alpha = {}", renyi_entropy(&rho, alpha));
            println!("S_vn    = {}", renyi_entropy(&rho, RenyiOrder::von_neumann()));
            if let Some(sigma) = sigma {
                let sigma = parse_state(&sigma)?;
                let d_trad =
                    trad_relative_entropy(&rho, &sigma, alpha, PowerPolicy::StrictSupport)?;
                let d_sand =
                    sandwiched_relative_entropy(&rho, &sigma, alpha, PowerPolicy::StrictSupport)?;
                println!("D_alpha(rho||sigma)      = {d_trad}");
                println!("D~_alpha(rho||sigma)     = {d_sand}");
            }
            Ok(0)
        }
        Command::Carnot {
            t_hot,
            t_cold,
            alpha,
            steps,
            gamma1,
            gamma2,
            deformed,
            variant,
            out,
        } => {
            let alpha = RenyiOrder::new(alpha)?;
            let ham = HamiltonianFamily::qubit_gap((0.05, 8.0));
            let family = if deformed {
                let channel = reference_deforming_channel(alpha);
                StateFamily::deformed(move |_, _| channel.clone())
            } else {
                StateFamily::thermal()
            };
            let report = run_carnot_cycle(
                &family,
                &ham,
                gamma1,
                gamma2,
                t_hot,
                t_cold,
                alpha,
                steps,
                variant.into(),
            )?;
            let csv = report.to_csv();
            match out {
                Some(path) => fs::write(&path, &csv)?,
                None => print!("{csv}"),
            }
            eprintln!(
                "efficiency {} vs analytic {}",
                report.efficiency,
                report.carnot_efficiency()
            );
            Ok(0)
        }
        Command::Clausius {
            dq,
            p0,
            e1,
            alpha_min,
            alpha_max,
            alpha_step,
            out,
        } => {
            if alpha_step <= 0.0 || alpha_max < alpha_min {
                return Err(Error::Config("empty alpha grid".into()));
            }
            let n = ((alpha_max - alpha_min) / alpha_step).round() as usize;
            let grid: Vec<f64> = (0..=n)
                .map(|k| ((alpha_min + k as f64 * alpha_step) * 1e12).round() / 1e12)
                .collect();
            let records = clausius_sweep(p0, e1, dq, &default_probe_eta(), &grid)?;
            let csv = clausius_csv(&records);
            match out {
                Some(path) => fs::write(&path, &csv)?,
                None => print!("{csv}"),
            }
            Ok(0)
        }
        Command::Dpi {
            seed,
            channels,
            dim,
        } => {
            let mut rng = seeded_rng(seed);
            let rho_t = match dim {
                2 => DensityMatrix::from_diagonal_probs(&[0.7, 0.3])?,
                4 => {
                    let h = crate::sample::unit_spectrum_hamiltonian(4, &mut rng);
                    solve_thermal_state(&h, 0.8, RenyiOrder::new(1.5)?)?
                        .state()
                        .clone()
                }
                other => {
                    return Err(Error::Config(format!(
                        "dim must be 2 or 4, got {other}"
                    )))
                }
            };
            let mut violations = 0usize;
            let mut checks = 0usize;
            for (alphas, variant, label) in [
                (&[0.1, 0.5, 1.0, 1.5, 2.0][..], EntropyVariant::Traditional, "traditional"),
                (
                    &[0.5, 1.0, 2.0, 3.0, 5.0, 10.0][..],
                    EntropyVariant::Sandwiched,
                    "sandwiched",
                ),
            ] {
                for &a in alphas {
                    let alpha = RenyiOrder::new(a)?;
                    let mut local = 0usize;
                    for k in 0..channels {
                        let ch = random_thermal_fixing_channel(&rho_t, seed + k as u64);
                        let rho = hs_random_density(dim, &mut rng);
                        let check = dpi_check(&ch, &rho, &rho_t, alpha, variant)?;
                        checks += 1;
                        if !check.monotone {
                            local += 1;
                        }
                    }
                    println!("{label} alpha={a}: {local} violations / {channels}");
                    violations += local;
                }
            }
            println!("total: {violations} violations / {checks} checks");
            Ok(if violations == 0 { 0 } else { 1 })
        }
        Command::Selftest { quick } => {
            let scale = if quick { Scale::quick() } else { Scale::full() };
            let reports = verify::run_all(scale);
            let mut failed = 0usize;
            for r in &reports {
                println!(
                    "{} {:32} {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
                if !r.passed {
                    failed += 1;
                }
            }
            println!("{} passed, {} failed", reports.len() - failed, failed);
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

/// `diag:a,b,...` or a matrix file path.
fn parse_operator(spec: &str) -> Result<HermitianOperator> {
    if let Some(list) = spec.strip_prefix("diag:") {
        let diag: std::result::Result<Vec<f64>, _> =
            list.split(',').map(|s| s.trim().parse::<f64>()).collect();
        let diag = diag.map_err(|_| Error::Config(format!("bad diagonal list '{list}'")))?;
        if diag.is_empty() {
            return Err(Error::Config("empty diagonal".into()));
        }
        return Ok(HermitianOperator::from_diagonal(&diag));
    }
    let text = fs::read_to_string(spec)?;
    HermitianOperator::new(parse_matrix_text(&text)?)
}

fn parse_state(spec: &str) -> Result<DensityMatrix> {
    DensityMatrix::new(parse_operator(spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_spec_diag() {
        let h = parse_operator("diag:0,1").unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.entries()[(1, 1)].re, 1.0);
    }

    #[test]
    fn operator_spec_rejects_garbage() {
        assert!(parse_operator("diag:a,b").is_err());
    }

    #[test]
    fn config_parses_thermal() {
        let cfg =
            RunConfig::try_parse_from(["renyi-thermo", "thermal", "--H", "diag:0,1", "--beta", "0", "--alpha", "2"])
                .unwrap();
        match cfg.command {
            Command::Thermal { beta, alpha, .. } => {
                assert_eq!(beta, 0.0);
                assert_eq!(alpha, 2.0);
            }
            _ => panic!("wrong command"),
        }
    }

    #[test]
    fn config_requires_keys() {
        assert!(RunConfig::try_parse_from(["renyi-thermo", "thermal", "--beta", "1"]).is_err());
        assert!(RunConfig::try_parse_from(["renyi-thermo", "clausius"]).is_err());
    }
}
