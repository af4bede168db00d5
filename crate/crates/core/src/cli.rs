//! Command-line front end: `shadow-sim`, `compile`, `partition`, `verify`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::compiler::{compile_blocked, compile_naive, stats_compare};
use crate::error::{arg, Error, Result};
use crate::gaussian::SlaterDeterminant;
use crate::io;
use crate::partition::{
    analytic_partition, apply_template, greedy_partition, majorana_form, norms_report,
    rotation_plan, AnticommutingPartition, NormsReport, RotationPlan,
};
use crate::random;
use crate::shadows::{
    collect, draw, mitigate, spectral_norm, symmetry_spec, two_rdm, two_rdm_exact, Group,
    NoiseModel, ShadowAccumulator, ShadowConfig,
};
use crate::verify::run_suite;

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "FREEFERMION_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "freefermion",
    version,
    about = "Free-fermion simulation, shadows, compilation and partitioning"
)]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    B,
    Alt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Naive,
    Blocked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Greedy,
    Analytic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical-shadow experiment on a random Slater determinant.
    ShadowSim {
        #[arg(long)]
        modes: usize,
        /// Particle number of the state; enables mitigation and the error curve.
        #[arg(long)]
        eta: Option<usize>,
        #[arg(long)]
        samples: u64,
        #[arg(long, value_enum, default_value = "b")]
        group: GroupArg,
        /// `none` or `kind:p` with kind in bit_flip, depolarizing, amplitude_damping.
        #[arg(long, default_value = "none")]
        noise: String,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write every snapshot to samples.csv.
        #[arg(long)]
        write_samples: bool,
        /// Fail instead of appending an ancilla when a symmetry value vanishes.
        #[arg(long)]
        no_ancilla: bool,
    },
    /// Compile an orthogonal matrix into a gate program.
    Compile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "blocked")]
        scheme: Scheme,
        #[arg(long)]
        out: PathBuf,
        /// Write gate counts and depth of both schemes to this JSON file.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Partition an electronic Hamiltonian into anticommuting sets.
    Partition {
        /// Integrals JSON; without it, `--method analytic --n N` reports the template.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "greedy")]
        method: Method,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        report: PathBuf,
    },
    /// Check the fast routines against the dense oracle.
    Verify {
        #[arg(long, default_value_t = 3)]
        modes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses the arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprintln!("error[E_USAGE]: {first}");
            return 2;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e.to_string().replace('\n', " "));
            1
        }
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::ShadowSim {
            modes,
            eta,
            samples,
            group,
            noise,
            kmax,
            seed,
            out,
            write_samples,
            no_ancilla,
        } => {
            let cfg = ShadowSimArgs {
                modes,
                eta,
                samples,
                group: match group {
                    GroupArg::B => Group::B,
                    GroupArg::Alt => Group::Alt,
                },
                noise: noise.parse()?,
                kmax,
                seed,
                write_samples,
                auto_ancilla: !no_ancilla,
            };
            let summary = shadow_sim(&cfg, &out)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(0)
        }
        Command::Compile {
            input,
            scheme,
            out,
            stats,
        } => {
            check_output_path(&out)?;
            if let Some(path) = &stats {
                check_output_path(path)?;
            }
            let (_, q) = io::read_matrix(&input)?;
            let prog = match scheme {
                Scheme::Naive => compile_naive(&q)?,
                Scheme::Blocked => compile_blocked(&q)?,
            };
            io::write_program(&out, &prog)?;
            if let Some(path) = &stats {
                io::write_json(path, &stats_compare(&q)?)?;
            }
            Ok(0)
        }
        Command::Partition {
            input,
            method,
            n,
            report,
        } => {
            check_output_path(&report)?;
            let r = partition(input.as_deref(), method, n)?;
            io::write_json(&report, &r)?;
            Ok(0)
        }
        Command::Verify { modes, seed } => {
            let checks = run_suite(modes, seed)?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "{:<32} {:<6} detail", "check", "result")?;
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{:<32} {:<6} {}", c.name, status, c.detail)?;
            }
            Ok(if checks.iter().all(|c| c.passed) {
                0
            } else {
                1
            })
        }
    })
}

fn check_output_path(p: &Path) -> Result<()> {
    match p.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            arg(format!("output directory {} does not exist", dir.display()))
        }
        _ => Ok(()),
    }
}

#[derive(Debug, Clone)]
pub struct ShadowSimArgs {
    pub modes: usize,
    pub eta: Option<usize>,
    pub samples: u64,
    pub group: Group,
    pub noise: NoiseModel,
    pub kmax: usize,
    pub seed: u64,
    pub write_samples: bool,
    pub auto_ancilla: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShadowSummary {
    pub modes_simulated: usize,
    pub ancilla_added: bool,
    pub samples: u64,
    pub files: Vec<String>,
}

/// Checkpoints `10³, 10⁴, …` below `t`, then `t` itself.
pub fn checkpoints(t: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (3..).map(|k| 10u64.pow(k)).take_while(|&c| c < t).collect();
    out.push(t);
    out
}

/// Runs the experiment and writes `estimates.json`, plus
/// `mitigated_estimates.json` and `error_curve.csv` when `eta` is given and
/// `kmax ≥ 2`, and `samples.csv` on request.
pub fn shadow_sim(cfg: &ShadowSimArgs, out: &Path) -> Result<ShadowSummary> {
    if cfg.modes == 0 {
        return arg("modes must be >= 1");
    }
    if cfg.samples == 0 {
        return arg("samples must be >= 1");
    }
    if cfg.kmax == 0 || cfg.kmax > cfg.modes {
        return arg(format!("kmax must be in 1..={}", cfg.modes));
    }
    if let Some(eta) = cfg.eta {
        if eta > cfg.modes {
            return arg(format!("eta = {eta} exceeds modes = {}", cfg.modes));
        }
    }
    fs::create_dir_all(out)?;

    // the state is drawn from a stream disjoint from every snapshot stream
    let mut state_rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_5eed_5eed_5eed);
    let eta = cfg.eta.unwrap_or(cfg.modes / 2);
    let slater: SlaterDeterminant = random::slater(cfg.modes, eta, &mut state_rng)?;
    let spec = match cfg.eta {
        Some(eta) => Some(symmetry_spec(cfg.modes, eta, cfg.auto_ancilla)?),
        None => None,
    };
    let mut g = slater.covariance();
    if spec.is_some_and(|s| s.ancilla_added) {
        g = g.with_vacuum_modes(1);
    }
    let sim = ShadowConfig {
        group: cfg.group,
        noise: cfg.noise,
        k_max: cfg.kmax.min(g.n_modes()),
        seed: cfg.seed,
    };

    let mut files = Vec::new();
    let track = spec.filter(|_| cfg.kmax >= 2 && cfg.modes >= 2);
    let exact = match track {
        Some(_) => Some(two_rdm_exact(&slater.one_rdm())?),
        None => None,
    };
    let mut curve = Vec::new();
    let mut acc = ShadowAccumulator::new(g.n_modes(), sim.k_max)?;
    let mut done = 0;
    for t in checkpoints(cfg.samples) {
        acc.merge(&collect(&g, &sim, done..t)?)?;
        done = t;
        if let (Some(spec), Some(exact)) = (&track, &exact) {
            let est = acc.estimates()?;
            let raw = spectral_norm(&(two_rdm(&est, cfg.modes)? - exact));
            let mitigated = spectral_norm(&(two_rdm(&mitigate(&est, spec)?, cfg.modes)? - exact));
            curve.push((t, raw, mitigated));
        }
    }

    let est = acc.estimates()?;
    io::write_estimates(&out.join("estimates.json"), &est)?;
    files.push("estimates.json".to_string());
    if let Some(spec) = &spec {
        if sim.k_max >= 2 {
            io::write_estimates(
                &out.join("mitigated_estimates.json"),
                &mitigate(&est, spec)?,
            )?;
            files.push("mitigated_estimates.json".to_string());
        }
    }
    if !curve.is_empty() {
        let mut w = csv::Writer::from_path(out.join("error_curve.csv"))?;
        w.write_record(["T", "unmitigated", "mitigated"])?;
        for (t, raw, mit) in curve {
            w.write_record([t.to_string(), format!("{raw:.16e}"), format!("{mit:.16e}")])?;
        }
        w.flush()?;
        files.push("error_curve.csv".to_string());
    }
    if cfg.write_samples {
        let samples = (0..cfg.samples)
            .map(|i| draw(&g, &sim, i).map(|s| (i, s)))
            .collect::<Result<Vec<_>>>()?;
        io::write_samples(
            &out.join("samples.csv"),
            samples.iter().map(|(i, s)| (*i, s)),
        )?;
        files.push("samples.csv".to_string());
    }
    Ok(ShadowSummary {
        modes_simulated: g.n_modes(),
        ancilla_added: spec.is_some_and(|s| s.ancilla_added),
        samples: cfg.samples,
        files,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    pub method: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quartic_sets: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub template: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<AnticommutingPartition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation_plans: Option<Vec<RotationPlan>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norms: Option<NormsReport>,
    pub set_count: usize,
    pub term_count: Option<usize>,
}

pub fn partition(
    input: Option<&Path>,
    method: Method,
    n: Option<usize>,
) -> Result<PartitionReport> {
    let Some(path) = input else {
        let n = n.ok_or_else(|| Error::InvalidArgument("give --input or --n".into()))?;
        if method != Method::Analytic {
            return arg("without --input only --method analytic is available");
        }
        let t = analytic_partition(n)?;
        return Ok(PartitionReport {
            method: "analytic".into(),
            n,
            quartic_sets: Some(t.quartic_sets),
            set_count: t.sets.len(),
            template: Some(t.sets),
            partition: None,
            rotation_plans: None,
            norms: None,
            term_count: None,
        });
    };
    let file: io::IntegralsFile = io::read_json(path)?;
    if let Some(n) = n {
        if n != file.n {
            return arg(format!(
                "--n {n} disagrees with the integrals file (n = {})",
                file.n
            ));
        }
    }
    let ints = file.to_integrals()?;
    let poly = majorana_form(&ints)?;
    let (part, quartic_sets) = match method {
        Method::Greedy => (greedy_partition(&poly), None),
        Method::Analytic => {
            let t = analytic_partition(ints.n())?;
            (apply_template(&t, &poly)?, Some(t.quartic_sets))
        }
    };
    let plans = part
        .sets
        .iter()
        .map(rotation_plan)
        .collect::<Result<Vec<_>>>()?;
    let norms = norms_report(&poly, &part)?;
    Ok(PartitionReport {
        method: format!("{method:?}").to_lowercase(),
        n: ints.n(),
        quartic_sets,
        template: None,
        set_count: part.sets.len(),
        term_count: Some(
            poly.pruned(crate::tolerance::DEFAULT.coefficient)
                .terms()
                .len(),
        ),
        partition: Some(part),
        rotation_plans: Some(plans),
        norms: Some(norms),
    })
}
