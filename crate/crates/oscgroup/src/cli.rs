//! Command-line driver: parses arguments, runs the suites sequentially and
//! writes one report.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use oscgroup_core::coherent::{AnnihilatorSpec, Variant};
use oscgroup_core::fock::{FockSpace, RealizationFamily, DEFAULT_N, DEFAULT_SAFE_BAND};
use oscgroup_core::linalg::{c, C64};
use oscgroup_core::rmatrix::Family;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::ConfigError;
use crate::params::ParamFile;
use crate::report::{Check, Report};
use crate::suites::{self, CoherentConfig, FockSource, Tolerances};

pub const DEFAULT_SEED: u64 = 20_251_016;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "oscgroup", version, about = "Verify R-matrix deformations of the two-oscillator supergroup")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FamilyArg {
    /// IDENTITY, FB-NONDEF, I-II-A … I-II-D (or id, fb, a … d).
    #[arg(long)]
    pub family: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symbolic quantum Yang–Baxter check of a bundled R-matrix.
    Qybe {
        #[command(flatten)]
        family: FamilyArg,
        /// Also evaluate the residual at this parameter point.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Write the R-matrix as sparse `i j k l <coefficient>` lines.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Derive the quadratic relations; compare with a golden file and check
    /// them against the coproduct.
    Relations {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Skip the coproduct compatibility check.
        #[arg(long)]
        no_compat: bool,
    },
    /// Block-template consistency, with random single-entry perturbations.
    Consistency {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, default_value_t = 10)]
        perturbations: usize,
    },
    /// Pairing check of the dual superalgebra relations.
    DualVerify {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Check the Λ sum identities for r = 1..=R.
        #[arg(long, default_value_t = 8)]
        lambda_r: u8,
        /// Report path (same as --output).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Matrix residuals of a Fock-space realization.
    FockVerify {
        /// HYPERBOLIC-DEFORMED, ANTISYM, APPB-1 … APPB-4.
        #[arg(long)]
        family: String,
        /// Fixed parameter point; without it random draws are used.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_N)]
        n_boson: usize,
        #[arg(long, default_value_t = DEFAULT_SAFE_BAND)]
        safe_band: usize,
        #[arg(long, default_value_t = 50)]
        draws: usize,
    },
    /// Deformed coherent states, spectrum and similarity transform.
    Coherent {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        z: f64,
        #[arg(long)]
        omega: f64,
        /// Eigenvalue as `re,im`.
        #[arg(long = "Z", allow_hyphen_values = true)]
        eigenvalue: String,
        #[arg(long, allow_hyphen_values = true)]
        rho_tilde: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        tau_tilde: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_N)]
        n_boson: usize,
        #[arg(long, default_value_t = DEFAULT_SAFE_BAND)]
        safe_band: usize,
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Every suite on every bundled family.
    All {
        /// Directory holding the golden relation files.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 10)]
        draws: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Iso,
    Super,
}

fn positive(v: usize, what: &'static str) -> Result<(), ConfigError> {
    if v == 0 {
        Err(ConfigError::NotPositive(what))
    } else {
        Ok(())
    }
}

fn parse_z(s: &str) -> Result<C64, ConfigError> {
    let bad = || ConfigError::Invalid { field: "Z", reason: format!("`{s}` is not `re,im`") };
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(c(re, im))
}

fn family(s: &str) -> Result<Family, ConfigError> {
    Ok(Family::parse(s)?)
}

fn echo(cfg: &mut BTreeMap<String, String>, k: &str, v: impl ToString) {
    cfg.insert(k.to_string(), v.to_string());
}

fn path_text(p: &Path) -> String {
    p.display().to_string()
}

/// Run one parsed command. Returns the report or a configuration error.
pub fn execute(cli: &Cli) -> Result<(Report, Option<PathBuf>), ConfigError> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut cfg = BTreeMap::new();
    let mut output = cli.output.clone();
    let (name, checks) = match &cli.command {
        Command::Qybe { family: f, params, dump } => {
            let fam = family(&f.family)?;
            echo(&mut cfg, "family", fam.tag());
            let pf = match params {
                Some(p) => {
                    echo(&mut cfg, "params", path_text(p));
                    let allowed: Vec<&str> = fam
                        .parameters()
                        .iter()
                        .copied()
                        .filter(|k| !matches!(*k, "s" | "u1" | "u2"))
                        .collect();
                    Some(ParamFile::load(p, &allowed)?)
                }
                None => None,
            };
            if let Some(d) = dump {
                let text = oscgroup_core::rmatrix::bundled(fam).to_sparse_text();
                std::fs::write(d, text).map_err(|source| ConfigError::Io { path: d.clone(), source })?;
            }
            ("qybe", suites::qybe(fam, pf.as_ref(), &tol)?)
        }
        Command::Relations { family: f, golden, no_compat } => {
            let fam = family(&f.family)?;
            echo(&mut cfg, "family", fam.tag());
            if let Some(g) = golden {
                echo(&mut cfg, "golden", path_text(g));
            }
            echo(&mut cfg, "compat", !no_compat);
            ("relations", suites::relations(fam, golden.as_deref(), !no_compat)?)
        }
        Command::Consistency { family: f, perturbations } => {
            let fam = family(&f.family)?;
            echo(&mut cfg, "family", fam.tag());
            echo(&mut cfg, "perturbations", perturbations);
            echo(&mut cfg, "seed", cli.seed);
            ("consistency", suites::consistency(fam, *perturbations, &mut rng))
        }
        Command::DualVerify { family: f, degree, lambda_r, report } => {
            let fam = family(&f.family)?;
            positive(*degree, "degree")?;
            echo(&mut cfg, "family", fam.tag());
            echo(&mut cfg, "degree", degree);
            echo(&mut cfg, "lambda_r", lambda_r);
            if report.is_some() {
                output = report.clone();
            }
            ("dual-verify", suites::dual(fam, *degree, *lambda_r))
        }
        Command::FockVerify { family: f, params, n_boson, safe_band, draws } => {
            let fam = RealizationFamily::parse(f)?;
            positive(*draws, "draws")?;
            positive(*safe_band, "safe-band")?;
            let space = FockSpace::new(*n_boson, *safe_band)?;
            echo(&mut cfg, "family", fam.tag());
            echo(&mut cfg, "n_boson", n_boson);
            echo(&mut cfg, "safe_band", safe_band);
            let source = match params {
                Some(p) => {
                    echo(&mut cfg, "params", path_text(p));
                    let pf = ParamFile::load(p, &suites::FOCK_KEYS)?;
                    FockSource::Fixed(suites::realization_params(&pf)?)
                }
                None => {
                    echo(&mut cfg, "draws", draws);
                    echo(&mut cfg, "seed", cli.seed);
                    FockSource::Random { draws: *draws, rng: &mut rng }
                }
            };
            ("fock-verify", suites::fock(fam, source, &space, &tol)?)
        }
        Command::Coherent {
            variant,
            x,
            z,
            omega,
            eigenvalue,
            rho_tilde,
            tau_tilde,
            n_boson,
            safe_band,
            levels,
        } => {
            let zv = parse_z(eigenvalue)?;
            positive(*safe_band, "safe-band")?;
            positive(*levels, "levels")?;
            let space = FockSpace::new(*n_boson, *safe_band)?;
            let variant = match variant {
                VariantArg::Iso => Variant::Iso,
                VariantArg::Super => Variant::Super,
            };
            let transform = match (rho_tilde, tau_tilde) {
                (None, None) => None,
                (r, t) => Some((r.unwrap_or(0.0), t.unwrap_or(0.0))),
            };
            echo(&mut cfg, "variant", format!("{variant:?}").to_lowercase());
            echo(&mut cfg, "x", x);
            echo(&mut cfg, "z", z);
            echo(&mut cfg, "omega", omega);
            echo(&mut cfg, "Z", format!("{},{}", zv.re, zv.im));
            echo(&mut cfg, "n_boson", n_boson);
            echo(&mut cfg, "levels", levels);
            if let Some((r, t)) = transform {
                echo(&mut cfg, "rho_tilde", r);
                echo(&mut cfg, "tau_tilde", t);
            }
            let cc = CoherentConfig {
                spec: AnnihilatorSpec { variant, x: *x, z: *z, omega: *omega },
                z: zv,
                transform,
                levels: *levels,
            };
            ("coherent", suites::coherent(&cc, &space, &tol)?)
        }
        Command::All { golden_dir, degree, draws } => {
            positive(*degree, "degree")?;
            positive(*draws, "draws")?;
            echo(&mut cfg, "degree", degree);
            echo(&mut cfg, "draws", draws);
            echo(&mut cfg, "seed", cli.seed);
            if let Some(g) = golden_dir {
                echo(&mut cfg, "golden_dir", path_text(g));
            }
            ("all", run_all(golden_dir.as_deref(), *degree, *draws, &mut rng, &tol)?)
        }
    };
    Ok((Report::new(name, cfg, checks), output))
}

fn run_all(
    golden_dir: Option<&Path>,
    degree: usize,
    draws: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<Vec<Check>, ConfigError> {
    let mut checks = Vec::new();
    for fam in Family::ALL {
        checks.extend(suites::qybe(fam, None, tol)?);
        let golden = golden_dir.map(|d| d.join(suites::golden_file(fam)));
        checks.extend(suites::relations(fam, golden.as_deref(), true)?);
        checks.extend(suites::consistency(fam, 10, rng));
    }
    for fam in [Family::A, Family::B, Family::C, Family::D] {
        checks.extend(suites::dual(fam, degree, 8));
    }
    let space = FockSpace::new(DEFAULT_N, DEFAULT_SAFE_BAND)?;
    for fam in RealizationFamily::ALL {
        checks.extend(suites::fock(fam, FockSource::Random { draws, rng: &mut *rng }, &space, tol)?);
    }
    let z = c(0.7, -0.4);
    for (variant, omega, transform) in [(Variant::Iso, 1.3, Some((0.3, 0.2))), (Variant::Super, 0.8, None)] {
        let cc = CoherentConfig {
            spec: AnnihilatorSpec { variant, x: 0.45, z: 0.3, omega },
            z,
            transform,
            levels: 10,
        };
        checks.extend(suites::coherent(&cc, &space, tol)?);
    }
    Ok(checks)
}

/// Full driver: exit code 0 when every check passes, 1 on a failed check,
/// 2 on a usage or configuration error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (report, output) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match output {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, &text) {
                let _ = writeln!(stderr, "error: {}: {e}", p.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    if report.passed {
        0
    } else {
        1
    }
}
