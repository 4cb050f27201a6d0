//! The `rainbow` command-line front end.
//!
//! Exit codes: 0 on success, 1 on invalid input or a failed check, 2 when a
//! resource cap is exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::{Deformation, Mode};
use crate::error::{Error, Result};
use crate::hamiltonian::{
    build_hamiltonian_capped, ground_energy_and_kernel, spectral_gap, state_vector,
    verify_frustration_free, TermKind, DEFAULT_DIM_CAP,
};
use crate::network::{
    contract, contract_symbolic, contract_to_mps, network_snapshot, walk_to_tiling,
    DEFAULT_CONTRACT_CAP, DEFAULT_MPS_CAP,
};
use crate::observables::{
    correlation_report, entropy_sweep, truncation_fidelity, write_sweep_csv, CutRule, SweepPoint,
    Window,
};
use crate::render::{render_arcs, render_tiling, render_walk};
use crate::state::{build_ground_state_capped, Amplitude};
use crate::walks::{count_walks, enumerate_walks, Model, Walk, DEFAULT_WALK_CAP};

#[derive(Debug, Parser)]
#[command(name = "rainbow", version, about = "Area-deformed colored Motzkin and Fredkin chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Chain {
    /// motzkin or fredkin.
    #[arg(long, default_value = "motzkin")]
    model: Model,
    /// Half the chain length.
    #[arg(long)]
    n: usize,
    /// Number of colors.
    #[arg(long, default_value_t = 1)]
    colors: u8,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Resource cap (walks, Hilbert-space dimension or live entries).
    #[arg(long)]
    cap_dim: Option<u64>,
}

#[derive(Debug, Args)]
struct Param {
    /// Deformation: `p/q` or an integer is exact, a decimal is float.
    #[arg(long, default_value = "1")]
    t: String,
    /// Force the arithmetic mode.
    #[arg(long)]
    mode: Option<Mode>,
}

impl Param {
    fn resolve(&self, err: &mut dyn Write) -> Result<Deformation> {
        resolve_t(&self.t, self.mode, err)
    }
}

fn resolve_t(text: &str, mode: Option<Mode>, err: &mut dyn Write) -> Result<Deformation> {
    let t: Deformation = text.parse()?;
    let t = match mode {
        Some(m) => t.in_mode(m)?,
        None => t,
    };
    let _ = writeln!(err, "t = {t} (mode: {})", t.mode());
    Ok(t)
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Walk,
    Arcs,
    Tiling,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List or count walks.
    Walks {
        #[command(flatten)]
        chain: Chain,
        /// Print only the number of walks.
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Ground-state amplitudes by enumeration.
    State {
        #[command(flatten)]
        chain: Chain,
        #[command(flatten)]
        param: Param,
        #[command(flatten)]
        output: Output,
    },
    /// Contract the tensor network.
    Contract {
        #[command(flatten)]
        chain: Chain,
        #[command(flatten)]
        param: Param,
        /// Emit the symbolic amplitudes (polynomials in x = √t).
        #[arg(long)]
        symbolic: bool,
        /// Emit the MPS bond dimensions.
        #[arg(long)]
        mps: bool,
        /// Emit the network description as JSON.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Check the contracted network against the enumerated state.
    Verify {
        #[command(flatten)]
        chain: Chain,
        #[command(flatten)]
        param: Param,
        #[command(flatten)]
        output: Output,
    },
    /// Spectrum and frustration-freeness of the Motzkin Hamiltonian.
    Hamiltonian {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        colors: u8,
        #[command(flatten)]
        param: Param,
        /// Also write the matrix in coordinate format to this path.
        #[arg(long)]
        coo: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Entanglement entropy sweep as CSV.
    Entropy {
        #[arg(long, default_value = "motzkin")]
        model: Model,
        /// One or more half-lengths, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        colors: u8,
        #[arg(long)]
        t: Option<String>,
        /// Comma-separated values of t.
        #[arg(long, value_delimiter = ',')]
        t_grid: Vec<String>,
        #[arg(long)]
        mode: Option<Mode>,
        /// `half`, `all` or a cut position.
        #[arg(long, default_value = "half")]
        cut: String,
        #[command(flatten)]
        output: Output,
    },
    /// Two-color correlation report as JSON.
    Correlate {
        #[arg(long, default_value = "motzkin")]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        colors: u8,
        #[command(flatten)]
        param: Param,
        #[command(flatten)]
        output: Output,
    },
    /// Fidelity of a truncated approximant.
    Truncate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        colors: u8,
        /// small_t or large_t.
        #[arg(long)]
        window: String,
        #[arg(long)]
        t: Option<String>,
        #[arg(long, value_delimiter = ',')]
        t_grid: Vec<String>,
        #[arg(long)]
        mode: Option<Mode>,
        #[command(flatten)]
        output: Output,
    },
    /// SVG figure of a walk, its arcs, or its canonical tiling.
    Render {
        #[arg(long, value_enum)]
        target: Target,
        /// Whitespace-separated steps, e.g. "U1 U2 D2 D1".
        #[arg(long)]
        walk: String,
        #[arg(long, default_value = "motzkin")]
        model: Model,
        #[arg(long, default_value_t = 1)]
        colors: u8,
        #[command(flatten)]
        output: Output,
    },
}

/// Runs the CLI with the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return 1;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_cap() {
                2
            } else {
                1
            }
        }
    }
}

/// Writes `text` to the output path atomically, or to stdout.
fn emit(output: &Output, text: &str, out: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn cap_u64(output: &Output, default: u64) -> u64 {
    output.cap_dim.unwrap_or(default)
}

fn cap_usize(output: &Output, default: usize) -> usize {
    output
        .cap_dim
        .map_or(default, |c| usize::try_from(c).unwrap_or(usize::MAX))
}

fn t_values(
    t: &Option<String>,
    grid: &[String],
    mode: Option<Mode>,
    err: &mut dyn Write,
) -> Result<Vec<Deformation>> {
    let texts: Vec<&String> = t.iter().chain(grid).collect();
    if texts.is_empty() {
        return Err(Error::InvalidParameter("give --t or --t-grid".into()));
    }
    let values = texts
        .into_iter()
        .map(|s| resolve_t(s, mode, err))
        .collect::<Result<Vec<_>>>()?;
    if !grid.is_empty() && values.iter().any(|t| t.is_zero()) {
        return Err(Error::InvalidParameter("t-grid values must be positive".into()));
    }
    Ok(values)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Walks {
            chain,
            count,
            output,
        } => {
            let text = if count {
                format!("{}\n", count_walks(chain.n, chain.colors, chain.model))
            } else {
                let mut s = String::new();
                let walks = enumerate_walks(
                    chain.n,
                    chain.colors,
                    chain.model,
                    cap_u64(&output, DEFAULT_WALK_CAP),
                )?;
                for w in walks {
                    let _ = writeln!(s, "{w}\t{}", w.area()?);
                }
                s
            };
            emit(&output, &text, out)?;
            Ok(true)
        }
        Command::State {
            chain,
            param,
            output,
        } => {
            let t = param.resolve(err)?;
            let state = build_ground_state_capped(
                chain.n,
                chain.colors,
                chain.model,
                t,
                false,
                cap_u64(&output, DEFAULT_WALK_CAP),
            )?;
            let mut s = String::from("walk\tarea\tamplitude\tprobability\n");
            for (w, a) in state.iter() {
                let amp = match a {
                    Amplitude::Exact(m) => m.to_string(),
                    Amplitude::Float(_) => format!("{:.15e}", state.value(w)),
                };
                let p = match state.probability_exact(w) {
                    Some(p) => p.to_string(),
                    None => format!("{:.15e}", state.probability(w)),
                };
                let _ = writeln!(s, "{w}\t{}\t{amp}\t{p}", w.area()?);
            }
            let _ = writeln!(s, "# norm^2 = {}", state.norm_sq());
            emit(&output, &s, out)?;
            Ok(true)
        }
        Command::Contract {
            chain,
            param,
            symbolic,
            mps,
            json,
            output,
        } => {
            let mut s = String::new();
            if json {
                let snap = network_snapshot(chain.n, chain.colors, chain.model);
                s.push_str(&serde_json::to_string_pretty(&snap)?);
                s.push('\n');
            } else if mps {
                let m = contract_to_mps(
                    chain.n,
                    chain.colors,
                    chain.model,
                    cap_u64(&output, DEFAULT_MPS_CAP),
                )?;
                s.push_str("cut\tbond_dim\n");
                for (z, d) in m.bond_dims().iter().enumerate() {
                    let _ = writeln!(s, "{z}\t{d}");
                }
            } else if symbolic {
                let amps = contract_symbolic(
                    chain.n,
                    chain.colors,
                    chain.model,
                    cap_usize(&output, DEFAULT_CONTRACT_CAP),
                )?;
                for (w, p) in amps {
                    let _ = writeln!(s, "{w}\t{p}");
                }
            } else {
                let t = param.resolve(err)?;
                let state = contract(chain.n, chain.colors, chain.model, &t, t.mode())?;
                for (w, a) in state.iter() {
                    let amp = match a {
                        Amplitude::Exact(m) => m.to_string(),
                        Amplitude::Float(_) => format!("{:.15e}", state.value(w)),
                    };
                    let _ = writeln!(s, "{w}\t{amp}");
                }
            }
            emit(&output, &s, out)?;
            Ok(true)
        }
        Command::Verify {
            chain,
            param,
            output,
        } => {
            let t = param.resolve(err)?;
            let (pass, report) = verify_contraction(&chain, &t, &output)?;
            emit(&output, &report, out)?;
            Ok(pass)
        }
        Command::Hamiltonian {
            n,
            colors,
            param,
            coo,
            output,
        } => {
            let t = param.resolve(err)?;
            let h = build_hamiltonian_capped(n, colors, &t, cap_usize(&output, DEFAULT_DIM_CAP))?;
            if let Some(path) = coo {
                write_atomic(&path, h.to_coordinate_text().as_bytes())?;
            }
            let ground = ground_energy_and_kernel(&h)?;
            let gap = spectral_gap(&h)?;
            let state = build_ground_state_capped(
                n,
                colors,
                Model::Motzkin,
                t.clone(),
                true,
                DEFAULT_WALK_CAP,
            )?;
            let v = state_vector(&h, &state)?;
            let ff = verify_frustration_free(&h, &v)?;
            let counts = h.term_counts();
            let count = |k| counts.get(&k).copied().unwrap_or(0);
            let doc = serde_json::json!({
                "schema": 1,
                "n": n,
                "j": colors,
                "t": t.to_string(),
                "dimension": h.dim(),
                "nnz": h.nnz(),
                "terms": {
                    "boundary": count(TermKind::Boundary),
                    "bulk": count(TermKind::Bulk),
                    "cross": count(TermKind::Cross),
                },
                "lambda_min": ground.lambda_min,
                "kernel_dim": ground.kernel_dim,
                "ground_sector": ground.sector,
                "second_eigenvalue": gap,
                "residual_norm": ff.residual_norm,
                "max_term_residual": ff.max_residual,
            });
            emit(&output, &format!("{}\n", serde_json::to_string_pretty(&doc)?), out)?;
            Ok(ground.kernel_dim == 1 && ground.lambda_min.abs() <= 1e-10 && ff.passes(1e-10))
        }
        Command::Entropy {
            model,
            n,
            colors,
            t,
            t_grid,
            mode,
            cut,
            output,
        } => {
            let cut: CutRule = cut.parse()?;
            let ts = t_values(&t, &t_grid, mode, err)?;
            let grid: Vec<SweepPoint> = n
                .iter()
                .flat_map(|&n| {
                    ts.iter().map(move |t| SweepPoint {
                        model,
                        n,
                        colors,
                        t: t.clone(),
                    })
                })
                .collect();
            let rows = entropy_sweep(&grid, cut);
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            emit(&output, &String::from_utf8_lossy(&buf), out)?;
            Ok(rows.iter().all(|r| r.quantity != "error"))
        }
        Command::Correlate {
            model,
            n,
            colors,
            param,
            output,
        } => {
            if colors != 2 {
                return Err(Error::Unsupported(format!(
                    "the color operator is defined for two colors, not {colors}"
                )));
            }
            let t = param.resolve(err)?;
            let report = correlation_report(n, model, &t)?;
            emit(
                &output,
                &format!("{}\n", serde_json::to_string_pretty(&report)?),
                out,
            )?;
            Ok(true)
        }
        Command::Truncate {
            n,
            colors,
            window,
            t,
            t_grid,
            mode,
            output,
        } => {
            let window: Window = window.parse()?;
            let ts = t_values(&t, &t_grid, mode, err)?;
            let mut s = String::from("n,j,t,window,fidelity\n");
            for t in &ts {
                let f = truncation_fidelity(n, colors, t, window)?;
                let _ = writeln!(s, "{n},{colors},{t},{window},{f:.15e}");
            }
            emit(&output, &s, out)?;
            Ok(true)
        }
        Command::Render {
            target,
            walk,
            model,
            colors,
            output,
        } => {
            let w = Walk::parse(&walk, model, colors)?;
            let svg = match target {
                Target::Walk => render_walk(&w)?,
                Target::Arcs => render_arcs(&w)?,
                Target::Tiling => render_tiling(&walk_to_tiling(&w)?)?,
            };
            emit(&output, &svg, out)?;
            Ok(true)
        }
    }
}

/// Symbolic and numeric agreement between the network and the enumerated
/// state.
fn verify_contraction(chain: &Chain, t: &Deformation, output: &Output) -> Result<(bool, String)> {
    let mut report = String::new();
    let cap = cap_u64(output, DEFAULT_WALK_CAP);
    let reference = build_ground_state_capped(chain.n, chain.colors, chain.model, t.clone(), false, cap)?;
    let symbolic = contract_symbolic(
        chain.n,
        chain.colors,
        chain.model,
        cap_usize(output, DEFAULT_CONTRACT_CAP),
    )?;
    let mut symbolic_ok = symbolic.len() == reference.len();
    for (w, poly) in &symbolic {
        let want = w.area().map(|a| 2 * a as u32);
        let got = poly.as_monomial();
        let ok = matches!((&got, &want), (Some(m), Ok(p)) if m.power == *p && m.coeff == num_traits::One::one());
        if !ok {
            symbolic_ok = false;
            let _ = writeln!(report, "mismatch {w}: {poly}");
        }
    }
    let _ = writeln!(
        report,
        "{} symbolic: {} contracted configurations, {} walks",
        if symbolic_ok { "PASS" } else { "FAIL" },
        symbolic.len(),
        reference.len()
    );
    let contracted = contract(chain.n, chain.colors, chain.model, t, t.mode())?;
    let mut worst = 0.0f64;
    let mut same_support = contracted.len() == reference.len();
    for w in reference.walks() {
        if !contracted.contains(w) {
            same_support = false;
            continue;
        }
        let (a, b) = (contracted.value(w), reference.value(w));
        worst = worst.max(((a - b) / b).abs());
    }
    let numeric_ok = same_support && worst <= 1e-12;
    let _ = writeln!(
        report,
        "{} amplitudes at t = {t} ({} mode): max relative deviation {worst:.3e}",
        if numeric_ok { "PASS" } else { "FAIL" },
        t.mode()
    );
    let pass = symbolic_ok && numeric_ok;
    let _ = writeln!(report, "{}", if pass { "PASS" } else { "FAIL" });
    Ok((pass, report))
}
