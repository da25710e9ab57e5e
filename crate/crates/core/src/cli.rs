//! Command-line front end: parse chain-spec files and flags, dispatch to
//! the library, emit CSV/JSON/pretty results.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::asymptotics;
use crate::chain::{
    build_full_hamiltonian, to_display_order, ChainSpec, Model as ChainModel, Topology,
};
use crate::design;
use crate::evolve::unitary_at;
use crate::gate::{extract_effective_gate, swap_joint_phase, compare_gates};
use crate::optimize::{self, TuneObjective};
use crate::protocols::{self, EbitMode, QubitState, TransferInit};
use crate::{CMatrix, Error};

#[derive(Parser)]
#[command(name = "spinchain", version, about = "Exact XY spin-chain dynamics laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Xy,
    Heisenberg,
}

impl From<ModelArg> for ChainModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Xy => ChainModel::Xy,
            ModelArg::Heisenberg => ChainModel::Heisenberg,
        }
    }
}

/// Flags shared by subcommands that need a chain spec.
#[derive(Args)]
struct SpecArgs {
    /// Chain-spec file (JSON); overrides --n/--omega/--model/--b-field.
    #[arg(long)]
    spec: Option<std::path::PathBuf>,
    /// Number of spins for a homogeneous chain.
    #[arg(long)]
    n: Option<usize>,
    /// Homogeneous coupling strength.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, value_enum, default_value = "xy")]
    model: ModelArg,
    /// Per-site field strengths, comma separated (defaults to zero).
    #[arg(long, value_delimiter = ',')]
    b_field: Option<Vec<f64>>,
}

impl SpecArgs {
    fn resolve(&self) -> crate::Result<ChainSpec> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)?;
            return ChainSpec::from_json(&text);
        }
        let n = self.n.ok_or_else(|| Error::InvalidArgument("need --spec or --n".into()))?;
        let mut spec = ChainSpec::homogeneous(n, self.model.into(), self.omega)?;
        if let Some(fields) = &self.b_field {
            spec = spec.with_fields(fields.clone())?;
        }
        Ok(spec)
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
    /// Write results to a file instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the full three-spin unitary and the extracted effective gate.
    Gate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Second bond coupling; defaults to --omega.
        #[arg(long)]
        lambda: Option<f64>,
        /// Evolution time: a number, "tau", or "tau/2".
        #[arg(long, default_value = "tau")]
        t: String,
        /// Mediator sector to restrict to.
        #[arg(long, default_value = "0")]
        sector: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the three-spin state-transfer protocol.
    Transfer {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "med0-tgt0-z")]
        init: TransferInitArg,
        /// Input amplitude of |0> (normalized together with --beta).
        #[arg(long, default_value_t = 0.6)]
        alpha: f64,
        /// Input amplitude of |1>.
        #[arg(long, default_value_t = 0.8)]
        beta: f64,
        /// Run the entanglement-preserving ancilla variant instead.
        #[arg(long)]
        ancilla: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bidirectional classical exchange of one bit each way.
    Exchange {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        bit_a: u8,
        #[arg(long)]
        bit_b: u8,
        /// Sampled readout with this seed instead of exact readout.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Ebit generation: full-tau, half-tau, or repeated rounds.
    Ebit {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "plus-plus")]
        mode: EbitModeArg,
        /// Rounds for --mode repeated.
        #[arg(long, default_value_t = 2)]
        rounds: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// W-state production on the three-spin chain.
    Wstate {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Effective gate in a star network of parallel chains.
    Network {
        /// Branch couplings, comma separated, e.g. 1,2,2.
        #[arg(long, value_delimiter = ',')]
        branches: Vec<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Engineer couplings for half-time end-to-end entanglement.
    Design {
        #[arg(long)]
        n: usize,
        /// Design rate constant; the rotation time is pi/lambda.
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Also propagate the design and report the achieved amplitude.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample f(t) and F(t) on a uniform time grid.
    Scan {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        samples: Option<usize>,
        /// Also locate and refine the best peak.
        #[arg(long)]
        peak: bool,
        #[arg(long, default_value_t = 1e-6)]
        refine_tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sweep a middle-spin field strength for the best fidelity peak.
    TuneField {
        #[command(flatten)]
        spec: SpecArgs,
        /// Field grid, comma separated.
        #[arg(long, value_delimiter = ',')]
        b_grid: Vec<f64>,
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1e-6)]
        refine_tol: f64,
        #[arg(long, value_enum, default_value = "max-fidelity")]
        objective: ObjectiveArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Maximized transfer amplitude per N for XY vs Heisenberg chains.
    Compare {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 2000.0)]
        t_max: f64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1e-5)]
        refine_tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Long-chain peak estimates: t0, Bessel and fitted amplitudes.
    Asymptotics {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Also report the XY/Heisenberg amplitude ratio at t0.
        #[arg(long)]
        ratio: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransferInitArg {
    /// |00>_23 with a final sigma_z correction.
    #[value(name = "med0-tgt0-z")]
    Med0Tgt0Z,
    #[value(name = "med0-tgt1")]
    Med0Tgt1,
    #[value(name = "med1-tgt0")]
    Med1Tgt0,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EbitModeArg {
    PlusPlus,
    Half,
    Repeated,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    MaxFidelity,
    MaxFidelityPerTime,
}

/// 12-significant-digit, locale-independent float formatting.
fn sig(v: f64) -> String {
    format!("{v:.11e}")
}

fn parse_time(text: &str, omega: f64) -> crate::Result<f64> {
    match text {
        "tau" => Ok(protocols::tau(omega)),
        "tau/2" => Ok(protocols::tau(omega) / 2.0),
        other => other
            .parse::<f64>()
            .map_err(|_| Error::InvalidArgument(format!("bad time '{other}' (number, tau, tau/2)"))),
    }
}

fn matrix_lines(m: &CMatrix) -> Vec<String> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| {
                    let z = m[(i, j)];
                    if z.im.abs() < 5e-11 {
                        format!("{:8.4}", z.re)
                    } else if z.re.abs() < 5e-11 {
                        format!("{:7.4}i", z.im)
                    } else {
                        format!("{:.3}{:+.3}i", z.re, z.im)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

fn matrix_json(m: &CMatrix) -> serde_json::Value {
    json!((0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| vec![m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

struct Emitter {
    target: Option<std::path::PathBuf>,
    buffer: String,
}

impl Emitter {
    fn new(target: Option<std::path::PathBuf>) -> Self {
        Emitter { target, buffer: String::new() }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.buffer.push_str(s.as_ref());
        self.buffer.push('\n');
    }

    fn finish(self) -> crate::Result<()> {
        match self.target {
            Some(path) => std::fs::write(path, self.buffer).map_err(Error::from),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(self.buffer.as_bytes()).map_err(Error::from)
            }
        }
    }
}

fn emit_json(out: &OutputArgs, value: serde_json::Value) -> crate::Result<()> {
    let mut em = Emitter::new(out.output.clone());
    em.line(serde_json::to_string_pretty(&value).expect("value serializes"));
    em.finish()
}

fn protocol_summary(r: &protocols::ProtocolResult) -> serde_json::Value {
    json!({
        "figure_of_merit": r.figure_of_merit,
        "mediator_purity": r.mediator_purity,
        "elapsed_time": r.elapsed_time,
        "transcript": r.transcript.iter().map(|(t, a)| json!({"t": t, "action": a})).collect::<Vec<_>>(),
    })
}

fn print_protocol(out: &OutputArgs, name: &str, results: &[protocols::ProtocolResult]) -> crate::Result<()> {
    match out.format {
        Format::Json => emit_json(
            out,
            json!({ "protocol": name, "runs": results.iter().map(protocol_summary).collect::<Vec<_>>() }),
        ),
        _ => {
            let mut em = Emitter::new(out.output.clone());
            em.line(format!("protocol: {name}"));
            for (i, r) in results.iter().enumerate() {
                if results.len() > 1 {
                    em.line(format!("round {}:", i + 1));
                }
                for (t, action) in &r.transcript {
                    em.line(format!("  t={:<12} {}", sig(*t), action));
                }
                em.line(format!("  figure of merit: {}", sig(r.figure_of_merit)));
                em.line(format!("  mediator purity: {}", sig(r.mediator_purity)));
            }
            em.finish()
        }
    }
}

fn run_command(cmd: Command) -> crate::Result<()> {
    match cmd {
        Command::Gate { spec, lambda, t, sector, out } => {
            let omega = spec.omega;
            let lambda = lambda.unwrap_or(omega);
            if spec.n.unwrap_or(3) != 3 || spec.spec.is_some() {
                return Err(Error::InvalidArgument("gate works on the three-spin chain; use --omega/--lambda".into()));
            }
            let chain = ChainSpec::three_spin(omega, lambda)?;
            let t = parse_time(&t, omega)?;
            let h = build_full_hamiltonian(&chain)?;
            let u = unitary_at(&h, t);
            let u_disp = to_display_order(&u);
            let mediator_state = match sector.as_str() {
                "0" => false,
                "1" => true,
                other => return Err(Error::InvalidArgument(format!("bad sector '{other}'"))),
            };
            let report = extract_effective_gate(&u, &[1], &[mediator_state])?;
            match out.format {
                Format::Json => emit_json(&out, json!({
                    "t": t,
                    "unitary_display_order": matrix_json(&u_disp),
                    "gate": {
                        "leakage": report.leakage,
                        "mediator_sector": report.mediator_sector,
                        "effective_gate": matrix_json(&report.effective_gate),
                        "decomposition_residual": report.decomposition_residual,
                        "global_phase": [report.global_phase.re, report.global_phase.im],
                    },
                })),
                _ => {
                    let mut em = Emitter::new(out.output.clone());
                    em.line(format!("U = exp(-iHt) at t = {} (basis |000>,|001>,|100>,|101>,|010>,|011>,|110>,|111>)", sig(t)));
                    for l in matrix_lines(&u_disp) {
                        em.line(l);
                    }
                    em.line(format!("leakage between mediator sectors: {}", sig(report.leakage)));
                    em.line(format!("effective gate on spins (1,3), sector {}:", report.mediator_sector));
                    for l in matrix_lines(&report.effective_gate) {
                        em.line(l);
                    }
                    let (res, _) = compare_gates(&report.effective_gate, &swap_joint_phase());
                    em.line(format!("residual vs SWAP*Diag(1,-1,-1,-1): {}", sig(res)));
                    em.finish()
                }
            }
        }
        Command::Transfer { spec, init, alpha, beta, ancilla, out } => {
            let chain = resolve_three_spin(&spec)?;
            if ancilla {
                let r = protocols::run_ancilla_transfer(&chain)?;
                return print_protocol(&out, "ancilla-transfer", &[r]);
            }
            let norm = (alpha * alpha + beta * beta).sqrt();
            if norm < 1e-12 {
                return Err(Error::InvalidArgument("input amplitudes are both zero".into()));
            }
            let input = QubitState::new(
                crate::C64::new(alpha / norm, 0.0),
                crate::C64::new(beta / norm, 0.0),
            )?;
            let init = match init {
                TransferInitArg::Med0Tgt0Z => TransferInit::Med0Tgt0WithZCorrection,
                TransferInitArg::Med0Tgt1 => TransferInit::Med0Tgt1,
                TransferInitArg::Med1Tgt0 => TransferInit::Med1Tgt0,
            };
            let r = protocols::run_state_transfer(&chain, &input, init)?;
            print_protocol(&out, "state-transfer", &[r])
        }
        Command::Exchange { spec, bit_a, bit_b, seed, out } => {
            let chain = resolve_three_spin(&spec)?;
            let (a, b) = (bit_a != 0, bit_b != 0);
            let (ra, rb) = match seed {
                Some(s) => protocols::run_classical_exchange_sampled(&chain, a, b, s)?,
                None => protocols::run_classical_exchange(&chain, a, b)?,
            };
            match out.format {
                Format::Json => emit_json(&out, json!({
                    "sent": {"alice": a as u8, "bob": b as u8},
                    "received": {"alice": ra as u8, "bob": rb as u8},
                })),
                _ => {
                    let mut em = Emitter::new(out.output.clone());
                    em.line(format!("Alice sent {} and read {}", a as u8, ra as u8));
                    em.line(format!("Bob sent {} and read {}", b as u8, rb as u8));
                    em.finish()
                }
            }
        }
        Command::Ebit { spec, mode, rounds, out } => {
            let chain = resolve_three_spin(&spec)?;
            let mode = match mode {
                EbitModeArg::PlusPlus => EbitMode::PlusPlusFullTau,
                EbitModeArg::Half => EbitMode::HalfTau,
                EbitModeArg::Repeated => EbitMode::Repeated(rounds),
            };
            let results = protocols::run_ebit_generation(&chain, mode)?;
            print_protocol(&out, "ebit-generation", &results)
        }
        Command::Wstate { spec, out } => {
            let chain = resolve_three_spin(&spec)?;
            let r = protocols::run_w_state(&chain)?;
            print_protocol(&out, "w-state", &[r])
        }
        Command::Network { branches, out } => {
            let net = protocols::NetworkSpec::new(branches)?;
            let report = protocols::run_network_gate(&net)?;
            match out.format {
                Format::Json => emit_json(&out, json!({
                    "collective_coupling": net.collective_coupling(),
                    "tau": net.tau(),
                    "leakage": report.leakage,
                    "effective_gate": matrix_json(&report.effective_gate),
                    "decomposition_residual": report.decomposition_residual,
                })),
                _ => {
                    let mut em = Emitter::new(out.output.clone());
                    em.line(format!("collective coupling: {}", sig(net.collective_coupling())));
                    em.line(format!("gate time tau: {}", sig(net.tau())));
                    em.line(format!("leakage: {}", sig(report.leakage)));
                    em.line("effective gate on the end spins:");
                    for l in matrix_lines(&report.effective_gate) {
                        em.line(l);
                    }
                    em.line(format!("residual vs SWAP*Diag(1,-1,-1,-1): {}", sig(report.decomposition_residual)));
                    em.finish()
                }
            }
        }
        Command::Design { n, lambda, verify, out } => {
            let d = design::design_half_time_entanglement(n, lambda)?;
            let amplitude = if verify { Some(design::verify_design(&d)?) } else { None };
            match out.format {
                Format::Json => {
                    let mut v = serde_json::to_value(&d).expect("design serializes");
                    if let Some(a) = amplitude {
                        v["verified_amplitude"] = json!(a);
                    }
                    v["chain_spec"] = serde_json::to_value(d.to_chain_spec()).expect("spec serializes");
                    emit_json(&out, v)
                }
                _ => {
                    let mut em = Emitter::new(out.output.clone());
                    em.line(d.to_chain_spec().to_json());
                    em.line(format!("predicted time: {}", sig(d.predicted_time)));
                    em.line(format!("resource cost: {}", sig(d.resource_cost)));
                    if let Some(a) = amplitude {
                        em.line(format!("verified amplitude: {a:.10}"));
                    }
                    em.finish()
                }
            }
        }
        Command::Scan { spec, t_min, t_max, samples, peak, refine_tol, out } => {
            let chain = spec.resolve()?;
            let samples = samples.unwrap_or_else(|| optimize::default_samples(t_min, t_max));
            let curve = optimize::scan(&chain, t_min, t_max, samples)?;
            match out.format {
                Format::Csv => {
                    let mut em = Emitter::new(out.output.clone());
                    em.line("t,f,F");
                    for s in &curve.samples {
                        em.line(format!("{},{},{}", sig(s.t), sig(s.f), sig(s.fidelity)));
                    }
                    em.finish()
                }
                Format::Json => {
                    let mut v = json!({
                        "t_min": t_min, "t_max": t_max,
                        "samples": curve.samples,
                    });
                    if peak {
                        let p = optimize::find_peak(&curve, refine_tol)?;
                        v["peak"] = json!({"t_star": p.t_star, "f_star": p.f_star, "F_star": p.fidelity_star});
                    }
                    emit_json(&out, v)
                }
                Format::Pretty => {
                    let mut em = Emitter::new(out.output.clone());
                    if peak {
                        let p = optimize::find_peak(&curve, refine_tol)?;
                        em.line(format!("peak F = {} at t = {}", sig(p.fidelity_star), sig(p.t_star)));
                    } else {
                        em.line(format!("{} samples on [{}, {}]", curve.samples.len(), sig(t_min), sig(t_max)));
                        let best = curve.samples.iter().max_by(|a, b| a.f.total_cmp(&b.f)).expect("nonempty");
                        em.line(format!("best grid sample: f = {} at t = {}", sig(best.f), sig(best.t)));
                    }
                    em.finish()
                }
            }
        }
        Command::TuneField { spec, b_grid, t_min, t_max, samples, refine_tol, objective, out } => {
            let chain = spec.resolve()?;
            let samples = samples.unwrap_or_else(|| optimize::default_samples(t_min, t_max));
            let objective = match objective {
                ObjectiveArg::MaxFidelity => TuneObjective::MaxFidelity,
                ObjectiveArg::MaxFidelityPerTime => TuneObjective::MaxFidelityPerTime,
            };
            let (b, peak) = optimize::tune_middle_field(&chain, &b_grid, t_min, t_max, samples, refine_tol, objective)?;
            match out.format {
                Format::Json => emit_json(&out, json!({
                    "b_best": b,
                    "t_star": peak.t_star,
                    "f_star": peak.f_star,
                    "F_star": peak.fidelity_star,
                })),
                _ => {
                    let mut em = Emitter::new(out.output.clone());
                    em.line(format!("best field B = {}", sig(b)));
                    em.line(format!("peak F = {} at t = {}", sig(peak.fidelity_star), sig(peak.t_star)));
                    em.finish()
                }
            }
        }
        Command::Compare { n_min, n_max, t_max, samples, refine_tol, out } => {
            let samples = samples.unwrap_or_else(|| optimize::default_samples(0.0, t_max));
            let rows = optimize::compare_models(n_min..=n_max, 0.0, t_max, samples, refine_tol)?;
            match out.format {
                Format::Csv => {
                    let mut em = Emitter::new(out.output.clone());
                    em.line("N,f_max_xy,f_max_heisenberg");
                    for r in &rows {
                        em.line(format!("{},{},{}", r.n_spins, sig(r.f_max_xy), sig(r.f_max_heisenberg)));
                    }
                    em.finish()
                }
                Format::Json => emit_json(&out, serde_json::to_value(&rows).expect("rows serialize")),
                Format::Pretty => {
                    let mut em = Emitter::new(out.output.clone());
                    em.line(format!("{:>4} {:>16} {:>16}", "N", "f_max XY", "f_max Heis"));
                    for r in &rows {
                        em.line(format!("{:>4} {:>16.10} {:>16.10}", r.n_spins, r.f_max_xy, r.f_max_heisenberg));
                    }
                    em.finish()
                }
            }
        }
        Command::Asymptotics { n, omega, ratio, out } => {
            let est = asymptotics::airy_peak(n, omega)?;
            let analytic = asymptotics::analytic_f(n, omega, est.t0)?;
            let ratio_value = if ratio { Some(asymptotics::xy_vs_heisenberg_ratio(n, omega)?) } else { None };
            match out.format {
                Format::Json => {
                    let mut v = serde_json::to_value(est).expect("estimate serializes");
                    v["analytic_f_at_t0"] = json!(analytic);
                    if let Some(r) = ratio_value {
                        v["xy_vs_heisenberg_ratio"] = json!(r);
                    }
                    emit_json(&out, v)
                }
                _ => {
                    let mut em = Emitter::new(out.output.clone());
                    em.line(format!("t0 = {}", sig(est.t0)));
                    em.line(format!("fitted estimate 2.6998 N^(-1/3) = {}", sig(est.f_est)));
                    em.line(format!("two-term Bessel value = {}", sig(est.bessel_value)));
                    em.line(format!("analytic f(t0) = {}", sig(analytic)));
                    if let Some(r) = ratio_value {
                        em.line(format!("XY / Heisenberg amplitude ratio at t0 = {}", sig(r)));
                    }
                    em.finish()
                }
            }
        }
    }
}

fn resolve_three_spin(spec: &SpecArgs) -> crate::Result<ChainSpec> {
    let chain = if spec.spec.is_some() { spec.resolve()? } else { ChainSpec::three_spin(spec.omega, spec.omega)? };
    if chain.n_spins != 3 || !matches!(chain.topology, Topology::Linear) {
        return Err(Error::InvalidSpec("this protocol needs a linear three-spin chain".into()));
    }
    Ok(chain)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::LeakageTooLarge { .. }
        | Error::NotHermitian(_)
        | Error::NotNormalized(_)
        | Error::NotMirrorSymmetric => 1,
        _ => 2,
    }
}

/// Parse argv, dispatch, and return the process exit code: 0 success,
/// 2 validation error, 1 numerical failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version via this path with code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
