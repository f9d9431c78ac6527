//! Command implementations. Each resolves its parameters (flag > config file
//! > default), runs the experiment, and delivers a header-stamped artifact.

use crate::config::{parse_list, Settings};
use crate::{report, Cli, CliError, Command, SurfaceCommand};
use qforge_core::compile::{compile_1q, phase_distance, sequence_matrix, CompileOutcome};
use qforge_core::gate::pauli_rotation_matrix;
use qforge_core::phasest::{
    default_time_unit, spectrum_histogram, EvolutionMode, PhaseEstimationConfig,
};
use qforge_core::seed::{child_rng, derive_seed};
use qforge_core::surface::{
    run_trials, threshold_estimate, union_bound, verify_code_conditions, SurfaceLattice,
};
use qforge_core::trotter::{
    commutator_bound, operator_error, step_size_for, trotter_step_gates, TrotterPlan,
};
use qforge_core::{Circuit, Matrix, PauliHamiltonian, StateVector64, C};
use std::fmt::Write as _;
use std::path::Path;

const DEFAULT_SEED: u64 = 0;

type Config = Vec<(String, String)>;

fn push_cfg(cfg: &mut Config, key: &str, value: impl ToString) {
    cfg.push((key.to_string(), value.to_string()));
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

/// flag > config file > default.
fn resolve<T>(
    flag: Option<T>,
    from_config: Result<Option<T>, CliError>,
    default: T,
) -> Result<T, CliError> {
    Ok(flag.or(from_config?).unwrap_or(default))
}

pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let settings = Settings::load(cli.config.as_deref())?;
    let seed = resolve(cli.seed, settings.u64_value("seed"), DEFAULT_SEED)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Run { circuit, n, shots, majority } => {
            cmd_run(circuit, *n, *shots, *majority, &settings, seed, out)
        }
        Command::Trotter { hamiltonian, t, steps, target_error } => {
            cmd_trotter(hamiltonian, *t, steps.as_deref(), *target_error, &settings, seed, out)
        }
        Command::Spectrum { hamiltonian, state, m, t_unit, shots, mode, trotter_steps } => {
            cmd_spectrum(
                hamiltonian,
                state.as_deref(),
                *m,
                t_unit.as_deref(),
                *shots,
                mode.as_deref(),
                *trotter_steps,
                &settings,
                seed,
                out,
            )
        }
        Command::Surface { sub } => cmd_surface(sub, &settings, seed, out),
        Command::Compile { target, eps, max_depth } => {
            cmd_compile(target, *eps, *max_depth, &settings, seed, out)
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

// ---------------------------------------------------------------- run

fn infer_width(text: &str) -> usize {
    let mut max_q = 0usize;
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("");
        for tok in body.split_whitespace().skip(1) {
            if let Ok(q) = tok.parse::<usize>() {
                max_q = max_q.max(q);
            }
        }
    }
    max_q + 1
}

fn bitstring(index: usize, n: usize) -> String {
    // Qubit n−1 leftmost, matching `StateVector::basis_state` input order.
    (0..n).rev().map(|q| if index >> q & 1 == 1 { '1' } else { '0' }).collect()
}

fn cmd_run(
    circuit_path: &Path,
    n: Option<usize>,
    shots: Option<usize>,
    majority: bool,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let text = read_file(circuit_path)?;
    let n = resolve(n, settings.usize_value("n"), infer_width(&text))?;
    let shots = resolve(shots, settings.usize_value("shots"), 10_000)?;
    if shots < 1 {
        return Err(CliError::precondition("shots must be >= 1"));
    }
    let circuit = Circuit::<f64>::parse(&text, n)?;
    let final_state = circuit.execute(&StateVector64::zeros(n)?)?;
    let mut counts = vec![0u64; 1 << n];
    for shot in 0..shots {
        let mut rng = child_rng(seed, shot as u64);
        counts[final_state.sample_index(&mut rng)] += 1;
    }
    let mut cfg = Config::new();
    push_cfg(&mut cfg, "circuit", circuit_path.display());
    push_cfg(&mut cfg, "n", n);
    push_cfg(&mut cfg, "shots", shots);
    push_cfg(&mut cfg, "majority", majority);
    let mut body = String::new();
    if majority {
        let best = counts
            .iter()
            .enumerate()
            .max_by_key(|&(i, &c)| (c, std::cmp::Reverse(i)))
            .map(|(i, &c)| (i, c))
            .unwrap();
        let _ = writeln!(
            body,
            "# majority: {} ({}/{shots})",
            bitstring(best.0, n),
            best.1
        );
    }
    body.push_str("outcome,count,frequency\n");
    for (i, &c) in counts.iter().enumerate() {
        if c > 0 {
            let _ = writeln!(
                body,
                "{},{c},{}",
                bitstring(i, n),
                c as f64 / shots as f64
            );
        }
    }
    emit(out, &cfg, seed, &body)
}

// ---------------------------------------------------------------- trotter

fn cmd_trotter(
    ham_path: &Path,
    t: Option<f64>,
    steps: Option<&str>,
    target_error: Option<f64>,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let ham = PauliHamiltonian::<f64>::parse(&read_file(ham_path)?)?;
    let t = resolve(t, settings.f64_value("t"), 1.0)?;
    if t <= 0.0 {
        return Err(CliError::precondition("t must be positive"));
    }
    let steps_cfg = settings.string_value("steps")?;
    let steps_spec = steps.map(str::to_string).or(steps_cfg);
    let target_error = match target_error {
        Some(v) => Some(v),
        None => settings.f64_value("target_error")?,
    };
    let plans: Vec<TrotterPlan<f64>> = match (&steps_spec, target_error) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage("--steps and --target-error are mutually exclusive"))
        }
        (None, Some(delta)) => vec![step_size_for(delta, &ham, t, 1.0)?],
        (spec, None) => {
            let list: Vec<usize> = match spec {
                Some(s) => parse_list(s, "steps")?,
                // Default ladder: Δ ≈ 0.1, 0.05, 0.025.
                None => [0.1f64, 0.05, 0.025]
                    .iter()
                    .map(|d| ((t / d).round() as usize).max(1))
                    .collect(),
            };
            list.into_iter()
                .map(|s| TrotterPlan::new(t, s, ham.num_terms()))
                .collect::<Result<_, _>>()?
        }
    };
    let bound = commutator_bound(&ham);
    let mut cfg = Config::new();
    push_cfg(&mut cfg, "hamiltonian", ham_path.display());
    push_cfg(&mut cfg, "t", t);
    push_cfg(
        &mut cfg,
        "steps",
        plans.iter().map(|p| p.steps.to_string()).collect::<Vec<_>>().join(","),
    );
    if let Some(delta) = target_error {
        push_cfg(&mut cfg, "target_error", delta);
    }
    let mut body = String::new();
    body.push_str("delta,steps,gate_count,operator_error,commutator_bound_prediction\n");
    for plan in &plans {
        let err = operator_error(&ham, plan)?;
        let gate_count = trotter_step_gates(&ham, plan.delta, &plan.ordering)?.len() * plan.steps;
        // steps · (bound · Δ²) = bound · Δ · t.
        let prediction = bound * plan.delta * plan.delta * plan.steps as f64;
        let _ = writeln!(body, "{},{},{gate_count},{err},{prediction}", plan.delta, plan.steps);
    }
    emit(out, &cfg, seed, &body)
}

// ---------------------------------------------------------------- spectrum

fn parse_state(spec: &str, n: usize) -> Result<StateVector64, CliError> {
    if spec.eq_ignore_ascii_case("plus") {
        let dim = 1usize << n;
        let amp = C::new(1.0 / (dim as f64).sqrt(), 0.0);
        return Ok(StateVector64::from_amplitudes(n, vec![amp; dim])?);
    }
    if spec.len() == n && spec.bytes().all(|b| b == b'0' || b == b'1') {
        return Ok(StateVector64::basis_state(n, spec)?);
    }
    Err(CliError::usage(format!(
        "state spec {spec:?} is neither \"plus\" nor a {n}-bit string"
    )))
}

#[allow(clippy::too_many_arguments)]
fn cmd_spectrum(
    ham_path: &Path,
    state: Option<&str>,
    m: Option<usize>,
    t_unit: Option<&str>,
    shots: Option<usize>,
    mode: Option<&str>,
    trotter_steps: Option<usize>,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let ham = PauliHamiltonian::<f64>::parse(&read_file(ham_path)?)?;
    let state_cfg = settings.string_value("state")?;
    let state_spec = state.map(str::to_string).or(state_cfg).unwrap_or_else(|| "plus".into());
    let psi = parse_state(&state_spec, ham.n_qubits())?;
    let m = resolve(m, settings.usize_value("m"), 4)?;
    let shots = resolve(shots, settings.usize_value("shots"), 10_000)?;
    let t_cfg = settings.string_value("t_unit")?;
    let t_spec = t_unit.map(str::to_string).or(t_cfg).unwrap_or_else(|| "auto".into());
    let t = if t_spec.eq_ignore_ascii_case("auto") {
        default_time_unit(&ham)
    } else {
        t_spec
            .parse::<f64>()
            .map_err(|_| CliError::usage(format!("invalid t-unit {t_spec:?}")))?
    };
    let mode_cfg = settings.string_value("mode")?;
    let mode_spec = mode.map(str::to_string).or(mode_cfg).unwrap_or_else(|| "exact".into());
    let trotter_steps = resolve(trotter_steps, settings.usize_value("trotter_steps"), 64)?;
    let evolution = match mode_spec.as_str() {
        "exact" => EvolutionMode::Exact,
        "trotter" => EvolutionMode::Trotter(TrotterPlan::new(t, trotter_steps, ham.num_terms())?),
        other => return Err(CliError::usage(format!("mode must be exact|trotter, got {other:?}"))),
    };
    let pe_cfg = PhaseEstimationConfig::new(m, shots, t)?;
    let hist = spectrum_histogram(&ham, &psi, &pe_cfg, &evolution, seed)?;
    let mut cfg = Config::new();
    push_cfg(&mut cfg, "hamiltonian", ham_path.display());
    push_cfg(&mut cfg, "state", &state_spec);
    push_cfg(&mut cfg, "m", m);
    push_cfg(&mut cfg, "t_unit", t);
    push_cfg(&mut cfg, "shots", shots);
    push_cfg(&mut cfg, "mode", &mode_spec);
    if mode_spec == "trotter" {
        push_cfg(&mut cfg, "trotter_steps", trotter_steps);
    }
    let mut body = String::new();
    for w in hist.warnings() {
        let _ = writeln!(body, "# warning: {w}");
    }
    for p in hist.peaks(0.05) {
        let _ = writeln!(
            body,
            "# peak: bin={} phase={} energy={} weight={}",
            p.k,
            p.phase,
            p.energy.map_or("n/a".into(), |e| e.to_string()),
            p.weight
        );
    }
    body.push_str("bin,phase,energy,count,frequency\n");
    let bins = 1usize << m;
    for k in 0..bins {
        let phase = k as f64 / bins as f64;
        let wrapped = if phase > 0.5 { phase - 1.0 } else { phase };
        let energy = 2.0 * std::f64::consts::PI * wrapped / t;
        let _ = writeln!(
            body,
            "{k},{phase},{energy},{},{}",
            hist.counts()[k],
            hist.frequency(k)
        );
    }
    emit(out, &cfg, seed, &body)
}

// ---------------------------------------------------------------- surface

fn cmd_surface(
    sub: &SurfaceCommand,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let resolve_ds = |flag: Option<&String>, default: &str| -> Result<Vec<usize>, CliError> {
        let spec = match flag {
            Some(s) => s.clone(),
            None => settings.string_value("d")?.unwrap_or_else(|| default.to_string()),
        };
        parse_list(&spec, "distance")
    };
    let resolve_eps = |flag: Option<&String>, default: &str| -> Result<Vec<f64>, CliError> {
        let spec = match flag {
            Some(s) => s.clone(),
            None => settings.string_value("eps")?.unwrap_or_else(|| default.to_string()),
        };
        parse_list(&spec, "eps")
    };
    match sub {
        SurfaceCommand::Trials { d, eps, trials } => {
            let ds = resolve_ds(d.as_ref(), "3")?;
            let eps = resolve_eps(eps.as_ref(), "0.05")?;
            let trials = resolve(*trials, settings.usize_value("trials"), 20_000)?;
            let mut cfg = Config::new();
            push_cfg(&mut cfg, "subcommand", "trials");
            push_cfg(&mut cfg, "d", format_list(&ds));
            push_cfg(&mut cfg, "eps", format_list(&eps));
            push_cfg(&mut cfg, "trials", trials);
            let mut body = String::new();
            body.push_str("d,eps,trials,failures,p_logical,ci_low,ci_high,point_seed\n");
            for (di, &d) in ds.iter().enumerate() {
                let lat = SurfaceLattice::build(d)?;
                for (ei, &e) in eps.iter().enumerate() {
                    let point_seed = derive_seed(seed, (di * eps.len() + ei) as u64);
                    let s = run_trials(&lat, e, trials, point_seed)?;
                    let _ = writeln!(
                        body,
                        "{d},{e},{trials},{},{},{},{},{point_seed}",
                        s.failures, s.p_logical, s.ci_low, s.ci_high
                    );
                }
            }
            emit(out, &cfg, seed, &body)
        }
        SurfaceCommand::Threshold { d, eps, trials } => {
            let ds = resolve_ds(d.as_ref(), "3,5,7")?;
            let eps = resolve_eps(eps.as_ref(), "0.08,0.09,0.10,0.11,0.12")?;
            let trials = resolve(*trials, settings.usize_value("trials"), 20_000)?;
            let mut cfg = Config::new();
            push_cfg(&mut cfg, "subcommand", "threshold");
            push_cfg(&mut cfg, "d", format_list(&ds));
            push_cfg(&mut cfg, "eps", format_list(&eps));
            push_cfg(&mut cfg, "trials", trials);
            let est = threshold_estimate(&ds, &eps, trials, seed)?;
            let mut body = String::new();
            let _ = writeln!(
                body,
                "# threshold: epsilon0={} uncertainty={}",
                est.epsilon0, est.uncertainty
            );
            for c in &est.crossings {
                let _ = writeln!(
                    body,
                    "# crossing: d={}/{} epsilon={}",
                    c.d_low, c.d_high, c.epsilon
                );
            }
            body.push_str("d,eps,trials,failures,p_logical,ci_low,ci_high\n");
            for s in &est.curves {
                let _ = writeln!(
                    body,
                    "{},{},{},{},{},{},{}",
                    s.d, s.epsilon, s.trials, s.failures, s.p_logical, s.ci_low, s.ci_high
                );
            }
            emit(out, &cfg, seed, &body)
        }
        SurfaceCommand::Bound { d, eps } => {
            let ds = resolve_ds(d.as_ref(), "3,5")?;
            let eps = resolve_eps(eps.as_ref(), "0.01,0.02")?;
            let mut cfg = Config::new();
            push_cfg(&mut cfg, "subcommand", "bound");
            push_cfg(&mut cfg, "d", format_list(&ds));
            push_cfg(&mut cfg, "eps", format_list(&eps));
            let mut body = String::new();
            body.push_str("d,eps,union_bound\n");
            for &d in &ds {
                SurfaceLattice::build(d)?; // validate the distance
                for &e in &eps {
                    let _ = writeln!(body, "{d},{e},{}", union_bound(d, e));
                }
            }
            emit(out, &cfg, seed, &body)
        }
        SurfaceCommand::Verify { d, max_weight } => {
            let d = resolve(*d, settings.usize_value("d_single"), 3)?;
            let max_weight = resolve(*max_weight, settings.usize_value("max_weight"), 1)?;
            let lat = SurfaceLattice::build(d)?;
            let report = verify_code_conditions(&lat, max_weight)?;
            let mut cfg = Config::new();
            push_cfg(&mut cfg, "subcommand", "verify");
            push_cfg(&mut cfg, "d", d);
            push_cfg(&mut cfg, "max_weight", max_weight);
            let mut body = String::new();
            let _ = writeln!(body, "pairs_checked: {}", report.pairs_checked);
            match &report.first_violation {
                None => {
                    let _ = writeln!(
                        body,
                        "result: PASS (all weight-{max_weight} error pairs satisfy the conditions)"
                    );
                }
                Some(v) => {
                    let _ = writeln!(body, "result: FAIL");
                    let _ = writeln!(
                        body,
                        "violation: condition={} e_a=[{}] e_b=[{}] magnitude={}",
                        v.condition, v.e_a, v.e_b, v.magnitude
                    );
                }
            }
            emit(out, &cfg, seed, &body)
        }
    }
}

fn format_list<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

// ---------------------------------------------------------------- compile

fn parse_target(spec: &str) -> Result<Matrix<f64>, CliError> {
    use qforge_core::gate::{matrix_1q, GateKind};
    use qforge_core::Pauli;
    match spec.to_ascii_uppercase().as_str() {
        "H" => return Ok(matrix_1q::<f64>(&GateKind::H)),
        "T" => return Ok(matrix_1q::<f64>(&GateKind::T)),
        "S" => return Ok(matrix_1q::<f64>(&GateKind::S)),
        "X" => return Ok(matrix_1q::<f64>(&GateKind::X)),
        "Z" => return Ok(matrix_1q::<f64>(&GateKind::Z)),
        _ => {}
    }
    if let Some((axis, angle)) = spec.split_once('=') {
        let pauli = match axis.to_ascii_lowercase().as_str() {
            "rx" => Some(Pauli::X),
            "ry" => Some(Pauli::Y),
            "rz" => Some(Pauli::Z),
            _ => None,
        };
        if let Some(p) = pauli {
            let angle: f64 = angle
                .parse()
                .map_err(|_| CliError::usage(format!("invalid rotation angle {angle:?}")))?;
            return Ok(pauli_rotation_matrix(&[p], angle));
        }
    }
    let nums: Vec<f64> = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            CliError::usage(format!(
                "target {spec:?}: expected a named gate, r[xyz]=<angle>, or 8 floats"
            ))
        })?;
    if nums.len() != 8 {
        return Err(CliError::usage(format!(
            "matrix target needs 8 floats (re,im ×4 row-major), got {}",
            nums.len()
        )));
    }
    let c = |i: usize| C::new(nums[2 * i], nums[2 * i + 1]);
    Ok(Matrix::from_rows(&[&[c(0), c(1)], &[c(2), c(3)]]))
}

fn cmd_compile(
    target: &str,
    eps: Option<f64>,
    max_depth: Option<usize>,
    settings: &Settings,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let eps = resolve(eps, settings.f64_value("eps"), 1e-6)?;
    let max_depth = resolve(max_depth, settings.usize_value("max_depth"), 16)?;
    let matrix = parse_target(target)?;
    let mut cfg = Config::new();
    push_cfg(&mut cfg, "target", target);
    push_cfg(&mut cfg, "eps", eps);
    push_cfg(&mut cfg, "max_depth", max_depth);
    match compile_1q(&matrix, eps, max_depth)? {
        CompileOutcome::Found { sequence, distance } => {
            let word = format_sequence(&sequence);
            debug_assert!(
                (phase_distance(&matrix, &sequence_matrix(&sequence)) - distance).abs() < 1e-9
            );
            let body = format!("sequence: {word}\nlength: {}\ndistance: {distance}\n", sequence.len());
            emit(out, &cfg, seed, &body)
        }
        CompileOutcome::NotFound { best_distance, best_sequence } => {
            let body = format!(
                "result: not found within depth {max_depth}\nbest_sequence: {}\nbest_distance: {best_distance}\n",
                format_sequence(&best_sequence)
            );
            emit(out, &cfg, seed, &body)?;
            Err(CliError::soft(format!(
                "no {{H, T}} word of length <= {max_depth} within {eps} (best {best_distance})"
            )))
        }
    }
}

fn format_sequence(seq: &[qforge_core::AlphabetGate]) -> String {
    if seq.is_empty() {
        return "(identity)".into();
    }
    seq.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------- shared

fn emit(out: Option<&Path>, cfg: &Config, seed: u64, body: &str) -> Result<(), CliError> {
    let mut content = report::header(&command_line(), cfg, seed);
    content.push_str(body);
    report::deliver(out, &content)?;
    Ok(())
}
