use std::fmt::Write as _;

use fiedler_lab::conjecture::{
    check_with_fiedler, scan_rose_family, search_random_trees, DEFAULT_TIE_TOL,
};
use fiedler_lab::graph::{build_rose, random_tree};
use fiedler_lab::heat::{heat_solve_rk4, rk4_step_bound, transient_extremes, SpectralHeat};
use fiedler_lab::io::report::{
    scan_csv, to_json, GraphSummary, HeatReport, RunReport, ScanReport, SearchEnvelope,
    SpectrumReport, SCHEMA,
};
use fiedler_lab::io::{export_dot, parse_edge_list, write_edge_list, BMatrix};
use fiedler_lab::rng::SplitMix64;
use fiedler_lab::spectral::{
    algebraic_connectivity, fiedler_with, full_spectrum, sign_partition, FiedlerOptions,
    FiedlerResult, SignAnchor, SignLabel, DEFAULT_TOL,
};
use fiedler_lab::{Graph, RoseParams};

use crate::{
    CheckArgs, Command, ExportArgs, Failure, Format, GraphSource, HeatArgs, RoseArgs, ScanArgs,
    SearchArgs, SpectrumArgs,
};

/// Entries with magnitude at or below this are labeled zero in sign exports.
const SIGN_ZERO_TOL: f64 = 1e-9;

pub fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Rose(args) => rose(args),
        Command::Check(args) => check(args),
        Command::Scan(args) => scan(args),
        Command::Search(args) => search(args),
        Command::Heat(args) => heat(args),
        Command::Spectrum(args) => spectrum(args),
        Command::Export(args) => export(args),
    }
}

fn unsupported(command: &str, format: Format) -> Failure {
    Failure::Usage(format!("`{command}` does not support --format {format:?}"))
}

struct LoadedGraph {
    graph: Graph,
    label: String,
    rose: Option<RoseParams>,
}

impl LoadedGraph {
    fn anchor(&self) -> SignAnchor {
        self.rose
            .map_or(SignAnchor::FirstNonzero, |p| SignAnchor::Vertex(p.hub()))
    }
}

fn load_graph(source: &GraphSource) -> Result<LoadedGraph, Failure> {
    let rose_pair = match (source.rose, source.petals, source.stem) {
        (Some(pair), None, None) => Some(pair),
        (None, Some(p), Some(s)) => Some((p, s)),
        (None, None, None) => None,
        _ => {
            return Err(Failure::Usage(
                "give a rose either as --rose p,s or as --petals P --stem S".into(),
            ))
        }
    };
    let chosen = [
        source.input.is_some(),
        rose_pair.is_some(),
        source.n.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if chosen != 1 {
        return Err(Failure::Usage(
            "exactly one graph source is required: --input FILE, --rose p,s, or --n N [--seed S]"
                .into(),
        ));
    }
    if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(LoadedGraph {
            graph: parse_edge_list(&text)?,
            label: format!("file:{}", path.display()),
            rose: None,
        });
    }
    if let Some((p, s)) = rose_pair {
        let params = RoseParams::new(p, s).map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(LoadedGraph {
            graph: build_rose(params),
            label: format!("rose({p},{s})"),
            rose: Some(params),
        });
    }
    let n = source.n.expect("counted above");
    let seed = source.seed.unwrap_or(0);
    let graph = random_tree(n, seed).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(LoadedGraph {
        graph,
        label: format!("random_tree({n},{seed})"),
        rose: None,
    })
}

fn solve(graph: &Graph, anchor: SignAnchor, tol: Option<f64>) -> Result<FiedlerResult, Failure> {
    let opts = FiedlerOptions {
        tol: tol.unwrap_or(DEFAULT_TOL),
        anchor,
        ..FiedlerOptions::default()
    };
    Ok(fiedler_with(graph, &opts)?)
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    job: impl FnOnce() -> T + Send,
) -> Result<T, Failure> {
    let threads = match threads {
        Some(t) => Some(t),
        None => match std::env::var("FIEDLER_THREADS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| {
                Failure::Usage(format!("FIEDLER_THREADS must be a count, got `{v}`"))
            })?),
            Err(_) => None,
        },
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::Compute(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(job))
}

fn rose(args: RoseArgs) -> Result<String, Failure> {
    let params =
        RoseParams::new(args.petals, args.stem).map_err(|e| Failure::Usage(e.to_string()))?;
    let graph = build_rose(params);
    let result = solve(&graph, SignAnchor::Vertex(params.hub()), args.tol)?;
    let bmatrix = BMatrix::from_fiedler(params, &result)?;
    match args.format {
        Format::BMatrix => Ok(bmatrix.to_text()),
        Format::Json => {
            let conjecture = check_with_fiedler(&graph, &result, DEFAULT_TIE_TOL)?;
            Ok(to_json(&RunReport {
                schema: SCHEMA,
                command: "rose",
                graph: GraphSummary::of(&graph, format!("rose({},{})", args.petals, args.stem)),
                solver: (&result).into(),
                fiedler_vector: result.vector.clone(),
                conjecture: Some(conjecture),
                b_matrix: Some(bmatrix.rows.clone()),
            }))
        }
        Format::Dot => {
            let labels = sign_partition(&graph, &result.vector, SIGN_ZERO_TOL)?;
            Ok(export_dot(&graph, &labels)?)
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "rose p={} s={} (n={})",
                args.petals,
                args.stem,
                graph.n()
            );
            let _ = writeln!(out, "lambda2 = {:.10}", result.lambda2);
            if let Some(gap) = result.gap {
                let _ = writeln!(out, "gap     = {gap:.10}");
            }
            let _ = writeln!(
                out,
                "residual = {:e} after {} iterations",
                result.residual, result.iterations
            );
            out.push_str("B =\n");
            out.push_str(&bmatrix.to_text());
            Ok(out)
        }
        other => Err(unsupported("rose", other)),
    }
}

fn check(args: CheckArgs) -> Result<String, Failure> {
    let loaded = load_graph(&args.source)?;
    let result = solve(&loaded.graph, loaded.anchor(), args.tol)?;
    let report = check_with_fiedler(&loaded.graph, &result, DEFAULT_TIE_TOL)?;
    match args.format {
        Format::Json => Ok(to_json(&RunReport {
            schema: SCHEMA,
            command: "check",
            graph: GraphSummary::of(&loaded.graph, loaded.label.clone()),
            solver: (&result).into(),
            fiedler_vector: result.vector.clone(),
            conjecture: Some(report),
            b_matrix: loaded
                .rose
                .map(|p| BMatrix::from_fiedler(p, &result).map(|b| b.rows))
                .transpose()?,
        })),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "graph: {} (n={}, tree={})",
                loaded.label, report.n, report.is_tree
            );
            let _ = writeln!(out, "lambda2: {:.10}", report.lambda2);
            let _ = writeln!(out, "max set: {:?}", report.extremal_max_set);
            let _ = writeln!(out, "min set: {:?}", report.extremal_min_set);
            let _ = writeln!(
                out,
                "extremal distances: {:?}",
                report.extremal_pair_distances
            );
            let _ = writeln!(
                out,
                "diameter: {} via {:?}",
                report.diameter, report.diameter_pairs
            );
            let _ = writeln!(out, "verdict: {}", report.verdict);
            if let Some(w) = report.witness {
                let _ = writeln!(
                    out,
                    "witness: ({}, {}) at distance {}",
                    w.max_vertex, w.min_vertex, w.distance
                );
            }
            Ok(out)
        }
        other => Err(unsupported("check", other)),
    }
}

fn scan(args: ScanArgs) -> Result<String, Failure> {
    if !matches!(args.format, Format::Csv | Format::Json | Format::Text) {
        return Err(unsupported("scan", args.format));
    }
    let (petals, stem) = (args.petals.clone(), args.stem.clone());
    let cells = with_threads(args.threads, move || scan_rose_family(petals, stem))?;
    Ok(match args.format {
        Format::Json => to_json(&ScanReport::new(&cells)),
        Format::Text => {
            let mut out = String::new();
            for cell in &cells {
                match &cell.result {
                    Ok(m) => {
                        let _ = writeln!(
                            out,
                            "p={:>3} s={:>3} leaf_tip={:>9.4} lambda2={:.6} {}",
                            cell.p, cell.s, m.leaf_tip_value, m.lambda2, m.verdict
                        );
                    }
                    Err(e) => {
                        let _ = writeln!(out, "p={:>3} s={:>3} error: {e}", cell.p, cell.s);
                    }
                }
            }
            out
        }
        _ => scan_csv(&cells),
    })
}

fn search(args: SearchArgs) -> Result<String, Failure> {
    if args.n < 3 {
        return Err(Failure::Usage(format!(
            "search needs --n >= 3, got {}",
            args.n
        )));
    }
    let (n, instances, seed) = (args.n, args.instances, args.seed);
    let report = with_threads(args.threads, move || {
        search_random_trees(n, instances, seed)
    })??;
    match args.format {
        Format::Json => Ok(to_json(&SearchEnvelope::new(&report))),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "n={} instances={} seed={}",
                report.n, report.instances_checked, report.seed
            );
            let _ = writeln!(out, "violations: {}", report.violations.len());
            let _ = writeln!(out, "degenerate skipped: {}", report.degenerate_skipped);
            let _ = writeln!(out, "failures: {}", report.failures.len());
            for v in &report.violations {
                let _ = writeln!(
                    out,
                    "  #{} seed={} diameter={} extremal distances={:?}",
                    v.index, v.seed, v.report.diameter, v.report.extremal_pair_distances
                );
            }
            Ok(out)
        }
        other => Err(unsupported("search", other)),
    }
}

fn initial_state(spec: &str, n: usize, seed: u64) -> Result<Vec<f64>, Failure> {
    if let Some(v) = spec.strip_prefix("delta:") {
        let vertex: usize = v
            .parse()
            .map_err(|_| Failure::Usage(format!("invalid vertex in --u0 `{spec}`")))?;
        if vertex >= n {
            return Err(Failure::Usage(format!(
                "--u0 vertex {vertex} out of range (n={n})"
            )));
        }
        let mut u = vec![0.0; n];
        u[vertex] = 1.0;
        return Ok(u);
    }
    if spec == "uniform" {
        let mut rng = SplitMix64::new(seed);
        return Ok((0..n).map(|_| rng.next_f64()).collect());
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
        let u: Vec<f64> = text
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Usage(format!("invalid number in {path}: {e}")))?;
        if u.len() != n {
            return Err(Failure::Usage(format!(
                "{path} has {} values, graph has {n} vertices",
                u.len()
            )));
        }
        return Ok(u);
    }
    Err(Failure::Usage(format!(
        "--u0 must be delta:VERTEX, uniform or file:PATH, got `{spec}`"
    )))
}

fn heat(args: HeatArgs) -> Result<String, Failure> {
    if !matches!(args.format, Format::Json | Format::Csv | Format::Text) {
        return Err(unsupported("heat", args.format));
    }
    let loaded = load_graph(&args.source)?;
    let g = &loaded.graph;
    let u0 = initial_state(&args.u0, g.n(), args.source.seed.unwrap_or(0))?;
    let dt = args
        .dt
        .unwrap_or_else(|| rk4_step_bound(g).map_or(1e-3, |b| b.min(1e-3)));
    if !(args.t >= 0.0 && args.t.is_finite()) {
        return Err(Failure::Usage(format!(
            "--t must be finite and >= 0, got {}",
            args.t
        )));
    }
    let spectral = SpectralHeat::new(g)?.solve(&u0, args.t)?;
    let rk4 = heat_solve_rk4(g, &u0, args.t, dt)?;
    let max_abs_difference = spectral
        .u
        .iter()
        .zip(&rk4.u)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let (transient, transient_error) = match transient_extremes(g, &u0) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    match args.format {
        Format::Csv => {
            let mut out = String::from("vertex,u0,spectral,rk4\n");
            for (v, ((a, b), c)) in u0.iter().zip(&spectral.u).zip(&rk4.u).enumerate() {
                let _ = writeln!(out, "{v},{a},{b},{c}");
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "graph: {} t={} dt={dt}", loaded.label, args.t);
            let _ = writeln!(out, "max |spectral - rk4| = {max_abs_difference:e}");
            let _ = writeln!(
                out,
                "mass: initial {} spectral {} rk4 {}",
                u0.iter().sum::<f64>(),
                spectral.mass(),
                rk4.mass()
            );
            match (&transient, &transient_error) {
                (Some(r), _) => {
                    let _ = writeln!(
                        out,
                        "transient t*={:.4} hot={:?} cold={:?} matched={}",
                        r.t_star, r.hot_vertices, r.cold_vertices, r.matched
                    );
                }
                (None, Some(e)) => {
                    let _ = writeln!(out, "transient analysis unavailable: {e}");
                }
                _ => {}
            }
            Ok(out)
        }
        _ => Ok(to_json(&HeatReport {
            schema: SCHEMA,
            command: "heat",
            graph: GraphSummary::of(g, loaded.label.clone()),
            t: args.t,
            dt,
            mass_initial: u0.iter().sum(),
            mass_spectral: spectral.mass(),
            mass_rk4: rk4.mass(),
            u0,
            spectral: spectral.u,
            rk4: rk4.u,
            max_abs_difference,
            transient,
            transient_error,
        })),
    }
}

fn spectrum(args: SpectrumArgs) -> Result<String, Failure> {
    let loaded = load_graph(&args.source)?;
    let g = &loaded.graph;
    let spectrum = full_spectrum(g, args.tol.unwrap_or(DEFAULT_TOL))?;
    let lambda2 = algebraic_connectivity(g)?;
    match args.format {
        Format::Json => Ok(to_json(&SpectrumReport {
            schema: SCHEMA,
            command: "spectrum",
            graph: GraphSummary::of(g, loaded.label.clone()),
            max_residual: spectrum.max_residual(g),
            eigenvalues: spectrum.eigenvalues,
            algebraic_connectivity: lambda2,
        })),
        Format::Csv => {
            let mut out = String::from("index,eigenvalue\n");
            for (i, l) in spectrum.eigenvalues.iter().enumerate() {
                let _ = writeln!(out, "{},{l}", i + 1);
            }
            Ok(out)
        }
        Format::Text => Ok(spectrum
            .eigenvalues
            .iter()
            .map(|l| format!("{l:.12}\n"))
            .collect()),
        other => Err(unsupported("spectrum", other)),
    }
}

fn export(args: ExportArgs) -> Result<String, Failure> {
    let loaded = load_graph(&args.source)?;
    let g = &loaded.graph;
    match args.format {
        Format::Dot => {
            // graphs without a Fiedler vector (disconnected, single vertex) export gray
            let labels = match solve(g, loaded.anchor(), None) {
                Ok(r) => sign_partition(g, &r.vector, SIGN_ZERO_TOL)?,
                Err(_) => vec![SignLabel::Zero; g.n()],
            };
            Ok(export_dot(g, &labels)?)
        }
        Format::Text => Ok(write_edge_list(g)),
        other => Err(unsupported("export", other)),
    }
}
