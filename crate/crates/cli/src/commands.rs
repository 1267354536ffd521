//! Subcommand implementations.

use crate::csvio::{fmt6, write_point_data, CsvWriter};
use clap::{Args, Subcommand, ValueEnum};
use sdos::analysis::{
    anchor_l, classify_regime, rho_with_pair_simplified, solve_minmax_numeric,
    solve_minmax_theorem, symbol_g, MinMaxSolution, NumericOptions, ZeroMode,
};
use sdos::ddm::Coupling;
use sdos::fem::postprocess_darcy_velocity;
use sdos::params::{
    DiscretizationParams, PhysicalParams, Provenance, RobinPair, TestCase, TimeFactorConvention,
};
use sdos::timeloop::{run_error_equation, run_time_loop, Scenario, ScenarioKind, TimeLoopConfig};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OPTIMIZER: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the min-max problem for the optimized Robin coefficients.
    Optimize(OptimizeArgs),
    /// Run a time-dependent experiment and record per-step iterations.
    Run(RunArgs),
    /// Sweep the zero location s, running the coupled solve at each point.
    #[command(name = "sweep-s")]
    SweepS(SweepArgs),
    /// Write a plain-text mesh dump.
    #[command(name = "dump-mesh")]
    DumpMesh(DumpArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    AsPrinted,
    Effective,
}

impl From<ConventionArg> for TimeFactorConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::AsPrinted => TimeFactorConvention::AsPrinted,
            ConventionArg::Effective => TimeFactorConvention::EffectiveThetaDt,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScenarioArg {
    Periodic,
    DirichletStrip,
    Manufactured,
    Lid,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CouplingArg {
    Stationary,
    Jacobi,
    Gmres,
    Monolithic,
}

impl From<CouplingArg> for Coupling {
    fn from(c: CouplingArg) -> Self {
        match c {
            CouplingArg::Stationary => Coupling::Stationary,
            CouplingArg::Jacobi => Coupling::Jacobi,
            CouplingArg::Gmres => Coupling::Gmres,
            CouplingArg::Monolithic => Coupling::Monolithic,
        }
    }
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    /// Reference parameter set.
    #[arg(long, value_parser = parse_test_case)]
    test_case: Option<TestCase>,
    /// Explicit dimensionless parameters (all five required together).
    #[arg(long)]
    mu_f: Option<f64>,
    #[arg(long)]
    eta1: Option<f64>,
    #[arg(long)]
    eta2: Option<f64>,
    #[arg(long)]
    sp: Option<f64>,
    #[arg(long)]
    xi_f: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long)]
    dt: f64,
    /// Interface mesh size.
    #[arg(long)]
    h: f64,
    /// Interface length.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Band-edge multiplier c in k_max = c pi / h. The quadratic trace
    /// spacing of this discretization corresponds to 2.
    #[arg(long, default_value_t = 2.0)]
    band_multiplier: f64,
    /// Include the zero frequency of a laterally periodic strip (switches
    /// to the Nelder-Mead solver).
    #[arg(long, default_value_t = false)]
    include_zero: bool,
    /// Porous depth for the bounded zero-frequency symbol.
    #[arg(long, default_value_t = 1.0)]
    darcy_depth: f64,
    #[arg(long, value_enum, default_value_t = ConventionArg::Effective)]
    convention: ConventionArg,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_test_case(s: &str) -> Result<TestCase, String> {
    TestCase::parse(s).ok_or_else(|| format!("unknown test case `{s}` (expected A, B, C or D)"))
}

fn resolve_phys(
    tc: Option<TestCase>,
    mu_f: Option<f64>,
    eta1: Option<f64>,
    eta2: Option<f64>,
    sp: Option<f64>,
    xi_f: Option<f64>,
) -> Result<PhysicalParams, String> {
    match (tc, mu_f) {
        (Some(tc), None) => Ok(tc.params()),
        (None, Some(mu)) => {
            let (Some(e1), Some(e2), Some(sp), Some(xi)) = (eta1, eta2, sp, xi_f) else {
                return Err("explicit parameters require --eta1 --eta2 --sp --xi-f".into());
            };
            PhysicalParams::new(mu, e1, e2, sp, xi).map_err(|e| e.to_string())
        }
        (Some(tc), Some(mu)) => {
            // Start from the preset and override viscosity.
            let p = tc.params();
            PhysicalParams::new(
                mu,
                eta1.unwrap_or(p.eta1),
                eta2.unwrap_or(p.eta2),
                sp.unwrap_or(p.s_p),
                xi_f.unwrap_or(p.xi_f),
            )
            .map_err(|e| e.to_string())
        }
        (None, None) => Err("either --test-case or explicit parameters are required".into()),
    }
}

pub fn cmd_optimize(a: OptimizeArgs) -> Result<i32, String> {
    let phys = resolve_phys(a.test_case, a.mu_f, a.eta1, a.eta2, a.sp, a.xi_f)?;
    let disc = DiscretizationParams::new(a.theta, a.dt, a.h, a.gamma, a.convention.into())
        .map_err(|e| e.to_string())?;
    let mut band = disc.band(a.band_multiplier).map_err(|e| e.to_string())?;
    band.include_zero = a.include_zero;
    let regime = classify_regime(&phys, &disc, &band);

    let solution: MinMaxSolution = if a.include_zero {
        let opts = NumericOptions {
            zero_mode: ZeroMode::BoundedDepth(a.darcy_depth),
            ..Default::default()
        };
        solve_minmax_numeric(&phys, &disc, &band, &opts).map_err(|e| e.to_string())?
    } else {
        solve_minmax_theorem(&phys, &disc, &band).map_err(|e| e.to_string())?
    };

    let mut csv = CsvWriter::create(a.out.as_deref()).map_err(|e| e.to_string())?;
    csv.comment(&format!(
        "sdos optimize: test_case={} mu_f={} eta1={} eta2={} sp={} xi_f={} theta={} dt={} h={} \
         gamma={} band_multiplier={} include_zero={} darcy_depth={} convention={}",
        a.test_case.map(|t| t.label()).unwrap_or("-"),
        fmt6(phys.mu_f),
        fmt6(phys.eta1),
        fmt6(phys.eta2),
        fmt6(phys.s_p),
        if phys.xi_f.is_infinite() {
            "inf".into()
        } else {
            fmt6(phys.xi_f)
        },
        a.theta,
        a.dt,
        a.h,
        a.gamma,
        a.band_multiplier,
        a.include_zero,
        a.darcy_depth,
        disc.convention.label(),
    ))
    .map_err(|e| e.to_string())?;
    csv.header(&["alpha_f", "alpha_p", "s_star", "case", "rho_max", "regime"])
        .map_err(|e| e.to_string())?;
    csv.row(&[
        fmt6(solution.robin.alpha_f),
        fmt6(solution.robin.alpha_p),
        fmt6(solution.s_star),
        solution.case_label.label().to_string(),
        fmt6(solution.rho_max),
        regime.label().to_string(),
    ])
    .map_err(|e| e.to_string())?;
    csv.flush().map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    scenario: ScenarioArg,
    #[arg(long, value_parser = parse_test_case)]
    test_case: TestCase,
    /// Mesh refinement level (1-based; halves h per level, or the graded
    /// lid levels).
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// Explicit interface mesh size (overrides --level; the lid scenario
    /// uses its graded levels instead).
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    dt: f64,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long, value_enum, default_value_t = CouplingArg::Gmres)]
    coupling: CouplingArg,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 400)]
    max_iter: usize,
    /// Manual Robin coefficients (both required to override the optimizer).
    #[arg(long)]
    alpha_f: Option<f64>,
    #[arg(long)]
    alpha_p: Option<f64>,
    /// Seed of the random initial interface guess (error-equation runs).
    #[arg(long, default_value_t = 0x5D05)]
    seed: u64,
    /// Comma-separated snapshot times for plot data.
    #[arg(long, value_delimiter = ',')]
    snapshots: Vec<f64>,
    /// Directory for plot-data files (pressure and velocity samples).
    #[arg(long)]
    plot_dir: Option<PathBuf>,
    /// Per-step CSV output (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// One-row summary CSV in the reference-table schema
    /// (test, h, dt, alpha_f, alpha_p, iter_t1, avg_iter_tn).
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Include wall-clock columns (off by default so identical
    /// configurations produce byte-identical files).
    #[arg(long, default_value_t = false)]
    timings: bool,
}

fn build_scenario(
    kind: ScenarioArg,
    tc: TestCase,
    level: usize,
    h: Option<f64>,
    t_final: f64,
) -> Result<Scenario, String> {
    let level_h = |base: f64| h.unwrap_or(base * 0.5f64.powi(level as i32 - 1));
    match kind {
        ScenarioArg::Periodic => {
            Scenario::periodic_error_equation(tc, level_h(0.1), t_final).map_err(|e| e.to_string())
        }
        ScenarioArg::DirichletStrip => {
            Scenario::dirichlet_error_equation(tc, level_h(0.1), t_final).map_err(|e| e.to_string())
        }
        ScenarioArg::Manufactured => {
            Scenario::manufactured(tc, level_h(0.1), t_final).map_err(|e| e.to_string())
        }
        ScenarioArg::Lid => Scenario::lid_filtration(tc, level, t_final).map_err(|e| e.to_string()),
    }
}

pub fn cmd_run(a: RunArgs) -> Result<i32, String> {
    let theta = a.theta.unwrap_or(match a.scenario {
        ScenarioArg::Manufactured => 1.0,
        _ => 0.5,
    });
    let t_final = a.t_final.unwrap_or(match a.scenario {
        ScenarioArg::Manufactured => 0.5,
        ScenarioArg::Lid => 1.0,
        _ => a.dt,
    });
    let scenario = build_scenario(a.scenario, a.test_case, a.level, a.h, t_final)?;
    let disc = scenario.disc(theta, a.dt).map_err(|e| e.to_string())?;
    let robin = match (a.alpha_f, a.alpha_p) {
        (Some(f), Some(p)) => {
            RobinPair::new(f, p, Provenance::Manual).map_err(|e| e.to_string())?
        }
        (None, None) => {
            scenario
                .optimal_robin(&disc)
                .map_err(|e| e.to_string())?
                .robin
        }
        _ => return Err("--alpha-f and --alpha-p must be given together".into()),
    };

    let mut csv = CsvWriter::create(a.out.as_deref()).map_err(|e| e.to_string())?;
    csv.comment(&format!(
        "sdos run: scenario={:?} test_case={} level={} h={} theta={theta} dt={} t_final={} \
         coupling={} tol={} max_iter={} alpha_f={} alpha_p={} seed={} convention={}",
        a.scenario,
        a.test_case.label(),
        a.level,
        fmt6(scenario.h_analysis),
        a.dt,
        t_final,
        Coupling::from(a.coupling).label(),
        fmt6(a.tol),
        a.max_iter,
        fmt6(robin.alpha_f),
        fmt6(robin.alpha_p),
        a.seed,
        scenario.convention.label(),
    ))
    .map_err(|e| e.to_string())?;

    // Error-equation scenarios iterate a single stationary solve.
    if scenario.kind == ScenarioKind::PeriodicErrorEquation
        && matches!(a.coupling, CouplingArg::Stationary | CouplingArg::Jacobi)
    {
        let (_, rep) = run_error_equation(
            &scenario,
            &robin,
            theta,
            a.dt,
            a.seed,
            a.tol,
            a.max_iter,
            matches!(a.coupling, CouplingArg::Jacobi),
        )
        .map_err(|e| e.to_string())?;
        let mut header = vec!["sweep", "relative_error"];
        if a.timings {
            header.push("wall_s");
        }
        csv.header(&header).map_err(|e| e.to_string())?;
        for (i, r) in rep.residual_history.iter().enumerate() {
            let mut row = vec![(i + 1).to_string(), fmt6(*r)];
            if a.timings {
                row.push(fmt6(rep.wall_time));
            }
            csv.row(&row).map_err(|e| e.to_string())?;
        }
        csv.comment(&format!(
            "summary: iterations={} converged={}",
            rep.iterations, rep.converged
        ))
        .map_err(|e| e.to_string())?;
        csv.flush().map_err(|e| e.to_string())?;
        return Ok(if rep.converged {
            EXIT_OK
        } else {
            EXIT_NONCONVERGENCE
        });
    }

    let mut config = TimeLoopConfig::new(theta, a.dt, a.coupling.into());
    config.tol = a.tol;
    config.max_iter = a.max_iter;
    config.snapshot_times = a.snapshots.clone();
    let out = run_time_loop(&scenario, &robin, &config).map_err(|e| e.to_string())?;

    let mut header = vec!["step", "time", "iterations", "final_residual"];
    if a.timings {
        header.push("wall_s");
    }
    csv.header(&header).map_err(|e| e.to_string())?;
    for r in &out.records {
        let mut row = vec![
            r.step.to_string(),
            fmt6(r.time),
            r.iterations.to_string(),
            fmt6(r.final_residual),
        ];
        if a.timings {
            row.push(fmt6(r.wall_time));
        }
        csv.row(&row).map_err(|e| e.to_string())?;
    }
    // Reference-table summary: test, mesh/dt, coefficients, iter t1 and the
    // rounded average over the later steps.
    let iter_t1 = out.records.first().map(|r| r.iterations).unwrap_or(0);
    let avg_tn = if out.records.len() > 1 {
        out.records[1..]
            .iter()
            .map(|r| r.iterations as f64)
            .sum::<f64>()
            / (out.records.len() - 1) as f64
    } else {
        iter_t1 as f64
    };
    csv.comment(&format!(
        "summary: test={} h={} dt={} alpha_f={} alpha_p={} iter_t1={} avg_iter_tn={:.1}",
        a.test_case.label(),
        fmt6(scenario.h_analysis),
        a.dt,
        fmt6(robin.alpha_f),
        fmt6(robin.alpha_p),
        iter_t1,
        avg_tn,
    ))
    .map_err(|e| e.to_string())?;
    if let Some(path) = &a.summary {
        let mut sum = CsvWriter::create(Some(path)).map_err(|e| e.to_string())?;
        sum.comment(&format!(
            "sdos run summary: scenario={:?} coupling={}",
            a.scenario,
            Coupling::from(a.coupling).label()
        ))
        .map_err(|e| e.to_string())?;
        sum.header(&["test", "h", "dt", "alpha_f", "alpha_p", "iter_t1", "avg_iter_tn"])
            .map_err(|e| e.to_string())?;
        sum.row(&[
            a.test_case.label().to_string(),
            fmt6(scenario.h_analysis),
            fmt6(a.dt),
            fmt6(robin.alpha_f),
            fmt6(robin.alpha_p),
            iter_t1.to_string(),
            format!("{avg_tn:.1}"),
        ])
        .map_err(|e| e.to_string())?;
        sum.flush().map_err(|e| e.to_string())?;
    }
    if let Some(err) = &out.errors {
        csv.comment(&format!(
            "errors: l2_u={} l2_pf={} l2_pp={} linf_u={}",
            fmt6(err.final_l2_u),
            fmt6(err.final_l2_pf),
            fmt6(err.final_l2_pp),
            fmt6(err.linf_l2_u),
        ))
        .map_err(|e| e.to_string())?;
    }
    csv.flush().map_err(|e| e.to_string())?;

    if let Some(dir) = &a.plot_dir {
        write_snapshots(dir, &scenario, &out).map_err(|e| e.to_string())?;
    }
    Ok(if out.failed_step.is_some() {
        EXIT_NONCONVERGENCE
    } else {
        EXIT_OK
    })
}

fn write_snapshots(
    dir: &std::path::Path,
    scenario: &Scenario,
    out: &sdos::timeloop::RunOutput,
) -> std::io::Result<()> {
    use sdos::fem::DofMap;
    let dofs = DofMap::build(&scenario.mesh, &scenario.phys);
    for (t, u_state, p_state) in &out.snapshots {
        let tag = format!("{t:.4}").replace('.', "p");
        // Fluid pressure on the bilinear lattice.
        write_point_data(
            &dir.join(format!("pf_t{tag}.dat")),
            &format!("fluid pressure at t={t}"),
            (0..dofs.n_q1f).map(|n| {
                let [x, y] = dofs.q1f_coord[n];
                (x, y, vec![u_state[dofs.p_dof(n)]])
            }),
        )?;
        // Darcy pressure on the biquadratic lattice.
        write_point_data(
            &dir.join(format!("pp_t{tag}.dat")),
            &format!("porous pressure at t={t}"),
            (0..dofs.n_q2p).map(|n| {
                let [x, y] = dofs.q2p_coord[n];
                (x, y, vec![p_state[n]])
            }),
        )?;
        // Fluid velocity samples (streamline seed data).
        write_point_data(
            &dir.join(format!("uf_t{tag}.dat")),
            &format!("fluid velocity at t={t}"),
            (0..dofs.n_q2f).map(|n| {
                let [x, y] = dofs.q2f_coord[n];
                (
                    x,
                    y,
                    vec![u_state[dofs.u_dof(n, 0)], u_state[dofs.u_dof(n, 1)]],
                )
            }),
        )?;
        // Postprocessed Darcy velocity at cell centers.
        let up = postprocess_darcy_velocity(&dofs, p_state, scenario.phys.eta1, scenario.phys.eta2);
        write_point_data(
            &dir.join(format!("up_t{tag}.dat")),
            &format!("porous velocity at t={t}"),
            up.into_iter().map(|(c, v)| (c[0], c[1], vec![v[0], v[1]])),
        )?;
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_test_case)]
    test_case: TestCase,
    #[arg(long)]
    h: f64,
    #[arg(long)]
    dt: f64,
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
    /// Number of log-spaced grid points.
    #[arg(long, default_value_t = 15)]
    points: usize,
    /// Grid bounds (defaults to the frequency band).
    #[arg(long)]
    s_min: Option<f64>,
    #[arg(long)]
    s_max: Option<f64>,
    #[arg(long, value_enum, default_value_t = ScenarioArg::Periodic)]
    scenario: ScenarioArg,
    #[arg(long, value_enum, default_value_t = CouplingArg::Gmres)]
    coupling: CouplingArg,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 400)]
    max_iter: usize,
    #[arg(long, default_value_t = 0x5D05)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn cmd_sweep(a: SweepArgs) -> Result<i32, String> {
    if a.points < 3 {
        return Err("sweep needs at least 3 grid points".into());
    }
    let scenario = build_scenario(a.scenario, a.test_case, 1, Some(a.h), a.dt)?;
    let disc = scenario.disc(a.theta, a.dt).map_err(|e| e.to_string())?;
    let band = disc
        .band(scenario.band_multiplier)
        .map_err(|e| e.to_string())?;
    let l = anchor_l(&scenario.phys, &disc);
    let theorem = solve_minmax_theorem(&scenario.phys, &disc, &band).map_err(|e| e.to_string())?;

    let (lo, hi) = (a.s_min.unwrap_or(band.k_min), a.s_max.unwrap_or(band.k_max));
    if !(lo > 0.0 && hi > lo) {
        return Err(format!("invalid sweep range [{lo}, {hi}]"));
    }
    let mut grid: Vec<(f64, bool)> = (0..a.points)
        .map(|i| {
            (
                (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (a.points - 1) as f64).exp(),
                false,
            )
        })
        .collect();
    grid.push((theorem.s_star, true));
    grid.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());

    let mut csv = CsvWriter::create(a.out.as_deref()).map_err(|e| e.to_string())?;
    csv.comment(&format!(
        "sdos sweep-s: test_case={} scenario={:?} h={} dt={} theta={} points={} coupling={} \
         tol={} seed={} alpha_p={} s_star={} band=[{},{}]",
        a.test_case.label(),
        a.scenario,
        a.h,
        a.dt,
        a.theta,
        a.points,
        Coupling::from(a.coupling).label(),
        fmt6(a.tol),
        a.seed,
        fmt6(l),
        fmt6(theorem.s_star),
        fmt6(band.k_min),
        fmt6(band.k_max),
    ))
    .map_err(|e| e.to_string())?;
    csv.header(&[
        "s",
        "alpha_f",
        "iterations",
        "predicted_rho_max",
        "is_s_star",
        "converged",
    ])
    .map_err(|e| e.to_string())?;

    for (s, is_star) in grid {
        let alpha_f = match symbol_g(s, &scenario.phys, &disc) {
            Ok(g) => g,
            Err(_) => {
                csv.row(&[
                    fmt6(s),
                    "nan".into(),
                    "".into(),
                    "".into(),
                    (is_star as u8).to_string(),
                    "false".into(),
                ])
                .map_err(|e| e.to_string())?;
                continue;
            }
        };
        let robin = match RobinPair::new(alpha_f, l, Provenance::Manual) {
            Ok(r) => r,
            Err(_) => continue,
        };
        // Predicted band maximum of |rho| on a fine grid.
        let mut rho_max = 0f64;
        let m = 2048;
        for i in 0..=m {
            let k =
                (band.k_min.ln() + (band.k_max.ln() - band.k_min.ln()) * i as f64 / m as f64).exp();
            if let Ok(r) = rho_with_pair_simplified(k, alpha_f, l, &scenario.phys, &disc) {
                rho_max = rho_max.max(r.abs());
            }
        }
        let result = run_sweep_point(
            &scenario, &robin, a.theta, a.dt, a.seed, a.tol, a.max_iter, a.coupling,
        );
        match result {
            Ok((iters, converged)) => {
                csv.row(&[
                    fmt6(s),
                    fmt6(alpha_f),
                    iters.to_string(),
                    fmt6(rho_max),
                    (is_star as u8).to_string(),
                    converged.to_string(),
                ])
                .map_err(|e| e.to_string())?;
            }
            Err(_) => {
                // Individual-point failure: record and continue.
                csv.row(&[
                    fmt6(s),
                    fmt6(alpha_f),
                    String::new(),
                    fmt6(rho_max),
                    (is_star as u8).to_string(),
                    "false".into(),
                ])
                .map_err(|e| e.to_string())?;
            }
        }
    }
    csv.flush().map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn run_sweep_point(
    scenario: &Scenario,
    robin: &RobinPair,
    theta: f64,
    dt: f64,
    seed: u64,
    tol: f64,
    max_iter: usize,
    coupling: CouplingArg,
) -> Result<(usize, bool), String> {
    match coupling {
        CouplingArg::Stationary | CouplingArg::Jacobi => {
            let (_, rep) = run_error_equation(
                scenario,
                robin,
                theta,
                dt,
                seed,
                tol,
                max_iter,
                matches!(coupling, CouplingArg::Jacobi),
            )
            .map_err(|e| e.to_string())?;
            Ok((rep.iterations, rep.converged))
        }
        CouplingArg::Gmres => {
            // GMRES hardness of the interface operator: random right-hand
            // side, zero start.
            let disc = scenario.disc(theta, dt).map_err(|e| e.to_string())?;
            let problem = sdos::ddm::CoupledProblem::build(
                &scenario.mesh,
                &scenario.phys,
                &disc,
                robin,
                false,
            )
            .map_err(|e| e.to_string())?;
            let n = problem.n_iface();
            let mut rng = sdos::rng::Lcg64::new(seed);
            let mut chi_f = vec![0.0; n];
            let mut chi_p = vec![0.0; n];
            rng.fill_symmetric(&mut chi_f);
            rng.fill_symmetric(&mut chi_p);
            let (_, rep) = problem.interface_gmres(
                &chi_f,
                &chi_p,
                &sdos::ddm::InterfaceState::zeros(n),
                tol,
                max_iter,
            );
            Ok((rep.iterations, rep.converged))
        }
        CouplingArg::Monolithic => Err("sweep-s requires an iterative coupling".into()),
    }
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[arg(long, value_enum)]
    scenario: ScenarioArg,
    #[arg(long, value_parser = parse_test_case, default_value = "A")]
    test_case: TestCase,
    #[arg(long, default_value_t = 1)]
    level: usize,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn cmd_dump_mesh(a: DumpArgs) -> Result<i32, String> {
    let scenario = build_scenario(a.scenario, a.test_case, a.level, a.h, 1.0)?;
    match &a.out {
        Some(path) => {
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                }
            }
            let mut f =
                std::io::BufWriter::new(std::fs::File::create(path).map_err(|e| e.to_string())?);
            scenario
                .mesh
                .dump_plain(&mut f)
                .map_err(|e| e.to_string())?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            if let Err(e) = scenario.mesh.dump_plain(&mut lock) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.to_string());
                }
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn dispatch(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Optimize(a) => cmd_optimize(a),
        Command::Run(a) => cmd_run(a),
        Command::SweepS(a) => cmd_sweep(a),
        Command::DumpMesh(a) => cmd_dump_mesh(a),
    }
}
