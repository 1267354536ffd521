//! Theta-method time stepping over the three experiment scenarios:
//! the periodic error-equation strip, the manufactured-solution benchmark,
//! and the lid-driven filtration cavity.

pub mod manufactured;

use crate::analysis::{
    solve_minmax_numeric, solve_minmax_theorem, MinMaxSolution, NumericOptions, ZeroMode,
};
use crate::ddm::{CoupledProblem, Coupling, InterfaceState, IterationReport, StopRule};
use crate::fem::{
    force_vec_darcy, force_vec_stokes, interpolate_darcy, interpolate_velocity, l2_error_darcy,
    l2_error_pressure_f, l2_error_velocity, BcTag, DofMap,
};
use crate::mesh::{build_graded, build_uniform, CoupledMesh, GradingSpec, Rect};
use crate::params::{
    DiscretizationParams, PhysicalParams, RobinPair, TestCase, TimeFactorConvention,
};
use crate::rng::Lcg64;
use crate::{Error, Result};
use manufactured::ManufacturedFields;

/// Which experiment a scenario realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    PeriodicErrorEquation,
    ManufacturedSolution,
    LidFiltration,
}

/// One fully specified experiment: geometry, parameters, data and the
/// conventions its reference coefficients were derived with.
pub struct Scenario {
    pub kind: ScenarioKind,
    pub test_case: TestCase,
    pub phys: PhysicalParams,
    pub mesh: CoupledMesh,
    /// Mesh size fed to the frequency analysis (average interface spacing).
    pub h_analysis: f64,
    /// Band-edge multiplier: `k_max = c pi / h`. Quadratic interface traces
    /// place nodes at `h/2`, so the experiments use `c = 2`.
    pub band_multiplier: f64,
    pub convention: TimeFactorConvention,
    pub t_final: f64,
    manufactured: Option<ManufacturedFields>,
    /// Lid ramp time (filtration only).
    ramp_time: f64,
}

impl Scenario {
    /// Periodic strip: error equation with zero data and the
    /// zero-tangential-velocity interface condition.
    pub fn periodic_error_equation(tc: TestCase, h: f64, t_final: f64) -> Result<Self> {
        let nx = (1.0 / h).round() as usize;
        if nx < 2 {
            return Err(Error::InvalidInput(format!("mesh too coarse: h = {h}")));
        }
        let f = Rect::new(0.0, 1.0, 0.0, 1.0)?;
        let p = Rect::new(0.0, 1.0, -1.0, 0.0)?;
        let mesh = build_uniform(f, p, nx, nx, nx, true)?;
        let phys = PhysicalParams {
            xi_f: f64::INFINITY,
            ..tc.params()
        };
        Ok(Self {
            kind: ScenarioKind::PeriodicErrorEquation,
            test_case: tc,
            phys,
            h_analysis: mesh.h_avg(),
            mesh,
            band_multiplier: 2.0,
            convention: TimeFactorConvention::EffectiveThetaDt,
            t_final,
            manufactured: None,
            ramp_time: 1.0,
        })
    }

    /// Same strip and data with Dirichlet lateral walls instead of periodic
    /// pairing.
    pub fn dirichlet_error_equation(tc: TestCase, h: f64, t_final: f64) -> Result<Self> {
        let mut scenario = Self::periodic_error_equation(tc, h, t_final)?;
        scenario
            .mesh
            .apply_profile(crate::mesh::BoundaryProfile::DirichletStrip);
        Ok(scenario)
    }

    /// Manufactured-solution benchmark on the stacked half-width rectangles.
    pub fn manufactured(tc: TestCase, h: f64, t_final: f64) -> Result<Self> {
        let nx = (0.5 / h).round() as usize;
        if nx < 2 {
            return Err(Error::InvalidInput(format!("mesh too coarse: h = {h}")));
        }
        let f = Rect::new(0.0, 0.5, 1.0, 1.5)?;
        let p = Rect::new(0.0, 0.5, 0.5, 1.0)?;
        let mesh = build_uniform(f, p, nx, nx, nx, false)?;
        let phys = tc.params();
        Ok(Self {
            kind: ScenarioKind::ManufacturedSolution,
            test_case: tc,
            phys,
            h_analysis: mesh.h_avg(),
            mesh,
            band_multiplier: 2.0,
            convention: TimeFactorConvention::EffectiveThetaDt,
            t_final,
            manufactured: Some(ManufacturedFields::new(&phys)),
            ramp_time: 1.0,
        })
    }

    /// Lid-driven filtration cavity on a graded mesh; levels 1, 2, 3 carry
    /// 86, 170, 338 interface velocity unknowns.
    pub fn lid_filtration(tc: TestCase, level: usize, t_final: f64) -> Result<Self> {
        if !(1..=5).contains(&level) {
            return Err(Error::InvalidInput(format!(
                "lid level out of range: {level}"
            )));
        }
        let base_n = 21 * (1 << (level - 1));
        let f = Rect::new(0.0, 1.0, 0.4, 1.0)?;
        let p = Rect::new(0.0, 1.0, 0.0, 0.4)?;
        let mesh = build_graded(f, p, base_n, GradingSpec::new(3, 1.6)?)?;
        let phys = tc.params();
        Ok(Self {
            kind: ScenarioKind::LidFiltration,
            test_case: tc,
            phys,
            h_analysis: mesh.h_avg(),
            mesh,
            band_multiplier: 2.0,
            // The filtration reference coefficients follow the printed
            // symbol with the bare time step.
            convention: TimeFactorConvention::AsPrinted,
            t_final,
            manufactured: None,
            ramp_time: 1.0,
        })
    }

    pub fn disc(&self, theta: f64, dt: f64) -> Result<DiscretizationParams> {
        DiscretizationParams::new(
            theta,
            dt,
            self.h_analysis,
            self.mesh.gamma_len(),
            self.convention,
        )
    }

    /// Optimized Robin coefficients the experiment is meant to run with:
    /// the zero-frequency-aware numeric solution on the periodic strip, the
    /// case analysis elsewhere.
    pub fn optimal_robin(&self, disc: &DiscretizationParams) -> Result<MinMaxSolution> {
        let mut band = disc.band(self.band_multiplier)?;
        match self.kind {
            ScenarioKind::PeriodicErrorEquation => {
                band.include_zero = true;
                let depth = self.mesh.ys_p[self.mesh.ys_p.len() - 1] - self.mesh.ys_p[0];
                let opts = NumericOptions {
                    zero_mode: ZeroMode::BoundedDepth(depth),
                    ..Default::default()
                };
                solve_minmax_numeric(&self.phys, disc, &band, &opts)
            }
            _ => solve_minmax_theorem(&self.phys, disc, &band),
        }
    }

    pub fn exact(&self) -> Option<&ManufacturedFields> {
        self.manufactured.as_ref()
    }

    fn lid_velocity(&self, t: f64) -> f64 {
        (2.0 * t / self.ramp_time).min(1.0)
    }

    /// Dirichlet values for the Stokes constraints at time `t`.
    pub fn stokes_bc(&self, dofs: &DofMap, t: f64) -> Vec<f64> {
        dofs.stokes_constraints
            .iter()
            .map(|c| match (c.tag, &self.manufactured) {
                (BcTag::InterfaceTangential, _) => 0.0,
                (BcTag::Lid, _) => {
                    if c.comp == 0 {
                        self.lid_velocity(t)
                    } else {
                        0.0
                    }
                }
                (BcTag::Outer, Some(m)) => m.velocity(t, c.x, c.y)[c.comp as usize],
                (BcTag::Outer, None) => 0.0,
            })
            .collect()
    }

    /// Dirichlet values for the Darcy constraints at time `t`.
    pub fn darcy_bc(&self, dofs: &DofMap, t: f64) -> Vec<f64> {
        dofs.darcy_constraints
            .iter()
            .map(|c| match &self.manufactured {
                Some(m) => m.pressure_p(t, c.x, c.y),
                None => 0.0,
            })
            .collect()
    }

    /// Momentum load vector at time `t` (full Stokes layout).
    pub fn stokes_force(&self, dofs: &DofMap, t: f64) -> Vec<f64> {
        match &self.manufactured {
            Some(m) => force_vec_stokes(dofs, &|x, y| m.force_f(t, x, y)),
            None => vec![0.0; dofs.n_stokes()],
        }
    }

    pub fn darcy_force(&self, dofs: &DofMap, t: f64) -> Vec<f64> {
        match &self.manufactured {
            Some(m) => force_vec_darcy(dofs, &|x, y| m.force_p(t, x, y)),
            None => vec![0.0; dofs.n_darcy()],
        }
    }

    /// Initial fields (interpolated exact solution, or rest).
    pub fn initial_state(&self, dofs: &DofMap) -> (Vec<f64>, Vec<f64>) {
        match &self.manufactured {
            Some(m) => {
                let mut u = vec![0.0; dofs.n_stokes()];
                let uv = interpolate_velocity(dofs, &|x, y| m.velocity(0.0, x, y));
                u[..dofs.n_u()].copy_from_slice(&uv);
                for node in 0..dofs.n_q1f {
                    let [x, y] = dofs.q1f_coord[node];
                    u[dofs.p_dof(node)] = m.pressure_f(0.0, x, y);
                }
                let p = interpolate_darcy(dofs, &|x, y| m.pressure_p(0.0, x, y));
                (u, p)
            }
            None => (vec![0.0; dofs.n_stokes()], vec![0.0; dofs.n_darcy()]),
        }
    }
}

/// Per-step iteration record.
#[derive(Debug, Clone)]
pub struct StepRecord {
    pub step: usize,
    pub time: f64,
    pub iterations: usize,
    pub final_residual: f64,
    pub wall_time: f64,
}

/// Space-time error norms of a manufactured run.
#[derive(Debug, Clone, Default)]
pub struct ErrorReport {
    pub final_l2_u: f64,
    pub final_l2_pf: f64,
    pub final_l2_pp: f64,
    pub linf_l2_u: f64,
    pub linf_l2_pf: f64,
    pub linf_l2_pp: f64,
}

/// Observed convergence orders `log2(e_i / e_{i+1})` for halved step sizes.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

/// Full state after a run plus per-step records.
pub struct RunOutput {
    pub records: Vec<StepRecord>,
    pub errors: Option<ErrorReport>,
    pub stokes_state: Vec<f64>,
    pub darcy_state: Vec<f64>,
    pub lambda: InterfaceState,
    /// Set when a step failed to converge; the records up to the failure are
    /// preserved.
    pub failed_step: Option<usize>,
    /// States captured at the requested snapshot times.
    pub snapshots: Vec<(f64, Vec<f64>, Vec<f64>)>,
}

/// Time-loop configuration.
#[derive(Debug, Clone)]
pub struct TimeLoopConfig {
    pub theta: f64,
    pub dt: f64,
    pub coupling: Coupling,
    pub tol: f64,
    pub max_iter: usize,
    /// Times (within dt/2) at which to capture full states.
    pub snapshot_times: Vec<f64>,
}

impl TimeLoopConfig {
    pub fn new(theta: f64, dt: f64, coupling: Coupling) -> Self {
        Self {
            theta,
            dt,
            coupling,
            tol: 1e-8,
            max_iter: 400,
            snapshot_times: Vec::new(),
        }
    }
}

/// Advance the scenario from rest/exact initial data to `t_final`.
///
/// The subdomain factorizations are built once; every step reuses them. The
/// interface iteration warm-starts from the previous step's converged
/// unknowns (the first step starts from zero).
pub fn run_time_loop(
    scenario: &Scenario,
    robin: &RobinPair,
    config: &TimeLoopConfig,
) -> Result<RunOutput> {
    let disc = scenario.disc(config.theta, config.dt)?;
    let with_mono = config.coupling == Coupling::Monolithic;
    let problem = CoupledProblem::build(&scenario.mesh, &scenario.phys, &disc, robin, with_mono)?;
    run_time_loop_with(&problem, scenario, config)
}

/// As [`run_time_loop`], reusing an already assembled problem.
pub fn run_time_loop_with(
    problem: &CoupledProblem,
    scenario: &Scenario,
    config: &TimeLoopConfig,
) -> Result<RunOutput> {
    let dofs = &problem.dofs;
    let dt = config.dt;
    let n_steps = (scenario.t_final / dt).round().max(1.0) as usize;

    let (mut u_state, mut p_state) = scenario.initial_state(dofs);
    let mut lambda = problem.lambda_from_fields(&u_state, &p_state);
    let mut warm = InterfaceState::zeros(problem.n_iface());

    let mut fv_old = scenario.stokes_force(dofs, 0.0);
    let mut fp_old = scenario.darcy_force(dofs, 0.0);

    let mut records = Vec::with_capacity(n_steps);
    let mut errors: Option<ErrorReport> = scenario.exact().map(|_| ErrorReport::default());
    let mut failed_step = None;
    let mut snapshots = Vec::new();

    for step in 1..=n_steps {
        let t = step as f64 * dt;
        let fv_new = scenario.stokes_force(dofs, t);
        let fp_new = scenario.darcy_force(dofs, t);
        let g_f = scenario.stokes_bc(dofs, t);
        let g_p = scenario.darcy_bc(dofs, t);

        let u_prev_vel = &u_state[..dofs.n_u()];
        let (report, new_u, new_p, new_lambda);
        match config.coupling {
            Coupling::Monolithic => {
                let mono = problem
                    .monolithic
                    .as_ref()
                    .expect("assembled with monolithic");
                let rhs = mono.step_rhs(
                    &problem.iface,
                    &fv_new,
                    &fv_old,
                    &fp_new,
                    &fp_old,
                    u_prev_vel,
                    &p_state,
                );
                let full = problem.monolithic_solve(&rhs, &g_f, &g_p)?;
                new_u = full[..dofs.n_stokes()].to_vec();
                new_p = full[dofs.n_stokes()..].to_vec();
                new_lambda = problem.lambda_from_fields(&new_u, &new_p);
                report = IterationReport {
                    iterations: 0,
                    residual_history: Vec::new(),
                    converged: true,
                    wall_time: 0.0,
                };
            }
            coupling => {
                let rhs_f = problem.stokes.step_rhs(
                    &problem.iface,
                    &fv_new,
                    &fv_old,
                    u_prev_vel,
                    &lambda.lambda_f,
                );
                let rhs_p = problem.darcy.step_rhs(
                    &problem.iface,
                    &fp_new,
                    &fp_old,
                    &p_state,
                    &lambda.lambda_p,
                );
                let (chi_f, chi_p) = problem.chi(&rhs_f, &rhs_p, &g_f, &g_p);
                let (state, rep) = match coupling {
                    Coupling::Gmres => {
                        problem.interface_gmres(&chi_f, &chi_p, &warm, config.tol, config.max_iter)
                    }
                    Coupling::Stationary | Coupling::Jacobi => problem.stationary_iteration(
                        &warm,
                        &chi_f,
                        &chi_p,
                        config.tol,
                        config.max_iter,
                        coupling == Coupling::Jacobi,
                        StopRule::RelativeUpdate,
                    ),
                    Coupling::Monolithic => unreachable!(),
                };
                let (u, p) = problem.recover_fields(&rhs_f, &rhs_p, &g_f, &g_p, &state);
                new_u = u;
                new_p = p;
                new_lambda = state;
                report = rep;
            }
        }

        records.push(StepRecord {
            step,
            time: t,
            iterations: report.iterations,
            final_residual: report.residual_history.last().copied().unwrap_or(0.0),
            wall_time: report.wall_time,
        });
        if !report.converged {
            failed_step = Some(step);
            break;
        }

        u_state = new_u;
        p_state = new_p;
        warm = new_lambda.clone();
        lambda = new_lambda;
        fv_old = fv_new;
        fp_old = fp_new;

        if let Some(m) = scenario.exact() {
            let err = errors.as_mut().expect("error report allocated");
            let eu = l2_error_velocity(dofs, &u_state[..dofs.n_u()], &|x, y| m.velocity(t, x, y));
            let epf = l2_error_pressure_f(dofs, &u_state, &|x, y| m.pressure_f(t, x, y));
            let epp = l2_error_darcy(dofs, &p_state, &|x, y| m.pressure_p(t, x, y));
            err.final_l2_u = eu;
            err.final_l2_pf = epf;
            err.final_l2_pp = epp;
            err.linf_l2_u = err.linf_l2_u.max(eu);
            err.linf_l2_pf = err.linf_l2_pf.max(epf);
            err.linf_l2_pp = err.linf_l2_pp.max(epp);
        }
        if config
            .snapshot_times
            .iter()
            .any(|&ts| (ts - t).abs() <= 0.5 * dt * (1.0 + 1e-12))
        {
            snapshots.push((t, u_state.clone(), p_state.clone()));
        }
    }

    Ok(RunOutput {
        records,
        errors,
        stokes_state: u_state,
        darcy_state: p_state,
        lambda,
        failed_step,
        snapshots,
    })
}

/// Error-equation driver: one implicit step with zero data, iterating the
/// stationary scheme from a seeded random interface guess down to `tol`
/// relative to the initial norm.
pub fn run_error_equation(
    scenario: &Scenario,
    robin: &RobinPair,
    theta: f64,
    dt: f64,
    seed: u64,
    tol: f64,
    max_iter: usize,
    jacobi: bool,
) -> Result<(InterfaceState, IterationReport)> {
    let disc = scenario.disc(theta, dt)?;
    let problem = CoupledProblem::build(&scenario.mesh, &scenario.phys, &disc, robin, false)?;
    let n = problem.n_iface();
    let mut rng = Lcg64::new(seed);
    let mut state0 = InterfaceState::zeros(n);
    rng.fill_symmetric(&mut state0.lambda_f);
    rng.fill_symmetric(&mut state0.lambda_p);
    let zero = vec![0.0; n];
    Ok(problem.stationary_iteration(
        &state0,
        &zero,
        &zero,
        tol,
        max_iter,
        jacobi,
        StopRule::DecayFromInitial,
    ))
}
