use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{LgError, Result};
use crate::functional::{eval_separate_with, macrorealist_bound, FunctionalSpec, MAX_BOUND_SLOTS};
use crate::qubit::{PureState, Schedule};

use super::golden::golden_section_max;

/// Unequal-coupling searches put a grid on every interval only up to this
/// many slots; longer schedules are seeded from the equal-coupling grid.
pub const MAX_GRID_SLOTS_UNEQUAL: usize = 6;

const MIN_GRID: usize = 8;
const GOLDEN_TOL: f64 = 1e-11;
const GOLDEN_MAX_ITER: usize = 200;
const MIN_WIDTH: f64 = 1e-10;

/// Grid and refinement settings for [`optimize`].
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Grid points per coupling axis over `[0, π)`.
    pub g_grid: usize,
    /// Grid points over `θ ∈ [0, π)`.
    pub theta_grid: usize,
    /// Grid points over `φ ∈ [0, 2π)`.
    pub phi_grid: usize,
    /// Coordinate-descent sweeps per seed.
    pub refine_iterations: usize,
    /// A sweep improving the value by less than this halves the search widths.
    pub tolerance: f64,
    /// One coupling shared by every interval, or one per interval.
    pub equal_couplings: bool,
    /// Number of best grid cells refined.
    pub seeds: usize,
    /// Cap on grid cells; coupling axes are thinned (never below 8) to fit.
    pub max_grid_points: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            g_grid: 24,
            theta_grid: 24,
            phi_grid: 16,
            refine_iterations: 60,
            tolerance: 1e-12,
            equal_couplings: true,
            seeds: 10,
            max_grid_points: 1_000_000,
        }
    }
}

impl SearchConfig {
    pub fn unequal() -> Self {
        SearchConfig {
            equal_couplings: false,
            ..SearchConfig::default()
        }
    }

    /// Same grid density on every axis.
    pub fn with_grid(mut self, points: usize) -> Self {
        self.g_grid = points;
        self.theta_grid = points;
        self.phi_grid = points;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("g", self.g_grid),
            ("theta", self.theta_grid),
            ("phi", self.phi_grid),
        ] {
            if v < MIN_GRID {
                return Err(LgError::domain(format!(
                    "{name} grid has {v} points, at least {MIN_GRID} required"
                )));
            }
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(LgError::domain("search tolerance must be positive"));
        }
        if self.seeds == 0 {
            return Err(LgError::domain("at least one refinement seed is required"));
        }
        Ok(())
    }
}

/// Best parameters found for one functional.
#[derive(Clone, Debug, PartialEq)]
pub struct ViolationReport {
    pub spec: FunctionalSpec,
    pub best_value: f64,
    /// One coupling per interval, each reduced into `[0, π)`.
    pub couplings: Vec<f64>,
    pub theta: f64,
    pub phi: f64,
    pub macrorealist_max: f64,
    pub algebraic_max: f64,
    pub evaluations: usize,
}

impl ViolationReport {
    pub fn margin(&self) -> f64 {
        self.best_value - self.macrorealist_max
    }

    pub fn violated(&self) -> bool {
        self.margin() > 0.0
    }
}

#[derive(Clone, Copy)]
enum Axis {
    Coupling,
    Theta,
    Phi,
}

impl Axis {
    fn period(self) -> f64 {
        match self {
            // U(g + π) = −U(g) and the state picks up only a global sign under θ → θ + π
            Axis::Coupling | Axis::Theta => PI,
            Axis::Phi => TAU,
        }
    }
}

/// Objective over `[g_1 … g_m, θ, φ]`.
struct Objective<'a> {
    spec: &'a FunctionalSpec,
    intervals: usize,
    equal: bool,
}

impl Objective<'_> {
    fn axes(&self) -> Vec<Axis> {
        let m = if self.equal { 1 } else { self.intervals };
        let mut axes = vec![Axis::Coupling; m];
        axes.push(Axis::Theta);
        axes.push(Axis::Phi);
        axes
    }

    fn couplings(&self, x: &[f64]) -> Vec<f64> {
        let m = x.len() - 2;
        if m == 1 {
            vec![x[0].rem_euclid(PI); self.intervals]
        } else {
            x[..m].iter().map(|g| g.rem_euclid(PI)).collect()
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let m = x.len() - 2;
        let theta = x[m].rem_euclid(PI);
        let phi = x[m + 1].rem_euclid(TAU);
        let rho = PureState::new(theta, phi)
            .expect("reduced angles are in range")
            .density();
        let sched = Schedule::new(self.couplings(x)).expect("couplings are finite");
        eval_separate_with(self.spec, &rho, &sched.observables())
    }
}

fn axis_grid(axis: Axis, points: usize) -> Vec<f64> {
    let step = axis.period() / points as f64;
    (0..points).map(|i| i as f64 * step).collect()
}

/// Coarse grid scan, then axis-wise golden-section refinement from the best
/// cells. Deterministic for a given configuration; the reported value is an
/// attained value and hence a lower bound on the true maximum.
pub fn optimize(spec: &FunctionalSpec, cfg: &SearchConfig) -> Result<ViolationReport> {
    cfg.validate()?;
    let n = spec.n();
    if n > MAX_BOUND_SLOTS {
        return Err(LgError::resource(format!(
            "search over {n} slots exceeds the enumeration limit of {MAX_BOUND_SLOTS}"
        )));
    }
    let bounds = macrorealist_bound(spec)?;
    let intervals = n - 1;
    let equal = cfg.equal_couplings || intervals == 1;
    let objective = Objective {
        spec,
        intervals,
        equal,
    };
    let axes = objective.axes();

    // grid on the full parameter space, or on the equal-coupling slice when
    // there are too many intervals
    let grid_on_all = equal || n <= MAX_GRID_SLOTS_UNEQUAL;
    let grid_couplings = if grid_on_all { axes.len() - 2 } else { 1 };
    let coupling_points = thinned_density(cfg, grid_couplings);
    let mut grids: Vec<Vec<f64>> = (0..grid_couplings)
        .map(|_| axis_grid(Axis::Coupling, coupling_points))
        .collect();
    grids.push(axis_grid(Axis::Theta, cfg.theta_grid));
    grids.push(axis_grid(Axis::Phi, cfg.phi_grid));
    let steps: Vec<f64> = grids.iter().map(|g| g[1] - g[0]).collect();
    let total: usize = grids.iter().map(Vec::len).product();

    let decode = |mut idx: usize| -> Vec<f64> {
        let mut point = vec![0.0; grids.len()];
        for (k, grid) in grids.iter().enumerate().rev() {
            point[k] = grid[idx % grid.len()];
            idx /= grid.len();
        }
        point
    };
    let expand = |point: Vec<f64>| -> Vec<f64> {
        if grid_couplings == axes.len() - 2 {
            point
        } else {
            let mut full = vec![point[0]; axes.len() - 2];
            full.extend_from_slice(&point[1..]);
            full
        }
    };
    let grid_objective = Objective {
        spec,
        intervals,
        equal: !grid_on_all || equal,
    };

    let mut scored: Vec<(f64, usize)> = (0..total)
        .into_par_iter()
        .map(|idx| (grid_objective.eval(&decode(idx)), idx))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    scored.truncate(cfg.seeds);

    let mut widths = vec![steps[0]; axes.len() - 2];
    widths.extend_from_slice(&steps[steps.len() - 2..]);

    let refined: Vec<(Vec<f64>, f64, usize)> = scored
        .par_iter()
        .map(|&(_, idx)| refine(&objective, expand(decode(idx)), &widths, cfg))
        .collect();

    let mut evaluations = total;
    let mut best: Option<(Vec<f64>, f64)> = None;
    for (x, fx, evals) in refined {
        evaluations += evals;
        // earlier (better-ranked) seeds win near-ties
        if best.as_ref().is_none_or(|(_, b)| fx > b + 1e-12) {
            best = Some((x, fx));
        }
    }
    let (x, best_value) = best.expect("at least one seed");

    if best_value > bounds.algebraic_max + 1e-9 {
        return Err(LgError::Consistency(format!(
            "search value {best_value} exceeds the algebraic maximum {}",
            bounds.algebraic_max
        )));
    }
    let m = x.len() - 2;
    Ok(ViolationReport {
        spec: spec.clone(),
        best_value,
        couplings: objective.couplings(&x),
        theta: x[m].rem_euclid(PI),
        phi: x[m + 1].rem_euclid(TAU),
        macrorealist_max: bounds.macrorealist_max,
        algebraic_max: bounds.algebraic_max,
        evaluations,
    })
}

fn thinned_density(cfg: &SearchConfig, coupling_axes: usize) -> usize {
    let fixed = (cfg.theta_grid * cfg.phi_grid) as f64;
    let budget = (cfg.max_grid_points as f64 / fixed).max(1.0);
    let fit = budget.powf(1.0 / coupling_axes as f64).floor() as usize;
    cfg.g_grid.min(fit).max(MIN_GRID)
}

fn refine(
    objective: &Objective<'_>,
    start: Vec<f64>,
    widths: &[f64],
    cfg: &SearchConfig,
) -> (Vec<f64>, f64, usize) {
    let evals = std::cell::Cell::new(0usize);
    let f = |x: &[f64]| {
        evals.set(evals.get() + 1);
        objective.eval(x)
    };
    let mut x = start;
    let mut fx = f(&x);
    let mut widths = widths.to_vec();
    for _ in 0..cfg.refine_iterations {
        let before = fx;
        for axis in 0..x.len() {
            let centre = x[axis];
            let mut probe = x.clone();
            let (xa, fa) = golden_section_max(
                |t| {
                    probe[axis] = t;
                    f(&probe)
                },
                centre - widths[axis],
                centre + widths[axis],
                GOLDEN_TOL,
                GOLDEN_MAX_ITER,
            );
            if fa > fx {
                x[axis] = xa;
                fx = fa;
            }
        }
        if fx - before < cfg.tolerance {
            widths.iter_mut().for_each(|w| *w *= 0.5);
            if widths.iter().all(|&w| w < MIN_WIDTH) {
                break;
            }
        }
    }
    (x, fx, evals.get())
}
