//! Positive solutions of the constant level-ℓ system and the dilogarithm
//! identity they satisfy.

use serde::Serialize;

use crate::cluster::{numeric_frame, verify_y_system, YSystem};
use crate::dilog::{l_of_ratio, Domain};
use crate::dynkin::{DynkinDiagram, Family, Sign};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::semifield::PosRealAssignment;

pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 200_000;
pub const DEFAULT_LAMBDA: f64 = 0.5;

/// `Y[a][m−1] = Y^{(a)}_m` for `a ∈ I`, `1 ≤ m ≤ ℓ−1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelSystem {
    pub diagram: DynkinDiagram,
    pub level: usize,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<f64>>,
    pub residual: f64,
    pub iterations: usize,
    pub lambda: f64,
}

impl LevelSystem {
    pub fn get(&self, a: usize, m: usize) -> f64 {
        self.y[a][m - 1]
    }
}

/// Right-hand side of `(Y^{(a)}_m)² = Π_{b∼a}(1+Y^{(b)}_m) / ((1+1/Y^{(a)}_{m−1})(1+1/Y^{(a)}_{m+1}))`,
/// with the `m = 0` and `m = ℓ` factors omitted.
fn rhs(x: &DynkinDiagram, level: usize, y: &[Vec<f64>], a: usize, m: usize) -> f64 {
    let mut num = 1.0;
    for b in x.neighbors(a) {
        num *= 1.0 + y[b][m - 1];
    }
    let mut den = 1.0;
    if m > 1 {
        den *= 1.0 + 1.0 / y[a][m - 2];
    }
    if m + 1 < level {
        den *= 1.0 + 1.0 / y[a][m];
    }
    num / den
}

/// `max |LHS/RHS − 1|` over all `(a, m)`.
pub fn residual(x: &DynkinDiagram, level: usize, y: &[Vec<f64>]) -> f64 {
    let mut r: f64 = 0.0;
    for a in x.nodes() {
        for m in 1..level {
            let v = y[a][m - 1];
            r = r.max((v * v / rhs(x, level, y, a, m) - 1.0).abs());
        }
    }
    r
}

/// Damped fixed-point iteration from all ones.
pub fn solve_constant(x: &DynkinDiagram, level: usize, tol: f64, max_iter: usize) -> Result<LevelSystem> {
    let start = vec![vec![1.0; level.saturating_sub(1)]; x.rank()];
    solve_constant_from(x, level, start, tol, max_iter, DEFAULT_LAMBDA)
}

/// `Y ← (1−λ)Y + λ√RHS(Y)`, halving `λ` whenever the residual grows.
pub fn solve_constant_from(
    x: &DynkinDiagram,
    level: usize,
    start: Vec<Vec<f64>>,
    tol: f64,
    max_iter: usize,
    lambda: f64,
) -> Result<LevelSystem> {
    if level < 2 {
        return Err(Error::Config(format!("level must be at least 2, got {level}")));
    }
    if tol.is_nan() || tol <= 0.0 || lambda.is_nan() || lambda <= 0.0 || lambda > 1.0 {
        return Err(Error::Config("tolerance must be positive and damping in (0, 1]".into()));
    }
    if start.len() != x.rank()
        || start.iter().any(|row| row.len() != level - 1 || row.iter().any(|&v| !(v > 0.0 && v.is_finite())))
    {
        return Err(Error::Config("starting point must be a positive r × (ℓ−1) array".into()));
    }
    let mut y = start;
    let mut lam = lambda;
    let mut res = residual(x, level, &y);
    for it in 0..max_iter {
        if res < tol {
            return Ok(LevelSystem {
                diagram: x.clone(),
                level,
                y,
                residual: res,
                iterations: it,
                lambda: lam,
            });
        }
        let next: Vec<Vec<f64>> = x
            .nodes()
            .map(|a| {
                (1..level)
                    .map(|m| (1.0 - lam) * y[a][m - 1] + lam * rhs(x, level, &y, a, m).sqrt())
                    .collect()
            })
            .collect();
        let r = residual(x, level, &next);
        if r > res && lam > 1e-3 {
            lam /= 2.0;
        }
        y = next;
        res = r;
    }
    if res < tol {
        return Ok(LevelSystem {
            diagram: x.clone(),
            level,
            y,
            residual: res,
            iterations: max_iter,
            lambda: lam,
        });
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual: res,
    })
}

/// `Y^{(1)}_m = sin²(π/(ℓ+2)) / (sin(mπ/(ℓ+2)) sin((m+2)π/(ℓ+2)))` for `A1`.
pub fn a1_closed_form(level: usize, m: usize) -> f64 {
    let q = std::f64::consts::PI / (level + 2) as f64;
    q.sin().powi(2) / ((m as f64 * q).sin() * ((m + 2) as f64 * q).sin())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelIdentityReport {
    #[serde(rename = "type")]
    pub diagram: String,
    pub level: usize,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<f64>>,
    pub residual: f64,
    pub identity_lhs: f64,
    /// `ℓ·dim 𝔤/(h+ℓ) − r`.
    pub identity_rhs: f64,
    /// `(ℓ−1)rh/(h+ℓ)`.
    pub central_charge_form: f64,
    pub error: f64,
    pub tol: f64,
    pub passed: bool,
}

/// `(6/π²) Σ L(Y/(1+Y))` against both closed forms of the right-hand side.
pub fn verify_level_identity(sol: &LevelSystem, tol: f64) -> Result<LevelIdentityReport> {
    let x = &sol.diagram;
    let l = sol.level as f64;
    let (r, h, dim) = (x.rank() as f64, x.coxeter_number() as f64, x.dim_g() as f64);
    let mut lhs = 0.0;
    for row in &sol.y {
        for &v in row {
            lhs += l_of_ratio(v)?;
        }
    }
    let rhs = l * dim / (h + l) - r;
    let c1 = (l - 1.0) * r * h / (h + l);
    let error = (lhs - rhs).abs().max((lhs - c1).abs());
    Ok(LevelIdentityReport {
        diagram: x.to_string(),
        level: sol.level,
        y: sol.y.clone(),
        residual: sol.residual,
        identity_lhs: lhs,
        identity_rhs: rhs,
        central_charge_form: c1,
        error,
        tol,
        passed: error < tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BridgeReport {
    pub pair: String,
    pub level: usize,
    /// Largest relative distance of `y_𝐢(u)^{±1}` from the constant solution.
    pub max_deviation: f64,
    pub y_system: CheckReport,
    /// Sum over all `(𝐢, u)` of one period, expected `2hrr'`.
    pub full_sum: f64,
    pub full_expected: usize,
    /// `S+` sum, expected `hrr'`.
    pub s_plus_sum: f64,
    pub s_plus_expected: usize,
    pub tol: f64,
    pub passed: bool,
}

/// Embed the constant solution into the `(X, A_{ℓ−1})` coefficient frame
/// through `y_𝐢(0) = Y_𝐢^{ε(𝐢)}` and check that it stays constant, solves
/// the Y-system and gives the functional identity values.
pub fn constant_frame_bridge(sol: &LevelSystem, tol: f64) -> Result<BridgeReport> {
    let ap = DynkinDiagram::new(Family::A, sol.level - 1)?;
    let sys = YSystem::new(sol.diagram.clone(), ap);
    let big_y = |a: usize| {
        let (i, ip) = sys.unindex(a);
        sol.get(i, ip + 1)
    };
    let init: Vec<f64> = (0..sys.size())
        .map(|a| match sys.part(a) {
            Sign::Plus => big_y(a),
            Sign::Minus => 1.0 / big_y(a),
        })
        .collect();
    let p = sys.period();
    let frame = numeric_frame(&sys, &PosRealAssignment::new(init)?, -1, p)?;
    let mut max_deviation: f64 = 0.0;
    let mut full_sum = 0.0;
    for a in 0..sys.size() {
        for u in 0..p {
            let y = frame.get(a, u)?.0;
            let v = match sys.parity(a, u) {
                Sign::Plus => y,
                Sign::Minus => 1.0 / y,
            };
            max_deviation = max_deviation.max((v / big_y(a) - 1.0).abs());
            full_sum += l_of_ratio(v)?;
        }
    }
    let y_system = verify_y_system(&sys, &frame, tol)?;
    let mut s_plus_sum = 0.0;
    for (a, u) in Domain::SPlus.points(&sys) {
        s_plus_sum += l_of_ratio(frame.get(a, u)?.0)?;
    }
    let rr = sys.rank_product();
    let full_expected = 2 * sys.h() * rr;
    let s_plus_expected = sys.h() * rr;
    let passed = max_deviation < tol
        && y_system.passed
        && (full_sum - full_expected as f64).abs() < 1e-8
        && (s_plus_sum - s_plus_expected as f64).abs() < 1e-8;
    Ok(BridgeReport {
        pair: sys.to_string(),
        level: sol.level,
        max_deviation,
        y_system,
        full_sum,
        full_expected,
        s_plus_sum,
        s_plus_expected,
        tol,
        passed,
    })
}
