//! Quadrature engine: finite, semi-infinite, two-dimensional, principal-value,
//! and Fresnel-subtracted oscillatory integration.
//!
//! The core scheme is interval bisection with the embedded 7-15 Gauss-Kronrod
//! pair. All integrands in scope are analytic away from isolated poles, so a
//! fixed high-order rule plus bisection converges in few levels. Semi-infinite
//! ranges are truncated at an analytically derived radius controlled by the
//! decay hint, then handled as finite integrals.

mod rule;

use std::cell::Cell;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use rule::{gk15, EVALS_PER_RULE};

pub use rule::thread_eval_count;

/// Tolerances and refinement limits for a quadrature call.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_refinement: u32,
    /// Multiplier on the analytically derived truncation radius.
    pub truncation_margin: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_refinement: 30,
            truncation_margin: 1.0,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.abs_tol < 0.0 || self.rel_tol < 0.0 {
            return Err(Error::Config("tolerances must be non-negative".into()));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(Error::Config(
                "at least one of abs_tol, rel_tol must be positive".into(),
            ));
        }
        if self.max_refinement < 1 {
            return Err(Error::Config("max_refinement must be >= 1".into()));
        }
        if !(self.truncation_margin > 0.0) {
            return Err(Error::Config("truncation_margin must be positive".into()));
        }
        Ok(())
    }

    /// Tolerance used in truncation-radius formulas (abs_tol when set,
    /// otherwise rel_tol).
    fn radius_tol(&self) -> f64 {
        if self.abs_tol > 0.0 {
            self.abs_tol
        } else {
            self.rel_tol
        }
    }
}

/// Value, error estimate and diagnostics for one quadrature call.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

impl QuadResult {
    fn new(value: Complex64, error_estimate: f64, evaluations: u64, cfg: &QuadConfig) -> Self {
        let converged = error_estimate <= cfg.abs_tol.max(cfg.rel_tol * value.norm());
        QuadResult {
            value,
            error_estimate,
            evaluations,
            converged,
        }
    }

    fn zero() -> Self {
        QuadResult {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    /// Real part of the value.
    pub fn real(&self) -> f64 {
        self.value.re
    }
}

/// Tail-decay hint for semi-infinite integration: `|f(x)| <= C e^{-pi alpha x^2}`
/// or `|f(x)| <= C e^{-rate x}` for large x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayHint {
    Gaussian { alpha: f64 },
    Exponential { rate: f64 },
}

/// Constant C in the tail bound used for truncation radii.
const TAIL_CONST: f64 = 10.0;
/// Minimum truncation radius before the margin multiplier.
const MIN_RADIUS: f64 = 8.0;

impl DecayHint {
    /// Truncation radius such that the hinted tail bound is below
    /// `abs_tol / margin`.
    pub fn truncation_radius(&self, cfg: &QuadConfig) -> Result<f64> {
        let tol = cfg.radius_tol();
        let r = match *self {
            DecayHint::Gaussian { alpha } => {
                if alpha <= 0.0 {
                    return Err(Error::domain("gaussian decay hint requires alpha > 0"));
                }
                ((TAIL_CONST / tol).ln() / (std::f64::consts::PI * alpha)).sqrt()
            }
            DecayHint::Exponential { rate } => {
                if rate <= 0.0 {
                    return Err(Error::domain("exponential decay hint requires rate > 0"));
                }
                (TAIL_CONST / tol).ln() / rate
            }
        };
        Ok(r.max(MIN_RADIUS) * cfg.truncation_margin)
    }
}

/// Truncation radius for a tail bound `C e^{drift x - pi alpha x^2}`, used when
/// a hyperbolic-ratio factor grows exponentially before the Gaussian cuts in.
pub fn gaussian_radius_with_drift(alpha: f64, drift: f64, cfg: &QuadConfig) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::domain("gaussian decay requires alpha > 0"));
    }
    let pa = std::f64::consts::PI * alpha;
    let log_term = (TAIL_CONST / cfg.radius_tol()).ln();
    let drift = drift.max(0.0);
    let r = (drift + (drift * drift + 4.0 * pa * log_term).sqrt()) / (2.0 * pa);
    Ok(r.max(MIN_RADIUS) * cfg.truncation_margin)
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive bisection on `[a, b]`.
fn adapt<F>(f: &F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    cfg.validate()?;
    if a == b {
        return Ok(QuadResult::zero());
    }
    if a > b {
        return Err(Error::domain(format!(
            "integration bounds must satisfy a <= b (got a = {a}, b = {b})"
        )));
    }

    let mut evals: u64 = 0;
    let (v0, e0) = gk15(f, a, b)?;
    evals += EVALS_PER_RULE;

    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value: v0,
        err: e0,
        depth: 0,
    });
    let mut frozen: Vec<Segment> = Vec::new();
    let mut frozen_err = 0.0;
    let mut active_err = e0;
    let mut value = v0;

    let width_floor = (b - a) * 1e-14;

    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * value.norm());
        if active_err + frozen_err <= tol {
            break;
        }
        let seg = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        active_err -= seg.err;
        if seg.depth >= cfg.max_refinement || (seg.b - seg.a) <= width_floor {
            frozen_err += seg.err;
            frozen.push(seg);
            continue;
        }
        let mid = 0.5 * (seg.a + seg.b);
        let (vl, el) = gk15(f, seg.a, mid)?;
        let (vr, er) = gk15(f, mid, seg.b)?;
        evals += 2 * EVALS_PER_RULE;
        value += vl + vr - seg.value;
        active_err += el + er;
        heap.push(Segment {
            a: seg.a,
            b: mid,
            value: vl,
            err: el,
            depth: seg.depth + 1,
        });
        heap.push(Segment {
            a: mid,
            b: seg.b,
            value: vr,
            err: er,
            depth: seg.depth + 1,
        });
    }

    // Re-sum left to right for a deterministic, drift-free total.
    let mut segs: Vec<Segment> = heap.into_vec();
    segs.extend(frozen);
    segs.sort_by(|s, t| s.a.total_cmp(&t.a));
    let value = segs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, s| acc + s.value);
    let err: f64 = segs.iter().map(|s| s.err).sum();

    Ok(QuadResult::new(value, err, evals, cfg))
}

/// Integrate a real-valued integrand over the finite interval `[a, b]`.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    adapt(&|x| Complex64::new(f(x), 0.0), a, b, cfg)
}

/// Integrate a complex-valued integrand over `[a, b]`. Real and imaginary
/// parts share the abscissa set.
pub fn integrate_finite_complex<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    adapt(&f, a, b, cfg)
}

/// Integrate a real-valued integrand over `[0, inf)` by truncating where the
/// hinted tail bound drops below tolerance.
pub fn integrate_semi_infinite<F>(f: F, decay: DecayHint, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let r = decay.truncation_radius(cfg)?;
    integrate_finite(f, 0.0, r, cfg)
}

/// Complex variant of [`integrate_semi_infinite`].
pub fn integrate_semi_infinite_complex<F>(
    f: F,
    decay: DecayHint,
    cfg: &QuadConfig,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let r = decay.truncation_radius(cfg)?;
    integrate_finite_complex(f, 0.0, r, cfg)
}

/// Semi-infinite integration starting from an already-computed truncation
/// radius. Used when growth factors have been folded into the radius.
pub fn integrate_truncated<F>(f: F, radius: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_finite(f, 0.0, radius, cfg)
}

/// Tensor-product quadrature of `f(x, y)` over `[0, inf)^2` with per-axis
/// Gaussian (or exponential) decay hints. The outer integral runs over `y`;
/// each outer abscissa triggers a full inner integration over `x`.
pub fn integrate_2d<F>(
    f: F,
    decay_x: DecayHint,
    decay_y: DecayHint,
    cfg: &QuadConfig,
) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> f64,
{
    cfg.validate()?;
    let rx = decay_x.truncation_radius(cfg)?;
    let ry = decay_y.truncation_radius(cfg)?;

    let inner_cfg = QuadConfig {
        abs_tol: cfg.abs_tol / (10.0 * ry.max(1.0)),
        rel_tol: cfg.rel_tol / 10.0,
        ..*cfg
    };
    let outer_cfg = QuadConfig {
        abs_tol: 0.5 * cfg.abs_tol,
        rel_tol: 0.5 * cfg.rel_tol,
        ..*cfg
    };

    let inner_evals = Cell::new(0u64);
    let inner_err_max = Cell::new(0.0f64);
    let inner_failure: Cell<Option<Error>> = Cell::new(None);

    let outer_integrand = |y: f64| -> Complex64 {
        match integrate_finite(|x| f(x, y), 0.0, rx, &inner_cfg) {
            Ok(res) => {
                inner_evals.set(inner_evals.get() + res.evaluations);
                inner_err_max.set(inner_err_max.get().max(res.error_estimate));
                Complex64::new(res.value.re, 0.0)
            }
            Err(e) => {
                inner_failure.set(Some(e));
                Complex64::new(f64::NAN, 0.0)
            }
        }
    };

    let outer = adapt(&outer_integrand, 0.0, ry, &outer_cfg);
    if let Some(e) = inner_failure.take() {
        return Err(e);
    }
    let outer = outer?;

    let err = outer.error_estimate + ry * inner_err_max.get();
    Ok(QuadResult::new(
        outer.value,
        err,
        inner_evals.get(),
        cfg,
    ))
}

/// Cauchy principal value of `f` over `[a, b]` with one simple pole inside.
///
/// The window `[pole - halfwidth, pole + halfwidth]` is handled by the
/// symmetric-pair sum `f(pole + t) + f(pole - t)`, which is smooth for a
/// simple pole; the remainder is ordinary quadrature.
pub fn principal_value<F>(
    f: F,
    a: f64,
    b: f64,
    pole: f64,
    halfwidth: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(halfwidth > 0.0) {
        return Err(Error::domain("principal value requires halfwidth > 0"));
    }
    if pole - halfwidth < a || pole + halfwidth > b {
        return Err(Error::domain(
            "pole window [pole - halfwidth, pole + halfwidth] must lie inside [a, b]",
        ));
    }

    let sym = |t: f64| f(pole + t) + f(pole - t);

    // Simple-pole diagnostic: for an even-order pole the symmetric sum blows
    // up like 1/t^k as t -> 0 instead of staying bounded.
    let probes: Vec<f64> = (0..4)
        .map(|k| sym(halfwidth * 10f64.powi(-2 - k)).abs())
        .collect();
    let diverging = probes
        .windows(2)
        .all(|w| w[1] > 5.0 * w[0].max(1e-300));
    if diverging && probes[3] > 1e6 {
        return Err(Error::NotSimplePole { pole });
    }

    let window = integrate_finite(sym, 0.0, halfwidth, cfg)?;
    let left = integrate_finite(&f, a, pole - halfwidth, cfg)?;
    let right = integrate_finite(&f, pole + halfwidth, b, cfg)?;

    Ok(QuadResult::new(
        window.value + left.value + right.value,
        window.error_estimate + left.error_estimate + right.error_estimate,
        window.evaluations + left.evaluations + right.evaluations,
        cfg,
    ))
}

/// Which Fresnel oscillation an integrand tends to at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Sin,
    Cos,
}

impl TrigKind {
    fn eval(&self, alpha: f64, x: f64) -> f64 {
        match self {
            TrigKind::Sin => (alpha * x * x).sin(),
            TrigKind::Cos => (alpha * x * x).cos(),
        }
    }
}

/// Decay threshold for the envelope diagnostic in [`fresnel_subtracted`].
const ENVELOPE_TOL: f64 = 1e-6;

/// Integrate a conditionally convergent oscillatory integrand over `[0, inf)`
/// by subtracting the pure Fresnel oscillation `trig(alpha x^2)`:
///
/// returns `int_0^inf (f(x) - trig(alpha x^2)) dx + sqrt(pi / (8 alpha))`.
///
/// The subtracted integrand must decay exponentially at `envelope_rate`; for
/// a `tanh`/`coth` envelope with hyperbolic scales `a` and `b` that rate is
/// `2 min(a, b)`.
pub fn fresnel_subtracted<F>(
    f: F,
    kind: TrigKind,
    alpha: f64,
    envelope_rate: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if alpha <= 0.0 {
        return Err(Error::domain("fresnel_subtracted requires alpha > 0"));
    }
    let decay = DecayHint::Exponential {
        rate: envelope_rate,
    };
    let r = decay.truncation_radius(cfg)?;

    let g = |x: f64| f(x) - kind.eval(alpha, x);

    // Sample a few points at the truncation radius: a wrong envelope leaves an
    // O(1) oscillating remainder there.
    let worst = (0..5)
        .map(|k| g(r * (1.0 - 1e-3 * k as f64)).abs())
        .fold(0.0f64, f64::max);
    if worst > ENVELOPE_TOL {
        return Err(Error::EnvelopeMismatch {
            alpha,
            radius: r,
            residual: worst,
        });
    }

    let res = integrate_finite(g, 0.0, r, cfg)?;
    let fresnel = (std::f64::consts::PI / (8.0 * alpha)).sqrt();
    Ok(QuadResult::new(
        res.value + fresnel,
        res.error_estimate,
        res.evaluations,
        cfg,
    ))
}
