//! Conditionally convergent type II integrals, their closed forms, the
//! series representation of the sech-weighted Fresnel-type integral, and the
//! Poisson-summation machinery behind it.
//!
//! Every conditionally convergent left-hand side goes through
//! [`quad::fresnel_subtracted`]: naive truncation of `sin(alpha x^2)`-type
//! tails oscillates with O(1/sqrt(R)) amplitude and would need astronomical
//! radii, while the subtracted remainder decays exponentially.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{self, DecayHint, QuadConfig, TrigKind};
use crate::special::{cosh_ratio, coth_scaled, sinc, sinhc};

use std::f64::consts::PI;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha <= 0.0 {
        return Err(Error::domain("type II integrals require alpha > 0"));
    }
    Ok(())
}

/// int_0^inf sin(alpha x^2) / (tanh(pi x) tanh(alpha x)) dx  =  1/4 + pi/(4 alpha).
pub fn int_coth_coth(alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    check_alpha(alpha)?;
    // sin(a x^2) coth(pi x) coth(a x) = sinc(a x^2) coth_scaled(pi x) coth_scaled(a x) / pi
    let f = move |x: f64| sinc(alpha * x * x) * coth_scaled(PI * x) * coth_scaled(alpha * x) / PI;
    let rate = 2.0 * PI.min(alpha);
    Ok(quad::fresnel_subtracted(f, TrigKind::Sin, alpha, rate, cfg)?.real())
}

/// int_0^inf sin(2 alpha x^2) / (tanh(pi x) tanh(alpha x)) dx  =  1/4 + pi/(4 alpha).
pub fn int_coth_coth_double(alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let f = move |x: f64| {
        2.0 * sinc(2.0 * alpha * x * x) * coth_scaled(PI * x) * coth_scaled(alpha * x) / PI
    };
    let rate = 2.0 * PI.min(alpha);
    Ok(quad::fresnel_subtracted(f, TrigKind::Sin, 2.0 * alpha, rate, cfg)?.real())
}

/// int_0^inf tanh(alpha x)/tanh(pi x) sin(2 alpha x^2) dx  =  1/4.
pub fn int_tanh_coth(alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let f = move |x: f64| {
        (2.0 * alpha / PI) * x * sinc(2.0 * alpha * x * x) * coth_scaled(PI * x)
            * (alpha * x).tanh()
    };
    let rate = 2.0 * PI.min(alpha);
    Ok(quad::fresnel_subtracted(f, TrigKind::Sin, 2.0 * alpha, rate, cfg)?.real())
}

/// int_0^inf sin(alpha x^2) / (sinh(pi x) tanh(alpha x)) dx  =  1/4.
///
/// Absolutely convergent thanks to the csch factor; no Fresnel subtraction.
pub fn int_csch_coth(alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let f = move |x: f64| {
        sinc(alpha * x * x) * coth_scaled(alpha * x) / (PI * sinhc(PI * x))
    };
    Ok(quad::integrate_semi_infinite(f, DecayHint::Exponential { rate: PI }, cfg)?.real())
}

/// int_0^inf tanh(pi x) tanh(alpha x) cos(2 alpha x^2) dx  =  0.
pub fn int_tanh_tanh_cos(alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let f = move |x: f64| (PI * x).tanh() * (alpha * x).tanh() * (2.0 * alpha * x * x).cos();
    let rate = 2.0 * PI.min(alpha);
    Ok(quad::fresnel_subtracted(f, TrigKind::Cos, 2.0 * alpha, rate, cfg)?.real())
}

/// Which sech-family type I closed form to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoshRatioKind {
    /// int_0^inf cosh(alpha x)/cosh(pi x) cos(alpha x^2) dx = cos(alpha/4)/2,
    /// for -pi < alpha < pi.
    ClosedForm3,
    /// int_0^inf cosh(pi x) cosh(alpha x)/(cosh(2 pi x) + cosh(2b))
    /// cos(alpha x^2) dx = cos(alpha/4 + alpha b^2/pi^2) / (4 cosh b).
    Glasser,
}

/// Evaluate one of the type I cosh-ratio integrals and its closed form;
/// returns `(lhs, rhs)`.
pub fn cosh_ratio_cos(alpha: f64, kind: CoshRatioKind, b: f64, cfg: &QuadConfig) -> Result<(f64, f64)> {
    match kind {
        CoshRatioKind::ClosedForm3 => {
            if alpha.abs() >= PI {
                return Err(Error::domain(
                    "cosh(alpha x)/cosh(pi x) is non-integrable for |alpha| >= pi",
                ));
            }
            let rate = PI - alpha.abs();
            let lhs = quad::integrate_semi_infinite(
                move |x| cosh_ratio(alpha, PI, x) * (alpha * x * x).cos(),
                DecayHint::Exponential { rate },
                cfg,
            )?
            .real();
            Ok((lhs, 0.5 * (alpha / 4.0).cos()))
        }
        CoshRatioKind::Glasser => {
            check_alpha(alpha)?;
            if alpha >= PI {
                // absolutely convergent quadrature needs the e^{(alpha-pi)x}
                // envelope to decay
                return Err(Error::domain(
                    "direct quadrature of the Glasser form requires alpha < pi",
                ));
            }
            let rate = PI - alpha;
            let lhs = quad::integrate_semi_infinite(
                move |x| {
                    let num = (PI * x).cosh() * (alpha * x).cosh();
                    let den = (2.0 * PI * x).cosh() + (2.0 * b).cosh();
                    num / den * (alpha * x * x).cos()
                },
                DecayHint::Exponential { rate },
                cfg,
            )?
            .real();
            let rhs = (alpha / 4.0 + alpha * b * b / (PI * PI)).cos() / (4.0 * b.cosh());
            Ok((lhs, rhs))
        }
    }
}

/// Parameters of the two-series representation: weight `alpha`, cosine
/// frequency `b`, truncation `terms`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesParams {
    pub alpha: f64,
    pub b: f64,
    pub terms: usize,
}

impl SeriesParams {
    pub fn new(alpha: f64, b: f64) -> Result<Self> {
        let terms = Self::default_terms(alpha, b)?;
        Ok(SeriesParams { alpha, b, terms })
    }

    /// Truncation tied to the slower of the two geometric decays, capped at 1e5.
    pub fn default_terms(alpha: f64, b: f64) -> Result<usize> {
        if alpha <= 0.0 || b <= 0.0 {
            return Err(Error::domain("series parameters require alpha > 0, b > 0"));
        }
        let slow = b.min(PI * b / alpha);
        Ok(((40.0 / slow).ceil() as usize).clamp(1, 100_000))
    }

    /// Geometric bound on the dropped tail of both series.
    pub fn remainder_bound(&self) -> f64 {
        let k = self.terms as f64;
        let q1 = (-self.b).exp();
        let q2 = (-PI * self.b / self.alpha).exp();
        (-self.b * (k + 0.5)).exp() / (1.0 - q1)
            + (PI / self.alpha).sqrt() * (-PI * self.b / self.alpha * (k + 0.5)).exp() / (1.0 - q2)
    }
}

/// int_0^inf e^{i alpha x^2}/cosh(pi x) cos(bx) dx by direct quadrature.
///
/// Valid for moderate alpha; beyond 4 pi the quadrature enters the
/// stationary-phase regime and is refused.
pub fn series_lhs(alpha: f64, b: f64, cfg: &QuadConfig) -> Result<Complex64> {
    check_alpha(alpha)?;
    if b < 0.0 {
        return Err(Error::domain("series_lhs requires b >= 0"));
    }
    if alpha > 4.0 * PI {
        return Err(Error::domain("series_lhs quadrature is limited to alpha <= 4 pi"));
    }
    let f = move |x: f64| {
        Complex64::new(0.0, alpha * x * x).exp() * ((b * x).cos() / (PI * x).cosh())
    };
    Ok(quad::integrate_semi_infinite_complex(f, DecayHint::Exponential { rate: PI }, cfg)?.value)
}

/// The two-series right-hand side, summed to `p.terms` with the analytic
/// remainder bound returned alongside the value.
pub fn series_rhs(p: SeriesParams) -> Result<(Complex64, f64)> {
    if p.alpha <= 0.0 {
        return Err(Error::domain("series_rhs requires alpha > 0"));
    }
    if p.b <= 0.0 {
        return Err(Error::domain(
            "series_rhs requires b > 0 (the second series' bound degenerates at b = 0)",
        ));
    }
    let mut s1 = Complex64::new(0.0, 0.0);
    let mut s2 = Complex64::new(0.0, 0.0);
    for k in 0..p.terms {
        let half = k as f64 + 0.5;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s1 += sign * Complex64::new(-p.b * half, -p.alpha * half * half).exp();
        s2 += sign
            * Complex64::new(
                -PI * p.b / p.alpha * half,
                PI / 4.0 - p.b * p.b / (4.0 * p.alpha) + PI * PI / p.alpha * half * half,
            )
            .exp();
    }
    let value = s1 + (PI / p.alpha).sqrt() * s2;
    Ok((value, p.remainder_bound()))
}

/// Closed form of the alpha = pi special case,
/// `(e^{-i pi/4} + i e^{-i b^2/(4 pi)}) / (2 cosh(b/2))`.
pub fn series_special_case_pi(b: f64) -> Complex64 {
    let num = Complex64::new(0.0, -PI / 4.0).exp()
        + Complex64::new(0.0, 1.0) * Complex64::new(0.0, -b * b / (4.0 * PI)).exp();
    num / (2.0 * (b / 2.0).cosh())
}

/// | int_0^inf sin(alpha x^2)/(sinh(pi x) sinh(alpha x)) cos(bx) dx
///   - |series_lhs(alpha, b)|^2 |.
pub fn abs_square_identity_residual(alpha: f64, b: f64, cfg: &QuadConfig) -> Result<f64> {
    check_alpha(alpha)?;
    if b <= 0.0 {
        return Err(Error::domain("abs_square_identity requires b > 0"));
    }
    // sin(a x^2)/(sinh(pi x) sinh(a x)) = sinc(a x^2)/(pi sinhc(pi x) sinhc(a x))
    let f = move |x: f64| {
        sinc(alpha * x * x) / (PI * sinhc(PI * x) * sinhc(alpha * x)) * (b * x).cos()
    };
    let lhs = quad::integrate_semi_infinite(f, DecayHint::Exponential { rate: PI + alpha }, cfg)?
        .real();
    let rhs = series_lhs(alpha, b, cfg)?.norm_sqr();
    Ok((lhs - rhs).abs())
}

/// Residual of the transformation formula
/// sqrt(2) int cos(alpha x^2)/(cosh(pi x) cosh(alpha x)) dx
///   = int cosh(pi x/2) cosh(alpha x/2)/(cosh(pi x) cosh(alpha x)) dx.
pub fn r2_residual(alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let lhs = quad::integrate_semi_infinite(
        move |x| (alpha * x * x).cos() / ((PI * x).cosh() * (alpha * x).cosh()),
        DecayHint::Exponential { rate: PI + alpha },
        cfg,
    )?
    .real()
        * 2.0f64.sqrt();
    let rhs = r2_rhs(PI, alpha, cfg)?;
    Ok((lhs - rhs).abs())
}

/// The self-reciprocal-product right-hand side of the transformation formula,
/// with the two cosh scales explicit (the integrand is symmetric in them).
pub fn r2_rhs(scale_a: f64, scale_b: f64, cfg: &QuadConfig) -> Result<f64> {
    let f = move |x: f64| cosh_ratio(scale_a / 2.0, scale_a, x) * cosh_ratio(scale_b / 2.0, scale_b, x);
    Ok(quad::integrate_semi_infinite(
        f,
        DecayHint::Exponential {
            rate: (scale_a + scale_b) / 2.0,
        },
        cfg,
    )?
    .real())
}

/// Euler-transformed sum of the alternating series sum (-1)^k t_k: repeated
/// averaging of partial sums, which converges geometrically when t_k depends
/// smoothly on k.
fn euler_alternating_sum(terms: &[f64]) -> f64 {
    let mut rows: Vec<f64> = Vec::with_capacity(terms.len());
    let mut partial = 0.0;
    for (k, t) in terms.iter().enumerate() {
        partial += if k % 2 == 0 { *t } else { -*t };
        rows.push(partial);
    }
    while rows.len() > 1 {
        for i in 0..rows.len() - 1 {
            rows[i] = 0.5 * (rows[i] + rows[i + 1]);
        }
        rows.pop();
    }
    rows[0]
}

/// Number of sine-transform terms fed to the Euler transform.
const POISSON_TERMS: usize = 48;

/// Residual of the Poisson-summation identity
/// sum_{k>=0} (-1)^k int_0^inf f(y) sin(pi (2k+1) y) dy
///   = (1/2) sum_{k>=0} (-1)^k f(k + 1/2).
pub fn poisson_residual<F>(f: F, decay: DecayHint, cfg: &QuadConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let radius = decay.truncation_radius(cfg)?;

    let mut terms = Vec::with_capacity(POISSON_TERMS);
    for k in 0..POISSON_TERMS {
        let omega = PI * (2 * k + 1) as f64;
        let t = quad::integrate_finite(|y| f(y) * (omega * y).sin(), 0.0, radius, cfg)?;
        terms.push(t.real());
    }
    let lhs = euler_alternating_sum(&terms);

    let mut rhs = 0.0;
    let mut k = 0usize;
    loop {
        let y = k as f64 + 0.5;
        if y > radius {
            break;
        }
        rhs += if k % 2 == 0 { f(y) } else { -f(y) };
        k += 1;
    }
    rhs *= 0.5;

    Ok((lhs - rhs).abs())
}

/// The explicit solution of the resolvent ODE for the k-th partial fraction:
/// closed-form initial term plus the error-function-type quadrature term.
pub fn ik_value(k: u32, alpha: f64, b: f64, cfg: &QuadConfig) -> Result<Complex64> {
    check_alpha(alpha)?;
    if b <= 0.0 {
        return Err(Error::domain("ik_value requires b > 0"));
    }
    let half = k as f64 + 0.5;
    let m = 2.0 * k as f64 + 1.0;
    let first = 2.0 * PI / m * Complex64::new(-b * half, -alpha * half * half).exp();

    let rate = b / alpha.sqrt();
    let osc = quad::integrate_semi_infinite_complex(
        |y| {
            Complex64::new(-rate * y, y * y).exp() * (y * alpha.sqrt() * m).sin()
        },
        DecayHint::Exponential { rate },
        cfg,
    )?
    .value;
    let second = 4.0 * PI.sqrt() / m
        * Complex64::new(0.0, PI / 4.0 - b * b / (4.0 * alpha)).exp()
        * osc;
    Ok(first + second)
}

/// Finite-difference step used in [`ik_solution_residual`].
const IK_FD_STEP: f64 = 1e-4;

/// ODE residual |I_k'(alpha) + i (k+1/2)^2 I_k(alpha)
///   - sqrt(pi/alpha) e^{3 i pi/4 - i b^2/(4 alpha)}| with a central
/// difference for the derivative.
pub fn ik_solution_residual(k: u32, alpha: f64, b: f64, cfg: &QuadConfig) -> Result<f64> {
    check_alpha(alpha)?;
    let h = IK_FD_STEP;
    let plus = ik_value(k, alpha + h, b, cfg)?;
    let minus = ik_value(k, alpha - h, b, cfg)?;
    let deriv = (plus - minus) / (2.0 * h);
    let here = ik_value(k, alpha, b, cfg)?;
    let half = k as f64 + 0.5;
    let rhs = (PI / alpha).sqrt()
        * Complex64::new(0.0, 3.0 * PI / 4.0 - b * b / (4.0 * alpha)).exp();
    Ok((deriv + Complex64::new(0.0, half * half) * here - rhs).norm())
}

/// Truncated partial-fraction expansion of 1/cosh(pi x):
/// sum_{k<=terms} (-1)^k (2k+1) / (pi (x^2 + (k+1/2)^2)).
pub fn partial_fraction_sech(x: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    for k in 0..=terms {
        let half = k as f64 + 0.5;
        let term = (2 * k + 1) as f64 / (PI * (x * x + half * half));
        sum += if k % 2 == 0 { term } else { -term };
    }
    sum
}
