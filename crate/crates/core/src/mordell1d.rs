//! One-dimensional Mordell integrals
//!
//! ```text
//! phi_a(t)   = int_0^inf cos(pi t x) / cosh(pi x) e^{-pi a x^2} dx
//! psi_a(t)   = int_0^inf sin(pi t x) / sinh(pi x) e^{-pi a x^2} dx
//! F_a(t)     = int_0^inf sin(pi t x) / tanh(pi x) e^{-pi a x^2} dx
//! ```
//!
//! for real and purely imaginary arguments t, plus the self-check of the
//! F transformation formula.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{self, gaussian_radius_with_drift, QuadConfig};
use crate::special::{cosh_ratio, coth_scaled, hyperbolic_ratio, sinc, sinhc};

use std::f64::consts::PI;

/// The argument of phi/psi/F: real or purely imaginary, tagged exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MordellArg {
    Real(f64),
    Imaginary(f64),
}

impl MordellArg {
    pub fn magnitude(&self) -> f64 {
        match *self {
            MordellArg::Real(m) | MordellArg::Imaginary(m) => m,
        }
    }

    pub fn neg(&self) -> Self {
        match *self {
            MordellArg::Real(m) => MordellArg::Real(-m),
            MordellArg::Imaginary(m) => MordellArg::Imaginary(-m),
        }
    }

    /// theta^2 as a complex number.
    fn square(&self) -> Complex64 {
        match *self {
            MordellArg::Real(m) => Complex64::new(m * m, 0.0),
            MordellArg::Imaginary(m) => Complex64::new(-m * m, 0.0),
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.magnitude().is_finite() {
            return Err(Error::domain("Mordell argument must be finite"));
        }
        Ok(())
    }
}

/// Gaussian weight and argument of a one-dimensional Mordell integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MordellParams {
    pub alpha: f64,
    pub theta: MordellArg,
}

impl MordellParams {
    pub fn new(alpha: f64, theta: MordellArg) -> Result<Self> {
        if alpha <= 0.0 {
            return Err(Error::domain("Mordell integrals require alpha > 0"));
        }
        theta.validate()?;
        Ok(MordellParams { alpha, theta })
    }

    /// Truncation radius with the hyperbolic growth of the imaginary-argument
    /// kernels folded in: for theta = i tau the ratio grows like
    /// e^{pi (|tau| - 1) x} before the Gaussian takes over.
    fn radius(&self, cfg: &QuadConfig) -> Result<f64> {
        let drift = match self.theta {
            MordellArg::Real(_) => 0.0,
            MordellArg::Imaginary(tau) => PI * (tau.abs() - 1.0).max(0.0),
        };
        gaussian_radius_with_drift(self.alpha, drift, cfg)
    }
}

/// phi_alpha(theta). Real-valued for both real and imaginary arguments; even
/// in theta by construction.
pub fn phi(p: MordellParams, cfg: &QuadConfig) -> Result<f64> {
    let r = p.radius(cfg)?;
    let res = match p.theta {
        MordellArg::Real(theta) => quad::integrate_truncated(
            |x| (PI * theta * x).cos() * (-PI * p.alpha * x * x).exp() / (PI * x).cosh(),
            r,
            cfg,
        )?,
        MordellArg::Imaginary(tau) => quad::integrate_truncated(
            |x| cosh_ratio(PI * tau, PI, x) * (-PI * p.alpha * x * x).exp(),
            r,
            cfg,
        )?,
    };
    Ok(res.real())
}

/// psi_alpha(theta). For theta = i tau the value is purely imaginary,
/// i * int_0^inf sinh(pi tau x)/sinh(pi x) e^{-pi a x^2} dx; the full complex
/// value is returned because the reduction formula squares it and the sign of
/// {psi(i tau)}^2 matters.
pub fn psi(p: MordellParams, cfg: &QuadConfig) -> Result<Complex64> {
    let r = p.radius(cfg)?;
    match p.theta {
        MordellArg::Real(theta) => {
            // sin(pi theta x)/sinh(pi x) = theta sinc(pi theta x)/sinhc(pi x)
            let res = quad::integrate_truncated(
                |x| {
                    theta * sinc(PI * theta * x) / sinhc(PI * x)
                        * (-PI * p.alpha * x * x).exp()
                },
                r,
                cfg,
            )?;
            Ok(Complex64::new(res.real(), 0.0))
        }
        MordellArg::Imaginary(tau) => {
            let res = quad::integrate_truncated(
                |x| {
                    hyperbolic_ratio(PI * tau, PI, x).unwrap_or(f64::NAN)
                        * (-PI * p.alpha * x * x).exp()
                },
                r,
                cfg,
            )?;
            Ok(Complex64::new(0.0, res.real()))
        }
    }
}

/// F_alpha(theta) = int_0^inf sin(pi theta x)/tanh(pi x) e^{-pi a x^2} dx.
/// Real for real theta, purely imaginary for imaginary theta.
pub fn big_f(p: MordellParams, cfg: &QuadConfig) -> Result<Complex64> {
    let drift = match p.theta {
        MordellArg::Real(_) => 0.0,
        MordellArg::Imaginary(tau) => PI * tau.abs(),
    };
    let r = gaussian_radius_with_drift(p.alpha, drift, cfg)?;
    match p.theta {
        MordellArg::Real(theta) => {
            // sin(pi theta x) coth(pi x) = theta sinc(pi theta x) coth_scaled(pi x)
            let res = quad::integrate_truncated(
                |x| {
                    theta * sinc(PI * theta * x) * coth_scaled(PI * x)
                        * (-PI * p.alpha * x * x).exp()
                },
                r,
                cfg,
            )?;
            Ok(Complex64::new(res.real(), 0.0))
        }
        MordellArg::Imaginary(tau) => {
            // sin(i pi tau x) = i sinh(pi tau x)
            let res = quad::integrate_truncated(
                |x| {
                    tau * sinhc(PI * tau * x) * coth_scaled(PI * x)
                        * (-PI * p.alpha * x * x).exp()
                },
                r,
                cfg,
            )?;
            Ok(Complex64::new(0.0, res.real()))
        }
    }
}

/// |F_a(t) - (-i/sqrt(a)) e^{-pi t^2/(4a)} F_{1/a}(i t / a)|, both sides
/// computed independently through [`big_f`].
pub fn big_f_transform_residual(alpha: f64, theta: MordellArg, cfg: &QuadConfig) -> Result<f64> {
    let lhs = big_f(MordellParams::new(alpha, theta)?, cfg)?;

    // i theta / alpha stays in the real-or-imaginary family
    let rhs_arg = match theta {
        MordellArg::Real(m) => MordellArg::Imaginary(m / alpha),
        MordellArg::Imaginary(m) => MordellArg::Real(-m / alpha),
    };
    let inner = big_f(MordellParams::new(1.0 / alpha, rhs_arg)?, cfg)?;
    let prefactor = Complex64::new(0.0, -1.0) / alpha.sqrt()
        * (-PI * theta.square() / (4.0 * alpha)).exp();
    Ok((lhs - prefactor * inner).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    /// Fixed-step midpoint rule on [0, cut], the independent oracle for the
    /// 1D evaluators.
    fn midpoint_oracle<F: Fn(f64) -> f64>(f: F, cut: f64, step: f64) -> f64 {
        let n = (cut / step).round() as u64;
        let mut sum = 0.0;
        for k in 0..n {
            sum += f((k as f64 + 0.5) * step);
        }
        sum * step
    }

    #[test]
    fn phi_reduces_to_gaussian_at_tau_one() {
        // cosh ratio is 1 at theta = i
        let p = MordellParams::new(1.0, MordellArg::Imaginary(1.0)).unwrap();
        assert!((phi(p, &cfg()).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn phi_at_zero_matches_midpoint_oracle() {
        let p = MordellParams::new(1.0, MordellArg::Real(0.0)).unwrap();
        let got = phi(p, &cfg()).unwrap();
        let oracle = midpoint_oracle(
            |x| (-PI * x * x).exp() / (PI * x).cosh(),
            12.0,
            1e-4,
        );
        assert!((got - oracle).abs() < 1e-8, "{got} vs {oracle}");
    }

    #[test]
    fn phi_at_i_half_matches_midpoint_oracle() {
        let p = MordellParams::new(1.0, MordellArg::Imaginary(0.5)).unwrap();
        let got = phi(p, &cfg()).unwrap();
        let oracle = midpoint_oracle(
            |x| (-PI * x * x).exp() * (PI * x / 2.0).cosh() / (PI * x).cosh(),
            12.0,
            1e-4,
        );
        assert!((got - oracle).abs() < 1e-8, "{got} vs {oracle}");
    }

    #[test]
    fn psi_vanishes_at_zero_argument() {
        for &alpha in &[0.5, 1.0, 3.0] {
            let p = MordellParams::new(alpha, MordellArg::Real(0.0)).unwrap();
            assert!(psi(p, &cfg()).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn psi_at_tau_one_is_half_i() {
        let p = MordellParams::new(1.0, MordellArg::Imaginary(1.0)).unwrap();
        let v = psi(p, &cfg()).unwrap();
        assert!(v.re.abs() < 1e-14);
        assert!((v.im - 0.5).abs() < 1e-10);
    }

    #[test]
    fn psi_third_argument_matches_sinh_triple_identity() {
        // sinh(pi x/3)/sinh(pi x) = 1/(2cosh(2 pi x/3) + 1)
        let p = MordellParams::new(3.0, MordellArg::Imaginary(1.0 / 3.0)).unwrap();
        let v = psi(p, &cfg()).unwrap();
        let oracle = midpoint_oracle(
            |x| (-3.0 * PI * x * x).exp() / (2.0 * (2.0 * PI * x / 3.0).cosh() + 1.0),
            12.0,
            1e-4,
        );
        assert!(v.re.abs() < 1e-14);
        assert!((v.im - oracle).abs() < 1e-8, "{} vs {oracle}", v.im);
    }

    #[test]
    fn big_f_zero_argument() {
        let p = MordellParams::new(1.0, MordellArg::Real(0.0)).unwrap();
        assert!(big_f(p, &cfg()).unwrap().norm() < 1e-12);
    }

    #[test]
    fn big_f_real_argument_matches_midpoint_oracle() {
        let p = MordellParams::new(1.0, MordellArg::Real(1.0)).unwrap();
        let got = big_f(p, &cfg()).unwrap();
        let oracle = midpoint_oracle(
            |x| {
                if x == 0.0 {
                    1.0
                } else {
                    (PI * x).sin() / (PI * x).tanh() * (-PI * x * x).exp()
                }
            },
            12.0,
            1e-4,
        );
        assert!(got.im.abs() < 1e-14);
        assert!((got.re - oracle).abs() < 1e-8);
    }

    #[test]
    fn big_f_imaginary_argument_is_purely_imaginary() {
        let p = MordellParams::new(2.0, MordellArg::Imaginary(0.5)).unwrap();
        let got = big_f(p, &cfg()).unwrap();
        assert!(got.re.abs() < 1e-15);
        assert!(got.im > 0.0);
    }

    #[test]
    fn transform_residual_on_spec_grid() {
        let args = [
            MordellArg::Real(0.25),
            MordellArg::Real(0.5),
            MordellArg::Real(1.0),
            MordellArg::Imaginary(0.25),
            MordellArg::Imaginary(0.75),
        ];
        for &alpha in &[0.5, 1.0, 2.0, 4.0] {
            for &theta in &args {
                let r = big_f_transform_residual(alpha, theta, &cfg()).unwrap();
                assert!(r <= 1e-8, "alpha = {alpha}, theta = {theta:?}: residual {r:.3e}");
            }
        }
    }

    #[test]
    fn transform_residual_trivial_at_zero() {
        let r = big_f_transform_residual(0.5, MordellArg::Real(0.0), &cfg()).unwrap();
        assert!(r < 1e-14);
    }

    #[test]
    fn parity_in_theta() {
        let cfg = cfg();
        for &theta in &[MordellArg::Real(0.7), MordellArg::Imaginary(0.4)] {
            let p = MordellParams::new(1.3, theta).unwrap();
            let m = MordellParams::new(1.3, theta.neg()).unwrap();
            assert_eq!(phi(p, &cfg).unwrap(), phi(m, &cfg).unwrap());
            assert_eq!(psi(p, &cfg).unwrap(), -psi(m, &cfg).unwrap());
        }
    }

    #[test]
    fn phi_at_zero_decreases_in_alpha() {
        let mut prev = f64::INFINITY;
        for &alpha in &[0.5, 1.0, 2.0, 4.0] {
            let v = phi(
                MordellParams::new(alpha, MordellArg::Real(0.0)).unwrap(),
                &cfg(),
            )
            .unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn psi_imaginary_branch_increases_in_tau() {
        let mut prev = 0.0;
        for &tau in &[0.2, 0.4, 0.6, 0.8, 1.0] {
            let v = psi(
                MordellParams::new(1.0, MordellArg::Imaginary(tau)).unwrap(),
                &cfg(),
            )
            .unwrap();
            assert!(v.im > prev, "tau = {tau}");
            prev = v.im;
        }
    }

    #[test]
    fn nonpositive_alpha_is_rejected() {
        assert!(MordellParams::new(0.0, MordellArg::Real(1.0)).is_err());
        assert!(MordellParams::new(-1.0, MordellArg::Real(1.0)).is_err());
    }
}
