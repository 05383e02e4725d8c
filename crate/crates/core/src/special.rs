//! Numerically stable hyperbolic kernels, Fresnel closed forms, and the
//! self-reciprocal test functions that every integrand in the crate is built
//! from.

use crate::error::{Error, Result};
use crate::quad::{self, DecayHint, QuadConfig};

/// sin(u)/u with the removable singularity filled in.
pub(crate) fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

/// sinh(u)/u with the removable singularity filled in.
pub(crate) fn sinhc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 + u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sinh() / u
    }
}

/// x * coth(x), the stable building block for every 1/tanh kernel.
///
/// Even, >= 1, with value 1 at x = 0. Below |x| = 1e-2 a truncated Taylor
/// series keeps the two branches in agreement to machine precision.
pub fn coth_scaled(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-2 {
        let x2 = x * x;
        1.0 + x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0
    } else {
        x * x.cosh() / x.sinh()
    }
}

/// sinh(num_scale * x) / sinh(den_scale * x), stable for large |x|.
///
/// Evaluated through the exponential-difference form
/// `e^{|u|-|v|} (1 - e^{-2|u|}) / (1 - e^{-2|v|})`, which neither overflows
/// nor loses the small-argument limit; at x = 0 the ratio of scales is
/// returned. Overflow is signalled only when the true value overflows.
pub fn hyperbolic_ratio(num_scale: f64, den_scale: f64, x: f64) -> Result<f64> {
    if den_scale == 0.0 {
        return Err(Error::domain("hyperbolic_ratio requires den_scale != 0"));
    }
    if x == 0.0 {
        return Ok(num_scale / den_scale);
    }
    let u = num_scale * x;
    let v = den_scale * x;
    if u == 0.0 {
        return Ok(0.0);
    }
    let diff = u.abs() - v.abs();
    if diff > 709.0 {
        return Err(Error::Overflow(format!(
            "sinh({num_scale}*{x})/sinh({den_scale}*{x}) exceeds f64 range"
        )));
    }
    let sign = u.signum() * v.signum();
    let num = -(-2.0 * u.abs()).exp_m1();
    let den = -(-2.0 * v.abs()).exp_m1();
    Ok(sign * diff.exp() * num / den)
}

/// cosh(num_scale * x) / cosh(den_scale * x) without overflow.
pub fn cosh_ratio(num_scale: f64, den_scale: f64, x: f64) -> f64 {
    let u = (num_scale * x).abs();
    let v = (den_scale * x).abs();
    if u.max(v) < 350.0 {
        u.cosh() / v.cosh()
    } else {
        (u - v).exp() * (1.0 + (-2.0 * u).exp()) / (1.0 + (-2.0 * v).exp())
    }
}

/// The common value sqrt(pi / (8 alpha)) of both Fresnel integrals.
pub fn fresnel_value(alpha: f64) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::domain("fresnel_value requires alpha > 0"));
    }
    Ok((std::f64::consts::PI / (8.0 * alpha)).sqrt())
}

/// sin(pi gamma x y) / (tanh(a_scale x) tanh(b_scale y)), finite and smooth on
/// the axes. At (0, 0) the value is pi gamma / (a_scale b_scale).
pub fn kernel_sin2d(x: f64, y: f64, gamma: f64, a_scale: f64, b_scale: f64) -> f64 {
    let pi = std::f64::consts::PI;
    pi * gamma * sinc(pi * gamma * x * y) * coth_scaled(a_scale * x) * coth_scaled(b_scale * y)
        / (a_scale * b_scale)
}

/// A function equal to its own cosine Fourier transform under the
/// sqrt(2/pi) normalization, packaged with its decay hint.
pub struct SelfReciprocalFn {
    pub eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub value_at_zero: f64,
    pub decay: DecayHint,
}

impl SelfReciprocalFn {
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }
}

/// e^{-x^2/2}, the Gaussian eigenfunction of the cosine Fourier transform.
pub fn gaussian_sech_eigenfunction() -> SelfReciprocalFn {
    SelfReciprocalFn {
        eval: Box::new(|x| (-0.5 * x * x).exp()),
        value_at_zero: 1.0,
        decay: DecayHint::Gaussian {
            alpha: 0.5 / std::f64::consts::PI,
        },
    }
}

/// 1/cosh(sqrt(pi/2) x), the hyperbolic-secant eigenfunction in its standard
/// normalization.
pub fn sech_eigenfunction() -> SelfReciprocalFn {
    let s = (std::f64::consts::PI / 2.0).sqrt();
    SelfReciprocalFn {
        eval: Box::new(move |x| 1.0 / (s * x).cosh()),
        value_at_zero: 1.0,
        decay: DecayHint::Exponential { rate: s },
    }
}

/// |sqrt(2/pi) int_0^inf f(x) cos(bx) dx - f(b)|: zero (to quadrature
/// accuracy) exactly when f is self-reciprocal.
pub fn eigen_residual(f: &SelfReciprocalFn, b: f64, cfg: &QuadConfig) -> Result<f64> {
    if b < 0.0 {
        return Err(Error::domain("eigen_residual requires b >= 0"));
    }
    let transform =
        quad::integrate_semi_infinite(|x| f.eval(x) * (b * x).cos(), f.decay, cfg)?;
    let norm = (2.0 / std::f64::consts::PI).sqrt();
    Ok((norm * transform.real() - f.eval(b)).abs())
}
