//! Finite-(epsilon, omega) verification of the regularized kernel lemmas:
//! the divergent double integrals' 1D line-integral representations, their
//! residue-theorem closed forms, the Sokhotski-Plemelj limit, and the
//! cosh/sinh sine-transform building block.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{self, DecayHint, QuadConfig};
use crate::special::{sinc, sinhc};

use std::f64::consts::PI;

/// Regularization parameters. `coupled_n` optionally enforces the coupling
/// 2 epsilon = omega n used by the reduction theorem's proof.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegParams {
    pub epsilon: f64,
    pub omega: f64,
    pub coupled_n: Option<u32>,
}

impl RegParams {
    pub fn new(epsilon: f64, omega: f64) -> Result<Self> {
        let p = RegParams {
            epsilon,
            omega,
            coupled_n: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn coupled(epsilon: f64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("coupling index must be positive"));
        }
        let p = RegParams {
            epsilon,
            omega: 2.0 * epsilon / n as f64,
            coupled_n: Some(n),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::domain("epsilon must lie in (0, 1)"));
        }
        if !(self.omega > 0.0 && self.omega < 1.0) {
            return Err(Error::domain("omega must lie in (0, 1)"));
        }
        if let Some(n) = self.coupled_n {
            if (2.0 * self.epsilon - self.omega * n as f64).abs() > 1e-15 {
                return Err(Error::domain("coupling 2 epsilon = omega n violated"));
            }
        }
        Ok(())
    }

    /// The line integrands decay like e^{-epsilon x}; below 1e-3 the
    /// truncation radius grows past ~1e4 and quadrature cost explodes.
    pub fn decay_warning(&self) -> Option<&'static str> {
        (self.epsilon < 1e-3)
            .then_some("epsilon < 1e-3: line-integral truncation radius is very large")
    }
}

/// Switch to the exponential-factored branch before cosh overflows.
const FACTOR_SWITCH: f64 = 300.0;

/// (cosh x - cosh b cos(pi omega))
///   / ((cosh(x+b) - cos(pi omega)) (cosh(x-b) - cos(pi omega)))
/// times 2 cosh((1-eps) x), even in x, stable for large x where everything
/// is factored through e^{-eps x}.
fn lemma1_kernel(x: f64, b: f64, reg: RegParams) -> f64 {
    let c = (PI * reg.omega).cos();
    let e = reg.epsilon;
    if x < FACTOR_SWITCH {
        let num = x.cosh() - b.cosh() * c;
        let den = ((x + b).cosh() - c) * ((x - b).cosh() - c);
        num / den * 2.0 * ((1.0 - e) * x).cosh()
    } else {
        // num ~ e^x/2 (1 - 2 c cosh(b) e^{-x}), den ~ e^{2x}/4 (1 - 2c e^{-(x+b)})(1 - 2c e^{-(x-b)})
        let nf = 1.0 - 2.0 * c * b.cosh() * (-x).exp() + (-2.0 * x).exp();
        let df = (1.0 - 2.0 * c * (-(x + b)).exp() + (-2.0 * (x + b)).exp())
            * (1.0 - 2.0 * c * (-(x - b)).exp() + (-2.0 * (x - b)).exp());
        2.0 * nf / df * ((-e * x).exp() + (-(2.0 - e) * x).exp())
    }
}

/// The regularized double integral of the first lemma, reduced to its
/// absolutely convergent one-dimensional representation
/// (1/pi) int_0^inf kernel(x) cos(ax) dx.
pub fn lemma1_line_integral(a: f64, b: f64, reg: RegParams, cfg: &QuadConfig) -> Result<f64> {
    reg.validate()?;
    let f = move |x: f64| lemma1_kernel(x, b, reg) * (a * x).cos() / (2.0 * PI);
    let hint = DecayHint::Exponential { rate: reg.epsilon };
    Ok(quad::integrate_semi_infinite(f, hint, cfg)?.real())
}

/// Residue-theorem closed form of the first lemma's regularized integral.
pub fn lemma1_closed_form(a: f64, b: f64, reg: RegParams) -> Result<f64> {
    reg.validate()?;
    let p = Complex64::new(PI * a, PI * reg.epsilon);
    let s = Complex64::new(1.0 - reg.epsilon, a);
    let bm = Complex64::new(b, -PI * reg.omega);
    let bp = Complex64::new(b, PI * reg.omega);
    let v = (p - s * bm).sinh() / (2.0 * p.sinh() * bm.sinh())
        - (p + s * bp).sinh() / (2.0 * p.sinh() * bp.sinh());
    Ok(v.im)
}

/// Half-argument analogue of [`lemma1_kernel`] for the second lemma:
/// (cosh 2x - cosh b cos(pi omega)) cosh x
///   / ((cosh(2x+b) - cos(pi omega)) (cosh(2x-b) - cos(pi omega)))
/// times 2 cosh((1-eps) x).
fn lemma2_kernel(x: f64, b: f64, reg: RegParams) -> f64 {
    let c = (PI * reg.omega).cos();
    let e = reg.epsilon;
    if x < FACTOR_SWITCH / 2.0 {
        let num = ((2.0 * x).cosh() - b.cosh() * c) * x.cosh();
        let den = ((2.0 * x + b).cosh() - c) * ((2.0 * x - b).cosh() - c);
        num / den * 2.0 * ((1.0 - e) * x).cosh()
    } else {
        let nf = (1.0 - 2.0 * c * b.cosh() * (-2.0 * x).exp() + (-4.0 * x).exp())
            * (1.0 + (-2.0 * x).exp());
        let df = (1.0 - 2.0 * c * (-(2.0 * x + b)).exp() + (-2.0 * (2.0 * x + b)).exp())
            * (1.0 - 2.0 * c * (-(2.0 * x - b)).exp() + (-2.0 * (2.0 * x - b)).exp());
        nf / df * ((-e * x).exp() + (-(2.0 - e) * x).exp())
    }
}

/// Line-integral form of the second lemma: (2/pi) int_0^inf k(x) cos(ax) dx
/// with the half-argument kernel.
pub fn lemma2_line_integral(a: f64, b: f64, reg: RegParams, cfg: &QuadConfig) -> Result<f64> {
    reg.validate()?;
    let f = move |x: f64| lemma2_kernel(x, b, reg) * (a * x).cos() / PI;
    let hint = DecayHint::Exponential { rate: reg.epsilon };
    Ok(quad::integrate_semi_infinite(f, hint, cfg)?.real())
}

/// Residue-theorem closed form of the second lemma's regularized integral.
pub fn lemma2_closed_form(a: f64, b: f64, reg: RegParams) -> Result<f64> {
    reg.validate()?;
    let p = Complex64::new(PI * a, PI * reg.epsilon);
    let s = Complex64::new(1.0 - reg.epsilon, a);
    let bm = Complex64::new(b, -PI * reg.omega);
    let bp = Complex64::new(b, PI * reg.omega);
    let v = ((p - s * bm) / 2.0).sinh() / (4.0 * (p / 2.0).sinh() * (bm / 2.0).sinh())
        - ((p + s * bp) / 2.0).sinh() / (4.0 * (p / 2.0).sinh() * (bp / 2.0).sinh());
    Ok(v.im)
}

/// The (delta-free) limit the first lemma's closed form approaches as the
/// regulators vanish, for a != 0 and b != 0.
pub fn lemma1_limit(a: f64, b: f64) -> f64 {
    -(a * b).sin() / ((PI * a).tanh() * b.tanh())
}

/// The corresponding limit for the second lemma.
pub fn lemma2_limit(a: f64, b: f64) -> f64 {
    -(a * b / 2.0).sin() / (2.0 * (PI * a / 2.0).tanh() * (b / 2.0).tanh())
}

/// Richardson steps for the vanishing-regulator limit checks. The closed
/// forms converge first-order in epsilon with a visible second-order tail,
/// so the extrapolation pair sits at 1e-4/1e-5 where the tail is below 1e-8.
const LIMIT_EPS: [f64; 2] = [1e-4, 1e-5];

fn richardson_limit<F>(closed: F) -> Result<f64>
where
    F: Fn(RegParams) -> Result<f64>,
{
    let coarse = closed(RegParams::new(LIMIT_EPS[0], LIMIT_EPS[0])?)?;
    let fine = closed(RegParams::new(LIMIT_EPS[1], LIMIT_EPS[1])?)?;
    Ok(fine + (fine - coarse) / 9.0)
}

/// | (first-order Richardson limit of lemma1_closed_form as eps = omega -> 0)
///   - lemma1_limit(a, b) |.
pub fn lemma1_limit_residual(a: f64, b: f64) -> Result<f64> {
    let extrap = richardson_limit(|reg| lemma1_closed_form(a, b, reg))?;
    Ok((extrap - lemma1_limit(a, b)).abs())
}

/// The lemma-2 analogue of [`lemma1_limit_residual`].
pub fn lemma2_limit_residual(a: f64, b: f64) -> Result<f64> {
    let extrap = richardson_limit(|reg| lemma2_closed_form(a, b, reg))?;
    Ok((extrap - lemma2_limit(a, b)).abs())
}

/// | int g(x)/sinh(x + i eps) dx  -  ( P int g(x)/sinh(x) dx - i pi g(0) ) |:
/// the Sokhotski-Plemelj identity at finite regulator; O(eps) for smooth g.
pub fn sp_limit_residual<G>(
    g: G,
    decay: DecayHint,
    epsilon: f64,
    cfg: &QuadConfig,
) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    if epsilon <= 0.0 {
        return Err(Error::domain("sp_limit_residual requires epsilon > 0"));
    }
    let radius = decay.truncation_radius(cfg)?;

    let ie = Complex64::new(0.0, epsilon);
    let lhs = quad::integrate_finite_complex(
        |x| Complex64::new(g(x), 0.0) / (Complex64::new(x, 0.0) + ie).sinh(),
        -radius,
        radius,
        cfg,
    )?
    .value;

    let pv = quad::principal_value(
        |x| g(x) / x.sinh(),
        -radius,
        radius,
        0.0,
        0.5,
        cfg,
    )?
    .value;
    let rhs = pv - Complex64::new(0.0, PI * g(0.0));

    Ok((lhs - rhs).norm())
}

/// | int_0^inf cosh(theta y) sin(a y)/sinh(pi y) dy
///   - sinh(a) / (2 (cosh a + cos theta)) |.
pub fn gr_39818_residual(theta: f64, a: f64, cfg: &QuadConfig) -> Result<f64> {
    if theta <= 0.0 || theta >= PI {
        return Err(Error::domain("the sine transform requires 0 < theta < pi"));
    }
    if a <= 0.0 {
        return Err(Error::domain("the sine transform requires a > 0"));
    }
    // sin(ay)/sinh(pi y) = (a/pi) sinc(ay)/sinhc(pi y)
    let f = move |y: f64| (theta * y).cosh() * (a / PI) * sinc(a * y) / sinhc(PI * y);
    let hint = DecayHint::Exponential { rate: PI - theta };
    let lhs = quad::integrate_semi_infinite(f, hint, cfg)?.real();
    let rhs = a.sinh() / (2.0 * (a.cosh() + theta.cos()));
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn params_validate() {
        assert!(RegParams::new(0.1, 0.05).is_ok());
        assert!(RegParams::new(0.0, 0.5).is_err());
        assert!(RegParams::new(0.5, 1.0).is_err());
        let c = RegParams::coupled(0.1, 4).unwrap();
        assert_eq!(c.omega, 0.05);
        assert!(c.validate().is_ok());
        assert!(RegParams::coupled(0.1, 0).is_err());
        assert!(RegParams::new(5e-4, 0.5).unwrap().decay_warning().is_some());
        assert!(RegParams::new(0.1, 0.5).unwrap().decay_warning().is_none());
    }

    #[test]
    fn lemma1_oracle_pair() {
        let reg = RegParams::new(0.1, 0.05).unwrap();
        let line = lemma1_line_integral(0.5, 0.7, reg, &cfg()).unwrap();
        let closed = lemma1_closed_form(0.5, 0.7, reg).unwrap();
        assert!((line - closed).abs() <= 1e-9, "{line} vs {closed}");
    }

    #[test]
    fn lemma1_oracle_grid() {
        // 3 x 3 x 2 grid of (a, b, regulators)
        let regs = [
            RegParams::new(0.1, 0.05).unwrap(),
            RegParams::new(0.25, 0.3).unwrap(),
        ];
        for &a in &[0.5, 1.0, 2.0] {
            for &b in &[0.3, 0.7, 1.5] {
                for &reg in &regs {
                    let line = lemma1_line_integral(a, b, reg, &cfg()).unwrap();
                    let closed = lemma1_closed_form(a, b, reg).unwrap();
                    assert!(
                        (line - closed).abs() <= 1e-8,
                        "a={a} b={b} eps={}: {line} vs {closed}",
                        reg.epsilon
                    );
                }
            }
        }
    }

    #[test]
    fn lemma1_parity() {
        let reg = RegParams::new(0.2, 0.1).unwrap();
        let base = lemma1_line_integral(0.8, 0.6, reg, &cfg()).unwrap();
        assert!((lemma1_line_integral(0.8, -0.6, reg, &cfg()).unwrap() - base).abs() < 1e-10);
        assert!((lemma1_line_integral(-0.8, 0.6, reg, &cfg()).unwrap() - base).abs() < 1e-10);
    }

    #[test]
    fn lemma1_small_regulator_limit() {
        let reg = RegParams::new(1e-4, 1e-4).unwrap();
        let v = lemma1_closed_form(1.0, 1.0, reg).unwrap();
        assert!((v - lemma1_limit(1.0, 1.0)).abs() <= 1e-3);
    }

    #[test]
    fn lemma1_richardson_limit() {
        assert!(lemma1_limit_residual(2.0, 0.5).unwrap() <= 1e-6);
        assert!(lemma1_limit_residual(1.0, 1.0).unwrap() <= 1e-6);
    }

    #[test]
    fn lemma2_richardson_limit() {
        assert!(lemma2_limit_residual(2.0, 0.5).unwrap() <= 1e-6);
        assert!(lemma2_limit_residual(1.0, 1.0).unwrap() <= 1e-6);
    }

    #[test]
    fn lemma2_oracle_pair_and_grid() {
        let regs = [
            RegParams::new(0.1, 0.05).unwrap(),
            RegParams::new(0.25, 0.3).unwrap(),
        ];
        for &a in &[0.5, 1.0, 2.0] {
            for &b in &[0.3, 0.7, 1.5] {
                for &reg in &regs {
                    let line = lemma2_line_integral(a, b, reg, &cfg()).unwrap();
                    let closed = lemma2_closed_form(a, b, reg).unwrap();
                    assert!(
                        (line - closed).abs() <= 1e-8,
                        "a={a} b={b} eps={}: {line} vs {closed}",
                        reg.epsilon
                    );
                }
            }
        }
    }

    #[test]
    fn lemma2_parity() {
        let reg = RegParams::new(0.2, 0.1).unwrap();
        let base = lemma2_line_integral(0.8, 0.6, reg, &cfg()).unwrap();
        assert!((lemma2_line_integral(-0.8, -0.6, reg, &cfg()).unwrap() - base).abs() < 1e-10);
    }

    #[test]
    fn lemma2_small_regulator_limit() {
        let reg = RegParams::new(1e-4, 1e-4).unwrap();
        let v = lemma2_closed_form(1.0, 1.0, reg).unwrap();
        assert!((v - lemma2_limit(1.0, 1.0)).abs() <= 1e-3);
    }

    #[test]
    fn lemma_pair_half_argument_relation() {
        // the lemma-2 closed form at doubled arguments shares the lemma-1
        // structure; both limits obey limit2(2a, 2b) = -sin(2ab)/(2 tanh(pi a) tanh b)
        for &(a, b) in &[(0.5, 0.8), (1.0, 0.4)] {
            let doubled = lemma2_limit(2.0 * a, 2.0 * b);
            let expected = -(2.0 * a * b).sin() / (2.0 * (PI * a).tanh() * b.tanh());
            assert!((doubled - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn sp_limit_gaussian() {
        let decay = DecayHint::Gaussian { alpha: 1.0 / PI };
        let r = sp_limit_residual(|x| (-x * x).exp(), decay, 1e-2, &cfg()).unwrap();
        assert!(r <= 0.05, "{r}");
    }

    #[test]
    fn sp_limit_first_order_in_epsilon() {
        let decay = DecayHint::Gaussian { alpha: 1.0 / PI };
        let mut prev = f64::INFINITY;
        for &eps in &[0.1, 0.05, 0.025] {
            let r = sp_limit_residual(|x| (-x * x).exp(), decay, eps, &cfg()).unwrap();
            // halving eps should roughly halve the residual
            assert!(r < 0.75 * prev, "eps={eps}: {r} vs {prev}");
            prev = r;
        }
    }

    #[test]
    fn sp_limit_odd_function() {
        let decay = DecayHint::Gaussian { alpha: 1.0 / PI };
        let r = sp_limit_residual(|x| x * (-x * x).exp(), decay, 1e-2, &cfg()).unwrap();
        assert!(r <= 0.05, "{r}");
    }

    #[test]
    fn sine_transform_examples() {
        assert!(gr_39818_residual(PI / 2.0, 1.0, &cfg()).unwrap() <= 1e-10);
        assert!(gr_39818_residual(1.0, 2.0, &cfg()).unwrap() <= 1e-10);
        // both sides vanish linearly as a -> 0
        assert!(gr_39818_residual(1.0, 1e-6, &cfg()).unwrap() <= 1e-12);
    }

    #[test]
    fn sine_transform_closed_form_value() {
        // theta = pi/2: RHS = tanh(1)/2
        let rhs = 1f64.sinh() / (2.0 * 1f64.cosh());
        let f = |y: f64| (PI / 2.0 * y).cosh() / PI * sinc(y) / sinhc(PI * y);
        let lhs = quad::integrate_semi_infinite(
            f,
            DecayHint::Exponential { rate: PI / 2.0 },
            &cfg(),
        )
        .unwrap()
        .real();
        assert!((lhs - rhs).abs() <= 1e-10);
    }

    #[test]
    fn sine_transform_domain_errors() {
        assert!(gr_39818_residual(0.0, 1.0, &cfg()).is_err());
        assert!(gr_39818_residual(PI, 1.0, &cfg()).is_err());
        assert!(gr_39818_residual(1.0, -1.0, &cfg()).is_err());
    }
}
