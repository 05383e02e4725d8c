//! Double Mordell integrals Phi and Psi, the eigenfunction lemma behind
//! them, the transformation lemma, and the n-term reduction of the double
//! integral to squares of one-dimensional Mordell integrals.

use crate::error::{Error, Result};
use crate::mordell1d::{self, MordellArg, MordellParams};
use crate::quad::{self, DecayHint, QuadConfig};
use crate::special::{coth_scaled, kernel_sin2d, sinc, sinhc, SelfReciprocalFn};

use std::f64::consts::PI;

/// Parameters of the double integrals: Gaussian weights `alpha`, `beta` and
/// kernel frequency `gamma` in
/// `int int K(gamma x y) e^{-pi (alpha x^2 + beta y^2)/2} dx dy`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleMordellParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl DoubleMordellParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if alpha <= 0.0 || beta <= 0.0 {
            return Err(Error::domain(
                "double Mordell integrals require alpha > 0 and beta > 0",
            ));
        }
        Ok(DoubleMordellParams { alpha, beta, gamma })
    }

    fn hints(&self) -> (DecayHint, DecayHint) {
        (
            DecayHint::Gaussian {
                alpha: self.alpha / 2.0,
            },
            DecayHint::Gaussian {
                alpha: self.beta / 2.0,
            },
        )
    }
}

/// An instance (n, alpha) of the reduction theorem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReductionInstance {
    pub n: u32,
    pub alpha: f64,
}

impl ReductionInstance {
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("reduction instances require n >= 1"));
        }
        if alpha <= 0.0 {
            return Err(Error::domain("reduction instances require alpha > 0"));
        }
        Ok(ReductionInstance { n, alpha })
    }
}

/// Phi(alpha, beta, gamma)
///   = int_0^inf int_0^inf cos(pi gamma x y) / (cosh pi x cosh pi y)
///     e^{-pi (alpha x^2 + beta y^2)/2} dx dy.
pub fn phi2(p: DoubleMordellParams, cfg: &QuadConfig) -> Result<f64> {
    let (hx, hy) = p.hints();
    let f = move |x: f64, y: f64| {
        (PI * p.gamma * x * y).cos() / ((PI * x).cosh() * (PI * y).cosh())
            * (-PI / 2.0 * (p.alpha * x * x + p.beta * y * y)).exp()
    };
    Ok(quad::integrate_2d(f, hx, hy, cfg)?.real())
}

/// Psi(alpha, beta, gamma)
///   = int_0^inf int_0^inf sin(pi gamma x y) / (tanh pi x tanh pi y)
///     e^{-pi (alpha x^2 + beta y^2)/2} dx dy.
pub fn psi_double(p: DoubleMordellParams, cfg: &QuadConfig) -> Result<f64> {
    if p.gamma == 0.0 {
        return Ok(0.0);
    }
    let (hx, hy) = p.hints();
    let f = move |x: f64, y: f64| {
        kernel_sin2d(x, y, p.gamma, PI, PI)
            * (-PI / 2.0 * (p.alpha * x * x + p.beta * y * y)).exp()
    };
    Ok(quad::integrate_2d(f, hx, hy, cfg)?.real())
}

const PRODUCT_TOL: f64 = 1e-12;

/// Residual of
/// int int sin(2xy)/(tanh(alpha x) tanh(beta y)) e^{-x^2-y^2} dx dy
///   = pi^{3/2} (1/alpha + 1/beta) / 8, valid when alpha beta is pi or 2 pi.
pub fn theorem_2d_residual(alpha: f64, beta: f64, cfg: &QuadConfig) -> Result<f64> {
    if alpha <= 0.0 || beta <= 0.0 {
        return Err(Error::domain("theorem requires alpha > 0, beta > 0"));
    }
    let prod = alpha * beta;
    if (prod - PI).abs() > PRODUCT_TOL && (prod - 2.0 * PI).abs() > PRODUCT_TOL {
        return Err(Error::domain(
            "theorem holds only on the alpha beta = pi and alpha beta = 2 pi branches",
        ));
    }
    let hint = DecayHint::Gaussian { alpha: 1.0 / PI };
    let f = move |x: f64, y: f64| {
        kernel_sin2d(x, y, 2.0 / PI, alpha, beta) * (-x * x - y * y).exp()
    };
    let lhs = quad::integrate_2d(f, hint, hint, cfg)?.real();
    let rhs = PI.powf(1.5) * (1.0 / alpha + 1.0 / beta) / 8.0;
    Ok((lhs - rhs).abs())
}

/// Residual of the alpha beta = pi corollary
/// int int tanh(alpha x)/tanh(beta y) sin(2xy) e^{-x^2-y^2} dx dy
///   = sqrt(pi) alpha / 8, with beta = pi/alpha.
pub fn cor_tanh_over_tanh_residual(alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::domain("corollary requires alpha > 0"));
    }
    let beta = PI / alpha;
    let hint = DecayHint::Gaussian { alpha: 1.0 / PI };
    // tanh(ax) sin(2xy)/tanh(by) = 2x tanh(ax) sinc(2xy) coth_scaled(by)/b
    let f = move |x: f64, y: f64| {
        2.0 * x * (alpha * x).tanh() * sinc(2.0 * x * y) * coth_scaled(beta * y) / beta
            * (-x * x - y * y).exp()
    };
    let lhs = quad::integrate_2d(f, hint, hint, cfg)?.real();
    Ok((lhs - PI.sqrt() * alpha / 8.0).abs())
}

/// Residual of the alpha beta = 2 pi corollary
/// int int sin(2xy)/(tanh(alpha x) sinh(beta y)) e^{-x^2-y^2} dx dy
///   = sqrt(pi) alpha / 16, with beta = 2 pi/alpha.
pub fn cor_sinh_residual(alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::domain("corollary requires alpha > 0"));
    }
    let beta = 2.0 * PI / alpha;
    let hint = DecayHint::Gaussian { alpha: 1.0 / PI };
    // sin(2xy) coth(ax)/sinh(by) = 2 sinc(2xy) coth_scaled(ax)/(a b sinhc(by))
    let f = move |x: f64, y: f64| {
        2.0 * sinc(2.0 * x * y) * coth_scaled(alpha * x) / (alpha * beta * sinhc(beta * y))
            * (-x * x - y * y).exp()
    };
    let lhs = quad::integrate_2d(f, hint, hint, cfg)?.real();
    Ok((lhs - PI.sqrt() * alpha / 16.0).abs())
}

const EIGEN_GATE: f64 = 1e-8;

/// Residual of the eigenfunction lemma: for f equal to its own cosine
/// Fourier transform and alpha beta in {pi, pi/2},
/// int int sin(xy)/(tanh(alpha x) tanh(beta y)) f(x) f(y) dx dy
///   = pi^{3/2} (1/alpha + 1/beta) f(0)^2 / (4 sqrt(2)).
pub fn eigen_lemma_residual(
    f: &SelfReciprocalFn,
    alpha: f64,
    beta: f64,
    cfg: &QuadConfig,
) -> Result<f64> {
    if alpha <= 0.0 || beta <= 0.0 {
        return Err(Error::domain("lemma requires alpha > 0, beta > 0"));
    }
    let prod = alpha * beta;
    if (prod - PI).abs() > PRODUCT_TOL && (prod - PI / 2.0).abs() > PRODUCT_TOL {
        return Err(Error::domain(
            "lemma holds only on the alpha beta = pi and alpha beta = pi/2 branches",
        ));
    }
    let gate = crate::special::eigen_residual(f, 1.0, cfg)?;
    if gate > EIGEN_GATE {
        return Err(Error::domain(
            "test function is not self-reciprocal under the cosine transform",
        ));
    }
    let g = move |x: f64, y: f64| {
        kernel_sin2d(x, y, 1.0 / PI, alpha, beta) * f.eval(x) * f.eval(y)
    };
    let lhs = quad::integrate_2d(g, f.decay, f.decay, cfg)?.real();
    let rhs = PI.powf(1.5) * (1.0 / alpha + 1.0 / beta) * f.value_at_zero * f.value_at_zero
        / (4.0 * 2.0f64.sqrt());
    Ok((lhs - rhs).abs())
}

/// Residual of the transformation lemma
/// Psi(alpha, beta, gamma) = 2/sqrt(D) Psi(4 alpha/D, 4 beta/D, 4 gamma/D)
/// with D = alpha beta + gamma^2.
pub fn psi_transform_residual(p: DoubleMordellParams, cfg: &QuadConfig) -> Result<f64> {
    if p.gamma <= 0.0 {
        return Err(Error::domain("transformation lemma requires gamma > 0"));
    }
    let d = p.alpha * p.beta + p.gamma * p.gamma;
    let lhs = psi_double(p, cfg)?;
    let image = DoubleMordellParams::new(4.0 * p.alpha / d, 4.0 * p.beta / d, 4.0 * p.gamma / d)?;
    let rhs = 2.0 / d.sqrt() * psi_double(image, cfg)?;
    Ok((lhs - rhs).abs())
}

/// sum_{k=1}^{n-1} { psi_{alpha/n}( (n-2k)/n i ) }^2, a real (nonpositive)
/// quantity since each square is of a purely imaginary value.
fn psi_square_sum(n: u32, alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    let mut sum = 0.0;
    for k in 1..n {
        let tau = (n as f64 - 2.0 * k as f64) / n as f64;
        let p = MordellParams::new(alpha / n as f64, MordellArg::Imaginary(tau))?;
        let v = mordell1d::psi(p, cfg)?;
        sum += (v * v).re;
    }
    Ok(sum)
}

/// The closed-form side of the reduction theorem:
/// sqrt(alpha) + 1/sqrt(alpha)
///   - (4 sqrt(alpha)/n) sum_{k=1}^{n-1} { psi_{alpha/n}( (n-2k)/n i ) }^2.
pub fn reduction_rhs(inst: ReductionInstance, cfg: &QuadConfig) -> Result<f64> {
    ReductionInstance::new(inst.n, inst.alpha)?;
    let a = inst.alpha;
    let sum = psi_square_sum(inst.n, a, cfg)?;
    Ok(a.sqrt() + 1.0 / a.sqrt() - 4.0 * a.sqrt() / inst.n as f64 * sum)
}

/// Max pairwise difference among the three expressions of the reduction
/// theorem:
/// 8/sqrt(n) Psi(2 alpha/n, 2/(alpha n), 2/n)
///   = sqrt(32 n) Psi(n/alpha, alpha n, n) = reduction_rhs.
pub fn reduction_residual(inst: ReductionInstance, cfg: &QuadConfig) -> Result<f64> {
    ReductionInstance::new(inst.n, inst.alpha)?;
    let n = inst.n as f64;
    let a = inst.alpha;

    let small = DoubleMordellParams::new(2.0 * a / n, 2.0 / (a * n), 2.0 / n)?;
    let first = 8.0 / n.sqrt() * psi_double(small, cfg)?;

    let stretched = DoubleMordellParams::new(n / a, a * n, n)?;
    let second = (32.0 * n).sqrt() * psi_double(stretched, cfg)?;

    let third = reduction_rhs(inst, cfg)?;

    Ok((first - second)
        .abs()
        .max((first - third).abs())
        .max((second - third).abs()))
}

/// | S(alpha) - S(1/alpha) | where
/// S(a) = sqrt(a) sum_{k=1}^{n-1} { psi_{a/n}( (n-2k)/n i ) }^2; the
/// invariance under alpha <-> 1/alpha is the quadratic-relations corollary.
pub fn quadratic_symmetry_residual(n: u32, alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("quadratic symmetry is empty below n = 2"));
    }
    if alpha <= 0.0 {
        return Err(Error::domain("quadratic symmetry requires alpha > 0"));
    }
    let s_a = alpha.sqrt() * psi_square_sum(n, alpha, cfg)?;
    let s_b = (1.0 / alpha).sqrt() * psi_square_sum(n, 1.0 / alpha, cfg)?;
    Ok((s_a - s_b).abs())
}

/// Residual of the phi-form reduction
/// (2n+1) sqrt(2/alpha) Phi(1/alpha, (4n+2)^2 alpha, 4n+2)
///   = (-1)^n [ { phi_alpha(i/2) }^2
///     + 2 sum_{k=1}^n (-1)^k phi_alpha( (2n+2k+1)/(4n+2) i )
///                           phi_alpha( (2n-2k+1)/(4n+2) i ) ].
pub fn phi_reduction_residual(n: u32, alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::domain("phi reduction requires alpha > 0"));
    }
    let m = 4.0 * n as f64 + 2.0;
    let p = DoubleMordellParams::new(1.0 / alpha, m * m * alpha, m)?;
    let lhs = (2.0 * n as f64 + 1.0) * (2.0 / alpha).sqrt() * phi2(p, cfg)?;

    let phi_im = |tau: f64| -> Result<f64> {
        mordell1d::phi(MordellParams::new(alpha, MordellArg::Imaginary(tau))?, cfg)
    };
    let head = phi_im(0.5)?;
    let mut rhs = head * head;
    for k in 1..=n {
        let sign = if k % 2 == 0 { 2.0 } else { -2.0 };
        let a = (2.0 * n as f64 + 2.0 * k as f64 + 1.0) / m;
        let b = (2.0 * n as f64 - 2.0 * k as f64 + 1.0) / m;
        rhs += sign * phi_im(a)? * phi_im(b)?;
    }
    if n % 2 == 1 {
        rhs = -rhs;
    }
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gaussian_sech_eigenfunction, sech_eigenfunction};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn params(a: f64, b: f64, g: f64) -> DoubleMordellParams {
        DoubleMordellParams::new(a, b, g).unwrap()
    }

    #[test]
    fn phi2_separates_at_gamma_zero() {
        let whole = phi2(params(1.0, 4.0, 0.0), &cfg()).unwrap();
        let px = mordell1d::phi(
            MordellParams::new(0.5, MordellArg::Real(0.0)).unwrap(),
            &cfg(),
        )
        .unwrap();
        let py = mordell1d::phi(
            MordellParams::new(2.0, MordellArg::Real(0.0)).unwrap(),
            &cfg(),
        )
        .unwrap();
        assert!((whole - px * py).abs() <= 1e-9, "{whole} vs {}", px * py);
    }

    #[test]
    fn phi2_symmetric_separable_case() {
        let whole = phi2(params(1.0, 1.0, 0.0), &cfg()).unwrap();
        let p = mordell1d::phi(
            MordellParams::new(0.5, MordellArg::Real(0.0)).unwrap(),
            &cfg(),
        )
        .unwrap();
        assert!((whole - p * p).abs() <= 1e-9);
    }

    #[test]
    fn psi_double_vanishes_at_gamma_zero() {
        assert_eq!(psi_double(params(1.0, 1.0, 0.0), &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn psi_double_odd_in_gamma() {
        let plus = psi_double(params(1.0, 2.0, 1.5), &cfg()).unwrap();
        let minus = psi_double(params(1.0, 2.0, -1.5), &cfg()).unwrap();
        assert!((plus + minus).abs() <= 1e-10);
        assert!(plus.abs() > 1e-3);
    }

    #[test]
    fn psi_double_symmetric_in_axes() {
        let ab = psi_double(params(1.0, 3.0, 2.0), &cfg()).unwrap();
        let ba = psi_double(params(3.0, 1.0, 2.0), &cfg()).unwrap();
        assert!((ab - ba).abs() <= 1e-9);
    }

    #[test]
    fn rejects_nonpositive_weights() {
        assert!(DoubleMordellParams::new(0.0, 1.0, 1.0).is_err());
        assert!(DoubleMordellParams::new(1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn theorem_on_both_branches() {
        let rt_pi = PI.sqrt();
        assert!(theorem_2d_residual(rt_pi, rt_pi, &cfg()).unwrap() <= 1e-7);
        let rt_2pi = (2.0 * PI).sqrt();
        assert!(theorem_2d_residual(rt_2pi, rt_2pi, &cfg()).unwrap() <= 1e-7);
        assert!(theorem_2d_residual(PI, 1.0, &cfg()).unwrap() <= 1e-7);
    }

    #[test]
    fn theorem_closed_form_values() {
        // at alpha = beta = sqrt(pi) the closed form is pi/4; check the
        // quadrature against the arithmetic directly
        let hint = DecayHint::Gaussian { alpha: 1.0 / PI };
        let a = PI.sqrt();
        let lhs = quad::integrate_2d(
            move |x, y| kernel_sin2d(x, y, 2.0 / PI, a, a) * (-x * x - y * y).exp(),
            hint,
            hint,
            &cfg(),
        )
        .unwrap();
        assert!((lhs.real() - PI / 4.0).abs() <= 1e-7);
    }

    #[test]
    fn theorem_rejects_off_branch_products() {
        assert!(theorem_2d_residual(1.0, 1.0, &cfg()).is_err());
        assert!(theorem_2d_residual(2.0, 2.0, &cfg()).is_err());
    }

    #[test]
    fn tanh_over_tanh_corollary() {
        assert!(cor_tanh_over_tanh_residual(PI.sqrt(), &cfg()).unwrap() <= 1e-7);
        assert!(cor_tanh_over_tanh_residual(1.0, &cfg()).unwrap() <= 1e-7);
        assert!(cor_tanh_over_tanh_residual(PI, &cfg()).unwrap() <= 1e-7);
    }

    #[test]
    fn sinh_corollary() {
        assert!(cor_sinh_residual((2.0 * PI).sqrt(), &cfg()).unwrap() <= 1e-7);
        assert!(cor_sinh_residual(2.0, &cfg()).unwrap() <= 1e-7);
        assert!(cor_sinh_residual(1.0, &cfg()).unwrap() <= 1e-7);
    }

    #[test]
    fn eigen_lemma_for_gaussian() {
        let f = gaussian_sech_eigenfunction();
        let rt = PI.sqrt();
        assert!(eigen_lemma_residual(&f, rt, PI / rt, &cfg()).unwrap() <= 1e-7);
        let half = (PI / 2.0).sqrt();
        assert!(eigen_lemma_residual(&f, half, half, &cfg()).unwrap() <= 1e-7);
    }

    #[test]
    fn eigen_lemma_for_sech() {
        let f = sech_eigenfunction();
        let rt = PI.sqrt();
        assert!(eigen_lemma_residual(&f, rt, rt, &cfg()).unwrap() <= 1e-6);
    }

    #[test]
    fn eigen_lemma_rejects_bad_inputs() {
        let f = gaussian_sech_eigenfunction();
        assert!(eigen_lemma_residual(&f, 1.0, 1.0, &cfg()).is_err());
        let not_eigen = SelfReciprocalFn {
            eval: Box::new(|x| (-x * x).exp()),
            value_at_zero: 1.0,
            decay: DecayHint::Gaussian { alpha: 1.0 / PI },
        };
        let rt = PI.sqrt();
        assert!(eigen_lemma_residual(&not_eigen, rt, rt, &cfg()).is_err());
    }

    #[test]
    fn transform_lemma_fixed_point() {
        // alpha beta + gamma^2 = 4 maps the parameters to themselves
        let r = psi_transform_residual(params(1.0, 3.0, 1.0), &cfg()).unwrap();
        assert!(r <= 1e-9);
    }

    #[test]
    fn transform_lemma_generic_points() {
        assert!(psi_transform_residual(params(1.0, 1.0, 1.0), &cfg()).unwrap() <= 1e-7);
        assert!(psi_transform_residual(params(2.0, 5.0, 0.5), &cfg()).unwrap() <= 1e-7);
    }

    #[test]
    fn reduction_rhs_small_n() {
        let r1 = reduction_rhs(ReductionInstance::new(1, 1.0).unwrap(), &cfg()).unwrap();
        assert!((r1 - 2.0).abs() < 1e-12);
        // n = 2: the only summand has tau = 0, where psi vanishes
        let a = 2.7;
        let r2 = reduction_rhs(ReductionInstance::new(2, a).unwrap(), &cfg()).unwrap();
        assert!((r2 - (a.sqrt() + 1.0 / a.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn reduction_rhs_exceeds_the_trivial_part_for_n3() {
        // each summand subtracts a negative square, so the sum adds on top of
        // sqrt(a) + 1/sqrt(a)
        let r = reduction_rhs(ReductionInstance::new(3, 1.0).unwrap(), &cfg()).unwrap();
        assert!(r > 2.0);
        assert!(r < 3.0);
    }

    #[test]
    fn reduction_theorem_instances() {
        for &(n, alpha) in &[(1u32, 1.0), (3, 1.0), (4, 2.0)] {
            let r = reduction_residual(ReductionInstance::new(n, alpha).unwrap(), &cfg())
                .unwrap();
            assert!(r <= 1e-7, "n = {n}, alpha = {alpha}: {r:.3e}");
        }
    }

    #[test]
    fn reduction_rhs_invariant_under_alpha_inversion() {
        for &(n, alpha) in &[(2u32, 3.0), (3, 2.0), (5, 0.5)] {
            let a = reduction_rhs(ReductionInstance::new(n, alpha).unwrap(), &cfg()).unwrap();
            let b = reduction_rhs(ReductionInstance::new(n, 1.0 / alpha).unwrap(), &cfg())
                .unwrap();
            assert!((a - b).abs() <= 1e-8, "n = {n}, alpha = {alpha}");
        }
    }

    #[test]
    fn quadratic_symmetry() {
        assert_eq!(quadratic_symmetry_residual(3, 1.0, &cfg()).unwrap(), 0.0);
        assert!(quadratic_symmetry_residual(3, 2.0, &cfg()).unwrap() <= 1e-8);
        assert!(quadratic_symmetry_residual(5, 0.5, &cfg()).unwrap() <= 1e-8);
        assert!(quadratic_symmetry_residual(1, 1.0, &cfg()).is_err());
    }

    #[test]
    fn phi_reduction_instances() {
        for &(n, alpha) in &[(0u32, 1.0), (1, 1.0), (2, 0.5)] {
            let r = phi_reduction_residual(n, alpha, &cfg()).unwrap();
            assert!(r <= 1e-7, "n = {n}, alpha = {alpha}: {r:.3e}");
        }
    }
}
