//! Identity-suite harness: registered verification cases per module,
//! deterministic parallel execution, machine-readable reports, and parameter
//! sweeps.
//!
//! Reports are byte-identical across runs and worker counts: cases are
//! collected in registration order, sorted by (id, params), and serialized
//! with sorted keys and fixed-width float formatting.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mordell1d::{self, MordellArg, MordellParams};
use crate::mordell2d::{self, DoubleMordellParams, ReductionInstance};
use crate::quad::{self, DecayHint, QuadConfig};
use crate::regularized::{self, RegParams};
use crate::special;
use crate::typeii::{self, CoshRatioKind, SeriesParams};

use std::f64::consts::PI;

/// Which registered case set to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Mordell1d,
    Typeii,
    Mordell2d,
    Regularized,
    Appendix,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite> {
        match name {
            "all" => Ok(Suite::All),
            "mordell1d" => Ok(Suite::Mordell1d),
            "typeii" => Ok(Suite::Typeii),
            "mordell2d" => Ok(Suite::Mordell2d),
            "regularized" => Ok(Suite::Regularized),
            "appendix" => Ok(Suite::Appendix),
            other => Err(Error::Config(format!(
                "unknown suite {other:?}; expected one of all, mordell1d, typeii, mordell2d, regularized, appendix"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Mordell1d => "mordell1d",
            Suite::Typeii => "typeii",
            Suite::Mordell2d => "mordell2d",
            Suite::Regularized => "regularized",
            Suite::Appendix => "appendix",
        }
    }
}

/// Harness configuration: quadrature settings plus suite-level options,
/// parsed from a flat key=value file.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub quad: QuadConfig,
    /// Replaces every case's registered tolerance when set.
    pub tolerance_override: Option<f64>,
    pub workers: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            quad: QuadConfig::default(),
            tolerance_override: None,
            workers: None,
        }
    }
}

/// Parse the flat key=value config format. Blank lines and `#` comments are
/// ignored; unknown keys and malformed lines are errors naming the line.
pub fn parse_config(text: &str) -> Result<SuiteConfig> {
    let mut cfg = SuiteConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key=value, got {raw:?}", lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            Error::Config(format!("line {}: invalid {what} value {value:?}", lineno + 1))
        };
        match key {
            "abs_tol" => cfg.quad.abs_tol = value.parse().map_err(|_| bad("abs_tol"))?,
            "rel_tol" => cfg.quad.rel_tol = value.parse().map_err(|_| bad("rel_tol"))?,
            "max_refinement" => {
                cfg.quad.max_refinement = value.parse().map_err(|_| bad("max_refinement"))?
            }
            "truncation_margin" => {
                cfg.quad.truncation_margin =
                    value.parse().map_err(|_| bad("truncation_margin"))?
            }
            "tolerance_override" => {
                cfg.tolerance_override =
                    Some(value.parse().map_err(|_| bad("tolerance_override"))?)
            }
            "workers" => cfg.workers = Some(value.parse().map_err(|_| bad("workers"))?),
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown key {other:?}",
                    lineno + 1
                )))
            }
        }
    }
    cfg.quad.validate()?;
    if let Some(t) = cfg.tolerance_override {
        if t <= 0.0 {
            return Err(Error::Config("tolerance_override must be > 0".into()));
        }
    }
    Ok(cfg)
}

type EvalFn = Box<dyn Fn(&QuadConfig) -> Result<(f64, f64)> + Send + Sync>;

/// One registered identity check: an operation bound to fixed parameters,
/// returning (computed, expected).
pub struct IdentityCase {
    pub id: &'static str,
    pub params: Vec<(&'static str, f64)>,
    pub tolerance: f64,
    eval: EvalFn,
}

fn case<F>(
    id: &'static str,
    params: Vec<(&'static str, f64)>,
    tolerance: f64,
    eval: F,
) -> IdentityCase
where
    F: Fn(&QuadConfig) -> Result<(f64, f64)> + Send + Sync + 'static,
{
    let mut params = params;
    params.sort_by(|a, b| a.0.cmp(b.0));
    IdentityCase {
        id,
        params,
        tolerance,
        eval: Box::new(eval),
    }
}

/// Shorthand for cases whose operation already returns a residual.
fn residual_case<F>(
    id: &'static str,
    params: Vec<(&'static str, f64)>,
    tolerance: f64,
    eval: F,
) -> IdentityCase
where
    F: Fn(&QuadConfig) -> Result<f64> + Send + Sync + 'static,
{
    case(id, params, tolerance, move |cfg| Ok((eval(cfg)?, 0.0)))
}

/// Outcome of one case.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub id: String,
    pub params: Vec<(String, f64)>,
    pub computed: Option<f64>,
    pub expected: Option<f64>,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub evaluations: u64,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
    pub config_fingerprint: String,
}

/// 17-significant-digit float formatting used everywhere in reports and
/// fingerprints.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn sort_key(c: &CaseReport) -> (String, String) {
    let mut p = String::new();
    for (name, value) in &c.params {
        let _ = write!(p, "{name}={};", fmt_float(*value));
    }
    (c.id.clone(), p)
}

fn run_case(c: &IdentityCase, cfg: &SuiteConfig) -> CaseReport {
    let tolerance = cfg.tolerance_override.unwrap_or(c.tolerance);
    let before = quad::thread_eval_count();
    let outcome = (c.eval)(&cfg.quad);
    let evaluations = quad::thread_eval_count() - before;
    let params = c
        .params
        .iter()
        .map(|(n, v)| (n.to_string(), *v))
        .collect();
    match outcome {
        Ok((computed, expected)) => {
            let residual = (computed - expected).abs();
            CaseReport {
                id: c.id.to_string(),
                params,
                computed: Some(computed),
                expected: Some(expected),
                residual: Some(residual),
                tolerance,
                passed: residual <= tolerance,
                evaluations,
                error: None,
            }
        }
        Err(e) => CaseReport {
            id: c.id.to_string(),
            params,
            computed: None,
            expected: None,
            residual: None,
            tolerance,
            passed: false,
            evaluations,
            error: Some(e.to_string()),
        },
    }
}

fn fingerprint(suite: Suite, cfg: &SuiteConfig, cases: &[IdentityCase]) -> String {
    let mut canonical = String::new();
    let _ = writeln!(canonical, "suite={}", suite.name());
    let _ = writeln!(canonical, "abs_tol={}", fmt_float(cfg.quad.abs_tol));
    let _ = writeln!(canonical, "rel_tol={}", fmt_float(cfg.quad.rel_tol));
    let _ = writeln!(canonical, "max_refinement={}", cfg.quad.max_refinement);
    let _ = writeln!(
        canonical,
        "truncation_margin={}",
        fmt_float(cfg.quad.truncation_margin)
    );
    let _ = writeln!(
        canonical,
        "tolerance_override={}",
        cfg.tolerance_override.map(fmt_float).unwrap_or_default()
    );
    for c in cases {
        let _ = write!(canonical, "case={} tol={}", c.id, fmt_float(c.tolerance));
        for (name, value) in &c.params {
            let _ = write!(canonical, " {name}={}", fmt_float(*value));
        }
        canonical.push('\n');
    }
    let digest = Sha256::digest(canonical.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

/// Run every case of the suite, in parallel across cases, and assemble the
/// order-stable report.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.quad.validate()?;
    let cases = suite_cases(suite);
    let config_fingerprint = fingerprint(suite, cfg, &cases);

    let run_all = || -> Vec<CaseReport> {
        use rayon::prelude::*;
        cases.par_iter().map(|c| run_case(c, cfg)).collect()
    };
    let mut reports = match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?
            .install(run_all),
        None => run_all(),
    };
    reports.sort_by_key(sort_key);

    let passed = reports.iter().filter(|c| c.passed).count();
    let summary = Summary {
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
    };
    Ok(VerificationReport {
        cases: reports,
        summary,
        config_fingerprint,
    })
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn json_opt_float(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => fmt_float(x),
        _ => "null".to_string(),
    }
}

impl VerificationReport {
    /// Deterministic JSON: keys sorted, floats at 17 significant digits,
    /// no whitespace dependence on content.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n  \"cases\": [\n");
        for (i, c) in self.cases.iter().enumerate() {
            out.push_str("    {");
            let _ = write!(out, "\"computed\": {}, ", json_opt_float(c.computed));
            match &c.error {
                Some(e) => {
                    let _ = write!(out, "\"error\": \"{}\", ", json_escape(e));
                }
                None => out.push_str("\"error\": null, "),
            }
            let _ = write!(out, "\"evaluations\": {}, ", c.evaluations);
            let _ = write!(out, "\"expected\": {}, ", json_opt_float(c.expected));
            let _ = write!(out, "\"id\": \"{}\", ", json_escape(&c.id));
            out.push_str("\"params\": {");
            for (j, (name, value)) in c.params.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{}\": {}", json_escape(name), fmt_float(*value));
            }
            out.push_str("}, ");
            let _ = write!(out, "\"passed\": {}, ", c.passed);
            let _ = write!(out, "\"residual\": {}, ", json_opt_float(c.residual));
            let _ = write!(out, "\"tolerance\": {}", fmt_float(c.tolerance));
            out.push('}');
            if i + 1 < self.cases.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("  ],\n");
        let _ = writeln!(
            out,
            "  \"config_fingerprint\": \"{}\",",
            self.config_fingerprint
        );
        let _ = writeln!(
            out,
            "  \"summary\": {{\"failed\": {}, \"passed\": {}, \"total\": {}}}",
            self.summary.failed, self.summary.passed, self.summary.total
        );
        out.push_str("}\n");
        out
    }
}

fn suite_cases(suite: Suite) -> Vec<IdentityCase> {
    match suite {
        Suite::Mordell1d => mordell1d_cases(),
        Suite::Typeii => typeii_cases(),
        Suite::Mordell2d => mordell2d_cases(),
        Suite::Regularized => regularized_cases(),
        Suite::Appendix => appendix_cases(),
        Suite::All => {
            let mut all = mordell1d_cases();
            all.extend(typeii_cases());
            all.extend(mordell2d_cases());
            all.extend(regularized_cases());
            all.extend(appendix_cases());
            all
        }
    }
}

fn mordell1d_cases() -> Vec<IdentityCase> {
    let mut cases = Vec::new();

    // transformation identity grid over both argument kinds
    for &alpha in &[0.5, 1.0, 2.0, 4.0] {
        for &theta in &[0.25, 0.5, 1.0] {
            cases.push(residual_case(
                "mordell1d.big_f_transform_residual",
                vec![("alpha", alpha), ("theta", theta)],
                1e-8,
                move |cfg| {
                    mordell1d::big_f_transform_residual(alpha, MordellArg::Real(theta), cfg)
                },
            ));
        }
        for &tau in &[0.25, 0.75] {
            cases.push(residual_case(
                "mordell1d.big_f_transform_residual",
                vec![("alpha", alpha), ("tau", tau)],
                1e-8,
                move |cfg| {
                    mordell1d::big_f_transform_residual(alpha, MordellArg::Imaginary(tau), cfg)
                },
            ));
        }
    }

    // cosh-ratio collapse: phi and psi at theta = i reduce to the plain
    // Gaussian integral 1/2
    cases.push(case(
        "mordell1d.phi",
        vec![("alpha", 1.0), ("tau", 1.0)],
        1e-10,
        |cfg| {
            let v = mordell1d::phi(MordellParams::new(1.0, MordellArg::Imaginary(1.0))?, cfg)?;
            Ok((v, 0.5))
        },
    ));
    cases.push(case(
        "mordell1d.psi",
        vec![("alpha", 1.0), ("tau", 1.0)],
        1e-10,
        |cfg| {
            let v = mordell1d::psi(MordellParams::new(1.0, MordellArg::Imaginary(1.0))?, cfg)?;
            Ok((v.im, 0.5))
        },
    ));
    for &alpha in &[1.0, 2.0] {
        cases.push(case(
            "mordell1d.psi",
            vec![("alpha", alpha), ("theta", 0.0)],
            1e-14,
            move |cfg| {
                let v = mordell1d::psi(MordellParams::new(alpha, MordellArg::Real(0.0))?, cfg)?;
                Ok((v.norm(), 0.0))
            },
        ));
    }

    // self-reciprocality of the two eigenfunctions
    for &b in &[0.0, 0.5, 1.0, 2.0] {
        cases.push(residual_case(
            "special.eigen_residual_gaussian",
            vec![("b", b)],
            1e-8,
            move |cfg| special::eigen_residual(&special::gaussian_sech_eigenfunction(), b, cfg),
        ));
    }
    cases.push(residual_case(
        "special.eigen_residual_sech",
        vec![("b", 0.7)],
        1e-8,
        |cfg| special::eigen_residual(&special::sech_eigenfunction(), 0.7, cfg),
    ));

    cases
}

fn typeii_cases() -> Vec<IdentityCase> {
    let mut cases = Vec::new();

    for &alpha in &[0.3, 1.0, PI, 5.0] {
        let closed = 0.25 + PI / (4.0 * alpha);
        cases.push(case(
            "typeii.int_coth_coth",
            vec![("alpha", alpha)],
            1e-8,
            move |cfg| Ok((typeii::int_coth_coth(alpha, cfg)?, closed)),
        ));
        cases.push(case(
            "typeii.int_coth_coth_double",
            vec![("alpha", alpha)],
            1e-8,
            move |cfg| Ok((typeii::int_coth_coth_double(alpha, cfg)?, closed)),
        ));
        cases.push(case(
            "typeii.int_tanh_coth",
            vec![("alpha", alpha)],
            1e-8,
            move |cfg| Ok((typeii::int_tanh_coth(alpha, cfg)?, 0.25)),
        ));
        cases.push(case(
            "typeii.int_csch_coth",
            vec![("alpha", alpha)],
            1e-8,
            move |cfg| Ok((typeii::int_csch_coth(alpha, cfg)?, 0.25)),
        ));
    }

    for &alpha in &[0.4, 1.0, PI, 4.0] {
        cases.push(case(
            "typeii.int_tanh_tanh_cos",
            vec![("alpha", alpha)],
            1e-8,
            move |cfg| Ok((typeii::int_tanh_tanh_cos(alpha, cfg)?, 0.0)),
        ));
    }

    for &alpha in &[-2.0, 0.0, 1.0, 2.0] {
        cases.push(case(
            "typeii.cosh_ratio_cos_closed_form3",
            vec![("alpha", alpha)],
            1e-10,
            move |cfg| typeii::cosh_ratio_cos(alpha, CoshRatioKind::ClosedForm3, 0.0, cfg),
        ));
    }
    for &alpha in &[1.0, 2.0] {
        for &b in &[0.0, 1.0, 2.0] {
            cases.push(case(
                "typeii.cosh_ratio_cos_glasser",
                vec![("alpha", alpha), ("b", b)],
                1e-10,
                move |cfg| typeii::cosh_ratio_cos(alpha, CoshRatioKind::Glasser, b, cfg),
            ));
        }
    }

    for &alpha in &[0.5, 1.0, 2.0, PI] {
        for &b in &[0.5, 1.0, 2.0] {
            cases.push(residual_case(
                "typeii.series_residual",
                vec![("alpha", alpha), ("b", b)],
                1e-8,
                move |cfg| {
                    let lhs = typeii::series_lhs(alpha, b, cfg)?;
                    let (rhs, _) = typeii::series_rhs(SeriesParams::new(alpha, b)?)?;
                    Ok((lhs - rhs).norm())
                },
            ));
        }
    }
    cases.push(residual_case(
        "typeii.series_special_case_pi",
        vec![("b", 1.0)],
        1e-10,
        |_cfg| {
            let (rhs, _) = typeii::series_rhs(SeriesParams::new(PI, 1.0)?)?;
            Ok((rhs - typeii::series_special_case_pi(1.0)).norm())
        },
    ));

    for &alpha in &[1.0, 2.0, PI, 2.0 * PI] {
        cases.push(residual_case(
            "typeii.r2_residual",
            vec![("alpha", alpha)],
            1e-9,
            move |cfg| typeii::r2_residual(alpha, cfg),
        ));
    }
    for &alpha in &[1.0, 2.0, PI] {
        for &b in &[0.3, 1.0, 2.0] {
            cases.push(residual_case(
                "typeii.abs_square_identity_residual",
                vec![("alpha", alpha), ("b", b)],
                1e-8,
                move |cfg| typeii::abs_square_identity_residual(alpha, b, cfg),
            ));
        }
    }

    cases
}

fn mordell2d_cases() -> Vec<IdentityCase> {
    let mut cases = Vec::new();

    for &alpha in &[0.5, 1.0, PI.sqrt(), 2.0, PI] {
        cases.push(residual_case(
            "mordell2d.theorem_2d_residual",
            vec![("alpha", alpha), ("beta", PI / alpha)],
            1e-7,
            move |cfg| mordell2d::theorem_2d_residual(alpha, PI / alpha, cfg),
        ));
    }
    for &alpha in &[0.5, 1.0, (2.0 * PI).sqrt(), 2.0, PI] {
        cases.push(residual_case(
            "mordell2d.theorem_2d_residual",
            vec![("alpha", alpha), ("beta", 2.0 * PI / alpha)],
            1e-7,
            move |cfg| mordell2d::theorem_2d_residual(alpha, 2.0 * PI / alpha, cfg),
        ));
    }

    for &alpha in &[PI.sqrt(), 1.0, PI] {
        cases.push(residual_case(
            "mordell2d.cor_tanh_over_tanh_residual",
            vec![("alpha", alpha)],
            1e-7,
            move |cfg| mordell2d::cor_tanh_over_tanh_residual(alpha, cfg),
        ));
    }
    for &alpha in &[(2.0 * PI).sqrt(), 2.0, 1.0] {
        cases.push(residual_case(
            "mordell2d.cor_sinh_residual",
            vec![("alpha", alpha)],
            1e-7,
            move |cfg| mordell2d::cor_sinh_residual(alpha, cfg),
        ));
    }

    for &(scale, tag) in &[(PI.sqrt(), 1.0), ((PI / 2.0).sqrt(), 0.5)] {
        cases.push(residual_case(
            "mordell2d.eigen_lemma_residual_gaussian",
            vec![("alpha", scale), ("beta", PI * tag / scale)],
            1e-6,
            move |cfg| {
                mordell2d::eigen_lemma_residual(
                    &special::gaussian_sech_eigenfunction(),
                    scale,
                    PI * tag / scale,
                    cfg,
                )
            },
        ));
    }
    cases.push(residual_case(
        "mordell2d.eigen_lemma_residual_sech",
        vec![("alpha", PI.sqrt()), ("beta", PI.sqrt())],
        1e-6,
        |cfg| {
            mordell2d::eigen_lemma_residual(
                &special::sech_eigenfunction(),
                PI.sqrt(),
                PI.sqrt(),
                cfg,
            )
        },
    ));

    for &(a, b, g) in &[(1.0, 1.0, 1.0), (2.0, 5.0, 0.5), (0.3, 4.0, 2.0)] {
        cases.push(residual_case(
            "mordell2d.psi_transform_residual",
            vec![("alpha", a), ("beta", b), ("gamma", g)],
            1e-7,
            move |cfg| {
                mordell2d::psi_transform_residual(DoubleMordellParams::new(a, b, g)?, cfg)
            },
        ));
    }

    for n in 1..=6u32 {
        for &alpha in &[0.5, 1.0, 2.0] {
            cases.push(residual_case(
                "mordell2d.reduction_residual",
                vec![("n", n as f64), ("alpha", alpha)],
                1e-7,
                move |cfg| {
                    mordell2d::reduction_residual(ReductionInstance::new(n, alpha)?, cfg)
                },
            ));
        }
    }

    for &n in &[2u32, 3, 5] {
        for &alpha in &[0.5, 2.0] {
            cases.push(residual_case(
                "mordell2d.quadratic_symmetry_residual",
                vec![("n", n as f64), ("alpha", alpha)],
                1e-8,
                move |cfg| mordell2d::quadratic_symmetry_residual(n, alpha, cfg),
            ));
        }
    }

    for n in 0..=2u32 {
        for &alpha in &[0.5, 1.0, 2.0] {
            cases.push(residual_case(
                "mordell2d.phi_reduction_residual",
                vec![("n", n as f64), ("alpha", alpha)],
                1e-7,
                move |cfg| mordell2d::phi_reduction_residual(n, alpha, cfg),
            ));
        }
    }

    cases
}

fn regularized_cases() -> Vec<IdentityCase> {
    let mut cases = Vec::new();

    let regs = [(0.1, 0.05), (0.25, 0.3)];
    for &a in &[0.5, 1.0, 2.0] {
        for &b in &[0.3, 0.7, 1.5] {
            for &(eps, om) in &regs {
                cases.push(residual_case(
                    "regularized.lemma1_pair_residual",
                    vec![("a", a), ("b", b), ("epsilon", eps), ("omega", om)],
                    1e-8,
                    move |cfg| {
                        let reg = RegParams::new(eps, om)?;
                        let line = regularized::lemma1_line_integral(a, b, reg, cfg)?;
                        let closed = regularized::lemma1_closed_form(a, b, reg)?;
                        Ok((line - closed).abs())
                    },
                ));
                cases.push(residual_case(
                    "regularized.lemma2_pair_residual",
                    vec![("a", a), ("b", b), ("epsilon", eps), ("omega", om)],
                    1e-8,
                    move |cfg| {
                        let reg = RegParams::new(eps, om)?;
                        let line = regularized::lemma2_line_integral(a, b, reg, cfg)?;
                        let closed = regularized::lemma2_closed_form(a, b, reg)?;
                        Ok((line - closed).abs())
                    },
                ));
            }
        }
    }

    for &(a, b) in &[(1.0, 1.0), (2.0, 0.5)] {
        cases.push(residual_case(
            "regularized.lemma1_limit_residual",
            vec![("a", a), ("b", b)],
            1e-6,
            move |_cfg| regularized::lemma1_limit_residual(a, b),
        ));
        cases.push(residual_case(
            "regularized.lemma2_limit_residual",
            vec![("a", a), ("b", b)],
            1e-6,
            move |_cfg| regularized::lemma2_limit_residual(a, b),
        ));
    }

    // first-order convergence: halving epsilon should halve the SP residual
    for &(coarse, fine) in &[(0.1, 0.05), (0.05, 0.025)] {
        cases.push(case(
            "regularized.sp_limit_decay_ratio",
            vec![("epsilon_coarse", coarse), ("epsilon_fine", fine)],
            0.3,
            move |cfg| {
                let decay = DecayHint::Gaussian { alpha: 1.0 / PI };
                let rc = regularized::sp_limit_residual(|x| (-x * x).exp(), decay, coarse, cfg)?;
                let rf = regularized::sp_limit_residual(|x| (-x * x).exp(), decay, fine, cfg)?;
                Ok((rc / rf, 2.0))
            },
        ));
    }

    for &theta in &[0.5, PI / 2.0, 2.5] {
        for &a in &[0.5, 1.0, 2.0] {
            cases.push(residual_case(
                "regularized.gr_39818_residual",
                vec![("a", a), ("theta", theta)],
                1e-10,
                move |cfg| regularized::gr_39818_residual(theta, a, cfg),
            ));
        }
    }

    cases
}

fn appendix_cases() -> Vec<IdentityCase> {
    let mut cases = Vec::new();

    cases.push(residual_case(
        "appendix.poisson_residual_gaussian",
        vec![],
        1e-8,
        |cfg| {
            typeii::poisson_residual(
                |y| (-y * y).exp(),
                DecayHint::Gaussian { alpha: 1.0 / PI },
                cfg,
            )
        },
    ));
    cases.push(residual_case(
        "appendix.poisson_residual_x_gaussian",
        vec![],
        1e-8,
        |cfg| {
            typeii::poisson_residual(
                |y| y * (-y * y).exp(),
                DecayHint::Gaussian { alpha: 1.0 / PI },
                cfg,
            )
        },
    ));

    for k in 0..3u32 {
        cases.push(residual_case(
            "appendix.ik_solution_residual",
            vec![("k", k as f64), ("alpha", 1.0), ("b", 1.0)],
            1e-5,
            move |cfg| typeii::ik_solution_residual(k, 1.0, 1.0, cfg),
        ));
    }

    cases.push(case(
        "appendix.partial_fraction_sech",
        vec![("x", 0.5), ("terms", 2000.0)],
        1e-3,
        |_cfg| {
            let x = 0.5;
            Ok((
                typeii::partial_fraction_sech(x, 2000),
                1.0 / (PI * x).cosh(),
            ))
        },
    ));

    cases
}

/// One row of a parameter sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub value: f64,
    pub computed: f64,
    pub expected: Option<f64>,
    pub residual: f64,
}

fn parse_fixed_params(spec: &str) -> Result<(&str, BTreeMap<String, f64>)> {
    match spec.split_once('[') {
        None => Ok((spec, BTreeMap::new())),
        Some((base, rest)) => {
            let inner = rest.strip_suffix(']').ok_or_else(|| {
                Error::Config(format!("malformed op id {spec:?}: missing closing bracket"))
            })?;
            let mut fixed = BTreeMap::new();
            for part in inner.split(',') {
                let (k, v) = part.split_once('=').ok_or_else(|| {
                    Error::Config(format!("malformed fixed parameter {part:?} in {spec:?}"))
                })?;
                let v: f64 = v.trim().parse().map_err(|_| {
                    Error::Config(format!("invalid fixed parameter value {part:?} in {spec:?}"))
                })?;
                fixed.insert(k.trim().to_string(), v);
            }
            Ok((base, fixed))
        }
    }
}

fn fixed_int(fixed: &BTreeMap<String, f64>, key: &str, op: &str) -> Result<u32> {
    let v = *fixed
        .get(key)
        .ok_or_else(|| Error::Config(format!("{op} requires fixed parameter [{key}=...]")))?;
    if v < 0.0 || v.fract() != 0.0 {
        return Err(Error::Config(format!("{op}: {key} must be a non-negative integer")));
    }
    Ok(v as u32)
}

/// Evaluate a registered operation along a parameter grid.
///
/// `op_id` is the case slug, optionally with fixed parameters in brackets,
/// e.g. `mordell2d.reduction_residual[n=3]` swept over `alpha`.
pub fn sweep(
    op_id: &str,
    param: &str,
    lo: f64,
    hi: f64,
    count: usize,
    cfg: &QuadConfig,
) -> Result<Vec<SweepRow>> {
    if count < 2 {
        return Err(Error::Config("sweep requires count >= 2".into()));
    }
    if !(lo < hi) {
        return Err(Error::Config("sweep requires lo < hi".into()));
    }
    let (base, fixed) = parse_fixed_params(op_id)?;

    type SweepFn<'a> = Box<dyn Fn(f64, &QuadConfig) -> Result<(f64, Option<f64>)> + 'a>;
    let eval: SweepFn = match (base, param) {
        ("typeii.int_coth_coth", "alpha") => Box::new(|a, cfg| {
            Ok((typeii::int_coth_coth(a, cfg)?, Some(0.25 + PI / (4.0 * a))))
        }),
        ("typeii.int_coth_coth_double", "alpha") => Box::new(|a, cfg| {
            Ok((
                typeii::int_coth_coth_double(a, cfg)?,
                Some(0.25 + PI / (4.0 * a)),
            ))
        }),
        ("typeii.int_tanh_coth", "alpha") => {
            Box::new(|a, cfg| Ok((typeii::int_tanh_coth(a, cfg)?, Some(0.25))))
        }
        ("typeii.int_csch_coth", "alpha") => {
            Box::new(|a, cfg| Ok((typeii::int_csch_coth(a, cfg)?, Some(0.25))))
        }
        ("typeii.int_tanh_tanh_cos", "alpha") => {
            Box::new(|a, cfg| Ok((typeii::int_tanh_tanh_cos(a, cfg)?, Some(0.0))))
        }
        ("typeii.r2_residual", "alpha") => {
            Box::new(|a, cfg| Ok((typeii::r2_residual(a, cfg)?, Some(0.0))))
        }
        ("mordell1d.phi", "alpha") => Box::new(|a, cfg| {
            let v = mordell1d::phi(MordellParams::new(a, MordellArg::Real(0.0))?, cfg)?;
            Ok((v, None))
        }),
        ("mordell1d.big_f_transform_residual", "alpha") => Box::new(move |a, cfg| {
            let theta = fixed.get("theta").copied().unwrap_or(0.5);
            Ok((
                mordell1d::big_f_transform_residual(a, MordellArg::Real(theta), cfg)?,
                Some(0.0),
            ))
        }),
        ("mordell2d.reduction_residual", "alpha") => {
            let n = fixed_int(&fixed, "n", base)?;
            Box::new(move |a, cfg| {
                Ok((
                    mordell2d::reduction_residual(ReductionInstance::new(n, a)?, cfg)?,
                    Some(0.0),
                ))
            })
        }
        ("mordell2d.quadratic_symmetry_residual", "alpha") => {
            let n = fixed_int(&fixed, "n", base)?;
            Box::new(move |a, cfg| {
                Ok((mordell2d::quadratic_symmetry_residual(n, a, cfg)?, Some(0.0)))
            })
        }
        ("mordell2d.phi_reduction_residual", "alpha") => {
            let n = fixed_int(&fixed, "n", base)?;
            Box::new(move |a, cfg| {
                Ok((mordell2d::phi_reduction_residual(n, a, cfg)?, Some(0.0)))
            })
        }
        ("regularized.gr_39818_residual", "theta") => {
            let a = fixed.get("a").copied().unwrap_or(1.0);
            Box::new(move |theta, cfg| {
                Ok((regularized::gr_39818_residual(theta, a, cfg)?, Some(0.0)))
            })
        }
        ("regularized.gr_39818_residual", "a") => {
            let theta = fixed.get("theta").copied().unwrap_or(1.0);
            Box::new(move |a, cfg| {
                Ok((regularized::gr_39818_residual(theta, a, cfg)?, Some(0.0)))
            })
        }
        _ => {
            return Err(Error::Config(format!(
                "no registered sweep for op {base:?} over parameter {param:?}"
            )))
        }
    };

    let step = (hi - lo) / (count - 1) as f64;
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let value = if i + 1 == count { hi } else { lo + step * i as f64 };
        let (computed, expected) = eval(value, cfg)?;
        let residual = expected.map(|e| (computed - e).abs()).unwrap_or(0.0);
        rows.push(SweepRow {
            value,
            computed,
            expected,
            residual,
        });
    }
    Ok(rows)
}

/// CSV serialization of sweep rows, header included, floats at 17
/// significant digits.
pub fn sweep_csv(param: &str, rows: &[SweepRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{param},computed,expected,residual");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_float(r.value),
            fmt_float(r.computed),
            r.expected.map(fmt_float).unwrap_or_default(),
            fmt_float(r.residual)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parses_and_rejects() {
        let cfg = parse_config("abs_tol = 1e-9\n# comment\n\nworkers=4\n").unwrap();
        assert_eq!(cfg.quad.abs_tol, 1e-9);
        assert_eq!(cfg.workers, Some(4));

        let err = parse_config("abs_tol\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        let err = parse_config("abs_tol=1e-9\nbogus_key=2\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 2"), "{err}");
        assert!(parse_config("abs_tol=nope\n").is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for name in ["all", "mordell1d", "typeii", "mordell2d", "regularized", "appendix"] {
            assert_eq!(Suite::parse(name).unwrap().name(), name);
        }
        assert!(Suite::parse("typo").is_err());
    }

    #[test]
    fn appendix_suite_passes_and_serializes() {
        let report = run_suite(Suite::Appendix, &SuiteConfig::default()).unwrap();
        assert!(report.summary.total >= 6);
        assert_eq!(report.summary.failed, 0, "{}", report.to_json());
        assert_eq!(
            report.summary.passed + report.summary.failed,
            report.summary.total
        );
        let json = report.to_json();
        assert!(json.contains("\"config_fingerprint\""));
        assert!(json.contains("appendix.ik_solution_residual"));
    }

    #[test]
    fn impossible_tolerance_fails_everything() {
        let cfg = SuiteConfig {
            tolerance_override: Some(1e-30),
            ..SuiteConfig::default()
        };
        let report = run_suite(Suite::Appendix, &cfg).unwrap();
        assert_eq!(report.summary.passed, 0);
        assert!(report.summary.failed > 0);
    }

    #[test]
    fn reports_are_deterministic_across_worker_counts() {
        let serial = run_suite(
            Suite::Appendix,
            &SuiteConfig {
                workers: Some(1),
                ..SuiteConfig::default()
            },
        )
        .unwrap();
        let parallel = run_suite(
            Suite::Appendix,
            &SuiteConfig {
                workers: Some(4),
                ..SuiteConfig::default()
            },
        )
        .unwrap();
        assert_eq!(serial.to_json(), parallel.to_json());
    }

    #[test]
    fn fingerprint_tracks_config() {
        let base = run_suite(Suite::Appendix, &SuiteConfig::default()).unwrap();
        let mut cfg = SuiteConfig::default();
        cfg.quad.abs_tol = 1e-9;
        let other = run_suite(Suite::Appendix, &cfg).unwrap();
        assert_ne!(base.config_fingerprint, other.config_fingerprint);
    }

    #[test]
    fn typeii_suite_has_enough_cases() {
        assert!(suite_cases(Suite::Typeii).len() >= 20);
        let all = suite_cases(Suite::All).len();
        let sum = suite_cases(Suite::Mordell1d).len()
            + suite_cases(Suite::Typeii).len()
            + suite_cases(Suite::Mordell2d).len()
            + suite_cases(Suite::Regularized).len()
            + suite_cases(Suite::Appendix).len();
        assert_eq!(all, sum);
    }

    #[test]
    fn sweep_tanh_coth_constant() {
        let rows = sweep(
            "typeii.int_tanh_coth",
            "alpha",
            0.2,
            5.0,
            25,
            &QuadConfig::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 25);
        assert_eq!(rows[0].value, 0.2);
        assert_eq!(rows[24].value, 5.0);
        for r in &rows {
            assert!((r.computed - 0.25).abs() <= 2e-8, "alpha = {}", r.value);
        }
    }

    #[test]
    fn sweep_with_fixed_params() {
        let rows = sweep(
            "mordell2d.quadratic_symmetry_residual[n=3]",
            "alpha",
            0.5,
            2.0,
            3,
            &QuadConfig::default(),
        )
        .unwrap();
        for r in &rows {
            assert!(r.residual <= 1e-8);
        }
    }

    #[test]
    fn sweep_rejects_bad_requests() {
        let cfg = QuadConfig::default();
        assert!(sweep("typeii.int_tanh_coth", "alpha", 1.0, 2.0, 1, &cfg).is_err());
        assert!(sweep("typeii.int_tanh_coth", "alpha", 2.0, 1.0, 3, &cfg).is_err());
        assert!(sweep("typeii.int_tanh_coth", "beta", 1.0, 2.0, 3, &cfg).is_err());
        assert!(sweep("nope.nothing", "alpha", 1.0, 2.0, 3, &cfg).is_err());
        assert!(sweep("mordell2d.reduction_residual", "alpha", 1.0, 2.0, 3, &cfg).is_err());
        assert!(sweep("mordell2d.reduction_residual[n=1", "alpha", 1.0, 2.0, 3, &cfg).is_err());
    }

    #[test]
    fn sweep_csv_shape() {
        let rows = vec![SweepRow {
            value: 1.0,
            computed: 0.25,
            expected: Some(0.25),
            residual: 0.0,
        }];
        let csv = sweep_csv("alpha", &rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "alpha,computed,expected,residual");
        assert_eq!(lines.next().unwrap().split(',').count(), 4);
    }

    #[test]
    fn float_formatting_is_17_digits() {
        assert_eq!(fmt_float(0.25), "2.5000000000000000e-1");
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
    }
}
