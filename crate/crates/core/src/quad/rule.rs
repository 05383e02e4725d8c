//! 15-point Gauss-Kronrod rule over complex-valued integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Kronrod abscissae for the 7-15 pair, positive half.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// 7-point Gauss weights.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// 15-point Kronrod weights.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Number of integrand evaluations per application of the rule.
pub const EVALS_PER_RULE: u64 = 15;

thread_local! {
    static EVAL_COUNT: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

/// Running count of integrand evaluations on this thread; lets callers meter
/// composite operations that only surface scalar results.
pub fn thread_eval_count() -> u64 {
    EVAL_COUNT.with(|c| c.get())
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

/// Apply the 7-15 pair on `[a, b]`, returning the Kronrod estimate and the
/// rescaled error estimate. NaN from the integrand is a hard error that names
/// the offending abscissa.
pub fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half_len = 0.5 * (b - a);
    EVAL_COUNT.with(|c| c.set(c.get() + EVALS_PER_RULE));

    let eval = |x: f64| -> Result<Complex64> {
        let v = f(x);
        if v.re.is_nan() || v.im.is_nan() {
            return Err(Error::NanAbscissa { abscissa: x });
        }
        Ok(v)
    };

    let f_center = eval(center)?;
    // the center node belongs to both rules
    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.norm();

    let mut fv = [Complex64::new(0.0, 0.0); 15];
    fv[7] = f_center;

    for j in 0..7 {
        let abscissa = half_len * XGK[j];
        let f1 = eval(center - abscissa)?;
        let f2 = eval(center + abscissa)?;
        fv[j] = f1;
        fv[14 - j] = f2;
        let fsum = f1 + f2;
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss nodes
            res_gauss += WG[j / 2] * fsum;
        }
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).norm() + (fv[14 - j] - mean).norm());
    }

    let err = (res_kronrod - res_gauss).norm() * half_len.abs();
    res_abs *= half_len.abs();
    res_asc *= half_len.abs();

    Ok((res_kronrod * half_len, rescale_error(err, res_abs, res_asc)))
}
