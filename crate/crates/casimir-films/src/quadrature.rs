//! Adaptive Gauss–Kronrod integration.
//!
//! One workhorse rule (7-point Gauss / 15-point Kronrod) plus two drivers:
//! [`integrate`] bisects a single interval until the error budget is met,
//! [`integrate_panels`] runs a pre-split composite grid sharing one global
//! budget so that panels carrying a tiny fraction of the total are not
//! refined to a pointless relative accuracy of their own.  Semi-infinite
//! integrals go through [`semi_infinite`], which maps u = s·t/(1−t).

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (positive half; the rule is
// symmetric and never evaluates the endpoints).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];

// 7-point Gauss weights (for the embedded error estimate).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

// 15-point Kronrod weights.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_20,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// Value and estimated absolute error of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
}

/// Single 7/15 Gauss–Kronrod pass over `[a, b]`.
///
/// Returns the Kronrod estimate and a conservative error bound obtained by
/// rescaling |K15 − G7| against the smoothness indicator ∫|f − mean|, the
/// same heuristic QUADPACK uses.  Endpoints are never evaluated.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Quad {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut gauss = 0.0;
    let mut kronrod = WGK[7] * f_center;
    let mut res_abs = WGK[7] * f_center.abs();
    let mut samples = [0.0f64; 15];
    samples[7] = f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = f(center - dx);
        let hi = f(center + dx);
        samples[j] = lo;
        samples[14 - j] = hi;
        let pair = lo + hi;
        kronrod += WGK[j] * pair;
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss nodes
            gauss += WG[j / 2] * pair;
        }
    }
    gauss += WG[3] * f_center;

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((samples[j] - mean).abs() + (samples[14 - j] - mean).abs());
    }

    let value = kronrod * half;
    let raw = ((kronrod - gauss) * half).abs();
    let res_asc = res_asc * half.abs();
    let mut error = raw;
    if res_asc != 0.0 && raw != 0.0 {
        error = res_asc * (200.0 * raw / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs * half.abs();
    Quad {
        value,
        error: error.max(floor),
    }
}

// Hard cap on bisections per driver call; smooth integrands converge in a
// handful, so hitting this means the integrand is singular or noisy.
const MAX_SEGMENTS: usize = 512;

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptively integrate `f` over `[a, b]`.
///
/// Bisects the worst segment until the summed error estimate drops below
/// `max(abs_tol, rel_tol·|value|)`.  Fails with [`Error::Numerical`] if the
/// integrand produces non-finite values or the segment cap is exhausted.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Quad> {
    if a == b {
        return Ok(Quad {
            value: 0.0,
            error: 0.0,
        });
    }
    let first = gauss_kronrod(f, a, b);
    let mut segs = vec![Segment {
        a,
        b,
        value: first.value,
        error: first.error,
    }];

    loop {
        let mut total = 0.0;
        let mut total_err = 0.0;
        let mut worst = 0;
        for (i, s) in segs.iter().enumerate() {
            total += s.value;
            total_err += s.error;
            if s.error > segs[worst].error {
                worst = i;
            }
        }
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::Numerical(format!(
                "non-finite quadrature result over [{a:e}, {b:e}]"
            )));
        }
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(Quad {
                value: total,
                error: total_err,
            });
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(Error::Numerical(format!(
                "quadrature failed to converge over [{a:e}, {b:e}]: \
                 {} segments, error {total_err:e} of {total:e}",
                segs.len()
            )));
        }

        let Segment { a: sa, b: sb, .. } = segs[worst];
        let mid = 0.5 * (sa + sb);
        if mid <= sa || mid >= sb {
            return Err(Error::Numerical(format!(
                "quadrature interval [{sa:e}, {sb:e}] cannot be split further"
            )));
        }
        let left = gauss_kronrod(f, sa, mid);
        let right = gauss_kronrod(f, mid, sb);
        segs[worst] = Segment {
            a: sa,
            b: mid,
            value: left.value,
            error: left.error,
        };
        segs.push(Segment {
            a: mid,
            b: sb,
            value: right.value,
            error: right.error,
        });
    }
}

/// Composite integration over consecutive panels `edges[0] ≤ … ≤ edges[n]`.
///
/// A rough single-rule pass first sets the overall scale; every panel then
/// gets an absolute budget derived from that scale, so nearly-empty tail
/// panels stop immediately instead of chasing relative accuracy on values
/// that are negligible in the sum.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: &F, edges: &[f64], rel_tol: f64) -> Result<Quad> {
    integrate_panels_with_floor(f, edges, rel_tol, 0.0)
}

/// [`integrate_panels`] with a lower bound on the total absolute error
/// budget.  Callers that know their integral only matters above some
/// magnitude pass that knowledge here; without it, an integral that is
/// essentially zero (cancellation residue, say) pins the budget to its own
/// noise floor and the refinement loop can never win.
pub fn integrate_panels_with_floor<F: Fn(f64) -> f64>(
    f: &F,
    edges: &[f64],
    rel_tol: f64,
    abs_floor: f64,
) -> Result<Quad> {
    if edges.len() < 2 {
        return Err(Error::Numerical(
            "panel integration needs at least two edges".into(),
        ));
    }
    let mut scale = 0.0;
    for w in edges.windows(2) {
        scale += gauss_kronrod(f, w[0], w[1]).value.abs();
    }
    if !scale.is_finite() {
        return Err(Error::Numerical(
            "non-finite integrand in panel scale pass".into(),
        ));
    }
    let n = edges.len() - 1;
    let abs_tol = (rel_tol * scale).max(abs_floor) / (4.0 * n as f64);

    let mut value = 0.0;
    let mut error = 0.0;
    for w in edges.windows(2) {
        let q = integrate(f, w[0], w[1], rel_tol, abs_tol)?;
        value += q.value;
        error += q.error;
    }
    Ok(Quad { value, error })
}

/// Integrate `f` over `[0, ∞)` via the substitution u = scale·t/(1−t).
///
/// `scale` should sit near the scale on which `f` varies; the integrand must
/// decay at least as fast as u⁻³ for the mapped image to stay integrable.
pub fn semi_infinite<F: Fn(f64) -> f64>(f: &F, scale: f64, rel_tol: f64) -> Result<Quad> {
    semi_infinite_with_floor(f, scale, rel_tol, 0.0)
}

/// [`semi_infinite`] with an absolute error-budget floor, as in
/// [`integrate_panels_with_floor`].
pub fn semi_infinite_with_floor<F: Fn(f64) -> f64>(
    f: &F,
    scale: f64,
    rel_tol: f64,
    abs_floor: f64,
) -> Result<Quad> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Numerical(format!(
            "semi-infinite map needs a positive finite scale, got {scale:e}"
        )));
    }
    let mapped = |t: f64| {
        let om = 1.0 - t;
        let u = scale * t / om;
        f(u) * scale / (om * om)
    };
    // pre-split so the adaptive pass starts with the decades separated
    integrate_panels_with_floor(
        &mapped,
        &[0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0],
        rel_tol,
        abs_floor,
    )
}
