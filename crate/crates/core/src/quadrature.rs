//! Adaptive Gauss-Kronrod (10/21 point) and tanh-sinh quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_926_957_053_046,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Result of a quadrature together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
    /// False when the interval budget ran out before the tolerance was met.
    pub converged: bool,
}

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

impl QuadOptions {
    pub fn tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    // error estimate is pinned at the round-off floor
    floor: bool,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err.total_cmp(&o.err).is_eq()
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err)
    }
}

fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Piece> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[10];
    let mut resg = 0.0;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    if !resk.is_finite() {
        return Err(Error::Quadrature(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * h;
    resasc *= h.abs();
    resabs *= h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (1.0f64).min((200.0 * err / resasc).powf(1.5));
    }
    let round = 50.0 * f64::EPSILON * resabs;
    let mut floor = false;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && err <= round {
        err = round;
        floor = true;
    }
    Ok(Piece { a, b, value, err, floor })
}

/// Globally adaptive Gauss-Kronrod quadrature of `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<Integral> {
    integrate_with_breaks(f, &[a, b], opts)
}

/// As [`integrate`], with the initial partition fixed at `points` (sorted, at least two entries).
///
/// Integrable singularities and jumps should sit at partition points so the rule never
/// samples them.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    points: &[f64],
    opts: QuadOptions,
) -> Result<Integral> {
    if points.len() < 2 {
        return Err(Error::Argument("integration needs at least two points".into()));
    }
    let mut pieces = std::collections::BinaryHeap::with_capacity(64);
    for w in points.windows(2) {
        if w[1] < w[0] {
            return Err(Error::Argument("breakpoints must be sorted".into()));
        }
        if w[1] > w[0] {
            pieces.push(gk21(&mut f, w[0], w[1])?);
        }
    }
    let mut evals = 21 * pieces.len();
    let mut total: f64 = pieces.iter().map(|p| p.value).sum();
    let mut err: f64 = pieces.iter().map(|p| p.err).sum();
    let finish = |pieces: &std::collections::BinaryHeap<Piece>, evals, converged| {
        Ok(Integral {
            value: pieces.iter().map(|p| p.value).sum(),
            abs_error: pieces.iter().map(|p| p.err).sum(),
            evaluations: evals,
            converged,
        })
    };
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        let Some(worst) = pieces.peek().copied() else {
            return finish(&pieces, evals, true);
        };
        if err <= target {
            return finish(&pieces, evals, true);
        }
        if worst.floor {
            // nothing left to refine but rounding noise
            return finish(&pieces, evals, true);
        }
        let mid = 0.5 * (worst.a + worst.b);
        let too_small = mid <= worst.a || mid >= worst.b;
        if pieces.len() >= opts.max_intervals || too_small {
            return finish(&pieces, evals, false);
        }
        pieces.pop();
        let left = gk21(&mut f, worst.a, mid)?;
        let right = gk21(&mut f, mid, worst.b)?;
        evals += 42;
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        pieces.push(left);
        pieces.push(right);
    }
}

/// Tanh-sinh (double exponential) quadrature on `[a, b]`.
///
/// The integrand receives `(x, x - a, b - x)` with the two distances computed without
/// cancellation, so functions singular at an endpoint can be evaluated accurately.
pub fn tanh_sinh<F: FnMut(f64, f64, f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    use std::f64::consts::FRAC_PI_2;
    let c = 0.5 * (a + b);
    let h2 = 0.5 * (b - a);
    let tmax = 6.0;
    let mut h = 1.0f64;
    let mut evals = 1usize;
    let mut sum = FRAC_PI_2 * f(c, h2, h2);
    let mut sample = |t: f64, evals: &mut usize| -> Result<f64> {
        let s = FRAC_PI_2 * t.sinh();
        let ch = s.cosh();
        // 1 - tanh(s) computed without cancellation
        let comp = 1.0 / (s.exp() * ch);
        let w = FRAC_PI_2 * t.cosh() / (ch * ch);
        if comp == 0.0 || w == 0.0 {
            return Ok(0.0);
        }
        let dist = h2 * comp;
        let far = 2.0 * h2 - dist;
        let x = b - dist;
        let x2 = a + dist;
        *evals += 2;
        let v = f(x, far, dist) + f(x2, dist, far);
        if !v.is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand near {x}")));
        }
        Ok(w * v)
    };
    let mut k = 1;
    while (k as f64) * h <= tmax {
        sum += sample(k as f64 * h, &mut evals)?;
        k += 1;
    }
    let mut prev = sum * h * h2;
    for _level in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= tmax {
            sum += sample(k as f64 * h, &mut evals)?;
            k += 2;
        }
        let cur = sum * h * h2;
        let diff = (cur - prev).abs();
        if diff <= tol * cur.abs().max(1e-300) || diff < 1e-300 {
            return Ok(Integral {
                value: cur,
                abs_error: diff,
                evaluations: evals,
                converged: true,
            });
        }
        prev = cur;
    }
    Ok(Integral {
        value: prev,
        abs_error: f64::NAN,
        evaluations: evals,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_exact_on_polynomials() {
        let r = gk21(&mut |x: f64| x.powi(30) + x.powi(7), -1.0, 1.0).unwrap();
        assert!((r.value - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_weights_sum_to_two() {
        let s: f64 = WG.iter().sum::<f64>() * 2.0;
        let k: f64 = WGK[..10].iter().sum::<f64>() * 2.0 + WGK[10];
        assert!((s - 2.0).abs() < 1e-15);
        assert!((k - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_log_endpoint() {
        let r = integrate(|x: f64| -x.ln(), 0.0, 1.0, QuadOptions::tol(1e-13, 1e-13)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn adaptive_inverse_sqrt() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, QuadOptions::tol(1e-12, 1e-12)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn tanh_sinh_inverse_sqrt_both_ends() {
        // int_0^1 dx / sqrt(x(1-x)) = pi
        let r = tanh_sinh(
            |_x, da, db| 1.0 / (da * db).sqrt(),
            0.0,
            1.0,
            1e-13,
        )
        .unwrap();
        assert!((r.value - std::f64::consts::PI).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn breaks_split_jump() {
        let r = integrate_with_breaks(
            |x: f64| if x < 0.3 { 1.0 } else { 2.0 },
            &[0.0, 0.3, 1.0],
            QuadOptions::default(),
        )
        .unwrap();
        assert!((r.value - 1.7).abs() < 1e-14);
    }
}
