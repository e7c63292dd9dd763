//! Adaptive Gauss–Kronrod (7–15) quadrature.

use crate::error::Error;
use crate::Result;

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights,
// with the embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_207,
    0.949_107_912_342_758_524_526,
    0.864_864_423_359_769_072_790,
    0.741_531_185_599_394_439_864,
    0.586_087_235_467_691_130_294,
    0.405_845_151_377_397_166_907,
    0.207_784_955_007_898_467_601,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_964,
    0.063_092_092_629_978_553_291,
    0.104_790_010_322_250_183_840,
    0.140_653_259_715_525_918_745,
    0.169_004_726_639_267_902_827,
    0.190_350_578_064_785_409_913,
    0.204_432_940_075_298_892_414,
    0.209_482_141_084_727_828_013,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_271,
    0.279_705_391_489_276_667_901,
    0.381_830_050_505_118_944_950,
    0.417_959_183_673_469_387_755,
];

/// Maximum number of interval bisections before giving up.
const MAX_SPLITS: usize = 400;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = half * XGK[j];
        let pair = f(center - x) + f(center + x);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrate `f` over [a, b] to the requested relative tolerance by
/// adaptive bisection of the interval with the largest error estimate.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut panels = vec![gauss_kronrod_panel(&f, a, b)];
    for _ in 0..MAX_SPLITS {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        if err <= rel_tol * total.abs() + f64::MIN_POSITIVE {
            return Ok(total);
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|(_, p), (_, q)| p.error.total_cmp(&q.error))
            .map(|(i, _)| i)
            .expect("nonempty panel list");
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        panels.push(gauss_kronrod_panel(&f, a, mid));
        panels.push(gauss_kronrod_panel(&f, mid, b));
    }
    let total: f64 = panels.iter().map(|p| p.value).sum();
    let err: f64 = panels.iter().map(|p| p.error).sum();
    Err(Error::QuadratureNonConvergence {
        best: err / total.abs().max(f64::MIN_POSITIVE),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(integrate(|x| x.exp(), 1.0, 1.0, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn exponential_against_closed_form() {
        let v = integrate(|x| (-x).exp(), 0.0, 5.0, 1e-10).unwrap();
        let exact = 1.0 - (-5.0f64).exp();
        assert!((v - exact).abs() / exact < 1e-10);
    }

    #[test]
    fn sharply_peaked_integrand_converges() {
        // Gaussian of width 1e-3 inside [0, 1]
        let s = 1e-3;
        let v = integrate(
            |x| (-(x - 0.5) * (x - 0.5) / (2.0 * s * s)).exp(),
            0.0,
            1.0,
            1e-9,
        )
        .unwrap();
        let exact = s * (2.0 * std::f64::consts::PI).sqrt();
        assert!((v - exact).abs() / exact < 1e-8);
    }
}
