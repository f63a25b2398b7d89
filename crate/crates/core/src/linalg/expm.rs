use num_complex::Complex64;

use crate::linalg::embed::CMatrix;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the unscaled degree-13 approximant is accurate
/// to double precision.
const THETA13: f64 = 5.371_920_351_148_152;

fn one_norm(m: &CMatrix) -> f64 {
    (0..m.ncols())
        .map(|c| m.column(c).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant.
pub fn expm(a: &CMatrix) -> CMatrix {
    assert!(a.is_square(), "expm needs a square matrix");
    let n = a.nrows();
    let norm = one_norm(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = a * Complex64::new(0.5f64.powi(s), 0.0);
    let c = |k: usize| Complex64::new(PADE13[k], 0.0);
    let id = CMatrix::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let inner_u = &a6 * c(13) + &a4 * c(11) + &a2 * c(9);
    let u = &a * (&a6 * inner_u + &a6 * c(7) + &a4 * c(5) + &a2 * c(3) + &id * c(1));
    let inner_v = &a6 * c(12) + &a4 * c(10) + &a2 * c(8);
    let v = &a6 * inner_v + &a6 * c(6) + &a4 * c(4) + &a2 * c(2) + &id * c(0);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .expect("Padé denominator is nonsingular after scaling");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_exponential() {
        let a = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.0, 1.0), c(-2.0, 0.0), c(0.5, -3.0)]));
        let e = expm(&a);
        for k in 0..3 {
            assert!((e[(k, k)] - a[(k, k)].exp()).norm() < 1e-14);
        }
    }

    #[test]
    fn rotation_generator() {
        // exp(t [[0,-1],[1,0]]) is the rotation by t
        for &t in &[0.3, 2.0, 17.5] {
            let a = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-t, 0.0), c(t, 0.0), c(0.0, 0.0)]);
            let e = expm(&a);
            let r = CMatrix::from_row_slice(2, 2, &[c(t.cos(), 0.0), c(-t.sin(), 0.0), c(t.sin(), 0.0), c(t.cos(), 0.0)]);
            assert!((e - r).norm() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn nilpotent_series_terminates() {
        let a = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(5.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let e = expm(&a);
        let expected = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(5.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((e - expected).norm() < 1e-13);
    }
}
