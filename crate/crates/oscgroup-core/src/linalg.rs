//! Dense complex linear algebra helpers shared by the numeric modules.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;
pub type Vector = DVector<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `A ⊗ B` with the second factor varying fastest.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = Mat::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

pub fn anticommutator(a: &Mat, b: &Mat) -> Mat {
    a * b + b * a
}

/// Largest entry modulus.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Largest entry modulus of the leading `k × k` block.
pub fn max_abs_window(m: &Mat, k: usize) -> f64 {
    let k = k.min(m.nrows()).min(m.ncols());
    max_abs(&m.view((0, 0), (k, k)).into_owned())
}

pub fn window(m: &Mat, k: usize) -> Mat {
    m.view((0, 0), (k, k)).into_owned()
}

fn norm1(m: &Mat) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant.
pub fn expm(a: &Mat) -> Mat {
    let n = a.nrows();
    let nrm = norm1(a);
    let s = if nrm > THETA13 {
        libm::ceil(libm::log2(nrm / THETA13)) as i32
    } else {
        0
    };
    let a = a * real(libm::pow(2.0, -(s as f64)));
    let id = Mat::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |i: usize| real(PADE13[i]);
    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);
    let num = &v + &u;
    let den = &v - &u;
    let mut r = den.lu().solve(&num).expect("Padé denominator is invertible");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Orthonormal basis of the span of the given columns (modified
/// Gram–Schmidt, twice).
pub fn orthonormalize(cols: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in cols {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let proj = q.dotc(&w);
                w -= q * proj;
            }
        }
        let n = w.norm();
        if n > 1e-300 {
            out.push(w / real(n));
        }
    }
    out
}

/// Principal angles (radians) between two subspaces, computed from the
/// sines so small angles stay accurate.
pub fn principal_angles(u: &[Vector], v: &[Vector]) -> Vec<f64> {
    let qu = orthonormalize(u);
    let qv = orthonormalize(v);
    if qu.is_empty() || qv.is_empty() {
        return Vec::new();
    }
    let mu = Mat::from_columns(&qu);
    let mv = Mat::from_columns(&qv);
    let resid = &mv - &mu * (mu.adjoint() * &mv);
    let sv = resid.svd(false, false).singular_values;
    let mut angles: Vec<f64> = sv.iter().map(|s| libm::asin(s.min(1.0))).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_rotation() {
        let t = 0.7;
        let m = Mat::from_row_slice(2, 2, &[real(0.0), real(-t), real(t), real(0.0)]);
        let e = expm(&m);
        assert!((e[(0, 0)].re - libm::cos(t)).abs() < 1e-14);
        assert!((e[(1, 0)].re - libm::sin(t)).abs() < 1e-14);
    }

    #[test]
    fn expm_large_norm_diagonal() {
        let m = Mat::from_diagonal(&Vector::from_vec(alloc::vec![real(12.0), c(0.0, 3.0)]));
        let e = expm(&m);
        assert!((e[(0, 0)].re / libm::exp(12.0) - 1.0).abs() < 1e-13);
        assert!((e[(1, 1)] - c(libm::cos(3.0), libm::sin(3.0))).norm() < 1e-13);
    }

    #[test]
    fn angle_between_lines() {
        let u = [Vector::from_vec(alloc::vec![real(1.0), real(0.0)])];
        let v = [Vector::from_vec(alloc::vec![real(1.0), real(1.0)])];
        let a = principal_angles(&u, &v);
        assert!((a[0] - core::f64::consts::FRAC_PI_4).abs() < 1e-14);
    }
}
