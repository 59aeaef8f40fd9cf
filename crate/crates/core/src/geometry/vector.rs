//! Dense vector kernels over R^{2n} with the interleaved complex layout
//! (Re z_1, Im z_1, Re z_2, Im z_2, ...).

use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + *x * *y;
    }
    acc
}

pub fn norm_sq<S: Scalar>(a: &[S]) -> S {
    dot(a, a)
}

pub fn norm<S: Scalar>(a: &[S]) -> S {
    norm_sq(a).sqrt()
}

pub fn scale<S: Scalar>(a: &[S], c: S) -> Vec<S> {
    a.iter().map(|x| *x * c).collect()
}

pub fn neg<S: Scalar>(a: &[S]) -> Vec<S> {
    a.iter().map(|x| -*x).collect()
}

pub fn normalize<S: Scalar>(a: &[S]) -> Result<Vec<S>> {
    let n = norm(a);
    if n <= S::zero() {
        return Err(GeomError::ZeroDirection);
    }
    Ok(scale(a, S::one() / n))
}

pub fn check_even_dim<S: Scalar>(a: &[S]) -> Result<()> {
    if a.len() < 2 || a.len() % 2 != 0 {
        return Err(GeomError::OddDimension(a.len()));
    }
    Ok(())
}

/// Blockwise complex rotation: z_j -> e^{i phi} z_j for every complex
/// coordinate simultaneously.
pub fn rotate_complex<S: Scalar>(point: &[S], angle: S) -> Result<Vec<S>> {
    check_even_dim(point)?;
    let (c, s) = (angle.cos(), angle.sin());
    let mut out = Vec::with_capacity(point.len());
    for chunk in point.chunks_exact(2) {
        let (re, im) = (chunk[0], chunk[1]);
        out.push(c * re - s * im);
        out.push(s * re + c * im);
    }
    Ok(out)
}

/// Modulus of the Hermitian inner product sum_j z_j conj(w_j), which equals
/// sup over phi of <x, rotate_complex(y, phi)> under the real pairing.
pub fn herm_abs<S: Scalar>(x: &[S], y: &[S]) -> S {
    debug_assert_eq!(x.len(), y.len());
    let mut re = S::zero();
    let mut im = S::zero();
    for (zx, zy) in x.chunks_exact(2).zip(y.chunks_exact(2)) {
        // z conj(w) = (a+bi)(c-di) = (ac+bd) + (bc-ad)i
        re = re + zx[0] * zy[0] + zx[1] * zy[1];
        im = im + zx[1] * zy[0] - zx[0] * zy[1];
    }
    (re * re + im * im).sqrt()
}

/// Per-complex-coordinate moduli (|z_1|, ..., |z_n|).
pub fn moduli<S: Scalar>(x: &[S]) -> Vec<S> {
    x.chunks_exact(2)
        .map(|c| (c[0] * c[0] + c[1] * c[1]).sqrt())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rotate_by_quarter_turn_is_multiplication_by_i() {
        let p = rotate_complex(&[1.0, 0.0], std::f64::consts::FRAC_PI_2).unwrap();
        assert_relative_eq!(p[0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(p[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rotate_by_pi_negates_both_coordinates() {
        let p = rotate_complex(&[1.0, 0.0, 1.0, 0.0], std::f64::consts::PI).unwrap();
        assert_relative_eq!(p[0], -1.0, epsilon = 1e-12);
        assert_relative_eq!(p[2], -1.0, epsilon = 1e-12);
    }

    #[test]
    fn rotate_zero_angle_is_identity() {
        let x = [0.3, -0.7, 1.1, 0.2];
        let p = rotate_complex(&x, 0.0).unwrap();
        assert_eq!(&p[..], &x[..]);
    }

    #[test]
    fn rotation_is_an_isometry() {
        let x = [0.3, -0.7, 1.1, 0.2];
        let p = rotate_complex(&x, 1.234).unwrap();
        assert_relative_eq!(norm(&p), norm(&x), epsilon = 1e-12);
    }

    #[test]
    fn odd_dimension_rejected() {
        assert!(rotate_complex(&[1.0, 2.0, 3.0], 0.5).is_err());
    }

    #[test]
    fn herm_abs_is_sup_over_rotations() {
        let x = [0.3, -0.7, 1.1, 0.2];
        let y = [0.5, 0.4, -0.2, 0.9];
        let mut best: f64 = 0.0;
        for k in 0..10_000 {
            let phi = 2.0 * std::f64::consts::PI * (k as f64) / 10_000.0;
            let ry = rotate_complex(&y, phi).unwrap();
            best = best.max(dot(&x, &ry));
        }
        assert_relative_eq!(herm_abs(&x, &y), best, epsilon = 1e-6);
    }
}
