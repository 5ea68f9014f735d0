//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.

use num_complex::Complex64;

use super::state::{hermitian_deviation, CMatrix};
use crate::{Error, Result};

/// Off-diagonal Frobenius norm, relative to the full norm, at which sweeps stop.
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-8;

/// Eigenvalues in descending order with unit eigenvectors stored as matching columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub fn hermitian_eigenvalues(mat: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(mat).map(|e| e.values)
}

pub fn hermitian_eigen(mat: &CMatrix) -> Result<HermitianEigen> {
    let n = mat.nrows();
    if mat.ncols() != n {
        return Err(Error::Argument(format!(
            "eigensolver needs a square matrix, got {}x{}",
            n,
            mat.ncols()
        )));
    }
    let dev = hermitian_deviation(mat);
    if dev > HERMITIAN_TOL {
        return Err(Error::Argument(format!(
            "matrix is not Hermitian (deviation {dev:e})"
        )));
    }

    // Row-major working copy, explicitly symmetrized.
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (mat[(i, j)] + mat[(j, i)].conj()) * 0.5;
        }
        a[i * n + i].im = 0.0;
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let full: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tol = OFF_DIAGONAL_TOL * full;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[i * n + i].re + 0.0).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[r * n + order[c]]);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating a[p][q].
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let g = apq.norm();
    if g < f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / g;
    let theta = (a[q * n + q].re - a[p * n + p].re) / (2.0 * g);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // U restricted to (p, q): [[c, s], [-s·conj(e), c·conj(e)]] with e the phase of a[p][q].
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c + akq * u_qp;
        a[k * n + q] = akp * s + akq * u_qq;
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * c + vkq * u_qp;
        v[k * n + q] = vkp * s + vkq * u_qq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c + aqk * u_qp.conj();
        a[q * n + k] = apk * s + aqk * u_qq.conj();
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let g = CMatrix::from_fn(n, n, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        (&g + g.adjoint()).scale(0.5)
    }

    #[test]
    fn diagonal_sorted_descending() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(3.0, 0.0),
            c(1.0, 0.0),
            c(2.0, 0.0),
        ]));
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x =
            CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let ev = hermitian_eigenvalues(&x).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_y_spectrum() {
        let y =
            CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let ev = hermitian_eigenvalues(&y).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m =
            CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::Argument(_))));
        let rect = CMatrix::zeros(2, 3);
        assert!(hermitian_eigen(&rect).is_err());
    }

    #[test]
    fn zero_matrix() {
        let ev = hermitian_eigenvalues(&CMatrix::zeros(4, 4)).unwrap();
        assert!(ev.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn random_hermitian_trace_and_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 3, 5, 8, 16, 27] {
            let h = random_hermitian(n, &mut rng);
            let eig = hermitian_eigen(&h).unwrap();
            let tr: f64 = h.trace().re;
            assert!((eig.values.iter().sum::<f64>() - tr).abs() < 1e-9);
            let norm = h.norm();
            for (k, &lam) in eig.values.iter().enumerate() {
                let vk = eig.vectors.column(k);
                let r = (&h * vk - vk.scale(lam))
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                assert!(r <= 1e-9 * norm.max(1.0), "residual {r} for n={n}");
            }
            let id = eig.vectors.adjoint() * &eig.vectors;
            assert!(crate::qudit::max_abs_diff(&id, &CMatrix::identity(n, n)) < 1e-12);
        }
    }

    #[test]
    fn agrees_with_nalgebra_eigensolver() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 4, 9] {
            let h = random_hermitian(n, &mut rng);
            let ours = hermitian_eigenvalues(&h).unwrap();
            let mut theirs: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
            theirs.sort_by(|a, b| b.total_cmp(a));
            for (x, y) in ours.iter().zip(&theirs) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut m = CMatrix::identity(4, 4);
        m[(0, 3)] = c(0.0, 1.0);
        m[(3, 0)] = c(0.0, -1.0);
        let ev = hermitian_eigenvalues(&m).unwrap();
        let expected = [2.0, 1.0, 1.0, 0.0];
        for (x, y) in ev.iter().zip(expected) {
            assert!((x - y).abs() < 1e-14);
        }
    }
}
