use num_complex::Complex64;

use super::SpectralError;

/// Relative off-diagonal Frobenius norm at which the sweeps stop.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for t in 0..n {
                let a = self.get(i, t);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(t, j);
                }
            }
        }
        out
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn off_diagonal(&self) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = self.frobenius().max(1.0);
        (0..self.dim).all(|i| (0..self.dim).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol * scale))
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// sorted descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>, SpectralError> {
    if !m.is_hermitian(1e-9) {
        return Err(SpectralError::NotHermitian);
    }
    let n = m.dim;
    let mut a = m.clone();
    let scale = a.frobenius();
    let sorted = |a: &ComplexMatrix| {
        let mut ev: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        ev.sort_by(|x, y| y.total_cmp(x));
        ev
    };
    if scale == 0.0 || n < 2 {
        return Ok(sorted(&a));
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        if a.off_diagonal() <= JACOBI_TOLERANCE * scale {
            return Ok(sorted(&a));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    let residual = a.off_diagonal() / scale;
    if residual <= JACOBI_TOLERANCE {
        Ok(sorted(&a))
    } else {
        Err(SpectralError::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            residual,
        })
    }
}

// Annihilates a[p][q] with J = diag phase * real rotation, A <- J^* A J.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim;
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r; // e^{i phi}
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // Columns: J_pp = c, J_qp = -s e^{-i phi}, J_pq = s, J_qq = c e^{-i phi}.
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * c + akq * jqp);
        a.set(k, q, akp * s + akq * jqq);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, apk * c + aqk * jqp.conj());
        a.set(q, k, apk * s + aqk * jqq.conj());
    }
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
    a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal() {
        let m = ComplexMatrix::from_real_rows(&[vec![5.0, 0.0, 0.0], vec![0.0, 5.0, 0.0], vec![0.0, 0.0, 5.0]]);
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![5.0, 5.0, 5.0]);
    }

    #[test]
    fn five_times_all_ones() {
        let m = ComplexMatrix::from_real_rows(&vec![vec![5.0; 3]; 3]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert!((ev[0] - 15.0).abs() < 1e-10);
        assert!(ev[1].abs() < 1e-10 && ev[2].abs() < 1e-10);
    }

    #[test]
    fn tanner_block_at_first_root() {
        // Rounded entries as displayed for H(rho) H(rho)^T of the 155-bit Tanner code.
        let m = ComplexMatrix::from_rows(vec![
            vec![c(5.0, 0.0), c(1.5419, -2.2180), c(-0.3934, -0.8726)],
            vec![c(1.5419, 2.2180), c(5.0, 0.0), c(-1.6485, -1.4384)],
            vec![c(-0.3934, 0.8726), c(-1.6485, 1.4384), c(5.0, 0.0)],
        ]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        for (got, want) in ev.iter().zip([8.6801, 4.8459, 1.4740]) {
            assert!((got - want).abs() < 1e-3, "{got} vs {want}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 1.0), c(1.0, 0.0)]]);
        assert_eq!(hermitian_eigenvalues(&m), Err(SpectralError::NotHermitian));
    }

    proptest::proptest! {
        #[test]
        fn trace_and_frobenius_preserved(entries in proptest::collection::vec(-3.0f64..3.0, 32)) {
            let n = 4;
            let mut m = ComplexMatrix::zeros(n);
            let mut it = entries.into_iter();
            for i in 0..n {
                m.set(i, i, c(it.next().unwrap(), 0.0));
                for j in i + 1..n {
                    let z = c(it.next().unwrap(), it.next().unwrap());
                    m.set(i, j, z);
                    m.set(j, i, z.conj());
                }
            }
            let ev = hermitian_eigenvalues(&m).unwrap();
            let tr: f64 = ev.iter().sum();
            proptest::prop_assert!((tr - m.trace().re).abs() < 1e-9);
            let sq: f64 = ev.iter().map(|x| x * x).sum();
            proptest::prop_assert!((sq - m.mul(&m).trace().re).abs() < 1e-8);
            let cube: f64 = ev.iter().map(|x| x * x * x).sum();
            proptest::prop_assert!((cube - m.mul(&m).mul(&m).trace().re).abs() < 1e-7);
        }
    }
}
