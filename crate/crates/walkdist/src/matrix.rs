//! Dense matrices over a generic scalar, with the small-matrix kernels the
//! rest of the crate needs: determinant, inverse, power traces, spectral
//! radius.
//!
//! Everything is written for matrices of desk size (n up to a few dozen);
//! clarity and exact-rational support take priority over asymptotics.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use num_complex::Complex64;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    /// Identity matrix of order n.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    /// True for square matrices.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    /// Entrywise map to another scalar type.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entrywise conversion to f64.
    pub fn to_f64(&self) -> DenseMatrix<f64> {
        self.map(|v| v.to_f64())
    }

    /// Matrix sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix difference self - other.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * other.get(k, j).clone());
                }
            }
        }
        out
    }

    /// Multiplies every entry by c.
    pub fn scale_in_place(&mut self, c: &S) {
        for v in &mut self.data {
            *v = v.clone() * c.clone();
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> S {
        assert!(self.is_square());
        let mut t = S::zero();
        for i in 0..self.rows {
            t = t + self.get(i, i).clone();
        }
        t
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> S {
        let mut m = S::zero();
        for v in &self.data {
            let a = v.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// True if the matrix equals its transpose exactly.
    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// True if no entry is negative.
    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    /// Copy with row i and column j removed (dense indices).
    pub fn minor_without(&self, i: usize, j: usize) -> Self {
        assert!(i < self.rows && j < self.cols);
        let mut out = Self::zero(self.rows - 1, self.cols - 1);
        for r in 0..self.rows {
            if r == i {
                continue;
            }
            for c in 0..self.cols {
                if c == j {
                    continue;
                }
                let nr = if r > i { r - 1 } else { r };
                let nc = if c > j { c - 1 } else { c };
                out.set(nr, nc, self.get(r, c).clone());
            }
        }
        out
    }

    /// Determinant by Gaussian elimination with partial pivoting. Exact for
    /// rational scalars; pivots below the numeric threshold make the result
    /// exactly zero.
    pub fn determinant(&self) -> S {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let scale = self.max_abs();
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = m.get(col, col).abs();
            for r in (col + 1)..n {
                let mag = m.get(r, col).abs();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = r;
                }
            }
            if pivot_mag.negligible_pivot(&scale) {
                return S::zero();
            }
            if pivot_row != col {
                for c in 0..n {
                    let a = m.get(col, c).clone();
                    let b = m.get(pivot_row, c).clone();
                    m.set(col, c, b);
                    m.set(pivot_row, c, a);
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * pivot.clone();
            for r in (col + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone() / pivot.clone();
                for c in col..n {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let scale = self.max_abs();
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = m.get(col, col).abs();
            for r in (col + 1)..n {
                let mag = m.get(r, col).abs();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = r;
                }
            }
            if pivot_mag.negligible_pivot(&scale) {
                return Err(Error::SingularMatrix);
            }
            if pivot_row != col {
                for c in 0..n {
                    let a = m.get(col, c).clone();
                    let b = m.get(pivot_row, c).clone();
                    m.set(col, c, b);
                    m.set(pivot_row, c, a);
                    let a = inv.get(col, c).clone();
                    let b = inv.get(pivot_row, c).clone();
                    inv.set(col, c, b);
                    inv.set(pivot_row, c, a);
                }
            }
            let pivot = m.get(col, col).clone();
            for c in 0..n {
                let v = m.get(col, c).clone() / pivot.clone();
                m.set(col, c, v);
                let v = inv.get(col, c).clone() / pivot.clone();
                inv.set(col, c, v);
            }
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..n {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                    let v = inv.get(r, c).clone() - factor.clone() * inv.get(col, c).clone();
                    inv.set(r, c, v);
                }
            }
        }
        Ok(inv)
    }

    /// Traces of M^1 .. M^k.
    pub fn power_traces(&self, k: usize) -> Vec<S> {
        assert!(self.is_square());
        let mut out = Vec::with_capacity(k);
        let mut p = self.clone();
        for step in 0..k {
            if step > 0 {
                p = p.mul(self);
            }
            out.push(p.trace());
        }
        out
    }
}

impl DenseMatrix<f64> {
    /// Largest absolute difference of corresponding entries.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Spectral radius (largest eigenvalue magnitude).
    ///
    /// Symmetric nonnegative matrices use power iteration on M + sI with
    /// s = max|entry| (the shift makes bipartite-style +/- eigenvalue pairs
    /// converge). Anything else goes through the characteristic polynomial,
    /// assembled from power traces, with all roots located by Durand-Kerner
    /// iteration.
    pub fn spectral_radius(&self, tol: f64, max_iter: usize) -> Result<f64> {
        assert!(self.is_square(), "spectral radius of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(0.0);
        }
        let s = self.max_abs();
        if s == 0.0 {
            return Ok(0.0);
        }
        if n == 1 {
            return Ok(self.get(0, 0).abs());
        }
        if self.is_symmetric() && self.is_nonnegative() {
            self.power_iteration_radius(s, tol, max_iter)
        } else {
            self.char_poly_radius(tol, max_iter)
        }
    }

    fn power_iteration_radius(&self, shift: f64, tol: f64, max_iter: usize) -> Result<f64> {
        let n = self.rows;
        let mut x = vec![1.0 / (n as f64).sqrt(); n];
        let mut prev = f64::INFINITY;
        for _ in 0..max_iter {
            // y = (M + shift I) x
            let mut y = vec![0.0; n];
            for i in 0..n {
                let mut acc = shift * x[i];
                for j in 0..n {
                    acc += self.get(i, j) * x[j];
                }
                y[i] = acc;
            }
            let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Ok(0.0);
            }
            for v in &mut y {
                *v /= norm;
            }
            // Rayleigh quotient of the unshifted matrix.
            let mut lambda = 0.0;
            for i in 0..n {
                let mut acc = 0.0;
                for j in 0..n {
                    acc += self.get(i, j) * y[j];
                }
                lambda += y[i] * acc;
            }
            if (lambda - prev).abs() <= tol * (shift + lambda.abs()) {
                return Ok(lambda.max(0.0));
            }
            prev = lambda;
            x = y;
        }
        Err(Error::NonConvergence("power iteration", max_iter))
    }

    fn char_poly_radius(&self, tol: f64, max_iter: usize) -> Result<f64> {
        let n = self.rows;
        // Newton's identities: c_k = -(p_k + sum_{i<k} c_i p_{k-i}) / k with
        // p_k = tr(M^k), for the monic polynomial x^n + c_1 x^{n-1} + ... + c_n.
        let p = self.power_traces(n);
        let mut c = vec![0.0; n + 1];
        c[0] = 1.0;
        for k in 1..=n {
            let mut acc = p[k - 1];
            for i in 1..k {
                acc += c[i] * p[k - i - 1];
            }
            c[k] = -acc / k as f64;
        }
        // Zero roots split off exactly; Durand-Kerner handles the rest.
        let mut coeffs = c;
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        let degree = coeffs.len() - 1;
        if degree == 0 {
            return Ok(0.0);
        }
        let radius = 1.0 + coeffs.iter().skip(1).fold(0.0f64, |m, v| m.max(v.abs()));
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..degree)
            .map(|j| radius * seed.powu(j as u32 + 1))
            .collect();
        let eval = |z: Complex64| {
            let mut acc = Complex64::new(coeffs[0], 0.0);
            for ck in &coeffs[1..] {
                acc = acc * z + Complex64::new(*ck, 0.0);
            }
            acc
        };
        for _ in 0..max_iter {
            let mut delta: f64 = 0.0;
            for j in 0..degree {
                let mut denom = Complex64::new(1.0, 0.0);
                for l in 0..degree {
                    if l != j {
                        denom *= roots[j] - roots[l];
                    }
                }
                if denom.norm() == 0.0 {
                    // Collided iterates; nudge apart and continue.
                    roots[j] += Complex64::new(1e-8, 1e-8);
                    delta = f64::INFINITY;
                    continue;
                }
                let step = eval(roots[j]) / denom;
                roots[j] -= step;
                delta = delta.max(step.norm());
            }
            if delta <= tol.max(1e-14) * (1.0 + radius) {
                let rho = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
                return Ok(rho);
            }
        }
        Err(Error::NonConvergence("root iteration", max_iter))
    }

    /// Spectral radius with the crate defaults.
    pub fn spectral_radius_default(&self) -> Result<f64> {
        self.spectral_radius(DEFAULT_TOL, DEFAULT_MAX_ITER)
    }
}
