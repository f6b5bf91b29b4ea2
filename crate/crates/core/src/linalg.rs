//! Small dense matrices over MPFR floats.

use crate::error::{Error, Result};
use rug::Float;

#[derive(Clone, Debug)]
pub struct Matrix {
    n: usize,
    data: Vec<Float>,
}

impl Matrix {
    pub fn from_fn(n: usize, bits: u32, mut f: impl FnMut(usize, usize) -> Float) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(Float::with_val(bits, f(i, j)));
            }
        }
        Matrix { n, data }
    }

    /// (m_{i+j+shift}) for 0 <= i, j < n.
    pub fn hankel(moments: &[Float], n: usize, shift: usize) -> Self {
        let bits = moments.first().map_or(64, |m| m.prec());
        Self::from_fn(n, bits, |i, j| moments[i + j + shift].clone())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Float {
        &self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let bits = self.data.first().map_or(64, |x| x.prec());
        Matrix::from_fn(n, bits, |i, j| {
            let mut s = Float::with_val(bits, 0);
            for k in 0..n {
                s += Float::with_val(bits, self.get(i, k) * other.get(k, j));
            }
            s
        })
    }

    pub fn trace(&self) -> Float {
        let bits = self.data.first().map_or(64, |x| x.prec());
        let mut s = Float::with_val(bits, 0);
        for i in 0..self.n {
            s += self.get(i, i);
        }
        s
    }

    /// Determinant by Gaussian elimination with full pivoting.  Also
    /// returns the ratio of the largest to the smallest pivot magnitude as a
    /// cheap conditioning estimate.
    pub fn det_full_pivot(&self) -> Result<(Float, f64)> {
        let n = self.n;
        let bits = self.data.first().map_or(64, |x| x.prec());
        if n == 0 {
            return Ok((Float::with_val(bits, 1), 1.0));
        }
        let mut a = self.data.clone();
        let mut det = Float::with_val(bits, 1);
        let (mut pmax, mut pmin) = (0.0f64, f64::INFINITY);
        for k in 0..n {
            let (mut bi, mut bj) = (k, k);
            let mut best = Float::with_val(bits, 0);
            for i in k..n {
                for j in k..n {
                    let v = Float::with_val(bits, a[i * n + j].abs_ref());
                    if v > best {
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
            }
            if best.is_zero() {
                return Err(Error::SingularMatrix { step: k });
            }
            if bi != k {
                for j in 0..n {
                    a.swap(k * n + j, bi * n + j);
                }
                det = -det;
            }
            if bj != k {
                for i in 0..n {
                    a.swap(i * n + k, i * n + bj);
                }
                det = -det;
            }
            let piv = a[k * n + k].clone();
            let mag = piv.to_f64().abs();
            pmax = pmax.max(mag);
            pmin = pmin.min(mag);
            det *= &piv;
            for i in k + 1..n {
                let factor = Float::with_val(bits, &a[i * n + k] / &piv);
                for j in k + 1..n {
                    let t = Float::with_val(bits, &factor * &a[k * n + j]);
                    a[i * n + j] -= t;
                }
            }
        }
        Ok((det, if pmin > 0.0 { pmax / pmin } else { f64::INFINITY }))
    }

    /// Solves self * X = rhs by Gauss-Jordan elimination with partial pivoting.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        let n = self.n;
        let bits = self.data.first().map_or(64, |x| x.prec());
        let mut a = self.data.clone();
        let mut x = rhs.data.clone();
        for k in 0..n {
            let mut bi = k;
            for i in k + 1..n {
                if Float::with_val(bits, a[i * n + k].abs_ref()) > Float::with_val(bits, a[bi * n + k].abs_ref()) {
                    bi = i;
                }
            }
            if a[bi * n + k].is_zero() {
                return Err(Error::SingularMatrix { step: k });
            }
            if bi != k {
                for j in 0..n {
                    a.swap(k * n + j, bi * n + j);
                    x.swap(k * n + j, bi * n + j);
                }
            }
            let piv = a[k * n + k].clone();
            for j in 0..n {
                a[k * n + j] /= &piv;
                x[k * n + j] /= &piv;
            }
            for i in 0..n {
                if i == k || a[i * n + k].is_zero() {
                    continue;
                }
                let factor = a[i * n + k].clone();
                for j in 0..n {
                    let t = Float::with_val(bits, &factor * &a[k * n + j]);
                    a[i * n + j] -= t;
                    let t = Float::with_val(bits, &factor * &x[k * n + j]);
                    x[i * n + j] -= t;
                }
            }
        }
        Ok(Matrix { n, data: x })
    }
}
