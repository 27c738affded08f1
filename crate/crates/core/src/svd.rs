//! Thin singular value decomposition.
//!
//! Householder reduction to upper bidiagonal form followed by implicit-shift
//! QR sweeps on the bidiagonal (Golub-Kahan-Reinsch). Working storage is
//! column-major so that reflector applications and Givens rotations run over
//! contiguous memory.

use crate::error::{Error, Result};
use crate::raster::{axpy, dot, RealMatrix};

/// QR sweeps allowed per singular value before giving up.
const MAX_SWEEPS: usize = 75;

/// `A = U diag(sigma) V^T` with `r = min(rows, cols)` triplets, ordered by
/// non-increasing singular value.
#[derive(Clone, Debug)]
pub struct SvdFactors {
    u: RealMatrix,
    sigma: Vec<f64>,
    v: RealMatrix,
}

impl SvdFactors {
    /// Assembles factors from parts. `u` is `m x r`, `v` is `n x r`.
    pub fn from_parts(u: RealMatrix, sigma: Vec<f64>, v: RealMatrix) -> Result<Self> {
        if u.cols() != sigma.len() || v.cols() != sigma.len() {
            return Err(Error::ShapeMismatch {
                left: u.shape(),
                right: v.shape(),
            });
        }
        Ok(Self { u, sigma, v })
    }

    /// Left singular vectors as columns, `m x r`.
    pub fn u(&self) -> &RealMatrix {
        &self.u
    }

    /// Right singular vectors as columns, `n x r`.
    pub fn v(&self) -> &RealMatrix {
        &self.v
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn rank_bound(&self) -> usize {
        self.sigma.len()
    }

    /// Shape `(m, n)` of the decomposed matrix.
    pub fn shape(&self) -> (usize, usize) {
        (self.u.rows(), self.v.rows())
    }

    /// Full product `U diag(sigma) V^T`.
    pub fn reconstruct(&self) -> RealMatrix {
        crate::transfer::partial_product(self, 0..self.rank_bound())
    }
}

/// Thin SVD of `mat`.
pub fn svd(mat: &RealMatrix) -> Result<SvdFactors> {
    mat.check_finite()?;
    let (m, n) = mat.shape();
    if m == 0 || n == 0 {
        return Err(Error::InvalidDimensions {
            width: n,
            height: m,
            reason: "cannot decompose an empty matrix".into(),
        });
    }

    // Decompose the tall orientation; a wide input is handled through its transpose.
    let wide = m < n;
    let (rows, cols) = if wide { (n, m) } else { (m, n) };
    let mut a = vec![0.0; rows * cols];
    if wide {
        for j in 0..cols {
            a[j * rows..(j + 1) * rows].copy_from_slice(mat.row(j));
        }
    } else {
        for i in 0..rows {
            for (j, &x) in mat.row(i).iter().enumerate() {
                a[j * rows + i] = x;
            }
        }
    }

    let mut dec = TallSvd::new(a, rows, cols);
    dec.bidiagonalize();
    dec.diagonalize().ok_or(Error::ConvergenceFailure { rows: m, cols: n })?;

    let (left, right) = if wide {
        (&dec.v, &dec.u)
    } else {
        (&dec.u, &dec.v)
    };
    let r = cols;
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| dec.w[j].total_cmp(&dec.w[i]));

    let mut u = RealMatrix::zeros(m, r);
    let mut v = RealMatrix::zeros(n, r);
    let mut sigma = Vec::with_capacity(r);
    for (dst, &src) in order.iter().enumerate() {
        let ucol = &left[src * m..(src + 1) * m];
        let vcol = &right[src * n..(src + 1) * n];
        // Largest-magnitude entry of each left vector is made positive (first one on ties).
        let pivot = ucol
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |best, (i, &x)| if x.abs() > best.1 { (i, x.abs()) } else { best })
            .0;
        let sign = if ucol[pivot] < 0.0 { -1.0 } else { 1.0 };
        for (i, &x) in ucol.iter().enumerate() {
            u[(i, dst)] = sign * x;
        }
        for (i, &x) in vcol.iter().enumerate() {
            v[(i, dst)] = sign * x;
        }
        sigma.push(dec.w[src]);
    }
    Ok(SvdFactors { u, sigma, v })
}

/// Working state for an `m x n` matrix with `m >= n`, all column-major.
struct TallSvd {
    m: usize,
    n: usize,
    /// Input matrix; overwritten during bidiagonalization.
    a: Vec<f64>,
    /// Diagonal, then singular values.
    w: Vec<f64>,
    /// `e[i]` couples `w[i - 1]` and `w[i]`; `e[0]` is always zero.
    e: Vec<f64>,
    /// `n` columns of length `m`.
    u: Vec<f64>,
    /// `n` columns of length `n`.
    v: Vec<f64>,
}

/// Householder vector for `x` in place: afterwards `x[0] = 1` and `x[1..]` holds
/// the essential part. Returns `(tau, beta)` with `(I - tau x x^T) x_orig = beta e_1`.
fn householder(x: &mut [f64]) -> (f64, f64) {
    let alpha = x[0];
    let tail = x[1..].iter().map(|t| t * t).sum::<f64>().sqrt();
    x[0] = 1.0;
    if tail == 0.0 {
        return (0.0, alpha);
    }
    let beta = -alpha.hypot(tail).copysign(alpha);
    let tau = (beta - alpha) / beta;
    let scale = 1.0 / (alpha - beta);
    x[1..].iter_mut().for_each(|t| *t *= scale);
    (tau, beta)
}

#[inline]
fn rotate(buf: &mut [f64], len: usize, p: usize, q: usize, c: f64, s: f64) {
    debug_assert!(p < q);
    let (lo, hi) = buf.split_at_mut(q * len);
    let x = &mut lo[p * len..(p + 1) * len];
    let y = &mut hi[..len];
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        let (a, b) = (*xi, *yi);
        *xi = a * c + b * s;
        *yi = b * c - a * s;
    }
}

impl TallSvd {
    fn new(a: Vec<f64>, m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            a,
            w: vec![0.0; n],
            e: vec![0.0; n],
            u: Vec::new(),
            v: Vec::new(),
        }
    }

    fn bidiagonalize(&mut self) {
        let (m, n) = (self.m, self.n);
        let a = &mut self.a;
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n.saturating_sub(1));

        for k in 0..n {
            let mut hv = a[k * m + k..(k + 1) * m].to_vec();
            let (tau, beta) = householder(&mut hv);
            self.w[k] = beta;
            if tau != 0.0 {
                for j in k + 1..n {
                    let col = &mut a[j * m + k..(j + 1) * m];
                    let s = tau * dot(&hv, col);
                    axpy(-s, &hv, col);
                }
            }
            left.push((tau, hv));

            if k + 1 < n {
                let mut hr: Vec<f64> = (k + 1..n).map(|j| a[j * m + k]).collect();
                let (tau, beta) = householder(&mut hr);
                self.e[k + 1] = beta;
                if tau != 0.0 && k + 1 < m {
                    let mut acc = vec![0.0; m - k - 1];
                    for (jj, j) in (k + 1..n).enumerate() {
                        axpy(hr[jj], &a[j * m + k + 1..(j + 1) * m], &mut acc);
                    }
                    for (jj, j) in (k + 1..n).enumerate() {
                        axpy(-tau * hr[jj], &acc, &mut a[j * m + k + 1..(j + 1) * m]);
                    }
                }
                right.push((tau, hr));
            }
        }

        // Backward accumulation of U = H_0 ... H_{n-1} restricted to n columns.
        let mut u = vec![0.0; m * n];
        for j in 0..n {
            u[j * m + j] = 1.0;
        }
        for (k, (tau, hv)) in left.iter().enumerate().rev() {
            if *tau == 0.0 {
                continue;
            }
            for j in k..n {
                let col = &mut u[j * m + k..(j + 1) * m];
                let s = tau * dot(hv, col);
                axpy(-s, hv, col);
            }
        }

        let mut v = vec![0.0; n * n];
        for j in 0..n {
            v[j * n + j] = 1.0;
        }
        for (k, (tau, hr)) in right.iter().enumerate().rev() {
            if *tau == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let col = &mut v[j * n + k + 1..(j + 1) * n];
                let s = tau * dot(hr, col);
                axpy(-s, hr, col);
            }
        }

        self.u = u;
        self.v = v;
        self.a = Vec::new();
    }

    /// Implicit-shift QR on the bidiagonal. `None` when a singular value
    /// fails to converge within the sweep cap.
    fn diagonalize(&mut self) -> Option<()> {
        let (m, n) = (self.m, self.n);
        let (w, e, u, v) = (&mut self.w, &mut self.e, &mut self.u, &mut self.v);
        let anorm = w
            .iter()
            .zip(e.iter())
            .fold(0.0f64, |acc, (d, f)| acc.max(d.abs() + f.abs()));
        let tol = f64::EPSILON * anorm;

        for k in (0..n).rev() {
            let mut sweeps = 0;
            loop {
                // Locate the top `l` of the unreduced block ending at `k`.
                let mut cancel = true;
                let mut l = k;
                loop {
                    if e[l].abs() <= tol {
                        cancel = false;
                        break;
                    }
                    if w[l - 1].abs() <= tol {
                        break;
                    }
                    l -= 1;
                }

                if cancel {
                    // w[l-1] is negligible: chase e[l] out with left rotations.
                    let nm = l - 1;
                    let (mut c, mut s) = (0.0, 1.0);
                    for i in l..=k {
                        let f = s * e[i];
                        e[i] *= c;
                        if f.abs() <= tol {
                            break;
                        }
                        let g = w[i];
                        let h = f.hypot(g);
                        w[i] = h;
                        c = g / h;
                        s = -f / h;
                        rotate(u, m, nm, i, c, s);
                    }
                }

                let z = w[k];
                if l == k {
                    if z < 0.0 {
                        w[k] = -z;
                        v[k * n..(k + 1) * n].iter_mut().for_each(|x| *x = -*x);
                    }
                    break;
                }

                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return None;
                }

                // Shift from the trailing 2x2 block.
                let mut x = w[l];
                let nm = k - 1;
                let y = w[nm];
                let g = e[nm];
                let h = e[k];
                let mut f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y);
                let r = f.hypot(1.0);
                f = ((x - z) * (x + z) + h * ((y / (f + r.copysign(f))) - h)) / x;

                let (mut c, mut s) = (1.0, 1.0);
                for j in l..=nm {
                    let i = j + 1;
                    let mut g = e[i];
                    let mut y = w[i];
                    let mut h = s * g;
                    g *= c;
                    let mut z = f.hypot(h);
                    e[j] = z;
                    c = f / z;
                    s = h / z;
                    f = x * c + g * s;
                    g = g * c - x * s;
                    h = y * s;
                    y *= c;
                    rotate(v, n, j, i, c, s);
                    z = f.hypot(h);
                    w[j] = z;
                    if z != 0.0 {
                        c = f / z;
                        s = h / z;
                    }
                    f = c * g + s * y;
                    x = c * y - s * g;
                    rotate(u, m, j, i, c, s);
                }
                e[l] = 0.0;
                e[k] = f;
                w[k] = x;
            }
        }
        Some(())
    }
}
