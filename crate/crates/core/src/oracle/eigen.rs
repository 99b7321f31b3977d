//! Dense complex eigenvalues: Householder reduction to Hessenberg form
//! followed by single-shift QR sweeps with Wilkinson shifts and
//! Ahues-Tisseur deflation. Generic over the working precision: `f64` or
//! double-double ([`Dd`](super::dd::Dd)).

use num_complex::{Complex, Complex64 as C64};
use num_traits::{One, Zero};

use super::dd::{cabs, csqrt, Real};
use crate::error::{Error, Result};

/// Result of a Schur reduction `A = Z T Z*`.
#[derive(Debug, Clone)]
pub struct Schur<R: Real = f64> {
    pub eigenvalues: Vec<Complex<R>>,
    /// Upper-triangular factor, row-major; present when vectors were requested.
    pub t: Option<Vec<Complex<R>>>,
    /// Unitary Schur vectors, row-major; present when vectors were requested.
    pub z: Option<Vec<Complex<R>>>,
    pub iterations: usize,
}

#[inline]
fn zero<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::zero())
}

#[inline]
fn cabs1<R: Real>(z: Complex<R>) -> R {
    z.re.abs() + z.im.abs()
}

/// Reduce `a` (row-major, `n × n`) to upper Hessenberg form in place,
/// accumulating the reflectors into `q` if given (`q` starts as identity).
pub fn hessenberg<R: Real>(a: &mut [Complex<R>], n: usize, mut q: Option<&mut [Complex<R>]>) {
    let mut v = vec![zero::<R>(); n];
    let mut work = vec![zero::<R>(); n];
    for k in 0..n.saturating_sub(2) {
        let mut tail = R::zero();
        for i in (k + 2)..n {
            tail = tail + a[i * n + k].norm_sqr();
        }
        if tail == R::zero() {
            continue;
        }
        let norm2 = tail + a[(k + 1) * n + k].norm_sqr();
        let alpha = norm2.sqrt();
        let x0 = a[(k + 1) * n + k];
        let x0_abs = cabs(x0);
        let phase = if x0_abs == R::zero() { Complex::one() } else { x0.unscale(x0_abs) };
        let beta = -phase.scale(alpha);
        let m = n - k - 1;
        for i in 0..m {
            v[i] = a[(k + 1 + i) * n + k];
        }
        v[0] = v[0] - beta;
        let mut vv = R::zero();
        for x in &v[..m] {
            vv = vv + x.norm_sqr();
        }
        let scale = R::of(2.0) / vv;

        // Left: rows k+1.., columns k..
        for w in work.iter_mut().take(n) {
            *w = zero();
        }
        for i in 0..m {
            let vc = v[i].conj();
            let row = (k + 1 + i) * n;
            for j in k..n {
                work[j] = work[j] + vc * a[row + j];
            }
        }
        for i in 0..m {
            let vi = v[i].scale(scale);
            let row = (k + 1 + i) * n;
            for j in k..n {
                a[row + j] = a[row + j] - vi * work[j];
            }
        }
        // Right: all rows, columns k+1..
        reflect_right(a, n, k, &v[..m], scale);
        if let Some(q) = q.as_deref_mut() {
            reflect_right(q, n, k, &v[..m], scale);
        }
        a[(k + 1) * n + k] = beta;
        for i in (k + 2)..n {
            a[i * n + k] = zero();
        }
    }
}

fn reflect_right<R: Real>(a: &mut [Complex<R>], n: usize, k: usize, v: &[Complex<R>], scale: R) {
    for r in 0..n {
        let row = r * n + k + 1;
        let mut s = zero::<R>();
        for (i, vi) in v.iter().enumerate() {
            s = s + a[row + i] * vi;
        }
        let s = s.scale(scale);
        for (i, vi) in v.iter().enumerate() {
            a[row + i] = a[row + i] - s * vi.conj();
        }
    }
}

/// Rotation `[c s; −s̄ c]` mapping `(f, g)` to `(r, 0)`.
#[inline]
fn givens<R: Real>(f: Complex<R>, g: Complex<R>) -> (R, Complex<R>) {
    let gn = cabs(g);
    if gn == R::zero() {
        return (R::one(), zero());
    }
    let fn_ = cabs(f);
    if fn_ == R::zero() {
        return (R::zero(), g.conj().unscale(gn));
    }
    let rho = fn_.hypot(gn);
    let c = fn_ / rho;
    let s = (f.unscale(fn_) * g.conj()).unscale(rho);
    (c, s)
}

#[inline]
fn rotate_rows<R: Real>(a: &mut [Complex<R>], n: usize, p: usize, c: R, s: Complex<R>, cols: std::ops::Range<usize>) {
    let q = p + 1;
    let sc = s.conj();
    for j in cols {
        let x = a[p * n + j];
        let y = a[q * n + j];
        a[p * n + j] = x.scale(c) + s * y;
        a[q * n + j] = y.scale(c) - sc * x;
    }
}

#[inline]
fn rotate_cols<R: Real>(a: &mut [Complex<R>], n: usize, p: usize, c: R, s: Complex<R>, rows: std::ops::Range<usize>) {
    let q = p + 1;
    let sc = s.conj();
    for i in rows {
        let x = a[i * n + p];
        let y = a[i * n + q];
        a[i * n + p] = x.scale(c) + sc * y;
        a[i * n + q] = y.scale(c) - s * x;
    }
}

/// Eigenvalues (and optionally the Schur factorization) of a general
/// complex matrix given row-major.
pub fn schur<R: Real>(mut h: Vec<Complex<R>>, n: usize, want_vectors: bool) -> Result<Schur<R>> {
    assert_eq!(h.len(), n * n);
    if n == 0 {
        return Ok(Schur { eigenvalues: vec![], t: None, z: None, iterations: 0 });
    }
    let mut z = if want_vectors {
        let mut id = vec![zero::<R>(); n * n];
        for i in 0..n {
            id[i * n + i] = Complex::one();
        }
        Some(id)
    } else {
        None
    };
    hessenberg(&mut h, n, z.as_deref_mut());

    let ulp = R::of(R::ULP);
    let smlnum = R::of(f64::MIN_POSITIVE * (n as f64 / R::ULP));
    let itmax = 30 * n.max(10);
    let exceptional_weight = R::of(0.75);
    let mut eig = vec![zero::<R>(); n];
    let mut total_its = 0usize;

    let mut hi = n as isize - 1;
    while hi >= 0 {
        let ihi = hi as usize;
        let mut its = 0usize;
        loop {
            // Locate the active block [l, ihi].
            let mut l = 0usize;
            let mut k = ihi;
            while k > 0 {
                let sub = h[k * n + k - 1];
                if cabs1(sub) <= smlnum {
                    l = k;
                    break;
                }
                let mut tst = cabs1(h[(k - 1) * n + k - 1]) + cabs1(h[k * n + k]);
                if tst == R::zero() {
                    if k >= 2 {
                        tst = tst + cabs1(h[(k - 1) * n + k - 2]);
                    }
                    if k + 1 < n {
                        tst = tst + cabs1(h[(k + 1) * n + k]);
                    }
                }
                if cabs1(sub) <= ulp * tst {
                    let ab = cabs1(sub).max(cabs1(h[(k - 1) * n + k]));
                    let ba = cabs1(sub).min(cabs1(h[(k - 1) * n + k]));
                    let diff = h[(k - 1) * n + k - 1] - h[k * n + k];
                    let aa = cabs1(h[k * n + k]).max(cabs1(diff));
                    let bb = cabs1(h[k * n + k]).min(cabs1(diff));
                    let s = aa + ab;
                    if ba * (ab / s) <= smlnum.max(ulp * (bb * (aa / s))) {
                        l = k;
                        break;
                    }
                }
                k -= 1;
            }
            if l > 0 {
                h[l * n + l - 1] = zero();
            }
            if l == ihi {
                eig[ihi] = h[ihi * n + ihi];
                hi -= 1;
                break;
            }
            if l + 1 == ihi {
                // A shifted QR step can cycle on a nearly defective 2×2 block;
                // split it directly with a rotation built from an eigenvector.
                let (row_start, col_end) = if want_vectors { (0, n) } else { (l, ihi + 1) };
                let (c, s) = split_2x2(&h, n, l);
                rotate_rows(&mut h, n, l, c, s, l..col_end);
                rotate_cols(&mut h, n, l, c, s, row_start..ihi + 1);
                if let Some(z) = z.as_deref_mut() {
                    rotate_cols(z, n, l, c, s, 0..n);
                }
                h[ihi * n + l] = zero();
                eig[l] = h[l * n + l];
                eig[ihi] = h[ihi * n + ihi];
                hi -= 2;
                break;
            }
            if its >= itmax {
                return Err(Error::NoConvergence {
                    dim: n,
                    converged: n - 1 - ihi,
                    iterations: total_its,
                });
            }

            let shift = if its % 20 == 10 {
                h[l * n + l] + Complex::from(exceptional_weight * cabs1(h[(l + 1) * n + l]))
            } else if its % 20 == 0 && its > 0 {
                h[ihi * n + ihi] + Complex::from(exceptional_weight * cabs1(h[ihi * n + ihi - 1]))
            } else {
                wilkinson_shift(&h, n, ihi)
            };

            let (col_end, row_start) = if want_vectors { (n, 0) } else { (ihi + 1, l) };
            for k in l..ihi {
                let (c, s) = if k == l {
                    givens(h[l * n + l] - shift, h[(l + 1) * n + l])
                } else {
                    let (c, s) = givens(h[k * n + k - 1], h[(k + 1) * n + k - 1]);
                    c_s_zero(&mut h, n, k, c, s);
                    (c, s)
                };
                let first_col = if k == l { l } else { k };
                rotate_rows(&mut h, n, k, c, s, first_col..col_end);
                let last_row = (k + 2).min(ihi);
                rotate_cols(&mut h, n, k, c, s, row_start..last_row + 1);
                if let Some(z) = z.as_deref_mut() {
                    rotate_cols(z, n, k, c, s, 0..n);
                }
            }
            its += 1;
            total_its += 1;
        }
    }

    let t = if want_vectors {
        for i in 1..n {
            for j in 0..i {
                h[i * n + j] = zero();
            }
        }
        Some(h)
    } else {
        None
    };
    Ok(Schur { eigenvalues: eig, t, z, iterations: total_its })
}

/// Rotation whose adjoint's first column is a unit eigenvector of the 2×2
/// block at `(l, l)`, making the rotated block upper triangular.
fn split_2x2<R: Real>(h: &[Complex<R>], n: usize, l: usize) -> (R, Complex<R>) {
    let a = h[l * n + l];
    let b = h[l * n + l + 1];
    let c = h[(l + 1) * n + l];
    let d = h[(l + 1) * n + l + 1];
    let half = (a - d).scale(R::of(0.5));
    let mut disc = csqrt(half * half + b * c);
    if half.re * disc.re + half.im * disc.im < R::zero() {
        disc = -disc;
    }
    // λ = d − bc/(half + disc) avoids cancellation; it equals a or d when bc = 0.
    let denom = half + disc;
    let lambda = if denom.is_zero() { d } else { d - b * c / denom };
    let v1 = (b, lambda - a);
    let v2 = (lambda - d, c);
    let (x, y) = if cabs1(v1.0) + cabs1(v1.1) >= cabs1(v2.0) + cabs1(v2.1) { v1 } else { v2 };
    if cabs1(x) + cabs1(y) == R::zero() {
        return (R::one(), zero());
    }
    givens(x, y)
}

/// Annihilate the bulge entry at `(k+1, k−1)` with the rotation built for it.
#[inline]
fn c_s_zero<R: Real>(h: &mut [Complex<R>], n: usize, k: usize, c: R, s: Complex<R>) {
    let x = h[k * n + k - 1];
    let y = h[(k + 1) * n + k - 1];
    h[k * n + k - 1] = x.scale(c) + s * y;
    h[(k + 1) * n + k - 1] = zero();
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson_shift<R: Real>(h: &[Complex<R>], n: usize, i: usize) -> Complex<R> {
    let mut t = h[i * n + i];
    let u = csqrt(h[(i - 1) * n + i]) * csqrt(h[i * n + i - 1]);
    let s = cabs1(u);
    if s != R::zero() {
        let x = (h[(i - 1) * n + i - 1] - t).scale(R::of(0.5));
        let sx = cabs1(x);
        let s = s.max(sx);
        let (xs_, us) = (x.unscale(s), u.unscale(s));
        let mut y = csqrt(xs_ * xs_ + us * us).scale(s);
        if sx > R::zero() {
            let xs = x.unscale(sx);
            if xs.re * y.re + xs.im * y.im < R::zero() {
                y = -y;
            }
        }
        t = t - u * (u / (x + y));
    }
    t
}

/// `‖A Z − Z T‖_F / ‖A‖_F` for a computed Schur pair.
pub fn schur_backward_error(a: &[C64], n: usize, t: &[C64], z: &[C64]) -> f64 {
    let mut num = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut az = C64::new(0.0, 0.0);
            for k in 0..n {
                az += a[i * n + k] * z[k * n + j];
            }
            let mut zt = C64::new(0.0, 0.0);
            for k in 0..=j {
                zt += z[i * n + k] * t[k * n + j];
            }
            num += (az - zt).norm_sqr();
        }
    }
    let den: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}
