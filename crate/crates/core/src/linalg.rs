//! Small dense symmetric eigenvalue and exact integer routines.
//!
//! Matrices are row-major `n * n` slices. Everything here targets orders of
//! roughly ten or less.

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
///
/// Only the upper triangle is read.
pub fn jacobi_eigenvalues(matrix: &[f64], n: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    for i in 0..n {
        for j in 0..i {
            a[i * n + j] = a[j * n + i];
        }
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        let mut total = 0.0;
        for p in 0..n {
            total += a[p * n + p] * a[p * n + p];
            for q in p + 1..n {
                off += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        total += off;
        if off == 0.0 || off <= 1e-30 * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// Largest `|entry|` for which [`charpoly_i64`] cannot overflow at order `n`.
fn charpoly_safe(n: usize, max_abs: i64) -> bool {
    // Every intermediate is bounded by (n + 1) * (2 n M)^n.
    let base = 2.0 * n as f64 * max_abs.max(1) as f64;
    (n as f64 + 1.0) * base.powi(n as i32) < 2f64.powi(62)
}

/// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free
/// algorithm. Coefficients are returned highest degree first, so `c[0] = 1`.
/// `None` if the entries are too large for exact `i64` arithmetic.
pub fn charpoly_i64(a: &[i64], n: usize) -> Option<Vec<i64>> {
    assert_eq!(a.len(), n * n);
    if n <= SMALL {
        let mut out = [0i64; SMALL + 1];
        charpoly_small(a, n, &mut out)?;
        return Some(out[..=n].to_vec());
    }
    let max_abs = a.iter().map(|x| x.abs()).max().unwrap_or(0);
    if !charpoly_safe(n, max_abs) {
        return None;
    }
    let mut poly = vec![1i64];
    let mut toeplitz = vec![0i64; n + 1];
    let mut v = vec![0i64; n];
    let mut w = vec![0i64; n];
    for k in 0..n {
        berkowitz_step(a, n, k, &mut toeplitz, &mut v, &mut w);
        let mut next = vec![0i64; k + 2];
        for (r, slot) in next.iter_mut().enumerate() {
            *slot = (0..poly.len()).filter(|&c| r >= c).map(|c| toeplitz[r - c] * poly[c]).sum();
        }
        poly = next;
    }
    Some(poly)
}

const SMALL: usize = 10;

/// Stack-only variant for orders up to ten, writing `n + 1` coefficients.
fn charpoly_small(a: &[i64], n: usize, out: &mut [i64; SMALL + 1]) -> Option<()> {
    let max_abs = a.iter().fold(0, |m, x| m.max(x.abs()));
    if !charpoly_safe(n, max_abs) {
        return None;
    }
    let mut toeplitz = [0i64; SMALL + 1];
    let mut v = [0i64; SMALL];
    let mut w = [0i64; SMALL];
    let mut poly = [0i64; SMALL + 1];
    let mut next = [0i64; SMALL + 1];
    poly[0] = 1;
    for k in 0..n {
        berkowitz_step(a, n, k, &mut toeplitz, &mut v, &mut w);
        // poly has k + 1 coefficients; multiply by the (k + 2)-term column.
        for r in 0..k + 2 {
            let mut acc = 0;
            for c in r.saturating_sub(k + 1)..=r.min(k) {
                acc += toeplitz[r - c] * poly[c];
            }
            next[r] = acc;
        }
        poly[..k + 2].copy_from_slice(&next[..k + 2]);
    }
    out[..=n].copy_from_slice(&poly[..=n]);
    Some(())
}

/// Fills `toeplitz[0..k + 2]` with `1, -a_kk, -R C, -R A_k C, ...` for the
/// leading `k x k` block `A_k`, column `C = a[0..k][k]` and row
/// `R = a[k][0..k]`.
fn berkowitz_step(a: &[i64], n: usize, k: usize, toeplitz: &mut [i64], v: &mut [i64], w: &mut [i64]) {
    toeplitz[0] = 1;
    toeplitz[1] = -a[k * n + k];
    let row = &a[k * n..k * n + k];
    for i in 0..k {
        v[i] = a[i * n + k];
    }
    for j in 0..k {
        let mut rv = 0;
        for i in 0..k {
            rv += row[i] * v[i];
        }
        toeplitz[j + 2] = -rv;
        if j + 1 < k {
            for r in 0..k {
                let ar = &a[r * n..r * n + k];
                let mut acc = 0;
                for c in 0..k {
                    acc += ar[c] * v[c];
                }
                w[r] = acc;
            }
            v[..k].copy_from_slice(&w[..k]);
        }
    }
}

/// Exact `(positive, negative, zero)` eigenvalue counts of a symmetric
/// integer matrix.
///
/// The characteristic polynomial of a symmetric matrix has only real roots,
/// so Descartes' rule of signs counts its positive roots exactly. Negative
/// roots are the remaining nonzero ones.
pub fn integer_inertia(a: &[i64], n: usize) -> Option<(usize, usize, usize)> {
    let mut small = [0i64; SMALL + 1];
    let owned;
    let poly: &[i64] = if n <= SMALL {
        charpoly_small(a, n, &mut small)?;
        &small[..=n]
    } else {
        owned = charpoly_i64(a, n)?;
        &owned
    };
    // coefficient of x^j is poly[n - j]
    let zero = (0..=n).take_while(|&j| poly[n - j] == 0).count().min(n);
    let mut pos = 0;
    let mut last = 0i64;
    for j in (zero..=n).rev() {
        let c = poly[n - j];
        if c != 0 {
            if last != 0 && (c > 0) != (last > 0) {
                pos += 1;
            }
            last = c;
        }
    }
    Some((pos, n - zero - pos, zero))
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(a: &[i64], rows: usize, cols: usize) -> usize {
    assert_eq!(a.len(), rows * cols);
    let mut m: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                m.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let p = m[rank * cols + col];
        for i in rank + 1..rows {
            let lead = m[i * cols + col];
            for j in col + 1..cols {
                let val = p * m[i * cols + j] - lead * m[rank * cols + j];
                debug_assert_eq!(val % prev, 0, "Bareiss division must be exact");
                m[i * cols + j] = val / prev;
            }
            m[i * cols + col] = 0;
        }
        prev = p;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_small_cases() {
        let ev = jacobi_eigenvalues(&[2.0, 1.0, 1.0, 2.0], 2);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
        let ev = jacobi_eigenvalues(&[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0], 3);
        let s = 2f64.sqrt();
        for (got, want) in ev.iter().zip([-s, 0.0, s]) {
            assert!((got - want).abs() < 1e-14, "{ev:?}");
        }
        assert!(jacobi_eigenvalues(&[], 0).is_empty());
    }

    #[test]
    fn charpoly_examples() {
        // [[1,5,0],[5,1,3],[0,3,5]]: det(xI - B) = x^3 - 7x^2 - 23x + 129
        let b = [1, 5, 0, 5, 1, 3, 0, 3, 5];
        assert_eq!(charpoly_i64(&b, 3).unwrap(), vec![1, -7, -23, 129]);
        assert_eq!(integer_inertia(&b, 3), Some((2, 1, 0)));
        let a = [0, 1, 0, 1, 0, 1, 0, 1, 0];
        assert_eq!(integer_inertia(&a, 3), Some((1, 1, 1)));
        assert_eq!(integer_inertia(&[0; 4], 2), Some((0, 0, 2)));
        assert_eq!(charpoly_i64(&[], 0).unwrap(), vec![1]);
        assert_eq!(charpoly_i64(&[i64::MAX / 4; 4], 2), None);
    }

    #[test]
    fn bareiss_rank() {
        assert_eq!(integer_rank(&[1, 2, 2, 4], 2, 2), 1);
        assert_eq!(integer_rank(&[0, 1, 0, 1, 0, 1, 0, 1, 0], 3, 3), 2);
        assert_eq!(integer_rank(&[0; 9], 3, 3), 0);
        assert_eq!(integer_rank(&[1, 2, 3, 4, 5, 6, 7, 8, 10], 3, 3), 3);
        assert_eq!(integer_rank(&[0, 0, 1, 0, 0, 2], 2, 3), 1);
    }
}
