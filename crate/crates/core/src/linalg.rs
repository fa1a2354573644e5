//! Dense linear algebra helpers built on `nalgebra`.
//!
//! Ranks are decided from singular values with the threshold
//! `σ > tol · max(rows, cols) · σ_max`.

use nalgebra::{DMatrix, DVector};

/// Default relative tolerance for rank decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Singular values (descending) and the full set of right singular vectors
/// (as columns, in the same order).
pub fn right_singular(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let (m, n) = a.shape();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    if m == 0 {
        return (vec![0.0; n], DMatrix::identity(n, n));
    }
    let padded;
    let work = if m < n {
        padded = {
            let mut p = DMatrix::zeros(n, n);
            p.view_mut((0, 0), (m, n)).copy_from(a);
            p
        };
        &padded
    } else {
        a
    };
    let svd = work.clone().svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let sv = svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&i, &j| sv[j].partial_cmp(&sv[i]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| sv[i]).collect();
    let v = DMatrix::from_fn(n, n, |r, c| vt[(order[c], r)]);
    (values, v)
}

/// Number of singular values above the relative threshold.
pub fn rank_from_singular(values: &[f64], rows: usize, cols: usize, tol: f64) -> usize {
    let max = values.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    let threshold = tol * rows.max(cols) as f64 * max;
    values.iter().filter(|&&s| s > threshold).count()
}

pub fn singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut v: Vec<f64> = a.clone().singular_values().iter().cloned().collect();
    v.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    v
}

pub fn rank(a: &DMatrix<f64>, tol: f64) -> usize {
    rank_from_singular(&singular_values(a), a.nrows(), a.ncols(), tol)
}

/// Orthonormal basis of the right nullspace, as columns.
pub fn nullspace(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = a.ncols();
    let (values, v) = right_singular(a);
    let r = rank_from_singular(&values, a.nrows(), n, tol);
    v.columns(r, n - r).into_owned()
}

/// Orthonormal basis of the left nullspace, as columns.
pub fn left_nullspace(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    nullspace(&a.transpose(), tol)
}

/// Orthonormal basis of the column space (from the SVD).
pub fn column_space(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    column_space_relative_to(a, tol, 0.0)
}

/// Like [`column_space`], but singular values are compared against
/// `max(σ_max, reference)` so that a matrix that is numerically zero relative
/// to `reference` has an empty column space.
pub fn column_space_relative_to(a: &DMatrix<f64>, tol: f64, reference: f64) -> DMatrix<f64> {
    let m = a.nrows();
    if a.ncols() == 0 || m == 0 {
        return DMatrix::zeros(m, 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let sv = &svd.singular_values;
    let values: Vec<f64> = sv.iter().cloned().collect();
    let mut reference_values = values.clone();
    reference_values.push(reference);
    let threshold = tol * m.max(a.ncols()) as f64 * reference_values.iter().cloned().fold(0.0, f64::max);
    let r = values.iter().filter(|&&s| s > threshold).count();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap_or(std::cmp::Ordering::Equal));
    DMatrix::from_fn(m, r, |row, c| u[(row, order[c])])
}

/// Orthonormal basis of the column space from a column-pivoted QR. The
/// diagonal of `R` is compared against `max(|R_00|, reference)`.
pub fn pivoted_qr_basis(a: &DMatrix<f64>, tol: f64, reference: f64) -> DMatrix<f64> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return DMatrix::zeros(m, 0);
    }
    let qr = a.clone().col_piv_qr();
    let r = qr.r();
    let diag: Vec<f64> = (0..m.min(n)).map(|i| r[(i, i)].abs()).collect();
    let scale = diag.iter().cloned().fold(reference, f64::max);
    let threshold = tol * m.max(n) as f64 * scale;
    let k = if scale == 0.0 {
        0
    } else {
        diag.iter().filter(|&&s| s > threshold).count()
    };
    qr.q().columns(0, k).into_owned()
}

/// Basis of `span(A) ∩ span(B)` for matrices with independent columns.
pub fn intersection(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    assert_eq!(a.nrows(), b.nrows());
    if a.ncols() == 0 || b.ncols() == 0 {
        return DMatrix::zeros(a.nrows(), 0);
    }
    let mut stacked = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    stacked.columns_mut(0, a.ncols()).copy_from(a);
    stacked.columns_mut(a.ncols(), b.ncols()).copy_from(&(-b));
    let null = nullspace(&stacked, tol);
    let coeffs = null.rows(0, a.ncols()).into_owned();
    let reference = singular_values(a).first().copied().unwrap_or(0.0);
    column_space_relative_to(&(a * coeffs), tol, reference)
}

/// Orthonormal basis of `span(A)` with the directions in `span(T)` removed
/// (`T` orthonormal).
pub fn complement_within(a: &DMatrix<f64>, t: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let projected = if t.ncols() == 0 {
        a.clone()
    } else {
        a - t * (t.transpose() * a)
    };
    let reference = singular_values(a).first().copied().unwrap_or(0.0);
    column_space_relative_to(&projected, tol, reference)
}

/// `‖x − QQᵀx‖` for an orthonormal `Q`.
pub fn residual_outside(q: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    if q.ncols() == 0 {
        return x.norm();
    }
    (x - q * (q.transpose() * x)).norm()
}

/// Concatenates columns of two matrices with the same row count.
pub fn hstack(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    assert_eq!(a.nrows(), b.nrows());
    let mut out = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

/// Maximum absolute row sum.
pub fn inf_norm(a: &DMatrix<f64>) -> f64 {
    a.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Submatrix with the given rows and columns.
pub fn select(a: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| a[(rows[i], cols[j])])
}
