//! Dense complex linear algebra shared by the operator side: matrix
//! exponential, spectral norms, eigendecomposition and singular values.
//!
//! Factorizations are delegated to `faer`; the matrix exponential is a
//! scaling-and-squaring Pade approximation in the usual degree-13 form,
//! with the degree chosen from the 1-norm.

use faer::linalg::solvers::{Eigen, Solve};
use faer::{c64, Mat, Scale};

pub type CMat = Mat<c64>;
pub type CCol = faer::Col<c64>;

#[derive(Debug, thiserror::Error)]
pub enum LinalgError {
    #[error("eigendecomposition failed to converge")]
    EigenFailed,
    #[error("singular value decomposition failed to converge")]
    SvdFailed,
    #[error("power iteration did not converge within {0} iterations")]
    PowerIterationStalled(usize),
    #[error("matrix must be square, got {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },
}

pub fn identity(n: usize) -> CMat {
    Mat::from_fn(n, n, |i, j| if i == j { c64::new(1.0, 0.0) } else { c64::new(0.0, 0.0) })
}

pub fn zeros(n: usize, m: usize) -> CMat {
    Mat::zeros(n, m)
}

/// Maximum absolute column sum.
pub fn one_norm(a: &CMat) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..a.ncols() {
        let mut acc = 0.0;
        for i in 0..a.nrows() {
            acc += a[(i, j)].norm();
        }
        worst = worst.max(acc);
    }
    worst
}

pub fn frobenius_norm(a: &CMat) -> f64 {
    let mut acc = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            acc += a[(i, j)].norm_sqr();
        }
    }
    acc.sqrt()
}

pub fn max_abs_entry(a: &CMat) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            worst = worst.max(a[(i, j)].norm());
        }
    }
    worst
}

pub fn adjoint(a: &CMat) -> CMat {
    a.adjoint().to_owned()
}

pub fn scale(a: &CMat, c: c64) -> CMat {
    a * Scale(c)
}

/// Hermitian defect `max |A - A^*|`.
pub fn hermitian_defect(a: &CMat) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Submatrix on a sorted index subset (same rows and columns).
pub fn principal_submatrix(a: &CMat, idx: &[usize]) -> CMat {
    Mat::from_fn(idx.len(), idx.len(), |i, j| a[(idx[i], idx[j])])
}

/// Largest singular value by power iteration on `A^* A`, relative
/// tolerance `tol`; the start vector is deterministic.
pub fn operator_norm(a: &CMat, tol: f64, max_iter: usize) -> Result<f64, LinalgError> {
    let n = a.ncols();
    if n == 0 {
        return Ok(0.0);
    }
    let ah = a.adjoint().to_owned();
    let mut v = faer::Col::<c64>::from_fn(n, |i| c64::new(1.0 + (i as f64 * 0.7).sin(), 0.3 * (i as f64 * 1.3).cos()));
    let mut sigma = 0.0f64;
    normalize(&mut v);
    for it in 0..max_iter {
        let w = a * &v;
        let mut next = &ah * &w;
        let norm = col_norm(&next);
        if norm == 0.0 {
            return Ok(0.0);
        }
        let sigma_next = norm.sqrt();
        scale_col(&mut next, 1.0 / norm);
        v = next;
        if it > 0 && (sigma_next - sigma).abs() <= tol * sigma_next.max(f64::MIN_POSITIVE) {
            return Ok(sigma_next);
        }
        sigma = sigma_next;
    }
    Err(LinalgError::PowerIterationStalled(max_iter))
}

fn col_norm(v: &CCol) -> f64 {
    let mut acc = 0.0;
    for i in 0..v.nrows() {
        acc += v[i].norm_sqr();
    }
    acc.sqrt()
}

fn normalize(v: &mut CCol) {
    let n = col_norm(v);
    if n > 0.0 {
        scale_col(v, 1.0 / n);
    }
}

fn scale_col(v: &mut CCol, s: f64) {
    for i in 0..v.nrows() {
        v[i] *= c64::new(s, 0.0);
    }
}

/// All singular values, descending.
pub fn singular_values(a: &CMat) -> Result<Vec<f64>, LinalgError> {
    a.singular_values().map_err(|_| LinalgError::SvdFailed)
}

pub fn sigma_min(a: &CMat) -> Result<f64, LinalgError> {
    let sv = singular_values(a)?;
    Ok(sv.last().copied().unwrap_or(0.0))
}

/// Full eigendecomposition of a general complex matrix: eigenvalues and the
/// matrix of right eigenvectors (columns).
pub fn eigendecomposition(a: &CMat) -> Result<(Vec<c64>, CMat), LinalgError> {
    if a.nrows() != a.ncols() {
        return Err(LinalgError::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    let eig = Eigen::new(a.as_ref()).map_err(|_| LinalgError::EigenFailed)?;
    let n = a.nrows();
    let values: Vec<c64> = (0..n).map(|i| eig.S()[i]).collect();
    Ok((values, eig.U().to_owned()))
}

/// Worst relative eigenpair residual `||A v - lambda v|| / (||A||_F ||v||)`.
pub fn eigen_residual(a: &CMat, values: &[c64], vectors: &CMat) -> f64 {
    let scale = frobenius_norm(a).max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    for (i, lambda) in values.iter().enumerate() {
        let v = vectors.col(i);
        let av = a * v;
        let mut num = 0.0;
        let mut den = 0.0;
        for r in 0..a.nrows() {
            num += (av[r] - *lambda * v[r]).norm_sqr();
            den += v[r].norm_sqr();
        }
        worst = worst.max((num.sqrt()) / (scale * den.sqrt().max(f64::MIN_POSITIVE)));
    }
    worst
}

/// Matrix exponential by scaling and squaring with diagonal Pade
/// approximants; relative accuracy near machine precision for the degrees
/// and thresholds used here.
pub fn expm(a: &CMat) -> CMat {
    assert_eq!(a.nrows(), a.ncols(), "expm needs a square matrix");
    let norm = one_norm(a);
    // degree thresholds for the 1-norm
    const THETA_3: f64 = 1.495585217958292e-2;
    const THETA_5: f64 = 2.539398330063230e-1;
    const THETA_7: f64 = 9.504178996162932e-1;
    const THETA_9: f64 = 2.097847961257068;
    const THETA_13: f64 = 5.371920351148152;

    if norm <= THETA_9 {
        let degree = if norm <= THETA_3 {
            3
        } else if norm <= THETA_5 {
            5
        } else if norm <= THETA_7 {
            7
        } else {
            9
        };
        return pade(a, degree);
    }
    let squarings = ((norm / THETA_13).log2().ceil()).max(0.0) as u32;
    let scaled = a * Scale(c64::new((0.5f64).powi(squarings as i32), 0.0));
    let mut e = pade(&scaled, 13);
    for _ in 0..squarings {
        e = &e * &e;
    }
    e
}

fn pade_coefficients(degree: usize) -> &'static [f64] {
    match degree {
        3 => &[120.0, 60.0, 12.0, 1.0],
        5 => &[30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0],
        7 => &[17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0],
        9 => &[
            17643225600.0,
            8821612800.0,
            2075673600.0,
            302702400.0,
            30270240.0,
            2162160.0,
            110880.0,
            3960.0,
            90.0,
            1.0,
        ],
        13 => &[
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
        ],
        _ => unreachable!("unsupported Pade degree"),
    }
}

fn pade(a: &CMat, degree: usize) -> CMat {
    let n = a.nrows();
    let b = pade_coefficients(degree);
    let a2 = a * a;
    // U = A (sum b_{2k+1} A^{2k}), V = sum b_{2k} A^{2k}
    let mut u_poly = zeros(n, n);
    let mut v_poly = zeros(n, n);
    let mut power = identity(n); // A^{2k}
    for k in 0.. {
        let odd = 2 * k + 1;
        let even = 2 * k;
        if even <= degree {
            v_poly = &v_poly + &power * Scale(c64::new(b[even], 0.0));
        }
        if odd <= degree {
            u_poly = &u_poly + &power * Scale(c64::new(b[odd], 0.0));
        }
        if even + 2 > degree && odd + 2 > degree {
            break;
        }
        power = &power * &a2;
    }
    let u = a * &u_poly;
    // solve (V - U) X = (V + U)
    let lhs = &v_poly - &u;
    let rhs = &v_poly + &u;
    let lu = lhs.partial_piv_lu();
    lu.solve(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_mat(n: usize, seed: u64, scale_by: f64) -> CMat {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Mat::from_fn(n, n, |_, _| {
            c64::new(
                scale_by * (rng.gen::<f64>() - 0.5),
                scale_by * (rng.gen::<f64>() - 0.5),
            )
        })
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let e = expm(&zeros(4, 4));
        assert!(max_abs_entry(&(&e - &identity(4))) < 1e-15);
    }

    #[test]
    fn expm_of_diagonal() {
        let mut d = zeros(3, 3);
        d[(0, 0)] = c64::new(0.5, 0.0);
        d[(1, 1)] = c64::new(-1.0, 2.0);
        d[(2, 2)] = c64::new(3.0, -0.7);
        let e = expm(&d);
        for i in 0..3 {
            let expect = d[(i, i)].exp();
            assert!((e[(i, i)] - expect).norm() < 1e-12 * expect.norm());
        }
    }

    #[test]
    fn expm_matches_series_small_matrix() {
        let a = random_mat(6, 3, 0.4);
        // Taylor series reference at modest norm
        let mut series = identity(6);
        let mut term = identity(6);
        for k in 1..40 {
            term = &term * &a * Scale(c64::new(1.0 / k as f64, 0.0));
            series = &series + &term;
        }
        let e = expm(&a);
        let rel = max_abs_entry(&(&e - &series)) / max_abs_entry(&series);
        assert!(rel < 1e-12, "relative error {rel:.3e}");
    }

    #[test]
    fn expm_group_property_under_scaling() {
        // e^{A} = (e^{A/2})^2 exercises the squaring phase
        let a = random_mat(8, 11, 2.0);
        let e = expm(&a);
        let half = expm(&(&a * Scale(c64::new(0.5, 0.0))));
        let rel = max_abs_entry(&(&e - &half * &half)) / max_abs_entry(&e);
        assert!(rel < 1e-11, "relative error {rel:.3e}");
    }

    #[test]
    fn expm_of_skew_hermitian_is_unitary() {
        let a = random_mat(10, 17, 1.0);
        let skew = &(&a - &adjoint(&a)) * Scale(c64::new(0.5, 0.0));
        let u = expm(&skew);
        let defect = max_abs_entry(&(&adjoint(&u) * &u - identity(10)));
        assert!(defect < 1e-12, "unitarity defect {defect:.3e}");
    }

    #[test]
    fn operator_norm_of_identity_and_diagonal() {
        assert!((operator_norm(&identity(5), 1e-10, 1000).unwrap() - 1.0).abs() < 1e-9);
        let mut d = zeros(4, 4);
        for (i, v) in [0.25, 0.75, 1.25, 1.75].iter().enumerate() {
            d[(i, i)] = c64::new(*v, 0.0);
        }
        assert!((operator_norm(&d, 1e-10, 1000).unwrap() - 1.75).abs() < 1e-8);
    }

    #[test]
    fn operator_norm_matches_svd_oracle() {
        let a = random_mat(50, 29, 1.0);
        let pi = operator_norm(&a, 1e-10, 20000).unwrap();
        let sv = singular_values(&a).unwrap();
        assert!((pi - sv[0]).abs() < 1e-7 * sv[0], "power {pi}, svd {}", sv[0]);
    }

    #[test]
    fn eigendecomposition_residuals_small() {
        let a = random_mat(40, 5, 1.0);
        let (vals, vecs) = eigendecomposition(&a).unwrap();
        assert_eq!(vals.len(), 40);
        assert!(eigen_residual(&a, &vals, &vecs) < 1e-12);
    }

    #[test]
    fn sigma_min_of_near_singular_pencil() {
        let a = random_mat(20, 9, 1.0);
        let (vals, _) = eigendecomposition(&a).unwrap();
        let shifted = &a - &(identity(20) * Scale(vals[0]));
        let smin = sigma_min(&shifted).unwrap();
        assert!(smin < 1e-12 * frobenius_norm(&a));
    }

    #[test]
    fn principal_submatrix_extracts() {
        let a = Mat::from_fn(4, 4, |i, j| c64::new((4 * i + j) as f64, 0.0));
        let s = principal_submatrix(&a, &[1, 3]);
        assert_eq!(s[(0, 0)], c64::new(5.0, 0.0));
        assert_eq!(s[(1, 0)], c64::new(13.0, 0.0));
        assert_eq!(s[(1, 1)], c64::new(15.0, 0.0));
    }
}
