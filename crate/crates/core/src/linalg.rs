//! Dense complex linear algebra used by the representation code.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`. Everything here is small
//! (dimensions at most a few hundred), so all routines are dense and direct.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

pub type CMat = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative singular-value cutoff used for null spaces and rank decisions.
pub const NULLSPACE_RTOL: f64 = 1e-8;

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

/// Largest entrywise modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Operator (spectral) norm: the largest singular value.
pub fn operator_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0, |acc: f64, s| acc.max(*s))
}

/// `max |M M† - I|`.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let d = m.nrows();
    max_abs_diff(&(m * m.adjoint()), &identity(d))
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMat::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let s = a[(i, j)];
            if s == ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn block_diag(blocks: &[&CMat]) -> CMat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMat::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), b.shape()).copy_from(*b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    CMat::from_fn(d, d, |_, _| random_complex(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    let a = random_matrix(d, rng);
    (&a + a.adjoint()).scale(0.5)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(m.nrows(), m.ncols());
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Orthonormal basis (as columns) of the null space of `a`, with singular
/// values below `rtol * sigma_max` treated as zero.
pub fn null_space(a: &CMat, rtol: f64) -> CMat {
    let cols = a.ncols();
    if cols == 0 {
        return CMat::zeros(0, 0);
    }
    // Pad to at least square so the SVD returns a full right basis.
    let work = if a.nrows() < cols {
        let mut p = CMat::zeros(cols, cols);
        p.view_mut((0, 0), a.shape()).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().fold(0.0f64, |m, s| m.max(*s));
    let cutoff = rtol * sigma_max;
    let null: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| sigma_max == 0.0 || svd.singular_values[i] <= cutoff)
        .collect();
    let mut basis = CMat::zeros(cols, null.len());
    for (k, &i) in null.iter().enumerate() {
        let row = v_t.row(i);
        for j in 0..cols {
            basis[(j, k)] = row[j].conj();
        }
    }
    basis
}

/// Smallest singular value of a square matrix and its right singular vector.
pub fn min_singular_vector(a: &CMat) -> (f64, DVector<Complex64>) {
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let (i, sigma) =
        svd.singular_values
            .iter()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |(bi, bs), (i, &s)| if s < bs { (i, s) } else { (bi, bs) },
            );
    (sigma, v_t.row(i).adjoint())
}

/// Stacked linear system for `T A_k = B_k T` acting on column-major `vec(T)`.
///
/// `A_k` are `n x n`, `B_k` are `m x m`, `T` is `m x n`.
fn intertwiner_system(a: &[CMat], b: &[CMat]) -> CMat {
    assert_eq!(a.len(), b.len());
    let n = a.first().map_or(0, |m| m.nrows());
    let m = b.first().map_or(0, |m| m.nrows());
    let eye_n = identity(n);
    let eye_m = identity(m);
    let unknowns = m * n;
    let mut stacked = CMat::zeros(a.len() * unknowns, unknowns);
    for (k, (ak, bk)) in a.iter().zip(b).enumerate() {
        // vec(T A) = (A^T kron I_m) vec(T), vec(B T) = (I_n kron B) vec(T)
        let block = kron(&ak.transpose(), &eye_m) - kron(&eye_n, bk);
        stacked
            .view_mut((k * unknowns, 0), (unknowns, unknowns))
            .copy_from(&block);
    }
    stacked
}

fn unvec(v: &DVector<Complex64>, rows: usize, cols: usize) -> CMat {
    CMat::from_column_slice(rows, cols, v.as_slice())
}

/// Dimension of `{T : T M = M T for every M in mats}`.
pub fn commutant_dimension(mats: &[CMat]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let d = mats[0].nrows();
    if d == 0 {
        return 0;
    }
    null_space(&intertwiner_system(mats, mats), NULLSPACE_RTOL).ncols()
}

/// Basis of the space of intertwiners `T` with `T A_k = B_k T` for all `k`.
pub fn intertwiner_basis(a: &[CMat], b: &[CMat]) -> Vec<CMat> {
    let n = a.first().map_or(0, |m| m.nrows());
    let m = b.first().map_or(0, |m| m.nrows());
    if n == 0 || m == 0 {
        return Vec::new();
    }
    let ns = null_space(&intertwiner_system(a, b), NULLSPACE_RTOL);
    (0..ns.ncols())
        .map(|k| unvec(&ns.column(k).into_owned(), m, n))
        .collect()
}

/// Unitary polar factor `U` of `T = U |T|`, or `None` if `T` is singular.
pub fn polar_unitary(t: &CMat) -> Option<CMat> {
    if t.nrows() != t.ncols() || t.is_empty() {
        return None;
    }
    let svd = t.clone().svd(true, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |m, s| m.max(*s));
    let smin = svd
        .singular_values
        .iter()
        .fold(f64::INFINITY, |m, s| m.min(*s));
    if smax == 0.0 || smin <= NULLSPACE_RTOL * smax {
        return None;
    }
    Some(svd.u? * svd.v_t?)
}

/// Frobenius norm.
pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
