//! Matrix decompositions on dense complex matrices: thin SVD, Hermitian
//! eigendecomposition, and the unitary polar factor.
//!
//! Everything is one-sided / cyclic Jacobi, which keeps the crate free of
//! external linear-algebra backends and works for any [`RealScalar`]. The
//! matrices that flow through here are small on at least one side (bond and
//! gate dimensions), where Jacobi is both fast and accurate to machine
//! precision.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{c_one, c_zero, RealScalar, C};
use crate::tensor::ComplexTensor;

const MAX_SWEEPS: usize = 64;

/// Column-major scratch matrix; columns are contiguous.
struct ColMat<S: RealScalar> {
    rows: usize,
    cols: usize,
    data: Vec<C<S>>,
}

impl<S: RealScalar> ColMat<S> {
    fn from_row_major(t: &ComplexTensor<S>) -> Self {
        let (r, c) = (t.shape()[0], t.shape()[1]);
        let mut data = vec![c_zero::<S>(); r * c];
        for i in 0..r {
            for j in 0..c {
                data[j * r + i] = t.data()[i * c + j];
            }
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    fn identity(n: usize) -> Self {
        let mut data = vec![c_zero::<S>(); n * n];
        for i in 0..n {
            data[i * n + i] = c_one();
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    fn col(&self, j: usize) -> &[C<S>] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Mutable views of two distinct columns `p < q`.
    fn col_pair_mut(&mut self, p: usize, q: usize) -> (&mut [C<S>], &mut [C<S>]) {
        debug_assert!(p < q);
        let (lo, hi) = self.data.split_at_mut(q * self.rows);
        (
            &mut lo[p * self.rows..(p + 1) * self.rows],
            &mut hi[..self.rows],
        )
    }
}

fn dot_conj<S: RealScalar>(a: &[C<S>], b: &[C<S>]) -> C<S> {
    let mut acc = c_zero::<S>();
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x.conj() * *y;
    }
    acc
}

fn norm_sqr<S: RealScalar>(a: &[C<S>]) -> S {
    a.iter().map(|z| z.norm_sqr()).fold(S::zero(), |x, y| x + y)
}

/// Jacobi rotation parameters diagonalizing the 2x2 Gram block
/// [[alpha, gamma], [conj(gamma), beta]].
struct Rotation<S: RealScalar> {
    c: S,
    s: S,
    /// e^{-i arg(gamma)}
    em: C<S>,
}

fn jacobi_rotation<S: RealScalar>(alpha: S, beta: S, gamma: C<S>) -> Rotation<S> {
    let g_abs = gamma.norm();
    let em = gamma.conj() / g_abs;
    let tau = (beta - alpha) / (S::of(2.0) * g_abs);
    let t = if tau >= S::zero() {
        S::one() / (tau + (S::one() + tau * tau).sqrt())
    } else {
        -S::one() / (-tau + (S::one() + tau * tau).sqrt())
    };
    let c = S::one() / (S::one() + t * t).sqrt();
    Rotation { c, s: c * t, em }
}

/// Applies the rotation to columns `p`, `q`:
/// p' = c*p - s*em*q ; q' = s*p + c*em*q.
fn rotate_cols<S: RealScalar>(m: &mut ColMat<S>, p: usize, q: usize, r: &Rotation<S>) {
    let (cp, cq) = m.col_pair_mut(p, q);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let yq = *y * r.em;
        *x = xp * r.c - yq * r.s;
        *y = xp * r.s + yq * r.c;
    }
}

/// One-sided Jacobi on a tall matrix (`rows >= cols`): returns the matrix with
/// orthogonal columns plus the accumulated right factor `w` (a unitary, with
/// `input = result * w^dagger`).
fn one_sided_jacobi<S: RealScalar>(a: &mut ColMat<S>, w: &mut ColMat<S>) -> Result<()> {
    let n = a.cols;
    let tol = S::epsilon() * S::of(8.0);
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = 0usize;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let alpha = norm_sqr(a.col(p));
                let beta = norm_sqr(a.col(q));
                if alpha == S::zero() || beta == S::zero() {
                    continue;
                }
                let gamma = dot_conj(a.col(p), a.col(q));
                if gamma.norm_sqr() <= tol * tol * alpha * beta {
                    continue;
                }
                let rot = jacobi_rotation(alpha, beta, gamma);
                rotate_cols(a, p, q, &rot);
                rotate_cols(w, p, q, &rot);
                rotated += 1;
            }
        }
        if rotated == 0 {
            return Ok(());
        }
    }
    Err(Error::NoConvergence)
}

/// Extends a set of orthonormal vectors to `want` vectors of dimension `dim`
/// by picking, at each step, the canonical basis vector with the largest
/// residual (ties to the lowest index).
fn complete_orthonormal_set<S: RealScalar>(
    existing: &mut Vec<Vec<C<S>>>,
    dim: usize,
    want: usize,
) {
    while existing.len() < want {
        let mut best: Option<(S, Vec<C<S>>)> = None;
        for cand in 0..dim {
            let mut v = vec![c_zero::<S>(); dim];
            v[cand] = c_one();
            for u in existing.iter() {
                let ov = dot_conj(u, &v);
                for (vi, ui) in v.iter_mut().zip(u.iter()) {
                    *vi -= *ui * ov;
                }
            }
            let n2 = norm_sqr(&v);
            if best.as_ref().map_or(true, |(b, _)| n2 > *b) {
                best = Some((n2, v));
            }
        }
        let (n2, mut v) = best.expect("dim > 0");
        let inv = S::one() / n2.sqrt();
        for vi in v.iter_mut() {
            *vi = vi.scale(inv);
        }
        existing.push(v);
    }
}

/// Thin SVD `m = U . diag(S) . Vh` with `S` real, non-negative, descending.
///
/// `U` is `rows x k`, `Vh` is `k x cols` with `k = min(rows, cols)`; both are
/// isometric even when `m` is rank-deficient (missing directions are filled
/// with a deterministic orthonormal completion).
pub fn svd_split<S: RealScalar>(
    m: &ComplexTensor<S>,
) -> Result<(ComplexTensor<S>, Vec<S>, ComplexTensor<S>)> {
    if m.rank() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "svd_split needs a matrix, got rank {}",
            m.rank()
        )));
    }
    if m.data().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let (rows, cols) = (m.shape()[0], m.shape()[1]);
    if rows == 0 || cols == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    if rows < cols {
        // svd of the adjoint, then swap factors
        let (u, s, vh) = svd_split(&m.dagger()?)?;
        return Ok((vh.dagger()?, s, u.dagger()?));
    }

    let mut a = ColMat::from_row_major(m);
    let mut w = ColMat::identity(cols);
    one_sided_jacobi(&mut a, &mut w)?;

    let mut norms: Vec<S> = (0..cols).map(|j| norm_sqr(a.col(j)).sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap().then(i.cmp(&j)));

    let s_max = norms[order[0]];
    let dim_factor = S::from_usize(rows.max(cols)).unwrap();
    let drop_tol = s_max * S::epsilon() * dim_factor * S::of(4.0);

    // U columns: normalized Jacobi columns; rank-deficient slots get a
    // deterministic completion so U stays isometric.
    let mut u_cols: Vec<Vec<C<S>>> = Vec::with_capacity(cols);
    let mut deficient: Vec<usize> = Vec::new();
    for (slot, &j) in order.iter().enumerate() {
        if s_max > S::zero() && norms[j] > drop_tol {
            let inv = S::one() / norms[j];
            u_cols.push(a.col(j).iter().map(|z| z.scale(inv)).collect());
        } else {
            norms[j] = norms[j].max(S::zero());
            deficient.push(slot);
            u_cols.push(Vec::new());
        }
    }
    if !deficient.is_empty() {
        let mut set: Vec<Vec<C<S>>> = u_cols.iter().filter(|v| !v.is_empty()).cloned().collect();
        let have = set.len();
        complete_orthonormal_set(&mut set, rows, cols);
        for (extra, &slot) in set.drain(have..).zip(deficient.iter()).map(|(v, s)| (v, s)) {
            u_cols[slot] = extra;
        }
    }

    let mut u = ComplexTensor::zeros(vec![rows, cols]);
    for (slot, colv) in u_cols.iter().enumerate() {
        for i in 0..rows {
            u.data_mut()[i * cols + slot] = colv[i];
        }
    }
    let s_sorted: Vec<S> = order.iter().map(|&j| norms[j]).collect();
    // Vh row j = conj of W column order[j]
    let mut vh = ComplexTensor::zeros(vec![cols, cols]);
    for (slot, &j) in order.iter().enumerate() {
        for kk in 0..cols {
            vh.data_mut()[slot * cols + kk] = w.col(j)[kk].conj();
        }
    }
    Ok((u, s_sorted, vh))
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues ascending and
/// the matching orthonormal eigenvectors as columns.
pub fn eigh<S: RealScalar>(m: &ComplexTensor<S>) -> Result<(Vec<S>, ComplexTensor<S>)> {
    if m.rank() != 2 || m.shape()[0] != m.shape()[1] {
        return Err(Error::DimensionMismatch(format!(
            "eigh needs a square matrix, got shape {:?}",
            m.shape()
        )));
    }
    let n = m.shape()[0];
    let scale = m
        .data()
        .iter()
        .map(|z| z.norm())
        .fold(S::zero(), |a, b| a.max(b));
    let mut resid = S::zero();
    for i in 0..n {
        for j in 0..n {
            let d = (m.at(&[i, j]) - m.at(&[j, i]).conj()).norm();
            resid = resid.max(d);
        }
    }
    let herm_tol = (S::of(1e-10)).max(S::epsilon() * S::of(16.0)) * S::one().max(scale);
    if resid > herm_tol {
        return Err(Error::NotHermitian {
            residual: resid.as_f64(),
        });
    }

    // work on the symmetrized copy, row-major
    let mut a = vec![c_zero::<S>(); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (m.at(&[i, j]) + m.at(&[j, i]).conj()).scale(S::of(0.5));
        }
    }
    let mut v = ComplexTensor::identity(n);
    let frob = a
        .iter()
        .map(|z| z.norm_sqr())
        .fold(S::zero(), |x, y| x + y)
        .sqrt();
    let abs_tol = frob * S::epsilon() * S::of(0.5);

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = 0usize;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let gamma = a[p * n + q];
                if gamma.norm() <= abs_tol {
                    continue;
                }
                let alpha = a[p * n + p].re;
                let beta = a[q * n + q].re;
                let rot = jacobi_rotation(alpha, beta, gamma);
                let (c, s, em) = (rot.c, rot.s, rot.em);
                // columns: A <- A R
                for i in 0..n {
                    let xp = a[i * n + p];
                    let yq = a[i * n + q] * em;
                    a[i * n + p] = xp * c - yq * s;
                    a[i * n + q] = xp * s + yq * c;
                }
                // rows: A <- R^dagger A
                let ep = em.conj();
                for j in 0..n {
                    let xp = a[p * n + j];
                    let yq = a[q * n + j] * ep;
                    a[p * n + j] = xp * c - yq * s;
                    a[q * n + j] = xp * s + yq * c;
                }
                a[p * n + q] = c_zero();
                a[q * n + p] = c_zero();
                a[p * n + p] = Complex::new(a[p * n + p].re, S::zero());
                a[q * n + q] = Complex::new(a[q * n + q].re, S::zero());
                // eigenvectors: V <- V R
                for i in 0..n {
                    let base = i * n;
                    let xp = v.data()[base + p];
                    let yq = v.data()[base + q] * em;
                    v.data_mut()[base + p] = xp * c - yq * s;
                    v.data_mut()[base + q] = xp * s + yq * c;
                }
                rotated += 1;
            }
        }
        if rotated == 0 {
            let mut vals: Vec<S> = (0..n).map(|i| a[i * n + i].re).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap().then(i.cmp(&j)));
            let sorted: Vec<S> = order.iter().map(|&i| vals[i]).collect();
            vals = sorted;
            let mut vec_sorted = ComplexTensor::zeros(vec![n, n]);
            for (slot, &j) in order.iter().enumerate() {
                for i in 0..n {
                    vec_sorted.data_mut()[i * n + slot] = v.data()[i * n + j];
                }
            }
            return Ok((vals, vec_sorted));
        }
    }
    Err(Error::NoConvergence)
}

/// The unitary `G` maximizing `|tr(G e)|` over all unitaries, namely
/// `V U^dagger` for `e = U diag(S) Vh`. A zero matrix yields the identity.
pub fn polar_factor<S: RealScalar>(e: &ComplexTensor<S>) -> Result<ComplexTensor<S>> {
    let (g, _) = polar_factor_with_weight(e)?;
    Ok(g)
}

/// Polar factor together with the singular-value sum `tr(polar(e) . e)`.
pub(crate) fn polar_factor_with_weight<S: RealScalar>(
    e: &ComplexTensor<S>,
) -> Result<(ComplexTensor<S>, S)> {
    if e.rank() != 2 || e.shape()[0] != e.shape()[1] {
        return Err(Error::DimensionMismatch(format!(
            "polar_factor needs a square matrix, got shape {:?}",
            e.shape()
        )));
    }
    let (u, s, vh) = svd_split(e)?;
    let weight = s.iter().fold(S::zero(), |a, &b| a + b);
    Ok((u.matmul(&vh)?.dagger()?, weight))
}

/// Gram-Schmidt orthonormalization of the columns of a square matrix.
/// Errors if the columns are linearly dependent to machine precision.
pub fn orthonormalize_columns<S: RealScalar>(m: &ComplexTensor<S>) -> Result<ComplexTensor<S>> {
    if m.rank() != 2 || m.shape()[0] != m.shape()[1] {
        return Err(Error::DimensionMismatch(format!(
            "orthonormalize_columns needs a square matrix, got shape {:?}",
            m.shape()
        )));
    }
    let n = m.shape()[0];
    let mut cols: Vec<Vec<C<S>>> = (0..n)
        .map(|j| (0..n).map(|i| m.at(&[i, j])).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let prev = cols[k].clone();
            let ov = dot_conj(&prev, &cols[j]);
            for (x, p) in cols[j].iter_mut().zip(prev.iter()) {
                *x -= *p * ov;
            }
        }
        let nrm = norm_sqr(&cols[j]).sqrt();
        if nrm < S::epsilon() * S::of(64.0) {
            return Err(Error::DimensionMismatch(
                "columns are linearly dependent".into(),
            ));
        }
        let inv = S::one() / nrm;
        for x in cols[j].iter_mut() {
            *x = x.scale(inv);
        }
    }
    let mut out = ComplexTensor::zeros(vec![n, n]);
    for (j, colv) in cols.iter().enumerate() {
        for i in 0..n {
            out.data_mut()[i * n + j] = colv[i];
        }
    }
    Ok(out)
}

/// Adds orthonormal rows to a row-isometric matrix until it has
/// `target_rows` rows; the added rows come from the deterministic canonical
/// completion and are orthogonal to the existing ones.
pub(crate) fn extend_orthonormal_rows<S: RealScalar>(
    m: &ComplexTensor<S>,
    target_rows: usize,
) -> Result<ComplexTensor<S>> {
    let (r, cdim) = (m.shape()[0], m.shape()[1]);
    if target_rows < r || target_rows > cdim {
        return Err(Error::DimensionMismatch(format!(
            "cannot extend {} rows of width {} to {} orthonormal rows",
            r, cdim, target_rows
        )));
    }
    let mut set: Vec<Vec<C<S>>> = (0..r)
        .map(|i| (0..cdim).map(|j| m.at(&[i, j])).collect())
        .collect();
    complete_orthonormal_set(&mut set, cdim, target_rows);
    let mut out = ComplexTensor::zeros(vec![target_rows, cdim]);
    for (i, row) in set.iter().enumerate() {
        for j in 0..cdim {
            out.data_mut()[i * cdim + j] = row[j];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type T = ComplexTensor<f64>;
    type C64 = Complex64;

    fn random_matrix(r: usize, c: usize, seed: u64) -> T {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        T::new(
            vec![r, c],
            (0..r * c)
                .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect(),
        )
        .unwrap()
    }

    fn reconstruction_error(m: &T, u: &T, s: &[f64], vh: &T) -> f64 {
        let k = s.len();
        let mut sv = T::zeros(vec![k, k]);
        for (i, &x) in s.iter().enumerate() {
            sv.data_mut()[i * k + i] = C64::new(x, 0.0);
        }
        let rec = u.matmul(&sv).unwrap().matmul(vh).unwrap();
        let mut diff = 0.0;
        for (a, b) in rec.data().iter().zip(m.data()) {
            diff += (a - b).norm_sqr();
        }
        diff.sqrt()
    }

    fn isometry_residual(u: &T) -> f64 {
        let g = u.dagger().unwrap().matmul(u).unwrap();
        let k = g.shape()[0];
        let mut worst: f64 = 0.0;
        for i in 0..k {
            for j in 0..k {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g.at(&[i, j]) - C64::new(expect, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn svd_identity() {
        let (u, s, vh) = svd_split(&T::identity(4)).unwrap();
        assert_eq!(s.len(), 4);
        for &x in &s {
            assert!((x - 1.0).abs() < 1e-14);
        }
        assert!(reconstruction_error(&T::identity(4), &u, &s, &vh) < 1e-13);
    }

    #[test]
    fn svd_rank_deficient_diag() {
        let m = T::new(
            vec![2, 2],
            vec![
                C64::new(3.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let (u, s, vh) = svd_split(&m).unwrap();
        assert!((s[0] - 3.0).abs() < 1e-14);
        assert!(s[1].abs() < 1e-14);
        assert!(reconstruction_error(&m, &u, &s, &vh) < 1e-13);
        assert!(isometry_residual(&u) < 1e-13);
        assert!(isometry_residual(&vh.dagger().unwrap()) < 1e-13);
    }

    #[test]
    fn svd_random_reconstruction_and_isometry() {
        for seed in 0..20 {
            let m = random_matrix(4, 4, seed);
            let (u, s, vh) = svd_split(&m).unwrap();
            assert!(reconstruction_error(&m, &u, &s, &vh) <= 1e-12 * m.frobenius_norm().max(1.0));
            assert!(isometry_residual(&u) <= 1e-12);
            assert!(isometry_residual(&vh.dagger().unwrap()) <= 1e-12);
            for w in s.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn svd_rectangular_both_orientations() {
        for (r, c) in [(6, 3), (3, 6), (8, 2), (2, 8)] {
            let m = random_matrix(r, c, (r * 10 + c) as u64);
            let (u, s, vh) = svd_split(&m).unwrap();
            assert_eq!(s.len(), r.min(c));
            assert_eq!(u.shape(), &[r, r.min(c)]);
            assert_eq!(vh.shape(), &[r.min(c), c]);
            assert!(reconstruction_error(&m, &u, &s, &vh) < 1e-12 * m.frobenius_norm());
            assert!(isometry_residual(&u) < 1e-12);
        }
    }

    #[test]
    fn eigh_identity() {
        let (vals, _) = eigh(&T::identity(2)).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigh_rank_two_kernel() {
        // diag(0,0,1,1): two zero eigenvalues; their eigenvectors span the kernel
        let mut m = T::zeros(vec![4, 4]);
        m.set(&[2, 2], C64::new(1.0, 0.0));
        m.set(&[3, 3], C64::new(1.0, 0.0));
        let (vals, vecs) = eigh(&m).unwrap();
        assert!(vals[0].abs() < 1e-14 && vals[1].abs() < 1e-14);
        assert!((vals[2] - 1.0).abs() < 1e-14 && (vals[3] - 1.0).abs() < 1e-14);
        // kernel vectors have no support on the last two coordinates
        for k in 0..2 {
            for i in 2..4 {
                assert!(vecs.at(&[i, k]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn eigh_random_hermitian_residual() {
        for seed in 0..10 {
            let a = random_matrix(4, 4, 100 + seed);
            let m = {
                let ad = a.dagger().unwrap();
                let mut h = T::zeros(vec![4, 4]);
                for i in 0..4 {
                    for j in 0..4 {
                        h.set(&[i, j], (a.at(&[i, j]) + ad.at(&[i, j])).scale(0.5));
                    }
                }
                h
            };
            let (vals, vecs) = eigh(&m).unwrap();
            for k in 0..4 {
                // || m v - lambda v ||
                let mut worst: f64 = 0.0;
                for i in 0..4 {
                    let mut mv = C64::new(0.0, 0.0);
                    for j in 0..4 {
                        mv += m.at(&[i, j]) * vecs.at(&[j, k]);
                    }
                    worst = worst.max((mv - vecs.at(&[i, k]).scale(vals[k])).norm());
                }
                assert!(worst <= 1e-10, "residual {worst} at seed {seed}");
            }
            for w in vals.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let mut m = T::zeros(vec![2, 2]);
        m.set(&[0, 1], C64::new(1.0, 0.0));
        assert!(matches!(eigh(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn polar_of_identity_and_scaled_identity() {
        for factor in [1.0, 2.0] {
            let e = T::identity(3).scale(C64::new(factor, 0.0));
            let g = polar_factor(&e).unwrap();
            assert!(isometry_residual(&g) < 1e-13);
            for i in 0..3 {
                for j in 0..3 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((g.at(&[i, j]) - C64::new(expect, 0.0)).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn polar_of_zero_is_identity() {
        let g = polar_factor(&T::zeros(vec![4, 4])).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g.at(&[i, j]) - C64::new(expect, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn polar_maximizes_trace_over_random_unitaries() {
        let e = random_matrix(4, 4, 77);
        let g = polar_factor(&e).unwrap();
        assert!(isometry_residual(&g) <= 1e-12);
        let best = g.matmul(&e).unwrap();
        let tr = |m: &T| (0..4).map(|i| m.at(&[i, i])).sum::<C64>().norm();
        let target = tr(&best);
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..1000 {
            let w = orthonormalize_columns(&T::new(
                vec![4, 4],
                (0..16)
                    .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                    .collect(),
            )
            .unwrap())
            .unwrap();
            let cand = tr(&w.matmul(&e).unwrap());
            assert!(target >= cand - 1e-10);
        }
    }

    #[test]
    fn extend_rows_preserves_isometry() {
        let m = random_matrix(4, 4, 5);
        let (_, _, vh) = svd_split(&m).unwrap();
        // take first row only, extend back to 3 rows
        let one = T::new(vec![1, 4], vh.data()[..4].to_vec()).unwrap();
        let ext = extend_orthonormal_rows(&one, 3).unwrap();
        let g = ext.matmul(&ext.dagger().unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g.at(&[i, j]) - C64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }
}
