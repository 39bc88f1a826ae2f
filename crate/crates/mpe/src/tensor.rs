//! Dense complex tensors with row-major storage and pairwise contraction.
//!
//! The leftmost index is always the slowest; every reshape and contraction in
//! the crate relies on that single convention.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{c_zero, RealScalar, C};

/// Dense multi-index array of complex amplitudes, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexTensor<S: RealScalar> {
    shape: Vec<usize>,
    data: Vec<C<S>>,
}

impl<S: RealScalar> ComplexTensor<S> {
    /// Builds a tensor, checking that `data` matches `shape` and is finite.
    pub fn new(shape: Vec<usize>, data: Vec<C<S>>) -> Result<Self> {
        let expected: usize = shape.iter().product();
        if expected != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "shape {:?} holds {} amplitudes, got {}",
                shape,
                expected,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { shape, data })
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let len = shape.iter().product();
        Self {
            shape,
            data: vec![c_zero(); len],
        }
    }

    /// Rank-2 identity.
    pub fn identity(n: usize) -> Self {
        let mut t = Self::zeros(vec![n, n]);
        for i in 0..n {
            t.data[i * n + i] = Complex::new(S::one(), S::zero());
        }
        t
    }

    pub fn from_fn(shape: Vec<usize>, mut f: impl FnMut(&[usize]) -> C<S>) -> Self {
        let len: usize = shape.iter().product();
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0usize; shape.len()];
        for _ in 0..len {
            data.push(f(&idx));
            for ax in (0..shape.len()).rev() {
                idx[ax] += 1;
                if idx[ax] < shape[ax] {
                    break;
                }
                idx[ax] = 0;
            }
        }
        Self { shape, data }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[C<S>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C<S>] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<C<S>> {
        self.data
    }

    /// Row-major linear offset of a multi-index.
    fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.shape.len());
        let mut off = 0;
        for (i, &ix) in index.iter().enumerate() {
            debug_assert!(ix < self.shape[i]);
            off = off * self.shape[i] + ix;
        }
        off
    }

    pub fn at(&self, index: &[usize]) -> C<S> {
        self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: C<S>) {
        let off = self.offset(index);
        self.data[off] = value;
    }

    /// Reinterprets the amplitudes under a new shape of equal volume.
    pub fn reshape(mut self, shape: Vec<usize>) -> Result<Self> {
        let vol: usize = shape.iter().product();
        if vol != self.data.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot reshape {:?} (len {}) into {:?}",
                self.shape,
                self.data.len(),
                shape
            )));
        }
        self.shape = shape;
        Ok(self)
    }

    /// Transposes axes so that output axis `k` is input axis `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let rank = self.rank();
        if perm.len() != rank || {
            let mut seen = vec![false; rank];
            perm.iter().any(|&p| p >= rank || std::mem::replace(&mut seen[p], true))
        } {
            return Err(Error::DimensionMismatch(format!(
                "invalid permutation {:?} for rank {}",
                perm, rank
            )));
        }
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return Ok(self.clone());
        }
        let new_shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        // strides of the input, reordered to output axis order
        let mut in_strides = vec![1usize; rank];
        for ax in (0..rank.saturating_sub(1)).rev() {
            in_strides[ax] = in_strides[ax + 1] * self.shape[ax + 1];
        }
        let strides: Vec<usize> = perm.iter().map(|&p| in_strides[p]).collect();

        let mut data = Vec::with_capacity(self.data.len());
        let mut idx = vec![0usize; rank];
        let mut src = 0usize;
        for _ in 0..self.data.len() {
            data.push(self.data[src]);
            for ax in (0..rank).rev() {
                idx[ax] += 1;
                src += strides[ax];
                if idx[ax] < new_shape[ax] {
                    break;
                }
                idx[ax] = 0;
                src -= strides[ax] * new_shape[ax];
            }
        }
        Ok(Self {
            shape: new_shape,
            data,
        })
    }

    /// Elementwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: C<S>) -> Self {
        Self {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> S {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(S::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Conjugate transpose of a rank-2 tensor.
    pub fn dagger(&self) -> Result<Self> {
        if self.rank() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "dagger needs a matrix, got rank {}",
                self.rank()
            )));
        }
        Ok(self.permute(&[1, 0])?.conj())
    }

    /// Rank-2 matrix product.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.rank() != 2 || rhs.rank() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "matmul needs matrices, got ranks {} and {}",
                self.rank(),
                rhs.rank()
            )));
        }
        let (m, k) = (self.shape[0], self.shape[1]);
        let (k2, n) = (rhs.shape[0], rhs.shape[1]);
        if k != k2 {
            return Err(Error::DimensionMismatch(format!(
                "matmul inner dims {} vs {}",
                k, k2
            )));
        }
        let mut out = vec![c_zero::<S>(); m * n];
        for i in 0..m {
            let arow = &self.data[i * k..(i + 1) * k];
            let orow = &mut out[i * n..(i + 1) * n];
            for (kk, &a) in arow.iter().enumerate() {
                if a.re == S::zero() && a.im == S::zero() {
                    continue;
                }
                let brow = &rhs.data[kk * n..(kk + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow.iter()) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            shape: vec![m, n],
            data: out,
        })
    }

    /// Contracts paired axes of two tensors.
    ///
    /// The result carries the uncontracted axes of `self` (in order) followed
    /// by the uncontracted axes of `rhs`.
    pub fn contract(&self, rhs: &Self, axes: &[(usize, usize)]) -> Result<Self> {
        let mut a_contr = Vec::with_capacity(axes.len());
        let mut b_contr = Vec::with_capacity(axes.len());
        for &(ia, ib) in axes {
            if ia >= self.rank() || ib >= rhs.rank() {
                return Err(Error::DimensionMismatch(format!(
                    "contraction axis ({}, {}) out of range for ranks ({}, {})",
                    ia,
                    ib,
                    self.rank(),
                    rhs.rank()
                )));
            }
            if self.shape[ia] != rhs.shape[ib] {
                return Err(Error::DimensionMismatch(format!(
                    "contracted axes have different sizes: {} vs {}",
                    self.shape[ia], rhs.shape[ib]
                )));
            }
            if a_contr.contains(&ia) || b_contr.contains(&ib) {
                return Err(Error::DimensionMismatch(
                    "repeated contraction axis".into(),
                ));
            }
            a_contr.push(ia);
            b_contr.push(ib);
        }
        let a_free: Vec<usize> = (0..self.rank()).filter(|i| !a_contr.contains(i)).collect();
        let b_free: Vec<usize> = (0..rhs.rank()).filter(|i| !b_contr.contains(i)).collect();

        let fa: usize = a_free.iter().map(|&i| self.shape[i]).product();
        let fb: usize = b_free.iter().map(|&i| rhs.shape[i]).product();
        let kdim: usize = a_contr.iter().map(|&i| self.shape[i]).product();

        let mut perm_a = a_free.clone();
        perm_a.extend_from_slice(&a_contr);
        let mut perm_b = b_contr.clone();
        perm_b.extend_from_slice(&b_free);

        let lhs = self.permute(&perm_a)?.reshape(vec![fa, kdim])?;
        let rhs_m = rhs.permute(&perm_b)?.reshape(vec![kdim, fb])?;
        let prod = lhs.matmul(&rhs_m)?;

        let mut out_shape: Vec<usize> = a_free.iter().map(|&i| self.shape[i]).collect();
        out_shape.extend(b_free.iter().map(|&i| rhs.shape[i]));
        prod.reshape(out_shape)
    }

    /// The single amplitude of a rank-0 tensor.
    pub fn scalar_value(&self) -> Result<C<S>> {
        if self.data.len() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected a scalar, got shape {:?}",
                self.shape
            )));
        }
        Ok(self.data[0])
    }
}
