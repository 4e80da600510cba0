use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};
use crate::pursuit::AtomSet;

use super::{Dictionary1D, DictionaryId};

/// Address of the rank-one atom `u_row * u_col^T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomAddress {
    pub row: usize,
    pub col: usize,
}

impl AtomAddress {
    pub fn new(row: usize, col: usize) -> Self {
        AtomAddress { row, col }
    }
}

/// Tensor product of a 1D dictionary with itself. Atom `(i, j)` is the
/// `L x L` block `u_i u_j^T`, flattened row-major when seen as a vector of
/// length `L^2`; flat index `i * n + j` for `n` base atoms.
#[derive(Debug, Clone)]
pub struct Dictionary2D {
    base: Dictionary1D,
    /// `L x n`, atoms as columns.
    columns: Array2<f64>,
    /// `n x L`, atoms as rows.
    rows: Array2<f64>,
}

impl Dictionary2D {
    pub fn new(base: Dictionary1D) -> Self {
        let columns = base.matrix();
        let rows = columns.t().to_owned();
        Dictionary2D { base, columns, rows }
    }

    pub fn assemble(id: DictionaryId, block_len: usize) -> Result<Self> {
        Ok(Dictionary2D::new(Dictionary1D::assemble(id, block_len)?))
    }

    pub fn base(&self) -> &Dictionary1D {
        &self.base
    }

    pub fn id(&self) -> DictionaryId {
        self.base.id()
    }

    pub fn block_len(&self) -> usize {
        self.base.block_len()
    }

    pub fn len(&self) -> usize {
        self.base.len() * self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn flat_index(&self, addr: AtomAddress) -> usize {
        addr.row * self.base.len() + addr.col
    }

    pub fn address(&self, index: usize) -> AtomAddress {
        let n = self.base.len();
        AtomAddress::new(index / n, index % n)
    }

    /// The atom as an `L x L` block.
    pub fn atom_block(&self, addr: AtomAddress) -> Array2<f64> {
        let l = self.block_len();
        let u = &self.base.atoms()[addr.row].values;
        let v = &self.base.atoms()[addr.col].values;
        Array2::from_shape_fn((l, l), |(r, c)| u[r] * v[c])
    }

    /// All correlations `<u_i u_j^T, R> = u_i^T R u_j` at once, as the
    /// `n x n` matrix `U^T R U`.
    pub fn correlate_all(&self, residual: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        let l = self.block_len();
        if residual.dim() != (l, l) {
            return Err(Error::DimensionMismatch {
                expected: format!("{l}x{l} block"),
                found: format!("{}x{}", residual.nrows(), residual.ncols()),
            });
        }
        Ok(self.rows.dot(&residual).dot(&self.columns))
    }

    /// Adds `coeff * u_i u_j^T` into `block`.
    pub fn accumulate(&self, addr: AtomAddress, coeff: f64, block: &mut Array2<f64>) {
        let u = &self.base.atoms()[addr.row];
        let v = &self.base.atoms()[addr.col];
        let (rs, re) = (u.support_start, u.support_start + u.support_len);
        let (cs, ce) = (v.support_start, v.support_start + v.support_len);
        for r in rs..re {
            let scaled = coeff * u.values[r];
            for c in cs..ce {
                block[[r, c]] += scaled * v.values[c];
            }
        }
    }
}

impl AtomSet for Dictionary2D {
    fn signal_len(&self) -> usize {
        let l = self.block_len();
        l * l
    }

    fn atom_count(&self) -> usize {
        self.len()
    }

    fn write_atom(&self, index: usize, out: &mut [f64]) {
        let addr = self.address(index);
        let u = &self.base.atoms()[addr.row].values;
        let v = &self.base.atoms()[addr.col].values;
        let l = self.block_len();
        for r in 0..l {
            for c in 0..l {
                out[r * l + c] = u[r] * v[c];
            }
        }
    }

    fn correlate(&self, residual: &[f64], out: &mut [f64]) {
        let l = self.block_len();
        let view = ArrayView2::from_shape((l, l), residual).expect("residual has L^2 entries");
        let corr = self.rows.dot(&view).dot(&self.columns);
        for (dst, src) in out.iter_mut().zip(corr.iter()) {
            *dst = *src;
        }
    }
}
