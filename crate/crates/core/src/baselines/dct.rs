//! Orthonormal 2D DCT-II applied independently to square blocks.

use ndarray::{s, Array2};

use crate::error::{Error, Result};

/// `L x L` orthonormal DCT-II matrix; row `k` is frequency `k`.
pub fn dct_matrix(block_len: usize) -> Array2<f64> {
    let l = block_len as f64;
    Array2::from_shape_fn((block_len, block_len), |(k, j)| {
        let scale = if k == 0 { (1.0 / l).sqrt() } else { (2.0 / l).sqrt() };
        scale * (std::f64::consts::PI * (2 * j + 1) as f64 * k as f64 / (2.0 * l)).cos()
    })
}

fn check_tiling(img: &Array2<f64>, block_len: usize) -> Result<()> {
    let (h, w) = img.dim();
    if block_len == 0 || h % block_len != 0 || w % block_len != 0 {
        return Err(Error::DimensionMismatch {
            expected: format!("dimensions divisible by {block_len}"),
            found: format!("{w}x{h}"),
        });
    }
    Ok(())
}

fn apply_blocks(img: &Array2<f64>, block_len: usize, left: &Array2<f64>) -> Result<Array2<f64>> {
    check_tiling(img, block_len)?;
    let right = left.t();
    let mut out = Array2::zeros(img.dim());
    let (h, w) = img.dim();
    for r in (0..h).step_by(block_len) {
        for c in (0..w).step_by(block_len) {
            let window = s![r..r + block_len, c..c + block_len];
            let block = img.slice(window);
            out.slice_mut(window).assign(&left.dot(&block).dot(&right));
        }
    }
    Ok(out)
}

pub fn dct2_blocks_forward(img: &Array2<f64>, block_len: usize) -> Result<Array2<f64>> {
    apply_blocks(img, block_len, &dct_matrix(block_len))
}

pub fn dct2_blocks_inverse(coeffs: &Array2<f64>, block_len: usize) -> Result<Array2<f64>> {
    apply_blocks(coeffs, block_len, &dct_matrix(block_len).t().to_owned())
}
