//! Transform-and-threshold baselines: block DCT-II and CDF 9/7 wavelets.
//!
//! Both keep the largest-magnitude coefficients of the whole image, with
//! the kept count chosen by bisection as the smallest one whose
//! reconstruction reaches the PSNR target.

mod cdf97;
mod dct;

use ndarray::Array2;

use crate::codec::{psnr, ImageGray8};
use crate::error::{Error, Result};

pub use cdf97::{cdf97_forward, cdf97_inverse, forward_1d as cdf97_forward_1d, inverse_1d as cdf97_inverse_1d};
pub use dct::{dct2_blocks_forward, dct2_blocks_inverse, dct_matrix};

/// Wavelet decomposition depth used for 512 x 512 images.
pub const DEFAULT_LEVELS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    BlockDct { block_len: usize },
    Cdf97 { levels: usize },
}

impl TransformKind {
    /// Report label.
    pub fn label(&self) -> &'static str {
        match self {
            TransformKind::BlockDct { .. } => "dct",
            TransformKind::Cdf97 { .. } => "cdf97",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformCoeffs {
    pub kind: TransformKind,
    pub values: Array2<f64>,
}

impl TransformCoeffs {
    pub fn forward(kind: TransformKind, img: &Array2<f64>) -> Result<Self> {
        let values = match kind {
            TransformKind::BlockDct { block_len } => dct2_blocks_forward(img, block_len)?,
            TransformKind::Cdf97 { levels } => cdf97_forward(img, levels)?,
        };
        Ok(TransformCoeffs { kind, values })
    }

    pub fn inverse(&self) -> Result<Array2<f64>> {
        self.inverse_of(&self.values)
    }

    fn inverse_of(&self, values: &Array2<f64>) -> Result<Array2<f64>> {
        match self.kind {
            TransformKind::BlockDct { block_len } => dct2_blocks_inverse(values, block_len),
            TransformKind::Cdf97 { levels } => cdf97_inverse(values, levels),
        }
    }

    /// Reconstruction from the `kept` largest-magnitude coefficients, with
    /// `order` listing coefficient indices by decreasing magnitude.
    fn reconstruct_top(&self, order: &[usize], kept: usize) -> Result<Array2<f64>> {
        let mut sparse = Array2::zeros(self.values.dim());
        {
            let src = self.values.as_slice().expect("standard layout");
            let dst = sparse.as_slice_mut().expect("standard layout");
            for &i in &order[..kept] {
                dst[i] = src[i];
            }
        }
        self.inverse_of(&sparse)
    }

    /// Coefficient indices by decreasing magnitude, ties by index.
    pub fn magnitude_order(&self) -> Vec<usize> {
        let values = self.values.as_slice().expect("standard layout");
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].abs().total_cmp(&values[a].abs()).then(a.cmp(&b)));
        order
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub kept: usize,
    pub psnr: f64,
}

/// Smallest number of largest-magnitude coefficients whose reconstruction
/// reaches `target_db` against `img`.
pub fn threshold_to_psnr(coeffs: &TransformCoeffs, img: &ImageGray8, target_db: f64) -> Result<ThresholdResult> {
    let (h, w) = coeffs.values.dim();
    if (h, w) != (img.height(), img.width()) {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", img.width(), img.height()),
            found: format!("{w}x{h}"),
        });
    }
    let order = coeffs.magnitude_order();
    let quality = |kept: usize| -> Result<f64> { psnr(img, &coeffs.reconstruct_top(&order, kept)?) };

    let total = order.len();
    let full = quality(total)?;
    if full < target_db {
        return Err(Error::UnreachableTarget(target_db));
    }
    let empty = quality(0)?;
    if empty >= target_db {
        return Ok(ThresholdResult { kept: 0, psnr: empty });
    }
    // quality(lo) < target <= quality(hi)
    let (mut lo, mut hi, mut hi_psnr) = (0, total, full);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let q = quality(mid)?;
        if q >= target_db {
            hi = mid;
            hi_psnr = q;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdResult {
        kept: hi,
        psnr: hi_psnr,
    })
}

/// Forward transform of `img` followed by [`threshold_to_psnr`].
pub fn run_baseline(img: &ImageGray8, kind: TransformKind, target_db: f64) -> Result<ThresholdResult> {
    let coeffs = TransformCoeffs::forward(kind, &img.to_real())?;
    threshold_to_psnr(&coeffs, img, target_db)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn textured(n: usize) -> ImageGray8 {
        ImageGray8::from_fn(n, n, |r, c| {
            let v =
                128.0 + 60.0 * ((r as f64) * 0.3).sin() * ((c as f64) * 0.17).cos() + ((r * 7 + c * 13) % 23) as f64;
            v.clamp(0.0, 255.0) as u8
        })
    }

    #[test]
    fn keep_all_is_lossless() {
        let img = textured(32);
        for kind in [
            TransformKind::BlockDct { block_len: 16 },
            TransformKind::Cdf97 { levels: 3 },
        ] {
            let c = TransformCoeffs::forward(kind, &img.to_real()).unwrap();
            let order = c.magnitude_order();
            let p = psnr(&img, &c.reconstruct_top(&order, order.len()).unwrap()).unwrap();
            assert!(p > 200.0, "{kind:?}: {p}");
        }
    }

    #[test]
    fn zero_target_keeps_at_most_one() {
        let img = textured(32);
        for kind in [
            TransformKind::BlockDct { block_len: 16 },
            TransformKind::Cdf97 { levels: 3 },
        ] {
            let r = run_baseline(&img, kind, 0.0001).unwrap();
            assert!(r.kept <= 1, "{kind:?} kept {}", r.kept);
        }
    }

    #[test]
    fn bisection_finds_the_minimal_count() {
        let img = textured(32);
        let kind = TransformKind::BlockDct { block_len: 16 };
        let c = TransformCoeffs::forward(kind, &img.to_real()).unwrap();
        let r = threshold_to_psnr(&c, &img, 35.0).unwrap();
        assert!(r.psnr >= 35.0);
        let order = c.magnitude_order();
        let fewer = psnr(&img, &c.reconstruct_top(&order, r.kept - 1).unwrap()).unwrap();
        assert!(fewer < 35.0);
    }

    #[test]
    fn higher_target_never_keeps_fewer() {
        let img = textured(64);
        for kind in [
            TransformKind::BlockDct { block_len: 16 },
            TransformKind::Cdf97 { levels: 4 },
        ] {
            let mut last = 0;
            for t in [20.0, 25.0, 30.0, 35.0, 40.0, 45.0] {
                let r = run_baseline(&img, kind, t).unwrap();
                assert!(r.kept >= last);
                last = r.kept;
            }
        }
    }
}
