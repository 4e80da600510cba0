//! Block-wise sparse coding of grayscale images to a PSNR target.
//!
//! Every `L x L` block is approximated independently by OMP over the 2D
//! dictionary until its squared error drops to
//! `L^2 * 255^2 * 10^(-target/10)`. Since the image MSE is the mean of the
//! block MSEs, meeting that bound in every block meets the PSNR target for
//! the whole image.

mod container;
mod image;
mod report;

use ndarray::{s, Array2};
use rayon::prelude::*;

use crate::dictionary::{AtomAddress, Dictionary2D};
use crate::error::{Error, Result};
use crate::pursuit::{run_omp, StopReason, StoppingRule};

pub use container::{EncodedImage, Header, SparseBlock, HEADER_LEN, MAGIC, VERSION};
pub use image::ImageGray8;
pub use report::{read_report_csv, write_report_csv, ReportRow, SparsityReport};

const PEAK: f64 = 255.0;

/// `10 log10(255^2 / MSE)`; infinite for identical images.
pub fn psnr(original: &ImageGray8, approx: &Array2<f64>) -> Result<f64> {
    let (rows, cols) = approx.dim();
    if (rows, cols) != (original.height(), original.width()) {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", original.width(), original.height()),
            found: format!("{cols}x{rows}"),
        });
    }
    let sse: f64 = original
        .pixels()
        .iter()
        .zip(approx.iter())
        .map(|(&p, &a)| (f64::from(p) - a).powi(2))
        .sum();
    Ok(psnr_from_mse(sse / (rows * cols) as f64))
}

pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK * PEAK / mse).log10()
    }
}

/// Largest per-block squared error compatible with `target_db`.
pub fn psnr_to_block_sse(target_db: f64, block_len: usize) -> f64 {
    (block_len * block_len) as f64 * PEAK * PEAK * 10f64.powf(-target_db / 10.0)
}

/// One row of a per-iteration convergence trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockTrace {
    pub block: usize,
    pub iteration: usize,
    pub address: AtomAddress,
    pub correlation: f64,
    pub residual_sse: f64,
}

/// Writes `block,k,row_atom,col_atom,abs_correlation,residual_sse` rows.
pub fn write_trace_csv<W: std::io::Write>(rows: &[BlockTrace], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["block", "k", "row_atom", "col_atom", "abs_correlation", "residual_sse"])?;
    for t in rows {
        w.write_record([
            t.block.to_string(),
            t.iteration.to_string(),
            t.address.row.to_string(),
            t.address.col.to_string(),
            t.correlation.to_string(),
            t.residual_sse.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Encoded {
    pub image: EncodedImage,
    pub report: SparsityReport,
    /// Empty unless tracing was requested.
    pub trace: Vec<BlockTrace>,
}

fn block_view(img: &Array2<f64>, index: usize, across: usize, l: usize) -> Array2<f64> {
    let (br, bc) = (index / across, index % across);
    img.slice(s![br * l..(br + 1) * l, bc * l..(bc + 1) * l]).to_owned()
}

/// Approximates one `L x L` block to within `sse_threshold`.
pub fn approximate_block(block: &Array2<f64>, dict: &Dictionary2D, sse_threshold: f64) -> Result<(SparseBlock, f64)> {
    let signal: Vec<f64> = block.iter().copied().collect();
    let out = run_omp(&signal, dict, &StoppingRule::target_sse(sse_threshold), false)?;
    let sparse = SparseBlock {
        entries: out.entries.iter().map(|&(i, c)| (dict.address(i), c)).collect(),
    };
    Ok((sparse, out.residual_norm()))
}

/// Encodes `img` block by block on the current rayon pool. The result does
/// not depend on the number of workers.
pub fn encode(img: &ImageGray8, name: &str, dict: &Dictionary2D, target_db: f64, trace: bool) -> Result<Encoded> {
    let l = dict.block_len();
    if !img.width().is_multiple_of(l) || !img.height().is_multiple_of(l) || img.width() == 0 || img.height() == 0 {
        return Err(Error::DimensionMismatch {
            expected: format!("dimensions divisible by block size {l}"),
            found: format!("{}x{}", img.width(), img.height()),
        });
    }
    if target_db.is_nan() || target_db <= 0.0 {
        return Err(Error::Config(format!("target PSNR must be positive, got {target_db}")));
    }
    let header = Header {
        width: img.width(),
        height: img.height(),
        block_size: l,
        dictionary: dict.id(),
        target_psnr: target_db,
    };
    let threshold = psnr_to_block_sse(target_db, l);
    let real = img.to_real();
    let across = header.blocks_across();

    let per_block: Vec<(SparseBlock, Vec<BlockTrace>)> = (0..header.block_count())
        .into_par_iter()
        .map(|index| {
            let block = block_view(&real, index, across, l);
            let signal: Vec<f64> = block.iter().copied().collect();
            let rule = StoppingRule::target_sse(threshold);
            let fail = |sse: f64| Error::BlockNotConverged {
                row: index / across,
                col: index % across,
                sse,
                threshold,
            };
            let out = match run_omp(&signal, dict, &rule, trace) {
                Ok(out) => out,
                Err(Error::PursuitExhausted) => return Err(fail(f64::NAN)),
                Err(e) => return Err(e),
            };
            if out.stop != StopReason::Threshold {
                return Err(fail(out.residual_sse));
            }
            let rows = out
                .trace
                .iter()
                .map(|t| BlockTrace {
                    block: index,
                    iteration: t.iteration,
                    address: dict.address(t.index),
                    correlation: t.correlation,
                    residual_sse: t.residual_sse,
                })
                .collect();
            let sparse = SparseBlock {
                entries: out.entries.iter().map(|&(i, c)| (dict.address(i), c)).collect(),
            };
            Ok((sparse, rows))
        })
        .collect::<Result<_>>()?;

    let mut blocks = Vec::with_capacity(per_block.len());
    let mut trace_rows = Vec::new();
    for (block, rows) in per_block {
        blocks.push(block);
        trace_rows.extend(rows);
    }
    let image = EncodedImage { header, blocks };
    let decoded = decode(&image, dict)?;
    let achieved = psnr(img, &decoded)?;
    let report = SparsityReport::new(name, &dict.id().to_string(), &image, achieved);
    Ok(Encoded {
        image,
        report,
        trace: trace_rows,
    })
}

/// Sums `coefficient * u_i u_j^T` per block. The output stays real-valued;
/// use [`ImageGray8::from_real`] for an 8-bit export.
pub fn decode(enc: &EncodedImage, dict: &Dictionary2D) -> Result<Array2<f64>> {
    let h = &enc.header;
    if h.dictionary != dict.id() || h.block_size != dict.block_len() {
        return Err(Error::DictionaryMismatch(format!(
            "container uses {} with {}-pixel blocks, dictionary is {} with {}-pixel blocks",
            h.dictionary,
            h.block_size,
            dict.id(),
            dict.block_len()
        )));
    }
    if enc.blocks.len() != h.block_count() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} blocks", h.block_count()),
            found: enc.blocks.len().to_string(),
        });
    }
    let l = h.block_size;
    let across = h.blocks_across();
    let tiles: Vec<Array2<f64>> = enc
        .blocks
        .par_iter()
        .map(|sparse| {
            let mut tile = Array2::zeros((l, l));
            for &(addr, coeff) in &sparse.entries {
                dict.accumulate(addr, coeff, &mut tile);
            }
            tile
        })
        .collect();
    let mut out = Array2::zeros((h.height, h.width));
    for (index, tile) in tiles.iter().enumerate() {
        let (br, bc) = (index / across, index % across);
        out.slice_mut(s![br * l..(br + 1) * l, bc * l..(bc + 1) * l])
            .assign(tile);
    }
    Ok(out)
}
