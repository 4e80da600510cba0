use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};

use super::EncodedImage;

/// Sparsity of one encoded image.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsityReport {
    pub image: String,
    pub dictionary: String,
    pub pixels: usize,
    pub total_atoms: usize,
    pub psnr_achieved: f64,
    pub psnr_target: f64,
    /// Atoms used by each block, row-major.
    pub block_atoms: Vec<usize>,
}

impl SparsityReport {
    pub fn new(image: &str, dictionary: &str, enc: &EncodedImage, psnr_achieved: f64) -> Self {
        let block_atoms: Vec<usize> = enc.blocks.iter().map(|b| b.len()).collect();
        SparsityReport {
            image: image.to_string(),
            dictionary: dictionary.to_string(),
            pixels: enc.header.width * enc.header.height,
            total_atoms: block_atoms.iter().sum(),
            psnr_achieved,
            psnr_target: enc.header.target_psnr,
            block_atoms,
        }
    }

    /// Pixels per selected atom.
    pub fn compression_ratio(&self) -> f64 {
        self.pixels as f64 / self.total_atoms as f64
    }

    /// Number of blocks for each atom count.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &n in &self.block_atoms {
            *h.entry(n).or_insert(0) += 1;
        }
        h
    }

    pub fn row(&self) -> ReportRow {
        ReportRow {
            image: self.image.clone(),
            dictionary: self.dictionary.clone(),
            atoms: self.total_atoms,
            cr: self.compression_ratio(),
            psnr_achieved: self.psnr_achieved,
            psnr_target: self.psnr_target,
        }
    }
}

/// One line of a report CSV. The `dictionary` column also names the
/// thresholding baselines (`dct`, `cdf97`).
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub image: String,
    pub dictionary: String,
    pub atoms: usize,
    pub cr: f64,
    pub psnr_achieved: f64,
    pub psnr_target: f64,
}

pub const REPORT_HEADER: [&str; 6] = ["image", "dictionary", "atoms", "CR", "psnr_achieved", "psnr_target"];

fn fmt_db(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v:.4}")
    }
}

pub fn write_report_csv<W: Write>(rows: &[ReportRow], with_header: bool, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    if with_header {
        w.write_record(REPORT_HEADER)?;
    }
    for r in rows {
        w.write_record([
            r.image.clone(),
            r.dictionary.clone(),
            r.atoms.to_string(),
            format!("{:.4}", r.cr),
            fmt_db(r.psnr_achieved),
            format!("{}", r.psnr_target),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_report_csv<R: Read>(input: R) -> Result<Vec<ReportRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != REPORT_HEADER {
        return Err(Error::Config(format!("unexpected report header: {headers:?}")));
    }
    let mut rows = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let num = |k: usize| -> Result<f64> {
            let field = &record[k];
            if field == "inf" {
                return Ok(f64::INFINITY);
            }
            field.parse().map_err(|_| {
                Error::Config(format!(
                    "report row {}: bad {} value {field:?}",
                    line + 1,
                    REPORT_HEADER[k]
                ))
            })
        };
        rows.push(ReportRow {
            image: record[0].to_string(),
            dictionary: record[1].to_string(),
            atoms: num(2)? as usize,
            cr: num(3)?,
            psnr_achieved: num(4)?,
            psnr_target: num(5)?,
        });
    }
    Ok(rows)
}
