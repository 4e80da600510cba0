//! Library side of the `sparsedict` command: batch encoding, decoding and
//! report tables. The binary only parses arguments and maps errors to exit
//! codes.

use std::fmt::Write as _;
use std::fs::{self, OpenOptions};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rayon::prelude::*;

use crate::baselines::{run_baseline, TransformKind, DEFAULT_LEVELS};
use crate::codec::{
    self, psnr, read_report_csv, write_report_csv, write_trace_csv, EncodedImage, ImageGray8, ReportRow,
};
use crate::dictionary::{Dictionary2D, DictionaryId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Method {
    OmpLinear,
    OmpCubic,
    Dct,
    Cdf97,
}

impl Method {
    pub fn dictionary(self) -> Option<DictionaryId> {
        match self {
            Method::OmpLinear => Some(DictionaryId::Dct2xLinear),
            Method::OmpCubic => Some(DictionaryId::Dct2xCubic),
            _ => None,
        }
    }

    /// Value of the report's `dictionary` column.
    pub fn label(self) -> String {
        match self {
            Method::OmpLinear | Method::OmpCubic => self.dictionary().unwrap().to_string(),
            Method::Dct => "dct".into(),
            Method::Cdf97 => "cdf97".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub method: Method,
    pub block_size: usize,
    pub target_psnr: f64,
    pub levels: usize,
    /// Directory for `.sic` and trace files; defaults to each input's
    /// directory.
    pub out_dir: Option<PathBuf>,
    /// Report CSV, appended to.
    pub report: Option<PathBuf>,
    /// Worker threads; 0 picks one per core.
    pub workers: usize,
    pub trace: bool,
}

impl RunConfig {
    pub fn new(method: Method, inputs: Vec<PathBuf>) -> Self {
        RunConfig {
            inputs,
            method,
            block_size: 16,
            target_psnr: 40.0,
            levels: DEFAULT_LEVELS,
            out_dir: None,
            report: None,
            workers: 0,
            trace: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_psnr.is_nan() || self.target_psnr <= 0.0 {
            return Err(Error::Config(format!(
                "target PSNR must be positive, got {}",
                self.target_psnr
            )));
        }
        if self.block_size == 0 {
            return Err(Error::Config("block size must be positive".into()));
        }
        if let Some(id) = self.method.dictionary() {
            if self.block_size < id.max_support() {
                return Err(Error::Config(format!(
                    "atom support {} of {} exceeds block size {}",
                    id.max_support(),
                    id,
                    self.block_size
                )));
            }
            if self.block_size * self.block_size > u16::MAX as usize {
                return Err(Error::Config(format!("block size {} is too large", self.block_size)));
            }
        }
        if self.method == Method::Cdf97 && self.levels == 0 {
            return Err(Error::Config("wavelet levels must be at least 1".into()));
        }
        Ok(())
    }

    fn output_path(&self, input: &Path, suffix: &str) -> PathBuf {
        let stem = input.file_stem().unwrap_or_default().to_string_lossy();
        let dir = match &self.out_dir {
            Some(d) => d.clone(),
            None => input.parent().map(Path::to_path_buf).unwrap_or_default(),
        };
        dir.join(format!("{stem}{suffix}"))
    }
}

pub fn image_name(path: &Path) -> String {
    path.file_stem().unwrap_or_default().to_string_lossy().into_owned()
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
}

fn encode_one(config: &RunConfig, dict: Option<&Dictionary2D>, input: &Path) -> Result<ReportRow> {
    let img = ImageGray8::read_pgm(input)?;
    let name = image_name(input);
    let in_file = |e: Error| e.in_file(input);
    match dict {
        Some(dict) => {
            let enc = codec::encode(&img, &name, dict, config.target_psnr, config.trace).map_err(in_file)?;
            let sic = config.output_path(input, ".sic");
            fs::write(&sic, enc.image.to_bytes()?).map_err(|e| Error::from(e).in_file(&sic))?;
            if config.trace {
                let path = config.output_path(input, ".trace.csv");
                let file = fs::File::create(&path).map_err(|e| Error::from(e).in_file(&path))?;
                write_trace_csv(&enc.trace, file)?;
            }
            Ok(enc.report.row())
        }
        None => {
            let kind = match config.method {
                Method::Dct => TransformKind::BlockDct {
                    block_len: config.block_size,
                },
                _ => TransformKind::Cdf97 { levels: config.levels },
            };
            let r = run_baseline(&img, kind, config.target_psnr).map_err(in_file)?;
            let pixels = img.width() * img.height();
            Ok(ReportRow {
                image: name,
                dictionary: config.method.label(),
                atoms: r.kept,
                cr: pixels as f64 / r.kept as f64,
                psnr_achieved: r.psnr,
                psnr_target: config.target_psnr,
            })
        }
    }
}

/// Encodes every input, writes `.sic` files for the OMP methods, appends
/// report rows and returns them in input order.
pub fn cmd_encode(config: &RunConfig) -> Result<Vec<ReportRow>> {
    config.validate()?;
    let dict = config
        .method
        .dictionary()
        .map(|id| Dictionary2D::assemble(id, config.block_size))
        .transpose()?;
    if let Some(dir) = &config.out_dir {
        fs::create_dir_all(dir).map_err(|e| Error::from(e).in_file(dir))?;
    }
    let rows: Vec<ReportRow> = pool(config.workers)?.install(|| {
        config
            .inputs
            .par_iter()
            .map(|input| encode_one(config, dict.as_ref(), input))
            .collect::<Result<_>>()
    })?;
    if let Some(path) = &config.report {
        append_report(path, &rows)?;
    }
    Ok(rows)
}

pub fn append_report(path: &Path, rows: &[ReportRow]) -> Result<()> {
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::from(e).in_file(path))?;
    write_report_csv(rows, fresh, file).map_err(|e| e.in_file(path))
}

#[derive(Debug, Clone)]
pub struct DecodeConfig {
    pub input: PathBuf,
    /// Defaults to the input with a `.pgm` extension.
    pub output: Option<PathBuf>,
    pub original: Option<PathBuf>,
    /// When given, must agree with the container's dictionary.
    pub method: Option<Method>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeSummary {
    pub output: PathBuf,
    /// PSNR of the real-valued reconstruction.
    pub psnr: Option<f64>,
    /// PSNR of the written 8-bit image.
    pub psnr_8bit: Option<f64>,
}

pub fn cmd_decode(config: &DecodeConfig) -> Result<DecodeSummary> {
    let bytes = fs::read(&config.input).map_err(|e| Error::from(e).in_file(&config.input))?;
    let enc = EncodedImage::from_bytes(&bytes).map_err(|e| e.in_file(&config.input))?;
    if let Some(method) = config.method {
        if method.dictionary() != Some(enc.header.dictionary) {
            return Err(Error::DictionaryMismatch(format!(
                "{} was encoded with {}, not {}",
                config.input.display(),
                enc.header.dictionary,
                method.label()
            )));
        }
    }
    let dict = Dictionary2D::assemble(enc.header.dictionary, enc.header.block_size)?;
    let real = codec::decode(&enc, &dict)?;
    let bytes_img = ImageGray8::from_real(&real);
    let output = config
        .output
        .clone()
        .unwrap_or_else(|| config.input.with_extension("pgm"));
    bytes_img.write_pgm(&output)?;

    let (mut p, mut p8) = (None, None);
    if let Some(orig) = &config.original {
        let original = ImageGray8::read_pgm(orig)?;
        p = Some(psnr(&original, &real).map_err(|e| e.in_file(orig))?);
        p8 = Some(psnr(&original, &bytes_img.to_real())?);
    }
    Ok(DecodeSummary {
        output,
        psnr: p,
        psnr_8bit: p8,
    })
}

/// Published compression ratios at 40 dB PSNR for the standard test
/// images, columns in [`TABLE_COLUMNS`] order.
pub const PUBLISHED_RATIOS: [(&str, [f64; 4]); 6] = [
    ("Boat", [7.05, 6.89, 3.63, 3.65]),
    ("Bridge", [4.24, 3.97, 2.06, 2.2]),
    ("Film", [9.72, 9.26, 4.53, 4.8]),
    ("Lena", [11.78, 11.7, 6.5, 6.97]),
    ("Mandril", [3.72, 3.5, 1.91, 1.90]),
    ("Peppers", [8.9, 8.62, 4.36, 3.39]),
];

pub const TABLE_COLUMNS: [&str; 4] = ["dct2_linear", "dct2_cubic", "dct", "cdf97"];

/// Published row for an image file name, accepting common spellings.
pub fn published_row(image: &str) -> Option<[f64; 4]> {
    let key = image.to_ascii_lowercase();
    let key = match key.as_str() {
        "mandrill" | "baboon" => "mandril",
        "film_clip" | "filmclip" | "film clip" => "film",
        "lenna" => "lena",
        other => other,
    };
    PUBLISHED_RATIOS
        .iter()
        .find(|(name, _)| name.to_ascii_lowercase() == key)
        .map(|(_, row)| *row)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    /// `(image, CR per column)`, in first-seen image order.
    pub rows: Vec<(String, Vec<Option<f64>>)>,
    pub psnr_target: f64,
}

impl Table {
    pub fn from_rows(report_rows: &[ReportRow]) -> Result<Self> {
        let first = report_rows
            .first()
            .ok_or_else(|| Error::Config("no report rows".into()))?;
        let target = first.psnr_target;
        if let Some(bad) = report_rows.iter().find(|r| r.psnr_target != target) {
            return Err(Error::Config(format!(
                "inconsistent PSNR targets: {} dB and {} dB",
                target, bad.psnr_target
            )));
        }
        let mut columns: Vec<String> = TABLE_COLUMNS
            .iter()
            .filter(|c| report_rows.iter().any(|r| r.dictionary == **c))
            .map(|c| c.to_string())
            .collect();
        for r in report_rows {
            if !columns.contains(&r.dictionary) {
                columns.push(r.dictionary.clone());
            }
        }
        let mut rows: Vec<(String, Vec<Option<f64>>)> = Vec::new();
        for r in report_rows {
            let col = columns.iter().position(|c| *c == r.dictionary).unwrap();
            let idx = match rows.iter().position(|(name, _)| *name == r.image) {
                Some(i) => i,
                None => {
                    rows.push((r.image.clone(), vec![None; columns.len()]));
                    rows.len() - 1
                }
            };
            rows[idx].1[col] = Some(r.cr);
        }
        Ok(Table {
            columns,
            rows,
            psnr_target: target,
        })
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["image".to_string()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header)?;
        for (image, values) in &self.rows {
            let mut rec = vec![image.clone()];
            rec.extend(values.iter().map(|v| v.map(|x| format!("{x:.4}")).unwrap_or_default()));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Fixed-width text table. With `published`, each image known to the
    /// published table gets two extra lines: the published values and the
    /// measured / published ratios.
    pub fn render(&self, published: bool) -> String {
        let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0).max(10);
        let name_w = self.rows.iter().map(|(n, _)| n.len() + 2).max().unwrap_or(0).max(12);
        let mut out = String::new();
        let _ = writeln!(out, "compression ratio at {} dB PSNR", self.psnr_target);
        let _ = write!(out, "{:<name_w$}", "image");
        for c in &self.columns {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
        let cell = |v: Option<f64>| v.map(|x| format!("{x:.2}")).unwrap_or_else(|| "-".into());
        for (image, values) in &self.rows {
            let _ = write!(out, "{image:<name_w$}");
            for v in values {
                let _ = write!(out, " {:>width$}", cell(*v));
            }
            out.push('\n');
            if !published {
                continue;
            }
            let Some(reference) = published_row(image) else {
                continue;
            };
            let lookup = |c: &str| TABLE_COLUMNS.iter().position(|t| *t == c).map(|k| reference[k]);
            let _ = write!(out, "{:<name_w$}", "  published");
            for c in &self.columns {
                let _ = write!(out, " {:>width$}", cell(lookup(c)));
            }
            out.push('\n');
            let _ = write!(out, "{:<name_w$}", "  ratio");
            for (c, v) in self.columns.iter().zip(values) {
                let ratio = match (v, lookup(c)) {
                    (Some(m), Some(p)) => Some(m / p),
                    _ => None,
                };
                let _ = write!(
                    out,
                    " {:>width$}",
                    ratio.map(|r| format!("{r:.3}")).unwrap_or_else(|| "-".into())
                );
            }
            out.push('\n');
        }
        out
    }
}

/// Merges report CSVs into a table, rows are images and columns methods.
pub fn cmd_table(reports: &[PathBuf]) -> Result<Table> {
    if reports.is_empty() {
        return Err(Error::Config("at least one report is required".into()));
    }
    let mut rows = Vec::new();
    for path in reports {
        let file = fs::File::open(path).map_err(|e| Error::from(e).in_file(path))?;
        rows.extend(read_report_csv(file).map_err(|e| e.in_file(path))?);
    }
    Table::from_rows(&rows)
}
