//! Compression ratios of all four methods on every standard image found in
//! `data/`, next to the published values.
//!
//! `cargo run --release --example table_one -- [data_dir]`

use std::path::PathBuf;

use sparsedict::baselines::{run_baseline, TransformKind, DEFAULT_LEVELS};
use sparsedict::cli::Table;
use sparsedict::codec::{encode, ImageGray8, ReportRow};
use sparsedict::dictionary::{Dictionary2D, DictionaryId};

fn main() -> sparsedict::Result<()> {
    let dir = std::env::args().nth(1).map_or_else(
        || PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data")),
        PathBuf::from,
    );
    let dicts = [
        Dictionary2D::assemble(DictionaryId::Dct2xLinear, 16)?,
        Dictionary2D::assemble(DictionaryId::Dct2xCubic, 16)?,
    ];
    let mut rows = Vec::new();
    for name in ["boat", "bridge", "film", "lena", "mandrill", "peppers"] {
        let path = dir.join(format!("{name}.pgm"));
        if !path.exists() {
            continue;
        }
        let img = ImageGray8::read_pgm(&path)?;
        let pixels = (img.width() * img.height()) as f64;
        for dict in &dicts {
            rows.push(encode(&img, name, dict, 40.0, false)?.report.row());
        }
        for kind in [
            TransformKind::BlockDct { block_len: 16 },
            TransformKind::Cdf97 { levels: DEFAULT_LEVELS },
        ] {
            let r = run_baseline(&img, kind, 40.0)?;
            rows.push(ReportRow {
                image: name.to_string(),
                dictionary: kind.label().to_string(),
                atoms: r.kept,
                cr: pixels / r.kept as f64,
                psnr_achieved: r.psnr,
                psnr_target: 40.0,
            });
        }
    }
    if rows.is_empty() {
        eprintln!("no standard images in {}", dir.display());
        return Ok(());
    }
    print!("{}", Table::from_rows(&rows)?.render(true));
    Ok(())
}
