//! Block DCT and CDF 9/7 thresholding at a PSNR target.
//!
//! `cargo run --release --example baselines -- [image.pgm] [target_db]`

use sparsedict::baselines::{run_baseline, TransformKind, DEFAULT_LEVELS};
use sparsedict::codec::ImageGray8;

fn main() -> sparsedict::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/lena.pgm").into());
    let target: f64 = args.next().map_or(40.0, |v| v.parse().expect("target PSNR"));

    let img = ImageGray8::read_pgm(&path)?;
    let pixels = (img.width() * img.height()) as f64;
    for kind in [
        TransformKind::BlockDct { block_len: 16 },
        TransformKind::Cdf97 { levels: DEFAULT_LEVELS },
    ] {
        let r = run_baseline(&img, kind, target)?;
        println!(
            "{:>6}: kept {:>6}, CR {:.3}, PSNR {:.3} dB",
            kind.label(),
            r.kept,
            pixels / r.kept as f64,
            r.psnr
        );
    }
    Ok(())
}
