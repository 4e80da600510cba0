//! Encodes an image, saves the container, decodes it back and prints the
//! per-block atom histogram.
//!
//! `cargo run --release --example encode_image -- [image.pgm] [target_db]`

use sparsedict::codec::{decode, encode, psnr, EncodedImage, ImageGray8};
use sparsedict::dictionary::{Dictionary2D, DictionaryId};

fn main() -> sparsedict::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/lena.pgm").into());
    let target: f64 = args.next().map_or(40.0, |v| v.parse().expect("target PSNR"));

    let img = ImageGray8::read_pgm(&path)?;
    let dict = Dictionary2D::assemble(DictionaryId::Dct2xLinear, 16)?;
    let enc = encode(&img, "image", &dict, target, false)?;
    let r = &enc.report;
    println!(
        "{}x{}: {} atoms, CR {:.3}, PSNR {:.3} dB",
        img.width(),
        img.height(),
        r.total_atoms,
        r.compression_ratio(),
        r.psnr_achieved
    );

    let bytes = enc.image.to_bytes()?;
    let out = std::env::temp_dir().join("encode_image.sic");
    std::fs::write(&out, &bytes)?;
    let back = EncodedImage::from_bytes(&std::fs::read(&out)?)?;
    let decoded = decode(&back, &dict)?;
    println!(
        "{} bytes in {}, decoded PSNR {:.3} dB",
        bytes.len(),
        out.display(),
        psnr(&img, &decoded)?
    );

    println!("atoms per block:");
    for (atoms, blocks) in r.histogram() {
        println!("  {atoms:>3}: {blocks}");
    }
    Ok(())
}
