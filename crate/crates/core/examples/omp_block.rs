//! Runs the pursuit on one 16x16 block and prints every iteration.
//!
//! `cargo run --release --example omp_block -- [image.pgm] [block_row] [block_col]`

use ndarray::s;
use sparsedict::codec::{psnr_to_block_sse, ImageGray8};
use sparsedict::dictionary::{Dictionary2D, DictionaryId};
use sparsedict::pursuit::{run_omp, StoppingRule};

fn main() -> sparsedict::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/lena.pgm").into());
    let br: usize = args.next().map_or(16, |v| v.parse().expect("block row"));
    let bc: usize = args.next().map_or(16, |v| v.parse().expect("block column"));

    let img = ImageGray8::read_pgm(&path)?.to_real();
    let block = img.slice(s![br * 16..(br + 1) * 16, bc * 16..(bc + 1) * 16]);
    let signal: Vec<f64> = block.iter().copied().collect();

    for id in [DictionaryId::Dct2xLinear, DictionaryId::Dct2xCubic] {
        let dict = Dictionary2D::assemble(id, 16)?;
        let threshold = psnr_to_block_sse(40.0, 16);
        let out = run_omp(&signal, &dict, &StoppingRule::target_sse(threshold), true)?;
        println!("{id}, block ({br}, {bc}), SSE threshold {threshold:.2}");
        println!("  k  row  col  |corr|        SSE");
        for t in &out.trace {
            let a = dict.address(t.index);
            println!(
                "{:>3} {:>4} {:>4} {:>8.3} {:>10.2}",
                t.iteration, a.row, a.col, t.correlation, t.residual_sse
            );
        }
        println!("  {} atoms, stop {:?}\n", out.entries.len(), out.stop);
    }
    Ok(())
}
