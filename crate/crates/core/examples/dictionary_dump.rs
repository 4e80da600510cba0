//! Builds both 1D dictionaries and writes them as CSV.
//!
//! `cargo run --example dictionary_dump -- [out_dir] [block_len]`

use std::fs::File;
use std::path::PathBuf;

use sparsedict::dictionary::{Dictionary1D, DictionaryId, Family};

fn main() -> sparsedict::Result<()> {
    let mut args = std::env::args().skip(1);
    let out_dir = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));
    let block_len: usize = args.next().map_or(16, |s| s.parse().expect("block length"));
    std::fs::create_dir_all(&out_dir)?;

    for id in [DictionaryId::Dct2xLinear, DictionaryId::Dct2xCubic] {
        let dict = Dictionary1D::assemble(id, block_len)?;
        let cosine = dict.atoms().iter().filter(|a| a.family == Family::Cosine).count();
        let path = out_dir.join(format!("{id}_{block_len}.csv"));
        dict.write_csv(File::create(&path)?)?;
        println!(
            "{id}: {} atoms ({cosine} cosine, {} spline), redundancy {:.3}, 2D size {} -> {}",
            dict.len(),
            dict.len() - cosine,
            dict.redundancy(),
            dict.len() * dict.len(),
            path.display()
        );
    }
    Ok(())
}
