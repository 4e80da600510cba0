use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sparsedict::codec::ImageGray8;
use tempfile::TempDir;

fn sparsedict(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparsedict"))
        .args(args)
        .output()
        .unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn write_image(dir: &Path, name: &str, seed: u64) -> PathBuf {
    let img = ImageGray8::from_fn(32, 32, |r, c| {
        let v = 100.0 + 2.0 * c as f64 + 40.0 * ((r as f64 + seed as f64) * 0.4).sin();
        v.clamp(0.0, 255.0) as u8
    });
    let path = dir.join(format!("{name}.pgm"));
    img.write_pgm(&path).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn encode_then_decode() {
    let dir = TempDir::new().unwrap();
    let input = write_image(dir.path(), "wave", 0);
    let out = sparsedict(&["encode", s(&input), "--method", "omp_cubic", "--trace"]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next(),
        Some("image,dictionary,atoms,CR,psnr_achieved,psnr_target")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..2], ["wave", "dct2_cubic"]);
    assert_eq!(row[5], "40");
    let sic = dir.path().join("wave.sic");
    assert!(sic.exists());
    let trace = std::fs::read_to_string(dir.path().join("wave.trace.csv")).unwrap();
    assert!(trace.starts_with("block,k,row_atom,col_atom,abs_correlation,residual_sse"));
    assert_eq!(trace.lines().count(), 1 + row[2].parse::<usize>().unwrap());

    let decoded = dir.path().join("back.pgm");
    let out = sparsedict(&["decode", s(&sic), "--out", s(&decoded), "--original", s(&input)]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let psnr_line = text(&out.stdout)
        .lines()
        .find(|l| l.starts_with("psnr"))
        .unwrap()
        .to_string();
    let db: f64 = psnr_line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(db >= 40.0, "{psnr_line}");
    let back = ImageGray8::read_pgm(&decoded).unwrap();
    assert_eq!((back.width(), back.height()), (32, 32));
}

#[test]
fn decode_without_original_skips_psnr() {
    let dir = TempDir::new().unwrap();
    let input = write_image(dir.path(), "plain", 1);
    assert!(sparsedict(&["encode", s(&input)]).status.success());
    let out = sparsedict(&["decode", s(&dir.path().join("plain.sic"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!text(&out.stdout).contains("psnr"));
    assert!(dir.path().join("plain.pgm").exists());
}

#[test]
fn block_smaller_than_support_is_rejected() {
    let dir = TempDir::new().unwrap();
    let input = write_image(dir.path(), "small", 2);
    let out = sparsedict(&["encode", s(&input), "--method", "omp_cubic", "--block", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("atom support 11 of dct2_cubic exceeds block size 4"));
}

#[test]
fn truncated_container_reports_offset() {
    let dir = TempDir::new().unwrap();
    let input = write_image(dir.path(), "cut", 3);
    assert!(sparsedict(&["encode", s(&input)]).status.success());
    let sic = dir.path().join("cut.sic");
    let bytes = std::fs::read(&sic).unwrap();
    std::fs::write(&sic, &bytes[..bytes.len() - 5]).unwrap();
    let out = sparsedict(&["decode", s(&sic)]);
    assert_eq!(out.status.code(), Some(2));
    let err = text(&out.stderr);
    assert!(err.contains("corrupt container"), "{err}");
    // The last entry's address is intact, its coefficient is cut.
    assert!(err.contains(&format!("byte offset {}", bytes.len() - 8)), "{err}");
}

#[test]
fn missing_input_is_an_io_error() {
    let out = sparsedict(&["encode", "/nonexistent/x.pgm"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("/nonexistent/x.pgm"));
}

#[test]
fn batch_rows_follow_input_order() {
    let dir = TempDir::new().unwrap();
    let names = ["zeta", "alpha", "mid", "beta"];
    let paths: Vec<PathBuf> = names
        .iter()
        .enumerate()
        .map(|(i, n)| write_image(dir.path(), n, i as u64))
        .collect();
    let mut args = vec!["encode", "--method", "dct", "--workers", "4"];
    args.extend(paths.iter().map(|p| s(p)));
    let out = sparsedict(&args);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let order: Vec<String> = text(&out.stdout)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(order, names);
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let input = write_image(dir.path(), "same", 4);
    let mut outputs = Vec::new();
    for workers in ["1", "3"] {
        let sub = dir.path().join(workers);
        let out = sparsedict(&["encode", s(&input), "--workers", workers, "--out", s(&sub)]);
        assert!(out.status.success());
        outputs.push((text(&out.stdout), std::fs::read(sub.join("same.sic")).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn table_merges_reports() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.csv");
    std::fs::write(
        &report,
        "image,dictionary,atoms,CR,psnr_achieved,psnr_target\n\
         lena,dct2_linear,23131,11.3330,40.2530,40\n\
         lena,dct,40318,6.5020,40.0100,40\n\
         flat,dct,1,262144.0000,inf,40\n",
    )
    .unwrap();
    let csv_out = dir.path().join("table.csv");
    let out = sparsedict(&["table", s(&report), "--paper", "--out", s(&csv_out)]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert_eq!(
        text(&out.stdout),
        "compression ratio at 40 dB PSNR\n\
         image        dct2_linear         dct\n\
         lena               11.33        6.50\n\
         \x20 published        11.78        6.50\n\
         \x20 ratio            0.962       1.000\n\
         flat                   -   262144.00\n"
    );
    assert_eq!(
        std::fs::read_to_string(&csv_out).unwrap(),
        "image,dct2_linear,dct\nlena,11.3330,6.5020\nflat,,262144.0000\n"
    );
}

#[test]
fn table_rejects_mixed_targets() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("mixed.csv");
    std::fs::write(
        &report,
        "image,dictionary,atoms,CR,psnr_achieved,psnr_target\na,dct,10,2.0,40.1,40\nb,dct,10,2.0,35.1,35\n",
    )
    .unwrap();
    let out = sparsedict(&["table", s(&report)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("inconsistent PSNR targets"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(sparsedict(&["--help"]).status.code(), Some(0));
    assert_eq!(sparsedict(&["frobnicate"]).status.code(), Some(1));
}
