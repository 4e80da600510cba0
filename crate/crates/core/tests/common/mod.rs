#![allow(dead_code)]

use std::path::PathBuf;

use ndarray::Array2;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sparsedict::codec::ImageGray8;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Standard normal sample via Box-Muller.
pub fn gaussian(rng: &mut StdRng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, scale: f64) -> Array2<f64> {
    Array2::from_shape_fn((rows, cols), |_| scale * gaussian(rng))
}

pub fn random_image(rng: &mut StdRng, width: usize, height: usize) -> ImageGray8 {
    ImageGray8::from_fn(width, height, |_, _| rng.gen())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `m x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            let (top, bottom) = m.split_at_mut(row);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| m[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / m[row][row];
    }
    x
}

/// Least-squares coefficients of `f` on `atoms` from the normal equations.
pub fn normal_equations(atoms: &[Vec<f64>], f: &[f64]) -> Vec<f64> {
    let gram = atoms
        .iter()
        .map(|a| atoms.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs = atoms.iter().map(|a| dot(a, f)).collect();
    solve(gram, rhs)
}

pub fn data_dir() -> PathBuf {
    std::env::var_os("SPARSEDICT_IMAGES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// Standard 512x512 test images present in the data directory.
pub fn standard_images() -> Vec<(String, ImageGray8)> {
    ["boat", "bridge", "lena", "mandrill", "peppers"]
        .iter()
        .filter_map(|name| {
            let path = data_dir().join(format!("{name}.pgm"));
            path.exists().then(|| {
                (
                    name.to_string(),
                    ImageGray8::read_pgm(&path).expect("readable test image"),
                )
            })
        })
        .collect()
}
