mod common;

use common::{dot, gaussian, normal_equations, rng};
use proptest::prelude::*;
use sparsedict::dictionary::{AtomAddress, Dictionary2D, DictionaryId};
use sparsedict::pursuit::{run_omp, AtomSet, DenseDictionary, StopReason, StoppingRule};

fn linear16() -> Dictionary2D {
    Dictionary2D::assemble(DictionaryId::Dct2xLinear, 16).unwrap()
}

fn flat_atom(dict: &Dictionary2D, row: usize, col: usize) -> Vec<f64> {
    let mut out = vec![0.0; dict.signal_len()];
    dict.write_atom(dict.flat_index(AtomAddress::new(row, col)), &mut out);
    out
}

#[test]
fn single_atom_residual_selects_that_atom() {
    let dict = linear16();
    let f = flat_atom(&dict, 5, 2);
    let out = run_omp(&f, &dict, &StoppingRule::max_atoms(1), true).unwrap();
    assert_eq!(dict.address(out.entries[0].0), AtomAddress::new(5, 2));
    assert!((out.trace[0].correlation - 1.0).abs() < 1e-12);
}

#[test]
fn scaled_atom_needs_one_selection() {
    let dict = linear16();
    let f: Vec<f64> = flat_atom(&dict, 2, 9).iter().map(|v| 3.7 * v).collect();
    let out = run_omp(&f, &dict, &StoppingRule::target_sse(1e-18), false).unwrap();
    assert_eq!(out.entries.len(), 1);
    assert_eq!(dict.address(out.entries[0].0), AtomAddress::new(2, 9));
    assert!((out.entries[0].1 - 3.7).abs() < 1e-12);
    assert_eq!(out.stop, StopReason::Threshold);
}

#[test]
fn three_orthogonal_atoms_are_recovered() {
    let dict = linear16();
    // Even cosine indices form the orthonormal DCT-II basis.
    let parts = [((0, 2), 9.0), ((4, 6), -5.0), ((10, 14), 2.5)];
    let mut f = vec![0.0; 256];
    for &((r, c), w) in &parts {
        for (fi, a) in f.iter_mut().zip(flat_atom(&dict, r, c)) {
            *fi += w * a;
        }
    }
    let out = run_omp(&f, &dict, &StoppingRule::target_sse(1e-18), false).unwrap();
    assert_eq!(out.entries.len(), 3);
    for (&(idx, coeff), &((r, c), w)) in out.entries.iter().zip(&parts) {
        assert_eq!(dict.address(idx), AtomAddress::new(r, c));
        assert!((coeff - w).abs() < 1e-12);
    }
}

#[test]
fn full_span_keeps_basis_orthonormal() {
    let dict = linear16();
    let mut g = rng(7);
    let f: Vec<f64> = (0..256).map(|_| 50.0 * gaussian(&mut g)).collect();
    let out = run_omp(&f, &dict, &StoppingRule::max_atoms(256), false).unwrap();
    assert_eq!(out.entries.len(), 256);
    let q = out.state.orthonormal_basis();
    let mut worst: f64 = 0.0;
    for i in 0..q.len() {
        for j in 0..=i {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot(&q[i], &q[j]) - target).abs());
        }
    }
    assert!(worst < 1e-10, "Gram deviation {worst:e}");
    let energy: f64 = f.iter().map(|v| v * v).sum();
    assert!(out.residual_sse < 1e-18 * energy, "{}", out.residual_sse);
}

#[test]
fn residual_is_orthogonal_to_selection() {
    let dict = linear16();
    let mut g = rng(11);
    let f: Vec<f64> = (0..256).map(|_| 128.0 + 30.0 * gaussian(&mut g)).collect();
    let out = run_omp(&f, &dict, &StoppingRule::max_atoms(40), false).unwrap();
    let atoms: Vec<Vec<f64>> = out
        .entries
        .iter()
        .map(|&(i, _)| {
            let mut a = vec![0.0; 256];
            dict.write_atom(i, &mut a);
            a
        })
        .collect();
    let scale = out.residual_norm();
    for a in &atoms {
        assert!(dot(a, out.state.residual()).abs() < 1e-10 * scale.max(1.0));
    }
    let oracle = normal_equations(&atoms, &f);
    for ((_, c), o) in out.entries.iter().zip(&oracle) {
        assert!((c - o).abs() < 1e-7 * o.abs().max(1.0), "{c} vs {o}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn repeated_runs_are_identical(seed in any::<u64>(), cap in 1usize..=10) {
        let mut g = rng(seed);
        let atoms: Vec<Vec<f64>> = (0..24)
            .map(|_| {
                let a: Vec<f64> = (0..10).map(|_| gaussian(&mut g)).collect();
                let n = dot(&a, &a).sqrt();
                a.into_iter().map(|v| v / n).collect()
            })
            .collect();
        let dict = DenseDictionary::new(atoms).unwrap();
        let f: Vec<f64> = (0..10).map(|_| gaussian(&mut g)).collect();
        let a = run_omp(&f, &dict, &StoppingRule::max_atoms(cap), true).unwrap();
        let b = run_omp(&f, &dict, &StoppingRule::max_atoms(cap), true).unwrap();
        prop_assert_eq!(&a.entries, &b.entries);
        prop_assert_eq!(a.residual_sse.to_bits(), b.residual_sse.to_bits());
        prop_assert_eq!(&a.trace, &b.trace);
        let mut last = f64::INFINITY;
        for row in &b.trace {
            prop_assert!(row.residual_sse <= last * (1.0 + 1e-12));
            last = row.residual_sse;
        }
    }
}
