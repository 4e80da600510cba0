//! Discrete 1D cosine / B-spline dictionaries and their tensor product.
//!
//! A [`Dictionary1D`] for blocks of side `L` holds, in this order:
//!
//! 1. `2L` cosine atoms `cos(pi (2j - 1)(i - 1) / (4L))`, `i = 1..=2L`,
//! 2. three B-spline sub-dictionaries of increasing support (1, 3, 5 for
//!    hats; 3, 7, 11 for cubics), each ordered by translation.
//!
//! Every atom has unit Euclidean norm. The 2D dictionary is the tensor
//! product of the 1D dictionary with itself, see [`Dictionary2D`].

mod bspline;
mod tensor;

use std::fmt;
use std::io::Write;

use ndarray::Array2;

use crate::error::{Error, Result};

pub use bspline::{
    build_spline_subdict, eval_bspline, eval_bspline_rational, sample_prototype, Prototype, SplineOrder,
};
pub use tensor::{AtomAddress, Dictionary2D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cosine,
    Spline,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cosine => "cosine",
            Family::Spline => "spline",
        })
    }
}

/// A unit-norm vector of length `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom1D {
    pub values: Vec<f64>,
    pub support_start: usize,
    pub support_len: usize,
    pub family: Family,
    /// Sub-dictionary tag: `0` for cosine atoms, the untruncated prototype
    /// support for spline atoms.
    pub sub_dict: usize,
    /// Index within the sub-dictionary.
    pub label: usize,
}

/// Which spline family joins the redundancy-two cosine atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DictionaryId {
    /// Cosine atoms plus hats of support 1, 3 and 5.
    Dct2xLinear,
    /// Cosine atoms plus cubic splines of support 3, 7 and 11.
    Dct2xCubic,
}

impl DictionaryId {
    pub fn spline_order(self) -> SplineOrder {
        match self {
            DictionaryId::Dct2xLinear => SplineOrder::Linear,
            DictionaryId::Dct2xCubic => SplineOrder::Cubic,
        }
    }

    /// Widest spline support, i.e. the smallest usable block side.
    pub fn max_support(self) -> usize {
        self.spline_order().m() as usize * 3 - 1
    }

    /// Number of 1D atoms for blocks of side `block_len`: `2L` cosines plus
    /// `L + s - 1` translates for each spline support `s`.
    pub fn base_len(self, block_len: usize) -> usize {
        let supports: usize = (1..=3).map(|d| self.spline_order().m() as usize * d - 1).sum();
        5 * block_len + supports - 3
    }

    pub fn code(self) -> u8 {
        match self {
            DictionaryId::Dct2xLinear => 1,
            DictionaryId::Dct2xCubic => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(DictionaryId::Dct2xLinear),
            2 => Some(DictionaryId::Dct2xCubic),
            _ => None,
        }
    }
}

impl fmt::Display for DictionaryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DictionaryId::Dct2xLinear => "dct2_linear",
            DictionaryId::Dct2xCubic => "dct2_cubic",
        })
    }
}

/// Redundant cosine atoms of length `block_len`: `count` frequencies spaced
/// by `pi / (4L)`, each scaled to unit norm. Odd-numbered atoms are the
/// orthonormal DCT-II basis.
pub fn build_cosine_dict(block_len: usize, count: usize) -> Vec<Atom1D> {
    let l = block_len as f64;
    (0..count)
        .map(|i| {
            let mut values: Vec<f64> = (1..=block_len)
                .map(|j| {
                    let arg = std::f64::consts::PI * (2 * j - 1) as f64 * i as f64 / (4.0 * l);
                    arg.cos()
                })
                .collect();
            let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
            values.iter_mut().for_each(|v| *v /= norm);
            Atom1D {
                values,
                support_start: 0,
                support_len: block_len,
                family: Family::Cosine,
                sub_dict: 0,
                label: i,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary1D {
    id: DictionaryId,
    block_len: usize,
    atoms: Vec<Atom1D>,
}

impl Dictionary1D {
    pub fn assemble(id: DictionaryId, block_len: usize) -> Result<Self> {
        if block_len == 0 {
            return Err(Error::Config("block length must be positive".into()));
        }
        let mut atoms = build_cosine_dict(block_len, 2 * block_len);
        for dilation in 1..=3 {
            let proto = sample_prototype(id.spline_order(), dilation)?;
            atoms.extend(build_spline_subdict(&proto, block_len)?);
        }
        Ok(Dictionary1D { id, block_len, atoms })
    }

    pub fn id(&self) -> DictionaryId {
        self.id
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn atoms(&self) -> &[Atom1D] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn redundancy(&self) -> f64 {
        self.atoms.len() as f64 / self.block_len as f64
    }

    /// Atoms stacked as columns of an `L x n` matrix.
    pub fn matrix(&self) -> Array2<f64> {
        Array2::from_shape_fn((self.block_len, self.atoms.len()), |(r, c)| self.atoms[c].values[r])
    }

    /// Debug dump: one row per atom with
    /// `family,sub_dict,label,support_start,support_len,v0,...,v{L-1}`.
    /// Values use Rust's shortest round-trip float formatting.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(out);
        let mut header = vec![
            "family".to_string(),
            "sub_dict".into(),
            "label".into(),
            "support_start".into(),
            "support_len".into(),
        ];
        header.extend((0..self.block_len).map(|j| format!("v{j}")));
        writer.write_record(&header)?;
        for atom in &self.atoms {
            let mut row = vec![
                atom.family.to_string(),
                atom.sub_dict.to_string(),
                atom.label.to_string(),
                atom.support_start.to_string(),
                atom.support_len.to_string(),
            ];
            row.extend(atom.values.iter().map(|v| v.to_string()));
            writer.write_record(&row)?;
        }
        writer.flush()?;
        Ok(())
    }
}
