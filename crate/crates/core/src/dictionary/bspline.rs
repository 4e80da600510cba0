//! Cardinal B-splines and their sampled, translated prototypes.

use crate::error::{Error, Result};

use super::{Atom1D, Family};

/// Order of a cardinal B-spline. Only linear (hat) and cubic splines are
/// used to build dictionaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplineOrder {
    Linear,
    Cubic,
}

impl SplineOrder {
    pub fn new(m: u32) -> Result<Self> {
        match m {
            2 => Ok(SplineOrder::Linear),
            4 => Ok(SplineOrder::Cubic),
            other => Err(Error::UnsupportedOrder(other)),
        }
    }

    /// The order `m`; the polynomial degree is `m - 1`.
    pub fn m(self) -> u32 {
        match self {
            SplineOrder::Linear => 2,
            SplineOrder::Cubic => 4,
        }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Cardinal B-spline of order `m` on the knots `0, 1, ..., m`, evaluated
/// with the truncated power sum
///
/// ```text
/// B_m(x) = 1/(m-1)! * sum_{i=0}^{m} (-1)^i C(m, i) (x - i)_+^{m-1}
/// ```
///
/// normalized so that integer translates sum to one (`B_2(1) = 1`).
/// Outside the open support `(0, m)` the result is exactly zero.
pub fn eval_bspline(order: SplineOrder, x: f64) -> f64 {
    let m = order.m();
    if x <= 0.0 || x >= f64::from(m) {
        return 0.0;
    }
    // Evaluate on the left half of the symmetric support, where the sum has
    // fewer and smaller terms to cancel.
    let half = f64::from(m) / 2.0;
    let x = if x > half { f64::from(m) - x } else { x };
    let mut sum = 0.0;
    for i in 0..=m {
        let shifted = x - f64::from(i);
        if shifted > 0.0 {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binomial(m, i) * shifted.powi(m as i32 - 1);
        }
    }
    sum / factorial(m - 1)
}

/// `B_m(num / den)` for integers `num >= 0`, `den >= 1`, using the same
/// truncated power sum scaled by `den^(m-1)` so that every term is an
/// integer. Only the final division rounds.
pub fn eval_bspline_rational(order: SplineOrder, num: i64, den: i64) -> f64 {
    let m = i64::from(order.m());
    if num <= 0 || num >= m * den {
        return 0.0;
    }
    let mut sum: i64 = 0;
    let mut binom: i64 = 1;
    for i in 0..=m {
        let shifted = num - i * den;
        if shifted > 0 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sum += sign * binom * shifted.pow(order.m() - 1);
        }
        binom = binom * (m - i) / (i + 1);
    }
    sum as f64 / (factorial(order.m() - 1) * (den as f64).powi(order.m() as i32 - 1))
}

/// Nonzero samples of a dilated B-spline `x -> B_m(x / dilation)` taken at
/// the integer points `1 ..= m * dilation - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prototype {
    pub order: SplineOrder,
    pub dilation: usize,
    pub values: Vec<f64>,
}

impl Prototype {
    /// Number of nonzero samples: 1, 3, 5 for hats and 3, 7, 11 for cubics.
    pub fn support(&self) -> usize {
        self.values.len()
    }
}

pub fn sample_prototype(order: SplineOrder, dilation: usize) -> Result<Prototype> {
    if !(1..=3).contains(&dilation) {
        return Err(Error::UnsupportedDilation(dilation));
    }
    let last = order.m() as usize * dilation - 1;
    let values = (1..=last)
        .map(|t| eval_bspline_rational(order, t as i64, dilation as i64))
        .collect();
    Ok(Prototype {
        order,
        dilation,
        values,
    })
}

/// Translates `proto` one sample at a time across a window of `block_len`
/// positions, keeping every translate whose nonzero samples touch the
/// window (cut-off boundary). Samples falling outside are dropped and each
/// atom is renormalized, giving `block_len + support - 1` atoms.
pub fn build_spline_subdict(proto: &Prototype, block_len: usize) -> Result<Vec<Atom1D>> {
    let support = proto.support();
    if block_len < support {
        return Err(Error::BlockTooSmall {
            block: block_len,
            support,
        });
    }
    let len = block_len as isize;
    let span = support as isize;
    let mut atoms = Vec::with_capacity(block_len + support - 1);
    for (label, shift) in (1 - span..len).enumerate() {
        let start = shift.max(0);
        let end = (shift + span).min(len);
        let mut values = vec![0.0; block_len];
        for pos in start..end {
            values[pos as usize] = proto.values[(pos - shift) as usize];
        }
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        values.iter_mut().for_each(|v| *v /= norm);
        atoms.push(Atom1D {
            values,
            support_start: start as usize,
            support_len: (end - start) as usize,
            family: Family::Spline,
            sub_dict: proto.support(),
            label,
        });
    }
    Ok(atoms)
}
