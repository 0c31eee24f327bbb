//! The localized Cartan ring: polynomials in `θ_1 .. θ_n` over products of
//! affine-linear factors.

mod frac;
mod linear;
mod poly;

pub use frac::{linear_parts, parse_rational, CoeffFrac};
pub use linear::{LinearFactor, Normalized};
pub use poly::{int, rat, Exp, ThetaPoly};

use crate::error::{Error, Result};

/// The named coefficient functions of the relation set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedFactor {
    A,
    APrime,
    B,
    BPrime,
    CPrime,
}

impl NamedFactor {
    /// `(a, b)` such that the factor is `(θ_ij + a)/(θ_ij + b)`.
    fn offsets(self) -> (i64, i64) {
        match self {
            NamedFactor::A => (0, -1),
            NamedFactor::APrime => (-1, 0),
            NamedFactor::B => (-1, -2),
            NamedFactor::BPrime => (-2, -1),
            NamedFactor::CPrime => (-3, -2),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "A" => NamedFactor::A,
            "A'" | "Ap" => NamedFactor::APrime,
            "B" => NamedFactor::B,
            "B'" | "Bp" => NamedFactor::BPrime,
            "C'" | "Cp" => NamedFactor::CPrime,
            _ => return None,
        })
    }
}

/// `(θ_ij + a)/(θ_ij + b)`.
pub fn diff_ratio(n: usize, i: usize, j: usize, a: i64, b: i64) -> CoeffFrac {
    CoeffFrac::theta_diff(n, i, j, a).mul(&CoeffFrac::inv_theta_diff(n, i, j, b))
}

pub fn named_factor(n: usize, kind: NamedFactor, i: usize, j: usize) -> Result<CoeffFrac> {
    if i == j {
        return Err(Error::InvalidArgument(format!("named factor needs distinct indices, got {i},{j}")));
    }
    for k in [i, j] {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
    }
    let (a, b) = kind.offsets();
    Ok(diff_ratio(n, i, j, a, b))
}

/// Shorthands used throughout the relation set.
pub fn fa(n: usize, i: usize, j: usize) -> CoeffFrac {
    diff_ratio(n, i, j, 0, -1)
}
pub fn fap(n: usize, i: usize, j: usize) -> CoeffFrac {
    diff_ratio(n, i, j, -1, 0)
}
pub fn fb(n: usize, i: usize, j: usize) -> CoeffFrac {
    diff_ratio(n, i, j, -1, -2)
}
pub fn fbp(n: usize, i: usize, j: usize) -> CoeffFrac {
    diff_ratio(n, i, j, -2, -1)
}
pub fn fcp(n: usize, i: usize, j: usize) -> CoeffFrac {
    diff_ratio(n, i, j, -3, -2)
}

/// Permutation of `1..=n` (0-based images) swapping `i` and `i+1`.
pub fn simple_transposition(n: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i - 1, i);
    p
}
