//! Normalized linear forms in `θ_1 .. θ_n`, used as denominator factors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::ThetaPoly;
use crate::error::{Error, Result};
use crate::lattice::MAX_N;

/// `Σ c_k θ_k + c0` with integer `c_k` of gcd one, first nonzero `c_k`
/// positive and rational `c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearFactor {
    pub coeffs: [i64; MAX_N],
    pub constant: Ratio<i64>,
}

/// Result of normalizing a linear expression.
pub enum Normalized {
    /// `scale · factor`
    Factor(BigRational, LinearFactor),
    Constant(BigRational),
}

fn to_small(q: &BigRational) -> Result<Ratio<i64>> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(a), Some(b)) => Ok(Ratio::new(a, b)),
        _ => Err(Error::Internal(format!("linear factor constant {q} exceeds i64"))),
    }
}

fn big(q: Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

impl LinearFactor {
    /// Normalize `Σ coeffs[k] θ_k + c0`.
    pub fn normalize(coeffs: &[BigRational], c0: &BigRational) -> Result<Normalized> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Ok(Normalized::Constant(c0.clone()));
        }
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in coeffs {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        // scale = g / l, with sign of the first nonzero coefficient
        let first = coeffs.iter().find(|c| !c.is_zero()).unwrap();
        let mut scale = BigRational::new(g, l);
        if first.is_negative() {
            scale = -scale;
        }
        let inv = scale.recip();
        let mut out = [0i64; MAX_N];
        for (k, c) in coeffs.iter().enumerate() {
            let v = c * &inv;
            debug_assert!(v.is_integer());
            out[k] = v
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::Internal("linear factor coefficient exceeds i64".into()))?;
        }
        Ok(Normalized::Factor(scale, LinearFactor { coeffs: out, constant: to_small(&(c0 * &inv))? }))
    }

    /// `θ_i − θ_j + c` (1-based, `i != j`), up to the returned sign.
    pub fn theta_diff(i: usize, j: usize, c: i64) -> (i64, LinearFactor) {
        let mut coeffs = [0i64; MAX_N];
        coeffs[i - 1] = 1;
        coeffs[j - 1] = -1;
        if i < j {
            (1, LinearFactor { coeffs, constant: Ratio::from_integer(c) })
        } else {
            coeffs[i - 1] = -1;
            coeffs[j - 1] = 1;
            (-1, LinearFactor { coeffs, constant: Ratio::from_integer(-c) })
        }
    }

    pub fn coeffs_big(&self, n: usize) -> Vec<BigRational> {
        self.coeffs[..n].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
    }

    pub fn constant_big(&self) -> BigRational {
        big(self.constant)
    }

    pub fn to_poly(&self, n: usize) -> ThetaPoly {
        ThetaPoly::linear(n, &self.coeffs_big(n), &self.constant_big())
    }

    pub fn divides(&self, p: &ThetaPoly) -> Option<ThetaPoly> {
        p.div_linear(&self.coeffs[..p.n()], &self.constant_big())
    }

    /// Largest variable index in use plus one.
    pub fn support_len(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0).map_or(0, |k| k + 1)
    }

    /// `Some((i, j, ℓ))` if this is `θ_i − θ_j + ℓ` with `i < j` and integer `ℓ`.
    pub fn as_theta_diff(&self) -> Option<(usize, usize, i64)> {
        let nz: Vec<(usize, i64)> =
            self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect();
        match nz.as_slice() {
            [(i, 1), (j, -1)] if self.constant.is_integer() => Some((i + 1, j + 1, self.constant.to_integer())),
            _ => None,
        }
    }

    pub fn render(&self, n: usize, name: &dyn Fn(usize) -> String) -> String {
        self.to_poly(n).render(name)
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly(self.support_len().max(1)))
    }
}
