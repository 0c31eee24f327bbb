//! Degree counts of ordering-relation coefficients along a ray in the Cartan
//! variables, where the homogeneous part should become commutative.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::CoeffFrac;
use crate::error::{Error, Result};
use crate::lattice::GeneratorId;

use super::algebra::Algebra;
use super::element::Monomial;

/// One quadratic coefficient restricted to the ray.
#[derive(Clone, Debug)]
pub struct LimitTerm {
    pub monomial: Monomial,
    pub coefficient: CoeffFrac,
    /// Numerator degree minus denominator degree in the ray parameter;
    /// `None` when the coefficient vanishes on the ray.
    pub degree_difference: Option<i64>,
    /// Ratio of leading coefficients.
    pub leading: BigRational,
}

impl LimitTerm {
    fn tends_to_zero(&self) -> bool {
        self.degree_difference.is_none_or(|d| d < 0)
    }
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub pair: (GeneratorId, GeneratorId),
    /// The coefficient of the ordered rearrangement of the pair.
    pub swap: LimitTerm,
    pub others: Vec<LimitTerm>,
}

impl LimitReport {
    /// The swap coefficient tends to one and every other quadratic
    /// coefficient to zero.
    pub fn passes(&self) -> bool {
        self.swap.degree_difference == Some(0)
            && self.swap.leading.is_one()
            && self.others.iter().all(LimitTerm::tends_to_zero)
    }
}

/// Affine images of `θ_1..θ_n` in the single ray variable `s`.  With `n`
/// entries `θ_k = c_k s`; with `n − 1` entries `θ_k − θ_{k+1} − 1 = c_k s`
/// and `θ_n = 0`.
pub fn ray_images(n: usize, ray: &[BigRational]) -> Result<Vec<(Vec<BigRational>, BigRational)>> {
    if ray.len() == n {
        return Ok(ray.iter().map(|c| (vec![c.clone()], BigRational::zero())).collect());
    }
    if ray.len() + 1 != n {
        return Err(Error::InvalidArgument(format!("ray needs {} or {} entries, got {}", n - 1, n, ray.len())));
    }
    let mut out = vec![(vec![BigRational::zero()], BigRational::zero()); n];
    for k in (0..n - 1).rev() {
        let (a, b) = out[k + 1].clone();
        out[k] = (vec![&a[0] + &ray[k]], b + BigRational::one());
    }
    Ok(out)
}

fn restrict(c: &CoeffFrac, images: &[(Vec<BigRational>, BigRational)]) -> Result<(Option<i64>, BigRational)> {
    let r = c.substitute_affine(images, 1).map_err(|e| match e {
        Error::DivisionByZero => Error::InvalidArgument("a denominator vanishes identically on the ray".into()),
        e => e,
    })?;
    let num = r.scaled_num();
    let Some((top, lead)) = num.terms().iter().map(|(e, q)| (e.total(), q)).max_by_key(|(d, _)| *d) else {
        return Ok((None, BigRational::zero()));
    };
    let mut deg = top as i64;
    let mut lead = lead.clone();
    for (f, m) in r.den() {
        let a = &f.coeffs_big(1)[0];
        deg -= *m as i64;
        for _ in 0..*m {
            lead /= a;
        }
    }
    Ok((Some(deg), lead))
}

/// Restrict the quadratic part of the ordering relation for `g1 ∘ g2` to the ray.
pub fn homogeneous_limit_check(alg: &Algebra, g1: GeneratorId, g2: GeneratorId, ray: &[BigRational]) -> Result<LimitReport> {
    let n = alg.n();
    for g in [g1, g2] {
        if !g.valid_for(n) {
            return Err(Error::IndexOutOfRange { index: g.i().max(g.j()), n });
        }
    }
    let images = ray_images(n, ray)?;
    // A generic ray keeps every θ_i − θ_j + ℓ non-constant.
    for i in 0..n {
        for j in i + 1..n {
            let d = &images[i].0[0] - &images[j].0[0];
            if d.is_zero() {
                return Err(Error::InvalidArgument(format!("ray is not generic: θ_{} − θ_{} is constant", i + 1, j + 1)));
            }
        }
    }
    let rel = alg.structure_constants(g1, g2)?;
    let mut swap_mono = vec![g1, g2];
    alg.order().sort(&mut swap_mono);
    let mut swap = None;
    let mut others = Vec::new();
    for (m, c) in rel.iter().filter(|(m, _)| m.len() == 2) {
        let (degree_difference, leading) = restrict(c, &images)?;
        let term = LimitTerm { monomial: m.clone(), coefficient: c.clone(), degree_difference, leading };
        if *m == swap_mono {
            swap = Some(term);
        } else {
            others.push(term);
        }
    }
    let swap = swap.unwrap_or(LimitTerm {
        monomial: swap_mono,
        coefficient: CoeffFrac::zero(n),
        degree_difference: None,
        leading: BigRational::zero(),
    });
    Ok(LimitReport { pair: (g1, g2), swap, others })
}

/// Whether every denominator factor is `θ_i − θ_j + ℓ` with `i < j` and `ℓ ≥ −1`.
pub fn has_admissible_denominator(c: &CoeffFrac) -> bool {
    c.den().iter().all(|(f, _)| matches!(f.as_theta_diff(), Some((i, j, l)) if i < j && l >= -1))
}

/// Structure-table entries with a denominator factor outside the admissible set.
pub fn denominator_violations(alg: &Algebra) -> Result<Vec<((GeneratorId, GeneratorId), CoeffFrac)>> {
    let mut out = Vec::new();
    for (pair, rel) in alg.structure_table()? {
        for (_, c) in rel.iter() {
            if !has_admissible_denominator(c) {
                out.push((pair, c.clone()));
            }
        }
    }
    Ok(out)
}

