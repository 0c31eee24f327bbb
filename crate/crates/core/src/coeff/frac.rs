//! Canonical fractions `scale · num / Π f^m` with affine-linear denominator factors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::linear::{LinearFactor, Normalized};
use super::poly::{int, Exp, ThetaPoly};
use crate::error::{Error, Result};
use crate::lattice::Weight;

/// An element of the localized Cartan ring.
///
/// Invariants: `num` is an integer polynomial with coprime coefficients
/// (its sign carries the sign of the value), `den` is sorted with positive
/// multiplicities and no factor divides `num`, `scale > 0`.  Structural
/// equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffFrac {
    num: ThetaPoly,
    den: Vec<(LinearFactor, u32)>,
    scale: BigRational,
}

fn merge_dens(a: &[(LinearFactor, u32)], b: &[(LinearFactor, u32)]) -> Vec<(LinearFactor, u32)> {
    let mut m: BTreeMap<LinearFactor, u32> = BTreeMap::new();
    for (f, k) in a.iter().chain(b) {
        *m.entry(*f).or_default() += k;
    }
    m.into_iter().filter(|(_, k)| *k > 0).collect()
}

impl CoeffFrac {
    pub fn zero(n: usize) -> Self {
        CoeffFrac { num: ThetaPoly::zero(n), den: Vec::new(), scale: BigRational::one() }
    }

    pub fn one(n: usize) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Self::from_rational(n, int(c))
    }

    pub fn from_rational(n: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(n);
        }
        let sign = if c.is_negative() { -1 } else { 1 };
        CoeffFrac { num: ThetaPoly::constant(n, int(sign)), den: Vec::new(), scale: c.abs() }
    }

    pub fn from_poly(p: ThetaPoly) -> Self {
        Self::build(p, Vec::new(), BigRational::one())
    }

    /// `θ_k` (1-based).
    pub fn theta(n: usize, k: usize) -> Self {
        Self::from_poly(ThetaPoly::var(n, k - 1))
    }

    /// `h_k = θ_k + k` (1-based).
    pub fn h(n: usize, k: usize) -> Self {
        Self::from_poly(ThetaPoly::var(n, k - 1).add(&ThetaPoly::constant(n, int(k as i64))))
    }

    /// `θ_i − θ_j + c`.
    pub fn theta_diff(n: usize, i: usize, j: usize, c: i64) -> Self {
        let mut co = vec![BigRational::zero(); n];
        co[i - 1] += int(1);
        co[j - 1] -= int(1);
        Self::from_poly(ThetaPoly::linear(n, &co, &int(c)))
    }

    /// `1 / (θ_i − θ_j + c)`.
    pub fn inv_theta_diff(n: usize, i: usize, j: usize, c: i64) -> Self {
        let (sign, f) = LinearFactor::theta_diff(i, j, c);
        CoeffFrac { num: ThetaPoly::constant(n, int(sign)), den: vec![(f, 1)], scale: BigRational::one() }
    }

    /// Canonicalize an arbitrary `scale · num / Π den`.
    fn build(num: ThetaPoly, den: Vec<(LinearFactor, u32)>, scale: BigRational) -> Self {
        let n = num.n();
        if num.is_zero() || scale.is_zero() {
            return Self::zero(n);
        }
        let (c, mut p) = num.primitive();
        let mut scale = scale * c;
        if scale.is_negative() {
            scale = -scale;
            p = p.neg();
        }
        let mut den = merge_dens(&den, &[]);
        for (f, m) in den.iter_mut() {
            while *m > 0 {
                match f.divides(&p) {
                    Some(q) => {
                        let (c2, q2) = q.primitive();
                        scale *= c2;
                        p = q2;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|(_, m)| *m > 0);
        CoeffFrac { num: p, den, scale }
    }

    pub fn n(&self) -> usize {
        self.num.n()
    }

    pub fn num(&self) -> &ThetaPoly {
        &self.num
    }

    pub fn den(&self) -> &[(LinearFactor, u32)] {
        &self.den
    }

    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.scale.is_one() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.den.is_empty() {
            return None;
        }
        self.num.as_constant().map(|c| c * &self.scale)
    }

    /// Numerator with the scale folded in.
    pub fn scaled_num(&self) -> ThetaPoly {
        self.num.scale(&self.scale)
    }

    pub fn neg(&self) -> Self {
        CoeffFrac { num: self.num.neg(), den: self.den.clone(), scale: self.scale.clone() }
    }

    pub fn scale_by(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.n());
        }
        let mut out = self.clone();
        out.scale *= q.abs();
        if q.is_negative() {
            out.num = out.num.neg();
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.n().max(o.n()));
        }
        if self.den.is_empty() && o.den.is_empty() {
            // Gauss: product of primitive polynomials is primitive.
            return CoeffFrac { num: self.num.mul(&o.num), den: Vec::new(), scale: &self.scale * &o.scale };
        }
        let mut an = self.num.clone();
        let mut bn = o.num.clone();
        let mut aden = self.den.clone();
        let mut bden = o.den.clone();
        for (f, m) in aden.iter_mut() {
            while *m > 0 {
                match f.divides(&bn) {
                    Some(q) => {
                        bn = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        for (f, m) in bden.iter_mut() {
            while *m > 0 {
                match f.divides(&an) {
                    Some(q) => {
                        an = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        let (c, p) = an.mul(&bn).primitive();
        let mut scale = &self.scale * &o.scale * c;
        let mut p = p;
        if scale.is_negative() {
            scale = -scale;
            p = p.neg();
        }
        CoeffFrac { num: p, den: merge_dens(&aden, &bden), scale }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let n = self.n().max(o.n());
        if self.den == o.den {
            let num = self.num.scale(&self.scale).add(&o.num.scale(&o.scale));
            return Self::build(num, self.den.clone(), BigRational::one());
        }
        let ma: BTreeMap<LinearFactor, u32> = self.den.iter().cloned().collect();
        let mb: BTreeMap<LinearFactor, u32> = o.den.iter().cloned().collect();
        let mut lcm: BTreeMap<LinearFactor, u32> = ma.clone();
        for (f, k) in &mb {
            let e = lcm.entry(*f).or_default();
            *e = (*e).max(*k);
        }
        let cofactor = |own: &BTreeMap<LinearFactor, u32>| -> ThetaPoly {
            let mut p = ThetaPoly::one(n);
            for (f, k) in &lcm {
                let have = own.get(f).copied().unwrap_or(0);
                if *k > have {
                    p = p.mul(&f.to_poly(n).pow(k - have));
                }
            }
            p
        };
        let num = self
            .num
            .scale(&self.scale)
            .mul(&cofactor(&ma))
            .add(&o.num.scale(&o.scale).mul(&cofactor(&mb)));
        if num.is_zero() {
            return Self::zero(n);
        }
        // Only factors with equal multiplicity on both sides can cancel.
        let (c, mut p) = num.primitive();
        let mut scale = c;
        let mut den: Vec<(LinearFactor, u32)> = lcm.into_iter().collect();
        for (f, m) in den.iter_mut() {
            if ma.get(f) != mb.get(f) {
                continue;
            }
            while *m > 0 {
                match f.divides(&p) {
                    Some(q) => {
                        let (c2, q2) = q.primitive();
                        scale *= c2;
                        p = q2;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|(_, m)| *m > 0);
        CoeffFrac { num: p, den, scale }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Multiplicative inverse; the numerator must be constant or linear.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.n();
        let mut new_num = ThetaPoly::one(n);
        for (f, m) in &self.den {
            new_num = new_num.mul(&f.to_poly(n).pow(*m));
        }
        if let Some(c) = self.num.as_constant() {
            return Ok(Self::build(new_num, Vec::new(), (c * &self.scale).recip()));
        }
        if self.num.total_degree() == 1 {
            let (co, c0) = linear_parts(&self.num).expect("degree one");
            return match LinearFactor::normalize(&co, &c0)? {
                Normalized::Factor(s, f) => Ok(Self::build(new_num, vec![(f, 1)], (s * &self.scale).recip())),
                Normalized::Constant(_) => Err(Error::Internal("degree-one polynomial normalized to a constant".into())),
            };
        }
        Err(Error::NonlinearDenominator(self.to_string()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Divide by one linear factor.
    pub fn div_by_factor(&self, f: &LinearFactor) -> Self {
        Self::build(self.scaled_num(), merge_dens(&self.den, &[(*f, 1)]), BigRational::one())
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.n());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitution `θ_k ↦ θ_k + λ_k`.
    pub fn shift(&self, w: &Weight) -> Self {
        if w.is_zero() || self.is_zero() {
            return self.clone();
        }
        let s: Vec<BigRational> = w.0.iter().map(|&c| int(c as i64)).collect();
        self.shift_rational(&s)
    }

    /// Substitution `θ_k ↦ θ_k + s_k` with rational `s_k`.
    pub fn shift_rational(&self, s: &[BigRational]) -> Self {
        let num = self.num.shift(s);
        let mut den: Vec<(LinearFactor, u32)> = self
            .den
            .iter()
            .map(|(f, m)| {
                let mut g = *f;
                let mut add = BigRational::zero();
                for (k, sk) in s.iter().enumerate() {
                    if f.coeffs[k] != 0 {
                        add += int(f.coeffs[k]) * sk;
                    }
                }
                let c = f.constant_big() + add;
                g.constant = num_rational::Ratio::new(
                    num_traits::ToPrimitive::to_i64(c.numer()).expect("small constant"),
                    num_traits::ToPrimitive::to_i64(c.denom()).expect("small constant"),
                );
                (g, *m)
            })
            .collect();
        den.sort();
        // A shift is an automorphism: no new cancellation, numerator stays primitive.
        CoeffFrac { num, den, scale: self.scale.clone() }
    }

    /// Rename variables `θ_k ↦ θ_{perm[k]}` (0-based images).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.n();
        let num = self.num.permute(perm);
        let mut scale_sign = false;
        let mut den = Vec::with_capacity(self.den.len());
        for (f, m) in &self.den {
            let mut co = vec![BigRational::zero(); n];
            for k in 0..n {
                co[perm[k]] = int(f.coeffs[k]);
            }
            match LinearFactor::normalize(&co, &f.constant_big()).expect("permuted factor") {
                Normalized::Factor(s, g) => {
                    if s.is_negative() && m % 2 == 1 {
                        scale_sign = !scale_sign;
                    }
                    den.push((g, *m));
                }
                Normalized::Constant(_) => unreachable!("permutation keeps a factor nonconstant"),
            }
        }
        den.sort();
        CoeffFrac { num: if scale_sign { num.neg() } else { num }, den, scale: self.scale.clone() }
    }

    /// General affine substitution `θ_k ↦ Σ_j M[k][j] θ_j + c[k]` into a ring
    /// with `target_n` variables.
    pub fn substitute_affine(&self, images: &[(Vec<BigRational>, BigRational)], target_n: usize) -> Result<Self> {
        let polys: Vec<ThetaPoly> =
            images.iter().map(|(co, c)| ThetaPoly::linear(target_n, co, c)).collect();
        let num = self.num.substitute(&polys, target_n);
        let mut scale = self.scale.clone();
        let mut den = Vec::new();
        for (f, m) in &self.den {
            let p = f.to_poly(self.n()).substitute(&polys, target_n);
            let (co, c0) = linear_parts(&p).ok_or_else(|| Error::Internal("affine image of a linear form".into()))?;
            match LinearFactor::normalize(&co, &c0)? {
                Normalized::Factor(s, g) => {
                    for _ in 0..*m {
                        scale /= &s;
                    }
                    den.push((g, *m));
                }
                Normalized::Constant(c) => {
                    if c.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    for _ in 0..*m {
                        scale /= &c;
                    }
                }
            }
        }
        Ok(Self::build(num, den, scale))
    }

    pub fn eval(&self, values: &[BigRational]) -> Result<BigRational> {
        let mut v = self.num.eval(values) * &self.scale;
        for (f, m) in &self.den {
            let d = f.to_poly(self.n()).eval(values);
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            for _ in 0..*m {
                v /= &d;
            }
        }
        Ok(v)
    }

    /// Text with a caller-chosen variable name, e.g. `(theta[1]-theta[2]+1)/(theta[1]-theta[2])`.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let n = self.n();
        let numer = BigRational::from_integer(self.scale.numer().clone());
        let top = self.num.scale(&numer);
        let mut parts: Vec<String> = Vec::new();
        if !self.scale.denom().is_one() {
            parts.push(self.scale.denom().to_string());
        }
        for (f, m) in &self.den {
            let s = format!("({})", f.render(n, name));
            parts.push(if *m == 1 { s } else { format!("{s}^{m}") });
        }
        let mut out = if top.terms().len() > 1 && !parts.is_empty() {
            format!("({})", top.render(name))
        } else {
            top.render(name)
        };
        match parts.len() {
            0 => {}
            1 => {
                out.push('/');
                out.push_str(&parts[0]);
            }
            _ => {
                out.push_str("/(");
                out.push_str(&parts.join("*"));
                out.push(')');
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let n = self.n();
        let num: Vec<Value> = self
            .num
            .terms()
            .iter()
            .map(|(e, c)| json!([e.to_vec(n), c.to_string()]))
            .collect();
        let mut den = Vec::new();
        for (f, m) in &self.den {
            for _ in 0..*m {
                den.push(json!([f.coeffs[..n].to_vec(), f.constant.to_string()]));
            }
        }
        json!({ "num": num, "den": den, "scale": self.scale.to_string() })
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("coefficient json: {m}"));
        let parse_q = |s: &Value| -> Result<BigRational> {
            let s = s.as_str().ok_or_else(|| bad("expected a rational string"))?;
            parse_rational(s).ok_or_else(|| bad(s))
        };
        let mut terms = Vec::new();
        for t in v["num"].as_array().ok_or_else(|| bad("num"))? {
            let e: Vec<u32> = t[0]
                .as_array()
                .ok_or_else(|| bad("exponent"))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as u32))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("exponent"))?;
            if e.len() != n {
                return Err(Error::DimensionMismatch(e.len(), n));
            }
            terms.push((Exp::from_slice(&e), parse_q(&t[1])?));
        }
        let mut scale = parse_q(&v["scale"])?;
        let mut den = Vec::new();
        for d in v["den"].as_array().ok_or_else(|| bad("den"))? {
            let co: Vec<BigRational> = d[0]
                .as_array()
                .ok_or_else(|| bad("factor"))?
                .iter()
                .map(|x| x.as_i64().map(int))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("factor"))?;
            match LinearFactor::normalize(&co, &parse_q(&d[1])?)? {
                Normalized::Factor(s, f) => {
                    scale /= s;
                    den.push((f, 1));
                }
                Normalized::Constant(c) => {
                    if c.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    scale /= c;
                }
            }
        }
        Ok(Self::build(ThetaPoly::from_terms(n, terms), den, scale))
    }
}

/// Coefficients and constant of a polynomial of degree at most one.
pub fn linear_parts(p: &ThetaPoly) -> Option<(Vec<BigRational>, BigRational)> {
    let n = p.n();
    let mut co = vec![BigRational::zero(); n];
    let mut c0 = BigRational::zero();
    for (e, c) in p.terms() {
        match e.total() {
            0 => c0 = c.clone(),
            1 => {
                let k = (0..n).find(|&k| e.get(k) == 1)?;
                co[k] = c.clone();
            }
            _ => return None,
        }
    }
    Some((co, c0))
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for CoeffFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|k| format!("theta[{}]", k + 1)))
    }
}
