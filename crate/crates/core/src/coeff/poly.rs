//! Sparse multivariate polynomials over ℚ in the variables `θ_1 .. θ_n`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::MAX_N;

/// Exponent vector packed one byte per variable, `θ_1` in the most
/// significant byte, so the integer order is the lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exp(pub u64);

impl Exp {
    #[inline]
    fn shift_of(k: usize) -> u32 {
        (8 * (MAX_N - 1 - k)) as u32
    }

    #[inline]
    pub fn get(self, k: usize) -> u32 {
        ((self.0 >> Self::shift_of(k)) & 0xff) as u32
    }

    #[inline]
    pub fn var(k: usize, e: u32) -> Exp {
        debug_assert!(e < 256);
        Exp((e as u64) << Self::shift_of(k))
    }

    #[inline]
    pub fn mul(self, other: Exp) -> Exp {
        // No carries as long as every degree stays below 256.
        Exp(self.0 + other.0)
    }

    pub fn total(self) -> u32 {
        (0..MAX_N).map(|k| self.get(k)).sum()
    }

    pub fn with(self, k: usize, e: u32) -> Exp {
        let mask = !(0xffu64 << Self::shift_of(k));
        Exp((self.0 & mask) | ((e as u64) << Self::shift_of(k)))
    }

    pub fn to_vec(self, n: usize) -> Vec<u32> {
        (0..n).map(|k| self.get(k)).collect()
    }

    pub fn from_slice(e: &[u32]) -> Exp {
        e.iter().enumerate().fold(Exp(0), |acc, (k, &x)| acc.mul(Exp::var(k, x)))
    }
}

/// Polynomial with exact rational coefficients; terms sorted by descending
/// exponent, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaPoly {
    n: u8,
    terms: Vec<(Exp, BigRational)>,
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

impl ThetaPoly {
    pub fn zero(n: usize) -> Self {
        ThetaPoly { n: n as u8, terms: Vec::new() }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero(n)
        } else {
            ThetaPoly { n: n as u8, terms: vec![(Exp(0), c)] }
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    /// `θ_{k+1}` (0-based variable index `k`).
    pub fn var(n: usize, k: usize) -> Self {
        ThetaPoly { n: n as u8, terms: vec![(Exp::var(k, 1), BigRational::one())] }
    }

    /// `Σ c_k θ_k + c0`.
    pub fn linear(n: usize, coeffs: &[BigRational], c0: &BigRational) -> Self {
        let mut terms: Vec<(Exp, BigRational)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Exp::var(k, 1), c.clone()))
            .collect();
        if !c0.is_zero() {
            terms.push((Exp(0), c0.clone()));
        }
        Self::from_terms(n, terms)
    }

    /// Build from arbitrary terms, merging duplicates.
    pub fn from_terms(n: usize, mut terms: Vec<(Exp, BigRational)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Exp, BigRational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c))
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        ThetaPoly { n: n as u8, terms: out }
    }

    fn from_map(n: usize, map: HashMap<Exp, BigRational>) -> Self {
        let mut terms: Vec<(Exp, BigRational)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        ThetaPoly { n: n as u8, terms }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn terms(&self) -> &[(Exp, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(e, c)] if e.0 == 0 => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(e, c)] if e.0 == 0 && c.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.total()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e.get(k)).max().unwrap_or(0)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn neg(&self) -> Self {
        ThetaPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.n());
        }
        if q.is_one() {
            return self.clone();
        }
        ThetaPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ThetaPoly { n: self.n.max(other.n), terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n());
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut map: HashMap<Exp, BigRational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let c = ca * cb;
                map.entry(ea.mul(*eb)).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        Self::from_map(self.n().max(other.n()), map)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Positive rational `c` and integer polynomial `p` with coprime
    /// coefficients such that `self = c · p`.
    pub fn primitive(&self) -> (BigRational, ThetaPoly) {
        if self.is_zero() {
            return (BigRational::one(), self.clone());
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let content = BigRational::new(g.abs(), l);
        if content.is_one() {
            return (content, self.clone());
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Substitution `θ_k ↦ θ_k + s_k`.
    pub fn shift(&self, s: &[BigRational]) -> Self {
        if s.iter().all(|x| x.is_zero()) {
            return self.clone();
        }
        let n = self.n();
        let mut map: HashMap<Exp, BigRational> = HashMap::new();
        for (e, c) in &self.terms {
            let mut parts: Vec<(Exp, BigRational)> = vec![(Exp(0), c.clone())];
            for k in 0..n {
                let ek = e.get(k);
                if ek == 0 {
                    continue;
                }
                let sk = s.get(k).cloned().unwrap_or_else(BigRational::zero);
                if sk.is_zero() {
                    for p in parts.iter_mut() {
                        p.0 = p.0.mul(Exp::var(k, ek));
                    }
                    continue;
                }
                // (θ_k + s)^ek = Σ_j C(ek, j) s^(ek−j) θ_k^j
                let mut coeffs = Vec::with_capacity(ek as usize + 1);
                let mut binom = BigInt::one();
                let mut spow: Vec<BigRational> = vec![BigRational::one()];
                for _ in 0..ek {
                    let last = spow.last().unwrap().clone();
                    spow.push(last * &sk);
                }
                for j in 0..=ek {
                    coeffs.push(BigRational::from_integer(binom.clone()) * &spow[(ek - j) as usize]);
                    binom = binom * BigInt::from(ek - j) / BigInt::from(j + 1);
                }
                let mut next = Vec::with_capacity(parts.len() * coeffs.len());
                for (pe, pc) in &parts {
                    for (j, cj) in coeffs.iter().enumerate() {
                        next.push((pe.mul(Exp::var(k, j as u32)), pc * cj));
                    }
                }
                parts = next;
            }
            for (pe, pc) in parts {
                map.entry(pe).and_modify(|x| *x += &pc).or_insert(pc);
            }
        }
        Self::from_map(n, map)
    }

    /// Rename variables: `θ_k ↦ θ_{perm[k]}` (0-based).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.n();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = Exp(0);
                for k in 0..n {
                    let ek = e.get(k);
                    if ek > 0 {
                        out = out.mul(Exp::var(perm[k], ek));
                    }
                }
                (out, c.clone())
            })
            .collect();
        Self::from_terms(n, terms)
    }

    /// General substitution `θ_k ↦ images[k]`, landing in the ring of the images.
    pub fn substitute(&self, images: &[ThetaPoly], target_n: usize) -> Self {
        let mut powers: Vec<Vec<ThetaPoly>> = images.iter().map(|p| vec![ThetaPoly::one(target_n), p.clone()]).collect();
        let mut acc = ThetaPoly::zero(target_n);
        for (e, c) in &self.terms {
            let mut t = ThetaPoly::constant(target_n, c.clone());
            for k in 0..self.n() {
                let ek = e.get(k) as usize;
                if ek == 0 {
                    continue;
                }
                while powers[k].len() <= ek {
                    let next = powers[k].last().unwrap().mul(&images[k]);
                    powers[k].push(next);
                }
                t = t.mul(&powers[k][ek]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Exact division by the linear form `Σ c_k θ_k + c0`; `None` if it does
    /// not divide.
    pub fn div_linear(&self, coeffs: &[i64], c0: &BigRational) -> Option<ThetaPoly> {
        let n = self.n();
        let v = coeffs.iter().position(|&c| c != 0)?;
        if self.is_zero() {
            return Some(self.clone());
        }
        let cv = int(coeffs[v]);
        let d = self.degree_in(v) as usize;
        if d == 0 {
            return None;
        }
        // Split into coefficients of powers of θ_v.
        let mut parts: Vec<Vec<(Exp, BigRational)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let ev = e.get(v) as usize;
            parts[ev].push((e.with(v, 0), c.clone()));
        }
        let parts: Vec<ThetaPoly> = parts.into_iter().map(|t| ThetaPoly::from_terms(n, t)).collect();
        let rest: Vec<BigRational> = coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k == v { BigRational::zero() } else { int(c) })
            .collect();
        let r = ThetaPoly::linear(n, &rest, c0);
        let inv_cv = cv.recip();
        let mut q: Vec<ThetaPoly> = vec![ThetaPoly::zero(n); d];
        q[d - 1] = parts[d].scale(&inv_cv);
        for k in (1..d).rev() {
            q[k - 1] = parts[k].sub(&r.mul(&q[k])).scale(&inv_cv);
        }
        if !parts[0].sub(&r.mul(&q[0])).is_zero() {
            return None;
        }
        let mut terms = Vec::new();
        for (k, qk) in q.into_iter().enumerate() {
            for (e, c) in qk.terms {
                terms.push((e.mul(Exp::var(v, k as u32)), c));
            }
        }
        Some(ThetaPoly::from_terms(n, terms))
    }

    /// Evaluate at rational values of all variables.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, x) in values.iter().enumerate() {
                for _ in 0..e.get(k) {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Human-readable form with a caller-chosen variable name.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            let mut factors: Vec<String> = Vec::new();
            for k in 0..self.n() {
                match e.get(k) {
                    0 => {}
                    1 => factors.push(name(k)),
                    p => factors.push(format!("{}^{}", name(k), p)),
                }
            }
            if factors.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|k| format!("theta[{}]", k + 1)))
    }
}
