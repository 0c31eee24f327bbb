use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::coeff::CoeffFrac;
use crate::error::{Error, Result};
use crate::lattice::{GeneratorId, Weight};
use crate::pbw::mono_weight;

/// A product of generators, read left to right.
pub type Monomial = Vec<GeneratorId>;

/// A finite sum of monomials with coefficients on the right.  Whether the
/// monomials are ordered is up to the producer; the algebra context only
/// returns ordered ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZElement {
    n: usize,
    terms: BTreeMap<Monomial, CoeffFrac>,
}

impl ZElement {
    pub fn zero(n: usize) -> Self {
        ZElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(CoeffFrac::one(n))
    }

    pub fn scalar(c: CoeffFrac) -> Self {
        let mut x = Self::zero(c.n());
        x.add_term(Vec::new(), c);
        x
    }

    pub fn generator(n: usize, g: GeneratorId) -> Self {
        Self::monomial(vec![g], CoeffFrac::one(n))
    }

    /// `z_ij` (or `t_i` when `i == j`).
    pub fn z(n: usize, i: usize, j: usize) -> Self {
        Self::generator(n, GeneratorId::new(i, j))
    }

    pub fn t(n: usize, i: usize) -> Self {
        Self::generator(n, GeneratorId::t(i))
    }

    pub fn monomial(m: Monomial, c: CoeffFrac) -> Self {
        let mut x = Self::zero(c.n());
        x.add_term(m, c);
        x
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, CoeffFrac)>) -> Self {
        let mut x = Self::zero(n);
        for (m, c) in terms {
            x.add_term(m, c);
        }
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CoeffFrac> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &CoeffFrac)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, m: &[GeneratorId]) -> CoeffFrac {
        self.terms.get(m).cloned().unwrap_or_else(|| CoeffFrac::zero(self.n))
    }

    pub fn add_term(&mut self, m: Monomial, c: CoeffFrac) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (m, c) in &o.terms {
            x.add_term(m.clone(), c.clone());
        }
        x
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ZElement { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, c)| (m.clone(), c.scale_by(q))))
    }

    /// `x · c`.
    pub fn mul_coeff_right(&self, c: &CoeffFrac) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))))
    }

    /// `c · x`: the coefficient is moved to the right of each monomial.
    pub fn mul_coeff_left(&self, c: &CoeffFrac) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(m, d)| (m.clone(), c.shift(&mono_weight(self.n, m)).mul(d))),
        )
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffFrac) -> CoeffFrac) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// The common weight of all terms, if there is one.
    pub fn weight(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(|m| mono_weight(self.n, m));
        let first = it.next().unwrap_or_else(|| Weight::zero(self.n));
        if it.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> CoeffFrac {
        self.coeff_of(&[])
    }

    /// `{n, terms: [{monomial: [[i,j],…], coeff}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<[usize; 2]> = m.iter().map(|g| [g.i(), g.j()]).collect();
                json!({ "monomial": mono, "coeff": c.to_json() })
            })
            .collect();
        json!({ "n": self.n, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("element json: {m}"));
        let n = v["n"].as_u64().ok_or_else(|| bad("n"))? as usize;
        let mut x = Self::zero(n);
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let mut m = Vec::new();
            for g in t["monomial"].as_array().ok_or_else(|| bad("monomial"))? {
                let i = g[0].as_u64().ok_or_else(|| bad("index"))? as usize;
                let j = g[1].as_u64().ok_or_else(|| bad("index"))? as usize;
                let g = GeneratorId::new(i, j);
                if !g.valid_for(n) {
                    return Err(Error::IndexOutOfRange { index: i.max(j), n });
                }
                m.push(g);
            }
            x.add_term(m, CoeffFrac::from_json(n, &t["coeff"])?);
        }
        Ok(x)
    }
}
