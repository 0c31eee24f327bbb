use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::coeff::CoeffFrac;
use crate::error::{Error, Result};
use crate::jtensor::{coset_add, oracle_monomials, CosetTerms, JCache, WeightSets};
use crate::lattice::{GeneratorId, TotalOrder};
use crate::pbw::{mono_weight, Pbw};

use super::element::{Monomial, ZElement};

/// Which multiplication to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Products through the projector tensor; the ground truth.
    Oracle,
    /// Leftmost-descent rewriting with cached ordering relations.
    Rewrite,
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Backend::Oracle),
            "rewrite" => Ok(Backend::Rewrite),
            _ => Err(Error::InvalidArgument(format!("unknown backend `{s}`"))),
        }
    }
}

type Memo<K, V> = RwLock<HashMap<K, Arc<V>>>;

const REWRITE_DEPTH: usize = 4096;

/// `Z_n` with a fixed generator order, owning every cache of the engine.
pub struct Algebra {
    n: usize,
    pbw: Pbw,
    j: Arc<JCache>,
    ws: Arc<WeightSets>,
    coset_forms: Memo<Monomial, CosetTerms>,
    table: Memo<(GeneratorId, GeneratorId), ZElement>,
    normal: Memo<Monomial, ZElement>,
}

impl Algebra {
    pub fn new(order: TotalOrder) -> Self {
        let n = order.n();
        Self::with_cache(order, Arc::new(JCache::new(n)))
    }

    /// Share projector components with other algebras of the same `n`.
    pub fn with_cache(order: TotalOrder, j: Arc<JCache>) -> Self {
        assert_eq!(order.n(), j.n());
        Algebra {
            n: order.n(),
            pbw: Pbw::new(order),
            j,
            ws: Arc::new(WeightSets::default()),
            coset_forms: RwLock::default(),
            table: RwLock::default(),
            normal: RwLock::default(),
        }
    }

    pub fn default_for(n: usize) -> Self {
        Self::new(TotalOrder::default_for(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &TotalOrder {
        self.pbw.order()
    }

    pub fn pbw(&self) -> &Pbw {
        &self.pbw
    }

    pub fn jcache(&self) -> &Arc<JCache> {
        &self.j
    }

    pub fn is_ordered(&self, m: &[GeneratorId]) -> bool {
        self.order().is_sorted(m)
    }

    pub fn generator(&self, g: GeneratorId) -> ZElement {
        ZElement::generator(self.n, g)
    }

    pub fn z(&self, i: usize, j: usize) -> ZElement {
        ZElement::z(self.n, i, j)
    }

    pub fn t(&self, i: usize) -> ZElement {
        ZElement::t(self.n, i)
    }

    pub fn scalar(&self, c: CoeffFrac) -> ZElement {
        ZElement::scalar(c)
    }

    /// The coset-space form of a product of generators `w_1 ∘ w_2 ∘ ⋯`,
    /// computed as `w_1 ∘ (coset form of the rest)` by the oracle.
    pub fn coset_of_word(&self, w: &[GeneratorId]) -> Result<Arc<CosetTerms>> {
        if let Some(r) = self.coset_forms.read().unwrap().get(w) {
            return Ok(r.clone());
        }
        let mut out = CosetTerms::new();
        if w.len() <= 1 {
            out.insert(w.to_vec(), CoeffFrac::one(self.n));
        } else {
            let rest = self.coset_of_word(&w[1..])?;
            let one = CoeffFrac::one(self.n);
            for (b, cb) in rest.iter() {
                oracle_monomials(&self.pbw, &self.j, &self.ws, &w[..1], &one, b, cb, &mut out)?;
            }
        }
        let r = Arc::new(out);
        Ok(self.coset_forms.write().unwrap().entry(w.to_vec()).or_insert(r).clone())
    }

    pub fn to_coset(&self, x: &ZElement) -> Result<CosetTerms> {
        let mut out = CosetTerms::new();
        for (m, c) in x.iter() {
            for (b, cb) in self.coset_of_word(m)?.iter() {
                coset_add(&mut out, b, cb.mul(c));
            }
        }
        Ok(out)
    }

    fn key(&self, m: &[GeneratorId]) -> (usize, Vec<u16>) {
        (m.len(), m.iter().map(|g| self.order().rank_of(*g)).collect())
    }

    /// Rewrite a coset-space element in the basis of ordered `∘`-monomials by
    /// leading-term elimination.
    pub fn from_coset(&self, terms: CosetTerms) -> Result<ZElement> {
        let seq = self.order().sequence();
        let mut work: BTreeMap<(usize, Vec<u16>), CoeffFrac> = BTreeMap::new();
        for (m, c) in terms {
            if !c.is_zero() {
                work.insert(self.key(&m), c);
            }
        }
        let mut out = ZElement::zero(self.n);
        while let Some((key, c)) = work.pop_last() {
            let m: Monomial = key.1.iter().map(|&r| seq[r as usize]).collect();
            let form = self.coset_of_word(&m)?;
            for (m2, c2) in form.iter() {
                let k2 = self.key(m2);
                if k2 == key {
                    if !c2.is_one() {
                        return Err(Error::Internal(format!("leading coefficient of {m:?} is not one")));
                    }
                    continue;
                }
                if k2 > key {
                    return Err(Error::Internal(format!("coset form of {m:?} has a larger term {m2:?}")));
                }
                let d = c2.mul(&c);
                let slot = work.entry(k2).or_insert_with(|| CoeffFrac::zero(self.n));
                *slot = slot.sub(&d);
                if slot.is_zero() {
                    work.remove(&self.key(m2));
                }
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// The product through the projector tensor.
    pub fn mult_oracle(&self, a: &ZElement, b: &ZElement) -> Result<ZElement> {
        let ca = self.to_coset(a)?;
        let cb = self.to_coset(b)?;
        let mut out = CosetTerms::new();
        for (ma, xa) in &ca {
            for (mb, xb) in &cb {
                oracle_monomials(&self.pbw, &self.j, &self.ws, ma, xa, mb, xb, &mut out)?;
            }
        }
        self.from_coset(out)
    }

    /// The ordering relation for `g1 ∘ g2` in the ordered basis.
    pub fn structure_constants(&self, g1: GeneratorId, g2: GeneratorId) -> Result<Arc<ZElement>> {
        if let Some(r) = self.table.read().unwrap().get(&(g1, g2)) {
            return Ok(r.clone());
        }
        let x = if self.is_ordered(&[g1, g2]) {
            ZElement::monomial(vec![g1, g2], CoeffFrac::one(self.n))
        } else {
            let form = self.coset_of_word(&[g1, g2])?;
            self.from_coset(form.as_ref().clone())?
        };
        let r = Arc::new(x);
        Ok(self.table.write().unwrap().entry((g1, g2)).or_insert(r).clone())
    }

    /// Every ordering relation `g1 ∘ g2` with `g1` after `g2`.
    pub fn structure_table(&self) -> Result<Vec<((GeneratorId, GeneratorId), Arc<ZElement>)>> {
        let seq = self.order().sequence();
        let mut out = Vec::new();
        for (a, &g2) in seq.iter().enumerate() {
            for &g1 in &seq[a + 1..] {
                out.push(((g1, g2), self.structure_constants(g1, g2)?));
            }
        }
        Ok(out)
    }

    fn normal_word_at(&self, w: &[GeneratorId], depth: usize) -> Result<Arc<ZElement>> {
        if let Some(r) = self.normal.read().unwrap().get(w) {
            return Ok(r.clone());
        }
        if depth > REWRITE_DEPTH {
            return Err(Error::RewriteBudget(REWRITE_DEPTH));
        }
        let order = self.order();
        let x = match (0..w.len().saturating_sub(1)).find(|&k| order.cmp(w[k], w[k + 1]).is_gt()) {
            None => ZElement::monomial(w.to_vec(), CoeffFrac::one(self.n)),
            Some(k) => {
                let rel = self.structure_constants(w[k], w[k + 1])?;
                let v = &w[k + 2..];
                let wv = mono_weight(self.n, v);
                let mut acc = ZElement::zero(self.n);
                for (m, c) in rel.iter() {
                    let mut nw = Vec::with_capacity(w.len() + m.len());
                    nw.extend_from_slice(&w[..k]);
                    nw.extend_from_slice(m);
                    nw.extend_from_slice(v);
                    let sub = self.normal_word_at(&nw, depth + 1)?;
                    acc = acc.add(&sub.mul_coeff_right(&c.shift(&wv)));
                }
                acc
            }
        };
        let r = Arc::new(x);
        Ok(self.normal.write().unwrap().entry(w.to_vec()).or_insert(r).clone())
    }

    /// Normal form of a product of generators by rewriting.
    pub fn normal_word(&self, w: &[GeneratorId]) -> Result<Arc<ZElement>> {
        self.normal_word_at(w, 0)
    }

    /// The product by rewriting.
    pub fn mult_ordered(&self, a: &ZElement, b: &ZElement) -> Result<ZElement> {
        let mut acc = ZElement::zero(self.n);
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let mut w = ma.clone();
                w.extend_from_slice(mb);
                let c = ca.shift(&mono_weight(self.n, mb)).mul(cb);
                acc = acc.add(&self.normal_word(&w)?.mul_coeff_right(&c));
            }
        }
        Ok(acc)
    }

    pub fn mul(&self, a: &ZElement, b: &ZElement, backend: Backend) -> Result<ZElement> {
        match backend {
            Backend::Oracle => self.mult_oracle(a, b),
            Backend::Rewrite => self.mult_ordered(a, b),
        }
    }

    /// Product of a list of factors, left to right.
    pub fn product(&self, factors: &[ZElement], backend: Backend) -> Result<ZElement> {
        let mut acc = ZElement::one(self.n);
        for f in factors {
            acc = self.mul(&acc, f, backend)?;
        }
        Ok(acc)
    }

    /// Bring a sum of arbitrary generator words to the ordered basis.
    pub fn normal_order(&self, x: &ZElement, backend: Backend) -> Result<ZElement> {
        match backend {
            Backend::Rewrite => {
                let mut acc = ZElement::zero(self.n);
                for (m, c) in x.iter() {
                    acc = acc.add(&self.normal_word(m)?.mul_coeff_right(c));
                }
                Ok(acc)
            }
            Backend::Oracle => {
                let form = self.to_coset(x)?;
                self.from_coset(form)
            }
        }
    }

    /// `[a, b] = a∘b − b∘a`.
    pub fn commutator(&self, a: &ZElement, b: &ZElement, backend: Backend) -> Result<ZElement> {
        Ok(self.mul(a, b, backend)?.sub(&self.mul(b, a, backend)?))
    }
}
