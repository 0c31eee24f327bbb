//! Weight components of the extremal-projector tensor and the product of the
//! reduction algebra computed from them.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};

use crate::coeff::{int, CoeffFrac, LinearFactor, Normalized};
use crate::error::{Error, Result};
use crate::lattice::{product_weights, GeneratorId, Weight};
use crate::pbw::{mono_weight, LieGen, NilWord, Pbw};

/// One term `F ⊗ E·H` of a weight component: `F` in `U(n_−)`, `E` in `U(n_+)`,
/// `H` to the right of `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JTerm {
    pub lower: NilWord,
    pub raise: NilWord,
    pub coeff: CoeffFrac,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JComponent {
    pub weight: Weight,
    pub terms: Vec<JTerm>,
}

/// Memo of weight components for one `n`.
pub struct JCache {
    n: usize,
    map: RwLock<HashMap<Weight, Arc<JComponent>>>,
}

fn positive_roots(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            v.push((a, b));
        }
    }
    v
}

impl JCache {
    pub fn new(n: usize) -> Self {
        JCache { n, map: RwLock::default() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `J_λ`, solved from `J_λ (θ_λ + (λ,λ)/2) = −Σ_γ T_γ(J_{λ−γ})` with
    /// `T_γ(F ⊗ E H) = F e_{−γ} ⊗ e_γ E H` and `J_0 = 1 ⊗ 1`.
    pub fn component(&self, pbw: &Pbw, lambda: &Weight) -> Result<Arc<JComponent>> {
        if lambda.n() != self.n {
            return Err(Error::DimensionMismatch(lambda.n(), self.n));
        }
        if !lambda.in_positive_cone() {
            return Err(Error::NotInPositiveCone(lambda.to_string()));
        }
        if let Some(c) = self.map.read().unwrap().get(lambda) {
            return Ok(c.clone());
        }
        let n = self.n;
        let comp = if lambda.is_zero() {
            JComponent {
                weight: lambda.clone(),
                terms: vec![JTerm { lower: Vec::new(), raise: Vec::new(), coeff: CoeffFrac::one(n) }],
            }
        } else {
            let mut acc: HashMap<(NilWord, NilWord), CoeffFrac> = HashMap::new();
            for (a, b) in positive_roots(n) {
                let prev = lambda.sub(&Weight::root(n, a, b));
                if !prev.in_positive_cone() {
                    continue;
                }
                let jp = self.component(pbw, &prev)?;
                for t in &jp.terms {
                    let mut fw = t.lower.clone();
                    fw.push((b as u8, a as u8));
                    let mut ew = vec![(a as u8, b as u8)];
                    ew.extend_from_slice(&t.raise);
                    let fs = pbw.normal_nil(&fw);
                    let es = pbw.normal_nil(&ew);
                    for (f, cf) in fs.iter() {
                        for (e, ce) in es.iter() {
                            let c = t.coeff.scale_by(&int(cf * ce));
                            let slot = acc.entry((f.clone(), e.clone())).or_insert_with(|| CoeffFrac::zero(n));
                            *slot = slot.add(&c);
                        }
                    }
                }
            }
            // divide by −(θ_λ + (λ,λ)/2)
            let coeffs: Vec<_> = lambda.0.iter().map(|&c| int(c as i64)).collect();
            let c0 = crate::coeff::rat(lambda.norm2(), 2);
            let (scale, f) = match LinearFactor::normalize(&coeffs, &c0)? {
                Normalized::Factor(s, f) => (s, f),
                Normalized::Constant(_) => return Err(Error::Internal("zero weight in recurrence".into())),
            };
            let inv = -scale.recip();
            let mut terms: Vec<JTerm> = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((lower, raise), c)| JTerm { lower, raise, coeff: c.div_by_factor(&f).scale_by(&inv) })
                .collect();
            terms.sort_by(|x, y| (&x.lower, &x.raise).cmp(&(&y.lower, &y.raise)));
            JComponent { weight: lambda.clone(), terms }
        };
        let comp = Arc::new(comp);
        Ok(self.map.write().unwrap().entry(lambda.clone()).or_insert(comp).clone())
    }
}

/// Caches the weight sets `W_d` of products of `d` generators.
#[derive(Default)]
pub struct WeightSets {
    sets: RwLock<HashMap<(usize, usize), Arc<HashSet<Weight>>>>,
}

impl WeightSets {
    pub fn get(&self, n: usize, d: usize) -> Arc<HashSet<Weight>> {
        if let Some(s) = self.sets.read().unwrap().get(&(n, d)) {
            return s.clone();
        }
        let s = Arc::new(product_weights(n, d));
        self.sets.write().unwrap().entry((n, d)).or_insert(s).clone()
    }
}

/// Element of the double coset space in the basis of sorted `E`-monomials.
pub type CosetTerms = HashMap<Vec<GeneratorId>, CoeffFrac>;

pub fn coset_add(acc: &mut CosetTerms, m: &[GeneratorId], c: CoeffFrac) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(m) {
        Some(x) => {
            *x = x.add(&c);
            if x.is_zero() {
                acc.remove(m);
            }
        }
        None => {
            acc.insert(m.to_vec(), c);
        }
    }
}

/// The weights `λ ∈ Q_+` that can contribute to `A ∘_λ B`.
pub fn contributing_weights(ws: &WeightSets, n: usize, a: &[GeneratorId], b: &[GeneratorId]) -> Vec<Weight> {
    let wa = mono_weight(n, a);
    let wb = mono_weight(n, b);
    let sa = ws.get(n, a.len());
    let sb = ws.get(n, b.len());
    let mut out: Vec<Weight> = sb
        .iter()
        .map(|w| w.sub(&wb))
        .filter(|l| l.in_positive_cone() && sa.contains(&wa.sub(l)))
        .collect();
    out.sort();
    out
}

/// `(A c_a) ∘ (B c_b)` for sorted `E`-monomials `A`, `B`:
/// `Σ_λ Σ_{F⊗EH ∈ J_λ} [[A, f_1], …] · [e_1, [… , B]] · shift(c_a H, wt B) c_b`.
#[allow(clippy::too_many_arguments)]
pub fn oracle_monomials(
    pbw: &Pbw,
    j: &JCache,
    ws: &WeightSets,
    a: &[GeneratorId],
    ca: &CoeffFrac,
    b: &[GeneratorId],
    cb: &CoeffFrac,
    out: &mut CosetTerms,
) -> Result<()> {
    let n = pbw.n();
    let wb = mono_weight(n, b);
    for lambda in contributing_weights(ws, n, a, b) {
        let comp = j.component(pbw, &lambda)?;
        let mut local: HashMap<Vec<GeneratorId>, CoeffFrac> = HashMap::new();
        for t in &comp.terms {
            let xs = pbw.opp_ad_word(a, &t.lower);
            if xs.is_empty() {
                continue;
            }
            let ys = pbw.ad_word(&t.raise, b);
            if ys.is_empty() {
                continue;
            }
            let mut polys: HashMap<Vec<GeneratorId>, crate::coeff::ThetaPoly> = HashMap::new();
            for (x, cx) in xs.iter() {
                for (y, cy) in ys.iter() {
                    let word: Vec<LieGen> = x.iter().chain(y.iter()).map(|g| LieGen::from_generator(*g)).collect();
                    let s = int(cx * cy);
                    for (m, p) in pbw.coset_word(&word).iter() {
                        let p = p.scale(&s);
                        match polys.get_mut(m) {
                            Some(q) => *q = q.add(&p),
                            None => {
                                polys.insert(m.clone(), p);
                            }
                        }
                    }
                }
            }
            if polys.values().all(|p| p.is_zero()) {
                continue;
            }
            let h = t.coeff.shift(&wb);
            for (m, p) in polys {
                if p.is_zero() {
                    continue;
                }
                coset_add(&mut local, &m, CoeffFrac::from_poly(p).mul(&h));
            }
        }
        let right = ca.shift(&wb);
        for (m, c) in local {
            coset_add(out, &m, right.mul(&c).mul(cb));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::TotalOrder;

    #[test]
    fn first_component() {
        let pbw = Pbw::new(TotalOrder::default_for(2));
        let j = JCache::new(2);
        let c = j.component(&pbw, &Weight::root(2, 1, 2)).unwrap();
        assert_eq!(c.terms.len(), 1);
        let t = &c.terms[0];
        assert_eq!(t.lower, vec![(2, 1)]);
        assert_eq!(t.raise, vec![(1, 2)]);
        assert_eq!(t.coeff, CoeffFrac::inv_theta_diff(2, 1, 2, 1).neg());
    }
}
