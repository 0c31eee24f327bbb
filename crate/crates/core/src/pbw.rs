//! The localized enveloping algebra of `gl_n ⊕ gl_n` in the symmetric-pair
//! basis `{e_ij, E_ij}`: brackets, PBW straightening and reduction to the
//! double coset space.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::{int, CoeffFrac, ThetaPoly};
use crate::lattice::{GeneratorId, TotalOrder, Weight};

/// A Lie generator, or a Cartan element appearing transiently in words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieGen {
    /// `e_ij` with `i != j`, the diagonal copy of `gl_n`.
    K(u8, u8),
    /// `E_ij`, the complement; `E_ii` is allowed.
    P(u8, u8),
    /// The Cartan element `h_a = e_aa`.
    H(u8),
}

impl LieGen {
    pub fn e(i: usize, j: usize) -> Self {
        if i == j {
            LieGen::H(i as u8)
        } else {
            LieGen::K(i as u8, j as u8)
        }
    }

    pub fn big_e(i: usize, j: usize) -> Self {
        LieGen::P(i as u8, j as u8)
    }

    pub fn from_generator(g: GeneratorId) -> Self {
        LieGen::P(g.row, g.col)
    }

    pub fn is_lowering(self) -> bool {
        matches!(self, LieGen::K(i, j) if i > j)
    }

    pub fn is_raising(self) -> bool {
        matches!(self, LieGen::K(i, j) if i < j)
    }

    /// `(ε_i − ε_j)(h_a)`: how this generator scales under `ad h_a`.
    pub fn weight_at(self, a: u8) -> i64 {
        match self {
            LieGen::K(i, j) | LieGen::P(i, j) => (i == a) as i64 - (j == a) as i64,
            LieGen::H(_) => 0,
        }
    }

    pub fn add_weight(self, w: &mut [i32]) {
        if let LieGen::K(i, j) | LieGen::P(i, j) = self {
            w[i as usize - 1] += 1;
            w[j as usize - 1] -= 1;
        }
    }
}

pub fn word_weight(n: usize, w: &[LieGen]) -> Weight {
    let mut v = vec![0; n];
    for g in w {
        g.add_weight(&mut v);
    }
    Weight(v)
}

pub fn mono_weight(n: usize, m: &[GeneratorId]) -> Weight {
    let mut v = vec![0; n];
    for g in m {
        v[g.i() - 1] += 1;
        v[g.j() - 1] -= 1;
    }
    Weight(v)
}

/// The Lie bracket `[a, b]` as a combination of generators.
pub fn bracket(a: LieGen, b: LieGen) -> Vec<(LieGen, i64)> {
    use LieGen::*;
    let mut out: Vec<(LieGen, i64)> = Vec::with_capacity(2);
    match (a, b) {
        (H(_), H(_)) => {}
        (H(x), y) => {
            let c = y.weight_at(x);
            if c != 0 {
                out.push((y, c));
            }
        }
        (y, H(x)) => {
            let c = y.weight_at(x);
            if c != 0 {
                out.push((y, -c));
            }
        }
        (K(i, j), K(k, l)) | (P(i, j), P(k, l)) => {
            // [X_ij, X_kl] = δ_jk e_il − δ_il e_kj
            if j == k {
                out.push((LieGen::e(i as usize, l as usize), 1));
            }
            if i == l {
                push_merge(&mut out, LieGen::e(k as usize, j as usize), -1);
            }
        }
        (K(i, j), P(k, l)) | (P(i, j), K(k, l)) => {
            // [e_ij, E_kl] = δ_jk E_il − δ_il E_kj, and the same form for [E, e]
            if j == k {
                out.push((P(i, l), 1));
            }
            if i == l {
                push_merge(&mut out, P(k, j), -1);
            }
        }
    }
    out
}

fn push_merge<T: PartialEq + Copy>(out: &mut Vec<(T, i64)>, g: T, c: i64) {
    if let Some(e) = out.iter_mut().find(|(h, _)| *h == g) {
        e.1 += c;
        if e.1 == 0 {
            out.retain(|(_, c)| *c != 0);
        }
    } else {
        out.push((g, c));
    }
}

/// `h_a = θ_a + a` as a polynomial.
pub fn h_poly(n: usize, a: usize) -> ThetaPoly {
    ThetaPoly::var(n, a - 1).add(&ThetaPoly::constant(n, int(a as i64)))
}

/// A polynomial-coefficient combination of monomials.
pub type PolyTerms<M> = Vec<(M, ThetaPoly)>;

fn accumulate<M: Clone + Eq + std::hash::Hash>(acc: &mut HashMap<M, ThetaPoly>, m: &M, p: ThetaPoly) {
    if p.is_zero() {
        return;
    }
    match acc.get_mut(m) {
        Some(q) => {
            *q = q.add(&p);
        }
        None => {
            acc.insert(m.clone(), p);
        }
    }
}

fn finish<M: Ord + Clone>(acc: HashMap<M, ThetaPoly>) -> PolyTerms<M> {
    let mut v: Vec<(M, ThetaPoly)> = acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

/// Integer combination of words; used for the nilpotent subalgebras and for
/// adjoint actions.
pub type IntTerms<M> = Vec<(M, i64)>;

fn int_accumulate<M: Eq + std::hash::Hash>(acc: &mut HashMap<M, i64>, m: M, c: i64) {
    if c == 0 {
        return;
    }
    let e = acc.entry(m).or_insert(0);
    *e = e.checked_add(c).expect("integer coefficient overflow");
}

fn int_finish<M: Ord>(acc: HashMap<M, i64>) -> IntTerms<M> {
    let mut v: Vec<(M, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

type Memo<K, V> = RwLock<HashMap<K, Arc<V>>>;

fn memo_get<K: Eq + std::hash::Hash, V>(m: &Memo<K, V>, k: &K) -> Option<Arc<V>> {
    m.read().unwrap().get(k).cloned()
}

fn memo_put<K: Eq + std::hash::Hash, V>(m: &Memo<K, V>, k: K, v: V) -> Arc<V> {
    let v = Arc::new(v);
    m.write().unwrap().entry(k).or_insert_with(|| v.clone()).clone()
}

/// Word in `e_ij` letters of one nilpotent subalgebra, as `(i, j)` pairs.
pub type NilWord = Vec<(u8, u8)>;

/// Element of `Ā` in PBW form: lowering `e`'s (lex by `(row, col)`), then `E`'s
/// in the active order, then raising `e`'s (lex); coefficient on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwElement {
    n: usize,
    terms: Vec<(Vec<LieGen>, CoeffFrac)>,
}

impl PbwElement {
    pub fn zero(n: usize) -> Self {
        PbwElement { n, terms: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Vec<LieGen>, CoeffFrac)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_map(n: usize, acc: HashMap<Vec<LieGen>, CoeffFrac>) -> Self {
        let mut terms: Vec<(Vec<LieGen>, CoeffFrac)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        PbwElement { n, terms }
    }
}

/// Computation context for a fixed `n` and generator order, holding the
/// memo tables of all word reductions.
pub struct Pbw {
    n: usize,
    order: TotalOrder,
    coset: Memo<Vec<LieGen>, PolyTerms<Vec<GeneratorId>>>,
    normal: Memo<Vec<LieGen>, PolyTerms<Vec<LieGen>>>,
    nil: Memo<NilWord, IntTerms<NilWord>>,
    ad: Memo<(NilWord, Vec<GeneratorId>), IntTerms<Vec<GeneratorId>>>,
    opp_ad: Memo<(Vec<GeneratorId>, NilWord), IntTerms<Vec<GeneratorId>>>,
}

impl Pbw {
    pub fn new(order: TotalOrder) -> Self {
        Pbw {
            n: order.n(),
            order,
            coset: RwLock::default(),
            normal: RwLock::default(),
            nil: RwLock::default(),
            ad: RwLock::default(),
            opp_ad: RwLock::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &TotalOrder {
        &self.order
    }

    fn rank(&self, g: LieGen) -> u16 {
        match g {
            LieGen::P(i, j) => self.order.rank_of(GeneratorId::new(i as usize, j as usize)),
            _ => unreachable!("rank of a non-E letter"),
        }
    }

    /// Reduce a word of `Ā` to the double coset space: a combination of
    /// `E`-monomials sorted by the active order, coefficients on the right.
    pub fn coset_word(&self, w: &[LieGen]) -> Arc<PolyTerms<Vec<GeneratorId>>> {
        if let Some(r) = memo_get(&self.coset, &w.to_vec()) {
            return r;
        }
        let r = self.coset_word_uncached(w);
        memo_put(&self.coset, w.to_vec(), r)
    }

    fn coset_word_uncached(&self, w: &[LieGen]) -> PolyTerms<Vec<GeneratorId>> {
        let n = self.n;
        let mut acc: HashMap<Vec<GeneratorId>, ThetaPoly> = HashMap::new();
        let add_from = |acc: &mut HashMap<Vec<GeneratorId>, ThetaPoly>, word: &[LieGen], c: i64| {
            let c = int(c);
            for (m, p) in self.coset_word(word).iter() {
                accumulate(acc, m, p.scale(&c));
            }
        };
        match w.iter().position(|g| !matches!(g, LieGen::P(..))) {
            Some(p) => match w[p] {
                LieGen::H(a) => {
                    // u h_a v = u v (h_a + wt(v)_a)
                    let shift: i64 = w[p + 1..].iter().map(|g| g.weight_at(a)).sum();
                    let c = h_poly(n, a as usize).add(&ThetaPoly::constant(n, int(shift)));
                    let mut rest = w.to_vec();
                    rest.remove(p);
                    for (m, q) in self.coset_word(&rest).iter() {
                        accumulate(&mut acc, m, q.mul(&c));
                    }
                }
                e if e.is_lowering() => {
                    // u e v ≡ [u, e] v modulo the left ideal
                    for k in 0..p {
                        for (l, s) in bracket(w[k], e) {
                            let mut nw = Vec::with_capacity(w.len() - 1);
                            nw.extend_from_slice(&w[..k]);
                            nw.push(l);
                            nw.extend_from_slice(&w[k + 1..p]);
                            nw.extend_from_slice(&w[p + 1..]);
                            add_from(&mut acc, &nw, s);
                        }
                    }
                }
                e => {
                    // u e v ≡ u [e, v] modulo the right ideal
                    for k in p + 1..w.len() {
                        for (l, s) in bracket(e, w[k]) {
                            let mut nw = Vec::with_capacity(w.len() - 1);
                            nw.extend_from_slice(&w[..p]);
                            nw.extend_from_slice(&w[p + 1..k]);
                            nw.push(l);
                            nw.extend_from_slice(&w[k + 1..]);
                            add_from(&mut acc, &nw, s);
                        }
                    }
                }
            },
            None => match (0..w.len().saturating_sub(1)).find(|&k| self.rank(w[k]) > self.rank(w[k + 1])) {
                None => {
                    let m: Vec<GeneratorId> = w
                        .iter()
                        .map(|g| match g {
                            LieGen::P(i, j) => GeneratorId::new(*i as usize, *j as usize),
                            _ => unreachable!(),
                        })
                        .collect();
                    acc.insert(m, ThetaPoly::one(n));
                }
                Some(k) => {
                    let mut sw = w.to_vec();
                    sw.swap(k, k + 1);
                    add_from(&mut acc, &sw, 1);
                    for (l, s) in bracket(w[k], w[k + 1]) {
                        let mut nw = Vec::with_capacity(w.len() - 1);
                        nw.extend_from_slice(&w[..k]);
                        nw.push(l);
                        nw.extend_from_slice(&w[k + 2..]);
                        add_from(&mut acc, &nw, s);
                    }
                }
            },
        }
        finish(acc)
    }

    fn pbw_key(&self, g: LieGen) -> (u8, u16, u8, u8) {
        match g {
            LieGen::K(i, j) if i > j => (0, 0, i, j),
            LieGen::P(..) => (1, self.rank(g), 0, 0),
            LieGen::K(i, j) => (2, 0, i, j),
            LieGen::H(_) => unreachable!("Cartan letters are moved into coefficients first"),
        }
    }

    /// PBW straightening of a word; Cartan letters become right coefficients.
    pub fn normal_word(&self, w: &[LieGen]) -> Arc<PolyTerms<Vec<LieGen>>> {
        if let Some(r) = memo_get(&self.normal, &w.to_vec()) {
            return r;
        }
        let n = self.n;
        let mut acc: HashMap<Vec<LieGen>, ThetaPoly> = HashMap::new();
        if let Some(p) = w.iter().position(|g| matches!(g, LieGen::H(_))) {
            let a = match w[p] {
                LieGen::H(a) => a,
                _ => unreachable!(),
            };
            let shift: i64 = w[p + 1..].iter().map(|g| g.weight_at(a)).sum();
            let c = h_poly(n, a as usize).add(&ThetaPoly::constant(n, int(shift)));
            let mut rest = w.to_vec();
            rest.remove(p);
            for (m, q) in self.normal_word(&rest).iter() {
                accumulate(&mut acc, m, q.mul(&c));
            }
        } else {
            match (0..w.len().saturating_sub(1)).find(|&k| self.pbw_key(w[k]) > self.pbw_key(w[k + 1])) {
                None => {
                    acc.insert(w.to_vec(), ThetaPoly::one(n));
                }
                Some(k) => {
                    let mut sw = w.to_vec();
                    sw.swap(k, k + 1);
                    for (m, q) in self.normal_word(&sw).iter() {
                        accumulate(&mut acc, m, q.clone());
                    }
                    for (l, s) in bracket(w[k], w[k + 1]) {
                        let mut nw = Vec::with_capacity(w.len() - 1);
                        nw.extend_from_slice(&w[..k]);
                        nw.push(l);
                        nw.extend_from_slice(&w[k + 2..]);
                        let s = int(s);
                        for (m, q) in self.normal_word(&nw).iter() {
                            accumulate(&mut acc, m, q.scale(&s));
                        }
                    }
                }
            }
        }
        memo_put(&self.normal, w.to_vec(), finish(acc))
    }

    /// PBW normal form of `Σ word · coeff`.
    pub fn pbw_normal_order(&self, input: &[(Vec<LieGen>, CoeffFrac)]) -> PbwElement {
        let mut acc: HashMap<Vec<LieGen>, CoeffFrac> = HashMap::new();
        for (w, c) in input {
            for (m, p) in self.normal_word(w).iter() {
                let t = CoeffFrac::from_poly(p.clone()).mul(c);
                let e = acc.entry(m.clone()).or_insert_with(|| CoeffFrac::zero(self.n));
                *e = e.add(&t);
            }
        }
        PbwElement::from_map(self.n, acc)
    }

    /// Product of two PBW elements, normal ordered.
    pub fn pbw_mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let mut words = Vec::new();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let wt = word_weight(self.n, wb);
                words.push((w, ca.shift(&wt).mul(cb)));
            }
        }
        self.pbw_normal_order(&words)
    }

    /// Drop monomials in `n_− Ā + Ā n_+`; the survivors are `E`-monomials.
    pub fn coset_reduce(&self, x: &PbwElement) -> Vec<(Vec<GeneratorId>, CoeffFrac)> {
        let mut out = Vec::new();
        for (w, c) in &x.terms {
            if w.first().is_some_and(|g| g.is_lowering()) || w.last().is_some_and(|g| g.is_raising()) {
                continue;
            }
            // PBW form puts lowering first and raising last, so a survivor is pure E.
            let m: Vec<GeneratorId> = w
                .iter()
                .map(|g| match g {
                    LieGen::P(i, j) => GeneratorId::new(*i as usize, *j as usize),
                    _ => unreachable!("PBW survivor contains an e letter"),
                })
                .collect();
            out.push((m, c.clone()));
        }
        out
    }

    /// PBW form of a word in one nilpotent subalgebra, letters sorted by `(row, col)`.
    pub fn normal_nil(&self, w: &[(u8, u8)]) -> Arc<IntTerms<NilWord>> {
        if let Some(r) = memo_get(&self.nil, &w.to_vec()) {
            return r;
        }
        let mut acc: HashMap<NilWord, i64> = HashMap::new();
        match (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
            None => {
                acc.insert(w.to_vec(), 1);
            }
            Some(k) => {
                let mut sw = w.to_vec();
                sw.swap(k, k + 1);
                for (m, c) in self.normal_nil(&sw).iter() {
                    int_accumulate(&mut acc, m.clone(), *c);
                }
                let (a, b) = (w[k], w[k + 1]);
                for (l, s) in bracket(LieGen::K(a.0, a.1), LieGen::K(b.0, b.1)) {
                    let l = match l {
                        LieGen::K(i, j) => (i, j),
                        _ => unreachable!("nilpotent subalgebra is closed"),
                    };
                    let mut nw = Vec::with_capacity(w.len() - 1);
                    nw.extend_from_slice(&w[..k]);
                    nw.push(l);
                    nw.extend_from_slice(&w[k + 2..]);
                    for (m, c) in self.normal_nil(&nw).iter() {
                        int_accumulate(&mut acc, m.clone(), c * s);
                    }
                }
            }
        }
        memo_put(&self.nil, w.to_vec(), int_finish(acc))
    }

    /// `[e_x, w]` for an `E`-word `w` (Leibniz rule).
    fn ad_letter(x: (u8, u8), w: &[GeneratorId], acc: &mut HashMap<Vec<GeneratorId>, i64>, c: i64) {
        for k in 0..w.len() {
            for (l, s) in bracket(LieGen::K(x.0, x.1), LieGen::P(w[k].row, w[k].col)) {
                if let LieGen::P(i, j) = l {
                    let mut nw = w.to_vec();
                    nw[k] = GeneratorId::new(i as usize, j as usize);
                    int_accumulate(acc, nw, c * s);
                }
            }
        }
    }

    /// `[w, e_x]` for an `E`-word `w`.
    fn opp_ad_letter(w: &[GeneratorId], x: (u8, u8), acc: &mut HashMap<Vec<GeneratorId>, i64>, c: i64) {
        for k in 0..w.len() {
            for (l, s) in bracket(LieGen::P(w[k].row, w[k].col), LieGen::K(x.0, x.1)) {
                if let LieGen::P(i, j) = l {
                    let mut nw = w.to_vec();
                    nw[k] = GeneratorId::new(i as usize, j as usize);
                    int_accumulate(acc, nw, c * s);
                }
            }
        }
    }

    /// `ad(e_1 ⋯ e_m)(B) = [e_1, [e_2, … [e_m, B]]]`.
    pub fn ad_word(&self, e: &[(u8, u8)], b: &[GeneratorId]) -> Arc<IntTerms<Vec<GeneratorId>>> {
        let key = (e.to_vec(), b.to_vec());
        if let Some(r) = memo_get(&self.ad, &key) {
            return r;
        }
        let r = if e.is_empty() {
            vec![(b.to_vec(), 1)]
        } else {
            let inner = self.ad_word(&e[1..], b);
            let mut acc = HashMap::new();
            for (w, c) in inner.iter() {
                Self::ad_letter(e[0], w, &mut acc, *c);
            }
            int_finish(acc)
        };
        memo_put(&self.ad, key, r)
    }

    /// `A f_1 ⋯ f_m ≡ [[A, f_1], f_2] …` modulo the left ideal.
    pub fn opp_ad_word(&self, a: &[GeneratorId], f: &[(u8, u8)]) -> Arc<IntTerms<Vec<GeneratorId>>> {
        let key = (a.to_vec(), f.to_vec());
        if let Some(r) = memo_get(&self.opp_ad, &key) {
            return r;
        }
        let r = if f.is_empty() {
            vec![(a.to_vec(), 1)]
        } else {
            let inner = self.opp_ad_word(a, &f[..f.len() - 1]);
            let mut acc = HashMap::new();
            for (w, c) in inner.iter() {
                Self::opp_ad_letter(w, f[f.len() - 1], &mut acc, *c);
            }
            int_finish(acc)
        };
        memo_put(&self.opp_ad, key, r)
    }

    /// `ad(e_x)^k` applied to an `E`-word.
    pub fn ad_power(&self, x: (u8, u8), k: usize, b: &[GeneratorId]) -> IntTerms<Vec<GeneratorId>> {
        let e = vec![x; k];
        self.ad_word(&e, b).as_ref().clone()
    }
}

/// Index transposition `(i, i+1)` on a 1-based index.
pub fn swap_index(i: usize, k: u8) -> u8 {
    if k as usize == i {
        (i + 1) as u8
    } else if k as usize == i + 1 {
        i as u8
    } else {
        k
    }
}

/// `σ́_i(X_kl) = (−1)^{δ_ik + δ_il} X_{σ(k)σ(l)}` on a letter.
pub fn sigma_letter(i: usize, g: LieGen) -> (LieGen, i64) {
    let sign = |k: u8, l: u8| if ((k as usize == i) as u8 + (l as usize == i) as u8) % 2 == 1 { -1 } else { 1 };
    match g {
        LieGen::K(k, l) => (LieGen::K(swap_index(i, k), swap_index(i, l)), sign(k, l)),
        LieGen::P(k, l) => (LieGen::P(swap_index(i, k), swap_index(i, l)), sign(k, l)),
        LieGen::H(a) => (LieGen::H(swap_index(i, a)), 1),
    }
}

/// The automorphism `σ́_i` of `Ā`; on the Cartan coefficients it is the
/// index permutation of `h` (so `θ_k ↦ θ_{σ(k)} + σ(k) − k`).
pub fn sigma_automorphism(pbw: &Pbw, i: usize, x: &PbwElement) -> PbwElement {
    let n = pbw.n();
    let perm: Vec<usize> = (1..=n).map(|k| swap_index(i, k as u8) as usize - 1).collect();
    let shift: Vec<BigRational> = (1..=n)
        .map(|k| {
            let s = swap_index(i, k as u8) as i64 - k as i64;
            if s == 0 {
                BigRational::zero()
            } else {
                int(s)
            }
        })
        .collect();
    let mut words = Vec::new();
    for (w, c) in x.terms() {
        let mut sign = 1;
        let nw: Vec<LieGen> = w
            .iter()
            .map(|g| {
                let (h, s) = sigma_letter(i, *g);
                sign *= s;
                h
            })
            .collect();
        // h_k ↦ h_{σk}: first θ_k ↦ θ_{σk}, then add σ(k) − k to each θ_{σk}.
        let mut shift_after = vec![BigRational::zero(); n];
        for k in 0..n {
            shift_after[perm[k]] = shift[k].clone();
        }
        let nc = c.permute(&perm).shift_rational(&shift_after).scale_by(&int(sign));
        words.push((nw, nc));
    }
    pbw.pbw_normal_order(&words)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(LieGen::K(1, 2), LieGen::K(2, 1)), vec![(LieGen::H(1), 1), (LieGen::H(2), -1)]);
        assert_eq!(bracket(LieGen::P(1, 1), LieGen::P(1, 1)), vec![]);
        assert!(bracket(LieGen::K(1, 2), LieGen::P(3, 4)).is_empty());
    }
}
