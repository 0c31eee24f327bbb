//! Central elements, the block embedding `ι_{n,m}: Z_n ⊗ Z_m → Z_{n+m}` and
//! the cut `π_{n,m}` back.
//!
//! Elements of `Z_n ⊗ Z_m` are stored as [`ZElement`]s with `n + m` labels:
//! each monomial is the first-block letters (indices `≤ n`) followed by the
//! second-block letters (indices `> n`), each part ordered in its own default
//! order, and the coefficient lives in the Cartan ring of `gl_{n+m}`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeff::{int, rat, CoeffFrac, ThetaPoly};
use crate::error::{Error, Result};
use crate::jtensor::{coset_add, CosetTerms};
use crate::lattice::{GeneratorId, TotalOrder};
use crate::pbw::mono_weight;
use crate::zalg::{Algebra, Backend, Monomial, ZElement};

/// The catalog of explicit central elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CentralId {
    /// `Σ h_i`.
    LinearH(usize),
    /// `Σ t_i`.
    LinearT(usize),
    /// `Σ (h_i − 2i) t_i`.
    Quadratic(usize),
    /// `Σ_{u,v} C^{uv} (θ_{u,u+1} + 1)(t_v − t_{v+1})` with `C` the inverse
    /// Cartan matrix of `sl_n`.
    SlLinear(usize),
    Sl3C1,
    Sl3C2,
    Sl2C1,
    Sl2C2,
}

impl CentralId {
    pub fn n(&self) -> usize {
        match *self {
            CentralId::LinearH(n) | CentralId::LinearT(n) | CentralId::Quadratic(n) | CentralId::SlLinear(n) => n,
            CentralId::Sl3C1 | CentralId::Sl3C2 => 3,
            CentralId::Sl2C1 | CentralId::Sl2C2 => 2,
        }
    }

    /// Every catalog entry native to `n`.
    pub fn all_for(n: usize) -> Vec<CentralId> {
        let mut out = vec![CentralId::LinearH(n), CentralId::LinearT(n), CentralId::Quadratic(n)];
        if n >= 2 {
            out.push(CentralId::SlLinear(n));
        }
        match n {
            2 => out.extend([CentralId::Sl2C1, CentralId::Sl2C2]),
            3 => out.extend([CentralId::Sl3C1, CentralId::Sl3C2]),
            _ => {}
        }
        out
    }
}

impl fmt::Display for CentralId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralId::LinearH(n) => write!(f, "linear_h({n})"),
            CentralId::LinearT(n) => write!(f, "linear_t({n})"),
            CentralId::Quadratic(n) => write!(f, "quadratic({n})"),
            CentralId::SlLinear(n) => write!(f, "sl_linear({n})"),
            CentralId::Sl3C1 => f.write_str("sl3_C1"),
            CentralId::Sl3C2 => f.write_str("sl3_C2"),
            CentralId::Sl2C1 => f.write_str("sl2_C1"),
            CentralId::Sl2C2 => f.write_str("sl2_C2"),
        }
    }
}

impl FromStr for CentralId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let fixed = match s {
            "sl3_C1" => Some(CentralId::Sl3C1),
            "sl3_C2" => Some(CentralId::Sl3C2),
            "sl2_C1" => Some(CentralId::Sl2C1),
            "sl2_C2" => Some(CentralId::Sl2C2),
            _ => None,
        };
        if let Some(id) = fixed {
            return Ok(id);
        }
        let bad = || Error::InvalidArgument(format!("unknown central element `{s}`"));
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let n: usize = rest.strip_suffix(')').and_then(|v| v.trim().parse().ok()).ok_or_else(bad)?;
        if n == 0 {
            return Err(bad());
        }
        match name {
            "linear_h" => Ok(CentralId::LinearH(n)),
            "linear_t" => Ok(CentralId::LinearT(n)),
            "quadratic" => Ok(CentralId::Quadratic(n)),
            "sl_linear" if n >= 2 => Ok(CentralId::SlLinear(n)),
            _ => Err(bad()),
        }
    }
}

fn t_diff(n: usize, i: usize, j: usize) -> ZElement {
    ZElement::t(n, i).sub(&ZElement::t(n, j))
}

/// `h_a = θ_a − θ_b − 1` for the simple root `ε_a − ε_b`.
fn h_root(n: usize, a: usize, b: usize, c: i64) -> CoeffFrac {
    CoeffFrac::theta_diff(n, a, b, c - 1)
}

/// `(h + p)/(h + q)` for `h = θ_ab − 1`.
fn h_ratio(n: usize, a: usize, b: usize, p: i64, q: i64) -> CoeffFrac {
    h_root(n, a, b, p).mul(&CoeffFrac::inv_theta_diff(n, a, b, q - 1))
}

fn sl_inverse_cartan(n: usize, u: usize, v: usize) -> BigRational {
    rat((u.min(v) * (n - u.max(v))) as i64, n as i64)
}

/// The catalog element, brought to the ordered basis of `alg`.
pub fn central_element(alg: &Algebra, id: CentralId, backend: Backend) -> Result<ZElement> {
    let n = alg.n();
    if id.n() != n {
        return Err(Error::DimensionMismatch(id.n(), n));
    }
    let x = match id {
        CentralId::LinearH(_) => {
            let mut c = CoeffFrac::zero(n);
            for k in 1..=n {
                c = c.add(&CoeffFrac::h(n, k));
            }
            ZElement::scalar(c)
        }
        CentralId::LinearT(_) => (1..=n).fold(ZElement::zero(n), |acc, k| acc.add(&ZElement::t(n, k))),
        CentralId::Quadratic(_) => (1..=n).fold(ZElement::zero(n), |acc, k| {
            let c = CoeffFrac::h(n, k).sub(&CoeffFrac::from_int(n, 2 * k as i64));
            acc.add(&ZElement::t(n, k).mul_coeff_right(&c))
        }),
        CentralId::SlLinear(_) => {
            let mut acc = ZElement::zero(n);
            for u in 1..n {
                for v in 1..n {
                    let c = CoeffFrac::theta_diff(n, u, u + 1, 1).scale_by(&sl_inverse_cartan(n, u, v));
                    acc = acc.add(&t_diff(n, v, v + 1).mul_coeff_right(&c));
                }
            }
            acc
        }
        CentralId::Sl2C1 => t_diff(2, 1, 2).mul_coeff_right(&h_root(2, 1, 2, 2)),
        CentralId::Sl2C2 => {
            let t = t_diff(2, 1, 2);
            let zz = alg.mul(&ZElement::z(2, 2, 1), &ZElement::z(2, 1, 2), backend)?;
            let tt = alg.mul(&t, &t, backend)?;
            let h = h_root(2, 1, 2, 0);
            zz.mul_coeff_right(&h_ratio(2, 1, 2, 3, 2))
                .add(&tt.scale(&rat(1, 4)))
                .add(&ZElement::scalar(h.mul(&h_root(2, 1, 2, 4)).scale_by(&rat(1, 4))))
        }
        CentralId::Sl3C1 => {
            let ca = h_root(3, 1, 2, 0).scale_by(&int(2)).add(&h_root(3, 2, 3, 6));
            let cb = h_root(3, 1, 2, 6).add(&h_root(3, 2, 3, 0).scale_by(&int(2)));
            t_diff(3, 1, 2).mul_coeff_right(&ca).add(&t_diff(3, 2, 3).mul_coeff_right(&cb))
        }
        CentralId::Sl3C2 => sl3_quadratic_casimir(alg, backend)?,
    };
    alg.normal_order(&x, backend)
}

fn sl3_quadratic_casimir(alg: &Algebra, backend: Backend) -> Result<ZElement> {
    let n = 3;
    let ta = t_diff(n, 1, 2);
    let tb = t_diff(n, 2, 3);
    let ha = h_root(n, 1, 2, 0);
    let hb = h_root(n, 2, 3, 0);
    let third = rat(1, 3);
    let tt = alg
        .mul(&ta, &ta, backend)?
        .add(&alg.mul(&tb, &tb, backend)?)
        .add(&alg.mul(&ta, &tb, backend)?);
    let hh = ha.mul(&ha).add(&hb.mul(&hb)).add(&ha.mul(&hb));
    let zz = |i: usize, j: usize| alg.mul(&ZElement::z(n, j, i), &ZElement::z(n, i, j), backend);
    // θ_13 + c = h_a + h_b + 2 + c
    let long = CoeffFrac::theta_diff(n, 1, 3, 2)
        .mul(&CoeffFrac::inv_theta_diff(n, 1, 3, 1))
        .mul(
            &CoeffFrac::one(n)
                .add(&CoeffFrac::inv_theta_diff(n, 1, 2, 0))
                .add(&CoeffFrac::inv_theta_diff(n, 2, 3, 0)),
        );
    Ok(tt
        .scale(&third)
        .add(&zz(1, 2)?.mul_coeff_right(&h_ratio(n, 1, 2, 3, 2)))
        .add(&zz(2, 3)?.mul_coeff_right(&h_ratio(n, 2, 3, 3, 2)))
        .add(&zz(1, 3)?.mul_coeff_right(&long))
        .add(&ZElement::scalar(hh.scale_by(&third).add(&ha.add(&hb).scale_by(&int(2))))))
}

/// Whether `x` commutes with every generator.
pub fn is_central(alg: &Algebra, x: &ZElement, backend: Backend) -> Result<bool> {
    require_weight_zero(x)?;
    let n = alg.n();
    let gens: Vec<GeneratorId> = GeneratorId::all(n).collect();
    let bad = gens
        .par_iter()
        .map(|&g| Ok(!alg.commutator(x, &alg.generator(g), backend)?.is_zero()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(!bad.into_iter().any(|b| b))
}

fn require_weight_zero(x: &ZElement) -> Result<()> {
    match x.weight() {
        Some(w) if w.is_zero() => Ok(()),
        _ => Err(Error::NonzeroWeight),
    }
}

/// Outcome of a stabilization check.
#[derive(Clone, Debug)]
pub struct StabilizationReport {
    /// `ι(x)∘ι(y) − ι(x∘y)` in the block-adapted ordered basis.
    pub difference: ZElement,
    /// Every monomial of the difference contains a cross-block lowering and a
    /// cross-block raising generator.
    pub in_j: bool,
}

/// Outcome of a cut homomorphism check.
#[derive(Clone, Debug)]
pub struct CutReport {
    pub left: bool,
    pub right: bool,
    pub cut_central: bool,
}

impl CutReport {
    pub fn holds(&self) -> bool {
        self.left && self.right && self.cut_central
    }
}

/// The split `gl_n ⊕ gl_m ⊂ gl_{n+m}` with the three algebras involved.
pub struct BlockSplit {
    n: usize,
    m: usize,
    left: Algebra,
    right: Algebra,
    full: Algebra,
}

impl BlockSplit {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument("both blocks must be nonempty".into()));
        }
        Ok(BlockSplit {
            n,
            m,
            left: Algebra::default_for(n),
            right: Algebra::default_for(m),
            full: Algebra::new(TotalOrder::block_adapted(n + m, n)?),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn total(&self) -> usize {
        self.n + self.m
    }

    pub fn left(&self) -> &Algebra {
        &self.left
    }

    pub fn right(&self) -> &Algebra {
        &self.right
    }

    /// `Z_{n+m}` with the block-adapted order.
    pub fn full(&self) -> &Algebra {
        &self.full
    }

    pub fn is_cross_lowering(&self, g: GeneratorId) -> bool {
        g.i() > self.n && g.j() <= self.n
    }

    pub fn is_cross_raising(&self, g: GeneratorId) -> bool {
        g.i() <= self.n && g.j() > self.n
    }

    fn is_cross(&self, g: GeneratorId) -> bool {
        self.is_cross_lowering(g) || self.is_cross_raising(g)
    }

    /// `θ_k ↦ θ_k` into the big ring.
    pub fn embed_left_coeff(&self, c: &CoeffFrac) -> Result<CoeffFrac> {
        let total = self.total();
        let images: Vec<_> = (0..self.n).map(|k| (unit(total, k), BigRational::zero())).collect();
        c.substitute_affine(&images, total)
    }

    /// `θ_k ↦ θ_{n+k} + n` into the big ring.
    pub fn embed_right_coeff(&self, c: &CoeffFrac) -> Result<CoeffFrac> {
        let total = self.total();
        let images: Vec<_> = (0..self.m).map(|k| (unit(total, self.n + k), int(self.n as i64))).collect();
        c.substitute_affine(&images, total)
    }

    /// Back from the big ring to the first block; fails if a coefficient
    /// involves second-block variables.
    pub fn restrict_left_coeff(&self, c: &CoeffFrac) -> Result<CoeffFrac> {
        if depends_on(c, self.n..self.total()) {
            return Err(Error::InvalidArgument("coefficient involves second-block variables".into()));
        }
        let images: Vec<_> = (0..self.total())
            .map(|k| if k < self.n { (unit(self.n, k), BigRational::zero()) } else { (vec![BigRational::zero(); self.n], BigRational::zero()) })
            .collect();
        c.substitute_affine(&images, self.n)
    }

    /// `x ⊗ 1`.
    pub fn lift_left(&self, x: &ZElement) -> Result<ZElement> {
        self.check_dim(x, self.n)?;
        let mut out = ZElement::zero(self.total());
        for (mono, c) in x.iter() {
            out.add_term(mono.clone(), self.embed_left_coeff(c)?);
        }
        Ok(out)
    }

    /// `1 ⊗ y`.
    pub fn lift_right(&self, y: &ZElement) -> Result<ZElement> {
        self.check_dim(y, self.m)?;
        let mut out = ZElement::zero(self.total());
        for (mono, c) in y.iter() {
            out.add_term(mono.iter().map(|g| g.shifted(self.n)).collect(), self.embed_right_coeff(c)?);
        }
        Ok(out)
    }

    /// `x ⊗ y`.
    pub fn tensor(&self, x: &ZElement, y: &ZElement) -> Result<ZElement> {
        self.tensor_mul(&self.lift_left(x)?, &self.lift_right(y)?)
    }

    fn check_dim(&self, x: &ZElement, n: usize) -> Result<()> {
        if x.n() != n {
            return Err(Error::DimensionMismatch(x.n(), n));
        }
        Ok(())
    }

    /// Split a block-internal word into its two parts, the second unshifted.
    fn split_word(&self, w: &[GeneratorId]) -> Result<(Monomial, Monomial)> {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for &g in w {
            if self.is_cross(g) {
                return Err(Error::InvalidArgument(format!("{g} crosses the block boundary")));
            }
            if g.i() <= self.n {
                l.push(g);
            } else {
                r.push(GeneratorId::new(g.i() - self.n, g.j() - self.n));
            }
        }
        Ok((l, r))
    }

    fn join(&self, l: &[GeneratorId], r: &[GeneratorId]) -> Monomial {
        l.iter().copied().chain(r.iter().map(|g| g.shifted(self.n))).collect()
    }

    /// The product of `Z_n ⊗ Z_m` extended by the Cartan ring of `gl_{n+m}`.
    pub fn tensor_mul(&self, a: &ZElement, b: &ZElement) -> Result<ZElement> {
        let total = self.total();
        self.check_dim(a, total)?;
        self.check_dim(b, total)?;
        let mut out = ZElement::zero(total);
        for (ma, ca) in a.iter() {
            let (la, ra) = self.split_word(ma)?;
            for (mb, cb) in b.iter() {
                let (lb, rb) = self.split_word(mb)?;
                let c = ca.shift(&mono_weight(total, mb)).mul(cb);
                let lp = self.left.normal_word(&[la.as_slice(), lb.as_slice()].concat())?;
                let rp = self.right.normal_word(&[ra.as_slice(), rb.as_slice()].concat())?;
                for (pl, cl) in lp.iter() {
                    let cl = self.embed_left_coeff(cl)?;
                    for (pr, cr) in rp.iter() {
                        let cr = self.embed_right_coeff(cr)?;
                        out.add_term(self.join(pl, pr), cl.mul(&cr).mul(&c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `ι_{n,m}`: the tensor element read in the double coset space of
    /// `gl_{n+m}`, expressed in the block-adapted ordered basis.
    pub fn iota(&self, x: &ZElement) -> Result<ZElement> {
        let total = self.total();
        self.check_dim(x, total)?;
        let order = self.full.order();
        let mut acc = CosetTerms::new();
        for (mono, c) in x.iter() {
            let (l, r) = self.split_word(mono)?;
            let lc = self.left.coset_of_word(&l)?;
            let rc = self.right.coset_of_word(&r)?;
            for (pl, cl) in lc.iter() {
                let cl = self.embed_left_coeff(cl)?;
                for (pr, cr) in rc.iter() {
                    let cr = self.embed_right_coeff(cr)?;
                    // letters of different blocks commute in the enveloping algebra
                    let mut word = self.join(pl, pr);
                    order.sort(&mut word);
                    coset_add(&mut acc, &word, cl.mul(&cr).mul(c));
                }
            }
        }
        self.full.from_coset(acc)
    }

    /// `π_{n,m}`: order in the block-adapted basis, drop every monomial with a
    /// cross-block generator and read the rest in `Z_n ⊗ Z_m`.
    pub fn pi(&self, x: &ZElement, backend: Backend) -> Result<ZElement> {
        self.check_dim(x, self.total())?;
        let ordered = self.full.normal_order(x, backend)?;
        let mut out = ZElement::zero(self.total());
        for (mono, c) in ordered.iter() {
            if mono.iter().any(|&g| self.is_cross(g)) {
                continue;
            }
            let (l, r) = self.split_word(mono)?;
            out.add_term(self.join(&l, &r), c.clone());
        }
        Ok(out)
    }

    /// Every monomial of `d`, in the block-adapted basis, contains both a
    /// cross-block lowering and a cross-block raising generator.
    pub fn in_j(&self, d: &ZElement, backend: Backend) -> Result<bool> {
        let ordered = self.full.normal_order(d, backend)?;
        let all = ordered.iter().all(|(mono, _)| {
            mono.iter().any(|&g| self.is_cross_lowering(g)) && mono.iter().any(|&g| self.is_cross_raising(g))
        });
        Ok(all)
    }

    /// `ι(x)∘ι(y) − ι(x∘y)` and its membership in `V ∩ V'`.
    pub fn check_stabilization(&self, x: &ZElement, y: &ZElement, backend: Backend) -> Result<StabilizationReport> {
        let lhs = self.full.mul(&self.iota(x)?, &self.iota(y)?, backend)?;
        let rhs = self.iota(&self.tensor_mul(x, y)?)?;
        let difference = lhs.sub(&rhs);
        let in_j = self.in_j(&difference, backend)?;
        Ok(StabilizationReport { difference, in_j })
    }

    /// Whether a tensor element commutes with every generator of both blocks.
    pub fn is_central_tensor(&self, x: &ZElement) -> Result<bool> {
        require_weight_zero(x)?;
        let gens: Vec<ZElement> = GeneratorId::all(self.n)
            .map(|g| self.lift_left(&ZElement::generator(self.n, g)))
            .chain(GeneratorId::all(self.m).map(|g| self.lift_right(&ZElement::generator(self.m, g))))
            .collect::<Result<_>>()?;
        let bad = gens
            .par_iter()
            .map(|g| Ok(self.tensor_mul(x, g)? != self.tensor_mul(g, x)?))
            .collect::<Result<Vec<bool>>>()?;
        Ok(!bad.into_iter().any(|b| b))
    }

    /// `π(x∘y) = π(x)π(y)`, `π(y∘x) = π(y)π(x)` and centrality of `π(x)` for
    /// central `x`.
    pub fn check_cut_homomorphism(&self, x: &ZElement, y: &ZElement, backend: Backend) -> Result<CutReport> {
        if !is_central(&self.full, x, backend)? {
            return Err(Error::NotCentral);
        }
        let px = self.pi(x, backend)?;
        let py = self.pi(y, backend)?;
        let left = self.pi(&self.full.mul(x, y, backend)?, backend)? == self.tensor_mul(&px, &py)?;
        let right = self.pi(&self.full.mul(y, x, backend)?, backend)? == self.tensor_mul(&py, &px)?;
        let cut_central = self.is_central_tensor(&px)?;
        Ok(CutReport { left, right, cut_central })
    }

    /// For `m = 1`: write a tensor element as `Σ X_ij ⊗ t^{∘i} h^j`, where `t`
    /// and `h` are the generator and Cartan variable of the second block.
    /// Returns `(i, j, X_ij)` with `X_ij ∈ Z_n`.
    pub fn coefficients_in_last(&self, x: &ZElement) -> Result<Vec<(usize, usize, ZElement)>> {
        if self.m != 1 {
            return Err(Error::InvalidArgument("expansion needs a one-dimensional second block".into()));
        }
        let total = self.total();
        let last = total - 1;
        // θ_{n+1} = h_{n+1} − (n + 1)
        let images: Vec<_> = (0..total)
            .map(|k| (unit(total, k), if k == last { int(-(total as i64)) } else { BigRational::zero() }))
            .collect();
        let mut parts: std::collections::BTreeMap<(usize, usize), ZElement> = Default::default();
        for (mono, c) in x.iter() {
            let (l, r) = self.split_word(mono)?;
            let i = r.len();
            let c = c.substitute_affine(&images, total)?;
            for (j, cj) in powers_of(&c, last)? {
                let cj = self.restrict_left_coeff(&cj)?;
                parts.entry((i, j)).or_insert_with(|| ZElement::zero(self.n)).add_term(l.clone(), cj);
            }
        }
        Ok(parts.into_iter().filter(|(_, v)| !v.is_zero()).map(|((i, j), v)| (i, j, v)).collect())
    }
}

fn unit(n: usize, k: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[k] = BigRational::one();
    v
}

fn depends_on(c: &CoeffFrac, vars: std::ops::Range<usize>) -> bool {
    let n = c.n();
    let num = vars.clone().any(|k| c.num().degree_in(k) > 0);
    let den = c.den().iter().any(|(f, _)| {
        let co = f.coeffs_big(n);
        vars.clone().any(|k| !co[k].is_zero())
    });
    num || den
}

/// `c = Σ_j c_j θ_k^j` with `c_j` free of `θ_k`; the denominator must not
/// involve `θ_k`.
pub fn powers_of(c: &CoeffFrac, k: usize) -> Result<Vec<(usize, CoeffFrac)>> {
    let n = c.n();
    if c.den().iter().any(|(f, _)| !f.coeffs_big(n)[k].is_zero()) {
        return Err(Error::InvalidArgument(format!("denominator involves variable {}", k + 1)));
    }
    let mut den = CoeffFrac::one(n);
    for (f, m) in c.den() {
        let inv = CoeffFrac::from_poly(f.to_poly(n)).inv()?;
        for _ in 0..*m {
            den = den.mul(&inv);
        }
    }
    let num = c.scaled_num();
    let mut by_power: std::collections::BTreeMap<usize, Vec<_>> = Default::default();
    for (e, q) in num.terms() {
        by_power.entry(e.get(k) as usize).or_default().push((e.with(k, 0), q.clone()));
    }
    Ok(by_power
        .into_iter()
        .map(|(j, terms)| (j, CoeffFrac::from_poly(ThetaPoly::from_terms(n, terms)).mul(&den)))
        .collect())
}
