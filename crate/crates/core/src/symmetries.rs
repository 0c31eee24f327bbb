//! Zhelobenko automorphisms, braid words, the involutions `ε` and `ω`, and
//! the family of automorphisms of the `sl_2` reduction algebra.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::{fa, fap, fb, int, simple_transposition, CoeffFrac};
use crate::error::{Error, Result};
use crate::jtensor::{coset_add, CosetTerms};
use crate::lattice::{weight_of, GeneratorId, Weight};
use crate::pbw::{mono_weight, sigma_letter, LieGen};
use crate::zalg::{tring, Algebra, Backend, ZElement};

/// Apply the algebra homomorphism determined by generator images and a
/// coefficient map: `g_1∘⋯∘g_k·c ↦ φ(g_1)∘⋯∘φ(g_k)·ψ(c)`.
pub fn apply_hom(
    alg: &Algebra,
    x: &ZElement,
    image: &dyn Fn(GeneratorId) -> Result<ZElement>,
    coeff: &dyn Fn(&CoeffFrac) -> Result<CoeffFrac>,
    backend: Backend,
) -> Result<ZElement> {
    let mut out = ZElement::zero(alg.n());
    for (m, c) in x.iter() {
        let factors = m.iter().map(|g| image(*g)).collect::<Result<Vec<_>>>()?;
        out = out.add(&alg.product(&factors, backend)?.mul_coeff_right(&coeff(c)?));
    }
    Ok(out)
}

fn check_index(alg: &Algebra, i: usize) -> Result<()> {
    if i == 0 || i >= alg.n() {
        return Err(Error::IndexOutOfRange { index: i, n: alg.n() });
    }
    Ok(())
}

/// `θ_k ↦ θ_{σ_i(k)}` on a coefficient.
pub fn sigma_coeff(i: usize, c: &CoeffFrac) -> CoeffFrac {
    c.permute(&simple_transposition(c.n(), i))
}

/// Closed-form image of one generator under `q_i`.
pub fn q_generator(n: usize, i: usize, g: GeneratorId) -> ZElement {
    let ip = i + 1;
    let (k, l) = (g.i(), g.j());
    let one = CoeffFrac::one(n);
    let a = fa(n, i, ip);
    let mono = |r: usize, s: usize, c: CoeffFrac| ZElement::monomial(vec![GeneratorId::new(r, s)], c);
    if k == l {
        let th = CoeffFrac::theta_diff(n, i, ip, 0);
        let inv = CoeffFrac::inv_theta_diff(n, i, ip, -1);
        let big = th.mul(&inv);
        return if k == i {
            mono(i, i, inv.neg()).add(&mono(ip, ip, big))
        } else if k == ip {
            mono(i, i, big).add(&mono(ip, ip, inv.neg()))
        } else {
            mono(k, k, one)
        };
    }
    match (k, l) {
        _ if k == i && l == ip => mono(ip, i, a.mul(&fb(n, i, ip)).neg()),
        _ if k == ip && l == i => mono(i, ip, one.neg()),
        _ if k == i => mono(ip, l, a.neg()),
        _ if l == i => mono(k, ip, one.neg()),
        _ if k == ip => mono(i, l, one),
        _ if l == ip => mono(k, i, a),
        _ => mono(k, l, one),
    }
}

/// `q_i` through the closed-form generator action.
pub fn zhelobenko_fast(alg: &Algebra, i: usize, x: &ZElement, backend: Backend) -> Result<ZElement> {
    check_index(alg, i)?;
    let n = alg.n();
    apply_hom(alg, x, &|g| Ok(q_generator(n, i, g)), &|c| Ok(sigma_coeff(i, c)), backend)
}

/// `q_i` through the defining series
/// `Σ_k (−1)^k/k! ad(e_{i,i+1})^k(σ́_i x) e_{i+1,i}^k Π_{a≤k}(θ_{i,i+1} − a)^{-1}`.
pub fn zhelobenko_oracle(alg: &Algebra, i: usize, x: &ZElement) -> Result<ZElement> {
    check_index(alg, i)?;
    let n = alg.n();
    let pbw = alg.pbw();
    let raise = (i as u8, (i + 1) as u8);
    let lower = LieGen::K((i + 1) as u8, i as u8);
    let mut out = CosetTerms::new();
    for (m, c) in alg.to_coset(x)? {
        let mut sign = 1i64;
        let sm: Vec<GeneratorId> = m
            .iter()
            .map(|g| {
                let (h, s) = sigma_letter(i, LieGen::from_generator(*g));
                sign *= s;
                match h {
                    LieGen::P(a, b) => GeneratorId::new(a as usize, b as usize),
                    _ => unreachable!("σ́ maps E letters to E letters"),
                }
            })
            .collect();
        let right = sigma_coeff(i, &c);
        let mut denom = CoeffFrac::one(n);
        let mut fact = BigInt::from(1);
        for k in 0.. {
            if k > 0 {
                denom = denom.mul(&CoeffFrac::inv_theta_diff(n, i, i + 1, -(k as i64)));
                fact *= k;
            }
            let words = pbw.ad_power(raise, k, &sm);
            if words.is_empty() {
                break;
            }
            let scalar = BigRational::new(BigInt::from(if k % 2 == 0 { sign } else { -sign }), fact.clone());
            let tail = denom.scale_by(&scalar).mul(&right);
            for (w, wc) in words {
                let mut word: Vec<LieGen> = w.iter().map(|g| LieGen::from_generator(*g)).collect();
                word.extend(std::iter::repeat_n(lower, k));
                for (mm, p) in pbw.coset_word(&word).iter() {
                    let t = CoeffFrac::from_poly(p.scale(&int(wc))).mul(&tail);
                    coset_add(&mut out, mm, t);
                }
            }
        }
    }
    alg.from_coset(out)
}

/// `σ́_i²`: a sign on each generator touching `i` or `i+1` exactly once.
pub fn sigma_squared(i: usize, x: &ZElement) -> ZElement {
    let hit = |k: usize| (k == i || k == i + 1) as usize;
    ZElement::from_terms(
        x.n(),
        x.iter().map(|(m, c)| {
            let odd = m.iter().map(|g| hit(g.i()) + hit(g.j())).sum::<usize>() % 2 == 1;
            (m.clone(), if odd { c.neg() } else { c.clone() })
        }),
    )
}

/// `a · x · a^{-1}` for a coefficient `a`.
pub fn conjugate(x: &ZElement, a: &CoeffFrac) -> Result<ZElement> {
    Ok(x.mul_coeff_left(a).mul_coeff_right(&a.inv()?))
}

/// `q_i^{-1}(y) = q_i(θ_{i,i+1} σ́_i²(y) θ_{i,i+1}^{-1})`.
pub fn zhelobenko_inverse(alg: &Algebra, i: usize, y: &ZElement, backend: Backend) -> Result<ZElement> {
    check_index(alg, i)?;
    let th = CoeffFrac::theta_diff(alg.n(), i, i + 1, 0);
    let inner = conjugate(&sigma_squared(i, y), &th)?;
    zhelobenko_fast(alg, i, &inner, backend)
}

/// A word in the braid generators; `-i` stands for `q_i^{-1}`.  The word
/// `[a, b, c]` is the composition `q_a ∘ q_b ∘ q_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord(pub Vec<i32>);

impl BraidWord {
    /// A reduced word of the longest permutation of `S_n`.
    pub fn longest(n: usize) -> Self {
        let mut w = Vec::new();
        for k in 1..n {
            for j in (1..=k).rev() {
                w.push(j as i32);
            }
        }
        BraidWord(w)
    }

    pub fn apply(&self, alg: &Algebra, x: &ZElement, backend: Backend) -> Result<ZElement> {
        let mut y = x.clone();
        for &s in self.0.iter().rev() {
            let i = s.unsigned_abs() as usize;
            y = if s > 0 {
                zhelobenko_fast(alg, i, &y, backend)?
            } else if s < 0 {
                zhelobenko_inverse(alg, i, &y, backend)?
            } else {
                return Err(Error::InvalidArgument("braid letter 0".into()));
            };
        }
        Ok(y)
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                p.trim()
                    .parse::<i32>()
                    .ok()
                    .filter(|&v| v != 0)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad braid letter `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BraidWord(letters))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

/// `q_{w0}` through a reduced word.
pub fn q_longest(alg: &Algebra, x: &ZElement, backend: Backend) -> Result<ZElement> {
    BraidWord::longest(alg.n()).apply(alg, x, backend)
}

fn longest_below(n: usize, i: usize, j: usize) -> CoeffFrac {
    let (ip, jp) = (n + 1 - i, n + 1 - j);
    let mut c = CoeffFrac::one(n);
    for a in 1..ip {
        c = c.mul(&fa(n, a, ip));
    }
    for b in jp + 1..=n {
        c = c.mul(&fa(n, jp, b));
    }
    c
}

fn longest_below_inv(n: usize, i: usize, j: usize) -> CoeffFrac {
    let (ip, jp) = (n + 1 - i, n + 1 - j);
    let mut c = CoeffFrac::one(n);
    for a in 1..ip {
        c = c.mul(&fap(n, a, ip));
    }
    for b in jp + 1..=n {
        c = c.mul(&fap(n, jp, b));
    }
    c
}

/// `θ_k ↦ θ_{n+1−k}`.
pub fn reverse_coeff(c: &CoeffFrac) -> CoeffFrac {
    let n = c.n();
    c.permute(&(0..n).rev().collect::<Vec<_>>())
}

/// Closed form of `q_{w0}` on `z_ij`.  Below the diagonal
/// `q_{w0}(z_ij) = (−1)^{i+j} z_{i'j'} Π_{a<i'} A_{a i'} Π_{b>j'} A_{j' b}`.
/// Above it the image is `S^{-1} X S` where `X` is the preimage of `z_ij`
/// under the lower formula.
pub fn q_longest_generator(n: usize, i: usize, j: usize) -> ZElement {
    let (ip, jp) = (n + 1 - i, n + 1 - j);
    let sign = |c: CoeffFrac| if (i + j) % 2 == 1 { c.neg() } else { c };
    if i > j {
        return ZElement::monomial(vec![GeneratorId::z(ip, jp)], sign(longest_below(n, i, j)));
    }
    let x = reverse_coeff(&longest_below_inv(n, ip, jp));
    let s = longest_conjugator(n);
    let w = weight_of(n, GeneratorId::z(ip, jp));
    let mut s_inv = CoeffFrac::one(n);
    for a in 1..=n {
        for b in a + 1..=n {
            s_inv = s_inv.mul(&CoeffFrac::theta_diff(n, a, b, 0).shift(&w).inv().expect("linear factor"));
        }
    }
    let c = x.mul(&s_inv).mul(&s);
    ZElement::monomial(vec![GeneratorId::z(ip, jp)], sign(c))
}

/// `S = Π_{i<j} θ_ij`.
pub fn longest_conjugator(n: usize) -> CoeffFrac {
    let mut s = CoeffFrac::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            s = s.mul(&CoeffFrac::theta_diff(n, i, j, 0));
        }
    }
    s
}

/// `S^{-1} x S`, the action of `q_{w0}^2`.
pub fn longest_conjugation(x: &ZElement) -> ZElement {
    let n = x.n();
    let mut s_inv = CoeffFrac::one(n);
    for a in 1..=n {
        for b in a + 1..=n {
            s_inv = s_inv.mul(&CoeffFrac::inv_theta_diff(n, a, b, 0));
        }
    }
    x.mul_coeff_left(&s_inv).mul_coeff_right(&longest_conjugator(n))
}

/// The anti-involution `ε`: `z_ij ↦ z_ji`, coefficients fixed, products reversed.
pub fn epsilon(alg: &Algebra, x: &ZElement, backend: Backend) -> Result<ZElement> {
    let n = alg.n();
    let mut out = ZElement::zero(n);
    for (m, c) in x.iter() {
        let factors: Vec<ZElement> = m.iter().rev().map(|g| ZElement::z(n, g.j(), g.i())).collect();
        let w = mono_weight(n, m).neg();
        out = out.add(&alg.product(&factors, backend)?.mul_coeff_right(&c.shift(&w)));
    }
    Ok(out)
}

/// `θ_k ↦ −θ_{k'} − (n+1)`, so that `h_k ↦ −h_{k'}`.
pub fn omega_coeff(c: &CoeffFrac) -> Result<CoeffFrac> {
    let n = c.n();
    let images: Vec<(Vec<BigRational>, BigRational)> = (1..=n)
        .map(|k| {
            let mut co = vec![int(0); n];
            co[n - k] = int(-1);
            (co, int(-(n as i64) - 1))
        })
        .collect();
    c.substitute_affine(&images, n)
}

/// The involution `ω(z_ij) = (−1)^{i+j+1} z_{j'i'}`.
pub fn omega(alg: &Algebra, x: &ZElement, backend: Backend) -> Result<ZElement> {
    let n = alg.n();
    let image = |g: GeneratorId| {
        let c = if (g.i() + g.j()) % 2 == 0 { CoeffFrac::one(n).neg() } else { CoeffFrac::one(n) };
        Ok(ZElement::monomial(vec![GeneratorId::new(n + 1 - g.j(), n + 1 - g.i())], c))
    };
    apply_hom(alg, x, &image, &omega_coeff, backend)
}

/// Parameters of an automorphism of the `sl_2` reduction algebra: a sign `β`
/// and a function `γ(h)` given as a coefficient in `θ_12 = h + 1` of `Z_2`.
#[derive(Clone, Debug)]
pub struct Sl2AutParams {
    pub beta: i8,
    pub gamma: CoeffFrac,
}

impl Sl2AutParams {
    pub fn new(beta: i8, gamma: CoeffFrac) -> Result<Self> {
        if beta != 1 && beta != -1 {
            return Err(Error::InvalidArgument("β must be ±1".into()));
        }
        if gamma.n() != 2 {
            return Err(Error::DimensionMismatch(gamma.n(), 2));
        }
        if gamma.is_zero() {
            return Err(Error::InvalidArgument("γ must be nonzero".into()));
        }
        Ok(Sl2AutParams { beta, gamma })
    }

    /// The choice reproducing the Zhelobenko automorphism: `β = −1`, `γ(h) = −1/(h+1)`.
    pub fn zhelobenko() -> Self {
        Sl2AutParams { beta: -1, gamma: CoeffFrac::inv_theta_diff(2, 1, 2, 0).neg() }
    }
}

/// `h ↦ −h−2`, `t ↦ β t (h+2)/h`, `z_+ ↦ z_−/((h−1)γ(h))`, `z_− ↦ z_+ (h+3)γ(h+2)`,
/// extended by `t_1 + t_2 ↦ t_1 + t_2` to all of `Z_2`.
pub fn sl2_general_automorphism(alg: &Algebra, p: &Sl2AutParams, x: &ZElement, backend: Backend) -> Result<ZElement> {
    if alg.n() != 2 {
        return Err(Error::DimensionMismatch(alg.n(), 2));
    }
    let n = 2;
    let half = CoeffFrac::from_rational(n, BigRational::new(1.into(), 2.into()));
    let phi = CoeffFrac::theta_diff(n, 1, 2, 1)
        .mul(&CoeffFrac::inv_theta_diff(n, 1, 2, -1))
        .scale_by(&int(p.beta as i64))
        .mul(&half);
    let t = |k: usize, c: &CoeffFrac| ZElement::monomial(vec![GeneratorId::t(k)], c.clone());
    let gamma_shift = p.gamma.shift(&Weight(vec![1, -1]));
    let z_plus = p.gamma.inv()?.mul(&CoeffFrac::inv_theta_diff(n, 1, 2, -2));
    let z_minus = CoeffFrac::theta_diff(n, 1, 2, 2).mul(&gamma_shift);
    let image = |g: GeneratorId| -> Result<ZElement> {
        Ok(match (g.i(), g.j()) {
            (1, 1) => t(1, &half.add(&phi)).add(&t(2, &half.sub(&phi))),
            (2, 2) => t(1, &half.sub(&phi)).add(&t(2, &half.add(&phi))),
            (1, 2) => ZElement::monomial(vec![GeneratorId::z(2, 1)], z_plus.clone()),
            _ => ZElement::monomial(vec![GeneratorId::z(1, 2)], z_minus.clone()),
        })
    };
    apply_hom(alg, x, &image, &|c| Ok(sigma_coeff(1, c)), backend)
}

/// `q_σ(t̊_i)` for the permutation `σ` of a braid word, against `t̊_{σ(i)}`.
pub fn tring_image(n: usize, word: &BraidWord, i: usize) -> ZElement {
    let mut k = i;
    for &s in word.0.iter().rev() {
        let j = s.unsigned_abs() as usize;
        if k == j {
            k = j + 1;
        } else if k == j + 1 {
            k = j;
        }
    }
    tring(n, k)
}
