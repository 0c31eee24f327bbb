//! The defining relation families of `Z_n`, each instance stored as an
//! unevaluated expression whose value must be zero.

use std::fmt;

use crate::coeff::{fa, fap, fb, fbp, fcp, CoeffFrac};
use crate::error::{Error, Result};

use super::algebra::{Algebra, Backend};
use super::element::ZElement;
use super::vars::{tring, zhat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `z_ij z_ik` and `z_ji z_ki` with a shared index.
    One,
    /// Four distinct indices.
    Two,
    /// Three distinct indices, written in `ẑ, t̊`.
    ThreeA,
    /// The mixed `z, ẑ` form of [`Family::ThreeA`].
    ThreeACompact,
    /// `ẑ_ij t̊_l`.
    ThreeB,
    /// `[t̊_i, t̊_j] = 0`.
    FourA,
    /// `[ẑ_ij, ẑ_ji]`.
    FourB,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::One,
        Family::Two,
        Family::ThreeA,
        Family::ThreeACompact,
        Family::ThreeB,
        Family::FourA,
        Family::FourB,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::One => "1",
            Family::Two => "2",
            Family::ThreeA => "3a",
            Family::ThreeACompact => "3a-compact",
            Family::ThreeB => "3b",
            Family::FourA => "4a",
            Family::FourB => "4b",
        }
    }

    /// Parse a tag; `all` expands to every family.
    pub fn parse_list(s: &str) -> Result<Vec<Family>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            if part == "all" {
                out.extend(Family::ALL);
                continue;
            }
            match Family::ALL.iter().find(|f| f.tag() == part) {
                Some(f) => out.push(*f),
                None => return Err(Error::InvalidArgument(format!("unknown relation family `{part}`"))),
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `factors[0] ∘ factors[1] ∘ ⋯ · coeff`.
#[derive(Clone, Debug)]
pub struct RelTerm {
    pub factors: Vec<ZElement>,
    pub coeff: CoeffFrac,
}

#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub family: Family,
    pub indices: Vec<usize>,
    /// Which line of the family, when it has several.
    pub variant: &'static str,
    pub n: usize,
    pub terms: Vec<RelTerm>,
}

impl RelationInstance {
    /// `LHS − RHS` in the ordered basis.
    pub fn evaluate(&self, alg: &Algebra, backend: Backend) -> Result<ZElement> {
        if alg.n() != self.n {
            return Err(Error::DimensionMismatch(alg.n(), self.n));
        }
        let mut acc = ZElement::zero(self.n);
        for t in &self.terms {
            let x = alg.product(&t.factors, backend)?;
            acc = acc.add(&x.mul_coeff_right(&t.coeff));
        }
        Ok(acc)
    }

    pub fn label(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        if self.variant.is_empty() {
            format!("{}({})", self.family, idx.join(","))
        } else {
            format!("{}({}) {}", self.family, idx.join(","), self.variant)
        }
    }
}

/// Builder for one relation `Σ ± factors · coeff`.
struct Rel {
    n: usize,
    terms: Vec<RelTerm>,
}

impl Rel {
    fn new(n: usize) -> Self {
        Rel { n, terms: Vec::new() }
    }

    fn lhs(mut self, factors: Vec<ZElement>, coeff: CoeffFrac) -> Self {
        self.terms.push(RelTerm { factors, coeff });
        self
    }

    fn rhs(mut self, factors: Vec<ZElement>, coeff: CoeffFrac) -> Self {
        self.terms.push(RelTerm { factors, coeff: coeff.neg() });
        self
    }

    fn finish(self, family: Family, indices: Vec<usize>, variant: &'static str) -> RelationInstance {
        RelationInstance { family, indices, variant, n: self.n, terms: self.terms }
    }
}

/// `θ_ij + c`.
fn th(n: usize, i: usize, j: usize, c: i64) -> CoeffFrac {
    CoeffFrac::theta_diff(n, i, j, c)
}

/// `1/(θ_ij + c)`.
fn ith(n: usize, i: usize, j: usize, c: i64) -> CoeffFrac {
    CoeffFrac::inv_theta_diff(n, i, j, c)
}

fn one(n: usize) -> CoeffFrac {
    CoeffFrac::one(n)
}

fn z(n: usize, i: usize, j: usize) -> ZElement {
    ZElement::z(n, i, j)
}

fn prod(cs: &[CoeffFrac]) -> CoeffFrac {
    cs.iter().skip(1).fold(cs[0].clone(), |a, b| a.mul(b))
}

fn family_one(n: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in j + 1..=n {
                if i == j || i == k {
                    continue;
                }
                out.push(
                    Rel::new(n)
                        .lhs(vec![z(n, i, j), z(n, i, k)], one(n))
                        .rhs(vec![z(n, i, k), z(n, i, j)], fa(n, k, j))
                        .finish(Family::One, vec![i, j, k], "row"),
                );
                out.push(
                    Rel::new(n)
                        .lhs(vec![z(n, j, i), z(n, k, i)], one(n))
                        .rhs(vec![z(n, k, i), z(n, j, i)], fap(n, k, j))
                        .finish(Family::One, vec![i, j, k], "column"),
                );
            }
        }
    }
    out
}

fn family_two(n: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=n {
        for k in i + 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    if [i, k].contains(&j) || [i, k].contains(&l) || j == l {
                        continue;
                    }
                    let d = ith(n, i, k, 0).sub(&ith(n, j, l, 0));
                    let swap = if j < l { one(n) } else { fap(n, j, l).mul(&fap(n, l, j)) };
                    out.push(
                        Rel::new(n)
                            .lhs(vec![z(n, i, j), z(n, k, l)], one(n))
                            .rhs(vec![z(n, k, l), z(n, i, j)], swap)
                            .rhs(vec![z(n, k, j), z(n, i, l)], d)
                            .finish(Family::Two, vec![i, j, k, l], ""),
                    );
                }
            }
        }
    }
    out
}

/// The right-hand side shared by both forms of family 3a.  `compact` swaps
/// `ẑ_il` for `z_il` and `ẑ_al ẑ_ia` for `ẑ_al z_ia`.
fn three_a_rhs(rel: Rel, i: usize, k: usize, l: usize, compact: bool) -> Rel {
    let n = rel.n;
    let ti_tk = tring(n, i).sub(&tring(n, k));
    let tk_tl = tring(n, k).sub(&tring(n, l));
    let c1 = th(n, i, l, 1).mul(&ith(n, i, k, 0)).mul(&ith(n, i, l, 0)).neg();
    let c2 = th(n, i, l, -1).mul(&ith(n, k, l, 0)).mul(&ith(n, i, l, 0)).neg();
    let zil = if compact { z(n, i, l) } else { zhat(n, i, l) };
    let mut rel = rel
        .rhs(vec![ti_tk, ZElement::scalar(c1), zil.clone()], one(n))
        .rhs(vec![tk_tl, ZElement::scalar(c2), zil], one(n));
    for a in (1..=n).filter(|a| ![i, k, l].contains(a)) {
        let zia = if compact { z(n, i, a) } else { zhat(n, i, a) };
        rel = rel.rhs(vec![zhat(n, a, l), zia], fb(n, a, i).mul(&ith(n, k, a, 1)));
    }
    rel
}

fn family_three_a(n: usize, compact: bool) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            for l in 1..=n {
                if i == k || k == l || i == l {
                    continue;
                }
                let rel = if compact {
                    let x = if k < l {
                        fap(n, i, k)
                    } else {
                        prod(&[fap(n, i, k), fap(n, l, k), fb(n, l, k)])
                    };
                    Rel::new(n)
                        .lhs(vec![z(n, i, k), zhat(n, k, l)], x)
                        .lhs(vec![zhat(n, k, l), z(n, i, k)], fb(n, k, i).neg())
                } else {
                    let x = if i < k && k < l {
                        fap(n, i, k)
                    } else if i < l && l < k {
                        prod(&[fap(n, i, k), fap(n, l, k), fb(n, l, k)])
                    } else if k < i && i < l {
                        fa(n, k, i)
                    } else if k < l && l < i {
                        prod(&[fa(n, k, i), fa(n, l, i), fbp(n, l, i)])
                    } else if l < i && i < k {
                        prod(&[fap(n, i, k), fap(n, l, k), fb(n, l, k), fa(n, l, i), fbp(n, l, i)])
                    } else {
                        prod(&[fa(n, k, i), fap(n, l, k), fb(n, l, k), fa(n, l, i), fbp(n, l, i)])
                    };
                    Rel::new(n)
                        .lhs(vec![zhat(n, i, k), zhat(n, k, l)], x)
                        .lhs(vec![zhat(n, k, l), zhat(n, i, k)], fb(n, k, i).neg())
                };
                let family = if compact { Family::ThreeACompact } else { Family::ThreeA };
                out.push(three_a_rhs(rel, i, k, l, compact).finish(family, vec![i, k, l], ""));
            }
        }
    }
    out
}

fn family_three_b(n: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let others = || (1..=n).filter(move |&a| a != i && a != j);
            let zij = zhat(n, i, j);
            let (ti, tj) = (tring(n, i), tring(n, j));

            let mut rel = Rel::new(n)
                .lhs(vec![zij.clone(), ti.clone()], one(n))
                .rhs(vec![ti.clone(), zij.clone()], fcp(n, j, i))
                .rhs(vec![tj.clone(), zij.clone()], ith(n, i, j, 2).neg());
            for a in others() {
                rel = rel.rhs(vec![zhat(n, a, j), zhat(n, i, a)], ith(n, i, a, 2).neg());
            }
            out.push(rel.finish(Family::ThreeB, vec![i, j, i], "t_i"));

            let aa = fa(n, i, j).mul(&fap(n, j, i));
            let mut rel = Rel::new(n)
                .lhs(vec![zij.clone(), tj.clone()], one(n))
                .rhs(vec![ti.clone(), zij.clone()], fcp(n, j, i).mul(&ith(n, i, j, -1)).neg())
                .rhs(vec![tj.clone(), zij.clone()], aa.mul(&fb(n, j, i)));
            for a in others() {
                rel = rel.rhs(vec![zhat(n, a, j), zhat(n, i, a)], aa.mul(&fb(n, a, i)).mul(&ith(n, j, a, 1)));
            }
            out.push(rel.finish(Family::ThreeB, vec![i, j, j], "t_j"));

            for k in others() {
                let tk = tring(n, k);
                let common = th(n, i, j, 1).mul(&ith(n, i, k, -1)).mul(&ith(n, j, k, -1));
                let ci = prod(&[th(n, i, j, 3), fb(n, j, i), ith(n, i, k, -1), ith(n, i, k, 1), ith(n, j, k, -1)]);
                let cj = prod(&[th(n, i, j, 1), fb(n, j, i), ith(n, i, k, -1), ith(n, j, k, -1), ith(n, j, k, -1)]);
                let ck = prod(&[fa(n, i, k), fa(n, k, i), fa(n, j, k), fbp(n, j, k)]);
                let mut rel = Rel::new(n)
                    .lhs(vec![zij.clone(), tk.clone()], one(n))
                    .rhs(vec![ti.clone(), zij.clone()], ci)
                    .rhs(vec![tj.clone(), zij.clone()], cj)
                    .rhs(vec![tk, zij.clone()], ck)
                    .rhs(vec![zhat(n, k, j), zhat(n, i, k)], common.mul(&fb(n, k, i)).neg());
                for a in others().filter(|&a| a != k) {
                    rel = rel.rhs(
                        vec![zhat(n, a, j), zhat(n, i, a)],
                        prod(&[common.clone(), fb(n, a, i), ith(n, k, a, 1)]).neg(),
                    );
                }
                out.push(rel.finish(Family::ThreeB, vec![i, j, k], "t_k"));
            }
        }
    }
    out
}

fn family_four_a(n: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(
                Rel::new(n)
                    .lhs(vec![tring(n, i), tring(n, j)], one(n))
                    .rhs(vec![tring(n, j), tring(n, i)], one(n))
                    .finish(Family::FourA, vec![i, j], ""),
            );
        }
    }
    out
}

fn family_four_b(n: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let d = tring(n, i).sub(&tring(n, j));
            let mut rel = Rel::new(n)
                .lhs(vec![zhat(n, i, j), zhat(n, j, i)], one(n))
                .lhs(vec![zhat(n, j, i), zhat(n, i, j)], one(n).neg())
                .rhs(Vec::new(), th(n, i, j, 0))
                .rhs(vec![d.clone(), d], ith(n, i, j, 0).neg());
            for a in (1..=n).filter(|&a| a != i && a != j) {
                rel = rel
                    .rhs(vec![zhat(n, a, i), zhat(n, i, a)], ith(n, j, a, 1))
                    .rhs(vec![zhat(n, a, j), zhat(n, j, a)], ith(n, i, a, 1).neg());
            }
            out.push(rel.finish(Family::FourB, vec![i, j], ""));
        }
    }
    out
}

/// Every instance of `family` in `Z_n`; empty when `n` is too small.
pub fn enumerate(n: usize, family: Family) -> Vec<RelationInstance> {
    match family {
        Family::One => family_one(n),
        Family::Two => family_two(n),
        Family::ThreeA => family_three_a(n, false),
        Family::ThreeACompact => family_three_a(n, true),
        Family::ThreeB => family_three_b(n),
        Family::FourA => family_four_a(n),
        Family::FourB => family_four_b(n),
    }
}

/// One instance, looked up by family, index tuple and (when ambiguous) line.
pub fn relation_family(n: usize, family: Family, indices: &[usize], variant: Option<&str>) -> Result<RelationInstance> {
    if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    enumerate(n, family)
        .into_iter()
        .find(|r| r.indices == indices && variant.is_none_or(|v| r.variant == v))
        .ok_or_else(|| Error::InvalidArgument(format!("no relation of family {family} with indices {indices:?}")))
}
