//! The triangular change `t ↔ t̊` and the renormalized generators `ẑ`.

use crate::coeff::{fa, fap, CoeffFrac};
use crate::lattice::GeneratorId;
use crate::pbw::mono_weight;

use super::element::ZElement;

/// `M` with `t̊_l = Σ_k t_k M[l][k]` (0-based rows and columns).
pub fn tring_in_t(n: usize) -> Vec<Vec<CoeffFrac>> {
    let mut m = vec![vec![CoeffFrac::zero(n); n]; n];
    for l in 1..=n {
        let mut diag = CoeffFrac::one(n);
        for j in 1..l {
            diag = diag.mul(&fa(n, j, l));
        }
        m[l - 1][l - 1] = diag;
        for k in 1..l {
            let mut c = CoeffFrac::inv_theta_diff(n, k, l, -1).neg();
            for j in 1..k {
                c = c.mul(&fa(n, j, l));
            }
            m[l - 1][k - 1] = c;
        }
    }
    m
}

/// `N` with `t_l = Σ_k t̊_k N[l][k]`.
pub fn t_in_tring(n: usize) -> Vec<Vec<CoeffFrac>> {
    let mut m = vec![vec![CoeffFrac::zero(n); n]; n];
    for l in 1..=n {
        let mut diag = CoeffFrac::one(n);
        for j in 1..l {
            diag = diag.mul(&fap(n, j, l));
        }
        m[l - 1][l - 1] = diag;
        for k in 1..l {
            let mut c = CoeffFrac::inv_theta_diff(n, k, l, 0);
            for j in (1..l).filter(|&j| j != k) {
                c = c.mul(&fap(n, j, k));
            }
            m[l - 1][k - 1] = c;
        }
    }
    m
}

/// `t̊_l` as an element in the `t` variables.
pub fn tring(n: usize, l: usize) -> ZElement {
    let m = tring_in_t(n);
    ZElement::from_terms(n, (1..=n).map(|k| (vec![GeneratorId::t(k)], m[l - 1][k - 1].clone())))
}

/// `Π_{k<i} A_ki`, the factor turning `z_ij` into `ẑ_ij`.
pub fn zhat_factor(n: usize, i: usize) -> CoeffFrac {
    let mut c = CoeffFrac::one(n);
    for k in 1..i {
        c = c.mul(&fa(n, k, i));
    }
    c
}

/// `Π_{k<i} A'_ki`, the inverse of [`zhat_factor`].
pub fn zhat_factor_inv(n: usize, i: usize) -> CoeffFrac {
    let mut c = CoeffFrac::one(n);
    for k in 1..i {
        c = c.mul(&fap(n, k, i));
    }
    c
}

/// `ẑ_ij = z_ij Π_{k<i} A_ki`.
pub fn zhat(n: usize, i: usize, j: usize) -> ZElement {
    ZElement::monomial(vec![GeneratorId::z(i, j)], zhat_factor(n, i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// From the original letters to the new ones.
    To,
    /// From the new letters back to the original ones.
    From,
}

/// Replace every letter by a combination of letters, letter by letter,
/// moving the inserted coefficients to the right of the monomial.
fn substitute_letters(x: &ZElement, image: &dyn Fn(GeneratorId) -> Vec<(GeneratorId, CoeffFrac)>) -> ZElement {
    let n = x.n();
    let mut out = ZElement::zero(n);
    for (m, c) in x.iter() {
        let mut partial: Vec<(Vec<GeneratorId>, CoeffFrac)> = vec![(Vec::new(), CoeffFrac::one(n))];
        for (pos, g) in m.iter().enumerate() {
            let suffix = mono_weight(n, &m[pos + 1..]);
            let mut next = Vec::new();
            for (w, d) in &partial {
                for (h, e) in image(*g) {
                    let mut w2 = w.clone();
                    w2.push(h);
                    next.push((w2, d.mul(&e.shift(&suffix))));
                }
            }
            partial = next;
        }
        for (w, d) in partial {
            out.add_term(w, d.mul(c));
        }
    }
    out
}

/// Rewrite diagonal letters: `To` reads them as `t` and writes `t̊`, `From`
/// reads `t̊` and writes `t`.  Off-diagonal letters are untouched and no
/// reordering happens.
pub fn change_vars_tring(direction: Direction, x: &ZElement) -> ZElement {
    let n = x.n();
    let m = match direction {
        Direction::To => t_in_tring(n),
        Direction::From => tring_in_t(n),
    };
    substitute_letters(x, &|g| {
        if g.is_diagonal() {
            (1..=n)
                .filter(|&k| !m[g.i() - 1][k - 1].is_zero())
                .map(|k| (GeneratorId::t(k), m[g.i() - 1][k - 1].clone()))
                .collect()
        } else {
            vec![(g, CoeffFrac::one(n))]
        }
    })
}

/// Rewrite off-diagonal letters: `To` reads them as `z` and writes `ẑ`,
/// `From` reads `ẑ` and writes `z`.
pub fn change_vars_hs(direction: Direction, x: &ZElement) -> ZElement {
    let n = x.n();
    substitute_letters(x, &|g| {
        if g.is_diagonal() {
            return vec![(g, CoeffFrac::one(n))];
        }
        let c = match direction {
            Direction::From => zhat_factor(n, g.i()),
            Direction::To => zhat_factor_inv(n, g.i()),
        };
        vec![(g, c)]
    })
}
