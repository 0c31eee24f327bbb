//! Text, LaTeX and JSON output of elements and coefficients.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::coeff::{CoeffFrac, ThetaPoly};
use crate::error::{Error, Result};
use crate::lattice::GeneratorId;
use crate::zalg::ZElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            _ => Err(Error::InvalidArgument(format!("unknown format `{s}`"))),
        }
    }
}

/// Which Cartan variables coefficients are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vars {
    Theta,
    /// `h_k = θ_k + k`
    H,
}

impl FromStr for Vars {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta" => Ok(Vars::Theta),
            "h" => Ok(Vars::H),
            _ => Err(Error::InvalidArgument(format!("unknown variables `{s}`"))),
        }
    }
}

/// Rewrite a coefficient so that variable `k` stands for `h_k`.
pub fn to_h_vars(c: &CoeffFrac) -> CoeffFrac {
    let n = c.n();
    let images: Vec<_> = (0..n)
        .map(|k| {
            let mut co = vec![BigRational::zero(); n];
            co[k] = BigRational::one();
            (co, BigRational::from_integer(BigInt::from(-(k as i64) - 1)))
        })
        .collect();
    c.substitute_affine(&images, n).expect("shift of a linear form stays linear")
}

fn text_name(vars: Vars) -> impl Fn(usize) -> String {
    move |k| match vars {
        Vars::Theta => format!("theta[{}]", k + 1),
        Vars::H => format!("h[{}]", k + 1),
    }
}

fn in_vars(c: &CoeffFrac, vars: Vars) -> CoeffFrac {
    match vars {
        Vars::Theta => c.clone(),
        Vars::H => to_h_vars(c),
    }
}

/// A coefficient as parseable text.
pub fn coeff_text(c: &CoeffFrac, vars: Vars) -> String {
    coeff_text_named(&in_vars(c, vars), &text_name(vars))
}

/// A coefficient as parseable text with caller-chosen variable names; a
/// bare multi-term polynomial is parenthesized.
pub fn coeff_text_named(c: &CoeffFrac, name: &dyn Fn(usize) -> String) -> String {
    let s = c.render(name);
    let bare_sum = c.den().is_empty() && c.scale().denom().is_one() && c.num().terms().len() > 1;
    if bare_sum {
        format!("({s})")
    } else {
        s
    }
}

pub fn generator_text(g: GeneratorId) -> String {
    g.to_string()
}

fn monomial_text(m: &[GeneratorId]) -> String {
    m.iter().map(|g| generator_text(*g)).collect::<Vec<_>>().join("*")
}

/// Terms sorted for display: longer monomials first.
fn display_terms(x: &ZElement) -> Vec<(&Vec<GeneratorId>, &CoeffFrac)> {
    let mut terms: Vec<_> = x.iter().collect();
    terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
    terms
}

/// Split off a leading minus sign when the negated coefficient renders
/// without one.
fn signed(c: &CoeffFrac, render: &dyn Fn(&CoeffFrac) -> String) -> (bool, String) {
    let s = render(c);
    if s.starts_with('-') {
        let t = render(&c.neg());
        if !t.starts_with('-') {
            return (true, t);
        }
    }
    (false, s)
}

/// Generic sum-of-terms writer shared by the text and LaTeX forms.
pub fn join_terms(
    terms: &[(String, CoeffFrac)],
    coeff: &dyn Fn(&CoeffFrac) -> String,
    times: &str,
) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (mono, c)) in terms.iter().enumerate() {
        let (neg, body) = if c.is_one() && !mono.is_empty() {
            (false, mono.clone())
        } else if c.neg().is_one() && !mono.is_empty() {
            (true, mono.clone())
        } else {
            let (neg, s) = signed(c, coeff);
            if mono.is_empty() {
                (neg, s)
            } else {
                (neg, format!("{mono}{times}{s}"))
            }
        };
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

/// An element as parseable text, e.g. `z[1,2]*z[1,3] * (theta[2]-theta[3]+1)/(theta[2]-theta[3])`.
pub fn element_text(x: &ZElement, vars: Vars) -> String {
    let terms: Vec<(String, CoeffFrac)> =
        display_terms(x).into_iter().map(|(m, c)| (monomial_text(m), c.clone())).collect();
    join_terms(&terms, &|c| coeff_text(c, vars), " * ")
}

fn latex_name(vars: Vars) -> impl Fn(usize) -> String {
    move |k| match vars {
        Vars::Theta => format!("\\theta_{{{}}}", k + 1),
        Vars::H => format!("h_{{{}}}", k + 1),
    }
}

fn latex_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

/// A polynomial in LaTeX with juxtaposed factors.
pub fn poly_latex(p: &ThetaPoly, name: &dyn Fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (e, c)) in p.terms().iter().enumerate() {
        match (idx, c.is_negative()) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let a = c.abs();
        let mut vars = String::new();
        for k in 0..p.n() {
            match e.get(k) {
                0 => {}
                1 => vars.push_str(&name(k)),
                m => vars.push_str(&format!("{}^{{{m}}}", name(k))),
            }
        }
        if vars.is_empty() || !a.is_one() {
            s.push_str(&latex_rational(&a));
        }
        s.push_str(&vars);
    }
    s
}

/// A coefficient in LaTeX with caller-chosen variable names.
pub fn coeff_latex_named(c: &CoeffFrac, name: &dyn Fn(usize) -> String) -> String {
    let n = c.n();
    let top = c.num().scale(&BigRational::from_integer(c.scale().numer().clone()));
    let mut den: Vec<String> = Vec::new();
    if !c.scale().denom().is_one() {
        den.push(c.scale().denom().to_string());
    }
    let single = c.den().len() == 1 && c.den()[0].1 == 1 && den.is_empty();
    for (f, m) in c.den() {
        let body = poly_latex(&f.to_poly(n), name);
        let s = if single { body } else { format!("({body})") };
        den.push(if *m == 1 { s } else { format!("{s}^{{{m}}}") });
    }
    let num = poly_latex(&top, name);
    if den.is_empty() {
        return if top.terms().len() > 1 { format!("({num})") } else { num };
    }
    format!("\\frac{{{num}}}{{{}}}", den.join(""))
}

pub fn coeff_latex(c: &CoeffFrac, vars: Vars) -> String {
    coeff_latex_named(&in_vars(c, vars), &latex_name(vars))
}

pub fn generator_latex(g: GeneratorId) -> String {
    if g.is_diagonal() {
        format!("t_{{{}}}", g.i())
    } else {
        format!("z_{{{}{}}}", g.i(), g.j())
    }
}

pub fn element_latex(x: &ZElement, vars: Vars) -> String {
    let terms: Vec<(String, CoeffFrac)> = display_terms(x)
        .into_iter()
        .map(|(m, c)| (m.iter().map(|g| generator_latex(*g)).collect::<Vec<_>>().join("\\circ "), c.clone()))
        .collect();
    join_terms(&terms, &|c| coeff_latex(c, vars), "\\,")
}

pub fn element_json(x: &ZElement) -> Value {
    x.to_json()
}

pub fn render_element(x: &ZElement, format: Format, vars: Vars) -> String {
    match format {
        Format::Text => element_text(x, vars),
        Format::Latex => element_latex(x, vars),
        Format::Json => element_json(x).to_string(),
    }
}
