//! Complete lists of ordering relations for `DR(sl_2)`, `DR(sl_3)` and small
//! `Z_n`, with `sl` letters and Cartan variables for the `sl` targets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::coeff::{rat, CoeffFrac};
use crate::error::{Error, Result};
use crate::lattice::{GeneratorId, TotalOrder};
use crate::render::{coeff_latex_named, coeff_text_named, join_terms, to_h_vars, Vars};
use crate::zalg::{Algebra, Backend, ZElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Sl2,
    Sl3,
    Gl(usize),
}

impl Target {
    pub fn n(&self) -> usize {
        match *self {
            Target::Sl2 => 2,
            Target::Sl3 => 3,
            Target::Gl(n) => n,
        }
    }

    fn is_sl(&self) -> bool {
        !matches!(self, Target::Gl(_))
    }

    /// Number of Cartan variables in the coefficients.
    pub fn vars(&self) -> usize {
        if self.is_sl() {
            self.n() - 1
        } else {
            self.n()
        }
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unsupported table target `{s}`"));
        match s {
            "sl2" => Ok(Target::Sl2),
            "sl3" => Ok(Target::Sl3),
            _ => {
                let digits = s.strip_prefix("gl").ok_or_else(bad)?;
                let digits = digits.trim_start_matches('(').trim_end_matches(')');
                match digits.parse::<usize>() {
                    Ok(n @ 1..=3) => Ok(Target::Gl(n)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Sl2 => f.write_str("sl2"),
            Target::Sl3 => f.write_str("sl3"),
            Target::Gl(n) => write!(f, "gl{n}"),
        }
    }
}

/// A generator of a table: a `gl` letter, a simple-root `t` or the central `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Gl(GeneratorId),
    /// `t_k − t_{k+1}`
    Simple(usize),
    /// `t_1 + ⋯ + t_n`
    Center,
}

impl Letter {
    fn element(&self, n: usize) -> ZElement {
        match *self {
            Letter::Gl(g) => ZElement::generator(n, g),
            Letter::Simple(k) => ZElement::t(n, k).sub(&ZElement::t(n, k + 1)),
            Letter::Center => (1..=n).fold(ZElement::zero(n), |a, k| a.add(&ZElement::t(n, k))),
        }
    }

    fn is_cartan(&self) -> bool {
        match self {
            Letter::Gl(g) => g.is_diagonal(),
            _ => true,
        }
    }

    pub fn name(&self, target: Target, latex: bool) -> String {
        match (*self, target) {
            (Letter::Center, _) => "I".into(),
            (Letter::Simple(k), Target::Sl2 | Target::Gl(_)) if k == 1 && target == Target::Sl2 => "t".into(),
            (Letter::Simple(k), _) => {
                if latex {
                    format!("t_{{{}}}", root_name(k, true))
                } else {
                    format!("t[{}]", root_name(k, false))
                }
            }
            (Letter::Gl(g), Target::Sl2) if !g.is_diagonal() => {
                let s = if g.i() < g.j() { "+" } else { "-" };
                if latex {
                    format!("z_{{{s}}}")
                } else {
                    format!("z[{s}]")
                }
            }
            (Letter::Gl(g), Target::Sl3) if !g.is_diagonal() => {
                let (lo, hi) = (g.i().min(g.j()), g.i().max(g.j()));
                let body = (lo..hi).map(|k| root_name(k, latex)).collect::<Vec<_>>().join(if g.i() < g.j() { "+" } else { "-" });
                let body = if g.i() < g.j() { body } else { format!("-{body}") };
                if latex {
                    format!("z_{{{body}}}")
                } else {
                    format!("z[{body}]")
                }
            }
            (Letter::Gl(g), _) => {
                if latex {
                    crate::render::generator_latex(g)
                } else {
                    g.to_string()
                }
            }
        }
    }
}

fn root_name(k: usize, latex: bool) -> &'static str {
    match (k, latex) {
        (1, false) => "a",
        (2, false) => "b",
        (1, true) => "\\alpha",
        (2, true) => "\\beta",
        _ => "?",
    }
}

/// The letters of a target, earliest first under the given order.
pub fn letters(target: Target, order: &TotalOrder) -> Vec<Letter> {
    let n = target.n();
    let mut out = Vec::new();
    let mut cartan_done = false;
    for g in order.sequence() {
        if g.is_diagonal() && target.is_sl() {
            if !cartan_done {
                out.extend((1..n).map(Letter::Simple));
                cartan_done = true;
            }
        } else {
            out.push(Letter::Gl(g));
        }
    }
    out
}

/// One ordering relation `left ∘ right = Σ monomial · coefficient`.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRelation {
    pub left: Letter,
    pub right: Letter,
    pub rhs: Vec<(Vec<Letter>, CoeffFrac)>,
}

impl TableRelation {
    pub fn coeff_of(&self, m: &[Letter]) -> Option<&CoeffFrac> {
        self.rhs.iter().find(|(k, _)| k == m).map(|(_, c)| c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub target: Target,
    pub order: Vec<Letter>,
    pub relations: Vec<TableRelation>,
}

fn letter_rank(order: &[Letter], l: Letter) -> usize {
    order.iter().position(|&k| k == l).unwrap_or(order.len())
}

/// `θ_k = Σ_{v ≥ k} (h_v + 1)` with `θ_n = 0`, into `n − 1` simple-root
/// variables `h_v`.
pub fn gl_to_sl_coeff(c: &CoeffFrac) -> Result<CoeffFrac> {
    let n = c.n();
    let ones = vec![BigRational::one(); n];
    if c.shift_rational(&ones) != *c {
        return Err(Error::InvalidArgument(format!("coefficient {c} depends on the trace")));
    }
    let images: Vec<_> = (0..n)
        .map(|k| {
            let mut co = vec![BigRational::zero(); n - 1];
            for v in co.iter_mut().skip(k) {
                *v = BigRational::one();
            }
            (co, BigRational::from_integer(BigInt::from((n - 1 - k) as i64)))
        })
        .collect();
    c.substitute_affine(&images, n - 1)
}

/// `t_k = I/n + Σ_v c_kv (t_v − t_{v+1})` with `c_kv = (n − v)/n` for `v ≥ k`
/// and `−v/n` otherwise.
fn t_in_sl(n: usize, k: usize) -> Vec<(Letter, BigRational)> {
    let mut out = vec![(Letter::Center, rat(1, n as i64))];
    for v in 1..n {
        let c = if v >= k { rat((n - v) as i64, n as i64) } else { rat(-(v as i64), n as i64) };
        out.push((Letter::Simple(v), c));
    }
    out
}

/// Rewrite an ordered `gl` element in `sl` letters.
fn to_sl_letters(x: &ZElement, order: &[Letter]) -> Result<Vec<(Vec<Letter>, CoeffFrac)>> {
    let n = x.n();
    let mut acc: BTreeMap<Vec<usize>, CoeffFrac> = BTreeMap::new();
    for (m, c) in x.iter() {
        let mut partial: Vec<(Vec<Letter>, BigRational)> = vec![(Vec::new(), BigRational::one())];
        for g in m {
            let images = if g.is_diagonal() { t_in_sl(n, g.i()) } else { vec![(Letter::Gl(*g), BigRational::one())] };
            let mut next = Vec::new();
            for (w, q) in &partial {
                for (l, r) in &images {
                    let mut w2 = w.clone();
                    w2.push(*l);
                    next.push((w2, q * r));
                }
            }
            partial = next;
        }
        let c = gl_to_sl_coeff(c)?;
        for (mut w, q) in partial {
            // Cartan letters commute with each other and sit in one run.
            let start = w.iter().position(|l| l.is_cartan()).unwrap_or(w.len());
            let end = w[start..].iter().position(|l| !l.is_cartan()).map_or(w.len(), |p| start + p);
            w[start..end].sort_by_key(|l| letter_rank(order, *l));
            let key: Vec<usize> = w.iter().map(|l| letter_rank(order, *l)).collect();
            let term = c.scale_by(&q);
            let slot = acc.entry(key).or_insert_with(|| CoeffFrac::zero(n - 1));
            *slot = slot.add(&term);
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k.into_iter().map(|r| order[r]).collect(), c))
        .collect())
}

/// Every ordering relation of the target under the order: one per pair of
/// letters `left ≻ right`.
pub fn emit_table(target: Target, order: &TotalOrder, backend: Backend) -> Result<Table> {
    let n = target.n();
    if order.n() != n {
        return Err(Error::DimensionMismatch(order.n(), n));
    }
    let alg = Algebra::new(order.clone());
    let seq = letters(target, order);
    let mut relations = Vec::new();
    for (a, &right) in seq.iter().enumerate() {
        for &left in &seq[a + 1..] {
            let x = alg.mul(&left.element(n), &right.element(n), backend)?;
            let rhs = if target.is_sl() {
                let mut with_center = seq.clone();
                with_center.push(Letter::Center);
                to_sl_letters(&x, &with_center)?
            } else {
                x.iter().map(|(m, c)| (m.iter().map(|g| Letter::Gl(*g)).collect(), c.clone())).collect()
            };
            relations.push(TableRelation { left, right, rhs });
        }
    }
    // Highest pairs first, as in the usual listing.
    relations.reverse();
    Ok(Table { target, order: seq, relations })
}

impl Table {
    fn var_name(&self, vars: Vars, latex: bool) -> impl Fn(usize) -> String + '_ {
        move |k| {
            let sym = match vars {
                Vars::H => "h",
                Vars::Theta => "theta",
            };
            match (self.target, latex) {
                (Target::Sl2, false) => sym.to_string(),
                (Target::Sl2, true) => if vars == Vars::H { "h".into() } else { "\\theta".into() },
                (Target::Sl3, false) => format!("{sym}[{}]", root_name(k + 1, false)),
                (Target::Sl3, true) => format!("{}_{{{}}}", if vars == Vars::H { "h" } else { "\\theta" }, root_name(k + 1, true)),
                (Target::Gl(_), false) => format!("{sym}[{}]", k + 1),
                (Target::Gl(_), true) => format!("{}_{{{}}}", if vars == Vars::H { "h" } else { "\\theta" }, k + 1),
            }
        }
    }

    /// Coefficient in the chosen variables: for `sl` targets `θ_α = h_α + 1`.
    fn coeff_in(&self, c: &CoeffFrac, vars: Vars) -> CoeffFrac {
        match (self.target.is_sl(), vars) {
            (true, Vars::H) | (false, Vars::Theta) => c.clone(),
            (false, Vars::H) => to_h_vars(c),
            (true, Vars::Theta) => {
                let m = c.n();
                let images: Vec<_> = (0..m)
                    .map(|k| {
                        let mut co = vec![BigRational::zero(); m];
                        co[k] = BigRational::one();
                        (co, -BigRational::one())
                    })
                    .collect();
                c.substitute_affine(&images, m).expect("shift stays linear")
            }
        }
    }

    fn line(&self, r: &TableRelation, vars: Vars, latex: bool) -> String {
        let (times, circ) = if latex { ("\\,", "\\circ ") } else { (" * ", "*") };
        let name = self.var_name(vars, latex);
        let terms: Vec<(String, CoeffFrac)> = r
            .rhs
            .iter()
            .map(|(m, c)| {
                let mono = m.iter().map(|l| l.name(self.target, latex)).collect::<Vec<_>>().join(circ);
                (mono, self.coeff_in(c, vars))
            })
            .collect();
        let coeff: Box<dyn Fn(&CoeffFrac) -> String> = if latex {
            Box::new(|c: &CoeffFrac| coeff_latex_named(c, &name))
        } else {
            Box::new(|c: &CoeffFrac| coeff_text_named(c, &name))
        };
        format!(
            "{}{circ}{} = {}",
            r.left.name(self.target, latex),
            r.right.name(self.target, latex),
            join_terms(&terms, coeff.as_ref(), times)
        )
    }

    pub fn to_text(&self, vars: Vars) -> String {
        self.relations.iter().map(|r| self.line(r, vars, false) + "\n").collect()
    }

    pub fn to_latex(&self, vars: Vars) -> String {
        let body: Vec<String> = self.relations.iter().map(|r| format!("{} ,", self.line(r, vars, true))).collect();
        format!("\\begin{{gather*}}\n{}\n\\end{{gather*}}\n", body.join("\\\\\n"))
    }

    pub fn to_json(&self) -> Value {
        let enc = |l: &Letter| match l {
            Letter::Gl(g) => json!([g.i(), g.j()]),
            Letter::Simple(k) => json!({ "simple": k }),
            Letter::Center => json!("I"),
        };
        let rels: Vec<Value> = self
            .relations
            .iter()
            .map(|r| {
                let rhs: Vec<Value> = r
                    .rhs
                    .iter()
                    .map(|(m, c)| json!({ "monomial": m.iter().map(enc).collect::<Vec<_>>(), "coeff": c.to_json() }))
                    .collect();
                json!({ "lhs": [enc(&r.left), enc(&r.right)], "rhs": rhs })
            })
            .collect();
        json!({
            "target": self.target.to_string(),
            "order": self.order.iter().map(enc).collect::<Vec<_>>(),
            "relations": rels,
        })
    }

    pub fn from_json(v: &Value) -> Result<Table> {
        let bad = |m: &str| Error::InvalidArgument(format!("table json: {m}"));
        let target: Target = v["target"].as_str().ok_or_else(|| bad("target"))?.parse()?;
        let dec = |x: &Value| -> Result<Letter> {
            if x.as_str() == Some("I") {
                return Ok(Letter::Center);
            }
            if let Some(k) = x.get("simple").and_then(Value::as_u64) {
                return Ok(Letter::Simple(k as usize));
            }
            let i = x[0].as_u64().ok_or_else(|| bad("letter"))? as usize;
            let j = x[1].as_u64().ok_or_else(|| bad("letter"))? as usize;
            Ok(Letter::Gl(GeneratorId::new(i, j)))
        };
        let list = |x: &Value| -> Result<Vec<Letter>> { x.as_array().ok_or_else(|| bad("list"))?.iter().map(dec).collect() };
        let order = list(&v["order"])?;
        let mut relations = Vec::new();
        for r in v["relations"].as_array().ok_or_else(|| bad("relations"))? {
            let lhs = list(&r["lhs"])?;
            if lhs.len() != 2 {
                return Err(bad("lhs"));
            }
            let mut rhs = Vec::new();
            for t in r["rhs"].as_array().ok_or_else(|| bad("rhs"))? {
                rhs.push((list(&t["monomial"])?, CoeffFrac::from_json(target.vars(), &t["coeff"])?));
            }
            relations.push(TableRelation { left: lhs[0], right: lhs[1], rhs });
        }
        Ok(Table { target, order, relations })
    }
}
