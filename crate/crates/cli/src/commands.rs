use std::fmt::Write as _;

use drz::center::{central_element, is_central, BlockSplit, CentralId};
use drz::expr::parse_element;
use drz::lattice::{GeneratorId, TotalOrder};
use drz::render::{element_latex, element_text, render_element, Format, Vars};
use drz::symmetries::{epsilon, omega, q_longest, zhelobenko_fast, zhelobenko_oracle, BraidWord};
use drz::table::{emit_table, Target};
use drz::zalg::{homogeneous_limit_check, verify_relations, Algebra, Backend, Family, ZElement};
use drz::{Error, Result};
use num_rational::BigRational;
use serde_json::json;

use crate::{Cli, Command, Global};

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn verdict(text: String, pass: bool) -> Self {
        Output { text, code: if pass { 0 } else { 1 } }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::InvalidArgument(_)
        | Error::IndexOutOfRange { .. }
        | Error::InvalidOrder(_)
        | Error::DimensionMismatch(..)
        | Error::DivisionByZero
        | Error::NonlinearDenominator(_)
        | Error::NotInPositiveCone(_) => 2,
        _ => 1,
    }
}

struct Ctx {
    backend: Backend,
    format: Format,
    vars: Vars,
}

impl Ctx {
    fn show(&self, x: &ZElement) -> String {
        render_element(x, self.format, self.vars) + "\n"
    }
}

fn require_n(g: &Global) -> Result<usize> {
    match g.n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(Error::InvalidArgument("--n must be positive".into())),
        None => Err(Error::InvalidArgument("--n is required".into())),
    }
}

fn order_for(n: usize, spec: Option<&str>) -> Result<TotalOrder> {
    match spec.unwrap_or("default") {
        "default" => Ok(TotalOrder::default_for(n)),
        "stord" if n == 3 => Ok(TotalOrder::stord()),
        "stord" => Err(Error::InvalidArgument("the `stord` order exists only for n = 3".into())),
        s => match s.strip_prefix('@') {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
                TotalOrder::parse(n, &text)
            }
            None => Err(Error::InvalidArgument(format!("unknown order `{s}`"))),
        },
    }
}

fn algebra(g: &Global) -> Result<Algebra> {
    let n = require_n(g)?;
    Ok(Algebra::new(order_for(n, g.order.as_deref())?))
}

fn parse_pair(s: &str, n: usize) -> Result<(GeneratorId, GeneratorId)> {
    let bad = || Error::InvalidArgument(format!("expected `a,b;c,d`, got `{s}`"));
    let gen = |part: &str| -> Result<GeneratorId> {
        let (a, b) = part.split_once(',').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        for v in [a, b] {
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
        }
        Ok(GeneratorId::new(a, b))
    };
    let (l, r) = s.split_once(';').ok_or_else(bad)?;
    Ok((gen(l)?, gen(r)?))
}

fn parse_ray(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(|p| p.trim().parse::<BigRational>().map_err(|_| Error::InvalidArgument(format!("bad ray entry `{p}`"))))
        .collect()
}

pub fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    let ctx = Ctx { backend: g.backend.parse()?, format: g.format.parse()?, vars: g.vars.parse()? };
    match &cli.command {
        Command::Order => order(g, &ctx),
        Command::Mul { exprs } => {
            let alg = algebra(g)?;
            let factors: Vec<ZElement> =
                exprs.iter().map(|e| parse_element(e, &alg, ctx.backend)).collect::<Result<_>>()?;
            Ok(Output::ok(ctx.show(&alg.product(&factors, ctx.backend)?)))
        }
        Command::NormalOrder { expr } => {
            let alg = algebra(g)?;
            let x = match expr.strip_prefix('@') {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
                    let v: serde_json::Value = serde_json::from_str(&text)
                        .map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
                    ZElement::from_json(&v)?
                }
                None => parse_element(expr, &alg, ctx.backend)?,
            };
            if x.n() != alg.n() {
                return Err(Error::DimensionMismatch(x.n(), alg.n()));
            }
            Ok(Output::ok(ctx.show(&alg.normal_order(&x, ctx.backend)?)))
        }
        Command::Verify { family, all_instances } => verify(g, &ctx, family, *all_instances),
        Command::Q { i, word, longest, definition, expr } => {
            let alg = algebra(g)?;
            let x = parse_element(expr, &alg, ctx.backend)?;
            let y = match (i, word, longest) {
                (Some(i), _, _) => {
                    if *i == 0 || *i >= alg.n() {
                        return Err(Error::IndexOutOfRange { index: *i, n: alg.n() });
                    }
                    if *definition {
                        zhelobenko_oracle(&alg, *i, &x)?
                    } else {
                        zhelobenko_fast(&alg, *i, &x, ctx.backend)?
                    }
                }
                (None, Some(w), _) => {
                    let w: BraidWord = w.parse()?;
                    if let Some(&bad) = w.0.iter().find(|l| l.unsigned_abs() as usize >= alg.n()) {
                        return Err(Error::IndexOutOfRange { index: bad.unsigned_abs() as usize, n: alg.n() });
                    }
                    w.apply(&alg, &x, ctx.backend)?
                }
                (None, None, true) => q_longest(&alg, &x, ctx.backend)?,
                _ => return Err(Error::InvalidArgument("one of --i, --word, --longest is required".into())),
            };
            Ok(Output::ok(ctx.show(&y)))
        }
        Command::Casimir { which, check } => casimir(g, &ctx, which, *check),
        Command::Cut { m, which, coefficients, expr } => cut(g, &ctx, *m, which.as_deref(), expr.as_deref(), *coefficients),
        Command::Table { target } => {
            let target: Target = target.parse()?;
            let default = if target == Target::Sl3 { "stord" } else { "default" };
            let order = order_for(target.n(), Some(g.order.as_deref().unwrap_or(default)))?;
            let t = emit_table(target, &order, ctx.backend)?;
            let text = match ctx.format {
                Format::Text => t.to_text(ctx.vars),
                Format::Latex => t.to_latex(ctx.vars),
                Format::Json => t.to_json().to_string() + "\n",
            };
            Ok(Output::ok(text))
        }
        Command::Sc { pair } => {
            let alg = algebra(g)?;
            let (a, b) = parse_pair(pair, alg.n())?;
            let x = alg.mul(&alg.generator(a), &alg.generator(b), ctx.backend)?;
            Ok(Output::ok(ctx.show(&x)))
        }
        Command::Limit { pair, ray } => limit(g, &ctx, pair, ray),
    }
}

fn order(g: &Global, ctx: &Ctx) -> Result<Output> {
    let n = require_n(g)?;
    let seq = order_for(n, g.order.as_deref())?.sequence();
    let text = match ctx.format {
        Format::Json => json!(seq.iter().map(|g| [g.i(), g.j()]).collect::<Vec<_>>()).to_string(),
        Format::Text => seq.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" < "),
        Format::Latex => seq.iter().map(|g| drz::render::generator_latex(*g)).collect::<Vec<_>>().join(" \\prec "),
    };
    Ok(Output::ok(text + "\n"))
}

fn verify(g: &Global, ctx: &Ctx, family: &str, all_instances: bool) -> Result<Output> {
    let alg = algebra(g)?;
    let families = Family::parse_list(family)?;
    let reports = verify_relations(&alg, &families, ctx.backend)?;
    let pass = reports.iter().all(|r| r.residual_zero());
    if ctx.format == Format::Json {
        let shown: Vec<_> = reports.iter().filter(|r| all_instances || !r.residual_zero()).map(|r| r.to_json()).collect();
        let v = json!({ "n": alg.n(), "instances": reports.len(), "pass": pass, "reports": shown });
        return Ok(Output::verdict(v.to_string() + "\n", pass));
    }
    let mut out = String::new();
    for f in &families {
        let of: Vec<_> = reports.iter().filter(|r| r.family == *f).collect();
        let bad = of.iter().filter(|r| !r.residual_zero()).count();
        let _ = writeln!(out, "family {f}: {} instances, {bad} nonzero residuals", of.len());
    }
    for r in &reports {
        if !r.residual_zero() {
            let _ = writeln!(out, "FAIL {}: residual {}", r.label(), element_text(&r.residual, ctx.vars));
        } else if all_instances {
            let _ = writeln!(out, "ok {}", r.label());
        }
    }
    let _ = writeln!(out, "{}", if pass { "all residuals zero" } else { "verification failed" });
    Ok(Output::verdict(out, pass))
}

fn casimir(g: &Global, ctx: &Ctx, which: &str, check: bool) -> Result<Output> {
    let id: CentralId = which.parse()?;
    if let Some(n) = g.n {
        if n != id.n() {
            return Err(Error::DimensionMismatch(n, id.n()));
        }
    }
    let alg = Algebra::new(order_for(id.n(), g.order.as_deref())?);
    let x = central_element(&alg, id, ctx.backend)?;
    let mut out = ctx.show(&x);
    if !check {
        return Ok(Output::ok(out));
    }
    let mut pass = true;
    let mut report = |name: String, ok: bool| {
        pass &= ok;
        let _ = writeln!(out, "{name}: {}", if ok { "yes" } else { "no" });
    };
    report("central".into(), is_central(&alg, &x, ctx.backend)?);
    if matches!(id, CentralId::Sl3C1 | CentralId::Sl3C2 | CentralId::Sl2C1 | CentralId::Sl2C2) {
        for i in 1..alg.n() {
            report(format!("fixed by q_{i}"), zhelobenko_fast(&alg, i, &x, ctx.backend)? == x);
        }
        report("fixed by epsilon".into(), epsilon(&alg, &x, ctx.backend)? == x);
        report("fixed by omega".into(), omega(&alg, &x, ctx.backend)? == x);
    }
    Ok(Output::verdict(out, pass))
}

fn cut(g: &Global, ctx: &Ctx, m: usize, which: Option<&str>, expr: Option<&str>, coefficients: bool) -> Result<Output> {
    let n = require_n(g)?;
    let split = BlockSplit::new(n, m)?;
    let x = match (which, expr) {
        (Some(w), _) => central_element(split.full(), w.parse()?, ctx.backend)?,
        (None, Some(e)) => parse_element(e, split.full(), ctx.backend)?,
        (None, None) => return Err(Error::InvalidArgument("an expression or --which is required".into())),
    };
    let cut = split.pi(&x, ctx.backend)?;
    let mut out = ctx.show(&cut);
    if !coefficients {
        return Ok(Output::ok(out));
    }
    let mut pass = true;
    let last = n + 1;
    for (i, j, c) in split.coefficients_in_last(&cut)? {
        let central = is_central(split.left(), &c, ctx.backend).unwrap_or(false);
        pass &= central;
        let body = match ctx.format {
            Format::Latex => element_latex(&c, ctx.vars),
            Format::Json => c.to_json().to_string(),
            Format::Text => element_text(&c, ctx.vars),
        };
        let _ = writeln!(
            out,
            "t[{last}]^{i} h[{last}]^{j}: {body}   central: {}",
            if central { "yes" } else { "no" }
        );
    }
    Ok(Output::verdict(out, pass))
}

fn limit(g: &Global, ctx: &Ctx, pair: &str, ray: &str) -> Result<Output> {
    let alg = algebra(g)?;
    let n = alg.n();
    let ray = parse_ray(ray)?;
    let pairs: Vec<(GeneratorId, GeneratorId)> = if pair == "all" {
        GeneratorId::all(n).flat_map(|a| GeneratorId::all(n).map(move |b| (a, b))).collect()
    } else {
        vec![parse_pair(pair, n)?]
    };
    let deg = |d: Option<i64>| d.map_or("vanishes".to_string(), |d| d.to_string());
    let mut out = String::new();
    let mut pass = true;
    let mut rows = Vec::new();
    for (a, b) in pairs {
        let r = homogeneous_limit_check(&alg, a, b, &ray)?;
        pass &= r.passes();
        if ctx.format == Format::Json {
            rows.push(json!({
                "pair": [[a.i(), a.j()], [b.i(), b.j()]],
                "swap_degree": r.swap.degree_difference,
                "swap_leading": r.swap.leading.to_string(),
                "others": r.others.iter().map(|o| json!({
                    "monomial": o.monomial.iter().map(|g| [g.i(), g.j()]).collect::<Vec<_>>(),
                    "degree": o.degree_difference,
                })).collect::<Vec<_>>(),
                "pass": r.passes(),
            }));
            continue;
        }
        let others: Vec<String> =
            r.others.iter().map(|o| format!("{} {}", mono_text(&o.monomial), deg(o.degree_difference))).collect();
        let _ = writeln!(
            out,
            "{a}*{b}: swap {} degree {} leading {}; others [{}]; {}",
            mono_text(&r.swap.monomial),
            deg(r.swap.degree_difference),
            r.swap.leading,
            others.join(", "),
            if r.passes() { "PASS" } else { "FAIL" }
        );
    }
    if ctx.format == Format::Json {
        out = json!({ "pass": pass, "pairs": rows }).to_string() + "\n";
    }
    Ok(Output::verdict(out, pass))
}

fn mono_text(m: &[GeneratorId]) -> String {
    m.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
}
