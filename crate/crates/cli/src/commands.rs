use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use tbtop_core::certify::{self, Threshold};
use tbtop_core::characters::{distinguish_characters, separate_points, SetRule};
use tbtop_core::finlab::{
    self, smith_normal_form, FiniteAbelian, FiniteAbelianPresentation, FiniteCharacter,
    PartialCharacter, Subgroup, DEFAULT_BUDGET,
};
use tbtop_core::sequences::{classify_growth, validate_thm51};
use tbtop_core::{
    Character, CircleValue, ConvergenceCertificate, GroupElement, PadicCharacter, SequenceSchema, SumCharacter, Verdict,
};

use crate::parse::{self, Ambient, InputError};
use crate::{
    CertifyArgs, DistinguishArgs, DualcheckArgs, EvalArgs, ExtendArgs, GenerateArgs, GroupArgs, QuotientArgs, SeparateArgs,
    SnfArgs, ValidateArgs,
};

/// Largest `n` for factorial denominators `p^{n!}`.
const FACTORIAL_N_CAP: u64 = 9;

#[derive(Debug)]
pub enum CliError {
    Input(InputError),
    Core(tbtop_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<tbtop_core::Error> for CliError {
    fn from(e: tbtop_core::Error) -> Self {
        CliError::Core(e)
    }
}

type Run = Result<Outcome, CliError>;

pub enum Status {
    Ok,
    Refuted,
    EvidenceOnly { required: bool },
}

pub struct Outcome {
    pub outputs: Value,
    pub text: String,
    pub status: Status,
    /// Enumeration budget in force, recorded in the report inputs.
    pub budget: Option<u64>,
}

impl Outcome {
    fn ok(outputs: Value, text: String) -> Self {
        Outcome { outputs, text, status: Status::Ok, budget: None }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output serializes")
}

fn missing(field: &str, why: &str) -> CliError {
    InputError::new(field, why).into()
}

/// `TBTOP_BUDGET`, else the default.
fn budget() -> Result<u64, CliError> {
    match std::env::var("TBTOP_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| missing("TBTOP_BUDGET", "expected a positive integer")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn eval(a: &EvalArgs) -> Run {
    let h: Character = parse::json("character", &a.character)?;
    let x: GroupElement = parse::json("element", &a.element)?;
    let value = match &a.precision {
        Some(p) => h.eval_approx(&x, &parse::rational("precision", p)?)?,
        None => CircleValue::Exact(h.eval(&x)?),
    };
    let text = match &value {
        CircleValue::Exact(v) => format!("h(x) = {v}\ndist(h(x), 0) = {}\n", v.dist_to_zero()),
        CircleValue::Interval { center, radius } => format!("h(x) ∈ {center} ± {radius}\n"),
    };
    Ok(Outcome::ok(json!({ "value": value }), text))
}

fn factorial_sequence(p: Option<u64>, digits: Option<&str>, sequence: Option<&str>) -> Result<SequenceSchema, CliError> {
    if let Some(raw) = sequence {
        return Ok(parse::json("sequence", raw)?);
    }
    let p = p.ok_or_else(|| missing("p", "required unless --sequence is given"))?;
    let coeffs = parse::coeffs(digits.ok_or_else(|| missing("digits", "required unless --sequence is given"))?)?;
    SequenceSchema::factorial_pruefer(p, coeffs).map_err(|e| InputError::new("digits", e).into())
}

fn check_factorial_n(n_max: u64) -> Result<(), CliError> {
    if n_max > FACTORIAL_N_CAP {
        return Err(missing("n-max", &format!("at most {FACTORIAL_N_CAP} for factorial denominators")));
    }
    Ok(())
}

fn factorial_certificate(a: &CertifyArgs, set: &str) -> Result<ConvergenceCertificate, CliError> {
    let seq = factorial_sequence(a.p, a.digits.as_deref(), a.sequence.as_deref())?;
    let p = match &seq {
        SequenceSchema::FactorialPruefer { p, .. } => *p,
        _ => return Err(missing("sequence", "5.2 needs a factorialPruefer schema")),
    };
    let h = match &a.character {
        Some(raw) if a.index_set.is_empty() => parse::json::<PadicCharacter>("character", raw)?,
        _ => PadicCharacter::indicator(p, parse::index_set("index-set", set)?).map_err(|e| InputError::new("index-set", e))?,
    };
    check_factorial_n(a.n_max)?;
    Ok(certify::certify_thm52(&h, &seq, a.n_max)?)
}

pub fn certify(a: &CertifyArgs) -> Run {
    let cert = match a.theorem.as_str() {
        "5.2" => {
            let set = match (a.index_set.as_slice(), &a.character) {
                ([one], _) => one.as_str(),
                ([], Some(_)) => "",
                _ => return Err(missing("index-set", "give exactly one index set (or --character)")),
            };
            factorial_certificate(a, set)?
        }
        "5.1" => {
            let raw = a.sequence.as_deref().ok_or_else(|| missing("sequence", "required for 5.1"))?;
            let seq: SequenceSchema = parse::json("sequence", raw)?;
            let h = match (&a.character, a.index_set.as_slice()) {
                (Some(raw), []) => parse::json::<SumCharacter>("character", raw)?,
                (None, [set]) => {
                    let ambient = match &seq {
                        SequenceSchema::BasisDirectSum { ambient, .. } => ambient.clone(),
                        _ => return Err(missing("sequence", "--index-set needs a basisDirectSum schema")),
                    };
                    SumCharacter::new(ambient, parse::index_set("index-set", set)?)
                }
                _ => return Err(missing("character", "give either --character or one --index-set")),
            };
            certify::certify_thm51(&h, &seq, a.window)?
        }
        "comb" => {
            let raw = a.coeffs.as_deref().ok_or_else(|| missing("coeffs", "required for comb"))?;
            let ms: Vec<BigInt> = raw
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| InputError::new("coeffs", format!("bad integer {s:?}"))))
                .collect::<Result<_, _>>()?;
            if ms.len() != a.index_set.len() {
                return Err(missing("coeffs", &format!("{} coefficients for {} index sets", ms.len(), a.index_set.len())));
            }
            let mut parts = Vec::new();
            for (m, set) in ms.into_iter().zip(&a.index_set) {
                parts.push((m, factorial_certificate(a, set)?));
            }
            certify::certify_combination(&parts)?
        }
        "scan" => {
            let h: Character = parse::json("character", a.character.as_deref().ok_or_else(|| missing("character", "required for scan"))?)?;
            let seq: SequenceSchema = parse::json("sequence", a.sequence.as_deref().ok_or_else(|| missing("sequence", "required for scan"))?)?;
            if matches!(seq, SequenceSchema::FactorialPruefer { .. }) {
                check_factorial_n(a.n_max)?;
            }
            let thresholds = a
                .threshold
                .iter()
                .map(|t| {
                    let (from, bound) = t.split_once(':').ok_or_else(|| InputError::new("threshold", "expected from:bound"))?;
                    let from = from.trim().parse().map_err(|_| InputError::new("threshold", format!("bad index {from:?}")))?;
                    Ok(Threshold { from, bound: parse::rational("threshold", bound)? })
                })
                .collect::<Result<Vec<_>, InputError>>()?;
            certify::empirical_scan(&h, &seq, a.n_max, &thresholds, &parse::rational("precision", &a.precision)?)?
        }
        other => return Err(missing("theorem", &format!("expected 5.1, 5.2, comb or scan, got {other:?}"))),
    };
    let status = match cert.verdict {
        Verdict::Certified => Status::Ok,
        Verdict::Refuted => Status::Refuted,
        Verdict::EvidenceOnly => Status::EvidenceOnly { required: a.require_certified },
    };
    let text = certificate_text(&cert);
    Ok(Outcome { outputs: to_value(&cert), text, status, budget: None })
}

fn certificate_text(c: &ConvergenceCertificate) -> String {
    let mut s = String::new();
    let tag = serde_json::to_value(c.theorem).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let verdict = serde_json::to_value(c.verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    writeln!(s, "theorem  {tag}").ok();
    writeln!(s, "range    n = {}..{}", c.range[0], c.range[1]).ok();
    writeln!(s, "{:>4}  {:<28}  {:<28}  ok", "n", "dist(h(x_n), 0)", "bound").ok();
    for v in &c.values {
        let dist = short(&v.value.dist_to_zero().to_string());
        let bound = short(&v.bound.to_string());
        let ok = if v.radius.is_some() { "~" } else if v.within_bound() { "yes" } else { "NO" };
        writeln!(s, "{:>4}  {:<28}  {:<28}  {ok}", v.n, dist, bound).ok();
    }
    writeln!(s, "tail     {}", c.tail).ok();
    writeln!(s, "verdict  {verdict}").ok();
    if let Some(n) = c.counterexample {
        writeln!(s, "counterexample at n = {n}").ok();
    }
    s
}

/// Abbreviates long rationals in text output.
fn short(r: &str) -> String {
    match r.split_once('/') {
        Some((a, b)) if r.len() > 28 => {
            let part = |x: &str| if x.len() > 10 { format!("({}…{} digits)", &x[..4], x.len()) } else { x.to_string() };
            format!("{}/{}", part(a), part(b))
        }
        _ => r.to_string(),
    }
}

pub fn separate(a: &SeparateArgs) -> Run {
    let amb = Ambient::parse(&a.ambient)?;
    let x = amb.point("x", &a.x)?;
    let y = amb.point("y", &a.y)?;
    let sep = separate_points(&x, &y).map_err(|e| match e {
        tbtop_core::Error::EqualPoints => CliError::Input(InputError::new("y", "equals --x")),
        other => other.into(),
    })?;
    let text = format!("character {}\nh(x) = {}\nh(y) = {}\n", describe(&sep.character), sep.left, sep.right);
    Ok(Outcome::ok(to_value(&sep), text))
}

fn describe(h: &Character) -> String {
    match h {
        Character::Sum(s) => match &s.index_set {
            tbtop_core::IndexSet::Finite { members } => {
                format!("h_A with A = {{{}}}", members.iter().map(u64::to_string).collect::<Vec<_>>().join(", "))
            }
            _ => h.to_string(),
        },
        _ => h.to_string(),
    }
}

pub fn distinguish(a: &DistinguishArgs) -> Run {
    let orders = match Ambient::parse(&a.ambient)? {
        Ambient::DirectSum(o) => o,
        _ => return Err(missing("ambient", "distinguish needs a direct-sum ambient")),
    };
    let h = SumCharacter::new(orders.clone(), parse::index_set("h", &a.h)?);
    let h2 = SumCharacter::new(orders, parse::index_set("h2", &a.h2)?);
    let d = distinguish_characters(&h, &h2, a.bound)?;
    let text = format!("index {}\nh(e_k) = {}\nh2(e_k) = {}\n", d.index, d.left, d.right);
    Ok(Outcome::ok(to_value(&d), text))
}

pub fn generate(a: &GenerateArgs) -> Run {
    let seq = factorial_sequence(a.p, a.digits.as_deref(), a.sequence.as_deref())?;
    if matches!(seq, SequenceSchema::FactorialPruefer { .. }) {
        check_factorial_n(a.count).map_err(|_| missing("count", &format!("at most {FACTORIAL_N_CAP} factorial terms")))?;
    }
    let terms = seq.indexed(a.count)?;
    let mut text = String::new();
    for (n, x) in &terms {
        writeln!(text, "{n:>4}  {}", short_element(x)).ok();
    }
    let out: Vec<Value> = terms.iter().map(|(n, x)| json!({ "n": n, "term": x })).collect();
    Ok(Outcome::ok(json!({ "sequence": seq, "terms": out }), text))
}

fn short_element(x: &GroupElement) -> String {
    match x {
        GroupElement::Pruefer(p) => format!("{}/{}^{}", p.numerator(), p.prime(), p.exponent()),
        other => other.to_string(),
    }
}

pub fn validate(a: &ValidateArgs) -> Run {
    let seq: SequenceSchema = parse::json("sequence", &a.sequence)?;
    match a.conditions.as_str() {
        "5.1" => {
            let s: SetRule = match (&a.s, &seq) {
                (Some(raw), _) => parse::json("S", raw)?,
                (None, SequenceSchema::BasisDirectSum { avoid, .. }) => avoid.clone(),
                (None, _) => return Err(missing("S", "required unless the schema carries its own S")),
            };
            let v = validate_thm51(&seq, &s, a.prefix);
            let text = format!("structural       {}\nprefix_verified  {} (first {} terms)\n", v.structural, v.prefix_verified, a.prefix);
            Ok(Outcome::ok(to_value(&v), text))
        }
        "growth" => {
            let g = classify_growth(&seq, a.prefix)?;
            let text = format!("x(n+1)/x(n) >= n+1   {}\nx(n+1)/x(n) -> inf   {}\nbasis  {:?}\n", g.raczkowski, g.barbieri, g.basis);
            Ok(Outcome::ok(to_value(&g), text))
        }
        other => Err(missing("conditions", &format!("expected 5.1 or growth, got {other:?}"))),
    }
}

pub fn snf(a: &SnfArgs) -> Run {
    let m = parse::matrix("matrix", &a.matrix)?;
    let s = smith_normal_form(&m);
    let diagonal: Vec<String> = s.diagonal().iter().map(BigInt::to_string).collect();
    let text = format!("D = diag({})\nU =\n{}\nV =\n{}\n", diagonal.join(", "), s.u, s.v);
    Ok(Outcome::ok(json!({ "u": s.u, "d": s.d, "v": s.v, "diagonal": diagonal }), text))
}

pub fn quotient(a: &QuotientArgs) -> Run {
    let m = parse::matrix("relations", &a.relations)?;
    let gens = match (a.gens, m.rows()) {
        (Some(g), 0) => g,
        (None, 0) => return Err(missing("gens", "required when there are no relations")),
        (g, _) => g.unwrap_or(m.cols()),
    };
    let m = if m.rows() == 0 { finlab::IntMatrix::zeros(0, gens) } else { m };
    let pres = FiniteAbelianPresentation::new(gens, m).map_err(|e| InputError::new("relations", e))?;
    let f = finlab::quotient_decomposition(&pres);
    let r = finlab::ranks(&f)?;
    let mut out = json!({ "invariant_factors": f, "ranks": r });
    let mut text = format!("G = {f}\nr0 = {}\n", r.r0);
    for (p, c) in &r.rp {
        writeln!(text, "r_{p} = {c}").ok();
    }
    writeln!(text, "r = {}", r.total).ok();
    if let Some(p) = a.p {
        let c = finlab::p_component(&f, p).map_err(|e| InputError::new("p", e))?;
        writeln!(text, "G_{p} = {c}").ok();
        out["p_component"] = to_value(&c);
    }
    Ok(Outcome::ok(out, text))
}

fn group_and_h(a: &GroupArgs) -> Result<(FiniteAbelian, Subgroup, u64), CliError> {
    let k = parse::group("group", &a.group)?;
    let gens = parse::generators("h", a.h.as_deref(), &k)?;
    let budget = budget()?;
    if k.order() > budget {
        return Err(tbtop_core::Error::BudgetExceeded { size: k.order(), budget }.into());
    }
    let h = Subgroup::generated(&k, &gens)?;
    Ok((k, h, budget))
}

pub fn subgroups(a: &GroupArgs) -> Run {
    let (k, h, budget) = group_and_h(a)?;
    let subs = finlab::enumerate_intermediate_subgroups(&k, &h, budget)?;
    let reports: Vec<_> = subs.iter().map(|s| s.describe(&k)).collect();
    let mut text = format!("K = {k}, |H| = {}\n{} proper subgroups S with H ⊆ S ⊊ K\n", h.order(), reports.len());
    for r in &reports {
        writeln!(text, "  order {:>4}  generators {:?}", r.order, r.generators).ok();
    }
    let out = json!({ "group": k, "h": h.describe(&k), "count": reports.len(), "subgroups": reports });
    Ok(Outcome { budget: Some(budget), ..Outcome::ok(out, text) })
}

pub fn thm17(a: &GroupArgs) -> Run {
    let (k, h, budget) = group_and_h(a)?;
    let fam = finlab::thm17_injection(&k, &h, budget)?;
    let members: Vec<Value> = fam
        .members
        .iter()
        .map(|m| {
            let d = m.subgroup.describe(&k);
            json!({ "subset": m.subset, "generators": d.generators, "order": d.order })
        })
        .collect();
    let mut text = format!("K/H cyclic factors {:?} (lifts {:?})\n{} distinct subgroups H_A\n", fam.factors, fam.lifts, members.len());
    for m in &fam.members {
        writeln!(text, "  A = {:?}  |H_A| = {}", m.subset, m.subgroup.order()).ok();
    }
    let out = json!({ "group": k, "h": h.describe(&k), "factors": fam.factors, "lifts": fam.lifts, "count": members.len(), "members": members });
    Ok(Outcome { budget: Some(budget), ..Outcome::ok(out, text) })
}

fn partial_character(raw: &str) -> Result<PartialCharacter, CliError> {
    if raw.trim_start().starts_with('{') {
        return Ok(parse::json("chi", raw)?);
    }
    let pairs: Vec<(Vec<u64>, String)> = parse::json("chi", raw)?;
    let pairs = pairs
        .into_iter()
        .map(|(x, v)| Ok((x, parse::circle_point("chi", &v)?)))
        .collect::<Result<Vec<_>, InputError>>()?;
    Ok(PartialCharacter::new(pairs))
}

pub fn extend(a: &ExtendArgs) -> Run {
    let k = parse::group("group", &a.group)?;
    let chi = partial_character(&a.chi)?;
    let budget = budget()?;
    let least = finlab::extend_character(&k, &chi, budget).map_err(|e| match e {
        tbtop_core::Error::NotHomomorphism(_) | tbtop_core::Error::AmbientMismatch(_) | tbtop_core::Error::Invalid { .. } => {
            CliError::Input(InputError::new("chi", e))
        }
        other => other.into(),
    })?;
    let all = finlab::all_extensions(&k, &chi, budget)?;
    let sub = chi.subgroup(&k)?;
    let values: Vec<String> = least.values.iter().map(ToString::to_string).collect();
    let mut text = format!("k(e_i) = [{}]\n{} extensions (|G/A| = {})\n", values.join(", "), all.len(), k.order() / sub.order());
    if a.all {
        for c in &all {
            writeln!(text, "  [{}]", c.values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")).ok();
        }
    }
    let mut out = json!({ "extension": least, "lift_count": all.len(), "index": k.order() / sub.order() });
    if a.all {
        out["lifts"] = to_value(&all);
    }
    Ok(Outcome { budget: Some(budget), ..Outcome::ok(out, text) })
}

pub fn dualcheck(a: &DualcheckArgs) -> Run {
    let k = parse::group("group", &a.group)?;
    let budget = budget()?;
    let chars: Vec<FiniteCharacter> = match &a.characters {
        Some(raw) => {
            let lists: Vec<Vec<String>> = parse::json("characters", raw)?;
            lists
                .iter()
                .map(|vals| {
                    let vals = vals.iter().map(|v| parse::circle_point("characters", v)).collect::<Result<Vec<_>, _>>()?;
                    FiniteCharacter::new(&k, vals).map_err(|e| InputError::new("characters", e))
                })
                .collect::<Result<_, _>>()?
        }
        None => {
            (0..k.rank())
                .map(|i| {
                    let mut y = vec![0; k.rank()];
                    y[i] = 1;
                    FiniteCharacter::from_dual_coords(&k, &y)
                })
                .collect::<Result<_, _>>()?
        }
    };
    let r = finlab::separation_is_density_check(&k, &chars, budget)?;
    let text = format!("separates    {}\nequals_dual  {}\n|<H>| = {} of {}\n", r.separates, r.equals_dual, r.generated_order, k.order());
    Ok(Outcome { budget: Some(budget), ..Outcome::ok(to_value(&r), text) })
}
