//! Argument-level parsers. Every failure names the flag it came from.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::de::DeserializeOwned;
use tbtop_core::characters::SetRule;
use tbtop_core::finlab::{FiniteAbelian, IntMatrix};
use tbtop_core::sequences::CoeffRule;
use tbtop_core::{CirclePoint, CyclicElement, DirectSumElement, GroupElement, IndexSet, OrderSchema, PrueferElement};

#[derive(Debug)]
pub struct InputError {
    pub field: String,
    pub reason: String,
}

impl InputError {
    pub fn new(field: &str, reason: impl fmt::Display) -> Self {
        InputError { field: field.to_string(), reason: reason.to_string() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "--{}: {}", self.field, self.reason)
    }
}

pub type Parsed<T> = Result<T, InputError>;

pub fn json<T: DeserializeOwned>(field: &str, raw: &str) -> Parsed<T> {
    serde_json::from_str(raw).map_err(|e| InputError::new(field, e))
}

fn u64_list(field: &str, raw: &str) -> Parsed<Vec<u64>> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| InputError::new(field, format!("expected an integer, got {s:?}"))))
        .collect()
}

/// `const:a`, `alt:a,b` (`a` at even `n`), `periodic:a,b,…`, or JSON.
pub fn coeffs(raw: &str) -> Parsed<CoeffRule> {
    let field = "digits";
    if raw.trim_start().starts_with('{') {
        return json(field, raw);
    }
    let (kind, rest) = raw.split_once(':').ok_or_else(|| InputError::new(field, "expected const:a, alt:a,b or periodic:…"))?;
    let vals = u64_list(field, rest)?;
    match (kind, vals.as_slice()) {
        ("const", [a]) => Ok(CoeffRule::Const { a: *a }),
        ("alt" | "alternating", [even, odd]) => Ok(CoeffRule::Alternating { even: *even, odd: *odd }),
        ("periodic", cycle) if !cycle.is_empty() => Ok(CoeffRule::Periodic { cycle: cycle.to_vec() }),
        _ => Err(InputError::new(field, format!("cannot read {raw:?}"))),
    }
}

/// `fac:all`, `fac:args:m,…` (factorials `m!`), `finite:k,…`, or JSON.
pub fn index_set(field: &str, raw: &str) -> Parsed<IndexSet> {
    let raw = raw.trim();
    if raw.starts_with('{') {
        return json(field, raw);
    }
    if raw == "fac:all" {
        return Ok(IndexSet::all_of_fac());
    }
    if let Some(rest) = raw.strip_prefix("fac:args:") {
        let args = u64_list(field, rest)?;
        return Ok(IndexSet::SubsetOfFac { rule: SetRule::finite(args) });
    }
    if let Some(rest) = raw.strip_prefix("finite:") {
        return Ok(IndexSet::finite(u64_list(field, rest)?));
    }
    Err(InputError::new(field, format!("expected fac:all, fac:args:…, finite:… or JSON, got {raw:?}")))
}

/// `2,4` or `[2,4]`.
pub fn group(field: &str, raw: &str) -> Parsed<FiniteAbelian> {
    let trimmed = raw.trim().trim_start_matches('[').trim_end_matches(']');
    FiniteAbelian::new(u64_list(field, trimmed)?).map_err(|e| InputError::new(field, e))
}

pub fn generators(field: &str, raw: Option<&str>, k: &FiniteAbelian) -> Parsed<Vec<Vec<u64>>> {
    let gens: Vec<Vec<u64>> = match raw {
        Some(raw) => json(field, raw)?,
        None => vec![],
    };
    for g in &gens {
        k.check_element(g).map_err(|e| InputError::new(field, e))?;
    }
    Ok(gens)
}

pub fn matrix(field: &str, raw: &str) -> Parsed<IntMatrix> {
    json(field, raw)
}

pub fn rational(field: &str, raw: &str) -> Parsed<num_rational::BigRational> {
    let bad = || InputError::new(field, format!("expected a rational a/b, got {raw:?}"));
    let r = match raw.trim().split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(InputError::new(field, "zero denominator"));
            }
            num_rational::BigRational::new(a, b)
        }
        None => num_rational::BigRational::from_integer(raw.trim().parse().map_err(|_| bad())?),
    };
    Ok(r)
}

pub fn circle_point(field: &str, raw: &str) -> Parsed<CirclePoint> {
    raw.trim().parse().map_err(|e| InputError::new(field, e))
}

/// Ambient group for two-point commands.
#[derive(Debug, Clone)]
pub enum Ambient {
    DirectSum(OrderSchema),
    Int,
    Pruefer(u64),
    Cyclic(u64),
}

impl Ambient {
    /// `dsum2`, `dsum:p` / `dsum:p^r` (constant orders), `int`, `pruefer:p`,
    /// `cyclic:n`, or an order schema as JSON.
    pub fn parse(raw: &str) -> Parsed<Self> {
        let field = "ambient";
        let raw = raw.trim();
        if raw.starts_with('{') {
            return Ok(Ambient::DirectSum(json(field, raw)?));
        }
        let num = |s: &str| s.trim().parse::<u64>().map_err(|_| InputError::new(field, format!("expected an integer, got {s:?}")));
        let constant = |p: u64, r: u32| OrderSchema::constant(p, r).map_err(|e| InputError::new(field, e));
        if raw == "int" {
            return Ok(Ambient::Int);
        }
        if let Some(p) = raw.strip_prefix("dsum").filter(|s| !s.starts_with(':') && !s.is_empty()) {
            return Ok(Ambient::DirectSum(constant(num(p)?, 1)?));
        }
        if let Some(rest) = raw.strip_prefix("dsum:") {
            let (p, r) = rest.split_once('^').unwrap_or((rest, "1"));
            let r = u32::try_from(num(r)?).map_err(|_| InputError::new(field, "exponent too large"))?;
            return Ok(Ambient::DirectSum(constant(num(p)?, r)?));
        }
        if let Some(p) = raw.strip_prefix("pruefer:") {
            let p = num(p)?;
            PrueferElement::zero(p).map_err(|e| InputError::new(field, e))?;
            return Ok(Ambient::Pruefer(p));
        }
        if let Some(n) = raw.strip_prefix("cyclic:") {
            return Ok(Ambient::Cyclic(num(n)?));
        }
        Err(InputError::new(field, format!("unknown ambient {raw:?}")))
    }

    /// A point of the ambient group. Direct-sum points are support maps
    /// `{"k": [value, order]}`, integers are decimals, Prüfer points are
    /// `a/pⁿ` rationals and cyclic points are residues. A full tagged element
    /// JSON is accepted everywhere.
    pub fn point(&self, field: &str, raw: &str) -> Parsed<GroupElement> {
        let raw = raw.trim();
        if raw.starts_with('{') && raw.contains("\"kind\"") {
            return json(field, raw);
        }
        match self {
            Ambient::DirectSum(orders) => {
                let support: BTreeMap<String, (u64, u64)> = json(field, raw)?;
                let mut coords = Vec::new();
                for (k, (v, ord)) in support {
                    let k: u64 = k.parse().map_err(|_| InputError::new(field, format!("bad index {k:?}")))?;
                    if ord != orders.order_at(k) {
                        return Err(InputError::new(field, format!("coordinate {k} has order {}, got {ord}", orders.order_at(k))));
                    }
                    if v >= ord {
                        return Err(InputError::new(field, format!("value {v} at {k} not reduced mod {ord}")));
                    }
                    coords.push((k, v as i64));
                }
                Ok(GroupElement::DirectSum(DirectSumElement::new(orders.clone(), coords)))
            }
            Ambient::Int => Ok(GroupElement::Int(raw.parse().map_err(|_| InputError::new(field, format!("expected an integer, got {raw:?}")))?)),
            Ambient::Pruefer(p) => {
                let r = rational(field, raw)?;
                let den = r.denom().magnitude().clone();
                let mut n = 0u64;
                let mut d = den.clone();
                let bp = BigUint::from(*p);
                while !d.is_one() {
                    if (&d % &bp) != BigUint::zero() {
                        return Err(InputError::new(field, format!("denominator {den} is not a power of {p}")));
                    }
                    d /= &bp;
                    n += 1;
                }
                let x = PrueferElement::canonicalize(*p, r.numer().clone(), n).map_err(|e| InputError::new(field, e))?;
                Ok(GroupElement::Pruefer(x))
            }
            Ambient::Cyclic(n) => {
                let k: i64 = raw.parse().map_err(|_| InputError::new(field, format!("expected an integer, got {raw:?}")))?;
                Ok(GroupElement::Cyclic(CyclicElement::new(k, *n).map_err(|e| InputError::new(field, e))?))
            }
        }
    }
}
