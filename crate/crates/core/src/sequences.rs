//! Finitely described infinite sequences `(xₙ)` and their validators.
//!
//! A schema carries enough structure that the convergence hypotheses can be
//! read off the rule itself; a finite prefix is only ever reported as
//! evidence, never as proof of an "all n" statement.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Pow, Signed};
use serde::{Deserialize, Serialize};

use crate::characters::SetRule;
use crate::elements::{DirectSumElement, GroupElement, OrderSchema, PrimePower, PrueferElement};
use crate::error::{Error, Result};
use crate::numeric::{factorial, is_prime};

/// Coefficient rule `n ↦ aₙ` of the factorial sequence `aₙ / p^{n!}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum CoeffRule {
    Const { a: u64 },
    /// `even` for even `n`, `odd` for odd `n`.
    Alternating { even: u64, odd: u64 },
    Periodic { cycle: Vec<u64> },
}

impl CoeffRule {
    pub fn coeff(&self, n: u64) -> u64 {
        match self {
            CoeffRule::Const { a } => *a,
            CoeffRule::Alternating { even, odd } => {
                if n.is_multiple_of(2) {
                    *even
                } else {
                    *odd
                }
            }
            CoeffRule::Periodic { cycle } => cycle[(n % cycle.len() as u64) as usize],
        }
    }

    fn values(&self) -> Vec<u64> {
        match self {
            CoeffRule::Const { a } => vec![*a],
            CoeffRule::Alternating { even, odd } => vec![*even, *odd],
            CoeffRule::Periodic { cycle } => cycle.clone(),
        }
    }
}

/// Support rule `n ↦ (kₙ, value)` of a basis-type direct-sum sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum SupportRule {
    /// `kₙ = slope·n + offset`.
    Affine { slope: u64, offset: u64, value: i64 },
    /// `kₙ` is the `n`-th index outside the avoided set.
    Complement { value: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrowthPromise {
    pub raczkowski: bool,
}

/// Closed-form integer sequences used for growth classification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum GrowthRule {
    /// `xₙ = n!`, `n ≥ 1`.
    Factorial,
    /// `xₙ = baseⁿ`, `n ≥ 0`.
    Power { base: u64 },
    /// `xₙ = base^{n²}`, `n ≥ 0`.
    PowerSquare { base: u64 },
    /// `xₙ = slope·n + offset`, `n ≥ 0`.
    Affine { slope: u64, offset: u64 },
    /// Listed terms with an optional promised ratio property.
    Prefix {
        #[serde(with = "dec_vec")]
        terms: Vec<BigInt>,
        #[serde(default)]
        promise: Option<GrowthPromise>,
    },
}

mod dec_vec {
    use num_bigint::BigInt;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| s.parse().map_err(D::Error::custom)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", try_from = "SchemaRepr")]
pub enum SequenceSchema {
    /// `xₙ = aₙ / p^{n!}` in `ℤ(p^∞)`, `n ≥ 1`, with `1 ≤ aₙ ≤ p−1`.
    FactorialPruefer { p: u64, coeffs: CoeffRule },
    /// `xₙ = value·e_{kₙ}` in a direct sum, with every `kₙ` outside `S`.
    BasisDirectSum {
        ambient: OrderSchema,
        support: SupportRule,
        #[serde(rename = "S")]
        avoid: SetRule,
    },
    IntegerGrowth { rule: GrowthRule },
    ExplicitPrefix { terms: Vec<GroupElement> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
enum SchemaRepr {
    FactorialPruefer {
        p: u64,
        coeffs: CoeffRule,
    },
    BasisDirectSum {
        ambient: OrderSchema,
        support: SupportRule,
        #[serde(rename = "S")]
        avoid: SetRule,
    },
    IntegerGrowth {
        rule: GrowthRule,
    },
    ExplicitPrefix {
        terms: Vec<GroupElement>,
    },
}

impl TryFrom<SchemaRepr> for SequenceSchema {
    type Error = Error;

    fn try_from(r: SchemaRepr) -> Result<Self> {
        match r {
            SchemaRepr::FactorialPruefer { p, coeffs } => SequenceSchema::factorial_pruefer(p, coeffs),
            SchemaRepr::BasisDirectSum { ambient, support, avoid } => {
                Ok(SequenceSchema::BasisDirectSum { ambient, support, avoid })
            }
            SchemaRepr::IntegerGrowth { rule } => Ok(SequenceSchema::IntegerGrowth { rule }),
            SchemaRepr::ExplicitPrefix { terms } => Ok(SequenceSchema::ExplicitPrefix { terms }),
        }
    }
}

impl SequenceSchema {
    pub fn factorial_pruefer(p: u64, coeffs: CoeffRule) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let CoeffRule::Periodic { cycle } = &coeffs {
            if cycle.is_empty() {
                return Err(Error::invalid("coeffs.cycle", "must be nonempty"));
            }
        }
        if let Some(a) = coeffs.values().into_iter().find(|&a| a == 0 || a >= p) {
            return Err(Error::invalid("coeffs", format!("coefficient {a} outside 1..={}", p - 1)));
        }
        Ok(SequenceSchema::FactorialPruefer { p, coeffs })
    }

    /// Index of the first term.
    pub fn start_index(&self) -> u64 {
        match self {
            SequenceSchema::FactorialPruefer { .. } => 1,
            SequenceSchema::IntegerGrowth { rule: GrowthRule::Factorial } => 1,
            _ => 0,
        }
    }

    /// The index `kₙ` supporting term `n` of a basis-type sequence.
    pub fn support_index(&self, n: u64) -> Option<u64> {
        match self {
            SequenceSchema::BasisDirectSum { support: SupportRule::Affine { slope, offset, .. }, .. } => {
                slope.checked_mul(n)?.checked_add(*offset)
            }
            SequenceSchema::BasisDirectSum { support: SupportRule::Complement { .. }, avoid, .. } => {
                avoid.nth_non_member(n)
            }
            _ => None,
        }
    }

    /// Inverse of [`Self::support_index`]: the unique `n` with `kₙ = k`.
    pub fn support_preimage(&self, k: u64) -> Option<u64> {
        match self {
            SequenceSchema::BasisDirectSum { support: SupportRule::Affine { slope, offset, .. }, .. } => {
                if *slope == 0 || k < *offset || !(k - offset).is_multiple_of(*slope) {
                    None
                } else {
                    Some((k - offset) / slope)
                }
            }
            SequenceSchema::BasisDirectSum { support: SupportRule::Complement { .. }, avoid, .. } => {
                (!avoid.contains(k)).then(|| avoid.non_members_below(k))
            }
            _ => None,
        }
    }

    /// Term `xₙ` for `n ≥ start_index()`.
    pub fn term(&self, n: u64) -> Result<GroupElement> {
        if n < self.start_index() {
            return Err(Error::invalid("n", format!("sequence starts at n = {}", self.start_index())));
        }
        match self {
            SequenceSchema::FactorialPruefer { p, coeffs } => {
                let a = coeffs.coeff(n);
                let exp = factorial(n).ok_or_else(|| Error::SchemaViolation { n, reason: "n! overflows".into() })?;
                Ok(GroupElement::Pruefer(PrueferElement::canonicalize(*p, a, exp)?))
            }
            SequenceSchema::BasisDirectSum { ambient, support, avoid } => {
                let k = self
                    .support_index(n)
                    .ok_or_else(|| Error::SchemaViolation { n, reason: "support index undefined".into() })?;
                if avoid.contains(k) {
                    return Err(Error::SchemaViolation { n, reason: format!("support index {k} lies in S") });
                }
                let value = match support {
                    SupportRule::Affine { value, .. } | SupportRule::Complement { value } => *value,
                };
                let x = DirectSumElement::single(ambient.clone(), k, value);
                if x.is_zero() {
                    return Err(Error::SchemaViolation { n, reason: format!("value {value} vanishes mod {}", ambient.order_at(k)) });
                }
                Ok(GroupElement::DirectSum(x))
            }
            SequenceSchema::IntegerGrowth { rule } => integer_term(rule, n).map(GroupElement::Int),
            SequenceSchema::ExplicitPrefix { terms } => {
                terms.get(n as usize).cloned().ok_or(Error::PrefixExhausted(terms.len()))
            }
        }
    }

    /// The first `count` terms, paired with their indices.
    pub fn indexed(&self, count: u64) -> Result<Vec<(u64, GroupElement)>> {
        if count == 0 {
            return Err(Error::invalid("count", "must be positive"));
        }
        let start = self.start_index();
        let terms = (start..start + count).map(|n| Ok((n, self.term(n)?))).collect::<Result<Vec<_>>>()?;
        if let SequenceSchema::IntegerGrowth { rule: GrowthRule::Prefix { promise: Some(GrowthPromise { raczkowski: true }), .. } } = self {
            let ints: Vec<(u64, BigInt)> = terms.iter().map(|(n, x)| (*n, as_int(x).cloned().unwrap_or_default())).collect();
            if let Some(n) = first_ratio_failure(&ints) {
                return Err(Error::SchemaViolation { n, reason: "promised ratio x(n+1)/x(n) ≥ n+1 fails".into() });
            }
        }
        Ok(terms)
    }

    /// The first `count` terms in canonical form.
    pub fn generate(&self, count: u64) -> Result<Vec<GroupElement>> {
        Ok(self.indexed(count)?.into_iter().map(|(_, x)| x).collect())
    }

    fn orders_in_use(ambient: &OrderSchema) -> Vec<PrimePower> {
        match ambient {
            OrderSchema::Constant { order } => vec![*order],
            OrderSchema::Periodic { cycle } => cycle.clone(),
            OrderSchema::Prefix { prefix, default } => prefix.iter().copied().chain([*default]).collect(),
        }
    }
}

fn integer_term(rule: &GrowthRule, n: u64) -> Result<BigInt> {
    Ok(match rule {
        GrowthRule::Factorial => (1..=n).map(BigInt::from).product(),
        GrowthRule::Power { base } => BigInt::from(*base).pow(n),
        GrowthRule::PowerSquare { base } => {
            let e = n.checked_mul(n).ok_or_else(|| Error::SchemaViolation { n, reason: "n² overflows".into() })?;
            BigInt::from(*base).pow(e)
        }
        GrowthRule::Affine { slope, offset } => BigInt::from(*slope) * n + offset,
        GrowthRule::Prefix { terms, .. } => terms.get(n as usize).cloned().ok_or(Error::PrefixExhausted(terms.len()))?,
    })
}

fn as_int(x: &GroupElement) -> Option<&BigInt> {
    match x {
        GroupElement::Int(v) => Some(v),
        _ => None,
    }
}

/// First `n` with `x(n+1) < (n+1)·x(n)`.
fn first_ratio_failure(terms: &[(u64, BigInt)]) -> Option<u64> {
    terms.windows(2).find(|w| w[1].1 < BigInt::from(w[0].0 + 1) * &w[0].1).map(|w| w[0].0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm51Validation {
    /// The schema guarantees conditions (i) and (ii) for every `n`.
    pub structural: bool,
    /// The inspected prefix satisfies them.
    pub prefix_verified: bool,
}

/// Checks the two direct-sum hypotheses against `S`: (i) no term is supported
/// in `S`; (ii) each index is hit by finitely many terms.
///
/// On a finite prefix, (ii) is checked in its basis form: no index is
/// supported by two different terms.
pub fn validate_thm51(seq: &SequenceSchema, s: &SetRule, prefix: u64) -> Thm51Validation {
    let structural = match seq {
        SequenceSchema::BasisDirectSum { ambient, support, avoid } => {
            let value = match support {
                SupportRule::Affine { value, .. } | SupportRule::Complement { value } => *value,
            };
            let nonzero = SequenceSchema::orders_in_use(ambient).iter().all(|pp| value.rem_euclid(pp.order() as i64) != 0);
            let avoids = match support {
                SupportRule::Affine { slope, offset, .. } => {
                    *slope >= 1 && !s.meets_progression(*slope, *offset) && !avoid.meets_progression(*slope, *offset)
                }
                SupportRule::Complement { .. } => avoid.is_coinfinite() && rule_subset(s, avoid),
            };
            s.is_infinite() && nonzero && avoids
        }
        _ => false,
    };

    let len = match seq {
        SequenceSchema::ExplicitPrefix { terms } => prefix.min(terms.len() as u64),
        _ => prefix,
    };
    let prefix_verified = len > 0
        && match seq.indexed(len) {
            Ok(terms) => {
                let mut seen = BTreeSet::new();
                terms.iter().all(|(_, x)| match x {
                    GroupElement::DirectSum(x) => x.support().keys().all(|&k| !s.contains(k) && seen.insert(k)),
                    _ => false,
                })
            }
            Err(_) => false,
        };

    Thm51Validation { structural, prefix_verified }
}

/// `a ⊆ b`, decided over a joint eventual period.
pub(crate) fn rule_subset(a: &SetRule, b: &SetRule) -> bool {
    let (ta, pa) = a.eventual_period();
    let (tb, pb) = b.eventual_period();
    let top = ta.max(tb) + num_integer::lcm(pa, pb);
    (0..top).all(|k| !a.contains(k) || b.contains(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GrowthBasis {
    /// Both flags follow from the closed form.
    RuleCertified,
    /// Only the listed prefix was inspected.
    PrefixEvidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthClass {
    /// `x(n+1)/x(n) ≥ n+1`.
    pub raczkowski: bool,
    /// `x(n+1)/x(n) → ∞`.
    pub barbieri: bool,
    pub basis: GrowthBasis,
}

/// Classifies an integer sequence by the two ratio-growth criteria.
pub fn classify_growth(seq: &SequenceSchema, prefix: u64) -> Result<GrowthClass> {
    let terms: Vec<(u64, BigInt)> = match seq {
        SequenceSchema::IntegerGrowth { rule: GrowthRule::Prefix { terms, .. } } => {
            terms.iter().take(prefix as usize).cloned().enumerate().map(|(i, v)| (i as u64, v)).collect()
        }
        SequenceSchema::IntegerGrowth { .. } => {
            seq.indexed(prefix)?.into_iter().map(|(n, x)| (n, as_int(&x).cloned().expect("integer schema"))).collect()
        }
        SequenceSchema::ExplicitPrefix { terms } => terms
            .iter()
            .take(prefix as usize)
            .enumerate()
            .map(|(i, x)| {
                as_int(x)
                    .map(|v| (i as u64, v.clone()))
                    .ok_or_else(|| Error::Precondition(format!("term {i} is not an integer")))
            })
            .collect::<Result<_>>()?,
        _ => return Err(Error::Precondition("growth classification needs an integer sequence".into())),
    };
    if let Some((n, v)) = terms.iter().find(|(_, v)| !v.is_positive()) {
        return Err(Error::invalid("terms", format!("x({n}) = {v} is not positive")));
    }
    let prefix_racz = first_ratio_failure(&terms).is_none();

    let rule = match seq {
        SequenceSchema::IntegerGrowth { rule } => Some(rule),
        _ => None,
    };
    Ok(match rule {
        // n!: ratio n+1 exactly.
        Some(GrowthRule::Factorial) => GrowthClass { raczkowski: prefix_racz, barbieri: true, basis: GrowthBasis::RuleCertified },
        // base^{n²}: ratio base^{2n+1} ≥ 2^{2n+1} ≥ n+1 when base ≥ 2.
        Some(GrowthRule::PowerSquare { base }) if *base >= 2 => {
            GrowthClass { raczkowski: prefix_racz, barbieri: true, basis: GrowthBasis::RuleCertified }
        }
        // Bounded ratios: constant base, or (s(n+1)+o)/(sn+o) → 1.
        Some(GrowthRule::Power { .. } | GrowthRule::PowerSquare { .. } | GrowthRule::Affine { .. }) => {
            GrowthClass { raczkowski: false, barbieri: false, basis: GrowthBasis::RuleCertified }
        }
        Some(GrowthRule::Prefix { .. }) | None => {
            let increasing = terms.windows(3).all(|w| &w[2].1 * &w[0].1 > &w[1].1 * &w[1].1);
            GrowthClass {
                raczkowski: prefix_racz,
                barbieri: prefix_racz && increasing && terms.len() >= 3,
                basis: GrowthBasis::PrefixEvidence,
            }
        }
    })
}
