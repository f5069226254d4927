//! Characters into `𝕋` and their exact evaluation.
//!
//! Three concrete families are supported, one per ambient group:
//!
//! - [`SumCharacter`]: `h_A(x) = Σ_{k∈A} x(k)` on `⊕ₖ ℤ(pₖ^rₖ)`;
//! - [`PadicCharacter`]: a digit sequence `(h(k))` in `Δ_p`, acting on
//!   `a/pⁿ ∈ ℤ(p^∞)` by `(a/pⁿ)·Σ_{k<n} h(k)·p^k mod 1`;
//! - [`RotationCharacter`]: `m ↦ m·t` on `ℤ`, with `t` rational or given by a
//!   series with a certified tail bound.
//!
//! [`Character::Combination`] closes the families under integer combinations.

mod index_set;
mod topology;

pub use index_set::{factorial_argument, IndexSet, SetRule};
pub use topology::{basic_nbhd_contains, CharacterFamily, TopologySpec, Weight};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::circle::{self, CirclePoint};
use crate::elements::{DirectSumElement, GroupElement, OrderSchema, PrueferElement};
use crate::error::{Error, Result};
use crate::numeric::{abs_rational, dec_string, half, is_prime, rational_string, rational_vec};

/// Coordinate-sum character `h_A` on a countable direct sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SumCharacter {
    pub ambient: OrderSchema,
    pub index_set: IndexSet,
}

impl SumCharacter {
    pub fn new(ambient: OrderSchema, index_set: IndexSet) -> Self {
        SumCharacter { ambient, index_set }
    }

    pub fn eval(&self, x: &DirectSumElement) -> Result<CirclePoint> {
        if x.ambient() != &self.ambient {
            return Err(Error::AmbientMismatch(format!("character on {}, element in {}", self.ambient, x.ambient())));
        }
        Ok(x.support().keys().filter(|&&k| self.index_set.contains(k)).map(|&k| x.coord(k)).sum())
    }
}

/// Digit rule `k ↦ h(k) ∈ {0, …, p−1}` of an element of `Δ_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum DigitRule {
    FiniteSupport { digits: BTreeMap<u64, u64> },
    /// `h(k) = 1` on the set, `0` elsewhere.
    Indicator { set: IndexSet },
    Prefix { prefix: Vec<u64>, default: u64 },
}

impl DigitRule {
    pub fn zero() -> Self {
        DigitRule::FiniteSupport { digits: BTreeMap::new() }
    }

    pub fn digit(&self, k: u64) -> u64 {
        match self {
            DigitRule::FiniteSupport { digits } => digits.get(&k).copied().unwrap_or(0),
            DigitRule::Indicator { set } => set.contains(k) as u64,
            DigitRule::Prefix { prefix, default } => {
                usize::try_from(k).ok().and_then(|i| prefix.get(i)).copied().unwrap_or(*default)
            }
        }
    }

    /// Nonzero digits at positions `k < bound`, in increasing order.
    pub fn nonzero_digits_below(&self, bound: u64) -> Vec<(u64, u64)> {
        match self {
            DigitRule::FiniteSupport { digits } => {
                digits.range(..bound).filter(|(_, &d)| d != 0).map(|(&k, &d)| (k, d)).collect()
            }
            DigitRule::Indicator { set } => set.members_below(bound).into_iter().map(|k| (k, 1)).collect(),
            DigitRule::Prefix { .. } => (0..bound).map(|k| (k, self.digit(k))).filter(|&(_, d)| d != 0).collect(),
        }
    }

    /// Largest digit value in use.
    pub fn max_digit(&self) -> u64 {
        match self {
            DigitRule::FiniteSupport { digits } => digits.values().copied().max().unwrap_or(0),
            DigitRule::Indicator { .. } => 1,
            DigitRule::Prefix { prefix, default } => prefix.iter().copied().chain([*default]).max().unwrap_or(0),
        }
    }

    /// Largest position carrying a nonzero digit, or `None` if there are
    /// infinitely many. The zero rule reports `Some(None)`.
    pub fn finite_support_max(&self) -> Option<Option<u64>> {
        match self {
            DigitRule::FiniteSupport { digits } => Some(digits.iter().filter(|(_, &d)| d != 0).map(|(&k, _)| k).max()),
            DigitRule::Indicator { set } => set.is_finite().then(|| set.max_member()),
            DigitRule::Prefix { prefix, default } => {
                (*default == 0).then(|| prefix.iter().rposition(|&d| d != 0).map(|i| i as u64))
            }
        }
    }

    /// Whether the rule is the 0/1 indicator of a subset of `Fac`.
    pub fn is_fac_indicator(&self) -> bool {
        match self {
            DigitRule::Indicator { set } => set.is_subset_of_fac(),
            DigitRule::FiniteSupport { digits } => digits
                .iter()
                .filter(|(_, &d)| d != 0)
                .all(|(&k, &d)| d == 1 && factorial_argument(k).is_some()),
            DigitRule::Prefix { prefix, default } => {
                *default == 0
                    && prefix.iter().enumerate().all(|(k, &d)| d == 0 || (d == 1 && factorial_argument(k as u64).is_some()))
            }
        }
    }
}

/// Element `h = (h(k))_{k<ω}` of `Δ_p = Hom(ℤ(p^∞), 𝕋)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PadicRepr")]
pub struct PadicCharacter {
    p: u64,
    digits: DigitRule,
}

#[derive(Deserialize)]
struct PadicRepr {
    p: u64,
    digits: DigitRule,
}

impl TryFrom<PadicRepr> for PadicCharacter {
    type Error = Error;

    fn try_from(r: PadicRepr) -> Result<Self> {
        PadicCharacter::new(r.p, r.digits)
    }
}

impl PadicCharacter {
    /// Digits must lie in `{0, …, p−1}`; the indicator and explicit variants
    /// are checked here, since their values are finitely listed.
    pub fn new(p: u64, digits: DigitRule) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if digits.max_digit() >= p {
            return Err(Error::invalid("digits", format!("digit {} out of range 0..={}", digits.max_digit(), p - 1)));
        }
        Ok(PadicCharacter { p, digits })
    }

    /// Digit `1` on `set`, `0` elsewhere.
    pub fn indicator(p: u64, set: IndexSet) -> Result<Self> {
        Self::new(p, DigitRule::Indicator { set })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn digits(&self) -> &DigitRule {
        &self.digits
    }

    /// `h(1/pⁿ)·pⁿ = Σ_{k<n} h(k)·p^k`.
    pub fn digit_sum(&self, n: u64) -> BigUint {
        let p = BigUint::from(self.p);
        self.digits
            .nonzero_digits_below(n)
            .into_iter()
            .map(|(k, d)| BigUint::from(d) * p.clone().pow(k))
            .sum()
    }

    pub fn eval(&self, x: &PrueferElement) -> Result<CirclePoint> {
        if x.prime() != self.p {
            return Err(Error::AmbientMismatch(format!("character on Z({}^∞), element in Z({}^∞)", self.p, x.prime())));
        }
        let n = x.exponent();
        let num = x.numerator() * self.digit_sum(n);
        Ok(CirclePoint::from_parts(&num, &BigUint::from(self.p).pow(n)))
    }
}

/// Series `t = Σ cₙ` with a certified tail bound `B(N) ≥ |Σ_{n>N} cₙ|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", try_from = "SeriesRepr")]
pub enum SeriesRule {
    Zero,
    /// `cₙ = coeff / baseⁿ` for `n ≥ start`; `B(N) = 2|coeff| / base^{N+1}`.
    Geometric {
        #[serde(with = "rational_string")]
        coeff: BigRational,
        base: u64,
        start: u64,
    },
    /// Terms `c₁, …, c_L`; `B(N)` is the exact remaining absolute sum.
    Finite {
        #[serde(with = "rational_vec")]
        terms: Vec<BigRational>,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
enum SeriesRepr {
    Zero,
    Geometric {
        #[serde(with = "rational_string")]
        coeff: BigRational,
        base: u64,
        start: u64,
    },
    Finite {
        #[serde(with = "rational_vec")]
        terms: Vec<BigRational>,
    },
}

impl TryFrom<SeriesRepr> for SeriesRule {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        Ok(match r {
            SeriesRepr::Zero => SeriesRule::Zero,
            SeriesRepr::Geometric { coeff, base, start } => {
                if base < 2 {
                    return Err(Error::invalid("series.base", "must be at least 2"));
                }
                SeriesRule::Geometric { coeff, base, start }
            }
            SeriesRepr::Finite { terms } => SeriesRule::Finite { terms },
        })
    }
}

impl SeriesRule {
    /// First index the truncation may start from.
    fn first_index(&self) -> u64 {
        match self {
            SeriesRule::Zero => 0,
            SeriesRule::Geometric { start, .. } => start.saturating_sub(1),
            SeriesRule::Finite { .. } => 0,
        }
    }

    pub fn term(&self, n: u64) -> BigRational {
        match self {
            SeriesRule::Zero => BigRational::zero(),
            SeriesRule::Geometric { coeff, base, start } => {
                if n < *start {
                    BigRational::zero()
                } else {
                    coeff / BigRational::from_integer(BigInt::from(*base).pow(n))
                }
            }
            SeriesRule::Finite { terms } => match n.checked_sub(1).and_then(|i| terms.get(i as usize)) {
                Some(t) => t.clone(),
                None => BigRational::zero(),
            },
        }
    }

    /// `Σ_{n ≤ N} cₙ`.
    pub fn partial_sum(&self, big_n: u64) -> BigRational {
        match self {
            SeriesRule::Zero => BigRational::zero(),
            SeriesRule::Geometric { start, .. } => (*start..=big_n).map(|n| self.term(n)).sum(),
            SeriesRule::Finite { terms } => terms.iter().take(big_n as usize).cloned().sum(),
        }
    }

    /// Certified `B(N)`; only meaningful for `N ≥ first_index()`.
    pub fn tail_bound(&self, big_n: u64) -> BigRational {
        match self {
            SeriesRule::Zero => BigRational::zero(),
            SeriesRule::Geometric { coeff, base, .. } => {
                abs_rational(coeff) * BigRational::from_integer(2.into())
                    / BigRational::from_integer(BigInt::from(*base).pow(big_n + 1))
            }
            SeriesRule::Finite { terms } => terms.iter().skip(big_n as usize).map(abs_rational).sum(),
        }
    }
}

/// Character `m ↦ m·t` of `ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RotationCharacter {
    ExactRational {
        #[serde(with = "circle::as_text")]
        t: CirclePoint,
    },
    SeriesDescribed { series: SeriesRule },
}

/// Truncation budget for series-described rotations.
pub const SERIES_BUDGET: u64 = 100_000;

impl RotationCharacter {
    pub fn exact(t: CirclePoint) -> Self {
        RotationCharacter::ExactRational { t }
    }

    pub fn eval_exact(&self, m: &BigInt) -> Result<CirclePoint> {
        match self {
            RotationCharacter::ExactRational { t } => Ok(t.scale(m)),
            RotationCharacter::SeriesDescribed { series: SeriesRule::Zero } => Ok(CirclePoint::zero()),
            RotationCharacter::SeriesDescribed { .. } => Err(Error::Inexact),
        }
    }

    /// Value at `m`, as an interval of width at most `precision` when `t`
    /// is only known through its series.
    pub fn eval(&self, m: &BigInt, precision: &BigRational) -> Result<CircleValue> {
        if !precision.is_positive() {
            return Err(Error::invalid("precision", "must be positive"));
        }
        let series = match self {
            RotationCharacter::ExactRational { t } => return Ok(CircleValue::Exact(t.scale(m))),
            RotationCharacter::SeriesDescribed { series } => series,
        };
        let scale = BigRational::from_integer(m.abs());
        let two = BigRational::from_integer(2.into());
        let start = series.first_index();
        let fits = |n: u64| &two * &scale * series.tail_bound(n) <= *precision;
        // B is non-increasing, so the least admissible N is found by bisection.
        let (mut lo, mut hi) = (start, start + SERIES_BUDGET);
        if !fits(hi) {
            return Err(Error::PrecisionBudget { precision: precision.to_string(), budget: SERIES_BUDGET });
        }
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if fits(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let big_n = lo;
        let center = CirclePoint::from_rational(&(series.partial_sum(big_n) * BigRational::from_integer(m.clone())));
        Ok(CircleValue::Interval { center, radius: scale * series.tail_bound(big_n) })
    }
}

/// Character `k ↦ j·k/n` of `ℤ(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicCharacter {
    pub n: u64,
    pub j: u64,
}

/// One summand `m·h` of an integer combination.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "dec_string")]
    pub coeff: BigInt,
    pub character: Character,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Character {
    Sum(SumCharacter),
    Padic(PadicCharacter),
    Rotation(RotationCharacter),
    Cyclic(CyclicCharacter),
    Combination { terms: Vec<Term> },
}

impl From<SumCharacter> for Character {
    fn from(h: SumCharacter) -> Self {
        Character::Sum(h)
    }
}

impl From<PadicCharacter> for Character {
    fn from(h: PadicCharacter) -> Self {
        Character::Padic(h)
    }
}

impl From<RotationCharacter> for Character {
    fn from(h: RotationCharacter) -> Self {
        Character::Rotation(h)
    }
}

impl Character {
    pub fn combination(terms: impl IntoIterator<Item = (BigInt, Character)>) -> Self {
        Character::Combination {
            terms: terms.into_iter().map(|(coeff, character)| Term { coeff, character }).collect(),
        }
    }

    /// Exact value `h(x)`.
    pub fn eval(&self, x: &GroupElement) -> Result<CirclePoint> {
        match (self, x) {
            (Character::Sum(h), GroupElement::DirectSum(x)) => h.eval(x),
            (Character::Padic(h), GroupElement::Pruefer(x)) => h.eval(x),
            (Character::Rotation(h), GroupElement::Int(m)) => h.eval_exact(m),
            (Character::Cyclic(h), GroupElement::Cyclic(c)) if h.n == c.modulus() => Ok(CirclePoint::from_parts(
                &(BigUint::from(h.j) * c.value()),
                &BigUint::from(h.n),
            )),
            (Character::Combination { terms }, x) => terms
                .iter()
                .map(|t| Ok(t.character.eval(x)?.scale(&t.coeff)))
                .sum::<Result<CirclePoint>>(),
            _ => Err(Error::Mismatch(format!("{} character on {}", self.kind(), x.describe_ambient()))),
        }
    }

    /// `h(x)`, exactly where possible and otherwise as an interval of width
    /// at most `precision`.
    pub fn eval_approx(&self, x: &GroupElement, precision: &BigRational) -> Result<CircleValue> {
        match (self, x) {
            (Character::Rotation(h), GroupElement::Int(m)) => h.eval(m, precision),
            (Character::Combination { terms }, x) => {
                let weight: BigRational = terms.iter().map(|t| BigRational::from_integer(t.coeff.abs())).sum();
                if weight.is_zero() {
                    return Ok(CircleValue::Exact(CirclePoint::zero()));
                }
                let share = precision / weight;
                let mut center = CirclePoint::zero();
                let mut radius = BigRational::zero();
                let mut exact = true;
                for t in terms.iter().filter(|t| !t.coeff.is_zero()) {
                    match t.character.eval_approx(x, &share)? {
                        CircleValue::Exact(v) => center = &center + &v.scale(&t.coeff),
                        CircleValue::Interval { center: c, radius: r } => {
                            exact = false;
                            center = &center + &c.scale(&t.coeff);
                            radius += r * BigRational::from_integer(t.coeff.abs());
                        }
                    }
                }
                Ok(if exact { CircleValue::Exact(center) } else { CircleValue::Interval { center, radius } })
            }
            _ => self.eval(x).map(CircleValue::Exact),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Character::Sum(_) => "sum",
            Character::Padic(_) => "padic",
            Character::Rotation(_) => "rotation",
            Character::Cyclic(_) => "cyclic",
            Character::Combination { .. } => "combination",
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match serde_json::to_string(self) {
            Ok(s) => f.write_str(&s),
            Err(_) => f.write_str(self.kind()),
        }
    }
}

/// A value in `𝕋` that is either exact or known to lie within `radius` of
/// `center`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CircleValueRepr", from = "CircleValueRepr")]
pub enum CircleValue {
    Exact(CirclePoint),
    Interval { center: CirclePoint, radius: BigRational },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
enum CircleValueRepr {
    Exact {
        #[serde(with = "circle::as_text")]
        value: CirclePoint,
    },
    Interval {
        #[serde(with = "circle::as_text")]
        center: CirclePoint,
        #[serde(with = "rational_string")]
        radius: BigRational,
    },
}

impl From<CircleValue> for CircleValueRepr {
    fn from(v: CircleValue) -> Self {
        match v {
            CircleValue::Exact(value) => CircleValueRepr::Exact { value },
            CircleValue::Interval { center, radius } => CircleValueRepr::Interval { center, radius },
        }
    }
}

impl From<CircleValueRepr> for CircleValue {
    fn from(r: CircleValueRepr) -> Self {
        match r {
            CircleValueRepr::Exact { value } => CircleValue::Exact(value),
            CircleValueRepr::Interval { center, radius } => CircleValue::Interval { center, radius },
        }
    }
}

impl CircleValue {
    pub fn center(&self) -> &CirclePoint {
        match self {
            CircleValue::Exact(v) => v,
            CircleValue::Interval { center, .. } => center,
        }
    }

    pub fn radius(&self) -> BigRational {
        match self {
            CircleValue::Exact(_) => BigRational::zero(),
            CircleValue::Interval { radius, .. } => radius.clone(),
        }
    }

    pub fn width(&self) -> BigRational {
        self.radius() * BigRational::from_integer(2.into())
    }

    /// Lower bound on the distance to `0`.
    pub fn dist_lower(&self) -> BigRational {
        let d = self.center().dist_to_zero() - self.radius();
        if d.is_negative() {
            BigRational::zero()
        } else {
            d
        }
    }

    /// Upper bound on the distance to `0`.
    pub fn dist_upper(&self) -> BigRational {
        let d = self.center().dist_to_zero() + self.radius();
        d.min(half())
    }

    /// Whether the exact point `p` is compatible with this value.
    pub fn contains(&self, p: &CirclePoint) -> bool {
        (p - self.center()).dist_to_zero() <= self.radius()
    }
}

/// A witness element telling two coordinate-sum characters apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distinction {
    pub index: u64,
    pub witness: GroupElement,
    #[serde(with = "circle::as_text")]
    pub left: CirclePoint,
    #[serde(with = "circle::as_text")]
    pub right: CirclePoint,
}

/// Finds the least `k < bound` in `A △ A′` and the element `e_k` (value `1`
/// at `k`, zero elsewhere), on which the two characters differ.
pub fn distinguish_characters(h: &SumCharacter, h2: &SumCharacter, bound: u64) -> Result<Distinction> {
    if h.ambient != h2.ambient {
        return Err(Error::AmbientMismatch(format!("{} vs {}", h.ambient, h2.ambient)));
    }
    let index = (0..bound)
        .find(|&k| h.index_set.contains(k) != h2.index_set.contains(k))
        .ok_or(Error::Indistinguishable(bound))?;
    let x = DirectSumElement::single(h.ambient.clone(), index, 1);
    let left = h.eval(&x)?;
    let right = h2.eval(&x)?;
    if left == right {
        return Err(Error::Internal(format!("witness e_{index} does not separate")));
    }
    Ok(Distinction { index, witness: GroupElement::DirectSum(x), left, right })
}

/// A character separating two points, with its values on both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub character: Character,
    #[serde(with = "circle::as_text")]
    pub left: CirclePoint,
    #[serde(with = "circle::as_text")]
    pub right: CirclePoint,
}

/// Returns a character `h` with `h(x) ≠ h(y)`.
///
/// Direct sums get the singleton-index character at the least differing
/// coordinate; `ℤ(p^∞)` gets the single-digit character at position `n−1`,
/// where `a/pⁿ = x − y`; `ℤ` gets the rotation by `1/n` for the least `n`
/// with `x ≢ y (mod n)`.
pub fn separate_points(x: &GroupElement, y: &GroupElement) -> Result<Separation> {
    let diff = x.sub(y)?;
    if diff.is_zero() {
        return Err(Error::EqualPoints);
    }
    let character = match &diff {
        GroupElement::DirectSum(d) => {
            let k = *d.support().keys().next().expect("nonzero difference has support");
            Character::Sum(SumCharacter::new(d.ambient().clone(), IndexSet::finite([k])))
        }
        GroupElement::Pruefer(d) => {
            let digits = BTreeMap::from([(d.exponent() - 1, 1)]);
            Character::Padic(PadicCharacter::new(d.prime(), DigitRule::FiniteSupport { digits })?)
        }
        GroupElement::Int(d) => {
            let d = d.abs();
            let n = (2u64..).map(BigInt::from).find(|n| !(&d % n).is_zero()).expect("nonzero integer has a non-divisor");
            Character::Rotation(RotationCharacter::exact(CirclePoint::new(1, n)?))
        }
        GroupElement::Cyclic(c) => Character::Cyclic(CyclicCharacter { n: c.modulus(), j: 1 }),
    };
    let left = character.eval(x)?;
    let right = character.eval(y)?;
    if left == right {
        return Err(Error::Internal("separating character failed re-evaluation".into()));
    }
    Ok(Separation { character, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::PrimePower;
    use proptest::prelude::*;

    fn pt(s: &str) -> CirclePoint {
        s.parse().unwrap()
    }

    fn pr(p: u64, a: i64, n: u64) -> PrueferElement {
        PrueferElement::canonicalize(p, a, n).unwrap()
    }

    #[test]
    fn circle_value_json() {
        let v = CircleValue::Exact(pt("1/3"));
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, r#"{"kind":"exact","value":"1/3"}"#);
        assert_eq!(serde_json::from_str::<CircleValue>(&j).unwrap(), v);
        let w = CircleValue::Interval { center: pt("1/4"), radius: BigRational::new(1.into(), 100.into()) };
        let j = serde_json::to_string(&w).unwrap();
        assert_eq!(j, r#"{"kind":"interval","center":"1/4","radius":"1/100"}"#);
        assert_eq!(serde_json::from_str::<CircleValue>(&j).unwrap(), w);
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Brute-force coordinate sum: walk every index up to the largest
    /// supported one.
    fn sum_oracle(h: &SumCharacter, x: &DirectSumElement) -> CirclePoint {
        let top = x.support().keys().next_back().map_or(0, |k| k + 1);
        let mut acc = BigRational::zero();
        for k in 0..top {
            if h.index_set.contains(k) {
                let v = x.support().get(&k).copied().unwrap_or(0);
                acc += q(v as i64, h.ambient.order_at(k) as i64);
            }
        }
        CirclePoint::from_rational(&acc)
    }

    #[test]
    fn sum_character_examples() {
        let two = OrderSchema::constant(2, 1).unwrap();
        let h = SumCharacter::new(two.clone(), IndexSet::finite([0]));
        assert_eq!(h.eval(&DirectSumElement::single(two.clone(), 0, 1)).unwrap(), pt("1/2"));

        let h = SumCharacter::new(two.clone(), IndexSet::SubsetOfS { s: SetRule::evens(), rule: SetRule::All });
        let x = DirectSumElement::new(two.clone(), [(1, 1), (3, 1), (7, 1)]);
        assert!(h.eval(&x).unwrap().is_zero());

        let three = OrderSchema::constant(3, 1).unwrap();
        let h = SumCharacter::new(three.clone(), IndexSet::finite([1, 3]));
        let x = DirectSumElement::new(three, [(1, 1), (3, 2)]);
        assert!(h.eval(&x).unwrap().is_zero());
        assert_eq!(sum_oracle(&h, &x), CirclePoint::zero());

        let h = SumCharacter::new(two.clone(), IndexSet::finite([0]));
        let other = DirectSumElement::single(OrderSchema::constant(3, 1).unwrap(), 0, 1);
        assert!(matches!(h.eval(&other), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn padic_examples() {
        // Digits of the Fac indicator at p = 2: h(0)=0, h(1)=1, h(2)=1.
        let fac = PadicCharacter::indicator(2, IndexSet::all_of_fac()).unwrap();
        assert_eq!(fac.eval(&pr(2, 1, 3)).unwrap(), pt("3/4"));

        let zero = PadicCharacter::new(5, DigitRule::zero()).unwrap();
        assert!(zero.eval(&pr(5, 17, 4)).unwrap().is_zero());

        let h0 = PadicCharacter::new(2, DigitRule::FiniteSupport { digits: [(0, 1)].into() }).unwrap();
        assert_eq!(h0.eval(&pr(2, 1, 2)).unwrap(), pt("1/4"));

        assert!(matches!(h0.eval(&pr(3, 1, 1)), Err(Error::AmbientMismatch(_))));
        assert!(PadicCharacter::new(3, DigitRule::Prefix { prefix: vec![3], default: 0 }).is_err());
        assert!(PadicCharacter::new(3, DigitRule::Prefix { prefix: vec![2], default: 1 }).is_ok());
    }

    #[test]
    fn rotation_examples() {
        let r = RotationCharacter::exact(pt("1/3"));
        assert_eq!(r.eval_exact(&4.into()).unwrap(), pt("1/3"));

        let zero = RotationCharacter::SeriesDescribed { series: SeriesRule::Zero };
        let v = zero.eval(&7.into(), &q(1, 1000)).unwrap();
        assert!(v.center().is_zero());
        assert!(v.width().is_zero());

        let tenth = RotationCharacter::SeriesDescribed {
            series: SeriesRule::Geometric { coeff: q(1, 1), base: 10, start: 1 },
        };
        let v = tenth.eval(&1.into(), &q(1, 100)).unwrap();
        assert!(v.width() <= q(1, 100));
        assert!(v.contains(&pt("1/9")));
        assert!(matches!(tenth.eval_exact(&1.into()), Err(Error::Inexact)));

        let v = tenth.eval(&BigInt::from(10).pow(40u32), &q(1, 100)).unwrap();
        // 10^40 · (1/9) = 1/9 mod 1 up to the integer part.
        assert!(v.contains(&pt("1/9")));
        assert!(v.width() <= q(1, 100));
    }

    #[test]
    fn rotation_budget_exhaustion() {
        let finite = RotationCharacter::SeriesDescribed { series: SeriesRule::Finite { terms: vec![q(1, 2), q(1, 3)] } };
        let v = finite.eval(&5.into(), &q(1, 10)).unwrap();
        assert_eq!(v, CircleValue::Interval { center: CirclePoint::from_rational(&(q(5, 2) + q(5, 3))), radius: q(0, 1) });
        assert!(matches!(finite.eval(&5.into(), &q(0, 1)), Err(Error::Invalid { .. })));

        let slow = RotationCharacter::SeriesDescribed {
            series: SeriesRule::Geometric { coeff: q(1, 1), base: 2, start: 1 },
        };
        let huge = BigInt::from(2).pow(200_000u32);
        assert!(matches!(slow.eval(&huge, &q(1, 2)), Err(Error::PrecisionBudget { .. })));
    }

    #[test]
    fn distinguish_examples() {
        let amb = OrderSchema::constant(3, 2).unwrap();
        let h = SumCharacter::new(amb.clone(), IndexSet::finite([0]));
        let h2 = SumCharacter::new(amb.clone(), IndexSet::finite([1]));
        let d = distinguish_characters(&h, &h2, 100).unwrap();
        assert_eq!(d.index, 0);
        assert_eq!((d.left.clone(), d.right.clone()), (pt("1/9"), CirclePoint::zero()));

        let s = SumCharacter::new(amb.clone(), IndexSet::SubsetOfS { s: SetRule::evens(), rule: SetRule::All });
        let s_minus = SumCharacter::new(amb.clone(), IndexSet::SubsetOfS { s: SetRule::evens(), rule: SetRule::cofinite([6]) });
        assert_eq!(distinguish_characters(&s, &s_minus, 100).unwrap().index, 6);

        assert_eq!(distinguish_characters(&h, &h, 50), Err(Error::Indistinguishable(50)));
        let far = SumCharacter::new(amb, IndexSet::finite([500]));
        assert_eq!(distinguish_characters(&h2, &SumCharacter { index_set: IndexSet::finite([1, 500]), ..far }, 100), Err(Error::Indistinguishable(100)));
    }

    #[test]
    fn separate_examples() {
        let two = OrderSchema::constant(2, 1).unwrap();
        let x = GroupElement::DirectSum(DirectSumElement::single(two.clone(), 5, 1));
        let y = GroupElement::DirectSum(DirectSumElement::zero(two.clone()));
        let s = separate_points(&x, &y).unwrap();
        assert_eq!(s.character, Character::Sum(SumCharacter::new(two, IndexSet::finite([5]))));
        assert_eq!((s.left, s.right), (pt("1/2"), CirclePoint::zero()));

        let s = separate_points(&GroupElement::Int(3.into()), &GroupElement::Int(5.into())).unwrap();
        assert_eq!(s.character, Character::Rotation(RotationCharacter::exact(pt("1/3"))));
        assert_eq!((s.left, s.right), (CirclePoint::zero(), pt("2/3")));

        let s = separate_points(&GroupElement::Pruefer(pr(2, 1, 1)), &GroupElement::Pruefer(pr(2, 0, 0))).unwrap();
        assert_eq!(
            s.character,
            Character::Padic(PadicCharacter::new(2, DigitRule::FiniteSupport { digits: [(0, 1)].into() }).unwrap())
        );
        assert_eq!((s.left, s.right), (pt("1/2"), CirclePoint::zero()));

        let c = GroupElement::Cyclic(crate::elements::CyclicElement::new(2, 6).unwrap());
        let c2 = GroupElement::Cyclic(crate::elements::CyclicElement::new(5, 6).unwrap());
        assert!(separate_points(&c, &c2).is_ok());
        assert_eq!(separate_points(&c, &c), Err(Error::EqualPoints));
    }

    #[test]
    fn json_descriptors() {
        let h = Character::Rotation(RotationCharacter::exact(pt("1/3")));
        let j = serde_json::to_string(&h).unwrap();
        assert_eq!(j, r#"{"kind":"rotation","t":"1/3"}"#);
        assert_eq!(serde_json::from_str::<Character>(&j).unwrap(), h);

        let series: Character = serde_json::from_str(
            r#"{"kind":"rotation","series":{"kind":"geometric","coeff":"1","base":10,"start":1}}"#,
        )
        .unwrap();
        assert!(matches!(series, Character::Rotation(RotationCharacter::SeriesDescribed { .. })));

        let padic: Character = serde_json::from_str(
            r#"{"kind":"padic","p":2,"digits":{"kind":"indicator","set":{"kind":"subsetOfFac","rule":{"kind":"all"}}}}"#,
        )
        .unwrap();
        assert_eq!(padic, Character::Padic(PadicCharacter::indicator(2, IndexSet::all_of_fac()).unwrap()));
        assert!(serde_json::from_str::<Character>(r#"{"kind":"padic","p":4,"digits":{"kind":"finiteSupport","digits":{}}}"#).is_err());

        let comb = Character::combination([(BigInt::from(-2), padic)]);
        let j = serde_json::to_string(&comb).unwrap();
        assert_eq!(serde_json::from_str::<Character>(&j).unwrap(), comb);
    }

    #[test]
    fn combination_eval() {
        let h1 = Character::Padic(PadicCharacter::indicator(3, IndexSet::finite([0])).unwrap());
        let h2 = Character::Padic(PadicCharacter::indicator(3, IndexSet::finite([1])).unwrap());
        let c = Character::combination([(BigInt::from(2), h1.clone()), (BigInt::from(-1), h2.clone())]);
        let x = GroupElement::Pruefer(pr(3, 5, 2));
        let direct = &h1.eval(&x).unwrap().scale(&2.into()) - &h2.eval(&x).unwrap();
        assert_eq!(c.eval(&x).unwrap(), direct);
        assert!(matches!(h1.eval(&GroupElement::Int(1.into())), Err(Error::Mismatch(_))));
    }

    fn arb_digits(p: u64) -> impl Strategy<Value = DigitRule> {
        prop_oneof![
            proptest::collection::btree_map(0u64..20, 0..p, 0..6).prop_map(|digits| DigitRule::FiniteSupport { digits }),
            (proptest::collection::vec(0..p, 0..10), 0..p).prop_map(|(prefix, default)| DigitRule::Prefix { prefix, default }),
            Just(DigitRule::Indicator { set: IndexSet::all_of_fac() }),
        ]
    }

    proptest! {
        #[test]
        fn padic_additive(digits in arb_digits(5), a in any::<i64>(), n in 0u64..15, b in any::<i64>(), m in 0u64..15) {
            let h = PadicCharacter::new(5, digits).unwrap();
            let x = pr(5, a, n);
            let y = pr(5, b, m);
            prop_assert_eq!(h.eval(&x.add(&y).unwrap()).unwrap(), &h.eval(&x).unwrap() + &h.eval(&y).unwrap());
        }

        #[test]
        fn padic_factors_through_low_digits(
            digits in proptest::collection::btree_map(0u64..12, 0u64..3, 0..8),
            noise in proptest::collection::btree_map(0u64..12, 0u64..3, 0..8),
            a in any::<i64>(), n in 0u64..12,
        ) {
            let h = PadicCharacter::new(3, DigitRule::FiniteSupport { digits: digits.clone() }).unwrap();
            let mut changed = digits;
            for (k, d) in noise.into_iter().filter(|(k, _)| *k >= n) {
                changed.insert(k, d);
            }
            let h2 = PadicCharacter::new(3, DigitRule::FiniteSupport { digits: changed }).unwrap();
            let x = pr(3, a, n);
            prop_assert_eq!(h.eval(&x).unwrap(), h2.eval(&x).unwrap());
        }

        #[test]
        fn sum_additive_and_matches_oracle(
            a in proptest::collection::vec((0u64..16, -20i64..20), 0..8),
            b in proptest::collection::vec((0u64..16, -20i64..20), 0..8),
            members in proptest::collection::btree_set(0u64..16, 0..8),
        ) {
            let amb = OrderSchema::periodic(vec![PrimePower::new(2, 2).unwrap(), PrimePower::new(5, 1).unwrap(), PrimePower::new(3, 1).unwrap()]).unwrap();
            let h = SumCharacter::new(amb.clone(), IndexSet::Finite { members });
            let x = DirectSumElement::new(amb.clone(), a);
            let y = DirectSumElement::new(amb, b);
            prop_assert_eq!(h.eval(&x).unwrap(), sum_oracle(&h, &x));
            prop_assert_eq!(h.eval(&x.add(&y).unwrap()).unwrap(), &h.eval(&x).unwrap() + &h.eval(&y).unwrap());
        }

        #[test]
        fn rotation_additive(num in any::<i64>(), den in 1i64..1000, a in any::<i32>(), b in any::<i32>()) {
            let h = Character::Rotation(RotationCharacter::exact(CirclePoint::new(num, den).unwrap()));
            let x = GroupElement::Int(a.into());
            let y = GroupElement::Int(b.into());
            prop_assert_eq!(h.eval(&x.add(&y).unwrap()).unwrap(), &h.eval(&x).unwrap() + &h.eval(&y).unwrap());
        }

        #[test]
        fn separation_reverifies(x in any::<i64>(), y in any::<i64>()) {
            prop_assume!(x != y);
            let s = separate_points(&GroupElement::Int(x.into()), &GroupElement::Int(y.into())).unwrap();
            prop_assert_ne!(s.left, s.right);
        }
    }
}
