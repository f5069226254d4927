//! Convergence certificates for `h(xₙ) → 0`.
//!
//! A certificate lists exact values `h(xₙ)` on a window together with a bound
//! each value must respect, plus a symbolic tail argument that covers every
//! `n` past the window. `certified` is only issued when the tail argument
//! follows from schema metadata; finite evidence alone yields
//! `evidence_only`, and only exact evaluations can yield `refuted`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{Character, CircleValue, IndexSet, PadicCharacter, SumCharacter};
use crate::circle::{self, CirclePoint};
use crate::elements::GroupElement;
use crate::error::{Error, Result};
use crate::numeric::{half, rational_string};
use crate::sequences::{rule_subset, validate_thm51, SequenceSchema};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremTag {
    /// Index set inside the avoided set `S`: every value is exactly zero.
    #[serde(rename = "T51_subsetS")]
    T51SubsetS,
    /// Finite index set: values vanish past a computed `N`.
    #[serde(rename = "T51_finite")]
    T51Finite,
    /// Finitely supported digit rule on the factorial sequence.
    #[serde(rename = "T52_finite")]
    T52Finite,
    /// Indicator of a subset of `Fac`: `d(h(xₙ), 0) ≤ (p−1)·n/pⁿ`.
    #[serde(rename = "T52_subsetFac")]
    T52SubsetFac,
    #[serde(rename = "combination")]
    Combination,
    #[serde(rename = "empirical")]
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
    EvidenceOnly,
}

/// One row of a certificate: `d(value, 0) ≤ bound` is claimed for term `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub n: u64,
    #[serde(with = "circle::as_text")]
    pub value: CirclePoint,
    #[serde(with = "rational_string")]
    pub bound: BigRational,
    /// Present when `value` is only the centre of an interval.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub radius: Option<BigRational>,
}

impl CertifiedValue {
    fn exact(n: u64, value: CirclePoint, bound: BigRational) -> Self {
        CertifiedValue { n, value, bound, radius: None }
    }

    pub fn within_bound(&self) -> bool {
        self.value.dist_to_zero() <= self.bound
    }
}

mod opt_rational {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.collect_str(r),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        use serde::de::Error as _;
        match Option::<String>::deserialize(d)? {
            Some(s) => crate::numeric::parse_rational(&s).map(Some).ok_or_else(|| D::Error::custom("bad rational")),
            None => Ok(None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceCertificate {
    pub theorem: TheoremTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub character: Character,
    pub sequence: SequenceSchema,
    pub range: [u64; 2],
    pub values: Vec<CertifiedValue>,
    pub tail: String,
    /// Index from which the tail argument takes over, when it has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_start: Option<u64>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<u64>,
}

impl ConvergenceCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Stored bound for term `n`, if listed.
    pub fn bound_at(&self, n: u64) -> Option<&BigRational> {
        self.values.iter().find(|v| v.n == n).map(|v| &v.bound)
    }

    /// Re-evaluates every exactly stored value and re-checks its bound.
    /// Returns the first index whose stored data does not reproduce.
    pub fn recheck(&self) -> Result<Option<u64>> {
        for v in self.values.iter().filter(|v| v.radius.is_none()) {
            let x = self.sequence.term(v.n)?;
            if self.character.eval(&x)? != v.value {
                return Ok(Some(v.n));
            }
            if self.verdict == Verdict::Certified && !v.within_bound() {
                return Ok(Some(v.n));
            }
        }
        Ok(None)
    }
}

fn first_violation(values: &[CertifiedValue]) -> Option<u64> {
    values.iter().find(|v| v.radius.is_none() && !v.within_bound()).map(|v| v.n)
}

fn sequence_prime(seq: &SequenceSchema) -> Option<u64> {
    match seq {
        SequenceSchema::FactorialPruefer { p, .. } => Some(*p),
        _ => None,
    }
}

/// Evaluates `h` on terms `n ∈ range` of `seq`, attaching `bound(n)`.
fn tabulate(
    h: &Character,
    seq: &SequenceSchema,
    range: std::ops::Range<u64>,
    bound: impl Fn(u64) -> BigRational,
) -> Result<Vec<CertifiedValue>> {
    range.map(|n| Ok(CertifiedValue::exact(n, h.eval(&seq.term(n)?)?, bound(n)))).collect()
}

/// Certificates for coordinate-sum characters on basis-type direct-sum
/// sequences, with `window` spot-checked terms.
///
/// If the index set lies inside the avoided set `S`, every value is zero.
/// If it is finite, `N = 1 + max{n : k_n ∈ A}` and every value past `N` is
/// zero because the supports are injective.
pub fn certify_thm51(h: &SumCharacter, seq: &SequenceSchema, window: u64) -> Result<ConvergenceCertificate> {
    let window = window.max(1);
    let character = Character::Sum(h.clone());
    let finite_tag = || if h.index_set.is_finite() { TheoremTag::T51Finite } else { TheoremTag::T51SubsetS };

    let avoid = match seq {
        SequenceSchema::BasisDirectSum { ambient, avoid, .. } => {
            if ambient != &h.ambient {
                return Err(Error::AmbientMismatch(format!("character on {}, sequence in {}", h.ambient, ambient)));
            }
            Some(avoid)
        }
        _ => None,
    };
    let structural = avoid.is_some_and(|s| validate_thm51(seq, s, window).structural);

    let evidence = |reason: &str| -> Result<ConvergenceCertificate> {
        let len = match seq {
            SequenceSchema::ExplicitPrefix { terms } => window.min(terms.len() as u64),
            _ => window,
        };
        let start = seq.start_index();
        let values = tabulate(&character, seq, start..start + len, |_| half())?;
        Ok(ConvergenceCertificate {
            theorem: finite_tag(),
            p: None,
            character: character.clone(),
            sequence: seq.clone(),
            range: [start, (start + len).saturating_sub(1)],
            values,
            tail: reason.to_string(),
            tail_start: None,
            verdict: Verdict::EvidenceOnly,
            counterexample: None,
        })
    };

    let avoid = match (avoid, structural) {
        (Some(avoid), true) => avoid,
        _ => return evidence("hypotheses (i)/(ii) not guaranteed by the schema; no tail claim"),
    };

    match &h.index_set {
        IndexSet::SubsetOfS { s, .. } if rule_subset(s, avoid) => {
            let values = tabulate(&character, seq, 0..window, |_| BigRational::zero())?;
            let verdict = if first_violation(&values).is_some() { Verdict::Refuted } else { Verdict::Certified };
            Ok(ConvergenceCertificate {
                theorem: TheoremTag::T51SubsetS,
                p: None,
                counterexample: first_violation(&values),
                character,
                sequence: seq.clone(),
                range: [0, window - 1],
                values,
                tail: "A ⊆ S and every support avoids S: h(x_n) = 0 for all n".into(),
                tail_start: Some(0),
                verdict,
            })
        }
        set if set.is_finite() => {
            let top = set.max_member().map_or(0, |m| m + 1);
            let cutoff = set
                .members_below(top)
                .into_iter()
                .filter_map(|k| seq.support_preimage(k))
                .max()
                .map_or(0, |n| n + 1);
            let end = cutoff + window;
            let values = tabulate(&character, seq, 0..end, |n| if n < cutoff { half() } else { BigRational::zero() })?;
            let counterexample = first_violation(&values);
            Ok(ConvergenceCertificate {
                theorem: TheoremTag::T51Finite,
                p: None,
                character,
                sequence: seq.clone(),
                range: [0, end - 1],
                values,
                tail: format!("supports are injective and meet A only below N = {cutoff}: h(x_n) = 0 for all n ≥ {cutoff}"),
                tail_start: Some(cutoff),
                verdict: if counterexample.is_some() { Verdict::Refuted } else { Verdict::Certified },
                counterexample,
            })
        }
        _ => evidence("index set is neither finite nor inside the avoided set; no tail claim"),
    }
}

/// The bound `(p−1)·n/pⁿ`.
pub fn factorial_bound(p: u64, n: u64) -> BigRational {
    BigRational::new(BigInt::from(p - 1) * n, BigInt::from(p).pow(n))
}

/// Certificates for digit characters on the factorial sequence
/// `xₙ = aₙ/p^{n!}`, checked exactly for `3 ≤ n ≤ n_hi`.
///
/// Indicators of subsets of `Fac` are checked against `(p−1)·n/pⁿ`.
/// Other finitely supported rules, with top nonzero digit position `N` and
/// largest digit `D`, are checked against `D·(p^{N+1} − 1)/p^{n!}`.
pub fn certify_thm52(h: &PadicCharacter, seq: &SequenceSchema, n_hi: u64) -> Result<ConvergenceCertificate> {
    let p = match seq {
        SequenceSchema::FactorialPruefer { p, .. } => *p,
        _ => return Err(Error::Precondition("sequence must be a factorial Prüfer schema".into())),
    };
    if h.prime() != p {
        return Err(Error::AmbientMismatch(format!("character on Z({}^∞), sequence in Z({p}^∞)", h.prime())));
    }
    if n_hi < 3 {
        return Err(Error::invalid("n_hi", "must be at least 3"));
    }
    let character = Character::Padic(h.clone());
    let (theorem, tail, values) = if h.digits().is_fac_indicator() {
        let values = tabulate(&character, seq, 3..n_hi + 1, |n| factorial_bound(p, n))?;
        (TheoremTag::T52SubsetFac, "(p-1)*n/p^n -> 0".to_string(), values)
    } else if let Some(top) = h.digits().finite_support_max() {
        let digit = BigInt::from(h.digits().max_digit());
        let mass = match top {
            Some(top) => digit * (BigInt::from(p).pow(top + 1) - BigInt::one()),
            None => BigInt::zero(),
        };
        let bound = |n: u64| {
            let e = crate::numeric::factorial(n).expect("n! fits for tabulated n");
            BigRational::new(mass.clone(), BigInt::from(BigUint::from(p).pow(e)))
        };
        let values = tabulate(&character, seq, 3..n_hi + 1, bound)?;
        let tail = match top {
            Some(top) => format!("D*(p^(N+1)-1)/p^(n!) -> 0 with N = {top}, D = {}", h.digits().max_digit()),
            None => "zero character: all values 0".to_string(),
        };
        (TheoremTag::T52Finite, tail, values)
    } else {
        return Err(Error::Precondition("digit rule must index a subset of Fac or have finite support".into()));
    };
    let counterexample = first_violation(&values);
    Ok(ConvergenceCertificate {
        theorem,
        p: Some(p),
        character,
        sequence: seq.clone(),
        range: [3, n_hi],
        values,
        tail,
        tail_start: Some(n_hi + 1),
        verdict: if counterexample.is_some() { Verdict::Refuted } else { Verdict::Certified },
        counterexample,
    })
}

/// Certificate for `Σ mᵢ·hᵢ` from certified certificates of the `hᵢ` on one
/// sequence; the bound at `n` is `Σ |mᵢ|·boundᵢ(n)`.
pub fn certify_combination(terms: &[(BigInt, ConvergenceCertificate)]) -> Result<ConvergenceCertificate> {
    let (_, first) = terms.first().ok_or_else(|| Error::invalid("coeffs", "combination needs at least one term"))?;
    if let Some((_, c)) = terms.iter().find(|(_, c)| !c.is_certified()) {
        return Err(Error::Precondition(format!("component certificate for {} is not certified", c.character)));
    }
    if terms.iter().any(|(_, c)| c.sequence != first.sequence) {
        return Err(Error::AmbientMismatch("combination mixes certificates for different sequences".into()));
    }
    let lo = terms.iter().map(|(_, c)| c.range[0]).max().unwrap_or(0);
    let hi = terms.iter().map(|(_, c)| c.range[1]).min().unwrap_or(0);
    if lo > hi {
        return Err(Error::Precondition("component certificates share no common range".into()));
    }
    let character = Character::combination(terms.iter().map(|(m, c)| (m.clone(), c.character.clone())));
    let seq = &first.sequence;

    let mut values = Vec::new();
    for n in lo..=hi {
        let mut bound = BigRational::zero();
        for (m, c) in terms {
            let b = c.bound_at(n).ok_or_else(|| Error::Internal(format!("certificate lacks n = {n}")))?;
            bound += BigRational::from_integer(m.abs()) * b;
        }
        values.push(CertifiedValue::exact(n, character.eval(&seq.term(n)?)?, bound));
    }
    let counterexample = first_violation(&values);
    let p = sequence_prime(seq);
    Ok(ConvergenceCertificate {
        theorem: TheoremTag::Combination,
        p,
        character,
        sequence: seq.clone(),
        range: [lo, hi],
        values,
        tail: "sum of |m_i| * bound_i(n); each component bound -> 0".into(),
        tail_start: terms.iter().filter_map(|(_, c)| c.tail_start).max(),
        verdict: if counterexample.is_some() { Verdict::Refuted } else { Verdict::Certified },
        counterexample,
    })
}

/// A user-declared eventual bound: `d(h(xₙ), 0) ≤ bound` for `n ≥ from`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub from: u64,
    #[serde(with = "rational_string")]
    pub bound: BigRational,
}

/// Non-certifying scan of `h(xₙ)` for `start ≤ n ≤ n_hi`.
///
/// The verdict is `evidence_only` unless an exactly evaluated value breaks
/// the declared threshold schedule, in which case it is `refuted`.
pub fn empirical_scan(
    h: &Character,
    seq: &SequenceSchema,
    n_hi: u64,
    thresholds: &[Threshold],
    precision: &BigRational,
) -> Result<ConvergenceCertificate> {
    for w in thresholds.windows(2) {
        if w[1].from <= w[0].from || w[1].bound > w[0].bound {
            return Err(Error::invalid("thresholds", "schedule must have increasing starts and non-increasing bounds"));
        }
    }
    if thresholds.iter().any(|t| t.bound.is_negative()) {
        return Err(Error::invalid("thresholds", "bounds must be non-negative"));
    }
    let start = seq.start_index();
    if n_hi < start {
        return Err(Error::invalid("n_max", format!("must be at least {start}")));
    }
    let threshold_at =
        |n: u64| thresholds.iter().rev().find(|t| t.from <= n).map_or_else(half, |t| t.bound.clone());

    let mut values = Vec::new();
    for n in start..=n_hi {
        let x: GroupElement = seq.term(n)?;
        let row = match h.eval_approx(&x, precision)? {
            CircleValue::Exact(v) => CertifiedValue::exact(n, v, threshold_at(n)),
            CircleValue::Interval { center, radius } => {
                CertifiedValue { n, value: center, bound: threshold_at(n), radius: Some(radius) }
            }
        };
        values.push(row);
    }
    let counterexample = first_violation(&values);
    Ok(ConvergenceCertificate {
        theorem: TheoremTag::Empirical,
        p: sequence_prime(seq),
        character: h.clone(),
        sequence: seq.clone(),
        range: [start, n_hi],
        values,
        tail: "none: empirical scan over a finite range".into(),
        tail_start: None,
        verdict: if counterexample.is_some() { Verdict::Refuted } else { Verdict::EvidenceOnly },
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{DigitRule, RotationCharacter, SetRule};
    use crate::elements::{DirectSumElement, OrderSchema};
    use crate::sequences::{CoeffRule, GrowthRule, SupportRule};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pt(s: &str) -> CirclePoint {
        s.parse().unwrap()
    }

    fn two() -> OrderSchema {
        OrderSchema::constant(2, 1).unwrap()
    }

    fn odd_basis() -> SequenceSchema {
        SequenceSchema::BasisDirectSum {
            ambient: two(),
            support: SupportRule::Affine { slope: 2, offset: 1, value: 1 },
            avoid: SetRule::evens(),
        }
    }

    #[test]
    fn subset_of_avoided_set_is_all_zero() {
        let h = SumCharacter::new(two(), IndexSet::SubsetOfS { s: SetRule::evens(), rule: SetRule::residue(4, [0]).unwrap() });
        let c = certify_thm51(&h, &odd_basis(), 25).unwrap();
        assert_eq!(c.theorem, TheoremTag::T51SubsetS);
        assert_eq!(c.verdict, Verdict::Certified);
        assert!(c.values.iter().all(|v| v.value.is_zero()));
        assert_eq!(c.recheck().unwrap(), None);
    }

    #[test]
    fn finite_index_set_cutoff() {
        let h = SumCharacter::new(two(), IndexSet::finite([1, 3]));
        let c = certify_thm51(&h, &odd_basis(), 4).unwrap();
        assert_eq!(c.theorem, TheoremTag::T51Finite);
        assert_eq!(c.tail_start, Some(2));
        let vals: Vec<CirclePoint> = c.values.iter().map(|v| v.value.clone()).collect();
        assert_eq!(vals, vec![pt("1/2"), pt("1/2"), CirclePoint::zero(), CirclePoint::zero(), CirclePoint::zero(), CirclePoint::zero()]);
        assert_eq!(c.verdict, Verdict::Certified);

        // A disjoint from every support: N = 0.
        let h = SumCharacter::new(two(), IndexSet::finite([0, 2]));
        let c = certify_thm51(&h, &odd_basis(), 3).unwrap();
        assert_eq!(c.tail_start, Some(0));
        assert!(c.is_certified());
    }

    #[test]
    fn basis_certificate_needs_structure() {
        let e = |k| GroupElement::DirectSum(DirectSumElement::single(two(), k, 1));
        let seq = SequenceSchema::ExplicitPrefix { terms: vec![e(1), e(3), e(5)] };
        let h = SumCharacter::new(two(), IndexSet::finite([1]));
        let c = certify_thm51(&h, &seq, 10).unwrap();
        assert_eq!(c.verdict, Verdict::EvidenceOnly);
        assert_eq!(c.values.len(), 3);

        let infinite = SumCharacter::new(two(), IndexSet::SubsetOfS { s: SetRule::odds(), rule: SetRule::All });
        assert_eq!(certify_thm51(&infinite, &odd_basis(), 5).unwrap().verdict, Verdict::EvidenceOnly);

        let other = SumCharacter::new(OrderSchema::constant(3, 1).unwrap(), IndexSet::finite([1]));
        assert!(matches!(certify_thm51(&other, &odd_basis(), 5), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn factorial_examples() {
        let seq = SequenceSchema::factorial_pruefer(2, CoeffRule::Const { a: 1 }).unwrap();
        let h = PadicCharacter::indicator(2, IndexSet::finite([1])).unwrap();
        let c = certify_thm52(&h, &seq, 7).unwrap();
        assert_eq!(c.theorem, TheoremTag::T52SubsetFac);
        assert_eq!(c.values[0].n, 3);
        assert_eq!(c.values[0].value, pt("1/32"));
        assert_eq!(c.values[0].bound, q(3, 8));
        assert!(c.is_certified());

        let zero = PadicCharacter::new(2, DigitRule::zero()).unwrap();
        let c = certify_thm52(&zero, &seq, 5).unwrap();
        assert!(c.is_certified() && c.values.iter().all(|v| v.value.is_zero()));

        let seq3 = SequenceSchema::factorial_pruefer(3, CoeffRule::Const { a: 2 }).unwrap();
        let fac = PadicCharacter::indicator(3, IndexSet::all_of_fac()).unwrap();
        let c = certify_thm52(&fac, &seq3, 6).unwrap();
        assert!(c.is_certified());
        for v in &c.values {
            assert!(v.value.dist_to_zero() <= factorial_bound(3, v.n));
            // No wrap-around: the stored value already is its distance to 0.
            assert_eq!(v.value.dist_to_zero(), v.value.to_rational());
        }
        assert_eq!(c.recheck().unwrap(), None);
    }

    #[test]
    fn factorial_finite_support_bound() {
        let seq = SequenceSchema::factorial_pruefer(5, CoeffRule::Const { a: 4 }).unwrap();
        let h = PadicCharacter::new(5, DigitRule::FiniteSupport { digits: [(0, 3), (4, 2), (9, 4)].into() }).unwrap();
        let c = certify_thm52(&h, &seq, 6).unwrap();
        assert_eq!(c.theorem, TheoremTag::T52Finite);
        assert!(c.is_certified());
        assert!(c.tail.contains("N = 9"));

        let dense = PadicCharacter::new(5, DigitRule::Prefix { prefix: vec![], default: 1 }).unwrap();
        assert!(matches!(certify_thm52(&dense, &seq, 5), Err(Error::Precondition(_))));
        let wrong_p = PadicCharacter::indicator(3, IndexSet::all_of_fac()).unwrap();
        assert!(matches!(certify_thm52(&wrong_p, &seq, 5), Err(Error::AmbientMismatch(_))));
        assert!(certify_thm52(&PadicCharacter::indicator(5, IndexSet::empty()).unwrap(), &seq, 2).is_err());
    }

    #[test]
    fn combination_examples() {
        let seq = SequenceSchema::factorial_pruefer(3, CoeffRule::Const { a: 1 }).unwrap();
        let c1 = certify_thm52(&PadicCharacter::indicator(3, IndexSet::finite([1, 6])).unwrap(), &seq, 6).unwrap();
        let c2 = certify_thm52(&PadicCharacter::indicator(3, IndexSet::all_of_fac()).unwrap(), &seq, 6).unwrap();

        let single = certify_combination(&[(BigInt::one(), c1.clone())]).unwrap();
        assert_eq!(single.values.iter().map(|v| &v.bound).collect::<Vec<_>>(), c1.values.iter().map(|v| &v.bound).collect::<Vec<_>>());
        let neg = certify_combination(&[(-BigInt::one(), c1.clone())]).unwrap();
        assert_eq!(neg.values.iter().map(|v| &v.bound).collect::<Vec<_>>(), c1.values.iter().map(|v| &v.bound).collect::<Vec<_>>());

        let both = certify_combination(&[(BigInt::from(2), c1.clone()), (BigInt::from(3), c2.clone())]).unwrap();
        assert!(both.is_certified());
        for v in &both.values {
            let b = c1.bound_at(v.n).unwrap() * BigRational::from_integer(2.into()) + c2.bound_at(v.n).unwrap() * BigRational::from_integer(3.into());
            assert_eq!(v.bound, b);
            let x = seq.term(v.n).unwrap();
            let direct = &c1.character.eval(&x).unwrap().scale(&2.into()) + &c2.character.eval(&x).unwrap().scale(&3.into());
            assert_eq!(v.value, direct);
        }

        let other = SequenceSchema::factorial_pruefer(3, CoeffRule::Const { a: 2 }).unwrap();
        let c3 = certify_thm52(&PadicCharacter::indicator(3, IndexSet::all_of_fac()).unwrap(), &other, 6).unwrap();
        assert!(matches!(certify_combination(&[(BigInt::one(), c1.clone()), (BigInt::one(), c3)]), Err(Error::AmbientMismatch(_))));
        assert!(certify_combination(&[]).is_err());
    }

    #[test]
    fn scan_examples() {
        let third = Character::Rotation(RotationCharacter::exact(pt("1/3")));
        let fac = SequenceSchema::IntegerGrowth { rule: GrowthRule::Factorial };
        let c = empirical_scan(&third, &fac, 10, &[], &q(1, 1000)).unwrap();
        assert_eq!(c.verdict, Verdict::EvidenceOnly);
        assert!(c.values.iter().filter(|v| v.n >= 3).all(|v| v.value.is_zero()));

        let half_turn = Character::Rotation(RotationCharacter::exact(pt("1/2")));
        let odd = SequenceSchema::IntegerGrowth { rule: GrowthRule::Affine { slope: 2, offset: 1 } };
        let c = empirical_scan(&half_turn, &odd, 8, &[Threshold { from: 0, bound: q(1, 4) }], &q(1, 1000)).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        assert_eq!(c.counterexample, Some(0));

        let zero = Character::Padic(PadicCharacter::new(2, DigitRule::zero()).unwrap());
        let seq = SequenceSchema::factorial_pruefer(2, CoeffRule::Const { a: 1 }).unwrap();
        let c = empirical_scan(&zero, &seq, 5, &[Threshold { from: 1, bound: q(0, 1) }], &q(1, 10)).unwrap();
        assert_eq!(c.verdict, Verdict::EvidenceOnly);
        assert!(c.values.iter().all(|v| v.value.is_zero()));

        let bad = [Threshold { from: 0, bound: q(1, 8) }, Threshold { from: 3, bound: q(1, 4) }];
        assert!(empirical_scan(&zero, &seq, 5, &bad, &q(1, 10)).is_err());
    }

    #[test]
    fn scan_with_intervals_never_refutes() {
        let series = Character::Rotation(RotationCharacter::SeriesDescribed {
            series: crate::characters::SeriesRule::Geometric { coeff: q(1, 1), base: 10, start: 1 },
        });
        let fac = SequenceSchema::IntegerGrowth { rule: GrowthRule::Factorial };
        let c = empirical_scan(&series, &fac, 8, &[Threshold { from: 1, bound: q(0, 1) }], &q(1, 10_000)).unwrap();
        assert_eq!(c.verdict, Verdict::EvidenceOnly);
        assert!(c.values.iter().all(|v| v.radius.is_some()));
    }

    #[test]
    fn certificate_json_shape() {
        let seq = SequenceSchema::factorial_pruefer(2, CoeffRule::Const { a: 1 }).unwrap();
        let c = certify_thm52(&PadicCharacter::indicator(2, IndexSet::finite([1])).unwrap(), &seq, 4).unwrap();
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["theorem"], "T52_subsetFac");
        assert_eq!(j["p"], 2);
        assert_eq!(j["range"], serde_json::json!([3, 4]));
        assert_eq!(j["values"][0], serde_json::json!({"n": 3, "value": "1/32", "bound": "3/8"}));
        assert_eq!(j["tail"], "(p-1)*n/p^n -> 0");
        assert_eq!(j["verdict"], "certified");
        let back: ConvergenceCertificate = serde_json::from_value(j).unwrap();
        assert_eq!(back, c);
    }
}
