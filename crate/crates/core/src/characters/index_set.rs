//! Finitely described subsets of `ω` with decidable membership.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::factorial;

/// Decidable subset of `ω = {0, 1, 2, …}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", try_from = "SetRuleRepr")]
pub enum SetRule {
    All,
    Finite { members: BTreeSet<u64> },
    Cofinite { excluded: BTreeSet<u64> },
    /// `{k : k mod modulus ∈ residues}`.
    Residue { modulus: u64, residues: BTreeSet<u64> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
enum SetRuleRepr {
    All,
    Finite { members: BTreeSet<u64> },
    Cofinite { excluded: BTreeSet<u64> },
    Residue { modulus: u64, residues: BTreeSet<u64> },
}

impl TryFrom<SetRuleRepr> for SetRule {
    type Error = Error;

    fn try_from(r: SetRuleRepr) -> Result<Self> {
        Ok(match r {
            SetRuleRepr::All => SetRule::All,
            SetRuleRepr::Finite { members } => SetRule::Finite { members },
            SetRuleRepr::Cofinite { excluded } => SetRule::Cofinite { excluded },
            SetRuleRepr::Residue { modulus, residues } => SetRule::residue(modulus, residues)?,
        })
    }
}

impl SetRule {
    pub fn finite(members: impl IntoIterator<Item = u64>) -> Self {
        SetRule::Finite { members: members.into_iter().collect() }
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Self {
        SetRule::Cofinite { excluded: excluded.into_iter().collect() }
    }

    pub fn residue(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        if modulus == 0 {
            return Err(Error::invalid("residue.modulus", "must be positive"));
        }
        if let Some(r) = residues.iter().find(|&&r| r >= modulus) {
            return Err(Error::invalid("residue.residues", format!("{r} is not below modulus {modulus}")));
        }
        Ok(SetRule::Residue { modulus, residues })
    }

    pub fn evens() -> Self {
        SetRule::Residue { modulus: 2, residues: [0].into() }
    }

    pub fn odds() -> Self {
        SetRule::Residue { modulus: 2, residues: [1].into() }
    }

    pub fn contains(&self, k: u64) -> bool {
        match self {
            SetRule::All => true,
            SetRule::Finite { members } => members.contains(&k),
            SetRule::Cofinite { excluded } => !excluded.contains(&k),
            SetRule::Residue { modulus, residues } => residues.contains(&(k % modulus)),
        }
    }

    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        match self {
            SetRule::Finite { members } => members.range(..bound).copied().collect(),
            _ => (0..bound).filter(|&k| self.contains(k)).collect(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        match self {
            SetRule::Finite { .. } => false,
            SetRule::Residue { residues, .. } => !residues.is_empty(),
            SetRule::All | SetRule::Cofinite { .. } => true,
        }
    }

    /// Whether the complement is infinite.
    pub fn is_coinfinite(&self) -> bool {
        match self {
            SetRule::Finite { .. } => true,
            SetRule::Residue { modulus, residues } => (residues.len() as u64) < *modulus,
            SetRule::All | SetRule::Cofinite { .. } => false,
        }
    }

    pub fn max_member(&self) -> Option<u64> {
        match self {
            SetRule::Finite { members } => members.iter().next_back().copied(),
            _ => None,
        }
    }

    /// `(threshold, period)` such that membership of `k ≥ threshold` only
    /// depends on `k mod period`.
    pub fn eventual_period(&self) -> (u64, u64) {
        match self {
            SetRule::All => (0, 1),
            SetRule::Finite { members } => (members.iter().next_back().map_or(0, |m| m + 1), 1),
            SetRule::Cofinite { excluded } => (excluded.iter().next_back().map_or(0, |m| m + 1), 1),
            SetRule::Residue { modulus, .. } => (0, *modulus),
        }
    }

    /// The `n`-th (0-based) non-member, if the complement is infinite.
    pub fn nth_non_member(&self, n: u64) -> Option<u64> {
        if !self.is_coinfinite() {
            return None;
        }
        match self {
            SetRule::Residue { modulus, residues } => {
                let outside: Vec<u64> = (0..*modulus).filter(|r| !residues.contains(r)).collect();
                let len = outside.len() as u64;
                Some((n / len) * modulus + outside[(n % len) as usize])
            }
            _ => {
                let mut seen = 0;
                (0..).find(|&k| {
                    if self.contains(k) {
                        return false;
                    }
                    seen += 1;
                    seen == n + 1
                })
            }
        }
    }

    /// Number of non-members below `k`.
    pub fn non_members_below(&self, k: u64) -> u64 {
        match self {
            SetRule::Residue { modulus, residues } => {
                let outside = modulus - residues.len() as u64;
                let full = (k / modulus) * outside;
                full + (0..k % modulus).filter(|r| !residues.contains(r)).count() as u64
            }
            _ => (0..k).filter(|&j| !self.contains(j)).count() as u64,
        }
    }

    /// Decides whether the progression `slope·n + offset` (`n ≥ 0`) ever
    /// enters the set.
    pub fn meets_progression(&self, slope: u64, offset: u64) -> bool {
        let (threshold, period) = self.eventual_period();
        // Below the threshold check directly; above it, membership repeats
        // with period `period` in n.
        let first_periodic = if slope == 0 {
            0
        } else {
            threshold.saturating_sub(offset).div_ceil(slope)
        };
        (0..first_periodic + period).any(|n| self.contains(slope * n + offset))
    }
}

/// Index set `A` of a coordinate-sum or digit character.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum IndexSet {
    /// An element of `[ω]^{<ω}`.
    Finite { members: BTreeSet<u64> },
    /// `{k ∈ S : rule(k)}` for an infinite described set `S`.
    SubsetOfS {
        #[serde(rename = "S")]
        s: SetRule,
        rule: SetRule,
    },
    /// `{m! : m ≥ 1, rule(m)} ⊆ Fac`. The rule is applied to the factorial
    /// argument `m`, so `{"kind":"all"}` is the whole of `Fac = {1, 2, 6, 24, …}`.
    SubsetOfFac { rule: SetRule },
}

impl IndexSet {
    pub fn finite(members: impl IntoIterator<Item = u64>) -> Self {
        IndexSet::Finite { members: members.into_iter().collect() }
    }

    pub fn empty() -> Self {
        IndexSet::Finite { members: BTreeSet::new() }
    }

    pub fn all_of_fac() -> Self {
        IndexSet::SubsetOfFac { rule: SetRule::All }
    }

    pub fn contains(&self, k: u64) -> bool {
        match self {
            IndexSet::Finite { members } => members.contains(&k),
            IndexSet::SubsetOfS { s, rule } => s.contains(k) && rule.contains(k),
            IndexSet::SubsetOfFac { rule } => factorial_argument(k).is_some_and(|m| rule.contains(m)),
        }
    }

    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        match self {
            IndexSet::Finite { members } => members.range(..bound).copied().collect(),
            IndexSet::SubsetOfS { s, rule } => s.members_below(bound).into_iter().filter(|&k| rule.contains(k)).collect(),
            IndexSet::SubsetOfFac { rule } => (1..)
                .map_while(|m| factorial(m).filter(|&f| f < bound).map(|f| (m, f)))
                .filter(|&(m, _)| rule.contains(m))
                .map(|(_, f)| f)
                .collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            IndexSet::Finite { .. } => true,
            IndexSet::SubsetOfS { s, rule } => {
                let (threshold, period) = joint_period(s, rule);
                (threshold..threshold + period).all(|k| !(s.contains(k) && rule.contains(k)))
            }
            IndexSet::SubsetOfFac { rule } => !rule.is_infinite(),
        }
    }

    /// Largest member of a finite index set.
    pub fn max_member(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        match self {
            IndexSet::Finite { members } => members.iter().next_back().copied(),
            IndexSet::SubsetOfS { s, rule } => {
                let (threshold, _) = joint_period(s, rule);
                self.members_below(threshold).last().copied()
            }
            IndexSet::SubsetOfFac { rule } => {
                let m = rule.max_member()?;
                self.members_below(factorial(m)?.saturating_add(1)).last().copied()
            }
        }
    }

    /// Whether every member is a factorial.
    pub fn is_subset_of_fac(&self) -> bool {
        match self {
            IndexSet::SubsetOfFac { .. } => true,
            IndexSet::Finite { members } => members.iter().all(|&k| factorial_argument(k).is_some()),
            IndexSet::SubsetOfS { .. } => match self.max_member() {
                Some(m) => self.members_below(m + 1).into_iter().all(|k| factorial_argument(k).is_some()),
                None => self.is_finite(),
            },
        }
    }
}

/// Joint eventual period of two rules: beyond `threshold`, membership in
/// both only depends on `k mod period`.
fn joint_period(a: &SetRule, b: &SetRule) -> (u64, u64) {
    let (ta, pa) = a.eventual_period();
    let (tb, pb) = b.eventual_period();
    (ta.max(tb), num_integer::lcm(pa, pb))
}

/// The `m ≥ 1` with `m! = k`, if any (`1` maps to `1`).
pub fn factorial_argument(k: u64) -> Option<u64> {
    let mut m = 1u64;
    let mut f = 1u64;
    while f < k {
        m += 1;
        f = f.checked_mul(m)?;
    }
    (f == k).then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_rule_membership() {
        let evens = SetRule::evens();
        assert!(evens.contains(4) && !evens.contains(3));
        assert_eq!(evens.members_below(7), vec![0, 2, 4, 6]);
        assert!(evens.is_infinite() && evens.is_coinfinite());
        assert!(!SetRule::All.is_coinfinite());
        assert!(SetRule::residue(3, [3]).is_err());
        assert!(serde_json::from_str::<SetRule>(r#"{"kind":"residue","modulus":0,"residues":[]}"#).is_err());
    }

    #[test]
    fn non_member_enumeration() {
        let s = SetRule::residue(3, [0, 2]).unwrap();
        let outside: Vec<u64> = (0..5).map(|n| s.nth_non_member(n).unwrap()).collect();
        assert_eq!(outside, vec![1, 4, 7, 10, 13]);
        for (n, &k) in outside.iter().enumerate() {
            assert_eq!(s.non_members_below(k), n as u64);
        }
        let f = SetRule::finite([0, 1, 3]);
        assert_eq!(f.nth_non_member(0), Some(2));
        assert_eq!(f.nth_non_member(2), Some(5));
        assert_eq!(f.non_members_below(5), 2);
        assert_eq!(SetRule::All.nth_non_member(0), None);
    }

    #[test]
    fn progression_meets() {
        assert!(!SetRule::evens().meets_progression(2, 1));
        assert!(SetRule::evens().meets_progression(3, 1));
        assert!(!SetRule::finite([0, 2, 4]).meets_progression(2, 5));
        assert!(SetRule::finite([0, 2, 9]).meets_progression(2, 5));
        assert!(SetRule::cofinite([1, 3, 5]).meets_progression(2, 1));
        assert!(!SetRule::residue(6, [0, 3]).unwrap().meets_progression(6, 1));
        assert!(SetRule::residue(6, [0, 3]).unwrap().meets_progression(4, 1));
    }

    #[test]
    fn fac_members() {
        let fac = IndexSet::all_of_fac();
        assert_eq!(fac.members_below(5040), vec![1, 2, 6, 24, 120, 720]);
        assert!(fac.contains(5040) && !fac.contains(5041) && !fac.contains(0));
        let odd_args = IndexSet::SubsetOfFac { rule: SetRule::odds() };
        assert_eq!(odd_args.members_below(10_000), vec![1, 6, 120, 5040]);
        assert_eq!(factorial_argument(1), Some(1));
        assert_eq!(factorial_argument(720), Some(6));
        assert_eq!(factorial_argument(721), None);
        assert!(IndexSet::finite([1, 2, 24]).is_subset_of_fac());
        assert!(!IndexSet::finite([1, 3]).is_subset_of_fac());
    }

    #[test]
    fn finiteness() {
        assert!(IndexSet::finite([1, 2]).is_finite());
        let s = IndexSet::SubsetOfS { s: SetRule::evens(), rule: SetRule::finite([2, 3]) };
        assert!(s.is_finite());
        assert_eq!(s.max_member(), Some(2));
        let disjoint = IndexSet::SubsetOfS { s: SetRule::evens(), rule: SetRule::odds() };
        assert!(disjoint.is_finite());
        assert!(!IndexSet::SubsetOfS { s: SetRule::evens(), rule: SetRule::All }.is_finite());
    }

    #[test]
    fn json_shape() {
        let s = IndexSet::SubsetOfS { s: SetRule::evens(), rule: SetRule::All };
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"kind":"subsetOfS","S":{"kind":"residue","modulus":2,"residues":[0]},"rule":{"kind":"all"}}"#);
        assert_eq!(serde_json::from_str::<IndexSet>(&j).unwrap(), s);
        let f: IndexSet = serde_json::from_str(r#"{"kind":"finite","members":[3,1]}"#).unwrap();
        assert_eq!(f, IndexSet::finite([1, 3]));
    }
}
