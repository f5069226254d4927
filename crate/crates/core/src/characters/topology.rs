//! The weak topology `T_H` generated by a point-separating family `H` of
//! characters. Its basic neighbourhoods of `0` are
//! `{x : d(h(x), 0) < ε for all h ∈ F}` for finite `F ⊆ H`, and its weight is
//! `|H|`.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{Character, DigitRule, IndexSet, SetRule};
use crate::elements::{GroupElement, OrderSchema};
use crate::error::{Error, Result};

/// Described generating family `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum CharacterFamily {
    Finite { members: Vec<Character> },
    /// `{h_A : A ∈ 𝒫(S) ∪ [ω]^{<ω}}` on a direct sum.
    SumIndexed {
        ambient: OrderSchema,
        #[serde(rename = "S")]
        s: SetRule,
    },
    /// `{h_A : A ∈ 𝒫(Fac) ∪ [ω]^{<ω}}` in `Δ_p`.
    PadicFactorial { p: u64 },
    /// The subgroup `⟨H⟩` generated by another family.
    Generated { base: Box<CharacterFamily> },
}

impl CharacterFamily {
    pub fn contains(&self, h: &Character) -> bool {
        match self {
            CharacterFamily::Finite { members } => members.contains(h),
            CharacterFamily::SumIndexed { ambient, s } => match h {
                Character::Sum(h) => {
                    &h.ambient == ambient
                        && match &h.index_set {
                            IndexSet::Finite { .. } => true,
                            IndexSet::SubsetOfS { s: s2, .. } => s2 == s,
                            IndexSet::SubsetOfFac { .. } => h.index_set.is_finite(),
                        }
                }
                _ => false,
            },
            CharacterFamily::PadicFactorial { p } => match h {
                Character::Padic(h) => {
                    h.prime() == *p
                        && match h.digits() {
                            DigitRule::Indicator { set } => set.is_finite() || set.is_subset_of_fac(),
                            rule => rule.max_digit() <= 1 && rule.finite_support_max().is_some(),
                        }
                }
                _ => false,
            },
            CharacterFamily::Generated { base } => match h {
                Character::Combination { terms } => terms.iter().all(|t| self.contains(&t.character)),
                other => base.contains(other),
            },
        }
    }

    fn is_nonempty(&self) -> bool {
        match self {
            CharacterFamily::Finite { members } => !members.is_empty(),
            CharacterFamily::Generated { base } => base.is_nonempty(),
            _ => true,
        }
    }
}

/// Cardinality of the generating family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Weight {
    Finite(u64),
    /// `𝔠`
    Continuum,
    /// `2^|G|`
    PowerOfGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologySpec {
    pub family: CharacterFamily,
    pub declared_weight: Weight,
}

impl TopologySpec {
    /// Builds the spec with the weight of the family: the number of distinct
    /// members of a finite family, `𝔠` for the described countable-group
    /// families.
    pub fn new(family: CharacterFamily) -> Result<Self> {
        if !family.is_nonempty() {
            return Err(Error::invalid("family", "generating family must be nonempty"));
        }
        let declared_weight = match &family {
            CharacterFamily::Finite { members } => {
                let distinct: HashSet<&Character> = members.iter().collect();
                Weight::Finite(distinct.len() as u64)
            }
            _ => Weight::Continuum,
        };
        Ok(TopologySpec { family, declared_weight })
    }
}

/// Whether `x` lies in the basic neighbourhood `{y : d(h(y), 0) < ε ∀h ∈ F}`.
pub fn basic_nbhd_contains(spec: &TopologySpec, f: &[Character], eps: &BigRational, x: &GroupElement) -> Result<bool> {
    if !eps.is_positive() {
        return Err(Error::invalid("epsilon", "must be positive"));
    }
    if f.iter().any(|h| !spec.family.contains(h)) {
        return Err(Error::NotInFamily);
    }
    for h in f {
        if h.eval(x)?.dist_to_zero() >= *eps {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{PadicCharacter, SumCharacter};
    use crate::elements::DirectSumElement;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sum_family() -> (OrderSchema, TopologySpec) {
        let amb = OrderSchema::constant(2, 1).unwrap();
        let spec = TopologySpec::new(CharacterFamily::SumIndexed { ambient: amb.clone(), s: SetRule::evens() }).unwrap();
        (amb, spec)
    }

    #[test]
    fn neighbourhood_examples() {
        let (amb, spec) = sum_family();
        let x = GroupElement::DirectSum(DirectSumElement::single(amb.clone(), 3, 1));
        assert!(basic_nbhd_contains(&spec, &[], &q(1, 100), &x).unwrap());

        let h = Character::Sum(SumCharacter::new(amb.clone(), IndexSet::finite([3])));
        assert!(!basic_nbhd_contains(&spec, std::slice::from_ref(&h), &q(1, 4), &x).unwrap());

        let h2 = Character::Sum(SumCharacter::new(amb.clone(), IndexSet::SubsetOfS { s: SetRule::evens(), rule: SetRule::All }));
        let zero = GroupElement::DirectSum(DirectSumElement::zero(amb.clone()));
        for d in [2, 10, 1000] {
            assert!(basic_nbhd_contains(&spec, &[h.clone(), h2.clone()], &q(1, d), &zero).unwrap());
        }
    }

    #[test]
    fn family_membership() {
        let (amb, spec) = sum_family();
        let foreign = Character::Sum(SumCharacter::new(amb.clone(), IndexSet::SubsetOfS { s: SetRule::odds(), rule: SetRule::All }));
        let x = GroupElement::DirectSum(DirectSumElement::zero(amb));
        assert_eq!(basic_nbhd_contains(&spec, &[foreign], &q(1, 2), &x), Err(Error::NotInFamily));

        let fac = CharacterFamily::PadicFactorial { p: 3 };
        assert!(fac.contains(&Character::Padic(PadicCharacter::indicator(3, IndexSet::all_of_fac()).unwrap())));
        assert!(fac.contains(&Character::Padic(PadicCharacter::indicator(3, IndexSet::finite([5, 7])).unwrap())));
        assert!(!fac.contains(&Character::Padic(PadicCharacter::indicator(2, IndexSet::all_of_fac()).unwrap())));
        let gen = CharacterFamily::Generated { base: Box::new(fac) };
        let h = Character::Padic(PadicCharacter::indicator(3, IndexSet::all_of_fac()).unwrap());
        assert!(gen.contains(&Character::combination([(BigInt::from(4), h)])));
    }

    #[test]
    fn weights() {
        let h = Character::Sum(SumCharacter::new(OrderSchema::constant(2, 1).unwrap(), IndexSet::finite([1])));
        let spec = TopologySpec::new(CharacterFamily::Finite { members: vec![h.clone(), h] }).unwrap();
        assert_eq!(spec.declared_weight, Weight::Finite(1));
        assert_eq!(sum_family().1.declared_weight, Weight::Continuum);
        assert!(TopologySpec::new(CharacterFamily::Finite { members: vec![] }).is_err());
    }

    proptest! {
        #[test]
        fn monotone_in_epsilon(
            coords in proptest::collection::vec((0u64..10, 0i64..2), 0..6),
            sets in proptest::collection::vec(proptest::collection::btree_set(0u64..10, 0..5), 0..4),
            a in 1i64..50, b in 1i64..50,
        ) {
            let (amb, spec) = sum_family();
            let f: Vec<Character> = sets.into_iter().map(|m| Character::Sum(SumCharacter::new(amb.clone(), IndexSet::Finite { members: m }))).collect();
            let x = GroupElement::DirectSum(DirectSumElement::new(amb, coords));
            let (small, large) = (q(a.min(b), 100), q(a.max(b), 100));
            if basic_nbhd_contains(&spec, &f, &small, &x).unwrap() {
                prop_assert!(basic_nbhd_contains(&spec, &f, &large, &x).unwrap());
            }
        }
    }
}
