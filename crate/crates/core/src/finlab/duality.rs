use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::group::{FiniteAbelian, InvariantFactors, Subgroup};
use crate::circle::{self, CirclePoint};
use crate::error::{Error, Result};

/// A character of `ℤ(m₁) ⊕ … ⊕ ℤ(m_k)` given by its values on the standard
/// generators; each value `vᵢ` satisfies `mᵢ·vᵢ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteCharacter {
    #[serde(with = "circle_vec")]
    pub values: Vec<CirclePoint>,
}

mod circle_vec {
    use crate::circle::CirclePoint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[CirclePoint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<CirclePoint>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| s.parse().map_err(D::Error::custom)).collect()
    }
}

impl FiniteCharacter {
    pub fn new(k: &FiniteAbelian, values: Vec<CirclePoint>) -> Result<Self> {
        let c = FiniteCharacter { values };
        c.check(k)?;
        Ok(c)
    }

    /// `χ_y(x) = Σ yᵢxᵢ/mᵢ`.
    pub fn from_dual_coords(k: &FiniteAbelian, y: &[u64]) -> Result<Self> {
        k.check_element(y)?;
        let values = y.iter().zip(k.moduli()).map(|(&c, &m)| CirclePoint::new(c, m)).collect::<Result<_>>()?;
        Ok(FiniteCharacter { values })
    }

    pub fn dual_coords(&self, k: &FiniteAbelian) -> Vec<u64> {
        self.values
            .iter()
            .zip(k.moduli())
            .map(|(v, &m)| {
                let r = v.to_rational() * BigInt::from(m);
                u64::try_from(r.to_integer()).expect("checked character value")
            })
            .collect()
    }

    fn check(&self, k: &FiniteAbelian) -> Result<()> {
        if self.values.len() != k.rank() {
            return Err(Error::AmbientMismatch(format!("{} values for a group of rank {}", self.values.len(), k.rank())));
        }
        for (i, (v, &m)) in self.values.iter().zip(k.moduli()).enumerate() {
            if !v.scale(&BigInt::from(m)).is_zero() {
                return Err(Error::NotHomomorphism(format!("generator {i} has order {m} but is sent to {v}")));
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: &[u64]) -> CirclePoint {
        self.values.iter().zip(x).map(|(v, &c)| v.scale(&BigInt::from(c))).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(CirclePoint::is_zero)
    }
}

/// `Hom(G, 𝕋) ≅ G` for finite `G`.
pub fn dual_group(f: &InvariantFactors) -> Result<InvariantFactors> {
    if !f.is_finite() {
        return Err(Error::Precondition("dual of a group with free part is not discrete".into()));
    }
    Ok(f.clone())
}

/// The `i`-th basis character sends generator `gᵢ` to `1/dᵢ` and the others
/// to `0`.
pub fn character_basis(f: &InvariantFactors) -> Result<Vec<FiniteCharacter>> {
    let k = f.to_group()?;
    (0..k.rank())
        .map(|i| {
            let mut y = vec![0; k.rank()];
            y[i] = 1;
            FiniteCharacter::from_dual_coords(&k, &y)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityCheck {
    pub separates: bool,
    pub equals_dual: bool,
    /// `|⟨H⟩|` inside `Hom(G, 𝕋)`.
    pub generated_order: u64,
}

/// Whether `chars` separates the points of `G`, and whether it generates
/// the whole dual. The two answers must agree.
pub fn separation_is_density_check(k: &FiniteAbelian, chars: &[FiniteCharacter], budget: u64) -> Result<DensityCheck> {
    k.check_budget(budget)?;
    for c in chars {
        c.check(k)?;
    }
    // Values as numerators over the exponent L: points are separated iff
    // their value vectors differ.
    let l = k.exponent();
    let ys: Vec<Vec<u64>> = chars.iter().map(|c| c.dual_coords(k)).collect();
    let mut seen = HashSet::new();
    let mut separates = true;
    for x in k.elements() {
        let sig: Vec<u64> = ys
            .iter()
            .map(|y| {
                y.iter().zip(&x).zip(k.moduli()).fold(0u64, |acc, ((&a, &b), &m)| (acc + (a * b % m) * (l / m)) % l)
            })
            .collect();
        if !seen.insert(sig) {
            separates = false;
            break;
        }
    }
    let generated = Subgroup::generated(k, &ys)?;
    let equals_dual = generated.order() == k.order();
    if separates != equals_dual {
        return Err(Error::Internal(format!("separates = {separates} but ⟨H⟩ has order {}", generated.order())));
    }
    Ok(DensityCheck { separates, equals_dual, generated_order: generated.order() })
}

/// A character on `A = ⟨g₁, …, g_r⟩ ⊆ G` given by its values on the `gⱼ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialCharacter {
    pub assignments: Vec<Assignment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub element: Vec<u64>,
    #[serde(with = "circle::as_text")]
    pub value: CirclePoint,
}

impl PartialCharacter {
    pub fn new(pairs: impl IntoIterator<Item = (Vec<u64>, CirclePoint)>) -> Self {
        PartialCharacter { assignments: pairs.into_iter().map(|(element, value)| Assignment { element, value }).collect() }
    }

    pub fn restriction(k: &FiniteAbelian, chi: &FiniteCharacter, a: &Subgroup) -> Self {
        Self::new(a.generators(k).into_iter().map(|g| {
            let v = chi.eval(&g);
            (g, v)
        }))
    }

    /// Tabulates the character on all of `A`, failing if the assignments do
    /// not extend to a homomorphism.
    pub fn tabulate(&self, k: &FiniteAbelian) -> Result<HashMap<Vec<u64>, CirclePoint>> {
        for a in &self.assignments {
            k.check_element(&a.element)?;
        }
        let mut table = HashMap::from([(vec![0; k.rank()], CirclePoint::zero())]);
        let mut queue = VecDeque::from([vec![0; k.rank()]]);
        while let Some(x) = queue.pop_front() {
            let vx = table[&x].clone();
            for a in &self.assignments {
                let y = k.add(&x, &a.element);
                let vy = &vx + &a.value;
                match table.get(&y) {
                    Some(old) if *old != vy => {
                        return Err(Error::NotHomomorphism(format!("{y:?} would map to both {old} and {vy}")));
                    }
                    Some(_) => {}
                    None => {
                        table.insert(y.clone(), vy);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn subgroup(&self, k: &FiniteAbelian) -> Result<Subgroup> {
        let gens: Vec<Vec<u64>> = self.assignments.iter().map(|a| a.element.clone()).collect();
        Subgroup::generated(k, &gens)
    }
}

/// Every `k ∈ Hom(G, 𝕋)` with `k|A = χ`, in lexicographic order of
/// `(k(e₁), …, k(e_r))`. There are exactly `|G/A|` of them.
pub fn all_extensions(k: &FiniteAbelian, chi: &PartialCharacter, budget: u64) -> Result<Vec<FiniteCharacter>> {
    k.check_budget(budget)?;
    chi.tabulate(k)?;
    let mut out = Vec::new();
    for y in k.elements() {
        let cand = FiniteCharacter::from_dual_coords(k, &y)?;
        if chi.assignments.iter().all(|a| cand.eval(&a.element) == a.value) {
            out.push(cand);
        }
    }
    Ok(out)
}

/// The lexicographically least extension of `χ` from `A` to `G`.
pub fn extend_character(k: &FiniteAbelian, chi: &PartialCharacter, budget: u64) -> Result<FiniteCharacter> {
    k.check_budget(budget)?;
    chi.tabulate(k)?;
    for y in k.elements() {
        let cand = FiniteCharacter::from_dual_coords(k, &y)?;
        if chi.assignments.iter().all(|a| cand.eval(&a.element) == a.value) {
            return Ok(cand);
        }
    }
    Err(Error::Internal("no extension found for a verified homomorphism".into()))
}
