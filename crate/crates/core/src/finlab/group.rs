use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Default cap on `|K|` for exhaustive enumeration.
pub const DEFAULT_BUDGET: u64 = 4096;

/// `G = ℤ^g / rowspan(relations)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianPresentation {
    pub gens: usize,
    pub relations: IntMatrix,
}

impl FiniteAbelianPresentation {
    pub fn new(gens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != gens {
            return Err(Error::invalid("relations", format!("expected {gens} columns, got {}", relations.cols())));
        }
        Ok(FiniteAbelianPresentation { gens, relations })
    }
}

/// `ℤ^{free_rank} ⊕ ℤ(d₁) ⊕ … ⊕ ℤ(d_t)` with `2 ≤ d₁ | d₂ | … | d_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "InvariantFactorsRepr")]
pub struct InvariantFactors {
    #[serde(serialize_with = "ser_big_vec")]
    pub torsion: Vec<BigUint>,
    pub free_rank: u64,
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Deserialize)]
struct InvariantFactorsRepr {
    torsion: Vec<serde_json::Value>,
    #[serde(default)]
    free_rank: u64,
}

impl TryFrom<InvariantFactorsRepr> for InvariantFactors {
    type Error = Error;
    fn try_from(r: InvariantFactorsRepr) -> Result<Self> {
        let torsion = r
            .torsion
            .iter()
            .map(|v| {
                super::matrix::parse_int(v)
                    .map_err(|e| Error::invalid("torsion", e))?
                    .to_biguint()
                    .ok_or_else(|| Error::invalid("torsion", "factors must be positive"))
            })
            .collect::<Result<Vec<_>>>()?;
        InvariantFactors::new(torsion, r.free_rank)
    }
}

impl InvariantFactors {
    pub fn new(torsion: Vec<BigUint>, free_rank: u64) -> Result<Self> {
        if torsion.iter().any(|d| *d < BigUint::from(2u8)) {
            return Err(Error::invalid("torsion", "every factor must be at least 2"));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::invalid("torsion", "factors must form a divisibility chain"));
        }
        Ok(InvariantFactors { torsion, free_rank })
    }

    pub fn finite(torsion: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(torsion.into_iter().map(BigUint::from).collect(), 0)
    }

    pub fn trivial() -> Self {
        InvariantFactors { torsion: vec![], free_rank: 0 }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigUint> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn to_group(&self) -> Result<FiniteAbelian> {
        if !self.is_finite() {
            return Err(Error::Precondition("group has positive free rank".into()));
        }
        let moduli = self
            .torsion
            .iter()
            .map(|d| d.to_u64().ok_or_else(|| Error::invalid("torsion", "factor exceeds u64")))
            .collect::<Result<Vec<_>>>()?;
        FiniteAbelian::new(moduli)
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z({d})")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariant factors of `ℤ^g / rowspan` read off the Smith form.
pub fn quotient_decomposition(pres: &FiniteAbelianPresentation) -> InvariantFactors {
    let diag = smith_normal_form(&pres.relations).diagonal();
    let mut free_rank = (pres.gens - diag.len()) as u64;
    let mut torsion = Vec::new();
    for d in diag {
        if d.is_zero() {
            free_rank += 1;
        } else if !d.is_one() {
            torsion.push(d.to_biguint().expect("diagonal is non-negative"));
        }
    }
    InvariantFactors { torsion, free_rank }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranks {
    pub r0: u64,
    /// `r_p` keyed by prime, as decimal strings for JSON.
    pub rp: BTreeMap<String, u64>,
    pub total: u64,
}

impl Ranks {
    pub fn r_p(&self, p: u64) -> u64 {
        self.rp.get(&p.to_string()).copied().unwrap_or(0)
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime divisors of `n` by trial division; fails when a cofactor could be
/// composite with both parts past the trial limit.
fn prime_divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigUint::from(p) * p <= n {
        let bp = BigUint::from(p);
        if n.is_multiple_of(&bp) {
            out.push(bp.clone());
            while n.is_multiple_of(&bp) {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        let limit = BigUint::from(TRIAL_LIMIT);
        if n >= &limit * &limit {
            return Err(Error::Precondition(format!("cannot certify the factorization of {n}")));
        }
        out.push(n);
    }
    Ok(out)
}

/// `r₀`, the `p`-ranks `r_p` (number of factors divisible by `p`) and their
/// total.
pub fn ranks(f: &InvariantFactors) -> Result<Ranks> {
    let mut rp = BTreeMap::new();
    let mut sorted: Vec<(BigUint, u64)> = Vec::new();
    if let Some(top) = f.torsion.last() {
        for p in prime_divisors(top)? {
            let count = f.torsion.iter().filter(|d| d.is_multiple_of(&p)).count() as u64;
            sorted.push((p, count));
        }
    }
    sorted.sort();
    let total = f.free_rank + sorted.iter().map(|(_, c)| c).sum::<u64>();
    for (p, c) in sorted {
        rp.insert(p.to_string(), c);
    }
    Ok(Ranks { r0: f.free_rank, rp, total })
}

/// Invariant factors of the `p`-primary part.
pub fn p_component(f: &InvariantFactors, p: u64) -> Result<InvariantFactors> {
    if !crate::numeric::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !f.is_finite() {
        return Err(Error::Precondition("p-component needs a finite group".into()));
    }
    let bp = BigUint::from(p);
    let torsion = f
        .torsion
        .iter()
        .map(|d| {
            let mut d = d.clone();
            let mut part = BigUint::one();
            while d.is_multiple_of(&bp) {
                d /= &bp;
                part *= &bp;
            }
            part
        })
        .filter(|d| !d.is_one())
        .collect();
    Ok(InvariantFactors { torsion, free_rank: 0 })
}

/// `ℤ(m₁) ⊕ … ⊕ ℤ(m_k)` in coordinates; elements are indexed in mixed
/// radix with the first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelian {
    moduli: Vec<u64>,
    order: u64,
}

impl TryFrom<Vec<u64>> for FiniteAbelian {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        FiniteAbelian::new(v)
    }
}

impl From<FiniteAbelian> for Vec<u64> {
    fn from(g: FiniteAbelian) -> Self {
        g.moduli
    }
}

impl FiniteAbelian {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::invalid("moduli", "every modulus must be at least 1"));
        }
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .filter(|&n| n <= u32::MAX as u64)
            .ok_or_else(|| Error::invalid("moduli", "group order too large to index"))?;
        Ok(FiniteAbelian { moduli, order })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub(crate) fn check_budget(&self, budget: u64) -> Result<()> {
        if self.order > budget {
            return Err(Error::BudgetExceeded { size: self.order, budget });
        }
        Ok(())
    }

    pub fn encode(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.moduli).fold(0u64, |acc, (&c, &m)| acc * m + c % m) as usize
    }

    pub fn decode(&self, mut i: usize) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = i as u64 % m;
            i /= m as usize;
        }
        out
    }

    /// Reduces arbitrary integer coordinates.
    pub fn reduce(&self, x: &[BigInt]) -> Result<Vec<u64>> {
        if x.len() != self.moduli.len() {
            return Err(Error::AmbientMismatch(format!("{} coordinates for a group of rank {}", x.len(), self.rank())));
        }
        Ok(x.iter().zip(&self.moduli).map(|(c, &m)| c.mod_floor(&BigInt::from(m)).to_u64().expect("reduced")).collect())
    }

    pub fn check_element(&self, x: &[u64]) -> Result<()> {
        if x.len() != self.moduli.len() {
            return Err(Error::AmbientMismatch(format!("{} coordinates for a group of rank {}", x.len(), self.rank())));
        }
        if x.iter().zip(&self.moduli).any(|(c, m)| c >= m) {
            return Err(Error::invalid("element", format!("coordinates {x:?} out of range for moduli {:?}", self.moduli)));
        }
        Ok(())
    }

    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for &m in self.moduli.iter().rev() {
            out += ((a % m + b % m) % m) * place;
            a /= m;
            b /= m;
            place *= m;
        }
        out as usize
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.moduli).fold(1u64, |acc, (&c, &m)| acc.lcm(&(m / c.gcd(&m))))
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order as usize).map(|i| self.decode(i))
    }

    /// Lcm of the moduli.
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, m| acc.lcm(m))
    }
}

impl fmt::Display for FiniteAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z({m})")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Subgroup of a [`FiniteAbelian`] as a membership bitset over element
/// indices. Equality is equality of element sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    order: u64,
    bits: Vec<u64>,
}

impl Subgroup {
    pub fn trivial(k: &FiniteAbelian) -> Self {
        let mut s = Subgroup { order: 0, bits: vec![0; (k.order() as usize).div_ceil(64)] };
        s.insert(0);
        s
    }

    pub fn whole(k: &FiniteAbelian) -> Self {
        let mut s = Subgroup { order: 0, bits: vec![0; (k.order() as usize).div_ceil(64)] };
        for i in 0..k.order() as usize {
            s.insert(i);
        }
        s
    }

    pub fn generated(k: &FiniteAbelian, gens: &[Vec<u64>]) -> Result<Self> {
        let mut s = Self::trivial(k);
        for g in gens {
            k.check_element(g)?;
            s = s.join(k, k.encode(g));
        }
        Ok(s)
    }

    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.order += 1;
        }
        fresh
    }

    pub(crate) fn contains_idx(&self, i: usize) -> bool {
        self.bits.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn contains(&self, k: &FiniteAbelian, x: &[u64]) -> bool {
        k.check_element(x).is_ok() && self.contains_idx(k.encode(x))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1u64 << b) != 0).map(move |b| w * 64 + b)
        })
    }

    pub fn elements(&self, k: &FiniteAbelian) -> Vec<Vec<u64>> {
        self.indices().map(|i| k.decode(i)).collect()
    }

    /// `⟨S, x⟩ = ⋃ₖ (S + k·x)`.
    pub(crate) fn join(&self, k: &FiniteAbelian, x: usize) -> Subgroup {
        let mut t = self.clone();
        let base: Vec<usize> = self.indices().collect();
        let mut cur = x;
        while !self.contains_idx(cur) {
            for &y in &base {
                t.insert(k.add_idx(y, cur));
            }
            cur = k.add_idx(cur, x);
        }
        t
    }

    /// Deterministic generating set: scanning elements in index order, keep
    /// each one not yet in the span of those kept.
    pub fn generators(&self, k: &FiniteAbelian) -> Vec<Vec<u64>> {
        let mut span = Subgroup::trivial(k);
        let mut gens = Vec::new();
        for i in self.indices() {
            if !span.contains_idx(i) {
                span = span.join(k, i);
                gens.push(k.decode(i));
            }
        }
        gens
    }

    pub fn describe(&self, k: &FiniteAbelian) -> SubgroupReport {
        SubgroupReport { generators: self.generators(k), order: self.order }
    }
}

/// Generator-list form of a subgroup for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub generators: Vec<Vec<u64>>,
    pub order: u64,
}

/// All subgroups `S` with `H ⊆ S ⊊ K`, ordered by order then element set.
///
/// Breadth-first over the lattice: each found `S` is extended by one coset
/// representative `x ∉ S` at a time.
pub fn enumerate_intermediate_subgroups(k: &FiniteAbelian, h: &Subgroup, budget: u64) -> Result<Vec<Subgroup>> {
    k.check_budget(budget)?;
    let n = k.order() as usize;
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut queue = VecDeque::new();
    if h.order() < k.order() {
        seen.insert(h.clone());
        queue.push_back(h.clone());
    }
    while let Some(s) = queue.pop_front() {
        let mut done = s.clone();
        for x in 0..n {
            if done.contains_idx(x) {
                continue;
            }
            for y in s.indices() {
                done.insert(k.add_idx(x, y));
            }
            let t = s.join(k, x);
            if t.order() < k.order() && !seen.contains(&t) {
                seen.insert(t.clone());
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.indices().cmp(b.indices())));
    Ok(out)
}

/// One member `H_A` of the injection family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionMember {
    pub subset: Vec<usize>,
    pub subgroup: Subgroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionFamily {
    /// Orders of the cyclic factors `C_i` of `K/H`.
    pub factors: Vec<u64>,
    /// `c_i ∈ K` mapping onto a generator of `C_i`.
    pub lifts: Vec<Vec<u64>>,
    pub members: Vec<InjectionMember>,
}

/// `A ↦ H_A = φ⁻¹(⊕_{i∈A} C_i)` for every proper subset `A` of the cyclic
/// factors of `K/H`, where `φ: K ↠ K/H`.
///
/// `K/H = ℤ^g / L` with `L` spanned by `mᵢeᵢ` and the generators of `H`.
/// With `U·R·V = D`, the map `x ↦ xV` carries `L` onto `rowspan(D)`, so row
/// `i` of `V⁻¹` lifts the generator of the `i`-th factor and
/// `H_A = H + ⟨cᵢ : i ∈ A⟩`.
pub fn thm17_injection(k: &FiniteAbelian, h: &Subgroup, budget: u64) -> Result<InjectionFamily> {
    k.check_budget(budget)?;
    let g = k.rank();
    let mut rows: Vec<Vec<BigInt>> = (0..g)
        .map(|i| (0..g).map(|j| if i == j { BigInt::from(k.moduli()[i]) } else { BigInt::zero() }).collect())
        .collect();
    for gen in h.generators(k) {
        rows.push(gen.into_iter().map(BigInt::from).collect());
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(rows, Some(g))?);
    let v_inv = snf.v_inv.as_ref().ok_or_else(|| Error::Internal("missing inverse transform".into()))?;
    let diag = snf.diagonal();
    let mut factors = Vec::new();
    let mut lifts = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if *d > BigInt::one() {
            factors.push(d.to_u64().ok_or_else(|| Error::Internal("factor exceeds u64".into()))?);
            lifts.push(k.reduce(v_inv.row(i))?);
        }
    }
    let t = factors.len();
    if t == 0 {
        return Err(Error::Precondition("H = K: the quotient has no cyclic factors".into()));
    }
    if t > 20 {
        return Err(Error::BudgetExceeded { size: 1 << t.min(63), budget: 1 << 20 });
    }
    let mut members: Vec<InjectionMember> = Vec::new();
    for mask in 0u64..(1 << t) - 1 {
        let subset: Vec<usize> = (0..t).filter(|i| mask & (1 << i) != 0).collect();
        let mut s = h.clone();
        for &i in &subset {
            s = s.join(k, k.encode(&lifts[i]));
        }
        let expected = subset.iter().fold(h.order(), |acc, &i| acc * factors[i]);
        if s.order() != expected || s.order() == k.order() || !h.is_subgroup_of(&s) {
            return Err(Error::Internal(format!("H_A for A = {subset:?} has order {} (expected {expected})", s.order())));
        }
        members.push(InjectionMember { subset, subgroup: s });
    }
    let distinct: HashSet<&Subgroup> = members.iter().map(|m| &m.subgroup).collect();
    if distinct.len() != members.len() {
        return Err(Error::Internal("A ↦ H_A is not injective".into()));
    }
    Ok(InjectionFamily { factors, lifts, members })
}
