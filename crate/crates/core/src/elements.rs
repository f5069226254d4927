//! Elements of the basic countable abelian groups: `ℤ`, `ℤ(n)`,
//! `⊕ₖ ℤ(pₖ^rₖ)` and `ℤ(p^∞)`.
//!
//! Every constructor returns the canonical form, so structural equality is
//! group equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::circle::CirclePoint;
use crate::error::{Error, Result};
use crate::numeric::{dec_string, is_prime};

/// A prime power `p^r` with `r ≥ 1`, written `[p, r]` in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u64, u32)", into = "(u64, u32)")]
pub struct PrimePower {
    p: u64,
    r: u32,
}

impl PrimePower {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::invalid("prime power", "exponent must be at least 1"));
        }
        if p.checked_pow(r).is_none() {
            return Err(Error::invalid("prime power", format!("{p}^{r} overflows u64")));
        }
        Ok(PrimePower { p, r })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.r)
    }
}

impl TryFrom<(u64, u32)> for PrimePower {
    type Error = Error;

    fn try_from((p, r): (u64, u32)) -> Result<Self> {
        PrimePower::new(p, r)
    }
}

impl From<PrimePower> for (u64, u32) {
    fn from(pp: PrimePower) -> Self {
        (pp.p, pp.r)
    }
}

/// Rule `k ↦ pₖ^rₖ` giving the order of coordinate `k` of a countable direct
/// sum of cyclic groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", try_from = "OrderSchemaRepr")]
pub enum OrderSchema {
    /// Every coordinate is `ℤ(p^r)`.
    Constant { order: PrimePower },
    /// Coordinate `k` is `cycle[k mod len]`.
    Periodic { cycle: Vec<PrimePower> },
    /// Explicit orders for the first coordinates, then a default.
    Prefix { prefix: Vec<PrimePower>, default: PrimePower },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
enum OrderSchemaRepr {
    Constant { order: PrimePower },
    Periodic { cycle: Vec<PrimePower> },
    Prefix { prefix: Vec<PrimePower>, default: PrimePower },
}

impl TryFrom<OrderSchemaRepr> for OrderSchema {
    type Error = Error;

    fn try_from(r: OrderSchemaRepr) -> Result<Self> {
        Ok(match r {
            OrderSchemaRepr::Constant { order } => OrderSchema::Constant { order },
            OrderSchemaRepr::Periodic { cycle } => {
                if cycle.is_empty() {
                    return Err(Error::invalid("orders.cycle", "must be nonempty"));
                }
                OrderSchema::Periodic { cycle }
            }
            OrderSchemaRepr::Prefix { prefix, default } => OrderSchema::Prefix { prefix, default },
        })
    }
}

impl OrderSchema {
    /// `⊕ₖ ℤ(p^r)`.
    pub fn constant(p: u64, r: u32) -> Result<Self> {
        Ok(OrderSchema::Constant { order: PrimePower::new(p, r)? })
    }

    pub fn periodic(cycle: Vec<PrimePower>) -> Result<Self> {
        OrderSchemaRepr::Periodic { cycle }.try_into()
    }

    pub fn prime_power_at(&self, k: u64) -> PrimePower {
        match self {
            OrderSchema::Constant { order } => *order,
            OrderSchema::Periodic { cycle } => cycle[(k % cycle.len() as u64) as usize],
            OrderSchema::Prefix { prefix, default } => {
                usize::try_from(k).ok().and_then(|i| prefix.get(i)).copied().unwrap_or(*default)
            }
        }
    }

    pub fn order_at(&self, k: u64) -> u64 {
        self.prime_power_at(k).order()
    }
}

impl fmt::Display for OrderSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pp = |x: &PrimePower| format!("Z({}^{})", x.p, x.r);
        match self {
            OrderSchema::Constant { order } => write!(f, "⊕ {}", pp(order)),
            OrderSchema::Periodic { cycle } => {
                write!(f, "⊕ periodic[{}]", cycle.iter().map(pp).collect::<Vec<_>>().join(", "))
            }
            OrderSchema::Prefix { prefix, default } => write!(
                f,
                "⊕ prefix[{}] then {}",
                prefix.iter().map(pp).collect::<Vec<_>>().join(", "),
                pp(default)
            ),
        }
    }
}

/// `k ∈ ℤ(n)`, identified with `k/n ∈ 𝕋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicElement {
    k: u64,
    n: u64,
}

impl CyclicElement {
    pub fn new(k: i64, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("cyclic.n", "modulus must be at least 2"));
        }
        let k = k.rem_euclid(n as i64) as u64;
        Ok(CyclicElement { k, n })
    }

    pub fn value(&self) -> u64 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn embed(&self) -> CirclePoint {
        CirclePoint::from_parts(&BigUint::from(self.k), &BigUint::from(self.n))
    }
}

/// Finite-support element of `⊕ₖ ℤ(pₖ^rₖ)`. The support map stores the
/// nonzero value `x(k) ∈ {1, …, pₖ^rₖ − 1}` at each supported index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectSumElement {
    ambient: OrderSchema,
    support: BTreeMap<u64, u64>,
}

impl DirectSumElement {
    pub fn zero(ambient: OrderSchema) -> Self {
        DirectSumElement { ambient, support: BTreeMap::new() }
    }

    /// Builds an element from `(index, value)` pairs; values are reduced
    /// modulo the coordinate order, and repeated indices accumulate.
    pub fn new(ambient: OrderSchema, coords: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut x = Self::zero(ambient);
        for (k, v) in coords {
            x.add_at(k, v);
        }
        x
    }

    /// The basis-like element with a single coordinate `value` at `k`.
    pub fn single(ambient: OrderSchema, k: u64, value: i64) -> Self {
        Self::new(ambient, [(k, value)])
    }

    fn add_at(&mut self, k: u64, v: i64) {
        let ord = self.ambient.order_at(k);
        let cur = self.support.get(&k).copied().unwrap_or(0) as i128;
        let next = (cur + v as i128).rem_euclid(ord as i128) as u64;
        if next == 0 {
            self.support.remove(&k);
        } else {
            self.support.insert(k, next);
        }
    }

    pub fn ambient(&self) -> &OrderSchema {
        &self.ambient
    }

    pub fn support(&self) -> &BTreeMap<u64, u64> {
        &self.support
    }

    /// Coordinate `x(k) ∈ ℤ(pₖ^rₖ) ⊂ 𝕋`.
    pub fn coord(&self, k: u64) -> CirclePoint {
        match self.support.get(&k) {
            Some(&v) => CirclePoint::from_parts(&BigUint::from(v), &BigUint::from(self.ambient.order_at(k))),
            None => CirclePoint::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!("{} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (&k, &v) in &other.support {
            out.add_at(k, v as i64);
        }
        Ok(out)
    }

    pub fn scale(&self, m: &BigInt) -> Self {
        let mut out = Self::zero(self.ambient.clone());
        for (&k, &v) in &self.support {
            let ord = BigInt::from(self.ambient.order_at(k));
            let r = (m * BigInt::from(v)).mod_floor(&ord);
            if !r.is_zero() {
                out.support.insert(k, u64::try_from(r).expect("reduced below a u64 order"));
            }
        }
        out
    }
}

/// `a/p^n ∈ ℤ(p^∞)` in canonical form: `p ∤ a` unless the element is zero,
/// which is stored as `0/p^0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrueferElement {
    p: u64,
    a: BigUint,
    n: u64,
}

impl PrueferElement {
    /// Reduces `a` modulo `p^n` and cancels common factors of `p`.
    pub fn canonicalize(p: u64, a: impl Into<BigInt>, n: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::canonical_unchecked(p, &a.into(), n))
    }

    fn canonical_unchecked(p: u64, a: &BigInt, mut n: u64) -> Self {
        let modulus = BigInt::from(BigUint::from(p).pow(n));
        let (_, mut a) = a.mod_floor(&modulus).into_parts();
        if a.is_zero() {
            return PrueferElement { p, a, n: 0 };
        }
        let pb = BigUint::from(p);
        while n > 0 && (&a % &pb).is_zero() {
            a /= &pb;
            n -= 1;
        }
        PrueferElement { p, a, n }
    }

    pub fn zero(p: u64) -> Result<Self> {
        Self::canonicalize(p, 0, 0)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> &BigUint {
        &self.a
    }

    pub fn exponent(&self) -> u64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
    }

    pub fn to_circle(&self) -> CirclePoint {
        CirclePoint::from_parts(&self.a, &BigUint::from(self.p).pow(self.n))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::AmbientMismatch(format!("Z({}^∞) vs Z({}^∞)", self.p, other.p)));
        }
        let n = self.n.max(other.n);
        let p = BigUint::from(self.p);
        let lift = |x: &Self| BigInt::from(&x.a * p.clone().pow(n - x.n));
        Ok(Self::canonical_unchecked(self.p, &(lift(self) + lift(other)), n))
    }

    pub fn scale(&self, m: &BigInt) -> Self {
        Self::canonical_unchecked(self.p, &(BigInt::from(self.a.clone()) * m), self.n)
    }
}

/// An element of one of the supported ambient groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub enum GroupElement {
    Int(BigInt),
    Cyclic(CyclicElement),
    DirectSum(DirectSumElement),
    Pruefer(PrueferElement),
}

impl GroupElement {
    pub fn kind(&self) -> &'static str {
        match self {
            GroupElement::Int(_) => "int",
            GroupElement::Cyclic(_) => "cyclic",
            GroupElement::DirectSum(_) => "dsum",
            GroupElement::Pruefer(_) => "pruefer",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupElement::Int(v) => v.is_zero(),
            GroupElement::Cyclic(c) => c.k == 0,
            GroupElement::DirectSum(x) => x.is_zero(),
            GroupElement::Pruefer(x) => x.is_zero(),
        }
    }

    /// Group addition; both operands must live in the same ambient group.
    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (GroupElement::Int(a), GroupElement::Int(b)) => Ok(GroupElement::Int(a + b)),
            (GroupElement::Cyclic(a), GroupElement::Cyclic(b)) if a.n == b.n => {
                Ok(GroupElement::Cyclic(CyclicElement { k: ((a.k as u128 + b.k as u128) % a.n as u128) as u64, n: a.n }))
            }
            (GroupElement::DirectSum(a), GroupElement::DirectSum(b)) => a.add(b).map(GroupElement::DirectSum),
            (GroupElement::Pruefer(a), GroupElement::Pruefer(b)) => a.add(b).map(GroupElement::Pruefer),
            _ => Err(Error::AmbientMismatch(format!("{} vs {}", self.describe_ambient(), other.describe_ambient()))),
        }
    }

    pub fn scale(&self, m: &BigInt) -> Self {
        match self {
            GroupElement::Int(v) => GroupElement::Int(v * m),
            GroupElement::Cyclic(c) => {
                let k = (BigInt::from(c.k) * m).mod_floor(&BigInt::from(c.n));
                GroupElement::Cyclic(CyclicElement { k: u64::try_from(k).expect("reduced below n"), n: c.n })
            }
            GroupElement::DirectSum(x) => GroupElement::DirectSum(x.scale(m)),
            GroupElement::Pruefer(x) => GroupElement::Pruefer(x.scale(m)),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn describe_ambient(&self) -> String {
        match self {
            GroupElement::Int(_) => "Z".into(),
            GroupElement::Cyclic(c) => format!("Z({})", c.n),
            GroupElement::DirectSum(x) => x.ambient.to_string(),
            GroupElement::Pruefer(x) => format!("Z({}^∞)", x.p),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Int(v) => write!(f, "{v}"),
            GroupElement::Cyclic(c) => write!(f, "{} mod {}", c.k, c.n),
            GroupElement::DirectSum(x) => {
                if x.support.is_empty() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = x
                    .support
                    .iter()
                    .map(|(k, v)| format!("{v}/{}·e{k}", x.ambient.order_at(*k)))
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
            GroupElement::Pruefer(x) => write!(f, "{}/{}^{}", x.a, x.p, x.n),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
enum ElementRepr {
    Int {
        #[serde(with = "dec_string")]
        v: BigInt,
    },
    Cyclic {
        k: u64,
        n: u64,
    },
    Dsum {
        orders: OrderSchema,
        #[serde(default, deserialize_with = "de_support")]
        support: BTreeMap<u64, (u64, u64)>,
    },
    Pruefer {
        p: u64,
        #[serde(with = "dec_string")]
        a: BigUint,
        n: u64,
    },
}

// Map keys arrive as strings once buffered by the tagged enum.
fn de_support<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<u64, (u64, u64)>, D::Error> {
    use serde::de::Error as _;
    BTreeMap::<String, (u64, u64)>::deserialize(d)?
        .into_iter()
        .map(|(k, v)| k.trim().parse().map(|k| (k, v)).map_err(|_| D::Error::custom(format!("bad index {k:?}"))))
        .collect()
}

impl TryFrom<ElementRepr> for GroupElement {
    type Error = Error;

    fn try_from(r: ElementRepr) -> Result<Self> {
        Ok(match r {
            ElementRepr::Int { v } => GroupElement::Int(v),
            ElementRepr::Cyclic { k, n } => {
                if k >= n {
                    return Err(Error::invalid("cyclic.k", format!("{k} not reduced mod {n}")));
                }
                GroupElement::Cyclic(CyclicElement::new(k as i64, n)?)
            }
            ElementRepr::Dsum { orders, support } => {
                let mut x = DirectSumElement::zero(orders);
                for (k, (v, ord)) in support {
                    let expected = x.ambient.order_at(k);
                    if ord != expected {
                        return Err(Error::invalid(
                            "support",
                            format!("coordinate {k} has order {expected}, got {ord}"),
                        ));
                    }
                    if v >= ord {
                        return Err(Error::invalid("support", format!("value {v} at {k} not reduced mod {ord}")));
                    }
                    if v != 0 {
                        x.support.insert(k, v);
                    }
                }
                GroupElement::DirectSum(x)
            }
            ElementRepr::Pruefer { p, a, n } => GroupElement::Pruefer(PrueferElement::canonicalize(p, a, n)?),
        })
    }
}

impl From<GroupElement> for ElementRepr {
    fn from(e: GroupElement) -> Self {
        match e {
            GroupElement::Int(v) => ElementRepr::Int { v },
            GroupElement::Cyclic(c) => ElementRepr::Cyclic { k: c.k, n: c.n },
            GroupElement::DirectSum(x) => {
                let support = x.support.iter().map(|(&k, &v)| (k, (v, x.ambient.order_at(k)))).collect();
                ElementRepr::Dsum { orders: x.ambient, support }
            }
            GroupElement::Pruefer(x) => ElementRepr::Pruefer { p: x.p, a: x.a, n: x.n },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pr(p: u64, a: i64, n: u64) -> PrueferElement {
        PrueferElement::canonicalize(p, a, n).unwrap()
    }

    #[test]
    fn embed_cyclic_examples() {
        assert_eq!(CyclicElement::new(1, 2).unwrap().embed().to_string(), "1/2");
        assert!(CyclicElement::new(0, 5).unwrap().embed().is_zero());
        assert_eq!(CyclicElement::new(2, 4).unwrap().embed().to_string(), "1/2");
        assert!(CyclicElement::new(0, 1).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let x = pr(2, 2, 2);
        assert_eq!((x.numerator().clone(), x.exponent()), (1u32.into(), 1));
        let x = pr(3, 10, 2);
        assert_eq!((x.numerator().clone(), x.exponent()), (1u32.into(), 2));
        let x = pr(5, 0, 3);
        assert_eq!((x.numerator().clone(), x.exponent()), (0u32.into(), 0));
        assert_eq!(PrueferElement::canonicalize(4, 1, 1), Err(Error::NotPrime(4)));
        assert_eq!(pr(2, -1, 2), pr(2, 3, 2));
    }

    #[test]
    fn group_add_examples() {
        let half = GroupElement::Pruefer(pr(2, 1, 1));
        assert!(half.add(&half).unwrap().is_zero());
        let quarter = GroupElement::Pruefer(pr(2, 1, 2));
        assert_eq!(quarter.add(&half).unwrap(), GroupElement::Pruefer(pr(2, 3, 2)));

        let amb = OrderSchema::constant(2, 1).unwrap();
        let e3 = GroupElement::DirectSum(DirectSumElement::single(amb, 3, 1));
        let sum = e3.add(&e3).unwrap();
        match &sum {
            GroupElement::DirectSum(x) => assert!(x.support().is_empty()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn ambient_mismatch() {
        let a = GroupElement::DirectSum(DirectSumElement::single(OrderSchema::constant(2, 1).unwrap(), 0, 1));
        let b = GroupElement::DirectSum(DirectSumElement::single(OrderSchema::constant(3, 1).unwrap(), 0, 1));
        assert!(matches!(a.add(&b), Err(Error::AmbientMismatch(_))));
        let c = GroupElement::Pruefer(pr(3, 1, 1));
        let d = GroupElement::Pruefer(pr(2, 1, 1));
        assert!(matches!(c.add(&d), Err(Error::AmbientMismatch(_))));
        assert!(matches!(GroupElement::Int(1.into()).add(&c), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn order_schemas() {
        let s = OrderSchema::periodic(vec![PrimePower::new(2, 1).unwrap(), PrimePower::new(3, 2).unwrap()]).unwrap();
        assert_eq!(s.order_at(0), 2);
        assert_eq!(s.order_at(5), 9);
        let s = OrderSchema::Prefix { prefix: vec![PrimePower::new(5, 1).unwrap()], default: PrimePower::new(2, 3).unwrap() };
        assert_eq!(s.order_at(0), 5);
        assert_eq!(s.order_at(1), 8);
        assert!(OrderSchema::periodic(vec![]).is_err());
        assert!(PrimePower::new(6, 1).is_err());
        assert!(serde_json::from_str::<OrderSchema>(r#"{"kind":"constant","order":[4,1]}"#).is_err());
    }

    #[test]
    fn json_forms() {
        let amb = OrderSchema::constant(2, 1).unwrap();
        let x = GroupElement::DirectSum(DirectSumElement::new(amb, [(5, 1)]));
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"kind":"dsum","orders":{"kind":"constant","order":[2,1]},"support":{"5":[1,2]}}"#);
        assert_eq!(serde_json::from_str::<GroupElement>(&j).unwrap(), x);

        let y: GroupElement = serde_json::from_str(r#"{"kind":"pruefer","p":2,"a":"2","n":2}"#).unwrap();
        assert_eq!(y, GroupElement::Pruefer(pr(2, 1, 1)));
        let z: GroupElement = serde_json::from_str(r#"{"kind":"int","v":"-12"}"#).unwrap();
        assert_eq!(z, GroupElement::Int((-12).into()));
        assert!(serde_json::from_str::<GroupElement>(r#"{"kind":"cyclic","k":5,"n":5}"#).is_err());
        let bad = r#"{"kind":"dsum","orders":{"kind":"constant","order":[2,1]},"support":{"1":[1,3]}}"#;
        assert!(serde_json::from_str::<GroupElement>(bad).is_err());
    }

    #[test]
    fn cyclic_embedding_is_injective_homomorphism() {
        for n in 2..=64u64 {
            let mut seen = std::collections::HashSet::new();
            for x in 0..n {
                let ex = CyclicElement::new(x as i64, n).unwrap();
                assert!(seen.insert(ex.embed()), "not injective at n={n}");
                for y in 0..n {
                    let ey = CyclicElement::new(y as i64, n).unwrap();
                    let sum = GroupElement::Cyclic(ex).add(&GroupElement::Cyclic(ey)).unwrap();
                    let GroupElement::Cyclic(s) = sum else { unreachable!() };
                    assert_eq!(s.embed(), &ex.embed() + &ey.embed());
                }
            }
        }
    }

    #[test]
    fn bounded_exponent_pruefer_subgroup_is_cyclic() {
        for (p, n) in [(2u64, 7u64), (3, 4), (5, 3), (7, 2), (11, 2), (2, 1)] {
            let order = p.pow(n as u32);
            let elems: Vec<PrueferElement> = (0..order).map(|a| pr(p, a as i64, n)).collect();
            let distinct: std::collections::HashSet<_> = elems.iter().cloned().collect();
            assert_eq!(distinct.len() as u64, order);
            let gen = pr(p, 1, n);
            for (a, x) in elems.iter().enumerate() {
                assert!(x.exponent() <= n);
                assert_eq!(&gen.scale(&BigInt::from(a)), x);
                for y in elems.iter().take(16) {
                    assert!(x.add(y).unwrap().exponent() <= n);
                }
            }
        }
    }

    fn arb_pruefer(p: u64) -> impl Strategy<Value = PrueferElement> {
        (any::<i64>(), 0u64..20).prop_map(move |(a, n)| pr(p, a, n))
    }

    proptest! {
        #[test]
        fn pruefer_canonical_and_additive(x in arb_pruefer(3), y in arb_pruefer(3)) {
            let s = x.add(&y).unwrap();
            if s.is_zero() {
                prop_assert_eq!(s.exponent(), 0);
            } else {
                prop_assert!(!(s.numerator() % 3u32).is_zero());
            }
            prop_assert_eq!(s.to_circle(), &x.to_circle() + &y.to_circle());
        }

        #[test]
        fn dsum_add_is_coordinatewise(
            a in proptest::collection::vec((0u64..12, -10i64..10), 0..6),
            b in proptest::collection::vec((0u64..12, -10i64..10), 0..6),
        ) {
            let amb = OrderSchema::periodic(vec![PrimePower::new(2, 2).unwrap(), PrimePower::new(3, 1).unwrap()]).unwrap();
            let x = DirectSumElement::new(amb.clone(), a);
            let y = DirectSumElement::new(amb, b);
            let s = x.add(&y).unwrap();
            for k in 0..12 {
                prop_assert_eq!(s.coord(k), &x.coord(k) + &y.coord(k));
            }
            prop_assert!(s.support().values().all(|&v| v != 0));
        }
    }
}
