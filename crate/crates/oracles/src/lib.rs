//! Brute-force reference computations for tests.
//!
//! Nothing here shares code with `tbtop-core`; every routine is a direct,
//! slow transcription of a definition.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fractional part of a rational, in `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - BigRational::from_integer(r.floor().to_integer())
}

/// `min(r, 1 − r)` for `r ∈ [0, 1)`.
pub fn dist_to_zero(r: &BigRational) -> BigRational {
    let r = frac(r);
    let s = BigRational::one() - &r;
    if r < s {
        r
    } else {
        s
    }
}

/// `h(a/pⁿ)` for the digit character with digits `digit(k)`, computed by
/// expanding `a` in base `p`: `a/pⁿ = Σ_j a_j / p^{n−j}` and
/// `h(1/p^m) = Σ_{k<m} digit(k)·p^{k−m}`.
pub fn padic_value(p: u64, digit: impl Fn(u64) -> u64, a: &BigUint, n: u64) -> BigRational {
    let bp = BigUint::from(p);
    let mut a_digits = Vec::new();
    let mut rest = a.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&bp);
        a_digits.push(r.to_u64().unwrap());
        rest = q;
    }
    let one_over = |m: u64| -> BigRational {
        let mut s = BigRational::zero();
        for k in 0..m {
            let d = digit(k);
            if d != 0 {
                s += BigRational::new(BigInt::from(d), BigInt::from(p).pow((m - k) as u32));
            }
        }
        s
    };
    let mut total = BigRational::zero();
    for (j, &aj) in a_digits.iter().enumerate() {
        let j = j as u64;
        if aj == 0 || j >= n {
            continue;
        }
        total += one_over(n - j) * BigInt::from(aj);
    }
    frac(&total)
}

/// `Σ_{k ∈ A} x_k / order_k mod 1` over an explicit support.
pub fn coordinate_sum(support: &[(u64, u64, u64)], in_a: impl Fn(u64) -> bool) -> BigRational {
    let mut s = BigRational::zero();
    for &(k, v, ord) in support {
        if in_a(k) {
            s += BigRational::new(BigInt::from(v), BigInt::from(ord));
        }
    }
    frac(&s)
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // Laplace expansion for tiny blocks, Gaussian elimination over ℚ otherwise.
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().cloned().map(BigRational::from_integer).collect()).collect();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest {
            let f = &row[c] / &pivot[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * y;
            }
        }
    }
    d.to_integer()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinantal divisors `D_k = gcd of all k×k minors`, for `k = 1..=min(r, c)`.
pub fn determinantal_divisors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    (1..=r.min(c))
        .map(|k| {
            let mut g = BigInt::zero();
            for rows in combinations(r, k) {
                for cols in combinations(c, k) {
                    let minor: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
                    g = g.gcd(&det(&minor));
                }
            }
            g
        })
        .collect()
}

/// Smith diagonal from determinantal divisors: `d_k = D_k / D_{k−1}`, with
/// zeros once `D_k` vanishes.
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let dd = determinantal_divisors(m);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for d in dd {
        if d.is_zero() {
            out.push(BigInt::zero());
            prev = BigInt::zero();
        } else {
            out.push(&d / &prev);
            prev = d;
        }
    }
    out
}

/// Row-style Hermite normal form of the lattice spanned by `rows` in `ℤ^g`.
/// Returns the nonzero rows, upper triangular with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite(rows: &[Vec<BigInt>], g: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..g {
        // Euclid on column `col` among the remaining rows.
        loop {
            let nz: Vec<usize> = (0..a.len()).filter(|&i| !a[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            for &i in &nz {
                if i != piv {
                    let q = a[i][col].div_floor(&a[piv][col]);
                    let prow = a[piv].clone();
                    for (x, y) in a[i].iter_mut().zip(&prow) {
                        *x -= &q * y;
                    }
                }
            }
        }
        if let Some(i) = (0..a.len()).find(|&i| !a[i][col].is_zero()) {
            let mut row = a.remove(i);
            if row[col].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(row);
        }
    }
    for i in 0..out.len() {
        let col = (0..g).find(|&j| !out[i][j].is_zero()).unwrap();
        for k in 0..i {
            let q = out[k][col].div_floor(&out[i][col]);
            let prow = out[i].clone();
            for (x, y) in out[k].iter_mut().zip(&prow) {
                *x -= &q * y;
            }
        }
    }
    out
}

/// `|ℤ^g / L|` by breadth-first enumeration of cosets, each reduced to its
/// canonical representative in the Hermite box. `None` if `L` is not of
/// full rank or the count exceeds `cap`.
pub fn quotient_order(rows: &[Vec<BigInt>], g: usize, cap: u64) -> Option<u64> {
    let h = hermite(rows, g);
    if h.len() < g {
        return None;
    }
    let reduce = |v: &mut Vec<BigInt>| {
        for row in &h {
            let col = (0..g).find(|&j| !row[j].is_zero()).unwrap();
            let q = v[col].div_floor(&row[col]);
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
    };
    let zero = vec![BigInt::zero(); g];
    let mut seen: HashSet<Vec<BigInt>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        for j in 0..g {
            let mut w = v.clone();
            w[j] += 1;
            reduce(&mut w);
            if seen.insert(w.clone()) {
                if seen.len() as u64 > cap {
                    return None;
                }
                queue.push_back(w);
            }
        }
    }
    Some(seen.len() as u64)
}

/// All elements of `ℤ(m₁) ⊕ … ⊕ ℤ(m_k)`.
pub fn elements(moduli: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &m in moduli {
        out = out.into_iter().flat_map(|v| (0..m).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn add(moduli: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).zip(moduli).map(|((x, y), m)| (x + y) % m).collect()
}

/// Number of `x` with `p·x = 0`.
pub fn p_torsion_count(moduli: &[u64], p: u64) -> u64 {
    elements(moduli).iter().filter(|x| x.iter().zip(moduli).all(|(&c, &m)| (c * p).is_multiple_of(m))).count() as u64
}

/// Number of elements whose order is a power of `p`.
pub fn p_primary_count(moduli: &[u64], p: u64) -> u64 {
    elements(moduli)
        .iter()
        .filter(|x| {
            let mut y = x.to_vec();
            for _ in 0..64 {
                if y.iter().all(|&c| c == 0) {
                    return true;
                }
                y = y.iter().zip(moduli.iter()).map(|(&c, &m)| (c * p) % m).collect();
            }
            false
        })
        .count() as u64
}

/// Every subgroup of a group with at most 12 elements, by testing every
/// subset for closure.
pub fn subgroups_by_subsets(moduli: &[u64]) -> Vec<BTreeSet<Vec<u64>>> {
    let all = elements(moduli);
    assert!(all.len() <= 12, "subset oracle is exponential");
    let zero = vec![0; moduli.len()];
    let mut out = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        let s: BTreeSet<Vec<u64>> = (0..all.len()).filter(|i| mask & (1 << i) != 0).map(|i| all[i].clone()).collect();
        if !s.contains(&zero) {
            continue;
        }
        if s.iter().all(|a| s.iter().all(|b| s.contains(&add(moduli, a, b)))) {
            out.push(s);
        }
    }
    out
}

/// Closure of a generator set by repeated addition.
pub fn closure(moduli: &[u64], gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let mut s = BTreeSet::from([vec![0; moduli.len()]]);
    let mut queue: VecDeque<Vec<u64>> = s.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = add(moduli, &x, g);
            if s.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    s
}

/// Every subgroup generated by at most `r` elements.
pub fn subgroups_by_tuples(moduli: &[u64], r: usize) -> BTreeSet<BTreeSet<Vec<u64>>> {
    let all = elements(moduli);
    let mut out = BTreeSet::new();
    let mut frontier: Vec<Vec<Vec<u64>>> = vec![vec![]];
    out.insert(closure(moduli, &[]));
    for _ in 0..r {
        let mut next = Vec::new();
        let mut seen_here = HashSet::new();
        for gens in &frontier {
            for x in &all {
                let mut g = gens.clone();
                g.push(x.clone());
                let s = closure(moduli, &g);
                if seen_here.insert(s.clone()) {
                    out.insert(s);
                    next.push(g);
                }
            }
        }
        frontier = next;
    }
    out
}

/// All `y` with `Σ yᵢ·aᵢ/mᵢ ≡ target(a)` on every listed `a`, where the
/// character is `x ↦ Σ yᵢxᵢ/mᵢ`.
pub fn lifts(moduli: &[u64], constraints: &[(Vec<u64>, BigRational)]) -> Vec<Vec<u64>> {
    elements(moduli)
        .into_iter()
        .filter(|y| {
            constraints.iter().all(|(a, t)| {
                let mut s = BigRational::zero();
                for ((&yi, &ai), &m) in y.iter().zip(a).zip(moduli) {
                    s += BigRational::new(BigInt::from(yi * ai), BigInt::from(m));
                }
                frac(&s) == frac(t)
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: Vec<Vec<i64>>) -> Vec<Vec<BigInt>> {
        rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
    }

    #[test]
    fn smith_small() {
        assert_eq!(smith_diagonal(&bi(vec![vec![2, 4], vec![6, 8]])), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(smith_diagonal(&bi(vec![vec![2, 0], vec![0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn cosets() {
        assert_eq!(quotient_order(&bi(vec![vec![2, 0], vec![0, 2]]), 2, 100), Some(4));
        assert_eq!(quotient_order(&bi(vec![vec![2, 0]]), 2, 100), None);
        assert_eq!(quotient_order(&bi(vec![vec![2, 4], vec![6, 8]]), 2, 100), Some(8));
    }

    #[test]
    fn subgroup_oracles_agree() {
        let a: BTreeSet<_> = subgroups_by_subsets(&[2, 4]).into_iter().collect();
        assert_eq!(a.len(), 8);
        assert_eq!(a, subgroups_by_tuples(&[2, 4], 2));
    }

    #[test]
    fn padic() {
        let v = padic_value(2, |k| u64::from(k == 1), &BigUint::from(1u8), 6);
        assert_eq!(v, BigRational::new(1.into(), 32.into()));
    }
}
