//! Finite abelian groups in canonical prime-power form.
//!
//! A [`GroupSpec`] is the list of cyclic prime-power component orders, grouped
//! by prime ascending and with exponents non-increasing inside each prime.
//! Elements are coordinate vectors over those components. The mixed-radix
//! rank (first coordinate most significant) gives every element a linear
//! index in `[0, |G|)`, which is what the bit-vector sumset code addresses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize, is_prime, prime_power};
use crate::error::{check_cap, Error, Result};

/// One cyclic component `C_{p^e}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub prime: u64,
    pub exponent: u32,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    components: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Parses the comma-separated cyclic-order grammar, e.g. `"4,3"` or `"6"`.
pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let mut orders = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err(Error::Parse(format!("empty token in {text:?}")));
        }
        let n: i64 = token
            .parse()
            .map_err(|_| Error::Parse(format!("non-numeric token {token:?}")))?;
        if n <= 0 {
            return Err(Error::Parse(format!("cyclic order must be positive, got {n}")));
        }
        orders.push(n as u64);
    }
    GroupSpec::from_cyclic(&orders)
}

impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_group(s)
    }
}

impl GroupSpec {
    pub fn trivial() -> Self {
        GroupSpec { components: vec![] }
    }

    /// CRT-splits each cyclic order and sorts into canonical form.
    pub fn from_cyclic(orders: &[u64]) -> Result<Self> {
        let mut parts = Vec::new();
        for &n in orders {
            if n == 0 {
                return Err(Error::Parse("cyclic order must be positive".into()));
            }
            parts.extend(factorize(n).into_iter().map(|(p, e)| p.pow(e)));
        }
        Ok(Self::canonical(parts))
    }

    /// Builds from prime-power orders; rejects anything else.
    pub fn from_prime_powers(orders: &[u64]) -> Result<Self> {
        for &n in orders {
            if prime_power(n).is_none() {
                return Err(Error::Parse(format!("{n} is not a prime power")));
            }
        }
        Ok(Self::canonical(orders.to_vec()))
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic(&[n]).expect("n > 0")
    }

    /// `C_p^n`.
    pub fn elementary(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::canonical(vec![p; n]))
    }

    pub fn direct_sum(&self, other: &GroupSpec) -> GroupSpec {
        let mut parts = self.components.clone();
        parts.extend_from_slice(&other.components);
        Self::canonical(parts)
    }

    fn canonical(mut parts: Vec<u64>) -> Self {
        parts.retain(|&n| n > 1);
        parts.sort_by_key(|&n| {
            let (p, e) = prime_power(n).expect("prime power");
            (p, std::cmp::Reverse(e))
        });
        GroupSpec { components: parts }
    }

    /// Component orders in canonical order.
    pub fn components(&self) -> &[u64] {
        &self.components
    }

    pub fn component_info(&self) -> Vec<Component> {
        self.components
            .iter()
            .map(|&order| {
                let (prime, exponent) = prime_power(order).expect("prime power");
                Component {
                    prime,
                    exponent,
                    order,
                }
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.components.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.components.iter().fold(1, |acc, &n| arith::lcm(acc, n))
    }

    /// Distinct primes dividing `|G|`, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.component_info().iter().map(|c| c.prime).collect();
        ps.dedup();
        ps
    }

    /// Exponents `α_{p,1} >= α_{p,2} >= ...` of the `p`-primary part.
    pub fn prime_exponents(&self, p: u64) -> Vec<u32> {
        self.component_info()
            .iter()
            .filter(|c| c.prime == p)
            .map(|c| c.exponent)
            .collect()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.components.len()])
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.components.len() && g.coords.iter().zip(&self.components).all(|(c, n)| c < n)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.coords.len() != self.components.len() {
            return Err(Error::MismatchedGroups);
        }
        if !self.contains(g) {
            return Err(Error::InvalidElement(g.coords.clone()));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.coords
                .iter()
                .zip(&b.coords)
                .zip(&self.components)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub(crate) fn neg_unchecked(&self, a: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.coords
                .iter()
                .zip(&self.components)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    /// `m·a` for any integer `m`, negative included.
    pub fn smul(&self, m: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement::new(
            a.coords
                .iter()
                .zip(&self.components)
                .map(|(&x, &n)| {
                    let r = (m as i128 * x as i128).rem_euclid(n as i128);
                    r as u64
                })
                .collect(),
        ))
    }

    /// Least `m >= 1` with `m·g = 0`.
    pub fn order_of(&self, g: &GroupElement) -> u64 {
        g.coords
            .iter()
            .zip(&self.components)
            .fold(1, |acc, (&c, &n)| arith::lcm(acc, n / arith::gcd(n, c)))
    }

    pub fn is_zero(&self, g: &GroupElement) -> bool {
        g.coords.iter().all(|&c| c == 0)
    }

    /// Mixed-radix rank, first coordinate most significant.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.coords
            .iter()
            .zip(&self.components)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0; self.components.len()];
        for (slot, &n) in coords.iter_mut().zip(&self.components).rev() {
            *slot = (idx % n as usize) as u64;
            idx /= n as usize;
        }
        GroupElement::new(coords)
    }

    /// All elements in mixed-radix order.
    pub fn elements(&self, cap: u64) -> Result<Vec<GroupElement>> {
        check_cap("group order", self.order(), cap)?;
        Ok((0..self.order() as usize).map(|i| self.element_at(i)).collect())
    }

    pub fn nonzero_elements(&self, cap: u64) -> Result<Vec<GroupElement>> {
        let mut all = self.elements(cap)?;
        all.remove(0);
        Ok(all)
    }

    /// `H_k = { g : ord(g) | k }`.
    pub fn subgroup_h(&self, k: u64, cap: u64) -> Result<Vec<GroupElement>> {
        if k == 0 {
            return Err(Error::Precondition("subgroup_h needs k >= 1".into()));
        }
        Ok(self
            .elements(cap)?
            .into_iter()
            .filter(|g| k % self.order_of(g) == 0)
            .collect())
    }

    /// The cyclic subgroup generated by `g`, in generation order starting at 0.
    pub fn cyclic_subgroup(&self, g: &GroupElement) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        let mut cur = g.clone();
        while !self.is_zero(&cur) {
            out.push(cur.clone());
            cur = self.add_unchecked(&cur, g);
        }
        out
    }

    /// The projection `H_ℓ → H_ℓ / H_{ℓ/p} ≅ C_p` used when amalgamating
    /// order-`ℓ` terms.
    pub fn quotient_to_cp(&self, ell: u64, p: u64) -> Result<QuotientMap> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if ell == 0 || ell % p != 0 {
            return Err(Error::Precondition(format!("{p} does not divide {ell}")));
        }
        if self.exponent() % ell != 0 {
            return Err(Error::Precondition(format!(
                "{ell} does not divide exp(G) = {}",
                self.exponent()
            )));
        }
        let exps = self.prime_exponents(p);
        let a1 = exps.first().copied().unwrap_or(0);
        let a2 = exps.get(1).copied().unwrap_or(0);
        let a = arith::valuation(ell, p);
        if a1 <= a2 || a < a2 + 1 {
            return Err(Error::Precondition(format!(
                "H_{ell}/H_{} is not cyclic of order {p}",
                ell / p
            )));
        }
        let component = self
            .component_info()
            .iter()
            .position(|c| c.prime == p)
            .expect("p divides |G|");
        Ok(QuotientMap {
            group: self.clone(),
            ell,
            p,
            component,
            scale: p.pow(a1 - a),
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "1");
        }
        for (i, n) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.components.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let orders = Vec::<u64>::deserialize(d)?;
        GroupSpec::from_cyclic(&orders).map_err(serde::de::Error::custom)
    }
}

/// `Q : H_ℓ → C_p`, reading the coordinate on the largest `p`-component.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    group: GroupSpec,
    ell: u64,
    p: u64,
    component: usize,
    scale: u64,
}

impl QuotientMap {
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Errors if `g` is not in `H_ℓ`.
    pub fn apply(&self, g: &GroupElement) -> Result<u64> {
        self.group.check(g)?;
        if self.ell % self.group.order_of(g) != 0 {
            return Err(Error::Precondition(format!("{g} is not in H_{}", self.ell)));
        }
        Ok((g.coords[self.component] / self.scale) % self.p)
    }

    /// All of `H_ℓ` paired with its image.
    pub fn table(&self, cap: u64) -> Result<Vec<(GroupElement, u64)>> {
        self.group
            .subgroup_h(self.ell, cap)?
            .into_iter()
            .map(|g| {
                let q = self.apply(&g)?;
                Ok((g, q))
            })
            .collect()
    }
}

/// Every abelian group of order `n`, one per isomorphism class.
pub fn abelian_groups_of_order(n: u64) -> Vec<GroupSpec> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut groups = vec![GroupSpec::trivial()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for g in &groups {
            for part in partitions(e, e) {
                let orders: Vec<u64> = part.iter().map(|&k| p.pow(k)).collect();
                next.push(g.direct_sum(&GroupSpec::from_prime_powers(&orders).unwrap()));
            }
        }
        groups = next;
    }
    groups
}

/// Dense lookup tables for a group small enough to enumerate. All hot
/// search loops work on linear indices through this.
#[derive(Debug, Clone)]
pub struct GroupTable {
    spec: GroupSpec,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    orders: Vec<u64>,
}

impl GroupTable {
    pub fn new(spec: &GroupSpec, cap: u64) -> Result<Self> {
        let elements = spec.elements(cap)?;
        let size = elements.len();
        let mut add = vec![0u32; size * size];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate().skip(i) {
                let s = spec.index_of(&spec.add_unchecked(a, b)) as u32;
                add[i * size + j] = s;
                add[j * size + i] = s;
            }
        }
        let neg = elements
            .iter()
            .map(|g| spec.index_of(&spec.neg_unchecked(g)) as u32)
            .collect();
        let orders = elements.iter().map(|g| spec.order_of(g)).collect();
        Ok(GroupTable {
            spec: spec.clone(),
            size,
            add,
            neg,
            orders,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    /// `m·a` by repeated addition.
    pub fn mul(&self, m: u64, a: usize) -> usize {
        (0..m % self.orders[a]).fold(0, |acc, _| self.add(acc, a))
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        self.spec.element_at(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(c: &[u64]) -> GroupElement {
        GroupElement::new(c.to_vec())
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_group("4,3").unwrap().components(), &[4, 3]);
        assert_eq!(parse_group("6").unwrap().components(), &[2, 3]);
        assert!(parse_group("1").unwrap().is_trivial());
        assert_eq!(parse_group("6").unwrap(), parse_group("2,3").unwrap());
        assert_eq!(parse_group(" 2, 4 ").unwrap().components(), &[4, 2]);
        assert_eq!(parse_group("12,2").unwrap().components(), &[4, 2, 3]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_group("a"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("0"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("-3"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("2,,3"), Err(Error::Parse(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let g = parse_group("4,3").unwrap();
        assert_eq!(g.add(&el(&[1, 2]), &el(&[3, 2])).unwrap(), el(&[0, 1]));
        assert_eq!(g.neg(&el(&[0, 0])).unwrap(), el(&[0, 0]));
        assert_eq!(g.smul(5, &el(&[1, 0])).unwrap(), el(&[1, 0]));
        assert_eq!(g.smul(-1, &el(&[1, 1])).unwrap(), el(&[3, 2]));
        assert_eq!(g.add(&el(&[1]), &el(&[1, 0])), Err(Error::MismatchedGroups));
        assert!(matches!(
            g.add(&el(&[4, 0]), &el(&[1, 0])),
            Err(Error::InvalidElement(_))
        ));
    }

    #[test]
    fn order_examples() {
        let g = parse_group("4,3").unwrap();
        assert_eq!(g.order_of(&el(&[2, 0])), 2);
        assert_eq!(g.order_of(&el(&[1, 1])), 12);
        assert_eq!(g.order_of(&el(&[0, 0])), 1);
        assert_eq!(g.exponent(), 12);
        assert_eq!(g.order(), 12);
        assert_eq!(parse_group("4,2,2,3").unwrap().exponent(), 12);
        assert_eq!(GroupSpec::trivial().exponent(), 1);
    }

    #[test]
    fn enumeration() {
        let c2 = parse_group("2").unwrap();
        assert_eq!(c2.elements(64).unwrap(), vec![el(&[0]), el(&[1])]);
        assert_eq!(
            parse_group("4,3").unwrap().nonzero_elements(64).unwrap().len(),
            11
        );
        assert!(GroupSpec::trivial().nonzero_elements(64).unwrap().is_empty());
        assert!(matches!(
            parse_group("9,9").unwrap().elements(64),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn rank_round_trip() {
        let g = parse_group("4,2,3").unwrap();
        for i in 0..g.order() as usize {
            assert_eq!(g.index_of(&g.element_at(i)), i);
        }
        // Linear order agrees with coordinate-lexicographic order.
        let all = g.elements(64).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn subgroup_h_examples() {
        let g = parse_group("4,3").unwrap();
        assert_eq!(g.subgroup_h(2, 64).unwrap(), vec![el(&[0, 0]), el(&[2, 0])]);
        assert_eq!(g.subgroup_h(12, 64).unwrap().len(), 12);
        let h6 = g.subgroup_h(6, 64).unwrap();
        assert_eq!(h6.len(), 6);
        for e in [[0, 0], [2, 0], [0, 1], [0, 2], [2, 1], [2, 2]] {
            assert!(h6.contains(&el(&e)));
        }
    }

    #[test]
    fn quotient_examples() {
        let c4 = parse_group("4").unwrap();
        let q = c4.quotient_to_cp(4, 2).unwrap();
        assert_eq!(q.apply(&el(&[2])).unwrap(), 0);
        assert_eq!(q.apply(&el(&[1])).unwrap(), 1);
        assert_eq!(q.apply(&el(&[0])).unwrap(), 0);

        let g = parse_group("4,3").unwrap();
        let q = g.quotient_to_cp(12, 2).unwrap();
        let kernel: Vec<_> = q
            .table(64)
            .unwrap()
            .into_iter()
            .filter(|(_, v)| *v == 0)
            .map(|(e, _)| e)
            .collect();
        assert_eq!(kernel, g.subgroup_h(6, 64).unwrap());

        assert!(parse_group("2,2").unwrap().quotient_to_cp(2, 2).is_err());
        assert!(c4.quotient_to_cp(8, 2).is_err());
        assert!(c4.quotient_to_cp(4, 4).is_err());
    }

    #[test]
    fn quotient_non_top_level() {
        // C8 ⊕ C2, ℓ = 4: H_4/H_2 is cyclic of order 2.
        let g = parse_group("8,2").unwrap();
        let q = g.quotient_to_cp(4, 2).unwrap();
        let table = q.table(64).unwrap();
        let kernel: Vec<_> = table
            .iter()
            .filter(|(_, v)| *v == 0)
            .map(|(e, _)| e.clone())
            .collect();
        assert_eq!(kernel, g.subgroup_h(2, 64).unwrap());
        assert_eq!(table.len(), 2 * kernel.len());
    }

    #[test]
    fn groups_of_order() {
        assert_eq!(abelian_groups_of_order(1), vec![GroupSpec::trivial()]);
        assert_eq!(abelian_groups_of_order(16).len(), 5);
        assert_eq!(abelian_groups_of_order(12).len(), 2);
        assert_eq!(abelian_groups_of_order(72).len(), 6);
        for g in abelian_groups_of_order(36) {
            assert_eq!(g.order(), 36);
        }
    }

    #[test]
    fn table_agrees_with_spec() {
        let g = parse_group("4,2,3").unwrap();
        let t = GroupTable::new(&g, 64).unwrap();
        for i in 0..t.size() {
            for j in 0..t.size() {
                let s = g.add(&g.element_at(i), &g.element_at(j)).unwrap();
                assert_eq!(t.add(i, j), g.index_of(&s));
            }
            assert_eq!(t.add(i, t.neg(i)), 0);
            assert_eq!(t.mul(t.order(i), i), 0);
        }
    }
}
