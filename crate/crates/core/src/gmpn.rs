//! The infinite family `G(m,p,n)` of monomial reflection groups.
//!
//! An element `[a_1,…,a_n|σ]` acts on `(ℤ/m) × [n]` by `(b,k) ↦ (b + a_k, σ(k))`,
//! equivalently as the monomial matrix sending `v_k` to `ζ_m^{a_k} v_{σ(k)}`.
//! Membership in `G(m,p,n)` requires `p | Σ a_k`.
//!
//! Elements are enumerated in lexicographic order on `(a, σ)` and addressed by
//! that rank, which is computed arithmetically (no hashing).

use std::fmt;
use std::sync::OnceLock;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{self, ReflectionGroup};
use crate::poset::Partition;

/// Largest `n` the index arithmetic supports.
pub const MAX_N: usize = 20;

/// `[a_1,…,a_n | σ]` with residues in `0..m` and `σ` stored zero-based in
/// one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GmpnElement {
    pub m: u32,
    pub a: Vec<u32>,
    pub sigma: Vec<usize>,
}

impl GmpnElement {
    pub fn new(m: u32, a: Vec<u32>, sigma: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter("m must be positive".into()));
        }
        if a.len() != sigma.len() {
            return Err(Error::Parameter(format!(
                "a has length {} but sigma has length {}",
                a.len(),
                sigma.len()
            )));
        }
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || seen[s] {
                return Err(Error::Parameter(format!("{sigma:?} is not a permutation")));
            }
            seen[s] = true;
        }
        let a = a.into_iter().map(|x| x % m).collect();
        Ok(Self { m, a, sigma })
    }

    pub fn identity(m: u32, n: usize) -> Self {
        Self {
            m,
            a: vec![0; n],
            sigma: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_identity(&self) -> bool {
        self.a.iter().all(|&x| x == 0) && self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// Image of `(b, k)` (zero-based `k`).
    pub fn apply(&self, b: u32, k: usize) -> (u32, usize) {
        ((b + self.a[k]) % self.m, self.sigma[k])
    }

    /// Function composition `self ∘ other`: `other` acts first.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.m != other.m || self.n() != other.n() {
            return Err(Error::Parameter(format!(
                "cannot multiply elements of different groups (m={}, n={} vs m={}, n={})",
                self.m,
                self.n(),
                other.m,
                other.n()
            )));
        }
        let n = self.n();
        let mut a = vec![0; n];
        let mut sigma = vec![0; n];
        for k in 0..n {
            let mid = other.sigma[k];
            a[k] = (other.a[k] + self.a[mid]) % self.m;
            sigma[k] = self.sigma[mid];
        }
        Ok(Self { m: self.m, a, sigma })
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut a = vec![0; n];
        let mut sigma = vec![0; n];
        for k in 0..n {
            let image = self.sigma[k];
            sigma[image] = k;
            a[image] = (self.m - self.a[k]) % self.m;
        }
        Self { m: self.m, a, sigma }
    }

    /// Sum of the residues, mod `m`.
    pub fn residue_sum(&self) -> u32 {
        self.a.iter().fold(0, |acc, &x| (acc + x) % self.m)
    }

    /// `t_0`: the number of cycles of `σ` whose labels sum to 0 mod `m`.
    pub fn cycle_sign_count(&self) -> usize {
        let sigma: Vec<u8> = self.sigma.iter().map(|&s| s as u8).collect();
        cycle_sign_count_raw(self.m, &self.a, &sigma)
    }

    /// Codimension of the fixed space of the monomial matrix.
    ///
    /// A cycle of `σ` contributes a fixed direction exactly when the product
    /// of its roots of unity is 1, i.e. when its sign is 0.
    pub fn fixed_space_codim(&self) -> usize {
        self.n() - self.cycle_sign_count()
    }

    /// Parses `[a1,...,an|s1,...,sn]` with `σ` one-based.
    pub fn parse(s: &str, m: u32) -> Result<Self> {
        let bad = || {
            Error::Parameter(format!(
                "cannot parse element {s:?}: expected `[a1,...,an|s1,...,sn]`"
            ))
        };
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (left, right) = inner.split_once('|').ok_or_else(bad)?;
        let parse_list = |part: &str| -> Result<Vec<usize>> {
            if part.trim().is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let a: Vec<u32> = parse_list(left)?.into_iter().map(|x| x as u32).collect();
        let sigma = parse_list(right)?
            .into_iter()
            .map(|x| x.checked_sub(1).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, a, sigma)
    }
}

impl fmt::Display for GmpnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "|")?;
        for (i, s) in self.sigma.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s + 1)?;
        }
        write!(f, "]")
    }
}

fn cycle_sign_count_raw(m: u32, a: &[u32], sigma: &[u8]) -> usize {
    let n = sigma.len();
    let mut seen = [false; MAX_N];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut sign = 0u32;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            sign = (sign + a[k]) % m;
            k = sigma[k] as usize;
        }
        if sign == 0 {
            count += 1;
        }
    }
    count
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Lexicographic rank of a permutation of `0..n`.
fn perm_rank(sigma: &[u8], fact: &[usize]) -> usize {
    let n = sigma.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = sigma[i + 1..].iter().filter(|&&s| s < sigma[i]).count();
        rank += smaller * fact[n - 1 - i];
    }
    rank
}

/// Advances to the lexicographically next permutation; false after the last.
fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// An enumerated `G(m,p,n)`.
///
/// Immutable after construction; the Cayley table of right multiplication by
/// reflections and the BFS length table are built lazily, once.
pub struct GmpnGroup {
    m: u32,
    p: u32,
    n: usize,
    order: usize,
    /// `k!` for `k in 0..=n`.
    fact: Vec<usize>,
    a_data: Vec<u32>,
    sigma_data: Vec<u8>,
    inverses: Vec<u32>,
    codims: Vec<u8>,
    reflections: Vec<usize>,
    reflection_table: OnceLock<Vec<u32>>,
    bfs_lengths: OnceLock<Vec<usize>>,
}

impl GmpnGroup {
    /// Enumerates `G(m,p,n)` in canonical order.
    pub fn new(m: u32, p: u32, n: usize, budget: &Budget) -> Result<Self> {
        if m == 0 || p == 0 || n == 0 {
            return Err(Error::Parameter(format!(
                "g({m},{p},{n}): parameters must be positive"
            )));
        }
        if m % p != 0 {
            return Err(Error::Parameter(format!(
                "g({m},{p},{n}): p = {p} does not divide m = {m}"
            )));
        }
        if n > MAX_N {
            return Err(Error::Parameter(format!("g({m},{p},{n}): n > {MAX_N} is unsupported")));
        }
        let count = (m as u128)
            .checked_pow(n as u32)
            .and_then(|x| x.checked_mul(factorial(n)))
            .map(|x| x / p as u128)
            .unwrap_or(u128::MAX);
        budget.check_elements(&format!("g({m},{p},{n})"), count)?;
        let order = count as usize;
        let fact: Vec<usize> = (0..=n).map(|k| factorial(k) as usize).collect();

        let mut a_data = Vec::with_capacity(order * n);
        let mut sigma_data = Vec::with_capacity(order * n);
        let mut prefix = vec![0u32; n - 1];
        'outer: loop {
            let prefix_sum = prefix.iter().fold(0, |acc, &x| (acc + x) % m);
            let first_last = (p - prefix_sum % p) % p;
            let mut last = first_last;
            while last < m {
                let mut sigma: Vec<u8> = (0..n as u8).collect();
                loop {
                    a_data.extend_from_slice(&prefix);
                    a_data.push(last);
                    sigma_data.extend_from_slice(&sigma);
                    if !next_permutation(&mut sigma) {
                        break;
                    }
                }
                last += p;
            }
            budget.check_time("group enumeration")?;
            // odometer over the free coordinates
            let mut i = n - 1;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                prefix[i] += 1;
                if prefix[i] < m {
                    break;
                }
                prefix[i] = 0;
            }
        }
        debug_assert_eq!(a_data.len(), order * n);

        let mut group = Self {
            m,
            p,
            n,
            order,
            fact,
            a_data,
            sigma_data,
            inverses: Vec::new(),
            codims: Vec::new(),
            reflections: Vec::new(),
            reflection_table: OnceLock::new(),
            bfs_lengths: OnceLock::new(),
        };
        group.inverses = (0..order)
            .map(|u| group.index_of(&group.element(u).inverse()).unwrap() as u32)
            .collect();
        group.codims = (0..order)
            .map(|u| (n - cycle_sign_count_raw(m, group.a_of(u), group.sigma_of(u))) as u8)
            .collect();
        group.reflections = group
            .reflection_elements()
            .iter()
            .map(|t| group.index_of(t).unwrap())
            .collect();
        group.reflections.sort_unstable();
        Ok(group)
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> usize {
        self.n
    }

    fn a_of(&self, u: usize) -> &[u32] {
        &self.a_data[u * self.n..(u + 1) * self.n]
    }

    fn sigma_of(&self, u: usize) -> &[u8] {
        &self.sigma_data[u * self.n..(u + 1) * self.n]
    }

    pub fn element(&self, u: usize) -> GmpnElement {
        GmpnElement {
            m: self.m,
            a: self.a_of(u).to_vec(),
            sigma: self.sigma_of(u).iter().map(|&s| s as usize).collect(),
        }
    }

    pub fn contains(&self, w: &GmpnElement) -> bool {
        w.m == self.m && w.n() == self.n && w.residue_sum() % self.p == 0
    }

    fn raw_index(&self, a: &[u32], sigma: &[u8]) -> usize {
        let n = self.n;
        let mut arank = 0usize;
        for &x in &a[..n - 1] {
            arank = arank * self.m as usize + x as usize;
        }
        arank = arank * (self.m / self.p) as usize + (a[n - 1] / self.p) as usize;
        arank * self.fact[n] + perm_rank(sigma, &self.fact)
    }

    /// Canonical index of `w`, or `None` if `w` is not in the group.
    pub fn index_of(&self, w: &GmpnElement) -> Option<usize> {
        if !self.contains(w) {
            return None;
        }
        let sigma: Vec<u8> = w.sigma.iter().map(|&s| s as u8).collect();
        Some(self.raw_index(&w.a, &sigma))
    }

    pub fn parse_element(&self, s: &str) -> Result<GmpnElement> {
        let w = GmpnElement::parse(s, self.m)?;
        if !self.contains(&w) {
            return Err(Error::Parameter(format!("{s} is not an element of {}", self.name())));
        }
        Ok(w)
    }

    /// The reflections as elements: type (1) `σ = (i j)`, `a_i = -a_j`, and
    /// type (2) `σ = id` with a single nonzero `a_i` divisible by `p`.
    pub fn reflection_elements(&self) -> Vec<GmpnElement> {
        let (m, n) = (self.m, self.n);
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for c in 0..m {
                    let mut t = GmpnElement::identity(m, n);
                    t.sigma.swap(i, j);
                    t.a[i] = c;
                    t.a[j] = (m - c) % m;
                    out.push(t);
                }
            }
        }
        for i in 0..n {
            for c in (self.p..m).step_by(self.p as usize) {
                let mut t = GmpnElement::identity(m, n);
                t.a[i] = c;
                out.push(t);
            }
        }
        out.sort();
        out
    }

    /// Expected reflection count `m·n(n−1)/2 + n·(m/p − 1)`.
    pub fn expected_reflection_count(&self) -> usize {
        let (m, n) = (self.m as usize, self.n);
        m * n * (n - 1) / 2 + n * (m / self.p as usize - 1)
    }

    pub fn cycle_sign_count(&self, u: usize) -> usize {
        cycle_sign_count_raw(self.m, self.a_of(u), self.sigma_of(u))
    }

    /// Reflection lengths from breadth-first layering, regardless of `p`.
    pub fn bfs_reflection_lengths(&self) -> &[usize] {
        self.bfs_lengths.get_or_init(|| group::bfs_lengths(self))
    }

    fn reflection_table(&self) -> &[u32] {
        self.reflection_table.get_or_init(|| {
            let mut table = Vec::with_capacity(self.order * self.reflections.len());
            for u in 0..self.order {
                for &t in &self.reflections {
                    table.push(self.multiply_raw(u, t) as u32);
                }
            }
            table
        })
    }

    fn multiply_raw(&self, u: usize, v: usize) -> usize {
        let n = self.n;
        let (ua, us) = (self.a_of(u), self.sigma_of(u));
        let (va, vs) = (self.a_of(v), self.sigma_of(v));
        let mut a = [0u32; MAX_N];
        let mut s = [0u8; MAX_N];
        for k in 0..n {
            let mid = vs[k] as usize;
            a[k] = (va[k] + ua[mid]) % self.m;
            s[k] = us[mid];
        }
        self.raw_index(&a[..n], &s[..n])
    }

    pub fn conjugacy_orbits(&self, subset: &[usize]) -> Result<Partition> {
        group::conjugacy_orbits(self, subset)
    }
}

impl ReflectionGroup for GmpnGroup {
    fn name(&self) -> String {
        format!("g({},{},{})", self.m, self.p, self.n)
    }

    fn order(&self) -> usize {
        self.order
    }

    fn dimension(&self) -> usize {
        self.n
    }

    fn identity(&self) -> usize {
        0
    }

    fn multiply(&self, u: usize, v: usize) -> usize {
        self.multiply_raw(u, v)
    }

    fn inverse(&self, u: usize) -> usize {
        self.inverses[u] as usize
    }

    fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    fn codim(&self, u: usize) -> usize {
        self.codims[u] as usize
    }

    /// `n − t_0(w)` when `p = 1`, Cayley-graph distance otherwise.
    fn reflection_length(&self, u: usize) -> usize {
        if self.p == 1 {
            self.codims[u] as usize
        } else {
            self.bfs_reflection_lengths()[u]
        }
    }

    fn label(&self, u: usize) -> String {
        self.element(u).to_string()
    }

    fn mul_reflection(&self, u: usize, k: usize) -> usize {
        self.reflection_table()[u * self.reflections.len() + k] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: u32, p: u32, n: usize) -> GmpnGroup {
        GmpnGroup::new(m, p, n, &Budget::default()).unwrap()
    }

    fn el(s: &str, m: u32) -> GmpnElement {
        GmpnElement::parse(s, m).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(g(1, 1, 3).order(), 6);
        assert_eq!(g(4, 2, 2).order(), 16);
        assert_eq!(g(10, 5, 3).order(), 1200);
        assert_eq!(g(2, 2, 4).order(), 192);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(GmpnGroup::new(4, 3, 2, &Budget::default()), Err(Error::Parameter(_))));
        assert!(matches!(GmpnGroup::new(0, 1, 2, &Budget::default()), Err(Error::Parameter(_))));
        assert!(matches!(GmpnGroup::new(2, 1, 4, &Budget::new(100)), Err(Error::Resource(_))));
    }

    #[test]
    fn canonical_order_is_lexicographic_and_indexed() {
        let grp = g(4, 2, 3);
        let elems: Vec<GmpnElement> = (0..grp.order()).map(|u| grp.element(u)).collect();
        for w in elems.windows(2) {
            assert!((&w[0].a, &w[0].sigma) < (&w[1].a, &w[1].sigma));
        }
        for (u, w) in elems.iter().enumerate() {
            assert_eq!(grp.index_of(w), Some(u));
            assert_eq!(w.residue_sum() % 2, 0);
        }
        assert!(grp.element(0).is_identity());
    }

    #[test]
    fn multiply_examples() {
        let w = el("[1,1|2,1]", 2);
        assert_eq!(GmpnElement::identity(2, 2).multiply(&w).unwrap(), w);
        assert_eq!(
            el("[1,0|1,2]", 2).multiply(&el("[0,1|1,2]", 2)).unwrap(),
            el("[1,1|1,2]", 2)
        );
        let inv = w.inverse();
        assert_eq!(inv, el("[1,1|2,1]", 2));
        assert!(w.multiply(&inv).unwrap().is_identity());
        assert!(matches!(w.multiply(&el("[1,1|2,1]", 4)), Err(Error::Parameter(_))));
    }

    #[test]
    fn multiplication_matches_permutation_action() {
        let grp = g(3, 1, 3);
        for u in (0..grp.order()).step_by(7) {
            for v in (0..grp.order()).step_by(5) {
                let (wu, wv) = (grp.element(u), grp.element(v));
                let prod = grp.element(grp.multiply(u, v));
                for b in 0..3 {
                    for k in 0..3 {
                        let (b1, k1) = wv.apply(b, k);
                        assert_eq!(prod.apply(b, k), wu.apply(b1, k1));
                    }
                }
            }
        }
    }

    #[test]
    fn element_text_round_trip() {
        let w = el("[1,0|2,1]", 3);
        assert_eq!(w.to_string(), "[1,0|2,1]");
        assert_eq!(w.sigma, vec![1, 0]);
        assert!(GmpnElement::parse("[1,0|2,2]", 3).is_err());
        assert!(GmpnElement::parse("1,0|2,1", 3).is_err());
        assert!(GmpnElement::parse("[1|2,1]", 3).is_err());
    }

    #[test]
    fn reflection_examples() {
        let grp = g(2, 1, 2);
        let names: Vec<String> = grp.reflection_elements().iter().map(|t| t.to_string()).collect();
        assert_eq!(names, ["[0,0|2,1]", "[0,1|1,2]", "[1,0|1,2]", "[1,1|2,1]"]);
        assert_eq!(g(4, 2, 2).reflections().len(), 6);
        assert_eq!(g(1, 1, 3).reflections().len(), 3);
        for (m, p, n) in [(4, 2, 3), (6, 3, 2), (3, 3, 3), (5, 1, 2)] {
            let grp = g(m, p, n);
            assert_eq!(grp.reflections().len(), grp.expected_reflection_count());
        }
    }

    #[test]
    fn cycle_sign_examples() {
        assert_eq!(GmpnElement::identity(3, 4).cycle_sign_count(), 4);
        assert_eq!(el("[1,3|2,1]", 4).cycle_sign_count(), 1);
        assert_eq!(el("[2,0|1,2]", 4).cycle_sign_count(), 1);
    }

    #[test]
    fn length_and_codim_examples() {
        let grp = g(2, 1, 2);
        let w = grp.index_of(&el("[1,1|1,2]", 2)).unwrap();
        assert_eq!(grp.reflection_length(w), 2);
        assert_eq!(grp.bfs_reflection_lengths()[w], 2);
        assert_eq!(grp.reflection_length(0), 0);
        for &t in grp.reflections() {
            assert_eq!(grp.reflection_length(t), 1);
        }
        assert_eq!(el("[0,0|2,1]", 2).fixed_space_codim(), 1);
        assert_eq!(GmpnElement::identity(2, 2).fixed_space_codim(), 0);
    }
}
