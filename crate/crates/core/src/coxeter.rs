//! Exceptional finite Coxeter groups realized as permutations of their root
//! systems.
//!
//! Roots are kept in simple-root coordinates. A simple reflection acts by
//! `s_i(v) = v − ⟨v, α_i^∨⟩ α_i`, where the pairing comes from the Cartan
//! matrix; for the non-crystallographic types the entries live in `ℤ[φ]`.
//! A group element is determined by where it sends the simple roots, so
//! products only ever look at `rank` entries of the permutations.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num::{One, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{self, ReflectionGroup};
use crate::quadratic::{self, QuadraticNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    H3,
    F4,
    H4,
    E6,
}

impl CoxeterType {
    pub const ALL: [CoxeterType; 4] = [CoxeterType::H3, CoxeterType::F4, CoxeterType::H4, CoxeterType::E6];

    pub fn rank(self) -> usize {
        match self {
            CoxeterType::H3 => 3,
            CoxeterType::F4 | CoxeterType::H4 => 4,
            CoxeterType::E6 => 6,
        }
    }

    pub fn order(self) -> usize {
        match self {
            CoxeterType::H3 => 120,
            CoxeterType::F4 => 1152,
            CoxeterType::H4 => 14400,
            CoxeterType::E6 => 51840,
        }
    }

    pub fn root_count(self) -> usize {
        match self {
            CoxeterType::H3 => 30,
            CoxeterType::F4 => 48,
            CoxeterType::H4 => 120,
            CoxeterType::E6 => 72,
        }
    }

    /// `cartan()[i][j] = ⟨α_j, α_i^∨⟩`.
    fn cartan(self) -> Vec<Vec<QuadraticNumber>> {
        let n = self.rank();
        let mut a = vec![vec![QuadraticNumber::zero(); n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = QuadraticNumber::from_ints(2, 0);
        }
        let minus_one = QuadraticNumber::from_ints(-1, 0);
        let minus_phi = -&QuadraticNumber::golden_ratio();
        let mut bond = |i: usize, j: usize, aij: &QuadraticNumber, aji: &QuadraticNumber| {
            a[i][j] = aij.clone();
            a[j][i] = aji.clone();
        };
        match self {
            CoxeterType::H3 => {
                bond(0, 1, &minus_phi, &minus_phi);
                bond(1, 2, &minus_one, &minus_one);
            }
            CoxeterType::H4 => {
                bond(0, 1, &minus_phi, &minus_phi);
                bond(1, 2, &minus_one, &minus_one);
                bond(2, 3, &minus_one, &minus_one);
            }
            CoxeterType::F4 => {
                bond(0, 1, &minus_one, &minus_one);
                bond(1, 2, &QuadraticNumber::from_ints(-2, 0), &minus_one);
                bond(2, 3, &minus_one, &minus_one);
            }
            CoxeterType::E6 => {
                for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)] {
                    bond(i, j, &minus_one, &minus_one);
                }
            }
        }
        a
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "h3" => Ok(CoxeterType::H3),
            "f4" => Ok(CoxeterType::F4),
            "h4" => Ok(CoxeterType::H4),
            "e6" => Ok(CoxeterType::E6),
            t @ ("e7" | "e8") => Err(Error::NotSupported(format!(
                "{t}: enumerating the full group and its absolute order is beyond desk scale \
                 (E8 alone has about 7e8 elements); supported exceptional types are h3, f4, h4, e6"
            ))),
            other => Err(Error::Parameter(format!("unknown Coxeter type {other:?}"))),
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoxeterType::H3 => "h3",
            CoxeterType::F4 => "f4",
            CoxeterType::H4 => "h4",
            CoxeterType::E6 => "e6",
        };
        f.write_str(s)
    }
}

type Root = Vec<QuadraticNumber>;

/// An exceptional Coxeter group as a permutation group on its roots.
pub struct CoxeterGroup {
    kind: CoxeterType,
    roots: Vec<Root>,
    /// Element `u` occupies `perms[u * nroots..(u + 1) * nroots]`.
    perms: Vec<u16>,
    index: HashMap<u128, u32>,
    words: Vec<Vec<u8>>,
    inverses: Vec<u32>,
    reflections: Vec<usize>,
    codims: Vec<u8>,
    reflection_table: OnceLock<Vec<u32>>,
    lengths: OnceLock<Vec<usize>>,
}

impl CoxeterGroup {
    pub fn build(kind: CoxeterType, budget: &Budget) -> Result<Self> {
        budget.check_elements(&kind.to_string(), kind.order() as u128)?;
        let rank = kind.rank();
        let cartan = kind.cartan();

        let reflect = |i: usize, v: &Root| -> Root {
            let mut pairing = QuadraticNumber::zero();
            for (vj, aij) in v.iter().zip(&cartan[i]) {
                pairing = &pairing + &(vj * aij);
            }
            let mut out = v.clone();
            out[i] = &out[i] - &pairing;
            out
        };

        // root system: orbit of the simple roots
        let mut roots: Vec<Root> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { QuadraticNumber::one() } else { QuadraticNumber::zero() })
                    .collect()
            })
            .collect();
        let mut root_index: HashMap<Root, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut next = 0;
        while next < roots.len() {
            for i in 0..rank {
                let image = reflect(i, &roots[next]);
                if !root_index.contains_key(&image) {
                    root_index.insert(image.clone(), roots.len());
                    roots.push(image);
                }
            }
            next += 1;
            if roots.len() > kind.root_count() {
                return Err(Error::Internal(format!("{kind}: root orbit exceeds {}", kind.root_count())));
            }
        }
        if roots.len() != kind.root_count() {
            return Err(Error::Internal(format!(
                "{kind}: found {} roots, expected {}",
                roots.len(),
                kind.root_count()
            )));
        }
        let nroots = roots.len();
        let simple: Vec<Vec<u16>> = (0..rank)
            .map(|i| roots.iter().map(|r| root_index[&reflect(i, r)] as u16).collect())
            .collect();

        // closure under right multiplication by simple reflections
        let key_of = |perm: &[u16]| -> u128 {
            perm[..rank].iter().fold(0u128, |k, &r| (k << 16) | r as u128)
        };
        let identity: Vec<u16> = (0..nroots as u16).collect();
        let mut perms = identity.clone();
        let mut index = HashMap::from([(key_of(&identity), 0u32)]);
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for (i, s) in simple.iter().enumerate() {
                let cur = &perms[u * nroots..(u + 1) * nroots];
                let prod: Vec<u16> = s.iter().map(|&r| cur[r as usize]).collect();
                let key = key_of(&prod);
                if !index.contains_key(&key) {
                    let v = words.len();
                    index.insert(key, v as u32);
                    let mut word = words[u].clone();
                    word.push(i as u8);
                    words.push(word);
                    perms.extend_from_slice(&prod);
                    queue.push_back(v);
                    if words.len() > kind.order() {
                        return Err(Error::Internal(format!("{kind}: closure exceeds expected order")));
                    }
                }
            }
            if u % 1024 == 0 {
                budget.check_time("Coxeter group enumeration")?;
            }
        }
        let order = words.len();
        if order != kind.order() {
            return Err(Error::Internal(format!(
                "{kind}: closure has {order} elements, expected {}",
                kind.order()
            )));
        }

        let mut group = Self {
            kind,
            roots,
            perms,
            index,
            words,
            inverses: Vec::new(),
            reflections: Vec::new(),
            codims: Vec::new(),
            reflection_table: OnceLock::new(),
            lengths: OnceLock::new(),
        };
        group.inverses = (0..order)
            .map(|u| {
                let p = group.perm(u);
                let mut inv = vec![0u16; nroots];
                for (r, &img) in p.iter().enumerate() {
                    inv[img as usize] = r as u16;
                }
                group.index[&key_of(&inv)]
            })
            .collect();
        let simple_idx: Vec<usize> = (0..rank)
            .map(|i| group.index[&key_of(&simple[i])] as usize)
            .collect();
        let mut refl = vec![false; order];
        for w in 0..order {
            for &s in &simple_idx {
                refl[group::conjugate(&group, w, s)] = true;
            }
        }
        group.reflections = (0..order).filter(|&u| refl[u]).collect();
        group.codims = (0..order)
            .into_par_iter()
            .map(|u| group.exact_codim(u) as u8)
            .collect();
        budget.check_time("Coxeter codimension table")?;
        Ok(group)
    }

    pub fn kind(&self) -> CoxeterType {
        self.kind
    }

    pub fn roots(&self) -> &[Vec<QuadraticNumber>] {
        &self.roots
    }

    /// Number of roots with nonnegative simple-root coordinates.
    pub fn positive_root_count(&self) -> usize {
        self.roots
            .iter()
            .filter(|r| r.iter().all(|c| c.signum() >= 0))
            .count()
    }

    /// The element as a permutation of the root list.
    pub fn perm(&self, u: usize) -> &[u16] {
        let n = self.roots.len();
        &self.perms[u * n..(u + 1) * n]
    }

    /// Matrix of `u` in simple-root coordinates; column `j` is `u(α_j)`.
    pub fn matrix(&self, u: usize) -> Vec<Vec<QuadraticNumber>> {
        let rank = self.kind.rank();
        let p = self.perm(u);
        (0..rank)
            .map(|i| (0..rank).map(|j| self.roots[p[j] as usize][i].clone()).collect())
            .collect()
    }

    /// A reduced word in the simple reflections (zero-based generators).
    pub fn word(&self, u: usize) -> &[u8] {
        &self.words[u]
    }

    /// Index of the longest element (longest reduced word).
    pub fn longest_element(&self) -> usize {
        (0..self.order()).max_by_key(|&u| self.words[u].len()).unwrap()
    }

    /// `rank(M_u − I)` by exact elimination.
    fn exact_codim(&self, u: usize) -> usize {
        let mut m = self.matrix(u);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = &row[i] - &QuadraticNumber::one();
        }
        quadratic::rank(m)
    }

    /// Fixed-space codimension, memoized at construction.
    pub fn coxeter_codim(&self, u: usize) -> usize {
        self.codims[u] as usize
    }

    fn key_of_product(&self, u: usize, v: usize) -> u128 {
        let pu = self.perm(u);
        let pv = self.perm(v);
        pv[..self.kind.rank()]
            .iter()
            .fold(0u128, |k, &r| (k << 16) | pu[r as usize] as u128)
    }

    fn reflection_table(&self) -> &[u32] {
        self.reflection_table.get_or_init(|| {
            (0..self.order())
                .into_par_iter()
                .flat_map_iter(|u| {
                    self.reflections
                        .iter()
                        .map(move |&t| self.multiply(u, t) as u32)
                })
                .collect()
        })
    }
}

impl ReflectionGroup for CoxeterGroup {
    fn name(&self) -> String {
        self.kind.to_string()
    }

    fn order(&self) -> usize {
        self.words.len()
    }

    fn dimension(&self) -> usize {
        self.kind.rank()
    }

    fn identity(&self) -> usize {
        0
    }

    fn multiply(&self, u: usize, v: usize) -> usize {
        self.index[&self.key_of_product(u, v)] as usize
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

    /// Cayley-graph distance, independent of the codimension table.
    fn reflection_length(&self, u: usize) -> usize {
        self.lengths.get_or_init(|| group::bfs_lengths(self))[u]
    }

    fn label(&self, u: usize) -> String {
        if self.words[u].is_empty() {
            return "e".to_string();
        }
        self.words[u].iter().map(|&i| format!("s{}", i + 1)).collect()
    }

    fn mul_reflection(&self, u: usize, k: usize) -> usize {
        self.reflection_table()[u * self.reflections.len() + k] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h3_basics() {
        let g = CoxeterGroup::build(CoxeterType::H3, &Budget::default()).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.reflections().len(), 15);
        assert_eq!(g.positive_root_count(), 15);
        assert_eq!(g.codim(g.identity()), 0);
        for &t in g.reflections() {
            assert_eq!(g.codim(t), 1);
        }
        let w0 = g.longest_element();
        assert_eq!(g.word(w0).len(), 15);
        // the longest element of H3 is −I
        let m = g.matrix(w0);
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j { -1 } else { 0 };
                assert_eq!(*x, QuadraticNumber::from_ints(expect, 0));
            }
        }
        assert_eq!(g.coxeter_codim(w0), 3);
        assert_eq!(g.label(0), "e");
    }

    #[test]
    fn unsupported_types() {
        let err = "e7".parse::<CoxeterType>().unwrap_err();
        assert!(matches!(err, Error::NotSupported(ref s) if s.contains("desk scale")));
        assert!(matches!("E8".parse::<CoxeterType>(), Err(Error::NotSupported(_))));
        assert!(matches!("a3".parse::<CoxeterType>(), Err(Error::Parameter(_))));
    }

    #[test]
    fn budget_refuses_large_groups() {
        assert!(matches!(
            CoxeterGroup::build(CoxeterType::F4, &Budget::new(1000)),
            Err(Error::Resource(_))
        ));
    }
}
