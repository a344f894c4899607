//! The interface shared by the two group backends, plus the algorithms that
//! only need that interface: Cayley-graph reflection lengths and conjugacy
//! orbits.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::budget::Budget;
use crate::coxeter::{CoxeterGroup, CoxeterType};
use crate::error::{Error, Result};
use crate::gmpn::GmpnGroup;
use crate::poset::Partition;

/// A finite reflection group whose elements have been enumerated and are
/// addressed by dense index.
pub trait ReflectionGroup: Send + Sync {
    fn name(&self) -> String;
    fn order(&self) -> usize;
    /// Dimension of the space the group acts on.
    fn dimension(&self) -> usize;
    fn identity(&self) -> usize;
    fn multiply(&self, u: usize, v: usize) -> usize;
    fn inverse(&self, u: usize) -> usize;
    /// Indices of the reflections, ascending.
    fn reflections(&self) -> &[usize];
    /// Codimension of the fixed space of `u`.
    fn codim(&self, u: usize) -> usize;
    /// Reflection length of `u`.
    fn reflection_length(&self, u: usize) -> usize;
    fn label(&self, u: usize) -> String;

    /// `u * reflections()[k]`.
    fn mul_reflection(&self, u: usize, k: usize) -> usize {
        self.multiply(u, self.reflections()[k])
    }

    fn labels(&self) -> Vec<String> {
        (0..self.order()).map(|u| self.label(u)).collect()
    }
}

/// Breadth-first layering of the Cayley graph generated by the reflections.
/// Entry `u` is the reflection length of element `u`.
pub fn bfs_lengths<G: ReflectionGroup + ?Sized>(g: &G) -> Vec<usize> {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    dist[g.identity()] = 0;
    queue.push_back(g.identity());
    let nrefl = g.reflections().len();
    while let Some(u) = queue.pop_front() {
        for k in 0..nrefl {
            let v = g.mul_reflection(u, k);
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    debug_assert!(dist.iter().all(|&d| d != usize::MAX), "reflections do not generate");
    dist
}

/// `g u g^{-1}`.
pub fn conjugate<G: ReflectionGroup + ?Sized>(g: &G, by: usize, u: usize) -> usize {
    g.multiply(g.multiply(by, u), g.inverse(by))
}

/// Partitions `subset` into conjugacy orbits.
///
/// Reflections generate the group, so closure under conjugation by
/// reflections is closure under the whole group. Orbits are listed by
/// smallest member and each orbit is sorted.
pub fn conjugacy_orbits<G: ReflectionGroup + ?Sized>(g: &G, subset: &[usize]) -> Result<Partition> {
    let n = g.order();
    let mut in_subset = vec![false; n];
    for &u in subset {
        if u >= n {
            return Err(Error::Parameter(format!("element index {u} out of range")));
        }
        in_subset[u] = true;
    }
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    let mut sorted: Vec<usize> = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &start in &sorted {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &t in g.reflections() {
                let v = conjugate(g, t, u);
                if !in_subset[v] {
                    return Err(Error::Domain(format!(
                        "subset is not closed under conjugation: {} conjugates to {}",
                        g.label(u),
                        g.label(v)
                    )));
                }
                if !seen[v] {
                    seen[v] = true;
                    orbit.push(v);
                    queue.push_back(v);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Partition::new(orbits, n)
}

/// The conjugacy classes of the whole group.
pub fn conjugacy_classes<G: ReflectionGroup + ?Sized>(g: &G) -> Partition {
    let all: Vec<usize> = (0..g.order()).collect();
    conjugacy_orbits(g, &all).expect("the whole group is closed under conjugation")
}

/// A parsed group spec string: `g(m,p,n)` or one of `h3`, `f4`, `h4`, `e6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Gmpn { m: u32, p: u32, n: usize },
    Coxeter(CoxeterType),
}

pub const GROUP_SPEC_GRAMMAR: &str =
    "expected `g(m,p,n)` with p dividing m (e.g. `g(4,2,2)`), or one of `h3`, `f4`, `h4`, `e6`";

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || Error::Parameter(format!("cannot parse group spec {s:?}: {GROUP_SPEC_GRAMMAR}"));
        if let Some(args) = s.strip_prefix("g(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let m: u32 = parts[0].parse().map_err(|_| bad())?;
            let p: u32 = parts[1].parse().map_err(|_| bad())?;
            let n: usize = parts[2].parse().map_err(|_| bad())?;
            if m == 0 || p == 0 || n == 0 {
                return Err(bad());
            }
            if m % p != 0 {
                return Err(Error::Parameter(format!(
                    "in g({m},{p},{n}), p = {p} does not divide m = {m}: {GROUP_SPEC_GRAMMAR}"
                )));
            }
            return Ok(GroupSpec::Gmpn { m, p, n });
        }
        match s.parse::<CoxeterType>() {
            Ok(t) => Ok(GroupSpec::Coxeter(t)),
            Err(e @ Error::NotSupported(_)) => Err(e),
            Err(_) => Err(bad()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Gmpn { m, p, n } => write!(f, "g({m},{p},{n})"),
            GroupSpec::Coxeter(t) => write!(f, "{t}"),
        }
    }
}

/// Either backend, behind one [`ReflectionGroup`] implementation.
pub enum AnyGroup {
    Gmpn(GmpnGroup),
    Coxeter(CoxeterGroup),
}

impl AnyGroup {
    pub fn build(spec: GroupSpec, budget: &Budget) -> Result<Self> {
        Ok(match spec {
            GroupSpec::Gmpn { m, p, n } => AnyGroup::Gmpn(GmpnGroup::new(m, p, n, budget)?),
            GroupSpec::Coxeter(t) => AnyGroup::Coxeter(CoxeterGroup::build(t, budget)?),
        })
    }

    fn inner(&self) -> &dyn ReflectionGroup {
        match self {
            AnyGroup::Gmpn(g) => g,
            AnyGroup::Coxeter(g) => g,
        }
    }
}

impl ReflectionGroup for AnyGroup {
    fn name(&self) -> String {
        self.inner().name()
    }
    fn order(&self) -> usize {
        self.inner().order()
    }
    fn dimension(&self) -> usize {
        self.inner().dimension()
    }
    fn identity(&self) -> usize {
        self.inner().identity()
    }
    fn multiply(&self, u: usize, v: usize) -> usize {
        self.inner().multiply(u, v)
    }
    fn inverse(&self, u: usize) -> usize {
        self.inner().inverse(u)
    }
    fn reflections(&self) -> &[usize] {
        self.inner().reflections()
    }
    fn codim(&self, u: usize) -> usize {
        self.inner().codim(u)
    }
    fn reflection_length(&self, u: usize) -> usize {
        self.inner().reflection_length(u)
    }
    fn label(&self, u: usize) -> String {
        self.inner().label(u)
    }
    fn mul_reflection(&self, u: usize, k: usize) -> usize {
        self.inner().mul_reflection(u, k)
    }
}
