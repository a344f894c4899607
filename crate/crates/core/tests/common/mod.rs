//! Independent oracles: plain enumeration, breadth-first search over
//! explicit elements, and floating-point ranks of explicit matrices.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use num::complex::Complex64;
use rand::Rng;

use reflection_sperner::gmpn::GmpnElement;
use reflection_sperner::poset::Poset;

/// Every element of `G(m,p,n)`, built directly from the definition.
pub fn elements(m: u32, p: u32, n: usize) -> Vec<GmpnElement> {
    let mut perms = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|q: Vec<usize>| {
                (0..=k).map(move |i| {
                    let mut r = q.clone();
                    r.insert(i, k);
                    r
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    let total = (m as usize).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let a: Vec<u32> = (0..n)
            .map(|_| {
                let d = (c % m as usize) as u32;
                c /= m as usize;
                d
            })
            .collect();
        if a.iter().sum::<u32>() % p != 0 {
            continue;
        }
        for s in &perms {
            out.push(GmpnElement::new(m, a.clone(), s.clone()).unwrap());
        }
    }
    out
}

/// `rank(M - I)` of the monomial matrix, in floating point.
pub fn float_codim(e: &GmpnElement) -> usize {
    let n = e.n();
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for k in 0..n {
        let angle = 2.0 * std::f64::consts::PI * e.a[k] as f64 / e.m as f64;
        rows[e.sigma[k]][k] += Complex64::from_polar(1.0, angle);
        rows[k][k] -= Complex64::new(1.0, 0.0);
    }
    complex_rank(rows)
}

pub fn complex_rank(mut rows: Vec<Vec<Complex64>>) -> usize {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..n).max_by(|&i, &j| rows[i][c].norm().total_cmp(&rows[j][c].norm()))
        else {
            break;
        };
        if rows[piv][c].norm() < 1e-9 {
            continue;
        }
        rows.swap(rank, piv);
        for i in 0..n {
            if i != rank {
                let f = rows[i][c] / rows[rank][c];
                for j in c..cols {
                    let v = rows[rank][j];
                    rows[i][j] -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn real_rank(rows: Vec<Vec<f64>>) -> usize {
    complex_rank(
        rows.into_iter()
            .map(|r| r.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
            .collect(),
    )
}

/// Reflection lengths by breadth-first search from the identity, using the
/// elements whose fixed space has codimension one as generators.
pub fn bfs_lengths(all: &[GmpnElement]) -> HashMap<GmpnElement, usize> {
    let refl: Vec<&GmpnElement> = all.iter().filter(|e| float_codim(e) == 1).collect();
    let id = GmpnElement::identity(all[0].m, all[0].n());
    let mut dist = HashMap::from([(id.clone(), 0usize)]);
    let mut queue = VecDeque::from([id]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for t in &refl {
            let v = u.multiply(t).unwrap();
            if !dist.contains_key(&v) {
                dist.insert(v.clone(), d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Random ranked poset: rank sizes, then covers between consecutive ranks
/// with every element above the bottom rank covering at least one element.
pub fn random_ranked_poset<R: Rng>(rng: &mut R, max_elements: usize) -> Poset {
    let mut sizes = Vec::new();
    let mut total = 0;
    let target = rng.gen_range(1..=max_elements);
    while total < target {
        let s = rng.gen_range(1..=4).min(target - total);
        sizes.push(s);
        total += s;
    }
    let mut ranks = Vec::new();
    let mut starts = Vec::new();
    for (r, &s) in sizes.iter().enumerate() {
        starts.push(ranks.len());
        ranks.extend(std::iter::repeat(r).take(s));
    }
    let density: f64 = rng.gen_range(0.2..0.9);
    let mut covers = Vec::new();
    for r in 1..sizes.len() {
        for y in starts[r]..starts[r] + sizes[r] {
            let below: Vec<usize> = (starts[r - 1]..starts[r - 1] + sizes[r - 1]).collect();
            let mut any = false;
            for &x in &below {
                if rng.gen_bool(density) {
                    covers.push((x, y));
                    any = true;
                }
            }
            if !any {
                covers.push((below[rng.gen_range(0..below.len())], y));
            }
        }
    }
    let labels = (0..total).map(|i| i.to_string()).collect();
    Poset::from_graded_covers(labels, covers, ranks).unwrap()
}

/// Random poset (not necessarily ranked): a random acyclic relation on a
/// random linear order.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> Poset {
    let density: f64 = rng.gen_range(0.05..0.5);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((i, j));
            }
        }
    }
    Poset::from_covers((0..n).map(|i| i.to_string()).collect(), &rel).unwrap()
}

/// Strict comparability computed from the covers alone.
pub fn comparable(p: &Poset) -> Vec<Vec<bool>> {
    let n = p.len();
    let mut less = vec![vec![false; n]; n];
    for &(x, y) in p.covers() {
        less[x][y] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if less[i][k] {
                for j in 0..n {
                    if less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
    }
    less
}

/// Largest union of `k` antichains by assigning each element to one of `k`
/// colour classes or leaving it out, backtracking over all choices.
pub fn k_family_by_colouring(p: &Poset, k: usize) -> usize {
    let less = comparable(p);
    let n = p.len();
    let mut colour = vec![usize::MAX; n];
    fn go(i: usize, n: usize, k: usize, less: &[Vec<bool>], colour: &mut Vec<usize>, used: usize, best: &mut usize) {
        if used + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = used;
            return;
        }
        for c in 0..k {
            if (0..i).all(|j| colour[j] != c || !(less[i][j] || less[j][i])) {
                colour[i] = c;
                go(i + 1, n, k, less, colour, used + 1, best);
                colour[i] = usize::MAX;
            }
        }
        go(i + 1, n, k, less, colour, used, best);
    }
    let mut best = 0;
    go(0, n, k, &less, &mut colour, 0, &mut best);
    best
}
