//! Claw-product coarsening of the absolute order on `G(m,1,n)`.
//!
//! The reflections split into blocks `T_1 ⊔ … ⊔ T_n`, where `T_j` holds the
//! reflections whose largest moved coordinate is `j`; `|T_j| = jm − 1`.
//! Every element is uniquely `x_1 x_2 ⋯ x_n` with `x_j ∈ T_j ∪ {id}`, and the
//! number of non-identity factors is its reflection length.

use crate::error::{Error, Result};
use crate::gmpn::{GmpnElement, GmpnGroup};
use crate::group::ReflectionGroup;
use crate::poset::{Poset, WeightFunction};

fn require_m1n(g: &GmpnGroup) -> Result<()> {
    if g.p() != 1 {
        return Err(Error::Parameter(format!(
            "claw decomposition needs a group G(m,1,n), got {}",
            g.name()
        )));
    }
    Ok(())
}

/// Largest coordinate a reflection moves (zero-based).
fn block_index(t: &GmpnElement) -> usize {
    (0..t.n())
        .rev()
        .find(|&k| t.sigma[k] != k || t.a[k] != 0)
        .expect("reflections are not the identity")
}

/// The blocks `T_1, …, T_n` as sorted lists of element indices.
pub fn claw_blocks(g: &GmpnGroup) -> Result<Vec<Vec<usize>>> {
    require_m1n(g)?;
    let mut blocks = vec![Vec::new(); g.n()];
    for &t in g.reflections() {
        blocks[block_index(&g.element(t))].push(t);
    }
    Ok(blocks)
}

/// Peels off `x_n, x_{n−1}, …, x_1` so that `w = x_1 x_2 ⋯ x_n`.
///
/// At step `j` the remaining element fixes every `(b, k)` with `k > j`. If it
/// also fixes `(0, j)` then `x_j = id`; otherwise `x_j` is the unique
/// reflection in `T_j` with `x_j⁻¹(0, j) = w⁻¹(0, j)`.
pub fn claw_decompose(g: &GmpnGroup, w: &GmpnElement) -> Result<Vec<Option<GmpnElement>>> {
    require_m1n(g)?;
    if !g.contains(w) {
        return Err(Error::Parameter(format!("{w} is not an element of {}", g.name())));
    }
    let (m, n) = (g.m(), g.n());
    let mut rest = w.clone();
    let mut factors = vec![None; n];
    for j in (0..n).rev() {
        let (c, target) = rest.inverse().apply(0, j);
        if target == j && c == 0 {
            continue;
        }
        let mut t = GmpnElement::identity(m, n);
        if target != j {
            // t(c, target) = (0, j)
            t.sigma.swap(target, j);
            t.a[target] = (m - c) % m;
            t.a[j] = c;
        } else {
            t.a[j] = (m - c) % m;
        }
        rest = rest.multiply(&t.inverse())?;
        factors[j] = Some(t);
    }
    if !rest.is_identity() {
        return Err(Error::Internal(format!("peeling {w} left {rest}")));
    }
    Ok(factors)
}

/// A verified claw-product coarsening of `abs(G(m,1,n))`.
#[derive(Debug, Clone)]
pub struct ClawEmbedding {
    /// `T_1, …, T_n` as element indices.
    pub blocks: Vec<Vec<usize>>,
    /// For each group element, its factor `x_j` per block (`None` = identity).
    pub factors: Vec<Vec<Option<usize>>>,
    /// `C_m × C_{2m} × ⋯ × C_{nm}`, empty blocks (`m = 1`, `j = 1`) dropped.
    pub product: Poset,
    /// Group element labelled by each product element.
    pub product_to_group: Vec<usize>,
}

/// Labels every element by its claw factors and verifies that the labelling
/// is a bijection from the claw product onto the group that preserves rank
/// and order (every relation of the product holds in the prefix order).
pub fn claw_embedding(g: &GmpnGroup) -> Result<ClawEmbedding> {
    let blocks = claw_blocks(g)?;
    let m = g.m() as usize;
    for (j, b) in blocks.iter().enumerate() {
        if b.len() != (j + 1) * m - 1 {
            return Err(Error::Internal(format!(
                "block T_{} has {} reflections, expected {}",
                j + 1,
                b.len(),
                (j + 1) * m - 1
            )));
        }
    }
    let used: Vec<usize> = (0..blocks.len()).filter(|&j| !blocks[j].is_empty()).collect();
    let lengths: Vec<usize> = (0..g.order()).map(|u| g.reflection_length(u)).collect();
    let labelling = label_products(g, &blocks, &used, &lengths)?;

    let mut product = Poset::chain(1);
    let mut weights = WeightFunction::unit(1);
    for &j in &used {
        let c = Poset::claw(blocks[j].len() + 1)?;
        let cw = WeightFunction::unit(c.len());
        let (p, w) = product.product(&c, &weights, &cw)?;
        product = p;
        weights = w;
    }
    let mut factors = vec![vec![None; blocks.len()]; g.order()];
    for (digits, &u) in labelling.digits.iter().zip(&labelling.elements) {
        for (pos, &j) in used.iter().enumerate() {
            factors[u][j] = digits[pos].map(|d| blocks[j][d]);
        }
    }
    Ok(ClawEmbedding {
        blocks,
        factors,
        product,
        product_to_group: labelling.elements,
    })
}

pub(super) struct ProductLabelling {
    /// Per product element (mixed radix, first block most significant): the
    /// chosen reflection position in each block.
    pub digits: Vec<Vec<Option<usize>>>,
    pub elements: Vec<usize>,
}

/// Forms `x_1 ⋯ x_k` over the blocks listed in `order` and checks bijectivity,
/// rank preservation and that every sub-product lies below the product in
/// the prefix order.
pub(super) fn label_products<G: ReflectionGroup + ?Sized>(
    g: &G,
    blocks: &[Vec<usize>],
    order: &[usize],
    lengths: &[usize],
) -> Result<ProductLabelling> {
    let radices: Vec<usize> = order.iter().map(|&j| blocks[j].len() + 1).collect();
    let total: usize = radices.iter().product();
    if total != g.order() {
        return Err(Error::Internal(format!(
            "claw product has {total} elements but the group has {}",
            g.order()
        )));
    }
    let mut digits = Vec::with_capacity(total);
    let mut elements = Vec::with_capacity(total);
    let mut seen = vec![usize::MAX; g.order()];
    for code in 0..total {
        let mut rem = code;
        let mut d = vec![None; order.len()];
        for pos in (0..order.len()).rev() {
            let r = rem % radices[pos];
            rem /= radices[pos];
            d[pos] = (r > 0).then(|| r - 1);
        }
        let mut w = g.identity();
        for (pos, &j) in order.iter().enumerate() {
            if let Some(k) = d[pos] {
                w = g.multiply(w, blocks[j][k]);
            }
        }
        if seen[w] != usize::MAX {
            return Err(Error::Internal(format!(
                "claw labels {} and {code} give the same element {}",
                seen[w],
                g.label(w)
            )));
        }
        seen[w] = code;
        let nonid = d.iter().filter(|x| x.is_some()).count();
        if lengths[w] != nonid {
            return Err(Error::Internal(format!(
                "{} has reflection length {} but {nonid} claw factors",
                g.label(w),
                lengths[w]
            )));
        }
        digits.push(d);
        elements.push(w);
    }
    // sub-products: clear any subset of the non-identity digits
    let strides: Vec<usize> = (0..order.len())
        .map(|pos| radices[pos + 1..].iter().product())
        .collect();
    for code in 0..total {
        let w = elements[code];
        let support: Vec<usize> = (0..order.len()).filter(|&p| digits[code][p].is_some()).collect();
        for mask in 0..(1usize << support.len()) {
            let mut sub = code;
            for (bit, &pos) in support.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    sub -= (digits[code][pos].unwrap() + 1) * strides[pos];
                }
            }
            let u = elements[sub];
            if lengths[u] + lengths[g.multiply(g.inverse(u), w)] != lengths[w] {
                return Err(Error::Internal(format!(
                    "claw relation {} <= {} fails in the prefix order",
                    g.label(u),
                    g.label(w)
                )));
            }
        }
    }
    Ok(ProductLabelling { digits, elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    fn g(m: u32, n: usize) -> GmpnGroup {
        GmpnGroup::new(m, 1, n, &Budget::default()).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let grp = g(2, 2);
        let id = GmpnElement::identity(2, 2);
        assert_eq!(claw_decompose(&grp, &id).unwrap(), vec![None, None]);
        let w = GmpnElement::parse("[1,1|1,2]", 2).unwrap();
        let f = claw_decompose(&grp, &w).unwrap();
        assert_eq!(f[0].as_ref().unwrap().to_string(), "[1,0|1,2]");
        assert_eq!(f[1].as_ref().unwrap().to_string(), "[0,1|1,2]");
    }

    #[test]
    fn reflections_decompose_to_themselves() {
        let grp = g(3, 3);
        let blocks = claw_blocks(&grp).unwrap();
        for (j, block) in blocks.iter().enumerate() {
            for &t in block {
                let f = claw_decompose(&grp, &grp.element(t)).unwrap();
                for (k, x) in f.iter().enumerate() {
                    assert_eq!(x.is_some(), k == j);
                }
                assert_eq!(f[j].as_ref().unwrap(), &grp.element(t));
            }
        }
    }

    #[test]
    fn decomposition_is_reduced_product() {
        let grp = g(3, 3);
        for u in 0..grp.order() {
            let w = grp.element(u);
            let f = claw_decompose(&grp, &w).unwrap();
            let prod = f
                .iter()
                .flatten()
                .fold(GmpnElement::identity(3, 3), |acc, x| acc.multiply(x).unwrap());
            assert_eq!(prod, w);
            assert_eq!(f.iter().flatten().count(), grp.reflection_length(u));
        }
    }

    #[test]
    fn wrong_family() {
        let d = GmpnGroup::new(2, 2, 3, &Budget::default()).unwrap();
        assert!(matches!(claw_blocks(&d), Err(Error::Parameter(_))));
        assert!(matches!(claw_embedding(&d), Err(Error::Parameter(_))));
    }

    #[test]
    fn embedding_sizes() {
        let e = claw_embedding(&g(2, 2)).unwrap();
        assert_eq!(e.blocks.iter().map(Vec::len).collect::<Vec<_>>(), [1, 3]);
        assert_eq!(e.product.len(), 8);
        let e = claw_embedding(&g(3, 3)).unwrap();
        assert_eq!(e.product.len(), 162);
        // m = 1: T_1 is empty and dropped, leaving C_2 × C_3 × C_4
        let e = claw_embedding(&g(1, 4)).unwrap();
        assert!(e.blocks[0].is_empty());
        assert_eq!(e.product.len(), 24);
        assert_eq!(
            e.product.rank_polynomial().unwrap(),
            crate::poset::RankPolynomial::from_ints(&[1, 6, 11, 6])
        );
    }
}
