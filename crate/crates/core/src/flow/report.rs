//! Strong Sperner property: what can be certified or refuted.

use std::fmt;

use super::antichain::{k_family_sizes, max_antichain, max_k_family, K_FAMILY_BRUTE_FORCE_LIMIT};
use super::io::Witness;
use super::{normalized_flow, CutWitness, FlowCertificate};
use crate::error::Result;
use crate::poset::{Poset, WeightFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpernerVerdict {
    /// A normalized flow exists, so the poset is strongly Sperner.
    Positive,
    /// Some union of `k` antichains beats the `k` largest ranks.
    Negative,
    /// No flow, and no violation found.
    Inconclusive,
}

impl fmt::Display for SpernerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpernerVerdict::Positive => "POSITIVE",
            SpernerVerdict::Negative => "NEGATIVE",
            SpernerVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// `d_k` against the sum of the `k` largest rank sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KFamilyRow {
    pub k: usize,
    pub family: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpernerReport {
    pub verdict: SpernerVerdict,
    pub rank_sizes: Vec<usize>,
    pub certificate: Option<FlowCertificate>,
    /// The failing layer when no flow exists.
    pub cut: Option<CutWitness>,
    /// Refutation for a negative verdict.
    pub witness: Option<Witness>,
    pub max_antichain: Option<usize>,
    /// Exhaustive comparison for every `k` (small posets only).
    pub k_families: Vec<KFamilyRow>,
}

fn top_k(sizes: &[usize], k: usize) -> usize {
    let mut s = sizes.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s.iter().take(k).sum()
}

/// Flow first; failing that, a maximum antichain; failing that (for at most
/// 20 elements) every `k`-family.
pub fn sperner_report(poset: &Poset) -> Result<SpernerReport> {
    let rank_sizes = poset.rank_sizes()?;
    let mut report = SpernerReport {
        verdict: SpernerVerdict::Inconclusive,
        rank_sizes: rank_sizes.clone(),
        certificate: None,
        cut: None,
        witness: None,
        max_antichain: None,
        k_families: Vec::new(),
    };
    match normalized_flow(poset, &WeightFunction::unit(poset.len()))? {
        Ok(cert) => {
            report.verdict = SpernerVerdict::Positive;
            report.certificate = Some(cert);
            return Ok(report);
        }
        Err(cut) => report.cut = Some(cut),
    }
    let largest = rank_sizes.iter().copied().max().unwrap_or(0);
    let antichain = max_antichain(poset);
    report.max_antichain = Some(antichain.len());
    if antichain.len() > largest {
        report.verdict = SpernerVerdict::Negative;
        report.witness = Some(Witness::Antichain {
            antichain,
            largest_rank: largest,
        });
    }
    if poset.len() <= K_FAMILY_BRUTE_FORCE_LIMIT {
        let d = k_family_sizes(poset, K_FAMILY_BRUTE_FORCE_LIMIT)?;
        report.k_families = (1..=rank_sizes.len())
            .map(|k| KFamilyRow {
                k,
                family: d[k.min(d.len() - 1)],
                bound: top_k(&rank_sizes, k),
            })
            .collect();
        if report.witness.is_none() {
            if let Some(row) = report.k_families.iter().find(|r| r.family > r.bound) {
                report.verdict = SpernerVerdict::Negative;
                report.witness = Some(Witness::KFamily {
                    k: row.k,
                    elements: max_k_family(poset, row.k, K_FAMILY_BRUTE_FORCE_LIMIT)?,
                    bound: row.bound,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset(n: usize, covers: &[(usize, usize)]) -> Poset {
        Poset::from_covers((0..n).map(|i| i.to_string()).collect(), covers).unwrap()
    }

    #[test]
    fn claw_is_positive() {
        let r = sperner_report(&Poset::claw(4).unwrap()).unwrap();
        assert_eq!(r.verdict, SpernerVerdict::Positive);
        assert!(r.certificate.is_some());
    }

    #[test]
    fn antichain_refutation() {
        // V plus an isolated point: ranks (2, 2), antichain of size 3
        let p = poset(4, &[(0, 1), (0, 2)]);
        let r = sperner_report(&p).unwrap();
        assert_eq!(r.verdict, SpernerVerdict::Negative);
        assert!(r.witness.unwrap().verify(&p, &WeightFunction::unit(4)));
    }

    #[test]
    fn k_family_refutation() {
        // ranks (2, 2): 0 < 2, 0 < 3, 1 < 3 plus a chain 4 < 5 < 6 < 7
        // gives rank sizes (2,2,1,1) ... checked against exhaustive d_k
        let p = poset(8, &[(0, 2), (0, 3), (1, 3), (4, 5), (5, 6), (6, 7)]);
        let r = sperner_report(&p).unwrap();
        let d = k_family_sizes(&p, 20).unwrap();
        for row in &r.k_families {
            assert_eq!(row.family, d[row.k.min(d.len() - 1)]);
        }
        let violated = r.k_families.iter().any(|row| row.family > row.bound);
        assert_eq!(r.verdict == SpernerVerdict::Negative, violated || r.max_antichain > Some(r.rank_sizes.iter().copied().max().unwrap()));
        if let Some(w) = &r.witness {
            assert!(w.verify(&p, &WeightFunction::unit(8)));
        }
    }

    #[test]
    fn inconclusive_keeps_cut() {
        // ranks (1,2,1) with a flow failure but Sperner: 0<1, 0<2, 1<3, 2<3 is a diamond
        // (has a flow); break it so the top covers only one element
        let p = poset(5, &[(0, 1), (0, 2), (1, 3), (2, 4)]);
        let r = sperner_report(&p).unwrap();
        if r.verdict == SpernerVerdict::Inconclusive {
            assert!(r.cut.is_some());
            assert!(r.k_families.iter().all(|row| row.family <= row.bound));
        }
    }
}
