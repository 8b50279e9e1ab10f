//! Per-slot resource plan: keyed pseudo-random blanking, UE scheduling and the
//! jammer's attacked PRBs. PRB indices are zero-based.
//!
//! Blanking and random scheduling are deterministic functions of a shared key
//! and the slot index, so the receiver knows which PRBs must be silent while
//! the jammer, lacking the key, cannot predict them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{substream, Purpose};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheduling {
    /// Contiguous runs of PRBs per UE.
    Sequential,
    /// Keyed pseudo-random assignment of PRBs to UEs.
    #[default]
    Random,
}

impl fmt::Display for Scheduling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheduling::Sequential => "sequential",
            Scheduling::Random => "random",
        })
    }
}

impl FromStr for Scheduling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sequential" => Ok(Scheduling::Sequential),
            "random" => Ok(Scheduling::Random),
            other => Err(Error::Config(format!(
                "unknown scheduling `{other}` (expected sequential or random)"
            ))),
        }
    }
}

/// First `take` entries of a Fisher-Yates shuffle of `items`.
fn partial_shuffle<R: Rng + ?Sized>(items: &mut [usize], take: usize, rng: &mut R) {
    let n = items.len();
    for i in 0..take.min(n.saturating_sub(1)) {
        let j = rng.random_range(i..n);
        items.swap(i, j);
    }
}

/// Keyed blanking set of `m_p` PRBs out of `n_prb`, sorted ascending.
pub fn blanking_set(slot_index: u64, key: u64, n_prb: usize, m_p: usize) -> Result<Vec<usize>> {
    if m_p == 0 || m_p >= n_prb {
        return Err(Error::out_of_range("defense.m_p", m_p, "0 < m_p < n_prb"));
    }
    let mut rng = substream(key, Purpose::Blanking, slot_index, 0);
    let mut prbs: Vec<usize> = (0..n_prb).collect();
    partial_shuffle(&mut prbs, m_p, &mut rng);
    let mut out = prbs[..m_p].to_vec();
    out.sort_unstable();
    Ok(out)
}

/// Sizes of `n_ue` contiguous runs covering `n` items; the first `n % n_ue`
/// runs are one longer.
pub fn split_sizes(n: usize, n_ue: usize) -> Vec<usize> {
    let (base, extra) = (n / n_ue, n % n_ue);
    (0..n_ue).map(|k| base + usize::from(k < extra)).collect()
}

/// Assigns every data PRB to exactly one UE.
pub fn schedule(
    data_prbs: &[usize],
    n_ue: usize,
    policy: Scheduling,
    slot_index: u64,
    key: u64,
) -> Result<BTreeMap<usize, usize>> {
    if n_ue == 0 || data_prbs.len() < n_ue {
        return Err(Error::Config(format!(
            "{} data PRBs cannot serve {n_ue} UEs",
            data_prbs.len()
        )));
    }
    let mut order = data_prbs.to_vec();
    order.sort_unstable();
    if policy == Scheduling::Random {
        let mut rng = substream(key, Purpose::Scheduling, slot_index, 0);
        let n = order.len();
        partial_shuffle(&mut order, n, &mut rng);
    }
    let mut map = BTreeMap::new();
    let mut it = order.into_iter();
    for (ue, size) in split_sizes(data_prbs.len(), n_ue).into_iter().enumerate() {
        for prb in it.by_ref().take(size) {
            map.insert(prb, ue);
        }
    }
    Ok(map)
}

/// Uniformly random set of `l_p` attacked PRBs, sorted ascending.
pub fn jammer_prbs<R: Rng + ?Sized>(l_p: usize, n_prb: usize, rng: &mut R) -> Result<Vec<usize>> {
    if l_p == 0 || l_p > n_prb {
        return Err(Error::out_of_range("jammer.l_p", l_p, "1 <= l_p <= n_prb"));
    }
    let mut prbs: Vec<usize> = (0..n_prb).collect();
    partial_shuffle(&mut prbs, l_p, rng);
    let mut out = prbs[..l_p].to_vec();
    out.sort_unstable();
    Ok(out)
}

/// Resource plan of one slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotPlan {
    pub blanked: Vec<usize>,
    /// UE served on each PRB; `None` on blanked PRBs.
    pub allocation: Vec<Option<usize>>,
    pub jammed: Vec<usize>,
    pub f_per_ue: Vec<usize>,
}

impl SlotPlan {
    pub fn new(
        slot_index: u64,
        key: u64,
        n_prb: usize,
        m_p: usize,
        n_ue: usize,
        policy: Scheduling,
        jammed: Vec<usize>,
    ) -> Result<Self> {
        let blanked = blanking_set(slot_index, key, n_prb, m_p)?;
        let mut is_blanked = vec![false; n_prb];
        blanked.iter().for_each(|&b| is_blanked[b] = true);
        let data: Vec<usize> = (0..n_prb).filter(|&p| !is_blanked[p]).collect();
        let map = schedule(&data, n_ue, policy, slot_index, key)?;
        let mut allocation = vec![None; n_prb];
        let mut f_per_ue = vec![0; n_ue];
        for (prb, ue) in map {
            allocation[prb] = Some(ue);
            f_per_ue[ue] += 1;
        }
        Ok(Self {
            blanked,
            allocation,
            jammed,
            f_per_ue,
        })
    }

    pub fn n_prb(&self) -> usize {
        self.allocation.len()
    }

    pub fn data_prbs(&self) -> Vec<usize> {
        (0..self.n_prb()).filter(|&p| self.allocation[p].is_some()).collect()
    }

    pub fn prbs_of(&self, ue: usize) -> Vec<usize> {
        (0..self.n_prb()).filter(|&p| self.allocation[p] == Some(ue)).collect()
    }

    pub fn is_jammed(&self, prb: usize) -> bool {
        self.jammed.binary_search(&prb).is_ok()
    }

    /// Blanked PRBs that also carry jamming.
    pub fn jammed_blanked(&self) -> Vec<usize> {
        self.blanked.iter().copied().filter(|&p| self.is_jammed(p)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{substream, Purpose};

    #[test]
    fn blanking_cardinality_and_determinism() {
        let b = blanking_set(3, 99, 25, 24).unwrap();
        assert_eq!(b.len(), 24);
        let complement: Vec<usize> = (0..25).filter(|p| !b.contains(p)).collect();
        assert_eq!(complement.len(), 1);
        assert_eq!(blanking_set(17, 5, 125, 85).unwrap(), blanking_set(17, 5, 125, 85).unwrap());
        assert_ne!(blanking_set(17, 5, 125, 5).unwrap(), blanking_set(18, 5, 125, 5).unwrap());
        assert!(blanking_set(0, 0, 25, 0).is_err());
        assert!(blanking_set(0, 0, 25, 25).is_err());
    }

    #[test]
    fn blanking_is_uniform_over_prbs() {
        let (n_prb, m_p, slots) = (25usize, 5usize, 100_000u64);
        let mut counts = vec![0u64; n_prb];
        for s in 0..slots {
            for p in blanking_set(s, 42, n_prb, m_p).unwrap() {
                counts[p] += 1;
            }
        }
        let p = m_p as f64 / n_prb as f64;
        let sigma = (slots as f64 * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!((c as f64 - slots as f64 * p).abs() < 3.0 * sigma + 1.0, "{c}");
        }
    }

    #[test]
    fn sequential_schedule_example() {
        let data: Vec<usize> = (1..=20).collect();
        let map = schedule(&data, 4, Scheduling::Sequential, 0, 0).unwrap();
        for (ue, range) in [(0, 1..=5), (1, 6..=10), (2, 11..=15), (3, 16..=20)] {
            for prb in range {
                assert_eq!(map[&prb], ue);
            }
        }
    }

    #[test]
    fn random_schedule_single_ue_gets_everything() {
        let data = vec![2, 3, 7, 11, 19];
        let map = schedule(&data, 1, Scheduling::Random, 9, 1).unwrap();
        assert_eq!(map.keys().copied().collect::<Vec<_>>(), data);
        assert!(map.values().all(|&u| u == 0));
    }

    #[test]
    fn schedule_rejects_too_few_prbs() {
        assert!(schedule(&[1, 2, 3], 4, Scheduling::Sequential, 0, 0).is_err());
    }

    #[test]
    fn random_schedule_is_uniform() {
        let data: Vec<usize> = (0..20).collect();
        let slots = 10_000u64;
        let mut hits = vec![0u64; 20];
        for s in 0..slots {
            let map = schedule(&data, 4, Scheduling::Random, s, 7).unwrap();
            for (prb, ue) in map {
                if ue == 0 {
                    hits[prb] += 1;
                }
            }
        }
        let p = 0.25;
        let sigma = (slots as f64 * p * (1.0 - p)).sqrt();
        for h in hits {
            assert!((h as f64 - slots as f64 * p).abs() < 3.0 * sigma + 1.0, "{h}");
        }
    }

    #[test]
    fn uneven_loads_differ_by_at_most_one() {
        assert_eq!(split_sizes(22, 4), vec![6, 6, 5, 5]);
        assert_eq!(split_sizes(20, 20), vec![1; 20]);
    }

    #[test]
    fn jammer_set_bounds() {
        let mut rng = substream(1, Purpose::JammerSet, 0, 0);
        assert_eq!(jammer_prbs(25, 25, &mut rng).unwrap(), (0..25).collect::<Vec<_>>());
        assert_eq!(jammer_prbs(1, 25, &mut rng).unwrap().len(), 1);
        assert!(jammer_prbs(0, 25, &mut rng).is_err());
        assert!(jammer_prbs(26, 25, &mut rng).is_err());
    }

    #[test]
    fn jammed_blanked_intersection_mean_is_hypergeometric() {
        let (n_prb, m_p, l_p, slots) = (25usize, 5usize, 5usize, 100_000u64);
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for s in 0..slots {
            let jammed = jammer_prbs(l_p, n_prb, &mut substream(3, Purpose::JammerSet, s, 0)).unwrap();
            let plan = SlotPlan::new(s, 11, n_prb, m_p, 4, Scheduling::Random, jammed).unwrap();
            let k = plan.jammed_blanked().len() as f64;
            sum += k;
            sum_sq += k * k;
        }
        // brute-force mean over all jammer subsets for a fixed blanked set
        let blanked = [0usize, 1, 2, 3, 4];
        let (mut total, mut count) = (0.0, 0.0);
        for mask in 0u32..(1 << n_prb) {
            if mask.count_ones() as usize == l_p {
                total += blanked.iter().filter(|&&b| mask & (1 << b) != 0).count() as f64;
                count += 1.0;
            }
        }
        let exact = total / count;
        assert!((exact - (l_p * m_p) as f64 / n_prb as f64).abs() < 1e-12);
        let mean = sum / slots as f64;
        let var = sum_sq / slots as f64 - mean * mean;
        let se = (var / slots as f64).sqrt();
        assert!((mean - exact).abs() < 3.0 * se, "{mean} vs {exact}");
    }

    #[test]
    fn frequency_hopping_plans_stay_valid() {
        // blanking up to N_PRB - N_UE
        for m_p in [25usize, 85, 105] {
            let plan = SlotPlan::new(4, 1, 125, m_p, 20, Scheduling::Random, vec![0]).unwrap();
            assert_eq!(plan.f_per_ue.iter().sum::<usize>(), 125 - m_p);
            let (lo, hi) = (plan.f_per_ue.iter().min().unwrap(), plan.f_per_ue.iter().max().unwrap());
            assert!(hi - lo <= 1);
            for b in &plan.blanked {
                assert!(plan.allocation[*b].is_none());
            }
        }
        assert!(SlotPlan::new(0, 1, 125, 106, 20, Scheduling::Random, vec![]).is_err());
    }
}
