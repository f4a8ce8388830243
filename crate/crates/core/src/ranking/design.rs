use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub const DEFAULT_MAX_RESTARTS: usize = 100;

/// Consecutive rejected random draws before the remaining stubs are scanned
/// exhaustively for an admissible pair.
const MISS_LIMIT: usize = 32;

/// Samples a random `degree`-regular comparison design over `n_items` items:
/// `n_items * degree / 2` distinct unordered pairs in which every item
/// appears exactly `degree` times.
///
/// Pairs are grown by drawing two random open slots at a time and keeping the
/// pair when it is neither a self-pair nor a repeat; a run that gets stuck is
/// restarted, at most `max_restarts` times. Output pairs are `(lo, hi)` index
/// tuples in ascending order. Uniformity over all regular designs is not
/// guaranteed.
pub fn sample_pairs(n_items: usize, degree: usize, seed: u64, max_restarts: usize) -> Result<Vec<(usize, usize)>> {
    if n_items < 2 {
        return Err(Error::InfeasibleDesign(alloc::format!("need at least 2 items, got {n_items}")));
    }
    if degree > n_items - 1 {
        return Err(Error::InfeasibleDesign(alloc::format!(
            "degree {degree} exceeds {} available partners",
            n_items - 1
        )));
    }
    if (n_items * degree) % 2 == 1 {
        return Err(Error::InfeasibleDesign(alloc::format!(
            "{n_items} items x degree {degree} is odd"
        )));
    }
    let n = u32::try_from(n_items).map_err(|_| Error::InfeasibleDesign("too many items".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..=max_restarts {
        if let Some(mut pairs) = attempt(n, degree, &mut rng) {
            pairs.sort_unstable();
            return Ok(pairs);
        }
    }
    Err(Error::DesignNotFound { restarts: max_restarts })
}

fn attempt(n: u32, degree: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut open: Vec<u32> = (0..n).flat_map(|v| core::iter::repeat_n(v, degree)).collect();
    let mut partners: Vec<Vec<u32>> = vec![Vec::with_capacity(degree); n as usize];
    let mut pairs = Vec::with_capacity(open.len() / 2);
    let mut misses = 0;

    while !open.is_empty() {
        let len = open.len();
        let a = rng.random_range(0..len);
        let mut b = rng.random_range(0..len - 1);
        if b >= a {
            b += 1;
        }
        let (u, v) = (open[a], open[b]);
        if u != v && !partners[u as usize].contains(&v) {
            join(&mut partners, &mut pairs, u, v);
            open.swap_remove(a.max(b));
            open.swap_remove(a.min(b));
            misses = 0;
            continue;
        }
        misses += 1;
        if misses < MISS_LIMIT {
            continue;
        }
        // Random draws keep failing: enumerate what is still admissible.
        let mut vertices = open.clone();
        vertices.sort_unstable();
        vertices.dedup();
        let mut admissible = Vec::new();
        for (i, &x) in vertices.iter().enumerate() {
            for &y in &vertices[i + 1..] {
                if !partners[x as usize].contains(&y) {
                    admissible.push((x, y));
                }
            }
        }
        if admissible.is_empty() {
            return None;
        }
        let (u, v) = admissible[rng.random_range(0..admissible.len())];
        join(&mut partners, &mut pairs, u, v);
        for w in [u, v] {
            let pos = open.iter().position(|&s| s == w).expect("vertex has an open slot");
            open.swap_remove(pos);
        }
        misses = 0;
    }
    Some(pairs)
}

fn join(partners: &mut [Vec<u32>], pairs: &mut Vec<(usize, usize)>, u: u32, v: u32) {
    partners[u as usize].push(v);
    partners[v as usize].push(u);
    pairs.push((u.min(v) as usize, u.max(v) as usize));
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn degrees(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
        let mut d = vec![0; n];
        for &(a, b) in pairs {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    #[test]
    fn forced_single_pair() {
        assert_eq!(sample_pairs(2, 1, 0, 10).unwrap(), vec![(0, 1)]);
    }

    /// All duplicate-free 2-regular graphs on 4 labeled vertices.
    fn two_regular_on_four() -> BTreeSet<Vec<(usize, usize)>> {
        let all: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let mut out = BTreeSet::new();
        for mask in 0u32..64 {
            if mask.count_ones() != 4 {
                continue;
            }
            let chosen: Vec<_> = (0..6).filter(|i| mask & (1 << i) != 0).map(|i| all[i]).collect();
            if degrees(4, &chosen).iter().all(|&d| d == 2) {
                out.insert(chosen);
            }
        }
        out
    }

    #[test]
    fn four_items_degree_two_is_a_cycle() {
        let valid = two_regular_on_four();
        assert_eq!(valid.len(), 3);
        for g in &valid {
            // Hamiltonian: walking from 0 visits all four vertices before returning.
            let mut seen = vec![0usize];
            let mut prev = usize::MAX;
            let mut cur = 0;
            loop {
                let next = g
                    .iter()
                    .filter_map(|&(a, b)| if a == cur { Some(b) } else if b == cur { Some(a) } else { None })
                    .find(|&x| x != prev)
                    .unwrap();
                if next == 0 {
                    break;
                }
                seen.push(next);
                prev = cur;
                cur = next;
            }
            assert_eq!(seen.len(), 4);
        }
        for seed in 0..20 {
            let pairs = sample_pairs(4, 2, seed, 10).unwrap();
            assert!(valid.contains(&pairs), "{pairs:?}");
        }
    }

    #[test]
    fn infeasible_designs() {
        assert!(matches!(sample_pairs(5, 3, 0, 10), Err(Error::InfeasibleDesign(_))));
        assert!(matches!(sample_pairs(4, 4, 0, 10), Err(Error::InfeasibleDesign(_))));
        assert!(matches!(sample_pairs(1, 0, 0, 10), Err(Error::InfeasibleDesign(_))));
    }

    #[test]
    fn complete_graph_is_reachable() {
        let pairs = sample_pairs(7, 6, 3, DEFAULT_MAX_RESTARTS).unwrap();
        assert_eq!(pairs.len(), 21);
    }

    #[test]
    fn deterministic_for_seed() {
        assert_eq!(sample_pairs(101, 10, 42, 10).unwrap(), sample_pairs(101, 10, 42, 10).unwrap());
        assert_ne!(sample_pairs(101, 10, 42, 10).unwrap(), sample_pairs(101, 10, 43, 10).unwrap());
    }

    proptest::proptest! {
        #[test]
        fn regular_and_simple(n in 2usize..60, k in 0usize..12, seed in 0u64..1000) {
            let k = k.min(n - 1);
            let k = if (n * k) % 2 == 1 { k - 1 } else { k };
            let pairs = sample_pairs(n, k, seed, DEFAULT_MAX_RESTARTS).unwrap();
            proptest::prop_assert_eq!(pairs.len(), n * k / 2);
            proptest::prop_assert!(degrees(n, &pairs).iter().all(|&d| d == k));
            let unique: BTreeSet<_> = pairs.iter().collect();
            proptest::prop_assert_eq!(unique.len(), pairs.len());
            proptest::prop_assert!(pairs.iter().all(|&(a, b)| a < b));
        }
    }
}
