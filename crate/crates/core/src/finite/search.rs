//! Bounded randomized search for small non-medial quandles.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::perm::Permutation;
use super::table::FiniteBinaryTable;

/// Seed used by the test suites.
pub const DEFAULT_SEARCH_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub seed: u64,
    pub max_size: usize,
    pub node_budget: u64,
    pub nodes: u64,
    /// Rows of the first witness found, if any.
    pub witness: Option<Vec<Vec<u32>>>,
}

impl SearchReport {
    pub fn witness_table(&self) -> Option<FiniteBinaryTable> {
        self.witness.as_ref().map(|rows| FiniteBinaryTable::from_rows(rows).expect("valid witness"))
    }
}

/// All permutations of `{0..n-1}` fixing `x`.
fn stabilizer(n: usize, x: usize) -> Vec<Permutation> {
    fn rec(rest: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
        if k == rest.len() {
            out.push(rest.clone());
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            rec(rest, k + 1, out);
            rest.swap(k, i);
        }
    }
    let mut others: Vec<u32> = (0..n as u32).filter(|&y| y as usize != x).collect();
    let mut images = Vec::new();
    rec(&mut others, 0, &mut images);
    images
        .into_iter()
        .map(|img| {
            let mut full = img;
            full.insert(x, x as u32);
            Permutation::from_image(full).unwrap()
        })
        .collect()
}

/// Left distributivity `L_x L_y = L_{x*y} L_x` on all triples whose rows are
/// already chosen.
fn consistent(rows: &[Option<Permutation>], new: usize) -> bool {
    let n = rows.len();
    for x in 0..n {
        let Some(lx) = &rows[x] else { continue };
        for y in 0..n {
            let Some(ly) = &rows[y] else { continue };
            let xy = lx.apply(y as u32) as usize;
            let Some(lxy) = &rows[xy] else { continue };
            if (x == new || y == new || xy == new) && lx.compose(ly) != lxy.compose(lx) {
                return false;
            }
        }
    }
    true
}

fn backtrack(
    rows: &mut Vec<Option<Permutation>>,
    choices: &[Vec<Permutation>],
    k: usize,
    nodes: &mut u64,
    budget: u64,
) -> Option<FiniteBinaryTable> {
    if k == rows.len() {
        let t = FiniteBinaryTable::from_fn(rows.len(), |x, y| rows[x as usize].as_ref().unwrap().apply(y)).unwrap();
        return (!t.is_medial()).then_some(t);
    }
    for p in &choices[k] {
        if *nodes >= budget {
            return None;
        }
        *nodes += 1;
        rows[k] = Some(p.clone());
        if consistent(rows, k) {
            if let Some(t) = backtrack(rows, choices, k + 1, nodes, budget) {
                return Some(t);
            }
        }
    }
    rows[k] = None;
    None
}

/// Searches sizes `1..=max_size` for an idempotent left-distributive left
/// quasigroup that is not medial, trying row candidates in a seeded random
/// order and visiting at most `node_budget` partial tables in total.
pub fn find_non_medial(seed: u64, max_size: usize, node_budget: u64) -> SearchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = 0;
    let mut witness = None;
    for n in 1..=max_size {
        let choices: Vec<Vec<Permutation>> = (0..n)
            .map(|x| {
                let mut c = stabilizer(n, x);
                c.shuffle(&mut rng);
                c
            })
            .collect();
        let mut rows = vec![None; n];
        if let Some(t) = backtrack(&mut rows, &choices, 0, &mut nodes, node_budget) {
            witness = Some(t.rows());
            break;
        }
        if nodes >= node_budget {
            break;
        }
    }
    SearchReport {
        seed,
        max_size,
        node_budget,
        nodes,
        witness,
    }
}

/// Conjugation quandle on the transpositions of `S_m`: `a * b = a b a^-1`.
pub fn transposition_quandle(m: u32) -> FiniteBinaryTable {
    let pairs: Vec<(u32, u32)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let swap = |(a, b): (u32, u32), v: u32| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    };
    FiniteBinaryTable::from_fn(pairs.len(), |x, y| {
        let (s, (c, d)) = (pairs[x as usize], pairs[y as usize]);
        let (c2, d2) = (swap(s, c), swap(s, d));
        let key = (c2.min(d2), c2.max(d2));
        pairs.iter().position(|&p| p == key).unwrap() as u32
    })
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpositions() {
        let t3 = transposition_quandle(3);
        assert!(t3.is_quandle() && t3.is_medial());
        let t4 = transposition_quandle(4);
        assert_eq!(t4.size(), 6);
        assert!(t4.is_quandle() && !t4.is_medial());
    }

    #[test]
    fn search_finds_a_witness() {
        let r = find_non_medial(DEFAULT_SEARCH_SEED, 6, 2_000_000);
        let t = r.witness_table().expect("witness within budget");
        assert!(t.is_quandle() && !t.is_medial());
        assert!(t.size() <= 6);
    }

    #[test]
    fn search_is_deterministic() {
        let a = find_non_medial(3, 6, 200_000);
        let b = find_non_medial(3, 6, 200_000);
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.witness, b.witness);
    }
}
