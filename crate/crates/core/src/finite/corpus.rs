//! The fixed collection of small medial quandles used by the test suites.

use num_integer::Integer;

use super::construct::{
    affine_quandle, free_2reductive_symmetric, free_2reductive_symmetric_generators, Automorphism,
    DEFAULT_SIZE_LIMIT,
};
use super::table::FiniteBinaryTable;
use crate::error::Result;
use crate::free::GeneratorSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusKind {
    /// `Aff(Z_k, u)`.
    Affine { k: u64, u: u64 },
    /// `Aff(Z_2 × Z_2, h)`.
    Klein { matrix: [[i64; 2]; 2] },
    /// Free 2-reductive `n`-symmetric quandle on `gens` generators.
    Red2Sym { n: u64, gens: usize },
}

#[derive(Clone, Debug)]
pub struct CorpusQuandle {
    pub name: String,
    pub kind: CorpusKind,
    pub table: FiniteBinaryTable,
    /// A generating set; its first element serves as base point.
    pub generators: Vec<u32>,
}

impl CorpusQuandle {
    fn new(name: String, kind: CorpusKind, table: FiniteBinaryTable, generators: Vec<u32>) -> Self {
        Self { name, kind, table, generators }
    }
}

/// All `Aff(Z_k, u)` with `k <= max_k` and `u` a unit mod `k`.
pub fn affine_cyclic(max_k: u64) -> Result<Vec<CorpusQuandle>> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        for u in (0..k.max(2)).filter(|&u| k == 1 && u == 0 || k > 1 && u.gcd(&k) == 1) {
            let table = affine_quandle(&[k], &Automorphism::Scalar(u as i64))?;
            let generators = table.greedy_generators()?;
            out.push(CorpusQuandle::new(
                format!("Aff(Z_{k}, {u})"),
                CorpusKind::Affine { k, u },
                table,
                generators,
            ));
        }
    }
    Ok(out)
}

/// Free 2-reductive `n`-symmetric quandles for `n <= max_n`, `|X| <= max_gens`.
pub fn red2sym(max_n: u64, max_gens: usize) -> Result<Vec<CorpusQuandle>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for g in 1..=max_gens {
            let gens = GeneratorSet::numbered(g)?;
            let table = free_2reductive_symmetric(n, &gens, DEFAULT_SIZE_LIMIT)?;
            out.push(CorpusQuandle::new(
                format!("Red2Sym(n={n}, |X|={g})"),
                CorpusKind::Red2Sym { n, gens: g },
                table,
                free_2reductive_symmetric_generators(&gens),
            ));
        }
    }
    Ok(out)
}

pub fn klein() -> Result<Vec<CorpusQuandle>> {
    [[[0, 1], [1, 0]], [[0, 1], [1, 1]]]
        .into_iter()
        .map(|matrix: [[i64; 2]; 2]| {
            let table =
                affine_quandle(&[2, 2], &Automorphism::Matrix(matrix.iter().map(|r| r.to_vec()).collect()))?;
            let generators = table.greedy_generators()?;
            Ok(CorpusQuandle::new(
                format!("Aff(Z_2^2, {matrix:?})"),
                CorpusKind::Klein { matrix },
                table,
                generators,
            ))
        })
        .collect()
}

/// Affine quandles over `Z_k` (`k <= 8`), free 2-reductive n-symmetric
/// quandles (`n <= 4`, `|X| <= 3`), and two affine quandles over `Z_2^2`.
pub fn standard_corpus() -> Result<Vec<CorpusQuandle>> {
    let mut out = affine_cyclic(8)?;
    out.extend(red2sym(4, 3)?);
    out.extend(klein()?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let c = standard_corpus().unwrap();
        // Σ_{k<=8} φ(k) = 22, plus 12 free tables and 2 over Z_2^2
        assert_eq!(c.len(), 36);
        for q in &c {
            assert_eq!(q.table.subquandle_closure(&q.generators).unwrap().len(), q.table.size(), "{}", q.name);
        }
        let aff32 = c.iter().find(|q| q.kind == CorpusKind::Affine { k: 3, u: 2 }).unwrap();
        assert_eq!(aff32.generators, vec![0, 1]);
    }
}
