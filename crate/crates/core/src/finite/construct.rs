//! Constructors for affine quandles and free 2-reductive n-symmetric quandles.

use super::table::FiniteBinaryTable;
use crate::error::{Error, Result};
use crate::free::GeneratorSet;

/// Default maximum number of elements for constructed tables.
pub const DEFAULT_SIZE_LIMIT: usize = 4096;

/// The automorphism `h` of `⊕ Z_{k_i}` in `Aff(A, h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automorphism {
    Scalar(i64),
    /// Row-major `d × d` integer matrix acting on column vectors.
    Matrix(Vec<Vec<i64>>),
}

/// Elements of `⊕ Z_{k_i}` in lexicographic order, first coordinate most
/// significant.
struct MixedRadix<'a> {
    orders: &'a [u64],
}

impl MixedRadix<'_> {
    fn decode(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0; self.orders.len()];
        for (slot, &k) in v.iter_mut().zip(self.orders).rev() {
            *slot = idx as u64 % k;
            idx /= k as usize;
        }
        v
    }

    fn encode(&self, v: &[u64]) -> usize {
        v.iter()
            .zip(self.orders)
            .fold(0usize, |acc, (&a, &k)| acc * k as usize + a as usize)
    }
}

fn check_size(orders: &[u64], limit: usize) -> Result<usize> {
    let size = orders.iter().fold(1u128, |acc, &k| acc.saturating_mul(k as u128));
    if size > limit as u128 {
        return Err(Error::SizeLimit {
            size: size.min(usize::MAX as u128) as usize,
            limit,
        });
    }
    Ok(size as usize)
}

/// `Aff(A, h)` on `A = ⊕ Z_{k_i}` with `a * b = (1 - h)(a) + h(b)`.
pub fn affine_quandle(orders: &[u64], aut: &Automorphism) -> Result<FiniteBinaryTable> {
    affine_quandle_limited(orders, aut, DEFAULT_SIZE_LIMIT)
}

pub fn affine_quandle_limited(orders: &[u64], aut: &Automorphism, limit: usize) -> Result<FiniteBinaryTable> {
    if orders.is_empty() || orders.contains(&0) {
        return Err(Error::NotAutomorphism("group orders must be positive".into()));
    }
    let d = orders.len();
    let matrix: Vec<Vec<i64>> = match aut {
        Automorphism::Scalar(u) => (0..d)
            .map(|i| (0..d).map(|j| if i == j { *u } else { 0 }).collect())
            .collect(),
        Automorphism::Matrix(m) => {
            if m.len() != d || m.iter().any(|r| r.len() != d) {
                return Err(Error::NotAutomorphism(format!("expected a {d}×{d} matrix")));
            }
            m.clone()
        }
    };
    // h(e_j) = Σ_i m[i][j] e_i must respect the order of e_j
    for i in 0..d {
        for j in 0..d {
            let k_i = orders[i] as i128;
            if (matrix[i][j] as i128 * orders[j] as i128).rem_euclid(k_i) != 0 {
                return Err(Error::NotAutomorphism(format!(
                    "entry ({i},{j}) does not give a homomorphism Z_{} → Z_{}",
                    orders[j], orders[i]
                )));
            }
        }
    }
    let size = check_size(orders, limit)?;
    let radix = MixedRadix { orders };
    let h: Vec<Vec<u64>> = (0..size)
        .map(|idx| {
            let a = radix.decode(idx);
            (0..d)
                .map(|i| {
                    let k = orders[i] as i128;
                    let s: i128 = (0..d).map(|j| matrix[i][j] as i128 * a[j] as i128).sum();
                    s.rem_euclid(k) as u64
                })
                .collect()
        })
        .collect();
    let mut hit = vec![false; size];
    for v in &h {
        if std::mem::replace(&mut hit[radix.encode(v)], true) {
            return Err(Error::NotAutomorphism("h is not injective".into()));
        }
    }
    let table = FiniteBinaryTable::from_fn(size, |x, y| {
        let (a, ha, hb) = (radix.decode(x as usize), &h[x as usize], &h[y as usize]);
        let v: Vec<u64> = (0..d)
            .map(|i| {
                let k = orders[i];
                (a[i] + k - ha[i] + hb[i]) % k
            })
            .collect();
        radix.encode(&v) as u32
    })?;
    assert!(
        table.is_quandle() && table.is_medial(),
        "affine construction must yield a medial quandle"
    );
    Ok(table)
}

/// Size of the free 2-reductive n-symmetric quandle over `gens`.
pub fn free_2reductive_symmetric_size(n: u64, gens: &GeneratorSet) -> Option<usize> {
    (n as usize)
        .checked_pow(gens.rank() as u32)?
        .checked_mul(gens.len())
}

/// `Z_n^{X⁻} × X` with `(a, i) * (b, j) = (b + e_i - e_j, j)`, where `e`
/// of the base generator is zero. Element `(a, i)` has index
/// `code(a) · |X| + pos(i)`, `code` reading `a` in base `n` with the first
/// reduced generator most significant.
pub fn free_2reductive_symmetric(n: u64, gens: &GeneratorSet, limit: usize) -> Result<FiniteBinaryTable> {
    if n == 0 {
        return Err(Error::BadModulus("0".into(), "n must be positive".into()));
    }
    let size = free_2reductive_symmetric_size(n, gens).unwrap_or(usize::MAX);
    if size > limit {
        return Err(Error::SizeLimit { size, limit });
    }
    let g = gens.len();
    let rank = gens.rank();
    let orders = vec![n; rank];
    let radix = MixedRadix { orders: &orders };
    // coordinate of each generator in the reduced basis
    let coord: Vec<Option<usize>> = gens
        .names()
        .iter()
        .map(|s| gens.reduced().position(|r| r == s))
        .collect();
    FiniteBinaryTable::from_fn(size, |x, y| {
        let (i, j) = (x as usize % g, y as usize % g);
        let mut b = radix.decode(y as usize / g);
        if let Some(c) = coord[i] {
            b[c] = (b[c] + 1) % n;
        }
        if let Some(c) = coord[j] {
            b[c] = (b[c] + n - 1) % n;
        }
        (radix.encode(&b) * g + j) as u32
    })
}

/// Human-readable labels for [`free_2reductive_symmetric`], like `(1,0; y)`.
pub fn free_2reductive_symmetric_labels(n: u64, gens: &GeneratorSet) -> Vec<String> {
    let g = gens.len();
    let orders = vec![n; gens.rank()];
    let radix = MixedRadix { orders: &orders };
    let size = free_2reductive_symmetric_size(n, gens).unwrap_or(0);
    (0..size)
        .map(|idx| {
            let a: Vec<String> = radix.decode(idx / g).iter().map(u64::to_string).collect();
            format!("({}; {})", a.join(","), gens.names()[idx % g])
        })
        .collect()
}

/// Indices of the generators `(0, x)` in [`free_2reductive_symmetric`].
pub fn free_2reductive_symmetric_generators(gens: &GeneratorSet) -> Vec<u32> {
    (0..gens.len() as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_examples() {
        let q = affine_quandle(&[3], &Automorphism::Scalar(2)).unwrap();
        assert_eq!(q, FiniteBinaryTable::from_fn(3, |x, y| (2 * x + 2 * y) % 3).unwrap());
        let p = affine_quandle(&[4], &Automorphism::Scalar(1)).unwrap();
        assert_eq!(p, FiniteBinaryTable::from_fn(4, |_, y| y).unwrap());
        let swap = Automorphism::Matrix(vec![vec![0, 1], vec![1, 0]]);
        let k = affine_quandle(&[2, 2], &swap).unwrap();
        let r = k.check_axioms();
        assert!(r.is_quandle() && r.medial);
        assert_eq!(k.size(), 4);
    }

    #[test]
    fn affine_rejects_non_automorphisms() {
        assert!(matches!(
            affine_quandle(&[4], &Automorphism::Scalar(2)),
            Err(Error::NotAutomorphism(_))
        ));
        assert!(matches!(
            affine_quandle(&[2, 3], &Automorphism::Matrix(vec![vec![1, 1], vec![0, 1]])),
            Err(Error::NotAutomorphism(_))
        ));
        assert!(matches!(
            affine_quandle(&[2, 2], &Automorphism::Matrix(vec![vec![1, 1], vec![1, 1]])),
            Err(Error::NotAutomorphism(_))
        ));
    }

    #[test]
    fn affine_mixed_orders() {
        // Z_2 ⊕ Z_4 with a homomorphism Z_2 → Z_4 (multiplication by 2)
        let m = Automorphism::Matrix(vec![vec![1, 0], vec![2, 3]]);
        let q = affine_quandle(&[2, 4], &m).unwrap();
        assert_eq!(q.size(), 8);
    }

    #[test]
    fn free_red2sym_examples() {
        let x2 = GeneratorSet::numbered(2).unwrap();
        let q = free_2reductive_symmetric(2, &x2, DEFAULT_SIZE_LIMIT).unwrap();
        assert_eq!(q.size(), 4);
        assert!(q.is_quandle() && q.is_medial());
        assert!(q.check_reductivity(2) && q.check_symmetry(2));
        let q3 = free_2reductive_symmetric(3, &x2, DEFAULT_SIZE_LIMIT).unwrap();
        assert_eq!(q3.size(), 6);
        assert!(q3.check_symmetry(3) && !q3.check_symmetry(2));
        let x3 = GeneratorSet::numbered(3).unwrap();
        let p = free_2reductive_symmetric(1, &x3, DEFAULT_SIZE_LIMIT).unwrap();
        assert_eq!(p, FiniteBinaryTable::from_fn(3, |_, y| y).unwrap());
        assert_eq!(
            free_2reductive_symmetric(5, &x3, 24).unwrap_err(),
            Error::SizeLimit { size: 75, limit: 24 }
        );
        let labels = free_2reductive_symmetric_labels(3, &x2);
        assert_eq!(labels.len(), 6);
        assert_eq!(labels[3], format!("(1; {})", x2.names()[1]));
    }
}
