//! Group-theoretic analysis of finite quandles: LMlt, Dis, orbits, orbit
//! groups, I-quandle tests and Dis generating sets.

use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use super::perm::{orbits_of, PermGroup, Permutation};
use super::table::FiniteBinaryTable;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Left multiplication group `⟨L_x⟩`.
pub fn lmlt(q: &FiniteBinaryTable, cap: usize) -> Result<PermGroup> {
    PermGroup::generate(q.size(), q.left_translations()?, cap)
}

/// Generators `L_x L_0^-1` of the displacement group.
pub fn dis_generators(q: &FiniteBinaryTable) -> Result<Vec<Permutation>> {
    let ls = q.left_translations()?;
    let Some(l0) = ls.first() else {
        return Ok(Vec::new());
    };
    let l0_inv = l0.inverse();
    Ok(ls[1..].iter().map(|l| l.compose(&l0_inv)).collect())
}

/// Displacement group `⟨L_x L_y^-1⟩`.
pub fn dis(q: &FiniteBinaryTable, cap: usize) -> Result<PermGroup> {
    PermGroup::generate(q.size(), dis_generators(q)?, cap)
}

/// Outcome of sampling random words in the left translations.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct WordSampleReport {
    pub words: usize,
    pub zero_sum_words: usize,
    pub zero_sum_in_dis: usize,
    pub nonzero_sum_words: usize,
    /// Nonzero-sum words whose membership in Dis matched that of `L_0^σ`.
    pub nonzero_sum_consistent: usize,
    /// Nonzero-sum words found outside Dis.
    pub nonzero_sum_outside_dis: usize,
}

impl WordSampleReport {
    pub fn passed(&self) -> bool {
        self.zero_sum_in_dis == self.zero_sum_words
            && self.nonzero_sum_consistent == self.nonzero_sum_words
    }
}

/// Samples words `L_{x_1}^{ε_1} ... L_{x_k}^{ε_k}`. A word with exponent sum
/// `σ` lies in Dis exactly when `L_0^σ` does; zero-sum words always do.
pub fn sample_dis_words<R: Rng>(
    q: &FiniteBinaryTable,
    dis: &PermGroup,
    samples: usize,
    max_len: usize,
    rng: &mut R,
) -> Result<WordSampleReport> {
    let ls = q.left_translations()?;
    let mut report = WordSampleReport::default();
    if ls.is_empty() {
        return Ok(report);
    }
    let invs: Vec<Permutation> = ls.iter().map(Permutation::inverse).collect();
    let n = q.size();
    for i in 0..samples {
        // alternate between forced zero-sum words and free words
        let len = rng.gen_range(1..=max_len.max(1));
        let mut eps: Vec<i8> = (0..len).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        if i % 2 == 0 {
            let mut half: Vec<i8> = (0..len).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
            if len % 2 == 1 {
                half.push(-1);
            }
            for k in (1..half.len()).rev() {
                half.swap(k, rng.gen_range(0..=k));
            }
            eps = half;
        }
        let mut w = Permutation::identity(n);
        let mut sigma: i64 = 0;
        for &e in &eps {
            let x = rng.gen_range(0..n);
            w = w.compose(if e > 0 { &ls[x] } else { &invs[x] });
            sigma += e as i64;
        }
        report.words += 1;
        let inside = dis.contains(&w);
        if sigma == 0 {
            report.zero_sum_words += 1;
            report.zero_sum_in_dis += inside as usize;
        } else {
            report.nonzero_sum_words += 1;
            let expected = dis.contains(&ls[0].pow(sigma));
            report.nonzero_sum_consistent += (inside == expected) as usize;
            report.nonzero_sum_outside_dis += (!inside) as usize;
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct MedialDisReport {
    pub medial: bool,
    pub dis_abelian: bool,
}

impl MedialDisReport {
    pub fn agree(&self) -> bool {
        self.medial == self.dis_abelian
    }
}

/// Computes mediality from the table and abelianness from Dis separately.
pub fn medial_iff_dis_abelian(q: &FiniteBinaryTable, cap: usize) -> Result<MedialDisReport> {
    q.require_quandle()?;
    Ok(MedialDisReport {
        medial: q.is_medial(),
        dis_abelian: dis(q, cap)?.is_abelian(),
    })
}

/// Dis-orbits, each sorted, ordered by smallest element.
pub fn orbits(q: &FiniteBinaryTable) -> Result<Vec<Vec<u32>>> {
    q.require_quandle()?;
    Ok(orbits_of(q.size(), &dis_generators(q)?))
}

/// The abelian group on the orbit `Qx` with `α(x) + β(x) = αβ(x)` and zero `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitGroup {
    pub base: u32,
    pub elements: Vec<u32>,
    /// `sum[i][j]` is the index of `elements[i] + elements[j]`.
    pub sum: Vec<Vec<usize>>,
}

impl OrbitGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn zero(&self) -> usize {
        self.elements.iter().position(|&e| e == self.base).unwrap()
    }

    pub fn add(&self, a: u32, b: u32) -> Option<u32> {
        let i = self.elements.iter().position(|&e| e == a)?;
        let j = self.elements.iter().position(|&e| e == b)?;
        Some(self.elements[self.sum[i][j]])
    }

    /// Associativity, commutativity, identity and inverses, exhaustively.
    pub fn is_abelian_group(&self) -> bool {
        let n = self.order();
        let z = self.zero();
        let s = &self.sum;
        (0..n).all(|a| s[z][a] == a && s[a][z] == a)
            && (0..n).all(|a| (0..n).any(|b| s[a][b] == z))
            && (0..n).all(|a| (0..n).all(|b| s[a][b] == s[b][a]))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| s[s[a][b]][c] == s[a][s[b][c]])))
    }

    /// Multiplicative order of each element, indexed like `elements`.
    pub fn element_orders(&self) -> Vec<usize> {
        let z = self.zero();
        (0..self.order())
            .map(|a| {
                let (mut k, mut acc) = (1, a);
                while acc != z {
                    acc = self.sum[acc][a];
                    k += 1;
                }
                k
            })
            .collect()
    }
}

/// Builds the orbit group at `x`. Fails with `NotQuandle` if the rule is not
/// well defined (which cannot happen in a medial quandle).
pub fn orbit_group(q: &FiniteBinaryTable, x: u32, cap: usize) -> Result<OrbitGroup> {
    q.require_quandle()?;
    if x as usize >= q.size() {
        return Err(Error::TableFormat(format!("element {x} out of range")));
    }
    let d = dis(q, cap)?;
    let elements = orbits_of(q.size(), d.generators())
        .into_iter()
        .find(|o| o.contains(&x))
        .expect("x lies in some orbit");
    let index = |v: u32| elements.binary_search(&v).expect("orbit is Dis-invariant");
    let m = elements.len();
    let mut sum = vec![vec![usize::MAX; m]; m];
    // u + v = α(v) for any α ∈ Dis with α(x) = u
    for alpha in d.elements() {
        let i = index(alpha.apply(x));
        for (j, &v) in elements.iter().enumerate() {
            let w = index(alpha.apply(v));
            match sum[i][j] {
                usize::MAX => sum[i][j] = w,
                prev if prev != w => {
                    return Err(Error::NotQuandle(format!(
                        "orbit group at {x} is not well defined"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(OrbitGroup { base: x, elements, sum })
}

/// `α^{f(L)} = ∏_r (L^r α L^-r)^{c_r}` for a Laurent polynomial `f`.
pub fn apply_poly(alpha: &Permutation, l: &Permutation, f: &LaurentPoly) -> Permutation {
    let mut acc = Permutation::identity(alpha.degree());
    for (r, c) in f.terms() {
        let conj = alpha.conjugate_by(&l.pow(r));
        acc = acc.compose(&conj.pow_big(c));
    }
    acc
}

fn require_medial_quandle(q: &FiniteBinaryTable) -> Result<()> {
    q.require_quandle()?;
    if !q.is_medial() {
        return Err(Error::NotMedial);
    }
    Ok(())
}

/// True iff `α^{f(L)} = 1` for each generator `α` of Dis, with `L = L_0`.
pub fn check_i_quandle(q: &FiniteBinaryTable, f: &LaurentPoly) -> Result<bool> {
    require_medial_quandle(q)?;
    let Some(l) = q.left_translation(0) else {
        return Ok(true);
    };
    Ok(dis_generators(q)?.iter().all(|a| apply_poly(a, &l, f).is_identity()))
}

/// True iff `α^{f(L)} = 1` for every element of Dis.
pub fn check_i_quandle_all(q: &FiniteBinaryTable, f: &LaurentPoly, cap: usize) -> Result<bool> {
    require_medial_quandle(q)?;
    let Some(l) = q.left_translation(0) else {
        return Ok(true);
    };
    Ok(dis(q, cap)?.elements().iter().all(|a| apply_poly(a, &l, f).is_identity()))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DisGeneratorReport {
    pub dis_order: usize,
    /// Order of the group generated by `(L_x L_z^-1)^{L_z^k}` over all `k`.
    pub conjugates_order: usize,
    /// Order with `0 <= k < s`, when a bound was given.
    pub bounded_order: Option<usize>,
}

impl DisGeneratorReport {
    pub fn passed(&self) -> bool {
        self.conjugates_order == self.dis_order
            && self.bounded_order.is_none_or(|b| b == self.dis_order)
    }
}

/// Compares Dis with the subgroup generated by conjugates of
/// `L_x L_z^-1` (`x ∈ X`) under powers of `L_z`.
pub fn dis_generator_check(
    q: &FiniteBinaryTable,
    gens: &[u32],
    z: u32,
    bound: Option<usize>,
    cap: usize,
) -> Result<DisGeneratorReport> {
    q.require_quandle()?;
    if !gens.contains(&z) {
        return Err(Error::BadGenerators(format!("{z} is not in the generating set")));
    }
    let generated = q.subquandle_closure(gens)?.len();
    if generated != q.size() {
        return Err(Error::NotGenerating {
            generated,
            size: q.size(),
        });
    }
    let lz = q.left_translation(z).ok_or(Error::NotLeftQuasigroup)?;
    let lz_inv = lz.inverse();
    let base: Vec<Permutation> = gens
        .iter()
        .filter(|&&x| x != z)
        .map(|&x| q.left_translation(x).ok_or(Error::NotLeftQuasigroup).map(|l| l.compose(&lz_inv)))
        .collect::<Result<_>>()?;
    let conjugates = |k_max: u64| -> Vec<Permutation> {
        (0..k_max)
            .flat_map(|k| {
                let lk = lz.pow(k as i64);
                base.iter().map(move |a| a.conjugate_by(&lk))
            })
            .collect()
    };
    let n = q.size();
    let dis_order = dis(q, cap)?.order();
    let conjugates_order = PermGroup::generate(n, conjugates(lz.order()), cap)?.order();
    let bounded_order = match bound {
        Some(s) => Some(PermGroup::generate(n, conjugates(s as u64), cap)?.order()),
        None => None,
    };
    Ok(DisGeneratorReport {
        dis_order,
        conjugates_order,
        bounded_order,
    })
}

/// The map `y ↦ y * x`, checked to be an injective endomorphism.
pub fn right_translation_embedding(q: &FiniteBinaryTable, x: u32) -> Result<Vec<u32>> {
    require_medial_quandle(q)?;
    if x as usize >= q.size() {
        return Err(Error::TableFormat(format!("element {x} out of range")));
    }
    if !q.is_right_cancellative() {
        let y = (0..q.size() as u32)
            .find(|&y| {
                let r = q.right_translation(y);
                let mut s = r.clone();
                s.sort_unstable();
                s.dedup();
                s.len() != r.len()
            })
            .unwrap();
        return Err(Error::NotCancellative(format!("R_{y} is not injective")));
    }
    let map = q.right_translation(x);
    let n = q.size() as u32;
    for a in 0..n {
        for b in 0..n {
            if map[q.op(a, b) as usize] != q.op(map[a as usize], map[b as usize]) {
                return Err(Error::NotQuandle(format!("R_{x} is not an endomorphism")));
            }
        }
    }
    Ok(map)
}

/// Smallest `s` for which the `0 <= r < s` bound applies to `f`: its
/// degree, provided both extreme coefficients are units.
pub fn generator_bound(f: &LaurentPoly) -> Option<usize> {
    let unit = |c: &num_bigint::BigInt| c.to_i64().is_some_and(|v| v == 1 || v == -1);
    let (lo, hi) = (f.min_exp()?, f.max_exp()?);
    (unit(&f.coeff(lo)) && unit(&f.coeff(hi))).then(|| (hi - lo) as usize)
}
