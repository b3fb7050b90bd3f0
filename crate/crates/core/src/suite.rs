//! End-to-end verification checks, shared by the `suite` CLI verb and the
//! acceptance tests. Each check returns a [`CriterionReport`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclotomic::{crt_residues, factor_symmetric_poly, reductive_poly, symmetric_poly};
use crate::error::Result;
use crate::finite::analysis::{check_i_quandle, dis_generator_check, medial_iff_dis_abelian};
use crate::finite::corpus::{standard_corpus, CorpusKind, CorpusQuandle};
use crate::finite::search::{find_non_medial, transposition_quandle, DEFAULT_SEARCH_SEED};
use crate::finite::table::FiniteBinaryTable;
use crate::free::{in_joyce_model, joyce_model_star, FreeElement, FreeQuandle, GeneratorSet, Vector};
use crate::poly::LaurentPoly;
use crate::ring::{RingElement, RingSpec};
use crate::term::{builtin_identities, VarietySpec};

pub const SUITE_SEED: u64 = 0x0051_7e5e;
pub const RANDOM_ELEMENTS: usize = 1000;
pub const CRT_SAMPLES: usize = 500;
pub const JOYCE_MAX_LEAVES: usize = 6;
pub const SEARCH_MAX_SIZE: usize = 6;
pub const SEARCH_NODE_BUDGET: u64 = 2_000_000;
/// Largest symmetry / reductivity order scanned on corpus quandles.
pub const MAX_ORDER: u64 = 6;

pub const WORKED_EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
pub const AXIOM_SUITE_LIMIT: Duration = Duration::from_secs(30);
pub const JOYCE_LIMIT: Duration = Duration::from_secs(10);
pub const CRT_LIMIT: Duration = Duration::from_secs(5);

/// The displacement word for the worked example, as printed in the source.
pub const WORKED_EXAMPLE_WORD: &str = "(L_{e_1}L_{e_0}^{-1})(L_{e_2}L_{e_0}^{-1})^L(e_2)";

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {}: {} ({:.3}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

fn finish(id: u8, name: &'static str, start: Instant, result: Result<(bool, String)>) -> CriterionReport {
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionReport {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn within(start: Instant, limit: Duration, passed: bool, detail: String) -> (bool, String) {
    let elapsed = start.elapsed();
    if elapsed > limit {
        (false, format!("{detail}; took {elapsed:?}, limit {limit:?}"))
    } else {
        (passed, detail)
    }
}

/// Renders a decomposition as `(L_{e_i}L_{e_z}^{-1})^{f}...(e_g)`.
pub fn format_decomposition(base: &str, gen: &str, word: &[(String, RingElement)]) -> String {
    let mut out = String::new();
    for (sym, f) in word {
        for (r, c) in f.value().terms() {
            let conj = match r {
                0 => String::new(),
                1 => "^L".to_string(),
                r => format!("^{{L^{r}}}"),
            };
            let power = if c.is_one() { String::new() } else { format!("^{{{c}}}") };
            out.push_str(&format!("(L_{{e_{sym}}}L_{{e_{base}}}^{{-1}}){conj}{power}"));
        }
    }
    out.push_str(&format!("(e_{gen})"));
    out
}

/// The worked example over `X = {0, 1, 2}`.
pub fn worked_example() -> CriterionReport {
    let start = Instant::now();
    let result = (|| -> Result<(bool, String)> {
        let q = FreeQuandle::medial(GeneratorSet::numbered(3)?);
        let p = |s: &str| s.parse::<LaurentPoly>();
        let a = Vector::from_coords(q.ring(), [("1", p("1 - t")?), ("2", p("1 + t - t^2")?)]);
        let lambda = a.augmentation(q.gens());
        let lambda_ok = lambda == vec![BigInt::zero(), BigInt::one()];
        let elem = q.unembed_affine(&a)?;
        let expected = q.element([("1", p("1")?), ("2", p("t")?)], "2")?;
        let unembed_ok = elem == expected;
        let word = q.decompose(&elem);
        let rendered = format_decomposition(q.gens().base(), elem.gen(), &word);
        let word_ok = rendered == WORKED_EXAMPLE_WORD && q.reconstruct(elem.gen(), &word)? == elem;
        let back = q.embed_affine(&elem)?;
        let round_trip_ok = back == a && back.to_string() == a.to_string();
        let detail = format!(
            "Λ(a) = ({}), unembed = {elem}, word = {rendered}, re-embed = {back}",
            lambda.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
        );
        Ok(within(
            start,
            WORKED_EXAMPLE_LIMIT,
            lambda_ok && unembed_ok && word_ok && round_trip_ok,
            detail,
        ))
    })();
    finish(1, "worked example", start, result)
}

pub fn axiom_contexts() -> Vec<VarietySpec> {
    vec![
        VarietySpec::Medial,
        VarietySpec::Symmetric(2),
        VarietySpec::Symmetric(3),
        VarietySpec::Symmetric(6),
        VarietySpec::Reductive(2),
        VarietySpec::Reductive(3),
        VarietySpec::SymmetricReductive2(4),
    ]
}

/// Number of violations of the quandle, medial and quasigroup laws among
/// `count` random elements of `ctx`, checked on tuples of neighbours.
pub fn axiom_violations(ctx: &FreeQuandle, count: usize, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let els: Vec<FreeElement> = (0..count).map(|_| ctx.random_element(&mut rng, 3, 5)).collect();
    let mut bad = 0;
    for i in 0..count {
        let x = &els[i];
        let y = &els[(i + 1) % count];
        let u = &els[(i + 7) % count];
        let v = &els[(i + 13) % count];
        let xy = ctx.star(x, y)?;
        let xu = ctx.star(x, u)?;
        let checks = [
            ctx.star(x, x)? == *x,
            ctx.star(x, &ctx.star(y, u)?)? == ctx.star(&xy, &xu)?,
            ctx.star(&xy, &ctx.star(u, v)?)? == ctx.star(&xu, &ctx.star(y, v)?)?,
            ctx.backslash(x, &xy)? == *y,
            ctx.star(x, &ctx.backslash(x, y)?)? == *y,
        ];
        bad += checks.iter().filter(|ok| !**ok).count();
    }
    Ok(bad)
}

/// The defining laws on random elements of each context.
pub fn axiom_suite() -> CriterionReport {
    let start = Instant::now();
    let result = (|| -> Result<(bool, String)> {
        let gens = GeneratorSet::new(["x", "y", "z"])?;
        let mut parts = Vec::new();
        let mut total = 0;
        for (k, v) in axiom_contexts().into_iter().enumerate() {
            let bad = axiom_violations(&v.context(gens.clone())?, RANDOM_ELEMENTS, SUITE_SEED + k as u64)?;
            total += bad;
            parts.push(format!("{v}: {bad}"));
        }
        Ok(within(
            start,
            AXIOM_SUITE_LIMIT,
            total == 0,
            format!("violations per context [{}]", parts.join(", ")),
        ))
    })();
    finish(2, "axiom suite", start, result)
}

/// Whether a corpus quandle lies in the variety.
pub fn in_variety(q: &FiniteBinaryTable, v: &VarietySpec) -> bool {
    q.is_quandle()
        && q.is_medial()
        && match v {
            VarietySpec::Medial => true,
            VarietySpec::Symmetric(n) => q.check_symmetry(*n),
            VarietySpec::Reductive(m) => q.check_reductivity(*m as u64),
            VarietySpec::SymmetricReductive2(n) => q.check_symmetry(*n) && q.check_reductivity(2),
            VarietySpec::CustomModulus(f) => check_i_quandle(q, f).unwrap_or(false),
        }
}

pub fn decision_varieties() -> Vec<VarietySpec> {
    let mut out = vec![VarietySpec::Medial];
    out.extend((2..=MAX_ORDER).map(VarietySpec::Symmetric));
    out.extend((2..=4).map(VarietySpec::Reductive));
    out.extend((2..=4).map(VarietySpec::SymmetricReductive2));
    out
}

/// Verdicts of the identity catalogue against the corpus.
pub fn identity_oracle(corpus: &[CorpusQuandle]) -> CriterionReport {
    let start = Instant::now();
    let result = (|| -> Result<(bool, String)> {
        let identities = builtin_identities();
        let mut holds: HashMap<(usize, usize), bool> = HashMap::new();
        let (mut valid, mut invalid, mut refuted, mut disagreements) = (0, 0, 0, 0);
        let mut failures = Vec::new();
        let mut refuters: HashMap<(String, String), Vec<String>> = HashMap::new();
        for v in decision_varieties() {
            let members: Vec<usize> = (0..corpus.len()).filter(|&k| in_variety(&corpus[k].table, &v)).collect();
            for (i, id) in identities.iter().enumerate() {
                let verdict = id.decide(&v)?;
                let mut holds_in = |k: usize| -> Result<bool> {
                    if let Some(&h) = holds.get(&(i, k)) {
                        return Ok(h);
                    }
                    let h = corpus[k].table.satisfies(&id.lhs, &id.rhs)?;
                    holds.insert((i, k), h);
                    Ok(h)
                };
                let mut failing = Vec::new();
                for &k in &members {
                    if !holds_in(k)? {
                        failing.push(corpus[k].name.clone());
                    }
                }
                if verdict.is_valid() {
                    valid += 1;
                    if !failing.is_empty() {
                        disagreements += 1;
                        failures.push(format!("{} valid in {v} but fails in {}", id.name, failing[0]));
                    }
                } else {
                    invalid += 1;
                    refuted += !failing.is_empty() as usize;
                    refuters.insert((id.name.clone(), v.to_string()), failing);
                }
            }
        }
        let mut witnesses = Vec::new();
        for (name, v) in [("commutativity", "medial"), ("involutory", "sym:3")] {
            match refuters.get(&(name.to_string(), v.to_string())).and_then(|ms| ms.first()) {
                Some(m) => witnesses.push(format!("{name} in {v} refuted by {m}")),
                None => {
                    disagreements += 1;
                    failures.push(format!("{name} not refuted in {v}"));
                }
            }
        }
        let detail = format!(
            "{valid} valid verdicts, {invalid} invalid ({refuted} refuted by a corpus model), {}, {disagreements} disagreements{}",
            witnesses.join(", "),
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) }
        );
        Ok((disagreements == 0, detail))
    })();
    finish(3, "identity decisions vs finite models", start, result)
}

/// Values of all terms with at most `max_leaves` leaves over `ctx`'s
/// generators, deduplicated by leaf count.
pub fn term_values(ctx: &FreeQuandle, max_leaves: usize) -> Result<Vec<FreeElement>> {
    let mut seen: HashSet<FreeElement> = HashSet::new();
    let mut by_leaves: Vec<Vec<FreeElement>> = vec![Vec::new(), ctx.generators()];
    seen.extend(ctx.generators());
    for k in 2..=max_leaves {
        let mut level = Vec::new();
        for i in 1..k {
            for a in &by_leaves[i] {
                for b in &by_leaves[k - i] {
                    for v in [ctx.star(a, b)?, ctx.backslash(a, b)?] {
                        if seen.insert(v.clone()) {
                            level.push(v);
                        }
                    }
                }
            }
        }
        by_leaves.push(level);
    }
    Ok(by_leaves.into_iter().flatten().collect())
}

/// The involutory free quandle against the `2a - b` model.
pub fn joyce_equivalence() -> CriterionReport {
    let start = Instant::now();
    let result = (|| -> Result<(bool, String)> {
        let ctx = FreeQuandle::symmetric(GeneratorSet::new(["x", "y", "z"])?, 2)?;
        let values = term_values(&ctx, JOYCE_MAX_LEAVES)?;
        let images: Vec<Vec<BigInt>> = values.iter().map(|v| ctx.joyce_isomorphism(v)).collect::<Result<_>>()?;
        let mut violations = images.iter().filter(|v| !in_joyce_model(v)).count();
        let distinct: HashSet<&Vec<BigInt>> = images.iter().collect();
        violations += images.len() - distinct.len();
        let mut pairs = 0usize;
        for (a, ja) in values.iter().zip(&images) {
            for (b, jb) in values.iter().zip(&images) {
                pairs += 1;
                if ctx.joyce_isomorphism(&ctx.star(a, b)?)? != joyce_model_star(ja, jb)? {
                    violations += 1;
                }
            }
        }
        Ok(within(
            start,
            JOYCE_LIMIT,
            violations == 0,
            format!("{} values, {pairs} pairs, {violations} violations", values.len()),
        ))
    })();
    finish(4, "Joyce equivalence", start, result)
}

/// Symmetry and reductivity against the I-quandle test.
pub fn subvariety_characterizations(corpus: &[CorpusQuandle]) -> CriterionReport {
    let start = Instant::now();
    let result = (|| -> Result<(bool, String)> {
        let (mut checks, mut failures) = (0, Vec::new());
        for q in corpus {
            for n in 1..=MAX_ORDER {
                checks += 1;
                if q.table.check_symmetry(n) != check_i_quandle(&q.table, &symmetric_poly(n))? {
                    failures.push(format!("{} sym {n}", q.name));
                }
                checks += 1;
                if q.table.check_reductivity(n) != check_i_quandle(&q.table, &reductive_poly(n as u32 - 1))? {
                    failures.push(format!("{} red {n}", q.name));
                }
            }
        }
        Ok((
            failures.is_empty(),
            format!("{checks} equivalences on {} quandles, {} disagreements {failures:?}", corpus.len(), failures.len()),
        ))
    })();
    finish(5, "subvariety characterizations", start, result)
}

/// Mediality against abelianness of Dis.
pub fn medial_dis(corpus: &[CorpusQuandle]) -> CriterionReport {
    let start = Instant::now();
    let result = (|| -> Result<(bool, String)> {
        let cap = crate::finite::perm::DEFAULT_CLOSURE_CAP;
        let mut disagreements = Vec::new();
        for q in corpus {
            if !medial_iff_dis_abelian(&q.table, cap)?.agree() {
                disagreements.push(q.name.clone());
            }
        }
        let search = find_non_medial(DEFAULT_SEARCH_SEED, SEARCH_MAX_SIZE, SEARCH_NODE_BUDGET);
        let mut non_medial = vec![("S_4 transpositions".to_string(), transposition_quandle(4))];
        let coverage = match search.witness_table() {
            Some(w) => {
                let note = format!("search witness of size {} (seed {:#x}, {} nodes)", w.size(), search.seed, search.nodes);
                non_medial.push(("search witness".into(), w));
                note
            }
            None => format!(
                "no search witness within {} nodes (seed {:#x}); the non-medial direction is covered vacuously by search",
                search.node_budget, search.seed
            ),
        };
        for (name, t) in &non_medial {
            let r = medial_iff_dis_abelian(t, cap)?;
            if !r.agree() || r.medial {
                disagreements.push(name.clone());
            }
        }
        Ok((
            disagreements.is_empty(),
            format!(
                "{} corpus quandles + {} non-medial; {coverage}; disagreements {disagreements:?}",
                corpus.len(),
                non_medial.len()
            ),
        ))
    })();
    finish(6, "medial iff Dis abelian", start, result)
}

pub const CRT_ORDERS: [u64; 6] = [2, 3, 4, 6, 8, 12];

/// Cyclotomic factorizations and injectivity of the residue map.
pub fn crt_layer() -> CriterionReport {
    let start = Instant::now();
    let result = (|| -> Result<(bool, String)> {
        let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
        let mut failures = Vec::new();
        for n in CRT_ORDERS {
            let sigma = symmetric_poly(n);
            let factors = factor_symmetric_poly(n);
            let product = factors.iter().fold(LaurentPoly::one(), |acc, f| &acc * f);
            if product != sigma {
                failures.push(format!("product for n = {n}"));
            }
            let t_minus_1 = LaurentPoly::from_coeffs(&[-1, 1]);
            if &t_minus_1 * &sigma != &LaurentPoly::monomial(1, n as i64) - &LaurentPoly::one() {
                failures.push(format!("telescoping for n = {n}"));
            }
            let ring = RingSpec::quotient(&sigma)?;
            let mut sampled = 0;
            while sampled < CRT_SAMPLES {
                let coeffs: Vec<i64> = (0..n as usize + 2).map(|_| rand::Rng::gen_range(&mut rng, -9..=9)).collect();
                let a = ring.reduce(&LaurentPoly::from_coeffs(&coeffs));
                if a.is_zero() {
                    continue;
                }
                sampled += 1;
                if crt_residues(&a, &factors)?.iter().all(RingElement::is_zero) {
                    failures.push(format!("{a} has zero residues for n = {n}"));
                }
            }
        }
        Ok(within(
            start,
            CRT_LIMIT,
            failures.is_empty(),
            format!("orders {CRT_ORDERS:?}, {CRT_SAMPLES} samples each, failures {failures:?}"),
        ))
    })();
    finish(7, "CRT layer", start, result)
}

/// Degree bounds `s` to test for a corpus quandle: `n - 1` for its smallest
/// symmetry order `n` and `m - 1` for its smallest reductivity order `m`.
pub fn generator_bounds(q: &CorpusQuandle) -> Vec<usize> {
    let mut out = Vec::new();
    if let Some(n) = q.table.symmetry_order(12) {
        out.push(n as usize - 1);
    }
    if let Some(m) = q.table.reductivity_order(MAX_ORDER) {
        out.push(m as usize - 1);
    }
    if let CorpusKind::Red2Sym { .. } = q.kind {
        out.push(1);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Generating sets of Dis from a generating set of the quandle.
pub fn dis_generators(corpus: &[CorpusQuandle]) -> CriterionReport {
    let start = Instant::now();
    let result = (|| -> Result<(bool, String)> {
        let cap = crate::finite::perm::DEFAULT_CLOSURE_CAP;
        let (mut checks, mut failures) = (0, Vec::new());
        for q in corpus {
            let z = q.generators[0];
            let mut bounds: Vec<Option<usize>> = vec![None];
            bounds.extend(generator_bounds(q).into_iter().map(Some));
            for s in bounds {
                checks += 1;
                if !dis_generator_check(&q.table, &q.generators, z, s, cap)?.passed() {
                    failures.push(format!("{} (s = {s:?})", q.name));
                }
            }
        }
        Ok((
            failures.is_empty(),
            format!("{checks} checks on {} quandles, failures {failures:?}", corpus.len()),
        ))
    })();
    finish(8, "Dis generating sets", start, result)
}

/// Runs all eight checks in order.
pub fn run_all() -> Result<Vec<CriterionReport>> {
    let corpus = standard_corpus()?;
    Ok(vec![
        worked_example(),
        axiom_suite(),
        identity_oracle(&corpus),
        joyce_equivalence(),
        subvariety_characterizations(&corpus),
        medial_dis(&corpus),
        crt_layer(),
        dis_generators(&corpus),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_rendering() {
        let q = FreeQuandle::medial(GeneratorSet::numbered(3).unwrap());
        let e = q.element([("1", "2 - t^-1".parse().unwrap())], "0").unwrap();
        let w = q.decompose(&e);
        assert_eq!(
            format_decomposition("0", "0", &w),
            "(L_{e_1}L_{e_0}^{-1})^{L^-1}^{-1}(L_{e_1}L_{e_0}^{-1})^{2}(e_0)"
        );
    }

    #[test]
    fn worked_example_passes() {
        let r = worked_example();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn term_values_small() {
        let ctx = FreeQuandle::symmetric(GeneratorSet::new(["x", "y"]).unwrap(), 2).unwrap();
        // x*y, y*x are new; x*x, y*y and the backslashes repeat them
        assert_eq!(term_values(&ctx, 2).unwrap().len(), 4);
    }
}
