//! The free medial quandle `M x X` and its f-quandle quotients.
//!
//! With `X` a finite generator list, `z` its base symbol and
//! `M = R^(X \ {z})` for a coefficient ring `R`, points are pairs `(a, i)`
//! and
//!
//! ```text
//! (a, i) * (b, j) = ((1 - t) a + t b + e_i - e_j, j)
//! (a, i) \ (b, j) = ((1 - t^-1) a + t^-1 (b + e_j - e_i), j)
//! ```
//!
//! where `e_z = 0`. With `R = Z[t, t^-1]` this is free in the variety of
//! medial quandles; with `R = Z[t]/f` it is free among f-quandles. The
//! displacement group acts on `M x X` by translation of the first
//! coordinate, and `p -> p * (0, z)` embeds the whole quandle into the
//! affine quandle `Aff(M, t)` as `(g, i) -> (1 - t) g + e_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{reductive_poly, symmetric_poly};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::ring::{RingElement, RingSpec};

/// Ordered generator symbols with a distinguished base symbol `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    names: Vec<String>,
    base: usize,
}

impl GeneratorSet {
    /// Base is the first symbol.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::BadGenerators("generator set is empty".into()));
        }
        for (k, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::BadGenerators("empty generator name".into()));
            }
            if names[..k].contains(n) {
                return Err(Error::BadGenerators(format!("duplicate generator {n:?}")));
            }
        }
        Ok(Self { names, base: 0 })
    }

    pub fn with_base<S: Into<String>>(names: impl IntoIterator<Item = S>, base: &str) -> Result<Self> {
        let mut set = Self::new(names)?;
        set.base = set
            .position(base)
            .ok_or_else(|| Error::BadGenerators(format!("base {base:?} is not a generator")))?;
        Ok(set)
    }

    /// Symbols `0, 1, ..., k-1`.
    pub fn numbered(k: usize) -> Result<Self> {
        Self::new((0..k).map(|i| i.to_string()))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn base(&self) -> &str {
        &self.names[self.base]
    }

    pub fn position(&self, sym: &str) -> Option<usize> {
        self.names.iter().position(|n| n == sym)
    }

    pub fn contains(&self, sym: &str) -> bool {
        self.position(sym).is_some()
    }

    /// `X \ {z}` in declaration order: the coordinates of `M`.
    pub fn reduced(&self) -> impl Iterator<Item = &str> + '_ {
        self.names
            .iter()
            .enumerate()
            .filter(move |(k, _)| *k != self.base)
            .map(|(_, n)| n.as_str())
    }

    pub fn rank(&self) -> usize {
        self.names.len() - 1
    }
}

/// A finitely supported vector of `M`, keyed by generator symbol, with
/// canonical (reduced, nonzero) coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    ring: RingSpec,
    coords: BTreeMap<String, LaurentPoly>,
}

impl Vector {
    pub fn zero(ring: &RingSpec) -> Self {
        Self {
            ring: ring.clone(),
            coords: BTreeMap::new(),
        }
    }

    /// Builds a vector from `(symbol, polynomial)` pairs, reducing each
    /// coordinate and summing repeated symbols.
    pub fn from_coords<S: Into<String>>(
        ring: &RingSpec,
        coords: impl IntoIterator<Item = (S, LaurentPoly)>,
    ) -> Self {
        let mut v = Self::zero(ring);
        for (s, p) in coords {
            v.add_at(s.into(), &p);
        }
        v
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, sym: &str) -> RingElement {
        match self.coords.get(sym) {
            Some(p) => RingElement::new(&self.ring, p),
            None => self.ring.zero(),
        }
    }

    /// Nonzero coordinates, ordered by symbol.
    pub fn coords(&self) -> impl Iterator<Item = (&str, &LaurentPoly)> + '_ {
        self.coords.iter().map(|(s, p)| (s.as_str(), p))
    }

    fn add_at(&mut self, sym: String, p: &LaurentPoly) {
        let cur = self.coords.remove(&sym).unwrap_or_default();
        let next = self.ring.reduce_poly(&(&cur + p));
        if !next.is_zero() {
            self.coords.insert(sym, next);
        }
    }

    fn add_unit(&mut self, sym: &str, c: i64) {
        self.add_at(sym.to_string(), &LaurentPoly::constant(c));
    }

    fn check(&self, other: &Vector) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::SpecMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check(other)?;
        let mut out = self.clone();
        for (s, p) in &other.coords {
            out.add_at(s.clone(), p);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check(other)?;
        let mut out = self.clone();
        for (s, p) in &other.coords {
            out.add_at(s.clone(), &-p);
        }
        Ok(out)
    }

    /// `c * self` for a scalar given as a polynomial.
    pub fn scale(&self, c: &LaurentPoly) -> Vector {
        let mut out = Vector::zero(&self.ring);
        for (s, p) in &self.coords {
            out.add_at(s.clone(), &(p * c));
        }
        out
    }

    /// Coordinate-wise `t -> 1`, over the given symbol order.
    pub fn augmentation(&self, order: &GeneratorSet) -> Vec<BigInt> {
        order
            .reduced()
            .map(|s| self.coords.get(s).map(|p| p.eval_at_one()).unwrap_or_default())
            .collect()
    }
}

fn write_coords(f: &mut fmt::Formatter<'_>, v: &Vector) -> fmt::Result {
    if v.is_zero() {
        return write!(f, "0");
    }
    for (k, (s, p)) in v.coords().enumerate() {
        if k > 0 {
            write!(f, " + ")?;
        }
        if p.is_one() {
            write!(f, "e_{s}")?;
        } else if (-p).is_one() {
            write!(f, "-e_{s}")?;
        } else if p.num_terms() == 1 {
            write!(f, "{p}·e_{s}")?;
        } else {
            write!(f, "({p})·e_{s}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, self)
    }
}

/// A point `(a, i)` of a free (f-)quandle in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeElement {
    coeffs: Vector,
    gen: String,
}

impl FreeElement {
    pub fn gen(&self) -> &str {
        &self.gen
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn ring(&self) -> &RingSpec {
        &self.coeffs.ring
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FreeElementJson {
            gen: self.gen.clone(),
            coeffs: self
                .coeffs
                .coords()
                .map(|(s, p)| (s.to_string(), p.to_string()))
                .collect(),
            ring: self.ring().to_string(),
        })
        .expect("plain data serializes")
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_coords(f, &self.coeffs)?;
        write!(f, ", {})", self.gen)
    }
}

/// Wire form of a [`FreeElement`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreeElementJson {
    pub gen: String,
    pub coeffs: BTreeMap<String, String>,
    pub ring: String,
}

/// An element of the displacement group, identified with a vector of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Displacement {
    pub vector: Vector,
}

impl Displacement {
    pub fn identity(ring: &RingSpec) -> Self {
        Self {
            vector: Vector::zero(ring),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vector.is_zero()
    }
}

/// The ring of the ideal generated by `generators`, when it is one the
/// library can represent: a principal ideal `(f)` with unit extreme
/// coefficients, or `(1 + ... + t^(n-1), 1 - t)`, whose quotient is `Z_n`.
pub fn ring_for_ideal(generators: &[LaurentPoly]) -> Result<RingSpec> {
    match generators {
        [f] => RingSpec::quotient(f),
        [f, g] => {
            let one_minus_t = reductive_poly(1);
            let other = if *g == one_minus_t || *g == -&one_minus_t {
                f
            } else if *f == one_minus_t || *f == -&one_minus_t {
                g
            } else {
                return Err(Error::UnsupportedIdeal(format!("({f}, {g})")));
            };
            match other.max_exp() {
                Some(d) if d >= 1 && *other == symmetric_poly(d as u64 + 1) => {
                    RingSpec::quotient_mod(&-&one_minus_t, d + 1)
                }
                _ => Err(Error::UnsupportedIdeal(format!("({f}, {g})"))),
            }
        }
        _ => Err(Error::UnsupportedIdeal(format!("{} generators", generators.len()))),
    }
}

/// A free (f-)quandle: a generator set together with a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeQuandle {
    gens: GeneratorSet,
    ring: RingSpec,
}

/// Context whose arithmetic is `Z[t]/f`.
pub fn make_f_quandle_context(gens: GeneratorSet, f: &LaurentPoly) -> Result<FreeQuandle> {
    FreeQuandle::f_quandle(gens, f)
}

impl FreeQuandle {
    pub fn new(gens: GeneratorSet, ring: RingSpec) -> Self {
        Self { gens, ring }
    }

    /// Free medial quandle over `Z[t, t^-1]`.
    pub fn medial(gens: GeneratorSet) -> Self {
        Self::new(gens, RingSpec::Laurent)
    }

    pub fn f_quandle(gens: GeneratorSet, f: &LaurentPoly) -> Result<Self> {
        Ok(Self::new(gens, RingSpec::quotient(f)?))
    }

    /// Free n-symmetric medial quandle: `f = 1 + t + ... + t^(n-1)`.
    pub fn symmetric(gens: GeneratorSet, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadModulus(format!("sym:{n}"), "n must be at least 2".into()));
        }
        Self::f_quandle(gens, &symmetric_poly(n))
    }

    /// Free m-reductive medial quandle: `f = (1 - t)^(m-1)`.
    pub fn reductive(gens: GeneratorSet, m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::BadModulus(format!("red:{m}"), "m must be at least 2".into()));
        }
        Self::f_quandle(gens, &reductive_poly(m - 1))
    }

    /// Free 2-reductive n-symmetric medial quandle, over `Z_n` with `t = 1`.
    pub fn symmetric_reductive2(gens: GeneratorSet, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadModulus(format!("sym:{n}+red:2"), "n must be at least 2".into()));
        }
        Ok(Self::new(gens, ring_for_ideal(&[symmetric_poly(n), reductive_poly(1)])?))
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    /// The basis vector `e_sym`, zero for the base symbol.
    pub fn e(&self, sym: &str) -> Vector {
        let mut v = Vector::zero(&self.ring);
        if sym != self.gens.base() {
            v.add_unit(sym, 1);
        }
        v
    }

    /// The generator `(0, sym)`.
    pub fn generator(&self, sym: &str) -> Result<FreeElement> {
        if !self.gens.contains(sym) {
            return Err(Error::ContextMismatch(format!("{sym:?} is not a generator")));
        }
        Ok(FreeElement {
            coeffs: Vector::zero(&self.ring),
            gen: sym.to_string(),
        })
    }

    pub fn generators(&self) -> Vec<FreeElement> {
        self.gens
            .names()
            .iter()
            .map(|s| self.generator(s).unwrap())
            .collect()
    }

    /// Builds `(a, gen)` from coefficient polynomials keyed by symbol.
    pub fn element<S: AsRef<str>>(
        &self,
        coeffs: impl IntoIterator<Item = (S, LaurentPoly)>,
        gen: &str,
    ) -> Result<FreeElement> {
        let mut v = Vector::zero(&self.ring);
        for (s, p) in coeffs {
            let s = s.as_ref();
            self.check_coordinate(s)?;
            v.add_at(s.to_string(), &p);
        }
        self.from_vector(v, gen)
    }

    pub fn from_vector(&self, coeffs: Vector, gen: &str) -> Result<FreeElement> {
        self.check_vector(&coeffs)?;
        self.generator(gen)?;
        Ok(FreeElement {
            coeffs,
            gen: gen.to_string(),
        })
    }

    fn check_coordinate(&self, s: &str) -> Result<()> {
        if !self.gens.contains(s) {
            return Err(Error::ContextMismatch(format!("{s:?} is not a generator")));
        }
        if s == self.gens.base() {
            return Err(Error::ContextMismatch(format!(
                "{s:?} is the base generator and has no coordinate"
            )));
        }
        Ok(())
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.ring != self.ring {
            return Err(Error::ContextMismatch(format!(
                "vector over {} used in a context over {}",
                v.ring, self.ring
            )));
        }
        v.coords.keys().try_for_each(|s| self.check_coordinate(s))
    }

    fn check(&self, p: &FreeElement) -> Result<()> {
        self.check_vector(&p.coeffs)?;
        if !self.gens.contains(&p.gen) {
            return Err(Error::ContextMismatch(format!("{:?} is not a generator", p.gen)));
        }
        Ok(())
    }

    /// `(a, i) * (b, j) = ((1 - t) a + t b + e_i - e_j, j)`.
    pub fn star(&self, p: &FreeElement, q: &FreeElement) -> Result<FreeElement> {
        self.check(p)?;
        self.check(q)?;
        let mut out = Vector::zero(&self.ring);
        for (s, a) in &p.coeffs.coords {
            out.add_at(s.clone(), &(a - &a.shift(1)));
        }
        for (s, b) in &q.coeffs.coords {
            out.add_at(s.clone(), &b.shift(1));
        }
        self.add_basis_difference(&mut out, &p.gen, &q.gen);
        Ok(FreeElement {
            coeffs: out,
            gen: q.gen.clone(),
        })
    }

    /// `(a, i) \ (b, j) = ((1 - t^-1) a + t^-1 (b + e_j - e_i), j)`.
    pub fn backslash(&self, p: &FreeElement, q: &FreeElement) -> Result<FreeElement> {
        self.check(p)?;
        self.check(q)?;
        let tinv = self.ring.t_inverse_poly();
        // a + t^-1 (b + e_j - e_i - a)
        let mut inner = q.coeffs.sub(&p.coeffs)?;
        self.add_basis_difference(&mut inner, &q.gen, &p.gen);
        let mut out = p.coeffs.clone();
        for (s, c) in &inner.coords {
            out.add_at(s.clone(), &(c * &tinv));
        }
        Ok(FreeElement {
            coeffs: out,
            gen: q.gen.clone(),
        })
    }

    /// `v += e_plus - e_minus`.
    fn add_basis_difference(&self, v: &mut Vector, plus: &str, minus: &str) {
        if plus == minus {
            return;
        }
        let base = self.gens.base();
        if plus != base {
            v.add_unit(plus, 1);
        }
        if minus != base {
            v.add_unit(minus, -1);
        }
    }

    /// Left translation `L_p`.
    pub fn left(&self, p: &FreeElement, q: &FreeElement) -> Result<FreeElement> {
        self.star(p, q)
    }

    /// Right translation `R_q`.
    pub fn right(&self, p: &FreeElement, q: &FreeElement) -> Result<FreeElement> {
        self.star(p, q)
    }

    pub fn displacement_apply(&self, d: &Displacement, p: &FreeElement) -> Result<FreeElement> {
        self.check_vector(&d.vector)?;
        self.check(p)?;
        Ok(FreeElement {
            coeffs: p.coeffs.add(&d.vector)?,
            gen: p.gen.clone(),
        })
    }

    /// The displacement `L_p L_q^-1`, i.e. `(1 - t)(a - b) + e_i - e_j`.
    pub fn displacement_of_pair(&self, p: &FreeElement, q: &FreeElement) -> Result<Displacement> {
        self.check(p)?;
        self.check(q)?;
        let diff = p.coeffs.sub(&q.coeffs)?;
        let mut v = diff.scale(&LaurentPoly::from_coeffs(&[1, -1]));
        self.add_basis_difference(&mut v, &p.gen, &q.gen);
        Ok(Displacement { vector: v })
    }

    /// The basis displacement `L_(0,i) L_(0,z)^-1`, which adds `e_i`.
    pub fn basis_displacement(&self, sym: &str) -> Result<Displacement> {
        self.check_coordinate(sym)?;
        Ok(Displacement { vector: self.e(sym) })
    }

    /// Nonzero coordinates of `p` in declaration order: `p` equals the
    /// product over the list of `(L_(0,i) L_(0,z)^-1)^(f_i)` applied to
    /// `(0, p.gen)`.
    pub fn decompose(&self, p: &FreeElement) -> Vec<(String, RingElement)> {
        self.gens
            .reduced()
            .filter_map(|s| {
                let c = p.coeffs.get(s);
                (!c.is_zero()).then(|| (s.to_string(), c))
            })
            .collect()
    }

    /// Evaluates a decomposition by acting on `(0, gen)` with translations
    /// only: for each term `c t^r` of `f_i`, applies
    /// `(L_z^r (L_(0,i) L_(0,z)^-1) L_z^-r)^c`.
    pub fn reconstruct(&self, gen: &str, word: &[(String, RingElement)]) -> Result<FreeElement> {
        let mut point = self.generator(gen)?;
        let z = self.generator(self.gens.base())?;
        for (sym, f) in word {
            let x = self.generator(sym)?;
            for (r, c) in f.value().terms() {
                let times = c.abs();
                let mut k = BigInt::zero();
                while k < times {
                    point = self.conjugate_shift(&z, r, -1, &point)?;
                    point = if c.is_positive() {
                        self.star(&x, &self.backslash(&z, &point)?)?
                    } else {
                        self.star(&z, &self.backslash(&x, &point)?)?
                    };
                    point = self.conjugate_shift(&z, r, 1, &point)?;
                    k += 1;
                }
            }
        }
        Ok(point)
    }

    /// Applies `L_z^(sign * r)`.
    fn conjugate_shift(&self, z: &FreeElement, r: i64, sign: i64, p: &FreeElement) -> Result<FreeElement> {
        let k = r * sign;
        let mut p = p.clone();
        for _ in 0..k.unsigned_abs() {
            p = if k > 0 { self.star(z, &p)? } else { self.backslash(z, &p)? };
        }
        Ok(p)
    }

    /// `(g, i) -> (1 - t) g + e_i`, the right translation by `(0, z)`
    /// followed by dropping the (constant) generator.
    pub fn embed_affine(&self, p: &FreeElement) -> Result<Vector> {
        self.check(p)?;
        let mut v = p.coeffs.scale(&LaurentPoly::from_coeffs(&[1, -1]));
        if p.gen != self.gens.base() {
            v.add_unit(&p.gen, 1);
        }
        Ok(v)
    }

    /// Inverse of [`embed_affine`](Self::embed_affine) on its image.
    ///
    /// The image is `{a : a = e_i mod (1 - t)}`. Over the Laurent ring that
    /// is `Λ(a) = e_i` in `Z^(X\{z})`; over `Z[t]/f` with `f(1) = ±N`,
    /// `N >= 2`, it is the same congruence read modulo `N`.
    pub fn unembed_affine(&self, a: &Vector) -> Result<FreeElement> {
        self.check_vector(a)?;
        let modulus = match &self.ring {
            RingSpec::Laurent => None,
            RingSpec::Quotient(m) => {
                if m.characteristic().is_some() {
                    return Err(Error::WrongContext(
                        "affine embedding over a finite coefficient ring is not injective".into(),
                    ));
                }
                let n = m.poly().eval_at_one();
                if n.is_zero() {
                    return Err(Error::WrongContext(format!(
                        "1 - t is a zero divisor modulo {}; the embedding is not injective",
                        m.poly()
                    )));
                }
                if n.abs().is_one() {
                    return Err(Error::WrongContext(format!(
                        "1 - t is a unit modulo {}; the embedding is not injective",
                        m.poly()
                    )));
                }
                Some((m.poly().clone(), n))
            }
        };
        let lambda = a.augmentation(&self.gens);
        let residue = |v: &BigInt| match &modulus {
            None => v.clone(),
            Some((_, n)) => v.mod_floor(&n.abs()),
        };
        let mut gen = self.gens.base().to_string();
        let mut ones = 0;
        for (s, v) in self.gens.reduced().zip(&lambda) {
            let r = residue(v);
            if r.is_one() {
                ones += 1;
                gen = s.to_string();
            } else if !r.is_zero() {
                ones = usize::MAX;
                break;
            }
        }
        if ones > 1 {
            return Err(Error::NotInImage(format!(
                "augmentation ({}) is not a basis vector",
                lambda.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
            )));
        }
        let mut shifted = a.clone();
        if gen != self.gens.base() {
            shifted.add_unit(&gen, -1);
        }
        let mut g = Vector::zero(&self.ring);
        for (s, p) in shifted.coords() {
            let lifted = match &modulus {
                None => p.clone(),
                Some((f, n)) => {
                    let c = -(p.eval_at_one() / n);
                    p + &f.scale(&c)
                }
            };
            g.add_at(s.to_string(), &lifted.divide_by_one_minus_t()?);
        }
        self.from_vector(g, &gen)
    }

    /// `(g, i) -> 2g + e_i` in the involutory context `Z[t]/(1 + t)`.
    pub fn joyce_isomorphism(&self, p: &FreeElement) -> Result<Vec<BigInt>> {
        self.check(p)?;
        let involutory = RingSpec::quotient(&symmetric_poly(2))?;
        if self.ring != involutory {
            return Err(Error::WrongContext(format!(
                "Joyce model needs the ring mod 1 + t, not {}",
                self.ring
            )));
        }
        Ok(self
            .gens
            .reduced()
            .map(|s| {
                let g = p.coeffs.coords.get(s).map(|c| c.coeff(0)).unwrap_or_default();
                let e = if s == p.gen { BigInt::one() } else { BigInt::zero() };
                g * 2 + e
            })
            .collect())
    }

    pub fn element_from_json(&self, value: &serde_json::Value) -> Result<FreeElement> {
        let wire: FreeElementJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::ContextMismatch(format!("bad element JSON: {e}")))?;
        let ring: RingSpec = wire.ring.parse()?;
        if ring != self.ring {
            return Err(Error::ContextMismatch(format!(
                "element over {ring} used in a context over {}",
                self.ring
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|(s, p)| Ok((s.as_str(), p.parse::<LaurentPoly>()?)))
            .collect::<Result<Vec<_>>>()?;
        self.element(coeffs, &wire.gen)
    }

    /// A random element with coefficients of `|c| <= max_coeff` on exponents
    /// `-max_deg..=max_deg` (only `0..=max_deg` outside the Laurent ring,
    /// before reduction).
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, max_deg: i64, max_coeff: i64) -> FreeElement {
        let gen = self.gens.names()[rng.gen_range(0..self.gens.len())].clone();
        let low = if self.ring.is_laurent() { -max_deg } else { 0 };
        let mut v = Vector::zero(&self.ring);
        for s in self.gens.reduced() {
            let mut p = LaurentPoly::zero();
            for e in low..=max_deg {
                if rng.gen_bool(0.5) {
                    p.add_term(e, BigInt::from(rng.gen_range(-max_coeff..=max_coeff)));
                }
            }
            v.add_at(s.to_string(), &p);
        }
        FreeElement { coeffs: v, gen }
    }
}

/// `a * b = 2a - b` on integer vectors with at most one odd coordinate.
pub fn joyce_model_star(a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>> {
    if a.len() != b.len() {
        return Err(Error::ContextMismatch(format!(
            "vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    for v in [a, b] {
        if !in_joyce_model(v) {
            return Err(Error::NotInModel(format_int_vector(v)));
        }
    }
    Ok(a.iter().zip(b).map(|(x, y)| x * 2 - y).collect())
}

/// At most one odd coordinate.
pub fn in_joyce_model(v: &[BigInt]) -> bool {
    v.iter().filter(|c| c.is_odd()).count() <= 1
}

pub(crate) fn format_int_vector(v: &[BigInt]) -> String {
    format!(
        "[{}]",
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn xy() -> FreeQuandle {
        FreeQuandle::medial(GeneratorSet::new(["x", "y"]).unwrap())
    }

    fn three() -> FreeQuandle {
        FreeQuandle::medial(GeneratorSet::numbered(3).unwrap())
    }

    #[test]
    fn generator_set_validation() {
        assert!(GeneratorSet::new(Vec::<String>::new()).is_err());
        assert!(GeneratorSet::new(["a", "a"]).is_err());
        assert!(GeneratorSet::with_base(["a", "b"], "c").is_err());
        let g = GeneratorSet::with_base(["a", "b", "c"], "b").unwrap();
        assert_eq!(g.reduced().collect::<Vec<_>>(), vec!["a", "c"]);
    }

    #[test]
    fn star_examples() {
        let f = xy();
        let x = f.generator("x").unwrap();
        let y = f.generator("y").unwrap();
        assert_eq!(f.star(&x, &x).unwrap(), x);
        let xy = f.star(&x, &y).unwrap();
        assert_eq!(xy, f.element([("y", p("-1"))], "y").unwrap());
        let yx = f.star(&y, &x).unwrap();
        assert_eq!(yx, f.element([("y", p("1"))], "x").unwrap());
        assert_eq!(xy.to_string(), "(-e_y, y)");
    }

    #[test]
    fn backslash_examples() {
        let f = xy();
        let x = f.generator("x").unwrap();
        let y = f.generator("y").unwrap();
        assert_eq!(f.backslash(&x, &x).unwrap(), x);
        let r = f.backslash(&x, &y).unwrap();
        assert_eq!(r, f.element([("y", p("t^-1"))], "y").unwrap());
        assert_eq!(f.star(&x, &r).unwrap(), y);
    }

    #[test]
    fn context_mismatch() {
        let f = xy();
        let other = FreeQuandle::symmetric(GeneratorSet::new(["x", "y"]).unwrap(), 2).unwrap();
        let a = f.generator("x").unwrap();
        let b = other.generator("y").unwrap();
        assert!(matches!(f.star(&a, &b), Err(Error::ContextMismatch(_))));
        assert!(f.generator("w").is_err());
        assert!(f.element([("x", p("1"))], "y").is_err());
    }

    #[test]
    fn displacement_examples() {
        let f = three();
        let c = f.element([("1", p("3 - t")), ("2", p("t^2"))], "1").unwrap();
        let zero = Displacement::identity(f.ring());
        assert_eq!(f.displacement_apply(&zero, &c).unwrap(), c);
        let e1 = f.basis_displacement("1").unwrap();
        let moved = f.displacement_apply(&e1, &c).unwrap();
        assert_eq!(moved, f.element([("1", p("4 - t")), ("2", p("t^2"))], "1").unwrap());
        let t5e2 = Displacement {
            vector: Vector::from_coords(f.ring(), [("2", p("t^5"))]),
        };
        let moved = f.displacement_apply(&t5e2, &c).unwrap();
        assert_eq!(moved.coeffs().get("2").value(), &p("t^2 + t^5"));

        let g1 = f.generator("1").unwrap();
        let g0 = f.generator("0").unwrap();
        assert!(f.displacement_of_pair(&c, &c).unwrap().is_identity());
        assert_eq!(f.displacement_of_pair(&g1, &g0).unwrap(), e1);
    }

    #[test]
    fn displacement_of_pair_matches_translations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = three();
        for _ in 0..20 {
            let a = f.random_element(&mut rng, 2, 5);
            let b = f.random_element(&mut rng, 2, 5);
            let d = f.displacement_of_pair(&a, &b).unwrap();
            for _ in 0..5 {
                let c = f.random_element(&mut rng, 2, 5);
                let via_ops = f.star(&a, &f.backslash(&b, &c).unwrap()).unwrap();
                assert_eq!(f.displacement_apply(&d, &c).unwrap(), via_ops);
            }
        }
    }

    #[test]
    fn worked_example_decomposition() {
        let f = three();
        let a = f.element([("1", p("1")), ("2", p("t"))], "2").unwrap();
        let word = f.decompose(&a);
        assert_eq!(word.len(), 2);
        assert_eq!((word[0].0.as_str(), word[0].1.value()), ("1", &p("1")));
        assert_eq!((word[1].0.as_str(), word[1].1.value()), ("2", &p("t")));
        assert_eq!(f.reconstruct("2", &word).unwrap(), a);
        assert!(f.decompose(&f.generator("1").unwrap()).is_empty());

        let v = f.embed_affine(&a).unwrap();
        assert_eq!(v, Vector::from_coords(f.ring(), [("1", p("1 - t")), ("2", p("1 + t - t^2"))]));
        assert_eq!(v.augmentation(f.gens()), vec![BigInt::zero(), BigInt::one()]);
        assert_eq!(f.unembed_affine(&v).unwrap(), a);
    }

    #[test]
    fn embedding_examples() {
        let f = three();
        assert!(f.embed_affine(&f.generator("0").unwrap()).unwrap().is_zero());
        assert_eq!(f.embed_affine(&f.generator("2").unwrap()).unwrap(), f.e("2"));
        assert_eq!(f.unembed_affine(&Vector::zero(f.ring())).unwrap(), f.generator("0").unwrap());
        let bad = Vector::from_coords(f.ring(), [("1", p("3"))]);
        assert!(matches!(f.unembed_affine(&bad), Err(Error::NotInImage(_))));
        let bad = Vector::from_coords(f.ring(), [("1", p("1")), ("2", p("1"))]);
        assert!(matches!(f.unembed_affine(&bad), Err(Error::NotInImage(_))));
    }

    #[test]
    fn unembed_in_symmetric_context() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 3, 4, 6] {
            let f = FreeQuandle::symmetric(GeneratorSet::numbered(3).unwrap(), n).unwrap();
            for _ in 0..50 {
                let a = f.random_element(&mut rng, 4, 9);
                let v = f.embed_affine(&a).unwrap();
                assert_eq!(f.unembed_affine(&v).unwrap(), a, "n = {n}");
            }
        }
        let red = FreeQuandle::reductive(GeneratorSet::numbered(2).unwrap(), 3).unwrap();
        assert!(matches!(red.unembed_affine(&Vector::zero(red.ring())), Err(Error::WrongContext(_))));
    }

    #[test]
    fn f_quandle_specialisations() {
        let gens = GeneratorSet::new(["x", "y"]).unwrap();
        // t = -1: (a,i)*(b,j) = (2a - b + e_i - e_j, j)
        let sym = FreeQuandle::symmetric(gens.clone(), 2).unwrap();
        let a = sym.element([("y", p("3"))], "x").unwrap();
        let b = sym.element([("y", p("5"))], "y").unwrap();
        assert_eq!(sym.star(&a, &b).unwrap(), sym.element([("y", p("0"))], "y").unwrap());
        // t = 1: (a,i)*(b,j) = (b + e_i - e_j, j)
        let red = FreeQuandle::reductive(gens.clone(), 2).unwrap();
        let a = red.element([("y", p("3"))], "x").unwrap();
        let b = red.element([("y", p("5"))], "y").unwrap();
        assert_eq!(red.star(&a, &b).unwrap(), red.element([("y", p("4"))], "y").unwrap());
        assert!(matches!(
            FreeQuandle::f_quandle(gens.clone(), &p("2 + t")),
            Err(Error::BadModulus(..))
        ));
        let z4 = FreeQuandle::symmetric_reductive2(gens, 4).unwrap();
        let a = z4.element([("y", p("3"))], "x").unwrap();
        let b = z4.element([("y", p("3"))], "y").unwrap();
        assert_eq!(z4.star(&a, &b).unwrap(), z4.element([("y", p("2"))], "y").unwrap());
    }

    #[test]
    fn ideals() {
        assert!(ring_for_ideal(&[p("1 + t + t^2"), p("1 - t")]).is_ok());
        assert!(ring_for_ideal(&[p("1 - t"), p("1 + t")]).is_ok());
        assert!(matches!(
            ring_for_ideal(&[p("1 + t + t^2"), p("1 - 2t + t^2")]),
            Err(Error::UnsupportedIdeal(_))
        ));
        assert!(matches!(ring_for_ideal(&[]), Err(Error::UnsupportedIdeal(_))));
    }

    #[test]
    fn joyce_model_examples() {
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(joyce_model_star(&v(&[3, 2]), &v(&[3, 2])).unwrap(), v(&[3, 2]));
        assert_eq!(joyce_model_star(&v(&[0, 0]), &v(&[1, 0])).unwrap(), v(&[-1, 0]));
        assert_eq!(joyce_model_star(&v(&[1, 0]), &v(&[0, 1])).unwrap(), v(&[2, -1]));
        assert!(matches!(
            joyce_model_star(&v(&[1, 1]), &v(&[0, 0])),
            Err(Error::NotInModel(_))
        ));
    }

    #[test]
    fn joyce_isomorphism_examples() {
        let f = FreeQuandle::symmetric(GeneratorSet::numbered(3).unwrap(), 2).unwrap();
        let zero = vec![BigInt::zero(); 2];
        assert_eq!(f.joyce_isomorphism(&f.generator("0").unwrap()).unwrap(), zero);
        assert_eq!(
            f.joyce_isomorphism(&f.generator("2").unwrap()).unwrap(),
            vec![BigInt::zero(), BigInt::one()]
        );
        assert!(matches!(
            three().joyce_isomorphism(&three().generator("0").unwrap()),
            Err(Error::WrongContext(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let f = three();
        let a = f.element([("1", p("1 - t^-2")), ("2", p("t"))], "2").unwrap();
        let j = a.to_json();
        assert_eq!(j["gen"], "2");
        assert_eq!(j["ring"], "laurent");
        assert_eq!(j["coeffs"]["1"], "-t^-2 + 1");
        assert_eq!(f.element_from_json(&j).unwrap(), a);
        let sym = FreeQuandle::symmetric(GeneratorSet::numbered(3).unwrap(), 3).unwrap();
        assert!(sym.element_from_json(&j).is_err());
    }

    #[test]
    fn single_generator_context() {
        let f = FreeQuandle::medial(GeneratorSet::new(["x"]).unwrap());
        let x = f.generator("x").unwrap();
        assert_eq!(f.star(&x, &x).unwrap(), x);
        assert_eq!(f.backslash(&x, &x).unwrap(), x);
        assert!(f.embed_affine(&x).unwrap().is_zero());
        assert_eq!(f.unembed_affine(&Vector::zero(f.ring())).unwrap(), x);
        assert!(f.decompose(&x).is_empty());
    }
}
