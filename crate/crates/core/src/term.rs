//! Quandle terms over `*` and `\`, their normal forms in free (f-)quandles,
//! and decisions of identities in the medial variety and its subvarieties.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! term  := atom (op atom)*
//! op    := "*" | "\" | "bs"
//! atom  := identifier | "(" term ")"
//! ident := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Both operators share one precedence level and associate to the left, so
//! `x * y \ z` is `(x * y) \ z`. `bs` is read as an operator only where an
//! operator is expected, so a variable may still be called `bs`.

use std::fmt;
use std::str::FromStr;

use crate::cyclotomic::{reductive_poly, symmetric_poly};
use crate::error::{Error, Result};
use crate::free::{ring_for_ideal, FreeElement, FreeQuandle, GeneratorSet};
use crate::poly::LaurentPoly;
use crate::ring::RingSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Star,
    Backslash,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Star(Box<Term>, Box<Term>),
    Backslash(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn star(l: Term, r: Term) -> Self {
        Term::Star(Box::new(l), Box::new(r))
    }

    pub fn backslash(l: Term, r: Term) -> Self {
        Term::Backslash(Box::new(l), Box::new(r))
    }

    pub fn apply(op: Op, l: Term, r: Term) -> Self {
        match op {
            Op::Star => Term::star(l, r),
            Op::Backslash => Term::backslash(l, r),
        }
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Star(l, r) | Term::Backslash(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Number of variable occurrences.
    pub fn leaves(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Star(l, r) | Term::Backslash(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Bottom-up evaluation with caller-supplied leaves and operations.
    pub fn eval<T, E>(
        &self,
        leaf: &mut impl FnMut(&str) -> std::result::Result<T, E>,
        op: &mut impl FnMut(Op, T, T) -> std::result::Result<T, E>,
    ) -> std::result::Result<T, E> {
        match self {
            Term::Var(v) => leaf(v),
            Term::Star(l, r) => {
                let a = l.eval(leaf, op)?;
                let b = r.eval(leaf, op)?;
                op(Op::Star, a, b)
            }
            Term::Backslash(l, r) => {
                let a = l.eval(leaf, op)?;
                let b = r.eval(leaf, op)?;
                op(Op::Backslash, a, b)
            }
        }
    }

    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(v)),
            Term::Star(l, r) => Term::star(l.rename(f), r.rename(f)),
            Term::Backslash(l, r) => Term::backslash(l.rename(f), r.rename(f)),
        }
    }

    /// `x * (x * ( ... * (x * y)))` with `k` left factors.
    pub fn symmetry_ladder(x: &str, y: &str, k: usize) -> Term {
        (0..k).fold(Term::var(y), |acc, _| Term::star(Term::var(x), acc))
    }

    /// `((x * y) * y) ... * y` with `k` right factors.
    pub fn reductivity_ladder(x: &str, y: &str, k: usize) -> Term {
        (0..k).fold(Term::var(x), |acc, _| Term::star(acc, Term::var(y)))
    }
}

/// Minimal parentheses under left associativity.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Star(l, r) | Term::Backslash(l, r) => {
                let sym = if matches!(self, Term::Star(..)) { "*" } else { "\\" };
                write!(f, "{l} {sym} ")?;
                match **r {
                    Term::Var(_) => write!(f, "{r}"),
                    _ => write!(f, "({r})"),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Op(Op),
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'*' => {
                out.push((i, Token::Op(Op::Star)));
                i += 1;
            }
            b'\\' => {
                out.push((i, Token::Op(Op::Backslash)));
                i += 1;
            }
            b'(' => {
                out.push((i, Token::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Token::Close));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character {:?}", src[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.atom()?;
        loop {
            let op = match self.tokens.get(self.pos) {
                Some((_, Token::Op(op))) => *op,
                Some((_, Token::Ident(s))) if s == "bs" => Op::Backslash,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.atom()?;
            acc = Term::apply(op, acc, rhs);
        }
    }

    fn atom(&mut self) -> Result<Term> {
        match self.tokens.get(self.pos).cloned() {
            Some((_, Token::Ident(name))) => {
                self.pos += 1;
                Ok(Term::Var(name))
            }
            Some((_, Token::Open)) => {
                self.pos += 1;
                let inner = self.term()?;
                match self.tokens.get(self.pos) {
                    Some((_, Token::Close)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some((_, Token::Close)) => self.err("unexpected `)`"),
            Some((_, Token::Op(_))) => self.err("expected a variable or `(`, found an operator"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(src: &str) -> Result<Term> {
    let mut p = Parser {
        tokens: tokenize(src)?,
        pos: 0,
        end: src.len(),
    };
    let t = p.term()?;
    if p.pos < p.tokens.len() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

impl FromStr for Term {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// A variety of medial quandles, each with its free-algebra coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietySpec {
    Medial,
    /// n-symmetric: `L_x^n = 1`.
    Symmetric(u64),
    /// m-reductive: `R_x^m(y) = x`.
    Reductive(u32),
    /// 2-reductive and n-symmetric.
    SymmetricReductive2(u64),
    /// f-quandles for a modulus with unit extreme coefficients.
    CustomModulus(LaurentPoly),
}

impl VarietySpec {
    pub fn ring(&self) -> Result<RingSpec> {
        match self {
            VarietySpec::Medial => Ok(RingSpec::Laurent),
            VarietySpec::Symmetric(n) if *n >= 2 => RingSpec::quotient(&symmetric_poly(*n)),
            VarietySpec::Reductive(m) if *m >= 2 => RingSpec::quotient(&reductive_poly(m - 1)),
            VarietySpec::SymmetricReductive2(n) if *n >= 2 => {
                ring_for_ideal(&[symmetric_poly(*n), reductive_poly(1)])
            }
            VarietySpec::CustomModulus(f) => RingSpec::quotient(f),
            other => Err(Error::BadModulus(
                other.to_string(),
                "symmetry and reductivity orders must be at least 2".into(),
            )),
        }
    }

    pub fn context(&self, gens: GeneratorSet) -> Result<FreeQuandle> {
        Ok(FreeQuandle::new(gens, self.ring()?))
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Medial => write!(f, "medial"),
            VarietySpec::Symmetric(n) => write!(f, "sym:{n}"),
            VarietySpec::Reductive(m) => write!(f, "red:{m}"),
            VarietySpec::SymmetricReductive2(n) => write!(f, "sym:{n}+red:2"),
            VarietySpec::CustomModulus(p) => write!(f, "mod:{p}"),
        }
    }
}

/// `medial`, `sym:<n>`, `red:<m>`, `sym:<n>+red:2` (either order), `mod:<poly>`.
impl FromStr for VarietySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::BadModulus(s.to_string(), msg.to_string());
        if s == "medial" {
            return Ok(VarietySpec::Medial);
        }
        if let Some(poly) = s.strip_prefix("mod:") {
            let v = VarietySpec::CustomModulus(poly.parse()?);
            v.ring()?;
            return Ok(v);
        }
        let mut sym = None;
        let mut red = None;
        for part in s.split('+') {
            let (kind, num) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| bad("expected medial, sym:<n>, red:<m>, sym:<n>+red:2 or mod:<poly>"))?;
            let num: u64 = num.trim().parse().map_err(|_| bad("expected a positive integer"))?;
            let slot = match kind.trim() {
                "sym" => &mut sym,
                "red" => &mut red,
                _ => return Err(bad("unknown variety kind")),
            };
            if slot.replace(num).is_some() {
                return Err(bad("repeated variety kind"));
            }
        }
        let v = match (sym, red) {
            (Some(n), None) => VarietySpec::Symmetric(n),
            (None, Some(m)) => VarietySpec::Reductive(
                u32::try_from(m).map_err(|_| bad("reductivity order too large"))?,
            ),
            (Some(n), Some(2)) => VarietySpec::SymmetricReductive2(n),
            (Some(n), Some(m)) => {
                return Err(Error::UnsupportedIdeal(format!(
                    "sym:{n}+red:{m}: only the 2-reductive combination is supported"
                )))
            }
            (None, None) => unreachable!("split yields at least one part"),
        };
        v.ring()?;
        Ok(v)
    }
}

/// Evaluates `term` in `ctx`, sending each variable to its generator.
pub fn normalize_in(ctx: &FreeQuandle, term: &Term) -> Result<FreeElement> {
    term.eval(&mut |v| ctx.generator(v), &mut |op, a, b| match op {
        Op::Star => ctx.star(&a, &b),
        Op::Backslash => ctx.backslash(&a, &b),
    })
}

/// Normal form of `term` in the free algebra of `variety` over the term's
/// variables (first occurrence order; the first is the base generator).
pub fn normalize(term: &Term, variety: &VarietySpec) -> Result<FreeElement> {
    let ctx = variety.context(GeneratorSet::new(term.vars())?)?;
    normalize_in(&ctx, term)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid(FreeElement),
    Invalid(FreeElement, FreeElement),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid(_))
    }

    pub fn normal_forms(&self) -> (&FreeElement, &FreeElement) {
        match self {
            Verdict::Valid(nf) => (nf, nf),
            Verdict::Invalid(l, r) => (l, r),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (l, r) = self.normal_forms();
        serde_json::json!({
            "verdict": if self.is_valid() { "valid" } else { "invalid" },
            "lhs_nf": l.to_json(),
            "rhs_nf": r.to_json(),
        })
    }
}

/// Generators for an identity: variables of `lhs`, then new ones of `rhs`.
pub fn identity_generators(lhs: &Term, rhs: &Term) -> Result<GeneratorSet> {
    let mut vars = lhs.vars();
    for v in rhs.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    GeneratorSet::new(vars)
}

/// `lhs ≈ rhs` holds throughout `variety` iff both sides have the same
/// normal form in its free algebra over the union of their variables.
pub fn decide_identity(lhs: &Term, rhs: &Term, variety: &VarietySpec) -> Result<Verdict> {
    let ctx = variety.context(identity_generators(lhs, rhs)?)?;
    let l = normalize_in(&ctx, lhs)?;
    let r = normalize_in(&ctx, rhs)?;
    Ok(if l == r { Verdict::Valid(l) } else { Verdict::Invalid(l, r) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    fn new(name: impl Into<String>, lhs: &str, rhs: &str) -> Self {
        Self {
            name: name.into(),
            lhs: parse(lhs).expect("catalogue terms parse"),
            rhs: parse(rhs).expect("catalogue terms parse"),
        }
    }

    pub fn decide(&self, variety: &VarietySpec) -> Result<Verdict> {
        decide_identity(&self.lhs, &self.rhs, variety)
    }
}

pub const MAX_LADDER: usize = 12;

/// The fixed catalogue: quandle and medial laws, commutativity, the
/// symmetry ladder `symmetric-k` (`k <= 12`) and the reductivity ladder
/// `reductive-m` (`m <= 4`).
pub fn builtin_identities() -> Vec<Identity> {
    let mut out = vec![
        Identity::new("idempotency", "x * x", "x"),
        Identity::new("left-distributivity", "x * (y * z)", "(x * y) * (x * z)"),
        Identity::new("right-distributivity", "(x * y) * z", "(x * z) * (y * z)"),
        Identity::new("mediality", "(x * y) * (u * v)", "(x * u) * (y * v)"),
        Identity::new("left-quasigroup-cancel", "x \\ (x * y)", "y"),
        Identity::new("left-quasigroup-solve", "x * (x \\ y)", "y"),
        Identity::new("commutativity", "x * y", "y * x"),
        Identity::new("involutory", "x * (x * y)", "y"),
        Identity::new("2-reductivity", "(x * y) * y", "y"),
    ];
    for k in 1..=MAX_LADDER {
        out.push(Identity {
            name: format!("symmetric-{k}"),
            lhs: Term::symmetry_ladder("x", "y", k),
            rhs: Term::var("y"),
        });
    }
    for m in 1..=4 {
        out.push(Identity {
            name: format!("reductive-{m}"),
            lhs: Term::reductivity_ladder("x", "y", m),
            rhs: Term::var("y"),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(t("x * y"), Term::star(Term::var("x"), Term::var("y")));
        assert_eq!(
            t("x \\ (x * y)"),
            Term::backslash(Term::var("x"), Term::star(Term::var("x"), Term::var("y")))
        );
        assert_eq!(
            t("x * y * z"),
            Term::star(Term::star(Term::var("x"), Term::var("y")), Term::var("z"))
        );
        assert_eq!(t("x bs (x*y)"), t("x \\ (x * y)"));
        assert_eq!(t("bs bs bs"), Term::backslash(Term::var("bs"), Term::var("bs")));
        assert_eq!(t("((a1))"), Term::var("a1"));
    }

    #[test]
    fn parse_errors() {
        for (src, pos) in [("x *", 3), ("(x * y", 6), ("x y", 2), ("* x", 0), ("x + y", 2), ("", 0)] {
            match parse(src) {
                Err(Error::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{src:?}"),
                other => panic!("{src:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["x", "x * y * z", "x * (y * z)", "x \\ y * (u * v)", "x \\ (x * (y \\ z))"] {
            assert_eq!(t(s).to_string(), s);
            assert_eq!(t(&t(s).to_string()), t(s));
        }
    }

    #[test]
    fn normalize_examples() {
        let x = normalize(&t("x"), &VarietySpec::Medial).unwrap();
        assert_eq!(x.to_string(), "(0, x)");
        let xy = normalize(&t("x * y"), &VarietySpec::Medial).unwrap();
        assert_eq!(xy.to_string(), "(-e_y, y)");
        let xxy = normalize(&t("x * (x * y)"), &VarietySpec::Medial).unwrap();
        assert_eq!(xxy.gen(), "y");
        assert_eq!(xxy.coeffs().get("y").value(), &p("-1 - t"));
        assert_eq!(xxy.to_string(), "((-1 - t)·e_y, y)");
    }

    #[test]
    fn decide_examples() {
        let med = VarietySpec::Medial;
        assert!(decide_identity(&t("(x*y)*(u*v)"), &t("(x*u)*(y*v)"), &med).unwrap().is_valid());
        match decide_identity(&t("x*y"), &t("y*x"), &med).unwrap() {
            Verdict::Invalid(l, r) => {
                assert_eq!(l.to_string(), "(-e_y, y)");
                assert_eq!(r.to_string(), "(e_y, x)");
            }
            v => panic!("{v:?}"),
        }
        let inv = (t("x*(x*y)"), t("y"));
        assert!(decide_identity(&inv.0, &inv.1, &VarietySpec::Symmetric(2)).unwrap().is_valid());
        assert!(!decide_identity(&inv.0, &inv.1, &med).unwrap().is_valid());
        assert!(decide_identity(&t("(x*y)*y"), &t("y"), &VarietySpec::Reductive(2)).unwrap().is_valid());
    }

    #[test]
    fn catalogue_verdicts() {
        let cat = builtin_identities();
        let get = |name: &str| cat.iter().find(|i| i.name == name).unwrap();
        let all = [
            VarietySpec::Medial,
            VarietySpec::Symmetric(2),
            VarietySpec::Symmetric(5),
            VarietySpec::Reductive(2),
            VarietySpec::Reductive(4),
            VarietySpec::SymmetricReductive2(3),
            VarietySpec::CustomModulus(p("1 - t + t^2")),
        ];
        for v in &all {
            for name in [
                "idempotency",
                "left-distributivity",
                "right-distributivity",
                "mediality",
                "left-quasigroup-cancel",
                "left-quasigroup-solve",
            ] {
                assert!(get(name).decide(v).unwrap().is_valid(), "{name} in {v}");
            }
        }
        assert!(!get("commutativity").decide(&VarietySpec::Medial).unwrap().is_valid());
    }

    #[test]
    fn symmetry_ladder() {
        for n in [2u64, 3, 4, 6] {
            for k in 1..=MAX_LADDER {
                let v = decide_identity(
                    &Term::symmetry_ladder("x", "y", k),
                    &Term::var("y"),
                    &VarietySpec::Symmetric(n),
                )
                .unwrap();
                assert_eq!(v.is_valid(), k as u64 % n == 0, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn reductivity_ladder() {
        for m in 2..=5u32 {
            for k in 1..=6 {
                let v = decide_identity(
                    &Term::reductivity_ladder("x", "y", k),
                    &Term::var("y"),
                    &VarietySpec::Reductive(m),
                )
                .unwrap();
                assert_eq!(v.is_valid(), k >= m as usize, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn variety_strings() {
        for s in ["medial", "sym:3", "red:2", "sym:4+red:2", "mod:1 - t + t^2"] {
            let v: VarietySpec = s.parse().unwrap();
            assert_eq!(v.to_string().parse::<VarietySpec>().unwrap(), v);
        }
        assert_eq!("red:2+sym:5".parse::<VarietySpec>().unwrap(), VarietySpec::SymmetricReductive2(5));
        assert!(matches!("sym:3+red:3".parse::<VarietySpec>(), Err(Error::UnsupportedIdeal(_))));
        assert!("sym:1".parse::<VarietySpec>().is_err());
        assert!("mod:2 + t".parse::<VarietySpec>().is_err());
        assert!("cyclic:3".parse::<VarietySpec>().is_err());
    }

    #[test]
    fn renaming_commutes_with_normalization() {
        let term = t("(a * b) \\ (c * (a * b))");
        let rename = |s: &str| format!("{s}{s}");
        let nf = normalize(&term, &VarietySpec::Medial).unwrap();
        let renamed = normalize(&term.rename(&rename), &VarietySpec::Medial).unwrap();
        assert_eq!(renamed.gen(), rename(nf.gen()));
        let orig: Vec<_> = nf.coeffs().coords().map(|(s, p)| (rename(s), p.clone())).collect();
        let got: Vec<_> = renamed.coeffs().coords().map(|(s, p)| (s.to_string(), p.clone())).collect();
        assert_eq!(orig, got);
    }
}
