//! Sparse Laurent polynomials over the integers, the ring `Z[t, t^-1]`.
//!
//! A [`LaurentPoly`] is an exponent-to-coefficient map with no zero entries;
//! the zero polynomial is the empty map. Exponents may be negative and
//! coefficients are arbitrary precision.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// Builds `c[0] + c[1] t + c[2] t^2 + ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs_at(0, coeffs)
    }

    /// Builds `c[0] t^low + c[1] t^(low+1) + ...`.
    pub fn from_coeffs_at(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(low + k as i64, BigInt::from(c));
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Leading term `(exponent, coefficient)`.
    pub fn leading(&self) -> Option<(i64, &BigInt)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    /// True when no exponent is negative, i.e. the polynomial lies in `Z[t]`.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 0)
    }

    /// Adds `c t^exp` in place, keeping the map free of zeros.
    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Removes and returns the coefficient at `exp`.
    pub(crate) fn take_term(&mut self, exp: i64) -> Option<BigInt> {
        self.terms.remove(&exp)
    }

    /// `self + c * t^shift * other`, in place.
    pub fn add_scaled_shifted(&mut self, other: &LaurentPoly, c: &BigInt, shift: i64) {
        if c.is_zero() {
            return;
        }
        for (&e, d) in &other.terms {
            self.add_term(e + shift, c * d);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, d)| (e, d * c)).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the evaluation homomorphism `t -> 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient `q` with `(1 - t) q = self`.
    pub fn divide_by_one_minus_t(&self) -> Result<LaurentPoly> {
        let total = self.eval_at_one();
        if !total.is_zero() {
            return Err(Error::NotDivisible(self.to_string(), total.to_string()));
        }
        // q_e - q_{e-1} = p_e, so q_e is the running sum of p up to e.
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Ok(Self::zero());
        };
        let mut q = Self::zero();
        let mut running = BigInt::zero();
        for e in lo..hi {
            if let Some(c) = self.terms.get(&e) {
                running += c;
            }
            q.add_term(e, running.clone());
        }
        Ok(q)
    }

    /// Division with remainder in `Z[t]` by a divisor whose leading
    /// coefficient is a unit. Both operands must be ordinary polynomials.
    pub fn div_rem_unit(&self, divisor: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        let Some((dd, lead)) = divisor.leading() else {
            return Err(Error::BadModulus(divisor.to_string(), "division by zero".into()));
        };
        if !(lead.is_one() || (-lead).is_one()) {
            return Err(Error::BadModulus(
                divisor.to_string(),
                "leading coefficient is not a unit".into(),
            ));
        }
        if !self.is_polynomial() || !divisor.is_polynomial() {
            return Err(Error::BadModulus(
                divisor.to_string(),
                "division needs polynomials without negative exponents".into(),
            ));
        }
        let lead = lead.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading() {
            if e < dd {
                break;
            }
            // lead is +-1, so c / lead == c * lead
            let factor = c * &lead;
            quot.add_term(e - dd, factor.clone());
            rem.add_scaled_shifted(divisor, &(-factor), e - dd);
        }
        Ok((quot, rem))
    }

    /// Exact division; fails if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (q, r) = self.div_rem_unit(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible(self.to_string(), format!("remainder {r}")))
        }
    }

    pub(crate) fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, f(c))))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e, c) in &self.terms {
            for (&f, d) in &rhs.terms {
                out.add_term(e + f, c * d);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, abs: &BigInt, exp: i64) -> fmt::Result {
    match (exp, abs.is_one()) {
        (0, _) => write!(f, "{abs}"),
        (1, true) => write!(f, "t"),
        (1, false) => write!(f, "{abs}t"),
        (_, true) => write!(f, "t^{exp}"),
        (_, false) => write!(f, "{abs}t^{exp}"),
    }
}

/// Ascending exponents, e.g. `1 - t + 2t^3`, `-t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_monomial(f, &c.abs(), e)?;
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::PolyParse {
            input: self.src.to_string(),
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let negative = self.sign().unwrap_or(false);
        let digits = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let e: i64 = digits.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if negative { -e } else { e })
    }

    /// One unsigned monomial: `INT`, `INT t`, `INT * t`, `t`, each with an
    /// optional `^ EXP` after `t`.
    fn monomial(&mut self) -> Result<(BigInt, i64)> {
        let coeff = match self.digits() {
            Some(d) => Some(d.parse::<BigInt>().map_err(|_| self.err("bad integer"))?),
            None => None,
        };
        if coeff.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            if self.peek() != Some(b't') {
                return Err(self.err("expected `t` after `*`"));
            }
        }
        let exp = if self.peek() == Some(b't') {
            self.pos += 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.exponent()?
            } else {
                1
            }
        } else if coeff.is_some() {
            0
        } else {
            return Err(self.err("expected an integer or `t`"));
        };
        Ok((coeff.unwrap_or_else(BigInt::one), exp))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let (c, e) = self.monomial()?;
            p.add_term(e, if negative { -c } else { c });
            match self.sign() {
                Some(n) => negative = n,
                None => break,
            }
        }
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PolyParser {
            src: s,
            bytes: s.as_bytes(),
            pos: 0,
        }
        .poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("1 - t + 2t^3").to_string(), "1 - t + 2t^3");
        assert_eq!(p("t^-1").to_string(), "t^-1");
        assert_eq!(p("  -t^-2+3 * t "), LaurentPoly::from_coeffs_at(-2, &[-1, 0, 0, 3]));
        assert_eq!(p("2t^2 - 2t^2"), LaurentPoly::zero());
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-1 - t").to_string(), "-1 - t");
        assert_eq!(p("t + t"), p("2t"));
    }

    #[test]
    fn parse_errors_carry_position() {
        match "1 + ".parse::<LaurentPoly>() {
            Err(Error::PolyParse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!("x".parse::<LaurentPoly>().is_err());
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("2 3".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("1 - t") + &p("t"), LaurentPoly::one());
        assert_eq!(&LaurentPoly::zero() + &p("3t^-2"), p("3t^-2"));
        assert_eq!(&p("1 - t") * &p("1 + t"), p("1 - t^2"));
        assert_eq!(p("1 - t").pow(2), p("1 - 2t + t^2"));
        assert_eq!(&p("t^-1") * &p("t"), LaurentPoly::one());
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(p("1 - t").eval_at_one(), BigInt::zero());
        assert_eq!(p("1 + t - t^2").eval_at_one(), BigInt::one());
        assert_eq!(LaurentPoly::zero().eval_at_one(), BigInt::zero());
    }

    #[test]
    fn divide_by_one_minus_t_examples() {
        assert_eq!(p("1 - t^2").divide_by_one_minus_t().unwrap(), p("1 + t"));
        assert_eq!(p("t^5 - t^6").divide_by_one_minus_t().unwrap(), p("t^5"));
        assert_eq!(p("t - t^3").divide_by_one_minus_t().unwrap(), p("t + t^2"));
        assert_eq!(
            p("t^-3 - t^2").divide_by_one_minus_t().unwrap(),
            p("t^-3 + t^-2 + t^-1 + 1 + t")
        );
        assert!(matches!(
            p("1 + t").divide_by_one_minus_t(),
            Err(Error::NotDivisible(..))
        ));
    }

    #[test]
    fn division_with_unit_leading_coefficient() {
        let (q, r) = p("t^4").div_rem_unit(&p("1 + t + t^2 + t^3")).unwrap();
        assert_eq!(q, p("t - 1"));
        assert_eq!(r, LaurentPoly::one());
        assert!(p("t").div_rem_unit(&p("1 + 2t")).is_err());
        assert!(p("t^6 - 1").exact_div(&p("t - 1")).is_ok());
        assert!(p("t^6").exact_div(&p("t - 1")).is_err());
    }
}
