//! Coefficient rings: the Laurent ring `Z[t, t^-1]` and quotients `Z[t]/f`
//! whose modulus has unit leading and constant coefficients.
//!
//! In a quotient, `t` is invertible, so every Laurent polynomial has a
//! representative of degree below `deg f` with no negative exponents.
//! Reduction first removes negative exponents, then lowers the degree.
//! Optionally the coefficients themselves live in `Z_n`; that is how the
//! ring `Z[t]/(t - 1, n) = Z_n` of the 2-reductive n-symmetric variety is
//! represented.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    poly: LaurentPoly,
    degree: i64,
    constant: BigInt,
    characteristic: Option<BigInt>,
    inv_t: LaurentPoly,
}

impl Modulus {
    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn characteristic(&self) -> Option<&BigInt> {
        self.characteristic.as_ref()
    }
}

/// Which ring the coefficients of a module vector live in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Laurent,
    Quotient(Arc<Modulus>),
}

fn is_unit(c: &BigInt) -> bool {
    c.is_one() || (-c).is_one()
}

impl RingSpec {
    /// `Z[t]/f`. The modulus is shifted so its lowest exponent is zero and
    /// negated if needed so that it is monic.
    pub fn quotient(f: &LaurentPoly) -> Result<Self> {
        Self::build(f, None)
    }

    /// `Z_n[t]/f`, for `n >= 2`.
    pub fn quotient_mod(f: &LaurentPoly, n: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        if n < BigInt::from(2) {
            return Err(Error::BadModulus(
                f.to_string(),
                format!("coefficient modulus {n} must be at least 2"),
            ));
        }
        Self::build(f, Some(n))
    }

    fn build(f: &LaurentPoly, characteristic: Option<BigInt>) -> Result<Self> {
        let Some(low) = f.min_exp() else {
            return Err(Error::BadModulus(f.to_string(), "modulus is zero".into()));
        };
        let mut poly = f.shift(-low);
        let (degree, lead) = poly.leading().map(|(e, c)| (e, c.clone())).unwrap();
        if degree < 1 {
            return Err(Error::BadModulus(f.to_string(), "degree must be at least 1".into()));
        }
        let constant = poly.coeff(0);
        if !is_unit(&lead) {
            return Err(Error::BadModulus(
                f.to_string(),
                format!("leading coefficient {lead} is not invertible"),
            ));
        }
        if !is_unit(&constant) {
            return Err(Error::BadModulus(
                f.to_string(),
                format!("constant coefficient {constant} is not invertible"),
            ));
        }
        if lead.is_negative() {
            poly = -&poly;
        }
        let constant = poly.coeff(0);
        // t^-1 = -(c_1 + c_2 t + ... + c_s t^(s-1)) * c_0^-1, and c_0^-1 = c_0.
        let mut inv_t = LaurentPoly::zero();
        for (e, c) in poly.terms() {
            if e >= 1 {
                inv_t.add_term(e - 1, -(c * &constant));
            }
        }
        if let Some(n) = &characteristic {
            inv_t = inv_t.map_coeffs(|c| c.mod_floor(n));
        }
        Ok(RingSpec::Quotient(Arc::new(Modulus {
            poly,
            degree,
            constant,
            characteristic,
            inv_t,
        })))
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, RingSpec::Laurent)
    }

    pub fn modulus(&self) -> Option<&Modulus> {
        match self {
            RingSpec::Laurent => None,
            RingSpec::Quotient(m) => Some(m),
        }
    }

    /// Canonical representative of `p` in this ring.
    pub fn reduce_poly(&self, p: &LaurentPoly) -> LaurentPoly {
        let m = match self {
            RingSpec::Laurent => return p.clone(),
            RingSpec::Quotient(m) => m,
        };
        let mut r = match &m.characteristic {
            Some(n) => p.map_coeffs(|c| c.mod_floor(n)),
            None => p.clone(),
        };
        // Negative exponents: c t^e == c t^e - c c_0 t^e f, which starts at e + 1.
        while let Some(e) = r.min_exp().filter(|&e| e < 0) {
            let c = r.take_term(e).unwrap();
            let factor = -(c * &m.constant);
            for (k, d) in m.poly.terms().skip(1) {
                r.add_term(e + k, &factor * d);
            }
        }
        // High degrees: f is monic.
        while let Some((d, c)) = r.leading().filter(|(d, _)| *d >= m.degree) {
            let factor = -c.clone();
            let shift = d - m.degree;
            r.take_term(d);
            for (k, coeff) in m.poly.terms().rev().skip(1) {
                r.add_term(k + shift, &factor * coeff);
            }
        }
        match &m.characteristic {
            Some(n) => r.map_coeffs(|c| c.mod_floor(n)),
            None => r,
        }
    }

    pub fn reduce(&self, p: &LaurentPoly) -> RingElement {
        RingElement {
            spec: self.clone(),
            value: self.reduce_poly(p),
        }
    }

    pub fn zero(&self) -> RingElement {
        self.reduce(&LaurentPoly::zero())
    }

    pub fn one(&self) -> RingElement {
        self.reduce(&LaurentPoly::one())
    }

    pub fn t(&self) -> RingElement {
        self.reduce(&LaurentPoly::t())
    }

    /// The inverse of `t` as a polynomial: `t^-1` itself in the Laurent ring,
    /// the reduced representative in a quotient.
    pub fn t_inverse_poly(&self) -> LaurentPoly {
        match self {
            RingSpec::Laurent => LaurentPoly::monomial(1, -1),
            RingSpec::Quotient(m) => m.inv_t.clone(),
        }
    }

    /// Image of `1` under `t -> 1` composed with the coefficient reduction:
    /// `f(1)` for a quotient (zero when `1 - t` is a zero divisor) and `0`
    /// for the Laurent ring, where the augmentation lands in `Z` unreduced.
    pub fn augmentation_modulus(&self) -> BigInt {
        match self {
            RingSpec::Laurent => BigInt::zero(),
            RingSpec::Quotient(m) => {
                let v = m.poly.eval_at_one();
                match &m.characteristic {
                    Some(n) => v.gcd(n),
                    None => v.abs(),
                }
            }
        }
    }
}

/// `t^-1` in a quotient ring.
pub fn inv_t(spec: &RingSpec) -> Result<RingElement> {
    match spec {
        RingSpec::Laurent => Err(Error::NotQuotient(spec.to_string())),
        RingSpec::Quotient(_) => Ok(RingElement {
            spec: spec.clone(),
            value: spec.t_inverse_poly(),
        }),
    }
}

/// Canonical representative of `p` in `spec`.
pub fn reduce(p: &LaurentPoly, spec: &RingSpec) -> RingElement {
    spec.reduce(p)
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Laurent => write!(f, "laurent"),
            RingSpec::Quotient(m) => match &m.characteristic {
                None => write!(f, "mod {}", m.poly),
                Some(n) => write!(f, "mod {} char {n}", m.poly),
            },
        }
    }
}

/// Accepts `laurent`, `mod <poly>` and `mod <poly> char <n>`.
impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "laurent" {
            return Ok(RingSpec::Laurent);
        }
        let Some(rest) = s.strip_prefix("mod") else {
            return Err(Error::BadModulus(s.into(), "expected `laurent` or `mod <poly>`".into()));
        };
        match rest.split_once("char") {
            Some((poly, n)) => {
                let n: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadModulus(s.into(), "bad characteristic".into()))?;
                RingSpec::quotient_mod(&poly.parse()?, n)
            }
            None => RingSpec::quotient(&rest.parse()?),
        }
    }
}

/// An element of a [`RingSpec`], always in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    spec: RingSpec,
    value: LaurentPoly,
}

impl RingElement {
    pub fn new(spec: &RingSpec, value: &LaurentPoly) -> Self {
        spec.reduce(value)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn value(&self) -> &LaurentPoly {
        &self.value
    }

    pub fn into_value(self) -> LaurentPoly {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch(self.spec.to_string(), other.spec.to_string()))
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.spec.reduce(&(&self.value + &other.value)))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.spec.reduce(&(&self.value - &other.value)))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.spec.reduce(&(&self.value * &other.value)))
    }

    pub fn neg(&self) -> RingElement {
        self.spec.reduce(&-&self.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn q(s: &str) -> RingSpec {
        RingSpec::quotient(&p(s)).unwrap()
    }

    #[test]
    fn add_examples() {
        let l = RingSpec::Laurent;
        assert_eq!(l.reduce(&p("1 - t")).add(&l.t()).unwrap(), l.one());
        assert_eq!(l.zero().add(&l.reduce(&p("t^-3"))).unwrap().value(), &p("t^-3"));
        let r = q("1 + t + t^2 + t^3");
        // deg f = 3, so t^3 is itself reduced to -1 - t - t^2
        let t3 = r.reduce(&p("t^3"));
        assert_eq!(t3.value(), &p("-1 - t - t^2"));
        assert_eq!(t3.add(&t3).unwrap().value(), &p("-2 - 2t - 2t^2"));
        let t2 = r.reduce(&p("t^2"));
        assert_eq!(t2.add(&t2).unwrap().value(), &p("2t^2"));
    }

    #[test]
    fn mul_examples() {
        let l = RingSpec::Laurent;
        let a = l.reduce(&p("1 - t"));
        assert_eq!(a.mul(&l.reduce(&p("1 + t"))).unwrap().value(), &p("1 - t^2"));
        assert_eq!(a.mul(&a).unwrap().value(), &p("1 - 2t + t^2"));
        let r = q("1 + t");
        assert_eq!(r.t().mul(&r.t()).unwrap(), r.one());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = RingSpec::Laurent.one();
        let b = q("1 + t").one();
        assert!(matches!(a.add(&b), Err(Error::SpecMismatch(..))));
        assert!(matches!(a.mul(&b), Err(Error::SpecMismatch(..))));
    }

    #[test]
    fn inv_t_examples() {
        assert_eq!(inv_t(&q("1 + t + t^2 + t^3")).unwrap().value(), &p("-1 - t - t^2"));
        assert_eq!(inv_t(&q("1 + t")).unwrap().value(), &p("-1"));
        assert_eq!(inv_t(&q("1 - 2t + t^2")).unwrap().value(), &p("2 - t"));
        assert!(matches!(inv_t(&RingSpec::Laurent), Err(Error::NotQuotient(_))));
    }

    #[test]
    fn inv_t_times_t_is_one() {
        for f in ["1 + t", "1 + t + t^2", "1 - 2t + t^2", "1 - 3t + 3t^2 - t^3", "1 + t + t^2 + t^3"] {
            let r = q(f);
            assert_eq!(inv_t(&r).unwrap().mul(&r.t()).unwrap(), r.one(), "{f}");
        }
    }

    #[test]
    fn reduce_examples() {
        let r = q("1 + t + t^2 + t^3");
        assert_eq!(r.reduce(&p("t^4")), r.one());
        assert_eq!(q("1 + t").reduce(&p("t^-1")).value(), &p("-1"));
        assert!(r.reduce(&LaurentPoly::zero()).is_zero());
        // deep negative exponents
        assert_eq!(q("1 + t + t^2").reduce(&p("t^-300")), q("1 + t + t^2").one());
    }

    #[test]
    fn bad_moduli() {
        assert!(matches!(RingSpec::quotient(&p("2 + t")), Err(Error::BadModulus(..))));
        assert!(matches!(RingSpec::quotient(&p("1 + 2t")), Err(Error::BadModulus(..))));
        assert!(matches!(RingSpec::quotient(&p("5")), Err(Error::BadModulus(..))));
        assert!(matches!(RingSpec::quotient(&LaurentPoly::zero()), Err(Error::BadModulus(..))));
        // shifted and sign-normalised
        assert_eq!(q("t^-1 - 1"), q("t - 1"));
        assert_eq!(q("1 - t"), q("t - 1"));
    }

    #[test]
    fn integers_mod_n() {
        let r = RingSpec::quotient_mod(&p("t - 1"), 4).unwrap();
        assert_eq!(r.t(), r.one());
        assert_eq!(r.reduce(&p("3t^-5 + 3")).value(), &p("2"));
        assert_eq!(r.reduce(&p("-1")).value(), &p("3"));
        assert_eq!(r.augmentation_modulus(), BigInt::from(4));
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["laurent", "mod 1 + t + t^2", "mod -1 + t char 4"] {
            let r: RingSpec = s.parse().unwrap();
            assert_eq!(r.to_string().parse::<RingSpec>().unwrap(), r);
        }
        assert!("modulo".parse::<RingSpec>().is_err());
    }
}
