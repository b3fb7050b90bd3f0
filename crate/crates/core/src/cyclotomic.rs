//! Cyclotomic polynomials and the residue map of
//! `Z[t]/(1 + t + ... + t^(n-1))` into the product of its cyclotomic quotients.

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::ring::{RingElement, RingSpec};

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The `k`-th cyclotomic polynomial, by exact division of `t^k - 1` by
/// the cyclotomic polynomials of the proper divisors of `k`.
pub fn cyclotomic(k: u64) -> LaurentPoly {
    assert!(k >= 1, "cyclotomic polynomial index must be positive");
    let mut p = &LaurentPoly::monomial(1, k as i64) - &LaurentPoly::one();
    for d in divisors(k) {
        if d < k {
            p = p
                .exact_div(&cyclotomic(d))
                .expect("cyclotomic polynomials divide t^k - 1");
        }
    }
    p
}

/// `1 + t + ... + t^(n-1)`.
pub fn symmetric_poly(n: u64) -> LaurentPoly {
    LaurentPoly::from_coeffs(&vec![1; n as usize])
}

/// `(1 - t)^k`.
pub fn reductive_poly(k: u32) -> LaurentPoly {
    LaurentPoly::from_coeffs(&[1, -1]).pow(k)
}

/// The cyclotomic factors `[Phi_k : k | n, k > 1]` of `1 + t + ... + t^(n-1)`,
/// in ascending `k`.
pub fn factor_symmetric_poly(n: u64) -> Vec<LaurentPoly> {
    divisors(n)
        .into_iter()
        .filter(|&k| k > 1)
        .map(cyclotomic)
        .collect()
}

/// Residues of `a` modulo each factor. The factors must be pairwise
/// distinct and multiply to the modulus of `a`'s ring (up to sign).
pub fn crt_residues(a: &RingElement, factors: &[LaurentPoly]) -> Result<Vec<RingElement>> {
    let modulus = a
        .spec()
        .modulus()
        .ok_or_else(|| Error::NotQuotient(a.spec().to_string()))?;
    let product = factors
        .iter()
        .fold(LaurentPoly::one(), |acc, f| &acc * f);
    if product != *modulus.poly() && -&product != *modulus.poly() {
        return Err(Error::FactorMismatch {
            product: product.to_string(),
            modulus: modulus.poly().to_string(),
        });
    }
    for (i, f) in factors.iter().enumerate() {
        if factors[..i].contains(f) {
            return Err(Error::FactorMismatch {
                product: product.to_string(),
                modulus: format!("repeated factor {f}"),
            });
        }
    }
    factors
        .iter()
        .map(|f| {
            let spec = match modulus.characteristic() {
                Some(n) => RingSpec::quotient_mod(f, n.clone())?,
                None => RingSpec::quotient(f)?,
            };
            Ok(spec.reduce(a.value()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), p("t - 1"));
        assert_eq!(cyclotomic(2), p("1 + t"));
        assert_eq!(cyclotomic(6), p("t^2 - t + 1"));
        assert_eq!(cyclotomic(12), p("1 - t^2 + t^4"));
        // Phi_105 is the first with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic(105).terms().any(|(_, c)| *c == (-2).into()));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_symmetric_poly(2), vec![p("1 + t")]);
        assert_eq!(factor_symmetric_poly(4), vec![p("1 + t"), p("1 + t^2")]);
        assert_eq!(
            factor_symmetric_poly(6),
            vec![p("1 + t"), p("1 + t + t^2"), p("1 - t + t^2")]
        );
        assert!(factor_symmetric_poly(1).is_empty());
    }

    #[test]
    fn product_identities_up_to_24() {
        for n in 2..=24u64 {
            let prod = factor_symmetric_poly(n)
                .iter()
                .fold(LaurentPoly::one(), |acc, f| &acc * f);
            assert_eq!(prod, symmetric_poly(n), "n = {n}");
            let tn_minus_one = &LaurentPoly::monomial(1, n as i64) - &LaurentPoly::one();
            assert_eq!(&p("t - 1") * &prod, tn_minus_one, "n = {n}");
        }
    }

    #[test]
    fn crt_examples() {
        let spec = RingSpec::quotient(&p("1 + t + t^2 + t^3")).unwrap();
        let factors = factor_symmetric_poly(4);
        let res = crt_residues(&spec.zero(), &factors).unwrap();
        assert!(res.iter().all(|r| r.is_zero()));
        let res = crt_residues(&spec.t(), &factors).unwrap();
        assert_eq!(res[0].value(), &p("-1"));
        assert_eq!(res[1].value(), &p("t"));
        let res = crt_residues(&spec.reduce(&p("1 + t^2")), &factors).unwrap();
        assert_eq!(res[0].value(), &p("2"));
        assert!(res[1].is_zero());
    }

    #[test]
    fn crt_errors() {
        let spec = RingSpec::quotient(&p("1 + t + t^2 + t^3")).unwrap();
        assert!(matches!(
            crt_residues(&spec.one(), &[p("1 + t")]),
            Err(Error::FactorMismatch { .. })
        ));
        assert!(matches!(
            crt_residues(&RingSpec::Laurent.one(), &[p("1 + t")]),
            Err(Error::NotQuotient(_))
        ));
        let sq = RingSpec::quotient(&p("1 + 2t + t^2")).unwrap();
        assert!(crt_residues(&sq.one(), &[p("1 + t"), p("1 + t")]).is_err());
    }
}
