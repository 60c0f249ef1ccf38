//! Arbitrary-precision exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`: always stored reduced with a
//! positive denominator, and displayed as `p/q` with the `/q` omitted when
//! the denominator is one. Those are exactly the invariants and the wire
//! format the rest of the crate relies on, so the type is re-exported
//! rather than wrapped.

use num_bigint::BigInt;
use num_traits::One;

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fraction `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"` or `"p/q"` (optional leading `-`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q == BigInt::from(0) {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
    }
}

/// Binomial coefficient C(n, k) as a rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return rat(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(frac(6, 3).to_string(), "2");
        assert_eq!(frac(-3, 6).to_string(), "-1/2");
        assert_eq!(rat(0).to_string(), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-7", "22/7", "-311/4"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(parse_rational("4/2").unwrap(), rat(2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 3), rat(20));
        assert_eq!(binomial(10, 0), rat(1));
        assert_eq!(binomial(3, 5), rat(0));
        assert_eq!(binomial(52, 5), rat(2598960));
    }
}
