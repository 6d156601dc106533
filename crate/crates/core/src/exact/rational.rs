use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p/q"` with arbitrary-size integers.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// A JSON integer, or a string `"p/q"`.
pub fn rational_from_json(v: &serde_json::Value) -> Option<Rational> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(|x| Rational::from_integer(BigInt::from(x))),
        serde_json::Value::String(s) => parse_rational(s),
        _ => None,
    }
}

/// Integers that fit in `i64` become JSON numbers, everything else a string.
pub fn rational_to_json(q: &Rational) -> serde_json::Value {
    match (q.is_integer(), i64::try_from(q.numer())) {
        (true, Ok(x)) => serde_json::json!(x),
        _ => serde_json::json!(q.to_string()),
    }
}

/// Least common multiple of the denominators.
pub(crate) fn denom_lcm<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    it.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Gcd of the numerators (non-negative).
pub(crate) fn numer_gcd<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    it.into_iter().fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalised_on_construction() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(rat(0, 7).denom(), &BigInt::one());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3"), Some(rat_int(3)));
        assert_eq!(parse_rational(" -10/4 "), Some(rat(-5, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        let big = parse_rational("123456789012345678901234567890/3").unwrap();
        assert_eq!(big.numer().to_string(), "41152263004115226300411522630");
    }

    #[test]
    fn lcm_and_gcd() {
        let v = [rat(1, 4), rat(3, 6), rat(2, 3)];
        assert_eq!(denom_lcm(&v), BigInt::from(12));
        let w = [rat_int(6), rat_int(-9), rat_int(0)];
        assert_eq!(numer_gcd(&w), BigInt::from(3));
    }
}
