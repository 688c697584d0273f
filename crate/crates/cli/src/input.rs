//! The measure input grammar: whitespace-separated rational tokens, one
//! per group element. A token is `p/q` (nonnegative `p`, positive `q`),
//! a nonnegative integer, or a finite decimal; decimals convert exactly.
//! Masses must sum to 1 exactly.

use num_bigint::BigInt;
use tec_core::{Measure, Rational};

/// A parsed measure input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureInput {
    pub l: u32,
    pub measure: Measure,
}

/// Parses one nonnegative rational token.
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    if token.is_empty() {
        return Err("empty token".into());
    }
    if let Some((num, den)) = token.split_once('/') {
        let num = parse_digits(num)?;
        let den = parse_digits(den)?;
        if den == BigInt::from(0) {
            return Err(format!("zero denominator in '{token}'"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = token.split_once('.') {
        if int.is_empty() && frac.is_empty() {
            return Err(format!("not a number: '{token}'"));
        }
        let int = if int.is_empty() { BigInt::from(0) } else { parse_digits(int)? };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac = if frac.is_empty() { BigInt::from(0) } else { parse_digits(frac)? };
        return Ok(Rational::new(int * &scale + frac, scale));
    }
    Ok(Rational::from(parse_digits(token)?))
}

fn parse_digits(s: &str) -> Result<BigInt, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected digits, got '{s}'"));
    }
    Ok(s.parse().expect("digit strings parse as integers"))
}

/// Renders a rational in the canonical `p/q` form (lowest terms,
/// denominator always present) used by every machine-readable output.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_masses(masses: &[Rational]) -> String {
    masses.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

/// Parses `2^l` mass tokens into a measure. Errors carry the token
/// position (1-based) where parsing failed.
pub fn parse_measure(l: u32, tokens: &[String]) -> Result<MeasureInput, String> {
    if !(1..=4).contains(&l) {
        return Err(format!("unsupported group exponent l={l} (supported: 1..=4)"));
    }
    let expected = 1usize << l;
    if tokens.len() != expected {
        return Err(format!("expected {expected} masses for l={l}, got {}", tokens.len()));
    }
    let mut masses = Vec::with_capacity(expected);
    for (i, token) in tokens.iter().enumerate() {
        let value = parse_rational(token)
            .map_err(|e| format!("mass {} ('{}'): {e}", i + 1, token))?;
        masses.push(value);
    }
    let measure = Measure::new(l, masses).map_err(|e| e.to_string())?;
    Ok(MeasureInput { l, measure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tec_core::rat;

    #[test]
    fn rational_grammar() {
        assert_eq!(parse_rational("3/10").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("6/20").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("1").unwrap(), rat(1, 1));
        assert_eq!(parse_rational("0").unwrap(), rat(0, 1));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2.").unwrap(), rat(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("-1/2").is_err());
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rendering_round_trips() {
        for r in [rat(3, 10), rat(0, 1), rat(1, 1), rat(19, 40)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert_eq!(format_rational(&rat(6, 20)), "3/10");
        assert_eq!(format_rational(&rat(0, 5)), "0/1");
    }

    #[test]
    fn measure_parsing() {
        let tokens: Vec<String> = "0.3 1/10 1/10 1/10 1/10 1/10 1/10 0.1"
            .split_whitespace()
            .map(String::from)
            .collect();
        let input = parse_measure(3, &tokens).unwrap();
        assert_eq!(*input.measure.mass(0), rat(3, 10));

        let short: Vec<String> = vec!["1".into()];
        assert!(parse_measure(3, &short).is_err());

        let bad: Vec<String> = "1/8 1/8 1/8 1/8 1/8 1/8 1/8 x"
            .split_whitespace()
            .map(String::from)
            .collect();
        let err = parse_measure(3, &bad).unwrap_err();
        assert!(err.contains("mass 8"), "{err}");

        let off: Vec<String> = "1/8 1/8 1/8 1/8 1/8 1/8 1/8 1/9"
            .split_whitespace()
            .map(String::from)
            .collect();
        let err = parse_measure(3, &off).unwrap_err();
        assert!(err.contains("sum to 1"), "{err}");
    }
}
