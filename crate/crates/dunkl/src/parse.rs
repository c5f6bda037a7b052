//! Parsing of the scalar formats that cross the command-line boundary.
//!
//! Rationals are written `"p/q"` (or `"p"`), complex numbers `"a+bi"` with
//! either part optional (`"2"`, `"-i"`, `"0.5-1.5i"`, `"1e-3+2i"`). Lists
//! are comma separated.

use dunkl_core::poly::parse_q;
use dunkl_core::{C64, Q};

use crate::exit::CliError;

/// Parses an exact rational.
pub fn rational(s: &str) -> Result<Q, CliError> {
    parse_q(s).map_err(|e| CliError::usage(e.to_string()))
}

/// Parses a real number given either as a rational `"p/q"` or as a float.
pub fn real(s: &str) -> Result<f64, CliError> {
    let s = s.trim();
    if s.contains('/') {
        return rational(s).map(|q| dunkl_core::poly::q_to_f64(&q));
    }
    s.parse::<f64>().map_err(|_| CliError::usage(format!("not a real number: {s:?}")))
}

/// Parses a complex number `a+bi`.
pub fn complex(s: &str) -> Result<C64, CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(CliError::usage("empty complex number".to_string()));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(C64::new(real(&t)?, 0.0));
    };
    // The imaginary part starts at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (real(&body[..j])?, imaginary_coefficient(&body[j..], s)?),
        None => (0.0, imaginary_coefficient(body, s)?),
    };
    Ok(C64::new(re, im))
}

fn imaginary_coefficient(s: &str, whole: &str) -> Result<f64, CliError> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s).map_err(|_| CliError::usage(format!("not a complex number: {whole:?}"))),
    }
}

/// Parses a comma-separated list of complex numbers.
pub fn complex_list(s: &str) -> Result<Vec<C64>, CliError> {
    s.split(',').map(complex).collect()
}

/// Parses a comma-separated list of non-negative integers.
pub fn index(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| CliError::usage(format!("not a multi-index entry: {p:?}"))))
        .collect()
}

/// Formats a complex number in the `a+bi` form accepted by [`complex`].
pub fn format_complex(z: C64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
