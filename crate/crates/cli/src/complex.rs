//! Parsing of complex amplitudes given on the command line.
//!
//! Two forms are accepted:
//!
//! * Cartesian: `3`, `-2.5`, `2i`, `-i`, `1+1i`, `0.5-2e-1i`
//! * Polar: `r@theta` with `r >= 0` and `theta` in radians, e.g. `2@1.0472`
//!
//! Anything mixing the two, or with stray signs or suffixes, is rejected.

use multihead::PolarAmplitude;

fn finite(s: &str, what: &str, input: &str) -> Result<f64, String> {
    let v: f64 = s
        .parse()
        .map_err(|_| format!("'{input}': cannot read {what} '{s}'"))?;
    if !v.is_finite() {
        return Err(format!("'{input}': {what} must be finite"));
    }
    Ok(v)
}

/// Index of the sign separating real and imaginary parts, if any.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
}

fn imaginary_coefficient(s: &str, input: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => finite(s, "imaginary part", input),
    }
}

pub fn parse_amplitude(input: &str) -> Result<PolarAmplitude, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err("empty amplitude".into());
    }
    if s.chars().any(char::is_whitespace) {
        return Err(format!("'{input}': whitespace inside an amplitude"));
    }
    if let Some((r, theta)) = s.split_once('@') {
        if theta.contains('@') || s.contains('i') {
            return Err(format!("'{input}': mixes polar and Cartesian syntax"));
        }
        let r = finite(r, "modulus", input)?;
        let theta = finite(theta, "angle", input)?;
        return PolarAmplitude::new(r, theta).map_err(|e| format!("'{input}': {e}"));
    }
    let amplitude = match s.strip_suffix('i') {
        Some(body) => {
            if body.contains('i') {
                return Err(format!("'{input}': more than one imaginary unit"));
            }
            match split_point(body) {
                Some(at) => {
                    let re = finite(&body[..at], "real part", input)?;
                    let im = imaginary_coefficient(&body[at..], input)?;
                    (re, im)
                }
                None => (0.0, imaginary_coefficient(body, input)?),
            }
        }
        None => {
            if s.contains('i') {
                return Err(format!("'{input}': imaginary unit must come last"));
            }
            (finite(s, "real part", input)?, 0.0)
        }
    };
    PolarAmplitude::from_cartesian(amplitude.0, amplitude.1).map_err(|e| format!("'{input}': {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    // amplitudes are stored in polar form, so round to absorb the last ulp
    fn xy(s: &str) -> (f64, f64) {
        let a = parse_amplitude(s).unwrap();
        let round = |v: f64| (v * 1e12).round() / 1e12;
        (round(a.re()), round(a.im()))
    }

    #[test]
    fn cartesian_forms() {
        assert_eq!(xy("1+1i"), (1.0, 1.0));
        assert_eq!(xy("3"), (3.0, 0.0));
        assert_eq!(xy("-2i"), (0.0, -2.0));
        assert_eq!(xy("i"), (0.0, 1.0));
        assert_eq!(xy("-i"), (0.0, -1.0));
        assert_eq!(xy("2-i"), (2.0, -1.0));
        assert_eq!(xy("1e-1-2.5e+1i"), (0.1, -25.0));
        assert_eq!(xy("-1.5+0i"), (-1.5, 0.0));
    }

    #[test]
    fn polar_form() {
        let a = parse_amplitude("2@1.5").unwrap();
        assert!((a.r() - 2.0).abs() < 1e-15 && (a.theta_p() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_ambiguous_or_malformed() {
        for bad in [
            "", "1+1", "1i+2", "1+1i@2", "2@1@1", "1++1i", "1+1ii", "1 + 1i", "@1", "2@", "nan",
            "inf", "1+infi", "-1@0", "1+1j", "1,5",
        ] {
            assert!(parse_amplitude(bad).is_err(), "{bad}");
        }
    }
}
