use num_complex::Complex64;

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i` and `-i`; whitespace is ignored.
pub fn parse_complex(input: &str) -> Result<Complex64, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let invalid = || format!("invalid complex number '{input}': expected the form a+bi");
    if s.is_empty() {
        return Err(invalid());
    }
    let Some(body) = s.strip_suffix('i') else {
        return match s.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(Complex64::new(re, 0.0)),
            _ => Err(invalid()),
        };
    };
    let bytes = body.as_bytes();
    // the sign separating the parts, skipping a leading sign and exponent signs
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (body[..i].parse::<f64>().map_err(|_| invalid())?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| invalid())?,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(invalid());
    }
    Ok(Complex64::new(re, im))
}
