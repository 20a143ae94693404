use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{HeunError, Result};

pub type Cx = Complex64;

pub const ZERO: Cx = Cx::new(0.0, 0.0);
pub const ONE: Cx = Cx::new(1.0, 0.0);
pub const I: Cx = Cx::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

/// Which side of the cut a logarithm takes for arguments on the negative real axis.
///
/// `Upper` is the principal convention, `ln(-r) = ln r + iπ`, applied to both
/// signed zeros of the imaginary part. `Lower` flips the offset to `-iπ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Upper,
    Lower,
}

/// Logarithm with an explicit choice of side on the negative real axis.
pub fn ln(z: Cx, branch: Branch) -> Cx {
    if z.im == 0.0 && z.re < 0.0 {
        let arg = match branch {
            Branch::Upper => PI,
            Branch::Lower => -PI,
        };
        Cx::new((-z.re).ln(), arg)
    } else {
        z.ln()
    }
}

/// `z^p = exp(p ln z)` on the given branch; `0^p` is 0 for `Re p > 0`.
pub fn powc(z: Cx, p: Cx, branch: Branch) -> Cx {
    if z == ZERO {
        return if p.re > 0.0 {
            ZERO
        } else if p == ZERO {
            ONE
        } else {
            Cx::new(f64::INFINITY, 0.0)
        };
    }
    (p * ln(z, branch)).exp()
}

pub fn sqrt(z: Cx, branch: Branch) -> Cx {
    if z == ZERO {
        return ZERO;
    }
    (0.5 * ln(z, branch)).exp()
}

#[inline]
pub fn is_finite(z: Cx) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Formats `re` or `re+imi` using the shortest round-trip representation.
pub fn fmt_cx(z: Cx) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses `re`, `re+imi`, `re-imi` or `imi`.
pub fn parse_cx(token: &str) -> Result<Cx> {
    let s = token.trim();
    let bad = || HeunError::Parse(format!("malformed complex number '{token}'"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Cx::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let ch = bytes[idx];
        if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let parse_im = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(idx) => {
            let re = body[..idx].parse::<f64>().map_err(|_| bad())?;
            Ok(Cx::new(re, parse_im(&body[idx..])?))
        }
        None => Ok(Cx::new(0.0, parse_im(body)?)),
    }
}
