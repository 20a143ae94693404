use super::Cx;
use crate::error::Result;

/// Central difference `(f(x+h) - f(x-h)) / 2h` along the real direction.
pub fn derivative_fd<F>(f: F, x: Cx, h: f64) -> Result<Cx>
where
    F: Fn(Cx) -> Result<Cx>,
{
    let fp = f(x + h)?;
    let fm = f(x - h)?;
    Ok((fp - fm) / (2.0 * h))
}
