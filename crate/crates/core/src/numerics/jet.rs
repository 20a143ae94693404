use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::cx::{ln, Branch, Cx, ONE, ZERO};
use crate::error::{HeunError, Result};

type Coeffs = SmallVec<[Cx; 12]>;

/// Truncated Taylor expansion `Σ coeffs[k] (x - basepoint)^k`, `k ≤ order`.
///
/// `coeffs[k]` is `f^(k)(x0) / k!`. Binary operations require equal basepoints
/// and orders; mismatches are programming errors and panic.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    basepoint: Cx,
    coeffs: Coeffs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElemKind {
    Exp,
    Log,
    Pow(Cx),
    Sqrt,
    Sin,
    Cos,
    Arctan,
}

pub fn jet_arith(kind: ArithKind, a: &Jet, b: &Jet) -> Result<Jet> {
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
        ArithKind::Div => a.try_div(b)?,
    })
}

/// Elementary function of a jet with the principal branch.
pub fn jet_elem(kind: ElemKind, a: &Jet) -> Result<Jet> {
    let branch = Branch::Upper;
    match kind {
        ElemKind::Exp => Ok(a.exp()),
        ElemKind::Log => a.ln(branch),
        ElemKind::Pow(c) => a.powc(c, branch),
        ElemKind::Sqrt => a.sqrt(branch),
        ElemKind::Sin => Ok(a.sin()),
        ElemKind::Cos => Ok(a.cos()),
        ElemKind::Arctan => a.atan(),
    }
}

impl Jet {
    pub fn new(basepoint: Cx, coeffs: impl IntoIterator<Item = Cx>) -> Self {
        let coeffs: Coeffs = coeffs.into_iter().collect();
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { basepoint, coeffs }
    }

    pub fn constant(basepoint: Cx, value: Cx, order: usize) -> Self {
        let mut coeffs: Coeffs = SmallVec::from_elem(ZERO, order + 1);
        coeffs[0] = value;
        Jet { basepoint, coeffs }
    }

    /// The identity function `x` expanded at `basepoint`.
    pub fn variable(basepoint: Cx, order: usize) -> Self {
        let mut jet = Jet::constant(basepoint, basepoint, order);
        if order >= 1 {
            jet.coeffs[1] = ONE;
        }
        jet
    }

    pub fn basepoint(&self) -> Cx {
        self.basepoint
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Cx] {
        &self.coeffs
    }

    pub fn value(&self) -> Cx {
        self.coeffs[0]
    }

    /// Coefficient `k`, zero beyond the order.
    pub fn coeff(&self, k: usize) -> Cx {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// `f^(k)(x0)`.
    pub fn derivative(&self, k: usize) -> Cx {
        let fact: f64 = (1..=k).map(|j| j as f64).product();
        self.coeff(k) * fact
    }

    pub fn constant_like(&self, value: Cx) -> Jet {
        Jet::constant(self.basepoint, value, self.order())
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let n = order.min(self.order());
        Jet { basepoint: self.basepoint, coeffs: self.coeffs[..=n].iter().copied().collect() }
    }

    /// Derivative as a jet of one order less (order 0 stays order 0 with value 0).
    pub fn differentiate(&self) -> Jet {
        if self.order() == 0 {
            return self.constant_like(ZERO);
        }
        let coeffs = (1..self.coeffs.len()).map(|k| self.coeffs[k] * k as f64);
        Jet::new(self.basepoint, coeffs)
    }

    /// Antiderivative with value `c0` at the basepoint; raises the order by one.
    pub fn integrate(&self, c0: Cx) -> Jet {
        let coeffs = std::iter::once(c0).chain(self.coeffs.iter().enumerate().map(|(k, &a)| a / (k + 1) as f64));
        Jet::new(self.basepoint, coeffs)
    }

    /// Sum of the truncated series at `x`.
    pub fn eval_at(&self, x: Cx) -> Cx {
        let t = x - self.basepoint;
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * t + c)
    }

    pub fn map_coeffs(&self, f: impl Fn(Cx) -> Cx) -> Jet {
        Jet { basepoint: self.basepoint, coeffs: self.coeffs.iter().map(|&c| f(c)).collect() }
    }

    pub fn scale(&self, s: Cx) -> Jet {
        self.map_coeffs(|c| c * s)
    }

    fn check_compatible(&self, other: &Jet) {
        assert_eq!(self.order(), other.order(), "jet orders differ");
        assert!(self.basepoint == other.basepoint, "jet basepoints differ: {} vs {}", self.basepoint, other.basepoint);
    }

    pub fn try_div(&self, b: &Jet) -> Result<Jet> {
        self.check_compatible(b);
        let b0 = b.coeffs[0];
        if b0 == ZERO {
            return Err(HeunError::domain("jet division by a series with zero constant term"));
        }
        let n = self.coeffs.len();
        let mut q: Coeffs = SmallVec::with_capacity(n);
        for k in 0..n {
            let mut s = self.coeffs[k];
            for j in 1..=k {
                s -= b.coeffs[j] * q[k - j];
            }
            q.push(s / b0);
        }
        Ok(Jet { basepoint: self.basepoint, coeffs: q })
    }

    pub fn recip(&self) -> Result<Jet> {
        self.constant_like(ONE).try_div(self)
    }

    pub fn exp(&self) -> Jet {
        let a = &self.coeffs;
        let n = a.len();
        let mut b: Coeffs = SmallVec::with_capacity(n);
        b.push(a[0].exp());
        for k in 1..n {
            let mut s = ZERO;
            for j in 1..=k {
                s += a[j] * b[k - j] * j as f64;
            }
            b.push(s / k as f64);
        }
        Jet { basepoint: self.basepoint, coeffs: b }
    }

    pub fn ln(&self, branch: Branch) -> Result<Jet> {
        let a = &self.coeffs;
        let a0 = a[0];
        if a0 == ZERO {
            return Err(HeunError::domain("logarithm of a series with zero constant term"));
        }
        let n = a.len();
        let mut b: Coeffs = SmallVec::with_capacity(n);
        b.push(ln(a0, branch));
        for k in 1..n {
            let mut s = ZERO;
            for j in 1..k {
                s += b[j] * a[k - j] * j as f64;
            }
            b.push((a[k] - s / k as f64) / a0);
        }
        Ok(Jet { basepoint: self.basepoint, coeffs: b })
    }

    /// `self^c = exp(c ln self)` on the given branch.
    pub fn powc(&self, c: Cx, branch: Branch) -> Result<Jet> {
        if self.coeffs[0] == ZERO {
            return Err(HeunError::domain("power of a series with zero constant term"));
        }
        Ok(self.ln(branch)?.scale(c).exp())
    }

    pub fn sqrt(&self, branch: Branch) -> Result<Jet> {
        self.powc(Cx::new(0.5, 0.0), branch)
    }

    /// Integer power by repeated squaring; negative exponents need a nonzero constant term.
    pub fn powi(&self, n: i32) -> Result<Jet> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.constant_like(ONE);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Sine and cosine together.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let a = &self.coeffs;
        let n = a.len();
        let mut s: Coeffs = SmallVec::with_capacity(n);
        let mut c: Coeffs = SmallVec::with_capacity(n);
        s.push(a[0].sin());
        c.push(a[0].cos());
        for k in 1..n {
            let mut ss = ZERO;
            let mut cc = ZERO;
            for j in 1..=k {
                let ja = a[j] * j as f64;
                ss += ja * c[k - j];
                cc -= ja * s[k - j];
            }
            s.push(ss / k as f64);
            c.push(cc / k as f64);
        }
        (Jet { basepoint: self.basepoint, coeffs: s }, Jet { basepoint: self.basepoint, coeffs: c })
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    pub fn atan(&self) -> Result<Jet> {
        let a0 = self.coeffs[0];
        if self.order() == 0 {
            return Ok(self.constant_like(a0.atan()));
        }
        let lower = self.truncate(self.order() - 1);
        let denom = &lower * &lower + ONE;
        let d = self.differentiate().try_div(&denom)?;
        Ok(d.integrate(a0.atan()))
    }

    /// `g(self)` from the Taylor coefficients of `g` at `self.value()`.
    ///
    /// `g_coeffs[k] = g^(k)(a0)/k!`; missing high coefficients are treated as zero.
    pub fn compose(&self, g_coeffs: &[Cx]) -> Jet {
        let mut t = self.clone();
        t.coeffs[0] = ZERO;
        let n = self.order().min(g_coeffs.len().saturating_sub(1));
        let mut acc = self.constant_like(g_coeffs.get(n).copied().unwrap_or(ZERO));
        for k in (0..n).rev() {
            acc = &acc * &t + g_coeffs[k];
        }
        acc
    }
}

impl Add<&Jet> for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.check_compatible(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Jet { basepoint: self.basepoint, coeffs }
    }
}

impl Sub<&Jet> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.check_compatible(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Jet { basepoint: self.basepoint, coeffs }
    }
}

impl Mul<&Jet> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.check_compatible(rhs);
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let b = &rhs.coeffs;
        let coeffs = (0..n).map(|k| (0..=k).fold(ZERO, |s, j| s + a[j] * b[k - j])).collect();
        Jet { basepoint: self.basepoint, coeffs }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.map_coeffs(|c| -c)
    }
}

impl Add<Cx> for &Jet {
    type Output = Jet;
    fn add(self, rhs: Cx) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += rhs;
        out
    }
}

impl Sub<Cx> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: Cx) -> Jet {
        self + (-rhs)
    }
}

impl Mul<Cx> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: Cx) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.map_coeffs(|c| c * rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet { (&self).$m(&rhs) }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet { (&self).$m(rhs) }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet { self.$m(&rhs) }
        }
        impl $tr<Cx> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Cx) -> Jet { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        (&self) * rhs
    }
}

impl Mul<Jet> for Cx {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}

impl Mul<&Jet> for Cx {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        rhs.scale(self)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}
