//! Forward-mode dual numbers carrying six simultaneous partial derivatives.
//!
//! Phase space is fixed at dimension six, so one evaluation of an observable
//! on `Dual` inputs seeded with the unit basis yields its full gradient.
//! `Dual<Dual<f64>>` nests to give exact second derivatives, which the chart
//! maps use to push momenta through a position Jacobian.

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Scalar;

/// Number of independent partials tracked (three positions, three momenta).
pub const NVARS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T = f64> {
    pub re: T,
    pub eps: [T; NVARS],
}

impl<T: Scalar> Dual<T> {
    pub fn constant(re: T) -> Self {
        Dual {
            re,
            eps: [T::cst(0.0); NVARS],
        }
    }

    /// Independent variable number `slot` with value `re`.
    pub fn variable(re: T, slot: usize) -> Self {
        let mut eps = [T::cst(0.0); NVARS];
        eps[slot] = T::cst(1.0);
        Dual { re, eps }
    }

    #[inline]
    fn chain(self, f: T, df: T) -> Self {
        Dual {
            re: f,
            eps: self.eps.map(|e| e * df),
        }
    }
}

impl Dual<f64> {
    /// Seeds all six phase-space coordinates as independent variables.
    pub fn seed(x: &[f64; NVARS]) -> [Dual; NVARS] {
        std::array::from_fn(|i| Dual::variable(x[i], i))
    }

    pub fn constants(x: &[f64; NVARS]) -> [Dual; NVARS] {
        x.map(Dual::constant)
    }

    pub fn gradient(&self) -> [f64; NVARS] {
        self.eps
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Dual {
            re: self.re + o.re,
            eps: std::array::from_fn(|i| self.eps[i] + o.eps[i]),
        }
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Dual {
            re: self.re - o.re,
            eps: std::array::from_fn(|i| self.eps[i] - o.eps[i]),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Dual {
            re: self.re * o.re,
            eps: std::array::from_fn(|i| self.eps[i] * o.re + o.eps[i] * self.re),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let inv = o.re.recip();
        let q = self.re * inv;
        Dual {
            re: q,
            eps: std::array::from_fn(|i| (self.eps[i] - o.eps[i] * q) * inv),
        }
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Dual {
            re: -self.re,
            eps: self.eps.map(|e| -e),
        }
    }
}

impl<T: Scalar> Add<f64> for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, c: f64) -> Self {
        Dual {
            re: self.re + c,
            eps: self.eps,
        }
    }
}

impl<T: Scalar> Sub<f64> for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, c: f64) -> Self {
        Dual {
            re: self.re - c,
            eps: self.eps,
        }
    }
}

impl<T: Scalar> Mul<f64> for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, c: f64) -> Self {
        Dual {
            re: self.re * c,
            eps: self.eps.map(|e| e * c),
        }
    }
}

impl<T: Scalar> Div<f64> for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, c: f64) -> Self {
        Dual {
            re: self.re / c,
            eps: self.eps.map(|e| e / c),
        }
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn cst(v: f64) -> Self {
        Dual::constant(T::cst(v))
    }

    fn re(&self) -> f64 {
        self.re.re()
    }

    fn sin(self) -> Self {
        self.chain(self.re.sin(), self.re.cos())
    }

    fn cos(self) -> Self {
        self.chain(self.re.cos(), -self.re.sin())
    }

    fn sinh(self) -> Self {
        self.chain(self.re.sinh(), self.re.cosh())
    }

    fn cosh(self) -> Self {
        self.chain(self.re.cosh(), self.re.sinh())
    }

    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }

    fn exp_m1(self) -> Self {
        self.chain(self.re.exp_m1(), self.re.exp())
    }

    fn ln(self) -> Self {
        self.chain(self.re.ln(), self.re.recip())
    }

    fn ln_1p(self) -> Self {
        self.chain(self.re.ln_1p(), (self.re + 1.0).recip())
    }

    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        self.chain(s, (s * 2.0).recip())
    }

    fn atan(self) -> Self {
        self.chain(self.re.atan(), (self.re.sq() + 1.0).recip())
    }

    fn atanh(self) -> Self {
        self.chain(self.re.atanh(), (-self.re.sq() + 1.0).recip())
    }

    fn asin(self) -> Self {
        self.chain(self.re.asin(), (-self.re.sq() + 1.0).sqrt().recip())
    }

    fn asinh(self) -> Self {
        self.chain(self.re.asinh(), (self.re.sq() + 1.0).sqrt().recip())
    }

    fn atan2(self, x: Self) -> Self {
        let r2 = (self.re.sq() + x.re.sq()).recip();
        Dual {
            re: self.re.atan2(x.re),
            eps: std::array::from_fn(|i| (x.re * self.eps[i] - self.re * x.eps[i]) * r2),
        }
    }

    fn powi(self, n: i32) -> Self {
        match n {
            0 => Self::cst(1.0),
            1 => self,
            _ => self.chain(self.re.powi(n), self.re.powi(n - 1) * n as f64),
        }
    }
}
