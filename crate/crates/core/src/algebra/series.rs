use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{PolyXY, PolyY};
use super::ring::{factorial_big, Ring};
use crate::error::{Error, Result};

/// Truncated exponential generating function `Σ_{n=0}^{N} c_n t^n/n!`.
///
/// Coefficients are stored n!-scaled: `coeff(n)` is the coefficient of
/// `t^n/n!`, so products are binomial convolutions. Every binary operation
/// requires both operands to have the same order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfSeries<C: Ring> {
    coeffs: Vec<C>,
}

/// Row `n` of Pascal's triangle as rationals.
fn pascal_row(n: usize) -> Vec<BigRational> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(BigRational::from_integer(c.clone()));
    for k in 1..=n {
        c = c * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(BigRational::from_integer(c.clone()));
    }
    row
}

impl<C: Ring> EgfSeries<C> {
    /// Builds a series of order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a series needs at least the constant term"));
        }
        Ok(EgfSeries { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        EgfSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| C::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 0 { C::one() } else { C::zero() })
    }

    /// `e^t` with coefficients in `C`.
    pub fn exp_t(order: usize) -> Self {
        Self::from_fn(order, |_| C::one())
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 1 { C::one() } else { C::zero() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn map<D: Ring>(&self, f: impl FnMut(&C) -> D) -> EgfSeries<D> {
        EgfSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Keeps the first `order + 1` coefficients.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::invalid(format!(
                "cannot truncate a series of order {} to order {order}",
                self.order()
            )));
        }
        Ok(EgfSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::invalid(format!(
                "series order mismatch: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self> {
        self.check_order(other)?;
        Ok(EgfSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.zip(other, C::plus)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.zip(other, C::minus)
    }

    pub fn negated(&self) -> Self {
        self.map(C::negated)
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        self.map(|v| v.scaled(c))
    }

    /// Multiplies every coefficient by the same ring element.
    pub fn times_coeff(&self, c: &C) -> Self {
        self.map(|v| v.times(c))
    }

    /// EGF product: `c_n = Σ_k C(n,k) a_k b_{n-k}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = (0..=self.order())
            .map(|n| {
                let row = pascal_row(n);
                (0..=n).fold(C::zero(), |acc, k| {
                    let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.plus(&a.times(b).scaled(&row[k]))
                    }
                })
            })
            .collect();
        Ok(EgfSeries { coeffs })
    }

    fn require_constant_one(&self, op: &str) -> Result<()> {
        if !self.coeffs[0].is_one() {
            return Err(Error::invalid(format!("{op} requires constant term 1")));
        }
        Ok(())
    }

    /// Multiplicative inverse; requires `c_0 = 1`.
    pub fn reciprocal(&self) -> Result<Self> {
        self.require_constant_one("reciprocal")?;
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(C::one());
        for n in 1..=self.order() {
            let row = pascal_row(n);
            let mut acc = C::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = acc.plus(&a.times(&out[n - k]).scaled(&row[k]));
                }
            }
            out.push(acc.negated());
        }
        Ok(EgfSeries { coeffs: out })
    }

    /// Logarithm; requires `c_0 = 1`. Uses `a' = a · (log a)'` coefficientwise.
    pub fn log(&self) -> Result<Self> {
        self.require_constant_one("log")?;
        let a = &self.coeffs;
        let mut b: Vec<C> = vec![C::zero(); a.len()];
        for n in 0..self.order() {
            let row = pascal_row(n);
            let mut acc = a[n + 1].clone();
            for k in 0..n {
                if !b[k + 1].is_zero() && !a[n - k].is_zero() {
                    acc = acc.minus(&b[k + 1].times(&a[n - k]).scaled(&row[k]));
                }
            }
            b[n + 1] = acc;
        }
        Ok(EgfSeries { coeffs: b })
    }

    /// Exponential; requires `c_0 = 0`. Uses `e' = b' · e`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::invalid("exp requires constant term 0"));
        }
        let b = &self.coeffs;
        let mut e: Vec<C> = Vec::with_capacity(b.len());
        e.push(C::one());
        for n in 0..self.order() {
            let row = pascal_row(n);
            let mut acc = C::zero();
            for k in 0..=n {
                if !b[k + 1].is_zero() {
                    acc = acc.plus(&b[k + 1].times(&e[n - k]).scaled(&row[k]));
                }
            }
            e.push(acc);
        }
        Ok(EgfSeries { coeffs: e })
    }

    /// `∫_0^t`: `b_{n+1} = a_n`, `b_0 = 0`; the top coefficient falls off.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        EgfSeries { coeffs }
    }

    /// `d/dt`; the result keeps order `N` with a zero top coefficient.
    pub fn derivative(&self) -> Self {
        let mut coeffs: Vec<C> = self.coeffs[1..].to_vec();
        coeffs.push(C::zero());
        EgfSeries { coeffs }
    }

    /// Coefficient of `t^n` (not n!-scaled).
    pub fn ordinary_coeff(&self, n: usize) -> C {
        let inv = BigRational::new(BigInt::one(), factorial_big(n as u64));
        self.coeffs[n].scaled(&inv)
    }
}

impl EgfSeries<PolyY> {
    /// `(1/u)^x = exp(-x·log u)`, expanded exactly as `Σ_k x^k L^k / k!`
    /// with `L = -log u`. Requires `u_0 = 1`.
    pub fn pow_symbolic_x(&self) -> Result<EgfSeries<PolyXY>> {
        let log_inv = self.log()?.negated();
        let order = self.order();
        let mut out: Vec<PolyXY> = vec![PolyXY::zero(); order + 1];
        out[0] = PolyXY::one();
        // power = L^k / k!; it vanishes below t^k.
        let mut power = EgfSeries::<PolyY>::one(order);
        for k in 1..=order {
            power = power
                .mul(&log_inv)?
                .scaled(&BigRational::new(BigInt::one(), BigInt::from(k)));
            for (n, slot) in out.iter_mut().enumerate().skip(k) {
                let c = power.coeff(n);
                if !c.is_zero() {
                    *slot = slot.plus(&c.lift(k as u32));
                }
            }
        }
        Ok(EgfSeries { coeffs: out })
    }

    /// The y^k coefficient of every term, as a rational series.
    pub fn y_slice(&self, k: u32) -> EgfSeries<BigRational> {
        self.map(|p| p.coeff(k))
    }

    pub fn eval_y(&self, y: &BigRational) -> EgfSeries<BigRational> {
        self.map(|p| p.eval(y))
    }
}

impl EgfSeries<PolyXY> {
    /// Termwise substitution of both variables.
    pub fn specialize(&self, x: &BigRational, y: &BigRational) -> EgfSeries<BigRational> {
        self.map(|p| p.eval(x, y))
    }

    pub fn eval_x(&self, x: &BigRational) -> EgfSeries<PolyY> {
        self.map(|p| p.eval_x(x))
    }
}

pub fn series_mul<C: Ring>(a: &EgfSeries<C>, b: &EgfSeries<C>) -> Result<EgfSeries<C>> {
    a.mul(b)
}

pub fn series_integrate<C: Ring>(a: &EgfSeries<C>) -> EgfSeries<C> {
    a.integrate()
}
