//! Closed forms for `τ = 1324…p`: the low-order slices `A`, `B`, `C` of
//! `U_τ(t,y)`, the one- and two-descent counts `d^{(1)}_{n,p}`,
//! `d^{(2)}_{n,p}`, and coefficient identities of `NM_{τ,n}(x,y)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{binomial, factorial_big, int, rat, EgfSeries, PolyXY};
use crate::error::{Error, Result};
use crate::recursions::{nm_series, u_coeffs, PatternFamily};

/// Stirling number of the second kind.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = &row[j] * BigInt::from(j) + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

pub fn catalan(k: usize) -> BigInt {
    binomial(2 * k as i64, k as i64) / BigInt::from(k + 1)
}

fn big(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn check_p(p: usize) -> Result<()> {
    if p < 4 {
        return Err(Error::invalid(format!("1324…p needs p >= 4, got {p}")));
    }
    Ok(())
}

/// A polynomial in `n` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NPoly(Vec<BigRational>);

impl NPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        NPoly(coeffs)
    }

    /// `C(n + a, 2)`.
    fn choose2_shift(a: i64) -> Self {
        NPoly(vec![rat(a * (a - 1), 2), rat(2 * a - 1, 2), rat(1, 2)])
    }

    fn plus(&self, other: &NPoly) -> NPoly {
        let len = self.0.len().max(other.0.len());
        NPoly(
            (0..len)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_default()
                        + other.0.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    fn scaled(&self, c: i64) -> NPoly {
        NPoly(self.0.iter().map(|a| a * int(c)).collect())
    }

    pub fn eval(&self, n: usize) -> BigRational {
        let n = int(n as i64);
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &n + c)
    }
}

/// One piece of a piecewise rule: `poly(n)` for `start <= n <= end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub start: usize,
    pub end: Option<usize>,
    pub poly: NPoly,
}

impl Piece {
    fn contains(&self, n: usize) -> bool {
        n >= self.start && self.end.is_none_or(|e| n <= e)
    }
}

/// `U_{1324…p,n}(y)|_{y^k}` for `k = 1, 2, 3` as counts of fixed points with
/// `k` bricks. `U|_y = -A`, `U|_{y²} = B`, `U|_{y³} = -C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowOrderSlices {
    p: usize,
    rules: [Vec<Piece>; 3],
}

impl LowOrderSlices {
    pub fn new(p: usize) -> Result<Self> {
        check_p(p)?;
        let pi = p as i64;
        let piece = |start, end, poly| Piece { start, end, poly };
        let a = vec![piece(1, None, NPoly(vec![int(1)]))];
        let b = vec![
            piece(2, Some(p - 1), NPoly(vec![int(-1), int(1)])),
            piece(p, None, NPoly(vec![int(-pi), int(2)])),
        ];
        let first = NPoly::choose2_shift(-1);
        let c = if p == 4 {
            vec![
                piece(3, Some(4), first),
                piece(5, None, NPoly(vec![int(18), int(-12), int(2)])),
            ]
        } else {
            let second = first.plus(&NPoly::choose2_shift(1 - pi).scaled(2));
            let third = second.plus(&NPoly::choose2_shift(4 - 2 * pi));
            vec![
                piece(3, Some(p), first),
                piece(p + 1, Some(2 * p - 3), second),
                piece(2 * p - 2, None, third),
            ]
        };
        Ok(LowOrderSlices {
            p,
            rules: [a, b, c],
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn rules(&self, power: u32) -> Result<&[Piece]> {
        match power {
            1..=3 => Ok(&self.rules[power as usize - 1]),
            _ => Err(Error::invalid(format!(
                "slices exist for y, y^2, y^3, not y^{power}"
            ))),
        }
    }

    /// The unsigned count `A_n`, `B_n` or `C_n`.
    pub fn count(&self, n: usize, power: u32) -> Result<BigRational> {
        Ok(self
            .rules(power)?
            .iter()
            .find(|piece| piece.contains(n))
            .map(|piece| piece.poly.eval(n))
            .unwrap_or_default())
    }

    /// `A(t)`, `B(t)` or `C(t)` through `t^N`.
    pub fn series(&self, power: u32, order: usize) -> Result<EgfSeries<BigRational>> {
        self.rules(power)?;
        Ok(EgfSeries::from_fn(order, |n| {
            self.count(n, power).expect("power checked")
        }))
    }

    /// The printed exponential form of `A`, `B` or `C`.
    pub fn closed(&self, power: u32) -> Result<ExpPolynomial> {
        let p = self.p as i64;
        Ok(match (power, self.p) {
            (1, _) => ExpPolynomial::new().with(1, &[int(1)]).with(0, &[int(-1)]),
            (2, _) => {
                let mut poly = vec![int(p)];
                poly.extend(
                    (1..=p - 2)
                        .map(|n| big(BigInt::from(p - n - 1)) / big(factorial_big(n as u64))),
                );
                ExpPolynomial::new()
                    .with(1, &[int(-p), int(2)])
                    .with(0, &poly)
            }
            (3, 4) => ExpPolynomial::new()
                .with(1, &[int(18), int(-10), int(2)])
                .with(0, &[int(-18), int(-8), int(-1), rat(1, 6), rat(1, 24)]),
            (3, _) => {
                let poly = (0..=2 * self.p - 3)
                    .map(|n| Ok(f_table(n, self.p)? / big(factorial_big(n as u64))))
                    .collect::<Result<Vec<_>>>()?;
                ExpPolynomial::new()
                    .with(1, &[int(3 * p * p - 8 * p + 7), int(5 - 4 * p), int(2)])
                    .with(0, &poly)
            }
            _ => return Err(Error::invalid(format!("no slice for y^{power}"))),
        })
    }
}

/// Signed `U_{1324…p,n}(y)|_{y^power}`, as it appears in the U tables.
pub fn u_slice(p: usize, n: usize, power: u32) -> Result<BigRational> {
    let count = LowOrderSlices::new(p)?.count(n, power)?;
    Ok(if power % 2 == 1 { -count } else { count })
}

/// `Σ_r e^{r t} P_r(t)` with rational polynomials `P_r` given by ordinary
/// coefficients; `r = 0` is the polynomial part.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpPolynomial {
    parts: BTreeMap<u32, Vec<BigRational>>,
}

impl ExpPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `e^{rate·t} Σ_k coeffs[k] t^k`.
    pub fn with(mut self, rate: u32, coeffs: &[BigRational]) -> Self {
        let slot = self.parts.entry(rate).or_default();
        if slot.len() < coeffs.len() {
            slot.resize(coeffs.len(), BigRational::zero());
        }
        for (s, c) in slot.iter_mut().zip(coeffs) {
            *s += c;
        }
        self
    }

    pub fn plus(&self, other: &ExpPolynomial) -> ExpPolynomial {
        other
            .parts
            .iter()
            .fold(self.clone(), |acc, (&r, c)| acc.with(r, c))
    }

    pub fn scaled(&self, c: &BigRational) -> ExpPolynomial {
        ExpPolynomial {
            parts: self
                .parts
                .iter()
                .map(|(&r, p)| (r, p.iter().map(|a| a * c).collect()))
                .collect(),
        }
    }

    pub fn times(&self, other: &ExpPolynomial) -> ExpPolynomial {
        let mut out = ExpPolynomial::new();
        for (&r, a) in &self.parts {
            for (&s, b) in &other.parts {
                let mut prod = vec![BigRational::zero(); a.len() + b.len()];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] += x * y;
                    }
                }
                out = out.with(r + s, &prod);
            }
        }
        out
    }

    /// The coefficient of `t^n/n!`.
    pub fn coeff(&self, n: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for (&rate, poly) in &self.parts {
            let mut falling = BigInt::one();
            for (k, c) in poly.iter().enumerate().take(n + 1) {
                if !c.is_zero() {
                    let power = BigInt::from(rate).pow((n - k) as u32);
                    acc += c * big(&falling * power);
                }
                falling *= BigInt::from(n - k);
            }
        }
        acc
    }

    pub fn series(&self, order: usize) -> EgfSeries<BigRational> {
        EgfSeries::from_fn(order, |n| self.coeff(n))
    }
}

impl fmt::Display for ExpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&rate, poly) in self.parts.iter().rev() {
            let terms: Vec<String> = poly
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| match k {
                    0 => format!("{c}"),
                    1 => format!("({c})t"),
                    _ => format!("({c})t^{k}"),
                })
                .collect();
            if terms.is_empty() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match rate {
                0 => write!(f, "{}", terms.join(" + "))?,
                1 => write!(f, "({})e^t", terms.join(" + "))?,
                _ => write!(f, "({})e^{{{rate}t}}", terms.join(" + "))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `f(n,p)`, the polynomial correction in `C_{1324…p}(t)`, solved termwise
/// from the exact `U|_{y³}` series.
pub fn f_table(n: usize, p: usize) -> Result<BigRational> {
    check_p(p)?;
    if p < 5 || n > 2 * p - 3 {
        return Err(Error::OutOfRange(format!(
            "f(n,p) is defined for p >= 5 and n <= 2p-3, got n = {n}, p = {p}"
        )));
    }
    let c_n = if n == 0 {
        BigRational::zero()
    } else {
        -u_coeffs(&PatternFamily::identity_132p(p)?, n)?
            .get(n)
            .coeff(3)
    };
    let (pi, ni) = (p as i64, n as i64);
    let exp_part = int(2 * ni * (ni - 1) + (5 - 4 * pi) * ni + 3 * pi * pi - 8 * pi + 7);
    Ok(c_n - exp_part)
}

/// `D^{(i)}_p(t)` for `i = 1, 2` in the printed exponential form.
pub fn d_closed(p: usize, i: u32) -> Result<ExpPolynomial> {
    check_p(p)?;
    let pi = p as i64;
    let fact = |n: i64| big(factorial_big(n as u64));
    match (i, p) {
        (1, _) => {
            let poly: Vec<_> = (0..=pi - 2).map(|n| -int(pi - 1 - n) / fact(n)).collect();
            Ok(ExpPolynomial::new()
                .with(2, &[int(1)])
                .with(1, &[int(pi - 2), int(-2)])
                .with(0, &poly))
        }
        (2, 4) => Ok(ExpPolynomial::new()
            .with(3, &[int(1)])
            .with(2, &[int(5), int(-4)])
            .with(1, &[int(5), int(-10), int(1)])
            .with(0, &[int(-11), int(-4), int(0), rat(1, 6), rat(1, 24)])),
        (2, _) => {
            let mut e1 = vec![
                int(3 * pi * pi - 12 * pi + 10),
                int(13 - 6 * pi),
                int(5 - pi),
            ];
            let mut tail = vec![int(0); p - 1];
            tail[0] = int(2 * pi - 1);
            for n in 1..=pi - 2 {
                let c = int(2 * (pi - n - 1)) / fact(n);
                if n >= 3 {
                    e1.push(-c.clone());
                }
                tail[n as usize] = c;
            }
            let f: Vec<_> = (0..=2 * p - 3)
                .map(|n| Ok(f_table(n, p)? / fact(n as i64)))
                .collect::<Result<_>>()?;
            Ok(ExpPolynomial::new()
                .with(3, &[int(1)])
                .with(2, &[int(2 * pi - 3), int(-4)])
                .with(1, &e1)
                .with(0, &tail)
                .with(0, &f))
        }
        _ => Err(Error::invalid(format!(
            "D^({i}) is only defined for i = 1, 2"
        ))),
    }
}

/// `d^{(1)}_{n,p}`: `2^n - 2n + 2` for `p = 4` and `2^n - 2n + p - 2` for
/// `p >= 5`, valid for `n >= p - 1`.
pub fn d1(n: usize, p: usize) -> Result<BigInt> {
    check_p(p)?;
    if n + 1 < p {
        return Err(Error::OutOfRange(format!(
            "d1 closed form needs n >= p-1 = {}, got n = {n}; use the series",
            p - 1
        )));
    }
    Ok((BigInt::one() << n) - BigInt::from(2 * n) + BigInt::from(p - 2))
}

/// `d^{(2)}_{n,p}`, valid for `n >= 5` when `p = 4` and `n >= 2p - 2`
/// otherwise.
pub fn d2(n: usize, p: usize) -> Result<BigInt> {
    check_p(p)?;
    let start = if p == 4 { 5 } else { 2 * p - 2 };
    if n < start {
        return Err(Error::OutOfRange(format!(
            "d2 closed form needs n >= {start} for p = {p}, got n = {n}; use the series"
        )));
    }
    let (ni, pi) = (n as i64, p as i64);
    let pow3 = big(BigInt::from(3).pow(n as u32));
    let pow2 = big(BigInt::one() << n);
    let value = if p == 4 {
        pow3 + int(5 - 2 * ni) * pow2 + int(ni * ni - 11 * ni + 5)
    } else {
        let mut v = pow3
            + int(2 * pi - 3 - 2 * ni) * pow2
            + int(3 * pi * pi - 12 * pi + 10 + (13 - 6 * pi) * ni + (5 - pi) * ni * (ni - 1));
        for k in 3..=pi - 2 {
            let falling = big((0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(ni - i)));
            v -= int(2 * (pi - k - 1)) * falling / big(factorial_big(k as u64));
        }
        v
    };
    if !value.is_integer() {
        return Err(Error::invalid("d2 closed form gave a non-integer"));
    }
    Ok(value.to_integer())
}

/// `D^{(i)}_p(t)`, the `y^{i+1}` slice of `NM_{1324…p}(t,1,y) = 1/U(t,y)`
/// through `t^N`. Any `i >= 0` is accepted.
pub fn d_series(p: usize, i: u32, order: usize) -> Result<EgfSeries<BigRational>> {
    check_p(p)?;
    let family = PatternFamily::identity_132p(p)?;
    let u = if order == 0 {
        EgfSeries::one(0)
    } else {
        u_coeffs(&family, order)?.series()
    };
    Ok(u.reciprocal()?.y_slice(i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Series,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed form",
            Method::Series => "series",
        })
    }
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentCount {
    pub p: usize,
    pub descents: u32,
    pub n: usize,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
    pub method: Method,
}

/// Permutations of length `n` with `k` descents and no `1324…p`-match,
/// by closed form when one applies and series extraction otherwise.
pub fn descents(p: usize, k: u32, n: usize) -> Result<DescentCount> {
    check_p(p)?;
    let closed = match k {
        1 => d1(n, p).ok(),
        2 => d2(n, p).ok(),
        _ => None,
    };
    let (value, method) = match closed {
        Some(v) => (v, Method::ClosedForm),
        None => {
            let c = d_series(p, k, n)?.coeff(n).clone();
            (c.to_integer(), Method::Series)
        }
    };
    Ok(DescentCount {
        p,
        descents: k,
        n,
        value,
        method,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub p: usize,
    pub n: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks `[x^k y^k] = S(n,k)`, the `[x y²]` count and
/// `[x^{n-1} y^{n-1}] = C(n,2)` on `n! [t^n] NM_{1324…p}(t,x,y)`.
pub fn coeff_identities(p: usize, n: usize) -> Result<IdentityReport> {
    check_p(p)?;
    let family = PatternFamily::identity_132p(p)?;
    let poly: PolyXY = nm_series(&family, n)?.coeff(n).clone();
    let mut checks = Vec::new();
    let mut check = |name: String, expected: BigInt, actual: BigRational| {
        let expected = big(expected);
        checks.push(IdentityCheck {
            name,
            pass: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    };
    for k in 1..=n {
        check(
            format!("[x^{k} y^{k}] = S({n},{k})"),
            stirling2(n, k),
            poly.coeff(k as u32, k as u32),
        );
    }
    if n >= 1 {
        let base = (BigInt::one() << (n - 1)) - BigInt::from(n);
        let expected = if n < p {
            base
        } else {
            base - BigInt::from(n + 1 - p)
        };
        check(
            format!("[x y^2] (n = {n}, p = {p})"),
            expected,
            poly.coeff(1, 2),
        );
    }
    if n >= 2 {
        let k = n as u32 - 1;
        check(
            format!("[x^{k} y^{k}] = C({n},2)"),
            binomial(n as i64, 2),
            poly.coeff(k, k),
        );
    }
    Ok(IdentityReport { p, n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_and_catalan() {
        for n in 1..12 {
            assert_eq!(stirling2(n, 2), (BigInt::one() << (n - 1)) - 1);
            assert_eq!(stirling2(n, n), BigInt::one());
            assert_eq!(stirling2(n, 1), BigInt::one());
        }
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(5, 3), BigInt::from(25));
        let c: Vec<_> = (0..4).map(catalan).collect();
        assert_eq!(c, [1, 1, 2, 5].map(BigInt::from));
    }

    #[test]
    fn slice_examples() {
        assert_eq!(u_slice(6, 9, 1).unwrap(), int(-1));
        assert_eq!(u_slice(5, 7, 2).unwrap(), int(9));
        assert_eq!(u_slice(4, 7, 3).unwrap(), int(-32));
        assert_eq!(u_slice(4, 0, 1).unwrap(), int(0));
        assert!(u_slice(3, 5, 1).is_err());
        assert!(u_slice(4, 5, 4).is_err());
    }

    #[test]
    fn f_printed_branches() {
        for p in 5..=8i64 {
            let pu = p as usize;
            assert_eq!(f_table(0, pu).unwrap(), int(-3 * p * p + 8 * p - 7));
            assert_eq!(f_table(1, pu).unwrap(), int(-3 * p * p + 12 * p - 12));
            assert_eq!(f_table(2, pu).unwrap(), int(-3 * p * p + 16 * p - 21));
        }
        assert_eq!(f_table(0, 5).unwrap(), int(-42));
        assert_eq!(f_table(1, 5).unwrap(), int(-27));
        assert!(f_table(8, 5).is_err());
    }

    #[test]
    fn d_examples() {
        assert_eq!(d1(4, 4).unwrap(), BigInt::from(10));
        assert_eq!(d1(5, 4).unwrap(), BigInt::from(24));
        assert_eq!(d1(4, 5).unwrap(), BigInt::from(11));
        assert_eq!(d2(5, 4).unwrap(), BigInt::from(58));
        assert!(d2(4, 4).is_err());
        assert!(d2(7, 5).is_err());
        assert!(d1(2, 5).is_err());
    }

    #[test]
    fn exp_polynomial_coefficients() {
        // (2t - 4)e^t + 4 + 2t + t^2/2
        let b = LowOrderSlices::new(4).unwrap().closed(2).unwrap();
        let got: Vec<_> = (0..7).map(|n| b.coeff(n)).collect();
        assert_eq!(got, [0, 0, 1, 2, 4, 6, 8].map(int));
        let sq = b.times(&b);
        let direct = b.series(10).mul(&b.series(10)).unwrap();
        assert_eq!(sq.series(10), direct);
    }

    #[test]
    fn descents_choose_method() {
        let d = descents(4, 1, 2).unwrap();
        assert_eq!((d.value, d.method), (BigInt::one(), Method::Series));
        let d = descents(5, 2, 20).unwrap();
        assert_eq!(d.method, Method::ClosedForm);
        assert_eq!(
            d.value,
            descents(5, 2, 7).map(|_| d2(20, 5).unwrap()).unwrap()
        );
        assert_eq!(descents(4, 3, 6).unwrap().method, Method::Series);
    }
}
