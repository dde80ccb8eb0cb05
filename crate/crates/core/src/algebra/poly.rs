use std::collections::BTreeMap;
use std::fmt::{self, Debug, Write as _};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{abs_rat, Ring};
use crate::error::{Error, Result};

/// Exponent vector of a monomial. Multiplication of monomials adds exponents.
pub trait Monomial: Copy + Ord + Hash + Debug + Send + Sync + 'static {
    fn unit() -> Self;
    fn times(self, other: Self) -> Self;
    /// `(x, y)` exponents, `x` is 0 for univariate monomials.
    fn exponents(self) -> (u32, u32);
    fn from_exponents(x: u32, y: u32) -> Option<Self>;
}

/// Monomial `y^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Y(pub u32);

/// Monomial `x^x y^y`. Ordered by `y` first, then `x`, the order in
/// which the printed tables list their terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XY {
    pub y: u32,
    pub x: u32,
}

impl XY {
    pub fn new(x: u32, y: u32) -> Self {
        XY { y, x }
    }
}

impl Monomial for Y {
    fn unit() -> Self {
        Y(0)
    }
    fn times(self, other: Self) -> Self {
        Y(self.0 + other.0)
    }
    fn exponents(self) -> (u32, u32) {
        (0, self.0)
    }
    fn from_exponents(x: u32, y: u32) -> Option<Self> {
        (x == 0).then_some(Y(y))
    }
}

impl Monomial for XY {
    fn unit() -> Self {
        XY { y: 0, x: 0 }
    }
    fn times(self, other: Self) -> Self {
        XY {
            y: self.y + other.y,
            x: self.x + other.x,
        }
    }
    fn exponents(self) -> (u32, u32) {
        (self.x, self.y)
    }
    fn from_exponents(x: u32, y: u32) -> Option<Self> {
        Some(XY { y, x })
    }
}

/// Sparse polynomial with exact rational coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<M: Monomial> {
    terms: BTreeMap<M, BigRational>,
}

pub type PolyY = Poly<Y>;
pub type PolyXY = Poly<XY>;

impl<M: Monomial> Default for Poly<M> {
    fn default() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Monomial> Poly<M> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(M::unit(), c)
    }

    pub fn monomial(m: M, c: BigRational) -> Self {
        let mut p = Self::default();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (M, BigRational)>) -> Self {
        let mut p = Self::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: M, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, m: &M) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&M, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Sum of all coefficients, i.e. the value at `x = y = 1`.
    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn to_text(&self) -> String {
        self.render(Style::Text)
    }

    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }

    fn render(&self, style: Style) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let (plus, minus) = match style {
            Style::Text => (" + ", " - "),
            Style::Latex => ("+", "-"),
        };
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { minus } else { plus });
            }
            let magnitude = abs_rat(c);
            let mono = render_monomial(*m, style);
            if mono.is_empty() {
                out.push_str(&render_coefficient(&magnitude, style));
            } else {
                if !magnitude.is_one() {
                    out.push_str(&render_coefficient(&magnitude, style));
                    out.push(' ');
                }
                out.push_str(&mono);
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

fn render_coefficient(c: &BigRational, style: Style) -> String {
    if c.denom().is_one() {
        return c.numer().to_string();
    }
    match style {
        Style::Text => format!("{}/{}", c.numer(), c.denom()),
        Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
    }
}

fn render_monomial<M: Monomial>(m: M, style: Style) -> String {
    let (x, y) = m.exponents();
    let mut parts = Vec::new();
    for (var, e) in [("x", x), ("y", y)] {
        match e {
            0 => {}
            1 => parts.push(var.to_string()),
            e if e > 9 && matches!(style, Style::Latex) => parts.push(format!("{var}^{{{e}}}")),
            e => parts.push(format!("{var}^{e}")),
        }
    }
    parts.join(" ")
}

impl<M: Monomial> Zero for Poly<M> {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<M: Monomial> One for Poly<M> {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl<M: Monomial> std::ops::Add for Poly<M> {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        self.plus(&other)
    }
}

impl<M: Monomial> std::ops::Sub for Poly<M> {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        self.minus(&other)
    }
}

impl<M: Monomial> std::ops::Mul for Poly<M> {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.times(&other)
    }
}

impl<M: Monomial> std::ops::Neg for Poly<M> {
    type Output = Self;
    fn neg(self) -> Self {
        self.negated()
    }
}

impl<M: Monomial> Ring for Poly<M> {
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(*mb), ca * cb);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
    fn scaled(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }
}

impl PolyY {
    pub fn y() -> Self {
        Self::y_pow(1)
    }

    pub fn y_pow(k: u32) -> Self {
        Self::monomial(Y(k), BigRational::one())
    }

    /// Integer-coefficient polynomial from `[c_0, c_1, …]`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (Y(k as u32), BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn coeff(&self, k: u32) -> BigRational {
        self.coefficient(&Y(k))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.0)
    }

    pub fn eval(&self, y: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (m, c)| {
            acc + c * num_traits::pow(y.clone(), m.0 as usize)
        })
    }

    /// `x^x_exp · self` as a bivariate polynomial.
    pub fn lift(&self, x_exp: u32) -> PolyXY {
        PolyXY::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (XY::new(x_exp, m.0), c.clone())),
        )
    }
}

impl PolyXY {
    pub fn x() -> Self {
        Self::monomial(XY::new(1, 0), BigRational::one())
    }

    pub fn coeff(&self, x_exp: u32, y_exp: u32) -> BigRational {
        self.coefficient(&XY::new(x_exp, y_exp))
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (m, c)| {
            acc + c
                * num_traits::pow(x.clone(), m.x as usize)
                * num_traits::pow(y.clone(), m.y as usize)
        })
    }

    /// Substitutes a value for `x`, leaving a polynomial in `y`.
    pub fn eval_x(&self, x: &BigRational) -> PolyY {
        PolyY::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Y(m.y), c * num_traits::pow(x.clone(), m.x as usize))),
        )
    }
}

impl<M: Monomial> fmt::Display for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<M: Monomial> Debug for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write!(s, "Poly({})", self.to_text())?;
        f.write_str(&s)
    }
}

/// Parses sums of terms such as `-y + 6 y^2`, `3 x^2 y^2`, `x*y^{10}` or
/// `\frac{1}{2} x y`. This accepts both [`Poly::to_text`] and
/// [`Poly::to_latex`] output.
impl<M: Monomial> FromStr for Poly<M> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser::new(s);
        let mut out = Poly::default();
        for (x, y, c) in parser.terms()? {
            let m = M::from_exponents(x, y)
                .ok_or_else(|| Error::invalid(format!("unexpected variable x in {s:?}")))?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::invalid(format!(
            "cannot parse polynomial {:?}: {what} at offset {}",
            self.src, self.pos
        ))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().ok()
    }

    fn braced_number(&mut self) -> Result<BigInt> {
        if self.eat('{') {
            let n = self.number().ok_or_else(|| self.err("expected number"))?;
            if !self.eat('}') {
                return Err(self.err("expected '}'"));
            }
            Ok(n)
        } else {
            self.number().ok_or_else(|| self.err("expected number"))
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat('^') {
            return Ok(1);
        }
        let e = self.braced_number()?;
        u32::try_from(e).map_err(|_| self.err("exponent too large"))
    }

    fn terms(&mut self) -> Result<Vec<(u32, u32, BigRational)>> {
        let mut out = Vec::new();
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        if self.chars == ['0'] {
            return Ok(out);
        }
        let mut first = true;
        while self.pos < self.chars.len() {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            first = false;
            let coeff = self.coefficient()?;
            let (mut x, mut y) = (0u32, 0u32);
            let mut saw_factor = false;
            loop {
                self.eat('*');
                if self.eat('x') {
                    x += self.exponent()?;
                } else if self.eat('y') {
                    y += self.exponent()?;
                } else {
                    break;
                }
                saw_factor = true;
            }
            if coeff.is_none_marker() && !saw_factor {
                return Err(self.err("empty term"));
            }
            let value = coeff.into_value();
            out.push((x, y, if negative { -value } else { value }));
        }
        Ok(out)
    }

    fn coefficient(&mut self) -> Result<Coeff> {
        if self.eat_str("\\frac") {
            let num = self.braced_number()?;
            let den = self.braced_number()?;
            return self.nonzero_den(num, den);
        }
        match self.number() {
            None => Ok(Coeff::Implicit),
            Some(num) => {
                if self.eat('/') {
                    let den = self
                        .number()
                        .ok_or_else(|| self.err("expected denominator"))?;
                    self.nonzero_den(num, den)
                } else {
                    Ok(Coeff::Explicit(BigRational::from_integer(num)))
                }
            }
        }
    }

    fn nonzero_den(&self, num: BigInt, den: BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(self.err("zero denominator"));
        }
        Ok(Coeff::Explicit(BigRational::new(num, den)))
    }
}

enum Coeff {
    Implicit,
    Explicit(BigRational),
}

impl Coeff {
    fn is_none_marker(&self) -> bool {
        matches!(self, Coeff::Implicit)
    }
    fn into_value(self) -> BigRational {
        match self {
            Coeff::Implicit => BigRational::one(),
            Coeff::Explicit(c) => c,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, rat};

    fn xy(s: &str) -> PolyXY {
        s.parse().unwrap()
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let p = PolyY::from_coeffs(&[0, 1, 0, -2]);
        assert_eq!(p.len(), 2);
        let q = p.minus(&p);
        assert!(q.is_empty());
        assert_eq!(q.to_text(), "0");
    }

    #[test]
    fn text_and_latex_rendering() {
        let u = PolyY::from_coeffs(&[0, -1, 1]);
        assert_eq!(u.to_text(), "-y + y^2");
        let big = PolyY::from_coeffs(&[0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 10, -1]);
        assert_eq!(big.to_latex(), "-y+10 y^{10}-y^{11}");
        let p = xy("x y + 3 x^2 y^2").scaled(&rat(1, 2));
        assert_eq!(p.to_text(), "1/2 x y + 3/2 x^2 y^2");
        assert_eq!(p.to_latex(), "\\frac{1}{2} x y+\\frac{3}{2} x^2 y^2");
        assert_eq!(PolyY::constant(int(-4)).to_text(), "-4");
    }

    #[test]
    fn parses_printed_forms() {
        let p = xy("x y+24 x y^2+31 x^2 y^2+62 x y^3");
        assert_eq!(p.coeff(1, 2), int(24));
        assert_eq!(p.coeff(2, 2), int(31));
        let q: PolyY = "-y+17 y^2-97 y^3+10 y^{10}-y^{11}".parse().unwrap();
        assert_eq!(q.coeff(10), int(10));
        assert_eq!(q.coeff(11), int(-1));
        assert_eq!(xy("x*y^2 - \\frac{3}{4}x^2"), xy("x y^2 - 3/4 x^2"));
        assert_eq!(xy("x^2y^2").coeff(2, 2), int(1));
        assert!("x y".parse::<PolyY>().is_err());
        assert!("3 + + y".parse::<PolyY>().is_err());
        assert!("1/0 y".parse::<PolyY>().is_err());
        assert!("".parse::<PolyY>().is_err());
        assert_eq!("0".parse::<PolyY>().unwrap(), PolyY::new());
    }

    #[test]
    fn coefficient_and_evaluation() {
        let p = xy("x y + x^2 y^2");
        assert_eq!(p.coeff(2, 2), int(1));
        assert_eq!(p.coeff(0, 0), int(0));
        assert_eq!(p.eval(&int(2), &int(3)), int(6 + 36));
        assert_eq!(p.eval_x(&int(1)), "y + y^2".parse().unwrap());
        assert_eq!(p.coefficient_sum(), int(2));
        let u = PolyY::from_coeffs(&[1, 2]);
        assert_eq!(u.times(&u), PolyY::from_coeffs(&[1, 4, 4]));
        assert_eq!(u.eval(&rat(1, 2)), int(2));
        assert_eq!(u.lift(3), xy("x^3 + 2 x^3 y"));
        assert_eq!(u.degree(), Some(1));
    }
}
