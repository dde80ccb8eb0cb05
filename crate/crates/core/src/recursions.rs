//! `U_{τ,n}(y)` for the pattern families with known recursions, and the
//! assembly `NM_τ(t,x,y) = (1/U_τ(t,y))^x`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{binomial, factorial_big, EgfSeries, PolyXY, PolyY, Ring};
use crate::error::{Error, Result};
use crate::oracle::brute_nm_poly;
use crate::permcore::Pattern;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternFamily {
    /// τ = 1 3 2 4 5 … p
    Identity132p { p: usize },
    /// τ = 1 p 2 3 … (p-1)
    OneP2 { p: usize },
    /// τ = 1 3 4 … (p-1) 2 p
    Fuss { p: usize },
    /// τ starts with 1 and ends with 2.
    EndsInTwo { pattern: Pattern },
    /// τ = 1 2 … (j-1) γ j with γ a permutation of j+1..j+p.
    MiddleGamma { pattern: Pattern },
    /// Any τ starting with 1; U comes from the brute-force oracle.
    Generic { pattern: Pattern },
}

impl PatternFamily {
    pub fn identity_132p(p: usize) -> Result<Self> {
        let f = PatternFamily::Identity132p { p };
        f.validate()?;
        Ok(f)
    }

    pub fn one_p2(p: usize) -> Result<Self> {
        let f = PatternFamily::OneP2 { p };
        f.validate()?;
        Ok(f)
    }

    pub fn fuss(p: usize) -> Result<Self> {
        let f = PatternFamily::Fuss { p };
        f.validate()?;
        Ok(f)
    }

    pub fn ends_in_two(pattern: Pattern) -> Result<Self> {
        let f = PatternFamily::EndsInTwo { pattern };
        f.validate()?;
        Ok(f)
    }

    pub fn middle_gamma(pattern: Pattern) -> Result<Self> {
        let f = PatternFamily::MiddleGamma { pattern };
        f.validate()?;
        Ok(f)
    }

    pub fn generic(pattern: Pattern) -> Result<Self> {
        let f = PatternFamily::Generic { pattern };
        f.validate()?;
        Ok(f)
    }

    /// Picks the most specific family whose recursion covers `pattern`.
    pub fn classify(pattern: &Pattern) -> Result<Self> {
        let len = pattern.len();
        let candidates = [
            PatternFamily::Identity132p { p: len },
            PatternFamily::OneP2 { p: len },
            PatternFamily::Fuss { p: len },
        ];
        for f in candidates {
            if f.validate().is_ok() && f.pattern().as_ref() == Ok(pattern) {
                return Ok(f);
            }
        }
        for f in [
            PatternFamily::MiddleGamma {
                pattern: pattern.clone(),
            },
            PatternFamily::EndsInTwo {
                pattern: pattern.clone(),
            },
        ] {
            if f.validate().is_ok() {
                return Ok(f);
            }
        }
        PatternFamily::generic(pattern.clone())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::invalid(msg));
        match self {
            PatternFamily::Identity132p { p } if *p < 4 => {
                bad(format!("1324..p needs p >= 4, got {p}"))
            }
            PatternFamily::OneP2 { p } if *p < 4 => {
                bad(format!("1p2..(p-1) needs p >= 4, got {p}"))
            }
            PatternFamily::Fuss { p } if *p < 5 => {
                bad(format!("134..(p-1)2p needs p >= 5, got {p}"))
            }
            PatternFamily::EndsInTwo { pattern } => {
                let e = pattern.entries();
                if e.len() < 3 || e[0] != 1 || e[e.len() - 1] != 2 {
                    return bad(format!(
                        "{pattern} does not start with 1 and end with 2 (length >= 3)"
                    ));
                }
                Ok(())
            }
            PatternFamily::MiddleGamma { pattern } => middle_gamma_params(pattern).map(|_| ()),
            PatternFamily::Generic { pattern } if !pattern.starts_with_one() => {
                bad(format!("{pattern} does not start with 1"))
            }
            _ => Ok(()),
        }
    }

    /// The pattern τ this family describes.
    pub fn pattern(&self) -> Result<Pattern> {
        self.validate()?;
        let entries: Vec<u32> = match self {
            PatternFamily::Identity132p { p } => {
                let mut v = vec![1, 3, 2];
                v.extend(4..=*p as u32);
                v
            }
            PatternFamily::OneP2 { p } => {
                let mut v = vec![1, *p as u32];
                v.extend(2..*p as u32);
                v
            }
            PatternFamily::Fuss { p } => {
                let mut v = vec![1];
                v.extend(3..*p as u32);
                v.extend([2, *p as u32]);
                v
            }
            PatternFamily::EndsInTwo { pattern }
            | PatternFamily::MiddleGamma { pattern }
            | PatternFamily::Generic { pattern } => return Ok(pattern.clone()),
        };
        Pattern::from_entries(&entries)
    }
}

impl fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PatternFamily::Identity132p { .. } => "1324..p",
            PatternFamily::OneP2 { .. } => "1p2..(p-1)",
            PatternFamily::Fuss { .. } => "134..(p-1)2p",
            PatternFamily::EndsInTwo { .. } => "ends-in-2",
            PatternFamily::MiddleGamma { .. } => "12..(j-1)gamma j",
            PatternFamily::Generic { .. } => "generic",
        };
        match self.pattern() {
            Ok(tau) => write!(f, "{name} ({tau})"),
            Err(_) => f.write_str(name),
        }
    }
}

/// `(j, p)` for τ = 1 2 … (j-1) γ j.
fn middle_gamma_params(tau: &Pattern) -> Result<(usize, usize)> {
    let e = tau.entries();
    let j = e[e.len() - 1] as usize;
    let p = e.len().saturating_sub(j);
    let prefix_ok = j >= 3 && e.len() > j && e[..j - 1].iter().copied().eq(1..j as u32);
    let gamma_ok = prefix_ok && e[j - 1..e.len() - 1].iter().all(|&v| v as usize > j);
    if !prefix_ok || !gamma_ok || p < 1 {
        return Err(Error::invalid(format!(
            "{tau} is not of the form 1 2 .. (j-1) gamma j with j >= 3 and gamma nonempty"
        )));
    }
    Ok((j, p))
}

/// `U_{τ,1}, …, U_{τ,N}` with the convention `U_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UTable {
    family: PatternFamily,
    rows: Vec<PolyY>,
}

impl UTable {
    pub fn family(&self) -> &PatternFamily {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `U_{τ,n}`; `n = 0` gives `1`.
    pub fn get(&self, n: usize) -> PolyY {
        if n == 0 {
            PolyY::one()
        } else {
            self.rows[n - 1].clone()
        }
    }

    pub fn rows(&self) -> &[PolyY] {
        &self.rows
    }

    /// `U_τ(t,y)` truncated at order `N`.
    pub fn series(&self) -> EgfSeries<PolyY> {
        EgfSeries::from_fn(self.rows.len(), |n| self.get(n))
    }
}

fn signed_y(k: u32) -> PolyY {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    PolyY::monomial(crate::algebra::Y(k), crate::algebra::int(sign))
}

fn big(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Runs `U_n = (1-y) U_{n-1} + Σ_{k=1}^{⌊(n-2)/step⌋} (-y)^k w(n,k) U_{n-k·step-1}`.
fn linear_recursion(
    order: usize,
    step: usize,
    weight: impl Fn(usize, usize) -> BigRational,
) -> Vec<PolyY> {
    let one_minus_y = PolyY::from_coeffs(&[1, -1]);
    let mut u: Vec<PolyY> = vec![PolyY::one(), PolyY::from_coeffs(&[0, -1])];
    for n in 2..=order {
        let mut next = one_minus_y.clone() * u[n - 1].clone();
        let mut k = 1;
        while k * step + 2 <= n {
            let w = weight(n, k);
            if !w.is_zero() {
                next = next + (signed_y(k as u32) * u[n - k * step - 1].clone()).scaled(&w);
            }
            k += 1;
        }
        u.push(next);
    }
    u.truncate(order + 1);
    u.remove(0);
    u
}

fn catalan(k: usize) -> BigInt {
    binomial(2 * k as i64, k as i64) / BigInt::from(k + 1)
}

/// `U_{τ,1..N}(y)` from the family's recursion.
pub fn u_coeffs(family: &PatternFamily, order: usize) -> Result<UTable> {
    family.validate()?;
    if order == 0 {
        return Err(Error::invalid("u_coeffs needs N >= 1"));
    }
    let rows = match family {
        // Shifting k by one puts the Catalan sum in the common shape.
        PatternFamily::Identity132p { p: 4 } => linear_recursion(order, 2, |_, k| big(catalan(k))),
        PatternFamily::Identity132p { p } => {
            linear_recursion(order, p - 2, |_, _| BigRational::one())
        }
        PatternFamily::OneP2 { p } => linear_recursion(order, p - 2, |n, k| {
            big(binomial(n as i64 - (k * (p - 3)) as i64 - 2, k as i64))
        }),
        PatternFamily::Fuss { p } => linear_recursion(order, p - 2, |_, k| {
            big(binomial((k * (p - 2)) as i64, k as i64)) / big(BigInt::from((p - 3) * k + 1))
        }),
        PatternFamily::MiddleGamma { pattern } => middle_gamma_rows(pattern, order)?,
        PatternFamily::EndsInTwo { pattern } => ends_in_two_series(pattern, order)?
            .into_coeffs()
            .into_iter()
            .skip(1)
            .collect(),
        PatternFamily::Generic { pattern } => {
            let nm = brute_nm_series_at_x1(pattern, order);
            nm.reciprocal()?.into_coeffs().into_iter().skip(1).collect()
        }
    };
    Ok(UTable {
        family: family.clone(),
        rows,
    })
}

fn middle_gamma_rows(tau: &Pattern, order: usize) -> Result<Vec<PolyY>> {
    let (j, p) = middle_gamma_params(tau)?;
    let des = tau.descent_count() as u32;
    let one_minus_y = PolyY::from_coeffs(&[1, -1]);
    let mut u: Vec<PolyY> = vec![PolyY::one(), PolyY::from_coeffs(&[0, -1])];
    for n in 2..=order {
        let mut next = one_minus_y.clone() * u[n - 1].clone();
        let c = binomial(n as i64 - j as i64, p as i64);
        if !c.is_zero() && n + 1 >= p + j {
            let term = PolyY::monomial(crate::algebra::Y(des), big(c)) * u[n + 1 - p - j].clone();
            next = next - term;
        }
        u.push(next);
    }
    u.truncate(order + 1);
    u.remove(0);
    Ok(u)
}

/// `1 - y ∫_0^t exp((1-y)s - y^{des τ} s^{j-1}/(j-1)!) ds` at order `N`.
pub fn ends_in_two_series(tau: &Pattern, order: usize) -> Result<EgfSeries<PolyY>> {
    PatternFamily::ends_in_two(tau.clone())?;
    let j = tau.len();
    let des = tau.descent_count() as u32;
    // n!-scaled: s^{j-1}/(j-1)! has coefficient 1 at n = j-1.
    let exponent = EgfSeries::from_fn(order, |n| {
        let mut c = PolyY::new();
        if n == 1 {
            c = c + PolyY::from_coeffs(&[1, -1]);
        }
        if n == j - 1 {
            c = c - PolyY::y_pow(des);
        }
        c
    });
    let integral = exponent.exp()?.integrate().times_coeff(&PolyY::y());
    EgfSeries::one(order).minus(&integral)
}

/// `Σ_n NM_{τ,n}(1,y) t^n/n!` from the brute-force oracle.
pub fn brute_nm_series_at_x1(tau: &Pattern, order: usize) -> EgfSeries<PolyY> {
    let one = BigRational::one();
    EgfSeries::from_fn(order, |n| brute_nm_poly(tau, n).eval_x(&one))
}

/// `NM_τ(t,x,y)` through `t^N`.
pub fn nm_series(family: &PatternFamily, order: usize) -> Result<EgfSeries<PolyXY>> {
    if order == 0 {
        return Ok(EgfSeries::one(0));
    }
    u_coeffs(family, order)?.series().pow_symbolic_x()
}

/// Termwise evaluation at `(x, y)`.
pub fn nm_specialize(
    series: &EgfSeries<PolyXY>,
    x: &BigRational,
    y: &BigRational,
) -> EgfSeries<BigRational> {
    series.specialize(x, y)
}

/// `n!` as a rational, for comparisons against unrestricted counts.
pub fn factorial_rat(n: usize) -> BigRational {
    big(factorial_big(n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn y(s: &str) -> PolyY {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn family_patterns() {
        let tau = |f: PatternFamily| f.pattern().unwrap().to_string();
        assert_eq!(tau(PatternFamily::Identity132p { p: 4 }), "1324");
        assert_eq!(tau(PatternFamily::Identity132p { p: 6 }), "132456");
        assert_eq!(tau(PatternFamily::OneP2 { p: 4 }), "1423");
        assert_eq!(tau(PatternFamily::OneP2 { p: 5 }), "15234");
        assert_eq!(tau(PatternFamily::Fuss { p: 5 }), "13425");
        assert_eq!(tau(PatternFamily::Fuss { p: 6 }), "134526");
        assert!(PatternFamily::identity_132p(3).is_err());
        assert!(PatternFamily::fuss(4).is_err());
        assert!(PatternFamily::ends_in_two(pat("123")).is_err());
        assert!(PatternFamily::middle_gamma(pat("1234")).is_err());
        assert!(PatternFamily::middle_gamma(pat("1243")).is_ok());
        assert!(PatternFamily::middle_gamma(pat("125463")).is_ok());
        assert!(PatternFamily::generic(pat("213")).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(
            PatternFamily::classify(&pat("1324")).unwrap(),
            PatternFamily::Identity132p { p: 4 }
        );
        assert_eq!(
            PatternFamily::classify(&pat("1423")).unwrap(),
            PatternFamily::OneP2 { p: 4 }
        );
        assert!(matches!(
            PatternFamily::classify(&pat("132")).unwrap(),
            PatternFamily::EndsInTwo { .. }
        ));
        assert!(matches!(
            PatternFamily::classify(&pat("1243")).unwrap(),
            PatternFamily::MiddleGamma { .. }
        ));
        assert!(matches!(
            PatternFamily::classify(&pat("1342")).unwrap(),
            PatternFamily::EndsInTwo { .. }
        ));
        assert!(matches!(
            PatternFamily::classify(&pat("1432")).unwrap(),
            PatternFamily::EndsInTwo { .. }
        ));
    }

    #[test]
    fn table_entries() {
        let t = u_coeffs(&PatternFamily::Identity132p { p: 4 }, 5).unwrap();
        assert_eq!(t.get(0), PolyY::one());
        assert_eq!(t.get(2), y("-y + y^2"));
        assert_eq!(t.get(4), y("-y + 4 y^2 - 3 y^3 + y^4"));
        assert_eq!(t.get(5), y("-y + 6 y^2 - 8 y^3 + 4 y^4 - y^5"));
        let t = u_coeffs(&PatternFamily::Identity132p { p: 5 }, 11).unwrap();
        assert_eq!(
            t.get(11),
            y("-y + 17 y^2 - 97 y^3 + 250 y^4 - 368 y^5 + 361 y^6 - 252 y^7 + 127 y^8 - 45 y^9 + 10 y^10 - y^11")
        );
    }

    #[test]
    fn first_row_is_minus_y() {
        for f in [
            PatternFamily::Identity132p { p: 4 },
            PatternFamily::Identity132p { p: 7 },
            PatternFamily::OneP2 { p: 4 },
            PatternFamily::Fuss { p: 5 },
            PatternFamily::EndsInTwo {
                pattern: pat("132"),
            },
            PatternFamily::MiddleGamma {
                pattern: pat("1243"),
            },
            PatternFamily::Generic {
                pattern: pat("1342"),
            },
        ] {
            assert_eq!(u_coeffs(&f, 3).unwrap().get(1), y("-y"), "{f}");
        }
    }

    #[test]
    fn integral_form() {
        // τ = 132, n = 3: 123, 213, 231, 312, 321.
        let u = ends_in_two_series(&pat("132"), 3).unwrap();
        assert_eq!(u.coeff(1), &y("-y"));
        assert_eq!(u.reciprocal().unwrap().coeff(3), &y("y + 3 y^2 + y^3"));
        assert!(ends_in_two_series(&pat("1324"), 3).is_err());
    }

    #[test]
    fn middle_gamma_agrees_with_1324_at_four() {
        let t = u_coeffs(
            &PatternFamily::MiddleGamma {
                pattern: pat("1243"),
            },
            4,
        )
        .unwrap();
        assert_eq!(t.get(4), y("-y + 4 y^2 - 3 y^3 + y^4"));
    }

    #[test]
    fn series_examples() {
        let s = nm_series(&PatternFamily::Identity132p { p: 4 }, 3).unwrap();
        assert_eq!(s.coeff(0), &PolyXY::one());
        assert_eq!(
            s.coeff(3),
            &"x y + x y^2 + 3 x^2 y^2 + x^3 y^3"
                .parse::<PolyXY>()
                .unwrap()
        );
        let s = nm_series(&PatternFamily::Identity132p { p: 5 }, 4).unwrap();
        assert_eq!(
            s.coeff(4),
            &"x y + 4 x y^2 + 7 x^2 y^2 + x y^3 + 4 x^2 y^3 + 6 x^3 y^3 + x^4 y^4"
                .parse::<PolyXY>()
                .unwrap()
        );
    }

    #[test]
    fn specializations() {
        let s = nm_series(&PatternFamily::Identity132p { p: 12 }, 8).unwrap();
        let at_one = nm_specialize(&s, &int(1), &int(1));
        assert_eq!(at_one.coeff(8), &factorial_rat(8));
        let at_zero = nm_specialize(&s, &int(0), &int(1));
        assert!((1..=8).all(|n| at_zero.coeff(n).is_zero()));
    }
}
