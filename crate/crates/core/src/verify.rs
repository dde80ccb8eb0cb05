//! The acceptance checks, one per criterion, grouped into suites.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{int, EgfSeries, PolyXY, PolyY};
use crate::closedforms::{catalan, coeff_identities, d1, d2, d_series};
use crate::error::{Error, Result};
use crate::golden::{nm_table, u_table, GOLDEN_P};
use crate::oracle::{
    brute_cycle_poly, brute_ncm_poly, brute_nm_poly, catalan_sequences, check_sequence, dyck_paths,
    enumerate_objects, fixed_point_check, involution, phi, phi_inverse, theta_h,
    DEFAULT_OBJECT_BOUND,
};
use crate::permcore::Pattern;
use crate::recursions::{
    brute_nm_series_at_x1, ends_in_two_series, nm_series, u_coeffs, PatternFamily,
};

/// Largest `n` the brute-force oracle runs at by default.
pub const ORACLE_BOUND: usize = 9;
/// Largest series order computed by default.
pub const ORDER_BOUND: usize = 16;

const MAX_DETAILS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Tables,
    Oracle,
    Involution,
    Dyck,
    ClosedForms,
    All,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Tables => &[1, 2],
            Suite::Oracle => &[3, 4, 5, 9],
            Suite::Involution => &[6],
            Suite::Dyck => &[7],
            Suite::ClosedForms => &[8],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tables" => Suite::Tables,
            "oracle" => Suite::Oracle,
            "involution" => Suite::Involution,
            "dyck" => Suite::Dyck,
            "closedforms" => Suite::ClosedForms,
            "all" => Suite::All,
            _ => return Err(Error::invalid(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub checks: usize,
    pub details: Vec<String>,
}

impl CriterionResult {
    /// The one-line verdict, without details.
    pub fn summary(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        format!(
            "criterion {:>2} {status} {} ({} checks)",
            self.id, self.title, self.checks
        )
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())?;
        for d in &self.details {
            write!(f, "\n    {d}")?;
        }
        Ok(())
    }
}

/// Counts checks and keeps the first few failures.
struct Tally {
    checks: usize,
    failures: usize,
    details: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: 0,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.details.len() < MAX_DETAILS {
                self.details.push(what());
            }
        }
    }

    fn note(&mut self, text: String) {
        self.details.push(text);
    }

    fn finish(self, id: u8, title: &'static str) -> CriterionResult {
        CriterionResult {
            id,
            title,
            pass: self.failures == 0,
            checks: self.checks,
            details: self.details,
        }
    }
}

fn pat(s: &str) -> Pattern {
    s.parse().expect("pattern literal")
}

pub fn run_suite(suite: Suite) -> Result<Vec<CriterionResult>> {
    suite
        .criteria()
        .iter()
        .map(|&id| run_criterion(id))
        .collect()
}

pub fn run_criterion(id: u8) -> Result<CriterionResult> {
    match id {
        1 => golden_u(),
        2 => golden_nm(),
        3 => oracle_equivalence(),
        4 => cycle_linear(),
        5 => exponential_formula(),
        6 => involution_suite(),
        7 => dyck_suite(),
        8 => closed_forms(),
        9 => integral_family(),
        10 => full_scale(),
        _ => Err(Error::invalid(format!("no criterion {id}"))),
    }
}

fn golden_u() -> Result<CriterionResult> {
    let mut t = Tally::new();
    for p in GOLDEN_P {
        let table = u_coeffs(&PatternFamily::identity_132p(p)?, 11)?;
        for (n, expected) in u_table(p)? {
            let got = table.get(n);
            t.check(got == expected, || {
                format!("U_{{p={p},n={n}}}: {got} != {expected}")
            });
        }
    }
    Ok(t.finish(1, "golden U tables, p = 4..7, n = 1..11"))
}

fn golden_nm() -> Result<CriterionResult> {
    let mut t = Tally::new();
    for p in GOLDEN_P {
        let series = nm_series(&PatternFamily::identity_132p(p)?, 8)?;
        for (n, expected) in nm_table(p)? {
            let got = series.coeff(n);
            t.check(*got == expected, || {
                format!("NM p={p} t^{n}: {got} != {expected}")
            });
        }
    }
    Ok(t.finish(2, "golden NM series through t^8"))
}

fn oracle_equivalence() -> Result<CriterionResult> {
    let mut t = Tally::new();
    for s in ["1324", "13245", "132456", "1423", "13425", "132", "1243"] {
        let tau = pat(s);
        let family = PatternFamily::classify(&tau)?;
        let series = nm_series(&family, ORACLE_BOUND)?;
        for n in 0..=ORACLE_BOUND {
            let brute = brute_nm_poly(&tau, n);
            t.check(*series.coeff(n) == brute, || {
                format!("{s} ({family}) n={n}")
            });
        }
    }
    Ok(t.finish(3, "brute force equals recursion pipeline, n <= 9"))
}

fn cycle_linear() -> Result<CriterionResult> {
    let mut t = Tally::new();
    for s in ["1324", "13245", "132", "1243"] {
        let tau = pat(s);
        for n in 0..=8 {
            t.check(brute_ncm_poly(&tau, n) == brute_nm_poly(&tau, n), || {
                format!("NCM != NM for {s}, n={n}")
            });
        }
    }
    let tau = pat("3142");
    let one = BigRational::one();
    let ncm = brute_ncm_poly(&tau, 7).eval(&one, &one);
    let nm = brute_nm_poly(&tau, 7).eval(&one, &one);
    t.check(ncm != nm, || format!("3142: totals equal ({ncm})"));
    t.check(nm == int(4237), || {
        format!("3142: |NM_7| = {nm}, expected 4237")
    });
    t.check(ncm == int(4236), || {
        format!("3142: |NCM_7| = {ncm}, expected 4236")
    });
    Ok(t.finish(4, "cycle and linear polynomials agree when τ starts with 1"))
}

fn exponential_formula() -> Result<CriterionResult> {
    const ORDER: usize = 7;
    let mut t = Tally::new();
    let tau = pat("1324");
    let cycles = EgfSeries::from_fn(ORDER, |n| brute_cycle_poly(&tau, n).lift(1));
    let formula = cycles.exp()?;
    for n in 0..=ORDER {
        let direct = brute_ncm_poly(&tau, n);
        t.check(*formula.coeff(n) == direct, || {
            format!("1324 t^{n}: {} != {direct}", formula.coeff(n))
        });
    }
    Ok(t.finish(5, "NCM_1324 = exp(x·cycle EGF) through t^7"))
}

fn involution_suite() -> Result<CriterionResult> {
    let mut t = Tally::new();
    for (s, p) in [("1324", 4), ("13245", 5)] {
        let tau = pat(s);
        let table = u_coeffs(&PatternFamily::identity_132p(p)?, DEFAULT_OBJECT_BOUND)?;
        for n in 1..=6 {
            let mut signed = PolyY::zero();
            let mut fixed_sum = PolyY::zero();
            for o in enumerate_objects(&tau, n, DEFAULT_OBJECT_BOUND)? {
                let image = involution(&o, &tau);
                t.check(involution(&image, &tau) == o, || {
                    format!("{s}: I(I({o})) != {o}")
                });
                let w = o.signed_weight();
                if image == o {
                    let fp = fixed_point_check(&o, &tau);
                    t.check(fp.all(), || format!("{s}: fixed point {o} fails {fp:?}"));
                    fixed_sum = fixed_sum + w.clone();
                } else {
                    let total = w.clone() + image.signed_weight();
                    t.check(total.is_zero(), || {
                        format!("{s}: {o} and {image} do not cancel")
                    });
                }
                signed = signed + w;
            }
            let u = table.get(n);
            t.check(signed == u, || {
                format!("{s} n={n}: signed sum {signed} != {u}")
            });
            t.check(fixed_sum == u, || {
                format!("{s} n={n}: fixed points {fixed_sum} != {u}")
            });
        }
        for n in 1..=DEFAULT_OBJECT_BOUND {
            let th = theta_h(&tau, n);
            let u = table.get(n);
            t.check(th == u, || format!("{s} n={n}: theta_h {th} != {u}"));
        }
    }
    Ok(t.finish(6, "involution and theta_h, τ ∈ {1324, 13245}"))
}

fn dyck_suite() -> Result<CriterionResult> {
    let mut t = Tally::new();
    for k in 1..=8 {
        let paths = dyck_paths(k - 1);
        let mut image = BTreeSet::new();
        for path in &paths {
            let seq = phi(path);
            t.check(check_sequence(&seq).is_ok(), || {
                format!("phi({path}) violates (i)-(v)")
            });
            t.check(phi_inverse(&seq).as_ref() == Ok(path), || {
                format!("phi_inverse(phi({path})) != {path}")
            });
            image.insert(seq);
        }
        let valid: BTreeSet<_> = catalan_sequences(k).into_iter().collect();
        t.check(valid == image, || {
            format!("k={k}: image differs from the (i)-(v) set")
        });
        let c = catalan(k - 1);
        t.check(BigInt::from(image.len()) == c, || {
            format!("k={k}: |image| = {} != {c}", image.len())
        });
    }
    Ok(t.finish(7, "Dyck bijection, k <= 8"))
}

fn closed_forms() -> Result<CriterionResult> {
    const N: usize = 14;
    let mut t = Tally::new();
    let as_rat = |v: BigInt| BigRational::from_integer(v);
    for p in 4..=7 {
        let s1 = d_series(p, 1, N)?;
        let s2 = d_series(p, 2, N)?;
        for n in 0..=N {
            if let Ok(v) = d1(n, p) {
                t.check(*s1.coeff(n) == as_rat(v), || format!("d1 p={p} n={n}"));
            }
            if let Ok(v) = d2(n, p) {
                t.check(*s2.coeff(n) == as_rat(v), || format!("d2 p={p} n={n}"));
            }
        }
        let mut word = vec![1, 3, 2];
        word.extend(4..=p as u32);
        let tau = Pattern::from_entries(&word)?;
        for n in 0..=ORACLE_BOUND {
            let brute = brute_nm_poly(&tau, n).eval_x(&BigRational::one());
            for (i, s, closed) in [(1, &s1, d1(n, p)), (2, &s2, d2(n, p))] {
                let b = brute.coeff(i + 1);
                t.check(*s.coeff(n) == b, || {
                    format!("d{i} series p={p} n={n} vs brute {b}")
                });
                if let Ok(v) = closed {
                    t.check(as_rat(v) == b, || {
                        format!("d{i} closed p={p} n={n} vs brute {b}")
                    });
                }
            }
            let report = coeff_identities(p, n)?;
            t.check(report.all_pass(), || {
                format!("coeff_identities p={p} n={n}")
            });
        }
    }
    t.check(d1(4, 5)? == BigInt::from(11), || "d1(4, 5) != 11".into());
    Ok(t.finish(8, "d1/d2 closed forms, series and brute force"))
}

fn integral_family() -> Result<CriterionResult> {
    const ORDER: usize = 9;
    let mut t = Tally::new();
    let tau = pat("132");
    let integral = ends_in_two_series(&tau, ORDER)?;
    let brute = brute_nm_series_at_x1(&tau, ORDER).reciprocal()?;
    for n in 0..=ORDER {
        let (a, b) = (integral.coeff(n), brute.coeff(n));
        t.check(a == b, || format!("132 t^{n}: {a} != {b}"));
    }
    Ok(t.finish(9, "integral form of U_132 through t^9"))
}

fn full_scale() -> Result<CriterionResult> {
    let mut t = Tally::new();
    let stated = [
        ("oracle n", 9, ORACLE_BOUND),
        ("object n", 7, DEFAULT_OBJECT_BOUND),
        ("series order", 14, ORDER_BOUND),
    ];
    for (what, needed, limit) in stated {
        t.check(needed <= limit, || {
            format!("{what}: needs {needed}, limit {limit}")
        });
    }
    let tau = pat("1324");
    let total: BigRational = brute_nm_poly(&tau, ORACLE_BOUND).coefficient_sum();
    let series = nm_series(&PatternFamily::identity_132p(4)?, ORACLE_BOUND)?;
    let xy: PolyXY = series.coeff(ORACLE_BOUND).clone();
    t.check(xy.coefficient_sum() == total, || {
        "full-size n = 9 run disagrees".into()
    });
    t.note(format!(
        "|NM_9(1324)| = {total}, computed without reduction"
    ));
    Ok(t.finish(10, "all checks run at the stated sizes"))
}
