use nmtau::oracle::brute_nm_poly;
use nmtau::permcore::Pattern;
use nmtau::recursions::{nm_series, u_coeffs, PatternFamily};

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

fn families() -> Vec<PatternFamily> {
    vec![
        PatternFamily::Identity132p { p: 4 },
        PatternFamily::Identity132p { p: 5 },
        PatternFamily::Identity132p { p: 6 },
        PatternFamily::Identity132p { p: 7 },
        PatternFamily::OneP2 { p: 4 },
        PatternFamily::OneP2 { p: 5 },
        PatternFamily::Fuss { p: 5 },
        PatternFamily::Fuss { p: 6 },
        PatternFamily::EndsInTwo {
            pattern: pat("132"),
        },
        PatternFamily::EndsInTwo {
            pattern: pat("1432"),
        },
        PatternFamily::EndsInTwo {
            pattern: pat("13542"),
        },
        PatternFamily::MiddleGamma {
            pattern: pat("1243"),
        },
        PatternFamily::MiddleGamma {
            pattern: pat("12543"),
        },
        PatternFamily::MiddleGamma {
            pattern: pat("123564"),
        },
    ]
}

#[test]
fn recursions_match_brute_force_through_eight() {
    for f in families() {
        let tau = f.pattern().unwrap();
        let series = nm_series(&f, 8).unwrap();
        for n in 0..=8 {
            assert_eq!(series.coeff(n), &brute_nm_poly(&tau, n), "{f} at n = {n}");
        }
    }
}

#[test]
fn generic_agrees_with_specialized_families() {
    for f in families() {
        let tau = f.pattern().unwrap();
        let generic = u_coeffs(&PatternFamily::Generic { pattern: tau }, 8).unwrap();
        assert_eq!(u_coeffs(&f, 8).unwrap().rows(), generic.rows(), "{f}");
    }
}
