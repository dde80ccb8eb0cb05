use nmtau::algebra::{int, EgfSeries, PolyY};
use nmtau::oracle::{brute_ncm_poly, brute_nm_poly};
use nmtau::permcore::{permutations_of, to_cycles, Pattern, Permutation};
use nmtau::recursions::{nm_series, nm_specialize, u_coeffs, PatternFamily};
use proptest::prelude::*;
use std::collections::HashSet;

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn arb_pattern() -> impl Strategy<Value = Pattern> {
    (3usize..=5)
        .prop_flat_map(|k| Just((2..=k as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|mut v| {
            v.insert(0, 1);
            Pattern::from_entries(&v).unwrap()
        })
}

proptest! {
    #[test]
    fn cycle_form_statistics(p in arb_perm(9)) {
        let c = p.to_cycles();
        prop_assert_eq!(c.cycle_count(), c.flatten().lrmin_count());
        if !p.is_empty() {
            prop_assert_eq!(c.cdes(), 1 + c.flatten().descent_count());
        }
        prop_assert_eq!(c.to_permutation(), p);
    }

    #[test]
    fn short_permutations_have_no_matches(p in arb_perm(4), tau in arb_pattern()) {
        prop_assume!(p.len() < tau.len());
        prop_assert_eq!(p.match_count(&tau), 0);
    }

    #[test]
    fn match_count_agrees_with_reduction(p in arb_perm(8), tau in arb_pattern()) {
        let j = tau.len();
        let e = p.entries();
        let windows = if e.len() < j { 0 } else {
            e.windows(j).filter(|w| nnreduce(w) == tau.entries()).count()
        };
        prop_assert_eq!(p.match_count(&tau), windows);
    }

    #[test]
    fn rank_round_trips(p in arb_perm(9)) {
        prop_assert_eq!(Permutation::unrank(p.len(), p.rank()), p);
    }
}

fn nnreduce(w: &[u32]) -> Vec<u32> {
    w.iter()
        .map(|&a| 1 + w.iter().filter(|&&b| b < a).count() as u32)
        .collect()
}

#[test]
fn flattening_is_a_bijection() {
    for n in 0..=7 {
        let mut seen = HashSet::new();
        for p in permutations_of(n) {
            let flat = to_cycles(&p).flatten();
            assert!(seen.insert(flat.into_entries()), "n = {n}");
        }
    }
}

#[test]
fn cycle_matches_vanish_with_linear_matches() {
    for tau in ["132", "1324", "1423"].map(pat) {
        for n in 0..=7 {
            for p in permutations_of(n) {
                let c = to_cycles(&p);
                let linear = c.flatten().match_count(&tau);
                assert_eq!(c.cycle_match_count(&tau) == 0, linear == 0, "{tau} {c}");
            }
        }
    }
}

#[test]
fn ncm_equals_nm_through_eight() {
    for tau in ["1324", "13245", "132", "1243"].map(pat) {
        for n in 0..=8 {
            assert_eq!(
                brute_ncm_poly(&tau, n),
                brute_nm_poly(&tau, n),
                "{tau} n = {n}"
            );
        }
    }
}

fn families() -> Vec<PatternFamily> {
    let mut out = Vec::new();
    for p in 4..=7 {
        out.push(PatternFamily::Identity132p { p });
        out.push(PatternFamily::OneP2 { p });
    }
    for p in 5..=7 {
        out.push(PatternFamily::Fuss { p });
    }
    for s in ["132", "1432", "1342", "13542"] {
        out.push(PatternFamily::EndsInTwo { pattern: pat(s) });
    }
    for s in ["1243", "12543", "123654"] {
        out.push(PatternFamily::MiddleGamma { pattern: pat(s) });
    }
    out
}

#[test]
fn first_power_of_y_is_minus_one() {
    for f in families() {
        let u = u_coeffs(&f, 12).unwrap();
        for n in 1..=12 {
            assert_eq!(u.get(n).coeff(1), int(-1), "{f} n = {n}");
        }
    }
}

#[test]
fn top_power_of_y_alternates_for_the_identity_family() {
    for p in 4..=7 {
        let u = u_coeffs(&PatternFamily::Identity132p { p }, 14).unwrap();
        for n in 1..=14 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(u.get(n).coeff(n as u32), int(sign), "p = {p} n = {n}");
            assert_eq!(u.get(n).degree(), Some(n as u32));
        }
    }
}

#[test]
fn nm_at_x_one_is_reciprocal_of_u() {
    let one = int(1);
    for f in families() {
        let u = u_coeffs(&f, 12).unwrap().series();
        let nm = nm_series(&f, 12).unwrap();
        let at_one: EgfSeries<PolyY> = nm.eval_x(&one);
        assert_eq!(at_one, u.reciprocal().unwrap(), "{f}");
    }
}

#[test]
fn specialization_counts_permutations_avoiding_matches() {
    let tau = pat("1324");
    let nm = nm_series(&PatternFamily::Identity132p { p: 4 }, 8).unwrap();
    let counts = nm_specialize(&nm, &int(1), &int(1));
    for n in 0..=8 {
        let avoiding = permutations_of(n)
            .filter(|p| p.match_count(&tau) == 0)
            .count();
        assert_eq!(counts.coeff(n), &int(avoiding as i64), "n = {n}");
    }
}

#[test]
fn generic_agrees_with_specialized_families_through_nine() {
    for f in families() {
        let tau = f.pattern().unwrap();
        let generic = u_coeffs(&PatternFamily::Generic { pattern: tau }, 9).unwrap();
        assert_eq!(u_coeffs(&f, 9).unwrap().rows(), generic.rows(), "{f}");
    }
}
