use nmtau::algebra::{EgfSeries, PolyXY, PolyY, Ring};
use nmtau::closedforms::catalan;
use nmtau::oracle::{
    catalan_sequences, dyck_paths, enumerate_objects, fixed_point_check, involution, phi,
    phi_inverse, theta_h, DEFAULT_OBJECT_BOUND,
};
use nmtau::permcore::Pattern;
use nmtau::recursions::{nm_series, u_coeffs, PatternFamily};
use num_bigint::BigInt;

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

#[test]
fn involution_cancels_down_to_u() {
    for (tau, f) in [
        ("1324", PatternFamily::Identity132p { p: 4 }),
        ("13245", PatternFamily::Identity132p { p: 5 }),
    ] {
        let tau = pat(tau);
        let u = u_coeffs(&f, 6).unwrap();
        for n in 1..=6 {
            let mut signed = PolyY::new();
            let mut fixed = PolyY::new();
            for o in enumerate_objects(&tau, n, DEFAULT_OBJECT_BOUND).unwrap() {
                let image = involution(&o, &tau);
                assert_eq!(involution(&image, &tau), o, "{tau} n = {n}");
                let w = o.signed_weight();
                if image == o {
                    assert!(fixed_point_check(&o, &tau).all(), "{tau} n = {n}");
                    fixed = fixed.plus(&w);
                } else {
                    assert_eq!(image.signed_weight(), w.negated(), "{tau} n = {n}");
                }
                signed = signed.plus(&w);
            }
            assert_eq!(signed, u.get(n), "{tau} n = {n}");
            assert_eq!(fixed, u.get(n), "{tau} n = {n}");
        }
    }
}

#[test]
fn theta_h_gives_u() {
    for (tau, f) in [
        ("1324", PatternFamily::Identity132p { p: 4 }),
        ("13245", PatternFamily::Identity132p { p: 5 }),
        ("1423", PatternFamily::OneP2 { p: 4 }),
    ] {
        let tau = pat(tau);
        let u = u_coeffs(&f, 7).unwrap();
        for n in 1..=7 {
            assert_eq!(theta_h(&tau, n), u.get(n), "{tau} n = {n}");
        }
    }
}

#[test]
fn dyck_map_is_a_bijection() {
    for k in 1..=8 {
        let mut images: Vec<_> = dyck_paths(k - 1).iter().map(phi).collect();
        for (path, seq) in dyck_paths(k - 1).iter().zip(&images) {
            assert_eq!(&phi_inverse(seq).unwrap(), path);
        }
        images.sort();
        let mut found = catalan_sequences(k);
        found.sort();
        assert_eq!(images, found, "k = {k}");
        assert_eq!(BigInt::from(found.len()), catalan(k - 1));
    }
}

#[test]
fn nm_is_exp_of_minus_x_log_u() {
    for f in [
        PatternFamily::Identity132p { p: 4 },
        PatternFamily::Identity132p { p: 5 },
        PatternFamily::OneP2 { p: 4 },
    ] {
        let u = u_coeffs(&f, 10).unwrap().series();
        let log: EgfSeries<PolyXY> = u.log().unwrap().map(|c| c.lift(1).negated());
        assert_eq!(log.exp().unwrap(), nm_series(&f, 10).unwrap(), "{f}");
    }
}
