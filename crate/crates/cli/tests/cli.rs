use std::fs;
use std::process::{Command, Output};

use nmtau::algebra::{int, PolyXY};
use nmtau::oracle::brute_ncm_poly;
use nmtau::permcore::Pattern;

fn nmtau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmtau"))
        .args(args)
        .env_remove("NMTAU_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_poly(o: &Output) -> PolyXY {
    let doc: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
    PolyXY::from_json(&doc["poly"].to_string()).unwrap()
}

#[test]
fn u_table_row() {
    let o = nmtau(&["u", "--family", "1324..p", "--p", "4", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).lines().any(|l| l == "2\t-y + y^2"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn u_eleven_rows() {
    let o = nmtau(&["u", "--family", "1324..p", "--p", "5", "--n", "11"]);
    let text = stdout(&o);
    let rows: Vec<_> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows[6].starts_with("7\t-y + 9 y^2 - 21 y^3"), "{}", rows[6]);
}

#[test]
fn latex_rows() {
    let o = nmtau(&[
        "u", "--family", "1324..p", "--p", "4", "--n", "2", "--format", "latex",
    ]);
    assert_eq!(
        stdout(&o),
        "U_{1324,1}(y) &= -y \\\\\nU_{1324,2}(y) &= -y+y^2 \\\\\n"
    );
}

#[test]
fn series_json_round_trips() {
    let o = nmtau(&[
        "series", "--family", "1324..p", "--p", "4", "--order", "8", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let series = nmtau::algebra::EgfSeries::<PolyXY>::from_json(&stdout(&o)).unwrap();
    assert_eq!(
        series.coeff(3),
        &"x y + x y^2 + 3 x^2 y^2 + x^3 y^3".parse().unwrap()
    );
}

#[test]
fn brute_cycle_matches_library() {
    let o = nmtau(&[
        "brute",
        "--pattern",
        "3,1,4,2",
        "--n",
        "7",
        "--cycle",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let tau: Pattern = "3142".parse().unwrap();
    let poly = json_poly(&o);
    assert_eq!(poly, brute_ncm_poly(&tau, 7));
    let text = stdout(&nmtau(&[
        "brute",
        "--pattern",
        "3,1,4,2",
        "--n",
        "7",
        "--cycle",
    ]));
    let total = poly.eval(&int(1), &int(1));
    assert!(text.ends_with(&format!("total: {total}\n")), "{text}");
}

#[test]
fn shards_merge_to_whole() {
    let whole = json_poly(&nmtau(&[
        "brute",
        "--pattern",
        "1324",
        "--n",
        "7",
        "--format",
        "json",
    ]));
    for k in [1usize, 3, 8] {
        let ks = k.to_string();
        let merged = (0..k).fold(PolyXY::new(), |acc, i| {
            let is = i.to_string();
            let args = [
                "brute",
                "--pattern",
                "1324",
                "--n",
                "7",
                "--shards",
                &ks,
                "--shard",
                &is,
                "--format",
                "json",
            ];
            acc + json_poly(&nmtau(&args))
        });
        assert_eq!(merged, whole, "k={k}");
    }
}

#[test]
fn verify_suites() {
    assert_eq!(
        nmtau(&["verify", "--suite", "tables"]).status.code(),
        Some(0)
    );
    assert_eq!(nmtau(&["verify", "--suite", "dyck"]).status.code(), Some(0));
    assert_eq!(
        nmtau(&["verify", "--suite", "closedforms"]).status.code(),
        Some(0)
    );
    assert_eq!(nmtau(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_all_is_deterministic() {
    let a = nmtau(&["verify", "--suite", "all"]);
    let b = nmtau(&["verify", "--suite", "all"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(
        stdout(&a)
            .lines()
            .filter(|l| l.starts_with("criterion"))
            .count(),
        10
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        nmtau(&["brute", "--pattern", "1324", "--n", "10"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        nmtau(&["series", "--family", "1324..p", "--p", "4", "--order", "17"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        nmtau(&["brute", "--pattern", "1334", "--n", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nmtau(&["u", "--family", "bogus", "--p", "4", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nmtau(&["u", "--n", "2"]).status.code(), Some(2));
    assert_eq!(nmtau(&["frobnicate"]).status.code(), Some(2));
    let o = nmtau(&[
        "brute",
        "--pattern",
        "1324",
        "--n",
        "3",
        "--shards",
        "2",
        "--shard",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn force_overrides_limits() {
    let o = nmtau(&[
        "u", "--family", "1324..p", "--p", "4", "--n", "17", "--force",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "--cache-dir",
        d,
        "brute",
        "--pattern",
        "1324",
        "--n",
        "5",
        "--format",
        "json",
    ];
    let first = json_poly(&nmtau(&args));
    let file = dir.path().join("nm_1-3-2-4_n5.json");
    assert_eq!(
        PolyXY::from_json(&fs::read_to_string(&file).unwrap()).unwrap(),
        first
    );

    // A tampered entry is served from the cache and caught by --no-cache.
    fs::write(&file, PolyXY::from_terms([]).to_json()).unwrap();
    assert_eq!(json_poly(&nmtau(&args)), PolyXY::new());
    let mut recheck = args.to_vec();
    recheck.insert(0, "--no-cache");
    assert_eq!(nmtau(&recheck).status.code(), Some(3));

    fs::write(&file, "not json").unwrap();
    assert_eq!(nmtau(&args).status.code(), Some(5));
}

#[test]
fn cache_io_failure() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let b = blocker.join("sub");
    let o = nmtau(&[
        "--cache-dir",
        b.to_str().unwrap(),
        "brute",
        "--pattern",
        "132",
        "--n",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn dyck_listing() {
    let o = nmtau(&["dyck", "--k", "3"]);
    assert_eq!(stdout(&o), "UUDD\t1 4 2 5 3 6\nUDUD\t1 3 2 5 4 6\n");
    assert_eq!(stdout(&nmtau(&["dyck", "--k", "6"])).lines().count(), 42);
}

#[test]
fn descents_and_identities() {
    let o = nmtau(&["descents", "--p", "5", "--k", "2", "--n", "20"]);
    let text = stdout(&o);
    let expected = nmtau::closedforms::d2(20, 5).unwrap();
    assert_eq!(text, format!("d^(2)_{{20,5}} = {expected} (closed form)\n"));
    let o = nmtau(&["descents", "--p", "4", "--k", "2", "--n", "4"]);
    assert!(stdout(&o).ends_with("(series extraction)\n"));
    let o = nmtau(&["identities", "--p", "6", "--n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
