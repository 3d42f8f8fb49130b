use approach::catalog;
use approach::cli::run_with;
use approach::separation::{frame_condition2, frame_condition3, is_normal, separation_degree};
use approach::ExtValue;

fn verdicts(name: &str, params: &[&str]) -> (bool, bool, bool) {
    let e = catalog::get(name, params).unwrap();
    (
        is_normal(&e.space).unwrap().normal,
        frame_condition2(&e.space).holds,
        frame_condition3(&e.space).holds,
    )
}

#[test]
fn pinned_verdicts() {
    assert_eq!(verdicts("exInorm", &[]), (false, true, true));
    assert_eq!(verdicts("exVO", &[]), (false, false, true));
    assert_eq!(verdicts("exVO-repaired", &[]), (false, false, true));
    assert_eq!(verdicts("pplus-grid", &[]), (true, true, true));
    assert_eq!(verdicts("sorgenfrey-grid", &[]), (true, true, true));
    assert_eq!(verdicts("qS-grid", &[]), (true, true, true));
}

#[test]
fn designated_pairs() {
    let e = catalog::get("exVO", &[]).unwrap();
    let (a, b) = e.designated.unwrap();
    assert_eq!(separation_degree(&e.space, a, b).unwrap(), ExtValue::int(1));
    let e = catalog::get("exVO-repaired", &[]).unwrap();
    let (a, b) = e.designated.unwrap();
    assert_eq!(separation_degree(&e.space, a, b).unwrap(), ExtValue::int(4));
    let e = catalog::get("exInorm", &[]).unwrap();
    let (a, b) = e.designated.unwrap();
    assert!(!separation_degree(&e.space, a, b).unwrap().is_zero());
}

#[test]
fn random_families() {
    let mut quasi = [0usize; 2];
    let mut topo = [0usize; 2];
    for seed in 0..40 {
        let m = catalog::random_metric(5, seed);
        assert!(is_normal(&m).unwrap().normal, "metric seed {seed}");
        quasi[usize::from(is_normal(&catalog::random_quasimetric(5, seed)).unwrap().normal)] += 1;
        topo[usize::from(is_normal(&catalog::random_topology(4, seed)).unwrap().normal)] += 1;
    }
    assert!(quasi.iter().all(|&c| c > 0), "{quasi:?}");
    assert!(topo.iter().all(|&c| c > 0), "{topo:?}");
}

#[test]
fn reversed_is_transpose() {
    let e = catalog::get("exVO", &[]).unwrap().space;
    let r = catalog::get("exVO", &["reversed=true"]).unwrap().space;
    for i in 0..e.len() {
        for j in 0..e.len() {
            assert_eq!(e.q(i, j), r.q(j, i));
        }
    }
}

#[test]
fn bad_params_are_rejected() {
    assert!(catalog::get("nope", &[]).is_err());
    assert!(catalog::get("pplus-grid", &["size=3"]).is_err());
    assert!(catalog::get("pplus-grid", &["n=x"]).is_err());
}

fn cli(args: &[&str]) -> (i32, String) {
    let argv: Vec<String> = std::iter::once("approach").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn emit_validate_round_trip() {
    let dir = std::env::temp_dir().join(format!("approach-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pinned = [
        ("exInorm", 1, 0),
        ("exVO", 1, 1),
        ("exVO-repaired", 1, 1),
        ("pplus-grid", 0, 0),
        ("sorgenfrey-grid", 0, 0),
        ("qS-grid", 0, 0),
    ];
    for (name, normal_code, cond2_code) in pinned {
        let (code, text) = cli(&["catalog", "emit", name]);
        assert_eq!(code, 0);
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, &text).unwrap();
        let p = path.to_str().unwrap();
        assert_eq!(cli(&["validate", p]).0, 0, "{name}");
        assert_eq!(cli(&["normality", p]).0, normal_code, "{name}");
        assert_eq!(cli(&["frame", "cond2", p]).0, cond2_code, "{name}");
        assert_eq!(cli(&["frame", "cond3", p]).0, 0, "{name}");
        let re = approach::io::read_space(&path).unwrap();
        assert_eq!(re, catalog::get(name, &[]).unwrap().space);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
