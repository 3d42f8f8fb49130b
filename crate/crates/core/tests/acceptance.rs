//! Acceptance suite: one line per criterion.
//!
//! Runs as a plain binary (`harness = false`). Criteria listed in
//! `KNOWN_UNATTAINABLE` are allowed to fail and are reported as such; any
//! other failure, or a known one that unexpectedly passes, fails the run.

mod common;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use approach::catalog;
use approach::extension::{level_set_development, tietze_condition, tietze_extend, urysohn_via_tietze, ExtensionStatus};
use approach::functions::{
    canonical_development, classify, core, delta_fn, lower_hull, theta, upper_hull, CodomainTag,
};
use approach::interpolation::{kt_direct, kt_staged, Status};
use approach::maps::{is_closed_expansive, is_open_expansive, SpaceMap};
use approach::oracle::{GridSpec, HullSide, Oracle};
use approach::separation::{
    closure_gap, contraction_to_scale, frame_condition2, frame_condition3, is_normal,
    prop_inequal_check, scale_to_contraction, separation_degree, urysohn, verify_normal_scale,
    UrysohnOutcome,
};
use approach::value::rat;
use approach::{ExtValue, FiniteSpace, FnOverSpace, PointSet, INF};
use common::*;
use rand::Rng;

/// Criteria expected to fail; see the decisions notes.
const KNOWN_UNATTAINABLE: &[u32] = &[7];

struct Report {
    pass: bool,
    detail: String,
}

fn report(pass: bool, detail: impl Into<String>) -> Report {
    Report { pass, detail: detail.into() }
}

fn half(k: i64) -> ExtValue {
    ExtValue::Finite(rat(k, 2))
}

fn criterion_1() -> Report {
    let e3 = catalog::get("exInorm", &[]).unwrap().space;
    let (x, y) = (e3.set_of(&["x"]).unwrap(), e3.set_of(&["y"]).unwrap());
    let v = is_normal(&e3).unwrap();
    let w = v.witness.clone().unwrap();
    let witness_ok = !v.normal
        && (w.a, w.b, w.gamma, w.shortfall) == (x, y, ExtValue::int(4), ExtValue::int(3));
    let at4 = urysohn(&e3, x, y, ExtValue::int(4)).unwrap();
    let no4 = at4 == UrysohnOutcome::NoWitness { shortfall: ExtValue::int(3) };
    let at3 = urysohn(&e3, x, y, ExtValue::int(3)).unwrap();
    let f = at3.function().cloned().unwrap_or_else(|| FnOverSpace::constant(3, INF));
    let yes3 = classify(&e3, &f, CodomainTag::Euclid)
        && e3.closure(x).iter().all(|i| f.get(i) == ExtValue::int(3))
        && e3.closure(y).iter().all(|i| f.get(i).is_zero());
    report(
        witness_ok && no4 && yes3,
        format!(
            "witness ({:?},{:?}, gamma={}, shortfall={}); gamma=4 no witness: {no4}; gamma=3 contraction {:?}: {yes3}",
            e3.names_of(w.a),
            e3.names_of(w.b),
            w.gamma,
            w.shortfall,
            f.values().iter().map(|v| v.to_string()).collect::<Vec<_>>()
        ),
    )
}

fn criterion_2() -> Report {
    let e4 = catalog::get("exVO", &[]).unwrap().space;
    let c3 = frame_condition3(&e4);
    let c2 = frame_condition2(&e4);
    let x = e4.set_of(&["x"]).unwrap();
    let literal = separation_degree(&e4, x, e4.set_of(&["y", "z", "w"]).unwrap()).unwrap();
    let repaired = separation_degree(&e4, x, e4.set_of(&["y"]).unwrap()).unwrap();
    let wit = c2.witness.as_ref().map(|w| {
        format!("({:?},{:?}, gamma={})", e4.names_of(w.a), e4.names_of(w.b), w.level)
    });
    report(
        c3.holds && !c2.holds && literal == ExtValue::int(1) && repaired == ExtValue::int(4),
        format!(
            "cond3 holds: {}; cond2 fails at {}; sep({{x}},{{y,z,w}}) = {literal}; sep({{x}},{{y}}) = {repaired}",
            c3.holds,
            wit.unwrap_or_else(|| "nothing".into())
        ),
    )
}

fn criterion_3() -> Report {
    let mut normal = 0;
    let mut pairs = 0;
    let mut bad = Vec::new();
    for run in 0..200u64 {
        let n = 2 + (run % 7) as usize;
        let s = catalog::random_metric(n, 3_000 + run);
        if is_normal(&s).unwrap().normal {
            normal += 1;
        } else {
            bad.push(format!("run {run} not normal"));
        }
        let mut r = rng(run);
        let mut found = 0;
        for _ in 0..10_000 {
            if found == 50 {
                break;
            }
            let a = random_nonempty(&mut r, n);
            let b = random_nonempty(&mut r, n).difference(a);
            if b.is_empty() {
                continue;
            }
            let sep = separation_degree(&s, a, b).unwrap();
            if sep.is_zero() {
                continue;
            }
            let gamma = match sep.as_finite() {
                Some(v) => ExtValue::Finite(v * rat(r.gen_range(1..=4), 4)),
                None => ExtValue::int(r.gen_range(1..=8)),
            };
            let f = delta_fn(&s, b, Some(gamma));
            let ok = classify(&s, &f, CodomainTag::Euclid)
                && s.closure(a).iter().all(|i| f.get(i) == gamma)
                && s.closure(b).iter().all(|i| f.get(i).is_zero());
            if !ok {
                bad.push(format!("run {run}: witness fails for {a:?},{b:?} at {gamma}"));
            }
            found += 1;
            pairs += 1;
        }
    }
    report(
        bad.is_empty(),
        format!("{normal}/200 normal; {pairs} separated pairs checked; {} problems{}", bad.len(), first(&bad)),
    )
}

fn criterion_4() -> Report {
    let mut r = rng(4);
    let mut checks = 0u64;
    let mut bad = Vec::new();
    for i in 0..500 {
        let n = r.gen_range(1..=8);
        let s = random_space(&mut r, n);
        let a = random_subset(&mut r, n);
        let omega = half(r.gen_range(1..=8));
        let mut check = |ok: bool, what: &str| {
            checks += 1;
            if !ok {
                bad.push(format!("instance {i}: {what}"));
            }
        };
        check(lower_hull(&s, &theta(&s, a, None)).unwrap() == delta_fn(&s, a, None), "lower hull of theta");
        check(upper_hull(&s, &theta(&s, a, Some(omega))).unwrap() == core(&s, a, omega).unwrap(), "upper hull of theta");
        let (mu, nu) = (random_function(&mut r, n, true), random_function(&mut r, n, true));
        let (bmu, bnu) = (random_function(&mut r, n, false), random_function(&mut r, n, false));
        let lo = |f: &FnOverSpace| lower_hull(&s, f).unwrap();
        let up = |f: &FnOverSpace| upper_hull(&s, f).unwrap();
        check(lo(&lo(&mu)) == lo(&mu), "lower idempotent");
        check(up(&up(&bmu)) == up(&bmu), "upper idempotent");
        check(lo(&mu.meet(&nu)).le(&lo(&mu)) && lo(&mu).le(&lo(&mu.join(&nu))), "lower monotone");
        check(up(&bmu.meet(&bnu)).le(&up(&bmu)) && up(&bmu).le(&up(&bmu.join(&bnu))), "upper monotone");
        check(lo(&mu.meet(&nu)) == lo(&mu).meet(&lo(&nu)), "lower preserves meets");
        check(up(&bmu.join(&bnu)) == up(&bmu).join(&up(&bnu)), "upper preserves joins");
        let c = half(r.gen_range(0..=6));
        check(lo(&mu.plus(c)) == lo(&mu).plus(c), "lower commutes with shifts");
        check(up(&bmu.plus(c)) == up(&bmu).plus(c), "upper commutes with shifts");
    }
    report(bad.is_empty(), format!("{checks} exact identities on 500 instances; {} failures{}", bad.len(), first(&bad)))
}

fn criterion_5() -> Report {
    let spaces: Vec<FiniteSpace> = (1..=3).flat_map(|n| all_spaces(n, &ENTRIES_012, false)).collect();
    let mut cases = 0u64;
    let mut bad = 0u64;
    for s in &spaces {
        let n = s.len();
        for a in PointSet::nonempty_subsets(n) {
            for b in PointSet::nonempty_subsets(n) {
                let mut grid = BTreeSet::new();
                for x in 0..n {
                    let (da, db) = (s.distance(x, a), s.distance(x, b));
                    for v in [da, db, da + db] {
                        grid.insert(v);
                        grid.insert(v + half(1));
                    }
                }
                grid.insert(half(1));
                for &g in grid.iter().filter(|g| g.is_finite() && !g.is_zero()) {
                    let (p, q, t) = prop_inequal_check(s, a, b, g).unwrap();
                    cases += 1;
                    if !(p == q && q == t) {
                        bad += 1;
                    }
                }
            }
        }
    }
    report(bad == 0, format!("{} spaces, {cases} (A,B,gamma) cases, {bad} disagreements", spaces.len()))
}

fn criterion_6() -> Report {
    let spaces = sweep_spaces(4, &ENTRIES_012);
    let oracle = Oracle::default();
    let mut log = String::new();
    let mut total_bad = 0u64;

    // Urysohn existence.
    let (mut cases, mut bad) = (0u64, 0u64);
    for s in &spaces {
        let n = s.len();
        let beyond = s.positive_values().into_iter().fold(ExtValue::int(1), |acc, v| acc + v);
        for a in PointSet::nonempty_subsets(n) {
            for b in PointSet::nonempty_subsets(n) {
                let w = closure_gap(s, a, b);
                let sep = separation_degree(s, a, b).unwrap();
                let mut gammas: BTreeSet<ExtValue> = [half(1), ExtValue::int(1), ExtValue::int(2)].into();
                match w.as_finite() {
                    Some(_) => {
                        gammas.extend([w, w + half(1)]);
                        if w > half(1) {
                            gammas.insert(ExtValue::Finite(w.as_finite().unwrap() - rat(1, 2)));
                        }
                    }
                    None => {
                        gammas.insert(beyond);
                    }
                }
                for &g in gammas.iter().filter(|g| !g.is_zero()) {
                    cases += 1;
                    let brute = oracle.urysohn_exists(s, a, b, g, None).unwrap();
                    let mut closed = w >= g;
                    if g <= sep {
                        if let UrysohnOutcome::Found(f) = urysohn(s, a, b, g).unwrap() {
                            closed &= GridSpec::urysohn(s, g).contains_all(&f);
                        } else {
                            closed = false;
                        }
                    }
                    if brute != closed {
                        bad += 1;
                    }
                }
            }
        }
    }
    let _ = write!(log, "urysohn {cases} cases/{bad} off; ");
    total_bad += bad;

    // Hulls.
    let (mut cases, mut bad) = (0u64, 0u64);
    for (idx, s) in spaces.iter().enumerate() {
        let n = s.len();
        let mut lowers: Vec<FnOverSpace> = Vec::new();
        let mut uppers: Vec<FnOverSpace> = Vec::new();
        if n <= 3 {
            let vals = [ExtValue::ZERO, ExtValue::int(1), ExtValue::int(2), INF];
            for code in 0..4usize.pow(n as u32) {
                let f: Vec<ExtValue> = (0..n).map(|i| vals[(code / 4usize.pow(i as u32)) % 4]).collect();
                if f.iter().all(|v| v.is_finite()) {
                    uppers.push(FnOverSpace::new(f.clone()));
                }
                lowers.push(FnOverSpace::new(f));
            }
        } else {
            for a in PointSet::all_subsets(n) {
                lowers.push(theta(s, a, None));
                uppers.push(theta(s, a, Some(ExtValue::int(3))));
            }
            let mut r = rng(idx as u64);
            for _ in 0..4 {
                lowers.push(random_function(&mut r, n, true));
                uppers.push(random_function(&mut r, n, false));
            }
        }
        for mu in &lowers {
            cases += 1;
            if oracle.hull(s, mu, HullSide::Lower, None).unwrap() != lower_hull(s, mu).unwrap() {
                bad += 1;
            }
        }
        for mu in &uppers {
            cases += 1;
            if oracle.hull(s, mu, HullSide::Upper, None).unwrap() != upper_hull(s, mu).unwrap() {
                bad += 1;
            }
        }
    }
    let _ = write!(log, "hulls {cases}/{bad}; ");
    total_bad += bad;

    // Interpolation.
    let (mut cases, mut bad) = (0u64, 0u64);
    for (idx, s) in spaces.iter().enumerate() {
        let n = s.len();
        let mut pairs = Vec::new();
        for a in PointSet::nonempty_subsets(n) {
            for b in PointSet::nonempty_subsets(n) {
                let sep = separation_degree(s, a, b).unwrap();
                if !sep.is_zero() && a.is_disjoint(b) {
                    let g = sep.min(ExtValue::int(3));
                    pairs.push((core(s, a.complement(n), g).unwrap(), delta_fn(s, b, Some(g))));
                }
            }
        }
        let mut r = rng(10_000 + idx as u64);
        for _ in 0..6 {
            let g = upper_hull(s, &random_function(&mut r, n, false)).unwrap();
            let h = lower_hull(s, &g.plus(half(r.gen_range(0..=4)))).unwrap();
            if g.le(&h) {
                pairs.push((g, h));
            }
        }
        for (g, h) in &pairs {
            cases += 1;
            let direct = kt_direct(s, g, h).unwrap();
            let brute = oracle.kt_exists(s, g, h, None).unwrap();
            let in_grid = direct.interpolant().is_none_or(|f| GridSpec::interpolation(s, g, h).contains_all(f));
            if brute != direct.interpolant().is_some() || !in_grid {
                bad += 1;
            }
        }
    }
    let _ = write!(log, "interpolation {cases}/{bad}; ");
    total_bad += bad;

    // Expansive maps: every domain up to 4 points into every codomain up to
    // 2 points, and up to 3 into up to 3; larger pairs are sampled below.
    let (mut cases, mut bad) = (0u64, 0u64);
    let small: Vec<&FiniteSpace> = spaces.iter().filter(|s| s.len() <= 3).collect();
    for dom in &spaces {
        for cod in &small {
            if dom.len() == 4 && cod.len() == 3 {
                continue;
            }
            let (n, k) = (dom.len(), cod.len());
            for code in 0..k.pow(n as u32) {
                let assignment: Vec<usize> = (0..n).map(|i| (code / k.pow(i as u32)) % k).collect();
                let m = SpaceMap::new(dom.clone(), (*cod).clone(), assignment).unwrap();
                cases += 2;
                if oracle.closed_expansive_violation(&m, None).unwrap().is_none() != is_closed_expansive(&m) {
                    bad += 1;
                }
                if oracle.open_expansive_violation(&m, None).unwrap().is_none() != is_open_expansive(&m) {
                    bad += 1;
                }
            }
        }
    }
    // Seeded sample of maps from 4 points into 3 or 4 points.
    let four: Vec<&FiniteSpace> = spaces.iter().filter(|s| s.len() == 4).collect();
    let mid: Vec<&FiniteSpace> = spaces.iter().filter(|s| s.len() >= 3).collect();
    let mut r = rng(66);
    for _ in 0..20_000 {
        let dom = four[r.gen_range(0..four.len())];
        let cod = mid[r.gen_range(0..mid.len())];
        let assignment: Vec<usize> = (0..4).map(|_| r.gen_range(0..cod.len())).collect();
        let m = SpaceMap::new(dom.clone(), cod.clone(), assignment).unwrap();
        cases += 2;
        if oracle.closed_expansive_violation(&m, None).unwrap().is_none() != is_closed_expansive(&m) {
            bad += 1;
        }
        if oracle.open_expansive_violation(&m, None).unwrap().is_none() != is_open_expansive(&m) {
            bad += 1;
        }
    }
    let _ = write!(log, "expansive maps {cases}/{bad}");
    total_bad += bad;

    report(total_bad == 0, format!("{} spaces up to relabelling; {log}", spaces.len()))
}

fn criterion_7() -> Report {
    let mut instances = 0;
    let mut r = rng(7);
    let (mut stages, mut lower_fail, mut upper_fail) = (0u64, 0u64, 0u64);
    let mut worst = rat(0, 1);
    let mut tong_ok = 0;
    let mut errors = Vec::new();
    while instances < 100 {
        let n = r.gen_range(2..=6);
        let s = random_space(&mut r, n);
        if !is_normal(&s).unwrap().normal {
            continue;
        }
        let g = upper_hull(&s, &random_function(&mut r, n, false)).unwrap();
        let h = lower_hull(&s, &g.plus(half(r.gen_range(0..=6)))).unwrap();
        if !g.le(&h) || h.max_value().is_zero() {
            continue;
        }
        instances += 1;
        let omega = h.max_value().as_finite().unwrap();
        match kt_staged(&s, &g, &h, 12, None) {
            Ok(res) => {
                for st in res.staged.iter().flatten().chain(res.dual_staged.iter().flatten()) {
                    stages += 1;
                    lower_fail += u64::from(!st.lower_ok);
                    upper_fail += u64::from(!st.upper_ok);
                    let ratio = st.excess.as_finite().unwrap() * rat(st.n as i64, 1) / omega;
                    worst = worst.max(ratio);
                }
                if let Status::Found(f) = &res.status {
                    if g.le(f) && f.le(&h) && classify(&s, f, CodomainTag::Euclid) {
                        tong_ok += 1;
                    }
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    report(
        lower_fail == 0 && upper_fail == 0 && tong_ok == 100 && errors.is_empty(),
        format!(
            "{stages} stages on 100 instances: phi <= f_n failed {lower_fail}, f_n - psi <= 2w/n failed {upper_fail} \
             (largest excess {worst}·w/n); Tong result in [g,h] and contractive {tong_ok}/100; errors {}",
            errors.len()
        ),
    )
}

fn criterion_8() -> Report {
    let spaces = sweep_spaces(4, &ENTRIES_012);
    let mut bad = Vec::new();
    let (mut triples, mut extended, mut via) = (0u64, 0u64, 0u64);
    for s in &spaces {
        let n = s.len();
        let normal = is_normal(s).unwrap().normal;
        let top = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| s.q(i, j))
            .chain(s.path_closure().rows().into_iter().flatten().map(|v| v + ExtValue::int(1)))
            .filter(|v| v.is_finite())
            .max()
            .unwrap();
        let gmax = top.as_finite().unwrap().to_integer();
        let mut failure_seen = false;
        'ys: for ys in PointSet::nonempty_subsets(n) {
            if ys.len() == n {
                continue;
            }
            let sub = s.subspace(ys).unwrap();
            let k = ys.len();
            let base = (gmax + 1) as usize;
            for code in 0..base.pow(k as u32) {
                let f = FnOverSpace::new(
                    (0..k).map(|i| ExtValue::int(((code / base.pow(i as u32)) % base) as i64)).collect(),
                );
                if !classify(&sub, &f, CodomainTag::Euclid) {
                    continue;
                }
                let level = level_set_development(&f).unwrap();
                if tietze_condition(s, ys, &level).unwrap().is_some() {
                    continue;
                }
                for dev in [level.clone(), canonical_development(&f, ExtValue::int(2)).unwrap()] {
                    if tietze_condition(s, ys, &dev).unwrap().is_some() {
                        continue;
                    }
                    triples += 1;
                    let res = tietze_extend(s, ys, &f, top, &dev).unwrap();
                    match &res.status {
                        ExtensionStatus::Extended(g) => {
                            extended += 1;
                            if g.restrict(ys) != f || !classify(s, g, CodomainTag::Euclid) || g.max_value() > top {
                                bad.push("extension does not restrict to f".to_string());
                            }
                        }
                        ExtensionStatus::NoExtension { .. } => {
                            failure_seen = true;
                            if normal {
                                bad.push(format!("normal space without extension: {:?}", s.matrix()));
                            }
                        }
                        ExtensionStatus::ConditionFailed(_) => bad.push("passing triple rejected".into()),
                    }
                }
                if !normal && failure_seen {
                    break 'ys;
                }
            }
        }
        if !normal && !failure_seen {
            bad.push(format!("non-normal space where every passing triple extends: {:?}", s.matrix()));
        }
        for a in PointSet::nonempty_subsets(n) {
            for b in PointSet::nonempty_subsets(n) {
                let sep = separation_degree(s, a, b).unwrap();
                for g in [half(1), ExtValue::int(1), ExtValue::int(2), sep] {
                    if g.is_zero() || g.is_inf() || g > sep {
                        continue;
                    }
                    via += 1;
                    let t = urysohn_via_tietze(s, a, b, g).unwrap();
                    let u = urysohn(s, a, b, g).unwrap();
                    if t.extension() != u.function() {
                        bad.push(format!("urysohn_via_tietze differs at {a:?},{b:?},{g}"));
                    }
                }
            }
        }
    }
    report(
        bad.is_empty(),
        format!(
            "{} spaces; {triples} passing (Y,f,dev) triples, {extended} extended; {via} Urysohn comparisons; {} problems{}",
            spaces.len(),
            bad.len(),
            first(&bad)
        ),
    )
}

fn criterion_9() -> Report {
    let mut r = rng(9);
    let (mut roundtrips, mut verified, mut applicable) = (0, 0, 0);
    let mut bad = Vec::new();
    for i in 0..1000 {
        let n = r.gen_range(1..=8);
        let s = random_space(&mut r, n);
        let d = s.path_closure();
        let c: Vec<ExtValue> = (0..n).map(|_| half(r.gen_range(0..=8))).collect();
        let f = FnOverSpace::new((0..n).map(|x| (0..n).map(|y| c[y] + d.get(x, y)).min().unwrap()).collect());
        let f = f.map(|v| v.tsub(f.min_value()));
        let scale = contraction_to_scale(&s, &f).unwrap();
        if scale_to_contraction(&s, &scale).unwrap() == f {
            roundtrips += 1;
        } else {
            bad.push(format!("round trip {i}"));
        }
        let gamma = f.max_value();
        if !gamma.is_zero() {
            applicable += 1;
            let (a, b) = (f.sublevel(ExtValue::ZERO), f.superlevel(gamma));
            if verify_normal_scale(&s, &scale, a, b, gamma) {
                verified += 1;
            } else {
                bad.push(format!("scale {i} fails verification"));
            }
        }
    }
    report(
        bad.is_empty(),
        format!("{roundtrips}/1000 exact round trips; {verified}/{applicable} scales verified for ({{f=0}},{{f=max}},max)"),
    )
}

fn criterion_10() -> Report {
    let mut r = rng(10);
    let (mut agree, mut normal) = (0, 0);
    for _ in 0..100 {
        let n = r.gen_range(1..=7);
        let c = random_relation(&mut r, n);
        let names = (0..n).map(|i| format!("t{i}")).collect();
        let s = FiniteSpace::from_topology(names, &c).unwrap();
        let ours = is_normal(&s).unwrap().normal;
        let classical = topologically_normal(&c);
        agree += usize::from(ours == classical);
        normal += usize::from(classical);
    }
    report(agree == 100, format!("{agree}/100 agree ({normal} normal, {} not)", 100 - normal))
}

fn run_cli(args: &[&str]) -> (Option<i32>, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_approach")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout, out.stderr)
}

fn criterion_11() -> Report {
    let dir = std::env::temp_dir().join(format!("approach-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut runs = 0;
    let mut mismatches = Vec::new();
    for entry in catalog::list() {
        let emitted: Vec<_> = ["1", "8", "1", "8"]
            .iter()
            .map(|j| run_cli(&["catalog", "emit", entry.name, "--jobs", j]))
            .collect();
        runs += 4;
        if emitted.iter().any(|o| *o != emitted[0]) {
            mismatches.push(format!("emit {}", entry.name));
        }
        let path = dir.join(format!("{}.json", entry.name));
        std::fs::write(&path, &emitted[0].1).unwrap();
        let p = path.to_str().unwrap();
        let n = approach::io::read_space(&path).unwrap().len();
        let mut commands: Vec<Vec<&str>> = vec![vec!["validate", p], vec!["normality", p, "--exhaustive"]];
        if n <= 10 {
            commands.push(vec!["frame", "cond2", p]);
            commands.push(vec!["frame", "cond3", p]);
        }
        for cmd in commands {
            let outs: Vec<_> = ["1", "8", "1", "8"]
                .iter()
                .map(|j| {
                    let mut args = cmd.clone();
                    args.extend(["--jobs", j]);
                    run_cli(&args)
                })
                .collect();
            runs += 4;
            if outs.iter().any(|o| *o != outs[0]) || outs[0].0 == Some(2) {
                mismatches.push(format!("{} {}", cmd[0], entry.name));
            }
        }
    }
    let list: Vec<_> = ["1", "8"].iter().map(|j| run_cli(&["catalog", "list", "--jobs", j])).collect();
    runs += 2;
    if list[0] != list[1] {
        mismatches.push("catalog list".into());
    }
    let _ = std::fs::remove_dir_all(&dir);
    report(mismatches.is_empty(), format!("{runs} runs over {} entries; mismatches {mismatches:?}", catalog::list().len()))
}

/// The first recorded problem, if any, for the detail line.
fn first<T: std::fmt::Debug>(bad: &[T]) -> String {
    bad.first().map(|b| format!("; first {b:?}")).unwrap_or_default()
}

type Criterion = (u32, &'static str, fn() -> Report);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "counterexample exInorm", criterion_1),
        (2, "counterexample exVO", criterion_2),
        (3, "metric normality", criterion_3),
        (4, "hull identities", criterion_4),
        (5, "separation equivalences", criterion_5),
        (6, "oracle agreement", criterion_6),
        (7, "staged interpolation bounds", criterion_7),
        (8, "extension equivalence", criterion_8),
        (9, "scale round trip", criterion_9),
        (10, "topological restriction", criterion_10),
        (11, "CLI determinism", criterion_11),
    ];
    // `ACCEPTANCE_ONLY=6,8` restricts the run.
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let mut unexpected = Vec::new();
    let mut total = Duration::ZERO;
    for (id, name, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let r = run();
        let took = start.elapsed();
        total += took;
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let tag = match (r.pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected)",
        };
        println!("criterion {id:>2} [{tag}] {name} ({:.2}s): {}", took.as_secs_f64(), r.detail);
        if r.pass == known {
            unexpected.push(id);
        }
    }
    println!("acceptance finished in {:.1}s", total.as_secs_f64());
    if !unexpected.is_empty() {
        println!("unexpected outcomes for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
