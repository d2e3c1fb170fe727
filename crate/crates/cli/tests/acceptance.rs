//! Acceptance checks 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use common::*;
use cylknot_cli::commands::ROSETTE_LIST;
use cylknot_cli::{dossier, run, Cli};
use cylknot_core::braid::{candidate_bound, StarPolygon};
use cylknot_core::exact::{gcd, ratio};
use cylknot_core::geometry::{chord_crossings, sample_generic_phases, tan_ratio_rationality_scan};
use cylknot_core::invariants::{alexander, jones, seifert_matrix, signature, InvariantSet};
use cylknot_core::rosette::verify_rosettes;
use cylknot_core::{
    canonicalize, check_necessary, enumerate_candidates, exclusion_check, extract_braid, realize_sweep,
    sign_vectors, verify_run_structure, BraidWord, CurveParams, LaurentPoly,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let (pass, detail) = match result {
        Ok(d) => match limit {
            Some(l) if elapsed > l => (false, format!("{d}; took {elapsed:.2?}, limit {l:?}")),
            _ => (true, d),
        },
        Err(e) => (false, e),
    };
    println!(
        "criterion {id:>2}: {} {title} ({:.2} s) {detail}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    pass
}

fn admissible(max_n: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for s in 2..=4 {
        for n in 2 * s + 1..=max_n {
            if gcd(s, n) == 1 {
                out.push((s, n));
            }
        }
    }
    out
}

fn sweep_cases() -> Vec<(i64, i64, i64)> {
    admissible(16)
        .into_iter()
        .flat_map(|(s, n)| (1..=24).map(move |m| (s, n, m)))
        .collect()
}

fn torus_realization() -> Check {
    let mut worst = Duration::ZERO;
    for (p, q) in [(2i64, 5i64), (2, 7), (3, 7), (3, 8)] {
        let start = Instant::now();
        let word = extract_braid(&CurveParams::generic(p, q, q).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let gens: Vec<i64> = (1..p).collect();
        let torus = BraidWord::from_signed(p as usize, &gens.repeat(q as usize)).unwrap();
        let canon = canonicalize(&word).unwrap();
        ensure(canon == canonicalize(&torus).unwrap(), || {
            format!("Z({p},{q},{q}) canonicalizes to {canon}, not ({torus})")
        })?;
        let delta = alexander(&word).unwrap();
        ensure(delta == unreduced_burau_alexander(&torus), || format!("T({p},{q}) Burau oracle mismatch"))?;
        ensure(delta == torus_alexander(p, q), || format!("T({p},{q}) closed formula mismatch"))?;
        let took = start.elapsed();
        ensure(took < Duration::from_secs(1), || format!("T({p},{q}) took {took:?}"))?;
        worst = worst.max(took);
    }
    Ok(format!("4 torus knots, slowest {worst:.2?}"))
}

fn z_3_11_4() -> Check {
    let word = extract_braid(&CurveParams::generic(3, 11, 4).unwrap()).unwrap();
    let inv = InvariantSet::compute(&word, 30).map_err(|e| e.to_string())?;
    let t = LaurentPoly::from_i64s(-1, &[1, -1, 1]);
    let expected = (&t * &t).normalize_symmetric();
    ensure(inv.alexander == expected, || format!("Δ = {}", inv.alexander))?;
    ensure(wirtinger_alexander(&word) == expected, || "Wirtinger oracle disagrees".into())?;
    ensure(inv.det == BigInt::from(9), || format!("det {}", inv.det))?;
    ensure(inv.signature == 0, || format!("signature {}", inv.signature))?;
    let composite: BraidWord = "s1 s1 s1 s2^-1 s2^-1 s2^-1".parse().unwrap();
    let reference = InvariantSet::compute(&composite, 30).unwrap();
    ensure(inv.agrees_up_to_mirror(&reference), || "differs from 3_1 # 3_1*".into())?;
    Ok(format!("Δ = {}, det 9, signature 0", inv.alexander))
}

fn necessary_sweep() -> Check {
    let cases = sweep_cases();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(s, n, m)| {
            let report = CurveParams::generic(s, n, m)
                .map_err(|e| e.to_string())
                .and_then(|p| check_necessary(&p).map_err(|e| e.to_string()));
            match report {
                Ok(r) if r.verdict.pass => None,
                Ok(r) => Some(format!("Z({s},{n},{m}): {}", r.verdict.reasons.join("; "))),
                Err(e) => Some(format!("Z({s},{n},{m}): {e}")),
            }
        })
        .collect();
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    Ok(format!("{} curves, 0 failures", cases.len()))
}

fn run_structure() -> Check {
    let cases: Vec<_> = sweep_cases().into_iter().filter(|&(_, n, m)| gcd(n, m) == 1).collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(s, n, m)| {
            let word = extract_braid(&CurveParams::generic(s, n, m).ok()?).ok()?;
            let v = sign_vectors(&word).ok()?;
            let runs = match verify_run_structure(&v, s, n, m) {
                Ok(r) => r,
                Err(e) => return Some(format!("Z({s},{n},{m}): {e}")),
            };
            let (hi, lo) = ((n as usize).div_ceil(2), n as usize / 2);
            runs.iter()
                .filter(|r| !r.degenerate)
                .find(|r| (r.leading_len, r.trailing_len) != (hi, lo))
                .map(|r| format!("Z({s},{n},{m}) v_{}: runs {} + {}", r.j, r.leading_len, r.trailing_len))
        })
        .collect();
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    Ok(format!("{} coprime curves, 0 failures", cases.len()))
}

fn enumeration_bound() -> Check {
    let results: Vec<Result<(usize, usize), String>> = admissible(21)
        .par_iter()
        .map(|&(s, n)| {
            let e = enumerate_candidates(s, n).map_err(|e| format!("({s},{n}): {e}"))?;
            let bound = candidate_bound(s, n);
            let expected = ratio(n + 1, 1) * ratio(1 << s, 8);
            if bound != expected || BigRational::from_integer(e.count().into()) > bound {
                return Err(format!("({s},{n}): {} candidates, bound {bound}", e.count()));
            }
            let sweep = realize_sweep(s, n, 40).map_err(|e| format!("({s},{n}): {e}"))?;
            for (m, w) in &sweep {
                if !e.contains(w).map_err(|e| e.to_string())? {
                    return Err(format!("Z({s},{n},{m}) realizes {w}, not a candidate"));
                }
            }
            Ok((e.count(), sweep.len()))
        })
        .collect();
    let mut total = (0, 0);
    for r in results {
        let (c, w) = r?;
        total = (total.0 + c, total.1 + w);
    }
    Ok(format!("{} candidates over {} (s,n) pairs; {} realized braids contained", total.0, admissible(21).len(), total.1))
}

fn rosettes() -> Check {
    let reports = verify_rosettes(&ROSETTE_LIST);
    for (r, (s, k)) in reports.iter().zip(ROSETTE_LIST) {
        let r = r.as_ref().map_err(|e| format!("R^{k}_{s}: {e}"))?;
        ensure(r.pass, || format!("R^{k}_{s} invariants differ"))?;
    }
    for (s, k, name) in [(3, 2, "4_1"), (3, 4, "8_18"), (3, 5, "10_123"), (4, 3, "9_40")] {
        let n = k * (s + 1);
        let args = ["cylknot", "identify", "--s", &s.to_string(), "--n", &n.to_string(), "--m", &k.to_string()];
        let out = run(Cli::try_parse_from(args).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let names: Vec<&str> = v["matches"].as_array().unwrap().iter().filter_map(|m| m["name"].as_str()).collect();
        ensure(names == [name], || format!("Z({s},{n},{k}) identified as {names:?}, expected {name}"))?;
    }
    Ok("8 rosettes agree; 4_1, 8_18, 10_123, 9_40 identified".into())
}

fn exclusion() -> Check {
    let all = dossier::builtin();
    let table = cylknot_cli::table::KnotTable::builtin();
    for (name, needle) in [("8_10", "no cyclic period"), ("5_2", "|1| < bridge number 2")] {
        let k = all.iter().find(|k| k.name == name).ok_or(format!("no dossier for {name}"))?;
        let row = table.get(name).ok_or(format!("no table row for {name}"))?;
        ensure(row.det == k.det, || format!("{name}: dossier det {} vs table {}", k.det, row.det))?;
        let ex = exclusion_check(k);
        ensure(!ex.cylinder_possible, || format!("{name} not excluded"))?;
        ensure(ex.reasons.iter().any(|r| r.contains("not ribbon")), || format!("{name}: {:?}", ex.reasons))?;
        ensure(ex.reasons.iter().any(|r| r.contains(needle)), || format!("{name}: {:?}", ex.reasons))?;
    }
    Ok("8_10 and 5_2 excluded".into())
}

fn tan_scan() -> Check {
    let sols = tan_ratio_rationality_scan(50);
    let found: Vec<String> = sols.iter().map(|s| format!("({}, {}, {})", s.alpha, s.beta, s.lambda)).collect();
    ensure(
        sols.len() == 1 && sols[0].alpha == ratio(1, 3) && sols[0].beta == ratio(1, 6) && sols[0].lambda == ratio(3, 1),
        || format!("found {found:?}"),
    )?;
    Ok(found.join(" "))
}

fn phase_independence() -> Check {
    let mut out = Vec::new();
    for (s, n, m) in [(3i64, 8i64, 2i64), (4, 11, 10)] {
        let phases = sample_generic_phases(s, n, m, 10).map_err(|e| e.to_string())?;
        let mut distinct = phases.clone();
        distinct.dedup();
        ensure(distinct.len() == 10, || format!("Z({s},{n},{m}): only {} phases", distinct.len()))?;
        let star = StarPolygon::new(s, n).unwrap();
        let invs: Vec<InvariantSet> = phases
            .par_iter()
            .map(|phi| InvariantSet::compute(&star.resolve(m, phi).unwrap().braid_word(), 30).unwrap())
            .collect();
        for (phi, inv) in phases.iter().zip(&invs) {
            ensure(inv.alexander == invs[0].alexander, || format!("Z({s},{n},{m},{phi}): Δ differs"))?;
            ensure(inv.signature.abs() == invs[0].signature.abs(), || format!("Z({s},{n},{m},{phi}): signature"))?;
            ensure(inv.agrees_up_to_mirror(&invs[0]), || format!("Z({s},{n},{m},{phi}): invariants differ"))?;
        }
        out.push(format!("Z({s},{n},{m}) Δ = {}", invs[0].alexander));
    }
    Ok(out.join("; "))
}

fn knot_word(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands)
        .prop_flat_map(move |s| {
            let letter = (1..s as i64, any::<bool>()).prop_map(|(j, neg)| if neg { -j } else { j });
            (Just(s), prop::collection::vec(letter, 1..=max_len))
        })
        .prop_map(|(s, g)| BraidWord::from_signed(s, &g).unwrap())
        .prop_filter("closure must be a knot", |w| w.is_knot())
}

fn property_suites() -> Check {
    let mut runner = TestRunner::new(Config {
        cases: 300,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&knot_word(5, 14), |w| {
            let m = w.mirror();
            prop_assert_eq!(alexander(&m).unwrap(), alexander(&w).unwrap());
            prop_assert_eq!(
                signature(&seifert_matrix(&m).unwrap()),
                -signature(&seifert_matrix(&w).unwrap())
            );
            prop_assert_eq!(jones(&m, 30).unwrap(), jones(&w, 30).unwrap().invert_variable());
            Ok(())
        })
        .map_err(|e| format!("mirror relations: {e}"))?;
    runner
        .run(&knot_word(6, 16), |w| {
            let a = alexander(&w).unwrap();
            prop_assert_eq!(&a, &wirtinger_alexander(&w));
            prop_assert_eq!(&a, &unreduced_burau_alexander(&w));
            Ok(())
        })
        .map_err(|e| format!("Burau vs Wirtinger: {e}"))?;
    let mut stars = 0;
    for n in 3..=25i64 {
        for s in 2..n {
            if 2 * s + 1 > n || gcd(s, n) != 1 {
                continue;
            }
            let ours = chord_crossings(s, n).unwrap().len();
            ensure(ours as i64 == n * (s - 1) && ours == segment_crossings(s, n), || {
                format!("{{{n}/{s}}}: {ours} crossings")
            })?;
            stars += 1;
        }
    }
    Ok(format!("2 × 300 random knots, {stars} star polygons"))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        criterion(1, "torus realization", None, torus_realization),
        criterion(2, "Z(3,11,4) is 3_1 # 3_1*", secs(1), z_3_11_4),
        criterion(3, "necessary-condition sweep", secs(120), necessary_sweep),
        criterion(4, "run structure", None, run_structure),
        criterion(5, "enumeration bound", None, enumeration_bound),
        criterion(6, "rosette verification", None, rosettes),
        criterion(7, "exclusion", None, exclusion),
        criterion(8, "tan ratio scan", secs(30), tan_scan),
        criterion(9, "phase independence", None, phase_independence),
        criterion(10, "property suites", None, property_suites),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
