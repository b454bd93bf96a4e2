//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use heightzeta::asymptotics::{analyze, stirling_bernoulli_check, main_term, remainder_check, stirling_pochhammer_check, AsymptoticReport};
use heightzeta::curve::{affine_point_count, build_genus1_spec, frobenius_trace, splitting_type, SplittingType};
use heightzeta::gf::{irreducibles_up_to, Fq, PolyFq, RatFuncFq};
use heightzeta::oracle::{element_count, region_histogram, DEFAULT_BUDGET};
use heightzeta::places::canonical_height_exp;
use heightzeta::ratfunc_q::{q_frac, q_int, q_to_string, NumberFieldElem, PoleRecord, QPoly, QRatFunc, Var, Q};
use heightzeta::zeta::{assemble_zeta, decomposition_check, dedekind_zeta, BadPlaceData, ProblemSpec};
use heightzeta::Error;

const MAX_M: u64 = 12;
const MAX_K: u64 = 16;
/// Numeric pole locations are only used to pair records with table columns.
const LOCATION_TOL: f64 = 1e-9;
const EXAMPLE_TIME_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(300);
const RANDOM_SAMPLES: usize = 10_000;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn inert_spec() -> ProblemSpec {
    ProblemSpec::new(5, 1, 0, 2, vec![BadPlaceData { f_v: 2, vf: 1 }]).unwrap()
}

fn split_spec() -> ProblemSpec {
    ProblemSpec::new(5, 1, 0, 2, vec![BadPlaceData { f_v: 1, vf: 1 }; 2]).unwrap()
}

struct MatrixSpec {
    fq: Fq,
    f: String,
    spec: ProblemSpec,
}

/// q in {2,3,5}, d in {2,3}, every listed f with v(f) < d.
fn matrix() -> Vec<MatrixSpec> {
    let mut out = Vec::new();
    for q in [2u32, 3, 5] {
        let fq = Fq::prime(q).unwrap();
        let mut fs = vec!["t", "t+1", "t^2", "t^2+t"];
        match q {
            3 => fs.push("t^2+1"),
            5 => fs.push("t^2+2"),
            _ => {}
        }
        for d in [2u32, 3] {
            for f in &fs {
                let poly = PolyFq::parse(f, &fq).unwrap();
                match ProblemSpec::from_phi(&fq, &poly, d) {
                    Ok(spec) => out.push(MatrixSpec { fq: fq.clone(), f: f.to_string(), spec }),
                    Err(Error::Validation(_)) => {}
                    Err(e) => panic!("{f} over F_{q}: {e}"),
                }
            }
        }
    }
    out
}

fn label(m: &MatrixSpec) -> String {
    format!("q={} d={} f={}", m.spec.q, m.spec.d, m.f)
}

/// Largest `n` whose enumeration `H <= q^n` fits the budget.
fn feasible_height(q: u64) -> u32 {
    (0..).take_while(|&n| element_count(q, n) <= DEFAULT_BUDGET).last().unwrap()
}

/// Exponents `m < d (n + 1)` are fully covered by `H <= q^n`.
fn feasible_exponent(spec: &ProblemSpec, cap: u64) -> u64 {
    cap.min(spec.d as u64 * (feasible_height(spec.q) as u64 + 1) - 1)
}

fn record<'a>(rep: &'a AsymptoticReport, factor: &QPoly) -> Option<&'a PoleRecord> {
    rep.pole_records.iter().find(|r| &r.factor == factor)
}

fn poly(c: &[i64]) -> QPoly {
    QPoly::from_ints(c)
}

fn elem(min_poly: &QPoly, c: &[Q]) -> NumberFieldElem {
    NumberFieldElem::new(min_poly, QPoly::new(c.to_vec()))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= LOCATION_TOL * (1.0 + b.abs())
}

/// Multiset equality of pole locations `(Re, Im)`.
fn same_locations(rep: &AsymptoticReport, expected: &[(f64, f64)]) -> bool {
    let mut got: Vec<(f64, f64)> = rep.pole_records.iter().flat_map(|r| r.numeric_poles.iter().copied()).collect();
    if got.len() != expected.len() {
        return false;
    }
    expected.iter().all(|&(re, im)| {
        // imaginary parts are only defined modulo 2 pi / log alpha
        let period = 2.0 * std::f64::consts::PI / rep.normalized.var().log_alpha();
        match got.iter().position(|&(r, i)| {
            let shift = ((i - im) / period).round();
            close(r, re) && close(i - shift * period, im)
        }) {
            Some(k) => {
                got.swap_remove(k);
                true
            }
            None => false,
        }
    })
}

/// `u = alpha^(-a)` for a pole `a = re + i im`.
fn u_at(rep: &AsymptoticReport, re: f64, im: f64) -> Complex64 {
    (-Complex64::new(re, im) * rep.normalized.var().log_alpha()).exp()
}

fn eval_elem(x: &NumberFieldElem, u: Complex64) -> Complex64 {
    x.rep().eval_complex(u)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rep = analyze(&assemble_zeta(&inert_spec()).unwrap().combined).unwrap();
    let elapsed = start.elapsed();
    let pi = std::f64::consts::PI;
    let l5 = 5f64.ln();
    let mut notes = Vec::new();
    let locations = same_locations(&rep, &[(2.0, 0.0), (0.5, pi / (2.0 * l5)), (0.5, 3.0 * pi / (2.0 * l5)), (0.0, pi / l5)]);
    if !locations {
        notes.push("pole set differs".to_string());
    }
    let simple = rep.pole_records.iter().all(|r| r.order == 1);
    if !simple {
        notes.push("non-simple pole".into());
    }
    let mut exact = true;
    let mut check = |factor: &[i64], expected: Vec<Q>, what: &str| {
        let f = poly(factor);
        match record(&rep, &f) {
            Some(r) if r.laurent[0] == elem(&f, &expected) => {}
            Some(r) => {
                exact = false;
                notes.push(format!("{what}: got {}", r.laurent[0].rep()));
            }
            None => {
                exact = false;
                notes.push(format!("{what}: no record"));
            }
        }
    };
    check(&[1, -25], vec![q_frac(8, 91)], "c_1(2)");
    check(&[1, 1], vec![q_frac(400, 13)], "c_1(pi i/log 5)");
    // at a = 1/2 + pi i/(2 log 5), u = -i/sqrt5 so sqrt(-5) = -5u and
    // (2/7)(23 - 3 sqrt(-5)) = 46/7 + (30/7) u
    check(&[1, 0, 5], vec![q_frac(46, 7), q_frac(30, 7)], "c_1(1/2 + pi i/(2 log 5))");
    let u = u_at(&rep, 0.5, pi / (2.0 * l5));
    let embedding = (u - Complex64::new(0.0, -1.0 / 5f64.sqrt())).norm() < LOCATION_TOL;
    if !embedding {
        notes.push("unexpected embedding at the Re = 1/2 pole".into());
    }
    // the conjugate column is the same element at the conjugate root
    if let Some(r) = record(&rep, &poly(&[1, 0, 5])) {
        let v = eval_elem(&r.laurent[0], u.conj());
        let want = Complex64::new(46.0 / 7.0, 6.0 * 5f64.sqrt() / 7.0);
        if (v - want).norm() > 1e-9 {
            exact = false;
            notes.push("conjugate column mismatch".into());
        }
    }
    let fast = elapsed < EXAMPLE_TIME_LIMIT;
    notes.push(format!("{} ms", elapsed.as_millis()));
    outcome(locations && simple && exact && embedding && fast, notes.join("; "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let spec = split_spec();
    let zc = assemble_zeta(&spec).unwrap();
    let rep = analyze(&zc.combined).unwrap();
    let elapsed = start.elapsed();
    let var = Var::new(5, 2);
    let mut notes = Vec::new();

    let prod = |ps: &[&[i64]]| ps.iter().fold(QPoly::one(), |acc, p| &acc * &poly(p));
    let shown_main = QRatFunc::new(
        prod(&[&[0, 0, 1], &[1, -1], &[1, 5], &[1, 0, 0, 0, 125]]),
        prod(&[&[1, 1], &[1, -5], &[1, 0, 0, 0, 5]]),
        var,
    )
    .unwrap();
    let shown_corr =
        QRatFunc::new(prod(&[&[0, 0, 4], &[1, -1], &[1, 0, -5]]), prod(&[&[1, 1], &[1, 0, 0, 0, 5]]), var).unwrap();
    let closed_form = zc.main_term == shown_main && zc.correction_term == shown_corr;
    if !closed_form {
        notes.push(format!("closed form differs: main {} correction {}", zc.main_term, zc.correction_term));
    }

    let pi = std::f64::consts::PI;
    let l5 = 5f64.ln();
    let mut expected = vec![(2.0, 0.0), (0.0, 2.0 * pi / l5)];
    expected.extend([1.0, 3.0, 5.0, 7.0].map(|k| (0.5, k * pi / (2.0 * l5))));
    let locations = same_locations(&rep, &expected) && rep.pole_records.iter().all(|r| r.order == 1);
    if !locations {
        notes.push("pole set differs".into());
    }

    let mut exact = true;
    let mut compare = |factor: &[i64], want: NumberFieldElem, what: &str| {
        let got = record(&rep, &poly(factor)).map(|r| r.laurent[0].clone());
        if got.as_ref() != Some(&want) {
            exact = false;
            let got = got.map_or("none".to_string(), |g| g.rep().to_string().replace('w', "u"));
            notes.push(format!("{what}: expected {}, computed {got}", want.rep().to_string().replace('w', "u")));
        }
    };
    let f2 = poly(&[1, -5]);
    compare(&[1, -5], elem(&f2, &[q_frac(8, 63)]), "c_1(2)");
    let f0 = poly(&[1, 1]);
    compare(&[1, 1], elem(&f0, &[q_frac(-200, 3)]), "c_1(2 pi i/log 5)");
    // 1/u = 5^(1/4) zeta_8^k at a = 1/2 + k pi i/(2 log 5), so the table entry is
    // sum b_i u^(-i) in Q[u]/(1 + 5u^4)
    let f4 = poly(&[1, 0, 0, 0, 5]);
    let u = NumberFieldElem::generator(&f4);
    let b = [-43, 130, -37, 20].map(|x| q_frac(2 * x, 63));
    let mut table = NumberFieldElem::zero(&f4);
    for (i, bi) in b.iter().enumerate() {
        table = &table + &u.pow(-(i as i64)).unwrap().scale(bi);
    }
    compare(&[1, 0, 0, 0, 5], table, "c_1(1/2 + k pi i/(2 log 5))");

    let fast = elapsed < EXAMPLE_TIME_LIMIT;
    notes.push(format!("{} ms", elapsed.as_millis()));
    outcome(closed_form && locations && exact && fast, notes.join("; "))
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, spec) in [("inert", inert_spec()), ("split", split_spec())] {
        let rep = analyze(&assemble_zeta(&spec).unwrap().combined).unwrap();
        let chk = remainder_check(&rep, 60).unwrap();
        ok &= chk.holds();
        notes.push(format!(
            "{name}: exact remainder {}, decay base {:.4}, max |a_m - p_m| = {:.3e}",
            chk.matches_remainder, rep.decay_base, chk.max_abs
        ));
    }
    outcome(ok, notes.join("; "))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut covered = Vec::new();
    let mut anchor = false;
    for m in matrix() {
        let max_m = feasible_exponent(&m.spec, MAX_M);
        let phi = m.spec.source.as_ref().unwrap();
        let n = (max_m / m.spec.d as u64) as u32;
        let table = region_histogram(&m.fq, phi, n, DEFAULT_BUDGET).unwrap().canonical_counts(phi, m.spec.q, max_m);
        let series = assemble_zeta(&m.spec).unwrap().combined.series_coefficients(max_m as usize).unwrap();
        if let Some(k) = (0..=max_m as usize).find(|&k| series[k] != q_int(table.get(k as u64) as i64)) {
            failures.push(format!("{} at m={k}: {} vs {}", label(&m), q_to_string(&series[k]), table.get(k as u64)));
        }
        if m.spec.q == 5 && m.spec.d == 2 && m.f == "t" {
            anchor = table.counts[..4] == [0, 5, 20, 100];
        }
        if max_m < MAX_M {
            covered.push(format!("{}: m <= {max_m}", label(&m)));
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && anchor && elapsed < ORACLE_TIME_LIMIT;
    let mut detail = if failures.is_empty() {
        format!("{} specs agree, anchor (0,5,20,100) {anchor}", matrix().len())
    } else {
        failures.join("; ")
    };
    if !covered.is_empty() {
        detail += &format!("; budget-limited: {}", covered.join(", "));
    }
    detail += &format!("; {:.1} s", elapsed.as_secs_f64());
    outcome(ok, detail)
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    let mut bounded = true;
    let mut anchor = true;
    for m in matrix() {
        let k_max = feasible_exponent(&m.spec, MAX_K);
        let phi = m.spec.source.as_ref().unwrap();
        let n = (k_max / m.spec.d as u64) as u32;
        let table = region_histogram(&m.fq, phi, n, DEFAULT_BUDGET).unwrap().canonical_counts(phi, m.spec.q, k_max);
        let rep = analyze(&assemble_zeta(&m.spec).unwrap().combined).unwrap();
        let mut cumulative = 0u64;
        let diffs: Vec<Q> = (0..=k_max)
            .map(|k| {
                cumulative += table.get(k);
                q_int(cumulative as i64) - main_term(&rep, k).unwrap()
            })
            .collect();
        let max_abs = |upto: usize| diffs[..=upto].iter().map(|d| if *d < Q::zero() { -d } else { d.clone() }).max().unwrap();
        if max_abs(k_max as usize) != max_abs(k_max as usize / 2) {
            bounded = false;
            notes.push(format!("{}: |diff| grows (K={k_max})", label(&m)));
        }
        if m.spec.q == 5 && m.spec.d == 2 && m.f == "t" {
            let ones = diffs[1..].iter().all(|d| d.is_one());
            anchor = ones;
            let shown: Vec<String> = diffs.iter().take(4).map(q_to_string).collect();
            notes.push(format!("q=5 d=2 f=t: diff = {} ... (expected 1 for k >= 1)", shown.join(", ")));
        }
    }
    if bounded {
        notes.insert(0, "max |diff| over k <= K equals max over k <= K/2 for every spec".into());
    }
    outcome(bounded && anchor, notes.join("; "))
}

/// Effective divisors of degree `n` on the projective line, from its places.
fn effective_divisors(fq: &Fq, n: usize) -> Vec<u64> {
    let mut places = vec![0u64; n + 1];
    places[1] += 1; // infinity
    for p in irreducibles_up_to(n, fq) {
        places[p.deg0()] += 1;
    }
    let mut series = vec![0u64; n + 1];
    series[0] = 1;
    for (deg, &count) in places.iter().enumerate().skip(1) {
        for _ in 0..count {
            for k in deg..=n {
                series[k] += series[k - deg];
            }
        }
    }
    series
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    let series_identity = (1..=8).all(|n| stirling_bernoulli_check(n, 20).unwrap());
    let stirling = (1..=10).all(|n| stirling_pochhammer_check(n, 20).unwrap());
    if !series_identity {
        notes.push("Bernoulli/Stirling series identity failed".to_string());
    }
    if !stirling {
        notes.push("Stirling/Pochhammer identity failed".to_string());
    }
    let mut decomposition = true;
    let specs = matrix().into_iter().map(|m| (label(&m), m.spec)).chain([("inert".into(), inert_spec()), ("split".into(), split_spec())]);
    let mut count = 0;
    for (name, spec) in specs {
        count += 1;
        if !decomposition_check(&spec).unwrap().holds {
            decomposition = false;
            notes.push(format!("decomposition fails for {name}"));
        }
    }
    let mut dedekind = true;
    for q in [2u32, 3, 5] {
        let fq = Fq::prime(q).unwrap();
        let series = dedekind_zeta(0, q as u64, 0).unwrap().series_coefficients(4).unwrap();
        let counts = effective_divisors(&fq, 4);
        if series.iter().zip(&counts).any(|(a, &c)| *a != q_int(c as i64)) {
            dedekind = false;
            notes.push(format!("zeta of F_{q}(t) disagrees with divisor counts {counts:?}"));
        }
    }
    if notes.is_empty() {
        notes.push(format!("identities hold; decomposition verified for {count} specs"));
    }
    outcome(series_identity && stirling && decomposition && dedekind, notes.join("; "))
}

fn random_poly(fq: &Fq, deg: usize, rng: &mut ChaCha8Rng) -> PolyFq {
    PolyFq::new((0..=deg).map(|_| fq.from_u64(rng.gen_range(0..fq.order()))).collect())
}

fn random_element(fq: &Fq, rng: &mut ChaCha8Rng) -> RatFuncFq {
    loop {
        let num = random_poly(fq, rng.gen_range(0..=4), rng);
        let den = random_poly(fq, rng.gen_range(0..=4), rng);
        if let Ok(x) = RatFuncFq::new(num, den, fq) {
            return x;
        }
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let specs = matrix();
    for m in &specs {
        let phi = m.spec.source.as_ref().unwrap();
        for _ in 0..RANDOM_SAMPLES {
            let x = random_element(&m.fq, &mut rng);
            let h = canonical_height_exp(&x, phi, &m.fq).0;
            let hy = canonical_height_exp(&phi.apply(&x, &m.fq), phi, &m.fq).0;
            if hy != phi.d as u64 * h {
                failures.push(format!("{}: x = {}", label(m), x.display(&m.fq)));
                break;
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{} samples for each of {} specs", RANDOM_SAMPLES, specs.len())
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

fn criterion_8() -> Outcome {
    let f5 = Fq::prime(5).unwrap();
    let p = |s: &str| PolyFq::parse(s, &f5).unwrap();
    let t = PolyFq::t();
    let count = affine_point_count(&p("t^3+3"), &f5).unwrap();
    let trace = frobenius_trace(5, count).unwrap();
    let inert = splitting_type(&p("t^3+3"), &t, &f5).unwrap() == SplittingType::Inert;
    let split = splitting_type(&p("t^3+1"), &t, &f5).unwrap() == SplittingType::Split;
    let rejected = matches!(build_genus1_spec(&f5, &p("t^3+t"), &t, 2), Err(Error::Validation(_)));
    outcome(
        count == 5 && trace == 0 && inert && split && rejected,
        format!("#affine = {count}, trace = {trace}, inert at t: {inert}, split at t: {split}, ramified rejected: {rejected}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("inert genus-1 example: poles and Laurent coefficients", criterion_1),
        ("split genus-1 example: closed form, poles and Laurent coefficients", criterion_2),
        ("remainder after the principal parts decays geometrically", criterion_3),
        ("genus-0 series equal brute-force counts", criterion_4),
        ("counting error stays bounded", criterion_5),
        ("identity suites", criterion_6),
        ("canonical height functional equation", criterion_7),
        ("curve facts", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.passed {
            failed += 1;
        }
        println!("{} criterion {} ({name}): {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
