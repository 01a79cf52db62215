//! Acceptance suite. Each test prints one `PASS`/`FAIL` line to stderr,
//! bypassing the test harness capture so the lines show up in every run.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use mincw::bp::{accumulate_reliability, decode, BpConfig, DecodeTrace};
use mincw::channel::{initial_llr, transmit_all_zero, ChannelConfig};
use mincw::gf2::{rank, select_independent_columns, systematic_reduce};
use mincw::oracle::{exhaustive_min_weight, is_codeword};
use mincw::osd::{
    enumerate_patterns, run_search, run_search_with, run_trial, RunOptions, SearchConfig,
};
use mincw::{alist, codes, BitVector, Gf2Matrix, ParityCheckMatrix, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("acceptance {criterion:>2} {verdict} {name}: {detail}\n");
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn code_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/codes")
        .join(name)
}

fn load(name: &str) -> Result<ParityCheckMatrix, String> {
    let path = code_path(name);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("BLOCKED: cannot read {}: {e}", path.display()))?;
    alist::parse_alist(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs `seeds` independent searches and returns the per-seed best weights and
/// the union of codewords of weight `target`.
fn seeded_runs(
    h: &ParityCheckMatrix,
    sigma: f64,
    im: usize,
    l_c: usize,
    seeds: u64,
    target: usize,
) -> (Vec<Option<usize>>, BTreeSet<BitVector>) {
    let mut best = Vec::new();
    let mut found = BTreeSet::new();
    for seed in 0..seeds {
        let r = run_search(h, &SearchConfig::new(sigma, im, l_c, seed)).unwrap();
        best.push(r.best_weight());
        if r.best_weight() == Some(target) {
            found.extend(r.candidates.codewords().cloned());
        }
    }
    (best, found)
}

struct TableRow {
    criterion: u32,
    name: &'static str,
    file: &'static str,
    sigma: f64,
    im: usize,
    target: usize,
    min_found: usize,
    limit: Duration,
}

fn table_row(row: TableRow) {
    let TableRow {
        criterion,
        name,
        file,
        sigma,
        im,
        target,
        min_found,
        limit,
    } = row;
    let h = match load(file) {
        Ok(h) => h,
        Err(msg) => {
            report(criterion, name, false, &msg);
            panic!("{msg}");
        }
    };
    let start = Instant::now();
    let (best, found) = seeded_runs(&h, sigma, im, 100, 10, target);
    let elapsed = start.elapsed();
    let hits = best.iter().filter(|&&b| b == Some(target)).count();
    let pass = hits >= 8 && found.len() >= min_found && elapsed <= limit;
    report(
        criterion,
        name,
        pass,
        &format!(
            "best weight {target} in {hits}/10 seeds (need 8), {} distinct weight-{target} codewords (need {min_found}), {:.1}s",
            found.len(),
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass, "per-seed best weights {best:?}");
}

#[test]
fn c01_mackay_96_33_964() {
    table_row(TableRow {
        criterion: 1,
        name: "96.33.964 search",
        file: "96.33.964",
        sigma: 0.70,
        im: 5,
        target: 6,
        min_found: 2,
        limit: Duration::from_secs(300),
    });
}

#[test]
fn c02_mackay_495_62_3_2915() {
    table_row(TableRow {
        criterion: 2,
        name: "495.62.3.2915 search",
        file: "495.62.3.2915",
        sigma: 0.44,
        im: 4,
        target: 4,
        min_found: 30,
        limit: Duration::from_secs(1800),
    });
}

#[test]
fn c03_mackay_252_252_3_252_smoke() {
    let name = "252.252.3.252 smoke run";
    let h = match load("252.252.3.252") {
        Ok(h) => h,
        Err(msg) => {
            report(3, name, false, &msg);
            panic!("{msg}");
        }
    };
    let r = run_search_with(
        &h,
        &SearchConfig::new(0.70, 5, 200, 0),
        RunOptions {
            threads: 8,
            progress: None,
        },
    )
    .unwrap();
    let sound = r
        .candidates
        .codewords()
        .all(|c| is_codeword(&h, c).unwrap());
    let pass = sound && r.best_weight().is_some_and(|w| w <= 26);
    report(
        3,
        name,
        pass,
        &format!(
            "best weight {:?} (need <= 26), all codewords valid: {sound}",
            r.best_weight()
        ),
    );
    assert!(pass);
}

/// Random regular codes with `N <= 40` and `K <= 20`, then Hamming(7,4) and
/// the (3,1) repetition code.
fn oracle_suite() -> Vec<(String, ParityCheckMatrix)> {
    let shapes = [
        (24, 3, 6),
        (30, 3, 6),
        (36, 3, 6),
        (24, 3, 4),
        (32, 3, 4),
        (40, 3, 4),
        (36, 4, 6),
        (30, 4, 6),
        (40, 4, 8),
    ];
    let mut suite = Vec::new();
    for seed in 0..3 {
        for &(n, dv, dc) in &shapes {
            let h = codes::random_regular(n, dv, dc, 100 + seed);
            if n - rank(h.matrix()) <= 20 {
                suite.push((format!("({dv},{dc}) N={n} seed {}", 100 + seed), h));
            }
        }
    }
    suite.push(("Hamming(7,4)".into(), codes::hamming74()));
    suite.push(("repetition(3,1)".into(), codes::repetition3()));
    suite
}

fn suite_config(i: usize) -> SearchConfig {
    SearchConfig::new(0.70, 5, 200, i as u64)
}

#[test]
fn c04_oracle_equivalence() {
    let start = Instant::now();
    let suite = oracle_suite();
    let random = suite.len() - 2;
    let (mut equal, mut sound) = (0, 0);
    let mut misses = Vec::new();
    for (i, (name, h)) in suite.iter().enumerate() {
        let exact = exhaustive_min_weight(h, 25).unwrap().d_min;
        let found = run_search(h, &suite_config(i)).unwrap().best_weight();
        if found == exact {
            equal += 1;
        } else {
            misses.push(format!("{name}: found {found:?}, exact {exact:?}"));
        }
        // No codeword lighter than the true minimum can be reported.
        if found.is_none() || found >= exact {
            sound += 1;
        }
    }
    let elapsed = start.elapsed();
    let n = suite.len();
    let pass = random >= 20
        && equal as f64 >= 0.95 * n as f64
        && sound == n
        && elapsed <= Duration::from_secs(600);
    report(
        4,
        "oracle equivalence",
        pass,
        &format!(
            "{random} random codes + 2 classical; exact match {equal}/{n} (need 95%), sound {sound}/{n}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass, "{misses:?}");
}

fn random_full_rank(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ParityCheckMatrix {
    loop {
        let mut g = Gf2Matrix::zeros(m, n);
        for r in 0..m {
            for c in 0..n {
                g.set(r, c, rng.random_bool(0.4));
            }
        }
        if rank(&g) == m {
            return ParityCheckMatrix::new(g).unwrap();
        }
    }
}

fn binomial_count(k: usize, p: usize) -> usize {
    // Subsets of a k-set of size at most p, counted one mask at a time.
    (0u32..1 << k)
        .filter(|x| x.count_ones() as usize <= p)
        .count()
}

#[test]
fn c05_pattern_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    let mut wrong = Vec::new();
    for k in 1..=12 {
        for p in 0..=2 {
            for rep in 0..4 {
                let m = rng.random_range(1..=6);
                let h = random_full_rank(&mut rng, m, m + k);
                let mut cfg = SearchConfig::new(0.8, 3, 1, rep);
                cfg.order_p = p;
                let t = run_trial(&h, &cfg, rep as usize).unwrap();
                checked += 1;
                if t.record.pattern_count != binomial_count(k, p) {
                    wrong.push((k, p, t.record.pattern_count));
                }
            }
        }
    }
    let pass = wrong.is_empty();
    report(
        5,
        "pattern count",
        pass,
        &format!(
            "{checked} trials over K=1..12, p=0..2, mismatches {}",
            wrong.len()
        ),
    );
    assert!(pass, "{wrong:?}");
}

fn dense_syndrome(h: &Gf2Matrix, e: &BitVector) -> Vec<bool> {
    (0..h.rows())
        .map(|r| (0..h.cols()).filter(|&c| h.get(r, c) && e.get(c)).count() % 2 == 1)
        .collect()
}

#[test]
fn c06_reduced_system_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = 0;
    let triples = 10_000;
    for _ in 0..triples {
        let m = rng.random_range(1..=8);
        let k = rng.random_range(1..=10);
        let h = random_full_rank(&mut rng, m, m + k);
        let order: Vec<usize> = {
            let mut o: Vec<usize> = (0..m + k).collect();
            for i in (1..o.len()).rev() {
                o.swap(i, rng.random_range(0..=i));
            }
            o
        };
        let sel = select_independent_columns(h.matrix(), &Permutation::from_order(&order).unwrap())
            .unwrap();
        let s = BitVector::from_bools(&(0..m).map(|_| rng.random_bool(0.5)).collect::<Vec<_>>());
        let sys = systematic_reduce(&sel.matrix, &s).unwrap();
        let weight = rng.random_range(0..=k.min(3));
        let mut info: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            info.swap(i, rng.random_range(0..=i));
        }
        let mut info: Vec<usize> = info[..weight].to_vec();
        info.sort_unstable();
        let patterns = enumerate_patterns(&sys, weight);
        let Some(e) = patterns.iter().find(|e| e.info_support == info) else {
            failures += 1;
            continue;
        };
        let mut ok = (0..k).all(|j| e.bits.get(m + j) == info.contains(&j));
        ok &= dense_syndrome(&sys.matrix, &e.bits) == sys.syndrome.to_bools();
        ok &= dense_syndrome(&sel.matrix, &e.bits) == s.to_bools();
        if !ok {
            failures += 1;
        }
    }
    let pass = failures == 0;
    report(
        6,
        "reduced system consistency",
        pass,
        &format!("{triples} triples, {failures} failures"),
    );
    assert!(pass);
}

/// Independent route: Horner recursion over explicitly padded rows.
fn horner_reliability(trace: &DecodeTrace, alpha: f64) -> Vec<f64> {
    let n = trace.llr_history[0].len();
    let mut acc = vec![0.0; n];
    for j in 0..=trace.max_iterations {
        let row = if j < trace.llr_history.len() {
            &trace.llr_history[j]
        } else {
            trace.llr_history.last().unwrap()
        };
        for i in 0..n {
            acc[i] = alpha * acc[i] + row[i];
        }
    }
    acc.into_iter().map(f64::abs).collect()
}

#[test]
fn c07_reliability_regression() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut traces = 0;
    for t in 0..400 {
        let n = [24, 30, 36, 40][t % 4];
        let h = codes::random_regular(n, 3, 6, t as u64);
        let sigma = rng.random_range(0.5..1.2);
        let y = transmit_all_zero(n, &ChannelConfig::new(sigma, t as u64).unwrap(), 0);
        let cfg = BpConfig {
            max_iterations: rng.random_range(0..12),
            llr_clip: 50.0,
            early_stop_on_zero_syndrome: rng.random_bool(0.5),
        };
        let trace = decode(&h, &initial_llr(&y, sigma), &cfg).unwrap();
        for alpha in [1.0, 0.5] {
            let got = accumulate_reliability(&trace, alpha);
            let want = horner_reliability(&trace, alpha);
            for (g, w) in got.iter().zip(&want) {
                let err = if *w == 0.0 {
                    g.abs()
                } else {
                    (g - w).abs() / w.abs()
                };
                worst = worst.max(err);
            }
            traces += 1;
        }
    }
    let pass = worst <= 1e-12;
    report(
        7,
        "reliability accumulation",
        pass,
        &format!("{traces} traces, worst relative error {worst:.3e} (limit 1e-12)"),
    );
    assert!(pass);
}

#[test]
fn c08_determinism() {
    let suite = oracle_suite();
    let mut differing = Vec::new();
    for (i, (name, h)) in suite.iter().enumerate() {
        let cfg = suite_config(i);
        let a = run_search_with(
            h,
            &cfg,
            RunOptions {
                threads: 1,
                progress: None,
            },
        )
        .unwrap();
        let b = run_search_with(
            h,
            &cfg,
            RunOptions {
                threads: 1,
                progress: None,
            },
        )
        .unwrap();
        let c = run_search_with(
            h,
            &cfg,
            RunOptions {
                threads: 8,
                progress: None,
            },
        )
        .unwrap();
        if a.candidates != b.candidates || a.candidates != c.candidates {
            differing.push(name.clone());
        }
    }
    let pass = differing.is_empty();
    report(
        8,
        "determinism",
        pass,
        &format!(
            "{} codes, threads 1/1/8, {} with differing candidate lists",
            suite.len(),
            differing.len()
        ),
    );
    assert!(pass, "{differing:?}");
}

#[test]
fn c09_alist_round_trip() {
    let mut problems = Vec::new();
    let files = [
        "96.33.964",
        "495.62.3.2915",
        "252.252.3.252",
        "504.504.3.504",
    ];
    for f in files {
        match load(f) {
            Err(msg) => problems.push(msg),
            Ok(h) => {
                let text = alist::write_alist(&h);
                let again = alist::parse_alist(&text).unwrap();
                if again != h || alist::write_alist(&again) != text {
                    problems.push(format!("{f}: round trip changed the matrix"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let m = rng.random_range(1..40);
        let n = rng.random_range(1..80);
        let density = rng.random_range(0.02..0.5);
        let mut g = Gf2Matrix::zeros(m, n);
        for r in 0..m {
            for c in 0..n {
                g.set(r, c, rng.random_bool(density));
            }
        }
        let h = ParityCheckMatrix::new(g).unwrap();
        let again = alist::parse_alist(&alist::write_alist(&h)).unwrap();
        if again != h {
            problems.push(format!("random {m}x{n}: round trip changed the matrix"));
        }
    }
    let pass = problems.is_empty();
    report(
        9,
        "alist round trip",
        pass,
        &format!("4 code files + 100 random matrices; problems: {problems:?}"),
    );
    assert!(pass);
}
