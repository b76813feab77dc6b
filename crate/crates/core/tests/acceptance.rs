//! Acceptance suite. Every criterion runs at its fixed tolerance and prints
//! one PASS/FAIL line; the test fails if any criterion fails.
//!
//! Run with `cargo test -p exclcs --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use exclcs::automaton::{normalize, ExclusionAutomaton, KeywordTree, RemovalReason, Step};
use exclcs::bench::time_instance;
use exclcs::gen::{bench_instance, random_string, rng, Instance};
use exclcs::oracle::{
    contains_any_substring, is_subsequence, lcs_length, naive_sigma, oracle_lcs_excluding,
};
use exclcs::solver::{solve, solve_length_rolling, solve_table, solve_table_literal, Mode};
use rand::Rng;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(name: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { name, pass, detail }
}

struct Case {
    x: Vec<u8>,
    y: Vec<u8>,
    patterns: Vec<Vec<u8>>,
}

fn small_cases() -> Vec<Case> {
    let mut rng = rng(0x5eed_0001);
    (0..1000)
        .map(|_| {
            let n = rng.gen_range(0..=12);
            let m = rng.gen_range(0..=12);
            let d = rng.gen_range(0..=3);
            Case {
                x: random_string(&mut rng, n, 3),
                y: random_string(&mut rng, m, 3),
                patterns: (0..d)
                    .map(|_| {
                        let len = rng.gen_range(1..=3);
                        random_string(&mut rng, len, 3)
                    })
                    .collect(),
            }
        })
        .collect()
}

fn unconstrained_cases() -> Vec<Case> {
    let mut rng = rng(0x5eed_0005);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(0..=50);
            let m = rng.gen_range(0..=50);
            let alphabet = rng.gen_range(1..=4);
            Case {
                x: random_string(&mut rng, n, alphabet),
                y: random_string(&mut rng, m, alphabet),
                patterns: Vec::new(),
            }
        })
        .collect()
}

/// Criteria 1, 2 and 7 on the small instances.
fn oracle_equivalence(cases: &[Case]) -> [Outcome; 3] {
    let start = Instant::now();
    let (mut agree, mut witness_ok, mut positive, mut rolling_ok) = (0, 0, 0, 0);
    for c in cases {
        let expected = oracle_lcs_excluding(&c.x, &c.y, &c.patterns, false).unwrap().length;
        let r = solve(&c.x, &c.y, &c.patterns, Mode::Witness).unwrap();
        agree += usize::from(r.length == expected);

        if r.length > 0 {
            positive += 1;
            let cs = normalize(&c.patterns).unwrap();
            let z = r.lcs.as_deref().unwrap();
            let valid = z.len() == r.length
                && is_subsequence(z, &c.x)
                && is_subsequence(z, &c.y)
                && !contains_any_substring(z, cs.patterns());
            witness_ok += usize::from(valid);
        }

        let rolling = solve(&c.x, &c.y, &c.patterns, Mode::LengthOnly).unwrap();
        rolling_ok += usize::from(rolling.length == r.length);
    }
    let total = cases.len();
    [
        outcome(
            "1 oracle equivalence",
            agree == total && total >= 1000 && start.elapsed().as_secs() < 60,
            format!("{agree}/{total} agree, {:.2?}", start.elapsed()),
        ),
        outcome(
            "2 witness validity",
            witness_ok == positive,
            format!("{witness_ok}/{positive} positive-answer witnesses valid"),
        ),
        outcome(
            "7a rolling agreement (criterion 1 instances)",
            rolling_ok == total,
            format!("{rolling_ok}/{total}"),
        ),
    ]
}

fn recurrence_forms() -> Outcome {
    let mut rng = rng(0x5eed_0003);
    let mut equal = 0;
    for _ in 0..100 {
        let n = rng.gen_range(0..=20);
        let m = rng.gen_range(0..=20);
        let alphabet = rng.gen_range(2..=4);
        let x = random_string(&mut rng, n, alphabet);
        let y = random_string(&mut rng, m, alphabet);
        let patterns: Vec<Vec<u8>> = (0..rng.gen_range(0..=4))
            .map(|_| {
                let len = rng.gen_range(1..=4);
                random_string(&mut rng, len, alphabet)
            })
            .collect();
        let a = ExclusionAutomaton::new(&normalize(&patterns).unwrap());
        equal += usize::from(solve_table(&x, &y, &a).unwrap() == solve_table_literal(&x, &y, &a).unwrap());
    }
    outcome("3 recurrence form equivalence", equal == 100, format!("{equal}/100 identical cubes"))
}

fn micro_examples() -> [Outcome; 3] {
    let tree = KeywordTree::new(&["aab", "aba", "ba"]);
    let pre = tree.failure()[1..].to_vec();

    // Walk the un-normalized tree, leaves included, as the automaton would.
    let mut at = 0;
    for &c in b"aabaaabb" {
        at = loop {
            if let Some(next) = tree.child(at, c) {
                break next;
            }
            if at == 0 {
                break 0;
            }
            at = tree.pre(at);
        };
    }
    let naive = naive_sigma(b"aabaaabb", &["aab", "aba", "ba"]);

    let cs = normalize(&["aab", "aba", "ba"]).unwrap();
    let removed: Vec<(&[u8], RemovalReason)> =
        cs.removed().iter().map(|r| (&r.pattern[..], r.reason)).collect();

    [
        outcome("4a failure function of {aab, aba, ba}", pre == [0, 1, 4, 6, 7, 0, 1], format!("pre = {pre:?}")),
        outcome(
            "4b sigma(aabaaabb) is node 6 labeled b",
            at == 6 && tree.label(6) == b"b" && naive == b"b",
            format!("node {at}, label {:?}", String::from_utf8_lossy(&tree.label(at))),
        ),
        outcome(
            "4c normalization removes exactly aba",
            removed == [(&b"aba"[..], RemovalReason::Superstring)],
            format!("removed {:?}", removed.iter().map(|(p, _)| String::from_utf8_lossy(p)).collect::<Vec<_>>()),
        ),
    ]
}

fn degenerate(cases: &[Case]) -> [Outcome; 2] {
    let (mut equal, mut rolling_ok) = (0, 0);
    for c in cases {
        let r = solve(&c.x, &c.y, &c.patterns, Mode::Witness).unwrap();
        equal += usize::from(r.length == lcs_length(&c.x, &c.y) && r.stats.s == 1);
        let rolling = solve(&c.x, &c.y, &c.patterns, Mode::LengthOnly).unwrap();
        rolling_ok += usize::from(rolling.length == r.length);
    }
    let total = cases.len();
    [
        outcome("5 unconstrained equals classic LCS", equal == total, format!("{equal}/{total}")),
        outcome("7b rolling agreement (criterion 5 instances)", rolling_ok == total, format!("{rolling_ok}/{total}")),
    ]
}

fn automaton_suite() -> Outcome {
    let mut rng = rng(0x5eed_0008);
    let (mut checked, mut bad) = (0usize, 0usize);
    for _ in 0..50 {
        let alphabet = rng.gen_range(1..=5);
        let mut raw = Vec::new();
        let budget = rng.gen_range(1..=40);
        let mut used = 0;
        while used < budget {
            let len = rng.gen_range(1..=6).min(budget - used);
            raw.push(random_string(&mut rng, len, alphabet));
            used += len;
        }
        let cs = normalize(&raw).unwrap();
        let a = ExclusionAutomaton::new(&cs);
        let mut chars = a.pattern_alphabet().to_vec();
        let outside = [b'x', b'Y', 0x00];
        chars.extend(outside);
        for k in 0..a.s() {
            for &c in &chars {
                let mut s = a.label(k);
                s.push(c);
                let label = naive_sigma(&s, cs.patterns());
                let expected = if cs.patterns().contains(&label) {
                    Step::Match
                } else {
                    Step::State((0..a.s()).find(|&q| a.label(q) == label).unwrap())
                };
                let table = a.sigma_step(k, c);
                let ok = table == a.sigma_walk(k, c)
                    && table == expected
                    && (!outside.contains(&c) || table == Step::State(0));
                checked += 1;
                bad += usize::from(!ok);
            }
        }
    }
    outcome("8 lambda = failure walk = naive sigma", bad == 0, format!("{} of {checked} pairs agree", checked - bad))
}

struct Timed {
    s: usize,
    elapsed: Duration,
}

/// Median-of-`runs` times for two instances, alternating between them so
/// drifting background load affects both points alike.
fn paired_medians(a: &Instance, b: &Instance, runs: usize) -> (Timed, Timed) {
    let prepared: Vec<_> = [a, b]
        .into_iter()
        .map(|inst| (inst, ExclusionAutomaton::new(&normalize(&inst.patterns).unwrap())))
        .collect();
    let mut times = [Vec::new(), Vec::new()];
    for _ in 0..runs {
        for (slot, (inst, automaton)) in prepared.iter().enumerate() {
            let start = Instant::now();
            std::hint::black_box(solve_length_rolling(&inst.x, &inst.y, automaton).unwrap());
            times[slot].push(start.elapsed());
        }
    }
    let mut medians = times.into_iter().zip(&prepared).map(|(mut t, (_, automaton))| {
        t.sort_unstable();
        Timed { s: automaton.s(), elapsed: t[t.len() / 2] }
    });
    (medians.next().unwrap(), medians.next().unwrap())
}

fn scaling() -> [Outcome; 3] {
    const SEED: u64 = 0x5eed_0006;
    const RUNS: usize = 5;
    let instance = |n, m, r| bench_instance(SEED, n, m, r, 4, 8).unwrap();

    // Warm-up.
    time_instance(&instance(500, 500, 32), 2).unwrap();

    let (n1, n2) = paired_medians(&instance(500, 500, 32), &instance(1000, 500, 32), RUNS);
    let n_ratio = n2.elapsed.as_secs_f64() / n1.elapsed.as_secs_f64();

    let (r1, r2) = paired_medians(&instance(500, 500, 32), &instance(500, 500, 64), RUNS);
    let r_ratio = r2.elapsed.as_secs_f64() / r1.elapsed.as_secs_f64();

    let inst = instance(1000, 1000, 50);
    let a = ExclusionAutomaton::new(&normalize(&inst.patterns).unwrap());
    let start = Instant::now();
    solve_length_rolling(&inst.x, &inst.y, &a).unwrap();
    let big = start.elapsed();

    [
        outcome(
            "6a doubling n scales time by [1.6, 2.6]",
            (1.6..=2.6).contains(&n_ratio),
            format!("s {}, {:.2?} -> {:.2?}, ratio {n_ratio:.2}", n1.s, n1.elapsed, n2.elapsed),
        ),
        outcome(
            "6b doubling r scales time by [1.4, 2.8]",
            (1.4..=2.8).contains(&r_ratio),
            format!("s {} -> {}, {:.2?} -> {:.2?}, ratio {r_ratio:.2}", r1.s, r2.s, r1.elapsed, r2.elapsed),
        ),
        outcome(
            "6c n = m = 1000, r = 50 length-only under 5 s",
            big.as_secs_f64() < 5.0,
            format!("{big:.2?} (s = {})", a.s()),
        ),
    ]
}

#[test]
fn acceptance() {
    let small = small_cases();
    let unconstrained = unconstrained_cases();

    let mut outcomes = Vec::new();
    outcomes.extend(oracle_equivalence(&small));
    outcomes.push(recurrence_forms());
    outcomes.extend(micro_examples());
    outcomes.extend(degenerate(&unconstrained));
    outcomes.push(automaton_suite());
    outcomes.extend(scaling());
    outcomes.sort_by_key(|o| o.name);

    for o in &outcomes {
        println!("[{}] {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.name).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
