//! Acceptance suite. Each test exercises one criterion end to end at its
//! stated tolerance and prints a single pass line; a failed assertion fails
//! the criterion.

mod common;

use std::time::Instant;

use common::*;
use tilemealy::format::print_automaton;
use tilemealy::reduction::{
    add_sink, build_reduction, finiteness_bound, semidecide, verify_claim, verify_lemma1,
    ClaimMode, Lemma1Params, SemidecideBudgets, SemidecideOutcome, BOTTOM_NAME,
    CLAIM_EXHAUSTIVE_CAP, SINK_NAME,
};
use tilemealy::report::{
    to_json, EnumerateReport, LeastNReport, NwCheckReport, OrderReport, RectGrid,
    SemidecideReport, TileReport, TorusGrid, TorusReport,
};
use tilemealy::semigroup::{
    canonicalize, enumerate, equal, equal_bruteforce, order_search, Budget, FinitenessVerdict,
    OrderOutcome, OrderStop,
};
use tilemealy::wang::{
    find_torus_tiling, is_nw_deterministic, least_untileable_n, tile_rectangle,
    validate_rect_tiling, LeastNOutcome, SolveOutcome, TileSet,
};

use num_bigint::BigUint;
use rand::Rng;

#[test]
fn criterion_1_algebraic_laws() {
    let started = Instant::now();
    let mut rng = seeded(0xC1);
    let machines = 60;
    let mut checks = 0usize;
    for _ in 0..machines {
        let m = random_machine(&mut rng, 4, 4);
        for _ in 0..5 {
            let u = random_word(&mut rng, m.states(), 3);
            let v = random_word(&mut rng, m.states(), 3);
            let w = random_word(&mut rng, m.alphabet(), 6);
            let w2 = random_word(&mut rng, m.alphabet(), 6);

            // Extension law on inputs: acting on a concatenation acts on the
            // first part, then on the rest from the evolved state word.
            let lhs = m.act(&u, &w.concat(&w2)).unwrap();
            let rhs = m
                .act(&u, &w)
                .unwrap()
                .concat(&m.act(&m.dstate(&u, &w).unwrap(), &w2).unwrap());
            assert_eq!(lhs, rhs, "input extension law failed");

            // Extension law on state words.
            let lhs = m.dstate(&u.concat(&v), &w).unwrap();
            let rhs = m
                .dstate(&u, &w)
                .unwrap()
                .concat(&m.dstate(&v, &m.act(&u, &w).unwrap()).unwrap());
            assert_eq!(lhs, rhs, "state extension law failed");

            // Composition of actions: the left factor acts first.
            let lhs = m.act(&u.concat(&v), &w).unwrap();
            let rhs = m.act(&v, &m.act(&u, &w).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "action composition law failed");

            // Composition of state evolutions.
            let lhs = m.dstate(&u, &w.concat(&w2)).unwrap();
            let rhs = m.dstate(&m.dstate(&u, &w).unwrap(), &w2).unwrap();
            assert_eq!(lhs, rhs, "state composition law failed");

            // Length and prefix preservation.
            assert_eq!(m.act(&u, &w).unwrap().len(), w.len());
            let k = rng.gen_range(0..=w.len());
            assert_eq!(
                m.act(&u, &w.prefix(k)).unwrap(),
                m.act(&u, &w).unwrap().prefix(k),
                "prefix preservation failed"
            );

            checks += 6;
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "criterion 1 took {elapsed:?}, budget is 10 s"
    );
    println!(
        "ACCEPTANCE C1 algebraic laws: PASS ({machines} machines, {checks} checks, {} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_2_equality_oracle_agreement() {
    let started = Instant::now();
    let mut rng = seeded(0xC2);
    let budget = Budget::default();
    let mut used = 0usize;
    let mut attempts = 0usize;
    let mut equal_cases = 0usize;
    let mut unequal_cases = 0usize;
    while used < 200 {
        attempts += 1;
        assert!(attempts < 50_000, "sampling stalled");
        let m = random_machine(&mut rng, 3, 3);
        let lu = rng.gen_range(1..=3);
        let lv = rng.gen_range(1..=3);
        let u = random_word_exact(&mut rng, m.states(), lu);
        let v = if rng.gen_bool(0.3) {
            u.clone()
        } else {
            random_word_exact(&mut rng, m.states(), lv)
        };
        let cu = canonicalize(&m, &u, &budget).unwrap();
        let cv = canonicalize(&m, &v, &budget).unwrap();
        let depth = cu.state_count() + cv.state_count();

        // The brute-force oracle enumerates every word up to the
        // state-count-sum depth; skip draws whose full enumeration would be
        // unaffordable (the bound is exact, so affordability is known up
        // front).
        let k = m.alphabet().len() as u64;
        let mut words: u64 = 0;
        let mut pw: u64 = 1;
        for len in 1..=depth {
            pw = pw.saturating_mul(k);
            words = words.saturating_add(pw.saturating_mul(len as u64));
        }
        if words.saturating_mul((u.len() + v.len()) as u64) > 400_000 {
            continue;
        }

        let by_digest = cu.digest() == cv.digest();
        let by_bisimulation = equal(&m, &u, &v, &budget).unwrap();
        let by_bruteforce = equal_bruteforce(&m, &u, &v, depth).unwrap();
        assert_eq!(
            by_digest, by_bisimulation,
            "digest and bisimulation disagree on {u:?} vs {v:?}"
        );
        assert_eq!(
            by_bisimulation, by_bruteforce,
            "bisimulation and brute force disagree on {u:?} vs {v:?} at depth {depth}"
        );
        if by_digest {
            equal_cases += 1;
        } else {
            unequal_cases += 1;
        }
        used += 1;
    }
    assert!(equal_cases > 0 && unequal_cases > 0, "coverage degenerated");
    println!(
        "ACCEPTANCE C2 equality oracle agreement: PASS ({used} triples, {equal_cases} equal / {unequal_cases} unequal, {} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_3_vert_finite_direction() {
    let started = Instant::now();
    let ts = t_vert();

    let (outcome, _) = least_untileable_n(&ts, 4, 1_000_000);
    assert_eq!(outcome, LeastNOutcome::Found { n: 1 });

    let bound = finiteness_bound(&ts, 1).unwrap();
    assert_eq!(bound, BigUint::from(7u32));

    let r = build_reduction(&ts).unwrap();
    let verdict = enumerate(r.machine(), &Budget::default());
    let size = match verdict {
        FinitenessVerdict::Finite { size, .. } => size,
        other => panic!("expected finite verdict, got {other:?}"),
    };
    assert_eq!(size, 1);
    assert!(BigUint::from(size) <= bound);

    let claim = verify_claim(&r, 1, ClaimMode::Exhaustive, 3, 100_000, CLAIM_EXHAUSTIVE_CAP)
        .unwrap();
    assert!(claim.pass, "{:?}", claim.counterexample);

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "criterion 3 took {elapsed:?}, budget is 1 s"
    );
    println!(
        "ACCEPTANCE C3 finite direction end-to-end: PASS (n=1, bound=7, size=1, claim {} evals, {} ms)",
        claim.evaluations,
        elapsed.as_millis()
    );
}

#[test]
fn criterion_4_mono_infinite_direction() {
    let started = Instant::now();
    let ts = t_mono();

    let (outcome, _) = find_torus_tiling(&ts, 4, 4, 1_000_000);
    let torus = match outcome {
        SolveOutcome::Found(t) => t,
        other => panic!("expected torus, got {other:?}"),
    };
    assert_eq!((torus.px, torus.py), (1, 1));

    let r = build_reduction(&ts).unwrap();
    let report = verify_lemma1(
        &r,
        &torus,
        &Lemma1Params {
            m_max: 8,
            n_max: 8,
            prefix_len: 32,
        },
    )
    .unwrap();
    assert!(report.pass, "{:?}", report.counterexample);
    assert_eq!(report.pairs_checked, 81);
    // Nine digests — the eight nonempty powers of the bottom state plus the
    // generator baseline standing in for the excluded empty power — all
    // pairwise distinct.
    assert_eq!(report.digests.len(), 9);
    let distinct: std::collections::HashSet<_> = report.digests.iter().collect();
    assert_eq!(distinct.len(), 9);

    let budget = Budget {
        max_elements: 500,
        ..Budget::default()
    };
    match enumerate(r.machine(), &budget) {
        FinitenessVerdict::BudgetExceeded { elements_found, .. } => {
            assert!(elements_found >= 500)
        }
        other => panic!("expected budget exceeded, got {other:?}"),
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "criterion 4 took {elapsed:?}, budget is 10 s"
    );
    println!(
        "ACCEPTANCE C4 infinite direction end-to-end: PASS (1x1 torus, 9 distinct digests, ≥500 elements, {} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_5_stripes() {
    let started = Instant::now();
    let ts = t_stripes();

    assert!(is_nw_deterministic(&ts).is_ok());

    let (outcome, _) = find_torus_tiling(&ts, 4, 4, 1_000_000);
    let torus = match outcome {
        SolveOutcome::Found(t) => t,
        other => panic!("expected torus, got {other:?}"),
    };
    assert_eq!((torus.px, torus.py), (1, 2));

    let r = build_reduction(&ts).unwrap();
    let report = verify_lemma1(
        &r,
        &torus,
        &Lemma1Params {
            m_max: 6,
            n_max: 6,
            prefix_len: 24,
        },
    )
    .unwrap();
    assert!(report.pass, "{:?}", report.counterexample);

    let (outcome, _) = semidecide(&ts, &SemidecideBudgets::default()).unwrap();
    match outcome {
        SemidecideOutcome::InfiniteCertified { torus, lemma1 } => {
            assert_eq!((torus.px, torus.py), (1, 2));
            assert!(lemma1.pass);
        }
        other => panic!("expected infinite certificate, got {other:?}"),
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "criterion 5 took {elapsed:?}, budget is 10 s"
    );
    println!(
        "ACCEPTANCE C5 stripes end-to-end: PASS (1x2 torus, lemma1 pass, infinite certified, {} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_6_power_reaches_sink_pair() {
    let budget = Budget::default();

    let vert = add_sink(&build_reduction(&t_vert()).unwrap());
    let f = vert.state_word(&[BOTTOM_NAME]).unwrap();
    let g = vert.state_word(&[SINK_NAME]).unwrap();
    assert_eq!(
        order_search(&vert, &f, &g, 50, &budget).unwrap(),
        OrderOutcome::Found(1)
    );

    let mono = add_sink(&build_reduction(&t_mono()).unwrap());
    let f = mono.state_word(&[BOTTOM_NAME]).unwrap();
    let g = mono.state_word(&[SINK_NAME]).unwrap();
    assert_eq!(
        order_search(&mono, &f, &g, 50, &budget).unwrap(),
        OrderOutcome::NotFound(OrderStop::MaxReached)
    );

    println!("ACCEPTANCE C6 power-reaches-sink on both fixtures: PASS (n=1 and none ≤ 50)");
}

#[test]
fn criterion_7_solver_exhaustiveness() {
    let started = Instant::now();
    // Every tile over two colors, every 1- and 2-subset: 16 + 120 sets.
    let colors = ["0", "1"];
    let mut all_tiles: Vec<(String, String, String, String)> = Vec::new();
    for n in 0..2 {
        for s in 0..2 {
            for e in 0..2 {
                for w in 0..2 {
                    all_tiles.push((
                        colors[n].into(),
                        colors[s].into(),
                        colors[e].into(),
                        colors[w].into(),
                    ));
                }
            }
        }
    }
    let mut sets: Vec<TileSet> = Vec::new();
    for (i, (n, s, e, w)) in all_tiles.iter().enumerate() {
        sets.push(TileSet::new(&colors, &[("p", n, s, e, w)]).unwrap());
        for (n2, s2, e2, w2) in all_tiles.iter().skip(i + 1) {
            sets.push(
                TileSet::new(&colors, &[("p", n, s, e, w), ("q", n2, s2, e2, w2)]).unwrap(),
            );
        }
    }
    assert_eq!(sets.len(), 16 + 120);

    let shapes = rect_shapes(9);
    let mut comparisons = 0usize;
    for ts in &sets {
        for &(w, h) in &shapes {
            let (outcome, _) = tile_rectangle(ts, w, h, u64::MAX);
            let oracle = brute_force_rectangle(ts, w, h);
            match (&outcome, &oracle) {
                (SolveOutcome::Found(t), Some(_)) => {
                    assert!(validate_rect_tiling(ts, t).is_ok());
                }
                (SolveOutcome::Exhausted, None) => {}
                (got, want) => panic!(
                    "solver and oracle disagree on {w}x{h}: solver {got:?}, oracle found={}",
                    want.is_some()
                ),
            }
            comparisons += 1;
        }
    }
    println!(
        "ACCEPTANCE C7 solver exhaustiveness: PASS ({} sets x {} shapes = {comparisons} comparisons, {} ms)",
        sets.len(),
        shapes.len(),
        started.elapsed().as_millis()
    );
}

/// Every JSON report the fixture suite can produce, as one deterministic
/// string. Run twice by criterion 8.
fn full_fixture_suite_json() -> String {
    let mut out = String::new();
    for ts in [t_mono(), t_vert(), t_stripes()] {
        let nw = match is_nw_deterministic(&ts) {
            Ok(()) => NwCheckReport {
                nw_deterministic: true,
                conflict: None,
            },
            Err(c) => NwCheckReport {
                nw_deterministic: false,
                conflict: Some((
                    ts.tile_name(c.first).to_owned(),
                    ts.tile_name(c.second).to_owned(),
                )),
            },
        };
        out.push_str(&to_json(&nw));

        let (outcome, stats) = tile_rectangle(&ts, 4, 4, 1_000_000);
        let report = match &outcome {
            SolveOutcome::Found(t) => TileReport {
                command: "tile",
                outcome: "found",
                nodes: stats.nodes,
                grid: Some(RectGrid::from_tiling(&ts, t)),
            },
            SolveOutcome::Exhausted => TileReport {
                command: "tile",
                outcome: "none",
                nodes: stats.nodes,
                grid: None,
            },
            SolveOutcome::BudgetExceeded => TileReport {
                command: "tile",
                outcome: "budget_exceeded",
                nodes: stats.nodes,
                grid: None,
            },
        };
        out.push_str(&to_json(&report));

        let (outcome, stats) = find_torus_tiling(&ts, 4, 4, 1_000_000);
        let torus = match &outcome {
            SolveOutcome::Found(t) => {
                out.push_str(&to_json(&TorusReport {
                    command: "torus",
                    outcome: "found",
                    nodes: stats.nodes,
                    grid: Some(TorusGrid::from_tiling(&ts, t)),
                }));
                Some(t.clone())
            }
            _ => {
                out.push_str(&to_json(&TorusReport {
                    command: "torus",
                    outcome: "none_up_to_max",
                    nodes: stats.nodes,
                    grid: None,
                }));
                None
            }
        };

        let (outcome, stats) = least_untileable_n(&ts, 3, 1_000_000);
        let (label, n) = match outcome {
            LeastNOutcome::Found { n } => ("found", Some(n)),
            LeastNOutcome::NoneUpToMax => ("none_up_to_max", None),
            LeastNOutcome::BudgetExceeded { at_n } => ("budget_exceeded", Some(at_n)),
        };
        out.push_str(&to_json(&LeastNReport {
            command: "least-n",
            outcome: label,
            n,
            max_n: 3,
            nodes: stats.nodes,
        }));

        let r = build_reduction(&ts).unwrap();
        out.push_str(&print_automaton(r.machine()));
        out.push_str(&print_automaton(&add_sink(&r)));

        let budget = Budget {
            max_elements: 300,
            ..Budget::default()
        };
        let verdict = enumerate(r.machine(), &budget);
        out.push_str(&to_json(&EnumerateReport::new(&verdict, &budget)));

        if let Some(t) = &torus {
            let report =
                verify_lemma1(&r, t, &Lemma1Params::with_default_prefix(4, 4)).unwrap();
            out.push_str(&to_json(&report));
        }
        if let LeastNOutcome::Found { n } = least_untileable_n(&ts, 3, 1_000_000).0 {
            let report =
                verify_claim(&r, n, ClaimMode::Exhaustive, 2, 100_000, CLAIM_EXHAUSTIVE_CAP)
                    .unwrap();
            out.push_str(&to_json(&report));
            let sampled = verify_claim(
                &r,
                n,
                ClaimMode::Sample {
                    count: 64,
                    seed: 42,
                },
                4,
                100_000,
                CLAIM_EXHAUSTIVE_CAP,
            )
            .unwrap();
            out.push_str(&to_json(&sampled));
        }

        let (outcome, spent) = semidecide(&ts, &SemidecideBudgets::default()).unwrap();
        out.push_str(&to_json(&SemidecideReport::new(&ts, &outcome, spent)));

        let sink = add_sink(&r);
        let f = sink.state_word(&[BOTTOM_NAME]).unwrap();
        let g = sink.state_word(&[SINK_NAME]).unwrap();
        let report = match order_search(&sink, &f, &g, 20, &Budget::default()).unwrap() {
            OrderOutcome::Found(n) => OrderReport {
                command: "order",
                found: true,
                n: Some(n),
                stop: None,
                max_n: 20,
            },
            OrderOutcome::NotFound(stop) => OrderReport {
                command: "order",
                found: false,
                n: None,
                stop: Some(match stop {
                    OrderStop::EnteredCycle { .. } => "entered_cycle",
                    OrderStop::MaxReached => "max_reached",
                }),
                max_n: 20,
            },
        };
        out.push_str(&to_json(&report));
    }
    out
}

#[test]
fn criterion_8_determinism() {
    let first = full_fixture_suite_json();
    let second = full_fixture_suite_json();
    assert!(!first.is_empty());
    assert_eq!(first, second, "fixture suite reports are not byte-identical");
    println!(
        "ACCEPTANCE C8 determinism: PASS ({} bytes of reports, byte-identical across runs)",
        first.len()
    );
}
