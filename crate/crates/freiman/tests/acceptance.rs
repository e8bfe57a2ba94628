//! End-to-end checks, one per shipped guarantee, each printing a
//! `[PASS]` line with its runtime (visible with `--nocapture`).

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use freiman::{
    check_peo, is_chordal, sorted_graph, sweep_borel, sweep_veronese, GeneratorSet, Graph,
    Monomial, PeoCheck, SweepReport,
};

/// The two full-range sweeps, computed once and shared across criteria.
fn sweeps() -> &'static (SweepReport, SweepReport) {
    static SWEEPS: OnceLock<(SweepReport, SweepReport)> = OnceLock::new();
    SWEEPS.get_or_init(|| {
        let borel = sweep_borel(3..=5, 2..=5).expect("borel sweep runs");
        let veronese = sweep_veronese(1..=3, 2..=5, None).expect("veronese sweep runs");
        (borel, veronese)
    })
}

fn params_map(params: &str) -> std::collections::HashMap<&str, &str> {
    params
        .split(';')
        .map(|part| part.split_once('=').expect("key=value"))
        .collect()
}

/// Rebuild the generator set a sweep row was computed from, exercising the
/// documented parameter syntax along the way.
fn set_for_params(params: &str) -> GeneratorSet {
    let fields = params_map(params);
    if let Some(u) = fields.get("u") {
        let n: usize = fields["n"].parse().unwrap();
        let root = Monomial::parse(u, n).unwrap();
        GeneratorSet::borel_closure(std::slice::from_ref(&root)).unwrap()
    } else {
        GeneratorSet::veronese_constant(
            fields["k"].parse().unwrap(),
            fields["n"].parse().unwrap(),
            fields["d"].parse().unwrap(),
        )
        .unwrap()
    }
}

/// The counting route on its own: does `mu(I^2)` meet the lower bound?
fn counted_freiman(set: &GeneratorSet) -> bool {
    let l = set.analytic_spread() as u64;
    set.mu_square() == l * set.mu() as u64 - l * (l - 1) / 2
}

fn pass(n: u32, what: &str, start: Instant) {
    println!("[PASS] criterion {n}: {what} ({:?})", start.elapsed());
}

#[test]
fn criterion_1_borel_of_x3_squared_is_freiman_and_chordal() {
    let start = Instant::now();
    let root = Monomial::parse("x3^2", 3).unwrap();
    let set = GeneratorSet::borel_closure(std::slice::from_ref(&root)).unwrap();
    let names: Vec<String> = set.gens().iter().map(|g| g.to_string()).collect();
    assert_eq!(names, ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]);
    let graph = sorted_graph(&set);
    assert_eq!(
        graph.edges(),
        [(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 4), (4, 5)]
    );
    let report = set.freiman_report();
    assert_eq!(
        (report.mu, report.spread, report.mu_square, report.bound, report.gap),
        (6, 3, 15, 15, 0)
    );
    assert!(report.freiman && report.sortable);
    assert!(report.chordal.unwrap().chordal);
    assert!(start.elapsed() < Duration::from_secs(1));
    pass(1, "six generators, nine sorted edges, zero gap, chordal", start);
}

#[test]
fn criterion_2_veronese_2_3_3_has_gap_one_with_a_six_cycle() {
    let start = Instant::now();
    let set = GeneratorSet::veronese_constant(2, 3, 3).unwrap();
    assert_eq!(set.mu_square(), 19);
    assert_eq!(common::pairwise_product_count(&set), 19);
    let report = set.freiman_report();
    assert_eq!((report.mu_square, report.bound, report.gap), (19, 18, 1));
    assert!(!report.freiman && report.sortable);
    let graph = sorted_graph(&set);
    let cycle: Vec<usize> = ["x1*x2^2", "x1^2*x2", "x1^2*x3", "x1*x3^2", "x2*x3^2", "x2^2*x3"]
        .iter()
        .map(|l| set.index_of(&Monomial::parse(l, 3).unwrap()).unwrap())
        .collect();
    assert!(graph.is_induced_cycle(&cycle).unwrap());
    let verdict = report.chordal.unwrap();
    assert!(!verdict.chordal);
    let found = verdict.chordless_cycle.unwrap();
    assert!(found.len() >= 4);
    assert!(graph.is_induced_cycle(&found).unwrap());
    assert!(start.elapsed() < Duration::from_secs(1));
    pass(2, "count exceeds bound by one and both routes certify it", start);
}

#[test]
fn criterion_3_borel_sweep_agrees_everywhere() {
    let start = Instant::now();
    let (borel, _) = sweeps();
    assert_eq!(borel.rows.len(), 419);
    assert!(borel.skipped.is_empty());
    let disagreements = borel.disagreements();
    assert!(
        disagreements.is_empty(),
        "disagreeing points: {:?}",
        disagreements.iter().map(|r| &r.params).collect::<Vec<_>>()
    );
    assert!(start.elapsed() < Duration::from_secs(600));
    pass(3, "419 roots, degrees 2-5 in 3-5 variables, three-way agreement", start);
}

#[test]
fn criterion_4_veronese_sweep_agrees_everywhere() {
    let start = Instant::now();
    let (_, veronese) = sweeps();
    assert_eq!(veronese.rows.len(), 72);
    assert!(veronese.skipped.is_empty());
    let disagreements = veronese.disagreements();
    assert!(
        disagreements.is_empty(),
        "disagreeing points: {:?}",
        disagreements.iter().map(|r| &r.params).collect::<Vec<_>>()
    );
    assert!(start.elapsed() < Duration::from_secs(600));
    pass(4, "all 72 nonempty bounded families for k=1..3, n=2..5 agree", start);
}

#[test]
fn criterion_5_count_never_falls_below_the_bound() {
    let start = Instant::now();
    let (borel, veronese) = sweeps();
    for row in borel.rows.iter().chain(&veronese.rows) {
        assert!(row.mu_square >= row.bound, "at {}", row.params);
        assert_eq!(row.gap, row.mu_square - row.bound, "at {}", row.params);
    }
    pass(5, "mu(I^2) >= l*mu - C(l,2) on every swept point", start);
}

#[test]
fn criterion_6_all_swept_families_are_sortable() {
    let start = Instant::now();
    let (borel, veronese) = sweeps();
    for row in borel.rows.iter().chain(&veronese.rows) {
        assert!(row.sortable, "at {}", row.params);
        assert!(row.chordal.is_some(), "at {}", row.params);
    }
    pass(6, "every swept generator set closes under pair sorting", start);
}

fn check_against_oracle(graph: &Graph) {
    let verdict = is_chordal(graph);
    assert_eq!(
        verdict.chordal,
        common::brute_force_chordal(graph),
        "graph edges: {:?}",
        graph.edges()
    );
    match (&verdict.peo, &verdict.chordless_cycle) {
        (Some(order), None) => {
            assert!(matches!(check_peo(graph, order).unwrap(), PeoCheck::Valid));
        }
        (None, Some(cycle)) => {
            assert!(cycle.len() >= 4);
            assert!(graph.is_induced_cycle(cycle).unwrap());
        }
        other => panic!("exactly one certificate expected, got {other:?}"),
    }
}

#[test]
fn criterion_7_chordality_matches_brute_force_with_valid_certificates() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1_000_003);
    let mut checked = 0usize;
    for round in 0..1000 {
        let n = 1 + (round % 12);
        let p = [0.2, 0.35, 0.5, 0.7][round % 4];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        check_against_oracle(&Graph::anonymous(n, &edges).unwrap());
        checked += 1;
    }
    let (borel, veronese) = sweeps();
    for row in borel.rows.iter().chain(&veronese.rows) {
        if row.mu <= 12 {
            check_against_oracle(&sorted_graph(&set_for_params(&row.params)));
            checked += 1;
        }
    }
    assert!(checked > 1000);
    assert!(start.elapsed() < Duration::from_secs(60));
    pass(
        7,
        "1000 random graphs plus all small swept graphs match the subset oracle",
        start,
    );
}

#[test]
fn criterion_8_freiman_is_stable_under_x1_scaling_and_fresh_variables() {
    let start = Instant::now();
    let (borel, _) = sweeps();
    for row in &borel.rows {
        let fields = params_map(&row.params);
        let n: usize = fields["n"].parse().unwrap();
        let root = Monomial::parse(fields["u"], n).unwrap();
        let mut exps = root.exponents().to_vec();
        for _ in 0..3 {
            exps[0] += 1;
            let lifted = Monomial::from_exponents(exps.clone()).unwrap();
            let scaled = GeneratorSet::borel_closure(std::slice::from_ref(&lifted)).unwrap();
            assert_eq!(
                counted_freiman(&scaled),
                row.freiman_computed,
                "scaling {} broke the answer at {}",
                lifted,
                row.params
            );
        }
    }
    let mut sampled = 0usize;
    for row in borel.rows.iter().step_by(8) {
        if sampled == 50 {
            break;
        }
        let set = set_for_params(&row.params);
        let extended = set.extend_by_variable().unwrap();
        assert_eq!(
            sorted_graph(&set).edges(),
            sorted_graph(&extended).edges(),
            "extension changed the sorted graph at {}",
            row.params
        );
        assert_eq!(counted_freiman(&set), counted_freiman(&extended), "at {}", row.params);
        sampled += 1;
    }
    assert_eq!(sampled, 50);
    pass(
        8,
        "multiplying the root by x1 and appending a fresh variable preserve the answer",
        start,
    );
}
