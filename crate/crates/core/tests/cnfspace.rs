mod common;

use std::collections::HashMap;

use common::{random_clause, rng};
use proptest::prelude::*;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use vwspace::cnfspace::{
    degree_stats, gen_random_cnf, min_space_search, parse_res_trace, res_trace_to_text, tr_encode,
    verify_pcr_trace, verify_res_trace, Clause, Cnf, Field, Literal, Polynomial, ResTrace, Rule, Step,
};
use vwspace::rational::{rat, Rational};

fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

fn implied(phi: &Cnf, c: &Clause) -> bool {
    assignments(phi.variable_count).all(|a| !phi.clauses.iter().all(|d| d.satisfied_by(&a)) || c.satisfied_by(&a))
}

fn arb_cnf(max_n: usize, max_m: usize) -> impl Strategy<Value = Cnf> {
    (1..=max_n).prop_flat_map(move |n| {
        let lit = (0..n, any::<bool>()).prop_map(|(v, p)| if p { Literal::pos(v) } else { Literal::neg(v) });
        let clause = prop::collection::vec(lit, 1..=3).prop_map(Clause::new);
        prop::collection::vec(clause, 1..=max_m).prop_map(move |cs| Cnf::new(n, cs).unwrap())
    })
}

#[test]
fn clause_distribution_is_uniform() {
    let n = 10;
    let mut counts: HashMap<Clause, u64> = HashMap::new();
    let mut total = 0u64;
    for seed in 0..100 {
        let phi = gen_random_cnf(n, &rat(1000, 1), seed).unwrap();
        for c in phi.clauses {
            assert_eq!(c.variables().len(), 3);
            *counts.entry(c).or_default() += 1;
            total += 1;
        }
    }
    assert_eq!(total, 1_000_000);
    let cells = 120 * 8;
    assert_eq!(counts.len(), cells);
    let expected = total as f64 / cells as f64;
    let chi2: f64 = counts.values().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let p = 1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(chi2);
    assert!(p > 1e-4, "chi2 {chi2}, p {p}");
}

#[test]
fn generation_is_seed_deterministic() {
    let a = gen_random_cnf(30, &rat(9, 2), 5).unwrap();
    assert_eq!(a, gen_random_cnf(30, &rat(9, 2), 5).unwrap());
    assert_ne!(a, gen_random_cnf(30, &rat(9, 2), 6).unwrap());
    assert_eq!(a.clauses.len(), 135);
}

#[test]
fn degree_table_counts_at_least() {
    let phi = gen_random_cnf(40, &rat(5, 1), 2).unwrap();
    let st = degree_stats(&phi);
    for d in 0..=st.max_degree() + 1 {
        assert_eq!(st.s(d), st.degrees.iter().filter(|&&x| x >= d).count());
    }
    assert_eq!(st.degrees.iter().sum::<usize>(), 3 * phi.clauses.len());
}

#[test]
fn space_measures_of_a_refutation() {
    let phi = Cnf::parse_dimacs("p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n").unwrap();
    let text = "A x1 x2\nA x1 ~x2\nI res 1 2 : x1\nE 1 2\nA ~x1 x2\nA ~x1 ~x2\nI res 5 6 : ~x1\nE 5 6\nI res 3 7 :\n";
    let trace = parse_res_trace(text).unwrap();
    let rep = verify_res_trace(&phi, &trace);
    assert!(rep.accepted(), "{rep:?}");
    assert_eq!(rep.max_clause_count, 4);
    assert_eq!(rep.max_total_space, 6);
    assert_eq!(rep.max_width, 2);
    assert_eq!(parse_res_trace(&res_trace_to_text(&trace)).unwrap(), trace);
}

#[test]
fn wrong_resolvent_is_rejected() {
    let phi = Cnf::parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n").unwrap();
    let trace = parse_res_trace("A x1 x2\nA ~x1 x2\nI res 1 2 : x1\n").unwrap();
    let rep = verify_res_trace(&phi, &trace);
    assert_eq!(rep.error.as_ref().map(|e| e.0), Some(3));
    let trace = parse_res_trace("A x1\n").unwrap();
    assert_eq!(verify_res_trace(&phi, &trace).error.map(|e| e.0), Some(1));
}

#[test]
fn erasing_a_missing_step_is_rejected() {
    let phi = Cnf::parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").unwrap();
    let trace = parse_res_trace("A x1\nE 1\nE 1\n").unwrap();
    assert_eq!(verify_res_trace(&phi, &trace).error.map(|e| e.0), Some(3));
}

#[test]
fn pcr_over_rationals_and_gf2() {
    type F2 = vwspace::cnfspace::Fp<2>;
    let phi = Cnf::parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").unwrap();
    let trace_text = "A ~x1\nA x1\nA x1 + ~x1 - 1\nI lin 3 1 1 -1 : x1 - 1\nI lin 4 2 1 -1 : -1\n";
    let axioms: Vec<Polynomial<F2>> = tr_encode(&phi).into_iter().map(|a| a.poly).collect();
    let trace = vwspace::cnfspace::parse_pcr_trace::<F2>(trace_text).unwrap();
    let rep = verify_pcr_trace(&axioms, &trace);
    assert!(rep.accepted(), "{rep:?}");
    let axioms_q: Vec<Polynomial<Rational>> = tr_encode(&phi).into_iter().map(|a| a.poly).collect();
    let trace_q = vwspace::cnfspace::parse_pcr_trace::<Rational>(trace_text).unwrap();
    assert!(!verify_pcr_trace(&axioms_q, &trace_q).accepted());
}

/// Most non-empty clauses held at once.
fn peak_nonempty(trace: &ResTrace) -> usize {
    let mut held: HashMap<usize, bool> = HashMap::new();
    let mut peak = 0;
    for (i, step) in trace.iter().enumerate() {
        match step {
            Step::Download(c) | Step::Infer(_, c) => {
                held.insert(i + 1, !c.is_empty());
            }
            Step::Erase(ids) => ids.iter().for_each(|j| {
                held.remove(j);
            }),
        }
        peak = peak.max(held.values().filter(|&&b| b).count());
    }
    peak
}

#[test]
fn min_space_finds_known_refutation() {
    let phi = Cnf::parse_dimacs("p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n").unwrap();
    let t = min_space_search(&phi, 4, 2).unwrap().expect("refutable in four clauses");
    let rep = verify_res_trace(&phi, &t);
    assert!(rep.accepted());
    assert!(peak_nonempty(&t) <= 4, "{}", res_trace_to_text(&t));
    assert!(min_space_search(&phi, 2, 2).unwrap().is_none());
    assert!(min_space_search(&phi, 4, 1).unwrap().is_none());
}

fn random_trace(phi: &Cnf, seed: u64) -> ResTrace {
    let mut r = rng(seed);
    let mut trace: ResTrace = Vec::new();
    let mut held: Vec<(usize, Clause)> = Vec::new();
    for _ in 0..30 {
        let id = trace.len() + 1;
        if held.len() < 2 || r.random_bool(0.3) {
            let c = phi.clauses[r.random_range(0..phi.clauses.len())].clone();
            trace.push(Step::Download(c.clone()));
            held.push((id, c));
            continue;
        }
        let (i, p) = held[r.random_range(0..held.len())].clone();
        let (j, q) = held[r.random_range(0..held.len())].clone();
        let pivot = p.variables().into_iter().find_map(|v| p.resolve(&q, v).map(|c| (v, c)));
        if let Some((_, c)) = pivot {
            if !c.is_tautology() {
                trace.push(Step::Infer(Rule::Resolution { left: i, right: j }, c.clone()));
                held.push((id, c));
            }
        }
    }
    trace
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn encoding_vanishes_exactly_on_models(phi in arb_cnf(4, 8)) {
        let axioms = tr_encode::<Rational>(&phi);
        for a in assignments(phi.variable_count) {
            let all_zero = axioms.iter().all(|ax| ax.poly.evaluate(&a).is_zero());
            prop_assert_eq!(all_zero, phi.clauses.iter().all(|c| c.satisfied_by(&a)));
        }
    }

    #[test]
    fn accepted_resolution_steps_are_sound(phi in arb_cnf(4, 8), seed in any::<u64>()) {
        let trace = random_trace(&phi, seed);
        let rep = verify_res_trace(&phi, &trace);
        prop_assert!(rep.error.is_none(), "{:?}", rep.error);
        for step in &trace {
            if let Step::Infer(_, c) = step {
                prop_assert!(implied(&phi, c));
            }
        }
        if rep.refuted {
            prop_assert!(!phi.is_satisfiable());
        }
    }

    #[test]
    fn min_space_refutes_exactly_unsat(phi in arb_cnf(3, 8)) {
        let found = min_space_search(&phi, 4, 3).unwrap();
        if let Some(t) = &found {
            let rep = verify_res_trace(&phi, t);
            prop_assert!(rep.accepted(), "{rep:?}");
            prop_assert!(rep.max_width <= 3);
            prop_assert!(peak_nonempty(t) <= 4);
        }
        if phi.is_satisfiable() {
            prop_assert!(found.is_none());
        } else {
            prop_assert!(found.is_some());
        }
    }

    #[test]
    fn dimacs_round_trip(seed in any::<u64>(), n in 3usize..12, m in 0usize..20) {
        let mut r = rng(seed);
        let phi = Cnf::new(n, (0..m).map(|_| random_clause(&mut r, n)).collect()).unwrap();
        prop_assert_eq!(Cnf::parse_dimacs(&phi.to_dimacs()).unwrap(), phi);
    }
}
