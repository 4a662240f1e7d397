#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vwspace::cnfspace::{adjacency_graph, tr_encode, Clause, Cnf, Literal};
use vwspace::covergame::{init_cover, min_s, CoverStrategyState};
use vwspace::graph::BipartiteGraph;
use vwspace::hall::Hypergraph;
use vwspace::rational::rat;
use vwspace::strategy::{all_components, component_family, FlippableFamily, ProductFamily};
use vwspace::Caps;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Naive VW-coverability: every target picks two of its neighbours, and the
/// union of the chosen edges must be acyclic, keep right degrees <= 2 and
/// put at most two left vertices in each component.
pub fn naive_coverable(g: &BipartiteGraph, targets: &[usize], banned_l: &[usize], banned_r: &[usize]) -> bool {
    if targets.iter().any(|t| banned_l.contains(t)) {
        return false;
    }
    let options: Vec<Vec<(usize, usize)>> = targets
        .iter()
        .map(|&l| {
            let nb: Vec<usize> = g.left_neighbors(l).iter().copied().filter(|r| !banned_r.contains(r)).collect();
            let mut o = Vec::new();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    o.push((nb[i], nb[j]));
                }
            }
            o
        })
        .collect();
    let mut pick = vec![(0, 0); targets.len()];
    fn rec(i: usize, options: &[Vec<(usize, usize)>], pick: &mut Vec<(usize, usize)>, nr: usize) -> bool {
        if i == options.len() {
            return structure_ok(pick, nr);
        }
        for &p in &options[i] {
            pick[i] = p;
            if rec(i + 1, options, pick, nr) {
                return true;
            }
        }
        false
    }
    rec(0, &options, &mut pick, g.right_count())
}

fn structure_ok(pick: &[(usize, usize)], nr: usize) -> bool {
    // union-find over right vertices then left vertices
    let k = pick.len();
    let mut parent: Vec<usize> = (0..nr + k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut rdeg = vec![0usize; nr];
    for (i, &(a, b)) in pick.iter().enumerate() {
        for r in [a, b] {
            rdeg[r] += 1;
            if rdeg[r] > 2 {
                return false;
            }
            let (x, y) = (find(&mut parent, r), find(&mut parent, nr + i));
            if x == y {
                return false;
            }
            parent[x] = y;
        }
    }
    let mut lefts: HashMap<usize, usize> = HashMap::new();
    for i in 0..k {
        let root = find(&mut parent, nr + i);
        *lefts.entry(root).or_default() += 1;
    }
    lefts.values().all(|&c| c <= 2)
}

/// Every multiset of `left` neighbourhoods drawn from the non-empty subsets
/// of size <= `max_deg` of `right` vertices, in non-decreasing order.
pub fn graph_corpus(left: usize, right: usize, min_deg: usize, max_deg: usize) -> Vec<BipartiteGraph> {
    let subsets: Vec<Vec<usize>> = (1u32..1 << right)
        .map(|m| (0..right).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.len() >= min_deg && s.len() <= max_deg)
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, left: usize, right: usize, subsets: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<BipartiteGraph>) {
        if cur.len() == left {
            let nb = cur.iter().map(|&i| subsets[i].clone()).collect();
            out.push(BipartiteGraph::from_neighborhoods(right, nb).unwrap());
            return;
        }
        for i in start..subsets.len() {
            cur.push(i);
            rec(i, left, right, subsets, cur, out);
            cur.pop();
        }
    }
    rec(0, left, right, &subsets, &mut cur, &mut out);
    out
}

/// Random hypergraph with edges of size 2..3, possibly empty on failure.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, max_edges: usize) -> Option<Hypergraph> {
    let ne = rng.random_range(1..=max_edges);
    let nv = rng.random_range(3..=2 * ne + 2);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for _ in 0..ne {
        let k = rng.random_range(2..=3);
        let mut e = index::sample(rng, nv, k).into_vec();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(nv, edges).ok()
}

pub fn random_clause(rng: &mut ChaCha8Rng, n: usize) -> Clause {
    let vs = index::sample(rng, n, 3);
    Clause::new(
        vs.iter()
            .map(|v| if rng.random_bool(0.5) { Literal::pos(v) } else { Literal::neg(v) })
            .collect(),
    )
}

/// Cover state at eps = 1/24 with D = max right degree and the least s.
pub fn cover_state(g: &BipartiteGraph) -> Option<CoverStrategyState> {
    let eps = rat(1, 24);
    let d = g.max_right_degree().max(1);
    init_cover(g, &eps, d, min_s(g, &eps, d), &Caps::default()).ok()
}

/// Random left-degree-3 instance with at most `max_vertices` vertices that
/// meets the Cover hypotheses.
pub fn random_cover_instance(rng: &mut ChaCha8Rng, max_vertices: usize) -> (BipartiteGraph, CoverStrategyState) {
    loop {
        let r = rng.random_range(3..max_vertices);
        let l = rng.random_range(1..=(max_vertices - r).min(r / 2).max(1));
        if l + r > max_vertices {
            continue;
        }
        let nb = (0..l).map(|_| index::sample(rng, r, 3).into_vec()).collect();
        let g = BipartiteGraph::from_neighborhoods(r, nb).unwrap();
        if let Some(st) = cover_state(&g) {
            return (g, st);
        }
    }
}

/// Sparse 3-CNF on n variables with m clauses meeting the Cover hypotheses.
pub fn sparse_feasible_formula(rng: &mut ChaCha8Rng, n: usize, m: usize) -> (Cnf, CoverStrategyState) {
    loop {
        let clauses = (0..m).map(|_| random_clause(rng, n)).collect();
        let phi = Cnf::new(n, clauses).unwrap();
        if let Some(st) = cover_state(&adjacency_graph(&phi)) {
            return (phi, st);
        }
    }
}

/// Greatest fixpoint over component families: does some restriction-closed
/// family of products of at most two component families satisfy the
/// 2-winning conditions? A product satisfies an axiom exactly when one of
/// its factors does, so pairs decide the question.
pub fn component_two_winning_exists(phi: &Cnf) -> bool {
    let g = adjacency_graph(phi);
    let comps = all_components(&g);
    let fams: Vec<FlippableFamily> = comps.iter().map(|c| component_family(phi, &g, c).unwrap()).collect();
    let axioms = tr_encode(phi);
    let single = |i: usize, p: usize| ProductFamily::new(vec![fams[i].clone()]).unwrap().satisfies(&axioms[p].poly);
    let sat: Vec<Vec<usize>> = (0..axioms.len())
        .map(|p| (0..comps.len()).filter(|&i| single(i, p)).collect())
        .collect();
    let sat_by: Vec<BTreeSet<usize>> = (0..comps.len())
        .map(|i| (0..axioms.len()).filter(|p| sat[*p].binary_search(&i).is_ok()).collect())
        .collect();
    let disjoint = |a: usize, b: usize| {
        let (x, y) = (&comps[a], &comps[b]);
        x.right().iter().all(|r| !y.right().contains(r)) && x.left().iter().all(|l| !y.left().contains(l))
    };
    let mut alive = vec![true; comps.len()];
    loop {
        let mut changed = false;
        for k in 0..comps.len() {
            if !alive[k] {
                continue;
            }
            let ok = (0..axioms.len())
                .all(|p| sat_by[k].contains(&p) || sat[p].iter().any(|&j| alive[j] && disjoint(k, j)));
            if !ok {
                alive[k] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..axioms.len()).all(|p| sat[p].iter().any(|&j| alive[j]))
}
