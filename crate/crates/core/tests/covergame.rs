mod common;

use std::collections::BTreeSet;

use common::{naive_coverable, random_cover_instance, rng};
use proptest::prelude::*;
use vwspace::covergame::{
    check_budget, exhaustive_game, has_matching_property, init_cover, mu_formula, parse_user_move, play,
    verify_transcript, GameState, GreedyDegreeAdversary, Move, RandomAdversary, Transcript,
};
use vwspace::error::Error;
use vwspace::graph::{validate_vw_matching, BipartiteGraph, Vertex};
use vwspace::rational::rat;
use vwspace::Caps;

fn subsets_of(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .map(|m| (0..items.len()).filter(|i| m >> i & 1 == 1).map(|i| items[i]).collect::<Vec<_>>())
        .filter(|s| s.len() <= max)
        .collect()
}

#[test]
fn random_games_replay() {
    let mut r = rng(21);
    for seed in 0..40 {
        let (g, st) = random_cover_instance(&mut r, 14);
        let mut game = GameState::new(st.clone(), Some(3));
        let t = play(&mut game, &mut RandomAdversary::new(seed), 40).unwrap();
        assert!(verify_transcript(&g, &t, 3).accepted());
        assert_eq!(Transcript::parse_text(&t.to_text()).unwrap(), t);
        for (_, f) in &t.moves {
            assert!(validate_vw_matching(&g, f).is_ok());
            assert!(st.is_member(f).unwrap());
        }
        assert_eq!(check_budget(&t, &st.epsilon, st.s), None);
    }
}

#[test]
fn greedy_games_replay() {
    let mut r = rng(22);
    for _ in 0..20 {
        let (g, st) = random_cover_instance(&mut r, 14);
        let mut game = GameState::new(st, Some(2));
        let t = play(&mut game, &mut GreedyDegreeAdversary, 25).unwrap();
        assert!(verify_transcript(&g, &t, 2).accepted());
    }
}

#[test]
fn exhaustive_small_games() {
    let mut r = rng(23);
    for _ in 0..8 {
        let (_, st) = random_cover_instance(&mut r, 10);
        let rep = exhaustive_game(&st, 2).unwrap();
        assert!(rep.max_pi_ratio_ok && rep.budget_ok);
        assert!(rep.states >= 1);
    }
}

#[test]
fn removal_drops_exactly_one_component() {
    let mut r = rng(24);
    let (g, st) = random_cover_instance(&mut r, 12);
    let mut game = GameState::new(st, Some(3));
    game.respond(Vertex::Left(0)).unwrap();
    game.respond(Vertex::Right(g.right_count() - 1)).unwrap();
    let before = game.f.clone();
    game.remove_component(0).unwrap();
    assert_eq!(game.f.len(), before.len() - 1);
    assert!(before.components[1..].iter().all(|c| game.f.components.contains(c)));
    assert!(matches!(game.remove_component(9), Err(Error::GameRule(_))));
    assert!(verify_transcript(&g, &game.transcript(), 3).accepted());
}

#[test]
fn zero_mu_forbids_challenges() {
    let mut r = rng(25);
    let (_, st) = random_cover_instance(&mut r, 10);
    let mut game = GameState::new(st, Some(0));
    assert!(matches!(game.respond(Vertex::Left(0)), Err(Error::GameRule(_))));
    assert_eq!(mu_formula(&rat(1, 24), 1000, 0), 0);
    assert_eq!(mu_formula(&rat(1, 24), 144 * 24 * 3, 1), 3);
}

#[test]
fn tampered_transcripts_fail() {
    let mut r = rng(26);
    let (g, st) = random_cover_instance(&mut r, 12);
    let mut game = GameState::new(st, Some(2));
    game.respond(Vertex::Left(0)).unwrap();
    let t = game.transcript();
    assert!(!verify_transcript(&g, &t, 0).accepted());
    let mut dropped = t.clone();
    dropped.moves[0].1.components.clear();
    let rep = verify_transcript(&g, &dropped, 2);
    assert_eq!(rep.error.map(|e| e.0), Some(1));
}

#[test]
fn user_moves_parse() {
    assert_eq!(parse_user_move("L 3").unwrap(), Move::Challenge(Vertex::Left(3)));
    assert_eq!(parse_user_move("R 5").unwrap(), Move::Challenge(Vertex::Right(5)));
    assert_eq!(parse_user_move("remove 2").unwrap(), Move::Remove(2));
    assert!(parse_user_move("jump").is_err());
}

#[test]
fn init_rejects_degree_two_left() {
    let g = BipartiteGraph::from_neighborhoods(4, vec![vec![0, 1]]).unwrap();
    let e = init_cover(&g, &rat(1, 24), 1, 5000, &Caps::default()).unwrap_err();
    assert!(matches!(e, Error::Hypotheses(_)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn matching_property_matches_naive(
        nbs in prop::collection::vec(prop::collection::btree_set(0usize..7, 3), 1..=5),
        amask in 0u32..32,
        bmask in 0u32..128,
        s in 1usize..5,
    ) {
        let g = BipartiteGraph::from_neighborhoods(7, nbs.into_iter().map(|x| x.into_iter().collect()).collect()).unwrap();
        let a: BTreeSet<usize> = (0..g.left_count()).filter(|i| amask >> i & 1 == 1).collect();
        let b: BTreeSet<usize> = (0..7).filter(|i| bmask >> i & 1 == 1).collect();
        let free: Vec<usize> = (0..g.left_count()).filter(|l| !a.contains(l)).collect();
        let al: Vec<usize> = a.iter().copied().collect();
        let bl: Vec<usize> = b.iter().copied().collect();
        let want = subsets_of(&free, s).iter().all(|c| naive_coverable(&g, c, &al, &bl));
        let got = has_matching_property(&g, &a, &b, s, &rat(1, 24), false, &Caps::default()).unwrap();
        prop_assert_eq!(got.holds, want);
        if let Some(w) = got.witness {
            prop_assert!(!naive_coverable(&g, &w, &al, &bl));
        }
    }

    #[test]
    fn responses_cover_the_challenge(seed in any::<u64>(), v in 0usize..40) {
        let mut r = rng(seed);
        let (g, st) = random_cover_instance(&mut r, 12);
        let n = g.left_count() + g.right_count();
        let vertex = if v % n < g.left_count() { Vertex::Left(v % n) } else { Vertex::Right(v % n - g.left_count()) };
        let mut game = GameState::new(st, Some(1));
        let f = game.respond(vertex).unwrap().clone();
        prop_assert!(f.covers(vertex));
        prop_assert!(f.len() <= 1);
    }
}
