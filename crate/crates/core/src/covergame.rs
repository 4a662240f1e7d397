use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{find_vw_cover, is_expander, validate_vw_matching, BipartiteGraph, Component, ExpansionResult, Vertex, VwMatching};
use crate::hall::combinations;
use crate::rational::{ceil_usize, floor_usize, format_rational, int, rat, Rational};
use crate::Caps;

/// Outcome of the matching-property oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub holds: bool,
    /// An uncoverable C ⊆ L \ A of minimum size.
    pub witness: Option<Vec<usize>>,
    /// Largest |C| that had to be examined.
    pub max_size: usize,
    pub subsets_checked: usize,
}

/// Decides whether (A, B) has the matching property: every C ⊆ L \ A with
/// |C| <= s is VW-coverable in G minus A and B. With `expander_verified`,
/// only |C| < 2|B|/eps is examined.
pub fn has_matching_property(
    g: &BipartiteGraph,
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
    s: usize,
    epsilon: &Rational,
    expander_verified: bool,
    caps: &Caps,
) -> Result<PropertyResult> {
    let free: Vec<usize> = (0..g.left_count()).filter(|l| !a.contains(l)).collect();
    let mut m = s.min(free.len());
    if expander_verified {
        let bound = ceil_usize(&(int(2 * b.len()) / epsilon));
        m = m.min(bound.saturating_sub(1));
    }
    let banned_l: Vec<usize> = a.iter().copied().collect();
    let banned_r: Vec<usize> = b.iter().copied().collect();
    let mut oracle = CoverOracle {
        g,
        banned_l: &banned_l,
        banned_r: &banned_r,
        caps,
        recent: VecDeque::new(),
        calls: 0,
    };
    let mut out = PropertyResult {
        holds: true,
        witness: None,
        max_size: m,
        subsets_checked: 0,
    };
    if m == 0 {
        return Ok(out);
    }
    let all_ok = if m == free.len() {
        oracle.coverable(&free)?
    } else {
        let total = binomial(free.len(), m);
        if total > caps.property_subsets as u128 {
            return Err(Error::cap("matching-property subsets", total.min(usize::MAX as u128) as usize, caps.property_subsets));
        }
        let mut ok = true;
        for idx in combinations(free.len(), m) {
            let c: Vec<usize> = idx.iter().map(|&i| free[i]).collect();
            if !oracle.coverable(&c)? {
                ok = false;
                break;
            }
        }
        ok
    };
    if !all_ok {
        out.holds = false;
        'sizes: for k in 1..=m {
            for idx in combinations(free.len(), k) {
                let c: Vec<usize> = idx.iter().map(|&i| free[i]).collect();
                if !oracle.coverable(&c)? {
                    out.witness = Some(c);
                    break 'sizes;
                }
            }
        }
    }
    out.subsets_checked = oracle.calls;
    Ok(out)
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r
}

/// Cover searches with a small cache of recently found covers: a subset
/// of the left set of a known cover is coverable too.
struct CoverOracle<'a> {
    g: &'a BipartiteGraph,
    banned_l: &'a [usize],
    banned_r: &'a [usize],
    caps: &'a Caps,
    recent: VecDeque<BTreeSet<usize>>,
    calls: usize,
}

impl CoverOracle<'_> {
    fn coverable(&mut self, c: &[usize]) -> Result<bool> {
        self.calls += 1;
        if self.recent.iter().any(|s| c.iter().all(|l| s.contains(l))) {
            return Ok(true);
        }
        match find_vw_cover(self.g, c, self.banned_l, self.banned_r, self.caps)? {
            Some(f) => {
                if self.recent.len() == 32 {
                    self.recent.pop_back();
                }
                self.recent.push_front(f.left_set());
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

/// Smallest uncoverable C ⊆ L \ A, found without the small-set pruning.
/// On a verified (s, 2 - eps/2)-expander it must satisfy |C| < 2|B|/eps;
/// a larger witness is reported as an inconsistency.
pub fn smallc_witness(
    g: &BipartiteGraph,
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
    s: usize,
    epsilon: &Rational,
    caps: &Caps,
) -> Result<Option<Vec<usize>>> {
    let r = has_matching_property(g, a, b, s, epsilon, false, caps)?;
    match r.witness {
        None => Ok(None),
        Some(c) => {
            if int(c.len()) >= int(2 * b.len()) / epsilon {
                return Err(Error::inconsistency(format!(
                    "uncoverable set of size {} is not below 2|B|/eps = {}",
                    c.len(),
                    format_rational(&(int(2 * b.len()) / epsilon))
                )));
            }
            Ok(Some(c))
        }
    }
}

/// Right vertices of degree > d.
pub fn high_degree_set(g: &BipartiteGraph, d: usize) -> Vec<usize> {
    g.right_degree_above(d)
}

/// Degree range over which the |S_d| condition is evaluated: above the
/// maximum degree S_d is empty and there is nothing left to cover.
fn condition_range(g: &BipartiteGraph, d_threshold: usize) -> std::ops::RangeInclusive<usize> {
    d_threshold..=d_threshold.max(g.max_right_degree())
}

/// 72d/eps (|S_d| + d) + 1.
pub fn condition_lhs(g: &BipartiteGraph, epsilon: &Rational, d: usize) -> Rational {
    int(72 * d) / epsilon * int(high_degree_set(g, d).len() + d) + int(1)
}

/// Smallest s for which the |S_d| condition holds at threshold D.
pub fn min_s(g: &BipartiteGraph, epsilon: &Rational, d_threshold: usize) -> usize {
    condition_range(g, d_threshold)
        .map(|d| ceil_usize(&(int(2) * condition_lhs(g, epsilon, d))))
        .max()
        .unwrap_or(0)
}

/// floor(eps s / (144 D)); zero when D is zero.
pub fn mu_formula(epsilon: &Rational, s: usize, d_threshold: usize) -> usize {
    if d_threshold == 0 {
        return 0;
    }
    floor_usize(&(epsilon * int(s) / int(144 * d_threshold)))
}

/// Itemized check of the hypotheses of the Cover strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverHypotheses {
    /// Left vertices whose degree is not 3.
    pub bad_left_degree: Vec<usize>,
    pub epsilon_ok: bool,
    pub expansion: ExpansionResult,
    /// First d (if any) with 72d/eps (|S_d| + d) + 1 > s/2.
    pub condition_failure: Option<(usize, Rational)>,
    pub all_pass: bool,
}

impl fmt::Display for CoverHypotheses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "left degree exactly 3        {} {:?}", mark(self.bad_left_degree.is_empty()), self.bad_left_degree)?;
        writeln!(f, "epsilon < 1/23               {}", mark(self.epsilon_ok))?;
        match &self.expansion.witness {
            Some(w) => writeln!(f, "(s, 2-eps/2)-expansion       FAIL witness {w:?}")?,
            None => writeln!(f, "(s, 2-eps/2)-expansion       pass (sets up to size {})", self.expansion.checked_size)?,
        }
        match &self.condition_failure {
            Some((d, lhs)) => write!(f, "|S_d| condition              FAIL at d = {d}: {} > s/2", format_rational(lhs)),
            None => write!(f, "|S_d| condition              pass"),
        }
    }
}

pub fn check_cover_hypotheses(
    g: &BipartiteGraph,
    epsilon: &Rational,
    d_threshold: usize,
    s: usize,
    caps: &Caps,
) -> Result<CoverHypotheses> {
    let bad_left_degree: Vec<usize> = (0..g.left_count()).filter(|&l| g.left_degree(l) != 3).collect();
    let epsilon_ok = *epsilon > rat(0, 1) && *epsilon < rat(1, 23);
    let expansion = is_expander(g, s, &(int(2) - epsilon / int(2)), caps)?;
    let half = int(s) / int(2);
    let condition_failure = condition_range(g, d_threshold)
        .map(|d| (d, condition_lhs(g, epsilon, d)))
        .find(|(_, lhs)| *lhs > half);
    let all_pass = bad_left_degree.is_empty() && epsilon_ok && expansion.holds && condition_failure.is_none();
    Ok(CoverHypotheses {
        bad_left_degree,
        epsilon_ok,
        expansion,
        condition_failure,
        all_pass,
    })
}

/// Everything Cover's strategy needs: the graph, parameters, and the
/// pre-cover M of the high-degree right vertices.
#[derive(Clone, Debug)]
pub struct CoverStrategyState {
    pub graph: BipartiteGraph,
    pub epsilon: Rational,
    pub d_threshold: usize,
    pub s: usize,
    pub m: VwMatching,
    pub hypotheses: CoverHypotheses,
    pub caps: Caps,
}

/// Statistics of one respond call.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResponseStats {
    /// (|Π|, d) for every left-vertex covering step.
    pub pi: Vec<(usize, usize)>,
}

impl CoverStrategyState {
    /// A = L(M) ∪ L(F), B = R(M) ∪ R(F).
    pub fn banned(&self, f: &VwMatching) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut a = self.m.left_set();
        a.extend(f.left_set());
        let mut b = self.m.right_set();
        b.extend(f.right_set());
        (a, b)
    }

    pub fn property(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Result<PropertyResult> {
        has_matching_property(&self.graph, a, b, self.s, &self.epsilon, true, &self.caps)
    }

    /// (2/eps)|R(M) ∪ R(F)| <= s.
    pub fn within_budget(&self, f: &VwMatching) -> bool {
        let (_, b) = self.banned(f);
        int(2 * b.len()) / &self.epsilon <= int(self.s)
    }

    /// Every component of F is a component of M or avoids M entirely.
    pub fn compatible(&self, f: &VwMatching) -> bool {
        let ml = self.m.left_set();
        let mr = self.m.right_set();
        f.components.iter().all(|c| {
            self.m.components.contains(c)
                || (c.left().iter().all(|l| !ml.contains(l)) && c.right().iter().all(|r| !mr.contains(r)))
        })
    }

    /// Membership in Cover's family: valid, compatible with M, within the
    /// budget, and the banned pair keeps the matching property.
    pub fn is_member(&self, f: &VwMatching) -> Result<bool> {
        if validate_vw_matching(&self.graph, f).is_err() || !self.compatible(f) || !self.within_budget(f) {
            return Ok(false);
        }
        let (a, b) = self.banned(f);
        Ok(self.property(&a, &b)?.holds)
    }

    /// Connected VW-matchings through left vertex v avoiding A and B:
    /// short paths first, then long ones, each in lexicographic order.
    pub fn candidates(&self, v: usize, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Vec<Component> {
        let g = &self.graph;
        let nv: Vec<usize> = g.left_neighbors(v).iter().copied().filter(|r| !b.contains(r)).collect();
        let mut shorts = Vec::new();
        let mut longs = BTreeSet::new();
        for (i, &r0) in nv.iter().enumerate() {
            for &r1 in &nv[i + 1..] {
                shorts.push(Component::short(r0, v, r1));
            }
        }
        for &shared in &nv {
            for &end in nv.iter().filter(|&&r| r != shared) {
                for &l2 in g.right_neighbors(shared) {
                    if l2 == v || a.contains(&l2) {
                        continue;
                    }
                    for &r2 in g.left_neighbors(l2) {
                        if r2 == shared || r2 == end || b.contains(&r2) {
                            continue;
                        }
                        longs.insert(Component::long(end, v, shared, l2, r2));
                    }
                }
            }
        }
        shorts.sort();
        shorts.extend(longs);
        shorts
    }

    /// Max degree of a right vertex outside B.
    fn free_max_degree(&self, b: &BTreeSet<usize>) -> usize {
        (0..self.graph.right_count())
            .filter(|r| !b.contains(r))
            .map(|r| self.graph.right_degree(r))
            .max()
            .unwrap_or(0)
    }

    /// Covers left vertex v by one component whose adjunction keeps the
    /// matching property of (A, B).
    pub fn cover_left(
        &self,
        v: usize,
        a: &BTreeSet<usize>,
        b: &BTreeSet<usize>,
        stats: &mut ResponseStats,
    ) -> Result<Component> {
        let pi = self.candidates(v, a, b);
        let d = self.free_max_degree(b);
        stats.pi.push((pi.len(), d));
        if pi.len() > 12 * d {
            return Err(Error::inconsistency(format!(
                "{} candidate components through L {v}, above 12d = {}",
                pi.len(),
                12 * d
            )));
        }
        for c in pi {
            let mut a2 = a.clone();
            a2.extend(c.left().iter().copied());
            let mut b2 = b.clone();
            b2.extend(c.right().iter().copied());
            if self.property(&a2, &b2)?.holds {
                return Ok(c);
            }
        }
        Err(Error::inconsistency(format!(
            "no component through L {v} keeps the matching property"
        )))
    }

    /// Covers right vertex v: first the free neighbours of v one at a
    /// time, then keeps only the component holding v, or {v} itself.
    pub fn cover_right(
        &self,
        v: usize,
        a: &BTreeSet<usize>,
        b: &BTreeSet<usize>,
        stats: &mut ResponseStats,
    ) -> Result<Component> {
        let mut a2 = a.clone();
        let mut b2 = b.clone();
        for &u in self.graph.right_neighbors(v) {
            if a2.contains(&u) {
                continue;
            }
            let c = self.cover_left(u, &a2, &b2, stats)?;
            if c.right().contains(&v) {
                return Ok(c);
            }
            a2.extend(c.left().iter().copied());
            b2.extend(c.right().iter().copied());
        }
        Ok(Component::isolated(v))
    }

    /// Cover's answer to a challenge on F. Returns the component adjoined,
    /// or None when v is already covered.
    pub fn respond_to(&self, f: &VwMatching, v: Vertex, stats: &mut ResponseStats) -> Result<Option<Component>> {
        check_vertex(&self.graph, v)?;
        if f.covers(v) {
            return Ok(None);
        }
        if let Some(k) = self.m.component_of(v) {
            return Ok(Some(self.m.components[k].clone()));
        }
        let (a, b) = self.banned(f);
        let c = match v {
            Vertex::Left(l) => self.cover_left(l, &a, &b, stats)?,
            Vertex::Right(r) => self.cover_right(r, &a, &b, stats)?,
        };
        let mut next = f.clone();
        next.components.push(c.clone());
        if !self.within_budget(&next) {
            return Err(Error::inconsistency(format!(
                "budget exceeded: (2/eps)|R(M) ∪ R(F)| > s = {}",
                self.s
            )));
        }
        Ok(Some(c))
    }
}

fn check_vertex(g: &BipartiteGraph, v: Vertex) -> Result<()> {
    let ok = match v {
        Vertex::Left(l) => l < g.left_count(),
        Vertex::Right(r) => r < g.right_count(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("vertex {v} out of range")))
    }
}

/// Checks the hypotheses and builds M over S_D, highest degree first.
pub fn init_cover(g: &BipartiteGraph, epsilon: &Rational, d_threshold: usize, s: usize, caps: &Caps) -> Result<CoverStrategyState> {
    let hypotheses = check_cover_hypotheses(g, epsilon, d_threshold, s, caps)?;
    if !hypotheses.all_pass {
        return Err(Error::Hypotheses(hypotheses.to_string()));
    }
    let mut state = CoverStrategyState {
        graph: g.clone(),
        epsilon: epsilon.clone(),
        d_threshold,
        s,
        m: VwMatching::default(),
        hypotheses,
        caps: caps.clone(),
    };
    let mut order = high_degree_set(g, d_threshold);
    order.sort_by_key(|&r| (std::cmp::Reverse(g.right_degree(r)), r));
    let mut stats = ResponseStats::default();
    for r in order {
        if state.m.covers_right(r) {
            continue;
        }
        let (a, b) = state.banned(&VwMatching::default());
        let c = state.cover_right(r, &a, &b, &mut stats)?;
        state.m.components.push(c);
    }
    Ok(state)
}

/// Where μ came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuSource {
    Formula,
    Override,
}

impl fmt::Display for MuSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MuSource::Formula => "formula",
            MuSource::Override => "override",
        })
    }
}

/// A move of Choose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Challenge(Vertex),
    Remove(usize),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Challenge(v) => write!(f, "challenge {v}"),
            Move::Remove(k) => write!(f, "remove {k}"),
        }
    }
}

/// Running game: Cover's strategy, μ, the current F and the log.
#[derive(Clone, Debug)]
pub struct GameState {
    pub strategy: CoverStrategyState,
    pub mu: usize,
    pub mu_source: MuSource,
    pub f: VwMatching,
    pub history: Vec<(Move, VwMatching)>,
    /// (|Π|, d) of every left covering step so far.
    pub pi_log: Vec<(usize, usize)>,
}

impl GameState {
    pub fn new(strategy: CoverStrategyState, mu_override: Option<usize>) -> Self {
        let (mu, mu_source) = match mu_override {
            Some(m) => (m, MuSource::Override),
            None => (
                mu_formula(&strategy.epsilon, strategy.s, strategy.d_threshold),
                MuSource::Formula,
            ),
        };
        GameState {
            strategy,
            mu,
            mu_source,
            f: VwMatching::default(),
            history: Vec::new(),
            pi_log: Vec::new(),
        }
    }

    pub fn respond(&mut self, v: Vertex) -> Result<&VwMatching> {
        if self.f.len() >= self.mu {
            return Err(Error::GameRule(format!(
                "F has {} components, challenges need fewer than mu = {}",
                self.f.len(),
                self.mu
            )));
        }
        let mut stats = ResponseStats::default();
        let added = self.strategy.respond_to(&self.f, v, &mut stats)?;
        self.pi_log.extend(stats.pi);
        if let Some(c) = added {
            self.f.components.push(c);
        }
        self.history.push((Move::Challenge(v), self.f.clone()));
        Ok(&self.f)
    }

    pub fn remove_component(&mut self, k: usize) -> Result<&VwMatching> {
        if k >= self.f.len() {
            return Err(Error::GameRule(format!(
                "no component {k}: F has {} components",
                self.f.len()
            )));
        }
        self.f.components.remove(k);
        self.history.push((Move::Remove(k), self.f.clone()));
        Ok(&self.f)
    }

    pub fn apply(&mut self, mv: Move) -> Result<&VwMatching> {
        match mv {
            Move::Challenge(v) => self.respond(v),
            Move::Remove(k) => self.remove_component(k),
        }
    }

    pub fn transcript(&self) -> Transcript {
        Transcript {
            mu: self.mu,
            mu_source: self.mu_source,
            m: self.strategy.m.components.clone(),
            moves: self.history.clone(),
        }
    }
}

/// Choose's move generator.
pub trait Adversary {
    fn next_move(&mut self, state: &GameState) -> Option<Move>;
}

/// Uniform random challenges (3 in 4) and removals, seeded.
pub struct RandomAdversary {
    rng: ChaCha8Rng,
}

impl RandomAdversary {
    pub fn new(seed: u64) -> Self {
        RandomAdversary {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Adversary for RandomAdversary {
    fn next_move(&mut self, state: &GameState) -> Option<Move> {
        let g = &state.strategy.graph;
        let can_challenge = state.f.len() < state.mu && g.left_count() + g.right_count() > 0;
        let remove = !state.f.is_empty() && (!can_challenge || self.rng.random_ratio(1, 4));
        if remove {
            return Some(Move::Remove(self.rng.random_range(0..state.f.len())));
        }
        if !can_challenge {
            return None;
        }
        let i = self.rng.random_range(0..g.left_count() + g.right_count());
        Some(Move::Challenge(if i < g.left_count() {
            Vertex::Left(i)
        } else {
            Vertex::Right(i - g.left_count())
        }))
    }
}

/// Challenges the uncovered right vertex of highest degree; removes the
/// oldest component when it cannot challenge.
#[derive(Default)]
pub struct GreedyDegreeAdversary;

impl Adversary for GreedyDegreeAdversary {
    fn next_move(&mut self, state: &GameState) -> Option<Move> {
        let g = &state.strategy.graph;
        if state.f.len() < state.mu {
            let target = (0..g.right_count())
                .filter(|&r| !state.f.covers_right(r))
                .max_by_key(|&r| (g.right_degree(r), std::cmp::Reverse(r)));
            if let Some(r) = target {
                return Some(Move::Challenge(Vertex::Right(r)));
            }
        }
        (!state.f.is_empty()).then_some(Move::Remove(0))
    }
}

/// Plays up to `max_moves` moves of `adversary` against Cover.
pub fn play(state: &mut GameState, adversary: &mut dyn Adversary, max_moves: usize) -> Result<Transcript> {
    for _ in 0..max_moves {
        let Some(mv) = adversary.next_move(state) else { break };
        state.apply(mv)?;
    }
    Ok(state.transcript())
}

/// Size of an exhaustive exploration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExhaustiveReport {
    pub states: usize,
    pub challenges: usize,
    pub removals: usize,
    pub max_pi_ratio_ok: bool,
    pub budget_ok: bool,
}

/// Explores every reachable F (as a set of components) under all challenge
/// and removal sequences. Any failing response is returned as an error.
pub fn exhaustive_game(strategy: &CoverStrategyState, mu: usize) -> Result<ExhaustiveReport> {
    let g = &strategy.graph;
    let start: Vec<Component> = Vec::new();
    let mut seen: HashSet<Vec<Component>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut rep = ExhaustiveReport {
        max_pi_ratio_ok: true,
        budget_ok: true,
        ..ExhaustiveReport::default()
    };
    let vertices: Vec<Vertex> = (0..g.left_count())
        .map(Vertex::Left)
        .chain((0..g.right_count()).map(Vertex::Right))
        .collect();
    while let Some(comps) = queue.pop_front() {
        rep.states += 1;
        let f = VwMatching::new(comps.clone());
        let mut next = Vec::new();
        if f.len() < mu {
            for &v in &vertices {
                let mut stats = ResponseStats::default();
                let added = strategy.respond_to(&f, v, &mut stats)?;
                rep.challenges += 1;
                rep.max_pi_ratio_ok &= stats.pi.iter().all(|&(p, d)| p <= 12 * d);
                let mut nf = f.clone();
                if let Some(c) = added {
                    nf.components.push(c);
                }
                if let Err(e) = validate_vw_matching(g, &nf) {
                    return Err(Error::inconsistency(format!("response to {v} invalid: {e}")));
                }
                if !nf.covers(v) {
                    return Err(Error::inconsistency(format!("response does not cover {v}")));
                }
                rep.budget_ok &= strategy.within_budget(&nf);
                next.push(nf.canonical());
            }
        }
        for k in 0..comps.len() {
            rep.removals += 1;
            let mut c = comps.clone();
            c.remove(k);
            next.push(c);
        }
        for c in next {
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    Ok(rep)
}

/// Line-oriented game record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub mu: usize,
    pub mu_source: MuSource,
    pub m: Vec<Component>,
    /// Each move with the matching F after it.
    pub moves: Vec<(Move, VwMatching)>,
}

impl Transcript {
    pub fn to_text(&self) -> String {
        let mut out = format!("p transcript {} {}\n", self.mu, self.mu_source);
        for c in &self.m {
            out.push_str(&format!("M {}\n", c.to_text()));
        }
        for (mv, f) in &self.moves {
            out.push_str(&format!("m {mv}\n"));
            for c in &f.components {
                out.push_str(&format!("f {}\n", c.to_text()));
            }
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut header = None;
        let mut m = Vec::new();
        let mut moves: Vec<(Move, VwMatching)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if fields.len() != 4 || fields[1] != "transcript" {
                        return Err(Error::parse(lineno, "expected `p transcript <mu> <formula|override>`"));
                    }
                    let mu = fields[2]
                        .parse()
                        .map_err(|_| Error::parse(lineno, "bad mu"))?;
                    let src = match fields[3] {
                        "formula" => MuSource::Formula,
                        "override" => MuSource::Override,
                        _ => return Err(Error::parse(lineno, "mu source must be formula or override")),
                    };
                    header = Some((mu, src));
                }
                "M" => m.push(Component::parse_fields(&fields[1..], lineno)?),
                "m" => moves.push((parse_move(&fields[1..], lineno)?, VwMatching::default())),
                "f" => {
                    let Some(last) = moves.last_mut() else {
                        return Err(Error::parse(lineno, "`f` line before any move"));
                    };
                    last.1.components.push(Component::parse_fields(&fields[1..], lineno)?);
                }
                other => return Err(Error::parse(lineno, format!("unknown line type {other:?}"))),
            }
        }
        let (mu, mu_source) = header.ok_or_else(|| Error::parse(0, "missing `p transcript` header"))?;
        Ok(Transcript { mu, mu_source, m, moves })
    }
}

fn parse_move(fields: &[&str], lineno: usize) -> Result<Move> {
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(lineno, format!("bad index {s:?}")));
    match fields {
        ["challenge", "L", i] => Ok(Move::Challenge(Vertex::Left(num(i)?))),
        ["challenge", "R", j] => Ok(Move::Challenge(Vertex::Right(num(j)?))),
        ["remove", k] => Ok(Move::Remove(num(k)?)),
        _ => Err(Error::parse(lineno, "expected `challenge L <i>`, `challenge R <j>` or `remove <k>`")),
    }
}

/// Parses a move as typed at the interactive prompt: `L 3`, `R 5`,
/// `remove 2` (the `m challenge` forms are accepted too).
pub fn parse_user_move(line: &str) -> Result<Move> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["L", _] | ["R", _] => parse_move(&[&["challenge"], &fields[..]].concat(), 0),
        ["m", rest @ ..] => parse_move(rest, 0),
        _ => parse_move(&fields, 0),
    }
}

/// Result of replaying a transcript against the rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptReport {
    pub moves: usize,
    /// First bad move (1-based) and the reason.
    pub error: Option<(usize, String)>,
}

impl TranscriptReport {
    pub fn accepted(&self) -> bool {
        self.error.is_none()
    }
}

/// Replays a transcript from the empty matching, checking each move
/// against the game rules, independent of how the moves were produced.
pub fn verify_transcript(g: &BipartiteGraph, t: &Transcript, mu: usize) -> TranscriptReport {
    let mut prev = VwMatching::default();
    let fail = |i: usize, why: String| TranscriptReport {
        moves: t.moves.len(),
        error: Some((i + 1, why)),
    };
    if let Err(e) = validate_vw_matching(g, &VwMatching::new(t.m.clone())) {
        return fail(0, format!("M is not a VW-matching: {e}"));
    }
    for (i, (mv, next)) in t.moves.iter().enumerate() {
        if let Err(e) = validate_vw_matching(g, next) {
            return fail(i, format!("invalid: {e}"));
        }
        match *mv {
            Move::Challenge(v) => {
                if check_vertex(g, v).is_err() {
                    return fail(i, format!("invalid: vertex {v} out of range"));
                }
                if prev.len() >= mu || next.len() > mu {
                    return fail(i, format!("exceeds mu = {mu}"));
                }
                if prev.components.iter().any(|c| !next.components.contains(c)) {
                    return fail(i, "not an extension".to_string());
                }
                if !next.covers(v) {
                    return fail(i, format!("not covering {v}"));
                }
            }
            Move::Remove(k) => {
                if k >= prev.len() {
                    return fail(i, format!("invalid: no component {k}"));
                }
                let mut expect = prev.clone();
                expect.components.remove(k);
                if expect.canonical() != next.canonical() {
                    return fail(i, format!("removal of component {k} does not match"));
                }
            }
        }
        prev = next.clone();
    }
    TranscriptReport {
        moves: t.moves.len(),
        error: None,
    }
}

/// Checks (2/eps)|R(M) ∪ R(F_i)| <= s after every move; returns the first
/// violating move (1-based).
pub fn check_budget(t: &Transcript, epsilon: &Rational, s: usize) -> Option<usize> {
    let mr: BTreeSet<usize> = t.m.iter().flat_map(|c| c.right().iter().copied()).collect();
    t.moves.iter().position(|(_, f)| {
        let mut b = mr.clone();
        b.extend(f.right_set());
        int(2 * b.len()) / epsilon > int(s)
    }).map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disjoint_triples(k: usize) -> BipartiteGraph {
        let nb = (0..k).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect();
        BipartiteGraph::from_neighborhoods(3 * k, nb).unwrap()
    }

    fn state(g: &BipartiteGraph) -> CoverStrategyState {
        let eps = rat(1, 24);
        let d = g.max_right_degree();
        init_cover(g, &eps, d, min_s(g, &eps, d), &Caps::default()).unwrap()
    }

    #[test]
    fn empty_pair_has_property() {
        let g = disjoint_triples(3);
        let r = has_matching_property(&g, &BTreeSet::new(), &BTreeSet::new(), 3, &rat(1, 24), false, &Caps::default()).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn banned_everything_is_vacuous() {
        let g = disjoint_triples(2);
        let a: BTreeSet<usize> = [0, 1].into();
        let r = has_matching_property(&g, &a, &BTreeSet::new(), 5, &rat(1, 24), false, &Caps::default()).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn degree_one_vertex_is_witness() {
        let g = BipartiteGraph::from_neighborhoods(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        let r = has_matching_property(&g, &BTreeSet::new(), &BTreeSet::new(), 2, &rat(1, 24), false, &Caps::default()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![0]));
    }

    #[test]
    fn mu_and_min_s() {
        let g = disjoint_triples(2);
        let eps = rat(1, 24);
        // d = 1: 72*24*(0+1)+1 = 1729, doubled
        assert_eq!(min_s(&g, &eps, 1), 3458);
        assert_eq!(mu_formula(&eps, 3458, 1), 1);
        assert_eq!(mu_formula(&eps, 100, 0), 0);
    }

    #[test]
    fn hypotheses_itemized() {
        let g = BipartiteGraph::from_neighborhoods(3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        let err = init_cover(&g, &rat(1, 24), 2, 100_000, &Caps::default()).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("expansion") && text.contains("FAIL"), "{text}");
    }

    #[test]
    fn m_empty_without_high_degree() {
        let g = disjoint_triples(2);
        let st = state(&g);
        assert!(st.m.is_empty());
    }

    #[test]
    fn challenge_covered_vertex_is_noop() {
        let g = disjoint_triples(2);
        let mut gs = GameState::new(state(&g), Some(2));
        gs.respond(Vertex::Left(0)).unwrap();
        let before = gs.f.clone();
        gs.respond(Vertex::Left(0)).unwrap();
        assert_eq!(gs.f, before);
    }

    #[test]
    fn right_vertex_with_banned_neighbours_is_isolated() {
        let g = disjoint_triples(2);
        let st = state(&g);
        let mut stats = ResponseStats::default();
        let a: BTreeSet<usize> = [0].into();
        let b: BTreeSet<usize> = [0, 1].into();
        let c = st.cover_right(2, &a, &b, &mut stats).unwrap();
        assert_eq!(c, Component::isolated(2));
    }

    #[test]
    fn remove_from_empty_is_error() {
        let g = disjoint_triples(1);
        let mut gs = GameState::new(state(&g), Some(1));
        assert!(matches!(gs.remove_component(0), Err(Error::GameRule(_))));
    }

    #[test]
    fn transcript_round_trip_and_tamper() {
        let g = disjoint_triples(3);
        let mut gs = GameState::new(state(&g), Some(2));
        gs.respond(Vertex::Left(1)).unwrap();
        gs.respond(Vertex::Right(0)).unwrap();
        gs.remove_component(0).unwrap();
        let t = gs.transcript();
        let back = Transcript::parse_text(&t.to_text()).unwrap();
        assert_eq!(back, t);
        assert!(verify_transcript(&g, &t, 2).accepted());
        let mut bad = t.clone();
        bad.moves[1].1.components.remove(0);
        let r = verify_transcript(&g, &bad, 2);
        assert!(r.error.unwrap().1.contains("not an extension"));
        let r = verify_transcript(&g, &t, 1);
        assert!(r.error.unwrap().1.contains("exceeds mu"));
    }

    #[test]
    fn user_moves() {
        assert_eq!(parse_user_move("L 3").unwrap(), Move::Challenge(Vertex::Left(3)));
        assert_eq!(parse_user_move("remove 1").unwrap(), Move::Remove(1));
        assert_eq!(parse_user_move("m challenge R 2").unwrap(), Move::Challenge(Vertex::Right(2)));
        assert!(parse_user_move("X 1").is_err());
    }
}
