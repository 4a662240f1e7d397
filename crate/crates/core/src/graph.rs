use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::Caps;

/// Bipartite graph with left side L (clauses) and right side R (variables).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    adj: Vec<Vec<usize>>,
    radj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a graph from `(l, r)` edge pairs. Duplicate edges are merged.
    pub fn new(left_count: usize, right_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); left_count];
        for &(l, r) in edges {
            if l >= left_count {
                return Err(Error::invalid(format!(
                    "edge ({l},{r}): left index out of range (left_count {left_count})"
                )));
            }
            if r >= right_count {
                return Err(Error::invalid(format!(
                    "edge ({l},{r}): right index out of range (right_count {right_count})"
                )));
            }
            adj[l].push(r);
        }
        Ok(Self::from_adjacency(right_count, adj))
    }

    /// Builds a graph from the neighbor list of every left vertex.
    pub fn from_neighborhoods(right_count: usize, nbhds: Vec<Vec<usize>>) -> Result<Self> {
        for (l, n) in nbhds.iter().enumerate() {
            if let Some(&r) = n.iter().find(|&&r| r >= right_count) {
                return Err(Error::invalid(format!(
                    "edge ({l},{r}): right index out of range (right_count {right_count})"
                )));
            }
        }
        Ok(Self::from_adjacency(right_count, nbhds))
    }

    fn from_adjacency(right_count: usize, mut adj: Vec<Vec<usize>>) -> Self {
        let mut radj = vec![Vec::new(); right_count];
        for (l, n) in adj.iter_mut().enumerate() {
            n.sort_unstable();
            n.dedup();
            for &r in n.iter() {
                radj[r].push(l);
            }
        }
        BipartiteGraph {
            left_count: adj.len(),
            right_count,
            adj,
            radj,
        }
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn left_neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn right_neighbors(&self, r: usize) -> &[usize] {
        &self.radj[r]
    }

    pub fn left_degree(&self, l: usize) -> usize {
        self.adj[l].len()
    }

    pub fn right_degree(&self, r: usize) -> usize {
        self.radj[r].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        l < self.left_count && self.adj[l].binary_search(&r).is_ok()
    }

    /// All edges in (l, r) lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(l, n)| n.iter().map(move |&r| (l, r)))
    }

    pub fn max_right_degree(&self) -> usize {
        self.radj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// N_G(X) for a set of left vertices.
    pub fn neighborhood(&self, left: &[usize]) -> BTreeSet<usize> {
        left.iter()
            .flat_map(|&l| self.adj[l].iter().copied())
            .collect()
    }

    /// Right vertices of degree strictly greater than `d`.
    pub fn right_degree_above(&self, d: usize) -> Vec<usize> {
        (0..self.right_count)
            .filter(|&r| self.right_degree(r) > d)
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "p bigraph {} {} {}\n",
            self.left_count,
            self.right_count,
            self.edge_count()
        );
        for (l, r) in self.edges() {
            out.push_str(&format!("e {l} {r}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize, usize)> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(Error::parse(lineno, "duplicate header"));
                    }
                    if fields.len() != 5 || fields[1] != "bigraph" {
                        return Err(Error::parse(
                            lineno,
                            "expected `p bigraph <left> <right> <edges>`",
                        ));
                    }
                    let l = parse_index(fields[2], lineno)?;
                    let r = parse_index(fields[3], lineno)?;
                    let e = parse_index(fields[4], lineno)?;
                    header = Some((l, r, e, lineno));
                }
                "e" => {
                    let Some((lc, rc, _, _)) = header else {
                        return Err(Error::parse(lineno, "edge before header"));
                    };
                    if fields.len() != 3 {
                        return Err(Error::parse(lineno, "expected `e <l> <r>`"));
                    }
                    let l = parse_index(fields[1], lineno)?;
                    let r = parse_index(fields[2], lineno)?;
                    if l >= lc || r >= rc {
                        return Err(Error::parse(lineno, format!("edge ({l},{r}) out of range")));
                    }
                    edges.push((l, r));
                }
                other => {
                    return Err(Error::parse(lineno, format!("unknown line type {other:?}")));
                }
            }
        }
        let Some((lc, rc, ec, hline)) = header else {
            return Err(Error::parse(0, "missing `p bigraph` header"));
        };
        if edges.len() != ec {
            return Err(Error::parse(
                hline,
                format!("header declares {ec} edges, found {}", edges.len()),
            ));
        }
        BipartiteGraph::new(lc, rc, &edges)
    }
}

pub(crate) fn parse_index(field: &str, lineno: usize) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(lineno, format!("expected a non-negative integer, got {field:?}")))
}

/// One connected component of a VW-matching: either an isolated right
/// vertex or a path `r0 - l1 - r1 [- l2 - r2]`.
///
/// Paths are stored with the smaller right endpoint first, so two equal
/// components compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    right: Vec<usize>,
    left: Vec<usize>,
}

impl Component {
    pub fn isolated(r: usize) -> Self {
        Component {
            right: vec![r],
            left: Vec::new(),
        }
    }

    pub fn short(r0: usize, l: usize, r1: usize) -> Self {
        Self::path(vec![r0, r1], vec![l])
    }

    pub fn long(r0: usize, l1: usize, r1: usize, l2: usize, r2: usize) -> Self {
        Self::path(vec![r0, r1, r2], vec![l1, l2])
    }

    /// Alternating path given as right and left vertices in path order.
    /// Requires `right.len() == left.len() + 1`; the length limit is
    /// checked by `validate_vw_matching`.
    pub fn path(mut right: Vec<usize>, mut left: Vec<usize>) -> Self {
        assert_eq!(right.len(), left.len() + 1, "alternating path shape");
        if right.first() > right.last() {
            right.reverse();
            left.reverse();
        }
        Component { right, left }
    }

    /// Right vertices in path order.
    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Left vertices in path order.
    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn edge_count(&self) -> usize {
        2 * self.left.len()
    }

    pub fn is_isolated(&self) -> bool {
        self.left.is_empty()
    }

    /// Edges as (l, r) pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &l) in self.left.iter().enumerate() {
            out.push((l, self.right[i]));
            out.push((l, self.right[i + 1]));
        }
        out
    }

    /// The two right vertices matched to the left vertex `l`.
    pub fn matched_pair(&self, l: usize) -> Option<(usize, usize)> {
        let i = self.left.iter().position(|&x| x == l)?;
        Some((self.right[i], self.right[i + 1]))
    }

    /// Text form `r0 l1 r1 [l2 r2]` (or `r` for an isolated vertex).
    pub fn to_text(&self) -> String {
        let mut parts = vec![self.right[0].to_string()];
        for (i, l) in self.left.iter().enumerate() {
            parts.push(l.to_string());
            parts.push(self.right[i + 1].to_string());
        }
        parts.join(" ")
    }

    pub fn parse_fields(fields: &[&str], lineno: usize) -> Result<Self> {
        if fields.is_empty() || fields.len().is_multiple_of(2) {
            return Err(Error::parse(
                lineno,
                "a component is `r` or an alternating list `r l r [l r ...]`",
            ));
        }
        let nums = fields
            .iter()
            .map(|f| parse_index(f, lineno))
            .collect::<Result<Vec<_>>>()?;
        let right = nums.iter().step_by(2).copied().collect();
        let left = nums.iter().skip(1).step_by(2).copied().collect();
        Ok(Component::path(right, left))
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Disjoint union of VW components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VwMatching {
    pub components: Vec<Component>,
}

impl VwMatching {
    pub fn new(components: Vec<Component>) -> Self {
        VwMatching { components }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// L(F), sorted.
    pub fn left_set(&self) -> BTreeSet<usize> {
        self.components
            .iter()
            .flat_map(|c| c.left.iter().copied())
            .collect()
    }

    /// R(F), sorted.
    pub fn right_set(&self) -> BTreeSet<usize> {
        self.components
            .iter()
            .flat_map(|c| c.right.iter().copied())
            .collect()
    }

    pub fn covers_left(&self, l: usize) -> bool {
        self.components.iter().any(|c| c.left.contains(&l))
    }

    pub fn covers_right(&self, r: usize) -> bool {
        self.components.iter().any(|c| c.right.contains(&r))
    }

    pub fn covers(&self, v: Vertex) -> bool {
        match v {
            Vertex::Left(l) => self.covers_left(l),
            Vertex::Right(r) => self.covers_right(r),
        }
    }

    pub fn component_of(&self, v: Vertex) -> Option<usize> {
        self.components.iter().position(|c| match v {
            Vertex::Left(l) => c.left.contains(&l),
            Vertex::Right(r) => c.right.contains(&r),
        })
    }

    /// Components sorted, for order-insensitive comparison.
    pub fn canonical(&self) -> Vec<Component> {
        let mut c = self.components.clone();
        c.sort();
        c
    }
}

pub fn left_sets_of(f: &VwMatching) -> BTreeSet<usize> {
    f.left_set()
}

pub fn right_sets_of(f: &VwMatching) -> BTreeSet<usize> {
    f.right_set()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Left(usize),
    Right(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Left(l) => write!(f, "L {l}"),
            Vertex::Right(r) => write!(f, "R {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Component with more than 4 edges.
    TooLong { component: usize },
    /// Vertex index outside the graph.
    OutOfRange { component: usize },
    /// Vertex repeated inside one component (not a path).
    NotAPath { component: usize },
    /// Path edge missing from the graph.
    NotAnEdge { component: usize, l: usize, r: usize },
    /// Two components share a vertex.
    NotDisjoint { vertex: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooLong { component } => write!(f, "component too long (component {component})"),
            Violation::OutOfRange { component } => write!(f, "vertex out of range (component {component})"),
            Violation::NotAPath { component } => write!(f, "not a path (component {component})"),
            Violation::NotAnEdge { component, l, r } => {
                write!(f, "not an edge: ({l},{r}) in component {component}")
            }
            Violation::NotDisjoint { vertex } => write!(f, "not disjoint: {vertex} repeated"),
        }
    }
}

/// Checks every VW-matching invariant of `f` against `g`; returns the
/// first violation found.
pub fn validate_vw_matching(g: &BipartiteGraph, f: &VwMatching) -> Result<(), Violation> {
    let mut seen_l = HashSet::new();
    let mut seen_r = HashSet::new();
    for (i, c) in f.components.iter().enumerate() {
        if c.left.len() > 2 {
            return Err(Violation::TooLong { component: i });
        }
        if c.left.iter().any(|&l| l >= g.left_count())
            || c.right.iter().any(|&r| r >= g.right_count())
        {
            return Err(Violation::OutOfRange { component: i });
        }
        let ls: BTreeSet<_> = c.left.iter().collect();
        let rs: BTreeSet<_> = c.right.iter().collect();
        if ls.len() != c.left.len() || rs.len() != c.right.len() {
            return Err(Violation::NotAPath { component: i });
        }
        for (l, r) in c.edges() {
            if !g.has_edge(l, r) {
                return Err(Violation::NotAnEdge { component: i, l, r });
            }
        }
    }
    for c in &f.components {
        for &l in &c.left {
            if !seen_l.insert(l) {
                return Err(Violation::NotDisjoint {
                    vertex: Vertex::Left(l),
                });
            }
        }
        for &r in &c.right {
            if !seen_r.insert(r) {
                return Err(Violation::NotDisjoint {
                    vertex: Vertex::Right(r),
                });
            }
        }
    }
    Ok(())
}

/// Finds a VW-matching inside `G` minus `banned_left`/`banned_right` that
/// covers every target, or `None` if there is none. Deterministic.
pub fn find_vw_cover(
    g: &BipartiteGraph,
    targets: &[usize],
    banned_left: &[usize],
    banned_right: &[usize],
    caps: &Caps,
) -> Result<Option<VwMatching>> {
    let mut t: Vec<usize> = targets.to_vec();
    t.sort_unstable();
    t.dedup();
    if t.len() > caps.cover_targets {
        return Err(Error::cap("cover targets", t.len(), caps.cover_targets));
    }
    if let Some(&l) = t.iter().find(|&&l| l >= g.left_count()) {
        return Err(Error::invalid(format!("target {l} out of range")));
    }
    if let Some(&l) = t.iter().find(|l| banned_left.contains(l)) {
        return Err(Error::invalid(format!("target {l} is banned")));
    }
    let mut s = CoverSearch::new(g, &t, banned_left, banned_right);
    Ok(s.run().then(|| VwMatching::new(s.chosen)))
}

struct CoverSearch<'g> {
    g: &'g BipartiteGraph,
    targets: Vec<usize>,
    used_l: Vec<bool>,
    used_r: Vec<bool>,
    is_target: Vec<bool>,
    chosen: Vec<Component>,
    failed: HashSet<(Vec<u64>, Vec<u64>)>,
}

fn pack(bits: &[bool]) -> Vec<u64> {
    let mut out = vec![0u64; bits.len().div_ceil(64)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

impl<'g> CoverSearch<'g> {
    fn new(g: &'g BipartiteGraph, targets: &[usize], bl: &[usize], br: &[usize]) -> Self {
        let mut used_l = vec![false; g.left_count()];
        let mut used_r = vec![false; g.right_count()];
        for &l in bl {
            if l < used_l.len() {
                used_l[l] = true;
            }
        }
        for &r in br {
            if r < used_r.len() {
                used_r[r] = true;
            }
        }
        let mut is_target = vec![false; g.left_count()];
        for &t in targets {
            is_target[t] = true;
        }
        CoverSearch {
            g,
            targets: targets.to_vec(),
            used_l,
            used_r,
            is_target,
            chosen: Vec::new(),
            failed: HashSet::new(),
        }
    }

    fn free_neighbors(&self, l: usize) -> impl Iterator<Item = usize> + '_ {
        self.g
            .left_neighbors(l)
            .iter()
            .copied()
            .filter(|&r| !self.used_r[r])
    }

    fn run(&mut self) -> bool {
        if self
            .targets
            .iter()
            .any(|&t| self.g.left_degree(t) < 2)
        {
            return false;
        }
        self.search()
    }

    /// Candidate components covering `t`, all other left vertices being
    /// uncovered targets (a cover using a non-target partner can drop it).
    fn candidates(&self, t: usize) -> Vec<Component> {
        let nt: Vec<usize> = self.free_neighbors(t).collect();
        let mut out = Vec::new();
        for (i, &a) in nt.iter().enumerate() {
            for &b in &nt[i + 1..] {
                out.push(Component::short(a, t, b));
            }
        }
        for &b in &nt {
            for &l2 in self.g.right_neighbors(b) {
                if l2 == t || self.used_l[l2] || !self.is_target[l2] {
                    continue;
                }
                for &a in &nt {
                    if a == b {
                        continue;
                    }
                    for c in self.free_neighbors(l2) {
                        if c != a && c != b {
                            out.push(Component::long(a, t, b, l2, c));
                        }
                    }
                }
            }
        }
        out.sort_by_key(|c| (c.right()[0], c.clone()));
        out.dedup();
        out
    }

    fn search(&mut self) -> bool {
        let Some(&t) = self.targets.iter().find(|&&t| !self.used_l[t]) else {
            return true;
        };
        for &u in &self.targets {
            if !self.used_l[u] && self.free_neighbors(u).take(2).count() < 2 {
                return false;
            }
        }
        let key = (pack(&self.used_l), pack(&self.used_r));
        if self.failed.contains(&key) {
            return false;
        }
        for c in self.candidates(t) {
            self.mark(&c, true);
            self.chosen.push(c);
            if self.search() {
                return true;
            }
            let c = self.chosen.pop().expect("pushed above");
            self.mark(&c, false);
        }
        self.failed.insert(key);
        false
    }

    fn mark(&mut self, c: &Component, on: bool) {
        for &l in c.left() {
            self.used_l[l] = on;
        }
        for &r in c.right() {
            self.used_r[r] = on;
        }
    }
}

/// Outcome of an expansion test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult {
    pub holds: bool,
    /// A violating left set of minimum size, when `holds` is false.
    pub witness: Option<Vec<usize>>,
    /// The subset size actually checked (`s` clamped to `left_count`).
    pub checked_size: usize,
}

/// Tests whether every X ⊆ L with 1 <= |X| <= s has |N(X)| >= delta |X|.
/// `s` above `left_count` is clamped to `left_count`. Sizes are searched in
/// increasing order, so a violation of size at most the cap is reported even
/// when `s` itself exceeds the cap.
pub fn is_expander(
    g: &BipartiteGraph,
    s: usize,
    delta: &Rational,
    caps: &Caps,
) -> Result<ExpansionResult> {
    let s = s.min(g.left_count());
    for k in 1..=s.min(caps.expander_size) {
        let need = delta * int(k);
        let mut chosen = Vec::with_capacity(k);
        let mut counts = vec![0u32; g.right_count()];
        if let Some(w) = violating_subset(g, k, &need, 0, &mut chosen, &mut counts, 0) {
            return Ok(ExpansionResult {
                holds: false,
                witness: Some(w),
                checked_size: s,
            });
        }
    }
    if s > caps.expander_size {
        return Err(Error::cap("expansion subset size", s, caps.expander_size));
    }
    Ok(ExpansionResult {
        holds: true,
        witness: None,
        checked_size: s,
    })
}

/// Depth-first search for a k-subset with fewer than `need` neighbours.
/// Once a partial set already reaches `need`, every completion does too,
/// so the branch is cut.
fn violating_subset(
    g: &BipartiteGraph,
    k: usize,
    need: &Rational,
    start: usize,
    chosen: &mut Vec<usize>,
    counts: &mut [u32],
    size: usize,
) -> Option<Vec<usize>> {
    if int(size) >= *need {
        return None;
    }
    if chosen.len() == k {
        return Some(chosen.clone());
    }
    let remaining = k - chosen.len();
    for l in start..g.left_count() {
        if g.left_count() - l < remaining {
            break;
        }
        let mut added = 0;
        for &r in g.left_neighbors(l) {
            counts[r] += 1;
            if counts[r] == 1 {
                added += 1;
            }
        }
        chosen.push(l);
        let found = violating_subset(g, k, need, l + 1, chosen, counts, size + added);
        chosen.pop();
        for &r in g.left_neighbors(l) {
            counts[r] -= 1;
        }
        if found.is_some() {
            return found;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn build_dedups_and_checks_range() {
        let g = BipartiteGraph::new(1, 2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.left_degree(0), 2);
        let g = BipartiteGraph::new(1, 2, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(BipartiteGraph::new(1, 2, &[(0, 5)]).is_err());
    }

    #[test]
    fn reverse_index_is_transpose() {
        let g = BipartiteGraph::new(3, 4, &[(0, 0), (0, 3), (1, 3), (2, 1), (2, 3)]).unwrap();
        for (l, r) in g.edges() {
            assert!(g.right_neighbors(r).contains(&l));
        }
        let total: usize = (0..4).map(|r| g.right_degree(r)).sum();
        assert_eq!(total, g.edge_count());
    }

    #[test]
    fn text_round_trip() {
        let g = BipartiteGraph::new(2, 3, &[(1, 2), (0, 0), (0, 1)]).unwrap();
        let t = g.to_text();
        let h = BipartiteGraph::parse_text(&t).unwrap();
        assert_eq!(g, h);
        assert_eq!(h.to_text(), t);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let err = BipartiteGraph::parse_text("p bigraph 1 1 1\nc x\nq 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = BipartiteGraph::parse_text("p bigraph 1 1 1\ne 0 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn left_and_right_sets() {
        let f = VwMatching::new(vec![Component::short(0, 5, 1)]);
        assert_eq!(left_sets_of(&f), [5].into());
        assert_eq!(right_sets_of(&f), [0, 1].into());
        let f = VwMatching::new(vec![Component::isolated(3)]);
        assert!(left_sets_of(&f).is_empty());
        assert_eq!(right_sets_of(&f), [3].into());
        let f = VwMatching::new(vec![Component::short(0, 0, 1), Component::short(2, 1, 3)]);
        assert_eq!(left_sets_of(&f).len(), 2);
        assert_eq!(right_sets_of(&f).len(), 4);
    }

    #[test]
    fn validation_reports() {
        let g = BipartiteGraph::new(3, 4, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3)])
            .unwrap();
        let ok = VwMatching::new(vec![Component::short(0, 0, 1)]);
        assert_eq!(validate_vw_matching(&g, &ok), Ok(()));
        let long = VwMatching::new(vec![Component::path(vec![0, 1, 2, 3], vec![0, 1, 2])]);
        let v = validate_vw_matching(&g, &long).unwrap_err();
        assert!(v.to_string().contains("component too long"));
        let clash = VwMatching::new(vec![Component::short(0, 0, 1), Component::short(1, 1, 2)]);
        let v = validate_vw_matching(&g, &clash).unwrap_err();
        assert!(v.to_string().contains("not disjoint"));
        let missing = VwMatching::new(vec![Component::short(0, 1, 2)]);
        assert!(matches!(
            validate_vw_matching(&g, &missing),
            Err(Violation::NotAnEdge { .. })
        ));
    }

    #[test]
    fn single_vertex_covers() {
        let g = BipartiteGraph::new(1, 2, &[(0, 0), (0, 1)]).unwrap();
        let f = find_vw_cover(&g, &[0], &[], &[], &caps()).unwrap().unwrap();
        assert_eq!(f.components, vec![Component::short(0, 0, 1)]);
        let g = BipartiteGraph::new(1, 2, &[(0, 0)]).unwrap();
        assert!(find_vw_cover(&g, &[0], &[], &[], &caps()).unwrap().is_none());
    }

    #[test]
    fn empty_targets_always_succeed() {
        let g = BipartiteGraph::new(1, 1, &[(0, 0)]).unwrap();
        let f = find_vw_cover(&g, &[], &[0], &[0], &caps()).unwrap().unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn long_path_needed() {
        // two clauses sharing their only spare neighbour pattern: {0,1},{1,2}
        let g = BipartiteGraph::from_neighborhoods(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let f = find_vw_cover(&g, &[0, 1], &[], &[], &caps()).unwrap().unwrap();
        assert_eq!(f.components, vec![Component::long(0, 0, 1, 1, 2)]);
        // three clauses on a path cannot be covered
        let g = BipartiteGraph::from_neighborhoods(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]])
            .unwrap();
        assert!(find_vw_cover(&g, &[0, 1, 2], &[], &[], &caps()).unwrap().is_none());
    }

    #[test]
    fn bans_are_respected() {
        let g = BipartiteGraph::from_neighborhoods(3, vec![vec![0, 1, 2]]).unwrap();
        let f = find_vw_cover(&g, &[0], &[], &[0], &caps()).unwrap().unwrap();
        assert_eq!(f.components, vec![Component::short(1, 0, 2)]);
        assert!(find_vw_cover(&g, &[0], &[], &[0, 1], &caps()).unwrap().is_none());
        assert!(find_vw_cover(&g, &[0], &[0], &[], &caps()).is_err());
    }

    #[test]
    fn cover_cap() {
        let g = BipartiteGraph::from_neighborhoods(2, vec![vec![0, 1]; 3]).unwrap();
        let small = Caps {
            cover_targets: 2,
            ..Caps::default()
        };
        assert!(matches!(
            find_vw_cover(&g, &[0, 1, 2], &[], &[], &small),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn expander_examples() {
        let d = rat(2, 1) - rat(1, 24);
        let star = BipartiteGraph::from_neighborhoods(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(is_expander(&star, 1, &d, &caps()).unwrap().holds);
        let twin = BipartiteGraph::from_neighborhoods(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let res = is_expander(&twin, 2, &d, &caps()).unwrap();
        assert!(!res.holds);
        assert_eq!(res.witness, Some(vec![0, 1]));
    }

    #[test]
    fn expander_witness_is_minimum() {
        let g = BipartiteGraph::from_neighborhoods(
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0], vec![1, 2, 3]],
        )
        .unwrap();
        let res = is_expander(&g, 4, &rat(3, 2), &caps()).unwrap();
        assert_eq!(res.witness, Some(vec![2]));
    }
}
