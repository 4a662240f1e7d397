use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{parse_index, BipartiteGraph};
use crate::rational::{format_rational, int, rat, Rational};
use crate::Caps;

/// Hypergraph with hyperedges of size 2 or 3. Edges are sorted vertex
/// lists and pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            e.dedup();
            if !(2..=3).contains(&e.len()) {
                return Err(Error::invalid(format!(
                    "hyperedge {i} has {} distinct vertices, expected 2 or 3",
                    e.len()
                )));
            }
            if let Some(v) = e.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::invalid(format!("hyperedge {i}: vertex {v} out of range")));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::invalid(format!("hyperedge {i} {e:?} repeated")));
            }
            out.push(e);
        }
        Ok(Hypergraph {
            vertex_count,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.degrees().contains(&0)
    }

    /// Sub-hypergraph on the given edge indices (same vertex set).
    pub fn restrict(&self, edges: &[usize]) -> Hypergraph {
        Hypergraph {
            vertex_count: self.vertex_count,
            edges: edges.iter().map(|&i| self.edges[i].clone()).collect(),
        }
    }

    /// Bipartite incidence graph: left vertex i is hyperedge i, right
    /// vertices are the hypergraph vertices.
    pub fn incidence_graph(&self) -> BipartiteGraph {
        BipartiteGraph::from_neighborhoods(self.vertex_count, self.edges.clone())
            .expect("hyperedge vertices are in range")
    }

    /// First size-2 edge with a degree-1 endpoint, as (edge, x, y) where y
    /// has degree 1. If both ends have degree 1, y is the larger one.
    pub fn pendant_edge(&self) -> Option<(usize, usize, usize)> {
        let deg = self.degrees();
        self.edges.iter().enumerate().find_map(|(i, e)| {
            if e.len() != 2 {
                return None;
            }
            let (a, b) = (e[0], e[1]);
            if deg[b] == 1 {
                Some((i, a, b))
            } else if deg[a] == 1 {
                Some((i, b, a))
            } else {
                None
            }
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p hgraph {} {}\n", self.vertex_count, self.edges.len());
        for e in &self.edges {
            let vs: Vec<String> = e.iter().map(usize::to_string).collect();
            out.push_str(&format!("h {}\n", vs.join(" ")));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        Ok(parse_hypergraph_lines(text)?.0)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                let vs: Vec<String> = e.iter().map(usize::to_string).collect();
                format!("{{{}}}", vs.join(","))
            })
            .collect();
        write!(f, "V={} E=[{}]", self.vertex_count, es.join(" "))
    }
}

/// Parses the hypergraph format; also returns the value of an optional
/// `x <vertex>` line.
fn parse_hypergraph_lines(text: &str) -> Result<(Hypergraph, Option<usize>)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut x = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if fields.len() != 4 || fields[1] != "hgraph" {
                    return Err(Error::parse(lineno, "expected `p hgraph <vertices> <edges>`"));
                }
                header = Some((
                    parse_index(fields[2], lineno)?,
                    parse_index(fields[3], lineno)?,
                    lineno,
                ));
            }
            "h" => {
                if header.is_none() {
                    return Err(Error::parse(lineno, "hyperedge before header"));
                }
                if !(3..=4).contains(&fields.len()) {
                    return Err(Error::parse(lineno, "expected `h v1 v2 [v3]`"));
                }
                let e = fields[1..]
                    .iter()
                    .map(|f| parse_index(f, lineno))
                    .collect::<Result<Vec<_>>>()?;
                edges.push(e);
            }
            "x" => {
                if fields.len() != 2 {
                    return Err(Error::parse(lineno, "expected `x <vertex>`"));
                }
                x = Some(parse_index(fields[1], lineno)?);
            }
            other => return Err(Error::parse(lineno, format!("unknown line type {other:?}"))),
        }
    }
    let Some((vc, ec, hline)) = header else {
        return Err(Error::parse(0, "missing `p hgraph` header"));
    };
    if edges.len() != ec {
        return Err(Error::parse(
            hline,
            format!("header declares {ec} hyperedges, found {}", edges.len()),
        ));
    }
    let h = Hypergraph::new(vc, edges).map_err(|e| Error::parse(0, e))?;
    if let Some(v) = x {
        if v >= vc {
            return Err(Error::parse(0, format!("x = {v} out of range")));
        }
    }
    Ok((h, x))
}

/// Hypergraph view of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphView {
    pub hypergraph: Hypergraph,
    /// Hyperedge index of every left vertex (the identity: edge i is N(i)).
    pub edge_of_left: Vec<usize>,
    /// Right vertex of every hypergraph vertex.
    pub right_of_vertex: Vec<usize>,
}

/// H = (N_G(L), {N_G(l)}), after checking that every left vertex has
/// degree 2 or 3 and that neighbourhoods are pairwise distinct.
pub fn to_hypergraph(g: &BipartiteGraph) -> Result<HypergraphView> {
    for l in 0..g.left_count() {
        let d = g.left_degree(l);
        if !(2..=3).contains(&d) {
            return Err(Error::invalid(format!(
                "left vertex {l} has degree {d}, expected 2 or 3"
            )));
        }
    }
    let mut first: BTreeMap<&[usize], usize> = BTreeMap::new();
    for l in 0..g.left_count() {
        if let Some(&k) = first.get(g.left_neighbors(l)) {
            return Err(Error::invalid(format!(
                "duplicate neighborhood: left vertices {k} and {l}"
            )));
        }
        first.insert(g.left_neighbors(l), l);
    }
    let all: Vec<usize> = (0..g.left_count()).collect();
    let right_of_vertex: Vec<usize> = g.neighborhood(&all).into_iter().collect();
    let index: BTreeMap<usize, usize> = right_of_vertex
        .iter()
        .enumerate()
        .map(|(i, &r)| (r, i))
        .collect();
    let edges = (0..g.left_count())
        .map(|l| g.left_neighbors(l).iter().map(|r| index[r]).collect())
        .collect();
    Ok(HypergraphView {
        hypergraph: Hypergraph::new(right_of_vertex.len(), edges)?,
        edge_of_left: all,
        right_of_vertex,
    })
}

/// Injective choice of a vertex pair inside each covered hyperedge, with no
/// three distinct edges chained by intersecting pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoPathCover {
    pub assignment: BTreeMap<usize, [usize; 2]>,
}

impl TwoPathCover {
    pub fn uses(&self, v: usize) -> bool {
        self.assignment.values().any(|p| p.contains(&v))
    }
}

fn meets(p: &[usize; 2], q: &[usize; 2]) -> bool {
    p.iter().any(|v| q.contains(v))
}

/// Checks the 2-path cover conditions for `cover` over `targets`.
pub fn validate_2path_cover(h: &Hypergraph, targets: &[usize], cover: &TwoPathCover) -> Result<(), String> {
    let keys: BTreeSet<usize> = cover.assignment.keys().copied().collect();
    let want: BTreeSet<usize> = targets.iter().copied().collect();
    if keys != want {
        return Err(format!("covers edges {keys:?}, expected {want:?}"));
    }
    let mut pairs = BTreeSet::new();
    for (&e, p) in &cover.assignment {
        if e >= h.edge_count() {
            return Err(format!("edge {e} out of range"));
        }
        if p[0] == p[1] || !h.edge(e).contains(&p[0]) || !h.edge(e).contains(&p[1]) {
            return Err(format!("pair {p:?} is not a 2-subset of edge {e}"));
        }
        let mut s = *p;
        s.sort_unstable();
        if !pairs.insert(s) {
            return Err(format!("pair {p:?} used twice"));
        }
    }
    for (&e, p) in &cover.assignment {
        let touching: Vec<usize> = cover
            .assignment
            .iter()
            .filter(|(&f, q)| f != e && meets(p, q))
            .map(|(&f, _)| f)
            .collect();
        if touching.len() > 1 {
            return Err(format!("edges {:?}, {e}, {:?} form a chain of three", touching[0], touching[1]));
        }
    }
    Ok(())
}

/// Exact search for a 2-path cover of `targets` never using a vertex of
/// `avoid`. Pairs are tried in lexicographic order.
pub fn find_2path_cover(
    h: &Hypergraph,
    targets: &[usize],
    avoid: &[usize],
    caps: &Caps,
) -> Result<Option<TwoPathCover>> {
    let mut t = targets.to_vec();
    t.sort_unstable();
    t.dedup();
    if t.len() > caps.hyper_edges {
        return Err(Error::cap("hyperedges to cover", t.len(), caps.hyper_edges));
    }
    if let Some(&e) = t.iter().find(|&&e| e >= h.edge_count()) {
        return Err(Error::invalid(format!("edge {e} out of range")));
    }
    let mut banned = vec![false; h.vertex_count()];
    for &v in avoid {
        if v < banned.len() {
            banned[v] = true;
        }
    }
    let mut chosen: Vec<[usize; 2]> = Vec::new();
    let mut links: Vec<usize> = Vec::new();
    if pair_search(h, &t, 0, &banned, &mut chosen, &mut links) {
        Ok(Some(TwoPathCover {
            assignment: t.iter().copied().zip(chosen).collect(),
        }))
    } else {
        Ok(None)
    }
}

fn pair_search(
    h: &Hypergraph,
    t: &[usize],
    i: usize,
    banned: &[bool],
    chosen: &mut Vec<[usize; 2]>,
    links: &mut Vec<usize>,
) -> bool {
    if i == t.len() {
        return true;
    }
    let e = h.edge(t[i]);
    for a in 0..e.len() {
        for b in a + 1..e.len() {
            let p = [e[a], e[b]];
            if banned[p[0]] || banned[p[1]] {
                continue;
            }
            let mut hit = None;
            let mut ok = true;
            for (j, q) in chosen.iter().enumerate() {
                if meets(&p, q) {
                    if hit.is_some() || q == &p || links[j] > 0 {
                        ok = false;
                        break;
                    }
                    hit = Some(j);
                }
            }
            if !ok {
                continue;
            }
            if let Some(j) = hit {
                links[j] += 1;
            }
            chosen.push(p);
            links.push(usize::from(hit.is_some()));
            if pair_search(h, t, i + 1, banned, chosen, links) {
                return true;
            }
            chosen.pop();
            links.pop();
            if let Some(j) = hit {
                links[j] -= 1;
            }
        }
    }
    false
}

/// Whether the edge subset is 2-path coverable (convenience wrapper).
pub fn coverable(h: &Hypergraph, targets: &[usize]) -> bool {
    find_2path_cover(h, targets, &[], &Caps { hyper_edges: usize::MAX, ..Caps::default() })
        .expect("uncapped")
        .is_some()
}

fn all_edges(h: &Hypergraph) -> Vec<usize> {
    (0..h.edge_count()).collect()
}

/// No 2-path cover of all edges, but one for every proper subset.
pub fn is_minimal_uncoverable(h: &Hypergraph) -> bool {
    let all = all_edges(h);
    if coverable(h, &all) {
        return false;
    }
    (0..all.len()).all(|skip| {
        let rest: Vec<usize> = all.iter().copied().filter(|&e| e != skip).collect();
        coverable(h, &rest)
    })
}

/// A reducible configuration: edges over named vertices with pinned degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub note: String,
    pub edges: Vec<Vec<String>>,
    pub degrees: BTreeMap<String, usize>,
}

/// Parses the pattern file format (see `data/reducible.txt`).
pub fn parse_patterns(text: &str) -> Result<Vec<Pattern>> {
    let mut out = Vec::new();
    let mut cur: Option<Pattern> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "pattern" => {
                if cur.is_some() {
                    return Err(Error::parse(lineno, "pattern without `end`"));
                }
                cur = Some(Pattern {
                    name: rest.to_string(),
                    note: String::new(),
                    edges: Vec::new(),
                    degrees: BTreeMap::new(),
                });
            }
            "note" | "edge" | "deg" | "end" => {
                let Some(p) = cur.as_mut() else {
                    return Err(Error::parse(lineno, format!("`{head}` outside a pattern")));
                };
                match head {
                    "note" => p.note = rest.to_string(),
                    "edge" => {
                        let vs: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                        if !(2..=3).contains(&vs.len()) {
                            return Err(Error::parse(lineno, "pattern edge needs 2 or 3 vertices"));
                        }
                        p.edges.push(vs);
                    }
                    "deg" => {
                        let f: Vec<&str> = rest.split_whitespace().collect();
                        if f.len() != 2 {
                            return Err(Error::parse(lineno, "expected `deg <name> <k>`"));
                        }
                        p.degrees.insert(f[0].to_string(), parse_index(f[1], lineno)?);
                    }
                    _ => {
                        let p = cur.take().expect("checked above");
                        if p.edges.is_empty() {
                            return Err(Error::parse(lineno, "pattern has no edges"));
                        }
                        for name in p.degrees.keys() {
                            if !p.edges.iter().any(|e| e.contains(name)) {
                                return Err(Error::parse(lineno, format!("pinned vertex {name} unused")));
                            }
                        }
                        out.push(p);
                    }
                }
            }
            other => return Err(Error::parse(lineno, format!("unknown directive {other:?}"))),
        }
    }
    if cur.is_some() {
        return Err(Error::parse(0, "last pattern lacks `end`"));
    }
    Ok(out)
}

pub fn default_patterns() -> &'static [Pattern] {
    static P: OnceLock<Vec<Pattern>> = OnceLock::new();
    P.get_or_init(|| {
        parse_patterns(include_str!("../data/reducible.txt")).expect("bundled pattern file parses")
    })
}

/// One occurrence of a pattern in a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatch {
    pub pattern: String,
    /// Matched hyperedges, sorted.
    pub edges: Vec<usize>,
    /// Image of every pattern vertex.
    pub vertices: BTreeMap<String, usize>,
}

/// All occurrences of the given patterns, one per (pattern, edge set).
pub fn detect_reducible(h: &Hypergraph, patterns: &[Pattern]) -> Vec<PatternMatch> {
    let deg = h.degrees();
    let mut out = Vec::new();
    for p in patterns {
        let mut seen = BTreeSet::new();
        let mut map = BTreeMap::new();
        let mut used = Vec::new();
        match_pattern(h, &deg, p, 0, &mut map, &mut used, &mut |map, used| {
            let mut es = used.to_vec();
            es.sort_unstable();
            if seen.insert(es.clone()) {
                out.push(PatternMatch {
                    pattern: p.name.clone(),
                    edges: es,
                    vertices: map.clone(),
                });
            }
        });
    }
    out
}

fn match_pattern(
    h: &Hypergraph,
    deg: &[usize],
    p: &Pattern,
    i: usize,
    map: &mut BTreeMap<String, usize>,
    used: &mut Vec<usize>,
    emit: &mut dyn FnMut(&BTreeMap<String, usize>, &[usize]),
) {
    if i == p.edges.len() {
        emit(map, used);
        return;
    }
    let pe = &p.edges[i];
    for (ei, e) in h.edges().iter().enumerate() {
        if e.len() != pe.len() || used.contains(&ei) {
            continue;
        }
        for perm in permutations(e) {
            let mut added = Vec::new();
            let mut ok = true;
            for (name, &v) in pe.iter().zip(&perm) {
                match map.get(name) {
                    Some(&w) if w != v => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        let pinned = p.degrees.get(name);
                        if let Some(&k) = pinned {
                            if deg[v] != k {
                                ok = false;
                                break;
                            }
                        }
                        // pinned vertices are distinct from every other name
                        let clash = map.iter().any(|(n, &w)| {
                            w == v && (pinned.is_some() || p.degrees.contains_key(n))
                        });
                        if clash {
                            ok = false;
                            break;
                        }
                        map.insert(name.clone(), v);
                        added.push(name.clone());
                    }
                }
            }
            if ok {
                used.push(ei);
                match_pattern(h, deg, p, i + 1, map, used, emit);
                used.pop();
            }
            for n in added {
                map.remove(&n);
            }
        }
    }
}

fn permutations(e: &[usize]) -> Vec<Vec<usize>> {
    match e.len() {
        2 => vec![vec![e[0], e[1]], vec![e[1], e[0]]],
        _ => {
            let (a, b, c) = (e[0], e[1], e[2]);
            vec![
                vec![a, b, c],
                vec![a, c, b],
                vec![b, a, c],
                vec![b, c, a],
                vec![c, a, b],
                vec![c, b, a],
            ]
        }
    }
}

/// A 2-path cover of the matched edges using only pinned vertices of the
/// occurrence, whose incident edges all lie inside the occurrence.
pub fn local_cover(h: &Hypergraph, m: &PatternMatch, patterns: &[Pattern]) -> Option<TwoPathCover> {
    let p = patterns.iter().find(|p| p.name == m.pattern)?;
    let pinned: BTreeSet<usize> = p.degrees.keys().filter_map(|n| m.vertices.get(n).copied()).collect();
    let inside: BTreeSet<usize> = m.edges.iter().copied().collect();
    for &v in &pinned {
        let own: BTreeSet<usize> = (0..h.edge_count()).filter(|&e| h.edge(e).contains(&v)).collect();
        if !own.is_subset(&inside) {
            return None;
        }
    }
    let avoid: Vec<usize> = (0..h.vertex_count()).filter(|v| !pinned.contains(v)).collect();
    find_2path_cover(h, &m.edges, &avoid, &Caps::default()).ok().flatten()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// One evaluated step of the counting argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
    pub holds: bool,
}

impl Check {
    fn new(label: &str, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let holds = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        };
        Check {
            label: label.to_string(),
            lhs,
            relation,
            rhs,
            holds,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        write!(
            f,
            "{:<40} {} {} {}  [{}]",
            self.label,
            format_rational(&self.lhs),
            rel,
            format_rational(&self.rhs),
            if self.holds { "holds" } else { "fails" }
        )
    }
}

/// Every quantity of the discharging argument evaluated on one hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeReport {
    pub epsilon: Rational,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub degree_sum: usize,
    pub average_degree: Rational,
    /// D: vertices of degree 1.
    pub degree1_vertices: Vec<usize>,
    /// Edges containing a degree-1 vertex.
    pub degree1_edges: Vec<usize>,
    /// E_2: edges of size 2.
    pub size2_edges: Vec<usize>,
    /// Degree-1 edges of size 2.
    pub degree1_size2_edges: Vec<usize>,
    /// Vertex charges after discharging.
    pub vertex_charges: Vec<i64>,
    /// Edge charges after discharging.
    pub edge_charges: Vec<i64>,
    /// Z: vertices left with charge 0.
    pub zero_charge_vertices: Vec<usize>,
    /// Total charge summed vertex by vertex.
    pub total_charge: i64,
    /// Total charge from 3|E| - |E2| - 3|DE| + |DE2|.
    pub total_charge_formula: i64,
    pub reducible: Vec<PatternMatch>,
    pub preconditions: Vec<Check>,
    pub chain: Vec<Check>,
    /// Preconditions and every step of the chain hold.
    pub fully_consistent: bool,
}

impl ChargeReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.preconditions.iter().chain(&self.chain).find(|c| !c.holds)
    }
}

impl fmt::Display for ChargeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "epsilon            {}", format_rational(&self.epsilon))?;
        writeln!(f, "|V| |E|            {} {}", self.vertex_count, self.edge_count)?;
        writeln!(f, "average degree     {}", format_rational(&self.average_degree))?;
        writeln!(f, "|D| |DE| |E2| |DE2| {} {} {} {}", self.degree1_vertices.len(), self.degree1_edges.len(), self.size2_edges.len(), self.degree1_size2_edges.len())?;
        writeln!(f, "|Z|                {}", self.zero_charge_vertices.len())?;
        writeln!(f, "total charge       {} (formula {})", self.total_charge, self.total_charge_formula)?;
        for m in &self.reducible {
            writeln!(f, "reducible          {} on edges {:?}", m.pattern, m.edges)?;
        }
        for c in self.preconditions.iter().chain(&self.chain) {
            writeln!(f, "{c}")?;
        }
        write!(f, "fully consistent   {}", self.fully_consistent)
    }
}

/// Runs the discharging argument on `h` and evaluates every inequality of
/// the chain. The default pattern set decides reducibility.
pub fn discharge_audit(h: &Hypergraph, epsilon: &Rational) -> Result<ChargeReport> {
    discharge_audit_with(h, epsilon, default_patterns())
}

pub fn discharge_audit_with(h: &Hypergraph, epsilon: &Rational, patterns: &[Pattern]) -> Result<ChargeReport> {
    if *epsilon <= Rational::zero() || *epsilon >= rat(1, 2) {
        return Err(Error::invalid("epsilon must lie in (0, 1/2)"));
    }
    let eps = epsilon.clone();
    let deg = h.degrees();
    let nv = h.vertex_count();
    let ne = h.edge_count();
    let degree_sum: usize = deg.iter().sum();
    let average_degree = if nv == 0 {
        Rational::zero()
    } else {
        Rational::new(int(degree_sum).to_integer(), int(nv).to_integer())
    };
    let d1: Vec<usize> = (0..nv).filter(|&v| deg[v] == 1).collect();
    let de: Vec<usize> = (0..ne).filter(|&e| h.edge(e).iter().any(|&v| deg[v] == 1)).collect();
    let e2: Vec<usize> = (0..ne).filter(|&e| h.edge(e).len() == 2).collect();
    let de2: Vec<usize> = de.iter().copied().filter(|e| e2.contains(e)).collect();

    let mut vertex_charges: Vec<i64> = deg.iter().map(|&d| d as i64).collect();
    let mut edge_charges = vec![0i64; ne];
    for &e in &de {
        edge_charges[e] = -(h.edge(e).len() as i64);
        for &v in h.edge(e) {
            vertex_charges[v] -= 1;
            edge_charges[e] += 1;
        }
    }
    let z: Vec<usize> = (0..nv).filter(|&v| vertex_charges[v] == 0).collect();
    let total_charge: i64 = vertex_charges.iter().sum::<i64>() + edge_charges.iter().sum::<i64>();
    let total_charge_formula =
        3 * ne as i64 - e2.len() as i64 - 3 * de.len() as i64 + de2.len() as i64;

    let reducible = detect_reducible(h, patterns);
    let ab = reducible.iter().filter(|m| m.pattern == "a" || m.pattern == "b").count();
    let cde = reducible
        .iter()
        .filter(|m| m.pattern == "c" || m.pattern == "d" || m.pattern == "e")
        .count();
    let v = int(nv);
    let e = int(ne);
    let two = int(2);
    let one = Rational::one();
    let two_m = &two - &eps;
    let preconditions = vec![
        Check::new("no configuration a/b", int(ab), Relation::Eq, Rational::zero()),
        Check::new("no configuration c/d/e", int(cde), Relation::Eq, Rational::zero()),
        Check::new("|V| >= (2-eps)|E|", v.clone(), Relation::Ge, &two_m * &e),
    ];
    let zd: Vec<usize> = z.iter().copied().filter(|&x| deg[x] != 1).collect();
    let zd_deg_sum: usize = zd.iter().map(|&x| deg[x]).sum();
    let zd_min_deg = zd.iter().map(|&x| deg[x]).min().unwrap_or(3);
    let nd = int(d1.len());
    let chain = vec![
        Check::new("sum of degrees <= 3|E|", int(degree_sum), Relation::Le, int(3) * &e),
        Check::new("d <= 3/(2-eps)", average_degree.clone(), Relation::Le, int(3) / &two_m),
        Check::new("|D| = |DE|", nd.clone(), Relation::Eq, int(de.len())),
        Check::new("|DE| <= |E|", int(de.len()), Relation::Le, e.clone()),
        Check::new("|E| <= |V|/(2-eps)", e.clone(), Relation::Le, &v / &two_m),
        Check::new("(1-2eps)/(2-eps)|V| <= |D|", (&one - &two * &eps) / &two_m * &v, Relation::Le, nd.clone()),
        Check::new("C = 3|E|-|E2|-3|DE|+|DE2|", int_i(total_charge), Relation::Eq, int_i(total_charge_formula)),
        Check::new("C <= 3|E| - 3|D|", int_i(total_charge), Relation::Le, int(3) * &e - int(3) * &nd),
        Check::new("3|E| - 3|D| <= 6eps/(2-eps)|V|", int(3) * &e - int(3) * &nd, Relation::Le, int(6) * &eps / &two_m * &v),
        Check::new("|V \\ Z| <= C", int(nv - z.len()), Relation::Le, int_i(total_charge)),
        Check::new("|Z| >= (2-7eps)/(2-eps)|V|", int(z.len()), Relation::Ge, (&two - int(7) * &eps) / &two_m * &v),
        Check::new("|Z\\D| >= (1-7eps)/(2-eps)|V|", int(zd.len()), Relation::Ge, (&one - int(7) * &eps) / &two_m * &v),
        Check::new("min degree on Z\\D >= 3", int(zd_min_deg), Relation::Ge, int(3)),
        Check::new("d|V| >= |D| + 3|Z\\D|", int(degree_sum), Relation::Ge, &nd + int(3) * int(zd.len())),
        Check::new("sum over D and Z\\D >= |D| + 3|Z\\D|", int(d1.len() + zd_deg_sum), Relation::Ge, &nd + int(3) * int(zd.len())),
        Check::new("|D| + 3|Z\\D| >= (4-23eps)/(2-eps)|V|", &nd + int(3) * int(zd.len()), Relation::Ge, (int(4) - int(23) * &eps) / &two_m * &v),
        Check::new("3 >= 4 - 23eps", int(3), Relation::Ge, int(4) - int(23) * &eps),
    ];
    let fully_consistent = preconditions.iter().chain(&chain).all(|c| c.holds);
    Ok(ChargeReport {
        epsilon: eps,
        vertex_count: nv,
        edge_count: ne,
        degree_sum,
        average_degree,
        degree1_vertices: d1,
        degree1_edges: de,
        size2_edges: e2,
        degree1_size2_edges: de2,
        vertex_charges,
        edge_charges,
        zero_charge_vertices: z,
        total_charge,
        total_charge_formula,
        reducible,
        preconditions,
        chain,
        fully_consistent,
    })
}

fn int_i(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Itemized check of the (2-eps)-Hall hypotheses on a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallHypotheses {
    /// Left vertices of degree above 3.
    pub high_degree: Vec<usize>,
    /// First pair of degree-3 left vertices with equal neighbourhoods.
    pub duplicate_pair: Option<(usize, usize)>,
    pub neighborhood_size: usize,
    pub required: Rational,
    pub expansion_ok: bool,
    pub all_pass: bool,
}

impl fmt::Display for HallHypotheses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "left degree <= 3        {} {:?}", mark(self.high_degree.is_empty()), self.high_degree)?;
        match self.duplicate_pair {
            Some((a, b)) => writeln!(f, "distinct neighborhoods  FAIL duplicate pair ({a},{b})")?,
            None => writeln!(f, "distinct neighborhoods  pass")?,
        }
        write!(
            f,
            "|N(L)| >= (2-eps)|L|    {} {} >= {}",
            mark(self.expansion_ok),
            self.neighborhood_size,
            format_rational(&self.required)
        )
    }
}

pub fn check_hall_hypotheses(g: &BipartiteGraph, epsilon: &Rational) -> HallHypotheses {
    let high_degree: Vec<usize> = (0..g.left_count()).filter(|&l| g.left_degree(l) > 3).collect();
    let mut duplicate_pair = None;
    let mut seen: BTreeMap<&[usize], usize> = BTreeMap::new();
    for l in 0..g.left_count() {
        if g.left_degree(l) != 3 {
            continue;
        }
        if let Some(&k) = seen.get(g.left_neighbors(l)) {
            duplicate_pair = Some((k, l));
            break;
        }
        seen.insert(g.left_neighbors(l), l);
    }
    let all: Vec<usize> = (0..g.left_count()).collect();
    let neighborhood_size = g.neighborhood(&all).len();
    let required = (int(2) - epsilon) * int(g.left_count());
    let expansion_ok = int(neighborhood_size) >= required;
    HallHypotheses {
        all_pass: high_degree.is_empty() && duplicate_pair.is_none() && expansion_ok,
        high_degree,
        duplicate_pair,
        neighborhood_size,
        required,
        expansion_ok,
    }
}

/// Depth-first enumeration of hypergraphs in canonical form: edges sorted
/// and strictly increasing, vertices introduced in increasing order with no
/// gaps. Every hypergraph without isolated vertices has a relabeling of
/// this form (its lexicographically least one). `visit` sees each prefix
/// with its vertex count and returns whether to descend further.
pub fn enumerate_canonical<F>(max_edges: usize, max_vertices: usize, visit: &mut F)
where
    F: FnMut(&[Vec<usize>], usize) -> bool,
{
    let mut edges = Vec::new();
    canonical_dfs(&mut edges, 0, max_edges, max_vertices, visit);
}

/// Candidate next edges of a canonical prefix.
pub fn canonical_extensions(edges: &[Vec<usize>], nv: usize, max_vertices: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for size in 2..=3 {
        // choose k old vertices, then size-k fresh ones nv, nv+1, ...
        for k in 0..=size {
            let fresh = size - k;
            if nv + fresh > max_vertices {
                continue;
            }
            for old in combinations(nv, k) {
                let mut e = old;
                e.extend(nv..nv + fresh);
                out.push((e, nv + fresh));
            }
        }
    }
    out.sort();
    let last = edges.last();
    out.retain(|(e, _)| last.is_none_or(|l| e > l));
    out
}

fn canonical_dfs<F>(edges: &mut Vec<Vec<usize>>, nv: usize, max_edges: usize, max_vertices: usize, visit: &mut F)
where
    F: FnMut(&[Vec<usize>], usize) -> bool,
{
    if edges.len() == max_edges {
        return;
    }
    for (e, nv2) in canonical_extensions(edges, nv, max_vertices) {
        edges.push(e);
        if visit(edges, nv2) {
            canonical_dfs(edges, nv2, max_edges, max_vertices, visit);
        }
        edges.pop();
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Result of the desk-scale Hall verification.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HallVerifyReport {
    /// Hypergraphs meeting the hypotheses that were tested.
    pub checked: usize,
    /// Hypotheses hold, every proper subset coverable, full set not.
    pub counterexamples: Vec<Hypergraph>,
}

/// Checks the (2-eps)-Hall statement on every canonical hypergraph with at
/// most `max_edges` edges (equivalently every bipartite graph with left
/// degrees 2..3, distinct neighbourhoods and at most `max_edges` left
/// vertices). Prefixes that are not coverable are cut: all their extensions
/// contain an uncoverable proper subset.
pub fn hall_verify(max_edges: usize, epsilon: &Rational) -> HallVerifyReport {
    let two_m = int(2) - epsilon;
    let max_vertices = 3 * max_edges;
    let roots = canonical_extensions(&[], 0, max_vertices);
    let seconds: Vec<Vec<Vec<usize>>> = roots
        .iter()
        .flat_map(|(e, nv)| {
            let mut v = vec![vec![e.clone()]];
            if max_edges >= 2 {
                for (f, _) in canonical_extensions(std::slice::from_ref(e), *nv, max_vertices) {
                    v.push(vec![e.clone(), f]);
                }
            }
            v
        })
        .collect();
    let parts: Vec<HallVerifyReport> = seconds
        .par_iter()
        .map(|prefix| {
            let mut rep = HallVerifyReport::default();
            let nv = prefix.iter().flatten().max().map_or(0, |m| m + 1);
            let mut edges = prefix.clone();
            let mut visit = |edges: &[Vec<usize>], nv: usize| hall_node(edges, nv, &two_m, &mut rep);
            if visit(&edges, nv) && prefix.len() == 2 {
                canonical_dfs(&mut edges, nv, max_edges, max_vertices, &mut visit);
            }
            rep
        })
        .collect();
    let mut total = HallVerifyReport::default();
    for p in parts {
        total.checked += p.checked;
        total.counterexamples.extend(p.counterexamples);
    }
    total
}

fn hall_node(edges: &[Vec<usize>], nv: usize, two_m: &Rational, rep: &mut HallVerifyReport) -> bool {
    let h = Hypergraph {
        vertex_count: nv,
        edges: edges.to_vec(),
    };
    let all = all_edges(&h);
    let full = coverable(&h, &all);
    if int(nv) >= two_m * int(edges.len()) {
        rep.checked += 1;
        if !full && is_minimal_uncoverable(&h) {
            rep.counterexamples.push(h);
        }
    }
    full
}

/// Lexicographically first hypergraph on 6 vertices with 4 edges, no
/// isolated vertex, no 2-path cover, and a cover for every proper subset.
pub fn find_base_hypergraph() -> Result<Hypergraph> {
    static BASE: OnceLock<Option<Hypergraph>> = OnceLock::new();
    BASE.get_or_init(|| minimal_uncoverable_on(6, 4).into_iter().next())
        .clone()
        .ok_or_else(|| Error::inconsistency("no 6-vertex 4-edge minimal uncoverable hypergraph"))
}

/// All minimal uncoverable hypergraphs with exactly `nv` vertices (none
/// isolated) and `ne` edges over labels 0..nv, in lexicographic order.
pub fn minimal_uncoverable_on(nv: usize, ne: usize) -> Vec<Hypergraph> {
    let mut cands: Vec<Vec<usize>> = combinations(nv, 2);
    cands.extend(combinations(nv, 3));
    cands.sort();
    let mut out = Vec::new();
    for pick in combinations(cands.len(), ne) {
        let edges: Vec<Vec<usize>> = pick.iter().map(|&i| cands[i].clone()).collect();
        let used: BTreeSet<usize> = edges.iter().flatten().copied().collect();
        if used.len() != nv {
            continue;
        }
        let h = Hypergraph {
            vertex_count: nv,
            edges,
        };
        if is_minimal_uncoverable(&h) {
            out.push(h);
        }
    }
    out
}

/// Amplification gadget: hypergraph plus the vertex `x` it is glued along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub hypergraph: Hypergraph,
    pub x: usize,
}

impl Gadget {
    pub fn to_text(&self) -> String {
        format!("{}x {}\n", self.hypergraph.to_text(), self.x)
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let (h, x) = parse_hypergraph_lines(text)?;
        let x = x.ok_or_else(|| Error::parse(0, "gadget file lacks an `x <vertex>` line"))?;
        Ok(Gadget { hypergraph: h, x })
    }
}

/// Interface properties a gadget must have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCheck {
    /// No 2-path cover avoids x.
    pub every_cover_uses_x: bool,
    /// Every proper edge subset has a cover avoiding x.
    pub proper_subsets_avoid_x: bool,
    /// Some full cover puts x in a pair that touches no other pair.
    pub lone_x_cover: bool,
    /// A size-2 pendant edge away from x exists.
    pub pendant_away_from_x: bool,
    pub vertex_delta: isize,
    pub edge_delta: isize,
}

impl GadgetCheck {
    pub fn ok(&self) -> bool {
        self.every_cover_uses_x
            && self.proper_subsets_avoid_x
            && self.lone_x_cover
            && self.pendant_away_from_x
            && self.vertex_delta == 10
            && self.edge_delta == 6
    }
}

pub fn check_gadget(g: &Gadget) -> GadgetCheck {
    let h = &g.hypergraph;
    let all = all_edges(h);
    let big = Caps {
        hyper_edges: usize::MAX,
        ..Caps::default()
    };
    let every_cover_uses_x = find_2path_cover(h, &all, &[g.x], &big).expect("uncapped").is_none();
    let proper_subsets_avoid_x = (0..all.len()).all(|skip| {
        let rest: Vec<usize> = all.iter().copied().filter(|&e| e != skip).collect();
        find_2path_cover(h, &rest, &[g.x], &big).expect("uncapped").is_some()
    });
    let lone_x_cover = lone_cover(h, g.x);
    let deg = h.degrees();
    let pendant_away_from_x = h
        .edges()
        .iter()
        .any(|e| e.len() == 2 && !e.contains(&g.x) && (deg[e[0]] == 1 || deg[e[1]] == 1));
    GadgetCheck {
        every_cover_uses_x,
        proper_subsets_avoid_x,
        lone_x_cover,
        pendant_away_from_x,
        vertex_delta: h.vertex_count() as isize - 2,
        edge_delta: h.edge_count() as isize - 1,
    }
}

/// Whether some full cover assigns x to a pair touching no other pair.
fn lone_cover(h: &Hypergraph, x: usize) -> bool {
    let all = all_edges(h);
    let mut found = false;
    enumerate_covers(h, &all, &mut |cover: &[[usize; 2]]| {
        let holder: Vec<&[usize; 2]> = cover.iter().filter(|p| p.contains(&x)).collect();
        if let [p] = holder.as_slice() {
            if cover.iter().filter(|q| meets(p, q)).count() == 1 {
                found = true;
            }
        }
        found
    });
    found
}

/// Calls `f` on every 2-path cover of `targets` until it returns true.
pub fn enumerate_covers(h: &Hypergraph, targets: &[usize], f: &mut dyn FnMut(&[[usize; 2]]) -> bool) {
    fn rec(
        h: &Hypergraph,
        t: &[usize],
        i: usize,
        chosen: &mut Vec<[usize; 2]>,
        links: &mut Vec<usize>,
        f: &mut dyn FnMut(&[[usize; 2]]) -> bool,
    ) -> bool {
        if i == t.len() {
            return f(chosen);
        }
        let e = h.edge(t[i]);
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                let p = [e[a], e[b]];
                let mut hit = None;
                let mut ok = true;
                for (j, q) in chosen.iter().enumerate() {
                    if meets(&p, q) {
                        if hit.is_some() || q == &p || links[j] > 0 {
                            ok = false;
                            break;
                        }
                        hit = Some(j);
                    }
                }
                if !ok {
                    continue;
                }
                if let Some(j) = hit {
                    links[j] += 1;
                }
                chosen.push(p);
                links.push(usize::from(hit.is_some()));
                let stop = rec(h, t, i + 1, chosen, links, f);
                chosen.pop();
                links.pop();
                if let Some(j) = hit {
                    links[j] -= 1;
                }
                if stop {
                    return true;
                }
            }
        }
        false
    }
    rec(h, targets, 0, &mut Vec::new(), &mut Vec::new(), f);
}

/// Replaces the pendant edge {x, y} of `base` (y of degree 1) by a copy of
/// `gadget` glued along x. Returns the result and the image of the
/// gadget's vertices.
fn glue(base: &Hypergraph, gadget: &Gadget) -> Result<(Hypergraph, Vec<usize>)> {
    let (ei, x, y) = base
        .pendant_edge()
        .ok_or_else(|| Error::invalid("hypergraph has no size-2 pendant edge"))?;
    let relabel = |v: usize| if v > y { v - 1 } else { v };
    let mut edges: Vec<Vec<usize>> = base
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != ei)
        .map(|(_, e)| e.iter().map(|&v| relabel(v)).collect())
        .collect();
    let mut next = base.vertex_count() - 1;
    let mut image = vec![0; gadget.hypergraph.vertex_count()];
    for (v, slot) in image.iter_mut().enumerate() {
        if v == gadget.x {
            *slot = relabel(x);
        } else {
            *slot = next;
            next += 1;
        }
    }
    for e in gadget.hypergraph.edges() {
        edges.push(e.iter().map(|&v| image[v]).collect());
    }
    Ok((Hypergraph::new(next, edges)?, image))
}

/// Applies the amplification step `n` times.
pub fn amplify(base: &Hypergraph, gadget: &Gadget, n: usize) -> Result<Hypergraph> {
    let mut h = base.clone();
    for _ in 0..n {
        h = glue(&h, gadget)?.0;
    }
    Ok(h)
}

/// Directory for the on-disk gadget cache, from `VWSPACE_CACHE`.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("VWSPACE_CACHE").map(PathBuf::from)
}

/// The amplification gadget: 12 vertices, 7 edges, found by search.
///
/// Candidates are two-block chains. A block is a 6-vertex, 4-edge minimal
/// uncoverable hypergraph with x added to one of its size-2 edges; the
/// second block (with its own x) is glued onto a pendant edge of the first.
/// The first candidate passing `check_gadget` is returned.
pub fn find_gadget() -> Result<Gadget> {
    static GADGET: OnceLock<std::result::Result<Gadget, String>> = OnceLock::new();
    GADGET
        .get_or_init(|| {
            if let Some(g) = read_cached_gadget() {
                return Ok(g);
            }
            let g = search_gadget().ok_or_else(|| "gadget search exhausted its bounds".to_string())?;
            write_cached_gadget(&g);
            Ok(g)
        })
        .clone()
        .map_err(Error::inconsistency)
}

fn read_cached_gadget() -> Option<Gadget> {
    let path = cache_dir()?.join("gadget.hg");
    let text = std::fs::read_to_string(path).ok()?;
    let g = Gadget::parse_text(&text).ok()?;
    check_gadget(&g).ok().then_some(g)
}

fn write_cached_gadget(g: &Gadget) {
    let Some(dir) = cache_dir() else { return };
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let tmp = dir.join(format!("gadget.hg.{}.tmp", std::process::id()));
    if std::fs::write(&tmp, g.to_text()).is_ok() {
        let _ = std::fs::rename(&tmp, dir.join("gadget.hg"));
    }
}

/// Blocks: minimal uncoverable 6/4 hypergraphs with an extra vertex 6
/// added to one size-2 edge.
fn gadget_blocks() -> Vec<Gadget> {
    let mut out = Vec::new();
    for b in minimal_uncoverable_on(6, 4) {
        for (i, e) in b.edges().iter().enumerate() {
            if e.len() != 2 {
                continue;
            }
            let mut edges = b.edges().to_vec();
            edges[i].push(6);
            if let Ok(h) = Hypergraph::new(7, edges) {
                out.push(Gadget { hypergraph: h, x: 6 });
            }
        }
    }
    out
}

fn search_gadget() -> Option<Gadget> {
    let blocks = gadget_blocks();
    for first in &blocks {
        // the second block is glued onto a pendant edge avoiding x
        let Some(host) = without_x_pendant(first) else { continue };
        for second in &blocks {
            let Ok((h, _)) = glue(&host.0, second) else { continue };
            let g = Gadget { hypergraph: h, x: host.1 };
            if check_gadget(&g).ok() {
                return Some(g);
            }
        }
    }
    None
}

/// Reorders the block's edges so that `pendant_edge` picks an edge that
/// does not contain x. Returns the reordered hypergraph and x.
fn without_x_pendant(block: &Gadget) -> Option<(Hypergraph, usize)> {
    let h = &block.hypergraph;
    let deg = h.degrees();
    let pick = h.edges().iter().position(|e| {
        e.len() == 2 && !e.contains(&block.x) && (deg[e[0]] == 1 || deg[e[1]] == 1)
    })?;
    let mut edges = vec![h.edge(pick).to_vec()];
    edges.extend(
        h.edges()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pick)
            .map(|(_, e)| e.clone()),
    );
    // x must not be the removed degree-1 vertex; it lies outside `pick`
    let reordered = Hypergraph::new(h.vertex_count(), edges).ok()?;
    let (_, _, y) = reordered.pendant_edge()?;
    let x = if block.x > y { block.x - 1 } else { block.x };
    Some((reordered, x))
}

/// Witness that the Hall statement needs eps <= 1/3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub amplifications: usize,
    pub hypergraph: Hypergraph,
}

/// Smallest n with (6 + 10n) >= (2 - eps)(4 + 6n), for eps > 1/3.
pub fn amplifications_needed(epsilon: &Rational) -> Result<usize> {
    if *epsilon <= rat(1, 3) {
        return Err(Error::invalid("the construction needs epsilon > 1/3"));
    }
    let two_m = int(2) - epsilon;
    let mut n = 0;
    while int(6 + 10 * n) < &two_m * int(4 + 6 * n) {
        n += 1;
    }
    Ok(n)
}

/// Amplified base hypergraph for `epsilon` (> 1/3).
pub fn counterexample(epsilon: &Rational) -> Result<Counterexample> {
    let n = amplifications_needed(epsilon)?;
    let base = find_base_hypergraph()?;
    let gadget = find_gadget()?;
    Ok(Counterexample {
        amplifications: n,
        hypergraph: amplify(&base, &gadget, n)?,
    })
}
