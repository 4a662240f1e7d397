use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::cnfspace::{adjacency_graph, tr_encode, AxiomKind, Cnf, EncodedAxiom, Literal, Polynomial, PVar};
use crate::covergame::{init_cover, CoverStrategyState, ResponseStats};
use crate::error::{Error, Result};
use crate::graph::{validate_vw_matching, BipartiteGraph, Component, Vertex, VwMatching};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::Caps;

/// Variable -> value. The twin x̄ reads as 1 - value(x).
pub type PartialAssignment = BTreeMap<usize, bool>;

pub fn value_of(alpha: &PartialAssignment, v: PVar) -> Option<bool> {
    alpha.get(&v.var).map(|&x| v.value(x))
}

/// Definitional check: every variable of the union of the domains takes
/// both values somewhere in the family.
pub fn is_flippable(family: &[PartialAssignment]) -> bool {
    let dom: BTreeSet<usize> = family.iter().flat_map(|a| a.keys().copied()).collect();
    dom.iter().all(|x| {
        let vals: BTreeSet<bool> = family.iter().filter_map(|a| a.get(x).copied()).collect();
        vals.len() == 2
    })
}

/// Non-empty flippable set of assignments over one shared domain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlippableFamily {
    domain: BTreeSet<usize>,
    members: BTreeSet<PartialAssignment>,
}

impl FlippableFamily {
    pub fn new(members: Vec<PartialAssignment>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::invalid("a flippable family needs a member"));
        };
        let domain: BTreeSet<usize> = first.keys().copied().collect();
        if members.iter().any(|a| a.keys().copied().collect::<BTreeSet<_>>() != domain) {
            return Err(Error::invalid("family members have different domains"));
        }
        if !is_flippable(&members) {
            return Err(Error::invalid("family is not flippable"));
        }
        Ok(FlippableFamily {
            domain,
            members: members.into_iter().collect(),
        })
    }

    /// {λ}: the single empty assignment.
    pub fn lambda() -> Self {
        FlippableFamily {
            domain: BTreeSet::new(),
            members: [PartialAssignment::new()].into(),
        }
    }

    pub fn is_lambda(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn domain(&self) -> &BTreeSet<usize> {
        &self.domain
    }

    pub fn members(&self) -> &BTreeSet<PartialAssignment> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members as bit strings over the sorted domain.
    pub fn bitstrings(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|a| a.values().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn from_bitstrings(domain: &[usize], bits: &[&str]) -> Result<Self> {
        let mut d = domain.to_vec();
        d.sort_unstable();
        d.dedup();
        if d.len() != domain.len() || d != domain {
            return Err(Error::invalid("domain must be strictly increasing"));
        }
        let members = bits
            .iter()
            .map(|s| {
                if s.len() != domain.len() || !s.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::invalid(format!("bad bit string {s:?}")));
                }
                Ok(domain.iter().copied().zip(s.chars().map(|c| c == '1')).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        FlippableFamily::new(members)
    }
}

/// H_1 ⊗ ... ⊗ H_t with pairwise disjoint domains. {λ} factors are
/// dropped, so the rank is the factor count. Factors are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ProductFamily {
    factors: Vec<FlippableFamily>,
}

impl ProductFamily {
    pub fn lambda() -> Self {
        ProductFamily::default()
    }

    pub fn new(factors: Vec<FlippableFamily>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for f in factors {
            if f.is_lambda() {
                continue;
            }
            if let Some(x) = f.domain.iter().find(|x| seen.contains(*x)) {
                return Err(Error::invalid(format!("factors share variable x{}", x + 1)));
            }
            seen.extend(f.domain.iter().copied());
            kept.push(f);
        }
        kept.sort();
        Ok(ProductFamily { factors: kept })
    }

    pub fn factors(&self) -> &[FlippableFamily] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        self.factors.iter().flat_map(|f| f.domain.iter().copied()).collect()
    }

    pub fn tensor(&self, other: &ProductFamily) -> Result<Self> {
        let mut fs = self.factors.clone();
        fs.extend(other.factors.iter().cloned());
        ProductFamily::new(fs)
    }

    /// self ⊑ other: every factor of self is a factor of other.
    pub fn is_sub(&self, other: &ProductFamily) -> bool {
        self.factors.iter().all(|f| other.factors.contains(f))
    }

    /// Products over every subset of the factors.
    pub fn restrictions(&self) -> Vec<ProductFamily> {
        let t = self.factors.len();
        (0u32..1 << t)
            .map(|mask| ProductFamily {
                factors: (0..t)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.factors[i].clone())
                    .collect(),
            })
            .collect()
    }

    pub fn contains(&self, alpha: &PartialAssignment) -> bool {
        let dom = self.domain();
        alpha.keys().copied().collect::<BTreeSet<_>>() == dom
            && self.factors.iter().all(|f| {
                let part: PartialAssignment = f.domain.iter().map(|x| (*x, alpha[x])).collect();
                f.members.contains(&part)
            })
    }

    /// Calls `f` on every assignment of the product of the given factors.
    fn for_each_assignment(factors: &[&FlippableFamily], f: &mut dyn FnMut(&PartialAssignment) -> bool) -> bool {
        fn rec(fs: &[&FlippableFamily], acc: &mut PartialAssignment, f: &mut dyn FnMut(&PartialAssignment) -> bool) -> bool {
            let Some((first, rest)) = fs.split_first() else {
                return f(acc);
            };
            for a in &first.members {
                for (&k, &v) in a {
                    acc.insert(k, v);
                }
                let go = rec(rest, acc, f);
                for k in a.keys() {
                    acc.remove(k);
                }
                if !go {
                    return false;
                }
            }
            true
        }
        rec(factors, &mut PartialAssignment::new(), f)
    }

    /// Every assignment of the product.
    pub fn assignments(&self) -> Vec<PartialAssignment> {
        let fs: Vec<&FlippableFamily> = self.factors.iter().collect();
        let mut out = Vec::new();
        Self::for_each_assignment(&fs, &mut |a| {
            out.push(a.clone());
            true
        });
        out
    }

    /// H ⊨ p: p restricted by every assignment of H is the zero
    /// polynomial. Only factors meeting the variables of p matter.
    pub fn satisfies(&self, p: &Polynomial) -> bool {
        let vars = p.variables();
        let fs: Vec<&FlippableFamily> = self
            .factors
            .iter()
            .filter(|f| f.domain.iter().any(|x| vars.contains(x)))
            .collect();
        Self::for_each_assignment(&fs, &mut |a| p.restrict(a).is_zero())
    }
}

impl fmt::Display for ProductFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{{λ}}");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|h| {
                let vs: Vec<String> = h.domain.iter().map(|x| format!("x{}", x + 1)).collect();
                format!("{}:{{{}}}", vs.join(","), h.bitstrings().join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

/// Literal of clause `l` on variable `r`.
fn literal_on(phi: &Cnf, l: usize, r: usize) -> Option<Literal> {
    phi.clauses[l].literals().iter().copied().find(|lit| lit.var == r)
}

/// All assignments over R(component) under which every clause of the
/// component is satisfied by one of its two matched literals. Checked to
/// be non-empty and flippable.
pub fn component_family(phi: &Cnf, g: &BipartiteGraph, component: &Component) -> Result<FlippableFamily> {
    if let Err(v) = validate_vw_matching(g, &VwMatching::new(vec![component.clone()])) {
        return Err(Error::invalid(format!("component {component}: {v}")));
    }
    let vars: Vec<usize> = {
        let mut v = component.right().to_vec();
        v.sort_unstable();
        v
    };
    let mut matched = Vec::new();
    for &l in component.left() {
        let (a, b) = component.matched_pair(l).expect("l is in the component");
        let la = literal_on(phi, l, a).ok_or_else(|| Error::invalid(format!("clause {l} lacks x{}", a + 1)))?;
        let lb = literal_on(phi, l, b).ok_or_else(|| Error::invalid(format!("clause {l} lacks x{}", b + 1)))?;
        matched.push((la, lb));
    }
    let mut members = Vec::new();
    for mask in 0u32..1 << vars.len() {
        let alpha: PartialAssignment = vars.iter().enumerate().map(|(i, &x)| (x, mask >> i & 1 == 1)).collect();
        if matched.iter().all(|(a, b)| a.value(alpha[&a.var]) || b.value(alpha[&b.var])) {
            members.push(alpha);
        }
    }
    if members.is_empty() || !is_flippable(&members) {
        return Err(Error::inconsistency(format!(
            "component {component} gives an empty or non-flippable family"
        )));
    }
    FlippableFamily::new(members)
}

/// Product of the component families; rank = number of components.
pub fn family_of_matching(phi: &Cnf, g: &BipartiteGraph, f: &VwMatching) -> Result<ProductFamily> {
    let fs = f
        .components
        .iter()
        .map(|c| component_family(phi, g, c))
        .collect::<Result<Vec<_>>>()?;
    ProductFamily::new(fs)
}

/// A family of flippable product families.
pub trait Strategy {
    fn is_member(&self, h: &ProductFamily) -> Result<bool>;
    /// Members of rank at most `max_rank`; more than `bound` is an error.
    fn members(&self, max_rank: usize, bound: usize) -> Result<Vec<ProductFamily>>;
    /// A member H' ⊒ H with H' ⊨ axiom, if the strategy provides one.
    fn extend(&self, h: &ProductFamily, axiom: &EncodedAxiom) -> Result<Option<ProductFamily>>;
}

/// A strategy given by the list of its members.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplicitStrategy {
    pub members: BTreeSet<ProductFamily>,
}

impl ExplicitStrategy {
    pub fn new(members: impl IntoIterator<Item = ProductFamily>) -> Self {
        ExplicitStrategy {
            members: members.into_iter().collect(),
        }
    }
}

impl Strategy for ExplicitStrategy {
    fn is_member(&self, h: &ProductFamily) -> Result<bool> {
        Ok(self.members.contains(h))
    }

    fn members(&self, max_rank: usize, bound: usize) -> Result<Vec<ProductFamily>> {
        let out: Vec<ProductFamily> = self.members.iter().filter(|h| h.rank() <= max_rank).cloned().collect();
        if out.len() > bound {
            return Err(Error::cap("strategy members", out.len(), bound));
        }
        Ok(out)
    }

    fn extend(&self, h: &ProductFamily, axiom: &EncodedAxiom) -> Result<Option<ProductFamily>> {
        Ok(self
            .members
            .iter()
            .find(|m| h.is_sub(m) && m.satisfies(&axiom.poly))
            .cloned())
    }
}

/// Every VW component of G: isolated vertices, short and long paths.
pub fn all_components(g: &BipartiteGraph) -> Vec<Component> {
    let mut out: BTreeSet<Component> = (0..g.right_count()).map(Component::isolated).collect();
    for l in 0..g.left_count() {
        let nb = g.left_neighbors(l);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                out.insert(Component::short(a, l, b));
            }
        }
        for &mid in nb {
            for &end in nb.iter().filter(|&&r| r != mid) {
                for &l2 in g.right_neighbors(mid) {
                    if l2 == l {
                        continue;
                    }
                    for &r2 in g.left_neighbors(l2) {
                        if r2 != mid && r2 != end {
                            out.insert(Component::long(end, l, mid, l2, r2));
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Components of G whose right vertex set is exactly `domain`.
pub fn components_on(g: &BipartiteGraph, domain: &BTreeSet<usize>) -> Vec<Component> {
    let d: Vec<usize> = domain.iter().copied().collect();
    let common = |a: usize, b: usize| -> Vec<usize> {
        g.right_neighbors(a)
            .iter()
            .copied()
            .filter(|l| g.right_neighbors(b).contains(l))
            .collect()
    };
    let mut out = BTreeSet::new();
    match d.len() {
        1 => {
            out.insert(Component::isolated(d[0]));
        }
        2 => {
            for l in common(d[0], d[1]) {
                out.insert(Component::short(d[0], l, d[1]));
            }
        }
        3 => {
            for mid in 0..3 {
                let ends: Vec<usize> = (0..3).filter(|&i| i != mid).map(|i| d[i]).collect();
                for l1 in common(ends[0], d[mid]) {
                    for l2 in common(d[mid], ends[1]) {
                        if l1 != l2 {
                            out.insert(Component::long(ends[0], l1, d[mid], l2, ends[1]));
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out.into_iter().collect()
}

/// Cover's strategy read as a family of product families: H_F for every
/// F compatible with M whose banned pair keeps the matching property and
/// the budget. Extensions play the matching CoverGame challenge.
pub struct WinningStrategy {
    pub phi: Cnf,
    pub graph: BipartiteGraph,
    pub state: CoverStrategyState,
    pub mu: usize,
}

/// Wraps an initialized Cover strategy for φ's adjacency graph.
pub fn extract_strategy(phi: &Cnf, state: CoverStrategyState, mu: usize) -> Result<WinningStrategy> {
    let graph = adjacency_graph(phi);
    if graph != state.graph {
        return Err(Error::invalid("strategy state was built for a different graph"));
    }
    Ok(WinningStrategy {
        phi: phi.clone(),
        graph,
        state,
        mu,
    })
}

impl WinningStrategy {
    /// VW-matchings F with H_F = h.
    pub fn matchings_of(&self, h: &ProductFamily) -> Result<Vec<VwMatching>> {
        let mut options: Vec<Vec<Component>> = Vec::new();
        for factor in h.factors() {
            let mut opts = Vec::new();
            for c in components_on(&self.graph, factor.domain()) {
                if component_family(&self.phi, &self.graph, &c)? == *factor {
                    opts.push(c);
                }
            }
            if opts.is_empty() {
                return Ok(Vec::new());
            }
            options.push(opts);
        }
        let mut out = Vec::new();
        let mut pick = Vec::new();
        fn rec(options: &[Vec<Component>], pick: &mut Vec<Component>, out: &mut Vec<VwMatching>) {
            let Some((first, rest)) = options.split_first() else {
                out.push(VwMatching::new(pick.clone()));
                return;
            };
            for c in first {
                pick.push(c.clone());
                rec(rest, pick, out);
                pick.pop();
            }
        }
        rec(&options, &mut pick, &mut out);
        Ok(out)
    }

    fn member_matching(&self, h: &ProductFamily) -> Result<Option<VwMatching>> {
        for f in self.matchings_of(h)? {
            if self.state.is_member(&f)? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    /// The component each factor of `h` came from, in factor order.
    pub fn component_table(&self, h: &ProductFamily) -> Result<Vec<(Component, FlippableFamily)>> {
        let f = self
            .member_matching(h)?
            .ok_or_else(|| Error::invalid("not a member of the strategy"))?;
        f.components
            .iter()
            .map(|c| Ok((c.clone(), component_family(&self.phi, &self.graph, c)?)))
            .collect()
    }
}

impl Strategy for WinningStrategy {
    fn is_member(&self, h: &ProductFamily) -> Result<bool> {
        Ok(self.member_matching(h)?.is_some())
    }

    fn members(&self, max_rank: usize, bound: usize) -> Result<Vec<ProductFamily>> {
        let comps = all_components(&self.graph);
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        while let Some((idx, start)) = stack.pop() {
            let f = VwMatching::new(idx.iter().map(|&i| comps[i].clone()).collect());
            let h = family_of_matching(&self.phi, &self.graph, &f)?;
            if seen.insert(h.clone()) {
                out.push(h);
                if out.len() > bound {
                    return Err(Error::cap("strategy members", out.len(), bound));
                }
            }
            if idx.len() == max_rank {
                continue;
            }
            for i in (start..comps.len()).rev() {
                let mut next = f.clone();
                next.components.push(comps[i].clone());
                if self.state.is_member(&next)? {
                    let mut j = idx.clone();
                    j.push(i);
                    stack.push((j, i + 1));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn extend(&self, h: &ProductFamily, axiom: &EncodedAxiom) -> Result<Option<ProductFamily>> {
        let Some(f) = self.member_matching(h)? else {
            return Ok(None);
        };
        if f.len() >= self.mu {
            return Ok(None);
        }
        let v = match axiom.kind {
            AxiomKind::Clause(i) => Vertex::Left(i),
            AxiomKind::Boolean(x) | AxiomKind::Complement(x) => Vertex::Right(x),
        };
        let mut stats = ResponseStats::default();
        let mut next = f.clone();
        if let Some(c) = self.state.respond_to(&f, v, &mut stats)? {
            next.components.push(c);
        }
        Ok(Some(family_of_matching(&self.phi, &self.graph, &next)?))
    }
}

/// Outcome of an exhaustive k-winning check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KWinReport {
    pub k: usize,
    pub members_checked: usize,
    pub extension_checks: usize,
    pub restriction_checks: usize,
    /// Human-readable failures (at most 10 kept).
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl KWinReport {
    pub fn holds(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < 10 {
            self.failures.push(msg);
        }
    }
}

impl fmt::Display for KWinReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k                   {}", self.k)?;
        writeln!(f, "members checked     {}", self.members_checked)?;
        writeln!(f, "extension checks    {}", self.extension_checks)?;
        writeln!(f, "restriction checks  {}", self.restriction_checks)?;
        for m in &self.failures {
            writeln!(f, "failure             {m}")?;
        }
        write!(f, "k-winning           {}", if self.holds() { "yes" } else { "no" })
    }
}

/// Verifies restriction and extension for every member of rank < k against
/// every polynomial of tr(φ).
pub fn check_k_winning(phi: &Cnf, strategy: &dyn Strategy, k: usize, bound: usize) -> Result<KWinReport> {
    let mut rep = KWinReport {
        k,
        ..KWinReport::default()
    };
    if k == 0 {
        if !strategy.is_member(&ProductFamily::lambda())? {
            rep.fail("{λ} is not a member".to_string());
        }
        return Ok(rep);
    }
    let axioms: Vec<EncodedAxiom> = tr_encode(phi);
    let members = strategy.members(k - 1, bound)?;
    if members.is_empty() {
        rep.fail("strategy is empty".to_string());
    }
    let mut restriction_done: HashSet<ProductFamily> = HashSet::new();
    let mut check_restrictions = |h: &ProductFamily, rep: &mut KWinReport| -> Result<()> {
        if !restriction_done.insert(h.clone()) {
            return Ok(());
        }
        for r in h.restrictions() {
            rep.restriction_checks += 1;
            if !strategy.is_member(&r)? {
                rep.fail(format!("restriction {r} of {h} is not a member"));
            }
        }
        Ok(())
    };
    for h in &members {
        rep.members_checked += 1;
        check_restrictions(h, &mut rep)?;
        for ax in &axioms {
            rep.extension_checks += 1;
            match strategy.extend(h, ax)? {
                None => rep.fail(format!("no extension of {h} for {:?}", ax.kind)),
                Some(h2) => {
                    if !h.is_sub(&h2) {
                        rep.fail(format!("extension {h2} does not contain {h}"));
                    } else if !h2.satisfies(&ax.poly) {
                        rep.fail(format!("extension {h2} does not satisfy {}", ax.poly));
                    } else if !strategy.is_member(&h2)? {
                        rep.fail(format!("extension {h2} is not a member"));
                    } else {
                        check_restrictions(&h2, &mut rep)?;
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Disjoint non-empty pieces; ‖α‖ is the number of pieces.
pub type PiecewiseAssignment = BTreeSet<PartialAssignment>;

pub fn piece_union(alpha: &PiecewiseAssignment) -> PartialAssignment {
    alpha.iter().flat_map(|p| p.iter().map(|(&k, &v)| (k, v))).collect()
}

/// Pieces are non-empty and domain-disjoint.
pub fn is_piecewise(alpha: &PiecewiseAssignment) -> bool {
    let mut seen = BTreeSet::new();
    alpha.iter().all(|p| !p.is_empty() && p.keys().all(|x| seen.insert(*x)))
}

/// Explicit family of piecewise assignments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RFreeFamily {
    pub members: BTreeSet<PiecewiseAssignment>,
}

/// The piecewise assignments α_1 ∪ ... ∪ α_t with α_i ∈ H_i, for members
/// H_1 ⊗ ... ⊗ H_t of rank t <= k - 1.
pub fn to_rfree(strategy: &dyn Strategy, k: usize, bound: usize) -> Result<RFreeFamily> {
    let mut members = BTreeSet::new();
    if k == 0 {
        return Ok(RFreeFamily { members });
    }
    for h in strategy.members(k - 1, bound)? {
        let fs: Vec<&FlippableFamily> = h.factors().iter().collect();
        let mut acc: Vec<PiecewiseAssignment> = vec![PiecewiseAssignment::new()];
        for f in fs {
            let mut next = Vec::new();
            for a in &acc {
                for m in f.members() {
                    let mut b = a.clone();
                    b.insert(m.clone());
                    next.push(b);
                }
            }
            acc = next;
        }
        members.extend(acc);
        if members.len() > bound {
            return Err(Error::cap("piecewise assignments", members.len(), bound));
        }
    }
    Ok(RFreeFamily { members })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RFreeReport {
    pub r: usize,
    pub members: usize,
    pub consistency: bool,
    pub retraction: bool,
    pub extension: bool,
    /// First failure found, with the offending piecewise assignment.
    pub witness: Option<String>,
}

impl RFreeReport {
    pub fn holds(&self) -> bool {
        self.members > 0 && self.consistency && self.retraction && self.extension
    }
}

impl fmt::Display for RFreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r              {}", self.r)?;
        writeln!(f, "members        {}", self.members)?;
        writeln!(f, "consistency    {}", self.consistency)?;
        writeln!(f, "retraction     {}", self.retraction)?;
        writeln!(f, "extension      {}", self.extension)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness        {w}")?;
        }
        write!(f, "r-free         {}", if self.holds() { "yes" } else { "no" })
    }
}

fn show_pw(alpha: &PiecewiseAssignment) -> String {
    let parts: Vec<String> = alpha
        .iter()
        .map(|p| {
            let s: Vec<String> = p.iter().map(|(x, v)| format!("x{}={}", x + 1, u8::from(*v))).collect();
            format!("[{}]", s.join(" "))
        })
        .collect();
    if parts.is_empty() {
        "∅".to_string()
    } else {
        parts.join(" ")
    }
}

/// Checks consistency, retraction (every sub-collection of pieces is a
/// member) and extension for ‖α‖ < r. An empty family fails.
pub fn check_rfree(phi: &Cnf, family: &RFreeFamily, r: usize, bound: usize) -> Result<RFreeReport> {
    if family.members.len() > bound {
        return Err(Error::cap("piecewise assignments", family.members.len(), bound));
    }
    let mut rep = RFreeReport {
        r,
        members: family.members.len(),
        consistency: true,
        retraction: true,
        extension: true,
        witness: None,
    };
    if family.members.is_empty() {
        rep.witness = Some("family is empty".to_string());
        return Ok(rep);
    }
    for alpha in &family.members {
        if !is_piecewise(alpha) {
            rep.consistency = false;
            rep.witness.get_or_insert_with(|| format!("{} is not piecewise", show_pw(alpha)));
            continue;
        }
        let u = piece_union(alpha);
        if let Some(c) = phi
            .clauses
            .iter()
            .find(|c| c.literals().iter().all(|l| u.get(&l.var).is_some_and(|&x| !l.value(x))))
        {
            rep.consistency = false;
            rep.witness.get_or_insert_with(|| format!("{} falsifies {c}", show_pw(alpha)));
        }
        let pieces: Vec<&PartialAssignment> = alpha.iter().collect();
        for mask in 0u32..1 << pieces.len() {
            let beta: PiecewiseAssignment = (0..pieces.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pieces[i].clone())
                .collect();
            if !family.members.contains(&beta) {
                rep.retraction = false;
                rep.witness
                    .get_or_insert_with(|| format!("{} ⊑ {} is missing", show_pw(&beta), show_pw(alpha)));
            }
        }
        if alpha.len() < r {
            for x in (0..phi.variable_count).filter(|x| !u.contains_key(x)) {
                for want in [false, true] {
                    let found = family
                        .members
                        .iter()
                        .any(|b| alpha.is_subset(b) && piece_union(b).get(&x) == Some(&want));
                    if !found {
                        rep.extension = false;
                        rep.witness.get_or_insert_with(|| {
                            format!("{} has no extension with x{}={}", show_pw(alpha), x + 1, u8::from(want))
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Serializable k-winning certificate: the Cover parameters, M, and the
/// family of every component met while enumerating members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub k: usize,
    pub epsilon: Rational,
    pub d_threshold: usize,
    pub s: usize,
    pub m: Vec<Component>,
    pub table: Vec<(Component, FlippableFamily)>,
}

impl Certificate {
    pub fn to_text(&self) -> String {
        let mut out = format!("p kwin {}\n", self.k);
        out.push_str(&format!("s {} {} {}\n", format_rational(&self.epsilon), self.d_threshold, self.s));
        for c in &self.m {
            out.push_str(&format!("m {}\n", c.to_text()));
        }
        for (c, f) in &self.table {
            let vs: Vec<String> = f.domain().iter().map(usize::to_string).collect();
            out.push_str(&format!("t {} | {} | {}\n", c.to_text(), vs.join(" "), f.bitstrings().join(" ")));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut k = None;
        let mut params = None;
        let mut m = Vec::new();
        let mut table = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match head {
                "p" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != 2 || f[0] != "kwin" {
                        return Err(Error::parse(lineno, "expected `p kwin <k>`"));
                    }
                    k = Some(f[1].parse().map_err(|_| Error::parse(lineno, "bad k"))?);
                }
                "s" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != 3 {
                        return Err(Error::parse(lineno, "expected `s <eps> <D> <s>`"));
                    }
                    let eps = parse_rational(f[0]).map_err(|e| Error::parse(lineno, e))?;
                    let d = f[1].parse().map_err(|_| Error::parse(lineno, "bad D"))?;
                    let s = f[2].parse().map_err(|_| Error::parse(lineno, "bad s"))?;
                    params = Some((eps, d, s));
                }
                "m" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    m.push(Component::parse_fields(&f, lineno)?);
                }
                "t" => {
                    let parts: Vec<&str> = rest.split('|').map(str::trim).collect();
                    if parts.len() != 3 {
                        return Err(Error::parse(lineno, "expected `t <component> | <vars> | <bits>`"));
                    }
                    let cf: Vec<&str> = parts[0].split_whitespace().collect();
                    let comp = Component::parse_fields(&cf, lineno)?;
                    let vars = parts[1]
                        .split_whitespace()
                        .map(|v| v.parse::<usize>().map_err(|_| Error::parse(lineno, "bad variable")))
                        .collect::<Result<Vec<_>>>()?;
                    let bits: Vec<&str> = parts[2].split_whitespace().collect();
                    let fam = FlippableFamily::from_bitstrings(&vars, &bits).map_err(|e| Error::parse(lineno, e))?;
                    table.push((comp, fam));
                }
                other => return Err(Error::parse(lineno, format!("unknown line type {other:?}"))),
            }
        }
        let k = k.ok_or_else(|| Error::parse(0, "missing `p kwin` header"))?;
        let (epsilon, d_threshold, s) = params.ok_or_else(|| Error::parse(0, "missing `s` line"))?;
        Ok(Certificate {
            k,
            epsilon,
            d_threshold,
            s,
            m,
            table,
        })
    }
}

/// Certificate for `strategy` at rank bound k.
pub fn build_certificate(strategy: &WinningStrategy, k: usize, bound: usize) -> Result<Certificate> {
    let mut table = BTreeMap::new();
    for h in strategy.members(k.saturating_sub(1), bound)? {
        for (c, f) in strategy.component_table(&h)? {
            table.insert(c, f);
        }
    }
    Ok(Certificate {
        k,
        epsilon: strategy.state.epsilon.clone(),
        d_threshold: strategy.state.d_threshold,
        s: strategy.state.s,
        m: strategy.state.m.components.clone(),
        table: table.into_iter().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub m_matches: bool,
    /// Table rows whose family differs from the recomputed one.
    pub bad_rows: Vec<String>,
    pub kwin: KWinReport,
}

impl CertificateReport {
    pub fn valid(&self) -> bool {
        self.m_matches && self.bad_rows.is_empty() && self.kwin.holds()
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M recomputed        {}", if self.m_matches { "matches" } else { "DIFFERS" })?;
        for r in &self.bad_rows {
            writeln!(f, "bad table row       {r}")?;
        }
        writeln!(f, "{}", self.kwin)?;
        write!(f, "certificate         {}", if self.valid() { "valid" } else { "INVALID" })
    }
}

/// Rebuilds the strategy from the certificate's parameters and checks M,
/// every table row, and the k-winning property.
pub fn verify_certificate(phi: &Cnf, cert: &Certificate, caps: &Caps, bound: usize) -> Result<CertificateReport> {
    let g = adjacency_graph(phi);
    let state = init_cover(&g, &cert.epsilon, cert.d_threshold, cert.s, caps)?;
    let m_matches = state.m.components == cert.m;
    let mut bad_rows = Vec::new();
    for (c, fam) in &cert.table {
        match component_family(phi, &g, c) {
            Ok(f) if f == *fam => {}
            Ok(_) => bad_rows.push(format!("{c}: family differs")),
            Err(e) => bad_rows.push(format!("{c}: {e}")),
        }
    }
    let strategy = extract_strategy(phi, state, cert.k)?;
    let kwin = check_k_winning(phi, &strategy, cert.k, bound)?;
    Ok(CertificateReport {
        m_matches,
        bad_rows,
        kwin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnfspace::Clause;

    fn pa(xs: &[(usize, bool)]) -> PartialAssignment {
        xs.iter().copied().collect()
    }

    fn clause(xs: &[i64]) -> Clause {
        Clause::new(xs.iter().map(|&x| Literal::from_dimacs(x).unwrap()).collect())
    }

    #[test]
    fn flippable_examples() {
        assert!(is_flippable(&[pa(&[(0, false)]), pa(&[(0, true)])]));
        assert!(is_flippable(&[pa(&[(0, true), (1, false)]), pa(&[(0, false), (1, true)])]));
        assert!(!is_flippable(&[pa(&[(0, true)])]));
    }

    #[test]
    fn product_rank() {
        assert_eq!(ProductFamily::new(vec![]).unwrap().rank(), 0);
        let fx = FlippableFamily::new(vec![pa(&[(0, false)]), pa(&[(0, true)])]).unwrap();
        let p = ProductFamily::new(vec![fx.clone()]).unwrap();
        assert_eq!(p.rank(), 1);
        let q = ProductFamily::new(vec![fx.clone(), FlippableFamily::lambda()]).unwrap();
        assert_eq!(q, p);
        assert!(ProductFamily::new(vec![fx.clone(), fx]).is_err());
    }

    #[test]
    fn short_component_family() {
        // x1 - C0 - x2 with C0 = (x1 ∨ x2 ∨ x3)
        let phi = Cnf::new(3, vec![clause(&[1, 2, 3])]).unwrap();
        let g = adjacency_graph(&phi);
        let f = component_family(&phi, &g, &Component::short(0, 0, 1)).unwrap();
        let mut bits = f.bitstrings();
        bits.sort();
        assert_eq!(bits, vec!["01", "10", "11"]);
    }

    #[test]
    fn isolated_component_family() {
        let phi = Cnf::new(3, vec![clause(&[1, 2, 3])]).unwrap();
        let g = adjacency_graph(&phi);
        let f = component_family(&phi, &g, &Component::isolated(2)).unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn long_component_family() {
        // x - C1 - y - C2 - z, C1 = (x ∨ y ∨ w), C2 = (¬y ∨ z ∨ u)
        let phi = Cnf::new(5, vec![clause(&[1, 2, 4]), clause(&[-2, 3, 5])]).unwrap();
        let g = adjacency_graph(&phi);
        let f = component_family(&phi, &g, &Component::long(0, 0, 1, 1, 2)).unwrap();
        let mut bits = f.bitstrings();
        bits.sort();
        // bit order x y z
        assert_eq!(bits, vec!["011", "100", "101", "111"]);
    }

    #[test]
    fn contradiction_is_not_one_winning() {
        let phi = Cnf::new(1, vec![clause(&[1]), clause(&[-1])]).unwrap();
        let st = ExplicitStrategy::new([ProductFamily::lambda()]);
        assert!(!check_k_winning(&phi, &st, 1, 100).unwrap().holds());
        assert!(check_k_winning(&phi, &st, 0, 100).unwrap().holds());
    }

    #[test]
    fn empty_rfree_fails() {
        let phi = Cnf::new(1, vec![clause(&[1])]).unwrap();
        let r = check_rfree(&phi, &RFreeFamily::default(), 1, 10).unwrap();
        assert!(!r.holds());
    }

    #[test]
    fn retraction_witness() {
        let phi = Cnf::new(2, vec![]).unwrap();
        let a = pa(&[(0, true)]);
        let b = pa(&[(1, false)]);
        let fam = RFreeFamily {
            members: [PiecewiseAssignment::new(), [a.clone(), b].into()].into(),
        };
        let r = check_rfree(&phi, &fam, 0, 10).unwrap();
        assert!(!r.retraction);
        assert!(r.witness.unwrap().contains("missing"));
        let _ = a;
    }
}
