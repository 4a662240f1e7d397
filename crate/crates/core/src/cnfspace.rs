use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::rational::{ceil_times_e, floor_usize, format_rational, int, parse_rational, Rational};

/// A variable or its negation. `var` is 0-based; text forms are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        Some(Literal {
            var: x.unsigned_abs() as usize - 1,
            positive: x > 0,
        })
    }

    /// Accepts `3`, `-3`, `x3`, `~x3` and `-x3`.
    pub fn parse(token: &str) -> Option<Self> {
        let (neg, body) = match token.strip_prefix('~').or_else(|| token.strip_prefix('-')) {
            Some(b) => (true, b),
            None => (false, token),
        };
        let body = body.strip_prefix('x').unwrap_or(body);
        let v: usize = body.parse().ok()?;
        if v == 0 {
            return None;
        }
        Some(Literal {
            var: v - 1,
            positive: !neg,
        })
    }

    pub fn value(self, assignment: bool) -> bool {
        assignment == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var + 1)
        } else {
            write!(f, "~x{}", self.var + 1)
        }
    }
}

/// Disjunction of literals, kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause(Vec<Literal>);

impl Clause {
    pub fn new(mut lits: Vec<Literal>) -> Self {
        lits.sort_unstable();
        lits.dedup();
        Clause(lits)
    }

    pub fn empty() -> Self {
        Clause(Vec::new())
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Literal) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn is_tautology(&self) -> bool {
        self.0.windows(2).any(|w| w[0].var == w[1].var)
    }

    /// Variables in increasing order, without repetition.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.iter().map(|l| l.var).collect();
        v.dedup();
        v
    }

    /// Value under a total assignment indexed by variable.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.0.iter().any(|l| l.value(assignment[l.var]))
    }

    /// Resolvent on `pivot` (positive in self, negative in other).
    pub fn resolve(&self, other: &Clause, pivot: usize) -> Option<Clause> {
        if !self.contains(Literal::pos(pivot)) || !other.contains(Literal::neg(pivot)) {
            return None;
        }
        let lits = self
            .0
            .iter()
            .filter(|&&l| l != Literal::pos(pivot))
            .chain(other.0.iter().filter(|&&l| l != Literal::neg(pivot)))
            .copied()
            .collect();
        Some(Clause::new(lits))
    }

    pub fn parse_tokens(tokens: &[&str], lineno: usize) -> Result<Clause> {
        let mut lits = Vec::new();
        for (i, t) in tokens.iter().enumerate() {
            if *t == "0" && i + 1 == tokens.len() {
                break;
            }
            lits.push(Literal::parse(t).ok_or_else(|| Error::parse(lineno, format!("bad literal {t:?}")))?);
        }
        Ok(Clause::new(lits))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "[]");
        }
        let s: Vec<String> = self.0.iter().map(Literal::to_string).collect();
        write!(f, "{}", s.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub variable_count: usize,
    pub clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if let Some(l) = c.literals().iter().find(|l| l.var >= variable_count) {
                return Err(Error::invalid(format!("clause {i}: literal {l} out of range")));
            }
        }
        Ok(Cnf {
            variable_count,
            clauses,
        })
    }

    /// Exactly three distinct variables per clause.
    pub fn is_3cnf(&self) -> bool {
        self.clauses.iter().all(|c| c.width() == 3 && !c.is_tautology())
    }

    /// Satisfiability by enumeration; only for tiny formulas.
    pub fn is_satisfiable(&self) -> bool {
        assert!(self.variable_count <= 24, "brute force satisfiability limited to 24 variables");
        let n = self.variable_count;
        (0u32..1 << n).any(|m| {
            let a: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
            self.clauses.iter().all(|c| c.satisfied_by(&a))
        })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            for l in c.literals() {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let f: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                    return Err(Error::parse(lineno, "expected a single `p cnf <vars> <clauses>` header"));
                }
                let n = f[2].parse().map_err(|_| Error::parse(lineno, "bad variable count"))?;
                let m = f[3].parse().map_err(|_| Error::parse(lineno, "bad clause count"))?;
                header = Some((n, m, lineno));
                continue;
            }
            let Some((n, _, _)) = header else {
                return Err(Error::parse(lineno, "clause before header"));
            };
            for tok in line.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad literal {tok:?}")))?;
                match Literal::from_dimacs(x) {
                    None => clauses.push(Clause::new(std::mem::take(&mut cur))),
                    Some(l) if l.var < n => cur.push(l),
                    Some(_) => return Err(Error::parse(lineno, format!("literal {x} out of range"))),
                }
            }
            last_line = lineno;
        }
        let Some((n, m, hline)) = header else {
            return Err(Error::parse(0, "missing `p cnf` header"));
        };
        if !cur.is_empty() {
            return Err(Error::parse(last_line, "last clause not terminated by 0"));
        }
        if clauses.len() != m {
            return Err(Error::parse(hline, format!("header declares {m} clauses, found {}", clauses.len())));
        }
        Cnf::new(n, clauses)
    }
}

/// floor(delta * n) clauses, each on 3 distinct variables chosen uniformly,
/// with independent uniform signs. Clauses are drawn with replacement.
pub fn gen_random_cnf(n: usize, delta: &Rational, seed: u64) -> Result<Cnf> {
    if n < 3 {
        return Err(Error::invalid(format!("need at least 3 variables, got {n}")));
    }
    if delta.is_negative() {
        return Err(Error::invalid("clause density must be non-negative"));
    }
    let m = floor_usize(&(delta * int(n)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let vars = index::sample(&mut rng, n, 3);
            Clause::new(
                vars.iter()
                    .map(|v| Literal {
                        var: v,
                        positive: rng.random(),
                    })
                    .collect(),
            )
        })
        .collect();
    Cnf::new(n, clauses)
}

/// Clause-variable incidence graph: L = clauses, R = variables.
pub fn adjacency_graph(phi: &Cnf) -> BipartiteGraph {
    let nb = phi.clauses.iter().map(Clause::variables).collect();
    BipartiteGraph::from_neighborhoods(phi.variable_count, nb).expect("variables are in range")
}

/// Coefficient field for polynomials.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn parse(text: &str) -> Option<Self>;
    fn format(&self) -> String;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(x: i64) -> Self {
        Rational::from_integer(BigInt::from(x))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn parse(text: &str) -> Option<Self> {
        parse_rational(text).ok()
    }
    fn format(&self) -> String {
        format_rational(self)
    }
}

/// Integers modulo the prime `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp<const P: u64>(u64);

pub type Gf2 = Fp<2>;

impl<const P: u64> Fp<P> {
    pub fn new(x: i64) -> Self {
        Fp(x.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(x: i64) -> Self {
        Fp::new(x)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % P)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn parse(text: &str) -> Option<Self> {
        let r = parse_rational(text).ok()?;
        let num = Fp::new((r.numer() % BigInt::from(P)).to_i64()?);
        let den = Fp::new((r.denom() % BigInt::from(P)).to_i64()?);
        if den.0 == 0 {
            return None;
        }
        // Fermat inverse
        let mut inv = Fp::<P>::one();
        let mut base = den;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                inv = inv.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Some(num.mul(&inv))
    }
    fn format(&self) -> String {
        self.0.to_string()
    }
}

/// Polynomial variable: `x` or its twin `x̄` (written `~x` in text).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PVar {
    pub var: usize,
    pub bar: bool,
}

impl PVar {
    pub fn plain(var: usize) -> Self {
        PVar { var, bar: false }
    }

    pub fn bar(var: usize) -> Self {
        PVar { var, bar: true }
    }

    pub fn value(self, x: bool) -> bool {
        x != self.bar
    }

    pub fn parse(token: &str) -> Option<Self> {
        let (bar, body) = match token.strip_prefix('~') {
            Some(b) => (true, b),
            None => (false, token),
        };
        let v: usize = body.strip_prefix('x')?.parse().ok()?;
        if v == 0 {
            return None;
        }
        Some(PVar { var: v - 1, bar })
    }
}

impl fmt::Display for PVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", if self.bar { "~" } else { "" }, self.var + 1)
    }
}

/// Product of variables with exponents. The empty monomial is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<PVar, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: PVar) -> Self {
        Monomial([(v, 1)].into())
    }

    pub fn from_vars(vs: &[PVar]) -> Self {
        let mut m = Monomial::one();
        for &v in vs {
            m = m.times(v);
        }
        m
    }

    pub fn times(&self, v: PVar) -> Self {
        let mut m = self.0.clone();
        *m.entry(v).or_insert(0) += 1;
        Monomial(m)
    }

    pub fn product(&self, other: &Monomial) -> Self {
        let mut m = self.0.clone();
        for (&v, &e) in &other.0 {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.values().all(|&e| e == 1)
    }

    pub fn multilinear(&self) -> Monomial {
        Monomial(self.0.keys().map(|&v| (v, 1)).collect())
    }

    pub fn vars(&self) -> impl Iterator<Item = (PVar, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial over `F` in the twinned variables. No zero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F: Field = Rational> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: F) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: PVar) -> Self {
        Self::term(Monomial::var(v), F::one())
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Monomial::one()).is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut p = Self::zero();
        for (m, d) in &self.terms {
            p.add_term(m.clone(), d.mul(c));
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::one().neg()))
    }

    /// `a*self + b*other`.
    pub fn combine(&self, a: &F, other: &Self, b: &F) -> Self {
        self.scale(a).add(&other.scale(b))
    }

    pub fn mul_var(&self, v: PVar) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p.add_term(m.times(v), c.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                p.add_term(m.product(n), c.mul(d));
            }
        }
        p
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(Monomial::is_multilinear)
    }

    /// Replaces v^k by v; the flag reports whether anything changed.
    pub fn multilinearize(&self) -> (Self, bool) {
        let mut p = Self::zero();
        let mut changed = false;
        for (m, c) in &self.terms {
            changed |= !m.is_multilinear();
            p.add_term(m.multilinear(), c.clone());
        }
        (p, changed)
    }

    /// Value under a total 0/1 assignment (x̄ takes 1 - x).
    pub fn evaluate(&self, assignment: &[bool]) -> F {
        let mut total = F::zero();
        for (m, c) in &self.terms {
            if m.vars().all(|(v, _)| v.value(assignment[v.var])) {
                total = total.add(c);
            }
        }
        total
    }

    /// Substitutes the assigned variables and simplifies.
    pub fn restrict(&self, alpha: &BTreeMap<usize, bool>) -> Self {
        let mut p = Self::zero();
        'terms: for (m, c) in &self.terms {
            let mut rest = BTreeMap::new();
            for (v, e) in m.vars() {
                match alpha.get(&v.var) {
                    Some(&x) if !v.value(x) => continue 'terms,
                    Some(_) => {}
                    None => {
                        rest.insert(v, e);
                    }
                }
            }
            p.add_term(Monomial(rest), c.clone());
        }
        p
    }

    /// Variables (not twins) occurring in the polynomial.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.vars().map(|(v, _)| v.var)).collect()
    }

    /// Parses sums like `x1*~x2 - 3/2*x3^2 + 1`.
    pub fn parse(text: &str) -> Option<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return None;
        }
        if compact == "0" {
            return Some(Self::zero());
        }
        let mut p = Self::zero();
        let mut sign = true;
        let mut cur = String::new();
        let mut pieces = Vec::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push((sign, std::mem::take(&mut cur)));
                sign = ch == '+';
            } else if (ch == '+' || ch == '-') && i == 0 {
                sign = ch == '+';
            } else {
                cur.push(ch);
            }
        }
        pieces.push((sign, cur));
        for (positive, body) in pieces {
            if body.is_empty() {
                return None;
            }
            let mut coeff = F::one();
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                if factor.starts_with('x') || factor.starts_with('~') {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (n, e.parse::<u32>().ok()?),
                        None => (factor, 1),
                    };
                    let v = PVar::parse(name)?;
                    for _ in 0..exp {
                        mono = mono.times(v);
                    }
                } else {
                    coeff = coeff.mul(&F::parse(factor)?);
                }
            }
            if !positive {
                coeff = coeff.neg();
            }
            p.add_term(mono, coeff);
        }
        Some(p)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, then by monomial order
        let mut ts: Vec<(&Monomial, &F)> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in ts.into_iter().enumerate() {
            let s = c.format();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (m.is_one(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

/// Origin of an encoded axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AxiomKind {
    /// Translation of clause i.
    Clause(usize),
    /// x^2 - x.
    Boolean(usize),
    /// x + x̄ - 1.
    Complement(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedAxiom<F: Field = Rational> {
    pub kind: AxiomKind,
    pub poly: Polynomial<F>,
}

/// tr(x) = x̄, tr(¬x) = x, extended multiplicatively over a clause.
pub fn tr_literal(l: Literal) -> PVar {
    PVar {
        var: l.var,
        bar: l.positive,
    }
}

pub fn tr_clause<F: Field>(c: &Clause) -> Polynomial<F> {
    let vs: Vec<PVar> = c.literals().iter().map(|&l| tr_literal(l)).collect();
    Polynomial::term(Monomial::from_vars(&vs), F::one())
}

pub fn boolean_axiom<F: Field>(var: usize) -> Polynomial<F> {
    let x = PVar::plain(var);
    Polynomial::term(Monomial::from_vars(&[x, x]), F::one()).sub(&Polynomial::var(x))
}

pub fn complement_axiom<F: Field>(var: usize) -> Polynomial<F> {
    Polynomial::var(PVar::plain(var))
        .add(&Polynomial::var(PVar::bar(var)))
        .sub(&Polynomial::one())
}

/// Clause translations, then both axiom families for every variable.
pub fn tr_encode<F: Field>(phi: &Cnf) -> Vec<EncodedAxiom<F>> {
    let mut out: Vec<EncodedAxiom<F>> = phi
        .clauses
        .iter()
        .enumerate()
        .map(|(i, c)| EncodedAxiom {
            kind: AxiomKind::Clause(i),
            poly: tr_clause(c),
        })
        .collect();
    for x in 0..phi.variable_count {
        out.push(EncodedAxiom {
            kind: AxiomKind::Boolean(x),
            poly: boolean_axiom(x),
        });
        out.push(EncodedAxiom {
            kind: AxiomKind::Complement(x),
            poly: complement_axiom(x),
        });
    }
    out
}

/// Variable occurrences, counted with repetition.
pub fn total_space(config: &[Clause]) -> usize {
    config.iter().map(Clause::width).sum()
}

/// Distinct monomials over all polynomials of the configuration.
pub fn monomial_space<F: Field>(config: &[Polynomial<F>]) -> usize {
    let set: BTreeSet<&Monomial> = config.iter().flat_map(|p| p.monomials()).collect();
    set.len()
}

/// Inference rule of a trace step. Premises are 1-based step numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule<F: Field = Rational> {
    Resolution { left: usize, right: usize },
    Linear { left: usize, right: usize, a: F, b: F },
    Multiply { premise: usize, var: PVar },
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step<T, F: Field = Rational> {
    Download(T),
    Infer(Rule<F>, T),
    Erase(Vec<usize>),
}

pub type ResTrace = Vec<Step<Clause>>;
pub type PcrTrace<F = Rational> = Vec<Step<Polynomial<F>, F>>;

fn step_ids(fields: &[&str], lineno: usize) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| match f.parse::<usize>() {
            Ok(0) | Err(_) => Err(Error::parse(lineno, format!("bad step number {f:?}"))),
            Ok(i) => Ok(i),
        })
        .collect()
}

/// Splits `I <rule> <operands> : <result>`.
fn split_result(line: &str, lineno: usize) -> Result<(Vec<&str>, &str)> {
    let (head, result) = line
        .split_once(':')
        .ok_or_else(|| Error::parse(lineno, "inference needs `: <result>`"))?;
    Ok((head.split_whitespace().collect(), result.trim()))
}

/// Parses a resolution trace: `A <lits>`, `I res <i> <j> : <lits>`,
/// `E <i>...`. Lines starting with `c` or `#` are comments.
pub fn parse_res_trace(text: &str) -> Result<ResTrace> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "A" => out.push(Step::Download(Clause::parse_tokens(&fields[1..], lineno)?)),
            "E" => {
                if fields.len() < 2 {
                    return Err(Error::parse(lineno, "erasure needs a step number"));
                }
                out.push(Step::Erase(step_ids(&fields[1..], lineno)?));
            }
            "I" => {
                let (head, result) = split_result(line, lineno)?;
                let rule = match head.get(1).copied() {
                    Some("res") if head.len() == 4 => {
                        let ids = step_ids(&head[2..], lineno)?;
                        Rule::Resolution {
                            left: ids[0],
                            right: ids[1],
                        }
                    }
                    Some("sem") => Rule::Semantic,
                    _ => return Err(Error::parse(lineno, "expected `I res <i> <j> : <clause>`")),
                };
                let toks: Vec<&str> = result.split_whitespace().collect();
                out.push(Step::Infer(rule, Clause::parse_tokens(&toks, lineno)?));
            }
            other => return Err(Error::parse(lineno, format!("unknown step {other:?}"))),
        }
    }
    Ok(out)
}

/// Parses a PCR trace: `A <poly>`, `I lin <i> <j> <a> <b> : <poly>`,
/// `I mul <i> <var> : <poly>`, `I sem ... : <poly>`, `E <i>...`.
pub fn parse_pcr_trace<F: Field>(text: &str) -> Result<PcrTrace<F>> {
    let mut out = Vec::new();
    let poly = |s: &str, lineno: usize| {
        Polynomial::<F>::parse(s).ok_or_else(|| Error::parse(lineno, format!("bad polynomial {s:?}")))
    };
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let (kind, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kind {
            "A" => out.push(Step::Download(poly(rest, lineno)?)),
            "E" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.is_empty() {
                    return Err(Error::parse(lineno, "erasure needs a step number"));
                }
                out.push(Step::Erase(step_ids(&f, lineno)?));
            }
            "I" => {
                let (head, result) = split_result(line, lineno)?;
                let rule = match head.get(1).copied() {
                    Some("lin") if head.len() == 6 => {
                        let ids = step_ids(&head[2..4], lineno)?;
                        let a = F::parse(head[4]).ok_or_else(|| Error::parse(lineno, "bad coefficient"))?;
                        let b = F::parse(head[5]).ok_or_else(|| Error::parse(lineno, "bad coefficient"))?;
                        Rule::Linear {
                            left: ids[0],
                            right: ids[1],
                            a,
                            b,
                        }
                    }
                    Some("mul") if head.len() == 4 => Rule::Multiply {
                        premise: step_ids(&head[2..3], lineno)?[0],
                        var: PVar::parse(head[3]).ok_or_else(|| Error::parse(lineno, "bad variable"))?,
                    },
                    Some("sem") => Rule::Semantic,
                    _ => {
                        return Err(Error::parse(
                            lineno,
                            "expected `I lin <i> <j> <a> <b> : <poly>` or `I mul <i> <var> : <poly>`",
                        ))
                    }
                };
                out.push(Step::Infer(rule, poly(result, lineno)?));
            }
            other => return Err(Error::parse(lineno, format!("unknown step {other:?}"))),
        }
    }
    Ok(out)
}

/// Measurements over the configurations of a checked trace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpaceReport {
    pub steps: usize,
    pub refuted: bool,
    /// First rejected step (1-based) and the reason.
    pub error: Option<(usize, String)>,
    pub max_total_space: usize,
    pub max_clause_count: usize,
    pub max_width: usize,
    pub max_monomial_space: usize,
    /// Entry w: most clauses of width >= w held at once.
    pub wide_profile: Vec<usize>,
    /// Largest w such that some configuration holds w clauses of width >= w.
    pub wide_clause_metric: usize,
    /// Steps where a product was reduced to multilinear form.
    pub reductions: Vec<usize>,
}

impl SpaceReport {
    pub fn accepted(&self) -> bool {
        self.error.is_none() && self.refuted
    }

    pub fn csv_header() -> [&'static str; 9] {
        [
            "steps",
            "refuted",
            "error_step",
            "max_total_space",
            "max_clause_count",
            "max_width",
            "max_monomial_space",
            "wide_clause_metric",
            "reductions",
        ]
    }

    pub fn csv_row(&self) -> [String; 9] {
        [
            self.steps.to_string(),
            self.refuted.to_string(),
            self.error.as_ref().map_or(String::new(), |e| e.0.to_string()),
            self.max_total_space.to_string(),
            self.max_clause_count.to_string(),
            self.max_width.to_string(),
            self.max_monomial_space.to_string(),
            self.wide_clause_metric.to_string(),
            self.reductions.len().to_string(),
        ]
    }

    fn record_clauses(&mut self, config: &[Clause]) {
        self.max_total_space = self.max_total_space.max(total_space(config));
        self.max_clause_count = self.max_clause_count.max(config.len());
        let widest = config.iter().map(Clause::width).max().unwrap_or(0);
        self.max_width = self.max_width.max(widest);
        if self.wide_profile.len() <= widest {
            self.wide_profile.resize(widest + 1, 0);
        }
        for w in 0..=widest {
            let n = config.iter().filter(|c| c.width() >= w).count();
            self.wide_profile[w] = self.wide_profile[w].max(n);
        }
        self.wide_clause_metric = (0..self.wide_profile.len())
            .filter(|&w| self.wide_profile[w] >= w)
            .max()
            .unwrap_or(0);
    }
}

impl fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "steps               {}", self.steps)?;
        writeln!(f, "refuted             {}", self.refuted)?;
        if let Some((s, r)) = &self.error {
            writeln!(f, "rejected at step    {s}: {r}")?;
        }
        writeln!(f, "max total space     {}", self.max_total_space)?;
        writeln!(f, "max clause count    {}", self.max_clause_count)?;
        writeln!(f, "max width           {}", self.max_width)?;
        writeln!(f, "max monomial space  {}", self.max_monomial_space)?;
        writeln!(f, "wide clause metric  {}", self.wide_clause_metric)?;
        write!(f, "multilinear reductions {}", self.reductions.len())
    }
}

/// Memory keyed by the step that produced each item.
struct Memory<T> {
    items: BTreeMap<usize, T>,
}

impl<T: Clone> Memory<T> {
    fn get(&self, id: usize) -> std::result::Result<&T, String> {
        self.items
            .get(&id)
            .ok_or_else(|| format!("premise from step {id} is not in memory"))
    }

    fn erase(&mut self, ids: &[usize]) -> std::result::Result<(), String> {
        for id in ids {
            if self.items.remove(id).is_none() {
                return Err(format!("erasing step {id}, which is not in memory"));
            }
        }
        Ok(())
    }

    fn config(&self) -> Vec<T> {
        self.items.values().cloned().collect()
    }
}

/// Checks every step of a resolution trace against `phi` and measures the
/// configurations it passes through.
pub fn verify_res_trace(phi: &Cnf, trace: &ResTrace) -> SpaceReport {
    let axioms: BTreeSet<&Clause> = phi.clauses.iter().collect();
    let mut mem = Memory { items: BTreeMap::new() };
    let mut rep = SpaceReport {
        steps: trace.len(),
        ..SpaceReport::default()
    };
    for (i, step) in trace.iter().enumerate() {
        let id = i + 1;
        let outcome: std::result::Result<(), String> = match step {
            Step::Download(c) => {
                if axioms.contains(c) {
                    mem.items.insert(id, c.clone());
                    Ok(())
                } else {
                    Err(format!("clause {c} is not an axiom"))
                }
            }
            Step::Erase(ids) => mem.erase(ids),
            Step::Infer(Rule::Resolution { left, right }, c) => mem.get(*left).and_then(|p| {
                let q = mem.get(*right)?;
                let derivable = p
                    .variables()
                    .into_iter()
                    .any(|v| p.resolve(q, v).as_ref() == Some(c) || q.resolve(p, v).as_ref() == Some(c));
                if derivable {
                    Ok(())
                } else {
                    Err(format!("{c} is not a resolvent of steps {left} and {right}"))
                }
            }).map(|_| {
                mem.items.insert(id, c.clone());
            }),
            Step::Infer(Rule::Semantic, _) => Err("semantic step unsupported".to_string()),
            Step::Infer(_, _) => Err("rule not available in resolution".to_string()),
        };
        if let Err(reason) = outcome {
            rep.error = Some((id, reason));
            return rep;
        }
        let config = mem.config();
        rep.record_clauses(&config);
        if config.iter().any(Clause::is_empty) {
            rep.refuted = true;
        }
    }
    rep
}

/// Checks a PCR trace whose downloads must be among `axioms`.
pub fn verify_pcr_trace<F: Field>(axioms: &[Polynomial<F>], trace: &PcrTrace<F>) -> SpaceReport {
    let mut mem: Memory<Polynomial<F>> = Memory { items: BTreeMap::new() };
    let mut rep = SpaceReport {
        steps: trace.len(),
        ..SpaceReport::default()
    };
    for (i, step) in trace.iter().enumerate() {
        let id = i + 1;
        let outcome: std::result::Result<(), String> = match step {
            Step::Download(p) => {
                if axioms.contains(p) {
                    mem.items.insert(id, p.clone());
                    Ok(())
                } else {
                    Err(format!("{p} is not an axiom"))
                }
            }
            Step::Erase(ids) => mem.erase(ids),
            Step::Infer(Rule::Linear { left, right, a, b }, r) => mem.get(*left).and_then(|p| {
                let q = mem.get(*right)?;
                if p.combine(a, q, b) == *r {
                    Ok(())
                } else {
                    Err(format!("{r} is not the stated combination of steps {left} and {right}"))
                }
            }),
            Step::Infer(Rule::Multiply { premise, var }, r) => mem.get(*premise).and_then(|p| {
                let exact = p.mul_var(*var);
                if exact == *r {
                    return Ok(());
                }
                let (reduced, changed) = exact.multilinearize();
                if changed && reduced == *r {
                    rep.reductions.push(id);
                    Ok(())
                } else {
                    Err(format!("{r} is not {var} times step {premise}"))
                }
            }),
            Step::Infer(Rule::Semantic, _) => Err("semantic step unsupported".to_string()),
            Step::Infer(Rule::Resolution { .. }, _) => Err("rule not available in PCR".to_string()),
        };
        if let Err(reason) = outcome {
            rep.error = Some((id, reason));
            return rep;
        }
        if let Step::Infer(_, r) = step {
            mem.items.insert(id, r.clone());
        }
        let config = mem.config();
        rep.max_monomial_space = rep.max_monomial_space.max(monomial_space(&config));
        if config.iter().any(Polynomial::is_one) {
            rep.refuted = true;
        }
    }
    rep
}

/// Variable degrees and the table d -> |S_d| (variables in >= d clauses).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    /// Entry d is |S_d| for d = 0..=max degree.
    pub at_least: Vec<usize>,
}

impl DegreeStats {
    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn s(&self, d: usize) -> usize {
        self.at_least.get(d).copied().unwrap_or(0)
    }
}

pub fn degree_stats(phi: &Cnf) -> DegreeStats {
    let mut degrees = vec![0; phi.variable_count];
    for c in &phi.clauses {
        for v in c.variables() {
            degrees[v] += 1;
        }
    }
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut hist = vec![0; max + 2];
    for &d in &degrees {
        hist[d] += 1;
    }
    let mut at_least = vec![0; max + 1];
    let mut acc = 0;
    for d in (0..=max).rev() {
        acc += hist[d];
        at_least[d] = acc;
    }
    DegreeStats { degrees, at_least }
}

/// Least D >= ceil(24 e Delta) such that 72d/eps (|S_d| + d) + 1 <= c n for
/// every d from D up to max(D, max degree), where Delta = m/n.
pub fn check_concentration(phi: &Cnf, epsilon: &Rational, c: &Rational) -> Option<usize> {
    let n = phi.variable_count;
    if n == 0 {
        return None;
    }
    let stats = degree_stats(phi);
    let delta = Rational::new(int(phi.clauses.len()).to_integer(), int(n).to_integer());
    let start = ceil_times_e(&(int(24) * delta));
    let cn = c * int(n);
    let ok = |d: usize| int(72 * d) / epsilon * int(stats.s(d) + d) + int(1) <= cn;
    let top = stats.max_degree().max(start);
    (start..=top).find(|&dd| (dd..=stats.max_degree().max(dd)).all(ok))
}

/// Exhaustive search for a resolution refutation that never holds more
/// than `clause_budget` clauses (the empty clause excluded) or a clause
/// wider than `width_budget`. Returns the trace of a shortest one.
pub fn min_space_search(phi: &Cnf, clause_budget: usize, width_budget: usize) -> Result<Option<ResTrace>> {
    if phi.variable_count > 4 {
        return Err(Error::cap("variables for space search", phi.variable_count, 4));
    }
    if clause_budget > 4 {
        return Err(Error::cap("clause budget", clause_budget, 4));
    }
    if width_budget > 4 {
        return Err(Error::cap("width budget", width_budget, 4));
    }
    // clauses as bitmasks: bit 2v for x_v, bit 2v+1 for ~x_v
    let mask = |c: &Clause| -> u8 {
        c.literals()
            .iter()
            .fold(0, |m, l| m | 1 << (2 * l.var + usize::from(!l.positive)))
    };
    let axioms: Vec<u8> = {
        let mut a: Vec<u8> = phi
            .clauses
            .iter()
            .filter(|c| !c.is_tautology() && c.width() <= width_budget)
            .map(mask)
            .collect();
        a.sort_unstable();
        a.dedup();
        a
    };
    if phi.clauses.iter().any(Clause::is_empty) {
        return Ok(Some(vec![Step::Download(Clause::empty())]));
    }
    type Config = Vec<u8>;
    #[derive(Clone)]
    enum Move {
        Download(u8),
        Resolve(u8, u8, u8),
        Erase(u8),
    }
    let start: Config = Vec::new();
    let mut parent: HashMap<Config, (Config, Move)> = HashMap::new();
    let mut queue = VecDeque::from([start.clone()]);
    let mut seen = std::collections::HashSet::from([start]);
    let mut goal: Option<(Config, Move)> = None;
    'bfs: while let Some(cfg) = queue.pop_front() {
        let mut next: Vec<(Config, Move)> = Vec::new();
        if cfg.len() < clause_budget {
            for &a in &axioms {
                if !cfg.contains(&a) {
                    let mut c = cfg.clone();
                    c.push(a);
                    c.sort_unstable();
                    next.push((c, Move::Download(a)));
                }
            }
        }
        for (i, &p) in cfg.iter().enumerate() {
            for &q in &cfg[i + 1..] {
                for v in 0..phi.variable_count {
                    let (pos, neg) = (1u8 << (2 * v), 1u8 << (2 * v + 1));
                    let (a, b) = if p & pos != 0 && q & neg != 0 {
                        (p, q)
                    } else if q & pos != 0 && p & neg != 0 {
                        (q, p)
                    } else {
                        continue;
                    };
                    let r = (a & !pos) | (b & !neg);
                    if r == 0 {
                        goal = Some((cfg.clone(), Move::Resolve(a, b, 0)));
                        break 'bfs;
                    }
                    let taut = (0..phi.variable_count).any(|u| r >> (2 * u) & 3 == 3);
                    if taut || r.count_ones() as usize > width_budget || cfg.contains(&r) || cfg.len() >= clause_budget {
                        continue;
                    }
                    let mut c = cfg.clone();
                    c.push(r);
                    c.sort_unstable();
                    next.push((c, Move::Resolve(a, b, r)));
                }
            }
        }
        for &p in &cfg {
            let c: Config = cfg.iter().copied().filter(|&x| x != p).collect();
            next.push((c, Move::Erase(p)));
        }
        for (c, mv) in next {
            if seen.insert(c.clone()) {
                parent.insert(c.clone(), (cfg.clone(), mv));
                queue.push_back(c);
            }
        }
    }
    let Some((last_cfg, last_move)) = goal else {
        return Ok(None);
    };
    let mut moves = vec![last_move];
    let mut cur = last_cfg;
    while let Some((prev, mv)) = parent.get(&cur) {
        moves.push(mv.clone());
        cur = prev.clone();
    }
    moves.reverse();
    let unmask = |m: u8| -> Clause {
        Clause::new(
            (0..8)
                .filter(|b| m >> b & 1 == 1)
                .map(|b| Literal {
                    var: b / 2,
                    positive: b % 2 == 0,
                })
                .collect(),
        )
    };
    let mut trace = Vec::new();
    let mut held: HashMap<u8, usize> = HashMap::new();
    for mv in moves {
        let id = trace.len() + 1;
        match mv {
            Move::Download(a) => {
                held.insert(a, id);
                trace.push(Step::Download(unmask(a)));
            }
            Move::Resolve(a, b, r) => {
                held.insert(r, id);
                trace.push(Step::Infer(
                    Rule::Resolution {
                        left: held[&a],
                        right: held[&b],
                    },
                    unmask(r),
                ));
            }
            Move::Erase(p) => {
                let s = held.remove(&p).expect("erased clause is held");
                trace.push(Step::Erase(vec![s]));
            }
        }
    }
    Ok(Some(trace))
}

/// Renders a resolution trace in the text format.
pub fn res_trace_to_text(trace: &ResTrace) -> String {
    let mut out = String::new();
    for step in trace {
        match step {
            Step::Download(c) => out.push_str(&format!("A {}\n", clause_tokens(c))),
            Step::Infer(Rule::Resolution { left, right }, c) => {
                out.push_str(&format!("I res {left} {right} : {}\n", clause_tokens(c)))
            }
            Step::Infer(_, c) => out.push_str(&format!("I sem : {}\n", clause_tokens(c))),
            Step::Erase(ids) => {
                let s: Vec<String> = ids.iter().map(usize::to_string).collect();
                out.push_str(&format!("E {}\n", s.join(" ")));
            }
        }
    }
    out
}

fn clause_tokens(c: &Clause) -> String {
    let s: Vec<String> = c.literals().iter().map(Literal::to_string).collect();
    s.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn clause(xs: &[i64]) -> Clause {
        Clause::new(xs.iter().map(|&x| Literal::from_dimacs(x).unwrap()).collect())
    }

    #[test]
    fn dimacs_round_trip() {
        let phi = Cnf::new(3, vec![clause(&[1, -2, 3]), clause(&[-1])]).unwrap();
        let text = phi.to_dimacs();
        assert_eq!(Cnf::parse_dimacs(&text).unwrap(), phi);
        assert!(Cnf::parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(Cnf::parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
    }

    #[test]
    fn literal_forms() {
        assert_eq!(Literal::parse("~x3"), Some(Literal::neg(2)));
        assert_eq!(Literal::parse("-3"), Some(Literal::neg(2)));
        assert_eq!(Literal::parse("x1"), Some(Literal::pos(0)));
        assert_eq!(Literal::parse("x0"), None);
    }

    #[test]
    fn three_variable_generation() {
        let phi = gen_random_cnf(3, &rat(1, 1), 7).unwrap();
        assert_eq!(phi.clauses.len(), 3);
        for c in &phi.clauses {
            assert_eq!(c.variables(), vec![0, 1, 2]);
        }
        assert_eq!(phi, gen_random_cnf(3, &rat(1, 1), 7).unwrap());
        assert!(gen_random_cnf(2, &rat(1, 1), 7).is_err());
    }

    #[test]
    fn tr_of_clause() {
        let p: Polynomial = tr_clause(&clause(&[1, -2, 3]));
        assert_eq!(p.to_string(), "~x1*x2*~x3");
        let b: Polynomial = boolean_axiom(0);
        assert_eq!(b, Polynomial::parse("x1^2 - x1").unwrap());
        let c: Polynomial = complement_axiom(0);
        assert_eq!(c, Polynomial::parse("x1 + ~x1 - 1").unwrap());
    }

    #[test]
    fn polynomial_parse_display() {
        let p: Polynomial = Polynomial::parse("x1*~x2 - 3/2*x3 + 1").unwrap();
        assert_eq!(Polynomial::parse(&p.to_string()).unwrap(), p);
        assert!(Polynomial::<Rational>::parse("x1 + + 2").is_none());
        let q: Polynomial<Gf2> = Polynomial::parse("x1 + x1").unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn space_examples() {
        assert_eq!(total_space(&[clause(&[1, 2]), clause(&[-1, 3])]), 4);
        let ps: Vec<Polynomial> = vec![
            Polynomial::parse("x1*~x2 + x3").unwrap(),
            Polynomial::parse("x3 + 1").unwrap(),
        ];
        assert_eq!(monomial_space(&ps), 3);
        assert_eq!(total_space(&[]), 0);
        assert_eq!(monomial_space::<Rational>(&[]), 0);
    }

    #[test]
    fn micro_refutation() {
        let phi = Cnf::new(1, vec![clause(&[1]), clause(&[-1])]).unwrap();
        let t = parse_res_trace("A x1\nA ~x1\nI res 1 2 :\n").unwrap();
        let r = verify_res_trace(&phi, &t);
        assert!(r.accepted(), "{r}");
        assert_eq!(r.max_total_space, 2);
        let bad = parse_res_trace("A x1\nI res 1 2 :\n").unwrap();
        assert_eq!(verify_res_trace(&phi, &bad).error.unwrap().0, 2);
    }

    #[test]
    fn pcr_complement_refutation() {
        let axioms: Vec<Polynomial> = vec![
            Polynomial::parse("x1").unwrap(),
            Polynomial::parse("~x1").unwrap(),
            complement_axiom(0),
        ];
        let text = "A x1\nA ~x1\nA x1 + ~x1 - 1\nI lin 3 1 1 -1 : ~x1 - 1\nI lin 4 2 1 -1 : -1\nI lin 5 5 -1 0 : 1\n";
        let t = parse_pcr_trace(text).unwrap();
        let r = verify_pcr_trace(&axioms, &t);
        assert!(r.accepted(), "{r}");
        assert_eq!(r.max_monomial_space, 3);
    }

    #[test]
    fn multilinear_flag() {
        let axioms: Vec<Polynomial> = vec![Polynomial::parse("x1*x2").unwrap()];
        let t = parse_pcr_trace("A x1*x2\nI mul 1 x1 : x1*x2\n").unwrap();
        let r = verify_pcr_trace(&axioms, &t);
        assert_eq!(r.reductions, vec![2]);
        assert!(r.error.is_none());
        let t = parse_pcr_trace("A x1*x2\nI mul 1 x1 : x1^2*x2\n").unwrap();
        assert!(verify_pcr_trace(&axioms, &t).reductions.is_empty());
    }

    #[test]
    fn semantic_rejected() {
        let axioms: Vec<Polynomial> = vec![Polynomial::parse("x1").unwrap()];
        let t = parse_pcr_trace("A x1\nI sem 1 : 1\n").unwrap();
        let r = verify_pcr_trace(&axioms, &t);
        assert_eq!(r.error.unwrap().1, "semantic step unsupported");
    }

    #[test]
    fn degree_table() {
        let phi = Cnf::new(4, vec![clause(&[1, 2, 3]), clause(&[1, -2, 4])]).unwrap();
        let s = degree_stats(&phi);
        assert_eq!(s.s(1), 4);
        assert_eq!(s.s(2), 2);
        assert_eq!(s.s(3), 0);
    }

    #[test]
    fn min_space_examples() {
        let phi = Cnf::new(1, vec![clause(&[1]), clause(&[-1])]).unwrap();
        let t = min_space_search(&phi, 2, 1).unwrap().unwrap();
        assert!(verify_res_trace(&phi, &t).accepted());
        assert!(min_space_search(&phi, 0, 0).unwrap().is_none());
        assert!(min_space_search(&phi, 5, 1).is_err());
    }

    #[test]
    fn fp_inverse() {
        let x = <Fp<7> as Field>::parse("1/3").unwrap();
        assert_eq!(x.mul(&Fp::new(3)), Fp::new(1));
    }
}
