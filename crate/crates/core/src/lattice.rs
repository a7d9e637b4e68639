//! The free bounded distributive lattice generated by a diagram's node poset.
//!
//! Elements are kept in join-of-meets normal form. A [`MeetTerm`] is an
//! antichain of generators (the meet of its members); a [`LatticeTerm`] is an
//! antichain of meet terms (the join of its clauses). Order is decided
//! combinatorially: meets of generators are join-prime, so
//! `⋁ Mᵢ ≤ ⋁ Nⱼ` iff every `Mᵢ` sits below some `Nⱼ`, and `⋀ M ≤ ⋀ N` iff
//! every generator of `N` is above some generator of `M`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::diagram::{Diagram, NodeIx};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unknown node id `{0}`")]
    UnknownNode(String),
    #[error("enumeration budget of {budget} elements exceeded")]
    BudgetExceeded { budget: usize },
}

/// The generating poset: node ids in lexicographic order and their
/// reachability relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl NodePoset {
    pub fn from_diagram(d: &Diagram) -> Self {
        let names = d.ids().to_vec();
        let leq = d
            .nodes()
            .map(|u| d.nodes().map(|v| d.leq(u, v)).collect())
            .collect();
        NodePoset { names, leq }
    }

    /// Build directly from a relation; `leq` must be a partial order.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Self {
        assert_eq!(names.len(), leq.len());
        NodePoset { names, leq }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Covering pairs of the generator order itself.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]);
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Meet of an antichain of generators. Empty is ⊤.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MeetTerm(Vec<usize>);

impl MeetTerm {
    pub fn generators(&self) -> &[usize] {
        &self.0
    }

    pub fn is_top(&self) -> bool {
        self.0.is_empty()
    }
}

/// Join of an antichain of meet terms. Empty is ⊥.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeTerm(Vec<MeetTerm>);

impl LatticeTerm {
    pub fn clauses(&self) -> &[MeetTerm] {
        &self.0
    }

    pub fn is_bottom(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_top()
    }
}

/// Result of closing the generators under meet and join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub elements: Vec<LatticeTerm>,
    /// False when the budget stopped the closure early.
    pub complete: bool,
}

/// Operations of the free bounded distributive lattice over a node poset.
#[derive(Clone, Debug)]
pub struct FreeLattice {
    poset: NodePoset,
}

impl FreeLattice {
    pub fn new(poset: NodePoset) -> Self {
        FreeLattice { poset }
    }

    pub fn from_diagram(d: &Diagram) -> Self {
        FreeLattice::new(NodePoset::from_diagram(d))
    }

    pub fn poset(&self) -> &NodePoset {
        &self.poset
    }

    pub fn top(&self) -> LatticeTerm {
        LatticeTerm(vec![MeetTerm(Vec::new())])
    }

    pub fn bottom(&self) -> LatticeTerm {
        LatticeTerm(Vec::new())
    }

    pub fn generator_index(&self, id: &str) -> Result<usize, LatticeError> {
        self.poset
            .names
            .binary_search_by(|x| x.as_str().cmp(id))
            .map_err(|_| LatticeError::UnknownNode(id.to_string()))
    }

    pub fn generator(&self, id: &str) -> Result<LatticeTerm, LatticeError> {
        Ok(self.gen_term(self.generator_index(id)?))
    }

    pub fn gen_term(&self, g: usize) -> LatticeTerm {
        assert!(g < self.poset.len(), "generator out of range");
        LatticeTerm(vec![MeetTerm(vec![g])])
    }

    pub fn node_term(&self, v: NodeIx) -> LatticeTerm {
        self.gen_term(v.index())
    }

    /// Reduce a generator set to its minimal elements.
    pub fn meet_term(&self, gens: impl IntoIterator<Item = usize>) -> MeetTerm {
        let set: BTreeSet<usize> = gens.into_iter().collect();
        let v: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&a| !set.iter().any(|&b| b != a && self.poset.leq(b, a)))
            .collect();
        MeetTerm(v)
    }

    /// `m ≤ n` for meet terms.
    pub fn meet_leq(&self, m: &MeetTerm, n: &MeetTerm) -> bool {
        n.0.iter().all(|&b| m.0.iter().any(|&a| self.poset.leq(a, b)))
    }

    /// Keep only the maximal clauses; sort.
    pub fn normalize(&self, clauses: impl IntoIterator<Item = MeetTerm>) -> LatticeTerm {
        let set: BTreeSet<MeetTerm> = clauses.into_iter().collect();
        let v: Vec<MeetTerm> = set
            .iter()
            .filter(|m| !set.iter().any(|n| n != *m && self.meet_leq(m, n)))
            .cloned()
            .collect();
        LatticeTerm(v)
    }

    pub fn leq(&self, a: &LatticeTerm, b: &LatticeTerm) -> bool {
        a.0.iter().all(|m| b.0.iter().any(|n| self.meet_leq(m, n)))
    }

    pub fn meet(&self, a: &LatticeTerm, b: &LatticeTerm) -> LatticeTerm {
        let mut clauses = Vec::with_capacity(a.0.len() * b.0.len());
        for m in &a.0 {
            for n in &b.0 {
                clauses.push(self.meet_term(m.0.iter().chain(&n.0).copied()));
            }
        }
        self.normalize(clauses)
    }

    pub fn join(&self, a: &LatticeTerm, b: &LatticeTerm) -> LatticeTerm {
        self.normalize(a.0.iter().chain(&b.0).cloned())
    }

    /// n-ary meet; the empty meet is ⊤.
    pub fn meet_all<'a>(&self, terms: impl IntoIterator<Item = &'a LatticeTerm>) -> LatticeTerm {
        terms
            .into_iter()
            .fold(self.top(), |acc, t| self.meet(&acc, t))
    }

    /// n-ary join; the empty join is ⊥.
    pub fn join_all<'a>(&self, terms: impl IntoIterator<Item = &'a LatticeTerm>) -> LatticeTerm {
        terms
            .into_iter()
            .fold(self.bottom(), |acc, t| self.join(&acc, t))
    }

    /// Every meet term, i.e. every join-irreducible element, including ⊤.
    /// These are the antichains of the node poset.
    pub fn join_irreducibles(&self) -> Vec<MeetTerm> {
        let n = self.poset.len();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.antichains_from(0, n, &mut current, &mut out);
        out.sort();
        out
    }

    fn antichains_from(&self, start: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<MeetTerm>) {
        out.push(MeetTerm(cur.clone()));
        for g in start..n {
            if cur
                .iter()
                .all(|&c| !self.poset.leq(c, g) && !self.poset.leq(g, c))
            {
                cur.push(g);
                self.antichains_from(g + 1, n, cur, out);
                cur.pop();
            }
        }
    }

    /// Heyting implication: the join of every meet term `x` with `x ∧ a ≤ b`.
    pub fn implies(&self, a: &LatticeTerm, b: &LatticeTerm) -> LatticeTerm {
        let clauses = self.join_irreducibles().into_iter().filter(|x| {
            let xt = LatticeTerm(vec![x.clone()]);
            self.leq(&self.meet(&xt, a), b)
        });
        self.normalize(clauses)
    }

    /// Every element, in sorted order, up to `budget` of them.
    ///
    /// Normal forms are exactly the antichains of meet terms, so a
    /// depth-first walk over increasing index sequences lists each element
    /// once. The empty antichain is ⊥ and `{⊤}` is ⊤.
    pub fn enumerate_elements(&self, budget: usize) -> Enumeration {
        let budget = budget.max(1);
        let irreducibles = self.join_irreducibles();
        let comparable = self.comparability(&irreducibles);
        let mut elements = Vec::new();
        let mut current = Vec::new();
        let complete = self.antichain_walk(&irreducibles, &comparable, 0, &mut current, &mut elements, budget);
        elements.sort();
        Enumeration { elements, complete }
    }

    fn comparability(&self, terms: &[MeetTerm]) -> Vec<Vec<bool>> {
        terms
            .iter()
            .map(|m| terms.iter().map(|n| self.meet_leq(m, n) || self.meet_leq(n, m)).collect())
            .collect()
    }

    /// Returns false once the budget stops the walk.
    fn antichain_walk(
        &self,
        terms: &[MeetTerm],
        comparable: &[Vec<bool>],
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<LatticeTerm>,
        budget: usize,
    ) -> bool {
        if out.len() >= budget {
            return false;
        }
        out.push(LatticeTerm(current.iter().map(|&i| terms[i].clone()).collect()));
        for next in start..terms.len() {
            if current.iter().all(|&c| !comparable[c][next]) {
                current.push(next);
                let more = self.antichain_walk(terms, comparable, next + 1, current, out, budget);
                current.pop();
                if !more {
                    return false;
                }
            }
        }
        true
    }

    /// A complement of `a`, if one exists among the enumerated elements.
    pub fn complement(&self, a: &LatticeTerm, budget: usize) -> Result<Option<LatticeTerm>, LatticeError> {
        self.complement_within(a, &self.bottom(), &self.top(), budget)
    }

    /// A complement of `a` relative to the interval `[lower, upper]`: some
    /// `x` in the interval with `a ∧ x = lower` and `a ∨ x = upper`.
    pub fn complement_within(
        &self,
        a: &LatticeTerm,
        lower: &LatticeTerm,
        upper: &LatticeTerm,
        budget: usize,
    ) -> Result<Option<LatticeTerm>, LatticeError> {
        let e = self.enumerate_elements(budget);
        if !e.complete {
            return Err(LatticeError::BudgetExceeded { budget });
        }
        Ok(e.elements.into_iter().find(|x| {
            self.leq(lower, x)
                && self.leq(x, upper)
                && self.meet(a, x) == *lower
                && self.join(a, x) == *upper
        }))
    }

    /// Covering pairs `(lower, upper)` among `elements`, as indices.
    ///
    /// When `elements` is the whole lattice, the upper covers of `x` are
    /// `x ∨ m` for each meet term `m` minimal among those not below `x`.
    /// Any other element set falls back to pairwise comparison.
    pub fn hasse_edges(&self, elements: &[LatticeTerm]) -> Vec<(usize, usize)> {
        let index: BTreeMap<&LatticeTerm, usize> = elements.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let terms = self.join_irreducibles();
        let whole = self.enumerate_elements(elements.len() + 1);
        if !whole.complete || whole.elements.len() != elements.len() || !whole.elements.iter().all(|t| index.contains_key(t)) {
            return self.hasse_edges_pairwise(elements);
        }
        // strictly_below[m] lists the meet terms strictly below term m
        let strictly_below: Vec<Vec<usize>> = terms
            .iter()
            .enumerate()
            .map(|(i, m)| {
                (0..terms.len())
                    .filter(|&k| k != i && self.meet_leq(&terms[k], m))
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        for (i, x) in elements.iter().enumerate() {
            let under: Vec<bool> = terms
                .iter()
                .map(|m| x.0.iter().any(|c| self.meet_leq(m, c)))
                .collect();
            for (k, m) in terms.iter().enumerate() {
                if !under[k] && strictly_below[k].iter().all(|&b| under[b]) {
                    let y = self.join(x, &LatticeTerm(vec![m.clone()]));
                    out.push((i, index[&y]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn hasse_edges_pairwise(&self, elements: &[LatticeTerm]) -> Vec<(usize, usize)> {
        let n = elements.len();
        let mut below = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                below[i][j] = i != j && self.leq(&elements[i], &elements[j]);
            }
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if below[i][j] && !(0..n).any(|k| below[i][k] && below[k][j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Normal form as text, e.g. `(A ∧ B) ∨ C`.
    pub fn display(&self, t: &LatticeTerm) -> String {
        TermDisplay { lattice: self, term: t }.to_string()
    }
}

struct TermDisplay<'a> {
    lattice: &'a FreeLattice,
    term: &'a LatticeTerm,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.term.is_bottom() {
            return write!(f, "⊥");
        }
        let multi = self.term.0.len() > 1;
        for (i, m) in self.term.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            if m.is_top() {
                write!(f, "⊤")?;
                continue;
            }
            let paren = multi && m.0.len() > 1;
            if paren {
                write!(f, "(")?;
            }
            for (k, &g) in m.0.iter().enumerate() {
                if k > 0 {
                    write!(f, " ∧ ")?;
                }
                write!(f, "{}", self.lattice.poset.name(g))?;
            }
            if paren {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}
