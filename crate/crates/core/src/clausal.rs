//! Clausal normal form: positive temporal literals, clauses, and the
//! conjunction of initial literals with always-clauses.
//!
//! A clausal form is a conjunction of initial literals (true at moment 0) and
//! clauses wrapped in `box*` (true at every moment). The clause shape and the
//! operators appearing in literals place the input in a fragment, which drives
//! solver dispatch: `core` clauses have at most two literals of which at most
//! one is positive, `krom` at most two literals, `horn` at most one positive
//! literal, `bool` anything. Some inputs additionally carry *initial clauses*
//! (non-unit clauses outside any `box*`); those sit outside the base clausal
//! shape and are flagged as non-clausal.

use std::collections::BTreeSet;
use std::fmt;

use crate::formula::Formula;

/// An atom under a stack of temporal operators, or the falsum. Negation is not
/// part of the literal: clauses track polarity separately.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PositiveLiteral {
    Bottom,
    Atom(String),
    NextF(Box<PositiveLiteral>),
    NextP(Box<PositiveLiteral>),
    BoxF(Box<PositiveLiteral>),
    BoxP(Box<PositiveLiteral>),
    BoxAll(Box<PositiveLiteral>),
}

impl PositiveLiteral {
    pub fn atom(name: &str) -> PositiveLiteral {
        PositiveLiteral::Atom(name.to_owned())
    }

    pub fn next_f(l: PositiveLiteral) -> PositiveLiteral {
        PositiveLiteral::NextF(Box::new(l))
    }

    pub fn next_p(l: PositiveLiteral) -> PositiveLiteral {
        PositiveLiteral::NextP(Box::new(l))
    }

    pub fn box_f(l: PositiveLiteral) -> PositiveLiteral {
        PositiveLiteral::BoxF(Box::new(l))
    }

    pub fn box_p(l: PositiveLiteral) -> PositiveLiteral {
        PositiveLiteral::BoxP(Box::new(l))
    }

    pub fn box_all(l: PositiveLiteral) -> PositiveLiteral {
        PositiveLiteral::BoxAll(Box::new(l))
    }

    pub fn node_count(&self) -> usize {
        match self {
            PositiveLiteral::Bottom | PositiveLiteral::Atom(_) => 1,
            PositiveLiteral::NextF(l)
            | PositiveLiteral::NextP(l)
            | PositiveLiteral::BoxF(l)
            | PositiveLiteral::BoxP(l)
            | PositiveLiteral::BoxAll(l) => 1 + l.node_count(),
        }
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            PositiveLiteral::Bottom => {}
            PositiveLiteral::Atom(name) => {
                out.insert(name.clone());
            }
            PositiveLiteral::NextF(l)
            | PositiveLiteral::NextP(l)
            | PositiveLiteral::BoxF(l)
            | PositiveLiteral::BoxP(l)
            | PositiveLiteral::BoxAll(l) => l.collect_atoms(out),
        }
    }

    /// The least operator set this literal fits into.
    pub fn op_requirement(&self) -> OpSet {
        match self {
            PositiveLiteral::Bottom | PositiveLiteral::Atom(_) => OpSet::Star,
            PositiveLiteral::BoxAll(l) => l.op_requirement(),
            PositiveLiteral::BoxF(l) | PositiveLiteral::BoxP(l) => {
                OpSet::Box.max(l.op_requirement())
            }
            PositiveLiteral::NextF(l) | PositiveLiteral::NextP(l) => {
                OpSet::BoxNext.max(l.op_requirement())
            }
        }
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            PositiveLiteral::Bottom => Formula::False,
            PositiveLiteral::Atom(name) => Formula::Var(name.clone()),
            PositiveLiteral::NextF(l) => Formula::next_f(l.to_formula()),
            PositiveLiteral::NextP(l) => Formula::next_p(l.to_formula()),
            PositiveLiteral::BoxF(l) => Formula::box_f(l.to_formula()),
            PositiveLiteral::BoxP(l) => Formula::box_p(l.to_formula()),
            PositiveLiteral::BoxAll(l) => Formula::box_all(l.to_formula()),
        }
    }
}

impl fmt::Display for PositiveLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// A disjunction of negated (`neg`) and plain (`pos`) positive literals.
/// Duplicate literals on a side are dropped at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub neg: Vec<PositiveLiteral>,
    pub pos: Vec<PositiveLiteral>,
}

impl Clause {
    pub fn new(neg: Vec<PositiveLiteral>, pos: Vec<PositiveLiteral>) -> Clause {
        fn dedup(side: Vec<PositiveLiteral>) -> Vec<PositiveLiteral> {
            let mut out: Vec<PositiveLiteral> = Vec::with_capacity(side.len());
            for l in side {
                if !out.contains(&l) {
                    out.push(l);
                }
            }
            out
        }
        Clause {
            neg: dedup(neg),
            pos: dedup(pos),
        }
    }

    pub fn width(&self) -> usize {
        self.neg.len() + self.pos.len()
    }

    /// True when some literal occurs both negated and plain.
    pub fn is_tautology(&self) -> bool {
        self.neg.iter().any(|l| self.pos.contains(l))
    }

    /// The least clause class this clause belongs to.
    pub fn class(&self) -> ClauseClass {
        let binary = self.width() <= 2;
        let at_most_one_pos = self.pos.len() <= 1;
        match (binary, at_most_one_pos) {
            (true, true) => ClauseClass::Core,
            (false, true) => ClauseClass::Horn,
            (true, false) => ClauseClass::Krom,
            (false, false) => ClauseClass::Bool,
        }
    }

    /// Node count of the disjunction: each negated literal costs one extra
    /// node, and an n-ary disjunction costs n−1 connective nodes. The empty
    /// clause counts as a single falsum node.
    pub fn node_count(&self) -> usize {
        if self.width() == 0 {
            return 1;
        }
        let literals: usize = self
            .neg
            .iter()
            .map(|l| 1 + l.node_count())
            .chain(self.pos.iter().map(|l| l.node_count()))
            .sum();
        literals + (self.width() - 1)
    }

    pub fn to_formula(&self) -> Formula {
        let parts: Vec<Formula> = self
            .neg
            .iter()
            .map(|l| Formula::not(l.to_formula()))
            .chain(self.pos.iter().map(|l| l.to_formula()))
            .collect();
        if parts.is_empty() {
            return Formula::False;
        }
        let mut iter = parts.into_iter();
        let mut acc = iter.next().unwrap();
        for p in iter {
            acc = Formula::or(acc, p);
        }
        acc
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        for l in self.neg.iter().chain(&self.pos) {
            l.collect_atoms(out);
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// Clause classes ordered by containment: `core` lies below both `horn` and
/// `krom`, which both lie below `bool`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClauseClass {
    Core,
    Horn,
    Krom,
    Bool,
}

impl ClauseClass {
    /// Least class containing both arguments. `horn` and `krom` are
    /// incomparable, so their join is `bool`.
    pub fn join(self, other: ClauseClass) -> ClauseClass {
        use ClauseClass::*;
        match (self, other) {
            (Core, x) | (x, Core) => x,
            (Bool, _) | (_, Bool) => Bool,
            (Horn, Horn) => Horn,
            (Krom, Krom) => Krom,
            (Horn, Krom) | (Krom, Horn) => Bool,
        }
    }

    /// Containment order; `other` must be a superclass or equal.
    pub fn within(self, other: ClauseClass) -> bool {
        self.join(other) == other
    }
}

impl fmt::Display for ClauseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClauseClass::Core => "core",
            ClauseClass::Horn => "horn",
            ClauseClass::Krom => "krom",
            ClauseClass::Bool => "bool",
        };
        write!(f, "{}", s)
    }
}

/// Operator sets ordered by inclusion: `box*` alone, then the box operators,
/// then box plus next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpSet {
    Star,
    Box,
    BoxNext,
}

impl fmt::Display for OpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OpSet::Star => "star",
            OpSet::Box => "box",
            OpSet::BoxNext => "box_next",
        };
        write!(f, "{}", s)
    }
}

/// The fragment a clausal form lives in: least clause class, least operator
/// set, and whether non-unit initial clauses are present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fragment {
    pub class: ClauseClass,
    pub ops: OpSet,
    pub non_clausal: bool,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.class, self.ops)?;
        if self.non_clausal {
            write!(f, "+initial-clauses")?;
        }
        Ok(())
    }
}

/// A conjunction of initial literals, initial clauses, and always-clauses.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClausalForm {
    /// Literals asserted at moment 0.
    pub initial_pos: Vec<PositiveLiteral>,
    /// Literals denied at moment 0.
    pub initial_neg: Vec<PositiveLiteral>,
    /// Non-unit clauses asserted at moment 0 only (outside the base shape).
    pub initial_clauses: Vec<Clause>,
    /// Clauses asserted at every moment.
    pub boxed: Vec<Clause>,
}

impl ClausalForm {
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for l in self.initial_pos.iter().chain(&self.initial_neg) {
            l.collect_atoms(&mut out);
        }
        for c in self.initial_clauses.iter().chain(&self.boxed) {
            c.collect_atoms(&mut out);
        }
        out
    }

    /// Every literal of the form, across initial literals and all clauses.
    pub fn literals(&self) -> impl Iterator<Item = &PositiveLiteral> {
        self.initial_pos
            .iter()
            .chain(&self.initial_neg)
            .chain(
                self.initial_clauses
                    .iter()
                    .chain(&self.boxed)
                    .flat_map(|c| c.neg.iter().chain(&c.pos)),
            )
    }

    /// Least clause class and operator set covering the whole form.
    pub fn classify(&self) -> Fragment {
        let mut class = ClauseClass::Core;
        for c in self.initial_clauses.iter().chain(&self.boxed) {
            class = class.join(c.class());
        }
        let mut ops = OpSet::Star;
        for l in self.literals() {
            ops = ops.max(l.op_requirement());
        }
        Fragment {
            class,
            ops,
            non_clausal: !self.initial_clauses.is_empty(),
        }
    }

    /// Total node count over all conjuncts. The `box*` wrapping a clause is
    /// part of the conjunct structure, not of the counted clause body, so
    /// `box*(!p | q)` counts 4 nodes. Never returns 0.
    pub fn size(&self) -> usize {
        let mut n = 0;
        for l in &self.initial_pos {
            n += l.node_count();
        }
        for l in &self.initial_neg {
            n += 1 + l.node_count();
        }
        for c in self.initial_clauses.iter().chain(&self.boxed) {
            n += c.node_count();
        }
        n.max(1)
    }

    /// True when falsity is syntactically present: a falsum initial literal,
    /// or a clause with no literals besides falsum ones in positive position.
    pub fn syntactically_false(&self) -> bool {
        self.initial_pos.contains(&PositiveLiteral::Bottom)
            || self
                .initial_clauses
                .iter()
                .chain(&self.boxed)
                .any(|c| c.neg.is_empty() && c.pos.iter().all(|l| *l == PositiveLiteral::Bottom))
    }

    /// Conjunction of two forms.
    pub fn merge(mut self, other: ClausalForm) -> ClausalForm {
        self.initial_pos.extend(other.initial_pos);
        self.initial_neg.extend(other.initial_neg);
        self.initial_clauses.extend(other.initial_clauses);
        self.boxed.extend(other.boxed);
        self
    }

    pub fn to_formula(&self) -> Formula {
        let parts: Vec<Formula> = self
            .initial_pos
            .iter()
            .map(|l| l.to_formula())
            .chain(
                self.initial_neg
                    .iter()
                    .map(|l| Formula::not(l.to_formula())),
            )
            .chain(self.initial_clauses.iter().map(|c| c.to_formula()))
            .chain(
                self.boxed
                    .iter()
                    .map(|c| Formula::box_all(c.to_formula())),
            )
            .collect();
        if parts.is_empty() {
            Formula::True
        } else {
            Formula::conjoin(parts)
        }
    }

    /// Reads an already-clausal formula off its syntax tree, without renaming:
    /// each conjunct must be a literal, a negated literal, a clause, or `box*`
    /// over a clause (implications are accepted as clause sugar). Returns
    /// `None` when some conjunct is outside that shape.
    pub fn from_formula(f: &Formula) -> Option<ClausalForm> {
        let mut cf = ClausalForm::default();
        for conj in f.conjuncts() {
            match conj {
                Formula::True => {}
                Formula::BoxAll(inner) => cf.boxed.push(clause_of(inner)?),
                _ => {
                    if let Some(l) = literal_of(conj) {
                        cf.initial_pos.push(l);
                    } else if let Formula::Not(g) = conj {
                        cf.initial_neg.push(literal_of(g)?);
                    } else {
                        let cl = clause_of(conj)?;
                        if cl.width() <= 1 && cl.neg.len() == 1 {
                            // a clause that collapsed to one negated literal
                            // is an initial denial
                            cf.initial_neg.push(cl.neg.into_iter().next().unwrap());
                        } else {
                            cf.initial_clauses.push(cl);
                        }
                    }
                }
            }
        }
        Some(cf)
    }
}

impl fmt::Display for ClausalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// Strict literal reading of a formula, if it has one.
pub fn literal_of(f: &Formula) -> Option<PositiveLiteral> {
    match f {
        Formula::Var(name) => Some(PositiveLiteral::Atom(name.clone())),
        Formula::False => Some(PositiveLiteral::Bottom),
        Formula::NextF(g) => literal_of(g).map(PositiveLiteral::next_f),
        Formula::NextP(g) => literal_of(g).map(PositiveLiteral::next_p),
        Formula::BoxF(g) => literal_of(g).map(PositiveLiteral::box_f),
        Formula::BoxP(g) => literal_of(g).map(PositiveLiteral::box_p),
        Formula::BoxAll(g) => literal_of(g).map(PositiveLiteral::box_all),
        _ => None,
    }
}

/// Strict clause reading: a disjunction of possibly negated literals, with
/// `a -> b` read as `!a | b` and a conjunction on the negated side unfolded
/// into several negated literals.
pub fn clause_of(f: &Formula) -> Option<Clause> {
    let mut neg = Vec::new();
    let mut pos = Vec::new();
    collect_clause(f, false, &mut neg, &mut pos)?;
    Some(Clause::new(neg, pos))
}

fn collect_clause(
    f: &Formula,
    negated: bool,
    neg: &mut Vec<PositiveLiteral>,
    pos: &mut Vec<PositiveLiteral>,
) -> Option<()> {
    match f {
        Formula::Or(a, b) if !negated => {
            collect_clause(a, false, neg, pos)?;
            collect_clause(b, false, neg, pos)
        }
        Formula::Implies(a, b) if !negated => {
            collect_clause(a, true, neg, pos)?;
            collect_clause(b, false, neg, pos)
        }
        Formula::And(a, b) if negated => {
            collect_clause(a, true, neg, pos)?;
            collect_clause(b, true, neg, pos)
        }
        Formula::Not(g) => collect_clause(g, !negated, neg, pos),
        _ => {
            let l = literal_of(f)?;
            if negated {
                neg.push(l);
            } else {
                pos.push(l);
            }
            Some(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn cf(text: &str) -> ClausalForm {
        ClausalForm::from_formula(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn classifies_core_box() {
        let form = cf("p & box*(p -> boxF q) & box*(q -> r) & box*(p -> r)");
        let frag = form.classify();
        assert_eq!(frag.class, ClauseClass::Core);
        assert_eq!(frag.ops, OpSet::Box);
        assert!(!frag.non_clausal);
    }

    #[test]
    fn classifies_krom_star() {
        let frag = cf("box*(p | q)").classify();
        assert_eq!(frag.class, ClauseClass::Krom);
        assert_eq!(frag.ops, OpSet::Star);
    }

    #[test]
    fn classifies_core_box_next() {
        let frag = cf("p & box*(!p | nextF p)").classify();
        assert_eq!(frag.class, ClauseClass::Core);
        assert_eq!(frag.ops, OpSet::BoxNext);
    }

    #[test]
    fn classifies_horn_and_bool() {
        let frag = cf("box*(!p | !q | r)").classify();
        assert_eq!(frag.class, ClauseClass::Horn);
        let frag = cf("box*(!p | q | r)").classify();
        assert_eq!(frag.class, ClauseClass::Bool);
        // horn join krom is bool
        let frag = cf("box*(!p | !q | r) & box*(p | q)").classify();
        assert_eq!(frag.class, ClauseClass::Bool);
    }

    #[test]
    fn initial_clauses_mark_non_clausal() {
        let form = cf("(!box* c | r) & box*(!p | c)");
        assert_eq!(form.initial_clauses.len(), 1);
        let frag = form.classify();
        assert!(frag.non_clausal);
        assert_eq!(frag.class, ClauseClass::Core);
    }

    #[test]
    fn size_counts_nodes() {
        assert_eq!(cf("p").size(), 1);
        assert_eq!(cf("box*(!p | q)").size(), 4);
        assert_eq!(cf("!p").size(), 2);
        // monotone under adding conjuncts
        let small = cf("p & box*(!p | q)");
        let big = cf("p & box*(!p | q) & box*(!q | boxF r)");
        assert!(small.size() < big.size());
    }

    #[test]
    fn from_formula_rejects_non_clausal_shapes() {
        assert!(ClausalForm::from_formula(&parse("p U q").unwrap()).is_none());
        assert!(ClausalForm::from_formula(&parse("box*(p & q)").unwrap()).is_none());
        assert!(ClausalForm::from_formula(&parse("diaF p").unwrap()).is_none());
    }

    #[test]
    fn implications_are_clause_sugar() {
        let form = cf("box*(p & q -> r)");
        assert_eq!(
            form.boxed,
            vec![Clause::new(
                vec![PositiveLiteral::atom("p"), PositiveLiteral::atom("q")],
                vec![PositiveLiteral::atom("r")]
            )]
        );
    }

    #[test]
    fn duplicate_literals_are_dropped() {
        let c = Clause::new(
            vec![PositiveLiteral::atom("p"), PositiveLiteral::atom("p")],
            vec![PositiveLiteral::atom("q")],
        );
        assert_eq!(c.width(), 2);
    }

    #[test]
    fn to_formula_round_trips_through_from_formula() {
        let texts = [
            "p & !q & box*(!p | boxF q) & box*(p | q)",
            "box*(!p | box* q) & nextF p",
            "false",
        ];
        for t in texts {
            let form = cf(t);
            let back = ClausalForm::from_formula(&form.to_formula()).unwrap();
            assert_eq!(form, back, "round trip changed {}", t);
        }
    }

    #[test]
    fn syntactic_falsity() {
        assert!(cf("false").syntactically_false());
        assert!(!cf("p & box*(!p)").syntactically_false());
        assert!(ClausalForm {
            boxed: vec![Clause::new(vec![], vec![])],
            ..Default::default()
        }
        .syntactically_false());
    }

    #[test]
    fn classify_is_monotone_under_added_conjuncts() {
        let base = cf("p & box*(!p | q)");
        let bigger = base.clone().merge(cf("box*(p | q) & box*(!p | boxF q)"));
        let f1 = base.classify();
        let f2 = bigger.classify();
        assert!(f1.class.within(f2.class));
        assert!(f1.ops <= f2.ops);
    }
}
