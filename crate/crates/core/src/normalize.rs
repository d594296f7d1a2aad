//! Normal-form transformations: arbitrary formulas to clausal form,
//! clausal forms to the restricted single-operator shape Ψ ∧ □*Φ, and the
//! surrogate abstraction that turns □-literals into plain atoms.
//!
//! All three steps are equisatisfiability-preserving renamings. Fresh atoms
//! carry reserved prefixes (`_r` for subformula renaming, `_n` for
//! complement atoms, `_p` for the initial trigger, `_s` for literal
//! abbreviations) and are numbered deterministically, so a given input
//! always produces the same output.

use crate::clausal::{Clause, ClausalForm, ClauseClass, Fragment, OpSet, PositiveLiteral};
use crate::formula::Formula;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("clause class {found} exceeds the target class {target}")]
    ClassExceedsTarget {
        found: ClauseClass,
        target: ClauseClass,
    },
    #[error("operator {op} cannot be eliminated into the {target} operator set")]
    OpNotEliminable { op: String, target: OpSet },
}

/// Draws names that collide with nothing seen so far; the first name of a
/// kind is the bare prefix, later ones are numbered.
struct NameGen {
    used: BTreeSet<String>,
}

impl NameGen {
    fn new(used: BTreeSet<String>) -> NameGen {
        NameGen { used }
    }

    fn fresh(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 0;
        while self.used.contains(&name) {
            k += 1;
            name = format!("{}{}", base, k);
        }
        self.used.insert(name.clone());
        name
    }
}

/// Which direction of a definitional renaming must be emitted for the
/// replaced occurrence to be faithful.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pol {
    Pos,
    Neg,
    Both,
}

impl Pol {
    fn flip(self) -> Pol {
        match self {
            Pol::Pos => Pol::Neg,
            Pol::Neg => Pol::Pos,
            Pol::Both => Pol::Both,
        }
    }
}

/// Flattens the conjunctive structure of `f` under the given sign into
/// signed conjuncts.
fn conjuncts_of(f: &Formula, sign: bool, out: &mut Vec<(Formula, bool)>) {
    match (f, sign) {
        (Formula::And(g, h), true) | (Formula::Or(g, h), false) => {
            conjuncts_of(g, sign, out);
            conjuncts_of(h, sign, out);
        }
        (Formula::Implies(g, h), false) => {
            conjuncts_of(g, true, out);
            conjuncts_of(h, false, out);
        }
        (Formula::Not(g), s) => conjuncts_of(g, !s, out),
        _ => out.push((f.clone(), sign)),
    }
}

/// Flattens the disjunctive structure of `f` under the given sign into
/// signed disjuncts.
fn disjuncts_of(f: &Formula, sign: bool, out: &mut Vec<(Formula, bool)>) {
    match (f, sign) {
        (Formula::Or(g, h), true) | (Formula::And(g, h), false) => {
            disjuncts_of(g, sign, out);
            disjuncts_of(h, sign, out);
        }
        (Formula::Implies(g, h), true) => {
            disjuncts_of(g, false, out);
            disjuncts_of(h, true, out);
        }
        (Formula::Not(g), s) => disjuncts_of(g, !s, out),
        _ => out.push((f.clone(), sign)),
    }
}

struct Clausifier {
    names: NameGen,
    complements: BTreeMap<PositiveLiteral, String>,
    out: ClausalForm,
}

impl Clausifier {
    fn new(f: &Formula) -> Clausifier {
        Clausifier {
            names: NameGen::new(f.atoms()),
            complements: BTreeMap::new(),
            out: ClausalForm::default(),
        }
    }

    /// Adds a □*-clause from signed literals, folding the constants: a true
    /// disjunct discharges the clause, a false disjunct drops out.
    fn add_boxed(&mut self, lits: Vec<(PositiveLiteral, bool)>) {
        if lits
            .iter()
            .any(|(l, s)| !s && *l == PositiveLiteral::Bottom)
        {
            return;
        }
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        for (l, s) in lits {
            if l == PositiveLiteral::Bottom {
                continue; // positive ⊥ disjuncts contribute nothing
            }
            if s {
                pos.push(l);
            } else {
                neg.push(l);
            }
        }
        self.out.boxed.push(Clause::new(neg, pos));
    }

    /// Name of the complement atom for a literal, creating it on first use.
    /// The caller receives `true` when the defining clauses still have to be
    /// appended via `complement_axioms` (kept separate so the caller can
    /// order them after its own clause).
    fn complement_name(&mut self, l: &PositiveLiteral) -> (String, bool) {
        if let Some(name) = self.complements.get(l) {
            return (name.clone(), false);
        }
        let base = match l {
            PositiveLiteral::Atom(a) => format!("_n{}", a),
            PositiveLiteral::Bottom => "_t".to_string(),
            _ => "_n".to_string(),
        };
        let name = self.names.fresh(&base);
        self.complements.insert(l.clone(), name.clone());
        (name, true)
    }

    fn complement_axioms(&mut self, l: &PositiveLiteral, name: &str) {
        if *l == PositiveLiteral::Bottom {
            // the complement of falsity: an atom forced true everywhere
            self.out
                .boxed
                .push(Clause::new(vec![], vec![PositiveLiteral::atom(name)]));
            return;
        }
        self.out.boxed.push(Clause::new(
            vec![l.clone(), PositiveLiteral::atom(name)],
            vec![],
        ));
        self.out.boxed.push(Clause::new(
            vec![],
            vec![l.clone(), PositiveLiteral::atom(name)],
        ));
    }

    fn complement(&mut self, l: &PositiveLiteral) -> PositiveLiteral {
        let (name, new) = self.complement_name(l);
        if new {
            self.complement_axioms(l, &name);
        }
        PositiveLiteral::atom(&name)
    }

    /// Renders a formula as a signed positive literal, renaming connectives
    /// and fixpoint operators along the way. The polarity records which
    /// definitional direction the occurrence needs.
    fn lit(&mut self, f: &Formula, pol: Pol) -> (PositiveLiteral, bool) {
        match f {
            Formula::Var(p) => (PositiveLiteral::atom(p), true),
            Formula::True => (PositiveLiteral::Bottom, false),
            Formula::False => (PositiveLiteral::Bottom, true),
            Formula::Not(g) => {
                let (l, s) = self.lit(g, pol.flip());
                (l, !s)
            }
            // next is self-dual, so the sign passes straight through
            Formula::NextF(g) => {
                let (l, s) = self.lit(g, pol);
                (PositiveLiteral::next_f(l), s)
            }
            Formula::NextP(g) => {
                let (l, s) = self.lit(g, pol);
                (PositiveLiteral::next_p(l), s)
            }
            Formula::BoxF(g) => {
                let (l, s) = self.lit(g, pol);
                let inner = if s { l } else { self.complement(&l) };
                (PositiveLiteral::box_f(inner), true)
            }
            Formula::BoxP(g) => {
                let (l, s) = self.lit(g, pol);
                let inner = if s { l } else { self.complement(&l) };
                (PositiveLiteral::box_p(inner), true)
            }
            Formula::BoxAll(g) => {
                let (l, s) = self.lit(g, pol);
                let inner = if s { l } else { self.complement(&l) };
                (PositiveLiteral::box_all(inner), true)
            }
            // a diamond is a negated box over the complemented operand
            Formula::DiaF(g) => {
                let (l, s) = self.lit(g, pol);
                let inner = if s { self.complement(&l) } else { l };
                (PositiveLiteral::box_f(inner), false)
            }
            Formula::DiaP(g) => {
                let (l, s) = self.lit(g, pol);
                let inner = if s { self.complement(&l) } else { l };
                (PositiveLiteral::box_p(inner), false)
            }
            Formula::DiaAll(g) => {
                let (l, s) = self.lit(g, pol);
                let inner = if s { self.complement(&l) } else { l };
                (PositiveLiteral::box_all(inner), false)
            }
            Formula::Until(g, h) => self.rename_fixpoint(g, h, pol, true),
            Formula::Since(g, h) => self.rename_fixpoint(g, h, pol, false),
            Formula::And(..) | Formula::Or(..) | Formula::Implies(..) => {
                let r = self.names.fresh("_r");
                self.define(&r, f, pol);
                (PositiveLiteral::atom(&r), true)
            }
        }
    }

    /// A disjunct of a clause under construction: the literal with its final
    /// sign in the clause.
    fn clause_lit(&mut self, d: &Formula, sign: bool) -> (PositiveLiteral, bool) {
        let (l, s) = self.lit(d, if sign { Pol::Pos } else { Pol::Neg });
        (l, if sign { s } else { !s })
    }

    /// Emits the defining clauses tying the fresh atom `r` to `f`: `r → f`
    /// for positive occurrences, `f → r` for negative ones, both otherwise.
    fn define(&mut self, r: &str, f: &Formula, pol: Pol) {
        if pol == Pol::Pos || pol == Pol::Both {
            let mut conjs = Vec::new();
            conjuncts_of(f, true, &mut conjs);
            for (c, s) in conjs {
                let mut disj = Vec::new();
                disjuncts_of(&c, s, &mut disj);
                let mut lits = vec![(PositiveLiteral::atom(r), false)];
                for (d, ds) in disj {
                    lits.push(self.clause_lit(&d, ds));
                }
                self.add_boxed(lits);
            }
        }
        if pol == Pol::Neg || pol == Pol::Both {
            let mut disjs = Vec::new();
            disjuncts_of(f, true, &mut disjs);
            for (d, s) in disjs {
                let mut inner = Vec::new();
                disjuncts_of(&d, !s, &mut inner);
                let mut lits = vec![(PositiveLiteral::atom(r), true)];
                for (c, cs) in inner {
                    lits.push(self.clause_lit(&c, cs));
                }
                self.add_boxed(lits);
            }
        }
    }

    /// Renames an until/since subformula by a fresh atom. Positive
    /// occurrences get the unfolding clauses plus the diamond conjunct that
    /// forces the fixpoint to be reached (rendered as a negated box over a
    /// complement atom); other occurrences are pinned in both directions.
    fn rename_fixpoint(
        &mut self,
        g: &Formula,
        h: &Formula,
        pol: Pol,
        future: bool,
    ) -> (PositiveLiteral, bool) {
        let r = self.names.fresh("_r");
        let inner_pol = if pol == Pol::Pos { Pol::Pos } else { Pol::Both };
        let (lh, sh) = self.lit(h, inner_pol);
        let (lg, sg) = self.lit(g, inner_pol);
        let nxt = |l: PositiveLiteral| {
            if future {
                PositiveLiteral::next_f(l)
            } else {
                PositiveLiteral::next_p(l)
            }
        };
        let bx = |l: PositiveLiteral| {
            if future {
                PositiveLiteral::box_f(l)
            } else {
                PositiveLiteral::box_p(l)
            }
        };
        let ratom = PositiveLiteral::atom(&r);

        // unfolding: r → ○h ∨ ○g, r → ○h ∨ ○r
        self.add_boxed(vec![
            (ratom.clone(), false),
            (nxt(lh.clone()), sh),
            (nxt(lg.clone()), sg),
        ]);
        self.add_boxed(vec![
            (ratom.clone(), false),
            (nxt(lh.clone()), sh),
            (nxt(ratom.clone()), true),
        ]);
        // eventuality: r → ◇h, i.e. ¬r ∨ ¬□(complement of h)
        if sh {
            let (cname, new) = self.complement_name(&lh);
            self.add_boxed(vec![
                (ratom.clone(), false),
                (bx(PositiveLiteral::atom(&cname)), false),
            ]);
            if new {
                self.complement_axioms(&lh.clone(), &cname);
            }
        } else {
            self.add_boxed(vec![(ratom.clone(), false), (bx(lh.clone()), false)]);
        }

        if pol != Pol::Pos {
            // the complementary safety unfolding: ¬r → ○¬h ∧ (○¬g ∨ ○¬r)
            self.add_boxed(vec![(ratom.clone(), true), (nxt(lh.clone()), !sh)]);
            self.add_boxed(vec![
                (ratom.clone(), true),
                (nxt(lg), !sg),
                (nxt(ratom.clone()), false),
            ]);
        }
        (ratom, true)
    }

    /// Splits the □*-body `g` into clauses, flattening nested □* conjuncts.
    fn boxed_body(&mut self, g: &Formula) {
        let mut conjs = Vec::new();
        conjuncts_of(g, true, &mut conjs);
        for (c, s) in conjs {
            if s {
                if let Formula::BoxAll(inner) = &c {
                    self.boxed_body(inner);
                    continue;
                }
            }
            let mut disj = Vec::new();
            disjuncts_of(&c, s, &mut disj);
            let mut lits = Vec::new();
            for (d, ds) in disj {
                lits.push(self.clause_lit(&d, ds));
            }
            self.add_boxed(lits);
        }
    }

    fn top(&mut self, f: &Formula) {
        let mut conjs = Vec::new();
        conjuncts_of(f, true, &mut conjs);
        for (c, s) in conjs {
            if s {
                if let Formula::BoxAll(inner) = &c {
                    self.boxed_body(inner);
                    continue;
                }
            }
            let mut disj = Vec::new();
            disjuncts_of(&c, s, &mut disj);
            if disj.len() == 1 {
                let (d, ds) = &disj[0];
                let (l, sign) = self.clause_lit(d, *ds);
                if l == PositiveLiteral::Bottom && !sign {
                    continue; // a bare truth
                }
                if sign {
                    self.out.initial_pos.push(l);
                } else {
                    self.out.initial_neg.push(l);
                }
            } else {
                // a genuine initial disjunction: renamed through a fresh
                // atom so the result stays free of initial clauses
                let r = self.names.fresh("_r");
                let mut lits = vec![(PositiveLiteral::atom(&r), false)];
                for (d, ds) in disj {
                    lits.push(self.clause_lit(&d, ds));
                }
                self.add_boxed(lits);
                self.out.initial_pos.push(PositiveLiteral::atom(&r));
            }
        }
    }
}

/// Transforms any formula into an equisatisfiable clausal form with no
/// initial clauses. Conformant inputs come back unchanged up to clause
/// order.
pub fn to_clausal_nf(f: &Formula) -> ClausalForm {
    let mut c = Clausifier::new(f);
    c.top(f);
    c.out
}

/// The restricted shape Ψ ∧ □*Φ: a set of initial atoms plus flat clauses
/// whose literals put an atom under at most one operator of the target set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedForm {
    /// Atoms asserted at moment 0.
    pub psi: BTreeSet<String>,
    /// Clauses of Φ with exactly one positive literal.
    pub phi_pos: Vec<Clause>,
    /// All-negative clauses of Φ.
    pub phi_neg: Vec<Clause>,
    /// The whole of Φ, in input order.
    pub phi_all: Vec<Clause>,
    /// Moment-0-only clauses carried through from non-clausal inputs; empty
    /// for inputs in the base shape.
    pub initial: Vec<Clause>,
    pub ops: OpSet,
}

impl RestrictedForm {
    pub fn atoms(&self) -> BTreeSet<String> {
        self.to_clausal().atoms()
    }

    pub fn class(&self) -> ClauseClass {
        self.phi_all
            .iter()
            .chain(&self.initial)
            .map(Clause::class)
            .fold(ClauseClass::Core, ClauseClass::join)
    }

    /// Node count, matching the clausal-form metric.
    pub fn size(&self) -> usize {
        self.to_clausal().size()
    }

    pub fn to_clausal(&self) -> ClausalForm {
        ClausalForm {
            initial_pos: self.psi.iter().map(|a| PositiveLiteral::atom(a)).collect(),
            initial_neg: Vec::new(),
            initial_clauses: self.initial.clone(),
            boxed: self.phi_all.clone(),
        }
    }
}

/// Rewrites □*λ into □F □P λ, recursively.
fn expand_star(l: &PositiveLiteral) -> PositiveLiteral {
    match l {
        PositiveLiteral::Bottom | PositiveLiteral::Atom(_) => l.clone(),
        PositiveLiteral::NextF(g) => PositiveLiteral::next_f(expand_star(g)),
        PositiveLiteral::NextP(g) => PositiveLiteral::next_p(expand_star(g)),
        PositiveLiteral::BoxF(g) => PositiveLiteral::box_f(expand_star(g)),
        PositiveLiteral::BoxP(g) => PositiveLiteral::box_p(expand_star(g)),
        PositiveLiteral::BoxAll(g) => {
            PositiveLiteral::box_f(PositiveLiteral::box_p(expand_star(g)))
        }
    }
}

struct Restrictor {
    names: NameGen,
    abbrevs: BTreeMap<PositiveLiteral, String>,
    past_surrogates: BTreeMap<String, String>,
    side: Vec<Clause>,
}

impl Restrictor {
    /// Flattens a literal to depth one, abbreviating any nested operand by
    /// a fresh atom pinned to it in both directions.
    fn flatten(&mut self, l: &PositiveLiteral) -> PositiveLiteral {
        let wrap: fn(PositiveLiteral) -> PositiveLiteral = match l {
            PositiveLiteral::Bottom | PositiveLiteral::Atom(_) => return l.clone(),
            PositiveLiteral::NextF(_) => PositiveLiteral::next_f,
            PositiveLiteral::NextP(_) => PositiveLiteral::next_p,
            PositiveLiteral::BoxF(_) => PositiveLiteral::box_f,
            PositiveLiteral::BoxP(_) => PositiveLiteral::box_p,
            PositiveLiteral::BoxAll(_) => PositiveLiteral::box_all,
        };
        let inner = match l {
            PositiveLiteral::NextF(g)
            | PositiveLiteral::NextP(g)
            | PositiveLiteral::BoxF(g)
            | PositiveLiteral::BoxP(g)
            | PositiveLiteral::BoxAll(g) => self.flatten(g),
            _ => unreachable!(),
        };
        match inner {
            // any operator applied to falsity is falsity again
            PositiveLiteral::Bottom => PositiveLiteral::Bottom,
            PositiveLiteral::Atom(_) => wrap(inner),
            nested => wrap(PositiveLiteral::atom(&self.abbreviate(nested))),
        }
    }

    fn abbreviate(&mut self, l: PositiveLiteral) -> String {
        if let Some(name) = self.abbrevs.get(&l) {
            return name.clone();
        }
        let name = self.names.fresh("_s");
        self.side.push(Clause::new(
            vec![PositiveLiteral::atom(&name)],
            vec![l.clone()],
        ));
        self.side
            .push(Clause::new(vec![l.clone()], vec![PositiveLiteral::atom(&name)]));
        self.abbrevs.insert(l, name.clone());
        name
    }

    /// Replaces a flat ○P literal by its dedicated future-linked atom.
    fn eliminate_past_next(&mut self, l: &PositiveLiteral) -> PositiveLiteral {
        if let PositiveLiteral::NextP(inner) = l {
            if let PositiveLiteral::Atom(a) = inner.as_ref() {
                if let Some(name) = self.past_surrogates.get(a) {
                    return PositiveLiteral::atom(name);
                }
                let name = self.names.fresh("_s");
                // □*(○F a' → λ) and □*(λ → ○F a')
                self.side.push(Clause::new(
                    vec![PositiveLiteral::next_f(PositiveLiteral::atom(&name))],
                    vec![PositiveLiteral::atom(a)],
                ));
                self.side.push(Clause::new(
                    vec![PositiveLiteral::atom(a)],
                    vec![PositiveLiteral::next_f(PositiveLiteral::atom(&name))],
                ));
                self.past_surrogates.insert(a.clone(), name.clone());
                return PositiveLiteral::atom(&name);
            }
        }
        l.clone()
    }
}

/// Transforms a clausal form into the restricted shape for the target
/// fragment: the initial conjuncts are folded into clauses guarded by a
/// fresh trigger atom, □* becomes □F □P where the target has separate box
/// operators, nesting is abbreviated away, and for the box-only target any
/// ○-literal is rejected. The clause class of the input is preserved.
pub fn to_restricted(cf: &ClausalForm, target: Fragment) -> Result<RestrictedForm, NormalizeError> {
    let found = cf.classify();
    if !found.class.within(target.class) {
        return Err(NormalizeError::ClassExceedsTarget {
            found: found.class,
            target: target.class,
        });
    }
    for l in cf.literals() {
        let offending = match target.ops {
            OpSet::Star => match l.op_requirement() {
                OpSet::Star => None,
                OpSet::Box => Some("box"),
                OpSet::BoxNext => Some("next"),
            },
            OpSet::Box => {
                if contains_next(l) {
                    Some("next")
                } else {
                    None
                }
            }
            OpSet::BoxNext => None,
        };
        if let Some(op) = offending {
            return Err(NormalizeError::OpNotEliminable {
                op: op.to_string(),
                target: target.ops,
            });
        }
    }

    let mut r = Restrictor {
        names: NameGen::new(cf.atoms()),
        abbrevs: BTreeMap::new(),
        past_surrogates: BTreeMap::new(),
        side: Vec::new(),
    };
    let trigger = r.names.fresh("_p");

    // fold the initial conjuncts behind the trigger
    let mut raw: Vec<Clause> = Vec::new();
    for l in &cf.initial_pos {
        raw.push(Clause::new(
            vec![PositiveLiteral::atom(&trigger)],
            vec![l.clone()],
        ));
    }
    for l in &cf.initial_neg {
        raw.push(Clause::new(
            vec![PositiveLiteral::atom(&trigger), l.clone()],
            vec![],
        ));
    }
    raw.extend(cf.boxed.iter().cloned());

    let rewrite = |r: &mut Restrictor, clause: &Clause| -> Clause {
        let one = |r: &mut Restrictor, l: &PositiveLiteral| {
            let l = if target.ops == OpSet::Star {
                l.clone()
            } else {
                expand_star(l)
            };
            let flat = r.flatten(&l);
            if target.ops == OpSet::BoxNext {
                r.eliminate_past_next(&flat)
            } else {
                flat
            }
        };
        Clause::new(
            clause.neg.iter().map(|l| one(r, l)).collect(),
            clause.pos.iter().map(|l| one(r, l)).collect(),
        )
    };

    let mut phi_all: Vec<Clause> = raw.iter().map(|c| rewrite(&mut r, c)).collect();
    let initial: Vec<Clause> = cf.initial_clauses.iter().map(|c| rewrite(&mut r, c)).collect();

    // the side clauses themselves may contain fresh ○P literals; one more
    // sweep settles them since their own side clauses are ○P-free
    let mut side = std::mem::take(&mut r.side);
    if target.ops == OpSet::BoxNext {
        side = side
            .iter()
            .map(|c| {
                Clause::new(
                    c.neg.iter().map(|l| r.eliminate_past_next(l)).collect(),
                    c.pos.iter().map(|l| r.eliminate_past_next(l)).collect(),
                )
            })
            .collect();
        side.extend(std::mem::take(&mut r.side));
    }
    phi_all.extend(side);

    let mut phi_pos = Vec::new();
    let mut phi_neg = Vec::new();
    for c in &phi_all {
        if c.pos.len() == 1 {
            phi_pos.push(c.clone());
        } else if c.pos.is_empty() {
            phi_neg.push(c.clone());
        }
    }

    Ok(RestrictedForm {
        psi: std::iter::once(trigger).collect(),
        phi_pos,
        phi_neg,
        phi_all,
        initial,
        ops: target.ops,
    })
}

fn contains_next(l: &PositiveLiteral) -> bool {
    match l {
        PositiveLiteral::Bottom | PositiveLiteral::Atom(_) => false,
        PositiveLiteral::NextF(_) | PositiveLiteral::NextP(_) => true,
        PositiveLiteral::BoxF(g) | PositiveLiteral::BoxP(g) | PositiveLiteral::BoxAll(g) => {
            contains_next(g)
        }
    }
}

/// A restricted form with every □-literal replaced by a plain surrogate
/// atom; only atoms and ○F-literals remain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractedForm {
    pub clauses: Vec<Clause>,
    /// Bijection □-literal ↦ surrogate atom.
    pub surrogates: BTreeMap<PositiveLiteral, String>,
}

impl AbstractedForm {
    /// Substitutes the surrogates back, recovering the original Φ.
    pub fn concretize(&self) -> Vec<Clause> {
        let back: BTreeMap<&str, &PositiveLiteral> = self
            .surrogates
            .iter()
            .map(|(l, n)| (n.as_str(), l))
            .collect();
        let undo = |l: &PositiveLiteral| match l {
            PositiveLiteral::Atom(a) => back.get(a.as_str()).cloned().cloned().unwrap_or_else(|| l.clone()),
            _ => l.clone(),
        };
        self.clauses
            .iter()
            .map(|c| Clause::new(c.neg.iter().map(undo).collect(), c.pos.iter().map(undo).collect()))
            .collect()
    }
}

/// Replaces the □F/□P literals of a restricted form's Φ with surrogate
/// atoms named after them (`s_Fq` for □F q); repeated literals share one
/// surrogate and ○F-literals pass through untouched.
pub fn abstract_form(rf: &RestrictedForm) -> AbstractedForm {
    let mut names = NameGen::new(rf.atoms());
    let mut surrogates: BTreeMap<PositiveLiteral, String> = BTreeMap::new();
    let mut one = |names: &mut NameGen,
                   surrogates: &mut BTreeMap<PositiveLiteral, String>,
                   l: &PositiveLiteral|
     -> PositiveLiteral {
        let base = match l {
            PositiveLiteral::BoxF(inner) => match inner.as_ref() {
                PositiveLiteral::Atom(a) => format!("s_F{}", a),
                _ => "s_F".to_string(),
            },
            PositiveLiteral::BoxP(inner) => match inner.as_ref() {
                PositiveLiteral::Atom(a) => format!("s_P{}", a),
                _ => "s_P".to_string(),
            },
            _ => return l.clone(),
        };
        if let Some(name) = surrogates.get(l) {
            return PositiveLiteral::atom(name);
        }
        let name = names.fresh(&base);
        surrogates.insert(l.clone(), name.clone());
        PositiveLiteral::atom(&name)
    };
    let clauses = rf
        .phi_all
        .iter()
        .map(|c| {
            Clause::new(
                c.neg
                    .iter()
                    .map(|l| one(&mut names, &mut surrogates, l))
                    .collect(),
                c.pos
                    .iter()
                    .map(|l| one(&mut names, &mut surrogates, l))
                    .collect(),
            )
        })
        .collect();
    AbstractedForm { clauses, surrogates }
}
