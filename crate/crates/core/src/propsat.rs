//! Propositional backends: Horn minimal models by counting unit propagation,
//! 2SAT by implication-graph strongly connected components, and a small
//! complete DPLL for everything else.
//!
//! All three are deterministic: the Horn engine returns the unique ⊆-minimal
//! model, the 2SAT engine reads its model off Tarjan component indices (so a
//! fixed clause order gives a fixed model), and DPLL branches on the lowest
//! unassigned variable with the true branch first.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::hash::Hash;

/// A signed propositional variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: u32,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: u32) -> Lit {
        Lit {
            var,
            positive: true,
        }
    }

    pub fn neg(var: u32) -> Lit {
        Lit {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PropError {
    #[error("clause with {0} positive literals is not Horn")]
    NotHorn(usize),
    #[error("clause of width {0} is not binary")]
    NotBinary(usize),
    #[error("dimacs: {0}")]
    Dimacs(String),
}

/// A CNF over variables `0..num_vars`. Tautological clauses are dropped and
/// duplicate clauses collapse on insert; an inserted empty clause latches the
/// whole set unsatisfiable.
#[derive(Debug, Clone, Default)]
pub struct PropClauseSet {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
    seen: HashSet<Vec<Lit>>,
    has_empty: bool,
}

impl PropClauseSet {
    pub fn new(num_vars: u32) -> PropClauseSet {
        PropClauseSet {
            num_vars,
            ..Default::default()
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn has_empty_clause(&self) -> bool {
        self.has_empty
    }

    pub fn add_clause(&mut self, mut lits: Vec<Lit>) {
        lits.sort();
        lits.dedup();
        for w in lits.windows(2) {
            if w[0].var == w[1].var {
                return; // p and !p together: tautology
            }
        }
        for l in &lits {
            if l.var >= self.num_vars {
                self.num_vars = l.var + 1;
            }
        }
        if lits.is_empty() {
            self.has_empty = true;
        }
        if self.seen.insert(lits.clone()) {
            self.clauses.push(lits);
        }
    }

    /// Truth of the whole set under a total assignment.
    pub fn eval(&self, assign: &[bool]) -> bool {
        !self.has_empty
            && self.clauses.iter().all(|c| {
                c.iter()
                    .any(|l| assign[l.var as usize] == l.positive)
            })
    }
}

/// Solver verdict: a satisfying assignment indexed by variable, or none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropOutcome {
    Sat(Vec<bool>),
    Unsat,
}

impl PropOutcome {
    pub fn model(&self) -> Option<&[bool]> {
        match self {
            PropOutcome::Sat(m) => Some(m),
            PropOutcome::Unsat => None,
        }
    }
}

/// Unique ⊆-minimal model of a Horn set (every clause has at most one
/// positive literal), or `Unsat`. Linear-time counting propagation: a clause
/// fires once all its negative literals have become true.
pub fn horn_min_model(cs: &PropClauseSet) -> Result<PropOutcome, PropError> {
    if cs.has_empty_clause() {
        return Ok(PropOutcome::Unsat);
    }
    let n = cs.num_vars() as usize;
    let mut remaining: Vec<usize> = Vec::with_capacity(cs.clauses().len());
    let mut head: Vec<Option<u32>> = Vec::with_capacity(cs.clauses().len());
    // for each variable, the clauses in which it occurs negatively
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, clause) in cs.clauses().iter().enumerate() {
        let pos: Vec<u32> = clause.iter().filter(|l| l.positive).map(|l| l.var).collect();
        if pos.len() > 1 {
            return Err(PropError::NotHorn(pos.len()));
        }
        head.push(pos.first().copied());
        let negs: Vec<u32> = clause
            .iter()
            .filter(|l| !l.positive)
            .map(|l| l.var)
            .collect();
        remaining.push(negs.len());
        for v in negs {
            occ[v as usize].push(ci);
        }
    }

    let mut truth = vec![false; n];
    let mut queue: Vec<u32> = Vec::new();
    for (ci, &r) in remaining.iter().enumerate() {
        if r == 0 {
            match head[ci] {
                Some(v) => {
                    if !truth[v as usize] {
                        truth[v as usize] = true;
                        queue.push(v);
                    }
                }
                None => return Ok(PropOutcome::Unsat),
            }
        }
    }
    while let Some(v) = queue.pop() {
        for &ci in &occ[v as usize] {
            remaining[ci] -= 1;
            if remaining[ci] == 0 {
                match head[ci] {
                    Some(w) => {
                        if !truth[w as usize] {
                            truth[w as usize] = true;
                            queue.push(w);
                        }
                    }
                    None => return Ok(PropOutcome::Unsat),
                }
            }
        }
    }
    Ok(PropOutcome::Sat(truth))
}

// literal -> implication-graph node
fn lit_node(l: Lit) -> usize {
    (l.var as usize) * 2 + if l.positive { 0 } else { 1 }
}

/// 2SAT by strongly connected components of the implication graph: a clause
/// `A | B` contributes the edges `!A -> B` and `!B -> A`. Unsatisfiable iff
/// some variable shares a component with its own negation; otherwise a
/// variable is true iff its positive node's component completes before its
/// negative node's (components complete sinks-first).
pub fn two_sat(cs: &PropClauseSet) -> Result<PropOutcome, PropError> {
    if cs.has_empty_clause() {
        return Ok(PropOutcome::Unsat);
    }
    let n = cs.num_vars() as usize;
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for clause in cs.clauses() {
        match clause.as_slice() {
            [a] => edges[lit_node(a.negated())].push(lit_node(*a)),
            [a, b] => {
                edges[lit_node(a.negated())].push(lit_node(*b));
                edges[lit_node(b.negated())].push(lit_node(*a));
            }
            wide => return Err(PropError::NotBinary(wide.len())),
        }
    }

    let comp = tarjan_scc(&edges);
    let mut model = vec![false; n];
    for v in 0..n {
        if comp[2 * v] == comp[2 * v + 1] {
            return Ok(PropOutcome::Unsat);
        }
        model[v] = comp[2 * v] < comp[2 * v + 1];
    }
    Ok(PropOutcome::Sat(model))
}

/// Iterative Tarjan; returns per-node component indices in completion order
/// (index 0 completes first, i.e. is a condensation sink).
fn tarjan_scc(edges: &[Vec<usize>]) -> Vec<u32> {
    const UNSET: u32 = u32::MAX;
    let n = edges.len();
    let mut comp = vec![UNSET; n];
    let mut index = vec![UNSET; n];
    let mut low = vec![UNSET; n];
    let mut timer = 0;
    let mut n_comp = 0;
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n];
    // DFS stack of (node, next edge offset)
    let mut stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        stack.push((root, 0));
        while let Some(&mut (u, ref mut ei)) = stack.last_mut() {
            if *ei == 0 {
                index[u] = timer;
                low[u] = timer;
                timer += 1;
                path.push(u);
                on_path[u] = true;
            }
            if let Some(&v) = edges[u].get(*ei) {
                *ei += 1;
                if index[v] == UNSET {
                    stack.push((v, 0));
                } else if on_path[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                if low[u] == index[u] {
                    loop {
                        let v = path.pop().unwrap();
                        on_path[v] = false;
                        comp[v] = n_comp;
                        if v == u {
                            break;
                        }
                    }
                    n_comp += 1;
                }
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                }
            }
        }
    }
    comp
}

/// Complete search with unit propagation; branches on the lowest unassigned
/// variable, true first, so the returned model is input-deterministic.
pub fn dpll(cs: &PropClauseSet) -> PropOutcome {
    if cs.has_empty_clause() {
        return PropOutcome::Unsat;
    }
    let n = cs.num_vars() as usize;
    let clauses = cs.clauses();
    let mut assign: Vec<Option<bool>> = vec![None; n];
    // trail entries: (var, was a decision, decision already flipped to false)
    let mut trail: Vec<(u32, bool, bool)> = Vec::new();

    'search: loop {
        // propagate to fixpoint
        loop {
            let mut changed = false;
            for clause in clauses {
                let mut unassigned = None;
                let mut n_unassigned = 0;
                let mut satisfied = false;
                for l in clause {
                    match assign[l.var as usize] {
                        Some(v) if v == l.positive => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            n_unassigned += 1;
                            unassigned = Some(*l);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (n_unassigned, unassigned) {
                    (0, _) => {
                        // conflict: rewind to the last unflipped decision
                        loop {
                            match trail.pop() {
                                None => return PropOutcome::Unsat,
                                Some((v, true, false)) => {
                                    assign[v as usize] = Some(false);
                                    trail.push((v, true, true));
                                    continue 'search;
                                }
                                Some((v, _, _)) => assign[v as usize] = None,
                            }
                        }
                    }
                    (1, Some(l)) => {
                        assign[l.var as usize] = Some(l.positive);
                        trail.push((l.var, false, false));
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        // decide
        match assign.iter().position(|a| a.is_none()) {
            None => {
                return PropOutcome::Sat(assign.into_iter().map(|a| a.unwrap()).collect());
            }
            Some(v) => {
                assign[v] = Some(true);
                trail.push((v as u32, true, false));
            }
        }
    }
}

/// Interns arbitrary keys as dense variable indices.
#[derive(Debug, Clone)]
pub struct VarPool<T> {
    ids: HashMap<T, u32>,
    keys: Vec<T>,
}

impl<T: Eq + Hash + Clone> VarPool<T> {
    pub fn new() -> VarPool<T> {
        VarPool {
            ids: HashMap::new(),
            keys: Vec::new(),
        }
    }

    pub fn id(&mut self, key: T) -> u32 {
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.keys.len() as u32;
        self.keys.push(key.clone());
        self.ids.insert(key, id);
        id
    }

    pub fn lookup(&self, key: &T) -> Option<u32> {
        self.ids.get(key).copied()
    }

    pub fn key(&self, id: u32) -> &T {
        &self.keys[id as usize]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

impl<T: Eq + Hash + Clone> Default for VarPool<T> {
    fn default() -> Self {
        VarPool::new()
    }
}

/// Reads DIMACS CNF; variables 1..n map to indices 0..n-1.
pub fn read_dimacs(text: &str) -> Result<PropClauseSet, PropError> {
    let mut cs: Option<PropClauseSet> = None;
    let mut current: Vec<Lit> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", vars, _clauses] => {
                    let v: u32 = vars
                        .parse()
                        .map_err(|_| PropError::Dimacs(format!("bad var count '{}'", vars)))?;
                    cs = Some(PropClauseSet::new(v));
                }
                _ => return Err(PropError::Dimacs(format!("bad header '{}'", line))),
            }
            continue;
        }
        let cs = cs
            .as_mut()
            .ok_or_else(|| PropError::Dimacs("clause before header".to_owned()))?;
        for tok in line.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| PropError::Dimacs(format!("bad literal '{}'", tok)))?;
            if x == 0 {
                cs.add_clause(std::mem::take(&mut current));
            } else {
                let var = (x.unsigned_abs() - 1) as u32;
                current.push(Lit {
                    var,
                    positive: x > 0,
                });
            }
        }
    }
    if !current.is_empty() {
        return Err(PropError::Dimacs("clause not terminated by 0".to_owned()));
    }
    cs.ok_or_else(|| PropError::Dimacs("missing header".to_owned()))
}

pub fn to_dimacs(cs: &PropClauseSet) -> String {
    let mut out = format!("p cnf {} {}\n", cs.num_vars(), cs.clauses().len());
    for clause in cs.clauses() {
        for l in clause {
            let x = (l.var as i64 + 1) * if l.positive { 1 } else { -1 };
            let _ = write!(out, "{} ", x);
        }
        out.push_str("0\n");
    }
    out
}
