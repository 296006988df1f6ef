//! Layer-order solver.
//!
//! One boolean per overlapping face pair `(i, j)`, `i < j`, true when `i`
//! lies above `j`. Forced crease orders are unit facts; taco-taco and
//! taco-tortilla constraints are parity constraints; transitivity forbids
//! 3-cycles. Propagation is generalized arc consistency over these small
//! constraints, followed by depth-first search that stops after two
//! solutions. Every complete assignment must also be globally acyclic.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::constraints::{ConstraintKind, ForcedPair, OverlapConstraint};

/// A strict order "face a above face b" over overlapping pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayerOrder {
    above: BTreeSet<(usize, usize)>,
}

impl LayerOrder {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        LayerOrder { above: pairs.into_iter().collect() }
    }

    /// `Some(true)` if `a` is above `b`, `Some(false)` if below, `None` when
    /// the two faces do not overlap.
    pub fn is_above(&self, a: usize, b: usize) -> Option<bool> {
        if self.above.contains(&(a, b)) {
            Some(true)
        } else if self.above.contains(&(b, a)) {
            Some(false)
        } else {
            None
        }
    }

    /// `(upper, lower)` pairs in ascending order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.above.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty()
    }

    /// Sort `faces` top to bottom. The order must be total on them.
    pub fn stack(&self, faces: &[usize]) -> Vec<usize> {
        let mut ranked: Vec<(usize, usize)> = faces
            .iter()
            .map(|&f| (faces.iter().filter(|&&g| self.is_above(g, f) == Some(true)).count(), f))
            .collect();
        ranked.sort_unstable();
        ranked.into_iter().map(|(_, f)| f).collect()
    }

    /// Global depth of each face (0 = topmost reachable), by topological
    /// sort with ties broken by face id. `None` when the order has a cycle.
    pub fn depths(&self, n_faces: usize) -> Option<Vec<usize>> {
        let mut indegree = vec![0usize; n_faces];
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n_faces];
        for &(a, b) in &self.above {
            below[a].push(b);
            indegree[b] += 1;
        }
        let mut depth = vec![0usize; n_faces];
        let mut ready: BTreeSet<usize> = (0..n_faces).filter(|&f| indegree[f] == 0).collect();
        let mut seen = 0;
        while let Some(f) = ready.pop_first() {
            seen += 1;
            for &g in &below[f] {
                depth[g] = depth[g].max(depth[f] + 1);
                indegree[g] -= 1;
                if indegree[g] == 0 {
                    ready.insert(g);
                }
            }
        }
        (seen == n_faces).then_some(depth)
    }

    /// Faces on some cycle of the relation, if any.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in &self.above {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default();
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state: HashMap<usize, u8> = HashMap::new();
        let mut path: Vec<usize> = Vec::new();
        fn dfs(
            v: usize,
            adj: &BTreeMap<usize, Vec<usize>>,
            state: &mut HashMap<usize, u8>,
            path: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            state.insert(v, 1);
            path.push(v);
            for &w in &adj[&v] {
                match state.get(&w).copied().unwrap_or(0) {
                    1 => {
                        let start = path.iter().position(|&x| x == w).unwrap_or(0);
                        return Some(path[start..].to_vec());
                    }
                    0 => {
                        if let Some(c) = dfs(w, adj, state, path) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            path.pop();
            state.insert(v, 2);
            None
        }
        let nodes: Vec<usize> = adj.keys().copied().collect();
        for v in nodes {
            if state.get(&v).copied().unwrap_or(0) == 0 {
                if let Some(c) = dfs(v, &adj, &mut state, &mut path) {
                    return Some(c);
                }
            }
        }
        None
    }
}

/// Verdict of [`layer_solve`].
#[derive(Clone, Debug, PartialEq)]
pub enum LayerOutcome {
    Unique(LayerOrder),
    /// No consistent order; the faces involved in the first conflict found.
    Infeasible { faces: Vec<usize> },
    /// At least two orders; `pair` is the first overlapping pair on which the
    /// two found solutions disagree.
    Ambiguous { first: LayerOrder, second: LayerOrder, pair: (usize, usize) },
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    /// Literal values XOR to zero.
    Even,
    /// The three literals are not all equal.
    NotAllEqual,
}

#[derive(Clone, Debug)]
struct Clause {
    /// `(variable, flip)`: literal value is `value(variable) ^ flip`.
    lits: Vec<(usize, bool)>,
    rule: Rule,
    faces: Vec<usize>,
}

impl Clause {
    fn holds(&self, vals: &[bool]) -> bool {
        match self.rule {
            Rule::Even => !vals.iter().fold(false, |acc, &v| acc ^ v),
            Rule::NotAllEqual => !(vals[0] == vals[1] && vals[1] == vals[2]),
        }
    }
}

struct Problem {
    vars: Vec<(usize, usize)>,
    clauses: Vec<Clause>,
    watch: Vec<Vec<usize>>,
    units: Vec<(usize, bool, [usize; 2])>,
}

impl Problem {
    fn lit(index: &HashMap<(usize, usize), usize>, a: usize, b: usize) -> Option<(usize, bool)> {
        // above(a, b) is the variable for (min, max), flipped when a > b.
        index.get(&(a.min(b), a.max(b))).map(|&v| (v, a > b))
    }

    fn new(pairs: &BTreeSet<(usize, usize)>, constraints: &[OverlapConstraint], forced: &[ForcedPair]) -> Self {
        let vars: Vec<(usize, usize)> = pairs.iter().copied().collect();
        let index: HashMap<(usize, usize), usize> = vars.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut units = Vec::new();
        for f in forced {
            match Self::lit(&index, f.upper, f.lower) {
                Some((v, flip)) => units.push((v, !flip, [f.upper, f.lower])),
                None => log::debug!("forced pair {:?} has no overlap variable", (f.upper, f.lower)),
            }
        }
        let mut clauses = Vec::new();
        for c in constraints {
            let f = &c.faces;
            let spec: Vec<(usize, usize)> = match c.kind {
                ConstraintKind::TacoTaco => vec![(f[2], f[0]), (f[2], f[1]), (f[3], f[0]), (f[3], f[1])],
                ConstraintKind::TacoTortilla => vec![(f[2], f[0]), (f[2], f[1])],
                ConstraintKind::Transitivity => vec![(f[0], f[1]), (f[1], f[2]), (f[2], f[0])],
            };
            let lits: Option<Vec<(usize, bool)>> = spec.iter().map(|&(a, b)| Self::lit(&index, a, b)).collect();
            let Some(lits) = lits else {
                log::debug!("constraint {:?} spans non-overlapping faces; skipped", c.faces);
                continue;
            };
            let rule = match c.kind {
                ConstraintKind::Transitivity => Rule::NotAllEqual,
                _ => Rule::Even,
            };
            clauses.push(Clause { lits, rule, faces: c.faces.clone() });
        }
        let mut watch = vec![Vec::new(); vars.len()];
        for (ci, c) in clauses.iter().enumerate() {
            for &(v, _) in &c.lits {
                if !watch[v].contains(&ci) {
                    watch[v].push(ci);
                }
            }
        }
        Problem { vars, clauses, watch, units }
    }

    /// Propagate from `queue`; `Err` carries the faces of the failed clause.
    fn propagate(&self, asg: &mut [Option<bool>], mut queue: Vec<usize>) -> Result<(), Vec<usize>> {
        while let Some(ci) = queue.pop() {
            let c = &self.clauses[ci];
            let free: Vec<usize> = {
                let mut f: Vec<usize> =
                    c.lits.iter().map(|&(v, _)| v).filter(|&v| asg[v].is_none()).collect();
                f.sort_unstable();
                f.dedup();
                f
            };
            // For each free variable: which values appear in some consistent completion.
            let mut seen = vec![[false; 2]; free.len()];
            let mut any = false;
            for mask in 0u32..(1 << free.len()) {
                let value = |v: usize| -> bool {
                    match free.iter().position(|&x| x == v) {
                        Some(k) => mask >> k & 1 == 1,
                        None => asg[v].unwrap_or(false),
                    }
                };
                let vals: Vec<bool> = c.lits.iter().map(|&(v, flip)| value(v) ^ flip).collect();
                if c.holds(&vals) {
                    any = true;
                    for (k, s) in seen.iter_mut().enumerate() {
                        s[(mask >> k & 1) as usize] = true;
                    }
                }
            }
            if !any {
                return Err(c.faces.clone());
            }
            for (k, &v) in free.iter().enumerate() {
                let forced = match seen[k] {
                    [true, false] => Some(false),
                    [false, true] => Some(true),
                    _ => None,
                };
                if let Some(val) = forced {
                    asg[v] = Some(val);
                    queue.extend(self.watch[v].iter().copied());
                }
            }
        }
        Ok(())
    }

    fn order(&self, asg: &[Option<bool>]) -> LayerOrder {
        LayerOrder::from_pairs(self.vars.iter().zip(asg).map(|(&(i, j), v)| if v.unwrap_or(true) { (i, j) } else { (j, i) }))
    }
}

struct Search<'a> {
    problem: &'a Problem,
    solutions: Vec<Vec<Option<bool>>>,
    conflict: Option<Vec<usize>>,
    cap: usize,
}

impl Search<'_> {
    fn run(&mut self, asg: Vec<Option<bool>>) {
        let Some(v) = asg.iter().position(Option::is_none) else {
            let order = self.problem.order(&asg);
            match order.find_cycle() {
                Some(cycle) => {
                    self.conflict.get_or_insert(cycle);
                }
                None => self.solutions.push(asg),
            }
            return;
        };
        for value in [true, false] {
            if self.solutions.len() >= self.cap {
                return;
            }
            let mut next = asg.clone();
            next[v] = Some(value);
            match self.problem.propagate(&mut next, self.problem.watch[v].clone()) {
                Ok(()) => self.run(next),
                Err(faces) => {
                    self.conflict.get_or_insert(faces);
                }
            }
        }
    }
}

/// Solve for a layer order over the overlapping `pairs` (ascending face ids),
/// enumerating at most two solutions.
pub fn layer_solve(pairs: &BTreeSet<(usize, usize)>, constraints: &[OverlapConstraint], forced: &[ForcedPair]) -> LayerOutcome {
    let problem = Problem::new(pairs, constraints, forced);
    let mut asg: Vec<Option<bool>> = vec![None; problem.vars.len()];
    for &(v, val, faces) in &problem.units {
        match asg[v] {
            Some(old) if old != val => return LayerOutcome::Infeasible { faces: faces.to_vec() },
            _ => asg[v] = Some(val),
        }
    }
    let all: Vec<usize> = (0..problem.clauses.len()).collect();
    if let Err(faces) = problem.propagate(&mut asg, all) {
        return LayerOutcome::Infeasible { faces };
    }
    let mut search = Search { problem: &problem, solutions: Vec::new(), conflict: None, cap: 2 };
    search.run(asg);
    match search.solutions.len() {
        0 => {
            let mut faces = search.conflict.unwrap_or_default();
            faces.dedup();
            LayerOutcome::Infeasible { faces }
        }
        1 => LayerOutcome::Unique(problem.order(&search.solutions[0])),
        _ => {
            let (a, b) = (&search.solutions[0], &search.solutions[1]);
            let k = (0..a.len()).find(|&k| a[k] != b[k]).unwrap_or(0);
            LayerOutcome::Ambiguous { first: problem.order(a), second: problem.order(b), pair: problem.vars[k] }
        }
    }
}
