//! Finite graphs, their cycle spaces, and lifting a relator cycle to an
//! embedded cycle modulo the cycles that avoid a designated edge set.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::groupring::{CoefficientDomain, Scalar};
use crate::linalg::{rank_field, same_lattice, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// An oriented multigraph. Loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

/// A step along an edge, forwards or against its orientation.
pub type Step = (usize, bool);

impl Graph {
    /// Vertices `0..n` named by their index, edges labelled `e1, e2, ..`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(s, t)) = edges.iter().find(|&&(s, t)| s >= n || t >= n) {
            return input(format!("edge ({s}, {t}) leaves the {n} vertices"));
        }
        Ok(Graph {
            vertices: (0..n).map(|v| v.to_string()).collect(),
            edges: edges
                .iter()
                .enumerate()
                .map(|(i, &(source, target))| Edge { source, target, label: format!("e{}", i + 1) })
                .collect(),
        })
    }

    /// Parses one edge per line as `source target [label]`. Vertices are
    /// numbered in order of first appearance; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(Error::Parse { line: lineno + 1, msg: "expected `source target [label]`".into() });
            }
            let mut vertex = |name: &str| {
                *index.entry(name.to_string()).or_insert_with(|| {
                    vertices.push(name.to_string());
                    vertices.len() - 1
                })
            };
            let source = vertex(fields[0]);
            let target = vertex(fields[1]);
            let label = fields.get(2).map_or_else(|| format!("e{}", edges.len() + 1), |l| l.to_string());
            edges.push(Edge { source, target, label });
        }
        Ok(Graph { vertices, edges })
    }

    pub fn render(&self) -> String {
        self.edges
            .iter()
            .map(|e| format!("{} {} {}\n", self.vertices[e.source], self.vertices[e.target], e.label))
            .collect()
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    fn ends(&self, (e, forward): Step) -> (usize, usize) {
        let edge = &self.edges[e];
        if forward {
            (edge.source, edge.target)
        } else {
            (edge.target, edge.source)
        }
    }

    /// `∂c`: each edge contributes its coefficient at the target and minus
    /// it at the source.
    pub fn boundary(&self, chain: &[Scalar], domain: &CoefficientDomain) -> Vec<Scalar> {
        let mut out = vec![domain.zero(); self.vertices.len()];
        for (e, c) in self.edges.iter().zip(chain) {
            out[e.target] = domain.add(&out[e.target], c);
            out[e.source] = domain.sub(&out[e.source], c);
        }
        out
    }

    /// Chain of a path, one `±1` per step.
    pub fn chain(&self, steps: &[Step], domain: &CoefficientDomain) -> Vec<Scalar> {
        let mut out = vec![domain.zero(); self.edges.len()];
        for &(e, forward) in steps {
            let unit = if forward { domain.one() } else { domain.neg(&domain.one()) };
            out[e] = domain.add(&out[e], &unit);
        }
        out
    }

    /// Whether the steps form a closed path through pairwise distinct
    /// vertices using each edge once.
    pub fn is_embedded_cycle(&self, steps: &[Step]) -> bool {
        let Some(&first) = steps.first() else { return false };
        let start = self.ends(first).0;
        let mut at = start;
        let mut visited = vec![false; self.vertices.len()];
        let mut used = vec![false; self.edges.len()];
        for &step in steps {
            let (from, to) = self.ends(step);
            if from != at || visited[from] || std::mem::replace(&mut used[step.0], true) {
                return false;
            }
            visited[from] = true;
            at = to;
        }
        at == start
    }

    fn incident(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if allowed[e] && edge.source != edge.target {
                inc[edge.source].push(e);
                inc[edge.target].push(e);
            }
        }
        inc
    }

    /// Breadth-first spanning forest of the allowed edges, rooted at each
    /// unvisited vertex in index order.
    fn bfs_forest(&self, allowed: &[bool]) -> Vec<bool> {
        let inc = self.incident(allowed);
        let mut tree = vec![false; self.edges.len()];
        let mut seen = vec![false; self.vertices.len()];
        for root in 0..self.vertices.len() {
            if std::mem::replace(&mut seen[root], true) {
                continue;
            }
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &e in &inc[v] {
                    let edge = &self.edges[e];
                    let other = if edge.source == v { edge.target } else { edge.source };
                    if !std::mem::replace(&mut seen[other], true) {
                        tree[e] = true;
                        queue.push_back(other);
                    }
                }
            }
        }
        tree
    }

    /// The unique path from `from` to `to` inside a forest.
    fn tree_path(&self, tree: &[bool], from: usize, to: usize) -> Option<Vec<Step>> {
        let inc = self.incident(tree);
        let mut back: Vec<Option<Step>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &e in &inc[v] {
                let forward = self.edges[e].source == v;
                let other = if forward { self.edges[e].target } else { self.edges[e].source };
                if !std::mem::replace(&mut seen[other], true) {
                    back[other] = Some((e, forward));
                    queue.push_back(other);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = to;
        while v != from {
            let step = back[v].expect("reached vertex has a parent");
            path.push(step);
            v = self.ends(step).0;
        }
        path.reverse();
        Some(path)
    }

    /// The cycle closed by a non-forest edge: the edge itself, then back
    /// through the forest.
    fn fundamental_cycle(&self, tree: &[bool], e: usize) -> Vec<Step> {
        let edge = &self.edges[e];
        let mut steps = vec![(e, true)];
        if edge.source != edge.target {
            steps.extend(self.tree_path(tree, edge.target, edge.source).expect("ends lie in one tree"));
        }
        steps
    }

    fn components(&self, allowed: &[bool]) -> usize {
        let tree = self.bfs_forest(allowed);
        self.vertices.len() - tree.iter().filter(|&&t| t).count()
    }
}

/// A graph with a spanning forest and the fundamental-cycle basis of its
/// cycle space `Z1`.
#[derive(Clone, Debug)]
pub struct GraphWithCycleSpace {
    pub graph: Graph,
    pub domain: CoefficientDomain,
    pub forest: Vec<bool>,
    pub components: usize,
    /// One embedded cycle per non-forest edge, in edge order.
    pub cycles: Vec<Vec<Step>>,
    pub basis: Vec<Vec<Scalar>>,
}

impl GraphWithCycleSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn cycle_space(g: &Graph, domain: &CoefficientDomain) -> GraphWithCycleSpace {
    cycle_space_within(g, &vec![true; g.edges.len()], domain)
}

fn cycle_space_within(g: &Graph, allowed: &[bool], domain: &CoefficientDomain) -> GraphWithCycleSpace {
    let forest = g.bfs_forest(allowed);
    let cycles: Vec<Vec<Step>> =
        (0..g.edges.len()).filter(|&e| allowed[e] && !forest[e]).map(|e| g.fundamental_cycle(&forest, e)).collect();
    let basis = cycles.iter().map(|c| g.chain(c, domain)).collect();
    GraphWithCycleSpace {
        graph: g.clone(),
        domain: domain.clone(),
        components: g.components(allowed),
        forest,
        cycles,
        basis,
    }
}

/// `r = unit * [cycle] + remainder`, with the remainder written in the
/// fundamental-cycle basis of the support minus the designated edges.
#[derive(Clone, Debug)]
pub struct CycleLift {
    pub cycle: Vec<Step>,
    pub unit: Scalar,
    pub remainder: Vec<Scalar>,
    /// Edges of the minimal subgraph carrying `r`.
    pub support: Vec<usize>,
    pub basis: Vec<Vec<Scalar>>,
    pub coefficients: Vec<Scalar>,
}

impl CycleLift {
    /// Re-checks the certificate from scratch.
    pub fn verify(&self, g: &Graph, designated: &[usize], r: &[Scalar], domain: &CoefficientDomain) -> bool {
        if !g.is_embedded_cycle(&self.cycle) || !domain.is_unit(&self.unit) {
            return false;
        }
        let lambda = g.chain(&self.cycle, domain);
        let expected: Vec<Scalar> =
            r.iter().zip(&lambda).map(|(x, l)| domain.sub(x, &domain.mul(&self.unit, l))).collect();
        if expected != self.remainder || designated.iter().any(|&e| !self.remainder[e].is_zero()) {
            return false;
        }
        let mut combo = vec![domain.zero(); g.edges.len()];
        for (c, b) in self.coefficients.iter().zip(&self.basis) {
            for (x, y) in combo.iter_mut().zip(b) {
                *x = domain.add(x, &domain.mul(c, y));
            }
        }
        let boundary_free = self.basis.iter().all(|b| g.boundary(b, domain).iter().all(Zero::is_zero));
        let off_designated = self.basis.iter().all(|b| designated.iter().all(|&e| b[e].is_zero()));
        combo == self.remainder && boundary_free && off_designated
    }
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Lifted(CycleLift),
    NotApplicable { reason: String },
}

fn to_integers(rows: &[Vec<Scalar>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|x| x.to_integer()).collect::<Vec<BigInt>>()).collect()
}

/// Finds an embedded cycle `λ` through a designated edge and a unit `u`
/// with `r - u[λ]` a cycle avoiding the designated edges, after checking
/// that the cycle space is spanned by `r` and such cycles.
pub fn lift_cycle(g: &Graph, designated: &[usize], r: &[Scalar], domain: &CoefficientDomain) -> Result<LiftOutcome> {
    let not_applicable = |reason: &str| Ok(LiftOutcome::NotApplicable { reason: reason.into() });
    if r.len() != g.edges.len() {
        return input(format!("chain has {} coefficients for {} edges", r.len(), g.edges.len()));
    }
    if let Some(&e) = designated.iter().find(|&&e| e >= g.edges.len()) {
        return input(format!("designated edge {e} out of range"));
    }
    if let Some(x) = r.iter().find(|x| !domain.contains(x)) {
        return input(format!("coefficient {x} is not in {}", domain.name()));
    }
    let mut is_designated = vec![false; g.edges.len()];
    for &e in designated {
        is_designated[e] = true;
    }
    if !g.boundary(r, domain).iter().all(Zero::is_zero) {
        return not_applicable("r is not a cycle");
    }
    if designated.iter().all(|&e| r[e].is_zero()) {
        return not_applicable("r vanishes on every designated edge");
    }

    let full = cycle_space(g, domain);
    let avoiding: Vec<bool> = is_designated.iter().map(|d| !d).collect();
    let k = cycle_space_within(g, &avoiding, domain);
    let mut generators = k.basis.clone();
    generators.push(r.to_vec());
    let spans = match domain {
        CoefficientDomain::Integers => {
            same_lattice(&to_integers(&generators), &to_integers(&full.basis), g.edges.len())
        }
        _ => rank_field(&generators, domain) == full.dimension(),
    };
    if !spans {
        return not_applicable("the cycle space is not r times the ring plus the cycles avoiding the designated edges");
    }

    // Minimal subgraph carrying r, with dangling vertices pruned.
    let mut gamma: Vec<bool> = r.iter().map(|x| !x.is_zero()).collect();
    loop {
        let mut degree = vec![0usize; g.vertices.len()];
        for (edge, _) in g.edges.iter().zip(&gamma).filter(|(_, &on)| on) {
            degree[edge.source] += 1;
            degree[edge.target] += 1;
        }
        let dangling: Vec<usize> = (0..g.edges.len())
            .filter(|&e| gamma[e] && (degree[g.edges[e].source] <= 1 || degree[g.edges[e].target] <= 1))
            .collect();
        if dangling.is_empty() {
            break;
        }
        for e in dangling {
            gamma[e] = false;
        }
    }
    let support: Vec<usize> = (0..g.edges.len()).filter(|&e| gamma[e]).collect();
    let gamma_off: Vec<bool> = (0..g.edges.len()).map(|e| gamma[e] && !is_designated[e]).collect();
    let base_forest = g.bfs_forest(&gamma_off);
    let kernel = cycle_space_within(g, &gamma_off, domain);

    for &e in support.iter().filter(|&&e| is_designated[e]) {
        // Extend the forest by the other designated edges first so that `e`
        // is left over to close a cycle.
        let mut forest = base_forest.clone();
        for &f in support.iter().filter(|&&f| is_designated[f] && f != e) {
            let edge = &g.edges[f];
            if edge.source != edge.target && g.tree_path(&forest, edge.source, edge.target).is_none() {
                forest[f] = true;
            }
        }
        let cycle = g.fundamental_cycle(&forest, e);
        let unit = r[e].clone();
        if !domain.is_unit(&unit) {
            continue;
        }
        let lambda = g.chain(&cycle, domain);
        let remainder: Vec<Scalar> = r.iter().zip(&lambda).map(|(x, l)| domain.sub(x, &domain.mul(&unit, l))).collect();
        if designated.iter().any(|&f| !remainder[f].is_zero()) {
            continue;
        }
        let coefficients: Vec<Scalar> = (0..g.edges.len())
            .filter(|&f| gamma_off[f] && !kernel.forest[f])
            .map(|f| remainder[f].clone())
            .collect();
        let lift = CycleLift { cycle, unit, remainder, support: support.clone(), basis: kernel.basis.clone(), coefficients };
        if lift.verify(g, designated, r, domain) {
            return Ok(LiftOutcome::Lifted(lift));
        }
    }
    not_applicable("no embedded cycle through a designated edge has a unit coefficient")
}
