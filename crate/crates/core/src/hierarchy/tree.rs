use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{input, Result};
use crate::presentation::Presentation;

use super::{find_epimorphism, hnn_step, HnnStep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "leaf", rename_all = "snake_case")]
pub enum Leaf {
    Free { rank: usize },
    CyclicOfOrder { order: usize, free_rank: usize },
    Stuck { reason: String },
    Unexpanded,
}

impl Leaf {
    pub fn is_terminal(&self) -> bool {
        matches!(self, Leaf::Free { .. } | Leaf::CyclicOfOrder { .. })
    }

    fn describe(&self) -> String {
        match self {
            Leaf::Free { rank } => format!("free of rank {rank}"),
            Leaf::CyclicOfOrder { order, free_rank: 0 } => format!("cyclic of order {order}"),
            Leaf::CyclicOfOrder { order, free_rank } => format!("cyclic of order {order} * free of rank {free_rank}"),
            Leaf::Stuck { reason } => format!("stuck: {reason}"),
            Leaf::Unexpanded => "unexpanded (depth limit)".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    Leaf(Leaf),
    Step { step: Box<HnnStep>, child: Box<HierarchyNode> },
}

/// A presentation `⟨names | root^power⟩` in the hierarchy.
#[derive(Clone, Debug, Serialize)]
pub struct HierarchyNode {
    pub depth: usize,
    pub presentation: Presentation,
    pub power: usize,
    /// Generators absent from the relator, split off as a free factor.
    pub dropped: Vec<String>,
    pub kind: NodeKind,
}

impl HierarchyNode {
    /// Length of the relator root, zero when there is none.
    pub fn relator_length(&self) -> usize {
        self.presentation.relators().first().map_or(0, |r| r.len())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyTree {
    pub root: HierarchyNode,
}

impl HierarchyTree {
    pub fn nodes(&self) -> Vec<&HierarchyNode> {
        let mut out = vec![&self.root];
        let mut cur = &self.root;
        while let NodeKind::Step { child, .. } = &cur.kind {
            out.push(child);
            cur = child;
        }
        out
    }

    pub fn leaves(&self) -> Vec<&Leaf> {
        self.nodes()
            .into_iter()
            .filter_map(|n| match &n.kind {
                NodeKind::Leaf(l) => Some(l),
                NodeKind::Step { .. } => None,
            })
            .collect()
    }

    pub fn depth(&self) -> usize {
        self.nodes().len() - 1
    }

    /// `(parent, child)` relator lengths along every HNN edge.
    pub fn edge_lengths(&self) -> Vec<(usize, usize)> {
        self.nodes()
            .into_iter()
            .filter_map(|n| match &n.kind {
                NodeKind::Step { child, .. } => Some((n.relator_length(), child.relator_length())),
                NodeKind::Leaf(_) => None,
            })
            .collect()
    }

    pub fn lengths_decrease(&self) -> bool {
        self.edge_lengths().iter().all(|(a, b)| b < a)
    }

    pub fn all_leaves_terminal(&self) -> bool {
        self.leaves().iter().all(|l| l.is_terminal())
    }

    /// One node per line, children indented by two spaces.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for node in self.nodes() {
            let pad = "  ".repeat(node.depth);
            let p = &node.presentation;
            let relator = match p.relators().first() {
                Some(r) if node.power > 1 => format!("({})^{}", p.render(r), node.power),
                Some(r) => p.render(r),
                None => String::new(),
            };
            let mut line = format!("{pad}< {} | {relator} >", p.names().join(", "));
            if !node.dropped.is_empty() {
                let _ = write!(line, " * free<{}>", node.dropped.join(", "));
            }
            match &node.kind {
                NodeKind::Leaf(l) => {
                    let _ = write!(line, "  [{}]", l.describe());
                }
                NodeKind::Step { step, .. } => {
                    let _ = write!(
                        line,
                        "  phi: {}; window [{}, {}]; u = {}",
                        step.epimorphism.render(&p.names()),
                        step.window.0,
                        step.window.1,
                        step.base.render(&step.u)
                    );
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Repeats restriction to mentioned generators and one HNN step until the
/// relator has length at most one or `max_depth` steps have been taken.
pub fn build_hierarchy(p: &Presentation, power: usize, max_depth: usize) -> Result<HierarchyTree> {
    if p.relators().len() > 1 {
        return input("hierarchy needs at most one relator");
    }
    if power == 0 {
        return input("relator power must be positive");
    }
    let with_power = match p.relators().first() {
        Some(r) if power > 1 => Presentation::new(&p.names(), vec![r.pow(power as i64)])?,
        _ => p.clone(),
    };
    Ok(HierarchyTree { root: expand(&with_power, 0, max_depth)? })
}

fn expand(p: &Presentation, depth: usize, max_depth: usize) -> Result<HierarchyNode> {
    let leaf = |presentation: Presentation, power: usize, dropped: Vec<String>, leaf: Leaf| HierarchyNode {
        depth,
        presentation,
        power,
        dropped,
        kind: NodeKind::Leaf(leaf),
    };
    let Some(relator) = p.relators().first().filter(|r| !r.is_empty()) else {
        let q = Presentation::new(&p.names(), vec![])?;
        return Ok(leaf(q, 1, vec![], Leaf::Free { rank: p.rank() }));
    };
    let (root, power) = relator.proper_power()?;
    let rooted = Presentation::new(&p.names(), vec![root.clone()])?;
    let (restricted, kept) = rooted.restrict_to_mentioned();
    let names = p.names();
    let dropped: Vec<String> = (0..p.rank()).filter(|g| !kept.contains(g)).map(|g| names[g].clone()).collect();
    // A generator occurring exactly once makes the root primitive, so a
    // Tietze move eliminates it.
    let primitive = restricted
        .relators()
        .first()
        .is_some_and(|r| (0..restricted.rank()).any(|g| r.letters().iter().filter(|l| l.gen == g).count() == 1));
    if primitive {
        let free = dropped.len() + restricted.rank() - 1;
        let kind = if power == 1 { Leaf::Free { rank: free } } else { Leaf::CyclicOfOrder { order: power, free_rank: free } };
        return Ok(leaf(restricted, power, dropped, kind));
    }
    if depth >= max_depth {
        return Ok(leaf(restricted, power, dropped, Leaf::Unexpanded));
    }
    let phi = match find_epimorphism(&restricted) {
        Ok(phi) => phi,
        Err(e) => return Ok(leaf(restricted, power, dropped, Leaf::Stuck { reason: e.to_string() })),
    };
    let step = match hnn_step(&restricted, &phi) {
        Ok(s) => s,
        Err(e) => return Ok(leaf(restricted, power, dropped, Leaf::Stuck { reason: e.to_string() })),
    };
    let child = expand(&step.base_with_power(power), depth + 1, max_depth)?;
    Ok(HierarchyNode {
        depth,
        presentation: restricted,
        power,
        dropped,
        kind: NodeKind::Step { step: Box::new(step), child: Box::new(child) },
    })
}
