use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::presentation::{Letter, Presentation, Word};

use super::EpimorphismToZ;

/// A generator of the base group: the lift of an original generator that
/// starts at the given level of the cyclic cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLift {
    pub generator: usize,
    pub level: i64,
}

/// A maximal stretch of the lifted relator that stays inside (or leaves)
/// the lower overlap of the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    /// The stretch as a subword of the rotated relator.
    pub original: Word,
    /// The same stretch read over the base generators.
    pub rewritten: Word,
    /// True when every edge of the stretch lies below the top level.
    pub in_lower_overlap: bool,
}

/// The relator cut into alternating stretches, together with the tree
/// paths from the base point to the two ends of the top edge used by the
/// spanning tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorForm {
    pub segments: Vec<Segment>,
    /// Tree path to the start of the top attaching edge.
    pub path_to_top_source: Word,
    /// Tree path to the top vertex.
    pub path_to_top: Word,
}

/// One Magnus splitting `G = H *_ψ` of a one-relator group.
#[derive(Clone, Debug, Serialize)]
pub struct HnnStep {
    pub source: Presentation,
    pub epimorphism: EpimorphismToZ,
    /// Relator rotated so that its lift starts at its lowest level.
    pub rotated_relator: Word,
    pub rotation: usize,
    /// Levels `[m, M]` reached by the lift of the relator as given.
    pub window: (i64, i64),
    /// `⟨ lifted non-tree edges | u ⟩`.
    pub base: Presentation,
    pub lifts: Vec<EdgeLift>,
    /// For every base generator, the loop it represents as a word in the
    /// source generators.
    pub loop_words: Vec<Word>,
    pub u: Word,
    /// Generators of the lower associated subgroup, as base words.
    pub associated_lower: Vec<Word>,
    /// Their images under the translation by one level.
    pub associated_upper: Vec<Word>,
    pub stable_letter: String,
    /// The stable letter as a word in the source generators.
    pub stable_word: Word,
    pub relator_form: RelatorForm,
}

impl HnnStep {
    /// Substitutes each base generator by its loop word in `u`; the result
    /// must be a cyclic conjugate of the source relator or its inverse.
    pub fn back_substitution_holds(&self) -> bool {
        let w = &self.source.relators()[0];
        let back = self.u.substitute(&self.loop_words).cyclic_reduce().0;
        back.is_rotation_of(w) || back.is_rotation_of(&w.inverse())
    }

    /// Checks `t x t^-1 = ψ(x)` for every lower generator after substitution
    /// into the source free group.
    pub fn associated_relations_hold(&self) -> bool {
        self.associated_lower.iter().zip(&self.associated_upper).all(|(x, y)| {
            let lhs = x.substitute(&self.loop_words).conjugate_by(&self.stable_word);
            lhs == y.substitute(&self.loop_words)
        })
    }

    /// The base presentation with relator `u^n`.
    pub fn base_with_power(&self, n: usize) -> Presentation {
        Presentation::new(&self.base.names(), vec![self.u.pow(n as i64)]).expect("base alphabet is valid")
    }
}

struct Window {
    top: i64,
    /// (generator, source level, target level)
    edges: Vec<(usize, i64, i64)>,
    index: HashMap<(usize, i64), usize>,
}

impl Window {
    fn new(phi: &EpimorphismToZ, top: i64) -> Self {
        let mut edges = Vec::new();
        let mut index = HashMap::new();
        for (g, &v) in phi.values.iter().enumerate() {
            for level in 0..=top {
                let target = level + v;
                if (0..=top).contains(&target) {
                    index.insert((g, level), edges.len());
                    edges.push((g, level, target));
                }
            }
        }
        Window { top, edges, index }
    }

    fn edge(&self, g: usize, level: i64) -> Result<usize> {
        self.index
            .get(&(g, level))
            .copied()
            .ok_or_else(|| Error::Internal(format!("edge of generator {g} at level {level} left the window")))
    }

    fn in_lower(&self, e: usize) -> bool {
        let (_, s, t) = self.edges[e];
        s < self.top && t < self.top
    }

    /// Steps `(edge, forward)` of the lift of `w` starting at `start`.
    fn lift(&self, phi: &EpimorphismToZ, w: &Word, start: i64) -> Result<Vec<(usize, bool)>> {
        let mut level = start;
        let mut out = Vec::with_capacity(w.len());
        for l in w.letters() {
            let v = phi.values[l.gen];
            if l.inverse {
                out.push((self.edge(l.gen, level - v)?, false));
                level -= v;
            } else {
                out.push((self.edge(l.gen, level)?, true));
                level += v;
            }
        }
        Ok(out)
    }
}

struct Tree {
    /// `parent[v] = (edge, forward)` reaching `v` from its parent.
    parent: Vec<Option<(usize, bool)>>,
    in_tree: Vec<bool>,
}

impl Tree {
    /// Edge steps from the base point to `v`.
    fn path_to(&self, window: &Window, v: i64) -> Vec<(usize, bool)> {
        let mut steps = Vec::new();
        let mut cur = v;
        while let Some((e, forward)) = self.parent[cur as usize] {
            steps.push((e, forward));
            let (_, s, t) = window.edges[e];
            cur = if forward { s } else { t };
        }
        steps.reverse();
        steps
    }
}

fn invert_steps(steps: &[(usize, bool)]) -> Vec<(usize, bool)> {
    steps.iter().rev().map(|&(e, f)| (e, !f)).collect()
}

fn original_word(window: &Window, steps: &[(usize, bool)]) -> Word {
    Word::from_letters(steps.iter().map(|&(e, f)| Letter::new(window.edges[e].0, !f)))
}

/// Breadth-first spanning tree of the lower overlap from level 0, preferring
/// edges the relator uses, then lower levels, then earlier generators. The
/// top vertex hangs off the first relator edge that reaches it.
fn spanning_tree(window: &Window, path: &[(usize, bool)]) -> Result<Tree> {
    let n = (window.top + 1) as usize;
    let mut on_path = vec![false; window.edges.len()];
    for &(e, _) in path {
        on_path[e] = true;
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(_, s, t)) in window.edges.iter().enumerate() {
        if window.in_lower(e) && s != t {
            incident[s as usize].push(e);
            incident[t as usize].push(e);
        }
    }
    let key = |e: usize| {
        let (g, s, _) = window.edges[e];
        (!on_path[e], s, g)
    };
    for list in incident.iter_mut() {
        list.sort_by_key(|&e| key(e));
    }
    let mut parent = vec![None; n];
    let mut in_tree = vec![false; window.edges.len()];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &e in &incident[v] {
            let (_, s, t) = window.edges[e];
            let (other, forward) = if s as usize == v { (t as usize, true) } else { (s as usize, false) };
            if !seen[other] {
                seen[other] = true;
                parent[other] = Some((e, forward));
                in_tree[e] = true;
                queue.push_back(other);
            }
        }
    }
    if let Some(v) = (0..n - 1).find(|&v| !seen[v]) {
        return input(format!("the lower overlap of the window is disconnected (level {v} unreachable)"));
    }
    let top = window.top;
    let attach = path
        .iter()
        .map(|&(e, _)| e)
        .find(|&e| {
            let (_, s, t) = window.edges[e];
            (s == top) != (t == top)
        })
        .ok_or_else(|| Error::Internal("relator never reaches the top level".into()))?;
    let (_, s, _) = window.edges[attach];
    parent[top as usize] = Some((attach, s != top));
    in_tree[attach] = true;
    Ok(Tree { parent, in_tree })
}

/// Performs one Magnus splitting along the cyclic cover defined by `phi`.
pub fn hnn_step(p: &Presentation, phi: &EpimorphismToZ) -> Result<HnnStep> {
    if p.relators().len() != 1 {
        return input("an HNN step needs exactly one relator");
    }
    if phi.values.len() != p.rank() {
        return input("epimorphism and presentation have different ranks");
    }
    let w = p.relators()[0].clone();
    if phi.eval(&w) != 0 {
        return input("the epimorphism does not kill the relator");
    }
    let used = w.generators_used();
    if used.len() < 2 {
        return input("relator must involve at least two generators");
    }
    if used.len() != p.rank() {
        return input("every generator must occur in the relator; restrict the presentation first");
    }
    let levels = phi.prefix_levels(&w);
    let low = *levels.iter().min().expect("nonempty");
    let high = *levels.iter().max().expect("nonempty");
    if low == high {
        return input("the epimorphism vanishes on every letter of the relator");
    }
    let rotation = levels.iter().position(|&l| l == low).expect("attained") % w.len();
    let rotated = w.rotate(rotation);
    let top = high - low;
    let window = Window::new(phi, top);
    let path = window.lift(phi, &rotated, 0)?;
    let tree = spanning_tree(&window, &path)?;

    let mut non_tree: Vec<usize> = (0..window.edges.len()).filter(|&e| !tree.in_tree[e]).collect();
    non_tree.sort_by_key(|&e| (window.edges[e].0, window.edges[e].1));
    let mut base_index = vec![usize::MAX; window.edges.len()];
    for (i, &e) in non_tree.iter().enumerate() {
        base_index[e] = i;
    }
    let source_names = p.names();
    let names: Vec<String> =
        non_tree.iter().map(|&e| format!("{}_{}", source_names[window.edges[e].0], window.edges[e].1)).collect();
    let lifts = non_tree.iter().map(|&e| EdgeLift { generator: window.edges[e].0, level: window.edges[e].1 }).collect();
    let read = |steps: &[(usize, bool)]| {
        Word::from_letters(
            steps.iter().filter(|&&(e, _)| !tree.in_tree[e]).map(|&(e, f)| Letter::new(base_index[e], !f)),
        )
    };
    let loop_words: Vec<Word> = non_tree
        .iter()
        .map(|&e| {
            let (_, s, t) = window.edges[e];
            let mut steps = tree.path_to(&window, s);
            steps.push((e, true));
            steps.extend(invert_steps(&tree.path_to(&window, t)));
            original_word(&window, &steps)
        })
        .collect();

    let u_raw = read(&path);
    let u = u_raw.cyclic_reduce().0;
    if u.len() >= w.len() {
        return Err(Error::Internal(format!("rewritten relator has length {} >= {}", u.len(), w.len())));
    }
    let base = Presentation::new(&names, vec![u.clone()])?;

    // Associated subgroups: loops of the lower overlap and their translates.
    let up = tree.path_to(&window, 1);
    let mut associated_lower = Vec::new();
    let mut associated_upper = Vec::new();
    for &e in non_tree.iter().filter(|&&e| window.in_lower(e)) {
        let (g, s, t) = window.edges[e];
        let mut loop_steps = tree.path_to(&window, s);
        loop_steps.push((e, true));
        loop_steps.extend(invert_steps(&tree.path_to(&window, t)));
        let mut shifted = up.clone();
        for &(f, fwd) in &loop_steps {
            let (h, level, _) = window.edges[f];
            shifted.push((window.edge(h, level + 1)?, fwd));
        }
        shifted.extend(invert_steps(&up));
        associated_lower.push(Word::letter(Letter::pos(base_index[e])));
        associated_upper.push(read(&shifted));
        debug_assert!(g < p.rank());
    }
    let stable_word = original_word(&window, &up);

    let mut segments: Vec<Segment> = Vec::new();
    for (k, &(e, f)) in path.iter().enumerate() {
        let lower = window.in_lower(e);
        let letter = rotated.letters()[k];
        let rewritten = if tree.in_tree[e] { None } else { Some(Letter::new(base_index[e], !f)) };
        match segments.last_mut() {
            Some(seg) if seg.in_lower_overlap == lower => {
                seg.original = seg.original.mul(&Word::letter(letter));
                if let Some(r) = rewritten {
                    seg.rewritten = seg.rewritten.mul(&Word::letter(r));
                }
            }
            _ => segments.push(Segment {
                original: Word::letter(letter),
                rewritten: rewritten.map(Word::letter).unwrap_or_default(),
                in_lower_overlap: lower,
            }),
        }
    }
    let attach = tree.parent[top as usize].expect("top is attached");
    let (_, attach_source, attach_target) = window.edges[attach.0];
    let below = if attach_source == top { attach_target } else { attach_source };
    let relator_form = RelatorForm {
        segments,
        path_to_top_source: original_word(&window, &tree.path_to(&window, below)),
        path_to_top: original_word(&window, &tree.path_to(&window, top)),
    };

    let step = HnnStep {
        source: p.clone(),
        epimorphism: phi.clone(),
        rotated_relator: rotated,
        rotation,
        window: (low, high),
        base,
        lifts,
        loop_words,
        u,
        associated_lower,
        associated_upper,
        stable_letter: "t".into(),
        stable_word,
        relator_form,
    };
    if !step.back_substitution_holds() {
        return Err(Error::Internal("back-substitution does not recover the relator".into()));
    }
    if !step.associated_relations_hold() {
        return Err(Error::Internal("translation does not conjugate the associated subgroups".into()));
    }
    Ok(step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::find_epimorphism;
    use crate::presentation::parse_word;

    fn pres(gens: &[&str], rel: &str) -> Presentation {
        let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        Presentation::new(&names, vec![parse_word(rel, &names).unwrap()]).unwrap()
    }

    #[test]
    fn baumslag_solitar_step() {
        let p = pres(&["a", "t"], "t*a*t^-1*a^-2");
        let phi = find_epimorphism(&p).unwrap();
        let step = hnn_step(&p, &phi).unwrap();
        assert_eq!(step.base.names(), vec!["a_0", "a_1"]);
        assert_eq!(step.base.render(&step.u), "a_1*a_0^-2");
        assert_eq!(step.window, (0, 1));
        assert_eq!(step.associated_lower, vec![Word::gen(0)]);
        assert_eq!(step.associated_upper, vec![Word::gen(1)]);
        assert_eq!(step.stable_word, Word::gen(1));
    }

    #[test]
    fn trefoil_step() {
        let p = pres(&["a", "b"], "a^2*b^-3");
        let phi = find_epimorphism(&p).unwrap();
        let step = hnn_step(&p, &phi).unwrap();
        assert_eq!(step.window, (0, 6));
        assert_eq!(step.base.names(), vec!["a_1", "a_2", "b_4"]);
        assert_eq!(step.base.render(&step.u), "b_4^-1");
        assert_eq!(step.associated_lower.len(), 2);
        assert_eq!(phi.eval(&step.stable_word), 1);
        assert!(step.back_substitution_holds());
        assert!(step.associated_relations_hold());
        let concat = step.relator_form.segments.iter().fold(Word::identity(), |acc, s| acc.mul(&s.original));
        assert_eq!(concat, step.rotated_relator);
    }

    #[test]
    fn commutator_power_step() {
        for n in 1..4 {
            let rel = format!("[t*a*t^-1, a]*a^-{n}");
            let p = pres(&["a", "t"], &rel);
            let phi = find_epimorphism(&p).unwrap();
            let step = hnn_step(&p, &phi).unwrap();
            assert_eq!(step.base.render(&step.u), format!("a_1*a_0*a_1^-1*a_0^-{}", n + 1));
        }
    }

    #[test]
    fn preconditions() {
        let p = pres(&["a", "b", "c"], "a*b*a^-1*b^-2");
        let phi = EpimorphismToZ { values: vec![0, 0, 1] };
        assert!(hnn_step(&p, &phi).is_err());
        let p = pres(&["a", "b"], "a*b");
        assert!(hnn_step(&p, &EpimorphismToZ { values: vec![1, 0] }).is_err());
    }
}
