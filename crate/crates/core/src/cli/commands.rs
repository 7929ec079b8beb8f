use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::covers::{
    build_cover_complex, generation_check, homology, lift_cycle, weinbaum_scan, FiniteQuotient, Graph, HomologyGroup,
    LiftOutcome, SubwordStatus,
};
use crate::error::{input, Error, Result};
use crate::foxcalc::{fox_derivative_word, fundamental_identity_check, jacobian, QuotientMap};
use crate::groupring::{
    engulfing_search_finite, non_engulfing_certificate_ordered, unique_products_check, CoefficientDomain, Cyclic,
    EngulfingStatus, FreeAbelian, FreeGroup, GroupOracle, GroupRing, GroupRingMatrix, PermutationGroup, ProductSide,
    Scalar, Side,
};
use crate::hierarchy::{
    build_hierarchy, find_epimorphism, number_lemma_check, number_lemma_oracle, prefix_sequence, HierarchyNode,
    Leaf, NodeKind,
};
use crate::par::Exec;
use crate::perm::Permutation;
use crate::presentation::{parse_presentation_file, parse_quotient_spec, parse_word, Presentation, PresentationFile};
use crate::trapezoid::{certify_diagonal, find_staircase, DiagonalStrategy, SearchOptions, StaircaseSearch};
use crate::verify::qn_report;

use super::input::{parse_chain, parse_element_list, parse_int_list, parse_pattern, parse_ring_element, GroupSpec};
use super::{Cli, Command, DomainArgs, PresentationArgs, QuotientArgs, Report, SideArg};

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load(args: &PresentationArgs) -> Result<PresentationFile> {
    match (&args.file, &args.gens) {
        (Some(path), _) => parse_presentation_file(&read_file(path)?),
        (None, Some(gens)) => {
            let rels = args.rels.as_deref().unwrap_or("");
            parse_presentation_file(&format!("gens: {gens}\nrels: {rels}\n"))
        }
        (None, None) => input("a presentation is required: pass --file or --gens/--rels"),
    }
}

fn presentation_inputs(args: &PresentationArgs, p: &Presentation) -> Value {
    json!({
        "file": args.file.as_ref().map(|f| f.display().to_string()),
        "presentation": p.summary(),
    })
}

fn domain(args: &DomainArgs, default: CoefficientDomain) -> Result<CoefficientDomain> {
    if let Some(p) = args.prime {
        return CoefficientDomain::prime_field(p);
    }
    Ok(if args.rationals {
        CoefficientDomain::Rationals
    } else if args.integers {
        CoefficientDomain::Integers
    } else {
        default
    })
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    }
}

enum Quotient {
    Trivial,
    Abelian,
    Permutation(Vec<Permutation>),
}

impl Quotient {
    fn resolve(args: &QuotientArgs, file: &PresentationFile) -> Result<Self> {
        let names = file.presentation.names();
        Ok(if let Some(spec) = &args.quotient {
            Quotient::Permutation(parse_quotient_spec(spec, &names)?)
        } else if args.abelianize || file.abelianize {
            Quotient::Abelian
        } else if let Some(perms) = &file.quotient {
            Quotient::Permutation(perms.clone())
        } else {
            Quotient::Trivial
        })
    }

    fn name(&self) -> &'static str {
        match self {
            Quotient::Trivial => "trivial",
            Quotient::Abelian => "abelianization",
            Quotient::Permutation(_) => "permutation",
        }
    }

    fn finite(&self, p: &Presentation) -> Result<FiniteQuotient> {
        match self {
            Quotient::Trivial => Ok(FiniteQuotient::trivial(p)),
            Quotient::Permutation(perms) => FiniteQuotient::new(p, perms.clone()),
            Quotient::Abelian => input("this command needs a finite quotient; pass --quotient"),
        }
    }
}

pub(super) fn dispatch(cli: &Cli) -> Result<Report> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match &cli.command {
        Command::Fox { presentation, word, gen } => fox(presentation, word, gen),
        Command::Jacobian { presentation, quotient, domain: d } => jacobian_cmd(presentation, quotient, d, exec),
        Command::Complex { presentation, quotient, domain: d, relators, triplets } => {
            complex(presentation, quotient, d, relators.as_deref(), *triplets, exec)
        }
        Command::Trapezoid { presentation, quotient, domain: d, pattern, fixed_rows, cap, heuristic, certify } => {
            let opts = SearchOptions { allow_row_permutation: !fixed_rows, cap: *cap, heuristic: *heuristic };
            trapezoid(presentation, quotient, d, pattern.as_deref(), opts, *certify, exec)
        }
        Command::Hierarchy { presentation, power, max_depth } => hierarchy(presentation, *power, *max_depth),
        Command::Seqcheck { presentation, a, b, seq, max_len } => {
            seqcheck(presentation, *a, *b, seq.as_deref(), *max_len, exec)
        }
        Command::Upcheck { group, set_a, set_b, k, side: s, plain } => {
            let mode = match (plain, s) {
                (true, _) => ProductSide::Plain,
                (false, SideArg::Left) => ProductSide::Left,
                (false, SideArg::Right) => ProductSide::Right,
            };
            with_group(group, |g| match g {
                AnyGroup::FreeAbelian(o) => upcheck(o, group, set_a, set_b, *k, mode),
                AnyGroup::Cyclic(o) => upcheck(o, group, set_a, set_b, *k, mode),
                AnyGroup::Free(o) => upcheck(o, group, set_a, set_b, *k, mode),
                AnyGroup::Permutation(o) => upcheck(o, group, set_a, set_b, *k, mode),
            })
        }
        Command::Engulf { group, element, domain: d, side: s } => {
            let dom = domain(d, CoefficientDomain::Rationals)?;
            with_group(group, |g| match g {
                AnyGroup::FreeAbelian(o) => engulf(o, group, element, &dom, side(*s), exec),
                AnyGroup::Cyclic(o) => engulf(o, group, element, &dom, side(*s), exec),
                AnyGroup::Free(o) => engulf(o, group, element, &dom, side(*s), exec),
                AnyGroup::Permutation(o) => engulf(o, group, element, &dom, side(*s), exec),
            })
        }
        Command::Weinbaum { presentation, quotient, word } => weinbaum(presentation, quotient, word.as_deref(), exec),
        Command::Lift { graph, designated, chain, domain: d } => lift(graph, designated, chain, d),
        Command::VerifyExample { n } => verify_example(*n),
    }
}

fn fox(args: &PresentationArgs, word: &str, gen: &str) -> Result<Report> {
    let file = load(args)?;
    let p = &file.presentation;
    let names = p.names();
    let w = parse_word(word, &names)?;
    let s = p.generator(gen).ok_or_else(|| Error::Input(format!("unknown generator {gen:?}")))?;
    let d = fox_derivative_word(&w, s);
    let rendered = d.render(&names);
    Ok(Report {
        subcommand: "fox".into(),
        inputs: json!({ "presentation": p.summary(), "word": w.render(&names), "gen": gen }),
        results: json!({ "derivative": rendered, "fundamental_identity": fundamental_identity_check(&w) }),
        exact: true,
        text: format!("{rendered}\n"),
    })
}

fn matrix_rows<O: GroupOracle>(m: &GroupRingMatrix<O>) -> Vec<Vec<String>> {
    m.entries().iter().map(|r| r.iter().map(|x| m.ring().render(x)).collect()).collect()
}

fn jacobian_report<O: GroupOracle>(
    p: &Presentation,
    map: &QuotientMap<O>,
    dom: &CoefficientDomain,
    exec: Exec,
) -> Result<(Value, String)> {
    let m = jacobian(p, map, dom, exec)?;
    let text: String = m.render().into_iter().map(|r| r + "\n").collect();
    let results = json!({
        "group": map.oracle().descriptor(),
        "generators": map.oracle().generator_names(),
        "rows": matrix_rows(&m),
    });
    Ok((results, text))
}

fn jacobian_cmd(args: &PresentationArgs, qargs: &QuotientArgs, d: &DomainArgs, exec: Exec) -> Result<Report> {
    let file = load(args)?;
    let p = &file.presentation;
    let q = Quotient::resolve(qargs, &file)?;
    let dom = domain(d, CoefficientDomain::Integers)?;
    let (results, text) = match &q {
        Quotient::Trivial => jacobian_report(p, &QuotientMap::trivial(p), &dom, exec)?,
        Quotient::Abelian => jacobian_report(p, &QuotientMap::abelianization(p)?, &dom, exec)?,
        Quotient::Permutation(perms) => jacobian_report(p, &QuotientMap::permutation(p, perms.clone())?, &dom, exec)?,
    };
    let mut inputs = presentation_inputs(args, p);
    inputs["quotient"] = json!(q.name());
    inputs["domain"] = json!(dom.name());
    Ok(Report { subcommand: "jacobian".into(), inputs, results, exact: true, text })
}

fn group_json(h: &HomologyGroup) -> Value {
    json!({ "rank": h.rank, "torsion": h.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>() })
}

fn complex(
    args: &PresentationArgs,
    qargs: &QuotientArgs,
    d: &DomainArgs,
    relators: Option<&str>,
    triplets: bool,
    exec: Exec,
) -> Result<Report> {
    let file = load(args)?;
    let p = &file.presentation;
    let q = Quotient::resolve(qargs, &file)?;
    let fq = q.finite(p)?;
    let dom = domain(d, CoefficientDomain::Integers)?;
    let c = build_cover_complex(p, &fq, exec)?;
    let h = homology(&c, &dom);
    let chosen: Vec<usize> = match relators {
        Some(list) => parse_int_list(list)?
            .into_iter()
            .map(|i| usize::try_from(i - 1).map_err(|_| Error::Input(format!("relator index {i} must be positive"))))
            .collect::<Result<_>>()?,
        None => (0..p.relators().len()).collect(),
    };
    let generates = generation_check(&c, &chosen, &dom)?;
    let [c0, c1, c2] = c.chain_ranks();
    let mut text = format!(
        "quotient order {}\nchain ranks C2={c2} C1={c1} C0={c0}\nH0 = {}\nH1 = {}\nrelators {:?} generate ker d1: {generates}\n",
        c.order,
        h.h0.render(&dom),
        h.h1.render(&dom),
        chosen.iter().map(|i| i + 1).collect::<Vec<_>>()
    );
    if triplets {
        text.push_str(&c.to_triplets());
    }
    let mut results = json!({
        "order": c.order,
        "chain_ranks": [c0, c1, c2],
        "h0": group_json(&h.h0),
        "h1": group_json(&h.h1),
        "generates": generates,
        "composite_zero": c.composite_is_zero(),
    });
    if triplets {
        results["triplets"] = json!(c.to_triplets());
    }
    let mut inputs = presentation_inputs(args, p);
    inputs["quotient"] = json!(q.name());
    inputs["domain"] = json!(dom.name());
    inputs["relators"] = json!(chosen.iter().map(|i| i + 1).collect::<Vec<_>>());
    Ok(Report { subcommand: "complex".into(), inputs, results, exact: true, text })
}

fn staircase_json(s: &StaircaseSearch) -> (Value, String) {
    let v = serde_json::to_value(s).expect("search results serialize");
    let text = match s {
        StaircaseSearch::Found { certificate } => {
            format!("rows: {:?}\ncols: {:?}\ndiag: {:?}\n", certificate.rows, certificate.cols, certificate.diag)
        }
        StaircaseSearch::Impossible { reason, states } => format!("impossible: {reason} ({states} states)\n"),
        StaircaseSearch::Unknown => "unknown: heuristic gave up\n".into(),
    };
    (v, text)
}

fn trapezoid_matrix<O: GroupOracle>(
    m: &GroupRingMatrix<O>,
    opts: SearchOptions,
    certify: bool,
    strategy: DiagonalStrategy,
) -> Result<(Value, String)> {
    let search = find_staircase(&m.pattern(), m.cols(), opts)?;
    let (mut results, mut text) = staircase_json(&search);
    results["matrix"] = json!(matrix_rows(m));
    if let (true, StaircaseSearch::Found { certificate }) = (certify, &search) {
        let report = certify_diagonal(m, certificate, strategy)?;
        let entries: Vec<Value> = report
            .entries
            .iter()
            .map(|(r, c, rep)| {
                json!({ "row": r, "col": c, "entry": m.ring().render(m.get(*r, *c)), "status": engulf_status_json(m.ring(), &rep.status) })
            })
            .collect();
        results["diagonal"] = json!({ "entries": entries, "non_engulfing": report.verdict });
        text.push_str(&format!("diagonal non-engulfing: {}\n", report.verdict));
    }
    Ok((results, text))
}

fn trapezoid(
    args: &PresentationArgs,
    qargs: &QuotientArgs,
    d: &DomainArgs,
    pattern: Option<&str>,
    opts: SearchOptions,
    certify: bool,
    exec: Exec,
) -> Result<Report> {
    if let Some(text) = pattern {
        let (rows, cols) = parse_pattern(text)?;
        if certify {
            return input("--certify needs a Jacobi matrix, not a bare pattern");
        }
        let search = find_staircase(&rows, cols, opts)?;
        let exact = !opts.exceeds_cap(rows.len(), cols);
        let (results, text_out) = staircase_json(&search);
        return Ok(Report {
            subcommand: "trapezoid".into(),
            inputs: json!({ "pattern": text, "fixed_rows": !opts.allow_row_permutation, "cap": opts.cap }),
            results,
            exact,
            text: text_out,
        });
    }
    let file = load(args)?;
    let p = &file.presentation;
    let q = Quotient::resolve(qargs, &file)?;
    let (results, text) = match &q {
        Quotient::Trivial | Quotient::Abelian => {
            let dom = domain(d, CoefficientDomain::Integers)?;
            let map = if matches!(q, Quotient::Trivial) { QuotientMap::trivial(p) } else { QuotientMap::abelianization(p)? };
            trapezoid_matrix(&jacobian(p, &map, &dom, exec)?, opts, certify, DiagonalStrategy::OrderedOracle)?
        }
        Quotient::Permutation(perms) => {
            let dom = domain(d, CoefficientDomain::Rationals)?;
            let map = QuotientMap::permutation(p, perms.clone())?;
            trapezoid_matrix(&jacobian(p, &map, &dom, exec)?, opts, certify, DiagonalStrategy::FiniteSearch(exec))?
        }
    };
    let exact = !opts.exceeds_cap(p.relators().len(), p.rank());
    let mut inputs = presentation_inputs(args, p);
    inputs["quotient"] = json!(q.name());
    inputs["fixed_rows"] = json!(!opts.allow_row_permutation);
    inputs["cap"] = json!(opts.cap);
    Ok(Report { subcommand: "trapezoid".into(), inputs, results, exact, text })
}

fn leaf_json(l: &Leaf) -> Value {
    match l {
        Leaf::Free { rank } => json!({ "type": "free", "rank": rank }),
        Leaf::CyclicOfOrder { order, free_rank } => json!({ "type": "cyclic", "order": order, "free_rank": free_rank }),
        Leaf::Stuck { reason } => json!({ "type": "stuck", "reason": reason }),
        Leaf::Unexpanded => json!({ "type": "unexpanded" }),
    }
}

fn node_json(node: &HierarchyNode) -> Value {
    let p = &node.presentation;
    let names = p.names();
    let mut v = json!({
        "depth": node.depth,
        "presentation": p.summary(),
        "power": node.power,
        "dropped": node.dropped,
    });
    match &node.kind {
        NodeKind::Leaf(l) => v["leaf"] = leaf_json(l),
        NodeKind::Step { step, .. } => {
            let base = step.base.names();
            let phi: Map<String, Value> = names.iter().cloned().zip(step.epimorphism.values.iter().map(|x| json!(x))).collect();
            v["step"] = json!({
                "phi": phi,
                "window": [step.window.0, step.window.1],
                "rotated_relator": p.render(&step.rotated_relator),
                "base": step.base.summary(),
                "u": step.base.render(&step.u),
                "loop_words": step.loop_words.iter().map(|w| w.render(&names)).collect::<Vec<_>>(),
                "associated": step.associated_lower.iter().zip(&step.associated_upper)
                    .map(|(x, y)| json!([x.render(&base), y.render(&base)])).collect::<Vec<_>>(),
                "stable_letter": step.stable_letter,
                "stable_word": step.stable_word.render(&names),
                "segments": step.relator_form.segments.iter().map(|s| json!({
                    "original": s.original.render(&names),
                    "rewritten": s.rewritten.render(&base),
                    "in_lower_overlap": s.in_lower_overlap,
                })).collect::<Vec<_>>(),
            });
        }
    }
    v
}

fn hierarchy(args: &PresentationArgs, power: usize, max_depth: usize) -> Result<Report> {
    let file = load(args)?;
    let p = &file.presentation;
    let tree = build_hierarchy(p, power, max_depth)?;
    let nodes: Vec<Value> = tree.nodes().into_iter().map(node_json).collect();
    let mut inputs = presentation_inputs(args, p);
    inputs["power"] = json!(power);
    inputs["max_depth"] = json!(max_depth);
    Ok(Report {
        subcommand: "hierarchy".into(),
        inputs,
        results: json!({
            "nodes": nodes,
            "depth": tree.depth(),
            "terminal": tree.all_leaves_terminal(),
            "lengths_decrease": tree.lengths_decrease(),
        }),
        exact: true,
        text: tree.render_text(),
    })
}

fn seqcheck(
    args: &PresentationArgs,
    a: Option<i64>,
    b: Option<i64>,
    seq: Option<&str>,
    max_len: Option<usize>,
    exec: Exec,
) -> Result<Report> {
    let need = |x: Option<i64>, n: &str| x.ok_or_else(|| Error::Input(format!("--{n} is required")));
    if let Some(seq) = seq {
        let (a, b) = (need(a, "a")?, need(b, "b")?);
        let values = parse_int_list(seq)?;
        let verdict = number_lemma_check(a, b, &values)?;
        let text = match &verdict {
            crate::hierarchy::NumberLemmaVerdict::SumZero => "sum zero\n".to_string(),
            crate::hierarchy::NumberLemmaVerdict::LargeEntry { index, sum } => {
                format!("large entry at index {index} (value {} >= {}), sum {sum}\n", values[*index], a + b - 1)
            }
            crate::hierarchy::NumberLemmaVerdict::CounterexampleToLemma { sum } => {
                format!("COUNTEREXAMPLE: sum {sum} with every entry below {}\n", a + b - 1)
            }
        };
        return Ok(Report {
            subcommand: "seqcheck".into(),
            inputs: json!({ "a": a, "b": b, "seq": values }),
            results: serde_json::to_value(&verdict).expect("verdicts serialize"),
            exact: true,
            text,
        });
    }
    if let Some(max_len) = max_len {
        let (a, b) = (need(a, "a")?, need(b, "b")?);
        let report = number_lemma_oracle(a, b, max_len, exec)?;
        let text = format!(
            "{} sequences, {} counterexamples\n",
            report.sequences,
            report.counterexamples.len()
        );
        return Ok(Report {
            subcommand: "seqcheck".into(),
            inputs: json!({ "a": a, "b": b, "max_len": max_len }),
            results: serde_json::to_value(&report).expect("reports serialize"),
            exact: true,
            text,
        });
    }
    let file = load(args)?;
    let p = &file.presentation;
    let partition = p.partition().ok_or_else(|| Error::Input("the presentation needs a `partition:` line".into()))?;
    let w = p.relators().first().ok_or_else(|| Error::Input("the presentation has no relator".into()))?;
    let phi = find_epimorphism(p)?;
    let s = prefix_sequence(w, &phi, partition)?;
    let (la, lb) = s.lemma_parameters();
    let verdict = number_lemma_check(la, lb, &s.normalized).ok();
    let text = format!(
        "values: {:?}\nnormalized: {:?}\nspan {} (a = {la}, b = {lb}), syllable sum {}, span bound: {}\n",
        s.values,
        s.normalized,
        s.span(),
        s.syllable_sum(),
        match s.span_bound_holds() {
            Some(true) => "holds",
            Some(false) => "FAILS",
            None => "not applicable",
        }
    );
    let mut inputs = presentation_inputs(args, p);
    inputs["phi"] = json!(phi.values);
    Ok(Report {
        subcommand: "seqcheck".into(),
        inputs,
        results: json!({
            "sequence": s,
            "span": s.span(),
            "lemma_parameters": [la, lb],
            "syllable_sum": s.syllable_sum(),
            "span_bound_holds": s.span_bound_holds(),
            "verdict": verdict,
        }),
        exact: true,
        text,
    })
}

enum AnyGroup {
    FreeAbelian(FreeAbelian),
    Cyclic(Cyclic),
    Free(FreeGroup),
    Permutation(PermutationGroup),
}

fn with_group<F>(spec: &str, f: F) -> Result<Report>
where
    F: FnOnce(AnyGroup) -> Result<Report>,
{
    f(match GroupSpec::parse(spec)? {
        GroupSpec::FreeAbelian(n) => AnyGroup::FreeAbelian(FreeAbelian::new(n)),
        GroupSpec::Cyclic(n) => AnyGroup::Cyclic(Cyclic::new(n)?),
        GroupSpec::Free(names) => AnyGroup::Free(FreeGroup::new(names)),
        GroupSpec::Symmetric(n) => {
            if !(2..=8).contains(&n) {
                return input("symmetric groups S2..S8 are supported");
            }
            AnyGroup::Permutation(PermutationGroup::symmetric(n)?)
        }
    })
}

fn upcheck<O: GroupOracle>(oracle: O, group: &str, a: &str, b: &str, k: usize, mode: ProductSide) -> Result<Report> {
    let set_a = parse_element_list(&oracle, a)?;
    let set_b = parse_element_list(&oracle, b)?;
    let r = unique_products_check(&oracle, &set_a, &set_b, k, mode)?;
    let unique: Vec<Value> = r
        .unique
        .iter()
        .map(|u| json!([oracle.render(&u.left), oracle.render(&u.right), oracle.render(&u.product)]))
        .collect();
    let text = format!(
        "{} unique products ({} distinct left, {} distinct right) among {} products: {}\n",
        r.unique.len(),
        r.distinct_left,
        r.distinct_right,
        r.product_set_size,
        if r.verdict { "pass" } else { "fail" }
    );
    Ok(Report {
        subcommand: "upcheck".into(),
        inputs: json!({ "group": group, "a": a, "b": b, "k": k, "side": mode }),
        results: json!({
            "unique": unique,
            "distinct_left": r.distinct_left,
            "distinct_right": r.distinct_right,
            "product_set_size": r.product_set_size,
            "verdict": r.verdict,
        }),
        exact: true,
        text,
    })
}

fn engulf_status_json<O: GroupOracle>(ring: &GroupRing<O>, s: &EngulfingStatus<O::Elem>) -> Value {
    match s {
        EngulfingStatus::WitnessFound(w) => json!({ "status": "witness_found", "witness": ring.render(w) }),
        EngulfingStatus::NoneExists { kernel_dimension } => {
            json!({ "status": "none_exists", "kernel_dimension": kernel_dimension })
        }
        EngulfingStatus::CertifiedByOrder => json!({ "status": "certified_by_order" }),
    }
}

fn engulf<O: GroupOracle>(
    oracle: O,
    group: &str,
    element: &str,
    dom: &CoefficientDomain,
    s: Side,
    exec: Exec,
) -> Result<Report> {
    let finite = oracle.elements().is_some();
    let ring = GroupRing::new(oracle, dom.clone());
    let m = parse_ring_element(&ring, element)?;
    let report = if finite {
        engulfing_search_finite(&ring, &m, s, exec)?
    } else {
        non_engulfing_certificate_ordered(&ring, &m, s)?
    };
    let text = match &report.status {
        EngulfingStatus::WitnessFound(w) => format!("engulfing: witness {}\n", ring.render(w)),
        EngulfingStatus::NoneExists { .. } => "not engulfing: only scalars keep the support\n".into(),
        EngulfingStatus::CertifiedByOrder => format!("not engulfing: {} is ordered\n", ring.oracle().descriptor()),
    };
    Ok(Report {
        subcommand: "engulf".into(),
        inputs: json!({ "group": group, "element": ring.render(&m), "domain": dom.name(), "side": s }),
        results: engulf_status_json(&ring, &report.status),
        exact: true,
        text,
    })
}

fn weinbaum(args: &PresentationArgs, qargs: &QuotientArgs, word: Option<&str>, exec: Exec) -> Result<Report> {
    let file = load(args)?;
    let p = &file.presentation;
    let names = p.names();
    let q = Quotient::resolve(qargs, &file)?;
    let fq = q.finite(p)?;
    let w = match word {
        Some(t) => parse_word(t, &names)?,
        None => p.relators().first().cloned().ok_or_else(|| Error::Input("the presentation has no relator".into()))?,
    };
    let report = weinbaum_scan(&w, p, &fq, exec)?;
    let certified = report.iter().filter(|r| r.status == SubwordStatus::NontrivialCertified).count();
    let mut text = String::new();
    for r in &report {
        let status = match r.status {
            SubwordStatus::NontrivialCertified => "nontrivial",
            SubwordStatus::Unknown => "unknown",
        };
        text.push_str(&format!("{}  {}  {status}\n", r.subword.render(&names), r.image));
    }
    text.push_str(&format!("{certified}/{} certified\n", report.len()));
    let mut inputs = presentation_inputs(args, p);
    inputs["quotient"] = json!(q.name());
    inputs["word"] = json!(w.render(&names));
    let rows: Vec<Value> = report
        .iter()
        .map(|r| json!({ "subword": r.subword.render(&names), "image": r.image, "status": r.status }))
        .collect();
    Ok(Report {
        subcommand: "weinbaum".into(),
        inputs,
        results: json!({ "subwords": rows, "certified": certified, "all_certified": certified == report.len() }),
        exact: true,
        text,
    })
}

fn scalar_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn lift(graph_path: &Path, designated: &str, chain: &str, d: &DomainArgs) -> Result<Report> {
    let g = Graph::parse(&read_file(graph_path)?)?;
    let dom = domain(d, CoefficientDomain::Integers)?;
    let labels: Vec<String> = g.edges.iter().map(|e| e.label.clone()).collect();
    let h: Vec<usize> = designated
        .split(',')
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| g.edge_index(l).ok_or_else(|| Error::Input(format!("unknown edge {l:?}"))))
        .collect::<Result<_>>()?;
    let r = parse_chain(chain, &labels, &dom)?;
    let inputs = json!({
        "graph": graph_path.display().to_string(),
        "designated": h.iter().map(|&e| labels[e].clone()).collect::<Vec<_>>(),
        "chain": scalar_strings(&r),
        "domain": dom.name(),
    });
    let (results, text) = match lift_cycle(&g, &h, &r, &dom)? {
        LiftOutcome::Lifted(l) => {
            let cycle: Vec<String> = l
                .cycle
                .iter()
                .map(|&(e, fwd)| if fwd { labels[e].clone() } else { format!("{}^-1", labels[e]) })
                .collect();
            let verified = l.verify(&g, &h, &r, &dom);
            let text = format!(
                "cycle: {}\nunit: {}\nremainder: {}\nverified: {verified}\n",
                cycle.join(" "),
                l.unit,
                scalar_strings(&l.remainder).join(" ")
            );
            (
                json!({
                    "outcome": "lifted",
                    "cycle": cycle,
                    "unit": l.unit.to_string(),
                    "remainder": scalar_strings(&l.remainder),
                    "coefficients": scalar_strings(&l.coefficients),
                    "support": l.support.iter().map(|&e| labels[e].clone()).collect::<Vec<_>>(),
                    "verified": verified,
                }),
                text,
            )
        }
        LiftOutcome::NotApplicable { reason } => {
            (json!({ "outcome": "not_applicable", "reason": reason }), format!("not applicable: {reason}\n"))
        }
    };
    Ok(Report { subcommand: "lift".into(), inputs, results, exact: true, text })
}

fn verify_example(n: u32) -> Result<Report> {
    let r = qn_report(n)?;
    let text = format!(
        "{}\nrelator {} rearranges to {}\nverdict: {}\nexponent: {}\n",
        r.identity, r.relator, r.rearranged, r.verdict, r.exponent
    );
    Ok(Report {
        subcommand: "verify-example".into(),
        inputs: json!({ "n": n }),
        results: serde_json::to_value(&r).expect("reports serialize"),
        exact: true,
        text,
    })
}
