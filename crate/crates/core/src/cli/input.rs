//! Parsing of command-line values: group descriptors, group-ring elements,
//! element lists and chains on graphs.

use crate::error::{input, Error, Result};
use crate::groupring::{CoefficientDomain, Element, GroupOracle, GroupRing, Scalar};
use crate::presentation::parse_word;

/// Groups that can be named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// `Z`, `Z^2`, `Z^n`
    FreeAbelian(usize),
    /// `Z/n`
    Cyclic(u64),
    /// `F2`, `F(a,b)`
    Free(Vec<String>),
    /// `S3`
    Symmetric(usize),
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Input(format!("unknown group {s:?}; expected Z, Z^n, Z/n, Fn, F(a,b,..) or Sn"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        if s == "Z" {
            return Ok(GroupSpec::FreeAbelian(1));
        }
        if let Some(n) = s.strip_prefix("Z/") {
            return Ok(GroupSpec::Cyclic(num(n)? as u64));
        }
        if let Some(n) = s.strip_prefix("Z^") {
            return Ok(GroupSpec::FreeAbelian(num(n)?));
        }
        if let Some(body) = s.strip_prefix("F(").and_then(|r| r.strip_suffix(')')) {
            let names: Vec<String> = body.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect();
            if names.is_empty() {
                return Err(bad());
            }
            return Ok(GroupSpec::Free(names));
        }
        if let Some(n) = s.strip_prefix('F') {
            let n = num(n)?;
            let names = if n <= 3 { ["a", "b", "c"][..n].iter().map(|x| x.to_string()).collect() } else {
                (1..=n).map(|i| format!("x{i}")).collect()
            };
            return Ok(GroupSpec::Free(names));
        }
        if let Some(n) = s.strip_prefix('S') {
            return Ok(GroupSpec::Symmetric(num(n)?));
        }
        Err(bad())
    }
}

/// Evaluates a word in the oracle's generators.
pub fn parse_element<O: GroupOracle>(oracle: &O, text: &str) -> Result<O::Elem> {
    let names = oracle.generator_names();
    let w = parse_word(text, &names)?;
    oracle
        .eval_word(&w)
        .ok_or_else(|| Error::Input(format!("cannot evaluate {text:?} in {}", oracle.descriptor())))
}

/// `;`-separated list of group elements.
pub fn parse_element_list<O: GroupOracle>(oracle: &O, text: &str) -> Result<Vec<O::Elem>> {
    text.split(';').map(str::trim).filter(|t| !t.is_empty()).map(|t| parse_element(oracle, t)).collect()
}

/// Splits `2*x - y^-1 + 3` into signed terms. A `-` right after `^` belongs
/// to an exponent.
fn split_terms(text: &str) -> Vec<(bool, String)> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    let mut last = None;
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (c == '+' || c == '-') && last != Some('^') {
            if !current.trim().is_empty() {
                terms.push((negative, current.trim().to_string()));
            }
            current.clear();
            negative = c == '-';
        } else {
            current.push(c);
        }
        if !c.is_whitespace() {
            last = Some(c);
        }
    }
    if !current.trim().is_empty() {
        terms.push((negative, current.trim().to_string()));
    }
    terms
}

/// Parses a group-ring element such as `1 + g` or `2*x*y^-1 - 3`.
pub fn parse_ring_element<O: GroupOracle>(ring: &GroupRing<O>, text: &str) -> Result<Element<O>> {
    let domain = ring.domain();
    let terms = split_terms(text);
    if terms.is_empty() {
        return input(format!("empty group-ring element {text:?}"));
    }
    let mut parsed: Vec<(O::Elem, Scalar)> = Vec::new();
    for (negative, term) in terms {
        let split = term.find(|c: char| !(c.is_ascii_digit() || c == '/' || c.is_whitespace())).unwrap_or(term.len());
        let (coeff_text, rest) = term.split_at(split);
        let rest = rest.trim().trim_start_matches('*').trim();
        let mut coeff = if coeff_text.trim().is_empty() { domain.one() } else { domain.parse(coeff_text)? };
        if negative {
            coeff = domain.neg(&coeff);
        }
        let g = if rest.is_empty() { ring.oracle().identity() } else { parse_element(ring.oracle(), rest)? };
        parsed.push((g, coeff));
    }
    ring.from_terms(parsed)
}

/// Parses `label:coefficient` pairs separated by commas.
pub fn parse_chain(text: &str, labels: &[String], domain: &CoefficientDomain) -> Result<Vec<Scalar>> {
    let mut chain = vec![domain.zero(); labels.len()];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (label, c) = part.split_once(':').ok_or_else(|| Error::Input(format!("expected `label:coefficient`, got {part:?}")))?;
        let e = labels
            .iter()
            .position(|l| l == label.trim())
            .ok_or_else(|| Error::Input(format!("unknown edge {:?}", label.trim())))?;
        chain[e] = domain.add(&chain[e], &domain.parse(c)?);
    }
    Ok(chain)
}

pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Input(format!("bad integer {t:?}"))))
        .collect()
}

/// Rows like `110;011` (or `1 1 0; 0 1 1`) as a 0/1 pattern.
pub fn parse_pattern(text: &str) -> Result<(Vec<Vec<bool>>, usize)> {
    let rows: Vec<Vec<bool>> = text
        .split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => input(format!("pattern entries are 0 or 1, found {other:?}")),
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return input("pattern rows have different lengths");
    }
    Ok((rows, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::{Cyclic, FreeAbelian};

    #[test]
    fn group_specs() {
        assert_eq!(GroupSpec::parse("Z").unwrap(), GroupSpec::FreeAbelian(1));
        assert_eq!(GroupSpec::parse("Z^2").unwrap(), GroupSpec::FreeAbelian(2));
        assert_eq!(GroupSpec::parse("Z/6").unwrap(), GroupSpec::Cyclic(6));
        assert_eq!(GroupSpec::parse("F2").unwrap(), GroupSpec::Free(vec!["a".into(), "b".into()]));
        assert_eq!(GroupSpec::parse("F(u, v)").unwrap(), GroupSpec::Free(vec!["u".into(), "v".into()]));
        assert_eq!(GroupSpec::parse("S4").unwrap(), GroupSpec::Symmetric(4));
        assert!(GroupSpec::parse("Q8").is_err());
    }

    #[test]
    fn ring_elements() {
        let ring = GroupRing::new(Cyclic::new(2).unwrap(), CoefficientDomain::PrimeField(3));
        assert_eq!(ring.render(&parse_ring_element(&ring, "1 + g").unwrap()), "1 + g");
        assert_eq!(ring.render(&parse_ring_element(&ring, "g - 1").unwrap()), "2 + g");
        let ring = GroupRing::new(FreeAbelian::new(2), CoefficientDomain::Integers);
        let x = parse_ring_element(&ring, "2*x*y^-1 - 3 + y^-1*x^2").unwrap();
        assert_eq!(x.len(), 3);
        assert!(parse_ring_element(&ring, "z").is_err());
        assert!(parse_ring_element(&ring, "1/2*x").is_err());
    }

    #[test]
    fn patterns_and_chains() {
        let (p, c) = parse_pattern("110; 0 1 1").unwrap();
        assert_eq!((p.len(), c), (2, 3));
        assert!(parse_pattern("11;1").is_err());
        let labels = vec!["e1".to_string(), "e2".to_string()];
        let chain = parse_chain("e1:1, e2:-1", &labels, &CoefficientDomain::Integers).unwrap();
        assert_eq!(chain[1], Scalar::from_integer((-1).into()));
    }
}
