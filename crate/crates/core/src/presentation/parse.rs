use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::{valid_identifier, Partition, Presentation, Word};

/// Everything a presentation file can declare.
#[derive(Clone, Debug)]
pub struct PresentationFile {
    pub presentation: Presentation,
    /// Permutation image of every generator, padded to a common degree.
    pub quotient: Option<Vec<Permutation>>,
    pub abelianize: bool,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '[' => {
                out.push(Tok::LBracket);
                i += 1
            }
            ']' => {
                out.push(Tok::RBracket);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Int(text.parse().map_err(|_| format!("integer {text} too large"))?));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

struct WordParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> std::result::Result<(), String> {
        match self.toks.get(self.pos) {
            Some(x) if *x == t => {
                self.pos += 1;
                Ok(())
            }
            other => Err(format!("expected {t:?}, found {other:?}")),
        }
    }

    fn expr(&mut self) -> std::result::Result<Word, String> {
        let mut w = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> std::result::Result<Word, String> {
        let mut w = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.toks.get(self.pos) {
                Some(Tok::Int(k)) => {
                    let k = *k;
                    self.pos += 1;
                    w = w.pow(if neg { -k } else { k });
                }
                other => return Err(format!("expected exponent, found {other:?}")),
            }
        }
        Ok(w)
    }

    fn atom(&mut self) -> std::result::Result<Word, String> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| format!("unknown generator {name:?}"))?;
                Ok(Word::gen(g))
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(w)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(Tok::Comma)?;
                let y = self.expr()?;
                self.expect(Tok::RBracket)?;
                Ok(x.mul(&y).mul(&x.inverse()).mul(&y.inverse()))
            }
            other => Err(format!("expected a generator, '1', '(' or '[', found {other:?}")),
        }
    }
}

/// Parses a word expression: `*` concatenation, `^n` powers, `[x,y]`
/// commutators (`x y x^-1 y^-1`), parentheses, and `1` for the identity.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    parse_word_at(text, names, 0)
}

fn parse_word_at(text: &str, names: &[String], line: usize) -> Result<Word> {
    let err = |msg: String| Error::Parse { line, msg: format!("{msg} in {:?}", text.trim()) };
    let toks = tokenize(text).map_err(err)?;
    if toks.is_empty() {
        return Err(err("empty word".into()));
    }
    let mut p = WordParser { toks, pos: 0, names };
    let w = p.expr().map_err(err)?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(w)
}

/// Splits on any of `seps` outside parentheses and brackets.
fn split_top_level<'s>(s: &'s str, seps: &[char]) -> Vec<&'s str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if depth == 0 && seps.contains(&c) => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses `a -> (1 2), b -> (1 2 3)` against the presentation's alphabet.
/// Unlisted generators map to the identity; all images share one degree.
pub fn parse_quotient_spec(spec: &str, names: &[String]) -> Result<Vec<Permutation>> {
    parse_quotient_at(spec, names, 0)
}

fn parse_quotient_at(spec: &str, names: &[String], line: usize) -> Result<Vec<Permutation>> {
    let perr = |msg: String| Error::Parse { line, msg };
    let mut cycles: Vec<Option<Vec<Vec<usize>>>> = vec![None; names.len()];
    let mut degree = 1;
    for entry in split_top_level(spec, &[',', ';']).into_iter().map(str::trim).filter(|e| !e.is_empty()) {
        let (lhs, rhs) = entry.split_once("->").ok_or_else(|| perr(format!("expected `gen -> cycles` in {entry:?}")))?;
        let name = lhs.trim();
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| perr(format!("unknown generator {name:?} in quotient")))?;
        if cycles[g].is_some() {
            return Err(perr(format!("generator {name:?} given two images")));
        }
        let (c, max) = Permutation::parse_cycles(rhs).map_err(|e| perr(e.to_string()))?;
        degree = degree.max(max);
        cycles[g] = Some(c);
    }
    cycles
        .into_iter()
        .map(|c| Permutation::from_cycles(degree, &c.unwrap_or_default()).map_err(|e| perr(e.to_string())))
        .collect()
}

fn parse_partition(body: &str, names: &[String], line: usize) -> Result<Partition> {
    let perr = |msg: String| Error::Parse { line, msg };
    let mut groups = Vec::new();
    for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (tag, gens) = part.split_once('=').ok_or_else(|| perr(format!("expected `Tag = gens` in {part:?}")))?;
        let tag = tag.trim().to_string();
        if !valid_identifier(&tag) {
            return Err(perr(format!("invalid factor tag {tag:?}")));
        }
        let mut idx = Vec::new();
        for g in gens.split(',').map(str::trim).filter(|g| !g.is_empty()) {
            idx.push(names.iter().position(|n| n == g).ok_or_else(|| perr(format!("unknown generator {g:?} in partition")))?);
        }
        groups.push((tag, idx));
    }
    Partition::from_groups(names.len(), &groups).map_err(|e| perr(e.to_string()))
}

/// Parses the presentation text format:
///
/// ```text
/// gens: a, b, t
/// rels: [t*a*t^-1, a] * a^-3 ; a^2*b^-3
/// partition: A = a ; B = b        # optional
/// quotient: a -> (1 2), b -> (1 2 3)
/// abelianize
/// ```
pub fn parse_presentation_file(text: &str) -> Result<PresentationFile> {
    let mut gens: Option<(Vec<String>, usize)> = None;
    let mut rels: Vec<(String, usize)> = Vec::new();
    let mut partition: Option<(String, usize)> = None;
    let mut quotient: Option<(String, usize)> = None;
    let mut abelianize = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "abelianize" {
            abelianize = true;
            continue;
        }
        let (key, body) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse { line: line_no, msg: format!("expected `key: value`, found {line:?}") })?;
        let dup = |what: &str| Error::Parse { line: line_no, msg: format!("duplicate `{what}:` stanza") };
        match key.trim() {
            "gens" => {
                if gens.is_some() {
                    return Err(dup("gens"));
                }
                let names = body.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                gens = Some((names, line_no));
            }
            "rels" => {
                for r in body.split(';').map(str::trim).filter(|r| !r.is_empty()) {
                    rels.push((r.to_string(), line_no));
                }
            }
            "partition" => {
                if partition.replace((body.to_string(), line_no)).is_some() {
                    return Err(dup("partition"));
                }
            }
            "quotient" => {
                if quotient.replace((body.to_string(), line_no)).is_some() {
                    return Err(dup("quotient"));
                }
            }
            other => return Err(Error::Parse { line: line_no, msg: format!("unknown key {other:?}") }),
        }
    }

    let (names, gens_line) = gens.ok_or_else(|| Error::Parse { line: 0, msg: "missing `gens:` line".into() })?;
    let relators = rels
        .iter()
        .map(|(r, line)| parse_word_at(r, &names, *line))
        .collect::<Result<Vec<_>>>()?;
    let mut presentation =
        Presentation::new(&names, relators).map_err(|e| Error::Parse { line: gens_line, msg: e.to_string() })?;
    if let Some((body, line)) = partition {
        let part = parse_partition(&body, &names, line)?;
        presentation = presentation.with_partition(part)?;
    }
    let quotient = quotient.map(|(body, line)| parse_quotient_at(&body, &names, line)).transpose()?;
    Ok(PresentationFile { presentation, quotient, abelianize })
}
