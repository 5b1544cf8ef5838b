//! Line-oriented text format for simplicial sets, maps and generator
//! subsets. See `docs/FORMAT.md` for the grammar.

use std::fmt::Write as _;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::{Generator, SimplicialSet};
use super::simplex::{DegeneracyWord, Simplex, SimplexRef};
use super::subset::GeneratorSubset;
use crate::error::{Error, Result};

pub const SET_HEADER: &str = "simplicial-set v1";
pub const MAP_HEADER: &str = "simplicial-map v1";
pub const FAMILY_HEADER: &str = "subset-family v1";

/// Character cursor over one line, tracking 1-based columns.
pub(crate) struct Cursor<'a> {
    line_no: usize,
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(line_no: usize, src: &'a str) -> Self {
        Cursor {
            line_no,
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line_no,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    pub(crate) fn expect_end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_char(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub(crate) fn word(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || "-_=.".contains(self.chars[self.pos]))
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    pub(crate) fn keyword(&mut self, kw: &str) -> Result<()> {
        let save = self.pos;
        match self.word() {
            Some(w) if w == kw => Ok(()),
            _ => {
                self.pos = save;
                self.skip_ws();
                Err(self.error(format!("expected '{kw}'")))
            }
        }
    }

    pub(crate) fn try_keyword(&mut self, kw: &str) -> bool {
        let save = self.pos;
        match self.word() {
            Some(w) if w == kw => true,
            _ => {
                self.pos = save;
                false
            }
        }
    }

    pub(crate) fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("number out of range")
        })
    }

    fn string(&mut self) -> Result<String> {
        self.expect_char('"')?;
        let mut out = String::new();
        loop {
            match self.chars.get(self.pos) {
                None => return Err(self.error("unterminated string")),
                Some('"') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some('\\') => {
                    match self.chars.get(self.pos + 1) {
                        Some('\\') => out.push('\\'),
                        Some('"') => out.push('"'),
                        Some('n') => out.push('\n'),
                        _ => {
                            self.pos += 1;
                            return Err(self.error("bad escape"));
                        }
                    }
                    self.pos += 2;
                }
                Some(&c) => {
                    out.push(c);
                    self.pos += 1;
                }
            }
        }
    }

    pub(crate) fn generator_ref(&mut self) -> Result<SimplexRef> {
        let dim = self.number()?;
        if self.chars.get(self.pos) != Some(&':') {
            return Err(self.error("expected ':'"));
        }
        self.pos += 1;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error("expected a generator index"));
        }
        let index = self.number()?;
        Ok(SimplexRef::new(dim, index))
    }

    /// `( s_j1 ... s_jk | dim:index )`, with `s` followed by the index.
    pub(crate) fn simplex(&mut self) -> Result<Simplex> {
        self.expect_char('(')?;
        let mut idx = Vec::new();
        let word_start;
        loop {
            match self.peek() {
                Some('s') => {
                    self.pos += 1;
                    if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                        return Err(self.error("expected a degeneracy index after 's'"));
                    }
                    idx.push(self.number()?);
                }
                Some('|') => {
                    word_start = self.pos;
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected 's<index>' or '|'")),
            }
        }
        let word = DegeneracyWord::new(idx).map_err(|e| Error::Parse {
            line: self.line_no,
            column: word_start + 1,
            message: e.to_string(),
        })?;
        self.skip_ws();
        let gen = self.generator_ref()?;
        self.expect_char(')')?;
        let s = Simplex::new(word, gen);
        if !s.is_well_formed() {
            return Err(self.error(format!("{s} has a degeneracy index out of range")));
        }
        Ok(s)
    }

    pub(crate) fn simplices_until_end(&mut self) -> Result<Vec<Simplex>> {
        let mut out = Vec::new();
        while !self.at_end() {
            out.push(self.simplex()?);
        }
        Ok(out)
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Nonblank, non-comment lines with their 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

fn eof_error(text: &str, what: &str) -> Error {
    Error::Parse {
        line: text.lines().count() + 1,
        column: 1,
        message: format!("unexpected end of input, expected {what}"),
    }
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    text: &str,
    header: &str,
) -> Result<()> {
    let (no, line) = lines.next().ok_or_else(|| eof_error(text, header))?;
    if line.trim() != header {
        return Err(Error::Parse {
            line: no,
            column: 1,
            message: format!("expected header '{header}'"),
        });
    }
    Ok(())
}

pub fn print_set(x: &SimplicialSet) -> String {
    let mut out = String::new();
    out.push_str(SET_HEADER);
    out.push('\n');
    for (d, gens) in x.generators().iter().enumerate() {
        let _ = writeln!(out, "dim {d} count {}", gens.len());
        for (i, g) in gens.iter().enumerate() {
            let _ = write!(out, "{i} {}", quote(&g.label));
            if d > 0 {
                out.push_str(" faces");
                for f in &g.faces {
                    let _ = write!(out, " {f}");
                }
            }
            out.push('\n');
        }
    }
    out.push_str("end\n");
    out
}

/// Parses and validates a simplicial set.
pub fn parse_set(text: &str) -> Result<SimplicialSet> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, text, SET_HEADER)?;
    let mut gens: Vec<Vec<Generator>> = Vec::new();
    loop {
        let (no, line) = lines.next().ok_or_else(|| eof_error(text, "'dim' or 'end'"))?;
        let mut c = Cursor::new(no, line);
        if c.try_keyword("end") {
            c.expect_end()?;
            break;
        }
        c.keyword("dim")?;
        let dim = c.number()?;
        if dim != gens.len() {
            return Err(c.error(format!("expected dimension {}", gens.len())));
        }
        c.keyword("count")?;
        let count = c.number()?;
        c.expect_end()?;
        let mut layer = Vec::with_capacity(count);
        for i in 0..count {
            let (no, line) = lines
                .next()
                .ok_or_else(|| eof_error(text, "a generator line"))?;
            let mut c = Cursor::new(no, line);
            if c.number()? != i {
                return Err(Error::Parse {
                    line: no,
                    column: 1,
                    message: format!("expected generator index {i}"),
                });
            }
            let label = c.string()?;
            let faces = if dim == 0 {
                Vec::new()
            } else {
                c.keyword("faces")?;
                let faces = c.simplices_until_end()?;
                if faces.len() != dim + 1 {
                    return Err(c.error(format!(
                        "a {dim}-generator needs {} faces, found {}",
                        dim + 1,
                        faces.len()
                    )));
                }
                faces
            };
            c.expect_end()?;
            layer.push(Generator { label, faces });
        }
        gens.push(layer);
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::Parse {
            line: no,
            column: 1,
            message: "content after 'end'".into(),
        });
    }
    SimplicialSet::new(gens)
}

fn counts_line(x: &SimplicialSet) -> String {
    x.counts()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn print_map(f: &SimplicialMap) -> String {
    let mut out = String::new();
    out.push_str(MAP_HEADER);
    out.push('\n');
    let _ = writeln!(out, "dom {}", counts_line(f.dom()));
    let _ = writeln!(out, "cod {}", counts_line(f.cod()));
    for (d, row) in f.assignments().iter().enumerate() {
        let _ = writeln!(out, "dim {d}");
        for (i, s) in row.iter().enumerate() {
            let _ = writeln!(out, "{i} -> {s}");
        }
    }
    out.push_str("end\n");
    out
}

fn parse_counts(c: &mut Cursor<'_>) -> Result<Vec<usize>> {
    let mut counts = Vec::new();
    while !c.at_end() {
        counts.push(c.number()?);
    }
    Ok(counts)
}

/// Parses a map between the given sets and checks face compatibility.
pub fn parse_map(
    text: &str,
    dom: Arc<SimplicialSet>,
    cod: Arc<SimplicialSet>,
) -> Result<SimplicialMap> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, text, MAP_HEADER)?;
    for (kw, set) in [("dom", &dom), ("cod", &cod)] {
        let (no, line) = lines.next().ok_or_else(|| eof_error(text, kw))?;
        let mut c = Cursor::new(no, line);
        c.keyword(kw)?;
        let counts = parse_counts(&mut c)?;
        if counts != set.counts() {
            return Err(Error::Parse {
                line: no,
                column: 1,
                message: format!(
                    "{kw} generator counts {counts:?} do not match the supplied set {:?}",
                    set.counts()
                ),
            });
        }
    }
    let mut assign: Vec<Vec<Simplex>> = Vec::new();
    let mut current: Option<usize> = None;
    loop {
        let (no, line) = lines.next().ok_or_else(|| eof_error(text, "'dim' or 'end'"))?;
        let mut c = Cursor::new(no, line);
        if c.try_keyword("end") {
            c.expect_end()?;
            break;
        }
        if c.try_keyword("dim") {
            let d = c.number()?;
            if d != assign.len() {
                return Err(c.error(format!("expected dimension {}", assign.len())));
            }
            c.expect_end()?;
            assign.push(Vec::new());
            current = Some(d);
            continue;
        }
        let Some(d) = current else {
            return Err(c.error("assignment before any 'dim' line"));
        };
        let i = c.number()?;
        if i != assign[d].len() {
            return Err(c.error(format!("expected generator index {}", assign[d].len())));
        }
        c.expect_char('-')?;
        if c.chars.get(c.pos) != Some(&'>') {
            return Err(c.error("expected '->'"));
        }
        c.pos += 1;
        assign[d].push(c.simplex()?);
        c.expect_end()?;
    }
    SimplicialMap::new(dom, cod, assign)
}

pub fn print_family(family: &[GeneratorSubset]) -> String {
    let mut out = String::new();
    out.push_str(FAMILY_HEADER);
    out.push('\n');
    for s in family {
        out.push_str("member");
        for r in s.iter() {
            let _ = write!(out, " {r}");
        }
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

/// Parses a family of generator subsets. Face closure is checked by the
/// consumer against its ambient set.
pub fn parse_family(text: &str) -> Result<Vec<GeneratorSubset>> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, text, FAMILY_HEADER)?;
    let mut out = Vec::new();
    loop {
        let (no, line) = lines.next().ok_or_else(|| eof_error(text, "'member' or 'end'"))?;
        let mut c = Cursor::new(no, line);
        if c.try_keyword("end") {
            c.expect_end()?;
            return Ok(out);
        }
        c.keyword("member")?;
        let mut refs = Vec::new();
        while !c.at_end() {
            refs.push(c.generator_ref()?);
        }
        out.push(GeneratorSubset::new(refs));
    }
}
