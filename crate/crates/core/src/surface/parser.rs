//! Line-oriented surface DSL.
//!
//! ```text
//! # comment
//! region <id> : <category> genus=<int> [anyons=[<label>,...]] [boundaries=[<algebra>,...]]
//! wall <id> : <region> -> <region> matrix=<wall>
//! ```
//!
//! Declarations may appear in any order. Region and wall ids share one namespace.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::model::{Insertion, RegionSpec, SurfaceSpec, WallEdge};
use crate::fusion::Catalog;
use crate::verlinde::ObjectVector;

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("unknown wall matrix `{0}`")]
    UnknownWall(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("`{label}` is neither a simple of {category} nor an algebra over it")]
    UnknownLabel { label: String, category: String },
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("category mismatch: {0}")]
    CategoryMismatch(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("no regions declared")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: {kind}")]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(position: Position, kind: ParseErrorKind) -> Self {
        Self { position, kind }
    }

    fn syntax(position: Position, msg: impl Into<String>) -> Self {
        Self::new(position, ParseErrorKind::Syntax(msg.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Colon,
    Equals,
    LBracket,
    RBracket,
    Comma,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Equals => write!(f, "`=`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Arrow => write!(f, "`->`"),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '~')
}

fn lex_line(line: &str, line_no: usize) -> Result<Vec<(Tok, Position)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line: line_no, column: i + 1 };
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            ':' => {
                toks.push((Tok::Colon, pos));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Equals, pos));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, pos));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, pos));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, pos));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                toks.push((Tok::Arrow, pos));
                i += 2;
            }
            c if is_word_char(c) => {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                toks.push((Tok::Word(chars[start..i].iter().collect()), pos));
            }
            other => return Err(ParseError::syntax(pos, format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

/// A name together with where it appeared.
#[derive(Debug, Clone)]
struct Spanned {
    text: String,
    pos: Position,
}

#[derive(Debug)]
struct RegionDecl {
    id: Spanned,
    category: Spanned,
    genus: u32,
    anyons: Vec<Spanned>,
    boundaries: Vec<Spanned>,
}

#[derive(Debug)]
struct WallDecl {
    id: Spanned,
    from: Spanned,
    to: Spanned,
    matrix: Spanned,
}

struct LineParser {
    toks: Vec<(Tok, Position)>,
    at: usize,
    end: Position,
}

impl LineParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn next(&mut self, expected: &str) -> Result<(Tok, Position), ParseError> {
        match self.toks.get(self.at) {
            Some(t) => {
                self.at += 1;
                Ok(t.clone())
            }
            None => Err(ParseError::syntax(self.end, format!("expected {expected}, found end of line"))),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Position, ParseError> {
        let (t, p) = self.next(&want.to_string())?;
        if t == want {
            Ok(p)
        } else {
            Err(ParseError::syntax(p, format!("expected {want}, found {t}")))
        }
    }

    fn word(&mut self, what: &str) -> Result<Spanned, ParseError> {
        match self.next(what)? {
            (Tok::Word(w), pos) => Ok(Spanned { text: w, pos }),
            (t, p) => Err(ParseError::syntax(p, format!("expected {what}, found {t}"))),
        }
    }

    fn list(&mut self, what: &str) -> Result<Vec<Spanned>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut items = Vec::new();
        if self.peek() == Some(&Tok::RBracket) {
            self.at += 1;
            return Ok(items);
        }
        loop {
            items.push(self.word(what)?);
            match self.next("`,` or `]`")? {
                (Tok::Comma, _) => continue,
                (Tok::RBracket, _) => return Ok(items),
                (t, p) => return Err(ParseError::syntax(p, format!("expected `,` or `]`, found {t}"))),
            }
        }
    }

    fn option_key(&mut self) -> Result<Option<Spanned>, ParseError> {
        if self.peek().is_none() {
            return Ok(None);
        }
        let key = self.word("an option such as `genus=`")?;
        self.expect(Tok::Equals)?;
        Ok(Some(key))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.at) {
            None => Ok(()),
            Some((t, p)) => Err(ParseError::syntax(*p, format!("unexpected {t}"))),
        }
    }
}

fn duplicate_option(key: &Spanned) -> ParseError {
    ParseError::syntax(key.pos, format!("option `{}` given twice", key.text))
}

fn parse_region(p: &mut LineParser, keyword: Position) -> Result<RegionDecl, ParseError> {
    let id = p.word("a region id")?;
    p.expect(Tok::Colon)?;
    let category = p.word("a category name")?;
    let mut genus = None;
    let mut anyons = None;
    let mut boundaries = None;
    while let Some(key) = p.option_key()? {
        match key.text.as_str() {
            "genus" => {
                let v = p.word("a nonnegative integer")?;
                let g = v
                    .text
                    .parse::<u32>()
                    .map_err(|_| ParseError::syntax(v.pos, format!("`{}` is not a valid genus", v.text)))?;
                if genus.replace(g).is_some() {
                    return Err(duplicate_option(&key));
                }
            }
            "anyons" => {
                if anyons.replace(p.list("an anyon label")?).is_some() {
                    return Err(duplicate_option(&key));
                }
            }
            "boundaries" => {
                if boundaries.replace(p.list("an algebra name")?).is_some() {
                    return Err(duplicate_option(&key));
                }
            }
            other => {
                return Err(ParseError::syntax(key.pos, format!("unknown region option `{other}`")))
            }
        }
    }
    p.finish()?;
    let genus = genus.ok_or_else(|| ParseError::syntax(keyword, "region is missing `genus=`"))?;
    Ok(RegionDecl {
        id,
        category,
        genus,
        anyons: anyons.unwrap_or_default(),
        boundaries: boundaries.unwrap_or_default(),
    })
}

fn parse_wall(p: &mut LineParser, keyword: Position) -> Result<WallDecl, ParseError> {
    let id = p.word("a wall id")?;
    p.expect(Tok::Colon)?;
    let from = p.word("a region id")?;
    p.expect(Tok::Arrow)?;
    let to = p.word("a region id")?;
    let mut matrix = None;
    while let Some(key) = p.option_key()? {
        match key.text.as_str() {
            "matrix" => {
                if matrix.replace(p.word("a wall matrix name")?).is_some() {
                    return Err(duplicate_option(&key));
                }
            }
            other => return Err(ParseError::syntax(key.pos, format!("unknown wall option `{other}`"))),
        }
    }
    p.finish()?;
    let matrix = matrix.ok_or_else(|| ParseError::syntax(keyword, "wall is missing `matrix=`"))?;
    Ok(WallDecl { id, from, to, matrix })
}

/// Parses and resolves a surface description against `catalog`.
pub fn parse_surface(text: &str, catalog: &Catalog) -> Result<SurfaceSpec, ParseError> {
    let mut regions = Vec::new();
    let mut walls = Vec::new();
    let mut last = Position { line: 1, column: 1 };
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let end = Position {
            line: line_no,
            column: line.chars().count() + 1,
        };
        last = end;
        let toks = lex_line(line, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = LineParser { toks, at: 0, end };
        let kw = p.word("`region` or `wall`")?;
        match kw.text.as_str() {
            "region" => regions.push(parse_region(&mut p, kw.pos)?),
            "wall" => walls.push(parse_wall(&mut p, kw.pos)?),
            other => {
                return Err(ParseError::syntax(
                    kw.pos,
                    format!("expected `region` or `wall`, found `{other}`"),
                ))
            }
        }
    }
    if regions.is_empty() {
        return Err(ParseError::new(last, ParseErrorKind::Empty));
    }
    resolve(regions, walls, catalog)
}

fn resolve(regions: Vec<RegionDecl>, walls: Vec<WallDecl>, catalog: &Catalog) -> Result<SurfaceSpec, ParseError> {
    let mut seen: BTreeMap<&str, Position> = BTreeMap::new();
    for id in regions.iter().map(|r| &r.id).chain(walls.iter().map(|w| &w.id)) {
        if seen.insert(&id.text, id.pos).is_some() {
            return Err(ParseError::new(id.pos, ParseErrorKind::DuplicateId(id.text.clone())));
        }
    }

    let mut spec = SurfaceSpec::new();
    for decl in &regions {
        let category = catalog
            .category(&decl.category.text)
            .map_err(|_| ParseError::new(decl.category.pos, ParseErrorKind::UnknownCategory(decl.category.text.clone())))?;
        let mut region = RegionSpec::new(decl.id.text.clone(), category.clone(), decl.genus);
        for a in &decl.anyons {
            let object = if let Some(i) = category.index_of(&a.text) {
                ObjectVector::simple(category.clone(), i)
            } else if let Ok(alg) = catalog.algebra(&a.text) {
                if !alg.category().same_as(&category) {
                    return Err(ParseError::new(
                        a.pos,
                        ParseErrorKind::CategoryMismatch(format!(
                            "algebra `{}` is over {}, region `{}` is {}",
                            a.text,
                            alg.category().name(),
                            decl.id.text,
                            category.name()
                        )),
                    ));
                }
                alg.object().clone()
            } else {
                return Err(ParseError::new(
                    a.pos,
                    ParseErrorKind::UnknownLabel {
                        label: a.text.clone(),
                        category: category.name().to_string(),
                    },
                ));
            };
            region.anyons.push(Insertion::new(a.text.clone(), object));
        }
        for b in &decl.boundaries {
            let alg = catalog
                .algebra(&b.text)
                .map_err(|_| ParseError::new(b.pos, ParseErrorKind::UnknownAlgebra(b.text.clone())))?;
            if !alg.category().same_as(&category) {
                return Err(ParseError::new(
                    b.pos,
                    ParseErrorKind::CategoryMismatch(format!(
                        "boundary `{}` is over {}, region `{}` is {}",
                        b.text,
                        alg.category().name(),
                        decl.id.text,
                        category.name()
                    )),
                ));
            }
            region.boundaries.push(alg);
        }
        spec.regions.push(region);
    }

    for decl in &walls {
        let from = spec
            .region(&decl.from.text)
            .ok_or_else(|| ParseError::new(decl.from.pos, ParseErrorKind::UnknownRegion(decl.from.text.clone())))?;
        let to = spec
            .region(&decl.to.text)
            .ok_or_else(|| ParseError::new(decl.to.pos, ParseErrorKind::UnknownRegion(decl.to.text.clone())))?;
        let wall = catalog
            .wall(&decl.matrix.text)
            .map_err(|_| ParseError::new(decl.matrix.pos, ParseErrorKind::UnknownWall(decl.matrix.text.clone())))?;
        if !wall.from_cat().same_as(&from.category) || !wall.to_cat().same_as(&to.category) {
            return Err(ParseError::new(
                decl.matrix.pos,
                ParseErrorKind::CategoryMismatch(format!(
                    "wall matrix `{}` is {} -> {}, regions are {} -> {}",
                    wall.name(),
                    wall.from_cat().name(),
                    wall.to_cat().name(),
                    from.category.name(),
                    to.category.name()
                )),
            ));
        }
        let edge = WallEdge::new(decl.id.text.clone(), decl.from.text.clone(), decl.to.text.clone(), Arc::clone(&wall));
        spec.walls.push(edge);
    }
    Ok(spec)
}
