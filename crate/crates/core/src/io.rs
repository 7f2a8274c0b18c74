//! JSON documents for digraphs, maps and homotopies, and a small DOT importer.
//!
//! ```json
//! {"vertices": ["a", "b"], "edges": [["a", "b"]]}
//! {"domain": <digraph or path>, "codomain": <digraph or path>, "map": {"a": "0"}}
//! {"domain": ..., "codomain": ..., "word": "-+", "frames": [{"a": "0"}, ...]}
//! ```
//!
//! A digraph reference inside a map or homotopy document is either an inline
//! digraph document or a path, resolved against the referring document's
//! directory.
//!
//! Quoted DOT identifiers unescape `\"` and `\\`; any other backslash is kept.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::digraph::{validate_digraph, Digraph, DigraphMap};
use crate::error::{Error, Result};
use crate::homotopy::Homotopy;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

impl DigraphDoc {
    pub fn to_digraph(&self) -> Result<Digraph> {
        validate_digraph(&self.vertices, &self.edges)
    }
}

impl From<&Digraph> for DigraphDoc {
    fn from(g: &Digraph) -> Self {
        Self {
            vertices: g.labels().to_vec(),
            edges: g.edge_labels().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DigraphRef {
    Inline(DigraphDoc),
    Path(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub domain: DigraphRef,
    pub codomain: DigraphRef,
    pub map: BTreeMap<String, String>,
}

impl From<&DigraphMap> for MapDoc {
    fn from(f: &DigraphMap) -> Self {
        Self {
            domain: DigraphRef::Inline(f.domain().as_ref().into()),
            codomain: DigraphRef::Inline(f.codomain().as_ref().into()),
            map: f.to_label_map(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyDoc {
    pub domain: DigraphRef,
    pub codomain: DigraphRef,
    pub word: String,
    pub frames: Vec<BTreeMap<String, String>>,
}

impl From<&Homotopy> for HomotopyDoc {
    fn from(h: &Homotopy) -> Self {
        Self {
            domain: DigraphRef::Inline(h.domain().as_ref().into()),
            codomain: DigraphRef::Inline(h.codomain().as_ref().into()),
            word: h.line().to_string(),
            frames: h.frames().iter().map(DigraphMap::to_label_map).collect(),
        }
    }
}

/// How path references are resolved.
#[derive(Clone, Debug)]
pub enum Resolver {
    /// Paths are rejected; only inline documents are accepted.
    InlineOnly,
    /// Paths are relative to this directory.
    Directory(PathBuf),
}

impl Resolver {
    pub fn for_file(path: &Path) -> Self {
        Self::Directory(path.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    pub fn resolve(&self, r: &DigraphRef) -> Result<Arc<Digraph>> {
        match (r, self) {
            (DigraphRef::Inline(doc), _) => Ok(Arc::new(doc.to_digraph()?)),
            (DigraphRef::Path(p), Resolver::Directory(dir)) => Ok(Arc::new(read_digraph(&dir.join(p))?)),
            (DigraphRef::Path(p), Resolver::InlineOnly) => {
                Err(Error::Document(format!("digraph reference `{p}` must be inline here")))
            }
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn parse_digraph_json(text: &str) -> Result<Digraph> {
    serde_json::from_str::<DigraphDoc>(text)?.to_digraph()
}

pub fn parse_map_json(text: &str, resolver: &Resolver) -> Result<DigraphMap> {
    let doc: MapDoc = serde_json::from_str(text)?;
    DigraphMap::from_labels(resolver.resolve(&doc.domain)?, resolver.resolve(&doc.codomain)?, &doc.map)
}

/// Parses a homotopy document; the frames must be digraph maps but the
/// step conditions are left to [`Homotopy::verify`].
pub fn parse_homotopy_json(text: &str, resolver: &Resolver) -> Result<Homotopy> {
    let doc: HomotopyDoc = serde_json::from_str(text)?;
    Homotopy::from_labels(resolver.resolve(&doc.domain)?, resolver.resolve(&doc.codomain)?, &doc.word, &doc.frames)
}

/// Reads a digraph from JSON, or from DOT when the extension is `.dot` or `.gv`.
pub fn read_digraph(path: &Path) -> Result<Digraph> {
    let text = read_text(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("dot" | "gv") => parse_dot(&text),
        _ => parse_digraph_json(&text),
    }
}

pub fn read_map(path: &Path) -> Result<DigraphMap> {
    parse_map_json(&read_text(path)?, &Resolver::for_file(path))
}

pub fn read_homotopy(path: &Path) -> Result<Homotopy> {
    parse_homotopy_json(&read_text(path)?, &Resolver::for_file(path))
}

/// Canonical compact JSON of a digraph.
pub fn digraph_json(g: &Digraph) -> String {
    serde_json::to_string(&DigraphDoc::from(g)).expect("digraph documents serialize")
}

/// DOT rendering with every label quoted.
pub fn to_dot(g: &Digraph) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("digraph {\n");
    for v in g.labels() {
        out.push_str(&format!("  {};\n", quote(v)));
    }
    for (a, b) in g.edge_labels() {
        out.push_str(&format!("  {} -> {};\n", quote(a), quote(b)));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Id(String),
    Arrow,
    UndirectedEdge,
    Open,
    Close,
    OpenBracket,
    CloseBracket,
    Equals,
    Separator,
}

fn dot_error(line: usize, message: impl Into<String>) -> Error {
    Error::Dot { line, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut i = 0;
    let mut line_start = true;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                line_start = true;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => i += 1,
            '#' if line_start => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                let start = line;
                i += 2;
                loop {
                    match chars.get(i) {
                        None => return Err(dot_error(start, "unterminated comment")),
                        Some('*') if chars.get(i + 1) == Some(&'/') => {
                            i += 2;
                            break;
                        }
                        Some('\n') => line += 1,
                        _ => {}
                    }
                    i += 1;
                }
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                tokens.push((Token::Arrow, line));
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                tokens.push((Token::UndirectedEdge, line));
                i += 2;
            }
            '{' | '}' | '[' | ']' | '=' | ';' | ',' => {
                let t = match c {
                    '{' => Token::Open,
                    '}' => Token::Close,
                    '[' => Token::OpenBracket,
                    ']' => Token::CloseBracket,
                    '=' => Token::Equals,
                    _ => Token::Separator,
                };
                tokens.push((t, line));
                i += 1;
            }
            '"' => {
                let start = line;
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(dot_error(start, "unterminated string")),
                        Some('"') => break,
                        Some('\\') if matches!(chars.get(i + 1), Some('"' | '\\')) => {
                            s.push(chars[i + 1]);
                            i += 1;
                        }
                        Some('\\') if chars.get(i + 1) == Some(&'\n') => {
                            line += 1;
                            i += 1;
                        }
                        Some(&ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                        }
                    }
                    i += 1;
                }
                i += 1;
                tokens.push((Token::Id(s), start));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' => {
                let mut s = String::new();
                while let Some(&ch) = chars.get(i) {
                    if ch.is_alphanumeric() || ch == '_' || ch == '.' || (ch == '-' && !matches!(chars.get(i + 1), Some('>' | '-'))) {
                        s.push(ch);
                        i += 1;
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Id(s), line));
            }
            other => return Err(dot_error(line, format!("unexpected character `{other}`"))),
        }
        line_start = false;
    }
    Ok(tokens)
}

struct DotParser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl DotParser {
    fn line(&self) -> usize {
        self.tokens.get(self.pos).or(self.tokens.last()).map_or(1, |t| t.1)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        let line = self.line();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(dot_error(line, format!("expected {what}"))),
        }
    }

    fn keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Token::Id(s)) if s.eq_ignore_ascii_case(word))
    }

    fn header(&mut self) -> Result<()> {
        if self.keyword("strict") {
            self.pos += 1;
        }
        if self.keyword("graph") {
            return Err(dot_error(self.line(), "undirected graphs are not supported"));
        }
        if !self.keyword("digraph") {
            return Err(dot_error(self.line(), "expected `digraph`"));
        }
        self.pos += 1;
        if let Some(Token::Id(_)) = self.peek() {
            self.pos += 1;
        }
        self.expect(Token::Open, "`{`")
    }

    fn attributes(&mut self) -> Result<()> {
        while self.peek() == Some(&Token::OpenBracket) {
            self.pos += 1;
            loop {
                let line = self.line();
                match self.next() {
                    Some(Token::CloseBracket) => break,
                    Some(Token::Separator) => {}
                    Some(Token::Id(_)) => {
                        self.expect(Token::Equals, "`=` in attribute")?;
                        match self.next() {
                            Some(Token::Id(_)) => {}
                            _ => return Err(dot_error(line, "expected attribute value")),
                        }
                    }
                    _ => return Err(dot_error(line, "unterminated attribute list")),
                }
            }
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<bool> {
        let line = self.line();
        let first = match self.next() {
            Some(Token::Close) => return Ok(false),
            Some(Token::Separator) => return Ok(true),
            Some(Token::Id(s)) => s,
            Some(Token::Open) => return Err(dot_error(line, "subgraphs are not supported")),
            Some(Token::UndirectedEdge) => return Err(dot_error(line, "undirected edge `--` in a digraph")),
            Some(_) => return Err(dot_error(line, "expected a statement")),
            None => return Err(dot_error(line, "missing `}`")),
        };
        if matches!(first.to_ascii_lowercase().as_str(), "graph" | "node" | "edge") && self.peek() == Some(&Token::OpenBracket) {
            return self.attributes().map(|_| true);
        }
        if first.eq_ignore_ascii_case("subgraph") {
            return Err(dot_error(line, "subgraphs are not supported"));
        }
        if self.peek() == Some(&Token::Equals) {
            self.pos += 1;
            return match self.next() {
                Some(Token::Id(_)) => Ok(true),
                _ => Err(dot_error(line, "expected a value after `=`")),
            };
        }
        // Ports such as `a:n` are not supported; the label is the whole id.
        let mut chain = vec![first];
        loop {
            match self.peek() {
                Some(Token::Arrow) => {
                    self.pos += 1;
                    let line = self.line();
                    match self.next() {
                        Some(Token::Id(s)) => chain.push(s),
                        Some(Token::Open) => return Err(dot_error(line, "subgraphs are not supported")),
                        _ => return Err(dot_error(line, "expected a node after `->`")),
                    }
                }
                Some(Token::UndirectedEdge) => return Err(dot_error(self.line(), "undirected edge `--` in a digraph")),
                _ => break,
            }
        }
        self.attributes()?;
        for w in chain.windows(2) {
            if w[0] == w[1] {
                return Err(dot_error(line, format!("self-loop on `{}`", w[0])));
            }
            self.edges.push((w[0].clone(), w[1].clone()));
        }
        for v in chain {
            if !self.vertices.contains(&v) {
                self.vertices.push(v);
            }
        }
        Ok(true)
    }
}

/// Parses a DOT `digraph`. Node and edge statements map one-to-one onto
/// vertices and edges; attributes are ignored. Loops, repeated edges,
/// undirected graphs and subgraphs are rejected.
pub fn parse_dot(text: &str) -> Result<Digraph> {
    let mut parser = DotParser { tokens: tokenize(text)?, pos: 0, vertices: Vec::new(), edges: Vec::new() };
    parser.header()?;
    while parser.statement()? {}
    if parser.pos < parser.tokens.len() {
        return Err(dot_error(parser.line(), "trailing input after `}`"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (a, b) in &parser.edges {
        if !seen.insert((a, b)) {
            return Err(dot_error(1, format!("repeated edge {a} -> {b}")));
        }
    }
    validate_digraph(&parser.vertices, &parser.edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = parse_digraph_json(r#"{"vertices": ["b", "a"], "edges": [["a", "b"]]}"#).unwrap();
        assert_eq!(g.labels(), ["a", "b"]);
        assert_eq!(parse_digraph_json(&digraph_json(&g)).unwrap(), g);
        assert!(parse_digraph_json(r#"{"vertices": ["a"], "edges": [["a", "a"]]}"#).is_err());
        assert!(parse_digraph_json(r#"{"vertices": ["a"], "extra": 1}"#).is_err());
        assert!(parse_digraph_json("[").is_err());
    }

    #[test]
    fn map_documents() {
        let text = r#"{"domain": {"vertices": ["x"]}, "codomain": {"vertices": ["0", "1"], "edges": [["0", "1"]]}, "map": {"x": "1"}}"#;
        let f = parse_map_json(text, &Resolver::InlineOnly).unwrap();
        assert_eq!(f.apply_label("x"), Some("1"));
        let again = serde_json::to_string(&MapDoc::from(&f)).unwrap();
        assert_eq!(parse_map_json(&again, &Resolver::InlineOnly).unwrap(), f);
        let by_path = r#"{"domain": "g.json", "codomain": "g.json", "map": {}}"#;
        assert!(matches!(parse_map_json(by_path, &Resolver::InlineOnly), Err(Error::Document(_))));
    }

    #[test]
    fn homotopy_documents() {
        let text = r#"{"domain": {"vertices": ["x"]}, "codomain": {"vertices": ["0", "1"], "edges": [["0", "1"]]},
                       "word": "+", "frames": [{"x": "0"}, {"x": "1"}]}"#;
        let h = parse_homotopy_json(text, &Resolver::InlineOnly).unwrap();
        assert!(h.verify());
        let back = serde_json::to_string(&HomotopyDoc::from(&h)).unwrap();
        assert_eq!(parse_homotopy_json(&back, &Resolver::InlineOnly).unwrap(), h);
        let short = text.replace(r#", {"x": "1"}"#, "");
        assert!(matches!(parse_homotopy_json(&short, &Resolver::InlineOnly), Err(Error::MalformedHomotopy(_))));
    }

    #[test]
    fn dot_import() {
        let g = parse_dot(
            "strict digraph G {\n  // comment\n  rankdir=LR;\n  node [shape=circle];\n  a -> b -> \"c d\" [color=red];\n  e\n}\n",
        )
        .unwrap();
        assert_eq!(g.labels(), ["a", "b", "c d", "e"]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(parse_dot(&to_dot(&g)).unwrap(), g);
        assert!(parse_dot("graph { a -- b }").is_err());
        assert!(parse_dot("digraph { a -> a }").is_err());
        assert!(parse_dot("digraph { a -> b; a -> b }").is_err());
        assert!(parse_dot("digraph { a -> b").is_err());
        assert!(parse_dot("digraph { subgraph s { a } }").is_err());
        assert!(matches!(parse_dot("digraph {\n a -> \n}"), Err(Error::Dot { line: 3, .. })));
    }
}
