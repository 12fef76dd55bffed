//! Recursive-descent checker for the DOT language (graph, node, edge and
//! attribute statements, subgraphs, ports, comments, quoted and HTML ids).
//! Returns the parsed graph so tests can count elements.

use std::collections::BTreeMap;

#[derive(Debug, Default)]
pub struct DotGraph {
    pub directed: bool,
    pub strict: bool,
    pub name: Option<String>,
    /// Node id to its merged attributes, in first-mention order.
    pub nodes: Vec<(String, BTreeMap<String, String>)>,
    pub edges: Vec<(String, String, BTreeMap<String, String>)>,
}

impl DotGraph {
    pub fn node(&self, id: &str) -> Option<&BTreeMap<String, String>> {
        self.nodes.iter().find(|(n, _)| n == id).map(|(_, a)| a)
    }

    fn touch(&mut self, id: &str) -> &mut BTreeMap<String, String> {
        if let Some(i) = self.nodes.iter().position(|(n, _)| n == id) {
            return &mut self.nodes[i].1;
        }
        self.nodes.push((id.to_string(), BTreeMap::new()));
        &mut self.nodes.last_mut().unwrap().1
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
    Colon,
    Arrow,
    Line,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let mut line_start = true;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line_start = true;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if line_start && c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        line_start = false;
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            i += 2;
            loop {
                if i + 1 >= chars.len() {
                    return Err("unterminated comment".into());
                }
                if chars[i] == '*' && chars[i + 1] == '/' {
                    i += 2;
                    break;
                }
                i += 1;
            }
            continue;
        }
        match c {
            '{' => out.push(Tok::LBrace),
            '}' => out.push(Tok::RBrace),
            '[' => out.push(Tok::LBracket),
            ']' => out.push(Tok::RBracket),
            '=' => out.push(Tok::Eq),
            ';' => out.push(Tok::Semi),
            ',' => out.push(Tok::Comma),
            ':' => out.push(Tok::Colon),
            '-' if matches!(chars.get(i + 1), Some('>')) => {
                out.push(Tok::Arrow);
                i += 2;
                continue;
            }
            '-' if matches!(chars.get(i + 1), Some('-')) => {
                out.push(Tok::Line);
                i += 2;
                continue;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('"') => break,
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some('\\') if chars.get(i + 1) == Some(&'\n') => i += 2,
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Tok::Id(s));
                continue;
            }
            '<' => {
                let mut depth = 0;
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated HTML id".into()),
                        Some('<') => depth += 1,
                        Some('>') => depth -= 1,
                        _ => {}
                    }
                    s.push(chars[i]);
                    i += 1;
                    if depth == 0 {
                        break;
                    }
                }
                out.push(Tok::Id(s));
                continue;
            }
            c if c.is_alphabetic() || c == '_' || !c.is_ascii() => {
                let mut s = String::new();
                while let Some(&ch) = chars.get(i) {
                    if ch.is_alphanumeric() || ch == '_' || !ch.is_ascii() {
                        s.push(ch);
                        i += 1;
                    } else {
                        break;
                    }
                }
                out.push(Tok::Id(s));
                continue;
            }
            c if c.is_ascii_digit() || c == '.' || c == '-' => {
                let mut s = String::new();
                if c == '-' {
                    s.push('-');
                    i += 1;
                }
                let mut dot = false;
                let mut digits = 0;
                while let Some(&ch) = chars.get(i) {
                    if ch.is_ascii_digit() {
                        digits += 1;
                    } else if ch == '.' && !dot {
                        dot = true;
                    } else {
                        break;
                    }
                    s.push(ch);
                    i += 1;
                }
                if digits == 0 {
                    return Err(format!("malformed numeral `{s}`"));
                }
                out.push(Tok::Id(s));
                continue;
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    graph: DotGraph,
}

const KEYWORDS: [&str; 6] = ["strict", "graph", "digraph", "node", "edge", "subgraph"];

fn is_kw(s: &str, kw: &str) -> bool {
    s.eq_ignore_ascii_case(kw)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.bump() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(format!("expected {t:?}, found {got:?}")),
        }
    }

    fn peek_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Id(s)) if is_kw(s, kw))
    }

    fn id(&mut self) -> Result<String, String> {
        match self.bump() {
            Some(Tok::Id(s)) if !KEYWORDS.iter().any(|k| is_kw(&s, k)) => Ok(s),
            got => Err(format!("expected identifier, found {got:?}")),
        }
    }

    fn graph(&mut self) -> Result<(), String> {
        if self.peek_kw("strict") {
            self.bump();
            self.graph.strict = true;
        }
        if self.peek_kw("digraph") {
            self.graph.directed = true;
        } else if !self.peek_kw("graph") {
            return Err("expected graph or digraph".into());
        }
        self.bump();
        if let Some(Tok::Id(_)) = self.peek() {
            self.graph.name = Some(self.id()?);
        }
        self.expect(Tok::LBrace)?;
        self.stmt_list()?;
        self.expect(Tok::RBrace)?;
        if self.pos != self.toks.len() {
            return Err("trailing tokens after graph".into());
        }
        Ok(())
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while !matches!(self.peek(), Some(Tok::RBrace) | None) {
            self.stmt()?;
            if matches!(self.peek(), Some(Tok::Semi)) {
                self.bump();
            }
        }
        Ok(())
    }

    fn attr_lists(&mut self) -> Result<BTreeMap<String, String>, String> {
        let mut out = BTreeMap::new();
        while matches!(self.peek(), Some(Tok::LBracket)) {
            self.bump();
            while !matches!(self.peek(), Some(Tok::RBracket)) {
                let k = self.id()?;
                self.expect(Tok::Eq)?;
                let v = self.id()?;
                out.insert(k, v);
                if matches!(self.peek(), Some(Tok::Semi | Tok::Comma)) {
                    self.bump();
                }
            }
            self.expect(Tok::RBracket)?;
        }
        Ok(out)
    }

    fn node_id(&mut self) -> Result<String, String> {
        let id = self.id()?;
        // port: ':' ID [ ':' compass_pt ]
        for _ in 0..2 {
            if matches!(self.peek(), Some(Tok::Colon)) {
                self.bump();
                self.id()?;
            }
        }
        Ok(id)
    }

    /// node_id or subgraph; returns the node ids it denotes.
    fn endpoint(&mut self) -> Result<Vec<String>, String> {
        if self.peek_kw("subgraph") || matches!(self.peek(), Some(Tok::LBrace)) {
            return self.subgraph();
        }
        let id = self.node_id()?;
        self.graph.touch(&id);
        Ok(vec![id])
    }

    fn subgraph(&mut self) -> Result<Vec<String>, String> {
        if self.peek_kw("subgraph") {
            self.bump();
            if let Some(Tok::Id(_)) = self.peek() {
                self.id()?;
            }
        }
        let before: Vec<String> = self.graph.nodes.iter().map(|(n, _)| n.clone()).collect();
        self.expect(Tok::LBrace)?;
        self.stmt_list()?;
        self.expect(Tok::RBrace)?;
        Ok(self
            .graph
            .nodes
            .iter()
            .map(|(n, _)| n.clone())
            .filter(|n| !before.contains(n))
            .collect())
    }

    fn stmt(&mut self) -> Result<(), String> {
        if self.peek_kw("graph") || self.peek_kw("node") || self.peek_kw("edge") {
            self.bump();
            if !matches!(self.peek(), Some(Tok::LBracket)) {
                return Err("attribute statement needs an attribute list".into());
            }
            self.attr_lists()?;
            return Ok(());
        }
        if matches!(self.peek(), Some(Tok::Id(_))) && matches!(self.peek_at(1), Some(Tok::Eq)) {
            self.id()?;
            self.bump();
            self.id()?;
            return Ok(());
        }
        let first = self.endpoint()?;
        let mut chain = vec![first];
        while let Some(op) = self.peek().cloned() {
            match (op, self.graph.directed) {
                (Tok::Arrow, true) | (Tok::Line, false) => {
                    self.bump();
                    chain.push(self.endpoint()?);
                }
                (Tok::Arrow, false) => return Err("-> in undirected graph".into()),
                (Tok::Line, true) => return Err("-- in directed graph".into()),
                _ => break,
            }
        }
        let attrs = self.attr_lists()?;
        if chain.len() == 1 {
            for id in &chain[0] {
                self.graph.touch(id).extend(attrs.clone());
            }
        } else {
            for w in chain.windows(2) {
                for a in &w[0] {
                    for b in &w[1] {
                        self.graph.edges.push((a.clone(), b.clone(), attrs.clone()));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn parse_dot(src: &str) -> Result<DotGraph, String> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        graph: DotGraph::default(),
    };
    p.graph()?;
    Ok(p.graph)
}
