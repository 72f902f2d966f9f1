//! A small reader for the GML subset used by common network repositories.
//!
//! Only `graph [ node [ id .. ] edge [ source .. target .. ] ]` is
//! interpreted; every other key is parsed and ignored. Scalar node
//! attributes (such as `label` or `value`) are retained so callers can build
//! ground-truth partitions from them.

use std::collections::{BTreeSet, HashMap};

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{build_from_tokens, Network};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
    Str(String),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '[' => {
                out.push((Token::Open, line));
                chars.next();
            }
            ']' => {
                out.push((Token::Close, line));
                chars.next();
            }
            '"' => {
                let start = line;
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some(ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                        }
                        None => {
                            return Err(Error::Parse {
                                line: start,
                                message: "unterminated string".into(),
                            })
                        }
                    }
                }
                out.push((Token::Str(s), start));
            }
            _ => {
                let mut s = String::new();
                while let Some(&ch) = chars.peek() {
                    if ch.is_whitespace() || ch == '[' || ch == ']' || ch == '"' {
                        break;
                    }
                    s.push(ch);
                    chars.next();
                }
                out.push((Token::Word(s), line));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Value {
    Scalar(String),
    List(Vec<(String, Value, usize)>),
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn last_line(&self) -> usize {
        self.tokens.last().map(|t| t.1).unwrap_or(1)
    }

    /// Parses `key value` pairs until a closing bracket (when `nested`) or
    /// the end of input.
    fn list(&mut self, nested: bool, open_line: usize) -> Result<Vec<(String, Value, usize)>> {
        let mut items = Vec::new();
        loop {
            let Some((tok, line)) = self.tokens.get(self.pos).cloned() else {
                if nested {
                    return Err(Error::Parse {
                        line: open_line,
                        message: "unbalanced brackets: `[` is never closed".into(),
                    });
                }
                return Ok(items);
            };
            self.pos += 1;
            let key = match tok {
                Token::Close if nested => return Ok(items),
                Token::Close => {
                    return Err(Error::Parse {
                        line,
                        message: "unbalanced brackets: unexpected `]`".into(),
                    })
                }
                Token::Word(w) => w,
                Token::Open | Token::Str(_) => {
                    return Err(Error::Parse {
                        line,
                        message: "expected a key".into(),
                    })
                }
            };
            let Some((value_tok, value_line)) = self.tokens.get(self.pos).cloned() else {
                return Err(Error::Parse {
                    line: self.last_line(),
                    message: format!("key `{key}` has no value"),
                });
            };
            self.pos += 1;
            let value = match value_tok {
                Token::Open => Value::List(self.list(true, value_line)?),
                Token::Word(w) | Token::Str(w) => Value::Scalar(w),
                Token::Close => {
                    return Err(Error::Parse {
                        line: value_line,
                        message: format!("key `{key}` has no value"),
                    })
                }
            };
            items.push((key, value, line));
        }
    }
}

/// A GML graph block reduced to what the library needs.
#[derive(Debug, Clone, Default)]
pub struct GmlGraph {
    pub directed: bool,
    /// `(id token, scalar attributes)` in file order.
    pub nodes: Vec<(String, HashMap<String, String>)>,
    /// `(source, target, line)` in file order.
    pub edges: Vec<(String, String, usize)>,
    pub weighted: bool,
}

fn scalar_field<'a>(
    fields: &'a [(String, Value, usize)],
    key: &str,
) -> Option<&'a str> {
    fields.iter().find_map(|(k, v, _)| match v {
        Value::Scalar(s) if k == key => Some(s.as_str()),
        _ => None,
    })
}

impl GmlGraph {
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let top = parser.list(false, 1)?;
        let body = top
            .into_iter()
            .find_map(|(k, v, _)| match v {
                Value::List(items) if k == "graph" => Some(items),
                _ => None,
            })
            .ok_or(Error::Parse {
                line: 1,
                message: "no `graph [ ... ]` block".into(),
            })?;

        let mut graph = GmlGraph::default();
        for (key, value, line) in body {
            match (key.as_str(), value) {
                ("directed", Value::Scalar(s)) => graph.directed = s.trim() != "0",
                ("node", Value::List(fields)) => {
                    let id = scalar_field(&fields, "id").ok_or(Error::Parse {
                        line,
                        message: "node without `id`".into(),
                    })?;
                    let attrs = fields
                        .iter()
                        .filter_map(|(k, v, _)| match v {
                            Value::Scalar(s) if k != "id" => Some((k.clone(), s.clone())),
                            _ => None,
                        })
                        .collect();
                    graph.nodes.push((id.to_string(), attrs));
                }
                ("edge", Value::List(fields)) => {
                    let source = scalar_field(&fields, "source").ok_or(Error::Parse {
                        line,
                        message: "edge without `source`".into(),
                    })?;
                    let target = scalar_field(&fields, "target").ok_or(Error::Parse {
                        line,
                        message: "edge without `target`".into(),
                    })?;
                    if scalar_field(&fields, "weight").is_some()
                        || scalar_field(&fields, "value").is_some()
                    {
                        graph.weighted = true;
                    }
                    graph
                        .edges
                        .push((source.to_string(), target.to_string(), line));
                }
                _ => {}
            }
        }
        Ok(graph)
    }

    /// Scalar attribute `key` of every node that has it, as `(id, value)`.
    pub fn node_attribute(&self, key: &str) -> Vec<(String, String)> {
        self.nodes
            .iter()
            .filter_map(|(id, attrs)| attrs.get(key).map(|v| (id.clone(), v.clone())))
            .collect()
    }

    pub fn into_network(self) -> Result<Network> {
        if self.directed {
            warn!("GML graph is marked directed; edges are symmetrised");
        }
        if self.weighted {
            warn!("GML edge weights are ignored");
        }
        let mut ids = BTreeSet::new();
        for (id, _) in &self.nodes {
            if !ids.insert(id.clone()) {
                return Err(Error::DuplicateNode(id.clone()));
            }
        }
        for (s, t, _) in &self.edges {
            for end in [s, t] {
                if !ids.contains(end) {
                    return Err(Error::UnknownNode(end.clone()));
                }
            }
        }
        build_from_tokens(ids, &self.edges)
    }
}
