//! Plain-text formats.
//!
//! * `.hg`: first line `n m`, then `m` lines of space-separated vertex indices.
//! * coloring: `n` space-separated positive colors, optionally preceded by
//!   `k=<palette>` (on the same line or the line before).
//! * `.tree`: first line `n [root]`, then `n - 1` lines `u v`.
//!
//! Blank lines and lines starting with `#` are ignored when reading.

use std::fmt::Write as _;

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tree::Tree;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a non-negative integer, found `{tok}`"),
    })
}

fn parse_row<T: std::str::FromStr>(l: &str, line: usize) -> Result<Vec<T>> {
    l.split_whitespace().map(|t| parse_num(t, line)).collect()
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let head: Vec<usize> = parse_row(header, hl)?;
    let [n, m] = head[..] else {
        return Err(Error::Parse {
            line: hl,
            msg: "header must be `n m`".into(),
        });
    };
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        if edges.len() == m {
            return Err(Error::Parse {
                line: ln,
                msg: format!("more than the declared {m} edges"),
            });
        }
        edges.push(parse_row(l, ln)?);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hl,
            msg: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    Hypergraph::new(n, edges)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut s = format!("{} {}\n", h.n(), h.edge_count());
    for e in h.edges() {
        let row: Vec<String> = e.iter().map(ToString::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut palette: Option<Color> = None;
    let mut colors: Vec<Color> = Vec::new();
    let mut first_line = 1;
    for (ln, l) in content_lines(text) {
        for tok in l.split_whitespace() {
            if let Some(k) = tok.strip_prefix("k=") {
                if palette.is_some() || !colors.is_empty() {
                    return Err(Error::Parse {
                        line: ln,
                        msg: "`k=` must come before the colors, once".into(),
                    });
                }
                palette = Some(parse_num(k, ln)?);
            } else {
                if colors.is_empty() {
                    first_line = ln;
                } else if ln != first_line {
                    return Err(Error::Parse {
                        line: ln,
                        msg: "colors must sit on a single line".into(),
                    });
                }
                colors.push(parse_num(tok, ln)?);
            }
        }
    }
    if colors.is_empty() {
        return Err(Error::Parse {
            line: first_line,
            msg: "no colors found".into(),
        });
    }
    match palette {
        Some(k) => Coloring::new(colors, k),
        None => Coloring::from_colors(colors),
    }
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut s = format!("k={}", c.palette());
    for &x in c.colors() {
        let _ = write!(s, " {x}");
    }
    s.push('\n');
    s
}

pub fn parse_tree(text: &str) -> Result<Tree> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n [root]` header".into(),
    })?;
    let head: Vec<usize> = parse_row(header, hl)?;
    let (n, root) = match head[..] {
        [n] => (n, None),
        [n, r] => (n, Some(r)),
        _ => {
            return Err(Error::Parse {
                line: hl,
                msg: "header must be `n [root]`".into(),
            })
        }
    };
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let row: Vec<usize> = parse_row(l, ln)?;
        let [u, v] = row[..] else {
            return Err(Error::Parse {
                line: ln,
                msg: "edge lines must be `u v`".into(),
            });
        };
        edges.push((u, v));
    }
    Tree::new(n, edges, root)
}

pub fn write_tree(t: &Tree) -> String {
    let mut s = match t.root() {
        Some(r) => format!("{} {r}\n", t.n()),
        None => format!("{}\n", t.n()),
    };
    for &(u, v) in t.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}
