//! Line-oriented text formats.
//!
//! Multigraph: `n`, then `u v k` per adjacent pair.
//! Cover: `n`, the list sizes `s_1 .. s_n`, then cross edges `u i v j` with
//! `u < v`. Lines `u v k` may precede the cross edges to declare the base
//! multigraph; without them every pair carrying cross edges gets
//! multiplicity 1.
//! Lists: `n`, then line `v + 1` holds the colors of vertex `v` (possibly
//! none).
//!
//! In graph and cover files blank lines and text after `#` are ignored.

use std::fmt::Write;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Numbered lines that carry content, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let fields: Vec<&str> = l.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn ints<T: std::str::FromStr>(line: usize, fields: &[&str]) -> Result<Vec<T>> {
    fields
        .iter()
        .map(|f| f.parse::<T>().map_err(|_| parse_err(line, format!("not a nonnegative integer: {f:?}"))))
        .collect()
}

fn header(line: usize, fields: &[&str]) -> Result<usize> {
    match ints::<usize>(line, fields)?.as_slice() {
        [n] if *n > 0 => Ok(*n),
        [_] => Err(parse_err(line, "vertex count must be positive")),
        _ => Err(parse_err(line, "expected the vertex count alone")),
    }
}

fn with_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    })
}

pub fn parse_multigraph(text: &str) -> Result<Multigraph> {
    let mut lines = content_lines(text);
    let (l0, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n = header(l0, &first)?;
    let mut g = Multigraph::new(n);
    for (line, fields) in lines {
        let [u, v, k] = ints::<u32>(line, &fields)?[..] else {
            return Err(parse_err(line, "expected `u v k`"));
        };
        let (u, v) = (u as usize, v as usize);
        if k == 0 {
            return Err(parse_err(line, "multiplicity must be positive"));
        }
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        with_line(line, g.check_pair(u, v))?;
        if g.mult(u, v) != 0 {
            return Err(parse_err(line, format!("pair ({u}, {v}) listed twice")));
        }
        with_line(line, g.set_mult(u, v, k))?;
    }
    Ok(g)
}

pub fn write_multigraph(g: &Multigraph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v, k) in g.edges() {
        writeln!(out, "{u} {v} {k}").expect("write to string");
    }
    out
}

/// Parses a cover. `base` overrides any multiplicities given in the file.
pub fn parse_cover(text: &str, base: Option<&Multigraph>) -> Result<Cover> {
    let mut lines = content_lines(text);
    let (l0, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n = header(l0, &first)?;
    let (l1, second) = lines.next().ok_or_else(|| parse_err(l0 + 1, "missing list sizes"))?;
    let sizes = ints::<usize>(l1, &second)?;
    if sizes.len() != n {
        return Err(parse_err(l1, format!("expected {n} list sizes, found {}", sizes.len())));
    }
    let mut declared = Multigraph::new(n);
    let mut cross = Vec::new();
    for (line, fields) in lines {
        let nums = ints::<usize>(line, &fields)?;
        match nums[..] {
            [u, v, k] => {
                if !cross.is_empty() {
                    return Err(parse_err(line, "base pairs must precede cross edges"));
                }
                if u == v || k == 0 {
                    return Err(parse_err(line, "base pair needs distinct vertices and positive multiplicity"));
                }
                with_line(line, declared.check_pair(u, v))?;
                if declared.mult(u, v) != 0 {
                    return Err(parse_err(line, format!("pair ({u}, {v}) listed twice")));
                }
                with_line(line, declared.set_mult(u, v, k as u32))?;
            }
            [u, i, v, j] => {
                if u >= v {
                    return Err(parse_err(line, "cross edge needs u < v"));
                }
                cross.push((line, u, i, v, j));
            }
            _ => return Err(parse_err(line, "expected `u v k` or `u i v j`")),
        }
    }
    let graph = match base {
        Some(g) => {
            if g.n() != n {
                return Err(parse_err(l0, format!("cover has {n} vertices, graph has {}", g.n())));
            }
            g.clone()
        }
        None if declared.pair_count() > 0 => declared,
        None => {
            let mut g = Multigraph::new(n);
            for &(line, u, _, v, _) in &cross {
                with_line(line, g.check_pair(u, v))?;
                g.set_mult(u, v, 1).expect("checked pair");
            }
            g
        }
    };
    let mut cover = Cover::new(graph, sizes)?;
    for (line, u, i, v, j) in cross {
        with_line(line, cover.add_cross_edge(u, i, v, j))?;
    }
    Ok(cover)
}

/// Writes the base pairs followed by the cross edges.
pub fn write_cover(c: &Cover) -> String {
    let mut out = format!("{}\n", c.n());
    let sizes: Vec<String> = c.list_sizes().iter().map(|s| s.to_string()).collect();
    writeln!(out, "{}", sizes.join(" ")).expect("write to string");
    for (u, v, k) in c.base().edges() {
        writeln!(out, "{u} {v} {k}").expect("write to string");
    }
    for (u, i, v, j) in c.all_cross_edges() {
        writeln!(out, "{u} {i} {v} {j}").expect("write to string");
    }
    out
}

pub fn parse_lists(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut lines = text.lines().enumerate();
    let n = loop {
        match lines.next() {
            None => return Err(parse_err(1, "empty input")),
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((i, l)) => break header(i + 1, &l.split_whitespace().collect::<Vec<_>>())?,
        }
    };
    let mut lists = Vec::with_capacity(n);
    let mut last = 1;
    for (i, l) in lines {
        last = i + 1;
        if lists.len() == n {
            if !l.trim().is_empty() {
                return Err(parse_err(i + 1, format!("more than {n} lists")));
            }
            continue;
        }
        lists.push(ints::<u32>(i + 1, &l.split_whitespace().collect::<Vec<_>>())?);
    }
    if lists.len() != n {
        return Err(parse_err(last, format!("expected {n} lists, found {}", lists.len())));
    }
    Ok(lists)
}

pub fn write_lists(lists: &[Vec<u32>]) -> String {
    let mut out = format!("{}\n", lists.len());
    for l in lists {
        let cs: Vec<String> = l.iter().map(|c| c.to_string()).collect();
        writeln!(out, "{}", cs.join(" ")).expect("write to string");
    }
    out
}
