//! Line-oriented instance format, 1-indexed:
//!
//! ```text
//! p track <n> <m>
//! s <v>
//! t <v>
//! e <u> <v>          (m lines)
//! w <v> <rational>   (optional, default 1)
//! class planar       (optional, default general)
//! # comment
//! ```

use std::collections::BTreeSet;
use std::fmt::Write;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphClass, Instance, Weight};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses integers, fractions `a/b` and decimals `1.25`.
pub fn parse_weight(s: &str) -> Option<Weight> {
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (i64, i64) = (a.parse().ok()?, b.parse().ok()?);
        return (b != 0).then(|| Weight::new(a, b));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let den = 10i64.pow(frac.len() as u32);
        let neg = int.starts_with('-');
        let i: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().ok()? };
        let f: i64 = frac.parse().ok()?;
        let mag = i.abs().checked_mul(den)?.checked_add(f)?;
        return Some(Weight::new(if neg { -mag } else { mag }, den));
    }
    s.parse().ok().map(Weight::from_integer)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut s = None;
    let mut t = None;
    let mut edges = BTreeSet::new();
    let mut weights: Vec<Weight> = Vec::new();
    let mut class = GraphClass::General;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        last = no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let n = match (fields[0], header) {
            ("p", None) => {
                let [_, "track", n, m] = fields[..] else {
                    return Err(err(no, "expected \"p track <n> <m>\""));
                };
                let n: usize = n.parse().map_err(|_| err(no, "bad vertex count"))?;
                let m: usize = m.parse().map_err(|_| err(no, "bad edge count"))?;
                header = Some((n, m));
                weights = vec![Weight::one(); n];
                continue;
            }
            ("p", Some(_)) => return Err(err(no, "duplicate header")),
            (_, None) => return Err(err(no, "header \"p track <n> <m>\" must come first")),
            (_, Some((n, _))) => n,
        };
        let vertex = |f: &str| -> Result<usize> {
            let v: usize = f.parse().map_err(|_| err(no, format!("bad vertex id {f:?}")))?;
            if v == 0 || v > n {
                return Err(err(no, format!("vertex {v} out of range 1..={n}")));
            }
            Ok(v - 1)
        };
        match fields[..] {
            ["s", v] => {
                if s.replace(vertex(v)?).is_some() {
                    return Err(err(no, "duplicate s line"));
                }
            }
            ["t", v] => {
                if t.replace(vertex(v)?).is_some() {
                    return Err(err(no, "duplicate t line"));
                }
            }
            ["e", a, b] => {
                let (u, v) = (vertex(a)?, vertex(b)?);
                if u == v {
                    return Err(err(no, format!("self-loop on vertex {}", u + 1)));
                }
                if !edges.insert((u.min(v), u.max(v))) {
                    return Err(err(no, format!("duplicate edge {} {}", u + 1, v + 1)));
                }
            }
            ["w", v, w] => {
                let v = vertex(v)?;
                let w = parse_weight(w).ok_or_else(|| err(no, format!("bad weight {w:?}")))?;
                if w < Weight::from_integer(0) {
                    return Err(err(no, "negative weight"));
                }
                weights[v] = w;
            }
            ["class", "planar"] => class = GraphClass::Planar,
            ["class", "general"] => class = GraphClass::General,
            _ => return Err(err(no, format!("unrecognized line {line:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| err(last, "missing header"))?;
    if edges.len() != m {
        return Err(err(last, format!("header declares {m} edges, found {}", edges.len())));
    }
    let s = s.ok_or_else(|| err(last, "missing s line"))?;
    let t = t.ok_or_else(|| err(last, "missing t line"))?;
    if s == t {
        return Err(err(last, "s and t must differ"));
    }
    let graph = Graph::new(n, edges).map_err(|e| err(last, e.to_string()))?;
    Ok(Instance::with_weights(graph, s, t, weights)
        .map_err(|e| err(last, e.to_string()))?
        .with_class(class))
}

pub fn render_weight(w: &Weight) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

pub fn render_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p track {} {}", instance.n(), instance.m());
    if instance.class == GraphClass::Planar {
        out.push_str("class planar\n");
    }
    let _ = writeln!(out, "s {}", instance.s + 1);
    let _ = writeln!(out, "t {}", instance.t + 1);
    for &(u, v) in instance.graph.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for (v, w) in instance.weights.iter().enumerate() {
        if !w.is_one() {
            let _ = writeln!(out, "w {} {}", v + 1, render_weight(w));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: &str = "p track 4 4\ns 1\nt 3\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";

    #[test]
    fn four_cycle() {
        let i = parse_instance(C4).unwrap();
        assert_eq!((i.n(), i.m(), i.s, i.t), (4, 4, 0, 2));
        assert!(i.has_unit_weights());
        let w = parse_instance(&format!("{C4}w 2 5\n")).unwrap();
        assert_eq!(w.weights[1], Weight::from_integer(5));
        assert_eq!(w.weights[0], Weight::one());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_instance("p track 2 1\ns 1\nt 2\ne 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, ref msg } if msg.contains("self-loop")));
        let e = parse_instance("p track 2 2\ns 1\nt 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, .. }));
        let e = parse_instance("p track 2 1\ns 1\nt 3\ne 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(parse_instance("p track 2 1\ns 1\ns 2\ne 1 2\n").is_err());
        assert!(parse_instance("p track 2 1\ns 1\nt 1\ne 1 2\n").is_err());
        assert!(parse_instance("p track 2 1\ns 1\ne 1 2\n").is_err());
        assert!(parse_instance("s 1\n").is_err());
        assert!(parse_instance("p track 2 1\ns 1\nt 2\ne 1 2\nw 1 -1\n").is_err());
        assert!(parse_instance("p track 2 1\ns 1\nt 2\nx\n").is_err());
    }

    #[test]
    fn weights_and_comments() {
        assert_eq!(parse_weight("3/2"), Some(Weight::new(3, 2)));
        assert_eq!(parse_weight("1.25"), Some(Weight::new(5, 4)));
        assert_eq!(parse_weight("7"), Some(Weight::from_integer(7)));
        assert_eq!(parse_weight("x"), None);
        assert_eq!(parse_weight("1/0"), None);
        let i = parse_instance("# hello\np track 2 1 # trailing\nclass planar\ns 2\nt 1\ne 2 1\nw 1 1/3\n").unwrap();
        assert_eq!(i.class, GraphClass::Planar);
        assert_eq!(i.weights[0], Weight::new(1, 3));
    }

    #[test]
    fn round_trip() {
        let text = "p track 5 6\nclass planar\ns 1\nt 5\ne 1 2\ne 1 3\ne 1 4\ne 2 5\ne 3 5\ne 4 5\nw 3 7/2\n";
        let i = parse_instance(text).unwrap();
        assert_eq!(render_instance(&i), text);
        assert_eq!(parse_instance(&render_instance(&i)).unwrap(), i);
    }
}
