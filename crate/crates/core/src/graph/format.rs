//! Plain-text graph file: a header `n m seed`, then `m` lines `u v w`, with
//! weights printed to 17 significant digits so they read back bit-exact.

use super::{Edge, WeightedGraph};
use crate::error::{Error, Result};
use std::io::{BufRead, Write};

/// `%.17g`-style rendering of a weight.
pub fn format_weight(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mantissa.to_string());
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

pub fn write_graph<W: Write>(g: &WeightedGraph, mut out: W) -> Result<()> {
    writeln!(out, "{} {} {}", g.n(), g.m(), g.seed())?;
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, format_weight(e.w))?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a graph file. The result is unrooted; roots travel in the sidecar.
pub fn read_graph<R: BufRead>(input: R) -> Result<WeightedGraph> {
    let mut lines = input.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let header = header?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected `n m seed`, got `{header}`"),
        });
    }
    let parse = |s: &str, line: usize| -> Result<u64> {
        s.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("bad integer `{s}`"),
        })
    };
    let n = parse(fields[0], 1)? as usize;
    let m = parse(fields[1], 1)? as usize;
    let seed = parse(fields[2], 1)?;
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (u, v, w) = match (it.next(), it.next(), it.next(), it.next()) {
            (Some(u), Some(v), Some(w), None) => (u, v, w),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected `u v w`, got `{line}`"),
                })
            }
        };
        let w: f64 = w.parse().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("bad weight `{w}`"),
        })?;
        edges.push(Edge::new(parse(u, i + 1)? as usize, parse(v, i + 1)? as usize, w));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: m + 1,
            msg: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    Ok(WeightedGraph::new(n, edges)?.with_seed(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn g17_matches_c_printf() {
        assert_eq!(format_weight(0.1), "0.10000000000000001");
        assert_eq!(format_weight(0.5), "0.5");
        assert_eq!(format_weight(1.0), "1");
        assert_eq!(format_weight(0.0), "0");
        assert_eq!(format_weight(1.5e-7), "1.4999999999999999e-07");
        assert_eq!(format_weight(0.30000000000000004), "0.30000000000000004");
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(read_graph("2 1\n0 1 0.5\n".as_bytes()).is_err());
        assert!(read_graph("2 2 0\n0 1 0.5\n".as_bytes()).is_err());
        assert!(read_graph("2 1 0\n0 1 x\n".as_bytes()).is_err());
        assert!(read_graph("2 1 0\n0 0 0.5\n".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn weights_round_trip_bit_exact(ws in prop::collection::vec(0.0f64..=1.0, 1..30), seed: u64) {
            let edges: Vec<Edge> = ws.iter().enumerate().map(|(i, &w)| Edge::new(i, i + 1, w)).collect();
            let g = WeightedGraph::new(ws.len() + 1, edges).unwrap().with_seed(seed);
            let mut buf = Vec::new();
            write_graph(&g, &mut buf).unwrap();
            let h = read_graph(buf.as_slice()).unwrap();
            prop_assert_eq!(h.seed(), seed);
            for (a, b) in g.edges().iter().zip(h.edges()) {
                prop_assert_eq!(a.w.to_bits(), b.w.to_bits());
            }
            let mut again = Vec::new();
            write_graph(&h, &mut again).unwrap();
            prop_assert_eq!(buf, again);
        }
    }
}
