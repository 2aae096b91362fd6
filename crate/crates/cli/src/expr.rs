//! Graph expressions accepted by `--graph`, `--g` and `--h`.
//!
//! ```text
//! expr := family                      cycle:5, cycle(5), complete_bipartite(2,3)
//!       | "family:" family
//!       | "g6:" graph6
//!       | "cart(" expr "," expr ")"
//!       | "lex(" expr "," expr ")"
//!       | "sierpinski(" expr "," t ")"
//!       | path                        edge-list or graph6 file
//! ```

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use isolation_core::io::{parse_graph, parse_graph6};
use isolation_core::products::{cartesian_product, lexicographic_product};
use isolation_core::sierpinski::sierpinski_graph;
use isolation_core::{Graph, GraphFamily};

pub fn parse_expr(text: &str) -> Result<Graph> {
    let s = text.trim();
    if let Some(code) = s.strip_prefix("g6:") {
        return Ok(parse_graph6(code)?);
    }
    if let Some(rest) = s.strip_prefix("family:") {
        return Ok(rest.parse::<GraphFamily>()?.build()?);
    }
    if let Some((name, args)) = call(s) {
        match name {
            "cart" | "lex" => {
                let [a, b] = two_args(s, &args)?;
                let (g, h) = (parse_expr(a)?, parse_expr(b)?);
                let p = if name == "cart" {
                    cartesian_product(&g, &h)?
                } else {
                    lexicographic_product(&g, &h)?
                };
                return Ok(p.into_graph());
            }
            "sierpinski" => {
                let [a, t] = two_args(s, &args)?;
                let t: usize = t
                    .trim()
                    .parse()
                    .with_context(|| format!("bad dimension `{t}` in `{s}`"))?;
                return Ok(sierpinski_graph(&parse_expr(a)?, t)?.graph().clone());
            }
            _ => {}
        }
    }
    if let Ok(f) = s.parse::<GraphFamily>() {
        return Ok(f.build()?);
    }
    let path = Path::new(s);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {s}"))?;
        return parse_graph(&text).with_context(|| format!("parsing {s}"));
    }
    Err(anyhow!("cannot interpret `{s}` as a family, expression or file"))
}

/// `name(args)` split at top-level commas.
fn call(s: &str) -> Option<(&str, Vec<&str>)> {
    let open = s.find('(')?;
    let inner = s.strip_suffix(')')?.get(open + 1..)?;
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
    }
    args.push(&inner[start..]);
    Some((s[..open].trim(), args))
}

fn two_args<'a>(s: &str, args: &[&'a str]) -> Result<[&'a str; 2]> {
    match args {
        [a, b] => Ok([a, b]),
        _ => bail!("`{s}` takes two arguments"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_and_calls() {
        assert_eq!(parse_expr("cycle:5").unwrap().size(), 5);
        assert_eq!(parse_expr("family:complete(4)").unwrap().size(), 6);
        assert_eq!(parse_expr("complete_bipartite(2,3)").unwrap().size(), 6);
        let g = parse_expr("cart(complete(5), cycle(5))").unwrap();
        assert_eq!((g.order(), g.size()), (25, 75));
        let g = parse_expr("lex(path:4,cycle:5)").unwrap();
        assert_eq!(g.order(), 20);
        let g = parse_expr("sierpinski(complete:3,2)").unwrap();
        assert_eq!((g.order(), g.size()), (9, 12));
        let g = parse_expr("cart(cart(k:2,k:2),k:2)").unwrap();
        assert_eq!(g.size(), 12);
        assert_eq!(parse_expr("g6:C~").unwrap().size(), 6);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("cycle:2").is_err());
        assert!(parse_expr("cart(k:2)").is_err());
        assert!(parse_expr("no/such/file").is_err());
    }
}
