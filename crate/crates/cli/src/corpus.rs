//! Seeded graph corpora.
//!
//! A corpus spec is one or more generators joined by `;`, each written
//! `name:key=value,...`:
//!
//! | generator   | keys (defaults)                         |
//! |-------------|-----------------------------------------|
//! | `graphs`    | `min` (1), `max`: all graphs            |
//! | `connected` | `min` (1), `max`: all connected graphs  |
//! | `trees`     | `min` (1), `max`: all trees             |
//! | `gnp`       | `count`, `nmin` (3), `nmax`, `p` (0.5)  |
//! | `tree`      | `count`, `nmin` (3), `nmax`             |
//! | `bipartite` | `count`, `nmin` (2), `nmax`, `p` (0.5)  |
//! | `family`    | `list`: family specs joined by `+`      |
//! | `sweep`     | `family`, `min`, `max`                  |
//! | `file`      | `path`: a file written by `generate`    |
//!
//! The enumerating generators list non-isomorphic graphs by order. Random
//! generators draw the order uniformly from `nmin..=nmax` and keep only
//! connected graphs; generator `i` of a spec uses the seed `seed + i`.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use isolation_core::enumerate::{all_graphs, connected_graphs, trees};
use isolation_core::io::{parse_graph6, to_graph6};
use isolation_core::{Graph, GraphFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rejection-sampling attempts per random connected graph.
pub const MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    AllGraphs {
        min: usize,
        max: usize,
    },
    Connected {
        min: usize,
        max: usize,
    },
    Trees {
        min: usize,
        max: usize,
    },
    Gnp {
        count: usize,
        nmin: usize,
        nmax: usize,
        p: f64,
    },
    RandomTree {
        count: usize,
        nmin: usize,
        nmax: usize,
    },
    Bipartite {
        count: usize,
        nmin: usize,
        nmax: usize,
        p: f64,
    },
    Families(Vec<GraphFamily>),
    File(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSpec {
    pub parts: Vec<Generator>,
    text: String,
}

#[derive(Clone, Debug)]
pub struct Entry {
    /// Generator tag and position, or the family spec for family members.
    pub label: String,
    pub graph: Graph,
}

struct Params<'a> {
    gen: &'a str,
    pairs: Vec<(&'a str, String)>,
}

impl<'a> Params<'a> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }

    fn num<T: FromStr>(&self, key: &str, default: Option<T>) -> Result<T> {
        match self.raw(key) {
            Some(v) => v
                .parse()
                .map_err(|_| anyhow!("{}: bad value `{v}` for `{key}`", self.gen)),
            None => default.ok_or_else(|| anyhow!("{}: missing `{key}`", self.gen)),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for (k, _) in &self.pairs {
            if !allowed.contains(k) {
                bail!("{}: unknown key `{k}`", self.gen);
            }
        }
        Ok(())
    }
}

fn parse_generator(text: &str) -> Result<Generator> {
    let (gen, rest) = text.split_once(':').unwrap_or((text, ""));
    let gen = gen.trim();
    // A comma-separated token without `=` continues the previous value, so
    // family parameters like `complete_bipartite:2,3` survive.
    let mut pairs: Vec<(&str, String)> = Vec::new();
    for tok in rest.split(',').filter(|s| !s.trim().is_empty()) {
        match (tok.split_once('='), pairs.last_mut()) {
            (Some((k, v)), _) => pairs.push((k.trim(), v.trim().to_string())),
            (None, Some((_, v))) => {
                v.push(',');
                v.push_str(tok.trim());
            }
            (None, None) => bail!("{gen}: expected key=value, got `{tok}`"),
        }
    }
    let p = Params { gen, pairs };
    let range = |p: &Params| -> Result<(usize, usize)> {
        p.check_keys(&["min", "max"])?;
        Ok((p.num("min", Some(1))?, p.num("max", None)?))
    };
    let random = |p: &Params, nmin: usize, with_p: bool| -> Result<(usize, usize, usize, f64)> {
        let mut keys = vec!["count", "nmin", "nmax"];
        if with_p {
            keys.push("p");
        }
        p.check_keys(&keys)?;
        let count = p.num("count", None)?;
        let nmin = p.num("nmin", Some(nmin))?;
        let nmax = p.num("nmax", None)?;
        let prob: f64 = p.num("p", Some(0.5))?;
        if nmin > nmax {
            bail!("{}: nmin {nmin} exceeds nmax {nmax}", p.gen);
        }
        if !(0.0..=1.0).contains(&prob) || prob == 0.0 {
            bail!("{}: p must lie in (0, 1]", p.gen);
        }
        Ok((count, nmin, nmax, prob))
    };
    let g = match gen {
        "graphs" => {
            let (min, max) = range(&p)?;
            Generator::AllGraphs { min, max }
        }
        "connected" => {
            let (min, max) = range(&p)?;
            Generator::Connected { min, max }
        }
        "trees" => {
            let (min, max) = range(&p)?;
            Generator::Trees { min, max }
        }
        "gnp" => {
            let (count, nmin, nmax, p) = random(&p, 3, true)?;
            Generator::Gnp { count, nmin, nmax, p }
        }
        "tree" => {
            let (count, nmin, nmax, _) = random(&p, 3, false)?;
            Generator::RandomTree { count, nmin, nmax }
        }
        "bipartite" => {
            let (count, nmin, nmax, p) = random(&p, 2, true)?;
            if nmin < 2 {
                bail!("bipartite: nmin must be at least 2");
            }
            Generator::Bipartite { count, nmin, nmax, p }
        }
        "family" => {
            p.check_keys(&["list"])?;
            let list = p.raw("list").ok_or_else(|| anyhow!("family: missing `list`"))?;
            Generator::Families(
                list.split('+')
                    .map(|f| f.parse::<GraphFamily>().map_err(Into::into))
                    .collect::<Result<_>>()?,
            )
        }
        "sweep" => {
            p.check_keys(&["family", "min", "max"])?;
            let name = p.raw("family").ok_or_else(|| anyhow!("sweep: missing `family`"))?;
            let (min, max): (usize, usize) = (p.num("min", None)?, p.num("max", None)?);
            Generator::Families(
                (min..=max)
                    .map(|n| format!("{name}:{n}").parse::<GraphFamily>().map_err(Into::into))
                    .collect::<Result<_>>()?,
            )
        }
        "file" => {
            p.check_keys(&["path"])?;
            Generator::File(p.raw("path").ok_or_else(|| anyhow!("file: missing `path`"))?.into())
        }
        other => bail!("unknown corpus generator `{other}`"),
    };
    Ok(g)
}

impl FromStr for CorpusSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(parse_generator)
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            bail!("empty corpus spec");
        }
        Ok(Self {
            parts,
            text: s.trim().to_string(),
        })
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize, mut draw: impl FnMut(&mut ChaCha8Rng) -> Graph) -> Result<Graph> {
    for _ in 0..MAX_ATTEMPTS {
        let g = draw(rng);
        if g.is_connected() {
            return Ok(g);
        }
    }
    bail!("no connected graph on {n} vertices after {MAX_ATTEMPTS} attempts")
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Result<Graph> {
    random_connected(rng, n, |rng| Graph::from_fn(n, |_, _| rng.gen_bool(p)))
}

/// Random bipartite graph on `n` vertices with sides `0..m` and `m..n`,
/// `m` uniform in `1..n`.
fn bipartite(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Result<Graph> {
    let m = rng.gen_range(1..n);
    random_connected(rng, n, |rng| {
        Graph::from_fn(n, |u, v| u < m && v >= m && rng.gen_bool(p))
    })
}

/// Uniform labeled tree via a Prüfer sequence.
fn prufer_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    if n <= 2 {
        return Graph::from_edges(n, (1..n).map(|i| (0, i))).expect("valid");
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).expect("valid tree")
}

fn enumerated(tag: &str, min: usize, max: usize, list: fn(usize) -> Vec<Graph>) -> Vec<Entry> {
    let mut out = Vec::new();
    for n in min..=max {
        for (i, graph) in list(n).into_iter().enumerate() {
            out.push(Entry {
                label: format!("{tag}{n}#{i}"),
                graph,
            });
        }
    }
    out
}

fn sampled(
    tag: &str,
    rng: &mut ChaCha8Rng,
    count: usize,
    nmin: usize,
    nmax: usize,
    mut draw: impl FnMut(&mut ChaCha8Rng, usize) -> Result<Graph>,
) -> Result<Vec<Entry>> {
    (0..count)
        .map(|i| {
            let n = rng.gen_range(nmin..=nmax);
            Ok(Entry {
                label: format!("{tag}#{i}"),
                graph: draw(rng, n)?,
            })
        })
        .collect()
}

impl CorpusSpec {
    pub fn generate(&self, seed: u64) -> Result<Vec<Entry>> {
        let mut out = Vec::new();
        for (i, part) in self.parts.iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let entries = match part {
                Generator::AllGraphs { min, max } => enumerated("graph", *min, *max, all_graphs),
                Generator::Connected { min, max } => enumerated("connected", *min, *max, connected_graphs),
                Generator::Trees { min, max } => enumerated("tree", *min, *max, trees),
                Generator::Gnp { count, nmin, nmax, p } => {
                    sampled("gnp", &mut rng, *count, *nmin, *nmax, |r, n| gnp(r, n, *p))?
                }
                Generator::RandomTree { count, nmin, nmax } => {
                    sampled("rtree", &mut rng, *count, *nmin, *nmax, |r, n| Ok(prufer_tree(r, n)))?
                }
                Generator::Bipartite { count, nmin, nmax, p } => {
                    sampled("bipartite", &mut rng, *count, *nmin, *nmax, |r, n| bipartite(r, n, *p))?
                }
                Generator::Families(list) => list
                    .iter()
                    .map(|f| {
                        Ok(Entry {
                            label: f.to_string(),
                            graph: f.build()?,
                        })
                    })
                    .collect::<Result<_>>()?,
                Generator::File(path) => read_corpus(path)?,
            };
            out.extend(entries);
        }
        Ok(out)
    }
}

/// `#` header lines, then `label<TAB>graph6` per graph.
pub fn write_corpus(spec: &CorpusSpec, seed: u64, entries: &[Entry]) -> String {
    let mut out = format!("# corpus: {spec}\n# seed: {seed}\n# graphs: {}\n", entries.len());
    for e in entries {
        out.push_str(&format!("{}\t{}\n", e.label, to_graph6(&e.graph)));
    }
    out
}

pub fn read_corpus(path: &str) -> Result<Vec<Entry>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading corpus {path}"))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, line)| {
            let (label, code) = line
                .split_once('\t')
                .ok_or_else(|| anyhow!("{path}:{}: expected `label<TAB>graph6`", i + 1))?;
            Ok(Entry {
                label: label.to_string(),
                graph: parse_graph6(code.trim()).with_context(|| format!("{path}:{}", i + 1))?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use isolation_core::iso::are_isomorphic;

    fn spec(s: &str) -> CorpusSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "gnp:count=3",
            "what:max=3",
            "gnp:count=2,nmax=4,p=2",
            "trees:max=4,foo=1",
            "bipartite:count=1,nmin=1,nmax=3",
        ] {
            assert!(bad.parse::<CorpusSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn connected_up_to_four() {
        let entries = spec("connected:max=4").generate(0).unwrap();
        assert_eq!(entries.len(), 10);
        // Brute force: every labeled graph on up to 4 vertices, connected,
        // deduplicated by isomorphism.
        let mut reps: Vec<Graph> = Vec::new();
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << pairs.len() {
                let g = Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap();
                if g.is_connected() && !reps.iter().any(|r| are_isomorphic(r, &g)) {
                    reps.push(g);
                }
            }
        }
        assert_eq!(reps.len(), entries.len());
    }

    #[test]
    fn random_generators_are_deterministic_and_valid() {
        let s = spec("gnp:count=20,nmin=3,nmax=7;bipartite:count=10,nmax=10;tree:count=10,nmax=9");
        let a = s.generate(7).unwrap();
        let b = s.generate(7).unwrap();
        assert_eq!(write_corpus(&s, 7, &a), write_corpus(&s, 7, &b));
        assert_ne!(write_corpus(&s, 7, &a), write_corpus(&s, 8, &s.generate(8).unwrap()));
        assert_eq!(a.len(), 40);
        for e in &a {
            assert!(e.graph.is_connected(), "{}", e.label);
            if e.label.starts_with("gnp") {
                assert!((3..=7).contains(&e.graph.order()));
            }
            if e.label.starts_with("bipartite") {
                assert!(e.graph.is_bipartite() && e.graph.order() <= 10);
            }
            if e.label.starts_with("rtree") {
                assert_eq!(e.graph.size() + 1, e.graph.order());
            }
        }
    }

    #[test]
    fn families_and_files() {
        let s = spec("family:list=cycle:5+hypercube:3;sweep:family=complete,min=3,max=5");
        let entries = s.generate(0).unwrap();
        let labels: Vec<&str> = entries.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(
            labels,
            ["cycle:5", "hypercube:3", "complete:3", "complete:4", "complete:5"]
        );
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.txt");
        std::fs::write(&path, write_corpus(&s, 0, &entries)).unwrap();
        let back = spec(&format!("file:path={}", path.display())).generate(0).unwrap();
        assert_eq!(back.len(), entries.len());
        for (x, y) in back.iter().zip(&entries) {
            assert_eq!(x.label, y.label);
            assert_eq!(x.graph.edges().collect::<Vec<_>>(), y.graph.edges().collect::<Vec<_>>());
        }
    }
}
