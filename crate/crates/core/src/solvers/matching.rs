//! Exhaustive matching searches: maximum matchings and minimum maximal
//! matchings (the saturation number).

use super::mask::{bit, bits, count, first, Adjacency, Mask};
use super::{NodeCounter, SolverError};

pub(crate) type Edge = (usize, usize);

/// Vertices of `free` that still have a neighbor in `free`.
fn active(adj: &Adjacency, free: Mask) -> Mask {
    bits(free)
        .filter(|&v| adj.open[v] & free != 0)
        .fold(0, |m, v| m | bit(v))
}

pub(crate) fn maximum_matching(adj: &Adjacency, counter: &mut NodeCounter) -> Result<Vec<Edge>, SolverError> {
    let mut best = Vec::new();
    let mut current = Vec::new();
    let all = super::mask::low(adj.n);
    let ceiling = count(active(adj, all)) / 2;
    grow(adj, all, &mut current, &mut best, ceiling, counter)?;
    Ok(best)
}

fn grow(
    adj: &Adjacency,
    free: Mask,
    current: &mut Vec<Edge>,
    best: &mut Vec<Edge>,
    ceiling: usize,
    counter: &mut NodeCounter,
) -> Result<bool, SolverError> {
    counter.tick(best.len() + 1)?;
    let live = active(adj, free);
    if live == 0 {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return Ok(best.len() == ceiling);
    }
    if current.len() + count(live) / 2 <= best.len() {
        return Ok(false);
    }
    let v = first(live);
    for u in bits(adj.open[v] & free) {
        current.push((v, u));
        let done = grow(adj, free & !bit(v) & !bit(u), current, best, ceiling, counter)?;
        current.pop();
        if done {
            return Ok(true);
        }
    }
    grow(adj, free & !bit(v), current, best, ceiling, counter)
}

/// Greedy maximal matching over edges in lexicographic order.
fn greedy_maximal(adj: &Adjacency) -> Vec<Edge> {
    let mut free = super::mask::low(adj.n);
    let mut out = Vec::new();
    for u in 0..adj.n {
        for v in bits(adj.open[u] & free) {
            if v > u && free & bit(u) != 0 {
                out.push((u, v));
                free &= !bit(u) & !bit(v);
            }
        }
    }
    out
}

/// Minimum maximal matching, by increasing target size.
pub(crate) fn minimum_maximal_matching(adj: &Adjacency, counter: &mut NodeCounter) -> Result<Vec<Edge>, SolverError> {
    let greedy = greedy_maximal(adj);
    let all = super::mask::low(adj.n);
    let floor = lower_bound(adj, all, 0);
    for target in floor..greedy.len() {
        let mut current = Vec::new();
        if saturate(adj, all, 0, target, &mut current, counter)? {
            return Ok(current);
        }
    }
    Ok(greedy)
}

/// Search state: `free` vertices may still be matched, `excluded` ones stay
/// unmatched, everything else is matched. Every edge between unmatched
/// vertices must end up with a matched endpoint.
///
/// Two lower bounds on the edges still needed: an induced matching of the
/// unmatched subgraph (each of its edges needs its own matching edge), and
/// half a vertex cover of it, since the newly matched vertices cover it.
fn lower_bound(adj: &Adjacency, free: Mask, excluded: Mask) -> usize {
    let open = free | excluded;
    let mut blocked: Mask = 0;
    let mut induced = 0;
    for u in bits(open) {
        for v in bits(adj.open[u] & open & !super::mask::low(u + 1)) {
            if (bit(u) | bit(v)) & blocked == 0 {
                blocked |= adj.closed(u) | adj.closed(v);
                induced += 1;
            }
        }
    }
    // Free neighbors of excluded vertices are in every cover.
    let forced = bits(excluded).fold(0, |m, x| m | (adj.open[x] & free));
    let mut rest = free & !forced;
    let mut matched = 0;
    while rest != 0 {
        let u = first(rest);
        rest &= !bit(u);
        let nb = adj.open[u] & rest;
        if nb != 0 {
            rest &= !bit(first(nb));
            matched += 1;
        }
    }
    induced.max((count(forced) + matched).div_ceil(2))
}

/// Branching choices for the edge `(a, b)` between unmatched vertices: a
/// matching edge at `a` (if free), then one at `b` (if free).
fn choices(adj: &Adjacency, free: Mask, a: usize, b: usize) -> (Mask, Mask) {
    let at = |x: usize| if free & bit(x) != 0 { adj.open[x] & free } else { 0 };
    let from_a = at(a);
    let mut from_b = at(b);
    if from_a & bit(b) != 0 {
        from_b &= !bit(a);
    }
    (from_a, from_b)
}

fn saturate(
    adj: &Adjacency,
    free: Mask,
    excluded: Mask,
    target: usize,
    current: &mut Vec<Edge>,
    counter: &mut NodeCounter,
) -> Result<bool, SolverError> {
    counter.tick(target)?;
    let open = free | excluded;
    let mut pick: Option<(usize, usize, usize)> = None;
    for u in bits(open) {
        for v in bits(adj.open[u] & open & !super::mask::low(u + 1)) {
            let (ca, cb) = choices(adj, free, u, v);
            let k = count(ca) + count(cb);
            if k == 0 {
                return Ok(false);
            }
            if pick.is_none_or(|(_, _, best)| k < best) {
                pick = Some((u, v, k));
            }
        }
    }
    let Some((a, b, _)) = pick else {
        return Ok(true);
    };
    if current.len() + lower_bound(adj, free, excluded) > target {
        return Ok(false);
    }
    let (from_a, from_b) = choices(adj, free, a, b);
    for (x, options, excl) in [(a, from_a, 0), (b, from_b, if from_a != 0 { bit(a) } else { 0 })] {
        for w in bits(options) {
            current.push((x.min(w), x.max(w)));
            let f = free & !bit(x) & !bit(w) & !excl;
            if saturate(adj, f, excluded | excl, target, current, counter)? {
                return Ok(true);
            }
            current.pop();
        }
    }
    Ok(false)
}
