//! Maximum clique by branch and bound with a greedy coloring bound, plus
//! maximal clique enumeration (Bron–Kerbosch with pivoting).

use std::ops::ControlFlow;

use super::mask::{bit, bits, count, first, Mask};
use super::{NodeCounter, SolverError};

pub(crate) fn maximum_clique(adj: &[Mask], candidates: Mask, counter: &mut NodeCounter) -> Result<Mask, SolverError> {
    let mut best = 0;
    expand(adj, 0, candidates, &mut best, counter)?;
    Ok(best)
}

fn expand(
    adj: &[Mask],
    current: Mask,
    mut cand: Mask,
    best: &mut Mask,
    counter: &mut NodeCounter,
) -> Result<(), SolverError> {
    counter.tick(count(*best) + 1)?;
    if cand == 0 {
        if count(current) > count(*best) {
            *best = current;
        }
        return Ok(());
    }
    // Greedy sequential coloring of the candidates; color numbers bound the
    // clique size reachable from each prefix.
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(count(cand));
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = first(q);
            q &= !adj[v] & !bit(v);
            uncolored &= !bit(v);
            order.push((v, color));
        }
    }
    let size = count(current);
    for &(v, c) in order.iter().rev() {
        if size + c <= count(*best) {
            return Ok(());
        }
        expand(adj, current | bit(v), cand & adj[v], best, counter)?;
        cand &= !bit(v);
    }
    Ok(())
}

/// Calls `visit` on every maximal clique inside `candidates`, except those
/// inside a subtree rejected by `skip`. `skip` sees the union of the partial
/// clique and its candidates, which contains every clique of the subtree.
pub(crate) fn maximal_cliques(
    adj: &[Mask],
    candidates: Mask,
    counter: &mut NodeCounter,
    skip: &mut dyn FnMut(Mask) -> bool,
    visit: &mut dyn FnMut(Mask) -> ControlFlow<()>,
) -> Result<(), SolverError> {
    bron_kerbosch(adj, 0, candidates, 0, counter, skip, visit).map(|_| ())
}

fn bron_kerbosch(
    adj: &[Mask],
    r: Mask,
    mut p: Mask,
    mut x: Mask,
    counter: &mut NodeCounter,
    skip: &mut dyn FnMut(Mask) -> bool,
    visit: &mut dyn FnMut(Mask) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, SolverError> {
    counter.tick(count(r))?;
    if p == 0 {
        if x == 0 {
            return Ok(visit(r));
        }
        return Ok(ControlFlow::Continue(()));
    }
    if skip(r | p) {
        return Ok(ControlFlow::Continue(()));
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (count(p & adj[u]), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    for v in bits(p & !adj[pivot]) {
        let flow = bron_kerbosch(adj, r | bit(v), p & adj[v], x & adj[v], counter, skip, visit)?;
        if flow.is_break() {
            return Ok(flow);
        }
        p &= !bit(v);
        x |= bit(v);
    }
    Ok(ControlFlow::Continue(()))
}
