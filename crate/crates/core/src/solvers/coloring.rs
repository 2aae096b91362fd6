//! Backtracking k-coloring and the largest induced k-colorable subgraph.

use super::mask::{bit, bits, count, Mask};
use super::{NodeCounter, SolverError};

/// Proper coloring of the subgraph induced by `subset` with colors `0..k`,
/// as `(vertex, color)` pairs in increasing vertex order.
///
/// Vertices are colored by decreasing degree inside `subset` (ties to the
/// lower index); colors are tried in index order and a vertex never opens
/// more than one new color.
pub(crate) fn color_subset(
    open: &[Mask],
    subset: Mask,
    k: usize,
    counter: &mut NodeCounter,
) -> Result<Option<Vec<(usize, usize)>>, SolverError> {
    let mut order: Vec<usize> = bits(subset).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(count(open[v] & subset)), v));
    let mut colors = vec![usize::MAX; open.len()];
    if !assign(open, &order, 0, k, 0, &mut colors, counter)? {
        return Ok(None);
    }
    Ok(Some(bits(subset).map(|v| (v, colors[v])).collect()))
}

fn assign(
    open: &[Mask],
    order: &[usize],
    pos: usize,
    k: usize,
    used: usize,
    colors: &mut [usize],
    counter: &mut NodeCounter,
) -> Result<bool, SolverError> {
    counter.tick(order.len())?;
    let Some(&v) = order.get(pos) else {
        return Ok(true);
    };
    let limit = k.min(used + 1);
    for c in 0..limit {
        if bits(open[v]).any(|w| colors[w] == c) {
            continue;
        }
        colors[v] = c;
        if assign(open, order, pos + 1, k, used.max(c + 1), colors, counter)? {
            return Ok(true);
        }
    }
    colors[v] = usize::MAX;
    Ok(false)
}

/// Largest vertex set inducing a k-colorable subgraph, lexicographically
/// smallest among the largest, with its coloring.
pub(crate) fn max_k_colorable(
    open: &[Mask],
    n: usize,
    k: usize,
    counter: &mut NodeCounter,
) -> Result<(Mask, Vec<(usize, usize)>), SolverError> {
    for size in (0..=n).rev() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let subset = combo.iter().fold(0, |m, &v| m | bit(v));
            if let Some(coloring) = color_subset(open, subset, k, counter)? {
                return Ok((subset, coloring));
            }
            counter.tick(size)?;
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Ok((0, Vec::new()))
}

/// Advances to the next `combo.len()`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_lex_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert!(!next_combination(&mut [], 3));
    }
}
