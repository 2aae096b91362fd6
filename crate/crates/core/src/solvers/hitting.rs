//! Minimum hitting set search shared by every covering-type invariant.
//!
//! Isolation, domination, total domination, set domination and the
//! Sierpinski-specific variants all reduce to: find the fewest vertices
//! meeting every set of a family. The search iterates the target cardinality
//! upward; at each level a depth-first search branches on the unhit set with
//! the fewest remaining candidates, excluding earlier siblings' choices so
//! that every candidate set is visited at most once.

use super::mask::{bit, bits, count, Mask};
use super::{NodeCounter, SolverError};

pub(crate) struct HittingSet {
    sets: Vec<Mask>,
    universe: Mask,
}

pub(crate) enum Enumeration {
    Complete(Vec<Mask>),
    Capped(Vec<Mask>),
}

impl HittingSet {
    /// Duplicate sets and supersets of other sets are dropped; they never
    /// change which vertex sets are hitting sets.
    pub fn new(universe: Mask, sets: impl IntoIterator<Item = Mask>) -> Self {
        let mut all: Vec<Mask> = sets.into_iter().map(|s| s & universe).collect();
        all.sort_unstable_by_key(|&s| (count(s), s));
        all.dedup();
        let mut kept: Vec<Mask> = Vec::with_capacity(all.len());
        for s in all {
            if !kept.iter().any(|&k| k & !s == 0) {
                kept.push(s);
            }
        }
        Self { sets: kept, universe }
    }

    /// Vertex fixing the most unhit sets, repeatedly; ties to the lowest index.
    pub fn greedy(&self) -> Option<Mask> {
        let mut chosen: Mask = 0;
        let mut unhit = self.sets.clone();
        let mut tally = [0u32; 128];
        while !unhit.is_empty() {
            tally.iter_mut().for_each(|t| *t = 0);
            for &s in &unhit {
                for v in bits(s) {
                    tally[v] += 1;
                }
            }
            let (v, &best) = tally
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))?;
            if best == 0 {
                return None;
            }
            chosen |= bit(v);
            unhit.retain(|&s| s & bit(v) == 0);
        }
        Some(chosen)
    }

    /// Lower bound on how many more vertices are needed for `unhit`.
    fn lower_bound(unhit: &[Mask], allowed: Mask, limit: usize) -> usize {
        let mut used: Mask = 0;
        let mut packing = 0;
        for &s in unhit {
            let a = s & allowed;
            if a & used == 0 {
                used |= a;
                packing += 1;
                if packing > limit {
                    return packing;
                }
            }
        }
        // Demand over the best single-vertex coverage.
        let mut tally = [0u32; 128];
        for &s in unhit {
            for v in bits(s & allowed) {
                tally[v] += 1;
            }
        }
        let cover = *tally.iter().max().unwrap_or(&0) as usize;
        if cover == 0 {
            return usize::MAX;
        }
        packing.max(unhit.len().div_ceil(cover))
    }

    /// Smallest hitting set of size at most `max_size`, or `None` when no
    /// such set exists.
    pub fn minimum(&self, max_size: Option<usize>, counter: &mut NodeCounter) -> Result<Option<Mask>, SolverError> {
        if self.sets.is_empty() {
            return Ok(Some(0));
        }
        if self.sets.contains(&0) {
            return Ok(None);
        }
        let greedy = self.greedy();
        let cap = match (greedy, max_size) {
            (Some(g), Some(m)) => count(g).min(m),
            (Some(g), None) => count(g),
            (None, Some(m)) => m,
            (None, None) => self.universe.count_ones() as usize,
        };
        let start = Self::lower_bound(&self.sets, self.universe, cap);
        let mut scratch = vec![Vec::new(); cap + 1];
        for target in start..=cap {
            if let Some(g) = greedy {
                if count(g) == target {
                    return Ok(Some(g));
                }
            }
            let mut found = None;
            self.search(&self.sets, 0, self.universe, target, &mut scratch, counter, &mut |m| {
                found = Some(m);
                false
            })?;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Every hitting set of exactly `size` vertices, where `size` must be the
    /// minimum. Sets come out sorted by their member lists.
    pub fn all_minimum(&self, size: usize, cap: usize, counter: &mut NodeCounter) -> Result<Enumeration, SolverError> {
        let mut out = Vec::new();
        let mut capped = false;
        if self.sets.is_empty() {
            if size == 0 {
                out.push(0);
            }
            return Ok(Enumeration::Complete(out));
        }
        let mut scratch = vec![Vec::new(); size + 1];
        self.search(&self.sets, 0, self.universe, size, &mut scratch, counter, &mut |m| {
            if count(m) != size {
                return true;
            }
            if out.len() == cap {
                capped = true;
                return false;
            }
            out.push(m);
            true
        })?;
        out.sort_by(|a, b| bits(*a).cmp(bits(*b)));
        Ok(if capped {
            Enumeration::Capped(out)
        } else {
            Enumeration::Complete(out)
        })
    }

    /// Depth-first search; `emit` returns whether to keep going.
    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        unhit: &[Mask],
        chosen: Mask,
        allowed: Mask,
        target: usize,
        scratch: &mut [Vec<Mask>],
        counter: &mut NodeCounter,
        emit: &mut dyn FnMut(Mask) -> bool,
    ) -> Result<bool, SolverError> {
        counter.tick(target)?;
        if unhit.is_empty() {
            return Ok(emit(chosen));
        }
        let depth = count(chosen);
        if depth >= target {
            return Ok(true);
        }
        let mut pick = 0;
        let mut pick_len = usize::MAX;
        for &s in unhit {
            let c = count(s & allowed);
            if c < pick_len {
                pick_len = c;
                pick = s;
                if c <= 1 {
                    break;
                }
            }
        }
        if pick_len == 0 {
            return Ok(true);
        }
        let remaining = target - depth;
        if Self::lower_bound(unhit, allowed, remaining) > remaining {
            return Ok(true);
        }
        let (head, tail) = scratch.split_first_mut().expect("scratch depth");
        let mut allowed = allowed;
        for c in bits(pick & allowed) {
            head.clear();
            head.extend(unhit.iter().copied().filter(|&s| s & bit(c) == 0));
            let keep_going = self.search(head, chosen | bit(c), allowed, target, tail, counter, emit)?;
            if !keep_going {
                return Ok(false);
            }
            allowed &= !bit(c);
        }
        Ok(true)
    }
}
