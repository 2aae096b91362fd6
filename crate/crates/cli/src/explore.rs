//! Counterexample search for open inequalities.
//!
//! Product targets compare ι(G□H) against a conjectured lower bound; each
//! row also carries the status of the proved ρ₂ bound on the same pair, so a
//! solver defect would surface there. A failed open inequality is a finding,
//! not an error.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use isolation_core::io::serialize_graph;
use isolation_core::products::cartesian_product;
use isolation_core::sierpinski::sierpinski_bounds;
use isolation_core::{Budget, Graph, Invariant, SolverError};
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::Entry;
use crate::records::{canonical_key, Store};
use crate::verify::{pairs, DEFAULT_PRODUCT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// ι(G□H) ≥ ι(G)ι(H).
    VizingIota,
    /// ι(G□H) ≥ max{γ(G)ι(H), γ(H)ι(G)}.
    GammaLower,
    /// ι(G□H) ≥ max{γ^i(G)ι(H), γ^i(H)ι(G)}.
    GammaiLower,
    /// ξ(S_G^2) − ι(S_G^2|Ex), recorded per graph.
    SierpinskiGap,
}

impl Target {
    pub const ALL: [Target; 4] = [
        Target::VizingIota,
        Target::GammaLower,
        Target::GammaiLower,
        Target::SierpinskiGap,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Target::VizingIota => "vizing-iota",
            Target::GammaLower => "gamma-lower",
            Target::GammaiLower => "gammai-lower",
            Target::SierpinskiGap => "sierpinski-gap",
        }
    }

    pub fn parse_list(s: &str) -> Result<Vec<Target>> {
        if s.trim() == "all" {
            return Ok(Target::ALL.to_vec());
        }
        let mut out: Vec<Target> = s.split(',').map(str::parse).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Target {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match Target::ALL.iter().find(|t| t.id() == s.trim()) {
            Some(t) => Ok(*t),
            None => bail!("unknown exploration target `{}`", s.trim()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Counterexample,
    /// The proved ρ₂ bound failed: a defect, not a finding.
    Violated,
    Recorded,
    BudgetExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Counterexample => "counterexample",
            Status::Violated => "violated",
            Status::Recorded => "recorded",
            Status::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExploreRow {
    pub target: Target,
    pub inputs: Vec<String>,
    pub keys: Vec<String>,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
    pub status: Status,
    /// ι(G□H) ≥ max{ρ₂(G)ι(H), ρ₂(H)ι(G)} on the same pair.
    pub rho2_bound: Option<usize>,
    pub rho2_status: Status,
    pub note: String,
}

/// A counterexample with everything needed to re-check it by hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub target: Target,
    pub inputs: Vec<String>,
    pub g: String,
    pub h: String,
    pub iota_product: usize,
    pub iota_product_witness: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
    pub factor_values: Vec<(String, usize)>,
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub targets: Vec<Target>,
    pub budget: Budget,
    pub product_cap: usize,
}

impl Default for Exploration {
    fn default() -> Self {
        Self {
            targets: Target::ALL.to_vec(),
            budget: Budget::nodes(100_000_000),
            product_cap: DEFAULT_PRODUCT_CAP,
        }
    }
}

struct PairValues {
    product: usize,
    witness: Vec<usize>,
    /// (tag, G value, H value)
    factors: Vec<(Invariant, usize, usize)>,
}

impl PairValues {
    fn get(&self, inv: Invariant) -> (usize, usize) {
        let (_, g, h) = self
            .factors
            .iter()
            .find(|(i, _, _)| *i == inv)
            .expect("factor value computed");
        (*g, *h)
    }
}

fn pair_values(store: &Store, ex: &Exploration, g: &Graph, h: &Graph) -> Result<PairValues, SolverError> {
    let p = cartesian_product(g, h)
        .map_err(|e| SolverError::InvalidArgument(e.to_string()))?
        .into_graph();
    if p.order() > ex.product_cap {
        return Err(SolverError::TooLarge {
            order: p.order(),
            limit: ex.product_cap,
        });
    }
    let lookup = store.get(&p, Invariant::Isolation, ex.budget)?;
    let mut factors = Vec::new();
    for inv in [
        Invariant::Isolation,
        Invariant::Domination,
        Invariant::IndependenceDomination,
        Invariant::TwoPacking,
    ] {
        factors.push((inv, store.value(g, inv, ex.budget)?, store.value(h, inv, ex.budget)?));
    }
    Ok(PairValues {
        product: lookup.record.value,
        witness: lookup.record.witness,
        factors,
    })
}

impl Exploration {
    pub fn run(&self, entries: &[Entry], fixed: Option<&Entry>, store: &Store) -> (Vec<ExploreRow>, Vec<Finding>) {
        let product_targets: Vec<Target> = self
            .targets
            .iter()
            .copied()
            .filter(|t| *t != Target::SierpinskiGap)
            .collect();
        let mut rows = Vec::new();
        let mut findings = Vec::new();
        if !product_targets.is_empty() {
            let per_pair: Vec<(Vec<ExploreRow>, Vec<Finding>)> = pairs(entries, fixed)
                .par_iter()
                .map(|&(a, b)| self.pair_rows(&product_targets, a, b, store))
                .collect();
            let mut by_target: Vec<Vec<ExploreRow>> = vec![Vec::new(); product_targets.len()];
            for (r, f) in per_pair {
                for (slot, row) in by_target.iter_mut().zip(r) {
                    slot.push(row);
                }
                findings.extend(f);
            }
            rows.extend(by_target.into_iter().flatten());
            findings.sort_by_key(|f| f.target);
        }
        if self.targets.contains(&Target::SierpinskiGap) {
            let gap_rows: Vec<ExploreRow> = entries.par_iter().map(|e| self.gap_row(e)).collect();
            rows.extend(gap_rows);
        }
        (rows, findings)
    }

    fn pair_rows(&self, targets: &[Target], a: &Entry, b: &Entry, store: &Store) -> (Vec<ExploreRow>, Vec<Finding>) {
        let inputs = vec![a.label.clone(), b.label.clone()];
        let keys = vec![canonical_key(&a.graph), canonical_key(&b.graph)];
        let values = match pair_values(store, self, &a.graph, &b.graph) {
            Ok(v) => v,
            Err(e) => {
                let rows = targets
                    .iter()
                    .map(|&target| ExploreRow {
                        target,
                        inputs: inputs.clone(),
                        keys: keys.clone(),
                        lhs: None,
                        rhs: None,
                        status: Status::BudgetExceeded,
                        rho2_bound: None,
                        rho2_status: Status::BudgetExceeded,
                        note: e.to_string(),
                    })
                    .collect();
                return (rows, Vec::new());
            }
        };
        let (iota_g, iota_h) = values.get(Invariant::Isolation);
        let cross = |inv| {
            let (x, y) = values.get(inv);
            (x * iota_h).max(y * iota_g)
        };
        let rho2 = cross(Invariant::TwoPacking);
        let rho2_status = if values.product >= rho2 {
            Status::Holds
        } else {
            Status::Violated
        };
        let mut rows = Vec::new();
        let mut findings = Vec::new();
        for &target in targets {
            let rhs = match target {
                Target::VizingIota => iota_g * iota_h,
                Target::GammaLower => cross(Invariant::Domination),
                Target::GammaiLower => cross(Invariant::IndependenceDomination),
                Target::SierpinskiGap => unreachable!("handled per graph"),
            };
            let status = if values.product >= rhs {
                Status::Holds
            } else {
                Status::Counterexample
            };
            if status == Status::Counterexample {
                findings.push(Finding {
                    target,
                    inputs: inputs.clone(),
                    g: serialize_graph(&a.graph),
                    h: serialize_graph(&b.graph),
                    iota_product: values.product,
                    iota_product_witness: values.witness.clone(),
                    lhs: values.product,
                    rhs,
                    factor_values: values
                        .factors
                        .iter()
                        .flat_map(|(inv, x, y)| [(format!("{inv}(G)"), *x), (format!("{inv}(H)"), *y)])
                        .collect(),
                });
            }
            rows.push(ExploreRow {
                target,
                inputs: inputs.clone(),
                keys: keys.clone(),
                lhs: Some(values.product),
                rhs: Some(rhs),
                status,
                rho2_bound: Some(rho2),
                rho2_status,
                note: String::new(),
            });
        }
        (rows, findings)
    }

    fn gap_row(&self, e: &Entry) -> ExploreRow {
        let base = ExploreRow {
            target: Target::SierpinskiGap,
            inputs: vec![e.label.clone()],
            keys: vec![canonical_key(&e.graph)],
            lhs: None,
            rhs: None,
            status: Status::BudgetExceeded,
            rho2_bound: None,
            rho2_status: Status::Recorded,
            note: String::new(),
        };
        match sierpinski_bounds(&e.graph, 2, self.budget) {
            Ok(b) => ExploreRow {
                lhs: Some(b.xi),
                rhs: Some(b.iota_given),
                status: Status::Recorded,
                note: format!("gap {}", b.gap()),
                ..base
            },
            Err(err) => ExploreRow {
                note: err.to_string(),
                ..base
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CorpusSpec;

    #[test]
    fn gap_is_zero_on_complete_graphs_and_c4() {
        let es = "family:list=complete:3+complete:4+complete:5+cycle:4"
            .parse::<CorpusSpec>()
            .unwrap()
            .generate(0)
            .unwrap();
        let ex = Exploration {
            targets: vec![Target::SierpinskiGap],
            ..Exploration::default()
        };
        let (rows, findings) = ex.run(&es, None, &Store::in_memory());
        assert!(findings.is_empty());
        let gaps: Vec<_> = rows.iter().map(|r| (r.lhs, r.rhs)).collect();
        assert_eq!(
            gaps,
            [
                (Some(2), Some(2)),
                (Some(3), Some(3)),
                (Some(4), Some(4)),
                (Some(3), Some(3))
            ]
        );
    }

    #[test]
    fn c5_pair_rows() {
        let es = "family:list=cycle:5+cycle:5"
            .parse::<CorpusSpec>()
            .unwrap()
            .generate(0)
            .unwrap();
        let (rows, _) = Exploration::default().run(&es, None, &Store::in_memory());
        // Three product targets for the one pair, a gap row per graph.
        assert_eq!(rows.len(), 5);
        let vizing = &rows[0];
        assert_eq!(vizing.target, Target::VizingIota);
        assert_eq!(vizing.rhs, Some(4));
        assert_eq!(vizing.rho2_status, Status::Holds);
    }
}
