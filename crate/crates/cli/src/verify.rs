//! Bound-checking campaigns: every proved inequality and identity is
//! evaluated with exact solver values on each corpus instance.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use isolation_core::constructions::{self, ConstructionError, DEFAULT_ENUMERATION_CAP};
use isolation_core::products::{cartesian_product, lexicographic_product};
use isolation_core::sierpinski::{
    exact_isolation, sierpinski_bounds, sierpinski_graph, SierpinskiError, DEFAULT_VERTEX_CAP, DIRECT_SOLVE_CAP,
};
use isolation_core::{Budget, Graph, GraphFamily, Invariant, ProductError, SolverError};
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::Entry;
use crate::records::{canonical_key, Store};

/// Largest product handed to the exact isolation solver.
pub const DEFAULT_PRODUCT_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// ι(G) ≥ γ(G) − γ^i(G).
    GammaGap,
    /// ι ≤ γ; ι ≤ s ≤ α'; ρ₂ ≤ γ^i ≤ γ; α + β = n.
    Chains,
    /// ι(G□H) ≤ min{α(G)ι(H) + β(G)γ(H), α(H)ι(G) + β(H)γ(G)}.
    TrivialUpper,
    /// ι(G□H) ≤ α_k(G)ι(H) + (n(G) − α_k(G))γ(H) with k = ω(I(H)), both ways.
    IsolationGraphUpper,
    /// ι(G□H) ≤ β(G)β(H) without isolated vertices.
    CoverProduct,
    /// ι(G□H) ≥ max{ρ₂(G)ι(H), ρ₂(H)ι(G)}.
    PackingLower,
    /// γ(G) ≤ ι(G□K_2) ≤ γ(G□K_2), equality on the left for bipartite G.
    Prism,
    /// ι(Q_{d+1}) = γ(Q_d).
    Hypercube,
    /// ι(G∘H) = γ(G∘H) = γ_t(G) for connected nontrivial G, H with ι(H) ≥ 2.
    Lex,
    /// ι(S_G^t) ≤ ξ(S_G^2)·n^(t−2).
    SierpinskiUpper,
    /// ι(S_G^t) ≥ ι(S_G^2|Ex)·n^(t−2).
    SierpinskiLower,
}

impl Theorem {
    pub const ALL: [Theorem; 11] = [
        Theorem::GammaGap,
        Theorem::Chains,
        Theorem::TrivialUpper,
        Theorem::IsolationGraphUpper,
        Theorem::CoverProduct,
        Theorem::PackingLower,
        Theorem::Prism,
        Theorem::Hypercube,
        Theorem::Lex,
        Theorem::SierpinskiUpper,
        Theorem::SierpinskiLower,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::GammaGap => "gamma-gap",
            Theorem::Chains => "chains",
            Theorem::TrivialUpper => "trivial-upper",
            Theorem::IsolationGraphUpper => "isolation-graph-upper",
            Theorem::CoverProduct => "cover-product",
            Theorem::PackingLower => "packing-lower",
            Theorem::Prism => "prism",
            Theorem::Hypercube => "hypercube",
            Theorem::Lex => "lex",
            Theorem::SierpinskiUpper => "sierpinski-upper",
            Theorem::SierpinskiLower => "sierpinski-lower",
        }
    }

    /// Whether instances are factor pairs rather than single graphs.
    pub fn on_pairs(self) -> bool {
        matches!(
            self,
            Theorem::TrivialUpper
                | Theorem::IsolationGraphUpper
                | Theorem::CoverProduct
                | Theorem::PackingLower
                | Theorem::Lex
        )
    }

    /// `all` or a comma-separated id list.
    pub fn parse_list(s: &str) -> Result<Vec<Theorem>> {
        if s.trim() == "all" {
            return Ok(Theorem::ALL.to_vec());
        }
        let mut out: Vec<Theorem> = s.split(',').map(str::parse).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match Theorem::ALL.iter().find(|t| t.id() == s) {
            Some(t) => Ok(*t),
            None => {
                let ids: Vec<&str> = Theorem::ALL.iter().map(|t| t.id()).collect();
                bail!("unknown theorem `{s}`; expected one of {}", ids.join(", "))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    HypothesisNotMet,
    BudgetExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    fn holds(self, lhs: usize, rhs: usize) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub theorem: Theorem,
    /// Which inequality of the theorem this row evaluates.
    pub check: String,
    pub inputs: Vec<String>,
    pub keys: Vec<String>,
    pub hypothesis: bool,
    pub lhs: Option<usize>,
    pub relation: Relation,
    pub rhs: Option<usize>,
    pub verdict: Verdict,
    pub note: String,
}

/// Why an instance produced no comparison.
#[derive(Debug)]
enum Fail {
    Budget(String),
    Defect(String),
}

impl From<SolverError> for Fail {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::BudgetExhausted { .. } | SolverError::TooLarge { .. } => Fail::Budget(e.to_string()),
            other => Fail::Defect(other.to_string()),
        }
    }
}

impl From<ConstructionError> for Fail {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Solver(s) => s.into(),
            ConstructionError::Sierpinski(s) => s.into(),
            ConstructionError::EnumerationCap { .. } => Fail::Budget(e.to_string()),
            other => Fail::Defect(other.to_string()),
        }
    }
}

impl From<SierpinskiError> for Fail {
    fn from(e: SierpinskiError) -> Self {
        match e {
            SierpinskiError::Solver(s) => s.into(),
            SierpinskiError::TooLarge { .. } => Fail::Budget(e.to_string()),
            other => Fail::Defect(other.to_string()),
        }
    }
}

impl From<ProductError> for Fail {
    fn from(e: ProductError) -> Self {
        Fail::Defect(e.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct Campaign {
    pub theorems: Vec<Theorem>,
    pub budget: Budget,
    pub product_cap: usize,
    pub enumeration_cap: usize,
    /// Sierpinski dimensions checked per base graph.
    pub dims: Vec<usize>,
}

impl Default for Campaign {
    fn default() -> Self {
        Self {
            theorems: Theorem::ALL.to_vec(),
            budget: Budget::nodes(100_000_000),
            product_cap: DEFAULT_PRODUCT_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            dims: vec![2, 3],
        }
    }
}

/// Rows for one instance, sharing the inputs and keys.
struct Rows<'a> {
    theorem: Theorem,
    inputs: Vec<String>,
    keys: Vec<String>,
    out: &'a mut Vec<TheoremCheck>,
}

impl Rows<'_> {
    fn push(
        &mut self,
        check: &str,
        hypothesis: bool,
        lhs: Option<usize>,
        relation: Relation,
        rhs: Option<usize>,
        verdict: Verdict,
        note: String,
    ) {
        self.out.push(TheoremCheck {
            theorem: self.theorem,
            check: check.to_string(),
            inputs: self.inputs.clone(),
            keys: self.keys.clone(),
            hypothesis,
            lhs,
            relation,
            rhs,
            verdict,
            note,
        });
    }

    fn compare(&mut self, check: &str, lhs: usize, relation: Relation, rhs: usize) {
        let verdict = if relation.holds(lhs, rhs) {
            Verdict::Holds
        } else {
            Verdict::Violated
        };
        self.push(check, true, Some(lhs), relation, Some(rhs), verdict, String::new());
    }

    fn not_met(&mut self, check: &str, relation: Relation, why: &str) {
        self.push(
            check,
            false,
            None,
            relation,
            None,
            Verdict::HypothesisNotMet,
            why.to_string(),
        );
    }

    fn failed(&mut self, check: &str, fail: Fail) {
        let (verdict, note) = match fail {
            Fail::Budget(n) => (Verdict::BudgetExceeded, n),
            Fail::Defect(n) => (Verdict::Violated, n),
        };
        self.push(check, true, None, Relation::Eq, None, verdict, note);
    }
}

struct Ctx<'a> {
    store: &'a Store,
    campaign: &'a Campaign,
}

impl Ctx<'_> {
    fn v(&self, g: &Graph, inv: Invariant) -> Result<usize, Fail> {
        Ok(self.store.value(g, inv, self.campaign.budget)?)
    }

    /// Exact ι of a product, refused above the product cap.
    fn product_iota(&self, p: &Graph) -> Result<usize, Fail> {
        if p.order() > self.campaign.product_cap {
            return Err(Fail::Budget(format!(
                "product order {} above the exact cap {}",
                p.order(),
                self.campaign.product_cap
            )));
        }
        self.v(p, Invariant::Isolation)
    }
}

fn single(ctx: &Ctx, theorem: Theorem, e: &Entry, rows: &mut Rows) -> Result<(), Fail> {
    let g = &e.graph;
    let v = |inv| ctx.v(g, inv);
    match theorem {
        Theorem::GammaGap => {
            let gap = v(Invariant::Domination)?.saturating_sub(v(Invariant::IndependenceDomination)?);
            rows.compare("iota >= gamma - gamma_i", v(Invariant::Isolation)?, Relation::Ge, gap);
        }
        Theorem::Chains => {
            let (iota, gamma) = (v(Invariant::Isolation)?, v(Invariant::Domination)?);
            let (s, matching) = (v(Invariant::Saturation)?, v(Invariant::Matching)?);
            let (rho2, gamma_i) = (v(Invariant::TwoPacking)?, v(Invariant::IndependenceDomination)?);
            rows.compare("iota <= gamma", iota, Relation::Le, gamma);
            rows.compare("iota <= s", iota, Relation::Le, s);
            rows.compare("s <= alpha'", s, Relation::Le, matching);
            rows.compare("rho2 <= gamma_i", rho2, Relation::Le, gamma_i);
            rows.compare("gamma_i <= gamma", gamma_i, Relation::Le, gamma);
            let ab = v(Invariant::Independence)? + v(Invariant::VertexCover)?;
            rows.compare("alpha + beta = n", ab, Relation::Eq, g.order());
        }
        Theorem::Prism => {
            let k2 = GraphFamily::Complete(2).build().expect("valid family");
            let p = cartesian_product(g, &k2)?.into_graph();
            let iota_p = ctx.product_iota(&p)?;
            let gamma = v(Invariant::Domination)?;
            rows.compare("iota(GxK2) >= gamma(G)", iota_p, Relation::Ge, gamma);
            rows.compare(
                "iota(GxK2) <= gamma(GxK2)",
                iota_p,
                Relation::Le,
                ctx.v(&p, Invariant::Domination)?,
            );
            if g.is_bipartite() {
                rows.compare("iota(GxK2) = gamma(G)", iota_p, Relation::Eq, gamma);
                let c = constructions::prism(g, ctx.campaign.budget)?;
                rows.compare("construction = iota(GxK2)", c.size(), Relation::Eq, iota_p);
            } else {
                rows.not_met("iota(GxK2) = gamma(G)", Relation::Eq, "not bipartite");
            }
        }
        Theorem::Hypercube => {
            let d = e.label.strip_prefix("hypercube:").and_then(|d| d.parse::<usize>().ok());
            match d {
                Some(d) => {
                    let next = GraphFamily::Hypercube(d + 1)
                        .build()
                        .map_err(|e| Fail::Defect(e.to_string()))?;
                    rows.compare(
                        "iota(Q_{d+1}) = gamma(Q_d)",
                        ctx.product_iota(&next)?,
                        Relation::Eq,
                        v(Invariant::Domination)?,
                    );
                }
                None => rows.not_met(
                    "iota(Q_{d+1}) = gamma(Q_d)",
                    Relation::Eq,
                    "not a hypercube family entry",
                ),
            }
        }
        Theorem::SierpinskiUpper | Theorem::SierpinskiLower => {
            let b = sierpinski_bounds(g, 2, ctx.campaign.budget)?;
            let n = g.order();
            for &t in &ctx.campaign.dims {
                let check = |s: &str| format!("t={t}: {s}");
                if t < 2 {
                    rows.not_met(&check("bounds"), Relation::Le, "dimension below 2");
                    continue;
                }
                let scale = n.pow(t as u32 - 2);
                let (lower, upper) = (b.iota_given * scale, b.xi * scale);
                let order = (n as u128).pow(t as u32);
                let exact = if order <= DIRECT_SOLVE_CAP as u128 {
                    Some(exact_isolation(&sierpinski_graph(g, t)?, ctx.campaign.budget)?.value)
                } else {
                    None
                };
                if theorem == Theorem::SierpinskiUpper {
                    if order <= DEFAULT_VERTEX_CAP as u128 {
                        let c = constructions::sierpinski(g, t, ctx.campaign.budget)?;
                        rows.compare(&check("construction = xi*n^(t-2)"), c.size(), Relation::Eq, upper);
                    }
                    match exact {
                        Some(x) => rows.compare(&check("iota <= xi*n^(t-2)"), x, Relation::Le, upper),
                        None => rows.compare(&check("lower <= xi*n^(t-2)"), lower, Relation::Le, upper),
                    }
                } else {
                    match exact {
                        Some(x) => rows.compare(&check("iota >= iota(S2|Ex)*n^(t-2)"), x, Relation::Ge, lower),
                        None => rows.compare(&check("upper >= iota(S2|Ex)*n^(t-2)"), upper, Relation::Ge, lower),
                    }
                }
            }
        }
        _ => unreachable!("pair theorem evaluated on a single graph"),
    }
    Ok(())
}

fn pair(ctx: &Ctx, theorem: Theorem, a: &Entry, b: &Entry, rows: &mut Rows) -> Result<(), Fail> {
    let (g, h) = (&a.graph, &b.graph);
    let budget = ctx.campaign.budget;
    match theorem {
        Theorem::TrivialUpper => {
            let p = cartesian_product(g, h)?.into_graph();
            let iota_p = ctx.product_iota(&p)?;
            let side = |x: &Graph, y: &Graph| -> Result<usize, Fail> {
                Ok(ctx.v(x, Invariant::Independence)? * ctx.v(y, Invariant::Isolation)?
                    + ctx.v(x, Invariant::VertexCover)? * ctx.v(y, Invariant::Domination)?)
            };
            let bound = side(g, h)?.min(side(h, g)?);
            rows.compare("iota(GxH) <= bound", iota_p, Relation::Le, bound);
            let c = constructions::trivial_upper(g, h, budget)?;
            rows.compare("construction = bound", c.size(), Relation::Eq, bound);
        }
        Theorem::IsolationGraphUpper => {
            let p = cartesian_product(g, h)?.into_graph();
            let iota_p = ctx.product_iota(&p)?;
            let c = constructions::thm32(g, h, ctx.campaign.enumeration_cap, budget)?;
            rows.compare("iota(GxH) <= bound", iota_p, Relation::Le, c.bound);
        }
        Theorem::CoverProduct => {
            let check = "iota(GxH) <= beta(G)beta(H)";
            if g.has_isolated_vertex() || h.has_isolated_vertex() || g.order() == 0 || h.order() == 0 {
                rows.not_met(check, Relation::Le, "a factor has an isolated vertex");
                return Ok(());
            }
            let p = cartesian_product(g, h)?.into_graph();
            let bound = ctx.v(g, Invariant::VertexCover)? * ctx.v(h, Invariant::VertexCover)?;
            rows.compare(check, ctx.product_iota(&p)?, Relation::Le, bound);
            let c = constructions::beta_beta(g, h, budget)?;
            rows.compare("construction = beta(G)beta(H)", c.size(), Relation::Eq, bound);
        }
        Theorem::PackingLower => {
            let p = cartesian_product(g, h)?.into_graph();
            let bound = (ctx.v(g, Invariant::TwoPacking)? * ctx.v(h, Invariant::Isolation)?)
                .max(ctx.v(h, Invariant::TwoPacking)? * ctx.v(g, Invariant::Isolation)?);
            rows.compare("iota(GxH) >= rho2 bound", ctx.product_iota(&p)?, Relation::Ge, bound);
        }
        Theorem::Lex => {
            let names = [
                "iota(G.H) = gamma_t(G)",
                "gamma(G.H) = gamma_t(G)",
                "construction = gamma_t(G)",
            ];
            let nontrivial = |x: &Graph| x.order() >= 2 && x.is_connected();
            let why = if !nontrivial(g) || !nontrivial(h) {
                Some("a factor is trivial or disconnected")
            } else if ctx.v(h, Invariant::Isolation)? < 2 {
                Some("iota(H) < 2")
            } else {
                None
            };
            if let Some(why) = why {
                for n in names {
                    rows.not_met(n, Relation::Eq, why);
                }
                return Ok(());
            }
            let l = lexicographic_product(g, h)?.into_graph();
            let gamma_t = ctx.v(g, Invariant::TotalDomination)?;
            rows.compare(names[0], ctx.product_iota(&l)?, Relation::Eq, gamma_t);
            rows.compare(names[1], ctx.v(&l, Invariant::Domination)?, Relation::Eq, gamma_t);
            let c = constructions::lex(g, h, budget)?;
            rows.compare(names[2], c.size(), Relation::Eq, gamma_t);
        }
        _ => unreachable!("single-graph theorem evaluated on a pair"),
    }
    Ok(())
}

/// Factor pairs: consecutive entries, or every entry against `fixed`.
pub fn pairs<'a>(entries: &'a [Entry], fixed: Option<&'a Entry>) -> Vec<(&'a Entry, &'a Entry)> {
    match fixed {
        Some(h) => entries.iter().map(|g| (g, h)).collect(),
        None => entries.chunks_exact(2).map(|c| (&c[0], &c[1])).collect(),
    }
}

impl Campaign {
    /// Rows in theorem order, then corpus order; instances run in parallel.
    pub fn run(&self, entries: &[Entry], fixed: Option<&Entry>, store: &Store) -> Vec<TheoremCheck> {
        let ctx = Ctx { store, campaign: self };
        let mut items: Vec<(Theorem, &Entry, Option<&Entry>)> = Vec::new();
        for &t in &self.theorems {
            if t.on_pairs() {
                items.extend(pairs(entries, fixed).into_iter().map(|(a, b)| (t, a, Some(b))));
            } else {
                items.extend(entries.iter().map(|e| (t, e, None)));
            }
        }
        items
            .par_iter()
            .map(|&(t, a, b)| {
                let mut out = Vec::new();
                let mut inputs = vec![a.label.clone()];
                let mut keys = vec![canonical_key(&a.graph)];
                if let Some(b) = b {
                    inputs.push(b.label.clone());
                    keys.push(canonical_key(&b.graph));
                }
                let mut rows = Rows {
                    theorem: t,
                    inputs,
                    keys,
                    out: &mut out,
                };
                let result = match b {
                    Some(b) => pair(&ctx, t, a, b, &mut rows),
                    None => single(&ctx, t, a, &mut rows),
                };
                if let Err(f) = result {
                    rows.failed("instance", f);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CorpusSpec;

    fn entries(spec: &str) -> Vec<Entry> {
        spec.parse::<CorpusSpec>().unwrap().generate(1).unwrap()
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
        }
        assert_eq!(Theorem::parse_list("all").unwrap().len(), 11);
        assert_eq!(
            Theorem::parse_list("prism,chains,prism").unwrap(),
            vec![Theorem::Chains, Theorem::Prism]
        );
        assert!("nope".parse::<Theorem>().is_err());
    }

    #[test]
    fn gamma_gap_equality_on_complete_bipartite() {
        let c = Campaign {
            theorems: vec![Theorem::GammaGap],
            ..Campaign::default()
        };
        let mut list = Vec::new();
        for m in 2..=5 {
            for n in m..=5 {
                list.push(format!("complete_bipartite:{m},{n}"));
            }
        }
        let es = entries(&format!("family:list={}", list.join("+")));
        let rows = c.run(&es, None, &Store::in_memory());
        assert_eq!(rows.len(), 10);
        for r in rows {
            assert_eq!((r.lhs, r.rhs, r.verdict), (Some(1), Some(1), Verdict::Holds));
        }
    }

    #[test]
    fn small_campaign_has_no_violations() {
        let es = entries("gnp:count=6,nmin=3,nmax=5;family:list=hypercube:2+cycle:5");
        let rows = Campaign::default().run(&es, None, &Store::in_memory());
        assert!(rows.iter().all(|r| r.verdict != Verdict::Violated), "{rows:#?}");
        assert!(rows
            .iter()
            .any(|r| r.theorem == Theorem::Hypercube && r.verdict == Verdict::Holds));
        let lex_rows = rows.iter().filter(|r| r.theorem == Theorem::Lex).count();
        assert_eq!(lex_rows, 4 * 3);
    }

    #[test]
    fn hypotheses_are_recorded_not_skipped() {
        let es = entries("family:list=path:3+complete:3");
        let c = Campaign {
            theorems: vec![Theorem::Lex, Theorem::Prism],
            ..Campaign::default()
        };
        let rows = c.run(&es, None, &Store::in_memory());
        assert!(rows.iter().any(|r| r.theorem == Theorem::Lex
            && r.verdict == Verdict::HypothesisNotMet
            && r.note.contains("iota(H)")));
        assert!(rows.iter().any(|r| r.theorem == Theorem::Prism
            && r.inputs == ["complete:3"]
            && r.verdict == Verdict::HypothesisNotMet));
    }

    #[test]
    fn tiny_budget_marks_rows() {
        let es = entries("family:list=cycle:7+cycle:7");
        let c = Campaign {
            theorems: vec![Theorem::PackingLower],
            budget: Budget::nodes(1),
            ..Campaign::default()
        };
        let rows = c.run(&es, None, &Store::in_memory());
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].verdict, Verdict::BudgetExceeded);
    }
}
