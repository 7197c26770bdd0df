//! Corpus-wide tables: prices against minimal degrees, and time-space
//! frontiers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::FieldSpec;
use crate::graphs::{binary_tree, path, pyramid, single_sink_dags, Dag};
use crate::pebbling::{tradeoff_frontier, FrontierPoint, GameVariant, PebblingError, SearchOptions};
use crate::translate::{price_report, PriceReport, TranslateError};

/// Which graphs a report covers. The report is a function of this alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    /// Every single-sink DAG on `1..=nmax` vertices, up to isomorphism.
    pub nmax: usize,
    /// `path_n` for `2..=path_max`.
    pub path_max: usize,
    /// `pyramid(h)` for `1..=pyramid_max`.
    pub pyramid_max: usize,
    /// `binary_tree(h)` for `1..=tree_max`.
    pub tree_max: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { nmax: 5, path_max: 16, pyramid_max: 3, tree_max: 3 }
    }
}

#[derive(Debug, Clone)]
pub struct NamedDag {
    pub name: String,
    pub dag: Dag,
}

pub fn corpus(spec: &CorpusSpec) -> Vec<NamedDag> {
    let mut out = Vec::new();
    for n in 1..=spec.nmax.min(6) {
        for (i, dag) in single_sink_dags(n).into_iter().enumerate() {
            out.push(NamedDag { name: format!("dag{n}_{i}"), dag });
        }
    }
    for n in 2..=spec.path_max {
        out.push(NamedDag { name: format!("path_{n}"), dag: path(n).expect("n >= 1") });
    }
    for h in 1..=spec.pyramid_max {
        out.push(NamedDag { name: format!("pyramid_{h}"), dag: pyramid(h).expect("h >= 1") });
    }
    for h in 1..=spec.tree_max {
        out.push(NamedDag { name: format!("binary_tree_{h}"), dag: binary_tree(h).expect("h >= 1") });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityRow {
    pub graph: String,
    #[serde(flatten)]
    pub report: PriceReport,
    pub mc_eq_black: bool,
    pub ns_eq_rev: bool,
}

impl EqualityRow {
    pub const HEADER: [&'static str; 9] = ["graph", "bw", "black", "rev", "pc_deg", "mc_deg", "ns_deg", "mc==black", "ns==rev"];

    pub fn cells(&self) -> Vec<String> {
        let r = &self.report;
        vec![
            self.graph.clone(),
            r.bw.to_string(),
            r.black.to_string(),
            r.rev.to_string(),
            r.pc_deg.to_string(),
            r.mc_deg.to_string(),
            r.ns_deg.to_string(),
            self.mc_eq_black.to_string(),
            self.ns_eq_rev.to_string(),
        ]
    }
}

/// One row per corpus graph, in corpus order.
pub fn equalities(spec: &CorpusSpec, field: FieldSpec, opts: &SearchOptions) -> Result<Vec<EqualityRow>, TranslateError> {
    corpus(spec)
        .into_par_iter()
        .map(|g| {
            let report = price_report(&g.dag, field, opts)?;
            Ok(EqualityRow { graph: g.name, report, mc_eq_black: report.mc_matches_black(), ns_eq_rev: report.ns_matches_rev() })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TradeoffRow {
    pub graph: String,
    pub variant: GameVariant,
    pub space: usize,
    pub min_time: usize,
}

impl TradeoffRow {
    pub const HEADER: [&'static str; 4] = ["graph", "variant", "space", "min_time"];

    pub fn cells(&self) -> Vec<String> {
        vec![self.graph.clone(), self.variant.to_string(), self.space.to_string(), self.min_time.to_string()]
    }
}

/// Frontier points of every corpus graph under each requested variant,
/// grouped by graph in corpus order.
pub fn tradeoff(spec: &CorpusSpec, variants: &[GameVariant], opts: &SearchOptions) -> Result<Vec<TradeoffRow>, PebblingError> {
    let jobs: Vec<(NamedDag, GameVariant)> =
        corpus(spec).into_iter().flat_map(|g| variants.iter().map(move |&v| (g.clone(), v))).collect();
    let per_job: Vec<Vec<TradeoffRow>> = jobs
        .into_par_iter()
        .map(|(g, variant)| {
            let points: Vec<FrontierPoint> = tradeoff_frontier(&g.dag, variant, opts)?;
            Ok(points
                .into_iter()
                .map(|p| TradeoffRow { graph: g.name.clone(), variant, space: p.space, min_time: p.min_time })
                .collect())
        })
        .collect::<Result<_, PebblingError>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

/// Tab-separated table with a header line.
pub fn to_tsv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join("\t"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_PRIME;

    const SMALL: CorpusSpec = CorpusSpec { nmax: 3, path_max: 4, pyramid_max: 1, tree_max: 1 };

    #[test]
    fn corpus_order_and_names() {
        let names: Vec<String> = corpus(&SMALL).into_iter().map(|g| g.name).collect();
        assert_eq!(
            names,
            ["dag1_0", "dag2_0", "dag3_0", "dag3_1", "dag3_2", "path_2", "path_3", "path_4", "pyramid_1", "binary_tree_1"]
        );
    }

    #[test]
    fn small_equalities_hold() {
        let rows = equalities(&SMALL, FieldSpec::Prime(DEFAULT_PRIME), &SearchOptions::default()).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.iter().all(|r| r.mc_eq_black && r.ns_eq_rev));
        let again = equalities(&SMALL, FieldSpec::Prime(DEFAULT_PRIME), &SearchOptions::default()).unwrap();
        assert_eq!(rows, again);
        let tsv = to_tsv(&EqualityRow::HEADER, rows.iter().map(EqualityRow::cells));
        assert!(tsv.starts_with("graph\tbw\tblack\trev\tpc_deg\tmc_deg\tns_deg\tmc==black\tns==rev\n"));
        assert!(tsv.contains("path_4\t2\t2\t3\t"));
    }

    #[test]
    fn tradeoff_rows_are_grouped() {
        let rows = tradeoff(&SMALL, &[GameVariant::Black, GameVariant::Reversible], &SearchOptions::default()).unwrap();
        let first_path = rows.iter().position(|r| r.graph == "path_4").unwrap();
        assert_eq!(rows[first_path].variant, GameVariant::Black);
        for w in rows.windows(2) {
            if w[0].graph == w[1].graph && w[0].variant == w[1].variant {
                assert!(w[0].space < w[1].space && w[0].min_time >= w[1].min_time);
            }
        }
    }
}
