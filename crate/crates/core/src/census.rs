//! Batch classification of snark lists and single-graph reports.
//!
//! For each graph the census looks for the best pseudo-matching class,
//! trying perfect matchings first and then PPMs with claws, and stopping at
//! the first planarizing one.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::coloring::is_snark;
use crate::connectivity::cyclic_edge_connectivity;
use crate::cycles::{cdc_from_ccd, find_ccd, is_dominating, is_stable, verify_cycle_set};
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, Multigraph};
use crate::graph6::parse_graph6;
use crate::minors::{has_k5_minor, is_planar};
use crate::ppm::{classify_ppm, complement_cycles, contract, for_each_ppm, PpmClass, PpmFilter, PseudoMatching};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    Pm,
    Ppm,
    Both,
}

impl CensusMode {
    fn pm_columns(self) -> bool {
        self != CensusMode::Ppm
    }

    fn ppm_columns(self) -> bool {
        self != CensusMode::Pm
    }
}

impl std::str::FromStr for CensusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pm" => Ok(CensusMode::Pm),
            "ppm" => Ok(CensusMode::Ppm),
            "both" => Ok(CensusMode::Both),
            _ => Err(Error::Parameter(format!("unknown census mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub mode: CensusMode,
    pub workers: usize,
    /// Time allowed per graph; `None` for no limit.
    pub timeout: Option<Duration>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { mode: CensusMode::Both, workers: 1, timeout: None }
    }
}

/// Counts for one order. Columns outside the chosen mode are `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub s: usize,
    pub no_planarizing_pm: Option<usize>,
    pub no_planarizing_ppm: Option<usize>,
    pub no_k5_free_pm: Option<usize>,
    pub no_k5_free_ppm: Option<usize>,
}

impl CensusRow {
    pub const HEADER: &'static str = "n\ts\tno_planarizing_pm\tno_planarizing_ppm\tno_k5_free_pm\tno_k5_free_ppm";

    pub fn check(&self) -> Result<()> {
        let le = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        };
        let s = Some(self.s);
        let ok = le(self.no_planarizing_ppm, self.no_planarizing_pm)
            && le(self.no_planarizing_pm, s)
            && le(self.no_planarizing_ppm, s)
            && le(self.no_k5_free_ppm, self.no_k5_free_pm)
            && le(self.no_k5_free_pm, s)
            && le(self.no_k5_free_ppm, s)
            && le(self.no_k5_free_pm, self.no_planarizing_pm)
            && le(self.no_k5_free_ppm, self.no_planarizing_ppm);
        if ok {
            Ok(())
        } else {
            Err(Error::Invariant(format!("census row breaks its inequalities: {self:?}")))
        }
    }

    pub fn to_tsv(&self) -> String {
        let col = |c: Option<usize>| c.map_or_else(|| "-".to_string(), |v| v.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.s,
            col(self.no_planarizing_pm),
            col(self.no_planarizing_ppm),
            col(self.no_k5_free_pm),
            col(self.no_k5_free_ppm)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Best classes over perfect matchings and over all PPMs; a graph with
    /// no perfect matching at all has `pm == None`.
    Decided { pm: Option<PpmClass>, ppm: Option<PpmClass>, witness: Option<PseudoMatching> },
    NotSnark,
    Undecided(String),
}

#[derive(Clone, Debug)]
pub struct GraphDetail {
    /// 1-based line in the input.
    pub line: usize,
    pub graph6: String,
    pub order: usize,
    pub girth: Option<usize>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub mode: CensusMode,
    pub rows: Vec<CensusRow>,
    pub details: Vec<GraphDetail>,
    pub min_girth: Option<usize>,
}

impl CensusReport {
    /// False when some graph timed out and was left out of the counts.
    pub fn complete(&self) -> bool {
        self.undecided().next().is_none()
    }

    pub fn undecided(&self) -> impl Iterator<Item = &GraphDetail> {
        self.details.iter().filter(|d| matches!(d.verdict, Verdict::Undecided(_)))
    }

    pub fn non_snarks(&self) -> impl Iterator<Item = &GraphDetail> {
        self.details.iter().filter(|d| d.verdict == Verdict::NotSnark)
    }

    /// The girth convention the data set appears to follow.
    pub fn convention(&self) -> &'static str {
        match self.min_girth {
            Some(g) if g >= 5 => "girth >= 5 (girth-4 snarks absent; counts may fall short of the girth-4 convention)",
            Some(_) => "girth 4 permitted",
            None => "empty data set",
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", CensusRow::HEADER).unwrap();
        for row in &self.rows {
            writeln!(out, "{}", row.to_tsv()).unwrap();
        }
        out
    }

    /// Detail text per order: one line per graph with its graph6 string,
    /// best classes and the witness PPM as sidecar lines joined by `;`.
    pub fn detail_files(&self) -> BTreeMap<usize, String> {
        let mut files: BTreeMap<usize, String> = BTreeMap::new();
        for d in &self.details {
            let out = files
                .entry(d.order)
                .or_insert_with(|| "line\tgraph6\tstatus\tbest_pm\tbest_ppm\twitness\n".to_string());
            let class = |c: &Option<PpmClass>| c.map_or_else(|| "-".to_string(), |c| c.to_string());
            let (status, pm, ppm, witness) = match &d.verdict {
                Verdict::Decided { pm, ppm, witness } => {
                    let g = parse_graph6(&d.graph6).expect("detail graphs were parsed once already");
                    let w = witness
                        .as_ref()
                        .map_or_else(|| "-".to_string(), |m| m.to_sidecar(&g).trim_end().replace('\n', ";"));
                    ("decided".to_string(), class(pm), class(ppm), w)
                }
                Verdict::NotSnark => ("not_snark".into(), "-".into(), "-".into(), "-".into()),
                Verdict::Undecided(why) => (format!("undecided: {why}"), "-".into(), "-".into(), "-".into()),
            };
            let (pm, ppm) = match self.mode {
                CensusMode::Pm => (pm, "-".to_string()),
                CensusMode::Ppm => ("-".to_string(), ppm),
                CensusMode::Both => (pm, ppm),
            };
            writeln!(out, "{}\t{}\t{status}\t{pm}\t{ppm}\t{witness}", d.line, d.graph6).unwrap();
        }
        files
    }
}

/// Runs the census over graph6 text. Parse failures are fatal and name the
/// line; graphs that are not snarks are listed and left out of the counts.
pub fn census(text: &str, options: &CensusOptions) -> Result<CensusReport> {
    let mut inputs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with(">>graph6<<") && line.len() == 10 {
            continue;
        }
        let body = line.strip_prefix(">>graph6<<").unwrap_or(line);
        let g = parse_graph6(body).map_err(|e| Error::Parameter(format!("line {}: {e}", i + 1)))?;
        inputs.push((i + 1, body.to_string(), g));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::Parameter(format!("worker pool: {e}")))?;
    let details: Vec<GraphDetail> = pool.install(|| {
        inputs
            .par_iter()
            .map(|(line, g6, g)| GraphDetail {
                line: *line,
                graph6: g6.clone(),
                order: g.vertex_count(),
                girth: g.girth(),
                verdict: judge(g, options),
            })
            .collect()
    });
    let mut rows: BTreeMap<usize, CensusRow> = BTreeMap::new();
    for d in &details {
        let Verdict::Decided { pm, ppm, .. } = &d.verdict else {
            continue;
        };
        let row = rows.entry(d.order).or_insert_with(|| CensusRow {
            n: d.order,
            no_planarizing_pm: options.mode.pm_columns().then_some(0),
            no_k5_free_pm: options.mode.pm_columns().then_some(0),
            no_planarizing_ppm: options.mode.ppm_columns().then_some(0),
            no_k5_free_ppm: options.mode.ppm_columns().then_some(0),
            ..Default::default()
        });
        row.s += 1;
        let bump = |col: &mut Option<usize>, hit: bool| {
            if let Some(c) = col {
                *c += hit as usize;
            }
        };
        let not = |c: &Option<PpmClass>, better: PpmClass| c.is_none_or(|c| c > better);
        bump(&mut row.no_planarizing_pm, not(pm, PpmClass::Planarizing));
        bump(&mut row.no_k5_free_pm, not(pm, PpmClass::K5MinorFreeOnly));
        bump(&mut row.no_planarizing_ppm, not(ppm, PpmClass::Planarizing));
        bump(&mut row.no_k5_free_ppm, not(ppm, PpmClass::K5MinorFreeOnly));
    }
    let report = CensusReport {
        mode: options.mode,
        rows: rows.into_values().collect(),
        min_girth: details.iter().filter_map(|d| d.girth).min(),
        details,
    };
    for row in &report.rows {
        row.check()?;
    }
    reverify(&report)?;
    Ok(report)
}

/// Every graph without a planarizing PPM is checked again by classifying
/// each of its PPMs independently.
fn reverify(report: &CensusReport) -> Result<()> {
    if !report.mode.ppm_columns() {
        return Ok(());
    }
    report.details.par_iter().try_for_each(|d| {
        let Verdict::Decided { ppm, .. } = &d.verdict else {
            return Ok(());
        };
        if *ppm == Some(PpmClass::Planarizing) {
            return Ok(());
        }
        let g = parse_graph6(&d.graph6)?;
        let mut found = Ok(None);
        for_each_ppm(&g, PpmFilter::default(), |m| match classify_ppm(&g, m) {
            Ok(PpmClass::Planarizing) => {
                found = Ok(Some(m.clone()));
                ControlFlow::Break(())
            }
            Ok(_) => ControlFlow::Continue(()),
            Err(e) => {
                found = Err(e);
                ControlFlow::Break(())
            }
        });
        match found? {
            Some(_) => Err(Error::Invariant(format!("line {}: re-verification found a planarizing PPM", d.line))),
            None => Ok(()),
        }
    })
}

fn judge(g: &Multigraph, options: &CensusOptions) -> Verdict {
    let Ok(cubic) = CubicGraph::new_simple(g.clone()) else {
        return Verdict::NotSnark;
    };
    match is_snark(&cubic) {
        Ok(true) => {}
        Ok(false) => return Verdict::NotSnark,
        Err(e) => return Verdict::Undecided(e.to_string()),
    }
    let deadline = options.timeout.map(|t| Instant::now() + t);
    match best_classes(g, options.mode, deadline) {
        Ok((pm, ppm, witness)) => Verdict::Decided { pm, ppm, witness },
        Err(e) => Verdict::Undecided(e.to_string()),
    }
}

/// Best class over perfect matchings, then over all PPMs, stopping at the
/// first planarizing one. The witness is a PPM attaining the best class.
#[allow(clippy::type_complexity)]
fn best_classes(
    g: &Multigraph,
    mode: CensusMode,
    deadline: Option<Instant>,
) -> Result<(Option<PpmClass>, Option<PpmClass>, Option<PseudoMatching>)> {
    let mut best: Option<(PpmClass, PseudoMatching)> = None;
    let scan = |filter: PpmFilter, best: &mut Option<(PpmClass, PseudoMatching)>| -> Result<()> {
        let mut failure = None;
        for_each_ppm(g, filter, |m| {
            if deadline.is_some_and(|d| Instant::now() > d) {
                failure = Some(Error::Undecided("per-graph time budget exhausted".into()));
                return ControlFlow::Break(());
            }
            let class = match rank(g, m, best.as_ref().map(|b| b.0)) {
                Ok(c) => c,
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            };
            if best.as_ref().is_none_or(|b| class < b.0) {
                *best = Some((class, m.clone()));
            }
            if class == PpmClass::Planarizing {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        failure.map_or(Ok(()), Err)
    };
    scan(PpmFilter { matchings_only: true, ..Default::default() }, &mut best)?;
    let pm = best.as_ref().map(|b| b.0);
    if mode.ppm_columns() && pm != Some(PpmClass::Planarizing) {
        scan(PpmFilter { claws_required: true, ..Default::default() }, &mut best)?;
    }
    let ppm = best.as_ref().map(|b| b.0);
    Ok((pm, ppm, best.map(|b| b.1)))
}

/// Class of `m`, skipping the K5 search when it cannot beat `best`.
fn rank(g: &Multigraph, m: &PseudoMatching, best: Option<PpmClass>) -> Result<PpmClass> {
    let q = contract(g, m)?.graph;
    if is_planar(&q).is_some() {
        return Ok(PpmClass::Planarizing);
    }
    if best.is_some_and(|b| b <= PpmClass::K5MinorFreeOnly) {
        return Ok(PpmClass::Neither);
    }
    Ok(if has_k5_minor(&q)? { PpmClass::Neither } else { PpmClass::K5MinorFreeOnly })
}

/// What `analyze` found out about one graph.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub order: usize,
    pub snark: bool,
    /// Smallest cyclic edge cut, capped at 5 (`None` means at least 6 or
    /// no cyclic cut at all).
    pub cyclic_connectivity: Option<usize>,
    pub ppm: Option<PseudoMatching>,
    pub class: Option<PpmClass>,
    /// Vertex count, edge count and degree-6 vertices of `G/M`.
    pub quotient: Option<(usize, usize, usize)>,
    pub ccd_found: bool,
    /// Number of cycles in the verified double cover, if one was built.
    pub cdc_cycles: Option<usize>,
    /// Length, dominating and stable flags of each complement cycle.
    pub complement: Vec<(usize, bool, Option<bool>)>,
}

impl Analysis {
    pub fn summary(&self) -> String {
        let class = match self.class {
            Some(PpmClass::Planarizing) => "planarizing".to_string(),
            Some(PpmClass::K5MinorFreeOnly) => "not planarizing (K5-minor-free)".to_string(),
            Some(PpmClass::Neither) => "not planarizing (has a K5 minor)".to_string(),
            None => return "no perfect pseudo-matching".to_string(),
        };
        let ccd = if self.ccd_found { "CCD found" } else { "no CCD" };
        match self.cdc_cycles {
            Some(k) => format!("{class}; {ccd}; CDC verified ({k} cycles)"),
            None => format!("{class}; {ccd}"),
        }
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order: {}", self.order)?;
        writeln!(f, "snark: {}", if self.snark { "yes" } else { "no" })?;
        match self.cyclic_connectivity {
            Some(k) => writeln!(f, "cyclic edge connectivity: {k}")?,
            None => writeln!(f, "cyclic edge connectivity: at least 6 or no cyclic cut")?,
        }
        if let Some(m) = &self.ppm {
            writeln!(f, "ppm: {} components, {} claws", m.components().len(), m.claw_count())?;
        }
        if let Some((v, e, six)) = self.quotient {
            writeln!(f, "quotient: {v} vertices, {e} edges, {six} of degree 6")?;
        }
        for (i, (len, dom, stable)) in self.complement.iter().enumerate() {
            let stable = match stable {
                Some(true) => "stable",
                Some(false) => "not stable",
                None => "stability undecided",
            };
            let dom = if *dom { "dominating" } else { "not dominating" };
            writeln!(f, "complement cycle {i}: length {len}, {dom}, {stable}")?;
        }
        write!(f, "{}", self.summary())
    }
}

/// Analyses `g` with `m`, or with the best PPM the census search finds.
pub fn analyze(g: &Multigraph, m: Option<&PseudoMatching>) -> Result<Analysis> {
    let cubic = CubicGraph::new(g.clone())?;
    let snark = cubic.is_simple() && is_snark(&cubic)?;
    let cyclic_connectivity = if g.is_connected() { cyclic_edge_connectivity(g, 5)? } else { None };
    let ppm = match m {
        Some(m) => Some(m.clone()),
        None => best_classes(g, CensusMode::Both, None)?.2,
    };
    let mut out = Analysis {
        order: g.vertex_count(),
        snark,
        cyclic_connectivity,
        ppm: ppm.clone(),
        class: None,
        quotient: None,
        ccd_found: false,
        cdc_cycles: None,
        complement: Vec::new(),
    };
    let Some(m) = ppm else {
        return Ok(out);
    };
    let cg = contract(g, &m)?;
    let q = &cg.graph;
    out.quotient = Some((q.vertex_count(), q.edge_count(), (0..q.vertex_count()).filter(|&v| q.degree(v) == 6).count()));
    out.class = Some(classify_ppm(g, &m)?);
    out.complement = complement_cycles(g, &m)
        .iter()
        .map(|c| (c.len(), is_dominating(g, c), is_stable(g, c).ok()))
        .collect();
    if let Some(ccd) = find_ccd(&cg) {
        out.ccd_found = true;
        let cdc = cdc_from_ccd(g, &m, &ccd)?;
        verify_cycle_set(g, &cdc)?;
        out.cdc_cycles = Some(cdc.len());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::petersen;
    use crate::graph6::write_graph6;

    fn petersen_line() -> String {
        write_graph6(petersen().graph.graph()).unwrap()
    }

    #[test]
    fn petersen_row() {
        let r = census(&petersen_line(), &CensusOptions::default()).unwrap();
        assert_eq!(
            r.rows,
            vec![CensusRow {
                n: 10,
                s: 1,
                no_planarizing_pm: Some(1),
                no_planarizing_ppm: Some(0),
                no_k5_free_pm: Some(1),
                no_k5_free_ppm: Some(0),
            }]
        );
        assert!(r.complete());
        assert_eq!(r.min_girth, Some(5));
    }

    #[test]
    fn empty_input_gives_empty_report() {
        let r = census("", &CensusOptions::default()).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.to_tsv(), format!("{}\n", CensusRow::HEADER));
    }

    #[test]
    fn non_snarks_are_listed_not_counted() {
        let k4 = write_graph6(&crate::graph::fixtures::k4()).unwrap();
        let text = format!("{k4}\n{}\n", petersen_line());
        let r = census(&text, &CensusOptions { mode: CensusMode::Pm, ..Default::default() }).unwrap();
        assert_eq!(r.non_snarks().map(|d| d.line).collect::<Vec<_>>(), vec![1]);
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].no_planarizing_ppm, None);
        assert_eq!(r.min_girth, Some(3));
    }

    #[test]
    fn bad_line_is_reported() {
        let err = census("I?h]@eOWG\n!!\n", &CensusOptions::default()).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn zero_timeout_leaves_graph_undecided() {
        let opts = CensusOptions { timeout: Some(Duration::ZERO), ..Default::default() };
        let r = census(&petersen_line(), &opts).unwrap();
        assert!(!r.complete());
        assert!(r.rows.is_empty());
    }

    #[test]
    fn parallel_report_matches_serial() {
        let text = format!("{0}\n{0}\n{0}\n", petersen_line());
        let one = census(&text, &CensusOptions::default()).unwrap();
        let four = census(&text, &CensusOptions { workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one.to_tsv(), four.to_tsv());
        assert_eq!(one.detail_files(), four.detail_files());
    }

    #[test]
    fn row_inequalities() {
        let bad = CensusRow { n: 10, s: 1, no_planarizing_pm: Some(0), no_planarizing_ppm: Some(1), ..Default::default() };
        assert!(bad.check().is_err());
    }

    #[test]
    fn petersen_analysis() {
        let p = petersen();
        let a = analyze(p.graph.graph(), Some(&p.designated_ppm)).unwrap();
        assert_eq!(a.summary(), "planarizing; CCD found; CDC verified (5 cycles)");
        assert!(a.snark);
        assert_eq!(a.cyclic_connectivity, Some(5));
        assert_eq!(a.complement.len(), 1);
        assert_eq!(a.quotient, Some((4, 9, 1)));
        assert!(a.complement[0].1);
    }

    #[test]
    fn petersen_matching_is_not_planarizing() {
        let p = petersen();
        let g = p.graph.graph();
        let m = crate::ppm::enumerate_ppms(g, PpmFilter { matchings_only: true, ..Default::default() }).remove(0);
        assert!(analyze(g, Some(&m)).unwrap().summary().starts_with("not planarizing"));
    }

    #[test]
    fn non_cubic_input_is_an_error() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(analyze(&g, None), Err(Error::Structure(_))));
    }
}
