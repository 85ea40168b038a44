//! Batch verification of the throttling theorems over graph corpora.

mod checks;
pub mod naive;
mod spectral;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::forcing::HopSemantics;
use crate::graph::{emit_graph6, enumerate_connected, Graph};

pub use spectral::{max_spectral_graphs, spectral_radius, SPECTRAL_MAX_VERTICES, SPECTRAL_TIE_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "thm-th-eq-n")]
    ThEqN,
    #[serde(rename = "thm-thplus-high")]
    ThPlusHigh,
    #[serde(rename = "thm-psd-char")]
    PsdChar,
    #[serde(rename = "thm-psd-floor-char")]
    PsdFloorChar,
    #[serde(rename = "cor-spanning-supergraphs")]
    SpanningSupergraphs,
    #[serde(rename = "lem-savings")]
    Savings,
    #[serde(rename = "lem-contraction")]
    Contraction,
    #[serde(rename = "thm-finite")]
    Finite,
    #[serde(rename = "thm-accelerator")]
    Accelerator,
    #[serde(rename = "cor-exact")]
    Exact,
    #[serde(rename = "cor-tree-monotone")]
    TreeMonotone,
    #[serde(rename = "cor-spectral")]
    Spectral,
    /// Looks for graphs with `th = n` that are not spectrally extremal.
    /// Reports what it finds and never fails.
    #[serde(rename = "scan-spectral-converse")]
    SpectralConverseScan,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::ThEqN,
        TheoremId::ThPlusHigh,
        TheoremId::PsdChar,
        TheoremId::PsdFloorChar,
        TheoremId::SpanningSupergraphs,
        TheoremId::Savings,
        TheoremId::Contraction,
        TheoremId::Finite,
        TheoremId::Accelerator,
        TheoremId::Exact,
        TheoremId::TreeMonotone,
        TheoremId::Spectral,
        TheoremId::SpectralConverseScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::ThEqN => "thm-th-eq-n",
            TheoremId::ThPlusHigh => "thm-thplus-high",
            TheoremId::PsdChar => "thm-psd-char",
            TheoremId::PsdFloorChar => "thm-psd-floor-char",
            TheoremId::SpanningSupergraphs => "cor-spanning-supergraphs",
            TheoremId::Savings => "lem-savings",
            TheoremId::Contraction => "lem-contraction",
            TheoremId::Finite => "thm-finite",
            TheoremId::Accelerator => "thm-accelerator",
            TheoremId::Exact => "cor-exact",
            TheoremId::TreeMonotone => "cor-tree-monotone",
            TheoremId::Spectral => "cor-spectral",
            TheoremId::SpectralConverseScan => "scan-spectral-converse",
        }
    }

    /// Largest graph order each checker accepts.
    pub fn max_vertices(self) -> usize {
        match self {
            TheoremId::ThEqN | TheoremId::ThPlusHigh | TheoremId::Savings => 10,
            TheoremId::PsdChar => 8,
            TheoremId::PsdFloorChar | TheoremId::SpanningSupergraphs => crate::throttle::SUPERGRAPH_MAX_VERTICES,
            TheoremId::Contraction | TheoremId::Finite | TheoremId::Accelerator | TheoremId::Exact => 9,
            TheoremId::TreeMonotone => 9,
            TheoremId::Spectral | TheoremId::SpectralConverseScan => SPECTRAL_MAX_VERTICES,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        TheoremId::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            let ids: Vec<&str> = TheoremId::ALL.iter().map(|t| t.name()).collect();
            Error::Usage(format!("unknown theorem id {s:?} (known: {})", ids.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusDescriptor {
    pub source: String,
    pub nmin: usize,
    pub nmax: usize,
    pub graphs: usize,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub descriptor: CorpusDescriptor,
    pub graphs: Vec<Graph>,
}

impl Corpus {
    /// Every connected graph with `nmin..=nmax` vertices, by order and then
    /// canonical form.
    pub fn connected(nmin: usize, nmax: usize) -> Result<Corpus> {
        let nmin = nmin.max(1);
        let mut graphs = Vec::new();
        for n in nmin..=nmax {
            graphs.extend(enumerate_connected(n)?);
        }
        let descriptor = CorpusDescriptor { source: "enumerated-connected".into(), nmin, nmax, graphs: graphs.len() };
        Ok(Corpus { descriptor, graphs })
    }

    pub fn from_graphs(source: impl Into<String>, graphs: Vec<Graph>) -> Corpus {
        let nmin = graphs.iter().map(|g| g.n()).min().unwrap_or(0);
        let nmax = graphs.iter().map(|g| g.n()).max().unwrap_or(0);
        Corpus { descriptor: CorpusDescriptor { source: source.into(), nmin, nmax, graphs: graphs.len() }, graphs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyParams {
    /// Largest `k` for the accelerator and exactness checks.
    pub kmax: usize,
    /// Random trials for the contraction lemma.
    pub trials: usize,
    pub seed: u64,
    pub semantics: HopSemantics,
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { kmax: 1, trials: 500, seed: 0x5eed, semantics: HopSemantics::PerLineage, workers: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Outside the checker's domain (for example a non-tree in the tree
    /// corollary).
    Skip,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
        })
    }
}

/// One checked item: a graph, or a sampled trial / `(n, m)` class for the
/// checkers that are not per-graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub g6: String,
    pub verdict: Verdict,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub g6: String,
    pub details: Value,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub items: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub corpus: CorpusDescriptor,
    pub params: VerifyParams,
    pub records: Vec<Record>,
    pub counterexamples: Vec<Counterexample>,
    pub totals: Totals,
    pub verdict: Verdict,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The summary record (everything except per-item records).
    pub fn summary(&self, with_time: bool) -> Value {
        let mut v = serde_json::json!({
            "summary": true,
            "theorem": self.theorem,
            "corpus": self.corpus,
            "params": self.params,
            "verdict": self.verdict,
            "totals": self.totals,
            "counterexamples": self.counterexamples,
        });
        if with_time {
            v["wall_time_ms"] = serde_json::json!(self.wall_time_ms);
        }
        v
    }

    /// One JSON object per item followed by the summary.
    pub fn to_json_lines(&self, with_time: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary(with_time)).expect("summary serializes"));
        out.push('\n');
        out
    }

    /// Short human-readable summary, e.g. `thm-th-eq-n: pass, 142 graphs`.
    pub fn summary_line(&self) -> String {
        let t = &self.totals;
        let mut s = format!("{}: {}, {} graphs", self.theorem, self.verdict, self.corpus_graphs());
        if t.items != self.corpus_graphs() {
            s.push_str(&format!(", {} items", t.items));
        }
        if t.failed > 0 {
            s.push_str(&format!(", {} counterexamples", t.failed));
        }
        if t.skipped > 0 {
            s.push_str(&format!(", {} skipped", t.skipped));
        }
        s
    }

    fn corpus_graphs(&self) -> usize {
        self.corpus.graphs
    }
}

/// Runs one checker over a corpus.
pub fn verify(theorem: TheoremId, corpus: &Corpus, params: &VerifyParams) -> Result<VerificationReport> {
    let cap = theorem.max_vertices();
    if let Some(g) = corpus.graphs.iter().find(|g| g.n() > cap) {
        return Err(Error::capacity(format!("{theorem} on a {}-vertex graph", g.n()), cap));
    }
    let start = Instant::now();
    let run = || checks::run(theorem, corpus, params);
    let records = match params.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Internal(format!("worker pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let mut totals = Totals { items: records.len(), ..Totals::default() };
    let mut counterexamples = Vec::new();
    for r in &records {
        match r.verdict {
            Verdict::Pass => totals.passed += 1,
            Verdict::Skip => totals.skipped += 1,
            Verdict::Fail => {
                totals.failed += 1;
                counterexamples.push(Counterexample { g6: r.g6.clone(), details: r.data.clone() });
            }
        }
    }
    let verdict = if totals.failed == 0 { Verdict::Pass } else { Verdict::Fail };
    Ok(VerificationReport {
        theorem,
        corpus: corpus.descriptor.clone(),
        params: params.clone(),
        records,
        counterexamples,
        totals,
        verdict,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Applies `check` to every graph in parallel, keeping corpus order.
fn per_graph(corpus: &Corpus, check: impl Fn(&Graph) -> Result<(Verdict, Value)> + Sync) -> Result<Vec<Record>> {
    corpus
        .graphs
        .par_iter()
        .map(|g| {
            let (verdict, data) = check(g)?;
            Ok(Record { g6: g6(g), verdict, data })
        })
        .collect()
}

fn g6(g: &Graph) -> String {
    emit_graph6(g)
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}
