//! JSON documents, certificate checking and the shipped fixture corpus.

mod certs;
mod corpus;
mod docs;

pub use certs::{check_report, CellCertificateDoc, CheckSummary, GroebnerDoc};
pub use corpus::{
    check_codim1, check_euler, check_folding, check_highest_weight, check_interval_sizes, check_lift, check_poincare,
    corpus_text, s2w0_poincare_formula, supports_up_to, verify_corpus, CorpusLine, CorpusSummary, CORPORA,
};
pub use docs::{run, Outcome, Query, QueryDocument, ReportDocument, RunOptions, Timings, TOOL, VERSION};
