//! Facet-list files and analysis reports.
//!
//! A facet-list document has optional `#` comment lines and one facet per
//! line, written as space-separated positive integers. Blank lines are
//! ignored. [`write`] emits the canonical form: facets sorted
//! lexicographically, vertices ascending, LF line endings, no header.

use std::fmt;

use serde::Serialize;

use crate::complex::{binomial, Complex, FVector, GVector, HVector};
use crate::error::{Error, Result};
use crate::stacked::recognize_stacked;
use crate::verify::{betti_numbers, manifold_evidence, orientability, BettiVector, BundleType, ManifoldEvidence};

pub const REPORT_SCHEMA: &str = "bundletri.analysis/1";

pub fn parse(text: &str) -> Result<Complex> {
    let mut facets: Vec<Vec<i64>> = Vec::new();
    let mut expected: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut facet = Vec::new();
        for token in body.split_whitespace() {
            let label: i64 = token.parse().map_err(|_| Error::Parse {
                line,
                message: format!("{token:?} is not an integer"),
            })?;
            if label <= 0 {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex label {label} is not positive"),
                });
            }
            facet.push(label);
        }
        let mut sorted = facet.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != facet.len() {
            return Err(Error::Parse {
                line,
                message: "facet repeats a vertex".into(),
            });
        }
        match expected {
            None => expected = Some(facet.len()),
            Some(n) if n != facet.len() => {
                return Err(Error::MixedCardinality {
                    found: facet.len(),
                    facet,
                    expected: n,
                    line: Some(line),
                })
            }
            Some(_) => {}
        }
        facets.push(facet);
    }
    if facets.is_empty() {
        return Err(Error::EmptyInput);
    }
    Complex::from_facets(facets)
}

pub fn write(c: &Complex) -> String {
    c.to_string()
}

/// Everything `analyze` computes about a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub n: usize,
    pub f_vector: FVector,
    pub h_vector: HVector,
    pub g_vector: GVector,
    pub euler_characteristic: i64,
    pub klee_residual: Vec<i64>,
    pub betti: BettiVector,
    /// Absent when the complex is not a pseudomanifold.
    pub orientability: Option<BundleType>,
    pub manifold_evidence: ManifoldEvidence,
    pub g2: Option<i64>,
    /// `binom(n+1, 2)`.
    pub g2_bound: i64,
    /// `beta_1 * binom(n+1, 2)`.
    pub g2_betti_bound: i64,
    /// Text form of a stacked-sphere witness, when one was found.
    pub stacked_trace: Option<String>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn with_warnings(mut self, extra: impl IntoIterator<Item = String>) -> Self {
        self.warnings.extend(extra);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn analyze(c: &Complex) -> Result<AnalysisReport> {
    let n = c.n();
    let h_vector = c.h_vector()?;
    let g_vector = c.g_vector()?;
    let klee_residual = c.klee_residual()?;
    let betti = betti_numbers(c)?;
    let evidence = manifold_evidence(c)?;
    let pseudomanifold = evidence.pseudomanifold.passed();
    let orientability = if pseudomanifold { Some(orientability(c)?) } else { None };
    let g2 = g_vector.g2();
    let g2_bound = binomial(n as u64 + 1, 2)?;
    let b1 = betti.as_slice().get(1).copied().unwrap_or(0) as i64;
    let g2_betti_bound = b1.checked_mul(g2_bound).ok_or(Error::Overflow("g2 bound"))?;

    let stacked_trace = if n >= 3 && pseudomanifold && g2 == Some(0) {
        recognize_stacked(c).map(|t| t.to_string())
    } else {
        None
    };

    let mut warnings = Vec::new();
    if let Some(failure) = &evidence.pseudomanifold.failure {
        warnings.push(format!("not a pseudomanifold: {failure}"));
    }
    let bad: Vec<String> = evidence.failed_links().map(|l| l.vertex.to_string()).collect();
    if !bad.is_empty() {
        warnings.push(format!("vertex links fail the sphere check at {}", bad.join(" ")));
    }
    if klee_residual.iter().any(|&r| r != 0) {
        warnings.push("Klee residual is nonzero".into());
    }

    Ok(AnalysisReport {
        schema: REPORT_SCHEMA,
        n,
        f_vector: c.f_vector(),
        h_vector,
        g_vector,
        euler_characteristic: c.euler_characteristic(),
        klee_residual,
        betti,
        orientability,
        manifold_evidence: evidence,
        g2,
        g2_bound,
        g2_betti_bound,
        stacked_trace,
        warnings,
    })
}

fn tuple<T: fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "facet size: {}", self.n)?;
        writeln!(f, "f-vector: {}", tuple(self.f_vector.face_counts()))?;
        writeln!(f, "h-vector: {}", self.h_vector)?;
        writeln!(f, "g-vector: {}", self.g_vector)?;
        writeln!(f, "euler characteristic: {}", self.euler_characteristic)?;
        writeln!(f, "klee residual: {}", tuple(&self.klee_residual))?;
        writeln!(f, "betti: {}", tuple(self.betti.as_slice()))?;
        match self.orientability {
            Some(o) => writeln!(f, "orientability: {o}")?,
            None => writeln!(f, "orientability: undefined")?,
        }
        writeln!(
            f,
            "pseudomanifold: {}",
            if self.manifold_evidence.pseudomanifold.passed() { "yes" } else { "no" }
        )?;
        writeln!(
            f,
            "manifold evidence: {}",
            if self.manifold_evidence.passed() { "pass" } else { "fail" }
        )?;
        match self.g2 {
            Some(g2) => writeln!(
                f,
                "g2: {g2} (binom(n+1,2) = {}, beta_1 * binom(n+1,2) = {})",
                self.g2_bound, self.g2_betti_bound
            )?,
            None => writeln!(f, "g2: undefined")?,
        }
        if let Some(trace) = &self.stacked_trace {
            writeln!(f, "stacked sphere:")?;
            for line in trace.lines() {
                writeln!(f, "  {line}")?;
            }
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
