//! The report document: everything `analyze` computes for one input.

use cohomlab::cohomology::{frolicher_report, pair_report, CohomReport, PairReport, Table};
use cohomlab::complexes::DoubleComplex;
use cohomlab::geometry::{complex_bicomplex, symplectic_pair, symplectic_report, type_n_view, SymplecticReport, TypeNView};
use cohomlab::spectral::{degenerates_at, doub_degeneration_check, pages, r_stab, DoubDegeneration, SpectralPage, Which};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::input::{Input, LieInput};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    DoubleComplex,
    BidiffPair,
    LieAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSection {
    pub r_stab: usize,
    pub first: Vec<SpectralPage>,
    pub second: Vec<SpectralPage>,
    pub first_degenerates_at_1: bool,
    pub second_degenerates_at_1: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSection {
    pub n: usize,
    pub cohomology: CohomReport,
    pub type_n: TypeNView,
    /// Whether the first spectral sequence (Hodge–Frölicher) degenerates at E₁.
    pub e1_degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometrySection {
    pub dim: usize,
    pub nilpotent: bool,
    pub lower_central_series: Vec<usize>,
    /// Chevalley–Eilenberg cohomology of the real algebra.
    pub de_rham: Table<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<SymplecticReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub source: String,
    pub input_sha256: String,
    pub kind: InputKind,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<CohomReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_n: Option<TypeNView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doub: Option<DoubDegeneration>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometrySection>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    /// Compute spectral pages up to this r (capped at r_stab).
    pub spectral: Option<usize>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn engine<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(vec![e.to_string()])
}

fn spectral_section(dc: &DoubleComplex, r_max: usize) -> Result<SpectralSection, CliError> {
    Ok(SpectralSection {
        r_stab: r_stab(dc),
        first: pages(dc, Which::First, r_max.max(1)).map_err(engine)?,
        second: pages(dc, Which::Second, r_max.max(1)).map_err(engine)?,
        first_degenerates_at_1: degenerates_at(dc, Which::First, 1).map_err(engine)?,
        second_degenerates_at_1: degenerates_at(dc, Which::Second, 1).map_err(engine)?,
    })
}

fn geometry_section(l: &LieInput, opts: &AnalyzeOptions, warnings: &mut Vec<String>) -> Result<GeometrySection, CliError> {
    let g = &l.algebra;
    let nilpotent = g.is_nilpotent();
    warnings.push("Lie algebra results are invariant-model cohomology (left-invariant forms)".into());
    if !nilpotent {
        warnings.push(
            "algebra is not nilpotent: invariant-model cohomology may differ from the cohomology of a compact quotient"
                .into(),
        );
    }
    let de_rham: Table<i32> = g.ce_complex().map_err(engine)?.cohomology().into_iter().collect();
    let symplectic = match &l.omega {
        Some(w) => Some(symplectic_report(&symplectic_pair(g, w).map_err(engine)?).map_err(engine)?),
        None => None,
    };
    let complex = match &l.complex {
        Some(cs) => {
            let dc = complex_bicomplex(cs).map_err(engine)?;
            Some(ComplexSection {
                n: cs.n(),
                cohomology: frolicher_report(&dc).map_err(engine)?,
                type_n: type_n_view(&dc).map_err(engine)?,
                e1_degenerate: degenerates_at(&dc, Which::First, 1).map_err(engine)?,
                spectral: opts.spectral.map(|r| spectral_section(&dc, r)).transpose()?,
            })
        }
        None => None,
    };
    Ok(GeometrySection {
        dim: g.dim(),
        nilpotent,
        lower_central_series: g.lower_central_series(),
        de_rham,
        symplectic,
        complex,
    })
}

pub fn analyze(input: &Input, source: &str, raw: &[u8], opts: &AnalyzeOptions) -> Result<ReportDocument, CliError> {
    let mut doc = ReportDocument {
        version: env!("CARGO_PKG_VERSION").to_string(),
        source: source.to_string(),
        input_sha256: sha256_hex(raw),
        kind: InputKind::DoubleComplex,
        warnings: vec![],
        cohomology: None,
        type_n: None,
        pair: None,
        doub: None,
        spectral: None,
        geometry: None,
    };
    match input {
        Input::Double(dc) => {
            doc.cohomology = Some(frolicher_report(dc).map_err(engine)?);
            doc.type_n = Some(type_n_view(dc).map_err(engine)?);
            doc.spectral = opts.spectral.map(|r| spectral_section(dc, r)).transpose()?;
        }
        Input::Pair(bp) => {
            doc.kind = InputKind::BidiffPair;
            doc.pair = Some(pair_report(bp).map_err(engine)?);
            match doub_degeneration_check(bp) {
                Ok(d) => doc.doub = Some(d),
                Err(e) => doc.warnings.push(format!("canonical double complex not analysed: {e}")),
            }
            if opts.spectral.is_some() {
                doc.warnings.push("spectral pages need a double complex; skipped for a graded pair".into());
            }
        }
        Input::Lie(l) => {
            doc.kind = InputKind::LieAlgebra;
            doc.geometry = Some(geometry_section(l, opts, &mut doc.warnings)?);
        }
    }
    Ok(doc)
}
