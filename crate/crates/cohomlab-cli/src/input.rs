//! The JSON input schema. Lie algebra generator indices are 1-based, as in
//! the usual eⁱ notation; everything else uses the engine's degrees as given.

use std::collections::BTreeSet;

use cohomlab::complexes::{BidiffPair, DoubleComplex};
use cohomlab::exactla::{Matrix, Scalar};
use cohomlab::geometry::{ComplexStructure, Form, LieAlgebra, Term};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double_complex: Option<DoubleComplexDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bidiff_pair: Option<BidiffPairDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_algebra: Option<LieAlgebraDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub p: i32,
    pub q: i32,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block {
    pub from: [i32; 2],
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleComplexDoc {
    pub entries: Vec<Entry>,
    #[serde(default)]
    pub d1: Vec<Block>,
    #[serde(default)]
    pub d2: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeEntry {
    pub k: i32,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairBlock {
    pub from: i32,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BidiffPairDoc {
    pub degrees: Vec<DegreeEntry>,
    pub deg1: i32,
    pub deg2: i32,
    #[serde(default)]
    pub d1: Vec<PairBlock>,
    #[serde(default)]
    pub d2: Vec<PairBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub j: usize,
    pub k: usize,
    pub coeff: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Equation {
    pub i: usize,
    pub terms: Vec<TermDoc>,
}

/// dφⁱ on the generators φ¹..φⁿ, φ̄¹..φ̄ⁿ (indices n+1..2n are the conjugates).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexStructureDoc {
    pub n: usize,
    pub structure: Vec<Equation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymplecticDoc {
    pub omega: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraDoc {
    pub dim: usize,
    #[serde(default)]
    pub structure: Vec<Equation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_structure: Option<ComplexStructureDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<SymplecticDoc>,
}

/// A Lie algebra with the optional structures the analysis uses.
#[derive(Debug, Clone)]
pub struct LieInput {
    pub algebra: LieAlgebra,
    pub complex: Option<ComplexStructure>,
    pub omega: Option<Form>,
}

#[derive(Debug, Clone)]
pub enum Input {
    Double(DoubleComplex),
    Pair(BidiffPair),
    Lie(LieInput),
}

pub fn parse(text: &str) -> Result<InputDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

fn validation<T>(msgs: Vec<String>) -> Result<T, CliError> {
    Err(CliError::Validation(msgs))
}

fn to_terms(eq_terms: &[TermDoc], dim: usize, errs: &mut Vec<String>, what: &str) -> Vec<Term> {
    let mut out = Vec::new();
    for t in eq_terms {
        if t.j == 0 || t.k == 0 || t.j > dim || t.k > dim {
            errs.push(format!("{what}: term e^{}∧e^{} out of range 1..={dim}", t.j, t.k));
            continue;
        }
        out.push(Term { j: t.j - 1, k: t.k - 1, coeff: t.coeff.clone() });
    }
    out
}

fn equations(eqs: &[Equation], dim: usize, errs: &mut Vec<String>, what: &str) -> Vec<(usize, Vec<Term>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for eq in eqs {
        if eq.i == 0 || eq.i > dim {
            errs.push(format!("{what}: equation for generator {} out of range 1..={dim}", eq.i));
            continue;
        }
        if !seen.insert(eq.i) {
            errs.push(format!("{what}: generator {} has two equations", eq.i));
        }
        out.push((eq.i - 1, to_terms(&eq.terms, dim, errs, &format!("{what} d{}", eq.i))));
    }
    out
}

fn violations_to_strings(v: &[cohomlab::complexes::Violation]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

impl DoubleComplexDoc {
    pub fn build(&self) -> Result<DoubleComplex, CliError> {
        let mut errs = Vec::new();
        let mut dc = DoubleComplex::new();
        let mut declared = BTreeSet::new();
        for e in &self.entries {
            if !declared.insert((e.p, e.q)) {
                errs.push(format!("bidegree ({},{}) declared twice", e.p, e.q));
            }
            dc.set_dim(e.p, e.q, e.dim);
        }
        for (name, blocks, step) in [("d1", &self.d1, (1, 0)), ("d2", &self.d2, (0, 1))] {
            let mut seen = BTreeSet::new();
            for b in blocks {
                let [p, q] = b.from;
                if !declared.contains(&(p, q)) {
                    errs.push(format!("{name} from ({p},{q}): source bidegree not declared"));
                    continue;
                }
                let to = (p + step.0, q + step.1);
                if !declared.contains(&to) && !b.matrix.is_zero() {
                    errs.push(format!("{name} from ({p},{q}): target bidegree ({},{}) not declared", to.0, to.1));
                    continue;
                }
                if !seen.insert((p, q)) {
                    errs.push(format!("{name} from ({p},{q}) given twice"));
                }
                let m = fit(&b.matrix, dc.get_dim(to.0, to.1), dc.get_dim(p, q));
                if name == "d1" {
                    dc.set_d1(p, q, m);
                } else {
                    dc.set_d2(p, q, m);
                }
            }
        }
        if !errs.is_empty() {
            return validation(errs);
        }
        let v = dc.validate();
        if !v.is_empty() {
            return validation(violations_to_strings(&v));
        }
        Ok(dc)
    }

    pub fn from_complex(dc: &DoubleComplex) -> Self {
        let entries = dc.dims().iter().map(|(&(p, q), &dim)| Entry { p, q, dim }).collect();
        let blocks = |m: &std::collections::BTreeMap<(i32, i32), Matrix>| {
            m.iter()
                .filter(|(_, b)| !b.is_zero())
                .map(|(&(p, q), b)| Block { from: [p, q], matrix: b.clone() })
                .collect()
        };
        DoubleComplexDoc { entries, d1: blocks(dc.d1_blocks()), d2: blocks(dc.d2_blocks()) }
    }
}

/// A 0×n matrix reads back from JSON as 0×0; restore the declared shape.
fn fit(m: &Matrix, rows: usize, cols: usize) -> Matrix {
    if m.rows() == 0 && rows == 0 {
        Matrix::zeros(0, cols)
    } else {
        m.clone()
    }
}

impl BidiffPairDoc {
    pub fn build(&self) -> Result<BidiffPair, CliError> {
        let mut errs = Vec::new();
        let mut bp = BidiffPair::new(self.deg1, self.deg2);
        let mut declared = BTreeSet::new();
        for e in &self.degrees {
            if !declared.insert(e.k) {
                errs.push(format!("degree {} declared twice", e.k));
            }
            bp.set_dim(e.k, e.dim);
        }
        for (name, blocks, deg) in [("d1", &self.d1, self.deg1), ("d2", &self.d2, self.deg2)] {
            let mut seen = BTreeSet::new();
            for b in blocks {
                if !declared.contains(&b.from) {
                    errs.push(format!("{name} from {}: source degree not declared", b.from));
                    continue;
                }
                if !declared.contains(&(b.from + deg)) && !b.matrix.is_zero() {
                    errs.push(format!("{name} from {}: target degree {} not declared", b.from, b.from + deg));
                    continue;
                }
                if !seen.insert(b.from) {
                    errs.push(format!("{name} from {} given twice", b.from));
                }
                let m = fit(&b.matrix, bp.get_dim(b.from + deg), bp.get_dim(b.from));
                if name == "d1" {
                    bp.set_d1(b.from, m);
                } else {
                    bp.set_d2(b.from, m);
                }
            }
        }
        if !errs.is_empty() {
            return validation(errs);
        }
        let v = bp.validate();
        if !v.is_empty() {
            return validation(violations_to_strings(&v));
        }
        Ok(bp)
    }
}

impl LieAlgebraDoc {
    pub fn build(&self) -> Result<LieInput, CliError> {
        let mut errs = Vec::new();
        if self.dim == 0 || self.dim > 16 {
            return validation(vec![format!("dimension {} outside 1..=16", self.dim)]);
        }
        let eqs = equations(&self.structure, self.dim, &mut errs, "structure");
        let complex = self.complex_structure.as_ref().map(|cs| {
            if 2 * cs.n != self.dim {
                errs.push(format!("complex structure has n = {} but the algebra has dimension {}", cs.n, self.dim));
            }
            (cs.n, equations(&cs.structure, 2 * cs.n, &mut errs, "complex_structure"))
        });
        let omega = self.symplectic.as_ref().map(|s| to_terms(&s.omega, self.dim, &mut errs, "omega"));
        if let Some((n, eqs)) = &complex {
            for (i, _) in eqs {
                if *i >= *n {
                    errs.push(format!("complex_structure: give dφⁱ for i ≤ {n} only; conjugates are implied"));
                }
            }
        }
        if !errs.is_empty() {
            return validation(errs);
        }
        let algebra = LieAlgebra::new(self.dim, &eqs).map_err(|e| CliError::Validation(vec![e.to_string()]))?;
        algebra.jacobi_check().map_err(|e| CliError::Validation(vec![e.to_string()]))?;
        let complex = match complex {
            Some((n, eqs)) => {
                let cs = ComplexStructure::new(n, &eqs).map_err(|e| CliError::Validation(vec![e.to_string()]))?;
                cs.integrability_check().map_err(|e| CliError::Validation(vec![format!("complex_structure: {e}")]))?;
                Some(cs)
            }
            None => None,
        };
        let omega = omega.map(|terms| {
            let mut f = Form::new();
            for t in terms {
                cohomlab::geometry::exterior::add_term(&mut f, 1 << t.j | 1 << t.k, if t.j < t.k { t.coeff } else { -t.coeff });
            }
            f
        });
        if let Some(w) = &omega {
            if omega_has_diagonal(&self.symplectic) {
                return validation(vec!["omega: term e^j∧e^j".into()]);
            }
            cohomlab::geometry::symplectic_pair(&algebra, w).map_err(|e| CliError::Validation(vec![format!("omega: {e}")]))?;
        }
        Ok(LieInput { algebra, complex, omega })
    }
}

fn omega_has_diagonal(s: &Option<SymplecticDoc>) -> bool {
    s.as_ref().is_some_and(|s| s.omega.iter().any(|t| t.j == t.k))
}

impl InputDocument {
    pub fn build(&self) -> Result<Input, CliError> {
        match (&self.double_complex, &self.bidiff_pair, &self.lie_algebra) {
            (Some(d), None, None) => Ok(Input::Double(d.build()?)),
            (None, Some(b), None) => Ok(Input::Pair(b.build()?)),
            (None, None, Some(l)) => Ok(Input::Lie(l.build()?)),
            _ => Err(CliError::Parse("expected exactly one of double_complex, bidiff_pair, lie_algebra".into())),
        }
    }

    pub fn double(dc: &DoubleComplex) -> Self {
        InputDocument { double_complex: Some(DoubleComplexDoc::from_complex(dc)), bidiff_pair: None, lie_algebra: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cohomlab::complexes::fixtures;

    #[test]
    fn double_complex_round_trip() {
        for dc in [fixtures::dot(), fixtures::square(), fixtures::hseg(), fixtures::zigzag3()] {
            let text = serde_json::to_string(&InputDocument::double(&dc)).unwrap();
            match parse(&text).unwrap().build().unwrap() {
                Input::Double(back) => assert_eq!(back, dc),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn rejects_undeclared_and_bad_relations() {
        let doc = r#"{"double_complex": {"entries": [{"p":0,"q":0,"dim":1}], "d1": [{"from":[0,0], "matrix":[["1"]]}]}}"#;
        assert!(matches!(parse(doc).unwrap().build(), Err(CliError::Validation(_))));
        let doc = r#"{"double_complex": {"entries": [{"p":0,"q":0,"dim":1},{"p":1,"q":0,"dim":1},{"p":0,"q":1,"dim":1},{"p":1,"q":1,"dim":1}],
            "d1": [{"from":[0,0],"matrix":[["1"]]},{"from":[0,1],"matrix":[["1"]]}],
            "d2": [{"from":[0,0],"matrix":[["1"]]},{"from":[1,0],"matrix":[["1"]]}]}}"#;
        assert!(matches!(parse(doc).unwrap().build(), Err(CliError::Validation(_))));
        assert!(matches!(parse(r#"{"double_complex": {"entries": [{"p":0,"q":0,"dim":1}]}, "x": 1}"#), Err(CliError::Parse(_))));
        assert!(matches!(parse(r#"{"double_complex": {"entries": [], "d1": [{"from":[0,0],"matrix":[["1/0"]]}]}}"#), Err(CliError::Parse(_))));
    }

    #[test]
    fn lie_algebra_one_based() {
        let doc = r#"{"lie_algebra": {"dim": 3, "structure": [{"i": 3, "terms": [{"j": 1, "k": 2, "coeff": "1"}]}]}}"#;
        let Input::Lie(l) = parse(doc).unwrap().build().unwrap() else { unreachable!() };
        assert_eq!(l.algebra, cohomlab::geometry::builtins::heisenberg3());
        let bad = r#"{"lie_algebra": {"dim": 3, "structure": [{"i": 4, "terms": []}]}}"#;
        assert!(matches!(parse(bad).unwrap().build(), Err(CliError::Validation(_))));
    }
}
