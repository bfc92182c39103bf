//! JSON file formats for algebras, chains, polynomials, enveloping-algebra
//! elements and matrix templates. Scalars are always strings such as
//! `"3/2"` or `"1/2+3/4i"`.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{ChainSpec, LieAlgebra};
use crate::enveloping::{UEElement, UEWord};
use crate::error::{Error, Result};
use crate::invariants::MatrixTemplate;
use crate::linalg::Matrix;
use crate::poly::{parse_poly, Monomial, Poly};
use crate::scalar::Scalar;

/// Version stamp written into every structured report.
pub const FORMAT_VERSION: u32 = 1;

pub(crate) fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_display_vec<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn scalar(s: &str) -> Result<Scalar> {
    s.parse()
}

fn from_json<T: DeserializeOwned>(text: &str, context: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format {
        context: context.to_string(),
        line: e.line(),
        column: e.column(),
        source: e,
    })
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

#[derive(Serialize, Deserialize)]
struct TermEntry {
    k: usize,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    terms: Vec<TermEntry>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    name: String,
    dim: usize,
    generators: Vec<String>,
    brackets: Vec<BracketEntry>,
}

pub fn algebra_to_json(alg: &LieAlgebra) -> String {
    let file = AlgebraFile {
        name: alg.name().to_string(),
        dim: alg.dim(),
        generators: alg.names().to_vec(),
        brackets: alg
            .constants()
            .iter()
            .map(|(&(i, j), terms)| BracketEntry {
                i,
                j,
                terms: terms.iter().map(|(k, c)| TermEntry { k: *k, c: c.to_string() }).collect(),
            })
            .collect(),
    };
    to_json(&file)
}

pub fn algebra_from_json(text: &str) -> Result<LieAlgebra> {
    let file: AlgebraFile = from_json(text, "algebra file")?;
    if file.generators.len() != file.dim {
        return Err(Error::Dimension(format!("dim {} but {} generator labels", file.dim, file.generators.len())));
    }
    let mut brackets = Vec::with_capacity(file.brackets.len());
    for b in file.brackets {
        let terms = b.terms.iter().map(|t| Ok((t.k, scalar(&t.c)?))).collect::<Result<Vec<_>>>()?;
        brackets.push((b.i, b.j, terms));
    }
    LieAlgebra::from_brackets(file.name, file.generators, brackets)
}

#[derive(Serialize, Deserialize)]
struct ChainFile {
    basis_change: Option<Vec<Vec<String>>>,
    sub_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

pub fn chain_to_json(chain: &ChainSpec) -> String {
    let file = ChainFile {
        basis_change: chain
            .basis_change
            .as_ref()
            .map(|m| m.to_rows().into_iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect()),
        sub_dim: chain.sub_dim,
        names: chain.names.clone(),
    };
    to_json(&file)
}

pub fn chain_from_json(text: &str) -> Result<ChainSpec> {
    let file: ChainFile = from_json(text, "chain file")?;
    let basis_change = match file.basis_change {
        Some(rows) => {
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::Dimension("basis change must be square".into()));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|s| scalar(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Some(Matrix::from_rows(rows))
        }
        None => None,
    };
    Ok(ChainSpec { basis_change, sub_dim: file.sub_dim, names: file.names })
}

#[derive(Serialize, Deserialize)]
struct PolyTerm {
    coeff: String,
    exps: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct PolyFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    terms: Vec<PolyTerm>,
}

/// Serializes in the structured term-list format, descending graded-lex.
pub fn poly_to_json(p: &Poly, name: Option<&str>) -> String {
    to_json(&poly_file(p, name))
}

fn poly_file(p: &Poly, name: Option<&str>) -> PolyFile {
    PolyFile {
        dim: p.nvars(),
        name: name.map(str::to_string),
        terms: p
            .terms()
            .rev()
            .map(|(m, c)| PolyTerm { coeff: c.to_string(), exps: m.pairs().map(|(v, e)| [v, e as usize]).collect() })
            .collect(),
    }
}

fn poly_from_file(file: PolyFile) -> Result<Poly> {
    let terms = file
        .terms
        .into_iter()
        .map(|t| Ok((Monomial::from_pairs(t.exps.iter().map(|[v, e]| (*v, *e as u32))), scalar(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    Poly::from_terms(file.dim, terms)
}

pub fn poly_from_json(text: &str) -> Result<Poly> {
    poly_from_file(from_json(text, "polynomial file")?)
}

/// A named list of polynomials, as written by `invariants`.
#[derive(Serialize, Deserialize)]
struct PolySetFile {
    polys: Vec<PolyFile>,
}

pub fn polys_to_json(polys: &[(String, Poly)]) -> String {
    to_json(&PolySetFile { polys: polys.iter().map(|(n, p)| poly_file(p, Some(n))).collect() })
}

/// Reads either a single polynomial file or a `{ "polys": [...] }` set.
pub fn polys_from_json(text: &str) -> Result<Vec<(String, Poly)>> {
    let value: serde_json::Value = from_json(text, "polynomial file")?;
    if value.get("polys").is_some() {
        let set: PolySetFile = from_json(text, "polynomial set file")?;
        set.polys
            .into_iter()
            .enumerate()
            .map(|(k, f)| {
                let name = f.name.clone().unwrap_or_else(|| format!("p{k}"));
                Ok((name, poly_from_file(f)?))
            })
            .collect()
    } else {
        let f: PolyFile = from_json(text, "polynomial file")?;
        let name = f.name.clone().unwrap_or_else(|| "p0".into());
        Ok(vec![(name, poly_from_file(f)?)])
    }
}

#[derive(Serialize, Deserialize)]
struct UETerm {
    coeff: String,
    word: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct UEFile {
    dim: usize,
    terms: Vec<UETerm>,
}

pub fn ue_to_json(e: &UEElement) -> String {
    let file = UEFile {
        dim: e.dim(),
        terms: e
            .terms()
            .map(|(w, c)| UETerm { coeff: c.to_string(), word: w.factors().map(|(g, k)| [g, k as usize]).collect() })
            .collect(),
    };
    to_json(&file)
}

pub fn ue_from_json(text: &str) -> Result<UEElement> {
    let file: UEFile = from_json(text, "enveloping element file")?;
    let mut terms = Vec::with_capacity(file.terms.len());
    for t in file.terms {
        if t.word.windows(2).any(|w| w[0][0] >= w[1][0]) {
            return Err(Error::Parse("word generator indices must be strictly increasing".into()));
        }
        if t.word.iter().any(|f| f[1] == 0) {
            return Err(Error::Parse("word exponents must be positive".into()));
        }
        if let Some(f) = t.word.iter().find(|f| f[0] >= file.dim) {
            return Err(Error::IndexOutOfRange { index: f[0], dim: file.dim });
        }
        let word = UEWord::from_factors(t.word.iter().map(|f| (f[0], f[1] as u32)));
        terms.push((word, scalar(&t.coeff)?));
    }
    Ok(UEElement::from_terms(file.dim, terms))
}

#[derive(Serialize, Deserialize)]
struct TemplateFile {
    name: String,
    dim: usize,
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<String>,
    degrees: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variables: Option<Vec<String>>,
    entries: Vec<Vec<String>>,
}

pub fn template_from_json(text: &str) -> Result<MatrixTemplate> {
    let file: TemplateFile = from_json(text, "matrix template file")?;
    if file.entries.len() != file.size || file.entries.iter().any(|r| r.len() != file.size) {
        return Err(Error::Dimension(format!("template entries are not {0}x{0}", file.size)));
    }
    let entries = file
        .entries
        .iter()
        .map(|row| row.iter().map(|e| parse_poly(e, file.dim)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let scale = match &file.scale {
        Some(s) => scalar(s)?,
        None => Scalar::ONE,
    };
    Ok(MatrixTemplate { name: file.name, nvars: file.dim, entries, scale, degrees: file.degrees, comment: file.comment })
}

pub fn template_to_json(t: &MatrixTemplate) -> String {
    let file = TemplateFile {
        name: t.name.clone(),
        dim: t.nvars,
        size: t.entries.len(),
        scale: (!t.scale.is_one()).then(|| t.scale.to_string()),
        degrees: t.degrees.clone(),
        comment: t.comment.clone(),
        variables: None,
        entries: t.entries.iter().map(|r| r.iter().map(Poly::to_string).collect()).collect(),
    };
    to_json(&file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn algebra_file_round_trip() {
        let a = builtins::su22();
        let back = algebra_from_json(&algebra_to_json(&a)).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn parse_errors_report_position() {
        let err = algebra_from_json("{\n  \"name\": \"x\",\n  \"dim\": oops\n}").unwrap_err();
        match err {
            Error::Format { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn chain_file_round_trip() {
        let c = builtins::sp6_unitary_chain();
        assert_eq!(chain_from_json(&chain_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn poly_file_round_trip() {
        let p = parse_poly("3/2*x0^2*x4 - (1+i)*x3 + 7", 5).unwrap();
        assert_eq!(poly_from_json(&poly_to_json(&p, None)).unwrap(), p);
    }

    #[test]
    fn ue_file_rejects_unsorted_words() {
        let text = r#"{"dim": 3, "terms": [{"coeff": "1", "word": [[2, 1], [0, 1]]}]}"#;
        assert!(ue_from_json(text).is_err());
    }
}
