//! Ring presentation files.
//!
//! ```toml
//! name = "a1_p3"
//! p = 3
//! variables = ["x", "y", "z"]
//! relations = ["x*y - z^2"]
//! sop = ["x", "y"]
//! c = "z"
//! dim = 2
//! alpha = 0
//! reduced = true
//! ```

use std::ops::Range;

use fsig_core::{Error as CoreError, IrreducibleFamily, Poly, PolyRing, RingPresentation};
use serde::Deserialize;
use toml::Spanned;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: Option<String>,
    p: u32,
    variables: Vec<String>,
    #[serde(default)]
    relations: Vec<Spanned<String>>,
    sop: Option<Vec<Spanned<String>>>,
    c: Option<Spanned<String>>,
    dim: Option<i64>,
    #[serde(default)]
    alpha: u32,
    #[serde(default)]
    reduced: bool,
}

/// A parsed and validated presentation.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub ring: RingPresentation,
    pub family: Option<IrreducibleFamily>,
    pub c: Option<Poly>,
    /// Caller attests that the relations define a reduced ring.
    pub reduced: bool,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, col)
}

fn parse_at(text: &str, ring: &std::sync::Arc<PolyRing>, value: &Spanned<String>) -> Result<Poly, CliError> {
    ring.parse(value.get_ref()).map_err(|e| match e {
        CoreError::Parse { column, message } => {
            // skip the opening quote
            let (line, col) = line_col(text, value.span().start + 1);
            CliError::Parse {
                line,
                column: col + column - 1,
                message,
            }
        }
        other => CliError::from(other),
    })
}

fn toml_error(text: &str, err: toml::de::Error) -> CliError {
    let (line, column) = err
        .span()
        .map_or((1, 1), |Range { start, .. }| line_col(text, start));
    CliError::Parse {
        line,
        column,
        message: err.message().trim().to_string(),
    }
}

/// Parses a presentation file and validates the ring, the system of
/// parameters and the test element.
pub fn parse_presentation(text: &str, default_name: &str) -> Result<Presentation, CliError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| toml_error(text, e))?;
    let ring = PolyRing::new(raw.p, &raw.variables)?;
    let relations = raw
        .relations
        .iter()
        .map(|r| parse_at(text, &ring, r))
        .collect::<Result<Vec<_>, _>>()?;
    let sop = raw
        .sop
        .as_ref()
        .map(|s| s.iter().map(|x| parse_at(text, &ring, x)).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    let c = raw.c.as_ref().map(|c| parse_at(text, &ring, c)).transpose()?;

    let presentation = RingPresentation::new(&ring, relations, raw.dim, raw.alpha)?;
    let family = sop
        .map(|sop| IrreducibleFamily::new(&presentation, sop))
        .transpose()?;
    Ok(Presentation {
        name: raw.name.unwrap_or_else(|| default_name.to_string()),
        ring: presentation,
        family,
        c,
        reduced: raw.reduced,
    })
}

impl Presentation {
    pub fn family(&self) -> Result<&IrreducibleFamily, CliError> {
        self.family
            .as_ref()
            .ok_or_else(|| CliError::Validation("this command needs `sop` in the presentation".into()))
    }

    pub fn test_element(&self) -> Result<&Poly, CliError> {
        self.c
            .as_ref()
            .ok_or_else(|| CliError::Validation("this command needs a test element `c` in the presentation".into()))
    }

    pub fn hypersurface(&self) -> Result<&Poly, CliError> {
        self.ring
            .hypersurface()
            .ok_or_else(|| CliError::Validation("this command needs exactly one relation".into()))
    }
}

/// Presentations shipped with the tool, addressable by name.
pub const CORPUS: &[(&str, &str)] = &[
    ("regular1_p5", include_str!("../corpus/regular1_p5.toml")),
    ("regular2_p5", include_str!("../corpus/regular2_p5.toml")),
    ("regular3_p3", include_str!("../corpus/regular3_p3.toml")),
    ("node_p3", include_str!("../corpus/node_p3.toml")),
    ("a1_p3", include_str!("../corpus/a1_p3.toml")),
    ("a1_p5", include_str!("../corpus/a1_p5.toml")),
    ("a2_p5", include_str!("../corpus/a2_p5.toml")),
    ("fermat3_p7", include_str!("../corpus/fermat3_p7.toml")),
    ("fermat3_p2", include_str!("../corpus/fermat3_p2.toml")),
];

pub fn corpus_entry(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_files_validate() {
        for (name, text) in CORPUS {
            let p = parse_presentation(text, "unnamed").unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(&p.name, name);
            assert!(p.family.is_some());
        }
        let a1 = parse_presentation(corpus_entry("a1_p3").unwrap(), "").unwrap();
        assert_eq!(a1.ring.dim(), 2);
    }

    #[test]
    fn expression_errors_point_into_the_file() {
        let text = "p = 3\nvariables = [\"x\", \"y\"]\nrelations = [\"x*y -\"]\n";
        match parse_presentation(text, "t") {
            Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 20)),
            other => panic!("{other:?}"),
        }
        let text = "p = 3\nvariables = [\"x\"\n";
        assert!(matches!(parse_presentation(text, "t"), Err(CliError::Parse { .. })));
        let text = "p = 3\nvariables = [\"x\"]\ncolour = 1\n";
        assert!(matches!(parse_presentation(text, "t"), Err(CliError::Parse { line: 3, .. })));
    }

    #[test]
    fn semantic_errors_are_validation() {
        let text = "p = 3\nvariables = [\"x\", \"y\", \"z\"]\nrelations = [\"x*y - z^2\"]\nsop = [\"x\", \"x\"]\n";
        let err = parse_presentation(text, "t").unwrap_err();
        assert!(matches!(err, CliError::Validation(ref m) if m.contains("sop") || m.contains("parameters")), "{err}");
        assert_eq!(err.exit_code(), 3);
        let text = "p = 6\nvariables = [\"x\"]\n";
        assert_eq!(parse_presentation(text, "t").unwrap_err().exit_code(), 3);
    }
}
