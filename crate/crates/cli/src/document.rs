//! The input document: a field and either a full presentation matrix or a truncation pair.

use serde::{Deserialize, Serialize};

use scroll_rees::algebra::{parse_poly, BiPoly, Field, DEFAULT_PRIME};
use scroll_rees::presentation::{build_from_pair, PresentationData};

use crate::CliError;

/// Environment variable consulted for the field when neither flag nor document names one.
pub const FIELD_ENV: &str = "SCROLL_REES_FIELD";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
    pub input: Input,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Input {
    /// Rows of polynomial strings; the last column holds the degree-`n` entries.
    Matrix(Vec<Vec<String>>),
    Pair(Pair),
}

/// `I = (x,y)^tau F1 + (x,y)^sigma F2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pair {
    pub sigma: usize,
    pub tau: usize,
    #[serde(rename = "F1")]
    pub f1: String,
    #[serde(rename = "F2")]
    pub f2: String,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Document =
            serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("input document: {e}")))?;
        if let Some(Field::Prime(p)) = doc.field {
            Field::prime(p).map_err(CliError::from)?;
        }
        Ok(doc)
    }

    pub fn from_presentation(pd: &PresentationData, with_field: bool) -> Self {
        let matrix = pd
            .matrix()
            .iter()
            .map(|row| row.iter().map(BiPoly::to_string).collect())
            .collect();
        Document {
            field: with_field.then(|| pd.field()),
            input: Input::Matrix(matrix),
        }
    }

    /// Builds and validates the presentation over `field`.
    pub fn presentation(&self, field: Field) -> Result<PresentationData, CliError> {
        let entry =
            |src: &str, at: String| parse_poly(src, field, 0).map_err(|e| CliError::Invalid(format!("{at}: {e}")));
        let pd = match &self.input {
            Input::Matrix(rows) => {
                let mut phi = Vec::with_capacity(rows.len());
                for (i, row) in rows.iter().enumerate() {
                    let parsed = row
                        .iter()
                        .enumerate()
                        .map(|(j, src)| entry(src, format!("matrix[{i}][{j}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    phi.push(parsed);
                }
                PresentationData::new(field, phi)
            }
            Input::Pair(p) => {
                let f1 = entry(&p.f1, "pair.F1".into())?;
                let f2 = entry(&p.f2, "pair.F2".into())?;
                build_from_pair(field, p.sigma, p.tau, &f1, &f2)
            }
        };
        pd.map_err(CliError::from)
    }
}

/// `p` for `F_p`, or `Q`.
pub fn parse_field(text: &str) -> Result<Field, CliError> {
    let t = text.trim();
    if matches!(t, "Q" | "q" | "rational") {
        return Ok(Field::Rational);
    }
    let p: u32 = t
        .parse()
        .map_err(|_| CliError::Invalid(format!("field must be a prime or Q, got '{t}'")))?;
    Field::prime(p).map_err(CliError::from)
}

/// Flag, then document, then environment, then `F_32003`.
pub fn resolve_field(flag: Option<&str>, document: Option<Field>, env: Option<&str>) -> Result<Field, CliError> {
    if let Some(f) = flag {
        return parse_field(f);
    }
    if let Some(f) = document {
        return Ok(f);
    }
    match env.filter(|e| !e.trim().is_empty()) {
        Some(e) => parse_field(e),
        None => Ok(Field::Prime(DEFAULT_PRIME)),
    }
}
