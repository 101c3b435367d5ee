//! JSON template files: `{"n": N, "classes": [E1, E2, E3]}` with each `E` a
//! strictly sorted list of `[u, v]`, `u < v < N`.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use super::{Colour, ColouringTemplate, TemplateError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed template JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected exactly 3 classes, found {0}")]
    ClassCount(usize),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Template(#[from] TemplateError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TemplateFile {
    n: usize,
    classes: Vec<Vec<[usize; 2]>>,
}

pub fn parse_template(text: &str) -> Result<ColouringTemplate, FormatError> {
    let file: TemplateFile = serde_json::from_str(text)?;
    if file.classes.len() != 3 {
        return Err(FormatError::ClassCount(file.classes.len()));
    }
    let n = file.n;
    for (c, class) in file.classes.iter().enumerate() {
        for (i, &[u, v]) in class.iter().enumerate() {
            let field = || format!("classes[{c}][{i}]");
            let message = if v >= n || u >= n {
                Some(format!("pair [{u}, {v}] has a vertex outside 0..{n}"))
            } else if u >= v {
                Some(format!("pair [{u}, {v}] must satisfy u < v"))
            } else if i > 0 && class[i - 1] == [u, v] {
                Some(format!("duplicate pair [{u}, {v}]"))
            } else if i > 0 && class[i - 1] > [u, v] {
                Some(format!("pair [{u}, {v}] is out of lexicographic order"))
            } else {
                None
            };
            if let Some(message) = message {
                return Err(FormatError::Field { field: field(), message });
            }
        }
    }
    let classes = file
        .classes
        .into_iter()
        .map(|class| class.into_iter().map(|[u, v]| (u, v)).collect())
        .collect::<Vec<_>>();
    let classes: [Vec<_>; 3] = classes.try_into().expect("three classes checked above");
    Ok(ColouringTemplate::new(n, classes)?)
}

pub fn read_template(path: &Path) -> Result<ColouringTemplate, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_template(&text)
}

/// Byte-stable serialization: one class per line, pairs in sorted order.
pub fn to_canonical_json(t: &ColouringTemplate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{\n  \"n\": {},\n  \"classes\": [", t.n());
    for c in Colour::ALL {
        out.push_str("    [");
        for (i, (u, v)) in t.class(c).iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "[{u},{v}]");
        }
        out.push(']');
        if c != Colour::Three {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_template(t: &ColouringTemplate, path: &Path) -> Result<(), FormatError> {
    std::fs::write(path, to_canonical_json(t)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}
