//! Line-oriented text format shared by every file the tools read or write:
//!
//! ```text
//! # provenance=pi
//! N=23
//! ring=O
//! 1 1 0 0 1 ...
//! ```
//!
//! Lines starting with `#` are comments; `# key=value` comments are kept as
//! metadata. Numbers use Rust's locale-independent formatting, and floats
//! are written in shortest round-trip form.

use std::fmt::Write as _;

use super::{CycloElement, RingElement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingTag {
    R,
    Z,
    O,
}

impl RingTag {
    fn as_str(self) -> &'static str {
        match self {
            RingTag::R => "R",
            RingTag::Z => "Z",
            RingTag::O => "O",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Real(RingElement<f64>),
    Integer(RingElement<i64>),
    Cyclo(CycloElement),
}

impl Element {
    pub fn n(&self) -> usize {
        match self {
            Element::Real(e) => e.n(),
            Element::Integer(e) => e.n(),
            Element::Cyclo(e) => e.n(),
        }
    }

    pub fn tag(&self) -> RingTag {
        match self {
            Element::Real(_) => RingTag::R,
            Element::Integer(_) => RingTag::Z,
            Element::Cyclo(_) => RingTag::O,
        }
    }
}

/// An element plus its `# key=value` metadata, in file order.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub metadata: Vec<(String, String)>,
    pub element: Element,
}

impl Document {
    pub fn new(element: Element) -> Self {
        Document {
            metadata: Vec::new(),
            element,
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.push((key.to_string(), value.into()));
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

pub fn write_document(doc: &Document) -> String {
    let mut out = String::new();
    for (k, v) in &doc.metadata {
        writeln!(out, "# {k}={v}").unwrap();
    }
    writeln!(out, "N={}", doc.element.n()).unwrap();
    writeln!(out, "ring={}", doc.element.tag().as_str()).unwrap();
    let body: Vec<String> = match &doc.element {
        Element::Real(e) => e.coeffs().iter().map(|c| format!("{c:?}")).collect(),
        Element::Integer(e) => e.coeffs().iter().map(|c| c.to_string()).collect(),
        Element::Cyclo(e) => e.coeffs().iter().map(|c| c.to_string()).collect(),
    };
    out.push_str(&body.join(" "));
    out.push('\n');
    out
}

fn parse_ints(tokens: &[&str]) -> Result<Vec<i64>> {
    tokens
        .iter()
        .map(|t| t.parse::<i64>().map_err(|e| Error::parse(format!("bad integer {t:?}: {e}"))))
        .collect()
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut metadata = Vec::new();
    let mut content = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.trim().split_once('=') {
                metadata.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        content.push(line);
    }
    if content.len() != 3 {
        return Err(Error::parse(format!(
            "expected N=, ring= and coefficient lines, found {} content lines",
            content.len()
        )));
    }
    let n: usize = content[0]
        .strip_prefix("N=")
        .ok_or_else(|| Error::parse("first line must be N=<prime>"))?
        .parse()
        .map_err(|e| Error::parse(format!("bad N: {e}")))?;
    let ring = content[1]
        .strip_prefix("ring=")
        .ok_or_else(|| Error::parse("second line must be ring=<R|Z|O>"))?;
    let tokens: Vec<&str> = content[2].split_whitespace().collect();
    let element = match ring {
        "R" => {
            let c = tokens
                .iter()
                .map(|t| t.parse::<f64>().map_err(|e| Error::parse(format!("bad float {t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if c.len() != n {
                return Err(Error::parse(format!("expected {n} coefficients, found {}", c.len())));
            }
            Element::Real(RingElement::new(c)?)
        }
        "Z" => {
            let c = parse_ints(&tokens)?;
            if c.len() != n {
                return Err(Error::parse(format!("expected {n} coefficients, found {}", c.len())));
            }
            Element::Integer(RingElement::cyclic(c)?)
        }
        "O" => {
            let c = parse_ints(&tokens)?;
            if c.len() + 1 != n {
                return Err(Error::parse(format!("expected {} coefficients, found {}", n - 1, c.len())));
            }
            Element::Cyclo(CycloElement::new(c)?)
        }
        other => return Err(Error::parse(format!("unknown ring {other:?}"))),
    };
    Ok(Document { metadata, element })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_each_ring() {
        let docs = [
            Document::new(Element::Cyclo(CycloElement::new(vec![1, 0, 1, 1]).unwrap())).with_meta("provenance", "explicit"),
            Document::new(Element::Integer(RingElement::cyclic(vec![5, 2, 1, 3, 3, 2, 3, 3, 1, 2]).unwrap())),
            Document::new(Element::Real(RingElement::new(vec![0.1, -2.5, 1e-17]).unwrap())).with_meta("key", "public"),
        ];
        for d in docs {
            let text = write_document(&d);
            assert_eq!(parse_document(&text).unwrap(), d);
        }
    }

    #[test]
    fn exact_layout() {
        let d = Document::new(Element::Cyclo(CycloElement::new(vec![1, 1]).unwrap())).with_meta("provenance", "pi");
        assert_eq!(write_document(&d), "# provenance=pi\nN=3\nring=O\n1 1\n");
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_document("N=4\nring=O\n1 1 1\n").is_err());
        assert!(parse_document("N=5\nring=O\n1 1 1\n").is_err());
        assert!(parse_document("N=5\nring=Q\n1 1 1 1\n").is_err());
        assert!(parse_document("ring=O\nN=5\n1 1 1 1\n").is_err());
        assert!(parse_document("N=3\nring=R\n1 x 1\n").is_err());
    }
}
