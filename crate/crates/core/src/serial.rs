//! Canonical, versioned text serialization with a content digest.
//!
//! ```text
//! bfv-serial 1
//! kind: element
//! roster: 1 2
//! value: y1 c1 + y2 c2
//! digest: <sha256 of the lines above>
//! ```

use sha2::{Digest, Sha256};

use crate::algebra::{parse_element, Element, Gen, Roster, Substitution};
use crate::bfv::{BfvStructure, Charge, Instance};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::invariance::{Automorphism, Domain};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "bfv-serial";

/// Hex SHA-256 of `text`.
pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// A parsed serialization: ordered `key: value` lines under a kind and a
/// roster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub kind: String,
    pub roster: Roster,
    fields: Vec<(String, String)>,
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::Serialization(msg.into())
}

impl Document {
    pub fn new(kind: &str, roster: Roster) -> Self {
        Document {
            kind: kind.to_string(),
            roster,
            fields: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| corrupt(format!("missing field `{key}`")))
    }

    pub fn element(&self, key: &str) -> Result<Element> {
        parse_element(self.roster, self.get(key)?)
    }

    fn body(&self) -> String {
        let mut out = format!(
            "{MAGIC} {FORMAT_VERSION}\nkind: {}\nroster: {} {}\n",
            self.kind,
            self.roster.n_base(),
            self.roster.k_fiber()
        );
        for (k, v) in &self.fields {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }

    pub fn render(&self) -> String {
        let body = self.body();
        format!("{body}digest: {}\n", digest(&body))
    }

    pub fn parse(text: &str) -> Result<Document> {
        let lines: Vec<&str> = text.lines().collect();
        let (header, rest) = lines.split_first().ok_or_else(|| corrupt("empty input"))?;
        let version = header
            .strip_prefix(MAGIC)
            .map(str::trim)
            .ok_or_else(|| corrupt(format!("not a {MAGIC} document")))?;
        if version != FORMAT_VERSION.to_string() {
            return Err(corrupt(format!(
                "unsupported version {version}, expected {FORMAT_VERSION}"
            )));
        }
        let mut pairs = Vec::new();
        for line in rest {
            let (k, v) = line
                .split_once(": ")
                .ok_or_else(|| corrupt(format!("malformed line `{line}`")))?;
            pairs.push((k.to_string(), v.to_string()));
        }
        let (last_key, stated) = pairs.pop().ok_or_else(|| corrupt("missing digest"))?;
        if last_key != "digest" {
            return Err(corrupt("the last line must be the digest"));
        }
        let mut it = pairs.into_iter();
        let kind = match it.next() {
            Some((k, v)) if k == "kind" => v,
            _ => return Err(corrupt("missing kind")),
        };
        let roster = match it.next() {
            Some((k, v)) if k == "roster" => {
                let dims: Vec<u16> = v
                    .split_whitespace()
                    .map(|d| d.parse().map_err(|_| corrupt(format!("bad roster `{v}`"))))
                    .collect::<Result<_>>()?;
                match dims[..] {
                    [n, k] => Roster::new(n, k),
                    _ => return Err(corrupt(format!("bad roster `{v}`"))),
                }
            }
            _ => return Err(corrupt("missing roster")),
        };
        let doc = Document {
            kind,
            roster,
            fields: it.collect(),
        };
        let actual = digest(&doc.body());
        if actual != stated {
            return Err(corrupt(format!(
                "digest mismatch: stated {stated}, content hashes to {actual}"
            )));
        }
        Ok(doc)
    }

    fn expect_kind(&self, kind: &str) -> Result<()> {
        if self.kind != kind {
            return Err(corrupt(format!("expected kind `{kind}`, found `{}`", self.kind)));
        }
        Ok(())
    }
}

/// Types with a canonical text form.
pub trait Canonical: Sized {
    const KIND: &'static str;
    fn to_document(&self) -> Document;
    fn from_document(doc: &Document) -> Result<Self>;
}

pub fn serialize<T: Canonical>(value: &T) -> String {
    value.to_document().render()
}

pub fn deserialize<T: Canonical>(text: &str) -> Result<T> {
    let doc = Document::parse(text)?;
    doc.expect_kind(T::KIND)?;
    T::from_document(&doc)
}

impl Canonical for Element {
    const KIND: &'static str = "element";

    fn to_document(&self) -> Document {
        let mut doc = Document::new(Self::KIND, self.roster());
        doc.push("value", self);
        doc
    }

    fn from_document(doc: &Document) -> Result<Self> {
        doc.element("value")
    }
}

fn push_instance(doc: &mut Document, inst: &Instance) {
    doc.push("poisson", inst.pi());
    for (&(a, mu, nu), coeff) in inst.connection().entries() {
        doc.push(format!("connection {a} {mu} {nu}"), coeff);
    }
}

fn read_instance(doc: &Document) -> Result<Instance> {
    let r = doc.roster;
    let mut entries = Vec::new();
    for (k, v) in doc.fields() {
        if let Some(idx) = k.strip_prefix("connection ") {
            let idx: Vec<u16> = idx
                .split_whitespace()
                .map(|d| d.parse().map_err(|_| corrupt(format!("bad connection key `{k}`"))))
                .collect::<Result<_>>()?;
            let [a, mu, nu] = idx[..] else {
                return Err(corrupt(format!("bad connection key `{k}`")));
            };
            entries.push(((a, mu, nu), parse_element(r, v)?));
        }
    }
    Instance::new(doc.element("poisson")?, Connection::new(r, entries)?)
}

impl Canonical for Instance {
    const KIND: &'static str = "instance";

    fn to_document(&self) -> Document {
        let mut doc = Document::new(Self::KIND, self.roster());
        push_instance(&mut doc, self);
        doc
    }

    fn from_document(doc: &Document) -> Result<Self> {
        read_instance(doc)
    }
}

impl Canonical for BfvStructure {
    const KIND: &'static str = "structure";

    fn to_document(&self) -> Document {
        let mut doc = Document::new(Self::KIND, self.roster());
        push_instance(&mut doc, self.instance());
        doc.push("p_hat", self.p_hat());
        doc.push("delta", self.delta());
        doc
    }

    /// Re-certifies the structure.
    fn from_document(doc: &Document) -> Result<Self> {
        BfvStructure::from_parts(read_instance(doc)?, doc.element("p_hat")?, doc.element("delta")?)
    }
}

impl Canonical for Automorphism {
    const KIND: &'static str = "automorphism";

    fn to_document(&self) -> Document {
        let mut doc = Document::new(Self::KIND, self.roster());
        doc.push(
            "domain",
            match self.domain() {
                Domain::Full => "full",
                Domain::Functions => "functions",
            },
        );
        for (g, img) in self.forward().moved() {
            doc.push(format!("forward {g}"), img);
        }
        for (g, img) in self.inverse_map().moved() {
            doc.push(format!("inverse {g}"), img);
        }
        for p in self.provenance() {
            doc.push("provenance", p);
        }
        doc
    }

    /// Re-certifies the inverse.
    fn from_document(doc: &Document) -> Result<Self> {
        let r = doc.roster;
        let domain = match doc.get("domain")? {
            "full" => Domain::Full,
            "functions" => Domain::Functions,
            other => return Err(corrupt(format!("unknown domain `{other}`"))),
        };
        let mut forward = Vec::new();
        let mut inverse = Vec::new();
        let mut provenance = Vec::new();
        for (k, v) in doc.fields() {
            let slot = if let Some(g) = k.strip_prefix("forward ") {
                Some((g, &mut forward))
            } else { k.strip_prefix("inverse ").map(|g| (g, &mut inverse)) };
            if let Some((g, list)) = slot {
                let g: Gen = g.parse().map_err(|e: String| corrupt(e))?;
                list.push((g, parse_element(r, v)?));
            } else if k == "provenance" {
                provenance.push(v.clone());
            }
        }
        Automorphism::new(
            Substitution::new(r, forward)?,
            Substitution::new(r, inverse)?,
            domain,
            provenance,
        )
    }
}

/// Serialize a charge together with the digest of its structure.
pub fn serialize_charge(charge: &Charge, s: &BfvStructure) -> Result<String> {
    charge.ensure_belongs_to(s)?;
    let mut doc = Document::new("charge", charge.roster());
    doc.push("structure", digest(&serialize(s)));
    doc.push("omega", charge.omega());
    Ok(doc.render())
}

/// Read a charge and re-certify it against `s`.
pub fn deserialize_charge(text: &str, s: &BfvStructure) -> Result<Charge> {
    let doc = Document::parse(text)?;
    doc.expect_kind("charge")?;
    let expected = digest(&serialize(s));
    if doc.get("structure")? != expected {
        return Err(Error::ChargeMismatch(
            "the charge was serialized for a different structure".into(),
        ));
    }
    Charge::certified(s, doc.element("omega")?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_round_trip() {
        let r = Roster::new(1, 2);
        for text in ["0", "1/2 c1", "-x1 y1 c1 b1 + y2^2 xd1", "-3/7 cd1 bd2 + 1"] {
            let e = parse_element(r, text).unwrap();
            let s = serialize(&e);
            assert_eq!(deserialize::<Element>(&s).unwrap(), e, "{s}");
            assert_eq!(parse_element(r, &e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn tampering_is_detected() {
        let r = Roster::new(0, 1);
        let s = serialize(&parse_element(r, "y1 c1").unwrap());
        let tampered = s.replace("y1 c1", "2 y1 c1");
        assert!(matches!(deserialize::<Element>(&tampered), Err(Error::Serialization(m)) if m.contains("digest")));
        let future = s.replace("bfv-serial 1", "bfv-serial 2");
        assert!(matches!(deserialize::<Element>(&future), Err(Error::Serialization(m)) if m.contains("version")));
        assert!(matches!(deserialize::<Instance>(&s), Err(Error::Serialization(_))));
    }
}
