//! Line-oriented germ files: `[section]` headers, `key = value` lines and
//! `#` comments.

use std::collections::BTreeMap;

use milnorsig_core::curve::ImageComponent;
use milnorsig_core::germ::{Germ, GermError, OverrideSet};
use milnorsig_core::mpoly::{MpolyError, NumberField};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GermFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing key `{key}` in [{section}]")]
    MissingKey { section: &'static str, key: &'static str },
    #[error("key `{key}`: {msg}")]
    BadValue { key: String, msg: String },
    #[error("field: {0}")]
    Field(MpolyError),
    #[error("{0}")]
    Germ(#[from] GermError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Str(String),
    Int(i64),
    List(Vec<String>),
}

/// Values stated in the `[expected]` section.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExpectedValues {
    pub signature: Option<i64>,
    pub c: Option<i64>,
    pub t: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawOverrides {
    pub double_curve: Option<String>,
    pub components: Option<Vec<String>>,
    pub twist: Option<Vec<String>>,
    pub vertical_indices: Vec<String>,
    pub triple_points: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermFile {
    pub name: String,
    pub field: NumberField,
    pub map: [String; 3],
    pub overrides: RawOverrides,
    pub expected: ExpectedValues,
}

fn syntax(line: usize, msg: impl Into<String>) -> GermFileError {
    GermFileError::Syntax { line, msg: msg.into() }
}

fn bad(key: &str, msg: impl Into<String>) -> GermFileError {
    GermFileError::BadValue {
        key: key.to_string(),
        msg: msg.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

fn parse_quoted(s: &str, line: usize) -> Result<String, GermFileError> {
    let inner = s
        .strip_prefix('"')
        .and_then(|r| r.strip_suffix('"'))
        .ok_or_else(|| syntax(line, format!("expected a quoted string, found `{s}`")))?;
    if inner.contains('"') {
        return Err(syntax(line, "stray quote"));
    }
    Ok(inner.to_string())
}

fn parse_list(s: &str, line: usize) -> Result<Vec<String>, GermFileError> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| syntax(line, "unterminated list"))?;
    let mut items = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        if !rest.starts_with('"') {
            return Err(syntax(line, format!("list entries must be quoted: `{rest}`")));
        }
        let end = rest[1..]
            .find('"')
            .ok_or_else(|| syntax(line, "unterminated string in list"))?
            + 1;
        items.push(rest[1..end].to_string());
        rest = rest[end + 1..].trim_start();
        match rest.strip_prefix(',') {
            Some(r) => rest = r.trim_start(),
            None if rest.is_empty() => {}
            None => return Err(syntax(line, format!("expected `,` in list before `{rest}`"))),
        }
    }
    Ok(items)
}

fn parse_value(s: &str, line: usize) -> Result<Value, GermFileError> {
    if s.starts_with('[') {
        parse_list(s, line).map(Value::List)
    } else if s.starts_with('"') {
        parse_quoted(s, line).map(Value::Str)
    } else {
        s.parse::<i64>()
            .map(Value::Int)
            .map_err(|_| syntax(line, format!("expected a string, list or integer, found `{s}`")))
    }
}

type Sections = BTreeMap<String, BTreeMap<String, Value>>;

fn parse_sections(src: &str) -> Result<Sections, GermFileError> {
    let mut sections = Sections::new();
    let mut current: Option<String> = None;
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = strip_comment(raw).trim();
        if text.is_empty() {
            continue;
        }
        if let Some(name) = text.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim();
            if !matches!(name, "germ" | "overrides" | "expected") {
                return Err(syntax(line, format!("unknown section [{name}]")));
            }
            if sections.contains_key(name) {
                return Err(syntax(line, format!("duplicate section [{name}]")));
            }
            sections.insert(name.to_string(), BTreeMap::new());
            current = Some(name.to_string());
            continue;
        }
        let section = current
            .as_ref()
            .ok_or_else(|| syntax(line, "key outside of a section"))?;
        let (key, value) = text
            .split_once('=')
            .ok_or_else(|| syntax(line, "expected `key = value`"))?;
        let key = key.trim();
        let value = parse_value(value.trim(), line)?;
        let table = sections.get_mut(section).unwrap();
        if table.insert(key.to_string(), value).is_some() {
            return Err(syntax(line, format!("duplicate key `{key}`")));
        }
    }
    Ok(sections)
}

fn take_str(table: &mut BTreeMap<String, Value>, key: &str) -> Result<Option<String>, GermFileError> {
    match table.remove(key) {
        None => Ok(None),
        Some(Value::Str(s)) => Ok(Some(s)),
        Some(_) => Err(bad(key, "expected a quoted string")),
    }
}

fn take_list(table: &mut BTreeMap<String, Value>, key: &str) -> Result<Option<Vec<String>>, GermFileError> {
    match table.remove(key) {
        None => Ok(None),
        Some(Value::List(l)) => Ok(Some(l)),
        Some(_) => Err(bad(key, "expected a list of quoted strings")),
    }
}

fn take_int(table: &mut BTreeMap<String, Value>, key: &str) -> Result<Option<i64>, GermFileError> {
    match table.remove(key) {
        None => Ok(None),
        Some(Value::Int(n)) => Ok(Some(n)),
        Some(_) => Err(bad(key, "expected an integer")),
    }
}

fn reject_unknown(table: &BTreeMap<String, Value>, section: &str) -> Result<(), GermFileError> {
    match table.keys().next() {
        Some(k) => Err(bad(k, format!("unknown key in [{section}]"))),
        None => Ok(()),
    }
}

impl GermFile {
    pub fn parse(src: &str) -> Result<Self, GermFileError> {
        let mut sections = parse_sections(src)?;
        let mut germ = sections.remove("germ").ok_or(GermFileError::MissingKey {
            section: "germ",
            key: "map",
        })?;
        let name = take_str(&mut germ, "name")?.unwrap_or_else(|| "germ".into());
        let map = take_list(&mut germ, "map")?.ok_or(GermFileError::MissingKey {
            section: "germ",
            key: "map",
        })?;
        let map: [String; 3] = map
            .try_into()
            .map_err(|m: Vec<String>| bad("map", format!("expected 3 entries, found {}", m.len())))?;
        let field = match take_str(&mut germ, "field")? {
            Some(d) => NumberField::from_descriptor(&d).map_err(GermFileError::Field)?,
            None => NumberField::rationals(),
        };
        reject_unknown(&germ, "germ")?;

        let mut overrides = RawOverrides::default();
        if let Some(mut o) = sections.remove("overrides") {
            overrides.double_curve = take_str(&mut o, "double_curve")?;
            overrides.components = take_list(&mut o, "components")?;
            overrides.twist = take_list(&mut o, "twist")?;
            overrides.vertical_indices = take_list(&mut o, "vertical_indices")?.unwrap_or_default();
            overrides.triple_points = take_int(&mut o, "T")?
                .map(|t| u64::try_from(t).map_err(|_| bad("T", "must be non-negative")))
                .transpose()?;
            reject_unknown(&o, "overrides")?;
        }

        let mut expected = ExpectedValues::default();
        if let Some(mut e) = sections.remove("expected") {
            expected.signature = take_int(&mut e, "signature")?;
            expected.c = take_int(&mut e, "C")?;
            expected.t = take_int(&mut e, "T")?;
            reject_unknown(&e, "expected")?;
        }

        Ok(GermFile {
            name,
            field,
            map,
            overrides,
            expected,
        })
    }

    /// Builds the germ with its overrides.
    pub fn to_germ(&self) -> Result<Germ, GermFileError> {
        let germ = Germ::new(
            &self.name,
            self.field.clone(),
            [self.map[0].as_str(), self.map[1].as_str(), self.map[2].as_str()],
        )?;
        let poly = |key: &str, s: &str| germ.parse(s).map_err(|e| bad(key, e.to_string()));
        let o = &self.overrides;
        let set = OverrideSet {
            double_curve: o.double_curve.as_deref().map(|s| poly("double_curve", s)).transpose()?,
            components: o
                .components
                .as_ref()
                .map(|cs| cs.iter().map(|s| poly("components", s)).collect::<Result<Vec<_>, _>>())
                .transpose()?,
            twist: o
                .twist
                .as_ref()
                .map(|ts| parse_twist(ts, o.components.as_ref().map(Vec::len)))
                .transpose()?,
            vertical_indices: o
                .vertical_indices
                .iter()
                .map(|s| parse_vertical_index(s))
                .collect::<Result<_, _>>()?,
            triple_points: o.triple_points,
        };
        Ok(germ.with_overrides(set))
    }
}

fn parse_index(s: &str, key: &str) -> Result<usize, GermFileError> {
    match s.trim().parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(bad(key, format!("`{s}` is not a 1-based component index"))),
    }
}

/// Entries `i:twisted` or `i:untwisted-with:j`, 1-based.
fn parse_twist(entries: &[String], n: Option<usize>) -> Result<Vec<ImageComponent>, GermFileError> {
    let mut out: Vec<ImageComponent> = Vec::new();
    for e in entries {
        let parts: Vec<&str> = e.split(':').map(str::trim).collect();
        let c = match parts.as_slice() {
            [i, "twisted"] => ImageComponent::Twisted(parse_index(i, "twist")?),
            [i, "untwisted-with", j] => {
                let (i, j) = (parse_index(i, "twist")?, parse_index(j, "twist")?);
                if i == j {
                    return Err(bad("twist", format!("`{e}` pairs a component with itself")));
                }
                ImageComponent::untwisted(i, j)
            }
            _ => return Err(bad("twist", format!("malformed entry `{e}`"))),
        };
        if let Some(n) = n {
            if c.members().iter().any(|&m| m >= n) {
                return Err(bad("twist", format!("`{e}` refers to a component beyond {n}")));
            }
        }
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Entries `i:value` or `i,j:value`, 1-based.
fn parse_vertical_index(s: &str) -> Result<(ImageComponent, i64), GermFileError> {
    let (pair, value) = s
        .rsplit_once(':')
        .ok_or_else(|| bad("vertical_indices", format!("malformed entry `{s}`")))?;
    let value = value
        .trim()
        .parse::<i64>()
        .map_err(|_| bad("vertical_indices", format!("`{value}` is not an integer")))?;
    let idx: Vec<usize> = pair
        .split(',')
        .map(|p| parse_index(p, "vertical_indices"))
        .collect::<Result<_, _>>()?;
    let c = match idx.as_slice() {
        [i] => ImageComponent::Twisted(*i),
        [i, j] if i != j => ImageComponent::untwisted(*i, *j),
        _ => return Err(bad("vertical_indices", format!("malformed entry `{s}`"))),
    };
    Ok((c, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    const S1: &str = r#"
# the S_1 germ
[germ]
name = "S1"
map = ["u", "v^2", "v^3 + u^2*v"]   # fold
field = "Q(i)"

[expected]
signature = -3
C = 2
"#;

    #[test]
    fn parses_sections() {
        let g = GermFile::parse(S1).unwrap();
        assert_eq!(g.name, "S1");
        assert_eq!(g.field, NumberField::gaussian());
        assert_eq!(g.map[2], "v^3 + u^2*v");
        assert_eq!(g.expected.signature, Some(-3));
        assert_eq!(g.expected.c, Some(2));
        assert_eq!(g.expected.t, None);
        assert!(g.to_germ().unwrap().overrides().is_empty());
    }

    #[test]
    fn overrides() {
        let src = r#"
[germ]
map = ["u^2", "v^2", "u^3 + v^3 + u*v"]
field = "Q(zeta3)"
[overrides]
components = ["u + v^2", "u^2 + v"]
twist = ["1:untwisted-with:2", "2:untwisted-with:1"]
vertical_indices = ["1,2:-3"]
T = 1
"#;
        let g = GermFile::parse(src).unwrap().to_germ().unwrap();
        let o = g.overrides();
        assert_eq!(o.components.as_ref().unwrap().len(), 2);
        assert_eq!(o.twist, Some(vec![ImageComponent::Untwisted(0, 1)]));
        assert_eq!(o.vertical_indices, vec![(ImageComponent::Untwisted(0, 1), -3)]);
        assert_eq!(o.triple_points, Some(1));
    }

    #[test]
    fn rejects_malformed_input() {
        let two = "[germ]\nmap = [\"u\", \"v^2\"]\n";
        assert!(matches!(GermFile::parse(two), Err(GermFileError::BadValue { .. })));
        assert!(matches!(GermFile::parse("map = [\"u\"]"), Err(GermFileError::Syntax { line: 1, .. })));
        assert!(GermFile::parse("[germ]\nmap = [\"u\", \"v\" \"w\"]").is_err());
        assert!(GermFile::parse("[germ]\nmap = [\"u\",\"v^2\",\"u*v\"]\ncolor = \"red\"").is_err());
        assert!(GermFile::parse("[germ]\nmap = [\"u\",\"v^2\",\"u*v\"]\nfield = \"R\"").is_err());
        assert!(parse_twist(&["1:twisted:2".into()], None).is_err());
        assert!(parse_twist(&["1:untwisted-with:1".into()], None).is_err());
        assert!(parse_twist(&["3:twisted".into()], Some(2)).is_err());
        assert!(parse_vertical_index("0:4").is_err());
    }

    #[test]
    fn hash_inside_quotes_is_kept() {
        let g = GermFile::parse("[germ]\nname = \"a#b\"\nmap = [\"u\",\"v^2\",\"u*v\"]").unwrap();
        assert_eq!(g.name, "a#b");
    }
}
