//! Textual group specifications.
//!
//! Named forms: `S:6`, `A:6`, `C:7`, `D:18`, `PSL2:9`, `PGL2:5`, `PGammaL2:8`,
//! `M11`, `M12`, `wr(S:3,2)`, `direct(S:3,C:5)`, `coset(PSL2:9,S:3)`.
//! Explicit generators: a JSON object `{"degree": n, "generators": [...]}` with
//! 1-indexed cycle strings, inline or as a path to a `.json` file.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::groups::{GroupSpec, NamedGroupSpec};
use crate::perm::Permutation;

#[derive(Deserialize)]
struct GeneratorFile {
    degree: usize,
    generators: Vec<String>,
}

/// Parse a group specification. A string naming an existing `.json` file is
/// read from disk.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse {
            offset: 0,
            message: "empty group specification".into(),
        });
    }
    if trimmed.ends_with(".json") && !trimmed.starts_with('{') {
        let path = Path::new(trimmed);
        let body = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        return parse_generators_json(&body, 0);
    }
    let mut parser = Parser { text: trimmed, pos: 0 };
    let spec = parser.spec()?;
    parser.skip_ws();
    if parser.pos != trimmed.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(spec)
}

/// Parse the JSON generator form.
pub fn parse_generators_json(body: &str, offset: usize) -> Result<GroupSpec> {
    let file: GeneratorFile = serde_json::from_str(body).map_err(|e| Error::Parse {
        offset: offset + e.column().saturating_sub(1),
        message: format!("bad generator JSON: {e}"),
    })?;
    if file.degree == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let generators = file
        .generators
        .iter()
        .map(|g| Permutation::parse_cycles(g, file.degree, true))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupSpec::Generators {
        degree: file.degree,
        generators,
    })
}

/// Generators given as 1-indexed cycle strings separated by `;`.
pub fn parse_generator_list(text: &str, degree: usize) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let t = part.trim();
        if !t.is_empty() {
            out.push(Permutation::parse_cycles(t, degree, true).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse {
                    offset: offset + (part.len() - part.trim_start().len()) + o,
                    message,
                },
                other => other,
            })?);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Canonical text of a specification; parsing it gives back the same value.
pub fn print_group_spec(spec: &GroupSpec) -> String {
    spec.to_string()
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .char_indices()
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map_or(r.len(), |(i, _)| i);
        self.pos += len;
        &r[..len]
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let r = self.rest();
        let len = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let n = r[..len].parse().map_err(|_| self.error("number out of range"))?;
        self.pos += len;
        Ok(n)
    }

    fn json_object(&mut self) -> Result<GroupSpec> {
        let start = self.pos;
        let mut depth = 0usize;
        let mut in_string = false;
        for (i, c) in self.rest().char_indices() {
            match c {
                '"' => in_string = !in_string,
                '{' if !in_string => depth += 1,
                '}' if !in_string => {
                    depth -= 1;
                    if depth == 0 {
                        let end = start + i + 1;
                        self.pos = end;
                        return parse_generators_json(&self.text[start..end], start);
                    }
                }
                _ => {}
            }
        }
        Err(self.error("unterminated JSON object"))
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        if self.rest().starts_with('{') {
            return self.json_object();
        }
        let start = self.pos;
        let name = self.ident();
        if name.is_empty() {
            return Err(self.error("expected a group name"));
        }
        let upper = name.to_ascii_uppercase();
        let named = match upper.as_str() {
            "M11" => NamedGroupSpec::M11,
            "M12" => NamedGroupSpec::M12,
            "WR" => {
                self.eat('(')?;
                let base = self.spec()?;
                self.eat(',')?;
                let k = self.number()? as usize;
                self.eat(')')?;
                NamedGroupSpec::Wreath {
                    base: Box::new(base),
                    k,
                }
            }
            "DIRECT" => {
                self.eat('(')?;
                let mut factors = vec![self.spec()?];
                loop {
                    self.skip_ws();
                    if self.rest().starts_with(',') {
                        self.pos += 1;
                        factors.push(self.spec()?);
                    } else {
                        break;
                    }
                }
                self.eat(')')?;
                NamedGroupSpec::Direct { factors }
            }
            "COSET" => {
                self.eat('(')?;
                let group = self.spec()?;
                self.eat(',')?;
                let subgroup = self.spec()?;
                self.eat(')')?;
                NamedGroupSpec::Coset {
                    group: Box::new(group),
                    subgroup: Box::new(subgroup),
                }
            }
            "S" | "A" | "C" | "D" | "PSL2" | "PGL2" | "PGAMMAL2" => {
                self.eat(':')?;
                let n = self.number()?;
                match upper.as_str() {
                    "S" => NamedGroupSpec::Symmetric { n: n as usize },
                    "A" => NamedGroupSpec::Alternating { n: n as usize },
                    "C" => NamedGroupSpec::Cyclic { n: n as usize },
                    "D" => NamedGroupSpec::Dihedral { order: n as usize },
                    "PSL2" => NamedGroupSpec::Psl2 { q: n },
                    "PGL2" => NamedGroupSpec::Pgl2 { q: n },
                    _ => NamedGroupSpec::PGammaL2 { q: n },
                }
            }
            _ => {
                return Err(Error::Parse {
                    offset: start,
                    message: format!("unknown group family '{name}'"),
                })
            }
        };
        Ok(GroupSpec::Named(named))
    }
}
