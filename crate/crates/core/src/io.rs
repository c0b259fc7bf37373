//! Tab-separated edge-list format.
//!
//! ```text
//! #attachgraph v1 model=<ua|pa> n=<n> m1=<m1> m2=<m2> seed=<u64>
//! stem<TAB>ordinal<TAB>target<TAB>colour
//! ...
//! ```
//!
//! One line per record in `(stem, ordinal)` order, colour one of `b`, `r`,
//! `p`. Every line, the last included, ends with `\n`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{AttachGraph, Colour, Model, Vertex};

const MAGIC: &str = "#attachgraph";
const VERSION: &str = "v1";

pub fn write_edge_list(g: &AttachGraph) -> String {
    let mut out = String::with_capacity(64 + g.len() * 16);
    let _ = writeln!(
        out,
        "{MAGIC} {VERSION} model={} n={} m1={} m2={} seed={}",
        g.model().tag(),
        g.n(),
        g.m1(),
        g.m2(),
        g.seed()
    );
    for r in g.records() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            r.stem,
            r.ordinal,
            r.target,
            r.colour.letter()
        );
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn header_field<'a>(tokens: &[&'a str], key: &str) -> Result<&'a str> {
    tokens
        .iter()
        .find_map(|t| t.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
        .ok_or_else(|| parse_err(1, format!("header is missing `{key}=`")))
}

fn number<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{s}`")))
}

pub fn read_edge_list(text: &str) -> Result<AttachGraph> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let tokens: Vec<&str> = header.split(' ').collect();
    if tokens.first() != Some(&MAGIC) || tokens.get(1) != Some(&VERSION) {
        return Err(parse_err(1, format!("expected `{MAGIC} {VERSION}` header")));
    }
    let model_tag = header_field(&tokens, "model")?;
    let model = match model_tag {
        "ua" => Model::Uniform,
        "pa" => Model::Preferential,
        other => return Err(parse_err(1, format!("unknown model `{other}`"))),
    };
    let n: u32 = number(header_field(&tokens, "n")?, 1, "n")?;
    let m1: u32 = number(header_field(&tokens, "m1")?, 1, "m1")?;
    let m2: u32 = number(header_field(&tokens, "m2")?, 1, "m2")?;
    let seed: u64 = number(header_field(&tokens, "seed")?, 1, "seed")?;
    let m = m1 + m2;

    let mut targets = Vec::with_capacity(n as usize * m as usize);
    let mut coloured: Option<bool> = None;
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(parse_err(lineno, "expected four tab-separated fields"));
        }
        let stem: Vertex = number(fields[0], lineno, "stem")?;
        let ordinal: u32 = number(fields[1], lineno, "ordinal")?;
        let target: Vertex = number(fields[2], lineno, "target")?;
        let colour = Colour::from_letter(fields[3])
            .ok_or_else(|| parse_err(lineno, format!("invalid colour `{}`", fields[3])))?;

        let index = targets.len();
        if m == 0 {
            return Err(parse_err(lineno, "records present but m1 + m2 = 0"));
        }
        let expected_stem = (index / m as usize + 1) as Vertex;
        let expected_ordinal = (index % m as usize + 1) as u32;
        if stem != expected_stem || ordinal != expected_ordinal {
            return Err(parse_err(
                lineno,
                format!("expected record {expected_stem}:{expected_ordinal}, found {stem}:{ordinal}"),
            ));
        }
        let this_coloured = colour != Colour::Plain;
        match coloured {
            None => coloured = Some(this_coloured),
            Some(c) if c != this_coloured => {
                return Err(parse_err(lineno, "mixed plain and coloured records"))
            }
            _ => {}
        }
        if this_coloured {
            let want = if ordinal <= m1 { Colour::Blue } else { Colour::Red };
            if colour != want {
                return Err(parse_err(lineno, "colour does not match the m1/m2 split"));
            }
        }
        targets.push(target);
    }
    let coloured = coloured.unwrap_or(m2 != 0);
    AttachGraph::from_parts(model, n, m1, m2, coloured, seed, targets).map_err(|e| match e {
        Error::InvalidParameter(msg) => parse_err(0, msg),
        other => other,
    })
}

pub fn save(g: &AttachGraph, path: &Path) -> Result<()> {
    fs::write(path, write_edge_list(g))
        .map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

pub fn load(path: &Path) -> Result<AttachGraph> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    read_edge_list(&text)
}
