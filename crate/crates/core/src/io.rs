//! Graph files and their JSON sidecars.
//!
//! Text graphs hold one `u v` edge per line; `#` starts a comment. Binary
//! graphs are `GPAG`, a version byte, little-endian `u64` vertex count, `m`
//! and edge count, then the endpoint array as little-endian `u32`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{EdgeList, ModelParams, Multigraph, Shift};

pub const BINARY_MAGIC: &[u8; 4] = b"GPAG";
pub const BINARY_VERSION: u8 = 1;
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    #[default]
    Text,
    Binary,
}

impl GraphFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::Text => "edges",
            GraphFormat::Binary => "gpag",
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

pub fn write_text<G: Multigraph + ?Sized, W: Write>(graph: &G, mut out: W) -> std::io::Result<()> {
    for e in graph.edges() {
        writeln!(out, "{} {}", e[0], e[1])?;
    }
    out.flush()
}

/// Parses a text edge list. The vertex count is `n` when given, otherwise
/// one more than the largest id.
pub fn parse_text<R: BufRead>(input: R, n: Option<usize>) -> Result<EdgeList> {
    let mut endpoints = Vec::new();
    let mut max_id: Option<u32> = None;
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::Format {
            line: line_no,
            message: e.to_string(),
        })?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut fields = body.split_whitespace();
        let mut id = |what: &str| -> Result<u32> {
            let tok = fields.next().ok_or_else(|| Error::Format {
                line: line_no,
                message: format!("missing {what} vertex"),
            })?;
            tok.parse::<u32>().map_err(|_| Error::Format {
                line: line_no,
                message: format!("bad vertex id {tok:?}"),
            })
        };
        let u = id("first")?;
        let v = id("second")?;
        if fields.next().is_some() {
            return Err(Error::Format {
                line: line_no,
                message: "expected two fields".into(),
            });
        }
        if let Some(n) = n {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Format {
                    line: line_no,
                    message: format!("vertex id out of range for n = {n}"),
                });
            }
        }
        max_id = max_id.max(Some(u.max(v)));
        endpoints.push(u);
        endpoints.push(v);
    }
    let n = n.unwrap_or_else(|| max_id.map_or(0, |x| x as usize + 1));
    Ok(EdgeList { n, endpoints })
}

pub fn write_binary<G: Multigraph + ?Sized, W: Write>(graph: &G, m: usize, mut out: W) -> std::io::Result<()> {
    out.write_all(BINARY_MAGIC)?;
    out.write_all(&[BINARY_VERSION])?;
    for x in [graph.vertex_count(), m, graph.edge_count()] {
        out.write_all(&(x as u64).to_le_bytes())?;
    }
    for &v in graph.endpoints() {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()
}

/// Reads a binary graph, returning it with its stored `m`.
pub fn parse_binary<R: Read>(mut input: R) -> Result<(EdgeList, usize)> {
    let bad = |message: &str| Error::Format {
        line: 0,
        message: message.into(),
    };
    let mut head = [0u8; 5];
    input.read_exact(&mut head).map_err(|_| bad("truncated header"))?;
    if &head[..4] != BINARY_MAGIC {
        return Err(bad("missing GPAG magic"));
    }
    if head[4] != BINARY_VERSION {
        return Err(bad("unsupported binary version"));
    }
    let mut word = [0u8; 8];
    let mut fields = [0usize; 3];
    for f in &mut fields {
        input.read_exact(&mut word).map_err(|_| bad("truncated header"))?;
        *f = u64::from_le_bytes(word) as usize;
    }
    let [n, m, edges] = fields;
    let mut raw = Vec::new();
    input.read_to_end(&mut raw).map_err(|_| bad("unreadable body"))?;
    if raw.len() != edges * 8 {
        return Err(bad("body length does not match edge count"));
    }
    let endpoints: Vec<u32> = raw
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    if endpoints.iter().any(|&v| v as usize >= n) {
        return Err(bad("vertex id out of range"));
    }
    Ok((EdgeList { n, endpoints }, m))
}

pub fn write_graph<G: Multigraph + ?Sized>(graph: &G, m: usize, path: &Path, format: GraphFormat) -> Result<()> {
    let out = create(path)?;
    match format {
        GraphFormat::Text => write_text(graph, out),
        GraphFormat::Binary => write_binary(graph, m, out),
    }
    .map_err(|e| Error::io(path, e))
}

/// Reads a graph in either format; binary files are recognized by their
/// magic bytes. Returns the `m` stored in binary files.
pub fn read_graph(path: &Path, n: Option<usize>) -> Result<(EdgeList, Option<usize>)> {
    let mut reader = open(path)?;
    let head = reader.fill_buf().map_err(|e| Error::io(path, e))?;
    if head.starts_with(BINARY_MAGIC) {
        let (g, m) = parse_binary(reader)?;
        Ok((g, Some(m)))
    } else {
        Ok((parse_text(reader, n)?, None))
    }
}

/// `graph.edges` -> `graph.json`.
pub fn sidecar_path(graph_path: &Path) -> PathBuf {
    graph_path.with_extension("json")
}

/// Metadata stored next to a generated graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphMeta {
    pub format_version: u32,
    pub version: String,
    pub format: GraphFormat,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub p_tri: f64,
    /// Attractiveness shift; `"inf"` for uniform picks.
    #[serde(with = "shift_token")]
    pub shift_a: Shift<f64>,
    pub n: usize,
    pub n0: usize,
    pub edges: usize,
    pub seed: u64,
    /// The resolved configuration that produced the file.
    #[serde(default)]
    pub config: serde_json::Value,
}

impl GraphMeta {
    pub fn new(params: &ModelParams<f64>, n: usize, seed: u64, format: GraphFormat) -> Self {
        GraphMeta {
            format_version: FORMAT_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            format,
            m: params.m(),
            a: *params.a(),
            d: *params.d(),
            b: *params.b(),
            p_tri: *params.p_tri(),
            shift_a: params.shift().clone(),
            n,
            n0: params.n0(),
            edges: params.m() * n,
            seed,
            config: serde_json::Value::Null,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_json(self, path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_reader(open(path)?)?)
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize + ?Sized>(value: &T, path: &Path) -> Result<()> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}

pub mod shift_token {
    use super::*;

    pub const INFINITY_TOKEN: &str = "inf";

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Token(String),
    }

    pub fn serialize<S: Serializer>(shift: &Shift<f64>, s: S) -> Result<S::Ok, S::Error> {
        match shift {
            Shift::Finite(a) => Repr::Number(*a),
            Shift::Uniform => Repr::Token(INFINITY_TOKEN.into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Shift<f64>, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(a) => Ok(Shift::Finite(a)),
            Repr::Token(t) if t == INFINITY_TOKEN => Ok(Shift::Uniform),
            Repr::Token(t) => Err(serde::de::Error::custom(format!("bad shift {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate, resolve_params, GraphState};

    #[test]
    fn text_round_trip() {
        let g = GraphState::seed(2);
        let mut buf = Vec::new();
        write_text(&g, &mut buf).unwrap();
        assert!(buf.starts_with(b"0 1\n0 2\n"));
        let back = parse_text(&buf[..], None).unwrap();
        assert_eq!(back.n, 4);
        assert_eq!(back.endpoints, g.endpoints());
    }

    #[test]
    fn text_errors_carry_line() {
        let input = "# header\n0 1\n\n1 x\n";
        match parse_text(input.as_bytes(), None) {
            Err(Error::Format { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_text("0 1 2\n".as_bytes(), None), Err(Error::Format { line: 1, .. })));
        assert!(matches!(parse_text("0 5\n".as_bytes(), Some(3)), Err(Error::Format { line: 1, .. })));
    }

    #[test]
    fn binary_round_trip_and_detection() {
        let p = resolve_params(2, 0.5, 0.3).unwrap();
        let g = generate(&p, 500, 3).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.gpag");
        write_graph(&g, 2, &path, GraphFormat::Binary).unwrap();
        let (back, m) = read_graph(&path, None).unwrap();
        assert_eq!(m, Some(2));
        assert_eq!(back.n, 500);
        assert_eq!(back.endpoints, g.endpoints());

        let mut bytes = std::fs::read(&path).unwrap();
        bytes.truncate(bytes.len() - 3);
        assert!(parse_binary(&bytes[..]).is_err());
    }

    #[test]
    fn sidecar_shift_token() {
        let p = resolve_params(2, 0.15, 0.3).unwrap();
        let meta = GraphMeta::new(&p, 100, 7, GraphFormat::Text);
        let json = serde_json::to_string(&meta).unwrap();
        assert!(json.contains("\"shift_a\":\"inf\""));
        let back: GraphMeta = serde_json::from_str(&json).unwrap();
        assert_eq!(back, meta);

        let p = resolve_params(2, 0.5, 0.3).unwrap();
        let meta = GraphMeta::new(&p, 100, 7, GraphFormat::Text);
        let json = serde_json::to_string(&meta).unwrap();
        assert!(json.contains("\"shift_a\":0.0"));
    }

    #[test]
    fn missing_file_names_path() {
        let err = read_graph(Path::new("/nonexistent/g.edges"), None).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/g.edges"));
    }
}
