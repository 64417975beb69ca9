//! The census file format: a line-oriented text format with a header and
//! one record per `(n_vertices, n_edges, count)`, rendered canonically so
//! that render → parse → render round-trips byte-exactly.
//!
//! ```text
//! latpoly-census v1
//! model lt
//! d 2
//! L 1
//! norm linf
//! required 0,0
//! max-vertices 4
//! counts 4
//! 1 0 1
//! 2 1 8
//! 3 2 84
//! 4 3 960
//! end
//! ```
//!
//! `required` holds one or more lattice points, coordinates comma-separated
//! and points separated by `;`.

use std::collections::BTreeMap;

use latpoly_core::census::{Point, PolymerCensus};
use latpoly_core::kernel::Norm;
use latpoly_core::PolymerModel;

const MAGIC: &str = "latpoly-census v1";

pub fn model_token(model: PolymerModel) -> &'static str {
    match model {
        PolymerModel::Trees => "lt",
        PolymerModel::Animals => "la",
    }
}

pub fn parse_model(token: &str) -> Result<PolymerModel, String> {
    match token {
        "lt" => Ok(PolymerModel::Trees),
        "la" => Ok(PolymerModel::Animals),
        other => Err(format!("unknown model '{other}' (expected lt or la)")),
    }
}

pub fn norm_token(norm: Norm) -> &'static str {
    match norm {
        Norm::Sup => "linf",
        Norm::Euclidean => "l2",
    }
}

pub fn parse_norm(token: &str) -> Result<Norm, String> {
    match token {
        "linf" => Ok(Norm::Sup),
        "l2" => Ok(Norm::Euclidean),
        other => Err(format!("unknown norm '{other}' (expected linf or l2)")),
    }
}

fn render_point(p: &Point) -> String {
    p.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_point(s: &str) -> Result<Point, String> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad coordinate '{c}'"))
        })
        .collect()
}

/// Canonical text rendering of a census.
pub fn render(census: &PolymerCensus) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("model {}\n", model_token(census.model)));
    out.push_str(&format!("d {}\n", census.d));
    out.push_str(&format!("L {}\n", census.range));
    out.push_str(&format!("norm {}\n", norm_token(census.norm)));
    let required: Vec<String> = census.required.iter().map(render_point).collect();
    out.push_str(&format!("required {}\n", required.join(";")));
    out.push_str(&format!("max-vertices {}\n", census.max_vertices));
    out.push_str(&format!("counts {}\n", census.counts.len()));
    for (&(n, k), &count) in &census.counts {
        out.push_str(&format!("{n} {k} {count}\n"));
    }
    out.push_str("end\n");
    out
}

/// Strict parser; any structural deviation is an error.
pub fn parse(text: &str) -> Result<PolymerCensus, String> {
    let mut lines = text.lines().enumerate();
    let mut next = |expect: &str| -> Result<(usize, String), String> {
        lines
            .next()
            .map(|(i, l)| (i + 1, l.to_string()))
            .ok_or_else(|| format!("unexpected end of file, expected {expect}"))
    };

    let (i, magic) = next("header")?;
    if magic != MAGIC {
        return Err(format!("line {i}: bad header '{magic}'"));
    }
    let mut field = |name: &str| -> Result<String, String> {
        let (i, line) = next(name)?;
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| format!("line {i}: expected '{name} <value>'"))?;
        if key != name {
            return Err(format!("line {i}: expected field '{name}', got '{key}'"));
        }
        Ok(value.trim().to_string())
    };

    let model = parse_model(&field("model")?)?;
    let d: u32 = field("d")?
        .parse()
        .map_err(|_| "bad dimension".to_string())?;
    let range: u32 = field("L")?.parse().map_err(|_| "bad range".to_string())?;
    let norm = parse_norm(&field("norm")?)?;
    let required: Vec<Point> = field("required")?
        .split(';')
        .map(parse_point)
        .collect::<Result<_, _>>()?;
    let max_vertices: u32 = field("max-vertices")?
        .parse()
        .map_err(|_| "bad max-vertices".to_string())?;
    let n_records: usize = field("counts")?
        .parse()
        .map_err(|_| "bad record count".to_string())?;

    let mut counts = BTreeMap::new();
    for _ in 0..n_records {
        let (i, line) = next("count record")?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(format!("line {i}: expected 'n_vertices n_edges count'"));
        }
        let n: u32 = parts[0]
            .parse()
            .map_err(|_| format!("line {i}: bad vertex count"))?;
        let k: u32 = parts[1]
            .parse()
            .map_err(|_| format!("line {i}: bad edge count"))?;
        let c: u64 = parts[2]
            .parse()
            .map_err(|_| format!("line {i}: bad count"))?;
        if counts.insert((n, k), c).is_some() {
            return Err(format!("line {i}: duplicate record ({n}, {k})"));
        }
    }
    let (i, terminator) = next("'end'")?;
    if terminator != "end" {
        return Err(format!("line {i}: expected 'end', got '{terminator}'"));
    }
    if let Some((i, extra)) = lines.next() {
        if !extra.trim().is_empty() {
            return Err(format!("line {}: trailing content '{extra}'", i + 1));
        }
    }

    for p in &required {
        if p.len() != d as usize {
            return Err(format!(
                "required point {} has {} coordinates, expected {d}",
                render_point(p),
                p.len()
            ));
        }
    }

    Ok(PolymerCensus {
        model,
        d,
        range,
        norm,
        required,
        max_vertices,
        counts,
    })
}
