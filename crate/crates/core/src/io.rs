//! Polytope file parsing/serialization and batch scanning.
//!
//! File format: optional `#` comment lines; a header `m n` (two positive
//! integers, optionally followed by a label); then the vertex matrix as
//! signed integers. Vertex-major layout (`m` rows of `n` coordinates) is the
//! native convention; the coordinate-major layout used by the common external
//! databases (`m < n`: `m` rows are coordinates, `n` columns are points) is
//! detected from the header shape, or forced with the transpose option.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;


use crate::arith::{Int, IntVec};
use crate::error::{Error, Result};
use crate::polytope::{LatticePolytope, LatticeTag};
use crate::report::{analyze_labeled, StabilityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Auto,
    VertexMajor,
    Transposed,
}

#[derive(Debug, Clone)]
pub struct ParsedPolytope {
    pub dim: usize,
    pub vertices: Vec<IntVec>,
    pub label: Option<String>,
    /// 1-based line number of the header, for error reporting.
    pub line: usize,
}

impl ParsedPolytope {
    pub fn into_polytope(self, tag: LatticeTag) -> Result<LatticePolytope> {
        LatticePolytope::new(self.dim, self.vertices, tag)
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("bad header integer `{tok}`"),
    })
}

fn parse_int(tok: &str, line: usize) -> Result<Int> {
    Int::from_str(tok).map_err(|_| Error::Parse {
        line,
        message: format!("non-integer entry `{tok}`"),
    })
}

/// Parse every polytope in the text. Headers with `m > n` read as `m`
/// vertices in dimension `n`; `m < n` reads coordinate-major (dimension `m`,
/// `n` points) unless the layout is forced; `m = n` is ambiguous and
/// rejected in auto mode.
pub fn parse_polytopes(text: &str, layout: Layout) -> Result<Vec<ParsedPolytope>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
    let mut out = Vec::new();
    while let Some((lineno, header)) = lines.next() {
        let mut toks = header.split_whitespace();
        let a = parse_usize(toks.next().expect("nonempty line"), lineno)?;
        let b = match toks.next() {
            Some(t) => parse_usize(t, lineno)?,
            None => {
                return Err(Error::Parse {
                    line: lineno,
                    message: "header needs two integers `m n`".into(),
                })
            }
        };
        let label_rest: Vec<&str> = toks.collect();
        let label = if label_rest.is_empty() {
            None
        } else {
            Some(label_rest.join(" "))
        };
        if a == 0 || b == 0 {
            return Err(Error::Parse {
                line: lineno,
                message: "header integers must be positive".into(),
            });
        }
        let transposed = match layout {
            Layout::VertexMajor => false,
            Layout::Transposed => true,
            Layout::Auto => {
                if a > b {
                    false
                } else if a < b {
                    true
                } else {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!(
                            "square header {a} {b} is ambiguous; a valid polytope needs more \
                             vertices than its dimension (use an explicit layout to override)"
                        ),
                    });
                }
            }
        };
        let (rows, cols) = (a, b);
        let mut matrix: Vec<IntVec> = Vec::with_capacity(rows);
        for _ in 0..rows {
            let (rl, row_line) = lines.next().ok_or(Error::Parse {
                line: lineno,
                message: format!("expected {rows} matrix rows after header"),
            })?;
            let entries: Vec<&str> = row_line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(Error::Parse {
                    line: rl,
                    message: format!("expected {cols} entries, found {}", entries.len()),
                });
            }
            let mut row = Vec::with_capacity(cols);
            for t in entries {
                row.push(parse_int(t, rl)?);
            }
            matrix.push(row);
        }
        let (dim, vertices) = if transposed {
            // rows are coordinates, columns are points
            let dim = rows;
            let verts: Vec<IntVec> = (0..cols)
                .map(|j| matrix.iter().map(|r| r[j].clone()).collect())
                .collect();
            (dim, verts)
        } else {
            (cols, matrix)
        };
        if vertices.len() <= dim {
            return Err(Error::Parse {
                line: lineno,
                message: format!(
                    "{} vertices cannot span a full-dimensional polytope in dimension {dim}",
                    vertices.len()
                ),
            });
        }
        out.push(ParsedPolytope {
            dim,
            vertices,
            label,
            line: lineno,
        });
    }
    Ok(out)
}

/// Vertex-major serialization with lexicographically sorted rows; exact
/// inverse of `parse_polytopes` on valid polytopes.
pub fn serialize_polytope(p: &LatticePolytope) -> String {
    let mut s = format!("{} {}\n", p.vertices().len(), p.dim());
    for v in p.vertices() {
        let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone)]
pub enum ScanEntry {
    Report(Box<StabilityReport>),
    Failed {
        index: usize,
        label: Option<String>,
        line: usize,
        message: String,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanCounts {
    pub total: usize,
    pub analyzed: usize,
    pub failed: usize,
    pub k_polystable: usize,
    pub reductive: usize,
    pub smooth: usize,
}

#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub entries: Vec<ScanEntry>,
    pub counts: ScanCounts,
}

/// Analyze every entry of a multi-polytope file. Entries failing validation
/// are recorded and skipped. `jobs` only throttles parallelism; output order
/// and all counts are fixed by input order.
pub fn scan(text: &str, tag: LatticeTag, layout: Layout, jobs: usize) -> Result<ScanSummary> {
    let parsed = parse_polytopes(text, layout)?;
    let total = parsed.len();
    let jobs = jobs.max(1).min(total.max(1));

    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<ScanEntry>>> = (0..total).map(|_| Mutex::new(None)).collect();
    let work = |_: usize| loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        if i >= total {
            break;
        }
        let item = &parsed[i];
        let label = item.label.clone();
        let line = item.line;
        let default_label = format!("entry {}", i + 1);
        let result = LatticePolytope::new(item.dim, item.vertices.clone(), tag).and_then(|p| {
            analyze_labeled(&p, Some(label.clone().unwrap_or(default_label)))
        });
        let entry = match result {
            Ok(r) => ScanEntry::Report(Box::new(r)),
            Err(e) => ScanEntry::Failed {
                index: i,
                label,
                line,
                message: e.to_string(),
            },
        };
        *slots[i].lock().expect("no poisoned slot") = Some(entry);
    };
    if jobs <= 1 {
        work(0);
    } else {
        std::thread::scope(|scope| {
            for t in 0..jobs {
                scope.spawn(move || work(t));
            }
        });
    }

    let mut entries = Vec::with_capacity(total);
    let mut counts = ScanCounts {
        total,
        ..Default::default()
    };
    for slot in slots {
        let entry = slot
            .into_inner()
            .expect("no poisoned slot")
            .expect("every slot filled");
        match &entry {
            ScanEntry::Report(r) => {
                counts.analyzed += 1;
                if r.k_polystable {
                    counts.k_polystable += 1;
                }
                if r.reductive {
                    counts.reductive += 1;
                }
                if r.smooth {
                    counts.smooth += 1;
                }
            }
            ScanEntry::Failed { .. } => counts.failed += 1,
        }
        entries.push(entry);
    }
    Ok(ScanSummary { entries, counts })
}

impl ScanSummary {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, entry) in self.entries.iter().enumerate() {
            match entry {
                ScanEntry::Report(r) => {
                    let name = r.label.clone().unwrap_or_else(|| format!("entry {}", i + 1));
                    s.push_str(&format!(
                        "{name}: k_polystable={} reductive={} smooth={} delta={}\n",
                        r.k_polystable,
                        r.reductive,
                        r.smooth,
                        crate::arith::format_rational(&r.delta)
                    ));
                }
                ScanEntry::Failed { label, line, message, .. } => {
                    let name = label.clone().unwrap_or_else(|| format!("entry {}", i + 1));
                    s.push_str(&format!("{name} (line {line}): error: {message}\n"));
                }
            }
        }
        s.push_str(&format!(
            "scanned {} entries: {} analyzed, {} failed; k_polystable {}, reductive {}, smooth {}\n",
            self.counts.total,
            self.counts.analyzed,
            self.counts.failed,
            self.counts.k_polystable,
            self.counts.reductive,
            self.counts.smooth
        ));
        s
    }

    pub fn to_json(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, entry) in self.entries.iter().enumerate() {
            match entry {
                ScanEntry::Report(r) => {
                    let label = r.label.clone().unwrap_or_else(|| format!("entry {}", i + 1));
                    parts.push(format!(
                        "{{\"label\":{},\"report\":{}}}",
                        serde_json::to_string(&label).expect("string"),
                        r.to_json()
                    ));
                }
                ScanEntry::Failed { label, line, message, .. } => {
                    let label = label.clone().unwrap_or_else(|| format!("entry {}", i + 1));
                    parts.push(format!(
                        "{{\"label\":{},\"error\":{},\"line\":{line}}}",
                        serde_json::to_string(&label).expect("string"),
                        serde_json::to_string(&message).expect("string"),
                    ));
                }
            }
        }
        format!(
            "{{\"entries\":[{}],\"counts\":{{\"total\":{},\"analyzed\":{},\"failed\":{},\"k_polystable\":{},\"reductive\":{},\"smooth\":{}}}}}",
            parts.join(","),
            self.counts.total,
            self.counts.analyzed,
            self.counts.failed,
            self.counts.k_polystable,
            self.counts.reductive,
            self.counts.smooth
        )
    }
}
