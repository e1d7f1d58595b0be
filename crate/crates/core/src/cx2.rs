//! The `cx2` text format.
//!
//! ```text
//! cx2 <n>
//! e <u> <v>
//! t <u> <v> <w>
//! ```
//!
//! Indices are 1-based and whitespace-separated. Blank lines and lines
//! starting with `#` are ignored. Cell complexes additionally use
//! `c <v1> ... <vk>` lines for polygonal 2-cells.

use std::fmt::Write as _;

use crate::complex::{CellComplex2, Complex2, Edge, Triangle, Vertex};
use crate::error::{Error, Result};

struct Parsed {
    n: u32,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    cells: Vec<Vec<Vertex>>,
}

fn parse_lines(text: &str) -> Result<Parsed> {
    let mut header: Option<u32> = None;
    let mut out = Parsed {
        n: 0,
        edges: Vec::new(),
        triangles: Vec::new(),
        cells: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap();
        let nums: Vec<u32> = fields
            .map(|f| {
                f.parse::<u32>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("`{f}` is not a vertex index"),
                })
            })
            .collect::<Result<_>>()?;
        let arity = |k: usize| -> Result<()> {
            if nums.len() != k {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("`{tag}` expects {k} fields, got {}", nums.len()),
                });
            }
            Ok(())
        };
        match (tag, header) {
            ("cx2", None) => {
                arity(1)?;
                header = Some(nums[0]);
                out.n = nums[0];
            }
            ("cx2", Some(_)) => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "duplicate header".into(),
                })
            }
            (_, None) => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "expected `cx2 <n>` header".into(),
                })
            }
            ("e", Some(_)) => {
                arity(2)?;
                out.edges.push([nums[0], nums[1]]);
            }
            ("t", Some(_)) => {
                arity(3)?;
                out.triangles.push([nums[0], nums[1], nums[2]]);
            }
            ("c", Some(_)) => out.cells.push(nums),
            (other, Some(_)) => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown record `{other}`"),
                })
            }
        }
    }
    if header.is_none() {
        return Err(Error::Parse {
            line: 0,
            msg: "missing `cx2 <n>` header".into(),
        });
    }
    Ok(out)
}

/// Parses a simplicial complex. Closure is enforced.
pub fn parse_complex(text: &str) -> Result<Complex2> {
    let p = parse_lines(text)?;
    if !p.cells.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "`c` records describe a cell complex; use the cell reader".into(),
        });
    }
    Complex2::new(p.n, &p.edges, &p.triangles)
}

/// Parses a cell complex; `t` records are read as 3-cells of the boundary walk.
pub fn parse_cell_complex(text: &str) -> Result<CellComplex2> {
    let p = parse_lines(text)?;
    let mut cells = p.cells;
    cells.extend(p.triangles.iter().map(|t| t.to_vec()));
    CellComplex2::new(p.n, &p.edges, &cells)
}

pub fn write_complex(x: &Complex2) -> String {
    let mut s = format!("cx2 {}\n", x.vertex_count());
    for [u, v] in x.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    for [u, v, w] in x.triangles() {
        writeln!(s, "t {u} {v} {w}").unwrap();
    }
    s
}

pub fn write_cell_complex(x: &CellComplex2) -> String {
    let mut s = format!("cx2 {}\n", x.vertex_count());
    for [u, v] in x.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    for cell in x.cells() {
        s.push('c');
        for v in cell {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use proptest::prelude::*;

    #[test]
    fn reads_filled_triangle() {
        let x = parse_complex("cx2 3\ne 1 2\ne 1 3\n\n# comment\ne 2 3\nt 1 2 3\n").unwrap();
        assert_eq!(x, filled_triangle());
    }

    #[test]
    fn reader_enforces_closure() {
        let err = parse_complex("cx2 3\ne 1 2\ne 1 3\nt 1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::ClosureViolation { missing: [2, 3], .. }));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_complex("e 1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_complex(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_complex("cx2 3\ne 1 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_complex("cx2 3\ne 1 2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_complex("cx2 3\nq 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_complex("cx2 4\ne 1 2\nc 1 2 3 4\n").is_err());
    }

    #[test]
    fn cell_complex_roundtrip() {
        let x = CellComplex2::new(4, &all_pairs(4), &[vec![1, 2, 3], vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(parse_cell_complex(&write_cell_complex(&x)).unwrap(), x);
    }

    proptest! {
        #[test]
        fn roundtrip(n in 1u32..10, mask in any::<u64>()) {
            let pairs = all_pairs(n);
            let edges: Vec<_> = pairs.iter().enumerate()
                .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            let x = Complex2::clique_two_skeleton(n, &edges).unwrap();
            prop_assert_eq!(parse_complex(&write_complex(&x)).unwrap(), x);
        }
    }
}
