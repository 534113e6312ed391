//! Text format for single points of either cone.
//!
//! ```text
//! enhanced n q        exotic n q
//! v (n entries)       w (2n entries)
//! n matrix rows       2n matrix rows
//! ```
//!
//! Entries are base-10 field indices separated by whitespace. For exotic
//! points the form is the one of `λ`, where `λ ∪ λ` is the Jordan type of `y`.

use crate::enhanced::EnhancedPoint;
use crate::error::{Error, Result};
use crate::exotic::{make_space, ExoticPoint};
use crate::gf::{make_field, FqElem};
use crate::linalg::{parse_vector, MatF};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointFile {
    Enhanced(EnhancedPoint),
    Exotic(ExoticPoint),
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_point_file(text: &str) -> Result<PointFile> {
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
    let Some(&(hline, header)) = lines.first() else {
        return Err(parse_err(1, "empty file"));
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [kind, n, q] = fields[..] else {
        return Err(parse_err(hline, "header must be `enhanced n q` or `exotic n q`"));
    };
    let n: usize = n.parse().map_err(|_| parse_err(hline, format!("bad dimension {n:?}")))?;
    let q: usize = q.parse().map_err(|_| parse_err(hline, format!("bad field order {q:?}")))?;
    let dim = match kind {
        "enhanced" => n,
        "exotic" => 2 * n,
        other => return Err(parse_err(hline, format!("unknown cone {other:?}"))),
    };
    let field = make_field(q)?;
    if lines.len() != dim + 2 {
        return Err(parse_err(hline, format!("expected {} data lines, found {}", dim + 1, lines.len() - 1)));
    }
    let (vline, vtext) = lines[1];
    let vec = parse_vector(&field, vtext, vline)?;
    if vec.len() != dim {
        return Err(parse_err(vline, format!("expected {dim} vector entries, found {}", vec.len())));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for &(ln, row) in &lines[2..] {
        let entries = parse_vector(&field, row, ln)?;
        if entries.len() != dim {
            return Err(parse_err(ln, format!("expected {dim} matrix entries, found {}", entries.len())));
        }
        data.extend(entries);
    }
    let mat = MatF::from_vec(&field, dim, dim, data)?;
    match kind {
        "enhanced" => Ok(PointFile::Enhanced(EnhancedPoint::new(vec, mat)?)),
        _ => {
            let lambda = mat.jordan_type()?.halve_multiplicities().ok_or(Error::NotInN0)?;
            Ok(PointFile::Exotic(ExoticPoint::new(vec, mat, make_space(&lambda, &field))?))
        }
    }
}

fn render(kind: &str, n: usize, q: usize, vec: &[FqElem], mat: &MatF) -> String {
    let v: Vec<String> = vec.iter().map(|e| e.to_string()).collect();
    format!("{kind} {n} {q}\n{}\n{}", v.join(" "), mat.to_text())
}

pub fn write_enhanced(pt: &EnhancedPoint) -> String {
    render("enhanced", pt.dim(), pt.field().order(), &pt.v, &pt.x)
}

pub fn write_exotic(pt: &ExoticPoint) -> String {
    render("exotic", pt.dim() / 2, pt.field().order(), &pt.w, &pt.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Bipartition;
    use crate::enhanced::representative;
    use crate::exotic::exotic_representative;
    use crate::gf::make_field;

    #[test]
    fn round_trips() {
        let f = make_field(3).unwrap();
        let b = Bipartition::from_parts(&[1, 1], &[1]).unwrap();
        let e = representative(&b, &f);
        assert_eq!(parse_point_file(&write_enhanced(&e)).unwrap(), PointFile::Enhanced(e));
        let x = exotic_representative(&b, &f);
        assert_eq!(parse_point_file(&write_exotic(&x)).unwrap(), PointFile::Exotic(x));
    }

    #[test]
    fn example_text() {
        let text = "enhanced 3 2\n0 0 0\n0 1 0\n0 0 0\n0 0 0\n";
        let PointFile::Enhanced(pt) = parse_point_file(text).unwrap() else { panic!() };
        assert_eq!(pt.x.jordan_type().unwrap().parts(), &[2, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_point_file(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_point_file("affine 1 2\n0\n0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_point_file("enhanced 1 6\n0\n0\n"), Err(Error::NotPrimePower(6))));
        assert!(matches!(parse_point_file("enhanced 2 2\n0 0\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_point_file("enhanced 2 2\n0 0\n0 2\n0 0\n"), Err(Error::Parse { line: 3, .. })));
        assert_eq!(parse_point_file("enhanced 1 2\n0\n1\n"), Err(Error::NotNilpotent));
        // a single Jordan block of size 2 has an odd multiplicity
        assert_eq!(parse_point_file("exotic 1 3\n0 0\n0 1\n0 0\n"), Err(Error::NotInN0));
        assert_eq!(parse_point_file("exotic 1 3\n0 0\n1 0\n0 1\n"), Err(Error::NotNilpotent));
    }
}
