//! `.pts` point files and seeded random point sets.
//!
//! One point per line as two coordinates separated by whitespace. A
//! coordinate is an integer, a fraction `p/q` or a decimal `12.5`; all are
//! read exactly. Text after `#` is a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use convexdraw_core::geometry::{orientation, parse_points, Point, PointSet};
use convexdraw_core::{Drawing, GeometryError};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum PointsError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("need at least 3 points, got {0}")]
    TooFew(usize),
    #[error("{0}")]
    Geometry(#[from] GeometryError),
}

fn coordinate(tok: &str) -> Option<BigRational> {
    if let Some((int, frac)) = tok.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let r = BigRational::new(num, den);
        return Some(if neg { -r } else { r });
    }
    let r: BigRational = tok.parse().ok()?;
    Some(r)
}

pub fn parse_pts(text: &str) -> Result<Vec<Point>, PointsError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |reason: String| PointsError::Syntax { line: i + 1, reason };
        if toks.len() != 2 {
            return Err(err(format!("expected two coordinates, found {}", toks.len())));
        }
        let x = coordinate(toks[0]).ok_or_else(|| err(format!("bad coordinate {:?}", toks[0])))?;
        let y = coordinate(toks[1]).ok_or_else(|| err(format!("bad coordinate {:?}", toks[1])))?;
        out.push(Point::new(x, y));
    }
    Ok(out)
}

/// Parses and validates a point file and draws it with straight edges.
pub fn load_pts(text: &str) -> Result<Drawing, PointsError> {
    let pts = parse_pts(text)?;
    if pts.len() < 3 {
        return Err(PointsError::TooFew(pts.len()));
    }
    Ok(parse_points(pts)?)
}

pub fn write_pts(points: &[Point]) -> String {
    let mut s = String::new();
    for p in points {
        let _ = writeln!(s, "{} {}", p.x, p.y);
    }
    s
}

/// `n` integer points in `[0, 1000)^2` in general position, determined by
/// `seed`. Candidates that coincide with or line up with earlier points are
/// skipped.
pub fn random_points(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut used = BTreeSet::new();
    while pts.len() < n {
        let (x, y) = (rng.gen_range(0..1000i64), rng.gen_range(0..1000i64));
        if !used.insert((x, y)) {
            continue;
        }
        let p = Point::int(x, y);
        let collinear = (0..pts.len()).any(|i| (i + 1..pts.len()).any(|j| orientation(&pts[i], &pts[j], &p).is_eq()));
        if !collinear {
            pts.push(p);
        }
    }
    debug_assert!(PointSet::new(pts.clone()).is_ok());
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_are_exact() {
        let pts = parse_pts("# header\n0 0\n1/3 -2.5  # trailing\n\n-0.125 7\n").unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[1].x, BigRational::new(1.into(), 3.into()));
        assert_eq!(pts[1].y, BigRational::new((-5).into(), 2.into()));
        assert_eq!(pts[2].x, BigRational::new((-1).into(), 8.into()));
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        let err = parse_pts("0 0\n1 2 3\n").unwrap_err();
        assert!(matches!(err, PointsError::Syntax { line: 2, .. }), "{err}");
        let err = parse_pts("0 0\n1 x\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2"));
    }

    #[test]
    fn collinear_and_duplicate_points_are_refused() {
        let err = load_pts("0 0\n5 5\n1 0\n2 2\n0 3\n").unwrap_err();
        assert!(matches!(err, PointsError::Geometry(GeometryError::CollinearTriple(0, 1, 3))), "{err}");
        let err = load_pts("0 0\n1 0\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, PointsError::Geometry(GeometryError::DuplicatePoint(1, 3))), "{err}");
    }

    #[test]
    fn random_points_depend_only_on_the_seed() {
        let a = random_points(8, 1);
        assert_eq!(a, random_points(8, 1));
        assert_ne!(a, random_points(8, 2));
        assert!(PointSet::new(a.clone()).is_ok());
        assert_eq!(parse_pts(&write_pts(&a)).unwrap(), a);
    }
}
