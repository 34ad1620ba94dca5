//! Exact fitting of sharp linear bounds `y <= m*x + b` (or `>=`).
//!
//! Among all lines bounding every point, the chosen line maximizes the number
//! of points on it, then minimizes total slack, then prefers smaller `|m|`,
//! smaller `|b|` and smaller `m`. A two-variable LP attains its optimum at a
//! vertex where two constraints are tight, so it suffices to scan the lines
//! through pairs of points plus the constant line through the extreme point.
//! All arithmetic is exact.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FitError {
    #[error("cannot fit a bound to an empty point set")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDirection {
    Upper,
    Lower,
}

impl BoundDirection {
    pub fn name(self) -> &'static str {
        match self {
            Self::Upper => "upper",
            Self::Lower => "lower",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Upper => "≤",
            Self::Lower => "≥",
        }
    }
}

impl fmt::Display for BoundDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundDirection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "upper" | "up" => Ok(Self::Upper),
            "lower" | "down" => Ok(Self::Lower),
            other => Err(format!("unknown direction {other:?} (expected upper or lower)")),
        }
    }
}

/// `y = m*x + b` read as an upper or lower bound on `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundingFunction {
    #[serde(with = "rational_string")]
    pub m: Rational,
    #[serde(with = "rational_string")]
    pub b: Rational,
    pub direction: BoundDirection,
}

impl BoundingFunction {
    pub fn eval(&self, x: i64) -> Rational {
        self.m * Rational::from_integer(x as i128) + self.b
    }

    /// How `y` compares with the line at `x`.
    pub fn compare(&self, x: i64, y: i64) -> Ordering {
        Rational::from_integer(y as i128).cmp(&self.eval(x))
    }

    pub fn satisfied(&self, x: i64, y: i64) -> bool {
        match (self.direction, self.compare(x, y)) {
            (_, Ordering::Equal) => true,
            (BoundDirection::Upper, ord) => ord == Ordering::Less,
            (BoundDirection::Lower, ord) => ord == Ordering::Greater,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitResult {
    pub bound: BoundingFunction,
    pub touch_count: usize,
    /// Indices into the input point list, ascending.
    pub touch_set: Vec<usize>,
    pub slack_total: Rational,
}

/// Exact optimum under the objective hierarchy described in the module docs.
pub fn fit(points: &[(i64, i64)], direction: BoundDirection) -> Result<FitResult, FitError> {
    if points.is_empty() {
        return Err(FitError::Empty);
    }
    if points.iter().all(|p| p.0 == points[0].0) {
        return fit_constant(points, direction);
    }
    let line = match direction {
        BoundDirection::Upper => best_upper_line(points),
        BoundDirection::Lower => {
            let mirrored: Vec<_> = points.iter().map(|&(x, y)| (x, -y)).collect();
            let (m, b) = best_upper_line(&mirrored);
            (-m, -b)
        }
    };
    Ok(evaluate_line(points, line.0, line.1, direction))
}

/// Constant bound through the extreme `y`; used when every `x` coincides.
pub fn fit_constant(points: &[(i64, i64)], direction: BoundDirection) -> Result<FitResult, FitError> {
    let ys = points.iter().map(|p| p.1);
    let extreme = match direction {
        BoundDirection::Upper => ys.max(),
        BoundDirection::Lower => ys.min(),
    }
    .ok_or(FitError::Empty)?;
    Ok(evaluate_line(
        points,
        Rational::zero(),
        Rational::from_integer(extreme as i128),
        direction,
    ))
}

/// Every line through two points with distinct `x`, plus the constant line
/// through the extreme `y`, without duplicates, in generation order.
pub fn enumerate_candidates(points: &[(i64, i64)], direction: BoundDirection) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    let mut push = |line: (Rational, Rational)| {
        if !out.contains(&line) {
            out.push(line);
        }
    };
    for (i, &(x1, y1)) in points.iter().enumerate() {
        for &(x2, y2) in &points[i + 1..] {
            if x1 != x2 {
                let m = Rational::new((y2 - y1) as i128, (x2 - x1) as i128);
                let b = Rational::from_integer(y1 as i128) - m * Rational::from_integer(x1 as i128);
                push((m, b));
            }
        }
    }
    let ys = points.iter().map(|p| p.1);
    let extreme = match direction {
        BoundDirection::Upper => ys.max(),
        BoundDirection::Lower => ys.min(),
    };
    if let Some(y) = extreme {
        push((Rational::zero(), Rational::from_integer(y as i128)));
    }
    out
}

fn evaluate_line(points: &[(i64, i64)], m: Rational, b: Rational, direction: BoundDirection) -> FitResult {
    let bound = BoundingFunction { m, b, direction };
    let mut touch_set = Vec::new();
    let mut slack_total = Rational::zero();
    for (i, &(x, y)) in points.iter().enumerate() {
        let gap = bound.eval(x) - Rational::from_integer(y as i128);
        if gap.is_zero() {
            touch_set.push(i);
        }
        slack_total += gap.abs();
    }
    FitResult {
        bound,
        touch_count: touch_set.len(),
        touch_set,
        slack_total,
    }
}

type Objective = (Reverse<u64>, Rational, Rational, Rational, Rational);

/// Best feasible upper line over distinct points weighted by multiplicity.
/// Feasibility and touches are checked in integer arithmetic.
fn best_upper_line(points: &[(i64, i64)]) -> (Rational, Rational) {
    let mut weights: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for &p in points {
        *weights.entry(p).or_default() += 1;
    }
    let distinct: Vec<((i128, i128), u64)> = weights
        .into_iter()
        .map(|((x, y), w)| ((x as i128, y as i128), w))
        .collect();

    let max_y = distinct.iter().map(|p| p.0 .1).max().expect("nonempty");
    let constant = {
        let touches = distinct.iter().filter(|p| p.0 .1 == max_y).map(|p| p.1).sum::<u64>();
        let slack: i128 = distinct.iter().map(|p| (max_y - p.0 .1) * p.1 as i128).sum();
        let m = Rational::zero();
        let b = Rational::from_integer(max_y);
        (objective(touches, Rational::from_integer(slack), &m, &b), (m, b))
    };
    let mut best = constant;

    for (i, &((x1, y1), _)) in distinct.iter().enumerate() {
        for &((x2, y2), _) in &distinct[i + 1..] {
            if x1 == x2 {
                continue;
            }
            // distinct points are sorted by x, so dx > 0
            let (dx, dy) = (x2 - x1, y2 - y1);
            let mut touches = 0u64;
            let mut scaled_slack: i128 = 0;
            let feasible = distinct.iter().all(|&((x, y), w)| {
                let gap = dy * (x - x1) + y1 * dx - y * dx;
                if gap == 0 {
                    touches += w;
                }
                scaled_slack += gap * w as i128;
                gap >= 0
            });
            if !feasible {
                continue;
            }
            let m = Rational::new(dy, dx);
            let b = Rational::from_integer(y1) - m * Rational::from_integer(x1);
            let key = objective(touches, Rational::new(scaled_slack, dx), &m, &b);
            if key < best.0 {
                best = (key, (m, b));
            }
        }
    }
    best.1
}

fn objective(touches: u64, slack: Rational, m: &Rational, b: &Rational) -> Objective {
    (Reverse(touches), slack, m.abs(), b.abs(), *m)
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Accepts `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<i128>().map_err(|_| format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse(q)?;
            if q == 0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(parse(p)?, q))
        }
        None => Ok(Rational::from_integer(parse(s)?)),
    }
}

pub(crate) mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use BoundDirection::*;

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn identity_line() {
        let f = fit(&[(1, 1), (2, 2), (3, 3)], Upper).unwrap();
        assert_eq!((f.bound.m, f.bound.b), (r(1, 1), r(0, 1)));
        assert_eq!(f.touch_count, 3);
        assert_eq!(f.slack_total, r(0, 1));
    }

    #[test]
    fn two_points() {
        let f = fit(&[(1, 2), (2, 3)], Upper).unwrap();
        assert_eq!((f.bound.m, f.bound.b), (r(1, 1), r(1, 1)));
        assert_eq!(f.touch_count, 2);
    }

    #[test]
    fn tie_prefers_smaller_slope() {
        let pts = [(1, 1), (2, 3), (3, 3)];
        let f = fit(&pts, Upper).unwrap();
        assert_eq!((f.bound.m, f.bound.b), (r(0, 1), r(3, 1)));
        assert_eq!(f.touch_count, 2);
        assert_eq!(f.touch_set, vec![1, 2]);
        assert_eq!(f.slack_total, r(2, 1));
        let rival = evaluate_line(&pts, r(2, 1), r(-1, 1), Upper);
        assert_eq!((rival.touch_count, rival.slack_total), (2, r(2, 1)));
    }

    #[test]
    fn constant_fits() {
        let f = fit(&[(2, 1), (2, 4), (2, 4)], Upper).unwrap();
        assert_eq!((f.bound.m, f.bound.b, f.touch_count), (r(0, 1), r(4, 1), 2));
        let f = fit(&[(5, 3)], Lower).unwrap();
        assert_eq!((f.bound.m, f.bound.b, f.touch_count), (r(0, 1), r(3, 1), 1));
        let f = fit_constant(&[(2, 1), (2, 2)], Lower).unwrap();
        assert_eq!((f.bound.m, f.bound.b, f.touch_count), (r(0, 1), r(1, 1), 1));
        assert_eq!(fit(&[], Upper), Err(FitError::Empty));
        assert_eq!(fit_constant(&[], Lower), Err(FitError::Empty));
    }

    #[test]
    fn candidate_enumeration() {
        let c = enumerate_candidates(&[(1, 1), (2, 3), (3, 3)], Upper);
        for line in [(r(2, 1), r(-1, 1)), (r(1, 1), r(0, 1)), (r(0, 1), r(3, 1))] {
            assert!(c.contains(&line), "{line:?}");
        }
        assert!(c.len() <= 4);
        // vertical pairs are skipped
        let c = enumerate_candidates(&[(1, 1), (1, 2), (2, 5)], Upper);
        assert_eq!(c, vec![(r(4, 1), r(-3, 1)), (r(3, 1), r(-1, 1)), (r(0, 1), r(5, 1))]);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&r(3, 2)), "3/2");
        assert_eq!(format_rational(&r(-2, 2)), "-1");
        assert_eq!(parse_rational("6/4"), Ok(r(3, 2)));
        assert_eq!(parse_rational("-1"), Ok(r(-1, 1)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let f = BoundingFunction {
            m: r(3, 5),
            b: r(-1, 1),
            direction: Lower,
        };
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"m":"3/5","b":"-1","direction":"lower"}"#);
        assert_eq!(serde_json::from_str::<BoundingFunction>(&json).unwrap(), f);
    }

    fn points() -> impl Strategy<Value = Vec<(i64, i64)>> {
        proptest::collection::vec((0i64..=10, 0i64..=10), 1..=8)
    }

    proptest! {
        #[test]
        fn feasible_and_sharp(pts in points(), upper in any::<bool>()) {
            let dir = if upper { Upper } else { Lower };
            let f = fit(&pts, dir).unwrap();
            prop_assert!(f.touch_count >= 1);
            for (i, &(x, y)) in pts.iter().enumerate() {
                prop_assert!(f.bound.satisfied(x, y));
                prop_assert_eq!(f.touch_set.contains(&i), f.bound.compare(x, y) == Ordering::Equal);
            }
        }

        #[test]
        fn direction_symmetry(pts in points()) {
            let lower = fit(&pts, Lower).unwrap();
            let mirrored: Vec<_> = pts.iter().map(|&(x, y)| (x, -y)).collect();
            let upper = fit(&mirrored, Upper).unwrap();
            prop_assert_eq!((lower.bound.m, lower.bound.b), (-upper.bound.m, -upper.bound.b));
            prop_assert_eq!(lower.touch_set, upper.touch_set);
        }

        #[test]
        fn scaling_covariance(pts in points(), k in 1i64..6, upper in any::<bool>()) {
            let dir = if upper { Upper } else { Lower };
            let base = fit(&pts, dir).unwrap();
            let scaled: Vec<_> = pts.iter().map(|&(x, y)| (x, k * y)).collect();
            let f = fit(&scaled, dir).unwrap();
            let k = Rational::from_integer(k as i128);
            prop_assert_eq!((f.bound.m, f.bound.b), (base.bound.m * k, base.bound.b * k));
        }
    }
}
