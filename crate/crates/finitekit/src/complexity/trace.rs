//! Measured worst-case operation counts per input size, and the size
//! intervals classification runs over.

use super::{Error, Result};
use num::BigUint;
use std::fmt;
use std::io::{BufRead, Write};

/// A measured cost curve: strictly increasing sizes, each with a
/// monotonically non-decreasing operation count (costs are whole operation
/// counts, never wall-clock time). The points are the sampling grid; all
/// bound and rank quantifiers range over them.
#[derive(Clone, PartialEq, Eq)]
pub struct RuntimeTrace {
    points: Vec<(u64, BigUint)>,
    label: String,
}

impl RuntimeTrace {
    /// Builds a trace, enforcing the two invariants: sizes strictly
    /// increasing, costs ≥ 1 and non-decreasing.
    pub fn new(label: impl Into<String>, points: Vec<(u64, BigUint)>) -> Result<Self> {
        let label = label.into();
        if points.is_empty() {
            return Err(Error::InvalidTrace(format!("trace `{label}` has no points")));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidTrace(format!(
                    "sizes not strictly increasing at n={}",
                    w[1].0
                )));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::InvalidTrace(format!(
                    "monotonicity violated at n={}",
                    w[1].0
                )));
            }
        }
        if points.iter().any(|(_, c)| c.bits() == 0) {
            return Err(Error::InvalidTrace("every cost must be >= 1".into()));
        }
        Ok(RuntimeTrace { points, label })
    }

    /// Dense sampling of `f` on every integer in `[n1, n0]`.
    pub fn dense(label: impl Into<String>, n1: u64, n0: u64, f: impl Fn(u64) -> BigUint) -> Self {
        let points = (n1..=n0).map(|n| (n, f(n))).collect();
        RuntimeTrace::new(label, points).expect("dense trace from monotone function")
    }

    /// Power-of-two grid: samples `f` at n1 and every power of two in
    /// `(n1, n0]`, always including n0.
    pub fn pow2(label: impl Into<String>, n1: u64, n0: u64, f: impl Fn(u64) -> BigUint) -> Self {
        let mut ns = vec![n1];
        let mut p = 1u64;
        while p <= n0 {
            if p > n1 {
                ns.push(p);
            }
            p = p.saturating_mul(2);
        }
        if *ns.last().unwrap() != n0 {
            ns.push(n0);
        }
        ns.sort_unstable();
        ns.dedup();
        let points = ns.into_iter().map(|n| (n, f(n))).collect();
        RuntimeTrace::new(label, points).expect("pow2 trace from monotone function")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[(u64, BigUint)] {
        &self.points
    }

    pub fn first_n(&self) -> u64 {
        self.points[0].0
    }

    pub fn last_n(&self) -> u64 {
        self.points[self.points.len() - 1].0
    }

    /// Grid points inside `[lo, hi]`.
    pub fn points_in(&self, lo: u64, hi: u64) -> impl Iterator<Item = &(u64, BigUint)> {
        self.points
            .iter()
            .skip_while(move |(n, _)| *n < lo)
            .take_while(move |(n, _)| *n <= hi)
    }

    /// Checks that the trace spans the range and samples at least one point
    /// in it. The error names the first size the trace is missing.
    pub fn require_coverage(&self, range: Range) -> Result<()> {
        if range.n1 < self.first_n() {
            return Err(Error::Coverage {
                label: self.label.clone(),
                missing: range.n1,
            });
        }
        if range.n0 > self.last_n() {
            return Err(Error::Coverage {
                label: self.label.clone(),
                missing: self.last_n() + 1,
            });
        }
        if self.points_in(range.n1, range.n0).next().is_none() {
            return Err(Error::Coverage {
                label: self.label.clone(),
                missing: range.n1,
            });
        }
        Ok(())
    }

    /// Reads the `n,cost` CSV format. Errors carry 1-based line numbers.
    pub fn read_csv(label: impl Into<String>, reader: impl BufRead) -> Result<Self> {
        let mut points = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line =
                line.map_err(|e| Error::InvalidTrace(format!("line {lineno}: read error: {e}")))?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if idx == 0 {
                if line != "n,cost" {
                    return Err(Error::InvalidTrace(format!(
                        "line 1: expected header `n,cost`, got `{line}`"
                    )));
                }
                continue;
            }
            let (n_str, c_str) = line.split_once(',').ok_or_else(|| {
                Error::InvalidTrace(format!("line {lineno}: expected `n,cost`"))
            })?;
            let n: u64 = n_str.trim().parse().map_err(|_| {
                Error::InvalidTrace(format!("line {lineno}: bad size `{n_str}`"))
            })?;
            let cost: BigUint = c_str.trim().parse().map_err(|_| {
                Error::InvalidTrace(format!("line {lineno}: bad cost `{c_str}`"))
            })?;
            points.push((n, cost));
        }
        // Re-validate with line attribution for the common failure.
        for (i, w) in points.windows(2).enumerate() {
            if w[1].1 < w[0].1 {
                return Err(Error::InvalidTrace(format!(
                    "line {}: monotonicity violated at n={}",
                    i + 3,
                    w[1].0
                )));
            }
        }
        RuntimeTrace::new(label, points)
    }

    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "n,cost")?;
        for (n, c) in &self.points {
            writeln!(w, "{n},{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RuntimeTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RuntimeTrace({} points {}..{}, `{}`)",
            self.points.len(),
            self.first_n(),
            self.last_n(),
            self.label
        )
    }
}

/// A size interval `n1..n0` (inclusive). The lower bound is at least 2 so
/// that log(n) is defined and positive everywhere; operations that consume
/// log(log(n)) additionally require `n1 >= 4` and enforce it themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Range {
    pub n1: u64,
    pub n0: u64,
}

impl Range {
    pub fn new(n1: u64, n0: u64) -> Result<Self> {
        if n1 < 2 || n1 > n0 {
            return Err(Error::InvalidRange {
                n1,
                n0,
                requirement: "2 <= n1 <= n0",
            });
        }
        Ok(Range { n1, n0 })
    }

    /// The reference midpoint `floor((n1+n0)/2)` of the growth test.
    pub fn midpoint(self) -> u64 {
        (self.n1 + self.n0) / 2
    }

    /// The lower half `n1..midpoint`.
    pub fn lower_half(self) -> Range {
        Range {
            n1: self.n1,
            n0: self.midpoint(),
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.n1, self.n0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_monotone() {
        let r = RuntimeTrace::new(
            "bad",
            vec![(2, 5u32.into()), (3, 4u32.into())],
        );
        assert!(matches!(r, Err(Error::InvalidTrace(_))));
    }

    #[test]
    fn rejects_duplicate_sizes() {
        let r = RuntimeTrace::new(
            "bad",
            vec![(2, 5u32.into()), (2, 6u32.into())],
        );
        assert!(r.is_err());
    }

    #[test]
    fn csv_round_trip() {
        let t = RuntimeTrace::dense("t", 2, 10, |n| BigUint::from(n * n));
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let back = RuntimeTrace::read_csv("t", &buf[..]).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn csv_reports_line_numbers() {
        let data = "n,cost\n2,4\n3,nope\n";
        let err = RuntimeTrace::read_csv("t", data.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn coverage_names_missing_point() {
        let t = RuntimeTrace::dense("t", 4, 10, |n| BigUint::from(n));
        let err = t
            .require_coverage(Range::new(4, 20).unwrap())
            .unwrap_err();
        assert_eq!(
            err,
            Error::Coverage {
                label: "t".into(),
                missing: 11
            }
        );
        let err = t.require_coverage(Range::new(2, 10).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Coverage { missing: 2, .. }));
    }

    #[test]
    fn pow2_grid_includes_endpoints() {
        let t = RuntimeTrace::pow2("t", 4, 100, |n| BigUint::from(n));
        let ns: Vec<u64> = t.points().iter().map(|(n, _)| *n).collect();
        assert_eq!(ns, vec![4, 8, 16, 32, 64, 100]);
    }
}
