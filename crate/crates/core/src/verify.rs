//! Independent verifiers for path powers, cycle powers, and partitions.
//!
//! These are the trust anchors of the crate: every constructive pipeline
//! re-checks its output here before returning it.

use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// Outcome of a verification: either pass, or fail with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A vertex appears twice in the sequence (or across parts).
    Duplicate { vertex: usize },
    /// A required forward edge is missing; `(from, to)` is present instead
    /// as `to -> from`.
    MissingEdge { from: usize, to: usize },
    /// A vertex of the tournament is not covered by any part.
    NotCovered { vertex: usize },
    /// A part failed its own path-power check.
    PartFailed { part: usize, cause: Box<Violation> },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Duplicate { vertex } => write!(f, "vertex {} repeated", vertex + 1),
            Violation::MissingEdge { from, to } => {
                write!(f, "required edge {} -> {} is absent", from + 1, to + 1)
            }
            Violation::NotCovered { vertex } => write!(f, "vertex {} not covered", vertex + 1),
            Violation::PartFailed { part, cause } => write!(f, "part {part}: {cause}"),
        }
    }
}

fn check_vertices(t: &Tournament, seq: &[usize]) -> Result<()> {
    for &v in seq {
        t.check_vertex(v)?;
    }
    Ok(())
}

fn find_duplicate(t: &Tournament, seq: &[usize]) -> Option<usize> {
    let mut seen = vec![false; t.n()];
    for &v in seq {
        if seen[v] {
            return Some(v);
        }
        seen[v] = true;
    }
    None
}

/// Verifies that `seq` is the k-th power of a directed path: distinct
/// vertices with `seq[i] -> seq[j]` whenever `i < j <= i + k`. Sequences
/// of length <= 1 pass as degenerate.
pub fn verify_path_power(t: &Tournament, seq: &[usize], k: usize) -> Result<Verdict> {
    if k == 0 {
        return Err(Error::invalid("power parameter k must be at least 1"));
    }
    check_vertices(t, seq)?;
    if let Some(vertex) = find_duplicate(t, seq) {
        return Ok(Verdict::Fail(Violation::Duplicate { vertex }));
    }
    for i in 0..seq.len() {
        for j in (i + 1)..seq.len().min(i + k + 1) {
            if !t.has_edge(seq[i], seq[j]) {
                return Ok(Verdict::Fail(Violation::MissingEdge {
                    from: seq[i],
                    to: seq[j],
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Verifies that `cyc` is the k-th power of a directed cycle: distinct
/// vertices with `cyc[i] -> cyc[(i+d) mod m]` for every cyclic offset
/// `d in 1..=min(k, m-1)`. Cycles on one or two vertices pass as the
/// degenerate singleton / edge cases.
pub fn verify_cycle_power(t: &Tournament, cyc: &[usize], k: usize) -> Result<Verdict> {
    if k == 0 {
        return Err(Error::invalid("power parameter k must be at least 1"));
    }
    check_vertices(t, cyc)?;
    if let Some(vertex) = find_duplicate(t, cyc) {
        return Ok(Verdict::Fail(Violation::Duplicate { vertex }));
    }
    let m = cyc.len();
    if m <= 2 {
        return Ok(Verdict::Pass);
    }
    let reach = k.min(m - 1);
    for i in 0..m {
        for d in 1..=reach {
            let j = (i + d) % m;
            if !t.has_edge(cyc[i], cyc[j]) {
                return Ok(Verdict::Fail(Violation::MissingEdge {
                    from: cyc[i],
                    to: cyc[j],
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

#[derive(Debug, Clone)]
pub struct PartitionReport {
    pub part_count: usize,
}

/// Verifies a partition of V(T) into k-th powers of paths: parts pairwise
/// disjoint, union covers every vertex, and each part passes
/// `verify_path_power`.
pub fn verify_partition(
    t: &Tournament,
    parts: &[Vec<usize>],
    k: usize,
) -> Result<(Verdict, PartitionReport)> {
    let report = PartitionReport { part_count: parts.len() };
    let mut seen = vec![false; t.n()];
    for (idx, part) in parts.iter().enumerate() {
        check_vertices(t, part)?;
        for &v in part {
            if seen[v] {
                return Ok((Verdict::Fail(Violation::Duplicate { vertex: v }), report));
            }
            seen[v] = true;
        }
        match verify_path_power(t, part, k)? {
            Verdict::Pass => {}
            Verdict::Fail(cause) => {
                return Ok((
                    Verdict::Fail(Violation::PartFailed { part: idx, cause: Box::new(cause) }),
                    report,
                ));
            }
        }
    }
    if let Some(vertex) = seen.iter().position(|&s| !s) {
        return Ok((Verdict::Fail(Violation::NotCovered { vertex }), report));
    }
    Ok((Verdict::Pass, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn c3() -> Tournament {
        Tournament::from_fn(3, |i, j| (j + 3 - i) % 3 == 1).unwrap()
    }

    #[test]
    fn path_power_examples() {
        let tt4 = construct::transitive_tournament(4).unwrap();
        assert!(verify_path_power(&tt4, &[0, 1, 2, 3], 3).unwrap().is_pass());

        let t = c3();
        assert_eq!(
            verify_path_power(&t, &[0, 1, 2], 2).unwrap(),
            Verdict::Fail(Violation::MissingEdge { from: 0, to: 2 })
        );
        // degenerate singleton passes for any k
        assert!(verify_path_power(&t, &[1], 5).unwrap().is_pass());
        assert!(verify_path_power(&t, &[], 1).unwrap().is_pass());
        assert!(matches!(
            verify_path_power(&t, &[0, 7], 1),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn path_power_duplicates() {
        let tt4 = construct::transitive_tournament(4).unwrap();
        assert_eq!(
            verify_path_power(&tt4, &[0, 1, 0], 1).unwrap(),
            Verdict::Fail(Violation::Duplicate { vertex: 0 })
        );
    }

    #[test]
    fn cycle_power_examples() {
        let t = c3();
        assert!(verify_cycle_power(&t, &[0, 1, 2], 1).unwrap().is_pass());

        let tt3 = construct::transitive_tournament(3).unwrap();
        assert!(!verify_cycle_power(&tt3, &[0, 1, 2], 1).unwrap().is_pass());

        // degenerate edge on two vertices passes regardless of orientation
        assert!(verify_cycle_power(&tt3, &[1, 0], 1).unwrap().is_pass());
        assert!(verify_cycle_power(&tt3, &[2], 3).unwrap().is_pass());
    }

    #[test]
    fn cycle_power_needs_wraparound_room() {
        // a 2k-cycle would need both orientations of the antipodal pair
        let tt4 = construct::transitive_tournament(4).unwrap();
        assert!(!verify_cycle_power(&tt4, &[0, 1, 2, 3], 2).unwrap().is_pass());
    }

    #[test]
    fn partition_examples() {
        let tt5 = construct::transitive_tournament(5).unwrap();
        let (v, report) = verify_partition(&tt5, &[vec![0, 1, 2, 3, 4]], 3).unwrap();
        assert!(v.is_pass());
        assert_eq!(report.part_count, 1);

        let (v, _) = verify_partition(&tt5, &[vec![0, 1, 2, 3]], 1).unwrap();
        assert_eq!(v, Verdict::Fail(Violation::NotCovered { vertex: 4 }));

        let (v, _) = verify_partition(&tt5, &[vec![0, 1, 2], vec![2, 3, 4]], 1).unwrap();
        assert_eq!(v, Verdict::Fail(Violation::Duplicate { vertex: 2 }));
    }
}
