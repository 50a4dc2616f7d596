//! Dense bit-matrix tournaments and vertex-set algebra.
//!
//! Vertices are 0-indexed `usize` everywhere; display formatting is
//! 1-indexed. The orientation matrix is stored as one bitset row per
//! vertex, so common-neighbourhood queries are word-parallel ANDs.

use crate::error::{Error, Result};
use crate::num::Rational;

/// Default cap on the number of vertices (matrix <= 32 MB).
pub const MAX_VERTICES: usize = 16_384;

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from an orientation predicate: `forward(i, j)`
    /// must hold for exactly one of each unordered pair `{i, j}`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a tournament needs at least one vertex"));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, cap: MAX_VERTICES });
        }
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        for i in 0..n {
            for j in (i + 1)..n {
                let fwd = forward(i, j);
                let bwd = forward(j, i);
                if fwd == bwd {
                    return Err(Error::invalid(format!(
                        "pair ({i},{j}) must have exactly one orientation"
                    )));
                }
                if fwd {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                } else {
                    rows[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        Ok(Tournament { n, words, rows })
    }

    /// Builds from an explicit edge orientation: `matrix[i][j]` iff i -> j.
    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("orientation matrix must be square"));
        }
        if (0..n).any(|i| matrix[i][i]) {
            return Err(Error::invalid("diagonal entries must be false"));
        }
        Tournament::from_fn(n, |i, j| matrix[i][j])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        debug_assert!(from < self.n && to < self.n);
        self.rows[from * self.words + to / 64] >> (to % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(())
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of out-neighbours of `v` inside `set`.
    pub fn out_degree_in(&self, v: usize, set: &VertexSet) -> usize {
        debug_assert_eq!(set.universe, self.n);
        self.row(v)
            .iter()
            .zip(&set.bits)
            .map(|(r, s)| (r & s).count_ones() as usize)
            .sum()
    }

    /// Number of in-neighbours of `v` inside `set`.
    pub fn in_degree_in(&self, v: usize, set: &VertexSet) -> usize {
        set.iter().filter(|&u| u != v && self.has_edge(u, v)).count()
    }

    /// Out-neighbourhood of `v` restricted to `within`.
    pub fn out_neighbours_in(&self, v: usize, within: &VertexSet) -> VertexSet {
        let bits = self
            .row(v)
            .iter()
            .zip(&within.bits)
            .map(|(r, s)| r & s)
            .collect();
        VertexSet { universe: self.n, bits }
    }

    /// In-neighbourhood of `v` restricted to `within`.
    pub fn in_neighbours_in(&self, v: usize, within: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for u in within.iter() {
            if u != v && self.has_edge(u, v) {
                out.insert(u);
            }
        }
        out
    }

    /// Common out-neighbourhood of `verts` restricted to `within`.
    pub fn common_out_neighbours(&self, verts: &[usize], within: &VertexSet) -> VertexSet {
        let mut bits = within.bits.clone();
        for &v in verts {
            for (b, r) in bits.iter_mut().zip(self.row(v)) {
                *b &= r;
            }
        }
        let mut out = VertexSet { universe: self.n, bits };
        for &v in verts {
            out.remove(v);
        }
        out
    }

    /// Common in-neighbourhood of `verts` restricted to `within`.
    pub fn common_in_neighbours(&self, verts: &[usize], within: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        'cand: for u in within.iter() {
            for &v in verts {
                if u == v || !self.has_edge(u, v) {
                    continue 'cand;
                }
            }
            out.insert(u);
        }
        out
    }

    /// Number of edges directed from `a` to `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|v| self.out_degree_in(v, b)).sum()
    }

    /// Subtournament induced by `set`, with the map from new to old indices.
    pub fn induced(&self, set: &VertexSet) -> Result<(Tournament, Vec<usize>)> {
        let map: Vec<usize> = set.iter().collect();
        if map.is_empty() {
            return Err(Error::EmptySet);
        }
        let t = Tournament::from_fn(map.len(), |i, j| self.has_edge(map[i], map[j]))?;
        Ok((t, map))
    }

    /// Tournament with every edge reversed.
    pub fn reversed(&self) -> Tournament {
        Tournament::from_fn(self.n, |i, j| self.has_edge(j, i)).expect("valid by construction")
    }
}

/// Edge density d(A,B) = e(A,B) / (|A||B|) as an exact rational.
pub fn density(t: &Tournament, a: &VertexSet, b: &VertexSet) -> Result<Rational> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    if !a.is_disjoint(b) {
        return Err(Error::Overlap);
    }
    let e = t.edges_between(a, b) as i64;
    Ok(Rational::new(e, (a.len() * b.len()) as i64))
}

/// A => B: disjoint, nonempty, and every A-to-B edge present.
pub fn dominates(t: &Tournament, a: &VertexSet, b: &VertexSet) -> bool {
    if a.is_empty() || b.is_empty() || !a.is_disjoint(b) {
        return false;
    }
    a.iter().all(|v| t.out_degree_in(v, b) == b.len())
}

/// Returns the unique topological order of `T[s]` if it is transitive.
///
/// A tournament is transitive iff its in-set out-degrees are pairwise
/// distinct; the order sorted by descending out-degree is then checked
/// edge by edge.
pub fn is_transitive(t: &Tournament, s: &VertexSet) -> Result<Option<Vec<usize>>> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut order: Vec<usize> = s.iter().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(t.out_degree_in(v, s)));
    for i in 0..order.len() {
        for j in (i + 1)..order.len() {
            if !t.has_edge(order[i], order[j]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(order))
}

/// Checks that an explicit vertex sequence is internally all-forward.
pub fn is_transitive_order(t: &Tournament, order: &[usize]) -> bool {
    for i in 0..order.len() {
        for j in (i + 1)..order.len() {
            if !t.has_edge(order[i], order[j]) {
                return false;
            }
        }
    }
    true
}

/// All backward edges of an ordering, annotated with their length.
/// Entry `((from, to), len)` means the edge `from -> to` with `from`
/// placed `len` positions after `to`.
pub fn backward_edges(t: &Tournament, ord: &[usize]) -> Result<Vec<((usize, usize), usize)>> {
    check_permutation(t, ord)?;
    let mut out = Vec::new();
    for i in 0..ord.len() {
        for j in (i + 1)..ord.len() {
            if t.has_edge(ord[j], ord[i]) {
                out.push(((ord[j], ord[i]), j - i));
            }
        }
    }
    Ok(out)
}

pub fn check_permutation(t: &Tournament, ord: &[usize]) -> Result<()> {
    if ord.len() != t.n() {
        return Err(Error::NotPermutation);
    }
    let mut seen = vec![false; t.n()];
    for &v in ord {
        if v >= t.n() || seen[v] {
            return Err(Error::NotPermutation);
        }
        seen[v] = true;
    }
    Ok(())
}

/// Strongly connected components, in topological order of the condensation.
pub fn strongly_connected_components(t: &Tournament) -> Vec<Vec<usize>> {
    // Kosaraju: order by finish time, then sweep the reverse graph.
    let n = t.n();
    let mut visited = vec![false; n];
    let mut finish = Vec::with_capacity(n);
    for start in 0..n {
        if visited[start] {
            continue;
        }
        // iterative DFS with explicit neighbour cursors
        let mut stack = vec![(start, 0usize)];
        visited[start] = true;
        while let Some(top) = stack.last_mut() {
            let (v, cursor) = *top;
            if cursor < n {
                top.1 += 1;
                if cursor != v && t.has_edge(v, cursor) && !visited[cursor] {
                    visited[cursor] = true;
                    stack.push((cursor, 0));
                }
            } else {
                finish.push(v);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &start in finish.iter().rev() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if u != v && t.has_edge(u, v) && comp[u] == usize::MAX {
                    comp[u] = id;
                    members.push(u);
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// A subset of the vertices `{0..n-1}`, stored as a bitset over the same
/// word layout as the tournament rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    universe: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet { universe, bits: vec![0; words_for(universe)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_iter(universe: usize, verts: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::new(universe);
        for v in verts {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.bits[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, other.universe);
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        VertexSet { universe: self.universe, bits }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, other.universe);
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        VertexSet { universe: self.universe, bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.universe, other.universe);
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect();
        VertexSet { universe: self.universe, bits }
    }
}

impl std::fmt::Display for VertexSet {
    /// 1-indexed display; indices are 0-based internally.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::num::rat;

    fn c3() -> Tournament {
        // 0 -> 1, 1 -> 2, 2 -> 0
        Tournament::from_fn(3, |i, j| (j + 3 - i) % 3 == 1).unwrap()
    }

    #[test]
    fn orientation_is_exclusive() {
        let t = c3();
        for i in 0..3 {
            assert!(!t.has_edge(i, i));
            for j in 0..3 {
                if i != j {
                    assert!(t.has_edge(i, j) ^ t.has_edge(j, i));
                }
            }
        }
    }

    #[test]
    fn density_examples() {
        let t = c3();
        let a = VertexSet::from_iter(3, [0]);
        let b = VertexSet::from_iter(3, [1]);
        assert_eq!(density(&t, &a, &b).unwrap(), rat(1, 1));
        let b2 = VertexSet::from_iter(3, [1, 2]);
        assert_eq!(density(&t, &a, &b2).unwrap(), rat(1, 2));

        let tt6 = construct::transitive_tournament(6).unwrap();
        let first = VertexSet::from_iter(6, [0, 1, 2]);
        let last = VertexSet::from_iter(6, [3, 4, 5]);
        assert_eq!(density(&tt6, &first, &last).unwrap(), rat(1, 1));
    }

    #[test]
    fn density_domain_errors() {
        let t = c3();
        let a = VertexSet::from_iter(3, [0, 1]);
        let b = VertexSet::from_iter(3, [1, 2]);
        assert!(matches!(density(&t, &a, &b), Err(Error::Overlap)));
        let empty = VertexSet::new(3);
        assert!(matches!(density(&t, &a, &empty), Err(Error::EmptySet)));
    }

    #[test]
    fn dominates_examples() {
        let tt3 = construct::transitive_tournament(3).unwrap();
        let a = VertexSet::from_iter(3, [0]);
        let b = VertexSet::from_iter(3, [1, 2]);
        assert!(dominates(&tt3, &a, &b));

        let t = c3();
        let a0 = VertexSet::from_iter(3, [0]);
        let b2 = VertexSet::from_iter(3, [2]);
        assert!(!dominates(&t, &a0, &b2)); // edge 2 -> 0
        let overlapping = VertexSet::from_iter(3, [0, 1]);
        assert!(!dominates(&t, &a0, &overlapping));
    }

    #[test]
    fn transitivity() {
        let t = c3();
        assert_eq!(is_transitive(&t, &t.vertices()).unwrap(), None);

        let tt5 = construct::transitive_tournament(5).unwrap();
        let s = VertexSet::from_iter(5, [1, 3, 4]);
        assert_eq!(is_transitive(&tt5, &s).unwrap(), Some(vec![1, 3, 4]));
        let single = VertexSet::from_iter(3, [2]);
        assert_eq!(is_transitive(&t, &single).unwrap(), Some(vec![2]));
    }

    #[test]
    fn backward_edge_lists() {
        let tt4 = construct::transitive_tournament(4).unwrap();
        assert!(backward_edges(&tt4, &[0, 1, 2, 3]).unwrap().is_empty());

        let t = c3();
        let be = backward_edges(&t, &[0, 1, 2]).unwrap();
        assert_eq!(be, vec![((2, 0), 2)]);

        let tt3 = construct::transitive_tournament(3).unwrap();
        assert_eq!(backward_edges(&tt3, &[2, 1, 0]).unwrap().len(), 3);
        assert!(matches!(
            backward_edges(&tt3, &[0, 1, 1]),
            Err(Error::NotPermutation)
        ));
    }

    #[test]
    fn scc_of_blowup() {
        let t = construct::blowup(
            &[3, 3, 3],
            construct::InnerGenerator::Paley,
            7,
        )
        .unwrap()
        .0;
        let comps = strongly_connected_components(&t);
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            Tournament::from_fn(MAX_VERTICES + 1, |i, j| i < j),
            Err(Error::TooLarge { .. })
        ));
    }
}
