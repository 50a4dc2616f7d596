//! Exhaustive / exact ground-truth solvers, used to validate every
//! constructive algorithm at small scale. All witnesses are
//! lexicographically smallest among the optima, so golden fixtures are
//! reproducible.

use crate::error::{Error, Result};
use crate::num::Rational;
use crate::tournament::{check_permutation, Tournament, VertexSet};
use crate::verify::{verify_cycle_power, verify_path_power};
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct OracleBudget {
    /// Largest n for the 2^n subset DP over orderings.
    pub max_n_exact_ordering: usize,
    /// Largest n for subset-enumeration searches (max_transitive etc.).
    pub max_subset_bits: usize,
    /// Optional coarse wall-clock guard, in seconds.
    pub time_limit: Option<u64>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_n_exact_ordering: 18, max_subset_bits: 20, time_limit: None }
    }
}

impl OracleBudget {
    pub fn with_ordering_limit(mut self, n: usize) -> Self {
        self.max_n_exact_ordering = n;
        self
    }
}

fn row_masks(t: &Tournament) -> Vec<u32> {
    let n = t.n();
    (0..n)
        .map(|v| {
            let mut m = 0u32;
            for u in 0..n {
                if u != v && t.has_edge(v, u) {
                    m |= 1 << u;
                }
            }
            m
        })
        .collect()
}

/// Minimum backward-edge count over all n! orderings, with the
/// lexicographically smallest optimal ordering as witness.
///
/// Subset DP: `dp[S]` is the minimum number of backward edges among the
/// pairs inside `S` when `S` occupies a prefix; placing `v` last in the
/// prefix adds `|N+(v) & S|` backward edges. O(2^n * n) time.
pub fn exact_min_backward(t: &Tournament, budget: &OracleBudget) -> Result<(usize, Vec<usize>)> {
    let n = t.n();
    if n > budget.max_n_exact_ordering || n > 25 {
        return Err(Error::infeasible(format!(
            "exact ordering DP needs n <= {}, got {n}",
            budget.max_n_exact_ordering.min(25)
        )));
    }
    let rows = row_masks(t);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut dp = vec![u16::MAX; (full as usize) + 1];
    dp[0] = 0;
    for mask in 1..=full {
        let mut best = u16::MAX;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = mask & !(1 << v);
            let cost = dp[prev as usize] + (rows[v] & prev).count_ones() as u16;
            best = best.min(cost);
        }
        dp[mask as usize] = best;
    }
    let optimum = dp[full as usize] as usize;

    // Lexicographically smallest optimal ordering, rebuilt front to back.
    // With prefix set S fixed, the completion cost decomposes into the
    // already-paid prefix pairs, the cross pairs (determined by S alone),
    // and dp over the complement.
    let cross = |s: u32| -> usize {
        let mut acc = 0usize;
        let mut rest = full & !s;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc += (rows[w] & s).count_ones() as usize;
        }
        acc
    };
    let mut ord = Vec::with_capacity(n);
    let mut prefix: u32 = 0;
    let mut paid = 0usize;
    for _ in 0..n {
        for v in 0..n {
            if prefix >> v & 1 == 1 {
                continue;
            }
            let add = (rows[v] & prefix).count_ones() as usize;
            let s = prefix | (1 << v);
            let total = paid + add + cross(s) + dp[(full & !s) as usize] as usize;
            if total == optimum {
                ord.push(v);
                prefix = s;
                paid += add;
                break;
            }
        }
    }
    debug_assert_eq!(ord.len(), n);
    Ok((optimum, ord))
}

/// Exact intransitivity eps(T) = exact_min_backward / n^2.
pub fn exact_intransitivity(t: &Tournament, budget: &OracleBudget) -> Result<Rational> {
    let (count, _) = exact_min_backward(t, budget)?;
    Ok(Rational::new(count as i64, (t.n() * t.n()) as i64))
}

/// Maximum-cardinality transitive subtournament, as its transitive order
/// (lexicographically smallest witness among the maxima).
pub fn max_transitive(t: &Tournament, budget: &OracleBudget) -> Result<Vec<usize>> {
    let n = t.n();
    if n > budget.max_subset_bits || n > 25 {
        return Err(Error::infeasible(format!(
            "max_transitive search needs n <= {}, got {n}",
            budget.max_subset_bits.min(25)
        )));
    }
    let rows = row_masks(t);
    let full: u32 = (1u32 << n) - 1;
    let mut memo: HashMap<u32, u8> = HashMap::new();

    // Longest chain v1 -> v2 -> ... extendable inside `allowed`: each next
    // vertex must be a common out-neighbour of everything chosen so far.
    fn best(allowed: u32, rows: &[u32], memo: &mut HashMap<u32, u8>) -> u8 {
        if allowed == 0 {
            return 0;
        }
        if let Some(&b) = memo.get(&allowed) {
            return b;
        }
        let mut result = 0u8;
        let mut rest = allowed;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let remaining = allowed.count_ones() as u8;
            if result >= remaining {
                break; // cannot beat the current best with what is left
            }
            let sub = best(allowed & rows[v], rows, memo);
            result = result.max(1 + sub);
        }
        memo.insert(allowed, result);
        result
    }

    // memoized values are exact: the break fires only once the
    // cardinality upper bound |allowed| is already attained
    let size = best(full, &rows, &mut memo);
    let mut witness = Vec::with_capacity(size as usize);
    let mut allowed = full;
    for _ in 0..size {
        let target = best(allowed, &rows, &mut memo);
        for v in 0..n {
            if allowed >> v & 1 == 0 {
                continue;
            }
            if 1 + best(allowed & rows[v], &rows, &mut memo) == target {
                witness.push(v);
                allowed &= rows[v];
                break;
            }
        }
    }
    debug_assert_eq!(witness.len(), size as usize);
    Ok(witness)
}

const PATH_ORACLE_MAX_N: usize = 12;

/// Maximum length of a k-th power of a path, by exhaustive ordered search
/// over (used-set, last-k-window) states. Lexicographically smallest
/// witness among maximum-length sequences.
pub fn max_path_power_len(
    t: &Tournament,
    k: usize,
    budget: &OracleBudget,
) -> Result<(usize, Vec<usize>)> {
    let n = t.n();
    if k == 0 {
        return Err(Error::invalid("power parameter k must be at least 1"));
    }
    if n > PATH_ORACLE_MAX_N || n > budget.max_subset_bits {
        return Err(Error::infeasible(format!(
            "path-power oracle needs n <= {}, got {n}",
            PATH_ORACLE_MAX_N.min(budget.max_subset_bits)
        )));
    }
    let rows = row_masks(t);

    // f(mask, window) = longest extension from this state. The window is
    // the ordered suffix of the last min(k, len) vertices; a candidate
    // next vertex must be a common out-neighbour of the whole window.
    type State = (u32, Vec<usize>);
    fn extend(
        mask: u32,
        window: &[usize],
        n: usize,
        k: usize,
        rows: &[u32],
        memo: &mut HashMap<State, usize>,
    ) -> usize {
        let key = (mask, window.to_vec());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut cands = !mask & ((1u32 << n) - 1);
        for &w in window {
            cands &= rows[w];
        }
        let mut best = 0usize;
        let mut rest = cands;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut next_window = window.to_vec();
            next_window.push(v);
            if next_window.len() > k {
                next_window.remove(0);
            }
            best = best.max(1 + extend(mask | (1 << v), &next_window, n, k, rows, memo));
        }
        memo.insert(key, best);
        best
    }

    let mut memo: HashMap<State, usize> = HashMap::new();
    let mut best_len = 0usize;
    let mut best_start = 0usize;
    for v in 0..n {
        let len = 1 + extend(1 << v, &[v], n, k, &rows, &mut memo);
        if len > best_len {
            best_len = len;
            best_start = v;
        }
    }
    // greedy reconstruction along memoized values gives the
    // lexicographically smallest maximum witness
    let mut seq = vec![best_start];
    let mut mask = 1u32 << best_start;
    let mut window = vec![best_start];
    while seq.len() < best_len {
        let remaining = best_len - seq.len();
        let mut cands = !mask & ((1u32 << n) - 1);
        for &w in &window {
            cands &= rows[w];
        }
        let mut rest = cands;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut next_window = window.clone();
            next_window.push(v);
            if next_window.len() > k {
                next_window.remove(0);
            }
            if 1 + extend(mask | (1 << v), &next_window, n, k, &rows, &mut memo) == remaining {
                seq.push(v);
                mask |= 1 << v;
                window = next_window;
                break;
            }
        }
    }
    debug_assert!(verify_path_power(t, &seq, k)?.is_pass());
    Ok((best_len, seq))
}

/// A verified k-th power of a cycle of length >= min_len, or None if
/// exhaustion proves there is none. The witness is the shortest
/// achievable length >= min_len, lexicographically smallest.
pub fn exists_cycle_power(
    t: &Tournament,
    k: usize,
    min_len: usize,
    budget: &OracleBudget,
) -> Result<Option<Vec<usize>>> {
    let n = t.n();
    if k == 0 {
        return Err(Error::invalid("power parameter k must be at least 1"));
    }
    if n > PATH_ORACLE_MAX_N || n > budget.max_subset_bits {
        return Err(Error::infeasible(format!(
            "cycle-power oracle needs n <= {}, got {n}",
            PATH_ORACLE_MAX_N.min(budget.max_subset_bits)
        )));
    }
    for len in min_len.max(1)..=n {
        if let Some(c) = cycle_power_of_length(t, k, len)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// The longest k-th power of a cycle, if any cycle power of length
/// >= min_len exists.
pub fn longest_cycle_power(
    t: &Tournament,
    k: usize,
    min_len: usize,
    budget: &OracleBudget,
) -> Result<Option<Vec<usize>>> {
    let n = t.n();
    if n > PATH_ORACLE_MAX_N || n > budget.max_subset_bits {
        return Err(Error::infeasible(format!(
            "cycle-power oracle needs n <= {PATH_ORACLE_MAX_N}, got {n}"
        )));
    }
    for len in (min_len.max(1)..=n).rev() {
        if let Some(c) = cycle_power_of_length(t, k, len)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Lexicographically smallest k-th cycle power of exactly `len` vertices.
fn cycle_power_of_length(t: &Tournament, k: usize, len: usize) -> Result<Option<Vec<usize>>> {
    let n = t.n();
    if len > n {
        return Ok(None);
    }
    if len == 1 {
        return Ok(Some(vec![0]));
    }
    if len == 2 {
        return Ok(Some(vec![0, 1])); // degenerate edge, either orientation
    }
    if len <= 2 * k {
        return Ok(None); // antipodal wraparound pairs would need both orientations
    }
    let rows = row_masks(t);

    // DFS over sequences starting at the smallest vertex of the cycle;
    // later vertices must exceed the start, which kills rotations.
    fn dfs(
        seq: &mut Vec<usize>,
        mask: u32,
        t: &Tournament,
        rows: &[u32],
        k: usize,
        len: usize,
    ) -> bool {
        if seq.len() == len {
            // wraparound windows
            let m = seq.len();
            for i in 0..m {
                for d in 1..=k.min(m - 1) {
                    let j = (i + d) % m;
                    if j < i && !t.has_edge(seq[i], seq[j]) {
                        return false;
                    }
                }
            }
            return true;
        }
        let start = seq[0];
        let mut cands = !mask & ((1u32 << t.n()) - 1);
        let from = seq.len().saturating_sub(k);
        for &w in &seq[from..] {
            cands &= rows[w];
        }
        cands &= !((1u32 << (start + 1)) - 1); // only vertices above the start
        let mut rest = cands;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            seq.push(v);
            if dfs(seq, mask | (1 << v), t, rows, k, len) {
                return true;
            }
            seq.pop();
        }
        false
    }

    for start in 0..n {
        let mut seq = vec![start];
        if dfs(&mut seq, 1 << start, t, &rows, k, len) {
            debug_assert!(verify_cycle_power(t, &seq, k)?.is_pass());
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// Complete bipartite backward witness: sets X, Y of size s with every
/// x in X placed after every y in Y in `ord`, and x -> y for all pairs.
pub fn backward_biclique(
    t: &Tournament,
    ord: &[usize],
    s: usize,
    budget: &OracleBudget,
) -> Result<Option<(VertexSet, VertexSet)>> {
    if s == 0 {
        return Err(Error::invalid("biclique size must be at least 1"));
    }
    check_permutation(t, ord)?;
    let n = t.n();
    if crate::num::binomial(n as u64, s as u64) > 1_000_000
        || n > 8 * budget.max_subset_bits
    {
        return Err(Error::infeasible(format!(
            "backward biclique enumeration over C({n},{s}) subsets exceeds the budget"
        )));
    }
    let mut pos = vec![0usize; n];
    for (p, &v) in ord.iter().enumerate() {
        pos[v] = p;
    }
    let verts: Vec<usize> = (0..n).collect();
    for x in itertools::Itertools::combinations(verts.iter().copied(), s) {
        let min_pos = x.iter().map(|&v| pos[v]).min().unwrap();
        let mut common: Vec<usize> = Vec::new();
        'cand: for y in 0..n {
            if pos[y] >= min_pos {
                continue;
            }
            for &xv in &x {
                if !t.has_edge(xv, y) {
                    continue 'cand;
                }
            }
            common.push(y);
            if common.len() == s {
                break;
            }
        }
        if common.len() >= s {
            let xs = VertexSet::from_iter(n, x);
            let ys = VertexSet::from_iter(n, common.into_iter().take(s));
            return Ok(Some((xs, ys)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::num::rat;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn min_backward_trivial() {
        let tt6 = construct::transitive_tournament(6).unwrap();
        let (count, ord) = exact_min_backward(&tt6, &budget()).unwrap();
        assert_eq!(count, 0);
        assert_eq!(ord, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn min_backward_c3() {
        let c3 = construct::paley(3).unwrap();
        let (count, ord) = exact_min_backward(&c3, &budget()).unwrap();
        assert_eq!(count, 1);
        assert_eq!(exact_intransitivity(&c3, &budget()).unwrap(), rat(1, 9));
        // lexicographically smallest optimal ordering
        assert_eq!(ord, vec![0, 1, 2]);
    }

    #[test]
    fn min_backward_budget() {
        let t = construct::random_tournament(19, 0).unwrap();
        let b = OracleBudget { max_n_exact_ordering: 18, ..Default::default() };
        assert!(matches!(exact_min_backward(&t, &b), Err(Error::Infeasible(_))));
    }

    #[test]
    fn max_transitive_examples() {
        let tt7 = construct::transitive_tournament(7).unwrap();
        assert_eq!(max_transitive(&tt7, &budget()).unwrap().len(), 7);

        let c3 = construct::paley(3).unwrap();
        assert_eq!(max_transitive(&c3, &budget()).unwrap().len(), 2);

        let p7 = construct::paley(7).unwrap();
        assert_eq!(max_transitive(&p7, &budget()).unwrap().len(), 3);
    }

    #[test]
    fn path_power_oracle() {
        let tt6 = construct::transitive_tournament(6).unwrap();
        for k in 1..=3 {
            let (len, w) = max_path_power_len(&tt6, k, &budget()).unwrap();
            assert_eq!(len, 6);
            assert_eq!(w, vec![0, 1, 2, 3, 4, 5]);
        }
        let c3 = construct::paley(3).unwrap();
        let (len, _) = max_path_power_len(&c3, 2, &budget()).unwrap();
        assert_eq!(len, 2);
    }

    #[test]
    fn hamilton_path_always_exists() {
        for seed in 0..20 {
            let t = construct::random_tournament(9, seed).unwrap();
            let (len, _) = max_path_power_len(&t, 1, &budget()).unwrap();
            assert_eq!(len, 9);
        }
    }

    #[test]
    fn cycle_power_examples() {
        let tt8 = construct::transitive_tournament(8).unwrap();
        assert_eq!(exists_cycle_power(&tt8, 1, 3, &budget()).unwrap(), None);

        let c3 = construct::paley(3).unwrap();
        assert_eq!(
            exists_cycle_power(&c3, 1, 3, &budget()).unwrap(),
            Some(vec![0, 1, 2])
        );

        // forward-dominated blocks: no cycle crosses them
        let (t, _) = construct::blowup(&[3, 3], construct::InnerGenerator::Paley, 0).unwrap();
        assert_eq!(exists_cycle_power(&t, 1, 4, &budget()).unwrap(), None);
    }

    #[test]
    fn biclique_examples() {
        let tt5 = construct::transitive_tournament(5).unwrap();
        assert_eq!(
            backward_biclique(&tt5, &[0, 1, 2, 3, 4], 1, &budget()).unwrap(),
            None
        );

        let c3 = construct::paley(3).unwrap();
        let (x, y) = backward_biclique(&c3, &[0, 1, 2], 1, &budget()).unwrap().unwrap();
        assert_eq!(x.to_vec(), vec![2]);
        assert_eq!(y.to_vec(), vec![0]);
    }
}
