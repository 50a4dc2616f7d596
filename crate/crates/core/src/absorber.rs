//! Absorbers: a cyclic chain of transitive 2k-blocks S_0 .. S_r plus an
//! absorbing vertex set Q wired so that any pair of transitive 2k-subsets
//! of Q can serve as the endpoints of a spanning k-th power path.

use crate::error::{Error, Result};
use crate::extremal::{self, greedy_transitive, Direction};
use crate::median::{self, MedianMode};
use crate::num::{self, rat};
use crate::sequencing::{self, PathPowerParams};
use crate::tournament::{density, dominates, is_transitive_order, Tournament, VertexSet};
use crate::verify::{verify_path_power, Verdict};
use crate::RunMode;

/// The S_0..S_r / Q structure. `s_blocks[i]` is S_i in transitive order;
/// `q[i-1]` is q_i (1-indexed in the invariants below). `r_prime` is the
/// declared absorbing-part size, stored independently so a tampered
/// certificate can fail the |Q| = r' clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Absorber {
    pub s_blocks: Vec<Vec<usize>>,
    pub q: Vec<usize>,
    pub k: usize,
    pub r_prime: usize,
}

impl Absorber {
    pub fn r(&self) -> usize {
        self.s_blocks.len().saturating_sub(1)
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for block in &self.s_blocks {
            for &v in block {
                s.insert(v);
            }
        }
        for &v in &self.q {
            s.insert(v);
        }
        s
    }

    pub fn total_vertices(&self) -> usize {
        self.s_blocks.iter().map(|b| b.len()).sum::<usize>() + self.q.len()
    }

    /// Number of external transitive 2k-sets Q can host, reported as the
    /// absorbing capacity alongside the absorber.
    pub fn absorbing_capacity(&self) -> usize {
        self.q.len() / (2 * self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbsorberViolation {
    QSizeMismatch { declared: usize, actual: usize },
    ChainTooShort { r: usize, r_prime: usize },
    BlockWrongSize { index: usize, size: usize },
    BlockNotTransitive { index: usize },
    ChainBreak { from: usize, to: usize },
    CycleClosure,
    QNotDominatedByS0 { q_vertex: usize },
    QNotDominatingSr1 { q_vertex: usize },
    SandwichLeft { i: usize },
    SandwichRight { i: usize },
    Overlap { vertex: usize },
}

impl std::fmt::Display for AbsorberViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use AbsorberViolation::*;
        match self {
            QSizeMismatch { declared, actual } => {
                write!(f, "|Q| = {actual} but r' = {declared} declared")
            }
            ChainTooShort { r, r_prime } => write!(f, "need r > r', got r = {r}, r' = {r_prime}"),
            BlockWrongSize { index, size } => {
                write!(f, "S_{index} has {size} vertices, expected 2k")
            }
            BlockNotTransitive { index } => write!(f, "S_{index} is not in transitive order"),
            ChainBreak { from, to } => write!(f, "S_{from} does not dominate S_{to}"),
            CycleClosure => write!(f, "S_r does not dominate S_0"),
            QNotDominatedByS0 { q_vertex } => {
                write!(f, "S_0 does not dominate q vertex {}", q_vertex + 1)
            }
            QNotDominatingSr1 { q_vertex } => {
                write!(f, "q vertex {} does not dominate S_(r'+1)", q_vertex + 1)
            }
            SandwichLeft { i } => write!(f, "S_{i} does not dominate q_{i}"),
            SandwichRight { i } => write!(f, "q_{i} does not dominate S_{}", i + 1),
            Overlap { vertex } => write!(f, "vertex {} appears twice", vertex + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbsorberVerdict {
    Pass,
    Fail(AbsorberViolation),
}

impl AbsorberVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, AbsorberVerdict::Pass)
    }
}

/// Checks every clause of the absorber definition, naming the violated
/// clause on failure.
pub fn verify_absorber(t: &Tournament, h: &Absorber) -> Result<AbsorberVerdict> {
    use AbsorberVerdict::Fail;
    for block in &h.s_blocks {
        for &v in block {
            t.check_vertex(v)?;
        }
    }
    for &v in &h.q {
        t.check_vertex(v)?;
    }
    if h.k == 0 {
        return Err(Error::invalid("absorber needs k >= 1"));
    }
    // clause (i): |Q| = r' and r > r'
    if h.q.len() != h.r_prime {
        return Ok(Fail(AbsorberViolation::QSizeMismatch {
            declared: h.r_prime,
            actual: h.q.len(),
        }));
    }
    if h.s_blocks.len() <= h.r_prime + 1 {
        return Ok(Fail(AbsorberViolation::ChainTooShort { r: h.r(), r_prime: h.r_prime }));
    }
    // disjointness across all S_i and Q
    let mut seen = VertexSet::new(t.n());
    for v in h.s_blocks.iter().flatten().chain(h.q.iter()) {
        if seen.contains(*v) {
            return Ok(Fail(AbsorberViolation::Overlap { vertex: *v }));
        }
        seen.insert(*v);
    }
    // clause (ii): transitive 2k-blocks, consecutive domination, wrap
    let sets: Vec<VertexSet> =
        h.s_blocks.iter().map(|b| VertexSet::from_iter(t.n(), b.iter().copied())).collect();
    for (i, block) in h.s_blocks.iter().enumerate() {
        if block.len() != 2 * h.k {
            return Ok(Fail(AbsorberViolation::BlockWrongSize { index: i, size: block.len() }));
        }
        if !is_transitive_order(t, block) {
            return Ok(Fail(AbsorberViolation::BlockNotTransitive { index: i }));
        }
    }
    let r = h.r();
    for i in 0..r {
        if !dominates(t, &sets[i], &sets[i + 1]) {
            return Ok(Fail(AbsorberViolation::ChainBreak { from: i, to: i + 1 }));
        }
    }
    if !dominates(t, &sets[r], &sets[0]) {
        return Ok(Fail(AbsorberViolation::CycleClosure));
    }
    // clause (iii): S_0 => Q => S_{r'+1}, and S_i => q_i => S_{i+1}
    for &qv in &h.q {
        let qset = VertexSet::from_iter(t.n(), [qv]);
        if !dominates(t, &sets[0], &qset) {
            return Ok(Fail(AbsorberViolation::QNotDominatedByS0 { q_vertex: qv }));
        }
        if !dominates(t, &qset, &sets[h.r_prime + 1]) {
            return Ok(Fail(AbsorberViolation::QNotDominatingSr1 { q_vertex: qv }));
        }
    }
    for i in 1..=h.r_prime {
        let qi = VertexSet::from_iter(t.n(), [h.q[i - 1]]);
        if !dominates(t, &sets[i], &qi) {
            return Ok(Fail(AbsorberViolation::SandwichLeft { i }));
        }
        if !dominates(t, &qi, &sets[i + 1]) {
            return Ok(Fail(AbsorberViolation::SandwichRight { i }));
        }
    }
    Ok(AbsorberVerdict::Pass)
}

/// Spanning k-th power path of the absorber whose first k vertices lie in
/// `y` and last k vertices lie in `x` (both transitive 2k-subsets of Q).
///
/// Route: Y_0 => S^1_{r'+1} => ... => S^1_r => S^1_0 => S_1 => ... =>
/// S_{r'} => S^2_{r'+1} => ... => S^2_r => S^2_0 => X_0, with each
/// leftover q_i inserted between S_i and S_{i+1} (q_{r'} lands just
/// before S^2_{r'+1}).
pub fn absorber_span_path(
    t: &Tournament,
    h: &Absorber,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<Vec<usize>> {
    match verify_absorber(t, h)? {
        AbsorberVerdict::Pass => {}
        AbsorberVerdict::Fail(v) => {
            return Err(Error::invalid(format!("not a valid absorber: {v}")));
        }
    }
    let k = h.k;
    let q_set = VertexSet::from_iter(t.n(), h.q.iter().copied());
    for (name, set) in [("X", x), ("Y", y)] {
        if set.len() != 2 * k {
            return Err(Error::invalid(format!("{name} must have exactly 2k vertices")));
        }
        if !set.is_subset(&q_set) {
            return Err(Error::invalid(format!("{name} must lie inside the absorbing part")));
        }
        if crate::tournament::is_transitive(t, set)?.is_none() {
            return Err(Error::invalid(format!("{name} must induce a transitive tournament")));
        }
    }
    // Y_0: k vertices of Y, preferring those outside X; X_0: k vertices of
    // X \ Y_0. |X| = 2k guarantees X_0 exists for any choice of Y_0.
    let y_order = transitive_order_of(t, y);
    let x_order = transitive_order_of(t, x);
    let mut y0: Vec<usize> = y_order.iter().copied().filter(|v| !x.contains(*v)).collect();
    y0.truncate(k);
    for &v in &y_order {
        if y0.len() == k {
            break;
        }
        if !y0.contains(&v) {
            y0.push(v);
        }
    }
    let y0_set = VertexSet::from_iter(t.n(), y0.iter().copied());
    let x0: Vec<usize> =
        x_order.iter().copied().filter(|v| !y0_set.contains(*v)).take(k).collect();
    let mut x0 = x0;
    if x0.len() < k {
        return Err(Error::invalid("X and Y overlap too much to pick disjoint endpoints"));
    }
    sort_transitive(t, &mut y0);
    sort_transitive(t, &mut x0);

    let r = h.r();
    let rp = h.r_prime;
    let halves: Vec<(&[usize], &[usize])> =
        h.s_blocks.iter().map(|b| (&b[..k], &b[k..])).collect();

    let mut seq: Vec<usize> = Vec::with_capacity(h.total_vertices());
    seq.extend_from_slice(&y0);
    // first halves: S^1_{r'+1} .. S^1_r, then S^1_0
    for half in halves.iter().take(r + 1).skip(rp + 1) {
        seq.extend_from_slice(half.0);
    }
    seq.extend_from_slice(halves[0].0);
    // full blocks S_1 .. S_{r'}, inserting each leftover q_i after S_i
    let leftover = |qv: usize| !y0.contains(&qv) && !x0.contains(&qv);
    for i in 1..=rp {
        seq.extend_from_slice(&h.s_blocks[i]);
        let qi = h.q[i - 1];
        if leftover(qi) {
            seq.push(qi);
        }
    }
    // second halves: S^2_{r'+1} .. S^2_r, then S^2_0, then X_0
    for half in halves.iter().take(r + 1).skip(rp + 1) {
        seq.extend_from_slice(half.1);
    }
    seq.extend_from_slice(halves[0].1);
    seq.extend_from_slice(&x0);

    match verify_path_power(t, &seq, k)? {
        Verdict::Pass => {}
        Verdict::Fail(v) => {
            return Err(Error::internal(format!("absorber span path failed verification: {v}")));
        }
    }
    let covered = VertexSet::from_iter(t.n(), seq.iter().copied());
    if covered != h.vertex_set(t.n()) || seq.len() != h.total_vertices() {
        return Err(Error::internal("absorber span path does not cover V(H) exactly"));
    }
    Ok(seq)
}

fn transitive_order_of(t: &Tournament, s: &VertexSet) -> Vec<usize> {
    let mut v = s.to_vec();
    sort_transitive(t, &mut v);
    v
}

fn sort_transitive(t: &Tournament, v: &mut [usize]) {
    let s = VertexSet::from_iter(t.n(), v.iter().copied());
    v.sort_by_key(|&u| std::cmp::Reverse(t.out_degree_in(u, &s)));
}

/// Covers the union of disjoint absorbers by one k-th power of a path:
/// order the absorbers along a Hamilton path of the majority-density
/// auxiliary tournament, link consecutive absorbing parts by a transitive
/// pair, and concatenate the spanning paths.
pub fn chain_absorbers(
    t: &Tournament,
    hs: &[Absorber],
    seed: u64,
    mode: RunMode,
) -> Result<Vec<usize>> {
    if hs.is_empty() {
        return Err(Error::invalid("need at least one absorber"));
    }
    let k = hs[0].k;
    if hs.iter().any(|h| h.k != k) {
        return Err(Error::invalid("absorbers must share the same k"));
    }
    for (i, h) in hs.iter().enumerate() {
        match verify_absorber(t, h)? {
            AbsorberVerdict::Pass => {}
            AbsorberVerdict::Fail(v) => {
                return Err(Error::invalid(format!("absorber {i} is invalid: {v}")));
            }
        }
        for other in hs.iter().skip(i + 1) {
            if !h.vertex_set(t.n()).is_disjoint(&other.vertex_set(t.n())) {
                return Err(Error::Overlap);
            }
        }
    }
    if mode.is_strict() {
        // the linking step needs the transitive-pair corollary at 2k, beta = 1/2
        for (i, h) in hs.iter().enumerate() {
            if !num::ge_pow2(h.q.len() as u64, 10 * k as u64) {
                return Err(Error::infeasible(format!(
                    "strict mode needs |Q(H_{i})| >= 2^(10k) for the linking step"
                )));
            }
        }
    }
    let s = hs.len();
    if s == 1 {
        let q_set = VertexSet::from_iter(t.n(), hs[0].q.iter().copied());
        let xy = pick_transitive_2k(t, &q_set, k)?;
        let set = VertexSet::from_iter(t.n(), xy.iter().copied());
        return absorber_span_path(t, &hs[0], &set, &set);
    }
    // auxiliary tournament on [s] by majority density between absorbing
    // parts; ties oriented from the lower index
    let q_sets: Vec<VertexSet> =
        hs.iter().map(|h| VertexSet::from_iter(t.n(), h.q.iter().copied())).collect();
    let aux = Tournament::from_fn(s, |i, j| {
        let d = density(t, &q_sets[i], &q_sets[j]).expect("disjoint nonempty");
        match d.cmp(&rat(1, 2)) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => i < j,
        }
    })?;
    // a relocation-optimal ordering of the auxiliary tournament is a
    // Hamilton path
    let order = median::median_order(&aux, MedianMode::Local, seed)?.perm;

    // linking pairs: X_i in Q(H_order[w]) dominating Y_{w+1} in Q(H_order[w+1])
    let mut xs: Vec<Option<VertexSet>> = vec![None; s];
    let mut ys: Vec<Option<VertexSet>> = vec![None; s];
    for w in 0..s - 1 {
        let (i, j) = (order[w], order[w + 1]);
        let d = density(t, &q_sets[i], &q_sets[j])?;
        let beta = d.min(rat(1, 2));
        if beta <= rat(0, 1) {
            return Err(Error::not_found(format!(
                "absorbing parts {i} and {j} have no forward edges to link"
            )));
        }
        let pair = extremal::transitive_pair(
            t,
            &q_sets[i],
            &q_sets[j],
            2 * k,
            beta,
            seed ^ ((w as u64) << 16),
            extremal::DEFAULT_RETRIES,
            RunMode::Opportunistic,
        )
        .map_err(|e| match e {
            Error::NotFound(msg) => {
                Error::not_found(format!("linking absorbers {i} -> {j} failed: {msg}"))
            }
            other => other,
        })?;
        xs[w] = Some(VertexSet::from_iter(t.n(), pair.x.iter().copied()));
        ys[w + 1] = Some(VertexSet::from_iter(t.n(), pair.y.iter().copied()));
    }
    // endpoints of the whole path reuse the adjacent linking sets
    ys[0] = xs[0].clone();
    xs[s - 1] = ys[s - 1].clone();

    let mut seq: Vec<usize> = Vec::new();
    for w in 0..s {
        let h = &hs[order[w]];
        let x = xs[w].clone().expect("x assigned");
        let y = ys[w].clone().expect("y assigned");
        let span = absorber_span_path(t, h, &x, &y)?;
        seq.extend(span);
    }
    match verify_path_power(t, &seq, k)? {
        Verdict::Pass => Ok(seq),
        Verdict::Fail(v) => {
            Err(Error::internal(format!("chained absorber path failed verification: {v}")))
        }
    }
}

fn pick_transitive_2k(t: &Tournament, q: &VertexSet, k: usize) -> Result<Vec<usize>> {
    let order = greedy_transitive(t, q);
    if order.len() < 2 * k {
        return Err(Error::not_found(format!(
            "absorbing part hosts only a transitive {}-set, need 2k = {}",
            order.len(),
            2 * k
        )));
    }
    Ok(order[..2 * k].to_vec())
}

#[derive(Debug, Clone)]
pub struct AbsorberParams {
    /// Target r' (absorbing-part size): min(2^{10k}, this cap).
    pub r_prime_cap: usize,
    pub retries: usize,
    pub mode: RunMode,
}

impl Default for AbsorberParams {
    fn default() -> Self {
        AbsorberParams { r_prime_cap: 4, retries: 20, mode: RunMode::Opportunistic }
    }
}

/// Builds a k-absorber from a backward-dominating pair of transitive
/// 8k-sets at the two ends of a block split: a 2k-seed S_0 in X0, the
/// S_1..S_{r'} / Q section sliced from a 4k-th power path found inside a
/// dominated pool two blocks in, and a closing chain back to Xt.
pub fn find_absorber(
    t: &Tournament,
    split: &median::IntervalSplit,
    x0: &VertexSet,
    xt: &VertexSet,
    k: usize,
    seed: u64,
    params: &AbsorberParams,
) -> Result<Absorber> {
    if k == 0 {
        return Err(Error::invalid("absorber needs k >= 1"));
    }
    let blocks = split.block_count();
    if blocks < 11 {
        return Err(Error::invalid("absorber discovery needs at least eleven blocks"));
    }
    let tt = blocks - 1;
    if x0.len() < 8 * k || xt.len() < 8 * k {
        return Err(Error::invalid("X0 and Xt must have at least 8k vertices"));
    }
    if !x0.is_subset(&split.block_set(t.n(), 0)) || !xt.is_subset(&split.block_set(t.n(), tt)) {
        return Err(Error::invalid("X0 must lie in the first block and Xt in the last"));
    }
    if crate::tournament::is_transitive(t, x0)?.is_none()
        || crate::tournament::is_transitive(t, xt)?.is_none()
    {
        return Err(Error::invalid("X0 and Xt must induce transitive tournaments"));
    }
    if !dominates(t, xt, x0) {
        return Err(Error::invalid("Xt must dominate X0"));
    }
    if params.mode.is_strict() {
        let m = split.block_len(0);
        if !num::ge_pow2(m as u64, 81000 * k as u64) {
            return Err(Error::infeasible("strict mode needs m >= 2^(81000k)"));
        }
        if tt < 80 {
            return Err(Error::infeasible("strict mode needs t >= 80"));
        }
    }
    let mode = params.mode;
    // stage 1: 2k-seed in X0 with a large dominated pool in A_1 u A_2
    let pool12 = split.block_set(t.n(), 1).union(&split.block_set(t.n(), 2));
    let (s0_raw, y) = if mode.is_strict() {
        extremal::kst_subset(t, x0, &pool12, 2 * k, rat(1, 4), Direction::Out)
    } else {
        extremal::best_common_subset(t, x0, &pool12, 2 * k, Direction::Out)
    }
    .map_err(|e| stage_err(e, "seed hop from X0 into A_1 u A_2"))?;
    let y1 = y.intersection(&split.block_set(t.n(), 1));
    let y2 = y.intersection(&split.block_set(t.n(), 2));
    let (i1, y_i1) = if y1.len() >= y2.len() { (1, y1) } else { (2, y2) };
    if y_i1.is_empty() {
        return Err(Error::not_found("seed hop landed on an empty block part"));
    }
    // stage 2: dominated transitive 8k-set two blocks further
    let c1 = split.block_set(t.n(), i1 + 1);
    let c2 = split.block_set(t.n(), i1 + 2);
    let d1 = density(t, &y_i1, &c1)?;
    let d2 = density(t, &y_i1, &c2)?;
    let (i2, a_i2, d_i2) = if d1 >= d2 { (i1 + 1, c1, d1) } else { (i1 + 2, c2, d2) };
    if d_i2 <= rat(0, 1) {
        return Err(Error::not_found("no forward density from the seed pool"));
    }
    let beta = d_i2.min(rat(1, 4));
    let drc = extremal::drc_transitive_pair(
        t,
        &y_i1,
        &a_i2,
        8 * k,
        beta,
        seed ^ 0xab50,
        params.retries,
        mode,
    )
    .map_err(|e| stage_err(e, "dominated 8k-set past the seed pool"))?;
    let y_prime = drc.x; // y_prime => x_i2 by construction
    let x_i2 = drc.y;
    // stage 3: 4k-th power path inside y_prime, sliced into S_1..S_{r'} and q_1..q_{r'}
    let r_prime_target = {
        let cap = params.r_prime_cap.max(2 * k);
        if 10 * k < 63 { cap.min(1usize << (10 * k)) } else { cap }
    };
    let want_len = r_prime_target * (2 * k + 1);
    let path = sequencing::find_path_power(
        t,
        &y_prime,
        4 * k,
        want_len,
        seed ^ 0xab51,
        &PathPowerParams { mode, ..Default::default() },
    )
    .map_err(|e| stage_err(e, "4k-power path inside the dominated pool"))?;
    let r_prime = (path.seq.len() / (2 * k + 1)).min(r_prime_target);
    if r_prime < 2 * k {
        return Err(Error::not_found(format!(
            "4k-power path of length {} supports r' = {} < 2k; pool too small",
            path.seq.len(),
            r_prime
        )));
    }
    let mut s_blocks: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<usize> = Vec::new();
    let mut s0 = s0_raw;
    sort_transitive(t, &mut s0);
    s_blocks.push(s0);
    // S_i = path positions i(2k+1)-2k .. i(2k+1)-1, q_i = position i(2k+1) (1-indexed)
    for i in 0..r_prime {
        let base = i * (2 * k + 1);
        s_blocks.push(path.seq[base..base + 2 * k].to_vec());
        q.push(path.seq[base + 2 * k]);
    }
    // stage 4: close the cycle from X_{i2} back to Xt with 2k-sets
    let x_set = VertexSet::from_iter(t.n(), x_i2[..8 * k].iter().copied());
    let xt_order = transitive_order_of(t, xt);
    let xt_first = VertexSet::from_iter(t.n(), xt_order[..8 * k].iter().copied());
    let sub = split.slice(i2, tt);
    let connect = sequencing::med_connect(
        t,
        &sub,
        &x_set,
        &xt_first,
        &VertexSet::new(t.n()),
        2 * k,
        seed ^ 0xab52,
        params.retries,
        mode,
    )
    .map_err(|e| stage_err(e, "closing chain from the landing block to Xt"))?;
    s_blocks.extend(connect.chain.blocks.iter().cloned());

    let h = Absorber { s_blocks, q, k, r_prime };
    match verify_absorber(t, &h)? {
        AbsorberVerdict::Pass => Ok(h),
        AbsorberVerdict::Fail(v) => {
            Err(Error::internal(format!("constructed absorber failed verification: {v}")))
        }
    }
}

fn stage_err(e: Error, tag: &str) -> Error {
    match e {
        Error::NotFound(msg) => Error::not_found(format!("{tag}: {msg}")),
        Error::Infeasible(msg) => Error::infeasible(format!("{tag}: {msg}")),
        Error::InvalidInput(msg) => Error::not_found(format!("{tag}: {msg}")),
        other => other,
    }
}

/// Deterministic engineered absorber on a blow-up skeleton, used by tests
/// and the absorber suite: blocks laid out as S_0, [S_1 q_1], ...,
/// [S_{r'} q_{r'}], S_{r'+1}, ..., S_r with all cross edges forward
/// except S_r => S_0 reversed; q-q edges are seeded coin flips.
pub fn engineered_absorber(
    k: usize,
    r_prime: usize,
    r: usize,
    seed: u64,
) -> Result<(Tournament, Absorber)> {
    if k == 0 || r <= r_prime || r_prime < 2 * k {
        return Err(Error::invalid(
            "engineered absorber needs k >= 1, r > r', r' >= 2k",
        ));
    }
    let two_k = 2 * k;
    let mut s_blocks: Vec<Vec<usize>> = vec![Vec::new(); r + 1];
    let mut q: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for _ in 0..two_k {
        s_blocks[0].push(next);
        next += 1;
    }
    for i in 1..=r_prime {
        for _ in 0..two_k {
            s_blocks[i].push(next);
            next += 1;
        }
        q.push(next);
        next += 1;
    }
    for block in s_blocks.iter_mut().take(r + 1).skip(r_prime + 1) {
        for _ in 0..two_k {
            block.push(next);
            next += 1;
        }
    }
    let n = next;
    let s0 = s_blocks[0].clone();
    let sr = s_blocks[r].clone();
    let q_copy = q.clone();
    let coin = |a: usize, b: usize| -> bool {
        // antisymmetric seeded coin on the unordered pair
        let (lo, hi) = (a.min(b), a.max(b));
        let mut h = seed
            .wrapping_mul(0x9e3779b97f4a7c15)
            .wrapping_add((lo as u64) << 32 | hi as u64);
        h ^= h >> 33;
        h = h.wrapping_mul(0xff51afd7ed558ccd);
        h ^= h >> 33;
        let bit = h & 1 == 1;
        if a < b {
            bit
        } else {
            !bit
        }
    };
    let t = Tournament::from_fn(n, |a, b| {
        let a_sr = sr.contains(&a);
        let b_sr = sr.contains(&b);
        let a_s0 = s0.contains(&a);
        let b_s0 = s0.contains(&b);
        if a_sr && b_s0 {
            return true; // S_r => S_0
        }
        if a_s0 && b_sr {
            return false;
        }
        if q_copy.contains(&a) && q_copy.contains(&b) {
            return coin(a, b);
        }
        a < b
    })?;
    let h = Absorber { s_blocks, q, k, r_prime };
    debug_assert!(verify_absorber(&t, &h)?.is_pass());
    Ok((t, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_built_absorber_passes() {
        let (t, h) = engineered_absorber(1, 2, 4, 0).unwrap();
        assert!(verify_absorber(&t, &h).unwrap().is_pass());
        assert_eq!(h.r(), 4);
        assert_eq!(h.absorbing_capacity(), 1);
    }

    #[test]
    fn broken_cycle_closure_fails() {
        let (_, h) = engineered_absorber(1, 2, 4, 0).unwrap();
        // same layout without the S_r => S_0 reversal
        let n = h.total_vertices();
        let t2 = Tournament::from_fn(n, |a, b| a < b).unwrap();
        assert_eq!(
            verify_absorber(&t2, &h).unwrap(),
            AbsorberVerdict::Fail(AbsorberViolation::CycleClosure)
        );
    }

    #[test]
    fn q_size_mismatch_fails() {
        let (t, mut h) = engineered_absorber(1, 2, 4, 0).unwrap();
        h.r_prime = 3;
        assert_eq!(
            verify_absorber(&t, &h).unwrap(),
            AbsorberVerdict::Fail(AbsorberViolation::QSizeMismatch { declared: 3, actual: 2 })
        );
    }

    #[test]
    fn span_path_x_equals_y() {
        let (t, h) = engineered_absorber(1, 2, 4, 0).unwrap();
        let q_set = VertexSet::from_iter(t.n(), h.q.iter().copied());
        let seq = absorber_span_path(&t, &h, &q_set, &q_set).unwrap();
        assert_eq!(seq.len(), h.total_vertices());
        assert!(q_set.contains(seq[0]));
        assert!(q_set.contains(*seq.last().unwrap()));
    }

    #[test]
    fn span_path_rejects_outsiders() {
        let (t, h) = engineered_absorber(1, 2, 4, 0).unwrap();
        let outside = VertexSet::from_iter(t.n(), h.s_blocks[1].iter().copied());
        let q_set = VertexSet::from_iter(t.n(), h.q.iter().copied());
        assert!(absorber_span_path(&t, &h, &outside, &q_set).is_err());
    }

    #[test]
    fn single_absorber_chain() {
        let (t, h) = engineered_absorber(1, 2, 4, 0).unwrap();
        let seq = chain_absorbers(&t, &[h.clone()], 0, RunMode::Opportunistic).unwrap();
        assert_eq!(seq.len(), h.total_vertices());
    }

    #[test]
    fn k2_absorber_span() {
        let (t, h) = engineered_absorber(2, 8, 10, 1).unwrap();
        assert!(verify_absorber(&t, &h).unwrap().is_pass());
        // |Q| = 8 always hosts a transitive 4-set
        let q_set = VertexSet::from_iter(t.n(), h.q.iter().copied());
        let xy = greedy_transitive(&t, &q_set);
        assert!(xy.len() >= 4);
        let set = VertexSet::from_iter(t.n(), xy[..4].iter().copied());
        let seq = absorber_span_path(&t, &h, &set, &set).unwrap();
        assert_eq!(seq.len(), h.total_vertices());
    }
}
