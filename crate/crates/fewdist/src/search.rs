//! Exact maximum-code search by branch-and-bound maximum clique.
//!
//! Translation by a fixed word preserves all pairwise distances, so the
//! zero word can be assumed to belong to a maximum code. Every other
//! word then has weight in D, and two candidates are compatible when
//! their mutual distance lies in D. The answer is one more than the
//! maximum clique of that compatibility graph.
//!
//! The solver is a classic color-bounded branch and bound: candidates at
//! each node are greedily colored, vertices are explored in reverse color
//! order, and a branch is cut once the clique size plus the color bound
//! cannot beat the incumbent. Adjacency rows and candidate sets are
//! packed 64-bit blocks; the inner loops are population-count driven.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::code::{Code, DistanceSet, Word};
use crate::error::Error;

/// Hard cap on the word length the search accepts by default.
pub const DEFAULT_MAX_LENGTH: usize = 20;

/// Cap on the candidate-set size; the adjacency matrix is quadratic in it.
const MAX_VERTICES: usize = 32_768;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub time_limit: Option<Duration>,
    pub threads: usize,
    pub max_length: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            time_limit: None,
            threads: 1,
            max_length: DEFAULT_MAX_LENGTH,
        }
    }
}

/// Outcome of a search. `complete` means the value is exactly the
/// maximum size of a code of length n with distances in D.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub value: usize,
    pub witness: Code,
    pub complete: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Exact maximum size of a binary code of length `n` with all pairwise
/// distances in `distances`, with a witness code containing the zero word.
pub fn max_code(
    n: usize,
    distances: &DistanceSet,
    opts: &SearchOptions,
) -> Result<SearchResult, Error> {
    let start = Instant::now();
    if distances.max_distance() > n {
        return Err(Error::invalid(format!(
            "distance {} exceeds length {n}",
            distances.max_distance()
        )));
    }
    if n > opts.max_length || n > 63 {
        return Err(Error::ResourceLimit {
            what: "search length".into(),
            required: n.to_string(),
            limit: opts.max_length.min(63).to_string(),
        });
    }
    if opts.threads == 0 {
        return Err(Error::invalid("threads must be positive"));
    }

    let masks = candidate_masks(n, distances)?;
    let m = masks.len();
    let adj = Adjacency::build(&masks, distances);
    let deadline = opts.time_limit.map(|lim| start + lim);

    let shared = Shared {
        adj: &adj,
        best: AtomicUsize::new(0),
        witness: Mutex::new(Vec::new()),
        timed_out: AtomicBool::new(false),
        nodes: AtomicU64::new(1),
        deadline,
    };

    if m > 0 && !shared.expired() {
        // One coloring of the full candidate set fixes the root branch
        // order; branches are then claimed atomically by the workers.
        let root = Bits::full(m);
        let order = color_order(&root.0, &adj);
        let next_branch = AtomicUsize::new(0);
        let workers = opts.threads.min(order.len()).max(1);
        if workers == 1 {
            run_worker(&shared, &root, &order, &next_branch);
        } else {
            std::thread::scope(|scope| {
                for _ in 0..workers {
                    scope.spawn(|| run_worker(&shared, &root, &order, &next_branch));
                }
            });
        }
    }

    let clique = shared.witness.into_inner().unwrap();
    let mut words = vec![Word::zero(n)];
    for &v in &clique {
        words.push(mask_to_word(n, masks[v as usize]));
    }
    let witness = Code::new(n, words).expect("clique words are distinct");
    Ok(SearchResult {
        value: shared.best.load(Ordering::Relaxed) + 1,
        witness,
        complete: !shared.timed_out.load(Ordering::Relaxed),
        nodes: shared.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    })
}

/// Independent recheck of a search result: word length, size claim, and
/// every pairwise distance. Deliberately avoids the search code path.
pub fn verify_witness(result: &SearchResult, n: usize, distances: &DistanceSet) -> bool {
    let words = result.witness.words();
    if result.witness.n() != n || words.len() != result.value {
        return false;
    }
    for (i, u) in words.iter().enumerate() {
        if u.len() != n {
            return false;
        }
        for v in &words[i + 1..] {
            match u.distance(v) {
                Ok(d) if distances.contains(d) => {}
                _ => return false,
            }
        }
    }
    true
}

/// All words of weight in D, sorted by (weight, lexicographic bit-string
/// order) for a deterministic vertex numbering.
fn candidate_masks(n: usize, distances: &DistanceSet) -> Result<Vec<u64>, Error> {
    let mut masks: Vec<u64> = Vec::new();
    for &d in distances.distances() {
        let group_start = masks.len();
        let mut c: u64 = (1u64 << d) - 1;
        while c < 1u64 << n {
            masks.push(c);
            let t = c | (c - 1);
            let next = (t + 1) | (((!t & (t + 1)) - 1) >> (c.trailing_zeros() + 1));
            c = next;
        }
        // lexicographic string order = numeric order with bit 0 most significant
        masks[group_start..].sort_unstable_by_key(|&w| w.reverse_bits());
        if masks.len() > MAX_VERTICES {
            return Err(Error::ResourceLimit {
                what: "search candidate set".into(),
                required: format!("more than {}", masks.len()),
                limit: MAX_VERTICES.to_string(),
            });
        }
    }
    Ok(masks)
}

fn mask_to_word(n: usize, mask: u64) -> Word {
    let mut w = Word::zero(n);
    for j in 0..n {
        if mask >> j & 1 == 1 {
            w.set(j, true);
        }
    }
    w
}

/// Packed adjacency rows of the compatibility graph.
struct Adjacency {
    blocks: usize,
    bits: Vec<u64>,
}

impl Adjacency {
    fn build(masks: &[u64], distances: &DistanceSet) -> Adjacency {
        let mut dmask: u64 = 0;
        for &d in distances.distances() {
            dmask |= 1 << d;
        }
        let m = masks.len();
        let blocks = m.div_ceil(64).max(1);
        let mut bits = vec![0u64; m * blocks];
        for i in 0..m {
            for j in i + 1..m {
                let dist = (masks[i] ^ masks[j]).count_ones();
                if dmask >> dist & 1 == 1 {
                    bits[i * blocks + j / 64] |= 1 << (j % 64);
                    bits[j * blocks + i / 64] |= 1 << (i % 64);
                }
            }
        }
        Adjacency { blocks, bits }
    }

    fn row(&self, v: u32) -> &[u64] {
        &self.bits[v as usize * self.blocks..(v as usize + 1) * self.blocks]
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn full(m: usize) -> Bits {
        let blocks = m.div_ceil(64).max(1);
        let mut v = vec![u64::MAX; blocks];
        let tail = m % 64;
        if tail != 0 {
            v[blocks - 1] = (1u64 << tail) - 1;
        }
        if m == 0 {
            v[0] = 0;
        }
        Bits(v)
    }

    fn intersection(p: &[u64], q: &[u64]) -> Bits {
        Bits(p.iter().zip(q).map(|(a, b)| a & b).collect())
    }

    fn clear(&mut self, v: u32) {
        self.0[v as usize / 64] &= !(1 << (v % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

fn first_bit(p: &[u64]) -> Option<u32> {
    for (i, &b) in p.iter().enumerate() {
        if b != 0 {
            return Some((i * 64) as u32 + b.trailing_zeros());
        }
    }
    None
}

/// Greedy sequential coloring of the candidate set. Returns (vertex,
/// color) pairs with colors ascending; `color` bounds the largest clique
/// containing the vertex within its prefix of the order.
fn color_order(p: &[u64], adj: &Adjacency) -> Vec<(u32, u32)> {
    let mut order = Vec::new();
    let mut uncolored = p.to_vec();
    let mut avail = vec![0u64; p.len()];
    let mut color = 0u32;
    while first_bit(&uncolored).is_some() {
        color += 1;
        avail.copy_from_slice(&uncolored);
        while let Some(v) = first_bit(&avail) {
            avail[v as usize / 64] &= !(1 << (v % 64));
            for (a, r) in avail.iter_mut().zip(adj.row(v)) {
                *a &= !r;
            }
            uncolored[v as usize / 64] &= !(1 << (v % 64));
            order.push((v, color));
        }
    }
    order
}

struct Shared<'a> {
    adj: &'a Adjacency,
    best: AtomicUsize,
    witness: Mutex<Vec<u32>>,
    timed_out: AtomicBool,
    nodes: AtomicU64,
    deadline: Option<Instant>,
}

impl Shared<'_> {
    fn expired(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.timed_out.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    fn try_improve(&self, clique: &[u32]) {
        let size = clique.len();
        let prev = self.best.fetch_max(size, Ordering::Relaxed);
        if size > prev {
            let mut w = self.witness.lock().unwrap();
            if size > w.len() {
                *w = clique.to_vec();
            }
        }
    }
}

fn run_worker(shared: &Shared, root: &Bits, order: &[(u32, u32)], next_branch: &AtomicUsize) {
    let mut ctx = Ctx {
        shared,
        current: Vec::new(),
        nodes: 0,
    };
    loop {
        let i = next_branch.fetch_add(1, Ordering::Relaxed);
        if i >= order.len() || shared.expired() {
            break;
        }
        let idx = order.len() - 1 - i;
        let (v, color) = order[idx];
        // root prune: clique size 1 plus the color bound cannot beat best
        if (color as usize) < shared.best.load(Ordering::Relaxed) {
            continue;
        }
        // Candidates: root vertices earlier in the color order, restricted
        // to the neighborhood of v.
        let mut p = root.clone();
        for &(later, _) in &order[idx..] {
            p.clear(later);
        }
        let np = Bits::intersection(&p.0, shared.adj.row(v));

        ctx.current.push(v);
        if np.is_empty() {
            shared.try_improve(&ctx.current);
        } else {
            ctx.expand(np);
        }
        ctx.current.pop();
    }
    shared.nodes.fetch_add(ctx.nodes, Ordering::Relaxed);
}

struct Ctx<'a> {
    shared: &'a Shared<'a>,
    current: Vec<u32>,
    nodes: u64,
}

impl Ctx<'_> {
    fn expand(&mut self, mut p: Bits) {
        self.nodes += 1;
        if self.shared.expired() {
            return;
        }
        let order = color_order(&p.0, self.shared.adj);
        for &(v, color) in order.iter().rev() {
            if self.current.len() + color as usize <= self.shared.best.load(Ordering::Relaxed) {
                return;
            }
            let np = Bits::intersection(&p.0, self.shared.adj.row(v));
            self.current.push(v);
            if np.is_empty() {
                self.shared.try_improve(&self.current);
            } else {
                self.expand(np);
            }
            self.current.pop();
            p.clear(v);
            if self.shared.timed_out.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}
