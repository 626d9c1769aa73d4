use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poset::{is_realizer, LinearExtension, Poset};

/// Critical pairs (a, b): a and b incomparable, everything below a is below b,
/// everything above b is above a. A family of extensions realizes the poset
/// iff every critical pair is reversed (b put below a) in some member, so the
/// dimension search only needs to cover these pairs.
pub fn critical_pairs(p: &Poset) -> Vec<(usize, usize)> {
    let n = p.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !p.incomparable_idx(a, b) {
                continue;
            }
            let down_ok = (0..n).all(|x| !p.lt_idx(x, a) || p.lt_idx(x, b));
            let up_ok = (0..n).all(|x| !p.lt_idx(b, x) || p.lt_idx(a, x));
            if down_ok && up_ok {
                out.push((a, b));
            }
        }
    }
    out
}

/// One class of the partition search: pairs whose reversals must live in a
/// common extension. `rev[b]` lists the a's with reversal edge b -> a.
struct ClassState {
    rev: Vec<Vec<usize>>,
    members: Vec<(usize, usize)>,
}

impl ClassState {
    fn new(n: usize) -> Self {
        ClassState {
            rev: vec![Vec::new(); n],
            members: Vec::new(),
        }
    }

    /// A set of reversals fits one extension iff the digraph of poset edges
    /// plus reversal edges stays acyclic. Adding b -> a creates a cycle iff a
    /// path a ~> b already exists.
    fn can_add(&self, p: &Poset, a: usize, b: usize) -> bool {
        let n = p.n();
        let mut visited = vec![false; n];
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            if v == b {
                return false;
            }
            if visited[v] {
                continue;
            }
            visited[v] = true;
            for w in 0..n {
                if p.lt_idx(v, w) && !visited[w] {
                    stack.push(w);
                }
            }
            for &w in &self.rev[v] {
                if !visited[w] {
                    stack.push(w);
                }
            }
        }
        true
    }

    fn push(&mut self, a: usize, b: usize) {
        self.rev[b].push(a);
        self.members.push((a, b));
    }

    fn pop(&mut self) {
        let (a, b) = self.members.pop().unwrap();
        let x = self.rev[b].pop();
        debug_assert_eq!(x, Some(a));
    }
}

fn search(
    p: &Poset,
    pairs: &[(usize, usize)],
    idx: usize,
    classes: &mut Vec<ClassState>,
    k: usize,
) -> bool {
    if idx == pairs.len() {
        return true;
    }
    let (a, b) = pairs[idx];
    let used = classes.len();
    for c in 0..used {
        if classes[c].can_add(p, a, b) {
            classes[c].push(a, b);
            if search(p, pairs, idx + 1, classes, k) {
                return true;
            }
            classes[c].pop();
        }
    }
    // Opening a new class: only the first unused one, to break symmetry.
    if used < k {
        let mut fresh = ClassState::new(p.n());
        fresh.push(a, b);
        classes.push(fresh);
        if search(p, pairs, idx + 1, classes, k) {
            return true;
        }
        classes.pop();
    }
    false
}

/// Extracts a concrete extension reversing the pairs of one class: topological
/// order of poset edges plus reversal edges, smallest element index first.
fn class_extension(p: &Poset, class: &ClassState) -> LinearExtension {
    let n = p.n();
    let mut indeg = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if p.lt_idx(i, j) {
                adj[i].push(j);
                indeg[j] += 1;
            }
        }
    }
    for (a, b) in &class.members {
        adj[*b].push(*a);
        indeg[*a] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    for _ in 0..n {
        let v = (0..n)
            .find(|&v| !done[v] && indeg[v] == 0)
            .expect("reversible class must stay acyclic");
        done[v] = true;
        order.push(p.elements()[v].clone());
        for &w in &adj[v] {
            indeg[w] -= 1;
        }
    }
    LinearExtension::new(order)
}

/// Exact order dimension by backtracking over critical pairs, trying
/// k = 1, 2, ... up to the cap. Exponential in the worst case; meant for
/// small ground sets.
pub fn dimension(p: &Poset, max_k: usize) -> Result<usize> {
    Ok(dimension_with_witness(p, max_k)?.0)
}

/// Same search, but also returns a realizer of minimum size.
pub fn dimension_with_witness(p: &Poset, max_k: usize) -> Result<(usize, Vec<LinearExtension>)> {
    if p.n() == 0 {
        return Err(Error::EmptyPoset);
    }
    let pairs = order_pairs_for_search(p, critical_pairs(p));
    if pairs.is_empty() {
        if !p.is_chain() {
            return Err(Error::InternalContradiction(
                "non-chain poset without critical pairs".into(),
            ));
        }
        if max_k < 1 {
            return Err(Error::ExceedsCap { max_k });
        }
        let ext = class_extension(p, &ClassState::new(p.n()));
        return Ok((1, vec![ext]));
    }
    for k in 1..=max_k {
        let mut classes = Vec::new();
        if search(p, &pairs, 0, &mut classes, k) {
            let exts: Vec<LinearExtension> =
                classes.iter().map(|c| class_extension(p, c)).collect();
            debug_assert!(is_realizer(p, &exts).unwrap());
            return Ok((k, exts));
        }
    }
    Err(Error::ExceedsCap { max_k })
}

/// Most-constrained-first ordering: pairs that conflict with many others are
/// placed early so dead branches fail fast. Conflicts are pairs that no
/// single extension can reverse together.
fn order_pairs_for_search(p: &Poset, pairs: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let m = pairs.len();
    let mut degree = vec![0usize; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let mut class = ClassState::new(p.n());
            class.push(pairs[i].0, pairs[i].1);
            if !class.can_add(p, pairs[j].0, pairs[j].1) {
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by_key(|&i| (std::cmp::Reverse(degree[i]), i));
    idx.into_iter().map(|i| pairs[i]).collect()
}

/// Brute-force dimension: enumerate all linear extensions and try every
/// k-subset. Only feasible for very small posets; kept as an independent
/// cross-check for the backtracking search.
pub fn dimension_naive(p: &Poset, max_k: usize) -> Result<usize> {
    if p.n() == 0 {
        return Err(Error::EmptyPoset);
    }
    let exts = p.linear_extensions();
    // Orientation mask per extension over the incomparable pairs; a subset
    // realizes the poset iff both orientations of every pair occur.
    let n = p.n();
    let mut inc_pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if p.incomparable_idx(i, j) {
                inc_pairs.push((i, j));
            }
        }
    }
    assert!(
        inc_pairs.len() <= 64,
        "naive oracle limited to 64 incomparable pairs"
    );
    let full: u64 = if inc_pairs.is_empty() {
        0
    } else {
        (!0u64) >> (64 - inc_pairs.len())
    };
    let masks: Vec<u64> = exts
        .iter()
        .map(|ext| {
            let pos = ext.positions();
            let mut mask = 0u64;
            for (bit, &(i, j)) in inc_pairs.iter().enumerate() {
                if pos[p.elements()[i].as_str()] < pos[p.elements()[j].as_str()] {
                    mask |= 1 << bit;
                }
            }
            mask
        })
        .collect();
    for k in 1..=max_k.min(exts.len()) {
        for combo in (0..exts.len()).combinations(k) {
            let mut fwd = 0u64;
            let mut bwd = 0u64;
            for &c in &combo {
                fwd |= masks[c];
                bwd |= !masks[c] & full;
            }
            if fwd == full && bwd == full {
                return Ok(k);
            }
        }
    }
    Err(Error::ExceedsCap { max_k })
}
