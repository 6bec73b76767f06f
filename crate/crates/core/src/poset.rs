//! The pattern order: bounce deletions, covers, containment and the Hasse
//! diagram.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::BigUint;
use thiserror::Error;

use crate::enumerate::{catalan, DyckPaths};
use crate::path::{DyckPath, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("deletion needs k in {{i-1, i}} with k >= 1, got i={i}, k={k}")]
    MalformedDeletion { i: usize, k: usize },
    #[error("deleting U_{i} and D_{k} breaks the prefix property")]
    InvalidDeletion { i: usize, k: usize },
    #[error("paths of semilength {0} have no bounce deletions")]
    TooShort(usize),
    #[error("{requested} nodes requested, budget is {limit}")]
    ResourceLimit { requested: BigUint, limit: u64 },
}

/// `δ_{i,k}`: delete `U_i` and `D_k`, with `k ∈ {i-1, i}` and `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Deletion {
    i: usize,
    k: usize,
}

impl Deletion {
    pub fn new(i: usize, k: usize) -> Result<Self, PosetError> {
        if k == 0 || !(k == i || k + 1 == i) {
            return Err(PosetError::MalformedDeletion { i, k });
        }
        Ok(Deletion { i, k })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// All deletions applicable to a path of the given semilength.
    pub fn all(semilength: usize) -> impl Iterator<Item = Deletion> {
        (1..=semilength).flat_map(|i| {
            let lo = if i == 1 { 1 } else { i - 1 };
            (lo..=i).map(move |k| Deletion { i, k })
        })
    }
}

/// Word positions (0-based) of `U_i` and `D_k`.
fn step_positions(steps: &[Step], i: usize, k: usize) -> (usize, usize) {
    let nth = |want: Step, n: usize| {
        steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == want)
            .nth(n - 1)
            .map(|(pos, _)| pos)
            .expect("index checked against semilength")
    };
    (nth(Step::U, i), nth(Step::D, k))
}

/// Applies `δ_{i,k}`. The `(i, i-1)` variant is re-validated and rejected if
/// the result is not a Dyck path.
pub fn bounce_delete(path: &DyckPath, d: Deletion) -> Result<DyckPath, PosetError> {
    let s = path.semilength();
    if s < 2 {
        return Err(PosetError::TooShort(s));
    }
    if d.i > s {
        return Err(PosetError::IndexOutOfRange { index: d.i, max: s });
    }
    let (pu, pd) = step_positions(path.steps(), d.i, d.k);
    let steps: Vec<Step> = path
        .steps()
        .iter()
        .enumerate()
        .filter(|&(pos, _)| pos != pu && pos != pd)
        .map(|(_, &st)| st)
        .collect();
    DyckPath::try_from_steps(steps).ok_or(PosetError::InvalidDeletion { i: d.i, k: d.k })
}

/// Every valid deletion of `path` together with its result, in deletion order.
pub fn deletion_results(path: &DyckPath) -> Vec<(Deletion, DyckPath)> {
    if path.semilength() < 2 {
        return Vec::new();
    }
    Deletion::all(path.semilength())
        .filter_map(|d| bounce_delete(path, d).ok().map(|q| (d, q)))
        .collect()
}

/// Lower covers; empty for `UD` and the empty path.
pub fn lower_covers(path: &DyckPath) -> BTreeSet<DyckPath> {
    deletion_results(path).into_iter().map(|(_, q)| q).collect()
}

/// Upper covers by bounce insertion: insert a `U` that becomes `U_j` and a `D`
/// that becomes `D_j` or `D_{j-1}`, keeping the results that are Dyck paths.
pub fn upper_covers(path: &DyckPath) -> BTreeSet<DyckPath> {
    let steps = path.steps();
    let n = steps.len();
    // ups[g] / downs[g]: steps of each kind before gap g
    let mut ups = vec![0usize; n + 1];
    let mut downs = vec![0usize; n + 1];
    for (pos, &st) in steps.iter().enumerate() {
        ups[pos + 1] = ups[pos] + usize::from(st == Step::U);
        downs[pos + 1] = downs[pos] + usize::from(st == Step::D);
    }
    let mut out = BTreeSet::new();
    for (gu, &ups_before) in ups.iter().enumerate() {
        let j = ups_before + 1;
        for (gd, &downs_before) in downs.iter().enumerate() {
            // D index after insertion, counting the inserted D itself
            let k = downs_before + 1;
            if !(k == j || k + 1 == j) {
                continue;
            }
            let orders: &[bool] = if gu == gd { &[true, false] } else { &[gu < gd] };
            for &u_first in orders {
                let mut word = Vec::with_capacity(n + 2);
                for g in 0..=n {
                    let (first, second) = if u_first {
                        (Step::U, Step::D)
                    } else {
                        (Step::D, Step::U)
                    };
                    let place_u = g == gu;
                    let place_d = g == gd;
                    match (place_u, place_d) {
                        (true, true) => word.extend([first, second]),
                        (true, false) => word.push(Step::U),
                        (false, true) => word.push(Step::D),
                        (false, false) => {}
                    }
                    if let Some(&st) = steps.get(g) {
                        word.push(st);
                    }
                }
                if let Some(q) = DyckPath::try_from_steps(word) {
                    out.insert(q);
                }
            }
        }
    }
    out
}

/// Upper covers straight from the definition: every path one size up that
/// has `path` among its lower covers.
pub fn upper_covers_by_inverse_search(path: &DyckPath) -> BTreeSet<DyckPath> {
    DyckPaths::new(path.semilength() + 1)
        .filter(|q| lower_covers(q).contains(path))
        .collect()
}

/// Upper covers of every path in `D_s` (`s >= 1`), read off the lower covers
/// of `D_{s+1}`.
pub fn upper_cover_index(semilength: usize) -> BTreeMap<DyckPath, BTreeSet<DyckPath>> {
    let mut index: BTreeMap<DyckPath, BTreeSet<DyckPath>> = DyckPaths::new(semilength)
        .map(|p| (p, BTreeSet::new()))
        .collect();
    for parent in DyckPaths::new(semilength + 1) {
        for child in lower_covers(&parent) {
            index
                .get_mut(&child)
                .expect("child has the lower semilength")
                .insert(parent.clone());
        }
    }
    index
}

/// How two distinct deletions producing the same child relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CollisionCase {
    /// Same `U`-step, two adjacent `D`-steps of one descent.
    SameUp,
    /// Both `U`s in one ascent and both `D`s in one descent.
    AscentDescent,
    /// The segment from `U_i` to `D_{k_j}` is `U^r (UD)^l D^t` with `l > 0`,
    /// starting at height `i - k_i` and ending at height `j - k_j`.
    ZigzagSegment,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub first: Deletion,
    pub second: Deletion,
    pub child: DyckPath,
    pub case: CollisionCase,
}

fn run_index(steps: &[Step]) -> Vec<usize> {
    let mut id = 0;
    let mut out = Vec::with_capacity(steps.len());
    for (pos, &st) in steps.iter().enumerate() {
        if pos > 0 && steps[pos - 1] != st {
            id += 1;
        }
        out.push(id);
    }
    out
}

fn is_zigzag_segment(seg: &[Step]) -> bool {
    let r = seg.iter().take_while(|&&s| s == Step::U).count();
    let t = seg.iter().rev().take_while(|&&s| s == Step::D).count();
    // peel U^r' from the left and D^t' from the right leaving (UD)^l, l > 0
    (0..=r).any(|r2| {
        (0..=t).any(|t2| {
            r2 + t2 < seg.len() && {
                let mid = &seg[r2..seg.len() - t2];
                !mid.is_empty()
                    && mid.len().is_multiple_of(2)
                    && mid.chunks(2).all(|c| c == [Step::U, Step::D])
            }
        })
    })
}

fn classify(path: &DyckPath, a: Deletion, b: Deletion) -> CollisionCase {
    let steps = path.steps();
    let runs = run_index(steps);
    let (ua, da) = step_positions(steps, a.i, a.k);
    let (ub, db) = step_positions(steps, b.i, b.k);
    if a.i == b.i {
        return if runs[da] == runs[db] {
            CollisionCase::SameUp
        } else {
            CollisionCase::Unclassified
        };
    }
    if da > ub {
        if runs[ua] == runs[ub] && runs[da] == runs[db] {
            CollisionCase::AscentDescent
        } else {
            CollisionCase::Unclassified
        }
    } else {
        let heights = path.heights();
        let seg = &steps[ua..=db];
        let start = heights[ua];
        let end = heights[db + 1];
        if is_zigzag_segment(seg) && start == a.i - a.k && end == b.i - b.k {
            CollisionCase::ZigzagSegment
        } else {
            CollisionCase::Unclassified
        }
    }
}

/// All pairs of distinct deletions of `path` with a common result, ordered
/// so that `first.i <= second.i`.
pub fn collisions(path: &DyckPath) -> Vec<Collision> {
    let results = deletion_results(path);
    let mut out = Vec::new();
    for (x, (da, qa)) in results.iter().enumerate() {
        for (db, qb) in &results[x + 1..] {
            if qa == qb {
                out.push(Collision {
                    first: *da,
                    second: *db,
                    child: qa.clone(),
                    case: classify(path, *da, *db),
                });
            }
        }
    }
    out
}

/// Memoized containment search. Results are cached per `(host, pattern)`
/// pair in a concurrent map that may be shared across threads.
#[derive(Debug, Default)]
pub struct Containment {
    cache: DashMap<(DyckPath, DyckPath), bool>,
    unpruned: bool,
}

impl Containment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Search without the height and area prunes; used to validate them.
    pub fn without_pruning() -> Self {
        Containment {
            cache: DashMap::new(),
            unpruned: true,
        }
    }

    pub fn contains(&self, host: &DyckPath, pattern: &DyckPath) -> bool {
        let (hs, ps) = (host.semilength(), pattern.semilength());
        if ps > hs {
            return false;
        }
        if ps == hs {
            return host == pattern;
        }
        if ps == 0 {
            return true;
        }
        // deletions never raise the height or the area
        if !self.unpruned && (pattern.height() > host.height() || pattern.area() > host.area()) {
            return false;
        }
        let key = (host.clone(), pattern.clone());
        if let Some(hit) = self.cache.get(&key) {
            return *hit;
        }
        let found = lower_covers(host).iter().any(|c| self.contains(c, pattern));
        self.cache.insert(key, found);
        found
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}

fn shared() -> &'static Containment {
    static CACHE: OnceLock<Containment> = OnceLock::new();
    CACHE.get_or_init(Containment::new)
}

/// `pattern` is reachable from `host` by bounce deletions (reflexive).
pub fn contains_pattern(host: &DyckPath, pattern: &DyckPath) -> bool {
    shared().contains(host, pattern)
}

pub fn avoids(host: &DyckPath, pattern: &DyckPath) -> bool {
    !contains_pattern(host, pattern)
}

/// Default node budget for [`hasse`].
pub const DEFAULT_MAX_NODES: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseGraph {
    /// `levels[s - 1]` holds `D_s` in lexicographic order.
    pub levels: Vec<Vec<DyckPath>>,
    /// `(parent, child)` cover pairs, sorted.
    pub edges: Vec<(DyckPath, DyckPath)>,
}

impl HasseGraph {
    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Cover graph on `D_1 ∪ ... ∪ D_max_semilength`.
pub fn hasse(max_semilength: usize, max_nodes: u64) -> Result<HasseGraph, PosetError> {
    let total: BigUint = (1..=max_semilength).map(catalan).sum();
    if total > BigUint::from(max_nodes) {
        return Err(PosetError::ResourceLimit {
            requested: total,
            limit: max_nodes,
        });
    }
    let levels: Vec<Vec<DyckPath>> = (1..=max_semilength)
        .map(|s| DyckPaths::new(s).collect())
        .collect();
    let mut edges: BTreeSet<(DyckPath, DyckPath)> = BTreeSet::new();
    for parent in levels.iter().flatten() {
        for child in lower_covers(parent) {
            edges.insert((parent.clone(), child));
        }
    }
    Ok(HasseGraph {
        levels,
        edges: edges.into_iter().collect(),
    })
}

/// Graphviz rendering with one rank per semilength, smallest at the bottom.
pub fn export_dot(graph: &HasseGraph) -> String {
    let mut out =
        String::from("digraph pattern_order {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (idx, level) in graph.levels.iter().enumerate() {
        let _ = writeln!(out, "  {{ rank=same; // semilength {}", idx + 1);
        for p in level {
            let _ = writeln!(out, "    \"{p}\";");
        }
        out.push_str("  }\n");
    }
    // group by child so the listing reads bottom-up
    let mut by_child: BTreeMap<&DyckPath, Vec<&DyckPath>> = BTreeMap::new();
    for (parent, child) in &graph.edges {
        by_child.entry(child).or_default().push(parent);
    }
    for level in &graph.levels {
        for child in level {
            for parent in by_child.get(child).into_iter().flatten() {
                let _ = writeln!(out, "  \"{child}\" -> \"{parent}\";");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    fn words(set: &BTreeSet<DyckPath>) -> Vec<String> {
        set.iter().map(|q| q.to_string()).collect()
    }

    #[test]
    fn deletions_from_the_figure() {
        let pi = p("UUDUUDUDDUDD");
        assert_eq!(
            bounce_delete(&pi, Deletion::new(3, 2).unwrap()).unwrap(),
            p("UUDUUDDUDD")
        );
        assert_eq!(
            bounce_delete(&pi, Deletion::new(3, 3).unwrap()).unwrap(),
            p("UUDUDUDUDD")
        );
        assert_eq!(
            bounce_delete(&p("UUDD"), Deletion::new(1, 1).unwrap()).unwrap(),
            p("UD")
        );
    }

    #[test]
    fn deletion_errors() {
        assert_eq!(
            Deletion::new(1, 0),
            Err(PosetError::MalformedDeletion { i: 1, k: 0 })
        );
        assert_eq!(
            Deletion::new(3, 1),
            Err(PosetError::MalformedDeletion { i: 3, k: 1 })
        );
        let d = Deletion::new(3, 3).unwrap();
        assert_eq!(
            bounce_delete(&p("UUDD"), d),
            Err(PosetError::IndexOutOfRange { index: 3, max: 2 })
        );
        assert_eq!(
            bounce_delete(&p("UD"), Deletion::new(1, 1).unwrap()),
            Err(PosetError::TooShort(1))
        );
        // the re-validation never fires on well-formed input
        for q in DyckPaths::new(7) {
            assert_eq!(deletion_results(&q).len(), Deletion::all(7).count());
        }
        assert_eq!(Deletion::all(3).count(), 5);
    }

    #[test]
    fn covers_examples() {
        assert_eq!(words(&lower_covers(&p("UUDD"))), ["UD"]);
        assert_eq!(words(&lower_covers(&p("UDUD"))), ["UD"]);
        assert_eq!(lower_covers(&p("UUDUDD")).len(), 2);
        assert!(lower_covers(&p("UD")).is_empty());
        assert_eq!(words(&upper_covers(&p("UD"))), ["UDUD", "UUDD"]);
        assert_eq!(upper_covers(&p("UDUDUD")).len(), 6);
        assert_eq!(upper_covers(&p("UUUUDDUDDD")).len(), 11);
        // inserted U and D at the same gap in the order D, U
        assert!(upper_covers(&p("UUDUDD")).contains(&p("UUDDUUDD")));
    }

    #[test]
    fn containment_examples() {
        let c = Containment::new();
        assert!(c.contains(&p("UUDUDD"), &p("UUDUDD")));
        assert!(!c.contains(&p("UDUDUD"), &p("UUDD")));
        assert!(c.contains(&p("UUDUDD"), &p("UD")));
        assert!(c.contains(&p("UD"), &DyckPath::empty()));
        assert!(c.cached() > 0);
        assert!(avoids(&p("UDUDUD"), &p("UUDD")));
    }

    #[test]
    fn hasse_small_levels() {
        let g = hasse(1, DEFAULT_MAX_NODES).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
        let g = hasse(2, DEFAULT_MAX_NODES).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
        let g = hasse(3, DEFAULT_MAX_NODES).unwrap();
        let expected: usize = DyckPaths::new(3)
            .map(|q| lower_covers(&q).len())
            .sum::<usize>()
            + 2;
        assert_eq!((g.node_count(), g.edge_count()), (8, expected));
        assert!(matches!(
            hasse(5, 10),
            Err(PosetError::ResourceLimit { limit: 10, .. })
        ));
    }

    #[test]
    fn dot_is_deterministic() {
        let g = hasse(2, DEFAULT_MAX_NODES).unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot, export_dot(&hasse(2, DEFAULT_MAX_NODES).unwrap()));
        assert!(dot.contains("\"UD\" -> \"UDUD\";\n  \"UD\" -> \"UUDD\";"));
    }

    #[test]
    fn collision_on_symmetric_path() {
        // first column and last row of a symmetric tableau
        let cs = collisions(&p("UUDUDD"));
        assert!(!cs.is_empty());
        assert!(cs.iter().all(|c| c.case != CollisionCase::Unclassified));
        assert!(is_zigzag_segment(&[Step::U, Step::U, Step::D, Step::D]));
        assert!(!is_zigzag_segment(&[
            Step::U,
            Step::U,
            Step::D,
            Step::U,
            Step::U,
            Step::D
        ]));
    }
}
