use std::collections::BTreeSet;

use proptest::prelude::*;
use shipat::path::Step;
use shipat::poset::{
    collisions, deletion_results, upper_cover_index, upper_covers_by_inverse_search, CollisionCase,
    Deletion,
};
use shipat::*;

fn steer(semilength: usize, bits: &[bool]) -> DyckPath {
    let mut steps = Vec::with_capacity(2 * semilength);
    let (mut ups, mut h) = (0, 0);
    for &want_up in &bits[..2 * semilength] {
        let up = ups < semilength && (want_up || h == 0);
        if up {
            ups += 1;
            h += 1;
            steps.push(Step::U);
        } else {
            h -= 1;
            steps.push(Step::D);
        }
    }
    DyckPath::new(steps).unwrap()
}

/// Deletes `U_i` and `D_k` straight from the tableau picture: remove row `i`
/// and column `k` of the area grid, then rebuild the area vector.
fn delete_by_area(path: &DyckPath, i: usize, k: usize) -> Option<DyckPath> {
    let s = path.semilength();
    // full[r][c]: box (r+1, c+1), with c < r
    let area = path.area_vector();
    let full: Vec<Vec<bool>> = (0..s)
        .map(|r| (0..r).map(|c| c < r - area[r]).collect())
        .collect();
    // remaining rows keep their index order; columns shift after removal
    let rows: Vec<usize> = (0..s).filter(|&r| r != i - 1).collect();
    let mut new_area = Vec::with_capacity(s - 1);
    for (nr, &r) in rows.iter().enumerate() {
        // columns of the new row: all old columns c < r except the removed one,
        // restricted to the first nr columns of the smaller staircase
        let cols: Vec<usize> = (0..r).filter(|&c| c != k - 1).take(nr).collect();
        if cols.len() != nr {
            return None;
        }
        let filled = cols.iter().filter(|&&c| full[r][c]).count();
        new_area.push(nr - filled);
    }
    ShiTableau::from_area(new_area).ok().map(|t| t.to_path())
}

#[test]
fn deletion_matches_the_tableau_picture() {
    // the row/column picture agrees with word deletion on δ_{i,i-1}
    for s in 2..=7 {
        for p in DyckPaths::new(s) {
            for (d, q) in deletion_results(&p) {
                if d.k() + 1 == d.i() {
                    if let Some(r) = delete_by_area(&p, d.i(), d.k()) {
                        assert_eq!(r, q, "{p} δ_{},{}", d.i(), d.k());
                    }
                }
            }
        }
    }
}

#[test]
fn inverse_consistency_up_to_seven() {
    for s in 1..=7 {
        let index = upper_cover_index(s);
        for (p, parents) in &index {
            assert_eq!(&upper_covers(p), parents, "{p}");
            for q in parents {
                assert!(lower_covers(q).contains(p));
            }
        }
    }
}

#[test]
fn definitional_search_agrees_on_small_levels() {
    for s in 1..=5 {
        for p in DyckPaths::new(s) {
            assert_eq!(upper_covers_by_inverse_search(&p), upper_covers(&p), "{p}");
        }
    }
}

#[test]
fn every_path_above_the_minimum_has_a_lower_cover() {
    for s in 2..=8 {
        for p in DyckPaths::new(s) {
            assert!(!lower_covers(&p).is_empty());
        }
    }
}

fn step_position(path: &DyckPath, step: Step, n: usize) -> usize {
    path.steps()
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == step)
        .nth(n - 1)
        .unwrap()
        .0
}

/// `U_i` comes before `D_k` in the word.
fn forward(path: &DyckPath, d: Deletion) -> bool {
    step_position(path, Step::U, d.i()) < step_position(path, Step::D, d.k())
}

#[test]
fn forward_double_covers_fall_into_the_two_cases() {
    let mut seen = BTreeSet::new();
    for s in 2..=7 {
        for p in DyckPaths::new(s) {
            for c in collisions(&p) {
                if c.first.i() < c.second.i() && forward(&p, c.first) && forward(&p, c.second) {
                    assert!(
                        matches!(
                            c.case,
                            CollisionCase::AscentDescent | CollisionCase::ZigzagSegment
                        ),
                        "{p}: {:?} {:?}",
                        c.first,
                        c.second
                    );
                    seen.insert(format!("{:?}", c.case));
                }
            }
        }
    }
    assert_eq!(seen.len(), 2);
}

/// A deletion that removes a ground valley `D_{i-1} U_i` can collide with
/// another one outside both cases.
#[test]
fn backward_deletions_escape_the_case_split() {
    let p: DyckPath = "UDUD".parse().unwrap();
    let (a, b) = (Deletion::new(1, 1).unwrap(), Deletion::new(2, 1).unwrap());
    let c = collisions(&p)
        .into_iter()
        .find(|c| (c.first, c.second) == (a, b))
        .unwrap();
    assert!(forward(&p, a) && !forward(&p, b));
    assert_eq!(c.case, CollisionCase::Unclassified);
}

#[test]
fn pruning_is_sound() {
    let pruned = Containment::new();
    let plain = Containment::without_pruning();
    for hs in 1..=7 {
        for host in DyckPaths::new(hs) {
            for ps in 1..=hs {
                for pat in DyckPaths::new(ps) {
                    assert_eq!(
                        pruned.contains(&host, &pat),
                        plain.contains(&host, &pat),
                        "{host} {pat}"
                    );
                }
            }
        }
    }
}

/// Height and area never grow under a deletion.
#[test]
fn deletions_are_monotone_in_height_and_area() {
    for s in 2..=9 {
        for p in DyckPaths::new(s) {
            for q in lower_covers(&p) {
                assert!(q.height() <= p.height());
                assert!(q.area() <= p.area());
            }
        }
    }
}

#[test]
fn containment_examples() {
    let p = |s: &str| s.parse::<DyckPath>().unwrap();
    assert!(contains_pattern(&p("UUDUUDUDDUDD"), &p("UUDUUDUDDUDD")));
    assert!(!contains_pattern(&p("UDUDUD"), &p("UUDD")));
    assert!(contains_pattern(&p("UUDUDD"), &p("UD")));
    for s in 1..=6 {
        for q in DyckPaths::new(s) {
            assert!(contains_pattern(&q, &p("UD")));
        }
    }
    assert_eq!(
        bounce_delete(&p("UUDUUDUDDUDD"), Deletion::new(3, 2).unwrap()).unwrap(),
        p("UUDUUDDUDD")
    );
}

#[test]
fn hasse_edges_are_the_cover_relation() {
    let g = hasse(4, 1_000).unwrap();
    assert_eq!(g.node_count(), 1 + 2 + 5 + 14);
    for (parent, child) in &g.edges {
        assert_eq!(parent.semilength(), child.semilength() + 1);
        assert!(lower_covers(parent).contains(child));
    }
    let expected: usize = (2..=4)
        .flat_map(DyckPaths::new)
        .map(|q| lower_covers(&q).len())
        .sum();
    assert_eq!(g.edge_count(), expected);
    let dot = export_dot(&g);
    assert!(dot.starts_with("digraph pattern_order {"));
    assert_eq!(dot.matches(" -> ").count(), expected);
}

fn arb_path(lo: usize, hi: usize) -> impl Strategy<Value = DyckPath> {
    (lo..=hi).prop_flat_map(|s| {
        proptest::collection::vec(any::<bool>(), 2 * s).prop_map(move |b| steer(s, &b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn containment_is_a_partial_order(
        p in arb_path(3, 9),
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 6),
        other in arb_path(3, 9),
    ) {
        prop_assert!(contains_pattern(&p, &p));
        // walk down twice through random covers
        let mut chain = vec![p.clone()];
        for pick in &picks {
            let covers: Vec<_> = lower_covers(chain.last().unwrap()).into_iter().collect();
            if covers.is_empty() { break; }
            chain.push(pick.get(&covers).clone());
        }
        for (a, x) in chain.iter().enumerate() {
            for y in &chain[a..] {
                prop_assert!(contains_pattern(x, y));
            }
        }
        if contains_pattern(&p, &other) && contains_pattern(&other, &p) {
            prop_assert_eq!(p, other);
        }
    }
}
