//! Exhaustive generation of `D_s` in lexicographic order.

use num_bigint::BigUint;
use num_traits::One;

use crate::path::{DyckPath, Step};

/// Iterator over all Dyck paths of a given semilength that extend a fixed
/// prefix, in lexicographic order (`D < U`). Restartable by construction and
/// splittable into disjoint prefix shards.
#[derive(Clone, Debug)]
pub struct DyckPaths {
    semilength: usize,
    fixed: usize,
    current: Option<Vec<Step>>,
}

impl DyckPaths {
    pub fn new(semilength: usize) -> Self {
        Self::with_prefix(semilength, &[])
    }

    /// Paths beginning with `prefix`; empty if no such path exists.
    pub fn with_prefix(semilength: usize, prefix: &[Step]) -> Self {
        let current = smallest_completion(semilength, prefix.to_vec());
        DyckPaths {
            semilength,
            fixed: prefix.len(),
            current,
        }
    }

    /// All feasible prefixes of length `depth`, in lexicographic order. The
    /// iterators `with_prefix(s, p)` for these prefixes partition `D_s`.
    pub fn prefixes(semilength: usize, depth: usize) -> Vec<Vec<Step>> {
        let depth = depth.min(2 * semilength);
        let mut out = vec![Vec::new()];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(out.len() * 2);
            for prefix in out {
                for step in [Step::D, Step::U] {
                    let mut p = prefix.clone();
                    p.push(step);
                    if feasible_prefix(semilength, &p) {
                        next.push(p);
                    }
                }
            }
            out = next;
        }
        out
    }
}

fn feasible_prefix(semilength: usize, prefix: &[Step]) -> bool {
    let mut ups = 0;
    let mut downs = 0;
    for &s in prefix {
        match s {
            Step::U => ups += 1,
            Step::D => downs += 1,
        }
        if downs > ups || ups > semilength {
            return false;
        }
    }
    prefix.len() <= 2 * semilength
}

/// Greedy lexicographically smallest completion: step down whenever the
/// height allows it, up otherwise.
fn smallest_completion(semilength: usize, mut steps: Vec<Step>) -> Option<Vec<Step>> {
    if !feasible_prefix(semilength, &steps) {
        return None;
    }
    let mut height = steps
        .iter()
        .fold(0i64, |h, s| if *s == Step::U { h + 1 } else { h - 1 });
    while steps.len() < 2 * semilength {
        if height > 0 {
            steps.push(Step::D);
            height -= 1;
        } else {
            steps.push(Step::U);
            height += 1;
        }
    }
    Some(steps)
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let current = self.current.take()?;
        let out = DyckPath::from_steps_unchecked(current.clone());
        // successor: rightmost D (outside the fixed prefix) that can become U
        let mut ups_before: Vec<usize> = Vec::with_capacity(current.len());
        let mut ups = 0;
        for &s in &current {
            ups_before.push(ups);
            if s == Step::U {
                ups += 1;
            }
        }
        for i in (self.fixed..current.len()).rev() {
            if current[i] == Step::D && ups_before[i] < self.semilength {
                let mut prefix = current[..i].to_vec();
                prefix.push(Step::U);
                self.current = smallest_completion(self.semilength, prefix);
                if self.current.is_some() {
                    break;
                }
            }
        }
        Some(out)
    }
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    let mut c = BigUint::one();
    for k in 0..n {
        // C_{k+1} = C_k * 2(2k+1) / (k+2)
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan_by_recurrence(n: usize) -> u64 {
        let mut c = vec![1u64];
        for m in 1..=n {
            c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
        }
        c[n]
    }

    #[test]
    fn counts_match_catalan_recurrence() {
        assert_eq!(
            DyckPaths::new(0).map(|p| p.to_string()).collect::<Vec<_>>(),
            [""]
        );
        assert_eq!(
            DyckPaths::new(1).map(|p| p.to_string()).collect::<Vec<_>>(),
            ["UD"]
        );
        assert_eq!(DyckPaths::new(3).count(), 5);
        assert_eq!(DyckPaths::new(8).count() as u64, catalan_by_recurrence(8));
        assert_eq!(catalan_by_recurrence(8), 1430);
        for n in 0..=12 {
            assert_eq!(catalan(n), BigUint::from(catalan_by_recurrence(n)));
        }
    }

    #[test]
    fn strictly_increasing_and_valid() {
        let all: Vec<_> = DyckPaths::new(7).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all
            .iter()
            .all(|p| DyckPath::new(p.steps().to_vec()).is_ok()));
    }

    #[test]
    fn prefix_shards_partition_the_level() {
        let all: Vec<_> = DyckPaths::new(6).collect();
        for depth in 0..6 {
            let sharded: Vec<_> = DyckPaths::prefixes(6, depth)
                .iter()
                .flat_map(|p| DyckPaths::with_prefix(6, p))
                .collect();
            assert_eq!(sharded, all);
        }
        assert_eq!(DyckPaths::with_prefix(2, &[Step::D]).count(), 0);
    }
}
