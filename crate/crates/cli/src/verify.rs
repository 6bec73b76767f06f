//! Oracle cross-checks behind `shipat verify`.

use std::collections::BTreeSet;
use std::io::{self, Write};

use num_bigint::BigUint;
use shipat::avoidance::{count_avoiders_brute_with, BRUTE_MAX_SIZE};
use shipat::covers::audit;
use shipat::poset::upper_cover_index;
use shipat::{
    avoids, avoids_characterized, count_avoiders_closed, f_count, f_count_oracle,
    irreducible_decomposition, lower_covers, pattern, strongly_irreducible_decomposition,
    upper_covers, zeta, Containment, DyckPath, DyckPaths, PatternFamily, ShiTableau,
    StandardTableau2,
};

use crate::Suite;

struct Check {
    name: &'static str,
    failures: usize,
    cases: usize,
}

fn paths(n_max: usize) -> impl Iterator<Item = DyckPath> {
    (1..=n_max).flat_map(DyckPaths::new)
}

fn tally(name: &'static str, results: impl Iterator<Item = bool>) -> Check {
    let (mut cases, mut failures) = (0, 0);
    for ok in results {
        cases += 1;
        failures += usize::from(!ok);
    }
    Check {
        name,
        failures,
        cases,
    }
}

fn core(n_max: usize) -> Vec<Check> {
    vec![
        tally(
            "tableau round trip",
            paths(n_max).map(|p| {
                let t = ShiTableau::from_path(&p).expect("nonempty");
                t.to_path() == p && StandardTableau2::from_path(&p).to_path() == p
            }),
        ),
        tally(
            "run form round trip",
            paths(n_max).map(|p| p.run_form().to_path() == p),
        ),
        tally(
            "word round trip",
            paths(n_max).map(|p| p.to_string().parse::<DyckPath>().ok() == Some(p.clone())),
        ),
        tally(
            "peaks exceed valleys by one",
            paths(n_max).map(|p| p.peaks().len() == p.valleys().len() + 1),
        ),
        tally(
            "decompositions recompose",
            paths(n_max).map(|p| {
                irreducible_decomposition(&p).recompose() == p
                    && strongly_irreducible_decomposition(&p)
                        .map_or(!p.is_irreducible(), |d| d.recompose() == p)
            }),
        ),
        tally(
            "bounce path is idempotent",
            paths(n_max).map(|p| {
                let b = p.bounce_path();
                b.bounce_path() == b && b.area() <= p.area()
            }),
        ),
    ]
}

fn covers(n_max: usize) -> Vec<Check> {
    let report = audit(n_max);
    let mut checks = vec![
        Check {
            name: "closed lower counts",
            failures: report.lower_mismatches.len(),
            cases: report.paths,
        },
        Check {
            name: "closed upper counts",
            failures: report.upper_mismatches.len(),
            cases: report.paths,
        },
    ];
    let index_size = n_max.saturating_sub(1).min(7);
    checks.push(tally(
        "insertion matches inverse deletion",
        (1..=index_size).flat_map(|s| {
            upper_cover_index(s)
                .into_iter()
                .map(|(p, parents)| upper_covers(&p) == parents)
        }),
    ));
    checks.push(tally(
        "minimum is the only path without lower covers",
        paths(n_max).map(|p| lower_covers(&p).is_empty() == (p.semilength() == 1)),
    ));
    let pruned = Containment::new();
    let plain = Containment::without_pruning();
    let small = n_max.min(6);
    checks.push(tally(
        "pruned containment search",
        paths(small).flat_map(|h| {
            paths(h.semilength())
                .map(|q| pruned.contains(&h, &q) == plain.contains(&h, &q))
                .collect::<Vec<_>>()
        }),
    ));
    checks
}

fn avoidance(n_max: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    checks.push(tally(
        "characterizations match search",
        PatternFamily::ALL.into_iter().flat_map(|family| {
            (2..=4).flat_map(move |k| {
                let pat = pattern(family, k);
                paths(n_max).map(move |q| avoids_characterized(&q, family, k) == avoids(&q, &pat))
            })
        }),
    ));
    let cache = Containment::new();
    let brute_max = n_max.saturating_sub(1).min(BRUTE_MAX_SIZE);
    checks.push(tally(
        "closed counts match brute",
        PatternFamily::ALL.into_iter().flat_map(|family| {
            let cache = &cache;
            (2..=5).flat_map(move |k| {
                let pat = pattern(family, k);
                (0..=brute_max).map(move |n| {
                    let brute = count_avoiders_brute_with(cache, &pat, n, BRUTE_MAX_SIZE)
                        .expect("within limit");
                    count_avoiders_closed(family, k, n) == BigUint::from(brute)
                })
            })
        }),
    ));
    let side = 2 * n_max + 2;
    checks.push(tally(
        "strip formula matches lattice walk",
        (0..=side).flat_map(|m| {
            (0..=side).flat_map(move |n| {
                (0..=6).map(move |k| f_count(m, n, k) == f_count_oracle(m, n, k))
            })
        }),
    ));
    checks.push(tally(
        "zeta is a bijection",
        (1..=n_max).map(|s| {
            let images: BTreeSet<DyckPath> = DyckPaths::new(s).map(|q| zeta(&q)).collect();
            images.len() == DyckPaths::new(s).count()
        }),
    ));
    checks.push(tally(
        "zeta sends height to bounce returns",
        paths(n_max).flat_map(|q| {
            let returns = zeta(&q).return_points().len();
            let h = q.height();
            (1..=5).map(move |k| (h <= k) == (returns <= k))
        }),
    ));
    checks
}

/// Runs the selected suites, prints one line per check and a summary.
pub(crate) fn run(suite: Suite, n_max: usize, out: &mut impl Write) -> io::Result<bool> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Core | Suite::All) {
        checks.extend(core(n_max));
    }
    if matches!(suite, Suite::Covers | Suite::All) {
        checks.extend(covers(n_max));
    }
    if matches!(suite, Suite::Avoidance | Suite::All) {
        checks.extend(avoidance(n_max));
    }
    let mut failed = 0;
    for c in &checks {
        let tag = if c.failures == 0 { "PASS" } else { "FAIL" };
        failed += usize::from(c.failures > 0);
        writeln!(
            out,
            "{tag} {}: {} cases, {} failures",
            c.name, c.cases, c.failures
        )?;
    }
    writeln!(out, "{} checks, {} failed", checks.len(), failed)?;
    Ok(failed == 0)
}
