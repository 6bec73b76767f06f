//! Pattern families, avoidance predicates and avoider counts.
//!
//! Counts are indexed by tableau size `n`, i.e. hosts have semilength `n + 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::enumerate::{catalan, DyckPaths};
use crate::path::{DyckPath, Step};
use crate::poset::Containment;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AvoidanceError {
    #[error("unsupported pattern family {0:?}; expected one of te, tg, tor, tv, tf")]
    UnsupportedFamily(String),
    #[error("brute-force enumeration at size {requested} exceeds the limit {limit}")]
    ResourceLimit { requested: usize, limit: usize },
}

/// The five families `te_k = U^{k+1}D^{k+1}`, `tg_k = U^k D U D^k`,
/// `tor_k = U^k D^k U D`, `tv_k = U D U^k D^k` and `tf_k = (UD)^{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternFamily {
    Te,
    Tg,
    Tor,
    Tv,
    Tf,
}

impl PatternFamily {
    pub const ALL: [PatternFamily; 5] = [
        PatternFamily::Te,
        PatternFamily::Tg,
        PatternFamily::Tor,
        PatternFamily::Tv,
        PatternFamily::Tf,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            PatternFamily::Te => "te",
            PatternFamily::Tg => "tg",
            PatternFamily::Tor => "tor",
            PatternFamily::Tv => "tv",
            PatternFamily::Tf => "tf",
        }
    }
}

impl FromStr for PatternFamily {
    type Err = AvoidanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PatternFamily::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| AvoidanceError::UnsupportedFamily(s.to_string()))
    }
}

impl fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn word(parts: &[(Step, usize)]) -> DyckPath {
    let steps = parts
        .iter()
        .flat_map(|&(s, n)| std::iter::repeat_n(s, n))
        .collect();
    DyckPath::try_from_steps(steps).expect("family words are Dyck paths")
}

/// The pattern of the given family and size; semilength `k + 1`.
pub fn pattern(family: PatternFamily, k: usize) -> DyckPath {
    use Step::{D, U};
    match family {
        PatternFamily::Te => DyckPath::mountain(k + 1),
        PatternFamily::Tg => word(&[(U, k), (D, 1), (U, 1), (D, k)]),
        PatternFamily::Tor => word(&[(U, k), (D, k), (U, 1), (D, 1)]),
        PatternFamily::Tv => word(&[(U, 1), (D, 1), (U, k), (D, k)]),
        PatternFamily::Tf => DyckPath::zigzag(k + 1),
    }
}

/// Removes the first ascent `U^{a_1}` and the first `a_1` down-steps; the
/// tableau with its leading columns deleted.
fn strip_first_ascent(path: &DyckPath) -> DyckPath {
    let a1 = path.steps().iter().take_while(|&&s| s == Step::U).count();
    let mut downs = 0;
    let steps = path.steps()[a1..]
        .iter()
        .copied()
        .filter(|&s| {
            if s == Step::D && downs < a1 {
                downs += 1;
                false
            } else {
                true
            }
        })
        .collect();
    DyckPath::try_from_steps(steps).expect("stripping the first ascent keeps the prefix property")
}

/// Avoidance decided by the structural characterizations, without any
/// poset search.
pub fn avoids_characterized(path: &DyckPath, family: PatternFamily, k: usize) -> bool {
    match family {
        PatternFamily::Tf => path.return_points().len() <= k,
        PatternFamily::Te => path.height() <= k,
        PatternFamily::Tg if k <= 2 => avoids_tg2_by_peaks(path),
        PatternFamily::Tg => path.valleys().iter().all(|v| v.height + 1 < k),
        PatternFamily::Tv => {
            let a1 = path.steps().iter().take_while(|&&s| s == Step::U).count();
            let rows = path.semilength() - a1;
            rows < k || strip_first_ascent(path).height() < k
        }
        PatternFamily::Tor => {
            avoids_characterized(&path.reverse_complement(), PatternFamily::Tv, k)
        }
    }
}

/// Size-2 shape for `tg`: at most one peak at height at least 2.
pub fn avoids_tg2_by_peaks(path: &DyckPath) -> bool {
    path.peaks().iter().filter(|p| p.height >= 2).count() <= 1
}

/// Size-2 shape for `tv`: `U^{s} D^{s}` or `U^r D w D (UD)^{s-1-r}` where `w`
/// holds `r - 1` down-steps and a single up-step.
pub fn avoids_tv2_by_shape(path: &DyckPath) -> bool {
    let s = path.semilength();
    if *path == DyckPath::mountain(s) {
        return true;
    }
    let st = path.steps();
    let r = st.iter().take_while(|&&x| x == Step::U).count();
    if r == 0 || r >= s {
        return false;
    }
    let tail_len = 2 * (s - 1 - r);
    let head_len = st.len() - tail_len;
    // U^r D w D with |w| = r
    if head_len != 2 * r + 2 || st[r] != Step::D || st[head_len - 1] != Step::D {
        return false;
    }
    let w = &st[r + 1..head_len - 1];
    let tail = &st[head_len..];
    w.iter().filter(|&&x| x == Step::U).count() == 1
        && tail.chunks(2).all(|c| c == [Step::U, Step::D])
}

/// Size-2 shape for `tor`, the mirror image of [`avoids_tv2_by_shape`].
pub fn avoids_tor2_by_shape(path: &DyckPath) -> bool {
    avoids_tv2_by_shape(&path.reverse_complement())
}

/// Largest tableau size accepted by [`count_avoiders_brute`].
pub const BRUTE_MAX_SIZE: usize = 12;

/// `|Av_n(pattern)|` by enumerating `D_{n+1}` and searching for the pattern.
pub fn count_avoiders_brute(pattern: &DyckPath, n: usize) -> Result<u64, AvoidanceError> {
    count_avoiders_brute_with(&Containment::new(), pattern, n, BRUTE_MAX_SIZE)
}

/// As [`count_avoiders_brute`] with an explicit cache and size limit. Hosts
/// are split into prefix shards processed in parallel on the current rayon
/// pool; all shards share the concurrent containment cache.
pub fn count_avoiders_brute_with(
    cache: &Containment,
    pattern: &DyckPath,
    n: usize,
    max_size: usize,
) -> Result<u64, AvoidanceError> {
    if n > max_size {
        return Err(AvoidanceError::ResourceLimit {
            requested: n,
            limit: max_size,
        });
    }
    let s = n + 1;
    let shards = DyckPaths::prefixes(s, 8.min(2 * s));
    Ok(shards
        .par_iter()
        .map(|prefix| {
            DyckPaths::with_prefix(s, prefix)
                .filter(|h| !cache.contains(h, pattern))
                .count() as u64
        })
        .sum())
}

/// `|T(n, k)|`: Dyck paths of semilength `n` and height at most `k`.
pub fn bounded_height_count(n: usize, k: usize) -> BigUint {
    // t[j][m] = |T(m, j)|
    let mut t: Vec<Vec<BigUint>> = Vec::with_capacity(k + 1);
    let mut base = vec![BigUint::zero(); n + 1];
    base[0] = BigUint::one();
    t.push(base);
    for j in 1..=k {
        let mut row = vec![BigUint::zero(); n + 1];
        row[0] = BigUint::one();
        for m in 1..=n {
            // first return decomposition U A D B with A of height <= j-1
            row[m] = (0..m).map(|i| &row[i] * &t[j - 1][m - 1 - i]).sum();
        }
        t.push(row);
    }
    t[k][n].clone()
}

pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    (0..r).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

/// `(n - l + 1)/(n + 1) · binom(n + l, l)`: lattice paths with `n` up-steps
/// and `l` down-steps that never go below the start. Zero when `l > n`.
pub fn ballot_count(n: usize, l: usize) -> BigUint {
    if l > n {
        return BigUint::zero();
    }
    let (q, r) = (binomial(n + l, l) * BigUint::from(n - l + 1)).div_rem(&BigUint::from(n + 1));
    assert!(r.is_zero(), "ballot number must be integral");
    q
}

fn binomial_int(n: usize, r: i64) -> BigInt {
    if r < 0 || r as usize > n {
        BigInt::zero()
    } else {
        BigInt::from(binomial(n, r as usize))
    }
}

/// `|F(m, n, k)|`: lattice paths from `(0,0)` to `(m, n)` with unit steps
/// right and up that stay in the strip `x <= y <= x + k`, by the iterated
/// reflection principle:
///
/// `Σ_{i>=0} (n-m+2iw+1)/(n+iw+1)·binom(m+n, m-iw)
///  + Σ_{i>=1} (n-m-2iw+1)/(m+iw)·binom(m+n, m+iw-1)`, `w = k + 2`.
///
/// Each term is the difference of two reflected binomials. Terms are exact
/// fractions and the total is checked to be integral. Endpoints outside the
/// strip give 0.
pub fn f_count(m: usize, n: usize, k: usize) -> BigUint {
    if n < m || n > m + k {
        return BigUint::zero();
    }
    let value = reflection_sum(m, n, k, 1);
    assert!(
        value.is_integer(),
        "reflection sum for F({m},{n},{k}) is not integral: {value}"
    );
    let value = value.to_integer();
    assert!(
        !value.is_negative(),
        "reflection sum for F({m},{n},{k}) is negative: {value}"
    );
    value.to_biguint().expect("non-negative")
}

/// The reflection sum with the second binomial read as `binom(m+n, m+iw)`,
/// i.e. without the shift by one. Kept to document that this reading does
/// not count the strip paths (it is not even integral in general).
pub fn f_count_as_printed(m: usize, n: usize, k: usize) -> BigRational {
    reflection_sum(m, n, k, 0)
}

fn reflection_sum(m: usize, n: usize, k: usize, shift: i64) -> BigRational {
    let (mi, ni, w) = (m as i64, n as i64, k as i64 + 2);
    let total = (m + n) as i64;
    let mut sum = BigRational::zero();
    // terms vanish once the binomial's lower index leaves [0, m + n]
    let mut i = 0i64;
    while mi - i * w >= 0 {
        let frac = BigRational::new(
            BigInt::from(ni - mi + 2 * i * w + 1),
            BigInt::from(ni + i * w + 1),
        );
        sum += frac * BigRational::from_integer(binomial_int(m + n, mi - i * w));
        i += 1;
    }
    let mut i = 1i64;
    while mi + i * w - shift <= total {
        let frac = BigRational::new(
            BigInt::from(ni - mi - 2 * i * w + 1),
            BigInt::from(mi + i * w),
        );
        sum += frac * BigRational::from_integer(binomial_int(m + n, mi + i * w - shift));
        i += 1;
    }
    sum
}

/// `|F(m, n, k)|` by dynamic programming over the strip.
pub fn f_count_oracle(m: usize, n: usize, k: usize) -> BigUint {
    let inside = |x: usize, y: usize| x <= y && y <= x + k;
    let mut grid = vec![vec![BigUint::zero(); n + 1]; m + 1];
    for x in 0..=m {
        for y in 0..=n {
            if !inside(x, y) {
                continue;
            }
            grid[x][y] = if x == 0 && y == 0 {
                BigUint::one()
            } else {
                let left = if x > 0 {
                    grid[x - 1][y].clone()
                } else {
                    BigUint::zero()
                };
                let below = if y > 0 {
                    grid[x][y - 1].clone()
                } else {
                    BigUint::zero()
                };
                left + below
            };
        }
    }
    grid[m][n].clone()
}

/// `|Av_n(family_k)|` from the closed formulas.
///
/// `te`, `tf` and `tg` (for `k >= 3`) give `|T(n+1, k)|`; `tv`, `tor` give
/// `Σ_{l<min(k,n+1)} ballot(n, l) + [n >= k]·|F(n,n,k-1)|
///  + Σ_{l=k}^{n-1} Σ_{h<k} binom(n-l+h-1, h)·|F(l-h, l, k-1)|`.
pub fn count_avoiders_closed(family: PatternFamily, k: usize, n: usize) -> BigUint {
    match family {
        PatternFamily::Tg if k <= 2 => count_avoiders_size_two(family, n),
        PatternFamily::Te | PatternFamily::Tf | PatternFamily::Tg => bounded_height_count(n + 1, k),
        PatternFamily::Tv | PatternFamily::Tor => {
            let mut total: BigUint = (0..k.min(n + 1)).map(|l| ballot_count(n, l)).sum();
            if n >= k {
                total += f_count(n, n, k - 1);
            }
            for l in k..n {
                for h in 0..k {
                    total += binomial(n - l + h - 1, h) * f_count(l - h, l, k - 1);
                }
            }
            total
        }
    }
}

/// Size-2 closed forms: `2^n` for `te`/`tf`, `binom(n+1, 2) + 1` otherwise.
pub fn count_avoiders_size_two(family: PatternFamily, n: usize) -> BigUint {
    match family {
        PatternFamily::Te | PatternFamily::Tf => BigUint::one() << n,
        _ => binomial(n + 1, 2) + BigUint::one(),
    }
}

/// The zeta map: `w_0 w_1 ... w_n`, where `w_j` reads the area vector and
/// records `D` for each entry `j - 1` and `U` for each entry `j`.
pub fn zeta(path: &DyckPath) -> DyckPath {
    let area = path.area_vector();
    let mut steps = Vec::with_capacity(path.len());
    // an entry equal to the largest value s - 1 closes in w_s
    for j in 0..=area.len() {
        for &a in &area {
            if a + 1 == j {
                steps.push(Step::D);
            } else if a == j {
                steps.push(Step::U);
            }
        }
    }
    DyckPath::try_from_steps(steps).expect("zeta yields a Dyck path")
}

/// Replaces each maximal mountain above height `k - 1` by a zigzag; sends
/// `tg_k`-avoiders onto `te_k`-avoiders.
pub fn flatten_peaks(path: &DyckPath, k: usize) -> DyckPath {
    let base = k.saturating_sub(1);
    let steps = path.steps();
    let mut out = Vec::with_capacity(steps.len());
    let mut h = 0;
    let mut pos = 0;
    while pos < steps.len() {
        if h == base && steps[pos] == Step::U {
            // maximal excursion above the base line
            let start = pos;
            let mut d = 0i64;
            loop {
                d += if steps[pos] == Step::U { 1 } else { -1 };
                pos += 1;
                if d == 0 {
                    break;
                }
            }
            let half = (pos - start) / 2;
            let mountain = steps[start..pos].iter().take(half).all(|&s| s == Step::U);
            if mountain {
                for _ in 0..half {
                    out.extend([Step::U, Step::D]);
                }
            } else {
                out.extend_from_slice(&steps[start..pos]);
            }
            continue;
        }
        h = if steps[pos] == Step::U { h + 1 } else { h - 1 };
        out.push(steps[pos]);
        pos += 1;
    }
    DyckPath::try_from_steps(out).expect("flattening keeps a Dyck path")
}

/// Inverse of [`flatten_peaks`] on paths of height at most `k`: each maximal
/// run of peaks on the line `k - 1` becomes one mountain.
pub fn unflatten_peaks(path: &DyckPath, k: usize) -> DyckPath {
    let base = k.saturating_sub(1);
    let steps = path.steps();
    let mut out = Vec::with_capacity(steps.len());
    let mut h = 0;
    let mut pos = 0;
    while pos < steps.len() {
        if h == base && steps[pos] == Step::U {
            let mut run = 0;
            while pos + 1 < steps.len() && steps[pos] == Step::U && steps[pos + 1] == Step::D {
                run += 1;
                pos += 2;
            }
            if run > 0 {
                out.extend(std::iter::repeat_n(Step::U, run));
                out.extend(std::iter::repeat_n(Step::D, run));
                continue;
            }
        }
        h = if steps[pos] == Step::U { h + 1 } else { h - 1 };
        out.push(steps[pos]);
        pos += 1;
    }
    DyckPath::try_from_steps(out).expect("unflattening keeps a Dyck path")
}

/// Brute avoider counts of two families side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilfReport {
    pub first: PatternFamily,
    pub second: PatternFamily,
    pub k: usize,
    /// `(n, count_first, count_second)` for `n = 0..=n_max`.
    pub rows: Vec<(usize, u64, u64)>,
}

impl WilfReport {
    pub fn first_divergence(&self) -> Option<usize> {
        self.rows.iter().find(|r| r.1 != r.2).map(|r| r.0)
    }

    pub fn equivalent(&self) -> bool {
        self.first_divergence().is_none()
    }
}

impl fmt::Display for WilfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n,{}_{},{}_{}", self.first, self.k, self.second, self.k)?;
        for (n, a, b) in &self.rows {
            writeln!(f, "{n},{a},{b}")?;
        }
        match self.first_divergence() {
            None => writeln!(f, "equal for n <= {}", self.rows.len().saturating_sub(1)),
            Some(n) => writeln!(f, "diverge at n = {n}"),
        }
    }
}

pub fn wilf_check(
    first: PatternFamily,
    second: PatternFamily,
    k: usize,
    n_max: usize,
) -> Result<WilfReport, AvoidanceError> {
    let cache = Containment::new();
    let (pa, pb) = (pattern(first, k), pattern(second, k));
    let rows = (0..=n_max)
        .map(|n| {
            Ok((
                n,
                count_avoiders_brute_with(&cache, &pa, n, BRUTE_MAX_SIZE)?,
                count_avoiders_brute_with(&cache, &pb, n, BRUTE_MAX_SIZE)?,
            ))
        })
        .collect::<Result<_, AvoidanceError>>()?;
    Ok(WilfReport {
        first,
        second,
        k,
        rows,
    })
}

/// Space-separated terms, as pasted into a sequence lookup.
pub fn oeis_line<T: fmt::Display>(terms: &[T]) -> String {
    terms
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `n,count` CSV with header.
pub fn csv_sequence<T: fmt::Display>(terms: &[T]) -> String {
    let mut out = String::from("n,count\n");
    for (n, t) in terms.iter().enumerate() {
        out.push_str(&format!("{n},{t}\n"));
    }
    out
}

/// `C_{n+1}`, the number of tableaux of size `n`.
pub fn tableaux_count(n: usize) -> BigUint {
    catalan(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    #[test]
    fn family_words() {
        assert_eq!(pattern(PatternFamily::Te, 2), p("UUUDDD"));
        assert_eq!(pattern(PatternFamily::Tg, 2), p("UUDUDD"));
        assert_eq!(pattern(PatternFamily::Tor, 2), p("UUDDUD"));
        assert_eq!(pattern(PatternFamily::Tv, 2), p("UDUUDD"));
        assert_eq!(pattern(PatternFamily::Tf, 2), p("UDUDUD"));
        assert_eq!(pattern(PatternFamily::Tv, 5), p("UDUUUUUDDDDD"));
        assert_eq!("tor".parse::<PatternFamily>(), Ok(PatternFamily::Tor));
        assert_eq!(
            "tx".parse::<PatternFamily>(),
            Err(AvoidanceError::UnsupportedFamily("tx".into()))
        );
    }

    #[test]
    fn characterization_examples() {
        assert!(avoids_characterized(
            &DyckPath::zigzag(5),
            PatternFamily::Te,
            2
        ));
        assert!(avoids_characterized(
            &DyckPath::mountain(5),
            PatternFamily::Tf,
            2
        ));
        // the valley of UUUDUDDD sits at height 2 = k - 1
        assert!(!avoids_characterized(&p("UUUDUDDD"), PatternFamily::Tg, 3));
        assert!(avoids_characterized(&p("UUDUDD"), PatternFamily::Tg, 3));
        assert!(!avoids_characterized(&p("UUDDUUDD"), PatternFamily::Tg, 2));
        assert!(avoids_characterized(&p("UUUDDD"), PatternFamily::Tg, 2));
    }

    #[test]
    fn brute_counts_small() {
        let te = pattern(PatternFamily::Te, 2);
        assert_eq!(count_avoiders_brute(&te, 2), Ok(4));
        assert_eq!(count_avoiders_brute(&te, 1), Ok(2));
        assert_eq!(
            count_avoiders_brute(&pattern(PatternFamily::Tg, 2), 3),
            Ok(7)
        );
        assert_eq!(
            count_avoiders_brute(&te, BRUTE_MAX_SIZE + 1),
            Err(AvoidanceError::ResourceLimit {
                requested: BRUTE_MAX_SIZE + 1,
                limit: BRUTE_MAX_SIZE
            })
        );
    }

    #[test]
    fn bounded_height_small() {
        for n in 0..8 {
            assert_eq!(bounded_height_count(n, 1), BigUint::one());
        }
        assert_eq!(bounded_height_count(3, 2), BigUint::from(4u32));
        assert_eq!(bounded_height_count(0, 0), BigUint::one());
        assert_eq!(bounded_height_count(2, 0), BigUint::zero());
        for n in 0..10 {
            assert_eq!(bounded_height_count(n + 1, 2), BigUint::one() << n);
        }
    }

    #[test]
    fn ballot_small() {
        assert_eq!(ballot_count(5, 0), BigUint::one());
        assert_eq!(ballot_count(2, 1), BigUint::from(2u32));
        for n in 0..=10 {
            assert_eq!(ballot_count(n, n), catalan(n));
        }
        assert_eq!(ballot_count(1, 2), BigUint::zero());
    }

    #[test]
    fn f_count_small() {
        assert_eq!(f_count(0, 0, 3), BigUint::one());
        assert_eq!(f_count(3, 3, 2), BigUint::from(4u32));
        assert_eq!(f_count_oracle(3, 3, 2), BigUint::from(4u32));
        assert_eq!(f_count(2, 0, 0), BigUint::zero());
        assert_eq!(
            f_count_as_printed(3, 3, 2),
            BigRational::from_integer(5.into())
        );
        assert!(!f_count_as_printed(3, 3, 1).is_integer());
        for n in 0..8 {
            assert_eq!(f_count(n, n, 3), bounded_height_count(n, 3));
        }
    }

    #[test]
    fn zeta_small() {
        assert_eq!(zeta(&p("UD")), p("UD"));
        for s in 1..6 {
            assert_eq!(zeta(&DyckPath::zigzag(s)), DyckPath::mountain(s));
        }
        assert_eq!(zeta(&DyckPath::empty()), DyckPath::empty());
    }

    #[test]
    fn flattening_round_trip() {
        let q = p("UUUDDUUUDDDD");
        let flat = flatten_peaks(&q, 3);
        assert_eq!(flat, p("UUUDDUUDUDDD"));
        assert_eq!(unflatten_peaks(&flat, 3), q);
    }

    #[test]
    fn output_helpers() {
        assert_eq!(oeis_line(&[1, 2, 5]), "1 2 5");
        assert_eq!(csv_sequence(&[1, 2]), "n,count\n0,1\n1,2\n");
        assert_eq!(tableaux_count(2).to_u64(), Some(5));
    }
}
