//! Shi tableaux, 2×n standard Young tableaux and dominant-region inequalities.
//!
//! A Shi tableau of size `n` is a filling of the staircase with rows
//! `1..=n+1` (row `i` has `i - 1` boxes, bottom to top) and columns `1..=n+1`
//! (column `j` has `n + 1 - j` boxes). Full boxes close upward and leftward, so
//! a tableau is determined by its area vector: the number of empty boxes in
//! each row. It corresponds to the Dyck path of semilength `n + 1` whose
//! `i`-th `U`-step lies on column `i` and whose `i`-th `D`-step lies on row `i`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::path::{DyckPath, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("the empty path has no Shi tableau")]
    EmptyPath,
    #[error("area vector must be non-empty")]
    EmptyArea,
    #[error("area entry {index} is {value}, expected at most {max}")]
    IllegalArea {
        index: usize,
        value: usize,
        max: usize,
    },
    #[error("invalid area entry {index}: {text:?}")]
    MalformedArea { index: usize, text: String },
    #[error("standard tableau rows must both have length {expected}")]
    RowLength { expected: usize },
    #[error("standard tableau is not a filling of 1..={0} with increasing rows and columns")]
    NotStandard(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiTableau {
    area: Vec<usize>,
}

impl ShiTableau {
    /// Validates `a_1 = 0` and `a_{i+1} <= a_i + 1`.
    pub fn from_area(area: Vec<usize>) -> Result<Self, TableauError> {
        if area.is_empty() {
            return Err(TableauError::EmptyArea);
        }
        let mut max = 0;
        for (i, &a) in area.iter().enumerate() {
            if a > max {
                return Err(TableauError::IllegalArea {
                    index: i + 1,
                    value: a,
                    max,
                });
            }
            max = a + 1;
        }
        Ok(ShiTableau { area })
    }

    pub fn from_path(path: &DyckPath) -> Result<Self, TableauError> {
        if path.is_empty() {
            return Err(TableauError::EmptyPath);
        }
        Ok(ShiTableau {
            area: path.area_vector(),
        })
    }

    /// Rebuilds the Dyck path: row `i` contributes `D_i` after enough
    /// `U`-steps to reach its left boundary.
    pub fn to_path(&self) -> DyckPath {
        let s = self.area.len();
        let mut steps = Vec::with_capacity(2 * s);
        let mut downs = 0;
        for (i, &a) in self.area.iter().enumerate() {
            // U_{i+1} is preceded by i - a D-steps
            let need = i - a;
            while downs < need {
                steps.push(Step::D);
                downs += 1;
            }
            steps.push(Step::U);
        }
        while downs < s {
            steps.push(Step::D);
            downs += 1;
        }
        DyckPath::from_steps_unchecked(steps)
    }

    pub fn size(&self) -> usize {
        self.area.len() - 1
    }

    pub fn area(&self) -> &[usize] {
        &self.area
    }

    /// Whether box `(row, col)` is full; `None` outside the staircase.
    pub fn is_full(&self, row: usize, col: usize) -> Option<bool> {
        if row == 0 || col == 0 || row > self.area.len() || col >= row {
            return None;
        }
        let boxes = row - 1;
        Some(col <= boxes - self.area[row - 1])
    }

    /// Defining inequalities of the dominant Shi region, one per box, listed by
    /// columns left to right and, within a column, rows top to bottom.
    ///
    /// A tableau of size `n` lives in the arrangement on `x_1, ..., x_{n+1}`;
    /// the pair `i < j` is governed by box `(n + 2 - i, n + 2 - j)`.
    pub fn region_inequalities(&self) -> Vec<Inequality> {
        let rows = self.area.len();
        let mut out = Vec::new();
        for col in 1..rows {
            for row in (col + 1..=rows).rev() {
                let full = self.is_full(row, col).expect("box inside staircase");
                out.push(Inequality {
                    i: rows + 1 - row,
                    j: rows + 1 - col,
                    full,
                });
            }
        }
        out
    }
}

/// `x_i - x_j > 1` when `full`, otherwise `0 < x_i - x_j < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub i: usize,
    pub j: usize,
    pub full: bool,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full {
            write!(f, "x{}-x{}>1", self.i, self.j)
        } else {
            write!(f, "0<x{}-x{}<1", self.i, self.j)
        }
    }
}

/// Parses a comma-separated area vector such as `0,1,1`.
pub fn parse_area(text: &str) -> Result<ShiTableau, TableauError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(TableauError::EmptyArea);
    }
    let area = text
        .split(',')
        .enumerate()
        .map(|(i, part)| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| TableauError::MalformedArea {
                    index: i + 1,
                    text: part.to_string(),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    ShiTableau::from_area(area)
}

impl FromStr for ShiTableau {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_area(s)
    }
}

impl fmt::Display for ShiTableau {
    /// ASCII staircase, top row first: `#` full, `.` empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.area.len();
        for row in (2..=rows).rev() {
            let line: String = (1..row)
                .map(|col| {
                    if self.is_full(row, col) == Some(true) {
                        '#'
                    } else {
                        '.'
                    }
                })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// The `2 × s` standard Young tableau of a Dyck path: the top row lists the
/// positions of the `U`-steps, the bottom row those of the `D`-steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau2 {
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl StandardTableau2 {
    pub fn from_path(path: &DyckPath) -> Self {
        StandardTableau2 {
            top: path.up_positions(),
            bottom: path.down_positions(),
        }
    }

    pub fn new(top: Vec<usize>, bottom: Vec<usize>) -> Result<Self, TableauError> {
        let s = top.len();
        if bottom.len() != s {
            return Err(TableauError::RowLength { expected: s });
        }
        let mut seen = vec![false; 2 * s + 1];
        for &v in top.iter().chain(&bottom) {
            if v == 0 || v > 2 * s || std::mem::replace(&mut seen[v], true) {
                return Err(TableauError::NotStandard(2 * s));
            }
        }
        let increasing = |row: &[usize]| row.windows(2).all(|w| w[0] < w[1]);
        let columns = top.iter().zip(&bottom).all(|(t, b)| t < b);
        if !increasing(&top) || !increasing(&bottom) || !columns {
            return Err(TableauError::NotStandard(2 * s));
        }
        Ok(StandardTableau2 { top, bottom })
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    pub fn to_path(&self) -> DyckPath {
        let mut steps = vec![Step::D; 2 * self.top.len()];
        for &t in &self.top {
            steps[t - 1] = Step::U;
        }
        DyckPath::from_steps_unchecked(steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    /// Counts empty boxes per row by laying the path on the grid and testing
    /// each box against the path's horizontal position in that row.
    fn empty_boxes_by_grid(path: &DyckPath) -> Vec<usize> {
        let s = path.semilength();
        // x-coordinate of the vertical step crossing row i (rows 1..=s)
        let mut x_at_row = vec![0; s];
        let (mut x, mut y) = (0, 0);
        for &st in path.steps() {
            match st {
                Step::U => {
                    x_at_row[y] = x;
                    y += 1;
                }
                Step::D => x += 1,
            }
        }
        (0..s)
            .map(|r| (0..r).filter(|&c| c >= x_at_row[r]).count())
            .collect()
    }

    #[test]
    fn area_extremes_and_grid_oracle() {
        for n in 0..5 {
            assert_eq!(
                ShiTableau::from_path(&DyckPath::zigzag(n + 1))
                    .unwrap()
                    .area(),
                vec![0; n + 1]
            );
            let mountain = ShiTableau::from_path(&DyckPath::mountain(n + 1)).unwrap();
            assert_eq!(mountain.area(), (0..=n).collect::<Vec<_>>());
        }
        let path = p("UUDUDD");
        assert_eq!(empty_boxes_by_grid(&path), vec![0, 1, 1]);
        assert_eq!(ShiTableau::from_path(&path).unwrap().area(), vec![0, 1, 1]);
        for w in crate::enumerate::DyckPaths::new(6) {
            assert_eq!(w.area_vector(), empty_boxes_by_grid(&w), "{w}");
        }
    }

    #[test]
    fn illegal_area_vectors() {
        assert_eq!(ShiTableau::from_area(vec![]), Err(TableauError::EmptyArea));
        assert_eq!(
            ShiTableau::from_area(vec![1]),
            Err(TableauError::IllegalArea {
                index: 1,
                value: 1,
                max: 0
            })
        );
        assert_eq!(
            ShiTableau::from_area(vec![0, 1, 3]),
            Err(TableauError::IllegalArea {
                index: 3,
                value: 3,
                max: 2
            })
        );
        assert!(matches!(
            parse_area("0,x"),
            Err(TableauError::MalformedArea { index: 2, .. })
        ));
        assert_eq!(
            ShiTableau::from_path(&DyckPath::empty()),
            Err(TableauError::EmptyPath)
        );
    }

    #[test]
    fn standard_tableau_examples() {
        let s = StandardTableau2::from_path(&p("UD"));
        assert_eq!((s.top(), s.bottom()), (&[1][..], &[2][..]));
        let s = StandardTableau2::from_path(&p("UUDD"));
        assert_eq!((s.top(), s.bottom()), (&[1, 2][..], &[3, 4][..]));
        let s = StandardTableau2::from_path(&p("UUDUUDUDDUDD"));
        assert_eq!(s.top(), &[1, 2, 4, 5, 7, 10]);
        assert_eq!(s.bottom(), &[3, 6, 8, 9, 11, 12]);
        assert_eq!(s.to_path(), p("UUDUUDUDDUDD"));
        assert!(StandardTableau2::new(vec![2, 3], vec![1, 4]).is_err());
        assert!(StandardTableau2::new(vec![1, 2], vec![3, 3]).is_err());
        assert!(StandardTableau2::new(vec![1], vec![2, 3]).is_err());
    }

    #[test]
    fn region_inequalities_for_size_two() {
        let text = |t: &ShiTableau| {
            t.region_inequalities()
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
        };
        let all_empty = ShiTableau::from_area(vec![0, 1, 2]).unwrap();
        let mut got = text(&all_empty);
        got.sort();
        assert_eq!(got, ["0<x1-x2<1", "0<x1-x3<1", "0<x2-x3<1"]);
        let all_full = ShiTableau::from_area(vec![0, 0, 0]).unwrap();
        let mut got = text(&all_full);
        got.sort();
        assert_eq!(got, ["x1-x2>1", "x1-x3>1", "x2-x3>1"]);
        let mixed = ShiTableau::from_area(vec![0, 0, 1]).unwrap();
        assert_eq!(text(&mixed), ["x1-x3>1", "x2-x3>1", "0<x1-x2<1"]);
        assert!(ShiTableau::from_area(vec![0])
            .unwrap()
            .region_inequalities()
            .is_empty());
    }

    #[test]
    fn ascii_grid() {
        let t = ShiTableau::from_area(vec![0, 0, 1]).unwrap();
        assert_eq!(t.to_string(), "#.\n#\n");
    }
}
