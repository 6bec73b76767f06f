//! Dyck paths stored as step words, plus the statistics the rest of the crate
//! is built on.
//!
//! Indices are 1-based throughout the public API: `U_i` is the i-th up-step,
//! `D_k` the k-th down-step, and rows/columns of the associated tableau are
//! numbered from 1. Positions of points on a path are step counts from the
//! origin (the origin itself is position 0).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A single step of a Dyck word.
///
/// `D` sorts before `U`, so the derived order on paths agrees with the
/// lexicographic order of their `U`/`D` spellings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    D,
    U,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
        }
    }

    /// Accepts `U`/`D`, the binary alias `1`/`0` and the bracket alias `(`/`)`.
    pub fn from_char(c: char) -> Option<Step> {
        match c {
            'U' | '1' | '(' => Some(Step::U),
            'D' | '0' | ')' => Some(Step::D),
            _ => None,
        }
    }

    pub fn flip(self) -> Step {
        match self {
            Step::U => Step::D,
            Step::D => Step::U,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at index {index}")]
    MalformedWord { index: usize, found: char },
    #[error("more D than U steps in the prefix ending at index {index}")]
    PrefixViolation { index: usize },
    #[error("word is not balanced: it ends at height {height} (index {index})")]
    NotBalanced { index: usize, height: usize },
}

/// A point where the path turns, i.e. a peak (`UD`) or a valley (`DU`).
///
/// `position` is the number of steps before the turning point and `height`
/// the number of `U`s minus the number of `D`s among those steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn {
    pub position: usize,
    pub height: usize,
}

/// A balanced `U`/`D` word whose every prefix has at least as many `U`s as `D`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// The empty path of semilength 0.
    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    pub fn new(steps: Vec<Step>) -> Result<Self, ParseError> {
        validate(&steps)?;
        Ok(DyckPath { steps })
    }

    /// Returns `None` unless `steps` spells a Dyck path.
    pub fn try_from_steps(steps: Vec<Step>) -> Option<Self> {
        is_dyck_word(&steps).then_some(DyckPath { steps })
    }

    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(is_dyck_word(&steps), "not a Dyck word");
        DyckPath { steps }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut steps = Vec::with_capacity(text.len());
        let mut height = 0usize;
        for (idx, c) in text.chars().enumerate() {
            let index = idx + 1;
            let step = Step::from_char(c).ok_or(ParseError::MalformedWord { index, found: c })?;
            match step {
                Step::U => height += 1,
                Step::D => {
                    height = height
                        .checked_sub(1)
                        .ok_or(ParseError::PrefixViolation { index })?;
                }
            }
            steps.push(step);
        }
        if height != 0 {
            return Err(ParseError::NotBalanced {
                index: steps.len(),
                height,
            });
        }
        Ok(DyckPath { steps })
    }

    /// `U^a D^a`.
    pub fn mountain(a: usize) -> Self {
        Self::from_runs(&[(a, a)])
    }

    /// `(UD)^n`.
    pub fn zigzag(n: usize) -> Self {
        Self::from_runs(&vec![(1, 1); n])
    }

    /// Builds `U^{a_1} D^{b_1} ... U^{a_l} D^{b_l}`; panics if the runs do not
    /// spell a Dyck path.
    pub fn from_runs(runs: &[(usize, usize)]) -> Self {
        let mut steps = Vec::new();
        for &(a, b) in runs {
            steps.extend(std::iter::repeat_n(Step::U, a));
            steps.extend(std::iter::repeat_n(Step::D, b));
        }
        DyckPath::new(steps).expect("runs do not form a Dyck path")
    }

    /// `U self D`.
    pub fn lift(&self) -> Self {
        let mut steps = Vec::with_capacity(self.steps.len() + 2);
        steps.push(Step::U);
        steps.extend_from_slice(&self.steps);
        steps.push(Step::D);
        DyckPath { steps }
    }

    /// The inverse of [`DyckPath::lift`] for irreducible paths.
    pub fn unlift(&self) -> Option<Self> {
        if !self.is_irreducible() {
            return None;
        }
        Some(DyckPath {
            steps: self.steps[1..self.steps.len() - 1].to_vec(),
        })
    }

    /// Concatenation `self ⊕ other`.
    pub fn concat(&self, other: &DyckPath) -> Self {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        DyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Heights of all `2s + 1` lattice points, starting with the origin.
    pub fn heights(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut h = 0usize;
        out.push(h);
        for &s in &self.steps {
            match s {
                Step::U => h += 1,
                Step::D => h -= 1,
            }
            out.push(h);
        }
        out
    }

    pub fn height(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    pub fn peaks(&self) -> Vec<Turn> {
        self.turns(Step::U, Step::D)
    }

    pub fn valleys(&self) -> Vec<Turn> {
        self.turns(Step::D, Step::U)
    }

    fn turns(&self, first: Step, second: Step) -> Vec<Turn> {
        let heights = self.heights();
        self.steps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == first && w[1] == second)
            .map(|(i, _)| Turn {
                position: i + 1,
                height: heights[i + 1],
            })
            .collect()
    }

    /// Positions (1-based, within the word) of every `U`-step.
    pub fn up_positions(&self) -> Vec<usize> {
        self.positions_of(Step::U)
    }

    /// Positions (1-based, within the word) of every `D`-step.
    pub fn down_positions(&self) -> Vec<usize> {
        self.positions_of(Step::D)
    }

    fn positions_of(&self, step: Step) -> Vec<usize> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == step)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Number of `U`-steps preceding each `D`-step, in order.
    pub(crate) fn ups_before_downs(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.semilength());
        let mut ups = 0;
        for &s in &self.steps {
            match s {
                Step::U => ups += 1,
                Step::D => out.push(ups),
            }
        }
        out
    }

    /// Number of `D`-steps preceding each `U`-step, in order.
    pub(crate) fn downs_before_ups(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.semilength());
        let mut downs = 0;
        for &s in &self.steps {
            match s {
                Step::D => downs += 1,
                Step::U => out.push(downs),
            }
        }
        out
    }

    /// Area vector `(a_1, ..., a_s)`: `a_i` is the height of the path just
    /// before `U_i`, equivalently the number of empty boxes in row `i` of the
    /// associated Shi tableau.
    pub fn area_vector(&self) -> Vec<usize> {
        self.downs_before_ups()
            .into_iter()
            .enumerate()
            .map(|(i, downs)| i - downs)
            .collect()
    }

    /// Total number of empty boxes of the associated tableau.
    pub fn area(&self) -> usize {
        self.area_vector().iter().sum()
    }

    /// Interior positions where the path touches the ground (excluding both
    /// endpoints).
    pub fn interior_returns(&self) -> Vec<usize> {
        let heights = self.heights();
        (1..self.steps.len()).filter(|&i| heights[i] == 0).collect()
    }

    /// Splits the path at every return to the ground into primitive
    /// (irreducible) factors.
    pub fn primitive_factors(&self) -> Vec<DyckPath> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut h = 0usize;
        for (i, &s) in self.steps.iter().enumerate() {
            match s {
                Step::U => h += 1,
                Step::D => h -= 1,
            }
            if h == 0 {
                out.push(DyckPath {
                    steps: self.steps[start..=i].to_vec(),
                });
                start = i + 1;
            }
        }
        out
    }

    /// Does not touch the ground except at its endpoints. The empty path is
    /// not irreducible.
    pub fn is_irreducible(&self) -> bool {
        let heights = self.heights();
        !self.is_empty() && heights[1..heights.len() - 1].iter().all(|&h| h >= 1)
    }

    /// Stays at height at least 2 everywhere except on its first and last step.
    pub fn is_strongly_irreducible(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let heights = self.heights();
        let n = self.steps.len();
        n <= 2 || heights[2..n - 1].iter().all(|&h| h >= 2)
    }

    /// Diagonal touch points of the bounce path, as semilength prefixes
    /// `y_1 < y_2 < ... < y_r = s`.
    pub fn return_points(&self) -> Vec<usize> {
        let s = self.semilength();
        let ups_before = self.ups_before_downs();
        let mut out = Vec::new();
        let mut y = 0;
        while y < s {
            // travel up until the next D-step of the path starts, i.e. to the
            // height of D_{y+1}
            y = ups_before[y];
            out.push(y);
        }
        out
    }

    /// The bounce path `b(p)`.
    pub fn bounce_path(&self) -> DyckPath {
        let mut steps = Vec::with_capacity(self.steps.len());
        let mut prev = 0;
        for y in self.return_points() {
            let run = y - prev;
            steps.extend(std::iter::repeat_n(Step::U, run));
            steps.extend(std::iter::repeat_n(Step::D, run));
            prev = y;
        }
        DyckPath { steps }
    }

    pub fn run_form(&self) -> RunForm {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        let mut prev: Option<Step> = None;
        for &s in &self.steps {
            match (prev, s) {
                (Some(Step::D), Step::U) | (None, Step::U) => runs.push((1, 0)),
                (_, Step::U) => runs.last_mut().expect("open run").0 += 1,
                (_, Step::D) => runs.last_mut().expect("open run").1 += 1,
            }
            prev = Some(s);
        }
        RunForm { runs }
    }

    /// Reverse the word and swap `U` with `D`; an automorphism of the pattern
    /// order exchanging `δ_{i,i}` with `δ_{s+1-i,s+1-i}`.
    pub fn reverse_complement(&self) -> DyckPath {
        DyckPath {
            steps: self.steps.iter().rev().map(|s| s.flip()).collect(),
        }
    }
}

pub(crate) fn is_dyck_word(steps: &[Step]) -> bool {
    validate(steps).is_ok()
}

fn validate(steps: &[Step]) -> Result<(), ParseError> {
    let mut height = 0usize;
    for (idx, &s) in steps.iter().enumerate() {
        match s {
            Step::U => height += 1,
            Step::D => {
                height = height
                    .checked_sub(1)
                    .ok_or(ParseError::PrefixViolation { index: idx + 1 })?;
            }
        }
    }
    if height != 0 {
        return Err(ParseError::NotBalanced {
            index: steps.len(),
            height,
        });
    }
    Ok(())
}

/// Parses a `U`/`D` word (aliases `1`/`0` and `(`/`)` are accepted).
pub fn parse_path(text: &str) -> Result<DyckPath, ParseError> {
    DyckPath::parse(text)
}

impl FromStr for DyckPath {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DyckPath::parse(s)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// A path written as alternating ascent/descent lengths
/// `U^{a_1} D^{b_1} ... U^{a_l} D^{b_l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RunForm {
    runs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunFormError {
    #[error("run {index} has a zero length")]
    EmptyRun { index: usize },
    #[error("runs do not form a Dyck path: {0}")]
    NotDyck(#[from] ParseError),
}

impl RunForm {
    pub fn new(runs: Vec<(usize, usize)>) -> Result<Self, RunFormError> {
        if let Some(index) = runs.iter().position(|&(a, b)| a == 0 || b == 0) {
            return Err(RunFormError::EmptyRun { index: index + 1 });
        }
        let form = RunForm { runs };
        DyckPath::new(form.expand())?;
        Ok(form)
    }

    fn expand(&self) -> Vec<Step> {
        let mut steps = Vec::new();
        for &(a, b) in &self.runs {
            steps.extend(std::iter::repeat_n(Step::U, a));
            steps.extend(std::iter::repeat_n(Step::D, b));
        }
        steps
    }

    pub fn to_path(&self) -> DyckPath {
        DyckPath::from_steps_unchecked(self.expand())
    }

    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    /// Number of ascents, `l`.
    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn ascents(&self) -> impl Iterator<Item = usize> + '_ {
        self.runs.iter().map(|r| r.0)
    }

    pub fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        self.runs.iter().map(|r| r.1)
    }
}

impl fmt::Display for RunForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .runs
            .iter()
            .flat_map(|&(a, b)| [a.to_string(), b.to_string()])
            .collect();
        write!(f, "{}", parts.join(","))
    }
}
