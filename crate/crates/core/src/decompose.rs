//! Irreducible and strongly irreducible decompositions.

use thiserror::Error;

use crate::path::DyckPath;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("path {0} is not irreducible")]
    NotIrreducible(DyckPath),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentClass {
    Irreducible,
    StronglyIrreducible,
    /// A run of peaks at height 1 (irreducible level, possibly empty) or at
    /// height 2 (strongly irreducible level, never empty).
    Connecting {
        peaks: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    /// At the strongly irreducible level this is the inner piece `π_i`; the
    /// component proper is `U π_i D`, see [`Component::lifted`].
    pub path: DyckPath,
    pub class: ComponentClass,
}

impl Component {
    pub fn lifted(&self) -> DyckPath {
        self.path.lift()
    }

    pub fn is_connecting(&self) -> bool {
        matches!(self.class, ComponentClass::Connecting { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionKind {
    /// `π = π_1 ⊕ π_2 ⊕ ... ⊕ π_k`.
    Irreducible,
    /// `π = U π_1 ⊕' π_2 ⊕' ... ⊕' π_k D`.
    StronglyIrreducible,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub parts: Vec<Component>,
}

impl Decomposition {
    /// Reassembles the decomposed path.
    pub fn recompose(&self) -> DyckPath {
        let inner = self
            .parts
            .iter()
            .fold(DyckPath::empty(), |acc, c| acc.concat(&c.path));
        match self.kind {
            DecompositionKind::Irreducible => inner,
            DecompositionKind::StronglyIrreducible => inner.lift(),
        }
    }

    /// Number of connecting components, empty ones included (`k'`).
    pub fn connecting_count(&self) -> usize {
        self.parts.iter().filter(|c| c.is_connecting()).count()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Groups primitive factors into maximal runs of `UD` (connecting) and the
/// remaining factors (irreducible).
fn group_factors(
    inner: &DyckPath,
    irreducible: ComponentClass,
    empty_connectors: bool,
) -> Vec<Component> {
    let mut parts: Vec<Component> = Vec::new();
    let peak = DyckPath::zigzag(1);
    for factor in inner.primitive_factors() {
        if factor == peak {
            match parts.last_mut() {
                Some(Component {
                    path,
                    class: ComponentClass::Connecting { peaks },
                }) => {
                    *peaks += 1;
                    *path = path.concat(&peak);
                }
                _ => parts.push(Component {
                    path: peak.clone(),
                    class: ComponentClass::Connecting { peaks: 1 },
                }),
            }
        } else {
            if empty_connectors && parts.last().is_some_and(|c| c.class == irreducible) {
                parts.push(Component {
                    path: DyckPath::empty(),
                    class: ComponentClass::Connecting { peaks: 0 },
                });
            }
            parts.push(Component {
                path: factor,
                class: irreducible,
            });
        }
    }
    parts
}

/// Splits a path at its returns to the diagonal. Consecutive irreducible
/// components are separated by an explicit empty connector.
pub fn irreducible_decomposition(path: &DyckPath) -> Decomposition {
    Decomposition {
        kind: DecompositionKind::Irreducible,
        parts: group_factors(path, ComponentClass::Irreducible, true),
    }
}

/// Splits an irreducible path `U π D` at the returns of `π` to the line one
/// above the diagonal.
pub fn strongly_irreducible_decomposition(
    path: &DyckPath,
) -> Result<Decomposition, DecompositionError> {
    let inner = path
        .unlift()
        .ok_or_else(|| DecompositionError::NotIrreducible(path.clone()))?;
    Ok(Decomposition {
        kind: DecompositionKind::StronglyIrreducible,
        parts: group_factors(&inner, ComponentClass::StronglyIrreducible, false),
    })
}
