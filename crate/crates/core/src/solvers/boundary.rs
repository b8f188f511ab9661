use serde::{Deserialize, Serialize};

use crate::error::{Result, WenoError};

/// Boundary treatment of one side of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Periodic,
    /// Ghost cells copy the nearest interior cell.
    ZeroGradient,
    /// Mirror image with the normal momentum negated.
    Reflecting,
    /// Ghost cells frozen at their initial values.
    Dirichlet,
}

/// Boundary conditions on the four sides; `bottom`/`top` are ignored in 1D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundaries {
    pub left: BoundaryCondition,
    pub right: BoundaryCondition,
    pub bottom: BoundaryCondition,
    pub top: BoundaryCondition,
}

impl Boundaries {
    pub const fn uniform(bc: BoundaryCondition) -> Self {
        Self {
            left: bc,
            right: bc,
            bottom: bc,
            top: bc,
        }
    }

    pub fn validate(&self) -> Result<()> {
        use BoundaryCondition::Periodic;
        if (self.left == Periodic) != (self.right == Periodic)
            || (self.bottom == Periodic) != (self.top == Periodic)
        {
            return Err(WenoError::InvalidParameter(
                "periodic boundaries must be paired on opposite sides".into(),
            ));
        }
        Ok(())
    }
}

/// Fills the ghost cells of one extended line in place.
///
/// `ext` holds `n_ghost` ghosts, the interior, then `n_ghost` ghosts.
/// `odd` marks the normal momentum component, which flips sign under
/// reflection. `frozen` supplies Dirichlet ghosts as `(left, right)`, each
/// ordered by increasing position.
pub(crate) fn fill_ghosts(
    ext: &mut [f64],
    n_ghost: usize,
    left: BoundaryCondition,
    right: BoundaryCondition,
    odd: bool,
    frozen: Option<(&[f64], &[f64])>,
) {
    let n = ext.len() - 2 * n_ghost;
    let sign = if odd { -1.0 } else { 1.0 };
    for k in 0..n_ghost {
        // left ghost at index n_ghost - 1 - k, k-th cell away from the boundary
        let dst = n_ghost - 1 - k;
        ext[dst] = match left {
            BoundaryCondition::Periodic => ext[n_ghost + n - 1 - k],
            BoundaryCondition::ZeroGradient => ext[n_ghost],
            BoundaryCondition::Reflecting => sign * ext[n_ghost + k],
            BoundaryCondition::Dirichlet => frozen.map_or(ext[n_ghost], |(l, _)| l[dst]),
        };
        let dst = n_ghost + n + k;
        ext[dst] = match right {
            BoundaryCondition::Periodic => ext[n_ghost + k],
            BoundaryCondition::ZeroGradient => ext[n_ghost + n - 1],
            BoundaryCondition::Reflecting => sign * ext[n_ghost + n - 1 - k],
            BoundaryCondition::Dirichlet => frozen.map_or(ext[n_ghost + n - 1], |(_, r)| r[k]),
        };
    }
}
