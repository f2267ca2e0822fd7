//! Ghost-cell boundary conditions.

use crate::error::{Error, Result};
use crate::euler::{ConservedState, GasModel, PrimitiveState};

use super::field::Field;

/// Moving oblique shock along an edge: cells behind the shock (smaller x)
/// take the post-shock state, the rest the pre-shock state.
///
/// The shock passes through `(x_foot, 0)` at `t = 0`, is inclined at `angle`
/// to the x axis and moves with normal speed `speed`, so its intersection with
/// the line `y = y_edge` lies at `x_foot + y_edge / tan(angle) + speed t / sin(angle)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MovingShockEdge {
    pub x_foot: f64,
    pub angle: f64,
    pub speed: f64,
    pub y_edge: f64,
    pub post: PrimitiveState,
    pub pre: PrimitiveState,
}

impl MovingShockEdge {
    pub fn shock_x(&self, t: f64) -> f64 {
        self.x_foot + self.y_edge / self.angle.tan() + self.speed * t / self.angle.sin()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EdgeCondition {
    Periodic,
    /// Zero-gradient extrapolation.
    Transmissive,
    /// Mirror image with the wall-normal velocity reversed.
    ReflectiveWall,
    SupersonicInflow(PrimitiveState),
    FixedState(PrimitiveState),
    PostShockTimeDependent(MovingShockEdge),
    /// Different conditions on either side of a point along the edge; the
    /// tangential coordinate decides (x on bottom/top edges, y on left/right).
    Piecewise {
        split: f64,
        below: Box<EdgeCondition>,
        above: Box<EdgeCondition>,
    },
}

impl EdgeCondition {
    fn contains_periodic(&self) -> bool {
        match self {
            EdgeCondition::Periodic => true,
            EdgeCondition::Piecewise { below, above, .. } => below.contains_periodic() || above.contains_periodic(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec {
    pub left: EdgeCondition,
    pub right: EdgeCondition,
    pub bottom: EdgeCondition,
    pub top: EdgeCondition,
}

impl BoundarySpec {
    pub fn all(condition: EdgeCondition) -> Self {
        Self {
            left: condition.clone(),
            right: condition.clone(),
            bottom: condition.clone(),
            top: condition,
        }
    }

    pub fn periodic() -> Self {
        Self::all(EdgeCondition::Periodic)
    }

    pub fn transmissive() -> Self {
        Self::all(EdgeCondition::Transmissive)
    }

    pub fn validate(&self) -> Result<()> {
        let nested = |c: &EdgeCondition| !matches!(c, EdgeCondition::Periodic) && c.contains_periodic();
        if [&self.left, &self.right, &self.bottom, &self.top]
            .into_iter()
            .any(nested)
        {
            return Err(Error::config("periodic conditions cannot be piecewise"));
        }
        let pl = self.left == EdgeCondition::Periodic;
        let pr = self.right == EdgeCondition::Periodic;
        let pb = self.bottom == EdgeCondition::Periodic;
        let pt = self.top == EdgeCondition::Periodic;
        if pl != pr || pb != pt {
            return Err(Error::config("periodic edges must come in opposite pairs"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Edge {
    Left,
    Right,
    Bottom,
    Top,
}

/// Fill every ghost cell, corners included: left/right ghosts are set for the
/// interior rows first, then bottom/top ghosts across the full padded width.
pub fn apply_boundary_conditions(field: &mut Field, bcs: &BoundarySpec, gas: GasModel) {
    let grid = field.grid;
    let g = grid.ghost as isize;
    let (nx, ny) = (grid.nx as isize, grid.ny as isize);

    for j in 0..ny {
        let y = grid.center(0, j).1;
        for k in 1..=g {
            let v = ghost_value(field, &bcs.left, Edge::Left, j, k, y, gas);
            field.set(-k, j, v);
            let v = ghost_value(field, &bcs.right, Edge::Right, j, k, y, gas);
            field.set(nx - 1 + k, j, v);
        }
    }
    for i in -g..nx + g {
        let x = grid.center(i, 0).0;
        for k in 1..=g {
            let v = ghost_value(field, &bcs.bottom, Edge::Bottom, i, k, x, gas);
            field.set(i, -k, v);
            let v = ghost_value(field, &bcs.top, Edge::Top, i, k, x, gas);
            field.set(i, ny - 1 + k, v);
        }
    }
}

/// Value of the `k`-th ghost layer (1 = adjacent to the boundary) at position
/// `line` along the edge; `along` is the tangential coordinate.
fn ghost_value(
    field: &Field,
    cond: &EdgeCondition,
    edge: Edge,
    line: isize,
    k: isize,
    along: f64,
    gas: GasModel,
) -> ConservedState {
    let grid = field.grid;
    let (nx, ny) = (grid.nx as isize, grid.ny as isize);
    // Interior cell at `offset` layers from the edge (0 = adjacent).
    let interior = |offset: isize| -> ConservedState {
        match edge {
            Edge::Left => field.get(offset, line),
            Edge::Right => field.get(nx - 1 - offset, line),
            Edge::Bottom => field.get(line, offset),
            Edge::Top => field.get(line, ny - 1 - offset),
        }
    };
    match cond {
        EdgeCondition::Periodic => match edge {
            Edge::Left => field.get(nx - k, line),
            Edge::Right => field.get(k - 1, line),
            Edge::Bottom => field.get(line, ny - k),
            Edge::Top => field.get(line, k - 1),
        },
        EdgeCondition::Transmissive => interior(0),
        EdgeCondition::ReflectiveWall => {
            let mut c = interior(k - 1);
            match edge {
                Edge::Left | Edge::Right => c.mx = -c.mx,
                Edge::Bottom | Edge::Top => c.my = -c.my,
            }
            c
        }
        EdgeCondition::SupersonicInflow(s) | EdgeCondition::FixedState(s) => s.to_conserved(gas),
        EdgeCondition::PostShockTimeDependent(shock) => {
            let x = match edge {
                Edge::Bottom | Edge::Top => along,
                Edge::Left => grid.x0,
                Edge::Right => grid.x_max(),
            };
            if x < shock.shock_x(field.time) {
                shock.post.to_conserved(gas)
            } else {
                shock.pre.to_conserved(gas)
            }
        }
        EdgeCondition::Piecewise { split, below, above } => {
            let c = if along < *split { below } else { above };
            ghost_value(field, c, edge, line, k, along, gas)
        }
    }
}
