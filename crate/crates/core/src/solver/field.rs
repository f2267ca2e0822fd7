use crate::error::{Error, Result};
use crate::euler::{ConservedState, GasModel, PrimitiveState};

/// Ghost-layer width; the limited linear reconstruction needs two.
pub const GHOST: usize = 2;

/// Uniform Cartesian grid of `nx * ny` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub x0: f64,
    pub y0: f64,
    pub dx: f64,
    pub dy: f64,
    pub ghost: usize,
}

impl Grid {
    /// Grid covering `[x_min, x_max] x [y_min, y_max]`.
    pub fn new(nx: usize, ny: usize, x_range: (f64, f64), y_range: (f64, f64)) -> Result<Self> {
        if nx < 4 || ny < 4 {
            return Err(Error::config(format!("grid needs at least 4x4 cells, got {nx}x{ny}")));
        }
        let dx = (x_range.1 - x_range.0) / nx as f64;
        let dy = (y_range.1 - y_range.0) / ny as f64;
        if !(dx > 0.0 && dy > 0.0 && dx.is_finite() && dy.is_finite()) {
            return Err(Error::config(format!("degenerate domain {x_range:?} x {y_range:?}")));
        }
        Ok(Self {
            nx,
            ny,
            x0: x_range.0,
            y0: y_range.0,
            dx,
            dy,
            ghost: GHOST,
        })
    }

    pub fn x_max(&self) -> f64 {
        self.x0 + self.nx as f64 * self.dx
    }

    pub fn y_max(&self) -> f64 {
        self.y0 + self.ny as f64 * self.dy
    }

    /// Cell-center coordinates; ghost cells use negative or overflowing indices.
    #[inline]
    pub fn center(&self, i: isize, j: isize) -> (f64, f64) {
        (
            self.x0 + (i as f64 + 0.5) * self.dx,
            self.y0 + (j as f64 + 0.5) * self.dy,
        )
    }

    #[inline]
    pub(crate) fn padded_nx(&self) -> usize {
        self.nx + 2 * self.ghost
    }

    #[inline]
    pub(crate) fn padded_ny(&self) -> usize {
        self.ny + 2 * self.ghost
    }

    #[inline]
    pub(crate) fn index(&self, i: isize, j: isize) -> usize {
        let g = self.ghost as isize;
        debug_assert!(i >= -g && i < self.nx as isize + g, "i = {i} out of range");
        debug_assert!(j >= -g && j < self.ny as isize + g, "j = {j} out of range");
        (j + g) as usize * self.padded_nx() + (i + g) as usize
    }

    pub fn same_shape(&self, other: &Grid) -> bool {
        self.nx == other.nx && self.ny == other.ny && self.dx == other.dx && self.dy == other.dy
    }
}

/// Cell averages of the conserved variables, including ghost layers.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub grid: Grid,
    pub time: f64,
    data: Vec<ConservedState>,
}

impl Field {
    pub fn uniform(grid: Grid, state: PrimitiveState, gas: GasModel) -> Self {
        let c = state.to_conserved(gas);
        Self {
            grid,
            time: 0.0,
            data: vec![c; grid.padded_nx() * grid.padded_ny()],
        }
    }

    /// Sample `init(x, y)` at every interior cell center.
    pub fn from_fn(grid: Grid, gas: GasModel, mut init: impl FnMut(f64, f64) -> PrimitiveState) -> Self {
        let mut field = Self {
            grid,
            time: 0.0,
            data: vec![ConservedState::default(); grid.padded_nx() * grid.padded_ny()],
        };
        for j in 0..grid.ny as isize {
            for i in 0..grid.nx as isize {
                let (x, y) = grid.center(i, j);
                field.set(i, j, init(x, y).to_conserved(gas));
            }
        }
        field
    }

    #[inline]
    pub fn get(&self, i: isize, j: isize) -> ConservedState {
        self.data[self.grid.index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: isize, j: isize, value: ConservedState) {
        let k = self.grid.index(i, j);
        self.data[k] = value;
    }

    pub fn primitive(&self, i: isize, j: isize, gas: GasModel) -> Result<PrimitiveState> {
        self.get(i, j).to_primitive(gas).map_err(|e| e.at_cell(i, j))
    }

    /// Interior cell indices in row-major order (x fastest).
    pub fn interior(&self) -> impl Iterator<Item = (isize, isize)> {
        let (nx, ny) = (self.grid.nx as isize, self.grid.ny as isize);
        (0..ny).flat_map(move |j| (0..nx).map(move |i| (i, j)))
    }

    /// Domain integrals of mass, momenta and energy.
    pub fn totals(&self) -> [f64; 4] {
        let area = self.grid.dx * self.grid.dy;
        let mut sum = [0.0; 4];
        for (i, j) in self.interior() {
            let c = self.get(i, j).to_array();
            for k in 0..4 {
                sum[k] += c[k];
            }
        }
        sum.map(|s| s * area)
    }

    /// Every interior cell must hold a physical state.
    pub fn check_positivity(&self, gas: GasModel) -> Result<()> {
        for (i, j) in self.interior() {
            self.primitive(i, j, gas)?;
        }
        Ok(())
    }

    /// Interior primitive states, row-major. Fails on the first invalid cell.
    pub fn primitives(&self, gas: GasModel) -> Result<Vec<PrimitiveState>> {
        self.interior().map(|(i, j)| self.primitive(i, j, gas)).collect()
    }

    pub fn has_non_finite(&self) -> bool {
        self.interior()
            .any(|(i, j)| !self.get(i, j).to_array().iter().all(|c| c.is_finite()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(Grid::new(3, 10, (0.0, 1.0), (0.0, 1.0)).is_err());
        assert!(Grid::new(10, 10, (1.0, 1.0), (0.0, 1.0)).is_err());
        let g = Grid::new(10, 5, (0.0, 1.0), (-1.0, 1.0)).unwrap();
        assert_eq!(g.dx, 0.1);
        assert_eq!(g.dy, 0.4);
        assert_eq!(g.ghost, 2);
        let (x, y) = g.center(0, 0);
        assert!((x - 0.05).abs() < 1e-15 && (y + 0.8).abs() < 1e-15);
    }

    #[test]
    fn totals_of_uniform_field() {
        let g = Grid::new(8, 4, (0.0, 2.0), (0.0, 1.0)).unwrap();
        let f = Field::uniform(g, PrimitiveState::new(1.0, 2.0, 0.0, 1.0), GasModel::default());
        let t = f.totals();
        assert!((t[0] - 2.0).abs() < 1e-14);
        assert!((t[1] - 4.0).abs() < 1e-14);
        assert!((t[3] - 9.0).abs() < 1e-14);
    }
}
