//! Piecewise-constant and limited piecewise-linear (MUSCL) reconstruction of
//! the primitive variables.

use crate::error::Result;
use crate::euler::{GasModel, PrimitiveState};

use super::field::Field;
use super::{Limiter, Order};

#[inline]
fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

#[inline]
fn van_leer(a: f64, b: f64) -> f64 {
    let ab = a * b;
    if ab <= 0.0 {
        0.0
    } else {
        2.0 * ab / (a + b)
    }
}

impl Limiter {
    /// Limited slope from the backward and forward differences.
    #[inline]
    pub fn slope(self, backward: f64, forward: f64) -> f64 {
        match self {
            Limiter::Minmod => minmod(backward, forward),
            Limiter::VanLeer => van_leer(backward, forward),
        }
    }

    #[inline]
    fn slope_state(self, back: PrimitiveState, center: PrimitiveState, fwd: PrimitiveState) -> PrimitiveState {
        PrimitiveState {
            rho: self.slope(center.rho - back.rho, fwd.rho - center.rho),
            u: self.slope(center.u - back.u, fwd.u - center.u),
            v: self.slope(center.v - back.v, fwd.v - center.v),
            p: self.slope(center.p - back.p, fwd.p - center.p),
        }
    }
}

#[inline]
fn extrapolate(c: PrimitiveState, sx: PrimitiveState, fx: f64, sy: PrimitiveState, fy: f64) -> PrimitiveState {
    PrimitiveState {
        rho: c.rho + fx * sx.rho + fy * sy.rho,
        u: c.u + fx * sx.u + fy * sy.u,
        v: c.v + fx * sx.v + fy * sy.v,
        p: c.p + fx * sx.p + fy * sy.p,
    }
}

/// Face midpoints and corners, where the flux sweep samples each cell.
const SAMPLE_POINTS: [(f64, f64); 8] = [
    (0.5, 0.0),
    (-0.5, 0.0),
    (0.0, 0.5),
    (0.0, -0.5),
    (0.5, 0.5),
    (0.5, -0.5),
    (-0.5, 0.5),
    (-0.5, -0.5),
];

const ZERO: PrimitiveState = PrimitiveState::new(0.0, 0.0, 0.0, 0.0);

/// Cell centers and limited per-cell slopes (in units of one cell width) for
/// every cell whose face or corner values the flux sweep needs, i.e. the
/// interior plus one ghost layer.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    nx: usize,
    ny: usize,
    width: usize,
    centers: Vec<PrimitiveState>,
    slope_x: Vec<PrimitiveState>,
    slope_y: Vec<PrimitiveState>,
    /// Cells that reverted to piecewise-constant because a limited
    /// extrapolation was non-physical.
    pub fallbacks: usize,
}

impl Reconstruction {
    /// Ghost cells must already be filled.
    pub fn new(field: &Field, order: Order, limiter: Limiter, gas: GasModel) -> Result<Self> {
        let grid = field.grid;
        let (nx, ny) = (grid.nx, grid.ny);
        // Centers over the full padded range, slopes over interior + 1 layer.
        let g = grid.ghost as isize;
        let width = grid.padded_nx();
        let height = grid.padded_ny();
        let mut centers = Vec::with_capacity(width * height);
        for j in -g..ny as isize + g {
            for i in -g..nx as isize + g {
                centers.push(field.primitive(i, j, gas)?);
            }
        }
        let mut rec = Self {
            nx,
            ny,
            width,
            centers,
            slope_x: vec![ZERO; width * height],
            slope_y: vec![ZERO; width * height],
            fallbacks: 0,
        };
        if order == Order::Second {
            rec.compute_slopes(limiter);
        }
        Ok(rec)
    }

    #[inline]
    fn idx(&self, i: isize, j: isize) -> usize {
        (j + 2) as usize * self.width + (i + 2) as usize
    }

    fn compute_slopes(&mut self, limiter: Limiter) {
        for j in -1..=self.ny as isize {
            for i in -1..=self.nx as isize {
                let k = self.idx(i, j);
                let c = self.centers[k];
                let sx = limiter.slope_state(self.centers[self.idx(i - 1, j)], c, self.centers[self.idx(i + 1, j)]);
                let sy = limiter.slope_state(self.centers[self.idx(i, j - 1)], c, self.centers[self.idx(i, j + 1)]);
                let physical = SAMPLE_POINTS
                    .iter()
                    .all(|&(fx, fy)| extrapolate(c, sx, fx, sy, fy).is_valid());
                if physical {
                    self.slope_x[k] = sx;
                    self.slope_y[k] = sy;
                } else {
                    self.fallbacks += 1;
                }
            }
        }
        if self.fallbacks > 0 {
            log::debug!("{} cells fell back to first order", self.fallbacks);
        }
    }

    #[inline]
    pub fn center(&self, i: isize, j: isize) -> PrimitiveState {
        self.centers[self.idx(i, j)]
    }

    /// Value at the point `(fx, fy)` in cell-local coordinates, where the
    /// cell spans `[-1/2, 1/2]^2`.
    #[inline]
    pub fn at(&self, i: isize, j: isize, fx: f64, fy: f64) -> PrimitiveState {
        let k = self.idx(i, j);
        extrapolate(self.centers[k], self.slope_x[k], fx, self.slope_y[k], fy)
    }

    #[inline]
    pub fn east(&self, i: isize, j: isize) -> PrimitiveState {
        self.at(i, j, 0.5, 0.0)
    }

    #[inline]
    pub fn west(&self, i: isize, j: isize) -> PrimitiveState {
        self.at(i, j, -0.5, 0.0)
    }

    #[inline]
    pub fn north(&self, i: isize, j: isize) -> PrimitiveState {
        self.at(i, j, 0.0, 0.5)
    }

    #[inline]
    pub fn south(&self, i: isize, j: isize) -> PrimitiveState {
        self.at(i, j, 0.0, -0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::boundary::{apply_boundary_conditions, BoundarySpec};
    use crate::solver::field::Grid;
    use proptest::prelude::*;

    fn gas() -> GasModel {
        GasModel::default()
    }

    #[test]
    fn limiters() {
        assert_eq!(minmod(1.0, 2.0), 1.0);
        assert_eq!(minmod(-3.0, -2.0), -2.0);
        assert_eq!(minmod(1.0, -2.0), 0.0);
        assert_eq!(van_leer(1.0, 1.0), 1.0);
        assert_eq!(van_leer(1.0, -1.0), 0.0);
        assert!((van_leer(1.0, 3.0) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn uniform_field_reconstructs_to_itself() {
        let s = PrimitiveState::new(1.2, 0.3, -0.4, 2.0);
        let grid = Grid::new(6, 6, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let mut f = Field::uniform(grid, s, gas());
        apply_boundary_conditions(&mut f, &BoundarySpec::transmissive(), gas());
        for order in [Order::First, Order::Second] {
            let r = Reconstruction::new(&f, order, Limiter::Minmod, gas()).unwrap();
            for j in -1..=6 {
                for i in -1..=6 {
                    for v in [
                        r.east(i, j),
                        r.west(i, j),
                        r.north(i, j),
                        r.at(i, j, 0.5, 0.5),
                        r.at(i, j, -0.5, -0.5),
                    ] {
                        assert!((v.rho - s.rho).abs() < 1e-14 && (v.u - s.u).abs() < 1e-14);
                        assert!((v.v - s.v).abs() < 1e-14 && (v.p - s.p).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn linear_ramp_is_exact() {
        let grid = Grid::new(10, 6, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let mut f = Field::from_fn(grid, gas(), |x, _| PrimitiveState::new(1.0 + x, 0.0, 0.0, 1.0));
        // Linear extrapolation into the ghosts keeps the ramp linear there too.
        for j in 0..6 {
            for k in 1..=2isize {
                let (x, _) = grid.center(-k, j);
                f.set(-k, j, PrimitiveState::new(1.0 + x, 0.0, 0.0, 1.0).to_conserved(gas()));
                let (x, _) = grid.center(9 + k, j);
                f.set(
                    9 + k,
                    j,
                    PrimitiveState::new(1.0 + x, 0.0, 0.0, 1.0).to_conserved(gas()),
                );
            }
        }
        for i in -2..12 {
            for k in 1..=2isize {
                f.set(i, -k, f.get(i, 0));
                f.set(i, 5 + k, f.get(i, 5));
            }
        }
        for limiter in [Limiter::Minmod, Limiter::VanLeer] {
            let r = Reconstruction::new(&f, Order::Second, limiter, gas()).unwrap();
            for i in 0..10 {
                let x_face = (i + 1) as f64 * 0.1;
                assert!((r.east(i, 2).rho - (1.0 + x_face)).abs() < 1e-13);
                assert!((r.west(i, 2).rho - (1.0 + x_face - 0.1)).abs() < 1e-13);
            }
            assert_eq!(r.fallbacks, 0);
        }
    }

    #[test]
    fn non_physical_extrapolation_falls_back() {
        let grid = Grid::new(6, 6, (0.0, 1.0), (0.0, 1.0)).unwrap();
        // Van Leer slopes reach twice the smaller one-sided difference, so a
        // cell between a high-pressure and a near-vacuum neighbour in both
        // directions extrapolates to negative pressure at one corner.
        let mut f = Field::uniform(grid, PrimitiveState::new(1.0, 0.0, 0.0, 1.0), gas());
        for (i, j, p) in [(1, 2, 100.0), (2, 1, 100.0), (3, 2, 0.01), (2, 3, 0.01)] {
            f.set(i, j, PrimitiveState::new(1.0, 0.0, 0.0, p).to_conserved(gas()));
        }
        apply_boundary_conditions(&mut f, &BoundarySpec::transmissive(), gas());
        let r = Reconstruction::new(&f, Order::Second, Limiter::VanLeer, gas()).unwrap();
        assert!(r.fallbacks > 0);
        for j in -1..=6 {
            for i in -1..=6 {
                for (fx, fy) in [
                    (0.5, 0.5),
                    (-0.5, 0.5),
                    (0.5, -0.5),
                    (-0.5, -0.5),
                    (0.5, 0.0),
                    (0.0, -0.5),
                ] {
                    assert!(r.at(i, j, fx, fy).is_valid());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn minmod_faces_stay_within_neighbours(a in 0.1f64..10.0, b in 0.1f64..10.0) {
            let grid = Grid::new(8, 4, (0.0, 1.0), (0.0, 1.0)).unwrap();
            let mut f = Field::from_fn(grid, gas(), |x, _| PrimitiveState::new(if x < 0.5 { a } else { b }, 0.0, 0.0, 1.0));
            apply_boundary_conditions(&mut f, &BoundarySpec::transmissive(), gas());
            let r = Reconstruction::new(&f, Order::Second, Limiter::Minmod, gas()).unwrap();
            let (lo, hi) = (a.min(b), a.max(b));
            for i in 0..8 {
                for v in [r.east(i, 1), r.west(i, 1), r.at(i, 1, 0.5, 0.5)] {
                    prop_assert!(v.rho >= lo - 1e-14 && v.rho <= hi + 1e-14);
                }
            }
        }
    }
}
