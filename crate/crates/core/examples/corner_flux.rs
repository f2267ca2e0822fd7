//! Evaluate the face and corner fluxes for a single configuration and
//! assemble the interface flux by Simpson's rule.

use gmcusp::corner::{corner_flux, corner_wave_speeds, CornerStates};
use gmcusp::midpoint::{midpoint_flux, wave_speeds_1d};
use gmcusp::solver::assemble_interface_flux;
use gmcusp::{Axis, GasModel, PrimitiveState};

fn main() {
    let gas = GasModel::default();
    // Quadrant states of the first Riemann problem around the origin.
    let states = CornerStates {
        ld: PrimitiveState::new(0.1379, 1.206, 1.206, 0.029),
        rd: PrimitiveState::new(0.5323, 0.0, 1.206, 0.3),
        lu: PrimitiveState::new(0.5323, 1.206, 0.0, 0.3),
        ru: PrimitiveState::new(1.5, 0.0, 0.0, 1.5),
    };

    let s = corner_wave_speeds(&states, gas);
    println!("corner wave speeds: {s:?}");
    let (f_corner, g_corner) = corner_flux(&states, gas);
    println!("corner x-flux  {:?}", f_corner.0);
    println!("corner y-flux  {:?}", g_corner.0);

    // Lower half of the face x = 0: LD | RD.
    let speeds = wave_speeds_1d(states.ld, states.rd, gas);
    println!("midpoint speeds (LD|RD): {speeds:?}");
    let f_mid = midpoint_flux(states.ld, states.rd, gas, Axis::X);
    println!("midpoint x-flux {:?}", f_mid.0);

    // Uniform corners reduce to the midpoint flux exactly.
    let uniform = CornerStates::uniform(states.ru);
    let (fu, _) = corner_flux(&uniform, gas);
    let mid = midpoint_flux(states.ru, states.ru, gas, Axis::X);
    let assembled = assemble_interface_flux(fu, mid, fu);
    println!("uniform data: assembled == midpoint bitwise: {}", assembled == mid);

    let assembled = assemble_interface_flux(f_corner, f_mid, f_corner);
    println!("assembled face flux with identical corners {:?}", assembled.0);
}
