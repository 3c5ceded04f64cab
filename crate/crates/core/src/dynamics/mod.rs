//! State propagation: closed-form two-cell solution, spectral propagation
//! for any time-independent Hermitian generator, and RK4 integration of the
//! dephasing master equation.

mod closed_form;
mod lindblad;
mod spectral;

pub use closed_form::{
    energy_closed_form, ergotropy_closed_form_empty, evolve_closed_form, power_closed_form_empty,
    two_cell_spectrum, GammaFactors, ProductStateAngles, StateCoefficients, TwoCellSpectrum,
};
pub use lindblad::{
    lindblad_integrate, lindblad_sampled, rk4_steps_for, DephasingGenerator, LindbladTrajectory, STABILITY_LIMIT,
};
pub use spectral::{spectral_propagate, SpectralPropagator};
