pub mod cat;
pub mod characteristic;
pub mod closed_form;
pub mod coords;
pub mod form;
pub mod grid;
pub mod quadrature;

pub use cat::{cat_criteria, CatReport};
pub use characteristic::{characteristic_function, ConjugatePoint};
pub use closed_form::{
    closed_form_scale, origin_value, wigner_closed_form, wigner_degenerate_printed, wigner_from_squeezed,
    WignerParts, WignerValue,
};
pub use coords::{
    phase_point_from_real, phase_point_from_squeezed, real_coords, squeezed_coords, GammaVar, Part,
    PhasePoint, SqueezedAxis, SqueezedCoords,
};
pub use form::{GaussianQuadratic, Marginal};
pub use grid::{marginal_wigner, wigner_grid, AxisRange, GridMode, GridSpec, PhaseGrid, FIG4_GAIN};
pub use quadrature::{vacuum_envelope_normalization, wigner_normalization, wigner_normalization_with_order};
