//! Lower-bound certificates, closed-form bounds, hyperbolicity and fits.

pub mod bounds;
pub mod fit;
pub mod hyperbolicity;
pub mod wedge;

pub use bounds::{bollobas_bound, construction_exponent, lemma_upper_bound, theorem1_bound};
pub use fit::{fit_scaling, ScalingFit};
pub use hyperbolicity::{delta_hyperbolicity, delta_hyperbolicity_capped, DELTA_CAP};
pub use wedge::{geodesic_spanning_tree, wedge_cut, CutCertificate, GeodesicTree};
