//! p-adic valuations, Newton polygons, the Ax-Katz system behind the
//! Riemann-Roch counts, and valuation growth reports.

mod axkatz;
mod growth;
mod newton;
mod valuation;

pub use axkatz::{axkatz_system, axkatz_verify, AxKatzReport, AxKatzSystem};
pub use growth::{growth_report, GrowthReport, GrowthRow};
pub use newton::{newton_polygon, NewtonPolygon};
pub use valuation::{ord, ord_p_int, Base, Valuation};
