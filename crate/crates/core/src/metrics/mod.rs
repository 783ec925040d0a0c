//! Statistical characterization of generated and observed networks.

pub mod distribution;
pub mod local;
pub mod powerlaw;
pub mod profile;

pub use distribution::{distribution, fit_quantity, Binning, DistributionTable, Quantity};
pub use local::{clustering, knn, weighted_clustering, weighted_knn, WeightScale};
pub use powerlaw::{fit_continuous, fit_discrete, fit_scanning_x_min, FitMethod, PowerLawFit};
pub use profile::{profile_by_degree, DegreeProfile, ProfileQuantity};
