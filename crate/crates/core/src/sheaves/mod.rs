//! Finite sites, coverage-axiom validation, the associated sheaf functor and
//! categories of sheaves with pointwise-small maps.

pub mod plus;
pub mod sheafcat;
pub mod site;

pub use plus::{is_sheaf, sheafify, Sheafification};
pub use sheafcat::{pointwise_class, sheaf_category, SheafCat};
pub use site::{validate_site, Sieve, Site, SiteReport};
