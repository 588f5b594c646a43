//! Exact tangent-category computations over finitely presented ℚ-algebras.

pub mod axioms;
pub mod bundle;
pub mod category;
pub mod derivation;
pub mod dual;
pub mod error;
pub mod groebner;
pub mod kahler;
pub mod module;
pub mod parse;
pub mod poly;
pub mod ring;

pub use axioms::{check_tangent_structure, Overridden, StructureMap, TangentStructure, TANGENT_DIAGRAMS};
pub use bundle::{
    alpha_iso, beta_iso, bundle_map_to_module, bundle_to_mod_affine, bundle_to_mod_ring, check_bundle_morphism,
    check_diff_bundle, check_pre_differential, compose_bundle, d_lambda, derive_sum_and_negative_via_rosicky,
    mod_map_to_bundle_affine, mod_map_to_bundle_ring, mod_to_bundle_affine, mod_to_bundle_ring, mu, psi_iso,
    split_form, tangent_bundle, BundleMorphism, DiffBundle, SplitForm, BUNDLE_DIAGRAMS,
};
pub use category::{comp, Arrow, AxiomEntry, AxiomReport, Failure, Limit, Side};
pub use derivation::{leibniz_extend, lie_bracket, Derivation};
pub use error::{Error, Result};
pub use module::{
    compose_module, module_action, module_morphisms_equal, square_zero_extension, symmetric_algebra, FPModule,
    ModuleMorphism, ModuleRing,
};
pub use poly::{rat, ratio, Monomial, Poly, Rational};
pub use ring::{
    compose, evaluate, first_difference, ideal_equal, morphisms_equal, normal_form, tensor_over, FPRing,
    MonomialOrder, Point, Pushout, RingMorphism,
};
