//! Rank-one Breuil modules M(r, a, c) with tame descent data in the setting
//! f = f', e(K/L) = p^f - 1: morphisms, χ-duals, extremal models of a given
//! type, extensions in canonical form and the spaces L(χ₁, χ₂, τ).

mod ext;
mod lattice;
mod models;
mod module;

pub use ext::{ext_basis, ext_dim, minimax_transfer, ExtBasis, ExtClass};
pub use lattice::{containment, containment_by_homs, l_space, l_space_for, same_fibres, LatticeSlots};
pub use models::{
    extremal_models, is_model_of_type, minimal_trivial_model, models_of_type, ModelOfType, PrincipalSeriesType,
    TypeDigitsJson,
};
pub use module::{
    all_modules, chi_dual, generic_fibre, hom_exists, lower_bound_model, upper_bound_model, Params, RankOneBreuil,
    RankOneBreuilJson,
};
