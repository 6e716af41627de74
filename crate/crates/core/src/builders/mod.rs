//! Constructors for every named series: eta-quotients, generalized products,
//! congruent theta functions, Weber's `f₁`, Eisenstein series, and the
//! Andrews-Bressoud series `B_{k,j}` with their characters.

mod characters;
mod eisenstein;
mod index;
mod products;
mod theta;

pub use characters::{character_alt, character_sum, jacobi_bilateral};
pub use eisenstein::{
    bernoulli, e2_classical, eisenstein_2_1, eisenstein_e4, eisenstein_paper, eisenstein_twisted,
    g2_level2, E4_FROM_BERNOULLI_FORM, G2_FROM_E21,
};
pub use index::{ab_lattice, ABIndex, EtaQuotientSpec, GeneralizedFactor};
pub use products::{
    bressoud_product, dedekind_eta, eta_quotient, jacobi_product, overpartition_factor, weber_f1,
};
pub use theta::{bressoud_theta, bressoud_theta_modulus_16k, congruent_theta, theta_congruent};
