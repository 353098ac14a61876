//! Exact cyclotomic arithmetic and class functions.

pub mod cyclotomic;
pub mod function;
pub mod linear;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use function::{
    induce, inner_product, permutation_character, restrict, sign_character, ClassFunction,
    ClassFunctionJson, ClassValueJson,
};
pub use linear::linear_pm1_characters;
