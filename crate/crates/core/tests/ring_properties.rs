mod common;

use common::*;

#[test]
fn frobenius_algebra_is_commutative_and_associative() {
    assert_eq!(frobenius_algebra(11, 200), Ok(200));
}

#[test]
fn comultiplication_is_adjoint_to_multiplication() {
    assert_eq!(comultiply_adjoint(), Ok(24 * 24 * 24));
}

#[test]
fn pushforward_is_adjoint_to_pullback() {
    assert_eq!(pullback_adjoint(12, 100), Ok(100));
}

#[test]
fn sn_product_is_associative() {
    assert_eq!(ring_associativity(13, 120), Ok(120));
}

#[test]
fn invariant_product_is_commutative() {
    assert_eq!(ring_commutativity(14, 100), Ok(100));
}

#[test]
fn sn_product_is_equivariant() {
    assert_eq!(ring_equivariance(15, 120), Ok(120));
}

#[test]
fn fujiki_relation_on_random_divisors() {
    assert_eq!(fujiki_identity(16, 20), Ok(20));
}
