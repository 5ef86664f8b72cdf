#![allow(dead_code)]

use std::sync::Arc;

use firstint::exact_arith::{rational_int, EigenvalueSpec, NumberField, NumberFieldElement};
use firstint::intlin::IntMatrix;

pub fn zeta_field() -> Arc<NumberField> {
    Arc::new(NumberField::new("zeta", vec![rational_int(1), rational_int(1), rational_int(1)]).unwrap())
}

/// λ = (1, ζ, ζ², −2, 3) over x² + x + 1.
pub fn example1() -> EigenvalueSpec {
    let field = zeta_field();
    let z = NumberFieldElement::generator(&field);
    let int = |v| NumberFieldElement::from_rational(&field, rational_int(v));
    EigenvalueSpec::new(field.clone(), vec![int(1), z.clone(), z.pow(2), int(-2), int(3)]).unwrap()
}

pub fn example1_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[vec![1, 0, -1, -2, 3], vec![0, 1, -1, 0, 0]])
}

pub fn example1_hilbert() -> Vec<Vec<u32>> {
    vec![
        vec![0, 0, 0, 3, 2],
        vec![0, 1, 1, 1, 1],
        vec![0, 3, 3, 0, 1],
        vec![1, 0, 0, 2, 1],
        vec![1, 1, 1, 0, 0],
        vec![2, 0, 0, 1, 0],
    ]
}
