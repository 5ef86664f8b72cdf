mod common;

use firstint::exact_arith::{relation_matrix, EigenvalueSpec, NumberField, NumberFieldElement, rational_int};
use firstint::hilbert::{hilbert_basis, HilbertOptions};
use firstint::normalform::*;
use std::sync::Arc;

use common::*;

/// Our label for each of the printed v_1..v_9 (the printed list has the extra
/// equivariants out of (k, γ) order).
const PRINTED_TO_OURS: [usize; 10] = [0, 1, 2, 3, 4, 5, 6, 8, 9, 7];

fn data() -> (Vec<Vec<u32>>, EquivariantData) {
    let spec = example1();
    let opts = HilbertOptions::default();
    let h = hilbert_basis(&relation_matrix(&spec), &opts).unwrap().vectors;
    (h, equivariant_generators(&spec, &opts).unwrap())
}

fn mu(pairs: &[(usize, u32)]) -> Vec<u32> {
    let mut v = vec![0; 6];
    for &(i, p) in pairs {
        v[i - 1] = p;
    }
    v
}

fn syz(m: usize, j: usize, right: &[(usize, u32)], jp: usize) -> Syzygy {
    Syzygy {
        left: (m, PRINTED_TO_OURS[j]),
        right: (mu(right), PRINTED_TO_OURS[jp]),
    }
}

#[test]
fn nine_equivariants() {
    let (_, d) = data();
    let got: Vec<(usize, Vec<u32>)> = d.equivariants.iter().map(|e| (e.k, e.gamma.clone())).collect();
    let mut expected = vec![
        (1, vec![1, 0, 0, 0, 0]),
        (2, vec![0, 1, 0, 0, 0]),
        (3, vec![0, 0, 1, 0, 0]),
        (4, vec![0, 0, 0, 1, 0]),
        (5, vec![0, 0, 0, 0, 1]),
        (1, vec![0, 0, 0, 1, 1]),
        (1, vec![0, 2, 2, 0, 1]),
        (4, vec![0, 2, 2, 0, 0]),
        (5, vec![3, 0, 0, 0, 0]),
    ];
    assert_eq!(got, expected);
    // Printed: v_6 = x_4x_5 e_1, v_7 = x_2²x_3² e_4, v_8 = x_1³ e_5, v_9 = x_2²x_3²x_5 e_1.
    let printed = [(1, vec![0, 0, 0, 1, 1]), (4, vec![0, 2, 2, 0, 0]), (5, vec![3, 0, 0, 0, 0]), (1, vec![0, 2, 2, 0, 1])];
    for (p, e) in (6..=9).zip(printed) {
        assert_eq!(got[PRINTED_TO_OURS[p] - 1], e);
    }
    expected.sort();
    let labels: Vec<&str> = d.equivariants.iter().map(|e| e.label.as_str()).collect();
    assert_eq!(labels, ["v_1", "v_2", "v_3", "v_4", "v_5", "v_6", "v_7", "v_8", "v_9"]);
    let spec = example1();
    for e in &d.equivariants {
        let g: Vec<_> = e.gamma.iter().map(|&v| v.into()).collect();
        assert_eq!(spec.pairing(&g), spec.lambda()[e.k - 1].clone());
    }
}

fn printed_syzygies() -> Vec<Syzygy> {
    vec![
        syz(4, 6, &[(1, 1)], 1),
        syz(5, 6, &[(2, 1)], 1),
        syz(6, 6, &[(4, 1)], 1),
        syz(1, 7, &[(2, 2)], 4),
        syz(2, 7, &[(3, 1)], 4),
        syz(4, 7, &[(2, 1), (5, 1)], 4),
        syz(1, 8, &[(4, 1), (6, 1)], 5),
        syz(2, 8, &[(5, 1), (6, 1)], 5),
        syz(2, 9, &[(3, 1)], 6),
        syz(4, 9, &[(2, 2)], 1),
        syz(5, 9, &[(3, 1)], 1),
    ]
}

/// The three printed relations whose exponents do not balance, and the
/// versions that do.
fn misprinted() -> Vec<(Syzygy, Syzygy)> {
    vec![
        (syz(6, 7, &[(5, 2)], 5), syz(6, 7, &[(5, 2)], 4)),
        (syz(3, 8, &[(6, 2)], 5), syz(3, 8, &[(5, 3)], 5)),
        (syz(1, 9, &[(2, 2)], 1), syz(1, 9, &[(2, 2)], 6)),
    ]
}

#[test]
fn scan_finds_the_printed_syzygies() {
    let (h, d) = data();
    let found = syzygy_scan(&h, &d.equivariants, 12);
    for s in found.iter() {
        assert!(s.holds(&h, &d.equivariants), "{s:?}");
    }
    for s in printed_syzygies().into_iter().chain(misprinted().into_iter().map(|(_, c)| c)) {
        assert!(s.holds(&h, &d.equivariants), "{}", s.render(&d.equivariants));
        assert!(found.contains(&s), "missing {}", s.render(&d.equivariants));
    }
    for (typo, _) in misprinted() {
        assert!(!typo.holds(&h, &d.equivariants), "{}", typo.render(&d.equivariants));
    }
}

fn decomposition(v6: &[usize], v7: &[usize], v8: &[usize], v9: Option<&[usize]>) -> StanleyDecomposition {
    let all: Vec<usize> = (1..=6).collect();
    let mut summands: Vec<(usize, Vec<usize>)> = (1..=5).map(|j| (j, all.clone())).collect();
    summands.push((PRINTED_TO_OURS[6], v6.to_vec()));
    summands.push((PRINTED_TO_OURS[7], v7.to_vec()));
    summands.push((PRINTED_TO_OURS[8], v8.to_vec()));
    if let Some(v9) = v9 {
        summands.push((PRINTED_TO_OURS[9], v9.to_vec()));
    }
    StanleyDecomposition { summands }
}

#[test]
fn corrected_decomposition_is_direct() {
    let (h, d) = data();
    let dec = decomposition(&[1, 2, 3], &[3, 5], &[5, 6], Some(&[3]));
    let r = stanley_verify_with(&dec, &example1(), &h, &d, 10).unwrap();
    assert!(r.ok, "{r:?}");
    assert!(r.checked > 0);
}

#[test]
fn printed_decomposition_overlaps() {
    // I_4 v_8 = I_6^2 v_5 (degree 7) and I_6 v_9 = I_2 I_5 v_1 (degree 8),
    // in the printed labels.
    let (h, d) = data();
    let dec = decomposition(&[1, 2, 3], &[3, 5], &[4, 5, 6], Some(&[3, 6]));
    let r = stanley_verify_with(&dec, &example1(), &h, &d, 8).unwrap();
    assert!(!r.ok);
    assert!(r.missing.is_empty());
    assert!(r.duplicated.contains(&(5, vec![4, 0, 0, 2, 1], vec![5, PRINTED_TO_OURS[8]])));
    assert!(r.duplicated.contains(&(1, vec![2, 2, 2, 1, 1], vec![1, PRINTED_TO_OURS[9]])));
}

#[test]
fn perturbed_decompositions_fail() {
    let (h, d) = data();
    let all: Vec<usize> = (1..=6).collect();
    let enlarged = decomposition(&all, &[3, 5], &[4, 5, 6], Some(&[3, 6]));
    let r = stanley_verify_with(&enlarged, &example1(), &h, &d, 12).unwrap();
    assert!(r.duplicated.iter().any(|(k, a, _)| *k == 1 && a == &vec![1, 0, 0, 3, 2]));

    let deleted = decomposition(&[1, 2, 3], &[3, 5], &[4, 5, 6], None);
    let r = stanley_verify_with(&deleted, &example1(), &h, &d, 8).unwrap();
    assert!(r.missing.contains(&(1, vec![0, 2, 2, 0, 1])));
}

#[test]
fn bound_below_generators_is_an_error() {
    let (h, d) = data();
    let dec = decomposition(&[1, 2, 3], &[3, 5], &[5, 6], Some(&[3]));
    assert!(stanley_verify_with(&dec, &example1(), &h, &d, 3).is_err());
}

#[test]
fn rank_report_example1() {
    let r = formal_integral_rank_report(&example1(), &HilbertOptions::default()).unwrap();
    assert_eq!(r.p(), Some(3));
}

#[test]
fn equivariants_of_generic_pairs() {
    let opts = HilbertOptions::default();
    let d = equivariant_generators(&EigenvalueSpec::integers(&[1, 2]).unwrap(), &opts).unwrap();
    assert!(d.resonance[1].coset_reps.contains(&vec![2, 0]));

    let k = Arc::new(NumberField::new("r", vec![rational_int(-2), rational_int(0), rational_int(1)]).unwrap());
    let spec = EigenvalueSpec::new(
        k.clone(),
        vec![NumberFieldElement::from_rational(&k, rational_int(1)), NumberFieldElement::generator(&k)],
    )
    .unwrap();
    let d = equivariant_generators(&spec, &opts).unwrap();
    assert!(d.equivariants.iter().all(Equivariant::is_trivial));
    assert_eq!(d.equivariants.len(), 2);
}

#[test]
fn resonances_shift_to_kernel_points() {
    // α ∈ N^(k) ↔ α − e_k is a kernel point with at most one −1 at k.
    let spec = example1();
    let a = relation_matrix(&spec);
    let (_, d) = data();
    for set in &d.resonance {
        for s in &set.coset_reps {
            let mut beta: Vec<num_bigint::BigInt> = s.iter().map(|&v| v.into()).collect();
            beta[set.k - 1] -= 1;
            assert!(a.mul_vec(&beta).iter().all(|v| *v == 0.into()));
            assert!(beta.iter().enumerate().all(|(i, v)| *v >= 0.into() || (i + 1 == set.k && *v == (-1).into())));
        }
    }
}
