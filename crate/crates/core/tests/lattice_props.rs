use gg_core::lattice::{
    adjugate, brute_force_cosets, determinant, mat_mul, orthogonal_lattice, quotient_of_rows, saturation, smith_normal_form,
    torsion_profile,
};
use gg_core::VectorSet64;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotient_matches_box_enumeration(m in prop_oneof![square(2), square(3)]) {
        let det = determinant(&m).abs();
        prop_assume!(det > 0 && det <= 64);
        let q = quotient_of_rows(&m, m.len()).unwrap();
        let divisors: Vec<i64> = q.elementary_divisors.clone();
        let dmax = *divisors.iter().max().unwrap();
        let (order, profile) = brute_force_cosets(&m, dmax);
        prop_assert_eq!(order as i64, det);
        prop_assert_eq!(q.order, Some(det));
        prop_assert_eq!(q.representatives.len() as i64, det);
        prop_assert_eq!(profile, torsion_profile(&divisors, order));
    }

    #[test]
    fn smith_form_is_a_factorization(m in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 3)) {
        let s = smith_normal_form(&m);
        let d = mat_mul(&mat_mul(&s.p, &m), &s.q);
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j && i < s.divisors.len() { s.divisors[i] } else { 0 };
                prop_assert_eq!(*v, want);
            }
        }
        prop_assert!(determinant(&s.p).abs() == 1);
    }

    #[test]
    fn saturation_contains_row_lattice_with_divisor_index(m in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 2)) {
        let s = smith_normal_form(&m);
        prop_assume!(s.rank() == 2);
        let sat = saturation(&m);
        prop_assert_eq!(sat.rank, 2);
        // Express each original row in the saturated basis: the change of
        // basis is an integer matrix whose determinant is the index.
        let b = &sat.basis_rows;
        let pivots: Vec<usize> = b.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
        let mut coeffs = Vec::new();
        for row in &m {
            let mut rest = row.clone();
            let mut c = Vec::new();
            for (r, &p) in b.iter().zip(&pivots) {
                prop_assert_eq!(rest[p] % r[p], 0);
                let f = rest[p] / r[p];
                for (x, y) in rest.iter_mut().zip(r) {
                    *x -= f * y;
                }
                c.push(f);
            }
            prop_assert!(rest.iter().all(|&x| x == 0));
            coeffs.push(c);
        }
        let index = determinant(&coeffs).abs();
        prop_assert_eq!(index, s.divisors.iter().product::<i64>());
    }

    #[test]
    fn lattice_is_orthogonal_to_relations(omega in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 4)) {
        let Ok(set) = VectorSet64::from_integers(2, &omega) else { return Ok(()); };
        let lat = orthogonal_lattice(&set).unwrap();
        prop_assert_eq!(lat.rank, 2);
        // Integer relations by Cramer's rule on a base {i1, i2}:
        // ℓ = d e_j - adj(M_I) ω^j with d = det M_I.
        let base = gg_core::enumerate_bases(&set)[0].indices().to_vec();
        let m_i: Vec<Vec<i64>> = (0..2).map(|r| base.iter().map(|&c| omega[c][r]).collect()).collect();
        let d = determinant(&m_i);
        let adj = adjugate(&m_i);
        for j in (0..4).filter(|j| !base.contains(j)) {
            let mut l = vec![0i64; 4];
            l[j] = d;
            for (p, &i) in base.iter().enumerate() {
                l[i] = -(adj[p][0] * omega[j][0] + adj[p][1] * omega[j][1]);
            }
            for row in &lat.basis_rows {
                let s: BigInt = row.iter().zip(&l).map(|(a, &b)| a * BigInt::from(b)).sum();
                prop_assert_eq!(s.to_i64(), Some(0));
            }
        }
    }
}

#[test]
fn criterion_examples_against_brute_force() {
    let gauss = VectorSet64::from_integers(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]]).unwrap();
    let lat = orthogonal_lattice(&gauss).unwrap();
    let proj: Vec<Vec<i64>> = lat.basis_rows.iter().map(|r| r[..3].iter().map(|x| x.to_i64().unwrap()).collect()).collect();
    assert_eq!(brute_force_cosets(&proj, 2).0, 1);

    let line = VectorSet64::from_integers(1, &[vec![1], vec![2]]).unwrap();
    let lat = orthogonal_lattice(&line).unwrap();
    let proj: Vec<Vec<i64>> = lat.basis_rows.iter().map(|r| vec![r[1].to_i64().unwrap()]).collect();
    assert_eq!(brute_force_cosets(&proj, 5).0, 2);
}
