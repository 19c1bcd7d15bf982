//! Induced actions on symmetric, divided and exterior powers, used by the
//! equivariance checks: the unipotent substitution 1 ↦ 1, x ↦ x + 1 on each
//! power of U, and functorial Sym/Wedge powers of an arbitrary endomorphism.

use crate::field::{binom, FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::spaces::{combinations, multisets};
use std::collections::HashMap;

/// Action of the substitution x ↦ x + 1 on Sym^e U: x^k ↦ Σ_t C(k,t) x^t.
pub fn sym_u_unipotent(field: FieldSpec, e: i64) -> Matrix {
    let n = if e < 0 { 0 } else { e as usize + 1 };
    let mut entries = Vec::new();
    for k in 0..n {
        for t in 0..=k {
            entries.push((t, k, field.from_bigint(&binom(k as i64, t as i64))));
        }
    }
    Matrix::from_triplets(field, n, n, entries).expect("valid")
}

/// Action of the same substitution on D^d U: x^(k) ↦ Σ_j C(d-j, k-j) x^(j),
/// computed from the orbit-sum description of the divided power basis.
pub fn div_u_unipotent(field: FieldSpec, d: i64) -> Matrix {
    let n = if d < 0 { 0 } else { d as usize + 1 };
    let mut entries = Vec::new();
    for k in 0..n {
        for j in 0..=k {
            let c = binom(d - j as i64, k as i64 - j as i64);
            entries.push((j, k, field.from_bigint(&c)));
        }
    }
    Matrix::from_triplets(field, n, n, entries).expect("valid")
}

/// Sym^d of an endomorphism, on the canonical multiset basis.
pub fn sym_power_matrix(field: FieldSpec, a: &Matrix, d: usize) -> Matrix {
    assert_eq!(a.nrows(), a.ncols(), "symmetric power of a square matrix");
    let n = a.nrows();
    let basis = multisets(n, d);
    let index: HashMap<Vec<usize>, usize> =
        basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let cols_of_a = a.transpose().sparse_rows(); // column c of a = row c of transpose
    let mut entries = Vec::new();
    for (col, mult) in basis.iter().enumerate() {
        let mut acc: HashMap<Vec<usize>, Scalar> = HashMap::new();
        acc.insert(Vec::new(), field.one());
        for &gen in mult {
            let mut next: HashMap<Vec<usize>, Scalar> = HashMap::new();
            for (m, coeff) in &acc {
                for (target, value) in &cols_of_a[gen] {
                    let mut key = m.clone();
                    let pos = key.partition_point(|x| x <= target);
                    key.insert(pos, *target);
                    let term = field.mul(coeff, value);
                    next.entry(key)
                        .and_modify(|e| *e = field.add(e, &term))
                        .or_insert(term);
                }
            }
            acc = next;
        }
        for (m, coeff) in acc {
            if !coeff.is_zero() {
                entries.push((index[&m], col, coeff));
            }
        }
    }
    Matrix::from_triplets(field, basis.len(), basis.len(), entries).expect("valid")
}

/// Wedge^i of an endomorphism, on the canonical subset basis.
pub fn wedge_power_matrix(field: FieldSpec, a: &Matrix, i: usize) -> Matrix {
    assert_eq!(a.nrows(), a.ncols(), "exterior power of a square matrix");
    let n = a.nrows();
    let basis = combinations(n, i);
    let index: HashMap<Vec<usize>, usize> =
        basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let cols_of_a = a.transpose().sparse_rows();
    let mut entries = Vec::new();
    for (col, set) in basis.iter().enumerate() {
        let mut acc: HashMap<Vec<usize>, Scalar> = HashMap::new();
        acc.insert(Vec::new(), field.one());
        for &gen in set {
            let mut next: HashMap<Vec<usize>, Scalar> = HashMap::new();
            for (s, coeff) in &acc {
                for (target, value) in &cols_of_a[gen] {
                    if s.contains(target) {
                        continue;
                    }
                    let pos = s.partition_point(|x| x < target);
                    let mut key = s.clone();
                    key.insert(pos, *target);
                    // appended factor moves left past len - pos earlier factors
                    let sign = if (s.len() - pos) % 2 == 0 { 1 } else { -1 };
                    let term = field.mul(&field.mul(coeff, value), &field.from_i64(sign));
                    next.entry(key)
                        .and_modify(|e| *e = field.add(e, &term))
                        .or_insert(term);
                }
            }
            acc = next;
        }
        for (s, coeff) in acc {
            if !coeff.is_zero() {
                entries.push((index[&s], col, coeff));
            }
        }
    }
    Matrix::from_triplets(field, basis.len(), basis.len(), entries).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn unipotent_is_invertible() {
        for e in 0..6i64 {
            assert_eq!(sym_u_unipotent(q(), e).rank(), e as usize + 1);
            assert_eq!(div_u_unipotent(q(), e).rank(), e as usize + 1);
        }
    }

    #[test]
    fn div_unipotent_compatible_with_comultiplication() {
        // D^1 is the substitution itself, and comultiplication intertwines
        // the induced actions on divided powers
        let g1 = div_u_unipotent(q(), 1);
        assert_eq!(g1.get(0, 1), q().one());
        assert_eq!(g1.get(1, 1), q().one());
        assert_eq!(g1.get(0, 0), q().one());
        assert_eq!(g1.get(1, 0), q().zero());
        for (u, v) in [(1i64, 1i64), (2, 1), (2, 2), (3, 2)] {
            let comult = crate::multilinear::comult_div(q(), u, v).matrix;
            let lhs = comult.mul(&div_u_unipotent(q(), u + v)).unwrap();
            let rhs = div_u_unipotent(q(), u)
                .kron(&div_u_unipotent(q(), v))
                .mul(&comult)
                .unwrap();
            assert_eq!(lhs, rhs, "u={u} v={v}");
        }
    }

    #[test]
    fn wedge_power_of_identity() {
        let id = Matrix::identity(q(), 4);
        assert_eq!(wedge_power_matrix(q(), &id, 2), Matrix::identity(q(), 6));
        assert_eq!(sym_power_matrix(q(), &id, 3), Matrix::identity(q(), 20));
    }

    #[test]
    fn wedge_top_power_is_determinant() {
        // det [[1,2],[3,4]] = -2
        let m = Matrix::from_triplets_i64(q(), 2, 2, vec![(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)])
            .unwrap();
        let top = wedge_power_matrix(q(), &m, 2);
        assert_eq!(top.get(0, 0), q().from_i64(-2));
    }

    #[test]
    fn functorial_on_products() {
        let a = Matrix::from_triplets_i64(q(), 3, 3, vec![(0, 0, 1), (0, 2, 1), (1, 1, 2), (2, 0, 1)])
            .unwrap();
        let b = Matrix::from_triplets_i64(q(), 3, 3, vec![(0, 1, 1), (1, 0, 1), (2, 2, 3), (2, 0, 2)])
            .unwrap();
        let ab = a.mul(&b).unwrap();
        for k in 1..=2usize {
            let lhs = wedge_power_matrix(q(), &ab, k);
            let rhs = wedge_power_matrix(q(), &a, k)
                .mul(&wedge_power_matrix(q(), &b, k))
                .unwrap();
            assert_eq!(lhs, rhs, "wedge^{k}");
            let lhs = sym_power_matrix(q(), &ab, k);
            let rhs = sym_power_matrix(q(), &a, k)
                .mul(&sym_power_matrix(q(), &b, k))
                .unwrap();
            assert_eq!(lhs, rhs, "sym^{k}");
        }
    }
}
