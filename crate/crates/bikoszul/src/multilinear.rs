//! Structure maps for powers of the two-dimensional space U = k{1, x}:
//! multiplication and comultiplication for symmetric, divided and exterior
//! powers, the inclusion maps iota and their duals, the kernel of the
//! quotient map onto Q_{u,v}, Hermite reciprocity, the map nu, and brute
//! force low-rank tensor search over finite fields.
//!
//! Conventions, fixed once: D^d U carries the basis x^(0), ..., x^(d) dual to
//! x^0, ..., x^d via <x^(k), x^j> = delta_{kj}; wedges expand as
//! e_1 ∧ ... ∧ e_d = sum over permutations with signs; binomial coefficients
//! are computed in Z and reduced into the field, so small-characteristic
//! degenerations come out exactly.

use crate::error::{Error, Result};
use crate::field::{binom, FieldSpec, Scalar};
use crate::linalg::{Matrix, Subspace};
use crate::spaces::{basis_index_map, enumerate_basis, ravel, BasisIndex, SpaceExpr};
use std::collections::HashMap;

/// A sparse exact matrix tagged with its domain and codomain spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub domain: SpaceExpr,
    pub codomain: SpaceExpr,
    pub matrix: Matrix,
}

impl LinMap {
    pub fn new(domain: SpaceExpr, codomain: SpaceExpr, matrix: Matrix) -> Result<Self> {
        if matrix.ncols() != domain.dim() || matrix.nrows() != codomain.dim() {
            return Err(Error::ShapeMismatch(format!(
                "map {}x{} between {domain} (dim {}) and {codomain} (dim {})",
                matrix.nrows(),
                matrix.ncols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(LinMap { domain, codomain, matrix })
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap> {
        if inner.codomain != self.domain {
            return Err(Error::ShapeMismatch(format!(
                "compose: inner codomain {} != outer domain {}",
                inner.codomain, self.domain
            )));
        }
        LinMap::new(
            inner.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&inner.matrix)?,
        )
    }

    /// Tensor product of maps, bases left-major.
    pub fn kron(&self, other: &LinMap) -> LinMap {
        LinMap {
            domain: SpaceExpr::tensor2(self.domain.clone(), other.domain.clone()),
            codomain: SpaceExpr::tensor2(self.codomain.clone(), other.codomain.clone()),
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

fn dim_sym(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        d as usize + 1
    }
}

/// Multiplication Sym^u U ⊗ Sym^v U → Sym^(u+v) U, x^i ⊗ x^j ↦ x^(i+j).
pub fn mult_sym(field: FieldSpec, u: i64, v: i64) -> LinMap {
    let domain = SpaceExpr::tensor2(SpaceExpr::SymU(u), SpaceExpr::SymU(v));
    let codomain = SpaceExpr::SymU(u + v);
    let (du, dv) = (dim_sym(u), dim_sym(v));
    let mut entries = Vec::new();
    for i in 0..du {
        for j in 0..dv {
            entries.push((i + j, ravel(&[du, dv], &[i, j]), 1i64));
        }
    }
    let matrix =
        Matrix::from_triplets_i64(field, codomain.dim(), domain.dim(), entries).expect("valid");
    LinMap { domain, codomain, matrix }
}

/// Comultiplication D^(u+v) U → D^u U ⊗ D^v U, the linear dual of
/// multiplication: x^(k) ↦ Σ_{a+b=k} x^(a) ⊗ x^(b).
pub fn comult_div(field: FieldSpec, u: i64, v: i64) -> LinMap {
    let domain = SpaceExpr::DivU(u + v);
    let codomain = SpaceExpr::tensor2(SpaceExpr::DivU(u), SpaceExpr::DivU(v));
    let (du, dv) = (dim_sym(u), dim_sym(v));
    let mut entries = Vec::new();
    for k in 0..dim_sym(u + v) {
        for a in 0..du {
            if k >= a && k - a < dv {
                entries.push((ravel(&[du, dv], &[a, k - a]), k, 1i64));
            }
        }
    }
    let matrix =
        Matrix::from_triplets_i64(field, codomain.dim(), domain.dim(), entries).expect("valid");
    LinMap { domain, codomain, matrix }
}

fn shuffle_sign(s1: &[usize], s2: &[usize]) -> i64 {
    let inv = s1
        .iter()
        .map(|a| s2.iter().filter(|b| a > b).count())
        .sum::<usize>();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exterior comultiplication Wedge^(u+v) E → Wedge^u E ⊗ Wedge^v E, the dual
/// of exterior multiplication: e_S ↦ Σ over splittings S = S1 ⊔ S2 with
/// |S1| = u of the shuffle sign times e_S1 ⊗ e_S2.
pub fn comult_wedge(field: FieldSpec, u: usize, v: usize, inner: &SpaceExpr) -> LinMap {
    let domain = SpaceExpr::wedge(u + v, inner.clone());
    let codomain = SpaceExpr::tensor2(
        SpaceExpr::wedge(u, inner.clone()),
        SpaceExpr::wedge(v, inner.clone()),
    );
    let dom_basis = enumerate_basis(&domain);
    let left = SpaceExpr::wedge(u, inner.clone());
    let right = SpaceExpr::wedge(v, inner.clone());
    let left_idx = basis_index_map(&left);
    let right_idx = basis_index_map(&right);
    let (dl, dr) = (left.dim(), right.dim());
    let mut entries = Vec::new();
    for (col, b) in dom_basis.iter().enumerate() {
        let BasisIndex::Set(s) = b else { unreachable!() };
        for positions in crate::spaces::combinations(s.len(), u) {
            let s1: Vec<usize> = positions.iter().map(|&p| s[p]).collect();
            let s2: Vec<usize> = (0..s.len())
                .filter(|p| !positions.contains(p))
                .map(|p| s[p])
                .collect();
            let sign = shuffle_sign(&s1, &s2);
            let i1 = left_idx[&BasisIndex::Set(s1)];
            let i2 = right_idx[&BasisIndex::Set(s2)];
            entries.push((ravel(&[dl, dr], &[i1, i2]), col, sign));
        }
    }
    let matrix =
        Matrix::from_triplets_i64(field, codomain.dim(), domain.dim(), entries).expect("valid");
    LinMap { domain, codomain, matrix }
}

/// The t-fold inclusion Sym^(u-t) U ⊗ Sym^(v-t) U → Sym^u U ⊗ Sym^v U,
/// f ⊗ g ↦ Σ_{s=0}^{t} (-1)^s C(t,s) x^s f ⊗ x^(t-s) g. For t = 1 this is the
/// kernel inclusion of the multiplication map; built from the closed formula
/// rather than by composing t single steps.
pub fn iota_power(field: FieldSpec, u: i64, v: i64, t: i64) -> LinMap {
    let domain = SpaceExpr::tensor2(SpaceExpr::SymU(u - t), SpaceExpr::SymU(v - t));
    let codomain = SpaceExpr::tensor2(SpaceExpr::SymU(u), SpaceExpr::SymU(v));
    let (du, dv) = (dim_sym(u), dim_sym(v));
    let (da, db) = (dim_sym(u - t), dim_sym(v - t));
    let mut entries = Vec::new();
    for a in 0..da {
        for b in 0..db {
            let col = ravel(&[da, db], &[a, b]);
            for s in 0..=t {
                let coeff = binom(t, s) * if s % 2 == 0 { 1 } else { -1 };
                let row = ravel(&[du, dv], &[a + s as usize, b + (t - s) as usize]);
                entries.push((row, col, field.from_bigint(&coeff)));
            }
        }
    }
    let matrix =
        Matrix::from_triplets(field, codomain.dim(), domain.dim(), entries).expect("valid");
    LinMap { domain, codomain, matrix }
}

/// The dual inclusion D^u U ⊗ D^v U → D^(u-1) U ⊗ D^(v-1) U,
/// x^(i) ⊗ x^(j) ↦ x^(i-1) ⊗ x^(j) − x^(i) ⊗ x^(j-1), with terms whose
/// superscripts fall outside the target ranges dropped. Up to a global sign
/// this is the transpose of `iota_power(_, u, v, 1)` under the dual bases.
pub fn iota_dual(field: FieldSpec, u: i64, v: i64) -> LinMap {
    let domain = SpaceExpr::tensor2(SpaceExpr::DivU(u), SpaceExpr::DivU(v));
    let codomain = SpaceExpr::tensor2(SpaceExpr::DivU(u - 1), SpaceExpr::DivU(v - 1));
    let (du, dv) = (dim_sym(u), dim_sym(v));
    let (da, db) = (dim_sym(u - 1), dim_sym(v - 1));
    let mut entries = Vec::new();
    for i in 0..du {
        for j in 0..dv {
            let col = ravel(&[du, dv], &[i, j]);
            if i >= 1 && j < db {
                entries.push((ravel(&[da, db], &[i - 1, j]), col, 1i64));
            }
            if j >= 1 && i < da {
                entries.push((ravel(&[da, db], &[i, j - 1]), col, -1i64));
            }
        }
    }
    let matrix =
        Matrix::from_triplets_i64(field, codomain.dim(), domain.dim(), entries).expect("valid");
    LinMap { domain, codomain, matrix }
}

/// The kernel of the quotient map Psi_{u,v}, i.e. the image of the two-fold
/// inclusion, as a canonical subspace of Sym^u U ⊗ Sym^v U.
pub fn psi_kernel(field: FieldSpec, u: i64, v: i64) -> Subspace {
    iota_power(field, u, v, 2).matrix.column_space()
}

/// K = Q_{u,v}^∨ realized inside D^u U ⊗ D^v U: the kernel of the composite
/// dual inclusion, equivalently the annihilator of `psi_kernel(u, v)`.
pub fn weyman_k(field: FieldSpec, u: i64, v: i64) -> Subspace {
    let first = iota_dual(field, u, v);
    let second = iota_dual(field, u - 1, v - 1);
    let composite = second.compose(&first).expect("composable");
    composite.matrix.kernel_basis()
}

/// One multiplication step on the wedge model: x^(j) acting on
/// Wedge^d(Sym^e U) → Wedge^d(Sym^(e+1) U) adds 1 to exactly j of the d
/// exponents (the other factors are multiplied by 1, i.e. included), summed
/// over all choices; terms with colliding exponents vanish.
fn nu_step(exponents: &[usize], j: usize) -> Vec<Vec<usize>> {
    let d = exponents.len();
    let mut out = Vec::new();
    'subsets: for positions in crate::spaces::combinations(d, j) {
        let mut new_exps = exponents.to_vec();
        for &p in &positions {
            new_exps[p] += 1;
        }
        for w in new_exps.windows(2) {
            if w[0] == w[1] {
                continue 'subsets;
            }
        }
        out.push(new_exps);
    }
    out
}

/// The multiplication map under Hermite reciprocity:
/// D^d U ⊗ Wedge^d(Sym^e U) → Wedge^d(Sym^(e+1) U).
pub fn nu(field: FieldSpec, d: i64, e: i64) -> LinMap {
    let d_us = if d < 0 { 0 } else { d as usize };
    let domain = SpaceExpr::tensor2(
        SpaceExpr::DivU(d),
        SpaceExpr::wedge(d_us, SpaceExpr::SymU(e)),
    );
    let codomain = SpaceExpr::wedge(d_us, SpaceExpr::SymU(e + 1));
    let dom_wedge = SpaceExpr::wedge(d_us, SpaceExpr::SymU(e));
    let wedge_basis = enumerate_basis(&dom_wedge);
    let target_idx = basis_index_map(&codomain);
    let (dd, dw) = (dim_sym(d), dom_wedge.dim());
    let mut entries = Vec::new();
    for j in 0..dd {
        for (wi, wb) in wedge_basis.iter().enumerate() {
            let BasisIndex::Set(s) = wb else { unreachable!() };
            let col = ravel(&[dd, dw], &[j, wi]);
            for target in nu_step(s, j) {
                let row = target_idx[&BasisIndex::Set(target)];
                entries.push((row, col, 1i64));
            }
        }
    }
    let matrix =
        Matrix::from_triplets_i64(field, codomain.dim(), domain.dim(), entries).expect("valid");
    LinMap { domain, codomain, matrix }
}

/// Hermite reciprocity Sym^d(D^i U) → Wedge^i(Sym^(d+i-1) U), built by
/// iterating `nu` against the canonical generator of Wedge^i(Sym^(i-1) U).
/// Independence of the iteration order, invertibility, weight preservation
/// and compatibility with comultiplication are all verified by the property
/// suite.
pub fn hermite_iso(field: FieldSpec, d: i64, i: i64) -> LinMap {
    assert!(d >= 0 && i >= 1, "hermite_iso needs d >= 0, i >= 1");
    let d_us = d as usize;
    let i_us = i as usize;
    let domain = SpaceExpr::sym_of(d_us, SpaceExpr::DivU(i));
    let codomain = SpaceExpr::wedge(i_us, SpaceExpr::SymU(d + i - 1));
    let dom_basis = enumerate_basis(&domain);
    let target_idx = basis_index_map(&codomain);
    let mut entries = Vec::new();
    for (col, b) in dom_basis.iter().enumerate() {
        let BasisIndex::Multi(ks) = b else { unreachable!() };
        // start from the unique basis wedge of Wedge^i(Sym^(i-1) U) and apply
        // one nu step per factor of the monomial, innermost factor first
        let mut vectors: HashMap<Vec<usize>, i64> = HashMap::new();
        vectors.insert((0..i_us).collect(), 1);
        for &k in ks.iter().rev() {
            let mut next: HashMap<Vec<usize>, i64> = HashMap::new();
            for (s, coeff) in &vectors {
                for target in nu_step(s, k) {
                    *next.entry(target).or_insert(0) += coeff;
                }
            }
            vectors = next;
        }
        for (s, coeff) in vectors {
            if coeff != 0 {
                entries.push((target_idx[&BasisIndex::Set(s)], col, coeff));
            }
        }
    }
    let matrix =
        Matrix::from_triplets_i64(field, codomain.dim(), domain.dim(), entries).expect("valid");
    LinMap { domain, codomain, matrix }
}

/// Total x-weight of a basis vector, the grading preserved by the torus
/// action diag(t, t^(-1)) up to a global shift per space.
pub fn torus_weight(space: &SpaceExpr, index: &BasisIndex) -> i64 {
    match (space, index) {
        (SpaceExpr::SymU(_), BasisIndex::Exp(k)) | (SpaceExpr::DivU(_), BasisIndex::Exp(k)) => {
            *k as i64
        }
        (SpaceExpr::WedgeOf(_, inner), BasisIndex::Set(s)) => {
            let inner_basis = enumerate_basis(inner);
            s.iter().map(|&j| torus_weight(inner, &inner_basis[j])).sum()
        }
        (SpaceExpr::SymOf(_, inner), BasisIndex::Multi(m)) => {
            let inner_basis = enumerate_basis(inner);
            m.iter().map(|&j| torus_weight(inner, &inner_basis[j])).sum()
        }
        (SpaceExpr::Tensor(parts), BasisIndex::Tuple(t)) => parts
            .iter()
            .zip(t)
            .map(|(p, b)| torus_weight(p, b))
            .sum(),
        (SpaceExpr::Sum(parts), BasisIndex::Comp(c, b)) => torus_weight(&parts[*c], b),
        _ => panic!("basis index does not match space"),
    }
}

fn rank_dense_mod(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = {
            let mut base = rows[rank][col] % p;
            let mut exp = p - 2;
            let mut acc = 1u64;
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                exp >>= 1;
            }
            acc
        };
        for c in col..ncols {
            rows[rank][c] = rows[rank][c] % p * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for c in col..ncols {
                    rows[r][c] = (rows[r][c] + p * p - factor * rows[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Minimum matrix rank over the nonzero vectors of a subspace of a tensor
/// product, enumerated up to scalar over GF(p). `None` means the subspace is
/// zero. The subspace contains no nonzero tensors of rank at most two exactly
/// when the result is `None` or at least 3.
pub fn min_nonzero_rank(
    t: &Subspace,
    w1: usize,
    w2: usize,
    budget: u64,
) -> Result<Option<usize>> {
    let field = t.field();
    if field.is_rational() {
        return Err(Error::InvalidInput(
            "rank enumeration requires a finite field".into(),
        ));
    }
    if t.ambient_dim() != w1 * w2 {
        return Err(Error::ShapeMismatch(format!(
            "subspace of dimension {} inside ambient {} is not a {w1}x{w2} tensor space",
            t.dim(),
            t.ambient_dim()
        )));
    }
    let p = field.characteristic();
    let k = t.dim();
    if k == 0 {
        return Ok(None);
    }
    let need = (p as u128).pow(k as u32);
    if need > budget as u128 {
        return Err(Error::BudgetExceeded { need, budget });
    }
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|r| {
            t.span()
                .dense_row(r)
                .into_iter()
                .map(|s| match s {
                    Scalar::Mod(x) => x,
                    Scalar::Rat(_) => unreachable!(),
                })
                .collect()
        })
        .collect();
    let mut best: Option<usize> = None;
    // leading coefficient normalized to 1: one representative per scalar class
    for lead in 0..k {
        let free = k - lead - 1;
        let count = (p as u128).pow(free as u32);
        for mut code in 0..count {
            let mut coeffs = vec![0u64; k];
            coeffs[lead] = 1;
            for slot in (lead + 1)..k {
                coeffs[slot] = (code % p as u128) as u64;
                code /= p as u128;
            }
            let mut vec = vec![0u64; w1 * w2];
            for (ci, c) in coeffs.iter().enumerate() {
                if *c != 0 {
                    for (j, x) in rows[ci].iter().enumerate() {
                        vec[j] = (vec[j] + c * x) % p;
                    }
                }
            }
            let mat: Vec<Vec<u64>> = (0..w1).map(|r| vec[r * w2..(r + 1) * w2].to_vec()).collect();
            let rank = rank_dense_mod(p, mat);
            if best.is_none_or(|b| rank < b) {
                best = Some(rank);
                if rank == 1 {
                    return Ok(best);
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn mult_sym_monomials() {
        let m = mult_sym(q(), 2, 3);
        // x^2 (x) x^3 -> x^5
        let col = ravel(&[3, 4], &[2, 3]);
        assert_eq!(m.matrix.get(5, col), q().one());
        assert_eq!(mult_sym(q(), 1, 1).rank(), 3);
    }

    #[test]
    fn mult_sym_kernel_dimension() {
        for (u, v) in [(1i64, 1i64), (2, 3), (3, 3), (4, 2)] {
            let m = mult_sym(q(), u, v);
            assert_eq!(
                m.matrix.kernel_basis().dim() as i64,
                u * v,
                "kernel of mult({u},{v})"
            );
        }
    }

    #[test]
    fn comult_div_small() {
        let d = comult_div(q(), 1, 1);
        // x^(1) -> x^(0) (x) x^(1) + x^(1) (x) x^(0)
        let col = 1;
        assert_eq!(d.matrix.get(ravel(&[2, 2], &[0, 1]), col), q().one());
        assert_eq!(d.matrix.get(ravel(&[2, 2], &[1, 0]), col), q().one());
        assert_eq!(d.matrix.get(ravel(&[2, 2], &[0, 0]), col), q().zero());
    }

    #[test]
    fn comult_div_with_zero_part_is_identity() {
        for u in 0..5i64 {
            let d = comult_div(q(), u, 0);
            assert_eq!(d.matrix, Matrix::identity(q(), u as usize + 1));
        }
    }

    #[test]
    fn comult_div_transposes_mult_sym() {
        for u in 0..=5i64 {
            for v in 0..=(5 - u) {
                let mult = mult_sym(q(), u, v);
                let comult = comult_div(q(), u, v);
                assert_eq!(comult.matrix, mult.matrix.transpose(), "u={u} v={v}");
            }
        }
    }

    #[test]
    fn comult_div_coassociative() {
        for (u, v, w) in [(1i64, 1, 1), (2, 1, 3), (2, 2, 2), (1, 3, 2)] {
            let left = comult_div(q(), u, v)
                .kron(&LinMap::new(
                    SpaceExpr::DivU(w),
                    SpaceExpr::DivU(w),
                    Matrix::identity(q(), dim_sym(w)),
                )
                .unwrap())
                .matrix
                .mul(&comult_div(q(), u + v, w).matrix)
                .unwrap();
            let right = LinMap::new(
                SpaceExpr::DivU(u),
                SpaceExpr::DivU(u),
                Matrix::identity(q(), dim_sym(u)),
            )
            .unwrap()
            .kron(&comult_div(q(), v, w))
            .matrix
            .mul(&comult_div(q(), u, v + w).matrix)
            .unwrap();
            assert_eq!(left, right, "coassociativity at ({u},{v},{w})");
        }
    }

    #[test]
    fn comult_wedge_small() {
        let e = SpaceExpr::SymU(1);
        let d = comult_wedge(q(), 1, 1, &e);
        // e0 ∧ e1 -> e0 (x) e1 - e1 (x) e0
        assert_eq!(d.matrix.get(ravel(&[2, 2], &[0, 1]), 0), q().one());
        assert_eq!(d.matrix.get(ravel(&[2, 2], &[1, 0]), 0), q().from_i64(-1));
    }

    #[test]
    fn comult_wedge_with_zero_part_is_identity() {
        let e = SpaceExpr::SymU(2);
        let d = comult_wedge(q(), 2, 0, &e);
        assert_eq!(d.matrix, Matrix::identity(q(), 3));
    }

    #[test]
    fn comult_wedge_coassociative() {
        let e = SpaceExpr::SymU(3); // dim 4
        for (u, v, w) in [(1usize, 1, 1), (1, 2, 1), (2, 1, 1)] {
            let id_w = LinMap::new(
                SpaceExpr::wedge(w, e.clone()),
                SpaceExpr::wedge(w, e.clone()),
                Matrix::identity(q(), SpaceExpr::wedge(w, e.clone()).dim()),
            )
            .unwrap();
            let id_u = LinMap::new(
                SpaceExpr::wedge(u, e.clone()),
                SpaceExpr::wedge(u, e.clone()),
                Matrix::identity(q(), SpaceExpr::wedge(u, e.clone()).dim()),
            )
            .unwrap();
            let left = comult_wedge(q(), u, v, &e)
                .kron(&id_w)
                .matrix
                .mul(&comult_wedge(q(), u + v, w, &e).matrix)
                .unwrap();
            let right = id_u
                .kron(&comult_wedge(q(), v, w, &e))
                .matrix
                .mul(&comult_wedge(q(), u, v + w, &e).matrix)
                .unwrap();
            assert_eq!(left, right, "wedge coassociativity at ({u},{v},{w})");
        }
    }

    #[test]
    fn iota_squared_on_generator() {
        // second inclusion applied to 1 (x) 1: x^0 (x) x^2 - 2 x^1 (x) x^1 + x^2 (x) x^0
        let m = iota_power(q(), 2, 2, 2);
        assert_eq!(m.matrix.get(ravel(&[3, 3], &[0, 2]), 0), q().one());
        assert_eq!(m.matrix.get(ravel(&[3, 3], &[1, 1]), 0), q().from_i64(-2));
        assert_eq!(m.matrix.get(ravel(&[3, 3], &[2, 0]), 0), q().one());
    }

    #[test]
    fn iota_squared_middle_term_vanishes_mod_2() {
        for (u, v) in [(2i64, 2i64), (3, 2), (3, 3)] {
            let m = iota_power(gf(2), u, v, 2);
            let (du, dv) = (dim_sym(u), dim_sym(v));
            for a in 0..(du - 2) {
                for b in 0..(dv - 2) {
                    let col = ravel(&[du - 2, dv - 2], &[a, b]);
                    assert_eq!(
                        m.matrix.get(ravel(&[du, dv], &[a + 1, b + 1]), col),
                        gf(2).zero()
                    );
                }
            }
        }
    }

    #[test]
    fn iota_squared_rank() {
        assert_eq!(iota_power(q(), 3, 2, 2).rank(), 2);
    }

    #[test]
    fn iota_composition_identity() {
        // the closed formula equals the composition of single inclusions
        for u in 2..=5i64 {
            for v in 2..=5i64 {
                for t in 2..=3i64 {
                    if t > u.min(v) {
                        continue;
                    }
                    let closed = iota_power(q(), u, v, t);
                    let mut comp = iota_power(q(), u - t + 1, v - t + 1, 1);
                    for s in (0..t - 1).rev() {
                        comp = iota_power(q(), u - s, v - s, 1).compose(&comp).unwrap();
                    }
                    assert_eq!(closed.matrix, comp.matrix, "u={u} v={v} t={t}");
                }
            }
        }
    }

    #[test]
    fn mult_annihilates_iota() {
        for u in 1..=8i64 {
            for v in 1..=(8 - u).max(1) {
                let composite = mult_sym(q(), u, v)
                    .compose(&iota_power(q(), u, v, 1))
                    .unwrap();
                assert!(composite.matrix.is_zero(), "u={u} v={v}");
            }
        }
    }

    #[test]
    fn iota_dual_examples() {
        // single surviving term: x^(0) (x) x^(1) -> -x^(0) (x) x^(0)
        let m = iota_dual(q(), 1, 1);
        let col = ravel(&[2, 2], &[0, 1]);
        assert_eq!(m.matrix.get(0, col), q().from_i64(-1));

        // x^(1) (x) x^(2) in D^2 (x) D^2: the term with an out-of-range
        // superscript drops, leaving -x^(1) (x) x^(1)
        let m = iota_dual(q(), 2, 2);
        let col = ravel(&[3, 3], &[1, 2]);
        let row = ravel(&[2, 2], &[1, 1]);
        assert_eq!(m.matrix.get(row, col), q().from_i64(-1));
        let dense: Vec<Scalar> = (0..4).map(|r| m.matrix.get(r, col)).collect();
        let nonzero = dense.iter().filter(|s| !s.is_zero()).count();
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn iota_dual_is_transpose_up_to_sign() {
        for u in 1..=5i64 {
            for v in 1..=5i64 {
                let dual = iota_dual(q(), u, v);
                let t = iota_power(q(), u, v, 1).matrix.transpose();
                assert_eq!(dual.matrix, t.neg(), "u={u} v={v}");
            }
        }
    }

    #[test]
    fn psi_kernel_dimensions() {
        assert_eq!(psi_kernel(q(), 1, 1).dim(), 0);
        let k22 = psi_kernel(q(), 2, 2);
        assert_eq!(k22.dim(), 1);
        let row = k22.span().dense_row(0);
        // the (1, -2, 1) antidiagonal pattern
        assert_eq!(row[2], q().one());
        assert_eq!(row[4], q().from_i64(-2));
        assert_eq!(row[6], q().one());
        assert_eq!(psi_kernel(q(), 3, 3).dim(), 4);
    }

    #[test]
    fn weyman_k_dimensions() {
        assert_eq!(weyman_k(q(), 1, 1).dim(), 4);
        assert_eq!(weyman_k(q(), 2, 2).dim(), 8);
        assert_eq!(weyman_k(q(), 3, 2).dim(), 10);
        for p in [2u64, 3, 5] {
            assert_eq!(weyman_k(gf(p), 2, 2).dim(), 8, "p={p}");
        }
    }

    #[test]
    fn weyman_k_annihilates_psi_kernel() {
        for (u, v) in [(2i64, 2i64), (3, 2), (3, 3), (4, 3)] {
            let k = weyman_k(q(), u, v);
            let ann = psi_kernel(q(), u, v).span().kernel_basis();
            assert_eq!(k, ann, "u={u} v={v}");
        }
    }

    #[test]
    fn hermite_small_shapes() {
        let h = hermite_iso(q(), 2, 3);
        assert_eq!(h.domain.dim(), 10);
        assert_eq!(h.codomain.dim(), 10);
        assert_eq!(h.rank(), 10);
        for i in 1..=4i64 {
            let h = hermite_iso(q(), 1, i);
            assert_eq!(h.domain.dim(), i as usize + 1);
            assert_eq!(h.rank(), i as usize + 1);
        }
    }

    #[test]
    fn hermite_preserves_weight() {
        for (d, i) in [(2i64, 2i64), (3, 2), (2, 4)] {
            let h = hermite_iso(q(), d, i);
            let dom = enumerate_basis(&h.domain);
            let cod = enumerate_basis(&h.codomain);
            let shift = (i * (i - 1)) / 2;
            for (r, c, _) in h.matrix.entries() {
                let wd = torus_weight(&h.domain, &dom[*c]);
                let wc = torus_weight(&h.codomain, &cod[*r]);
                assert_eq!(wc, wd + shift, "d={d} i={i}");
            }
        }
    }

    #[test]
    fn nu_degree_one_is_multiplication() {
        let n = nu(q(), 1, 3);
        // x^(1) (x) x^e -> x^(e+1); x^(0) (x) x^e -> x^e
        for e in 0..=3usize {
            assert_eq!(n.matrix.get(e + 1, ravel(&[2, 4], &[1, e])), q().one());
            assert_eq!(n.matrix.get(e, ravel(&[2, 4], &[0, e])), q().one());
        }
    }

    #[test]
    fn nu_shape() {
        let n = nu(q(), 2, 2);
        assert_eq!(n.domain.dim(), 9);
        assert_eq!(n.codomain.dim(), 6);
    }

    #[test]
    fn min_rank_zero_subspace() {
        let t = Subspace::zero(gf(5), 9);
        assert_eq!(min_nonzero_rank(&t, 3, 3, 1_000_000).unwrap(), None);
    }

    #[test]
    fn min_rank_of_psi_kernel() {
        let t5 = psi_kernel(gf(5), 2, 2);
        assert_eq!(min_nonzero_rank(&t5, 3, 3, 1_000_000).unwrap(), Some(3));
        let t2 = psi_kernel(gf(2), 2, 2);
        assert_eq!(min_nonzero_rank(&t2, 3, 3, 1_000_000).unwrap(), Some(2));
    }

    #[test]
    fn min_rank_budget() {
        let t = Subspace::full(gf(101), 4);
        assert!(matches!(
            min_nonzero_rank(&t, 2, 2, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
