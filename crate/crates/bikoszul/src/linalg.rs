//! Sparse exact linear algebra: rank, reduced row echelon form, kernels,
//! solving, and homology of a pair of composable maps.
//!
//! Over the rationals, elimination runs on gcd-normalized integer rows (each
//! row is scaled to a primitive integer vector after every combination step),
//! so coefficient growth stays controlled and no floating point is ever
//! involved. Over GF(p) with p < 2^31 all products fit in 64-bit
//! intermediates. Pivoting is deterministic: the next pivot column is the
//! smallest column carrying a candidate row, and among candidates the sparsest
//! row wins with ties broken by insertion order. Reduced row echelon form is
//! unique, so `Subspace` equality is literal data comparison.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeMap;

/// A sparse exact matrix acting on column vectors. Entries are stored as
/// row-major sorted triplets with no explicit zeros and at most one entry per
/// position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, entries: Vec::new() }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let entries = (0..n).map(|i| (i, i, field.one())).collect();
        Matrix { field, rows: n, cols: n, entries }
    }

    pub fn from_triplets(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut entries: Vec<(usize, usize, Scalar)>,
    ) -> Result<Self> {
        entries.retain(|(_, _, s)| !s.is_zero());
        for (r, c, s) in &entries {
            if *r >= rows || *c >= cols {
                return Err(Error::EntryOutOfBounds(*r, *c));
            }
            if !field.accepts(s) {
                return Err(Error::MixedField(format!(
                    "entry ({r}, {c}) does not belong to characteristic {}",
                    field.characteristic()
                )));
            }
        }
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::DuplicateEntry(w[0].0, w[0].1));
            }
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn from_triplets_i64(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, i64)>,
    ) -> Result<Self> {
        let entries = entries
            .into_iter()
            .map(|(r, c, v)| (r, c, field.from_i64(v)))
            .collect();
        Self::from_triplets(field, rows, cols, entries)
    }

    pub fn from_dense_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::new();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has length {} expected {cols}",
                    row.len()
                )));
            }
            for (j, s) in row.into_iter().enumerate() {
                if !s.is_zero() {
                    entries.push((i, j, s));
                }
            }
        }
        Self::from_triplets(field, nrows, cols, entries)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.entries.binary_search_by_key(&(r, c), |(er, ec, _)| (*er, *ec)) {
            Ok(idx) => self.entries[idx].2.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn dense_row(&self, r: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.cols];
        for (er, ec, s) in &self.entries {
            if *er == r {
                out[*ec] = s.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries: Vec<(usize, usize, Scalar)> = self
            .entries
            .iter()
            .map(|(r, c, s)| (*c, *r, s.clone()))
            .collect();
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        Matrix { field: self.field, rows: self.cols, cols: self.rows, entries }
    }

    /// Sparse rows view: for each row index, the sorted (col, value) pairs.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (r, c, s) in &self.entries {
            rows[*r].push((*c, s.clone()));
        }
        rows
    }

    /// Matrix product self * rhs (composition of maps when acting on columns).
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::MixedField("product of matrices over different fields".into()));
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let rhs_rows = rhs.sparse_rows();
        let mut entries = Vec::new();
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut current_row = usize::MAX;
        let flush = |row: usize, acc: &mut BTreeMap<usize, Scalar>, entries: &mut Vec<(usize, usize, Scalar)>| {
            for (c, v) in std::mem::take(acc) {
                if !v.is_zero() {
                    entries.push((row, c, v));
                }
            }
        };
        for (r, c, s) in &self.entries {
            if *r != current_row {
                if current_row != usize::MAX {
                    flush(current_row, &mut acc, &mut entries);
                }
                current_row = *r;
            }
            for (jc, jv) in &rhs_rows[*c] {
                let term = self.field.mul(s, jv);
                acc.entry(*jc)
                    .and_modify(|e| *e = self.field.add(e, &term))
                    .or_insert(term);
            }
        }
        if current_row != usize::MAX {
            flush(current_row, &mut acc, &mut entries);
        }
        Matrix::from_triplets(self.field, self.rows, rhs.cols, entries)
    }

    /// Entrywise scalar multiple.
    pub fn scale(&self, s: &Scalar) -> Matrix {
        if s.is_zero() {
            return Matrix::zero(self.field, self.rows, self.cols);
        }
        let entries = self
            .entries
            .iter()
            .map(|(r, c, v)| (*r, *c, self.field.mul(v, s)))
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Matrix {
        let minus_one = self.field.from_i64(-1);
        self.scale(&minus_one)
    }

    /// Kronecker product, row and column indices left-major so it matches the
    /// tensor-basis enumeration.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "kron over different fields");
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (r1, c1, s1) in &self.entries {
            for (r2, c2, s2) in &other.entries {
                entries.push((
                    r1 * other.rows + r2,
                    c1 * other.cols + c2,
                    self.field.mul(s1, s2),
                ));
            }
        }
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        Matrix {
            field: self.field,
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            entries,
        }
    }

    /// Stack other below self (same column count).
    pub fn stack_vertical(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedField("stacking matrices over different fields".into()));
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "stack {} cols with {} cols",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(
            other
                .entries
                .iter()
                .map(|(r, c, s)| (*r + self.rows, *c, s.clone())),
        );
        Matrix::from_triplets(self.field, self.rows + other.rows, self.cols, entries)
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (r, c, s) in &self.entries {
            if !v[*c].is_zero() {
                let term = self.field.mul(s, &v[*c]);
                out[*r] = self.field.add(&out[*r], &term);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        match self.to_elim() {
            Elim::Q(rows) => echelon_q(rows, false).pivots.len(),
            Elim::P(p, rows) => echelon_p(p, rows, false).pivots.len(),
        }
    }

    /// Unique reduced row echelon form (zero rows dropped).
    pub fn rref(&self) -> Matrix {
        let (pivots, rows) = self.rref_rows();
        let mut entries = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (c, s) in row {
                entries.push((i, *c, s.clone()));
            }
        }
        let _ = pivots;
        Matrix::from_triplets(self.field, rows.len(), self.cols, entries)
            .expect("rref rows are valid")
    }

    fn rref_rows(&self) -> (Vec<usize>, Vec<Vec<(usize, Scalar)>>) {
        match self.to_elim() {
            Elim::Q(rows) => {
                let ech = echelon_q(rows, true);
                let out = ech
                    .rows
                    .iter()
                    .map(|row| {
                        let lead = &row[0].1;
                        row.iter()
                            .map(|(c, v)| {
                                (*c, Scalar::Rat(BigRational::new(v.clone(), lead.clone())))
                            })
                            .collect()
                    })
                    .collect();
                (ech.pivots, out)
            }
            Elim::P(p, rows) => {
                let ech = echelon_p(p, rows, true);
                let field = self.field;
                let out = ech
                    .rows
                    .iter()
                    .map(|row| {
                        let inv = field.inv(&Scalar::Mod(row[0].1));
                        row.iter()
                            .map(|(c, v)| (*c, field.mul(&Scalar::Mod(*v), &inv)))
                            .collect()
                    })
                    .collect();
                (ech.pivots, out)
            }
        }
    }

    /// Canonical basis of the null space (vectors x with self * x = 0).
    pub fn kernel_basis(&self) -> Subspace {
        let (pivots, rows) = self.rref_rows();
        let pivot_set: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut kernel_rows: Vec<Vec<Scalar>> = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, row) in rows.iter().enumerate() {
                if let Some((_, s)) = row.iter().find(|(c, _)| *c == free) {
                    v[pivots[i]] = self.field.neg(s);
                }
            }
            kernel_rows.push(v);
        }
        let m = Matrix::from_dense_rows(self.field, self.cols, kernel_rows)
            .expect("kernel rows are valid");
        Subspace::from_span(&m)
    }

    /// Canonical column space (span of the columns) as a subspace of k^rows.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_span(&self.transpose())
    }

    /// Deterministic particular solution of self * x = b, or None.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let rhs = Matrix::from_dense_rows(self.field, b.len(), vec![b.to_vec()])?.transpose();
        let mut sols = self.solve_columns(&rhs)?;
        Ok(sols.pop().expect("one rhs column"))
    }

    /// Solve self * x = b for every column b of `rhs` in one elimination pass.
    /// Entry i of the result is None when column i has no solution.
    pub fn solve_columns(&self, rhs: &Matrix) -> Result<Vec<Option<Vec<Scalar>>>> {
        if self.field != rhs.field {
            return Err(Error::MixedField("solve with rhs over a different field".into()));
        }
        if rhs.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, rhs.rows
            )));
        }
        let k = rhs.cols;
        // augment columns [0..cols) with rhs columns [cols..cols+k)
        let mut aug_entries = self.entries.clone();
        aug_entries.extend(
            rhs.entries
                .iter()
                .map(|(r, c, s)| (*r, self.cols + *c, s.clone())),
        );
        let aug = Matrix::from_triplets(self.field, self.rows, self.cols + k, aug_entries)?;
        let (pivots, rows) = aug.rref_rows();
        let mut inconsistent = vec![false; k];
        let mut solutions = vec![vec![self.field.zero(); self.cols]; k];
        for (i, row) in rows.iter().enumerate() {
            if pivots[i] >= self.cols {
                // obstruction row: zero on the real columns
                for (c, s) in row {
                    if *c >= self.cols && !s.is_zero() {
                        inconsistent[*c - self.cols] = true;
                    }
                }
            } else {
                for (c, s) in row {
                    if *c >= self.cols {
                        solutions[*c - self.cols][pivots[i]] = s.clone();
                    }
                }
            }
        }
        Ok((0..k)
            .map(|t| {
                if inconsistent[t] {
                    None
                } else {
                    Some(std::mem::take(&mut solutions[t]))
                }
            })
            .collect())
    }

    fn to_elim(&self) -> Elim {
        if self.field.is_rational() {
            let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); self.rows];
            for (r, c, s) in &self.entries {
                let Scalar::Rat(x) = s else { unreachable!() };
                rows[*r].push((*c, x.clone()));
            }
            let rows = rows
                .into_iter()
                .map(|row| {
                    // clear denominators, then make primitive
                    let mut lcm = BigInt::one();
                    for (_, x) in &row {
                        lcm = lcm.lcm(x.denom());
                    }
                    let ints: Vec<(usize, BigInt)> = row
                        .into_iter()
                        .map(|(c, x)| (c, x.numer() * (&lcm / x.denom())))
                        .collect();
                    make_primitive(ints)
                })
                .filter(|r| !r.is_empty())
                .collect();
            Elim::Q(rows)
        } else {
            let p = self.field.characteristic();
            let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); self.rows];
            for (r, c, s) in &self.entries {
                let Scalar::Mod(x) = s else { unreachable!() };
                rows[*r].push((*c, *x));
            }
            Elim::P(p, rows.into_iter().filter(|r| !r.is_empty()).collect())
        }
    }

    fn rows_as_rationals(&self) -> Vec<Vec<(usize, BigRational)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (r, c, s) in &self.entries {
            let Scalar::Rat(x) = s else { unreachable!() };
            rows[*r].push((*c, x.clone()));
        }
        rows
    }

    /// Rows scaled so every entry is integral (char 0) or left as-is (GF(p)).
    /// Row scaling does not change the row span, so this is a convenient
    /// spanning set with small integer coordinates.
    pub fn rows_integer_scaled(&self) -> Vec<Vec<(usize, Scalar)>> {
        if !self.field.is_rational() {
            return self.sparse_rows();
        }
        self.rows_as_rationals()
            .into_iter()
            .map(|row| {
                let mut lcm = BigInt::one();
                for (_, x) in &row {
                    lcm = lcm.lcm(x.denom());
                }
                row.into_iter()
                    .map(|(c, x)| {
                        let n = x.numer() * (&lcm / x.denom());
                        (c, Scalar::Rat(BigRational::from_integer(n)))
                    })
                    .collect()
            })
            .collect()
    }
}

enum Elim {
    Q(Vec<Vec<(usize, BigInt)>>),
    P(u64, Vec<Vec<(usize, u64)>>),
}

struct Echelon<T> {
    pivots: Vec<usize>,
    rows: Vec<Vec<(usize, T)>>,
}

fn make_primitive(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    row.retain(|(_, v)| !v.is_zero());
    if row.is_empty() {
        return row;
    }
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in &mut row {
            *v = &*v / &g;
        }
    }
    row
}

/// target := pivot_lead * target - target_lead * pivot, then primitive.
fn combine_q(
    target: &[(usize, BigInt)],
    pivot: &[(usize, BigInt)],
) -> Vec<(usize, BigInt)> {
    let pl = &pivot[0].1;
    let tl = &target[0].1;
    let g = pl.gcd(tl);
    let a = pl / &g; // multiplies target
    let b = tl / &g; // multiplies pivot
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < target.len() || j < pivot.len() {
        match (target.get(i), pivot.get(j)) {
            (Some((tc, tv)), Some((pc, pv))) if tc == pc => {
                let v = tv * &a - pv * &b;
                if !v.is_zero() {
                    out.push((*tc, v));
                }
                i += 1;
                j += 1;
            }
            (Some((tc, tv)), Some((pc, _))) if tc < pc => {
                out.push((*tc, tv * &a));
                i += 1;
            }
            (Some(_), Some((pc, pv))) => {
                out.push((*pc, -(pv * &b)));
                j += 1;
            }
            (Some((tc, tv)), None) => {
                out.push((*tc, tv * &a));
                i += 1;
            }
            (None, Some((pc, pv))) => {
                out.push((*pc, -(pv * &b)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    make_primitive(out)
}

/// target := target - target_lead * pivot, where pivot is normalized to lead 1.
fn combine_p(
    p: u64,
    target: &[(usize, u64)],
    pivot: &[(usize, u64)],
    target_coeff: u64,
) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < target.len() || j < pivot.len() {
        match (target.get(i), pivot.get(j)) {
            (Some((tc, tv)), Some((pc, pv))) if tc == pc => {
                let v = (*tv + p - (target_coeff * *pv) % p) % p;
                if v != 0 {
                    out.push((*tc, v));
                }
                i += 1;
                j += 1;
            }
            (Some((tc, tv)), Some((pc, _))) if tc < pc => {
                out.push((*tc, *tv));
                i += 1;
            }
            (Some(_), Some((pc, pv))) => {
                let v = (p - (target_coeff * *pv) % p) % p;
                if v != 0 {
                    out.push((*pc, v));
                }
                j += 1;
            }
            (Some((tc, tv)), None) => {
                out.push((*tc, *tv));
                i += 1;
            }
            (None, Some((pc, pv))) => {
                let v = (p - (target_coeff * *pv) % p) % p;
                if v != 0 {
                    out.push((*pc, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn echelon_q(rows: Vec<Vec<(usize, BigInt)>>, reduce: bool) -> Echelon<BigInt> {
    let mut buckets: BTreeMap<usize, Vec<Vec<(usize, BigInt)>>> = BTreeMap::new();
    for row in rows {
        if !row.is_empty() {
            buckets.entry(row[0].0).or_default().push(row);
        }
    }
    let mut pivots = Vec::new();
    let mut out_rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
    while let Some((&col, _)) = buckets.iter().next() {
        let mut candidates = buckets.remove(&col).expect("bucket exists");
        let best = candidates
            .iter()
            .enumerate()
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i)
            .expect("nonempty bucket");
        let pivot = candidates.swap_remove(best);
        for other in candidates {
            let reduced = combine_q(&other, &pivot);
            if !reduced.is_empty() {
                buckets.entry(reduced[0].0).or_default().push(reduced);
            }
        }
        pivots.push(col);
        out_rows.push(pivot);
    }
    if reduce {
        // back-substitute bottom-up: each row clears its entries at later pivots
        for i in (0..out_rows.len()).rev() {
            for j in (i + 1)..out_rows.len() {
                let pj = pivots[j];
                if out_rows[i].iter().any(|(c, _)| *c == pj) {
                    let (left, right) = out_rows.split_at_mut(j);
                    left[i] = combine_q_keep_lead(&left[i], &right[0], pj);
                }
            }
        }
    }
    Echelon { pivots, rows: out_rows }
}

/// target := pivot_lead * target - target[col] * pivot; eliminates column
/// `col` from target without disturbing the target's leading position.
fn combine_q_keep_lead(
    target: &[(usize, BigInt)],
    pivot: &[(usize, BigInt)],
    col: usize,
) -> Vec<(usize, BigInt)> {
    let pl = &pivot[0].1;
    let tc = &target.iter().find(|(c, _)| *c == col).expect("entry present").1;
    let g = pl.gcd(tc);
    let a = pl / &g;
    let b = tc / &g;
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < target.len() || j < pivot.len() {
        match (target.get(i), pivot.get(j)) {
            (Some((tcol, tv)), Some((pcol, pv))) if tcol == pcol => {
                let v = tv * &a - pv * &b;
                if !v.is_zero() {
                    out.push((*tcol, v));
                }
                i += 1;
                j += 1;
            }
            (Some((tcol, tv)), Some((pcol, _))) if tcol < pcol => {
                out.push((*tcol, tv * &a));
                i += 1;
            }
            (Some(_), Some((pcol, pv))) => {
                out.push((*pcol, -(pv * &b)));
                j += 1;
            }
            (Some((tcol, tv)), None) => {
                out.push((*tcol, tv * &a));
                i += 1;
            }
            (None, Some((pcol, pv))) => {
                out.push((*pcol, -(pv * &b)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    make_primitive(out)
}

fn echelon_p(p: u64, rows: Vec<Vec<(usize, u64)>>, reduce: bool) -> Echelon<u64> {
    let inv = |a: u64| -> u64 {
        // Fermat: a^(p-2) mod p
        let mut base = a % p;
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
    let normalize = |mut row: Vec<(usize, u64)>| -> Vec<(usize, u64)> {
        if row.is_empty() {
            return row;
        }
        let s = inv(row[0].1);
        if s != 1 {
            for (_, v) in &mut row {
                *v = *v * s % p;
            }
        }
        row
    };
    let mut buckets: BTreeMap<usize, Vec<Vec<(usize, u64)>>> = BTreeMap::new();
    for row in rows {
        if !row.is_empty() {
            buckets.entry(row[0].0).or_default().push(row);
        }
    }
    let mut pivots = Vec::new();
    let mut out_rows: Vec<Vec<(usize, u64)>> = Vec::new();
    while let Some((&col, _)) = buckets.iter().next() {
        let mut candidates = buckets.remove(&col).expect("bucket exists");
        let best = candidates
            .iter()
            .enumerate()
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i)
            .expect("nonempty bucket");
        let pivot = normalize(candidates.swap_remove(best));
        for other in candidates {
            let coeff = other[0].1;
            let reduced = combine_p(p, &other, &pivot, coeff);
            if !reduced.is_empty() {
                buckets.entry(reduced[0].0).or_default().push(reduced);
            }
        }
        pivots.push(col);
        out_rows.push(pivot);
    }
    if reduce {
        for i in (0..out_rows.len()).rev() {
            for j in (i + 1)..out_rows.len() {
                let pj = pivots[j];
                let coeff = out_rows[i]
                    .iter()
                    .find(|(c, _)| *c == pj)
                    .map(|(_, v)| *v);
                if let Some(coeff) = coeff {
                    let (left, right) = out_rows.split_at_mut(j);
                    left[i] = combine_p(p, &left[i], &right[0], coeff);
                }
            }
        }
    }
    Echelon { pivots, rows: out_rows }
}

/// A linear subspace of k^ambient, stored as a full-row-rank spanning matrix
/// in reduced row echelon form. Two subspaces are equal iff their stored data
/// are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    span: Matrix,
}

impl Subspace {
    /// Canonicalize an arbitrary spanning matrix (rows span the subspace).
    pub fn from_span(m: &Matrix) -> Subspace {
        Subspace { ambient: m.ncols(), span: m.rref() }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace { ambient, span: Matrix::zero(field, 0, ambient) }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace { ambient, span: Matrix::identity(field, ambient) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.span.nrows()
    }

    pub fn field(&self) -> FieldSpec {
        self.span.field()
    }

    pub fn span(&self) -> &Matrix {
        &self.span
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Coordinates of v in the canonical spanning rows, if v lies in the span.
    /// Because the span is reduced, the coordinates are just the entries of v
    /// at the pivot columns; the result is verified by substitution.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient {
            return None;
        }
        let field = self.field();
        let rows = self.span.sparse_rows();
        let mut residual: BTreeMap<usize, Scalar> = v
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(c, s)| (c, s.clone()))
            .collect();
        let mut coords = Vec::with_capacity(rows.len());
        for row in &rows {
            let pivot_col = row[0].0;
            let coeff = residual.get(&pivot_col).cloned().unwrap_or_else(|| field.zero());
            if !coeff.is_zero() {
                for (c, s) in row {
                    let term = field.mul(&coeff, s);
                    let cur = residual.remove(c).unwrap_or_else(|| field.zero());
                    let next = field.sub(&cur, &term);
                    if !next.is_zero() {
                        residual.insert(*c, next);
                    }
                }
            }
            coords.push(coeff);
        }
        if residual.is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        if other.ambient != self.ambient {
            return false;
        }
        if other.dim() == 0 {
            return true;
        }
        let stacked = self.span.stack_vertical(&other.span).expect("same ambient");
        stacked.rank() == self.dim()
    }

    /// Spanning rows scaled to integer coordinates (char 0) for downstream
    /// matrix assembly.
    pub fn span_rows_integer_scaled(&self) -> Vec<Vec<(usize, Scalar)>> {
        self.span.rows_integer_scaled()
    }
}

/// Dimension of the middle homology ker(g)/im(f) of a three-term complex
/// A --f--> B --g--> C with g∘f = 0 (checked). Since im f ⊆ ker g this equals
/// nullity(g) − rank(f).
pub fn homology_dim(f: &Matrix, g: &Matrix) -> Result<usize> {
    if f.field() != g.field() {
        return Err(Error::MixedField("homology of maps over different fields".into()));
    }
    if g.ncols() != f.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "homology: middle space is {} from g but {} from f",
            g.ncols(),
            f.nrows()
        )));
    }
    let composite = g.mul(f)?;
    if !composite.is_zero() {
        return Err(Error::ComplexError(format!(
            "g*f has {} nonzero entries",
            composite.nnz()
        )));
    }
    let nullity_g = g.ncols() - g.rank();
    let rank_f = f.rank();
    Ok(nullity_g - rank_f)
}
