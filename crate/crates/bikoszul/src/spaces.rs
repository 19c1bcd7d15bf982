//! Symbolic descriptors for the finite-dimensional spaces built from the
//! two-dimensional space U = k{1, x}: symmetric powers Sym^d U, divided
//! powers D^d U, exterior powers, and composites, each with a deterministic
//! canonical basis enumeration.
//!
//! Enumeration orders are total and fixed: exponents ascending for Sym/D,
//! index sets in lexicographic order for wedges, multisets in lexicographic
//! order on their weakly increasing tuples, tensor indices left-major, and
//! direct sums component by component. A wedge of a direct sum enumerates by
//! blocks: the splitting of the index set across summands, with the power on
//! the first summand descending.

use crate::field::binom_usize;
use std::collections::HashMap;
use std::fmt;

/// A symbolic finite-dimensional space. Negative-degree symmetric and divided
/// powers normalize to the zero space, so structure maps with empty domains
/// degrade to zero maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceExpr {
    /// Sym^d U, basis x^0, ..., x^d.
    SymU(i64),
    /// D^d U, basis x^(0), ..., x^(d), dual to the Sym^d U basis.
    DivU(i64),
    /// Exterior power of an inner space.
    WedgeOf(usize, Box<SpaceExpr>),
    /// Symmetric power of an inner space.
    SymOf(usize, Box<SpaceExpr>),
    /// Tensor product, indices left-major.
    Tensor(Vec<SpaceExpr>),
    /// Direct sum, components concatenated.
    Sum(Vec<SpaceExpr>),
}

/// Canonical label of a basis vector of a `SpaceExpr`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    /// Exponent k: x^k in Sym^d U or x^(k) in D^d U.
    Exp(usize),
    /// Strictly increasing index set into the inner basis (wedge).
    Set(Vec<usize>),
    /// Weakly increasing index multiset into the inner basis (Sym composite).
    Multi(Vec<usize>),
    /// One index per tensor factor.
    Tuple(Vec<BasisIndex>),
    /// Tagged component of a direct sum.
    Comp(usize, Box<BasisIndex>),
}

impl SpaceExpr {
    pub fn wedge(i: usize, inner: SpaceExpr) -> SpaceExpr {
        SpaceExpr::WedgeOf(i, Box::new(inner))
    }

    pub fn sym_of(d: usize, inner: SpaceExpr) -> SpaceExpr {
        SpaceExpr::SymOf(d, Box::new(inner))
    }

    pub fn tensor2(a: SpaceExpr, b: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Tensor(vec![a, b])
    }

    pub fn dim(&self) -> usize {
        match self {
            SpaceExpr::SymU(d) | SpaceExpr::DivU(d) => {
                if *d < 0 {
                    0
                } else {
                    *d as usize + 1
                }
            }
            SpaceExpr::WedgeOf(i, inner) => binom_usize(inner.dim(), *i),
            SpaceExpr::SymOf(d, inner) => {
                if *d == 0 {
                    1
                } else {
                    binom_usize(inner.dim() + d - 1, *d)
                }
            }
            SpaceExpr::Tensor(parts) => parts.iter().map(|p| p.dim()).product(),
            SpaceExpr::Sum(parts) => parts.iter().map(|p| p.dim()).sum(),
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::SymU(d) => write!(f, "Sym^{d}(U)"),
            SpaceExpr::DivU(d) => write!(f, "D^{d}(U)"),
            SpaceExpr::WedgeOf(i, inner) => write!(f, "Wedge^{i}({inner})"),
            SpaceExpr::SymOf(d, inner) => write!(f, "Sym^{d}({inner})"),
            SpaceExpr::Tensor(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", s.join(" (x) "))
            }
            SpaceExpr::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", s.join(" (+) "))
            }
        }
    }
}

/// Strictly increasing k-subsets of {0..n}, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Weakly increasing k-tuples over {0..n}, lexicographic (multisets).
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != n - 1 {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[i];
        }
    }
}

/// Compositions (u_1, ..., u_parts) of total, each u_j bounded by caps[j],
/// ordered with the first component descending, then recursively.
fn bounded_compositions(total: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    if caps.is_empty() {
        return if total == 0 { vec![vec![]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let hi = total.min(caps[0]);
    for u in (0..=hi).rev() {
        for rest in bounded_compositions(total - u, &caps[1..]) {
            let mut v = Vec::with_capacity(caps.len());
            v.push(u);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

pub fn enumerate_basis(space: &SpaceExpr) -> Vec<BasisIndex> {
    match space {
        SpaceExpr::SymU(d) | SpaceExpr::DivU(d) => {
            if *d < 0 {
                Vec::new()
            } else {
                (0..=*d as usize).map(BasisIndex::Exp).collect()
            }
        }
        SpaceExpr::WedgeOf(i, inner) => match inner.as_ref() {
            SpaceExpr::Sum(parts) => {
                // block enumeration realizing the splitting of a wedge of a
                // direct sum across the summands
                let dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
                let offsets: Vec<usize> = dims
                    .iter()
                    .scan(0usize, |acc, d| {
                        let o = *acc;
                        *acc += d;
                        Some(o)
                    })
                    .collect();
                let mut out = Vec::new();
                for comp in bounded_compositions(*i, &dims) {
                    let per_part: Vec<Vec<Vec<usize>>> =
                        comp.iter().zip(&dims).map(|(u, d)| combinations(*d, *u)).collect();
                    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
                    for (j, sets) in per_part.iter().enumerate() {
                        let mut next = Vec::new();
                        for prefix in &stack {
                            for s in sets {
                                let mut merged = prefix.clone();
                                merged.extend(s.iter().map(|x| x + offsets[j]));
                                next.push(merged);
                            }
                        }
                        stack = next;
                    }
                    out.extend(stack.into_iter().map(BasisIndex::Set));
                }
                out
            }
            _ => combinations(inner.dim(), *i)
                .into_iter()
                .map(BasisIndex::Set)
                .collect(),
        },
        SpaceExpr::SymOf(d, inner) => multisets(inner.dim(), *d)
            .into_iter()
            .map(BasisIndex::Multi)
            .collect(),
        SpaceExpr::Tensor(parts) => {
            let bases: Vec<Vec<BasisIndex>> = parts.iter().map(enumerate_basis).collect();
            let mut out: Vec<Vec<BasisIndex>> = vec![Vec::new()];
            for basis in &bases {
                let mut next = Vec::new();
                for prefix in &out {
                    for b in basis {
                        let mut t = prefix.clone();
                        t.push(b.clone());
                        next.push(t);
                    }
                }
                out = next;
            }
            out.into_iter().map(BasisIndex::Tuple).collect()
        }
        SpaceExpr::Sum(parts) => {
            let mut out = Vec::new();
            for (c, part) in parts.iter().enumerate() {
                out.extend(
                    enumerate_basis(part)
                        .into_iter()
                        .map(|b| BasisIndex::Comp(c, Box::new(b))),
                );
            }
            out
        }
    }
}

/// Index lookup for a space's canonical enumeration.
pub fn basis_index_map(space: &SpaceExpr) -> HashMap<BasisIndex, usize> {
    enumerate_basis(space)
        .into_iter()
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect()
}

/// Left-major flat index of a tuple of per-factor indices.
pub fn ravel(dims: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(dims.len(), idx.len());
    let mut out = 0;
    for (d, i) in dims.iter().zip(idx) {
        debug_assert!(i < d);
        out = out * d + i;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_u_basis() {
        let b = enumerate_basis(&SpaceExpr::SymU(2));
        assert_eq!(b, vec![BasisIndex::Exp(0), BasisIndex::Exp(1), BasisIndex::Exp(2)]);
        assert_eq!(SpaceExpr::SymU(2).dim(), 3);
        assert_eq!(SpaceExpr::SymU(-1).dim(), 0);
        assert!(enumerate_basis(&SpaceExpr::SymU(-3)).is_empty());
    }

    #[test]
    fn wedge_of_sym2() {
        let w = SpaceExpr::wedge(2, SpaceExpr::SymU(2));
        let b = enumerate_basis(&w);
        assert_eq!(
            b,
            vec![
                BasisIndex::Set(vec![0, 1]),
                BasisIndex::Set(vec![0, 2]),
                BasisIndex::Set(vec![1, 2])
            ]
        );
        assert_eq!(w.dim(), 3);
    }

    #[test]
    fn wedge_of_sum_blocks() {
        // wedge^2 of a (2+2)-dimensional sum: blocks of sizes 1, 4, 1
        let w = SpaceExpr::wedge(
            2,
            SpaceExpr::Sum(vec![SpaceExpr::SymU(1), SpaceExpr::SymU(1)]),
        );
        let b = enumerate_basis(&w);
        assert_eq!(w.dim(), 6);
        assert_eq!(b.len(), 6);
        assert_eq!(b[0], BasisIndex::Set(vec![0, 1]));
        assert_eq!(
            &b[1..5],
            &[
                BasisIndex::Set(vec![0, 2]),
                BasisIndex::Set(vec![0, 3]),
                BasisIndex::Set(vec![1, 2]),
                BasisIndex::Set(vec![1, 3])
            ]
        );
        assert_eq!(b[5], BasisIndex::Set(vec![2, 3]));
    }

    #[test]
    fn sym_of_dims_match_enumeration() {
        for d in 0..5usize {
            for inner_deg in 0..4i64 {
                let s = SpaceExpr::sym_of(d, SpaceExpr::DivU(inner_deg));
                assert_eq!(s.dim(), enumerate_basis(&s).len(), "{s}");
            }
        }
    }

    #[test]
    fn tensor_left_major() {
        let t = SpaceExpr::tensor2(SpaceExpr::SymU(1), SpaceExpr::SymU(2));
        let b = enumerate_basis(&t);
        assert_eq!(b.len(), 6);
        assert_eq!(
            b[0],
            BasisIndex::Tuple(vec![BasisIndex::Exp(0), BasisIndex::Exp(0)])
        );
        assert_eq!(
            b[1],
            BasisIndex::Tuple(vec![BasisIndex::Exp(0), BasisIndex::Exp(1)])
        );
        assert_eq!(
            b[3],
            BasisIndex::Tuple(vec![BasisIndex::Exp(1), BasisIndex::Exp(0)])
        );
        assert_eq!(ravel(&[2, 3], &[1, 0]), 3);
    }

    #[test]
    fn wedge_dim_of_composites() {
        // dim Sym^d(D^i U) = dim Wedge^i(Sym^(d+i-1) U) = C(d+i, i)
        for d in 1..=6i64 {
            for i in 1..=6usize {
                if d as usize + i > 8 {
                    continue;
                }
                let lhs = SpaceExpr::sym_of(d as usize, SpaceExpr::DivU(i as i64));
                let rhs = SpaceExpr::wedge(i, SpaceExpr::SymU(d + i as i64 - 1));
                assert_eq!(lhs.dim(), rhs.dim());
                assert_eq!(lhs.dim(), binom_usize(d as usize + i, i));
            }
        }
    }
}
