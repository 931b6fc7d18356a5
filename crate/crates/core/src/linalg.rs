//! Exact linear algebra over the rationals and integers.
//!
//! The workhorse is [`Echelon`], an incremental fraction-free row space:
//! rows are primitive integer vectors, elimination uses cross-multiplication
//! followed by content reduction, so no rational arithmetic ever happens on
//! the hot path. Kernels, ranks, quotient bases and normal forms are all
//! derived from it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactpoly::Rational;

/// Sparse integer row: strictly increasing column indices, nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRow {
    pub cols: Vec<(u32, BigInt)>,
}

impl IntRow {
    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    /// Leading (largest) column index.
    pub fn pivot(&self) -> Option<u32> {
        self.cols.last().map(|(c, _)| *c)
    }

    pub fn coeff(&self, col: u32) -> BigInt {
        match self.cols.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.cols[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Divide by the gcd of the entries and normalize the pivot sign to be
    /// positive.
    pub fn normalize(&mut self) {
        if self.cols.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, v) in &self.cols {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        let lead_neg = self.cols.last().unwrap().1.is_negative();
        if lead_neg {
            g = -g;
        }
        if !g.is_one() {
            for (_, v) in &mut self.cols {
                *v = &*v / &g;
            }
        }
    }

    /// `a*self - b*other`, dropping zero entries.
    pub fn combine(&self, a: &BigInt, other: &IntRow, b: &BigInt) -> IntRow {
        let mut out = Vec::with_capacity(self.cols.len() + other.cols.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cols.len() || j < other.cols.len() {
            let next = match (self.cols.get(i), other.cols.get(j)) {
                (Some((c1, v1)), Some((c2, v2))) => {
                    if c1 < c2 {
                        i += 1;
                        (*c1, a * v1)
                    } else if c2 < c1 {
                        j += 1;
                        (*c2, -(b * v2))
                    } else {
                        let v = a * v1 - b * v2;
                        i += 1;
                        j += 1;
                        (*c1, v)
                    }
                }
                (Some((c1, v1)), None) => {
                    i += 1;
                    (*c1, a * v1)
                }
                (None, Some((c2, v2))) => {
                    j += 1;
                    (*c2, -(b * v2))
                }
                (None, None) => unreachable!(),
            };
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        IntRow { cols: out }
    }

    pub fn from_rational(entries: impl IntoIterator<Item = (u32, Rational)>) -> IntRow {
        let entries: Vec<(u32, Rational)> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut lcm = BigInt::one();
        for (_, v) in &entries {
            lcm = lcm.lcm(v.denom());
        }
        let mut cols: Vec<(u32, BigInt)> =
            entries.into_iter().map(|(c, v)| (c, v.numer() * (&lcm / v.denom()))).collect();
        cols.sort_by_key(|(c, _)| *c);
        IntRow { cols }
    }
}

/// Incremental row space in echelon form. The pivot of each stored row is
/// its largest column index; rows are primitive with positive pivots.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<u32, IntRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &IntRow> {
        self.rows.values()
    }

    pub fn contains_pivot(&self, col: u32) -> bool {
        self.rows.contains_key(&col)
    }

    /// Insert a row, reducing it against the current basis. Returns `true`
    /// if the row was independent (rank grew).
    pub fn insert(&mut self, mut row: IntRow) -> bool {
        loop {
            row.normalize();
            let Some(p) = row.pivot() else { return false };
            match self.rows.get(&p) {
                None => {
                    self.rows.insert(p, row);
                    return true;
                }
                Some(r2) => {
                    let a = r2.cols.last().unwrap().1.clone();
                    let b = row.cols.last().unwrap().1.clone();
                    row = row.combine(&a, r2, &b);
                }
            }
        }
    }

    /// Whether the vector lies in the row space.
    pub fn contains(&self, row: &IntRow) -> bool {
        self.reduce_int(row).is_zero()
    }

    fn reduce_int(&self, row: &IntRow) -> IntRow {
        let mut row = row.clone();
        loop {
            row.normalize();
            let Some(p) = row.pivot() else { return row };
            match self.rows.get(&p) {
                None => return row,
                Some(r2) => {
                    let a = r2.cols.last().unwrap().1.clone();
                    let b = row.cols.last().unwrap().1.clone();
                    row = row.combine(&a, r2, &b);
                }
            }
        }
    }

    /// Normal form of a rational vector modulo the row space: subtracts
    /// pivot rows until no pivot column remains. The result is the canonical
    /// representative of the residue class supported on non-pivot columns.
    pub fn reduce(&self, vec: &BTreeMap<u32, Rational>) -> BTreeMap<u32, Rational> {
        let mut v: BTreeMap<u32, Rational> = vec.clone();
        v.retain(|_, c| !c.is_zero());
        loop {
            // largest pivot column still present; eliminating it only
            // touches smaller columns, so this strictly descends
            let Some(col) = v.keys().rev().copied().find(|c| self.rows.contains_key(c)) else {
                return v;
            };
            let r2 = &self.rows[&col];
            let piv = Rational::from_integer(r2.cols.last().unwrap().1.clone());
            let factor = v[&col].clone() / piv;
            for (cc, vv) in &r2.cols {
                let delta = &factor * Rational::from_integer(vv.clone());
                let entry = v.entry(*cc).or_insert_with(Rational::zero);
                *entry -= delta;
                if entry.is_zero() {
                    let cc = *cc;
                    v.remove(&cc);
                }
            }
        }
    }
}

/// Basis of `{c : Σ c_j cols[j] = 0}`, primitive with positive leading
/// entry, ordered by position of the free variable.
pub fn kernel_of_columns(cols: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = cols.len();
    if n == 0 {
        return Vec::new();
    }
    let m = cols[0].len();
    for c in cols {
        assert_eq!(c.len(), m, "inconsistent column heights");
    }
    // Gaussian elimination on the transpose with augmented identity:
    // row_j = (cols[j] | e_j); rows whose left part vanishes give kernel
    // elements in the right part.
    let mut rows: Vec<(Vec<Rational>, Vec<Rational>)> = (0..n)
        .map(|j| {
            let mut id = vec![Rational::zero(); n];
            id[j] = Rational::one();
            (cols[j].clone(), id)
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    for col in 0..m {
        // find first unused row with nonzero entry at col
        let Some(r) = (0..n).find(|&r| !used[r] && !rows[r].0[col].is_zero()) else {
            continue;
        };
        used[r] = true;
        pivot_rows.push(r);
        let pivot = rows[r].0[col].clone();
        let (pr_left, pr_right) = (rows[r].0.clone(), rows[r].1.clone());
        for (s, row) in rows.iter_mut().enumerate() {
            if s == r || row.0[col].is_zero() {
                continue;
            }
            let f = row.0[col].clone() / pivot.clone();
            for k in 0..m {
                let d = &f * &pr_left[k];
                row.0[k] -= d;
            }
            for k in 0..n {
                let d = &f * &pr_right[k];
                row.1[k] -= d;
            }
        }
    }
    let mut out = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if !used[r] && row.0.iter().all(|x| x.is_zero()) && !row.1.iter().all(|x| x.is_zero()) {
            out.push(normalize_rational_vector(&row.1));
        }
    }
    out
}

/// Scale to a primitive integer vector with positive first nonzero entry.
pub fn normalize_rational_vector(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            g = -g;
        }
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Rank of a small dense rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut ech = Echelon::new();
    let mut r = 0;
    for row in rows {
        let int_row = IntRow::from_rational(row.iter().cloned().enumerate().map(|(i, v)| (i as u32, v)));
        if ech.insert(int_row) {
            r += 1;
        }
    }
    r
}

/// Basis of the intersection of the row spaces spanned by `a` and `b`
/// (both given as lists of rational vectors of equal length).
pub fn intersect_row_spaces(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let dim = a[0].len();
    // kernel of [A; -B]^T combination:  Σ s_i a_i - Σ t_j b_j = 0
    let cols: Vec<Vec<Rational>> = a
        .iter()
        .map(|v| v.clone())
        .chain(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()))
        .collect();
    let ker = kernel_of_columns(&cols);
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for k in ker {
        let mut vec = vec![Rational::zero(); dim];
        for (i, s) in k.iter().take(a.len()).enumerate() {
            for (d, x) in a[i].iter().enumerate() {
                vec[d] += s * x;
            }
        }
        let int_row = IntRow::from_rational(vec.iter().cloned().enumerate().map(|(i, v)| (i as u32, v)));
        if ech.insert(int_row) {
            out.push(normalize_rational_vector(&vec));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat_int;

    fn row(v: &[i64]) -> IntRow {
        IntRow {
            cols: v
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| (i as u32, BigInt::from(*x)))
                .collect(),
        }
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[1, 2, 3])));
        assert!(e.insert(row(&[0, 1, 1])));
        assert!(!e.insert(row(&[1, 3, 4]))); // sum of the two
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&row(&[2, 5, 7])));
        assert!(!e.contains(&row(&[0, 0, 1])));
    }

    #[test]
    fn reduce_gives_canonical_normal_form() {
        let mut e = Echelon::new();
        e.insert(row(&[0, 1, 1])); // pivot col 2
        let mut v = BTreeMap::new();
        v.insert(2u32, rat_int(3)); // e2 ≡ -3 e1 ... e2 -> -e1
        let red = e.reduce(&v);
        assert_eq!(red.get(&1), Some(&rat_int(-3)));
        assert_eq!(red.get(&2), None);
    }

    #[test]
    fn kernel_of_rank_one() {
        let cols = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]];
        let k = kernel_of_columns(&cols);
        assert_eq!(k, vec![vec![rat_int(2), rat_int(-1)]]);
    }

    #[test]
    fn intersect_spaces() {
        // span{(1,0,0),(0,1,0)} ∩ span{(1,1,0),(0,0,1)} = span{(1,1,0)}
        let a = vec![vec![rat_int(1), rat_int(0), rat_int(0)], vec![rat_int(0), rat_int(1), rat_int(0)]];
        let b = vec![vec![rat_int(1), rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(0), rat_int(1)]];
        let i = intersect_row_spaces(&a, &b);
        assert_eq!(i, vec![vec![rat_int(1), rat_int(1), rat_int(0)]]);
    }
}
