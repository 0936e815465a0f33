//! Abelianization via integer Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::fpcore::{Presentation, Word};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`; zero outside the matrix.
    pub fn get(&self, i: usize, j: usize) -> BigInt {
        if i < self.rows && j < self.cols {
            self.data[i * self.cols + j].clone()
        } else {
            BigInt::zero()
        }
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).to_i64()).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vector(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows, "dimension mismatch");
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &x[i] * self.at(i, j)).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.at(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.at(k, k).clone();
        }
        sign * a.at(n - 1, n - 1)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.at(dst, c) + q * self.at(src, c);
            self.set(dst, c, v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.at(r, dst) + q * self.at(r, src);
            self.set(r, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.at(i, c);
            self.set(i, c, v);
        }
    }
}

/// `U * M * V = D`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        diagonal_of(&self.d)
    }
}

fn diagonal_of(d: &IntMatrix) -> Vec<BigInt> {
    (0..d.rows.min(d.cols))
        .map(|i| d.get(i, i))
        .take_while(|x| !x.is_zero())
        .collect()
}

struct Reducer {
    d: IntMatrix,
    uv: Option<(IntMatrix, IntMatrix)>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        if let Some((u, _)) = &mut self.uv {
            u.swap_rows(i, j);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        if let Some((_, v)) = &mut self.uv {
            v.swap_cols(i, j);
        }
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_row(dst, src, q);
        if let Some((u, _)) = &mut self.uv {
            u.add_row(dst, src, q);
        }
    }
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_col(dst, src, q);
        if let Some((_, v)) = &mut self.uv {
            v.add_col(dst, src, q);
        }
    }
    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        if let Some((u, _)) = &mut self.uv {
            u.negate_row(i);
        }
    }

    fn run(&mut self) {
        let (rows, cols) = (self.d.rows, self.d.cols);
        for t in 0..rows.min(cols) {
            loop {
                // Smallest nonzero |entry| in the trailing block.
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = self.d.at(i, j);
                        if !x.is_zero()
                            && best.is_none_or(|(bi, bj)| x.abs() < self.d.at(bi, bj).abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.d.at(t, t).clone();
                let mut clean = true;
                for i in t + 1..rows {
                    let x = self.d.at(i, t);
                    if !x.is_zero() {
                        let q = -x.div_floor(&p);
                        self.add_row(i, t, &q);
                        clean &= self.d.at(i, t).is_zero();
                    }
                }
                for j in t + 1..cols {
                    let x = self.d.at(t, j);
                    if !x.is_zero() {
                        let q = -x.div_floor(&p);
                        self.add_col(j, t, &q);
                        clean &= self.d.at(t, j).is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                // Divisibility repair: pull a non-multiple into row t.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(self.d.at(i, j) % &p).is_zero());
                match bad {
                    Some((i, _)) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.d.at(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut r = Reducer {
        d: m.clone(),
        uv: Some((IntMatrix::identity(m.rows), IntMatrix::identity(m.cols))),
    };
    r.run();
    let (u, v) = r.uv.unwrap();
    Snf { d: r.d, u, v }
}

/// Diagonal of the Smith normal form without the transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer {
        d: m.clone(),
        uv: None,
    };
    r.run();
    diagonal_of(&r.d)
}

/// Entry `(i, j)` is the exponent sum of generator `j` in relator `i`.
pub fn relator_matrix(p: &Presentation) -> IntMatrix {
    let n = p.num_generators();
    let rows: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| (0..n).map(|g| r.exponent_sum(g)).collect())
        .collect();
    let mut m = IntMatrix::zeros(rows.len(), n);
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            m.set(i, j, BigInt::from(x));
        }
    }
    m
}

/// A finitely generated abelian group `Z^free_rank + Z/t1 + Z/t2 + ...` with
/// `t1 | t2 | ...` and every `ti >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct InvariantFactors {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl InvariantFactors {
    pub fn free(rank: usize) -> Self {
        InvariantFactors {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Self {
        InvariantFactors { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, or `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Direct sum, renormalized to a divisor chain.
    pub fn direct_sum(&self, other: &InvariantFactors) -> InvariantFactors {
        let n = self.torsion.len() + other.torsion.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &d) in self.torsion.iter().chain(&other.torsion).enumerate() {
            m.set(i, i, BigInt::from(d));
        }
        let diag = smith_diagonal(&m);
        InvariantFactors {
            free_rank: self.free_rank + other.free_rank,
            torsion: diag
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_u64().expect("torsion fits u64"))
                .collect(),
        }
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn abelian_invariants(p: &Presentation) -> InvariantFactors {
    let diag = smith_diagonal(&relator_matrix(p));
    InvariantFactors {
        free_rank: p.num_generators() - diag.len(),
        torsion: diag
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("torsion coefficient exceeds u64"))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("a curve needs at least one component")]
    NoComponents,
    #[error("component degrees must be positive")]
    ZeroDegree,
}

/// `Z^(r-1) + Z/gcd(degrees)` for a curve with `r` components.
pub fn curve_abelianization(degrees: &[u32]) -> Result<InvariantFactors, AbelianError> {
    if degrees.is_empty() {
        return Err(AbelianError::NoComponents);
    }
    if degrees.contains(&0) {
        return Err(AbelianError::ZeroDegree);
    }
    let g = degrees.iter().fold(0u64, |acc, &d| acc.gcd(&u64::from(d)));
    let torsion = if g > 1 { vec![g] } else { Vec::new() };
    Ok(InvariantFactors {
        free_rank: degrees.len() - 1,
        torsion,
    })
}

/// A presentation of the abelian group: free generators `z1..`, torsion
/// generators `t1..`, all pairwise commuting.
pub fn abelian_presentation(inv: &InvariantFactors) -> Presentation {
    let mut names: Vec<String> = (1..=inv.free_rank).map(|i| format!("z{i}")).collect();
    names.extend((1..=inv.torsion.len()).map(|i| format!("t{i}")));
    let n = names.len();
    let mut rels = Vec::new();
    for (k, &d) in inv.torsion.iter().enumerate() {
        rels.push(Word::power_of(inv.free_rank + k, d as i64));
    }
    for i in 0..n {
        for j in i + 1..n {
            rels.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
        }
    }
    Presentation::new(names, rels).expect("abelian presentation is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpcore::parse_presentation;

    fn big(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn relator_matrix_of_order_320_group() {
        let p = parse_presentation("<a,b | b=a b^4 a, a^2=b^2 a^3 b^2>").unwrap();
        // `b = a b^4 a` is stored as `b a^-1 b^-4 a^-1`, the negated row of
        // `b^-1 a b^4 a`; the row lattice is the same.
        assert_eq!(
            relator_matrix(&p).to_i64_rows().unwrap(),
            vec![vec![-2, -3], vec![-1, -4]]
        );
    }

    #[test]
    fn braid_group_matrix() {
        let p = parse_presentation("<a,b | aba=bab>").unwrap();
        assert_eq!(relator_matrix(&p).to_i64_rows().unwrap(), vec![vec![1, -1]]);
    }

    #[test]
    fn snf_small_cases() {
        let m = big(&[vec![2, 3], vec![-1, -4]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d.to_i64_rows().unwrap(), vec![vec![1, 0], vec![0, 5]]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());

        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).d, z);
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).d, id);
    }

    #[test]
    fn snf_needs_divisibility_repair() {
        let m = big(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_diagonal(&m), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn invariants_examples() {
        let p = parse_presentation("<a,b | b=a b^4 a, a^2=b^2 a^3 b^2>").unwrap();
        assert_eq!(abelian_invariants(&p).to_string(), "Z/5");
        let f3 = parse_presentation("<g1,g2,g3,g4 | g4 g3 g2 g1>").unwrap();
        assert_eq!(abelian_invariants(&f3), InvariantFactors::free(3));
        for n in [3, 5] {
            let g = parse_presentation(&format!("<a,t | a^{n}, t a t^-1 a>")).unwrap();
            assert_eq!(abelian_invariants(&g).to_string(), "Z");
        }
    }

    #[test]
    fn curve_formula() {
        assert_eq!(
            curve_abelianization(&[1, 1, 1, 1]).unwrap().to_string(),
            "Z^3"
        );
        assert_eq!(curve_abelianization(&[5]).unwrap().to_string(), "Z/5");
        assert_eq!(curve_abelianization(&[2, 1, 1]).unwrap().to_string(), "Z^2");
        assert_eq!(
            curve_abelianization(&[2, 2]).unwrap().to_string(),
            "Z + Z/2"
        );
        assert_eq!(curve_abelianization(&[]), Err(AbelianError::NoComponents));
    }

    #[test]
    fn display_forms() {
        assert_eq!(InvariantFactors::default().to_string(), "0");
        assert_eq!(
            InvariantFactors::new(2, vec![2, 6]).to_string(),
            "Z^2 + Z/2 + Z/6"
        );
    }

    #[test]
    fn abelian_presentation_round_trips() {
        for inv in [
            InvariantFactors::new(1, vec![2]),
            InvariantFactors::new(0, vec![5]),
            InvariantFactors::free(3),
        ] {
            assert_eq!(abelian_invariants(&abelian_presentation(&inv)), inv);
        }
    }

    #[test]
    fn direct_sum_normalizes() {
        let a = InvariantFactors::new(0, vec![2]);
        let b = InvariantFactors::new(1, vec![3]);
        assert_eq!(a.direct_sum(&b), InvariantFactors::new(1, vec![6]));
    }
}
