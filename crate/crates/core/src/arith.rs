//! Exact rational scalars, vectors and matrices.
//!
//! Everything downstream (volumes, barycenters, delta, Ehrhart fits) is exact
//! rational arithmetic on arbitrary-precision integers; there is no floating
//! point anywhere in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always in canonical form (reduced, positive
/// denominator); `num_rational` enforces this on construction.
pub type Rational = BigRational;

/// Point or direction with rational coordinates.
pub type QVec = Vec<Rational>;
/// Lattice vector (vertex, facet normal, root).
pub type IntVec = Vec<Int>;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| int(x)).collect()
}

pub fn rat_vec(v: &[i64]) -> QVec {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn to_rat_vec(v: &[Int]) -> QVec {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn zero_vec(n: usize) -> QVec {
    vec![Rational::zero(); n]
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairing of a rational point with an integer normal.
pub fn dot_int(a: &[Rational], b: &[Int]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x * Rational::from_integer(y.clone()))
        .sum()
}

pub fn dot_ii(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Rational, v: &[Rational]) -> QVec {
    v.iter().map(|x| s * x).collect()
}

pub fn neg_vec(v: &[Rational]) -> QVec {
    v.iter().map(|x| -x).collect()
}

/// Serialize as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Vectors print as comma-separated rationals in parentheses.
pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn format_int_vector(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((_, den)) = s.split_once('/') {
        let d = Int::from_str(den.trim()).map_err(|_| Error::Parse {
            line: 0,
            message: format!("bad rational `{s}`"),
        })?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
    }
    Rational::from_str(s).map_err(|_| Error::Parse {
        line: 0,
        message: format!("bad rational `{s}`"),
    })
}

/// Divide an integer vector by the gcd of its entries, preserving direction.
pub fn make_primitive(v: &[Int]) -> Result<IntVec> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Smallest positive `t` such that `t * v` is a primitive integer vector.
/// Returns `(t * v, t)`. Errors on the zero vector.
pub fn primitive_with_scale(v: &[Rational]) -> Result<(IntVec, Rational)> {
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: IntVec = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    let prim: IntVec = ints.iter().map(|x| x / &g).collect();
    Ok((prim, Rational::new(lcm, g)))
}

/// Rectangular matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<QVec>,
    cols: usize,
}

impl RationalMatrix {
    pub fn new(rows: Vec<QVec>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(RationalMatrix { rows, cols })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RationalMatrix::new(rows.iter().map(|r| rat_vec(r)).collect()).unwrap()
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Exact determinant by Bareiss fraction-free elimination on the
    /// row-scaled integer matrix. Keeps intermediate entries small compared
    /// to naive rational elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix {
                rows: self.rows.len(),
                cols: self.cols,
            });
        }
        let n = self.rows.len();
        if n == 0 {
            return Ok(Rational::one());
        }
        // Scale each row to integers, remembering the total scale factor.
        let mut m: Vec<IntVec> = Vec::with_capacity(n);
        let mut scale = Int::one();
        for row in &self.rows {
            let mut lcm = Int::one();
            for x in row {
                lcm = lcm.lcm(x.denom());
            }
            m.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
            scale *= lcm;
        }

        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Bareiss guarantees exact divisibility by the previous pivot.
                    m[i][j] = num / &prev;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        let det_int = m[n - 1][n - 1].clone();
        let det = Rational::new(det_int, scale);
        Ok(if sign < 0 { -det } else { det })
    }

    /// Exact solve of `self * x = rhs`. `Ok(None)` flags a singular matrix;
    /// dimension problems are hard errors.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Option<QVec>> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix {
                rows: self.rows.len(),
                cols: self.cols,
            });
        }
        let n = self.rows.len();
        if rhs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rhs.len(),
            });
        }
        let mut a: Vec<QVec> = self
            .rows
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b.clone());
                r
            })
            .collect();
        for col in 0..n {
            let piv = match (col..n).find(|&r| !a[r][col].is_zero()) {
                Some(p) => p,
                None => return Ok(None),
            };
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..=n {
                        let sub = &f * &a[col][j];
                        a[r][j] = &a[r][j] - &sub;
                    }
                }
            }
        }
        Ok(Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect()))
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<QVec> = self.rows.clone();
        let n_rows = a.len();
        let n_cols = self.cols;
        let mut rank = 0;
        for col in 0..n_cols {
            if rank == n_rows {
                break;
            }
            let piv = match (rank..n_rows).find(|&r| !a[r][col].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            a.swap(rank, piv);
            let inv = a[rank][col].recip();
            for x in a[rank].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n_rows {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..n_cols {
                        let sub = &f * &a[rank][j];
                        a[r][j] = &a[r][j] - &sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// A basis of the null space (exact).
    pub fn null_space(&self) -> Vec<QVec> {
        let mut a: Vec<QVec> = self.rows.clone();
        let n_rows = a.len();
        let n_cols = self.cols;
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..n_cols {
            if rank == n_rows {
                break;
            }
            let piv = match (rank..n_rows).find(|&r| !a[r][col].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            a.swap(rank, piv);
            let inv = a[rank][col].recip();
            for x in a[rank].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n_rows {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n_cols {
                        let sub = &f * &a[rank][j];
                        a[r][j] = &a[r][j] - &sub;
                    }
                }
            }
            pivot_col_of_row.push(col);
            rank += 1;
        }
        let pivot_cols: std::collections::BTreeSet<usize> =
            pivot_col_of_row.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..n_cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = zero_vec(n_cols);
            v[free] = Rational::one();
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Free-function forms of the matrix kernel, matching how most call sites
/// read (`determinant(&rows)` on ad-hoc difference matrices).
pub fn determinant(rows: Vec<QVec>) -> Result<Rational> {
    RationalMatrix::new(rows)?.determinant()
}

pub fn solve_linear(rows: Vec<QVec>, rhs: &[Rational]) -> Result<Option<QVec>> {
    RationalMatrix::new(rows)?.solve(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn determinant_identity() {
        let m = RationalMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert_eq!(m.determinant().unwrap(), rat(1));
    }

    #[test]
    fn determinant_cofactor_case() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant().unwrap(), rat(1));
    }

    #[test]
    fn determinant_sign_under_row_swap() {
        let m = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.determinant().unwrap(), rat(-1));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(
            m.determinant(),
            Err(Error::NonSquareMatrix { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn solve_identity() {
        let m = RationalMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let v = rat_vec(&[7, -3]);
        assert_eq!(m.solve(&v).unwrap().unwrap(), v);
    }

    #[test]
    fn solve_two_by_two() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&rat_vec(&[0, 2])).unwrap().unwrap();
        assert_eq!(x, rat_vec(&[1, -1]));
    }

    #[test]
    fn solve_flags_singular() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&rat_vec(&[1, 1])).unwrap(), None);
    }

    #[test]
    fn solve_rejects_bad_rhs_len() {
        let m = RationalMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert!(m.solve(&rat_vec(&[1])).is_err());
    }

    #[test]
    fn make_primitive_examples() {
        assert_eq!(make_primitive(&int_vec(&[2, 4])).unwrap(), int_vec(&[1, 2]));
        assert_eq!(
            make_primitive(&int_vec(&[1, 0, 0])).unwrap(),
            int_vec(&[1, 0, 0])
        );
        assert_eq!(
            make_primitive(&int_vec(&[-3, 6, -9])).unwrap(),
            int_vec(&[-1, 2, -3])
        );
        assert!(matches!(
            make_primitive(&int_vec(&[0, 0])),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn primitive_with_scale_clears_denominators() {
        let v = vec![frac(1, 2), frac(-3, 4)];
        let (p, t) = primitive_with_scale(&v).unwrap();
        assert_eq!(p, int_vec(&[2, -3]));
        assert_eq!(t, rat(4));
        // t * v really is the primitive vector
        for (pi, vi) in p.iter().zip(&v) {
            assert_eq!(Rational::from_integer(pi.clone()), &t * vi);
        }
    }

    #[test]
    fn rational_round_trip_format() {
        assert_eq!(format_rational(&frac(3, 4)), "3/4");
        assert_eq!(format_rational(&frac(-3, 4)), "-3/4");
        assert_eq!(format_rational(&rat(5)), "5");
        assert_eq!(parse_rational("-3/4").unwrap(), frac(-3, 4));
        assert_eq!(parse_rational("5").unwrap(), rat(5));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_vector(&[frac(1, 12), frac(1, 12)]), "(1/12, 1/12)");
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=12).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn field_laws_hold_exactly(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn determinant_is_multiplicative(
            a in proptest::collection::vec(small_rat(), 9),
            b in proptest::collection::vec(small_rat(), 9),
        ) {
            let ma = RationalMatrix::new(a.chunks(3).map(|c| c.to_vec()).collect()).unwrap();
            let mb = RationalMatrix::new(b.chunks(3).map(|c| c.to_vec()).collect()).unwrap();
            let prod: Vec<QVec> = (0..3).map(|i| {
                (0..3).map(|j| {
                    (0..3).map(|k| &ma.rows()[i][k] * &mb.rows()[k][j]).sum()
                }).collect()
            }).collect();
            let mp = RationalMatrix::new(prod).unwrap();
            prop_assert_eq!(
                mp.determinant().unwrap(),
                ma.determinant().unwrap() * mb.determinant().unwrap()
            );
        }

        #[test]
        fn solve_round_trips(
            a in proptest::collection::vec(small_rat(), 9),
            x in proptest::collection::vec(small_rat(), 3),
        ) {
            let m = RationalMatrix::new(a.chunks(3).map(|c| c.to_vec()).collect()).unwrap();
            prop_assume!(!m.determinant().unwrap().is_zero());
            let rhs: QVec = (0..3).map(|i| dot(&m.rows()[i], &x)).collect();
            prop_assert_eq!(m.solve(&rhs).unwrap().unwrap(), x);
        }
    }
}
