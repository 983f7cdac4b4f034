//! Lattice-point enumeration in dilations and the Ehrhart-type fits.
//!
//! Counting walks the integer bounding box of `k·Δ` in row-major order; the
//! last coordinate is collapsed to an exact interval per facet, so counts and
//! coordinate sums cost `O(side^(n-1) · facets)` without ever losing
//! exactness. The point-listing variants still enumerate cell by cell and are
//! cross-checked against the interval path in tests.

use num_traits::{One, Signed, Zero};

use crate::arith::{rat, scale_vec, Int, IntVec, QVec, Rational};
use crate::error::{Error, Result};
use crate::polynomial::{interpolate, interpolate_vector, Polynomial, VectorPolynomial};
use crate::polytope::{Halfspace, LatticePolytope};

/// Cap on bounding-box cells before a clean resource error.
pub const DEFAULT_CELL_LIMIT: u128 = 100_000_000;

fn check_dilation(k: i64) -> Result<Int> {
    if k < 1 {
        return Err(Error::BadDilation { got: k });
    }
    Ok(Int::from(k))
}

/// Integer bounding box of `k * conv(vertices)`, component-wise.
fn bounding_box(dim: usize, vertices: &[IntVec], k: &Int) -> (IntVec, IntVec) {
    let mut lo = vertices[0].clone();
    let mut hi = vertices[0].clone();
    for v in vertices {
        for j in 0..dim {
            if v[j] < lo[j] {
                lo[j] = v[j].clone();
            }
            if v[j] > hi[j] {
                hi[j] = v[j].clone();
            }
        }
    }
    (
        lo.into_iter().map(|x| x * k).collect(),
        hi.into_iter().map(|x| x * k).collect(),
    )
}

fn box_cells(lo: &[Int], hi: &[Int]) -> u128 {
    let mut cells = Int::one();
    for (a, b) in lo.iter().zip(hi) {
        cells *= b - a + Int::one();
    }
    u128::try_from(&cells).unwrap_or(u128::MAX)
}

/// Row-major odometer over the first `dim-1` box coordinates.
struct Odometer {
    cur: IntVec,
    lo: IntVec,
    hi: IntVec,
    done: bool,
}

impl Odometer {
    fn new(lo: &[Int], hi: &[Int]) -> Odometer {
        let done = lo.iter().zip(hi).any(|(a, b)| a > b);
        Odometer {
            cur: lo.to_vec(),
            lo: lo.to_vec(),
            hi: hi.to_vec(),
            done,
        }
    }

    fn advance(&mut self) {
        for j in (0..self.cur.len()).rev() {
            if self.cur[j] < self.hi[j] {
                self.cur[j] += 1;
                for jj in j + 1..self.cur.len() {
                    self.cur[jj] = self.lo[jj].clone();
                }
                return;
            }
        }
        self.done = true;
    }
}

/// Interval of admissible last coordinates for a fixed prefix, intersected
/// over all facet constraints evaluated at dilation `k`.
fn last_coord_interval(
    facets: &[Halfspace],
    prefix: &[Int],
    k: &Int,
    lo: &Int,
    hi: &Int,
    strict: bool,
) -> Option<(Int, Int)> {
    let dim = prefix.len() + 1;
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    for h in facets {
        // a_n * x_n >= -k*c - sum_{j<n} a_j x_j
        let mut partial = Rational::from_integer(Int::zero());
        for j in 0..dim - 1 {
            partial += Rational::from_integer(&h.normal[j] * &prefix[j]);
        }
        let rhs = -(&h.offset * Rational::from_integer(k.clone())) - partial;
        let a_n = &h.normal[dim - 1];
        if a_n.is_zero() {
            // constraint reduces to 0 >= rhs (or 0 > rhs when strict)
            let violated = if strict {
                !rhs.is_negative()
            } else {
                rhs.is_positive()
            };
            if violated {
                return None;
            }
            continue;
        }
        let bound = rhs / Rational::from_integer(a_n.clone());
        if a_n.is_positive() {
            let b = if strict {
                bound.floor().to_integer() + Int::one()
            } else {
                bound.ceil().to_integer()
            };
            if b > lo {
                lo = b;
            }
        } else {
            let b = if strict {
                bound.ceil().to_integer() - Int::one()
            } else {
                bound.floor().to_integer()
            };
            if b < hi {
                hi = b;
            }
        }
    }
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

/// Number of points of `Δ ∩ (Z/k)^n` (interior only when `strict`).
pub fn count_points(
    dim: usize,
    vertices: &[IntVec],
    facets: &[Halfspace],
    k: i64,
    strict: bool,
) -> Result<Int> {
    let (count, _) = count_and_sum(dim, vertices, facets, k, strict)?;
    Ok(count)
}

/// Count and coordinate sum of `Δ ∩ (Z/k)^n` in one pass. The sum is a point
/// sum, i.e. already divided by `k`.
pub fn count_and_sum(
    dim: usize,
    vertices: &[IntVec],
    facets: &[Halfspace],
    k: i64,
    strict: bool,
) -> Result<(Int, QVec)> {
    let kk = check_dilation(k)?;
    let (lo, hi) = bounding_box(dim, vertices, &kk);
    let cells = box_cells(&lo, &hi);
    if cells > DEFAULT_CELL_LIMIT {
        return Err(Error::ResourceLimit {
            cells,
            limit: DEFAULT_CELL_LIMIT,
        });
    }
    let mut count = Int::zero();
    let mut sums: IntVec = vec![Int::zero(); dim];
    // doubled in the last coordinate so the arithmetic series stays integral
    let mut last_sum_doubled = Int::zero();
    if dim == 1 {
        if let Some((a, b)) = last_coord_interval(facets, &[], &kk, &lo[0], &hi[0], strict) {
            count = &b - &a + Int::one();
            last_sum_doubled = (&a + &b) * &count;
        }
    } else {
        let mut odo = Odometer::new(&lo[..dim - 1], &hi[..dim - 1]);
        while !odo.done {
            if let Some((a, b)) =
                last_coord_interval(facets, &odo.cur, &kk, &lo[dim - 1], &hi[dim - 1], strict)
            {
                let len = &b - &a + Int::one();
                for j in 0..dim - 1 {
                    sums[j] += &odo.cur[j] * &len;
                }
                last_sum_doubled += (&a + &b) * &len;
                count += len;
            }
            odo.advance();
        }
    }
    let mut out: QVec = sums
        .iter()
        .map(|s| Rational::new(s.clone(), kk.clone()))
        .collect();
    out[dim - 1] = Rational::new(last_sum_doubled, Int::from(2) * &kk);
    Ok((count, out))
}

/// All points of `(1/k)·Z^n` inside the polytope (boundary included), in
/// row-major order of the underlying integer box.
pub fn lattice_points(p: &LatticePolytope, k: i64) -> Result<Vec<QVec>> {
    list_points(p.dim(), p.vertices(), p.facets(), k, false)
}

/// As `lattice_points` but with every facet inequality strict.
pub fn interior_lattice_points(p: &LatticePolytope, k: i64) -> Result<Vec<QVec>> {
    list_points(p.dim(), p.vertices(), p.facets(), k, true)
}

pub fn list_points(
    dim: usize,
    vertices: &[IntVec],
    facets: &[Halfspace],
    k: i64,
    strict: bool,
) -> Result<Vec<QVec>> {
    let kk = check_dilation(k)?;
    let (lo, hi) = bounding_box(dim, vertices, &kk);
    let cells = box_cells(&lo, &hi);
    if cells > DEFAULT_CELL_LIMIT {
        return Err(Error::ResourceLimit {
            cells,
            limit: DEFAULT_CELL_LIMIT,
        });
    }
    let inv_k = Rational::new(Int::one(), kk.clone());
    let mut out = Vec::new();
    let mut odo = Odometer::new(&lo, &hi);
    while !odo.done {
        let scaled_ok = facets.iter().all(|h| {
            let mut v = h.offset.clone() * Rational::from_integer(kk.clone());
            for (a, x) in h.normal.iter().zip(&odo.cur) {
                v += Rational::from_integer(a * x);
            }
            if strict {
                v.is_positive()
            } else {
                !v.is_negative()
            }
        });
        if scaled_ok {
            out.push(
                odo.cur
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()) * &inv_k)
                    .collect(),
            );
        }
        odo.advance();
    }
    Ok(out)
}

/// The Ehrhart polynomial: the unique degree <= n polynomial through
/// `(0, 1)` and the exact dilation counts at `k = 1..n`.
pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<Polynomial> {
    ehrhart_from_parts(p.dim(), p.vertices(), p.facets())
}

pub fn ehrhart_from_parts(
    dim: usize,
    vertices: &[IntVec],
    facets: &[Halfspace],
) -> Result<Polynomial> {
    let mut samples = vec![(rat(0), rat(1))];
    for k in 1..=dim as i64 {
        let c = count_points(dim, vertices, facets, k, false)?;
        samples.push((rat(k), Rational::from_integer(c)));
    }
    interpolate(&samples)
}

/// The lattice-point sum polynomial, fitted componentwise at `k = 1..n+1`.
pub fn lattice_sum_polynomial(p: &LatticePolytope) -> Result<VectorPolynomial> {
    sum_polynomial_from_parts(p.dim(), p.vertices(), p.facets())
}

pub fn sum_polynomial_from_parts(
    dim: usize,
    vertices: &[IntVec],
    facets: &[Halfspace],
) -> Result<VectorPolynomial> {
    let mut samples = Vec::new();
    for k in 1..=(dim as i64 + 1) {
        let (_, s) = count_and_sum(dim, vertices, facets, k, false)?;
        samples.push((rat(k), s));
    }
    interpolate_vector(dim, &samples)
}

/// One Brion–Vergne reciprocity comparison at a given level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvCheck {
    /// 1 for counting, x for coordinate sums.
    pub phi_degree: usize,
    pub level: i64,
    pub interior_value: QVec,
    pub reflected_value: QVec,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct ReciprocityReport {
    pub dim: usize,
    pub ehrhart_at_minus_one: Rational,
    pub expected_sign: Rational,
    pub sum_at_minus_one: QVec,
    pub bv: Vec<BvCheck>,
    pub ok: bool,
}

/// Reflexivity-specific reciprocity: `E(-1) = (-1)^n`, `s(-1) = 0`, plus the
/// general reciprocity law `S_φ(Int)(k) = (-1)^(n+d) S_φ(-k)` for φ in
/// `{1, x}` at levels 1 and 2, against direct interior enumeration.
///
/// The law with the `(-1)^(n+d)` constant holds for sums of φ over the
/// lattice points of the dilation `kΔ`. For φ = x that unscaled sum is
/// `t·s(t)`, since `s` evaluates the points rescaled back into Δ; in terms of
/// `s` itself the constant collapses to `(-1)^n`. Both statements are the
/// same identity and the check works with the unscaled sums.
pub fn reciprocity_check(p: &LatticePolytope) -> Result<ReciprocityReport> {
    if !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let n = p.dim();
    let e = ehrhart_polynomial(p)?;
    let s = lattice_sum_polynomial(p)?;
    let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
    let e_m1 = e.eval_int(-1);
    let s_m1 = s.eval_int(-1);
    let mut ok = e_m1 == sign && s_m1.iter().all(|x| x.is_zero());
    let mut bv = Vec::new();
    for level in 1..=2i64 {
        let (icount, isum) = count_and_sum(n, p.vertices(), p.facets(), level, true)?;
        // phi = 1, degree 0: #Int(kΔ) = (-1)^n E(-k)
        let lhs0 = vec![Rational::from_integer(icount)];
        let rhs0 = vec![&sign * e.eval_int(-level)];
        let ok0 = lhs0 == rhs0;
        bv.push(BvCheck {
            phi_degree: 0,
            level,
            interior_value: lhs0,
            reflected_value: rhs0,
            ok: ok0,
        });
        // phi = x, degree 1, unscaled sums: S_x(t) = t·s(t), so
        // sum over Int(kΔ) of the lattice points = (-1)^(n+1) · (-k)·s(-k)
        let lhs1 = scale_vec(&rat(level), &isum);
        let sign1 = -&sign;
        let rhs1 = scale_vec(&(&sign1 * rat(-level)), &s.eval_int(-level));
        let ok1 = lhs1 == rhs1;
        bv.push(BvCheck {
            phi_degree: 1,
            level,
            interior_value: lhs1,
            reflected_value: rhs1,
            ok: ok1,
        });
        ok = ok && ok0 && ok1;
    }
    Ok(ReciprocityReport {
        dim: n,
        ehrhart_at_minus_one: e_m1,
        expected_sign: sign,
        sum_at_minus_one: s_m1,
        bv,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int_vec, rat_vec, zero_vec};
    use crate::polytope::LatticeTag;

    fn cross() -> LatticePolytope {
        LatticePolytope::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], LatticeTag::Dual)
            .unwrap()
    }

    fn p2_delta() -> LatticePolytope {
        LatticePolytope::from_i64(2, &[&[-1, -1], &[2, -1], &[-1, 2]], LatticeTag::Dual).unwrap()
    }

    fn bl1p2_delta() -> LatticePolytope {
        LatticePolytope::from_i64(2, &[&[-1, 0], &[0, -1], &[2, -1], &[-1, 2]], LatticeTag::Dual)
            .unwrap()
    }

    fn box2() -> LatticePolytope {
        LatticePolytope::from_i64(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]], LatticeTag::Dual)
            .unwrap()
    }

    #[test]
    fn cross_polytope_point_counts() {
        assert_eq!(lattice_points(&cross(), 1).unwrap().len(), 5);
        assert_eq!(lattice_points(&cross(), 2).unwrap().len(), 13);
        assert!(matches!(
            lattice_points(&cross(), 0),
            Err(Error::BadDilation { got: 0 })
        ));
    }

    #[test]
    fn p2_delta_has_ten_lattice_points() {
        assert_eq!(lattice_points(&p2_delta(), 1).unwrap().len(), 10);
        assert_eq!(lattice_points(&p2_delta(), 2).unwrap().len(), 28);
    }

    #[test]
    fn interior_points() {
        // any reflexive polytope has exactly the origin inside at k = 1
        for p in [cross(), p2_delta(), bl1p2_delta(), box2()] {
            assert_eq!(
                interior_lattice_points(&p, 1).unwrap(),
                vec![rat_vec(&[0, 0])]
            );
        }
        assert_eq!(lattice_points(&box2(), 1).unwrap().len(), 9);
        let half = interior_lattice_points(&cross(), 2).unwrap();
        assert_eq!(half.len(), 5);
        assert!(half.contains(&vec![frac(1, 2), rat(0)]));
    }

    #[test]
    fn listing_agrees_with_interval_counting() {
        for p in [cross(), p2_delta(), bl1p2_delta(), box2()] {
            for k in 1..=4 {
                for strict in [false, true] {
                    let pts = list_points(p.dim(), p.vertices(), p.facets(), k, strict).unwrap();
                    let (count, sum) =
                        count_and_sum(p.dim(), p.vertices(), p.facets(), k, strict).unwrap();
                    assert_eq!(Int::from(pts.len()), count);
                    let mut direct = zero_vec(p.dim());
                    for pt in &pts {
                        direct = crate::arith::add_vec(&direct, pt);
                    }
                    assert_eq!(direct, sum);
                }
            }
        }
    }

    #[test]
    fn ehrhart_examples() {
        let e = ehrhart_polynomial(&p2_delta()).unwrap();
        assert_eq!(e.coeffs(), &[rat(1), frac(9, 2), frac(9, 2)]);
        let e = ehrhart_polynomial(&cross()).unwrap();
        assert_eq!(e.coeffs(), &[rat(1), rat(2), rat(2)]);
        // 1-dimensional segment [0,1]; the origin is not interior, so this
        // runs on raw parts
        let verts = vec![int_vec(&[0]), int_vec(&[1])];
        let facets = vec![
            Halfspace::new(int_vec(&[1]), rat(0)),
            Halfspace::new(int_vec(&[-1]), rat(1)),
        ];
        let e = ehrhart_from_parts(1, &verts, &facets).unwrap();
        assert_eq!(e.coeffs(), &[rat(1), rat(1)]);
    }

    #[test]
    fn sum_polynomial_examples() {
        assert!(lattice_sum_polynomial(&box2()).unwrap().is_zero());
        assert!(lattice_sum_polynomial(&p2_delta()).unwrap().is_zero());
        let s = lattice_sum_polynomial(&bl1p2_delta()).unwrap();
        assert_eq!(s.eval_int(1), vec![rat(1), rat(1)]);
        assert_eq!(
            s.coeffs(),
            &[
                vec![frac(1, 6), frac(1, 6)],
                vec![frac(1, 2), frac(1, 2)],
                vec![frac(1, 3), frac(1, 3)]
            ]
        );
    }

    #[test]
    fn leading_coefficients_match_geometry() {
        for p in [cross(), p2_delta(), bl1p2_delta(), box2()] {
            let e = ehrhart_polynomial(&p).unwrap();
            assert_eq!(&e.leading(), p.volume());
            assert_eq!(e.coeff(0), rat(1));
            let s = lattice_sum_polynomial(&p).unwrap();
            if s.is_zero() {
                assert!(p.moment().iter().all(|x| x.is_zero()));
            } else {
                assert_eq!(&s.leading(), p.moment());
            }
        }
    }

    #[test]
    fn reciprocity_examples() {
        let r = reciprocity_check(&p2_delta()).unwrap();
        assert_eq!(r.ehrhart_at_minus_one, rat(1));
        assert!(r.ok);
        let r = reciprocity_check(&cross()).unwrap();
        assert_eq!(r.ehrhart_at_minus_one, rat(1));
        assert!(r.sum_at_minus_one.iter().all(|x| x.is_zero()));
        assert!(r.ok);
        let r = reciprocity_check(&bl1p2_delta()).unwrap();
        assert!(r.ok);
        // non-reflexive input is rejected
        let doubled = LatticePolytope::from_i64(
            2,
            &[&[2, 0], &[0, 2], &[-2, 0], &[0, -2]],
            LatticeTag::Dual,
        )
        .unwrap();
        assert!(matches!(
            reciprocity_check(&doubled),
            Err(Error::NotReflexive)
        ));
    }

    #[test]
    fn held_out_dilations_match() {
        for p in [cross(), p2_delta(), bl1p2_delta(), box2()] {
            let n = p.dim() as i64;
            let e = ehrhart_polynomial(&p).unwrap();
            let s = lattice_sum_polynomial(&p).unwrap();
            for k in [n + 1, n + 2] {
                let (count, sum) = count_and_sum(p.dim(), p.vertices(), p.facets(), k, false).unwrap();
                assert_eq!(e.eval_int(k), Rational::from_integer(count));
                assert_eq!(s.eval_int(k), sum);
            }
        }
    }
}
