//! Demazure roots of the face fan of a Fano polytope, the
//! semisimple/unipotent split, and the reductivity criteria for the
//! automorphism group.

use num_traits::{Signed, Zero};

use crate::arith::{dot_int, Int, IntVec, Rational};
use crate::error::{Error, Result};
use crate::polytope::{LatticePolytope, LatticeTag};

/// The set of roots `m` with `⟨m, v_ρ⟩ = -1` for exactly one ray and `>= 0`
/// for every other, split into semisimple (`-m` is also a root) and unipotent
/// parts. Everything is sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    pub dim: usize,
    pub rays: Vec<IntVec>,
    pub roots: Vec<IntVec>,
    pub semisimple: Vec<IntVec>,
    pub unipotent: Vec<IntVec>,
    /// For each root (in `roots` order) the index of the unique ray pairing
    /// to -1.
    pub pairing_ray: Vec<usize>,
}

impl RootSet {
    pub fn is_semisimple(&self) -> bool {
        self.unipotent.is_empty()
    }
}

/// Ray generators of the face fan: exactly the vertices of the fan polytope,
/// primitive and sorted.
pub fn rays(p: &LatticePolytope) -> Result<Vec<IntVec>> {
    if p.tag() != LatticeTag::Fan {
        return Err(Error::NotFanLattice);
    }
    Ok(p.vertices().to_vec())
}

/// Enumerate all Demazure roots by scanning the lattice points of the dual
/// body (every root pairs >= -1 with every ray, so the search is complete).
pub fn demazure_roots(p: &LatticePolytope) -> Result<RootSet> {
    let rays = rays(p)?;
    let dim = p.dim();
    // integer bounding box of the dual body from its rational vertices
    let dual = p.dual_vertices();
    let mut lo = vec![Int::zero(); dim];
    let mut hi = vec![Int::zero(); dim];
    for j in 0..dim {
        let mut min: Option<Rational> = None;
        let mut max: Option<Rational> = None;
        for v in dual {
            if min.as_ref().map_or(true, |m| v[j] < *m) {
                min = Some(v[j].clone());
            }
            if max.as_ref().map_or(true, |m| v[j] > *m) {
                max = Some(v[j].clone());
            }
        }
        lo[j] = min.expect("dual has vertices").ceil().to_integer();
        hi[j] = max.expect("dual has vertices").floor().to_integer();
    }

    let mut roots: Vec<(IntVec, usize)> = Vec::new();
    let mut cur = lo.clone();
    let mut done = lo.iter().zip(&hi).any(|(a, b)| a > b);
    while !done {
        let mut minus_one: Option<usize> = None;
        let mut valid = true;
        for (i, v) in rays.iter().enumerate() {
            let pairing = crate::arith::dot_ii(&cur, v);
            if pairing == Int::from(-1) {
                if minus_one.is_some() {
                    valid = false;
                    break;
                }
                minus_one = Some(i);
            } else if pairing.is_negative() {
                valid = false;
                break;
            }
        }
        if valid {
            if let Some(ray) = minus_one {
                roots.push((cur.clone(), ray));
            }
        }
        // advance row-major
        let mut advanced = false;
        for j in (0..dim).rev() {
            if cur[j] < hi[j] {
                cur[j] += 1;
                for jj in j + 1..dim {
                    cur[jj] = lo[jj].clone();
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            done = true;
        }
    }

    roots.sort();
    let all: Vec<IntVec> = roots.iter().map(|(m, _)| m.clone()).collect();
    let pairing_ray: Vec<usize> = roots.iter().map(|(_, r)| *r).collect();
    let set: std::collections::BTreeSet<&IntVec> = all.iter().collect();
    let mut semisimple = Vec::new();
    let mut unipotent = Vec::new();
    for m in &all {
        let neg: IntVec = m.iter().map(|x| -x).collect();
        if set.contains(&neg) {
            semisimple.push(m.clone());
        } else {
            unipotent.push(m.clone());
        }
    }

    let rs = RootSet {
        dim,
        rays,
        roots: all,
        semisimple,
        unipotent,
        pairing_ray,
    };
    verify_root_set(&rs)?;
    Ok(rs)
}

/// Re-check the defining conditions after enumeration: exactly one ray pairs
/// to -1 per root, all others to >= 0, and the claimed ray is the one.
fn verify_root_set(rs: &RootSet) -> Result<()> {
    for (m, &ray) in rs.roots.iter().zip(&rs.pairing_ray) {
        for (i, v) in rs.rays.iter().enumerate() {
            let pairing = crate::arith::dot_ii(m, v);
            if i == ray {
                if pairing != Int::from(-1) {
                    return Err(Error::internal("recorded pairing ray does not pair to -1"));
                }
            } else if pairing.is_negative() {
                return Err(Error::internal("root pairs negatively with a second ray"));
            }
        }
    }
    for m in &rs.semisimple {
        let neg: IntVec = m.iter().map(|x| -x).collect();
        if !rs.semisimple.contains(&neg) {
            return Err(Error::internal("semisimple set is not symmetric"));
        }
    }
    for m in &rs.unipotent {
        let neg: IntVec = m.iter().map(|x| -x).collect();
        if rs.unipotent.contains(&neg) {
            return Err(Error::internal("unipotent set contains an opposite pair"));
        }
    }
    Ok(())
}

/// Reductive iff there are no unipotent roots.
pub fn is_reductive(rs: &RootSet) -> bool {
    rs.is_semisimple()
}

/// Pairing criterion: the automorphism group is reductive iff
/// `⟨b_{Δ*}, m⟩ = 0` for every root, with `b_{Δ*}` the dual-side integral
/// (any positive scaling of it gives the same verdict).
pub fn nill_pairing_criterion(dual_moment: &[Rational], rs: &RootSet) -> bool {
    rs.roots.iter().all(|m| dot_int(dual_moment, m).is_zero())
}

/// Sufficient (not necessary) condition for semisimplicity: the vertices of
/// the fan polytope sum to zero.
pub fn vertex_sum_sufficient(p: &LatticePolytope) -> Result<bool> {
    if p.tag() != LatticeTag::Fan {
        return Err(Error::NotFanLattice);
    }
    let dim = p.dim();
    let mut sum = vec![Int::zero(); dim];
    for v in p.vertices() {
        for j in 0..dim {
            sum[j] += &v[j];
        }
    }
    Ok(sum.iter().all(|x| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int_vec, rat, rat_vec};

    fn fan(dim: usize, verts: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_i64(dim, verts, LatticeTag::Fan).unwrap()
    }

    #[test]
    fn p1_roots_are_both_semisimple() {
        let p = fan(1, &[&[1], &[-1]]);
        let rs = demazure_roots(&p).unwrap();
        assert_eq!(rs.roots, vec![int_vec(&[-1]), int_vec(&[1])]);
        assert!(rs.unipotent.is_empty());
        assert!(is_reductive(&rs));
    }

    #[test]
    fn p2_has_the_six_roots_of_pgl3() {
        let p = fan(2, &[&[1, 0], &[0, 1], &[-1, -1]]);
        let rs = demazure_roots(&p).unwrap();
        assert_eq!(rs.roots.len(), 6);
        assert_eq!(rs.semisimple.len(), 6);
        assert!(is_reductive(&rs));
    }

    #[test]
    fn bl1p2_has_two_unipotent_roots() {
        let p = fan(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]]);
        let rs = demazure_roots(&p).unwrap();
        assert_eq!(
            rs.roots,
            vec![
                int_vec(&[-1, 1]),
                int_vec(&[0, 1]),
                int_vec(&[1, -1]),
                int_vec(&[1, 0])
            ]
        );
        assert_eq!(
            rs.unipotent,
            vec![int_vec(&[0, 1]), int_vec(&[1, 0])]
        );
        assert!(!is_reductive(&rs));
    }

    #[test]
    fn rays_require_the_fan_side() {
        let d = LatticePolytope::from_i64(2, &[&[-1, -1], &[2, -1], &[-1, 2]], LatticeTag::Dual)
            .unwrap();
        assert!(matches!(rays(&d), Err(Error::NotFanLattice)));
    }

    #[test]
    fn nill_pairing_cases() {
        let p = fan(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]]);
        let rs = demazure_roots(&p).unwrap();
        // dual-side integral over the fan polytope itself is (1/3, 1/3)
        assert_eq!(p.moment(), &vec![frac(1, 3), frac(1, 3)]);
        assert!(!nill_pairing_criterion(p.moment(), &rs));
        assert_eq!(nill_pairing_criterion(p.moment(), &rs), is_reductive(&rs));
        // zero vector pairs to zero with any root set
        assert!(nill_pairing_criterion(&rat_vec(&[0, 0]), &rs));
        // scaling does not change the verdict
        let scaled: Vec<Rational> = p.moment().iter().map(|x| x * rat(7)).collect();
        assert_eq!(
            nill_pairing_criterion(&scaled, &rs),
            nill_pairing_criterion(p.moment(), &rs)
        );
    }

    #[test]
    fn vertex_sum_cases() {
        assert!(vertex_sum_sufficient(&fan(
            3,
            &[
                &[1, 1, 1],
                &[1, 1, -1],
                &[1, -1, 1],
                &[1, -1, -1],
                &[-1, 1, 1],
                &[-1, 1, -1],
                &[-1, -1, 1],
                &[-1, -1, -1]
            ]
        ))
        .unwrap());
        assert!(vertex_sum_sufficient(&fan(2, &[&[1, 0], &[0, 1], &[-1, -1]])).unwrap());
        assert!(!vertex_sum_sufficient(&fan(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]])).unwrap());
    }

    #[test]
    fn root_sets_transform_equivariantly() {
        // rays transform by U, roots by the inverse transpose
        let p = fan(2, &[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]]);
        let u = vec![int_vec(&[1, 1]), int_vec(&[0, 1])]; // det 1
        let q = p.transform(&u).unwrap();
        let rp = demazure_roots(&p).unwrap();
        let rq = demazure_roots(&q).unwrap();
        // inverse transpose of [[1,1],[0,1]] is [[1,0],[-1,1]]
        let ut_inv = [int_vec(&[1, 0]), int_vec(&[-1, 1])];
        let mut mapped: Vec<IntVec> = rp
            .roots
            .iter()
            .map(|m| ut_inv.iter().map(|row| crate::arith::dot_ii(row, m)).collect())
            .collect();
        mapped.sort();
        assert_eq!(mapped, rq.roots);
        assert_eq!(rp.unipotent.len(), rq.unipotent.len());
    }
}
