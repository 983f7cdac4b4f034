//! Shared helpers for the integration suites: an independent simplex
//! integration oracle (different algorithms from the library: cross products,
//! angular sorts) and random unimodular lattice transforms.

use fanotope::arith::{add_vec, scale_vec, sub_vec, zero_vec, Int, IntVec, QVec, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Exact volume and unnormalized moment of `conv(verts)` in dimension 2 or 3,
/// by brute-force supporting-plane search, exact angular sorting of facet
/// polygons, and fan/cone decomposition. Deliberately shares no geometry code
/// with the library.
pub fn oracle_volume_moment(verts: &[QVec]) -> (Rational, QVec) {
    match verts[0].len() {
        2 => oracle_2d(verts),
        3 => oracle_3d(verts),
        d => panic!("oracle supports dimensions 2 and 3, not {d}"),
    }
}

fn centroid_of(verts: &[QVec]) -> QVec {
    let dim = verts[0].len();
    let mut c = zero_vec(dim);
    for v in verts {
        c = add_vec(&c, v);
    }
    scale_vec(
        &Rational::new(Int::one(), Int::from(verts.len())),
        &c,
    )
}

/// Exact cyclic sort of planar points around a center: half-plane class
/// first, cross product within a class.
fn angular_sort(points: &mut Vec<QVec>, center: &QVec) {
    let class = |p: &QVec| -> u8 {
        let dx = &p[0] - &center[0];
        let dy = &p[1] - &center[1];
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    points.sort_by(|a, b| {
        let (ca, cb) = (class(a), class(b));
        if ca != cb {
            return ca.cmp(&cb);
        }
        let ax = &a[0] - &center[0];
        let ay = &a[1] - &center[1];
        let bx = &b[0] - &center[0];
        let by = &b[1] - &center[1];
        // positive cross: a before b counterclockwise
        let cross = &ax * &by - &ay * &bx;
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
}

fn tri_area_2d(a: &QVec, b: &QVec, c: &QVec) -> Rational {
    let abx = &b[0] - &a[0];
    let aby = &b[1] - &a[1];
    let acx = &c[0] - &a[0];
    let acy = &c[1] - &a[1];
    ((&abx * &acy) - (&aby * &acx)).abs() / Rational::from_integer(Int::from(2))
}

fn oracle_2d(verts: &[QVec]) -> (Rational, QVec) {
    let center = centroid_of(verts);
    let mut pts = verts.to_vec();
    angular_sort(&mut pts, &center);
    let mut vol = Rational::zero();
    let mut moment = zero_vec(2);
    for i in 1..pts.len() - 1 {
        let (a, b, c) = (&pts[0], &pts[i], &pts[i + 1]);
        let area = tri_area_2d(a, b, c);
        if area.is_zero() {
            continue;
        }
        let cen = centroid_of(&[a.clone(), b.clone(), c.clone()]);
        moment = add_vec(&moment, &scale_vec(&area, &cen));
        vol += area;
    }
    (vol, moment)
}

fn cross3(a: &QVec, b: &QVec) -> QVec {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot3(a: &QVec, b: &QVec) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn oracle_3d(verts: &[QVec]) -> (Rational, QVec) {
    let n = verts.len();
    // outward supporting planes <x, nrm> <= beta from all vertex triples,
    // canonically scaled by the absolute value of the leading entry
    let mut facets: Vec<(QVec, Rational)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let nrm = cross3(&sub_vec(&verts[j], &verts[i]), &sub_vec(&verts[k], &verts[i]));
                if nrm.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let beta = dot3(&nrm, &verts[i]);
                let mut all_le = true;
                let mut all_ge = true;
                for v in verts {
                    let val = dot3(&nrm, v);
                    if val > beta {
                        all_le = false;
                    }
                    if val < beta {
                        all_ge = false;
                    }
                }
                let (nrm, beta) = if all_le {
                    (nrm, beta)
                } else if all_ge {
                    (scale_vec(&-Rational::one(), &nrm), -beta)
                } else {
                    continue;
                };
                let lead = nrm
                    .iter()
                    .find(|x| !x.is_zero())
                    .expect("nonzero normal")
                    .abs();
                let nrm: QVec = nrm.iter().map(|x| x / &lead).collect();
                let beta = beta / &lead;
                if !facets.contains(&(nrm.clone(), beta.clone())) {
                    facets.push((nrm, beta));
                }
            }
        }
    }

    let inner = centroid_of(verts);
    let mut vol = Rational::zero();
    let mut moment = zero_vec(3);
    for (nrm, beta) in &facets {
        let mut on: Vec<QVec> = verts
            .iter()
            .filter(|v| dot3(nrm, v) == *beta)
            .cloned()
            .collect();
        if on.len() < 3 {
            continue;
        }
        // exact cyclic order: project to a coordinate plane not killed by
        // the normal (convexity of the facet makes the cyclic order of any
        // nondegenerate planar image the right one)
        let drop = (0..3).find(|&d| !nrm[d].is_zero()).expect("nonzero normal");
        let keep: Vec<usize> = (0..3).filter(|&d| d != drop).collect();
        let planar: Vec<QVec> = on.iter().map(|v| vec![v[keep[0]].clone(), v[keep[1]].clone()]).collect();
        let pc = centroid_of(&planar);
        let mut order: Vec<usize> = (0..on.len()).collect();
        let mut tagged: Vec<QVec> = planar
            .iter()
            .enumerate()
            .map(|(i, p)| vec![p[0].clone(), p[1].clone(), Rational::from_integer(Int::from(i))])
            .collect();
        angular_sort_tagged(&mut tagged, &pc);
        for (slot, t) in tagged.iter().enumerate() {
            order[slot] = usize::try_from(t[2].to_integer()).expect("small index");
        }
        let ordered: Vec<QVec> = order.iter().map(|&i| on[i].clone()).collect();
        on = ordered;
        // fan the polygon from its first vertex, cone to the interior point
        for t in 1..on.len() - 1 {
            let tet = [inner.clone(), on[0].clone(), on[t].clone(), on[t + 1].clone()];
            let rows: Vec<QVec> = (1..4).map(|r| sub_vec(&tet[r], &tet[0])).collect();
            let det = &rows[0][0] * (&rows[1][1] * &rows[2][2] - &rows[1][2] * &rows[2][1])
                - &rows[0][1] * (&rows[1][0] * &rows[2][2] - &rows[1][2] * &rows[2][0])
                + &rows[0][2] * (&rows[1][0] * &rows[2][1] - &rows[1][1] * &rows[2][0]);
            let v = det.abs() / Rational::from_integer(Int::from(6));
            if v.is_zero() {
                continue;
            }
            let cen = centroid_of(&tet);
            moment = add_vec(&moment, &scale_vec(&v, &cen));
            vol += v;
        }
    }
    (vol, moment)
}

fn angular_sort_tagged(points: &mut Vec<QVec>, center: &QVec) {
    // same comparator as angular_sort, ignoring the tag in slot 2
    let class = |p: &QVec| -> u8 {
        let dx = &p[0] - &center[0];
        let dy = &p[1] - &center[1];
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    points.sort_by(|a, b| {
        let (ca, cb) = (class(a), class(b));
        if ca != cb {
            return ca.cmp(&cb);
        }
        let ax = &a[0] - &center[0];
        let ay = &a[1] - &center[1];
        let bx = &b[0] - &center[0];
        let by = &b[1] - &center[1];
        let cross = &ax * &by - &ay * &bx;
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
}

/// Random unimodular matrix: a short product of elementary row operations
/// (swap, negate, shear by ±1 or ±2).
pub fn random_unimodular<R: Rng>(rng: &mut R, dim: usize, ops: usize) -> Vec<IntVec> {
    let mut u: Vec<IntVec> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    for _ in 0..ops {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..dim);
                let j = rng.gen_range(0..dim);
                if i != j {
                    u.swap(i, j);
                }
            }
            1 => {
                let i = rng.gen_range(0..dim);
                for x in u[i].iter_mut() {
                    *x = -&*x;
                }
            }
            _ => {
                let i = rng.gen_range(0..dim);
                let j = rng.gen_range(0..dim);
                if i != j {
                    let c = Int::from(*[-2i64, -1, 1, 2].iter().nth(rng.gen_range(0..4)).unwrap());
                    let row_j = u[j].clone();
                    for (x, y) in u[i].iter_mut().zip(row_j.iter()) {
                        *x += &c * y;
                    }
                }
            }
        }
    }
    u
}

pub fn apply_matrix(u: &[IntVec], v: &[Int]) -> IntVec {
    u.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Largest absolute vertex coordinate, for keeping random images small.
pub fn max_coord(vertices: &[IntVec]) -> Int {
    let mut m = Int::zero();
    for v in vertices {
        for x in v {
            let a = x.abs();
            if a > m {
                m = a;
            }
        }
    }
    m
}
