//! Lattice polytopes: V- and H-representations, duality, triangulation and
//! exact volume/barycenter.
//!
//! Conventions follow the toric dictionary: a *fan* polytope `P` lives in the
//! N-lattice (primitive vertices are the rays of the face fan), the *dual*
//! polytope `Δ = {y : ⟨x,y⟩ ≥ -1 for all x ∈ P}` lives in the M-lattice and
//! carries the anticanonical polarization. Every halfspace is written
//! `⟨x, normal⟩ ≥ -offset`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    self, dot_int, is_zero_vec, neg_vec, primitive_with_scale, scale_vec, to_rat_vec, zero_vec,
    Int, IntVec, QVec, Rational, RationalMatrix,
};
use crate::error::{Error, Result};

/// Which lattice a polytope lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeTag {
    /// N-lattice: the polytope `P` whose face fan defines the variety.
    Fan,
    /// M-lattice: the moment polytope `Δ` of the anticanonical bundle.
    Dual,
}

impl LatticeTag {
    pub fn flip(self) -> LatticeTag {
        match self {
            LatticeTag::Fan => LatticeTag::Dual,
            LatticeTag::Dual => LatticeTag::Fan,
        }
    }
}

/// `{x : ⟨x, normal⟩ ≥ -offset}` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: IntVec,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: IntVec, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    /// Nonnegative inside the halfspace, zero on its boundary.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        dot_int(x, &self.normal) + &self.offset
    }

    /// Normalize a rational halfspace `⟨x,a⟩ ≥ -c` to a primitive integer
    /// normal. `None` when the normal vanishes: the constraint is then either
    /// trivial (`c ≥ 0`) or infeasible, which the caller must decide from the
    /// offset sign.
    pub fn from_rational(normal: &[Rational], offset: &Rational) -> Option<Halfspace> {
        if is_zero_vec(normal) {
            return None;
        }
        let (prim, t) = primitive_with_scale(normal).expect("nonzero normal");
        Some(Halfspace::new(prim, offset * t))
    }
}

/// Irredundant facet list of a full-dimensional polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceRep {
    pub dim: usize,
    pub facets: Vec<Halfspace>,
}

impl HalfspaceRep {
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|h| !h.slack(x).is_negative())
    }

    pub fn contains_strict(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|h| h.slack(x).is_positive())
    }
}

/// Full-dimensional simplex given by `dim + 1` affinely independent vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    vertices: Vec<QVec>,
}

impl Simplex {
    pub fn new(vertices: Vec<QVec>) -> Self {
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn volume(&self) -> Rational {
        let n = self.vertices.len() - 1;
        if n == 0 {
            return Rational::zero();
        }
        let rows: Vec<QVec> = (1..=n)
            .map(|i| arith::sub_vec(&self.vertices[i], &self.vertices[0]))
            .collect();
        let det = RationalMatrix::new(rows)
            .and_then(|m| m.determinant())
            .expect("difference matrix is square");
        let mut fact = Int::one();
        for k in 2..=n {
            fact *= Int::from(k);
        }
        det.abs() / Rational::from_integer(fact)
    }

    pub fn centroid(&self) -> QVec {
        let n = self.vertices[0].len();
        let mut c = zero_vec(n);
        for v in &self.vertices {
            c = arith::add_vec(&c, v);
        }
        scale_vec(
            &Rational::new(Int::one(), Int::from(self.vertices.len())),
            &c,
        )
    }
}

/// Convex region with both representations and vertex/halfspace incidence.
/// The workhorse behind duality, triangulation and the Ding-piece integrals.
#[derive(Debug, Clone)]
pub(crate) struct Region {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
    /// Lexicographically sorted, deduplicated.
    pub vertices: Vec<QVec>,
    /// Per halfspace, the indices of incident vertices.
    pub incidence: Vec<BTreeSet<usize>>,
}

impl Region {
    /// Enumerate the vertices of an H-described region: basic solutions of
    /// `dim`-subsets of facet equalities that satisfy every inequality.
    /// Lenient: degenerate and empty regions come back with few or no
    /// vertices, and no boundedness check is made here.
    pub fn from_halfspaces(dim: usize, raw: Vec<(QVec, Rational)>) -> Region {
        let mut halfspaces: Vec<Halfspace> = Vec::new();
        let mut trivially_empty = false;
        let mut seen = BTreeSet::new();
        for (normal, offset) in raw {
            match Halfspace::from_rational(&normal, &offset) {
                Some(h) => {
                    if seen.insert((h.normal.clone(), h.offset.clone())) {
                        halfspaces.push(h);
                    }
                }
                None => {
                    if offset.is_negative() {
                        trivially_empty = true;
                    }
                }
            }
        }
        if trivially_empty {
            return Region {
                dim,
                halfspaces,
                vertices: Vec::new(),
                incidence: Vec::new(),
            };
        }

        let m = halfspaces.len();
        let mut verts: BTreeSet<QVec> = BTreeSet::new();
        let mut subset: Vec<usize> = (0..dim).collect();
        if m >= dim && dim >= 1 {
            loop {
                let rows: Vec<QVec> = subset
                    .iter()
                    .map(|&i| to_rat_vec(&halfspaces[i].normal))
                    .collect();
                let rhs: QVec = subset.iter().map(|&i| -&halfspaces[i].offset).collect();
                if let Ok(Some(x)) = arith::solve_linear(rows, &rhs) {
                    if halfspaces.iter().all(|h| !h.slack(&x).is_negative()) {
                        verts.insert(x);
                    }
                }
                // next dim-combination of 0..m
                let mut i = dim;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if subset[i] != i + m - dim {
                        subset[i] += 1;
                        for j in i + 1..dim {
                            subset[j] = subset[j - 1] + 1;
                        }
                        break;
                    }
                    if i == 0 {
                        subset.clear();
                        break;
                    }
                }
                if subset.is_empty() {
                    break;
                }
            }
        }
        let vertices: Vec<QVec> = verts.into_iter().collect();
        Region::from_parts(dim, halfspaces, vertices)
    }

    /// Build incidence for a known vertex list.
    pub fn from_parts(dim: usize, halfspaces: Vec<Halfspace>, vertices: Vec<QVec>) -> Region {
        let incidence = halfspaces
            .iter()
            .map(|h| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| h.slack(v).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Region {
            dim,
            halfspaces,
            vertices,
            incidence,
        }
    }

    /// Exact unboundedness test: look for an extreme ray of the recession
    /// cone `{d : ⟨d, aᵢ⟩ ≥ 0}` among null directions of (dim-1)-subsets of
    /// normals, plus the lineality check.
    pub fn has_recession_ray(&self) -> bool {
        let n = self.dim;
        let normals: Vec<QVec> = self.halfspaces.iter().map(|h| to_rat_vec(&h.normal)).collect();
        if normals.is_empty() {
            return true;
        }
        let full = RationalMatrix::new(normals.clone()).expect("rectangular");
        if full.rank() < n {
            return true;
        }
        let m = normals.len();
        let k = n - 1;
        let feasible = |d: &QVec| {
            !is_zero_vec(d)
                && self
                    .halfspaces
                    .iter()
                    .all(|h| !dot_int(d, &h.normal).is_negative())
        };
        if k == 0 {
            let d = vec![Rational::one()];
            return feasible(&d) || feasible(&neg_vec(&d));
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let rows: Vec<QVec> = subset.iter().map(|&i| normals[i].clone()).collect();
            let mat = RationalMatrix::new(rows).expect("rectangular");
            if mat.rank() == k {
                for d in mat.null_space() {
                    if feasible(&d) || feasible(&neg_vec(&d)) {
                        return true;
                    }
                }
            }
            let mut i = k;
            let mut done = false;
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                if subset[i] != i + m - k {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
            if done {
                break;
            }
        }
        false
    }

    fn children_of(&self, face: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut children: Vec<BTreeSet<usize>> = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for inc in &self.incidence {
            let child: BTreeSet<usize> = face.intersection(inc).copied().collect();
            if child.is_empty() || child.len() == face.len() {
                continue;
            }
            if seen.insert(child.iter().copied().collect()) {
                children.push(child);
            }
        }
        // keep only maximal children: the facets of this face
        let maximal: Vec<BTreeSet<usize>> = children
            .iter()
            .filter(|c| !children.iter().any(|d| d.len() > c.len() && c.is_subset(d)))
            .cloned()
            .collect();
        maximal
    }

    /// Pulling triangulation of a face: cone its lowest vertex over the
    /// recursive triangulations of the facets that miss it.
    fn pull_face(&self, face: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let apex = *face.iter().next().expect("nonempty face");
        if face.len() == 1 {
            return vec![vec![apex]];
        }
        let mut chains = Vec::new();
        for child in self.children_of(face) {
            if child.contains(&apex) {
                continue;
            }
            for mut chain in self.pull_face(&child) {
                chain.insert(0, apex);
                chains.push(chain);
            }
        }
        chains
    }

    fn chains_to_simplices(&self, chains: Vec<Vec<usize>>, apex: Option<&QVec>) -> Vec<Simplex> {
        let want = self.dim + 1;
        let mut out = Vec::new();
        for chain in chains {
            let mut pts: Vec<QVec> = Vec::with_capacity(want);
            if let Some(a) = apex {
                pts.push(a.clone());
            }
            pts.extend(chain.iter().map(|&i| self.vertices[i].clone()));
            // degenerate faces produce short or long chains; they carry no volume
            if pts.len() == want {
                out.push(Simplex::new(pts));
            }
        }
        out
    }

    /// Triangulation by pulling the lexicographically smallest vertex.
    pub fn pull_triangulation(&self) -> Vec<Simplex> {
        if self.vertices.len() < self.dim + 1 {
            return Vec::new();
        }
        let all: BTreeSet<usize> = (0..self.vertices.len()).collect();
        let chains = self.pull_face(&all);
        self.chains_to_simplices(chains, None)
    }

    /// Cone a point (typically the origin, which must not lie on any facet of
    /// interest) over the pulling triangulations of all facets.
    pub fn cone_triangulation(&self, apex: &QVec) -> Vec<Simplex> {
        if self.vertices.len() < self.dim {
            return Vec::new();
        }
        let all: BTreeSet<usize> = (0..self.vertices.len()).collect();
        let mut chains = Vec::new();
        for facet in self.children_of(&all) {
            chains.extend(self.pull_face(&facet));
        }
        self.chains_to_simplices(chains, Some(apex))
    }

}

/// Strict vertex enumeration of an H-representation: errors on unbounded or
/// degenerate input instead of returning a partial list.
pub fn vertex_enumeration(h: &HalfspaceRep) -> Result<Vec<QVec>> {
    let region = Region::from_halfspaces(
        h.dim,
        h.facets
            .iter()
            .map(|f| (to_rat_vec(&f.normal), f.offset.clone()))
            .collect(),
    );
    if region.has_recession_ray() {
        return Err(Error::Unbounded);
    }
    if region.vertices.len() < h.dim + 1 {
        return Err(Error::Unbounded);
    }
    Ok(region.vertices)
}

/// Full-dimensional lattice polytope with `0` in its strict interior.
/// Immutable; every derived representation is computed at construction.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    dim: usize,
    tag: LatticeTag,
    vertices: Vec<IntVec>,
    region: Region,
    dual_vertices: Vec<QVec>,
    volume: Rational,
    moment: QVec,
    barycenter: QVec,
}

impl LatticePolytope {
    pub fn new(dim: usize, mut vertices: Vec<IntVec>, tag: LatticeTag) -> Result<Self> {
        if dim == 0 {
            return Err(Error::NotFullDimensional);
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex {
                    vertex: arith::format_int_vector(&w[0]),
                });
            }
        }
        if vertices.len() < dim + 1 {
            return Err(Error::TooFewVertices {
                count: vertices.len(),
                min: dim + 1,
                dim,
            });
        }
        if tag == LatticeTag::Fan {
            for v in &vertices {
                let mut g = Int::zero();
                for x in v {
                    g = g.gcd(x);
                }
                if !g.is_one() {
                    return Err(Error::NonPrimitiveVertex {
                        vertex: arith::format_int_vector(v),
                    });
                }
            }
        }
        let qverts: Vec<QVec> = vertices.iter().map(|v| to_rat_vec(v)).collect();
        let diffs: Vec<QVec> = qverts[1..]
            .iter()
            .map(|v| arith::sub_vec(v, &qverts[0]))
            .collect();
        if RationalMatrix::new(diffs)?.rank() != dim {
            return Err(Error::NotFullDimensional);
        }

        let halfspaces = enumerate_facets(dim, &vertices)?;
        let mut min_offset: Option<Rational> = None;
        for h in &halfspaces {
            if min_offset.as_ref().map_or(true, |m| h.offset < *m) {
                min_offset = Some(h.offset.clone());
            }
        }
        let min_offset = min_offset.ok_or_else(|| Error::internal("no facets found"))?;
        if min_offset.is_zero() {
            return Err(Error::OriginOnBoundary);
        }
        if min_offset.is_negative() {
            return Err(Error::OriginOutside);
        }

        let region = Region::from_parts(dim, halfspaces, qverts);
        for (i, v) in region.vertices.iter().enumerate() {
            let on = region.incidence.iter().filter(|inc| inc.contains(&i)).count();
            if on < dim {
                return Err(Error::RedundantVertex {
                    vertex: arith::format_vector(v),
                });
            }
        }

        // vertices of the dual body {y : ⟨v, y⟩ ≥ -1}
        let dual_region = Region::from_halfspaces(
            dim,
            vertices
                .iter()
                .map(|v| (to_rat_vec(v), Rational::one()))
                .collect(),
        );
        let dual_vertices = dual_region.vertices;
        if dual_vertices.len() < dim + 1 {
            return Err(Error::internal(
                "dual of a valid polytope must be full-dimensional",
            ));
        }

        let origin = zero_vec(dim);
        let mut volume = Rational::zero();
        let mut moment = zero_vec(dim);
        for s in region.cone_triangulation(&origin) {
            let v = s.volume();
            if v.is_zero() {
                continue;
            }
            moment = arith::add_vec(&moment, &scale_vec(&v, &s.centroid()));
            volume += v;
        }
        if !volume.is_positive() {
            return Err(Error::internal("polytope volume must be positive"));
        }
        let barycenter = scale_vec(&volume.recip(), &moment);

        Ok(LatticePolytope {
            dim,
            tag,
            vertices,
            region,
            dual_vertices,
            volume,
            moment,
            barycenter,
        })
    }

    pub fn from_i64(dim: usize, vertices: &[&[i64]], tag: LatticeTag) -> Result<Self> {
        LatticePolytope::new(
            dim,
            vertices.iter().map(|v| arith::int_vec(v)).collect(),
            tag,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> LatticeTag {
        self.tag
    }

    /// Lexicographically sorted vertex list.
    pub fn vertices(&self) -> &[IntVec] {
        &self.vertices
    }

    /// Irredundant facets, sorted; offsets are positive (0 is interior).
    pub fn facets(&self) -> &[Halfspace] {
        &self.region.halfspaces
    }

    pub fn facet_representation(&self) -> HalfspaceRep {
        HalfspaceRep {
            dim: self.dim,
            facets: self.region.halfspaces.clone(),
        }
    }

    /// Vertex indices incident to facet `i`.
    pub fn facet_vertices(&self, i: usize) -> Vec<usize> {
        self.region.incidence[i].iter().copied().collect()
    }

    /// Vertices of the dual body, exact rationals, sorted.
    pub fn dual_vertices(&self) -> &[QVec] {
        &self.dual_vertices
    }

    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    /// Unnormalized `∫ x dx`.
    pub fn moment(&self) -> &QVec {
        &self.moment
    }

    /// `∫ x dx / vol`.
    pub fn barycenter(&self) -> &QVec {
        &self.barycenter
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.region.halfspaces.iter().all(|h| !h.slack(x).is_negative())
    }

    pub fn contains_strict(&self, x: &[Rational]) -> bool {
        self.region.halfspaces.iter().all(|h| h.slack(x).is_positive())
    }

    /// The anticanonical dual `Δ = {y : ⟨x,y⟩ ≥ -1}`: its H-representation
    /// always, and its lattice model exactly when this polytope is reflexive.
    pub fn dual_polytope(&self) -> Result<(HalfspaceRep, Option<LatticePolytope>)> {
        let hrep = HalfspaceRep {
            dim: self.dim,
            facets: self
                .vertices
                .iter()
                .map(|v| Halfspace::new(v.clone(), Rational::one()))
                .collect(),
        };
        if !self.is_reflexive() {
            return Ok((hrep, None));
        }
        let ints: Vec<IntVec> = self
            .dual_vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_integer()).collect())
            .collect();
        let dual = LatticePolytope::new(self.dim, ints, self.tag.flip())?;
        Ok((hrep, Some(dual)))
    }

    /// True iff every vertex of the dual body is a lattice point.
    pub fn is_reflexive(&self) -> bool {
        self.dual_vertices.iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    /// Unimodularity of every maximal cone of the face fan: each facet has
    /// exactly `dim` vertices whose determinant is ±1.
    pub fn is_smooth_fano(&self) -> Result<bool> {
        if self.tag != LatticeTag::Fan {
            return Err(Error::NotFanLattice);
        }
        if !self.is_reflexive() {
            return Err(Error::NotReflexive);
        }
        for inc in &self.region.incidence {
            if inc.len() != self.dim {
                return Ok(false);
            }
            let rows: Vec<QVec> = inc
                .iter()
                .map(|&i| to_rat_vec(&self.vertices[i]))
                .collect();
            let det = RationalMatrix::new(rows)?.determinant()?;
            if !det.abs().is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The unique boundary point `t·d` with `t > 0` along direction `d`.
    pub fn boundary_ray_point(&self, d: &[Rational]) -> Result<QVec> {
        if is_zero_vec(d) {
            return Err(Error::ZeroVector);
        }
        if d.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: d.len(),
            });
        }
        let mut t_min: Option<Rational> = None;
        for h in &self.region.halfspaces {
            let pairing = dot_int(d, &h.normal);
            if pairing.is_negative() {
                let t = -&h.offset / pairing;
                if t_min.as_ref().map_or(true, |m| t < *m) {
                    t_min = Some(t);
                }
            }
        }
        let t = t_min.ok_or_else(|| Error::internal("bounded polytope must stop every ray"))?;
        Ok(scale_vec(&t, d))
    }

    /// Cone-over-facets decomposition from the interior origin.
    pub fn triangulate(&self) -> Vec<Simplex> {
        self.region.cone_triangulation(&zero_vec(self.dim))
    }

    /// Pulling triangulation from the lexicographically smallest vertex.
    pub fn pull_triangulation(&self) -> Vec<Simplex> {
        self.region.pull_triangulation()
    }

    /// Image under an integer matrix (rows act on column vectors).
    pub fn transform(&self, u: &[IntVec]) -> Result<LatticePolytope> {
        let verts: Vec<IntVec> = self
            .vertices
            .iter()
            .map(|v| {
                u.iter()
                    .map(|row| arith::dot_ii(row, v))
                    .collect::<IntVec>()
            })
            .collect();
        LatticePolytope::new(self.dim, verts, self.tag)
    }
}

/// All facets of `conv(vertices)` by exhaustive supporting-hyperplane search
/// over `dim`-subsets of vertices. Exact, and independent of where the origin
/// sits; the offset signs then tell interior from boundary from outside.
fn enumerate_facets(dim: usize, vertices: &[IntVec]) -> Result<Vec<Halfspace>> {
    let m = vertices.len();
    let mut found: BTreeSet<(IntVec, Rational)> = BTreeSet::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let base = &vertices[subset[0]];
        let rows: Vec<QVec> = subset[1..]
            .iter()
            .map(|&i| {
                vertices[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| Rational::from_integer(a - b))
                    .collect()
            })
            .collect();
        let null = if dim == 1 {
            vec![vec![Rational::one()]]
        } else {
            RationalMatrix::new(rows)?.null_space()
        };
        if null.len() == 1 {
            let (normal, _) = primitive_with_scale(&null[0])?;
            let beta = arith::dot_ii(&normal, base);
            let mut all_ge = true;
            let mut all_le = true;
            for v in vertices {
                let val = arith::dot_ii(&normal, v);
                if val < beta {
                    all_ge = false;
                }
                if val > beta {
                    all_le = false;
                }
                if !all_ge && !all_le {
                    break;
                }
            }
            if all_ge {
                found.insert((normal.clone(), Rational::from_integer(-&beta)));
            }
            if all_le {
                found.insert((
                    normal.iter().map(|x| -x).collect(),
                    Rational::from_integer(beta),
                ));
            }
        }
        let mut i = dim;
        let mut done = false;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if subset[i] != i + m - dim {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
        if done {
            break;
        }
    }
    Ok(found
        .into_iter()
        .map(|(normal, offset)| Halfspace::new(normal, offset))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int_vec, rat, rat_vec};

    fn p2() -> LatticePolytope {
        LatticePolytope::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], LatticeTag::Fan).unwrap()
    }

    fn square() -> LatticePolytope {
        LatticePolytope::from_i64(
            2,
            &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]],
            LatticeTag::Fan,
        )
        .unwrap()
    }

    fn bl1p2_delta() -> LatticePolytope {
        // dual of the fan polytope with rays (1,0),(1,1),(0,1),(-1,-1)
        LatticePolytope::from_i64(
            2,
            &[&[-1, 0], &[0, -1], &[2, -1], &[-1, 2]],
            LatticeTag::Dual,
        )
        .unwrap()
    }

    #[test]
    fn dual_of_p2_is_the_big_triangle() {
        let p = p2();
        let (hrep, dual) = p.dual_polytope().unwrap();
        assert_eq!(hrep.facets.len(), 3);
        let dual = dual.expect("P^2 is reflexive");
        assert_eq!(
            dual.vertices(),
            &[int_vec(&[-1, -1]), int_vec(&[-1, 2]), int_vec(&[2, -1])]
        );
    }

    #[test]
    fn dual_of_square_is_cross_polytope() {
        let (_, dual) = square().dual_polytope().unwrap();
        let dual = dual.unwrap();
        assert_eq!(
            dual.vertices(),
            &[
                int_vec(&[-1, 0]),
                int_vec(&[0, -1]),
                int_vec(&[0, 1]),
                int_vec(&[1, 0])
            ]
        );
    }

    #[test]
    fn double_dual_is_identity_on_reflexive() {
        for p in [p2(), square(), bl1p2_delta()] {
            let (_, dual) = p.dual_polytope().unwrap();
            let (_, back) = dual.unwrap().dual_polytope().unwrap();
            assert_eq!(back.unwrap().vertices(), p.vertices());
        }
    }

    #[test]
    fn vertex_enumeration_triangle() {
        let h = HalfspaceRep {
            dim: 2,
            facets: vec![
                Halfspace::new(int_vec(&[1, 0]), rat(1)),
                Halfspace::new(int_vec(&[0, 1]), rat(1)),
                Halfspace::new(int_vec(&[-1, -1]), rat(1)),
            ],
        };
        assert_eq!(
            vertex_enumeration(&h).unwrap(),
            vec![rat_vec(&[-1, -1]), rat_vec(&[-1, 2]), rat_vec(&[2, -1])]
        );
    }

    #[test]
    fn vertex_enumeration_box() {
        let h = HalfspaceRep {
            dim: 2,
            facets: vec![
                Halfspace::new(int_vec(&[1, 0]), rat(1)),
                Halfspace::new(int_vec(&[-1, 0]), rat(1)),
                Halfspace::new(int_vec(&[0, 1]), rat(1)),
                Halfspace::new(int_vec(&[0, -1]), rat(1)),
            ],
        };
        assert_eq!(vertex_enumeration(&h).unwrap().len(), 4);
    }

    #[test]
    fn vertex_enumeration_excludes_infeasible_intersections() {
        // Bl1P2: the candidate (-1,-1) violates <x,(1,1)> >= -1
        let h = HalfspaceRep {
            dim: 2,
            facets: vec![
                Halfspace::new(int_vec(&[1, 0]), rat(1)),
                Halfspace::new(int_vec(&[1, 1]), rat(1)),
                Halfspace::new(int_vec(&[0, 1]), rat(1)),
                Halfspace::new(int_vec(&[-1, -1]), rat(1)),
            ],
        };
        let vs = vertex_enumeration(&h).unwrap();
        assert_eq!(
            vs,
            vec![
                rat_vec(&[-1, 0]),
                rat_vec(&[-1, 2]),
                rat_vec(&[0, -1]),
                rat_vec(&[2, -1])
            ]
        );
    }

    #[test]
    fn vertex_enumeration_rejects_unbounded() {
        let h = HalfspaceRep {
            dim: 2,
            facets: vec![
                Halfspace::new(int_vec(&[1, 0]), rat(1)),
                Halfspace::new(int_vec(&[0, 1]), rat(1)),
            ],
        };
        assert!(matches!(vertex_enumeration(&h), Err(Error::Unbounded)));
    }

    #[test]
    fn facets_of_cross_polytope() {
        let cross = LatticePolytope::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
            LatticeTag::Fan,
        )
        .unwrap();
        let normals: Vec<IntVec> = cross.facets().iter().map(|h| h.normal.clone()).collect();
        assert_eq!(
            normals,
            vec![
                int_vec(&[-1, -1]),
                int_vec(&[-1, 1]),
                int_vec(&[1, -1]),
                int_vec(&[1, 1])
            ]
        );
        assert!(cross.facets().iter().all(|h| h.offset == rat(1)));
    }

    #[test]
    fn facets_of_p2_dual() {
        let delta = LatticePolytope::from_i64(
            2,
            &[&[-1, -1], &[2, -1], &[-1, 2]],
            LatticeTag::Dual,
        )
        .unwrap();
        let fs: Vec<(IntVec, Rational)> = delta
            .facets()
            .iter()
            .map(|h| (h.normal.clone(), h.offset.clone()))
            .collect();
        assert_eq!(
            fs,
            vec![
                (int_vec(&[-1, -1]), rat(1)),
                (int_vec(&[0, 1]), rat(1)),
                (int_vec(&[1, 0]), rat(1)),
            ]
        );
    }

    #[test]
    fn reflexivity_checks() {
        assert!(p2().is_reflexive());
        assert!(square().is_reflexive());
        let doubled = LatticePolytope::from_i64(
            2,
            &[&[2, 0], &[0, 2], &[-2, 0], &[0, -2]],
            LatticeTag::Dual,
        )
        .unwrap();
        assert!(!doubled.is_reflexive());
    }

    #[test]
    fn smoothness_checks() {
        assert!(p2().is_smooth_fano().unwrap());
        // weighted P(1,1,2): facet {(1,0),(-1,-2)} has determinant -2
        let w = LatticePolytope::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -2]], LatticeTag::Fan)
            .unwrap();
        assert!(!w.is_smooth_fano().unwrap());
        // square as a fan polytope is reflexive but singular
        assert!(!square().is_smooth_fano().unwrap());
        // non-reflexive fan polytope is rejected
        let nr = LatticePolytope::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -3]], LatticeTag::Fan)
            .unwrap();
        assert!(!nr.is_reflexive());
        assert!(matches!(nr.is_smooth_fano(), Err(Error::NotReflexive)));
        // wrong lattice side
        let d = bl1p2_delta();
        assert!(matches!(d.is_smooth_fano(), Err(Error::NotFanLattice)));
    }

    #[test]
    fn triangle_triangulates_to_itself() {
        let delta = LatticePolytope::from_i64(
            2,
            &[&[-1, -1], &[2, -1], &[-1, 2]],
            LatticeTag::Dual,
        )
        .unwrap();
        let tri = delta.pull_triangulation();
        assert_eq!(tri.len(), 1);
        assert_eq!(tri[0].volume(), frac(9, 2));
    }

    #[test]
    fn box_cones_into_four_unit_triangles() {
        let tri = square().triangulate();
        assert_eq!(tri.len(), 4);
        for s in &tri {
            assert_eq!(s.volume(), rat(1));
        }
    }

    #[test]
    fn bl1p2_pulls_into_areas_one_and_three() {
        let d = bl1p2_delta();
        // lex-min vertex is (-1,0)
        let mut areas: Vec<Rational> = d.pull_triangulation().iter().map(|s| s.volume()).collect();
        areas.sort();
        assert_eq!(areas, vec![rat(1), rat(3)]);
    }

    #[test]
    fn volume_and_barycenter_examples() {
        let delta = LatticePolytope::from_i64(
            2,
            &[&[-1, -1], &[2, -1], &[-1, 2]],
            LatticeTag::Dual,
        )
        .unwrap();
        assert_eq!(delta.volume(), &frac(9, 2));
        assert_eq!(delta.barycenter(), &rat_vec(&[0, 0]));

        let d = bl1p2_delta();
        assert_eq!(d.volume(), &rat(4));
        assert_eq!(d.barycenter(), &vec![frac(1, 12), frac(1, 12)]);
        assert_eq!(d.moment(), &vec![frac(1, 3), frac(1, 3)]);
    }

    #[test]
    fn boundary_ray_points() {
        assert_eq!(
            square().boundary_ray_point(&rat_vec(&[1, 0])).unwrap(),
            rat_vec(&[1, 0])
        );
        let d = bl1p2_delta();
        let q = d.boundary_ray_point(&neg_vec(d.barycenter())).unwrap();
        assert_eq!(q, vec![frac(-1, 2), frac(-1, 2)]);
        assert!(matches!(
            d.boundary_ray_point(&rat_vec(&[0, 0])),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        // 0 on the boundary
        assert!(matches!(
            LatticePolytope::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1]], LatticeTag::Dual),
            Err(Error::OriginOnBoundary)
        ));
        // 0 outside
        assert!(matches!(
            LatticePolytope::from_i64(2, &[&[1, 0], &[2, 0], &[1, 1]], LatticeTag::Dual),
            Err(Error::OriginOutside)
        ));
        // lower-dimensional
        assert!(matches!(
            LatticePolytope::from_i64(2, &[&[1, 0], &[-1, 0], &[2, 0]], LatticeTag::Dual),
            Err(Error::NotFullDimensional) | Err(Error::RedundantVertex { .. })
        ));
        // duplicates
        assert!(matches!(
            LatticePolytope::from_i64(2, &[&[1, 0], &[1, 0], &[0, 1], &[-1, -1]], LatticeTag::Fan),
            Err(Error::DuplicateVertex { .. })
        ));
        // too few points
        assert!(matches!(
            LatticePolytope::from_i64(2, &[&[1, 0], &[0, 1]], LatticeTag::Fan),
            Err(Error::TooFewVertices { .. })
        ));
        // redundant interior point
        assert!(matches!(
            LatticePolytope::from_i64(
                2,
                &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1], &[0, 0]],
                LatticeTag::Dual
            ),
            Err(Error::RedundantVertex { .. })
        ));
        // non-primitive fan vertex
        assert!(matches!(
            LatticePolytope::from_i64(2, &[&[2, 0], &[0, 1], &[-1, -1]], LatticeTag::Fan),
            Err(Error::NonPrimitiveVertex { .. })
        ));
    }

    #[test]
    fn cone_and_pull_volumes_agree() {
        for p in [p2(), square(), bl1p2_delta()] {
            let cone: Rational = p.triangulate().iter().map(|s| s.volume()).sum();
            let pull: Rational = p.pull_triangulation().iter().map(|s| s.volume()).sum();
            assert_eq!(&cone, p.volume());
            assert_eq!(&pull, p.volume());
        }
    }

    #[test]
    fn unimodular_images_preserve_invariants() {
        // shear compose swap, determinant -1
        let u = vec![int_vec(&[1, 2]), int_vec(&[0, -1])];
        for p in [p2(), square(), bl1p2_delta()] {
            let q = p.transform(&u).unwrap();
            assert_eq!(q.volume(), p.volume());
            let ub: QVec = u
                .iter()
                .map(|row| dot_int(p.barycenter(), row))
                .collect();
            assert_eq!(q.barycenter(), &ub);
            assert_eq!(q.is_reflexive(), p.is_reflexive());
            if p.tag() == LatticeTag::Fan {
                assert_eq!(q.is_smooth_fano().unwrap(), p.is_smooth_fano().unwrap());
            }
        }
    }
}
