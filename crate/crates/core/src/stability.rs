//! Stability invariants of the anticanonical polytope: the delta invariant,
//! the greatest Ricci lower bound with its boundary point Q, the Ding
//! functional slope of piecewise linear convex functions, the barycenter
//! criterion for Ding/K-polystability, and Chow-type necessary conditions.

use num_traits::{One, Signed, Zero};

use crate::arith::{
    add_vec, dot, dot_int, is_zero_vec, neg_vec, scale_vec, to_rat_vec, QVec, Rational,
};
use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, VectorPolynomial};
use crate::polytope::{HalfspaceRep, LatticePolytope, Region};

/// Convex piecewise linear function `u(x) = max_k (⟨a_k, x⟩ + c_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    dim: usize,
    pieces: Vec<(QVec, Rational)>,
}

impl PiecewiseLinear {
    pub fn new(dim: usize, mut pieces: Vec<(QVec, Rational)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyPiecewise);
        }
        for (a, _) in &pieces {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.len(),
                });
            }
        }
        pieces.sort();
        pieces.dedup();
        Ok(PiecewiseLinear { dim, pieces })
    }

    pub fn affine(gradient: QVec, constant: Rational) -> Result<Self> {
        let dim = gradient.len();
        PiecewiseLinear::new(dim, vec![(gradient, constant)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[(QVec, Rational)] {
        &self.pieces
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.pieces
            .iter()
            .map(|(a, c)| dot(a, x) + c)
            .max()
            .expect("nonempty")
    }

    pub fn at_zero(&self) -> Rational {
        self.pieces
            .iter()
            .map(|(_, c)| c.clone())
            .max()
            .expect("nonempty")
    }

    /// Add an affine function to every piece.
    pub fn plus_affine(&self, gradient: &[Rational], constant: &Rational) -> Result<Self> {
        if gradient.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: gradient.len(),
            });
        }
        PiecewiseLinear::new(
            self.dim,
            self.pieces
                .iter()
                .map(|(a, c)| (add_vec(a, gradient), c + constant))
                .collect(),
        )
    }

    /// Subtract the affine piece active at the origin (lowest piece index on
    /// ties), giving `u' >= u'(0) = 0`. Used for the Jensen positivity test.
    pub fn normalized_at_zero(&self) -> Self {
        let u0 = self.at_zero();
        let (a0, c0) = self
            .pieces
            .iter()
            .find(|(_, c)| *c == u0)
            .expect("some piece attains the max at 0")
            .clone();
        let pieces = self
            .pieces
            .iter()
            .map(|(a, c)| (crate::arith::sub_vec(a, &a0), c - &c0))
            .collect();
        PiecewiseLinear::new(self.dim, pieces).expect("normalization keeps pieces nonempty")
    }
}

/// `δ = min_i 1 / (⟨b, v_i⟩ + c_i)` over the facets; general rational offsets
/// are allowed as long as every denominator stays positive.
pub fn delta_invariant(h: &HalfspaceRep, b: &[Rational]) -> Result<Rational> {
    if b.len() != h.dim {
        return Err(Error::DimensionMismatch {
            expected: h.dim,
            found: b.len(),
        });
    }
    let mut best: Option<Rational> = None;
    for (i, f) in h.facets.iter().enumerate() {
        let den = dot_int(b, &f.normal) + &f.offset;
        if !den.is_positive() {
            return Err(Error::NonpositivePairing {
                facet: i,
                value: den.to_string(),
            });
        }
        let val = den.recip();
        if best.as_ref().map_or(true, |m| val < *m) {
            best = Some(val);
        }
    }
    best.ok_or_else(|| Error::internal("halfspace representation has no facets"))
}

/// Greatest Ricci lower bound data relative to a reference point on the ray
/// through the origin (the barycenter for the true invariant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RicciData {
    pub value: Rational,
    /// Boundary point of the ray from the reference point through 0; absent
    /// when the reference point is 0 itself.
    pub q_point: Option<QVec>,
    /// The negative scalar `c` with `Q = c * reference`.
    pub ray_scale: Option<Rational>,
    /// Indices of the facets containing Q (the pairing argmax set).
    pub selected_facets: Vec<usize>,
}

/// `R = dist(0,Q) / dist(b,Q)` computed without square roots via `Q = c·b`,
/// cross-checked against the closed form `1/(1 + max_i ⟨b,v_i⟩/c_i)`.
pub fn greatest_ricci_lower_bound(delta: &LatticePolytope) -> Result<RicciData> {
    ricci_at(delta, delta.barycenter())
}

/// Same construction from an arbitrary interior reference point.
pub fn ricci_at(delta: &LatticePolytope, reference: &[Rational]) -> Result<RicciData> {
    if is_zero_vec(reference) {
        return Ok(RicciData {
            value: Rational::one(),
            q_point: None,
            ray_scale: None,
            selected_facets: Vec::new(),
        });
    }
    let q = delta.boundary_ray_point(&neg_vec(reference))?;
    // q = t * (-reference), so c = -t
    let t = (0..delta.dim())
        .find_map(|j| {
            if reference[j].is_zero() {
                None
            } else {
                Some(-&q[j] / &reference[j])
            }
        })
        .expect("reference is nonzero");
    let c = -t.clone();
    let value = t.clone() / (Rational::one() + &t);

    // closed form from the facet pairings
    let mut max_ratio: Option<Rational> = None;
    for f in delta.facets() {
        let ratio = dot_int(reference, &f.normal) / &f.offset;
        if max_ratio.as_ref().map_or(true, |m| ratio > *m) {
            max_ratio = Some(ratio);
        }
    }
    let mu = max_ratio.ok_or_else(|| Error::internal("polytope has no facets"))?;
    if !mu.is_positive() {
        return Err(Error::internal(
            "interior reference point must pair positively with some facet",
        ));
    }
    let closed_form = (Rational::one() + &mu).recip();
    if closed_form != value {
        return Err(Error::internal(format!(
            "Ricci bound mismatch: ray route {value} vs closed form {closed_form}"
        )));
    }

    let selected = selector_at(delta, reference)?;
    // Q must lie exactly on the selected facets and strictly inside the rest
    for (i, f) in delta.facets().iter().enumerate() {
        let slack = f.slack(&q);
        let on = selected.binary_search(&i).is_ok();
        if on != slack.is_zero() || (!on && !slack.is_positive()) {
            return Err(Error::internal(format!(
                "boundary point incidence disagrees with pairing argmax on facet {i}"
            )));
        }
    }
    Ok(RicciData {
        value,
        q_point: Some(q),
        ray_scale: Some(c),
        selected_facets: selected,
    })
}

/// The argmax set `{i : ⟨b, v_i⟩/c_i maximal}`; these are exactly the facets
/// containing Q.
pub fn facet_selector(delta: &LatticePolytope) -> Result<Vec<usize>> {
    if is_zero_vec(delta.barycenter()) {
        return Err(Error::BarycenterZero);
    }
    selector_at(delta, delta.barycenter())
}

fn selector_at(delta: &LatticePolytope, reference: &[Rational]) -> Result<Vec<usize>> {
    let ratios: Vec<Rational> = delta
        .facets()
        .iter()
        .map(|f| dot_int(reference, &f.normal) / &f.offset)
        .collect();
    let max = ratios
        .iter()
        .max()
        .cloned()
        .ok_or_else(|| Error::internal("no facets"))?;
    Ok(ratios
        .iter()
        .enumerate()
        .filter(|(_, r)| **r == max)
        .map(|(i, _)| i)
        .collect())
}

/// Ding functional slope `I(u) = -u(0) + (1/vol) ∫ u dx`, integrated exactly
/// by decomposing the polytope into the regions where each piece attains the
/// max. Overlaps have measure zero; empty or degenerate regions contribute 0.
pub fn ding_invariant(delta: &LatticePolytope, u: &PiecewiseLinear) -> Result<Rational> {
    if u.dim() != delta.dim() {
        return Err(Error::DimensionMismatch {
            expected: delta.dim(),
            found: u.dim(),
        });
    }
    let dim = delta.dim();
    let mut integral = Rational::zero();
    let pieces = u.pieces();
    for (k, (a_k, c_k)) in pieces.iter().enumerate() {
        let mut constraints: Vec<(QVec, Rational)> = delta
            .facets()
            .iter()
            .map(|h| (to_rat_vec(&h.normal), h.offset.clone()))
            .collect();
        for (j, (a_j, c_j)) in pieces.iter().enumerate() {
            if j == k {
                continue;
            }
            // piece k dominates: ⟨a_k - a_j, x⟩ >= c_j - c_k
            constraints.push((crate::arith::sub_vec(a_k, a_j), c_k - c_j));
        }
        let region = Region::from_halfspaces(dim, constraints);
        if region.vertices.len() < dim + 1 {
            continue;
        }
        for s in region.pull_triangulation() {
            let v = s.volume();
            if v.is_zero() {
                continue;
            }
            integral += v * (dot(a_k, &s.centroid()) + c_k);
        }
    }
    Ok(-u.at_zero() + integral / delta.volume())
}

/// Ding polystability of a reflexive polytope: the barycenter is 0.
pub fn ding_polystable(delta: &LatticePolytope) -> Result<bool> {
    if !delta.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    Ok(is_zero_vec(delta.moment()))
}

/// K-polystability of the Gorenstein toric Fano variety: same barycenter
/// criterion, kept separate so both verdicts stay traceable to their sources.
pub fn k_polystable(delta: &LatticePolytope) -> Result<bool> {
    if !delta.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    Ok(is_zero_vec(delta.moment()))
}

/// Fixed-level Chow necessary condition `s(i) = E(i) · b`, with the fitted
/// polynomials evaluated at any integer level (negative levels included).
pub fn chow_condition_fixed(
    e: &Polynomial,
    s: &VectorPolynomial,
    barycenter: &[Rational],
    level: i64,
) -> bool {
    let lhs = s.eval_int(level);
    let rhs = scale_vec(&e.eval_int(level), barycenter);
    lhs == rhs
}

/// Asymptotic Chow condition: the polynomial identity `s(t) ≡ E(t) · b`,
/// coefficient by coefficient.
pub fn chow_condition_asymptotic(
    e: &Polynomial,
    s: &VectorPolynomial,
    barycenter: &[Rational],
) -> bool {
    let deg = e.degree().unwrap_or(0).max(s.degree().unwrap_or(0));
    for d in 0..=deg {
        if s.coeff(d) != scale_vec(&e.coeff(d), barycenter) {
            return false;
        }
    }
    true
}

/// The chain "asymptotically Chow semistable implies Ding polystable",
/// checked as a verdict implication and re-derived through the level -1
/// evaluation of the fitted polynomials.
#[derive(Debug, Clone)]
pub struct TheoremChain {
    pub chow_asymptotic: bool,
    pub moment_zero: bool,
    pub implication_holds: bool,
    pub ehrhart_at_minus_one: Rational,
    pub sum_at_minus_one: QVec,
    pub reciprocity_ok: bool,
    /// When the antecedent holds, the moment recovered from `s(-1)/E(-1)`
    /// agrees with the direct integral; vacuously true otherwise.
    pub proof_route_agrees: bool,
}

pub fn theorem_chain(
    delta: &LatticePolytope,
    e: &Polynomial,
    s: &VectorPolynomial,
) -> Result<TheoremChain> {
    if !delta.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let n = delta.dim();
    let b = delta.barycenter();
    let chow = chow_condition_asymptotic(e, s, b);
    let moment_zero = is_zero_vec(delta.moment());
    let implication_holds = !chow || moment_zero;
    let e_m1 = e.eval_int(-1);
    let s_m1 = s.eval_int(-1);
    let sign = if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let reciprocity_ok = e_m1 == sign && is_zero_vec(&s_m1);
    let proof_route_agrees = if chow {
        // s(-1) = E(-1)·b forces b = s(-1)/E(-1); with reciprocity this is 0
        let derived_b = scale_vec(&e_m1.recip(), &s_m1);
        derived_b == *b && is_zero_vec(&derived_b) == moment_zero
    } else {
        true
    };
    if !implication_holds {
        return Err(Error::internal(
            "asymptotic Chow condition held with nonzero barycenter",
        ));
    }
    Ok(TheoremChain {
        chow_asymptotic: chow,
        moment_zero,
        implication_holds,
        ehrhart_at_minus_one: e_m1,
        sum_at_minus_one: s_m1,
        reciprocity_ok,
        proof_route_agrees,
    })
}

/// Parse the piecewise-linear file format: one piece per line, `n+1`
/// whitespace-separated rationals `a_1 .. a_n c`; `#` starts a comment.
pub fn parse_piecewise_linear(text: &str, dim: usize) -> Result<PiecewiseLinear> {
    let mut pieces = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != dim + 1 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected {} rationals, found {}", dim + 1, toks.len()),
            });
        }
        let mut vals = Vec::with_capacity(dim + 1);
        for t in &toks {
            let v = crate::arith::parse_rational(t).map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("bad rational `{t}`"),
            })?;
            vals.push(v);
        }
        let c = vals.pop().expect("n+1 values");
        pieces.push((vals, c));
    }
    PiecewiseLinear::new(dim, pieces)
}
