//! The full invariant bundle for one polytope and its serializations.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::arith::{format_rational, format_vector, is_zero_vec, IntVec, QVec, Rational};
use crate::error::{Error, Result};
use crate::lattice::{ehrhart_polynomial, lattice_sum_polynomial};
use crate::polynomial::{Polynomial, VectorPolynomial};
use crate::polytope::{LatticePolytope, LatticeTag};
use crate::roots::{demazure_roots, is_reductive, nill_pairing_criterion, vertex_sum_sufficient, RootSet};
use crate::stability::{
    chow_condition_asymptotic, chow_condition_fixed, delta_invariant, greatest_ricci_lower_bound,
    k_polystable, theorem_chain, TheoremChain,
};

/// Fixed levels at which the report evaluates the Chow condition.
pub const CHOW_LEVELS: [i64; 3] = [-1, 1, 2];

/// Everything the suite computes for one Gorenstein toric Fano polytope.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub label: Option<String>,
    pub dim: usize,
    pub volume: Rational,
    pub barycenter: QVec,
    pub moment: QVec,
    pub delta: Rational,
    pub ricci_lower: Rational,
    pub q_point: Option<QVec>,
    /// `c` with `Q = c * barycenter`.
    pub ray_scale: Option<Rational>,
    pub selected_facets: Vec<usize>,
    pub ding_polystable: bool,
    pub k_polystable: bool,
    pub chow_fixed: Vec<(i64, bool)>,
    pub chow_asymptotic: bool,
    pub reflexive: bool,
    pub smooth: bool,
    pub ehrhart: Polynomial,
    pub lattice_sum: VectorPolynomial,
    pub roots: RootSet,
    pub reductive: bool,
    pub nill_vanishes: bool,
    /// Unnormalized integral over the fan polytope, the vector the pairing
    /// criterion is evaluated against.
    pub dual_moment: QVec,
    pub vertex_sum_zero: bool,
    pub chain: TheoremChain,
}

/// Run the complete analysis. The input may sit on either lattice side; the
/// missing side is recovered by duality, which requires a reflexive polytope.
pub fn analyze(p: &LatticePolytope) -> Result<StabilityReport> {
    analyze_labeled(p, None)
}

pub fn analyze_labeled(p: &LatticePolytope, label: Option<String>) -> Result<StabilityReport> {
    let (fan, delta) = match p.tag() {
        LatticeTag::Fan => {
            let (_, dual) = p.dual_polytope()?;
            (p.clone(), dual.ok_or(Error::NotReflexive)?)
        }
        LatticeTag::Dual => {
            let (_, dual) = p.dual_polytope()?;
            (dual.ok_or(Error::NotReflexive)?, p.clone())
        }
    };
    let dim = delta.dim();
    let smooth = fan.is_smooth_fano()?;

    // anticanonical dictionary: facets of Δ are the fan vertices at offset 1,
    // in the same sorted order
    let facet_normals: Vec<&IntVec> = delta.facets().iter().map(|h| &h.normal).collect();
    let fan_vertices: Vec<&IntVec> = fan.vertices().iter().collect();
    if facet_normals != fan_vertices
        || delta.facets().iter().any(|h| h.offset != Rational::one())
    {
        return Err(Error::internal(
            "facets of the dual polytope must be the fan vertices at offset 1",
        ));
    }

    let volume = delta.volume().clone();
    let moment = delta.moment().clone();
    let barycenter = delta.barycenter().clone();

    let e = ehrhart_polynomial(&delta)?;
    let s = lattice_sum_polynomial(&delta)?;
    if e.coeff(0) != Rational::one() {
        return Err(Error::internal("Ehrhart fit lost the constant term 1"));
    }
    if e.leading() != volume {
        return Err(Error::internal(
            "Ehrhart leading coefficient disagrees with the triangulated volume",
        ));
    }
    if s.is_zero() {
        if !is_zero_vec(&moment) {
            return Err(Error::internal(
                "zero sum polynomial with a nonzero moment integral",
            ));
        }
    } else if s.leading() != moment {
        return Err(Error::internal(
            "sum-polynomial leading coefficient disagrees with the moment integral",
        ));
    }

    let delta_inv = delta_invariant(&delta.facet_representation(), &barycenter)?;
    let ricci = greatest_ricci_lower_bound(&delta)?;
    if delta_inv != ricci.value {
        return Err(Error::internal(format!(
            "delta invariant {delta_inv} disagrees with Ricci bound {}",
            ricci.value
        )));
    }

    let polystable = k_polystable(&delta)?;
    let chow_fixed: Vec<(i64, bool)> = CHOW_LEVELS
        .iter()
        .map(|&lvl| (lvl, chow_condition_fixed(&e, &s, &barycenter, lvl)))
        .collect();
    let chow_asym = chow_condition_asymptotic(&e, &s, &barycenter);
    let chain = theorem_chain(&delta, &e, &s)?;

    let roots = demazure_roots(&fan)?;
    let reductive = is_reductive(&roots);
    let dual_moment = fan.moment().clone();
    let nill = nill_pairing_criterion(&dual_moment, &roots);
    if nill != reductive {
        return Err(Error::internal(
            "pairing criterion disagrees with root-set semisimplicity",
        ));
    }
    let vertex_sum_zero = vertex_sum_sufficient(&fan)?;
    if vertex_sum_zero && !reductive {
        return Err(Error::internal(
            "zero vertex sum must imply a semisimple fan",
        ));
    }

    Ok(StabilityReport {
        label,
        dim,
        volume,
        barycenter,
        moment,
        delta: delta_inv,
        ricci_lower: ricci.value,
        q_point: ricci.q_point,
        ray_scale: ricci.ray_scale,
        selected_facets: ricci.selected_facets,
        ding_polystable: polystable,
        k_polystable: polystable,
        chow_fixed,
        chow_asymptotic: chow_asym,
        reflexive: true,
        smooth,
        ehrhart: e,
        lattice_sum: s,
        roots,
        reductive,
        nill_vanishes: nill,
        dual_moment,
        vertex_sum_zero,
        chain,
    })
}

#[derive(Serialize)]
struct JsonRoots {
    all: Vec<Vec<i64>>,
    semisimple: Vec<Vec<i64>>,
    unipotent: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct JsonReport {
    volume: String,
    barycenter: Vec<String>,
    moment: Vec<String>,
    delta: String,
    ricci_lower: String,
    q_point: Option<Vec<String>>,
    ding_polystable: bool,
    k_polystable: bool,
    chow_fixed: BTreeMap<String, bool>,
    chow_asymptotic: bool,
    reflexive: bool,
    smooth: bool,
    roots: JsonRoots,
    reductive: bool,
}

fn vec_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn int_rows(v: &[IntVec]) -> Vec<Vec<i64>> {
    v.iter()
        .map(|m| {
            m.iter()
                .map(|x| i64::try_from(x).expect("root coordinates are small"))
                .collect()
        })
        .collect()
}

impl StabilityReport {
    /// Flat, byte-stable JSON: struct field order is fixed, map keys sorted,
    /// rationals rendered as `p/q` strings.
    pub fn to_json(&self) -> String {
        let j = JsonReport {
            volume: format_rational(&self.volume),
            barycenter: vec_strings(&self.barycenter),
            moment: vec_strings(&self.moment),
            delta: format_rational(&self.delta),
            ricci_lower: format_rational(&self.ricci_lower),
            q_point: self.q_point.as_ref().map(|q| vec_strings(q)),
            ding_polystable: self.ding_polystable,
            k_polystable: self.k_polystable,
            chow_fixed: self
                .chow_fixed
                .iter()
                .map(|(lvl, ok)| (lvl.to_string(), *ok))
                .collect(),
            chow_asymptotic: self.chow_asymptotic,
            reflexive: self.reflexive,
            smooth: self.smooth,
            roots: JsonRoots {
                all: int_rows(&self.roots.roots),
                semisimple: int_rows(&self.roots.semisimple),
                unipotent: int_rows(&self.roots.unipotent),
            },
            reductive: self.reductive,
        };
        serde_json::to_string(&j).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self.label.as_deref().unwrap_or("polytope");
        out.push_str(&format!("{name} (dim {})\n", self.dim));
        out.push_str(&format!(
            "  reflexive: {}   smooth: {}\n",
            self.reflexive, self.smooth
        ));
        out.push_str(&format!("  volume: {}\n", format_rational(&self.volume)));
        out.push_str(&format!("  barycenter: {}\n", format_vector(&self.barycenter)));
        out.push_str(&format!("  moment integral: {}\n", format_vector(&self.moment)));
        out.push_str(&format!(
            "  delta: {}   ricci lower bound: {}\n",
            format_rational(&self.delta),
            format_rational(&self.ricci_lower)
        ));
        match (&self.q_point, &self.ray_scale) {
            (Some(q), Some(c)) => {
                out.push_str(&format!(
                    "  Q: {}   (Q = {} * barycenter)\n",
                    format_vector(q),
                    format_rational(c)
                ));
                let normals: Vec<String> = self
                    .selected_facets
                    .iter()
                    .map(|&i| crate::arith::format_int_vector(&self.roots.rays[i]))
                    .collect();
                out.push_str(&format!("  facets containing Q: [{}]\n", normals.join(", ")));
            }
            _ => out.push_str("  Q: absent (barycenter is 0)\n"),
        }
        out.push_str(&format!(
            "  ding_polystable: {}   k_polystable: {}\n",
            self.ding_polystable, self.k_polystable
        ));
        let levels: Vec<String> = self
            .chow_fixed
            .iter()
            .map(|(lvl, ok)| format!("i={lvl}: {ok}"))
            .collect();
        out.push_str(&format!(
            "  chow fixed {{{}}}   asymptotic: {}\n",
            levels.join(", "),
            self.chow_asymptotic
        ));
        out.push_str(&format!("  ehrhart: {}\n", self.ehrhart.to_coeff_string()));
        out.push_str(&format!(
            "  lattice point sum: {}\n",
            self.lattice_sum.to_coeff_string()
        ));
        let fmt_roots = |v: &Vec<IntVec>| {
            let parts: Vec<String> = v
                .iter()
                .map(|m| crate::arith::format_int_vector(m))
                .collect();
            format!("[{}]", parts.join(", "))
        };
        out.push_str(&format!(
            "  roots: {} total, semisimple {}, unipotent {}\n",
            self.roots.roots.len(),
            fmt_roots(&self.roots.semisimple),
            fmt_roots(&self.roots.unipotent)
        ));
        out.push_str(&format!(
            "  reductive: {}   pairing criterion vanishes: {}   vertex sum zero: {}\n",
            self.reductive, self.nill_vanishes, self.vertex_sum_zero
        ));
        out.push_str(&format!(
            "  dual-side integral: {}\n",
            format_vector(&self.dual_moment)
        ));
        out
    }
}
