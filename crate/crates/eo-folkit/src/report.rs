//! Serializable reports and the DOT emitter. Every JSON report carries the
//! schema tag "eo-folkit/1" and round-trips through serde unchanged.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::counting::{ClosedCount, DegreeTable};
use crate::deformation::{ambient_label, DeformationContext, TangentDims, UniversalDeformation};
use crate::dieudonne::{CanonicalWord, DieudonneModule, MapKind, Subspace};
use crate::error::{Error, Result};
use crate::gf::DerivationCheck;
use crate::weyl::StratumPoset;

pub const SCHEMA: &str = "eo-folkit/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumRow {
    pub w: String,
    pub length: usize,
    pub a_sigma: usize,
    pub in_s_sharp: bool,
    pub is_fol: bool,
    pub fiber_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrataReport {
    pub schema: String,
    pub n: usize,
    pub m: usize,
    pub strata: Vec<StratumRow>,
    /// Cover pairs (larger, smaller) by one-line notation.
    pub covers: Vec<[String; 2]>,
}

pub fn strata_report(poset: &StratumPoset) -> StrataReport {
    StrataReport {
        schema: SCHEMA.to_string(),
        n: poset.n,
        m: poset.m,
        strata: poset
            .nodes
            .iter()
            .map(|s| StratumRow {
                w: s.label.one_line(),
                length: s.length,
                a_sigma: s.a_sigma,
                in_s_sharp: s.in_s_sharp,
                is_fol: s.is_fol,
                fiber_dim: s.fiber_dim,
            })
            .collect(),
        covers: poset
            .covers
            .iter()
            .map(|&(a, b)| {
                [
                    poset.nodes[a].label.one_line(),
                    poset.nodes[b].label.one_line(),
                ]
            })
            .collect(),
    }
}

/// DOT rendering of the poset: edges run from larger to smaller stratum
/// and nodes of equal length share a rank.
pub fn poset_to_dot(poset: &StratumPoset) -> String {
    let mut out = String::from("digraph eo_strata {\n  rankdir=TB;\n  node [shape=box];\n");
    let mut lengths: Vec<usize> = poset.nodes.iter().map(|s| s.length).collect();
    lengths.sort_unstable();
    lengths.dedup();
    lengths.reverse();
    for len in lengths {
        let members: Vec<String> = poset
            .nodes
            .iter()
            .filter(|s| s.length == len)
            .map(|s| format!("\"{}\";", s.label.one_line()))
            .collect();
        out.push_str(&format!("  {{ rank=same; {} }}\n", members.join(" ")));
    }
    for node in &poset.nodes {
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\\n\u{2113}={}\"];\n",
            node.label.one_line(),
            node.label.one_line(),
            node.length
        ));
    }
    for &(a, b) in &poset.covers {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            poset.nodes[a].label.one_line(),
            poset.nodes[b].label.one_line()
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumReport {
    pub schema: String,
    pub n: usize,
    pub m: usize,
    pub w: String,
    pub length: usize,
    pub a_sigma: usize,
    pub in_s_sharp: bool,
    pub is_fol: bool,
    pub is_ordinary: bool,
    pub fiber_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapEntry {
    pub map: String,
    pub src: String,
    pub dst: String,
}

/// A graded span by 1-based basis indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanIndices {
    pub e: Vec<usize>,
    pub f: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DieudonneReport {
    pub schema: String,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub structure: Vec<MapEntry>,
    pub kernel_f: SpanIndices,
    pub kernel_v: SpanIndices,
    pub image_f: SpanIndices,
    pub image_v: SpanIndices,
    pub vq_image: SpanIndices,
    pub hasse: Vec<Vec<String>>,
    pub hasse_is_zero: bool,
}

fn span_indices(module: &DieudonneModule, sub: &Subspace) -> Result<SpanIndices> {
    match module.basis_indices(sub) {
        Some((e, f)) => Ok(SpanIndices { e, f }),
        None => Err(Error::Inconsistent(
            "span is not generated by standard basis vectors".to_string(),
        )),
    }
}

fn structure_entries(module: &DieudonneModule) -> Vec<MapEntry> {
    let nm = module.n() + module.m();
    let gf = module.gf();
    let name = |coord: usize| -> String {
        if coord < nm {
            format!("e_{}", coord + 1)
        } else {
            format!("f_{}", coord - nm + 1)
        }
    };
    let mut out = Vec::new();
    for (label, mat) in [("F", module.f_matrix()), ("V", module.v_matrix())] {
        for col in 0..2 * nm {
            let mut terms = Vec::new();
            for (row, mat_row) in mat.iter().enumerate() {
                let c = mat_row[col];
                if !c.is_zero() {
                    let sign = if c == gf.neg(gf.one()) {
                        "-"
                    } else if c == gf.one() {
                        ""
                    } else {
                        "?"
                    };
                    terms.push(format!("{sign}{}", name(row)));
                }
            }
            let dst = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            };
            out.push(MapEntry {
                map: label.to_string(),
                src: name(col),
                dst,
            });
        }
    }
    out
}

pub fn dieudonne_report(module: &DieudonneModule) -> Result<DieudonneReport> {
    let hasse = crate::dieudonne::hasse_matrix(module);
    let gf = module.gf();
    Ok(DieudonneReport {
        schema: SCHEMA.to_string(),
        p: gf.p(),
        n: module.n(),
        m: module.m(),
        structure: structure_entries(module),
        kernel_f: span_indices(module, &module.map_kernel(MapKind::F))?,
        kernel_v: span_indices(module, &module.map_kernel(MapKind::V))?,
        image_f: span_indices(module, &module.map_image(MapKind::F, &module.full_space(1)?)?)?,
        image_v: span_indices(module, &module.map_image(MapKind::V, &module.full_space(0)?)?)?,
        vq_image: span_indices(module, &crate::dieudonne::vq_image(module)?)?,
        hasse_is_zero: crate::dieudonne::matrix_is_zero(&hasse),
        hasse: hasse
            .iter()
            .map(|row| row.iter().map(|&x| gf.render(x)).collect())
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub word: String,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanfiltReport {
    pub schema: String,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub trace: Vec<TraceStep>,
    pub result_a: usize,
    pub result_b: usize,
}

pub fn canfilt_report(p: u64, n: usize, m: usize, word: &CanonicalWord) -> CanfiltReport {
    CanfiltReport {
        schema: SCHEMA.to_string(),
        p,
        n,
        m,
        r: word.r,
        trace: word
            .trace
            .iter()
            .map(|s| TraceStep {
                word: s.word.clone(),
                a: s.pair.a,
                b: s.pair.b,
            })
            .collect(),
        result_a: word.lattice_result.a,
        result_b: word.lattice_result.b,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeformReport {
    pub schema: String,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub sigma_generators: Vec<String>,
    pub sigma_bar_generators: Vec<String>,
    /// Sigma-bar generator label -> { e-basis index -> coefficient }.
    pub residues: BTreeMap<String, BTreeMap<String, String>>,
    pub ideal: Vec<String>,
    pub ideal_ambient: Vec<String>,
    pub total_dim: usize,
    pub foliation_dim: usize,
    pub fiber_dim: usize,
}

fn render_rvec(ctx: &DeformationContext, v: &[crate::gf::DefRingElt]) -> String {
    let nm = ctx.n() + ctx.m();
    let mut terms = Vec::new();
    for (coord, entry) in v.iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let base = if coord < nm {
            format!("e_{}", coord + 1)
        } else {
            format!("f_{}", coord - nm + 1)
        };
        terms.push(format!("({})*{}", ctx.ring().render(entry), base));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn deform_report(
    ctx: &DeformationContext,
    deformation: &UniversalDeformation,
    dims: &TangentDims,
) -> Result<DeformReport> {
    let (n, m) = (ctx.n(), ctx.m());
    let residues = ctx.v_image_residues()?;
    let ideal = ctx.sfol_ideal()?;
    let mut residue_map = BTreeMap::new();
    for (row, gen) in residues.iter().zip(deformation.sigma_bar.iter()) {
        let mut inner = BTreeMap::new();
        for (&coord, entry) in &row.residue {
            inner.insert(format!("e_{coord}"), ctx.ring().render(entry));
        }
        residue_map.insert(render_rvec(ctx, gen), inner);
    }
    Ok(DeformReport {
        schema: SCHEMA.to_string(),
        p: ctx.ring().gf().p(),
        n,
        m,
        sigma_generators: deformation
            .sigma
            .iter()
            .map(|g| render_rvec(ctx, g))
            .collect(),
        sigma_bar_generators: deformation
            .sigma_bar
            .iter()
            .map(|g| render_rvec(ctx, g))
            .collect(),
        residues: residue_map,
        ideal_ambient: ideal.iter().map(|g| ambient_label(g, n, m)).collect(),
        ideal,
        total_dim: dims.total,
        foliation_dim: dims.foliation,
        fiber_dim: dims.fiber,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreesReport {
    pub rho: String,
    pub rho_prime: String,
    pub pi_et: String,
    pub theta: String,
    pub theta_prime: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub schema: String,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub closed_form: String,
    pub closed_factors: [String; 3],
    pub brute_force: Option<String>,
    pub fast_path: Option<String>,
    pub oracle: Option<String>,
    pub degrees: DegreesReport,
    pub elapsed_ms: u64,
}

#[allow(clippy::too_many_arguments)]
pub fn count_report(
    p: u64,
    n: usize,
    m: usize,
    closed: &ClosedCount,
    brute: Option<String>,
    fast: Option<String>,
    oracle: Option<String>,
    degrees: &DegreeTable,
    elapsed_ms: u64,
) -> CountReport {
    CountReport {
        schema: SCHEMA.to_string(),
        p,
        n,
        m,
        closed_form: closed.total.to_string(),
        closed_factors: [
            closed.factor_gamma2.to_string(),
            closed.factor_offdiag.to_string(),
            closed.factor_diag.to_string(),
        ],
        brute_force: brute,
        fast_path: fast,
        oracle,
        degrees: DegreesReport {
            rho: degrees.deg_rho.to_string(),
            rho_prime: degrees.deg_rho_prime.to_string(),
            pi_et: degrees.deg_pi_et.to_string(),
            theta: degrees.deg_theta.to_string(),
            theta_prime: degrees.deg_theta_prime.to_string(),
        },
        elapsed_ms,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub schema: String,
    pub p: u64,
    pub degree_bound: u32,
    pub monomials_checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

pub fn derivation_report(check: &DerivationCheck) -> DerivationReport {
    DerivationReport {
        schema: SCHEMA.to_string(),
        p: check.p,
        degree_bound: check.degree_bound,
        monomials_checked: check.cases.len(),
        failures: check
            .cases
            .iter()
            .filter(|c| !c.ok)
            .map(|c| format!("x^{} y^{}", c.deg_x, c.deg_y))
            .collect(),
        pass: check.all_pass(),
    }
}
