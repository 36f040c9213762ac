//! The one-shot verification suite behind `eofol verify`: every module's
//! invariants, sized by a combinatorial bound and a prime, with one
//! pass/fail line per suite. Output is deterministic for fixed flags.

use crate::counting;
use crate::deformation;
use crate::dieudonne::{self, LatticePair, LatticeStep, MapKind};
use crate::error::Result;
use crate::gf::{self, Gf};
use crate::linalg;
use crate::weyl;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn run(name: &str, body: impl FnOnce() -> Result<String>) -> SuiteResult {
    match body() {
        Ok(detail) => SuiteResult {
            name: name.to_string(),
            pass: true,
            detail,
        },
        Err(e) => SuiteResult {
            name: name.to_string(),
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn fail(msg: String) -> crate::Error {
    crate::Error::Inconsistent(msg)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn signature_pairs(max_nm: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=max_nm {
        for m in 1..n {
            if n + m <= max_nm {
                out.push((n, m));
            }
        }
    }
    out
}

fn shuffle_statistics(max_nm: usize) -> SuiteResult {
    run("shuffle-statistics", || {
        let mut checked = 0;
        for (n, m) in signature_pairs(max_nm) {
            let shuffles = weyl::enumerate_shuffles(n, m)?;
            if shuffles.len() as u128 != binomial(n + m, m) {
                return Err(fail(format!("|Pi({n},{m})| != C(n+m,m)")));
            }
            for s in &shuffles {
                if weyl::shuffle_length(s) != s.w().inversions() {
                    return Err(fail(format!(
                        "length formula != inversions at {}",
                        s.one_line()
                    )));
                }
            }
            let poset = weyl::eo_poset(n, m)?;
            if poset.maximal_nodes().len() != 1 || poset.minimal_nodes().len() != 1 {
                return Err(fail(format!("extrema not unique for ({n},{m})")));
            }
            let top = &poset.nodes[poset.maximal_nodes()[0]];
            if top.length != n * m || !top.is_ordinary {
                return Err(fail(format!("top stratum of ({n},{m}) is not ordinary")));
            }
            if m == 1 && poset.covers.len() != poset.nodes.len() - 1 {
                return Err(fail(format!("Pi({n},1) is not a chain")));
            }
            let sharp: Vec<usize> = (0..poset.nodes.len())
                .filter(|&i| poset.nodes[i].in_s_sharp)
                .collect();
            if sharp.len() as u128 != binomial(n, m) {
                return Err(fail(format!("sharp-locus count != C(n,m) for ({n},{m})")));
            }
            let w_fol = weyl::w_fol(n, m)?;
            let closure = poset.closure();
            let minimal_sharp: Vec<usize> = sharp
                .iter()
                .copied()
                .filter(|&i| sharp.iter().all(|&j| j == i || !closure[i][j]))
                .collect();
            let fol_idx = poset
                .node_index(&w_fol.one_line())
                .ok_or_else(|| fail("w_fol missing from poset".to_string()))?;
            if minimal_sharp != vec![fol_idx]
                || poset.nodes[fol_idx].length != m * m
                || !poset.nodes[fol_idx].is_fol
            {
                return Err(fail(format!(
                    "w_fol is not the unique minimal sharp stratum for ({n},{m})"
                )));
            }
            checked += 1;
        }
        Ok(format!("{checked} signatures, all statistics consistent"))
    })
}

fn eo_order_laws(max_nm: usize) -> SuiteResult {
    run("eo-order-laws", || {
        let mut pairs_checked = 0usize;
        for (n, m) in signature_pairs(max_nm.min(7)) {
            let shuffles = weyl::enumerate_shuffles(n, m)?;
            let count = shuffles.len();
            let mut leq = vec![vec![false; count]; count];
            for i in 0..count {
                for j in 0..count {
                    leq[i][j] = weyl::eo_leq(&shuffles[i], &shuffles[j])?;
                    if weyl::bruhat_leq(shuffles[i].w(), shuffles[j].w())? && !leq[i][j] {
                        return Err(fail(format!(
                            "Bruhat does not imply the EO order at ({n},{m})"
                        )));
                    }
                }
            }
            for i in 0..count {
                if !leq[i][i] {
                    return Err(fail("EO order not reflexive".to_string()));
                }
                for j in 0..count {
                    if i != j && leq[i][j] && leq[j][i] {
                        return Err(fail("EO order not antisymmetric".to_string()));
                    }
                    for k in 0..count {
                        if leq[i][j] && leq[j][k] && !leq[i][k] {
                            return Err(fail("EO order not transitive".to_string()));
                        }
                    }
                }
            }
            pairs_checked += count * count;
        }
        Ok(format!("{pairs_checked} ordered pairs, poset laws hold"))
    })
}

fn cover_diagram_42(max_nm: usize) -> SuiteResult {
    run("cover-diagram-(4,2)", || {
        if max_nm < 6 {
            return Ok("skipped (needs max-nm >= 6)".to_string());
        }
        let poset = weyl::eo_poset(4, 2)?;
        if poset.nodes.len() != 15 {
            return Err(fail(format!("expected 15 strata, got {}", poset.nodes.len())));
        }
        let mut lengths: Vec<usize> = poset.nodes.iter().map(|s| s.length).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        if lengths != [8, 7, 6, 6, 5, 5, 4, 4, 4, 3, 3, 2, 2, 1, 0] {
            return Err(fail(format!("length profile {lengths:?} is wrong")));
        }
        let closure = poset.closure();
        let count = poset.nodes.len();
        let mut reference = vec![vec![false; count]; count];
        for i in 0..count {
            reference[i][i] = true;
        }
        for (big, small) in weyl::EO_42_COVER_EDGES {
            let a = poset
                .node_index(big)
                .ok_or_else(|| fail(format!("missing node {big}")))?;
            let b = poset
                .node_index(small)
                .ok_or_else(|| fail(format!("missing node {small}")))?;
            reference[a][b] = true;
        }
        // transitive closure of the reference edges
        loop {
            let mut changed = false;
            for a in 0..count {
                for b in 0..count {
                    if reference[a][b] {
                        for c in 0..count {
                            if reference[b][c] && !reference[a][c] {
                                reference[a][c] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if closure != reference {
            return Err(fail(
                "transitive closure differs from the reference diagram".to_string(),
            ));
        }
        let mut computed: Vec<(String, String)> = poset
            .covers
            .iter()
            .map(|&(a, b)| {
                (
                    poset.nodes[a].label.one_line(),
                    poset.nodes[b].label.one_line(),
                )
            })
            .collect();
        computed.sort();
        let mut reference_edges: Vec<(String, String)> = weyl::EO_42_COVER_EDGES
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect();
        reference_edges.sort();
        let exact = computed == reference_edges;
        Ok(format!(
            "closures equal; computed covers {} the 21 reference edges",
            if exact { "coincide with" } else { "differ from" }
        ))
    })
}

fn bruhat_oracle(max_n: usize) -> SuiteResult {
    run("bruhat-oracle", || {
        let mut pairs = 0usize;
        for n in 1..=max_n.min(5) {
            let (perms, oracle) = weyl::bruhat_by_reflection_closure(n);
            for (i, u) in perms.iter().enumerate() {
                for (j, v) in perms.iter().enumerate() {
                    if weyl::bruhat_leq(u, v)? != oracle[i][j] {
                        return Err(fail(format!(
                            "tableau criterion differs from closure at ({u}, {v})"
                        )));
                    }
                    pairs += 1;
                }
            }
        }
        Ok(format!("{pairs} pairs, tableau = reflection closure"))
    })
}

fn field_suite(p: u64) -> SuiteResult {
    run("field-axioms", || {
        let mut details = Vec::new();
        for q in [3u64, 5, p] {
            let k = Gf::new(q)?;
            let elts: Vec<_> = k.elements().take(4000).collect();
            let exhaustive = q <= 7;
            if exhaustive {
                for &x in &elts {
                    for &y in &elts {
                        if k.mul(x, y) != k.mul(y, x) {
                            return Err(fail(format!("GF({q}^2) not commutative")));
                        }
                        for &z in &elts {
                            if k.mul(k.mul(x, y), z) != k.mul(x, k.mul(y, z))
                                || k.mul(x, k.add(y, z)) != k.add(k.mul(x, y), k.mul(x, z))
                            {
                                return Err(fail(format!("GF({q}^2) axioms fail")));
                            }
                        }
                    }
                }
            }
            for &x in elts.iter().take(1000) {
                if k.frob(k.frob(x)) != x || k.frob(x) != k.pow(x, q) {
                    return Err(fail(format!("Frobenius wrong in GF({q}^2)")));
                }
                if !x.is_zero() && k.mul(x, k.inv(x)?) != k.one() {
                    return Err(fail(format!("inverse wrong in GF({q}^2)")));
                }
                if k.add(x, k.frob(x)).b != 0 || k.mul(x, k.frob(x)).b != 0 {
                    return Err(fail(format!("trace/norm leave GF({q}) in GF({q}^2)")));
                }
            }
            details.push(format!("p={q}"));
        }
        Ok(format!("checked {}", details.join(", ")))
    })
}

fn derivation_suite() -> SuiteResult {
    run("derivation-p-power", || {
        for p in [3u64, 5, 7] {
            let check = gf::p_power_of_derivation(p, 2 * p as u32)?;
            if !check.all_pass() {
                return Err(fail(format!("p-th power of the vector field fails at p={p}")));
            }
        }
        Ok("p in {3,5,7}, degree bound 2p".to_string())
    })
}

fn dieudonne_suite(max_n: usize) -> SuiteResult {
    run("dieudonne-exactness", || {
        let mut modules = 0;
        for p in [3u64, 5] {
            let gf = Gf::new(p)?;
            for n in 2..=max_n.min(8) {
                for m in 1..n {
                    let md = dieudonne::standard_fol_module(n, m, gf)?;
                    let img_f = md.map_image(MapKind::F, &md.full_space(1)?)?;
                    let ker_v = md.map_kernel(MapKind::V);
                    let img_v = md.map_image(MapKind::V, &md.full_space(0)?)?;
                    let ker_f = md.map_kernel(MapKind::F);
                    if img_f != ker_v || img_v != ker_f || img_f.dim() != n + m {
                        return Err(fail(format!("exactness fails at (p,n,m)=({p},{n},{m})")));
                    }
                    // compositions vanish: multiplication by p on p-torsion
                    if md.map_image(MapKind::F, &img_v)?.dim() != 0
                        || md.map_image(MapKind::V, &img_f)?.dim() != 0
                    {
                        return Err(fail(format!(
                            "F after V or V after F nonzero at (p,n,m)=({p},{n},{m})"
                        )));
                    }
                    let omega = md.hodge_filtration()?;
                    if md.type_profile(&omega)? != (n, m) || omega.dim() != n + m {
                        return Err(fail(format!("omega has wrong type at ({p},{n},{m})")));
                    }
                    for x in omega.rows() {
                        for y in omega.rows() {
                            if !md.pair(x, y).is_zero() {
                                return Err(fail(format!(
                                    "omega not isotropic at ({p},{n},{m})"
                                )));
                            }
                        }
                    }
                    let p_part = md.sigma_part(&omega)?;
                    let meet =
                        linalg::intersect(md.gf(), p_part.rows(), ker_v.rows(), md.dim());
                    let p0 = md.span(0, meet)?;
                    let expected: Vec<usize> = (1..=n - m).collect();
                    if p0 != md.basis_span(0, &expected, &[])? {
                        return Err(fail(format!("P_0 wrong at ({p},{n},{m})")));
                    }
                    modules += 1;
                }
            }
        }
        Ok(format!("{modules} modules exact with isotropic omega"))
    })
}

fn lattice_oracle(p: u64) -> SuiteResult {
    run("lattice-oracle", || {
        let gf = Gf::new(p)?;
        let mut pairs = 0;
        for (n, m) in [(3usize, 2usize), (4, 2), (5, 4)] {
            let md = dieudonne::standard_fol_module(n, m, gf)?;
            for a in 0..=n + m {
                for b in 0..=n + m {
                    let pair = LatticePair { a, b };
                    let sub = md.lattice_subspace(pair, 0)?;
                    let f_pair = dieudonne::lattice_step(n, m, pair, LatticeStep::F)?;
                    if md.map_image(MapKind::F, &md.twist(&sub)?)?
                        != md.lattice_subspace(f_pair, 0)?
                    {
                        return Err(fail(format!("F step disagrees at ({n},{m}) {pair:?}")));
                    }
                    let v_pair = dieudonne::lattice_step(n, m, pair, LatticeStep::VInv)?;
                    let tgt = md.lattice_subspace(pair, 1)?;
                    if md.map_preimage(MapKind::V, &tgt)? != md.lattice_subspace(v_pair, 0)? {
                        return Err(fail(format!(
                            "V-preimage step disagrees at ({n},{m}) {pair:?}"
                        )));
                    }
                    pairs += 1;
                }
            }
        }
        Ok(format!("{pairs} lattice pairs, both engines agree"))
    })
}

/// The intermediate lattice pairs the canonical-word trace must pass
/// through: first the 2i/2i+1 powers of F after one V-preimage, then the
/// alternating V-preimage stages.
pub fn expected_word_trace(n: usize, m: usize, r: usize) -> Vec<LatticePair> {
    let mut out = Vec::new();
    for i in 0..=r {
        out.push(LatticePair {
            a: i * m + n - i * n,
            b: (i + 1) * m - i * n,
        });
        out.push(LatticePair {
            a: (i + 1) * m - i * n,
            b: (i + 1) * m - i * n,
        });
    }
    for j in 1..=r {
        out.push(LatticePair {
            a: j * n - (j - 1) * m,
            b: (r + 3 - j) * m - (r + 1 - j) * n,
        });
        out.push(LatticePair {
            a: (r + 2 - j) * m - (r - j) * n,
            b: j * n - (j - 1) * m,
        });
    }
    out
}

fn canonical_filtration(max_nm: usize, p: u64) -> SuiteResult {
    run("canonical-filtration", || {
        let gf = Gf::new(p)?;
        let mut words = 0;
        for n in 2..=max_nm.min(12) {
            for m in 1..n {
                if n + m > max_nm.min(12) || n >= 2 * m {
                    continue;
                }
                let r = dieudonne::r_of(n, m)?;
                let word = dieudonne::canonical_word(n, m, gf)?;
                if word.r != r {
                    return Err(fail(format!("r mismatch at ({n},{m})")));
                }
                if word.lattice_result
                    != (LatticePair {
                        a: 2 * m,
                        b: r * n - (r - 1) * m,
                    })
                {
                    return Err(fail(format!("closed form mismatch at ({n},{m})")));
                }
                // the recorded trace must follow the proof-level formulas:
                // trace[2i] and trace[2i+1] for the F stages, then the
                // alternating V-preimage stages
                let expected = expected_word_trace(n, m, r);
                let got: Vec<LatticePair> = word.trace.iter().map(|s| s.pair).collect();
                if got != expected {
                    return Err(fail(format!(
                        "intermediate pairs differ at ({n},{m}): {got:?} vs {expected:?}"
                    )));
                }
                words += 1;
            }
        }
        Ok(format!("{words} signatures with n < 2m, both engines agree"))
    })
}

fn corollary_and_hasse(max_n: usize) -> SuiteResult {
    run("vq-image-and-hasse", || {
        let mut modules = 0;
        for p in [3u64, 5] {
            let gf = Gf::new(p)?;
            for n in 2..=max_n.min(8) {
                for m in 1..n {
                    let md = dieudonne::standard_fol_module(n, m, gf)?;
                    dieudonne::vq_image(&md)?; // self-checking
                    let hasse = dieudonne::hasse_matrix(&md);
                    if dieudonne::matrix_is_zero(&hasse) != (2 * m <= n) {
                        return Err(fail(format!(
                            "Hasse matrix vanishing wrong at (p,n,m)=({p},{n},{m})"
                        )));
                    }
                    modules += 1;
                }
            }
        }
        Ok(format!("{modules} modules match the closed forms"))
    })
}

fn deformation_suite(max_nm: usize, p: u64) -> SuiteResult {
    run("deformation", || {
        // the closed-form/annihilator agreement runs over every small
        // signature at the pinned primes
        for q in [3u64, 5] {
            let gf = Gf::new(q)?;
            for n in 2..=6usize {
                for m in 1..n {
                    deformation::deformation_context(n, m, gf)?.universal_deformation()?;
                }
            }
        }
        let gf = Gf::new(p)?;
        let mut checked = 0;
        for (n, m) in [(2usize, 1usize), (3, 1), (3, 2), (4, 2), (5, 3), (5, 4)] {
            if n + m > max_nm.max(9) {
                continue;
            }
            let ctx = deformation::deformation_context(n, m, gf)?;
            ctx.universal_deformation()?; // annihilator + isotropy checks
            ctx.v_image_residues()?; // closed form + no v-dependence
            let ideal = ctx.sfol_ideal()?;
            if ideal.len() != (n - m) * m {
                return Err(fail(format!("ideal size wrong at ({n},{m})")));
            }
            let dims = ctx.tangent_system()?;
            if dims.total != n * m || dims.foliation != m * m || dims.fiber != 0 {
                return Err(fail(format!(
                    "tangent dimensions ({}, {}, {}) wrong at ({n},{m})",
                    dims.total, dims.foliation, dims.fiber
                )));
            }
            if dims.total != dims.foliation + ideal.len() {
                return Err(fail(format!(
                    "dimension bookkeeping fails at ({n},{m})"
                )));
            }
            checked += 1;
        }
        Ok(format!(
            "{checked} signatures fully checked; filtration agreement to n = 6 at p in {{3,5}}"
        ))
    })
}

fn counting_suite(guard: u64) -> SuiteResult {
    run("counting", || {
        use num_bigint::BigUint;
        let expected: [(u64, usize, usize, u32); 4] =
            [(3, 2, 1, 27), (3, 3, 1, 243), (3, 3, 2, 6561), (5, 2, 1, 125)];
        for (p, n, m, want) in expected {
            let inst = counting::GammaInstance::with_guard(Gf::new(p)?, n, m, guard)?;
            let closed = counting::gamma_count_closed(p, n, m)?;
            if closed.total != BigUint::from(want) {
                return Err(fail(format!("closed form wrong at ({p},{n},{m})")));
            }
            let brute = counting::gamma_count_bruteforce(&inst)?;
            let fast = counting::gamma_count_fast(&inst)?;
            if brute != closed.total || fast != closed.total {
                return Err(fail(format!(
                    "counts disagree at ({p},{n},{m}): brute {brute}, fast {fast}"
                )));
            }
        }
        for (p, n, m) in [(3u64, 2usize, 1usize), (5, 2, 1)] {
            let inst = counting::GammaInstance::with_guard(Gf::new(p)?, n, m, guard)?;
            let oracle = counting::isotropic_subspace_oracle(&inst)?;
            if oracle != counting::gamma_count_closed(p, n, m)?.total {
                return Err(fail(format!("subspace oracle wrong at ({p},{n},{m})")));
            }
        }
        for n in 2..=20usize {
            for m in 1..n {
                counting::degree_table(3, n, m)?; // identity-asserting
            }
        }
        // degree of the inseparable quotient = p^(foliation rank)
        let gf = Gf::new(3)?;
        for (n, m) in [(2usize, 1usize), (3, 2)] {
            let dims = deformation::deformation_context(n, m, gf)?.tangent_system()?;
            let table = counting::degree_table(3, n, m)?;
            if table.deg_rho != BigUint::from(3u64).pow(dims.foliation as u32) {
                return Err(fail(format!(
                    "deg(rho) != p^foliation_rank at ({n},{m})"
                )));
            }
        }
        Ok("brute = fast = closed = oracle; degree identities hold to n = 20".to_string())
    })
}

/// Runs every suite. `max_nm` bounds the combinatorial searches, `p` is
/// the prime used where one is not pinned by the check itself, and `guard`
/// caps brute-force enumeration sizes.
pub fn run_all(max_nm: usize, p: u64, guard: u64) -> Vec<SuiteResult> {
    vec![
        shuffle_statistics(max_nm),
        eo_order_laws(max_nm),
        cover_diagram_42(max_nm),
        bruhat_oracle(5),
        field_suite(p),
        derivation_suite(),
        dieudonne_suite(8),
        lattice_oracle(p),
        canonical_filtration(max_nm.max(9), p),
        corollary_and_hasse(8),
        deformation_suite(max_nm, p),
        counting_suite(guard),
    ]
}

pub fn render(results: &[SuiteResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "{} {}: {}\n",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        ));
    }
    let failures = results.iter().filter(|r| !r.pass).count();
    out.push_str(&format!(
        "{}: {} suites, {} failed\n",
        if failures == 0 { "OK" } else { "FAILED" },
        results.len(),
        failures
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_trace_starts_and_ends_correctly() {
        let t = expected_word_trace(3, 2, 1);
        assert_eq!(t.first(), Some(&LatticePair { a: 3, b: 2 }));
        assert_eq!(t.last(), Some(&LatticePair { a: 4, b: 3 }));
        assert_eq!(t.len(), 2 * (1 + 1) + 2);
    }

    #[test]
    fn small_verify_run_passes() {
        let results = run_all(5, 3, 1_000_000);
        for r in &results {
            assert!(r.pass, "{}: {}", r.name, r.detail);
        }
        let text = render(&results);
        assert!(text.contains("OK"));
    }
}
