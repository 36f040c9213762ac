//! Acceptance suite: one test per criterion, each printing a pass line
//! with its elapsed time. Every assertion is exact.

use std::time::Instant;

use num_bigint::BigUint;

use eo_folkit::counting::{self, GammaInstance};
use eo_folkit::deformation;
use eo_folkit::dieudonne::{self, LatticePair, LatticeStep, MapKind};
use eo_folkit::gf::{self, Gf};
use eo_folkit::linalg;
use eo_folkit::weyl;

fn binomial(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn transitive_closure(mut reach: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let count = reach.len();
    loop {
        let mut changed = false;
        for a in 0..count {
            for b in 0..count {
                if reach[a][b] {
                    for c in 0..count {
                        if reach[b][c] && !reach[a][c] {
                            reach[a][c] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return reach;
        }
    }
}

#[test]
fn criterion_01_cover_diagram_4_2() {
    let started = Instant::now();
    let poset = weyl::eo_poset(4, 2).unwrap();
    assert_eq!(poset.nodes.len(), 15);

    let mut lengths: Vec<usize> = poset.nodes.iter().map(|s| s.length).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(lengths, [8, 7, 6, 6, 5, 5, 4, 4, 4, 3, 3, 2, 2, 1, 0]);

    // golden fixture: the 21 reference edges
    let count = poset.nodes.len();
    let mut reference = vec![vec![false; count]; count];
    for i in 0..count {
        reference[i][i] = true;
    }
    for (big, small) in weyl::EO_42_COVER_EDGES {
        let a = poset.node_index(big).unwrap();
        let b = poset.node_index(small).unwrap();
        reference[a][b] = true;
    }
    assert_eq!(poset.closure(), transitive_closure(reference));

    // side report on the open question: do the computed covers coincide
    // with the displayed edges exactly?
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
    println!(
        "note: computed covers {} the 21 displayed edges exactly",
        if computed == reference_edges {
            "match"
        } else {
            "do not match"
        }
    );
    println!(
        "PASS criterion 1: poset of (4,2) reproduced ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_02_shuffle_statistics() {
    let started = Instant::now();
    let mut signatures = 0;
    for n in 2..=6usize {
        for m in 1..n {
            if n + m > 7 {
                continue;
            }
            let shuffles = weyl::enumerate_shuffles(n, m).unwrap();
            assert_eq!(shuffles.len() as u128, binomial(n + m, m), "({n},{m})");
            for s in &shuffles {
                assert_eq!(weyl::shuffle_length(s), s.w().inversions());
            }
            let poset = weyl::eo_poset(n, m).unwrap();
            assert_eq!(poset.maximal_nodes().len(), 1, "({n},{m})");
            assert_eq!(poset.minimal_nodes().len(), 1, "({n},{m})");
            if m == 1 {
                assert_eq!(poset.nodes.len(), n + 1);
                assert_eq!(poset.covers.len(), n, "Pi({n},1) must be a chain");
            }
            let sharp: Vec<usize> = (0..poset.nodes.len())
                .filter(|&i| poset.nodes[i].in_s_sharp)
                .collect();
            assert_eq!(sharp.len() as u128, binomial(n, m), "({n},{m})");
            let closure = poset.closure();
            let minimal_sharp: Vec<usize> = sharp
                .iter()
                .copied()
                .filter(|&i| sharp.iter().all(|&j| j == i || !closure[i][j]))
                .collect();
            let w_fol = weyl::w_fol(n, m).unwrap();
            let fol_idx = poset.node_index(&w_fol.one_line()).unwrap();
            assert_eq!(minimal_sharp, vec![fol_idx], "({n},{m})");
            assert_eq!(poset.nodes[fol_idx].length, m * m, "({n},{m})");
            signatures += 1;
        }
    }
    println!(
        "PASS criterion 2: statistics for {signatures} signatures ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_03_bruhat_oracle() {
    let started = Instant::now();
    let mut pairs = 0usize;
    for n in 1..=5usize {
        let (perms, oracle) = weyl::bruhat_by_reflection_closure(n);
        for (i, u) in perms.iter().enumerate() {
            for (j, v) in perms.iter().enumerate() {
                assert_eq!(
                    weyl::bruhat_leq(u, v).unwrap(),
                    oracle[i][j],
                    "u = {u}, v = {v}"
                );
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 14_400);
    println!(
        "PASS criterion 3: tableau = reflection closure on {pairs} pairs ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_04_dieudonne_exactness() {
    let started = Instant::now();
    let mut modules = 0;
    for p in [3u64, 5] {
        let gf = Gf::new(p).unwrap();
        for n in 2..=8usize {
            for m in 1..n {
                let md = dieudonne::standard_fol_module(n, m, gf).unwrap();
                let img_f = md.map_image(MapKind::F, &md.full_space(1).unwrap()).unwrap();
                let ker_v = md.map_kernel(MapKind::V);
                assert_eq!(img_f, ker_v, "(p,n,m) = ({p},{n},{m})");
                assert_eq!(img_f.dim(), n + m);
                let img_v = md.map_image(MapKind::V, &md.full_space(0).unwrap()).unwrap();
                let ker_f = md.map_kernel(MapKind::F);
                assert_eq!(img_v, ker_f);
                assert_eq!(img_v.dim(), n + m);
                let omega = md.hodge_filtration().unwrap();
                assert_eq!(md.type_profile(&omega).unwrap(), (n, m));
                assert_eq!(omega.dim(), n + m);
                for x in omega.rows() {
                    for y in omega.rows() {
                        assert!(md.pair(x, y).is_zero());
                    }
                }
                let p_part = md.sigma_part(&omega).unwrap();
                let meet =
                    linalg::intersect(md.gf(), p_part.rows(), ker_v.rows(), md.dim());
                let p0 = md.span(0, meet).unwrap();
                let first_block: Vec<usize> = (1..=n - m).collect();
                assert_eq!(p0, md.basis_span(0, &first_block, &[]).unwrap());
                // cross-module: dim P_0 is the Sigma-part a-number of w_fol
                let w_fol = weyl::w_fol(n, m).unwrap();
                assert_eq!(p0.dim(), weyl::a_sigma(&w_fol));
                modules += 1;
            }
        }
    }
    println!(
        "PASS criterion 4: exactness and isotropy on {modules} modules ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_05_lattice_oracle() {
    let started = Instant::now();
    let gf = Gf::new(3).unwrap();
    let mut pairs = 0;
    for (n, m) in [(3usize, 2usize), (4, 2), (5, 4)] {
        let md = dieudonne::standard_fol_module(n, m, gf).unwrap();
        for a in 0..=n + m {
            for b in 0..=n + m {
                let pair = LatticePair { a, b };
                let sub = md.lattice_subspace(pair, 0).unwrap();
                let f_pair = dieudonne::lattice_step(n, m, pair, LatticeStep::F).unwrap();
                assert_eq!(
                    md.map_image(MapKind::F, &md.twist(&sub).unwrap()).unwrap(),
                    md.lattice_subspace(f_pair, 0).unwrap(),
                    "F on D({a},{b}) at ({n},{m})"
                );
                let v_pair =
                    dieudonne::lattice_step(n, m, pair, LatticeStep::VInv).unwrap();
                let tgt = md.lattice_subspace(pair, 1).unwrap();
                assert_eq!(
                    md.map_preimage(MapKind::V, &tgt).unwrap(),
                    md.lattice_subspace(v_pair, 0).unwrap(),
                    "V^-1 of D({a},{b}) at ({n},{m})"
                );
                pairs += 1;
            }
        }
    }
    println!(
        "PASS criterion 5: lattice recursion = matrix engine on {pairs} pairs ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_06_canonical_filtration() {
    let started = Instant::now();
    let gf = Gf::new(3).unwrap();
    let mut words = 0;
    for n in 2..=11usize {
        for m in 1..n {
            if n + m > 12 || n >= 2 * m {
                continue;
            }
            let r = dieudonne::r_of(n, m).unwrap();
            // uniqueness of r in the window
            let window = |r: usize| r * n < m * (r + 1) && m * (r + 2) <= n * (r + 1);
            assert_eq!((1..=100).filter(|&k| window(k)).count(), 1);
            assert!(window(r));

            let word = dieudonne::canonical_word(n, m, gf).unwrap();
            assert_eq!(word.r, r);
            assert_eq!(
                word.lattice_result,
                LatticePair {
                    a: 2 * m,
                    b: r * n - (r - 1) * m,
                }
            );
            // frozen intermediate stages
            let mut expected: Vec<LatticePair> = Vec::new();
            for i in 0..=r {
                expected.push(LatticePair {
                    a: i * m + n - i * n,
                    b: (i + 1) * m - i * n,
                });
                expected.push(LatticePair {
                    a: (i + 1) * m - i * n,
                    b: (i + 1) * m - i * n,
                });
            }
            for j in 1..=r {
                expected.push(LatticePair {
                    a: j * n - (j - 1) * m,
                    b: (r + 3 - j) * m - (r + 1 - j) * n,
                });
                expected.push(LatticePair {
                    a: (r + 2 - j) * m - (r - j) * n,
                    b: j * n - (j - 1) * m,
                });
            }
            let got: Vec<LatticePair> = word.trace.iter().map(|s| s.pair).collect();
            assert_eq!(got, expected, "(n,m) = ({n},{m})");
            words += 1;
        }
    }
    assert!(words >= 8);
    println!(
        "PASS criterion 6: canonical word on {words} signatures ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_07_corollary_and_hasse() {
    let started = Instant::now();
    let mut modules = 0;
    for p in [3u64, 5] {
        let gf = Gf::new(p).unwrap();
        for n in 2..=8usize {
            for m in 1..n {
                let md = dieudonne::standard_fol_module(n, m, gf).unwrap();
                // vq_image asserts the closed form and the containment in
                // the twisted canonical piece internally
                let image = dieudonne::vq_image(&md).unwrap();
                let expected_e: Vec<usize> = if 2 * m <= n {
                    (1..=m).collect()
                } else {
                    (1..=n - m).chain(n + 1..=2 * m).collect()
                };
                assert_eq!(image, md.basis_span(1, &expected_e, &[]).unwrap());
                let hasse = dieudonne::hasse_matrix(&md);
                assert_eq!(
                    dieudonne::matrix_is_zero(&hasse),
                    2 * m <= n,
                    "(p,n,m) = ({p},{n},{m})"
                );
                modules += 1;
            }
        }
    }
    println!(
        "PASS criterion 7: V(Q) and Hasse matrix on {modules} modules ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_08_deformation_suite() {
    let started = Instant::now();
    let gf = Gf::new(3).unwrap();
    for (n, m) in [(2usize, 1usize), (3, 1), (3, 2), (4, 2), (5, 3), (5, 4)] {
        let ctx = deformation::deformation_context(n, m, gf).unwrap();
        // annihilator-vs-closed-form agreement and isotropy are asserted
        // inside universal_deformation
        ctx.universal_deformation().unwrap();
        // residue shape (closed form, no v-dependence, target indices)
        let residues = ctx.v_image_residues().unwrap();
        assert_eq!(residues.len(), m);
        let summand = ctx.target_summand_indices().unwrap();
        for row in &residues {
            assert_eq!(row.residue.len(), n - m);
            for coord in row.residue.keys() {
                assert!(!summand.contains(coord));
            }
        }
        let ideal = ctx.sfol_ideal().unwrap();
        assert_eq!(ideal.len(), (n - m) * m, "(n,m) = ({n},{m})");
        let dims = ctx.tangent_system().unwrap();
        assert_eq!(
            (dims.total, dims.foliation, dims.fiber),
            (n * m, m * m, 0),
            "(n,m) = ({n},{m})"
        );
        assert_eq!(dims.total, dims.foliation + ideal.len());
        // cross-module: the foliation rank is the dimension of the minimal
        // sharp stratum
        let w_fol = weyl::w_fol(n, m).unwrap();
        assert_eq!(dims.foliation, weyl::shuffle_length(&w_fol));
    }
    println!(
        "PASS criterion 8: deformation suite on 6 signatures ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_09_degree_lemma() {
    let started = Instant::now();
    let expected: [(u64, usize, usize, u32); 4] = [
        (3, 2, 1, 27),
        (3, 3, 1, 243),
        (3, 3, 2, 6561),
        (5, 2, 1, 125),
    ];
    for (p, n, m, want) in expected {
        let inst = GammaInstance::new(Gf::new(p).unwrap(), n, m).unwrap();
        let closed = counting::gamma_count_closed(p, n, m).unwrap();
        assert_eq!(closed.total, BigUint::from(want));
        assert_eq!(counting::gamma_count_bruteforce(&inst).unwrap(), closed.total);
        assert_eq!(counting::gamma_count_fast(&inst).unwrap(), closed.total);
    }
    for (p, n, m) in [(3u64, 2usize, 1usize), (5, 2, 1)] {
        let inst = GammaInstance::new(Gf::new(p).unwrap(), n, m).unwrap();
        assert_eq!(
            counting::isotropic_subspace_oracle(&inst).unwrap(),
            counting::gamma_count_closed(p, n, m).unwrap().total
        );
    }
    for n in 2..=20usize {
        for m in 1..n {
            // identity-asserting constructor
            let table = counting::degree_table(3, n, m).unwrap();
            assert_eq!(
                &table.deg_rho * &table.deg_rho_prime,
                BigUint::from(3u64).pow((n * m) as u32)
            );
            assert_eq!(table.deg_pi_et, table.deg_theta_prime);
            assert_eq!(table.deg_theta, table.deg_rho);
        }
    }
    // the inseparable-quotient degree matches the foliation rank
    let gf = Gf::new(3).unwrap();
    for (n, m) in [(2usize, 1usize), (3, 2), (4, 2)] {
        let dims = deformation::deformation_context(n, m, gf)
            .unwrap()
            .tangent_system()
            .unwrap();
        let table = counting::degree_table(3, n, m).unwrap();
        assert_eq!(dims.foliation, m * m);
        assert_eq!(table.deg_rho, BigUint::from(3u64).pow(dims.foliation as u32));
    }
    println!(
        "PASS criterion 9: degree lemma counts and identities ({} ms)",
        started.elapsed().as_millis()
    );
}

#[test]
fn criterion_10_derivation_example() {
    let started = Instant::now();
    for p in [3u64, 5, 7] {
        let check = gf::p_power_of_derivation(p, 2 * p as u32).unwrap();
        assert!(check.all_pass(), "p = {p}");
    }
    println!(
        "PASS criterion 10: p-th power of the vector field ({} ms)",
        started.elapsed().as_millis()
    );
}
