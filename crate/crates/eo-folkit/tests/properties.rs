//! Property tests for the algebraic invariants that hold on all inputs,
//! not just the worked examples.

use proptest::prelude::*;

use eo_folkit::dieudonne::{self, LatticePair, LatticeStep, MapKind};
use eo_folkit::gf::{DefRing, Gf};
use eo_folkit::linalg;
use eo_folkit::weyl;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11])
}

fn signature() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(vec![(2usize, 1usize), (3, 1), (3, 2), (4, 2), (4, 3), (5, 3)])
}

proptest! {
    #[test]
    fn frobenius_is_a_ring_map(p in small_prime(), xi in 0u64..121, yi in 0u64..121) {
        let k = Gf::new(p).unwrap();
        let q = k.order();
        let x = k.elt_at(xi % q);
        let y = k.elt_at(yi % q);
        prop_assert_eq!(k.frob(k.add(x, y)), k.add(k.frob(x), k.frob(y)));
        prop_assert_eq!(k.frob(k.mul(x, y)), k.mul(k.frob(x), k.frob(y)));
        if !x.is_zero() {
            prop_assert_eq!(k.mul(x, k.inv(x).unwrap()), k.one());
        }
    }

    #[test]
    fn defring_is_a_commutative_ring(
        coords in prop::collection::vec((0u64..9, 0u64..9, 0u64..9, 0u64..9), 3)
    ) {
        let k = Gf::new(3).unwrap();
        let r = DefRing::new(k, vec!["a".into(), "b".into(), "c".into()]);
        let elems: Vec<_> = coords
            .iter()
            .map(|&(c, ca, cb, cc)| {
                let mut e = r.constant(k.elt_at(c));
                for (coef, g) in [(ca, "a"), (cb, "b"), (cc, "c")] {
                    e = r.add(&e, &r.scale(k.elt_at(coef), &r.generator(g).unwrap()));
                }
                e
            })
            .collect();
        let (x, y, z) = (&elems[0], &elems[1], &elems[2]);
        prop_assert_eq!(r.mul(x, y), r.mul(y, x));
        prop_assert_eq!(r.mul(&r.mul(x, y), z), r.mul(x, &r.mul(y, z)));
        prop_assert_eq!(
            r.mul(x, &r.add(y, z)),
            r.add(&r.mul(x, y), &r.mul(x, z))
        );
        // the nilradical squares to zero
        let nil = r.sub(x, &r.constant(x.constant));
        prop_assert!(r.mul(&nil, &nil).is_zero());
        // ring Frobenius is multiplicative and kills nilpotents
        prop_assert_eq!(r.frob(&r.mul(x, y)), r.mul(&r.frob(x), &r.frob(y)));
        prop_assert!(r.frob(&nil).is_zero());
    }

    #[test]
    fn rref_is_idempotent_and_kernel_annihilates(
        entries in prop::collection::vec(0u64..9, 12)
    ) {
        let k = Gf::new(3).unwrap();
        let rows: Vec<Vec<_>> = entries
            .chunks(4)
            .map(|ch| ch.iter().map(|&e| k.elt_at(e)).collect())
            .collect();
        let reduced = linalg::rref(&k, rows.clone());
        prop_assert_eq!(linalg::rref(&k, reduced.clone()), reduced.clone());
        for row in &rows {
            prop_assert!(linalg::is_zero_row(&linalg::reduce(&k, row, &reduced)));
        }
        let kernel = linalg::kernel(&k, &rows, 4);
        prop_assert_eq!(reduced.len() + kernel.len(), 4);
        for v in &kernel {
            prop_assert!(linalg::is_zero_row(&linalg::mat_vec(&k, &rows, v)));
        }
    }

    #[test]
    fn permutation_algebra((images, other) in prop::sample::select(perm_pairs())) {
        let u = weyl::Permutation::from_images(images).unwrap();
        let v = weyl::Permutation::from_images(other).unwrap();
        let uv = u.compose(&v).unwrap();
        prop_assert_eq!(
            uv.inverse(),
            v.inverse().compose(&u.inverse()).unwrap()
        );
        prop_assert_eq!(
            weyl::Permutation::parse(&u.one_line()).unwrap(),
            u.clone()
        );
        // length is subadditive under composition
        prop_assert!(uv.inversions() <= u.inversions() + v.inversions());
    }

    #[test]
    fn bruhat_implies_eo((n, m) in prop::sample::select(vec![(2usize,1usize),(3,1),(3,2)]), i in 0usize..10, j in 0usize..10) {
        let shuffles = weyl::enumerate_shuffles(n, m).unwrap();
        let s = &shuffles[i % shuffles.len()];
        let t = &shuffles[j % shuffles.len()];
        if weyl::bruhat_leq(s.w(), t.w()).unwrap() {
            prop_assert!(weyl::eo_leq(s, t).unwrap());
        }
        // reflexivity always
        prop_assert!(weyl::eo_leq(s, s).unwrap());
    }

    #[test]
    fn lattice_recursion_matches_matrix_engine(
        (n, m) in signature(),
        a in 0usize..9,
        b in 0usize..9,
    ) {
        let gf = Gf::new(3).unwrap();
        let md = dieudonne::standard_fol_module(n, m, gf).unwrap();
        let pair = LatticePair { a: a % (n + m + 1), b: b % (n + m + 1) };
        let sub = md.lattice_subspace(pair, 0).unwrap();
        let f_pair = dieudonne::lattice_step(n, m, pair, LatticeStep::F).unwrap();
        prop_assert_eq!(
            md.map_image(MapKind::F, &md.twist(&sub).unwrap()).unwrap(),
            md.lattice_subspace(f_pair, 0).unwrap()
        );
        let v_pair = dieudonne::lattice_step(n, m, pair, LatticeStep::VInv).unwrap();
        let tgt = md.lattice_subspace(pair, 1).unwrap();
        prop_assert_eq!(
            md.map_preimage(MapKind::V, &tgt).unwrap(),
            md.lattice_subspace(v_pair, 0).unwrap()
        );
    }

    #[test]
    fn exactness_for_random_signatures((n, m) in signature(), p in small_prime()) {
        let gf = Gf::new(p).unwrap();
        let md = dieudonne::standard_fol_module(n, m, gf).unwrap();
        prop_assert_eq!(
            md.map_image(MapKind::F, &md.full_space(1).unwrap()).unwrap(),
            md.map_kernel(MapKind::V)
        );
        prop_assert_eq!(
            md.map_image(MapKind::V, &md.full_space(0).unwrap()).unwrap(),
            md.map_kernel(MapKind::F)
        );
    }
}

fn perm_pairs() -> Vec<(Vec<usize>, Vec<usize>)> {
    // same-size pairs across sizes 3 to 6
    vec![
        (vec![1, 2, 3], vec![3, 1, 2]),
        (vec![3, 1, 2], vec![2, 3, 1]),
        (vec![2, 3, 1], vec![1, 3, 2]),
        (vec![4, 3, 2, 1], vec![2, 4, 1, 3]),
        (vec![2, 4, 1, 3], vec![1, 3, 2, 4]),
        (vec![1, 3, 2, 4], vec![4, 1, 3, 2]),
        (vec![5, 1, 4, 2, 3], vec![2, 5, 3, 1, 4]),
        (vec![2, 5, 3, 1, 4], vec![5, 4, 3, 2, 1]),
        (vec![6, 2, 4, 1, 5, 3], vec![1, 6, 3, 5, 2, 4]),
        (vec![1, 6, 3, 5, 2, 4], vec![6, 5, 4, 3, 2, 1]),
    ]
}
