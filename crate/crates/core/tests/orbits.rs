//! Orbit-level checks: classification, stabilisers, `𝔑₀`, and the
//! comparison of exotic orbits with enhanced orbits over `F_{q²}`.

use nilcone::combinatorics::{enumerate_bipartitions, enumerate_partitions, shape_data, Bipartition, Partition};
use nilcone::enhanced::{self, classify, full_representative, levi_chains, representative, EnhancedPoint};
use nilcone::exotic::{
    self, embed_enhanced, exotic_classify, exotic_orbit, exotic_representative, is_in_n0, is_symplectic,
    levi_chains_tilde, levi_forms, make_space, psi_tilde_image, sp_generators, ExoticPoint,
};
use nilcone::gf::{make_field, Field, FqElem};
use nilcone::groups::{orbit_bfs, DEFAULT_BUDGET};
use nilcone::linalg::{stabiliser_system, BasisIndex, MatF};
use nilcone::qcount::exotic_orbit_size;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> MatF {
    MatF::from_vec(f, n, n, (0..n * n).map(|_| FqElem(rng.gen_range(0..f.order()) as u8)).collect()).unwrap()
}

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> MatF {
    loop {
        let m = random_matrix(f, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random word in the transvection generators.
fn random_symplectic(pt: &ExoticPoint, rng: &mut ChaCha8Rng) -> MatF {
    let gens = sp_generators(&pt.space).matrices();
    if gens.is_empty() {
        return MatF::identity(pt.field(), pt.dim());
    }
    (0..40).fold(MatF::identity(pt.field(), pt.dim()), |acc, _| acc.mul(&gens[rng.gen_range(0..gens.len())]))
}

#[test]
fn classification_is_orbit_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2, 3] {
        let f = make_field(q).unwrap();
        for n in 0..=3 {
            for bp in enumerate_bipartitions(n) {
                let rep = representative(&bp, &f);
                assert_eq!(classify(&rep, DEFAULT_BUDGET).unwrap(), bp);
                let moved = rep.transform(&random_invertible(&f, n, &mut rng)).unwrap();
                assert_eq!(classify(&moved, DEFAULT_BUDGET).unwrap(), bp);
            }
        }
    }
}

#[test]
fn zero_vector_with_jordan_matrix_is_nu_only() {
    let f = make_field(3).unwrap();
    for lambda in enumerate_partitions(4) {
        let x = BasisIndex::enhanced(&lambda).jordan_matrix(&f);
        let pt = EnhancedPoint::new(vec![FqElem::ZERO; 4], x).unwrap();
        assert_eq!(classify(&pt, DEFAULT_BUDGET).unwrap(), Bipartition::new(Partition::empty(), lambda));
    }
}

#[test]
fn reduced_and_full_normal_forms_share_an_orbit() {
    let f = make_field(2).unwrap();
    for n in 1..=4 {
        for bp in enumerate_bipartitions(n) {
            let full = full_representative(&bp, &f);
            let orbit = enhanced::orbit(&representative(&bp, &f), DEFAULT_BUDGET).unwrap();
            assert!(orbit.contains(&full.v, &full.x), "{bp}");
        }
    }
}

#[test]
fn stabiliser_counts_agree() {
    for q in [2, 3] {
        let f = make_field(q).unwrap();
        for n in 0..=2 {
            for bp in enumerate_bipartitions(n) {
                let pt = representative(&bp, &f);
                let by_orbit = enhanced::stabiliser_count(&pt, DEFAULT_BUDGET).unwrap();
                let direct = enhanced::direct_stabiliser_count(&pt, DEFAULT_BUDGET).unwrap();
                let brute = enhanced::brute_stabiliser(&pt, DEFAULT_BUDGET).unwrap().len();
                assert_eq!(by_orbit, BigInt::from(direct), "{bp} q={q}");
                assert_eq!(direct, brute, "{bp} q={q}");
            }
        }
    }
}

#[test]
fn orbit_is_independent_of_thread_count() {
    let f = make_field(3).unwrap();
    let pt = representative(&Bipartition::from_parts(&[2], &[1]).unwrap(), &f);
    let many = enhanced::orbit(&pt, DEFAULT_BUDGET).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let one = pool.install(|| enhanced::orbit(&pt, DEFAULT_BUDGET).unwrap());
    assert_eq!(many.keys(), one.keys());
}

#[test]
fn stabilisers_fix_the_distinguished_vectors() {
    // sampled stabiliser elements map v_h to v_h for h ∈ J
    let f = make_field(2).unwrap();
    for n in 1..=3 {
        for bp in enumerate_bipartitions(n) {
            let pt = representative(&bp, &f);
            let shape = shape_data(&bp);
            let basis = BasisIndex::enhanced(&shape.lambda);
            for g in enhanced::brute_stabiliser(&pt, DEFAULT_BUDGET).unwrap() {
                for &h in &shape.j_set {
                    let ih = shape.blocks[h].first();
                    for r in shape.blocks[h].rows.clone() {
                        let expected = if r == ih { FqElem::ONE } else { FqElem::ZERO };
                        assert_eq!(g.get(basis.top(r), basis.top(ih)), expected, "{bp}");
                    }
                }
                let blocks = enhanced::psi_image(&g, &shape, &f).unwrap();
                for (h, block) in blocks.iter().enumerate() {
                    assert_eq!(block.rows(), levi_chains(&shape, h).len());
                    assert!(block.is_invertible());
                }
            }
        }
    }
}

#[test]
fn exotic_stabiliser_blocks_are_symplectic() {
    let f = make_field(2).unwrap();
    for n in 1..=2 {
        for bp in enumerate_bipartitions(n) {
            let pt = exotic_representative(&bp, &f);
            let shape = shape_data(&bp);
            let forms = levi_forms(&shape, &pt.space);
            let sys = stabiliser_system(&pt.y, &pt.w).solve().unwrap();
            let dim = pt.dim();
            sys.for_each_point(1 << 20, |g| {
                let g = MatF::from_vec(&f, dim, dim, g.to_vec()).unwrap();
                if !is_symplectic(&g, &pt.space) {
                    return;
                }
                for &h in &shape.j_set {
                    let ih = shape.blocks[h].first();
                    let basis = pt.space.basis();
                    for r in 0..basis.num_chains() {
                        if basis.chain_len(r) == basis.chain_len(ih) {
                            let expected = if r == ih { FqElem::ONE } else { FqElem::ZERO };
                            assert_eq!(g.get(basis.top(r), basis.top(ih)), expected, "{bp}");
                        }
                    }
                }
                for (h, block) in psi_tilde_image(&g, &shape, &pt.space).unwrap().iter().enumerate() {
                    assert_eq!(block.rows(), levi_chains_tilde(&shape, &pt.space, h).len());
                    assert_eq!(&block.transpose().mul(&forms[h]).mul(block), &forms[h], "{bp}");
                }
            })
            .unwrap();
        }
    }
}

#[test]
fn exotic_classification_is_orbit_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2, 3] {
        let f = make_field(q).unwrap();
        for n in 0..=2 {
            for bp in enumerate_bipartitions(n) {
                let rep = exotic_representative(&bp, &f);
                let g = random_symplectic(&rep, &mut rng);
                assert!(is_symplectic(&g, &rep.space));
                let moved = rep.transform(&g).unwrap();
                assert!(is_in_n0(&moved.y, &moved.space));
                assert_eq!(exotic_classify(&moved, DEFAULT_BUDGET).unwrap(), bp);
            }
        }
    }
}

#[test]
fn exotic_orbits_match_enhanced_orbits_over_the_square_field() {
    for q in [2, 3] {
        let f = make_field(q).unwrap();
        let f2 = make_field(q * q).unwrap();
        for n in 0..=2 {
            for bp in enumerate_bipartitions(n) {
                let exo = exotic_orbit(&exotic_representative(&bp, &f), DEFAULT_BUDGET).unwrap().size();
                let enh = enhanced::orbit(&representative(&bp, &f2), DEFAULT_BUDGET).unwrap().size();
                assert_eq!(exo, enh, "{bp} q={q}");
                assert_eq!(BigInt::from(exo), exotic_orbit_size(&bp).unwrap().eval_u64(q as u64));
            }
        }
    }
}

#[test]
fn exotic_stabiliser_counts_agree() {
    let f = make_field(2).unwrap();
    for n in 0..=2 {
        for bp in enumerate_bipartitions(n) {
            let pt = exotic_representative(&bp, &f);
            let by_orbit = exotic::exotic_stabiliser_count(&pt, DEFAULT_BUDGET).unwrap();
            let brute = exotic::brute_exotic_stabiliser_count(&pt, DEFAULT_BUDGET).unwrap();
            assert_eq!(by_orbit, BigInt::from(brute), "{bp}");
        }
    }
}

/// `⟨yu, u⟩ = 0` checked on every vector `u`.
fn n0_exhaustive(y: &MatF, pt: &ExoticPoint) -> bool {
    let f = pt.field();
    let q = f.order();
    let d = pt.dim();
    y.is_nilpotent()
        && (0..q.pow(d as u32)).all(|code| {
            let u: Vec<FqElem> = (0..d).map(|k| FqElem(((code / q.pow(k as u32)) % q) as u8)).collect();
            pt.space.pair(&y.mul_vec(&u), &u).is_zero()
        })
}

#[test]
fn polarisation_test_matches_exhaustive_test() {
    for (q, lambdas) in [(2, vec![vec![1], vec![2], vec![1, 1]]), (3, vec![vec![1]])] {
        let f = make_field(q).unwrap();
        for parts in lambdas {
            let lambda = Partition::new(parts).unwrap();
            let space = make_space(&lambda, &f);
            let d = space.dim();
            let pt = ExoticPoint::new(vec![FqElem::ZERO; d], MatF::zeros(&f, d, d), space.clone()).unwrap();
            let total = q.pow((d * d) as u32);
            let mut members = 0;
            for code in 0..total {
                let data = (0..d * d).map(|k| FqElem(((code / q.pow(k as u32)) % q) as u8)).collect();
                let y = MatF::from_vec(&f, d, d, data).unwrap();
                let fast = is_in_n0(&y, &space);
                assert_eq!(fast, n0_exhaustive(&y, &pt), "{y:?}");
                members += fast as usize;
            }
            // |𝔑₀| = Σ_{λ ⊢ n} (number of pairs (w, y) in the cone) / q^{2n}
            let n = lambda.weight();
            let expected: BigInt = enumerate_bipartitions(n)
                .iter()
                .map(|bp| exotic_orbit_size(bp).unwrap().eval_u64(q as u64))
                .sum::<BigInt>()
                / BigInt::from(q).pow(2 * n as u32);
            assert_eq!(BigInt::from(members), expected, "q={q} n={n}");
        }
    }
}

#[test]
fn n0_is_stable_under_symplectic_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = make_field(3).unwrap();
    for bp in enumerate_bipartitions(3) {
        let rep = exotic_representative(&bp, &f);
        for _ in 0..5 {
            let g = random_symplectic(&rep, &mut rng);
            let y = g.mul(&rep.y).mul(&g.inverse().unwrap());
            assert!(is_in_n0(&y, &rep.space));
        }
    }
}

#[test]
fn generators_are_symplectic() {
    for q in [2, 3, 4] {
        let f = make_field(q).unwrap();
        let space = make_space(&Partition::new(vec![2, 1]).unwrap(), &f);
        for g in sp_generators(&space).matrices() {
            assert!(is_symplectic(&g, &space));
        }
    }
}

#[test]
fn embedding_inclusions() {
    let f = make_field(2).unwrap();
    for n in 0..=3 {
        for bp in enumerate_bipartitions(n) {
            let e = embed_enhanced(&representative(&bp, &f)).unwrap();
            let lambda = bp.lambda();
            assert_eq!(e.y.jordan_type().unwrap(), lambda.union(&lambda));
            assert!(is_in_n0(&e.y, &e.space));
        }
    }
    // the embedding of a conjugated point is still in the exotic orbit
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f3 = make_field(3).unwrap();
    for bp in enumerate_bipartitions(2) {
        let moved = representative(&bp, &f3).transform(&random_invertible(&f3, 2, &mut rng)).unwrap();
        let e = embed_enhanced(&moved).unwrap();
        let orbit = exotic_orbit(&exotic_representative(&bp, &f3), DEFAULT_BUDGET).unwrap();
        assert!(orbit.contains(&e.w, &e.y), "{bp}");
        assert_eq!(exotic_classify(&e, DEFAULT_BUDGET).unwrap(), bp);
    }
}

#[test]
fn trivial_orbits() {
    let f = make_field(3).unwrap();
    let zero = EnhancedPoint::new(vec![FqElem::ZERO; 2], MatF::zeros(&f, 2, 2)).unwrap();
    assert_eq!(enhanced::orbit(&zero, DEFAULT_BUDGET).unwrap().size(), 1);
    let e = embed_enhanced(&zero).unwrap();
    assert!(e.w.iter().all(|x| x.is_zero()) && e.y.is_zero());
    assert_eq!(exotic_orbit(&e, DEFAULT_BUDGET).unwrap().size(), 1);
    let gens = enhanced::generators(&f, 2);
    assert_eq!(orbit_bfs(&[FqElem::ZERO; 2], &MatF::zeros(&f, 2, 2), &gens, 10).unwrap().size(), 1);
}

/// A random point of the enhanced cone: a random vector and a random
/// conjugate of a Jordan matrix.
fn random_enhanced(f: &Field, lambda: &Partition, rng: &mut ChaCha8Rng) -> EnhancedPoint {
    let n = lambda.weight();
    let g = random_invertible(f, n, rng);
    let x = g.mul(&BasisIndex::enhanced(lambda).jordan_matrix(f)).mul(&g.inverse().unwrap());
    let v = (0..n).map(|_| FqElem(rng.gen_range(0..f.order()) as u8)).collect();
    EnhancedPoint::new(v, x).unwrap()
}

#[test]
fn invariant_classification_matches_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (n_max, q) in [(4, 2), (3, 3)] {
        let f = make_field(q).unwrap();
        for n in 0..=n_max {
            for bp in enumerate_bipartitions(n) {
                assert_eq!(enhanced::invariant_classify(&full_representative(&bp, &f)).unwrap(), bp);
            }
            for lambda in enumerate_partitions(n) {
                for _ in 0..6 {
                    let pt = random_enhanced(&f, &lambda, &mut rng);
                    assert_eq!(enhanced::invariant_classify(&pt).unwrap(), classify(&pt, DEFAULT_BUDGET).unwrap());
                }
            }
        }
    }
}

#[test]
fn exotic_invariant_classification_matches_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (n_max, q) in [(2, 2), (2, 3), (3, 2)] {
        let f = make_field(q).unwrap();
        for n in 0..=n_max {
            for bp in enumerate_bipartitions(n) {
                let rep = exotic_representative(&bp, &f);
                for _ in 0..3 {
                    let g = random_symplectic(&rep, &mut rng);
                    let w: Vec<FqElem> = (0..rep.dim()).map(|_| FqElem(rng.gen_range(0..q) as u8)).collect();
                    let y = g.mul(&rep.y).mul(&g.inverse().unwrap());
                    let pt = ExoticPoint::new(w, y, rep.space.clone()).unwrap();
                    let by_search = exotic_classify(&pt, DEFAULT_BUDGET).unwrap();
                    assert_eq!(exotic::exotic_invariant_classify(&pt).unwrap(), by_search);
                }
            }
        }
    }
}
