use num_integer::Integer;
use quandle_core::cyclotomic::{reductive_poly, symmetric_poly};
use quandle_core::finite::analysis::{
    check_i_quandle, dis, dis_generator_check, lmlt, medial_iff_dis_abelian, orbit_group, orbits,
    sample_dis_words,
};
use quandle_core::finite::construct::free_2reductive_symmetric;
use quandle_core::finite::corpus::standard_corpus;
use quandle_core::finite::{affine_quandle, Automorphism, FiniteBinaryTable, DEFAULT_CLOSURE_CAP as CAP};
use quandle_core::free::{FreeQuandle, GeneratorSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_affine_quandles() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let mut done = 0;
    while done < 200 {
        let k: u64 = rng.gen_range(1..=12);
        let u: u64 = rng.gen_range(0..k.max(1));
        if k > 1 && u.gcd(&k) != 1 {
            continue;
        }
        done += 1;
        let q = affine_quandle(&[k], &Automorphism::Scalar(u as i64)).unwrap();
        // direct formula as the oracle
        for x in 0..k as u32 {
            for y in 0..k as u32 {
                let v = ((1 + k - u) * x as u64 + u * y as u64) % k;
                assert_eq!(q.op(x, y) as u64, v);
            }
        }
        let r = q.check_axioms();
        assert!(r.is_quandle() && r.medial);
        let m = medial_iff_dis_abelian(&q, CAP).unwrap();
        assert!(m.medial && m.dis_abelian);
        // Dis is the group of translations by multiples of 1 - u
        let one_minus_u = (1 + k - u) % k;
        assert_eq!(dis(&q, CAP).unwrap().order() as u64, k / one_minus_u.gcd(&k));
    }
}

#[test]
fn free_red2sym_tables() {
    for n in 1..=5 {
        for g in 1..=3 {
            let gens = GeneratorSet::numbered(g).unwrap();
            let q = free_2reductive_symmetric(n, &gens, 4096).unwrap();
            assert_eq!(q.size(), (n as usize).pow(g as u32 - 1) * g);
            let r = q.check_axioms();
            assert!(r.is_quandle() && r.medial, "n={n} g={g}");
            assert!(q.check_reductivity(2) && q.check_symmetry(n));
            if n >= 2 {
                // agrees with the free algebra over Z_n with t = 1
                let ctx = FreeQuandle::symmetric_reductive2(gens.clone(), n).unwrap();
                let elems: Vec<_> = (0..q.size())
                    .map(|idx| {
                        let sym = &gens.names()[idx % g];
                        let mut code = idx / g;
                        let reduced: Vec<&str> = gens.reduced().collect();
                        let mut coords = Vec::new();
                        for s in reduced.iter().rev() {
                            coords.push((s.to_string(), ((code as u64 % n) as i64).to_string().parse().unwrap()));
                            code /= n as usize;
                        }
                        ctx.element(coords, sym).unwrap()
                    })
                    .collect();
                for x in 0..q.size() {
                    for y in 0..q.size() {
                        let prod = ctx.star(&elems[x], &elems[y]).unwrap();
                        assert_eq!(prod, elems[q.op(x as u32, y as u32) as usize]);
                    }
                }
            }
        }
    }
}

#[test]
fn red2sym_orbits() {
    let q = free_2reductive_symmetric(2, &GeneratorSet::numbered(2).unwrap(), 4096).unwrap();
    let o = orbits(&q).unwrap();
    assert_eq!(o.len(), 2);
    assert!(o.iter().all(|orb| orb.len() == 2));
}

#[test]
fn corpus_word_sampling_and_orbit_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for q in standard_corpus().unwrap() {
        let d = dis(&q.table, CAP).unwrap();
        let r = sample_dis_words(&q.table, &d, 200, 10, &mut rng).unwrap();
        assert!(r.passed(), "{}: {r:?}", q.name);
        assert!(r.zero_sum_words >= 100);
        // nonzero-sum words leave Dis exactly when some L_0^k does
        let l = lmlt(&q.table, CAP).unwrap();
        if d.order() < l.order() {
            assert!(r.nonzero_sum_outside_dis > 0, "{}", q.name);
        }
        for orbit in orbits(&q.table).unwrap() {
            let g = orbit_group(&q.table, orbit[0], CAP).unwrap();
            assert_eq!(g.elements, orbit);
            assert!(g.is_abelian_group(), "{}", q.name);
        }
    }
}

#[test]
fn i_quandle_agrees_with_laws_on_corpus() {
    for q in standard_corpus().unwrap() {
        for n in 1..=6u64 {
            assert_eq!(
                q.table.check_symmetry(n),
                check_i_quandle(&q.table, &symmetric_poly(n)).unwrap(),
                "{} n={n}",
                q.name
            );
            assert_eq!(
                q.table.check_reductivity(n),
                check_i_quandle(&q.table, &reductive_poly(n as u32 - 1)).unwrap(),
                "{} m={n}",
                q.name
            );
        }
    }
}

#[test]
fn i_quandle_examples() {
    let aff = affine_quandle(&[3], &Automorphism::Scalar(2)).unwrap();
    assert!(check_i_quandle(&aff, &"1 + t".parse().unwrap()).unwrap());
    assert!(!check_i_quandle(&aff, &"1 - t".parse().unwrap()).unwrap());
    // a counterexample to 2-reductivity, found exhaustively
    assert!(!aff.check_reductivity(2));
}

#[test]
fn dis_generator_bound() {
    let red = free_2reductive_symmetric(3, &GeneratorSet::numbered(3).unwrap(), 4096).unwrap();
    let r = dis_generator_check(&red, &[0, 1, 2], 0, Some(1), CAP).unwrap();
    assert!(r.passed());
    // bound 0 gives the trivial group, which is too small here
    let r = dis_generator_check(&red, &[0, 1, 2], 0, Some(0), CAP).unwrap();
    assert!(!r.passed());
    assert_eq!(r.bounded_order, Some(1));
}

#[test]
fn text_format_round_trip_on_corpus() {
    for q in standard_corpus().unwrap() {
        assert_eq!(FiniteBinaryTable::parse(&q.table.to_text()).unwrap(), q.table);
        assert_eq!(FiniteBinaryTable::from_json(&q.table.to_json()).unwrap(), q.table);
    }
}
