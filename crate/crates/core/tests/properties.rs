use proptest::prelude::*;

use pcol_core::constructions::{construct_bc_a, hamming_cosets, hamming_union_coloring, rm_coloring};
use pcol_core::hamming::{digits, index, neighbors};
use pcol_core::io::{read_pcol, write_pcol, Encoding};
use pcol_core::spectral::{character_transform, coloring_degree, walsh_hadamard};
use pcol_core::verify::{compute_quotient, densities_by_count, densities_from_quotient};
use pcol_core::{Coloring, Guards};

fn small_coloring() -> impl Strategy<Value = Coloring> {
    (2u32..=4, 1usize..=4, 1u32..=5)
        .prop_flat_map(|(q, n, k)| {
            let len = (q as usize).pow(n as u32);
            (Just((q, n, k)), proptest::collection::vec(0..k, len))
        })
        .prop_filter_map("surjective", |((q, n, k), values)| {
            Coloring::from_table(n, q, k, values).ok()
        })
}

fn perfect_coloring() -> impl Strategy<Value = Coloring> {
    let g = Guards::default();
    let pool = [
        rm_coloring(2, 2).unwrap(),
        rm_coloring(3, 1).unwrap(),
        rm_coloring(4, 1).unwrap(),
        hamming_union_coloring(&hamming_cosets(3).unwrap(), 2, 3).unwrap(),
        hamming_cosets(2).unwrap().coloring().clone(),
        construct_bc_a(5, 3, &g).unwrap().coloring().clone(),
    ];
    (0..pool.len(), proptest::collection::vec(0u8..4, 8)).prop_map(move |(i, shift)| {
        let c = &pool[i];
        let shift: Vec<u8> = shift[..c.n()].iter().map(|&d| d % c.q() as u8).collect();
        c.translate(&shift).unwrap()
    })
}

fn naive_walsh(f: &[i64], n: usize) -> Vec<i64> {
    (0..1usize << n)
        .map(|z| {
            (0..1usize << n)
                .map(|x| if (x & z).count_ones() % 2 == 0 { f[x] } else { -f[x] })
                .sum()
        })
        .collect()
}

proptest! {
    #[test]
    fn file_round_trip(c in small_coloring(), binary in any::<bool>()) {
        let enc = if binary { Encoding::Binary } else { Encoding::Text };
        let mut bytes = Vec::new();
        write_pcol(&c, &mut bytes, enc, &Guards::default()).unwrap();
        let (back, e) = read_pcol(bytes.as_slice()).unwrap();
        prop_assert_eq!(e, enc);
        prop_assert_eq!(back.table(), c.table());
        let mut again = Vec::new();
        write_pcol(&back, &mut again, enc, &Guards::default()).unwrap();
        prop_assert_eq!(again, bytes);
    }

    #[test]
    fn digits_index_round_trip(q in 2u32..=7, n in 1usize..=6, seed in any::<u64>()) {
        let count = (q as u64).pow(n as u32);
        let v = seed % count;
        let w = digits(v, n, q).unwrap();
        prop_assert_eq!(index(&w, q).unwrap(), v);
        let nb = neighbors(v, n, q).unwrap();
        prop_assert_eq!(nb.len(), n * (q as usize - 1));
        for u in nb {
            let wu = digits(u, n, q).unwrap();
            prop_assert_eq!(w.iter().zip(&wu).filter(|(a, b)| a != b).count(), 1);
            prop_assert!(neighbors(u, n, q).unwrap().contains(&v));
        }
    }

    #[test]
    fn walsh_matches_naive(n in 1usize..=7, values in proptest::collection::vec(-5i64..5, 128)) {
        let f = &values[..1 << n];
        let mut fast = f.to_vec();
        walsh_hadamard(&mut fast);
        prop_assert_eq!(fast, naive_walsh(f, n));
    }

    #[test]
    fn transform_inverts(q in 2u32..=5, n in 1usize..=4, values in proptest::collection::vec(-3i64..3, 625)) {
        let f = &values[..(q as usize).pow(n as u32)];
        let spec = character_transform(f, n, q, &Guards::default()).unwrap();
        prop_assert_eq!(spec.inverse().unwrap(), f.to_vec());
        prop_assert!(spec.parseval_holds(f));
    }

    #[test]
    fn translation_preserves_quotient_and_degree(c in perfect_coloring()) {
        let g = Guards::default();
        let t = c.materialize(&g).unwrap();
        let s = compute_quotient(&t, &g).unwrap();
        let s = s.matrix().expect("translates of perfect colorings are perfect");
        prop_assert_eq!(densities_by_count(&t, &g).unwrap(), densities_from_quotient(s).unwrap());
        let zero = vec![0u8; c.n()];
        let original = match c.node() {
            Some(pcol_core::hamming::Node::Translation { base, .. }) => base.clone(),
            _ => c.translate(&zero).unwrap(),
        };
        let s0 = compute_quotient(&original, &g).unwrap();
        prop_assert_eq!(Some(s), s0.matrix());
        prop_assert_eq!(coloring_degree(&t, &g).unwrap(), coloring_degree(&original, &g).unwrap());
    }

    #[test]
    fn densities_sum_to_one(c in small_coloring()) {
        let d = densities_by_count(&c, &Guards::default()).unwrap();
        let total = d.iter().fold(num_rational::BigRational::from_integer(0.into()), |a, b| a + b);
        prop_assert_eq!(total, num_rational::BigRational::from_integer(1.into()));
    }
}
