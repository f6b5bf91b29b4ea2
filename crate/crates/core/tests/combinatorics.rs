use proptest::prelude::*;
use rsk_painleve::combinatorics::*;
use rug::ops::Pow;
use rug::Integer;

fn part(v: &[i64]) -> Partition {
    Partition::new(v).unwrap()
}

#[test]
fn conjugate_examples() {
    assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
    assert_eq!(Partition::empty().conjugate(), Partition::empty());
    assert_eq!(part(&[4, 3]).conjugate(), part(&[2, 2, 2, 1]));
}

#[test]
fn rejects_malformed_parts() {
    assert!(Partition::new(&[1, 2]).is_err());
    assert!(Partition::new(&[2, 0]).is_err());
    assert_eq!(Partition::from_padded(&[2, 1, 0, 0]).unwrap(), part(&[2, 1]));
    assert_eq!("(3,2)".parse::<Partition>().unwrap(), part(&[3, 2]));
}

#[test]
fn hook_examples() {
    let l = part(&[3, 1]);
    assert_eq!(l.hook_length(1, 1), Some(4));
    assert_eq!(l.hook_length(1, 3), Some(1));
    assert_eq!(l.hook_length(2, 2), None);
    assert_eq!(part(&[2, 2]).hooks(), vec![3, 2, 2, 1]);
}

#[test]
fn tableau_counts() {
    assert_eq!(count_standard(&part(&[2, 1])), 2);
    assert_eq!(count_standard(&part(&[3, 2])), 5);
    assert_eq!(count_standard(&part(&[4, 3])), 14);
    assert_eq!(count_standard(&Partition::empty()), 1);
    assert_eq!(schur_at_ones(&part(&[2]), 2), 3);
    assert_eq!(schur_at_ones(&part(&[1, 1]), 2), 1);
    assert_eq!(schur_at_ones(&part(&[4, 3]), 2), 2);
    assert_eq!(schur_at_ones(&part(&[1, 1, 1]), 2), 0);
    assert_eq!(pochhammer_symbol(3, &part(&[2, 1])), 3 * 4 * 2);
}

#[test]
fn strip_products() {
    for l in [part(&[5, 2]), part(&[3])] {
        assert_eq!(strip_hook_product(&l, 5, 1, 1).unwrap(), 1);
    }
    assert_eq!(strip_hook_product(&part(&[6]), 5, 1, 3).unwrap(), 12);
    // column 2 of (3,2): hooks 3 and 1
    assert_eq!(strip_hook_product(&part(&[3, 2]), 4, 2, 3).unwrap(), 3);
    assert!(strip_hook_product(&part(&[3]), 4, 2, 1).is_err());
    assert!(strip_hook_product(&part(&[3]), 2, 1, 3).is_err());
}

#[test]
fn enumeration_examples() {
    let got: Vec<_> = enumerate_partitions(4, 2, None).collect();
    assert_eq!(got, vec![part(&[4]), part(&[3, 1]), part(&[2, 2])]);
    let got: Vec<_> = enumerate_partitions(2, 2, None).collect();
    assert_eq!(got, vec![part(&[2]), part(&[1, 1])]);
    assert_eq!(enumerate_partitions(3, 1, None).collect::<Vec<_>>(), vec![part(&[3])]);
    assert_eq!(enumerate_partitions(0, 3, None).collect::<Vec<_>>(), vec![Partition::empty()]);
    let got: Vec<_> = enumerate_partitions(7, 2, Some(3)).collect();
    assert_eq!(got, vec![part(&[4, 3])]);
    assert_eq!(enumerate_partitions(5, 2, Some(3)).count(), 0);
}

#[test]
fn partition_counts_match_recurrence() {
    // p(n, <= k parts) via the standard recurrence
    fn count(n: i64, k: i64) -> u64 {
        if n == 0 {
            return 1;
        }
        if n < 0 || k == 0 {
            return 0;
        }
        count(n - k, k) + count(n, k - 1)
    }
    for n in 0..=16 {
        for k in 1..=6 {
            let all: Vec<_> = enumerate_partitions(n, k, None).collect();
            assert_eq!(all.len() as u64, count(n as i64, k as i64), "n={n} k={k}");
            assert!(all.windows(2).all(|w| w[0] > w[1]), "order n={n} k={k}");
            assert!(all.iter().all(|l| l.weight() == n && l.len() <= k));
        }
    }
}

#[test]
fn word_statistics_examples() {
    let w = Word::new(vec![2, 1, 2, 1], 2).unwrap();
    assert_eq!(d1(&w), 2);
    assert_eq!(i_k(&w, 1, IkMethod::Exhaustive { bound: 12 }).unwrap(), 2);
    assert_eq!(rsk_shape(&w), part(&[2, 2]));
    assert!(Word::new(vec![3], 2).is_err());
    let long = Word::from_index(0, 13, 2);
    assert!(matches!(
        i_k(&long, 1, IkMethod::Exhaustive { bound: 12 }),
        Err(rsk_painleve::Error::BruteForceBoundExceeded { .. })
    ));
}

#[test]
fn rsk_matches_greene_on_all_small_words() {
    for p in 1..=3u32 {
        for len in 0..=8usize {
            for idx in 0..(p as u64).pow(len as u32) {
                let w = Word::from_index(idx, len, p);
                let shape = rsk_shape(&w);
                assert_eq!(shape.weight(), len as u64);
                assert!(shape.len() <= p as usize);
                assert_eq!(shape.len(), d1(&w), "{w:?}");
                let mut acc = 0;
                for k in 1..=p as usize {
                    acc += shape.part(k - 1) as usize;
                    assert_eq!(i_k(&w, k, IkMethod::Exhaustive { bound: 12 }).unwrap(), acc, "{w:?} k={k}");
                }
                assert_eq!(i_k(&w, p as usize, IkMethod::default()).unwrap(), len);
            }
        }
    }
}

#[test]
fn rsk_bijectivity_sum() {
    for p in 1..=4u32 {
        for ell in 0..=12u64 {
            let total: Integer = enumerate_partitions(ell, p as usize, None)
                .map(|l| count_standard(&l) * schur_at_ones(&l, p))
                .sum();
            assert_eq!(total, Integer::from(p).pow(ell as u32));
        }
    }
}

#[test]
fn formula_forms_agree_exhaustively() {
    for n in 0..=12 {
        for l in enumerate_partitions(n, 12, None) {
            assert_eq!(count_standard(&l), count_standard_vandermonde(&l));
            for q in 1..=6 {
                let [a, b, c] = schur_at_ones_forms(&l, q);
                assert_eq!(a, b);
                assert_eq!(b, c);
            }
        }
    }
}

fn arb_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1i64..9, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(&v).unwrap()
    })
}

proptest! {
    #[test]
    fn conjugate_is_involution(l in arb_partition()) {
        let c = l.conjugate();
        prop_assert_eq!(c.weight(), l.weight());
        prop_assert_eq!(c.conjugate(), l);
    }

    #[test]
    fn hooks_agree_with_cellwise(l in arb_partition()) {
        let mut k = 0;
        let hooks = l.hooks();
        for i in 1..=l.len() {
            for j in 1..=l.part(i - 1) as usize {
                prop_assert_eq!(Some(hooks[k]), l.hook_length(i, j));
                k += 1;
            }
        }
    }

    #[test]
    fn rsk_shape_bounded_by_alphabet(letters in prop::collection::vec(1u32..5, 0..30)) {
        let w = Word::new(letters.clone(), 4).unwrap();
        let s = rsk_shape(&w);
        prop_assert_eq!(s.weight() as usize, letters.len());
        prop_assert!(s.len() <= 4);
        prop_assert_eq!(s.len(), d1(&w));
    }
}
