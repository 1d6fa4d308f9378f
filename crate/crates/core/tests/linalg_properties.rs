use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use tricl_core::linalg::{
    canonical_group, cokernel, determinantal_divisor, is_saturated_sublattice, is_sublattice, matrix_a, matrix_b,
    rank, smith_invariants, AbelianGroup, Cokernel, Matrix,
};

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Matrix<i64>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |e| {
            let rows: Vec<Vec<i64>> = e.chunks(c).map(<[i64]>::to_vec).collect();
            Matrix::from_rows(c, rows)
        })
    })
}

fn to_big(m: &Matrix<i64>) -> Matrix<BigInt> {
    m.map(|&x| BigInt::from(x))
}

fn exponents() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (1..=3usize, prop::collection::vec(1..=6i64, 1..=3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Products of leading invariant factors are the determinantal divisors.
    #[test]
    fn smith_matches_minors(m in matrix(5, 5, 6)) {
        let s = smith_invariants(&m);
        let mut product = 1i64;
        for k in 1..=m.rows().min(m.cols()) {
            let delta = determinantal_divisor(&m, k).unwrap();
            if k <= s.rank {
                product *= s.invariant_factors[k - 1];
                prop_assert_eq!(delta, product, "k = {}", k);
            } else {
                prop_assert_eq!(delta, 0);
            }
        }
    }

    #[test]
    fn invariant_factors_form_a_chain(m in matrix(6, 6, 9)) {
        let s = smith_invariants(&m);
        prop_assert_eq!(s.invariant_factors.len(), s.rank);
        prop_assert!(s.invariant_factors.iter().all(|&d| d > 0));
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[1] % w[0] == 0);
        }
    }

    #[test]
    fn machine_and_big_integers_agree(m in matrix(6, 6, 20)) {
        let small = smith_invariants(&m.map(|&x| x as i128));
        let big = smith_invariants(&to_big(&m));
        prop_assert_eq!(small.rank, big.rank);
        let lifted: Vec<BigInt> = small.invariant_factors.iter().map(|&d| BigInt::from(d)).collect();
        prop_assert_eq!(lifted, big.invariant_factors);
    }

    /// Unimodular row and column operations leave the cokernel unchanged.
    #[test]
    fn cokernel_is_invariant(
        m in matrix(5, 5, 6),
        ops in prop::collection::vec((0..5usize, 0..5usize, -3..=3i64, any::<bool>()), 0..12),
    ) {
        let mut n = m.clone();
        for (a, b, f, on_rows) in ops {
            if on_rows {
                let (a, b) = (a % n.rows(), b % n.rows());
                if a != b { n.add_row_multiple(a, b, &f) } else { n.negate_row(a) }
            } else {
                let (a, b) = (a % n.cols(), b % n.cols());
                if a != b { n.add_col_multiple(a, b, &f) } else { n.swap_cols(a, b) }
            }
        }
        prop_assert_eq!(cokernel(&m), cokernel(&n));
        // appending a combination of rows changes nothing either
        let mut extended = m.clone();
        let sum: Vec<i64> = (0..m.cols()).map(|j| (0..m.rows()).map(|i| m[(i, j)]).sum()).collect();
        extended.push_row(sum);
        prop_assert_eq!(cokernel(&m), cokernel(&extended));
    }

    /// The cokernel group is `Z^(cols - rank)` times the nonunit factors.
    #[test]
    fn cokernel_shape(m in matrix(5, 6, 6)) {
        let g = cokernel(&m);
        let s = smith_invariants(&m);
        prop_assert_eq!(g.rank(), m.cols() - s.rank);
        let torsion: Vec<i64> = s.invariant_factors.into_iter().filter(|&d| d != 1).collect();
        prop_assert_eq!(g.invariant_factors(), torsion.as_slice());
    }

    #[test]
    fn order_of_rows_is_one(m in matrix(4, 4, 6), coeffs in prop::collection::vec(-3..=3i64, 4)) {
        let c = Cokernel::new(&m);
        let w: Vec<i64> = (0..m.cols())
            .map(|j| (0..m.rows()).map(|i| coeffs[i] * m[(i, j)]).sum())
            .collect();
        prop_assert!(c.contains(&w));
        prop_assert_eq!(c.order_of(&w), Some(1));
    }

    /// `k w` lies in the row lattice exactly when the order of `w` divides `k`.
    #[test]
    fn order_of_is_minimal(m in matrix(4, 4, 6), w in prop::collection::vec(-4..=4i64, 4)) {
        let c = Cokernel::new(&m);
        let w = &w[..m.cols()];
        match c.order_of(w) {
            Some(order) => {
                prop_assert!(order >= 1);
                let scaled: Vec<i64> = w.iter().map(|x| x * order).collect();
                prop_assert!(c.contains(&scaled));
                for k in 1..order {
                    let smaller: Vec<i64> = w.iter().map(|x| x * k).collect();
                    prop_assert!(!c.contains(&smaller));
                }
            }
            None => prop_assert!(c.group().rank() > 0),
        }
    }

    #[test]
    fn canonical_group_ignores_order(
        (factors, shuffled) in prop::collection::vec(0..=12i64, 0..6)
            .prop_flat_map(|f| (Just(f.clone()), Just(f).prop_shuffle())),
        rank in 0..3usize,
    ) {
        prop_assert_eq!(canonical_group(&factors, rank), canonical_group(&shuffled, rank));
        let g = canonical_group(&factors, rank);
        prop_assert_eq!(g.rank(), rank + factors.iter().filter(|&&f| f == 0).count());
        let order: i64 = factors.iter().filter(|&&f| f != 0).product();
        prop_assert_eq!(g.torsion_order(), order);
        for w in g.invariant_factors().windows(2) {
            prop_assert!(w[1] % w[0] == 0);
        }
        prop_assert!(g.invariant_factors().iter().all(|&d| d >= 2));
    }

    #[test]
    fn products_are_associative(
        a in prop::collection::vec(1..=12i64, 0..4),
        b in prop::collection::vec(1..=12i64, 0..4),
        c in prop::collection::vec(1..=12i64, 0..4),
        ranks in (0..3usize, 0..3usize, 0..3usize),
    ) {
        let (ga, gb, gc) = (
            canonical_group(&a, ranks.0),
            canonical_group(&b, ranks.1),
            canonical_group(&c, ranks.2),
        );
        prop_assert_eq!(ga.product(&gb).product(&gc), ga.product(&gb.product(&gc)));
        prop_assert_eq!(ga.product(&gb), gb.product(&ga));
        prop_assert_eq!(ga.product(&AbelianGroup::trivial()), ga.clone());
    }

    #[test]
    fn group_text_round_trip(factors in prop::collection::vec(1..=30i64, 0..5), rank in 0..4usize) {
        let g = canonical_group(&factors.iter().map(|&f| BigInt::from(f)).collect::<Vec<_>>(), rank);
        let parsed: AbelianGroup<BigInt> = g.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &g);
        let json = serde_json::to_string(&g).unwrap();
        let back: AbelianGroup<BigInt> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn matrix_a_rank_and_divisor((k, l) in exponents()) {
        let a = matrix_a(k, &l);
        let r = rank(&a);
        prop_assert_eq!(r, l.len() - 1 + k);
        let g = l.iter().fold(0i64, |acc, x| acc.gcd(x));
        let delta = determinantal_divisor(&a, r).unwrap();
        prop_assert_eq!(g.pow(k as u32 - 1) % delta, 0);
    }

    #[test]
    fn matrix_b_is_saturated_in_matrix_a((k, l) in exponents()) {
        let big: Vec<BigInt> = l.iter().map(|&x| BigInt::from(x)).collect();
        let g = big.iter().fold(BigInt::from(0), |acc, x| acc.gcd(x));
        let a = matrix_a(k, &big);
        let b = matrix_b(k, &big, &g).unwrap();
        prop_assert!(is_sublattice(&b, &a));
        prop_assert!(is_saturated_sublattice(&b, &a));
    }

    #[test]
    fn saturation_of_multiples(m in matrix(3, 4, 5), k in 1..=4i64) {
        prop_assert!(is_saturated_sublattice(&m, &m));
        let scaled = m.map(|x| x * k);
        prop_assert!(is_sublattice(&scaled, &m));
        let nonzero = m.entries().iter().any(|&x| x != 0);
        prop_assert_eq!(is_saturated_sublattice(&scaled, &m), k == 1 || !nonzero);
    }

    #[test]
    fn matrix_serde_round_trip(m in matrix(4, 4, 50)) {
        let big = to_big(&m);
        let json = serde_json::to_string(&big).unwrap();
        let back: Matrix<BigInt> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, big);
    }
}
