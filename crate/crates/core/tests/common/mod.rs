#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tricl_core::type1::{adjust_type1, Type1Variety};
use tricl_core::{RationalityClass, TrinomialVariety};

pub const CORPUS_SEED: u64 = 0x7269_636c;

pub fn random_blocks(rng: &mut ChaCha8Rng, count: usize, max_n: usize, max_l: u64) -> Vec<Vec<u64>> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            (0..n).map(|_| rng.gen_range(1..=max_l)).collect()
        })
        .collect()
}

/// Adjusted rational non-factorial instances with `n_i <= 3`,
/// `l_ij <= 8`, `r <= 4`, `m <= 2`, deduplicated.
pub fn rational_corpus(size: usize) -> Vec<TrinomialVariety> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut out: Vec<TrinomialVariety> = Vec::new();
    while out.len() < size {
        let count = rng.gen_range(3..=5);
        let blocks = random_blocks(&mut rng, count, 3, 8);
        let m = rng.gen_range(0..=2);
        let v = TrinomialVariety::from_blocks(blocks, m).unwrap().adjust().variety;
        let class = v.rationality_class().unwrap();
        if class.is_rational() && class != RationalityClass::Factorial && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Adjusted hyperplatonic instances: three platonic-sized blocks and up to
/// two further blocks of gcd 1.
pub fn hyperplatonic_corpus(size: usize) -> Vec<TrinomialVariety> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x4856);
    let triples: [[u64; 3]; 6] = [[2, 2, 2], [4, 2, 2], [3, 3, 2], [4, 3, 2], [6, 4, 1], [5, 3, 2]];
    let mut out: Vec<TrinomialVariety> = Vec::new();
    while out.len() < size {
        let t = triples[rng.gen_range(0..triples.len())];
        let mut blocks = Vec::new();
        for &g in &t {
            let n = rng.gen_range(1..=2);
            blocks.push((0..n).map(|_| g * rng.gen_range(1..=2)).collect::<Vec<u64>>());
            let last = blocks.last_mut().unwrap();
            last[0] = g;
        }
        for _ in 0..rng.gen_range(0..=2) {
            let n = rng.gen_range(2..=3);
            let mut b: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
            b[0] = 1;
            blocks.push(b);
        }
        let m = rng.gen_range(0..=1);
        let v = TrinomialVariety::from_blocks(blocks, m).unwrap().adjust().variety;
        let rational = v.rationality_class().unwrap().is_rational();
        if rational && tricl_core::coxring::is_hyperplatonic(&v).unwrap().is_some() && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn nonlinear_blocks(max_n: usize, max_l: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    fn go(prefix: &mut Vec<u64>, from: u64, n: usize, max_l: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == n {
            if prefix.as_slice() != [1] {
                out.push(prefix.clone());
            }
            return;
        }
        for x in from..=max_l {
            prefix.push(x);
            go(prefix, x, n, max_l, out);
            prefix.pop();
        }
    }
    for n in 1..=max_n {
        go(&mut Vec::new(), 1, n, max_l, &mut out);
    }
    out
}

/// Every adjusted datum with `3 <= blocks <= 4`, `n_i <= 2`, `l_ij <= 5`,
/// `m = 0`, up to reordering blocks and the variables within a block.
pub fn enumeration_corpus() -> Vec<TrinomialVariety> {
    let types = nonlinear_blocks(2, 5);
    let mut out = Vec::new();
    for count in 3..=4 {
        let mut idx = vec![0usize; count];
        loop {
            let blocks: Vec<Vec<u64>> = idx.iter().map(|&i| types[i].clone()).collect();
            out.push(TrinomialVariety::from_blocks(blocks, 0).unwrap().adjust().variety);
            let Some(p) = (0..count).rev().find(|&p| idx[p] + 1 < types.len()) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..count {
                idx[q] = idx[p];
            }
        }
    }
    out
}

/// Adjusted Type 1 instances with `2 <= r <= 4`, `n_i <= 3`, `l_ij <= 6`.
pub fn type1_corpus(size: usize) -> Vec<Type1Variety> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x5431);
    let mut out: Vec<Type1Variety> = Vec::new();
    while out.len() < size {
        let count = rng.gen_range(2..=4);
        let mut blocks = random_blocks(&mut rng, count, 3, 6);
        // bias towards the finitely generated cases
        match rng.gen_range(0..3) {
            0 => blocks.iter_mut().skip(1).for_each(|b| b[0] = 1),
            1 => blocks.iter_mut().skip(2).for_each(|b| b[0] = 1),
            _ => {}
        }
        let m = rng.gen_range(0..=2);
        let v = adjust_type1(&Type1Variety::from_blocks(blocks, m).unwrap());
        if !v.is_degenerate() && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}
