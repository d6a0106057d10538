use onlinege::codes::{build_color_666, build_toric_2d, build_toric_3d, tanner_graph, CssCode};
use onlinege::decoder::{decode, reduced_system, Backend, Erasure};
use onlinege::gf2::{lup_decompose, BitMatrix, BitVec, GrowthBlock};
use onlinege::sim::{sample_error, shot_rng, syndrome};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut impl Rng, m: usize, n: usize, density: f64) -> BitMatrix {
    BitMatrix::from_coords(
        m,
        n,
        (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|_| rng.random_bool(density))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

fn random_vec(rng: &mut impl Rng, n: usize) -> BitVec {
    BitVec::from_ones(n, (0..n).filter(|_| rng.random_bool(0.5)).collect::<Vec<_>>())
}

/// Rank by reducing a copy to reduced row echelon form.
fn oracle_rank(a: &BitMatrix) -> usize {
    let mut rows: Vec<BitVec> = a.iter_rows().cloned().collect();
    let mut rank = 0;
    for c in 0..a.cols() {
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(c)) {
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
        }
    }
    rank
}

/// `a` with `rows` extra rows and `cols` extra columns of random bits.
fn enlarge(rng: &mut impl Rng, a: &BitMatrix, rows: usize, cols: usize, density: f64) -> BitMatrix {
    let (m, n) = (a.rows(), a.cols());
    let extra = random_matrix(rng, m + rows, n + cols, density);
    let mut big = a.clone();
    big.resize_cols(n + cols);
    for i in 0..m {
        for j in n..n + cols {
            big.set(i, j, extra.get(i, j));
        }
    }
    for i in m..m + rows {
        big.push_row(extra.row(i).clone()).unwrap();
    }
    big
}

fn density() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.1), Just(0.5), Just(0.9)]
}

proptest! {
    #[test]
    fn decompose_factorises_and_is_echelon(m in 0usize..=64, n in 0usize..=64, d in density(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, m, n, d);
        let b = random_vec(&mut rng, m);
        let s = lup_decompose(&a, Some(&b)).unwrap();
        prop_assert!(s.verify_factorisation(&a).unwrap());
        prop_assert!(s.is_row_echelon());
        prop_assert_eq!(s.rank(), oracle_rank(&a));
        let c = s.counters();
        prop_assert_eq!(c.bit_xors, c.row_xors * (n as u64 + 1));
        if s.is_consistent().unwrap() {
            prop_assert_eq!(a.mul_vec(&s.solve().unwrap()).unwrap(), b);
        }
    }

    #[test]
    fn online_growth_tracks_batch(seed: u64, steps in 3usize..=6, d in density()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = random_matrix(&mut rng, 4, 4, d);
        let mut b = random_vec(&mut rng, 4);
        let mut s = lup_decompose(&a, Some(&b)).unwrap();
        for _ in 0..steps {
            let (rows, cols) = loop {
                let rc = (rng.random_range(0..=8), rng.random_range(0..=8));
                if rc != (0, 0) { break rc; }
            };
            let big = enlarge(&mut rng, &a, rows, cols, d);
            let mut big_b = b.clone();
            big_b.extend_from(&random_vec(&mut rng, rows));
            s.online_update(&GrowthBlock::from_enlarged(&big, a.rows(), a.cols(), Some(&big_b))).unwrap();
            a = big;
            b = big_b;
            prop_assert!(s.verify_factorisation(&a).unwrap());
            prop_assert!(s.is_row_echelon());
            let batch = lup_decompose(&a, Some(&b)).unwrap();
            prop_assert_eq!(s.rank(), batch.rank());
            prop_assert_eq!(s.is_consistent().unwrap(), batch.is_consistent().unwrap());
            if s.is_consistent().unwrap() {
                prop_assert_eq!(a.mul_vec(&s.solve().unwrap()).unwrap(), b.clone());
            }
        }
    }

    #[test]
    fn interior_support_stays_inside_erasure(seed: u64, steps in 0usize..4) {
        let code = build_toric_2d(6).unwrap();
        let t = tanner_graph(&code.hx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seeds = BitVec::from_ones(36, (0..36).filter(|_| rng.random_bool(0.1)).collect::<Vec<_>>());
        let mut e = Erasure::from_syndrome(&seeds, code.n_qubits);
        let mut prev = (0, 0, 0);
        for _ in 0..steps {
            e.grow(&t);
            let now = (e.checks().len(), e.qubits().len(), e.interior_qubits().len());
            prop_assert!(now.0 >= prev.0 && now.1 >= prev.1 && now.2 >= prev.2);
            prev = now;
        }
        let x = BitVec::from_ones(
            code.n_qubits,
            e.interior_qubits().iter().copied().filter(|_| rng.random_bool(0.5)).collect::<Vec<_>>(),
        );
        let s = code.hx.mul_vec(&x).unwrap();
        prop_assert!(s.iter_ones().all(|c| e.contains_check(c)));
        let (hp, sp) = reduced_system(&e, &code.hx, &seeds);
        prop_assert_eq!(hp.rows(), e.checks().len());
        prop_assert_eq!(hp.cols(), e.interior_qubits().len());
        prop_assert_eq!(sp.count_ones(), seeds.count_ones());
    }
}

fn backends_agree(code: &CssCode, p: f64, shots: u64) {
    let t = tanner_graph(&code.hx);
    for shot in 0..shots {
        let mut rng = shot_rng(11, shot);
        let e = sample_error(code.n_qubits, p, &mut rng);
        let s = syndrome(&code.hx, &e).unwrap();
        let off = decode(&code.hx, &t, &s, Backend::Offline).unwrap();
        let on = decode(&code.hx, &t, &s, Backend::Online).unwrap();
        assert!(off.valid && on.valid, "shot {shot}");
        assert_eq!(off.iterations, on.iterations, "shot {shot}");
        assert_eq!(code.hx.mul_vec(&on.correction).unwrap(), s);
    }
}

#[test]
fn backend_equivalence_toric_3d() {
    backends_agree(&build_toric_3d(3).unwrap(), 0.05, 40);
}

#[test]
fn backend_equivalence_colour() {
    backends_agree(&build_color_666(6, 6).unwrap(), 0.05, 40);
    backends_agree(&build_color_666(3, 3).unwrap(), 0.2, 40);
}

#[test]
fn backend_equivalence_toric_2d_high_noise() {
    backends_agree(&build_toric_2d(5).unwrap(), 0.15, 40);
}

#[test]
fn offline_does_at_least_as_much_work_over_a_decode() {
    let code = build_toric_2d(9).unwrap();
    let t = tanner_graph(&code.hx);
    let (mut off_total, mut on_total) = (0, 0);
    for shot in 0..30 {
        let e = sample_error(code.n_qubits, 0.05, &mut shot_rng(3, shot));
        let s = syndrome(&code.hx, &e).unwrap();
        off_total += decode(&code.hx, &t, &s, Backend::Offline).unwrap().counters.bit_xors;
        on_total += decode(&code.hx, &t, &s, Backend::Online).unwrap().counters.bit_xors;
    }
    assert!(on_total < off_total, "online {on_total} vs offline {off_total}");
}
