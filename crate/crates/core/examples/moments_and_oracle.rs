//! Normally ordered moments from the series, checked against dense
//! truncated Fock-space matrices.

use nlcs::ladder::{all_words, normal_word};
use nlcs::oracle::oracle_expect;
use nlcs::{build_state, expect_word, Ladder, MomentTable, Nonlinearity, Parity, Truncation};
use num_complex::Complex64;

fn show(word: &[Ladder]) -> String {
    word.iter().map(|l| if *l == Ladder::Raise { "A†" } else { "A" }).collect()
}

fn main() -> nlcs::Result<()> {
    let nl = Nonlinearity::trapped_ion(0.2)?;
    let state = build_state(Parity::Even, Complex64::new(0.9, 0.4), &nl, Truncation::default())?;
    let table = MomentTable::new(&state, 4);

    println!("normally ordered moments <A†^j A^k>:");
    for j in 0..=2 {
        for k in 0..=2 {
            println!("  j={j} k={k}: {:.10}", table.get(j, k).unwrap());
        }
    }
    debug_assert_eq!(table.expect_word(&normal_word(1, 1)), table.get(1, 1).unwrap());

    let dim = state.n_trunc + 6;
    let mut worst = 0.0f64;
    for word in all_words(4) {
        let series = expect_word(&state, &word);
        let matrix = oracle_expect(&state, &word, dim)?;
        worst = worst.max((series - matrix).norm());
        if word.iter().filter(|l| **l == Ladder::Raise).count() == 2 {
            println!("{:>10}: series {:.10}  matrix {:.10}", show(&word), series, matrix);
        }
    }
    println!("largest series/matrix gap over all length-4 words: {worst:.2e}");
    Ok(())
}
