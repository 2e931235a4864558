//! Counts matrices in 𝒫 with entries ≤ B that reach more than one reduced
//! matrix under some order of elementary moves.
//!
//! `cargo run --release --example normal_forms -- 12`

use euclid_core::mat2::Mat2;

fn main() {
    let bound: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("bound must be a non-negative integer"))
        .unwrap_or(10);
    let (mut total, mut multiple) = (0u64, 0u64);
    let mut example = None;
    for a in 0..=bound {
        for b in 0..=bound {
            for c in 0..=bound {
                for d in 0..=bound {
                    let m = Mat2::new(a, b, c, d);
                    if !m.in_p() {
                        continue;
                    }
                    total += 1;
                    let forms = m.all_normal_forms().expect("small entries cannot overflow");
                    if forms.len() > 1 {
                        multiple += 1;
                        example.get_or_insert((m, forms));
                    }
                }
            }
        }
    }
    println!("{total} matrices, {multiple} with more than one normal form");
    if let Some((m, forms)) = example {
        let list: Vec<String> = forms.iter().map(|f| f.to_string()).collect();
        println!("first: {m} -> {}", list.join(", "));
    }
}
