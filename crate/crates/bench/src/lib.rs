//! Shared inputs for the benchmarks.

/// `u#v` with `u = 0^n` and `v = 0^(n-1)1`, the slow case for `lex`.
pub fn lex_word(n: usize) -> String {
    let mut w = "0".repeat(n);
    w.push('#');
    w.push_str(&"0".repeat(n.saturating_sub(1)));
    w.push('1');
    w
}

/// `(abc)^n`, in `count-eq3`.
pub fn balanced_word(n: usize) -> String {
    "abc".repeat(n)
}

/// `◊^p u #u` for `u = 01^m`, in `L_ℓ` for every `ℓ` when `p ≥ 1`.
pub fn hierarchy_word(p: usize, m: usize) -> String {
    let u = format!("0{}", "1".repeat(m));
    format!("{}{u}#{u}", "◊".repeat(p))
}

/// Alternating bits, LSB first.
pub fn binary_word(n: usize) -> String {
    (0..n).map(|i| if i % 2 == 0 { '1' } else { '0' }).collect()
}
