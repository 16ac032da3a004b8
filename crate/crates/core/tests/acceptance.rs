//! End-to-end acceptance checks. Each test prints one PASS/FAIL line to the
//! real stdout (not the captured one) so the summary survives a green run.
//!
//! Expected values come from small oracles written here, independently of
//! the library code they check.

use std::io::Write;

use altsc_core::automaton::DynAutomaton;
use altsc_core::crosscheck::{self, CrosscheckConfig};
use altsc_core::gallery::{self, find_isolated_prime, DIAMOND};
use altsc_core::prob::{rabin_automaton, separate_quotients, Rational};
use altsc_core::profiler::{check_bound, profile, DEFAULT_STATE_CAP};
use altsc_core::quotient::{count_quotients, distinguish, query_table, RowSpec, DEFAULT_BUDGET};
use altsc_core::word::Alphabet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn report(id: u32, title: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {id:>2} [{verdict}] {title}: {detail}").unwrap();
}

/// `Σ w_i 2^i / 2^|w|`, straight from the definition.
fn bin_oracle(w: &str) -> Rational {
    let mut num = BigInt::zero();
    for (i, c) in w.chars().enumerate() {
        if c == '1' {
            num += BigInt::one() << i;
        }
    }
    Rational::new(num, BigInt::one() << w.len())
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

#[test]
fn criterion_01_rabin_identity() {
    let aut = rabin_automaton();
    let mut checked = 0;
    let mut bad = Vec::new();
    for u in Alphabet::from_str_letters("01").words_up_to(12) {
        checked += 1;
        if aut.acceptance_probability(&u).unwrap() != bin_oracle(&u) {
            bad.push(u);
        }
    }
    let ok = checked == 8191 && bad.is_empty();
    report(1, "P(u) = bin(u) on {0,1}^<=12", ok, &format!("{checked} words, {} mismatches", bad.len()));
    assert!(ok, "mismatches: {bad:?}");
}

#[test]
fn criterion_02_product_identity() {
    let aut = rabin_automaton();
    let mut checked = 0;
    let mut bad = Vec::new();
    for w in Alphabet::from_str_letters("01#").words_up_to(8) {
        let product = w.split('#').map(bin_oracle).fold(Rational::one(), |acc, x| acc * x);
        checked += 1;
        if aut.acceptance_probability(&w).unwrap() != product {
            bad.push(w);
        }
    }
    let ok = checked == 9841 && bad.is_empty();
    report(2, "P(u1#...#uk) = product of bin(ui) on {0,1,#}^<=8", ok, &format!("{checked} words, {} mismatches", bad.len()));
    assert!(ok, "mismatches: {bad:?}");
}

#[test]
fn criterion_03_rabin_separation() {
    let aut = rabin_automaton();
    let member = |w: &str| aut.acceptance_probability(w).unwrap() > half();
    let mut summary = Vec::new();
    let mut ok = true;
    for n in 1..=8 {
        let words: Vec<String> = Alphabet::from_str_letters("01").words_of_length(n).collect();
        let mut separated = 0usize;
        for (i, u) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                let s = separate_quotients(u, v).unwrap();
                if member(&format!("{u}1{s}")) != member(&format!("{v}1{s}")) {
                    separated += 1;
                }
            }
        }
        let pairs = words.len() * (words.len() - 1) / 2;
        ok &= separated == pairs;
        summary.push(format!("n={n}: {separated}/{pairs}"));
    }
    report(3, "2^n distinct quotients of L_1/2 for n = 1..8", ok, &summary.join(", "));
    assert!(ok);
}

fn count(w: &str, c: char) -> usize {
    w.chars().filter(|&x| x == c).count()
}

fn one_hash(w: &str) -> Option<(&str, &str)> {
    let mut parts = w.split('#');
    let (u, v) = (parts.next()?, parts.next()?);
    parts.next().is_none().then_some((u, v))
}

/// Strict order with a proper prefix first, compared letter by letter.
fn lex_oracle(u: &str, v: &str) -> bool {
    let (u, v): (Vec<char>, Vec<char>) = (u.chars().collect(), v.chars().collect());
    for i in 0..u.len().min(v.len()) {
        if u[i] != v[i] {
            return u[i] < v[i];
        }
    }
    u.len() < v.len()
}

fn hier_oracle(w: &str, l: u32) -> bool {
    let chars: Vec<char> = w.chars().collect();
    let p = chars.iter().take_while(|&&c| c == DIAMOND).count();
    if chars[p..].contains(&DIAMOND) {
        return false;
    }
    let rest: String = chars[p..].iter().collect();
    let blocks: Vec<&str> = rest.split('#').collect();
    let k = blocks.len() - 1;
    (k as u64) <= (p as u64).pow(l) && blocks[1..].iter().any(|b| *b == blocks[0])
}

fn disagreements(aut: &dyn DynAutomaton, bound: usize, oracle: impl Fn(&str) -> bool) -> (usize, usize) {
    let mut words = 0;
    let mut bad = 0;
    for w in aut.alphabet().words_up_to(bound) {
        words += 1;
        bad += usize::from(aut.accepts(&w).unwrap() != oracle(&w));
    }
    (words, bad)
}

#[test]
fn criterion_04_gallery_equivalence() {
    let aut = |name: &str| gallery::by_name(name).unwrap().automaton.unwrap();
    let cases: Vec<(&str, usize, Box<dyn Fn(&str) -> bool>)> = vec![
        ("count-eq3", 10, Box::new(|w| count(w, 'a') == count(w, 'b') && count(w, 'b') == count(w, 'c'))),
        ("not-eq", 9, Box::new(|w| one_hash(w).is_some_and(|(u, v)| u != v))),
        ("lex", 9, Box::new(|w| one_hash(w).is_some_and(|(u, v)| lex_oracle(u, v)))),
        ("l-hier:2", 8, Box::new(|w| hier_oracle(w, 2))),
    ];
    let mut ok = true;
    let mut summary = Vec::new();
    for (name, bound, oracle) in &cases {
        let (words, bad) = disagreements(aut(name).as_ref(), *bound, oracle);
        ok &= bad == 0;
        summary.push(format!("{name} <={bound}: {bad}/{words}"));
    }
    report(4, "gallery automata match their oracles", ok, &summary.join(", "));
    assert!(ok);
}

#[test]
fn criterion_05_declared_classes() {
    let mut ok = true;
    let mut summary = Vec::new();
    for (name, max_n) in [("lex", 40), ("not-eq", 40), ("l-hier:2", 30)] {
        let spec = gallery::by_name(name).unwrap();
        let class = spec.class.unwrap();
        assert_eq!(class.max_n, max_n);
        let prof = profile(name, spec.automaton.unwrap().as_ref(), max_n, DEFAULT_STATE_CAP).unwrap();
        let check = check_bound(&prof, class.growth, class.constant);
        let direct = prof.counts.iter().all(|&(n, c)| {
            let f = match class.growth.to_string().as_str() {
                "n" => n.max(1),
                "n^2" => (n * n).max(1),
                other => panic!("unexpected class {other}"),
            };
            c as u64 <= class.constant * f as u64
        });
        ok &= check.pass && direct;
        summary.push(format!("{name} <= {}*{} (max ratio {:.2})", class.constant, class.growth, check.max_ratio));
    }
    let spec = gallery::count_eq3();
    let prof = profile("count-eq3", spec.automaton.unwrap().as_ref(), 40, DEFAULT_STATE_CAP).unwrap();
    let square = prof.counts.iter().all(|&(n, c)| c <= (2 * n + 1) * (2 * n + 1));
    ok &= square && prof.counts.len() == 41;
    summary.push(format!("count-eq3 <= (2n+1)^2: {square}"));
    report(5, "sampled state-complexity classes", ok, &summary.join(", "));
    assert!(ok);
}

/// `#t(s₁)#t(s₂)…` for every subset of `{0,1}^n`.
fn subset_rows(n: usize, t: fn(&str) -> String) -> Vec<String> {
    let members: Vec<String> = Alphabet::from_str_letters("01").words_of_length(n).collect();
    (0u32..1 << members.len())
        .map(|mask| {
            (0..members.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| format!("#{}", t(&members[i])))
                .collect()
        })
        .collect()
}

#[test]
fn criterion_06_exp_alt_profiles() {
    let spec = gallery::l_exp();
    let mut got = Vec::new();
    for n in [1, 2] {
        let rows = subset_rows(n, |s| s.chars().rev().collect());
        assert_eq!(rows.len(), 1 << (1 << n));
        let r = query_table(spec.oracle.as_ref(), n, &RowSpec::Explicit(rows), DEFAULT_BUDGET, false).unwrap();
        got.push(r.distinct_row_count);
    }
    let ok = got == [4, 16];
    report(6, "L_exp query tables of order 1 and 2", ok, &format!("{} and {} distinct profiles", got[0], got[1]));
    assert!(ok);
}

#[test]
fn criterion_07_hierarchy_profiles() {
    let spec = gallery::l_hierarchy(2).unwrap();
    let rows = subset_rows(2, str::to_string);
    assert!(rows.iter().all(|r| !r.contains(DIAMOND)));
    let r = query_table(spec.oracle.as_ref(), 4, &RowSpec::Explicit(rows), DEFAULT_BUDGET, true).unwrap();
    // the columns ◊◊u alone already separate the rows
    let columns: Vec<String> = spec.alphabet().words_up_to(4).collect();
    let profiles = r.profiles.as_ref().unwrap();
    let mut direct = true;
    for (row, bits) in profiles {
        for (i, c) in columns.iter().enumerate() {
            direct &= (bits.as_bytes()[i] == b'1') == hier_oracle(&format!("{c}{row}"), 2);
        }
    }
    let ok = r.distinct_row_count == 16 && r.rows == 16 && direct;
    report(7, "L_2 query table of order 4", ok, &format!("{} distinct profiles over {} columns", r.distinct_row_count, r.columns));
    assert!(ok);
}

fn trial_division(k: u64) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

fn lsb_value(w: &str) -> u64 {
    w.chars().rev().fold(0, |acc, c| 2 * acc + u64::from(c == '1'))
}

#[test]
fn criterion_08_primes_quotients() {
    let spec = gallery::primes();
    let lang = spec.oracle.as_ref();
    let mut ok = true;
    let mut summary = Vec::new();
    for n in 2..=8usize {
        let odd: Vec<String> = Alphabet::from_str_letters("01")
            .words_of_length(n)
            .filter(|w| w.starts_with('1'))
            .collect();
        let mut longest = 0;
        for (i, u) in odd.iter().enumerate() {
            for v in &odd[i + 1..] {
                let w = distinguish(lang, u, v, 24 - n).unwrap();
                let Some(w) = w else {
                    ok = false;
                    continue;
                };
                ok &= trial_division(lsb_value(&format!("{u}{w}"))) != trial_division(lsb_value(&format!("{v}{w}")));
                longest = longest.max(w.len());
            }
        }
        let classes = count_quotients(lang, n, longest, DEFAULT_BUDGET).unwrap().class_count_lower_bound;
        ok &= classes >= 1 << (n - 1);
        summary.push(format!("n={n}: {classes}"));
    }
    report(8, "odd words give distinct Primes quotients, classes >= 2^(n-1)", ok, &summary.join(", "));
    assert!(ok);
}

#[test]
fn criterion_09_isolated_primes() {
    let spec = gallery::primes();
    let mut ok = true;
    let mut summary = Vec::new();
    for n in 2..=4usize {
        let radius = 1u64 << n;
        let mut rows = Vec::new();
        for a in (1..radius).step_by(2) {
            let Some(k) = find_isolated_prime(a, n as u32, 10_000_000) else {
                ok = false;
                continue;
            };
            let p = a + radius * k;
            ok &= trial_division(p) && (p - radius..=p + radius).filter(|&q| trial_division(q)).count() == 1;
            let mut word = String::new();
            let mut x = k;
            while x > 0 {
                word.push(if x & 1 == 1 { '1' } else { '0' });
                x >>= 1;
            }
            rows.push(word);
        }
        let r = query_table(spec.oracle.as_ref(), n, &RowSpec::Explicit(rows.clone()), DEFAULT_BUDGET, true).unwrap();
        let columns: Vec<String> = spec.alphabet().words_up_to(n).collect();
        let singletons = r
            .profiles
            .unwrap()
            .iter()
            .filter(|(_, bits)| {
                columns
                    .iter()
                    .enumerate()
                    .filter(|(i, c)| c.len() == n && c.starts_with('1') && bits.as_bytes()[*i] == b'1')
                    .count()
                    == 1
            })
            .count();
        let expected = 1 << (n - 1);
        ok &= rows.len() == expected && r.distinct_row_count == expected && singletons == expected;
        summary.push(format!("n={n}: {} rows, {singletons} singletons", r.distinct_row_count));
    }
    report(9, "isolated primes give 2^(n-1) distinct singleton rows", ok, &summary.join(", "));
    assert!(ok);
}

#[test]
fn criterion_10_core_crosschecks() {
    let config = CrosscheckConfig::default();
    assert_eq!((config.automata, config.max_states, config.max_word_len, config.formula_pairs), (1000, 5, 6, 10_000));
    let r = crosscheck::run(&config);
    let ok = r.clean() && r.automata == 1000 && r.words_checked == 1000 * 127 && r.formula_pairs == 10_000;
    report(
        10,
        "game tree, determinization, quotient lattice and monotonicity suites",
        ok,
        &format!(
            "{} automata, {} words, {} lattice checks, {} formula pairs, {} disagreements",
            r.automata,
            r.words_checked,
            r.lattice_checks,
            r.formula_pairs,
            r.game_mismatches + r.determinization_mismatches + r.lattice_mismatches + r.monotonicity_violations
        ),
    );
    assert!(ok, "{r:?}");
}
