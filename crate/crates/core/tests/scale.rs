//! Scale probe at the largest intended configuration; ignored by default,
//! run with `cargo test -p udist-core --test scale -- --ignored`.

use udist_core::anderson::{build_l, verify_acyclicity};
use udist_core::distribution::OrderIdeal;
use udist_core::galois::PrimeConfig;

#[test]
#[ignore]
fn acyclicity_at_the_four_prime_level() {
    let cfg = PrimeConfig::new(&[3, 5, 7, 11], 2).unwrap();
    let l = build_l(&cfg, &OrderIdeal::full(4)).unwrap();
    let sizes: Vec<usize> = l.symbols.iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![1, 26, 236, 886, 1155]);
    let rep = verify_acyclicity(&l).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.expected_rank, 480);
}
