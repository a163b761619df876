use critlab_core::numtheory::{frobenius_power, frobenius_power_naive, is_prime, ZPoly};
use critlab_core::polyalg::selfcheck::{run_kernel_suite, DEFAULT_SEED};
use proptest::prelude::*;

#[test]
fn kernel_suite_on_default_corpus() {
    for outcome in run_kernel_suite(DEFAULT_SEED, 20).unwrap() {
        assert!(outcome.pass(), "{outcome:?}");
    }
}

proptest! {
    #[test]
    fn frobenius_oracle(coeffs in proptest::collection::vec(-9i64..10, 2..6), p in 2u64..50) {
        prop_assume!(is_prime(p));
        let f = ZPoly::from_i64(&coeffs);
        prop_assume!(f.is_ok());
        let f = f.unwrap();
        prop_assume!(f.lead() % p as i64 != 0.into());
        prop_assert_eq!(frobenius_power(&f, p).unwrap(), frobenius_power_naive(&f, p).unwrap());
    }
}
