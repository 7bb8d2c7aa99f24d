//! Randomized invariant tests: contracts that must hold across the whole
//! input space, exercised with proptest on top of the deterministic ranges
//! the library promises outright.

use std::io::Cursor;
use std::sync::{Mutex, OnceLock};

use num::{One, Signed, Zero};
use proptest::prelude::*;

use bokit::certify::{replay_step, Family};
use bokit::darcais::{bo_poly, laguerre_lower_bound, DarcaisTable};
use bokit::exactnum::{ln_enclosure, sign_of, Expr, Sign};
use bokit::partitions::{
    binomial_lower_bound, partition_numbers, PartitionKind, PartitionTable, SigmaTable,
};
use bokit::roots::{cauchy_root_bound, largest_real_root, positive_beyond, sturm_count};
use bokit::{rat, ratio, Int, Rat};

fn p_table() -> &'static [Int] {
    static TABLE: OnceLock<Vec<Int>> = OnceLock::new();
    TABLE.get_or_init(|| partition_numbers(2000))
}

fn polys() -> &'static Mutex<DarcaisTable> {
    static TABLE: OnceLock<Mutex<DarcaisTable>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(DarcaisTable::with_capacity(60)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// Logarithm enclosures have the promised width, and the enclosed value
    /// really is ln q: the adaptive sign oracle confirms lo < ln q < hi.
    #[test]
    fn ln_enclosures_are_tight_and_correct(n in 2i64..1_000_000, d in 1i64..=1_000, bits in 8u32..=48) {
        let q = ratio(n, d);
        prop_assume!(q != rat(1));
        let w = ln_enclosure(&q, bits).unwrap();
        prop_assert!(w.width() <= ratio(1, 1i64 << bits));
        let above_lo = Expr::ln(q.clone()) - Expr::constant(w.lo().clone());
        let below_hi = Expr::constant(w.hi().clone()) - Expr::ln(q);
        prop_assert_eq!(sign_of(&above_lo).unwrap(), Sign::Positive);
        prop_assert_eq!(sign_of(&below_hi).unwrap(), Sign::Positive);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// ln is strictly monotone, decidable through enclosures alone.
    #[test]
    fn ln_is_strictly_monotone(n1 in 1i64..1_000_000, n2 in 1i64..1_000_000, d in 1i64..=1_000) {
        prop_assume!(n1 != n2);
        let (lo, hi) = if n1 < n2 { (n1, n2) } else { (n2, n1) };
        let gap = Expr::ln(ratio(hi, d)) - Expr::ln(ratio(lo, d));
        prop_assert_eq!(sign_of(&gap).unwrap(), Sign::Positive);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// On pure-rational expressions the sign oracle must agree with exact
    /// evaluation — no enclosure slack may ever flip a sign.
    #[test]
    fn sign_oracle_matches_exact_rational_arithmetic(
        a in -50i64..=50, b in -50i64..=50, c in -50i64..=50,
        d in 1i64..=9, e in 1i64..=9,
    ) {
        let exact = (ratio(a, d) - ratio(b, e)) * ratio(c, 1) + ratio(b, d);
        let expr = (Expr::constant(ratio(a, d)) - Expr::constant(ratio(b, e)))
            * Expr::constant(ratio(c, 1))
            + Expr::constant(ratio(b, d));
        let want = if exact.is_zero() {
            Sign::Zero
        } else if exact.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        };
        prop_assert_eq!(sign_of(&expr).unwrap(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The binomial sum is a true lower bound for p(n) everywhere in the
    /// range the certificates draw on.
    #[test]
    fn binomial_sum_stays_below_the_partition_number(n in 1usize..=2_000, m in 1usize..=8) {
        let bound = binomial_lower_bound(n, m);
        prop_assert!(bound <= Rat::from_integer(p_table()[n].clone()), "n = {n}, m = {m}");
    }
}

#[test]
fn partition_numbers_never_double_after_the_first_step() {
    let p = p_table();
    for b in 2..=500usize {
        assert!(p[b + 1] < &p[b] * 2u32, "b = {b}");
    }
}

#[test]
fn divisor_sums_obey_the_strict_logarithmic_cap() {
    let sigmas = SigmaTable::up_to(10_000);
    for n in 2..=10_000usize {
        let s = Rat::from_integer(sigmas.get(n).expect("in range").clone());
        let cap = Expr::constant(rat(n as i64)) * (Expr::constant(rat(1)) + Expr::ln(rat(n as i64)))
            - Expr::constant(s);
        assert_eq!(sign_of(&cap).unwrap(), Sign::Positive, "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Shape of the polynomial family: degree n, leading coefficient 1/n!,
    /// no constant term, nothing negative, and value p(n) at 1.
    #[test]
    fn polynomial_family_shape(n in 1usize..=120) {
        let poly = bokit::darcais::darcais_poly(n);
        prop_assert_eq!(poly.degree(), Some(n));
        let mut factorial = Int::one();
        for k in 2..=n {
            factorial *= Int::from(k);
        }
        prop_assert_eq!(poly.leading().unwrap().clone(), Rat::new(Int::one(), factorial));
        prop_assert!(poly.coeff(0).is_zero());
        prop_assert!(poly.coeffs().iter().all(|c| !c.is_negative()));
        prop_assert_eq!(poly.eval(&rat(1)), Rat::from_integer(p_table()[n].clone()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The truncated expansion is a lower bound, monotone in the number of
    /// terms kept.
    #[test]
    fn truncated_expansion_bounds_from_below(n in 1usize..=60, m in 1usize..=60, num in 0i64..=25, den in 1i64..=5) {
        prop_assume!(m <= n);
        let x = ratio(num.min(5 * den), den);
        let shorter = laguerre_lower_bound(n, m, &x).unwrap();
        let longer = laguerre_lower_bound(n, m + 1, &x).unwrap();
        prop_assert!(shorter <= longer, "bound must grow with m");
        let value = polys().lock().unwrap().poly(n).eval(&x);
        prop_assert!(longer <= value, "n = {n}, m = {m}, x = {x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The product defect is symmetric in its two indices.
    #[test]
    fn product_defect_is_symmetric(a in 1usize..=12, b in 1usize..=12) {
        prop_assert_eq!(bo_poly(a, b), bo_poly(b, a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Sturm counts are additive across any split point that is not a root.
    #[test]
    fn sturm_counts_are_additive(a in 1usize..=8, b in 1usize..=8, num in -40i64..=40, den in 1i64..=8) {
        let p = bo_poly(a, b);
        let bound = cauchy_root_bound(&p).unwrap();
        let lo = -&bound - rat(1);
        let hi = &bound + rat(1);
        let mid = ratio(num, den);
        prop_assume!(lo < mid && mid < hi);
        prop_assume!(!p.eval(&mid).is_zero());
        let whole = sturm_count(&p, &lo, &hi).unwrap();
        let left = sturm_count(&p, &lo, &mid).unwrap();
        let right = sturm_count(&p, &mid, &hi).unwrap();
        prop_assert_eq!(whole, left + right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Everything strictly above the isolated largest zero is positive —
    /// certified by the sign-variation argument and spot-checked by exact
    /// evaluation.
    #[test]
    fn defect_is_positive_beyond_its_largest_zero(
        a in 1usize..=8, b in 1usize..=8, num in 1i64..=20, den in 1i64..=10,
    ) {
        let p = bo_poly(a, b);
        let root = largest_real_root(&p, &ratio(1, 100)).unwrap().expect("defects have real zeros");
        prop_assert!(positive_beyond(&p, root.hi()).unwrap());
        let probe = root.hi() + ratio(num, den);
        prop_assert!(p.eval(&probe).is_positive(), "({a}, {b}) at {probe}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Value tables survive the JSON Lines round trip bit for bit.
    #[test]
    fn value_tables_round_trip(k in 0u32..=5, n_max in 0usize..=60) {
        let table = if k == 0 {
            PartitionTable::plain(n_max)
        } else {
            PartitionTable::colored(k, n_max).unwrap()
        };
        let mut buf = Vec::new();
        table.write_jsonl(&mut buf).unwrap();
        let back = PartitionTable::read_jsonl(Cursor::new(buf)).unwrap();
        prop_assert_eq!(back.kind(), table.kind());
        prop_assert_eq!(back.values(), table.values());
        let expected_kind = if k == 0 { PartitionKind::Plain } else { PartitionKind::Colored(k) };
        prop_assert_eq!(table.kind(), expected_kind);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// The polynomial cache persists to disk and loads back
    /// coefficient-identical polynomials.
    #[test]
    fn polynomial_cache_round_trips_through_a_file(n_max in 0usize..=30) {
        let table = DarcaisTable::with_capacity(n_max);
        let mut tmp = tempfile::NamedTempFile::new().unwrap();
        table.write_jsonl(tmp.as_file_mut()).unwrap();
        let back = DarcaisTable::read_jsonl(std::io::BufReader::new(tmp.reopen().unwrap())).unwrap();
        prop_assert_eq!(back.max_n(), n_max);
        for n in 0..=n_max {
            prop_assert_eq!(back.cached(n).unwrap(), table.cached(n).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The step decomposition is an algebraic identity: at every admissible
    /// pair, for every family, the ledger terms sum exactly to the product
    /// gap — whether or not the step's bounds hold down there.
    #[test]
    fn step_decomposition_is_an_exact_identity(
        which in 0usize..4, b_raw in 0usize..=30, a_extra in 0usize..=60,
    ) {
        let family = Family::ALL[which];
        let params = family.params();
        let b = params.a_min + b_raw;
        let a = (params.n_min.saturating_sub(b).max(params.a_min) + 1 + a_extra).max(b);
        prop_assume!(params.step_admissible(a, b));
        let ledger = replay_step(family, a, b).unwrap();
        prop_assert!(ledger.identity_ok);
        // The decomposition tracks the gap scaled by the evaluation point:
        // x·(L + R₁ + R₂ + R₃) = P_a(x)P_b(x) − P_{a+b}(x).
        prop_assert_eq!(&ledger.decomposition_sum * &params.x, ledger.gap.clone());
        // Purity: replaying the same step reproduces the same ledger values.
        let again = replay_step(family, a, b).unwrap();
        prop_assert_eq!(&again.decomposition_sum, &ledger.decomposition_sum);
        prop_assert_eq!(again.all_verdicts_hold(), ledger.all_verdicts_hold());
    }
}
