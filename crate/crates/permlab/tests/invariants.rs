//! Cross-module invariants at desk scale, with seeded sampling where the
//! check is statistical.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permlab::genperm::{
    periodic_family, permutation_from_spec, sturmian_permutation, word_permutation,
    DEFAULT_LOOKAHEAD,
};
use permlab::numerics::{ExactReal, QuadraticSurd};
use permlab::patterns::pattern_of;
use permlab::words::InfiniteWord;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed)
}

fn random_exact(rng: &mut ChaCha8Rng, d: u64) -> ExactReal {
    if rng.gen_bool(0.4) {
        ExactReal::rational(rng.gen_range(-500..=500), rng.gen_range(1..=40)).unwrap()
    } else {
        ExactReal::surd(
            rng.gen_range(-200..=200),
            rng.gen_range(-60..=60),
            rng.gen_range(1..=25),
            d,
        )
        .unwrap()
    }
}

#[test]
fn compare_is_a_total_order_on_samples() {
    let mut rng = rng();
    let values: Vec<ExactReal> = (0..100).map(|_| random_exact(&mut rng, 2)).collect();
    for x in &values {
        for y in &values {
            let xy = x.try_cmp(y).unwrap();
            let yx = y.try_cmp(x).unwrap();
            assert_eq!(xy, yx.reverse(), "antisymmetry for {x} vs {y}");
            for z in &values {
                let yz = y.try_cmp(z).unwrap();
                if xy == yz && xy != Ordering::Equal {
                    assert_eq!(x.try_cmp(z).unwrap(), xy, "transitivity at {x},{y},{z}");
                }
            }
        }
    }
}

#[test]
fn compare_agrees_with_floats_outside_the_noise_band() {
    let mut rng = rng();
    let eps = (2.0f64).powi(-40);
    for _ in 0..2000 {
        let x = random_exact(&mut rng, 5);
        let y = random_exact(&mut rng, 5);
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > eps {
            let expected = if fx < fy { Ordering::Less } else { Ordering::Greater };
            assert_eq!(x.try_cmp(&y).unwrap(), expected, "{x} vs {y}");
        }
    }
}

#[test]
fn floor_brackets_the_value() {
    let mut rng = rng();
    for _ in 0..1000 {
        let s = QuadraticSurd::new(
            BigInt::from(rng.gen_range(-10_000i64..=10_000)),
            BigInt::from(rng.gen_range(-3_000i64..=3_000)),
            BigInt::from(rng.gen_range(1i64..=400)),
            [2, 3, 5, 7, 11][rng.gen_range(0..5)],
        )
        .unwrap();
        let f = s.floor();
        let v = ExactReal::from_surd(s);
        let lo = ExactReal::from_rational(BigRational::from_integer(f.clone()));
        let hi = ExactReal::from_rational(BigRational::from_integer(&f + 1));
        assert_ne!(lo.try_cmp(&v).unwrap(), Ordering::Greater, "floor above value for {v}");
        assert_eq!(hi.try_cmp(&v).unwrap(), Ordering::Greater, "floor+1 not above {v}");
    }
}

#[test]
fn gamma_agrees_with_the_representative() {
    let specs = ["sturmian:w=fib,x=1,y=sqrt2", "periodic:n=3", "tmmorphic", "monotone"];
    let mut rng = rng();
    for spec in specs {
        let p = permutation_from_spec(spec).unwrap();
        for _ in 0..300 {
            let i = rng.gen_range(0..400usize);
            let mut j = rng.gen_range(0..400usize);
            if i == j {
                j = i + 1;
            }
            let by_values = p
                .representative(i)
                .unwrap()
                .try_cmp(&p.representative(j).unwrap())
                .unwrap();
            let expected = match by_values {
                Ordering::Less => permlab::patterns::Relation::Less,
                Ordering::Greater => permlab::patterns::Relation::Greater,
                Ordering::Equal => panic!("{spec}: representative ties at ({i},{j})"),
            };
            assert_eq!(p.gamma(i, j).unwrap(), expected, "{spec} at ({i},{j})");
        }
    }
}

#[test]
fn gamma_antisymmetry_across_generators() {
    let generators = [
        "wordperm:tm",
        "wordperm:pd",
        "sturmian:w=fib,x=1,y=sqrt2",
        "periodic:n=3",
        "tmmorphic",
        "monotone",
    ];
    let mut rng = rng();
    for spec in generators {
        let p = permutation_from_spec(spec).unwrap();
        for _ in 0..500 {
            let i = rng.gen_range(0..600usize);
            let mut j = rng.gen_range(0..600usize);
            if i == j {
                j = i + 1;
            }
            let fwd = p.gamma(i, j).unwrap();
            let back = p.gamma(j, i).unwrap();
            assert_eq!(fwd, back.flip(), "{spec}: gamma({i},{j}) vs gamma({j},{i})");
        }
    }
}

/// The word permutation must order suffixes exactly as their q-ary values:
/// compare 64-digit truncations of Σ w_{i+k}·2^{-k-1} whenever they
/// differ.
#[test]
fn tm_word_permutation_matches_qary_values() {
    let w = InfiniteWord::thue_morse();
    let p = word_permutation(&w, DEFAULT_LOOKAHEAD);
    let truncate = |prefix: &[u8], i: usize, digits: usize| -> BigRational {
        let mut num = BigInt::from(0);
        for k in 0..digits {
            num = (num << 1) + prefix[i + k];
        }
        BigRational::new(num, BigInt::from(1) << digits)
    };
    let (values64, values512) = {
        let prefix = w.prefix(256 + 512);
        let v64: Vec<BigRational> = (0..256).map(|i| truncate(&prefix, i, 64)).collect();
        let v512: Vec<BigRational> = (0..256).map(|i| truncate(&prefix, i, 512)).collect();
        (v64, v512)
        // guard dropped before gamma queries extend the same word
    };
    for j in 1..256usize {
        for i in 0..j {
            // squares in the word let 64-digit truncations tie; the word
            // is overlap-free, so 512 digits always separate these pairs
            let (vi, vj) = if values64[i] != values64[j] {
                (&values64[i], &values64[j])
            } else {
                (&values512[i], &values512[j])
            };
            assert_ne!(vi, vj, "512-digit truncations tie at ({i},{j})");
            let expected = if vi < vj {
                permlab::patterns::Relation::Less
            } else {
                permlab::patterns::Relation::Greater
            };
            assert_eq!(p.gamma(i, j).unwrap(), expected, "at ({i},{j})");
        }
    }
}

/// Rationally independent steps make all Sturmian representative values
/// distinct; checked exhaustively below 1000 by sorting.
#[test]
fn sturmian_values_pairwise_distinct() {
    let p = sturmian_permutation(
        &InfiniteWord::fibonacci(),
        ExactReal::integer(1),
        ExactReal::sqrt(2).unwrap(),
        ExactReal::zero(),
    )
    .unwrap();
    let mut values: Vec<ExactReal> = (0..1000).map(|i| p.representative(i).unwrap()).collect();
    values.sort_by(|a, b| a.try_cmp(b).unwrap());
    for pair in values.windows(2) {
        assert_eq!(pair[0].try_cmp(&pair[1]).unwrap(), Ordering::Less);
    }
}

#[test]
fn periodic_family_factors_repeat_with_period_two() {
    for n in 2u64..=10 {
        let p = periodic_family(n).unwrap();
        for len in 1usize..=8 {
            for s in (0..=100usize).step_by(7) {
                assert_eq!(
                    p.factor(s, len).unwrap(),
                    p.factor(s + 2, len).unwrap(),
                    "family {n}, s={s}, len={len}"
                );
            }
        }
    }
}

/// The two sequences of the opening example, a_n = (−1/2)^n and
/// b_i = 1000 + (−1)^i/(i+1), realize the same permutation, and that
/// permutation obeys the advertised inequality family.
#[test]
fn alternating_example_sequences_agree() {
    let n = 64usize;
    let a: Vec<ExactReal> = (0..n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            ExactReal::from_rational(BigRational::new(
                BigInt::from(sign),
                BigInt::from(1) << i,
            ))
        })
        .collect();
    let b: Vec<ExactReal> = (0..n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1i64 } else { -1 };
            ExactReal::integer(1000)
                .try_add(&ExactReal::rational(sign, i as i64 + 1).unwrap())
                .unwrap()
        })
        .collect();
    let pa = pattern_of(&a).unwrap();
    assert_eq!(pa, pattern_of(&b).unwrap());
    // evens above odds, evens decreasing, odds increasing
    let r = pa.ranks();
    for i in (0..n).step_by(2) {
        for j in (1..n).step_by(2) {
            assert!(r[i] > r[j], "alpha_{i} should exceed alpha_{j}");
        }
    }
    for i in (0..n - 2).step_by(2) {
        assert!(r[i] > r[i + 2]);
    }
    for j in (1..n - 2).step_by(2) {
        assert!(r[j] < r[j + 2]);
    }
}
