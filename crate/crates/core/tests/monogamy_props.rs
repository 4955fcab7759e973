use num_complex::Complex64;
use proptest::prelude::*;
use wmono_core::lin::QubitSubset;
use wmono_core::measures::{RenyiOrder, ALPHA_WINDOW_HI, ALPHA_WINDOW_LO};
use wmono_core::monogamy::{
    coeff, cren_power_monogamy_check, crenoa_lower_bound, crenoa_upper_check, ealpha_sum_upper,
    sre_lower_check, sre_upper_bound, PowerExponent,
};
use wmono_core::wclass::{sample_random, WClassParams};

/// Moves weight between the vacuum and the excitations: `b -> t b`, `|a|` refilled.
fn rescale(p: &WClassParams, t: f64) -> Option<WClassParams> {
    let b: Vec<Complex64> = p.b().iter().map(|z| z * t).collect();
    let rest = 1.0 - b.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if rest < 0.0 {
        return None;
    }
    WClassParams::new(Complex64::new(rest.sqrt(), 0.0), b).ok()
}

fn partners(mask: u32, n: usize) -> Option<QubitSubset> {
    QubitSubset::new((2..=n).filter(|q| mask >> (q - 2) & 1 == 1)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    // `b -> t b` scales every pair CREN by t², both sides of the power relation by t^{2x}.
    #[test]
    fn power_relations_are_homogeneous(seed in any::<u64>(), n in 3usize..=7, mask in 1u32..64,
                                       x in 2.0f64..10.0, t in 0.2f64..1.0) {
        let p = sample_random(seed, n).unwrap();
        let Some(j) = partners(mask, n) else { return Ok(()) };
        let Some(q) = rescale(&p, t) else { return Ok(()) };
        let x = PowerExponent::new(x).unwrap();
        let (bound1, r1) = crenoa_lower_bound(&p, &j, x).unwrap();
        let (bound2, r2) = crenoa_lower_bound(&q, &j, x).unwrap();
        prop_assume!(r1.rhs > 1e-200 && r2.rhs > 1e-200);
        let ratio = (r1.lhs / r1.rhs) / (r2.lhs / r2.rhs);
        prop_assert!((ratio - 1.0).abs() < 1e-9, "ratio {ratio}");
        // Pair CRENs scale by t², and the x-th-root bound is degree one in them.
        prop_assert!((bound2 - t * t * bound1).abs() <= 1e-12 * bound1.max(1e-300) + 1e-300);
    }

    #[test]
    fn every_relation_holds(seed in any::<u64>(), n in 3usize..=7, mask in 1u32..64,
                            x in 2.0f64..10.0, y in -5.0f64..=0.0, alpha in ALPHA_WINDOW_LO..ALPHA_WINDOW_HI) {
        let p = sample_random(seed, n).unwrap();
        let Some(j) = partners(mask, n) else { return Ok(()) };
        let o = RenyiOrder::new(alpha).unwrap();
        prop_assert!(crenoa_lower_bound(&p, &j, PowerExponent::new(x).unwrap()).unwrap().1.holds);
        if let Ok(r) = crenoa_upper_check(&p, &j, PowerExponent::new(y).unwrap()) {
            prop_assert!(r.holds, "{r}");
        }
        prop_assert!(cren_power_monogamy_check(&p, x).unwrap().holds);
        prop_assert!(sre_lower_check(&p, o).unwrap().holds);
        prop_assert!(ealpha_sum_upper(&p, o).unwrap().holds);
        let s = j.with(1).unwrap();
        let (bound, r) = sre_upper_bound(&p, &s, o).unwrap();
        prop_assert!(r.holds, "{r}");
        prop_assert!(bound >= 0.0);
    }

    #[test]
    fn coefficient_is_continuous_and_decreasing(x in -10.0f64..10.0) {
        prop_assert!(coeff(x) > coeff(x + 0.01));
        prop_assert!((coeff(x.abs().max(1e-300) * 1e-12) - coeff(0.0)).abs() < 1e-9);
    }
}

#[test]
fn exponents_in_the_gap_are_rejected() {
    for x in [0.1, 1.0, 1.999] {
        assert!(PowerExponent::new(x).is_err());
    }
    assert!(PowerExponent::new(2.0).is_ok());
    assert!(PowerExponent::new(0.0).is_ok());
}
