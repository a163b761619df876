use critlab_core::numtheory::*;

fn z(t: &str) -> ZPoly {
    ZPoly::parse(t).unwrap()
}

#[test]
fn frobenius_matches_naive_oracle() {
    let polys = ["x^2+1", "x^3-x^2-4*x-1", "x^4-x^2+1", "2*x^3+x+5", "x^4+3*x^3-7", "x-4"];
    for t in polys {
        let f = z(t);
        for p in primes_below(50) {
            if f.lead() % p as i64 == 0.into() {
                continue;
            }
            assert_eq!(
                frobenius_power(&f, p).unwrap(),
                frobenius_power_naive(&f, p).unwrap(),
                "{t} at {p}"
            );
        }
    }
}

#[test]
fn gaussian_integers_split_iff_one_mod_four() {
    let f = z("x^2+1");
    for p in primes_below(1000).into_iter().filter(|&p| p > 2) {
        assert_eq!(is_totally_split(&f, p).unwrap(), p % 4 == 1, "p = {p}");
    }
}

#[test]
fn compositum_agrees_with_factorwise_splitting() {
    for name in [
        "Qi_cubic13",
        "Qsqrt-3_zeta7plus",
        "Qi_sqrt3_zeta7plus",
        "Qi_sqrt7_beta43",
        "Qsqrt-5_zeta9plus",
    ] {
        let spec = FieldSpec::builtin(name).unwrap();
        let k = compositum_poly(&spec.polys[0], &spec.polys[1]).unwrap();
        assert_eq!(k.degree(), spec.polys[0].degree() * spec.polys[1].degree());
        for p in primes_below(200) {
            let rep = is_totally_split_set(&spec, p).unwrap();
            let ramified = rep.verdicts.iter().any(|v| v.verdict == Verdict::Ramified);
            if ramified || degree_pattern(&k, p).unwrap().is_none() {
                continue;
            }
            assert_eq!(is_totally_split(&k, p).unwrap(), rep.totally_split, "{name} at {p}");
        }
    }
}

#[test]
fn cubic_densities_approach_one_third() {
    for t in [ZETA7_PLUS, ZETA9_PLUS, CUBIC13, BETA43] {
        let f = z(t);
        let primes: Vec<u64> = primes_below(10_000)
            .into_iter()
            .filter(|&p| degree_pattern(&f, p).unwrap().is_some())
            .collect();
        let split = primes.iter().filter(|&&p| is_totally_split(&f, p).unwrap()).count();
        let density = split as f64 / primes.len() as f64;
        assert!((density - 1.0 / 3.0).abs() < 0.05, "{t}: {density}");
    }
}

#[test]
fn cubics_are_gaussian_periods() {
    for (t, q) in [(ZETA7_PLUS, 7), (CUBIC13, 13), (BETA43, 43), (ZETA9_PLUS, 19)] {
        let sign = gaussian_period_root_sign(&z(t), q);
        if q == 19 {
            assert_eq!(sign, None);
        } else {
            assert!(sign.is_some(), "{t}");
        }
    }
}

#[test]
fn example_congruence_classes() {
    let cases: [(&str, u64, &[u64], &[u64]); 3] = [
        ("Qi_cubic13", 52, &[1, 5, 21, 25], &[5, 53, 73]),
        ("Qsqrt-3_zeta7plus", 21, &[1, 13], &[13, 43, 97]),
        ("Qi_sqrt3_zeta7plus", 84, &[1, 13], &[13, 97]),
    ];
    for (name, m, residues, witnesses) in cases {
        let spec = FieldSpec::builtin(name).unwrap();
        let rep = congruence_classes(&spec, m, 3).unwrap();
        assert_eq!(rep.residues, residues, "{name}");
        assert!(rep.subgroup && rep.exact);
        assert_eq!(rep.index, Some(rep.units / residues.len()));
        for w in check_witnesses(&spec, &rep, witnesses).unwrap() {
            assert!(w.is_prime && w.in_classes && w.totally_split == Some(true), "{w:?}");
        }
    }
}

#[test]
fn non_prime_sample_is_flagged() {
    let spec = FieldSpec::builtin("Qi_sqrt3_zeta7plus").unwrap();
    let rep = congruence_classes(&spec, 84, 3).unwrap();
    let w = &check_witnesses(&spec, &rep, &[169]).unwrap()[0];
    assert!(!w.is_prime && w.in_classes && w.totally_split.is_none());
}

#[test]
fn forty_three_splits_relatively() {
    // 43 is inert in Q(i) and in Q(√7), but the primes above it in Q(√7)
    // split in Q(i,√7)
    let sqrt7 = vec![z("x^2-7")];
    let k = vec![z(QI_SQRT7)];
    assert!(!is_totally_split(&k[0], 43).unwrap());
    assert!(splits_completely_over(&sqrt7, &k, 43, 28).unwrap());
    // 3 splits in Q(√7) and is inert in Q(i)
    assert!(!splits_completely_over(&sqrt7, &k, 3, 28).unwrap());
    // 5 is inert in Q(√7) with 5² ≡ 25 in the split subgroup
    assert!(splits_completely_over(&sqrt7, &k, 5, 28).unwrap());
}

#[test]
fn custom_specs_are_heuristic() {
    let spec = FieldSpec::from_arg("x^2+1;x^3-x^2-4*x-1").unwrap();
    let rep = congruence_classes(&spec, 52, 3).unwrap();
    assert_eq!(rep.residues, vec![1, 5, 21, 25]);
    assert!(!rep.exact);
    assert!(FieldSpec::from_arg("builtin:nope").is_err());
    assert!(FieldSpec::from_arg("x^2-1").is_err());
}
