use minoreq::generate::{perturb, pme_partner, random_planted, random_reducible};
use minoreq::{brute_force_pme, cycle_weight_oracle, pme_check, verify_certificate, FieldSpec, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> [FieldSpec; 2] {
    [FieldSpec::Rational, FieldSpec::prime(101).unwrap()]
}

#[test]
fn planted_pairs_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for f in fields() {
        for round in 0..40 {
            let n = rng.gen_range(4..=7);
            let a = random_planted(&f, n, &mut rng);
            let (mut b, _) = pme_partner(&a, 3, &mut rng).unwrap();
            if round % 2 == 1 {
                b = perturb(&b, &mut rng);
            }
            let truth = brute_force_pme(&a, &b).unwrap().equivalent;
            let verdict = pme_check(&a, &b).unwrap();
            assert_eq!(verdict.is_equivalent(), truth, "round {round}\nA=\n{a}\nB=\n{b}");
            if let Verdict::Equivalent(c) = verdict {
                assert!(verify_certificate(&a, &b, &c).unwrap());
            }
        }
    }
}

#[test]
fn reducible_pairs_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for f in fields() {
        for round in 0..20 {
            let a = random_reducible(&f, &[1, 4, 2], &mut rng);
            let b = if round % 3 == 0 {
                perturb(&a.transpose(), &mut rng)
            } else {
                a.transpose()
            };
            let truth = brute_force_pme(&a, &b).unwrap().equivalent;
            let verdict = pme_check(&a, &b).unwrap();
            assert_eq!(verdict.is_equivalent(), truth);
            if let Verdict::Equivalent(c) = verdict {
                assert!(verify_certificate(&a, &b, &c).unwrap());
            }
        }
    }
}

#[test]
fn gf2_inputs_are_lifted() {
    let f = FieldSpec::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let n = rng.gen_range(2..=6);
        let a = random_planted(&f, n, &mut rng);
        let b = if rng.gen_bool(0.5) { pme_partner(&a, 2, &mut rng).unwrap().0 } else { perturb(&a, &mut rng) };
        let truth = brute_force_pme(&a, &b).unwrap().equivalent;
        assert_eq!(cycle_weight_oracle(&a, &b).unwrap(), truth);
        assert_eq!(pme_check(&a, &b).unwrap().is_equivalent(), truth, "A=\n{a}\nB=\n{b}");
    }
}

#[test]
fn certificates_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = FieldSpec::prime(101).unwrap();
    let a = random_planted(&f, 6, &mut rng);
    let (b, _) = pme_partner(&a, 3, &mut rng).unwrap();
    assert_eq!(pme_check(&a, &b).unwrap(), pme_check(&a, &b).unwrap());
}
