use vnreg::lab::{make_ring, replay, verify, verify_with, VerifyOptions, CLAIM_IDS};

const RINGS: &[&str] = &["Z/30", "M_2(GF(2))", "Z/2 x Z/3", "Z/2 x Z/2 x Z/3", "Z/6 x Z/5", "M_2(GF(2)) x Z/2"];

#[test]
fn every_claim_holds_on_every_small_ring() {
    for spec in RINGS {
        let ring = make_ring(&spec.parse().unwrap()).unwrap();
        for id in CLAIM_IDS {
            let rep = verify(&ring, id).unwrap();
            println!("{spec:>18} {id:<11} universe {:>6}  counterexamples {}", rep.universe_size, rep.counterexamples.len());
            assert!(rep.universe_size > 0, "{spec} {id}: empty universe");
            assert!(rep.holds(), "{spec} {id}: {:?}", &rep.counterexamples[..rep.counterexamples.len().min(3)]);
        }
    }
}

#[test]
fn reports_are_order_and_worker_independent() {
    let ring = make_ring(&"M_2(GF(2))".parse().unwrap()).unwrap();
    for id in ["lemma3", "lemma9", "lemma12_13"] {
        let base = verify(&ring, id).unwrap();
        for opts in [
            VerifyOptions { reverse: true, workers: 0 },
            VerifyOptions { reverse: false, workers: 3 },
            VerifyOptions { reverse: true, workers: 8 },
        ] {
            assert!(base.same_outcome(&verify_with(&ring, id, opts).unwrap()), "{id} {opts:?}");
        }
    }
}

#[test]
fn m2gf2_universe_sizes() {
    let ring = make_ring(&"M_2(GF(2))".parse().unwrap()).unwrap();
    assert_eq!(verify(&ring, "lemma3").unwrap().universe_size, 256);
    assert_eq!(verify(&ring, "thm1").unwrap().universe_size, 256);
    assert_eq!(verify(&ring, "order").unwrap().universe_size, 4096);
    // Eight idempotents in M_2(GF(2)): 0, 1 and six of rank one.
    assert_eq!(verify(&ring, "cor4").unwrap().universe_size, 16 * 8);
}

#[test]
fn replay_of_holding_claims_finds_nothing() {
    let ring = make_ring(&"Z/30".parse().unwrap()).unwrap();
    for a in ring.elements() {
        for b in ring.elements() {
            assert!(!replay(&ring, "lemma3", &[a, b]).unwrap());
        }
    }
}
