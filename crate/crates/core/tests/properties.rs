use czedli_core::construction::{run_script, CellRef, ConstructionScript, CornerRef, Step};
use czedli_core::io::{decode, encode, Metadata};
use czedli_core::{find_covering_s7s, random_script, verify_diagram, Rational, Rational64, S7Mode, Side};
use proptest::prelude::*;

fn step() -> impl Strategy<Value = Step> {
    prop_oneof![
        (0usize..50, 0usize..50).prop_map(|(o, i)| Step::Fork(CellRef::Ids { o, i })),
        (0usize..50).prop_map(|k| Step::Fork(CellRef::Index(k))),
        (0usize..50).prop_map(|a| Step::Remove(CornerRef::Id(a))),
        prop_oneof![Just(Side::Left), Just(Side::Right)].prop_map(|s| Step::Remove(CornerRef::Side(s))),
    ]
}

fn script() -> impl Strategy<Value = ConstructionScript> {
    (2usize..9, 2usize..9, prop::collection::vec(step(), 0..8)).prop_map(|(rows, cols, rest)| {
        let mut steps = vec![Step::Grid { rows, cols }];
        steps.extend(rest);
        ConstructionScript::new(steps)
    })
}

fn params() -> impl Strategy<Value = (usize, usize, usize, usize, u64)> {
    (2usize..5, 2usize..5, 0usize..4, 0usize..3, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn script_text_round_trips(s in script()) {
        let text = s.to_string();
        let back: ConstructionScript = text.parse().unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn random_scripts_run_and_are_deterministic((m, n, f, r, seed) in params()) {
        let a = random_script(m, n, f, r, seed).unwrap();
        prop_assert_eq!(&a, &random_script(m, n, f, r, seed).unwrap());
        let run = run_script::<Rational>(&a.script).unwrap();
        prop_assert_eq!(run.log.len(), a.script.steps.len());
    }

    #[test]
    fn strict_hits_are_sublattice_hits((m, n, f, r, seed) in params()) {
        let script = random_script(m, n, f, r, seed).unwrap().script;
        let d = run_script::<Rational>(&script).unwrap().diagram;
        let strict = find_covering_s7s(d.lattice(), S7Mode::Strict);
        let sub = find_covering_s7s(d.lattice(), S7Mode::Sublattice);
        for s in &strict {
            prop_assert!(s.holds_in(d.lattice()));
            prop_assert!(sub.iter().any(|x| x.element_set() == s.element_set() && x.middle() == s.middle()));
        }
        for s in &sub {
            prop_assert!(s.holds_in(d.lattice()));
            prop_assert!(d.lattice().is_cover(s.t, s.i));
            prop_assert_eq!(d.lattice().upper_covers(s.t), &[s.i][..]);
        }
    }

    #[test]
    fn constructions_stay_slim_and_semimodular((m, n, f, r, seed) in params()) {
        let script = random_script(m, n, f, r, seed).unwrap().script;
        for len in 1..=script.steps.len() {
            let d = run_script::<Rational>(&ConstructionScript::new(script.steps[..len].to_vec())).unwrap().diagram;
            prop_assert!(d.lattice().check_semimodular().is_ok());
            prop_assert!(d.lattice().find_m3().is_none());
        }
    }

    #[test]
    fn encode_decode_identity((m, n, f, r, seed) in params()) {
        let script = random_script(m, n, f, r, seed).unwrap().script;
        let d = run_script::<Rational>(&script).unwrap().diagram;
        let meta = Metadata { script: Some(script.to_string()), seed: Some(seed) };
        let text = encode(&d, Some(meta.clone()));
        let (back, back_meta) = decode::<Rational>(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(back_meta, Some(meta));
    }

    #[test]
    fn verification_is_idempotent((m, n, f, r, seed) in params()) {
        let script = random_script(m, n, f, r, seed).unwrap().script;
        let d = run_script::<Rational>(&script).unwrap().diagram;
        let first = verify_diagram(&d);
        prop_assert_eq!(&first, &verify_diagram(&d));
        let sig = first.signature.unwrap();
        prop_assert_eq!(sig.edges, d.edges().len());
        prop_assert_eq!(sig.elements, d.len());
    }

    #[test]
    fn machine_rationals_agree_with_bigints((m, n, f, _r, seed) in params()) {
        let script = random_script(m, n, f, 0, seed).unwrap().script;
        let big = run_script::<Rational>(&script).unwrap().diagram;
        let small = run_script::<Rational64>(&script).unwrap().diagram;
        prop_assert_eq!(verify_diagram(&big), verify_diagram(&small));
        prop_assert_eq!(encode(&big, None), encode(&small, None));
    }
}
