use gadgetopt::gen::random_circuit;
use gadgetopt::pauli::{Pauli, PauliGadget, PauliString};
use gadgetopt::sim::circuits_equivalent;
use gadgetopt::synth::{
    detect_gadgets, resynthesize, synth_chain, synth_ladder, ChainStrategy, SegmentKind,
};
use gadgetopt::Circuit;
use proptest::prelude::*;

fn gadget(width: usize) -> impl Strategy<Value = PauliGadget> {
    (
        prop::collection::vec(prop::sample::select(Pauli::ALL.to_vec()), width),
        0.1f64..3.0,
    )
        .prop_filter_map("weight >= 2", |(v, a)| {
            let s = PauliString::new(v).unwrap();
            (s.weight() >= 2).then(|| PauliGadget::new(a, s))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ladder_chains_are_recovered(gs in prop::collection::vec(gadget(5), 1..5)) {
        let mut c = Circuit::new(5);
        for g in &gs {
            c.append(&synth_ladder(g).unwrap()).unwrap();
        }
        let found: Vec<PauliGadget> = detect_gadgets(&c)
            .into_iter()
            .filter_map(|s| match s.kind {
                SegmentKind::Gadget(g) => Some(g),
                SegmentKind::Raw(_) => None,
            })
            .collect();
        prop_assert_eq!(found.len(), gs.len());
        for (f, g) in found.iter().zip(&gs) {
            prop_assert_eq!(&f.string, &g.string);
            prop_assert!((f.angle - g.angle).abs() < 1e-12);
        }
    }

    #[test]
    fn aligned_chain_matches_naive(gs in prop::collection::vec(gadget(4), 1..5)) {
        let a = synth_chain(&gs, ChainStrategy::Aligned).unwrap();
        let b = synth_chain(&gs, ChainStrategy::Naive).unwrap();
        prop_assert!(circuits_equivalent(&a, &b, 1e-9).unwrap());
        prop_assert_eq!(a.two_qubit_count(), b.two_qubit_count());
    }

    #[test]
    fn resynthesis_of_noise_is_exact(seed in 0u64..1_000_000, width in 2usize..6, len in 0usize..60) {
        let c = random_circuit(width, len, seed);
        let segs = detect_gadgets(&c);
        let covered: usize = segs.iter().map(|s| s.source.len()).sum();
        prop_assert!(covered >= segs.len());
        let out = resynthesize(width, &segs, ChainStrategy::Aligned);
        prop_assert!(circuits_equivalent(&c, &out, 1e-9).unwrap());
        prop_assert_eq!(out.two_qubit_count(), c.two_qubit_count());
    }
}
