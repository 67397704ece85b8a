use cyclelemma::freegroup::{
    cyclic_reduce, good_rotations, is_cyclically_reduced, linear_reduce, standard_decomposition,
};
use cyclelemma::pairing::{
    admissible_half_pairing, from_dots, is_w_admissible, standard_cyclic_reduction, to_dots, Dot,
    DotDiagram,
};
use cyclelemma::Word;
use proptest::prelude::*;

fn word_strategy() -> impl Strategy<Value = Word> {
    (1usize..=4).prop_flat_map(|gens| {
        let g = gens as i32;
        prop::collection::vec(prop_oneof![1..=g, -g..=-1], 0..40)
            .prop_map(move |v| Word::from_signed(gens, &v).unwrap())
    })
}

proptest! {
    #[test]
    fn inverse_is_an_involution(w in word_strategy()) {
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert!(linear_reduce(&w.concat(&w.inverse())).is_empty());
    }

    #[test]
    fn reduction_is_idempotent(w in word_strategy()) {
        let r = linear_reduce(&w);
        prop_assert_eq!(linear_reduce(&r), r.clone());
        prop_assert!(is_cyclically_reduced(&cyclic_reduce(&w)));
    }

    #[test]
    fn cycle_lemma(w in word_strategy()) {
        prop_assume!(!w.is_empty());
        let k = cyclic_reduce(&w).len();
        prop_assert_eq!(good_rotations(&w).unwrap().len(), k);
        for r in 0..w.len() {
            prop_assert_eq!(cyclic_reduce(&w.rotate(r)).len(), k);
        }
    }

    #[test]
    fn standard_reduction_is_a_cyclic_reduction(w in word_strategy()) {
        let hat = standard_cyclic_reduction(&w);
        prop_assert!(hat.is_rotation_of(&cyclic_reduce(&w)));
        if let Ok(p) = admissible_half_pairing(&w) {
            prop_assert!(is_w_admissible(&w, &p).unwrap());
            prop_assert_eq!(p.through_strings(), hat.len());
        }
    }

    #[test]
    fn decomposition_is_valid(w in word_strategy()) {
        prop_assert!(standard_decomposition(&w).is_valid_for(&w));
    }

    #[test]
    fn dot_diagrams_round_trip(bits in prop::collection::vec(any::<bool>(), 1..30)) {
        let colors: Vec<Dot> = bits.iter().map(|&b| if b { Dot::Black } else { Dot::White }).collect();
        let d = DotDiagram::new(colors);
        prop_assume!(d.blacks() < d.whites());
        let p = from_dots(&d).unwrap();
        prop_assert_eq!(p.through_strings(), d.whites() - d.blacks());
        prop_assert_eq!(to_dots(&p), d);
    }
}
