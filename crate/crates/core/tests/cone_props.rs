//! Property tests for the cone kernel: duality involution, membership
//! consistency, face monotonicity and bit-identical determinism.

use manin_core::cone::{PairingForm, PolyCone};
use manin_core::rat::{rat, RatVec};
use num_traits::Signed;
use proptest::prelude::*;

/// Generators with positive first coordinate span a pointed cone; the rest
/// of the entries are unconstrained.
fn gen_vectors(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    let vector = (1i64..=3, prop::collection::vec(-3i64..=3, dim - 1))
        .prop_map(|(head, tail)| std::iter::once(head).chain(tail).collect::<Vec<_>>());
    prop::collection::vec(vector, count)
}

fn build(dim: usize, raw: &[Vec<i64>]) -> Option<PolyCone> {
    let gens: Vec<RatVec> = raw.iter().map(|v| RatVec::from_ints(v)).collect();
    PolyCone::from_generators(&gens, PairingForm::identity(dim)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dual_dual_is_identity((dim, raw) in (2usize..=6)
        .prop_flat_map(|d| (Just(d), gen_vectors(d, 12))))
    {
        let cone = build(dim, &raw).unwrap();
        prop_assume!(cone.is_full_dimensional());
        let back = cone.dual().unwrap().dual().unwrap();
        prop_assert_eq!(&back, &cone);
    }

    #[test]
    fn members_and_facets_are_consistent((dim, raw) in (2usize..=5)
        .prop_flat_map(|d| (Just(d), gen_vectors(d, 8))))
    {
        let cone = build(dim, &raw).unwrap();
        for g in cone.generators() {
            prop_assert!(cone.contains(g).unwrap());
        }
        // original (possibly redundant) inputs are members too
        for v in &raw {
            prop_assert!(cone.contains(&RatVec::from_ints(v)).unwrap());
        }
        if cone.is_full_dimensional() {
            let dual = cone.dual().unwrap();
            for f in cone.facets() {
                prop_assert!(dual.contains(f).unwrap());
            }
        }
    }

    #[test]
    fn face_codim_zero_iff_interior(
        (dim, raw, coeffs) in (2usize..=5).prop_flat_map(|d| {
            (Just(d), gen_vectors(d, 6), prop::collection::vec(0i64..=3, 6))
        }))
    {
        let cone = build(dim, &raw).unwrap();
        let mut x = RatVec::zero(dim);
        for (c, g) in coeffs.iter().zip(raw.iter()) {
            x = x.add_scaled(&rat(*c), &RatVec::from_ints(g));
        }
        let (_, codim) = cone.minimal_supported_face(&x).unwrap();
        let interior = cone
            .facets()
            .iter()
            .all(|f| cone.pairing().eval(f, &x).is_positive());
        prop_assert_eq!(codim == 0, interior);
    }

    #[test]
    fn construction_is_order_independent((dim, raw, seed) in (2usize..=5)
        .prop_flat_map(|d| (Just(d), gen_vectors(d, 9), any::<u64>())))
    {
        let cone = build(dim, &raw).unwrap();
        let mut shuffled = raw.clone();
        // deterministic Fisher-Yates from the seed
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            shuffled.swap(i, j);
        }
        let again = build(dim, &shuffled).unwrap();
        prop_assert_eq!(&again, &cone);
        prop_assert_eq!(again.generators(), cone.generators());
        prop_assert_eq!(again.facets(), cone.facets());
    }
}
