use std::ops::Bound;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use chowlab::boolean::{is_normal, phi, psi};
use chowlab::ground::{GroundSet, InversionSequence, Permutation, Subset};
use chowlab::oracle::{ChowRing, FlatsLattice, XPolynomial};
use chowlab::poly::{gamma_vector, real_root_count, IntPolynomial};
use chowlab::rewrite::{g_map, in_dset, RewriteResult};

fn inversion_sequence(max_n: usize) -> impl Strategy<Value = InversionSequence> {
    (1..=max_n)
        .prop_flat_map(|n| (0..n).map(|i| 0..=i as u8).collect::<Vec<_>>())
        .prop_map(|e| InversionSequence::new(e).unwrap())
}

fn permutation(max_n: u32) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<u32>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=7).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

proptest! {
    #[test]
    fn sturm_counts_are_additive(
        roots in prop::collection::vec(-6i64..=6, 1..7),
        extra in 0i64..3,
        cut in rational(),
    ) {
        // (t^2 + extra) adds a complex pair when extra > 0
        let quadratic = IntPolynomial::from_i64(&[extra, 0, 1]);
        let p = &IntPolynomial::from_linear_factors(&roots) * &quadratic;
        let below = real_root_count(&p, Bound::Unbounded, Bound::Included(&cut)).unwrap();
        let above = real_root_count(&p, Bound::Excluded(&cut), Bound::Unbounded).unwrap();
        let all = real_root_count(&p, Bound::Unbounded, Bound::Unbounded).unwrap();
        prop_assert_eq!(below + above, all);
        let expected = roots.len() + if extra == 0 { 2 } else { 0 };
        prop_assert_eq!(all, expected);
        let exact_below = roots.iter().filter(|&&r| BigRational::from_integer((-r).into()) <= cut).count()
            + if extra == 0 && cut >= BigRational::from_integer(0.into()) { 2 } else { 0 };
        prop_assert_eq!(below, exact_below);
    }

    #[test]
    fn gamma_vector_reconstructs(gamma in prop::collection::vec(-5i64..=5, 1..5), slack in 0usize..2) {
        let d = 2 * (gamma.len() - 1) + slack;
        let one_plus_t = IntPolynomial::from_i64(&[1, 1]);
        let p: IntPolynomial = gamma
            .iter()
            .enumerate()
            .map(|(i, &g)| {
                let power = (0..d - 2 * i).fold(IntPolynomial::one(), |acc, _| &acc * &one_plus_t);
                &IntPolynomial::monomial(BigInt::from(g), i) * &power
            })
            .sum();
        prop_assume!(!p.is_zero() && p.low_degree() == Some(0));
        let mut got = gamma_vector(&p).unwrap();
        got.resize(gamma.len(), BigInt::from(0));
        let expected: Vec<BigInt> = gamma.iter().map(|&g| g.into()).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn polynomial_text_and_json_round_trip(coeffs in prop::collection::vec(-1000i64..=1000, 0..8)) {
        let p = IntPolynomial::from_i64(&coeffs);
        prop_assert_eq!(p.to_string().parse::<IntPolynomial>().unwrap(), p.clone());
        prop_assert_eq!(p.to_compact_string().parse::<IntPolynomial>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPolynomial>(&json).unwrap(), p);
    }

    #[test]
    fn g_images_are_derangement_sequences(e in inversion_sequence(12)) {
        if let RewriteResult::Sequence(img) = g_map(&e) {
            prop_assert_eq!(img.len(), e.len());
            prop_assert!(InversionSequence::new(img.entries().to_vec()).is_ok());
            prop_assert!(in_dset(img.entries(), 1), "g({}) = {}", e, img);
            prop_assert!(img.ascents() >= 1);
        }
    }

    #[test]
    fn psi_phi_round_trip(p in permutation(12)) {
        let g = p.ground();
        let m = psi(&p);
        prop_assert!(is_normal(m.parts()));
        prop_assert_eq!(m.degree(), p.descents());
        prop_assert_eq!(phi(&m, &g).unwrap(), p);
    }

    #[test]
    fn lehmer_round_trip(e in inversion_sequence(12)) {
        let g = GroundSet::canonical(e.len()).unwrap();
        prop_assert_eq!(e.lehmer_inverse(&g).unwrap().lehmer_code(), e);
    }
}

fn degree_two_terms(l: &FlatsLattice) -> Vec<Vec<Subset>> {
    let flats = l.nonempty_flats();
    flats
        .iter()
        .flat_map(|&a| flats.iter().map(move |&b| vec![a, b]))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_linear(
        which in 0usize..2,
        picks in prop::collection::vec((any::<prop::sample::Index>(), -4i64..=4), 2..8),
        a in -3i64..=3,
        b in -3i64..=3,
    ) {
        let lattice = if which == 0 { FlatsLattice::boolean(3) } else { FlatsLattice::uniform(2, 4) }.unwrap();
        let terms = degree_two_terms(&lattice);
        let ring = ChowRing::new(lattice);
        let q = |c: i64| BigRational::from_integer(c.into());
        let half = picks.len() / 2;
        let build = |range: &[(prop::sample::Index, i64)]| {
            range.iter().fold(XPolynomial::zero(), |acc, (ix, c)| {
                acc.add(&XPolynomial::term(ix.get(&terms).clone(), q(*c)))
            })
        };
        let p = build(&picks[..half]);
        let r = build(&picks[half..]);
        let sum = p.scale(&q(a)).add(&r.scale(&q(b)));
        // the zero expression has no degree to place it in
        prop_assume!(!p.is_zero() && !r.is_zero() && !sum.is_zero());
        let combined = ring.canonical_form(&sum).unwrap();
        let separate = ring
            .canonical_form(&p)
            .unwrap()
            .scale(&q(a))
            .add(&ring.canonical_form(&r).unwrap().scale(&q(b)))
            .unwrap();
        prop_assert_eq!(combined, separate);
    }
}
