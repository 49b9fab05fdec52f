use bitretrieval::cyclotomic::text::{parse_document, write_document, Document, Element};
use bitretrieval::cyclotomic::{
    forward_transform, inverse_transform, real_autocorrelation_from_cyclo, CycloElement, RingElement,
};
use bitretrieval::instances::{random_binary, symmetry_related, BinaryKey, Provenance};
use bitretrieval::lattice::{gram_determinant, hermite_normal_form, ideal_generators, lll_reduce, CLASSIC_DELTA};
use bitretrieval::signature::{
    fidelity, asymptotic_delta_o, hash_to_element, quantization_error, quantize_o, quantize_o_error_bound,
    quantize_z, PublicKey, Quantizer, SigningKey, VerifyOptions,
};
use bitretrieval::solver::{project_hypercube, project_torus};
use bitretrieval::watermark::{read_pgm, write_pgm, GrayImage};
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![3usize, 5, 7, 11, 13])
}

fn cyclo_pair() -> impl Strategy<Value = (CycloElement, CycloElement, CycloElement)> {
    prime().prop_flat_map(|n| {
        let v = || prop::collection::vec(-4i64..=4, n - 1);
        (v(), v(), v()).prop_map(|(a, b, c)| {
            (
                CycloElement::new(a).unwrap(),
                CycloElement::new(b).unwrap(),
                CycloElement::new(c).unwrap(),
            )
        })
    })
}

fn real_element() -> impl Strategy<Value = RingElement<f64>> {
    prime().prop_flat_map(|n| prop::collection::vec(-10.0f64..10.0, n).prop_map(|v| RingElement::new(v).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in cyclo_pair()) {
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        prop_assert_eq!(
            a.multiply(&b).unwrap().multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.multiply(&b.add(&c).unwrap()).unwrap(),
            a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.multiply(&CycloElement::one(a.n()).unwrap()).unwrap(), a.clone());
    }

    #[test]
    fn embedding_is_multiplicative((a, b, _) in cyclo_pair()) {
        let (sa, sb, sab) = (a.spectrum(), b.spectrum(), a.multiply(&b).unwrap().spectrum());
        for j in 1..a.n() {
            let want = sa.sigma_j(j) * sb.sigma_j(j);
            prop_assert!((sab.sigma_j(j) - want).norm() < 1e-8 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn norm_is_multiplicative((a, b, _) in cyclo_pair()) {
        prop_assert_eq!(
            a.multiply(&b).unwrap().algebraic_norm(),
            a.algebraic_norm() * b.algebraic_norm()
        );
    }

    #[test]
    fn autocorrelation_is_self_conjugate_and_nonnegative((a, _, _) in cyclo_pair()) {
        let alpha = a.autocorrelation().unwrap();
        prop_assert_eq!(alpha.conjugate(), alpha.clone());
        let s = alpha.spectrum();
        let sa = a.spectrum();
        for j in 1..a.n() {
            prop_assert!(s.sigma_j(j).im.abs() < 1e-8);
            prop_assert!((s.sigma_j(j).re - sa.sigma_j(j).norm_sqr()).abs() < 1e-7 * (1.0 + s.sigma_j(j).re));
        }
    }

    #[test]
    fn transform_round_trip(x in real_element()) {
        let back = inverse_transform(&forward_transform(&x).unwrap()).unwrap();
        for (u, v) in x.coeffs().iter().zip(back.coeffs()) {
            prop_assert!((u - v).abs() < 1e-9);
        }
    }

    #[test]
    fn documents_round_trip((a, _, _) in cyclo_pair(), x in real_element()) {
        for doc in [
            Document::new(Element::Cyclo(a.clone())).with_meta("note", "x"),
            Document::new(Element::Integer(a.to_ring())),
            Document::new(Element::Real(x.clone())),
        ] {
            let back = parse_document(&write_document(&doc)).unwrap();
            prop_assert_eq!(back, doc);
        }
    }

    #[test]
    fn projections_are_idempotent(x in real_element(), seed in any::<u64>()) {
        let h = project_hypercube(&x);
        prop_assert_eq!(project_hypercube(&h), h.clone());
        prop_assert!(h.coeffs().iter().all(|c| c.abs() == 0.5));

        let key = random_binary(x.n(), seed).unwrap();
        let alpha = real_autocorrelation_from_cyclo(&key.autocorrelation());
        let t = project_torus(&x, &alpha).unwrap();
        let tt = project_torus(&t, &alpha).unwrap();
        for (u, v) in t.coeffs().iter().zip(tt.coeffs()) {
            prop_assert!((u - v).abs() < 1e-9);
        }
    }

    #[test]
    fn symmetries_preserve_the_autocorrelation(seed in any::<u64>(), n in prime(), k in 0usize..13) {
        let key = random_binary(n, seed).unwrap();
        let rotated = key.element().rotate(k % n).unwrap();
        let mirrored = key.element().conjugate();
        prop_assert_eq!(rotated.autocorrelation().unwrap(), key.autocorrelation());
        prop_assert_eq!(mirrored.autocorrelation().unwrap(), key.autocorrelation());
        prop_assert!(symmetry_related(key.element(), &rotated).unwrap());
    }

    #[test]
    fn provenance_tags_round_trip(seed in any::<u64>()) {
        for p in [Provenance::Pi, Provenance::Legendre, Provenance::Random(seed), Provenance::Explicit] {
            prop_assert_eq!(p.to_string().parse::<Provenance>().unwrap(), p);
        }
    }

    #[test]
    fn lattice_quantizer_is_nearest(x in real_element()) {
        let gamma = x.perp_part();
        let q = quantize_o(&gamma).unwrap();
        let e = quantization_error(&gamma, &q);
        prop_assert!(e <= quantize_o_error_bound(gamma.n()) + 1e-9);
        for r in [0.0, 0.25, 0.5] {
            prop_assert!(e <= quantization_error(&gamma, &quantize_z(&gamma, r).unwrap()) + 1e-9);
        }
    }

    #[test]
    fn hash_components_in_range(doc in prop::collection::vec(any::<u8>(), 0..64), m in 1u32..1000) {
        let h = hash_to_element(&doc, 23, m).unwrap();
        prop_assert_eq!(h.n(), 23);
        prop_assert!(h.coeffs().iter().all(|&c| (0..i64::from(m)).contains(&c)));
    }

    #[test]
    fn pgm_round_trip(w in 1usize..20, h in 1usize..20, seed in any::<u8>()) {
        let img = GrayImage::from_fn(w, h, |x, y| (x * 31 + y * 17 + seed as usize) as u8).unwrap();
        prop_assert_eq!(read_pgm(&write_pgm(&img)).unwrap(), img);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lll_preserves_the_lattice(seed in any::<u64>(), n in prop::sample::select(vec![5usize, 7, 11])) {
        let rho = random_binary(n, seed).unwrap().element().to_ring();
        let hnf = hermite_normal_form(&ideal_generators(&rho).unwrap()).unwrap();
        let reduced = lll_reduce(&hnf, CLASSIC_DELTA).unwrap();
        prop_assert_eq!(gram_determinant(&reduced.to_cyclo().unwrap()), gram_determinant(&hnf));
        prop_assert_eq!(hermite_normal_form(&reduced).unwrap(), hnf);
    }

    #[test]
    fn signatures_verify(
        seed in any::<u64>(),
        data in prop::collection::vec(0i64..256, 23),
        q in prop::sample::select(vec![Quantizer::O, Quantizer::Z(0.0), Quantizer::Z(0.5)]),
    ) {
        let key: BinaryKey = random_binary(23, seed).unwrap();
        let rho = RingElement::new(data).unwrap().to_real();
        let out = SigningKey::from_binary(&key).sign_detailed(&rho, q).unwrap();
        prop_assert!(out.epsilon.abs() <= 0.5 + 1e-9);

        // S differs from the codeword by a multiple of Φ.
        let diff: Vec<i64> = out
            .signed
            .data
            .coeffs()
            .iter()
            .zip(out.codeword.to_ring().coeffs())
            .map(|(s, c)| s - c)
            .collect();
        prop_assert!(diff.iter().all(|&d| d == diff[0]));

        let pk = PublicKey::new(key.autocorrelation()).unwrap();
        let params = fidelity(key.element(), asymptotic_delta_o(23)).unwrap();
        let opts = VerifyOptions {
            original: Some(rho),
            big_delta: Some(params.big_delta),
            ..VerifyOptions::default()
        };
        prop_assert!(pk.verify(&out.signed, &opts).unwrap().accepted());
    }
}
