use eaqecc::bounds::{ea_griesmer, ea_hamming, hamming_efficiency, linear_ea_plotkin, BoundStatus};
use eaqecc::code::{derive_eaqecc, induce_eaqecc, rates};
use eaqecc::concat::{concat, Procedure};
use eaqecc::error_model::{compose, named_polynomial, ErrorPolynomial, POLYNOMIAL_NAMES};
use eaqecc::exact::rat;
use eaqecc::{ClassicalCode, EaCode};
use num_rational::BigRational;
use proptest::prelude::*;

fn ea_code() -> impl Strategy<Value = EaCode> {
    (1u64..40)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, k)| (Just(n), Just(k), 0..=(n - k), 1..=n))
        .prop_map(|(n, k, c, d)| EaCode::new(n, k, Some(d), c).unwrap())
}

fn component() -> impl Strategy<Value = ErrorPolynomial> {
    prop::sample::select(POLYNOMIAL_NAMES).prop_map(|name| named_polynomial(name).unwrap())
}

proptest! {
    #[test]
    fn rate_identity(code in ea_code()) {
        let r = rates(&code);
        prop_assert_eq!(&r.r - &r.r_n, r.r_e.clone());
        prop_assert!(r.r > rat(0, 1) && r.r <= rat(1, 1));
    }

    #[test]
    fn phi_agrees_with_exact_comparison(code in ea_code()) {
        prop_assume!(code.redundancy() > 0);
        let status = ea_hamming(&code).unwrap().status;
        let phi = hamming_efficiency(&code).unwrap();
        prop_assert_eq!(phi > 1.0, status == BoundStatus::Violated);
    }

    #[test]
    fn derivation_keeps_n_plus_c(code in ea_code()) {
        let parent = EaCode::new(code.n(), code.k(), code.d(), 0).unwrap();
        for c_new in 0..=(code.n() - code.k()) {
            match derive_eaqecc(&parent, c_new) {
                Ok(derived) => {
                    prop_assert_eq!(derived.n() + derived.c(), parent.n());
                    prop_assert_eq!(derived.k(), parent.k());
                    // both checks see n and c only through n + c
                    prop_assert_eq!(
                        ea_griesmer(&derived).unwrap().status,
                        ea_griesmer(&parent).unwrap().status
                    );
                    prop_assert_eq!(
                        linear_ea_plotkin(&derived).unwrap().status,
                        linear_ea_plotkin(&parent).unwrap().status
                    );
                }
                // d may exceed the shortened length
                Err(_) => prop_assert!(parent.d().unwrap() > parent.n() - c_new || c_new > parent.n() - c_new),
            }
        }
    }

    #[test]
    fn concatenation_parameters(outer in ea_code(), inner in ea_code()) {
        let r = concat(&outer, &inner, None).unwrap();
        let (no, ko, co) = (outer.n(), outer.k(), outer.c());
        let (ni, ki, ci) = (inner.n(), inner.k(), inner.c());
        match r.procedure {
            Procedure::Divisible => {
                prop_assert_eq!(no % ki, 0);
                prop_assert_eq!((r.code.n(), r.code.k(), r.code.c()), (no * ni / ki, ko, co + ci * no / ki));
            }
            Procedure::NonDivisible => {
                prop_assert_ne!(no % ki, 0);
                prop_assert_eq!((r.code.n(), r.code.k(), r.code.c()), (no * ni, ko * ki, co * ki + ci * no));
            }
        }
        let forced = concat(&outer, &inner, Some(Procedure::NonDivisible)).unwrap();
        prop_assert_eq!(forced.code.k(), ko * ki);
        let net = rates(&r.code).r_n;
        prop_assert_eq!(net, BigRational::new(
            (r.code.k() as i64 - r.code.c() as i64).into(),
            (r.code.n() as i64).into()
        ));
    }

    #[test]
    fn composition_is_associative(f in component(), g in component(), h in component()) {
        let left = compose(&compose(&f, &g), &h);
        let right = compose(&f, &compose(&g, &h));
        prop_assert_eq!(left.coefficients(), right.coefficients());
    }

    #[test]
    fn composition_stays_a_probability(f in component(), g in component(), i in 0u32..=200) {
        let fg = compose(&f, &g);
        let p = BigRational::new(i.into(), 200.into());
        let value = fg.evaluate(&p);
        prop_assert!(value >= rat(0, 1) && value <= rat(1, 1));
        prop_assert_eq!(fg.evaluate(&rat(0, 1)), rat(0, 1));
        prop_assert_eq!(fg.evaluate(&rat(1, 1)), rat(1, 1));
        if i < 200 {
            let next = fg.evaluate(&BigRational::new((i + 1).into(), 200.into()));
            prop_assert!(next >= value);
        }
    }

    #[test]
    fn induced_kappa_minus_c_is_constant(n in 2u64..30, k_frac in 0.5f64..1.0) {
        let k = ((n as f64 * k_frac).ceil() as u64).clamp(1, n);
        let ccode = ClassicalCode::new(n, k, 1, 4).unwrap();
        let lower = (n + 1).saturating_sub(2 * k);
        for c in lower..=(n - k) {
            let induced = induce_eaqecc(&ccode, c).unwrap();
            prop_assert_eq!(induced.k() as i64 - c as i64, 2 * k as i64 - n as i64);
            prop_assert_eq!(induced.q(), 2);
        }
    }
}
