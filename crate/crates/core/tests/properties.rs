use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use metatheta_core::gauss::{psi_exponent, GaussStore};
use metatheta_core::hecke::HeckeModel;
use metatheta_core::poly::{chebyshev_u, Series};
use metatheta_core::rat::CycRat;
use metatheta_core::ring::{are_coprime, factorize, primes_up_to, CycInt, RingTag};
use metatheta_core::series::{assemble_d, SeriesParams};
use metatheta_core::symbols::{hilbert_product, residue_symbol};
use metatheta_core::tau::tau;

fn ring() -> impl Strategy<Value = RingTag> {
    prop_oneof![Just(RingTag::Eisenstein), Just(RingTag::Gaussian)]
}

fn elt(ring: RingTag, r: i64) -> impl Strategy<Value = CycInt> {
    (-r..=r, -r..=r).prop_map(move |(a, b)| CycInt::new(ring, a, b))
}

fn nonzero(ring: RingTag, r: i64) -> impl Strategy<Value = CycInt> {
    elt(ring, r).prop_filter("nonzero", |x| !x.is_zero())
}

/// Nonzero, coprime to the ramified prime.
fn modulus(ring: RingTag, r: i64) -> impl Strategy<Value = CycInt> {
    elt(ring, r).prop_filter("unramified", |x| !x.is_zero() && x.is_coprime_to_lambda())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn norm_is_multiplicative((x, y) in ring().prop_flat_map(|r| (elt(r, 1000), elt(r, 1000)))) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn euclidean_division((a, b) in ring().prop_flat_map(|r| (elt(r, 10_000), nonzero(r, 300)))) {
        let (q, rem) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &rem, a);
        prop_assert!(rem.norm() < b.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorize_inverts_multiplication(
        (r, picks) in ring().prop_flat_map(|r| (Just(r), proptest::collection::vec(0usize..12, 1..5)))
    ) {
        let ps = primes_up_to(r, 60);
        let x = picks.iter().fold(CycInt::one(r), |acc, &i| &acc * &ps[i % ps.len()].pi);
        let f = factorize(&x).unwrap();
        prop_assert_eq!(f.product(), x.clone());
        let count: u32 = f.factors.iter().map(|(_, e)| *e).sum();
        prop_assert_eq!(count as usize, picks.len());
    }

    #[test]
    fn symbol_is_multiplicative_in_both_arguments(
        (a, b, m, m2) in ring().prop_flat_map(|r| (elt(r, 40), elt(r, 40), modulus(r, 12), modulus(r, 12)))
    ) {
        prop_assume!(are_coprime(&a, &m) && are_coprime(&b, &m) && are_coprime(&a, &m2));
        let ab = residue_symbol(&(&a * &b), &m, 1).unwrap();
        prop_assert_eq!(ab, residue_symbol(&a, &m, 1).unwrap() * residue_symbol(&b, &m, 1).unwrap());
        let mm = residue_symbol(&a, &(&m * &m2), 1).unwrap();
        prop_assert_eq!(mm, residue_symbol(&a, &m, 1).unwrap() * residue_symbol(&a, &m2, 1).unwrap());
    }

    #[test]
    fn symbol_depends_on_the_class_mod_m(
        (a, c, m) in ring().prop_flat_map(|r| (elt(r, 40), elt(r, 40), modulus(r, 15)))
    ) {
        prop_assume!(are_coprime(&a, &m));
        let shifted = &(&c * &m) + &a;
        prop_assert_eq!(residue_symbol(&shifted, &m, 1).unwrap(), residue_symbol(&a, &m, 1).unwrap());
    }

    #[test]
    fn hilbert_product_kills_nth_powers(
        (a, b) in ring().prop_flat_map(|r| (modulus(r, 8), modulus(r, 15)))
    ) {
        prop_assume!(are_coprime(&a, &b));
        let an = a.pow(a.ring().n());
        prop_assert!(hilbert_product(&an, &b).unwrap().is_one());
    }

    #[test]
    fn psi_is_well_defined_mod_d(
        (c, d, k) in ring().prop_flat_map(|r| (elt(r, 50), modulus(r, 20), elt(r, 50)))
    ) {
        let den = d.norm();
        let x = CycRat::new(&c * &d.conj(), den.clone()).unwrap();
        let y = CycRat::new(&(&c + &(&k * &d)) * &d.conj(), den).unwrap();
        prop_assert_eq!(psi_exponent(&x), psi_exponent(&y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tau_scales_by_cubes((c, a, u) in (modulus(RingTag::Eisenstein, 6), modulus(RingTag::Eisenstein, 6), 0u32..6)) {
        let store = GaussStore::in_memory(RingTag::Eisenstein);
        let a3 = a.pow(3);
        let lhs = tau(3, &(&c.pow(3) * &a3), &store).unwrap().value;
        let nc: BigInt = c.norm();
        let rhs = tau(3, &a3, &store).unwrap().value * nc.to_string().parse::<f64>().unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0));
        let unit = RingTag::Eisenstein.units()[u as usize].clone();
        let um = &unit * &a3;
        prop_assert_eq!(tau(3, &um, &store).unwrap().value, tau(3, &a3, &store).unwrap().value);
    }
}

#[test]
fn assembly_is_independent_of_summation_order() {
    let store = GaussStore::in_memory(RingTag::Eisenstein);
    let ps = primes_up_to(RingTag::Eisenstein, 400);
    let model = HeckeModel::random(RingTag::Eisenstein, &ps, &mut ChaCha8Rng::seed_from_u64(11), &store).unwrap();
    let params = SeriesParams::new(3, Complex64::new(0.7, 0.4), 400);
    let (v, terms) = assemble_d(&params, &model, &store).unwrap();
    let mut vals: Vec<Complex64> = terms.iter().map(|t| t.value).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        use rand::seq::SliceRandom;
        vals.shuffle(&mut rng);
        let s: Complex64 = vals.iter().sum();
        assert!((s - v).norm() < 1e-12);
    }
}

/// `zeta_S(2 s1 + 1) * D` has the local factor `1/(1 - lambda x + x^2)`, and
/// the zeta factor at p is `sum (x^2/N)^k`.
#[test]
fn zeta_times_series_is_the_hecke_factor() {
    let store = GaussStore::in_memory(RingTag::Eisenstein);
    let p = primes_up_to(RingTag::Eisenstein, 13).into_iter().find(|p| p.norm == 13).unwrap();
    let model = HeckeModel::random(RingTag::Eisenstein, std::slice::from_ref(&p), &mut ChaCha8Rng::seed_from_u64(2), &store).unwrap();
    let k = 6usize;
    let params = SeriesParams::new(3, Complex64::new(0.7, 0.4), 13u128.pow(3 * k as u32)).with_primes(vec![p]);
    let (_, terms) = assemble_d(&params, &model, &store).unwrap();
    let mut d = Series::zero(&[k as u32]);
    for t in &terms {
        if let (Some(mono), Some(f)) = (&t.monomial, t.formal) {
            d.add_term(mono, f);
        }
    }
    let zeta: Vec<Complex64> = (0..=k)
        .map(|j| if j % 2 == 0 { Complex64::new(13f64.powi(-(j as i32 / 2)), 0.0) } else { Complex64::new(0.0, 0.0) })
        .collect();
    let prod = d.mul(&Series::univariate(&[k as u32], 0, &zeta));
    let u = chebyshev_u(model.locals()[0].lambda, k);
    for j in 0..=k {
        assert!((prod.coeff(&[j as u32]) - u[j]).norm() < 1e-10, "x^{j}");
    }
}
