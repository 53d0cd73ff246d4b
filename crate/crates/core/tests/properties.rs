use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use hgc_core::charsum::{gauss_sum, jacobi_sum, Character};
use hgc_core::cyclotomic::{cyclotomic_poly, CycInt};
use hgc_core::field::{teichmuller, FieldCtx};
use hgc_core::padic::{gamma_p_many, PadicInt, DEFAULT_GAMMA_STEPS};

fn cyc(m: u64) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-20i64..20, m as usize).prop_map(move |c| CycInt::from_i64s(m, &c))
}

fn triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
    prop::sample::select(vec![3u64, 4, 5, 6, 8, 12]).prop_flat_map(|m| (cyc(m), cyc(m), cyc(m)))
}

proptest! {
    #[test]
    fn cyclotomic_ring_laws((a, b, c) in triple()) {
        let m = a.m();
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&CycInt::one(m)), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn equality_is_modulo_the_cyclotomic_polynomial((a, b, _c) in triple()) {
        let m = a.m();
        let mut phi = cyclotomic_poly(m);
        phi.resize(m as usize, BigInt::from(0));
        let phi = CycInt::new(m, phi);
        prop_assert!(phi.is_zero());
        prop_assert_eq!(a.add(&phi.mul(&b)), a.clone());
        let z = a.to_complex() - a.add(&phi.mul(&b)).to_complex();
        prop_assert!(z.norm() < 1e-6);
    }

    #[test]
    fn jacobi_norm_is_q(qi in 0usize..4, ka in 1u64..1000, kb in 1u64..1000) {
        let (p, e) = [(7u64, 1u32), (13, 1), (17, 1), (5, 2)][qi];
        let ctx = Arc::new(FieldCtx::new(p, e, None).unwrap());
        let m = ctx.order();
        let (ka, kb) = (ka % m, kb % m);
        prop_assume!(ka != 0 && kb != 0 && (ka + kb) % m != 0);
        let a = Character::new(&ctx, ka as i64);
        let b = Character::new(&ctx, kb as i64);
        let j = jacobi_sum(&a, &b).unwrap();
        prop_assert_eq!(j.mul(&j.bar()).as_integer(), Some(BigInt::from(ctx.q())));
    }

    #[test]
    fn gauss_norm_is_q(qi in 0usize..3, k in 1u64..1000) {
        let p = [7u64, 11, 13][qi];
        let ctx = Arc::new(FieldCtx::prime(p).unwrap());
        let k = k % (p - 1);
        prop_assume!(k != 0);
        let g = gauss_sum(&Character::new(&ctx, k as i64));
        prop_assert_eq!(g.mul(&g.bar()).as_integer(), Some(BigInt::from(p)));
    }

    #[test]
    fn embedding_is_multiplicative_and_coherent(pi in 0usize..3, seed in prop::collection::vec(-5i64..5, 24)) {
        let p = [7u64, 13, 19][pi];
        let ctx = FieldCtx::prime(p).unwrap();
        let m = p - 1;
        let a = CycInt::from_i64s(m, &seed[..m as usize]);
        let b = CycInt::from_i64s(m, &seed[seed.len() - m as usize..]);
        for r in 2..=4u32 {
            let ea = a.embed_padic(p, r, &ctx).unwrap();
            let eb = b.embed_padic(p, r, &ctx).unwrap();
            prop_assert_eq!(a.mul(&b).embed_padic(p, r, &ctx).unwrap(), ea * eb);
            prop_assert_eq!(a.add(&b).embed_padic(p, r, &ctx).unwrap(), ea + eb);
            prop_assert_eq!(ea.reduce(r - 1), a.embed_padic(p, r - 1, &ctx).unwrap());
        }
    }

    #[test]
    fn teichmuller_lifts(pi in 0usize..4, x in 1i64..10_000) {
        let p = [5u64, 7, 11, 13][pi];
        prop_assume!(x % p as i64 != 0);
        let t = teichmuller(x, p, 5);
        prop_assert_eq!(t.pow(p - 1), PadicInt::one(p, 5));
        prop_assert_eq!(t.reduce(1), PadicInt::from_i64(x, p, 1));
        prop_assert_eq!(t.reduce(3), teichmuller(x, p, 3));
        prop_assert_eq!(t.pow(p), t);
    }

    #[test]
    fn gamma_functional_equation_and_coherence(pi in 0usize..3, x in 0u64..1_000_000) {
        let p = [5u64, 7, 11][pi];
        let r = 3;
        let m = p.pow(r);
        let x = x % m;
        let g = gamma_p_many(p, r, &[x, (x + 1) % m], DEFAULT_GAMMA_STEPS).unwrap();
        let gx = PadicInt::from_residue(g[0], p, r);
        let gx1 = PadicInt::from_residue(g[1], p, r);
        let factor = if x % p == 0 { PadicInt::one(p, r) } else { PadicInt::from_residue(x, p, r) };
        prop_assert_eq!(gx1, -(factor * gx));
        let low = gamma_p_many(p, r - 1, &[x % p.pow(r - 1)], DEFAULT_GAMMA_STEPS).unwrap();
        prop_assert_eq!(gx.reduce(r - 1).residue(), low[0]);
    }

    #[test]
    fn frobenius_is_a_field_automorphism(fi in 0usize..3, a in 0u64..100_000, b in 0u64..100_000) {
        let (p, e) = [(3u64, 3u32), (5, 2), (7, 3)][fi];
        let ctx = FieldCtx::new(p, e, None).unwrap();
        let (a, b) = (a % ctx.q(), b % ctx.q());
        let f = |x| ctx.frobenius(x);
        prop_assert_eq!(f(ctx.add(a, b)), ctx.add(f(a), f(b)));
        prop_assert_eq!(f(ctx.mul(a, b)), ctx.mul(f(a), f(b)));
        let mut y = a;
        for _ in 0..e {
            y = f(y);
        }
        prop_assert_eq!(y, a);
    }
}
