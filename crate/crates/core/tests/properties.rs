//! Randomized invariants over small fields.

use std::sync::Arc;

use proptest::prelude::*;

use fermatq::{
    count_bruteforce, i_count_inclusion_exclusion, i_count_lcm, weil_bound, FieldContext,
    HypersurfaceSpec, MultiplicativeCharacter,
};

/// (p, n) pairs small enough to build on every proptest case.
const FIELDS: &[(u64, u32)] = &[(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (13, 1)];

fn field_strategy() -> impl Strategy<Value = Arc<FieldContext>> {
    (0..FIELDS.len()).prop_map(|i| {
        let (p, n) = FIELDS[i];
        Arc::new(FieldContext::build(p, n, None).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ops_form_a_field((ctx, xa, xb, xc) in field_strategy()
        .prop_flat_map(|ctx| {
            let q = ctx.q();
            (Just(ctx), 0..q, 0..q, 0..q)
        }))
    {
        // associativity and distributivity at the encoding level
        let ab_c = ctx.idx_mul(ctx.idx_mul(xa, xb), xc);
        let a_bc = ctx.idx_mul(xa, ctx.idx_mul(xb, xc));
        prop_assert_eq!(ab_c, a_bc);
        let left = ctx.idx_mul(xa, ctx.idx_add(xb, xc));
        let right = ctx.idx_add(ctx.idx_mul(xa, xb), ctx.idx_mul(xa, xc));
        prop_assert_eq!(left, right);
        if xa != 0 {
            let inv = ctx.idx_inv(xa).unwrap();
            prop_assert_eq!(ctx.idx_mul(xa, inv), 1); // encoding of the constant 1
        }
    }

    #[test]
    fn dlog_is_a_homomorphism((ctx, xa, xb) in field_strategy()
        .prop_flat_map(|ctx| {
            let q = ctx.q();
            (Just(ctx), 1..q, 1..q)
        }))
    {
        let qm1 = ctx.q() - 1;
        let la = ctx.idx_dlog(xa).unwrap();
        let lb = ctx.idx_dlog(xb).unwrap();
        let lab = ctx.idx_dlog(ctx.idx_mul(xa, xb)).unwrap();
        prop_assert_eq!(lab, (la + lb) % qm1);
    }

    #[test]
    fn characters_are_multiplicative((ctx, j_seed, xa, xb) in field_strategy()
        .prop_flat_map(|ctx| {
            let q = ctx.q();
            (Just(ctx), 0u64..64, 1..q, 1..q)
        }))
    {
        let qm1 = ctx.q() - 1;
        // pick some divisor d of q-1 and an index j < d
        let divisors: Vec<u64> = (1..=qm1).filter(|&d| qm1 % d == 0).collect();
        let d = divisors[(j_seed as usize) % divisors.len()];
        let j = j_seed % d;
        let chi = MultiplicativeCharacter::new(ctx.clone(), d, j).unwrap();
        let lhs = chi.eval_index(ctx.idx_mul(xa, xb));
        let rhs = chi.eval_index(xa) * chi.eval_index(xb);
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn invariant_routes_agree(d in proptest::collection::vec(2u64..=9, 2..=4)) {
        let via_lcm = i_count_lcm(&d).unwrap();
        let via_ie = i_count_inclusion_exclusion(&d).unwrap();
        prop_assert_eq!(via_lcm, via_ie);
    }

    #[test]
    fn count_is_invariant_under_power_class_scaling(
        (ctx, d_seed, class, b) in field_strategy()
            .prop_flat_map(|ctx| {
                let q = ctx.q();
                (Just(ctx), 0u64..16, 0u64..16, 1..q)
            }))
    {
        let qm1 = ctx.q() - 1;
        let divisors: Vec<u64> = (2..=qm1).filter(|&d| qm1 % d == 0).collect();
        let d = divisors[(d_seed as usize) % divisors.len()];
        let a1 = ctx.idx_exp(class % d);
        // scale a1 by a d-th power: the count must not change
        let scaled = ctx.idx_mul(a1, ctx.idx_exp(d * (class + 1)));
        let spec1 = HypersurfaceSpec::new(ctx.clone(), vec![d, d], vec![a1, 1], b).unwrap();
        let spec2 = HypersurfaceSpec::new(ctx.clone(), vec![d, d], vec![scaled, 1], b).unwrap();
        prop_assert_eq!(
            count_bruteforce(&spec1).unwrap().n_points,
            count_bruteforce(&spec2).unwrap().n_points
        );
    }

    #[test]
    fn bruteforce_count_lies_in_weil_interval(
        (ctx, d_seed, b) in field_strategy()
            .prop_flat_map(|ctx| {
                let q = ctx.q();
                (Just(ctx), 0u64..16, 1..q)
            }))
    {
        let qm1 = ctx.q() - 1;
        let divisors: Vec<u64> = (2..=qm1).filter(|&d| qm1 % d == 0).collect();
        let d = divisors[(d_seed as usize) % divisors.len()];
        let spec = HypersurfaceSpec::new(ctx.clone(), vec![d, d, d], vec![1, 1, 1], b).unwrap();
        let n = count_bruteforce(&spec).unwrap().n_points;
        let bound = weil_bound(ctx.p(), ctx.n(), 3, &[d, d, d]).unwrap();
        prop_assert!(bound.lower <= n && n <= bound.upper,
            "count {} outside [{}, {}]", n, bound.lower, bound.upper);
    }
}
