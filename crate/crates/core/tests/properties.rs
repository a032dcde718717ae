use convexa::expr::{parse, tokenize, unparse, Ast, BinOp, Func};
use convexa::membership::{check_convex, GridSpec};
use convexa::quadrature::{integrate, QuadSpec};
use convexa::specfun::beta;
use convexa::theorems::{hadamard_classical, nesbitt_sandwich, young_right_bound, young_sandwich};
use convexa::{FunctionDef, Interval, WeightSystem};
use proptest::prelude::*;

fn ast_strategy() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        Just(Ast::Var),
        (0u32..1000).prop_map(|n| Ast::Number(n as f64 / 8.0)),
    ];
    leaf.prop_recursive(5, 40, 3, |inner| {
        let op = prop_oneof![
            Just(BinOp::Add),
            Just(BinOp::Sub),
            Just(BinOp::Mul),
            Just(BinOp::Div),
            Just(BinOp::Pow),
        ];
        let unary_fn = prop_oneof![
            Just(Func::Exp),
            Just(Func::Ln),
            Just(Func::Sqrt),
            Just(Func::Abs),
            Just(Func::Sin),
            Just(Func::Cos),
        ];
        prop_oneof![
            inner.clone().prop_map(|c| Ast::Neg(Box::new(c))),
            (op, inner.clone(), inner.clone()).prop_map(|(op, l, r)| Ast::Binary {
                op,
                lhs: Box::new(l),
                rhs: Box::new(r)
            }),
            (unary_fn, inner.clone()).prop_map(|(func, a)| Ast::Call {
                func,
                args: vec![a]
            }),
            (inner.clone(), inner).prop_map(|(a, b)| Ast::Call {
                func: Func::Pow,
                args: vec![a, b]
            }),
        ]
    })
}

/// Non-negative classically convex functions on any interval.
fn convex_nonneg() -> impl Strategy<Value = FunctionDef> {
    prop_oneof![
        (0.0..3.0f64, -2.0..4.0f64, 0.0..2.0f64)
            .prop_map(|(k, c, d)| format!("{k}*abs(x-{c})+{d}")),
        (0.0..2.0f64, -2.0..4.0f64, 0.0..1.0f64).prop_map(|(k, c, d)| format!("{k}*(x-{c})^2+{d}")),
        (-1.5..1.5f64, 0.0..1.0f64).prop_map(|(k, d)| format!("exp({k}*x)+{d}")),
    ]
    .prop_map(|src| FunctionDef::parse(&src).unwrap())
}

fn interval() -> impl Strategy<Value = Interval> {
    (-1.0..2.0f64, 0.1..3.0f64).prop_map(|(a, w)| Interval::new(a, a + w).unwrap())
}

fn small_grid() -> GridSpec {
    GridSpec {
        nx: 11,
        ny: 11,
        nt: 21,
        ..GridSpec::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unparse_reparses_identically(ast in ast_strategy()) {
        let printed = unparse(&ast);
        let again = parse(&tokenize(&printed).unwrap()).unwrap();
        prop_assert_eq!(ast, again, "{}", printed);
    }

    #[test]
    fn beta_symmetric(x in 0.05..20.0f64, y in 0.05..20.0f64) {
        let a = beta(x, y).unwrap().value;
        let b = beta(y, x).unwrap().value;
        prop_assert!(((a - b) / a).abs() <= 1e-12);
    }

    #[test]
    fn weights_sum_to_lemma(p in 1.001..20.0f64, t in 1e-4..=1.0f64) {
        let ws = WeightSystem::young(p).unwrap();
        let w = ws.eval(t).unwrap();
        let l = ws.lemma_rhs(t).unwrap();
        prop_assert!((w.sum() - l).abs() <= 1e-12 * l.max(1.0));
        prop_assert!(l >= 1.0 - 1e-12);
    }

    #[test]
    fn quadrature_linear(alpha in -3.0..3.0f64, beta_ in -3.0..3.0f64, iv in interval()) {
        let spec = QuadSpec::default();
        let f = |x: f64| (1.3 * x).exp();
        let g = |x: f64| (x * x + 0.5).sqrt();
        let rf = integrate(|x| Ok(f(x)), iv, &spec).unwrap();
        let rg = integrate(|x| Ok(g(x)), iv, &spec).unwrap();
        let rh = integrate(|x| Ok(alpha * f(x) + beta_ * g(x)), iv, &spec).unwrap();
        prop_assert!(rf.converged && rg.converged && rh.converged);
        let tol = rh.error_estimate + alpha.abs() * rf.error_estimate + beta_.abs() * rg.error_estimate
            + spec.abs_tol.max(spec.rel_tol * rh.value.abs());
        prop_assert!((rh.value - (alpha * rf.value + beta_ * rg.value)).abs() <= tol);
    }

    #[test]
    fn certificates_reverify(
        k in -2.0..2.0f64, c in 0.0..1.0f64, d in -1.0..1.0f64,
        p in 1.05..4.0f64, nesbitt in any::<bool>(),
    ) {
        let f = FunctionDef::parse(&format!("{k}*abs(x-{c})+{d}")).unwrap();
        let ws = if nesbitt { WeightSystem::NESBITT } else { WeightSystem::young(p).unwrap() };
        let grid = small_grid();
        let r = check_convex(&f, Interval::UNIT, &ws, &grid).unwrap();
        if let Some(cert) = r.certificate() {
            let (lhs, rhs) = cert.recompute(&f, &ws).unwrap();
            prop_assert_eq!((lhs, rhs), (cert.lhs, cert.rhs));
            prop_assert!(lhs - rhs > grid.tol);
            prop_assert!(r.min_slack < -grid.tol);
        } else {
            prop_assert!(r.min_slack >= -grid.tol);
        }
    }

    #[test]
    fn classical_members_are_midconvex(f in convex_nonneg(), iv in interval()) {
        let grid = small_grid();
        let r = check_convex(&f, iv, &WeightSystem::CLASSICAL, &grid).unwrap();
        prop_assert!(r.holds());
        let pts = iv.linspace(grid.nx);
        for &x in &pts {
            for &y in &pts {
                let mid = f.eval(0.5 * (x + y)).unwrap();
                let avg = 0.5 * (f.eval(x).unwrap() + f.eval(y).unwrap());
                prop_assert!(mid <= avg + grid.tol);
            }
        }
    }

    #[test]
    fn domination_carries_membership(f in convex_nonneg(), iv in interval(), p in 1.01..10.0f64) {
        let grid = small_grid();
        prop_assert!(check_convex(&f, iv, &WeightSystem::CLASSICAL, &grid).unwrap().holds());
        for ws in [WeightSystem::young(p).unwrap(), WeightSystem::NESBITT] {
            let (dominates, _) = convexa::weights::dominates_classical(&ws, 999).unwrap();
            prop_assert!(dominates);
            prop_assert!(check_convex(&f, iv, &ws, &grid).unwrap().holds());
        }
    }

    #[test]
    fn members_satisfy_sandwiches(f in convex_nonneg(), iv in interval(), p in 1.01..5.0f64) {
        let spec = QuadSpec::default();
        let h = hadamard_classical(&f, iv, &spec).unwrap();
        prop_assert!(h.margins.0 >= -1e-8 && h.margins.1 >= -1e-8);
        let y = young_sandwich(&f, iv, p, &spec).unwrap();
        prop_assert!(y.margins.0 >= -1e-8 && y.margins.1 >= -1e-8);
        let r = young_right_bound(&f, iv, p, &spec).unwrap();
        prop_assert!(r.margins.1 >= -1e-8);
        let n = nesbitt_sandwich(&f, iv, &spec).unwrap();
        prop_assert!(n.margins.0 >= -1e-8 && n.margins.1 >= -1e-8);
    }
}
