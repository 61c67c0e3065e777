use proptest::prelude::*;

use super::*;
use crate::specs;

#[test]
fn confined_robot_listing_parses() {
    let spec = parse(specs::CONFINED_ROBOT).unwrap();
    let inputs: Vec<_> = spec.inputs.iter().map(|i| i.name.as_str()).collect();
    assert_eq!(inputs, ["time", "bump_x", "vel_x", "bump_y", "vel_y"]);
    let constants: Vec<_> = spec.constants.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(constants, ["delta_x", "delta_y"]);
    let slacks: Vec<_> = spec.slack_streams.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(slacks, ["epsilon", "tau"]);
    let outputs: Vec<_> = spec.outputs.iter().map(|o| o.name.as_str()).collect();
    assert_eq!(
        outputs,
        ["dt", "vx", "vx_filter", "position_x", "vy", "vy_filter", "position_y"]
    );
    let types = stream_types(&spec).unwrap();
    assert!(spec.outputs.iter().all(|o| types[&o.name].ty == Type::Float));
    assert_eq!(spec.triggers.len(), 2);
    for t in &spec.triggers {
        assert_eq!(t.p, 0.01);
        assert_eq!(t.threshold, 4.0);
        assert_eq!(t.predicate, Predicate::GreaterOverlap);
    }
    assert_eq!(spec.triggers[0].message, "Violated Geofence in X-Direction");
}

#[test]
fn omni_robot_listing_parses() {
    let spec = parse(specs::OMNI_ROBOT).unwrap();
    assert_eq!(spec.inputs.len(), 3);
    assert_eq!(spec.outputs.len(), 7);
    let types = stream_types(&spec).unwrap();
    assert!(types["dt"].exact);
    assert!(!types["position_x"].exact);
}

#[test]
fn prev_surface_forms_agree() {
    let a = parse_unchecked("input x: Float\noutput y := x.prev(1.5)").unwrap();
    let b = parse_unchecked("input x: Float\noutput y := x.offset(by: -1).defaults(to: 1.5)")
        .unwrap();
    assert_eq!(a, b);
    assert_eq!(a.outputs[0].expr, Expr::prev("x", Expr::Real(1.5)));
}

#[test]
fn other_offsets_are_rejected() {
    let err =
        parse_unchecked("input x: Float\noutput y := x.offset(by: -2).defaults(to: 0.0)")
            .unwrap_err();
    assert!(err.mentions("only offset -1"));
    let err = parse_unchecked("input x: Float\noutput y := x.offset(by: 1).defaults(to: 0.0)")
        .unwrap_err();
    assert!(err.mentions("only offset -1"));
}

#[test]
fn empty_text_is_an_empty_spec() {
    let spec = parse("").unwrap();
    assert_eq!(spec.declaration_count(), 0);
    assert!(spec.triggers.is_empty());
    assert_eq!(parse("# just a comment\n").unwrap(), Spec::default());
}

#[test]
fn unknown_stream_is_reported() {
    let err = parse("output x := y").unwrap_err();
    assert!(err.mentions("unknown stream y"));
    let d = err.iter().next().unwrap();
    assert_eq!((d.line, d.column), (1, 13));
}

#[test]
fn syntax_errors_never_yield_a_partial_spec() {
    let err = parse("input a: Float\nfoo b\noutput c := a +\ninput d: Int").unwrap_err();
    assert!(err.mentions("unknown keyword `foo`"));
    assert!(err.mentions("expected an expression"));
    assert!(err.mentions("expected `Float` or `Bool`"));
}

#[test]
fn duplicate_names_are_rejected() {
    let err = parse("input a: Float\nconstant a: Variable").unwrap_err();
    assert!(err.mentions("duplicate declaration of `a`"));
}

#[test]
fn prev_only_on_streams() {
    let err = parse("input a: Float\noutput b := (a + 1.0).prev(0.0)").unwrap_err();
    assert!(err.mentions("only to stream references"));
}

#[test]
fn trigger_fraction_must_be_in_unit_interval() {
    let err = parse("input a: Float\ntrigger a >[1.5] 0.0 \"m\"").unwrap_err();
    assert!(err.mentions("outside [0, 1]"));
}

#[test]
fn self_reference_is_a_cycle() {
    let err = parse("output x := x").unwrap_err();
    assert!(err.mentions("dependency cycle without prev: x -> x"));
}

#[test]
fn self_reference_through_prev_is_fine() {
    parse("output x := x.prev(0.0) + 1.0").unwrap();
}

#[test]
fn mutual_cycle_is_reported_once() {
    let err = parse("output a := b + 1.0\noutput b := a * 2.0").unwrap_err();
    assert_eq!(err.len(), 1);
    assert!(err.mentions("a -> b -> a") || err.mentions("b -> a -> b"));
}

#[test]
fn references_inside_prev_defaults_are_same_step() {
    let err = parse("output x := x.prev(x)").unwrap_err();
    assert!(err.mentions("dependency cycle"));
}

#[test]
fn noisy_condition_is_rejected() {
    let src = "input v: Float\nconstant d: Variable\noutput vx := v + d\n\
               output b := if vx then 1.0 else 0.0";
    let err = parse(src).unwrap_err();
    assert!(err.mentions("if-condition must be Bool"));
}

#[test]
fn exact_float_condition_is_still_a_type_error() {
    let err = parse("input v: Float\noutput b := if v then 1.0 else 0.0").unwrap_err();
    assert!(err.mentions("if-condition must be Bool"));
}

#[test]
fn bool_arithmetic_is_rejected() {
    let err = parse("input b: Bool\noutput x := b + 1.0").unwrap_err();
    assert!(err.mentions("Bool value used in arithmetic"));
}

#[test]
fn trig_needs_exact_argument() {
    parse("input d: Float\noutput c := cos(d) * 2.0").unwrap();
    let err = parse("input d: Float\noutput e: Variable\noutput c := sin(d + e)").unwrap_err();
    assert!(err.mentions("argument of sin must be noise-free"));
}

#[test]
fn division_needs_exact_divisor() {
    parse("input d: Float\noutput e: Variable\noutput c := e / d").unwrap();
    let err = parse("input d: Float\noutput e: Variable\noutput c := d / e").unwrap_err();
    assert!(err.mentions("divisor must be noise-free"));
}

#[test]
fn noise_propagates_through_prev_cycles() {
    let src = "input u: Float\noutput e: Variable\n\
               output a := b.prev(0.0) + u\noutput b := a + e";
    let spec = parse(src).unwrap();
    let t = stream_types(&spec).unwrap();
    assert!(!t["a"].exact && !t["b"].exact);
}

#[test]
fn bool_outputs_and_branch_mismatch() {
    parse("input b: Bool\noutput c := if b then false else c.prev(true)").unwrap();
    let err = parse("input b: Bool\noutput c := if b then false else 1.0").unwrap_err();
    assert!(err.mentions("if-branches"));
    let err = parse("input b: Bool\noutput c: Float := if b then false else true").unwrap_err();
    assert!(err.mentions("declared Float"));
}

#[test]
fn trigger_on_bool_is_rejected() {
    let err = parse("input b: Bool\ntrigger b >[0.5] 0.0 \"m\"").unwrap_err();
    assert!(err.mentions("must be Float"));
}

#[test]
fn evaluation_order_respects_dependencies() {
    let spec = parse(specs::CONFINED_ROBOT).unwrap();
    let order = evaluation_order(&spec).unwrap();
    let pos = |name: &str| {
        order
            .iter()
            .position(|&i| spec.outputs[i].name == name)
            .unwrap()
    };
    assert!(pos("dt") < pos("position_x"));
    assert!(pos("vx") < pos("vx_filter"));
    assert!(pos("vx_filter") < pos("position_x"));
}

#[test]
fn listings_round_trip_through_pretty_printer() {
    for src in [specs::CONFINED_ROBOT, specs::OMNI_ROBOT] {
        let a = parse(src).unwrap();
        let printed = a.to_string();
        let b = parse(&printed).unwrap();
        assert_eq!(a, b);
        assert_eq!(printed, b.to_string());
    }
}

fn arb_expr(names: Vec<&'static str>) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..1000).prop_map(|n| Expr::Real(n as f64 / 8.0)),
        prop::sample::select(names.clone()).prop_map(Expr::stream),
        (prop::sample::select(names), (0u32..10))
            .prop_map(|(n, d)| Expr::prev(n, Expr::Real(d as f64))),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (
                prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone())
                .prop_map(|(t, o)| Expr::ite(Expr::stream("flag"), t, o)),
        ]
    })
}

proptest! {
    #[test]
    fn parse_print_parse_is_a_fixed_point(
        exprs in prop::collection::vec(arb_expr(vec!["u", "w", "o0", "o1", "o2"]), 3)
    ) {
        let mut src = String::from("input u: Float\ninput flag: Bool\nconstant w: Variable\n");
        for (i, e) in exprs.iter().enumerate() {
            src.push_str(&format!("output o{i} := {e}\n"));
        }
        let first = parse_unchecked(&src).unwrap();
        for (o, e) in first.outputs.iter().zip(&exprs) {
            prop_assert_eq!(&o.expr, e);
        }
        let second = parse_unchecked(&first.to_string()).unwrap();
        prop_assert_eq!(&first, &second);
    }

    #[test]
    fn accepted_iff_same_step_graph_is_acyclic(
        edges in prop::collection::vec((0usize..5, 0usize..5, any::<bool>()), 0..10)
    ) {
        let n = 5;
        let mut src = String::new();
        for i in 0..n {
            let mut rhs = String::from("1.0");
            for &(from, to, delayed) in &edges {
                if from == i {
                    if delayed {
                        rhs.push_str(&format!(" + s{to}.prev(0.0)"));
                    } else {
                        rhs.push_str(&format!(" + s{to}"));
                    }
                }
            }
            src.push_str(&format!("output s{i} := {rhs}\n"));
        }
        // reference oracle: Floyd-Warshall reachability on same-step edges
        let mut reach = [[false; 5]; 5];
        for &(from, to, delayed) in &edges {
            if !delayed {
                reach[from][to] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    reach[i][j] |= reach[i][k] && reach[k][j];
                }
            }
        }
        let cyclic = (0..n).any(|i| reach[i][i]);
        prop_assert_eq!(parse(&src).is_ok(), !cyclic);
    }
}
