use rcplan_core::cube::{ActionSet, CubeState, Move};
use rcplan_core::pddl::{
    build_action, build_domain, emit_domain, encode, parse_action, parse_domain, symbolic_apply,
    Variant,
};

/// Reference text of the left-face action, verbatim (it carries only the add effects).
const REFERENCE_L: &str = "(:action L
:effect (and
;for corner cubelets
(forall(?x ?y ?z)(when (cube1 ?x ?y ?z)
  (and (cube2 ?y ?x ?z))))
(forall(?x ?y ?z)(when (cube3 ?x ?y ?z)
  (and (cube1 ?y ?x ?z))))
(forall(?x ?y ?z)(when (cube4 ?x ?y ?z)
  (and (cube3 ?y ?x ?z))))
(forall(?x ?y ?z)(when (cube2 ?x ?y ?z)
  (and (cube4 ?y ?x ?z))))
;for edge cubelets
(forall(?x ?z)(when (edge13 ?x ?z)
  (and (edge12 ?x ?z))))
(forall(?y ?z)(when (edge34 ?y ?z)
  (and (edge13 ?y ?z))))
(forall(?x ?z)(when (edge24 ?x ?z)
  (and (edge34 ?x ?z))))
(forall(?y ?z)(when (edge12 ?y ?z)
  (and (edge24 ?y ?z))))))";

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn l_block(domain: &str) -> &str {
    let start = domain.find("(:action L\n").unwrap();
    let end = domain[start..].find(";vacated").unwrap();
    &domain[start..start + end]
}

#[test]
fn emitted_l_contains_the_reference_clause() {
    let d = emit_domain(Variant::M1);
    assert!(squash(&d).contains(&squash("(when (cube1 ?x ?y ?z) (and (cube2 ?y ?x ?z)))")));
}

#[test]
fn emitted_l_effects_match_the_reference_line_for_line() {
    let d = emit_domain(Variant::M2);
    let ours = squash(l_block(&d)).replace(":parameters()", "");
    let reference = squash(REFERENCE_L);
    // The reference text closes the action right after the edge effects.
    let reference_body = reference.strip_suffix("))").unwrap();
    assert_eq!(ours, reference_body);
}

#[test]
fn reference_parses_to_our_l_add_effects() {
    let parsed = parse_action(REFERENCE_L).unwrap();
    let ours = build_action("L".parse().unwrap());
    assert_eq!(parsed.corner_effects, ours.corner_effects);
    assert_eq!(parsed.edge_effects, ours.edge_effects);
    assert!(parsed.clears.is_empty());
}

#[test]
fn add_only_reference_semantics_would_leave_stale_atoms() {
    // Without deletes the vacated slots keep their old atoms as well.
    let reference = parse_action(REFERENCE_L).unwrap();
    let after = symbolic_apply(&reference, &encode(&CubeState::SOLVED));
    assert_eq!(after.atoms.len(), 28);
    assert!(!after.is_well_formed());
}

#[test]
fn parsed_domains_agree_with_the_engine() {
    for v in [Variant::M1, Variant::M2] {
        let model = parse_domain(&emit_domain(v)).unwrap();
        assert_eq!(model, build_domain(v));
        let set: ActionSet = v.action_set();
        let s = CubeState::SOLVED.apply_plan(&rcplan_core::cube::parse_moves("R U2 Frev B L Drev").unwrap());
        for a in &model.actions {
            assert!(set.contains(a.name));
            assert_eq!(symbolic_apply(a, &encode(&s)), encode(&s.apply_move(a.name)), "{}", a.name);
        }
    }
}

#[test]
fn l_on_solved_swaps_the_first_two_colours_of_cube1() {
    let l: Move = "L".parse().unwrap();
    let a = build_action(l);
    let after = symbolic_apply(&a, &encode(&CubeState::SOLVED));
    let before = encode(&CubeState::SOLVED);
    let c1 = before.atoms.iter().find(|x| x.cubelet.name() == "cube1").unwrap();
    let c2 = after.atoms.iter().find(|x| x.cubelet.name() == "cube2").unwrap();
    assert_eq!(c2.args(), &[c1.args()[1], c1.args()[0], c1.args()[2]]);
    let mut s = encode(&CubeState::SOLVED);
    for _ in 0..4 {
        s = symbolic_apply(&a, &s);
    }
    assert_eq!(s, encode(&CubeState::SOLVED));
}
