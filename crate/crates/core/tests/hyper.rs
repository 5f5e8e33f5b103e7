use std::collections::BTreeMap;

use epsexp::combinatorics::binom_int;
use epsexp::hyper::{
    delta_dual_expand, expand_closed, expand_general, expand_general_with, regroup_total_degree, ClosedForm, Execution,
    ExpansionTable, HyperTermSpec,
};
use epsexp::{rat, Params, Rational};

const GOLDEN: &str = include_str!("data/f5_tables.csv");

fn golden() -> BTreeMap<(i32, u32, u32), Rational> {
    GOLDEN
        .lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            (
                (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap()),
                f[3].parse().unwrap(),
            )
        })
        .collect()
}

fn delta_params(delta: &Rational) -> Params {
    [("delta".to_string(), delta.clone())].into()
}

fn closed(form: ClosedForm, k: i32, deg: u32, delta: &Rational) -> ExpansionTable {
    expand_closed(form, k, deg, &delta_params(delta)).unwrap()
}

#[test]
fn f5_reproduces_golden_tables() {
    let table = regroup_total_degree(&closed(ClosedForm::F5, 3, 5, &rat(0, 1))).unwrap();
    let golden = golden();
    assert_eq!(golden.len(), 84);
    assert_eq!(table.entries, golden);
    assert_eq!(table.get(0, 2, 0), Some(&rat(5, 16)));
    assert_eq!(table.get(1, 2, 2), Some(&rat(5, 48)));
    assert_eq!(table.get(2, 5, 5), Some(&rat(32683, 614400)));
    assert_eq!(table.get(3, 4, 4), Some(&rat(1075991, 27648000)));
}

#[test]
fn f5_engine_reproduces_golden_tables() {
    let table = expand_general(&ClosedForm::F5.spec(&rat(0, 1)), 3, 5).unwrap();
    assert_eq!(regroup_total_degree(&table).unwrap().entries, golden());
}

#[test]
fn closed_forms_match_engine() {
    for form in ClosedForm::ALL {
        if form == ClosedForm::DF7DDelta {
            continue;
        }
        let deltas = if form.needs_delta() {
            vec![rat(0, 1), rat(1, 3)]
        } else {
            vec![rat(0, 1)]
        };
        for delta in deltas {
            let engine = expand_general(&form.spec(&delta), 4, 8).unwrap();
            assert_eq!(closed(form, 4, 8, &delta), engine, "{form} delta={delta}");
        }
    }
}

#[test]
fn leading_layer_is_squared_binomial() {
    for form in [ClosedForm::F1, ClosedForm::F2, ClosedForm::F3, ClosedForm::F4] {
        let t = closed(form, 0, 10, &rat(0, 1));
        for (&(_, m1, m2), v) in &t.entries {
            let c = binom_int((m1 + m2) as i64, m1 as i64);
            assert_eq!(*v, &c * &c, "{form} m1={m1} m2={m2}");
        }
        assert_eq!(t.len(), 66);
    }
}

#[test]
fn swap_symmetries() {
    let zero = rat(0, 1);
    for form in [ClosedForm::F1, ClosedForm::F4] {
        let t = closed(form, 4, 8, &zero);
        assert_eq!(t.swapped(), t, "{form}");
    }
    assert_eq!(
        closed(ClosedForm::F3, 4, 8, &zero),
        closed(ClosedForm::F2, 4, 8, &zero).swapped()
    );
}

#[test]
fn alternative_representations_agree() {
    let zero = rat(0, 1);
    assert_eq!(
        closed(ClosedForm::F4, 4, 8, &zero),
        closed(ClosedForm::F4Alt, 4, 8, &zero)
    );
    for delta in [rat(1, 3), rat(1, 5)] {
        assert_eq!(
            closed(ClosedForm::F6, 4, 8, &delta),
            closed(ClosedForm::F6Alt, 4, 8, &delta),
            "delta={delta}"
        );
    }
}

#[test]
fn delta_derivative_matches_dual_expansion() {
    let dual = delta_dual_expand(&ClosedForm::F7.spec(&rat(0, 1)), 3, 6).unwrap();
    let closed = expand_closed(ClosedForm::DF7DDelta, 3, 6, &Params::new()).unwrap();
    assert_eq!(closed, dual);
}

#[test]
fn execution_modes_are_identical() {
    let spec = ClosedForm::F6.spec(&rat(1, 3));
    let seq = expand_general_with(&spec, 3, 7, Execution::Sequential).unwrap();
    let par = expand_general_with(&spec, 3, 7, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn spec_files_round_trip_through_the_parser() {
    let text = "\
[function]
name = F5
[numerator]
poch = 1 0 : 0 1 1
poch = 1/2 0 : 0 1 0
poch = 3/2 -1 : 0 0 1
[denominator]
poch = 2 -1 : 0 1 0
poch = 3 -2 : 0 0 1
[options]
eps_order = 3
degree_bound = 5
regroup = total
";
    let spec: HyperTermSpec = text.parse().unwrap();
    let t = expand_general(&spec, 3, 5).unwrap();
    assert_eq!(regroup_total_degree(&t).unwrap().entries, golden());
}
