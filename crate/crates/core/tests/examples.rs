//! Every example under examples/ runs to completion.

#[allow(dead_code)]
#[path = "../examples/snf_and_groups.rs"]
mod snf_and_groups;

#[test]
fn snf_and_groups_runs() {
    snf_and_groups::run_example().expect("example runs");
}

#[allow(dead_code)]
#[path = "../examples/classify_extension.rs"]
mod classify_extension;

#[test]
fn classify_extension_runs() {
    classify_extension::run_example().expect("example runs");
}

#[allow(dead_code)]
#[path = "../examples/cohomotopy_table.rs"]
mod cohomotopy_table;

#[test]
fn cohomotopy_table_runs() {
    cohomotopy_table::run_example().expect("example runs");
}

#[allow(dead_code)]
#[path = "../examples/ko_groups.rs"]
mod ko_groups;

#[test]
fn ko_groups_runs() {
    ko_groups::run_example().expect("example runs");
}

#[allow(dead_code)]
#[path = "../examples/normal_invariants.rs"]
mod normal_invariants;

#[test]
fn normal_invariants_runs() {
    normal_invariants::run_example().expect("example runs");
}

#[allow(dead_code)]
#[path = "../examples/structure_sets.rs"]
mod structure_sets;

#[test]
fn structure_sets_runs() {
    structure_sets::run_example().expect("example runs");
}

#[allow(dead_code)]
#[path = "../examples/custom_tables.rs"]
mod custom_tables;

#[test]
fn custom_tables_runs() {
    custom_tables::run_example().expect("example runs");
}
