macro_rules! example_test {
    ($test:ident, $module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(groups_example_runs, groups_example, "groups.rs");
example_test!(homology_example_runs, homology_example, "homology.rs");
example_test!(truncation_example_runs, truncation_example, "truncation.rs");
example_test!(factor_lift_example_runs, factor_lift_example, "factor_lift.rs");
example_test!(towers_example_runs, towers_example, "towers.rs");
example_test!(whitehead_example_runs, whitehead_example, "whitehead.rs");
example_test!(ahss_example_runs, ahss_example, "ahss.rs");
example_test!(pro_ahss_example_runs, pro_ahss_example, "pro_ahss.rs");
example_test!(workspace_example_runs, workspace_example, "workspace.rs");
