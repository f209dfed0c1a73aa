macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(term_order, "term_order.rs", term_order_example_runs);
example!(model_checking, "model_checking.rs", model_checking_example_runs);
example!(semipublic_update, "semipublic_update.rs", semipublic_update_example_runs);
example!(product_update, "product_update.rs", product_update_example_runs);
example!(axiom_suite, "axiom_suite.rs", axiom_suite_example_runs);
example!(fl_closure, "fl_closure.rs", fl_closure_example_runs);
