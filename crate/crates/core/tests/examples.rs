//! Every example runs to completion.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " runs"));
        }
    };
}

example!(hyperbolic_metric, "hyperbolic_metric.rs");
example!(blaschke_products, "blaschke_products.rs");
example!(critical_points, "critical_points.rs");
example!(barcodes, "barcodes.rs");
example!(bottleneck_distance, "bottleneck_distance.rs");
example!(degree_two_moduli, "degree_two_moduli.rs");
example!(stability_bound, "stability_bound.rs");
example!(level_set_oracle, "level_set_oracle.rs");
example!(zero_counting, "zero_counting.rs");
example!(grid_dump, "grid_dump.rs");
example!(property_suites, "property_suites.rs");
example!(plots, "plots.rs");
example!(spec_files, "spec_files.rs");
