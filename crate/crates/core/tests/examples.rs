//! Every cargo example runs to completion.

mod groupoid_basics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/groupoid_basics.rs"));
}

#[test]
fn groupoid_basics_runs() {
    groupoid_basics::run_example().expect("groupoid_basics example");
}

mod affine_congruence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/affine_congruence.rs"));
}

#[test]
fn affine_congruence_runs() {
    affine_congruence::run_example().expect("affine_congruence example");
}

mod semi_inner_product {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/semi_inner_product.rs"));
}

#[test]
fn semi_inner_product_runs() {
    semi_inner_product::run_example().expect("semi_inner_product example");
}

mod scalar_sets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scalar_sets.rs"));
}

#[test]
fn scalar_sets_runs() {
    scalar_sets::run_example().expect("scalar_sets example");
}

mod groupoid_norm {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/groupoid_norm.rs"));
}

#[test]
fn groupoid_norm_runs() {
    groupoid_norm::run_example().expect("groupoid_norm example");
}

mod polarization {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/polarization.rs"));
}

#[test]
fn polarization_runs() {
    polarization::run_example().expect("polarization example");
}

mod documents_and_cli {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/documents_and_cli.rs"));
}

#[test]
fn documents_and_cli_runs() {
    documents_and_cli::run_example().expect("documents_and_cli example");
}

mod random_corpus {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/random_corpus.rs"));
}

#[test]
fn random_corpus_runs() {
    random_corpus::run_example().expect("random_corpus example");
}
