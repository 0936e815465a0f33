mod common;

#[test]
fn snf_matches_determinantal_divisors() {
    common::run_property("snf_matches_determinantal_divisors").unwrap();
}

#[test]
fn nielsen_schreier_rank() {
    common::run_property("nielsen_schreier_rank").unwrap();
}

#[test]
fn corrupted_tables_are_rejected() {
    common::run_property("corrupted_tables_are_rejected").unwrap();
}

#[test]
fn free_reduction_laws() {
    common::run_property("free_reduction_laws").unwrap();
}

#[test]
fn substitution_is_a_homomorphism_of_free_groups() {
    common::run_property("substitution_is_a_homomorphism_of_free_groups").unwrap();
}

#[test]
fn word_text_round_trips() {
    common::run_property("word_text_round_trips").unwrap();
}

#[test]
fn keys_ignore_listing_order() {
    common::run_property("keys_ignore_listing_order").unwrap();
}

#[test]
fn extra_blow_ups_only_lower_self_intersection() {
    common::run_property("extra_blow_ups_only_lower_self_intersection").unwrap();
}

#[test]
fn hom_check_agrees_with_the_regular_action() {
    common::run_property("hom_check_agrees_with_the_regular_action").unwrap();
}
