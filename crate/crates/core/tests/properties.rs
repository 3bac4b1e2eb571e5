//! Property suites; each runs `common::CASES` randomized cases.

mod common;

macro_rules! suites {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = common::$name() {
                    panic!("{e}");
                }
            }
        )*
    };
}

suites!(
    bar_differential_squares_to_zero,
    coboundaries_are_recognized,
    bar_and_cyclic_cohomology_agree,
    smith_form_reconstructs,
    tower_inverse,
    norms_have_trivial_invariants,
    charts_agree_at_every_class,
    cube_scaling_preserves_invariants,
    single_denominator_charts_agree,
    enumeration_is_independent_of_jobs,
    reports_are_independent_of_jobs,
);

#[test]
fn scaling_by_one_is_the_identity() {
    let base = brauer_manin::azumaya::cassels_guy_class();
    assert_eq!(base.scaled_by_cube(&brauer_manin::eisenstein::EisensteinNumber::one()), base);
}
