//! Agreement between the splitting-profile catalog and exhaustive
//! enumeration over inertia fixtures whose ranks follow local-degree
//! counting, plus the decomposition-side analogues and the `s <= d - 1`
//! bounds.

use iwagr_core::genericity::SubmoduleFamily;
use iwagr_core::invariants::{
    check_decomposition_ranks, s_from_inertia, s_prime_from_decomposition, FieldClass,
    InertiaData, PrimeSplit, SplittingProfile,
};
use iwagr_core::padic::{PadicCtx, PadicMatrix};

fn ctx() -> PadicCtx {
    PadicCtx::new(3, 8).unwrap()
}

fn cols(c: PadicCtx, d: usize, columns: &[&[i64]]) -> PadicMatrix {
    let mut m = PadicMatrix::zero(c, d, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            m.set(r, j, c.residue_of_i64(x));
        }
    }
    m
}

fn profile(class: FieldClass, degree: u32, r2: u32, primes: &[(u32, u32)]) -> SplittingProfile {
    SplittingProfile::new(
        class,
        degree,
        r2,
        primes.iter().map(|&(e, f)| PrimeSplit { e, f }).collect(),
        0,
        None,
    )
    .unwrap()
}

/// Catalog profiles paired with inertia fixtures: every inertia subgroup
/// has rank equal to the local degree of its prime (capped at d), placed in
/// general position.
fn catalog_fixtures() -> Vec<(SplittingProfile, InertiaData)> {
    let c = ctx();
    let line = |d: usize, col: &[i64]| cols(c, d, &[col]);
    let mut out = Vec::new();

    // imaginary quadratic, p split: two rank-1 inertia lines in d = 2
    out.push((
        profile(FieldClass::ImaginaryQuadratic, 2, 1, &[(1, 1), (1, 1)]),
        InertiaData::new(
            SubmoduleFamily::new(2, 1, vec![line(2, &[1, 0]), line(2, &[0, 1])]).unwrap(),
            None,
        )
        .unwrap(),
    ));
    // imaginary quadratic, p inert: one full-rank inertia group
    out.push((
        profile(FieldClass::ImaginaryQuadratic, 2, 1, &[(1, 2)]),
        InertiaData::new(
            SubmoduleFamily::new(2, 1, vec![PadicMatrix::identity(c, 2)]).unwrap(),
            None,
        )
        .unwrap(),
    ));
    // complex cubic, p split completely: three lines in d = 2
    out.push((
        profile(FieldClass::ComplexCubic, 3, 1, &[(1, 1), (1, 1), (1, 1)]),
        InertiaData::new(
            SubmoduleFamily::new(
                2,
                1,
                vec![line(2, &[1, 0]), line(2, &[0, 1]), line(2, &[1, 1])],
            )
            .unwrap(),
            None,
        )
        .unwrap(),
    ));
    // complex cubic, two primes: degree-one line plus a full-rank group
    out.push((
        profile(FieldClass::ComplexCubic, 3, 1, &[(1, 1), (1, 2)]),
        InertiaData::new(
            SubmoduleFamily::new(2, 1, vec![line(2, &[1, 0]), PadicMatrix::identity(c, 2)])
                .unwrap(),
            None,
        )
        .unwrap(),
    ));
    // complex cubic, one prime
    out.push((
        profile(FieldClass::ComplexCubic, 3, 1, &[(1, 3)]),
        InertiaData::new(
            SubmoduleFamily::new(2, 1, vec![PadicMatrix::identity(c, 2)]).unwrap(),
            None,
        )
        .unwrap(),
    ));
    // quartic, four primes: four lines in general position in d = 3
    out.push((
        profile(
            FieldClass::TotallyImaginaryQuartic,
            4,
            2,
            &[(1, 1), (1, 1), (1, 1), (1, 1)],
        ),
        InertiaData::new(
            SubmoduleFamily::new(
                3,
                1,
                vec![
                    line(3, &[1, 0, 0]),
                    line(3, &[0, 1, 0]),
                    line(3, &[0, 0, 1]),
                    line(3, &[1, 1, 1]),
                ],
            )
            .unwrap(),
            None,
        )
        .unwrap(),
    ));
    // quartic, three primes: two lines and a rank-2 group
    out.push((
        profile(
            FieldClass::TotallyImaginaryQuartic,
            4,
            2,
            &[(1, 1), (1, 1), (1, 2)],
        ),
        InertiaData::new(
            SubmoduleFamily::new(
                3,
                1,
                vec![
                    line(3, &[1, 0, 0]),
                    line(3, &[0, 1, 0]),
                    cols(c, 3, &[&[0, 0, 1], &[1, 1, 0]]),
                ],
            )
            .unwrap(),
            None,
        )
        .unwrap(),
    ));
    // quartic, two primes of degree two: two rank-2 groups sharing a line
    out.push((
        profile(FieldClass::TotallyImaginaryQuartic, 4, 2, &[(1, 2), (1, 2)]),
        InertiaData::new(
            SubmoduleFamily::new(
                3,
                1,
                vec![
                    cols(c, 3, &[&[1, 0, 0], &[0, 1, 0]]),
                    cols(c, 3, &[&[0, 1, 0], &[0, 0, 1]]),
                ],
            )
            .unwrap(),
            None,
        )
        .unwrap(),
    ));
    // quartic, one prime
    out.push((
        profile(FieldClass::TotallyImaginaryQuartic, 4, 2, &[(1, 4)]),
        InertiaData::new(
            SubmoduleFamily::new(3, 1, vec![PadicMatrix::identity(c, 3)]).unwrap(),
            None,
        )
        .unwrap(),
    ));
    out
}

#[test]
fn catalog_agrees_with_enumeration_on_every_fixture() {
    for (profile, data) in catalog_fixtures() {
        let expected = profile.s_catalog().unwrap();
        let report = s_from_inertia(&data, 1).unwrap();
        assert_eq!(
            report.s as u32, expected,
            "catalog {expected} but enumeration found {} for {:?} with {} primes",
            report.s,
            profile.class(),
            profile.primes_above_p().len()
        );
        assert_eq!(report.stable_at_next_level, Some(true));
        // 0 <= s <= d - 1
        assert!(expected <= profile.d_of_k() - 1);
        // the generic value dominates the admissible classes
        assert!(report.attaining * 2 > report.admissible);
    }
}

#[test]
fn decomposition_analogue_catalog() {
    let c = ctx();
    // a single full-rank decomposition group forces s' = 0
    let inertia = SubmoduleFamily::new(2, 1, vec![cols(c, 2, &[&[1, 0]])]).unwrap();
    let single = InertiaData::new(
        inertia.clone(),
        Some(SubmoduleFamily::new(2, 1, vec![PadicMatrix::identity(c, 2)]).unwrap()),
    )
    .unwrap();
    assert_eq!(s_prime_from_decomposition(&single, 1).unwrap().s, 0);
    assert!(check_decomposition_ranks(&single).unwrap());

    // d - 1 independent rank-1 decomposition groups give s' = d - 1
    let d = 3;
    let lines = SubmoduleFamily::new(
        d,
        1,
        vec![cols(c, d, &[&[1, 0, 0]]), cols(c, d, &[&[0, 1, 0]])],
    )
    .unwrap();
    let spread = InertiaData::new(
        SubmoduleFamily::new(d, 1, vec![PadicMatrix::identity(c, d)]).unwrap(),
        Some(lines),
    )
    .unwrap();
    let report = s_prime_from_decomposition(&spread, 1).unwrap();
    assert_eq!(report.s, d - 1);
    assert!(!check_decomposition_ranks(&spread).unwrap());

    // abelian-style fixture: overlapping rank-2 groups drive s' to 0
    let abelian = InertiaData::new(
        SubmoduleFamily::new(3, 1, vec![PadicMatrix::identity(c, 3)]).unwrap(),
        Some(
            SubmoduleFamily::new(
                3,
                1,
                vec![
                    cols(c, 3, &[&[1, 0, 0], &[0, 1, 0]]),
                    cols(c, 3, &[&[1, 0, 0], &[0, 0, 1]]),
                    cols(c, 3, &[&[0, 1, 0], &[0, 0, 1]]),
                ],
            )
            .unwrap(),
        ),
    )
    .unwrap();
    let report = s_prime_from_decomposition(&abelian, 1).unwrap();
    assert_eq!(report.s, 0);
    assert!(check_decomposition_ranks(&abelian).unwrap());
    assert!(report.s <= 3 - 1);
}
