use nervekit::cover::{builtin_cover, whitehead_pipeline};
use nervekit::{Error, DEFAULT_CAP};

#[test]
fn torus_pipeline_agrees_at_trunc_three() {
    let cov = builtin_cover("torus").unwrap();
    let report = whitehead_pipeline(&cov, 3, 4_000_000).unwrap();
    assert!(report.agree, "{:?}", report.mismatch);
    assert_eq!(report.checked_through, 2);
    for stage in &report.stages {
        let betti: Vec<usize> = (0..3).map(|k| stage.homology.degree(k).map_or(0, |d| d.betti)).collect();
        assert_eq!(betti, vec![1, 2, 1], "{}", stage.name);
    }
}

#[test]
fn torus_pipeline_hits_the_default_cap() {
    let cov = builtin_cover("torus").unwrap();
    assert!(matches!(whitehead_pipeline(&cov, 3, DEFAULT_CAP), Err(Error::CapExceeded { .. })));
}
