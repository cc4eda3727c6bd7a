use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::bar::{Bar, BarEx, Diagram, Weight};
use crate::cover::cech::cech_nerve;
use crate::cover::cech::Sections;
use crate::cover::complex::{CoverComplex, ReferenceGroup};
use crate::cover::maps::CoverMaps;
use crate::cover::rlp::{check_rlp_tables, RlpReport};
use crate::homology::{weq_certificate, WeqCertificate};
use crate::error::{invalid, Result};
use crate::homology::{homology_of, HomologyResult};
use crate::poset::FiniteCategory;

#[derive(Clone, Debug, Serialize)]
pub struct PipelineStage {
    pub name: String,
    pub cells: Vec<usize>,
    pub homology: HomologyResult,
    /// Wall time; kept out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineMismatch {
    pub stage: String,
    pub degree: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub trunc: usize,
    /// Degrees `0..=checked_through` are compared.
    pub checked_through: usize,
    pub stages: Vec<PipelineStage>,
    pub reference: Option<Vec<ReferenceGroup>>,
    pub agree: bool,
    pub mismatch: Option<PipelineMismatch>,
}

fn group_of(h: &HomologyResult, k: usize) -> ReferenceGroup {
    h.degree(k)
        .map_or(ReferenceGroup { betti: 0, torsion: Vec::new() }, |d| ReferenceGroup { betti: d.betti, torsion: d.torsion.clone() })
}

fn show(g: &ReferenceGroup) -> String {
    let h = HomologyResult {
        degrees: vec![crate::homology::DegreeHomology { degree: 0, betti: g.betti, torsion: g.torsion.clone(), unreliable: false }],
    };
    let s = h.to_string();
    s[1..s.len() - 1].to_string()
}

/// Homology of `ČU`, `B(*, Σ^op, *)` and `B_Ex(*, Σ^op, *)` (every nonempty intersection a
/// point), compared with each other and with the cover's reference homology in degrees
/// `≤ trunc − 1`. Without a reference only the stages are compared.
pub fn whitehead_pipeline(cov: &CoverComplex, trunc: usize, cap: usize) -> Result<PipelineReport> {
    if trunc == 0 {
        return Err(invalid("the pipeline needs trunc ≥ 1"));
    }
    let shape = Arc::new(FiniteCategory::from_poset(&cov.poset().opposite()));
    let mut stages = Vec::new();
    let mut run = |name: &str, build: &dyn Fn() -> Result<Arc<crate::simplicial::SimplicialSet>>| -> Result<()> {
        let t = Instant::now();
        let x = build()?;
        let homology = homology_of(&x, trunc)?;
        stages.push(PipelineStage {
            name: name.to_string(),
            cells: x.generator_counts(),
            homology,
            seconds: t.elapsed().as_secs_f64(),
        });
        Ok(())
    };
    run("cech", &|| Ok(Arc::new(cech_nerve(cov, trunc)?)))?;
    run("bar", &|| Ok(Bar::new(&Weight::point(shape.clone()), &Diagram::point(shape.clone()), trunc)?.set().clone()))?;
    run("bar_ex", &|| {
        Ok(BarEx::new(&Weight::point(shape.clone()), &Diagram::point(shape.clone()), trunc, cap)?.set().clone())
    })?;

    let through = trunc - 1;
    let mut mismatch = None;
    'degrees: for k in 0..=through {
        let expected = match cov.reference() {
            Some(r) => r.get(k).cloned().unwrap_or(ReferenceGroup { betti: 0, torsion: Vec::new() }),
            None => group_of(&stages[0].homology, k),
        };
        for s in &stages {
            let found = group_of(&s.homology, k);
            if found != expected {
                mismatch = Some(PipelineMismatch {
                    stage: s.name.clone(),
                    degree: k,
                    expected: show(&expected),
                    found: show(&found),
                });
                break 'degrees;
            }
        }
    }
    Ok(PipelineReport {
        trunc,
        checked_through: through,
        agree: mismatch.is_none(),
        mismatch,
        stages,
        reference: cov.reference().map(<[_]>::to_vec),
    })
}

/// Everything the CLI reports for a cover: the homology pipeline, the certificate for
/// `ψ: ČU → B_Ex`, the factorization `φ ∘ ψ = (ČU ↪ ČU^cl)` and the lifting property of `φ`
/// up to `min(trunc, 3)`, all on the witnessed sections.
#[derive(Clone, Debug, Serialize)]
pub struct WhiteheadReport {
    pub passed: bool,
    pub sections: Sections,
    pub pipeline: PipelineReport,
    pub psi: WeqCertificate,
    pub factorization: bool,
    pub rlp: RlpReport,
}

pub fn whitehead_report(cov: &CoverComplex, trunc: usize, cap: usize) -> Result<WhiteheadReport> {
    let pipeline = whitehead_pipeline(cov, trunc, cap)?;
    let sections = Sections::Witnessed;
    let maps = CoverMaps::new(cov, sections, trunc, cap)?;
    let psi = maps.psi()?;
    let cert = weq_certificate(&psi, trunc)?;
    let factorization = maps.phi()?.after(&psi)? == maps.inclusion()?;
    let phi = maps.phi_table()?;
    let lift = |n: usize, b: &[u32], v: u32| maps.constructive_lift(n, b, v);
    let rlp = check_rlp_tables(maps.bar_ex.tab.table(), maps.closure.table(), &phi, trunc.min(3), cap, Some(&lift))?;
    Ok(WhiteheadReport {
        passed: pipeline.agree && cert.passed && factorization && rlp.passed,
        sections,
        pipeline,
        psi: cert,
        factorization,
        rlp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::complex::builtin_cover;
    use crate::DEFAULT_CAP;

    #[test]
    fn whitehead_report_passes_on_the_circle() {
        let r = whitehead_report(&builtin_cover("circle").unwrap(), 2, crate::DEFAULT_CAP).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(!serde_json::to_string(&r).unwrap().contains("seconds"));
    }

    #[test]
    fn circle_and_interval_agree() {
        for name in ["interval", "circle"] {
            let r = whitehead_pipeline(&builtin_cover(name).unwrap(), 3, DEFAULT_CAP).unwrap();
            assert!(r.agree, "{name}: {:?}", r.mismatch);
        }
    }

    #[test]
    fn wrong_reference_is_reported() {
        let cov = builtin_cover("circle").unwrap().with_reference(vec![
            ReferenceGroup { betti: 1, torsion: Vec::new() },
            ReferenceGroup { betti: 0, torsion: Vec::new() },
        ]);
        let r = whitehead_pipeline(&cov, 2, DEFAULT_CAP).unwrap();
        let m = r.mismatch.unwrap();
        assert_eq!((m.stage.as_str(), m.degree), ("cech", 1));
        assert_eq!((m.expected.as_str(), m.found.as_str()), ("0", "Z"));
    }
}
