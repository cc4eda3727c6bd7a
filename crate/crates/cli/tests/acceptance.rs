//! Acceptance suite: one PASS/FAIL line per criterion. Every criterion runs even when an
//! earlier one fails; the test fails at the end if any line is FAIL.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nervekit::affine::affine_check;
use nervekit::bar::{bar_comparison, dugger_q, dugger_q_ex, Diagram, SetFunctor, Variance, Weight};
use nervekit::cover::{check_rlp_tables, whitehead_pipeline, CoverComplex, CoverMaps, Sections};
use nervekit::homology::{homology_of, smith_normal_form, weq_certificate, HomologyResult, IntMatrix};
use nervekit::json::{BarInputJson, BisimplicialSetJson, CategoryJson, CoverJson, PosetJson, SimplicialSetJson};
use nervekit::poset::{ex, ex_nerve_poset, last_vertex_map, nerve, nerve_poset, sd_simplex, FiniteCategory, FinitePoset, Morphism};
use nervekit::segal::{completeness_check, segal_check};
use nervekit::simplicial::{
    are_isomorphic, boundary_simplex, external_product, minimal_torus, standard_simplex, SimplexRef, SimplicialSet,
};
use nervekit::DEFAULT_CAP;

use common::{fixture, fixture_runs, run};

type Verdict = Result<String, String>;

fn load<T: for<'de> serde::Deserialize<'de>>(name: &str) -> T {
    serde_json::from_str(&std::fs::read_to_string(fixture(name)).expect("fixture")).expect("fixture JSON")
}

fn cover(name: &str) -> CoverComplex {
    load::<CoverJson>(&format!("{name}_cover.json")).build().expect("cover")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

/// Groups in degrees `< k`, zero above the computed range.
fn groups(h: &HomologyResult, k: usize) -> Vec<(usize, Vec<BigInt>)> {
    (0..k).map(|d| h.degree(d).map_or((0, Vec::new()), |g| (g.betti, g.torsion.clone()))).collect()
}

/// 1. Cech, bar and bar_ex stages agree with the homology of the modelled spaces.
fn pipelines() -> Verdict {
    let cases = [("interval", None), ("circle", Some(boundary_simplex(2))), ("sphere", Some(boundary_simplex(3)))];
    let mut notes = Vec::new();
    for (name, space) in cases {
        let start = Instant::now();
        let report = whitehead_pipeline(&cover(name), 3, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let t = within(start, Duration::from_secs(5), name)?;
        let k = report.checked_through + 1;
        let expected = match &space {
            Some(x) => groups(&homology_of(x, 3).map_err(|e| e.to_string())?, k),
            None => (0..k).map(|d| (usize::from(d == 0), Vec::new())).collect(),
        };
        for stage in &report.stages {
            ensure(groups(&stage.homology, k) == expected, || {
                format!("{name}: stage {} gives {}, oracle {expected:?}", stage.name, stage.homology)
            })?;
        }
        ensure(report.agree, || format!("{name}: {:?}", report.mismatch))?;
        let shown = HomologyResult { degrees: report.stages[0].homology.degrees[..k].to_vec() };
        notes.push(format!("{name} {shown} in {t:.1?}"));
    }
    Ok(notes.join("; "))
}

/// 2. The comparison B → B_Ex is certified on the bar corpus.
fn bar_comparisons() -> Verdict {
    let start = Instant::now();
    let mut inputs: Vec<(String, Weight, Diagram)> = Vec::new();
    for name in ["circle_bar.json", "pushout_bar.json"] {
        let (w, d) = load::<BarInputJson>(name).build().map_err(|e| e.to_string())?;
        inputs.push((name.into(), w, d));
    }
    let sphere = cover("sphere");
    let sigma = Arc::new(FiniteCategory::from_poset(&sphere.poset().opposite()));
    inputs.push(("sphere cover".into(), Weight::point(sigma.clone()), Diagram::point(sigma)));
    let two = Arc::new(FiniteCategory::from_poset(&FinitePoset::ordinal(2)));
    inputs.push(("points on [2]".into(), Weight::point(two.clone()), Diagram::point(two.clone())));
    inputs.push(("y(1) on [2]".into(), Weight::representable(two.clone(), 1), Diagram::point(two.clone())));
    let one = Arc::new(FiniteCategory::from_poset(&FinitePoset::ordinal(1)));
    inputs.push(("S^0 weight on [1]".into(), Weight::constant(one.clone(), boundary_simplex(1)), Diagram::point(one)));
    for (name, w, d) in &inputs {
        let f = bar_comparison(w, d, 3, DEFAULT_CAP).map_err(|e| format!("{name}: {e}"))?;
        let cert = weq_certificate(&f, 3).map_err(|e| format!("{name}: {e}"))?;
        ensure(cert.passed && cert.degrees == 3, || format!("{name}: {cert:?}"))?;
    }
    let t = within(start, Duration::from_secs(10), "bar comparisons")?;
    Ok(format!("{} diagrams in {t:.1?}", inputs.len()))
}

/// 3. φ has the lifting property against ∂Δ^n ↪ Δ^n for n ≤ 3, and the union lift is genuine.
fn trivial_fibration() -> Verdict {
    let start = Instant::now();
    let mut notes = Vec::new();
    for name in ["interval", "circle", "sphere"] {
        let cov = cover(name);
        if cov.patch_count() > 4 {
            continue;
        }
        let maps = CoverMaps::new(&cov, Sections::Witnessed, 3, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let phi = maps.phi_table().map_err(|e| e.to_string())?;
        let lift = |n: usize, b: &[u32], v: u32| maps.constructive_lift(n, b, v);
        let r = check_rlp_tables(maps.bar_ex.tab.table(), maps.closure.table(), &phi, 3, DEFAULT_CAP, Some(&lift))
            .map_err(|e| e.to_string())?;
        ensure(r.lifts_exist, || format!("{name}: missing lifts {:?}", r.failures))?;
        ensure(r.constructive_valid == Some(true), || format!("{name}: union lift failed {:?}", r.failures))?;
        for level in r.levels.iter().filter(|l| l.n > 1) {
            ensure(level.constructive_checked == level.squares && level.constructive_valid == level.squares, || {
                format!("{name}: union lift covered {} of {} squares at n = {}", level.constructive_valid, level.squares, level.n)
            })?;
        }
        let squares: usize = r.levels.iter().map(|l| l.squares).sum();
        notes.push(format!("{name} {squares} squares"));
    }
    let t = within(start, Duration::from_secs(60), "lifting check")?;
    Ok(format!("{} (witnessed sections) in {t:.1?}", notes.join(", ")))
}

/// 4. φ ∘ ψ is the inclusion ČU ↪ ČU^cl, cell by cell.
fn factorization() -> Verdict {
    let mut notes = Vec::new();
    for (name, trunc) in [("interval", 3), ("circle", 3), ("sphere", 3), ("torus", 2)] {
        let cov = cover(name);
        for sections in [Sections::Collapsed, Sections::Witnessed] {
            let maps = CoverMaps::new(&cov, sections, trunc, DEFAULT_CAP).map_err(|e| e.to_string())?;
            let psi = maps.psi().map_err(|e| e.to_string())?;
            let composite = maps.phi().and_then(|phi| phi.after(&psi)).map_err(|e| e.to_string())?;
            let inclusion = maps.inclusion().map_err(|e| e.to_string())?;
            ensure(composite == inclusion, || format!("{name} ({sections:?}): φψ differs from the inclusion"))?;
            // cellwise, on every tabulated simplex
            for n in 0..=trunc {
                for cell in maps.cech.assembled.cells(n) {
                    let via = maps.psi_cell(n, cell).map(|b| maps.phi_cell(n, &b));
                    ensure(via.as_deref() == Some(&*maps.inclusion_cell(cell)), || {
                        format!("{name} ({sections:?}): cell {cell:?} in dimension {n}")
                    })?;
                }
            }
        }
        notes.push(format!("{name} (trunc {trunc})"));
    }
    Ok(format!("{} under both sections", notes.join(", ")))
}

/// 5. The last-vertex map X → Ex X is certified.
fn last_vertex() -> Verdict {
    let start = Instant::now();
    for (name, x) in [("∂Δ^2", boundary_simplex(2)), ("∂Δ^3", boundary_simplex(3)), ("sd Δ^2", sd_simplex(2))] {
        let f = last_vertex_map(&x, 3).map_err(|e| format!("{name}: {e}"))?;
        let cert = weq_certificate(&f, 3).map_err(|e| format!("{name}: {e}"))?;
        ensure(cert.passed, || format!("{name}: {cert:?}"))?;
    }
    let t = within(start, Duration::from_secs(30), "last-vertex maps")?;
    Ok(format!("3 inputs at trunc 3 in {t:.1?}"))
}

/// Posets on at most `max` elements, one per isomorphism class, built from naturally labelled
/// strict orders.
fn small_posets(max: usize) -> Vec<FinitePoset> {
    let mut out = Vec::new();
    for n in 1..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for bits in 0u32..1 << pairs.len() {
            let rel: BTreeSet<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &p)| p).collect();
            let transitive = rel.iter().all(|&(a, b)| rel.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| rel.contains(&(a, d))));
            if !transitive {
                continue;
            }
            let canonical = perms
                .iter()
                .map(|p| {
                    let mut r: Vec<(usize, usize)> = rel.iter().map(|&(a, b)| (p[a], p[b])).collect();
                    r.sort_unstable();
                    r
                })
                .min()
                .expect("some permutation");
            if seen.insert(canonical) {
                let labels = (0..n).map(|i| i.to_string()).collect();
                let rel: Vec<_> = rel.into_iter().collect();
                out.push(FinitePoset::generated(labels, &rel).expect("poset"));
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// 6. Ex N(P) computed generically agrees with the poset-specific construction.
fn ex_of_posets() -> Verdict {
    let posets = small_posets(4);
    ensure(posets.len() == 1 + 2 + 5 + 16, || format!("{} posets enumerated", posets.len()))?;
    for p in &posets {
        let generic = ex(&nerve_poset(p, 3), 3, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let direct = ex_nerve_poset(p, 3).map_err(|e| e.to_string())?;
        ensure(generic.generator_counts() == direct.generator_counts() && are_isomorphic(&generic, &direct), || {
            format!("poset with relation {:?}: {:?} vs {:?}", p.strict_relation(), generic.generator_counts(), direct.generator_counts())
        })?;
    }
    Ok(format!("{} posets up to isomorphism, n ≤ 3", posets.len()))
}

fn category_fixture(name: &str) -> FiniteCategory {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture");
    match serde_json::from_str::<CategoryJson>(&text) {
        Ok(c) => c.build().expect("category"),
        Err(_) => FiniteCategory::from_poset(&serde_json::from_str::<PosetJson>(&text).expect("poset").build().expect("poset")),
    }
}

/// Independent groupoid test: every morphism has a two-sided inverse in the composition table.
fn is_groupoid(c: &FiniteCategory) -> bool {
    (0..c.morphism_count()).all(|f| {
        let m = c.morphism(f);
        (0..c.morphism_count()).any(|g| {
            c.compose(g, f) == Some(c.identity(m.source)) && c.compose(f, g) == Some(c.identity(m.target))
        })
    })
}

/// 7. Strict Segal maps on nerves, the ∂Δ^2 failure and the completeness verdict.
fn segal() -> Verdict {
    let names = ["walking_iso.json", "ordinal2.json", "ordinal3.json", "square.json", "z2.json"];
    let mut cats: Vec<(String, FiniteCategory)> = names.iter().map(|n| (n.to_string(), category_fixture(n))).collect();
    // three objects, one isomorphism pair and one non-invertible arrow
    let m = |name: &str, source, target| Morphism { name: name.into(), source, target };
    let mixed = FiniteCategory::with_unit_laws(
        vec!["a".into(), "b".into(), "c".into()],
        vec![m("1a", 0, 0), m("1b", 1, 1), m("1c", 2, 2), m("u", 0, 1), m("v", 1, 0), m("w", 1, 2), m("wu", 0, 2)],
        vec![0, 1, 2],
        &[(4, 3, 0), (3, 4, 1), (5, 3, 6), (6, 4, 5)],
    )
    .map_err(|e| e.to_string())?;
    cats.push(("mixed".into(), mixed));
    cats.push(("discrete pair".into(), FiniteCategory::discrete(vec!["p".into(), "q".into()]).map_err(|e| e.to_string())?));
    for (name, c) in &cats {
        ensure(c.object_count() <= 4, || format!("{name} has too many objects"))?;
        let x = external_product(&nerve(c, 4), &SimplicialSet::point());
        let r = segal_check(&x, 4, 0).map_err(|e| e.to_string())?;
        ensure(r.passed && r.levels.len() == 3, || format!("{name}: {:?}", r.first_failure))?;
        let comp = completeness_check(c, 2).map_err(|e| e.to_string())?;
        ensure(comp.groupoid == is_groupoid(c), || format!("{name}: completeness verdict {} disagrees", comp.groupoid))?;
    }
    let boundary = load::<BisimplicialSetJson>("boundary2_bisimplicial.json").build().map_err(|e| e.to_string())?;
    let r = segal_check(&boundary, 2, 0).map_err(|e| e.to_string())?;
    ensure(!r.passed && r.first_failure == Some((2, 0)), || format!("∂Δ^2 input: {r:?}"))?;
    // oracle: X_2 and the composable pairs of X_1, counted on the tabulated ∂Δ^2
    let table = boundary_simplex(2).assemble_to(2).table;
    let pairs = (0..table.count(1))
        .flat_map(|a| (0..table.count(1)).map(move |b| (a, b)))
        .filter(|&(a, b)| table.face(1, a, 0) == table.face(1, b, 1))
        .count();
    let level = &r.levels[0];
    ensure(level.cells == table.count(2) && level.fiber_product == pairs && level.injective && !level.surjective, || {
        format!("∂Δ^2 input: {level:?}, oracle {} cells over {pairs} pairs", table.count(2))
    })?;
    let groupoids = cats.iter().filter(|(_, c)| is_groupoid(c)).count();
    Ok(format!("{} categories ({groupoids} groupoids), ∂Δ^2 fails at n = 2", cats.len()))
}

/// All contravariant set functors on a poset category with every value of size ≤ 2.
fn small_presheaves(shape: &FiniteCategory) -> Vec<SetFunctor> {
    let objects = shape.object_count();
    let mut out = Vec::new();
    for code in 0..1usize << objects {
        let sizes: Vec<usize> = (0..objects).map(|i| 1 + (code >> i & 1)).collect();
        // candidate maps per morphism u: i → j, from F(j) to F(i)
        let choices: Vec<Vec<Vec<u32>>> = shape
            .morphisms()
            .iter()
            .enumerate()
            .map(|(u, m)| {
                let (dom, cod) = (sizes[m.target], sizes[m.source] as u32);
                if shape.is_identity(u) {
                    return vec![(0..dom as u32).collect()];
                }
                let mut all = vec![Vec::new()];
                for _ in 0..dom {
                    all = all.into_iter().flat_map(|p: Vec<u32>| (0..cod).map(move |v| [p.clone(), vec![v]].concat())).collect();
                }
                all
            })
            .collect();
        let mut pick = vec![0usize; choices.len()];
        loop {
            let maps = pick.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
            if let Ok(f) = SetFunctor::new(shape, Variance::Contravariant, sizes.clone(), maps) {
                out.push(f);
            }
            let Some(pos) = (0..pick.len()).find(|&i| pick[i] + 1 < choices[i].len()) else { break };
            pick[pos] += 1;
            pick[..pos].iter_mut().for_each(|k| *k = 0);
        }
    }
    out
}

/// 8. Dugger's replacement and its Ex variant augment onto F(c) by certified equivalences.
fn dugger() -> Verdict {
    let mut count = 0;
    for n in [1, 2] {
        let shape = Arc::new(FiniteCategory::from_poset(&FinitePoset::ordinal(n)));
        let mut weights: Vec<Weight> = small_presheaves(&shape)
            .iter()
            .map(|f| Weight::discrete(shape.clone(), f, |i, e| format!("{i}.{e}")))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        weights.push(Weight::constant(shape.clone(), boundary_simplex(2)));
        for (k, w) in weights.iter().enumerate() {
            for c in 0..=n {
                let q = dugger_q(w, c, 3).map_err(|e| e.to_string())?;
                let cert = weq_certificate(&q.augmentation, 3).map_err(|e| e.to_string())?;
                ensure(cert.passed, || format!("Q on [{n}], presheaf {k}, object {c}: {cert:?}"))?;
                let qx = dugger_q_ex(w, c, 3, DEFAULT_CAP).map_err(|e| e.to_string())?;
                let cert = weq_certificate(&qx.augmentation, 3).map_err(|e| e.to_string())?;
                ensure(cert.passed, || format!("Q_ex on [{n}], presheaf {k}, object {c}: {cert:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (presheaf, object) pairs, trunc 3"))
}

/// Vertex sequence of a simplex of `Δ^m`, read independently off the generator label.
fn vertices(x: &SimplicialSet, r: &SimplexRef) -> Vec<usize> {
    let label = x.label(r.gen);
    let base: Vec<usize> = label.trim_matches(|c| c == '[' || c == ']').split(',').map(|v| v.parse().expect("vertex")).collect();
    r.word.to_surjection(r.gen.dim).into_iter().map(|j| base[j]).collect()
}

/// 9. Word arithmetic against vertex sequences and against stepwise tabular expansion.
fn word_arithmetic() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let corpus: Vec<(String, SimplicialSet)> = vec![
        ("Δ^3".into(), standard_simplex(3)),
        ("Δ^4".into(), standard_simplex(4)),
        ("∂Δ^3".into(), boundary_simplex(3)),
        ("torus".into(), minimal_torus()),
        ("sd Δ^2".into(), sd_simplex(2)),
    ];
    const TOP: usize = 5;
    let tables: Vec<_> = corpus.iter().map(|(_, x)| x.assemble_to(TOP)).collect();
    let mut instances = 0;
    for round in 0..1500 {
        let which = round % corpus.len();
        let (name, x) = &corpus[which];
        let table = &tables[which];
        let gens: Vec<_> = x.all_generators().collect();
        let mut r = SimplexRef::generator(gens[rng.gen_range(0..gens.len())]);
        let simplex_like = name.starts_with('Δ');
        let mut seq = if simplex_like { vertices(x, &r) } else { Vec::new() };
        let mut id = table.id(r.dim(), &r).ok_or("generator missing from table")?;
        for _ in 0..rng.gen_range(1..=8) {
            let n = r.dim();
            let face = n > 0 && (n == TOP || rng.gen_bool(0.5));
            let i = rng.gen_range(0..=n);
            let (next, next_id) = if face {
                (x.face(&r, i).map_err(|e| e.to_string())?, table.table.face(n, id, i))
            } else {
                (x.degenerate(&r, i).map_err(|e| e.to_string())?, table.table.degeneracy(n, id, i))
            };
            if simplex_like {
                if face {
                    seq.remove(i);
                } else {
                    seq.insert(i, seq[i]);
                }
                ensure(vertices(x, &next) == seq, || format!("{name}: {next:?} is not {seq:?}"))?;
            }
            ensure(table.id(next.dim(), &next) == Some(next_id), || format!("{name}: table disagrees at {next:?}"))?;
            r = next;
            id = next_id;
            instances += 1;
        }
    }
    ensure(instances >= 1000, || format!("only {instances} instances"))?;
    let corpus_files = ["boundary2.json", "boundary3.json", "sd_simplex2.json", "torus.json"];
    for name in corpus_files {
        let x = load::<SimplicialSetJson>(name).build().map_err(|e| e.to_string())?;
        x.validate().map_err(|e| format!("{name}: {e}"))?;
    }
    for (name, x) in &corpus {
        x.validate().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{instances} random operator steps; d_i d_j on {} corpus sets", corpus.len() + corpus_files.len()))
}

/// Fraction-free determinant, independent of the Smith reduction.
fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// 10. Smith normal form with transforms on random integer matrices.
fn smith() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for trial in 0..100 {
        let (rows, cols) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let density = rng.gen_range(0.2..1.0);
        let bound: i64 = if trial % 10 == 0 { 1_000_000_000 } else { 9 };
        let entries: Vec<Vec<BigInt>> = (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { BigInt::from(rng.gen_range(-bound..=bound)) } else { BigInt::zero() }).collect())
            .collect();
        let m = IntMatrix::from_rows(&entries);
        let s = smith_normal_form(&m);
        ensure(s.u.mul(&m).mul(&s.v) == s.d, || format!("trial {trial}: U M V ≠ D"))?;
        ensure(s.d.is_diagonal(), || format!("trial {trial}: D not diagonal"))?;
        for (name, t) in [("U", &s.u), ("V", &s.v)] {
            ensure(determinant(&t.to_rows()).abs().is_one(), || format!("trial {trial}: {name} not unimodular"))?;
        }
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| s.d.get(i, i).clone()).collect();
        ensure(diag.iter().all(|x| !x.is_negative()), || format!("trial {trial}: negative diagonal"))?;
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure(ok, || format!("trial {trial}: {} does not divide {}", w[0], w[1]))?;
        }
        if rows == cols {
            let product = diag.iter().fold(BigInt::one(), |acc, x| acc * x);
            ensure(determinant(&entries).abs() == product, || format!("trial {trial}: |det| not preserved"))?;
        }
    }
    let t = within(start, Duration::from_secs(10), "Smith normal form")?;
    Ok(format!("100 matrices in {t:.1?}"))
}

/// 11. Affine cosimplicial identities and naturality of the standard inclusion.
fn affine() -> Verdict {
    let start = Instant::now();
    let r = affine_check(5, 3).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("{:?} {:?}", r.identities.failures, r.naturality_failures))?;
    let t = within(start, Duration::from_secs(5), "affine checks")?;
    Ok(format!("{} identities, {} monotone maps in {t:.1?}", r.identities.checked, r.naturality_checked))
}

/// 12. Every fixture run twice through the binary gives byte-identical output.
fn cli_determinism() -> Verdict {
    let runs = fixture_runs();
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (run(&args), run(&args));
        ensure(a.status.code().is_some() && a.status.code() == b.status.code(), || format!("{args:?}: exit codes differ"))?;
        ensure(a.stdout == b.stdout && a.stderr == b.stderr, || format!("{args:?}: output differs"))?;
        ensure(!a.stdout.is_empty(), || format!("{args:?}: no output"))?;
    }
    Ok(format!("{} invocations", runs.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("nerve-theorem pipelines", pipelines),
        ("bar comparison certificates", bar_comparisons),
        ("φ trivial fibration", trivial_fibration),
        ("φ ∘ ψ factorization", factorization),
        ("last-vertex equivalence", last_vertex),
        ("Ex of poset nerves", ex_of_posets),
        ("Segal and completeness", segal),
        ("Dugger replacement", dugger),
        ("simplicial identities", word_arithmetic),
        ("Smith normal form", smith),
        ("affine simplices", affine),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let t = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.1?}]", k + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{t:.1?}]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
