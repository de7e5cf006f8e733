//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison below is exact equality of field elements; there is no
//! floating point anywhere, so the tolerance is zero throughout. Sample
//! counts and seeds are pinned as constants.

mod common;

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value as Json;

use vecprod::algebra::{LemmaIdentity, D2};
use vecprod::classify::{build_isomorphism, obstruction_report, verify_morphism, IsoVerdict};
use vecprod::doubling::{
    double, find_multiplicative_base, is_mult_independent, subset_products, MultiplicativeBase,
};
use vecprod::forms::{brute_force_isometry, equivalent_forms, FormEquivalence};
use vecprod::hurwitz::{hurwitz, imaginary_vpa};
use vecprod::linalg::{self, Vector};
use vecprod::sample::random_vector;
use vecprod::{FieldSpec, GramForm, VectorProductAlgebra};

use common::*;

/// Tolerance for every comparison: exact equality.
const TOLERANCE: &str = "exact (0)";
const COMPOSITION_SAMPLES: usize = 1000;
const COMPOSITION_SEED: u64 = 2024;
const LEMMA_SAMPLES: usize = 500;
const LEMMA_SEED: u64 = 7;
const EXTENSION_SAMPLES: usize = 200;
/// Height bound for the rational isomorphism search in the CLI pipeline.
const HEIGHT_BOUND: &str = "20";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle() -> Json {
    serde_json::from_str(&read_golden("oracle.json")).unwrap()
}

fn fields() -> [FieldSpec; 2] {
    [FieldSpec::Rationals, f7()]
}

fn criterion_1() -> Outcome {
    let mut checked = Vec::new();
    for field in fields() {
        for norms in norm_lists(field) {
            let (v, _) = standard(field, &norms);
            let expected = (1usize << norms.len()) - 1;
            ensure(v.dim() == expected, || {
                format!("{field} {norms:?}: dimension {} != {expected}", v.dim())
            })?;
            let r = v.check_axioms();
            ensure(r.passed() && r.violations.is_empty(), || {
                format!(
                    "{field} {norms:?}: {} violations, first {}",
                    r.violations.len(),
                    r.violations[0]
                )
            })?;
            checked.push(v.dim());
        }
    }
    checked.sort_unstable();
    checked.dedup();
    Ok(format!(
        "dims {checked:?} over Q and F_7, {} norm lists, 0 violations on all basis triples and quadruples",
        2 * norm_lists(FieldSpec::Rationals).len()
    ))
}

fn criterion_2() -> Outcome {
    let frozen = oracle();
    let cases: [(FieldSpec, [i64; 3], &str); 4] = [
        (FieldSpec::Rationals, [1, 1, 1], "Q_1_1_1"),
        (FieldSpec::Rationals, [1, 2, 3], "Q_1_2_3"),
        (f7(), [1, 1, 1], "F7_1_1_1"),
        (f7(), [2, 3, 5], "F7_2_3_5"),
    ];
    let mut counts = Vec::new();
    for (field, norms, key) in cases {
        let (v, _) = standard(field, &norms);
        let d = double(&v, &field.one()).unwrap();
        let count = d.check_axioms().count(D2);
        let expected = frozen[format!("d2_violations_{key}")].as_u64().unwrap() as usize;
        ensure(count >= 1 && count == expected, || {
            format!("{key}: {count} d2 violations, oracle {expected}")
        })?;
        let r = obstruction_report(&v).unwrap();
        let pivot: Vec<String> = r.pivot.iter().map(ToString::to_string).collect();
        let want: Vec<String> = frozen[format!("pivot_{key}")]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().to_string())
            .collect();
        ensure(r.demonstrated, || {
            format!("{key}: obstruction not demonstrated\n{r}")
        })?;
        ensure(pivot == want, || {
            format!("{key}: pivot {pivot:?} != oracle {want:?}")
        })?;
        ensure(
            r.first_chain.last().unwrap().value == linalg::neg(&r.pivot)
                && r.second_chain.last().unwrap().value == r.pivot
                && !linalg::is_zero_vector(&r.pivot),
            || format!("{key}: bracketing chains do not end in -X and X"),
        )?;
        counts.push(count);
    }
    Ok(format!(
        "4 doubled candidates of dim 15, d2 violations {counts:?} (oracle agrees), \
         u(v(wz)) forced to equal both -X and X with X = ((vw)u)z != 0"
    ))
}

fn criterion_3() -> Outcome {
    let mut dims = Vec::new();
    for field in fields() {
        for norms in norm_lists(field) {
            let (v, _) = standard(field, &norms);
            let h = hurwitz(&v).unwrap();
            let r = h.check_composition(COMPOSITION_SAMPLES, COMPOSITION_SEED);
            ensure(
                r.passed() && r.random_samples == COMPOSITION_SAMPLES,
                || {
                    format!(
                        "{field} {norms:?}: composition fails: {}",
                        r.violations
                            .first()
                            .map(ToString::to_string)
                            .unwrap_or_default()
                    )
                },
            )?;
            dims.push(h.dim());
        }
    }
    dims.sort_unstable();
    dims.dedup();
    Ok(format!(
        "H(V) dims {dims:?} over Q and F_7: all n^4 basis quadruples (4096 at dim 8) and \
         {COMPOSITION_SAMPLES} random pairs (seed {COMPOSITION_SEED}) satisfy N(xy) = N(x)N(y)"
    ))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for field in fields() {
        for norms in norm_lists(field) {
            let (v, _) = standard(field, &norms);
            let back = imaginary_vpa(&hurwitz(&v).unwrap()).unwrap();
            ensure(back.gram() == v.gram(), || {
                format!("{field} {norms:?}: Gram matrix changed")
            })?;
            ensure(back.structure() == v.structure(), || {
                format!("{field} {norms:?}: structure constants changed")
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} algebras: imaginary_vpa(hurwitz(V)) == V entry for entry"
    ))
}

fn check_base_facts(
    v: &VectorProductAlgebra,
    base: &MultiplicativeBase,
    label: &str,
) -> Result<usize, String> {
    let products = subset_products(v, base.vectors()).unwrap();
    let m = base.len();
    ensure(products.len() == (1 << m) - 1, || {
        format!("{label}: wrong product count")
    })?;
    for (mask, p) in &products {
        let expected = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .fold(v.field().one(), |acc, i| &acc * &base.norms()[i]);
        let n = v.gram().norm(p).unwrap();
        ensure(n == expected && !n.is_zero(), || {
            format!("{label}: N(Pi({mask:b})) = {n}, expected {expected}")
        })?;
    }
    for (a, (ma, pa)) in products.iter().enumerate() {
        for (mb, pb) in &products[a + 1..] {
            let ip = v.gram().eval(pa, pb).unwrap();
            ensure(ip.is_zero(), || {
                format!("{label}: <Pi({ma:b}), Pi({mb:b})> = {ip}")
            })?;
        }
    }
    Ok(products.len())
}

fn criterion_5() -> Outcome {
    let mut bases = 0;
    let mut subsets = 0;
    for field in fields() {
        for norms in norm_lists(field) {
            let (v, base) = standard(field, &norms);
            let label = format!("{field} {norms:?}");
            subsets += check_base_facts(&v, &base, &label)?;
            let found = find_multiplicative_base(&v).unwrap();
            subsets += check_base_facts(&v, &found, &format!("{label} (searched)"))?;
            bases += 2;
        }
    }
    Ok(format!(
        "{bases} bases (constructed and searched), {subsets} subset products: \
         pairwise orthogonal with N(Pi(A)) = product of norms != 0"
    ))
}

/// Diagonal forms over F_3 of dimensions 1 and 3, paired with an algebra
/// on that form when one exists. In dimension 3 the form diag(a, b, c)
/// carries an algebra exactly when abc is a square, i.e. c = ab, and then
/// the standard algebra with norms (a, b) has Gram matrix diag(a, b, ab).
fn f3_objects() -> Vec<(Vec<i64>, VectorProductAlgebra, bool)> {
    let f3 = FieldSpec::prime(3).unwrap();
    let mut out = Vec::new();
    for dim in [1usize, 3] {
        for code in 0..(1 << dim) {
            let diag: Vec<i64> = (0..dim).map(|i| 1 + (code >> (dim - 1 - i) & 1)).collect();
            let carries = dim == 1 || (diag[0] * diag[1]) % 3 == diag[2];
            let algebra = if carries {
                let (v, _) = standard(f3, &diag[..if dim == 1 { 1 } else { 2 }]);
                assert_eq!(v.gram(), &GramForm::diagonal(f3, &scalars(f3, &diag)));
                v
            } else {
                let zero = vec![vec![linalg::zero_vector(f3, dim); dim]; dim];
                VectorProductAlgebra::new(GramForm::diagonal(f3, &scalars(f3, &diag)), zero)
                    .unwrap()
            };
            out.push((diag, algebra, carries));
        }
    }
    out
}

fn tuple_key(d: &[i64]) -> String {
    let parts: Vec<String> = d.iter().map(ToString::to_string).collect();
    if d.len() == 1 {
        format!("({},)", parts[0])
    } else {
        format!("({})", parts.join(", "))
    }
}

fn criterion_6() -> Outcome {
    let frozen = oracle();
    let isometric: Vec<&str> = frozen["f3_isometric_pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    let objects = f3_objects();
    let (mut pairs, mut iso, mut non_iso, mut morphisms, mut no_algebra) = (0, 0, 0, 0, 0);
    for (d1, a, ca) in &objects {
        for (d2, b, cb) in &objects {
            if d1.len() != d2.len() {
                continue;
            }
            pairs += 1;
            let key = format!("{}|{}", tuple_key(d1), tuple_key(d2));
            let witness = brute_force_isometry(a.gram(), b.gram()).unwrap();
            ensure(
                witness.is_some() == isometric.contains(&key.as_str()),
                || format!("{key}: brute force disagrees with the oracle table"),
            )?;
            let forms = equivalent_forms(a.gram(), b.gram(), 0).unwrap();
            ensure(
                matches!(forms, FormEquivalence::Equivalent(_)) == witness.is_some()
                    && !matches!(forms, FormEquivalence::Inconclusive(_)),
                || format!("{key}: equivalent_forms {forms:?} vs brute force"),
            )?;
            match build_isomorphism(a, b, 0) {
                Ok(IsoVerdict::Isomorphic(m)) => {
                    ensure(witness.is_some(), || {
                        format!("{key}: isomorphic without isometry")
                    })?;
                    let check = verify_morphism(&m);
                    ensure(check.passed(), || {
                        format!("{key}: morphism fails verification")
                    })?;
                    iso += 1;
                    morphisms += 1;
                }
                Ok(IsoVerdict::NotIsomorphic(_)) => {
                    ensure(witness.is_none(), || {
                        format!("{key}: NotIsomorphic but an isometry exists")
                    })?;
                    non_iso += 1;
                }
                Ok(IsoVerdict::Inconclusive(r)) => {
                    return Err(format!("{key}: inconclusive over F_3: {r}"))
                }
                Err(e) => {
                    // Same invariants, but neither form carries an algebra.
                    ensure(!ca && !cb && witness.is_some(), || format!("{key}: {e}"))?;
                    no_algebra += 1;
                }
            }
        }
    }
    Ok(format!(
        "{pairs} same-dimension pairs of diagonal forms over F_3: {iso} isomorphic \
         ({morphisms} morphisms verified), {non_iso} not isomorphic, all matching brute force; \
         {no_algebra} pairs of isometric forms carry no algebra (input rejected, form \
         verdict matches brute force)"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(LEMMA_SEED);
    let f3 = FieldSpec::prime(3).unwrap();
    let mut algebras = Vec::new();
    for field in fields() {
        for norms in norm_lists(field).into_iter().filter(|n| n.len() == 3) {
            algebras.push((field, norms));
        }
    }
    algebras.push((f3, vec![1, 1, 1]));
    algebras.push((f3, vec![2, 2, 2]));
    let mut subsets_checked = 0;
    let mut extensions_checked = 0;
    for (field, norms) in &algebras {
        let (v, base) = standard(*field, norms);
        for a in 0..7 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    for d in c + 1..7 {
                        let set: Vec<Vector> = [a, b, c, d].iter().map(|&k| v.unit(k)).collect();
                        ensure(
                            !is_mult_independent(&v, &set).unwrap().is_independent(),
                            || {
                                format!(
                                    "{field} {norms:?}: basis vectors {a},{b},{c},{d} independent"
                                )
                            },
                        )?;
                        subsets_checked += 1;
                    }
                }
            }
        }
        let found = find_multiplicative_base(&v).unwrap();
        let mut candidates: Vec<Vector> = (0..7).map(|k| v.unit(k)).collect();
        if *field == f3 {
            // every non-zero vector of F_3^7
            for code in 1..3usize.pow(7) {
                let coords: Vec<i64> = (0..7).map(|i| (code / 3usize.pow(i) % 3) as i64).collect();
                candidates.push(scalars(f3, &coords));
            }
        } else {
            for _ in 0..EXTENSION_SAMPLES {
                candidates.push(random_vector(*field, 7, &mut rng));
            }
        }
        for b in [&base, &found] {
            for x in &candidates {
                let mut set = b.vectors().to_vec();
                set.push(x.clone());
                ensure(
                    !is_mult_independent(&v, &set).unwrap().is_independent(),
                    || format!("{field} {norms:?}: base extended by {x:?}"),
                )?;
                extensions_checked += 1;
            }
        }
    }
    Ok(format!(
        "{} algebras of dim 7: {subsets_checked} four-element basis subsets dependent; \
         {extensions_checked} extensions of size-3 bases rejected (all of F_3^7 \\ 0 over F_3)",
        algebras.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut total = 0;
    let mut orthogonal_checked = 0;
    for field in fields() {
        for norms in norm_lists(field) {
            let (v, _) = standard(field, &norms);
            let mut rng = ChaCha8Rng::seed_from_u64(LEMMA_SEED);
            let mut samples: Vec<_> = (0..LEMMA_SAMPLES)
                .map(|_| random_triple(&v, &mut rng))
                .collect();
            if v.dim() > 0 {
                samples.extend((0..LEMMA_SAMPLES).map(|_| orthogonal_triple(&v, &mut rng)));
            }
            let r = v.check_lemma_vm(&samples).unwrap();
            ensure(r.all_hold(), || {
                format!("{field} {norms:?}: {}", r.failures[0])
            })?;
            for id in [
                LemmaIdentity::OrthogonalRebracket,
                LemmaIdentity::OrthogonalSwap,
            ] {
                let t = r.tally(id);
                if v.dim() > 0 {
                    ensure(t.passed >= LEMMA_SAMPLES, || {
                        format!("{field} {norms:?}: only {} orthogonal samples", t.passed)
                    })?;
                }
                orthogonal_checked += t.passed;
            }
            total += samples.len();
        }
    }
    Ok(format!(
        "{total} tuples ({LEMMA_SAMPLES} random + {LEMMA_SAMPLES} pairwise orthogonal per algebra \
         per field, seed {LEMMA_SEED}): all five identities hold; {orthogonal_checked} \
         rebracketing evaluations on orthogonal tuples"
    ))
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_vecprod"))
        .args(args)
        .env_remove("VPA_HEIGHT_BOUND")
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn pipeline(dir: &Path, field: &str, norms: &str) -> Result<(), String> {
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let v = dir.join(format!(
        "v_{}_{}.json",
        field.replace(':', ""),
        norms.replace(',', "_")
    ));
    let h = dir.join(format!(
        "h_{}_{}.json",
        field.replace(':', ""),
        norms.replace(',', "_")
    ));
    let steps: Vec<Vec<String>> = vec![
        vec![
            "construct".into(),
            "--field".into(),
            field.into(),
            "--base-norms".into(),
            norms.into(),
            "-o".into(),
            s(&v),
        ],
        vec!["verify".into(), s(&v)],
        vec!["hurwitz".into(), s(&v), "-o".into(), s(&h)],
        vec!["verify".into(), s(&h)],
        vec![
            "iso".into(),
            s(&v),
            s(&v),
            "--height-bound".into(),
            HEIGHT_BOUND.into(),
        ],
    ];
    for step in steps {
        let args: Vec<&str> = step.iter().map(String::as_str).collect();
        let (code, _, err) = run_cli(&args);
        ensure(code == 0, || {
            format!("`vecprod {}` exited {code}: {err}", args.join(" "))
        })?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs = [
        ("Q", "1,1"),
        ("Q", "1,1,1"),
        ("Q", "1,2,3"),
        ("Fp:7", "2,3,5"),
    ];
    for (field, norms) in runs {
        pipeline(dir.path(), field, norms)?;
    }
    let goldens = [
        ("1,1", "cross_q.json"),
        ("1,1,1", "octonion_q.json"),
        ("1,2,3", "split_q.json"),
    ];
    for (norms, name) in goldens {
        let (code, out, err) = run_cli(&["construct", "--field", "Q", "--base-norms", norms]);
        ensure(code == 0, || format!("construct {norms}: {err}"))?;
        ensure(out == read_golden(name), || {
            format!("construct {norms} differs from {name}")
        })?;
    }
    let (code, out, err) = run_cli(&["hurwitz", golden("octonion_q.json").to_str().unwrap()]);
    ensure(code == 0, || format!("hurwitz: {err}"))?;
    ensure(out == read_golden("octonion_unital_q.json"), || {
        "hurwitz output differs from octonion_unital_q.json".to_string()
    })?;
    let written = fs::read_to_string(dir.path().join("v_Q_1_1_1.json")).unwrap();
    ensure(written == read_golden("octonion_q.json"), || {
        "-o output differs".to_string()
    })?;
    Ok(format!(
        "construct -> verify -> hurwitz -> verify -> iso(self) exits 0 for {} inputs; \
         dim-3, dim-7 and dim-8 documents byte-identical to the oracle golden files",
        runs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("dimensions 0, 1, 3 and 7 are realized", criterion_1),
        ("no doubling past dimension 7", criterion_2),
        ("composition law", criterion_3),
        ("round trip imaginary_vpa(hurwitz(V)) = V", criterion_4),
        ("product basis facts", criterion_5),
        ("classification over F_3", criterion_6),
        ("independence bound", criterion_7),
        ("lemma suite", criterion_8),
        ("CLI end-to-end", criterion_9),
    ];
    println!("acceptance suite (tolerance: {TOLERANCE})");
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {title} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {title} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
