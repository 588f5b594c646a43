//! The acceptance suite: one line per criterion, exact comparisons only.

mod common;

use std::time::{Duration, Instant};

use common::{corpus, module_corpus, random_poly, ring, rng, run_cases, PROPERTY_SUITES};
use rand::Rng;
use tancat::axioms::{check_tangent_structure, Overridden, StructureMap};
use tancat::bundle::{bundle_morphisms_equal, structure};
use tancat::category::arrows_equal;
use tancat::dual::{check_tangent_axioms, dual_numbers, dual_tower, DualTangent};
use tancat::kahler::{check_costructure_axioms, kahler_square, kahler_tangent, tangent_space_at, KahlerTangentStructure};
use tancat::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(limit_s: u64, elapsed: Duration) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

fn criterion_1() -> Outcome {
    let r = ring(&["x", "y"], &["x^2 - x*y^2"]);
    let t = kahler_tangent(&r).unwrap().ring;
    let expected = ring(&["x", "y", "d_x", "d_y"], &["x^2 - x*y^2", "2*x*d_x - y^2*d_x - 2*x*y*d_y"]);
    let cusp = t.vars() == expected.vars() && ideal_equal(&t, &expected).unwrap();
    let free = ring(&["x1", "x2", "x3", "x4"], &[]);
    let tf = kahler_tangent(&free).unwrap().ring;
    let eight = tf.nvars() == 8 && tf.is_free();
    outcome(cusp && eight, format!("cusp presentation {}, free rank-4 tangent has {} free variables", cusp, tf.nvars()))
}

fn criterion_2() -> Outcome {
    let r = ring(&["x", "y"], &["x*y"]);
    let origin = Point::new(r.clone(), vec![rat(0), rat(0)]).unwrap();
    let at_origin = tangent_space_at(&r, &origin).unwrap().ring;
    let origin_ok = at_origin.vars() == ["d_x", "d_y"] && at_origin.is_free();
    assert!(origin_ok, "tangent space at the origin should be free on d_x, d_y");
    // (1,1) does not satisfy xy = 0, so it is not a point of this ring.
    let refused = Point::new(r.clone(), vec![rat(1), rat(1)]);
    assert!(matches!(refused, Err(Error::InvalidPoint(_))), "(1,1) must be rejected");
    outcome(
        false,
        "(0,0) gives Q[d_x,d_y] free as required; (1,1) is not on xy = 0 (1*1 = 1), \
         so the engine rejects it with InvalidPoint and the first display cannot be reproduced",
    )
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for (name, r) in corpus() {
        let d = check_tangent_axioms(&r);
        let k = check_costructure_axioms(&r);
        if !d.all_pass() {
            bad.push(format!("ring side {}: {:?}", name, d.failures()));
        }
        if !k.all_pass() {
            bad.push(format!("affine side {}: {:?}", name, k.failures()));
        }
        assert_eq!(d.ids(), TANGENT_DIAGRAMS);
        assert_eq!(k.ids(), TANGENT_DIAGRAMS);
    }
    outcome(bad.is_empty(), if bad.is_empty() { "19 diagrams x 5 rings x 2 sides".into() } else { bad.join("; ") })
}

fn module_bundles() -> Vec<(String, DiffBundle)> {
    let mut out = Vec::new();
    for (rn, r) in corpus() {
        for (mn, m) in module_corpus(&r) {
            out.push((format!("ring {} {}", rn, mn), mod_to_bundle_ring(&m).unwrap()));
            out.push((format!("affine {} {}", rn, mn), mod_to_bundle_affine(&m).unwrap()));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let bundles = module_bundles();
    let mut bad = Vec::new();
    for (name, b) in &bundles {
        let rep = check_diff_bundle(b);
        assert_eq!(rep.ids(), BUNDLE_DIAGRAMS);
        if !rep.all_pass() {
            bad.push(format!("{}: {:?}", name, rep.failures()));
        }
    }
    let n = bundles.len();
    outcome(bad.is_empty(), if bad.is_empty() { format!("{} bundles, 15 diagrams each", n) } else { bad.join("; ") })
}

fn random_module_morphism(g: &mut rand_chacha::ChaCha8Rng, from: &FPModule, to: &FPModule) -> Option<ModuleMorphism> {
    let n = to.base().nvars();
    for _ in 0..20 {
        let cols = (0..from.rank())
            .map(|_| (0..to.rank()).map(|_| random_poly(g, n, 2, 2)).collect())
            .collect();
        if let Ok(f) = ModuleMorphism::new(from.clone(), to.clone(), cols) {
            return Some(f);
        }
    }
    None
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    // (a) and (b): round trips on the module corpus.
    for (rn, r) in corpus() {
        for (mn, m) in module_corpus(&r) {
            let (a, ai) = alpha_iso(&m).unwrap();
            let back = compose_module(&ai, &a).unwrap();
            if !module_morphisms_equal(&back, &ModuleMorphism::identity(&m)).unwrap() {
                notes.push(format!("alpha on {} {}", rn, mn));
            }
            let k = bundle_to_mod_affine(&mod_to_bundle_affine(&m).unwrap()).unwrap();
            if !(k.gens() == m.gens() && ModuleMorphism::new(m.clone(), k.clone(), (0..m.rank()).map(|i| k.generator(i)).collect()).is_ok()
                && ModuleMorphism::new(k.clone(), m.clone(), (0..m.rank()).map(|i| m.generator(i)).collect()).is_ok())
            {
                notes.push(format!("im D_lambda on {} {}", rn, mn));
            }
        }
    }
    // (c): β and ψ on module bundles and on tangent bundles.
    for (name, b) in module_bundles() {
        let ok = match b.side() {
            Side::Ring => beta_iso(&b).is_ok(),
            Side::Affine => psi_iso(&b).is_ok(),
        };
        if !ok {
            notes.push(format!("iso on {}", name));
        }
    }
    for (rn, r) in corpus() {
        if beta_iso(&tangent_bundle(Side::Ring, &r).unwrap()).is_err() {
            notes.push(format!("beta on T({})", rn));
        }
        if psi_iso(&tangent_bundle(Side::Affine, &r).unwrap()).is_err() {
            notes.push(format!("psi on T({})", rn));
        }
    }
    // (d): functor laws on random module maps.
    let mut g = rng(51);
    let rings = corpus();
    let mut done = [0usize; 2];
    while done.iter().any(|&d| d < 20) {
        let side = if done[0] < 20 { 0 } else { 1 };
        let r = &rings[g.gen_range(0..rings.len())].1;
        let mods = module_corpus(r);
        let pick = |g: &mut rand_chacha::ChaCha8Rng| mods[g.gen_range(0..mods.len())].1.clone();
        let (m, n, p) = (pick(&mut g), pick(&mut g), pick(&mut g));
        let (Some(f), Some(h)) = (random_module_morphism(&mut g, &m, &n), random_module_morphism(&mut g, &n, &p)) else {
            continue;
        };
        done[side] += 1;
        let hf = compose_module(&h, &f).unwrap();
        if side == 0 {
            let (bf, bh, bhf) = (mod_map_to_bundle_ring(&f).unwrap(), mod_map_to_bundle_ring(&h).unwrap(), mod_map_to_bundle_ring(&hf).unwrap());
            let id = mod_map_to_bundle_ring(&ModuleMorphism::identity(&m)).unwrap();
            let laws = check_bundle_morphism(&bf).all_pass()
                && bundle_morphisms_equal(&id, &BundleMorphism::identity(&bf.source)).unwrap()
                && bundle_morphisms_equal(&bhf, &compose_bundle(&bh, &bf).unwrap()).unwrap()
                && module_morphisms_equal(&bundle_map_to_module(&bf).unwrap(), &f).unwrap();
            // β is natural: β_N ∘ M̅(f) = M̅(M°(M̅ f)) ∘ β_M.
            let (beta_m, _) = beta_iso(&bf.source).unwrap();
            let (beta_n, _) = beta_iso(&bf.target).unwrap();
            let mid = mod_map_to_bundle_ring(&bundle_map_to_module(&bf).unwrap()).unwrap();
            let natural = arrows_equal(&comp(&beta_n.f, &bf.f).unwrap(), &comp(&mid.f, &beta_m.f).unwrap()).unwrap();
            if !(laws && natural) {
                notes.push(format!("ring functor on {} -> {}", m, n));
            }
        } else {
            let (bf, bh, bhf) = (mod_map_to_bundle_affine(&f).unwrap(), mod_map_to_bundle_affine(&h).unwrap(), mod_map_to_bundle_affine(&hf).unwrap());
            let id = mod_map_to_bundle_affine(&ModuleMorphism::identity(&m)).unwrap();
            let laws = check_bundle_morphism(&bf).all_pass()
                && bundle_morphisms_equal(&id, &BundleMorphism::identity(&id.source)).unwrap()
                && bundle_morphisms_equal(&bhf, &compose_bundle(&bf, &bh).unwrap()).unwrap()
                && module_morphisms_equal(&bundle_map_to_module(&bf).unwrap(), &f).unwrap();
            let (psi_src, _) = psi_iso(&bf.source).unwrap();
            let (psi_tgt, _) = psi_iso(&bf.target).unwrap();
            let mid = mod_map_to_bundle_affine(&bundle_map_to_module(&bf).unwrap()).unwrap();
            let natural = arrows_equal(&comp(&psi_tgt.f, &bf.f).unwrap(), &comp(&mid.f, &psi_src.f).unwrap()).unwrap();
            if !(laws && natural) {
                notes.push(format!("affine functor on {} -> {}", m, n));
            }
        }
    }
    outcome(notes.is_empty(), if notes.is_empty() { "alpha, im D_lambda, beta, psi; 20 random maps per side".into() } else { notes.join("; ") })
}

fn criterion_6() -> Outcome {
    let mut bundles = module_bundles();
    for (rn, r) in corpus() {
        bundles.push((format!("T({}) ring", rn), tangent_bundle(Side::Ring, &r).unwrap()));
        bundles.push((format!("T({}) affine", rn), tangent_bundle(Side::Affine, &r).unwrap()));
    }
    let mut bad = Vec::new();
    for (name, b) in &bundles {
        match derive_sum_and_negative_via_rosicky(b.q(), b.zero(), b.lambda()) {
            Ok((s, n)) if arrows_equal(&s, b.sigma()).unwrap() && arrows_equal(&n, b.neg()).unwrap() => {}
            Ok(_) => bad.push(format!("{}: differs", name)),
            Err(e) => bad.push(format!("{}: {}", name, e)),
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{} bundles", bundles.len()) } else { bad.join("; ") })
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    for (name, seed, case) in PROPERTY_SUITES {
        if let Err(e) = run_cases(seed, case) {
            bad.push(format!("{}: {}", name, e));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "5 suites x 200 cases".into() } else { bad.join("; ") })
}

/// The stated predictions name a single diagram per corrupted map. For the
/// lift and the flip that cannot hold: `T(p)(ε') = ε ≠ 0`, so a lift sending
/// `ε` to `ε'` also breaks the projection law, and a flip that negates `d'd x`
/// breaks Yang-Baxter too. The full sets below were derived by hand and are
/// asserted exactly; the criterion itself stays red for those two maps.
fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    let mut expect = |what: &str, got: Vec<&str>, derived: &[&str], predicted: &str| {
        assert_eq!(got, derived, "{}", what);
        let ok = derived == [predicted];
        pass &= ok;
        lines.push(format!("{} -> {:?}{}", what, got, if ok { String::new() } else { format!(" (predicted only {})", predicted) }));
    };

    let r = ring(&["x"], &[]);
    let t = dual_numbers(&r).unwrap().ring;
    let t2 = dual_tower(&r, 2).unwrap().ring;
    let bad_lift = RingMorphism::from_strs(&t, &t2, &["x", "eps_p"]).unwrap();
    let ts = Overridden::new(&DualTangent, &r, StructureMap::Lift, Arrow::new(Side::Ring, bad_lift));
    let rep = check_tangent_structure(&ts, &r);
    assert_eq!(rep.get("T.5:lift-lift").unwrap().witness().unwrap(), "eps: eps_p*eps_pp != eps_pp");
    expect(
        "lift eps -> eps'",
        rep.failures(),
        &["T.2:proj", "T.2:sum", "T.5:lift-lift", "T.5:flip-lift", "T.5:lift-flip", "T.6:square"],
        "T.5:lift-lift",
    );

    let k2 = kahler_square(&r).unwrap().ring;
    let bad_flip = RingMorphism::from_strs(&k2, &k2, &["x", "dp_x", "d_x", "-dpd_x"]).unwrap();
    let ts = Overridden::new(&KahlerTangentStructure, &r, StructureMap::Flip, Arrow::new(Side::Affine, bad_flip));
    let rep = check_tangent_structure(&ts, &r);
    assert!(rep.get("T.4:involution").unwrap().pass());
    expect("flip d'dx -> -d'dx", rep.failures(), &["T.4:yang-baxter", "T.5:flip-lift"], "T.5:flip-lift");

    let b = mod_to_bundle_ring(&FPModule::free(&r, 1).unwrap()).unwrap();
    let bad = b.with_neg(Arrow::identity(Side::Ring, b.total())).unwrap();
    expect("negative = identity", check_diff_bundle(&bad).failures(), &["D.N:inverse"], "D.N:inverse");

    let zero_lift = structure(Side::Ring).zero(b.total()).unwrap();
    let target = b.with_lambda(zero_lift).unwrap();
    let m = BundleMorphism::unchecked(b.clone(), target, Arrow::identity(Side::Ring, b.total()), Arrow::identity(Side::Ring, b.base()))
        .unwrap();
    expect("lift replaced by 0", check_bundle_morphism(&m).failures(), &["BM:lift"], "BM:lift");
    outcome(pass, lines.join("; "))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 8] = [
        (1, "tangent bundle presentations", 1, criterion_1),
        (2, "tangent spaces of xy = 0", 1, criterion_2),
        (3, "tangent axioms on the ring corpus", 30, criterion_3),
        (4, "differential bundle axioms on the module corpus", 60, criterion_4),
        (5, "module/bundle round trips", 30, criterion_5),
        (6, "sum and negative from the lift", 10, criterion_6),
        (7, "property suites", 60, criterion_7),
        (8, "negative controls", 5, criterion_8),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && within(limit, elapsed);
        println!(
            "criterion {} {}: {} in {:.2}s (limit {}s): {}",
            id,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit,
            o.detail
        );
        if !pass {
            failed.push(id);
        }
    }
    // 2 asks for a tangent space at a point off the variety and 8 predicts
    // single-diagram failures where more diagrams must fail. What the engine
    // does in both cases is asserted inside those criteria.
    assert_eq!(failed, [2, 8], "unexpected acceptance failures");
}
