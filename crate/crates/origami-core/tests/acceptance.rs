//! End-to-end checklist for the crate's exact-arithmetic guarantees.
//!
//! Each test prints one summary line of the form
//! `criterion NN <name> ... PASS|FAIL`; run with `--nocapture` to see the
//! full checklist. A test panics when a claim it is responsible for fails,
//! with one deliberate exception documented at the conjugate-field demo:
//! a sub-claim that is provably unattainable is reported on the printed
//! line instead of being papered over.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use origami_core::alhazen::{pencil_data, solve_alhazen, verify_equation1, AlhazenInstance, SolutionSet};
use origami_core::axioms::{Axiom, ObjId, Trace};
use origami_core::classify::{check_degree_condition, corollary52_demo, refute_via_theorem51};
use origami_core::constructions::{archimedes_demo, heptagon, pentagon};
use origami_core::cubic::{discriminant_cubic, solve_totally_real_cubic, trisect_cos};
use origami_core::geometry::{
    dist_sq, line_through, perp_bisector, perpendicular_from, trisect_between_lines, Point,
};
use origami_core::poly::RatPoly;
use origami_core::rational::{rat, ratio};
use origami_core::{Algebraic, Error, Tower};

struct Criterion {
    number: u32,
    label: &'static str,
    failures: Vec<String>,
    tolerated: Vec<String>,
}

impl Criterion {
    fn start(number: u32, label: &'static str) -> Criterion {
        Criterion {
            number,
            label,
            failures: Vec::new(),
            tolerated: Vec::new(),
        }
    }

    fn check(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    /// Records a sub-claim that cannot hold, with the reason. The printed
    /// line goes to FAIL but the test does not panic, so the rest of the
    /// checklist still runs.
    fn unattainable(&mut self, why: &str) {
        self.tolerated.push(why.to_string());
    }

    fn finish(self) {
        let clean = self.failures.is_empty() && self.tolerated.is_empty();
        let verdict = if clean { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {:02} {} ... {}", self.number, self.label, verdict);
        if !clean {
            let reasons: Vec<&str> = self
                .failures
                .iter()
                .chain(self.tolerated.iter())
                .map(String::as_str)
                .collect();
            line.push_str(&format!(" ({})", reasons.join("; ")));
        }
        println!("{line}");
        assert!(
            self.failures.is_empty(),
            "criterion {:02} failed: {}",
            self.number,
            self.failures.join("; ")
        );
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x25f0_9f93_a4c1_77e0 ^ stream)
}

fn rationals() -> Tower {
    Tower::rationals()
}

#[test]
fn criterion_01_heptagon_cosine() {
    let mut c = Criterion::start(1, "heptagon cosine exactness");
    let h = heptagon().expect("heptagon construction succeeds");
    let residual = h
        .cos
        .pow(3)
        .scale(&rat(8))
        .checked_add(&h.cos.square().scale(&rat(4)))
        .unwrap()
        .checked_sub(&h.cos.scale(&rat(4)))
        .unwrap()
        .add_rational(&rat(-1));
    c.check("8c^3 + 4c^2 - 4c - 1 vanishes exactly", residual.is_zero());
    let cubic = RatPoly::from_descending_ints(&[8, 4, -4, -1]);
    c.check(
        "minimal polynomial is that cubic",
        h.cos.minimal_polynomial() == cubic,
    );
    c.check("Sturm count of the cubic is 3", cubic.real_root_count() == Ok(3));
    c.finish();
}

#[test]
fn criterion_02_heptagon_identity() {
    let mut c = Criterion::start(2, "heptagon sine identity");
    let h = heptagon().expect("heptagon construction succeeds");
    let lhs = h.sin.square().scale(&rat(4));
    let rhs = h
        .cos_pi_over_7
        .square()
        .scale(&rat(3))
        .checked_add(&h.cos_3pi_over_7.pow(4).scale(&rat(4)))
        .unwrap();
    let residual = lhs.checked_sub(&rhs).unwrap();
    c.check(
        "4 sin^2(2pi/7) - 3 cos^2(pi/7) - 4 cos^4(3pi/7) vanishes exactly",
        residual.is_zero(),
    );
    c.finish();
}

#[test]
fn criterion_03_pentagon() {
    let mut c = Criterion::start(3, "pentagon polynomial and fold profile");
    let p = pentagon().expect("pentagon construction succeeds");
    let quadratic = RatPoly::from_descending_ints(&[4, 2, -1]);
    c.check(
        "minimal polynomial of cos(2pi/5) is 4x^2 + 2x - 1",
        p.cos.minimal_polynomial() == quadratic,
    );
    let allowed: BTreeSet<Axiom> = [Axiom::L, Axiom::P, Axiom::B].into_iter().collect();
    c.check(
        "trace profile stays within {L, P, B}",
        p.recipe.trace.axiom_profile().is_subset(&allowed),
    );
    c.check(
        "trace honours its declared axiom budget",
        p.recipe.profile_within_declared(),
    );
    c.finish();
}

#[test]
fn criterion_04_trisection_suite() {
    let mut c = Criterion::start(4, "trisection root suite over 100 samples");
    let mut g = rng(4);
    let base = rationals();
    let mut bad_residual = 0u32;
    let mut bad_symmetric = 0u32;
    for _ in 0..100 {
        let d = g.gen_range(2i64..=48);
        let n = g.gen_range(-(d - 1)..=(d - 1));
        let u = ratio(n, d);
        let ua = base.from_rational(u.clone());
        let (tower, y) = trisect_cos(&ua).expect("any cosine strictly inside (-1,1) trisects");
        let residual = y
            .pow(3)
            .scale(&rat(4))
            .checked_sub(&y.scale(&rat(3)))
            .unwrap()
            .add_rational(&(-u.clone()));
        if !residual.is_zero() {
            bad_residual += 1;
            continue;
        }
        // The other two roots of 4t^3 - 3t - u come from deflating by the
        // principal one: t = (-y +- sqrt(3 - 3y^2)) / 2.
        let disc = y.square().neg().add_rational(&rat(1)).scale(&rat(3));
        let (ext, s) = tower.adjoin_sqrt(&disc).expect("3 - 3y^2 is positive");
        let y0 = y.lift_to(&ext).unwrap();
        let y1 = y0
            .neg()
            .checked_add(&s)
            .unwrap()
            .scale(&ratio(1, 2));
        let y2 = y0
            .neg()
            .checked_sub(&s)
            .unwrap()
            .scale(&ratio(1, 2));
        let e1 = y0.checked_add(&y1).unwrap().checked_add(&y2).unwrap();
        let e2 = y0
            .checked_mul(&y1)
            .unwrap()
            .checked_add(&y0.checked_mul(&y2).unwrap())
            .unwrap()
            .checked_add(&y1.checked_mul(&y2).unwrap())
            .unwrap();
        let e3 = y0
            .checked_mul(&y1)
            .unwrap()
            .checked_mul(&y2)
            .unwrap();
        let ok = e1.is_zero()
            && e2.add_rational(&ratio(3, 4)).is_zero()
            && e3.add_rational(&(-(u * ratio(1, 4)))).is_zero();
        if !ok {
            bad_symmetric += 1;
        }
    }
    c.check("every sample has exact zero residual", bad_residual == 0);
    c.check(
        "every root set matches the elementary symmetric values (0, -3/4, u/4)",
        bad_symmetric == 0,
    );
    c.finish();
}

#[test]
fn criterion_05_cubic_solver() {
    let mut c = Criterion::start(5, "totally real cubic solver over 50 samples");
    let mut g = rng(5);
    let base = rationals();
    let mut solved = 0u32;
    let mut refused = 0u32;
    let mut not_refused = 0u32;
    let mut bad_residual = 0u32;
    let mut bad_reality = 0u32;
    let mut bad_multiplicity = 0u32;
    let mut bad_critical = 0u32;
    while solved < 50 {
        let p = ratio(g.gen_range(-9i64..=9), g.gen_range(1i64..=4));
        let q = ratio(g.gen_range(-9i64..=9), g.gen_range(1i64..=4));
        let disc = -(q.clone() * q.clone() * rat(27) + p.clone() * p.clone() * p.clone() * rat(4));
        if disc.is_zero() {
            continue;
        }
        let pa = base.from_rational(p.clone());
        let qa = base.from_rational(q.clone());
        if disc.is_negative() {
            match solve_totally_real_cubic(&pa, &qa) {
                Err(Error::NotTotallyReal) => refused += 1,
                _ => not_refused += 1,
            }
            continue;
        }
        let sol = solve_totally_real_cubic(&pa, &qa)
            .expect("a positive discriminant admits the trigonometric solution");
        if sol.multiplicity != [1, 1, 1] {
            bad_multiplicity += 1;
        }
        for r in &sol.roots {
            let residual = r
                .pow(3)
                .checked_add(&r.scale(&p))
                .unwrap()
                .add_rational(&q);
            if !residual.is_zero() {
                bad_residual += 1;
            }
            if !r.is_totally_real() {
                bad_reality += 1;
            }
        }
        // The critical points of x^3 + px + q sit at +-sqrt(-p/3); the
        // product of the critical values equals the negated discriminant
        // over 27.
        let (_, xc) = base
            .adjoin_sqrt(&base.from_rational(-(p.clone() * ratio(1, 3))))
            .expect("positive discriminant forces p < 0");
        let f_plus = xc.pow(3).checked_add(&xc.scale(&p)).unwrap().add_rational(&q);
        let x_neg = xc.neg();
        let f_minus = x_neg
            .pow(3)
            .checked_add(&x_neg.scale(&p))
            .unwrap()
            .add_rational(&q);
        let product = f_plus.checked_mul(&f_minus).unwrap();
        if !product.add_rational(&(disc * ratio(1, 27))).is_zero() {
            bad_critical += 1;
        }
        solved += 1;
    }
    c.check("every root has exact zero residual", bad_residual == 0);
    c.check("every root is totally real", bad_reality == 0);
    c.check("all sampled cubics have three simple roots", bad_multiplicity == 0);
    c.check(
        "negative discriminants are refused",
        refused > 0 && not_refused == 0,
    );
    c.check(
        "critical-value product equals -disc/27 exactly",
        bad_critical == 0,
    );
    let d7 = discriminant_cubic(
        &base.from_rational(ratio(-7, 3)),
        &base.from_rational(ratio(-7, 27)),
    )
    .unwrap();
    c.check(
        "the heptagon cubic has discriminant 49",
        d7.to_rational() == Some(rat(49)),
    );
    c.finish();
}

#[test]
fn criterion_06_reality_predicates() {
    let mut c = Criterion::start(6, "totally real and totally positive predicates");
    let base = rationals();
    let (t1, r2) = base.adjoin_sqrt(&base.from_int(2)).unwrap();
    let one_plus = r2.add_rational(&rat(1));
    let two_plus = r2.add_rational(&rat(2));
    let two_minus = r2.neg().add_rational(&rat(2));
    let (_, v) = t1.adjoin_sqrt(&one_plus).unwrap();
    c.check("sqrt(1 + sqrt2) is not totally real", !v.is_totally_real());
    let (_, w) = t1.adjoin_sqrt(&two_plus).unwrap();
    c.check("sqrt(2 + sqrt2) is totally real", w.is_totally_real());
    let (_, w2) = t1.adjoin_sqrt(&two_minus).unwrap();
    c.check("sqrt(2 - sqrt2) is totally real", w2.is_totally_real());
    c.check(
        "1 + sqrt2 is not totally positive",
        !one_plus.is_totally_positive(),
    );
    c.check("2 + sqrt2 is totally positive", two_plus.is_totally_positive());
    c.finish();
}

#[test]
fn criterion_07_random_traces() {
    let mut c = Criterion::start(7, "random fold traces stay totally real");
    let mut g = rng(7);
    let base = rationals();
    let mut bad_reality = 0u32;
    let mut bad_degree = 0u32;
    for _ in 0..50 {
        let mut tr = Trace::new();
        let mut points: Vec<ObjId> = vec![tr.origin(), tr.unit()];
        let mut lines: Vec<ObjId> = vec![tr.fold_l(tr.origin(), tr.unit()).unwrap()];
        let mut bisections = 0u32;
        let mut trisections = 0u32;
        for _ in 0..7 {
            let degree = tr.current_tower().degree();
            match g.gen_range(0u8..8) {
                0 => {
                    let x = base.from_rational(ratio(g.gen_range(-4i64..=4), g.gen_range(1i64..=3)));
                    let y = base.from_rational(ratio(g.gen_range(-4i64..=4), g.gen_range(1i64..=3)));
                    if let Ok(id) = tr.mark_point(Point::new(x, y)) {
                        points.push(id);
                    }
                }
                1 => {
                    let a = points[g.gen_range(0..points.len())];
                    let b = points[g.gen_range(0..points.len())];
                    if let Ok(id) = tr.fold_l(a, b) {
                        lines.push(id);
                    }
                }
                2 if lines.len() >= 2 => {
                    let a = lines[g.gen_range(0..lines.len())];
                    let b = lines[g.gen_range(0..lines.len())];
                    if let Ok(id) = tr.fold_p(a, b) {
                        points.push(id);
                    }
                }
                3 if bisections < 2 && degree <= 4 => {
                    let a = lines[g.gen_range(0..lines.len())];
                    let b = lines[g.gen_range(0..lines.len())];
                    if let Ok((m, p)) = tr.fold_b(a, b) {
                        lines.push(m);
                        lines.push(p);
                        bisections += 1;
                    }
                }
                4 => {
                    let a = points[g.gen_range(0..points.len())];
                    let b = points[g.gen_range(0..points.len())];
                    if let Ok(id) = tr.perp_bisector_of(a, b) {
                        lines.push(id);
                    }
                }
                5 => {
                    let p = points[g.gen_range(0..points.len())];
                    let l = lines[g.gen_range(0..lines.len())];
                    if let Ok(id) = tr.reflect_point_over(p, l) {
                        points.push(id);
                    }
                }
                6 if trisections < 1 && degree <= 2 => {
                    let u = ratio(g.gen_range(-5i64..=5), 7);
                    let ua = base.from_rational(u);
                    if let Ok((id, _)) = tr.trisect_number(&ua) {
                        points.push(id);
                        trisections += 1;
                    }
                }
                7 => {
                    let l = lines[g.gen_range(0..lines.len())];
                    let m = lines[g.gen_range(0..lines.len())];
                    if let Ok(id) = tr.reflect_line_over(l, m) {
                        lines.push(id);
                    }
                }
                _ => {}
            }
        }
        for (_, obj) in tr.objects() {
            for coord in obj.coords() {
                if !coord.is_totally_real() {
                    bad_reality += 1;
                }
                if !check_degree_condition(coord) {
                    bad_degree += 1;
                }
            }
        }
    }
    c.check("every coordinate is totally real", bad_reality == 0);
    c.check(
        "every coordinate generates a field of degree 2^a 3^b",
        bad_degree == 0,
    );
    c.finish();
}

#[test]
fn criterion_08_refutations_and_conjugate_field() {
    let mut c = Criterion::start(8, "cubic refutations and the conjugate-field demo");
    let base = rationals();
    let obs = refute_via_theorem51(&[base.from_int(-2), base.zero(), base.zero(), base.one()])
        .expect("x^3 - 2 is an admissible cubic");
    c.check("x^3 - 2 is refuted over the rationals", obs.is_some());

    let (t1, r2) = base.adjoin_sqrt(&base.from_int(2)).unwrap();
    let (t2, w) = t1.adjoin_sqrt(&r2.add_rational(&rat(2))).unwrap();
    let obs2 = refute_via_theorem51(&[w.neg(), t2.from_int(-3), t2.zero(), t2.from_int(4)])
        .expect("4x^3 - 3x - sqrt(2 + sqrt2) is an admissible cubic");
    c.check("4x^3 - 3x - sqrt(2 + sqrt2) is refuted", obs2.is_some());

    let demo = corollary52_demo().expect("the demo field assembles");
    c.check("the trisected field has degree 12", demo.field_degree == 12);
    c.check(
        "the trisected field has exactly 8 real embeddings",
        demo.real_embeddings == 8,
    );
    c.check(
        "every step is certified as a Euclidean-with-trisection step",
        demo.et_certificate.is_witness(),
    );
    c.check(
        "the ground field is certified totally real",
        demo.ground_witness.is_witness(),
    );
    c.check(
        "the conjugate cubic carries a discriminant obstruction",
        !demo.conjugate_obstruction.discriminant.is_totally_positive(),
    );
    if demo.full_tower_report.is_witness() {
        c.check(
            "the trisected-field report is consistent with the embedding count",
            false,
        );
    } else {
        c.unattainable(
            "no totally-real certificate for the trisected field can exist: it has 8 real \
             embeddings out of 12, so the demo certifies Euclidean-with-trisection membership \
             and pinpoints the failing trisection step instead",
        );
    }
    c.finish();
}

#[test]
fn criterion_09_two_point_fold_trisects() {
    let mut c = Criterion::start(9, "two-point fold trisects exactly over 25 samples");
    // Directions with integer norms keep the replay's cosine rational, so
    // each sample stays in a tower the incidence checks can afford.
    const DIRS: [(i64, i64); 8] = [
        (1, 0),
        (0, 1),
        (3, 4),
        (4, 3),
        (5, 12),
        (12, 5),
        (8, 15),
        (7, 24),
    ];
    let mut g = rng(9);
    let base = rationals();
    let mut done = 0u32;
    let mut bad_count = 0u32;
    let mut bad_target = 0u32;
    let mut bad_anchor = 0u32;
    let mut bad_triple = 0u32;
    while done < 25 {
        let px = ratio(g.gen_range(-3i64..=3), g.gen_range(1i64..=2));
        let py = ratio(g.gen_range(-3i64..=3), g.gen_range(1i64..=2));
        let d1 = DIRS[g.gen_range(0..DIRS.len())];
        let d2 = DIRS[g.gen_range(0..DIRS.len())];
        let s1 = if g.gen_bool(0.5) { 1 } else { -1 };
        let s2 = if g.gen_bool(0.5) { 1 } else { -1 };
        let d1 = (d1.0, d1.1 * s1);
        let d2 = (d2.0, d2.1 * s2);
        if d1.0 * d2.1 == d1.1 * d2.0 {
            continue;
        }
        let lam = rat(g.gen_range(1i64..=3));
        let q = (
            px.clone() + lam.clone() * rat(d1.0),
            py.clone() + lam * rat(d1.1),
        );
        let r = (px.clone() + rat(d2.0), py.clone() + rat(d2.1));
        let mut tr = Trace::new();
        let pid = tr
            .mark_point(Point::new(
                base.from_rational(px.clone()),
                base.from_rational(py.clone()),
            ))
            .unwrap();
        let qid = tr
            .mark_point(Point::new(base.from_rational(q.0), base.from_rational(q.1)))
            .unwrap();
        let rid = tr
            .mark_point(Point::new(base.from_rational(r.0), base.from_rational(r.1)))
            .unwrap();
        let lid = tr.fold_l(pid, rid).unwrap();
        let res = match tr.fold_t(pid, qid, lid) {
            Ok(res) => res,
            Err(_) => continue,
        };
        if res.lines.len() != 3 || res.witnesses.len() != 3 {
            bad_count += 1;
        }
        let l = tr.line(lid).unwrap();
        let ppt = tr.point(pid).unwrap();
        let qpt = tr.point(qid).unwrap();
        let pb = perp_bisector(&ppt, &qpt).unwrap();
        for w in &res.witnesses {
            if !l.contains(&w.image).unwrap() {
                bad_target += 1;
            }
            let anchor = w
                .second_image
                .as_ref()
                .expect("two-point folds record the anchor's image");
            if !pb.contains(anchor).unwrap() {
                bad_anchor += 1;
            }
        }
        let pq = line_through(&ppt, &qpt).unwrap();
        let l1 = perpendicular_from(&pq, &ppt).unwrap();
        let tri = trisect_between_lines(&l1, &l).unwrap();
        let residual = tri
            .cos_third
            .pow(3)
            .scale(&rat(4))
            .checked_sub(&tri.cos_third.scale(&rat(3)))
            .unwrap()
            .checked_sub(&tri.cos_full)
            .unwrap();
        if !residual.is_zero() {
            bad_triple += 1;
        }
        done += 1;
    }
    c.check("every fold yields three lines with witnesses", bad_count == 0);
    c.check(
        "the moved point's image lands on the target line exactly",
        bad_target == 0,
    );
    c.check(
        "the anchor's image lands on the perpendicular bisector exactly",
        bad_anchor == 0,
    );
    c.check(
        "the replay satisfies cos(full) = 4cos^3(third) - 3cos(third) exactly",
        bad_triple == 0,
    );
    c.finish();
}

fn incidence_is_one_chord_per_conic(sol: &SolutionSet) -> bool {
    sol.incidence.len() == sol.points.len()
        && sol.incidence.iter().all(|triple| {
            triple.iter().all(|i| *i < 6)
                && triple[0] / 2 == 0
                && triple[1] / 2 == 1
                && triple[2] / 2 == 2
        })
}

fn angular_scan(inst: &AlhazenInstance) -> Vec<f64> {
    let (p_re, p_im) = inst.product();
    let (s_re, s_im) = inst.sum();
    let pr = p_re.to_f64().unwrap();
    let pi = p_im.to_f64().unwrap();
    let sr = s_re.to_f64().unwrap();
    let si = s_im.to_f64().unwrap();
    let g = |t: f64| pi * (2.0 * t).cos() - pr * (2.0 * t).sin() - si * t.cos() + sr * t.sin();
    let n = 4096;
    let step = std::f64::consts::TAU / n as f64;
    let mut roots = Vec::new();
    for i in 0..n {
        let (mut lo, mut hi) = (i as f64 * step, (i + 1) as f64 * step);
        let (glo, ghi) = (g(lo), g(hi));
        if glo == 0.0 {
            roots.push(lo);
            continue;
        }
        if glo * ghi >= 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo) * g(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    roots
}

fn matches_scan(inst: &AlhazenInstance, sol: &SolutionSet) -> bool {
    let angles = angular_scan(inst);
    angles.len() == 4
        && sol.points.iter().all(|z| {
            let (x, y) = z.to_f64_pair();
            angles
                .iter()
                .any(|t| (t.cos() - x).abs() < 1e-9 && (t.sin() - y).abs() < 1e-9)
        })
}

#[test]
fn criterion_10_billiard_reflections() {
    let mut c = Criterion::start(10, "circular billiard reflection points");
    let inst = AlhazenInstance::new(rat(2), rat(0), rat(3), rat(0)).unwrap();
    let sol = solve_alhazen(&inst).unwrap();
    c.check("the classic instance has four points", sol.points.len() == 4);
    let mut xs: Vec<BigRational> = Vec::new();
    let mut axis_ok = true;
    let mut chord_ys: Vec<Algebraic> = Vec::new();
    for z in &sol.points {
        match z.re.to_rational() {
            Some(x) => {
                if x == rat(1) || x == rat(-1) {
                    axis_ok &= z.im.is_zero();
                } else {
                    chord_ys.push(z.im.clone());
                }
                xs.push(x);
            }
            None => axis_ok = false,
        }
    }
    xs.sort();
    c.check(
        "x-coordinates are exactly {-1, 5/12, 5/12, 1}",
        xs == vec![rat(-1), ratio(5, 12), ratio(5, 12), rat(1)],
    );
    let chord_ok = chord_ys.len() == 2
        && chord_ys
            .iter()
            .all(|y| y.square().to_rational() == Some(ratio(119, 144)))
        && chord_ys[0].sign() != chord_ys[1].sign();
    c.check(
        "the off-axis points are (5/12, +-sqrt(119)/12)",
        axis_ok && chord_ok,
    );
    c.check(
        "all four points satisfy the reflection identity exactly",
        sol.points
            .iter()
            .all(|z| verify_equation1(&inst, z) == Ok(true)),
    );
    c.check(
        "classic incidence takes one chord from each degenerate conic",
        incidence_is_one_chord_per_conic(&sol),
    );
    c.check("classic points agree with the angular scan", matches_scan(&inst, &sol));

    let mut g = rng(10);
    let mut done = 0u32;
    let mut bad_solve = 0u32;
    let mut bad_sturm = 0u32;
    let mut bad_incidence = 0u32;
    let mut bad_scan = 0u32;
    while done < 20 {
        let ax = ratio(g.gen_range(-5i64..=5), g.gen_range(1i64..=3));
        let sign = if g.gen_bool(0.5) { 1 } else { -1 };
        let ay = ratio(sign * g.gen_range(1i64..=5), g.gen_range(1i64..=3));
        if ax.clone() * ax.clone() + ay.clone() * ay.clone() <= rat(1) {
            continue;
        }
        done += 1;
        let inst = AlhazenInstance::new(ax.clone(), ay.clone(), ax, -ay).unwrap();
        let sol = match solve_alhazen(&inst) {
            Ok(sol) => sol,
            Err(_) => {
                bad_solve += 1;
                continue;
            }
        };
        if sol.points.len() != 4 {
            bad_solve += 1;
        }
        let data = pencil_data(&inst).unwrap();
        let k = data.cubic_constant().unwrap();
        let cubic = RatPoly::new(vec![
            k.to_rational().expect("mirror-symmetric pencils are rational"),
            data.tau.to_rational().expect("mirror-symmetric pencils are rational"),
            BigRational::zero(),
            BigRational::one(),
        ]);
        if cubic.real_root_count() != Ok(3) {
            bad_sturm += 1;
        }
        if !incidence_is_one_chord_per_conic(&sol) {
            bad_incidence += 1;
        }
        if !matches_scan(&inst, &sol) {
            bad_scan += 1;
        }
    }
    c.check("20 random exterior instances solve with four points", bad_solve == 0);
    c.check("each pencil cubic has Sturm count 3", bad_sturm == 0);
    c.check(
        "each solution lies on one chord of each degenerate conic",
        bad_incidence == 0,
    );
    c.check(
        "exact points agree with the angular scan to 1e-9",
        bad_scan == 0,
    );
    c.finish();
}

#[test]
fn criterion_11_marked_ruler_replay() {
    let mut c = Criterion::start(11, "marked-ruler trisection replay over 10 angles");
    let mut g = rng(11);
    let base = rationals();
    let mut bad_length = 0u32;
    let mut bad_circle = 0u32;
    let mut bad_collinear = 0u32;
    let mut bad_cosine = 0u32;
    for _ in 0..10 {
        let m = g.gen_range(2i64..=9);
        let n = g.gen_range(1i64..m);
        let den = m * m + n * n;
        let mut x = ratio(m * m - n * n, den);
        let mut y = ratio(2 * m * n, den);
        if g.gen_bool(0.5) {
            std::mem::swap(&mut x, &mut y);
        }
        let p = Point::new(base.from_rational(x.clone()), base.from_rational(y));
        let rep = archimedes_demo(&p).expect("unit-circle directions in the open first quadrant work");
        if !dist_sq(&rep.c, &rep.d).unwrap().is_one() {
            bad_length += 1;
        }
        if !rep
            .c
            .x
            .square()
            .checked_add(&rep.c.y.square())
            .unwrap()
            .is_one()
        {
            bad_circle += 1;
        }
        let det = rep
            .c
            .x
            .checked_sub(&p.x)
            .unwrap()
            .checked_mul(&rep.d.y.checked_sub(&p.y).unwrap())
            .unwrap()
            .checked_sub(
                &rep.c
                    .y
                    .checked_sub(&p.y)
                    .unwrap()
                    .checked_mul(&rep.d.x.checked_sub(&p.x).unwrap())
                    .unwrap(),
            )
            .unwrap();
        if !det.is_zero() {
            bad_collinear += 1;
        }
        let triple = rep
            .cos_trisected
            .pow(3)
            .scale(&rat(4))
            .checked_sub(&rep.cos_trisected.scale(&rat(3)))
            .unwrap();
        let cosine_ok = triple.checked_sub(&rep.cos_angle).unwrap().is_zero()
            && rep.cos_angle.to_rational() == Some(x);
        if !cosine_ok {
            bad_cosine += 1;
        }
    }
    c.check("|CD| = 1 exactly", bad_length == 0);
    c.check("C lies on the unit circle exactly", bad_circle == 0);
    c.check("P, C, D are collinear exactly", bad_collinear == 0);
    c.check(
        "cos of the tripled angle equals the original cosine exactly",
        bad_cosine == 0,
    );
    c.finish();
}
