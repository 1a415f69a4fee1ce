//! Worked fold constructions: square roots by marking a hypotenuse off,
//! the regular pentagon and heptagon with exact vertex coordinates, a
//! four-fold perpendicular bisector, and a verified replay of the
//! marked-ruler trisection on the unit circle.

use crate::axioms::{Axiom, ObjId, Trace};
use crate::error::{Error, Result};
use crate::geometry::{
    angle_bisectors, dist_sq, line_through, perp_bisector, reflect_point, trisect_between_lines,
    Bisectors, Line, Point,
};
use crate::rational::{rat, ratio};
use crate::tower::{Algebraic, Tower};
use std::collections::BTreeSet;

/// A named construction together with the fold trace that realizes it
/// and the axiom set it is allowed to draw on.
pub struct ConstructionRecipe {
    pub name: String,
    pub required_axioms: BTreeSet<Axiom>,
    pub trace: Trace,
}

impl ConstructionRecipe {
    /// True when every step of the trace stays inside the declared
    /// axiom set.
    pub fn profile_within_declared(&self) -> bool {
        self.trace
            .axiom_profile()
            .is_subset(&self.required_axioms)
    }
}

fn abs(x: &Algebraic) -> Algebraic {
    if x.sign() < 0 {
        x.neg()
    } else {
        x.clone()
    }
}

/// sqrt(x_1^2 + ... + x_n^2), built one leg at a time: with the running
/// hypotenuse h laid along the x-axis as A = (h, 0) and the next leg
/// raised as B = (0, x), bisecting the angle at A between line AB and
/// the axis folds B onto the axis at distance |AB| from A. Each step
/// therefore extends the field by at most one square root, and only by
/// square roots of sums of two squares.
pub fn hypotenuse_sqrt(xs: &[Algebraic]) -> Result<Algebraic> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut h = abs(&xs[0]);
    for x in &xs[1..] {
        if x.is_zero() {
            continue;
        }
        let (hc, xc) = Algebraic::unify(&h, x)?;
        let tw = hc.tower().clone();
        let a = Point::new(hc.clone(), tw.zero());
        let b = Point::new(tw.zero(), xc.clone());
        let ab = line_through(&a, &b)?;
        let axis = Line::new(tw.zero(), tw.one(), tw.zero())?;
        let pair = match angle_bisectors(&ab, &axis)? {
            Bisectors::Pair(m, n) => (m, n),
            Bisectors::Midline(_) => unreachable!("line AB meets the axis at A"),
        };
        let img = reflect_point(&b, &pair.0)?;
        assert!(img.y.is_zero(), "folding a leg must land it on the axis");
        let v = hc.checked_sub(&img.x)?;
        h = if v.sign() > 0 {
            v
        } else {
            let img = reflect_point(&b, &pair.1)?;
            assert!(img.y.is_zero(), "folding a leg must land it on the axis");
            hc.checked_sub(&img.x)?
        };
        assert!(h.sign() > 0);
        let residual = h
            .square()
            .checked_sub(&hc.square())?
            .checked_sub(&xc.square())?;
        assert!(residual.is_zero(), "hypotenuse must satisfy h^2 = a^2 + b^2");
    }
    Ok(h)
}

/// Perpendicular bisector of the segment between two marked points by
/// four creases: fold the connecting line, raise the perpendiculars at
/// both endpoints, bisect the two right angles, and connect the two
/// crossings of the slanted creases. The result is checked against the
/// directly computed perpendicular bisector and returned as an object
/// of the trace.
pub fn perp_bisector_fig2(trace: &mut Trace, a: ObjId, b: ObjId) -> Result<ObjId> {
    let ab = trace.fold_l(a, b)?;
    let pa = trace.perp_at(ab, a)?;
    let pb = trace.perp_at(ab, b)?;
    let (a1, a2) = trace.fold_b(ab, pa)?;
    let (b1, b2) = trace.fold_b(ab, pb)?;
    let c = match trace.fold_p(a1, b1) {
        Ok(c) => c,
        Err(Error::ParallelLines) => trace.fold_p(a1, b2)?,
        Err(e) => return Err(e),
    };
    let d = match trace.fold_p(a2, b2) {
        Ok(d) => d,
        Err(Error::ParallelLines) => trace.fold_p(a2, b1)?,
        Err(e) => return Err(e),
    };
    let cd = trace.fold_l(c, d)?;
    let direct = perp_bisector(&trace.point(a)?, &trace.point(b)?)?;
    assert!(
        trace.line(cd)? == direct,
        "the four-fold bisector must equal the direct one"
    );
    Ok(cd)
}

/// Exact vertices of the regular n-gon inscribed in the unit circle,
/// starting from (1, 0) and rotating by the angle with the given cosine
/// and sine. Checks that the walk closes up after n steps.
fn unit_vertices(c: &Algebraic, s: &Algebraic, n: usize) -> Result<Vec<Point>> {
    let (c, s) = Algebraic::unify(c, s)?;
    let tw = c.tower().clone();
    let mut cx = tw.one();
    let mut cy = tw.zero();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(Point::new(cx.clone(), cy.clone()));
        let nx = cx.checked_mul(&c)?.checked_sub(&cy.checked_mul(&s)?)?;
        let ny = cy.checked_mul(&c)?.checked_add(&cx.checked_mul(&s)?)?;
        cx = nx;
        cy = ny;
    }
    assert!(
        cx.is_one() && cy.is_zero(),
        "rotating n times by 2*pi/n must return to the start"
    );
    Ok(out)
}

fn polygon_trace(vertices: &[Point]) -> Result<Trace> {
    let mut trace = Trace::new();
    let ids: Vec<ObjId> = vertices
        .iter()
        .map(|v| trace.mark_point(v.clone()))
        .collect::<Result<_>>()?;
    for k in 0..ids.len() {
        trace.fold_l(ids[k], ids[(k + 1) % ids.len()])?;
    }
    Ok(trace)
}

pub struct Pentagon {
    /// cos(2*pi/5), a root of 4x^2 + 2x - 1.
    pub cos: Algebraic,
    /// sin(2*pi/5).
    pub sin: Algebraic,
    pub vertices: Vec<Point>,
    pub recipe: ConstructionRecipe,
}

/// Regular pentagon from square roots alone: sqrt(5) as hypotenuse of
/// the (1, 2) right triangle, cos(2*pi/5) = (sqrt(5) - 1)/4, and
/// sin(2*pi/5) as the hypotenuse over the legs cos(pi/5) and 1/2.
pub fn pentagon() -> Result<Pentagon> {
    let q = Tower::rationals();
    let sqrt5 = hypotenuse_sqrt(&[q.one(), q.from_int(2)])?;
    let c = sqrt5.add_rational(&rat(-1)).scale(&ratio(1, 4));
    let cos_pi_5 = sqrt5.add_rational(&rat(1)).scale(&ratio(1, 4));
    let half = q.from_rational(ratio(1, 2));
    let s = hypotenuse_sqrt(&[cos_pi_5, half])?;
    let circle = s.square().checked_add(&c.square())?;
    assert!(circle.is_one(), "cos^2 + sin^2 = 1 must hold exactly");
    let vertices = unit_vertices(&c, &s, 5)?;
    let trace = polygon_trace(&vertices)?;
    let recipe = ConstructionRecipe {
        name: "pentagon".into(),
        required_axioms: BTreeSet::from([Axiom::L, Axiom::P, Axiom::B]),
        trace,
    };
    assert!(recipe.profile_within_declared());
    Ok(Pentagon {
        cos: c,
        sin: s,
        vertices,
        recipe,
    })
}

pub struct Heptagon {
    /// cos(2*pi/7), a root of 8x^3 + 4x^2 - 4x - 1.
    pub cos: Algebraic,
    /// sin(2*pi/7).
    pub sin: Algebraic,
    pub cos_pi_over_7: Algebraic,
    pub cos_3pi_over_7: Algebraic,
    pub vertices: Vec<Point>,
    pub recipe: ConstructionRecipe,
}

/// Regular heptagon. 2cos(2*pi/7) is the largest root of
/// t^3 + t^2 - 2t - 1; depressing to z^3 - (7/3)z - 7/27 and rescaling
/// by m = sqrt(28)/3 turns it into the trisection equation
/// 4w^3 - 3w = 1/sqrt(28), so one angle trisection plus square roots of
/// sums of squares produce every vertex exactly.
pub fn heptagon() -> Result<Heptagon> {
    let q = Tower::rationals();
    let m_chain = hypotenuse_sqrt(&[
        q.from_rational(ratio(4, 3)),
        q.from_rational(ratio(2, 3)),
        q.from_rational(ratio(2, 3)),
        q.from_rational(ratio(2, 3)),
    ])?;
    let m_sq = m_chain.square();
    assert!(m_sq
        .checked_sub(&m_chain.tower().from_rational(ratio(28, 9)))?
        .is_zero());
    // The chain above certifies that m is a fold-constructible length,
    // but it drags the intermediate hypotenuses sqrt(20)/3 and
    // sqrt(24)/3 along in its field. Rebuild m over the minimal tower
    // so the rest of the computation stays in degree 12.
    let (_, m) = q.adjoin_sqrt(&q.from_rational(ratio(28, 9)))?;
    assert_eq!(m.minimal_polynomial(), m_chain.minimal_polynomial());
    let u = m.scale(&rat(3)).inverse()?;
    let u_margin = u.tower().one().checked_sub(&u.square())?;
    assert!(
        u_margin.is_totally_positive(),
        "every conjugate of the trisection input must lie in (-1, 1)"
    );

    let mut trace = Trace::new();
    let (_, w) = trace.trisect_number(&u)?;
    let z = m.lift_to(w.tower())?.checked_mul(&w)?;
    let t = z.add_rational(&ratio(-1, 3));
    let c = t.scale(&ratio(1, 2));
    let residual = c
        .square()
        .checked_mul(&c)?
        .scale(&rat(8))
        .checked_add(&c.square().scale(&rat(4)))?
        .checked_sub(&c.scale(&rat(4)))?
        .add_rational(&rat(-1));
    assert!(residual.is_zero(), "8c^3 + 4c^2 - 4c - 1 must vanish");
    assert!(c.tower().is_totally_real());

    let half_arg = c.add_rational(&rat(1)).scale(&ratio(1, 2));
    assert!(half_arg.is_totally_positive());
    let depth_before = c.tower().height();
    let (tw_half, cos_pi_7) = c.tower().adjoin_sqrt(&half_arg)?;
    assert_eq!(
        tw_half.height(),
        depth_before,
        "cos(pi/7) must lie in the trisection field already"
    );
    let cl = c.lift_to(&tw_half)?;
    let triple = cl
        .scale(&rat(3))
        .checked_sub(&cl.square().checked_mul(&cl)?.scale(&rat(4)))?;
    assert!(cos_pi_7 == triple, "cos(pi/7) = 3c - 4c^3");
    let cos_3pi_7 = cos_pi_7
        .square()
        .checked_mul(&cos_pi_7)?
        .scale(&rat(4))
        .checked_sub(&cos_pi_7.scale(&rat(3)))?;

    // sqrt(3) is the three-unit-legs hypotenuse, but replaying that
    // recipe here would pass through sqrt(2) and double the working
    // degree twice over; adjoin it directly instead.
    let (tw3, sqrt3) = tw_half.adjoin_sqrt(&tw_half.from_int(3))?;
    assert!(tw3.is_totally_real());
    let leg_a = sqrt3
        .scale(&ratio(1, 2))
        .checked_mul(&cos_pi_7.lift_to(&tw3)?)?;
    let leg_b = cos_3pi_7.lift_to(&tw3)?.square();
    let s = hypotenuse_sqrt(&[leg_a, leg_b])?;
    let sine_identity = s
        .square()
        .scale(&rat(4))
        .checked_sub(&cos_pi_7.square().scale(&rat(3)))?
        .checked_sub(&cos_3pi_7.square().square().scale(&rat(4)))?;
    assert!(
        sine_identity.is_zero(),
        "4 sin^2(2pi/7) = 3 cos^2(pi/7) + 4 cos^4(3pi/7)"
    );
    let circle = s.square().checked_add(&c.square())?;
    assert!(circle.is_one());

    let s = s.demote();
    let vertices = unit_vertices(&c, &s, 7)?;
    let ids: Vec<ObjId> = vertices
        .iter()
        .map(|v| trace.mark_point(v.clone()))
        .collect::<Result<_>>()?;
    for k in 0..ids.len() {
        trace.fold_l(ids[k], ids[(k + 1) % ids.len()])?;
    }
    let recipe = ConstructionRecipe {
        name: "heptagon".into(),
        required_axioms: BTreeSet::from([Axiom::L, Axiom::P, Axiom::B, Axiom::T]),
        trace,
    };
    assert!(recipe.profile_within_declared());
    Ok(Heptagon {
        cos: c,
        sin: s,
        cos_pi_over_7: cos_pi_7,
        cos_3pi_over_7: cos_3pi_7,
        vertices,
        recipe,
    })
}

/// Exact replay of the marked-ruler trisection. For an acute angle with
/// vertex O, found as the direction point P on the unit circle, the
/// trisected angle places D = (-2cos(theta/3), 0) and
/// C = (-cos(theta/3), sin(theta/3)); the report certifies that C, D, P
/// are collinear, that the segment CD has unit length with C on the
/// circle, and that the angle at D is exactly a third of the original.
pub struct ArchimedesReport {
    pub c: Point,
    pub d: Point,
    pub cos_angle: Algebraic,
    pub cos_trisected: Algebraic,
}

pub fn archimedes_demo(p: &Point) -> Result<ArchimedesReport> {
    let radius = p.x.square().checked_add(&p.y.square())?;
    if !radius.is_one() {
        return Err(Error::DegenerateInput(
            "the direction point must lie on the unit circle".into(),
        ));
    }
    if p.x.sign() <= 0 || p.y.sign() <= 0 {
        return Err(Error::NotAcute);
    }
    let tw = p.x.tower().clone();
    let origin = Point::new(tw.zero(), tw.zero());
    let axis = Line::new(tw.zero(), tw.one(), tw.zero())?;
    let ray = line_through(&origin, p)?;
    let tri = trisect_between_lines(&axis, &ray)?;
    let y = tri.cos_third.clone();
    let s = tri.sin_third.clone();
    let (px, u) = Algebraic::unify(&p.x, &tri.cos_full)?;
    assert!(px == u, "the frame cosine must be the x-coordinate exactly");

    let zero = y.tower().zero();
    let d = Point::new(y.scale(&rat(-2)), zero.clone());
    let c = Point::new(y.neg(), s.clone());
    assert!(dist_sq(&c, &d)?.is_one(), "the marked segment has length 1");
    assert!(
        dist_sq(&c, &Point::new(zero.clone(), zero))?.is_one(),
        "C stays on the circle"
    );
    let cd_x = c.x.checked_sub(&d.x)?;
    let cd_y = c.y.checked_sub(&d.y)?;
    let dp_x = p.x.checked_sub(&d.x)?;
    let dp_y = p.y.checked_sub(&d.y)?;
    let det = cd_x.checked_mul(&dp_y)?.checked_sub(&cd_y.checked_mul(&dp_x)?)?;
    assert!(det.is_zero(), "C, D, P must be collinear");

    let reach = y.square().scale(&rat(4)).add_rational(&rat(-1));
    let dp_sq = dist_sq(&d, p)?;
    assert!(
        dp_sq.checked_sub(&reach.square())?.is_zero(),
        "|DP| = 4cos^2(theta/3) - 1"
    );
    let cos_triple = y.square().checked_mul(&y)?.scale(&rat(4)).checked_sub(&y.scale(&rat(3)))?;
    let (a, b) = Algebraic::unify(&cos_triple, &tri.cos_full)?;
    assert!(a == b, "tripling the third recovers the original cosine");
    let px_pred = cos_triple;
    let py_pred = reach.checked_mul(&s)?;
    assert!(Point::new(px_pred, py_pred) == *p);

    Ok(ArchimedesReport {
        c,
        d,
        cos_angle: tri.cos_full,
        cos_trisected: y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatPoly;

    fn close(x: &Algebraic, target: f64) {
        assert!((x.to_f64() - target).abs() < 1e-12, "{} != {}", x.to_f64(), target);
    }

    #[test]
    fn hypotenuse_of_three_four_is_five() {
        let q = Tower::rationals();
        let h = hypotenuse_sqrt(&[q.from_int(3), q.from_int(4)]).unwrap();
        assert_eq!(h.to_rational(), Some(rat(5)));
    }

    #[test]
    fn hypotenuse_of_one_two_is_the_square_root_of_five() {
        let q = Tower::rationals();
        let h = hypotenuse_sqrt(&[q.one(), q.from_int(2)]).unwrap();
        assert!(h.square().checked_sub(&h.tower().from_int(5)).unwrap().is_zero());
        assert!(h.sign() > 0);
        assert_eq!(h.minimal_polynomial(), RatPoly::from_descending_ints(&[1, 0, -5]));
    }

    #[test]
    fn hypotenuse_of_three_unit_legs_is_the_square_root_of_three() {
        let q = Tower::rationals();
        let h = hypotenuse_sqrt(&[q.one(), q.one(), q.one()]).unwrap();
        assert!(h.square().checked_sub(&h.tower().from_int(3)).unwrap().is_zero());
        assert_eq!(h.minimal_polynomial(), RatPoly::from_descending_ints(&[1, 0, -3]));
    }

    #[test]
    fn hypotenuse_handles_signs_zeros_and_empty_input() {
        let q = Tower::rationals();
        let h = hypotenuse_sqrt(&[q.from_int(-3), q.zero(), q.from_int(4)]).unwrap();
        assert_eq!(h.to_rational(), Some(rat(5)));
        assert_eq!(hypotenuse_sqrt(&[q.zero(), q.zero()]).unwrap().to_rational(), Some(rat(0)));
        assert!(matches!(hypotenuse_sqrt(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn four_fold_bisector_of_a_horizontal_segment() {
        let mut trace = Trace::new();
        let q = Tower::rationals();
        let b = trace.mark_point(Point::from_ints(&q, 4, 0)).unwrap();
        let a = trace.origin();
        let cd = perp_bisector_fig2(&mut trace, a, b).unwrap();
        let line = trace.line(cd).unwrap();
        assert!(line.a().is_one());
        assert!(line.b().is_zero());
        assert_eq!(line.c().to_rational(), Some(rat(-2)));
        let profile = trace.axiom_profile();
        assert!(profile.is_subset(&BTreeSet::from([Axiom::L, Axiom::P, Axiom::B])));
    }

    #[test]
    fn four_fold_bisector_of_a_vertical_segment() {
        let mut trace = Trace::new();
        let q = Tower::rationals();
        let b = trace.mark_point(Point::from_ints(&q, 0, 2)).unwrap();
        let a = trace.origin();
        let cd = perp_bisector_fig2(&mut trace, a, b).unwrap();
        let line = trace.line(cd).unwrap();
        assert!(line.a().is_zero());
        assert!(line.b().is_one());
        assert_eq!(line.c().to_rational(), Some(rat(-1)));
    }

    #[test]
    fn four_fold_bisector_of_a_slanted_segment() {
        let mut trace = Trace::new();
        let q = Tower::rationals();
        let a = trace.mark_point(Point::from_ints(&q, 1, 1)).unwrap();
        let b = trace.mark_point(Point::from_ints(&q, 4, 5)).unwrap();
        perp_bisector_fig2(&mut trace, a, b).unwrap();
    }

    #[test]
    fn pentagon_has_the_expected_cosine_and_vertices() {
        let p = pentagon().unwrap();
        assert_eq!(p.cos.minimal_polynomial(), RatPoly::from_descending_ints(&[4, 2, -1]));
        close(&p.cos, 0.30901699437494745);
        close(&p.sin, 0.9510565162951535);
        assert_eq!(p.vertices.len(), 5);
        let origin = Point::new(p.cos.tower().zero(), p.cos.tower().zero());
        let side = dist_sq(&p.vertices[0], &p.vertices[1]).unwrap();
        let mut sum_x = p.cos.tower().zero();
        let mut sum_y = sum_x.clone();
        for k in 0..5 {
            assert!(dist_sq(&p.vertices[k], &origin).unwrap().is_one());
            let chord = dist_sq(&p.vertices[k], &p.vertices[(k + 1) % 5]).unwrap();
            assert!(chord.checked_sub(&side).unwrap().is_zero());
            sum_x = sum_x.checked_add(&p.vertices[k].x).unwrap();
            sum_y = sum_y.checked_add(&p.vertices[k].y).unwrap();
        }
        assert!(sum_x.is_zero() && sum_y.is_zero());
        assert!(p.recipe.profile_within_declared());
    }

    #[test]
    fn heptagon_cosine_satisfies_the_cubic_and_the_sine_identity() {
        let h = heptagon().unwrap();
        assert_eq!(h.cos.minimal_polynomial(), RatPoly::from_descending_ints(&[8, 4, -4, -1]));
        close(&h.cos, 0.6234898018587336);
        close(&h.sin, 0.7818314824680298);
        close(&h.cos_pi_over_7, 0.9009688679024191);
        close(&h.cos_3pi_over_7, 0.22252093395631445);
        assert_eq!(h.vertices.len(), 7);
        let origin = Point::new(h.cos.tower().zero(), h.cos.tower().zero());
        let side = dist_sq(&h.vertices[0], &h.vertices[1]).unwrap();
        for k in 0..7 {
            assert!(dist_sq(&h.vertices[k], &origin).unwrap().is_one());
            let chord = dist_sq(&h.vertices[k], &h.vertices[(k + 1) % 7]).unwrap();
            assert!(chord.checked_sub(&side).unwrap().is_zero());
        }
        let profile = h.recipe.trace.axiom_profile();
        assert!(profile.contains(&Axiom::T));
        assert!(h.recipe.profile_within_declared());
        assert!(h.cos.is_totally_real());
        assert_eq!(h.cos.minimal_polynomial().real_root_count().unwrap(), 3);
    }

    #[test]
    fn archimedes_replay_certifies_a_rational_acute_angle() {
        let q = Tower::rationals();
        let p = Point::new(q.from_rational(ratio(3, 5)), q.from_rational(ratio(4, 5)));
        let report = archimedes_demo(&p).unwrap();
        assert_eq!(report.cos_angle.to_rational(), Some(ratio(3, 5)));
        assert!(report.cos_trisected.to_f64() > 0.0);
    }

    #[test]
    fn archimedes_replay_trisects_sixty_degrees() {
        let q = Tower::rationals();
        let (tw, r3) = q.adjoin_sqrt(&q.from_int(3)).unwrap();
        let p = Point::new(
            tw.from_rational(ratio(1, 2)),
            r3.scale(&ratio(1, 2)),
        );
        let report = archimedes_demo(&p).unwrap();
        assert_eq!(
            report.cos_trisected.minimal_polynomial(),
            RatPoly::from_descending_ints(&[8, 0, -6, -1])
        );
        close(&report.cos_trisected, 0.9396926207859084);
    }

    #[test]
    fn archimedes_replay_rejects_degenerate_directions() {
        let q = Tower::rationals();
        assert!(matches!(
            archimedes_demo(&Point::from_ints(&q, 1, 0)),
            Err(Error::NotAcute)
        ));
        assert!(matches!(
            archimedes_demo(&Point::from_ints(&q, 0, 1)),
            Err(Error::NotAcute)
        ));
        assert!(matches!(
            archimedes_demo(&Point::from_ints(&q, 1, 1)),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn trisect_number_records_a_t_step() {
        let mut trace = Trace::new();
        let q = Tower::rationals();
        let (id, y) = trace.trisect_number(&q.from_rational(ratio(1, 2))).unwrap();
        close(&y, 0.9396926207859084);
        let marked = trace.point(id).unwrap();
        assert!(marked.y.is_zero());
        assert!(trace.axiom_profile().contains(&Axiom::T));
    }
}
