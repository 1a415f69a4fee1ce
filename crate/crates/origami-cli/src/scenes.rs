//! Exact-data scene builders for the named figures. Every coordinate that
//! reaches the renderer is a rational approximation taken once from a
//! certified interval; nothing flows back into the kernel.

use num_rational::BigRational;
use num_traits::Zero;

use origami_core::alhazen::{pencil_data, solve_alhazen, AlhazenInstance};
use origami_core::axioms::{FoldResult, ObjId, Trace};
use origami_core::constructions::{archimedes_demo, perp_bisector_fig2};
use origami_core::geometry::{perp_bisector, Line, Point};
use origami_core::rational::{pow10, rat, ratio};
use origami_core::{Algebraic, Result, Tower};

use crate::render::{RenderScene, Shape, Stroke, Viewport};

/// One-way exact-to-rational conversion for drawing, from an interval of
/// width below 1e-12.
pub fn approx(x: &Algebraic) -> BigRational {
    x.principal_interval(&pow10(-12)).mid()
}

fn world(p: &Point) -> (BigRational, BigRational) {
    (approx(&p.x), approx(&p.y))
}

fn dot(p: &Point, label: &str) -> Shape {
    let (x, y) = world(p);
    Shape::Dot {
        x,
        y,
        label: Some(label.to_string()),
    }
}

/// Clips the line ax + by + c = 0 (rational coefficients) to the viewport;
/// returns the extreme pair of border crossings, lexicographically ordered.
fn clip_line(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    vp: &Viewport,
) -> Option<((BigRational, BigRational), (BigRational, BigRational))> {
    let mut candidates: Vec<(BigRational, BigRational)> = Vec::new();
    let mut push = |x: BigRational, y: BigRational| {
        if vp.contains(&x, &y) && !candidates.contains(&(x.clone(), y.clone())) {
            candidates.push((x, y));
        }
    };
    if !b.is_zero() {
        for x in [vp.min_x.clone(), vp.max_x()] {
            let y = -(c + a * x.clone()) / b.clone();
            push(x, y);
        }
    }
    if !a.is_zero() {
        for y in [vp.min_y.clone(), vp.max_y()] {
            let x = -(c + b * y.clone()) / a.clone();
            push(x, y);
        }
    }
    if candidates.len() < 2 {
        return None;
    }
    let mut best: Option<((BigRational, BigRational), (BigRational, BigRational), BigRational)> =
        None;
    for i in 0..candidates.len() {
        for j in (i + 1)..candidates.len() {
            let dx = candidates[i].0.clone() - candidates[j].0.clone();
            let dy = candidates[i].1.clone() - candidates[j].1.clone();
            let d = dx.clone() * dx + dy.clone() * dy;
            if best.as_ref().map_or(true, |(_, _, bd)| d > *bd) {
                let (p, q) = if candidates[i] <= candidates[j] {
                    (candidates[i].clone(), candidates[j].clone())
                } else {
                    (candidates[j].clone(), candidates[i].clone())
                };
                best = Some((p, q, d));
            }
        }
    }
    best.map(|(p, q, _)| (p, q))
}

/// A constructed line clipped into the viewport, or None when it misses.
pub fn line_shape(l: &Line, vp: &Viewport, stroke: Stroke) -> Option<Shape> {
    let a = approx(l.a());
    let b = approx(l.b());
    let c = approx(l.c());
    clip_line(&a, &b, &c, vp).map(|(p, q)| Shape::Segment {
        x1: p.0,
        y1: p.1,
        x2: q.0,
        y2: q.1,
        stroke,
    })
}

fn axis_shape(vp: &Viewport) -> Option<Shape> {
    clip_line(&rat(0), &rat(1), &rat(0), vp).map(|(p, q)| Shape::Segment {
        x1: p.0,
        y1: p.1,
        x2: q.0,
        y2: q.1,
        stroke: Stroke::Axis,
    })
}

fn unit_circle() -> Shape {
    Shape::Circle {
        cx: rat(0),
        cy: rat(0),
        r: rat(1),
        stroke: Stroke::Outline,
    }
}

/// The marked-ruler trisection diagram: unit circle, the direction point P,
/// and the sliding segment CD of unit length along the ruler through P.
pub fn archimedes_scene() -> Result<RenderScene> {
    let base = Tower::rationals();
    let p = Point::new(base.from_rational(ratio(3, 5)), base.from_rational(ratio(4, 5)));
    let rep = archimedes_demo(&p)?;
    let vp = Viewport::new(ratio(-13, 5), ratio(-13, 10), rat(4), ratio(13, 5));
    let mut scene = RenderScene::new(vp.clone());
    if let Some(axis) = axis_shape(&vp) {
        scene.push(axis);
    }
    scene.push(unit_circle());
    let (px, py) = world(&p);
    let (dx, dy) = world(&rep.d);
    scene.push(Shape::Segment {
        x1: px,
        y1: py,
        x2: dx,
        y2: dy,
        stroke: Stroke::Fold,
    });
    let origin = Point::new(base.zero(), base.zero());
    scene.push(dot(&origin, "O"));
    scene.push(dot(&p, "P"));
    scene.push(dot(&rep.c, "C"));
    scene.push(dot(&rep.d, "D"));
    Ok(scene)
}

/// Trace and object ids for the perpendicular-bisector fold between two
/// fixed marked points.
pub fn perp_bisector_parts() -> Result<(Trace, ObjId, ObjId, ObjId)> {
    let base = Tower::rationals();
    let mut trace = Trace::new();
    let a = trace.mark_point(Point::from_ints(&base, -1, -1))?;
    let b = trace.mark_point(Point::from_ints(&base, 1, 1))?;
    let fold = perp_bisector_fig2(&mut trace, a, b)?;
    Ok((trace, a, b, fold))
}

pub fn perp_bisector_scene() -> Result<RenderScene> {
    let (trace, a, b, fold) = perp_bisector_parts()?;
    let pa = trace.point(a)?;
    let pb = trace.point(b)?;
    let l = trace.line(fold)?;
    let vp = Viewport::new(ratio(-5, 2), rat(-2), rat(5), rat(4));
    let mut scene = RenderScene::new(vp.clone());
    let (ax, ay) = world(&pa);
    let (bx, by) = world(&pb);
    scene.push(Shape::Segment {
        x1: ax,
        y1: ay,
        x2: bx,
        y2: by,
        stroke: Stroke::Axis,
    });
    if let Some(shape) = line_shape(&l, &vp, Stroke::Fold) {
        scene.push(shape);
    }
    scene.push(dot(&pa, "A"));
    scene.push(dot(&pb, "B"));
    scene.push(dot(&Point::midpoint(&pa, &pb)?, "M"));
    Ok(scene)
}

/// Trace and fold data for the two-point fold on a fixed configuration:
/// P at the origin on the horizontal axis, Q at (3, 4).
pub fn two_point_fold_parts() -> Result<(Trace, ObjId, ObjId, ObjId, FoldResult)> {
    let base = Tower::rationals();
    let mut trace = Trace::new();
    let p = trace.mark_point(Point::from_ints(&base, 0, 0))?;
    let q = trace.mark_point(Point::from_ints(&base, 3, 4))?;
    let r = trace.mark_point(Point::from_ints(&base, 1, 0))?;
    let l = trace.fold_l(p, r)?;
    let folds = trace.fold_t(p, q, l)?;
    Ok((trace, p, q, l, folds))
}

pub fn two_point_fold_scene() -> Result<RenderScene> {
    let (trace, p, q, l, folds) = two_point_fold_parts()?;
    let pp = trace.point(p)?;
    let qq = trace.point(q)?;
    let target = trace.line(l)?;
    let vp = Viewport::new(rat(-6), rat(-3), rat(12), rat(8));
    let mut scene = RenderScene::new(vp.clone());
    if let Some(shape) = line_shape(&target, &vp, Stroke::Axis) {
        scene.push(shape);
    }
    let bisector = perp_bisector(&pp, &qq)?;
    if let Some(shape) = line_shape(&bisector, &vp, Stroke::Aux) {
        scene.push(shape);
    }
    for id in &folds.lines {
        let fold = trace.line(*id)?;
        if let Some(shape) = line_shape(&fold, &vp, Stroke::Fold) {
            scene.push(shape);
        }
    }
    for w in &folds.witnesses {
        let (x, y) = world(&w.image);
        scene.push(Shape::Dot { x, y, label: None });
        if let Some(second) = &w.second_image {
            let (x, y) = world(second);
            scene.push(Shape::Dot { x, y, label: None });
        }
    }
    scene.push(dot(&pp, "P"));
    scene.push(dot(&qq, "Q"));
    Ok(scene)
}

/// Branches of the locus 2q·xy + s·x − r·y = 0 sampled inside the
/// viewport. When s = 0 the locus degenerates into the horizontal axis
/// plus the vertical line through the asymptote.
fn hyperbola_shapes(
    q: &BigRational,
    r: &BigRational,
    s: &BigRational,
    vp: &Viewport,
    steps: i64,
) -> Vec<Shape> {
    let two_q = rat(2) * q.clone();
    let asymptote = r / &two_q;
    if s.is_zero() {
        let mut shapes = Vec::new();
        if let Some((p1, p2)) = clip_line(&rat(0), &rat(1), &rat(0), vp) {
            shapes.push(Shape::Segment {
                x1: p1.0,
                y1: p1.1,
                x2: p2.0,
                y2: p2.1,
                stroke: Stroke::Curve,
            });
        }
        if let Some((p1, p2)) = clip_line(&rat(1), &rat(0), &(-asymptote), vp) {
            shapes.push(Shape::Segment {
                x1: p1.0,
                y1: p1.1,
                x2: p2.0,
                y2: p2.1,
                stroke: Stroke::Curve,
            });
        }
        return shapes;
    }
    let gap = vp.width.clone() * ratio(1, 32);
    let ranges = [
        (vp.min_x.clone(), asymptote.clone() - gap.clone()),
        (asymptote + gap, vp.max_x()),
    ];
    let mut shapes = Vec::new();
    for (lo, hi) in ranges {
        if hi <= lo {
            continue;
        }
        let step = (hi.clone() - lo.clone()) * ratio(1, steps);
        let mut run: Vec<(BigRational, BigRational)> = Vec::new();
        for i in 0..=steps {
            let x = lo.clone() + step.clone() * rat(i);
            let denom = r - &two_q * x.clone();
            if denom.is_zero() {
                continue;
            }
            let y = s * x.clone() / denom;
            if vp.contains(&x, &y) {
                run.push((x, y));
            } else if run.len() >= 2 {
                shapes.push(Shape::Polyline {
                    points: std::mem::take(&mut run),
                    stroke: Stroke::Curve,
                });
            } else {
                run.clear();
            }
        }
        if run.len() >= 2 {
            shapes.push(Shape::Polyline {
                points: run,
                stroke: Stroke::Curve,
            });
        }
    }
    shapes
}

/// The circular-billiard figure for the endpoints a = 2, b = 3: unit
/// circle, the bisection locus, the six chord lines, and the four
/// reflection points.
pub fn billiard_scene() -> Result<RenderScene> {
    let inst = AlhazenInstance::new(rat(2), rat(0), rat(3), rat(0))?;
    let solution = solve_alhazen(&inst)?;
    let data = pencil_data(&inst)?;
    let q = data.q.to_rational().expect("rational endpoints keep the pencil rational");
    let r = data.r.to_rational().expect("rational endpoints keep the pencil rational");
    let s = data.s.to_rational().expect("rational endpoints keep the pencil rational");
    let vp = Viewport::new(ratio(-8, 5), ratio(-8, 5), rat(5), ratio(16, 5));
    let mut scene = RenderScene::new(vp.clone());
    if let Some(axis) = axis_shape(&vp) {
        scene.push(axis);
    }
    for shape in hyperbola_shapes(&q, &r, &s, &vp, 64) {
        scene.push(shape);
    }
    for line in &solution.lines {
        if let Some(shape) = line_shape(line, &vp, Stroke::Fold) {
            scene.push(shape);
        }
    }
    scene.push(unit_circle());
    for z in &solution.points {
        let p = z.to_point();
        let (x, y) = world(&p);
        scene.push(Shape::Dot { x, y, label: None });
    }
    let base = Tower::rationals();
    scene.push(dot(&Point::from_ints(&base, 2, 0), "a"));
    scene.push(dot(&Point::from_ints(&base, 3, 0), "b"));
    Ok(scene)
}

/// A regular polygon on the unit circle from its exact vertices.
pub fn polygon_scene(vertices: &[Point]) -> RenderScene {
    let vp = Viewport::new(ratio(-3, 2), ratio(-3, 2), rat(3), rat(3));
    let mut scene = RenderScene::new(vp.clone());
    scene.push(unit_circle());
    if vertices.len() >= 2 {
        let mut points: Vec<(BigRational, BigRational)> =
            vertices.iter().map(world).collect();
        points.push(points[0].clone());
        scene.push(Shape::Polyline {
            points,
            stroke: Stroke::Fold,
        });
    }
    for v in vertices {
        let (x, y) = world(v);
        scene.push(Shape::Dot { x, y, label: None });
    }
    scene
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipping_keeps_only_border_crossings() {
        let vp = Viewport::new(rat(-1), rat(-1), rat(2), rat(2));
        let (p, q) = clip_line(&rat(0), &rat(1), &rat(0), &vp).unwrap();
        assert_eq!(p, (rat(-1), rat(0)));
        assert_eq!(q, (rat(1), rat(0)));
        assert!(clip_line(&rat(0), &rat(1), &rat(5), &vp).is_none());
    }

    #[test]
    fn diagonal_clips_to_the_corners() {
        let vp = Viewport::new(rat(-1), rat(-1), rat(2), rat(2));
        let (p, q) = clip_line(&rat(1), &rat(-1), &rat(0), &vp).unwrap();
        assert_eq!(p, (rat(-1), rat(-1)));
        assert_eq!(q, (rat(1), rat(1)));
    }

    #[test]
    fn degenerate_hyperbola_splits_into_axis_and_vertical() {
        let vp = Viewport::new(rat(-2), rat(-2), rat(4), rat(4));
        let shapes = hyperbola_shapes(&rat(6), &rat(5), &rat(0), &vp, 16);
        assert_eq!(shapes.len(), 2);
    }

    #[test]
    fn generic_hyperbola_produces_two_branches() {
        let vp = Viewport::new(rat(-2), rat(-2), rat(4), rat(4));
        let shapes = hyperbola_shapes(&rat(2), &rat(1), &rat(1), &vp, 32);
        assert!(shapes.len() >= 2);
        for s in &shapes {
            if let Shape::Polyline { points, .. } = s {
                assert!(points.len() >= 2);
            }
        }
    }

    #[test]
    fn named_scenes_build() {
        assert!(!archimedes_scene().unwrap().shapes.is_empty());
        assert!(!perp_bisector_scene().unwrap().shapes.is_empty());
        assert!(!two_point_fold_scene().unwrap().shapes.is_empty());
        assert!(!billiard_scene().unwrap().shapes.is_empty());
    }
}
