//! Trace-recording fold operations.
//!
//! A [`Trace`] is an append-only construction log: a table of points and
//! lines plus the ordered steps that produced them, each step tagged with
//! the fold axioms it uses. The profile of tags drives classification, so
//! tags are assigned syntactically: a trisection step is tagged `T` even
//! when the particular angle happens to need no new cubic root.
//!
//! All numbers in a trace live on a single tower chain. Every operation
//! lifts its inputs to the trace's current tower before computing, so any
//! square roots or trisection roots are adjoined on top of the shared
//! chain and collapse detection sees everything built so far.

use crate::cubic::trisect_cos;
use crate::error::{Error, Result};
use crate::geometry::{
    angle_frame, dist_sq, intersect, join_towers, line_through, perp_bisector, perpendicular_at,
    perpendicular_from, reflect_line, reflect_point, trisect_between_lines, AngleFrame, Bisectors,
    Line, Point,
};
use crate::geometry::angle_bisectors;
use crate::rational::ratio;
use crate::tower::{Algebraic, NumberDescriptor, StepDescriptor, StepKind, Tower};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Fold axiom tags: connect two points (L), intersect two lines (P),
/// bisect an angle (B), fold a point onto a line through a pivot (E),
/// and the simultaneous two-point fold equivalent to trisection (T).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    L,
    P,
    B,
    E,
    T,
}

impl Axiom {
    pub fn letter(self) -> char {
        match self {
            Axiom::L => 'L',
            Axiom::P => 'P',
            Axiom::B => 'B',
            Axiom::E => 'E',
            Axiom::T => 'T',
        }
    }

    fn from_letter(s: &str) -> Option<Axiom> {
        match s {
            "L" => Some(Axiom::L),
            "P" => Some(Axiom::P),
            "B" => Some(Axiom::B),
            "E" => Some(Axiom::E),
            "T" => Some(Axiom::T),
            _ => None,
        }
    }
}

/// Index of an object in a trace's table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

#[derive(Clone, Debug)]
pub enum Obj {
    Point(Point),
    Line(Line),
}

impl Obj {
    pub fn kind(&self) -> &'static str {
        match self {
            Obj::Point(_) => "point",
            Obj::Line(_) => "line",
        }
    }

    pub fn coords(&self) -> Vec<&Algebraic> {
        match self {
            Obj::Point(p) => vec![&p.x, &p.y],
            Obj::Line(l) => vec![l.a(), l.b(), l.c()],
        }
    }
}

/// One recorded operation. `axioms` is a sorted set: derived helpers
/// (perpendiculars, reflections) collapse a fixed fold recipe into a
/// single step carrying the tags that recipe uses.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub op: String,
    pub axioms: Vec<Axiom>,
    pub inputs: Vec<ObjId>,
    pub outputs: Vec<ObjId>,
}

/// Exact evidence that a fold line satisfies its axiom: the image of the
/// moved point lies on the target line.
#[derive(Clone, Debug)]
pub struct Witness {
    /// Reflection of the moved point across the fold.
    pub image: Point,
    /// For the two-point axiom (T): reflection of the anchor point, which
    /// lands on the perpendicular bisector of the segment.
    pub second_image: Option<Point>,
}

/// Fold lines recorded in the trace, principal solution first, with one
/// witness per line.
#[derive(Clone, Debug)]
pub struct FoldResult {
    pub lines: Vec<ObjId>,
    pub witnesses: Vec<Witness>,
}

/// Append-only construction log seeded with the origin and unit point.
#[derive(Clone, Debug)]
pub struct Trace {
    objects: Vec<Obj>,
    steps: Vec<TraceStep>,
    tower: Tower,
}

impl Default for Trace {
    fn default() -> Self {
        Trace::new()
    }
}

impl Trace {
    pub fn new() -> Trace {
        Trace::with_depth_cap(crate::tower::DEFAULT_DEPTH_CAP)
    }

    pub fn with_depth_cap(cap: usize) -> Trace {
        let tower = Tower::with_depth_cap(cap);
        let mut trace = Trace {
            objects: Vec::new(),
            steps: Vec::new(),
            tower,
        };
        for (i, x) in [0i64, 1].into_iter().enumerate() {
            trace
                .objects
                .push(Obj::Point(Point::from_ints(&trace.tower, x, 0)));
            trace.steps.push(TraceStep {
                op: "seed".into(),
                axioms: vec![],
                inputs: vec![],
                outputs: vec![ObjId(i as u32)],
            });
        }
        trace
    }

    pub fn origin(&self) -> ObjId {
        ObjId(0)
    }

    pub fn unit(&self) -> ObjId {
        ObjId(1)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = (ObjId, &Obj)> {
        self.objects
            .iter()
            .enumerate()
            .map(|(i, o)| (ObjId(i as u32), o))
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn current_tower(&self) -> &Tower {
        &self.tower
    }

    pub fn object(&self, id: ObjId) -> Result<&Obj> {
        self.objects
            .get(id.0 as usize)
            .ok_or_else(|| Error::UnknownObject(format!("no object with id {}", id.0)))
    }

    pub fn point(&self, id: ObjId) -> Result<Point> {
        match self.object(id)? {
            Obj::Point(p) => Ok(p.clone()),
            Obj::Line(_) => Err(Error::UnknownObject(format!(
                "object {} is a line, not a point",
                id.0
            ))),
        }
    }

    pub fn line(&self, id: ObjId) -> Result<Line> {
        match self.object(id)? {
            Obj::Line(l) => Ok(l.clone()),
            Obj::Point(_) => Err(Error::UnknownObject(format!(
                "object {} is a point, not a line",
                id.0
            ))),
        }
    }

    /// The set of axiom tags used by any step so far.
    pub fn axiom_profile(&self) -> BTreeSet<Axiom> {
        self.steps
            .iter()
            .flat_map(|s| s.axioms.iter().copied())
            .collect()
    }

    fn lifted_point(&self, id: ObjId) -> Result<Point> {
        let p = self.point(id)?;
        Ok(Point::new(
            p.x.clone().demote().lift_to(&self.tower)?,
            p.y.clone().demote().lift_to(&self.tower)?,
        ))
    }

    fn lifted_line(&self, id: ObjId) -> Result<Line> {
        self.line(id)?.lifted_to(&self.tower)
    }

    /// Extends the trace's tower chain to cover the new objects, then
    /// stores them and the step. The join happens first so a failure
    /// leaves the trace unchanged.
    fn record(
        &mut self,
        op: &str,
        axioms: &[Axiom],
        inputs: Vec<ObjId>,
        outs: Vec<Obj>,
    ) -> Result<Vec<ObjId>> {
        let mut tower = self.tower.clone();
        for o in &outs {
            for coord in o.coords() {
                tower = join_towers(&tower, coord)?;
            }
        }
        self.tower = tower;
        let mut ids = Vec::with_capacity(outs.len());
        for o in outs {
            ids.push(ObjId(self.objects.len() as u32));
            self.objects.push(o);
        }
        self.steps.push(TraceStep {
            op: op.into(),
            axioms: axioms.to_vec(),
            inputs,
            outputs: ids.clone(),
        });
        Ok(ids)
    }

    /// Adds an externally constructed point; tagged {L, P} since placing
    /// a coordinate point uses connecting folds and intersections.
    pub fn mark_point(&mut self, p: Point) -> Result<ObjId> {
        Ok(self.record("mark_point", &[Axiom::L, Axiom::P], vec![], vec![Obj::Point(p)])?[0])
    }

    /// Axiom (L): the line connecting two constructed points.
    pub fn fold_l(&mut self, p: ObjId, q: ObjId) -> Result<ObjId> {
        let pp = self.lifted_point(p)?;
        let qq = self.lifted_point(q)?;
        let l = line_through(&pp, &qq)?;
        Ok(self.record("fold_L", &[Axiom::L], vec![p, q], vec![Obj::Line(l)])?[0])
    }

    /// Axiom (P): the point where two constructed lines cross.
    pub fn fold_p(&mut self, l1: ObjId, l2: ObjId) -> Result<ObjId> {
        let a = self.lifted_line(l1)?;
        let b = self.lifted_line(l2)?;
        let p = intersect(&a, &b)?;
        Ok(self.record("fold_P", &[Axiom::P], vec![l1, l2], vec![Obj::Point(p)])?[0])
    }

    /// Axiom (B): both bisectors of the angle formed by two crossing
    /// lines.
    pub fn fold_b(&mut self, l1: ObjId, l2: ObjId) -> Result<(ObjId, ObjId)> {
        let a = self.lifted_line(l1)?;
        let b = self.lifted_line(l2)?;
        match angle_bisectors(&a, &b)? {
            Bisectors::Pair(m, p) => {
                let ids = self.record(
                    "fold_B",
                    &[Axiom::B],
                    vec![l1, l2],
                    vec![Obj::Line(m), Obj::Line(p)],
                )?;
                Ok((ids[0], ids[1]))
            }
            Bisectors::Midline(_) => Err(Error::ParallelLines),
        }
    }

    /// Axiom (E): every fold through `q` that places `p` onto the line
    /// `l` — the tangents from `q` to the parabola with focus `p` and
    /// directrix `l`.
    pub fn fold_e(&mut self, p: ObjId, l: ObjId, q: ObjId) -> Result<FoldResult> {
        let pp = self.lifted_point(p)?;
        let ll = self.lifted_line(l)?;
        let qq = self.lifted_point(q)?;
        let folds = fold_e_lines(&pp, &ll, &qq)?;
        let mut witnesses = Vec::with_capacity(folds.len());
        for f in &folds {
            let image = reflect_point(&pp, f)?;
            assert!(
                ll.contains(&image)?,
                "reflected focus must land on the target line"
            );
            assert!(f.contains(&qq)?, "fold must pass through the pivot");
            witnesses.push(Witness {
                image,
                second_image: None,
            });
        }
        let ids = self.record(
            "fold_E",
            &[Axiom::E],
            vec![p, l, q],
            folds.into_iter().map(Obj::Line).collect(),
        )?;
        Ok(FoldResult {
            lines: ids,
            witnesses,
        })
    }

    /// Axiom (T): every fold that places the reflection of `q` on `l`
    /// while the reflection of `p` lands on the perpendicular bisector of
    /// the segment pq. Requires `p` on `l`. Returns all three solutions,
    /// ordered by descending trisection root (principal first).
    pub fn fold_t(&mut self, p: ObjId, q: ObjId, l: ObjId) -> Result<FoldResult> {
        let pp = self.lifted_point(p)?;
        let qq = self.lifted_point(q)?;
        let ll = self.lifted_line(l)?;
        let (folds, witnesses) = fold_t_lines(&pp, &qq, &ll)?;
        let ids = self.record(
            "fold_T",
            &[Axiom::T],
            vec![p, q, l],
            folds.into_iter().map(Obj::Line).collect(),
        )?;
        Ok(FoldResult {
            lines: ids,
            witnesses,
        })
    }

    /// Both interior trisectors of the acute angle between two lines,
    /// recorded as a single T-tagged step.
    pub fn trisect(&mut self, l1: ObjId, l2: ObjId) -> Result<(ObjId, ObjId)> {
        let a = self.lifted_line(l1)?;
        let b = self.lifted_line(l2)?;
        let tr = trisect_between_lines(&a, &b)?;
        let ids = self.record(
            "trisect",
            &[Axiom::T],
            vec![l1, l2],
            vec![Obj::Line(tr.first), Obj::Line(tr.second)],
        )?;
        Ok((ids[0], ids[1]))
    }

    /// Records the trisection of an angle given by its cosine `u`: the
    /// marked point is (cos(θ/3), 0) for the acute angle θ with
    /// cos θ = u. Tagged T even when the field happens not to grow,
    /// since the tag records which fold was performed, not whether it
    /// was algebraically necessary.
    pub fn trisect_number(&mut self, u: &Algebraic) -> Result<(ObjId, Algebraic)> {
        self.tower = join_towers(&self.tower, u)?;
        let ul = u.clone().demote().lift_to(&self.tower)?;
        let (_, y) = trisect_cos(&ul)?;
        let p = Point::new(y.clone(), y.tower().zero());
        let ids = self.record("trisect_number", &[Axiom::T], vec![], vec![Obj::Point(p)])?;
        Ok((ids[0], y))
    }

    /// Perpendicular to a line at a point of it, as a single B-tagged
    /// step (the underlying recipe folds the line onto itself).
    pub fn perp_at(&mut self, l: ObjId, p: ObjId) -> Result<ObjId> {
        let ll = self.lifted_line(l)?;
        let pp = self.lifted_point(p)?;
        let r = perpendicular_at(&ll, &pp)?;
        Ok(self.record("perp_at", &[Axiom::B], vec![l, p], vec![Obj::Line(r)])?[0])
    }

    /// Perpendicular bisector of the segment between two points, as a
    /// single B-tagged step standing in for the four-fold recipe.
    pub fn perp_bisector_of(&mut self, p: ObjId, q: ObjId) -> Result<ObjId> {
        let pp = self.lifted_point(p)?;
        let qq = self.lifted_point(q)?;
        let r = perp_bisector(&pp, &qq)?;
        Ok(self.record("perp_bisector", &[Axiom::B], vec![p, q], vec![Obj::Line(r)])?[0])
    }

    /// Image of a point folded across a line.
    pub fn reflect_point_over(&mut self, p: ObjId, mirror: ObjId) -> Result<ObjId> {
        let pp = self.lifted_point(p)?;
        let mm = self.lifted_line(mirror)?;
        let r = reflect_point(&pp, &mm)?;
        Ok(self.record(
            "reflect_point",
            &[Axiom::B],
            vec![p, mirror],
            vec![Obj::Point(r)],
        )?[0])
    }

    /// Image of a line folded across a line.
    pub fn reflect_line_over(&mut self, l: ObjId, mirror: ObjId) -> Result<ObjId> {
        let ll = self.lifted_line(l)?;
        let mm = self.lifted_line(mirror)?;
        let r = reflect_line(&ll, &mm)?;
        Ok(self.record(
            "reflect_line",
            &[Axiom::B],
            vec![l, mirror],
            vec![Obj::Line(r)],
        )?[0])
    }
}

const SCHEMA: &str = "trace/v1";

#[derive(Serialize, Deserialize)]
struct TraceDoc {
    schema: String,
    seeds: Vec<u32>,
    tower: Vec<StepDescriptor>,
    objects: Vec<ObjDoc>,
    steps: Vec<StepDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ObjDoc {
    Point {
        x: NumberDescriptor,
        y: NumberDescriptor,
    },
    Line {
        a: NumberDescriptor,
        b: NumberDescriptor,
        c: NumberDescriptor,
    },
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    op: String,
    axioms: Vec<String>,
    inputs: Vec<u32>,
    outputs: Vec<u32>,
}

/// Tags each operation is allowed (and required) to carry.
fn expected_axioms(op: &str) -> Option<&'static [Axiom]> {
    Some(match op {
        "seed" => &[],
        "mark_point" => &[Axiom::L, Axiom::P],
        "fold_L" => &[Axiom::L],
        "fold_P" => &[Axiom::P],
        "fold_B" | "perp_at" | "perp_bisector" | "reflect_point" | "reflect_line" => &[Axiom::B],
        "fold_E" => &[Axiom::E],
        "fold_T" | "trisect" | "trisect_number" => &[Axiom::T],
        _ => return None,
    })
}

impl Trace {
    /// Serializes the trace deterministically: same trace, same bytes.
    pub fn export_json(&self) -> String {
        let tower_steps = self
            .tower
            .steps()
            .into_iter()
            .map(|(kind, payload)| StepDescriptor {
                kind: match kind {
                    StepKind::Sqrt => "sqrt".into(),
                    StepKind::Trisect => "trisect".into(),
                },
                data: payload.coords().iter().map(|c| c.to_string()).collect(),
            })
            .collect();
        let objects = self
            .objects
            .iter()
            .map(|o| match o {
                Obj::Point(p) => ObjDoc::Point {
                    x: p.x.describe(),
                    y: p.y.describe(),
                },
                Obj::Line(l) => ObjDoc::Line {
                    a: l.a().describe(),
                    b: l.b().describe(),
                    c: l.c().describe(),
                },
            })
            .collect();
        let steps = self
            .steps
            .iter()
            .map(|s| StepDoc {
                op: s.op.clone(),
                axioms: s.axioms.iter().map(|a| a.letter().to_string()).collect(),
                inputs: s.inputs.iter().map(|i| i.0).collect(),
                outputs: s.outputs.iter().map(|i| i.0).collect(),
            })
            .collect();
        let doc = TraceDoc {
            schema: SCHEMA.into(),
            seeds: vec![0, 1],
            tower: tower_steps,
            objects,
            steps,
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("trace serialization");
        out.push('\n');
        out
    }

    /// Rebuilds a trace from its JSON form, re-adjoining every tower step
    /// and validating the structural invariants. The geometry itself is
    /// not re-derived; coordinates are trusted as recorded.
    pub fn import_json(text: &str, depth_cap: usize) -> Result<Trace> {
        let doc: TraceDoc =
            serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
        if doc.schema != SCHEMA {
            return Err(Error::InvalidTrace(format!(
                "unsupported schema {:?}",
                doc.schema
            )));
        }
        if doc.seeds != [0, 1] {
            return Err(Error::InvalidTrace("seeds must be objects 0 and 1".into()));
        }
        // reuse the element rebuilder to replay the shared chain
        let probe = NumberDescriptor {
            coords: vec!["0".into(); tower_degree_of(&doc.tower)],
            steps: doc.tower,
        };
        let tower = Algebraic::from_descriptor(&probe, depth_cap)?
            .tower()
            .clone();
        let mut objects = Vec::with_capacity(doc.objects.len());
        for (i, od) in doc.objects.iter().enumerate() {
            let rebuild = |d: &NumberDescriptor| -> Result<Algebraic> {
                let x = Algebraic::from_descriptor(d, depth_cap)
                    .map_err(|e| Error::InvalidTrace(format!("object {i}: {e}")))?;
                x.demote().lift_to(&tower).map_err(|_| {
                    Error::InvalidTrace(format!("object {i} lies off the shared tower chain"))
                })
            };
            match od {
                ObjDoc::Point { x, y } => {
                    objects.push(Obj::Point(Point::new(rebuild(x)?, rebuild(y)?)));
                }
                ObjDoc::Line { a, b, c } => {
                    let a = rebuild(a)?;
                    let b = rebuild(b)?;
                    let c = rebuild(c)?;
                    let canonical = a.is_one() || (a.is_zero() && b.is_one());
                    if !canonical {
                        return Err(Error::InvalidTrace(format!(
                            "object {i}: line not in canonical form"
                        )));
                    }
                    objects.push(Obj::Line(Line::new(a, b, c)?));
                }
            }
        }
        let mut steps = Vec::with_capacity(doc.steps.len());
        let mut produced = 0u32;
        for (i, sd) in doc.steps.iter().enumerate() {
            let expected = expected_axioms(&sd.op)
                .ok_or_else(|| Error::InvalidTrace(format!("step {i}: unknown op {:?}", sd.op)))?;
            let axioms = sd
                .axioms
                .iter()
                .map(|s| {
                    Axiom::from_letter(s).ok_or_else(|| {
                        Error::InvalidTrace(format!("step {i}: unknown axiom tag {s:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if axioms != expected {
                return Err(Error::InvalidTrace(format!(
                    "step {i}: op {:?} must carry tags {:?}",
                    sd.op, expected
                )));
            }
            if (sd.op == "seed") != (i < 2) {
                return Err(Error::InvalidTrace(
                    "seed steps must be exactly the first two".into(),
                ));
            }
            for &inp in &sd.inputs {
                if inp >= produced {
                    return Err(Error::InvalidTrace(format!(
                        "step {i}: input {inp} does not precede the step"
                    )));
                }
            }
            for &out in &sd.outputs {
                if out != produced {
                    return Err(Error::InvalidTrace(format!(
                        "step {i}: outputs must be dense and ordered, got {out}"
                    )));
                }
                produced += 1;
            }
            steps.push(TraceStep {
                op: sd.op.clone(),
                axioms,
                inputs: sd.inputs.iter().map(|&x| ObjId(x)).collect(),
                outputs: sd.outputs.iter().map(|&x| ObjId(x)).collect(),
            });
        }
        if produced as usize != objects.len() {
            return Err(Error::InvalidTrace(
                "object table does not match step outputs".into(),
            ));
        }
        let base = Tower::with_depth_cap(depth_cap);
        let expect_seed = |o: &Obj, x: i64| match o {
            Obj::Point(p) => *p == Point::from_ints(&base, x, 0),
            Obj::Line(_) => false,
        };
        if objects.len() < 2 || !expect_seed(&objects[0], 0) || !expect_seed(&objects[1], 1) {
            return Err(Error::InvalidTrace(
                "seed objects must be the origin and unit point".into(),
            ));
        }
        Ok(Trace {
            objects,
            steps,
            tower,
        })
    }
}

/// Degree of the tower described by a chain of steps.
fn tower_degree_of(steps: &[StepDescriptor]) -> usize {
    steps
        .iter()
        .map(|s| if s.kind == "trisect" { 3 } else { 2 })
        .product()
}

/// Folds through `q` taking `p` onto `l`: intersect the circle around
/// `q` through `p` with `l`; each intersection `r` yields the crease
/// equidistant from `p` and `r`.
fn fold_e_lines(p: &Point, l: &Line, q: &Point) -> Result<Vec<Line>> {
    if p == q {
        // The circle degenerates to the point itself.
        return if l.contains(p)? {
            // Every line through the point is a valid fold; return the
            // canonical representative.
            Ok(vec![perpendicular_at(l, p)?])
        } else {
            Err(Error::NoRealFold)
        };
    }
    let (b0, b1) = l.two_points()?;
    let d = (b1.x.checked_sub(&b0.x)?, b1.y.checked_sub(&b0.y)?);
    let e = (b0.x.checked_sub(&q.x)?, b0.y.checked_sub(&q.y)?);
    // |b0 + t d - q|^2 = |p - q|^2, as a2 t^2 + 2 a1 t + a0 = 0
    let a2 = d.0.square().checked_add(&d.1.square())?;
    let a1 = d.0.checked_mul(&e.0)?.checked_add(&d.1.checked_mul(&e.1)?)?;
    let a0 = e
        .0
        .square()
        .checked_add(&e.1.square())?
        .checked_sub(&dist_sq(p, q)?)?;
    let disc = a1.square().checked_sub(&a2.checked_mul(&a0)?)?;
    let roots = match disc.sign() {
        -1 => return Err(Error::NoRealFold),
        0 => vec![a1.neg().checked_div(&a2)?],
        _ => {
            let (tw, root) = disc.tower().adjoin_sqrt(&disc)?;
            let a1 = a1.lift_to(&tw)?;
            let a2 = a2.lift_to(&tw)?;
            vec![
                root.checked_sub(&a1)?.checked_div(&a2)?,
                root.neg().checked_sub(&a1)?.checked_div(&a2)?,
            ]
        }
    };
    let mut folds = Vec::with_capacity(roots.len());
    for t in roots {
        let r = Point::new(
            b0.x.checked_add(&d.0.checked_mul(&t)?)?,
            b0.y.checked_add(&d.1.checked_mul(&t)?)?,
        );
        let fold = if r == *p {
            // p itself lies on the circle and on l: the crease through q
            // fixing p is the line qp.
            line_through(q, p)?
        } else {
            perp_bisector(p, &r)?
        };
        folds.push(fold);
    }
    Ok(folds)
}

/// The three creases of the two-point fold, built from the trisection of
/// the acute angle between `l` and the perpendicular to pq at p.
fn fold_t_lines(p: &Point, q: &Point, l: &Line) -> Result<(Vec<Line>, Vec<Witness>)> {
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    if !l.contains(p)? {
        return Err(Error::PointNotOnLine);
    }
    let pq = line_through(p, q)?;
    if *l == pq {
        return Err(Error::DegenerateConfiguration(
            "target line carries both points".into(),
        ));
    }
    let l1 = perpendicular_from(&pq, p)?;
    if *l == l1 {
        return Err(Error::DegenerateConfiguration(
            "target line is perpendicular to the segment, leaving no angle".into(),
        ));
    }
    let l2 = perp_bisector(p, q)?;
    let AngleFrame { u1, w, u } = angle_frame(&l1, l)?;
    let (t_y, y) = trisect_cos(&u)?;
    let three = t_y.from_int(3);
    let (t_3, r3) = t_y.adjoin_sqrt(&three)?;
    let y3 = y.lift_to(&t_3)?;
    let one = t_3.one();
    let (tw, s) = t_3.adjoin_sqrt(&one.checked_sub(&y3.square())?)?;
    let y = y3.lift_to(&tw)?;
    let r3 = r3.lift_to(&tw)?;
    let lift = |x: &Algebraic| x.clone().demote().lift_to(&tw);
    let u1 = (lift(&u1.0)?, lift(&u1.1)?);
    let w = (lift(&w.0)?, lift(&w.1)?);
    let pl = Point::new(lift(&p.x)?, lift(&p.y)?);
    let ql = Point::new(lift(&q.x)?, lift(&q.y)?);
    let ll = l.lifted_to(&tw)?;
    let l2l = l2.lifted_to(&tw)?;
    // cos/sin pairs for the third of the angle and its two shifts by
    // 120 degrees, in descending cosine order
    let half = ratio(-1, 2);
    let shift = |a: &Algebraic, b: &Algebraic, sign: i64| -> Result<Algebraic> {
        a.scale(&half)
            .checked_add(&r3.checked_mul(b)?.scale(&ratio(sign, 2)))
    };
    let pairs = [
        (y.clone(), s.clone()),
        (shift(&y, &s, 1)?, shift(&s, &y, -1)?),
        (shift(&y, &s, -1)?, shift(&s, &y, 1)?),
    ];
    let mut folds = Vec::with_capacity(3);
    let mut witnesses = Vec::with_capacity(3);
    for (ck, sk) in &pairs {
        let dir = (
            u1.0.checked_mul(ck)?.checked_add(&w.0.checked_mul(sk)?)?,
            u1.1.checked_mul(ck)?.checked_add(&w.1.checked_mul(sk)?)?,
        );
        let a = dir.1.clone();
        let b = dir.0.neg();
        let c = a
            .checked_mul(&pl.x)?
            .checked_add(&b.checked_mul(&pl.y)?)?
            .neg();
        let trisector = Line::new(a, b, c)?;
        let p_prime = intersect(&trisector, &l2l)?;
        let fold = perp_bisector(&pl, &p_prime)?;
        let q_image = reflect_point(&ql, &fold)?;
        let p_image = reflect_point(&pl, &fold)?;
        assert!(
            ll.contains(&q_image)?,
            "fold must carry the far point onto the target line"
        );
        assert!(
            l2l.contains(&p_image)?,
            "fold must carry the anchor onto the perpendicular bisector"
        );
        folds.push(fold);
        witnesses.push(Witness {
            image: q_image,
            second_image: Some(p_image),
        });
    }
    Ok((folds, witnesses))
}
