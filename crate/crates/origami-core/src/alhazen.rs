//! Exact solutions of Alhazen's circular billiard problem.
//!
//! Given two points `a`, `b` strictly outside the unit circle, a billiard
//! shot from `a` reflects off the circle to `b` exactly at the points `z`
//! on the circle where `Im(a b conj(z)^2) = Im((a + b) conj(z))`.  That
//! condition cuts a circular hyperbola, so the reflection points are the
//! four intersections of the hyperbola with the circle.  The pencil spanned
//! by the two conics contains three degenerate members, each splitting into
//! a pair of chords through the four points; the degenerate parameters are
//! the roots of a cubic whose coefficients live in the field generated by a
//! rotation that makes `a b` real and positive.  Solving that cubic with
//! square roots and a cosine trisection, splitting one degenerate conic
//! into its two chords, and intersecting the chords with the circle yields
//! all four reflection points exactly.

use crate::adjoin::{find_root_in_field, FPoly};
use crate::cubic::discriminant_cubic;
use crate::error::{Error, Result};
use crate::geometry::{line_through, Line, Point};
use crate::interval::RatInterval;
use crate::poly::RatPoly;
use crate::rational::{pow10, rat, ratio};
use crate::tower::{Algebraic, Tower};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A complex number with exact real-algebraic parts.
#[derive(Clone, Debug)]
pub struct Cx {
    pub re: Algebraic,
    pub im: Algebraic,
}

impl Cx {
    pub fn new(re: Algebraic, im: Algebraic) -> Cx {
        Cx { re, im }
    }

    pub fn from_rationals(tower: &Tower, re: &BigRational, im: &BigRational) -> Cx {
        Cx {
            re: tower.from_rational(re.clone()),
            im: tower.from_rational(im.clone()),
        }
    }

    pub fn from_point(p: &Point) -> Cx {
        Cx {
            re: p.x.clone(),
            im: p.y.clone(),
        }
    }

    pub fn to_point(&self) -> Point {
        Point::new(self.re.clone(), self.im.clone())
    }

    pub fn conj(&self) -> Cx {
        Cx {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, other: &Cx) -> Result<Cx> {
        Ok(Cx {
            re: self.re.checked_add(&other.re)?,
            im: self.im.checked_add(&other.im)?,
        })
    }

    pub fn sub(&self, other: &Cx) -> Result<Cx> {
        Ok(Cx {
            re: self.re.checked_sub(&other.re)?,
            im: self.im.checked_sub(&other.im)?,
        })
    }

    pub fn mul(&self, other: &Cx) -> Result<Cx> {
        let re = self
            .re
            .checked_mul(&other.re)?
            .checked_sub(&self.im.checked_mul(&other.im)?)?;
        let im = self
            .re
            .checked_mul(&other.im)?
            .checked_add(&self.im.checked_mul(&other.re)?)?;
        Ok(Cx { re, im })
    }

    pub fn scale(&self, k: &BigRational) -> Cx {
        Cx {
            re: self.re.scale(k),
            im: self.im.scale(k),
        }
    }

    pub fn norm_sq(&self) -> Result<Algebraic> {
        self.re.square().checked_add(&self.im.square())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl PartialEq for Cx {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

/// A reflection problem: two rational endpoints strictly outside the unit
/// circle.
#[derive(Clone, Debug, PartialEq)]
pub struct AlhazenInstance {
    a: (BigRational, BigRational),
    b: (BigRational, BigRational),
}

impl AlhazenInstance {
    pub fn new(
        a_re: BigRational,
        a_im: BigRational,
        b_re: BigRational,
        b_im: BigRational,
    ) -> Result<AlhazenInstance> {
        let na = &a_re * &a_re + &a_im * &a_im;
        if na <= BigRational::one() {
            return Err(Error::DegenerateInput(
                "first endpoint must lie strictly outside the unit circle".into(),
            ));
        }
        let nb = &b_re * &b_re + &b_im * &b_im;
        if nb <= BigRational::one() {
            return Err(Error::DegenerateInput(
                "second endpoint must lie strictly outside the unit circle".into(),
            ));
        }
        if a_re == b_re && a_im == b_im {
            return Err(Error::DegenerateInput(
                "billiard endpoints must be distinct".into(),
            ));
        }
        Ok(AlhazenInstance {
            a: (a_re, a_im),
            b: (b_re, b_im),
        })
    }

    pub fn a(&self) -> (BigRational, BigRational) {
        self.a.clone()
    }

    pub fn b(&self) -> (BigRational, BigRational) {
        self.b.clone()
    }

    /// Real and imaginary part of the product `a b`.
    pub fn product(&self) -> (BigRational, BigRational) {
        let re = &self.a.0 * &self.b.0 - &self.a.1 * &self.b.1;
        let im = &self.a.0 * &self.b.1 + &self.a.1 * &self.b.0;
        (re, im)
    }

    /// Real and imaginary part of the sum `a + b`.
    pub fn sum(&self) -> (BigRational, BigRational) {
        (&self.a.0 + &self.b.0, &self.a.1 + &self.b.1)
    }
}

/// The unimodular multiplier `w = c - i s` that turns `a b` into a positive
/// real number, together with its inverse action.
#[derive(Clone, Debug)]
pub struct Rotation {
    c: Algebraic,
    s: Algebraic,
}

impl Rotation {
    pub fn cos(&self) -> &Algebraic {
        &self.c
    }

    pub fn sin(&self) -> &Algebraic {
        &self.s
    }

    pub fn tower(&self) -> &Tower {
        self.c.tower()
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_one()
    }

    /// Applies `z -> w z` to a rational point.
    pub fn forward_rational(&self, x: &BigRational, y: &BigRational) -> Result<Cx> {
        let re = self.c.scale(x).checked_add(&self.s.scale(y))?;
        let im = self.c.scale(y).checked_sub(&self.s.scale(x))?;
        Ok(Cx { re, im })
    }

    /// Applies the inverse `z -> conj(w) z`, mapping a solved point back to
    /// the original frame.
    pub fn backward(&self, z: &Cx) -> Result<Cx> {
        let re = self
            .c
            .checked_mul(&z.re)?
            .checked_sub(&self.s.checked_mul(&z.im)?)?;
        let im = self
            .c
            .checked_mul(&z.im)?
            .checked_add(&self.s.checked_mul(&z.re)?)?;
        Ok(Cx { re, im })
    }
}

/// Finds the rotation that makes the product of the endpoints real and
/// positive.  A quarter turn handles a negative real product, and a
/// half-angle square-root chain handles the general case; the sine comes
/// from the cosine by division, so at most two square roots are adjoined.
pub fn rotate_normalize(inst: &AlhazenInstance) -> Result<Rotation> {
    let (p_re, p_im) = inst.product();
    let rationals = Tower::rationals();
    if p_im.is_zero() {
        if p_re.is_positive() {
            return Ok(Rotation {
                c: rationals.one(),
                s: rationals.zero(),
            });
        }
        return Ok(Rotation {
            c: rationals.zero(),
            s: rationals.one(),
        });
    }
    let norm_sq = rationals.from_rational(&p_re * &p_re + &p_im * &p_im);
    let (half_tower, norm) = rationals.adjoin_sqrt(&norm_sq)?;
    let cos_sq = norm
        .inverse()?
        .scale(&p_re)
        .add_rational(&BigRational::one())
        .scale(&ratio(1, 2));
    assert!(cos_sq.sign() > 0, "half-angle cosine must be positive");
    let (tower, c) = half_tower.adjoin_sqrt(&cos_sq)?;
    let s = norm
        .lift_to(&tower)?
        .inverse()?
        .scale(&p_im)
        .checked_div(&c.scale(&rat(2)))?;
    let unit = c.square().checked_add(&s.square())?;
    assert!(unit.is_one(), "rotation multiplier must be unimodular");
    Ok(Rotation { c, s })
}

/// The reflection problem after normalization: `q = a b > 0` is real,
/// `r + i s = a + b`, and the circle/hyperbola pencil degenerates at the
/// roots of `x^3 + tau x + q r s / 2`.
#[derive(Clone, Debug)]
pub struct PencilData {
    pub q: Algebraic,
    pub r: Algebraic,
    pub s: Algebraic,
    pub tau: Algebraic,
    pub rotation: Rotation,
    pub a_rot: Cx,
    pub b_rot: Cx,
}

impl PencilData {
    /// Constant coefficient of the pencil cubic.
    pub fn cubic_constant(&self) -> Result<Algebraic> {
        self.q
            .checked_mul(&self.r)?
            .checked_mul(&self.s)
            .map(|k| k.scale(&ratio(1, 2)))
    }

    /// Evaluates the pencil cubic at a parameter value.
    pub fn cubic_at(&self, lambda: &Algebraic) -> Result<Algebraic> {
        lambda
            .pow(3)
            .checked_add(&self.tau.checked_mul(lambda)?)?
            .checked_add(&self.cubic_constant()?)
    }

    /// `2 q x y + s x - r y`, the hyperbola carrying the reflection law in
    /// the normalized frame.
    pub fn hyperbola_residual(&self, x: &Algebraic, y: &Algebraic) -> Result<Algebraic> {
        self.q
            .scale(&rat(2))
            .checked_mul(x)?
            .checked_mul(y)?
            .checked_add(&self.s.checked_mul(x)?)?
            .checked_sub(&self.r.checked_mul(y)?)
    }

    /// Coefficients of the degenerate conic at `lambda` in the order
    /// `x^2, x y, y^2, x, y, 1`.
    fn conic_coefficients(&self, lambda: &Algebraic) -> [Algebraic; 6] {
        [
            lambda.clone(),
            self.q.scale(&rat(2)),
            lambda.clone(),
            self.s.clone(),
            self.r.neg(),
            lambda.neg(),
        ]
    }
}

/// Rotates the instance and reads off the pencil invariants.
pub fn pencil_data(inst: &AlhazenInstance) -> Result<PencilData> {
    let rotation = rotate_normalize(inst)?;
    let (a_re, a_im) = inst.a();
    let (b_re, b_im) = inst.b();
    let a_rot = rotation.forward_rational(&a_re, &a_im)?;
    let b_rot = rotation.forward_rational(&b_re, &b_im)?;
    let ab = a_rot.mul(&b_rot)?;
    assert!(ab.im.is_zero(), "normalized product must be real");
    let q = ab.re.clone().demote();
    assert!(q.sign() > 0, "normalized product must be positive");
    let norm_a = a_rot.norm_sq()?.demote();
    assert_eq!(
        norm_a.to_rational(),
        Some(&a_re * &a_re + &a_im * &a_im),
        "rotation must preserve the modulus"
    );
    let sum = a_rot.add(&b_rot)?;
    let r = sum.re.clone().demote();
    let s = sum.im.clone().demote();
    let tau = s
        .square()
        .checked_add(&r.square())?
        .checked_sub(&q.square().scale(&rat(4)))?
        .scale(&ratio(1, 4))
        .demote();
    Ok(PencilData {
        q,
        r,
        s,
        tau,
        rotation,
        a_rot,
        b_rot,
    })
}

fn sort_descending(values: &mut [Algebraic]) -> Result<()> {
    for i in 1..values.len() {
        let mut j = i;
        while j > 0 && values[j - 1].checked_sub(&values[j])?.sign() < 0 {
            values.swap(j - 1, j);
            j -= 1;
        }
    }
    Ok(())
}

/// Solves the pencil cubic `x^3 + tau x + q r s / 2` over the rotation
/// field.  A root already in the field deflates the cubic to a quadratic;
/// otherwise the cubic is irreducible and, when its discriminant is
/// positive, the largest root comes from a cosine trisection while the
/// other two come from deflating by it, which keeps their tower small.
/// Returns the three roots in descending order.
pub fn solve_pencil_cubic(data: &PencilData) -> Result<[Algebraic; 3]> {
    // The cubic is solved over the full rotation field so that the root
    // towers stay on the same chain as every pencil invariant; the
    // coefficients themselves may demote below it.
    let base = data.rotation.tower().clone();
    let constant = data.cubic_constant()?.demote().lift_to(&base)?;
    let tau = data.tau.clone().demote().lift_to(&base)?;
    let cubic = FPoly::new(
        &base,
        vec![constant.clone(), tau.clone(), base.zero(), base.one()],
    );
    let roots = if let Some(found) = find_root_in_field(&cubic) {
        let disc = found
            .square()
            .scale(&rat(-3))
            .checked_sub(&tau.scale(&rat(4)))?;
        if disc.sign() < 0 {
            return Err(Error::ComplexPencil);
        }
        let (tower, delta) = base.adjoin_sqrt(&disc)?;
        let lifted = found.clone().demote().lift_to(&tower)?;
        let plus = delta.checked_sub(&lifted)?.scale(&ratio(1, 2));
        let minus = delta.neg().checked_sub(&lifted)?.scale(&ratio(1, 2));
        let mut all = vec![lifted, plus, minus];
        sort_descending(&mut all)?;
        all
    } else {
        let disc3 = discriminant_cubic(&tau, &constant)?;
        if disc3.sign() <= 0 {
            return Err(Error::ComplexPencil);
        }
        let (m_tower, m) = base.adjoin_sqrt(&tau.scale(&ratio(-4, 3)))?;
        let u = constant
            .lift_to(&m_tower)?
            .scale(&rat(-4))
            .checked_div(&m.pow(3))?;
        let (tri_tower, y) = m_tower.adjoin_trisection_root(&u)?;
        let largest = m.lift_to(&tri_tower)?.checked_mul(&y)?;
        let deflate_disc = largest
            .square()
            .scale(&rat(-3))
            .checked_sub(&tau.scale(&rat(4)))?;
        assert!(
            deflate_disc.sign() > 0,
            "a separable cubic must deflate with distinct roots"
        );
        let (tower, delta) = tri_tower.adjoin_sqrt(&deflate_disc)?;
        let lifted = largest.lift_to(&tower)?;
        let middle = delta.checked_sub(&lifted)?.scale(&ratio(1, 2));
        let smallest = delta.neg().checked_sub(&lifted)?.scale(&ratio(1, 2));
        assert!(
            lifted.checked_sub(&middle)?.sign() > 0,
            "trisection must produce the largest pencil root"
        );
        vec![largest, middle, smallest]
    };
    let mut out = Vec::with_capacity(3);
    for root in &roots {
        assert!(
            data.cubic_at(root)?.is_zero(),
            "pencil root must satisfy the cubic exactly"
        );
        out.push(root.clone().demote());
    }
    if let (Some(tau_rat), Some(k_rat)) = (
        tau.clone().demote().to_rational(),
        constant.clone().demote().to_rational(),
    ) {
        let poly = RatPoly::new(vec![
            k_rat,
            tau_rat,
            BigRational::zero(),
            BigRational::one(),
        ]);
        let squarefree = poly.squarefree_part();
        if squarefree.degree() == poly.degree() {
            assert_eq!(
                poly.real_root_count()?,
                3,
                "a real pencil cubic must have three real roots"
            );
        }
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// A degenerate member of the circle/hyperbola pencil, split into its two
/// chords.
#[derive(Clone, Debug)]
pub struct DegenerateConic {
    pub lambda: Algebraic,
    pub lines: (Line, Line),
}

/// Splits the degenerate conic at a pencil root into two lines and proves
/// the factorization by expanding the product back to all six conic
/// coefficients.
pub fn factor_degenerate(data: &PencilData, lambda: &Algebraic) -> Result<DegenerateConic> {
    if !data.cubic_at(lambda)?.is_zero() {
        return Err(Error::NotDegenerate);
    }
    let lines = if lambda.is_zero() {
        // With q > 0 a vanishing root forces r s = 0, and the conic is the
        // hyperbola itself: 2 q x y + s x - r y.
        let tower = data.q.tower().clone();
        if data.s.is_zero() && data.r.is_zero() {
            let vertical = Line::new(tower.one(), tower.zero(), tower.zero())?;
            let horizontal = Line::new(tower.zero(), tower.one(), tower.zero())?;
            (vertical, horizontal)
        } else if data.s.is_zero() {
            let horizontal = Line::new(tower.zero(), tower.one(), tower.zero())?;
            let chord = Line::new(
                data.q.scale(&rat(2)),
                data.q.tower().zero(),
                data.r.neg(),
            )?;
            (horizontal, chord)
        } else if data.r.is_zero() {
            let vertical = Line::new(tower.one(), tower.zero(), tower.zero())?;
            let chord = Line::new(
                data.q.tower().zero(),
                data.q.scale(&rat(2)),
                data.s.clone(),
            )?;
            (vertical, chord)
        } else {
            return Err(Error::NotDegenerate);
        }
    } else {
        // Unifying first pins down a tower that holds the root; arithmetic
        // results may demote below it.
        let (lam_u, q_u) = Algebraic::unify(lambda, &data.q)?;
        let base = lam_u.tower().clone();
        let radicand = q_u.square().checked_sub(&lam_u.square())?;
        if radicand.sign() < 0 {
            return Err(Error::ComplexLinePair);
        }
        let (tower, w) = base.adjoin_sqrt(&radicand)?;
        let lam = lam_u.lift_to(&tower)?;
        let q = data.q.clone().demote().lift_to(&tower)?;
        let r = data.r.clone().demote().lift_to(&tower)?;
        let s = data.s.clone().demote().lift_to(&tower)?;
        let one = tower.one();
        if w.is_zero() {
            // The two chords are parallel with slope -q/lambda; their
            // offsets solve e^2 + (r/lambda) e - 1 = 0.
            let slope = q.checked_div(&lam)?.neg();
            let shifted = r.checked_div(&lam)?;
            let offset_disc = shifted.square().add_rational(&rat(4));
            let (off_tower, g) = tower.adjoin_sqrt(&offset_disc)?;
            let shifted = shifted.lift_to(&off_tower)?;
            let e1 = g.checked_sub(&shifted)?.scale(&ratio(1, 2));
            let e2 = g.neg().checked_sub(&shifted)?.scale(&ratio(1, 2));
            let a = slope.lift_to(&off_tower)?.neg();
            let first = Line::new(a.clone(), off_tower.one(), e1)?;
            let second = Line::new(a, off_tower.one(), e2)?;
            (first, second)
        } else {
            let d1 = w.checked_sub(&q)?.checked_div(&lam)?;
            let d2 = w.checked_add(&q)?.neg().checked_div(&lam)?;
            let offset_sum = r.checked_div(&lam)?.neg();
            let mixed = s.checked_div(&lam)?.neg();
            let denom = d2.checked_sub(&d1)?;
            let e1 = mixed
                .checked_sub(&d1.checked_mul(&offset_sum)?)?
                .checked_div(&denom)?;
            let e2 = offset_sum.checked_sub(&e1)?;
            let first = Line::new(d1.neg(), one.clone(), e1)?;
            let second = Line::new(d2.neg(), one, e2)?;
            (first, second)
        }
    };
    verify_line_pair(data, lambda, &lines.0, &lines.1)?;
    Ok(DegenerateConic {
        lambda: lambda.clone(),
        lines,
    })
}

/// Expands `(a1 x + b1 y + c1)(a2 x + b2 y + c2)` and checks that a single
/// scalar carries it onto the conic at `lambda`, coefficient by
/// coefficient.
fn verify_line_pair(
    data: &PencilData,
    lambda: &Algebraic,
    first: &Line,
    second: &Line,
) -> Result<()> {
    let conic = data.conic_coefficients(lambda);
    let (a1, b1, c1) = (first.a(), first.b(), first.c());
    let (a2, b2, c2) = (second.a(), second.b(), second.c());
    let product = [
        a1.checked_mul(a2)?,
        a1.checked_mul(b2)?.checked_add(&a2.checked_mul(b1)?)?,
        b1.checked_mul(b2)?,
        a1.checked_mul(c2)?.checked_add(&a2.checked_mul(c1)?)?,
        b1.checked_mul(c2)?.checked_add(&b2.checked_mul(c1)?)?,
        c1.checked_mul(c2)?,
    ];
    let mut sigma = None;
    for (target, expanded) in conic.iter().zip(product.iter()) {
        if !target.is_zero() {
            if expanded.is_zero() {
                return Err(Error::NotDegenerate);
            }
            sigma = Some(target.checked_div(expanded)?);
            break;
        }
    }
    let sigma = sigma.ok_or(Error::NotDegenerate)?;
    for (target, expanded) in conic.iter().zip(product.iter()) {
        let scaled = sigma.checked_mul(expanded)?;
        if !scaled.checked_sub(target)?.is_zero() {
            return Err(Error::NotDegenerate);
        }
    }
    Ok(())
}

/// Intersects a chord with the unit circle, adjoining one square root.
fn circle_chord_points(line: &Line) -> Result<(Point, Point)> {
    let (ab1, _) = Algebraic::unify(line.a(), line.b())?;
    let (abc, _) = Algebraic::unify(&ab1, line.c())?;
    let base = abc.tower().clone();
    let norm_sq = line.a().square().checked_add(&line.b().square())?;
    let disc = norm_sq.checked_sub(&line.c().square())?;
    if disc.sign() <= 0 {
        return Err(Error::DegenerateIntersection(
            "a pencil chord misses or touches the circle".into(),
        ));
    }
    let (tower, g) = base.adjoin_sqrt(&disc)?;
    let a = line.a().clone().demote().lift_to(&tower)?;
    let b = line.b().clone().demote().lift_to(&tower)?;
    let c = line.c().clone().demote().lift_to(&tower)?;
    let norm_sq = norm_sq.demote().lift_to(&tower)?;
    let foot_x = a.checked_mul(&c)?.neg();
    let foot_y = b.checked_mul(&c)?.neg();
    let x1 = foot_x.checked_add(&b.checked_mul(&g)?)?.checked_div(&norm_sq)?;
    let y1 = foot_y.checked_sub(&a.checked_mul(&g)?)?.checked_div(&norm_sq)?;
    let x2 = foot_x.checked_sub(&b.checked_mul(&g)?)?.checked_div(&norm_sq)?;
    let y2 = foot_y.checked_add(&a.checked_mul(&g)?)?.checked_div(&norm_sq)?;
    let plus = Point::new(x1, y1);
    let minus = Point::new(x2, y2);
    for p in [&plus, &minus] {
        let on_circle = p
            .x
            .square()
            .checked_add(&p.y.square())?
            .add_rational(&rat(-1));
        assert!(on_circle.is_zero(), "chord intersection must lie on the circle");
        assert!(line.eval(p)?.is_zero(), "intersection must lie on its chord");
    }
    Ok((plus, minus))
}

const REFINEMENT_SCALES: [i32; 5] = [-12, -24, -48, -96, -192];

fn line_eval_interval(line: &Line, p: &Point, eps: &BigRational) -> RatInterval {
    let ia = line.a().principal_interval(eps);
    let ib = line.b().principal_interval(eps);
    let ic = line.c().principal_interval(eps);
    let ix = p.x.principal_interval(eps);
    let iy = p.y.principal_interval(eps);
    ia.mul(&ix).add(&ib.mul(&iy)).add(&ic)
}

/// Decides which chord of a degenerate conic passes through a reflection
/// point found on a sibling tower.  The product of the two chord values at
/// the point is exactly zero because the point satisfies both pencil
/// generators and the factorization was verified coefficient by
/// coefficient, so refining intervals until one value separates from zero
/// certifies the other as the incident chord.
fn decide_incident(lines: &(Line, Line), p: &Point) -> Result<usize> {
    for scale in REFINEMENT_SCALES {
        let eps = pow10(scale);
        let first = line_eval_interval(&lines.0, p, &eps);
        let second = line_eval_interval(&lines.1, p, &eps);
        match (first.contains_zero(), second.contains_zero()) {
            (true, false) => return Ok(0),
            (false, true) => return Ok(1),
            (false, false) => {
                return Err(Error::DegenerateIntersection(
                    "reflection point separated from both chords of a pencil conic".into(),
                ))
            }
            (true, true) => {}
        }
    }
    Err(Error::DegenerateIntersection(
        "chord incidence could not be separated".into(),
    ))
}

/// Distinctness certificate for two points whose coordinates may live on
/// sibling towers: exact when the towers share a chain, interval-based
/// otherwise.
fn certified_distinct(p: &Point, q: &Point) -> Result<bool> {
    if let (Ok((px, qx)), Ok((py, qy))) = (
        Algebraic::unify(&p.x, &q.x),
        Algebraic::unify(&p.y, &q.y),
    ) {
        let dx = px.checked_sub(&qx)?;
        let dy = py.checked_sub(&qy)?;
        return Ok(!dx.is_zero() || !dy.is_zero());
    }
    for scale in REFINEMENT_SCALES {
        let eps = pow10(scale);
        let dx = p.x.principal_interval(&eps).sub(&q.x.principal_interval(&eps));
        let dy = p.y.principal_interval(&eps).sub(&q.y.principal_interval(&eps));
        if !dx.contains_zero() || !dy.contains_zero() {
            return Ok(true);
        }
    }
    Err(Error::DegenerateIntersection(
        "reflection points could not be separated".into(),
    ))
}

/// The four reflection points in the original frame, the six chords of the
/// three degenerate conics mapped back alongside them, and for each point
/// the sorted indices of the three chords through it.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub points: Vec<Cx>,
    pub lines: Vec<Line>,
    pub incidence: Vec<[usize; 3]>,
    pub lambdas: [Algebraic; 3],
}

/// Intersects the cheapest degenerate conic with the circle, certifies the
/// incidence pattern against the other two conics, checks the interior
/// inverse points and the hyperbola center, and maps everything back to
/// the original frame.
pub fn assemble_solutions(
    data: &PencilData,
    conics: &[DegenerateConic; 3],
) -> Result<SolutionSet> {
    let source = (0..3)
        .min_by_key(|&i| conics[i].lines.0.a().tower().degree())
        .unwrap();
    let (first, second) = (&conics[source].lines.0, &conics[source].lines.1);
    let (p0, p1) = circle_chord_points(first)?;
    let (p2, p3) = circle_chord_points(second)?;
    let points_rot = [p0, p1, p2, p3];
    for i in 0..4 {
        for j in i + 1..4 {
            if !certified_distinct(&points_rot[i], &points_rot[j])? {
                return Err(Error::DegenerateIntersection(
                    "repeated reflection point".into(),
                ));
            }
        }
    }
    for p in &points_rot {
        let residual = data.hyperbola_residual(&p.x, &p.y)?;
        assert!(
            residual.is_zero(),
            "reflection point must satisfy the normalized reflection law"
        );
    }
    let mut incidence = Vec::with_capacity(4);
    for p in &points_rot {
        let mut through = Vec::with_capacity(3);
        for (index, conic) in conics.iter().enumerate() {
            if index == source {
                let on_first = conic.lines.0.eval(p)?.is_zero();
                let on_second = conic.lines.1.eval(p)?.is_zero();
                match (on_first, on_second) {
                    (true, true) => {
                        return Err(Error::DegenerateIntersection(
                            "reflection point on both chords of one conic".into(),
                        ))
                    }
                    (true, false) => through.push(2 * index),
                    (false, true) => through.push(2 * index + 1),
                    (false, false) => {
                        unreachable!("a chord intersection left its own conic")
                    }
                }
            } else {
                through.push(2 * index + decide_incident(&conic.lines, p)?);
            }
        }
        through.sort_unstable();
        incidence.push([through[0], through[1], through[2]]);
    }
    let mut counts = [0usize; 6];
    for triple in &incidence {
        for &line in triple {
            counts[line] += 1;
        }
    }
    assert!(
        counts.iter().all(|&c| c == 2),
        "each chord must carry exactly two reflection points"
    );
    let norm_a = data.a_rot.norm_sq()?;
    let norm_b = data.b_rot.norm_sq()?;
    let inverse_a = Cx {
        re: data.a_rot.re.checked_div(&norm_a)?,
        im: data.a_rot.im.checked_div(&norm_a)?,
    };
    let inverse_b = Cx {
        re: data.b_rot.re.checked_div(&norm_b)?,
        im: data.b_rot.im.checked_div(&norm_b)?,
    };
    for z in [&inverse_a, &inverse_b] {
        let residual = data.hyperbola_residual(&z.re, &z.im)?;
        assert!(residual.is_zero(), "inverse points must lie on the hyperbola");
        let inside = z.norm_sq()?.add_rational(&rat(-1));
        assert!(inside.sign() < 0, "inverse points must lie inside the circle");
    }
    let midpoint = inverse_a.add(&inverse_b)?.scale(&ratio(1, 2));
    let center_x = data.r.checked_div(&data.q.scale(&rat(2)))?;
    let center_y = data.s.checked_div(&data.q.scale(&rat(2)))?.neg();
    assert!(
        midpoint.re.checked_sub(&center_x)?.is_zero()
            && midpoint.im.checked_sub(&center_y)?.is_zero(),
        "inverse points must straddle the hyperbola center"
    );
    let mut points = Vec::with_capacity(4);
    for p in &points_rot {
        points.push(data.rotation.backward(&Cx::from_point(p))?);
    }
    let mut lines = Vec::with_capacity(6);
    for conic in conics {
        for line in [&conic.lines.0, &conic.lines.1] {
            let (u, v) = line.two_points()?;
            let u0 = data.rotation.backward(&Cx::from_point(&u))?;
            let v0 = data.rotation.backward(&Cx::from_point(&v))?;
            lines.push(line_through(&u0.to_point(), &v0.to_point())?);
        }
    }
    Ok(SolutionSet {
        points,
        lines,
        incidence,
        lambdas: [
            conics[0].lambda.clone(),
            conics[1].lambda.clone(),
            conics[2].lambda.clone(),
        ],
    })
}

/// Solves the reflection problem end to end and checks the reflection law
/// for every returned point in the original frame.
pub fn solve_alhazen(inst: &AlhazenInstance) -> Result<SolutionSet> {
    let data = pencil_data(inst)?;
    let roots = solve_pencil_cubic(&data)?;
    let conics = [
        factor_degenerate(&data, &roots[0])?,
        factor_degenerate(&data, &roots[1])?,
        factor_degenerate(&data, &roots[2])?,
    ];
    let solution = assemble_solutions(&data, &conics)?;
    for z in &solution.points {
        assert!(
            verify_equation1(inst, z)?,
            "a computed point violates the reflection law"
        );
    }
    Ok(solution)
}

/// Checks `Im(a b conj(z)^2) = Im((a + b) conj(z))` exactly in the
/// original frame.
pub fn verify_equation1(inst: &AlhazenInstance, z: &Cx) -> Result<bool> {
    let (p_re, p_im) = inst.product();
    let (s_re, s_im) = inst.sum();
    let x = &z.re;
    let y = &z.im;
    let lhs = x
        .checked_mul(y)?
        .scale(&(&p_re * &rat(-2)))
        .checked_add(&x.square().checked_sub(&y.square())?.scale(&p_im))?;
    let rhs = x.scale(&s_im).checked_sub(&y.scale(&s_re))?;
    Ok(lhs.checked_sub(&rhs)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn instance(a: (i64, i64), b: (i64, i64)) -> AlhazenInstance {
        AlhazenInstance::new(rat(a.0), rat(a.1), rat(b.0), rat(b.1)).unwrap()
    }

    fn oracle_angles(inst: &AlhazenInstance) -> Vec<f64> {
        let (p_re, p_im) = inst.product();
        let (s_re, s_im) = inst.sum();
        let pr = p_re.to_f64().unwrap();
        let pi = p_im.to_f64().unwrap();
        let sr = s_re.to_f64().unwrap();
        let si = s_im.to_f64().unwrap();
        let g = |t: f64| {
            pi * (2.0 * t).cos() - pr * (2.0 * t).sin() - si * t.cos() + sr * t.sin()
        };
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

    fn assert_matches_oracle(inst: &AlhazenInstance, solution: &SolutionSet) {
        let angles = oracle_angles(inst);
        assert_eq!(angles.len(), 4, "the angular scan must find four reflections");
        for z in &solution.points {
            let (x, y) = z.to_f64_pair();
            assert!(
                angles
                    .iter()
                    .any(|t| (t.cos() - x).abs() < 1e-9 && (t.sin() - y).abs() < 1e-9),
                "an exact point escapes the angular scan: ({x}, {y})"
            );
        }
    }

    #[test]
    fn endpoints_must_be_distinct_and_exterior() {
        let unit = AlhazenInstance::new(rat(1), rat(0), rat(3), rat(0));
        assert!(matches!(unit, Err(Error::DegenerateInput(_))));
        let inside = AlhazenInstance::new(rat(2), rat(0), ratio(1, 2), rat(0));
        assert!(matches!(inside, Err(Error::DegenerateInput(_))));
        let same = AlhazenInstance::new(rat(2), rat(1), rat(2), rat(1));
        assert!(matches!(same, Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn rotation_is_trivial_for_a_real_positive_product() {
        let inst = instance((2, 0), (3, 0));
        let data = pencil_data(&inst).unwrap();
        assert!(data.rotation.is_identity());
        assert_eq!(data.q.to_rational(), Some(rat(6)));
        assert_eq!(data.r.to_rational(), Some(rat(5)));
        assert_eq!(data.s.to_rational(), Some(rat(0)));
        assert_eq!(data.tau.to_rational(), Some(ratio(-119, 4)));
        assert_eq!(data.cubic_constant().unwrap().to_rational(), Some(rat(0)));
    }

    #[test]
    fn conjugate_endpoints_keep_the_pencil_rational() {
        let inst = instance((2, 1), (2, -1));
        let data = pencil_data(&inst).unwrap();
        assert!(data.rotation.is_identity());
        assert_eq!(data.q.to_rational(), Some(rat(5)));
        assert_eq!(data.r.to_rational(), Some(rat(4)));
        assert_eq!(data.s.to_rational(), Some(rat(0)));
        assert_eq!(data.tau.to_rational(), Some(rat(-21)));
    }

    #[test]
    fn scaled_conjugate_endpoints_give_an_irreducible_pencil() {
        let inst =
            AlhazenInstance::new(rat(2), rat(2), ratio(3, 2), ratio(-3, 2)).unwrap();
        let data = pencil_data(&inst).unwrap();
        assert!(data.rotation.is_identity());
        assert_eq!(data.q.to_rational(), Some(rat(6)));
        assert_eq!(data.r.to_rational(), Some(ratio(7, 2)));
        assert_eq!(data.s.to_rational(), Some(ratio(1, 2)));
        assert_eq!(data.tau.to_rational(), Some(ratio(-263, 8)));
        assert_eq!(
            data.cubic_constant().unwrap().to_rational(),
            Some(ratio(21, 4))
        );
    }

    #[test]
    fn pencil_cubic_roots_for_the_classic_instance() {
        let inst = instance((2, 0), (3, 0));
        let data = pencil_data(&inst).unwrap();
        let roots = solve_pencil_cubic(&data).unwrap();
        assert_eq!(roots[0].square().to_rational(), Some(ratio(119, 4)));
        assert!(roots[0].sign() > 0);
        assert!(roots[1].is_zero());
        assert!(roots[0].checked_add(&roots[2]).unwrap().is_zero());
    }

    #[test]
    fn classic_instance_solves_exactly() {
        let inst = instance((2, 0), (3, 0));
        let solution = solve_alhazen(&inst).unwrap();
        assert_eq!(solution.points.len(), 4);
        assert_eq!(solution.lines.len(), 6);
        let mut rational_x = Vec::new();
        for z in &solution.points {
            if let Some(x) = z.re.to_rational() {
                rational_x.push(x);
            }
        }
        rational_x.sort();
        assert_eq!(
            rational_x,
            vec![rat(-1), ratio(5, 12), ratio(5, 12), rat(1)]
        );
        for z in &solution.points {
            match z.re.to_rational() {
                Some(x) if x == ratio(5, 12) => {
                    assert_eq!(
                        z.im.square().to_rational(),
                        Some(ratio(119, 144)),
                        "the oblique pair sits at height sqrt(119)/12"
                    );
                }
                Some(_) => assert!(z.im.is_zero()),
                None => panic!("all abscissas of this instance are rational"),
            }
            assert!(verify_equation1(&inst, z).unwrap());
        }
        for triple in &solution.incidence {
            assert_eq!(triple.len(), 3);
            let conics: Vec<usize> = triple.iter().map(|l| l / 2).collect();
            assert_eq!(conics, vec![0, 1, 2], "one chord from each conic");
        }
        assert_matches_oracle(&inst, &solution);
    }

    #[test]
    fn mirror_symmetric_endpoints_solve_cheaply() {
        let inst =
            AlhazenInstance::new(ratio(3, 2), rat(1), ratio(3, 2), rat(-1)).unwrap();
        let solution = solve_alhazen(&inst).unwrap();
        assert_eq!(solution.points.len(), 4);
        let mut axis_points = 0;
        for z in &solution.points {
            if z.im.is_zero() {
                axis_points += 1;
                let x = z.re.to_rational().unwrap();
                assert!(x == rat(1) || x == rat(-1));
            }
        }
        assert_eq!(axis_points, 2, "the mirror axis meets the circle twice");
        assert_matches_oracle(&inst, &solution);
    }

    #[test]
    fn quarter_turn_handles_a_negative_real_product() {
        let inst = instance((0, 2), (0, 3));
        let data = pencil_data(&inst).unwrap();
        assert!(data.rotation.cos().is_zero());
        assert_eq!(data.q.to_rational(), Some(rat(6)));
        assert_eq!(data.s.to_rational(), Some(rat(0)));
        assert_eq!(data.r.to_rational(), Some(rat(5)));
        let solution = solve_alhazen(&inst).unwrap();
        let mut vertical = 0;
        for z in &solution.points {
            if z.re.is_zero() {
                vertical += 1;
            } else {
                assert_eq!(z.im.to_rational(), Some(ratio(5, 12)));
                assert_eq!(z.re.square().to_rational(), Some(ratio(119, 144)));
            }
        }
        assert_eq!(vertical, 2);
        assert_matches_oracle(&inst, &solution);
    }

    #[test]
    fn half_angle_rotation_solves_a_right_angle_product() {
        let inst = instance((2, 0), (0, 2));
        let data = pencil_data(&inst).unwrap();
        assert_eq!(
            data.rotation.cos().square().to_rational(),
            Some(ratio(1, 2)),
            "the rotation bisects a right angle"
        );
        assert_eq!(data.q.to_rational(), Some(rat(4)));
        assert!(data.s.is_zero());
        assert_eq!(data.r.square().to_rational(), Some(rat(8)));
        let solution = solve_alhazen(&inst).unwrap();
        assert_eq!(solution.points.len(), 4);
        assert_matches_oracle(&inst, &solution);
    }

    #[test]
    fn irreducible_pencil_solves_with_a_trisection() {
        let inst =
            AlhazenInstance::new(rat(2), rat(2), ratio(3, 2), ratio(-3, 2)).unwrap();
        let data = pencil_data(&inst).unwrap();
        let roots = solve_pencil_cubic(&data).unwrap();
        assert_eq!(
            roots[0].tower().degree(),
            6,
            "the dominant pencil root lives in the trisection field"
        );
        assert_eq!(
            roots[1].tower().degree(),
            12,
            "deflation keeps the remaining roots at one square root above"
        );
        let solution = solve_alhazen(&inst).unwrap();
        assert_eq!(solution.points.len(), 4);
        assert_matches_oracle(&inst, &solution);
    }
}
