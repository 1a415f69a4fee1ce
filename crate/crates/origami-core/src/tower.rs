//! Towers of real field extensions and exact arithmetic inside them.
//!
//! A tower starts at the rationals and grows one level at a time, each level
//! adjoining either a square root of a positive element or the principal
//! root of the depressed cubic `x^3 - (3/4)x - u/4` (the cosine-trisection
//! step, real for `|u| < 1`). Elements are coordinate vectors over the
//! power-product basis of the tower; the top generator varies slowest, so a
//! coordinate vector splits into `rel_degree` consecutive chunks, each a
//! coordinate vector one level down.
//!
//! Every level keeps the full list of real embeddings of the tower, each an
//! interval chain (see `embed`). Signs of elements are decided exactly by
//! interval refinement with an algebraic stopping bound, so no floating
//! point is involved anywhere.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::embed::{Embedding, TopInterval};
use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::poly::RatPoly;
use crate::rational::{parse_rational, ratio};

/// Default bound on tower height; deep enough for every construction in
/// this crate while keeping runaway adjunction loops detectable.
pub const DEFAULT_DEPTH_CAP: usize = 12;

#[derive(Clone)]
pub struct Tower(pub(crate) Arc<TowerNode>);

pub(crate) struct TowerNode {
    pub parent: Option<Tower>,
    pub step: Option<Step>,
    pub height: usize,
    pub degree: usize,
    pub rel_degree: usize,
    pub totally_real: bool,
    pub embeddings: Vec<Arc<Embedding>>,
    pub depth_cap: usize,
}

#[derive(Clone)]
pub(crate) enum Step {
    Sqrt { radicand: Algebraic },
    Trisect { u: Algebraic },
}

/// What kind of extension a tower level is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Sqrt,
    Trisect,
}

impl Tower {
    /// The base tower: the rationals, with the default depth cap.
    pub fn rationals() -> Tower {
        Tower::with_depth_cap(DEFAULT_DEPTH_CAP)
    }

    /// The rationals with a custom bound on how many levels may be stacked.
    pub fn with_depth_cap(cap: usize) -> Tower {
        Tower(Arc::new(TowerNode {
            parent: None,
            step: None,
            height: 0,
            degree: 1,
            rel_degree: 1,
            totally_real: true,
            embeddings: vec![Embedding::base()],
            depth_cap: cap,
        }))
    }

    pub(crate) fn new_level(
        parent: &Tower,
        step: Step,
        rel_degree: usize,
        embeddings: Vec<Arc<Embedding>>,
    ) -> Tower {
        let degree = parent.degree() * rel_degree;
        debug_assert!(!embeddings.is_empty(), "a tower level always embeds somewhere");
        Tower(Arc::new(TowerNode {
            parent: Some(parent.clone()),
            totally_real: embeddings.len() == degree,
            step: Some(step),
            height: parent.height() + 1,
            degree,
            rel_degree,
            embeddings,
            depth_cap: parent.depth_cap(),
        }))
    }

    pub fn height(&self) -> usize {
        self.0.height
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn depth_cap(&self) -> usize {
        self.0.depth_cap
    }

    /// Whether all `degree` embeddings of the tower are real.
    pub fn is_totally_real(&self) -> bool {
        self.0.totally_real
    }

    pub fn embedding_count(&self) -> usize {
        self.0.embeddings.len()
    }

    pub fn parent(&self) -> Option<Tower> {
        self.0.parent.clone()
    }

    pub(crate) fn parent_ref(&self) -> &Tower {
        self.0.parent.as_ref().expect("base tower has no parent")
    }

    pub(crate) fn embeddings(&self) -> &[Arc<Embedding>] {
        &self.0.embeddings
    }

    pub(crate) fn principal_embedding(&self) -> &Arc<Embedding> {
        &self.0.embeddings[0]
    }

    pub fn step_kind(&self) -> Option<StepKind> {
        self.0.step.as_ref().map(|s| match s {
            Step::Sqrt { .. } => StepKind::Sqrt,
            Step::Trisect { .. } => StepKind::Trisect,
        })
    }

    /// The defining element of the top step, as an element of the parent:
    /// the radicand of a square-root level, the target cosine of a
    /// trisection level.
    pub fn step_payload(&self) -> Option<Algebraic> {
        self.0.step.as_ref().map(|s| match s {
            Step::Sqrt { radicand } => radicand.clone(),
            Step::Trisect { u } => u.clone(),
        })
    }

    /// Structural equality: same steps with equal defining elements all the
    /// way down. Ignores depth caps and embedding refinement state.
    pub fn same(&self, other: &Tower) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.height != other.0.height {
            return false;
        }
        match (&self.0.step, &other.0.step) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let payload_eq = match (a, b) {
                    (Step::Sqrt { radicand: x }, Step::Sqrt { radicand: y }) => {
                        x.coords == y.coords
                    }
                    (Step::Trisect { u: x }, Step::Trisect { u: y }) => x.coords == y.coords,
                    _ => false,
                };
                payload_eq && self.parent_ref().same(other.parent_ref())
            }
            _ => false,
        }
    }

    /// Whether `self`'s steps form an initial segment of `other`'s.
    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        if self.height() > other.height() {
            return false;
        }
        let mut t = other.clone();
        while t.height() > self.height() {
            t = t.parent().expect("height > 0 implies a parent");
        }
        self.same(&t)
    }

    /// The generator adjoined at the top level, as an element of `self`.
    pub fn generator(&self) -> Option<Algebraic> {
        if self.height() == 0 {
            return None;
        }
        let m = self.parent_ref().degree();
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[m] = BigRational::one();
        Some(Algebraic {
            tower: self.clone(),
            coords,
        })
    }

    /// All generators, bottom level first, lifted to `self`.
    pub fn generators(&self) -> Vec<Algebraic> {
        let mut levels = vec![];
        let mut t = self.clone();
        while t.height() > 0 {
            levels.push(t.clone());
            t = t.parent().unwrap();
        }
        levels.reverse();
        levels
            .into_iter()
            .map(|l| {
                l.generator()
                    .unwrap()
                    .lift_to(self)
                    .expect("a level lifts into its own tower")
            })
            .collect()
    }

    pub fn zero(&self) -> Algebraic {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> Algebraic {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, q: BigRational) -> Algebraic {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = q;
        Algebraic {
            tower: self.clone(),
            coords,
        }
    }

    pub fn from_int(&self, n: i64) -> Algebraic {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    /// Kind and defining element of every step, bottom first.
    pub fn steps(&self) -> Vec<(StepKind, Algebraic)> {
        let mut out = vec![];
        let mut t = self.clone();
        while t.height() > 0 {
            out.push((t.step_kind().unwrap(), t.step_payload().unwrap()));
            t = t.parent().unwrap();
        }
        out.reverse();
        out
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tower(height={}, degree={}, embeddings={}{})",
            self.height(),
            self.degree(),
            self.embedding_count(),
            if self.is_totally_real() { ", totally real" } else { "" }
        )
    }
}

/// An exact element of a tower: a rational coordinate vector over the
/// tower's power-product basis.
#[derive(Clone)]
pub struct Algebraic {
    pub(crate) tower: Tower,
    pub(crate) coords: Vec<BigRational>,
}

impl Algebraic {
    /// Wraps a coordinate vector; the length must match the tower degree.
    pub fn new(tower: &Tower, coords: Vec<BigRational>) -> Result<Algebraic> {
        if coords.len() != tower.degree() {
            return Err(Error::IncompatibleTowers(format!(
                "coordinate vector of length {} for a tower of degree {}",
                coords.len(),
                tower.degree()
            )));
        }
        Ok(Algebraic {
            tower: tower.clone(),
            coords,
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The exact rational value, if the element lies in the base field.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Drops tower levels whose generator the element does not use.
    pub fn demote(mut self) -> Algebraic {
        loop {
            if self.tower.height() == 0 {
                return self;
            }
            let m = self.tower.parent_ref().degree();
            if self.coords[m..].iter().all(|c| c.is_zero()) {
                let parent = self.tower.parent().unwrap();
                self.coords.truncate(m);
                self.tower = parent;
            } else {
                return self;
            }
        }
    }

    /// Re-expresses the element in a taller tower that extends its own.
    pub fn lift_to(&self, target: &Tower) -> Result<Algebraic> {
        if self.tower.same(target) {
            return Ok(Algebraic {
                tower: target.clone(),
                coords: self.coords.clone(),
            });
        }
        if !self.tower.is_prefix_of(target) {
            return Err(Error::IncompatibleTowers(format!(
                "cannot lift from height {} to unrelated tower of height {}",
                self.tower.height(),
                target.height()
            )));
        }
        let lower = self.lift_to(&target.parent().expect("prefix is strictly lower"))?;
        let mut coords = lower.coords;
        coords.resize(target.degree(), BigRational::zero());
        Ok(Algebraic {
            tower: target.clone(),
            coords,
        })
    }

    /// Brings two elements into one common tower: both are demoted, then the
    /// lower one is lifted along the shared structural prefix.
    pub fn unify(a: &Algebraic, b: &Algebraic) -> Result<(Algebraic, Algebraic)> {
        if a.tower.same(&b.tower) {
            return Ok((a.clone(), b.clone()));
        }
        let ad = a.clone().demote();
        let bd = b.clone().demote();
        if ad.tower.is_prefix_of(&bd.tower) {
            let al = ad.lift_to(&bd.tower)?;
            Ok((al, bd))
        } else if bd.tower.is_prefix_of(&ad.tower) {
            let bl = bd.lift_to(&ad.tower)?;
            Ok((ad, bl))
        } else {
            Err(Error::IncompatibleTowers(format!(
                "towers of heights {} and {} share no prefix containing both elements",
                a.tower.height(),
                b.tower.height()
            )))
        }
    }

    pub fn checked_add(&self, other: &Algebraic) -> Result<Algebraic> {
        let (x, y) = Algebraic::unify(self, other)?;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Algebraic {
            tower: x.tower,
            coords,
        })
    }

    pub fn checked_sub(&self, other: &Algebraic) -> Result<Algebraic> {
        let (x, y) = Algebraic::unify(self, other)?;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Algebraic {
            tower: x.tower,
            coords,
        })
    }

    pub fn checked_mul(&self, other: &Algebraic) -> Result<Algebraic> {
        let (x, y) = Algebraic::unify(self, other)?;
        let coords = mul_coords(&x.tower, &x.coords, &y.coords);
        Ok(Algebraic {
            tower: x.tower,
            coords,
        })
    }

    pub fn checked_div(&self, other: &Algebraic) -> Result<Algebraic> {
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    pub fn inverse(&self) -> Result<Algebraic> {
        let coords = inv_coords(&self.tower, &self.coords)?;
        Ok(Algebraic {
            tower: self.tower.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> Algebraic {
        Algebraic {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Algebraic {
        Algebraic {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add_rational(&self, k: &BigRational) -> Algebraic {
        let mut coords = self.coords.clone();
        coords[0] += k;
        Algebraic {
            tower: self.tower.clone(),
            coords,
        }
    }

    pub fn square(&self) -> Algebraic {
        self.checked_mul(self).expect("same tower")
    }

    pub fn pow(&self, e: u32) -> Algebraic {
        let mut acc = self.tower.one();
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same tower");
        }
        acc
    }

    /// Exact sign under the principal embedding: -1, 0, or +1.
    pub fn sign(&self) -> i8 {
        sign_at_coords(&self.tower, &self.coords, self.tower.principal_embedding())
    }

    /// Exact signs under every real embedding of the tower, in embedding
    /// order (principal first).
    pub fn embedding_signs(&self) -> Vec<i8> {
        self.tower
            .embeddings()
            .iter()
            .map(|e| sign_at_coords(&self.tower, &self.coords, e))
            .collect()
    }

    /// The minimal polynomial over the rationals, with coprime integer
    /// coefficients and positive leading coefficient.
    pub fn minimal_polynomial(&self) -> RatPoly {
        let x = self.clone().demote();
        rational_minpoly(&x.tower, &x.coords).primitive_integer()
    }

    /// Whether every conjugate of the element (as an abstract algebraic
    /// number) is real.
    pub fn is_totally_real(&self) -> bool {
        let p = self.minimal_polynomial();
        let deg = p.degree().unwrap();
        p.real_root_count().unwrap() == deg
    }

    /// Whether every conjugate is real and strictly positive. Zero is not
    /// totally positive.
    pub fn is_totally_positive(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let p = self.minimal_polynomial();
        let deg = p.degree().unwrap();
        let all_positive = p.real_root_count_positive().unwrap() == deg;
        if self.tower.is_totally_real() {
            // The interval certificates must agree with the Sturm count.
            let by_signs = self.embedding_signs().iter().all(|&s| s > 0);
            assert_eq!(
                all_positive, by_signs,
                "embedding signs disagree with the Sturm root count"
            );
        }
        all_positive
    }

    /// Shrinks the principal isolating interval below `eps` and returns it.
    pub fn principal_interval(&self, eps: &BigRational) -> RatInterval {
        let emb = self.tower.principal_embedding();
        loop {
            let iv = eval_interval(&self.tower, &self.coords, emb);
            if &iv.width() < eps {
                return iv;
            }
            refine_chain(&self.tower, emb);
        }
    }

    /// A floating-point approximation of the principal value, accurate to
    /// roughly 1e-15; for displays and cross-checks only.
    pub fn to_f64(&self) -> f64 {
        let eps = ratio(1, 1_000_000_000_000_000);
        let iv = self.principal_interval(&eps);
        iv.mid().to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for Algebraic {
    fn eq(&self, other: &Self) -> bool {
        match Algebraic::unify(self, other) {
            Ok((a, b)) => a.coords == b.coords,
            Err(_) => false,
        }
    }
}

impl fmt::Debug for Algebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "Algebraic({q})");
        }
        write!(
            f,
            "Algebraic(≈{:.6}, degree {} tower)",
            self.to_f64(),
            self.tower.degree()
        )
    }
}

macro_rules! arith_op {
    ($trait:ident, $method:ident, $checked:ident, $what:literal) => {
        impl std::ops::$trait for &Algebraic {
            type Output = Algebraic;
            fn $method(self, rhs: &Algebraic) -> Algebraic {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!(concat!($what, " failed: {}"), e))
            }
        }
        impl std::ops::$trait for Algebraic {
            type Output = Algebraic;
            fn $method(self, rhs: Algebraic) -> Algebraic {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Algebraic> for Algebraic {
            type Output = Algebraic;
            fn $method(self, rhs: &Algebraic) -> Algebraic {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<Algebraic> for &Algebraic {
            type Output = Algebraic;
            fn $method(self, rhs: Algebraic) -> Algebraic {
                self.$method(&rhs)
            }
        }
    };
}

arith_op!(Add, add, checked_add, "addition");
arith_op!(Sub, sub, checked_sub, "subtraction");
arith_op!(Mul, mul, checked_mul, "multiplication");
arith_op!(Div, div, checked_div, "division");

impl std::ops::Neg for &Algebraic {
    type Output = Algebraic;
    fn neg(self) -> Algebraic {
        Algebraic::neg(self)
    }
}

impl std::ops::Neg for Algebraic {
    type Output = Algebraic;
    fn neg(self) -> Algebraic {
        Algebraic::neg(&self)
    }
}

// ---- coordinate arithmetic ----

pub(crate) fn mul_coords(t: &Tower, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if t.height() == 0 {
        return vec![&a[0] * &b[0]];
    }
    let parent = t.parent_ref();
    let m = parent.degree();
    let d = t.0.rel_degree;
    let mut p: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); m]; 2 * d - 1];
    for i in 0..d {
        let ai = &a[i * m..(i + 1) * m];
        if ai.iter().all(|c| c.is_zero()) {
            continue;
        }
        for j in 0..d {
            let bj = &b[j * m..(j + 1) * m];
            if bj.iter().all(|c| c.is_zero()) {
                continue;
            }
            let prod = mul_coords(parent, ai, bj);
            for (acc, v) in p[i + j].iter_mut().zip(prod) {
                *acc += v;
            }
        }
    }
    let mut out = vec![BigRational::zero(); t.degree()];
    match t.0.step.as_ref().unwrap() {
        Step::Sqrt { radicand } => {
            // g^2 = radicand
            let reduce = mul_coords(parent, &radicand.coords, &p[2]);
            for i in 0..m {
                out[i] = &p[0][i] + &reduce[i];
                out[m + i] = p[1][i].clone();
            }
        }
        Step::Trisect { u } => {
            // g^3 = (3g + u)/4 and g^4 = (3g^2 + ug)/4
            let quarter = ratio(1, 4);
            let three_quarters = ratio(3, 4);
            let up3 = mul_coords(parent, &u.coords, &p[3]);
            let up4 = mul_coords(parent, &u.coords, &p[4]);
            for i in 0..m {
                out[i] = &p[0][i] + &up3[i] * &quarter;
                out[m + i] = &p[1][i] + &p[3][i] * &three_quarters + &up4[i] * &quarter;
                out[2 * m + i] = &p[2][i] + &p[4][i] * &three_quarters;
            }
        }
    }
    out
}

fn inv_coords(t: &Tower, a: &[BigRational]) -> Result<Vec<BigRational>> {
    if a.iter().all(|c| c.is_zero()) {
        return Err(Error::DivisionByZero);
    }
    if t.height() == 0 {
        return Ok(vec![a[0].recip()]);
    }
    let parent = t.parent_ref();
    let m = parent.degree();
    match t.0.step.as_ref().unwrap() {
        Step::Sqrt { radicand } => {
            let c0 = &a[..m];
            let c1 = &a[m..];
            let c0sq = mul_coords(parent, c0, c0);
            let c1sq = mul_coords(parent, c1, c1);
            let rc1sq = mul_coords(parent, &radicand.coords, &c1sq);
            let norm: Vec<BigRational> =
                c0sq.iter().zip(&rc1sq).map(|(x, y)| x - y).collect();
            if norm.iter().all(|c| c.is_zero()) {
                panic!(
                    "tower invariant violated: nonzero element is a zero divisor \
                     (a square-root step polynomial must have been reducible)"
                );
            }
            let ninv = inv_coords(parent, &norm)?;
            let r0 = mul_coords(parent, c0, &ninv);
            let r1 = mul_coords(parent, c1, &ninv);
            let mut out = r0;
            out.extend(r1.into_iter().map(|c| -c));
            Ok(out)
        }
        Step::Trisect { u } => {
            // Solve (v0 + v1 g + v2 g^2) * a = 1 over the parent field:
            // columns of the system are the coordinates of a * g^j.
            let mul_by_g = |chunks: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
                // g * (c0 + c1 g + c2 g^2) = (u/4)c2 + (c0 + (3/4)c2) g + c1 g^2
                let quarter = ratio(1, 4);
                let three_quarters = ratio(3, 4);
                let uc2 = mul_coords(parent, &u.coords, &chunks[2]);
                vec![
                    uc2.iter().map(|c| c * &quarter).collect(),
                    chunks[0]
                        .iter()
                        .zip(&chunks[2])
                        .map(|(c0, c2)| c0 + c2 * &three_quarters)
                        .collect(),
                    chunks[1].clone(),
                ]
            };
            let col0: Vec<Vec<BigRational>> = (0..3)
                .map(|e| a[e * m..(e + 1) * m].to_vec())
                .collect();
            let col1 = mul_by_g(&col0);
            let col2 = mul_by_g(&col1);
            // Rows of the 3x3 system over the parent field.
            let mut mat: Vec<Vec<Vec<BigRational>>> = (0..3)
                .map(|r| vec![col0[r].clone(), col1[r].clone(), col2[r].clone()])
                .collect();
            let mut rhs: Vec<Vec<BigRational>> = vec![
                {
                    let mut one = vec![BigRational::zero(); m];
                    one[0] = BigRational::one();
                    one
                },
                vec![BigRational::zero(); m],
                vec![BigRational::zero(); m],
            ];
            for col in 0..3 {
                let pivot_row = (col..3)
                    .find(|&r| mat[r][col].iter().any(|c| !c.is_zero()))
                    .unwrap_or_else(|| {
                        panic!(
                            "tower invariant violated: nonzero element is a zero divisor \
                             (a trisection step polynomial must have been reducible)"
                        )
                    });
                mat.swap(col, pivot_row);
                rhs.swap(col, pivot_row);
                let pinv = inv_coords(parent, &mat[col][col])?;
                for c in 0..3 {
                    mat[col][c] = mul_coords(parent, &mat[col][c], &pinv);
                }
                rhs[col] = mul_coords(parent, &rhs[col], &pinv);
                for r in 0..3 {
                    if r == col || mat[r][col].iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let factor = mat[r][col].clone();
                    for c in 0..3 {
                        let sub = mul_coords(parent, &factor, &mat[col][c]);
                        for (x, y) in mat[r][c].iter_mut().zip(sub) {
                            *x -= y;
                        }
                    }
                    let sub = mul_coords(parent, &factor, &rhs[col]);
                    for (x, y) in rhs[r].iter_mut().zip(sub) {
                        *x -= y;
                    }
                }
            }
            let mut out = Vec::with_capacity(3 * m);
            for chunk in rhs {
                out.extend(chunk);
            }
            Ok(out)
        }
    }
}

// ---- embedding evaluation and exact signs ----

pub(crate) fn eval_interval(t: &Tower, coords: &[BigRational], emb: &Embedding) -> RatInterval {
    debug_assert_eq!(t.height(), emb.height, "embedding belongs to another level");
    if t.height() == 0 {
        return RatInterval::point(coords[0].clone());
    }
    let parent = t.parent_ref();
    let pemb = emb.parent.as_ref().unwrap();
    let m = parent.degree();
    let d = t.0.rel_degree;
    let top = emb.top().iv;
    let mut acc = eval_interval(parent, &coords[(d - 1) * m..], pemb);
    for e in (0..d - 1).rev() {
        acc = acc
            .mul(&top)
            .add(&eval_interval(parent, &coords[e * m..(e + 1) * m], pemb));
    }
    acc
}

/// Sign of the step polynomial of level `t` at the rational point `x`,
/// evaluated under the given embedding of the parent.
fn step_sign_at_rational(t: &Tower, pemb: &Arc<Embedding>, x: &BigRational) -> i8 {
    let parent = t.parent_ref();
    match t.0.step.as_ref().unwrap() {
        Step::Sqrt { radicand } => {
            // x^2 - radicand
            let mut coords: Vec<BigRational> = radicand.coords.iter().map(|c| -c).collect();
            coords[0] += x * x;
            sign_at_coords(parent, &coords, pemb)
        }
        Step::Trisect { u } => {
            // x^3 - (3/4)x - u/4
            let quarter = ratio(1, 4);
            let mut coords: Vec<BigRational> =
                u.coords.iter().map(|c| -(c * &quarter)).collect();
            coords[0] += x * x * x - x * ratio(3, 4);
            sign_at_coords(parent, &coords, pemb)
        }
    }
}

/// Halves the isolating interval of one level of an embedding, keeping the
/// chosen root inside.
fn refine_level(t: &Tower, emb: &Embedding) {
    debug_assert!(t.height() >= 1 && t.height() == emb.height);
    let top = emb.top();
    let mid = top.iv.mid();
    let s = step_sign_at_rational(t, emb.parent.as_ref().unwrap(), &mid);
    assert!(
        s != 0,
        "step polynomial has a rational root; it should have been irreducible"
    );
    let new = if s == top.sign_lo {
        TopInterval {
            iv: RatInterval::new(mid, top.iv.hi),
            sign_lo: s,
            sign_hi: top.sign_hi,
        }
    } else {
        TopInterval {
            iv: RatInterval::new(top.iv.lo, mid),
            sign_lo: top.sign_lo,
            sign_hi: s,
        }
    };
    emb.set_top(new);
}

/// Refines every level of the embedding chain once.
pub(crate) fn refine_chain(t: &Tower, emb: &Arc<Embedding>) {
    let mut tower = t.clone();
    let mut e = emb.clone();
    while tower.height() >= 1 {
        refine_level(&tower, &e);
        let parent_emb = e.parent.as_ref().unwrap().clone();
        tower = tower.parent().unwrap();
        e = parent_emb;
    }
}

/// Exact sign of an element under one embedding, by interval refinement
/// with an algebraic lower bound as the stopping rule.
pub(crate) fn sign_at_coords(t: &Tower, coords: &[BigRational], emb: &Arc<Embedding>) -> i8 {
    if coords.iter().all(|c| c.is_zero()) {
        return 0;
    }
    for _ in 0..64 {
        let iv = eval_interval(t, coords, emb);
        if let Some(s) = iv.sign() {
            return s;
        }
        refine_chain(t, emb);
    }
    // The interval keeps straddling zero. Compute how close to zero the
    // value could possibly be: every conjugate of the element is a root of
    // its minimal polynomial, and a monic polynomial with nonzero constant
    // term has no roots below |a0| / (|a0| + max |ai|).
    let p = rational_minpoly(t, coords);
    let a0 = p.coeff(0);
    if a0.is_zero() {
        panic!(
            "tower invariant violated: nonzero coordinates represent the number zero \
             (a step polynomial must have been reducible)"
        );
    }
    let a0 = a0.abs();
    let deg = p.degree().unwrap();
    let mut amax = BigRational::one();
    for i in 1..=deg {
        let c = p.coeff(i).abs();
        if c > amax {
            amax = c;
        }
    }
    let bound = &a0 / (&a0 + &amax);
    loop {
        let iv = eval_interval(t, coords, emb);
        if let Some(s) = iv.sign() {
            return s;
        }
        assert!(
            iv.width() >= bound,
            "interval narrower than the root bound still straddles zero"
        );
        refine_chain(t, emb);
    }
}

// ---- minimal polynomials ----

/// Incremental Gaussian elimination that watches a stream of vectors and
/// reports the first linear dependency as monic polynomial coefficients.
pub(crate) struct DependencyFinder {
    rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)>,
    count: usize,
}

impl DependencyFinder {
    pub fn new() -> DependencyFinder {
        DependencyFinder {
            rows: vec![],
            count: 0,
        }
    }

    /// Feeds vector v_k (k = number of previous feeds). When v_k is a
    /// combination of the previous vectors, returns monic coefficients
    /// c with c_k = 1 and sum c_i v_i = 0.
    pub fn feed(&mut self, mut v: Vec<BigRational>) -> Option<Vec<BigRational>> {
        let mut combo = vec![BigRational::zero(); self.count + 1];
        combo[self.count] = BigRational::one();
        for (pivot, rv, rc) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(rv) {
                *x -= &c * y;
            }
            for (i, y) in rc.iter().enumerate() {
                combo[i] -= &c * y;
            }
        }
        if v.iter().all(|c| c.is_zero()) {
            return Some(combo);
        }
        let pivot = v.iter().position(|c| !c.is_zero()).unwrap();
        let pv = v[pivot].clone();
        for x in v.iter_mut() {
            *x /= &pv;
        }
        for x in combo.iter_mut() {
            *x /= &pv;
        }
        self.rows.push((pivot, v, combo));
        self.count += 1;
        None
    }
}

/// Monic minimal polynomial over the rationals of the element with the
/// given coordinates.
pub(crate) fn rational_minpoly(t: &Tower, coords: &[BigRational]) -> RatPoly {
    let n = t.degree();
    let mut finder = DependencyFinder::new();
    let mut power = vec![BigRational::zero(); n];
    power[0] = BigRational::one();
    loop {
        if let Some(dep) = finder.feed(power.clone()) {
            return RatPoly::new(dep);
        }
        power = mul_coords(t, &power, coords);
    }
}

// ---- serialized form ----

/// One tower step in serialized form: the step kind plus the defining
/// element's coordinates over the tower below, as exact fraction strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDescriptor {
    pub kind: String,
    pub data: Vec<String>,
}

/// A tower element in serialized form: the tower's steps from the rationals
/// up, then the element's coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberDescriptor {
    pub steps: Vec<StepDescriptor>,
    pub coords: Vec<String>,
}

impl Algebraic {
    /// Serializes the element (demoted to the smallest tower it lives in).
    pub fn describe(&self) -> NumberDescriptor {
        let x = self.clone().demote();
        let steps = x
            .tower
            .steps()
            .into_iter()
            .map(|(kind, payload)| StepDescriptor {
                kind: match kind {
                    StepKind::Sqrt => "sqrt".to_string(),
                    StepKind::Trisect => "trisect".to_string(),
                },
                data: payload.coords.iter().map(|c| c.to_string()).collect(),
            })
            .collect();
        NumberDescriptor {
            steps,
            coords: x.coords.iter().map(|c| c.to_string()).collect(),
        }
    }

    /// Rebuilds an element from its serialized form by re-adjoining each
    /// step. Fails if a step is malformed or does not actually extend the
    /// tower it claims to extend.
    pub fn from_descriptor(d: &NumberDescriptor, depth_cap: usize) -> Result<Algebraic> {
        let mut tower = Tower::with_depth_cap(depth_cap);
        for (i, step) in d.steps.iter().enumerate() {
            let coords = parse_coords(&step.data)?;
            let payload = Algebraic::new(&tower, coords).map_err(|e| {
                Error::InvalidTrace(format!("step {i}: {e}"))
            })?;
            let next = match step.kind.as_str() {
                "sqrt" => tower.adjoin_sqrt(&payload)?.0,
                "trisect" => tower.adjoin_trisection_root(&payload)?.0,
                other => {
                    return Err(Error::InvalidTrace(format!(
                        "step {i}: unknown step kind {other:?}"
                    )))
                }
            };
            if next.height() != tower.height() + 1 {
                return Err(Error::InvalidTrace(format!(
                    "step {i}: step does not extend the tower (the adjoined root \
                     already lies in it)"
                )));
            }
            tower = next;
        }
        let coords = parse_coords(&d.coords)?;
        Algebraic::new(&tower, coords)
            .map_err(|e| Error::InvalidTrace(format!("coordinates: {e}")))
    }
}

fn parse_coords(strings: &[String]) -> Result<Vec<BigRational>> {
    strings.iter().map(|s| parse_rational(s)).collect()
}

/// Convenience sign accessor used across the geometry code.
pub fn sign_of(x: &Algebraic) -> i8 {
    x.sign()
}
