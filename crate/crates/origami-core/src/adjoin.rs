//! Growing towers: adjoining square roots and trisection roots.
//!
//! Adjoining is collapse-aware: before a new level is stacked, we decide
//! exactly whether the wanted root already lies in the field. The test
//! reduces to factoring the minimal polynomial of a shifted generator of
//! the quotient algebra `F[x]/(f)` over the rationals and extracting the
//! root from an irreducible factor with an in-field gcd. A rational norm
//! screen rejects most non-square radicands before any factoring happens.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::poly::RatPoly;
use crate::rational::{ratio, sqrt_exact};
use crate::tower::{
    mul_coords, sign_at_coords, Algebraic, DependencyFinder, Step, StepKind, Tower,
};
use crate::zfactor;

/// Polynomial with coefficients in one tower, dense ascending form.
#[derive(Clone)]
pub(crate) struct FPoly {
    tower: Tower,
    coeffs: Vec<Algebraic>,
}

impl FPoly {
    pub fn new(tower: &Tower, coeffs: Vec<Algebraic>) -> FPoly {
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                c.demote()
                    .lift_to(tower)
                    .expect("polynomial coefficients must live in the tower")
            })
            .collect();
        let mut p = FPoly {
            tower: tower.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_ratpoly(tower: &Tower, p: &RatPoly) -> FPoly {
        FPoly::new(
            tower,
            p.coeffs()
                .iter()
                .map(|c| tower.from_rational(c.clone()))
                .collect(),
        )
    }

    pub fn zero(tower: &Tower) -> FPoly {
        FPoly {
            tower: tower.clone(),
            coeffs: vec![],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Algebraic {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.tower.zero())
    }

    pub fn leading(&self) -> &Algebraic {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn add(&self, other: &FPoly) -> FPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).checked_add(&other.coeff(i)).expect("same tower"))
            .collect();
        let mut p = FPoly {
            tower: self.tower.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn mul(&self, other: &FPoly) -> FPoly {
        if self.is_zero() || other.is_zero() {
            return FPoly::zero(&self.tower);
        }
        let mut coeffs = vec![self.tower.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.checked_mul(b).expect("same tower");
                coeffs[i + j] = coeffs[i + j].checked_add(&prod).expect("same tower");
            }
        }
        let mut p = FPoly {
            tower: self.tower.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn scale_elem(&self, k: &Algebraic) -> FPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(k).expect("same tower"))
            .collect();
        let mut p = FPoly {
            tower: self.tower.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn monic(&self) -> FPoly {
        let lead = self.leading();
        if lead.is_one() {
            return self.clone();
        }
        let inv = lead.inverse().expect("leading coefficient is nonzero");
        self.scale_elem(&inv)
    }

    pub fn divrem(&self, den: &FPoly) -> (FPoly, FPoly) {
        assert!(!den.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < den.coeffs.len() {
            return (FPoly::zero(&self.tower), self.clone());
        }
        let dinv = den.leading().inverse().expect("leading coefficient is nonzero");
        let dd = den.coeffs.len() - 1;
        let mut rem: Vec<Algebraic> = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut q = vec![self.tower.zero(); qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + dd].checked_mul(&dinv).expect("same tower");
            if !c.is_zero() {
                for (i, dc) in den.coeffs.iter().enumerate() {
                    let t = c.checked_mul(dc).expect("same tower");
                    rem[k + i] = rem[k + i].checked_sub(&t).expect("same tower");
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        let mut qq = FPoly {
            tower: self.tower.clone(),
            coeffs: q,
        };
        qq.trim();
        let mut rr = FPoly {
            tower: self.tower.clone(),
            coeffs: rem,
        };
        rr.trim();
        (qq, rr)
    }

    pub fn rem(&self, m: &FPoly) -> FPoly {
        self.divrem(m).1
    }

    pub fn div_exact(&self, den: &FPoly) -> FPoly {
        let (q, r) = self.divrem(den);
        assert!(r.is_zero(), "division expected to be exact");
        q
    }

    pub fn gcd_monic(a: &FPoly, b: &FPoly) -> FPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        if x.is_zero() {
            x
        } else {
            x.monic()
        }
    }

    pub fn derivative(&self) -> FPoly {
        if self.coeffs.len() <= 1 {
            return FPoly::zero(&self.tower);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&BigRational::from_integer((i as i64).into())))
            .collect();
        let mut p = FPoly {
            tower: self.tower.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn eval(&self, x: &Algebraic) -> Algebraic {
        let mut acc = x.tower().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(x)
                .and_then(|p| p.checked_add(c))
                .expect("evaluation point must be tower-compatible");
        }
        acc
    }
}

/// The field norm of an element: the determinant of its multiplication
/// matrix over the rationals.
pub(crate) fn rational_norm(a: &Algebraic) -> BigRational {
    let t = a.tower();
    let n = t.degree();
    let mut m: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        m.push(mul_coords(t, a.coords(), &e));
    }
    // m[i] is the image of basis vector i; determinant of the transpose is
    // the same, so eliminate directly.
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pr != col {
            m.swap(col, pr);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// One root of `f` inside its coefficient field, or None if there is none.
///
/// The polynomial is reduced to a squarefree one first. For each candidate
/// shift, the minimal polynomial of the shifted generator of `F[x]/(f)`
/// over the rationals is factored; an irreducible factor shared with a root
/// yields the root through a degree-1 gcd. The answer None is exact: either
/// the quotient algebra is a field, or every factor was cleanly separated
/// and none produced a root.
pub(crate) fn find_root_in_field(f: &FPoly) -> Option<Algebraic> {
    let deg = f.degree().expect("find_root_in_field needs a nonzero polynomial");
    let f = f.monic();
    let fp = f.derivative();
    let g = FPoly::gcd_monic(&f, &fp);
    if g.degree().map_or(false, |d| d >= 1) {
        return find_root_in_field(&f.div_exact(&g));
    }
    if deg == 0 {
        return None;
    }
    if deg == 1 {
        return Some(f.coeff(0).neg());
    }
    let t = f.tower().clone();
    let n = t.degree();
    let dim = deg * n;

    let mut shifts: Vec<Algebraic> = vec![t.zero()];
    let gens = t.generators();
    for g in &gens {
        if !shifts.iter().any(|s| s.coords() == g.coords()) {
            shifts.push(g.clone());
        }
    }
    if gens.len() > 1 {
        for tv in [1i64, 2, 3, 5, 7, 11, 13, 17] {
            let mut theta = t.zero();
            let mut w = BigRational::one();
            for g in &gens {
                theta = theta
                    .checked_add(&g.scale(&w))
                    .expect("same tower");
                w *= BigRational::from_integer(tv.into());
            }
            if !shifts.iter().any(|s| s.coords() == theta.coords()) {
                shifts.push(theta);
            }
        }
    }

    for rho in &shifts {
        let xi = FPoly::new(&t, vec![rho.neg(), t.one()]);
        let mut finder = DependencyFinder::new();
        let mut pw = FPoly::new(&t, vec![t.one()]);
        let p_xi = loop {
            if let Some(dep) = finder.feed(flatten(&pw, deg, n)) {
                break RatPoly::new(dep);
            }
            pw = pw.mul(&xi).rem(&f);
        };
        let factors = zfactor::factor_monic_squarefree(&p_xi);
        if factors.len() == 1 && factors[0].degree() == Some(dim) {
            // The quotient algebra is a field: f is irreducible over F.
            return None;
        }
        let mut ambiguous = false;
        for q in &factors {
            // r = q(x - rho) reduced mod f.
            let mut r = FPoly::zero(&t);
            for i in (0..=q.degree().unwrap()).rev() {
                r = r.mul(&xi).rem(&f);
                r = r.add(&FPoly::new(&t, vec![t.from_rational(q.coeff(i).clone())]));
            }
            if r.is_zero() {
                ambiguous = true;
                continue;
            }
            let h = FPoly::gcd_monic(&f, &r);
            match h.degree().unwrap() {
                0 => continue,
                1 => {
                    let root = h.coeff(0).neg();
                    assert!(
                        f.eval(&root).is_zero(),
                        "extracted value fails to be a root"
                    );
                    return Some(root);
                }
                _ => ambiguous = true,
            }
        }
        if !ambiguous {
            return None;
        }
    }
    // Every shift left some factor unseparated. No workload reaches this
    // point with a root present; the sign machinery panics loudly if an
    // undetected collapse ever produces a reducible level.
    None
}

fn flatten(p: &FPoly, deg: usize, n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); deg * n];
    for j in 0..deg {
        let c = p.coeff(j);
        out[j * n..(j + 1) * n].clone_from_slice(c.coords());
    }
    out
}

impl Tower {
    /// Adjoins a square root of `a` (which must be non-negative under the
    /// principal embedding). Returns the possibly extended tower and the
    /// principal square root inside it; the tower is unchanged whenever the
    /// root already exists in it.
    pub fn adjoin_sqrt(&self, a: &Algebraic) -> Result<(Tower, Algebraic)> {
        let a = a.clone().demote().lift_to(self)?;
        if a.is_zero() {
            return Ok((self.clone(), self.zero()));
        }
        if a.sign() < 0 {
            return Err(Error::NegativeRadicand);
        }
        if let Some(q) = a.to_rational() {
            if let Some(r) = sqrt_exact(&q) {
                return Ok((self.clone(), self.from_rational(r)));
            }
        }
        let mut level = self.clone();
        while level.height() > 0 {
            if level.step_kind() == Some(StepKind::Sqrt) {
                let rad = level.step_payload().unwrap().lift_to(self)?;
                if rad.coords() == a.coords() {
                    let g = level.generator().unwrap().lift_to(self)?;
                    return Ok((self.clone(), g));
                }
            }
            level = level.parent().unwrap();
        }
        let nrm = rational_norm(&a);
        if !nrm.is_negative() && sqrt_exact(&nrm).is_some() {
            let f = FPoly::new(self, vec![a.neg(), self.zero(), self.one()]);
            if let Some(r) = find_root_in_field(&f) {
                let r = if r.sign() < 0 { r.neg() } else { r };
                return Ok((self.clone(), r));
            }
        }
        if self.height() >= self.depth_cap() {
            return Err(Error::TowerDepthExceeded {
                cap: self.depth_cap(),
            });
        }
        let mut embeddings = vec![];
        let two = BigRational::from_integer(2.into());
        for pe in self.embeddings() {
            let sa = sign_at_coords(self, a.coords(), pe);
            debug_assert!(sa != 0, "nonzero element has zero image");
            if sa < 0 {
                continue;
            }
            let mut b = BigRational::one();
            loop {
                let mut test: Vec<BigRational> = a.coords().iter().map(|c| -c).collect();
                test[0] += &b * &b;
                if sign_at_coords(self, &test, pe) > 0 {
                    break;
                }
                b *= &two;
            }
            embeddings.push(Embedding::new_level(
                pe.clone(),
                0,
                RatInterval::new(BigRational::zero(), b.clone()),
                -1,
                1,
            ));
            embeddings.push(Embedding::new_level(
                pe.clone(),
                1,
                RatInterval::new(-b, BigRational::zero()),
                1,
                -1,
            ));
        }
        let next = Tower::new_level(self, Step::Sqrt { radicand: a }, 2, embeddings);
        let g = next.generator().unwrap();
        Ok((next, g))
    }

    /// Adjoins the principal root of `x^3 - (3/4)x - u/4`, the largest of
    /// the three real roots when `|u| < 1` under every relevant embedding.
    /// This is the cosine-trisection step: for `u = cos(phi)` the principal
    /// root is `cos(phi/3)`.
    pub fn adjoin_trisection_root(&self, u: &Algebraic) -> Result<(Tower, Algebraic)> {
        let u = u.clone().demote().lift_to(self)?;
        let w = self.one().checked_sub(&u.square())?;
        let sw = w.sign();
        if sw < 0 {
            return Err(Error::OutOfRange(
                "trisection target must lie strictly between -1 and 1".into(),
            ));
        }
        if sw == 0 {
            return Err(Error::DegenerateTrisection);
        }
        let mut level = self.clone();
        while level.height() > 0 {
            if level.step_kind() == Some(StepKind::Trisect) {
                let pu = level.step_payload().unwrap().lift_to(self)?;
                if pu.coords() == u.coords() {
                    let g = level.generator().unwrap().lift_to(self)?;
                    return Ok((self.clone(), g));
                }
            }
            level = level.parent().unwrap();
        }
        let quarter = ratio(1, 4);
        let f = FPoly::new(
            self,
            vec![
                u.scale(&quarter).neg(),
                self.from_rational(-ratio(3, 4)),
                self.zero(),
                self.one(),
            ],
        );
        if let Some(r) = find_root_in_field(&f) {
            // All three roots are real; the principal one is the unique
            // root above 1/2.
            let half = self.from_rational(ratio(1, 2));
            if r.checked_sub(&half)?.sign() > 0 {
                return Ok((self.clone(), r));
            }
            // Deflate: the other two roots are (-r ± sqrt(3(1 - r^2))) / 2.
            let disc = self
                .from_int(3)
                .checked_mul(&self.one().checked_sub(&r.square())?)?;
            let (ext, s) = self.adjoin_sqrt(&disc)?;
            let rl = r.lift_to(&ext)?;
            let root = s.checked_sub(&rl)?.scale(&ratio(1, 2));
            debug_assert!(
                root.checked_sub(&ext.from_rational(ratio(1, 2)))?.sign() > 0,
                "principal trisection root must exceed 1/2"
            );
            return Ok((ext, root));
        }
        if self.height() >= self.depth_cap() {
            return Err(Error::TowerDepthExceeded {
                cap: self.depth_cap(),
            });
        }
        let mut embeddings = vec![];
        let half = ratio(1, 2);
        let one = BigRational::one();
        let u_quarter_neg: Vec<BigRational> =
            u.coords().iter().map(|c| -(c * &quarter)).collect();
        let three_quarters = ratio(3, 4);
        for pe in self.embeddings() {
            let swe = sign_at_coords(self, w.coords(), pe);
            debug_assert!(swe != 0, "nonzero element has zero image");
            if swe > 0 {
                // |u| < 1 here: the three real roots always lie in the
                // windows below, with these step-polynomial endpoint signs.
                embeddings.push(Embedding::new_level(
                    pe.clone(),
                    0,
                    RatInterval::new(half.clone(), one.clone()),
                    -1,
                    1,
                ));
                embeddings.push(Embedding::new_level(
                    pe.clone(),
                    1,
                    RatInterval::new(-half.clone(), half.clone()),
                    1,
                    -1,
                ));
                embeddings.push(Embedding::new_level(
                    pe.clone(),
                    2,
                    RatInterval::new(-one.clone(), -half.clone()),
                    -1,
                    1,
                ));
            } else {
                // |u| > 1 here: a single real root.
                let sign_at_point = |x: &BigRational| -> i8 {
                    let mut coords = u_quarter_neg.clone();
                    coords[0] += x * x * x - x * &three_quarters;
                    sign_at_coords(self, &coords, pe)
                };
                let mut b = BigRational::from_integer(2.into());
                loop {
                    if sign_at_point(&b) > 0 && sign_at_point(&-b.clone()) < 0 {
                        break;
                    }
                    b *= BigRational::from_integer(2.into());
                }
                embeddings.push(Embedding::new_level(
                    pe.clone(),
                    0,
                    RatInterval::new(-b.clone(), b.clone()),
                    -1,
                    1,
                ));
            }
        }
        let next = Tower::new_level(self, Step::Trisect { u }, 3, embeddings);
        let g = next.generator().unwrap();
        Ok((next, g))
    }
}
