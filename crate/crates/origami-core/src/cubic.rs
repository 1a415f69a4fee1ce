//! Cubic equations with all-real roots, solved by cosine trisection.
//!
//! A depressed cubic `x^3 + px + q` with positive discriminant has three
//! real roots; rescaling by `m = sqrt(-4p/3)` turns it into the trisection
//! equation `4y^3 - 3y = u` with `|u| < 1`, whose principal root the tower
//! machinery adjoins directly. The other two roots follow from the angle
//! shifts by `2*pi/3`, which stay inside the same tower once `sqrt(3)` and
//! the trisected angle's sine are adjoined.

use crate::adjoin::{find_root_in_field, FPoly};
use crate::error::{Error, Result};
use crate::rational::ratio;
use crate::tower::{Algebraic, Tower};

/// Roots of a depressed cubic, in strictly descending principal order.
#[derive(Clone, Debug)]
pub struct CubicSolution {
    pub roots: [Algebraic; 3],
    pub multiplicity: [u32; 3],
    pub tower: Tower,
}

/// What the discriminant says about an irreducible cubic over a totally
/// real field.
#[derive(Clone, Debug)]
pub struct CubicRealityReport {
    /// Whether the splitting field is totally real (discriminant totally
    /// positive).
    pub totally_real: bool,
    pub discriminant: Algebraic,
    /// Degree of the splitting field over the coefficient field: 3 when
    /// the discriminant is a square there, 6 otherwise.
    pub splitting_degree: usize,
}

/// Discriminant `b^2 - 4c` of the monic quadratic `x^2 + bx + c`.
pub fn discriminant_quadratic(b: &Algebraic, c: &Algebraic) -> Result<Algebraic> {
    b.square().checked_sub(&c.scale(&ratio(4, 1)))
}

/// Depresses the monic cubic `x^3 + a x^2 + b x + c` via `x = y - a/3`,
/// returning `(p, q)` with `y^3 + p y + q`.
pub fn reduce_cubic(
    a: &Algebraic,
    b: &Algebraic,
    c: &Algebraic,
) -> Result<(Algebraic, Algebraic)> {
    let a2 = a.square();
    let p = b.checked_sub(&a2.scale(&ratio(1, 3)))?;
    let ab = a.checked_mul(b)?;
    let a3 = a2.checked_mul(a)?;
    let q = c
        .checked_sub(&ab.scale(&ratio(1, 3)))?
        .checked_add(&a3.scale(&ratio(2, 27)))?;
    Ok((p, q))
}

/// Discriminant `-(27 q^2 + 4 p^3)` of the depressed cubic `x^3 + px + q`;
/// positive exactly when the three roots are real and distinct.
pub fn discriminant_cubic(p: &Algebraic, q: &Algebraic) -> Result<Algebraic> {
    let q2 = q.square().scale(&ratio(27, 1));
    let p3 = p.square().checked_mul(p)?.scale(&ratio(4, 1));
    Ok(q2.checked_add(&p3)?.neg())
}

/// For `u = cos(phi)` with `|u| < 1`, adjoins `cos(phi/3)`: the principal
/// root of `4y^3 - 3y = u`. Returns the possibly extended tower and the
/// root inside it.
pub fn trisect_cos(u: &Algebraic) -> Result<(Tower, Algebraic)> {
    u.tower().clone().adjoin_trisection_root(u)
}

/// Solves `x^3 + px + q` when all three roots are real and distinct
/// (discriminant strictly positive under the principal embedding), by one
/// square root, one cosine trisection, and the sine of the trisected angle.
pub fn solve_totally_real_cubic(p: &Algebraic, q: &Algebraic) -> Result<CubicSolution> {
    let (p, q) = Algebraic::unify(p, q)?;
    let disc = discriminant_cubic(&p, &q)?;
    if disc.sign() <= 0 {
        return Err(Error::NotTotallyReal);
    }
    // disc > 0 forces p < 0, so the scale factor is a real square root.
    let (t_m, m) = p
        .tower()
        .clone()
        .adjoin_sqrt(&p.scale(&ratio(-4, 3)))?;
    let m3 = m.checked_mul(&m.square())?;
    let u = q
        .lift_to(&t_m)?
        .scale(&ratio(-4, 1))
        .checked_div(&m3)?;
    let (t_y, y1) = trisect_cos(&u)?;
    let (t_s3, s3) = t_y.adjoin_sqrt(&t_y.from_int(3))?;
    let y1 = y1.lift_to(&t_s3)?;
    let (tower, sy) = t_s3.adjoin_sqrt(&t_s3.one().checked_sub(&y1.square())?)?;
    let y1 = y1.lift_to(&tower)?;
    let s3 = s3.lift_to(&tower)?;
    // cos(psi -/+ 2*pi/3) = -cos(psi)/2 ± (sqrt3/2) sin(psi)
    let half_y1 = y1.scale(&ratio(-1, 2));
    let shift = s3.checked_mul(&sy)?.scale(&ratio(1, 2));
    let y2 = half_y1.checked_add(&shift)?;
    let y3 = half_y1.checked_sub(&shift)?;
    let m = m.lift_to(&tower)?;
    let roots = [
        m.checked_mul(&y1)?,
        m.checked_mul(&y2)?,
        m.checked_mul(&y3)?,
    ];
    let p_t = p.lift_to(&tower)?;
    let q_t = q.lift_to(&tower)?;
    for r in &roots {
        let residual = r
            .checked_mul(&r.square())?
            .checked_add(&p_t.checked_mul(r)?)?
            .checked_add(&q_t)?;
        assert!(residual.is_zero(), "cubic root residual must vanish exactly");
    }
    let e1 = roots[0]
        .checked_add(&roots[1])?
        .checked_add(&roots[2])?;
    assert!(e1.is_zero(), "depressed cubic roots must sum to zero");
    let e2 = roots[0]
        .checked_mul(&roots[1])?
        .checked_add(&roots[0].checked_mul(&roots[2])?)?
        .checked_add(&roots[1].checked_mul(&roots[2])?)?;
    assert!(e2 == p_t, "second symmetric function must equal p");
    let e3 = roots[0]
        .checked_mul(&roots[1])?
        .checked_mul(&roots[2])?;
    assert!(e3 == q_t.neg(), "product of roots must equal -q");
    debug_assert!(roots[0].checked_sub(&roots[1])?.sign() > 0);
    debug_assert!(roots[1].checked_sub(&roots[2])?.sign() > 0);
    Ok(CubicSolution {
        roots,
        multiplicity: [1, 1, 1],
        tower,
    })
}

/// Reports whether the irreducible monic-after-normalization cubic with the
/// given ascending coefficients has a totally real splitting field over the
/// coefficient tower, and that field's degree.
pub fn is_totally_real_cubic(tower: &Tower, coeffs: &[Algebraic]) -> Result<CubicRealityReport> {
    let f = FPoly::new(tower, coeffs.to_vec());
    if f.degree() != Some(3) {
        return Err(Error::NotCubic);
    }
    let f = f.monic();
    if find_root_in_field(&f).is_some() {
        return Err(Error::NotIrreducible);
    }
    let (p, q) = reduce_cubic(&f.coeff(2), &f.coeff(1), &f.coeff(0))?;
    let disc = discriminant_cubic(&p, &q)?;
    let totally_real = disc.is_totally_positive();
    let disc_sqrt = FPoly::new(
        tower,
        vec![disc.neg(), tower.zero(), tower.one()],
    );
    let splitting_degree = if disc.sign() > 0 && find_root_in_field(&disc_sqrt).is_some() {
        3
    } else {
        6
    };
    Ok(CubicRealityReport {
        totally_real,
        discriminant: disc,
        splitting_degree,
    })
}
