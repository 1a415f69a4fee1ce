//! Classification of numbers and fold traces into the construction
//! hierarchy: Pythagorean numbers (square roots of sums of squares),
//! totally real origami numbers (bisections and trisections), Euclidean
//! numbers, and their trisection closure. Certificates and refutations
//! both re-validate; everything else is reported as Unknown rather than
//! guessed.

use crate::adjoin::{find_root_in_field, FPoly};
use crate::axioms::{Axiom, Trace};
use crate::cubic::{discriminant_cubic, reduce_cubic, solve_totally_real_cubic};
use crate::error::{Error, Result};
use crate::geometry::join_towers;
use crate::poly::RatPoly;
use crate::rational::ratio;
use crate::tower::{Algebraic, StepKind, Tower};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionClass {
    Pythagorean,
    TotallyRealOrigami,
    Euclidean,
    EuclideanTrisection,
    Unknown,
    NotInEt,
}

impl ConstructionClass {
    pub fn symbol(&self) -> &'static str {
        match self {
            ConstructionClass::Pythagorean => "P",
            ConstructionClass::TotallyRealOrigami => "BT",
            ConstructionClass::Euclidean => "E",
            ConstructionClass::EuclideanTrisection => "ET",
            ConstructionClass::Unknown => "unknown",
            ConstructionClass::NotInEt => "not in ET",
        }
    }
}

/// One re-checkable side condition of a tower step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub index: usize,
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Evidence {
    TowerWitness { steps: Vec<StepCheck> },
    Obstruction { step: Option<usize>, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub class: ConstructionClass,
    pub evidence: Evidence,
}

impl ClassificationReport {
    pub fn is_witness(&self) -> bool {
        matches!(self.evidence, Evidence::TowerWitness { .. })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// Least class whose axiom set covers everything the trace used.
/// Traces built through this crate are valid by construction; imported
/// ones are validated on import.
pub fn classify_trace(trace: &Trace) -> ConstructionClass {
    let profile = trace.axiom_profile();
    match (profile.contains(&Axiom::E), profile.contains(&Axiom::T)) {
        (false, false) => ConstructionClass::Pythagorean,
        (false, true) => ConstructionClass::TotallyRealOrigami,
        (true, false) => ConstructionClass::Euclidean,
        (true, true) => ConstructionClass::EuclideanTrisection,
    }
}

fn degree_is_2a3b(mut d: usize) -> bool {
    while d % 2 == 0 {
        d /= 2;
    }
    while d % 3 == 0 {
        d /= 3;
    }
    d == 1
}

/// Necessary condition for membership anywhere in the hierarchy: the
/// degree of the minimal polynomial factors as 2^a 3^b. The converse
/// would need the splitting field degree, which is not computed here.
pub fn check_degree_condition(x: &Algebraic) -> bool {
    degree_is_2a3b(x.minimal_polynomial().degree().unwrap_or(0))
}

/// Walks a tower and checks, level by level, the side conditions that
/// keep it totally real: square-root steps need totally positive
/// radicands, trisection steps need every conjugate of the cosine
/// inside (-1, 1). Full success certifies every element of the top
/// field as a totally real origami number; otherwise the first failing
/// step is reported as the obstruction.
pub fn certify_totally_real_tower(tower: &Tower) -> ClassificationReport {
    let mut checks = Vec::new();
    for (index, (kind, payload)) in tower.steps().iter().enumerate() {
        match kind {
            StepKind::Sqrt => {
                if !payload.is_totally_positive() {
                    return ClassificationReport {
                        class: ConstructionClass::Unknown,
                        evidence: Evidence::Obstruction {
                            step: Some(index),
                            reason: format!(
                                "radicand of step {} is not totally positive: some conjugate of the square root is not real",
                                index
                            ),
                        },
                    };
                }
                checks.push(StepCheck {
                    index,
                    kind: "sqrt".into(),
                    detail: "radicand is totally positive".into(),
                });
            }
            StepKind::Trisect => {
                let margin = payload
                    .tower()
                    .one()
                    .checked_sub(&payload.square())
                    .map(|m| m.is_totally_positive())
                    .unwrap_or(false);
                if !margin {
                    return ClassificationReport {
                        class: ConstructionClass::Unknown,
                        evidence: Evidence::Obstruction {
                            step: Some(index),
                            reason: format!(
                                "trisected cosine of step {} has a conjugate outside (-1, 1): the step is not totally real",
                                index
                            ),
                        },
                    };
                }
                checks.push(StepCheck {
                    index,
                    kind: "trisect".into(),
                    detail: "every conjugate of the cosine lies in (-1, 1)".into(),
                });
            }
        }
    }
    ClassificationReport {
        class: ConstructionClass::TotallyRealOrigami,
        evidence: Evidence::TowerWitness { steps: checks },
    }
}

/// Certifies a tower as a legal trisection-closed Euclidean tower: each
/// square root has a positive radicand and each trisection a cosine in
/// (-1, 1), both under the principal embedding. Towers built through
/// this crate satisfy this by construction, so the value of the report
/// is its machine-checkable step list.
pub fn certify_et_tower(tower: &Tower) -> ClassificationReport {
    let mut checks = Vec::new();
    for (index, (kind, payload)) in tower.steps().iter().enumerate() {
        match kind {
            StepKind::Sqrt => {
                if payload.sign() <= 0 {
                    return ClassificationReport {
                        class: ConstructionClass::Unknown,
                        evidence: Evidence::Obstruction {
                            step: Some(index),
                            reason: "square-root step over a nonpositive radicand".into(),
                        },
                    };
                }
                checks.push(StepCheck {
                    index,
                    kind: "sqrt".into(),
                    detail: "radicand is positive".into(),
                });
            }
            StepKind::Trisect => {
                let ok = payload
                    .tower()
                    .one()
                    .checked_sub(&payload.square())
                    .map(|m| m.sign() > 0)
                    .unwrap_or(false);
                if !ok {
                    return ClassificationReport {
                        class: ConstructionClass::Unknown,
                        evidence: Evidence::Obstruction {
                            step: Some(index),
                            reason: "trisection step over a cosine outside (-1, 1)".into(),
                        },
                    };
                }
                checks.push(StepCheck {
                    index,
                    kind: "trisect".into(),
                    detail: "cosine lies in (-1, 1) under the principal embedding".into(),
                });
            }
        }
    }
    ClassificationReport {
        class: ConstructionClass::EuclideanTrisection,
        evidence: Evidence::TowerWitness { steps: checks },
    }
}

/// Why an irreducible cubic that is not totally real has no root in the
/// trisection-closed Euclidean field.
#[derive(Clone, Debug)]
pub struct CubicObstruction {
    pub discriminant: Algebraic,
    pub reason: String,
}

/// For an irreducible cubic over a real ground field contained in the
/// trisection-closed Euclidean field: if the discriminant is not
/// totally positive, no root of the cubic, real or complex, lies in
/// that field. A real root would give a real cubic subtower; a pair of
/// complex roots would force the third, real root in; either way the
/// cubic would have to be totally real. Returns the obstruction when it
/// fires, None when the cubic is totally real and the theorem is
/// silent.
pub fn refute_via_theorem51(coeffs: &[Algebraic]) -> Result<Option<CubicObstruction>> {
    if coeffs.len() != 4 {
        return Err(Error::NotCubic);
    }
    let tower = coeffs
        .iter()
        .try_fold(coeffs[0].tower().clone(), |acc, c| join_towers(&acc, c))?;
    let lifted: Vec<Algebraic> = coeffs
        .iter()
        .map(|c| c.clone().demote().lift_to(&tower))
        .collect::<Result<_>>()?;
    let lead = &lifted[3];
    if lead.is_zero() {
        return Err(Error::NotCubic);
    }
    let a = lifted[2].checked_div(lead)?;
    let b = lifted[1].checked_div(lead)?;
    let c = lifted[0].checked_div(lead)?;
    let monic = FPoly::new(
        &tower,
        vec![c.clone(), b.clone(), a.clone(), tower.one()],
    );
    if find_root_in_field(&monic).is_some() {
        return Err(Error::NotIrreducible);
    }
    let (p, q) = reduce_cubic(&a, &b, &c)?;
    let disc = discriminant_cubic(&p, &q)?;
    if disc.is_totally_positive() {
        return Ok(None);
    }
    Ok(Some(CubicObstruction {
        reason: format!(
            "the cubic is irreducible but not totally real (discriminant ~ {:.6} has a nonpositive conjugate); no root, real or complex, lies in the trisection-closed Euclidean field",
            disc.to_f64()
        ),
        discriminant: disc,
    }))
}

/// The conjugate-field phenomenon: the tower for trisecting the angle
/// with cosine sqrt(2 - sqrt(2)) sits inside the trisection-closed
/// Euclidean field and its ground field is even totally real, yet the
/// full tower is not, and the conjugate trisection equation is
/// unsolvable there altogether. Membership in the field is not
/// preserved by conjugation.
pub struct Corollary52Report {
    /// Degree of the full tower Q(sqrt(2), u, alpha): 12.
    pub field_degree: usize,
    /// Real embeddings of the full tower: 8, strictly fewer.
    pub real_embeddings: usize,
    /// Every step is a legal trisection-closed Euclidean step.
    pub et_certificate: ClassificationReport,
    /// The ground tower Q(sqrt(2), u) is totally real.
    pub ground_witness: ClassificationReport,
    /// The full tower fails the totally-real side condition at the
    /// trisection step.
    pub full_tower_report: ClassificationReport,
    /// The conjugate cubic 4x^3 - 3x - u', u' = sqrt(2 + sqrt(2)), has
    /// no root in the trisection-closed Euclidean field at all.
    pub conjugate_obstruction: CubicObstruction,
}

pub fn corollary52_demo() -> Result<Corollary52Report> {
    let q = Tower::rationals();
    let (t1, r2) = q.adjoin_sqrt(&q.from_int(2))?;
    let (t2, u) = t1.adjoin_sqrt(&r2.neg().add_rational(&ratio(2, 1)))?;
    let margin = t2.one().checked_sub(&u.square())?;
    assert!(margin.sign() > 0, "u is smaller than 1");
    assert!(
        !margin.is_totally_positive(),
        "a conjugate of u escapes (-1, 1)"
    );
    let ground_witness = certify_totally_real_tower(&t2);
    assert!(ground_witness.is_witness());

    let (t3, _alpha) = t2.adjoin_trisection_root(&u)?;
    let et_certificate = certify_et_tower(&t3);
    assert!(et_certificate.is_witness());
    let full_tower_report = certify_totally_real_tower(&t3);
    assert!(matches!(
        full_tower_report.evidence,
        Evidence::Obstruction { step: Some(2), .. }
    ));
    let field_degree = t3.degree();
    let real_embeddings = t3.embedding_count();
    assert_eq!(field_degree, 12);
    assert_eq!(real_embeddings, 8);
    assert!(!t3.is_totally_real());

    let (t1c, r2c) = q.adjoin_sqrt(&q.from_int(2))?;
    let (t2c, u_conj) = t1c.adjoin_sqrt(&r2c.add_rational(&ratio(2, 1)))?;
    assert!(
        u_conj.add_rational(&ratio(-1, 1)).sign() > 0,
        "the conjugate cosine exceeds 1"
    );
    let coeffs = vec![
        u_conj.neg(),
        t2c.from_int(-3),
        t2c.zero(),
        t2c.from_int(4),
    ];
    let conjugate_obstruction = refute_via_theorem51(&coeffs)?
        .expect("the conjugate trisection cubic is not totally real");

    Ok(Corollary52Report {
        field_degree,
        real_embeddings,
        et_certificate,
        ground_witness,
        full_tower_report,
        conjugate_obstruction,
    })
}

fn rational_display(x: &BigRational) -> String {
    if x.denom().abs() == num_bigint::BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Classifies the real roots of an irreducible rational polynomial as
/// far as sound certificates reach: rationals and real quadratics are
/// Pythagorean, totally real cubics are origami numbers, cubics with
/// complex roots are excluded outright, degrees outside 2^a 3^b are
/// excluded, and real biquadratics get a bounded tower-witness search.
/// Anything else is Unknown; deciding it would need the splitting
/// field.
pub fn classify_minimal_polynomial(f: &RatPoly) -> Result<ClassificationReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = f.degree().unwrap();
    if degree == 0 {
        return Err(Error::DegenerateInput(
            "a nonzero constant has no roots".into(),
        ));
    }
    let monic = f.monic();
    if monic.squarefree_part() != monic || crate::zfactor::factor_monic_squarefree(&monic).len() > 1
    {
        return Err(Error::NotIrreducible);
    }
    let q = Tower::rationals();

    if degree == 1 {
        let root = monic.coeff(0);
        return Ok(ClassificationReport {
            class: ConstructionClass::Pythagorean,
            evidence: Evidence::TowerWitness {
                steps: vec![StepCheck {
                    index: 0,
                    kind: "rational".into(),
                    detail: format!("the root {} is rational", rational_display(&-root)),
                }],
            },
        });
    }

    if degree == 2 {
        let b = monic.coeff(1);
        let c = monic.coeff(0);
        let disc = b.clone() * b - ratio(4, 1) * c;
        if disc.is_positive() {
            return Ok(ClassificationReport {
                class: ConstructionClass::Pythagorean,
                evidence: Evidence::TowerWitness {
                    steps: vec![StepCheck {
                        index: 0,
                        kind: "sqrt".into(),
                        detail: format!(
                            "discriminant {} is a totally positive radicand",
                            rational_display(&disc)
                        ),
                    }],
                },
            });
        }
        return Ok(ClassificationReport {
            class: ConstructionClass::NotInEt,
            evidence: Evidence::Obstruction {
                step: None,
                reason: "both roots are complex; the field is real".into(),
            },
        });
    }

    if degree == 3 {
        let coeffs: Vec<Algebraic> = monic
            .coeffs()
            .iter()
            .map(|c| q.from_rational(c.clone()))
            .collect();
        if let Some(obstruction) = refute_via_theorem51(&coeffs)? {
            return Ok(ClassificationReport {
                class: ConstructionClass::NotInEt,
                evidence: Evidence::Obstruction {
                    step: None,
                    reason: obstruction.reason,
                },
            });
        }
        let a = q.from_rational(monic.coeff(2));
        let b = q.from_rational(monic.coeff(1));
        let c = q.from_rational(monic.coeff(0));
        let (p, qq) = reduce_cubic(&a, &b, &c)?;
        let solution = solve_totally_real_cubic(&p, &qq)?;
        let witness = certify_totally_real_tower(&solution.tower);
        assert!(witness.is_witness(), "a totally real cubic certifies");
        return Ok(witness);
    }

    if !degree_is_2a3b(degree) {
        return Ok(ClassificationReport {
            class: ConstructionClass::NotInEt,
            evidence: Evidence::Obstruction {
                step: None,
                reason: format!(
                    "degree {} has a prime factor other than 2 and 3; every tower field degree is 2^a 3^b",
                    degree
                ),
            },
        });
    }

    if monic.real_root_count()? == 0 {
        return Ok(ClassificationReport {
            class: ConstructionClass::NotInEt,
            evidence: Evidence::Obstruction {
                step: None,
                reason: "no real roots; the field is real".into(),
            },
        });
    }

    if degree == 4 && monic.coeff(1).is_zero() && monic.coeff(3).is_zero() {
        return Ok(classify_biquadratic(&monic));
    }

    Ok(ClassificationReport {
        class: ConstructionClass::Unknown,
        evidence: Evidence::Obstruction {
            step: None,
            reason: "no certificate within the bounded tower search; deciding membership would require the splitting field".into(),
        },
    })
}

/// Bounded witness search for irreducible x^4 + px^2 + q with a real
/// root: adjoin d = sqrt(p^2 - 4q), then the square root of whichever
/// of (-p +/- d)/2 is positive. Two or three square-root steps; totally
/// positive radicands all the way down certify a Pythagorean number,
/// otherwise the witness is Euclidean (and the number provably not
/// totally real, since its conjugates include complex ones).
fn classify_biquadratic(monic: &RatPoly) -> ClassificationReport {
    let q = Tower::rationals();
    let p = monic.coeff(2);
    let c = monic.coeff(0);
    let inner_disc = p.clone() * p.clone() - ratio(4, 1) * c;
    let build = || -> Result<(Tower, Vec<(String, bool)>)> {
        let (t1, d) = q.adjoin_sqrt(&q.from_rational(inner_disc.clone()))?;
        let mut radicands = vec![(
            format!("p^2 - 4q = {}", rational_display(&inner_disc)),
            q.from_rational(inner_disc.clone()).is_totally_positive(),
        )];
        let half_p = d.tower().from_rational(-p.clone() / ratio(2, 1));
        let y_plus = half_p.checked_add(&d.scale(&ratio(1, 2)))?;
        let y_minus = half_p.checked_sub(&d.scale(&ratio(1, 2)))?;
        let y = if y_plus.sign() > 0 { y_plus } else { y_minus };
        if y.sign() <= 0 {
            return Err(Error::NoRealFold);
        }
        radicands.push((
            "(-p + sqrt(p^2 - 4q))/2, the positive quadratic root".into(),
            y.is_totally_positive(),
        ));
        let (t2, root) = t1.adjoin_sqrt(&y)?;
        let zero = FPoly::from_ratpoly(&t2, monic).eval(&root);
        assert!(zero.is_zero(), "the tower root must satisfy the quartic");
        Ok((t2, radicands))
    };
    match build() {
        Ok((_, radicands)) => {
            let all_totally_positive = radicands.iter().all(|(_, ok)| *ok);
            let steps = radicands
                .into_iter()
                .enumerate()
                .map(|(index, (detail, ok))| StepCheck {
                    index,
                    kind: "sqrt".into(),
                    detail: if ok {
                        format!("{} (totally positive)", detail)
                    } else {
                        format!("{} (positive, not totally positive)", detail)
                    },
                })
                .collect();
            ClassificationReport {
                class: if all_totally_positive {
                    ConstructionClass::Pythagorean
                } else {
                    ConstructionClass::Euclidean
                },
                evidence: Evidence::TowerWitness { steps },
            }
        }
        Err(_) => ClassificationReport {
            class: ConstructionClass::Unknown,
            evidence: Evidence::Obstruction {
                step: None,
                reason: "the biquadratic witness search did not complete".into(),
            },
        },
    }
}
