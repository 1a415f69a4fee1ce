//! Real embeddings of a tower, represented as chains of isolating intervals.
//!
//! Each level of a tower adds one generator, a root of a quadratic or cubic
//! step polynomial whose coefficients live one level down. An embedding of
//! the whole tower picks, per level, one real root of that level's step
//! polynomial under the embedding of everything below. We store the choice
//! as a rational isolating interval for the chosen root together with the
//! signs of the step polynomial at the two endpoints, which is exactly the
//! data bisection needs to shrink the interval later.
//!
//! The endpoint signs are never zero: a step polynomial is irreducible of
//! degree at least two over its coefficient field, so it has no rational
//! roots, and endpoints are always rational.

use std::sync::{Arc, Mutex};

use crate::interval::RatInterval;

#[derive(Clone, Debug)]
pub(crate) struct TopInterval {
    pub iv: RatInterval,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

#[derive(Debug)]
pub(crate) struct Embedding {
    pub parent: Option<Arc<Embedding>>,
    /// Which root of the step polynomial this embedding picked, counting
    /// from the largest (0 is the principal choice). Diagnostic only.
    #[allow(dead_code)]
    pub root_index: usize,
    /// Tower height of the level this embedding belongs to (0 = rationals).
    pub height: usize,
    top: Mutex<TopInterval>,
}

impl Embedding {
    /// The unique embedding of the rationals.
    pub fn base() -> Arc<Embedding> {
        Arc::new(Embedding {
            parent: None,
            root_index: 0,
            height: 0,
            top: Mutex::new(TopInterval {
                iv: RatInterval::point(num_traits::Zero::zero()),
                sign_lo: 0,
                sign_hi: 0,
            }),
        })
    }

    pub fn new_level(
        parent: Arc<Embedding>,
        root_index: usize,
        iv: RatInterval,
        sign_lo: i8,
        sign_hi: i8,
    ) -> Arc<Embedding> {
        debug_assert!(sign_lo != 0 && sign_hi != 0 && sign_lo != sign_hi);
        let height = parent.height + 1;
        Arc::new(Embedding {
            parent: Some(parent),
            root_index,
            height,
            top: Mutex::new(TopInterval { iv, sign_lo, sign_hi }),
        })
    }

    pub fn top(&self) -> TopInterval {
        self.top.lock().unwrap().clone()
    }

    pub fn set_top(&self, t: TopInterval) {
        *self.top.lock().unwrap() = t;
    }
}
