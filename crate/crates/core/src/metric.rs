//! Symmetric metrics on vertex planes and height changes across edges.
//!
//! At a vertex with parallel-class directions `d1, d2, d3` we choose the flat
//! metric in which the three line families meet pairwise at 60 degrees. It is
//! stored as the rational Gram matrix `M = AᵀA` rather than `A` itself: the
//! entries of `A` involve `sqrt(3)`, those of `M` never do, and every quantity
//! downstream is a squared length.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{LogRat, Rational};
use crate::model::{IntVec2, ValidatedGraph, VertexClasses};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("direction {0} is not primitive")]
    InvalidDirection(IntVec2),
    #[error("directions {0}, {1} and {2} are not pairwise non-parallel")]
    DegenerateDirections(IntVec2, IntVec2, IntVec2),
    #[error("the zero vector has no length")]
    InvalidElement,
}

/// Integer 2×2 matrix with determinant ±1, acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unimodular {
    pub rows: [[i64; 2]; 2],
}

impl Unimodular {
    pub const IDENTITY: Unimodular = Unimodular {
        rows: [[1, 0], [0, 1]],
    };

    pub fn det(&self) -> i128 {
        let [[a, b], [c, d]] = self.rows;
        a as i128 * d as i128 - b as i128 * c as i128
    }

    pub fn apply(&self, v: IntVec2) -> (i128, i128) {
        let [[a, b], [c, d]] = self.rows;
        (
            a as i128 * v.x as i128 + b as i128 * v.y as i128,
            c as i128 * v.x as i128 + d as i128 * v.y as i128,
        )
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &Unimodular) -> Unimodular {
        let m = |i: usize, j: usize| self.rows[i][0] * rhs.rows[0][j] + self.rows[i][1] * rhs.rows[1][j];
        Unimodular {
            rows: [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]],
        }
    }
}

/// Returns `x, y` with `a·x + b·y = gcd(a, b) >= 0`.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// A change of basis `U` with `U·d = (1, 0)`, so that `d` becomes the first
/// axis. Built from the Bezout coefficients of `d`.
pub fn unimodular_to_first_axis(d: IntVec2) -> Result<Unimodular, MetricError> {
    let (g, x, y) = extended_gcd(d.x, d.y);
    if g != 1 {
        return Err(MetricError::InvalidDirection(d));
    }
    Ok(Unimodular {
        rows: [[x, y], [-d.y, d.x]],
    })
}

/// Positive-definite rational quadratic form; `|w|² = m11·x² + 2·m12·x·y + m22·y²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMetric {
    pub m11: Rational,
    pub m12: Rational,
    pub m22: Rational,
}

fn rat(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl VertexMetric {
    /// The symmetric metric for three pairwise non-parallel primitive
    /// directions, normalized so that `d1` has squared length 1.
    pub fn symmetric_form(d1: IntVec2, d2: IntVec2, d3: IntVec2) -> Result<Self, MetricError> {
        let u = unimodular_to_first_axis(d1)?;
        Self::symmetric_form_in_basis(&u, d1, d2, d3)
    }

    /// As [`Self::symmetric_form`], with an explicit change of basis `u`
    /// sending `d1` to `(1, 0)`.
    pub fn symmetric_form_in_basis(
        u: &Unimodular,
        d1: IntVec2,
        d2: IntVec2,
        d3: IntVec2,
    ) -> Result<Self, MetricError> {
        for d in [d2, d3] {
            if !d.is_primitive() {
                return Err(MetricError::InvalidDirection(d));
            }
        }
        if u.apply(d1) != (1, 0) || u.det().abs() != 1 {
            return Err(MetricError::InvalidDirection(d1));
        }
        let (r, s) = u.apply(d2);
        let (t, w) = u.apply(d3);
        if s == 0 || w == 0 || r * w - s * t == 0 {
            return Err(MetricError::DegenerateDirections(d1, d2, d3));
        }
        // In the new basis A = [[1, a12], [0, a22]] with
        //   a12 = -(1/2)(r·w + s·t)/(s·w),  a22² = (3/4)((r·w - s·t)/(s·w))².
        let sw = rat(s * w);
        let a12 = -rat(r * w + s * t) / (rat(2) * &sw);
        let ratio = rat(r * w - s * t) / &sw;
        let a22_sq = Rational::new(BigInt::from(3), BigInt::from(4)) * &ratio * &ratio;
        let n = [
            [Rational::one(), a12.clone()],
            [a12.clone(), &a12 * &a12 + a22_sq],
        ];
        // M = Uᵀ N U
        let uu = u.rows.map(|row| row.map(|x| rat(x as i128)));
        let entry = |i: usize, j: usize| -> Rational {
            let mut acc = Rational::zero();
            for k in 0..2 {
                for l in 0..2 {
                    acc += &uu[k][i] * &n[k][l] * &uu[l][j];
                }
            }
            acc
        };
        Ok(VertexMetric {
            m11: entry(0, 0),
            m12: entry(0, 1),
            m22: entry(1, 1),
        })
    }

    /// The metric for a validated vertex: directions in ascending order, the
    /// smallest normalized to length 1.
    pub fn for_vertex(vc: &VertexClasses) -> Self {
        let d = vc.directions();
        Self::symmetric_form(d[0], d[1], d[2]).expect("validated vertex has three distinct classes")
    }

    /// `vᵀ M w`.
    pub fn inner(&self, v: IntVec2, w: IntVec2) -> Rational {
        let (vx, vy, wx, wy) = (rat(v.x as i128), rat(v.y as i128), rat(w.x as i128), rat(w.y as i128));
        &self.m11 * &vx * &wx + &self.m12 * (&vx * &wy + &vy * &wx) + &self.m22 * &vy * &wy
    }

    pub fn squared_length(&self, w: IntVec2) -> Result<Rational, MetricError> {
        if w.is_zero() {
            return Err(MetricError::InvalidElement);
        }
        Ok(self.inner(w, w))
    }

    pub fn scaled(&self, factor: &Rational) -> VertexMetric {
        assert!(factor.is_positive(), "metric scale factor must be positive");
        VertexMetric {
            m11: &self.m11 * factor,
            m12: &self.m12 * factor,
            m22: &self.m22 * factor,
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.m11.is_positive() && (&self.m11 * &self.m22 - &self.m12 * &self.m12).is_positive()
    }

    /// `4·(dᵢᵀ M dⱼ)² = (dᵢᵀ M dᵢ)(dⱼᵀ M dⱼ)` for every pair, i.e. every pair of
    /// directions meets at 60 degrees.
    pub fn is_symmetric_for(&self, dirs: &[IntVec2]) -> bool {
        dirs.iter().enumerate().all(|(i, &a)| {
            dirs[i + 1..].iter().all(|&b| {
                let ab = self.inner(a, b);
                rat(4) * &ab * &ab == self.inner(a, a) * self.inner(b, b)
            })
        })
    }

    /// `Vᵀ M V`: the same metric expressed after the basis change `w ↦ V⁻¹ w`,
    /// i.e. `|V w|²` in the old coordinates.
    pub fn pulled_back(&self, v: &Unimodular) -> VertexMetric {
        let c0 = IntVec2::new(v.rows[0][0], v.rows[1][0]);
        let c1 = IntVec2::new(v.rows[0][1], v.rows[1][1]);
        VertexMetric {
            m11: self.inner(c0, c0),
            m12: self.inner(c0, c1),
            m22: self.inner(c1, c1),
        }
    }
}

/// Height change across one edge, tail to head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeHeight {
    pub edge: usize,
    pub h: LogRat,
}

/// The canonical metric at every vertex.
pub fn vertex_metrics(vg: &ValidatedGraph) -> Vec<VertexMetric> {
    vg.all_vertex_classes()
        .iter()
        .map(VertexMetric::for_vertex)
        .collect()
}

/// `h = -log2(stretch)`, stretch = `|head_vec| / |tail_vec|`, so
/// `q = |tail_vec|² / |head_vec|²`.
pub fn edge_height(vg: &ValidatedGraph, metrics: &[VertexMetric], edge: usize) -> EdgeHeight {
    let e = &vg.graph().edges()[edge];
    let tail = metrics[e.tail]
        .squared_length(e.tail_vec)
        .expect("validated edges carry nonzero vectors");
    let head = metrics[e.head]
        .squared_length(e.head_vec)
        .expect("validated edges carry nonzero vectors");
    EdgeHeight {
        edge,
        h: LogRat::new(tail / head).expect("positive-definite metrics give positive lengths"),
    }
}

pub fn edge_heights(vg: &ValidatedGraph, metrics: &[VertexMetric]) -> Vec<EdgeHeight> {
    (0..vg.graph().edges().len())
        .map(|e| edge_height(vg, metrics, e))
        .collect()
}
