//! Canonical piecewise-linear homeomorphisms of rational intervals.
//!
//! A [`PLMap`] is the breakpoint graph of an orientation-preserving PL
//! homeomorphism from one rational interval onto another: both coordinate
//! sequences strictly increase, and no interior breakpoint is collinear with
//! its neighbours, so equal functions have equal representations and `==` is
//! exact function equality. Group elements are the self-maps (domain equal
//! to codomain); operations that only make sense for those — extension by
//! the identity, restriction, support — say so and reject anything else.
//! Allowing distinct codomains is what lets the same type carry interval
//! rescaling maps, whose graphs behave identically.

use crate::error::Error;
use crate::exactnum::Rational;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// An orientation-preserving PL homeomorphism [lo, hi] → [f(lo), f(hi)],
/// stored as its canonical breakpoint list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLMap {
    points: Vec<(Rational, Rational)>,
}

impl PLMap {
    /// Canonicalize a raw breakpoint list: both coordinates must strictly
    /// increase (with at least two points); interior points collinear with
    /// their neighbours are dropped.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self, Error> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                count: points.len(),
            });
        }
        for (i, pair) in points.windows(2).enumerate() {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::NonMonotone {
                    coord: 'x',
                    index: i + 1,
                });
            }
            if pair[1].1 <= pair[0].1 {
                return Err(Error::NonMonotone {
                    coord: 'y',
                    index: i + 1,
                });
            }
        }
        let mut canon: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            while canon.len() >= 2 && collinear(&canon[canon.len() - 2], &canon[canon.len() - 1], &p)
            {
                canon.pop();
            }
            canon.push(p);
        }
        Ok(PLMap { points: canon })
    }

    /// The identity on [lo, hi].
    pub fn identity(lo: Rational, hi: Rational) -> Result<Self, Error> {
        Self::new(vec![(lo.clone(), lo), (hi.clone(), hi)])
    }

    /// Canonical breakpoints, in increasing order.
    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn lo(&self) -> &Rational {
        &self.points[0].0
    }

    pub fn hi(&self) -> &Rational {
        &self.points[self.points.len() - 1].0
    }

    /// Domain interval (lo, hi).
    pub fn domain(&self) -> (&Rational, &Rational) {
        (self.lo(), self.hi())
    }

    /// Codomain interval (f(lo), f(hi)).
    pub fn codomain(&self) -> (&Rational, &Rational) {
        (
            &self.points[0].1,
            &self.points[self.points.len() - 1].1,
        )
    }

    /// Does the map send its interval onto itself? (Equivalently: are both
    /// endpoints fixed?) Only such maps are group elements.
    pub fn is_self_map(&self) -> bool {
        self.points[0].0 == self.points[0].1
            && self.points[self.points.len() - 1].0 == self.points[self.points.len() - 1].1
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2 && self.is_self_map()
    }

    /// Slopes of the linear pieces, left to right (always positive).
    pub fn slopes(&self) -> Vec<Rational> {
        self.points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    /// Slope on the first piece (the right-derivative at lo).
    pub fn initial_slope(&self) -> Rational {
        let (a, b) = (&self.points[0], &self.points[1]);
        (&b.1 - &a.1) / (&b.0 - &a.0)
    }

    /// Slope on the last piece (the left-derivative at hi).
    pub fn final_slope(&self) -> Rational {
        let n = self.points.len();
        let (a, b) = (&self.points[n - 2], &self.points[n - 1]);
        (&b.1 - &a.1) / (&b.0 - &a.0)
    }

    /// f(x). Errors outside the domain.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational, Error> {
        if x < self.lo() || x > self.hi() {
            return Err(Error::OutOfDomain {
                x: x.to_string(),
                lo: self.lo().to_string(),
                hi: self.hi().to_string(),
            });
        }
        Ok(self.eval_in(x))
    }

    /// Evaluation for arguments already known to be in the domain.
    fn eval_in(&self, x: &Rational) -> Rational {
        debug_assert!(x >= self.lo() && x <= self.hi());
        // Index of the first point with x-coordinate ≥ x.
        let idx = self.points.partition_point(|(px, _)| px < x);
        if self.points[idx].0 == *x {
            return self.points[idx].1.clone();
        }
        let (x0, y0) = &self.points[idx - 1];
        let (x1, y1) = &self.points[idx];
        y0 + (x - x0) * (y1 - y0) / (x1 - x0)
    }

    /// The composite x ↦ f(g(x)) where f = self. Requires g's codomain to be
    /// f's domain; for two group elements that is the usual "same interval"
    /// requirement.
    pub fn compose(&self, g: &PLMap) -> Result<PLMap, Error> {
        if g.codomain() != self.domain() {
            return Err(Error::IntervalMismatch {
                expected_lo: self.lo().to_string(),
                expected_hi: self.hi().to_string(),
                found_lo: g.codomain().0.to_string(),
                found_hi: g.codomain().1.to_string(),
            });
        }
        // Breakpoints of f∘g: g's breakpoints plus g-preimages of f's.
        let g_inv = g.invert();
        let mut xs: Vec<Rational> = g.points.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(self.points.iter().map(|(x, _)| g_inv.eval_in(x)));
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.eval_in(&g.eval_in(&x));
                (x, y)
            })
            .collect();
        PLMap::new(pts)
    }

    /// The inverse homeomorphism: every breakpoint with coordinates swapped.
    pub fn invert(&self) -> PLMap {
        let pts = self
            .points
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        PLMap::new(pts).expect("inverse of a canonical map is canonical")
    }

    /// Extend a self-map to the larger interval [lo, hi] by the identity.
    pub fn extend(&self, lo: Rational, hi: Rational) -> Result<PLMap, Error> {
        self.require_self_map("extend")?;
        if lo > *self.lo() || hi < *self.hi() {
            return Err(Error::BadExtension {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        let mut pts = Vec::with_capacity(self.points.len() + 2);
        if lo < *self.lo() {
            pts.push((lo.clone(), lo));
        }
        pts.extend(self.points.iter().cloned());
        if hi > *self.hi() {
            pts.push((hi.clone(), hi));
        }
        PLMap::new(pts)
    }

    /// Restrict a self-map to [lo, hi]. Exact only when the map is the
    /// identity outside, so the support must be contained in the open
    /// interval (lo, hi); anything else is rejected.
    pub fn restrict(&self, lo: Rational, hi: Rational) -> Result<PLMap, Error> {
        self.require_self_map("restrict")?;
        let bad = |reason: String| Error::BadRestriction {
            lo: lo.to_string(),
            hi: hi.to_string(),
            reason,
        };
        if lo >= hi {
            return Err(bad("empty interval".into()));
        }
        if lo < *self.lo() || hi > *self.hi() {
            return Err(bad("not contained in the domain".into()));
        }
        let supp = self.support()?;
        if !supp.contained_in(&lo, &hi) {
            return Err(bad(format!("support {supp} escapes the open interval")));
        }
        let mut pts = vec![(lo.clone(), lo.clone())];
        pts.extend(
            self.points
                .iter()
                .filter(|(x, _)| *x > lo && *x < hi)
                .cloned(),
        );
        pts.push((hi.clone(), hi.clone()));
        PLMap::new(pts)
    }

    /// The open support {x : f(x) ≠ x}, as a disjoint union of open
    /// intervals. Defined for self-maps.
    pub fn support(&self) -> Result<IntervalSet, Error> {
        self.require_self_map("support")?;
        // Collect the closed fixed-point set piece by piece: a linear piece
        // either lies on the diagonal, or meets it in at most one point.
        let one = Rational::one();
        let mut fixed: Vec<(Rational, Rational)> = Vec::new();
        for w in self.points.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            if x0 == y0 && x1 == y1 {
                fixed.push((x0.clone(), x1.clone()));
                continue;
            }
            if x0 == y0 {
                fixed.push((x0.clone(), x0.clone()));
            }
            if x1 == y1 {
                fixed.push((x1.clone(), x1.clone()));
            }
            let slope = (y1 - y0) / (x1 - x0);
            if slope != one {
                // y0 + s·(x−x0) = x  ⟺  x = (y0 − s·x0)/(1 − s)
                let cross = (y0 - &slope * x0) / (&one - &slope);
                if cross > *x0 && cross < *x1 {
                    fixed.push((cross.clone(), cross));
                }
            }
        }
        fixed.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for iv in fixed {
            match merged.last_mut() {
                Some(last) if iv.0 <= last.1 => {
                    if iv.1 > last.1 {
                        last.1 = iv.1;
                    }
                }
                _ => merged.push(iv),
            }
        }
        // Complement of the fixed set within [lo, hi].
        let mut support = Vec::new();
        let mut cursor = self.lo().clone();
        for (a, b) in merged {
            if a > cursor {
                support.push((cursor.clone(), a));
            }
            if b > cursor {
                cursor = b;
            }
        }
        if cursor < *self.hi() {
            support.push((cursor, self.hi().clone()));
        }
        Ok(IntervalSet { intervals: support })
    }

    fn require_self_map(&self, op: &'static str) -> Result<(), Error> {
        if self.is_self_map() {
            Ok(())
        } else {
            Err(Error::NotSelfMap {
                op,
                lo: self.lo().to_string(),
                hi: self.hi().to_string(),
                colo: self.codomain().0.to_string(),
                cohi: self.codomain().1.to_string(),
            })
        }
    }
}

/// The conjugate h∘g∘h⁻¹, defined whenever g is a self-map of h's domain;
/// the result is a self-map of h's codomain.
pub fn conjugate(h: &PLMap, g: &PLMap) -> Result<PLMap, Error> {
    h.compose(&g.compose(&h.invert())?)
}

fn collinear(
    a: &(Rational, Rational),
    b: &(Rational, Rational),
    c: &(Rational, Rational),
) -> bool {
    // Slopes ab and bc agree, cross-multiplied to stay in ring arithmetic.
    (&b.1 - &a.1) * (&c.0 - &b.0) == (&c.1 - &b.1) * (&b.0 - &a.0)
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "]")
    }
}

/// A finite union of disjoint nonempty open intervals with rational
/// endpoints, sorted left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    intervals: Vec<(Rational, Rational)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { intervals: vec![] }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Is the whole set contained in the open interval (lo, hi)?
    pub fn contained_in(&self, lo: &Rational, hi: &Rational) -> bool {
        self.intervals
            .iter()
            .all(|(s, e)| s >= lo && e <= hi)
    }

    /// Does the set meet the open interval (lo, hi)?
    pub fn meets(&self, lo: &Rational, hi: &Rational) -> bool {
        self.intervals
            .iter()
            .any(|(s, e)| s < hi && e > lo)
    }

    /// Image under a homeomorphism (monotone, so endpoints map to
    /// endpoints). Every interval must lie in h's domain.
    pub fn image(&self, h: &PLMap) -> Result<IntervalSet, Error> {
        let intervals = self
            .intervals
            .iter()
            .map(|(s, e)| Ok((h.evaluate(s)?, h.evaluate(e)?)))
            .collect::<Result<_, Error>>()?;
        Ok(IntervalSet { intervals })
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, (s, e)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "({s}, {e})")?;
        }
        Ok(())
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<[String; 2]> = self
            .intervals
            .iter()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect();
        raw.serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
struct PLMapJson {
    interval: [String; 2],
    points: Vec<[String; 2]>,
}

impl Serialize for PLMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PLMapJson {
            interval: [self.lo().to_string(), self.hi().to_string()],
            points: self
                .points
                .iter()
                .map(|(x, y)| [x.to_string(), y.to_string()])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PLMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PLMapJson::deserialize(d)?;
        let parse = |s: &str| crate::exactnum::parse_rational(s).map_err(D::Error::custom);
        let points = raw
            .points
            .iter()
            .map(|[x, y]| Ok((parse(x)?, parse(y)?)))
            .collect::<Result<Vec<_>, D::Error>>()?;
        let map = PLMap::new(points).map_err(D::Error::custom)?;
        let lo = parse(&raw.interval[0])?;
        let hi = parse(&raw.interval[1])?;
        if *map.lo() != lo || *map.hi() != hi {
            return Err(D::Error::custom(format!(
                "declared interval [{lo}, {hi}] does not match breakpoints [{}, {}]",
                map.lo(),
                map.hi()
            )));
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use proptest::prelude::*;

    fn pl(raw: &[(i64, i64, i64, i64)]) -> PLMap {
        // (xn, xd, yn, yd) quadruples
        PLMap::new(
            raw.iter()
                .map(|&(xn, xd, yn, yd)| (rat(xn, xd), rat(yn, yd)))
                .collect(),
        )
        .unwrap()
    }

    /// The standing example map: slopes 2, 2/3, 1 with support (0, 3/4).
    fn slope2_bump() -> PLMap {
        pl(&[(0, 1, 0, 1), (3, 16, 3, 8), (3, 4, 3, 4), (1, 1, 1, 1)])
    }

    fn unit_identity() -> PLMap {
        PLMap::identity(rat_int(0), rat_int(1)).unwrap()
    }

    #[test]
    fn canonicalize_drops_collinear_points() {
        let m = pl(&[(0, 1, 0, 1), (1, 2, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(m, unit_identity());
        assert!(m.is_identity());

        let m = pl(&[(0, 1, 0, 1), (1, 4, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(m.points().len(), 3);
    }

    #[test]
    fn canonicalize_rejects_bad_input() {
        let dup_x = PLMap::new(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 4), rat(1, 4)),
            (rat(1, 4), rat(1, 2)),
            (rat_int(1), rat_int(1)),
        ]);
        assert!(matches!(
            dup_x,
            Err(Error::NonMonotone { coord: 'x', index: 2 })
        ));

        let falling_y = PLMap::new(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 2), rat(3, 4)),
            (rat_int(1), rat(1, 2)),
        ]);
        assert!(matches!(falling_y, Err(Error::NonMonotone { coord: 'y', .. })));

        assert!(matches!(
            PLMap::new(vec![(rat_int(0), rat_int(0))]),
            Err(Error::TooFewPoints { count: 1 })
        ));
    }

    #[test]
    fn evaluate_interpolates_exactly() {
        let m = pl(&[(0, 1, 0, 1), (1, 4, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(m.evaluate(&rat(1, 8)).unwrap(), rat(1, 4));
        assert_eq!(m.evaluate(&rat(1, 4)).unwrap(), rat(1, 2));
        assert_eq!(m.evaluate(&rat(3, 4)).unwrap(), rat(5, 6));
        assert_eq!(m.evaluate(&rat_int(1)).unwrap(), rat_int(1));
        assert!(m.evaluate(&rat_int(2)).is_err());
        assert!(m.evaluate(&rat(-1, 2)).is_err());
    }

    #[test]
    fn compose_multiplies_slopes_at_the_ends() {
        let f = slope2_bump();
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff.initial_slope(), rat_int(4));
        assert_eq!(ff.final_slope(), rat_int(1));
        // Pointwise agreement on a grid.
        for i in 0..=24 {
            let x = rat(i, 24);
            assert_eq!(
                ff.evaluate(&x).unwrap(),
                f.evaluate(&f.evaluate(&x).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn compose_requires_chained_intervals() {
        let f = slope2_bump();
        let g = PLMap::identity(rat_int(0), rat_int(2)).unwrap();
        assert!(matches!(
            f.compose(&g),
            Err(Error::IntervalMismatch { .. })
        ));
    }

    #[test]
    fn invert_swaps_coordinates() {
        let m = pl(&[(0, 1, 0, 1), (1, 4, 1, 2), (1, 1, 1, 1)]);
        let inv = m.invert();
        assert_eq!(
            inv,
            pl(&[(0, 1, 0, 1), (1, 2, 1, 4), (1, 1, 1, 1)])
        );
        assert_eq!(inv.invert(), m);
        assert_eq!(m.compose(&inv).unwrap(), unit_identity());
        assert_eq!(inv.compose(&m).unwrap(), unit_identity());
    }

    #[test]
    fn extend_is_identity_outside() {
        let f = slope2_bump();
        let ext = f.extend(rat_int(-1), rat_int(1)).unwrap();
        assert_eq!(*ext.lo(), rat_int(-1));
        assert_eq!(ext.evaluate(&rat(-1, 2)).unwrap(), rat(-1, 2));
        assert_eq!(
            ext.evaluate(&rat(3, 16)).unwrap(),
            f.evaluate(&rat(3, 16)).unwrap()
        );
        assert_eq!(ext.support().unwrap(), f.support().unwrap());
        // Extending by nothing is the identity operation.
        assert_eq!(f.extend(rat_int(0), rat_int(1)).unwrap(), f);
        // Shrinking is not extending.
        assert!(f.extend(rat(1, 2), rat_int(1)).is_err());
    }

    #[test]
    fn extend_then_restrict_roundtrips() {
        let f = slope2_bump();
        let ext = f.extend(rat_int(-2), rat_int(3)).unwrap();
        let back = ext.restrict(rat_int(0), rat_int(1)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn restrict_requires_support_containment() {
        let f = slope2_bump();
        let err = f.restrict(rat_int(0), rat(1, 2));
        assert!(matches!(err, Err(Error::BadRestriction { .. })));
    }

    #[test]
    fn support_of_identity_is_empty() {
        assert!(unit_identity().support().unwrap().is_empty());
    }

    #[test]
    fn support_single_interval() {
        let f = slope2_bump();
        let supp = f.support().unwrap();
        assert_eq!(supp.intervals(), &[(rat_int(0), rat(3, 4))]);
    }

    #[test]
    fn support_two_intervals() {
        // Slope-2 bump on (0, 1/4), identity on [1/4, 1/2], bump on (1/2, 1).
        let f = pl(&[
            (0, 1, 0, 1),
            (1, 16, 1, 8),
            (1, 4, 1, 4),
            (1, 2, 1, 2),
            (5, 8, 3, 4),
            (1, 1, 1, 1),
        ]);
        let supp = f.support().unwrap();
        assert_eq!(
            supp.intervals(),
            &[
                (rat_int(0), rat(1, 4)),
                (rat(1, 2), rat_int(1)),
            ]
        );
        assert!(supp.contained_in(&rat_int(0), &rat_int(1)));
        assert!(!supp.contained_in(&rat_int(0), &rat(3, 4)));
        assert!(supp.meets(&rat(1, 4), &rat(3, 4)));
        assert!(!supp.meets(&rat(1, 4), &rat(1, 2)));
    }

    #[test]
    fn support_sees_interior_crossing() {
        // A map strictly below the diagonal between its fixed endpoints:
        // support is the whole open interval.
        let f = pl(&[(0, 1, 0, 1), (1, 2, 1, 4), (1, 1, 1, 1)]);
        let supp = f.support().unwrap();
        assert_eq!(supp.intervals(), &[(rat_int(0), rat_int(1))]);

        // A map crossing the diagonal strictly inside a piece: the second
        // piece runs from (1/4, 1/2) to (3/4, 5/8) with slope 1/4 and meets
        // y = x at x = (1/2 − 1/4·1/4)/(1 − 1/4) = 7/12 ∈ (1/4, 3/4).
        // That crossing is a genuine fixed point splitting the support.
        let g = pl(&[(0, 1, 0, 1), (1, 4, 1, 2), (3, 4, 5, 8), (1, 1, 1, 1)]);
        let supp = g.support().unwrap();
        assert_eq!(
            supp.intervals(),
            &[
                (rat_int(0), rat(7, 12)),
                (rat(7, 12), rat_int(1)),
            ]
        );
    }

    #[test]
    fn support_rejects_non_self_maps() {
        let stretch = PLMap::new(vec![(rat_int(0), rat_int(0)), (rat_int(1), rat_int(2))]).unwrap();
        assert!(matches!(
            stretch.support(),
            Err(Error::NotSelfMap { op: "support", .. })
        ));
    }

    #[test]
    fn conjugation_moves_support() {
        // h: [-1, 1] → [-1, 1] compresses [-1, 0] into [-1, 1/2].
        let h = pl(&[(-1, 1, -1, 1), (0, 1, 1, 2), (1, 1, 1, 1)]);
        let g = slope2_bump().extend(rat_int(-1), rat_int(1)).unwrap();
        let conj = conjugate(&h, &g).unwrap();
        let expected = g.support().unwrap().image(&h).unwrap();
        assert_eq!(conj.support().unwrap(), expected);
    }

    #[test]
    fn serde_roundtrip_and_validation() {
        let f = slope2_bump();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"interval":["0","1"],"points":[["0","0"],["3/16","3/8"],["3/4","3/4"],["1","1"]]}"#
        );
        let back: PLMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);

        // Redundant collinear points are canonicalized away on input.
        let redundant =
            r#"{"interval":["0","1"],"points":[["0","0"],["1/2","1/2"],["1","1"]]}"#;
        let m: PLMap = serde_json::from_str(redundant).unwrap();
        assert!(m.is_identity());

        // Interval disagreeing with the breakpoints is rejected.
        let lying = r#"{"interval":["0","2"],"points":[["0","0"],["1","1"]]}"#;
        assert!(serde_json::from_str::<PLMap>(lying).is_err());

        // Non-monotone y is rejected.
        let bad = r#"{"interval":["0","1"],"points":[["0","0"],["1/2","3/4"],["1","1/2"]]}"#;
        assert!(serde_json::from_str::<PLMap>(bad).is_err());
    }

    // Random self-maps of [0, 1] with breakpoints on a 1/24 grid: exact,
    // easily composable, and rich enough to exercise every code path.
    fn arb_selfmap() -> impl Strategy<Value = PLMap> {
        use proptest::collection::btree_set;
        (btree_set(1i64..24, 0..4), btree_set(1i64..24, 0..4)).prop_map(|(xs, ys)| {
            let n = xs.len().min(ys.len());
            let mut pts = vec![(rat_int(0), rat_int(0))];
            pts.extend(
                xs.into_iter()
                    .take(n)
                    .zip(ys.into_iter().take(n))
                    .map(|(x, y)| (rat(x, 24), rat(y, 24))),
            );
            pts.push((rat_int(1), rat_int(1)));
            PLMap::new(pts).expect("grid points are strictly monotone")
        })
    }

    proptest! {
        #[test]
        fn composition_is_associative(
            f in arb_selfmap(),
            g in arb_selfmap(),
            h in arb_selfmap(),
        ) {
            let left = f.compose(&g).unwrap().compose(&h).unwrap();
            let right = f.compose(&g.compose(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_and_identity_laws(f in arb_selfmap()) {
            let id = unit_identity();
            prop_assert_eq!(f.compose(&f.invert()).unwrap(), id.clone());
            prop_assert_eq!(f.invert().compose(&f).unwrap(), id.clone());
            prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
            prop_assert_eq!(id.compose(&f).unwrap(), f.clone());
            prop_assert_eq!(f.invert().invert(), f);
        }

        #[test]
        fn composition_is_pointwise(f in arb_selfmap(), g in arb_selfmap(), k in 0i64..=48) {
            let x = rat(k, 48);
            let fg = f.compose(&g).unwrap();
            prop_assert_eq!(
                fg.evaluate(&x).unwrap(),
                f.evaluate(&g.evaluate(&x).unwrap()).unwrap()
            );
        }

        #[test]
        fn support_is_equivariant(h in arb_selfmap(), g in arb_selfmap()) {
            let conj = conjugate(&h, &g).unwrap();
            let moved = g.support().unwrap().image(&h).unwrap();
            prop_assert_eq!(conj.support().unwrap(), moved);
        }

        #[test]
        fn evaluate_is_strictly_monotone(f in arb_selfmap(), a in 0i64..48, b in 0i64..=48) {
            prop_assume!(a < b);
            let fa = f.evaluate(&rat(a, 48)).unwrap();
            let fb = f.evaluate(&rat(b, 48)).unwrap();
            prop_assert!(fa < fb);
        }
    }
}
