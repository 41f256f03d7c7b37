//! Finite unions of real intervals with exact endpoint openness.
//!
//! An [`IntervalSet`] is always kept in canonical form: components sorted,
//! pairwise disjoint, and never touching at a shared endpoint that either side
//! includes. Equal sets therefore compare equal with `==`. Unbounded ends are
//! stored as `f64::INFINITY` / `f64::NEG_INFINITY` and are always open.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::IntervalError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "extended_real")]
    pub lo: f64,
    #[serde(with = "extended_real")]
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    /// Returns `None` when the described set is empty.
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Option<Self> {
        if lo.is_nan() || hi.is_nan() {
            return None;
        }
        let lo_closed = lo_closed && lo.is_finite();
        let hi_closed = hi_closed && hi.is_finite();
        match lo.partial_cmp(&hi)? {
            Ordering::Less => Some(Self {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }),
            Ordering::Equal if lo_closed && hi_closed => Some(Self {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }),
            _ => None,
        }
    }

    pub fn closed(lo: f64, hi: f64) -> Option<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn open(lo: f64, hi: f64) -> Option<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn point(x: f64) -> Option<Self> {
        Self::closed(x, x)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = x > self.lo || (x == self.lo && self.lo_closed);
        let below = x < self.hi || (x == self.hi && self.hi_closed);
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.partial_cmp(&other.lo)? {
            Ordering::Greater => (self.lo, self.lo_closed),
            Ordering::Less => (other.lo, other.lo_closed),
            Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.partial_cmp(&other.hi)? {
            Ordering::Less => (self.hi, self.hi_closed),
            Ordering::Greater => (other.hi, other.hi_closed),
            Ordering::Equal => (self.hi, self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Sort key: lower end first, closed before open at the same value.
fn lower_key(a: &Interval, b: &Interval) -> Ordering {
    a.lo.partial_cmp(&b.lo)
        .unwrap_or(Ordering::Equal)
        .then_with(|| b.lo_closed.cmp(&a.lo_closed))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn reals() -> Self {
        Self::from(Interval::open(f64::NEG_INFINITY, f64::INFINITY).expect("nonempty"))
    }

    pub fn from_intervals(parts: impl IntoIterator<Item = Interval>) -> Self {
        let mut parts: Vec<Interval> = parts.into_iter().collect();
        parts.sort_by(lower_key);
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(cur) = out.last_mut() {
                let joins = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
                if joins {
                    match p.hi.partial_cmp(&cur.hi).unwrap_or(Ordering::Equal) {
                        Ordering::Greater => {
                            cur.hi = p.hi;
                            cur.hi_closed = p.hi_closed;
                        }
                        Ordering::Equal => cur.hi_closed |= p.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(p);
        }
        Self { parts: out }
    }

    /// Builds a set from optional components, skipping empty ones.
    pub fn from_options(parts: impl IntoIterator<Item = Option<Interval>>) -> Self {
        Self::from_intervals(parts.into_iter().flatten())
    }

    pub fn components(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::from_intervals(self.parts.iter().chain(&other.parts).copied())
    }

    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a IntervalSet>) -> IntervalSet {
        Self::from_intervals(sets.into_iter().flat_map(|s| s.parts.iter().copied()))
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut a, mut b) = (0, 0);
        while a < self.parts.len() && b < other.parts.len() {
            let (x, y) = (&self.parts[a], &other.parts[b]);
            if let Some(c) = x.intersect(y) {
                out.push(c);
            }
            // advance whichever component ends first
            let x_first = x.hi < y.hi || (x.hi == y.hi && !x.hi_closed);
            if x_first {
                a += 1;
            } else {
                b += 1;
            }
        }
        Self::from_intervals(out)
    }

    /// The smallest single interval containing the set, or `None` when empty.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval {
            lo: first.lo,
            lo_closed: first.lo_closed,
            hi: last.hi,
            hi_closed: last.hi_closed,
        })
    }

    pub fn contains(&self, x: f64) -> bool {
        // components are sorted; a linear scan is fine at these sizes
        self.parts.iter().any(|p| p.contains(x))
    }

    /// Closed `eps`-fattening of every component.
    pub fn dilate(&self, eps: f64) -> Result<IntervalSet, IntervalError> {
        if eps.is_nan() || eps < 0.0 {
            return Err(IntervalError::NegativeRadius(eps));
        }
        Ok(Self::from_options(
            self.parts
                .iter()
                .map(|p| Interval::closed(p.lo - eps, p.hi + eps)),
        ))
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.intersect(other) == *self
    }

    /// Rendering with `digits` significant digits, e.g. `[1, 2) ∪ {3}`.
    pub fn display_with(&self, digits: usize) -> String {
        if self.parts.is_empty() {
            return "∅".to_string();
        }
        self.parts
            .iter()
            .map(|p| format_interval(p, digits))
            .collect::<Vec<_>>()
            .join(" ∪ ")
    }
}

impl From<Interval> for IntervalSet {
    fn from(i: Interval) -> Self {
        Self { parts: vec![i] }
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        Self::from_intervals(iter)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(6))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_interval(self, 6))
    }
}

pub fn format_interval(p: &Interval, digits: usize) -> String {
    if p.is_point() {
        return format!("{{{}}}", format_sig(p.lo, digits));
    }
    format!(
        "{}{}, {}{}",
        if p.lo_closed { '[' } else { '(' },
        format_sig(p.lo, digits),
        format_sig(p.hi, digits),
        if p.hi_closed { ']' } else { ')' },
    )
}

/// `%g`-style rendering with `digits` significant digits and no trailing zeros.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == f64::INFINITY {
        return "+inf".into();
    }
    if x == f64::NEG_INFINITY {
        return "-inf".into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let exp = x.abs().log10().floor() as i32;
    if exp < -5 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, x);
        let (mant, e) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{}", trim_zeros(mant), e);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    let s = trim_zeros(&s);
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Finite values as JSON numbers, infinities as the strings `"-inf"` / `"+inf"`.
mod extended_real {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if *x > 0.0 {
            s.serialize_str("+inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "+inf" | "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(serde::de::Error::custom(format!("bad bound {other:?}"))),
            },
        }
    }
}

/// Relative tolerance under which a quadratic root is snapped onto a nearby
/// breakpoint, and two roots are treated as one.
const SNAP_REL: f64 = 1e-12;

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= SNAP_REL * (1.0 + a.abs().max(b.abs()))
}

/// Real roots of `a y^2 + b y + c`, ascending, with near-duplicates merged.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        if b == 0.0 {
            return vec![];
        }
        return vec![-c / b];
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        // a tangent root can come out slightly negative after rounding
        if disc >= -1e-13 * (b * b + (4.0 * a * c).abs()) {
            disc = 0.0;
        } else {
            return vec![];
        }
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
    if q == 0.0 {
        return vec![0.0];
    }
    let (r1, r2) = (q / a, c / q);
    let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    if near(lo, hi) {
        vec![0.5 * (lo + hi)]
    } else {
        vec![lo, hi]
    }
}

/// `{x in domain : |p - x| (|q - x| - t) <= c}`.
///
/// The line is split at `p` and `q`; on each piece both absolute values have a
/// fixed sign and the inequality is a quadratic with leading coefficient `±1`,
/// solved in the shifted variable `y = x - p`. Between consecutive roots and
/// breakpoints the sign is constant, so each gap is classified by one
/// evaluation of the original expression.
pub fn solve_abs_affine_product(
    p: f64,
    q: f64,
    t: f64,
    c: f64,
    domain: &IntervalSet,
) -> IntervalSet {
    let g = |x: f64| (p - x).abs() * ((q - x).abs() - t) - c;
    let mut splits = vec![p, q];
    splits.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    splits.dedup();

    let mut edges = vec![f64::NEG_INFINITY];
    edges.extend(&splits);
    edges.push(f64::INFINITY);

    let d = q - p;
    let mut parts = Vec::new();
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let probe = interior_point(lo, hi);
        let sp = if probe <= p { 1.0 } else { -1.0 };
        let sq = if probe <= q { 1.0 } else { -1.0 };
        // sp (p - x) (sq (q - x) - t) - c with x = p + y
        let a = sp * sq;
        let b = -sp * sq * d + sp * t;
        // (position, is a root); roots close to a breakpoint are snapped onto it
        let mut marks: Vec<(f64, bool)> = vec![(lo, false)];
        let mut hi_root = false;
        for x in quadratic_roots(a, b, -c).into_iter().map(|y| p + y) {
            if lo.is_finite() && near(x, lo) {
                marks[0].1 = true;
            } else if hi.is_finite() && near(x, hi) {
                hi_root = true;
            } else if x > lo && x < hi {
                marks.push((x, true));
            }
        }
        marks.push((hi, hi_root));

        for (k, &(x, is_root)) in marks.iter().enumerate() {
            if x.is_finite() && (is_root || g(x) <= 0.0) {
                parts.push(Interval::point(x).expect("finite"));
            }
            if let Some(&(next, _)) = marks.get(k + 1) {
                if next > x && g(interior_point(x, next)) <= 0.0 {
                    parts.extend(Interval::open(x, next));
                }
            }
        }
    }
    IntervalSet::from_intervals(parts).intersect(domain)
}

fn interior_point(lo: f64, hi: f64) -> f64 {
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => lo + 1.0 + lo.abs(),
        (false, true) => hi - 1.0 - hi.abs(),
        (false, false) => 0.0,
    }
}

/// Reconstructs `{x : predicate(x)}` on `[lo, hi]` from samples spaced `step`
/// apart. Each maximal run of accepted samples becomes a closed interval from
/// its first to its last sample, so boundaries are located to within `step`.
pub fn grid_membership_oracle(
    predicate: impl Fn(f64) -> bool,
    lo: f64,
    hi: f64,
    step: f64,
) -> Result<IntervalSet, IntervalError> {
    if !(step.is_finite() && step > 0.0) {
        return Err(IntervalError::BadStep(step));
    }
    let count = ((hi - lo) / step).floor().max(-1.0) as i64;
    let mut parts = Vec::new();
    let mut run: Option<(f64, f64)> = None;
    for k in 0..=count {
        let x = lo + k as f64 * step;
        if predicate(x) {
            run = Some(match run {
                Some((start, _)) => (start, x),
                None => (x, x),
            });
        } else if let Some((a, b)) = run.take() {
            parts.extend(Interval::closed(a, b));
        }
    }
    if let Some((a, b)) = run {
        parts.extend(Interval::closed(a, b));
    }
    Ok(IntervalSet::from_intervals(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(a: f64, b: f64) -> Interval {
        Interval::closed(a, b).unwrap()
    }
    fn o(a: f64, b: f64) -> Interval {
        Interval::open(a, b).unwrap()
    }
    fn set(v: &[Interval]) -> IntervalSet {
        IntervalSet::from_intervals(v.iter().copied())
    }

    #[test]
    fn empty_components_are_rejected() {
        assert!(Interval::open(1.0, 1.0).is_none());
        assert!(Interval::new(1.0, 1.0, true, false).is_none());
        assert!(Interval::closed(2.0, 1.0).is_none());
        assert!(Interval::point(1.0).is_some());
        let inf = Interval::closed(0.0, f64::INFINITY).unwrap();
        assert!(!inf.hi_closed);
    }

    #[test]
    fn adjacency_merge() {
        let s = set(&[o(1.0, 2.0), c(2.0, 3.0)]);
        assert_eq!(
            s.components(),
            &[Interval::new(1.0, 3.0, false, true).unwrap()]
        );
        let apart = set(&[o(1.0, 2.0), o(2.0, 3.0)]);
        assert_eq!(apart.components().len(), 2);
        assert!(!apart.contains(2.0));
        let bridged = apart.union(&Interval::point(2.0).unwrap().into());
        assert_eq!(bridged, o(1.0, 3.0).into());
    }

    #[test]
    fn reference_hull_intersection() {
        let omega: IntervalSet = c(3.0, 36.6119).into();
        let psi: IntervalSet = c(9.0, 36.6119).into();
        assert_eq!(omega.intersect(&psi), psi);
    }

    #[test]
    fn endpoint_openness() {
        let open: IntervalSet = o(9.0, 33.0).into();
        let closed: IntervalSet = c(9.0, 33.0).into();
        assert!(!open.contains(9.0));
        assert!(closed.contains(9.0));
    }

    #[test]
    fn hull_and_dilate() {
        let s = set(&[o(1.0, 2.0), Interval::point(5.0).unwrap()]);
        assert_eq!(
            s.hull().unwrap(),
            Interval::new(1.0, 5.0, false, true).unwrap()
        );
        assert_eq!(IntervalSet::empty().hull(), None);
        let d = s.dilate(0.5).unwrap();
        assert_eq!(d.components(), &[c(0.5, 2.5), c(4.5, 5.5)]);
        assert!(s.dilate(-1.0).is_err());
        assert_eq!(
            s.dilate(0.0).unwrap(),
            set(&[c(1.0, 2.0), Interval::point(5.0).unwrap()])
        );
    }

    #[test]
    fn rendering() {
        let s = set(&[
            Interval::new(1.0, 2.5, true, false).unwrap(),
            Interval::point(3.0).unwrap(),
            Interval::open(36.61187, f64::INFINITY).unwrap(),
        ]);
        assert_eq!(s.to_string(), "[1, 2.5) ∪ {3} ∪ (36.6119, +inf)");
        assert_eq!(IntervalSet::empty().to_string(), "∅");
        assert_eq!(format_sig(-22.25601, 6), "-22.256");
        assert_eq!(format_sig(1.5e-9, 6), "1.5e-9");
        assert_eq!(format_sig(12345678.0, 6), "1.23457e7");
    }

    #[test]
    fn json_round_trip_keeps_infinities() {
        let s = set(&[
            Interval::new(f64::NEG_INFINITY, -0.1, false, true).unwrap(),
            c(1.0 / 3.0, 36.61187420807834),
        ]);
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"-inf\""));
        let back: IntervalSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn solver_reference_upper_endpoint() {
        let dom: IntervalSet = Interval::open(20.0, f64::INFINITY).unwrap().into();
        let s = solve_abs_affine_product(18.0, 20.0, 15.0, 30.0, &dom);
        assert_eq!(s.components().len(), 1);
        let h = s.hull().unwrap();
        assert_eq!((h.lo, h.lo_closed, h.hi_closed), (20.0, false, true));
        // root of x^2 - 53x + 600 = 0
        assert_abs_diff_eq!(h.hi, (53.0 + 409f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h.hi, 36.6119, epsilon = 1e-4);
    }

    #[test]
    fn solver_point_set() {
        let s = solve_abs_affine_product(0.0, 0.0, 0.0, 0.0, &IntervalSet::reals());
        assert_eq!(s, Interval::point(0.0).unwrap().into());
    }

    #[test]
    fn solver_left_piece() {
        let dom: IntervalSet = Interval::open(f64::NEG_INFINITY, 18.0).unwrap().into();
        let s = solve_abs_affine_product(15.0, 17.0, 0.0, 24.0, &dom);
        assert_eq!(s, Interval::new(11.0, 18.0, true, false).unwrap().into());
    }

    #[test]
    fn oracle_matches_hand_cases() {
        let g =
            grid_membership_oracle(|x| (x - 18.0) * (x - 35.0) <= 30.0, 20.0, 40.0, 1e-4).unwrap();
        assert_abs_diff_eq!(g.hull().unwrap().hi, 36.6119, epsilon = 2e-4);
        assert!(grid_membership_oracle(|_| false, 0.0, 1.0, 0.1)
            .unwrap()
            .is_empty());
        let lam = grid_membership_oracle(
            |x| x < 18.0 && (15.0 - x).abs() * (17.0 - x).abs() <= 24.0,
            0.0,
            18.0,
            1e-4,
        )
        .unwrap();
        let h = lam.hull().unwrap();
        assert_abs_diff_eq!(h.lo, 11.0, epsilon = 1e-4);
        assert_abs_diff_eq!(h.hi, 18.0, epsilon = 1e-4);
        assert!(grid_membership_oracle(|_| true, 0.0, 1.0, 0.0).is_err());
    }

    fn arb_interval() -> impl Strategy<Value = Option<Interval>> {
        (-10i32..10, 0i32..6, any::<bool>(), any::<bool>())
            .prop_map(|(lo, w, lc, hc)| Interval::new(lo as f64, (lo + w) as f64, lc, hc))
    }

    fn arb_set() -> impl Strategy<Value = IntervalSet> {
        proptest::collection::vec(arb_interval(), 0..5).prop_map(IntervalSet::from_options)
    }

    proptest! {
        #[test]
        fn algebra_laws(a in arb_set(), b in arb_set(), c in arb_set()) {
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.intersect(&b), b.intersect(&a));
            prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
            prop_assert_eq!(a.intersect(&b).intersect(&c), a.intersect(&b.intersect(&c)));
            // membership agrees with the boolean combination on half-integers
            for k in -24..36 {
                let x = k as f64 * 0.5;
                prop_assert_eq!(a.union(&b).contains(x), a.contains(x) || b.contains(x));
                prop_assert_eq!(a.intersect(&b).contains(x), a.contains(x) && b.contains(x));
            }
            if let Some(h) = a.hull() {
                for p in a.components() {
                    prop_assert!(IntervalSet::from(*p).is_subset_of(&h.into()));
                }
            }
        }

        #[test]
        fn canonical_form(a in arb_set()) {
            let parts = a.components();
            for w in parts.windows(2) {
                let touching = w[1].lo == w[0].hi && (w[0].hi_closed || w[1].lo_closed);
                prop_assert!(w[0].hi <= w[1].lo && !touching);
            }
            prop_assert_eq!(IntervalSet::from_intervals(parts.iter().rev().copied()), a.clone());
            let closed = a.dilate(0.0).unwrap();
            prop_assert_eq!(closed.dilate(0.0).unwrap(), closed);
        }
    }
}
