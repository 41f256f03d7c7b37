//! Dense univariate polynomials and real-root isolation on a bounded interval.
//!
//! Roots are isolated by recursion on the derivative: the critical points of
//! `p` split `[lo, hi]` into monotone pieces, each holding at most one simple
//! root, which bisection then refines to full double precision. Even-multiplicity
//! (tangent) roots produce no sign change; they are picked up as critical
//! points where `|p|` vanishes relative to the coefficient scale.

/// Coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    /// Sum of absolute coefficients: a bound on `|p|` over `[-1, 1]`.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// All real roots in `[lo, hi]`, ascending. `rel_tol` decides when a
    /// critical point counts as a (tangent) root: `|p(x)| <= rel_tol * scale`.
    pub fn real_roots_in(&self, lo: f64, hi: f64, rel_tol: f64) -> Vec<f64> {
        if self.is_zero() {
            return vec![];
        }
        let tol =
            rel_tol * self.scale() * lo.abs().max(hi.abs()).max(1.0).powi(self.degree() as i32);
        let mut roots = self.roots_rec(lo, hi, tol);
        roots.sort_by(|a, b| a.total_cmp(b));
        roots.dedup_by(|a, b| (*a - *b).abs() <= 4.0 * f64::EPSILON * (1.0 + a.abs()));
        roots
    }

    fn roots_rec(&self, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
        if self.degree() == 0 {
            return vec![];
        }
        let crit = if self.degree() >= 2 {
            let d = self.derivative();
            let dtol = tol * d.scale() / self.scale().max(f64::MIN_POSITIVE);
            d.roots_rec(lo, hi, dtol)
        } else {
            vec![]
        };
        let mut marks = Vec::with_capacity(crit.len() + 2);
        marks.push(lo);
        marks.extend(crit.into_iter().filter(|&c| c > lo && c < hi));
        marks.push(hi);

        let mut roots = Vec::new();
        for &x in &marks {
            if self.eval(x).abs() <= tol {
                roots.push(x);
            }
        }
        for w in marks.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            if fa.abs() > tol && fb.abs() > tol && (fa < 0.0) != (fb < 0.0) {
                roots.push(self.bisect(a, b, fa));
            }
        }
        roots
    }

    /// Bisection on a sign change until the bracket cannot shrink further.
    fn bisect(&self, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
        loop {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if (fm < 0.0) == (fa < 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        // pick the endpoint with the smaller residual
        if self.eval(a).abs() <= self.eval(b).abs() {
            a
        } else {
            b
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn from_roots(roots: &[f64]) -> Poly {
        let mut c = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (k, &v) in c.iter().enumerate() {
                next[k + 1] += v;
                next[k] -= r * v;
            }
            c = next;
        }
        Poly::new(c)
    }

    #[test]
    fn simple_roots() {
        let p = from_roots(&[-0.5, 0.25, 0.75]);
        let r = p.real_roots_in(-1.0, 1.0, 1e-11);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-0.5, 0.25, 0.75]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn tangent_and_triple_roots() {
        let p = from_roots(&[0.3, 0.3, -0.6]);
        let r = p.real_roots_in(-1.0, 1.0, 1e-11);
        assert_eq!(r.len(), 2, "{r:?}");
        assert_abs_diff_eq!(r[0], -0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(r[1], 0.3, epsilon = 1e-7);

        let q = from_roots(&[0.5, 0.5, 0.5]);
        let r = q.real_roots_in(-1.0, 1.0, 1e-11);
        assert!(!r.is_empty());
        assert!(r.iter().all(|x| (x - 0.5).abs() < 1e-4));
    }

    #[test]
    fn endpoint_roots_and_none() {
        let p = from_roots(&[-1.0, 1.0]);
        let r = p.real_roots_in(-1.0, 1.0, 1e-11);
        assert_eq!(r, vec![-1.0, 1.0]);
        let none = Poly::new(vec![1.0, 0.0, 1.0]);
        assert!(none.real_roots_in(-1.0, 1.0, 1e-11).is_empty());
        assert!(Poly::new(vec![0.0, 0.0])
            .real_roots_in(-1.0, 1.0, 1e-11)
            .is_empty());
    }
}
