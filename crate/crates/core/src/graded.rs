//! Graded and bigraded dimension vectors with tensor and symmetric powers.
//!
//! A `GradedDimension` is the dimension vector of a graded vector space; for
//! symmetric powers the grading decides the statistics: even generators admit
//! multisets, odd generators admit subsets (the Koszul rule).  The unsigned
//! variant treats every generator as even; it is the right notion for Chow
//! groups, where no signs appear.  Bigraded vectors work the same way with
//! the parity of the total degree `p+q` in charge of the sign.

use std::collections::BTreeMap;

/// Finitely supported map `degree → dimension`; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDimension {
    dims: BTreeMap<usize, u64>,
}

impl GradedDimension {
    pub fn zero() -> Self {
        GradedDimension::default()
    }

    /// The unit for tensor: a single generator in degree 0.
    pub fn unit() -> Self {
        let mut g = GradedDimension::default();
        g.add(0, 1);
        g
    }

    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        let mut g = GradedDimension::default();
        for &(d, c) in pairs {
            g.add(d, c);
        }
        g
    }

    pub fn get(&self, degree: usize) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn add(&mut self, degree: usize, count: u64) {
        if count == 0 {
            return;
        }
        *self.dims.entry(degree).or_insert(0) += count;
    }

    /// Non-zero entries in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.dims.iter().map(|(&d, &c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.dims.keys().next_back().copied()
    }

    /// Alternating sum `Σ (−1)^d dim_d`.
    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Everything moved up by `delta` degrees.
    pub fn shifted(&self, delta: usize) -> Self {
        GradedDimension {
            dims: self.dims.iter().map(|(&d, &c)| (d + delta, c)).collect(),
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.iter() {
            out.add(d, c);
        }
        out
    }

    /// Tensor product: degree-wise convolution of dimension vectors.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = GradedDimension::default();
        for (d1, c1) in self.iter() {
            for (d2, c2) in other.iter() {
                out.add(d1 + d2, c1 * c2);
            }
        }
        out
    }

    /// `k`-th symmetric power with Koszul signs: the coefficient of `x^k` in
    /// `∏_{d even} (1 − t^d x)^{−dim_d} · ∏_{d odd} (1 + t^d x)^{dim_d}`,
    /// i.e. multisets of even generators and subsets of odd generators.
    pub fn sym_power_signed(&self, k: usize) -> Self {
        self.sym_power(k, true)
    }

    /// `k`-th symmetric power ignoring parity: multisets of all generators,
    /// the coefficient of `x^k` in `∏_d (1 − t^d x)^{−dim_d}`.
    pub fn sym_power_unsigned(&self, k: usize) -> Self {
        self.sym_power(k, false)
    }

    fn sym_power(&self, k: usize, signed: bool) -> Self {
        // acc[j] = degree data of the x^j slice, truncated at x^k
        let mut acc: Vec<GradedDimension> = vec![GradedDimension::zero(); k + 1];
        acc[0] = GradedDimension::unit();
        for (d, c) in self.iter() {
            let odd = signed && d % 2 == 1;
            let mut next: Vec<GradedDimension> = vec![GradedDimension::zero(); k + 1];
            for j in 0..=k {
                let count = if odd {
                    if j as u64 > c {
                        0
                    } else {
                        binomial(c, j as u64)
                    }
                } else {
                    binomial(c + j as u64 - 1, j as u64)
                };
                if count == 0 {
                    continue;
                }
                for i in 0..=(k - j) {
                    for (deg, base) in acc[i].iter() {
                        next[i + j].add(deg + d * j, base * count);
                    }
                }
            }
            acc = next;
        }
        acc.pop().unwrap()
    }
}

/// Finitely supported map `(p, q) → dimension`; zero entries never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiGradedDimension {
    dims: BTreeMap<(usize, usize), u64>,
}

impl BiGradedDimension {
    pub fn zero() -> Self {
        BiGradedDimension::default()
    }

    pub fn unit() -> Self {
        let mut g = BiGradedDimension::default();
        g.add(0, 0, 1);
        g
    }

    pub fn from_pairs(pairs: &[(usize, usize, u64)]) -> Self {
        let mut g = BiGradedDimension::default();
        for &(p, q, c) in pairs {
            g.add(p, q, c);
        }
        g
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, p: usize, q: usize, count: u64) {
        if count == 0 {
            return;
        }
        *self.dims.entry((p, q)).or_insert(0) += count;
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.dims.iter().map(|(&pq, &c)| (pq, c))
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// Both gradings moved up by `delta`: the effect of `delta` Tate twists.
    pub fn twisted(&self, delta: usize) -> Self {
        BiGradedDimension {
            dims: self
                .dims
                .iter()
                .map(|(&(p, q), &c)| ((p + delta, q + delta), c))
                .collect(),
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, q), c) in other.iter() {
            out.add(p, q, c);
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = BiGradedDimension::default();
        for ((p1, q1), c1) in self.iter() {
            for ((p2, q2), c2) in other.iter() {
                out.add(p1 + p2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    /// `k`-th symmetric power; the sign rule reads the parity of `p+q`.
    pub fn sym_power_bigraded(&self, k: usize) -> Self {
        let mut acc: Vec<BiGradedDimension> = vec![BiGradedDimension::zero(); k + 1];
        acc[0] = BiGradedDimension::unit();
        for ((p, q), c) in self.iter() {
            let odd = (p + q) % 2 == 1;
            let mut next: Vec<BiGradedDimension> = vec![BiGradedDimension::zero(); k + 1];
            for j in 0..=k {
                let count = if odd {
                    if j as u64 > c {
                        0
                    } else {
                        binomial(c, j as u64)
                    }
                } else {
                    binomial(c + j as u64 - 1, j as u64)
                };
                if count == 0 {
                    continue;
                }
                for i in 0..=(k - j) {
                    for ((bp, bq), base) in acc[i].iter() {
                        next[i + j].add(bp + p * j, bq + q * j, base * count);
                    }
                }
            }
            acc = next;
        }
        acc.pop().unwrap()
    }

    /// Forgets the second grading: `(p, q) ↦ p + q`.
    pub fn collapse(&self) -> GradedDimension {
        let mut out = GradedDimension::zero();
        for ((p, q), c) in self.iter() {
            out.add(p + q, c);
        }
        out
    }
}

/// Exact binomial coefficient; `binomial(c − 1, 0) = 1` even when `c = 0`.
fn binomial(n: u64, k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    if n < k {
        return 0;
    }
    let mut num: u128 = 1;
    for i in 0..k.min(n - k) {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(num).expect("binomial overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(22, 8), 319770);
    }

    #[test]
    fn tensor_convolves() {
        let a = GradedDimension::from_pairs(&[(0, 1), (2, 1)]);
        let b = GradedDimension::from_pairs(&[(0, 1), (1, 2)]);
        let t = a.tensor(&b);
        assert_eq!(t, GradedDimension::from_pairs(&[(0, 1), (1, 2), (2, 1), (3, 2)]));
        assert_eq!(a.tensor(&GradedDimension::unit()), a);
    }

    #[test]
    fn sym_square_of_projective_plane() {
        // generators in degrees 0, 2, 4: multisets of two
        let p2 = GradedDimension::from_pairs(&[(0, 1), (2, 1), (4, 1)]);
        let s2 = p2.sym_power_signed(2);
        assert_eq!(
            s2,
            GradedDimension::from_pairs(&[(0, 1), (2, 1), (4, 2), (6, 1), (8, 1)])
        );
        // unsigned agrees when everything is even
        assert_eq!(s2, p2.sym_power_unsigned(2));
    }

    #[test]
    fn sym_square_of_single_odd_generator_vanishes() {
        let line = GradedDimension::from_pairs(&[(1, 1)]);
        assert!(line.sym_power_signed(2).is_zero());
        assert_eq!(line.sym_power_signed(1), line);
        // without the sign rule the square survives
        assert_eq!(
            line.sym_power_unsigned(2),
            GradedDimension::from_pairs(&[(2, 1)])
        );
    }

    #[test]
    fn sym_powers_of_odd_pair_are_exterior() {
        // two odd generators: subsets only
        let v = GradedDimension::from_pairs(&[(1, 2)]);
        assert_eq!(v.sym_power_signed(2), GradedDimension::from_pairs(&[(2, 1)]));
        assert!(v.sym_power_signed(3).is_zero());
    }

    #[test]
    fn sym_power_edge_cases() {
        let v = GradedDimension::from_pairs(&[(0, 2), (1, 1)]);
        assert_eq!(v.sym_power_signed(0), GradedDimension::unit());
        assert_eq!(v.sym_power_signed(1), v);
        assert!(GradedDimension::zero().sym_power_signed(3).is_zero());
        assert_eq!(GradedDimension::zero().sym_power_signed(0), GradedDimension::unit());
    }

    // multiset/subset brute force over explicit generator lists
    fn brute_sym(gens: &[usize], k: usize, signed: bool) -> GradedDimension {
        fn rec(
            gens: &[usize],
            k: usize,
            start: usize,
            degree: usize,
            signed: bool,
            out: &mut GradedDimension,
        ) {
            if k == 0 {
                out.add(degree, 1);
                return;
            }
            for i in start..gens.len() {
                let d = gens[i];
                let next_start = if signed && d % 2 == 1 { i + 1 } else { i };
                rec(gens, k - 1, next_start, degree + d, signed, out);
            }
        }
        let mut out = GradedDimension::zero();
        rec(gens, k, 0, 0, signed, &mut out);
        out
    }

    fn gens_of(v: &GradedDimension) -> Vec<usize> {
        let mut gens = Vec::new();
        for (d, c) in v.iter() {
            for _ in 0..c {
                gens.push(d);
            }
        }
        gens
    }

    #[test]
    fn sym_powers_match_brute_force() {
        let samples = [
            GradedDimension::from_pairs(&[(0, 1), (1, 2), (2, 3)]),
            GradedDimension::from_pairs(&[(1, 4), (2, 6), (3, 4)]),
            GradedDimension::from_pairs(&[(0, 1), (2, 22), (4, 1)]),
            GradedDimension::from_pairs(&[(3, 3)]),
        ];
        for v in &samples {
            let gens = gens_of(v);
            for k in 0..=4 {
                assert_eq!(v.sym_power_signed(k), brute_sym(&gens, k, true), "signed k={k}");
                assert_eq!(v.sym_power_unsigned(k), brute_sym(&gens, k, false), "unsigned k={k}");
            }
        }
    }

    #[test]
    fn euler_and_shift() {
        let v = GradedDimension::from_pairs(&[(0, 1), (1, 4), (2, 6)]);
        assert_eq!(v.euler(), 3);
        assert_eq!(v.shifted(2), GradedDimension::from_pairs(&[(2, 1), (3, 4), (4, 6)]));
        assert_eq!(v.total(), 11);
    }

    #[test]
    fn bigraded_collapse_commutes_with_operations() {
        let a = BiGradedDimension::from_pairs(&[(0, 0, 1), (1, 0, 2), (0, 1, 2), (1, 1, 4)]);
        let b = BiGradedDimension::from_pairs(&[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(
            a.tensor(&b).collapse(),
            a.collapse().tensor(&b.collapse())
        );
        for k in 0..=3 {
            assert_eq!(
                a.sym_power_bigraded(k).collapse(),
                a.collapse().sym_power_signed(k),
                "k={k}"
            );
        }
        assert_eq!(a.twisted(1).collapse(), a.collapse().shifted(2));
    }

    #[test]
    fn bigraded_hodge_symmetry_is_preserved() {
        // h^{pq} = h^{qp} input stays symmetric under sym powers
        let k3 = BiGradedDimension::from_pairs(&[
            (0, 0, 1),
            (2, 0, 1),
            (1, 1, 20),
            (0, 2, 1),
            (2, 2, 1),
        ]);
        for k in 0..=3 {
            let s = k3.sym_power_bigraded(k);
            for ((p, q), c) in s.iter() {
                assert_eq!(c, s.get(q, p), "h^{{{p},{q}}}");
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_graded() -> impl Strategy<Value = GradedDimension> {
            proptest::collection::btree_map(0usize..5, 1u64..4, 0..4)
                .prop_map(|m| GradedDimension { dims: m })
        }

        fn arb_bigraded() -> impl Strategy<Value = BiGradedDimension> {
            proptest::collection::btree_map((0usize..3, 0usize..3), 1u64..4, 0..4)
                .prop_map(|m| BiGradedDimension { dims: m })
        }

        proptest! {
            #[test]
            fn tensor_commutes_and_associates(a in arb_graded(), b in arb_graded(), c in arb_graded()) {
                prop_assert_eq!(a.tensor(&b), b.tensor(&a));
                prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
            }

            #[test]
            fn collapse_commutes(a in arb_bigraded(), b in arb_bigraded(), k in 0usize..4) {
                prop_assert_eq!(
                    a.tensor(&b).collapse(),
                    a.collapse().tensor(&b.collapse())
                );
                prop_assert_eq!(
                    a.sym_power_bigraded(k).collapse(),
                    a.collapse().sym_power_signed(k)
                );
            }

            #[test]
            fn sym_power_total_of_even_vectors(v in arb_graded(), k in 0usize..4) {
                // for purely even vectors the total is a multiset count
                let even = GradedDimension {
                    dims: v.iter().map(|(d, c)| (2 * d, c)).collect(),
                };
                let n = even.total();
                let expected = if n == 0 {
                    if k == 0 { 1 } else { 0 }
                } else {
                    binomial(n + k as u64 - 1, k as u64)
                };
                prop_assert_eq!(even.sym_power_signed(k).total(), expected);
            }
        }
    }
}
