//! Brute-force reference implementations over small prime fields.
//!
//! Products come from the full structure tensor `e_i e_j = δ_ij sum_k a_ik e_k`
//! with plain `u64` arithmetic, independent of the library's scalar type.

#![allow(dead_code, clippy::needless_range_loop)]

use evalg_core::{EvolutionAlgebra, Field};
use rand::Rng;

pub struct Brute {
    pub p: u64,
    pub n: usize,
    /// `t[i][j][k]`.
    t: Vec<Vec<Vec<u64>>>,
}

impl Brute {
    pub fn new(a: &EvolutionAlgebra) -> Brute {
        let p = match a.field() {
            Field::Prime(p) => p,
            Field::Rationals => panic!("brute force needs a finite field"),
        };
        let n = a.dim();
        let mut t = vec![vec![vec![0; n]; n]; n];
        for (i, ti) in t.iter_mut().enumerate() {
            for k in 0..n {
                ti[i][k] = a.constant(i, k).residue().unwrap();
            }
        }
        Brute { p, n, t }
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut z = vec![0; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let c = x[i] * y[j] % self.p;
                if c == 0 {
                    continue;
                }
                for (k, zk) in z.iter_mut().enumerate() {
                    *zk = (*zk + c * self.t[i][j][k]) % self.p;
                }
            }
        }
        z
    }

    pub fn basis(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    /// Every element of `F_p^n`.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..self.p).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn is_zero(v: &[u64]) -> bool {
        v.iter().all(|&c| c == 0)
    }

    /// `x^2 x^2 = ((x x) x) x` for every element.
    pub fn fourth_power_associative(&self) -> bool {
        self.elements().iter().all(|x| {
            let sq = self.mul(x, x);
            let fourth = self.mul(&self.mul(&sq, x), x);
            self.mul(&sq, &sq) == fourth
        })
    }

    /// `(x^2 y) x = x^2 (y x)` for every pair.
    pub fn jordan(&self) -> bool {
        let els = self.elements();
        els.iter().all(|x| {
            let sq = self.mul(x, x);
            els.iter().all(|y| self.mul(&self.mul(&sq, y), x) == self.mul(&sq, &self.mul(y, x)))
        })
    }

    pub fn associative(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                (0..self.n).all(|k| {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    self.mul(&self.mul(&x, &y), &z) == self.mul(&x, &self.mul(&y, &z))
                })
            })
        })
    }

    /// Every element has `x^(n+1) = 0` with left-normed powers.
    pub fn nil(&self) -> bool {
        self.elements().iter().all(|x| {
            let mut pw = x.clone();
            for _ in 0..self.n {
                pw = self.mul(&pw, x);
            }
            Brute::is_zero(&pw)
        })
    }

    /// `x^3 = 0` for every element.
    pub fn cube_zero(&self) -> bool {
        self.elements().iter().all(|x| Brute::is_zero(&self.mul(&self.mul(x, x), x)))
    }

    /// Dimension of `{x : x E = 0}`, from the number of its elements.
    pub fn annihilator_dim(&self) -> usize {
        let count = self
            .elements()
            .iter()
            .filter(|x| (0..self.n).all(|j| Brute::is_zero(&self.mul(x, &self.basis(j)))))
            .count();
        let mut d = 0;
        let mut c = 1;
        while c < count {
            c *= self.p as usize;
            d += 1;
        }
        assert_eq!(c, count);
        d
    }

    /// The largest number of pairwise orthogonal nonzero idempotents.
    pub fn orthogonal_idempotents(&self) -> usize {
        let ids: Vec<Vec<u64>> =
            self.elements().into_iter().filter(|x| !Brute::is_zero(x) && self.mul(x, x) == *x).collect();
        let orth = |a: &Vec<u64>, b: &Vec<u64>| Brute::is_zero(&self.mul(a, b));
        fn grow(
            ids: &[Vec<u64>],
            chosen: &mut Vec<usize>,
            start: usize,
            orth: &dyn Fn(&Vec<u64>, &Vec<u64>) -> bool,
        ) -> usize {
            let mut best = chosen.len();
            for k in start..ids.len() {
                if chosen.iter().all(|&c| orth(&ids[c], &ids[k])) {
                    chosen.push(k);
                    best = best.max(grow(ids, chosen, k + 1, orth));
                    chosen.pop();
                }
            }
            best
        }
        grow(&ids, &mut Vec::new(), 0, &orth)
    }
}

/// A structure matrix over `F_p` whose entries are zero with probability `zero_prob`.
pub fn sparse_random<R: Rng>(field: Field, n: usize, zero_prob: f64, rng: &mut R) -> EvolutionAlgebra {
    let p = match field {
        Field::Prime(p) => p,
        Field::Rationals => 7,
    };
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(
                    |_| if rng.gen_bool(zero_prob) { field.zero() } else { field.from_i64(rng.gen_range(1..p) as i64) },
                )
                .collect()
        })
        .collect();
    EvolutionAlgebra::new(field, rows).unwrap()
}
