//! Independent reference computations used only by tests.
#![allow(dead_code)]

use cylknot_core::braid::BraidWord;
use cylknot_core::invariants::laurent_determinant;
use cylknot_core::laurent::LaurentPoly;
use num_traits::Zero;

fn lp(c: i64, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(c, e)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Oriented sign of a letter: `σ_j` is a negative crossing.
fn oriented(sign: i8) -> i8 {
    -sign
}

/// Alexander polynomial from the Fox-calculus matrix of the Wirtinger
/// presentation of the closed braid diagram.
pub fn wirtinger_alexander(word: &BraidWord) -> LaurentPoly {
    let s = word.strands();
    let c = word.len();
    if c == 0 {
        return LaurentPoly::one();
    }
    // arc labels: initial arcs 0..s, each crossing starts one new arc
    let mut at: Vec<usize> = (0..s).collect();
    let mut next = s;
    let mut rows: Vec<(usize, usize, usize, i8)> = Vec::new(); // (over, under_in, under_out, sign)
    for l in word.letters() {
        let i = l.generator - 1;
        let eps = oriented(l.sign);
        // positive: the strand moving from position i to i+1 passes over
        let (over_pos, under_pos) = if eps > 0 { (i, i + 1) } else { (i + 1, i) };
        let over = at[over_pos];
        let under_in = at[under_pos];
        let under_out = next;
        next += 1;
        rows.push((over, under_in, under_out, eps));
        // strands swap positions
        let new_i = at[i + 1];
        let new_ip1 = at[i];
        at[i] = new_i;
        at[i + 1] = new_ip1;
        if under_pos == i {
            // under strand moved from i to i+1
            at[i + 1] = under_out;
        } else {
            at[i] = under_out;
        }
    }
    let mut dsu = Dsu::new(next);
    for (p, &arc) in at.iter().enumerate() {
        dsu.union(arc, p);
    }
    let mut classes: Vec<usize> = (0..next).map(|x| dsu.find(x)).collect();
    let mut uniq = classes.clone();
    uniq.sort();
    uniq.dedup();
    for x in classes.iter_mut() {
        *x = uniq.binary_search(x).unwrap();
    }
    let arcs = uniq.len();
    assert_eq!(arcs, c, "a knot diagram has as many arcs as crossings");
    let mut m = vec![vec![LaurentPoly::zero(); arcs]; c];
    for (r, &(o, ui, uo, eps)) in rows.iter().enumerate() {
        let (o, ui, uo) = (classes[o], classes[ui], classes[uo]);
        let add = |m: &mut Vec<Vec<LaurentPoly>>, col: usize, v: LaurentPoly| {
            m[r][col] = &m[r][col] + &v;
        };
        add(&mut m, o, &LaurentPoly::one() - &lp(1, 1));
        if eps > 0 {
            add(&mut m, ui, lp(1, 1));
            add(&mut m, uo, lp(-1, 0));
        } else {
            add(&mut m, ui, lp(-1, 0));
            add(&mut m, uo, lp(1, 1));
        }
    }
    let minor: Vec<Vec<LaurentPoly>> = m[..c - 1].iter().map(|row| row[..arcs - 1].to_vec()).collect();
    laurent_determinant(minor).normalize_symmetric()
}

/// Alexander polynomial from the unreduced Burau matrix. `I − B` kills the
/// all-ones vector on the right and `(1, t, …, t^{s−1})` on the left, so its
/// adjugate has rank one and every cofactor is a unit times `Δ`.
pub fn unreduced_burau_alexander(word: &BraidWord) -> LaurentPoly {
    let s = word.strands();
    if s == 1 {
        return LaurentPoly::one();
    }
    let id = |i: usize, j: usize| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() };
    let mut b: Vec<Vec<LaurentPoly>> = (0..s).map(|i| (0..s).map(|j| id(i, j)).collect()).collect();
    for l in word.letters() {
        let i = l.generator - 1;
        let g = if l.sign > 0 {
            [[&LaurentPoly::one() - &lp(1, 1), lp(1, 1)], [LaurentPoly::one(), LaurentPoly::zero()]]
        } else {
            [[LaurentPoly::zero(), LaurentPoly::one()], [lp(1, -1), &LaurentPoly::one() - &lp(1, -1)]]
        };
        for row in b.iter_mut() {
            let (x, y) = (row[i].clone(), row[i + 1].clone());
            row[i] = &(&x * &g[0][0]) + &(&y * &g[1][0]);
            row[i + 1] = &(&x * &g[0][1]) + &(&y * &g[1][1]);
        }
    }
    let minor: Vec<Vec<LaurentPoly>> = (0..s - 1)
        .map(|i| (0..s - 1).map(|j| &id(i, j) - &b[i][j]).collect())
        .collect();
    laurent_determinant(minor).normalize_symmetric()
}

/// Brute-force Kauffman bracket over all `2^c` states of the closed braid
/// diagram, then writhe-normalized Jones in powers of `t^{1/2}`.
pub fn brute_jones(word: &BraidWord) -> LaurentPoly {
    let s = word.strands();
    let c = word.len();
    // node (level, position); level 0..=c, level c glued to level 0
    let node = |lvl: usize, p: usize| (lvl % c.max(1)) * s + p;
    let mut bracket = LaurentPoly::zero();
    let delta = &lp(-1, 2) + &lp(-1, -2);
    for state in 0u64..(1u64 << c) {
        let mut dsu = Dsu::new(c.max(1) * s);
        let mut a_count: i64 = 0;
        for (lvl, l) in word.letters().iter().enumerate() {
            let i = l.generator - 1;
            for p in 0..s {
                if p != i && p != i + 1 {
                    dsu.union(node(lvl, p), node(lvl + 1, p));
                }
            }
            let choose_a = state >> lvl & 1 == 0;
            if choose_a {
                a_count += 1;
            }
            // A-smoothing of a positive crossing is vertical
            let positive = oriented(l.sign) > 0;
            let vertical = choose_a == positive;
            if vertical {
                dsu.union(node(lvl, i), node(lvl + 1, i));
                dsu.union(node(lvl, i + 1), node(lvl + 1, i + 1));
            } else {
                dsu.union(node(lvl, i), node(lvl, i + 1));
                dsu.union(node(lvl + 1, i), node(lvl + 1, i + 1));
            }
        }
        let total = c.max(1) * s;
        let loops = (0..total).filter(|&x| dsu.find(x) == x).count() as u32;
        let b_count = c as i64 - a_count;
        let term = &lp(1, a_count - b_count) * &delta.pow(loops - 1);
        bracket = &bracket + &term;
    }
    if c == 0 {
        bracket = delta.pow(s as u32 - 1);
    }
    let writhe: i64 = word.letters().iter().map(|l| oriented(l.sign) as i64).sum();
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let f = &lp(sign, -3 * writhe) * &bracket;
    // A = t^{-1/4}: A^e = (t^{1/2})^{-e/2}
    (f.low_degree()..=f.high_degree())
        .filter(|&e| !f.coeff(e).is_zero())
        .map(|e| LaurentPoly::monomial(f.coeff(e), -e / 2))
        .sum()
}

/// `Δ` of the torus knot `T(p, q)` from the closed formula.
pub fn torus_alexander(p: i64, q: i64) -> LaurentPoly {
    let m1 = |e: i64| &lp(1, e) - &LaurentPoly::one();
    (&m1(p * q) * &m1(1))
        .div_exact(&(&m1(p) * &m1(q)))
        .expect("cyclotomic quotient")
        .normalize_symmetric()
}

/// Signature of the positive torus knot `T(p, q)`.
pub fn torus_signature(p: i64, q: i64) -> i64 {
    let mut sig = 0;
    for i in 1..p {
        for j in 1..q {
            // i/p + j/q in (1/2, 3/2) counts −1, outside counts +1
            let x = 2 * (i * q + j * p);
            if x > p * q && x < 3 * p * q {
                sig -= 1;
            } else {
                sig += 1;
            }
        }
    }
    sig
}

/// Number of proper crossings of the `{n/s}` star polygon, by testing all
/// pairs of chords in floating point.
pub fn segment_crossings(s: i64, n: i64) -> usize {
    let v: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * (s * k) as f64 / n as f64;
            (a.cos(), a.sin())
        })
        .collect();
    let seg = |c: usize| (v[c], v[(c + 1) % n as usize]);
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut count = 0;
    for i in 0..n as usize {
        for j in i + 1..n as usize {
            let (p1, p2) = seg(i);
            let (q1, q2) = seg(j);
            let d1 = cross(q1, q2, p1);
            let d2 = cross(q1, q2, p2);
            let d3 = cross(p1, p2, q1);
            let d4 = cross(p1, p2, q2);
            let eps = 1e-9;
            if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
                && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
            {
                count += 1;
            }
        }
    }
    count
}

/// `(σ_1 … σ_{p−1})^q` with positive crossings (the letters `σ_j⁻¹`).
pub fn positive_torus_braid(p: usize, q: usize) -> BraidWord {
    let block: Vec<i64> = (1..p as i64).map(|j| -j).collect();
    BraidWord::from_signed(p, &block.repeat(q)).unwrap()
}
