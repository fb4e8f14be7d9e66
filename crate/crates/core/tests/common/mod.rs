// Fixtures and slow independent oracles shared by the integration tests.
#![allow(dead_code)]

use singer_core::dual::{DividedMonomial, DualElement};
use singer_core::poly::{enumerate_monomials, Monomial};
use singer_core::{BitVec, Polynomial};

pub const Q43: &str = "a1(1) a2(1) a3(6) a4(6) + a1(1) a2(2) a3(5) a4(6) + a1(1) a2(3) a3(4) a4(6) + a1(1) a2(4) a3(3) a4(6) + a1(1) a2(5) a3(2) a4(6) + a1(1) a2(6) a3(1) a4(6) + a1(2) a2(1) a3(6) a4(5) + a1(2) a2(2) a3(5) a4(5) + a1(2) a2(3) a3(4) a4(5) + a1(2) a2(4) a3(3) a4(5) + a1(2) a2(5) a3(2) a4(5) + a1(2) a2(6) a3(1) a4(5) + a1(3) a2(1) a3(5) a4(5) + a1(3) a2(2) a3(6) a4(3) + a1(3) a2(3) a3(2) a4(6) + a1(3) a2(4) a3(1) a4(6) + a1(3) a2(4) a3(2) a4(5) + a1(3) a2(4) a3(4) a4(3) + a1(3) a2(6) a3(2) a4(3) + a1(4) a2(1) a3(6) a4(3) + a1(4) a2(2) a3(5) a4(3) + a1(4) a2(3) a3(4) a4(3) + a1(4) a2(4) a3(3) a4(3) + a1(4) a2(5) a3(2) a4(3) + a1(4) a2(6) a3(1) a4(3) + a1(5) a2(1) a3(3) a4(5) + a1(5) a2(2) a3(1) a4(6) + a1(5) a2(2) a3(2) a4(5) + a1(5) a2(2) a3(4) a4(3) + a1(5) a2(3) a3(1) a4(5) + a1(5) a2(3) a3(3) a4(3) + a1(5) a2(5) a3(1) a4(3) + a1(6) a2(1) a3(1) a4(6) + a1(6) a2(1) a3(2) a4(5) + a1(6) a2(1) a3(4) a4(3) + a1(6) a2(2) a3(3) a4(3)";

/// Explicit cycle `λ_6λ_2λ_3² + λ_4²λ_3² + λ_2λ_4λ_5λ_3 + λ_1λ_5λ_1λ_7`.
pub const D0_BAR: &str = "L6 L2 L3 L3 + L4 L4 L3 L3 + L2 L4 L5 L3 + L1 L5 L1 L7";

pub fn dual(powers: &[u32]) -> DualElement {
    DualElement::from_monomial(DividedMonomial::new(powers).unwrap())
}

pub fn dual_sum(terms: &[&[u32]]) -> DualElement {
    let mut out = DualElement::zero(terms[0].len());
    for t in terms {
        out.toggle(DividedMonomial::new(t).unwrap());
    }
    out
}

pub fn q43() -> DualElement {
    DualElement::parse(Q43, 4).unwrap()
}

/// `c̄_u` written out term by term.
pub fn c_bar(u: u32) -> DualElement {
    let p = 1u32 << u;
    dual_sum(&[
        &[3 * p - 1, 4 * p - 1, 4 * p - 1],
        &[2 * p - 1, 5 * p - 1, 4 * p - 1],
        &[2 * p - 1, 3 * p - 1, 6 * p - 1],
        &[2 * p - 1, 2 * p - 1, 7 * p - 1],
    ])
}

pub fn is_power_of_two_minus_one(n: u32) -> bool {
    (n + 1).is_power_of_two()
}

/// dim (QP_1)_n.
pub fn qp1_dim(n: u32) -> usize {
    usize::from(is_power_of_two_minus_one(n))
}

/// dim H^{1,w}: one `h_u` when `w = 2^u - 1`.
pub fn ext1_dim(w: u32) -> usize {
    qp1_dim(w)
}

/// dim H^{2,w}: pairs `h_i h_j`, `i <= j`, `j != i + 1`, of stem `w`.
pub fn ext2_dim(w: u32) -> usize {
    let mut n = 0;
    for i in 0..8u32 {
        for j in i..8u32 {
            if j != i + 1 && (1u32 << i) + (1u32 << j) - 2 == w {
                n += 1;
            }
        }
    }
    n
}

/// dim (QP_2)^{GL_2}_n: one class at `2^{s+1} - 2` and at `2^{s+t} + 2^s - 2`
/// with `t >= 2`, none elsewhere.
pub fn qp2_gl_dim(n: u32) -> usize {
    for s in 0..8u32 {
        if (1u32 << (s + 1)) - 2 == n {
            return 1;
        }
        for t in 2..8u32 {
            if (1u32 << (s + t)) + (1u32 << s) - 2 == n {
                return 1;
            }
        }
    }
    0
}

/// `(degree, expected dim)` of `(QP_3)^{GL_3}` over the known degree families,
/// restricted to degrees at most `max`.
pub fn qp3_gl_instances(max: u32) -> Vec<(u32, usize, String)> {
    let p = |e: u32| 1u32 << e;
    let mut out = Vec::new();
    let mut push = |d: u32, dim: usize, why: String| {
        if d <= max {
            out.push((d, dim, why));
        }
    };
    for t in 1..6 {
        push(p(t + 1) - 2, usize::from(t >= 3), format!("2^(t+1)-2, t={t}"));
    }
    for u in 1..6 {
        for t in 0..6 {
            let dim = match t {
                0 => 0,
                1..=3 => 1,
                _ => 2,
            };
            push(p(t + u) + p(u) - 3, dim, format!("2^(t+u)+2^u-3, t={t} u={u}"));
        }
    }
    for s in 1..6 {
        for u in 0..6 {
            push(
                p(s + u + 1) + p(u + 1) + p(u) - 3,
                usize::from(s == 2),
                format!("2^(s+u+1)+2^(u+1)+2^u-3, s={s} u={u}"),
            );
        }
    }
    for t in 2..6 {
        for u in 0..6 {
            push(p(t + u + 1) + p(t + u) + p(u) - 3, 0, format!("2^(t+u+1)+2^(t+u)+2^u-3, t={t} u={u}"));
        }
    }
    for s in 2..6 {
        for t in 2..6 {
            for u in 0..6 {
                push(
                    p(s + t + u) + p(t + u) + p(u) - 3,
                    1,
                    format!("2^(s+t+u)+2^(t+u)+2^u-3, s={s} t={t} u={u}"),
                );
            }
        }
    }
    out
}

/// `binom(n, r) mod 2` by Pascal's triangle, no bit tricks.
pub fn pascal_mod2(n: u32, r: u32) -> bool {
    if r > n {
        return false;
    }
    let mut row = vec![true];
    for _ in 0..n {
        let mut next = vec![true; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] ^ row[i];
        }
        row = next;
    }
    row[r as usize]
}

/// `Sq^i` from `Sq^i(x^n) = binom(n, i) x^{n+i}` and the Cartan formula,
/// applied one variable at a time.
pub fn sq_slow(f: &Polynomial, i: u32) -> Polynomial {
    let k = f.k();
    let mut out = Polynomial::zero(k);
    for m in f.terms() {
        let mut partial: Vec<(Vec<u32>, u32)> = vec![(Vec::new(), 0)];
        for v in 0..k {
            let e = m.exponent(v);
            let mut next = Vec::new();
            for (exps, used) in &partial {
                for r in 0..=(i - used) {
                    if pascal_mod2(e, r) {
                        let mut x = exps.clone();
                        x.push(e + r);
                        next.push((x, used + r));
                    }
                }
            }
            partial = next;
        }
        for (exps, used) in partial {
            if used == i {
                out.toggle(Monomial::new(&exps).unwrap());
            }
        }
    }
    out
}

/// Hit space of degree `d` spanned by every `Sq^i(m)`, `i >= 1`, with `m` a
/// monomial of degree `d - i`, by plain Gaussian elimination on bool rows.
pub fn slow_hit_rank(k: usize, d: u32) -> (usize, usize) {
    let cols = enumerate_monomials(k, d).unwrap();
    let index = |m: &Monomial| cols.iter().position(|c| c == m).unwrap();
    let mut rows = Vec::new();
    for i in 1..=d {
        for m in enumerate_monomials(k, d - i).unwrap() {
            let img = sq_slow(&Polynomial::from_monomial(m), i);
            let mut row = vec![false; cols.len()];
            for t in img.terms() {
                row[index(t)] ^= true;
            }
            rows.push(row);
        }
    }
    (naive_rank(rows), cols.len())
}

pub fn naive_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn to_bools(v: &BitVec) -> Vec<bool> {
    (0..v.len()).map(|i| v.get(i)).collect()
}
