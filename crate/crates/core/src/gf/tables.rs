//! Exponent, logarithm and Zech-logarithm tables for small fields.

use super::{FieldElement, Inner};

const NONE: u32 = u32::MAX;

pub(super) struct Tables {
    group: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// zech[k] = log(1 + g^k), or NONE when 1 + g^k = 0.
    zech: Vec<u32>,
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

impl Tables {
    pub(super) fn build(inner: &Inner) -> Tables {
        // Borrow the basis arithmetic through a temporary handle.
        let field = super::Field(std::sync::Arc::new(Inner {
            spec: inner.spec.clone(),
            q: inner.q,
            order: inner.order,
            degree: inner.degree,
            place: inner.place.clone(),
            overflow: inner.overflow.clone(),
            tables: None,
        }));
        let group = inner.order - 1;
        let factors = prime_factors(group as u64);
        let generator = (2..inner.order)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&l| field.pow_basis(g, group as u64 / l) != field.one())
            })
            .expect("multiplicative group is cyclic");

        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![NONE; inner.order as usize];
        let mut cur = field.one();
        for k in 0..group {
            exp.push(cur.0);
            log[cur.0 as usize] = k;
            cur = field.mul_basis(cur, generator);
        }
        let zech = exp
            .iter()
            .map(|&x| {
                let s = field.add_digits(FieldElement(x), field.one());
                if s.0 == 0 {
                    NONE
                } else {
                    log[s.0 as usize]
                }
            })
            .collect();
        Tables {
            group,
            exp,
            log,
            zech,
        }
    }

    pub(super) fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % self.group as u64) as usize]
    }

    pub(super) fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        // a + b = g^la (1 + g^(lb - la))
        let diff = (lb + self.group - la) % self.group;
        match self.zech[diff as usize] {
            NONE => 0,
            z => self.exp[((la as u64 + z as u64) % self.group as u64) as usize],
        }
    }

    /// a^e for a nonzero and 1 <= e.
    pub(super) fn pow(&self, a: u32, e: u64) -> u32 {
        let l = self.log[a as usize] as u128 * e as u128;
        self.exp[(l % self.group as u128) as usize]
    }
}
