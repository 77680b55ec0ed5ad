//! Numerical semigroups: membership, Frobenius number, genus, symmetry,
//! telescopic sequences, and the semigroup at the point at infinity of the
//! (0, r) curves.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Submonoid of N generated by positive integers, stored as its Apéry set
/// with respect to the smallest generator m: apery[i] is the least element
/// congruent to i mod m, or `u64::MAX` when that class is never reached.
#[derive(Debug, Clone)]
struct Monoid {
    m: u64,
    apery: Vec<u64>,
}

impl Monoid {
    fn new(gens: &[u64]) -> Monoid {
        let m = gens.iter().copied().min().expect("nonempty generators");
        let mut apery = vec![u64::MAX; m as usize];
        apery[0] = 0;
        let mut heap = BinaryHeap::from([Reverse((0u64, 0u64))]);
        while let Some(Reverse((w, r))) = heap.pop() {
            if w > apery[r as usize] {
                continue;
            }
            for &g in gens {
                let (w2, r2) = (w + g, (r + g) % m);
                if w2 < apery[r2 as usize] {
                    apery[r2 as usize] = w2;
                    heap.push(Reverse((w2, r2)));
                }
            }
        }
        Monoid { m, apery }
    }

    fn contains(&self, x: u64) -> bool {
        self.apery[(x % self.m) as usize] <= x
    }
}

#[derive(Debug, Clone)]
pub struct NumericalSemigroup {
    gens: Vec<u64>,
    monoid: Monoid,
    frobenius: i64,
    genus: u64,
}

fn gcd_all(gens: &[u64]) -> u64 {
    gens.iter().fold(0, |acc, &g| acc.gcd(&g))
}

fn validate(gens: &[u64]) -> Result<()> {
    if gens.is_empty() || gens.contains(&0) {
        return Err(Error::InvalidParameter(
            "generators must be a nonempty list of positive integers".into(),
        ));
    }
    let d = gcd_all(gens);
    if d != 1 {
        return Err(Error::NotNumericalSemigroup(gens.to_vec(), d));
    }
    Ok(())
}

impl NumericalSemigroup {
    /// Generators are kept in the given order.
    pub fn new(gens: &[u64]) -> Result<Self> {
        validate(gens)?;
        let monoid = Monoid::new(gens);
        let max = *monoid.apery.iter().max().unwrap();
        let frobenius = max as i64 - monoid.m as i64;
        // Each residue class i contributes apery[i] / m gaps.
        let genus = monoid.apery.iter().map(|&w| w / monoid.m).sum();
        Ok(NumericalSemigroup {
            gens: gens.to_vec(),
            monoid,
            frobenius,
            genus,
        })
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    /// The least nonzero element.
    pub fn multiplicity(&self) -> u64 {
        self.monoid.m
    }

    /// Largest gap, -1 for N itself.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> u64 {
        (self.frobenius + 1) as u64
    }

    /// Number of gaps.
    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn contains(&self, x: u64) -> bool {
        self.monoid.contains(x)
    }

    pub fn gaps(&self) -> Vec<u64> {
        (1..self.conductor())
            .filter(|&x| !self.contains(x))
            .collect()
    }

    /// Minimal elements of each residue class mod the multiplicity.
    pub fn apery_set(&self) -> &[u64] {
        &self.monoid.apery
    }

    pub fn is_symmetric(&self) -> bool {
        self.frobenius == 2 * self.genus as i64 - 1
    }
}

/// d_i = gcd(a_1, ..., a_i) for i = 1..k.
fn prefix_gcds(gens: &[u64]) -> Vec<u64> {
    gens.iter()
        .scan(0u64, |d, &a| {
            *d = d.gcd(&a);
            Some(*d)
        })
        .collect()
}

/// a_i/d_i ∈ ⟨a_1/d_{i-1}, ..., a_{i-1}/d_{i-1}⟩ for every i >= 2, in the
/// given order.
pub fn is_telescopic(gens: &[u64]) -> Result<bool> {
    validate(gens)?;
    let d = prefix_gcds(gens);
    Ok((1..gens.len()).all(|i| {
        let scaled: Vec<u64> = gens[..i].iter().map(|&a| a / d[i - 1]).collect();
        Monoid::new(&scaled).contains(gens[i] / d[i])
    }))
}

/// (Σ_i (d_{i-1}/d_i - 1) a_i + 1)/2 with d_0 = 0.
pub fn telescopic_genus(gens: &[u64]) -> Result<u64> {
    if !is_telescopic(gens)? {
        return Err(Error::NotTelescopic(gens.to_vec()));
    }
    let d = prefix_gcds(gens);
    let mut sum: i128 = 1;
    for (i, &a) in gens.iter().enumerate() {
        let prev = if i == 0 { 0 } else { d[i - 1] };
        sum += (prev as i128 / d[i] as i128 - 1) * a as i128;
    }
    debug_assert!(sum >= 0 && sum % 2 == 0);
    Ok((sum / 2) as u64)
}

/// Generators that already lie in the monoid spanned by the others.
pub fn redundancy_probe(gens: &[u64]) -> Vec<u64> {
    (0..gens.len())
        .filter(|&i| {
            let others: Vec<u64> = gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &g)| g)
                .collect();
            !others.is_empty() && Monoid::new(&others).contains(gens[i])
        })
        .map(|i| gens[i])
        .collect()
}

/// (q^(n-1), q^(n-1) + q^(r-1), q^n + q^(n-r), q^(2r-1) + q^(n-r-1),
/// q^(2r) - q^n + q^r + 1), in the order the telescopic test needs.
pub fn weierstrass_generators(q: u64, n: u32, r: u32) -> Result<Vec<u64>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n = {n}, need n >= 3")));
    }
    if 2 * r <= n || r >= n {
        return Err(Error::InvalidParameter(format!(
            "r = {r} must satisfy n/2 < r < n"
        )));
    }
    let pw = |k: u32| q.checked_pow(k).ok_or(Error::Overflow("generator"));
    let add = |a: u64, b: u64| a.checked_add(b).ok_or(Error::Overflow("generator"));
    Ok(vec![
        pw(n - 1)?,
        add(pw(n - 1)?, pw(r - 1)?)?,
        add(pw(n)?, pw(n - r)?)?,
        add(pw(2 * r - 1)?, pw(n - r - 1)?)?,
        add(pw(2 * r)? - pw(n)?, add(pw(r)?, 1)?)?,
    ])
}

/// Symmetric, and the curve has exactly q^n·m_2 + 1 rational points.
pub fn castle_check(points: u64, qn: u64, s: &NumericalSemigroup) -> bool {
    s.is_symmetric() && Some(points) == qn.checked_mul(s.multiplicity()).map(|v| v + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupRecord {
    pub gens: Vec<u64>,
    pub m_2: u64,
    pub frobenius: i64,
    pub genus: u64,
    pub symmetric: bool,
    pub telescopic: bool,
    pub redundant_gens: Vec<u64>,
}

impl SemigroupRecord {
    pub fn new(s: &NumericalSemigroup) -> Self {
        SemigroupRecord {
            gens: s.gens.clone(),
            m_2: s.multiplicity(),
            frobenius: s.frobenius,
            genus: s.genus,
            symmetric: s.is_symmetric(),
            telescopic: is_telescopic(&s.gens).unwrap_or(false),
            redundant_gens: redundancy_probe(&s.gens),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Membership by dynamic programming up to `limit`.
    fn dp_members(gens: &[u64], limit: u64) -> Vec<bool> {
        let mut t = vec![false; limit as usize + 1];
        t[0] = true;
        for x in 1..=limit {
            t[x as usize] = gens.iter().any(|&g| g <= x && t[(x - g) as usize]);
        }
        t
    }

    #[test]
    fn basic_semigroups() {
        let s = NumericalSemigroup::new(&[4, 6, 10, 9, 13]).unwrap();
        assert_eq!(s.multiplicity(), 4);
        assert_eq!(s.frobenius(), 11);
        assert_eq!(s.genus(), 6);
        assert_eq!(s.gaps(), vec![1, 2, 3, 5, 7, 11]);
        assert!(s.is_symmetric());

        let one = NumericalSemigroup::new(&[1]).unwrap();
        assert_eq!((one.genus(), one.frobenius()), (0, -1));

        let s = NumericalSemigroup::new(&[2, 3]).unwrap();
        assert_eq!((s.genus(), s.frobenius()), (1, 1));
        assert!(s.is_symmetric());

        let s = NumericalSemigroup::new(&[3, 5, 7]).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 4]);
        assert!(!s.is_symmetric());
    }

    #[test]
    fn rejects_non_numerical() {
        assert_eq!(
            NumericalSemigroup::new(&[4, 6]).unwrap_err(),
            Error::NotNumericalSemigroup(vec![4, 6], 2)
        );
        assert!(NumericalSemigroup::new(&[]).is_err());
        assert!(NumericalSemigroup::new(&[0, 1]).is_err());
    }

    #[test]
    fn telescopic_examples() {
        assert!(is_telescopic(&[4, 6, 10, 9, 13]).unwrap());
        assert!(is_telescopic(&[2, 3]).unwrap());
        assert!(!is_telescopic(&[3, 5, 7]).unwrap());
        assert_eq!(prefix_gcds(&[4, 6, 10, 9, 13]), vec![4, 2, 2, 1, 1]);
        assert_eq!(telescopic_genus(&[4, 6, 10, 9, 13]).unwrap(), 6);
        assert_eq!(telescopic_genus(&[16, 20, 36, 34, 41]).unwrap(), 60);
        assert_eq!(
            telescopic_genus(&[3, 5, 7]).unwrap_err(),
            Error::NotTelescopic(vec![3, 5, 7])
        );
        for q in 2..10u64 {
            assert_eq!(telescopic_genus(&[q, q + 1]).unwrap(), q * (q - 1) / 2);
        }
    }

    #[test]
    fn order_matters() {
        assert!(is_telescopic(&[4, 6, 9]).unwrap());
        assert!(!is_telescopic(&[9, 4, 6]).unwrap());
    }

    #[test]
    fn generators_of_small_instances() {
        assert_eq!(
            weierstrass_generators(2, 3, 2).unwrap(),
            vec![4, 6, 10, 9, 13]
        );
        assert_eq!(
            weierstrass_generators(2, 5, 3).unwrap(),
            vec![16, 20, 36, 34, 41]
        );
        assert_eq!(
            weierstrass_generators(3, 3, 2).unwrap(),
            vec![9, 12, 30, 28, 64]
        );
        assert!(weierstrass_generators(2, 2, 1).is_err());
        assert_eq!(
            weierstrass_generators(1 << 20, 5, 3).unwrap_err(),
            Error::Overflow("generator")
        );
    }

    #[test]
    fn redundancy() {
        assert_eq!(redundancy_probe(&[4, 6, 10, 9, 13]), vec![10, 13]);
        assert!(redundancy_probe(&[2, 3]).is_empty());
    }

    #[test]
    fn castle() {
        let s = NumericalSemigroup::new(&[4, 6, 10, 9, 13]).unwrap();
        assert!(castle_check(33, 8, &s));
        assert!(!castle_check(34, 8, &s));
    }

    #[test]
    fn apery_membership_matches_dp() {
        for gens in [
            &[4, 6, 10, 9, 13][..],
            &[9, 12, 30, 28, 64],
            &[16, 20, 36, 34, 41],
            &[5, 7, 11],
            &[6, 10, 15],
            &[3, 5, 7],
        ] {
            let s = NumericalSemigroup::new(gens).unwrap();
            let limit = 400;
            let table = dp_members(gens, limit);
            for x in 0..=limit {
                assert_eq!(s.contains(x), table[x as usize], "{gens:?} at {x}");
            }
            let gaps = table.iter().filter(|&&b| !b).count() as u64;
            assert_eq!(s.genus(), gaps, "{gens:?}");
        }
    }
}
