//! Sparse multivariate polynomials over `Q(i)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussRat;
use super::upoly::{render_terms, UPoly};

/// Terms keyed by exponent vectors; the map order is lex with variable 0 most
/// significant, which is also the division order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, GaussRat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussRat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, GaussRat::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: GaussRat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<u32>, GaussRat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    /// Univariate polynomial in variable `var`.
    pub fn from_upoly(nvars: usize, var: usize, p: &UPoly) -> Self {
        Self::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                (e, c.clone())
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> GaussRat {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).min()
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.leading()?;
        let (de, dcinv) = (de.clone(), dc.inv().expect("nonzero"));
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((re, rc)) = r.leading() {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = rc * &dcinv;
            for (e, c) in &d.terms {
                let ex: Vec<u32> = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                r.add_term(ex, &-(c * &qc));
            }
            q.add_term(qe, &qc);
        }
        Some(q)
    }

    /// Replaces every variable by a polynomial (all images share a ring).
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        // images that are plain variables only shift exponents
        let plain: Vec<Option<usize>> = images
            .iter()
            .map(|p| match p.terms.iter().next() {
                Some((e, c)) if p.terms.len() == 1 && c.is_one() && e.iter().sum::<u32>() == 1 => e.iter().position(|&x| x == 1),
                _ => None,
            })
            .collect();
        let mut cache: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(target), p.clone()]).collect();
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut shift = vec![0u32; target];
            let mut t: Option<MPoly> = None;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if let Some(j) = plain[i] {
                    shift[j] += k;
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = Some(match t {
                    None => cache[i][k as usize].clone(),
                    Some(t) => &t * &cache[i][k as usize],
                });
            }
            match t {
                None => out.add_term(shift, c),
                Some(t) => {
                    for (te, tc) in &t.terms {
                        let ex: Vec<u32> = te.iter().zip(&shift).map(|(a, b)| a + b).collect();
                        out.add_term(ex, &(tc * c));
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Sets variable `var` to `value`, keeping the number of variables.
    pub fn eval_var(&self, var: usize, value: &GaussRat) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[var], 0);
            out.add_term(e2, &(c * &value.pow(k)));
        }
        out
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: usize, k: u32) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[var] == k).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] = 0;
                (e2, c.clone())
            }),
        )
    }

    /// Interprets a polynomial involving only `var` as univariate.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly> {
        let mut v = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k != 0) {
                return None;
            }
            let k = e[var] as usize;
            if v.len() <= k {
                v.resize(k + 1, GaussRat::zero());
            }
            v[k] = c.clone();
        }
        Some(UPoly::new(v))
    }

    /// Remaps variables into a ring with `nvars` variables: variable `i` goes to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        MPoly::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut e2 = vec![0; nvars];
                for (i, &k) in e.iter().enumerate() {
                    e2[map[i]] += k;
                }
                (e2, c.clone())
            }),
        )
    }

    pub fn partial(&self, var: usize) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (e2, c * &GaussRat::from_int(e[var] as i64))
            }),
        )
    }

    /// Renders using the given variable names and an explicit term order.
    pub fn render_with(&self, names: &[&str], order: impl Fn(&[u32], &[u32]) -> std::cmp::Ordering) -> String {
        let mut terms: Vec<(&Vec<u32>, &GaussRat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| order(a.0, b.0));
        render_terms(terms.into_iter().map(|(e, c)| (c.clone(), mono_string(names, e))))
    }

    pub fn render(&self, names: &[&str]) -> String {
        self.render_with(names, grlex_desc)
    }
}

/// Descending graded order, ties broken by comparing the last variable first.
pub fn grlex_desc(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.iter().rev().cmp(a.iter().rev()))
}

pub fn mono_string(names: &[&str], e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (name, &k) in names.iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{}^{}", name, k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i)).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.render(&refs))
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&GaussRat::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let a = &(&x + &y) * &(&x - &y);
        assert_eq!(a.div_exact(&(&x + &y)), Some(&x - &y));
        assert_eq!(a.div_exact(&(&x + &MPoly::one(2))), None);
    }

    #[test]
    fn substitution() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &x.pow(2) - &y;
        let q = p.substitute(&[&x + &y, y.clone()]);
        assert_eq!(q, &(&x + &y).pow(2) - &y);
    }
}
