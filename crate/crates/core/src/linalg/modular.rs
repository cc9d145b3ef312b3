//! Row spans over `Z/p^k`.
//!
//! Rows are kept in Howell-like echelon form: every pivot column holds one
//! row whose leading entry is a power `p^w`, and the span is closed under
//! multiplication by powers of `p`, so `|span| = p^(sum of (k - w))`.

/// Sparse row over `Z/p^k`, sorted by column, entries in `1..p^k`.
pub type ModRow = Vec<(u32, u64)>;

#[derive(Debug, Clone)]
pub struct ModSpan {
    p: u64,
    k: u32,
    q: u64,
    pivots: Vec<Option<ModRow>>,
}

impl ModSpan {
    /// Empty span in `(Z/p^k)^cols`. Panics unless `p^k` fits comfortably in
    /// 32 bits, so products fit `u64`.
    pub fn new(cols: usize, p: u64, k: u32) -> Self {
        let q = p.checked_pow(k).filter(|&q| q < 1 << 31).expect("modulus too large");
        assert!(p >= 2 && k >= 1);
        Self { p, k, q, pivots: vec![None; cols] }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Reduces signed integer entries mod `p^k`.
    pub fn reduce(&self, row: &[(usize, i64)]) -> ModRow {
        let mut out: ModRow = Vec::with_capacity(row.len());
        let mut sorted: Vec<(usize, i64)> = row.to_vec();
        sorted.sort_unstable_by_key(|e| e.0);
        for (c, v) in sorted {
            let r = v.rem_euclid(self.q as i64) as u64;
            match out.last_mut() {
                Some(last) if last.0 as usize == c => last.1 = (last.1 + r) % self.q,
                _ => out.push((c as u32, r)),
            }
            if out.last().is_some_and(|l| l.1 == 0) {
                out.pop();
            }
        }
        out
    }

    fn valuation(&self, mut a: u64) -> u32 {
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    fn inverse(&self, a: u64) -> u64 {
        let (mut r0, mut r1) = (self.q as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.q as i64) as u64
    }

    fn scale(&self, r: &ModRow, s: u64) -> ModRow {
        r.iter().map(|&(c, v)| (c, v * s % self.q)).filter(|e| e.1 != 0).collect()
    }

    /// `a - f * b`.
    fn sub_mul(&self, a: &ModRow, f: u64, b: &ModRow) -> ModRow {
        let q = self.q;
        let neg = |v: u64| (q - v * f % q) % q;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let e = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                a[i - 1]
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, neg(b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, (a[i - 1].1 + neg(b[j - 1].1)) % q)
            };
            if e.1 != 0 {
                out.push(e);
            }
        }
        out
    }

    /// Adds a row (already reduced) to the span.
    pub fn insert(&mut self, row: ModRow) {
        let mut work = vec![row];
        while let Some(mut r) = work.pop() {
            while let Some(&(c, a)) = r.first() {
                let v = self.valuation(a);
                let pv = self.p.pow(v);
                match &self.pivots[c as usize] {
                    None => {
                        r = self.scale(&r, self.inverse(a / pv));
                        if v > 0 {
                            work.push(self.scale(&r, self.p.pow(self.k - v)));
                        }
                        self.pivots[c as usize] = Some(r);
                        break;
                    }
                    Some(piv) => {
                        let w = self.valuation(piv[0].1);
                        if v >= w {
                            r = self.sub_mul(&r, a / self.p.pow(w), piv);
                        } else {
                            r = self.scale(&r, self.inverse(a / pv));
                            let old = self.pivots[c as usize].replace(r.clone()).unwrap();
                            work.push(self.sub_mul(&old, self.p.pow(w - v), &r));
                            work.push(self.scale(&r, self.p.pow(self.k - v)));
                            break;
                        }
                    }
                }
            }
        }
    }

    /// `log_p |span|`.
    pub fn log_size(&self) -> u64 {
        self.pivots
            .iter()
            .flatten()
            .map(|r| u64::from(self.k - self.valuation(r[0].1)))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute_span(rows: &[Vec<u64>], q: u64) -> usize {
        let n = rows.first().map_or(0, Vec::len);
        let mut seen: HashSet<Vec<u64>> = HashSet::from([vec![0; n]]);
        let mut frontier: Vec<Vec<u64>> = vec![vec![0; n]];
        while let Some(x) = frontier.pop() {
            for r in rows {
                let y: Vec<u64> = x.iter().zip(r).map(|(a, b)| (a + b) % q).collect();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn small_examples() {
        let mut s = ModSpan::new(2, 2, 2);
        s.insert(s.reduce(&[(0, 2), (1, 1)]));
        // {k (2, 1)} has order 4
        assert_eq!(s.log_size(), 2);
        s.insert(s.reduce(&[(0, 2)]));
        assert_eq!(s.log_size(), 3);
        s.insert(s.reduce(&[(0, 1)]));
        assert_eq!(s.log_size(), 4);
    }

    proptest::proptest! {
        #[test]
        fn matches_brute_force(
            (p, k) in proptest::sample::select(vec![(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2)]),
            rows in proptest::collection::vec(proptest::collection::vec(-9i64..10, 3), 0..5),
        ) {
            let mut s = ModSpan::new(3, p, k);
            let q = s.modulus();
            let reduced: Vec<Vec<u64>> =
                rows.iter().map(|r| r.iter().map(|v| v.rem_euclid(q as i64) as u64).collect()).collect();
            for r in &rows {
                let sparse: Vec<(usize, i64)> = r.iter().copied().enumerate().collect();
                s.insert(s.reduce(&sparse));
            }
            let size = brute_span(&reduced, q);
            proptest::prop_assert_eq!(p.pow(s.log_size() as u32) as usize, size);
        }
    }
}
