//! Residue-class engine: polynomials reduced mod p^K, boxes
//! `c + diag(p^d) ℤ_p^n`, and valuation bounds from Taylor expansion.
//!
//! For a polynomial `h` with p-integral coefficients and a box `C` of
//! centre `c` and depths `d`,
//!
//! ```text
//! h(c + p^d y) = Σ_γ H_γh(c) p^{d·γ} y^γ
//! ```
//!
//! with `H_γ` the Hasse derivatives (integer coefficients). Hence
//! `v(h(x) − h(c)) ≥ T(h) := min_{γ≠0} (d·γ + v(H_γh(c)))` on `C`, and
//! `v(h)` is constant on `C` when `v(h(c)) < T(h)`.

use crate::exactalg::scalar::{rat_mod, Rational};
use crate::{Error, MultiPoly};

/// Modular arithmetic in ℤ/p^K with `p^K < 2^62`.
#[derive(Clone, Debug)]
pub struct Modulus {
    pub p: u64,
    pub k: u32,
    pub m: u128,
}

impl Modulus {
    pub fn new(p: u64) -> Self {
        let mut k = 0;
        let mut m: u128 = 1;
        while m * (p as u128) < (1u128 << 62) {
            m *= p as u128;
            k += 1;
        }
        Modulus { p, k, m }
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        a * b % self.m
    }

    pub fn add(&self, a: u128, b: u128) -> u128 {
        (a + b) % self.m
    }

    pub fn pow_p(&self, e: u32) -> u128 {
        (self.p as u128).pow(e)
    }

    /// Valuation of a residue; `k` stands for "at least k".
    pub fn val(&self, mut r: u128) -> i64 {
        if r == 0 {
            return self.k as i64;
        }
        let p = self.p as u128;
        let mut v = 0;
        while r % p == 0 {
            r /= p;
            v += 1;
        }
        v
    }

    pub fn reduce(&self, c: &Rational) -> Result<u128, Error> {
        rat_mod(c, self.m).ok_or_else(|| Error::BadPrime {
            p: self.p,
            reason: format!("coefficient {} is not {}-integral", crate::exactalg::scalar::fmt_rat(c), self.p),
        })
    }
}

/// Inverse of a unit modulo `m` (extended Euclid).
pub fn inv_mod(a: u128, m: u128) -> u128 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m as i128) as u128
}

/// A polynomial over ℤ/p^K.
#[derive(Clone, Debug)]
pub struct ZPoly {
    terms: Vec<(Vec<u32>, u128)>,
}

fn binom(n: u32, k: u32) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

impl ZPoly {
    pub fn new(h: &MultiPoly, md: &Modulus) -> Result<Self, Error> {
        let mut terms = Vec::new();
        for (e, c) in h.terms() {
            if e.iter().any(|&x| x < 0) {
                return Err(Error::Invalid("negative exponent in a polynomial".into()));
            }
            let r = md.reduce(c)?;
            if r != 0 {
                terms.push((e.iter().map(|&x| x as u32).collect(), r));
            }
        }
        Ok(ZPoly { terms })
    }

    pub fn eval(&self, x: &[u128], md: &Modulus) -> u128 {
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (xi, &ei) in x.iter().zip(e) {
                for _ in 0..ei {
                    t = md.mul(t, *xi);
                }
            }
            acc = md.add(acc, t);
        }
        acc
    }

    fn hasse(&self, g: &[u32], md: &Modulus) -> ZPoly {
        let mut terms: Vec<(Vec<u32>, u128)> = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().zip(g).any(|(a, b)| a < b) {
                continue;
            }
            let mut t = *c;
            for (a, b) in e.iter().zip(g) {
                t = md.mul(t, binom(*a, *b) % md.m);
            }
            if t != 0 {
                terms.push((e.iter().zip(g).map(|(a, b)| a - b).collect(), t));
            }
        }
        ZPoly { terms }
    }

    fn max_exps(&self, n: usize) -> Vec<u32> {
        let mut m = vec![0; n];
        for (e, _) in &self.terms {
            for (mi, ei) in m.iter_mut().zip(e) {
                *mi = (*mi).max(*ei);
            }
        }
        m
    }
}

/// A polynomial together with all its non-zero Hasse derivatives.
#[derive(Clone, Debug)]
pub struct Tracked {
    pub n: usize,
    /// `(γ, H_γ h)`; index 0 is `γ = 0`.
    pub hasse: Vec<(Vec<u32>, ZPoly)>,
    pub degs: Vec<u32>,
}

/// Valuation data of a tracked polynomial on one box.
#[derive(Clone, Debug)]
pub struct Bounds {
    /// `v(H_γh(c))` in the order of `Tracked::hasse` (`K` means ≥ K).
    pub vals: Vec<i64>,
    /// `T(h)`.
    pub var: i64,
    /// Blocking multi-index (argmin of `T`).
    pub blocking: Option<usize>,
    /// `h(c)` mod p^K.
    pub value: u128,
}

impl Bounds {
    pub fn v0(&self) -> i64 {
        self.vals[0]
    }

    pub fn lower(&self) -> i64 {
        self.vals[0].min(self.var)
    }

    pub fn exact(&self, md: &Modulus) -> Option<i64> {
        (self.vals[0] < self.var && self.vals[0] < md.k as i64).then_some(self.vals[0])
    }
}

impl Tracked {
    pub fn new(h: &MultiPoly, md: &Modulus) -> Result<Self, Error> {
        let n = h.nvars();
        let z = ZPoly::new(h, md)?;
        let degs = z.max_exps(n);
        let mut hasse = vec![(vec![0; n], z.clone())];
        let mut idx = vec![0u32; n];
        loop {
            // next multi-index in the box [0, degs]
            let mut i = 0;
            while i < n {
                if idx[i] < degs[i] {
                    idx[i] += 1;
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            let hz = z.hasse(&idx, md);
            if !hz.terms.is_empty() {
                hasse.push((idx.clone(), hz));
            }
        }
        Ok(Tracked { n, hasse, degs })
    }

    pub fn is_zero(&self) -> bool {
        self.hasse[0].1.terms.is_empty()
    }

    pub fn bounds(&self, c: &[u128], d: &[u32], md: &Modulus) -> Bounds {
        let mut vals = Vec::with_capacity(self.hasse.len());
        let mut value = 0;
        let mut var = i64::MAX;
        let mut blocking = None;
        for (k, (g, h)) in self.hasse.iter().enumerate() {
            let r = h.eval(c, md);
            if k == 0 {
                value = r;
            }
            let v = md.val(r);
            vals.push(v);
            if k > 0 {
                let t = v + g.iter().zip(d).map(|(a, b)| (*a as i64) * (*b as i64)).sum::<i64>();
                if t < var {
                    var = t;
                    blocking = Some(k);
                }
            }
        }
        Bounds { vals, var, blocking, value }
    }

    /// Lower bound on `v(H_{a e_i} h)` over the box, from the Taylor data.
    pub fn lower_hasse_dir(&self, b: &Bounds, d: &[u32], i: usize, a: u32) -> i64 {
        let mut best = i64::MAX;
        for (k, (g, _)) in self.hasse.iter().enumerate() {
            if g[i] < a {
                continue;
            }
            let mut t = b.vals[k];
            for (j, (gj, dj)) in g.iter().zip(d).enumerate() {
                let e = if j == i { gj - a } else { *gj };
                t += e as i64 * *dj as i64;
            }
            best = best.min(t);
        }
        best
    }

    /// Whether `H_{a e_i} h` is identically zero.
    pub fn dir_vanishes(&self, i: usize, a: u32) -> bool {
        a > self.degs[i]
    }

    pub fn blocking_index(&self, b: &Bounds) -> Option<&[u32]> {
        b.blocking.map(|k| self.hasse[k].0.as_slice())
    }
}

/// A box `c + diag(p^d) ℤ_p^n` with `0 ≤ c_i < p^{d_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub c: Vec<u128>,
    pub d: Vec<u32>,
}

impl Cell {
    pub fn depth(&self) -> u32 {
        self.d.iter().sum()
    }

    pub fn split(&self, i: usize, md: &Modulus) -> Vec<Cell> {
        let step = md.pow_p(self.d[i]);
        (0..md.p as u128)
            .map(|t| {
                let mut c = self.c.clone();
                c[i] += t * step;
                let mut d = self.d.clone();
                d[i] += 1;
                Cell { c, d }
            })
            .collect()
    }

    /// Log base p of the measure, negated.
    pub fn mass_exp(&self) -> u32 {
        self.depth()
    }
}

/// Pick a coordinate to refine: among the support of the blocking
/// multi-index, the shallowest coordinate below `max_depth`. Without a
/// blocking index, the shallowest coordinate overall.
pub fn choose_split(cell: &Cell, blocking: Option<&[u32]>, max_depth: u32) -> Option<usize> {
    let open = |i: &usize| cell.d[*i] < max_depth;
    let pick = |it: &mut dyn Iterator<Item = usize>| it.filter(open).min_by_key(|&i| (cell.d[i], i));
    if let Some(g) = blocking {
        let mut it = (0..cell.d.len()).filter(|&i| g[i] > 0);
        return pick(&mut it);
    }
    pick(&mut (0..cell.d.len()))
}

/// Integration domains.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    /// ℤ_p^n
    Lattice,
    /// `center + p^m ℤ_p^n`
    Polydisc { center: Vec<Rational>, m: u32 },
    /// `(ℤ_p^×)^n`
    Units,
}

impl Domain {
    pub fn cells(&self, n: usize, md: &Modulus) -> Result<Vec<Cell>, Error> {
        Ok(match self {
            Domain::Lattice => vec![Cell { c: vec![0; n], d: vec![0; n] }],
            Domain::Polydisc { center, m } => {
                if center.len() != n {
                    return Err(Error::Invalid(format!("polydisc centre has {} coordinates, expected {}", center.len(), n)));
                }
                let pm = md.pow_p(*m);
                let c = center.iter().map(|x| md.reduce(x).map(|r| r % pm)).collect::<Result<_, _>>()?;
                vec![Cell { c, d: vec![*m; n] }]
            }
            Domain::Units => {
                let mut cells = vec![Cell { c: vec![], d: vec![] }];
                for _ in 0..n {
                    cells = cells
                        .into_iter()
                        .flat_map(|cell| {
                            (1..md.p as u128).map(move |t| {
                                let mut c = cell.c.clone();
                                c.push(t);
                                let mut d = cell.d.clone();
                                d.push(1);
                                Cell { c, d }
                            })
                        })
                        .collect();
                }
                cells
            }
        })
    }

    pub fn measure(&self, n: usize, p: u64) -> Rational {
        let p = Rational::from_integer(p.into());
        match self {
            Domain::Lattice => Rational::from_integer(1.into()),
            Domain::Polydisc { m, .. } => num_traits::Pow::pow(p.recip(), (*m as usize) * n),
            Domain::Units => num_traits::Pow::pow((&p - Rational::from_integer(1.into())) / &p, n),
        }
    }
}

impl From<&crate::curveres::Region> for Domain {
    fn from(r: &crate::curveres::Region) -> Self {
        match r {
            crate::curveres::Region::FullLattice => Domain::Lattice,
            crate::curveres::Region::Polydisc { center, m } => Domain::Polydisc { center: vec![center.0.clone(), center.1.clone()], m: *m },
        }
    }
}


/// What a rule decides for one box.
pub enum Action<T> {
    Leaf(T),
    Split(usize),
}

pub trait Rule: Sync {
    type Out;
    fn classify(&self, cell: &Cell) -> Action<Self::Out>;
}

pub trait Accum: Clone + Send {
    type Out;
    fn leaf(&mut self, cell: &Cell, out: Self::Out);
    /// A box left unresolved when the budget ran out.
    fn leftover(&mut self, cell: &Cell);
    fn merge(&mut self, other: Self);
}

struct Part<A> {
    stack: Vec<Cell>,
    acc: A,
}

/// Worker count from `IGUSA_WORKERS`, defaulting to the available cores.
pub fn workers() -> usize {
    std::env::var("IGUSA_WORKERS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Depth-first refinement of `cells` under `rule`, visiting at most
/// `budget` boxes. The work is cut into partitions that run in rounds with
/// quotas `64·2^r` per unfinished partition; the last round shares what is
/// left of the budget evenly. The boxes visited depend neither on the
/// number of workers nor, except by extension, on the budget: a larger
/// budget visits a superset. Partition accumulators start as clones of
/// `proto`. Returns the merged accumulator and whether the budget ran out.
pub fn run<R, A>(cells: Vec<Cell>, rule: &R, budget: u64, md: &Modulus, proto: A) -> (A, bool)
where
    R: Rule,
    A: Accum<Out = R::Out>,
    R::Out: Send,
{
    use rayon::prelude::*;
    const TARGET: usize = 512;
    let mut acc = proto.clone();
    let mut visited: u64 = 0;
    // breadth-first seeding
    let mut frontier = cells;
    while !frontier.is_empty() && frontier.len() < TARGET {
        let mut next = Vec::new();
        let mut rest = frontier.into_iter();
        for cell in rest.by_ref() {
            if visited == budget {
                next.push(cell);
                break;
            }
            visited += 1;
            match rule.classify(&cell) {
                Action::Leaf(o) => acc.leaf(&cell, o),
                Action::Split(i) => next.extend(cell.split(i, md)),
            }
        }
        if visited == budget {
            next.extend(rest);
            for cell in &next {
                acc.leftover(cell);
            }
            return (acc, !next.is_empty());
        }
        frontier = next;
    }
    let mut parts: Vec<Part<A>> = frontier.into_iter().map(|c| Part { stack: vec![c], acc: proto.clone() }).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers()).build().expect("thread pool");
    let mut quota: u64 = 64;
    loop {
        let active = parts.iter().filter(|p| !p.stack.is_empty()).count() as u64;
        if active == 0 {
            break;
        }
        let fair = budget.saturating_sub(visited) / active;
        let last = fair < quota;
        let share = fair.min(quota);
        quota = quota.saturating_mul(2);
        if share == 0 {
            break;
        }
        let used: u64 = pool.install(|| {
            parts
                .par_iter_mut()
                .filter(|p| !p.stack.is_empty())
                .map(|part| {
                    let mut n = 0;
                    while n < share {
                        let Some(cell) = part.stack.pop() else { break };
                        n += 1;
                        match rule.classify(&cell) {
                            Action::Leaf(o) => part.acc.leaf(&cell, o),
                            Action::Split(i) => {
                                let mut ch = cell.split(i, md);
                                ch.reverse();
                                part.stack.extend(ch);
                            }
                        }
                    }
                    n
                })
                .sum()
        });
        visited += used;
        if last {
            break;
        }
    }
    let mut exhausted = false;
    for part in parts {
        for cell in &part.stack {
            acc.leftover(cell);
            exhausted = true;
        }
        acc.merge(part.acc);
    }
    (acc, exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::expr::parse_poly;

    #[test]
    fn modulus_and_inverse() {
        let md = Modulus::new(7);
        assert!(md.m < 1u128 << 62 && md.m * 7 >= 1u128 << 62);
        assert_eq!(md.val(49 * 3), 2);
        assert_eq!(md.val(0), md.k as i64);
        let a = 12345u128;
        assert_eq!(a * inv_mod(a, md.m) % md.m, 1);
    }

    #[test]
    fn taylor_bounds_certify_constant_valuation() {
        let md = Modulus::new(3);
        let h = Tracked::new(&parse_poly("x^2", &["x", "y"]).unwrap(), &md).unwrap();
        // x ∈ 3·2 + 27ℤ_3 has v(x²) = 2 exactly
        let b = h.bounds(&[6, 0], &[3, 0], &md);
        assert_eq!(b.exact(&md), Some(2));
        // x ∈ 3ℤ_3: undetermined
        let b = h.bounds(&[0, 0], &[1, 0], &md);
        assert_eq!(b.exact(&md), None);
        assert_eq!(b.lower(), 2);
    }

    #[test]
    fn taylor_bounds_agree_with_enumeration() {
        let md = Modulus::new(3);
        let poly = parse_poly("x^2-y^2+3*x*y^2", &["x", "y"]).unwrap();
        let h = Tracked::new(&poly, &md).unwrap();
        let z = ZPoly::new(&poly, &md).unwrap();
        for cx in 0..9u128 {
            for cy in 0..3u128 {
                let d = [2, 1];
                let b = h.bounds(&[cx, cy], &d, &md);
                // sample the box at depth 6 and compare
                let mut seen = std::collections::BTreeSet::new();
                for sx in 0..27u128 {
                    for sy in 0..27u128 {
                        let x = [cx + 9 * sx, cy + 3 * sy];
                        seen.insert(md.val(z.eval(&x, &md)).min(6));
                    }
                }
                let lo = *seen.iter().next().unwrap();
                assert!(lo >= b.lower().min(6), "{:?}", (cx, cy));
                if let Some(v) = b.exact(&md) {
                    assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![v]);
                }
            }
        }
    }
}
