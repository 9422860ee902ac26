//! Nice sets: the canonical non-expanding families of both graphs.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf2::{
    gaussian_binomial, sample_subspace, AffineSubspace, GF2Matrix, GF2Vector, Subspace,
};
use crate::rng::Prng;

/// `{V : Q ⊆ V ⊆ W}` inside G(l, n), of order `r = dim Q + codim W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NiceSetGrassmann {
    l: usize,
    q: Subspace,
    w: Subspace,
}

impl NiceSetGrassmann {
    pub fn new(l: usize, q: Subspace, w: Subspace) -> Result<Self> {
        if q.ambient() != w.ambient() {
            return Err(Error::Parameter("Q and W live in different spaces".into()));
        }
        if !q.is_subspace_of(&w) {
            return Err(Error::Parameter("nice set needs Q ⊆ W".into()));
        }
        if l > q.ambient() {
            return Err(Error::Parameter(format!("l={l} exceeds n={}", q.ambient())));
        }
        Ok(Self { l, q, w })
    }

    /// The whole vertex set (`r = 0`).
    pub fn everything(l: usize, n: usize) -> Self {
        Self {
            l,
            q: Subspace::zero(n),
            w: Subspace::full(n),
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.q.ambient()
    }

    pub fn q(&self) -> &Subspace {
        &self.q
    }

    pub fn w(&self) -> &Subspace {
        &self.w
    }

    /// `(dim Q, codim W)`.
    pub fn orders(&self) -> (usize, usize) {
        (self.q.dim(), self.n() - self.w.dim())
    }

    pub fn r(&self) -> usize {
        let (r1, r2) = self.orders();
        r1 + r2
    }

    pub fn is_empty(&self) -> bool {
        self.q.dim() > self.l || self.w.dim() < self.l
    }

    pub fn contains(&self, v: &Subspace) -> bool {
        v.dim() == self.l && self.q.is_subspace_of(v) && v.is_subspace_of(&self.w)
    }

    pub fn count(&self) -> BigUint {
        if self.is_empty() {
            return BigUint::ZERO;
        }
        gaussian_binomial(self.w.dim() - self.q.dim(), self.l - self.q.dim())
    }

    /// A complement of `Q` inside `W`, as rows.
    fn lift_basis(&self) -> GF2Matrix {
        let mut rows: Vec<GF2Vector> = Vec::new();
        let mut acc = self.q.clone();
        for row in self.w.basis().row_iter() {
            if !acc.contains(&row) {
                acc = acc
                    .sum(&Subspace::span(self.n(), std::slice::from_ref(&row)).unwrap())
                    .unwrap();
                rows.push(row);
            }
        }
        GF2Matrix::from_rows(self.n(), &rows).unwrap()
    }

    fn lift(&self, lift: &GF2Matrix, x: &Subspace) -> Subspace {
        let image = x.basis().mul(lift).expect("quotient coordinates");
        Subspace::from_matrix(&image.stack(self.q.basis()).expect("same ambient"))
    }

    /// Every member, through the quotient `W / Q`.
    pub fn members(&self) -> Vec<Subspace> {
        if self.is_empty() {
            return Vec::new();
        }
        let lift = self.lift_basis();
        Subspace::enumerate(lift.rows(), self.l - self.q.dim())
            .map(|x| self.lift(&lift, &x))
            .collect()
    }

    /// Uniform member: a uniform subspace of the quotient, lifted.
    pub fn sample(&self, prng: &mut Prng) -> Result<Subspace> {
        if self.is_empty() {
            return Err(Error::Domain("cannot sample an empty nice set".into()));
        }
        let lift = self.lift_basis();
        let x = sample_subspace(prng, lift.rows(), self.l - self.q.dim());
        Ok(self.lift(&lift, &x))
    }

    /// All nice sets of order at most `r_max` in G(l, n), grouped by `(dim Q,
    /// codim W)` and then in subspace enumeration order. Empty families are
    /// skipped.
    pub fn enumerate(l: usize, n: usize, r_max: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for r in 0..=r_max {
            for r1 in 0..=r.min(l) {
                let r2 = r - r1;
                if r2 > n - l {
                    continue;
                }
                let ws: Vec<Subspace> = Subspace::enumerate(n, n - r2).collect();
                for q in Subspace::enumerate(n, r1) {
                    for w in &ws {
                        if q.is_subspace_of(w) {
                            out.push(Self {
                                l,
                                q: q.clone(),
                                w: w.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Solutions `M` in `Mat_{l,n}` of right constraints `M q = t` and left
/// constraints `r^T M = s^T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NiceSetShortcode {
    l: usize,
    n: usize,
    right: Vec<(GF2Vector, GF2Vector)>,
    left: Vec<(GF2Vector, GF2Vector)>,
}

impl NiceSetShortcode {
    /// Builds the set; each constraint list must be linearly independent in
    /// its `q` (resp. `r`) part.
    pub fn new(
        l: usize,
        n: usize,
        right: Vec<(GF2Vector, GF2Vector)>,
        left: Vec<(GF2Vector, GF2Vector)>,
    ) -> Result<Self> {
        for (q, t) in &right {
            if q.len() != n || t.len() != l {
                return Err(Error::Parameter(format!(
                    "right constraint needs q of length {n} and t of length {l}"
                )));
            }
        }
        for (r, s) in &left {
            if r.len() != l || s.len() != n {
                return Err(Error::Parameter(format!(
                    "left constraint needs r of length {l} and s of length {n}"
                )));
            }
        }
        let qs: Vec<GF2Vector> = right.iter().map(|(q, _)| q.clone()).collect();
        let rs: Vec<GF2Vector> = left.iter().map(|(r, _)| r.clone()).collect();
        if Subspace::span(n, &qs)?.dim() != qs.len() || Subspace::span(l, &rs)?.dim() != rs.len() {
            return Err(Error::Parameter(
                "constraint vectors must be independent".into(),
            ));
        }
        Ok(Self { l, n, right, left })
    }

    pub fn everything(l: usize, n: usize) -> Self {
        Self {
            l,
            n,
            right: Vec::new(),
            left: Vec::new(),
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn right(&self) -> &[(GF2Vector, GF2Vector)] {
        &self.right
    }

    pub fn left(&self) -> &[(GF2Vector, GF2Vector)] {
        &self.left
    }

    pub fn r(&self) -> usize {
        self.right.len() + self.left.len()
    }

    /// `r_i^T t_j = s_i^T q_j` for every left `i` and right `j`.
    pub fn cross_compatible(&self) -> bool {
        self.left
            .iter()
            .all(|(r, s)| self.right.iter().all(|(q, t)| r.dot(t) == s.dot(q)))
    }

    pub fn contains(&self, m: &GF2Matrix) -> bool {
        m.shape() == (self.l, self.n)
            && self.right.iter().all(|(q, t)| &m.mul_vec(q) == t)
            && self.left.iter().all(|(r, s)| &m.vec_mul(r) == s)
    }

    /// The constraints as a linear system on the packed matrix index.
    fn system(&self) -> (GF2Matrix, GF2Vector) {
        let (l, n) = (self.l, self.n);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (q, t) in &self.right {
            for i in 0..l {
                let mut e = GF2Vector::zeros(l * n);
                for j in q.ones_iter() {
                    e.set(i * n + j, true);
                }
                rows.push(e);
                rhs.push(t.get(i));
            }
        }
        for (r, s) in &self.left {
            for j in 0..n {
                let mut e = GF2Vector::zeros(l * n);
                for i in r.ones_iter() {
                    e.set(i * n + j, true);
                }
                rows.push(e);
                rhs.push(s.get(j));
            }
        }
        (
            GF2Matrix::from_rows(l * n, &rows).expect("rows have length l*n"),
            GF2Vector::from_bools(&rhs),
        )
    }

    /// The member set as an affine subspace of packed indices, `None` when
    /// empty.
    pub fn affine(&self) -> Option<AffineSubspace> {
        let (e, rhs) = self.system();
        AffineSubspace::solve(&e, &rhs)
    }

    pub fn is_empty(&self) -> bool {
        self.affine().is_none()
    }

    /// `log2 |T|`, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.affine().map(|a| a.dim())
    }

    /// Packed indices of the members, sorted. Needs `l * n <= 64`.
    pub fn members(&self) -> Vec<u64> {
        let mut out: Vec<u64> = match self.affine() {
            Some(a) => a.elements().map(|v| v.to_u64()).collect(),
            None => Vec::new(),
        };
        out.sort_unstable();
        out
    }

    /// Every nonempty nice set with `r <= r_max`: constraint vectors are the
    /// RREF basis rows of every subspace of the right dimension, values range
    /// over everything, and cross-incompatible combinations are dropped.
    pub fn enumerate(l: usize, n: usize, r_max: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for r in 0..=r_max {
            for r1 in 0..=r.min(l) {
                let r2 = r - r1;
                if r2 > n {
                    continue;
                }
                let lefts = constraint_lists(l, n, r1);
                let rights = constraint_lists(n, l, r2);
                for left in &lefts {
                    for right in &rights {
                        let set = Self {
                            l,
                            n,
                            right: right.clone(),
                            left: left.clone(),
                        };
                        if set.cross_compatible() {
                            out.push(set);
                        }
                    }
                }
            }
        }
        out
    }
}

/// All independent lists of `k` vectors in GF(2)^a (RREF bases) paired with
/// every value assignment in GF(2)^b.
fn constraint_lists(a: usize, b: usize, k: usize) -> Vec<Vec<(GF2Vector, GF2Vector)>> {
    let mut out = Vec::new();
    for sub in Subspace::enumerate(a, k) {
        let keys: Vec<GF2Vector> = sub.basis().row_iter().collect();
        let total = 1u64 << (b * k);
        for values in 0..total {
            out.push(
                keys.iter()
                    .enumerate()
                    .map(|(i, key)| {
                        (
                            key.clone(),
                            GF2Vector::from_u64(b, (values >> (i * b)) & mask(b)),
                        )
                    })
                    .collect(),
            );
        }
    }
    out
}

fn mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}
