//! An independent oracle for `Hⁿ(A, A)` with `A = 𝔽_p[x]/(xᵐ)`: a minimal
//! resolution over `Aᵉ = 𝔽_p[x, y]/(xᵐ, yᵐ)` built by brute force with its own
//! arithmetic mod p, then `Hom_{Aᵉ}(P, A)`. Shared with the acceptance target.

type Col = Vec<u64>;

struct Fp(u64);

impl Fp {
    fn inv(&self, a: u64) -> u64 {
        let mut r = 1;
        let (mut b, mut e) = (a % self.0, self.0 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.0;
            }
            b = b * b % self.0;
            e >>= 1;
        }
        r
    }

    /// Row echelon form of the columns as rows; returns (rows, pivots).
    fn echelon(&self, cols: &[Col]) -> (Vec<Col>, Vec<usize>) {
        let p = self.0;
        let mut rows: Vec<Col> = Vec::new();
        let mut pivots = Vec::new();
        for c in cols {
            let mut v = c.clone();
            for (r, &pc) in rows.iter().zip(&pivots) {
                let f = v[pc];
                if f != 0 {
                    for k in 0..v.len() {
                        v[k] = (v[k] + (p - f) * r[k]) % p;
                    }
                }
            }
            if let Some(pc) = v.iter().position(|&x| x != 0) {
                let s = self.inv(v[pc]);
                v.iter_mut().for_each(|x| *x = *x * s % p);
                for r in rows.iter_mut() {
                    let f = r[pc];
                    if f != 0 {
                        for k in 0..r.len() {
                            r[k] = (r[k] + (p - f) * v[k]) % p;
                        }
                    }
                }
                rows.push(v);
                pivots.push(pc);
            }
        }
        (rows, pivots)
    }

    fn rank(&self, cols: &[Col]) -> usize {
        self.echelon(cols).0.len()
    }

    /// Kernel of the map whose images of the standard basis are `cols`.
    fn kernel(&self, cols: &[Col], dim_src: usize) -> Vec<Col> {
        let p = self.0;
        if dim_src == 0 {
            return Vec::new();
        }
        let rows_n = cols.first().map_or(0, |c| c.len());
        // rows of the matrix, reduced
        let mat_rows: Vec<Col> = (0..rows_n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let (red, pivots) = self.echelon(&mat_rows);
        let free: Vec<usize> = (0..dim_src).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&fj| {
                let mut v = vec![0; dim_src];
                v[fj] = 1;
                for (r, &pc) in red.iter().zip(&pivots) {
                    v[pc] = (p - r[fj]) % p;
                }
                v
            })
            .collect()
    }
}

pub struct Truncated {
    pub p: u64,
    pub m: usize,
}

impl Truncated {
    fn e(&self) -> usize {
        self.m * self.m
    }

    /// `xᵃ yᵇ · v` for `v ∈ (Aᵉ)^r`.
    fn act(&self, a: usize, b: usize, v: &Col) -> Col {
        let (m, e) = (self.m, self.e());
        let mut out = vec![0; v.len()];
        for (k, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (g, i, j) = (k / e, (k % e) / m, k % m);
            if i + a < m && j + b < m {
                out[g * e + (i + a) * m + j + b] = c;
            }
        }
        out
    }

    /// Minimal generators of the submodule spanned by `k`.
    fn minimal_generators(&self, f: &Fp, k: &[Col]) -> Vec<Col> {
        let mut span: Vec<Col> = Vec::new();
        for v in k {
            span.push(self.act(1, 0, v));
            span.push(self.act(0, 1, v));
        }
        let mut rank = f.rank(&span);
        let mut gens = Vec::new();
        for v in k {
            span.push(v.clone());
            let r = f.rank(&span);
            if r > rank {
                rank = r;
                gens.push(v.clone());
            } else {
                span.pop();
            }
        }
        gens
    }

    /// Images of the `𝔽_p`-basis `xᵃ yᵇ eᵢ` of `(Aᵉ)^s` under `eᵢ ↦ gᵢ`.
    fn extend(&self, gens: &[Col]) -> Vec<Col> {
        let m = self.m;
        gens.iter()
            .flat_map(|g| (0..m * m).map(move |ab| self.act(ab / m, ab % m, g)))
            .collect()
    }

    /// Dimensions of `Hⁿ(A, A)` for `0 ≤ n ≤ top`.
    pub fn hochschild_dims(&self, top: usize) -> Vec<usize> {
        let f = Fp(self.p);
        let (m, e) = (self.m, self.e());
        // ε: Aᵉ → A, xᵃ yᵇ ↦ x^{a+b}
        let eps: Vec<Col> = (0..e)
            .map(|k| {
                let mut v = vec![0; m];
                if k / m + k % m < m {
                    v[k / m + k % m] = 1;
                }
                v
            })
            .collect();
        let mut kernel = f.kernel(&eps, e);
        // generators of P_{n+1} as elements of P_n, i.e. d_{n+1}
        let mut gens: Vec<Vec<Col>> = Vec::new();
        let mut ranks = vec![1usize];
        for _ in 0..=top {
            let g = self.minimal_generators(&f, &kernel);
            let images = self.extend(&g);
            kernel = f.kernel(&images, g.len() * e);
            ranks.push(g.len());
            gens.push(g);
        }
        // δⁿ: A^{r_n} → A^{r_{n+1}}, (δf)_j = f(g_j)
        let delta = |n: usize| -> Vec<Col> {
            let (rn, rn1) = (ranks[n], ranks[n + 1]);
            (0..rn * m)
                .map(|col| {
                    let (i, c) = (col / m, col % m);
                    let mut v = vec![0; rn1 * m];
                    for (j, g) in gens[n].iter().enumerate() {
                        for a in 0..m {
                            for b in 0..m {
                                let coef = g[i * e + a * m + b];
                                if coef != 0 && a + b + c < m {
                                    let k = j * m + a + b + c;
                                    v[k] = (v[k] + coef) % self.p;
                                }
                            }
                        }
                    }
                    v
                })
                .collect()
        };
        let ranks_delta: Vec<usize> = (0..=top).map(|n| f.rank(&delta(n))).collect();
        (0..=top)
            .map(|n| {
                let cochains = ranks[n] * m;
                let cycles = cochains - ranks_delta[n];
                let boundaries = if n == 0 { 0 } else { ranks_delta[n - 1] };
                cycles - boundaries
            })
            .collect()
    }
}
