//! The groups `Γ⁺ = ⟨a,b | a² = bⁿ⟩` and `Γ⁻ ≅ Z`, and the quotients used to
//! tell the groups apart.

use std::fmt;

use crate::error::{Error, Result};
use crate::forest::{Colour, ColourWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Syllable {
    A,
    /// `b^j` with `1 ≤ j < n`.
    B(usize),
}

/// `z^k · w` with `z = a² = bⁿ` central and `w` alternating between `a` and
/// blocks `b^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaPlus {
    n: usize,
    k: i64,
    w: Vec<Syllable>,
}

impl GammaPlus {
    pub fn identity(n: usize) -> GammaPlus {
        GammaPlus { n, k: 0, w: Vec::new() }
    }

    pub fn z(n: usize) -> GammaPlus {
        GammaPlus { n, k: 1, w: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z_exponent(&self) -> i64 {
        self.k
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.w
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.w.is_empty()
    }

    fn push_a(&mut self) {
        if self.w.last() == Some(&Syllable::A) {
            self.w.pop();
            self.k += 1;
        } else {
            self.w.push(Syllable::A);
        }
    }

    fn push_b(&mut self, j: usize) {
        let n = self.n;
        let mut j = j % n;
        if j == 0 {
            return;
        }
        if let Some(&Syllable::B(i)) = self.w.last() {
            self.w.pop();
            j += i;
            if j >= n {
                self.k += 1;
                j -= n;
            }
            if j == 0 {
                return;
            }
        }
        self.w.push(Syllable::B(j));
    }

    /// Letters `a`, `b`; upper case for inverses.
    pub fn parse(n: usize, s: &str) -> Result<GammaPlus> {
        let mut g = GammaPlus::identity(n);
        for (pos, c) in s.char_indices() {
            match c {
                'a' => g.push_a(),
                'b' => g.push_b(1),
                'A' => {
                    g.k -= 1;
                    g.push_a();
                }
                'B' => {
                    g.k -= 1;
                    g.push_b(n - 1);
                }
                c if c.is_whitespace() => {}
                _ => return Err(Error::Parse { pos, msg: format!("unexpected {c:?}") }),
            }
        }
        Ok(g)
    }

    pub fn from_colour_word(n: usize, w: &ColourWord) -> GammaPlus {
        let mut g = GammaPlus::identity(n);
        for c in w.letters() {
            match c {
                Colour::A => g.push_a(),
                Colour::B => g.push_b(1),
            }
        }
        g
    }

    pub fn mul(&self, other: &GammaPlus) -> GammaPlus {
        assert_eq!(self.n, other.n);
        let mut g = self.clone();
        g.k += other.k;
        for s in &other.w {
            match s {
                Syllable::A => g.push_a(),
                Syllable::B(j) => g.push_b(*j),
            }
        }
        g
    }

    pub fn inverse(&self) -> GammaPlus {
        let w = self
            .w
            .iter()
            .rev()
            .map(|s| match s {
                Syllable::A => Syllable::A,
                Syllable::B(j) => Syllable::B(self.n - j),
            })
            .collect();
        GammaPlus { n: self.n, k: -self.k - self.w.len() as i64, w }
    }

    pub fn pow(&self, e: i64) -> GammaPlus {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(GammaPlus::identity(self.n), |acc, _| acc.mul(&base))
    }

    /// Image in `Z₂ * Z_n = Γ⁺/⟨z⟩`.
    pub fn free_product_image(&self) -> FreeProductWord {
        FreeProductWord { n: self.n, w: self.w.clone() }
    }
}

impl fmt::Display for GammaPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.k {
            0 => {}
            1 => parts.push("z".to_string()),
            k => parts.push(format!("z^{k}")),
        }
        parts.extend(syllable_strings(&self.w));
        if parts.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

fn syllable_strings(w: &[Syllable]) -> impl Iterator<Item = String> + '_ {
    w.iter().map(|s| match s {
        Syllable::A => "a".to_string(),
        Syllable::B(1) => "b".to_string(),
        Syllable::B(j) => format!("b^{j}"),
    })
}

/// Reduced word in `Z₂ * Z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeProductWord {
    n: usize,
    w: Vec<Syllable>,
}

impl FreeProductWord {
    pub fn syllables(&self) -> &[Syllable] {
        &self.w
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_empty()
    }

    /// Image in `Z₂ × Z_n`.
    pub fn abelianise(&self) -> (usize, usize) {
        let a = self.w.iter().filter(|s| **s == Syllable::A).count() % 2;
        let b = self
            .w
            .iter()
            .map(|s| if let Syllable::B(j) = s { *j } else { 0 })
            .sum::<usize>()
            % self.n;
        (a, b)
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_empty() {
            return write!(f, "e");
        }
        write!(f, "{}", syllable_strings(&self.w).collect::<Vec<_>>().join(" "))
    }
}

/// `Γ⁻ ≅ Z`, via `a ↦ 1`, `b ↦ n−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GammaMinus(pub i64);

impl GammaMinus {
    pub fn from_colour_word(n: usize, w: &ColourWord) -> GammaMinus {
        GammaMinus(
            w.letters()
                .iter()
                .map(|c| match c {
                    Colour::A => 1,
                    Colour::B => n as i64 - 1,
                })
                .sum(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for GammaMinus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Invariant factors (those > 1) and free rank of `Z^cols / rowspan(rows)`.
#[allow(clippy::needless_range_loop)]
pub fn abelian_invariants(rows: &[Vec<i64>], cols: usize) -> (Vec<i64>, usize) {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let r = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(cols) {
        // pivot: smallest non-zero entry in the remaining block
        let pivot = (t..r)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = true;
        for i in t + 1..r {
            let q = m[i][t] / m[t][t];
            for j in t..cols {
                m[i][j] -= q * m[t][j];
            }
            done &= m[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = m[t][j] / m[t][t];
            for i in t..r {
                m[i][j] -= q * m[i][t];
            }
            done &= m[t][j] == 0;
        }
        if !done {
            continue;
        }
        let p = m[t][t];
        if let Some((i, j)) = (t + 1..r)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j] % p != 0)
        {
            // fold the offending row into row t and reduce again
            let _ = j;
            for jj in t..cols {
                m[t][jj] += m[i][jj];
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    let rank = cols - diag.len();
    (diag.into_iter().filter(|&d| d > 1).collect(), rank)
}

/// Invariant factors of the abelianisation of `Γ⁺/⟨z⟩ = Z₂ * Z_n`.
pub fn quotient_invariants(n: usize) -> Vec<i64> {
    abelian_invariants(&[vec![2, 0], vec![0, n as i64]], 2).0
}
