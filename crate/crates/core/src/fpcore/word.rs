use std::fmt;

/// A generator letter: generator index plus a sign.
///
/// Encoded as a nonzero `i32`: `g + 1` for the generator, `-(g + 1)` for its
/// inverse. The encoding orders letters as used by the canonical forms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        let code = generator as i32 + 1;
        Letter(if inverse { -code } else { code })
    }

    pub fn gen(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn inv_gen(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    /// +1 or -1.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Column index in a coset table: `2g` for the generator, `2g + 1` for
    /// its inverse.
    pub fn column(self) -> usize {
        2 * self.generator() + usize::from(self.is_inverse())
    }

    pub fn from_column(col: usize) -> Self {
        Letter::new(col / 2, col % 2 == 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

/// A word in the free group. Constructors keep it freely reduced.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word from raw letters, freely reducing them.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word {
            letters: Vec::new(),
        };
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word without reducing. Used by proof replay, which must see
    /// the unreduced intermediate words.
    pub fn from_raw(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn from_signed(pairs: &[(usize, i32)]) -> Self {
        Word::new(pairs.iter().map(|&(g, s)| Letter::new(g, s < 0)))
    }

    pub fn generator(g: usize) -> Self {
        Word {
            letters: vec![Letter::gen(g)],
        }
    }

    /// `g^e` for any integer `e`.
    pub fn power_of(g: usize, e: i64) -> Self {
        let l = Letter::new(g, e < 0);
        Word {
            letters: vec![l; e.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inverse())
    }

    /// Strips a conjugating prefix/suffix pair until the word is cyclically
    /// reduced. Assumes the word is freely reduced.
    pub fn cyclically_reduced(&self) -> Word {
        let n = self.letters.len();
        let mut i = 0;
        while i + 1 < n - i && self.letters[i] == self.letters[n - 1 - i].inverse() {
            i += 1;
        }
        Word {
            letters: self.letters[i..n - i].to_vec(),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(a), Some(b)) if self.letters.len() > 1 => *a != b.inverse(),
                _ => true,
            }
    }

    /// Rotation by `k`: `w[k..] w[..k]`.
    pub fn rotate(&self, k: usize) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return Word::identity();
        }
        let k = k % n;
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator() == g)
            .map(|l| l.sign() as i64)
            .sum()
    }

    /// Number of occurrences of generator `g`, either sign.
    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.generator() == g).count()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator()).max()
    }

    /// Lexicographically least rotation of the word or of its inverse, with
    /// the rotation offset and whether the inverse was taken.
    pub fn cyclic_canonical(&self) -> (Word, usize, bool) {
        let mut best = (self.clone(), 0, false);
        for (inv, base) in [(false, self.clone()), (true, self.inverse())] {
            for k in 0..base.len().max(1) {
                let r = base.rotate(k);
                if r < best.0 {
                    best = (r, k, inv);
                }
            }
        }
        best
    }

    /// Runs of a single generator as `(generator, exponent)` syllables.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.generator() => *e += l.sign() as i64,
                _ => out.push((l.generator(), l.sign() as i64)),
            }
        }
        out
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.letters.iter()).finish()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::new(iter)
    }
}

/// Serialized as signed generator codes: `g + 1` or `-(g + 1)`.
impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.letters.iter().map(|l| l.0))
    }
}

/// Freely reduces an arbitrary letter sequence.
pub fn free_reduce(w: &Word) -> Word {
    Word::new(w.letters.iter().copied())
}
