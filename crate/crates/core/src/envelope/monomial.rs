//! Monomials of the free differential (Poisson) supercommutative algebra.
//!
//! A letter is either a derivative-generator `x^(n)` or, in free-Poisson
//! mode, a bracket word in such generators. Monomials are sorted multisets
//! of letters; the Koszul sign incurred by sorting is absorbed into the
//! coefficient, and a repeated odd letter kills the monomial.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::exactpoly::Rational;
use crate::gdcore::Parity;

/// Derivative generator `x_gen^(order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub gen: u16,
    pub order: u16,
}

impl Atom {
    pub fn new(gen: usize, order: u32) -> Atom {
        Atom { gen: gen as u16, order: order as u16 }
    }

    pub fn bump(self) -> Atom {
        Atom { gen: self.gen, order: self.order + 1 }
    }
}

/// A letter of the monomial alphabet. `Lie { word, square: false }` is the
/// standard bracketing of a Lyndon word; `square: true` denotes the element
/// `[w,w]` for an odd Lyndon word `w` (stored as the half-word).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Atom(Atom),
    Lie { word: Vec<Atom>, square: bool },
}

impl Letter {
    pub fn parity(&self, parities: &[Parity]) -> Parity {
        match self {
            Letter::Atom(a) => parities[a.gen as usize],
            Letter::Lie { word, square } => {
                if *square {
                    Parity::Even
                } else {
                    word.iter().fold(Parity::Even, |p, a| p.plus(parities[a.gen as usize]))
                }
            }
        }
    }

    /// Number of derivative-generators inside the letter.
    pub fn degree(&self) -> u32 {
        match self {
            Letter::Atom(_) => 1,
            Letter::Lie { word, square } => {
                let l = word.len() as u32;
                if *square {
                    2 * l
                } else {
                    l
                }
            }
        }
    }

    /// Weight: `(total derivative order) − 1` uniformly, since each extra
    /// factor inside a bracket word contributes `wt x = −1` and each bracket
    /// contributes `+1`.
    pub fn weight(&self) -> i64 {
        match self {
            Letter::Atom(a) => a.order as i64 - 1,
            Letter::Lie { word, square } => {
                let s: i64 = word.iter().map(|a| a.order as i64).sum();
                if *square {
                    2 * s - 1
                } else {
                    s - 1
                }
            }
        }
    }

    pub fn max_order(&self) -> u32 {
        match self {
            Letter::Atom(a) => a.order as u32,
            Letter::Lie { word, .. } => word.iter().map(|a| a.order as u32).max().unwrap_or(0),
        }
    }

    /// Bracket nesting depth: 0 for atoms, expanded word length − 1 for
    /// bracket letters.
    pub fn depth(&self) -> u32 {
        self.degree() - 1
    }
}

/// Sorted multiset of letters with absorbed Koszul sign.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffMonomial {
    pub letters: Vec<Letter>,
}

impl DiffMonomial {
    pub fn one() -> DiffMonomial {
        DiffMonomial { letters: Vec::new() }
    }

    pub fn is_one(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn single(l: Letter) -> DiffMonomial {
        DiffMonomial { letters: vec![l] }
    }

    pub fn degree(&self) -> u32 {
        self.letters.iter().map(|l| l.degree()).sum()
    }

    pub fn weight(&self) -> i64 {
        self.letters.iter().map(|l| l.weight()).sum()
    }

    pub fn parity(&self, parities: &[Parity]) -> Parity {
        self.letters.iter().fold(Parity::Even, |p, l| p.plus(l.parity(parities)))
    }

    pub fn max_order(&self) -> u32 {
        self.letters.iter().map(|l| l.max_order()).max().unwrap_or(0)
    }

    pub fn max_depth(&self) -> u32 {
        self.letters.iter().map(|l| l.depth()).max().unwrap_or(0)
    }

    /// Sort key used for pivot selection: high degree and high derivative
    /// order are eliminated first, so quotient representatives stay small
    /// and their derivatives stay inside the window.
    pub fn column_key(&self) -> (u32, u32, Vec<Letter>) {
        (self.degree(), self.max_order(), self.letters.clone())
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters.iter().map(|l| display_letter(l, names)).collect::<Vec<_>>().join("*")
    }
}

pub fn display_atom(a: &Atom, names: &[String]) -> String {
    let base = &names[a.gen as usize];
    match a.order {
        0 => base.clone(),
        1 => format!("{base}'"),
        2 => format!("{base}''"),
        n => format!("{base}^({n})"),
    }
}

pub fn display_letter(l: &Letter, names: &[String]) -> String {
    match l {
        Letter::Atom(a) => display_atom(a, names),
        Letter::Lie { word, square } => {
            if *square {
                let inner = display_word(word, names);
                format!("{{{inner},{inner}}}")
            } else {
                display_word(word, names)
            }
        }
    }
}

fn display_word(word: &[Atom], names: &[String]) -> String {
    if word.len() == 1 {
        return display_atom(&word[0], names);
    }
    let (left, right) = super::lie::std_factorize(word);
    let mut s = String::new();
    let _ = write!(s, "{{{},{}}}", display_word(left, names), display_word(right, names));
    s
}

/// Sort letters into canonical order, tracking the Koszul sign; `None` when
/// a repeated odd letter makes the monomial vanish.
pub fn sort_letters(
    mut letters: Vec<Letter>,
    parities: &[Parity],
) -> Option<(DiffMonomial, Rational)> {
    let mut sign = 1i64;
    // insertion sort; each adjacent transposition of two odd letters flips
    // the sign
    for i in 1..letters.len() {
        let mut j = i;
        while j > 0 && letters[j] < letters[j - 1] {
            if letters[j].parity(parities).is_odd() && letters[j - 1].parity(parities).is_odd() {
                sign = -sign;
            }
            letters.swap(j, j - 1);
            j -= 1;
        }
    }
    for w in letters.windows(2) {
        if w[0] == w[1] && w[0].parity(parities).is_odd() {
            return None;
        }
    }
    Some((DiffMonomial { letters }, crate::exactpoly::rat_int(sign)))
}

/// Element of the (truncated) free differential supercommutative algebra:
/// finite rational combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EnvElement {
    pub terms: BTreeMap<DiffMonomial, Rational>,
}

impl EnvElement {
    pub fn zero() -> EnvElement {
        EnvElement::default()
    }

    pub fn one() -> EnvElement {
        let mut e = EnvElement::zero();
        e.add_term(DiffMonomial::one(), crate::exactpoly::rat_int(1));
        e
    }

    pub fn from_monomial(m: DiffMonomial) -> EnvElement {
        let mut e = EnvElement::zero();
        e.add_term(m, crate::exactpoly::rat_int(1));
        e
    }

    pub fn atom(gen: usize, order: u32) -> EnvElement {
        EnvElement::from_monomial(DiffMonomial::single(Letter::Atom(Atom::new(gen, order))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: DiffMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> EnvElement {
        if c.is_zero() {
            return EnvElement::zero();
        }
        EnvElement {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &EnvElement, parities: &[Parity]) -> EnvElement {
        let mut out = EnvElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut letters = m1.letters.clone();
                letters.extend(m2.letters.iter().cloned());
                if let Some((mono, sign)) = sort_letters(letters, parities) {
                    out.add_term(mono, c1 * c2 * sign);
                }
            }
        }
        out
    }

    /// Leibniz extension of `d`; `x^(n) ↦ x^(n+1)` on atoms, distribution
    /// over the bracket word on Lie letters.
    pub fn d(&self, parities: &[Parity]) -> EnvElement {
        let mut out = EnvElement::zero();
        for (m, c) in &self.terms {
            for (i, l) in m.letters.iter().enumerate() {
                // d is even, so no Koszul signs appear
                let dl: Vec<(Letter, Rational)> = match l {
                    Letter::Atom(a) => {
                        vec![(Letter::Atom(a.bump()), crate::exactpoly::rat_int(1))]
                    }
                    _ => super::lie::d_letter(l, parities),
                };
                for (nl, dc) in dl {
                    let mut letters = m.letters.clone();
                    letters[i] = nl;
                    if let Some((mono, sign)) = sort_letters(letters, parities) {
                        out.add_term(mono, c * &dc * sign);
                    }
                }
            }
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let ms = m.display(names);
            let cs = if c == &crate::exactpoly::rat_int(1) && !m.is_one() {
                ms
            } else if c == &crate::exactpoly::rat_int(-1) && !m.is_one() {
                format!("-{ms}")
            } else {
                let coef = if c.denom() == &num_bigint::BigInt::from(1) {
                    format!("{}", c.numer())
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                };
                if m.is_one() {
                    coef
                } else {
                    format!("{coef}*{ms}")
                }
            };
            parts.push(cs);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}
