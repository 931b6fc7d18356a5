//! Normal forms in the free Lie superalgebra on derivative-generators.
//!
//! Basis letters are standard bracketings of Lyndon words over the atom
//! alphabet, together with the squares `[w,w]` for odd Lyndon words `w`.
//! Brackets of basis letters are rewritten into the basis with the super
//! Jacobi identity; Koszul signs appear exactly when two odd factors
//! transpose.

use crate::exactpoly::{rat_int, Rational};
use crate::gdcore::Parity;

use super::monomial::{Atom, Letter};

pub type LinComb = Vec<(Letter, Rational)>;

/// `w` is Lyndon: strictly smaller than each of its proper suffixes.
pub fn is_lyndon(word: &[Atom]) -> bool {
    if word.is_empty() {
        return false;
    }
    (1..word.len()).all(|i| word < &word[i..])
}

/// Standard factorization `w = u·v` with `v` the lexicographically smallest
/// proper suffix. Both factors of a Lyndon word are Lyndon.
pub fn std_factorize(word: &[Atom]) -> (&[Atom], &[Atom]) {
    debug_assert!(word.len() >= 2);
    let split = (1..word.len()).min_by_key(|&i| &word[i..]).unwrap();
    (&word[..split], &word[split..])
}

fn word_of(l: &Letter) -> Vec<Atom> {
    match l {
        Letter::Atom(a) => vec![*a],
        Letter::Lie { word, square } => {
            if *square {
                let mut w = word.clone();
                w.extend(word.iter().copied());
                w
            } else {
                word.clone()
            }
        }
    }
}

fn letter_of_word(word: &[Atom]) -> Letter {
    if word.len() == 1 {
        Letter::Atom(word[0])
    } else {
        debug_assert!(is_lyndon(word));
        Letter::Lie { word: word.to_vec(), square: false }
    }
}

fn word_parity(word: &[Atom], parities: &[Parity]) -> Parity {
    word.iter().fold(Parity::Even, |p, a| p.plus(parities[a.gen as usize]))
}

fn merge(into: &mut LinComb, item: (Letter, Rational)) {
    use num_traits::Zero;
    if item.1.is_zero() {
        return;
    }
    if let Some(e) = into.iter_mut().find(|(l, _)| *l == item.0) {
        e.1 += item.1;
    } else {
        into.push(item);
    }
    into.retain(|(_, c)| !c.is_zero());
}

fn scale(comb: LinComb, c: &Rational) -> LinComb {
    comb.into_iter().map(|(l, k)| (l, k * c)).collect()
}

/// Normal form of `[l1, l2]` in the super-Lyndon basis.
pub fn nf_bracket(l1: &Letter, l2: &Letter, parities: &[Parity]) -> LinComb {
    nf_bracket_rec(l1, l2, parities, 0)
}

fn nf_bracket_rec(l1: &Letter, l2: &Letter, parities: &[Parity], depth: usize) -> LinComb {
    assert!(depth < 64, "bracket rewriting did not terminate");
    // [u,[u,u]] = 0 for odd u: the Jacobi identity forces 3[u,[u,u]] = 0
    match (l1, l2) {
        (Letter::Lie { word, square: true }, other)
        | (other, Letter::Lie { word, square: true })
            if word_of(other) == *word =>
        {
            return Vec::new();
        }
        _ => {}
    }
    // squares expand through the Jacobi identity: [[w,w],C] = 2[w,[w,C]]
    if let Letter::Lie { word, square: true } = l1 {
        let half = letter_of_word(word);
        let inner = nf_bracket_rec(&half, l2, parities, depth + 1);
        let mut out = LinComb::new();
        for (l, c) in inner {
            for item in nf_bracket_rec(&half, &l, parities, depth + 1) {
                merge(&mut out, (item.0, item.1 * &c));
            }
        }
        return scale(out, &rat_int(2));
    }
    if matches!(l2, Letter::Lie { square: true, .. }) {
        // squares are even, so the flip sign is just −1
        return scale(nf_bracket_rec(l2, l1, parities, depth + 1), &rat_int(-1));
    }
    let w1 = word_of(l1);
    let w2 = word_of(l2);
    let p1 = word_parity(&w1, parities);
    let p2 = word_parity(&w2, parities);
    if w1 == w2 {
        return if p1.is_odd() {
            vec![(Letter::Lie { word: w1, square: true }, rat_int(1))]
        } else {
            Vec::new()
        };
    }
    if w1 > w2 {
        let sign = rat_int(-(p1.koszul(p2) as i64));
        return scale(nf_bracket_rec(l2, l1, parities, depth + 1), &sign);
    }
    // w1 < w2: the pair is standard when l1 is a single atom or the right
    // factor of l1's standard factorization dominates w2
    let standard = match l1 {
        Letter::Atom(_) => true,
        Letter::Lie { word, .. } => {
            let (_, u2) = std_factorize(word);
            u2 >= w2.as_slice()
        }
    };
    if standard {
        let mut word = w1;
        word.extend(w2.iter().copied());
        debug_assert!(is_lyndon(&word));
        return vec![(Letter::Lie { word, square: false }, rat_int(1))];
    }
    // Jacobi: [[A,B],C] = [A,[B,C]] − (−1)^{|A||B|}[B,[A,C]]
    let Letter::Lie { word, .. } = l1 else { unreachable!() };
    let (u1, u2) = std_factorize(word);
    let a = letter_of_word(u1);
    let b = letter_of_word(u2);
    let pa = word_parity(u1, parities);
    let pb = word_parity(u2, parities);
    let mut out = LinComb::new();
    for (l, c) in nf_bracket_rec(&b, l2, parities, depth + 1) {
        for item in nf_bracket_rec(&a, &l, parities, depth + 1) {
            merge(&mut out, (item.0, item.1 * &c));
        }
    }
    let sign = rat_int(-(pa.koszul(pb) as i64));
    for (l, c) in nf_bracket_rec(&a, l2, parities, depth + 1) {
        for item in nf_bracket_rec(&b, &l, parities, depth + 1) {
            merge(&mut out, (item.0, item.1 * &c * &sign));
        }
    }
    out
}

enum Tree {
    Leaf(Atom),
    Node(Box<Tree>, Box<Tree>),
}

fn tree_of_word(word: &[Atom]) -> Tree {
    if word.len() == 1 {
        Tree::Leaf(word[0])
    } else {
        let (l, r) = std_factorize(word);
        Tree::Node(Box::new(tree_of_word(l)), Box::new(tree_of_word(r)))
    }
}

fn tree_of_letter(l: &Letter) -> Tree {
    match l {
        Letter::Atom(a) => Tree::Leaf(*a),
        Letter::Lie { word, square } => {
            if *square {
                Tree::Node(Box::new(tree_of_word(word)), Box::new(tree_of_word(word)))
            } else {
                tree_of_word(word)
            }
        }
    }
}

fn nf_tree(t: &Tree, parities: &[Parity]) -> LinComb {
    match t {
        Tree::Leaf(a) => vec![(Letter::Atom(*a), rat_int(1))],
        Tree::Node(l, r) => {
            let lc = nf_tree(l, parities);
            let rc = nf_tree(r, parities);
            let mut out = LinComb::new();
            for (ll, c1) in &lc {
                for (rl, c2) in &rc {
                    for item in nf_bracket(ll, rl, parities) {
                        merge(&mut out, (item.0, item.1 * c1 * c2));
                    }
                }
            }
            out
        }
    }
}

fn bump_leaf(t: &Tree, target: usize, counter: &mut usize) -> Tree {
    match t {
        Tree::Leaf(a) => {
            let here = *counter;
            *counter += 1;
            if here == target {
                Tree::Leaf(a.bump())
            } else {
                Tree::Leaf(*a)
            }
        }
        Tree::Node(l, r) => {
            let nl = bump_leaf(l, target, counter);
            let nr = bump_leaf(r, target, counter);
            Tree::Node(Box::new(nl), Box::new(nr))
        }
    }
}

fn leaf_count(t: &Tree) -> usize {
    match t {
        Tree::Leaf(_) => 1,
        Tree::Node(l, r) => leaf_count(l) + leaf_count(r),
    }
}

/// `d` of a bracket letter, distributed over the bracket word and rewritten
/// back into the basis.
pub fn d_letter(l: &Letter, parities: &[Parity]) -> LinComb {
    let tree = tree_of_letter(l);
    let n = leaf_count(&tree);
    let mut out = LinComb::new();
    for i in 0..n {
        let mut counter = 0;
        let bumped = bump_leaf(&tree, i, &mut counter);
        for item in nf_tree(&bumped, parities) {
            merge(&mut out, item);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(g: u16, o: u16) -> Atom {
        Atom { gen: g, order: o }
    }

    fn atom(g: u16, o: u16) -> Letter {
        Letter::Atom(at(g, o))
    }

    #[test]
    fn lyndon_recognition() {
        assert!(is_lyndon(&[at(0, 0)]));
        assert!(is_lyndon(&[at(0, 0), at(1, 0)]));
        assert!(!is_lyndon(&[at(1, 0), at(0, 0)]));
        assert!(!is_lyndon(&[at(0, 0), at(0, 0)]));
        assert!(is_lyndon(&[at(0, 0), at(0, 0), at(1, 0)]));
        assert!(is_lyndon(&[at(0, 0), at(1, 0), at(1, 0)]));
    }

    #[test]
    fn factorize_picks_smallest_suffix() {
        let w = [at(0, 0), at(0, 0), at(1, 0)];
        let (l, r) = std_factorize(&w);
        assert_eq!(l, &[at(0, 0)]);
        assert_eq!(r, &[at(0, 0), at(1, 0)]);
    }

    fn even3() -> Vec<Parity> {
        vec![Parity::Even; 3]
    }

    fn all_letters(parities: &[Parity]) -> Vec<Letter> {
        // atoms of order ≤ 1 on 2 generators plus the length-2 words
        let atoms: Vec<Atom> =
            (0..2).flat_map(|g| (0..2).map(move |o| at(g, o))).collect();
        let mut out: Vec<Letter> = atoms.iter().map(|a| Letter::Atom(*a)).collect();
        for a in &atoms {
            for b in &atoms {
                if is_lyndon(&[*a, *b]) {
                    out.push(Letter::Lie { word: vec![*a, *b], square: false });
                }
            }
            if parities[a.gen as usize].is_odd() {
                out.push(Letter::Lie { word: vec![*a], square: true });
            }
        }
        out
    }

    fn comb_eq(mut a: LinComb, b: &LinComb) -> bool {
        for (l, c) in b {
            merge(&mut a, (l.clone(), -c.clone()));
        }
        a.is_empty()
    }

    fn letter_parity(l: &Letter, parities: &[Parity]) -> Parity {
        l.parity(parities)
    }

    #[test]
    fn bracket_is_super_anticommutative() {
        for parities in [even3(), vec![Parity::Odd, Parity::Even, Parity::Even], vec![Parity::Odd, Parity::Odd, Parity::Even]] {
            for l1 in all_letters(&parities) {
                for l2 in all_letters(&parities) {
                    if l1.degree() + l2.degree() > 4 {
                        continue;
                    }
                    let ab = nf_bracket(&l1, &l2, &parities);
                    let ba = nf_bracket(&l2, &l1, &parities);
                    let sign = rat_int(-(letter_parity(&l1, &parities)
                        .koszul(letter_parity(&l2, &parities))
                        as i64));
                    assert!(
                        comb_eq(ab.clone(), &scale(ba, &sign)),
                        "anticommutativity fails for {l1:?}, {l2:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn bracket_satisfies_super_jacobi() {
        for parities in [even3(), vec![Parity::Odd, Parity::Odd, Parity::Even]] {
            let letters = all_letters(&parities);
            // only atoms as outer arguments to keep sizes small
            let atoms: Vec<&Letter> =
                letters.iter().filter(|l| matches!(l, Letter::Atom(_))).collect();
            for a in &atoms {
                for b in &atoms {
                    for c in &letters {
                        if c.degree() > 2 {
                            continue;
                        }
                        // [a,[b,c]] − (−1)^{|a||b|}[b,[a,c]] − [[a,b],c]
                        let mut acc = LinComb::new();
                        for (l, k) in nf_bracket(b, c, &parities) {
                            for item in nf_bracket(a, &l, &parities) {
                                merge(&mut acc, (item.0, item.1 * &k));
                            }
                        }
                        let s = rat_int(-(letter_parity(a, &parities)
                            .koszul(letter_parity(b, &parities))
                            as i64));
                        for (l, k) in nf_bracket(a, c, &parities) {
                            for item in nf_bracket(b, &l, &parities) {
                                merge(&mut acc, (item.0, item.1 * &k * &s));
                            }
                        }
                        for (l, k) in nf_bracket(a, b, &parities) {
                            for item in nf_bracket(&l, c, &parities) {
                                merge(&mut acc, (item.0, -(item.1 * &k)));
                            }
                        }
                        assert!(acc.is_empty(), "jacobi fails on {a:?},{b:?},{c:?}: {acc:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn d_distributes_inside_brackets() {
        let parities = even3();
        // d{x,y} = {x',y} + {x,y'}
        let l = Letter::Lie { word: vec![at(0, 0), at(1, 0)], square: false };
        let got = d_letter(&l, &parities);
        let want: LinComb = vec![
            (Letter::Lie { word: vec![at(0, 1), at(1, 0)], square: false }, rat_int(1)),
            (Letter::Lie { word: vec![at(0, 0), at(1, 0).bump()], square: false }, rat_int(1)),
        ];
        assert!(comb_eq(got, &want));
    }

    #[test]
    fn d_of_square_is_twice_mixed_bracket() {
        // ξ odd: d[ξ,ξ] = 2[ξ,ξ'] up to basis normalization
        let parities = vec![Parity::Odd];
        let sq = Letter::Lie { word: vec![at(0, 0)], square: true };
        let got = d_letter(&sq, &parities);
        let want: LinComb =
            vec![(Letter::Lie { word: vec![at(0, 0), at(0, 1)], square: false }, rat_int(2))];
        assert!(comb_eq(got.clone(), &want), "{got:?}");
    }
}
