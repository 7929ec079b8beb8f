#![allow(dead_code)]

use rand::Rng;
use relift::perm::Permutation;
use relift::presentation::{parse_word, Letter, Presentation, Word};

pub fn names(rank: usize) -> Vec<String> {
    ["a", "b", "c", "d", "e"][..rank].iter().map(|s| s.to_string()).collect()
}

pub fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
    let g: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    let rels = rels.iter().map(|r| parse_word(r, &g).unwrap()).collect();
    Presentation::new(&g, rels).unwrap()
}

pub fn random_letters<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))).collect()
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters(random_letters(rng, rank, len))
}

pub fn random_perm<R: Rng>(rng: &mut R, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    for i in (1..degree).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_images(images).unwrap()
}

pub fn eval_perm(images: &[Permutation], w: &Word) -> Permutation {
    let degree = images[0].degree();
    w.letters().iter().fold(Permutation::identity(degree), |acc, l| {
        let g = if l.inverse { images[l.gen].inverse() } else { images[l.gen].clone() };
        acc.then(&g)
    })
}

/// A random relator killed by the given permutation images: a random word
/// raised to the order of its image.
pub fn killed_relator<R: Rng>(rng: &mut R, images: &[Permutation], max_len: usize) -> Word {
    let w = random_word(rng, images.len(), max_len);
    let order = eval_perm(images, &w).order();
    w.pow(order as i64)
}
