#![allow(dead_code)]

use miquel::gf::{Field, Fq2};
use miquel::plane::{circles, Circle, MobiusMap, Point};
use rand::Rng;

pub fn gf31i() -> Field {
    Field::with_options(31, 1, None, Some(vec![30])).unwrap()
}

pub fn example_pair(f: &Field) -> (Circle<'_>, Circle<'_>) {
    (
        Circle::parse(f, "B1(c=8+3*w,r=14)").unwrap(),
        Circle::parse(f, "B2(c=12+5*w,r=17)").unwrap(),
    )
}

pub fn point_at(f: &Field, idx: u64) -> Point<'_> {
    let q = f.q() as u64;
    let n = idx % (q * q + 1);
    if n == q * q {
        Point::Infinity
    } else {
        let x = f.elem((n / q) as u32).unwrap();
        let y = f.elem((n % q) as u32).unwrap();
        Point::Finite(Fq2::new(x, y))
    }
}

pub fn random_point<'f, R: Rng>(f: &'f Field, rng: &mut R) -> Point<'f> {
    point_at(f, rng.gen())
}

pub fn distinct_triple<'f, R: Rng>(f: &'f Field, rng: &mut R) -> [Point<'f>; 3] {
    loop {
        let t = [random_point(f, rng), random_point(f, rng), random_point(f, rng)];
        if t[0] != t[1] && t[0] != t[2] && t[1] != t[2] {
            return t;
        }
    }
}

pub fn random_map<'f, R: Rng>(f: &'f Field, rng: &mut R) -> MobiusMap<'f> {
    let src = distinct_triple(f, rng);
    let dst = distinct_triple(f, rng);
    MobiusMap::from_three_points(src, dst).unwrap()
}

pub fn random_circle<'f, R: Rng>(f: &'f Field, rng: &mut R) -> Circle<'f> {
    let [a, b, c] = distinct_triple(f, rng);
    miquel::plane::circle_through(a, b, c).unwrap()
}

pub fn all_circles(f: &Field) -> Vec<Circle<'_>> {
    circles(f).collect()
}
