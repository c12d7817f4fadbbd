use leibniz::heisenberg::{
    evaluate_terms, leibniz_witness, random_assignment, random_element, relatively_free_dimension,
    Assignment, EvaluationFunctionals, HElement,
};
use leibniz::space::MultilinearSpace;
use leibniz::term::{parse_lincomb, Generator, TermComb};
use leibniz::variety::{builtin_variety, skew_word_identities, tideal_multilinear};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn basis_elements(max_t: usize) -> Vec<HElement> {
    let mut v = vec![HElement::a(), HElement::b(), HElement::c()];
    v.extend((0..=max_t).map(HElement::t_pow));
    v
}

fn vanishes_on_basis(f: &TermComb, k: u32, elems: &[HElement]) -> bool {
    let mut idx = vec![0usize; k as usize];
    loop {
        let a: Assignment = idx
            .iter()
            .enumerate()
            .map(|(i, &e)| (Generator::x(i as u32 + 1), elems[e].clone()))
            .collect();
        if !evaluate_terms(f, &a).unwrap().is_zero() {
            return false;
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return true;
            }
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[test]
fn products_of_basis_elements() {
    let t = |s: &str| s.parse::<HElement>().unwrap();
    let mul = |x: &str, y: &str| leibniz::heisenberg::h_mul(&t(x), &t(y));
    assert_eq!(mul("b", "a"), t("c"));
    assert_eq!(mul("a", "b"), t("-1*c"));
    assert_eq!(mul("[t^3]", "a"), t("[3*t^2]"));
    assert_eq!(mul("[t^3]", "b"), t("[t^4]"));
    assert_eq!(mul("[t^3]", "c"), t("[t^3]"));
    assert!(mul("a", "[t]").is_zero());
    assert!(mul("c", "a").is_zero());
}

#[test]
fn leibniz_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let (x, y, z) = (
            random_element(&mut rng, 4),
            random_element(&mut rng, 4),
            random_element(&mut rng, 4),
        );
        assert!(leibniz_witness(&x, &y, &z).is_zero());
    }
}

#[test]
fn small_degree_identities_vanish() {
    let elems = basis_elements(6);
    let four = parse_lincomb("x1(x2(x3x4))").unwrap();
    assert!(vanishes_on_basis(&four, 4, &elems));
    let six = &builtin_variety("V3tilde").unwrap().identities[1].element;
    assert!(vanishes_on_basis(six, 5, &elems));
    // the sign-flipped form is not an identity
    let flipped = parse_lincomb("x1(x2x5)(x3x4) - x1(x2x3)(x4x5) - x1(x2x4)(x3x5)").unwrap();
    assert!(!vanishes_on_basis(&flipped, 5, &elems));
    // a nontrivial Leibniz polynomial
    assert!(!vanishes_on_basis(&parse_lincomb("x1x2x3").unwrap(), 3, &elems));
}

#[test]
fn skew_words_vanish_under_random_substitutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for id in skew_word_identities(8) {
        let k = id.element.basis_elements().next().unwrap().degree();
        for _ in 0..10 {
            let a = random_assignment(&mut rng, k, 3);
            assert!(evaluate_terms(&id.element, &a).unwrap().is_zero(), "{}", id.name);
        }
    }
}

#[test]
fn relatively_free_dimensions() {
    let dims: Vec<usize> = (1..=5).map(relatively_free_dimension).collect();
    assert_eq!(dims, [1, 2, 6, 16, 45]);
}

#[test]
fn tideal_generators_vanish_on_the_algebra() {
    let v3 = builtin_variety("V3tilde").unwrap();
    for n in 4..=6 {
        let q = tideal_multilinear(&v3, n).unwrap();
        let f = EvaluationFunctionals::compute(n);
        let space = MultilinearSpace::new(n);
        for row in q.ideal().basis() {
            assert!(f.annihilates(&space.comb_dense(&row)).unwrap());
        }
    }
}

#[test]
fn tideal_generators_vanish_on_basis_substitutions() {
    let v3 = builtin_variety("V3tilde").unwrap();
    let q = tideal_multilinear(&v3, 4).unwrap();
    let space = MultilinearSpace::new(4);
    let elems = basis_elements(8);
    for row in q.ideal().basis() {
        assert!(vanishes_on_basis(&space.comb_dense(&row).to_terms(), 4, &elems));
    }
}
