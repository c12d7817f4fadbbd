use leibniz::perm::Permutation;
use leibniz::scalar::int;
use leibniz::symfunc::{
    class_size, decompose, module_character, partitions, permutation_trace, CharacterTable,
};
use leibniz::variety::{builtin_variety, tideal_multilinear};
use leibniz::Rational;
use num_traits::{One, Zero};

#[test]
fn orthonormality() {
    for n in 1..=6 {
        let table = CharacterTable::new(n);
        for l in &table.partitions {
            for k in &table.partitions {
                let ip = table.character(l).unwrap().inner(&table.character(k).unwrap()).unwrap();
                let expected = if l == k { Rational::one() } else { Rational::zero() };
                assert_eq!(ip, expected, "{l} {k}");
            }
        }
    }
}

#[test]
fn column_orthogonality() {
    for n in 1..=5 {
        let table = CharacterTable::new(n);
        let fact: i64 = (1..=n as i64).product();
        for (a, mu) in table.partitions.iter().enumerate() {
            for (b, _) in table.partitions.iter().enumerate() {
                let s: i64 = table.values.iter().map(|row| row[a] * row[b]).sum();
                let expected = if a == b { fact / class_size(mu) as i64 } else { 0 };
                assert_eq!(s, expected);
            }
        }
    }
}

#[test]
fn degrees_match_hook_lengths() {
    for n in 1..=7 {
        let table = CharacterTable::new(n);
        let identity_col = table.partitions.len() - 1;
        for (row, l) in table.values.iter().zip(&table.partitions) {
            assert_eq!(row[identity_col] as usize, l.hook_length_dimension());
        }
    }
}

#[test]
fn trace_is_a_class_function() {
    for name in ["free", "V3tilde", "V1tilde"] {
        let q = tideal_multilinear(&builtin_variety(name).unwrap(), 5).unwrap();
        for mu in partitions(5) {
            let p = Permutation::from_cycle_type(mu.parts());
            let conj = Permutation::long_cycle(5);
            let other = conj.compose(&p).compose(&conj.inverse());
            assert_eq!(other.cycle_type(), p.cycle_type());
            assert_eq!(permutation_trace(&q, &p), permutation_trace(&q, &other), "{name} {mu}");
        }
    }
}

#[test]
fn free_degree_two() {
    let q = tideal_multilinear(&builtin_variety("free").unwrap(), 2).unwrap();
    let chi = module_character(&q);
    assert_eq!(chi.values()[0].1, int(0));
    assert_eq!(chi.values()[1].1, int(2));
    let d = decompose(&chi).unwrap();
    assert_eq!(d.nonzero().count(), 2);
    assert_eq!(d.dimension(), 2);
}

#[test]
fn free_module_is_regular() {
    // P_n(free) is the regular representation
    for n in 1..=5 {
        let q = tideal_multilinear(&builtin_variety("free").unwrap(), n).unwrap();
        let d = decompose(&module_character(&q)).unwrap();
        for (l, m) in &d.multiplicities {
            assert_eq!(*m, l.hook_length_dimension());
        }
    }
}
