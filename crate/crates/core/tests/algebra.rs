use ihall::frep::Budget;
use ihall::idp::{idp_hall, Parity};
use ihall::ihall::HallContext;
use ihall::iquiver::builtin;
use ihall::ring::QSqrt;
use proptest::prelude::*;

fn ctx(name: &str, q: u64) -> HallContext {
    HallContext::new(builtin(name).unwrap(), q, Budget::default()).unwrap()
}

#[test]
fn unit_and_torus_inverse() {
    let c = ctx("a3-quasisplit", 2);
    let s = c.simple(1).unwrap();
    assert_eq!(c.product(&c.one(), &s).unwrap(), s);
    assert_eq!(c.product(&s, &c.one()).unwrap(), s);
    let k = c.product(&c.torus(&[1, -2, 0]), &c.torus(&[-1, 2, 0])).unwrap();
    assert_eq!(k, c.one());
}

#[test]
fn torus_twists_simples() {
    // K_i [S_j] = v^{-(c_{tau i, j} - c_{ij})} [S_j] K_i, read off the psi relation
    let c = ctx("kronecker-r1", 3);
    for i in 0..2 {
        for j in 0..2 {
            let k = c.torus_unit(i, 1);
            let s = c.simple(j).unwrap();
            let lhs = c.product(&k, &s).unwrap();
            let rhs = c.product(&s, &k).unwrap();
            let e = c.iq.cartan(c.iq.tau(i), j) - c.iq.cartan(i, j);
            assert_eq!(lhs, rhs.scale(&QSqrt::v_pow(3, e)), "i={i} j={j}");
        }
    }
}

#[test]
fn idp_parities_differ_from_two_on() {
    let c = ctx("rank1-split", 2);
    for n in 0..2 {
        assert_eq!(idp_hall(&c, 0, n, Parity::Ev).unwrap(), idp_hall(&c, 0, n, Parity::Odd).unwrap());
    }
    assert_ne!(idp_hall(&c, 0, 2, Parity::Ev).unwrap(), idp_hall(&c, 0, 2, Parity::Odd).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn associative_on_generators(xs in prop::collection::vec((0usize..3, -1i64..2), 3)) {
        let c = ctx("a2-split", 2);
        let gen = |(g, p): (usize, i64)| if g < 2 { c.simple(g).unwrap() } else { c.torus(&[p, 1]) };
        let [a, b, d] = [gen(xs[0]), gen(xs[1]), gen(xs[2])];
        let left = c.product(&c.product(&a, &b).unwrap(), &d).unwrap();
        let right = c.product(&a, &c.product(&b, &d).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
