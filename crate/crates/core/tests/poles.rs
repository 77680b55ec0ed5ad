use mvsp_core::curve::h_family;
use mvsp_core::nsg::{weierstrass_generators, NumericalSemigroup};
use mvsp_core::wsg::{check_yqn_identity, verify_pole_orders, DEFAULT_MAX_ITERS};

#[test]
fn pole_orders_across_the_family() {
    for (q, n) in [
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (2, 7),
        (2, 8),
        (3, 3),
        (3, 4),
        (3, 5),
        (4, 3),
        (4, 4),
        (5, 3),
    ] {
        let c = h_family(q, n).unwrap();
        let t = std::time::Instant::now();
        let rep = verify_pole_orders(&c, DEFAULT_MAX_ITERS)
            .unwrap_or_else(|e| panic!("(q, n) = ({q}, {n}): {e}"));
        assert!(rep.passed(), "(q, n) = ({q}, {n}): {rep:?}");
        assert!(check_yqn_identity(&c).unwrap());
        let hp = c.h_params().unwrap();
        let s = NumericalSemigroup::new(&weierstrass_generators(q, n, hp.r).unwrap()).unwrap();
        assert_eq!(
            Some(&s.genus().into()),
            c.genus_formula(),
            "(q, n) = ({q}, {n})"
        );
        eprintln!(
            "({q},{n}) r={} iters={} {:?}",
            hp.r,
            rep.max_iterations(),
            t.elapsed()
        );
    }
}
