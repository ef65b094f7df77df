use surface_ising::generate::{random_instances, small_signatures, RandomParams};
use surface_ising::partition::{z_bruteforce, z_general, z_practical};

#[test]
fn triple_agreement_on_random_instances() {
    let p = RandomParams::default();
    for sig in small_signatures() {
        for (seed, g) in random_instances(sig, 50, 14, 0, &p) {
            let b = z_bruteforce(&g).unwrap();
            let pr = z_practical(&g).unwrap_or_else(|e| panic!("{sig} seed {seed}: practical {e}"));
            let ge = z_general(&g).unwrap_or_else(|e| panic!("{sig} seed {seed}: general {e}"));
            assert_eq!(pr, b, "{sig} seed {seed}: practical");
            assert_eq!(ge, b, "{sig} seed {seed}: general");
        }
    }
}
