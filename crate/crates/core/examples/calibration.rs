//! Polynomial identities over `K₀ = k(∛(2/3))` modulo the surface equation:
//! `f` vanishes on the cubic curve `C`, `f′` on `C′`, and the two charts differ
//! by the constant `ϑ = ζ/4` times a norm.

use brauer_manin::calibrate::{
    c_prime_quadrics, c_quadrics, calibration_identity, divisor_membership, f, f_prime, g, k0, surface, tau, vartheta,
    TowerPolynomial,
};
use brauer_manin::eisenstein::EisensteinNumber;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = k0();
    let s = surface();
    let cubic = TowerPolynomial::diagonal_cubic(&s, &k);
    let (f, fp, g) = (f(&k), f_prime(&k), g(&k));

    let cert = divisor_membership(&f, &c_quadrics(&k), &cubic, &k)?;
    println!("f in (quadrics of C, F): {}", cert.is_some());
    if let Some(cert) = &cert {
        assert_eq!(cert.reconstruct(&c_quadrics(&k), &cubic, &k), f);
    }
    println!("f' in (quadrics of C', F): {}", divisor_membership(&fp, &c_prime_quadrics(&k), &cubic, &k)?.is_some());

    for (name, theta) in
        [("zeta/4", vartheta()), ("zeta^2/4", &EisensteinNumber::from_ints(-1, -1) / &EisensteinNumber::from_ints(4, 0))]
    {
        let holds = calibration_identity(&f, &fp, &g, &theta, &tau(), &s, &k)?;
        println!("f N(g) = {name} f' N(f) mod F: {holds}");
    }
    Ok(())
}
