//! Exact arithmetic in `K₀ = k(∛(2/3))` and relative norms `N_{K₀/k}`:
//! the three identities that decide which local units are norms.

use brauer_manin::calibrate::{cubic_norm, k0, norm_identities, tau};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = k0();
    println!("K0 has degree {} over k", k.degree());
    for (w, expected) in norm_identities(&k) {
        let n = cubic_norm(&w, &tau(), &k)?;
        let shown = n.as_base().map_or("not in k".to_string(), |x| x.to_string());
        println!("N({w:?}) = {shown}  (expected {expected})");
        let inv = k.inv(&w)?;
        assert_eq!(k.mul(&w, &inv), k.one());
    }
    Ok(())
}
