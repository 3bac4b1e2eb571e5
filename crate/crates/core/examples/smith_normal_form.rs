//! Smith normal form with unimodular transforms, integer kernels, and the
//! structure of a finite abelian group given by relations.

use brauer_manin::exactlin::{bigvec, kernel_basis, smith_normal_form, solve_linear_diophantine, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    let inv: Vec<String> = snf.invariants().iter().map(|d| d.to_string()).collect();
    println!("invariant factors: {}", inv.join(", "));
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
    println!("U M V = D verified");

    let k = IntMatrix::from_rows_i64(&[vec![1, 1, 1, -3]]);
    for v in kernel_basis(&k) {
        println!("kernel vector {:?}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    match solve_linear_diophantine(&m, &bigvec(&[2, 0, 0])) {
        Some(sol) => println!("M x = (2,0,0): x = {:?}", sol.particular.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        None => println!("M x = (2,0,0) has no integer solution"),
    }
}
