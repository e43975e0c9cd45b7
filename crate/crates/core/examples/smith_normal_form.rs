//! Smith normal form and linear congruences mod 2 and 4.

use stablecat::linalg::{snf, solve_mod, IntMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = IntMatrix::from_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let s = snf(&a);
    println!("A =\n{a}");
    println!("D = U·A·V =\n{}", s.d);
    println!("invariant factors {:?}, rank {}", s.invariant_factors(), s.rank());
    assert_eq!(s.u.mul(&a).mul(&s.v), s.d);

    // x·A ≡ b with one modulus per column.
    let a = IntMatrix::from_rows(2, &[vec![1, 1], vec![2, 0]])?;
    for b in [[1, 0], [2, 1], [3, 1]] {
        match solve_mod(&a, &b, &[4, 2])? {
            Some(x) => println!("x·A ≡ {b:?} (mod 4, 2): x = {x:?}"),
            None => println!("x·A ≡ {b:?} (mod 4, 2): no solution"),
        }
    }
    Ok(())
}
