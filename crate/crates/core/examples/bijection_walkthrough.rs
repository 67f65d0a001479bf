//! Runs each bijection on a worked input and inverts it again.

use dyckstat::bijection::{
    eta, eta_inv, phi, phi_inv, phi_prime, pyramid_drop, pyramid_lift, rho, rho_inv, theta, theta_inv, valley_shift,
    valley_shift_inv, MarkedFamily,
};
use dyckstat::path::p;
use dyckstat::{MarkedPath, Statistic};

fn main() -> dyckstat::Result<()> {
    let m = MarkedPath::at_turn(p("uduuuduudududuuddddudduudd"), Statistic::Peak, 9)?;
    let pair = phi(&m)?;
    println!("phi:        {m}  ->  {pair}");
    assert_eq!(phi_inv(&pair)?, m);

    let m = MarkedPath::at_turn(p("uduuuduuduuddududddudduudd"), Statistic::Peak, 7)?;
    println!("phi_prime:  {m}  ->  {}", phi_prime(&m)?);

    let m = MarkedPath::at_turn(p("uduuuduuududduuddudddduudd"), Statistic::Valley, 12)?;
    let pair = theta(&m)?;
    println!("theta:      {m}  ->  {pair}");
    assert_eq!(theta_inv(&pair)?, m);

    // Smallest domains for the remaining maps.
    let m = &MarkedFamily::VL.elements(1, 0)[0];
    let pair = rho(m)?;
    println!("rho:        {m}  ->  {pair}");
    assert_eq!(&rho_inv(&pair)?, m);

    let m = &MarkedFamily::L.elements(1, 0)[0];
    let out = eta(m)?;
    println!("eta:        {m}  ->  {out}");
    assert_eq!(&eta_inv(&out)?, m);

    let m = &MarkedFamily::V.elements(3, 1)[0];
    let out = valley_shift(m)?;
    println!("shift:      {m}  ->  {out}");
    assert_eq!(&valley_shift_inv(&out)?, m);

    let m = MarkedPath::at_turn(p("uudduudd"), Statistic::Peak, 5)?;
    let lifted = pyramid_lift(&m, 2)?;
    println!("pyramid:    {m}  ->  {lifted}");
    assert_eq!(pyramid_drop(&lifted, 2)?, m);
    Ok(())
}
