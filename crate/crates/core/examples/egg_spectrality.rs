// Every point of the egg has a classical decomposition, but the origin
// has two with different weights.

use gpt_thermo::decomposition::{egg_grid_sweep, egg_nonuniqueness_witness};
use gpt_thermo::state_space::EggShape;

pub fn run_example() -> gpt_thermo::Result<()> {
    let shape = EggShape::new(1.0, 2.0)?;
    let rows = egg_grid_sweep(&shape, 50, 1e-10)?;
    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    println!("{} grid points decomposed, worst residual {worst:.1e}", rows.len());

    let w = egg_nonuniqueness_witness(&shape);
    println!("vertical chord   {:?}  entropy {:.6}", w.vertical.weights, w.entropy_vertical);
    println!("horizontal chord {:?}  entropy {:.6}", w.horizontal.weights, w.entropy_horizontal);
    Ok(())
}

#[allow(dead_code)]
fn main() -> gpt_thermo::Result<()> {
    run_example()
}
