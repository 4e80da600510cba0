//! Prints the sampled B-spline prototypes behind both spline families.

use sparsedict::dictionary::{sample_prototype, SplineOrder};

fn main() -> sparsedict::Result<()> {
    for order in [SplineOrder::Linear, SplineOrder::Cubic] {
        println!("order m = {}", order.m());
        for dilation in 1..=3 {
            let proto = sample_prototype(order, dilation)?;
            let values: Vec<String> = proto.values.iter().map(|v| format!("{v:.6}")).collect();
            println!(
                "  d = {dilation}, support {:>2}: [{}]",
                proto.support(),
                values.join(", ")
            );
        }
    }
    Ok(())
}
