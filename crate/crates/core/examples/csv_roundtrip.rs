//! Worker-count independence and exact CSV re-parsing.

use rbl::{monte_carlo, report, Preset};

fn main() -> rbl::Result<()> {
    let mut scenario = Preset::Fig12.expand();
    scenario.runs = 40;
    scenario.set_horizon(1 << 11);

    let mut outputs = Vec::new();
    for workers in [1, 4, 8] {
        let text = report::to_csv_string(&monte_carlo(&scenario, workers)?, false)?;
        println!("workers {workers}: {} bytes", text.len());
        outputs.push(text);
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));

    let series = monte_carlo(&scenario, 2)?;
    let parsed = report::read_csv(outputs[0].as_bytes())?;
    assert_eq!(parsed, report::rows(&series, false));
    println!("{} rows re-parsed exactly", parsed.len());
    Ok(())
}
