//! Trace synchronization of visibly transducers.

use visync::sync::Options;
use visync::transducer::{classify_vst, trace_sync_vst, trace_sync_vvst, Vst};

fn main() -> Result<(), visync::Error> {
    let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    // outputs depend on the state: the runs never agree on what they wrote
    let flip = Vst::from_fn(2, names(&["a", "b"]), names(&["X", "Y"]), |q, l| {
        let out = vec![q];
        match l {
            0 => (0, out),
            _ => (1 - q, out),
        }
    })?;
    // every letter writes the same word, and `a` resets the state
    let reset = Vst::from_fn(3, names(&["a", "b"]), names(&["X", "Y"]), |q, l| match l {
        0 => (0, vec![0, 1]),
        _ => ((q + 1) % 3, vec![1, 1]),
    })?;
    for (name, t) in [("flip", &flip), ("reset", &reset)] {
        let c = classify_vst(t);
        let d = if c.is_very_visibly { trace_sync_vvst(t)? } else { trace_sync_vst(t, &Options::default())? };
        let witness: Vec<&str> = d.witness.iter().flatten().map(|&l| t.inputs()[l].as_str()).collect();
        println!(
            "{name}: visibly {}, very-visibly {}, trace-synchronizing {} via {} '{}'",
            c.is_visibly,
            c.is_very_visibly,
            d.answer,
            d.procedure,
            witness.join(" ")
        );
    }
    Ok(())
}
