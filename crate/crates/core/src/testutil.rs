use crate::symbol::SymbolTable;
use crate::transducer::Transducer;

/// Builds a machine over single-character symbols from
/// `(src, dst, input, output)` arcs and `(state, final output)` pairs.
pub(crate) fn machine(n: usize, arcs: &[(u32, u32, &str, &str)], finals: &[(u32, &str)]) -> Transducer {
    let mut t = Transducer::new(SymbolTable::new(), SymbolTable::new());
    t.set_p_bound(8);
    for _ in 1..n {
        t.add_state();
    }
    for &(q, r, i, o) in arcs {
        let label = t.input_symbols_mut().intern(i);
        let out = o.chars().map(|c| t.output_symbols_mut().intern(&c.to_string())).collect();
        t.add_transition(q, label, out, r).unwrap();
    }
    for &(q, o) in finals {
        let out = o.chars().map(|c| t.output_symbols_mut().intern(&c.to_string())).collect();
        t.add_final_output(q, out).unwrap();
    }
    t
}
