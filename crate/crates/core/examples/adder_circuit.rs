//! Modular ripple-carry adder and the geometric transform built from it.

use neqr_cipher::cipher::{build_adder_mod_circuit, build_gat_circuit, gat_forward, EncryptionKey, GatLayout};

fn read(k: usize, reg: &[usize]) -> usize {
    reg.iter().enumerate().map(|(j, &q)| (k >> q & 1) << j).sum()
}

fn main() -> neqr_cipher::Result<()> {
    let n = 3;
    let adder = build_adder_mod_circuit(n);
    println!("{n}-bit adder: {} gates on {} qubits", adder.len(), adder.width());
    for (a, b) in [(3, 4), (5, 6), (7, 7)] {
        let out = adder.apply_classical(a | b << n).expect("classical circuit");
        println!("  {a} + {b} mod 8 = {}", out >> n & 7);
    }

    let key = EncryptionKey::new(2, 1, 2, 3, 1, 0.5, 3.9)?;
    let gat = build_gat_circuit(&key);
    let l = GatLayout::standalone(2);
    println!("transform for {key}: {} gates", gat.len());
    for y in 0..4usize {
        for x in 0..4usize {
            let input = l.x.iter().enumerate().map(|(j, &q)| (x >> j & 1) << q).sum::<usize>()
                | l.y.iter().enumerate().map(|(j, &q)| (y >> j & 1) << q).sum::<usize>();
            let out = gat.apply_classical(input).expect("classical circuit");
            let got = (read(out, &l.y_out) as u64, read(out, &l.x_out) as u64);
            assert_eq!(got, gat_forward(y as u64, x as u64, &key));
            print!("({y},{x})->({},{}) ", got.0, got.1);
        }
        println!();
    }
    Ok(())
}
