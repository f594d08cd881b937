//! Worked examples with published tropical data.

use ysyslab::cluster::{tropical_frame, YSystem};
use ysyslab::dilog::Domain;
use ysyslab::tropical::tropical_report;

fn exps(frame: &ysyslab::cluster::CoefficientFrame<ysyslab::semifield::TropMonomial>, a: usize, u: i64) -> Vec<i64> {
    frame.get(a, u).unwrap().exponents().to_vec()
}

#[test]
fn a1_a2_forward_table() {
    let sys: YSystem = "A1xA2".parse().unwrap();
    let frame = tropical_frame(&sys, 0, 5).unwrap();
    // (y_11, y_12) columns for u = 0..5
    let table: [[[i64; 2]; 2]; 6] = [
        [[1, 0], [0, 1]],
        [[-1, 0], [1, 1]],
        [[0, 1], [-1, -1]],
        [[0, -1], [-1, 0]],
        [[0, -1], [1, 0]],
        [[0, 1], [1, 0]],
    ];
    for (u, col) in table.iter().enumerate() {
        for (a, want) in col.iter().enumerate() {
            assert_eq!(exps(&frame, a, u as i64), want.to_vec(), "a = {a}, u = {u}");
        }
    }
    let mut framed = Domain::HPlus.points(&sys);
    framed.sort_by_key(|&(a, u)| (u, a));
    assert_eq!(framed, vec![(0, 0), (1, 1), (0, 2), (1, 3), (0, 4)]);
}

#[test]
fn a3_a1_backward_table() {
    let sys: YSystem = "A3xA1".parse().unwrap();
    let frame = tropical_frame(&sys, -6, 0).unwrap();
    // rows i = 1, 2, 3 as exponents over (y_11, y_21, y_31), for u = 0, -1, ..., -6
    let table: [[[i64; 3]; 3]; 7] = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 1, 0], [0, -1, 0], [0, 1, 1]],
        [[-1, -1, 0], [1, 1, 1], [0, -1, -1]],
        [[0, 0, 1], [-1, -1, -1], [1, 0, 0]],
        [[0, 0, -1], [0, -1, 0], [-1, 0, 0]],
        [[0, 0, -1], [0, 1, 0], [-1, 0, 0]],
        [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    ];
    for (k, rows) in table.iter().enumerate() {
        let u = -(k as i64);
        for (a, want) in rows.iter().enumerate() {
            assert_eq!(exps(&frame, a, u), want.to_vec(), "i = {}, u = {u}", a + 1);
        }
    }
}

#[test]
fn published_counts() {
    for (p, np, nm) in [("A1xA2", 6, 4), ("A3xA1", 6, 12), ("A3xA2", 18, 24)] {
        let r = tropical_report(&p.parse().unwrap()).unwrap();
        assert_eq!((r.n_plus, r.n_minus), (np, nm), "{p}");
    }
}
