use fiedler_lab::conjecture::rose_fiedler;
use fiedler_lab::graph::build_rose;
use fiedler_lab::io::bmatrix::parse_b_matrix;
use fiedler_lab::io::{emit_b_matrix, export_dot, parse_edge_list};
use fiedler_lab::spectral::sign_partition;
use fiedler_lab::{Error, RoseParams};

#[test]
fn b_matrix_text_for_the_printed_roses() {
    let expected = [
        (
            11,
            "   -0.0093   -0.0085   -0.0071   -0.0051   -0.1481   -0.2793   -0.3881   -0.4659   -0.5064\n         0         0    0.1525    0.1403         0         0         0         0         0\n",
        ),
        (
            10,
            "    0.0074    0.0068    0.0056    0.0040   -0.1414   -0.2752   -0.3865   -0.4662   -0.5077\n         0         0    0.1606    0.1474         0         0         0         0         0\n",
        ),
        (
            3,
            "    0.2514    0.2253    0.1758    0.1081   -0.0597   -0.2213   -0.3600   -0.4612   -0.5147\n         0         0    0.2198    0.1970         0         0         0         0         0\n",
        ),
    ];
    for (p, text) in expected {
        let params = RoseParams::new(p, 5).unwrap();
        let emitted = emit_b_matrix(params, &rose_fiedler(params).unwrap()).unwrap();
        assert_eq!(emitted, text, "p={p}");
        let parsed = parse_b_matrix(&emitted).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].len(), 9);
    }
}

#[test]
fn dot_export_of_rose_11_5() {
    let params = RoseParams::new(11, 5).unwrap();
    let g = build_rose(params);
    let r = rose_fiedler(params).unwrap();
    let dot = export_dot(&g, &sign_partition(&g, &r.vector, 1e-9).unwrap()).unwrap();
    assert!(dot.starts_with("graph fiedler {"));
    assert!(dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("fillcolor=").count(), 21);
    assert_eq!(dot.matches(" -- ").count(), 20);
    // leaf and stem negative; hub, petals positive
    assert_eq!(dot.matches("fillcolor=blue").count(), 9);
    assert_eq!(dot.matches("fillcolor=red").count(), 12);
}

#[test]
fn edge_list_errors_carry_line_numbers() {
    let g = parse_edge_list("# a path\nn 4\n0 1\n1 2\n\n2 3 # last\n").unwrap();
    assert_eq!(g.n(), 4);
    assert_eq!(g.edge_count(), 3);
    assert!(matches!(
        parse_edge_list("0 1\n2 2\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(matches!(
        parse_edge_list("0 1\n1 0\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(matches!(
        parse_edge_list("0 x\n"),
        Err(Error::Parse { line: 1, .. })
    ));
    assert!(matches!(
        parse_edge_list("n 2\n0 5\n"),
        Err(Error::Parse { line: 1, .. })
    ));
}
