use stokes_cli::{run, EvalJson, TableJson, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn stokes(args: &str) -> stokes_cli::Invocation {
    run(std::iter::once("stokes").chain(args.split_whitespace()))
}

fn ok(args: &str) -> String {
    let inv = stokes(args);
    assert_eq!(inv.code, EXIT_OK, "stokes {args}: {}", inv.stderr);
    inv.stdout
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split('\t').map(String::from).collect())
        .collect()
}

#[test]
fn table1_grid() {
    let out = ok("table --which table1");
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 8);
    assert_eq!(
        rows[0],
        [
            "1",
            "-3.568247262(-06)",
            "-1.163196884(-08)",
            "-1.190793339(-10)"
        ]
    );
    assert_eq!(
        rows[3],
        [
            "4",
            "-3.539827969(-06)",
            "-1.151884096(-08)",
            "-1.185756985(-10)"
        ]
    );
    assert_eq!(rows[6][1], "-3.539843764(-06)");
    assert_eq!(rows[6][2], "-1.151885298(-08)");
    // Printed as ...400; the correctly rounded value ends in 399.
    assert!(["-1.185757399(-10)", "-1.185757400(-10)"].contains(&rows[6][3].as_str()));
    assert_eq!(
        rows[7],
        [
            "F_nu(x)",
            "-3.539843604(-06)",
            "-1.151885294(-08)",
            "-1.185757399(-10)"
        ]
    );
    assert!(out.lines().nth(1).unwrap().contains("S_I(M;15.4)"));
}

#[test]
fn table2_grid() {
    let rows = data_rows(&ok("table --which table2"));
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0][1], "2.461573958(-12) - 1.851725849i(-13)");
    assert_eq!(rows[4][1], "2.452537160(-12) - 1.839452410i(-13)");
    assert_eq!(rows[6][1], "2.452537123(-12) - 1.839452297i(-13)");
    assert_eq!(rows[7][1], "2.452537123(-12) - 1.839452296i(-13)");
}

#[test]
fn tsv_and_paper_agree() {
    let paper = data_rows(&ok("table --which table2 --format paper"));
    let tsv = data_rows(&ok("table --which table2 --format tsv"));
    for (p, t) in paper.iter().zip(&tsv) {
        let re: f64 = t[1].parse().unwrap();
        let im: f64 = t[2].parse().unwrap();
        let (pre, pim) = p[1].split_once(" - ").unwrap();
        let parse = |s: &str| {
            let s = s.replace('i', "");
            let (m, e) = s.split_once('(').unwrap();
            format!("{m}e{}", e.trim_end_matches(')'))
                .parse::<f64>()
                .unwrap()
        };
        assert_eq!(parse(pre), re);
        assert_eq!(-parse(pim), im);
    }
}

#[test]
fn table_json_is_structured() {
    let out = ok("table --which table1 --format json --m 1..3");
    let t: TableJson = serde_json::from_str(&out).unwrap();
    assert_eq!(t.columns.len(), 3);
    assert_eq!(t.columns[1].x, "15.4");
    assert_eq!(t.columns[1].m_o, 30);
    assert_eq!(t.columns[1].alpha, "-4/5");
    assert_eq!(t.columns[0].rows.len(), 3);
    assert_eq!(t.columns[0].rows[0].value.re, "-3.568247262e-06");
    assert_eq!(t.truncation, "floor");
}

#[test]
fn custom_half_integer_table() {
    let inv = stokes("table --which custom --nu 0.5 --x 10 --m 1..4");
    assert_eq!(inv.code, EXIT_OK, "{}", inv.stderr);
    assert!(inv.stderr.contains("half-integer"));
    let rows = data_rows(&inv.stdout);
    assert_eq!(rows.len(), 5);
    // Only a_0 survives at ν = 1/2 and sin πϑ = 0, so S_I does not move with M.
    for r in &rows[1..4] {
        assert_eq!(r[1], rows[0][1]);
    }
}

#[test]
fn table_output_is_deterministic() {
    assert_eq!(
        ok("table --which table1 --format tsv"),
        ok("table --which table1 --format tsv")
    );
}

#[test]
fn large_m_warns() {
    let inv = stokes("table --which custom --nu 1/4 --x 20 --m 9");
    assert_eq!(inv.code, EXIT_OK);
    assert!(inv.stderr.contains("warning"));
}

#[test]
fn ghat_coefficients() {
    let out = ok("coeffs --ghat --kmax 8");
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], ["0", "2/3 -1"]);
    assert_eq!(rows[1], ["2", "46/15 -15 18 -6"]);
    assert_eq!(rows[3][1].split(' ').next(), Some("-259/25"));
}

#[test]
fn numeric_coefficients() {
    let out = ok("coeffs --nu 1/4 --x 10 --m 3 --digits 12");
    assert!(out.starts_with("# nu=1/4 a=3/4 b=3/2 x=10 m_o=20 alpha=0 M=3"));
    let rows = data_rows(&out);
    assert_eq!(
        rows[0],
        [
            "0",
            "1.00000000000e+00",
            "1.00000000000e+00",
            "6.66666666667e-01"
        ]
    );
    assert_eq!(rows[1][1], "-9.37500000000e-02");
    assert_eq!(rows[1][2], "1.87500000000e-01");
    let k = ok("coeffs --a 3/4 --b 3/2 --x 20 --m 2");
    assert!(k.contains("j\tc_j\tA_j\tB_j"));
}

#[test]
fn eval_json_round_trips() {
    let out = ok("eval --fn K --nu 0.25 --x 25 --M 7 --json");
    let doc: EvalJson = serde_json::from_str(&out).unwrap();
    assert!(doc.result.stokes_multiplier.is_some());
    assert_eq!(doc.input.m, 7);
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(again, out);
    let sub = &doc.result.subdominant;
    assert!(sub.re.starts_with("2.4525371233"));
    assert!(sub.im.starts_with("-1.839452297"));
}

#[test]
fn eval_text() {
    let out = ok("eval --fn I --nu 1/4 --x 10 --m 1 --truncation floor");
    assert!(out.contains("m_o\t20"));
    assert!(out.contains("subdominant\t-3.5682472"));
    let u = ok("eval --fn U --a 1/4 --b 1/2 --x 15 --sign -");
    assert!(u.contains("stokes_multiplier"));
}

#[test]
fn oracle_values() {
    assert_eq!(
        ok("oracle --fn F --nu 0.25 --x 10 --digits 10"),
        "-3.539843604(-06)\n"
    );
    assert_eq!(
        ok("oracle --fn G --nu 1/4 --x 25 --truncation floor"),
        "2.452537123(-12) - 1.839452296i(-13)\n"
    );
    assert_eq!(
        ok("oracle --fn 1F1 --a 1 --b 1 --z 1 --format sci --digits 12"),
        "2.71828182846e+00\t0.00000000000e+00\n"
    );
    let g_minus = ok("oracle --fn G --nu 1/4 --x 25 --sign - --truncation floor");
    assert_eq!(g_minus, "2.452537123(-12) + 1.839452296i(-13)\n");
}

#[test]
fn exit_codes() {
    assert_eq!(stokes("table --bogus").code, EXIT_USAGE);
    assert_eq!(stokes("frobnicate").code, EXIT_USAGE);
    assert_eq!(stokes("table --digits 3").code, EXIT_USAGE);
    assert_eq!(stokes("table --which custom --x abc").code, EXIT_USAGE);
    assert_eq!(stokes("eval --fn K --x 10").code, EXIT_USAGE);
    assert_eq!(
        stokes("oracle --fn F --nu 1/4 --x 10 --digits 5").code,
        EXIT_USAGE
    );
    assert_eq!(stokes("--help").code, EXIT_OK);

    let inv = stokes("oracle --fn K --nu 1 --x 10");
    assert_eq!(inv.code, EXIT_DOMAIN);
    assert!(inv.stderr.starts_with("error:"));
    assert_eq!(stokes("eval --fn I --nu 1/4 --x -3").code, EXIT_DOMAIN);
    assert_eq!(
        stokes("oracle --fn G --nu 1/4 --x 25 --bits 100").code,
        EXIT_DOMAIN
    );
    assert_eq!(
        stokes("oracle --fn 1F1 --a 1 --b -2 --z 1").code,
        EXIT_DOMAIN
    );
}

#[test]
fn m_ranges() {
    use stokes_cli::parse_m_range;
    assert_eq!(parse_m_range("7").unwrap(), 7..=7);
    assert_eq!(parse_m_range("1..7").unwrap(), 1..=7);
    assert_eq!(parse_m_range("2..=4").unwrap(), 2..=4);
    for bad in ["0", "5..3", "a..b", ""] {
        assert!(parse_m_range(bad).is_err(), "{bad}");
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_stokes");
    let out = std::process::Command::new(bin)
        .args(["oracle", "--fn", "F", "--nu", "0.25", "--x", "10"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "-3.539843604(-06)\n"
    );
    let bad = std::process::Command::new(bin)
        .args(["table", "--nope"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let domain = std::process::Command::new(bin)
        .args(["oracle", "--fn", "K", "--nu", "2", "--x", "1"])
        .output()
        .unwrap();
    assert_eq!(domain.status.code(), Some(1));
}
