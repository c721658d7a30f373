use hardy_core::control::TABLE2_GRID;
use hardy_core::io::{
    analyze, emit_report, parse_csv_table, parse_raw_counts, AnalysisView, Dataset, Format,
    RawCountsFile, Report, ReportMeta, Schema, FIXTURE_BASIS_COUNTS, FIXTURE_CONTEXT_COUNTS,
};
use hardy_core::published;
use sha2::{Digest, Sha256};

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[test]
fn fixture_checksums() {
    assert_eq!(
        sha256_hex(FIXTURE_BASIS_COUNTS),
        "9177c4d6a7cc846ef51403121ac780fa164a156f4a9ee0e4aacdbda13969cb36"
    );
    assert_eq!(
        sha256_hex(FIXTURE_CONTEXT_COUNTS),
        "93958acd379d2ee33263e80e353beae98feed49aa35a456bd7f9990321c923d7"
    );
}

#[test]
fn fixtures_cover_the_grid() {
    let RawCountsFile::Basis(basis) = parse_raw_counts(FIXTURE_BASIS_COUNTS, Schema::A1).unwrap()
    else {
        panic!("wrong schema")
    };
    let grid: Vec<f64> = basis.iter().map(|r| r.phi_s.degrees()).collect();
    assert_eq!(grid, TABLE2_GRID);
    // the four-outcome raw table is a projection of the context fixture
    let raw = [
        (0.0, 88, 36, 3354, 40),
        (10.0, 88, 95, 954, 304),
        (17.5, 125, 79, 231, 752),
        (20.0, 113, 79, 155, 959),
        (22.5, 118, 71, 172, 1148),
        (25.0, 145, 98, 240, 1357),
        (27.5, 136, 97, 285, 1586),
        (35.0, 163, 106, 1002, 2153),
        (45.0, 136, 123, 3513, 3430),
    ];
    let data = Dataset::fixtures();
    for (row, want) in data.contexts.iter().zip(raw) {
        assert_eq!(row.phi_s.degrees(), want.0);
        let c = &row.contexts;
        assert_eq!((c[1].n[0], c[2].n[0], c[0].n[3], c[3].n[0]), (want.1, want.2, want.3, want.4));
    }
}

/// Independent recomputation of every published cell from the raw counts.
#[test]
fn tables_recomputed_by_hand() {
    let data = Dataset::fixtures();
    for (b, t1) in data.basis.iter().zip(published::VISIBILITIES) {
        let c = b.counts;
        let hv = (c.hh + c.hv + c.vh + c.vv) as f64;
        let pm = (c.pp + c.pm + c.mp + c.mm) as f64;
        let c_hv = ((c.hh + c.vv) as f64 - (c.hv + c.vh) as f64) / hv;
        let c_pm = ((c.pm + c.mp) as f64 - (c.pp + c.mm) as f64) / pm;
        let v1 = ((c.hh + c.hv) as f64 - (c.vh + c.vv) as f64) / hv;
        let v2 = ((c.hh + c.vh) as f64 - (c.hv + c.vv) as f64) / hv;
        let v = 0.5 * (v1 + v2);
        let w = c_hv + c_pm - 1.0;
        for (got, want) in [c_hv, v, w, (v * v + w * w).sqrt()].iter().zip(&t1[1..]) {
            assert!((got - want).abs() <= 0.0015, "phi_S={} {got} vs {want}", t1[0]);
        }
    }
    for (r, t5) in data.contexts.iter().zip(published::CONTRAST) {
        let p = |k: usize, slot: usize| {
            let n = r.contexts[k].n;
            n[slot] as f64 / n.iter().sum::<u64>() as f64
        };
        let s = p(1, 0) + p(2, 0) + p(0, 3);
        let k = (p(3, 0) - s) / (p(3, 0) + s);
        assert!((k - t5[1]).abs() <= 0.0015, "phi_S={} K={k}", t5[0]);
    }
}

#[test]
fn analysis_matches_published_tables() {
    let report = analyze(&Dataset::fixtures()).unwrap();
    for (v, t1) in report.visibilities.iter().zip(published::VISIBILITIES) {
        let r = &v.record;
        let got = [r.c_hv.value, r.v_hv.value, r.w_e.value, r.purity_length.value];
        for (g, w) in got.iter().zip(&t1[1..]) {
            assert!((g - w).abs() <= 0.0015, "phi_S={}: {g} vs {w}", t1[0]);
        }
        // the quoted statistical errors are of the same size
        assert!(r.c_hv.stderr < 0.013 && r.c_hv.stderr > 0.001);
    }
    for ((c, t3), t5) in report
        .contextuality
        .iter()
        .zip(published::SUPPRESSION)
        .zip(published::CONTRAST)
    {
        let floor = c.error_floor.unwrap().value;
        for (g, w) in [c.p_0a.value, c.p_a0.value, floor].iter().zip(&t3[1..]) {
            assert!((g - w).abs() <= 0.0015, "phi_S={}: {g} vs {w}", t3[0]);
        }
        assert!((c.k.value - t5[1]).abs() <= 0.0015);
        // first-order Poisson propagation never exceeds the quoted error
        assert!(c.k.stderr > 0.0 && c.k.stderr <= t5[2], "{}", c.k.stderr);
    }
    let k = &report.contextuality[4];
    assert!((k.k.value - 0.518).abs() < 0.0015);
    assert!(k.margin.value > 5.0 * k.margin.stderr);
}

#[test]
fn visibility_view_round_trips_through_csv() {
    let report = analyze(&Dataset::fixtures()).unwrap();
    let table = report.table(AnalysisView::Visibilities);
    assert_eq!(table.header.len(), 6);
    let back = parse_csv_table(&table.to_csv()).unwrap();
    assert_eq!(back.header, table.header);
    for (a, b) in back.rows.iter().flatten().zip(table.rows.iter().flatten()) {
        assert!((a - b).abs() <= 1e-6 * b.abs().max(1e-12));
    }
    let w_e = back.column("w_e").unwrap();
    assert!((w_e[0] + 0.049).abs() < 0.0015);
    assert!((w_e[8] - 0.903).abs() < 0.0015);
}

#[test]
fn full_csv_and_json_agree() {
    let report = analyze(&Dataset::fixtures()).unwrap();
    let meta = ReportMeta::new(None, serde_json::json!({"fixtures": true}));
    let csv = String::from_utf8(emit_report(&Report::Analysis(&report), Format::Csv, &meta)).unwrap();
    let table = parse_csv_table(&csv).unwrap();
    assert_eq!(table.rows.len(), 9);
    let json: serde_json::Value =
        serde_json::from_slice(&emit_report(&Report::Analysis(&report), Format::Json, &meta)).unwrap();
    assert_eq!(json["meta"]["config"]["fixtures"], true);
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let k_csv = table.column("k").unwrap();
    for (row, k) in rows.iter().zip(k_csv) {
        assert_eq!(row["k"].as_f64().unwrap(), k);
    }
}

#[test]
fn malformed_inputs_report_position() {
    let header = FIXTURE_BASIS_COUNTS.lines().next().unwrap();
    let bad = format!("{header}\n0,1,2,3,4,5,6,7,8\n10,1,2,x,4,5,6,7,8\n");
    let err = parse_raw_counts(&bad, Schema::A1).unwrap_err();
    assert_eq!(
        err,
        hardy_core::Error::Parse {
            line: 3,
            column: 4,
            message: "`x` is not a non-negative integer".into()
        }
    );
    assert!(parse_raw_counts(FIXTURE_BASIS_COUNTS, Schema::A2).is_err());
}

