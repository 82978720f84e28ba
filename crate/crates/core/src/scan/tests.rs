use super::*;

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn cfg() -> ScanConfig {
    ScanConfig::default()
}

fn x2p1() -> Family {
    Family::quadratic(QuadraticGPF::new(1, 0, 1).unwrap()).unwrap()
}

#[test]
fn single_values() {
    let out = scan_gpf(&p(&[1, 0, 1]), 1, 1, &cfg()).unwrap();
    let r = &out.records[0];
    assert_eq!(r.f_n, BigInt::from(2));
    assert_eq!(r.gpf, Some(BigUint::from(2u32)));
    assert_eq!(r.rad, Some(BigUint::from(2u32)));
    assert_eq!(r.flags, Flag::Ok);

    let out = scan_gpf(&p(&[-5, 1]), 5, 5, &cfg()).unwrap();
    assert_eq!(out.records.len(), 1);
    assert_eq!(out.records[0].flags, Flag::ZeroValue);
    assert_eq!(out.records[0].gpf, None);
    assert_eq!(out.summary.zero_value, 1);
}

#[test]
fn rejects_bad_scans() {
    assert!(matches!(
        scan_gpf(&p(&[3]), 1, 5, &cfg()),
        Err(Error::Usage(_))
    ));
    assert!(matches!(
        scan_gpf(&p(&[0, 1]), 5, 1, &cfg()),
        Err(Error::Usage(_))
    ));
    assert!(matches!(
        scan_family(&x2p1(), 5, 1, &cfg()),
        Err(Error::Usage(_))
    ));
}

#[test]
fn luca_golden_values() {
    let rows = luca_table().unwrap();
    assert_eq!(rows.len(), 10);
    for r in &rows {
        assert!(
            r.matches(),
            "n = {}: got {}, expected {}",
            r.n,
            r.gpf,
            r.expected
        );
    }
    assert_eq!(rows[3].gpf, BigUint::from(89u32));
    assert_eq!(rows[5].gpf, BigUint::from(586034332757317u64));
}

#[test]
fn running_minima_track_drops() {
    let f = p(&[1, 0, 1]);
    let out = scan_gpf(&f, LUCA_GOLDEN[0].0, LUCA_GOLDEN[9].0, &cfg()).unwrap();
    let minima: Vec<(i64, u64)> = out
        .summary
        .running_minima
        .iter()
        .map(|m| (m.n, m.gpf.to_string().parse().unwrap()))
        .collect();
    assert_eq!(minima, vec![(24208141, 119529857), (24208144, 89)]);
}

#[test]
fn surface_fiber_row() {
    let fam = Family::surface(p(&[0, 1]), p(&[1])).unwrap();
    let out = scan_family(&fam, 0, 0, &cfg()).unwrap();
    let r = &out.records[0];
    assert_eq!(r.f_n, BigInt::from(-432));
    assert_eq!(r.delta_min, Some(BigInt::from(-432)));
    assert_eq!(r.conductor, Some(BigUint::from(36u32)));
    let expected = 432f64.ln() / 36f64.ln();
    assert!((r.szpiro_ratio.unwrap() - expected).abs() < 1e-12);
    assert!(r.kappa_emp.is_some());
    assert_eq!(r.quasi_ratio.as_deref(), Some("1"));
}

#[test]
fn bad_fibers_are_marked() {
    let fam = Family::surface(p(&[-3]), p(&[0, 1])).unwrap();
    let out = scan_family(&fam, -3, 3, &cfg()).unwrap();
    let bad: Vec<i64> = out
        .records
        .iter()
        .filter(|r| r.flags == Flag::BadFiber)
        .map(|r| r.n)
        .collect();
    assert_eq!(bad, vec![-2, 2]);
    assert_eq!(out.summary.bad_fiber, 2);
    assert_eq!(out.records.len(), 7);
}

#[test]
fn quadratic_family_divisibility() {
    let out = scan_family(&x2p1(), 1, 50, &cfg()).unwrap();
    assert_eq!(out.summary.ok, 50);
    for r in &out.records {
        assert_eq!(r.rad_divides, Some(true));
        assert!(is_twelfth_power_ratio(r.quasi_ratio.as_deref().unwrap()));
        assert_eq!(r.f_n, BigInt::from(r.n * r.n + 1));
    }
    assert!(!out.summary.quasi_ratios.is_empty());
}

#[test]
fn cubic_family_rows() {
    let fam = Family::cubic(CubicGPF::new(1, 0, 1).unwrap()).unwrap();
    // n = -1 makes f = 0, a bad fiber
    let out = scan_family(&fam, -3, 20, &cfg()).unwrap();
    assert_eq!(out.summary.bad_fiber, 1);
    assert!(out
        .records
        .iter()
        .filter(|r| r.flags == Flag::Ok)
        .all(|r| r.rad_divides == Some(true)));
}

#[test]
fn condition_probe() {
    let rep = check_condition(&p(&[1, 0, 1]), 1, 100, &cfg()).unwrap();
    assert_eq!(rep.rows.len(), 100);
    let max = rep.max_mu_emp.unwrap();
    assert!(max.value.is_finite() && max.value > 0.0);
    // 2 = 1 + 1 is squarefree
    assert_eq!(rep.rows[0].mu_emp, 0.0);
    // 7^2 + 1 = 50 = 2 5^2: product 2, radical 10
    let r7 = rep.rows.iter().find(|r| r.n == 7).unwrap();
    assert_eq!(r7.val_product, BigUint::from(2u32));
    assert!((r7.mu_emp - 2f64.ln() / 10f64.ln()).abs() < 1e-12);
    let total: u64 = rep.histogram.iter().map(|b| b.count).sum();
    assert_eq!(total, 100);

    let err = check_condition(&p(&[1, -2, 1]), 1, 10, &cfg()).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
}

#[test]
fn factor_cap_rows_are_flagged() {
    // (x + 1000003)(x + 1000033) has two prime factors above the trial bound
    let f = &p(&[1000003, 1]) * &p(&[1000033, 1]);
    let mut c = cfg();
    c.factor.max_rho_iterations = 1;
    let out = scan_gpf(&f, 0, 2, &c).unwrap();
    assert_eq!(out.records[0].flags, Flag::FactorCap);
    assert_eq!(out.records.len(), 3);
    assert!(out.summary.factor_cap >= 1);
}

#[test]
fn chunk_size_does_not_matter() {
    let base = scan_family(&x2p1(), 1, 300, &cfg()).unwrap();
    for size in [1, 7, 64] {
        let c = ScanConfig {
            chunk_size: size,
            ..cfg()
        };
        let other = scan_family(&x2p1(), 1, 300, &c).unwrap();
        assert_eq!(other, base);
    }
}

#[test]
fn digest_ignores_chunk_size_only() {
    let job = ScanJob::Family(x2p1());
    let a = spec_digest(&job, 1, 10, &cfg(), Format::Csv);
    let c = ScanConfig {
        chunk_size: 3,
        ..cfg()
    };
    assert_eq!(a, spec_digest(&job, 1, 10, &c, Format::Csv));
    assert_ne!(a, spec_digest(&job, 1, 11, &cfg(), Format::Csv));
    assert_ne!(a, spec_digest(&job, 1, 10, &cfg(), Format::Json));
    let other = ScanJob::Gpf(p(&[1, 0, 1]));
    assert_ne!(a, spec_digest(&other, 1, 10, &cfg(), Format::Csv));
}

#[test]
fn twelfth_powers() {
    assert!(is_twelfth_power_ratio("1"));
    assert!(is_twelfth_power_ratio("4096"));
    assert!(is_twelfth_power_ratio("1/4096"));
    assert!(is_twelfth_power_ratio("-4096"));
    assert!(!is_twelfth_power_ratio("64"));
    assert!(!is_twelfth_power_ratio("3/2"));
}

mod files {
    use super::*;
    use std::fs;

    fn run(
        dir: &std::path::Path,
        name: &str,
        format: Format,
        chunk: usize,
        stop: Option<u64>,
        ckpt: bool,
    ) -> Result<RunOutcome> {
        let c = ScanConfig {
            chunk_size: chunk,
            ..cfg()
        };
        let opts = RunOptions {
            out: Some(dir.join(name)),
            format: Some(format),
            checkpoint: ckpt.then(|| dir.join(format!("{name}.ckpt"))),
            stop_after_chunks: stop,
        };
        run_scan(&ScanJob::Family(x2p1()), 1, 400, &c, &opts)
    }

    #[test]
    fn resume_is_byte_identical() {
        for format in [Format::Csv, Format::Json] {
            let dir = tempfile::tempdir().unwrap();
            let full = run(dir.path(), "full", format, 50, None, false).unwrap();
            assert!(full.finished);

            let first = run(dir.path(), "part", format, 50, Some(3), true).unwrap();
            assert!(!first.finished);
            assert_eq!(first.rows_written, 150);
            // a chunk in flight when the process died
            let mut f = fs::OpenOptions::new()
                .append(true)
                .open(dir.path().join("part"))
                .unwrap();
            std::io::Write::write_all(&mut f, b"151,garbage,,,").unwrap();
            drop(f);

            let rest = run(dir.path(), "part", format, 50, None, true).unwrap();
            assert!(rest.finished);
            assert_eq!(rest.resumed_from, Some(151));
            assert_eq!(rest.summary, full.summary);
            let a = fs::read(dir.path().join("full")).unwrap();
            let b = fs::read(dir.path().join("part")).unwrap();
            assert_eq!(a, b);

            // finished checkpoints are a no-op
            let again = run(dir.path(), "part", format, 50, None, true).unwrap();
            assert!(again.finished);
            assert_eq!(fs::read(dir.path().join("part")).unwrap(), a);
        }
    }

    #[test]
    fn outputs_parse_back() {
        let dir = tempfile::tempdir().unwrap();
        run(dir.path(), "a.csv", Format::Csv, 1024, None, false).unwrap();
        run(dir.path(), "a.json", Format::Json, 1024, None, false).unwrap();
        let csv = read_csv(&fs::read_to_string(dir.path().join("a.csv")).unwrap()).unwrap();
        let json = read_json(&fs::read_to_string(dir.path().join("a.json")).unwrap()).unwrap();
        assert_eq!(csv.len(), 400);
        assert_eq!(json.len(), 400);
        for (c, j) in csv.iter().zip(&json) {
            assert_eq!(c.csv_fields(), j.csv_fields());
        }
        assert!(json.iter().all(|r| r.rad_divides == Some(true)));
    }

    #[test]
    fn mismatched_checkpoint_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        run(dir.path(), "x", Format::Csv, 50, Some(1), true).unwrap();
        let c = ScanConfig {
            chunk_size: 50,
            ..cfg()
        };
        let opts = RunOptions {
            out: Some(dir.path().join("x")),
            format: Some(Format::Csv),
            checkpoint: Some(dir.path().join("x.ckpt")),
            stop_after_chunks: None,
        };
        let err = run_scan(&ScanJob::Family(x2p1()), 1, 401, &c, &opts).unwrap_err();
        assert!(matches!(err, Error::Checkpoint(_)));
        assert_eq!(err.exit_code(), 1);

        // a different chunk size is the same scan
        assert!(
            run(dir.path(), "x", Format::Csv, 17, None, true)
                .unwrap()
                .finished
        );
    }
}
