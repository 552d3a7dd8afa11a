//! Acceptance suite. Runs every exit criterion, prints one PASS/FAIL line
//! each, and exits non-zero if any criterion fails.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use zz_core::codec::*;
use zz_core::scan::*;
use zz_core::spectrum::{spectrum_source, SpectrumMode};
use zz_core::transform::oracle::naive_dct_oracle;
use zz_core::transform::*;
use zz_core::volume_io::*;

const GOLDEN: &[u8] = include_bytes!("../../core/tests/fixtures/smooth16_b8_q8_zigzag3d.zzc");
const DCT_TOL: f64 = 1e-9;
const DC_TOL: f64 = 1e-6;
const SPECTRUM_TIME_LIMIT: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_bijectivity() -> Outcome {
    let mut rng = Rng::new(1);
    let mut checked = 0;
    for rows in 1..=12 {
        for cols in 1..=12 {
            let mut orders = vec![rect_zigzag_order(rows, cols).unwrap()];
            if rows == cols {
                orders.push(square_zigzag_order(rows).unwrap());
            }
            for order in orders {
                let seen: HashSet<_> = order.coords2().into_iter().collect();
                ensure(
                    seen.len() == rows * cols && order.len() == rows * cols,
                    || format!("{rows}x{cols} is not a permutation"),
                )?;
                let m = Matrix::from_fn(rows, cols, |_, _| rng.next_f64()).unwrap();
                let back = invert_scan(&apply_scan(&m, &order).unwrap(), &order).unwrap();
                ensure(back == Grid::Matrix(m), || {
                    format!("{rows}x{cols} round trip")
                })?;
                checked += 1;
            }
        }
    }
    for n in 1..=16 {
        let order = cubic_zigzag_order(n).unwrap();
        let seen: HashSet<_> = order.coords3().into_iter().collect();
        ensure(seen.len() == n * n * n, || {
            format!("cube n={n} is not a permutation")
        })?;
        let c = Cube::from_fn(n, n, n, |_, _, _| rng.next_f64()).unwrap();
        let back = invert_scan(&apply_scan(&c, &order).unwrap(), &order).unwrap();
        ensure(back == Grid::Cube(c), || format!("cube n={n} round trip"))?;
        checked += 1;
    }
    Ok(format!("{checked} orders exact"))
}

fn c2_pins() -> Outcome {
    let as2 = |o: ScanOrder| {
        o.coords2()
            .iter()
            .map(|c| (c.row, c.col))
            .collect::<Vec<_>>()
    };
    let sq4 = vec![
        (0, 0),
        (1, 0),
        (0, 1),
        (0, 2),
        (1, 1),
        (2, 0),
        (3, 0),
        (2, 1),
        (1, 2),
        (0, 3),
        (1, 3),
        (2, 2),
        (3, 1),
        (3, 2),
        (2, 3),
        (3, 3),
    ];
    ensure(as2(square_zigzag_order(4).unwrap()) == sq4, || {
        "square n=4".into()
    })?;
    ensure(
        as2(rect_zigzag_order(2, 3).unwrap()) == [(0, 0), (1, 0), (0, 1), (0, 2), (1, 1), (1, 2)],
        || "rect 2x3".into(),
    )?;
    ensure(
        as2(rect_zigzag_order(3, 2).unwrap()) == [(0, 0), (0, 1), (1, 0), (2, 0), (1, 1), (2, 1)],
        || "rect 3x2".into(),
    )?;
    let cube2: Vec<_> = cubic_zigzag_order(2)
        .unwrap()
        .coords3()
        .iter()
        .map(|c| (c.row, c.col, c.band))
        .collect();
    ensure(
        cube2
            == [
                (0, 0, 0),
                (0, 0, 1),
                (0, 1, 0),
                (1, 0, 0),
                (1, 1, 0),
                (1, 0, 1),
                (0, 1, 1),
                (1, 1, 1),
            ],
        || "cube n=2".into(),
    )?;
    Ok("4 tables match".into())
}

fn c3_monotonicity() -> Outcome {
    let steps_ok =
        |sums: &[usize]| sums[0] == 0 && sums.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
    for rows in 1..=12 {
        for cols in 1..=12 {
            let coords = rect_zigzag_order(rows, cols).unwrap().coords2();
            let sums: Vec<_> = coords.iter().map(|c| c.row + c.col).collect();
            ensure(steps_ok(&sums), || format!("{rows}x{cols} sums"))?;
            ensure(
                coords.last() == Some(&Coord2::new(rows - 1, cols - 1)),
                || format!("{rows}x{cols} endpoint"),
            )?;
        }
    }
    for n in 1..=16 {
        let coords = cubic_zigzag_order(n).unwrap().coords3();
        let sums: Vec<_> = coords.iter().map(|c| c.row + c.col + c.band).collect();
        ensure(steps_ok(&sums), || format!("cube n={n} sums"))?;
        ensure(
            coords[0] == Coord3::new(0, 0, 0)
                && coords.last() == Some(&Coord3::new(n - 1, n - 1, n - 1)),
            || format!("cube n={n} endpoints"),
        )?;
        for s in 0..=3 * (n - 1) {
            let expected = (0..n)
                .flat_map(|r| (0..n).map(move |c| (r, c)))
                .filter(|&(r, c)| s >= r + c && s - r - c < n)
                .count();
            let got = sums.iter().filter(|&&x| x == s).count();
            ensure(got == expected, || {
                format!("cube n={n} plane {s}: {got} != {expected}")
            })?;
        }
    }
    Ok("sums monotone, plane sizes match".into())
}

fn c4_degeneration() -> Outcome {
    for n in 1..=16 {
        ensure(
            rect_zigzag_order(n, n).unwrap() == square_zigzag_order(n).unwrap(),
            || format!("n={n}"),
        )?;
    }
    Ok("n = 1..16".into())
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn c5_transforms() -> Outcome {
    let mut rng = Rng::new(5);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let dims: Vec<usize> = (0..(i % 3) + 1)
            .map(|_| 1 + (rng.next_u64() % 8) as usize)
            .collect();
        let size: usize = dims.iter().product();
        let x: Vec<f64> = (0..size).map(|_| rng.next_f64() * 510.0 - 255.0).collect();
        let (fwd, inv, oracle) = match dims[..] {
            [n] => {
                let f = dct1(&x).unwrap();
                let b = idct1(&f).unwrap();
                (f, b, naive_dct_oracle(&x, &[n]).unwrap())
            }
            [r, c] => {
                let f = dct2d(&Matrix::new(r, c, x.clone()).unwrap()).unwrap();
                let b = idct2d(&f).unwrap().into_vec();
                (f.into_vec(), b, naive_dct_oracle(&x, &[r, c]).unwrap())
            }
            [r, c, b] => {
                let f = dct3d(&Cube::new(r, c, b, x.clone()).unwrap()).unwrap();
                let back = idct3d(&f).unwrap().into_vec();
                (
                    f.into_vec(),
                    back,
                    naive_dct_oracle(&x, &[b, r, c]).unwrap(),
                )
            }
            _ => unreachable!(),
        };
        let oracle_err = max_abs_diff(&fwd, &oracle);
        let trip_err = max_abs_diff(&inv, &x);
        let e_in: f64 = x.iter().map(|v| v * v).sum();
        let e_out: f64 = fwd.iter().map(|v| v * v).sum();
        let parseval = (e_in - e_out).abs() / e_in.max(f64::MIN_POSITIVE);
        let dc_err = (fwd[0] - x.iter().sum::<f64>() / (size as f64).sqrt()).abs();
        worst = worst.max(oracle_err).max(trip_err).max(dc_err);
        ensure(
            oracle_err < DCT_TOL && trip_err < DCT_TOL && parseval < DCT_TOL && dc_err < DCT_TOL,
            || {
                format!(
                    "instance {i} {dims:?}: oracle {oracle_err:e}, round trip {trip_err:e}, \
                     parseval {parseval:e}, dc {dc_err:e}"
                )
            },
        )?;
    }
    Ok(format!("200 instances, worst abs error {worst:.2e}"))
}

fn run_spectrum(n: &str, mode: &str) -> Result<(Vec<f64>, Duration), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("spectrum.csv");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_zz"))
        .args(["spectrum", "--n", n, "--mode", mode, "--seed", "1", "--out"])
        .arg(&out)
        .env("ZZ_LOG", "error")
        .status()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(status.success(), || {
        format!("spectrum exited with {status}")
    })?;
    let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    ensure(lines.next() == Some("index,coefficient"), || {
        "bad CSV header".into()
    })?;
    let values = lines
        .enumerate()
        .map(|(i, l)| {
            let (idx, v) = l.split_once(',').ok_or("malformed row")?;
            if idx.parse::<usize>().ok() != Some(i) {
                return Err(format!("row {i} has index {idx}"));
            }
            v.parse::<f64>().map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((values, elapsed))
}

fn check_spectrum(n: usize, mode: SpectrumMode, flag: &str) -> Result<String, String> {
    let (values, elapsed) = run_spectrum(&n.to_string(), flag)?;
    ensure(values.len() == 4096, || {
        format!("{flag}: {} values", values.len())
    })?;
    let src = spectrum_source(n, mode, 1).unwrap();
    let mean = src.samples().iter().map(|&s| s as f64).sum::<f64>() / src.len() as f64;
    let expected_dc = (src.len() as f64).sqrt() * mean;
    ensure((values[0] - expected_dc).abs() < DC_TOL, || {
        format!("{flag}: DC {} != {expected_dc}", values[0])
    })?;
    let max_rest = values[1..].iter().map(|v| v.abs()).fold(0.0, f64::max);
    ensure(values[0].abs() > max_rest, || {
        format!("{flag}: DC {} not dominant over {max_rest}", values[0])
    })?;
    ensure(elapsed < SPECTRUM_TIME_LIMIT, || {
        format!("{flag}: took {elapsed:?}")
    })?;
    Ok(format!(
        "{flag}: DC {:.4} (next {max_rest:.2}), {:.0} ms",
        values[0],
        elapsed.as_secs_f64() * 1000.0
    ))
}

fn c6_spectra() -> Outcome {
    let a = check_spectrum(64, SpectrumMode::TwoD, "2d")?;
    let b = check_spectrum(16, SpectrumMode::ThreeD, "3d")?;
    Ok(format!("{a}; {b}"))
}

fn c7_entropy() -> Outcome {
    let bits = |f: &dyn Fn(&mut BitWriter)| {
        let mut w = BitWriter::new();
        f(&mut w);
        w.to_bit_string()
    };
    let pins = [
        (bits(&|w| w.write_ue(0)), "1"),
        (bits(&|w| w.write_ue(1)), "010"),
        (bits(&|w| w.write_ue(4)), "00101"),
        (bits(&|w| w.write_se(1)), "010"),
        (bits(&|w| w.write_se(-1)), "011"),
    ];
    for (got, want) in &pins {
        ensure(got == want, || format!("{got} != {want}"))?;
    }

    let mut rng = Rng::new(7);
    for trial in 0..1000 {
        let block_volume = [8usize, 64, 512, 4096][trial % 4];
        let count = 1 + (rng.next_u64() % 6) as usize;
        let blocks: Vec<EncodedBlock> = (0..count)
            .map(|_| {
                let mut symbols = Vec::new();
                let mut span = 0usize;
                loop {
                    let run = (rng.next_u64() % 10) as u32;
                    let mag = 1 + (rng.next_u64() % 3000) as i32;
                    let level = if rng.next_u64() % 2 == 0 { mag } else { -mag };
                    if span + run as usize + 1 > block_volume || rng.next_u64() % 8 == 0 {
                        break;
                    }
                    span += run as usize + 1;
                    symbols.push(RleSymbol::new(run, level));
                }
                EncodedBlock { symbols }
            })
            .collect();
        let w = write_symbols(&blocks);
        let back = read_symbols(w.as_bytes(), blocks.len(), block_volume)
            .map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(back == blocks, || format!("trial {trial} differs"))?;
    }
    Ok("5 code pins, 1000 random round trips".into())
}

fn c8_codec() -> Outcome {
    let v = synth_volume(SynthKind::Smooth, 16, 16, 16, 0).unwrap();
    let mut prev: Option<(usize, f64)> = None;
    let mut at_q8 = None;
    let mut sweep = Vec::new();
    for q in [1u16, 2, 4, 8, 16, 32] {
        let reports = compare_scan_orders(&v, 8, q).map_err(|e| e.to_string())?;
        ensure(
            reports.iter().all(|r| r.psnr_db == reports[0].psnr_db),
            || format!("q={q}: PSNR differs across scans"),
        )?;
        let zz = reports.iter().find(|r| r.scan == ScanId::Zigzag3d).unwrap();
        if let Some((size, db)) = prev {
            ensure(zz.compressed_bytes <= size && zz.psnr_db <= db, || {
                format!(
                    "q={q}: not monotone ({} B, {:.3} dB)",
                    zz.compressed_bytes, zz.psnr_db
                )
            })?;
        }
        prev = Some((zz.compressed_bytes, zz.psnr_db));
        sweep.push(format!("q{q}={}B/{:.2}dB", zz.compressed_bytes, zz.psnr_db));
        if q == 8 {
            at_q8 = Some(reports);
        }
    }
    let reports = at_q8.unwrap();
    let size = |s| {
        reports
            .iter()
            .find(|r| r.scan == s)
            .unwrap()
            .compressed_bytes
    };
    let (zz, raster) = (size(ScanId::Zigzag3d), size(ScanId::Raster3d));
    ensure(zz <= raster, || {
        format!("q=8: zigzag3d {zz} B > raster3d {raster} B")
    })?;
    Ok(format!(
        "{}; q8 zigzag3d {zz} B vs raster3d {raster} B ({:.1}% smaller)",
        sweep.join(" "),
        100.0 * (raster - zz) as f64 / raster as f64
    ))
}

fn c9_format() -> Outcome {
    let v = synth_volume(SynthKind::Smooth, 16, 16, 16, 0).unwrap();
    let cfg = CodecConfig::new(8, 8, ScanId::Zigzag3d).unwrap();
    let a = encode_volume(&v, &cfg).map_err(|e| e.to_string())?;
    let b = encode_volume(&v, &cfg).map_err(|e| e.to_string())?;
    ensure(a == b, || "encode is not deterministic".into())?;
    ensure(a == GOLDEN, || "stream differs from golden fixture".into())?;

    let r = synth_volume(SynthKind::UniformRandom, 7, 5, 3, 9).unwrap();
    ensure(read_vol(&write_vol(&r)).ok().as_ref() == Some(&r), || {
        "ZZV1 round trip".into()
    })?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let paths = write_pgm_sequence(&r, dir.path(), "f").map_err(|e| e.to_string())?;
    ensure(read_pgm_sequence(&paths).ok().as_ref() == Some(&r), || {
        "PGM round trip".into()
    })?;
    Ok(format!(
        "{} byte stream matches fixture; ZZV1/PGM exact",
        a.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 scan bijectivity", c1_bijectivity),
        ("2 canonical order pins", c2_pins),
        ("3 plane monotonicity and segment sizes", c3_monotonicity),
        ("4 rect(n,n) = square(n)", c4_degeneration),
        ("5 transform correctness", c5_transforms),
        ("6 spectrum DC dominance", c6_spectra),
        ("7 entropy layer losslessness", c7_entropy),
        ("8 codec behavior on smooth 16^3", c8_codec),
        ("9 format stability", c9_format),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome =
            std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_string()));
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        match outcome {
            Ok(detail) => println!("PASS  [{name}] {detail} ({ms:.0} ms)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  [{name}] {detail} ({ms:.0} ms)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
