//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::HashMap;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use adrt::bench::loglog_slope;
use adrt::cli::DEFAULT_SEED;
use adrt::io::{encode_transform, write_image, ImageFormat};
use adrt::random::{integer_image, rng, seeded_integer_image};
use adrt::{
    adrt_direct_full, adrt_full, adrt_single_quadrant, adrt_single_quadrant_with_ledger,
    digital_line, iadrt, iadrt_from_full, iadrt_with_ledger, merge_level, split_level, CostLedger,
    Image, Quadrant, SectionedTransform,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 exact roundtrip, 50 integer images per n in 1..=8", exact_roundtrip),
        ("2 oracle equivalence, 20 integer images per n in 1..=5", oracle_equivalence),
        ("3 digital-line invariants, all (h, s) for m in 1..=6", line_invariants),
        ("4 split_level inverts merge_level, 1 <= m <= n <= 6", level_inverse),
        ("5 inversion ledger equals Total(n), n in 1..=10", operation_count),
        ("6 Total(n)/(4^n n) in [1.5, 2.5], n in 2..=12", scaling),
        ("7 every quadrant reconstructs the image, n <= 6", single_quadrant_sufficiency),
        ("8 CLI golden outputs and exit codes", cli_golden),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} ({secs:.2}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2}s) {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bits_equal(a: &Image, b: &Image) -> bool {
    a.level() == b.level()
        && a.values().iter().zip(b.values()).all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Closed-form count, evaluated by straightforward summation.
fn total_by_sum(n: u32) -> u64 {
    let mut total = 0u64;
    for m in 1..=n {
        let mut per_section = 0u64;
        for s in 0..(1u64 << (m - 1)) {
            per_section += (1u64 << n) + s;
        }
        total += (1u64 << (n - m + 1)) * 2 * per_section;
    }
    total
}

fn level_bound(n: u32) -> u64 {
    (1..=n)
        .map(|m| (1u64 << (n - m)) * 2 * (1u64 << (m - 1)) * ((1u64 << (n + 1)) + (1u64 << m) + 1))
        .sum()
}

fn exact_roundtrip() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1001);
    for n in 1..=8 {
        for trial in 0..50 {
            let img = integer_image(&mut r, n, 65535);
            let back = iadrt(&adrt_single_quadrant(&img)).map_err(|e| e.to_string())?;
            ensure(bits_equal(&back, &img), || format!("n={n} trial={trial} not bit-exact"))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s, limit 60s"))?;
    Ok("400 images bit-exact".into())
}

fn oracle_equivalence() -> Outcome {
    let mut r = rng(1002);
    for n in 1..=5 {
        for trial in 0..20 {
            let img = integer_image(&mut r, n, 65535);
            let fast = adrt_single_quadrant(&img);
            let direct = adrt_direct_full(&img, n).map_err(|e| e.to_string())?;
            ensure(fast == direct, || format!("n={n} trial={trial} differs from direct sums"))?;
        }
    }
    Ok("100 images equal entrywise".into())
}

fn line_invariants() -> Outcome {
    let mut lines_checked = 0u64;
    for m in 1..=6u32 {
        let n = m;
        let rows = 1i64 << m;
        let side = 1i64 << n;
        let half = 1i64 << (m - 1);
        for s in 0..(1usize << m) {
            // partition of the window {-2^m..=2^n+2^m} x {0..2^m}
            let lo = -rows;
            let hi = side + rows;
            let mut cover: HashMap<(i64, i64), u32> = HashMap::new();
            for h in (lo - s as i64)..=hi {
                let line = digital_line(m, h, s).map_err(|e| e.to_string())?;
                for (i, j) in line.pixels() {
                    if (lo..=hi).contains(&i) {
                        *cover.entry((i, j)).or_default() += 1;
                    }
                }
            }
            for i in lo..=hi {
                for j in 0..rows {
                    let c = cover.get(&(i, j)).copied().unwrap_or(0);
                    ensure(c == 1, || format!("m={m} s={s}: pixel ({i},{j}) covered {c} times"))?;
                }
            }

            for h in -(s as i64)..side {
                let line = digital_line(m, h, s).map_err(|e| e.to_string())?;
                let px: Vec<(i64, i64)> = line.pixels().collect();
                lines_checked += 1;
                ensure(px.len() == rows as usize, || format!("m={m} h={h} s={s}: {} pixels", px.len()))?;
                for (k, &(_, j)) in px.iter().enumerate() {
                    ensure(j == k as i64, || format!("m={m} h={h} s={s}: row {j} at position {k}"))?;
                }
                // span
                for &(i, j) in &px {
                    ensure(h <= i && i <= h + s as i64, || {
                        format!("m={m} h={h} s={s}: pixel ({i},{j}) outside [h, h+s]")
                    })?;
                }
                // endpoints
                ensure(px[0] == (h, 0) && px[rows as usize - 1] == (h + s as i64, rows - 1), || {
                    format!("m={m} h={h} s={s}: endpoints {:?} {:?}", px[0], px[rows as usize - 1])
                })?;
                // increments
                let mut rise = 0i64;
                for w in px.windows(2) {
                    let d = w[1].0 - w[0].0;
                    ensure(d == 0 || d == 1, || format!("m={m} h={h} s={s}: increment {d}"))?;
                    rise += d;
                }
                ensure(rise == s as i64, || format!("m={m} h={h} s={s}: rise {rise}"))?;
                // disjoint halves glued from level m-1
                let t = s / 2;
                let lower = digital_line(m - 1, h, t).map_err(|e| e.to_string())?;
                let upper = digital_line(m - 1, h + (t + s % 2) as i64, t).map_err(|e| e.to_string())?;
                let lower_px: Vec<(i64, i64)> = lower.pixels().collect();
                let upper_px: Vec<(i64, i64)> = upper.pixels().map(|(i, j)| (i, j + half)).collect();
                ensure(lower_px.iter().all(|p| !upper_px.contains(p)), || {
                    format!("m={m} h={h} s={s}: halves intersect")
                })?;
                let glued: Vec<(i64, i64)> = lower_px.into_iter().chain(upper_px).collect();
                ensure(glued == px, || format!("m={m} h={h} s={s}: halves do not form the line"))?;
            }
        }
    }
    Ok(format!("{lines_checked} lines checked"))
}

fn random_stack(r: &mut impl Rng, n: u32, m: u32) -> SectionedTransform {
    let mut t = SectionedTransform::zeros(n, m).expect("valid levels");
    for l in 0..t.section_count() {
        for s in 0..t.slope_count() {
            for h in -(s as i64)..(1 << n) {
                t.set(l, h, s, r.random_range(0..=65535) as f64).expect("in support");
            }
        }
    }
    t
}

fn level_inverse() -> Outcome {
    let mut r = rng(1004);
    let mut cases = 0;
    for n in 1..=6 {
        for m in 1..=n {
            for _ in 0..5 {
                let lower = random_stack(&mut r, n, m - 1);
                let mut ledger = CostLedger::new();
                let upper = merge_level(&lower, &mut ledger).map_err(|e| e.to_string())?;
                let back = split_level(&upper, &mut ledger).map_err(|e| e.to_string())?;
                ensure(back == lower, || format!("n={n} m={m}: split(merge(X)) != X"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} stacks restored exactly"))
}

fn operation_count() -> Outcome {
    ensure(total_by_sum(1) == 8 && total_by_sum(2) == 68, || {
        format!("Total(1)={}, Total(2)={}", total_by_sum(1), total_by_sum(2))
    })?;
    let mut r = rng(1005);
    for n in 1..=10 {
        let img = integer_image(&mut r, n, 65535);
        let (_, ledger) = iadrt_with_ledger(&adrt_single_quadrant(&img)).map_err(|e| e.to_string())?;
        let expected = total_by_sum(n);
        ensure(ledger.total() == expected, || {
            format!("n={n}: ledger {} != Total {expected}", ledger.total())
        })?;
        ensure(ledger.total() <= level_bound(n), || {
            format!("n={n}: ledger {} exceeds level bound {}", ledger.total(), level_bound(n))
        })?;
    }
    Ok(format!("Total(10) = {}", total_by_sum(10)))
}

fn scaling() -> Outcome {
    for n in 2..=12u32 {
        let total = total_by_sum(n) as u128;
        let scale = (1u128 << (2 * n)) * n as u128;
        // 1.5 <= total / scale <= 2.5 in integer arithmetic
        ensure(2 * total >= 3 * scale && 2 * total <= 5 * scale, || {
            format!("n={n}: ratio {}", total as f64 / scale as f64)
        })?;
    }

    // reported only: measured log-log slopes for n in 8..=11
    let mut fwd = Vec::new();
    let mut inv = Vec::new();
    for n in 8..=11u32 {
        let img = seeded_integer_image(n, 1006);
        let (mut tf, mut ti) = (Vec::new(), Vec::new());
        for _ in 0..3 {
            let start = Instant::now();
            let (top, _) = adrt_single_quadrant_with_ledger(&img);
            tf.push(start.elapsed().as_secs_f64());
            let start = Instant::now();
            let _ = iadrt_with_ledger(&top);
            ti.push(start.elapsed().as_secs_f64());
        }
        tf.sort_by(f64::total_cmp);
        ti.sort_by(f64::total_cmp);
        let pixels = (1u64 << (2 * n)) as f64;
        fwd.push((pixels, tf[1]));
        inv.push((pixels, ti[1]));
    }
    let report = match (loglog_slope(&fwd), loglog_slope(&inv)) {
        (Ok(f), Ok(i)) => {
            let flag = |x: f64| if (0.9..=1.35).contains(&x) { "in range" } else { "out of range" };
            format!(
                "measured slopes: forward {f:.3} ({}), inverse {i:.3} ({}) [reported, not gated]",
                flag(f),
                flag(i)
            )
        }
        (a, b) => format!("slope fit unavailable: {a:?} {b:?}"),
    };
    Ok(report)
}

fn single_quadrant_sufficiency() -> Outcome {
    let mut r = rng(1007);
    for n in 0..=6 {
        for _ in 0..3 {
            let img = integer_image(&mut r, n, 65535);
            let full = adrt_full(&img);
            for q in Quadrant::ALL {
                let back = iadrt_from_full(&full, q).map_err(|e| e.to_string())?;
                ensure(bits_equal(&back, &img), || format!("n={n}: quadrant {q} differs"))?;
            }
        }
    }
    Ok("21 images from each of 4 quadrants".into())
}

fn run_cli(args: &[&str]) -> Result<(i32, String, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_adrt"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run adrt: {e}"))?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    ))
}

fn expect_code(args: &[&str], code: i32) -> Result<(), String> {
    let (got, _, err) = run_cli(args)?;
    ensure(got == code, || format!("{args:?}: exit {got}, expected {code} ({})", err.trim()))
}

fn cli_golden() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name);
    let s = |path: &Path| path.to_str().expect("utf-8 temp path").to_string();

    let lines_csv = p("lines.csv");
    expect_code(&["lines", "--m", "2", "--h", "0", "--s", "3", "--output", &s(&lines_csv)], 0)?;
    let text = std::fs::read_to_string(&lines_csv).map_err(|e| e.to_string())?;
    ensure(text == "i,j\n0,0\n1,1\n2,2\n3,3\n", || format!("lines output {text:?}"))?;

    let img_path = p("seeded.pgm");
    write_image(&seeded_integer_image(6, DEFAULT_SEED), &img_path, Some(ImageFormat::Pgm))
        .map_err(|e| e.to_string())?;
    let report = p("report.json");
    expect_code(&["roundtrip", "--input", &s(&img_path), "--report", &s(&report)], 0)?;
    let json: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(&report).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let total6 = total_by_sum(6);
    ensure(total6 == 52800, || format!("Total(6) = {total6}"))?;
    ensure(json["n"] == 6, || format!("n = {}", json["n"]))?;
    ensure(json["max_abs_err"].as_f64() == Some(0.0), || format!("max_abs_err = {}", json["max_abs_err"]))?;
    ensure(json["additions"] == total6 / 2, || format!("additions = {}", json["additions"]))?;
    ensure(json["subtractions"] == total6 / 2, || format!("subtractions = {}", json["subtractions"]))?;
    ensure(json["total_expected"] == total6, || format!("total_expected = {}", json["total_expected"]))?;
    for key in ["forward_seconds", "inverse_seconds"] {
        ensure(json[key].is_number(), || format!("{key} missing"))?;
    }

    // malformed inputs
    let five = p("five.pgm");
    std::fs::write(&five, format!("P2\n5 5\n255\n{}\n", vec!["0"; 25].join(" "))).map_err(|e| e.to_string())?;
    expect_code(&["forward", "--input", &s(&five), "--output", &s(&p("five.adrt"))], 2)?;

    let truncated = p("short.adri");
    std::fs::write(&truncated, b"ADRI\x01\x01\x00\x00\x00\x00\x00\x00").map_err(|e| e.to_string())?;
    expect_code(&["roundtrip", "--input", &s(&truncated)], 1)?;

    let mut bytes = encode_transform(&adrt_single_quadrant(&seeded_integer_image(2, 1)), Some(Quadrant::Identity));
    bytes[4] = 2;
    let bad_version = p("v2.adrt");
    std::fs::write(&bad_version, &bytes).map_err(|e| e.to_string())?;
    expect_code(&["inverse", "--input", &s(&bad_version), "--output", &s(&p("out.csv"))], 1)?;

    expect_code(&["forward", "--bogus"], 2)?;
    expect_code(&["lines", "--m", "2", "--h", "0", "--s", "9"], 2)?;
    expect_code(&["oracle", "--n", "3", "--trials", "2", "--seed", "5"], 0)?;
    Ok(format!("Total(6) = {total6}, 7 exit-code cases"))
}
