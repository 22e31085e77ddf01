use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};
use stickelgraph::arith::is_prime;
use stickelgraph::isotypic::verify_theorem_b_with;
use stickelgraph::stickelberger::{
    odd_primes_in, plus_quotient_analysis_of, stickelberger_cover_with, verify_theorem_a_with,
};
use stickelgraph::voltage::product_decomposition_check;
use stickelgraph::Error;

use crate::output::write_atomically;
use crate::{Failure, Format, VerifyArgs, EXIT_FAILED_CHECKS};

pub const CSV_COLUMNS: [&str; 14] = [
    "check",
    "p",
    "ell",
    "status",
    "h_minus",
    "bf_free_rank",
    "bf_torsion_factors",
    "m_y",
    "m_y_plus",
    "g_star_y",
    "g_star_y_plus",
    "theorem_a_holds",
    "three_way_m_agreement",
    "note",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Check {
    A,
    B,
    Plus,
    Artin,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::A => "a",
            Check::B => "b",
            Check::Plus => "plus",
            Check::Artin => "artin",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug)]
struct Row {
    check: Check,
    p: u64,
    ell: Option<u64>,
    status: Status,
    h_minus: Option<BigInt>,
    bf_free_rank: Option<usize>,
    bf_torsion_factors: Option<Vec<BigInt>>,
    m_y: Option<BigInt>,
    m_y_plus: Option<BigInt>,
    g_star_y: Option<BigInt>,
    g_star_y_plus: Option<BigInt>,
    theorem_a_holds: Option<bool>,
    three_way_m_agreement: Option<bool>,
    note: String,
    detail: Value,
}

impl Row {
    fn new(check: Check, p: u64, ell: Option<u64>, status: Status, note: impl Into<String>) -> Self {
        Row {
            check,
            p,
            ell,
            status,
            h_minus: None,
            bf_free_rank: None,
            bf_torsion_factors: None,
            m_y: None,
            m_y_plus: None,
            g_star_y: None,
            g_star_y_plus: None,
            theorem_a_holds: None,
            three_way_m_agreement: None,
            note: note.into(),
            detail: Value::Null,
        }
    }

    fn csv_record(&self) -> Vec<String> {
        fn opt<T: ToString>(x: &Option<T>) -> String {
            x.as_ref().map(|v| v.to_string()).unwrap_or_default()
        }
        let torsion = self
            .bf_torsion_factors
            .as_ref()
            .map(|f| f.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(";"))
            .unwrap_or_default();
        vec![
            self.check.name().to_string(),
            self.p.to_string(),
            opt(&self.ell),
            self.status.name().to_string(),
            opt(&self.h_minus),
            opt(&self.bf_free_rank),
            torsion,
            opt(&self.m_y),
            opt(&self.m_y_plus),
            opt(&self.g_star_y),
            opt(&self.g_star_y_plus),
            opt(&self.theorem_a_holds),
            opt(&self.three_way_m_agreement),
            self.note.clone(),
        ]
    }

    fn json(&self) -> Value {
        let big = |x: &Option<BigInt>| x.as_ref().map(stickelgraph::json::big).unwrap_or(Value::Null);
        json!({
            "check": self.check.name(),
            "p": self.p,
            "ell": self.ell,
            "status": self.status.name(),
            "h_minus": big(&self.h_minus),
            "bf_free_rank": self.bf_free_rank,
            "bf_torsion_factors": self.bf_torsion_factors.as_ref().map(|f| stickelgraph::json::bigs(f)),
            "m_y": big(&self.m_y),
            "m_y_plus": big(&self.m_y_plus),
            "g_star_y": big(&self.g_star_y),
            "g_star_y_plus": big(&self.g_star_y_plus),
            "theorem_a_holds": self.theorem_a_holds,
            "three_way_m_agreement": self.three_way_m_agreement,
            "note": self.note,
            "detail": self.detail,
        })
    }
}

fn parse_u64(s: &str, what: &str) -> Result<u64, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Parse(format!("{what}: {s:?} is not a non-negative integer")))
}

fn parse_primes(spec: &str) -> Result<Vec<u64>, Failure> {
    let spec = spec.trim();
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (parse_u64(a, "--primes")?, parse_u64(b, "--primes")?);
        if a > b {
            return Err(Failure::Parse(format!("--primes: empty range {spec:?}")));
        }
        return Ok(odd_primes_in(a, b));
    }
    let mut out = Vec::new();
    for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let p = parse_u64(part, "--primes")?;
        if p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p).into());
        }
        out.push(p);
    }
    if out.is_empty() {
        return Err(Failure::Parse("--primes: no primes given".into()));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_ells(spec: &str) -> Result<Vec<u64>, Failure> {
    let spec = spec.trim();
    let mut out = if let Some(n) = spec.strip_prefix("all-below:") {
        let n = parse_u64(n, "--ells")?;
        (2..n).filter(|&l| is_prime(l)).collect()
    } else {
        let mut v = Vec::new();
        for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let l = parse_u64(part, "--ells")?;
            if !is_prime(l) {
                return Err(Error::NotPrime(l).into());
            }
            v.push(l);
        }
        v
    };
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_checks(spec: &str) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        out.push(match part {
            "a" => Check::A,
            "b" => Check::B,
            "plus" => Check::Plus,
            "artin" => Check::Artin,
            other => return Err(Failure::Parse(format!("--checks: unknown check {other:?}"))),
        });
    }
    if out.is_empty() {
        return Err(Failure::Parse("--checks: no checks given".into()));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn run_a(p: u64, cap: u64) -> Result<Row, Error> {
    let rec = verify_theorem_a_with(p, None, cap)?;
    let mut row = Row::new(
        Check::A,
        p,
        None,
        Status::from_bool(rec.theorem_a_holds && rec.three_way_m_agreement),
        rec.mismatch.clone().unwrap_or_default(),
    );
    row.detail = serde_json::to_value(&rec).expect("serializable");
    row.h_minus = Some(rec.h_minus);
    row.bf_free_rank = Some(rec.bf_free_rank);
    row.bf_torsion_factors = Some(rec.bf_torsion_factors);
    row.m_y = rec.m_y;
    row.m_y_plus = rec.m_y_plus;
    row.g_star_y = Some(rec.g_star_y);
    row.g_star_y_plus = Some(rec.g_star_y_plus);
    row.theorem_a_holds = Some(rec.theorem_a_holds);
    row.three_way_m_agreement = Some(rec.three_way_m_agreement);
    Ok(row)
}

fn run_plus(p: u64, cap: u64) -> Result<Row, Error> {
    let cover = stickelberger_cover_with(p, None, cap)?;
    let rep = plus_quotient_analysis_of(&cover)?;
    let mut failed = Vec::new();
    for (ok, name) in [
        (rep.bf_matches, "bf"),
        (rep.g_star_matches, "g_star"),
        (rep.m_matches, "m"),
        (rep.gamma_is_minus_p_norm, "gamma"),
    ] {
        if !ok {
            failed.push(name);
        }
    }
    let note = if failed.is_empty() { String::new() } else { format!("mismatch: {}", failed.join(";")) };
    let mut row = Row::new(Check::Plus, p, None, Status::from_bool(rep.holds), note);
    row.detail = serde_json::to_value(&rep).expect("serializable");
    row.m_y_plus = rep.m;
    row.g_star_y_plus = Some(rep.g_star);
    Ok(row)
}

fn run_artin(p: u64, cap: u64) -> Result<Row, Error> {
    let cover = stickelberger_cover_with(p, None, cap)?;
    let rep = product_decomposition_check(&cover.voltage)?;
    let ok = rep.holds && rep.trivial_character_gives_base && rep.r_additive;
    let mut row = Row::new(Check::Artin, p, None, Status::from_bool(ok), rep.mismatch.clone().unwrap_or_default());
    row.detail = serde_json::to_value(&rep).expect("serializable");
    Ok(row)
}

fn run_b(p: u64, ell: u64, cap: u64, precision_cap: u32) -> Result<Row, Error> {
    let rec = verify_theorem_b_with(p, ell, cap, precision_cap)?;
    let note = format!("f={} global_consistent={}", rec.f, rec.global_consistent);
    let mut row = Row::new(Check::B, p, Some(ell), Status::from_bool(rec.holds), note);
    row.detail = serde_json::to_value(&rec).expect("serializable");
    Ok(row)
}

#[derive(Clone, Copy)]
enum Cell {
    Single(Check, u64),
    B(u64, u64),
}

fn run_cell(cell: Cell, cap: u64, precision_cap: u32) -> Row {
    let (check, p, ell) = match cell {
        Cell::Single(c, p) => (c, p, None),
        Cell::B(p, l) => (Check::B, p, Some(l)),
    };
    if p > cap {
        return Row::new(check, p, ell, Status::Skipped, format!("p exceeds prime cap {cap}"));
    }
    if let Some(l) = ell {
        if (p - 1) % l == 0 {
            return Row::new(check, p, ell, Status::Skipped, format!("ell divides p - 1 = {}", p - 1));
        }
    }
    let result = match cell {
        Cell::Single(Check::A, p) => run_a(p, cap),
        Cell::Single(Check::Plus, p) => run_plus(p, cap),
        Cell::Single(Check::Artin, p) => run_artin(p, cap),
        Cell::Single(Check::B, _) => unreachable!("b cells carry ell"),
        Cell::B(p, l) => run_b(p, l, cap, precision_cap),
    };
    result.unwrap_or_else(|e| Row::new(check, p, ell, Status::Error, e.to_string()))
}

fn render(rows: &[Row], format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let v = Value::Array(rows.iter().map(Row::json).collect());
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_COLUMNS).expect("in-memory write");
            for r in rows {
                w.write_record(r.csv_record()).expect("in-memory write");
            }
            w.into_inner().expect("in-memory write")
        }
    }
}

pub fn verify(args: &VerifyArgs, cap: u64, precision_cap: u32) -> Result<u8, Failure> {
    let primes = parse_primes(&args.primes)?;
    let checks = parse_checks(&args.checks)?;
    let ells = parse_ells(&args.ells)?;
    if checks.contains(&Check::B) && ells.is_empty() {
        return Err(Failure::Parse("check b needs --ells".into()));
    }
    if args.threads == Some(0) {
        return Err(Failure::Parse("--threads must be positive".into()));
    }

    let mut cells = Vec::new();
    for &p in &primes {
        for &c in &checks {
            if c == Check::B {
                cells.extend(ells.iter().map(|&l| Cell::B(p, l)));
            } else {
                cells.push(Cell::Single(c, p));
            }
        }
    }

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Failure::Precondition(format!("thread pool: {e}")))?;
    let rows: Vec<Row> = pool.install(|| {
        cells
            .par_iter()
            .map(|&c| run_cell(c, cap, precision_cap))
            .collect()
    });

    let bytes = render(&rows, args.format);
    match &args.out {
        Some(path) => write_atomically(path, &bytes)
            .map_err(|e| Failure::Parse(format!("cannot write {}: {e}", path.display())))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| Failure::Parse(e.to_string()))?;
        }
    }

    let failed = rows.iter().any(|r| matches!(r.status, Status::Fail | Status::Error));
    Ok(if failed { EXIT_FAILED_CHECKS } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_specs() {
        assert_eq!(parse_primes("3..13").unwrap(), vec![3, 5, 7, 11, 13]);
        assert_eq!(parse_primes("13,5,5").unwrap(), vec![5, 13]);
        assert!(matches!(parse_primes("9"), Err(Failure::Precondition(_))));
        assert!(matches!(parse_primes("x..5"), Err(Failure::Parse(_))));
    }

    #[test]
    fn ell_specs() {
        assert_eq!(parse_ells("all-below:12").unwrap(), vec![2, 3, 5, 7, 11]);
        assert_eq!(parse_ells("7,2").unwrap(), vec![2, 7]);
        assert!(parse_ells("4").is_err());
    }

    #[test]
    fn check_specs() {
        assert_eq!(parse_checks("plus,a").unwrap(), vec![Check::A, Check::Plus]);
        assert!(parse_checks("c").is_err());
    }
}
