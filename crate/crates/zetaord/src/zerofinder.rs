//! Locating the ordinates γ_n of the critical-line zeros, certifying that
//! none were missed, and persisting the table.
//!
//! Zeros are found as sign changes of Hardy's Z on a grid at least 4× denser
//! than the local mean zero spacing 2π/log(t/2π), then polished by Brent
//! iteration. Completeness is certified against the counting formula
//! N(T) = ϑ(T)/π + 1 + S(T): globally with the classical log T slack, and
//! locally by a windowed mean-S statistic that catches single missing zeros
//! (a deficit of 1 dwarfs the natural oscillation of a window average of S).

use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::quad;
use crate::zetacore::{hardy_z, theta, theta_deriv, HEIGHT_CAP};

/// One located zero: γ_n lies in [gamma − err, gamma + err].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroOrdinate {
    /// 1-based rank: γ₁ = 14.13…
    pub index: u64,
    pub gamma: f64,
    pub err: f64,
}

/// All ordinates up to `height`, sorted, with the count certified by
/// [`verify_count`]. Immutable once built.
#[derive(Clone, Debug)]
pub struct ZeroTable {
    ordinates: Vec<ZeroOrdinate>,
    height: f64,
}

/// Summary returned by [`verify_count`].
#[derive(Clone, Debug)]
pub struct CountReport {
    /// Count of table entries with γ ≤ T.
    pub count: usize,
    /// ϑ(T)/π + 1.
    pub expected: f64,
    /// count − expected (= −S(T) − f(T) when the table is complete).
    pub residual: f64,
    /// Windows whose mean-S statistic exceeded the detection threshold but
    /// were cleared by a doubled-density re-scan.
    pub flagged_windows: Vec<(f64, f64)>,
    /// Number of verification windows examined.
    pub windows_checked: usize,
}

const FILE_MAGIC: [u8; 4] = *b"ZORD";
const FILE_VERSION: u32 = 1;

/// Grid step for sign-change scanning: the local mean zero spacing is
/// 2π/log(t/2π); sample at least 4× denser (a shade more for margin).
fn scan_step(t: f64) -> f64 {
    let x = (t / std::f64::consts::TAU).max(1.5);
    std::f64::consts::TAU / x.ln() / 4.25
}

fn z_val(t: f64) -> f64 {
    // Heights are pre-checked against HEIGHT_CAP by every caller, and the
    // default budget is always attainable there.
    hardy_z(t).expect("Z evaluation below the height cap cannot fail")
}

/// Gram point g_n: the unique solution of ϑ(g_n) = nπ with g_n > 10.
///
/// These seed scan grids and index sanity checks; ϑ is strictly increasing
/// past its minimum near t ≈ 6.29, and g₀ ≈ 17.8456 already sits well past
/// it.
pub fn gram_point(n: u64) -> f64 {
    let target = n as f64 * std::f64::consts::PI;
    // ϑ(10) ≈ −4.3 < 0 ≤ nπ; expand the upper end until ϑ exceeds target.
    let lo = 10.0;
    let mut hi = 30.0;
    while theta(hi) < target {
        hi *= 2.0;
    }
    quad::find_root(|t| theta(t) - target, lo, hi, 1e-12)
        .expect("theta is monotone on the bracket")
}

/// All maximal sign-change brackets of Z on [t_lo, t_hi].
pub fn scan_zeros(t_lo: f64, t_hi: f64) -> Result<Vec<(f64, f64)>> {
    if !(10.0 <= t_lo && t_lo < t_hi) {
        return Err(Error::InvalidInput(format!(
            "scan range [{t_lo}, {t_hi}] must satisfy 10 ≤ t_lo < t_hi"
        )));
    }
    if t_hi > HEIGHT_CAP {
        return Err(Error::HeightCap {
            t: t_hi,
            cap: HEIGHT_CAP,
        });
    }
    scan_with_density(t_lo, t_hi, 1.0)
}

/// Scan with the grid step divided by `density` (doubled density = 2.0).
fn scan_with_density(t_lo: f64, t_hi: f64, density: f64) -> Result<Vec<(f64, f64)>> {
    let mut brackets = Vec::new();
    let mut t_prev = t_lo;
    let mut z_prev = z_val(t_prev);
    loop {
        let mut t = t_prev + scan_step(t_prev) / density;
        if t >= t_hi {
            t = t_hi;
        }
        let z = z_val(t);
        if z_prev != 0.0 && z != 0.0 && z_prev.signum() != z.signum() {
            brackets.push((t_prev, t));
        } else if z == 0.0 && t < t_hi {
            // A grid point landing exactly on a zero: widen into a bracket.
            let eps = 1e-9 * t.max(1.0);
            brackets.push((t - eps, t + eps));
        }
        if t >= t_hi {
            return Ok(brackets);
        }
        t_prev = t;
        z_prev = z;
    }
}

/// Narrow a sign-change bracket to a zero ordinate with radius `tol`.
pub fn refine_zero(bracket: (f64, f64), tol: f64) -> Result<ZeroOrdinate> {
    let (a, b) = bracket;
    if !(tol >= 1e-12) {
        return Err(Error::InvalidInput(format!("tol = {tol:.3e} below 1e-12")));
    }
    if !(a < b) || a < 10.0 || b > HEIGHT_CAP {
        return Err(Error::InvalidInput(format!("bad bracket [{a}, {b}]")));
    }
    let gamma = quad::find_root(z_val, a, b, tol)?;
    // If tol undercuts the Z evaluation noise, the "root" is meaningless:
    // require |Z(γ)| ≤ |Z′|·2 tol + noise, else report the lost bracket.
    let delta = (100.0 * tol).max(1e-9);
    let slope = (z_val(gamma + delta) - z_val(gamma - delta)).abs() / (2.0 * delta);
    let noise = 1e-11 * (1.0 + gamma / 1000.0);
    if z_val(gamma).abs() > slope * 2.0 * tol + 5.0 * noise {
        return Err(Error::LossOfBracket { t: gamma });
    }
    // Provisional rank from the counting formula; `build` overwrites it with
    // the true sequential index once the table is complete.
    let index = ((theta(gamma) / std::f64::consts::PI + 1.0).round() as i64).max(1) as u64;
    Ok(ZeroOrdinate {
        index,
        gamma,
        err: tol,
    })
}

/// Number of table ordinates ≤ T.
pub fn n_of(t: f64, table: &ZeroTable) -> Result<usize> {
    if t > table.height {
        return Err(Error::HeightExceeded {
            t,
            height: table.height,
        });
    }
    Ok(table.count_up_to(t))
}

// Windowed completeness detector parameters: the mean of S over a window of
// this width stays well inside ±threshold when the table is complete (S
// oscillates around 0 with slowly growing envelope), while a single missing
// zero shifts the window mean by ≈ +1·(covered fraction).
const WINDOW_WIDTH: f64 = 30.0;
const WINDOW_MEAN_THRESHOLD: f64 = 0.55;

/// Mean of ϑ(t)/π + 1 − n_table(t) over [a, b] — an unbiased estimate of the
/// window mean of S(t) + f(t) when the table is complete over [a, b].
fn window_mean_deficit(table: &ZeroTable, a: f64, b: f64) -> f64 {
    let w = b - a;
    // ∫ (ϑ/π + 1) by 4-panel GL8 (ϑ is glass-smooth); ∫ n(t) dt exactly:
    // n is a step function, so ∫_a^b n = n(b)·b − n(a)·a − Σ_{a<γ≤b} γ.
    let mut smooth = 0.0;
    for i in 0..4 {
        let lo = a + w * i as f64 / 4.0;
        let hi = a + w * (i + 1) as f64 / 4.0;
        smooth += quad::gl_fixed(
            |t| theta(t) / std::f64::consts::PI + 1.0,
            lo,
            hi,
            &quad::GL8_X,
            &quad::GL8_W,
        );
    }
    let na = table.count_up_to(a);
    let nb = table.count_up_to(b);
    let mut gamma_sum = 0.0;
    for z in &table.ordinates[na..nb] {
        gamma_sum += z.gamma;
    }
    let step_integral = nb as f64 * b - na as f64 * a - gamma_sum;
    (smooth - step_integral) / w
}

/// Internal audit: the [`CountReport`] plus any ordinates found by the
/// `density`-times-denser re-scan of flagged windows that the table does
/// not hold. No global gate here — callers decide what a large residual
/// means (build wants to recover, verify_count wants to reject).
fn audit_at(table: &ZeroTable, t: f64, density: f64) -> Result<(CountReport, Vec<ZeroOrdinate>)> {
    if table.height < t {
        return Err(Error::HeightExceeded {
            t,
            height: table.height,
        });
    }
    let count = table.count_up_to(t);
    let expected = theta(t) / std::f64::consts::PI + 1.0;
    let residual = count as f64 - expected;

    let mut flagged = Vec::new();
    let mut missed: Vec<ZeroOrdinate> = Vec::new();
    let mut windows = 0usize;
    // Overlapping windows (half-width step) from just below γ₁ up to T.
    let mut a = 12.0;
    while a < t {
        let b = (a + WINDOW_WIDTH).min(t);
        if b - a < 1.0 {
            break;
        }
        windows += 1;
        if window_mean_deficit(table, a, b).abs() > WINDOW_MEAN_THRESHOLD {
            flagged.push((a, b));
            for bracket in scan_with_density(a.max(10.0), b, density)? {
                let z = refine_zero(bracket, 1e-9)?;
                if !table.contains_gamma(z.gamma) {
                    missed.push(z);
                }
            }
        }
        a += WINDOW_WIDTH / 2.0;
    }
    // Overlapping windows can both recover the same ordinate.
    missed.sort_by(|a, b| a.gamma.partial_cmp(&b.gamma).unwrap());
    missed.dedup_by(|a, b| (a.gamma - b.gamma).abs() < 1e-7);
    Ok((
        CountReport {
            count,
            expected,
            residual,
            flagged_windows: flagged,
            windows_checked: windows,
        },
        missed,
    ))
}

/// Certify the table against the counting formula up to T.
///
/// The global count must sit within the classical slack 2 + ½ log T of
/// ϑ(T)/π + 1; windows whose mean-S statistic looks like a missing zero are
/// re-scanned at doubled grid density, and any genuinely absent ordinate is
/// reported as a verification failure naming the suspect interval.
pub fn verify_count(table: &ZeroTable, t: f64) -> Result<CountReport> {
    let (report, missed) = audit_at(table, t, 2.0)?;
    if let Some(z) = missed.first() {
        let (lo, hi) = report
            .flagged_windows
            .iter()
            .find(|(a, b)| (*a..=*b).contains(&z.gamma))
            .copied()
            .unwrap_or((z.gamma - 1.0, z.gamma + 1.0));
        return Err(Error::VerificationFailed {
            lo,
            hi,
            detail: format!(
                "re-scan found {} ordinate(s) absent from the table, first at γ = {:.9}",
                missed.len(),
                z.gamma
            ),
        });
    }
    // Global residual backstop, after the windows came back clean: a count
    // drifting beyond the classical envelope of |S + f| now signals
    // something worse than a missed close pair.
    let slack = 2.0 + 0.5 * t.max(2.0).ln();
    if report.residual.abs() >= slack {
        return Err(Error::VerificationFailed {
            lo: 0.0,
            hi: t,
            detail: format!(
                "global count residual {:.3} exceeds slack {slack:.3} \
                 (count {}, expected {:.3})",
                report.residual, report.count, report.expected
            ),
        });
    }
    Ok(report)
}

impl ZeroTable {
    /// Scan, refine, and certify every ordinate with γ ≤ t_max.
    ///
    /// The range is split into chunks processed independently (in `threads`
    /// OS threads when `threads > 1`) and merged in order, so the result is
    /// deterministic for any thread count.
    pub fn build(t_max: f64, threads: usize) -> Result<ZeroTable> {
        if !(t_max > 15.0) {
            return Err(Error::InvalidInput(format!(
                "t_max = {t_max} leaves no room above the first ordinate"
            )));
        }
        if t_max > HEIGHT_CAP {
            return Err(Error::HeightCap {
                t: t_max,
                cap: HEIGHT_CAP,
            });
        }
        // Chunk boundaries are exact shared f64s and every chunk includes
        // both its endpoints in the grid, so seams cannot hide a sign change.
        let n_chunks = ((t_max - 12.0) / 400.0).ceil().max(1.0) as usize;
        let bounds: Vec<f64> = (0..=n_chunks)
            .map(|i| 12.0 + (t_max - 12.0) * i as f64 / n_chunks as f64)
            .collect();
        let jobs: Vec<(f64, f64)> = bounds.windows(2).map(|w| (w[0], w[1])).collect();

        let scan_chunk = |&(lo, hi): &(f64, f64)| -> Result<Vec<ZeroOrdinate>> {
            let mut out = Vec::new();
            for bracket in scan_with_density(lo, hi, 1.0)? {
                out.push(refine_zero(bracket, 1e-9)?);
            }
            Ok(out)
        };

        let mut per_chunk: Vec<Vec<ZeroOrdinate>> = Vec::with_capacity(jobs.len());
        if threads <= 1 || jobs.len() == 1 {
            for job in &jobs {
                per_chunk.push(scan_chunk(job)?);
            }
        } else {
            let next = std::sync::atomic::AtomicUsize::new(0);
            let results: Vec<std::sync::Mutex<Option<Result<Vec<ZeroOrdinate>>>>> =
                jobs.iter().map(|_| std::sync::Mutex::new(None)).collect();
            std::thread::scope(|scope| {
                for _ in 0..threads.min(jobs.len()) {
                    scope.spawn(|| loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if i >= jobs.len() {
                            break;
                        }
                        *results[i].lock().unwrap() = Some(scan_chunk(&jobs[i]));
                    });
                }
            });
            for slot in results {
                per_chunk.push(slot.into_inner().unwrap().expect("worker finished")?);
            }
        }

        let mut ordinates: Vec<ZeroOrdinate> = per_chunk.into_iter().flatten().collect();
        // A zero dead on a chunk seam can be reported by both sides.
        ordinates.dedup_by(|a, b| (a.gamma - b.gamma).abs() < 1e-7);
        let mut table = ZeroTable {
            ordinates,
            height: t_max,
        };
        table.reindex()?;

        // Recovery loop: fold in whatever the windowed re-scan finds,
        // escalating the re-scan density each round so ever-closer pairs
        // get resolved. A clean pass (nothing flagged) ends it early.
        for density in [2.0, 4.0, 8.0, 16.0] {
            let (report, missed) = audit_at(&table, t_max, density)?;
            if missed.is_empty() && report.flagged_windows.is_empty() {
                break;
            }
            table.ordinates.extend(missed);
            table.reindex()?;
        }
        // Final certification with the standard audit.
        verify_count(&table, t_max)?;
        Ok(table)
    }

    fn reindex(&mut self) -> Result<()> {
        self.ordinates
            .sort_by(|a, b| a.gamma.partial_cmp(&b.gamma).unwrap());
        for (i, z) in self.ordinates.iter_mut().enumerate() {
            z.index = i as u64 + 1;
        }
        self.validate()
    }

    fn validate(&self) -> Result<()> {
        let mut prev = 14.0;
        for (i, z) in self.ordinates.iter().enumerate() {
            if !(z.gamma > prev) {
                return Err(Error::CorruptFile(format!(
                    "ordinates not strictly increasing at entry {i} (γ = {})",
                    z.gamma
                )));
            }
            if !(z.err > 0.0 && z.err <= 1e-6) {
                return Err(Error::CorruptFile(format!(
                    "entry {i} has err = {:.3e} outside (0, 1e-6]",
                    z.err
                )));
            }
            if z.index != i as u64 + 1 {
                return Err(Error::CorruptFile(format!(
                    "entry {i} has index {} (expected {})",
                    z.index,
                    i + 1
                )));
            }
            prev = z.gamma;
        }
        if let Some(last) = self.ordinates.last() {
            if last.gamma > self.height {
                return Err(Error::CorruptFile(format!(
                    "last ordinate {} exceeds table height {}",
                    last.gamma, self.height
                )));
            }
        }
        Ok(())
    }

    pub fn ordinates(&self) -> &[ZeroOrdinate] {
        &self.ordinates
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// γ_n for 1-based n.
    pub fn gamma(&self, n: usize) -> f64 {
        self.ordinates[n - 1].gamma
    }

    /// Entries with γ ≤ t.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.ordinates.partition_point(|z| z.gamma <= t)
    }

    pub(crate) fn contains_gamma(&self, gamma: f64) -> bool {
        let i = self.count_up_to(gamma);
        let near = |j: usize| (self.ordinates[j].gamma - gamma).abs() < 1e-6;
        (i > 0 && near(i - 1)) || (i < self.ordinates.len() && near(i))
    }

    /// A copy restricted to γ ≤ new_height, presenting `new_height` as its
    /// scan height (for truncation studies on a taller certified table).
    pub fn truncated(&self, new_height: f64) -> Result<ZeroTable> {
        if new_height > self.height {
            return Err(Error::HeightExceeded {
                t: new_height,
                height: self.height,
            });
        }
        Ok(ZeroTable {
            ordinates: self.ordinates[..self.count_up_to(new_height)].to_vec(),
            height: new_height,
        })
    }
}

// ---------------------------------------------------------------------------
// Persistence: little-endian "ZORD" format.
// header: magic [u8;4] = "ZORD", version u32, count u64, height f64
// record: index u64, gamma f64, err f64   (count times)
// ---------------------------------------------------------------------------

pub fn save_table(table: &ZeroTable, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    w.write_all(&FILE_MAGIC)?;
    w.write_all(&FILE_VERSION.to_le_bytes())?;
    w.write_all(&(table.ordinates.len() as u64).to_le_bytes())?;
    w.write_all(&table.height.to_le_bytes())?;
    for z in &table.ordinates {
        w.write_all(&z.index.to_le_bytes())?;
        w.write_all(&z.gamma.to_le_bytes())?;
        w.write_all(&z.err.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn load_table(path: &Path) -> Result<ZeroTable> {
    let file = std::fs::File::open(path)?;
    let mut r = BufReader::new(file);
    let mut head = [0u8; 24];
    r.read_exact(&mut head)
        .map_err(|_| Error::CorruptFile("file shorter than the header".into()))?;
    if head[0..4] != FILE_MAGIC {
        return Err(Error::CorruptFile("bad magic (not a zero table)".into()));
    }
    let version = u32::from_le_bytes(head[4..8].try_into().unwrap());
    if version != FILE_VERSION {
        return Err(Error::VersionMismatch {
            found: version,
            expected: FILE_VERSION,
        });
    }
    let count = u64::from_le_bytes(head[8..16].try_into().unwrap());
    let height = f64::from_le_bytes(head[16..24].try_into().unwrap());
    if !height.is_finite() || count > 100_000_000 {
        return Err(Error::CorruptFile(format!(
            "implausible header: count {count}, height {height}"
        )));
    }
    let mut ordinates = Vec::with_capacity(count as usize);
    let mut rec = [0u8; 24];
    for i in 0..count {
        r.read_exact(&mut rec).map_err(|_| {
            Error::CorruptFile(format!("truncated at record {i} of {count}"))
        })?;
        ordinates.push(ZeroOrdinate {
            index: u64::from_le_bytes(rec[0..8].try_into().unwrap()),
            gamma: f64::from_le_bytes(rec[8..16].try_into().unwrap()),
            err: f64::from_le_bytes(rec[16..24].try_into().unwrap()),
        });
    }
    let mut tail = [0u8; 1];
    if r.read(&mut tail)? != 0 {
        return Err(Error::CorruptFile("trailing bytes after records".into()));
    }
    let table = ZeroTable { ordinates, height };
    table.validate()?;
    Ok(table)
}

/// Directory for cached zero tables: `$ZETAORD_CACHE`, else `.zetaord-cache`
/// under the current directory. (Explicit CLI flags take precedence over
/// both.)
pub fn cache_dir() -> PathBuf {
    std::env::var_os("ZETAORD_CACHE")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".zetaord-cache"))
}

/// Mean ϑ′-based zero density (zeros per unit height) near t.
pub fn zero_density(t: f64) -> f64 {
    theta_deriv(t) / std::f64::consts::PI
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAMMA_1: f64 = 14.134725141734694;
    const GAMMA_2: f64 = 21.022039638771555;

    #[test]
    fn gram_points_satisfy_defining_equation() {
        let g5 = gram_point(5);
        assert!((theta(g5) - 5.0 * std::f64::consts::PI).abs() < 1e-9);
        assert!((gram_point(0) - 17.845599540410860817).abs() < 1e-10);
        let mut prev = gram_point(0);
        for n in 1..40 {
            let g = gram_point(n);
            assert!(g > prev, "gram points must increase");
            prev = g;
        }
    }

    #[test]
    fn scan_brackets_first_zeros() {
        let b = scan_zeros(14.0, 15.0).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].0 < GAMMA_1 && GAMMA_1 < b[0].1);

        assert!(scan_zeros(10.0, 14.0).unwrap().is_empty());

        // 29 zeros below height 100.
        assert_eq!(scan_zeros(10.0, 100.0).unwrap().len(), 29);
    }

    #[test]
    fn refine_hits_known_ordinates() {
        let z1 = refine_zero((14.0, 15.0), 1e-6).unwrap();
        assert!((z1.gamma - GAMMA_1).abs() < 1e-6);
        assert_eq!(z1.err, 1e-6);
        assert_eq!(z1.index, 1);

        let z2 = refine_zero((20.0, 22.0), 1e-6).unwrap();
        assert!((z2.gamma - GAMMA_2).abs() < 1e-6);

        // Taylor consistency: |Z(γ)| ≤ |Z′(γ)|·2·tol (plus Z eval noise).
        let tol = 1e-8;
        let z = refine_zero((14.0, 15.0), tol).unwrap();
        let slope = crate::zetacore::hardy_z_prime(z.gamma, 1e-4).unwrap().0;
        assert!(z_val(z.gamma).abs() <= slope.abs() * 2.0 * tol + 1e-10);
    }

    #[test]
    fn build_and_count() {
        let table = ZeroTable::build(100.0, 1).unwrap();
        assert_eq!(table.count(), 29);
        assert!((table.gamma(1) - GAMMA_1).abs() < 1e-8);
        assert!((table.gamma(2) - GAMMA_2).abs() < 1e-8);

        assert_eq!(n_of(14.2, &table).unwrap(), 1);
        assert_eq!(n_of(14.0, &table).unwrap(), 0);
        assert_eq!(n_of(100.0, &table).unwrap(), 29);
        assert!(matches!(
            n_of(101.0, &table),
            Err(Error::HeightExceeded { .. })
        ));

        let report = verify_count(&table, 100.0).unwrap();
        assert_eq!(report.count, 29);
        assert!((report.expected - 29.0).abs() < 1.5, "S(100) is small");
        assert!(report.windows_checked > 0);
    }

    #[test]
    fn multithreaded_build_matches_sequential() {
        let seq = ZeroTable::build(150.0, 1).unwrap();
        let par = ZeroTable::build(150.0, 3).unwrap();
        assert_eq!(seq.count(), par.count());
        for (a, b) in seq.ordinates().iter().zip(par.ordinates()) {
            assert_eq!(a.gamma, b.gamma, "deterministic merge");
        }
    }

    #[test]
    fn verify_flags_deleted_entry() {
        let table = ZeroTable::build(100.0, 1).unwrap();
        let mut broken = table.clone();
        broken.ordinates.remove(14);
        for (i, z) in broken.ordinates.iter_mut().enumerate() {
            z.index = i as u64 + 1;
        }
        match verify_count(&broken, 100.0) {
            Err(Error::VerificationFailed { lo, hi, .. }) => {
                let missing = table.gamma(15);
                assert!(
                    lo <= missing && missing <= hi,
                    "flagged [{lo}, {hi}] should cover γ₁₅ = {missing}"
                );
            }
            other => panic!("expected VerificationFailed, got {other:?}"),
        }
    }

    #[test]
    fn truncated_view() {
        let table = ZeroTable::build(60.0, 1).unwrap();
        let cut = table.truncated(30.0).unwrap();
        assert_eq!(cut.height(), 30.0);
        // γ₁ ≈ 14.13, γ₂ ≈ 21.02, γ₃ ≈ 25.01 sit below 30.
        assert_eq!(cut.count(), 3);
        assert!(cut.truncated(40.0).is_err());
    }

    #[test]
    fn mean_gap_matches_density() {
        let table = ZeroTable::build(200.0, 1).unwrap();
        // Mean gap over [100, 200] within 20% of 2π/log(100/2π).
        let lo = table.count_up_to(100.0);
        let hi = table.count_up_to(200.0);
        let gaps: Vec<f64> = (lo..hi - 1)
            .map(|i| table.ordinates[i + 1].gamma - table.ordinates[i].gamma)
            .collect();
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        let predicted = std::f64::consts::TAU / (100.0 / std::f64::consts::TAU).ln();
        assert!(
            (mean / predicted - 1.0).abs() < 0.2,
            "mean gap {mean} vs predicted {predicted}"
        );
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeros.zord");
        let table = ZeroTable::build(80.0, 1).unwrap();
        save_table(&table, &path).unwrap();
        let back = load_table(&path).unwrap();
        assert_eq!(back.count(), table.count());
        assert_eq!(back.height(), table.height());
        for (a, b) in table.ordinates().iter().zip(back.ordinates()) {
            assert_eq!(a.gamma, b.gamma);
            assert_eq!(a.index, b.index);
            assert_eq!(a.err, b.err);
        }
    }

    #[test]
    fn load_rejects_bad_files() {
        let dir = tempfile::tempdir().unwrap();
        let table = ZeroTable::build(80.0, 1).unwrap();

        // Truncated file.
        let path = dir.path().join("trunc.zord");
        save_table(&table, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 10]).unwrap();
        assert!(matches!(load_table(&path), Err(Error::CorruptFile(_))));

        // Out-of-order gammas.
        let path2 = dir.path().join("noorder.zord");
        let mut bad = table.clone();
        bad.ordinates.swap(0, 1);
        bad.ordinates[0].index = 1;
        bad.ordinates[1].index = 2;
        save_table(&bad, &path2).unwrap();
        assert!(matches!(load_table(&path2), Err(Error::CorruptFile(_))));

        // Wrong version.
        let path3 = dir.path().join("version.zord");
        let mut bytes = std::fs::read(dir.path().join("noorder.zord")).unwrap();
        bytes[4] = 99;
        std::fs::write(&path3, &bytes).unwrap();
        assert!(matches!(
            load_table(&path3),
            Err(Error::VersionMismatch { found: 99, .. })
        ));

        // Not a table at all.
        let path4 = dir.path().join("garbage.zord");
        std::fs::write(&path4, b"hello world, definitely not zeros").unwrap();
        assert!(matches!(load_table(&path4), Err(Error::CorruptFile(_))));
    }

    #[test]
    fn cache_dir_reads_environment() {
        // Process-global env var: test both branches in one test to avoid
        // interference under parallel test execution.
        let before = std::env::var_os("ZETAORD_CACHE");
        std::env::set_var("ZETAORD_CACHE", "/tmp/zetaord-test-cache");
        assert_eq!(
            cache_dir(),
            PathBuf::from("/tmp/zetaord-test-cache")
        );
        match before {
            Some(v) => std::env::set_var("ZETAORD_CACHE", v),
            None => std::env::remove_var("ZETAORD_CACHE"),
        }
    }
}
