use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rwm_core::{max_capacity, random_payload, write_pbm, write_pgm, BitImage, GrayImage};
use tempfile::TempDir;

fn rwm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rwm")).args(args).output().expect("run rwm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn cover(w: usize, h: usize, salt: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |r, c| ((r * 29 + c * 11 + salt * 7 + (r ^ c)) % 256) as u8).unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Self { dir: TempDir::new().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn put(&self, name: &str, bytes: &[u8]) -> PathBuf {
        let path = self.path(name);
        fs::write(&path, bytes).unwrap();
        path
    }
}

#[test]
fn embed_then_extract_restores_inputs_byte_for_byte() {
    let fx = Fixture::new();
    let img = cover(64, 32, 0);
    let bits = max_capacity(64, 32);
    let logo = BitImage::new(64, bits / 64, random_payload(bits, 3)).unwrap();
    let cover_path = fx.put("cover.pgm", &write_pgm(&img));
    let logo_path = fx.put("logo.pbm", &write_pbm(&logo));
    let (out, key) = (fx.path("marked.pgm"), fx.path("marked.key"));

    let o = rwm(&["embed", "--cover", p(&cover_path), "--logo", p(&logo_path), "--out", p(&out), "--key", p(&key)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let line = stdout(&o);
    assert!(line.starts_with("bpp=1.5000 psnr="), "{line}");
    assert!(line.trim_end().contains(" ledger="), "{line}");

    let (rc, rl) = (fx.path("rec.pgm"), fx.path("rec.pbm"));
    let o = rwm(&["extract", "--image", p(&out), "--key", p(&key), "--out-cover", p(&rc), "--out-logo", p(&rl)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read(&rc).unwrap(), fs::read(&cover_path).unwrap());
    assert_eq!(fs::read(&rl).unwrap(), fs::read(&logo_path).unwrap());
}

#[test]
fn oversized_logo_names_the_capacity() {
    let fx = Fixture::new();
    let cover_path = fx.put("c.pgm", &write_pgm(&cover(8, 8, 1)));
    let logo_path = fx.put("l.pbm", &write_pbm(&BitImage::new(97, 1, vec![true; 97]).unwrap()));
    let out = fx.path("o.pgm");
    let key = fx.path("o.key");
    let o = rwm(&["embed", "--cover", p(&cover_path), "--logo", p(&logo_path), "--out", p(&out), "--key", p(&key)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("maximum capacity of 96 bits"), "{}", stderr(&o));
    assert!(!out.exists() && !key.exists());
}

#[test]
fn missing_cover_is_an_error() {
    let fx = Fixture::new();
    let logo_path = fx.put("l.pbm", &write_pbm(&BitImage::empty()));
    let o = rwm(&["embed", "--cover", p(&fx.path("nope.pgm")), "--logo", p(&logo_path), "--out", "x", "--key", "y"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn corrupted_key_is_rejected() {
    let fx = Fixture::new();
    let cover_path = fx.put("c.pgm", &write_pgm(&cover(16, 16, 2)));
    let logo_path = fx.put("l.pbm", &write_pbm(&BitImage::new(10, 10, random_payload(100, 1)).unwrap()));
    let (out, key) = (fx.path("m.pgm"), fx.path("m.key"));
    assert!(rwm(&["embed", "--cover", p(&cover_path), "--logo", p(&logo_path), "--out", p(&out), "--key", p(&key)]).status.success());

    let mut bytes = fs::read(&key).unwrap();
    bytes[40] ^= 0xFF;
    fs::write(&key, bytes).unwrap();
    let rc = fx.path("rc.pgm");
    let o = rwm(&["extract", "--image", p(&out), "--key", p(&key), "--out-cover", p(&rc), "--out-logo", p(&fx.path("rl.pbm"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("checksum"), "{}", stderr(&o));
    assert!(!rc.exists());
}

#[test]
fn verify_cases() {
    let fx = Fixture::new();
    let good = fx.put("c.pgm", &write_pgm(&cover(32, 32, 3)));
    let odd = fx.put("odd.pgm", &write_pgm(&cover(31, 32, 3)));
    let logo = fx.put("l.pbm", &write_pbm(&BitImage::new(40, 20, random_payload(800, 5)).unwrap()));
    let empty = fx.put("e.pbm", &write_pbm(&BitImage::empty()));

    let o = rwm(&["verify", "--cover", p(&good), "--logo", p(&logo)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(rwm(&["verify", "--cover", p(&good), "--logo", p(&empty)]).status.success());

    let o = rwm(&["verify", "--cover", p(&odd), "--logo", p(&empty)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("even"), "{}", stderr(&o));
}

#[test]
fn bench_single_cover() {
    let fx = Fixture::new();
    let c = fx.put("c.pgm", &write_pgm(&cover(64, 64, 4)));
    let csv = fx.path("out.csv");
    let o = rwm(&["bench", "--cover", p(&c), "--bpp", "0.1,0.3,1.5", "--seed", "11", "--out", p(&csv)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("seed=11"));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "bpp,psnr_db,payload_bits,ledger_count,key_bytes");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("1.50,"));

    let again = fx.path("again.csv");
    assert!(rwm(&["bench", "--cover", p(&c), "--bpp", "0.1,0.3,1.5", "--seed", "11", "--out", p(&again)]).status.success());
    assert_eq!(fs::read(&again).unwrap(), text.as_bytes());
}

#[test]
fn bench_directory_adds_average_rows() {
    let fx = Fixture::new();
    let dir = fx.path("set");
    fs::create_dir(&dir).unwrap();
    for i in 0..4 {
        fs::write(dir.join(format!("img{i}.pgm")), write_pgm(&cover(32, 32, i * 5))).unwrap();
    }
    fs::write(dir.join("notes.txt"), "ignored").unwrap();
    let csv = fx.path("out.csv");
    let o = rwm(&["bench", "--dir", p(&dir), "--bpp", "0.5,1.0", "--seed", "2", "--out", p(&csv)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "image,bpp,psnr_db,payload_bits,ledger_count,key_bytes");
    assert_eq!(lines.len(), 1 + 4 * 2 + 2);
    assert!(lines[1].starts_with("img0.pgm,0.50,"));
    assert_eq!(lines.iter().filter(|l| l.starts_with("avg,")).count(), 2);
}

#[test]
fn bench_rejects_rates_above_capacity() {
    let fx = Fixture::new();
    let c = fx.put("c.pgm", &write_pgm(&cover(16, 16, 0)));
    let csv = fx.path("out.csv");
    let o = rwm(&["bench", "--cover", p(&c), "--bpp", "2.0", "--seed", "1", "--out", p(&csv)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("capacity"), "{}", stderr(&o));
    assert!(!csv.exists());
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(rwm(&["bench", "--bpp", "0.1", "--seed", "1", "--out", "x.csv"]).status.code(), Some(1));
    assert_eq!(rwm(&[]).status.code(), Some(1));
    assert!(rwm(&["--help"]).status.success());
}
