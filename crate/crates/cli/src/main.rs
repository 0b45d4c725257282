//! Operator entry point for the keystream engines: generate corpus files,
//! encrypt/decrypt files, print the clock model, score keystreams with the
//! SP 800-22 battery, and run the encrypted TCP channel.
//!
//! Exit codes: 0 success (and statistical pass), 1 usage error, 2 runtime
//! error, 3 statistical failure.

use std::fs;
use std::io::{BufWriter, Write};
use std::net::TcpListener;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rc4x::channel::{establish, listen_on, ChannelConfig, ChannelError, Role};
use rc4x::cycle::{clock_count, per_byte_cost, steady_throughput_bps, Clocks};
use rc4x::nist::{run_suite, BitSequence, SuiteParams};
use rc4x::{keystream, DesignId, KeyMaterial};

#[derive(Parser)]
#[command(name = "rc4x", version, about = "RC4 keystream engines in seven hardware shapes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write raw keystream bytes to files
    Gen(Gen),
    /// XOR a file with the keystream
    Encrypt(Crypt),
    /// XOR a file with the keystream (the inverse of encrypt, same operation)
    Decrypt(Crypt),
    /// Print the clock model and throughput of a design
    Bench(Bench),
    /// Score keystream files with the fifteen-test battery
    Nist(Nist),
    /// Listen for one encrypted session and dump received payloads
    Serve(Serve),
    /// Open an encrypted session and send a file
    Connect(Connect),
}

/// Key input, as text or hex.
#[derive(Args)]
struct KeyArgs {
    /// Key as UTF-8 text (1..=256 bytes)
    #[arg(long, conflicts_with = "key_hex")]
    key: Option<String>,
    /// Key as hex digits
    #[arg(long)]
    key_hex: Option<String>,
}

impl KeyArgs {
    fn material(&self) -> Result<KeyMaterial> {
        let key = match (&self.key, &self.key_hex) {
            (Some(text), None) => KeyMaterial::new(text.as_bytes())?,
            (None, Some(h)) => KeyMaterial::from_hex(h)?,
            _ => bail!("a key is required: pass --key or --key-hex"),
        };
        Ok(key)
    }
}

#[derive(Args)]
struct Gen {
    /// Design to run (d1..d7)
    design: DesignId,
    #[command(flatten)]
    key: KeyArgs,
    /// Keystream bytes per file
    #[arg(long)]
    nbytes: usize,
    /// Output path; with --files it is used as a prefix: <out><index>
    #[arg(long)]
    out: PathBuf,
    /// Write this many files, keyed from --keyfile
    #[arg(long, requires = "keyfile")]
    files: Option<usize>,
    /// File with one UTF-8 key per line (for --files)
    #[arg(long)]
    keyfile: Option<PathBuf>,
}

#[derive(Args)]
struct Crypt {
    /// Design to run (d1..d7)
    design: DesignId,
    #[command(flatten)]
    key: KeyArgs,
    /// Input file
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct Bench {
    /// Design to report (d1..d7)
    design: DesignId,
    /// Keystream length in bytes for the clock count
    #[arg(long, default_value_t = 256)]
    n: u64,
    /// Clock frequency in MHz for the throughput line (default: the
    /// hardware targets, 200 for bytewise designs and 194 for fused ones)
    #[arg(long)]
    mhz: Option<f64>,
}

#[derive(Args)]
struct Nist {
    /// Keystream files to score
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Significance level
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// Bits per file fed to the battery (files must be at least this long)
    #[arg(long, default_value_t = 1_342_400)]
    bits: usize,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit CSV instead of the table
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct Serve {
    /// Design to run (d1..d7)
    design: DesignId,
    #[command(flatten)]
    key: KeyArgs,
    /// Listen address (port 0 picks a free port; the bound address is
    /// printed to stderr)
    #[arg(long, default_value = "127.0.0.1:0")]
    addr: String,
    /// Echo every received frame back to the peer
    #[arg(long)]
    echo: bool,
    /// Write received payload bytes here (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Connect {
    /// Design to run (d1..d7)
    design: DesignId,
    #[command(flatten)]
    key: KeyArgs,
    /// Peer address
    #[arg(long)]
    addr: String,
    /// File to send
    #[arg(long = "in")]
    input: PathBuf,
    /// Expect the peer to echo every frame and write the echoes here.
    /// Required when the peer runs with --echo, or its replies stall the
    /// session.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    // Die quietly when stdout is a closed pipe (e.g. `| head`), like other
    // stream tools, instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too; they are not usage errors.
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("rc4x: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Encrypt(a) | Cmd::Decrypt(a) => crypt(a),
        Cmd::Bench(a) => bench(a),
        Cmd::Nist(a) => nist(a),
        Cmd::Serve(a) => serve(a),
        Cmd::Connect(a) => connect(a),
    }
}

fn gen(a: Gen) -> Result<ExitCode> {
    match (a.files, &a.keyfile) {
        (None, None) => {
            let key = a.key.material()?;
            fs::write(&a.out, keystream(a.design, &key, a.nbytes))
                .with_context(|| format!("writing {}", a.out.display()))?;
        }
        (Some(count), Some(keyfile)) => {
            let listing = fs::read_to_string(keyfile)
                .with_context(|| format!("reading {}", keyfile.display()))?;
            let keys: Vec<&str> = listing.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            if keys.len() < count {
                bail!("{} lists {} keys, --files wants {count}", keyfile.display(), keys.len());
            }
            for (i, text) in keys[..count].iter().enumerate() {
                let key = KeyMaterial::new(text.as_bytes())
                    .with_context(|| format!("key on line {}", i + 1))?;
                let path = PathBuf::from(format!("{}{i:04}", a.out.display()));
                fs::write(&path, keystream(a.design, &key, a.nbytes))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        _ => bail!("--files and --keyfile go together"),
    }
    Ok(ExitCode::SUCCESS)
}

fn crypt(a: Crypt) -> Result<ExitCode> {
    let key = a.key.material()?;
    let mut data =
        fs::read(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let ks = keystream(a.design, &key, data.len());
    for (b, z) in data.iter_mut().zip(ks) {
        *b ^= z;
    }
    fs::write(&a.out, data).with_context(|| format!("writing {}", a.out.display()))?;
    Ok(ExitCode::SUCCESS)
}

/// Rational clock counts print exactly; non-integers also get a decimal
/// rendering.
fn fmt_clocks(c: Clocks) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("{}/{} ({:.4})", c.numer(), c.denom(), *c.numer() as f64 / *c.denom() as f64)
    }
}

fn bench(a: Bench) -> Result<ExitCode> {
    let cfg = rc4x::DesignConfig::of(a.design);
    let fused = cfg.pairwise;
    let mhz = a.mhz.unwrap_or(if fused { 194.0 } else { 200.0 });
    let bpc = cfg.bytes_per_clock();

    println!("design {}: {} bytes in {} clocks", a.design, a.n, fmt_clocks(clock_count(a.design, a.n)));
    if a.n > 0 {
        println!("per byte: {} clocks", fmt_clocks(per_byte_cost(a.design, a.n)?));
    }
    println!(
        "steady state: {bpc} bytes/clock ({} clocks/byte), {:.3} Gbps at {mhz} MHz",
        1.0 / bpc as f64,
        steady_throughput_bps(a.design, mhz) / 1e9
    );

    // Software throughput of this build, for scale only; the clock model
    // above is the hardware claim.
    let key = KeyMaterial::new(b"benchmark-key").unwrap();
    let n = 16 << 20;
    let t0 = Instant::now();
    let out = keystream(a.design, &key, n);
    let dt = t0.elapsed().as_secs_f64();
    println!(
        "software: {} MiB in {dt:.3} s ({:.0} MiB/s, informational; checksum {:02x})",
        n >> 20,
        n as f64 / dt / (1 << 20) as f64,
        out.iter().fold(0u8, |acc, &b| acc.wrapping_add(b)),
    );
    Ok(ExitCode::SUCCESS)
}

fn nist(a: Nist) -> Result<ExitCode> {
    let mut sequences = Vec::with_capacity(a.files.len());
    for path in &a.files {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let seq = BitSequence::from_bytes_truncated(bytes, a.bits)
            .with_context(|| format!("{}: want {} bits", path.display(), a.bits))?;
        sequences.push(seq);
    }
    let params = SuiteParams { alpha: a.alpha, ..SuiteParams::default() };
    let report = run_suite(&sequences, &params)?;
    let rendered = if a.csv { report.render_csv() } else { report.render_text() };
    match &a.out {
        Some(path) => {
            fs::write(path, &rendered).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{rendered}"),
    }
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

/// Clean end of stream: the peer closed at a frame boundary.
fn is_clean_close(e: &ChannelError) -> bool {
    matches!(e, ChannelError::ShortRead { wanted: 4, got: 0, .. })
}

fn serve(a: Serve) -> Result<ExitCode> {
    let key = a.key.material()?;
    let listener = TcpListener::bind(&a.addr).with_context(|| format!("binding {}", a.addr))?;
    eprintln!("listening on {}", listener.local_addr()?);
    let config = ChannelConfig::new(Role::Listener, a.addr, key, a.design);
    let mut session = listen_on(&listener, &config)?;

    let mut sink: BufWriter<Box<dyn Write>> = BufWriter::new(match &a.out {
        Some(path) => Box::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    });
    loop {
        match session.recv() {
            Ok(payload) => {
                sink.write_all(&payload)?;
                if a.echo {
                    session.send(&payload)?;
                }
            }
            Err(e) if is_clean_close(&e) => break,
            Err(e) => return Err(e.into()),
        }
    }
    sink.flush()?;
    eprintln!("session closed: {} keystream bytes consumed", session.keystream_consumed());
    Ok(ExitCode::SUCCESS)
}

fn connect(a: Connect) -> Result<ExitCode> {
    let key = a.key.material()?;
    let data = fs::read(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let config = ChannelConfig::new(Role::Initiator, a.addr, key, a.design);
    let mut session = establish(&config)?;

    let mut echo_sink = match &a.out {
        Some(path) => Some(BufWriter::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => None,
    };
    for chunk in data.chunks(1 << 20) {
        session.send(chunk)?;
        if let Some(sink) = &mut echo_sink {
            sink.write_all(&session.recv()?)?;
        }
    }
    if let Some(mut sink) = echo_sink {
        sink.flush()?;
    }
    eprintln!("sent {} bytes: {} keystream bytes consumed", data.len(), session.keystream_consumed());
    Ok(ExitCode::SUCCESS)
}
