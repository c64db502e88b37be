use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::decode::Decoder;
use crate::gf2::{array_code, hamming_code, load_alist, random_regular_ldpc, spc_product_code, LinearCode};

use super::SimError;

pub const DEFAULT_MIN_FRAME_ERRORS: usize = 100;
pub const DEFAULT_MAX_FRAMES: usize = 1_000_000;

/// Where the parity-check matrix comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum CodeSource {
    Alist(PathBuf),
    Regular { n: usize, dv: usize, dc: usize, seed: u64 },
    SpcProduct(Vec<usize>),
    Hamming(usize),
    Array { p: usize, rows: usize, cols: usize },
}

impl CodeSource {
    /// Builds the code. Relative alist paths are taken relative to `base`.
    pub fn load(&self, base: Option<&Path>) -> Result<LinearCode, SimError> {
        Ok(match self {
            CodeSource::Alist(path) => {
                let path = match base {
                    Some(b) if path.is_relative() => b.join(path),
                    _ => path.clone(),
                };
                load_alist(&std::fs::read_to_string(&path)?)?
            }
            CodeSource::Regular { n, dv, dc, seed } => random_regular_ldpc(*n, *dv, *dc, *seed)?,
            CodeSource::SpcProduct(dims) => spc_product_code(dims)?,
            CodeSource::Hamming(r) => hamming_code(*r)?,
            CodeSource::Array { p, rows, cols } => array_code(*p, *rows, *cols)?,
        })
    }
}

/// `regular:n,dv,dc,seed`, `spc:d1,d2,…`, `hamming:r`, `array:p,rows,cols`,
/// `alist:path`, or a bare path to an alist file.
impl FromStr for CodeSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let nums = |a: &str, want: Option<usize>| -> Result<Vec<usize>, String> {
            let v = a
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| format!("not an integer: {t:?}")))
                .collect::<Result<Vec<_>, _>>()?;
            match want {
                Some(w) if v.len() != w => Err(format!("expected {w} comma-separated integers in {a:?}")),
                _ => Ok(v),
            }
        };
        match s.split_once(':') {
            Some(("regular", a)) => {
                let v = nums(a, Some(4))?;
                Ok(CodeSource::Regular {
                    n: v[0],
                    dv: v[1],
                    dc: v[2],
                    seed: v[3] as u64,
                })
            }
            Some(("spc", a)) => Ok(CodeSource::SpcProduct(nums(a, None)?)),
            Some(("hamming", a)) => Ok(CodeSource::Hamming(nums(a, Some(1))?[0])),
            Some(("array", a)) => {
                let v = nums(a, Some(3))?;
                Ok(CodeSource::Array {
                    p: v[0],
                    rows: v[1],
                    cols: v[2],
                })
            }
            Some(("alist", p)) => Ok(CodeSource::Alist(PathBuf::from(p.trim()))),
            _ if s.is_empty() => Err("empty code source".into()),
            _ => Ok(CodeSource::Alist(PathBuf::from(s))),
        }
    }
}

impl fmt::Display for CodeSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSource::Alist(p) => write!(f, "alist:{}", p.display()),
            CodeSource::Regular { n, dv, dc, seed } => write!(f, "regular:{n},{dv},{dc},{seed}"),
            CodeSource::SpcProduct(d) => {
                let d: Vec<String> = d.iter().map(ToString::to_string).collect();
                write!(f, "spc:{}", d.join(","))
            }
            CodeSource::Hamming(r) => write!(f, "hamming:{r}"),
            CodeSource::Array { p, rows, cols } => write!(f, "array:{p},{rows},{cols}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// Points are crossover probabilities in `[0, 0.5)`.
    Bsc,
    /// Points are `E_b/N_0` in dB; `inf` is noiseless.
    Biawgn,
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "bsc" => Ok(ChannelKind::Bsc),
            "biawgn" | "awgn" => Ok(ChannelKind::Biawgn),
            other => Err(format!("unknown channel {other:?} (bsc or biawgn)")),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::Bsc => "bsc",
            ChannelKind::Biawgn => "biawgn",
        })
    }
}

/// A simulation campaign, read from `key = value` lines.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub code: CodeSource,
    pub channel: ChannelKind,
    pub points: Vec<f64>,
    pub decoders: Vec<Decoder>,
    /// A point stops once this many frame errors have been seen.
    pub min_frame_errors: usize,
    /// ... or after this many frames, whichever comes first.
    pub max_frames: usize,
    pub seed: u64,
    /// When off, `ms_per_frame` is written as 0 so reruns are byte-identical.
    pub timing: bool,
}

impl SimConfig {
    pub fn new(code: CodeSource, channel: ChannelKind, points: Vec<f64>, decoders: Vec<Decoder>) -> Self {
        Self {
            code,
            channel,
            points,
            decoders,
            min_frame_errors: DEFAULT_MIN_FRAME_ERRORS,
            max_frames: DEFAULT_MAX_FRAMES,
            seed: 0,
            timing: true,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, SimError> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |msg: String| SimError::Config { line: 0, msg };
        if self.points.is_empty() {
            return Err(bad("points must not be empty".into()));
        }
        if self.decoders.is_empty() {
            return Err(bad("decoders must not be empty".into()));
        }
        if self.min_frame_errors == 0 || self.max_frames == 0 {
            return Err(bad("min_frame_errors and max_frames must be at least 1".into()));
        }
        for &p in &self.points {
            let ok = match self.channel {
                ChannelKind::Bsc => (0.0..0.5).contains(&p),
                ChannelKind::Biawgn => !p.is_nan() && p != f64::NEG_INFINITY,
            };
            if !ok {
                return Err(bad(format!("point {p} is outside the range of the {} channel", self.channel)));
            }
        }
        Ok(())
    }
}

impl FromStr for SimConfig {
    type Err = SimError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut code = None;
        let mut channel = None;
        let mut points = None;
        let mut decoders = None;
        let mut min_frame_errors = DEFAULT_MIN_FRAME_ERRORS;
        let mut max_frames = DEFAULT_MAX_FRAMES;
        let mut seed = 0;
        let mut timing = true;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let err = |msg: String| SimError::Config { line, msg };
            let (key, value) = l.split_once('=').ok_or_else(|| err("expected key = value".into()))?;
            let value = value.trim();
            let int = |v: &str| v.parse::<u64>().map_err(|_| err(format!("not a non-negative integer: {v:?}")));
            match key.trim() {
                "code" => code = Some(value.parse::<CodeSource>().map_err(err)?),
                "channel" => channel = Some(value.parse::<ChannelKind>().map_err(err)?),
                "points" => {
                    let v = value
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse::<f64>().map_err(|_| err(format!("not a number: {t:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    points = Some(v);
                }
                "decoders" => {
                    let v = value
                        .split_whitespace()
                        .map(|t| t.parse::<Decoder>().map_err(|e| err(e.to_string())))
                        .collect::<Result<Vec<_>, _>>()?;
                    decoders = Some(v);
                }
                "min_frame_errors" => min_frame_errors = int(value)? as usize,
                "max_frames" => max_frames = int(value)? as usize,
                "seed" => seed = int(value)?,
                "timing" => {
                    timing = match value {
                        "on" | "true" | "1" => true,
                        "off" | "false" | "0" => false,
                        _ => return Err(err(format!("timing must be on or off, got {value:?}"))),
                    }
                }
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        let missing = |k: &str| SimError::Config {
            line: 0,
            msg: format!("missing key {k:?}"),
        };
        let cfg = SimConfig {
            code: code.ok_or_else(|| missing("code"))?,
            channel: channel.ok_or_else(|| missing("channel"))?,
            points: points.ok_or_else(|| missing("points"))?,
            decoders: decoders.ok_or_else(|| missing("decoders"))?,
            min_frame_errors,
            max_frames,
            seed,
            timing,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl fmt::Display for SimConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let points: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        let decoders: Vec<String> = self.decoders.iter().map(ToString::to_string).collect();
        writeln!(f, "code = {}", self.code)?;
        writeln!(f, "channel = {}", self.channel)?;
        writeln!(f, "points = {}", points.join(", "))?;
        writeln!(f, "decoders = {}", decoders.join(" "))?;
        writeln!(f, "min_frame_errors = {}", self.min_frame_errors)?;
        writeln!(f, "max_frames = {}", self.max_frames)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "timing = {}", if self.timing { "on" } else { "off" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
        # BSC sweep
        code = regular:32,3,4,7
        channel = bsc
        points = 0.02, 0.04
        decoders = blpd cp ocdd:6,2
        min_frame_errors = 20
        max_frames = 500
        seed = 9
        timing = off
    ";

    #[test]
    fn parses_and_round_trips() {
        let cfg: SimConfig = SAMPLE.parse().unwrap();
        assert_eq!(cfg.code, CodeSource::Regular { n: 32, dv: 3, dc: 4, seed: 7 });
        assert_eq!(cfg.points, vec![0.02, 0.04]);
        assert_eq!(cfg.decoders.len(), 3);
        assert!(!cfg.timing);
        assert_eq!(cfg.to_string().parse::<SimConfig>().unwrap(), cfg);
    }

    #[test]
    fn defaults_apply() {
        let cfg: SimConfig = "code = hamming:3\nchannel = biawgn\npoints = 3\ndecoders = blpd".parse().unwrap();
        assert_eq!(cfg.min_frame_errors, DEFAULT_MIN_FRAME_ERRORS);
        assert_eq!(cfg.max_frames, DEFAULT_MAX_FRAMES);
        assert!(cfg.timing);
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            "code = hamming:3\nchannel = bsc\npoints = 0.6\ndecoders = blpd",
            "code = hamming:3\nchannel = bsc\npoints =\ndecoders = blpd",
            "code = hamming:3\nchannel = bsc\npoints = 0.1\ndecoders = nope",
            "code = hamming:3\nchannel = bsc\npoints = 0.1",
            "code = hamming:3\nchannel = bsc\npoints = 0.1\ndecoders = blpd\ncolour = red",
            "code = regular:1,2\nchannel = bsc\npoints = 0.1\ndecoders = blpd",
            "code = hamming:3\nchannel = bsc\npoints = 0.1\ndecoders = blpd\nmax_frames = 0",
        ] {
            assert!(text.parse::<SimConfig>().is_err(), "{text}");
        }
    }

    #[test]
    fn code_sources() {
        assert_eq!("spc:3,4".parse::<CodeSource>().unwrap(), CodeSource::SpcProduct(vec![3, 4]));
        assert_eq!("codes/a.alist".parse::<CodeSource>().unwrap(), CodeSource::Alist("codes/a.alist".into()));
        assert_eq!("hamming:3".parse::<CodeSource>().unwrap().load(None).unwrap().n(), 7);
    }
}
