use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordlab::ball::DEFAULT_BALL_CAP;
use ordlab::solver::DEFAULT_NODE_CAP;
use ordlab::{Budgets, Mode};

#[derive(Debug, Parser)]
#[command(
    name = "ordlab",
    version,
    about = "Cayley-ball orderability tests for finitely presented groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Presentation file (`gens: ...` / `rels: ...`).
    #[arg(long, global = true)]
    pub presentation: Option<PathBuf>,
    /// Radius `n` or ascending range `a..b`.
    #[arg(short = 'k', global = true)]
    pub radius: Option<RadiusRange>,
    #[arg(long, global = true, default_value_t = Budgets::default().kb_max_rules, value_parser = positive)]
    pub kb_max_rules: usize,
    #[arg(long, global = true, default_value_t = Budgets::default().kb_max_len, value_parser = positive)]
    pub kb_max_len: usize,
    #[arg(long, global = true, default_value_t = Budgets::default().tc_max_cosets, value_parser = positive)]
    pub tc_max_cosets: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_BALL_CAP, value_parser = positive)]
    pub ball_cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_CAP, value_parser = positive_u64)]
    pub node_cap: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Certificate written by `test` and read by `check-cert`.
    #[arg(long, global = true, default_value = "certificate.json")]
    pub cert: PathBuf,
}

impl Common {
    pub fn budgets(&self) -> Budgets {
        Budgets {
            kb_max_rules: self.kb_max_rules,
            kb_max_len: self.kb_max_len,
            tc_max_cosets: self.tc_max_cosets,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the Cayley ball of the largest radius.
    Ball,
    /// Search each radius for a preorder (lo) or pre-biorder (bo).
    Test {
        #[arg(value_enum)]
        mode: ModeArg,
    },
    /// Check a refutation certificate.
    CheckCert,
    /// Count every valid assignment at each radius.
    Enumerate {
        #[arg(long, value_enum, default_value_t = ModeArg::Lo)]
        mode: ModeArg,
        /// `w>1` or `w<1`; repeatable.
        #[arg(long = "constrain")]
        constraints: Vec<Constraint>,
        /// Maximum assignments kept per level.
        #[arg(long, default_value_t = 100_000, value_parser = positive)]
        limit: usize,
        /// Include the positive elements of each assignment.
        #[arg(long)]
        list: bool,
    },
    /// Restrict a known cone (lex:<n>, slope, klein) to each ball and verify it.
    VerifyCone {
        cone: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Lo)]
        mode: ModeArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Lo,
    Bo,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Lo => Mode::Preorder,
            ModeArg::Bo => Mode::Prebiorder,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadiusRange {
    pub start: usize,
    pub end: usize,
}

impl RadiusRange {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for RadiusRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| format!("radius {t:?} is not a positive integer"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b)?),
            None => (num(s)?, num(s)?),
        };
        if start > end {
            return Err(format!("radius range {s} is empty"));
        }
        Ok(RadiusRange { start, end })
    }
}

/// `w>1` or `w<1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub word: String,
    pub positive: bool,
}

impl FromStr for Constraint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (word, positive) = if let Some(w) = s.strip_suffix(">1") {
            (w, true)
        } else if let Some(w) = s.strip_suffix("<1") {
            (w, false)
        } else {
            return Err(format!("constraint {s:?} must look like w>1 or w<1"));
        };
        let word = word.trim();
        if word.is_empty() {
            return Err(format!("constraint {s:?} has no word"));
        }
        Ok(Constraint {
            word: word.to_string(),
            positive,
        })
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}1", self.word, if self.positive { '>' } else { '<' })
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("{s:?} is not a positive integer")),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    positive(s).map(|n| n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_ranges() {
        assert_eq!("3".parse(), Ok(RadiusRange { start: 3, end: 3 }));
        assert_eq!("1..6".parse(), Ok(RadiusRange { start: 1, end: 6 }));
        assert!("0".parse::<RadiusRange>().is_err());
        assert!("4..2".parse::<RadiusRange>().is_err());
        assert!("x".parse::<RadiusRange>().is_err());
    }

    #[test]
    fn constraints() {
        let c: Constraint = "ab>1".parse().unwrap();
        assert_eq!((c.word.as_str(), c.positive), ("ab", true));
        let c: Constraint = "A<1".parse().unwrap();
        assert!(!c.positive);
        assert_eq!(c.to_string(), "A<1");
        assert!("a=1".parse::<Constraint>().is_err());
        assert!(">1".parse::<Constraint>().is_err());
    }
}
