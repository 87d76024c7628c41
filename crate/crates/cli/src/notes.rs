//! Series specifiers: comma- or space-separated integers, or 12-EDO note
//! names numbered from a reference note.

use prolifera::{Modulus, Series};

use crate::CliError;

const NAMES: [&str; 12] = ["C", "C#", "D", "Eb", "E", "F", "F#", "G", "G#", "A", "Bb", "B"];

/// Absolute pitch class (C = 0) of a note name such as `F#`, `Bb`, `Cb`.
pub fn note_class(name: &str) -> Option<usize> {
    let mut chars = name.chars();
    let base: i32 = match chars.next()?.to_ascii_uppercase() {
        'C' => 0,
        'D' => 2,
        'E' => 4,
        'F' => 5,
        'G' => 7,
        'A' => 9,
        'B' => 11,
        _ => return None,
    };
    let mut shift = 0;
    for c in chars {
        shift += match c {
            '#' | '♯' => 1,
            'b' | '♭' => -1,
            _ => return None,
        };
    }
    Some((base + shift).rem_euclid(12) as usize)
}

/// Name of `value` when 0 sits at absolute pitch class `tonic`.
pub fn note_name(value: usize, tonic: usize) -> &'static str {
    NAMES[(value + tonic) % 12]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub series: Series,
    /// Absolute pitch class of 0 when the input used note names.
    pub tonic: Option<usize>,
}

fn tokens(text: &str) -> Vec<&str> {
    let trimmed = text
        .trim()
        .trim_start_matches(['[', '('])
        .trim_end_matches([']', ')']);
    trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect()
}

/// Parses a series. Note names are numbered from `tonic` when given,
/// otherwise from the first note.
pub fn parse_series(text: &str, tonic: Option<usize>) -> Result<Parsed, CliError> {
    let toks = tokens(text);
    if toks.is_empty() {
        return Err(CliError::Parse("empty series".into()));
    }
    let numeric = toks[0].chars().all(|c| c.is_ascii_digit());
    let mut values = Vec::with_capacity(toks.len());
    let mut absolute = Vec::new();
    for (i, tok) in toks.iter().enumerate() {
        if numeric {
            let v: usize = tok.parse().map_err(|_| {
                CliError::Parse(format!("item {} ('{}') is not a pitch-class number", i + 1, tok))
            })?;
            values.push(v);
        } else {
            let pc = note_class(tok).ok_or_else(|| {
                CliError::Parse(format!("item {} ('{}') is not a note name", i + 1, tok))
            })?;
            absolute.push(pc);
        }
    }
    let tonic = if numeric {
        None
    } else {
        if absolute.len() != 12 {
            return Err(CliError::Parse(format!(
                "note names describe 12 pitch classes, found {}",
                absolute.len()
            )));
        }
        let r = tonic.unwrap_or(absolute[0]);
        values = absolute.iter().map(|&pc| (pc + 12 - r) % 12).collect();
        Some(r)
    };
    let n = values.len();
    let modulus = Modulus::new(n)?;
    let mut seen = vec![None; n];
    for (i, &v) in values.iter().enumerate() {
        if v >= n {
            return Err(CliError::Parse(format!(
                "item {} ({}) is out of range for {} pitch classes",
                i + 1,
                v,
                n
            )));
        }
        if let Some(j) = seen[v] {
            return Err(CliError::Parse(format!(
                "items {} and {} are both pitch class {}",
                j + 1,
                i + 1,
                v
            )));
        }
        seen[v] = Some(i);
    }
    Ok(Parsed {
        series: Series::new(values, modulus)?,
        tonic,
    })
}

/// Comma-separated positive integers, e.g. a cycle structure.
pub fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    tokens(text)
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| CliError::Parse(format!("{} item {} ('{}') is not a positive integer", what, i + 1, t)))
        })
        .collect()
}

/// `[0, 3, 4]` or, with a tonic, `[A, C, C#]`.
pub fn render_series(s: &Series, tonic: Option<usize>) -> String {
    let items: Vec<String> = s
        .notes()
        .iter()
        .map(|&v| match tonic {
            Some(r) => note_name(v, r).to_string(),
            None => v.to_string(),
        })
        .collect();
    format!("[{}]", items.join(", "))
}

/// `(0 4 1 5 2)(3)(6)` or with names.
pub fn render_cycles(cycles: &[Vec<usize>], tonic: Option<usize>) -> String {
    cycles
        .iter()
        .map(|c| {
            let items: Vec<String> = c
                .iter()
                .map(|&v| match tonic {
                    Some(r) => note_name(v, r).to_string(),
                    None => v.to_string(),
                })
                .collect();
            format!("({})", items.join(" "))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(note_class("A"), Some(9));
        assert_eq!(note_class("Bb"), Some(10));
        assert_eq!(note_class("F#"), Some(6));
        assert_eq!(note_class("Cb"), Some(11));
        assert_eq!(note_class("E#"), Some(5));
        assert_eq!(note_class("db"), Some(1));
        assert_eq!(note_class("H"), None);
        assert_eq!(note_class("C#x"), None);
    }

    #[test]
    fn numbering_is_relative_to_the_first_note() {
        let p = parse_series("A F# G G# E F B Bb D C# C D#", None).unwrap();
        assert_eq!(p.series.notes(), &[0, 9, 10, 11, 7, 8, 2, 1, 5, 4, 3, 6]);
        assert_eq!(p.tonic, Some(9));
        let q = parse_series("Bb A C B D# E C# D F# F G# G", p.tonic).unwrap();
        assert_eq!(q.series.notes(), &[1, 0, 3, 2, 6, 7, 4, 5, 9, 8, 11, 10]);
    }

    #[test]
    fn numbers_with_brackets() {
        let p = parse_series("[0, 3, 4, 2, 1, 6, 5]", None).unwrap();
        assert_eq!(p.series.len(), 7);
        assert_eq!(p.tonic, None);
        assert_eq!(parse_series("(0,)", None).unwrap().series.len(), 1);
    }

    #[test]
    fn errors_name_the_item() {
        let e = parse_series("0,1,x", None).unwrap_err().to_string();
        assert!(e.contains("item 3"), "{}", e);
        let e = parse_series("0,1,1", None).unwrap_err().to_string();
        assert!(e.contains("items 2 and 3"), "{}", e);
        let e = parse_series("0,5", None).unwrap_err().to_string();
        assert!(e.contains("item 2"), "{}", e);
        let e = parse_series("C D E", None).unwrap_err().to_string();
        assert!(e.contains("12"), "{}", e);
        assert!(parse_series("", None).is_err());
    }

    #[test]
    fn rendering_round_trips() {
        let p = parse_series("A F# G G# E F B Bb D C# C D#", None).unwrap();
        let text = render_series(&p.series, p.tonic);
        assert_eq!(text, "[A, F#, G, G#, E, F, B, Bb, D, C#, C, Eb]");
        assert_eq!(parse_series(&text, p.tonic).unwrap(), p);
        let s = parse_series("0,3,4,2,1,6,5", None).unwrap();
        assert_eq!(parse_series(&render_series(&s.series, None), None).unwrap(), s);
    }
}
