//! Line-oriented text format for DVPDAs, DFAs (optionally with a subset)
//! and visibly sequential transducers.
//!
//! ```text
//! dvpda
//! states 2
//! stack BOT X          # first symbol is the bottom symbol
//! calls a
//! ints b
//! rets d
//! c 0 a -> 1 push X
//! i 0 b -> 1
//! r 0 d BOT -> 0
//! initial 0
//! finals 1
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::automata::{Dfa, Dvpda, DvpdaBuilder, LetterKind, PartitionedAlphabet, StackAlphabet, StateId};
use crate::transducer::{Transition, Vst};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn state(line: usize, tok: &str, n: Option<usize>) -> Result<StateId, ParseError> {
    let Some(n) = n else {
        return err(line, "`states` must come before transitions");
    };
    match tok.parse::<usize>() {
        Ok(q) if q < n => Ok(q),
        Ok(q) => err(line, format!("state {q} out of range (states {n})")),
        Err(_) => err(line, format!("expected a state index, found {tok:?}")),
    }
}

fn expect(line: usize, toks: &[&str], at: usize, word: &str) -> Result<(), ParseError> {
    if toks.get(at) == Some(&word) {
        Ok(())
    } else {
        err(line, format!("expected `{word}` at position {}", at + 1))
    }
}

fn arity(line: usize, toks: &[&str], n: usize, shape: &str) -> Result<(), ParseError> {
    if toks.len() == n {
        Ok(())
    } else {
        err(line, format!("expected `{shape}`"))
    }
}

fn header<'a>(text: &'a str, expected: &str) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)>, ParseError> {
    let mut it = lines(text);
    match it.next() {
        Some((_, toks)) if toks == [expected] => Ok(it),
        Some((line, toks)) => err(line, format!("expected header `{expected}`, found `{}`", toks.join(" "))),
        None => err(1, format!("empty input, expected header `{expected}`")),
    }
}

/// Which kind of automaton a file holds, judged by its header.
pub fn sniff(text: &str) -> Option<&str> {
    lines(text).next().and_then(|(_, t)| (t.len() == 1).then_some(t[0]))
}

pub fn parse_dvpda(text: &str) -> Result<Dvpda, crate::Error> {
    let mut num_states = None;
    let mut stack: Option<StackAlphabet> = None;
    let mut alphabet = PartitionedAlphabet::new();
    let mut builder: Option<DvpdaBuilder> = None;
    let mut seen = BTreeSet::new();

    for (line, toks) in header(text, "dvpda")? {
        let n = num_states;
        match toks[0] {
            "states" => {
                arity(line, &toks, 2, "states <n>")?;
                if num_states.is_some() {
                    return Err(ParseError { line, message: "duplicate `states`".into() }.into());
                }
                num_states = Some(toks[1].parse::<usize>().map_err(|_| ParseError {
                    line,
                    message: format!("expected a state count, found {:?}", toks[1]),
                })?);
            }
            "stack" => {
                if toks.len() < 2 {
                    return Err(ParseError { line, message: "expected `stack <bottom> <symbol>...`".into() }.into());
                }
                let mut s = StackAlphabet::new(toks[1]);
                for t in &toks[2..] {
                    s.push(*t);
                }
                stack = Some(s);
            }
            kw @ ("calls" | "ints" | "rets") => {
                if builder.is_some() {
                    return err(line, format!("`{kw}` after the first transition")).map_err(Into::into);
                }
                let kind = match kw {
                    "calls" => LetterKind::Call,
                    "ints" => LetterKind::Internal,
                    _ => LetterKind::Return,
                };
                for t in &toks[1..] {
                    alphabet.push(*t, kind);
                }
            }
            kw @ ("c" | "i" | "r" | "initial" | "finals") => {
                if builder.is_none() {
                    let Some(states) = n else {
                        return err(line, "`states` must come before transitions").map_err(Into::into);
                    };
                    let Some(stack) = stack.clone() else {
                        return err(line, "`stack` must come before transitions").map_err(Into::into);
                    };
                    builder = Some(DvpdaBuilder::new(states, alphabet.clone(), stack));
                }
                let b = builder.as_mut().expect("initialised above");
                let letter = |tok: &str| {
                    b.alphabet()
                        .find(tok)
                        .ok_or_else(|| ParseError { line, message: format!("unknown letter {tok:?}") })
                };
                let symbol = |tok: &str| {
                    b.stack()
                        .find(tok)
                        .ok_or_else(|| ParseError { line, message: format!("unknown stack symbol {tok:?}") })
                };
                match kw {
                    "c" => {
                        arity(line, &toks, 7, "c <state> <letter> -> <state> push <symbol>")?;
                        expect(line, &toks, 3, "->")?;
                        expect(line, &toks, 5, "push")?;
                        let (q, l) = (state(line, toks[1], n)?, letter(toks[2])?);
                        let (t, g) = (state(line, toks[4], n)?, symbol(toks[6])?);
                        if !seen.insert((q, l, usize::MAX)) {
                            return err(line, "duplicate transition").map_err(Into::into);
                        }
                        b.call(q, l, t, g);
                    }
                    "i" => {
                        arity(line, &toks, 5, "i <state> <letter> -> <state>")?;
                        expect(line, &toks, 3, "->")?;
                        let (q, l) = (state(line, toks[1], n)?, letter(toks[2])?);
                        let t = state(line, toks[4], n)?;
                        if !seen.insert((q, l, usize::MAX)) {
                            return err(line, "duplicate transition").map_err(Into::into);
                        }
                        b.internal(q, l, t);
                    }
                    "r" => {
                        arity(line, &toks, 6, "r <state> <letter> <symbol> -> <state>")?;
                        expect(line, &toks, 4, "->")?;
                        let (q, l, g) = (state(line, toks[1], n)?, letter(toks[2])?, symbol(toks[3])?);
                        let t = state(line, toks[5], n)?;
                        if !seen.insert((q, l, g)) {
                            return err(line, "duplicate transition").map_err(Into::into);
                        }
                        b.ret(q, l, g, t);
                    }
                    "initial" => {
                        arity(line, &toks, 2, "initial <state>")?;
                        b.initial(state(line, toks[1], n)?);
                    }
                    _ => {
                        let fs = toks[1..].iter().map(|t| state(line, t, n)).collect::<Result<Vec<_>, _>>()?;
                        b.finals(fs);
                    }
                }
            }
            other => return err(line, format!("unknown directive {other:?}")).map_err(Into::into),
        }
    }

    let builder = match builder {
        Some(b) => b,
        None => {
            let Some(states) = num_states else {
                return err(1, "missing `states`").map_err(Into::into);
            };
            DvpdaBuilder::new(states, alphabet, stack.unwrap_or_else(|| StackAlphabet::new("BOT")))
        }
    };
    Ok(builder.build()?)
}

pub fn write_dvpda(m: &Dvpda) -> String {
    let mut out = String::from("dvpda\n");
    let a = m.alphabet();
    let st = m.stack();
    let _ = writeln!(out, "states {}", m.num_states());
    let syms: Vec<&str> = (0..st.len()).map(|g| st.name(g)).collect();
    let _ = writeln!(out, "stack {}", syms.join(" "));
    // one declaration line per maximal run of equal kinds keeps letter order
    let mut l = 0;
    while l < a.len() {
        let kind = a.kind(l);
        let mut names = Vec::new();
        while l < a.len() && a.kind(l) == kind {
            names.push(a.name(l));
            l += 1;
        }
        let kw = match kind {
            LetterKind::Call => "calls",
            LetterKind::Internal => "ints",
            LetterKind::Return => "rets",
        };
        let _ = writeln!(out, "{kw} {}", names.join(" "));
    }
    for l in 0..a.len() {
        for q in 0..m.num_states() {
            match a.kind(l) {
                LetterKind::Call => {
                    let (t, g) = m.call(q, l);
                    let _ = writeln!(out, "c {q} {} -> {t} push {}", a.name(l), st.name(g));
                }
                LetterKind::Internal => {
                    let _ = writeln!(out, "i {q} {} -> {}", a.name(l), m.internal(q, l));
                }
                LetterKind::Return => {
                    for g in 0..st.len() {
                        let _ = writeln!(out, "r {q} {} {} -> {}", a.name(l), st.name(g), m.ret(q, l, g));
                    }
                }
            }
        }
    }
    if let Some(q) = m.initial() {
        let _ = writeln!(out, "initial {q}");
    }
    if let Some(f) = m.finals() {
        let fs: Vec<String> = f.iter().map(|q| q.to_string()).collect();
        let _ = writeln!(out, "finals {}", fs.join(" "));
    }
    out
}

/// Parses a DFA; the optional `subset` line is returned alongside.
pub fn parse_dfa(text: &str) -> Result<(Dfa, Option<Vec<StateId>>), crate::Error> {
    let mut num_states = None;
    let mut letters: Vec<String> = Vec::new();
    let mut table: Vec<Vec<Option<StateId>>> = Vec::new();
    let mut subset = None;
    for (line, toks) in header(text, "dfa")? {
        let n = num_states;
        match toks[0] {
            "states" => {
                arity(line, &toks, 2, "states <n>")?;
                let k = toks[1].parse::<usize>().map_err(|_| ParseError {
                    line,
                    message: format!("expected a state count, found {:?}", toks[1]),
                })?;
                num_states = Some(k);
            }
            "letters" | "ints" => {
                if !table.is_empty() {
                    return err(line, "letters declared after the first transition").map_err(Into::into);
                }
                letters.extend(toks[1..].iter().map(|s| s.to_string()));
            }
            "t" => {
                arity(line, &toks, 5, "t <state> <letter> -> <state>")?;
                expect(line, &toks, 3, "->")?;
                let q = state(line, toks[1], n)?;
                let t = state(line, toks[4], n)?;
                let Some(l) = letters.iter().position(|x| x == toks[2]) else {
                    return err(line, format!("unknown letter {:?}", toks[2])).map_err(Into::into);
                };
                if table.is_empty() {
                    table = vec![vec![None; letters.len()]; n.unwrap_or(0)];
                }
                if table[q][l].replace(t).is_some() {
                    return err(line, "duplicate transition").map_err(Into::into);
                }
            }
            "subset" => {
                let s = toks[1..].iter().map(|t| state(line, t, n)).collect::<Result<BTreeSet<_>, _>>()?;
                subset = Some(s.into_iter().collect());
            }
            "initial" | "finals" => {}
            other => return err(line, format!("unknown directive {other:?}")).map_err(Into::into),
        }
    }
    let Some(n) = num_states else {
        return err(1, "missing `states`").map_err(Into::into);
    };
    if table.is_empty() {
        table = vec![vec![None; letters.len()]; n];
    }
    Ok((Dfa::new(letters, table)?, subset))
}

pub fn write_dfa(a: &Dfa, subset: Option<&[StateId]>) -> String {
    let mut out = String::from("dfa\n");
    let _ = writeln!(out, "states {}", a.num_states());
    let _ = writeln!(out, "letters {}", a.letters().join(" "));
    for q in 0..a.num_states() {
        for (l, name) in a.letters().iter().enumerate() {
            let _ = writeln!(out, "t {q} {name} -> {}", a.step(q, l));
        }
    }
    if let Some(s) = subset {
        let s: Vec<String> = s.iter().map(|q| q.to_string()).collect();
        let _ = writeln!(out, "subset {}", s.join(" "));
    }
    out
}

/// Parses a transducer. Outputs are written either as one token per output
/// symbol or, for single-character symbols, as one concatenated token;
/// `eps` is the empty output. `initial`/`finals` are accepted and ignored.
pub fn parse_vst(text: &str) -> Result<Vst, crate::Error> {
    let mut num_states = None;
    let mut inputs: Vec<String> = Vec::new();
    let mut outputs: Vec<String> = Vec::new();
    let mut table: Vec<Vec<Option<Transition>>> = Vec::new();
    for (line, toks) in header(text, "vst")? {
        let n = num_states;
        match toks[0] {
            "states" => {
                arity(line, &toks, 2, "states <n>")?;
                num_states = Some(toks[1].parse::<usize>().map_err(|_| ParseError {
                    line,
                    message: format!("expected a state count, found {:?}", toks[1]),
                })?);
            }
            "in" => inputs.extend(toks[1..].iter().map(|s| s.to_string())),
            "out" => outputs.extend(toks[1..].iter().map(|s| s.to_string())),
            "t" => {
                if toks.len() < 7 {
                    return err(line, "expected `t <state> <letter> -> <state> emit <output>`").map_err(Into::into);
                }
                expect(line, &toks, 3, "->")?;
                expect(line, &toks, 5, "emit")?;
                let q = state(line, toks[1], n)?;
                let t = state(line, toks[4], n)?;
                let Some(l) = inputs.iter().position(|x| x == toks[2]) else {
                    return err(line, format!("unknown letter {:?}", toks[2])).map_err(Into::into);
                };
                let out = parse_output(line, &toks[6..], &outputs)?;
                if table.is_empty() {
                    table = vec![vec![None; inputs.len()]; n.unwrap_or(0)];
                }
                if table[q][l].replace((t, out)).is_some() {
                    return err(line, "duplicate transition").map_err(Into::into);
                }
            }
            "initial" | "finals" => {}
            other => return err(line, format!("unknown directive {other:?}")).map_err(Into::into),
        }
    }
    let Some(n) = num_states else {
        return err(1, "missing `states`").map_err(Into::into);
    };
    if table.is_empty() {
        table = vec![vec![None; inputs.len()]; n];
    }
    Vst::new(inputs, outputs, table)
}

fn parse_output(line: usize, toks: &[&str], outputs: &[String]) -> Result<Vec<usize>, ParseError> {
    if toks == ["eps"] {
        return Ok(Vec::new());
    }
    let find = |s: &str| outputs.iter().position(|o| o == s);
    if let Some(word) = toks.iter().map(|t| find(t)).collect::<Option<Vec<_>>>() {
        return Ok(word);
    }
    if let [tok] = toks {
        let mut buf = [0u8; 4];
        if let Some(word) = tok.chars().map(|c| find(c.encode_utf8(&mut buf))).collect::<Option<Vec<_>>>() {
            return Ok(word);
        }
    }
    err(line, format!("output {:?} is not a word over the output alphabet", toks.join(" ")))
}

pub fn write_vst(t: &Vst) -> String {
    let mut out = String::from("vst\n");
    let _ = writeln!(out, "states {}", t.num_states());
    let _ = writeln!(out, "in {}", t.inputs().join(" "));
    let _ = writeln!(out, "out {}", t.outputs().join(" "));
    for q in 0..t.num_states() {
        for (l, name) in t.inputs().iter().enumerate() {
            let (target, word) = t.step(q, l);
            let emitted = if word.is_empty() {
                "eps".to_string()
            } else {
                word.iter().map(|&o| t.outputs()[o].as_str()).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(out, "t {q} {name} -> {target} emit {emitted}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::m1;

    const M1: &str = "\
dvpda
# fixture M1
states 2
stack BOT X
calls a
ints b
rets d
c 0 a -> 1 push X
c 1 a -> 1 push X
i 0 b -> 1
i 1 b -> 0
r 0 d X -> 0
r 1 d X -> 0
r 0 d BOT -> 0
r 1 d BOT -> 1
";

    #[test]
    fn parses_m1() {
        assert_eq!(parse_dvpda(M1).unwrap(), m1());
    }

    #[test]
    fn printed_automaton_reparses() {
        let m = m1().with_initial(Some(1)).with_finals(Some([0].into()));
        assert_eq!(parse_dvpda(&write_dvpda(&m)).unwrap(), m);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let bad = M1.replace("i 1 b -> 0", "i 1 b => 0");
        match parse_dvpda(&bad).unwrap_err() {
            crate::Error::Parse(e) => assert_eq!(e.line, 11),
            other => panic!("unexpected {other}"),
        }
        let bad = M1.replace("r 1 d BOT -> 1\n", "");
        assert!(matches!(parse_dvpda(&bad).unwrap_err(), crate::Error::Automaton(_)));
        assert!(parse_dvpda("dfa\nstates 1\n").is_err());
        let bad = M1.replace("i 1 b -> 0", "i 1 b -> 0\ni 1 b -> 1");
        assert!(parse_dvpda(&bad).is_err());
    }

    #[test]
    fn dfa_with_subset() {
        let text = "dfa\nstates 2\nletters x\nt 0 x -> 1\nt 1 x -> 1\nsubset 1\n";
        let (a, s) = parse_dfa(text).unwrap();
        assert_eq!(a.step(0, 0), 1);
        assert_eq!(s, Some(vec![1]));
        assert_eq!(parse_dfa(&write_dfa(&a, s.as_deref())).unwrap(), (a, s));
    }

    #[test]
    fn transducer_outputs() {
        let text = "vst\nstates 2\nin a b\nout X Y\n\
                    t 0 a -> 1 emit XY\nt 1 a -> 1 emit X Y\nt 0 b -> 0 emit eps\nt 1 b -> 0 emit eps\n";
        let t = parse_vst(text).unwrap();
        assert_eq!(t.step(0, 0), (1, &[0, 1][..]));
        assert_eq!(t.step(1, 0), (1, &[0, 1][..]));
        assert_eq!(parse_vst(&write_vst(&t)).unwrap(), t);
        assert!(parse_vst(&text.replace("emit XY", "emit XZ")).is_err());
    }
}
