//! Frame streams: text symbol lines in, concatenated binary frames out, and
//! back. Frame order is preserved; errors carry the 1-based line or frame
//! number.

use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::exec::Exec;

use super::wire::{decode_frame, serialize};
use super::Multiplexer;

const BATCH: usize = 4096;

pub fn parse_symbol_line(line: &str, p: u32) -> Result<Vec<u32>> {
    line.split_whitespace()
        .enumerate()
        .map(|(index, tok)| {
            let value: u32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("not a symbol: {tok:?}")))?;
            if value >= p {
                return Err(Error::SymbolOutOfRange { index, value, p });
            }
            Ok(value)
        })
        .collect()
}

pub fn format_symbol_line(v: &[u32]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

/// Reads text frames (blank lines skipped) and writes binary frames.
/// Returns the number of frames written.
pub fn mux_stream<R: BufRead, W: Write>(
    mux: &Multiplexer,
    input: R,
    mut output: W,
    exec: Exec,
) -> Result<usize> {
    let p = mux.system().p();
    let mut written = 0;
    let mut batch: Vec<(usize, String)> = Vec::with_capacity(BATCH);
    let mut lines = input.lines().enumerate();
    loop {
        batch.clear();
        for (i, line) in lines.by_ref() {
            let line = line.map_err(io_err)?;
            if !line.trim().is_empty() {
                batch.push((i + 1, line));
                if batch.len() == BATCH {
                    break;
                }
            }
        }
        if batch.is_empty() {
            break;
        }
        let encoded = exec.map_slice(&batch, |(line_no, text)| {
            parse_symbol_line(text, p)
                .and_then(|v| mux.mux(&v))
                .map(|f| serialize(&f))
                .map_err(|e| e.at_line(*line_no))
        });
        for bytes in encoded {
            output.write_all(&bytes?).map_err(io_err)?;
            written += 1;
        }
    }
    output.flush().map_err(io_err)?;
    Ok(written)
}

/// Reads concatenated binary frames and writes one text line per frame.
/// Returns the number of frames decoded.
pub fn demux_stream<R: Read, W: Write>(
    mux: &Multiplexer,
    mut input: R,
    mut output: W,
    exec: Exec,
) -> Result<usize> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes).map_err(io_err)?;
    let mut frames = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let (frame, used) =
            decode_frame(&bytes[pos..]).map_err(|e| e.at_frame(frames.len() + 1))?;
        frames.push(frame);
        pos += used;
    }
    let decoded = exec.map(frames.len(), |i| {
        mux.demux(&frames[i]).map_err(|e| e.at_frame(i + 1))
    });
    for v in decoded {
        writeln!(output, "{}", format_symbol_line(&v?)).map_err(io_err)?;
    }
    output.flush().map_err(io_err)?;
    Ok(frames.len())
}
