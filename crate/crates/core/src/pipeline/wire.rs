//! Binary frame format, little-endian:
//!
//! ```text
//! "GDM1" | p: u16 | m: u8 | N: u16 | kind: u8 | modulus: m bytes | nu: u16
//!        | nu leaders, each m bytes of re then m bytes of im
//! ```

use crate::cyclotomic::CosetTable;
use crate::error::{Error, Result};
use crate::field::{ExtField, GaloisInt};
use crate::transform::Kind;

use super::{CompressedFrame, FrameHeader};

pub const MAGIC: [u8; 4] = *b"GDM1";

const FIXED_HEADER: usize = 4 + 2 + 1 + 2 + 1;

pub fn serialize(frame: &CompressedFrame) -> Vec<u8> {
    let h = &frame.header;
    let mut out = Vec::with_capacity(FIXED_HEADER + h.m + 2 + frame.leaders.len() * 2 * h.m);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&(h.p as u16).to_le_bytes());
    out.push(h.m as u8);
    out.extend_from_slice(&(h.n as u16).to_le_bytes());
    out.push(h.kind.wire_code());
    out.extend(h.modulus.iter().map(|&c| c as u8));
    out.extend_from_slice(&(frame.leaders.len() as u16).to_le_bytes());
    for z in &frame.leaders {
        out.extend_from_slice(&z.re.raw()[..h.m]);
        out.extend_from_slice(&z.im.raw()[..h.m]);
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).ok_or(Error::BadLength)?;
        let out = self.bytes.get(self.pos..end).ok_or(Error::BadLength)?;
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        let b = self.take(2)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }
}

/// Decodes one frame from the front of `bytes`, returning it with the
/// number of bytes consumed. Trailing bytes are left alone.
pub fn decode_frame(bytes: &[u8]) -> Result<(CompressedFrame, usize)> {
    if bytes.len() < MAGIC.len() {
        return Err(if MAGIC.starts_with(bytes) && !bytes.is_empty() {
            Error::BadLength
        } else {
            Error::BadMagic
        });
    }
    if bytes[..4] != MAGIC {
        return Err(Error::BadMagic);
    }
    let mut r = Reader { bytes, pos: 4 };
    let p = r.u16()? as u32;
    let m = r.u8()? as usize;
    let n = r.u16()? as usize;
    let code = r.u8()?;
    let kind = Kind::from_wire_code(code)
        .ok_or_else(|| Error::ParamMismatch(format!("unknown transform code {code}")))?;
    let modulus: Vec<u32> = r.take(m)?.iter().map(|&b| b as u32).collect();
    let nu = r.u16()? as usize;

    let ext = ExtField::new(p, m, Some(&modulus))
        .map_err(|e| Error::ParamMismatch(format!("header field: {e}")))?;
    let table = CosetTable::new(kind, n, p)
        .map_err(|e| Error::ParamMismatch(format!("header length: {e}")))?;
    if table.nu() != nu {
        return Err(Error::ParamMismatch(format!(
            "header announces {nu} coefficients, N = {n} needs {}",
            table.nu()
        )));
    }

    let body = r.take(nu * 2 * m)?;
    let mut leaders = Vec::with_capacity(nu);
    for chunk in body.chunks_exact(2 * m) {
        if let Some(&bad) = chunk.iter().find(|&&b| b as u32 >= p) {
            return Err(Error::BadCoefficient {
                value: bad as u32,
                p,
            });
        }
        let re = ext.from_coeffs(&chunk[..m].iter().map(|&b| b as u32).collect::<Vec<_>>())?;
        let im = ext.from_coeffs(&chunk[m..].iter().map(|&b| b as u32).collect::<Vec<_>>())?;
        leaders.push(GaloisInt { re, im });
    }
    Ok((
        CompressedFrame {
            header: FrameHeader {
                p,
                m,
                n,
                kind,
                modulus,
            },
            leaders,
        },
        r.pos,
    ))
}

/// Decodes exactly one frame; trailing bytes are a length error.
pub fn deserialize(bytes: &[u8]) -> Result<CompressedFrame> {
    let (frame, used) = decode_frame(bytes)?;
    if used != bytes.len() {
        return Err(Error::BadLength);
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::Multiplexer;
    use crate::system::GaloisSystem;

    fn example() -> CompressedFrame {
        let mux =
            Multiplexer::new(GaloisSystem::new(5, 1, 4, None).unwrap(), Kind::Hartley).unwrap();
        mux.mux(&[4, 0, 1, 2]).unwrap()
    }

    #[test]
    fn layout() {
        let bytes = serialize(&example());
        assert_eq!(
            bytes,
            vec![0x47, 0x44, 0x4D, 0x31, 5, 0, 1, 4, 0, 1, 0, 3, 0, 2, 0, 3, 4, 3, 0]
        );
        assert_eq!(deserialize(&bytes).unwrap(), example());
    }

    #[test]
    fn errors() {
        let bytes = serialize(&example());
        assert_eq!(deserialize(&[]), Err(Error::BadMagic));
        assert_eq!(deserialize(b"GDM2xxxxxx"), Err(Error::BadMagic));
        assert_eq!(
            deserialize(&bytes[..bytes.len() - 1]),
            Err(Error::BadLength)
        );
        assert_eq!(deserialize(&bytes[..6]), Err(Error::BadLength));
        let mut longer = bytes.clone();
        longer.push(0);
        assert_eq!(deserialize(&longer), Err(Error::BadLength));

        let mut wrong_nu = bytes.clone();
        wrong_nu[11] = 4;
        assert!(matches!(
            deserialize(&wrong_nu),
            Err(Error::ParamMismatch(_))
        ));
        let mut bad_kind = bytes.clone();
        bad_kind[9] = 7;
        assert!(matches!(
            deserialize(&bad_kind),
            Err(Error::ParamMismatch(_))
        ));
        let mut bad_coeff = bytes;
        bad_coeff[15] = 9;
        assert_eq!(
            deserialize(&bad_coeff),
            Err(Error::BadCoefficient { value: 9, p: 5 })
        );
    }

    #[test]
    fn stream_decoding() {
        let one = serialize(&example());
        let two = [one.clone(), one.clone()].concat();
        let (f, used) = decode_frame(&two).unwrap();
        assert_eq!(used, one.len());
        assert_eq!(f, example());
    }
}
