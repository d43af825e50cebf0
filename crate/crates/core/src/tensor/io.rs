//! Binary image of a tensor. Little-endian throughout:
//!
//! ```text
//! "NRIT"  u32 version  u8 kind  u8 rank  u64 seed
//! rank x { u64 N  u64 n  u32 chi  u8 mode }
//! u32 crc32(header)
//! prod(n) x 8-byte cells
//! u32 crc32(state)
//! u64 update_count  u8 flags  u32 crc32(trailer)
//! ```
//!
//! The trailer is optional on load; without it the counter reads as zero and
//! the saturation flag is recomputed from the state.

use std::io::{self, BufReader, BufWriter, Read, Write};

use crc32fast::Hasher;

use super::element::Element;
use super::{
    check_cap, DimensionSpec, ElementKind, Mode, NriSpec, NriTensor, State, DEFAULT_MEMORY_CAP,
};
use crate::error::{Error, Result, Section};

pub const MAGIC: [u8; 4] = *b"NRIT";
pub const FORMAT_VERSION: u32 = 1;

const CHUNK_CELLS: usize = 1 << 16;

/// Writes the tensor image. Callers must not encode concurrently.
pub fn save<W: Write>(tensor: &NriTensor, sink: W) -> Result<()> {
    let mut w = BufWriter::new(sink);
    let spec = tensor.spec();

    let mut header = Vec::with_capacity(22 + 21 * spec.rank());
    header.extend_from_slice(&MAGIC);
    header.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    header.push(spec.element_kind.code());
    header.push(spec.rank() as u8);
    header.extend_from_slice(&spec.master_seed.to_le_bytes());
    for d in &spec.dims {
        header.extend_from_slice(&(d.component_range as u64).to_le_bytes());
        header.extend_from_slice(&(d.state_range as u64).to_le_bytes());
        header.extend_from_slice(&(d.chi as u32).to_le_bytes());
        header.push(match d.mode {
            Mode::Random => 0,
            Mode::Direct => 1,
        });
    }
    w.write_all(&header)?;
    w.write_all(&crc32fast::hash(&header).to_le_bytes())?;

    let mut hasher = Hasher::new();
    let mut buf = Vec::with_capacity(CHUNK_CELLS * 8);
    match tensor.raw_state() {
        State::Int(s) => {
            for chunk in s.chunks(CHUNK_CELLS) {
                buf.clear();
                chunk
                    .iter()
                    .for_each(|v| buf.extend_from_slice(&v.to_le_bytes()));
                hasher.update(&buf);
                w.write_all(&buf)?;
            }
        }
        State::Float(s) => {
            for chunk in s.chunks(CHUNK_CELLS) {
                buf.clear();
                chunk
                    .iter()
                    .for_each(|v| buf.extend_from_slice(&v.to_bits().to_le_bytes()));
                hasher.update(&buf);
                w.write_all(&buf)?;
            }
        }
    }
    w.write_all(&hasher.finalize().to_le_bytes())?;

    let mut trailer = Vec::with_capacity(9);
    trailer.extend_from_slice(&tensor.update_count().to_le_bytes());
    trailer.push(u8::from(tensor.is_saturated()));
    w.write_all(&trailer)?;
    w.write_all(&crc32fast::hash(&trailer).to_le_bytes())?;
    w.flush()?;
    Ok(())
}

/// Reads a tensor image under [`DEFAULT_MEMORY_CAP`].
pub fn load<R: Read>(source: R) -> Result<NriTensor> {
    load_with_cap(source, DEFAULT_MEMORY_CAP)
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8], section: &'static str) -> Result<()> {
    r.read_exact(buf).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => Error::Truncated(section),
        _ => Error::Io(e),
    })
}

struct Cursor<'a>(&'a [u8]);

impl Cursor<'_> {
    fn take<const N: usize>(&mut self) -> [u8; N] {
        let (head, rest) = self.0.split_at(N);
        self.0 = rest;
        head.try_into().unwrap()
    }
}

pub fn load_with_cap<R: Read>(source: R, cap: u64) -> Result<NriTensor> {
    let mut r = BufReader::new(source);

    let mut fixed = [0u8; 18];
    read_exact(&mut r, &mut fixed, "header")?;
    let mut c = Cursor(&fixed);
    let magic = c.take::<4>();
    if magic != MAGIC {
        return Err(Error::BadMagic(magic));
    }
    let version = u32::from_le_bytes(c.take());
    if version != FORMAT_VERSION {
        return Err(Error::Version(version));
    }
    let [kind_code] = c.take::<1>();
    let [rank] = c.take::<1>();
    let seed = u64::from_le_bytes(c.take());

    let mut dims_raw = vec![0u8; 21 * rank as usize];
    read_exact(&mut r, &mut dims_raw, "header")?;
    let mut crc = [0u8; 4];
    read_exact(&mut r, &mut crc, "header checksum")?;
    let mut hasher = Hasher::new();
    hasher.update(&fixed);
    hasher.update(&dims_raw);
    if hasher.finalize() != u32::from_le_bytes(crc) {
        return Err(Error::Checksum(Section::Header));
    }

    let kind = ElementKind::from_code(kind_code)
        .ok_or_else(|| Error::Malformed(format!("unknown element kind {kind_code}")))?;
    let mut c = Cursor(&dims_raw);
    let mut dims = Vec::with_capacity(rank as usize);
    for _ in 0..rank {
        let big = u64::from_le_bytes(c.take());
        let small = u64::from_le_bytes(c.take());
        let chi = u32::from_le_bytes(c.take());
        let [mode] = c.take::<1>();
        let to_usize = |x: u64| {
            usize::try_from(x).map_err(|_| Error::Malformed(format!("range {x} too large")))
        };
        dims.push(DimensionSpec {
            component_range: to_usize(big)?,
            state_range: to_usize(small)?,
            chi: chi as usize,
            mode: match mode {
                0 => Mode::Random,
                1 => Mode::Direct,
                m => return Err(Error::Malformed(format!("unknown dimension mode {m}"))),
            },
        });
    }
    let spec = NriSpec {
        dims,
        master_seed: seed,
        element_kind: kind,
    };
    spec.validate()
        .map_err(|e| Error::Malformed(e.to_string()))?;
    check_cap(&spec, cap)?;

    let len = spec.state_cells() as usize;
    let mut hasher = Hasher::new();
    let mut buf = vec![0u8; CHUNK_CELLS * 8];
    let state = match kind {
        ElementKind::Int64 => State::Int(read_cells(
            &mut r,
            len,
            &mut buf,
            &mut hasher,
            i64::from_le_bytes,
        )?),
        ElementKind::Float64 => {
            State::Float(read_cells(&mut r, len, &mut buf, &mut hasher, |b| {
                f64::from_bits(u64::from_le_bytes(b))
            })?)
        }
    };
    read_exact(&mut r, &mut crc, "state checksum")?;
    if hasher.finalize() != u32::from_le_bytes(crc) {
        return Err(Error::Checksum(Section::State));
    }

    let mut trailer = [0u8; 9];
    let (update_count, saturated) = match read_trailer(&mut r, &mut trailer)? {
        false => (0, recompute_saturation(&state)),
        true => {
            read_exact(&mut r, &mut crc, "trailer checksum")?;
            if crc32fast::hash(&trailer) != u32::from_le_bytes(crc) {
                return Err(Error::Checksum(Section::Trailer));
            }
            let mut c = Cursor(&trailer);
            let count = u64::from_le_bytes(c.take());
            let [flags] = c.take::<1>();
            (count, flags & 1 != 0)
        }
    };

    NriTensor::from_parts(spec, state, update_count, saturated, cap)
}

fn read_cells<R: Read, T>(
    r: &mut R,
    len: usize,
    buf: &mut [u8],
    hasher: &mut Hasher,
    decode: impl Fn([u8; 8]) -> T,
) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(len);
    let mut remaining = len;
    while remaining > 0 {
        let cells = remaining.min(CHUNK_CELLS);
        let bytes = &mut buf[..cells * 8];
        read_exact(r, bytes, "state")?;
        hasher.update(bytes);
        out.extend(bytes.chunks_exact(8).map(|b| decode(b.try_into().unwrap())));
        remaining -= cells;
    }
    Ok(out)
}

/// Reads the trailer if present. A clean end of input before it is allowed.
fn read_trailer<R: Read>(r: &mut R, trailer: &mut [u8; 9]) -> Result<bool> {
    let mut got = 0;
    while got < trailer.len() {
        match r.read(&mut trailer[got..]) {
            Ok(0) if got == 0 => return Ok(false),
            Ok(0) => return Err(Error::Truncated("trailer")),
            Ok(k) => got += k,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(Error::Io(e)),
        }
    }
    Ok(true)
}

fn recompute_saturation(state: &State) -> bool {
    match state {
        State::Int(s) => s.iter().any(|v| v.saturated()),
        State::Float(s) => s.iter().any(|v| v.saturated()),
    }
}
