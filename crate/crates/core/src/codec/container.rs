//! The `.sic` container.
//!
//! All fields little-endian:
//!
//! ```text
//! magic        4  b"SIC1"
//! version      u16
//! width        u32
//! height       u32
//! block_size   u16
//! dictionary   u8   (1 = cosine + hats, 2 = cosine + cubics)
//! target_psnr  f64
//! then, per block in row-major block order:
//!   count      u16
//!   count x (address u32 = row * n + col, coefficient f64)
//! ```

use crate::dictionary::{AtomAddress, DictionaryId};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"SIC1";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 4 + 2 + 4 + 4 + 2 + 1 + 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Header {
    pub width: usize,
    pub height: usize,
    pub block_size: usize,
    pub dictionary: DictionaryId,
    pub target_psnr: f64,
}

impl Header {
    pub fn blocks_across(&self) -> usize {
        self.width / self.block_size
    }

    pub fn blocks_down(&self) -> usize {
        self.height / self.block_size
    }

    pub fn block_count(&self) -> usize {
        self.blocks_across() * self.blocks_down()
    }
}

/// Selected atoms and coefficients for one block.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseBlock {
    pub entries: Vec<(AtomAddress, f64)>,
}

impl SparseBlock {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncodedImage {
    pub header: Header,
    /// Row-major block order.
    pub blocks: Vec<SparseBlock>,
}

impl EncodedImage {
    pub fn total_atoms(&self) -> usize {
        self.blocks.iter().map(SparseBlock::len).sum()
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let h = &self.header;
        let narrow = |v: usize, what: &str, max: usize| {
            if v > max {
                Err(Error::Config(format!("{what} {v} does not fit the container")))
            } else {
                Ok(v)
            }
        };
        let n = h.dictionary.base_len(h.block_size);
        let mut out = Vec::with_capacity(HEADER_LEN + self.blocks.len() * 2 + self.total_atoms() * 12);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(narrow(h.width, "width", u32::MAX as usize)? as u32).to_le_bytes());
        out.extend_from_slice(&(narrow(h.height, "height", u32::MAX as usize)? as u32).to_le_bytes());
        out.extend_from_slice(&(narrow(h.block_size, "block size", u16::MAX as usize)? as u16).to_le_bytes());
        out.push(h.dictionary.code());
        out.extend_from_slice(&h.target_psnr.to_le_bytes());
        for block in &self.blocks {
            let count = narrow(block.len(), "entry count", u16::MAX as usize)?;
            out.extend_from_slice(&(count as u16).to_le_bytes());
            for &(addr, coeff) in &block.entries {
                let flat = narrow(addr.row * n + addr.col, "atom address", u32::MAX as usize)?;
                out.extend_from_slice(&(flat as u32).to_le_bytes());
                out.extend_from_slice(&coeff.to_le_bytes());
            }
        }
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4, "magic")? != MAGIC {
            return Err(r.corrupt_at(0, "bad magic"));
        }
        let version = r.u16("version")?;
        if version != VERSION {
            return Err(r.corrupt_at(4, &format!("unsupported version {version}")));
        }
        let width = r.u32("width")? as usize;
        let height = r.u32("height")? as usize;
        let block_size = r.u16("block size")? as usize;
        let code = r.u8("dictionary id")?;
        let dictionary = DictionaryId::from_code(code)
            .ok_or_else(|| r.corrupt_at(r.pos - 1, &format!("unknown dictionary id {code}")))?;
        let target_psnr = r.f64("target PSNR")?;
        if block_size == 0 || !width.is_multiple_of(block_size) || !height.is_multiple_of(block_size) {
            return Err(r.corrupt_at(
                10,
                &format!("{width}x{height} image is not tiled by {block_size}-pixel blocks"),
            ));
        }
        let header = Header {
            width,
            height,
            block_size,
            dictionary,
            target_psnr,
        };
        let n = dictionary.base_len(block_size);
        let mut blocks = Vec::with_capacity(header.block_count());
        for _ in 0..header.block_count() {
            let count = r.u16("entry count")? as usize;
            let mut entries = Vec::with_capacity(count);
            for _ in 0..count {
                let at = r.pos;
                let flat = r.u32("atom address")? as usize;
                if flat >= n * n {
                    return Err(r.corrupt_at(at, &format!("atom address {flat} out of range")));
                }
                let coeff = r.f64("coefficient")?;
                entries.push((AtomAddress::new(flat / n, flat % n), coeff));
            }
            blocks.push(SparseBlock { entries });
        }
        if r.pos != bytes.len() {
            return Err(r.corrupt_at(r.pos, "trailing bytes"));
        }
        Ok(EncodedImage { header, blocks })
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn corrupt_at(&self, offset: usize, reason: &str) -> Error {
        Error::CorruptContainer {
            offset,
            reason: reason.to_string(),
        }
    }

    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        let end = self.pos + len;
        if end > self.bytes.len() {
            return Err(self.corrupt_at(self.pos, &format!("truncated while reading {what}")));
        }
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u16(&mut self, what: &str) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().unwrap()))
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}
