//! On-disk formats: the k-independent index file and the per-k graph files.
//!
//! All files start with the magic `CDBG`, a one-byte kind tag and a `u16`
//! format version. Multi-byte integers are little-endian; positions and
//! counts are 64-bit. Sections of the index file are length-prefixed so a
//! reader can skip what it does not know. Serialization is deterministic:
//! writing what was read yields the identical bytes.

use crate::bitvec::RankBitVector;
use crate::fm_index::{FmIndex, SaSamples};
use crate::graph::{ExplicitGraph, ExplicitNode, ImplicitGraph, ImplicitNode};
use crate::sequence_store::{Alphabet, TextMeta};
use crate::wavelet::WaveletTree;
use crate::{Error, PanIndex, Result};

pub const MAGIC: [u8; 4] = *b"CDBG";
pub const FORMAT_VERSION: u16 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Index,
    ImplicitGraph,
    ExplicitGraph,
}

impl FileKind {
    fn tag(self) -> u8 {
        match self {
            FileKind::Index => 0,
            FileKind::ImplicitGraph => 1,
            FileKind::ExplicitGraph => 2,
        }
    }

    fn from_tag(tag: u8) -> Result<FileKind> {
        match tag {
            0 => Ok(FileKind::Index),
            1 => Ok(FileKind::ImplicitGraph),
            2 => Ok(FileKind::ExplicitGraph),
            t => Err(Error::Format(format!("unknown file kind {t}"))),
        }
    }
}

/// Header fields shared by both graph file kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphHeader {
    pub k: usize,
    pub right_max: usize,
    pub left_max: usize,
    pub d: usize,
}

struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn new(kind: FileKind) -> Writer {
        let mut w = Writer { buf: Vec::new() };
        w.buf.extend_from_slice(&MAGIC);
        w.u8(kind.tag());
        w.u16(FORMAT_VERSION);
        w
    }

    fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    fn u16(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn usize64(&mut self, v: usize) {
        self.u64(v as u64);
    }

    fn varint(&mut self, mut v: u64) {
        loop {
            let mut byte = (v & 0x7f) as u8;
            v >>= 7;
            if v != 0 {
                byte |= 0x80;
            }
            self.buf.push(byte);
            if v == 0 {
                break;
            }
        }
    }

    fn bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }

    fn bitvector(&mut self, bv: &RankBitVector) {
        self.usize64(bv.len());
        for &w in bv.words() {
            self.u64(w);
        }
    }

    fn wavelet(&mut self, wt: &WaveletTree) {
        self.u32(wt.node_count() as u32);
        for bits in wt.node_bits() {
            self.bitvector(bits);
        }
    }

    /// Run `f` into a fresh length-prefixed section.
    fn section(&mut self, f: impl FnOnce(&mut Writer)) {
        let mut inner = Writer { buf: Vec::new() };
        f(&mut inner);
        self.usize64(inner.buf.len());
        self.buf.extend_from_slice(&inner.buf);
    }
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(data: &'a [u8], expect: FileKind) -> Result<Reader<'a>> {
        let mut r = Reader { data, pos: 0 };
        let magic = r.take(4)?;
        if magic != MAGIC {
            return Err(Error::Format("bad magic, not a CDBG file".into()));
        }
        let kind = FileKind::from_tag(r.u8()?)?;
        if kind != expect {
            return Err(Error::Format(format!(
                "wrong file kind: expected {expect:?}, found {kind:?}"
            )));
        }
        let version = r.u16()?;
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format version {version}"
            )));
        }
        Ok(r)
    }

    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        if self.pos + len > self.data.len() {
            return Err(Error::Format("truncated file".into()));
        }
        let s = &self.data[self.pos..self.pos + len];
        self.pos += len;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn usize64(&mut self) -> Result<usize> {
        Ok(self.u64()? as usize)
    }

    fn varint(&mut self) -> Result<u64> {
        let mut v = 0u64;
        let mut shift = 0u32;
        loop {
            let byte = self.u8()?;
            v |= u64::from(byte & 0x7f) << shift;
            if byte & 0x80 == 0 {
                return Ok(v);
            }
            shift += 7;
            if shift >= 64 {
                return Err(Error::Format("varint too long".into()));
            }
        }
    }

    fn bitvector(&mut self) -> Result<RankBitVector> {
        let len = self.usize64()?;
        let n_words = len.div_ceil(64);
        let mut words = Vec::with_capacity(n_words);
        for _ in 0..n_words {
            words.push(self.u64()?);
        }
        Ok(RankBitVector::from_words(len, words))
    }

    fn wavelet(&mut self, len: usize, sigma: u32) -> Result<WaveletTree> {
        let count = self.u32()? as usize;
        let mut bits = Vec::with_capacity(count);
        for _ in 0..count {
            bits.push(self.bitvector()?);
        }
        let mut iter = bits.into_iter();
        let wt = WaveletTree::from_node_bits(len, sigma, &mut iter)
            .ok_or_else(|| Error::Format("wavelet tree node count mismatch".into()))?;
        if iter.next().is_some() {
            return Err(Error::Format("trailing wavelet tree nodes".into()));
        }
        Ok(wt)
    }

    fn section(&mut self) -> Result<Reader<'a>> {
        let len = self.usize64()?;
        Ok(Reader {
            data: self.take(len)?,
            pos: 0,
        })
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.data.len() {
            return Err(Error::Format("trailing bytes".into()));
        }
        Ok(())
    }
}

/// Kind tag of a serialized file, for dispatch and diagnostics.
pub fn file_kind(data: &[u8]) -> Result<FileKind> {
    if data.len() < 5 || data[..4] != MAGIC {
        return Err(Error::Format("bad magic, not a CDBG file".into()));
    }
    FileKind::from_tag(data[4])
}

pub fn write_index(index: &PanIndex) -> Vec<u8> {
    let mut w = Writer::new(FileKind::Index);
    let (rate, marked, values) = index.fm.samples().parts();
    w.usize64(index.n());
    w.usize64(index.d());
    w.u16(index.fm.sigma() as u16);
    w.u32(rate);
    let table = index.text_meta.alphabet.raw_table();
    w.u16(table.len() as u16);
    w.bytes(table);

    w.section(|w| w.wavelet(index.fm.wavelet()));
    w.section(|w| {
        w.usize64(index.fm.c_array().len());
        for &v in index.fm.c_array() {
            w.usize64(v);
        }
    });
    w.section(|w| {
        w.bitvector(marked);
        w.usize64(values.len());
        for &v in values {
            w.usize64(v);
        }
    });
    w.section(|w| w.wavelet(&index.doc_wt));
    w.buf
}

pub fn read_index(data: &[u8]) -> Result<PanIndex> {
    let mut r = Reader::new(data, FileKind::Index)?;
    let n = r.usize64()?;
    let d = r.usize64()?;
    let sigma = r.u16()? as usize;
    let rate = r.u32()?;
    let table_len = r.u16()? as usize;
    if table_len != sigma {
        return Err(Error::Format("alphabet table length != sigma".into()));
    }
    let alphabet = Alphabet::from_raw_table(r.take(table_len)?.to_vec());

    let mut s = r.section()?;
    let wavelet = s.wavelet(n, sigma as u32)?;
    s.finish()?;

    let mut s = r.section()?;
    let c_len = s.usize64()?;
    if c_len != sigma + 1 {
        return Err(Error::Format("C-array length != sigma + 1".into()));
    }
    let mut c_array = Vec::with_capacity(c_len);
    for _ in 0..c_len {
        c_array.push(s.usize64()?);
    }
    s.finish()?;

    let mut s = r.section()?;
    let marked = s.bitvector()?;
    let value_count = s.usize64()?;
    let mut values = Vec::with_capacity(value_count);
    for _ in 0..value_count {
        values.push(s.usize64()?);
    }
    s.finish()?;
    let samples = SaSamples::from_parts(rate, marked, values);

    let mut s = r.section()?;
    let doc_wt = s.wavelet(n, d as u32)?;
    s.finish()?;
    r.finish()?;

    let fm = FmIndex::from_parts(wavelet, c_array, samples, sigma, d);
    Ok(PanIndex {
        text_meta: TextMeta { alphabet, n, d },
        fm,
        doc_wt,
    })
}

fn write_graph_header(w: &mut Writer, h: GraphHeader) {
    w.usize64(h.k);
    w.usize64(h.right_max);
    w.usize64(h.left_max);
    w.usize64(h.d);
}

fn read_graph_header(r: &mut Reader) -> Result<GraphHeader> {
    Ok(GraphHeader {
        k: r.usize64()?,
        right_max: r.usize64()?,
        left_max: r.usize64()?,
        d: r.usize64()?,
    })
}

pub fn write_implicit_graph(g: &ImplicitGraph) -> Vec<u8> {
    let mut w = Writer::new(FileKind::ImplicitGraph);
    write_graph_header(
        &mut w,
        GraphHeader {
            k: g.k(),
            right_max: g.right_max(),
            left_max: g.left_max(),
            d: g.d(),
        },
    );
    for node in g.nodes() {
        w.usize64(node.len);
        w.usize64(node.lb);
        w.usize64(node.size);
        w.usize64(node.suffix_lb);
    }
    w.buf
}

pub fn read_implicit_graph(data: &[u8]) -> Result<ImplicitGraph> {
    let mut r = Reader::new(data, FileKind::ImplicitGraph)?;
    let h = read_graph_header(&mut r)?;
    let total = h.right_max + h.left_max + h.d;
    let mut nodes = Vec::with_capacity(total);
    for _ in 0..total {
        nodes.push(ImplicitNode {
            len: r.usize64()?,
            lb: r.usize64()?,
            size: r.usize64()?,
            suffix_lb: r.usize64()?,
        });
    }
    r.finish()?;
    ImplicitGraph::from_parts(nodes, h.right_max, h.left_max, h.d, h.k)
}

pub fn write_explicit_graph(ex: &ExplicitGraph, g: &ImplicitGraph) -> Vec<u8> {
    let mut w = Writer::new(FileKind::ExplicitGraph);
    write_graph_header(
        &mut w,
        GraphHeader {
            k: g.k(),
            right_max: g.right_max(),
            left_max: g.left_max(),
            d: g.d(),
        },
    );
    for node in ex.nodes() {
        w.usize64(node.len);
        w.varint(node.pos_list.len() as u64);
        let mut prev = 0u64;
        for &p in &node.pos_list {
            w.varint(p as u64 - prev);
            prev = p as u64;
        }
        w.varint(node.adj_list.len() as u64);
        for &id in &node.adj_list {
            w.varint(id as u64);
        }
    }
    for &s in ex.start_nodes() {
        w.usize64(s);
    }
    w.buf
}

pub fn read_explicit_graph(data: &[u8]) -> Result<(GraphHeader, ExplicitGraph)> {
    let mut r = Reader::new(data, FileKind::ExplicitGraph)?;
    let h = read_graph_header(&mut r)?;
    let total = h.right_max + h.left_max + h.d;
    let mut nodes = Vec::with_capacity(total);
    for _ in 0..total {
        let len = r.usize64()?;
        let pos_count = r.varint()? as usize;
        let mut pos_list = Vec::with_capacity(pos_count);
        let mut prev = 0u64;
        for _ in 0..pos_count {
            prev += r.varint()?;
            pos_list.push(prev as usize);
        }
        let adj_count = r.varint()? as usize;
        let mut adj_list = Vec::with_capacity(adj_count);
        for _ in 0..adj_count {
            adj_list.push(r.varint()? as usize);
        }
        nodes.push(ExplicitNode {
            len,
            pos_list,
            adj_list,
        });
    }
    let mut start_nodes = Vec::with_capacity(h.d);
    for _ in 0..h.d {
        start_nodes.push(r.usize64()?);
    }
    r.finish()?;
    Ok((h, ExplicitGraph::from_parts(nodes, start_nodes)))
}
