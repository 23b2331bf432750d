//! Input handling: FASTA ingestion, alphabet normalisation and the
//! concatenated pan-genome text.
//!
//! The concatenation is `S = S1 # S2 # ... # Sd $` where `$` (code 0) and
//! `#` (code 1) are synthetic codes that no input byte can map to, `$` is
//! the unique final sentinel and one `#` terminates each of the first `d-1`
//! sequences. All remaining characters get dense codes in raw byte order, so
//! the code order is `$ < # < c1 < c2 < ...`.

use std::io::BufRead;

use crate::{Error, Result};

/// Dense code of the sentinel `$`.
pub const SENTINEL: u8 = 0;
/// Dense code of the sequence separator `#`.
pub const SEPARATOR: u8 = 1;
/// Smallest code assigned to a real input character.
pub const FIRST_CHAR_CODE: u8 = 2;

/// Mapping between raw input bytes and dense codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    to_code: [u8; 256],
    to_raw: Vec<u8>,
}

const NO_CODE: u8 = u8::MAX;

impl Alphabet {
    /// Build from the set of raw bytes used by the input sequences.
    pub fn from_used_bytes(used: &[bool; 256]) -> Alphabet {
        let mut to_code = [NO_CODE; 256];
        let mut to_raw = vec![b'$', b'#'];
        for (b, &u) in used.iter().enumerate() {
            if u {
                to_code[b] = to_raw.len() as u8;
                to_raw.push(b as u8);
            }
        }
        Alphabet { to_code, to_raw }
    }

    /// Rebuild from the serialized code -> raw table (index 0 and 1 are the
    /// synthetic sentinel and separator).
    pub fn from_raw_table(to_raw: Vec<u8>) -> Alphabet {
        let mut to_code = [NO_CODE; 256];
        for (code, &raw) in to_raw.iter().enumerate().skip(2) {
            to_code[raw as usize] = code as u8;
        }
        Alphabet { to_code, to_raw }
    }

    /// Alphabet size including sentinel and separator codes.
    pub fn sigma(&self) -> usize {
        self.to_raw.len()
    }

    pub fn encode(&self, raw: u8) -> Option<u8> {
        let c = self.to_code[raw.to_ascii_uppercase() as usize];
        (c != NO_CODE).then_some(c)
    }

    /// Display byte for a code; sentinel and separator render as `$` / `#`.
    pub fn decode(&self, code: u8) -> u8 {
        self.to_raw[code as usize]
    }

    /// Encode a whole pattern, uppercasing as ingestion does. `None` if any
    /// byte is unknown to the alphabet.
    pub fn encode_seq(&self, raw: &[u8]) -> Option<Vec<u8>> {
        raw.iter().map(|&b| self.encode(b)).collect()
    }

    pub fn raw_table(&self) -> &[u8] {
        &self.to_raw
    }
}

/// The ingested input sequences, normalised but not yet concatenated.
#[derive(Debug, Clone)]
pub struct SequenceStore {
    sequences: Vec<(String, Vec<u8>)>,
}

impl SequenceStore {
    /// Validate and wrap `(name, data)` records. Data must be non-empty
    /// ASCII letters; lowercase is uppercased.
    pub fn new(sequences: Vec<(String, Vec<u8>)>) -> Result<SequenceStore> {
        if sequences.is_empty() {
            return Err(Error::Ingest {
                record: "<input>".into(),
                reason: "no sequences".into(),
            });
        }
        let mut normalised = Vec::with_capacity(sequences.len());
        for (name, data) in sequences {
            if data.is_empty() {
                return Err(Error::Ingest {
                    record: name,
                    reason: "empty record body".into(),
                });
            }
            if let Some(&bad) = data.iter().find(|b| !b.is_ascii_alphabetic()) {
                return Err(Error::Ingest {
                    record: name,
                    reason: format!("invalid character 0x{bad:02x} in record body"),
                });
            }
            let upper: Vec<u8> = data.iter().map(|b| b.to_ascii_uppercase()).collect();
            normalised.push((name, upper));
        }
        Ok(SequenceStore {
            sequences: normalised,
        })
    }

    /// Parse FASTA: lines starting with `>` begin a record, body lines are
    /// joined with whitespace stripped.
    ///
    /// # Example
    ///
    /// ```
    /// use cdbg::sequence_store::SequenceStore;
    ///
    /// let store = SequenceStore::from_fasta(&b">a\nACG\n>b\nac gt\n"[..]).unwrap();
    /// assert_eq!(store.d(), 2);
    /// assert_eq!(store.sequences()[1].1, b"ACGT");
    /// assert_eq!(store.concatenate().to_display(), b"ACG#ACGT$");
    /// ```
    pub fn from_fasta(input: impl BufRead) -> Result<SequenceStore> {
        let mut records: Vec<(String, Vec<u8>)> = Vec::new();
        for line in input.lines() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(header) = trimmed.strip_prefix('>') {
                let name = header
                    .split_whitespace()
                    .next()
                    .unwrap_or_default()
                    .to_string();
                records.push((name, Vec::new()));
            } else {
                match records.last_mut() {
                    Some((_, body)) => {
                        body.extend(trimmed.bytes().filter(|b| !b.is_ascii_whitespace()))
                    }
                    None => {
                        return Err(Error::Ingest {
                            record: "<input>".into(),
                            reason: "sequence data before first FASTA header".into(),
                        })
                    }
                }
            }
        }
        if records.is_empty() {
            return Err(Error::Ingest {
                record: "<input>".into(),
                reason: "empty FASTA input".into(),
            });
        }
        SequenceStore::new(records)
    }

    pub fn d(&self) -> usize {
        self.sequences.len()
    }

    pub fn sequences(&self) -> &[(String, Vec<u8>)] {
        &self.sequences
    }

    /// Concatenate into the dense-coded text `S1 # S2 # ... # Sd $`.
    pub fn concatenate(&self) -> Text {
        let mut used = [false; 256];
        for (_, data) in &self.sequences {
            for &b in data {
                used[b as usize] = true;
            }
        }
        let alphabet = Alphabet::from_used_bytes(&used);

        let total: usize = self.sequences.iter().map(|(_, s)| s.len()).sum();
        let d = self.d();
        let mut codes = Vec::with_capacity(total + d);
        let mut doc_ends = Vec::with_capacity(d);
        for (j, (_, data)) in self.sequences.iter().enumerate() {
            for &b in data {
                codes.push(alphabet.encode(b).expect("validated at ingestion"));
            }
            codes.push(if j + 1 == d { SENTINEL } else { SEPARATOR });
            doc_ends.push(codes.len());
        }
        Text {
            codes,
            alphabet,
            doc_ends,
        }
    }
}

/// Concatenated text over dense codes. Position `n` (1-based) holds the
/// sentinel; `doc_ends[j-1]` is the position of the terminator of sequence
/// `j`.
#[derive(Debug, Clone)]
pub struct Text {
    codes: Vec<u8>,
    alphabet: Alphabet,
    doc_ends: Vec<usize>,
}

/// The parts of a [`Text`] that queries and serialization need once the
/// codes themselves live inside the FM-index.
#[derive(Debug, Clone)]
pub struct TextMeta {
    pub alphabet: Alphabet,
    pub n: usize,
    pub d: usize,
}

impl Text {
    pub fn n(&self) -> usize {
        self.codes.len()
    }

    pub fn d(&self) -> usize {
        self.doc_ends.len()
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.sigma()
    }

    pub fn codes(&self) -> &[u8] {
        &self.codes
    }

    /// Code at 1-based position `p`.
    pub fn code_at(&self, p: usize) -> u8 {
        self.codes[p - 1]
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn doc_ends(&self) -> &[usize] {
        &self.doc_ends
    }

    pub fn meta(&self) -> TextMeta {
        TextMeta {
            alphabet: self.alphabet.clone(),
            n: self.n(),
            d: self.d(),
        }
    }

    /// Sequence number (1-based) owning 1-based position `p`; a terminator
    /// belongs to the sequence it ends.
    pub fn doc_of_pos(&self, p: usize) -> usize {
        debug_assert!(p >= 1 && p <= self.n());
        self.doc_ends.partition_point(|&e| e < p) + 1
    }

    /// Display form of the text, e.g. `ACG#ACT$`.
    pub fn to_display(&self) -> Vec<u8> {
        self.codes
            .iter()
            .map(|&c| self.alphabet.decode(c))
            .collect()
    }

    /// Split the decoded text back into the ingested sequences.
    pub fn split_sequences(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::with_capacity(self.d());
        let mut start = 1;
        for &end in &self.doc_ends {
            out.push(
                (start..=end)
                    .map(|p| self.alphabet.decode(self.code_at(p)))
                    .collect(),
            );
            start = end + 1;
        }
        out
    }
}

/// Convenience for tests and examples: build a [`Text`] straight from raw
/// sequences.
pub fn text_from_sequences(seqs: &[&[u8]]) -> Result<Text> {
    let records = seqs
        .iter()
        .enumerate()
        .map(|(i, s)| (format!("s{}", i + 1), s.to_vec()))
        .collect();
    Ok(SequenceStore::new(records)?.concatenate())
}
