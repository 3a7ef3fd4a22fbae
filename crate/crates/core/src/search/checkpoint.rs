//! HOTS checkpoint files.
//!
//! Layout (little-endian): magic `HOTS`, version u8, d u8, n u32, strategy
//! u8, fix_first_sign u8, prefix_bits u8, checkpoint_interval u64,
//! total_shards u64, shards_done u64, assignments_explored u64, has_incumbent
//! u8, incumbent count u64, witness length u32, witness as a HOT1 file. The
//! completed shards always form a prefix of the shard order.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{Progress, SearchSpec, Strategy};
use crate::error::{Error, Result};
use crate::tournament::Tournament;

pub const HOTS_MAGIC: &[u8; 4] = b"HOTS";
pub const HOTS_VERSION: u8 = 1;

#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub spec: SearchSpec,
    pub total_shards: u64,
    pub(crate) progress: Progress,
    pub witness: Option<Tournament>,
}

impl Checkpoint {
    pub fn shards_done(&self) -> u64 {
        self.progress.shards_done
    }

    pub fn incumbent(&self) -> Option<u64> {
        self.progress.best.map(|b| b.0)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(HOTS_MAGIC);
        out.push(HOTS_VERSION);
        out.push(self.spec.d as u8);
        out.extend_from_slice(&(self.spec.n as u32).to_le_bytes());
        out.push(self.spec.strategy.code());
        out.push(self.spec.fix_first_sign as u8);
        out.push(self.spec.prefix_bits as u8);
        out.extend_from_slice(&self.spec.checkpoint_interval.to_le_bytes());
        out.extend_from_slice(&self.total_shards.to_le_bytes());
        out.extend_from_slice(&self.progress.shards_done.to_le_bytes());
        out.extend_from_slice(&self.progress.explored.to_le_bytes());
        let best = self.progress.best;
        out.push(best.is_some() as u8);
        out.extend_from_slice(&best.map_or(0, |b| b.0).to_le_bytes());
        let witness = self.witness.as_ref().map(Tournament::to_hot1).unwrap_or_default();
        out.extend_from_slice(&(witness.len() as u32).to_le_bytes());
        out.extend_from_slice(&witness);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != HOTS_MAGIC {
            return Err(Error::Format("bad magic, expected HOTS".into()));
        }
        let version = r.u8()?;
        if version != HOTS_VERSION {
            return Err(Error::Format(format!(
                "checkpoint version {version} is not supported (expected {HOTS_VERSION})"
            )));
        }
        let d = r.u8()? as usize;
        let n = r.u32()? as usize;
        let strategy = Strategy::from_code(r.u8()?)
            .ok_or_else(|| Error::Format("unknown strategy code".into()))?;
        let fix_first_sign = match r.u8()? {
            0 => false,
            1 => true,
            _ => return Err(Error::Format("bad fix_first_sign flag".into())),
        };
        let prefix_bits = r.u8()? as u32;
        let checkpoint_interval = r.u64()?;
        let total_shards = r.u64()?;
        let shards_done = r.u64()?;
        let explored = r.u64()?;
        let has_best = r.u8()? == 1;
        let count = r.u64()?;
        let wlen = r.u32()? as usize;
        let witness_bytes = r.take(wlen)?;
        if r.pos != bytes.len() {
            return Err(Error::Format("trailing bytes in checkpoint".into()));
        }
        if shards_done > total_shards {
            return Err(Error::Format("checkpoint progress exceeds shard count".into()));
        }
        let witness = if has_best {
            let t = Tournament::from_hot1(witness_bytes)?;
            if t.d() != d || t.n() != n {
                return Err(Error::Format("checkpoint witness has the wrong shape".into()));
            }
            Some(t)
        } else {
            None
        };
        let best = witness.as_ref().map(|t| (count, t.words().first().copied().unwrap_or(0)));
        Ok(Self {
            spec: SearchSpec { d, n, strategy, fix_first_sign, checkpoint_interval, prefix_bits },
            total_shards,
            progress: Progress { shards_done, explored, best },
            witness,
        })
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Format("checkpoint truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Writes to a sibling temporary file and renames it over `path`.
pub fn save_checkpoint(path: impl AsRef<Path>, cp: &Checkpoint) -> Result<()> {
    let path = path.as_ref();
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&cp.to_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_checkpoint(path: impl AsRef<Path>) -> Result<Checkpoint> {
    Checkpoint::from_bytes(&fs::read(path)?)
}
