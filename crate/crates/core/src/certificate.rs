//! Arrow certificates and a directory cache of them.
//!
//! All three structures are replaced by their canonical representatives
//! before solving, so a certificate (and its counterexample indices into
//! `hom(A, C)`) does not depend on how the input was labeled.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::canonical_structure;
use crate::error::{Error, Result};
use crate::io::{structure_from_file, structure_to_file, StructureFile};
use crate::multiposet::Multiposet;
use crate::ramsey::{arrow_check, verify_arrow_counterexample, Coloring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedStructure {
    pub canonical: String,
    pub structure: StructureFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowCertificate {
    pub a: CertifiedStructure,
    pub b: CertifiedStructure,
    pub c: CertifiedStructure,
    pub k: usize,
    pub holds: bool,
    /// Colors `1..=k`, indexed by `hom(A, C)` in enumeration order.
    pub counterexample: Option<Vec<u8>>,
    pub hom_ac: usize,
    pub hom_bc: usize,
    pub hom_ab: usize,
}

fn certify(x: &Multiposet) -> (Multiposet, CertifiedStructure) {
    let (rep, canon) = canonical_structure(x);
    let cs = CertifiedStructure { canonical: canon.hex(), structure: structure_to_file(&rep) };
    (rep, cs)
}

impl ArrowCertificate {
    pub fn compute(c: &Multiposet, b: &Multiposet, a: &Multiposet, k: usize) -> Result<Self> {
        let (c, cc) = certify(c);
        let (b, cb) = certify(b);
        let (a, ca) = certify(a);
        let r = arrow_check(&c, &b, &a, k)?;
        Ok(Self {
            a: ca,
            b: cb,
            c: cc,
            k,
            holds: r.holds,
            counterexample: r.counterexample.map(|col| col.colors),
            hom_ac: r.hom_ac,
            hom_bc: r.hom_bc,
            hom_ab: r.hom_ab,
        })
    }

    /// Digest of the instance: canonical forms of `A`, `B`, `C` and `k`.
    pub fn key(c: &Multiposet, b: &Multiposet, a: &Multiposet, k: usize) -> String {
        let mut h = Sha256::new();
        h.update(b"arrow\0");
        for x in [a, b, c] {
            let canon = crate::canon::canonical_form(x);
            h.update((canon.bytes.len() as u64).to_le_bytes());
            h.update(&canon.bytes);
        }
        h.update((k as u64).to_le_bytes());
        hex::encode(h.finalize())
    }

    pub fn structures(&self) -> Result<(Multiposet, Multiposet, Multiposet)> {
        let load = |s: &CertifiedStructure| structure_from_file(&s.structure, false);
        Ok((load(&self.c)?, load(&self.b)?, load(&self.a)?))
    }
}

/// Re-checks a certificate from scratch. A negative verdict is confirmed
/// by the independent counterexample checker; a positive one by solving
/// again, since exhaustion is its only certificate.
pub fn verify_certificate(cert: &ArrowCertificate) -> Result<bool> {
    let (c, b, a) = cert.structures()?;
    for (x, s) in [(&a, &cert.a), (&b, &cert.b), (&c, &cert.c)] {
        let (rep, canon) = canonical_structure(x);
        if canon.hex() != s.canonical || &rep != x {
            return Ok(false);
        }
    }
    match (&cert.counterexample, cert.holds) {
        (Some(colors), false) => {
            let col = Coloring::new(cert.k, colors.clone())?;
            verify_arrow_counterexample(&c, &b, &a, cert.k, &col)
        }
        (None, true) => Ok(arrow_check(&c, &b, &a, cert.k)?.holds),
        _ => Ok(false),
    }
}

/// One JSON certificate per instance digest. Writes go to a temporary file
/// in the same directory and are renamed into place.
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Self { dir: dir.as_ref().to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Result<Option<ArrowCertificate>> {
        match fs::read_to_string(self.path(key)) {
            Ok(text) => Ok(Some(serde_json::from_str(&text)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::Io(e)),
        }
    }

    pub fn put(&self, key: &str, cert: &ArrowCertificate) -> Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(&mut tmp, cert)?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path(key)).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }

    /// Cached certificate for the instance, computing and storing it on a
    /// miss. The flag says whether it came from the cache.
    pub fn arrow(&self, c: &Multiposet, b: &Multiposet, a: &Multiposet, k: usize) -> Result<(ArrowCertificate, bool)> {
        let key = ArrowCertificate::key(c, b, a, k);
        if let Some(cert) = self.get(&key)? {
            return Ok((cert, true));
        }
        let cert = ArrowCertificate::compute(c, b, a, k)?;
        self.put(&key, &cert)?;
        Ok((cert, false))
    }
}
