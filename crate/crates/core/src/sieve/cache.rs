//! Binary prime cache: `"PRIM"`, u32 version (= 1), u64 count, then `count`
//! u64 primes in ascending order, all little-endian.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"PRIM";
const VERSION: u32 = 1;

pub fn write_prime_cache(path: &Path, primes: &[u64]) -> Result<()> {
    if primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::PrimeCache("primes are not strictly increasing".into()));
    }
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(primes.len() as u64).to_le_bytes())?;
    for p in primes {
        w.write_all(&p.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_prime_cache(path: &Path) -> Result<Vec<u64>> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::PrimeCache(format!("bad magic {magic:?}")));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let version = u32::from_le_bytes(b4);
    if version != VERSION {
        return Err(Error::PrimeCache(format!("unsupported version {version}")));
    }
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let count = u64::from_le_bytes(b8);
    let mut primes = Vec::with_capacity(count.min(1 << 28) as usize);
    for _ in 0..count {
        r.read_exact(&mut b8)
            .map_err(|_| Error::PrimeCache(format!("truncated after {} of {count} primes", primes.len())))?;
        let p = u64::from_le_bytes(b8);
        if primes.last().is_some_and(|&q| q >= p) {
            return Err(Error::PrimeCache(format!("not ascending at index {}", primes.len())));
        }
        primes.push(p);
    }
    Ok(primes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::base_primes;

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.bin");
        let primes = base_primes(100_000);
        write_prime_cache(&path, &primes).unwrap();
        assert_eq!(read_prime_cache(&path).unwrap(), primes);
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(&bytes[..4], b"PRIM");
        assert_eq!(bytes.len(), 16 + 8 * primes.len());
    }

    fn write_raw(path: &Path, magic: &[u8], version: u32, values: &[u64]) {
        let mut b = magic.to_vec();
        b.extend_from_slice(&version.to_le_bytes());
        b.extend_from_slice(&(values.len() as u64).to_le_bytes());
        for v in values {
            b.extend_from_slice(&v.to_le_bytes());
        }
        std::fs::write(path, b).unwrap();
    }

    #[test]
    fn rejects_bad_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.bin");
        write_raw(&path, b"PRIX", 1, &[2, 3]);
        assert!(matches!(read_prime_cache(&path), Err(Error::PrimeCache(_))));
        write_raw(&path, b"PRIM", 2, &[2, 3]);
        assert!(matches!(read_prime_cache(&path), Err(Error::PrimeCache(_))));
        write_raw(&path, b"PRIM", 1, &[2, 5, 3]);
        assert!(matches!(read_prime_cache(&path), Err(Error::PrimeCache(_))));
        write_raw(&path, b"PRIM", 1, &[2, 3]);
        let mut bytes = std::fs::read(&path).unwrap();
        bytes.truncate(bytes.len() - 4);
        std::fs::write(&path, bytes).unwrap();
        assert!(matches!(read_prime_cache(&path), Err(Error::PrimeCache(_))));
        assert!(write_prime_cache(&path, &[3, 2]).is_err());
    }
}
