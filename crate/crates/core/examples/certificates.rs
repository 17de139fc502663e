//! Arrow certificates and the on-disk result cache.

use ramsey_multiposet::certificate::{verify_certificate, ArrowCertificate, ResultCache};
use ramsey_multiposet::Multiposet;

fn main() -> ramsey_multiposet::Result<()> {
    let dir = tempfile::tempdir()?;
    let cache = ResultCache::open(dir.path())?;
    let chain = |n| Multiposet::chain(n, 1);
    for n in [5, 6, 5] {
        let (c, b, a) = (chain(n)?, chain(3)?, chain(2)?);
        let (cert, cached) = cache.arrow(&c, &b, &a, 2)?;
        println!(
            "chain{n}: holds={} cached={cached} verified={} key={}",
            cert.holds,
            verify_certificate(&cert)?,
            &ArrowCertificate::key(&c, &b, &a, 2)[..16]
        );
    }
    Ok(())
}
