//! Build F_343 = F_7[x]/(f), find its generator and discrete-log table,
//! and round-trip the table through the on-disk cache.

use cyclosum::{FieldSpec, IndexTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldSpec::new(7, 3, 3)?;
    println!("q = {} = {}^{}", f.q(), f.p(), f.r());
    println!("modulus (constant term first): {:?}", f.modulus().unwrap_or(&[]));
    let gamma = f.gamma();
    println!("generator gamma = {gamma} = {:?}", f.coeffs(gamma));

    let x = f.from_coeffs(&[3, 1])?; // x + 3
    let y = f.from_coeffs(&[0, 0, 2])?; // 2x^2
    println!("(x + 3) * 2x^2 = {:?}", f.coeffs(f.mul(x, y)));
    println!("(x + 3)^342 = {}", f.pow(x, f.q() - 1));

    let table = IndexTable::build(&f);
    let minus_one = f.from_int(-1);
    println!("ind(-1) = {}, ind(2) = {}", table.ind(minus_one)?, table.ind(f.from_int(2))?);

    let dir = std::env::temp_dir().join("cyclosum-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join(IndexTable::cache_file_name(&f));
    table.write_cache(&f, &path)?;
    let loaded = IndexTable::load_cache(&f, &path)?;
    assert_eq!(loaded.ind(x)?, table.ind(x)?);
    println!("cache round trip ok: {}", path.display());
    Ok(())
}
