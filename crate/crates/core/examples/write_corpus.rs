//! Writes the bundled corpus as `.sgp` files into the given directory.

use std::{env, fs, path::PathBuf};

use hbar::{corpus, io::format_sgp};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    fs::create_dir_all(&dir)?;
    for (name, s) in corpus::semigroups() {
        fs::write(dir.join(format!("{name}.sgp")), format_sgp(&s, Some(name)))?;
    }
    Ok(())
}
