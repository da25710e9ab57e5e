fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");
    let out = std::path::Path::new(&crate_dir).join("include").join("spinchain.h");
    let config = cbindgen::Config::from_file(std::path::Path::new(&crate_dir).join("cbindgen.toml"))
        .unwrap_or_default();
    match cbindgen::Builder::new().with_config(config).with_crate(&crate_dir).generate() {
        Ok(bindings) => {
            bindings.write_to_file(out);
        }
        Err(e) => {
            // keep builds working even if header generation hiccups
            println!("cargo:warning=cbindgen failed: {e}");
        }
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
