fn main() {
    // ndarray-linalg is built without a bundled backend; LAPACK symbols come
    // from the system OpenBLAS.
    println!("cargo:rustc-link-lib=dylib=openblas");
}
