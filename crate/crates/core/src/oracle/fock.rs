//! Jordan-Wigner fermion operators acting on 2^N amplitude vectors.
//!
//! Bit `j` of a basis index is the occupancy of site `j`; the string sign of
//! `c_j` counts occupied sites below `j`.

use num_complex::Complex64 as C64;

#[inline]
pub fn string_sign(state: usize, site: usize) -> f64 {
    if (state & ((1usize << site) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `c_j† v`.
pub fn create_site(v: &[C64], site: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); v.len()];
    let bit = 1usize << site;
    for (b, amp) in v.iter().enumerate() {
        if b & bit == 0 && *amp != C64::new(0.0, 0.0) {
            out[b | bit] += *amp * string_sign(b, site);
        }
    }
    out
}

/// `c_j v`.
pub fn annihilate_site(v: &[C64], site: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); v.len()];
    let bit = 1usize << site;
    for (b, amp) in v.iter().enumerate() {
        if b & bit != 0 && *amp != C64::new(0.0, 0.0) {
            out[b ^ bit] += *amp * string_sign(b, site);
        }
    }
    out
}

/// Plane-wave phases `e^{ikj}/√N` for `j = 0..N`.
fn phases(n: usize, k: f64, sign: f64) -> Vec<C64> {
    let norm = 1.0 / (n as f64).sqrt();
    (0..n).map(|j| C64::from_polar(norm, sign * k * j as f64)).collect()
}

/// `c_k† v` with `c_k† = N^{-1/2} Σ_j e^{ikj} c_j†`.
pub fn create_momentum(v: &[C64], n: usize, k: f64) -> Vec<C64> {
    let ph = phases(n, k, 1.0);
    let mut out = vec![C64::new(0.0, 0.0); v.len()];
    for (b, amp) in v.iter().enumerate() {
        if *amp == C64::new(0.0, 0.0) {
            continue;
        }
        let mut parity = 1.0;
        for (j, p) in ph.iter().enumerate() {
            let bit = 1usize << j;
            if b & bit == 0 {
                out[b | bit] += *amp * *p * parity;
            } else {
                parity = -parity;
            }
        }
    }
    out
}

/// `c_k v` with `c_k = N^{-1/2} Σ_j e^{−ikj} c_j`.
pub fn annihilate_momentum(v: &[C64], n: usize, k: f64) -> Vec<C64> {
    let ph = phases(n, k, -1.0);
    let mut out = vec![C64::new(0.0, 0.0); v.len()];
    for (b, amp) in v.iter().enumerate() {
        if *amp == C64::new(0.0, 0.0) {
            continue;
        }
        let mut parity = 1.0;
        for (j, p) in ph.iter().enumerate() {
            let bit = 1usize << j;
            if b & bit != 0 {
                out[b ^ bit] += *amp * *p * parity;
                parity = -parity;
            }
        }
    }
    out
}

pub fn vacuum(n: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); 1usize << n];
    v[0] = C64::new(1.0, 0.0);
    v
}
