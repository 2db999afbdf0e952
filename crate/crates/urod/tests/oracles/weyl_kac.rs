//! Level-k integrable sl(2) characters at z = 1 from the Weyl–Kac formula:
//! q^{-h} χ(L_{l,k}) = Σ_n (l+1+2(k+2)n) q^{(k+2)n² + (l+1)n} / (q)_∞³.

fn inv_pochhammer_cubed(order: usize) -> Vec<i128> {
    let mut c = vec![0i128; order + 1];
    c[0] = 1;
    for _ in 0..3 {
        for j in 1..=order {
            for i in j..=order {
                c[i] += c[i - j];
            }
        }
    }
    c
}

/// Coefficients of the tail (prefix q^{l(l+2)/(4(k+2))} removed) up to `order`.
pub fn tail(l: i64, k: i64, order: usize) -> Vec<i128> {
    let mut num = vec![0i128; order + 1];
    let span = order as i64 + 2;
    for n in -span..=span {
        let e = (k + 2) * n * n + (l + 1) * n;
        if e >= 0 && (e as usize) <= order {
            num[e as usize] += (l + 1 + 2 * (k + 2) * n) as i128;
        }
    }
    let den = inv_pochhammer_cubed(order);
    let mut out = vec![0i128; order + 1];
    for (i, a) in num.iter().enumerate() {
        for (j, b) in den.iter().enumerate().take(order + 1 - i) {
            out[i + j] += a * b;
        }
    }
    out
}
