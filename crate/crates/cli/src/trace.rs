//! CSV boundary traces.

use std::f64::consts::TAU;
use std::io::{self, Write};

use num_complex::Complex64;

use xdisc_core::disc::Disc;

fn angle(k: usize, n: usize) -> f64 {
    TAU * k as f64 / n as f64
}

/// `(θ₁, θ₂, Re s, Im s, Re p, Im p)` for `(e^{iθ₁} + e^{iθ₂}, e^{i(θ₁+θ₂)})`
/// over an `n × n` grid of the torus.
pub fn shilov_g2(n: usize, out: &mut impl Write) -> io::Result<usize> {
    writeln!(out, "theta1,theta2,re_s,im_s,re_p,im_p")?;
    for i in 0..n {
        for j in 0..n {
            let (t1, t2) = (angle(i, n), angle(j, n));
            let (z, w) = (Complex64::from_polar(1.0, t1), Complex64::from_polar(1.0, t2));
            let (s, p) = (z + w, z * w);
            writeln!(out, "{t1},{t2},{},{},{},{}", s.re, s.im, p.re, p.im)?;
        }
    }
    Ok(n * n)
}

/// Points `(x̄₂x₃, x₂, x₃)` of the distinguished boundary of the tetrablock
/// with `x₃ = e^{iθ}` and `x₂ = r e^{iψ}`, over an `n × n` grid of `(θ, ψ)`.
pub fn tetra_boundary(n: usize, r: f64, out: &mut impl Write) -> io::Result<usize> {
    writeln!(out, "theta,psi,re_x1,im_x1,re_x2,im_x2,re_x3,im_x3")?;
    for i in 0..n {
        for j in 0..n {
            let (t, psi) = (angle(i, n), angle(j, n));
            let x3 = Complex64::from_polar(1.0, t);
            let x2 = Complex64::from_polar(r, psi);
            let x1 = x2.conj() * x3;
            writeln!(out, "{t},{psi},{},{},{},{},{},{}", x1.re, x1.im, x2.re, x2.im, x3.re, x3.im)?;
        }
    }
    Ok(n * n)
}

/// `φ(e^{iθ})` at `n` equispaced angles, one `re_k, im_k` pair per component.
pub fn family_orbit(f: &Disc, n: usize, out: &mut impl Write) -> io::Result<usize> {
    let dim = f.components().len();
    let mut header = vec!["theta".to_string()];
    for k in 1..=dim {
        header.push(format!("re_{k}"));
        header.push(format!("im_{k}"));
    }
    writeln!(out, "{}", header.join(","))?;
    for i in 0..n {
        let t = angle(i, n);
        let v = f.eval(Complex64::from_polar(1.0, t));
        let cols: Vec<String> = v.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]).collect();
        writeln!(out, "{t},{}", cols.join(","))?;
    }
    Ok(n)
}
