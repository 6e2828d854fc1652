//! L-polynomials of characters mod T^m and the coefficient sequences λ_j, S_l.
//!
//! For an even non-principal χ, L(u,χ) = (1−u)·P(u) with
//! P(u) = Σ_j λ_j q^{j/2} u^j = ∏_j (1 − α_j u), and 1/Λ(x) = Σ_l S_l x^l where
//! Λ(x) = Σ_j λ_j x^j. Everything downstream only needs these symmetric
//! functions of the α_j, never a Frobenius matrix.

use nalgebra::DMatrix;
use num::complex::Complex64;

use super::character::{char_value_residue, enumerate_even_characters, even_index, Character};
use super::transform::even_character_sums;
use super::unit_group::UnitGroupTable;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone)]
pub struct LData {
    pub q: u64,
    /// c_k = Σ_{f ∈ M_k} χ(f) for k = 0..deg L.
    pub l_coeffs: Vec<Complex64>,
    /// Coefficients of P(u) = L(u,χ)/(1−u).
    pub p_coeffs: Vec<Complex64>,
    /// λ_j = p_j / q^{j/2}, j = 0..N.
    pub lambda: Vec<Complex64>,
    /// Inverse zeros α_j of P.
    pub inverse_zeros: Vec<Complex64>,
}

impl LData {
    /// Builds the data of an even character from c_0..c_{deg L}.
    ///
    /// Trailing coefficients beyond `degree` are dropped; `degree` should be
    /// conductor − 1, since L has exactly that degree.
    pub fn from_l_coeffs(q: u64, coeffs: &[Complex64], degree: usize) -> Result<LData> {
        if degree == 0 || coeffs.len() <= degree {
            return Err(Error::param("degree", "need 1 ≤ degree < number of coefficients"));
        }
        let l_coeffs = coeffs[..=degree].to_vec();
        // synthetic division by (1 − u): p_j = c_0 + ... + c_j
        let mut p_coeffs = Vec::with_capacity(degree);
        let mut acc = ZERO;
        for c in &l_coeffs[..degree] {
            acc += c;
            p_coeffs.push(acc);
        }
        let sq = (q as f64).sqrt();
        let lambda: Vec<Complex64> = p_coeffs
            .iter()
            .enumerate()
            .map(|(j, p)| p / sq.powi(j as i32))
            .collect();
        let inverse_zeros = unit_roots(&lambda).into_iter().map(|t| t * sq).collect();
        Ok(LData {
            q,
            l_coeffs,
            p_coeffs,
            lambda,
            inverse_zeros,
        })
    }

    /// L-coefficients as `re:im` pairs joined by `;`, 12 significant digits each.
    pub fn l_coeffs_text(&self) -> String {
        let parts: Vec<String> = self
            .l_coeffs
            .iter()
            .map(|c| format!("{:.11e}:{:.11e}", c.re, c.im))
            .collect();
        parts.join(";")
    }

    /// N = deg P.
    pub fn n_zeros(&self) -> usize {
        self.lambda.len() - 1
    }

    /// L(1, χ) = Σ c_k, which vanishes for even χ.
    pub fn l_at_one(&self) -> Complex64 {
        self.l_coeffs.iter().sum()
    }

    /// S_0..S_{len−1} from the recursion S_l = −Σ_{j≥1} λ_j S_{l−j}.
    pub fn s_series(&self, len: usize) -> Vec<Complex64> {
        let mut s: Vec<Complex64> = Vec::with_capacity(len);
        for l in 0..len {
            if l == 0 {
                s.push(Complex64::new(1.0, 0.0));
                continue;
            }
            let v: Complex64 = (1..=l.min(self.n_zeros())).map(|j| self.lambda[j] * s[l - j]).sum();
            s.push(-v);
        }
        s
    }

    /// Largest coefficient of Λ(x)·Σ S_l x^l − 1 through degree `deg`.
    pub fn series_identity_error(&self, deg: usize) -> f64 {
        let s = self.s_series(deg + 1);
        (0..=deg)
            .map(|k| {
                let c: Complex64 = (0..=k.min(self.n_zeros())).map(|j| self.lambda[j] * s[k - j]).sum();
                let want = if k == 0 { 1.0 } else { 0.0 };
                (c - want).norm()
            })
            .fold(0.0, f64::max)
    }

    /// max_j | |α_j| − √q | / √q (0 when N = 0).
    pub fn max_rh_deviation(&self) -> f64 {
        let sq = (self.q as f64).sqrt();
        self.inverse_zeros.iter().map(|a| (a.norm() - sq).abs() / sq).fold(0.0, f64::max)
    }

    /// max_j (|α_j| − √q)/√q clipped at 0: how far any zero breaks |α| ≤ √q.
    pub fn max_rh_violation(&self) -> f64 {
        let sq = (self.q as f64).sqrt();
        self.inverse_zeros.iter().map(|a| (a.norm() - sq) / sq).fold(0.0, f64::max)
    }

    /// A(k) = Σ_{j+i+l=k} λ_j S_l q^{j/2 − i − l/2}: coefficient of u^k in
    /// P(u) / ((1 − u/q)·P(u/q)).
    fn a_coeffs(&self, upto: usize) -> Vec<Complex64> {
        let q = self.q as f64;
        let sq = q.sqrt();
        let s = self.s_series(upto + 1);
        // P(u)/P(u/q) first, then the geometric factor
        let ratio: Vec<Complex64> = (0..=upto)
            .map(|k| {
                (0..=k.min(self.n_zeros()))
                    .map(|j| self.lambda[j] * s[k - j] * sq.powi(j as i32) / sq.powi((k - j) as i32))
                    .sum()
            })
            .collect();
        let mut out = Vec::with_capacity(upto + 1);
        let mut acc = ZERO;
        for r in ratio {
            acc = acc / q + r;
            out.push(acc);
        }
        out
    }

    /// M(k; βχ) = Σ_{f∈M_k} β(f)χ(f) from the λ_j and S_l: A(k) − A(k−1).
    pub fn char_sum_closed(&self, k: usize) -> Complex64 {
        let a = self.a_coeffs(k);
        if k == 0 {
            a[0]
        } else {
            a[k] - a[k - 1]
        }
    }

    /// Σ_{m=0}^n β(T^{n−m}) M(m; βχ) = A(n) − A(n−1)/q.
    pub fn weighted_sum_closed(&self, n: usize) -> Complex64 {
        let a = self.a_coeffs(n);
        if n == 0 {
            a[0]
        } else {
            a[n] - a[n - 1] / self.q as f64
        }
    }
}

/// Roots of x^N + λ_1 x^{N−1} + ... + λ_N: companion eigenvalues, then Newton.
fn unit_roots(lambda: &[Complex64]) -> Vec<Complex64> {
    let n = lambda.len() - 1;
    match n {
        0 => return Vec::new(),
        1 => return vec![-lambda[1]],
        _ => {}
    }
    let mut comp = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        comp[(0, j)] = -lambda[j + 1];
    }
    for i in 1..n {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    let eig = comp
        .clone()
        .schur()
        .eigenvalues()
        .expect("complex Schur form is triangular");
    eig.iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..3 {
                let (mut f, mut df) = (Complex64::new(1.0, 0.0), ZERO);
                for c in &lambda[1..] {
                    df = df * z + f;
                    f = f * z + c;
                }
                if df.norm() == 0.0 {
                    break;
                }
                z -= f / df;
            }
            z
        })
        .collect()
}

/// c_k for one character, k = 0..m−1, by summing over M_k directly.
pub fn l_coefficients(tbl: &UnitGroupTable, chi: &Character) -> Vec<Complex64> {
    let q = tbl.q();
    (0..tbl.modulus_degree())
        .map(|k| {
            let top = q.pow(k as u32);
            (0..top).map(|i| char_value_residue(tbl, chi, i + top)).sum()
        })
        .collect()
}

/// LData of a non-principal even character, from direct character sums.
pub fn l_polynomial(tbl: &UnitGroupTable, chi: &Character) -> Result<LData> {
    if chi.is_principal {
        return Err(Error::PrincipalCharacter);
    }
    if !chi.is_even {
        return Err(Error::OddCharacter);
    }
    LData::from_l_coeffs(tbl.q(), &l_coefficients(tbl, chi), chi.conductor - 1)
}

/// c_k for every even character at once; row k, column = position on the 1-unit grid.
pub fn even_l_coefficients(tbl: &UnitGroupTable) -> Vec<Vec<Complex64>> {
    let q = tbl.q();
    (0..tbl.modulus_degree())
        .map(|k| {
            let top = q.pow(k as u32);
            let mut w = vec![ZERO; tbl.residue_count() as usize];
            for i in 0..top {
                w[(i + top) as usize] = Complex64::new(1.0, 0.0);
            }
            even_character_sums(tbl, &w)
        })
        .collect()
}

/// (character, LData) for every non-principal even character, via the batch transform.
pub fn even_l_data(tbl: &UnitGroupTable) -> Result<Vec<(Character, LData)>> {
    let rows = even_l_coefficients(tbl);
    enumerate_even_characters(tbl)
        .enumerate()
        .filter(|(_, chi)| !chi.is_principal)
        .map(|(v, chi)| {
            debug_assert_eq!(chi.index, even_index(tbl, v as u64));
            let coeffs: Vec<Complex64> = rows.iter().map(|r| r[v]).collect();
            let data = LData::from_l_coeffs(tbl.q(), &coeffs, chi.conductor - 1)?;
            Ok((chi, data))
        })
        .collect()
}

pub const LDATA_CSV_HEADER: &str = "q,m,char_index,is_even,is_primitive,l_coeffs,max_rh_deviation";

/// `q,m,char_index,is_even,is_primitive,re:im;...,max_dev` with fixed formatting.
pub fn ldata_csv_row(tbl: &UnitGroupTable, chi: &Character, data: &LData) -> String {
    format!(
        "{},{},{},{},{},{},{:.11e}",
        tbl.q(),
        tbl.modulus_degree(),
        chi.index,
        chi.is_even,
        chi.is_primitive,
        data.l_coeffs_text(),
        data.max_rh_deviation()
    )
}
