use crate::ms::MSTuckerInstance;
use crate::tiles::TILE_TEMPLATE;
use crate::{ceil_log2, Result};
use boolcircuit::{BoolCircuit, CircuitBuilder};

/// Builds the four-output labelling circuit of the variant instance
/// produced from a monochromatic grid of even side `s`, padded to side
/// S = 2^q with margin k = (S - s) / 2.
///
/// The circuit takes a grid point (X, Y) at q+11 bits per coordinate and
/// works in W = q+13 bits so that every intermediate value stays
/// non-negative: clamps are applied to shifted copies instead of signed
/// quantities.  Pipeline: fold the point into the lower representative
/// half, locate its subregion's tile, convert the tile center to padded
/// squarelet indices, override the top and bottom index zones with the
/// constant labels, unpad, evaluate the monochromatic circuit, encode the
/// label as a word, and complement the word for points from the upper
/// half.
pub(crate) fn build_vt_labeller(ms: &MSTuckerInstance, q: u32, k: u64) -> Result<BoolCircuit> {
    let s = ms.side();
    let big_s = 1u64 << q;
    let n_bits = (q + 11) as usize;
    let size = 1u64 << n_bits;
    let w = n_bits + 2;

    let mut b = CircuitBuilder::new(2 * n_bits);
    let x_in: Vec<usize> = (0..n_bits).collect();
    let y_in: Vec<usize> = (n_bits..2 * n_bits).collect();
    let xw = b.zero_extend(&x_in, w);
    let yw = b.zero_extend(&y_in, w);

    // Lower representative half: X + Y < size, or X + Y = size with Y <= X.
    let (sum, _) = b.add(&xw, &yw);
    let lt_size = b.lt_const(&sum, size);
    let size_w = b.const_word(size, w);
    let eq_size = b.eq_word(&sum, &size_w);
    let y_le_x = b.le_unsigned(&yw, &xw);
    let on_edge = b.and(eq_size, y_le_x);
    let in_l = b.or(lt_size, on_edge);

    // Antipode (size - X, size - Y), reduced mod size by truncation.
    let (neg_x_full, _) = b.sub(&size_w, &xw);
    let (neg_y_full, _) = b.sub(&size_w, &yw);
    let neg_x = &neg_x_full[..n_bits];
    let neg_y = &neg_y_full[..n_bits];
    let xs = b.mux_word(in_l, neg_x, &x_in);
    let ys = b.mux_word(in_l, neg_y, &y_in);

    // Subregion indices: drop the last 7 bits of each coordinate.
    let u = b.zero_extend(&xs[7..], w);
    let v = b.zero_extend(&ys[7..], w);

    // Tile center: of the eight candidate centers exactly one has both
    // entries even and congruent mod 4; candidates that would be negative
    // wrap to odd values and fail the parity test.
    let mut acc_a: Option<Vec<usize>> = None;
    let mut acc_b: Option<Vec<usize>> = None;
    for (dx, dy) in TILE_TEMPLATE {
        let ac = offset_word(&mut b, &u, dx);
        let bc = offset_word(&mut b, &v, dy);
        let a_even = b.not(ac[0]);
        let b_even = b.not(bc[0]);
        let congruent = b.xnor(ac[1], bc[1]);
        let both_even = b.and(a_even, b_even);
        let valid = b.and(both_even, congruent);
        acc_a = Some(match acc_a {
            None => ac,
            Some(prev) => b.mux_word(valid, &prev, &ac),
        });
        acc_b = Some(match acc_b {
            None => bc,
            Some(prev) => b.mux_word(valid, &prev, &bc),
        });
    }
    let tile_a = acc_a.unwrap();
    let tile_b = acc_b.unwrap();

    // Padded squarelet indices of the tile, shifted to stay non-negative:
    // (a - b + 18S) / 4 = i + 4S and (a + b + 2S) / 4 = j + 2S.
    let a_shift = b.add_const(&tile_a, 18 * big_s);
    let (i4, _) = b.sub(&a_shift, &tile_b);
    let i_shift = i4[2..].to_vec();
    let (ab, _) = b.add(&tile_a, &tile_b);
    let j4 = b.add_const(&ab, 2 * big_s);
    let j_shift = j4[2..].to_vec();

    // Rows below the padded grid are +1, rows above are -1; columns are
    // clamped to the nearest column of the grid.
    let zone_plus = b.lt_const(&j_shift, 2 * big_s + 1);
    let lt_top = b.lt_const(&j_shift, 3 * big_s + 1);
    let zone_minus = b.not(lt_top);
    let i_clamped = b.clamp_const(&i_shift, 4 * big_s + 1, 5 * big_s);
    let i_pad0 = b.sub_const(&i_clamped, 4 * big_s + 1);
    let j_clamped = b.clamp_const(&j_shift, 2 * big_s + 1, 3 * big_s);
    let j_pad0 = b.sub_const(&j_clamped, 2 * big_s + 1);

    // Unpad: the padded squarelet (i, j) shows the original squarelet
    // (clamp(i - k, 1, s), clamp(j - k, 1, s)), again via a shifted clamp.
    let cb = ceil_log2(s) as usize;
    let ti = b.add_const(&i_pad0, 2 * s + 1 - k);
    let ti_clamped = b.clamp_const(&ti, 2 * s + 1, 3 * s);
    let i_orig0 = b.sub_const(&ti_clamped, 2 * s + 1);
    let tj = b.add_const(&j_pad0, 2 * s + 1 - k);
    let tj_clamped = b.clamp_const(&tj, 2 * s + 1, 3 * s);
    let j_orig0 = b.sub_const(&tj_clamped, 2 * s + 1);

    let mut ms_in = Vec::with_capacity(2 * cb);
    ms_in.extend_from_slice(&i_orig0[..cb]);
    ms_in.extend_from_slice(&j_orig0[..cb]);
    let beta = b.embed(ms.labeller(), &ms_in);

    // Zone override on the two label bits, then the word encoding
    // +1 -> 1110, -1 -> 0001, +2 -> 0111, -2 -> 1000.
    let nzp = b.not(zone_plus);
    let nzm = b.not(zone_minus);
    let b0_mid = b.and(beta[0], nzp);
    let b0 = b.and(b0_mid, nzm);
    let b1_or = b.or(zone_minus, beta[1]);
    let b1 = b.and(nzp, b1_or);
    let x01 = b.xor(b0, b1);
    let w0 = b.not(x01);
    let w1 = b.not(b1);
    let w3 = x01;

    // Points of the upper half carry the complement of their antipode's
    // word.
    let o0 = b.xnor(w0, in_l);
    let o1 = b.xnor(w1, in_l);
    let o2 = b.xnor(w1, in_l);
    let o3 = b.xnor(w3, in_l);
    Ok(b.finish(vec![o0, o1, o2, o3])?)
}

fn offset_word(b: &mut CircuitBuilder, word: &[usize], delta: i64) -> Vec<usize> {
    if delta == 0 {
        word.to_vec()
    } else if delta > 0 {
        b.sub_const(word, delta as u64)
    } else {
        b.add_const(word, (-delta) as u64)
    }
}
