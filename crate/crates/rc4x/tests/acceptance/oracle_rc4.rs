//! Reference RC4 used to judge the library, deliberately sharing no code
//! with it: plain `usize` arrays, explicit `& 0xff` reductions, one
//! straight-line function per primitive. `validates_against_rfc6229` must
//! pass before anything else here is trusted.

/// Key-scheduling pass over the identity permutation.
pub fn ksa_ref(key: &[u8]) -> [usize; 256] {
    let mut s = [0usize; 256];
    for (x, slot) in s.iter_mut().enumerate() {
        *slot = x;
    }
    let mut j = 0usize;
    for i in 0..256 {
        j = (j + s[i] + key[i % key.len()] as usize) & 0xff;
        s.swap(i, j);
    }
    s
}

/// Plain keystream: KSA then n output rounds.
pub fn keystream_d1_ref(key: &[u8], n: usize) -> Vec<u8> {
    let mut s = ksa_ref(key);
    let mut out = Vec::with_capacity(n);
    let (mut i, mut j) = (0usize, 0usize);
    for _ in 0..n {
        i = (i + 1) & 0xff;
        j = (j + s[i]) & 0xff;
        s.swap(i, j);
        out.push(s[(s[i] + s[j]) & 0xff] as u8);
    }
    out
}

/// Advances two output rounds one byte at a time; the ground truth the fused
/// step is compared against. Returns the two bytes when `extract` is set.
pub fn two_single_steps(
    s: &mut [usize; 256],
    i: &mut usize,
    j: &mut usize,
    kbox: Option<&[u8]>,
    extract: bool,
) -> Option<(u8, u8)> {
    let step = |s: &mut [usize; 256], i: &mut usize, j: &mut usize| -> u8 {
        *i = (*i + 1) & 0xff;
        let k = kbox.map_or(0, |k| k[*i] as usize);
        *j = (*j + s[*i] + k) & 0xff;
        s.swap(*i, *j);
        s[(s[*i] + s[*j]) & 0xff] as u8
    };
    let a = step(s, i, j);
    let b = step(s, i, j);
    extract.then_some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_against_rfc6229() {
        // Keystream prefixes from RFC 6229 section 2, plus the offset-240
        // row of the 40-bit case to exercise a long run.
        let k40: Vec<u8> = vec![1, 2, 3, 4, 5];
        let k56: Vec<u8> = (1..=7).collect();
        let k64: Vec<u8> = (1..=8).collect();
        let k128: Vec<u8> = (1..=16).collect();
        let ks40 = keystream_d1_ref(&k40, 256);
        assert_eq!(hex::encode(&ks40[..16]), "b2396305f03dc027ccc3524a0a1118a8");
        assert_eq!(hex::encode(&ks40[16..32]), "6982944f18fc82d589c403a47a0d0919");
        assert_eq!(hex::encode(&ks40[240..]), "28cb1132c96ce286421dcaadb8b69eae");
        assert_eq!(hex::encode(keystream_d1_ref(&k56, 16)), "293f02d47f37c9b633f2af5285feb46b");
        assert_eq!(hex::encode(keystream_d1_ref(&k64, 16)), "97ab8a1bf0afb96132f2f67258da15a8");
        assert_eq!(hex::encode(keystream_d1_ref(&k128, 16)), "9ac7cc9a609d1ef7b2932899cde41b97");
    }

    #[test]
    fn two_single_steps_walks_the_plain_keystream() {
        let key = b"oracle self-check";
        let want = keystream_d1_ref(key, 64);
        let mut s = ksa_ref(key);
        let (mut i, mut j) = (0usize, 0usize);
        let mut got = Vec::new();
        for _ in 0..32 {
            let (a, b) = two_single_steps(&mut s, &mut i, &mut j, None, true).unwrap();
            got.extend([a, b]);
        }
        assert_eq!(got, want);
    }
}
