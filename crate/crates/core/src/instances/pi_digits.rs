//! The leading 4096 binary digits of π = 11.00100100001111110110…₂,
//! starting with the two integer-part digits, packed as hexadecimal.

/// Hex chunks; concatenated they give π/4 = 0.C90FDAA2…₁₆, whose bits are
/// the binary digits of π beginning with its integer part.
const PI_HEX: [&str; 16] = [
    "c90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74020bbea63b139b22",
    "514a08798e3404ddef9519b3cd3a431b302b0a6df25f14374fe1356d6d51c245",
    "e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7edee386bfb5a899fa5",
    "ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf0598da48361c55d39a",
    "69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb9ed529077096966d",
    "670c354e4abc9804f1746c08ca18217c32905e462e36ce3be39e772c180e8603",
    "9b2783a2ec07a28fb5c55df06f4c52c9de2bcbf6955817183995497cea956ae5",
    "15d2261898fa051015728e5a8aaac42dad33170d04507a33a85521abdf1cba64",
    "ecfb850458dbef0a8aea71575d060c7db3970f85a6e1e4c7abf5ae8cdb0933d7",
    "1e8c94e04a25619dcee3d2261ad2ee6bf12ffa06d98a0864d87602733ec86a64",
    "521f2b18177b200cbbe117577a615d6c770988c0bad946e208e24fa074e5ab31",
    "43db5bfce0fd108e4b82d120a92108011a723c12a787e6d788719a10bdba5b26",
    "99c327186af4e23c1a946834b6150bda2583e9ca2ad44ce8dbbbc2db04de8ef9",
    "2e8efc141fbecaa6287c59474e6bc05d99b2964fa090c3a2233ba186515be7ed",
    "1f612970cee2d7afb81bdd762170481cd0069127d5b05aa993b4ea988d8fddc1",
    "86ffb7dc90a6c08f4df435c93402849236c3fab4d27c7026c1d4dcb2602646de",
];

pub const PI_BIT_COUNT: usize = 4096;

/// Binary digit `i` of π, counting the leading integer-part 1 as digit 0.
pub fn pi_bit(i: usize) -> u8 {
    assert!(i < PI_BIT_COUNT, "only {PI_BIT_COUNT} digits of pi are stored");
    let chunk = PI_HEX[i / 256].as_bytes();
    let nibble = (chunk[(i % 256) / 4] as char).to_digit(16).expect("hex digit") as u8;
    (nibble >> (3 - i % 4)) & 1
}
