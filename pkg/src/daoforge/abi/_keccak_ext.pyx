# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Keccak-f[1600] sponge; same contract as ``_keccak_py.sponge``."""

from libc.stdint cimport uint64_t
from libc.string cimport memcpy, memset

cdef uint64_t RC[24]
RC[:] = [
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808AULL, 0x8000000080008000ULL,
    0x000000000000808BULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008AULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000AULL,
    0x000000008000808BULL, 0x800000000000008BULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800AULL, 0x800000008000000AULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
]

cdef int ROT[25]
ROT[:] = [0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43, 25, 39,
          41, 45, 15, 21, 8, 18, 2, 61, 56, 14]

cdef int PI[25]
cdef int _x, _y
for _y in range(5):
    for _x in range(5):
        PI[_x + 5 * _y] = _y + 5 * ((2 * _x + 3 * _y) % 5)


cdef inline uint64_t rol(uint64_t v, int n) nogil:
    if n == 0:
        return v
    return (v << n) | (v >> (64 - n))


cdef void permute(uint64_t* a) noexcept nogil:
    cdef uint64_t b[25]
    cdef uint64_t c[5]
    cdef uint64_t d
    cdef int r, x, y, i
    for r in range(24):
        for x in range(5):
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20]
        for x in range(5):
            d = c[(x + 4) % 5] ^ rol(c[(x + 1) % 5], 1)
            for y in range(0, 25, 5):
                a[x + y] ^= d
        for i in range(25):
            b[PI[i]] = rol(a[i], ROT[i])
        for y in range(0, 25, 5):
            for x in range(5):
                a[y + x] = b[y + x] ^ ((~b[y + (x + 1) % 5]) & b[y + (x + 2) % 5])
        a[0] ^= RC[r]


cdef inline uint64_t load64(const unsigned char* p) nogil:
    cdef uint64_t v = 0
    cdef int i
    for i in range(7, -1, -1):
        v = (v << 8) | p[i]
    return v


cdef inline void store64(unsigned char* p, uint64_t v) nogil:
    cdef int i
    for i in range(8):
        p[i] = <unsigned char>(v & 0xFF)
        v >>= 8


def keccak_f1600(lanes):
    """Apply the permutation to a list of 25 lanes in place."""
    cdef uint64_t a[25]
    cdef int i
    for i in range(25):
        a[i] = lanes[i]
    permute(a)
    for i in range(25):
        lanes[i] = a[i]
    return lanes


def sponge(data, int rate, int pad, Py_ssize_t out_len):
    cdef bytes buf = bytes(data)
    cdef const unsigned char* src = buf
    cdef Py_ssize_t n = len(buf)
    cdef Py_ssize_t off = 0
    cdef uint64_t a[25]
    cdef unsigned char block[200]
    cdef int i, lanes_per_block = rate // 8
    memset(a, 0, sizeof(a))
    with nogil:
        while n - off >= rate:
            for i in range(lanes_per_block):
                a[i] ^= load64(src + off + 8 * i)
            permute(a)
            off += rate
        memset(block, 0, rate)
        memcpy(block, src + off, n - off)
        block[n - off] ^= <unsigned char>pad
        block[rate - 1] ^= 0x80
        for i in range(lanes_per_block):
            a[i] ^= load64(block + 8 * i)
        permute(a)
    out = bytearray()
    while True:
        for i in range(lanes_per_block):
            store64(block + 8 * i, a[i])
        out += block[:rate]
        if len(out) >= out_len:
            return bytes(out[:out_len])
        permute(a)
