#ifndef MUQ_GF_HPP
#define MUQ_GF_HPP

#include "muq/types.hpp"

namespace muq {

// Complete arithmetic tables of GF(q), q = p^e a prime power, q <= 16.
// Element index i encodes the polynomial whose GF(p) coefficients are the
// base-p digits of i (most significant digit = highest power). The modulus
// is the lexicographically smallest monic irreducible of degree e over
// GF(p), stored constant-term-first; this fixes the element indexing used
// by all file formats. Immutable after construction.
struct FieldTable {
    int q = 0;
    int p = 0;
    int e = 0;
    std::vector<int> modulus; // length e+1, monic, constant term first

    std::vector<Sym> add_t, mul_t; // q*q, row-major
    std::vector<Sym> neg_t, inv_t; // length q; inv_t[0] is unused

    Sym add(Sym a, Sym b) const { return add_t[check(a) * q + check(b)]; }
    Sym mul(Sym a, Sym b) const { return mul_t[check(a) * q + check(b)]; }
    Sym neg(Sym a) const { return neg_t[check(a)]; }
    Sym sub(Sym a, Sym b) const { return add(a, neg(b)); }
    Sym inv(Sym a) const {
        check(a);
        require(a != 0, Err::ZeroInverse, "inverse of 0");
        return inv_t[a];
    }

  private:
    Sym check(Sym a) const {
        require(a < q, Err::IndexOutOfRange, "element index " + std::to_string(a) +
                                                 " out of range for GF(" + std::to_string(q) + ")");
        return a;
    }
};

// Builds GF(q). Deterministic: repeated calls yield identical tables.
// Throws NotPrimePower for composite non-prime-power q or q > 16.
FieldTable field_make(int q);

inline Sym field_add(const FieldTable& F, Sym a, Sym b) { return F.add(a, b); }
inline Sym field_mul(const FieldTable& F, Sym a, Sym b) { return F.mul(a, b); }
inline Sym field_inv(const FieldTable& F, Sym a) { return F.inv(a); }

} // namespace muq

#endif
