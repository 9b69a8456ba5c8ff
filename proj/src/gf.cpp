#include "muq/gf.hpp"

#include <algorithm>

namespace muq {

const char* err_name(Err e) {
    switch (e) {
        case Err::NotPrimePower: return "NotPrimePower";
        case Err::IndexOutOfRange: return "IndexOutOfRange";
        case Err::ZeroInverse: return "ZeroInverse";
        case Err::LengthMismatch: return "LengthMismatch";
        case Err::TooSmall: return "TooSmall";
        case Err::Empty: return "Empty";
        case Err::TooLarge: return "TooLarge";
        case Err::ArityMismatch: return "ArityMismatch";
        case Err::BadShape: return "BadShape";
        case Err::ZeroCoefficient: return "ZeroCoefficient";
        case Err::NotPerfect: return "NotPerfect";
        case Err::BadVHPair: return "BadVHPair";
        case Err::BadPartition: return "BadPartition";
        case Err::BadOrder: return "BadOrder";
        case Err::NonlinearSigma: return "NonlinearSigma";
        case Err::ComponentLawViolation: return "ComponentLawViolation";
        case Err::OuterNotPerfect: return "OuterNotPerfect";
        case Err::LayoutMismatch: return "LayoutMismatch";
        case Err::NotPerfectResult: return "NotPerfectResult";
        case Err::RankTooHigh: return "RankTooHigh";
        case Err::StructureViolation: return "StructureViolation";
        case Err::BadLength: return "BadLength";
        case Err::BadFile: return "BadFile";
    }
    return "Unknown";
}

static const char kDigits[] = "0123456789abcdef";

std::string format_word(std::span<const Sym> w) {
    std::string s;
    s.reserve(w.size());
    for (Sym x : w) s.push_back(x < 16 ? kDigits[x] : '?');
    return s;
}

Word parse_word(const std::string& digits, int q) {
    Word w;
    w.reserve(digits.size());
    for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
        else fail(Err::BadFile, std::string("bad digit '") + c + "' in word");
        require(v < q, Err::BadFile,
                "digit " + std::to_string(v) + " out of range for q=" + std::to_string(q));
        w.push_back(static_cast<Sym>(v));
    }
    return w;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

namespace {

// Dense polynomials over GF(p), constant term first, p prime.

std::vector<int> poly_trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    a = poly_trim(std::move(a));
    const int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int da = static_cast<int>(a.size()) - 1;
        // m is monic, so the factor is just the leading coefficient of a
        const int f = a[da];
        for (int i = 0; i <= dm; ++i) {
            int& c = a[da - dm + i];
            c = ((c - f * m[i]) % p + p * p) % p;
        }
        a = poly_trim(std::move(a));
    }
    return a;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_trim(std::move(r));
}

// Candidate index k -> monic polynomial x^e + digits(k); ascending k is
// the lexicographic order on the coefficient list.
std::vector<int> monic_from_index(std::uint64_t k, int p, int e) {
    std::vector<int> c(e + 1, 0);
    for (int i = 0; i < e; ++i) {
        c[i] = static_cast<int>(k % p);
        k /= p;
    }
    c[e] = 1;
    return c;
}

bool poly_is_zero(const std::vector<int>& a) { return poly_trim(a).empty(); }

bool is_irreducible(const std::vector<int>& cand, int p, int e) {
    // Trial division by every monic polynomial of degree 1..e/2.
    for (int d = 1; 2 * d <= e; ++d) {
        for (std::uint64_t k = 0; k < ipow(p, d); ++k) {
            std::vector<int> div = monic_from_index(k, p, d);
            if (poly_is_zero(poly_mod(cand, div, p))) return false;
        }
    }
    return true;
}

std::vector<int> index_to_poly(int idx, int p, int e) {
    std::vector<int> c(e, 0);
    for (int i = 0; i < e; ++i) {
        c[i] = idx % p;
        idx /= p;
    }
    return poly_trim(std::move(c));
}

int poly_to_index(const std::vector<int>& a, int p) {
    int idx = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) idx = idx * p + a[i];
    return idx;
}

} // namespace

FieldTable field_make(int q) {
    require(q >= 2 && q <= 16, Err::NotPrimePower,
            "q=" + std::to_string(q) + " outside supported range 2..16");
    int p = 0, e = 0, m = q;
    for (int d = 2; d <= m; ++d) {
        if (m % d == 0) {
            p = d;
            while (m % d == 0) {
                m /= d;
                ++e;
            }
            break;
        }
    }
    require(m == 1, Err::NotPrimePower, "q=" + std::to_string(q) + " is not a prime power");

    FieldTable F;
    F.q = q;
    F.p = p;
    F.e = e;

    if (e == 1) {
        F.modulus = {0, 1}; // x
    } else {
        for (std::uint64_t k = 0;; ++k) {
            std::vector<int> cand = monic_from_index(k, p, e);
            if (is_irreducible(cand, p, e)) {
                F.modulus = cand;
                break;
            }
        }
    }

    F.add_t.assign(static_cast<size_t>(q) * q, 0);
    F.mul_t.assign(static_cast<size_t>(q) * q, 0);
    F.neg_t.assign(q, 0);
    F.inv_t.assign(q, 0);

    for (int a = 0; a < q; ++a) {
        const auto pa = index_to_poly(a, p, e);
        for (int b = 0; b < q; ++b) {
            const auto pb = index_to_poly(b, p, e);
            std::vector<int> s(std::max(pa.size(), pb.size()), 0);
            for (size_t i = 0; i < s.size(); ++i) {
                int va = i < pa.size() ? pa[i] : 0;
                int vb = i < pb.size() ? pb[i] : 0;
                s[i] = (va + vb) % p;
            }
            F.add_t[static_cast<size_t>(a) * q + b] = static_cast<Sym>(poly_to_index(poly_trim(s), p));
            F.mul_t[static_cast<size_t>(a) * q + b] =
                static_cast<Sym>(poly_to_index(poly_mod(poly_mul(pa, pb, p), F.modulus, p), p));
        }
    }
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (F.add_t[static_cast<size_t>(a) * q + b] == 0) F.neg_t[a] = static_cast<Sym>(b);
            if (a != 0 && F.mul_t[static_cast<size_t>(a) * q + b] == 1)
                F.inv_t[a] = static_cast<Sym>(b);
        }
    }
    return F;
}

} // namespace muq
