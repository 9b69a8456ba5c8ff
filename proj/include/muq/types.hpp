#ifndef MUQ_TYPES_HPP
#define MUQ_TYPES_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace muq {

// Alphabet symbols are small integer indices 0..q-1, q <= 16.
using Sym = std::uint8_t;

// A q-ary word. Coordinate 0 is the most significant one in the canonical
// (lexicographic) order.
using Word = std::vector<Sym>;

enum class Err {
    NotPrimePower,
    IndexOutOfRange,
    ZeroInverse,
    LengthMismatch,
    TooSmall,
    Empty,
    TooLarge,
    ArityMismatch,
    BadShape,
    ZeroCoefficient,
    NotPerfect,
    BadVHPair,
    BadPartition,
    BadOrder,
    NonlinearSigma,
    ComponentLawViolation,
    OuterNotPerfect,
    LayoutMismatch,
    NotPerfectResult,
    RankTooHigh,
    StructureViolation,
    BadLength,
    BadFile,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
    Err code() const noexcept { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Err code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

// Digits for word formatting; file formats cap q at 10, hex digits cover
// in-memory fields up to q = 16.
std::string format_word(std::span<const Sym> w);
Word parse_word(const std::string& digits, int q);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

} // namespace muq

#endif
