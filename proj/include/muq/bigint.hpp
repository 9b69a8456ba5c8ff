#ifndef MUQ_BIGINT_HPP
#define MUQ_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace muq {

// Minimal unsigned big integer for exact census bounds: little-endian
// 32-bit limbs, schoolbook multiplication, decimal output.
class BigUint {
  public:
    BigUint() = default;
    explicit BigUint(std::uint64_t v) {
        while (v) {
            limbs_.push_back(static_cast<std::uint32_t>(v));
            v >>= 32;
        }
    }

    static BigUint pow(std::uint64_t base, std::uint64_t exp) {
        BigUint r(1);
        BigUint b(base);
        while (exp) {
            if (exp & 1) r = r * b;
            b = b * b;
            exp >>= 1;
        }
        return r;
    }

    BigUint operator*(const BigUint& o) const {
        if (limbs_.empty() || o.limbs_.empty()) return BigUint();
        BigUint r;
        r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
                const std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] +
                                          r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r.limbs_[i + o.limbs_.size()] += static_cast<std::uint32_t>(carry);
        }
        r.trim();
        return r;
    }

    bool operator==(const BigUint&) const = default;

    std::size_t bit_length() const {
        if (limbs_.empty()) return 0;
        std::size_t bits = (limbs_.size() - 1) * 32;
        std::uint32_t top = limbs_.back();
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::vector<std::uint32_t> work = limbs_;
        std::string digits;
        while (!work.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                const std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
                rem = cur % 1000000000ull;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            for (int k = 0; k < 9; ++k) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        return std::string(digits.rbegin(), digits.rend());
    }

  private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint32_t> limbs_;
};

} // namespace muq

#endif
