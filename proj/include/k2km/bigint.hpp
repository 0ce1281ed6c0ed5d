#pragma once

#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace k2km {

/// Signed arbitrary-precision integer, base 10^9 limbs.
/// Small and exact; division truncates toward zero like built-in integers.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        unsigned long long u = v < 0 ? 0ULL - static_cast<unsigned long long>(v)
                                     : static_cast<unsigned long long>(v);
        while (u > 0) {
            mag_.push_back(static_cast<std::uint32_t>(u % kBase));
            u /= kBase;
        }
    }

    BigInt(int v) : BigInt(static_cast<long long>(v)) {}

    explicit BigInt(std::string_view s) {
        std::size_t pos = 0;
        int sign = 1;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        if (pos == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        for (std::size_t k = pos; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("BigInt: bad digit");
        std::size_t len = s.size() - pos;
        mag_.reserve(len / 9 + 1);
        std::size_t end = s.size();
        while (end > pos) {
            std::size_t begin = end >= pos + 9 ? end - 9 : pos;
            std::uint32_t limb = 0;
            for (std::size_t k = begin; k < end; ++k)
                limb = limb * 10 + static_cast<std::uint32_t>(s[k] - '0');
            mag_.push_back(limb);
            end = begin;
        }
        trim();
        sign_ = mag_.empty() ? 0 : sign;
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }
    int sign() const { return sign_; }
    bool odd() const { return !mag_.empty() && (mag_[0] & 1u); }
    bool even() const { return !odd(); }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c < 0 : c > 0;
    }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt{};
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt{};
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (std::size_t i = 0; i < a.mag_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.mag_.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] +
                                    r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<std::uint32_t>(cur % kBase);
                carry = cur / kBase;
            }
            std::size_t k = i + b.mag_.size();
            while (carry > 0) {
                std::uint64_t cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<std::uint32_t>(cur % kBase);
                carry = cur / kBase;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    /// Truncated division: q = trunc(a/b), r = a - q*b (sign of r follows a).
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        if (a.sign_ == 0) return {BigInt{}, BigInt{}};
        auto [qm, rm] = divmod_mag(a.mag_, b.mag_);
        BigInt q, r;
        q.mag_ = std::move(qm);
        q.trim();
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r.mag_ = std::move(rm);
        r.trim();
        r.sign_ = r.mag_.empty() ? 0 : a.sign_;
        return {q, r};
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    bool divisible_by(const BigInt& b) const { return divmod(*this, b).second.is_zero(); }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::string out = sign_ < 0 ? "-" : "";
        out += std::to_string(mag_.back());
        for (std::size_t k = mag_.size() - 1; k-- > 0;) {
            std::string limb = std::to_string(mag_[k]);
            out += std::string(9 - limb.size(), '0') + limb;
        }
        return out;
    }

    /// Exact conversion; throws if out of range.
    long long to_ll() const {
        long long r = 0;
        for (std::size_t k = mag_.size(); k-- > 0;) {
            if (r > (kLLMax - mag_[k]) / kBase) throw std::overflow_error("BigInt: to_ll overflow");
            r = r * kBase + mag_[k];
        }
        return sign_ < 0 ? -r : r;
    }

private:
    static constexpr std::uint32_t kBase = 1000000000u;
    static constexpr long long kLLMax = 9223372036854775807LL;

    int sign_ = 0;
    std::vector<std::uint32_t> mag_;  // little-endian, no leading zeros

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t k = a.size(); k-- > 0;)
            if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r = big;
        std::uint64_t carry = 0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            std::uint64_t cur = r[k] + carry + (k < small.size() ? small[k] : 0);
            r[k] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
            if (carry == 0 && k >= small.size()) break;
        }
        if (carry) r.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            std::int64_t cur = static_cast<std::int64_t>(r[k]) - borrow -
                               (k < b.size() ? static_cast<std::int64_t>(b[k]) : 0);
            if (cur < 0) {
                cur += kBase;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[k] = static_cast<std::uint32_t>(cur);
            if (borrow == 0 && k >= b.size()) break;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<std::uint32_t> mul_small(const std::vector<std::uint32_t>& a,
                                                std::uint32_t m) {
        std::vector<std::uint32_t> r(a.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            std::uint64_t cur = static_cast<std::uint64_t>(a[k]) * m + carry;
            r[k] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        r[a.size()] = static_cast<std::uint32_t>(carry);
        return r;
    }

    // Knuth algorithm D on magnitudes.
    static std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> divmod_mag(
        const std::vector<std::uint32_t>& u0, const std::vector<std::uint32_t>& v0) {
        if (cmp_mag(u0, v0) < 0) return {{}, u0};
        const std::size_t n = v0.size();
        if (n == 1) {
            std::vector<std::uint32_t> q(u0.size(), 0);
            std::uint64_t rem = 0;
            for (std::size_t k = u0.size(); k-- > 0;) {
                std::uint64_t cur = rem * kBase + u0[k];
                q[k] = static_cast<std::uint32_t>(cur / v0[0]);
                rem = cur % v0[0];
            }
            std::vector<std::uint32_t> r;
            if (rem) r.push_back(static_cast<std::uint32_t>(rem));
            return {q, r};
        }
        const std::uint32_t d = kBase / (v0[n - 1] + 1);
        std::vector<std::uint32_t> un = mul_small(u0, d);  // size m+1
        std::vector<std::uint32_t> vn = mul_small(v0, d);
        while (vn.size() > n) vn.pop_back();  // top limb of mul_small is zero here
        const std::size_t m = u0.size();
        std::vector<std::uint32_t> q(m - n + 1, 0);
        for (std::size_t j = m - n + 1; j-- > 0;) {
            std::uint64_t num = static_cast<std::uint64_t>(un[j + n]) * kBase + un[j + n - 1];
            std::uint64_t qhat = num / vn[n - 1];
            std::uint64_t rhat = num % vn[n - 1];
            while (qhat >= kBase ||
                   qhat * vn[n - 2] > rhat * kBase + un[j + n - 2]) {
                --qhat;
                rhat += vn[n - 1];
                if (rhat >= kBase) break;
            }
            // multiply and subtract
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t p = qhat * vn[i] + carry;
                carry = p / kBase;
                std::int64_t sub = static_cast<std::int64_t>(un[i + j]) -
                                   static_cast<std::int64_t>(p % kBase) - borrow;
                if (sub < 0) {
                    sub += kBase;
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                un[i + j] = static_cast<std::uint32_t>(sub);
            }
            std::int64_t top = static_cast<std::int64_t>(un[j + n]) -
                               static_cast<std::int64_t>(carry) - borrow;
            if (top < 0) {  // qhat one too large: add divisor back
                --qhat;
                std::uint64_t carry2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t cur = static_cast<std::uint64_t>(un[i + j]) + vn[i] + carry2;
                    un[i + j] = static_cast<std::uint32_t>(cur % kBase);
                    carry2 = cur / kBase;
                }
                top += static_cast<std::int64_t>(carry2);
            }
            un[j + n] = static_cast<std::uint32_t>(top);
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        // remainder = un[0..n-1] / d
        std::vector<std::uint32_t> r(un.begin(), un.begin() + n);
        if (d > 1) {
            std::uint64_t rem = 0;
            for (std::size_t k = r.size(); k-- > 0;) {
                std::uint64_t cur = rem * kBase + r[k];
                r[k] = static_cast<std::uint32_t>(cur / d);
                rem = cur % d;
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return {q, r};
    }
};

inline std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

inline BigInt gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt{};
    return (a * b).abs() / gcd(a, b);
}

/// Prime-power factorization by trial division; fine for the torsion
/// orders that arise here.
inline std::vector<std::pair<BigInt, int>> factorize(BigInt n) {
    std::vector<std::pair<BigInt, int>> out;
    if (n < BigInt(2)) return out;
    BigInt p(2);
    while (p * p <= n) {
        if (n.divisible_by(p)) {
            int e = 0;
            while (n.divisible_by(p)) {
                n = n / p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p += p == BigInt(2) ? BigInt(1) : BigInt(2);
    }
    if (n > BigInt(1)) out.emplace_back(n, 1);
    return out;
}

}  // namespace k2km
