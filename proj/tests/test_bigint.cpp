#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "k2km/bigint.hpp"

using k2km::BigInt;

namespace {

// xorshift; deterministic across platforms
std::uint64_t rng_state = 0x9e3779b97f4a7c15ULL;
std::uint64_t next_u64() {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 7;
    rng_state ^= rng_state << 17;
    return rng_state;
}
long long next_ll(long long lo, long long hi) {
    return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

TEST_CASE("construction and printing") {
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(1234567890123456789LL).to_string() == "1234567890123456789");
    CHECK(BigInt("0001234").to_string() == "1234");
    CHECK(BigInt("-987654321987654321987654321").to_string() == "-987654321987654321987654321");
    CHECK(BigInt(0).is_zero());
    CHECK(BigInt(1).is_one());
    CHECK(BigInt(7).odd());
    CHECK(BigInt(-4).even());
    CHECK_THROWS_AS(BigInt("12x"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt(""), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with long long on random values") {
    for (int k = 0; k < 3000; ++k) {
        long long a = next_ll(-1000000000LL, 1000000000LL);
        long long b = next_ll(-1000000000LL, 1000000000LL);
        CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
        CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
        CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
        if (b != 0) {
            CHECK(BigInt(a) / BigInt(b) == BigInt(a / b));
            CHECK(BigInt(a) % BigInt(b) == BigInt(a % b));
        }
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
    }
}

TEST_CASE("multi-limb division round-trips") {
    for (int k = 0; k < 1200; ++k) {
        BigInt a(next_ll(-4000000000000000000LL, 4000000000000000000LL));
        BigInt b(next_ll(-4000000000000000000LL, 4000000000000000000LL));
        BigInt c(next_ll(1, 1000000));
        BigInt big = a * b + c;  // multi-limb dividend
        BigInt div = b.is_zero() ? BigInt(7) : b;
        auto [q, r] = BigInt::divmod(big, div);
        CHECK(q * div + r == big);
        CHECK(r.abs() < div.abs());
        if (!big.is_zero()) CHECK((r.is_zero() || r.sign() == big.sign()));
    }
}

TEST_CASE("known large products") {
    BigInt a("123456789012345678901234567890");
    BigInt b("998877665544332211");
    CHECK((a * b).to_string() == "123318229204251014839755580483852239819193304790");
    CHECK((a * b) / b == a);
    CHECK((a * b) % b == BigInt(0));
    CHECK(((a * b) + BigInt(17)) % b == BigInt(17));
}

TEST_CASE("gcd and lcm") {
    CHECK(k2km::gcd(BigInt(12), BigInt(18)) == BigInt(6));
    CHECK(k2km::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
    CHECK(k2km::gcd(BigInt(0), BigInt(5)) == BigInt(5));
    CHECK(k2km::gcd(BigInt(0), BigInt(0)) == BigInt(0));
    CHECK(k2km::lcm(BigInt(4), BigInt(6)) == BigInt(12));
    for (int k = 0; k < 500; ++k) {
        long long a = next_ll(1, 1000000), b = next_ll(1, 1000000);
        BigInt g = k2km::gcd(BigInt(a), BigInt(b));
        CHECK(BigInt(a).divisible_by(g));
        CHECK(BigInt(b).divisible_by(g));
        CHECK(k2km::lcm(BigInt(a), BigInt(b)) * g == BigInt(a) * BigInt(b));
    }
}

TEST_CASE("factorization into prime powers") {
    auto f26 = k2km::factorize(BigInt(26));
    REQUIRE(f26.size() == 2);
    CHECK(f26[0] == std::pair{BigInt(2), 1});
    CHECK(f26[1] == std::pair{BigInt(13), 1});
    auto f1 = k2km::factorize(BigInt(1));
    CHECK(f1.empty());
    auto f72 = k2km::factorize(BigInt(72));
    REQUIRE(f72.size() == 2);
    CHECK(f72[0] == std::pair{BigInt(2), 3});
    CHECK(f72[1] == std::pair{BigInt(3), 2});
    for (int k = 0; k < 200; ++k) {
        long long n = next_ll(2, 100000);
        BigInt prod(1);
        for (auto& [p, e] : k2km::factorize(BigInt(n)))
            for (int i = 0; i < e; ++i) prod *= p;
        CHECK(prod == BigInt(n));
    }
}
