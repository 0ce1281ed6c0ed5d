#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "k2km/gcm.hpp"
#include "k2km/matrix.hpp"

using k2km::BigInt;
using k2km::CartanType;
using k2km::ColumnParity;
using k2km::Gcm;
using k2km::GcmError;
using k2km::IntMatrix;

namespace {

std::uint64_t rng_state = 0x13198a2e03707344ULL;
std::uint64_t next_u64() {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 7;
    rng_state ^= rng_state << 17;
    return rng_state;
}
long long next_ll(long long lo, long long hi) {
    return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

const IntMatrix kRank3Example{{2, -1, -3}, {-3, 2, -1}, {-1, -3, 2}};

std::vector<int> random_perm(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[next_ll(0, i)]);
    return p;
}

}  // namespace

TEST_CASE("validate accepts GCMs and names violations") {
    CHECK(k2km::validate(IntMatrix{{2, -1}, {-1, 2}}).n == 2);
    CHECK(k2km::validate(kRank3Example).n == 3);
    CHECK(k2km::validate(IntMatrix{{2}}).n == 1);

    try {
        k2km::validate(IntMatrix{{2, -1}, {0, 2}});
        FAIL("expected AsymmetricZero");
    } catch (const GcmError& e) {
        CHECK(e.kind == GcmError::Kind::AsymmetricZero);
        CHECK(e.i == 2);
        CHECK(e.j == 1);
    }
    try {
        k2km::validate(IntMatrix{{3, -1}, {-1, 2}});
        FAIL("expected BadDiagonal");
    } catch (const GcmError& e) {
        CHECK(e.kind == GcmError::Kind::BadDiagonal);
        CHECK(e.i == 1);
    }
    try {
        k2km::validate(IntMatrix{{2, 1}, {-1, 2}});
        FAIL("expected PositiveOffDiagonal");
    } catch (const GcmError& e) {
        CHECK(e.kind == GcmError::Kind::PositiveOffDiagonal);
        CHECK(e.i == 1);
        CHECK(e.j == 2);
    }
    CHECK_THROWS_AS(k2km::validate(IntMatrix(2, 3)), GcmError);
}

TEST_CASE("components of the support graph") {
    CHECK(k2km::components(k2km::validate(IntMatrix{{2, -1}, {-1, 2}})) ==
          std::vector<std::vector<int>>{{0, 1}});
    CHECK(k2km::components(k2km::validate(IntMatrix{{2, 0}, {0, 2}})) ==
          std::vector<std::vector<int>>{{0}, {1}});
    CHECK(k2km::components(k2km::validate(IntMatrix{{2, -2, 0}, {-2, 2, -2}, {0, -2, 2}})) ==
          std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("principal submatrices") {
    Gcm g = k2km::validate(kRank3Example);
    Gcm sub = k2km::principal_submatrix(g, {0, 1});
    CHECK(sub.a == IntMatrix{{2, -1}, {-3, 2}});
    CHECK(k2km::principal_submatrix(g, {0, 1, 2}).a == g.a);
    Gcm a1 = k2km::principal_submatrix(k2km::validate(IntMatrix{{2, -2}, {-2, 2}}), {0});
    CHECK(a1.a == IntMatrix{{2}});
    CHECK_THROWS_AS(k2km::principal_submatrix(g, {}), GcmError);
}

TEST_CASE("classification of indecomposable GCMs") {
    auto type = [](const IntMatrix& m) {
        return k2km::classify_indecomposable(k2km::validate(m)).type;
    };
    CHECK(type(IntMatrix{{2, -1}, {-1, 2}}) == CartanType::Finite);
    CHECK(type(IntMatrix{{2, -2}, {-2, 2}}) == CartanType::Affine);
    auto c = k2km::classify_indecomposable(k2km::validate(kRank3Example));
    CHECK(c.type == CartanType::Indefinite);
    CHECK(c.hyperbolic);
    CHECK_THROWS_AS(k2km::classify_indecomposable(k2km::validate(IntMatrix{{2, 0}, {0, 2}})),
                    GcmError);
}

TEST_CASE("blockwise classification of decomposable GCMs") {
    Gcm g = k2km::validate(IntMatrix{{2, -1, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, -2}, {0, 0, -2, 2}});
    auto blocks = k2km::classify(g);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].block == std::vector<int>{0, 1});
    CHECK(blocks[0].cls.type == CartanType::Finite);
    CHECK(blocks[1].block == std::vector<int>{2, 3});
    CHECK(blocks[1].cls.type == CartanType::Affine);
}

TEST_CASE("hyperbolicity") {
    CHECK(k2km::is_hyperbolic(k2km::validate(IntMatrix{{2, -5}, {-1, 2}})));
    CHECK_FALSE(k2km::is_hyperbolic(k2km::validate(IntMatrix{{2, -1}, {-1, 2}})));
    CHECK(k2km::is_hyperbolic(k2km::validate(kRank3Example)));
    // indefinite but not hyperbolic: a proper block is already indefinite
    IntMatrix deep{{2, -5, -1}, {-1, 2, -1}, {-1, -1, 2}};
    auto cls = k2km::classify_indecomposable(k2km::validate(deep));
    CHECK(cls.type == CartanType::Indefinite);
    CHECK_FALSE(cls.hyperbolic);
    // decomposable input: defined as false
    CHECK_FALSE(k2km::is_hyperbolic(k2km::validate(IntMatrix{{2, 0}, {0, 2}})));
}

TEST_CASE("column parity") {
    auto parity = [](const IntMatrix& m) { return k2km::column_parity(k2km::validate(m)); };
    CHECK(parity(kRank3Example) ==
          std::vector<ColumnParity>{ColumnParity::OddPresent, ColumnParity::OddPresent,
                                    ColumnParity::OddPresent});
    CHECK(parity(IntMatrix{{2, -2}, {-2, 2}}) ==
          std::vector<ColumnParity>{ColumnParity::AllEven, ColumnParity::AllEven});
    CHECK(parity(IntMatrix{{2, -2}, {-1, 2}}) ==
          std::vector<ColumnParity>{ColumnParity::OddPresent, ColumnParity::AllEven});
    // the diagonal 2 never counts
    CHECK(parity(IntMatrix{{2}}) == std::vector<ColumnParity>{ColumnParity::AllEven});
}

TEST_CASE("rank-2 closed form: finite iff ab <= 3, affine iff ab = 4, else hyperbolic") {
    for (long long a = 1; a <= 8; ++a)
        for (long long b = 1; b <= 8; ++b) {
            Gcm g = k2km::validate(IntMatrix{{2, -b}, {-a, 2}});
            auto cls = k2km::classify_indecomposable(g);
            if (a * b <= 3) {
                CHECK(cls.type == CartanType::Finite);
            } else if (a * b == 4) {
                CHECK(cls.type == CartanType::Affine);
            } else {
                CHECK(cls.type == CartanType::Indefinite);
                CHECK(cls.hyperbolic);
                CHECK(k2km::is_hyperbolic(g));
            }
        }
}

TEST_CASE("classification and hyperbolicity are permutation invariant") {
    std::vector<IntMatrix> samples = {
        kRank3Example,
        {{2, -1, 0}, {-3, 2, -2}, {0, -1, 2}},
        {{2, -2, -3}, {-2, 2, -2}, {-1, -2, 2}},
        {{2, -1, 0, 0}, {-2, 2, -1, 0}, {0, -1, 2, -3}, {0, 0, -1, 2}},
        {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}},
    };
    for (const auto& m : samples) {
        Gcm g = k2km::validate(m);
        auto base = k2km::classify_indecomposable(g);
        for (int rep = 0; rep < 12; ++rep) {
            Gcm h = k2km::apply_permutation(g, random_perm(g.n));
            CHECK(k2km::classify_indecomposable(h) == base);
            CHECK(k2km::is_hyperbolic(h) == k2km::is_hyperbolic(g));
        }
    }
}

TEST_CASE("heredity: proper blocks of finite GCMs are finite") {
    std::vector<IntMatrix> finites = {
        {{2, -1, 0, 0, 0},
         {-1, 2, -1, 0, 0},
         {0, -1, 2, -1, 0},
         {0, 0, -1, 2, -1},
         {0, 0, 0, -1, 2}},
        {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -2, 2}},  // B-type chain
        {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -2}, {0, 0, -1, 2}},  // C-type chain
        {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}},  // F4
        {{2, -1}, {-3, 2}},                                              // G2
        {{2, -1, 0, 0, 0},
         {-1, 2, -1, 0, -1},
         {0, -1, 2, -1, 0},
         {0, 0, -1, 2, 0},
         {0, -1, 0, 0, 2}},  // D5
        {{2, -1, 0, 0, 0, 0},
         {-1, 2, -1, 0, 0, 0},
         {0, -1, 2, -1, 0, -1},
         {0, 0, -1, 2, -1, 0},
         {0, 0, 0, -1, 2, 0},
         {0, 0, -1, 0, 0, 2}},  // E6
    };
    for (const auto& m : finites) {
        Gcm g = k2km::validate(m);
        REQUIRE(k2km::classify_indecomposable(g).type == CartanType::Finite);
        for (unsigned mask = 1; mask + 1 < (1u << g.n); ++mask) {
            std::vector<int> subset;
            for (int i = 0; i < g.n; ++i)
                if (mask & (1u << i)) subset.push_back(i);
            Gcm sub = k2km::principal_submatrix(g, subset);
            for (auto& comp : k2km::components(sub))
                CHECK(k2km::classify_indecomposable(k2km::principal_submatrix(sub, comp)).type ==
                      CartanType::Finite);
        }
    }
}

TEST_CASE("principal submatrices of a valid GCM always validate") {
    for (int rep = 0; rep < 200; ++rep) {
        int n = static_cast<int>(next_ll(1, 6));
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = BigInt(2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (next_ll(0, 2) == 0) continue;
                m.at(i, j) = BigInt(-next_ll(1, 4));
                m.at(j, i) = BigInt(-next_ll(1, 4));
            }
        Gcm g = k2km::validate(m);
        for (int t = 0; t < 10; ++t) {
            std::vector<int> subset;
            for (int i = 0; i < n; ++i)
                if (next_ll(0, 1)) subset.push_back(i);
            if (subset.empty()) subset.push_back(static_cast<int>(next_ll(0, n - 1)));
            CHECK_NOTHROW(k2km::validate(k2km::principal_submatrix(g, subset).a));
        }
    }
}
