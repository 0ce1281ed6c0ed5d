#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "k2km/bigint.hpp"
#include "k2km/matrix.hpp"

namespace k2km {

class GcmError : public std::runtime_error {
public:
    enum class Kind {
        NotSquare,
        BadDiagonal,
        PositiveOffDiagonal,
        AsymmetricZero,
        EmptySubset,
        Decomposable,
    };

    GcmError(Kind kind, std::string msg, int i = -1, int j = -1)
        : std::runtime_error(std::move(msg)), kind(kind), i(i), j(j) {}

    Kind kind;
    int i, j;  // offending entry, 1-based; -1 when not applicable
};

/// Generalized Cartan matrix: 2s on the diagonal, nonpositive off-diagonal
/// entries, symmetric zero pattern. Simple roots correspond to columns.
struct Gcm {
    int n = 0;
    IntMatrix a;

    const BigInt& at(int i, int j) const { return a.at(i, j); }
};

inline Gcm validate(const IntMatrix& m) {
    if (!m.square() || m.rows() < 1)
        throw GcmError(GcmError::Kind::NotSquare, "matrix must be square with n >= 1");
    const int n = m.rows();
    for (int i = 0; i < n; ++i) {
        if (m.at(i, i) != BigInt(2))
            throw GcmError(GcmError::Kind::BadDiagonal,
                           "diagonal entry (" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
                               ") must be 2",
                           i + 1, i + 1);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (m.at(i, j).sign() > 0)
                throw GcmError(GcmError::Kind::PositiveOffDiagonal,
                               "off-diagonal entry (" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ") must be <= 0",
                               i + 1, j + 1);
            if (m.at(i, j).is_zero() != m.at(j, i).is_zero())
                throw GcmError(GcmError::Kind::AsymmetricZero,
                               "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   ") and (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                   ") must vanish together",
                               m.at(i, j).is_zero() ? i + 1 : j + 1,
                               m.at(i, j).is_zero() ? j + 1 : i + 1);
        }
    }
    return Gcm{n, m};
}

/// Connected components of the off-diagonal support graph, each sorted,
/// ordered by smallest member (0-based indices).
inline std::vector<std::vector<int>> components(const Gcm& g) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(g.n, false);
    for (int start = 0; start < g.n; ++start) {
        if (seen[start]) continue;
        std::vector<int> comp, stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w = 0; w < g.n; ++w)
                if (!seen[w] && !g.at(v, w).is_zero()) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool indecomposable(const Gcm& g) { return components(g).size() == 1; }

inline Gcm principal_submatrix(const Gcm& g, const std::vector<int>& subset) {
    if (subset.empty())
        throw GcmError(GcmError::Kind::EmptySubset, "principal submatrix needs a nonempty subset");
    IntMatrix m(static_cast<int>(subset.size()), static_cast<int>(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = 0; j < subset.size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = g.at(subset[i], subset[j]);
    return Gcm{static_cast<int>(subset.size()), std::move(m)};
}

enum class CartanType { Finite, Affine, Indefinite };

struct CartanClass {
    CartanType type = CartanType::Indefinite;
    bool hyperbolic = false;  // meaningful only for Indefinite

    friend bool operator==(const CartanClass&, const CartanClass&) = default;
};

namespace detail {

// Determinant signs over all principal submatrices drive the trichotomy:
// finite iff every principal minor is positive; affine iff the full
// determinant vanishes and every proper principal minor is positive.
inline CartanType cartan_type(const Gcm& g) {
    const int n = g.n;
    bool all_proper_positive = true;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        if (determinant(principal_submatrix(g, subset).a).sign() <= 0) {
            all_proper_positive = false;
            break;
        }
    }
    const int full = determinant(g.a).sign();
    if (all_proper_positive && full > 0) return CartanType::Finite;
    if (all_proper_positive && full == 0) return CartanType::Affine;
    return CartanType::Indefinite;
}

}  // namespace detail

inline bool is_hyperbolic(const Gcm& g);

inline CartanClass classify_indecomposable(const Gcm& g) {
    if (!indecomposable(g))
        throw GcmError(GcmError::Kind::Decomposable, "classification needs an indecomposable GCM");
    CartanClass c;
    c.type = detail::cartan_type(g);
    if (c.type == CartanType::Indefinite) c.hyperbolic = is_hyperbolic(g);
    return c;
}

struct BlockClass {
    std::vector<int> block;  // 0-based indices into the original matrix
    CartanClass cls;
};

/// Blockwise classification; a single block for indecomposable input.
inline std::vector<BlockClass> classify(const Gcm& g) {
    std::vector<BlockClass> out;
    for (auto& comp : components(g))
        out.push_back({comp, classify_indecomposable(principal_submatrix(g, comp))});
    return out;
}

/// Indefinite, indecomposable, and every maximal proper principal submatrix
/// splits into finite or affine blocks. Maximal subsets suffice: principal
/// submatrices of finite/affine blocks stay finite or affine.
inline bool is_hyperbolic(const Gcm& g) {
    if (g.n < 2 || !indecomposable(g)) return false;
    if (detail::cartan_type(g) != CartanType::Indefinite) return false;
    for (int drop = 0; drop < g.n; ++drop) {
        std::vector<int> subset;
        for (int i = 0; i < g.n; ++i)
            if (i != drop) subset.push_back(i);
        Gcm sub = principal_submatrix(g, subset);
        for (auto& comp : components(sub)) {
            if (detail::cartan_type(principal_submatrix(sub, comp)) == CartanType::Indefinite)
                return false;
        }
    }
    return true;
}

enum class ColumnParity { OddPresent, AllEven };

/// Column i is OddPresent iff some off-diagonal entry in column i is odd.
inline std::vector<ColumnParity> column_parity(const Gcm& g) {
    std::vector<ColumnParity> out(g.n, ColumnParity::AllEven);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            if (i != j && g.at(i, j).odd()) {
                out[j] = ColumnParity::OddPresent;
                break;
            }
    return out;
}

/// Relabel simple roots: b[i][j] = a[perm[i]][perm[j]].
inline Gcm apply_permutation(const Gcm& g, const std::vector<int>& perm) {
    IntMatrix m(g.n, g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) m.at(i, j) = g.at(perm[i], perm[j]);
    return Gcm{g.n, std::move(m)};
}

}  // namespace k2km
