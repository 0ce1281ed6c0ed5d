#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "k2km/bigint.hpp"
#include "k2km/matrix.hpp"

namespace k2km {

/// Smith normal form u*M*v = diag(d). u, v unimodular; d nonnegative with
/// d[k] | d[k+1] and zeros only at the tail. v_inv carries the inverse of v
/// so cokernel generators can be mapped both ways without a separate solve.
struct SnfResult {
    std::vector<BigInt> d;
    IntMatrix u;
    IntMatrix v;
    IntMatrix v_inv;

    IntMatrix diagonal(int rows, int cols) const {
        IntMatrix m(rows, cols);
        for (std::size_t k = 0; k < d.size(); ++k) m.at(static_cast<int>(k), static_cast<int>(k)) = d[k];
        return m;
    }
};

/// Deterministic pivoting: smallest nonzero magnitude, lowest (row, col) on ties.
inline SnfResult smith_normal_form(const IntMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    IntMatrix vi = IntMatrix::identity(cols);
    const int nmin = rows < cols ? rows : cols;

    auto find_pivot = [&](int s) -> std::optional<std::pair<int, int>> {
        std::optional<std::pair<int, int>> best;
        BigInt best_abs;
        for (int i = s; i < rows; ++i)
            for (int j = s; j < cols; ++j) {
                if (d.at(i, j).is_zero()) continue;
                BigInt a = d.at(i, j).abs();
                if (!best || a < best_abs) {
                    best = {i, j};
                    best_abs = a;
                }
            }
        return best;
    };

    for (int s = 0; s < nmin; ++s) {
        bool done = false;
        while (!done) {
            auto piv = find_pivot(s);
            if (!piv) {
                done = true;  // remaining block is zero; d[s..] stay 0
                break;
            }
            auto [pi, pj] = *piv;
            d.swap_rows(s, pi);
            u.swap_rows(s, pi);
            d.swap_cols(s, pj);
            v.swap_cols(s, pj);
            vi.swap_rows(s, pj);

            bool clean = true;
            for (int i = s + 1; i < rows; ++i) {
                if (d.at(i, s).is_zero()) continue;
                BigInt q = d.at(i, s) / d.at(s, s);
                if (!q.is_zero()) {
                    d.add_row(i, s, -q);
                    u.add_row(i, s, -q);
                }
                if (!d.at(i, s).is_zero()) clean = false;
            }
            for (int j = s + 1; j < cols; ++j) {
                if (d.at(s, j).is_zero()) continue;
                BigInt q = d.at(s, j) / d.at(s, s);
                if (!q.is_zero()) {
                    d.add_col(j, s, -q);
                    v.add_col(j, s, -q);
                    vi.add_row(s, j, q);
                }
                if (!d.at(s, j).is_zero()) clean = false;
            }
            if (!clean) continue;

            // pivot divides everything below-right, or pull an offender in
            std::optional<std::pair<int, int>> offender;
            for (int i = s + 1; i < rows && !offender; ++i)
                for (int j = s + 1; j < cols && !offender; ++j)
                    if (!d.at(i, j).divisible_by(d.at(s, s))) offender = {i, j};
            if (offender) {
                d.add_row(s, offender->first, BigInt(1));
                u.add_row(s, offender->first, BigInt(1));
            } else {
                done = true;
            }
        }
        if (d.at(s, s).sign() < 0) {
            d.negate_row(s);
            u.negate_row(s);
        }
    }

    SnfResult out;
    out.d.reserve(nmin);
    for (int k = 0; k < nmin; ++k) out.d.push_back(d.at(k, k));
    out.u = std::move(u);
    out.v = std::move(v);
    out.v_inv = std::move(vi);
    return out;
}

/// Finitely generated abelian group presented by relation rows over
/// n generators: cokernel Z^n / rowspace.
///
/// chain lists the full diagonal (r_1..r_n, with 1s kept and 0s for free
/// generators); torsion is the trimmed view (entries >= 2). to_canonical
/// holds mu (phi(x_i) = prod_j y_j^{mu[j][i]}), from_canonical holds nu
/// (psi(y_i) = prod_j x_j^{nu[j][i]}); both stay full-size so the trimming
/// never desynchronizes the transforms.
struct AbelianStructure {
    int n_generators = 0;
    std::vector<BigInt> chain;
    std::vector<BigInt> torsion;
    int free_rank = 0;
    IntMatrix to_canonical;
    IntMatrix from_canonical;
    SnfResult snf;  // of the relation matrix, for lattice membership tests
    int relation_rows = 0;
};

inline AbelianStructure invariant_factors(const IntMatrix& relations, int n_generators) {
    if (relations.cols() != n_generators)
        throw std::invalid_argument("invariant_factors: relation columns != generator count");
    AbelianStructure s;
    s.n_generators = n_generators;
    s.relation_rows = relations.rows();
    s.snf = smith_normal_form(relations);
    s.chain.assign(static_cast<std::size_t>(n_generators), BigInt(0));
    for (std::size_t k = 0; k < s.snf.d.size(); ++k) s.chain[k] = s.snf.d[k];
    for (const BigInt& r : s.chain) {
        if (r.is_zero())
            ++s.free_rank;
        else if (!r.is_one())
            s.torsion.push_back(r);
    }
    s.to_canonical = s.snf.v.transpose();
    s.from_canonical = s.snf.v_inv.transpose();
    return s;
}

/// Does the exponent vector w lie in the row lattice of the relations?
inline bool in_relation_lattice(const AbelianStructure& s, const std::vector<BigInt>& w) {
    if (static_cast<int>(w.size()) != s.n_generators)
        throw std::invalid_argument("in_relation_lattice: bad vector length");
    // y = w * V, then y_k must be a multiple of d_k (and 0 past the rank)
    for (int k = 0; k < s.n_generators; ++k) {
        BigInt y;
        for (int i = 0; i < s.n_generators; ++i) y += w[i] * s.snf.v.at(i, k);
        const BigInt& dk = s.chain[k];
        if (dk.is_zero()) {
            if (!y.is_zero()) return false;
        } else if (!y.divisible_by(dk)) {
            return false;
        }
    }
    return true;
}

}  // namespace k2km
