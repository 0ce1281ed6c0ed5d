#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "k2km/bigint.hpp"
#include "k2km/gcm.hpp"
#include "k2km/matrix.hpp"
#include "k2km/presentation.hpp"
#include "k2km/snf.hpp"

namespace k2km {

/// One factor of the canonical product:
///   Symbol r=0   K2(F)            Symbol r>=2  K2(F)/rK2(F)
///   Cocycle r=0  K2(2,F)          Cocycle r>=1 K2(2,F)/r<{u^2,v}>
/// Symbol(1) is the trivial group and never survives canonicalize;
/// Cocycle(1) is not trivial (it is the I^2(F) quotient).
struct K2Factor {
    enum class Kind { Symbol, Cocycle };
    Kind kind;
    BigInt r;

    friend bool operator==(const K2Factor& a, const K2Factor& b) {
        return a.kind == b.kind && a.r == b.r;
    }
    friend bool operator<(const K2Factor& a, const K2Factor& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.r < b.r;
    }
};

inline K2Factor symbol_part(BigInt r) { return {K2Factor::Kind::Symbol, std::move(r)}; }
inline K2Factor cocycle_part(BigInt r) { return {K2Factor::Kind::Cocycle, std::move(r)}; }

inline std::string factor_name(const K2Factor& f) {
    if (f.kind == K2Factor::Kind::Symbol)
        return f.r.is_zero() ? "K2(F)" : "K2(F)/" + f.r.to_string() + "K2(F)";
    if (f.r.is_zero()) return "K2(2,F)";
    if (f.r.is_one()) return "K2(2,F)/<{u^2,v}>";
    return "K2(2,F)/" + f.r.to_string() + "<{u^2,v}>";
}

inline std::string factors_to_string(const std::vector<K2Factor>& fs) {
    if (fs.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < fs.size(); ++k) {
        if (k) out += " x ";
        out += factor_name(fs[k]);
    }
    return out;
}

/// Inverse of factor_name / factors_to_string; accepts "1" for the
/// trivial product. Throws std::invalid_argument on malformed text.
inline std::vector<K2Factor> parse_factors_text(const std::string& text);

/// Trivial Symbol(1) dropped, quotient integers made nonnegative,
/// multiset sorted by (kind, r). No CRT splitting here.
inline std::vector<K2Factor> canonicalize(std::vector<K2Factor> fs) {
    std::vector<K2Factor> out;
    out.reserve(fs.size());
    for (auto& f : fs) {
        f.r = f.r.abs();
        if (f.kind == K2Factor::Kind::Symbol && f.r.is_one()) continue;
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Equality up to the CRT isomorphism M/rsM = M/rM x M/sM for coprime r, s,
/// valid for quotients of the K2(F) parts only. Cocycle parts compare
/// verbatim: quotients by r<{u^2,v}> do not split over coprime factors.
inline bool k2_equiv(const std::vector<K2Factor>& x, const std::vector<K2Factor>& y) {
    auto explode = [](const std::vector<K2Factor>& fs) {
        std::vector<K2Factor> out;
        for (const auto& f : fs) {
            if (f.kind == K2Factor::Kind::Symbol && f.r >= BigInt(2)) {
                for (auto& [p, e] : factorize(f.r)) {
                    BigInt pe(1);
                    for (int k = 0; k < e; ++k) pe *= p;
                    out.push_back(symbol_part(pe));
                }
            } else if (!(f.kind == K2Factor::Kind::Symbol && f.r.is_one())) {
                out.push_back(f);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    return explode(x) == explode(y);
}

struct TraceStep {
    std::string rule;
    std::string detail;
    std::string citation;
};

struct K2Result {
    bool resolved = false;
    std::vector<K2Factor> factors;            // canonical when resolved
    std::optional<GenPresentation> residual;  // present when unresolved
    std::vector<TraceStep> trace;
};

class K2Error : public std::runtime_error {
public:
    enum class Kind { NotFiniteOrAffine, ColumnNotOdd, NoClassMatch, NotIndecomposable, BadArgument };

    K2Error(Kind kind, std::string msg) : std::runtime_error(std::move(msg)), kind(kind) {}

    Kind kind;
};

struct CatalogHit {
    std::string id;
    std::vector<K2Factor> expected;
};

struct K2Options {
    bool enable_delete = true;
    bool enable_class_formulas = true;
    bool force_delete_first = false;  // run the presentation machinery before closed forms
    std::function<std::optional<CatalogHit>(const Gcm&)> catalog_lookup;  // rule of last resort
};

// --------------------------------------------------------------------------
// individual reduction rules
// --------------------------------------------------------------------------

inline std::vector<Gcm> split_components(const Gcm& g) {
    std::vector<Gcm> out;
    for (auto& comp : components(g)) out.push_back(principal_submatrix(g, comp));
    return out;
}

inline bool simply_laced(const Gcm& g) {
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (i != j && !g.at(i, j).is_zero() && g.at(i, j) != BigInt(-1)) return false;
    return true;
}

inline bool all_columns_odd(const Gcm& g) {
    auto par = column_parity(g);
    return std::all_of(par.begin(), par.end(),
                       [](ColumnParity p) { return p == ColumnParity::OddPresent; });
}

inline int count_even_columns(const Gcm& g) {
    auto par = column_parity(g);
    return static_cast<int>(std::count(par.begin(), par.end(), ColumnParity::AllEven));
}

/// Closed forms for finite and affine types. Among finite types exactly the
/// symplectic chain C_n (with C_1 = A_1 and C_2 = B_2) has an all-even
/// column, and it is the one K2(2,F) case. Among affine types the C-chain
/// has two all-even columns and yields the affine-A1 product; the twisted-A
/// shapes have exactly one and collapse to K2(2,F); everything else keeps
/// odd columns throughout and gives K2(F).
inline std::vector<K2Factor> finite_affine_closed_form(const Gcm& g, const CartanClass& cls) {
    if (!indecomposable(g))
        throw K2Error(K2Error::Kind::NotIndecomposable, "closed form needs an indecomposable GCM");
    if (cls.type == CartanType::Indefinite)
        throw K2Error(K2Error::Kind::NotFiniteOrAffine, "closed form covers finite and affine only");
    const int even_cols = count_even_columns(g);
    if (cls.type == CartanType::Finite) {
        if (even_cols > 0) return canonicalize({cocycle_part(0)});
        return canonicalize({symbol_part(0)});
    }
    if (even_cols >= 2) return canonicalize({cocycle_part(0), cocycle_part(1)});
    if (even_cols == 1) return canonicalize({cocycle_part(0)});
    return canonicalize({symbol_part(0)});
}

/// Every column has an odd entry: the exponent group G with one relation
/// x_i^(a_ji) = x_j^(a_ij) per linked pair determines the answer through
/// its invariant factors.
inline std::vector<K2Factor> reduce_odd_columns(const Gcm& g) {
    if (!indecomposable(g))
        throw K2Error(K2Error::Kind::NotIndecomposable, "odd-column rule needs an indecomposable GCM");
    if (!all_columns_odd(g))
        throw K2Error(K2Error::Kind::ColumnNotOdd, "odd-column rule needs an odd entry in every column");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (!g.at(i, j).is_zero()) pairs.emplace_back(i, j);
    IntMatrix rel(static_cast<int>(pairs.size()), g.n);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [i, j] = pairs[r];
        rel.at(static_cast<int>(r), i) = g.at(j, i);
        rel.at(static_cast<int>(r), j) = -g.at(i, j);
    }
    auto ab = invariant_factors(rel, g.n);
    std::vector<K2Factor> out;
    for (const auto& r : ab.chain) out.push_back(symbol_part(r));
    return canonicalize(std::move(out));
}

/// Rank-2 closed forms for [[2,-b],[-a,2]], a, b >= 1, by parity:
/// both even ............ K2(2,F) x K2(2,F)/h<{u^2,v}>, h = gcd(a/2, b/2)
/// exactly one odd ....... K2(F)/hK2(F) x K2(2,F),      h = gcd(a, b)
/// both odd .............. K2(F)/hK2(F) x K2(F),        h = gcd(a, b)
inline std::vector<K2Factor> reduce_rank2(const BigInt& a, const BigInt& b) {
    if (a.sign() <= 0 || b.sign() <= 0)
        throw K2Error(K2Error::Kind::BadArgument, "rank-2 closed form needs positive entries");
    if (a.even() && b.even()) {
        BigInt h = gcd(a / BigInt(2), b / BigInt(2));
        return canonicalize({cocycle_part(0), cocycle_part(h)});
    }
    BigInt h = gcd(a, b);
    if (a.odd() && b.odd()) return canonicalize({symbol_part(h), symbol_part(0)});
    return canonicalize({symbol_part(h), cocycle_part(0)});
}

struct ClassFormulaResult {
    std::vector<K2Factor> factors;
    std::string which;  // "class1" | "class2" | "class3"
};

/// The three 3x3 families with printable closed forms, matched up to
/// simultaneous permutation.
inline ClassFormulaResult reduce_class_formulas(const Gcm& g) {
    if (g.n != 3) throw K2Error(K2Error::Kind::NoClassMatch, "class formulas cover 3x3 GCMs only");
    static const std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const IntMatrix class3_full = IntMatrix{{2, -2, -2}, {-2, 2, -2}, {-2, -2, 2}};
    const IntMatrix class3_path = IntMatrix{{2, -2, 0}, {-2, 2, -2}, {0, -2, 2}};
    for (const auto& perm : perms) {
        Gcm b = apply_permutation(g, perm);
        if (b.a == class3_full || b.a == class3_path)
            return {canonicalize({cocycle_part(0), cocycle_part(1), cocycle_part(1)}), "class3"};
    }
    auto nonzero_offdiag = [](const Gcm& b) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j && b.at(i, j).is_zero()) return false;
        return true;
    };
    for (const auto& perm : perms) {
        Gcm b = apply_permutation(g, perm);
        if (!nonzero_offdiag(b)) continue;
        // [[2,-a,-b],[-c,2,-d],[-1,-1,2]] with b, d even -> (ad-bc)/2
        if (b.at(2, 0) == BigInt(-1) && b.at(2, 1) == BigInt(-1) && b.at(0, 2).even() &&
            b.at(1, 2).even()) {
            BigInt a = -b.at(0, 1), bb = -b.at(0, 2), c = -b.at(1, 0), d = -b.at(1, 2);
            return {canonicalize({cocycle_part((a * d - bb * c) / BigInt(2))}), "class1"};
        }
    }
    for (const auto& perm : perms) {
        Gcm b = apply_permutation(g, perm);
        if (!nonzero_offdiag(b)) continue;
        // [[2,-1,-a],[-b,2,-c],[-1,-d,2]] with a, c even -> (abd-c)/2
        if (b.at(0, 1) == BigInt(-1) && b.at(2, 0) == BigInt(-1) && b.at(0, 2).even() &&
            b.at(1, 2).even()) {
            BigInt a = -b.at(0, 2), bb = -b.at(1, 0), c = -b.at(1, 2), d = -b.at(2, 1);
            return {canonicalize({cocycle_part((a * bb * d - c) / BigInt(2))}), "class2"};
        }
    }
    throw K2Error(K2Error::Kind::NoClassMatch, "no 3x3 family pattern matches");
}

// --------------------------------------------------------------------------
// residual presentations
// --------------------------------------------------------------------------

namespace detail {

/// Linear coordinate of {u^p,v}_i: the symbol generator itself for Symbol
/// slots, the even-part generator {u^2,v}_i for Cocycle slots.
inline BigInt linear_coeff(const GenPresentation& p, int slot, const BigInt& e) {
    if (p.slots[slot] == SlotKind::Cocycle) {
        check_cocycle_even(p, slot, e);
        return e / BigInt(2);
    }
    return e;
}

inline std::vector<std::vector<BigInt>> lattice_rows(const GenPresentation& p) {
    std::vector<std::vector<BigInt>> rows;
    const int k = p.size();
    for (const auto& l : p.links) {
        if (l.degenerate()) continue;
        std::vector<BigInt> row(k);
        row[l.i] += linear_coeff(p, l.i, l.p);
        row[l.j] -= linear_coeff(p, l.j, l.q);
        rows.push_back(std::move(row));
    }
    for (const auto& t : p.torsions) {
        std::vector<BigInt> row(k);
        row[t.i] = t.m * linear_coeff(p, t.i, t.p);
        rows.push_back(std::move(row));
    }
    std::erase_if(rows, [](const std::vector<BigInt>& r) {
        return std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x.is_zero(); });
    });
    return rows;
}

inline BigInt floordiv(const BigInt& a, const BigInt& b) {
    auto [q, r] = BigInt::divmod(a, b);
    if (!r.is_zero() && (r.sign() < 0) != (b.sign() < 0)) q -= BigInt(1);
    return q;
}

/// Hermite-style reduction by integer row operations only (these re-choose
/// generators of the same relation subgroup, so they are always sound).
inline std::vector<std::vector<BigInt>> hnf_rows(std::vector<std::vector<BigInt>> rows, int ncols) {
    int r = 0;
    for (int col = 0; col < ncols && r < static_cast<int>(rows.size()); ++col) {
        while (true) {
            int best = -1;
            for (int i = r; i < static_cast<int>(rows.size()); ++i) {
                if (rows[i][col].is_zero()) continue;
                if (best < 0 || rows[i][col].abs() < rows[best][col].abs()) best = i;
            }
            if (best < 0) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
                if (rows[i][col].is_zero()) continue;
                BigInt q = rows[i][col] / rows[r][col];
                for (int j = 0; j < ncols; ++j) rows[i][j] -= q * rows[r][j];
                if (!rows[i][col].is_zero()) clean = false;
            }
            if (clean) break;
        }
        if (r < static_cast<int>(rows.size()) && !rows[r][col].is_zero()) {
            if (rows[r][col].sign() < 0)
                for (int j = 0; j < ncols; ++j) rows[r][j] = -rows[r][j];
            for (int i = 0; i < r; ++i) {
                if (rows[i][col].is_zero()) continue;
                BigInt q = floordiv(rows[i][col], rows[r][col]);
                if (q.is_zero()) continue;
                for (int j = 0; j < ncols; ++j) rows[i][j] -= q * rows[r][j];
            }
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

struct ResidualComponent {
    std::vector<int> slots;                  // indices into the presentation
    std::vector<std::vector<BigInt>> rows;   // restricted to those columns
};

inline std::vector<ResidualComponent> residual_components(const GenPresentation& p) {
    auto rows = lattice_rows(p);
    const int k = p.size();
    std::vector<int> parent(k);
    for (int i = 0; i < k; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& row : rows) {
        int first = -1;
        for (int j = 0; j < k; ++j) {
            if (row[j].is_zero()) continue;
            if (first < 0)
                first = j;
            else
                parent[find(j)] = find(first);
        }
    }
    std::vector<ResidualComponent> comps;
    std::vector<int> comp_of(k, -1);
    for (int i = 0; i < k; ++i) {
        int root = find(i);
        bool fresh = true;
        for (int j = 0; j < i; ++j)
            if (find(j) == root) {
                comp_of[i] = comp_of[j];
                fresh = false;
                break;
            }
        if (fresh) {
            comp_of[i] = static_cast<int>(comps.size());
            comps.push_back({});
        }
        comps[comp_of[i]].slots.push_back(i);
    }
    for (const auto& row : rows) {
        int first = -1;
        for (int j = 0; j < k && first < 0; ++j)
            if (!row[j].is_zero()) first = j;
        if (first < 0) continue;
        auto& comp = comps[comp_of[first]];
        std::vector<BigInt> restricted;
        restricted.reserve(comp.slots.size());
        for (int s : comp.slots) restricted.push_back(row[s]);
        comp.rows.push_back(std::move(restricted));
    }
    return comps;
}

}  // namespace detail

/// Try to resolve a residual presentation into canonical factors using only
/// reductions with a proof behind them:
///  - disconnected slots resolve independently,
///  - a lattice that row-reduces to one coordinate per row quotients each
///    slot on its own,
///  - components living entirely on Symbol slots (or entirely on the even
///    parts of Cocycle slots) go through invariant factors,
///  - a Symbol/Cocycle pair with one link uses the rank-2 Bezout
///    constructions, with a torsion row allowed when the even part of the
///    cocycle slot is identified with a multiple of the symbol slot.
/// Anything else stays unresolved.
inline std::optional<std::vector<K2Factor>> resolve_residual(const GenPresentation& p,
                                                             std::vector<TraceStep>* trace) {
    std::vector<K2Factor> out;
    auto note = [&](std::string rule, std::string detail, std::string citation) {
        if (trace) trace->push_back({std::move(rule), std::move(detail), std::move(citation)});
    };
    for (auto& comp : detail::residual_components(p)) {
        const int k = static_cast<int>(comp.slots.size());
        if (comp.rows.empty()) {
            for (int s : comp.slots)
                out.push_back(p.slots[s] == SlotKind::Symbol ? symbol_part(0) : cocycle_part(0));
            continue;
        }
        const bool all_symbol = std::all_of(comp.slots.begin(), comp.slots.end(), [&](int s) {
            return p.slots[s] == SlotKind::Symbol;
        });
        const bool all_cocycle = std::all_of(comp.slots.begin(), comp.slots.end(), [&](int s) {
            return p.slots[s] == SlotKind::Cocycle;
        });
        if (all_symbol || all_cocycle) {
            IntMatrix rel(static_cast<int>(comp.rows.size()), k);
            for (std::size_t i = 0; i < comp.rows.size(); ++i)
                for (int j = 0; j < k; ++j) rel.at(static_cast<int>(i), j) = comp.rows[i][j];
            auto ab = invariant_factors(rel, k);
            std::string chain;
            for (const auto& r : ab.chain) chain += (chain.empty() ? "" : ",") + r.to_string();
            for (const auto& r : ab.chain)
                out.push_back(all_symbol ? symbol_part(r) : cocycle_part(r));
            if (all_symbol)
                note("residual-symbol-lattice", "invariant factors (" + chain + ")",
                     "transport of the finitely generated abelian group structure across K2(F) slots");
            else
                note("residual-cocycle-lattice", "invariant factors (" + chain + ")",
                     "transport across the even parts <{u^2,v}> of K2(2,F) slots, as in the "
                     "even-even rank-2 closed form");
            continue;
        }
        // mixed component
        auto rows = detail::hnf_rows(comp.rows, k);
        const bool axis = std::all_of(rows.begin(), rows.end(), [&](const std::vector<BigInt>& row) {
            int nz = 0;
            for (const auto& x : row) nz += !x.is_zero();
            return nz == 1;
        });
        if (axis) {
            std::vector<BigInt> quot(k, BigInt(0));
            for (const auto& row : rows)
                for (int j = 0; j < k; ++j)
                    if (!row[j].is_zero()) quot[j] = row[j].abs();
            for (int j = 0; j < k; ++j)
                out.push_back(p.slots[comp.slots[j]] == SlotKind::Symbol ? symbol_part(quot[j])
                                                                         : cocycle_part(quot[j]));
            note("residual-axis", "axis-aligned relation lattice",
                 "a product quotiented by a product of per-slot subgroups splits slotwise");
            continue;
        }
        if (k == 2) {
            // order the pair as (cocycle, symbol)
            int ci = p.slots[comp.slots[0]] == SlotKind::Cocycle ? 0 : 1;
            int si = 1 - ci;
            if (p.slots[comp.slots[ci]] == SlotKind::Cocycle &&
                p.slots[comp.slots[si]] == SlotKind::Symbol) {
                // re-reduce with the cocycle coordinate first so the shape is
                // (w, c) with optionally (0, m) below
                std::vector<std::vector<BigInt>> ordered;
                for (auto& row : rows) ordered.push_back({row[ci], row[si]});
                ordered = detail::hnf_rows(std::move(ordered), 2);
                if (ordered.size() <= 2 && !ordered.empty() && !ordered[0][0].is_zero()) {
                    const BigInt& w = ordered[0][0];
                    const BigInt c = ordered[0][1].abs();
                    BigInt m(0);
                    bool shape_ok = true;
                    if (ordered.size() == 2) {
                        if (ordered[1][0].is_zero())
                            m = ordered[1][1].abs();
                        else
                            shape_ok = false;
                    }
                    if (shape_ok && c.odd() && m.is_zero()) {
                        // w*omega = -c*x with c odd: the odd/even rank-2 form
                        BigInt h = gcd(c, BigInt(2) * w);
                        out.push_back(symbol_part(h));
                        out.push_back(cocycle_part(0));
                        note("residual-mixed-pair",
                             "link {u^" + c.to_string() + ",v} = {u^" + (BigInt(2) * w).to_string() +
                                 ",v} across a Symbol/Cocycle pair, gcd " + h.to_string(),
                             "rank-2 mixed closed form via Bezout, odd exponent on the K2(F) side");
                        continue;
                    }
                    if (shape_ok && c.even() && w.abs().is_one()) {
                        // omega identified with an even multiple of the symbol
                        // slot; the cocycle slot sheds its even part entirely
                        out.push_back(symbol_part(m));
                        out.push_back(cocycle_part(1));
                        note("residual-mixed-pair",
                             "even part of the K2(2,F) slot equals {u^" + c.to_string() +
                                 ",v} of the K2(F) slot" +
                                 (m.is_zero() ? std::string()
                                              : ", with torsion " + m.to_string() + " on the symbol slot"),
                             "absorbing <{u^2,v}> into the K2(F) slot leaves the I^2(F) quotient");
                        continue;
                    }
                }
            }
        }
        return std::nullopt;  // no proven pattern applies
    }
    return canonicalize(std::move(out));
}

// --------------------------------------------------------------------------
// the pipeline
// --------------------------------------------------------------------------

namespace detail {

inline std::string matrix_brief(const Gcm& g) {
    std::string s;
    for (int i = 0; i < g.n; ++i) {
        if (i) s += "; ";
        for (int j = 0; j < g.n; ++j) {
            if (j) s += " ";
            s += g.at(i, j).to_string();
        }
    }
    return s;
}

inline std::string class_name(const CartanClass& c) {
    switch (c.type) {
        case CartanType::Finite: return "finite";
        case CartanType::Affine: return "affine";
        default: return c.hyperbolic ? "indefinite (hyperbolic)" : "indefinite";
    }
}

inline K2Result k2_indecomposable(const Gcm& g, const K2Options& opts) {
    K2Result res;
    auto note = [&](std::string rule, std::string detail, std::string citation) {
        res.trace.push_back({std::move(rule), std::move(detail), std::move(citation)});
    };
    auto finish = [&](std::vector<K2Factor> fs) {
        res.resolved = true;
        res.factors = canonicalize(std::move(fs));
        return res;
    };

    CartanClass cls = classify_indecomposable(g);
    note("classify", class_name(cls),
         "finite/affine/indefinite trichotomy by signs of principal minor determinants");

    auto presentation_machinery = [&]() -> std::optional<std::vector<K2Factor>> {
        GenPresentation pres = build_presentation(g);
        note("presentation",
             "slots " + std::to_string(pres.size()) + ", links " + std::to_string(pres.links.size()),
             "Matsumoto-type presentation: one K2(F) or K2(2,F) component per column, glued at "
             "exponent level");
        bool progressed = true;
        while (progressed) {
            progressed = false;
            while (auto ts = find_deletable(pres, /*respect_guard=*/true)) {
                auto [t, s] = *ts;
                int lt = pres.labels[t], ls = pres.labels[s];
                pres = reduce_delete_column(pres, t, s);
                progressed = true;
                note("delete-column", "slot " + std::to_string(lt) + " folded through slot " +
                                          std::to_string(ls),
                     "a unit-exponent link lets a K2(F) slot be eliminated, re-anchoring its "
                     "relations");
            }
            if (auto fs = resolve_residual(pres, &res.trace)) return fs;
            if (auto ts = find_deletable(pres, /*respect_guard=*/false)) {
                auto [t, s] = *ts;
                int lt = pres.labels[t], ls = pres.labels[s];
                pres = reduce_delete_column(pres, t, s, /*respect_guard=*/false);
                progressed = true;
                note("symbol-substitution", "slot " + std::to_string(lt) + " folded through slot " +
                                                std::to_string(ls),
                     "general unit-link elimination; slot kinds are fixed by the original columns, "
                     "so the parity exception cannot arise at presentation level");
            }
        }
        res.residual = pres;
        return std::nullopt;
    };

    if (opts.force_delete_first && opts.enable_delete) {
        if (auto fs = presentation_machinery()) return finish(std::move(*fs));
    }

    if (cls.type != CartanType::Indefinite) {
        auto fs = finite_affine_closed_form(g, cls);
        note(cls.type == CartanType::Finite ? "finite-closed-form" : "affine-closed-form",
             factors_to_string(fs),
             cls.type == CartanType::Finite
                 ? "Matsumoto's theorem: K2(F) in finite type, K2(2,F) exactly for the symplectic "
                   "chain"
                 : "affine closed forms by unit-column deletions; the C-chain collapses to the "
                   "rank-2 all-even case");
        return finish(std::move(fs));
    }

    if (g.n >= 2 && simply_laced(g)) {
        note("simply-laced", "all off-diagonal entries 0 or -1",
             "indecomposable simply-laced GCMs identify every slot, leaving a single K2(F)");
        return finish({symbol_part(0)});
    }

    if (all_columns_odd(g)) {
        auto fs = reduce_odd_columns(g);
        note("odd-columns", factors_to_string(fs),
             "with an odd entry in every column, the invariant factors of the exponent group "
             "give the K2(F) quotients");
        return finish(std::move(fs));
    }

    if (g.n == 2) {
        BigInt a = -g.at(1, 0), b = -g.at(0, 1);
        auto fs = reduce_rank2(a, b);
        note("rank2-closed-form",
             "a=" + a.to_string() + " b=" + b.to_string() + ": " + factors_to_string(fs),
             "rank-2 closed forms by parity of the two entries and their gcd");
        return finish(std::move(fs));
    }

    if (opts.enable_delete && !opts.force_delete_first) {
        if (auto fs = presentation_machinery()) return finish(std::move(*fs));
    }

    if (opts.enable_class_formulas && g.n == 3) {
        try {
            auto cf = reduce_class_formulas(g);
            note(cf.which, factors_to_string(cf.factors),
                 cf.which == "class3"
                     ? "the two symmetric all-even 3x3 matrices share one product of quotients"
                     : "3x3 family formula: a half-determinant of the non-unit block quotients "
                       "K2(2,F)");
            return finish(std::move(cf.factors));
        } catch (const K2Error&) {
        }
    }

    if (opts.catalog_lookup) {
        if (auto hit = opts.catalog_lookup(g)) {
            note("catalog-table", "entry " + hit->id + ": " + factors_to_string(hit->expected),
                 "published table of hyperbolic K2 results, matched up to simultaneous permutation");
            return finish(std::move(hit->expected));
        }
    }

    if (!res.residual) res.residual = build_presentation(g);
    note("unresolved", "no reduction rule resolves the residual presentation",
         "the remaining identifications have no proven product-of-quotients form");
    res.resolved = false;
    return res;
}

}  // namespace detail

/// Full pipeline: component split, closed forms, rewrite rules, catalog.
/// Unresolved is a value, not an error.
inline K2Result k2_run(const Gcm& g, const K2Options& opts = {}) {
    auto comps = components(g);
    if (comps.size() == 1) return detail::k2_indecomposable(g, opts);
    K2Result res;
    res.resolved = true;
    std::string blocks;
    for (std::size_t b = 0; b < comps.size(); ++b) {
        if (b) blocks += " | ";
        for (std::size_t k = 0; k < comps[b].size(); ++k)
            blocks += (k ? "," : "") + std::to_string(comps[b][k] + 1);
    }
    res.trace.push_back({"split", "blocks " + blocks,
                         "zero entries make the linking relations trivial, so K2 is the product "
                         "over indecomposable blocks"});
    for (const auto& comp : comps) {
        Gcm block = principal_submatrix(g, comp);
        K2Result sub = detail::k2_indecomposable(block, opts);
        for (auto& step : sub.trace) {
            step.detail = "[block " + std::to_string(comp.front() + 1) + ".." +
                          std::to_string(comp.back() + 1) + "] " + step.detail;
            res.trace.push_back(std::move(step));
        }
        if (!sub.resolved) {
            res.resolved = false;
            res.residual = std::move(sub.residual);
            return res;
        }
        res.factors.insert(res.factors.end(), sub.factors.begin(), sub.factors.end());
    }
    res.factors = canonicalize(std::move(res.factors));
    return res;
}

// --------------------------------------------------------------------------
// the predicted decomposition and its checker
// --------------------------------------------------------------------------

/// Predicted product of quotients: reorder columns odd-first, compute the
/// exponent group's canonical decomposition with both transforms, then
/// type each canonical generator by the stated parity conditions on the
/// transforms and quotient accordingly. Depends on the Smith normal form
/// transform; this implementation pins the deterministic smallest-pivot
/// strategy and says so in the trace.
inline K2Result conjecture_predict(const Gcm& g) {
    if (!indecomposable(g))
        throw K2Error(K2Error::Kind::NotIndecomposable, "prediction needs an indecomposable GCM");
    K2Result res;
    auto parity = column_parity(g);
    std::vector<int> perm;
    for (int i = 0; i < g.n; ++i)
        if (parity[i] == ColumnParity::OddPresent) perm.push_back(i);
    const int k = static_cast<int>(perm.size());
    for (int i = 0; i < g.n; ++i)
        if (parity[i] == ColumnParity::AllEven) perm.push_back(i);
    Gcm gp = apply_permutation(g, perm);

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < gp.n; ++i)
        for (int j = i + 1; j < gp.n; ++j)
            if (!gp.at(i, j).is_zero()) pairs.emplace_back(i, j);
    IntMatrix rel(static_cast<int>(pairs.size()), gp.n);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [i, j] = pairs[r];
        rel.at(static_cast<int>(r), i) = gp.at(j, i);
        rel.at(static_cast<int>(r), j) = -gp.at(i, j);
    }
    auto ab = invariant_factors(rel, gp.n);

    std::string chain;
    for (const auto& r : ab.chain) chain += (chain.empty() ? "" : ",") + r.to_string();
    res.trace.push_back({"conjecture-transform",
                         "odd columns " + std::to_string(k) + "/" + std::to_string(g.n) +
                             ", canonical orders (" + chain + ")",
                         "exponent group decomposition via deterministic smallest-pivot Smith "
                         "normal form; the parity conditions below are read off its transforms"});

    std::vector<K2Factor> fs;
    for (int i = 0; i < gp.n; ++i) {
        bool nu_even = true;
        for (int j = k; j < gp.n; ++j)
            if (ab.from_canonical.at(j, i).odd()) {
                nu_even = false;
                break;
            }
        bool mu_odd = false;
        for (int j = 0; j < k; ++j)
            if (ab.to_canonical.at(i, j).odd()) {
                mu_odd = true;
                break;
            }
        const BigInt& r = ab.chain[i];
        if (nu_even && mu_odd) {
            fs.push_back(symbol_part(r));
            res.trace.push_back({"conjecture-slot",
                                 "generator " + std::to_string(i + 1) + ": K2(F)/" + r.to_string(),
                                 "even image in the all-even generators and an odd preimage "
                                 "exponent select the K2(F) quotient"});
        } else {
            if (r.odd()) {
                res.resolved = false;
                res.trace.push_back(
                    {"conjecture-unresolved",
                     "generator " + std::to_string(i + 1) + " needs K2(2,F)/(" + r.to_string() +
                         "/2)<{u^2,v}> but its order is odd",
                     "the K2(2,F) quotient is defined only for even canonical orders"});
                return res;
            }
            fs.push_back(cocycle_part(r / BigInt(2)));
            res.trace.push_back({"conjecture-slot",
                                 "generator " + std::to_string(i + 1) + ": K2(2,F)/(" +
                                     r.to_string() + "/2)<{u^2,v}>",
                                 "the complementary parity pattern selects the K2(2,F) quotient"});
        }
    }
    res.resolved = true;
    res.factors = canonicalize(std::move(fs));
    return res;
}

enum class ConjectureVerdict { Agree, Disagree, Unknown };

struct ConjectureReport {
    ConjectureVerdict verdict = ConjectureVerdict::Unknown;
    std::string detail;
    K2Result pipeline;
    K2Result predicted;
    bool lattice_ok = false;    // J generators map into the target relation lattice
    bool roundtrip_ok = false;  // composed transforms are the identity modulo relations
};

/// Necessary-condition checker, not a proof: compares the rule pipeline
/// against the predicted decomposition under k2_equiv, and verifies the
/// exponent-level conditions on the candidate transforms.
inline ConjectureReport conjecture_check(const Gcm& g, const K2Options& opts = {}) {
    ConjectureReport rep;
    rep.pipeline = k2_run(g, opts);
    rep.predicted = conjecture_predict(g);
    if (!rep.pipeline.resolved || !rep.predicted.resolved) {
        rep.verdict = ConjectureVerdict::Unknown;
        rep.detail = !rep.pipeline.resolved ? "rule pipeline left a residual presentation"
                                            : "prediction hit an odd canonical order";
        return rep;
    }

    // recompute the permuted exponent group exactly as conjecture_predict does
    auto parity = column_parity(g);
    std::vector<int> perm;
    for (int i = 0; i < g.n; ++i)
        if (parity[i] == ColumnParity::OddPresent) perm.push_back(i);
    for (int i = 0; i < g.n; ++i)
        if (parity[i] == ColumnParity::AllEven) perm.push_back(i);
    Gcm gp = apply_permutation(g, perm);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < gp.n; ++i)
        for (int j = i + 1; j < gp.n; ++j)
            if (!gp.at(i, j).is_zero()) pairs.emplace_back(i, j);
    IntMatrix rel(static_cast<int>(pairs.size()), gp.n);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [i, j] = pairs[r];
        rel.at(static_cast<int>(r), i) = gp.at(j, i);
        rel.at(static_cast<int>(r), j) = -gp.at(i, j);
    }
    auto ab = invariant_factors(rel, gp.n);

    rep.lattice_ok = true;
    for (int r = 0; r < rel.rows() && rep.lattice_ok; ++r) {
        // image of the J generator under the candidate map, in y-exponents
        for (int l = 0; l < gp.n; ++l) {
            BigInt img;
            for (int i = 0; i < gp.n; ++i) img += ab.to_canonical.at(l, i) * rel.at(r, i);
            const BigInt& rl = ab.chain[l];
            if (rl.is_zero() ? !img.is_zero() : !img.divisible_by(rl)) {
                rep.lattice_ok = false;
                break;
            }
        }
    }

    rep.roundtrip_ok = true;
    IntMatrix compose = ab.from_canonical * ab.to_canonical;
    for (int i = 0; i < gp.n && rep.roundtrip_ok; ++i) {
        std::vector<BigInt> w(gp.n);
        for (int j = 0; j < gp.n; ++j) {
            w[j] = compose.at(j, i);
            if (j == i) w[j] -= BigInt(1);
        }
        if (!in_relation_lattice(ab, w)) rep.roundtrip_ok = false;
    }

    bool equiv = k2_equiv(rep.pipeline.factors, rep.predicted.factors);
    if (equiv && rep.lattice_ok && rep.roundtrip_ok) {
        rep.verdict = ConjectureVerdict::Agree;
        rep.detail = "prediction matches the rule pipeline and the transform conditions hold";
    } else {
        rep.verdict = ConjectureVerdict::Disagree;
        rep.detail = std::string("mismatch:") + (equiv ? "" : " factors differ") +
                     (rep.lattice_ok ? "" : " J image leaves the target lattice") +
                     (rep.roundtrip_ok ? "" : " transforms fail the round trip") +
                     "; the parity conditions were read off the pinned smallest-pivot transform "
                     "and are not transform-invariant, so a different canonical basis may agree";
    }
    return rep;
}

// --------------------------------------------------------------------------

inline std::vector<K2Factor> parse_factors_text(const std::string& text) {
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t");
        std::size_t e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string t = trim(text);
    if (t == "1") return {};
    std::vector<K2Factor> out;
    std::size_t pos = 0;
    while (pos <= t.size()) {
        std::size_t sep = t.find(" x ", pos);
        std::string tok = trim(sep == std::string::npos ? t.substr(pos) : t.substr(pos, sep - pos));
        if (tok.empty()) throw std::invalid_argument("empty factor in '" + text + "'");
        if (tok == "K2(F)") {
            out.push_back(symbol_part(0));
        } else if (tok == "K2(2,F)") {
            out.push_back(cocycle_part(0));
        } else if (tok.rfind("K2(F)/", 0) == 0) {
            std::string rest = tok.substr(6);
            std::size_t tail = rest.rfind("K2(F)");
            if (tail == std::string::npos || tail + 5 != rest.size())
                throw std::invalid_argument("bad factor '" + tok + "'");
            out.push_back(symbol_part(BigInt(rest.substr(0, tail))));
        } else if (tok.rfind("K2(2,F)/", 0) == 0) {
            std::string rest = tok.substr(8);
            std::string suffix = "<{u^2,v}>";
            if (rest.size() < suffix.size() ||
                rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) != 0)
                throw std::invalid_argument("bad factor '" + tok + "'");
            std::string num = rest.substr(0, rest.size() - suffix.size());
            out.push_back(cocycle_part(num.empty() ? BigInt(1) : BigInt(num)));
        } else {
            throw std::invalid_argument("unknown factor '" + tok + "'");
        }
        if (sep == std::string::npos) break;
        pos = sep + 3;
    }
    return out;
}

}  // namespace k2km
