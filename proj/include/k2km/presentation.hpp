#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "k2km/bigint.hpp"
#include "k2km/gcm.hpp"

namespace k2km {

/// Slot kinds of the Matsumoto-type presentation: a column with an odd
/// entry contributes a K2(F) component (Symbol), an all-even column a
/// K2(2,F) component (Cocycle).
enum class SlotKind { Symbol, Cocycle };

/// {u^p, v}_i = {u^q, v}_j for all u, v. Links with a zero exponent on
/// either side are trivial and kept only as degenerate markers.
struct Link {
    int i;
    BigInt p;
    int j;
    BigInt q;

    bool degenerate() const { return p.is_zero() || q.is_zero(); }
};

/// {u^p, v}_i^m = 1 for all u, v.
struct TorsionRel {
    int i;
    BigInt p;
    BigInt m;
};

/// Exponent-level state of the reduction pipeline. Slot indices are
/// 0-based; labels remember the original 1-based slot numbers across
/// deletions for readable traces.
struct GenPresentation {
    std::vector<SlotKind> slots;
    std::vector<int> labels;
    std::vector<Link> links;
    std::vector<TorsionRel> torsions;

    int size() const { return static_cast<int>(slots.size()); }
};

class PresentationError : public std::runtime_error {
public:
    enum class Kind { NoMinusOne, ExceptionCase, BadSlot };

    PresentationError(Kind kind, std::string msg) : std::runtime_error(std::move(msg)), kind(kind) {}

    Kind kind;
};

/// One link (i, a[j][i], j, a[i][j]) per pair i < j; kinds from column
/// parity. Zero pairs are recorded as degenerate links.
inline GenPresentation build_presentation(const Gcm& g) {
    GenPresentation p;
    auto parity = column_parity(g);
    p.slots.reserve(g.n);
    for (int i = 0; i < g.n; ++i) {
        p.slots.push_back(parity[i] == ColumnParity::OddPresent ? SlotKind::Symbol
                                                                : SlotKind::Cocycle);
        p.labels.push_back(i + 1);
    }
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) p.links.push_back({i, g.at(j, i), j, g.at(i, j)});
    return p;
}

namespace detail {

/// Exponents landing on a Cocycle slot must be even: links into an
/// all-even column carry column entries, and folded exponents keep a
/// factor from that column.
inline void check_cocycle_even(const GenPresentation& p, int slot, const BigInt& e) {
    if (p.slots[slot] == SlotKind::Cocycle && e.odd())
        throw std::logic_error("presentation invariant broken: odd exponent on a cocycle slot");
}

}  // namespace detail

/// Is deleting slot t anchored at slot s blocked by the parity exception?
/// Deleting t requires a link between t and s with exponent +-1 on the t
/// side. The exception: the s-side exponent of that link is odd while
/// every other link exponent landing on s is even, so a matrix-level
/// deletion would flip slot s from Symbol to Cocycle.
inline bool deletion_exception(const GenPresentation& p, int t, int s) {
    BigInt ts_exp;  // exponent on the s side of the (t, s) link
    for (const auto& l : p.links) {
        if (l.degenerate()) continue;
        if (l.i == t && l.j == s) ts_exp = l.q;
        if (l.i == s && l.j == t) ts_exp = l.p;
    }
    if (ts_exp.even()) return false;
    for (const auto& l : p.links) {
        if (l.degenerate()) continue;
        if (l.i == s && l.j != t && l.p.odd()) return false;
        if (l.j == s && l.i != t && l.q.odd()) return false;
    }
    return true;
}

/// Eliminate Symbol slot t through its unit link with s, substituting
/// {u,v}_t -> {u^(-a_ts),v}_s into every other relation touching t.
/// Composite links through t come out with the product exponents of the
/// two folded links. Throws NoMinusOne when the unit link is missing and
/// ExceptionCase when the parity guard fires. Slot kinds are pinned by the
/// original columns, so a caller that tracks kinds itself may disable the
/// guard; the substitution stays sound either way.
inline GenPresentation reduce_delete_column(const GenPresentation& p, int t, int s,
                                            bool respect_guard = true) {
    if (t < 0 || t >= p.size() || s < 0 || s >= p.size() || t == s)
        throw PresentationError(PresentationError::Kind::BadSlot, "bad slot indices");
    if (p.slots[t] != SlotKind::Symbol)
        throw PresentationError(PresentationError::Kind::NoMinusOne,
                                "only Symbol slots can be eliminated");
    // locate the anchoring link and its exponents
    BigInt unit, sigma;
    bool found = false;
    for (const auto& l : p.links) {
        if (l.degenerate()) continue;
        if (l.i == t && l.j == s && l.p.abs().is_one()) {
            unit = l.p;
            sigma = l.q;
            found = true;
        } else if (l.i == s && l.j == t && l.q.abs().is_one()) {
            unit = l.q;
            sigma = l.p;
            found = true;
        }
        if (found) break;
    }
    if (!found)
        throw PresentationError(PresentationError::Kind::NoMinusOne,
                                "no unit-exponent link between the slots");
    if (respect_guard && deletion_exception(p, t, s))
        throw PresentationError(PresentationError::Kind::ExceptionCase,
                                "deleting the slot would flip the anchor's parity class");

    // {u,v}_t = {u^(unit*sigma),v}_s   (unit is +-1)
    const BigInt subst = unit * sigma;

    GenPresentation out;
    std::vector<int> remap(p.slots.size(), -1);
    for (int k = 0; k < p.size(); ++k) {
        if (k == t) continue;
        remap[k] = out.size();
        out.slots.push_back(p.slots[k]);
        out.labels.push_back(p.labels[k]);
    }

    auto push_link = [&](int i, BigInt pe, int j, BigInt qe) {
        if (i == j) {
            // both sides landed on one slot: torsion {u^(pe-qe),v}_i = 1
            BigInt diff = pe - qe;
            if (!diff.is_zero()) out.torsions.push_back({i, diff, BigInt(1)});
            return;
        }
        if (i > j) {
            std::swap(i, j);
            std::swap(pe, qe);
        }
        out.links.push_back({i, std::move(pe), j, std::move(qe)});
    };

    for (const auto& l : p.links) {
        if (l.i != t && l.j != t) {
            if (remap[l.i] >= 0 && remap[l.j] >= 0)
                push_link(remap[l.i], l.p, remap[l.j], l.q);
            continue;
        }
        if (l.degenerate()) continue;
        // one endpoint is t; rewrite that side through s. The defining
        // link rewrites to a zero torsion and drops out on its own.
        int other = l.i == t ? l.j : l.i;
        BigInt t_exp = l.i == t ? l.p : l.q;
        BigInt o_exp = l.i == t ? l.q : l.p;
        push_link(remap[s], t_exp * subst, remap[other], std::move(o_exp));
    }
    for (const auto& tor : p.torsions) {
        if (tor.i != t) {
            out.torsions.push_back({remap[tor.i], tor.p, tor.m});
        } else {
            out.torsions.push_back({remap[s], tor.p * subst, tor.m});
        }
    }
    for (const auto& l : out.links) {
        detail::check_cocycle_even(out, l.i, l.p);
        detail::check_cocycle_even(out, l.j, l.q);
    }
    for (const auto& tor : out.torsions) detail::check_cocycle_even(out, tor.i, tor.p);
    return out;
}

/// First (t, s) pair deletable under the guard, scanning slots in order.
inline std::optional<std::pair<int, int>> find_deletable(const GenPresentation& p,
                                                         bool respect_guard = true) {
    for (int t = 0; t < p.size(); ++t) {
        if (p.slots[t] != SlotKind::Symbol) continue;
        for (const auto& l : p.links) {
            if (l.degenerate()) continue;
            int s = -1;
            if (l.i == t && l.p.abs().is_one())
                s = l.j;
            else if (l.j == t && l.q.abs().is_one())
                s = l.i;
            if (s < 0) continue;
            if (respect_guard && deletion_exception(p, t, s)) continue;
            return std::make_pair(t, s);
        }
    }
    return std::nullopt;
}

}  // namespace k2km
