#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "k2km/gcm.hpp"
#include "k2km/k2.hpp"
#include "k2km/matrix_text.hpp"
#include "k2km/presentation.hpp"

namespace k2km {

struct BlockInfo {
    std::vector<int> block;  // 1-based indices
    std::string type;        // finite | affine | indefinite
    bool hyperbolic = false;

    friend bool operator==(const BlockInfo&, const BlockInfo&) = default;
};

/// Everything one invocation reports. factors present iff resolved;
/// trace always present; verdict only for conjecture runs.
struct ResultDocument {
    std::string input;  // matrix echo in matrix-text form
    std::vector<BlockInfo> blocks;
    std::optional<std::vector<K2Factor>> factors;
    std::optional<GenPresentation> residual;
    std::vector<TraceStep> trace;
    std::optional<std::string> verdict;

    friend bool operator==(const ResultDocument& a, const ResultDocument& b) {
        auto residual_eq = [](const std::optional<GenPresentation>& x,
                              const std::optional<GenPresentation>& y) {
            if (x.has_value() != y.has_value()) return false;
            if (!x) return true;
            if (x->slots != y->slots || x->labels != y->labels) return false;
            if (x->links.size() != y->links.size() || x->torsions.size() != y->torsions.size())
                return false;
            for (std::size_t k = 0; k < x->links.size(); ++k) {
                const Link &l = x->links[k], &m = y->links[k];
                if (l.i != m.i || l.j != m.j || l.p != m.p || l.q != m.q) return false;
            }
            for (std::size_t k = 0; k < x->torsions.size(); ++k) {
                const TorsionRel &l = x->torsions[k], &m = y->torsions[k];
                if (l.i != m.i || l.p != m.p || l.m != m.m) return false;
            }
            return true;
        };
        auto trace_eq = [](const std::vector<TraceStep>& x, const std::vector<TraceStep>& y) {
            if (x.size() != y.size()) return false;
            for (std::size_t k = 0; k < x.size(); ++k)
                if (x[k].rule != y[k].rule || x[k].detail != y[k].detail ||
                    x[k].citation != y[k].citation)
                    return false;
            return true;
        };
        return a.input == b.input && a.blocks == b.blocks && a.factors == b.factors &&
               residual_eq(a.residual, b.residual) && trace_eq(a.trace, b.trace) &&
               a.verdict == b.verdict;
    }
};

inline ResultDocument make_document(const Gcm& g, const K2Result& res,
                                    std::optional<std::string> verdict = std::nullopt) {
    ResultDocument doc;
    doc.input = format_matrix(g.a);
    for (const auto& bc : classify(g)) {
        BlockInfo bi;
        for (int i : bc.block) bi.block.push_back(i + 1);
        switch (bc.cls.type) {
            case CartanType::Finite: bi.type = "finite"; break;
            case CartanType::Affine: bi.type = "affine"; break;
            default: bi.type = "indefinite"; break;
        }
        bi.hyperbolic = bc.cls.hyperbolic;
        doc.blocks.push_back(std::move(bi));
    }
    if (res.resolved)
        doc.factors = res.factors;
    else
        doc.residual = res.residual;
    doc.trace = res.trace;
    doc.verdict = std::move(verdict);
    return doc;
}

inline std::string render_presentation(const GenPresentation& p) {
    std::string s = "slots:";
    for (int i = 0; i < p.size(); ++i)
        s += " " + std::to_string(p.labels[i]) + ":" +
             (p.slots[i] == SlotKind::Symbol ? "K2(F)" : "K2(2,F)");
    for (const auto& l : p.links) {
        if (l.degenerate()) continue;
        s += "; {u^" + l.p.to_string() + ",v}_" + std::to_string(p.labels[l.i]) + " = {u^" +
             l.q.to_string() + ",v}_" + std::to_string(p.labels[l.j]);
    }
    for (const auto& t : p.torsions)
        s += "; {u^" + t.p.to_string() + ",v}_" + std::to_string(p.labels[t.i]) + "^" +
             t.m.to_string() + " = 1";
    return s;
}

/// Stable plain text. The I^2(F) note points at the Cocycle(1) factors.
inline std::string render_human(const ResultDocument& doc, bool with_trace = false) {
    static const char* kOrdinal[] = {"first", "second", "third",   "fourth", "fifth",
                                     "sixth", "seventh", "eighth", "ninth",  "tenth"};
    std::string s = "input: " + doc.input + "\n";
    for (const auto& b : doc.blocks) {
        s += "class: block {";
        for (std::size_t k = 0; k < b.block.size(); ++k)
            s += (k ? "," : "") + std::to_string(b.block[k]);
        s += "} " + b.type + (b.hyperbolic ? " (hyperbolic)" : "") + "\n";
    }
    if (doc.factors) {
        s += "K2(A,F) = " + factors_to_string(*doc.factors);
        std::vector<std::size_t> iq;
        for (std::size_t k = 0; k < doc.factors->size(); ++k) {
            const auto& f = (*doc.factors)[k];
            if (f.kind == K2Factor::Kind::Cocycle && f.r.is_one()) iq.push_back(k);
        }
        if (iq.size() == 1 && iq[0] < 10) {
            s += "  (" + std::string(kOrdinal[iq[0]]) + " factor ≅ I^2(F))";
        } else if (!iq.empty()) {
            s += "  (factors";
            for (std::size_t k = 0; k < iq.size(); ++k)
                s += (k ? "," : " ") + std::to_string(iq[k] + 1);
            s += " ≅ I^2(F))";
        }
        s += "\n";
    } else if (doc.residual) {
        s += "K2(A,F) unresolved; residual " + render_presentation(*doc.residual) + "\n";
    }
    if (doc.verdict) s += "conjecture: " + *doc.verdict + "\n";
    if (with_trace) {
        s += "trace:\n";
        for (std::size_t k = 0; k < doc.trace.size(); ++k)
            s += "  " + std::to_string(k + 1) + ". " + doc.trace[k].rule + ": " +
                 doc.trace[k].detail + "  [" + doc.trace[k].citation + "]\n";
    }
    return s;
}

namespace detail_json {

inline nlohmann::json factor_json(const K2Factor& f) {
    return {{"kind", f.kind == K2Factor::Kind::Symbol ? "symbol" : "cocycle"},
            {"r", f.r.to_string()}};
}

inline K2Factor factor_from_json(const nlohmann::json& j) {
    K2Factor f;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "symbol")
        f.kind = K2Factor::Kind::Symbol;
    else if (kind == "cocycle")
        f.kind = K2Factor::Kind::Cocycle;
    else
        throw std::invalid_argument("bad factor kind: " + kind);
    f.r = BigInt(j.at("r").get<std::string>());
    return f;
}

inline nlohmann::json presentation_json(const GenPresentation& p) {
    nlohmann::json j;
    j["slots"] = nlohmann::json::array();
    for (int i = 0; i < p.size(); ++i)
        j["slots"].push_back(
            {{"label", p.labels[i]},
             {"kind", p.slots[i] == SlotKind::Symbol ? "symbol" : "cocycle"}});
    j["links"] = nlohmann::json::array();
    for (const auto& l : p.links)
        j["links"].push_back({{"i", l.i},
                              {"p", l.p.to_string()},
                              {"j", l.j},
                              {"q", l.q.to_string()}});
    j["torsions"] = nlohmann::json::array();
    for (const auto& t : p.torsions)
        j["torsions"].push_back(
            {{"i", t.i}, {"p", t.p.to_string()}, {"m", t.m.to_string()}});
    return j;
}

inline GenPresentation presentation_from_json(const nlohmann::json& j) {
    GenPresentation p;
    for (const auto& s : j.at("slots")) {
        p.labels.push_back(s.at("label").get<int>());
        p.slots.push_back(s.at("kind").get<std::string>() == "symbol" ? SlotKind::Symbol
                                                                      : SlotKind::Cocycle);
    }
    for (const auto& l : j.at("links"))
        p.links.push_back({l.at("i").get<int>(), BigInt(l.at("p").get<std::string>()),
                           l.at("j").get<int>(), BigInt(l.at("q").get<std::string>())});
    for (const auto& t : j.at("torsions"))
        p.torsions.push_back({t.at("i").get<int>(), BigInt(t.at("p").get<std::string>()),
                              BigInt(t.at("m").get<std::string>())});
    return p;
}

}  // namespace detail_json

/// Machine form: one JSON object with frozen field names
/// input, class, factors, trace, verdict (residual replaces factors when
/// unresolved).
inline std::string render_machine(const ResultDocument& doc) {
    nlohmann::json j;
    j["input"] = doc.input;
    j["class"] = nlohmann::json::array();
    for (const auto& b : doc.blocks)
        j["class"].push_back(
            {{"block", b.block}, {"type", b.type}, {"hyperbolic", b.hyperbolic}});
    if (doc.factors) {
        j["factors"] = nlohmann::json::array();
        for (const auto& f : *doc.factors) j["factors"].push_back(detail_json::factor_json(f));
    } else {
        j["factors"] = nullptr;
        if (doc.residual) j["residual"] = detail_json::presentation_json(*doc.residual);
    }
    j["trace"] = nlohmann::json::array();
    for (const auto& t : doc.trace)
        j["trace"].push_back({{"rule", t.rule}, {"detail", t.detail}, {"citation", t.citation}});
    j["verdict"] = doc.verdict ? nlohmann::json(*doc.verdict) : nlohmann::json(nullptr);
    return j.dump(2);
}

inline ResultDocument parse_machine(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ResultDocument doc;
    doc.input = j.at("input").get<std::string>();
    for (const auto& b : j.at("class")) {
        BlockInfo bi;
        bi.block = b.at("block").get<std::vector<int>>();
        bi.type = b.at("type").get<std::string>();
        bi.hyperbolic = b.at("hyperbolic").get<bool>();
        doc.blocks.push_back(std::move(bi));
    }
    if (!j.at("factors").is_null()) {
        std::vector<K2Factor> fs;
        for (const auto& f : j.at("factors")) fs.push_back(detail_json::factor_from_json(f));
        doc.factors = std::move(fs);
    } else if (j.contains("residual")) {
        doc.residual = detail_json::presentation_from_json(j.at("residual"));
    }
    for (const auto& t : j.at("trace"))
        doc.trace.push_back({t.at("rule").get<std::string>(), t.at("detail").get<std::string>(),
                             t.at("citation").get<std::string>()});
    if (!j.at("verdict").is_null()) doc.verdict = j.at("verdict").get<std::string>();
    return doc;
}

}  // namespace k2km
