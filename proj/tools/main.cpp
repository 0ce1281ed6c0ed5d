// k2km: exact K2(A,F) for generalized Cartan matrices.
//
// exit codes: 0 success; 1 parse/validation/startup error;
//             2 unresolved under k2 --strict; 3 verify-tables failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "k2km/catalog.hpp"
#include "k2km/document.hpp"
#include "k2km/gcm.hpp"
#include "k2km/k2.hpp"
#include "k2km/matrix_text.hpp"

namespace {

using namespace k2km;

std::string read_matrix_argument(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw MatrixTextError("cannot open matrix file: " + arg.substr(1));
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    return arg;
}

int fail_input(const std::string& kind, const std::string& message, bool machine) {
    if (machine) {
        nlohmann::json j;
        j["error"] = {{"kind", kind}, {"message", message}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cerr << "error: " << kind << ": " << message << "\n";
    }
    return 1;
}

std::optional<Gcm> load_gcm_or_report(const std::string& arg, bool machine, int& exit_code) {
    try {
        return parse_gcm(read_matrix_argument(arg));
    } catch (const MatrixTextError& e) {
        exit_code = fail_input("parse", e.what(), machine);
    } catch (const GcmError& e) {
        exit_code = fail_input("validation", e.what(), machine);
    }
    return std::nullopt;
}

Catalog load_catalog(const std::string& path) {
    return path.empty() ? Catalog::builtin() : Catalog::load_file(path);
}

void print_document(const ResultDocument& doc, bool machine, bool with_trace) {
    if (machine)
        std::cout << render_machine(doc) << "\n";
    else
        std::cout << render_human(doc, with_trace);
}

std::string verdict_name(ConjectureVerdict v) {
    switch (v) {
        case ConjectureVerdict::Agree: return "agree";
        case ConjectureVerdict::Disagree: return "disagree";
        default: return "unknown";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact K2(A,F) for generalized Cartan matrices over a symbolic field"};
    app.require_subcommand(1);

    std::string matrix_arg, catalog_path, section = "all";
    bool machine = false, with_trace = false, strict = false;
    int rank = 3, bound = 10;

    auto* classify_cmd = app.add_subcommand("classify", "validate and classify per block");
    classify_cmd->add_option("matrix", matrix_arg, "matrix text or @file")->required();
    classify_cmd->add_flag("--machine", machine, "JSON output");

    auto* k2_cmd = app.add_subcommand("k2", "compute the canonical K2(A,F) factors");
    k2_cmd->add_option("matrix", matrix_arg, "matrix text or @file")->required();
    k2_cmd->add_flag("--machine", machine, "JSON output");
    k2_cmd->add_flag("--trace", with_trace, "print the derivation trace");
    k2_cmd->add_flag("--strict", strict, "exit 2 when the result is unresolved");
    k2_cmd->add_option("--catalog", catalog_path, "catalog file overriding the built-in table");

    auto* conj_cmd = app.add_subcommand("conjecture", "compare the predicted decomposition");
    conj_cmd->add_option("matrix", matrix_arg, "matrix text or @file")->required();
    conj_cmd->add_flag("--machine", machine, "JSON output");
    conj_cmd->add_option("--catalog", catalog_path, "catalog file overriding the built-in table");

    auto* enum_cmd = app.add_subcommand("enumerate", "enumerate hyperbolic GCMs");
    enum_cmd->add_option("--rank", rank, "2 or 3")->required();
    enum_cmd->add_option("--bound", bound, "entry bound for rank 2");
    enum_cmd->add_flag("--machine", machine, "JSON output");

    auto* verify_cmd = app.add_subcommand("verify-tables", "re-derive the catalog and compare");
    verify_cmd->add_option("--section", section, "7, 8 or all");
    verify_cmd->add_flag("--machine", machine, "JSON output");
    verify_cmd->add_option("--catalog", catalog_path, "catalog file overriding the built-in table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(classify_cmd)) {
            int code = 0;
            auto g = load_gcm_or_report(matrix_arg, machine, code);
            if (!g) return code;
            K2Result empty;  // classification only
            ResultDocument doc = make_document(*g, empty);
            doc.residual.reset();
            print_document(doc, machine, false);
            return 0;
        }

        if (app.got_subcommand(k2_cmd)) {
            int code = 0;
            auto g = load_gcm_or_report(matrix_arg, machine, code);
            if (!g) return code;
            Catalog cat = load_catalog(catalog_path);
            K2Options opts;
            opts.catalog_lookup = cat.lookup_hook();
            K2Result res = k2_run(*g, opts);
            print_document(make_document(*g, res), machine, with_trace);
            return (!res.resolved && strict) ? 2 : 0;
        }

        if (app.got_subcommand(conj_cmd)) {
            int code = 0;
            auto g = load_gcm_or_report(matrix_arg, machine, code);
            if (!g) return code;
            if (!indecomposable(*g))
                return fail_input("validation", "conjecture needs an indecomposable matrix",
                                  machine);
            Catalog cat = load_catalog(catalog_path);
            K2Options opts;
            opts.catalog_lookup = cat.lookup_hook();
            ConjectureReport rep = conjecture_check(*g, opts);
            ResultDocument doc = make_document(*g, rep.pipeline, verdict_name(rep.verdict));
            for (const auto& step : rep.predicted.trace) doc.trace.push_back(step);
            if (machine) {
                nlohmann::json j = nlohmann::json::parse(render_machine(doc));
                j["predicted"] = rep.predicted.resolved
                                     ? nlohmann::json(factors_to_string(rep.predicted.factors))
                                     : nlohmann::json(nullptr);
                j["detail"] = rep.detail;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << render_human(doc, true);
                std::cout << "predicted: "
                          << (rep.predicted.resolved ? factors_to_string(rep.predicted.factors)
                                                     : std::string("unresolved"))
                          << "\n";
                std::cout << "detail: " << rep.detail << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(enum_cmd)) {
            if (rank != 2 && rank != 3)
                return fail_input("parse", "--rank must be 2 or 3", machine);
            std::vector<Gcm> out =
                rank == 2 ? enumerate_rank2_hyperbolic(bound) : enumerate_rank3_hyperbolic();
            std::string report;
            if (rank == 3) report = rank3_partition(Catalog::builtin()).render();
            if (machine) {
                nlohmann::json j;
                j["count"] = out.size();
                j["matrices"] = nlohmann::json::array();
                for (const auto& g : out) j["matrices"].push_back(format_matrix(g.a));
                if (!report.empty()) j["report"] = report;
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& g : out) std::cout << format_matrix(g.a) << "\n";
                std::cout << "count " << out.size() << "\n";
                if (!report.empty()) std::cout << report;
            }
            return 0;
        }

        if (app.got_subcommand(verify_cmd)) {
            if (section != "7" && section != "8" && section != "all")
                return fail_input("parse", "--section must be 7, 8 or all", machine);
            Catalog cat = load_catalog(catalog_path);
            VerifyReport rep = verify_catalog(cat, section);
            if (machine) {
                nlohmann::json j;
                j["all_pass"] = rep.all_pass;
                j["entries"] = nlohmann::json::array();
                for (const auto& e : rep.entries)
                    j["entries"].push_back({{"id", e.id},
                                            {"pass", e.pass},
                                            {"rule_resolved", e.rule_resolved},
                                            {"resolved_by", e.resolved_by},
                                            {"computed", e.computed},
                                            {"expected", e.expected}});
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << rep.render();
            }
            return rep.all_pass ? 0 : 3;
        }
    } catch (const CatalogParseError& e) {
        return fail_input("startup", e.what(), machine);
    } catch (const std::exception& e) {
        return fail_input("internal", e.what(), machine);
    }
    return 0;
}
