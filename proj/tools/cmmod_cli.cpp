#include "cmmod/cmmod.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;

namespace {

enum exit_code { exit_ok = 0, exit_internal = 1, exit_parse = 2, exit_resource = 3 };

// domain errors are bad input as far as the shell is concerned
int exit_for(cmmod_status s) {
    switch (s) {
    case CMMOD_OK: return exit_ok;
    case CMMOD_ERR_PARSE:
    case CMMOD_ERR_DOMAIN:
    case CMMOD_ERR_ARGUMENT: return exit_parse;
    case CMMOD_ERR_RESOURCE: return exit_resource;
    default: return exit_internal;
    }
}

const char* status_name(cmmod_status s) {
    switch (s) {
    case CMMOD_OK: return "ok";
    case CMMOD_ERR_PARSE: return "parse error";
    case CMMOD_ERR_DOMAIN: return "domain error";
    case CMMOD_ERR_ARGUMENT: return "invalid argument";
    case CMMOD_ERR_RESOURCE: return "resource bound";
    default: return "internal error";
    }
}

struct owned_string {
    char* p = nullptr;
    ~owned_string() { cmmod_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

using engine_ptr = std::unique_ptr<cmmod_engine, decltype(&cmmod_engine_free)>;
using formula_ptr = std::unique_ptr<cmmod_formula, decltype(&cmmod_formula_free)>;

struct options {
    std::string structure = "cmod";
    bool trace = false;
    std::string format = "text";
    std::string cache;
    long lmax = 0, dmax = 0, precision = 0;
    std::string file;
};

// FNV-1a over the command and its inputs; stable across runs and builds.
std::string digest(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct runner {
    cmmod_engine* e;
    const options& opt;
    std::string command;

    bool json_out() const { return opt.format == "json"; }

    int fail(cmmod_status s, const std::string& input) {
        std::string msg = cmmod_last_error(e);
        if (json_out())
            std::cout << report(input, json{{"error", status_name(s)}, {"message", msg}}, 0.0).dump() << "\n";
        else
            std::cerr << "error (" << status_name(s) << "): " << msg << "\n";
        return exit_for(s);
    }

    json report(const std::string& input, json payload, double ms) const {
        json r;
        r["command"] = command;
        r["inputsDigest"] = digest(command + "\n" + input);
        r["structure"] = opt.structure;
        r["result"] = std::move(payload);
        r["timingMs"] = ms;
        return r;
    }

    // One formula through decide or qe.
    int formula(const std::string& text) {
        auto t0 = std::chrono::steady_clock::now();
        cmmod_formula* raw = nullptr;
        if (auto s = cmmod_formula_parse(e, text.c_str(), &raw); s != CMMOD_OK) return fail(s, text);
        formula_ptr f(raw, cmmod_formula_free);
        auto elapsed = [&] {
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        };
        if (command == "decide") {
            int value = 0;
            owned_string rep;
            if (auto s = cmmod_decide(e, f.get(), opt.trace, &value, &rep.p); s != CMMOD_OK) return fail(s, text);
            json r = json::parse(rep.str());
            if (json_out()) {
                json out = report(text, {{"value", r["value"]}, {"otherStructure", r["otherStructure"]}}, elapsed());
                out["counters"] = {{"eliminations", r.contains("trace") ? r["trace"].size() : 0}};
                if (opt.trace) out["trace"] = r["trace"];
                std::cout << out.dump() << "\n";
            } else {
                std::cout << (value ? "true" : "false") << "\n";
                if (opt.trace) std::cout << r["trace"].dump(2) << "\n";
            }
            return exit_ok;
        }
        cmmod_formula* g_raw = nullptr;
        owned_string tr;
        if (auto s = cmmod_qe(e, f.get(), &g_raw, opt.trace ? &tr.p : nullptr); s != CMMOD_OK) return fail(s, text);
        formula_ptr g(g_raw, cmmod_formula_free);
        owned_string rendered{cmmod_formula_render(g.get())};
        if (json_out()) {
            json out = report(text, {{"formula", rendered.str()}}, elapsed());
            if (opt.trace) out["trace"] = json::parse(tr.str());
            std::cout << out.dump() << "\n";
        } else {
            std::cout << rendered.str() << "\n";
            if (opt.trace) std::cout << json::parse(tr.str()).dump(2) << "\n";
        }
        return exit_ok;
    }

    // Payload commands: text is printed as is, json is wrapped in a report.
    template <class F>
    int payload(const std::string& input, F&& call) {
        auto t0 = std::chrono::steady_clock::now();
        owned_string out;
        cmmod_status s = call(json_out() ? CMMOD_FORMAT_JSON : CMMOD_FORMAT_TEXT, &out.p);
        if (s != CMMOD_OK) return fail(s, input);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (json_out())
            std::cout << report(input, json::parse(out.str()), ms).dump() << "\n";
        else
            std::cout << out.str() << (out.str().empty() || out.str().back() == '\n' ? "" : "\n");
        return exit_ok;
    }
};

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cmmod: decision procedure for modular relations among j-invariants"};
    app.require_subcommand(1);
    options opt;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--structure", opt.structure, "universe: cmod, cmmod or isog-a")
            ->check(CLI::IsMember({"cmod", "cmmod", "isog-a"}));
        c->add_flag("--trace", opt.trace, "emit the elimination trace as JSON");
        c->add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        c->add_option("--cache", opt.cache, "directory for cached modular polynomials");
        c->add_option("--lmax", opt.lmax, "largest modular polynomial level")->check(CLI::PositiveNumber);
        c->add_option("--dmax", opt.dmax, "largest |D|")->check(CLI::PositiveNumber);
        c->add_option("--precision", opt.precision, "starting precision in bits")->check(CLI::PositiveNumber);
    };

    std::string formula_text;
    auto* decide = app.add_subcommand("decide", "decide a sentence");
    auto* qe = app.add_subcommand("qe", "eliminate quantifiers");
    for (auto* c : {decide, qe}) {
        c->add_option("formula", formula_text, "formula text");
        c->add_option("--file", opt.file, "read formulas from a file, one per line");
    }
    long level = 0;
    auto* modpoly = app.add_subcommand("modpoly", "print a modular polynomial");
    modpoly->add_option("l", level, "level")->required()->check(CLI::PositiveNumber);
    auto* cm_list = app.add_subcommand("cm-list", "list CM points with |D| <= dmax");
    std::string path;
    auto* components = app.add_subcommand("components", "components of an equation system (JSON file)");
    components->add_option("file", path, "system JSON")->required();
    int drop = 0;
    auto* project = app.add_subcommand("project", "project a pre-special datum (JSON file)");
    project->add_option("file", path, "datum JSON")->required();
    project->add_option("--drop", drop, "1-based coordinate to drop")->required();
    std::string c1, c2;
    auto* hom_rank = app.add_subcommand("hom-rank", "rank of Hom between two named curves");
    hom_rank->add_option("c1", c1)->required();
    hom_rank->add_option("c2", c2)->required();
    for (auto* c : app.get_subcommands({})) add_common(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_parse;
    }

    engine_ptr engine(cmmod_engine_new(), cmmod_engine_free);
    if (!engine) return exit_internal;
    cmmod_engine* e = engine.get();
    cmmod_set_structure(e, opt.structure.c_str());
    if (!opt.cache.empty()) cmmod_set_cache_dir(e, opt.cache.c_str());
    if (opt.lmax > 0) cmmod_set_limit(e, "lmax", opt.lmax);
    if (opt.dmax > 0) cmmod_set_limit(e, "dmax", opt.dmax);
    if (opt.precision > 0) cmmod_set_limit(e, "precision", opt.precision);

    runner run{e, opt, app.get_subcommands().front()->get_name()};

    if (*decide || *qe) {
        if (opt.file.empty()) {
            if (formula_text.empty()) {
                std::cerr << "error: give a formula or --file\n";
                return exit_parse;
            }
            return run.formula(formula_text);
        }
        std::string all;
        if (!read_file(opt.file, all)) {
            std::cerr << "error: cannot read " << opt.file << "\n";
            return exit_parse;
        }
        std::istringstream lines(all);
        std::string line;
        int worst = exit_ok;
        while (std::getline(lines, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
                continue;
            int rc = run.formula(line);
            if (worst == exit_ok) worst = rc;
        }
        return worst;
    }
    if (*modpoly)
        return run.payload(std::to_string(level), [&](cmmod_format f, char** out) {
            return cmmod_modpoly(e, level, f, out);
        });
    if (*cm_list) {
        long dmax = opt.dmax > 0 ? opt.dmax : 100;
        return run.payload(std::to_string(dmax), [&](cmmod_format f, char** out) {
            return cmmod_cm_list(e, dmax, f, out);
        });
    }
    if (*components || *project) {
        std::string text;
        if (!read_file(path, text)) {
            std::cerr << "error: cannot read " << path << "\n";
            return exit_parse;
        }
        if (*components)
            return run.payload(text, [&](cmmod_format f, char** out) {
                return cmmod_components(e, text.c_str(), f, out);
            });
        return run.payload(text + "\n" + std::to_string(drop), [&](cmmod_format f, char** out) {
            return cmmod_project(e, text.c_str(), drop, f, out);
        });
    }
    if (*hom_rank) {
        int rank = 0;
        if (auto s = cmmod_hom_rank(e, c1.c_str(), c2.c_str(), &rank); s != CMMOD_OK) return run.fail(s, c1 + "\n" + c2);
        if (run.json_out())
            std::cout << run.report(c1 + "\n" + c2, {{"rank", rank}}, 0.0).dump() << "\n";
        else
            std::cout << rank << "\n";
        return exit_ok;
    }
    return exit_internal;
}
