#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibrecount/errors.hpp"
#include "fibrecount/fibre_product.hpp"
#include "fibrecount/json_io.hpp"
#include "fibrecount/records.hpp"
#include "fibrecount/search.hpp"

namespace {

using fibrecount::FieldRef;
using fibrecount::FieldSpec;
using fibrecount::Poly;
using nlohmann::json;

json entry_to_json(const fibrecount::RecordEntry& e, bool with_records) {
    json j{{"field", e.field}, {"q", e.q},     {"g", e.g},
           {"n", e.n},         {"hws", e.hws}, {"polys", e.polys}};
    if (with_records) {
        j["known_lower"] = e.known_lower ? json(*e.known_lower) : json(nullptr);
        j["known_upper"] = e.known_upper ? json(*e.known_upper) : json(nullptr);
        j["improved"] = e.improved;
        if (e.exceeds_known_upper) j["exceeds_known_upper"] = true;
    }
    return j;
}

int cmd_count(const std::string& field_spec, const std::vector<std::string>& poly_specs) {
    FieldRef field = FieldSpec::parse(field_spec);
    std::vector<Poly> polys;
    polys.reserve(poly_specs.size());
    for (const std::string& s : poly_specs) polys.push_back(Poly::parse(field, s));
    fibrecount::CurveSystem sys = fibrecount::make_system(field, std::move(polys));
    fibrecount::SystemReport rep = fibrecount::point_count(sys);
    rep.affine_oracle = fibrecount::affine_oracle(sys);
    rep.rational_infinity = fibrecount::rational_infinity(sys, rep.n, *rep.affine_oracle);
    std::cout << json(rep).dump(2) << "\n";
    return 0;
}

int cmd_verify_paper(const std::string& fixtures_path, bool as_json) {
    std::vector<fibrecount::FixtureRow> fixtures = fibrecount::load_fixtures(fixtures_path);
    fibrecount::VerifyReport rep = fibrecount::verify_paper(fixtures);

    if (as_json) {
        json rows = json::array();
        for (const auto& r : rep.rows) {
            rows.push_back(json{{"label", r.label},
                                {"status", r.status},
                                {"paper", {{"a1", r.paper_a1}, {"a2", r.paper_a2}, {"a3", r.paper_a3}, {"n", r.paper_n}, {"g", r.paper_g}}},
                                {"computed", {{"a1", r.a1}, {"a2", r.a2}, {"a3", r.a3}, {"n", r.n}, {"g", r.g}}},
                                {"note", r.note}});
        }
        std::cout << json{{"rows", rows},
                          {"mismatches", rep.mismatches},
                          {"discrepant", rep.discrepant},
                          {"ok", rep.ok}}
                         .dump(2)
                  << "\n";
    } else {
        for (const auto& r : rep.rows) {
            std::printf("%-12s %-12s computed A=(%lld,%lld,%lld) N=%lld g=%d", ("[" + r.status + "]").c_str(),
                        r.label.c_str(), (long long)r.a1, (long long)r.a2, (long long)r.a3, (long long)r.n,
                        r.g);
            if (r.status != "OK") {
                std::printf("  stated A=(%lld,%lld,%lld) N=%lld g=%d", (long long)r.paper_a1,
                            (long long)r.paper_a2, (long long)r.paper_a3, (long long)r.paper_n, r.paper_g);
            }
            if (!r.note.empty()) std::printf("  note: %s", r.note.c_str());
            std::printf("\n");
        }
        std::printf("%zu rows: %zu ok, %d discrepant, %d mismatched\n", rep.rows.size(),
                    rep.rows.size() - size_t(rep.discrepant) - size_t(rep.mismatches), rep.discrepant,
                    rep.mismatches);
    }
    return rep.ok ? 0 : 1;
}

int cmd_bound(const std::string& q_spec, int genus) {
    int64_t q = 0;
    if (q_spec.find('^') != std::string::npos || q_spec.find(':') != std::string::npos) {
        q = FieldSpec::parse(q_spec)->q();
    } else {
        try {
            size_t pos = 0;
            q = std::stoll(q_spec, &pos);
            if (pos != q_spec.size()) throw std::invalid_argument(q_spec);
        } catch (const std::exception&) {
            throw fibrecount::parse_error("bad q '" + q_spec + "'");
        }
    }
    std::cout << fibrecount::hws_bound(q, genus) << "\n";
    return 0;
}

struct SearchFlags {
    std::string field;
    std::string degrees;
    std::string strategy = "exhaustive";
    uint64_t budget = 100000;
    uint64_t seed = 0;
    bool monic = true;
    bool lc_classes = false;
    bool normalize = true;
    int top = 10;
    int threads = 1;
    int patience = 200;
    uint64_t cap = 1000000000;
    std::string records_path;
    std::string config_path;
};

std::vector<int> parse_degree_list(const std::string& text) {
    std::vector<int> out;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            std::string tok = text.substr(start, i - start);
            try {
                size_t pos = 0;
                out.push_back(std::stoi(tok, &pos));
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw fibrecount::parse_error("bad degree '" + tok + "' in '" + text + "'");
            }
            start = i + 1;
        }
    }
    return out;
}

int cmd_search(CLI::App* sub, SearchFlags& flags) {
    // Config file supplies whatever the command line left untouched.
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw fibrecount::parse_error("cannot open config file '" + flags.config_path + "'");
        try {
            json cfg_json;
            in >> cfg_json;
            auto take = [&](const char* flag, const char* key, auto& slot) {
                if (sub->count(flag) == 0 && cfg_json.contains(key)) cfg_json.at(key).get_to(slot);
            };
            take("--field", "field", flags.field);
            take("--degrees", "degrees", flags.degrees);
            take("--strategy", "strategy", flags.strategy);
            take("--budget", "budget", flags.budget);
            take("--seed", "seed", flags.seed);
            take("--top", "top", flags.top);
            take("--threads", "threads", flags.threads);
            take("--patience", "patience", flags.patience);
            take("--cap", "cap", flags.cap);
            take("--records", "records", flags.records_path);
            if (sub->count("--monic") == 0 && sub->count("--no-monic") == 0 &&
                cfg_json.contains("monic_only")) {
                cfg_json.at("monic_only").get_to(flags.monic);
            }
            if (sub->count("--lc-classes") == 0 && cfg_json.contains("lc_classes")) {
                cfg_json.at("lc_classes").get_to(flags.lc_classes);
            }
            if (sub->count("--normalize") == 0 && sub->count("--no-normalize") == 0 &&
                cfg_json.contains("normalize")) {
                cfg_json.at("normalize").get_to(flags.normalize);
            }
        } catch (const json::exception& e) {
            throw fibrecount::parse_error("config file '" + flags.config_path + "': " + e.what());
        }
    }
    if (flags.field.empty()) throw fibrecount::parse_error("search needs --field (or a config file entry)");
    if (flags.degrees.empty()) throw fibrecount::parse_error("search needs --degrees");

    fibrecount::SearchConfig cfg;
    cfg.field = FieldSpec::parse(flags.field);
    cfg.degrees = parse_degree_list(flags.degrees);
    cfg.strategy = fibrecount::parse_strategy(flags.strategy);
    cfg.budget = flags.budget;
    cfg.seed = flags.seed;
    cfg.lc_mode = flags.lc_classes ? fibrecount::LcMode::SquareClasses
                                   : (flags.monic ? fibrecount::LcMode::Monic : fibrecount::LcMode::All);
    cfg.normalize = flags.normalize;
    cfg.top = flags.top;
    cfg.threads = flags.threads;
    cfg.patience = flags.patience;
    cfg.exhaustive_cap = flags.cap;

    fibrecount::SearchResult result = fibrecount::run_search(cfg);

    bool with_records = !flags.records_path.empty();
    if (with_records) {
        fibrecount::RecordsTable table = fibrecount::ingest_records(flags.records_path);
        fibrecount::annotate_records(result.leaderboard, table);
    }

    for (const auto& entry : result.leaderboard) {
        std::cout << entry_to_json(entry, with_records).dump() << "\n";
    }
    json summary{{"summary",
                  {{"strategy", strategy_name(cfg.strategy)},
                   {"seed", cfg.seed},
                   {"budget", cfg.budget},
                   {"evaluated", result.stats.evaluated},
                   {"valid", result.stats.valid},
                   {"skipped", result.stats.skipped},
                   {"restarts", result.stats.restarts},
                   {"space", result.stats.space}}}};
    std::cout << summary.dump() << "\n";
    std::fprintf(stderr, "wall %.3fs, %.0f candidates/s\n", result.stats.wall_seconds,
                 result.stats.throughput);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"point counts and record search for fibre products of hyperelliptic curves"};
    app.require_subcommand(1);

    std::string count_field;
    std::vector<std::string> count_polys;
    CLI::App* count = app.add_subcommand("count", "count points of one system and print its report");
    count->add_option("--field", count_field, "field spec: p, p^n, or p^n:c0,c1,...")->required();
    count->add_option("--poly", count_polys, "ascending coefficients, one option per cover")
        ->required()
        ->take_all();

    std::string fixtures_path = fibrecount::default_fixtures_path();
    bool verify_json = false;
    CLI::App* verify = app.add_subcommand("verify-paper", "recompute the bundled reference systems");
    verify->add_option("--fixtures", fixtures_path, "fixtures JSON path");
    verify->add_flag("--json", verify_json, "emit the verification report as JSON");

    SearchFlags sf;
    CLI::App* search = app.add_subcommand("search", "hunt for many-point systems");
    search->add_option("--field", sf.field, "field spec");
    search->add_option("--degrees", sf.degrees, "comma-separated cover degrees, e.g. 4,4");
    search->add_option("--strategy", sf.strategy, "exhaustive | random | hill-climb");
    search->add_option("--budget", sf.budget, "max candidate evaluations");
    search->add_option("--seed", sf.seed, "RNG seed");
    search->add_flag("--monic,!--no-monic", sf.monic, "restrict to monic covers (default on)");
    search->add_flag("--lc-classes", sf.lc_classes, "leading coefficients over square classes {1, nonsquare}");
    search->add_flag("--normalize,!--no-normalize", sf.normalize,
                     "pin f1's second-highest coefficient to 0 when possible (default on)");
    search->add_option("--top", sf.top, "leaderboard size");
    search->add_option("--threads", sf.threads, "worker threads (deterministic for any count)");
    search->add_option("--patience", sf.patience, "hill-climb rejections before restart");
    search->add_option("--cap", sf.cap, "max exhaustive space size");
    search->add_option("--records", sf.records_path, "known-records CSV to compare against");
    search->add_option("--config", sf.config_path, "JSON config file (flags override it)");

    std::string bound_q;
    int bound_genus = 0;
    CLI::App* bound = app.add_subcommand("bound", "print the Weil-Serre upper bound");
    bound->add_option("--q", bound_q, "field size (integer or field spec)")->required();
    bound->add_option("--genus", bound_genus, "genus")->required();

    try {
        app.parse(argc, argv);
        if (count->parsed()) return cmd_count(count_field, count_polys);
        if (verify->parsed()) return cmd_verify_paper(fixtures_path, verify_json);
        if (search->parsed()) return cmd_search(search, sf);
        if (bound->parsed()) return cmd_bound(bound_q, bound_genus);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fibrecount::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fibrecount::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
